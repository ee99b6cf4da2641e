"""Environment presets, time/energy/cost primitives, and the network model."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgeflow.environment import (
    CLOUD,
    DEVICE,
    EDGE,
    LARGE,
    NetworkModel,
    NodeSpec,
    busy_cost,
    environment_from_doc,
    environment_to_doc,
    exec_time,
    table1_environment,
    tier_pair,
    transfer_time,
)
from edgeflow.errors import InvalidCountError, MissingLinkError
from edgeflow.workflow import TaskSpec


def test_medium_preset_reproduces_every_parameter(table1):
    device = table1.node("device-00")
    assert (device.mips, device.p_run, device.p_idle, device.p_tx, device.p_rx,
            device.cost_rate) == (1000.0, 700.0, 30.0, 100.0, 25.0, 0.0)
    edge = table1.node("edge-00")
    assert (edge.mips, edge.cost_rate) == (1300.0, 0.48)
    assert (edge.p_run, edge.p_idle, edge.p_tx, edge.p_rx) == (0.0, 0.0, 0.0, 0.0)
    cloud = table1.node("cloud-00")
    assert (cloud.mips, cloud.cost_rate) == (1600.0, 0.96)
    for tier in (DEVICE, EDGE, CLOUD):
        assert len(table1.tier_nodes(tier)) == 2
    assert table1.origin_device == "device-00"


def test_large_cloud_scales_mips_and_cost():
    env = table1_environment(sizes={CLOUD: LARGE})
    cloud = env.node("cloud-00")
    assert cloud.mips == 2400.0
    assert cloud.cost_rate == pytest.approx(1.44)
    # power draws never scale
    assert env.node("device-00").p_run == 700.0


def test_small_device_scales_mips_only():
    env = table1_environment(sizes={DEVICE: "small"})
    device = env.node("device-00")
    assert device.mips == 750.0
    assert device.cost_rate == 0.0


def test_counts_build_that_many_nodes():
    env = table1_environment(counts={DEVICE: 1, EDGE: 1, CLOUD: 1})
    assert len(env.nodes) == 3


def test_zero_count_rejected():
    with pytest.raises(InvalidCountError):
        table1_environment(counts={EDGE: 0})


def test_exec_time_is_length_over_mips(table1):
    device = table1.node("device-00")
    assert exec_time(TaskSpec("t", "t", 2000.0), device) == 2.0
    edge = table1.node("edge-00")
    assert exec_time(TaskSpec("t", "t", 1000.0), edge) == pytest.approx(0.76923, abs=1e-5)


def test_transfer_time_examples(table1):
    device = table1.node("device-00")
    edge = table1.node("edge-00")
    cloud = table1.node("cloud-00")
    net = table1.network
    assert transfer_time(1_250_000, device, edge, net) == 1.0
    assert transfer_time(1_250_000, device, cloud, net) == 2.0
    assert transfer_time(1_250_000, device, device, net) == 0.0


def test_transfer_time_zero_bytes_is_latency():
    net = NetworkModel(latency={tier_pair(DEVICE, EDGE): 0.25})
    env = table1_environment(network=net)
    assert transfer_time(0, env.node("device-00"), env.node("edge-01"), net) == 0.25


def test_transfer_time_symmetric_under_unordered_pairs(table1):
    device = table1.node("device-01")
    cloud = table1.node("cloud-00")
    net = table1.network
    assert transfer_time(999_999, device, cloud, net) == transfer_time(
        999_999, cloud, device, net
    )


def test_missing_link_raises():
    net = NetworkModel(bandwidth={tier_pair(DEVICE, DEVICE): 1e6})
    a = NodeSpec("d1", DEVICE, 1000.0)
    b = NodeSpec("e1", EDGE, 1300.0)
    with pytest.raises(MissingLinkError):
        transfer_time(10, a, b, net)


def test_busy_cost_examples(table1):
    assert busy_cost(table1.node("edge-00"), 3600.0) == 0.48
    assert busy_cost(table1.node("device-00"), 12345.0) == 0.0
    assert busy_cost(table1.node("cloud-00"), 1800.0) == 0.48


@settings(max_examples=60, deadline=None)
@given(
    s1=st.floats(min_value=0, max_value=1e6, allow_nan=False),
    s2=st.floats(min_value=0, max_value=1e6, allow_nan=False),
)
def test_busy_cost_is_linear(s1, s2):
    node = NodeSpec("c", CLOUD, 1600.0, cost_rate=0.96)
    total = busy_cost(node, s1 + s2)
    split = busy_cost(node, s1) + busy_cost(node, s2)
    assert abs(total - split) <= 1e-12 * max(total, split, 1e-300)


@settings(max_examples=40, deadline=None)
@given(
    length=st.floats(min_value=1, max_value=1e6, allow_nan=False),
    mips_lo=st.floats(min_value=1, max_value=1e5, allow_nan=False),
    bump=st.floats(min_value=1e-3, max_value=1e5, allow_nan=False),
)
def test_exec_time_monotone(length, mips_lo, bump):
    slow = NodeSpec("a", EDGE, mips_lo)
    fast = NodeSpec("b", EDGE, mips_lo + bump)
    task = TaskSpec("t", "t", length)
    assert exec_time(task, fast) < exec_time(task, slow)
    longer = TaskSpec("t2", "t2", length * 2)
    assert exec_time(longer, slow) > exec_time(task, slow)


def test_environment_doc_round_trip(table1):
    doc = environment_to_doc(table1)
    again = environment_to_doc(environment_from_doc(doc))
    assert doc == again


def test_environment_doc_overrides():
    env = environment_from_doc(
        {
            "counts": {"device": 1, "edge": 1, "cloud": 1},
            "sizes": {"edge": "large"},
            "network": {"bandwidth": {"device-edge": 20_000_000}},
            "node_overrides": {"cloud-00": {"mips": 5000}},
        }
    )
    assert env.node("edge-00").mips == 1950.0
    assert env.node("cloud-00").mips == 5000.0
    assert env.network.link(DEVICE, EDGE)[0] == 20_000_000
