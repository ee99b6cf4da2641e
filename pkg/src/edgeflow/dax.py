"""DAX-subset workflow XML: parsing and serialization.

Subset: ``adag`` root; ``job`` elements with ``id``, ``name``, ``runtime``
(seconds); nested ``uses`` with ``file``, ``link`` (input|output), ``size``
(bytes); ``child`` elements with ``ref`` wrapping ``parent`` elements with
``ref``. Everything else in full Pegasus DAX is ignored. Job runtimes convert
to MI at REFERENCE_MIPS, so a 1 s job is 1000 MI.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from xml.sax.saxutils import quoteattr

from edgeflow.errors import (
    MalformedXmlError,
    NegativeSizeError,
    UnknownJobReferenceError,
)
from edgeflow.workflow import DataEdge, TaskSpec, WorkflowDag, validate

# MIPS of the Table-I end device; fixes the runtime-seconds -> MI conversion.
REFERENCE_MIPS = 1000.0


def _localname(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def parse_dax(xml_text: str, name: str = "workflow") -> WorkflowDag:
    """Parse DAX-subset XML into a validated WorkflowDag."""
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        raise MalformedXmlError(f"not well-formed XML: {exc}") from exc
    if _localname(root.tag) != "adag":
        raise MalformedXmlError(f"root element is {root.tag!r}, expected 'adag'")

    tasks: list[TaskSpec] = []
    outputs: dict[str, dict[str, int]] = {}  # job id -> file -> size
    inputs: dict[str, dict[str, int]] = {}
    for job in root:
        if _localname(job.tag) != "job":
            continue
        jid = job.get("id")
        if not jid:
            raise MalformedXmlError("job element without id")
        if any(t.id == jid for t in tasks):
            raise MalformedXmlError(f"duplicate job id {jid!r}")
        runtime_attr = job.get("runtime")
        if runtime_attr is None:
            raise MalformedXmlError(f"job {jid!r} has no runtime attribute")
        try:
            runtime = float(runtime_attr)
        except ValueError as exc:
            raise MalformedXmlError(f"job {jid!r}: bad runtime {runtime_attr!r}") from exc
        if runtime <= 0:
            raise MalformedXmlError(f"job {jid!r}: runtime must be > 0")

        outputs[jid] = {}
        inputs[jid] = {}
        for uses in job:
            if _localname(uses.tag) != "uses":
                continue
            fname = uses.get("file")
            link = uses.get("link")
            if not fname or link not in ("input", "output"):
                continue
            size = int(uses.get("size", "0"))
            if size < 0:
                raise NegativeSizeError(f"job {jid!r}, file {fname!r}: size {size} < 0")
            target = outputs[jid] if link == "output" else inputs[jid]
            target[fname] = size
        tasks.append(
            TaskSpec(id=jid, label=job.get("name", jid), length=runtime * REFERENCE_MIPS)
        )

    known = {t.id for t in tasks}
    pairs: list[tuple[str, str]] = []
    seen = set()
    for child_el in root:
        if _localname(child_el.tag) != "child":
            continue
        cid = child_el.get("ref")
        if cid not in known:
            raise UnknownJobReferenceError(f"child ref {cid!r} names no job")
        for parent_el in child_el:
            if _localname(parent_el.tag) != "parent":
                continue
            pid = parent_el.get("ref")
            if pid not in known:
                raise UnknownJobReferenceError(f"parent ref {pid!r} names no job")
            if (pid, cid) not in seen:
                seen.add((pid, cid))
                pairs.append((pid, cid))

    edges = []
    for pid, cid in pairs:
        # The producer's declared output size is authoritative; a file counts
        # toward the edge when the parent writes it and the child reads it.
        shared = set(outputs[pid]) & set(inputs[cid])
        total = sum(outputs[pid][f] for f in shared)
        edges.append(DataEdge(pid, cid, total))

    dag = WorkflowDag(name, tuple(tasks), tuple(edges))
    validate(dag)  # raises CyclicWorkflowError
    return dag


def serialize_dax(dag: WorkflowDag) -> str:
    """Emit the DAX subset for a DAG.

    Each edge becomes one file, written by the parent and read by the child,
    so parse_dax(serialize_dax(dag)) reproduces ids, edges and byte sizes
    exactly and lengths to within float round-trip of runtime = length/1000.
    """
    lines = ['<?xml version="1.0" encoding="UTF-8"?>', '<adag name=%s>' % quoteattr(dag.name)]
    for t in dag.tasks:
        runtime = t.length / REFERENCE_MIPS
        lines.append(
            "  <job id=%s name=%s runtime=%s>"
            % (quoteattr(t.id), quoteattr(t.label), quoteattr(repr(runtime)))
        )
        for e in dag.in_edges(t.id):
            lines.append(
                '    <uses file=%s link="input" size="%d"/>'
                % (quoteattr(_edge_file(e)), e.bytes)
            )
        for e in dag.out_edges(t.id):
            lines.append(
                '    <uses file=%s link="output" size="%d"/>'
                % (quoteattr(_edge_file(e)), e.bytes)
            )
        lines.append("  </job>")
    by_child: dict[str, list[str]] = {}
    for e in dag.edges:
        by_child.setdefault(e.child, []).append(e.parent)
    for cid in sorted(by_child):
        lines.append("  <child ref=%s>" % quoteattr(cid))
        for pid in sorted(by_child[cid]):
            lines.append("    <parent ref=%s/>" % quoteattr(pid))
        lines.append("  </child>")
    lines.append("</adag>")
    return "\n".join(lines) + "\n"


def _edge_file(e: DataEdge) -> str:
    return f"{e.parent}__{e.child}.dat"
