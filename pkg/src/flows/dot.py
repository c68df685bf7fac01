"""DOT text for graphs, oriented witnesses and replayed certificates."""

from flows.certify import BullGrowStep, Certificate, attach_k3, bull_grow, complete_graph
from flows.graph import FlowAssignment, Multigraph, Orientation, natural_key


def _quote(ident) -> str:
    return '"{}"'.format(str(ident).replace('"', '\\"'))


def graph_to_dot(g: Multigraph, name="G") -> str:
    lines = [f"graph {_quote(name)} {{"]
    for v in g.vertices:
        lines.append(f"  {_quote(v)};")
    for edge_id, (u, v) in g.edges.items():
        lines.append(f"  {_quote(u)} -- {_quote(v)} [label={_quote(edge_id)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def witness_to_dot(witness, g: Multigraph | None = None, name="D") -> str:
    """An orientation (or flow) as a digraph; isolated vertices come from ``g`` when given."""
    values = {}
    if isinstance(witness, FlowAssignment):
        values = witness.values
        witness = witness.orientation
    if not isinstance(witness, Orientation):
        witness = Orientation(witness)
    vertices = set(g.vertices) if g is not None else set()
    for tail, head in witness.values():
        vertices.update((tail, head))
    lines = [f"digraph {_quote(name)} {{"]
    for v in sorted(vertices, key=natural_key):
        lines.append(f"  {_quote(v)};")
    for edge_id, (tail, head) in witness.items():
        label = f"{edge_id}={values[edge_id]}" if edge_id in values else edge_id
        lines.append(f"  {_quote(tail)} -> {_quote(head)} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _describe(step) -> str:
    if isinstance(step, BullGrowStep):
        kept = "" if step.consume_ab else " keep"
        return f"bull_grow {step.a}{step.b} w={step.w}{kept}"
    y, z = step.edge
    return f"two_sum_k3 {y}{z}"


def certificate_to_dot(c: Certificate, name="certificate") -> str:
    """
    The replayed graph, one cluster per construction stage. Vertices sit in the
    cluster of the stage that created them; edge labels carry the stage number.
    """
    g = complete_graph(c.base_vertices)
    born_vertex = {v: 0 for v in g.vertices}
    born_edge = {e: 0 for e in g.edge_ids}
    captions = [f"0: {c.base}"]
    for index, step in enumerate(c.steps, start=1):
        before = set(g.edge_ids)
        if isinstance(step, BullGrowStep):
            g = bull_grow(g, (step.a, step.b), step.w, consume=step.consume_ab, names=(step.u, step.v))
        else:
            g = attach_k3(g, step.edge, step.apex)
        for v in g.vertices:
            born_vertex.setdefault(v, index)
        for e in g.edge_ids:
            if e not in before:
                born_edge[e] = index
        captions.append(f"{index}: {_describe(step)}")

    lines = [f"graph {_quote(name)} {{"]
    for stage, caption in enumerate(captions):
        members = [v for v in g.vertices if born_vertex[v] == stage]
        lines.append(f"  subgraph {_quote(f'cluster_{stage}')} {{")
        lines.append(f"    label={_quote(caption)};")
        lines.extend(f"    {_quote(v)};" for v in members)
        lines.append("  }")
    for edge_id, (u, v) in g.edges.items():
        lines.append(f"  {_quote(u)} -- {_quote(v)} [label={_quote(f'{edge_id} @{born_edge[edge_id]}')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
