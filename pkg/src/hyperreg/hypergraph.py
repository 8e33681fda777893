"""Labeled hypergraphs of square-free monomial ideals.

Vertices are generator indices 1..mu; every variable labels the edge made
of the generators it divides.  Distinct label images form the edge set,
and the number of labels (counted with multiplicity) together with the
vertex count drives all the regularity formulas in :mod:`hyperreg.bounds`.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Mapping

from .monomials import Alphabet, Monomial, MonomialIdeal, minimalize


class NotSeparatedError(ValueError):
    """Hypergraph fails separation; ``witness`` is the offending vertex pair."""

    def __init__(self, witness: tuple[int, int]):
        self.witness = witness
        v, w = witness
        super().__init__(f"no edge contains vertex {v} without vertex {w}")


class LabeledHypergraph:
    """Finite vertex set plus a variable -> vertex-subset labeling map."""

    def __init__(self, vertices: Iterable[int], labeling: Mapping[str, Iterable[int]]):
        self.vertices: tuple[int, ...] = tuple(sorted(set(vertices)))
        vset = set(self.vertices)
        labels: dict[str, frozenset[int]] = {}
        for name in sorted(labeling):
            image = frozenset(labeling[name])
            if not image:
                raise ValueError(f"label {name!r} has empty image")
            if not image <= vset:
                raise ValueError(f"label {name!r} maps outside the vertex set")
            labels[name] = image
        if not labels:
            raise ValueError("hypergraph needs at least one label")
        self.labels: dict[str, frozenset[int]] = labels
        edge_labels: dict[frozenset[int], list[str]] = {}
        for name, image in labels.items():
            edge_labels.setdefault(image, []).append(name)
        self.edges: tuple[frozenset[int], ...] = tuple(
            sorted(edge_labels, key=lambda e: (len(e), sorted(e))))
        self.edge_labels: dict[frozenset[int], tuple[str, ...]] = {
            e: tuple(edge_labels[e]) for e in self.edges}

    @property
    def label_count(self) -> int:
        """Number of labels |X|, i.e. edges counted with multiplicity."""
        return len(self.labels)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def multiplicity(self, edge: frozenset[int]) -> int:
        return len(self.edge_labels[edge])

    def vertex_labels(self, v: int) -> tuple[str, ...]:
        return tuple(name for name, image in self.labels.items() if v in image)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, LabeledHypergraph)
                and self.vertices == other.vertices
                and self.labels == other.labels)

    def __hash__(self) -> int:
        return hash((self.vertices, tuple(sorted(self.labels.items()))))

    def __repr__(self) -> str:
        body = ", ".join(f"{n}->{sorted(img)}" for n, img in self.labels.items())
        return f"LabeledHypergraph({list(self.vertices)}, {{{body}}})"


def build_hypergraph(ideal: MonomialIdeal) -> LabeledHypergraph:
    """Hypergraph of an ideal: vertex j for generator j, edge per variable."""
    labeling: dict[str, list[int]] = {}
    for j, mask in enumerate(ideal.generator_masks, start=1):
        for name in ideal.alphabet.names_of(mask):
            labeling.setdefault(name, []).append(j)
    return LabeledHypergraph(range(1, ideal.num_generators + 1), labeling)


def ideal_of(hypergraph: LabeledHypergraph, alphabet: Alphabet) -> MonomialIdeal:
    """Recover the ideal: one generator per vertex, the product of its labels.

    Requires a separated hypergraph (this is what makes the generators
    minimal); otherwise raises :class:`NotSeparatedError` with a witness.
    """
    witness = separation_witness(hypergraph)
    if witness is not None:
        raise NotSeparatedError(witness)
    gens = []
    for v in hypergraph.vertices:
        names = hypergraph.vertex_labels(v)
        if not names:
            raise ValueError(f"vertex {v} carries no label; its generator would be 1")
        gens.append(Monomial.of(alphabet, names))
    return minimalize(gens)


def separation_witness(hypergraph: LabeledHypergraph) -> tuple[int, int] | None:
    """First ordered pair (v, w) such that no edge contains v but not w."""
    for v in hypergraph.vertices:
        for w in hypergraph.vertices:
            if v == w:
                continue
            if not any(v in e and w not in e for e in hypergraph.edges):
                return (v, w)
    return None


def is_separated(hypergraph: LabeledHypergraph) -> bool:
    return separation_witness(hypergraph) is None


def closed_vertices(hypergraph: LabeledHypergraph) -> frozenset[int]:
    """Vertices whose singleton is an edge."""
    edge_set = set(hypergraph.edges)
    return frozenset(v for v in hypergraph.vertices if frozenset((v,)) in edge_set)


def open_vertices(hypergraph: LabeledHypergraph) -> frozenset[int]:
    return frozenset(hypergraph.vertices) - closed_vertices(hypergraph)


def neighbors(hypergraph: LabeledHypergraph, v: int) -> frozenset[int]:
    """Vertices sharing some edge with v."""
    if v not in hypergraph.vertices:
        raise ValueError(f"unknown vertex {v}")
    out: set[int] = set()
    for e in hypergraph.edges:
        if v in e:
            out.update(e)
    out.discard(v)
    return frozenset(out)


def has_isolated_open_vertices(hypergraph: LabeledHypergraph) -> bool:
    """True iff no two open vertices are adjacent (vacuous when all closed)."""
    opens = open_vertices(hypergraph)
    return all(not (neighbors(hypergraph, v) & opens) for v in opens)


def simple_edges(hypergraph: LabeledHypergraph) -> frozenset[frozenset[int]]:
    """Edges of size >= 2 with no proper nonempty subedge."""
    edges = hypergraph.edges
    out = []
    for e in edges:
        if len(e) < 2:
            continue
        if any(f < e for f in edges if f != e):
            continue
        out.append(e)
    return frozenset(out)


def has_isolated_simple_edges(hypergraph: LabeledHypergraph) -> bool:
    """True iff every open vertex lies in exactly one simple edge.

    Vacuously true when there is no open vertex.
    """
    simples = simple_edges(hypergraph)
    for v in open_vertices(hypergraph):
        if sum(1 for e in simples if v in e) != 1:
            return False
    return True


def is_saturated(hypergraph: LabeledHypergraph) -> bool:
    """Every vertex closed."""
    return not open_vertices(hypergraph)


def dimension(hypergraph: LabeledHypergraph) -> int:
    """Max edge size minus one."""
    return max(len(e) for e in hypergraph.edges) - 1


def isomorphic(a: LabeledHypergraph, b: LabeledHypergraph) -> bool:
    """Equality up to a vertex permutation (labels must match exactly).

    A permutation pi works iff every vertex maps to one with the same label
    set, so candidates are grouped by label profile and matched by
    backtracking; profile groups are tiny in practice.
    """
    if a.num_vertices != b.num_vertices or sorted(a.labels) != sorted(b.labels):
        return False
    profile_a = {v: frozenset(a.vertex_labels(v)) for v in a.vertices}
    profile_b: dict[frozenset[str], list[int]] = {}
    for w in b.vertices:
        profile_b.setdefault(frozenset(b.vertex_labels(w)), []).append(w)
    groups: list[tuple[list[int], list[int]]] = []
    seen: set[frozenset[str]] = set()
    for v in a.vertices:
        p = profile_a[v]
        if p in seen:
            continue
        seen.add(p)
        mine = [u for u in a.vertices if profile_a[u] == p]
        theirs = profile_b.get(p, [])
        if len(mine) != len(theirs):
            return False
        groups.append((mine, theirs))

    def check(mapping: dict[int, int]) -> bool:
        for name, image in a.labels.items():
            if frozenset(mapping[v] for v in image) != b.labels[name]:
                return False
        return True

    def backtrack(i: int, mapping: dict[int, int]) -> bool:
        if i == len(groups):
            return check(mapping)
        mine, theirs = groups[i]
        for perm in permutations(theirs):
            mapping.update(zip(mine, perm))
            if backtrack(i + 1, mapping):
                return True
        return False

    return backtrack(0, {})


def to_json_dict(hypergraph: LabeledHypergraph) -> dict:
    """JSON form: vertices, labels and edges with multiplicities."""
    return {
        "vertices": list(hypergraph.vertices),
        "labels": {name: sorted(image) for name, image in hypergraph.labels.items()},
        "edges": [
            {
                "members": sorted(e),
                "multiplicity": hypergraph.multiplicity(e),
                "labels": list(hypergraph.edge_labels[e]),
            }
            for e in hypergraph.edges
        ],
    }


def render(hypergraph: LabeledHypergraph, fmt: str) -> str:
    """Deterministic DOT or TikZ rendering of the hypergraph."""
    if fmt == "dot":
        return render_dot(hypergraph)
    if fmt == "tikz":
        return render_tikz(hypergraph)
    raise ValueError(f"unsupported render format {fmt!r}")


def _vertex_caption(hypergraph: LabeledHypergraph, v: int) -> str:
    singleton = frozenset((v,))
    caption = f"v{v}"
    if singleton in hypergraph.edge_labels:
        caption += "\\n" + ",".join(hypergraph.edge_labels[singleton])
    return caption


def render_dot(hypergraph: LabeledHypergraph) -> str:
    """DOT text: closed vertices filled, open hollow, hubs for big edges."""
    closed = closed_vertices(hypergraph)
    lines = ["graph hypergraph {", "  node [shape=circle];"]
    for v in hypergraph.vertices:
        style = "filled" if v in closed else "solid"
        lines.append(f'  v{v} [label="{_vertex_caption(hypergraph, v)}", style={style}];')
    hub = 0
    for e in hypergraph.edges:
        label = ",".join(hypergraph.edge_labels[e])
        members = sorted(e)
        if len(e) == 2:
            lines.append(f'  v{members[0]} -- v{members[1]} [label="{label}"];')
        elif len(e) >= 3:
            hub += 1
            lines.append(f'  h{hub} [label="{label}", shape=point];')
            lines.extend(f"  h{hub} -- v{v};" for v in members)
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_tikz(hypergraph: LabeledHypergraph) -> str:
    """Standalone TikZ picture with vertices on a fixed circle."""
    import math

    closed = closed_vertices(hypergraph)
    n = hypergraph.num_vertices
    pos = {}
    for k, v in enumerate(hypergraph.vertices):
        angle = 2.0 * math.pi * k / n
        pos[v] = (round(3.0 * math.cos(angle), 4), round(3.0 * math.sin(angle), 4))
    lines = [
        "\\documentclass[tikz]{standalone}",
        "\\begin{document}",
        "\\begin{tikzpicture}",
    ]
    for v in hypergraph.vertices:
        fill = "fill=black" if v in closed else "fill=white"
        x, y = pos[v]
        caption = _vertex_caption(hypergraph, v).replace("\\n", " ")
        lines.append(
            f"  \\node[circle,draw,{fill},inner sep=2pt,label=above:{{{caption}}}]"
            f" (v{v}) at ({x},{y}) {{}};")
    hub = 0
    for e in hypergraph.edges:
        label = ",".join(hypergraph.edge_labels[e])
        members = sorted(e)
        if len(e) == 2:
            lines.append(f"  \\draw (v{members[0]}) -- node[above] {{{label}}} (v{members[1]});")
        elif len(e) >= 3:
            hub += 1
            cx = round(sum(pos[v][0] for v in members) / len(members), 4)
            cy = round(sum(pos[v][1] for v in members) / len(members), 4)
            lines.append(
                f"  \\node[circle,draw,fill=gray,inner sep=1pt,"
                f"label=below:{{{label}}}] (h{hub}) at ({cx},{cy}) {{}};")
            lines.extend(f"  \\draw[dashed] (h{hub}) -- (v{v});" for v in members)
    lines.extend(["\\end{tikzpicture}", "\\end{document}"])
    return "\n".join(lines) + "\n"
