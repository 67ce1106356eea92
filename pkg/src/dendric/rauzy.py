"""Rauzy graphs, their loop-label subgroups, and the connectivity criterion pipeline."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from .errors import InputError, InvariantViolation, RangeError
from .freegroup import StallingsGraph, is_free_family, stallings, subgroup_equals
from .language import LanguageApprox, extension_graph
from .returns import derive, return_words
from .words import GroupWord, Word, fmt_word


@dataclass(frozen=True)
class RauzyGraph:
    order: int
    vertices: Tuple[Word, ...]
    edges: Tuple[Tuple[Word, str, Word], ...]
    language: LanguageApprox = field(compare=False, repr=False, default=None)

    def out_edges(self, u: Word):
        return [e for e in self.edges if e[0] == u]

    def to_dot(self) -> str:
        lines = [f'digraph "rauzy_{self.order}" {{']
        for v in self.vertices:
            lines.append(f'  "{fmt_word(v)}";')
        for u, a, v in self.edges:
            lines.append(f'  "{fmt_word(u)}" -> "{fmt_word(v)}" [label="{a}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def rauzy_graph(L: LanguageApprox, m: int) -> RauzyGraph:
    """Order-``m`` Rauzy graph: an edge ``x[:m] -> x[1:]`` labelled ``x[0]`` per factor ``x`` of length ``m+1``."""
    if m < 0 or m + 1 > L.max_len:
        raise RangeError(f"Rauzy graph of order {m} needs max_len >= {m + 1}")
    vertices = L.of_length(m)
    edges = tuple((x[:m], x[0], x[1:]) for x in L.of_length(m + 1))
    return RauzyGraph(m, vertices, edges, L)


def path_label(edges) -> GroupWord:
    return GroupWord.positive(tuple(a for _, a, _ in edges))


@dataclass(frozen=True)
class RauzyGroup:
    base: Word
    generators: Tuple[GroupWord, ...]
    graph: StallingsGraph
    component: Tuple[Word, ...]
    restricted: bool


def rauzy_group(G: RauzyGraph, base) -> RauzyGroup:
    """Subgroup generated by labels of closed paths at ``base``.

    A breadth-first spanning tree (edges in canonical order) gives one
    generator per non-tree edge ``u -a-> v``: tree label to ``u``, then ``a``,
    then the inverse of the tree label to ``v``.
    """
    base = tuple(base)
    if base not in G.vertices:
        raise InputError(f"{fmt_word(base)} is not a vertex of the Rauzy graph")
    alphabet = G.language.alphabet
    key = alphabet.key
    adjacency: Dict[Word, list] = {v: [] for v in G.vertices}
    for i, (u, a, v) in enumerate(G.edges):
        adjacency[u].append((key(u), key((a,)), key(v), i, v))
        adjacency[v].append((key(v), key((a,)), key(u), i, u))
    to_vertex: Dict[Word, GroupWord] = {base: GroupWord()}
    tree_edges = set()
    queue = deque([base])
    while queue:
        x = queue.popleft()
        for *_, i, y in sorted(adjacency[x]):
            if y in to_vertex:
                continue
            u, a, v = G.edges[i]
            step = GroupWord(((a, 1),)) if u == x else GroupWord(((a, -1),))
            to_vertex[y] = to_vertex[x] * step
            tree_edges.add(i)
            queue.append(y)
    gens = []
    for i, (u, a, v) in enumerate(G.edges):
        if i in tree_edges or u not in to_vertex:
            continue
        gens.append(to_vertex[u] * GroupWord(((a, 1),)) * to_vertex[v].inverse())
    component = tuple(v for v in G.vertices if v in to_vertex)
    return RauzyGroup(base, tuple(gens), stallings(gens, alphabet), component,
                      len(component) < len(G.vertices))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FreeReturnsReport:
    word: Word
    returns: Tuple[Word, ...]
    free: bool
    witness: Optional[Word]
    connected: bool
    derived_returns_full: Optional[bool] = None
    rauzy_group_full: Optional[bool] = None

    @property
    def hypotheses(self) -> bool:
        return self.free and self.witness is not None

    @property
    def status(self) -> str:
        if not self.hypotheses:
            return "hypotheses not established"
        if self.connected and self.derived_returns_full and self.rauzy_group_full:
            return "verified"
        return "VIOLATION"

    def lines(self) -> list:
        out = [
            f"word {fmt_word(self.word)}",
            "returns " + " ".join(fmt_word(r) for r in self.returns),
            f"free family: {self.free}",
            f"witness u: {fmt_word(self.witness) if self.witness is not None else '-'}",
        ]
        if self.hypotheses:
            out += [
                f"derived returns generate F_B: {self.derived_returns_full}",
                f"Rauzy group is F_B: {self.rauzy_group_full}",
                f"extension graph connected: {self.connected}",
            ]
        out.append(f"status: {self.status}")
        return out


def check_prop4(L: LanguageApprox, w, strict: bool = True) -> FreeReturnsReport:
    """Check the free-returns criterion for connectivity of the extension graph of ``w``.

    Hypotheses: the return set of ``w`` is a free family, and some complete
    return word ``u = r w`` has returns spanning the same subgroup.  When both
    hold, the extension graph must be connected; the intermediate facts on the
    derived language are computed too.  Nothing is asserted otherwise.
    """
    w = tuple(w)
    A = L.alphabet
    R = return_words(L, w)
    free = is_free_family(R.group_words(), A)
    connected = extension_graph(L, w).is_connected()
    if not free:
        return FreeReturnsReport(w, R.returns, free, None, connected)

    witness = None
    for r in R.returns:
        u = r + w
        try:
            Ru = return_words(L, u)
        except RangeError:
            continue
        if subgroup_equals(Ru.group_words(), R.group_words(), A):
            witness = u
            break
    if witness is None:
        return FreeReturnsReport(w, R.returns, free, None, connected)

    D = derive(L, w)
    B = D.derived_alphabet
    letter = D.letter_for(witness[:len(witness) - len(w)])
    full = [GroupWord(((b, 1),)) for b in B]
    derived_R = return_words(D.language, (letter,))
    derived_full = subgroup_equals(derived_R.group_words(), full, B)
    if D.language.max_len < 2:
        raise RangeError("derived language too short for its Rauzy graph")
    H = rauzy_group(rauzy_graph(D.language, 1), (letter,))
    rauzy_full = H.graph.is_rose()
    report = FreeReturnsReport(w, R.returns, free, witness, connected, derived_full, rauzy_full)
    if strict and report.status == "VIOLATION":
        raise InvariantViolation("\n".join(report.lines()))
    return report
