"""Stallings graphs of finitely generated subgroups of a free group.

Each edge carries a provenance element of the free group on the generator
symbols ``w1..wk``.  Folding keeps the invariant that for every closed path
at the basepoint, the product of provenances maps onto the path label under
``wi -> W[i]``; reading a subgroup element off the folded graph therefore
expresses it in the generators.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import MembershipError
from .words import Alphabet, GroupWord, Substitution, Word

Edge = Tuple[int, str, int]


def as_group_word(g) -> GroupWord:
    if isinstance(g, GroupWord):
        return g
    return GroupWord.positive(tuple(g))


def generator_symbols(k: int) -> Alphabet:
    return Alphabet(tuple(f"w{i}" for i in range(1, k + 1)))


class _Folder:
    """Mutable multigraph used while folding; discarded afterwards."""

    def __init__(self):
        self.n = 1
        self.edges: Dict[int, list] = {}  # id -> [src, letter, tgt, provenance]
        self.out: Dict[int, set] = {0: set()}
        self.inc: Dict[int, set] = {0: set()}
        self._next = 0

    def new_vertex(self) -> int:
        v = self.n
        self.n += 1
        self.out[v] = set()
        self.inc[v] = set()
        return v

    def add_edge(self, src, letter, tgt, prov: GroupWord) -> int:
        eid = self._next
        self._next += 1
        self.edges[eid] = [src, letter, tgt, prov]
        self.out[src].add(eid)
        self.inc[tgt].add(eid)
        return eid

    def remove_edge(self, eid):
        src, _, tgt, _ = self.edges.pop(eid)
        self.out[src].discard(eid)
        self.inc[tgt].discard(eid)

    def add_petal(self, g: GroupWord, symbol: str):
        syll = g.syllables
        if not syll:
            return
        path = [0] + [self.new_vertex() for _ in range(len(syll) - 1)] + [0]
        for i, (a, e) in enumerate(syll):
            last = i == len(syll) - 1
            u, v = path[i], path[i + 1]
            if e == 1:
                prov = GroupWord(((symbol, 1),)) if last else GroupWord()
                self.add_edge(u, a, v, prov)
            else:
                prov = GroupWord(((symbol, -1),)) if last else GroupWord()
                self.add_edge(v, a, u, prov)

    def _find_clash(self):
        """Smallest (vertex, direction, letter) with two distinct edges, if any."""
        for v in sorted(self.out):
            for direction, table in (("out", self.out), ("in", self.inc)):
                by_letter: Dict[str, list] = {}
                for eid in table[v]:
                    by_letter.setdefault(self.edges[eid][1], []).append(eid)
                for letter in sorted(by_letter):
                    ids = by_letter[letter]
                    if len(ids) > 1:
                        ids.sort()
                        return direction, ids[0], ids[1]
        return None

    def _merge(self, keep: int, drop: int, delta: GroupWord):
        """Identify ``drop`` with ``keep``; ``delta`` realigns provenances at ``drop``."""
        inv = delta.inverse()
        for eid in list(self.out[drop]):
            e = self.edges[eid]
            e[3] = delta * e[3]
        for eid in list(self.inc[drop]):
            e = self.edges[eid]
            e[3] = e[3] * inv
        for eid in list(self.out[drop]):
            self.edges[eid][0] = keep
            self.out[keep].add(eid)
        for eid in list(self.inc[drop]):
            self.edges[eid][2] = keep
            self.inc[keep].add(eid)
        del self.out[drop]
        del self.inc[drop]

    def fold(self):
        while True:
            clash = self._find_clash()
            if clash is None:
                return
            direction, e1, e2 = clash
            s1, _, t1, p1 = self.edges[e1]
            s2, _, t2, p2 = self.edges[e2]
            if direction == "out":
                v1, v2 = t1, t2
                delta = p1.inverse() * p2
            else:
                v1, v2 = s1, s2
                delta = p1 * p2.inverse()
            if v1 != v2:
                if v2 == 0:
                    # keep the basepoint; merge the other way round
                    v1, v2 = v2, v1
                    delta = delta.inverse()
                self._merge(v1, v2, delta)
            self.remove_edge(e2)

    def prune(self):
        """Strip hanging trees so every non-base vertex has degree >= 2."""
        queue = deque(v for v in self.out if v != 0)
        while queue:
            v = queue.popleft()
            if v not in self.out or v == 0:
                continue
            deg = len(self.out[v]) + len(self.inc[v])
            loops = sum(1 for eid in self.out[v] if self.edges[eid][2] == v)
            if deg == 0 or (deg == 1 and loops == 0):
                for eid in list(self.out[v] | self.inc[v]):
                    src, _, tgt, _ = self.edges[eid]
                    self.remove_edge(eid)
                    queue.append(tgt if src == v else src)
                del self.out[v]
                del self.inc[v]


@dataclass(frozen=True)
class StallingsGraph:
    """Folded core graph of a subgroup; vertex 0 is the basepoint."""

    alphabet: Alphabet
    n_vertices: int
    edges: Tuple[Edge, ...]
    provenance: Tuple[GroupWord, ...]
    generators: Tuple[GroupWord, ...]

    @property
    def base(self) -> int:
        return 0

    def _step(self):
        out: Dict[Tuple[int, str], int] = {}
        inc: Dict[Tuple[int, str], int] = {}
        for i, (u, a, v) in enumerate(self.edges):
            out[(u, a)] = i
            inc[(v, a)] = i
        return out, inc

    def trace(self, g: GroupWord):
        """Follow ``g`` from the basepoint: (end vertex or None, provenance product)."""
        out, inc = self._step()
        v = 0
        prov = GroupWord()
        for a, e in g.syllables:
            if e == 1:
                i = out.get((v, a))
                if i is None:
                    return None, prov
                v = self.edges[i][2]
                prov = prov * self.provenance[i]
            else:
                i = inc.get((v, a))
                if i is None:
                    return None, prov
                v = self.edges[i][0]
                prov = prov * self.provenance[i].inverse()
        return v, prov

    def is_rose(self) -> bool:
        """One vertex carrying one loop per letter: the whole free group."""
        letters = sorted(a for _, a, _ in self.edges)
        return self.n_vertices == 1 and letters == sorted(self.alphabet.letters)

    def to_dot(self, name: str = "stallings") -> str:
        lines = [f'digraph "{name}" {{']
        for v in range(self.n_vertices):
            shape = "doublecircle" if v == 0 else "circle"
            lines.append(f'  {v} [shape={shape}];')
        for u, a, v in self.edges:
            lines.append(f'  {u} -> {v} [label="{a}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def stallings(W: Iterable, alphabet: Alphabet) -> StallingsGraph:
    """Fold the bouquet of ``W`` into the Stallings graph of the subgroup it generates."""
    gens = tuple(as_group_word(g) for g in W)
    for g in gens:
        for a, _ in g.syllables:
            if a not in alphabet:
                raise MembershipError(f"letter {a!r} of {g} outside alphabet {alphabet.letters}")
    folder = _Folder()
    symbols = generator_symbols(len(gens)) if gens else ()
    for g, sym in zip(gens, symbols):
        folder.add_petal(g, sym)
    folder.fold()
    folder.prune()
    return _freeze(folder, alphabet, gens)


def _freeze(folder: _Folder, alphabet: Alphabet, gens) -> StallingsGraph:
    # breadth-first renumbering from the basepoint, letters in alphabet order
    order = {0: 0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        nbrs = []
        for eid in folder.out[v]:
            _, a, t, _ = folder.edges[eid]
            nbrs.append((alphabet.index(a), 0, t))
        for eid in folder.inc[v]:
            s, a, _, _ = folder.edges[eid]
            nbrs.append((alphabet.index(a), 1, s))
        for _, _, t in sorted(nbrs):
            if t not in order:
                order[t] = len(order)
                queue.append(t)
    edges = []
    for eid, (s, a, t, p) in folder.edges.items():
        edges.append(((order[s], a, order[t]), p))
    edges.sort(key=lambda item: (item[0][0], alphabet.index(item[0][1]), item[0][2]))
    return StallingsGraph(alphabet, len(order), tuple(e for e, _ in edges),
                          tuple(p for _, p in edges), tuple(gens))


def contains(G: StallingsGraph, g) -> bool:
    end, _ = G.trace(as_group_word(g))
    return end == 0


def rank(G: StallingsGraph) -> int:
    return len(G.edges) - G.n_vertices + 1


def is_basis_of_free_group(W: Sequence, alphabet: Alphabet) -> bool:
    """``|W| = |A|`` and ``W`` generates everything (Hopfian shortcut)."""
    W = list(W)
    if len(W) != len(alphabet):
        return False
    return stallings(W, alphabet).is_rose()


def is_free_family(W: Sequence, alphabet: Alphabet | None = None) -> bool:
    """True iff ``W`` freely generates the subgroup it spans."""
    W = [as_group_word(g) for g in W]
    if alphabet is None:
        alphabet = _alphabet_of(W)
    return rank(stallings(W, alphabet)) == len(W)


def subgroup_equals(W1: Sequence, W2: Sequence, alphabet: Alphabet | None = None) -> bool:
    W1 = [as_group_word(g) for g in W1]
    W2 = [as_group_word(g) for g in W2]
    if alphabet is None:
        alphabet = _alphabet_of(W1 + W2)
    G1, G2 = stallings(W1, alphabet), stallings(W2, alphabet)
    return all(contains(G1, g) for g in W2) and all(contains(G2, g) for g in W1)


def _alphabet_of(words) -> Alphabet:
    letters: List[str] = []
    for g in words:
        for a, _ in g.syllables:
            if a not in letters:
                letters.append(a)
    return Alphabet(tuple(sorted(letters)) or ("a",))


def basis_morphism(W: Sequence, alphabet: Alphabet) -> Substitution:
    """The morphism ``wi -> W[i]`` from the generator symbols.

    Only defined when every element of ``W`` is a positive word.
    """
    gens = [as_group_word(g) for g in W]
    rules = {s: g.letters() for s, g in zip(generator_symbols(len(gens)), gens)}
    return Substitution(rules, generator_symbols(len(gens)), alphabet, name="theta_W")


def evaluate(W: Sequence, expression: GroupWord) -> GroupWord:
    """Image of a word in ``w1..wk`` under ``wi -> W[i]`` (any signs allowed in ``W``)."""
    gens = [as_group_word(g) for g in W]
    out = GroupWord()
    for sym, e in expression.syllables:
        g = gens[int(sym[1:]) - 1]
        out = out * (g if e == 1 else g.inverse())
    return out


def express(W: Sequence, target, alphabet: Alphabet | None = None) -> GroupWord:
    """Write ``target`` as a reduced word in the symbols ``w1..wk`` standing for ``W``.

    Raises :class:`MembershipError` when ``target`` is not in the subgroup.
    """
    gens = [as_group_word(g) for g in W]
    target = as_group_word(target)
    if alphabet is None:
        alphabet = _alphabet_of(gens + [target])
    G = stallings(gens, alphabet)
    end, prov = G.trace(target)
    if end != 0:
        raise MembershipError(f"{target} is not in the subgroup generated by the given words")
    if evaluate(gens, prov) != target:
        raise MembershipError(f"provenance of {target} does not evaluate back to it")
    return prov


def fmt_group_words(W) -> str:
    return "{" + ", ".join(str(as_group_word(g)) for g in W) + "}"


def positive_words(W) -> List[Word]:
    return [as_group_word(g).letters() for g in W]

