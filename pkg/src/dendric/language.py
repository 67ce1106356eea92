"""Finite approximations of shift-space languages and their extension graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, FrozenSet, Optional, Tuple

from .errors import InputError, InvariantViolation, RangeError
from .words import Alphabet, Substitution, Word, apply, fmt_word, is_primitive


@dataclass(frozen=True)
class LanguageApprox:
    """The set of factors of length at most ``max_len`` of a minimal shift.

    ``stream`` returns a prefix (of at least the requested length when
    possible) of a one-sided sequence whose factors are exactly the language;
    it only fixes orderings, membership never depends on it.
    """

    alphabet: Alphabet
    max_len: int
    factors: FrozenSet[Word]
    source: object = None
    stream: Optional[Callable[[int], Word]] = field(default=None, compare=False, repr=False)

    def __contains__(self, w) -> bool:
        return tuple(w) in self.factors

    def __len__(self) -> int:
        return len(self.factors)

    @cached_property
    def _by_length(self) -> dict:
        table: dict = {n: [] for n in range(self.max_len + 1)}
        for w in self.factors:
            table[len(w)].append(w)
        return {n: tuple(self.alphabet.sorted(ws)) for n, ws in table.items()}

    def of_length(self, n: int) -> Tuple[Word, ...]:
        """Length-``n`` factors in canonical order."""
        if n < 0 or n > self.max_len:
            raise RangeError(f"length {n} outside 0..{self.max_len}")
        return self._by_length[n]

    def words(self, up_to: Optional[int] = None) -> list:
        """All factors of length <= ``up_to`` in canonical order."""
        up_to = self.max_len if up_to is None else up_to
        return [w for n in range(up_to + 1) for w in self.of_length(n)]

    def restrict(self, n: int) -> "LanguageApprox":
        if n > self.max_len:
            raise RangeError(f"cannot restrict to {n} > {self.max_len}")
        return LanguageApprox(self.alphabet, n, frozenset(w for w in self.factors if len(w) <= n),
                              self.source, self.stream)

    @property
    def source_name(self) -> str:
        if isinstance(self.source, Substitution):
            return self.source.name or "substitution"
        return str(self.source)

    def check_invariants(self) -> None:
        """Raise :class:`InvariantViolation` unless factor-closed and bi-prolongable."""
        if () not in self.factors:
            raise InvariantViolation("empty word missing")
        for w in self.factors:
            if len(w) > self.max_len:
                raise InvariantViolation(f"{fmt_word(w)} longer than max_len")
            if w and (w[1:] not in self.factors or w[:-1] not in self.factors):
                raise InvariantViolation(f"not factor-closed at {fmt_word(w)}")
            if len(w) < self.max_len:
                if not any(w + (b,) in self.factors for b in self.alphabet):
                    raise InvariantViolation(f"{fmt_word(w)} not right-prolongable")
                if not any((a,) + w in self.factors for a in self.alphabet):
                    raise InvariantViolation(f"{fmt_word(w)} not left-prolongable")


def _all_factors(words, n: int) -> set:
    out = {()}
    for u in words:
        for i in range(len(u)):
            for j in range(i + 1, min(len(u), i + n) + 1):
                out.add(u[i:j])
    return out


def fixed_point_seed(s: Substitution) -> Tuple[str, Substitution]:
    """A letter ``c`` and power ``t`` of ``s`` with ``t(c)`` starting with ``c``.

    Iterating ``t`` on ``c`` then gives a growing prefix-stable stream.
    """
    first = s.domain.letters[0]
    seen = {}
    k = 0
    letter = first
    while letter not in seen:
        seen[letter] = k
        letter = s.rules[letter][0]
        k += 1
    period = k - seen[letter]
    t = s.power(period) if period > 1 else s
    return letter, t


def substitution_stream(s: Substitution) -> Callable[[int], Word]:
    """Prefixes of a one-sided fixed point of a power of ``s``."""
    seed, t = fixed_point_seed(s)
    growing = all(len(t.rules[a]) > 1 for a in t.domain) or len(t.rules[seed]) > 1
    cache = [(seed,)]

    def prefix(length: int) -> Word:
        current = cache[-1]
        while len(current) < length and growing:
            nxt = apply(t, current)
            if len(nxt) == len(current):
                break
            current = nxt
            cache.append(current)
        return current

    return prefix


def generate_language(s: Substitution, n: int) -> LanguageApprox:
    """Factors of length <= ``n`` of the shift generated by a primitive substitution.

    The length-``n`` factors are the least set containing the length-``n``
    factors of one long iterate and closed under ``u -> factors of s(u)``;
    shorter factors are their factors.
    """
    if n < 1:
        raise InputError("language bound must be >= 1")
    if not is_primitive(s):
        raise InputError(f"substitution {s.name!r} is not primitive; its shift is not minimal")
    stream = substitution_stream(s)
    seed = stream(n)
    if len(seed) < n:
        raise InvariantViolation("stream failed to grow")

    def windows(u):
        return (u[i:i + n] for i in range(len(u) - n + 1))

    top = set(windows(seed))
    todo = deque(top)
    while todo:
        u = todo.popleft()
        for v in windows(apply(s, u)):
            if v not in top:
                top.add(v)
                todo.append(v)
    factors = frozenset(_all_factors(top, n))
    return LanguageApprox(s.domain, n, factors, s, stream)


# ---------------------------------------------------------------------------
# extension graphs


@dataclass(frozen=True)
class ExtensionGraph:
    """Bipartite graph of two-sided extensions of a word."""

    word: Word
    left: FrozenSet[str]
    right: FrozenSet[str]
    edges: FrozenSet[Tuple[str, str]]
    alphabet: Alphabet = field(compare=False, repr=False, default=None)

    @property
    def n_vertices(self) -> int:
        return len(self.left) + len(self.right)

    @property
    def is_empty(self) -> bool:
        return not self.edges

    def _components(self) -> int:
        parent = {("L", a): ("L", a) for a in self.left}
        parent.update({("R", b): ("R", b) for b in self.right})

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(("L", a)), find(("R", b))
            if ra != rb:
                parent[ra] = rb
        return len({find(x) for x in parent})

    def is_connected(self) -> bool:
        if self.is_empty:
            return False
        return self._components() == 1

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.edges) == self.n_vertices - 1

    def multiplicity(self) -> int:
        return len(self.edges) - len(self.left) - len(self.right) + 1

    def kind(self) -> str:
        m = self.multiplicity()
        return "strong" if m > 0 else "neutral" if m == 0 else "weak"

    def sorted_edges(self) -> list:
        if self.alphabet is None:
            return sorted(self.edges)
        key = self.alphabet.index
        return sorted(self.edges, key=lambda e: (key(e[0]), key(e[1])))

    def _sorted(self, letters) -> list:
        if self.alphabet is None:
            return sorted(letters)
        return sorted(letters, key=self.alphabet.index)

    def to_dot(self) -> str:
        lines = [f'graph "{fmt_word(self.word)}" {{']
        for a in self._sorted(self.left):
            lines.append(f'  "L_{a}" [label="{a}"];')
        for b in self._sorted(self.right):
            lines.append(f'  "R_{b}" [label="{b}"];')
        for a, b in self.sorted_edges():
            lines.append(f'  "L_{a}" -- "R_{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def is_connected(g: ExtensionGraph) -> bool:
    return g.is_connected()


def is_tree(g: ExtensionGraph) -> bool:
    return g.is_tree()


def multiplicity(g: ExtensionGraph) -> int:
    return g.multiplicity()


def extension_graph(L: LanguageApprox, w) -> ExtensionGraph:
    w = tuple(w)
    if len(w) > L.max_len - 2:
        raise RangeError(
            f"extension graph of {fmt_word(w)} needs factors of length {len(w) + 2},"
            f" approximation holds {L.max_len}")
    if w not in L:
        raise InputError(f"{fmt_word(w)} is not in the language")
    A = L.alphabet
    left = frozenset(a for a in A if (a,) + w in L)
    right = frozenset(b for b in A if w + (b,) in L)
    edges = frozenset((a, b) for a in left for b in right if (a,) + w + (b,) in L)
    return ExtensionGraph(w, left, right, edges, A)


# ---------------------------------------------------------------------------
# complexity and the second-difference identity


@dataclass(frozen=True)
class Complexity:
    p: Tuple[int, ...]
    s: Tuple[int, ...]
    b: Tuple[int, ...]


def complexity(L: LanguageApprox) -> Complexity:
    """Factor complexity and its first and second differences.

    ``p`` covers ``0..max_len``; ``s`` and ``b`` are one and two shorter.
    """
    p = tuple(len(L.of_length(n)) for n in range(L.max_len + 1))
    s = tuple(p[n + 1] - p[n] for n in range(len(p) - 1))
    b = tuple(s[n + 1] - s[n] for n in range(len(s) - 1))
    return Complexity(p, s, b)


@dataclass(frozen=True)
class MultiplicitySumReport:
    n: int
    b: int
    terms: Tuple[Tuple[Word, int], ...]
    holds: bool

    def lines(self) -> list:
        out = [f"n={self.n} b={self.b} sum={sum(m for _, m in self.terms)} holds={self.holds}"]
        out += [f"  {fmt_word(w)}\t{m}" for w, m in self.terms]
        return out


def check_eq1(L: LanguageApprox, n: int) -> MultiplicitySumReport:
    """Compare the second difference of complexity at ``n`` with the summed multiplicities."""
    if n < 0 or n + 2 > L.max_len:
        raise RangeError(f"second difference at {n} needs max_len >= {n + 2}")
    b = complexity(L).b[n]
    terms = tuple((w, extension_graph(L, w).multiplicity()) for w in L.of_length(n))
    return MultiplicitySumReport(n, b, terms, b == sum(m for _, m in terms))


@dataclass(frozen=True)
class DendricRow:
    word: Word
    connected: bool
    tree: bool
    multiplicity: int


@dataclass(frozen=True)
class DendricReport:
    up_to: int
    rows: Tuple[DendricRow, ...]

    @property
    def dendric(self) -> bool:
        return all(r.tree for r in self.rows)

    @property
    def witness(self) -> Optional[DendricRow]:
        """Shortest non-tree row in canonical order."""
        return next((r for r in self.rows if not r.tree), None)

    def verdict(self) -> str:
        if self.dendric:
            return f"dendric up to length {self.up_to}"
        return f"not dendric: {fmt_word(self.witness.word)} has no tree extension graph"


def dendric_report(L: LanguageApprox, up_to: int) -> DendricReport:
    if up_to > L.max_len - 2:
        raise RangeError(f"dendricity up to {up_to} needs max_len >= {up_to + 2}")
    rows = []
    for w in L.words(up_to):
        g = extension_graph(L, w)
        rows.append(DendricRow(w, g.is_connected(), g.is_tree(), g.multiplicity()))
    return DendricReport(up_to, tuple(rows))
