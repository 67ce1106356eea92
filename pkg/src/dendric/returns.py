"""Return words, derived languages and the return-word graph morphism.

All computations are exact on a :class:`LanguageApprox`: return words are
found by extending ``w`` letter by letter inside the language until ``w``
reappears, and every branch must close before ``max_len`` or a
:class:`RangeError` is raised.  Nothing is inferred from a finite sample.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .errors import InputError, InvariantViolation, RangeError
from .language import ExtensionGraph, LanguageApprox, extension_graph
from .words import Alphabet, GroupWord, Substitution, Word, apply, apply_group, fmt_word, word


@dataclass(frozen=True)
class ReturnSet:
    base_word: Word
    returns: Tuple[Word, ...]
    side: str = "left"

    def __iter__(self):
        return iter(self.returns)

    def __len__(self) -> int:
        return len(self.returns)

    def __contains__(self, r) -> bool:
        return tuple(r) in self.returns

    def as_set(self) -> frozenset:
        return frozenset(self.returns)

    def group_words(self) -> list:
        return [GroupWord.positive(r) for r in self.returns]

    def lines(self) -> list:
        return [fmt_word(r) for r in self.returns]


def complete_returns(L: LanguageApprox, w) -> list:
    """Words of ``L`` that begin and end with ``w`` and contain it nowhere else.

    Raises :class:`RangeError` if some extension of ``w`` would have to grow
    past ``max_len`` before ``w`` recurs.
    """
    w = tuple(w)
    if w not in L:
        raise InputError(f"{fmt_word(w)} is not in the language")
    n = len(w)
    found = []
    stack = [w]
    while stack:
        x = stack.pop()
        for c in L.alphabet:
            y = x + (c,)
            if len(y) > L.max_len:
                raise RangeError(
                    f"returns to {fmt_word(w)} not certified: {fmt_word(x)} reaches"
                    f" max_len={L.max_len} without a second occurrence")
            if y not in L:
                continue
            if n == 0 or y[-n:] == w:
                found.append(y)
            else:
                stack.append(y)
    return found


def _stream_order(L: LanguageApprox, w: Word, complete: list) -> list:
    """Order complete return words by first occurrence in ``L.stream``."""
    if L.stream is None:
        return L.alphabet.sorted(complete)
    targets = set(complete)
    first: Dict[Word, int] = {}
    length = max(64, 4 * L.max_len)
    prev_len = -1
    while len(first) < len(targets):
        text = L.stream(length)
        if len(text) == prev_len:
            break
        prev_len = len(text)
        positions = _occurrences(w, text)
        for i, j in zip(positions, positions[1:]):
            x = text[i:j + len(w)]
            if x in targets and x not in first:
                first[x] = i
        length *= 2
        if length > 1 << 20:
            break
    seen = sorted(first, key=first.get)
    rest = L.alphabet.sorted(t for t in targets if t not in first)
    return seen + rest


def _occurrences(w: Word, text: Word) -> list:
    if not w:
        return list(range(len(text)))
    n = len(w)
    return [i for i in range(len(text) - n + 1) if text[i:i + n] == w]


def return_words(L: LanguageApprox, w) -> ReturnSet:
    """Left return words to ``w``: ``r`` with ``rw`` a complete return word."""
    w = tuple(w)
    complete = _stream_order(L, w, complete_returns(L, w))
    n = len(w)
    return ReturnSet(w, tuple(x[:len(x) - n] for x in complete), "left")


def right_return_words(L: LanguageApprox, w) -> ReturnSet:
    """Right return words to ``w``: ``r'`` with ``wr'`` a complete return word."""
    w = tuple(w)
    complete = _stream_order(L, w, complete_returns(L, w))
    return ReturnSet(w, tuple(x[len(w):] for x in complete), "right")


def is_return_word(L: LanguageApprox, w, r) -> bool:
    """Literal set condition: ``rw`` in ``L``, starts with ``w``, no interior ``w``."""
    w, r = tuple(w), tuple(r)
    if not r:
        return False
    x = r + w
    if x not in L or x[:len(w)] != w:
        return False
    interior = x[1:-1] if w else x
    n = len(w)
    if n == 0:
        return len(r) == 1
    return all(interior[i:i + n] != w for i in range(len(interior) - n + 1))


# ---------------------------------------------------------------------------
# derivation


def fresh_alphabet(k: int, avoid: Alphabet) -> Alphabet:
    """Symbols ``r1..rk``, primed as often as needed to avoid ``avoid``."""
    suffix = ""
    while True:
        letters = tuple(f"r{i}{suffix}" for i in range(1, k + 1))
        if not any(a in avoid for a in letters):
            return Alphabet(letters)
        suffix += "'"


@dataclass(frozen=True)
class DerivedSystem:
    """Recoding of a language along the return words to ``base_word``."""

    base_word: Word
    returns: ReturnSet
    theta: Substitution
    theta_prime: Substitution
    language: LanguageApprox

    @property
    def derived_alphabet(self) -> Alphabet:
        return self.theta.domain

    def letter_for(self, r) -> str:
        """Derived letter whose image under ``theta`` is ``r``."""
        r = tuple(r)
        for b in self.derived_alphabet:
            if self.theta.rules[b] == r:
                return b
        raise InputError(f"{fmt_word(r)} is not a return word to {fmt_word(self.base_word)}")

    def table(self) -> list:
        return [f"{b} = {fmt_word(self.theta.rules[b])}" for b in self.derived_alphabet]

    def check_invariants(self) -> None:
        images = list(self.theta.rules.values())
        if len(set(images)) != len(images):
            raise InvariantViolation("derivating substitution is not injective")
        w = GroupWord.positive(self.base_word)
        for b in self.derived_alphabet:
            conj = w.inverse() * GroupWord.positive(self.theta.rules[b]) * w
            if conj != GroupWord.positive(self.theta_prime.rules[b]):
                raise InvariantViolation(f"right return of {b} is not the conjugate of its left return")
        self.language.check_invariants()


def max_derived_length(L: LanguageApprox, w) -> int:
    """Largest derived bound for which decoding stays inside ``L``."""
    w = tuple(w)
    longest = max(len(r) for r in return_words(L, w))
    return (L.max_len - len(w)) // longest


def derive(L: LanguageApprox, w, n: Optional[int] = None) -> DerivedSystem:
    """Derived language of ``L`` with respect to ``w``, up to length ``n``.

    ``z`` belongs to the derived language iff ``theta(z) w`` belongs to ``L``.
    ``n`` defaults to the largest bound the approximation supports.
    """
    w = tuple(w)
    R = return_words(L, w)
    right = right_return_words(L, w)
    longest = max(len(r) for r in R)
    limit = (L.max_len - len(w)) // longest
    if n is None:
        n = limit
    if n < 1 or n > limit:
        raise RangeError(
            f"derived bound {n} for {fmt_word(w)} needs max_len >= {max(n, 1) * longest + len(w)},"
            f" approximation holds {L.max_len}")
    B = fresh_alphabet(len(R), L.alphabet)
    theta = Substitution(dict(zip(B, R.returns)), B, L.alphabet, name=f"theta_{fmt_word(w)}")
    theta_prime = Substitution(dict(zip(B, right.returns)), B, L.alphabet,
                               name=f"theta'_{fmt_word(w)}")

    factors = {()}
    layer = [()]
    for _ in range(n):
        nxt = []
        for z in layer:
            for b in B:
                zb = z + (b,)
                if apply(theta, zb) + w in L:
                    factors.add(zb)
                    nxt.append(zb)
        layer = nxt

    stream = _decoded_stream(L, w, theta) if L.stream is not None else None
    derived = LanguageApprox(B, n, frozenset(factors), f"D_{fmt_word(w)}({L.source_name})", stream)
    return DerivedSystem(w, R, theta, theta_prime, derived)


def _decoded_stream(L: LanguageApprox, w: Word, theta: Substitution):
    """Stream of the derived language: the base stream cut at occurrences of ``w``."""
    lookup = {img: b for b, img in theta.rules.items()}
    longest = max(len(img) for img in lookup)

    def prefix(length: int) -> Word:
        text = L.stream(length * longest + len(w) + 1)
        positions = _occurrences(w, text)
        out = []
        for i, j in zip(positions, positions[1:]):
            r = text[i:j]
            if r not in lookup:
                raise InvariantViolation(f"gap {fmt_word(r)} in stream is not a return word")
            out.append(lookup[r])
        return tuple(out)

    return prefix


# ---------------------------------------------------------------------------
# checks of the derivation identities


@dataclass(frozen=True)
class DerivedReturnsCheck:
    base_word: Word
    derived_word: Word
    image_of_derived_returns: frozenset
    returns_of_image: frozenset

    @property
    def holds(self) -> bool:
        return self.image_of_derived_returns == self.returns_of_image


def check_durand(L: LanguageApprox, w, u, derived: Optional[DerivedSystem] = None) -> DerivedReturnsCheck:
    """Compare ``theta(R_D(u))`` with ``R_L(theta(u) w)`` as sets of words."""
    w = tuple(w)
    D = derived if derived is not None else derive(L, w)
    u = word(u, D.derived_alphabet) if not isinstance(u, tuple) else u
    if u not in D.language:
        raise InputError(f"{fmt_word(u)} is not in the derived language")
    lhs = frozenset(apply(D.theta, r) for r in return_words(D.language, u))
    rhs = return_words(L, apply(D.theta, u) + w).as_set()
    return DerivedReturnsCheck(w, u, lhs, rhs)


@dataclass(frozen=True)
class ThetaMorphismReport:
    base_word: Word
    vertex_map: Dict[Tuple[str, str], str]
    derived_graph: ExtensionGraph
    target_graph: ExtensionGraph
    is_morphism: bool
    onto_vertices: bool
    onto_edges: bool

    @property
    def ok(self) -> bool:
        return self.is_morphism and self.onto_vertices and self.onto_edges

    def lines(self) -> list:
        out = [f"base word {fmt_word(self.base_word)}"]
        for (side, r), a in sorted(self.vertex_map.items()):
            out.append(f"  {side} {r} -> {a}")
        out.append(f"morphism={self.is_morphism} onto_vertices={self.onto_vertices}"
                   f" onto_edges={self.onto_edges}")
        return out


def lemma2_morphism(L: LanguageApprox, w, derived: Optional[DerivedSystem] = None,
                    strict: bool = True) -> ThetaMorphismReport:
    """Vertex map from the derived extension graph of the empty word onto that of ``w``.

    Left vertices go to the last letter of their left return word, right
    vertices to the first letter of their right return word.  With
    ``strict`` a failure raises :class:`InvariantViolation`.
    """
    w = tuple(w)
    D = derived if derived is not None else derive(L, w)
    if D.language.max_len < 2:
        raise RangeError("derived language must contain length-2 words")
    source = extension_graph(D.language, ())
    target = extension_graph(L, w)
    vmap = {}
    for r in source.left:
        vmap[("L", r)] = D.theta.rules[r][-1]
    for s in source.right:
        vmap[("R", s)] = D.theta_prime.rules[s][0]

    image_edges = {(vmap[("L", r)], vmap[("R", s)]) for r, s in source.edges}
    is_morphism = image_edges <= target.edges
    onto_vertices = ({vmap[("L", r)] for r in source.left} == set(target.left)
                     and {vmap[("R", s)] for s in source.right} == set(target.right))
    onto_edges = image_edges == set(target.edges)
    report = ThetaMorphismReport(w, vmap, source, target, is_morphism, onto_vertices, onto_edges)
    if strict and not report.ok:
        raise InvariantViolation("\n".join(report.lines()))
    return report
