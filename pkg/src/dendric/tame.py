"""Elementary positive automorphisms and tame-basis certificates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .errors import InputError, InvariantViolation, NotABasisError
from .freegroup import is_basis_of_free_group
from .words import Alphabet, Word, fmt_word, word

DEFAULT_BUDGET = 100_000


@dataclass(frozen=True)
class ElementaryMove:
    """``alpha`` (a -> ab), ``alphatilde`` (a -> ba) or ``perm``.

    For ``perm``, ``images`` lists, in alphabet order, which old entry each
    position receives.
    """

    kind: str
    a: str = ""
    b: str = ""
    images: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind in ("alpha", "alphatilde"):
            if self.a == self.b:
                raise InputError(f"{self.kind} needs two distinct letters, got {self.a!r} twice")
        elif self.kind != "perm":
            raise InputError(f"unknown move kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "perm":
            return "perm (" + " ".join(self.images) + ")"
        return f"{self.kind} {self.a} {self.b}"


def alpha(a: str, b: str) -> ElementaryMove:
    return ElementaryMove("alpha", a, b)


def alpha_tilde(a: str, b: str) -> ElementaryMove:
    return ElementaryMove("alphatilde", a, b)


def permutation(images: Sequence[str]) -> ElementaryMove:
    return ElementaryMove("perm", images=tuple(images))


def apply_move(V: Sequence[Word], mv: ElementaryMove, alphabet: Alphabet) -> Tuple[Word, ...]:
    """Apply a move to a family ``V`` indexed by ``alphabet``."""
    V = tuple(tuple(v) for v in V)
    if len(V) != len(alphabet):
        raise InputError("family size does not match alphabet")
    if mv.kind == "perm":
        if sorted(mv.images) != sorted(alphabet.letters):
            raise InputError(f"{mv} is not a permutation of {alphabet.letters}")
        return tuple(V[alphabet.index(c)] for c in mv.images)
    for c in (mv.a, mv.b):
        if c not in alphabet:
            raise InputError(f"letter {c!r} not in alphabet")
    i, j = alphabet.index(mv.a), alphabet.index(mv.b)
    out = list(V)
    out[i] = V[i] + V[j] if mv.kind == "alpha" else V[j] + V[i]
    return tuple(out)


@dataclass(frozen=True)
class TameCertificate:
    alphabet: Alphabet
    moves: Tuple[ElementaryMove, ...]

    def replay(self) -> Tuple[Word, ...]:
        V = tuple((a,) for a in self.alphabet)
        for mv in self.moves:
            V = apply_move(V, mv, self.alphabet)
        return V

    def steps(self) -> list:
        """Family after each move, starting with the alphabet itself."""
        V = tuple((a,) for a in self.alphabet)
        out = [V]
        for mv in self.moves:
            V = apply_move(V, mv, self.alphabet)
            out.append(V)
        return out

    def to_text(self) -> str:
        return "".join(f"{mv}\n" for mv in self.moves)


def parse_certificate(text: str, alphabet: Alphabet) -> TameCertificate:
    moves = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "perm":
            images = rest.strip().strip("()").split()
            moves.append(permutation(images))
        elif head in ("alpha", "alphatilde"):
            parts = rest.split()
            if len(parts) != 2:
                raise InputError(f"line {lineno}: expected two letters")
            moves.append(ElementaryMove(head, parts[0], parts[1]))
        else:
            raise InputError(f"line {lineno}: unknown move {head!r}")
    return TameCertificate(alphabet, tuple(moves))


def verify_certificate(cert: TameCertificate, W, alphabet: Alphabet) -> bool:
    if cert.alphabet != alphabet:
        return False
    try:
        return set(cert.replay()) == {tuple(w) for w in W}
    except InputError:
        return False


def tame_decompose(W, alphabet: Alphabet, budget: int = DEFAULT_BUDGET) -> Optional[TameCertificate]:
    """Search for a tame certificate of the positive basis ``W``.

    Works backwards: strip a prefix ``y`` (undoing ``alphatilde``) or a suffix
    ``y`` (undoing ``alpha``) from some ``x``, where ``y`` is another member,
    until the family is the alphabet.  Total length strictly drops, so every
    branch ends; longer strips are tried first.  Returns ``None`` when
    ``budget`` nodes are exhausted, which says nothing about tameness.
    """
    family = tuple(word(w, alphabet) if isinstance(w, str) else tuple(w) for w in W)
    if not is_basis_of_free_group(family, alphabet):
        raise NotABasisError("{" + ", ".join(fmt_word(w) for w in family) + "} is not a basis")
    if budget < 1:
        raise InputError("budget must be >= 1")
    letters = alphabet.letters
    start = tuple(alphabet.sorted(family))
    visited = set()
    nodes = 0

    def search(V):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetExhausted
        if all(len(v) == 1 for v in V):
            return []
        key = frozenset(V)
        if key in visited:
            return None
        visited.add(key)
        candidates = []
        for i, x in enumerate(V):
            for j, y in enumerate(V):
                if i == j or len(y) >= len(x):
                    continue
                if x[:len(y)] == y:
                    candidates.append((-len(y), i, j, "alphatilde"))
                if x[-len(y):] == y:
                    candidates.append((-len(y), i, j, "alpha"))
        for neg, i, j, kind in sorted(candidates):
            x = V[i]
            z = x[-neg:] if kind == "alphatilde" else x[:len(x) + neg]
            nxt = V[:i] + (z,) + V[i + 1:]
            tail = search(nxt)
            if tail is not None:
                return tail + [ElementaryMove(kind, letters[i], letters[j])]
        return None

    try:
        moves = search(start)
    except _BudgetExhausted:
        return None
    if moves is None:
        return None
    final = _final_family(start, moves, alphabet)
    perm = tuple(v[0] for v in final)
    prefix = [] if perm == letters else [permutation(perm)]
    cert = TameCertificate(alphabet, tuple(prefix + moves))
    if not verify_certificate(cert, family, alphabet):
        raise InvariantViolation("tame certificate failed replay")
    for V in cert.steps():
        if not is_basis_of_free_group(V, alphabet):
            raise InvariantViolation("intermediate family of a tame certificate is not a basis")
    return cert


def _final_family(start, moves, alphabet):
    """Undo ``moves`` (given in forward order) starting from ``start``."""
    V = list(start)
    for mv in reversed(moves):
        i, j = alphabet.index(mv.a), alphabet.index(mv.b)
        y = V[j]
        V[i] = V[i][len(y):] if mv.kind == "alphatilde" else V[i][:len(V[i]) - len(y)]
    return V


class _BudgetExhausted(Exception):
    pass
