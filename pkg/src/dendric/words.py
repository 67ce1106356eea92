"""Alphabets, words, free-group words and substitutions.

Words are plain tuples of letters (strings).  Letters are usually single
characters, but derived alphabets use multi-character symbols such as ``r1``,
so a word is never assumed to be a ``str``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Tuple

from .errors import InputError

Word = Tuple[str, ...]
Syllable = Tuple[str, int]

EPS_NAMES = ("", "eps", "ε")


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of letters."""

    letters: Tuple[str, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        if not letters:
            raise InputError("alphabet must be nonempty")
        if len(set(letters)) != len(letters):
            raise InputError(f"duplicate letters in alphabet {letters}")
        for a in letters:
            if not isinstance(a, str) or not a:
                raise InputError(f"invalid letter {a!r}")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(letters)})

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __contains__(self, a) -> bool:
        return a in self._index

    def index(self, a: str) -> int:
        return self._index[a]

    def key(self, w: Sequence[str]):
        """Sort key for the canonical (length, lexicographic) order."""
        return (len(w), tuple(self._index[a] for a in w))

    def sorted(self, words: Iterable[Word]) -> list:
        return sorted(words, key=self.key)

    def check(self, w: Sequence[str]) -> Word:
        for a in w:
            if a not in self._index:
                raise InputError(f"letter {a!r} not in alphabet {self.letters}")
        return tuple(w)

    @property
    def single_char(self) -> bool:
        return all(len(a) == 1 for a in self.letters)


def word(text, alphabet: Alphabet | None = None) -> Word:
    """Parse a word.

    ``"eps"``, ``"ε"`` and ``""`` give the empty word.  With a multi-character
    alphabet the letters must be separated by whitespace or dots.
    """
    if isinstance(text, tuple):
        w = text
    elif isinstance(text, list):
        w = tuple(text)
    else:
        text = text.strip()
        if text in EPS_NAMES:
            w = ()
        elif alphabet is not None and not alphabet.single_char:
            w = tuple(t for t in re.split(r"[\s.]+", text) if t)
        else:
            w = tuple(text)
    if alphabet is not None:
        alphabet.check(w)
    return w


def fmt_word(w: Sequence[str]) -> str:
    if not w:
        return "eps"
    if all(len(a) == 1 for a in w):
        return "".join(w)
    return ".".join(w)


def occurrences(w: Word, text: Word) -> list:
    """Start positions of ``w`` in ``text`` (overlaps included)."""
    n = len(w)
    return [i for i in range(len(text) - n + 1) if text[i:i + n] == w]


# ---------------------------------------------------------------------------
# free group


def _free_reduce(syllables: Iterable[Syllable]) -> Tuple[Syllable, ...]:
    out: list = []
    for a, e in syllables:
        if e not in (1, -1):
            raise InputError(f"syllable sign must be +1 or -1, got {e!r}")
        if out and out[-1][0] == a and out[-1][1] == -e:
            out.pop()
        else:
            out.append((a, e))
    return tuple(out)


@dataclass(frozen=True)
class GroupWord:
    """Freely reduced element of a free group.

    Every construction path reduces, so equality of group elements is
    structural equality.
    """

    syllables: Tuple[Syllable, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", _free_reduce(self.syllables))

    @classmethod
    def positive(cls, w: Sequence[str]) -> "GroupWord":
        return cls(tuple((a, 1) for a in w))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.syllables + other.syllables)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((a, -e) for a, e in reversed(self.syllables)))

    def __pow__(self, k: int) -> "GroupWord":
        base = self if k >= 0 else self.inverse()
        out = GroupWord()
        for _ in range(abs(k)):
            out = out * base
        return out

    def __len__(self) -> int:
        return len(self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def is_positive(self) -> bool:
        return all(e == 1 for _, e in self.syllables)

    def letters(self) -> Word:
        """The underlying positive word; only meaningful when ``is_positive``."""
        return tuple(a for a, _ in self.syllables)

    def __str__(self) -> str:
        if not self.syllables:
            return "eps"
        sep = "" if all(len(a) == 1 for a, _ in self.syllables) else "."
        return sep.join(a if e == 1 else f"{a}^-1" for a, e in self.syllables)


def reduce(syllables: Iterable[Syllable], alphabet: Alphabet | None = None) -> GroupWord:
    """Freely reduce a raw syllable sequence."""
    syllables = tuple(syllables)
    if alphabet is not None:
        for a, _ in syllables:
            if a not in alphabet:
                raise InputError(f"letter {a!r} not in alphabet {alphabet.letters}")
    return GroupWord(syllables)


def parse_group_word(text: str, alphabet: Alphabet | None = None) -> GroupWord:
    """Parse ``"ab^-1c"`` (single-character letters) or ``"r1.r2^-1"``.

    Inverses are marked with a ``^-1`` suffix on the letter.
    """
    text = text.strip()
    if text in EPS_NAMES:
        return GroupWord()
    syllables = []
    if alphabet is not None and not alphabet.single_char:
        for tok in (t for t in re.split(r"[\s.]+", text) if t):
            if tok.endswith("^-1"):
                syllables.append((tok[:-3], -1))
            else:
                syllables.append((tok, 1))
    else:
        i = 0
        compact = text.replace(" ", "")
        while i < len(compact):
            a = compact[i]
            i += 1
            if compact.startswith("^-1", i):
                syllables.append((a, -1))
                i += 3
            else:
                syllables.append((a, 1))
    return reduce(syllables, alphabet)


# ---------------------------------------------------------------------------
# substitutions


@dataclass(frozen=True)
class Substitution:
    """Non-erasing monoid morphism ``domain* -> codomain*``.

    Substitutions read from files are endomorphisms (``codomain == domain``).
    Derivating substitutions map a fresh alphabet onto words of the original
    one, so the two alphabets may differ.
    """

    rules: Mapping[str, Word]
    domain: Alphabet
    codomain: Alphabet = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.codomain is None:
            object.__setattr__(self, "codomain", self.domain)
        rules = {}
        for a in self.domain:
            if a not in self.rules:
                raise InputError(f"no rule for letter {a!r}")
            image = tuple(self.rules[a])
            if not image:
                raise InputError(f"image of {a!r} is empty")
            rules[a] = self.codomain.check(image)
        extra = set(self.rules) - set(self.domain)
        if extra:
            raise InputError(f"rules for letters outside the domain: {sorted(extra)}")
        object.__setattr__(self, "rules", _FrozenRules(rules))

    @classmethod
    def from_dict(cls, rules: Mapping[str, str], name: str = "") -> "Substitution":
        """Endomorphism from ``{"a": "ab", ...}``; alphabet order is insertion order."""
        alphabet = Alphabet(tuple(rules))
        return cls({a: word(v, alphabet) for a, v in rules.items()}, alphabet, name=name)

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Substitution":
        return cls({a: (a,) for a in alphabet}, alphabet, name="id")

    def __call__(self, w) -> Word:
        return apply(self, w)

    def __getitem__(self, a: str) -> Word:
        return self.rules[a]

    @property
    def is_endomorphism(self) -> bool:
        return self.codomain == self.domain

    def power(self, k: int) -> "Substitution":
        if not self.is_endomorphism:
            raise InputError("only endomorphisms have powers")
        out = Substitution.identity(self.domain)
        for _ in range(k):
            out = compose(self, out)
        return Substitution(out.rules, self.domain, name=f"{self.name}^{k}")

    def __str__(self) -> str:
        return "\n".join(f"{a} -> {fmt_word(self.rules[a])}" for a in self.domain)


class _FrozenRules(dict):
    """Read-only dict so substitutions stay hashable and immutable."""

    def __hash__(self):
        return hash(tuple(sorted(self.items())))

    def _readonly(self, *args, **kwargs):
        raise TypeError("substitution rules are immutable")

    __setitem__ = __delitem__ = update = pop = popitem = clear = setdefault = _readonly


def apply(s: Substitution, w) -> Word:
    out: list = []
    for a in w:
        try:
            out.extend(s.rules[a])
        except KeyError:
            raise InputError(f"letter {a!r} not in domain of substitution") from None
    return tuple(out)


def apply_group(s: Substitution, g: GroupWord) -> GroupWord:
    """Image of ``g`` under the group morphism extending ``s``."""
    out: list = []
    for a, e in g.syllables:
        try:
            image = s.rules[a]
        except KeyError:
            raise InputError(f"letter {a!r} not in domain of substitution") from None
        if e == 1:
            out.extend((b, 1) for b in image)
        else:
            out.extend((b, -1) for b in reversed(image))
    return GroupWord(tuple(out))


def compose(s: Substitution, t: Substitution) -> Substitution:
    """``s ∘ t``: first ``t``, then ``s``."""
    for a in t.codomain:
        if a not in s.domain:
            raise InputError(f"letter {a!r} of the inner image is outside the outer domain")
    rules = {a: apply(s, t.rules[a]) for a in t.domain}
    name = f"{s.name}∘{t.name}" if s.name or t.name else ""
    return Substitution(rules, t.domain, s.codomain, name=name)


def is_primitive(s: Substitution) -> bool:
    """True iff some power of ``s`` maps every letter onto a word using all letters.

    Uses the Wielandt exponent ``(k-1)^2 + 1`` for a k-letter alphabet.
    """
    if not s.is_endomorphism:
        return False
    letters = s.domain.letters
    k = len(letters)
    step = {a: frozenset(s.rules[a]) for a in letters}
    reach = {a: frozenset([a]) for a in letters}
    for _ in range((k - 1) ** 2 + 1):
        reach = {a: frozenset().union(*(step[b] for b in reach[a])) for a in letters}
    full = frozenset(letters)
    return all(reach[a] == full for a in letters)


_RULE = re.compile(r"^\s*(\S)\s*->\s*(\S+)\s*$")


def parse_substitution(text: str, name: str = "") -> Substitution:
    """Parse lines ``x -> w``; ``#`` starts a comment, blank lines are skipped."""
    rules: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _RULE.match(line)
        if not m:
            raise InputError(f"line {lineno}: expected 'x -> w', got {raw!r}")
        lhs, rhs = m.groups()
        if lhs in rules:
            raise InputError(f"line {lineno}: duplicate rule for {lhs!r}")
        rules[lhs] = tuple(rhs)
    if not rules:
        raise InputError("no rules found")
    for a, image in rules.items():
        for b in image:
            if b not in rules:
                raise InputError(f"letter {b!r} in image of {a!r} has no rule")
    return Substitution(rules, Alphabet(tuple(rules)), name=name)
