"""Command-line front end.

Exit codes: 0 the checked property holds, 1 it fails (a witness is printed),
2 usage or input error, including approximations too short for the request.
"""

from __future__ import annotations

import argparse
import io
import random
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from .errors import InputError, InvariantViolation, NotABasisError, RangeError
from .freegroup import is_basis_of_free_group, stallings
from .language import LanguageApprox, complexity, dendric_report, extension_graph, generate_language
from .rauzy import rauzy_graph
from .returns import check_durand, derive, lemma2_morphism, return_words
from .tame import DEFAULT_BUDGET, tame_decompose
from .words import Alphabet, Substitution, fmt_word, parse_group_word, parse_substitution, word

FORMATS = ("text", "dot", "tsv")


@dataclass(frozen=True)
class RunConfig:
    system: Optional[str] = None
    max_len: Optional[int] = None
    bound: int = 4
    word: Optional[str] = None
    fmt: str = "text"
    budget: int = DEFAULT_BUDGET
    seed: int = 0

    def validate(self, uses_bound: bool = False) -> None:
        if self.fmt not in FORMATS:
            raise InputError(f"unknown format {self.fmt!r}")
        if self.budget < 1:
            raise InputError("--budget must be >= 1")
        if (self.max_len is not None and self.max_len < 0) or self.bound < 0:
            raise InputError("--max-len and --bound must be nonnegative")
        if uses_bound and self.max_len is not None and self.max_len < self.bound + 2:
            raise InputError(f"--max-len {self.max_len} must be >= --bound + 2 = {self.bound + 2}")


def bundled_systems() -> list:
    root = resources.files("dendric") / "systems"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".sub"))


def load_system(name: Optional[str]) -> Substitution:
    if not name:
        raise InputError("this command needs --system")
    path = Path(name)
    if path.is_file():
        return parse_substitution(path.read_text(encoding="utf-8"), name=path.stem)
    stem = name[:-4] if name.endswith(".sub") else name
    bundled = resources.files("dendric") / "systems" / f"{stem}.sub"
    if bundled.is_file():
        return parse_substitution(bundled.read_text(encoding="utf-8"), name=stem)
    raise InputError(f"no system file {name!r} (bundled: {', '.join(bundled_systems())})")


AUTO_START = 24
AUTO_CAP = 512


def _grow(cfg: RunConfig, out, body) -> int:
    """Run ``body(L, buffer)`` on a language approximation.

    With an explicit ``--max-len`` a range error is final.  Otherwise the
    length starts at 24 (or ``bound + 2``) and doubles until the body
    succeeds; output is only emitted for the successful attempt.
    """
    system = load_system(cfg.system)
    n = cfg.max_len if cfg.max_len is not None else max(AUTO_START, cfg.bound + 2)
    while True:
        buffer = io.StringIO()
        try:
            code = body(generate_language(system, max(n, 1)), buffer)
        except RangeError:
            if cfg.max_len is not None or n >= AUTO_CAP:
                raise
            n *= 2
            continue
        out.write(buffer.getvalue())
        return code


def _yes(flag: bool) -> str:
    return "true" if flag else "false"


# ---------------------------------------------------------------------------
# commands; each returns an exit code and writes to ``out``


def cmd_language(cfg: RunConfig, out) -> int:
    cfg.validate()
    n_max = cfg.max_len if cfg.max_len is not None else AUTO_START
    L = generate_language(load_system(cfg.system), max(n_max, 1))
    c = complexity(L)
    if cfg.fmt == "tsv":
        print("n\tp\ts\tb", file=out)
    for n in range(n_max + 1):
        s = c.s[n] if n < n_max else None
        b = c.b[n] if n < n_max - 1 else None
        cells = [str(n), str(c.p[n]), "-" if s is None else str(s), "-" if b is None else str(b)]
        if cfg.fmt == "tsv":
            print("\t".join(cells), file=out)
        else:
            print(f"p({n})={cells[1]} s({n})={cells[2]} b({n})={cells[3]}", file=out)
            print("  " + " ".join(fmt_word(w) for w in L.of_length(n)), file=out)
    return 0


def cmd_returns(cfg: RunConfig, out) -> int:
    cfg.validate()

    def body(L, out):
        w = word(cfg.word or "eps", L.alphabet)
        D = derive(L, w)
        for r in D.returns:
            print(fmt_word(r), file=out)
        for line in D.table():
            print(line, file=out)
        basis = is_basis_of_free_group(D.returns.group_words(), L.alphabet)
        print(f"basis: {_yes(basis)}", file=out)
        return 0

    return _grow(cfg, out, body)


def cmd_derive(cfg: RunConfig, out) -> int:
    cfg.validate()

    def body(L, out):
        D = derive(L, word(cfg.word or "eps", L.alphabet))
        if D.language.max_len < cfg.bound:
            raise RangeError(f"derived language supports length {D.language.max_len} < {cfg.bound}")
        for line in D.table():
            print(line, file=out)
        print(f"derived language up to length {cfg.bound}", file=out)
        for k in range(cfg.bound + 1):
            print(f"  {k}: " + " ".join(fmt_word(z) for z in D.language.of_length(k)), file=out)
        return 0

    return _grow(cfg, out, body)


def cmd_check_dendric(cfg: RunConfig, out) -> int:
    cfg.validate(uses_bound=True)

    def body(L, out):
        report = dendric_report(L, cfg.bound)
        if cfg.fmt == "tsv":
            print("word\tconnected\ttree\tmultiplicity", file=out)
            for r in report.rows:
                print(f"{fmt_word(r.word)}\t{_yes(r.connected)}\t{_yes(r.tree)}\t{r.multiplicity}",
                      file=out)
            return 0 if report.dendric else 1
        print(report.verdict(), file=out)
        if report.dendric:
            return 0
        g = extension_graph(L, report.witness.word)
        print(f"witness: {fmt_word(g.word)}", file=out)
        out.write(g.to_dot())
        return 1

    return _grow(cfg, out, body)


@dataclass(frozen=True)
class ReturnRow:
    word: tuple
    size: int
    basis: bool
    tame: Optional[bool]
    certificate: object


def sweep_returns(L: LanguageApprox, bound: int, budget: int, tame: bool = True) -> list:
    rows = []
    for w in L.words(bound):
        R = return_words(L, w)
        basis = is_basis_of_free_group(R.group_words(), L.alphabet)
        cert, found = None, None
        if basis and tame:
            cert = tame_decompose(R.returns, L.alphabet, budget)
            found = cert is not None
        rows.append(ReturnRow(w, len(R), basis, found, cert))
    return rows


def cmd_check_returns(cfg: RunConfig, out, cert_dir: Optional[str] = None) -> int:
    cfg.validate(uses_bound=True)

    def body(L, out):
        rows = sweep_returns(L, cfg.bound, cfg.budget)
        sep = "\t" if cfg.fmt == "tsv" else "  "
        print(sep.join(["word", "returns", "basis", "tame", "certificate"]), file=out)
        for r in rows:
            path = "-"
            if r.certificate is not None and cert_dir:
                target = Path(cert_dir) / f"{fmt_word(r.word)}.cert"
                target.parent.mkdir(parents=True, exist_ok=True)
                target.write_text(r.certificate.to_text(), encoding="utf-8")
                path = str(target)
            tame = "-" if r.tame is None else _yes(r.tame)
            print(sep.join([fmt_word(r.word), str(r.size), _yes(r.basis), tame, path]), file=out)
        bad = next((r for r in rows if not r.basis), None)
        if bad is not None:
            R = return_words(L, bad.word)
            print(f"witness: {fmt_word(bad.word)} has {bad.size} return words"
                  f" ({', '.join(R.lines())}), not a basis", file=out)
            return 1
        for r in rows:
            if r.tame is False:
                print(f"warning: no tame certificate for {fmt_word(r.word)} within budget"
                      f" {cfg.budget} (inconclusive)", file=out)
        print(f"all return sets up to length {cfg.bound} are bases", file=out)
        return 0

    return _grow(cfg, out, body)


def _sanity_sweep(L: LanguageApprox, bound: int, seed: int) -> None:
    """Seeded spot checks of the derivation identities; raises on a violation."""
    rng = random.Random(seed)
    words = L.words(bound)
    for w in rng.sample(words, min(3, len(words))):
        try:
            D = derive(L, w)
            lemma2_morphism(L, w, D)
            letter = rng.choice(D.derived_alphabet.letters)
            if not check_durand(L, w, (letter,), D).holds:
                raise InvariantViolation(f"derived return identity fails at {fmt_word(w)}")
        except RangeError:
            continue


def cmd_theorem(cfg: RunConfig, out) -> int:
    cfg.validate(uses_bound=True)

    def body(L, out):
        dendric = dendric_report(L, cfg.bound)
        rows = sweep_returns(L, cfg.bound, cfg.budget, tame=False)
        non_basis = next((r for r in rows if not r.basis), None)
        print(f"dendricity: {dendric.verdict()}", file=out)
        if non_basis is None:
            print(f"returns: all return sets up to length {cfg.bound} are bases", file=out)
        else:
            print(f"returns: {fmt_word(non_basis.word)} has a return set that is not a basis",
                  file=out)
        _sanity_sweep(L, cfg.bound, cfg.seed)
        if dendric.dendric and non_basis is None:
            print("verdict: agree (dendric, every return set a basis)", file=out)
            return 0
        if not dendric.dendric and non_basis is not None:
            print("verdict: agree (not dendric, non-basis return set found)", file=out)
            return 0
        if dendric.dendric:
            print("verdict: CONTRADICTION (dendric up to the bound, yet a return set is not a basis)",
                  file=out)
            return 1
        print("verdict: inconclusive (non-tree word found, no non-basis return set within the bound)",
              file=out)
        return 0

    return _grow(cfg, out, body)


def cmd_graph(cfg: RunConfig, out, kind: str, order: int = 1, generators: Optional[str] = None) -> int:
    cfg.validate()
    if kind == "stallings":
        if not generators:
            raise InputError("graph stallings needs --generators")
        alphabet = load_system(cfg.system).domain if cfg.system else None
        gens = [parse_group_word(t, alphabet) for t in generators.split(",")]
        if alphabet is None:
            alphabet = Alphabet(tuple(sorted({a for g in gens for a, _ in g.syllables})) or ("a",))
        out.write(stallings(gens, alphabet).to_dot())
        return 0

    def body(L, out):
        if kind == "extension":
            out.write(extension_graph(L, word(cfg.word or "eps", L.alphabet)).to_dot())
        elif kind == "rauzy":
            out.write(rauzy_graph(L, order).to_dot())
        elif kind == "derived":
            D = derive(L, word(cfg.word or "eps", L.alphabet))
            out.write(extension_graph(D.language, ()).to_dot())
        else:
            raise InputError(f"unknown graph kind {kind!r}")
        return 0

    return _grow(cfg, out, body)


def cmd_tame(cfg: RunConfig, out, generators: Optional[str] = None) -> int:
    cfg.validate()

    def decompose(W, alphabet, out):
        try:
            cert = tame_decompose(W, alphabet, cfg.budget)
        except NotABasisError as exc:
            print(f"not a basis: {exc}", file=out)
            return 1
        if cert is None:
            print(f"inconclusive: no certificate within budget {cfg.budget}", file=out)
            return 1
        out.write(cert.to_text())
        return 0

    if generators:
        alphabet = load_system(cfg.system).domain
        return decompose([word(t, alphabet) for t in generators.split(",")], alphabet, out)

    def body(L, out):
        W = list(return_words(L, word(cfg.word or "eps", L.alphabet)))
        return decompose(W, L.alphabet, out)

    return _grow(cfg, out, body)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dendric", description="Return words, extension graphs and free-group checks"
                                    " for substitutive shift spaces.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", default=None,
                        help="substitution file, or a bundled name (tribonacci, fibonacci, thuemorse)")
    common.add_argument("--max-len", type=int, default=None,
                        help="language approximation length (default: start at 24, grow as needed)")
    common.add_argument("--bound", type=int, default=4, help="word length bound for sweeps")
    common.add_argument("--word", default=None, help="a word, or 'eps' for the empty word")
    common.add_argument("--format", dest="fmt", default="text", choices=FORMATS)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="tame search node budget")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sanity sweeps")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("language", parents=[common], help="factors and complexity table")
    sub.add_parser("returns", parents=[common], help="return words to --word")
    sub.add_parser("derive", parents=[common], help="derived language along --word")
    sub.add_parser("check-dendric", parents=[common], help="are all words up to --bound dendric")
    cr = sub.add_parser("check-returns", parents=[common], help="are all return sets tame bases")
    cr.add_argument("--cert-dir", default=None, help="write tame certificates here")
    sub.add_parser("theorem", parents=[common], help="dendricity vs. return-basis harness")
    g = sub.add_parser("graph", parents=[common], help="emit a graph in DOT")
    g.add_argument("kind", choices=("extension", "rauzy", "stallings", "derived"))
    g.add_argument("--order", type=int, default=1, help="Rauzy graph order")
    g.add_argument("--generators", default=None, help="comma-separated group words, e.g. ab,ab^-1c")
    t = sub.add_parser("tame", parents=[common], help="tame certificate for a basis")
    t.add_argument("--generators", default=None, help="comma-separated positive words")
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.system, args.max_len, args.bound, args.word, args.fmt, args.budget, args.seed)
    try:
        if args.command == "language":
            return cmd_language(cfg, out)
        if args.command == "returns":
            return cmd_returns(cfg, out)
        if args.command == "derive":
            return cmd_derive(cfg, out)
        if args.command == "check-dendric":
            return cmd_check_dendric(cfg, out)
        if args.command == "check-returns":
            return cmd_check_returns(cfg, out, args.cert_dir)
        if args.command == "theorem":
            return cmd_theorem(cfg, out)
        if args.command == "graph":
            return cmd_graph(cfg, out, args.kind, args.order, args.generators)
        if args.command == "tame":
            return cmd_tame(cfg, out, args.generators)
    except (InputError, RangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"internal invariant violated:\n{exc}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
