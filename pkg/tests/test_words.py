import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dendric import InputError
from dendric.words import (Alphabet, GroupWord, Substitution, apply, apply_group, compose,
                           fmt_word, is_primitive, parse_group_word, parse_substitution, reduce,
                           word)

G = parse_group_word

syllables = st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from([1, -1])), max_size=12)


def test_reduce_examples():
    assert reduce([("a", 1), ("b", 1), ("b", -1), ("c", 1)]) == G("ac")
    assert reduce([]) == GroupWord()
    assert G("ab").inverse() * G("aba") == G("a")


def test_reduce_rejects_unknown_letter():
    with pytest.raises(InputError):
        reduce([("z", 1)], Alphabet(("a", "b")))


@given(syllables)
def test_reduce_idempotent(raw):
    once = reduce(raw)
    assert reduce(once.syllables) == once
    assert all(once.syllables[i] != (once.syllables[i + 1][0], -once.syllables[i + 1][1])
               for i in range(len(once) - 1))


def test_apply(trib):
    assert apply(trib, "a") == word("ab")
    assert apply(trib, ()) == ()
    assert apply(trib.power(2), "a") == word("abac")


def test_apply_group(trib):
    assert apply_group(trib, G("a^-1")) == G("b^-1a^-1")
    assert apply_group(trib, G("a") * G("a^-1")) == GroupWord()
    assert apply_group(trib, G("b^-1a")) == G("c^-1b")


def test_compose(trib):
    assert compose(trib, Substitution.identity(trib.domain)) == trib
    ab = Alphabet(("a", "b"))
    alpha = Substitution({"a": word("ab"), "b": word("b")}, ab)
    assert dict(compose(alpha, alpha).rules) == {"a": word("abb"), "b": word("b")}
    sq = compose(trib, trib)
    assert dict(sq.rules) == {"a": word("abac"), "b": word("aba"), "c": word("ab")}


def test_compose_alphabet_mismatch(trib, fib):
    with pytest.raises(InputError):
        compose(fib, trib)


def test_is_primitive(trib, fib):
    assert is_primitive(trib)
    assert is_primitive(fib)
    assert not is_primitive(Substitution.from_dict({"a": "aa", "b": "bb"}))
    # reducible but with a mixing letter: b never reaches a
    assert not is_primitive(Substitution.from_dict({"a": "ab", "b": "b"}))


def test_primitive_matches_brute_force_powers():
    # brute force: look for a power whose images all contain every letter
    cases = [{"a": "ab", "b": "a"}, {"a": "b", "b": "a"}, {"a": "abc", "b": "c", "c": "a"},
             {"a": "b", "b": "c", "c": "ab"}, {"a": "aa", "b": "ab"}]
    for rules in cases:
        s = Substitution.from_dict(rules)
        brute = any(all(set(apply(s.power(k), a)) == set(rules) for a in rules)
                    for k in range(1, 12))
        assert is_primitive(s) == brute, rules


rule_sets = st.fixed_dictionaries({
    a: st.text(alphabet="ab", min_size=1, max_size=3) for a in "ab"})


@settings(max_examples=50)
@given(rule_sets, rule_sets, rule_sets)
def test_compose_associative(r1, r2, r3):
    s, t, u = (Substitution.from_dict(r) for r in (r1, r2, r3))
    assert compose(compose(s, t), u) == compose(s, compose(t, u))


@given(rule_sets, syllables.map(lambda x: [(a, e) for a, e in x if a != "c"]),
       syllables.map(lambda x: [(a, e) for a, e in x if a != "c"]))
def test_apply_group_is_a_morphism(rules, x, y):
    s = Substitution.from_dict(rules)
    g, h = reduce(x), reduce(y)
    assert apply_group(s, g * h) == apply_group(s, g) * apply_group(s, h)


@given(rule_sets, st.text(alphabet="ab", max_size=8))
def test_apply_group_agrees_on_positive_words(rules, w):
    s = Substitution.from_dict(rules)
    assert apply_group(s, GroupWord.positive(tuple(w))) == GroupWord.positive(apply(s, w))


def test_parse_substitution():
    s = parse_substitution("# tribonacci\na -> ab\n\nb -> ac  # second\nc -> a\n", "t")
    assert s.domain.letters == ("a", "b", "c")
    assert s["b"] == word("ac")


@pytest.mark.parametrize("text", ["a -> ab\n", "a -> \n", "a ab\n", "a -> a\na -> b\n", "# nothing\n"])
def test_parse_substitution_errors(text):
    with pytest.raises(InputError):
        parse_substitution(text)


def test_word_and_formatting():
    assert word("eps") == ()
    assert fmt_word(()) == "eps"
    B = Alphabet(("r1", "r2"))
    assert word("r1.r2 r1", B) == ("r1", "r2", "r1")
    assert fmt_word(("r1", "r2")) == "r1.r2"
    assert str(G("ab^-1c")) == "ab^-1c"
    assert parse_group_word("r1^-1.r2", B) == GroupWord((("r1", -1), ("r2", 1)))
