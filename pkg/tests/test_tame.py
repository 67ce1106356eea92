import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dendric import InputError, NotABasisError
from dendric.freegroup import is_basis_of_free_group
from dendric.tame import (TameCertificate, alpha, alpha_tilde, apply_move, parse_certificate,
                          permutation, tame_decompose, verify_certificate)
from dendric.words import Alphabet, word

ABC = Alphabet(("a", "b", "c"))
AB = Alphabet(("a", "b"))


def W(*texts):
    return [word(t) for t in texts]


def test_apply_move():
    V = tuple(W("a", "b", "c"))
    assert apply_move(V, alpha("a", "b"), ABC) == tuple(W("ab", "b", "c"))
    assert apply_move(V, alpha_tilde("a", "b"), ABC) == tuple(W("ba", "b", "c"))
    assert apply_move(V, permutation("bca"), ABC) == tuple(W("b", "c", "a"))
    with pytest.raises(InputError):
        apply_move(V, permutation("aab"), ABC)
    with pytest.raises(InputError):
        alpha("a", "a")


def test_example_basis_is_tame():
    fam = W("ab", "aba", "abac")
    cert = tame_decompose(fam, ABC)
    assert cert is not None
    assert set(cert.replay()) == set(fam)
    assert verify_certificate(cert, fam, ABC)
    assert all(is_basis_of_free_group(V, ABC) for V in cert.steps())


def test_alphabet_needs_no_moves():
    cert = tame_decompose(W("a", "b", "c"), ABC)
    assert cert.moves == ()
    cert = tame_decompose(W("c", "a", "b"), ABC)
    assert all(mv.kind == "perm" for mv in cert.moves)


def test_not_a_basis():
    with pytest.raises(NotABasisError):
        tame_decompose(W("ab", "ba"), AB)


def test_verify_rejects_wrong_family():
    cert = tame_decompose(W("ab", "b"), AB)
    assert not verify_certificate(cert, W("ba", "b"), AB)
    assert not verify_certificate(TameCertificate(ABC, ()), W("ab", "b"), AB)


def test_text_round_trip():
    fam = W("ab", "aba", "abac")
    cert = tame_decompose(fam, ABC)
    again = parse_certificate(cert.to_text(), ABC)
    assert again == cert
    assert verify_certificate(again, fam, ABC)
    with pytest.raises(InputError):
        parse_certificate("beta a b\n", ABC)


def test_tiny_budget_is_inconclusive():
    assert tame_decompose(W("ab", "aba", "abac"), ABC, budget=1) is None


moves = st.lists(st.tuples(st.sampled_from(["alpha", "alphatilde"]),
                           st.sampled_from("abc"), st.sampled_from("abc")).filter(lambda m: m[1] != m[2]),
                 max_size=6)


@settings(max_examples=60, deadline=None)
@given(moves, st.permutations("abc"))
def test_generated_tame_bases_are_recovered(seq, perm):
    V = tuple((a,) for a in perm)
    for kind, a, b in seq:
        V = apply_move(V, alpha(a, b) if kind == "alpha" else alpha_tilde(a, b), ABC)
    assert is_basis_of_free_group(V, ABC)
    cert = tame_decompose(V, ABC)
    assert cert is not None and verify_certificate(cert, V, ABC)
