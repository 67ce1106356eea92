import pytest

from dendric import InputError, RangeError, generate_language
from dendric.freegroup import contains
from dendric.language import complexity
from dendric.rauzy import check_prop4, path_label, rauzy_graph, rauzy_group
from dendric.returns import return_words
from dendric.words import word


def edge_strs(G):
    return {("".join(u), a, "".join(v)) for u, a, v in G.edges}


def test_fibonacci_order_one(L_fib):
    G = rauzy_graph(L_fib, 1)
    assert edge_strs(G) == {("a", "a", "a"), ("a", "a", "b"), ("b", "b", "a")}


def test_tribonacci_small_orders(L_trib):
    assert len(rauzy_graph(L_trib, 1).edges) == 5
    G0 = rauzy_graph(L_trib, 0)
    assert G0.vertices == ((),)
    assert edge_strs(G0) == {("", a, "") for a in "abc"}


@pytest.mark.parametrize("L", ["L_trib", "L_fib", "L_tm"])
def test_edge_count_is_complexity(L, request):
    L = request.getfixturevalue(L)
    p = complexity(L).p
    for m in range(8):
        assert len(rauzy_graph(L, m).edges) == p[m + 1]


def test_rauzy_range(trib):
    L = generate_language(trib, 4)
    rauzy_graph(L, 3)
    with pytest.raises(RangeError):
        rauzy_graph(L, 4)
    with pytest.raises(InputError):
        rauzy_group(rauzy_graph(L, 2), "bb")


@pytest.mark.parametrize("L", ["L_fib", "L_tm"])
def test_rauzy_group_is_full(L, request):
    L = request.getfixturevalue(L)
    H = rauzy_group(rauzy_graph(L, 1), "a")
    assert H.graph.is_rose() and not H.restricted


def test_returns_lie_in_rauzy_group(L_trib):
    for m in (1, 2, 3):
        G = rauzy_graph(L_trib, m)
        for v in G.vertices:
            H = rauzy_group(G, v)
            for r in return_words(L_trib, v).group_words():
                assert contains(H.graph, r)


def closed_walks(G, base, depth):
    out = []

    def walk(v, path):
        if path and v == base:
            out.append(list(path))
        if len(path) == depth:
            return
        for e in G.out_edges(v):
            path.append(e)
            walk(e[2], path)
            path.pop()

    walk(base, [])
    return out


def test_closed_path_labels_are_members(L_tm):
    G = rauzy_graph(L_tm, 2)
    base = word("ab")
    H = rauzy_group(G, base)
    walks = closed_walks(G, base, 7)
    assert walks
    for p in walks:
        assert contains(H.graph, path_label(p))


def test_dot(L_fib):
    dot = rauzy_graph(L_fib, 1).to_dot()
    assert dot.startswith('digraph "rauzy_1" {')
    assert '"a" -> "b" [label="a"];' in dot


@pytest.mark.parametrize("w", ["a", "b", "ab"])
def test_free_returns_tribonacci(L_trib, w):
    rep = check_prop4(L_trib, w)
    assert rep.free and rep.witness is not None
    assert rep.connected and rep.derived_returns_full and rep.rauzy_group_full
    assert rep.status == "verified"
    assert rep.lines()[-1] == "status: verified"


def test_free_returns_fibonacci_empty_word(L_fib):
    assert check_prop4(L_fib, ()).status == "verified"


def test_free_returns_thue_morse_not_established(L_tm):
    rep = check_prop4(L_tm, "a")
    assert not rep.free and rep.status == "hypotheses not established"
