import itertools

import pytest

from revstruct.errors import Inconclusive, MalformedQuery
from revstruct.reach import explore, reachable_bfs, reachable_coherent
from revstruct.suites import chain, coherent_bases
from revstruct.syntax import parse_structure as S


def test_join_reachable(join_start, join_done):
    answer = reachable_coherent(join_start, join_done)
    assert answer.reachable and len(answer.witness) == 3
    assert all(t.direction == "fwd" for t in answer.witness.steps)
    assert answer.witness.final == join_done


def test_backward_phase_alone():
    answer = reachable_coherent(S("[a.^b>c]"), S("<a>|[^a.b>c]"))
    assert answer.reachable and answer.witness.final == S("<a>|[^a.b>c]")
    assert all(t.direction == "bwd" for t in answer.witness.steps)


def test_conservation_blocks():
    source, target = S("<a>|[^a.b>c]"), S("<c>|[a.b>c^]")
    assert not reachable_coherent(source, target).reachable
    assert not reachable_bfs(source, target).reachable


def test_malformed_queries():
    with pytest.raises(MalformedQuery):
        reachable_coherent(S("2*<a>|[^a>b]"), S("2*<a>|[^a>b]"))
    with pytest.raises(MalformedQuery):
        reachable_coherent(S("<a>|[^a>b]"), S("<a>|[^a>c]"))


def test_bfs_examples(join_start, join_done):
    answer = reachable_bfs(join_start, join_done, 10_000)
    assert answer.reachable and len(answer.witness) == 3
    no = reachable_bfs(S("<a>"), S("<b>"), 10_000)
    assert not no.reachable and no.stats.explored == 1
    same = reachable_bfs(join_start, join_start)
    assert same.reachable and len(same.witness) == 0


def test_bfs_inconclusive():
    # four independent relays give 3**4 states
    s = S("<a>|<b>|<c>|<d>|[^a>e]|[^b>f]|[^c>g]|[^d>h]")
    with pytest.raises(Inconclusive) as err:
        reachable_bfs(s, S("<a>"), 50)
    assert err.value.bound == 50
    assert len(explore(s, 81)) == 81


def test_bfs_shortest_and_deterministic():
    s = S("<a>|<c>|[^a>b]|[^c>d]")
    t = S("<b>|<d>|[a>b^]|[c>d^]")
    one = reachable_bfs(s, t)
    two = reachable_bfs(s, t)
    assert len(one.witness) == 4 and one.witness == two.witness


def test_coherent_agrees_with_oracle_on_small_family():
    sk = ((("a",), ("b",)), (("b",), ("c",)))
    states = []
    for base in coherent_bases(sk):
        states.extend(explore(base, 10_000))
    for x, y in itertools.product(states, repeat=2):
        fast = reachable_coherent(x, y)
        slow = reachable_bfs(x, y)
        assert fast.reachable == slow.reachable
        assert reachable_coherent(y, x).reachable == fast.reachable
        if fast.reachable:
            assert fast.witness.final == y


def test_cyclic_gates_deadlocked_state():
    # each gate holds what the other needs to reabsorb: the state is its own component
    stuck = S("[x > y^] | [y > x^]")
    assert reachable_coherent(stuck, stuck).reachable
    assert not reachable_coherent(stuck, S("[^x > y] | [^y > x]")).reachable
    assert not reachable_bfs(stuck, S("[^x > y] | [^y > x]")).reachable


@pytest.mark.parametrize("n", [2, 3, 10])
def test_chain_reachable(n):
    source, target = chain(n)
    answer = reachable_coherent(source, target)
    assert answer.reachable and answer.witness.final == target
    if n <= 3:
        assert reachable_bfs(source, target).reachable
