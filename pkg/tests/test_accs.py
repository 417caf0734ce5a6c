import pytest

from revstruct.accs import (
    INITIAL,
    NIL,
    Encoding,
    Input,
    Link,
    MemoryEntry,
    Output,
    Par,
    check_linear,
    correspondence_check,
    encode,
    parse_process,
    print_process,
    quiescent,
    rccs_initial,
    rccs_step,
)
from revstruct.coherence import is_coherent
from revstruct.core import Gate, canonicalize
from revstruct.errors import Inconclusive, NotLinear, SourceError
from revstruct.suites import linear_processes
from revstruct.syntax import parse_structure as S

P = parse_process


def test_parse_examples():
    assert P("a! | a?.b!") == Par((Output("a"), Input("a", Output("b"))))
    assert P("a?.(b! | c?.d!)") == Input("a", Par((Output("b"), Input("c", Output("d")))))
    with pytest.raises(SourceError):
        P("a?.")


def test_parse_canonical_par():
    assert P("b! | (0 | a!)") == P("a! | b!")
    assert P("0 | 0") == NIL
    assert P("a?.b! | c!") == P("c! | (a?.b!)")


@pytest.mark.parametrize("text", ["0", "a!", "a?.0", "a! | b?.(c! | d?.e!)", "a?.b?.c?.0"])
def test_process_round_trip(text):
    p = P(text)
    assert P(print_process(p)) == p


def test_nonlinear():
    with pytest.raises(NotLinear) as err:
        encode(P("a?.b! | a?.c!"))
    assert err.value.name == "a"
    with pytest.raises(NotLinear):
        check_linear(P("b! | a?.b!"))
    with pytest.raises(NotLinear):
        correspondence_check(P("a?.b! | a?.c!"))


def test_rccs_step_forward_then_back():
    start = rccs_initial(P("a! | a?.b!"))
    assert start.particles == (("a", INITIAL),)
    [(label, after)] = rccs_step(start)
    assert label == "fwd a"
    assert after.particles == (("b", 0),)
    [th] = after.threads
    [entry] = th.memory
    assert isinstance(entry, MemoryEntry) and entry.key == 0 and entry.consumed_origin == INITIAL
    [(back_label, back)] = rccs_step(after)
    assert back_label == "bwd a" and back == start


def test_rccs_no_particle_no_step():
    assert rccs_step(rccs_initial(P("a?.b!"))) == []


def test_rccs_child_threads_block_undo():
    c = rccs_initial(P("a! | c! | a?.(b! | c?.d!)"))
    [(_, c1)] = rccs_step(c)
    child = [t for t in c1.threads if t.memory == (Link(0),)]
    assert len(child) == 1
    [fwd_c] = [y for lbl, y in rccs_step(c1) if lbl == "fwd c"]
    # the parent's entry is no longer on top of a pristine child
    labels = [lbl for lbl, _ in rccs_step(fwd_c)]
    assert labels == ["bwd c"]


def test_rccs_keys_renumbered_structurally():
    # two independent events fired in either order give the same configuration
    c = rccs_initial(P("a! | b! | a?.c! | b?.d!"))
    paths = set()
    for _, x in rccs_step(c):
        for lbl, y in rccs_step(x):
            if lbl.startswith("fwd"):
                paths.add(y)
    assert len(paths) == 1


def test_encode_examples():
    assert encode(P("a?.b!")).structure == S("[^a > b]")
    assert encode(P("a! | a?.0")).structure == S("<a> | [^a > ]")
    enc = encode(P("a?.(b! | c?.d!)"))
    assert enc.structure == S("[^a > t0.b] | [^t0.c > d]")
    assert enc.triggers == {"t0"} and enc.source_names == {"a", "b", "c", "d"}
    assert enc.trigger_map == (("t0", "c"),)


def test_trigger_names_skip_source_names():
    enc = encode(P("t0! | a?.(t1?.0 | b?.0)"))
    assert enc.triggers.isdisjoint(enc.source_names)
    assert enc.triggers == {"t2", "t3"}


def test_encode_nested_innermost_first():
    enc = encode(P("a?.b?.c?.0"))
    assert enc.structure == S("[^a > t1] | [^t1.b > t0] | [^t0.c > ]")


def test_correspondence_examples():
    report = correspondence_check(P("a! | a?.b!"))
    assert report.passed
    assert report.observables_rccs == report.observables_encoding == {("a",), ("b",)}
    assert correspondence_check(P("a! | a?.(b! | c?.d!) | c!")).passed


def test_correspondence_detects_broken_encoding():
    p = P("a! | a?.(b! | c?.d!) | c!")
    good = encode(p)
    # drop the guard so the nested input can fire before its parent
    broken = canonicalize([(Gate(("a",), ("t0", "b")), 1), (Gate(("c",), ("d",)), 1), ("a", 1), ("c", 1)])
    report = correspondence_check(p, encoding=Encoding(broken, good.triggers, good.source_names))
    assert not report.passed and "observable sets differ" in report.failures


def test_correspondence_inconclusive():
    with pytest.raises(Inconclusive):
        correspondence_check(P("a! | b! | c! | a?.d! | b?.e! | c?.f!"), max_states=3)


def test_quiescent():
    assert quiescent(S("[^a > b] | [a > b^]"))
    assert not quiescent(S("[a > ^b]"))


@pytest.mark.slow
def test_encodings_coherent_for_suite():
    for p in linear_processes():
        assert is_coherent(encode(p).structure), p.text


def test_rccs_loop_lemma_small_suite():
    for p in linear_processes(2, 2)[:300]:
        seen, todo = {rccs_initial(p)}, [rccs_initial(p)]
        while todo:
            x = todo.pop()
            for lbl, y in rccs_step(x):
                if lbl.startswith("fwd"):
                    assert any(z == x for l2, z in rccs_step(y) if l2 == "bwd" + lbl[3:])
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
