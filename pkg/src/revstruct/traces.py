"""Trace algebra: swaps of independent steps, converse cancellation,
standardization and permutation equivalence."""

from __future__ import annotations

from collections import Counter, deque

from .errors import NotConverse, NotEnabled, NotEnabledAfterSwap, NotIndependent, TraceTooLong
from .semantics import BWD, FWD, StepLabel, Trace, apply_step, converse, is_enabled

__all__ = [
    "Trace",
    "independent",
    "swap_adjacent",
    "cancel_converse",
    "standardize",
    "perm_equiv",
    "DEFAULT_BOUND",
]

DEFAULT_BOUND = 12


def independent(t1: StepLabel, t2: StepLabel) -> bool:
    """Syntactic independence: different gate species and different names.

    Two steps touching the same signal name never commute, whether or not
    enough copies are around to serve both.
    """
    return t1.gate != t2.gate and t1.touched_name != t2.touched_name


def _check_index(tr: Trace, i: int) -> None:
    if not 0 <= i < len(tr.steps) - 1:
        raise IndexError(f"no adjacent pair at index {i} in a trace of length {len(tr.steps)}")


def _swapped(state, t1: StepLabel, t2: StepLabel, expected_final):
    """Run ``t2`` then ``t1`` from ``state``; return the final state or raise."""
    if not is_enabled(state, t2):
        raise NotEnabledAfterSwap(f"{t2} is not enabled before {t1}")
    middle = apply_step(state, t2)
    if not is_enabled(middle, t1):
        raise NotEnabledAfterSwap(f"{t1} is not enabled after {t2}")
    final = apply_step(middle, t1)
    if final != expected_final:
        raise NotEnabledAfterSwap(f"swapping {t1} and {t2} changes the resulting state")
    return final


def swap_adjacent(tr: Trace, i: int) -> Trace:
    _check_index(tr, i)
    t1, t2 = tr.steps[i], tr.steps[i + 1]
    if not independent(t1, t2):
        raise NotIndependent(f"{t1} and {t2} are not independent")
    states = tr.states()
    _swapped(states[i], t1, t2, states[i + 2])
    steps = list(tr.steps)
    steps[i], steps[i + 1] = t2, t1
    return tr.with_steps(steps)


def cancel_converse(tr: Trace, i: int) -> Trace:
    _check_index(tr, i)
    if tr.steps[i + 1] != converse(tr.steps[i]):
        raise NotConverse(f"{tr.steps[i + 1]} does not undo {tr.steps[i]}")
    return tr.with_steps(tr.steps[:i] + tr.steps[i + 2:])


def standardize(tr: Trace) -> Trace:
    """Push backward steps left and cancel converse pairs.

    Leftmost cancellation is always preferred; otherwise the leftmost
    independent ``fwd``/``bwd`` adjacency is swapped.  Adjacencies that are
    neither are left in place and listed (by index) in ``info['stuck']``.
    """
    steps = list(tr.steps)
    states = tr.states()
    while True:
        for i in range(len(steps) - 1):
            if steps[i + 1] == converse(steps[i]):
                del steps[i:i + 2]
                del states[i + 1:i + 3]
                break
        else:
            for i in range(len(steps) - 1):
                t1, t2 = steps[i], steps[i + 1]
                if t1.direction is not FWD or t2.direction is not BWD or not independent(t1, t2):
                    continue
                try:
                    _swapped(states[i], t1, t2, states[i + 2])
                except NotEnabledAfterSwap:
                    continue
                steps[i], steps[i + 1] = t2, t1
                states[i + 1] = apply_step(states[i], t2)
                break
            else:
                break
    stuck = [
        i for i in range(len(steps) - 1)
        if steps[i].direction is FWD and steps[i + 1].direction is BWD
    ]
    return tr.with_steps(steps, stuck=stuck)


def is_standard_shape(tr: Trace) -> bool:
    """True iff the trace is some backward steps followed by forward steps."""
    seen_fwd = False
    for t in tr.steps:
        if t.direction is FWD:
            seen_fwd = True
        elif seen_fwd:
            return False
    return True


def _neighbours(init, steps: tuple):
    tr = Trace(init, steps)
    for i in range(len(steps) - 1):
        try:
            yield swap_adjacent(tr, i).steps
        except (NotIndependent, NotEnabledAfterSwap):
            continue


def perm_equiv(tr1: Trace, tr2: Trace, bound: int = DEFAULT_BOUND) -> bool:
    """Whether ``tr2`` is obtained from ``tr1`` by swapping adjacent independent steps."""
    for tr in (tr1, tr2):
        if len(tr.steps) > bound:
            raise TraceTooLong(len(tr.steps), bound)
    if tr1.init != tr2.init:
        return False
    if Counter(tr1.steps) != Counter(tr2.steps):
        return False
    for tr in (tr1, tr2):
        if not tr.replays():
            raise NotEnabled("trace does not replay")
    goal = tr2.steps
    seen = {tr1.steps}
    queue = deque([tr1.steps])
    while queue:
        steps = queue.popleft()
        if steps == goal:
            return True
        for nxt in _neighbours(tr1.init, steps):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False
