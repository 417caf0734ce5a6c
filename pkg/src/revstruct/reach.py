"""Reachability between structures.

``reachable_coherent`` decides coherent instances by undoing everything
and then replaying forward toward the target's markers; the hot loops
live in the kernel modules.  ``reachable_bfs`` is the explicit-state
oracle for arbitrary structures.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from . import kernel as kernels
from .coherence import is_coherent
from .core import Structure, resource_count
from .errors import Inconclusive, MalformedQuery
from .semantics import BWD, FWD, StepLabel, Trace, apply_step, enabled_steps


@dataclass(frozen=True)
class ReachStats:
    explored: int
    elapsed: float


@dataclass(frozen=True)
class ReachAnswer:
    reachable: bool
    witness: Optional[Trace] = None
    stats: ReachStats = field(default=ReachStats(0, 0.0), compare=False)

    def __bool__(self) -> bool:
        return self.reachable


def _check_query(source: Structure, target: Structure) -> None:
    for role, s in (("source", source), ("target", target)):
        report = is_coherent(s)
        if not report.coherent:
            detail = "; ".join(str(v) for v in report.violations)
            raise MalformedQuery(f"{role} is not coherent: {detail}")
    if source.skeletons() != target.skeletons():
        raise MalformedQuery("source and target have different gate sets")


def reachable_coherent(
    source: Structure,
    target: Structure,
    witness: bool = True,
    kernel: str | None = None,
) -> ReachAnswer:
    """Decide reachability between coherent structures over the same gates.

    Raises MalformedQuery for incoherent inputs or mismatched gate sets.
    """
    began = time.perf_counter()
    _check_query(source, target)
    if resource_count(source) != resource_count(target):
        return ReachAnswer(False, None, ReachStats(0, time.perf_counter() - began))

    k = kernels.get(kernel)
    gates = [g for g, _ in source.gates]
    index = {}
    for g in gates:
        for a in g.inputs + g.outputs:
            index.setdefault(a, len(index))
    for a, _ in source.signals + target.signals:
        index.setdefault(a, len(index))
    seq, start, nin, length = [], [], [], []
    for g in gates:
        start.append(len(seq))
        nin.append(len(g.inputs))
        length.append(g.arity)
        seq.extend(index[a] for a in g.inputs + g.outputs)
    goal = {g.skeleton: g.marker for g, _ in target.gates}
    wanted = [goal[g.skeleton] for g in gates]
    free = [0] * len(index)
    for a, c in source.signals:
        free[index[a]] = c
    want_free = [0] * len(index)
    for a, c in target.signals:
        want_free[index[a]] = c

    buf = kernels.buffer
    seq_b, start_b, nin_b, length_b = (buf(x, k) for x in (seq, start, nin, length))
    markers = buf((g.marker for g in gates), k)
    signals = buf(free, k)
    back = k.backward_phase(seq_b, start_b, nin_b, length_b, markers, signals)
    ahead = k.forward_phase(seq_b, start_b, nin_b, length_b, markers, signals, buf(wanted, k))
    ok = list(markers) == wanted and list(signals) == want_free
    stats = ReachStats(len(back) + len(ahead), time.perf_counter() - began)
    if not (ok and witness):
        return ReachAnswer(ok, None, stats)
    steps = [StepLabel(gates[g].at(m), BWD) for g, m in back]
    steps += [StepLabel(gates[g].at(m), FWD) for g, m in ahead]
    return ReachAnswer(True, Trace(source, tuple(steps)), stats)


def explore(source: Structure, max_states: int, stop: Optional[Structure] = None):
    """Breadth-first exploration in canonical label order.

    Returns a map from each discovered state to ``(previous state, label)``
    (None for the source).  Raises Inconclusive when more than
    ``max_states`` states would be needed.  Exploration halts early once
    ``stop`` is discovered.
    """
    if max_states < 1:
        raise ValueError("max_states must be >= 1")
    parents: dict = {source: None}
    queue = deque([source])
    while queue:
        if stop is not None and stop in parents:
            return parents
        state = queue.popleft()
        for t in enabled_steps(state):
            nxt = apply_step(state, t)
            if nxt in parents:
                continue
            if nxt == stop:
                parents[nxt] = (state, t)
                return parents
            if len(parents) >= max_states:
                raise Inconclusive(max_states, len(parents))
            parents[nxt] = (state, t)
            queue.append(nxt)
    return parents


def _path(parents: dict, state: Structure) -> list[StepLabel]:
    steps = []
    while parents[state] is not None:
        state, t = parents[state]
        steps.append(t)
    steps.reverse()
    return steps


def reachable_bfs(
    source: Structure,
    target: Structure,
    max_states: int = 10_000,
    witness: bool = True,
) -> ReachAnswer:
    """Explicit-state search; a shortest witness when reachable.

    Raises Inconclusive when the bound is hit before a verdict.
    """
    began = time.perf_counter()
    parents = explore(source, max_states, stop=target)
    stats = ReachStats(len(parents), time.perf_counter() - began)
    if target not in parents:
        return ReachAnswer(False, None, stats)
    trace = Trace(source, tuple(_path(parents, target))) if witness else None
    return ReachAnswer(True, trace, stats)

