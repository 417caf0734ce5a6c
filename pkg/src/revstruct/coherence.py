"""Coherence: every term occurs once, and every name has at most one
source and at most one consumer."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Union

from .core import Gate, Name, Structure, resource_count
from .semantics import apply_step, enabled_steps

DUPLICATE_GATE = "duplicate-gate"
DUPLICATE_SIGNAL = "duplicate-signal"
MULTI_SOURCE = "multi-source"
MULTI_CONSUMER = "multi-consumer"


@dataclass(frozen=True)
class Violation:
    subject: Union[Name, Gate]
    kind: str
    count: int

    def __str__(self) -> str:
        subject = self.subject.text if isinstance(self.subject, Gate) else self.subject
        return f"{subject}: {self.kind} ({self.count})"


@dataclass(frozen=True)
class CoherenceReport:
    violations: tuple[Violation, ...] = field(default=())

    @property
    def coherent(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.coherent


def is_coherent(s: Structure) -> CoherenceReport:
    """Check all coherence conditions in one pass and report every violation.

    Gates are compared by skeleton (inputs and outputs, ignoring the
    marker): two copies of one gate at different markers are a duplicate.
    A name is multi-source when its resource count exceeds one or when it
    appears in more than one output position.
    """
    violations: list[Violation] = []
    skeletons: dict = {}
    consumers: Counter = Counter()
    producers: Counter = Counter()
    for g, c in s.gates:
        first, total = skeletons.get(g.skeleton, (g, 0))
        skeletons[g.skeleton] = (first, total + c)
        for a in g.inputs:
            consumers[a] += c
        for a in g.outputs:
            producers[a] += c
    for first, total in skeletons.values():
        if total > 1:
            violations.append(Violation(first, DUPLICATE_GATE, total))
    counts = resource_count(s)
    per_name: dict[Name, list[Violation]] = {}
    for a, c in s.signals:
        if c > 1:
            per_name.setdefault(a, []).append(Violation(a, DUPLICATE_SIGNAL, c))
    for a in set(counts) | set(producers):
        worst = max(counts[a], producers[a])
        if worst > 1:
            per_name.setdefault(a, []).append(Violation(a, MULTI_SOURCE, worst))
    for a, c in consumers.items():
        if c > 1:
            per_name.setdefault(a, []).append(Violation(a, MULTI_CONSUMER, c))
    for a in sorted(per_name):
        violations.extend(per_name[a])
    return CoherenceReport(tuple(violations))


def check_preservation(s: Structure, depth: int) -> bool:
    """Every state within ``depth`` steps of ``s`` (either direction) is coherent."""
    seen = {s}
    frontier = deque([(s, 0)])
    while frontier:
        state, d = frontier.popleft()
        if not is_coherent(state):
            return False
        if d == depth:
            continue
        for t in enabled_steps(state):
            nxt = apply_step(state, t)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append((nxt, d + 1))
    return True
