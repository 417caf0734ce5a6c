"""Species-level reduction engine.

Four rule schemas, for a gate ``g`` with ``n`` inputs, ``m`` outputs and
marker ``k``:

=============  ==================  =====================================
step           enabled when        effect
=============  ==================  =====================================
fwd-input      k < n, <inputs[k]>  consume ``inputs[k]``, marker k+1
fwd-output     n <= k < n+m        emit ``outputs[k-n]``, marker k+1
bwd-input      0 < k <= n          release ``inputs[k-1]``, marker k-1
bwd-output     n < k, <out>        reabsorb ``outputs[k-1-n]``, marker k-1
=============  ==================  =====================================
"""

from __future__ import annotations

import enum
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional, Sequence

from .core import Gate, Name, Structure
from .errors import NotEnabled


class Direction(str, enum.Enum):
    FWD = "fwd"
    BWD = "bwd"

    def __str__(self) -> str:
        return self.value


FWD = Direction.FWD
BWD = Direction.BWD


@dataclass(frozen=True)
class StepLabel:
    """One reduction event: the gate species before the step and a direction."""

    gate: Gate
    direction: Direction

    def __post_init__(self):
        object.__setattr__(self, "direction", Direction(self.direction))
        k = self.gate.marker
        if self.direction is FWD and k >= self.gate.arity:
            raise ValueError(f"no forward step from fully traversed {self.gate}")
        if self.direction is BWD and k == 0:
            raise ValueError(f"no backward step from untraversed {self.gate}")

    @property
    def position(self) -> int:
        """Index of the sequence position this step crosses."""
        k = self.gate.marker
        return k if self.direction is FWD else k - 1

    @property
    def kind(self) -> str:
        return "input" if self.position < len(self.gate.inputs) else "output"

    @property
    def touched_name(self) -> Name:
        return self.gate.position_name(self.position)

    @property
    def gate_after(self) -> Gate:
        delta = 1 if self.direction is FWD else -1
        return self.gate.at(self.gate.marker + delta)

    @cached_property
    def text(self) -> str:
        return f"{self.direction.value} {self.gate.text}"

    def __str__(self) -> str:
        return self.text

    def __lt__(self, other: StepLabel) -> bool:
        return self.text < other.text


def fwd(gate: Gate) -> StepLabel:
    return StepLabel(gate, FWD)


def bwd(gate: Gate) -> StepLabel:
    return StepLabel(gate, BWD)


def converse(t: StepLabel) -> StepLabel:
    """The step that undoes ``t``."""
    other = BWD if t.direction is FWD else FWD
    return StepLabel(t.gate_after, other)


def _signal_need(t: StepLabel) -> Optional[Name]:
    """The free signal ``t`` consumes, if any."""
    if t.direction is FWD:
        return t.touched_name if t.kind == "input" else None
    return t.touched_name if t.kind == "output" else None


def is_enabled(s: Structure, t: StepLabel) -> bool:
    if s.gate(t.gate) < 1:
        return False
    need = _signal_need(t)
    return need is None or s.signal(need) >= 1


def _gate_steps(s: Structure, g: Gate):
    n, k = len(g.inputs), g.marker
    if k < g.arity and (k >= n or s.signal(g.inputs[k]) >= 1):
        yield StepLabel(g, FWD)
    if k > 0 and (k <= n or s.signal(g.outputs[k - 1 - n]) >= 1):
        yield StepLabel(g, BWD)


def enabled_steps(s: Structure) -> list[StepLabel]:
    """All enabled labels, sorted in canonical (printed-form) order."""
    labels = [t for g, _ in s.gates for t in _gate_steps(s, g)]
    labels.sort(key=lambda t: t.text)
    return labels


def apply_step(s: Structure, t: StepLabel) -> Structure:
    if s.gate(t.gate) < 1:
        raise NotEnabled(f"gate {t.gate} not present")
    signals = Counter(s.signal_counts)
    a = t.touched_name
    consumes = _signal_need(t) is not None
    if consumes:
        if signals[a] < 1:
            raise NotEnabled(f"signal <{a}> not present for {t}")
        signals[a] -= 1
    else:
        signals[a] += 1
    gates = dict(s.gate_counts)
    gates[t.gate] -= 1
    after = t.gate_after
    gates[after] = gates.get(after, 0) + 1
    return Structure.from_counts(signals, gates)


@dataclass(frozen=True)
class Trace:
    """An initial structure and a sequence of step labels.

    ``info`` carries run metadata (stop reason, diagnostics) and is ignored
    by equality.
    """

    init: Structure
    steps: tuple[StepLabel, ...] = ()
    info: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def states(self) -> list[Structure]:
        """Replay; raises NotEnabled with the 1-based index of a dead step."""
        out = [self.init]
        for i, t in enumerate(self.steps, start=1):
            try:
                out.append(apply_step(out[-1], t))
            except NotEnabled as exc:
                raise NotEnabled(exc.reason, i) from None
        return out

    @property
    def final(self) -> Structure:
        state = self.init
        for t in self.steps:
            state = apply_step(state, t)
        return state

    def replays(self) -> bool:
        try:
            self.states()
        except NotEnabled:
            return False
        return True

    def with_steps(self, steps: Sequence[StepLabel], **info) -> Trace:
        return Trace(self.init, tuple(steps), info)

    def __str__(self) -> str:
        from .syntax import print_trace

        return print_trace(self)


def backward_normal_form(s: Structure) -> tuple[Structure, Trace]:
    """Apply the least enabled backward step until none is left."""
    state = s
    steps = []
    while True:
        back = [t for t in enabled_steps(state) if t.direction is BWD]
        if not back:
            return state, Trace(s, tuple(steps))
        state = apply_step(state, back[0])
        steps.append(back[0])


Chooser = Callable[[Structure, list], Optional[int]]


@dataclass(frozen=True)
class Policy:
    """How ``run`` picks among enabled steps.

    ``kind`` is one of ``first``, ``random``, ``forward``, ``backward`` or
    ``interactive``.  The interactive chooser receives the state and the
    candidate labels and returns an index, or None to stop.
    """

    kind: str = "first"
    seed: int = 0
    chooser: Optional[Chooser] = field(default=None, compare=False)

    KINDS = ("first", "random", "forward", "backward", "interactive")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown policy {self.kind!r}")
        if self.kind == "interactive" and self.chooser is None:
            raise ValueError("interactive policy needs a chooser")

    @classmethod
    def parse(cls, text: str, chooser: Optional[Chooser] = None) -> Policy:
        """Parse ``first``, ``random:SEED``, ``forward``, ``backward``, ``interactive``."""
        aliases = {"forward_only": "forward", "backward_only": "backward"}
        head, _, arg = text.partition(":")
        head = aliases.get(head, head)
        if head == "random":
            return cls("random", seed=int(arg or 0))
        if arg:
            raise ValueError(f"policy {head!r} takes no argument")
        return cls(head, chooser=chooser)


def run(s: Structure, policy: Policy, fuel: int) -> Trace:
    """Apply up to ``fuel`` steps; ``info['stop']`` is ``fuel``, ``stuck`` or ``user``."""
    if fuel < 0:
        raise ValueError("fuel must be >= 0")
    rng = random.Random(policy.seed) if policy.kind == "random" else None
    state = s
    steps = []
    stop = "fuel"
    while len(steps) < fuel:
        labels = enabled_steps(state)
        if policy.kind == "forward":
            labels = [t for t in labels if t.direction is FWD]
        elif policy.kind == "backward":
            labels = [t for t in labels if t.direction is BWD]
        if not labels:
            stop = "stuck"
            break
        if rng is not None:
            choice = labels[rng.randrange(len(labels))]
        elif policy.kind == "interactive":
            index = policy.chooser(state, labels)
            if index is None:
                stop = "user"
                break
            choice = labels[index]
        else:
            choice = labels[0]
        state = apply_step(state, choice)
        steps.append(choice)
    return Trace(s, tuple(steps), {"stop": stop, "final": state})
