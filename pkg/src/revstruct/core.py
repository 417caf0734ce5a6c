"""Names, gates and structures.

A structure is a multiset of *species*: signal species ``<a>`` and gate
species ``[a.^b > c]``.  Copies of a species are indistinguishable, so a
structure is stored as two sorted tuples of ``(species, multiplicity)``
pairs.  Sorting uses the printed form of each atom, which makes plain
equality and hashing coincide with multiset equality.
"""

from __future__ import annotations

import re
import sys
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Union

from .errors import BadMultiplicity, EmptyGate

NAME_PATTERN = re.compile(r"[a-z][a-zA-Z0-9_]*")

Name = str


def name(text: str) -> Name:
    """Validate and intern a signal name."""
    if not isinstance(text, str) or NAME_PATTERN.fullmatch(text) is None:
        raise ValueError(f"invalid name {text!r}")
    return sys.intern(text)


@dataclass(frozen=True)
class Gate:
    """A gate species: inputs, outputs and a traversal marker.

    Positions ``0 .. marker-1`` of the concatenated sequence
    ``inputs + outputs`` have been traversed.
    """

    inputs: tuple[Name, ...]
    outputs: tuple[Name, ...]
    marker: int = 0

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(name(a) for a in self.inputs))
        object.__setattr__(self, "outputs", tuple(name(a) for a in self.outputs))
        if not self.inputs and not self.outputs:
            raise EmptyGate()
        if not 0 <= self.marker <= len(self.inputs) + len(self.outputs):
            raise ValueError(f"marker {self.marker} out of range for {self.skeleton}")

    @property
    def arity(self) -> int:
        return len(self.inputs) + len(self.outputs)

    @property
    def skeleton(self) -> tuple[tuple[Name, ...], tuple[Name, ...]]:
        return (self.inputs, self.outputs)

    def at(self, marker: int) -> Gate:
        return Gate(self.inputs, self.outputs, marker)

    def position_name(self, pos: int) -> Name:
        n = len(self.inputs)
        return self.inputs[pos] if pos < n else self.outputs[pos - n]

    @cached_property
    def text(self) -> str:
        n, k = len(self.inputs), self.marker
        ins = list(self.inputs)
        outs = list(self.outputs)
        if k < n:
            ins[k] = "^" + ins[k]
        elif k - n < len(outs):
            outs[k - n] = "^" + outs[k - n]
        else:
            outs.append("^")
        tail = ".".join(outs)
        if tail.endswith(".^"):
            tail = tail[:-2] + "^"
        return "[" + ".".join(ins) + " > " + tail + "]"

    def __str__(self) -> str:
        return self.text

    def __lt__(self, other: Gate) -> bool:
        return self.text < other.text


Term = Union[Name, Gate]


def term_text(term: Term) -> str:
    return term.text if isinstance(term, Gate) else f"<{term}>"


@dataclass(frozen=True)
class Structure:
    """Canonical multiset of signal and gate species."""

    signals: tuple[tuple[Name, int], ...] = ()
    gates: tuple[tuple[Gate, int], ...] = ()

    @classmethod
    def from_counts(cls, signals: Mapping[Name, int], gates: Mapping[Gate, int]) -> Structure:
        """Build from count maps, dropping zero entries.  Counts must be >= 0."""
        sig = sorted(((a, c) for a, c in signals.items() if c), key=lambda p: p[0])
        gat = sorted(((g, c) for g, c in gates.items() if c), key=lambda p: p[0].text)
        for _, c in sig + gat:
            if c < 0:
                raise BadMultiplicity(c)
        return cls(tuple(sig), tuple(gat))

    @cached_property
    def signal_counts(self) -> dict[Name, int]:
        return dict(self.signals)

    @cached_property
    def gate_counts(self) -> dict[Gate, int]:
        return dict(self.gates)

    def signal(self, a: Name) -> int:
        return self.signal_counts.get(a, 0)

    def gate(self, g: Gate) -> int:
        return self.gate_counts.get(g, 0)

    def names(self) -> set[Name]:
        out = set(self.signal_counts)
        for g in self.gate_counts:
            out.update(g.inputs)
            out.update(g.outputs)
        return out

    def skeletons(self) -> Counter:
        out: Counter = Counter()
        for g, c in self.gates:
            out[g.skeleton] += c
        return out

    def terms(self) -> list[tuple[Term, int]]:
        """All species in canonical (printed-form) order."""
        return sorted([*self.signals, *self.gates], key=lambda p: term_text(p[0]))

    def union(self, other: Structure) -> Structure:
        sig = Counter(self.signal_counts)
        sig.update(other.signal_counts)
        gat = Counter(self.gate_counts)
        gat.update(other.gate_counts)
        return Structure.from_counts(sig, gat)

    def __or__(self, other: Structure) -> Structure:
        return self.union(other)

    def __bool__(self) -> bool:
        return bool(self.signals or self.gates)

    def __str__(self) -> str:
        parts = []
        for term, count in self.terms():
            text = term_text(term)
            parts.append(text if count == 1 else f"{count}*{text}")
        return " | ".join(parts)


EMPTY = Structure()


def canonicalize(raw: Iterable[tuple[Term, int]]) -> Structure:
    """Merge a list of ``(term, multiplicity)`` pairs into a canonical structure.

    A term is either a signal name or a :class:`Gate`.
    """
    signals: Counter = Counter()
    gates: Counter = Counter()
    for term, count in raw:
        if count < 1:
            raise BadMultiplicity(count)
        if isinstance(term, Gate):
            gates[term] += count
        else:
            signals[name(term)] += count
    return Structure.from_counts(signals, gates)


def resource_count(s: Structure) -> Counter:
    """Per-name conserved quantity: free + held + not-yet-emitted occurrences.

    Names that do not occur map to 0 (the result is a Counter).
    """
    m: Counter = Counter(s.signal_counts)
    for g, c in s.gates:
        n, k = len(g.inputs), g.marker
        for a in g.inputs[:k]:
            m[a] += c
        for a in g.outputs[max(k - n, 0):]:
            m[a] += c
    return m


def structure_size(s: Structure) -> int:
    return sum(c for _, c in s.signals) + sum(c * (g.arity + 1) for g, c in s.gates)
