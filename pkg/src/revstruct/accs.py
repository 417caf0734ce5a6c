"""Asynchronous CCS: terms, an RCCS-style reference interpreter with
memories, the compiler into coherent structures, and a correspondence
harness comparing the two state spaces."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

from .coherence import is_coherent
from .core import Gate, Structure, canonicalize, resource_count
from .errors import Inconclusive, NotLinear
from .semantics import apply_step, converse, enabled_steps
from .syntax import Scanner

# -- terms ------------------------------------------------------------------


@dataclass(frozen=True)
class Nil:
    @property
    def text(self) -> str:
        return "0"

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Output:
    name: str

    @property
    def text(self) -> str:
        return f"{self.name}!"

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Input:
    name: str
    cont: "Process"

    @cached_property
    def text(self) -> str:
        body = self.cont.text
        if isinstance(self.cont, Par):
            body = f"({body})"
        return f"{self.name}?.{body}"

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Par:
    items: tuple

    @cached_property
    def text(self) -> str:
        return " | ".join(p.text for p in self.items)

    def __str__(self) -> str:
        return self.text


Process = Union[Nil, Output, Input, Par]
NIL = Nil()


def par(*procs: Process) -> Process:
    """Flattened, sorted parallel composition with Nil absorbed."""
    items = []
    for p in procs:
        if isinstance(p, Par):
            items.extend(p.items)
        elif not isinstance(p, Nil):
            items.append(p)
    if not items:
        return NIL
    if len(items) == 1:
        return items[0]
    return Par(tuple(sorted(items, key=lambda p: p.text)))


def components(p: Process) -> tuple:
    if isinstance(p, Par):
        return p.items
    return () if isinstance(p, Nil) else (p,)


def _prefix(sc: Scanner) -> Process:
    ch = sc.peek()
    if ch == "0":
        sc.pos += 1
        return NIL
    if ch == "(":
        sc.pos += 1
        p = _proc(sc)
        sc.expect(")")
        return p
    if ch and ch.islower():
        a = sc.name()
        if sc.accept("!"):
            return Output(a)
        if sc.accept("?"):
            sc.expect(".")
            return Input(a, _prefix(sc))
        found = sc.peek() or "end of input"
        raise sc.error(f"unexpected {found!r}", {"'!'", "'?'"})
    found = ch or "end of input"
    raise sc.error(f"unexpected {found!r}", {"'0'", "'('", "name"})


def _proc(sc: Scanner) -> Process:
    items = [_prefix(sc)]
    while sc.accept("|"):
        items.append(_prefix(sc))
    return par(*items)


def parse_process(text: str) -> Process:
    sc = Scanner(text)
    p = _proc(sc)
    if not sc.at_end():
        raise sc.error(f"unexpected {sc.peek()!r}", {"'|'", "end of input"})
    return p


def print_process(p: Process) -> str:
    return p.text


def _prefixes(p: Process):
    """Yield ('?', name) and ('!', name) for every prefix in ``p``."""
    for q in components(p):
        if isinstance(q, Output):
            yield "!", q.name
        else:
            yield "?", q.name
            yield from _prefixes(q.cont)


def check_linear(p: Process) -> None:
    counts = Counter(_prefixes(p))
    bad = sorted(a for (_, a), c in counts.items() if c > 1)
    if bad:
        raise NotLinear(bad[0])


def free_names(p: Process) -> set[str]:
    return {a for _, a in _prefixes(p)}


# -- RCCS-mini ---------------------------------------------------------------

INITIAL = -1


@dataclass(frozen=True)
class Link:
    """Bottom memory entry of a thread spawned by event ``key``."""

    key: int

    def __str__(self) -> str:
        return f"<{self.key}>"


@dataclass(frozen=True)
class MemoryEntry:
    key: int
    action: str
    consumed_origin: int
    process: Input
    minted_particles: tuple[str, ...]
    minted_threads: tuple[Process, ...]

    def __str__(self) -> str:
        return f"{{{self.key}:{self.action}@{self.consumed_origin}:{self.process.text}}}"


@dataclass(frozen=True)
class Thread:
    memory: tuple
    process: Process

    def __str__(self) -> str:
        return "".join(str(e) for e in self.memory) + " : " + self.process.text

    @property
    def top(self):
        return self.memory[-1] if self.memory else None


@dataclass(frozen=True)
class RCCSConfig:
    """Particles ``(name, origin)`` and threads, both as sorted tuples.

    Values built through :func:`normalize` have event keys renumbered so
    that configurations differing only in key choice compare equal.
    """

    particles: tuple[tuple[str, int], ...]
    threads: tuple[Thread, ...]
    next_key: int = 0

    def observable(self) -> tuple[str, ...]:
        return tuple(sorted(a for a, _ in self.particles))

    def __str__(self) -> str:
        parts = [f"{a}!@{o}" for a, o in self.particles]
        parts += [f"[{t}]" for t in self.threads]
        return " | ".join(parts)


def _spawn(q: Process, key: int):
    particles, threads = [], []
    for c in components(q):
        if isinstance(c, Output):
            particles.append((c.name, key))
        else:
            threads.append(c)
    return particles, threads


def normalize(particles, threads) -> RCCSConfig:
    """Renumber event keys structurally and sort.

    An event's signature is the signature of the thread that performed it
    (its spawning event and original process) plus the signature of the
    event whose particle it consumed, so the numbering does not depend on
    the interleaving that created the events.
    """
    owner = {}
    for th in threads:
        for e in th.memory:
            if isinstance(e, MemoryEntry):
                owner[e.key] = (th, e)
    memo: dict = {}

    def thread_sig(th: Thread):
        parent = event_sig(th.memory[0].key) if th.memory and isinstance(th.memory[0], Link) else ()
        entries = [e for e in th.memory if isinstance(e, MemoryEntry)]
        original = entries[0].process if entries else th.process
        return (parent, original.text)

    def event_sig(key: int):
        if key == INITIAL:
            return ()
        if key not in memo:
            th, e = owner[key]
            memo[key] = (thread_sig(th), e.action, event_sig(e.consumed_origin))
        return memo[key]

    order = sorted(owner, key=lambda k: (event_sig(k), k))
    renum = {old: new for new, old in enumerate(order)}
    renum[INITIAL] = INITIAL

    def entry(e):
        if isinstance(e, Link):
            return Link(renum[e.key])
        return MemoryEntry(renum[e.key], e.action, renum[e.consumed_origin], e.process,
                           e.minted_particles, e.minted_threads)

    new_particles = tuple(sorted((a, renum[o]) for a, o in particles))
    new_threads = tuple(sorted((Thread(tuple(entry(e) for e in th.memory), th.process)
                                for th in threads), key=str))
    return RCCSConfig(new_particles, new_threads, len(order))


def rccs_initial(p: Process) -> RCCSConfig:
    particles, inputs = _spawn(p, INITIAL)
    return normalize(particles, [Thread((), q) for q in inputs])


def rccs_step(c: RCCSConfig) -> list[tuple[str, RCCSConfig]]:
    """All forward and backward transitions, labelled ``fwd a`` / ``bwd a``."""
    out = []
    particles = Counter(c.particles)
    threads = Counter(c.threads)
    for th in threads:
        proc = th.process
        if isinstance(proc, Input):
            for (a, origin) in particles:
                if a != proc.name:
                    continue
                key = c.next_key
                outs, ins = _spawn(proc.cont, key)
                e = MemoryEntry(key, a, origin, proc, tuple(b for b, _ in outs), tuple(ins))
                ps = particles.copy()
                ps[(a, origin)] -= 1
                ps.update(outs)
                ts = threads.copy()
                ts[th] -= 1
                ts[Thread(th.memory + (e,), NIL)] += 1
                ts.update(Thread((Link(key),), q) for q in ins)
                out.append((f"fwd {a}", normalize(list(ps.elements()), list(ts.elements()))))
        e = th.top
        if isinstance(e, MemoryEntry):
            need_p = Counter((b, e.key) for b in e.minted_particles)
            need_t = Counter(Thread((Link(e.key),), q) for q in e.minted_threads)
            if all(particles[x] >= n for x, n in need_p.items()) and all(
                threads[x] >= n for x, n in need_t.items()
            ):
                ps = particles - need_p
                ps[(e.action, e.consumed_origin)] += 1
                ts = threads - need_t
                ts[th] -= 1
                ts[Thread(th.memory[:-1], e.process)] += 1
                out.append((f"bwd {e.action}", normalize(list(ps.elements()), list(ts.elements()))))
    out.sort(key=lambda p: (p[0], str(p[1])))
    return out


# -- encoding ----------------------------------------------------------------


@dataclass(frozen=True)
class Encoding:
    structure: Structure
    triggers: frozenset
    source_names: frozenset
    trigger_map: tuple = ()

    def observable(self, s: Structure) -> tuple[str, ...]:
        return tuple(sorted(a for a, c in s.signals if a in self.source_names for _ in range(c)))


def encode(p: Process) -> Encoding:
    """Compile a linear asynchronous process into a coherent structure.

    ``a?.P`` becomes one gate consuming ``a`` (after its guard trigger, if
    nested) that emits a fresh trigger per input prefix at the top of
    ``P`` followed by the outputs of ``P``.  Triggers are numbered
    innermost-first, left to right.
    """
    check_linear(p)
    source = frozenset(free_names(p))
    trigger: dict[str, str] = {}
    counter = [0]

    def fresh() -> str:
        while f"t{counter[0]}" in source:
            counter[0] += 1
        t = f"t{counter[0]}"
        counter[0] += 1
        return t

    def allocate(q: Input) -> None:
        for c in components(q.cont):
            if isinstance(c, Input):
                allocate(c)
                trigger[c.name] = fresh()

    raw = []

    def emit(q: Input, guard: tuple) -> None:
        parts = components(q.cont)
        outs = tuple(c.name for c in parts if isinstance(c, Output))
        nested = [c for c in parts if isinstance(c, Input)]
        trigs = tuple(trigger[c.name] for c in nested)
        raw.append((Gate(guard + (q.name,), trigs + outs), 1))
        for c in nested:
            emit(c, (trigger[c.name],))

    for q in components(p):
        if isinstance(q, Output):
            raw.append((q.name, 1))
        else:
            allocate(q)
            emit(q, ())
    structure = canonicalize(raw)
    tmap = tuple(sorted((t, a) for a, t in trigger.items()))
    return Encoding(structure, frozenset(trigger.values()), source, tmap)


# -- correspondence ------------------------------------------------------------


@dataclass
class CorrespondenceReport:
    passed: bool
    observables_rccs: set = field(default_factory=set)
    observables_encoding: set = field(default_factory=set)
    states_rccs: int = 0
    states_encoding: int = 0
    failures: list = field(default_factory=list)


def _explore(start, successors, max_states: int):
    edges: dict = {start: []}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for label, y in successors(x):
            edges[x].append((label, y))
            if y not in edges:
                if len(edges) >= max_states:
                    raise Inconclusive(max_states, len(edges))
                edges[y] = []
                queue.append(y)
    return edges


def _reaches_start(edges: dict, start) -> bool:
    back: dict = {x: [] for x in edges}
    for x, out in edges.items():
        for _, y in out:
            back[y].append(x)
    seen = {start}
    queue = deque([start])
    while queue:
        for x in back[queue.popleft()]:
            if x not in seen:
                seen.add(x)
                queue.append(x)
    return len(seen) == len(edges)


def _structure_successors(s: Structure):
    return [(t, apply_step(s, t)) for t in enabled_steps(s)]


def quiescent(s: Structure) -> bool:
    """No gate is part-way through its sequence."""
    return all(g.marker in (0, g.arity) for g, _ in s.gates)


def correspondence_check(p: Process, max_states: int = 10_000,
                         encoding: Encoding | None = None) -> CorrespondenceReport:
    """Compare the RCCS-mini state space of ``p`` with that of ``encode(p)``.

    Observables are free source-name signals; on the structure side only
    quiescent states count, since a gate part-way through its sequence
    stands for an RCCS event that has not happened atomically yet.
    Raises Inconclusive when either exploration exceeds ``max_states``.
    A precomputed ``encoding`` may be supplied in place of ``encode(p)``.
    """
    enc = encoding if encoding is not None else encode(p)
    report = CorrespondenceReport(False)
    start1 = rccs_initial(p)
    g1 = _explore(start1, rccs_step, max_states)
    start2 = enc.structure
    g2 = _explore(start2, _structure_successors, max_states)
    report.states_rccs, report.states_encoding = len(g1), len(g2)
    report.observables_rccs = {x.observable() for x in g1}
    report.observables_encoding = {enc.observable(y) for y in g2 if quiescent(y)}
    if report.observables_rccs != report.observables_encoding:
        report.failures.append("observable sets differ")
    for side, graph, start in (("rccs", g1, start1), ("encoding", g2, start2)):
        if not _reaches_start(graph, start):
            report.failures.append(f"{side}: initial state not reachable from every state")
    for x, out in g1.items():
        for label, y in out:
            if label.startswith("fwd") and not any(z == x for _, z in g1[y]):
                report.failures.append(f"rccs: no undo for {label} from {x}")
    for x, out in g2.items():
        for t, y in out:
            if (converse(t), x) not in g2[y]:
                report.failures.append(f"encoding: no converse for {t} from {x}")
    for y in g2:
        m = resource_count(y)
        if any(m[t] > 1 for t in enc.triggers):
            report.failures.append(f"encoding: trigger duplicated in {y}")
        if not is_coherent(y):
            report.failures.append(f"encoding: incoherent state {y}")
    report.passed = not report.failures
    return report
