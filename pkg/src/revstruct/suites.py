"""Instance generators: random structures and traces, exhaustive coherent
bases, linear processes, and the chain family used for scaling runs."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .accs import NIL, Input, Output, Process, par
from .coherence import is_coherent
from .core import Gate, Structure, canonicalize, structure_size
from .semantics import Policy, Trace, run

ALPHABET = "abcde"


# -- random -------------------------------------------------------------------


def random_structure(rng: random.Random, max_size: int = 20, names: str = "abcd",
                     max_gates: int = 3, max_len: int = 2) -> Structure:
    """A random structure of size at most ``max_size`` (markers anywhere)."""
    while True:
        raw = []
        for _ in range(rng.randint(0, max_gates)):
            n, m = rng.randint(0, max_len), rng.randint(0, max_len)
            if n + m == 0:
                continue
            ins = tuple(rng.choice(names) for _ in range(n))
            outs = tuple(rng.choice(names) for _ in range(m))
            raw.append((Gate(ins, outs, rng.randint(0, n + m)), rng.choice((1, 1, 1, 2))))
        for _ in range(rng.randint(0, 4)):
            raw.append((rng.choice(names), rng.randint(1, 2)))
        s = canonicalize(raw)
        if structure_size(s) <= max_size:
            return s


def random_coherent_structure(rng: random.Random, names: str = ALPHABET,
                              max_gates: int = 3, max_len: int = 2) -> Structure:
    """A coherent base (markers 0) advanced by a short random walk."""
    pool = list(names)
    while True:
        consumers = rng.sample(pool, len(pool))
        producers = rng.sample(pool, len(pool))
        raw = []
        for _ in range(rng.randint(1, max_gates)):
            n, m = rng.randint(0, max_len), rng.randint(0, max_len)
            if n + m == 0 or n > len(consumers) or m > len(producers):
                continue
            ins = tuple(consumers.pop() for _ in range(n))
            outs = tuple(producers.pop() for _ in range(m))
            raw.append((Gate(ins, outs), 1))
        for a in sorted(producers):
            if rng.random() < 0.5:
                raw.append((a, 1))
        if not raw:
            continue
        s = canonicalize(raw)
        if is_coherent(s):
            break
    walk = run(s, Policy("random", seed=rng.getrandbits(32)), rng.randint(0, 6))
    return walk.info["final"]


def random_trace(rng: random.Random, s: Structure, max_len: int = 12) -> Trace:
    t = run(s, Policy("random", seed=rng.getrandbits(32)), rng.randint(0, max_len))
    return Trace(t.init, t.steps)


# -- exhaustive coherent bases ------------------------------------------------


def _canonical_skeletons(gates) -> tuple:
    best = None
    for perm in itertools.permutations(gates):
        rename: dict = {}
        out = []
        for ins, outs in perm:
            new = []
            for seq in (ins, outs):
                part = []
                for a in seq:
                    if a not in rename:
                        rename[a] = ALPHABET[len(rename)]
                    part.append(rename[a])
                new.append(tuple(part))
            out.append(tuple(new))
        key = tuple(sorted(out))
        if best is None or key < best:
            best = key
    return best


def _restricted_growth(length: int, alphabet: str) -> Iterator[list[str]]:
    """Name sequences where each new name is the next unused letter."""

    def go(i, used, acc):
        if i == length:
            yield acc
            return
        for j in range(min(used + 1, len(alphabet))):
            yield from go(i + 1, max(used, j + 1), acc + [alphabet[j]])

    yield from go(0, 0, [])


def coherent_skeleton_sets(max_gates: int = 3, max_len: int = 2,
                           alphabet: str = ALPHABET) -> list[tuple]:
    """All gate skeleton sets (up to renaming) with unique consumers and producers."""
    shapes = [(n, m) for n in range(max_len + 1) for m in range(max_len + 1) if n + m]
    found = set()
    for k in range(1, max_gates + 1):
        for combo in itertools.combinations_with_replacement(shapes, k):
            total = sum(n + m for n, m in combo)
            for names in _restricted_growth(total, alphabet):
                gates, i = [], 0
                for n, m in combo:
                    gates.append((tuple(names[i:i + n]), tuple(names[i + n:i + n + m])))
                    i += n + m
                cons = [a for g in gates for a in g[0]]
                prods = [a for g in gates for a in g[1]]
                if len(cons) != len(set(cons)) or len(prods) != len(set(prods)):
                    continue
                found.add(_canonical_skeletons(gates))
    return sorted(found)


def coherent_bases(skeletons: tuple) -> list[Structure]:
    """Every coherent all-markers-zero structure over a skeleton set.

    Free signals range over subsets of gate names that have no producer.
    """
    names = sorted({a for ins, outs in skeletons for a in ins + outs})
    produced = {a for _, outs in skeletons for a in outs}
    candidates = [a for a in names if a not in produced]
    gates = [(Gate(ins, outs), 1) for ins, outs in skeletons]
    out = []
    for r in range(len(candidates) + 1):
        for free in itertools.combinations(candidates, r):
            s = canonicalize(gates + [(a, 1) for a in free])
            if is_coherent(s):
                out.append(s)
    return out


# -- linear processes -----------------------------------------------------------


def _forests(inputs: int, outputs: int) -> list[tuple]:
    """Shapes with exactly the given prefix counts; trees are 'O' or ('I', forest)."""
    memo: dict = {}

    def trees(i, o):
        res = []
        if i == 0 and o == 1:
            res.append("O")
        if i >= 1:
            res.extend(("I", f) for f in forests(i - 1, o))
        return res

    def forests(i, o):
        if (i, o) in memo:
            return memo[(i, o)]
        res = set()
        if i == 0 and o == 0:
            res.add(())
        for ti in range(i + 1):
            for to in range(o + 1):
                if ti + to == 0:
                    continue
                for t in trees(ti, to):
                    for rest in forests(i - ti, o - to):
                        res.add(tuple(sorted((t,) + rest, key=repr)))
        memo[(i, o)] = sorted(res, key=repr)
        return memo[(i, o)]

    return forests(inputs, outputs)


def _slots(forest) -> list[str]:
    out = []
    for t in forest:
        if t == "O":
            out.append("!")
        else:
            out.append("?")
            out.extend(_slots(t[1]))
    return out


def _build(forest, names: Iterator[str]) -> Process:
    items = []
    for t in forest:
        if t == "O":
            items.append(Output(next(names)))
        else:
            a = next(names)
            items.append(Input(a, _build(t[1], names)))
    return par(*items) if items else NIL


def linear_processes(max_inputs: int = 3, max_outputs: int = 3,
                     alphabet: str = ALPHABET) -> list[Process]:
    """All linear processes within the bounds, deduplicated by printed form.

    Names are assigned in restricted-growth order, which removes most
    renaming duplicates.
    """
    seen = {}
    for i in range(max_inputs + 1):
        for o in range(max_outputs + 1):
            for forest in _forests(i, o):
                slots = _slots(forest)
                for names in _restricted_growth(len(slots), alphabet):
                    ins = [a for a, k in zip(names, slots) if k == "?"]
                    outs = [a for a, k in zip(names, slots) if k == "!"]
                    if len(set(ins)) != len(ins) or len(set(outs)) != len(outs):
                        continue
                    p = _build(forest, iter(names))
                    seen.setdefault(p.text, p)
    return [seen[k] for k in sorted(seen)]


# -- chain family ----------------------------------------------------------------


def chain(n: int) -> tuple[Structure, Structure]:
    """``n`` relay gates ``[^t_i > t_{i+1}]``.

    Source: the first half has fired and ``<t_{n//2}>`` is free.
    Target: every gate has fired and ``<t_n>`` is free.
    """
    half = n // 2
    names = [f"t{i}" for i in range(n + 1)]
    src = [(Gate((names[i],), (names[i + 1],), 2 if i < half else 0), 1) for i in range(n)]
    dst = [(Gate((names[i],), (names[i + 1],), 2), 1) for i in range(n)]
    return canonicalize(src + [(names[half], 1)]), canonicalize(dst + [(names[n], 1)])
