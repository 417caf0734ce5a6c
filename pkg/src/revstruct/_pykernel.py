"""Pure-Python reachability kernels (fallback for the compiled ``_ckernel``).

Gates are flattened into integer arrays: gate ``g`` occupies
``seq[start[g] : start[g] + length[g]]`` and its first ``nin[g]`` entries
are inputs.  ``signals`` holds free counts per name id.  Both phases
mutate ``markers`` and ``signals`` in place and return the steps taken as
``(gate, marker_before)`` pairs.
"""


def backward_phase(seq, start, nin, length, markers, signals):
    steps = []
    gates = len(markers)
    while True:
        for g in range(gates):
            k = markers[g]
            if k == 0:
                continue
            if k <= nin[g]:
                signals[seq[start[g] + k - 1]] += 1
            else:
                a = seq[start[g] + k - 1]
                if signals[a] < 1:
                    continue
                signals[a] -= 1
            markers[g] = k - 1
            steps.append((g, k))
            break
        else:
            return steps


def forward_phase(seq, start, nin, length, markers, signals, target):
    steps = []
    gates = len(markers)
    while True:
        for g in range(gates):
            k = markers[g]
            if k >= target[g]:
                continue
            a = seq[start[g] + k]
            if k < nin[g]:
                if signals[a] < 1:
                    continue
                signals[a] -= 1
            else:
                signals[a] += 1
            markers[g] = k + 1
            steps.append((g, k))
            break
        else:
            return steps
