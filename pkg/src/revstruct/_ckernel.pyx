# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled reachability kernels; same contract as ``_pykernel``."""


def backward_phase(long long[:] seq, long long[:] start, long long[:] nin,
                   long long[:] length, long long[:] markers, long long[:] signals):
    cdef Py_ssize_t g, gates = markers.shape[0]
    cdef long long k, a
    cdef bint moved
    steps = []
    while True:
        moved = False
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
            moved = True
            break
        if not moved:
            return steps


def forward_phase(long long[:] seq, long long[:] start, long long[:] nin,
                  long long[:] length, long long[:] markers, long long[:] signals,
                  long long[:] target):
    cdef Py_ssize_t g, gates = markers.shape[0]
    cdef long long k, a
    cdef bint moved
    steps = []
    while True:
        moved = False
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
            moved = True
            break
        if not moved:
            return steps
