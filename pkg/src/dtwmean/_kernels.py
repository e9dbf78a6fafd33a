"""Numba kernels for the hot loops: DTW dynamic programming and solver epochs.

All kernels are serial with a fixed k-order so results are bitwise
reproducible regardless of thread settings. Costs are accumulated as
squared Euclidean errors; square roots are taken by callers only when a
distance (rather than dtw^2) is needed.

Backtrace tie-break: when several predecessors attain the minimum, prefer
diagonal, then vertical (i-1), then horizontal (j-1). This makes every
alignment-based computation deterministic.
"""

import numba as nb
import numpy as np


@nb.njit(cache=True)
def squared_cost_matrix(x, y):
    """Accumulated squared-cost DP table for series x (m, d) and y (n, d)."""
    m = x.shape[0]
    n = y.shape[0]
    d = x.shape[1]
    table = np.empty((m, n), dtype=np.float64)
    for i in range(m):
        for j in range(n):
            c = 0.0
            for a in range(d):
                diff = x[i, a] - y[j, a]
                c += diff * diff
            if i == 0 and j == 0:
                acc = 0.0
            elif i == 0:
                acc = table[0, j - 1]
            elif j == 0:
                acc = table[i - 1, 0]
            else:
                acc = table[i - 1, j - 1]
                if table[i - 1, j] < acc:
                    acc = table[i - 1, j]
                if table[i, j - 1] < acc:
                    acc = table[i, j - 1]
            table[i, j] = c + acc
    return table


@nb.njit(cache=True)
def dtw_squared(x, y):
    """Squared DTW distance between x (m, d) and y (n, d)."""
    return squared_cost_matrix(x, y)[-1, -1]


@nb.njit(cache=True)
def backtrace(table):
    """Optimal path through a DP table as 0-based index arrays (ii, jj)."""
    m, n = table.shape
    cap = m + n - 1
    ii = np.empty(cap, dtype=np.int64)
    jj = np.empty(cap, dtype=np.int64)
    i = m - 1
    j = n - 1
    pos = cap
    while True:
        pos -= 1
        ii[pos] = i
        jj[pos] = j
        if i == 0 and j == 0:
            break
        if i == 0:
            j -= 1
        elif j == 0:
            i -= 1
        else:
            best = table[i - 1, j - 1]
            ni = i - 1
            nj = j - 1
            if table[i - 1, j] < best:
                best = table[i - 1, j]
                ni = i - 1
                nj = j
            if table[i, j - 1] < best:
                ni = i
                nj = j - 1
            i = ni
            j = nj
    return ii[pos:], jj[pos:]


@nb.njit(cache=True)
def batch_eval(z, data, lengths):
    """dtw^2(z, x_k) for every series in a packed sample; returns cost vector."""
    count = lengths.shape[0]
    costs = np.empty(count, dtype=np.float64)
    for k in range(count):
        costs[k] = squared_cost_matrix(z, data[k, : lengths[k], :])[-1, -1]
    return costs


@nb.njit(cache=True)
def batch_align(z, data, lengths):
    """Optimal alignment of z against every sample series.

    Returns (costs, valence_sum, warped_sum): the per-series squared
    alignment costs, the summed valence vector sum_k diag(V_k), and the
    summed warped series sum_k W_k x_k.
    """
    count = lengths.shape[0]
    n = z.shape[0]
    d = z.shape[1]
    costs = np.empty(count, dtype=np.float64)
    valence_sum = np.zeros(n, dtype=np.float64)
    warped_sum = np.zeros((n, d), dtype=np.float64)
    for k in range(count):
        xk = data[k, : lengths[k], :]
        table = squared_cost_matrix(z, xk)
        ii, jj = backtrace(table)
        for l in range(ii.shape[0]):
            valence_sum[ii[l]] += 1.0
            for a in range(d):
                warped_sum[ii[l], a] += xk[jj[l], a]
        costs[k] = table[-1, -1]
    return costs, valence_sum, warped_sum


@nb.njit(cache=True)
def step_size(t, n_sched, eta0, eta1):
    """Step at iteration t >= 1: linear decay over the first n_sched steps, then eta1."""
    if t >= n_sched:
        return eta1
    return eta0 - t * (eta0 - eta1) / n_sched


@nb.njit(cache=True)
def ssg_epoch(z, data, lengths, order, t_start, n_sched, eta0, eta1):
    """One stochastic epoch: single-series updates z <- z - eta (V_k z - W_k x_k).

    Mutates z in place and returns the advanced iteration counter.
    """
    n = z.shape[0]
    d = z.shape[1]
    t = t_start
    for idx in range(order.shape[0]):
        k = order[idx]
        xk = data[k, : lengths[k], :]
        table = squared_cost_matrix(z, xk)
        ii, jj = backtrace(table)
        t += 1
        eta = step_size(t, n_sched, eta0, eta1)
        grad = np.zeros((n, d), dtype=np.float64)
        for l in range(ii.shape[0]):
            i = ii[l]
            j = jj[l]
            for a in range(d):
                grad[i, a] += z[i, a] - xk[j, a]
        for i in range(n):
            for a in range(d):
                z[i, a] -= eta * grad[i, a]
    return t
