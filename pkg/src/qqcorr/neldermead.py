"""Lockstep batched Nelder-Mead minimizer.

Runs one simplex per starting point and advances all of them together, so a
vectorized objective is evaluated on whole batches instead of point by point.
Standard reflection/expansion/contraction/shrink rules with the classic
coefficients (1, 2, 1/2, 1/2).
"""

from __future__ import annotations

import numpy as np

_ALPHA, _GAMMA, _RHO, _SIGMA = 1.0, 2.0, 0.5, 0.5


def minimize_batch(fun, x0, *, step=0.25, xatol=1e-7, fatol=1e-13, max_iter=500):
    """Minimize fun over a batch of independent simplexes.

    fun must map an (k, n) array of points to (k,) values.  x0 is (m, n): one
    starting point per simplex.  Returns (xbest, fbest) with shapes (m, n) and
    (m,).  A simplex freezes once its value spread is below fatol and its
    vertex spread below xatol; iteration stops when all are frozen or after
    max_iter rounds.  Fully deterministic.
    """
    x0 = np.atleast_2d(np.asarray(x0, dtype=float))
    m, n = x0.shape
    simplex = np.repeat(x0[:, None, :], n + 1, axis=1)
    for i in range(n):
        simplex[:, i + 1, i] += step
    fvals = fun(simplex.reshape(-1, n)).reshape(m, n + 1)

    for _ in range(max_iter):
        order = np.argsort(fvals, axis=1)
        fvals = np.take_along_axis(fvals, order, axis=1)
        simplex = np.take_along_axis(simplex, order[:, :, None], axis=1)

        fspread = fvals[:, -1] - fvals[:, 0]
        xspread = np.max(np.abs(simplex - simplex[:, :1, :]), axis=(1, 2))
        active = (fspread > fatol) | (xspread > xatol)
        if not active.any():
            break

        centroid = simplex[:, :-1, :].mean(axis=1)
        worst = simplex[:, -1, :]
        xr = centroid + _ALPHA * (centroid - worst)
        fr = fun(xr)

        better_best = fr < fvals[:, 0]
        below_worst = fr < fvals[:, -1]
        second = np.where(
            better_best[:, None],
            centroid + _GAMMA * (centroid - worst),          # expansion
            np.where(below_worst[:, None],
                     centroid + _RHO * (centroid - worst),   # outside contraction
                     centroid - _RHO * (centroid - worst)),  # inside contraction
        )
        fs = fun(second)

        case_reflect = (~better_best) & (fr < fvals[:, -2])
        case_out = (~better_best) & (~case_reflect) & below_worst
        case_in = (~better_best) & (~case_reflect) & (~below_worst)

        use_second = (better_best & (fs < fr)) | (case_out & (fs <= fr)) | (case_in & (fs < fvals[:, -1]))
        use_reflect = (better_best & ~(fs < fr)) | case_reflect
        shrink = (case_out | case_in) & ~use_second

        upd = active & (use_second | use_reflect)
        if upd.any():
            take_second = use_second[upd]
            simplex[upd, -1, :] = np.where(take_second[:, None], second[upd], xr[upd])
            fvals[upd, -1] = np.where(take_second, fs[upd], fr[upd])

        shr = active & shrink
        if shr.any():
            s = simplex[shr]
            s = s[:, :1, :] + _SIGMA * (s - s[:, :1, :])
            simplex[shr] = s
            fvals[shr, 1:] = fun(s[:, 1:, :].reshape(-1, n)).reshape(-1, n)

    order = np.argsort(fvals, axis=1)
    fvals = np.take_along_axis(fvals, order, axis=1)
    simplex = np.take_along_axis(simplex, order[:, :, None], axis=1)
    return simplex[:, 0, :], fvals[:, 0]
