"""Adaptive Gauss-Kronrod (7, 15) quadrature over vector-valued integrands.

The even-dimension kernel needs three closely related integrals per
evaluation; this integrator evaluates all of them on shared panels, with the
integrand called once per refinement round on the full batch of nodes.
Refinement bisects the panels that dominate the error until every component
meets its tolerance.
"""

from __future__ import annotations

import numpy as np

from .errors import AccuracyError

# 15-point Kronrod abscissae (positive half, descending) and weights, with the
# embedded 7-point Gauss weights on every second node.
_XGK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
])

_NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[-2::-1]])       # 15 ascending
_WEIGHTS_K = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[-2::-1]])
_WEIGHTS_G = np.zeros(15)
_WEIGHTS_G[1:-1:2] = np.concatenate([_WG[:-1], [_WG[-1]], _WG[-2::-1]])


def integrate_panels(fun, panels, epsrel: float = 1e-12, target: float = 1e-8,
                     max_panels: int = 4096, max_rounds: int = 48):
    """Integrate a vector-valued ``fun`` over the union of ``panels``.

    ``fun(x)`` takes a 1-D array of nodes and returns shape (nrows, len(x)).
    Returns (totals, errors) per row.  Raises ``AccuracyError`` if after
    refinement the estimated relative error of any row exceeds ``target``.
    """
    lo = np.array([p[0] for p in panels], dtype=float)
    hi = np.array([p[1] for p in panels], dtype=float)
    keep = hi > lo
    lo, hi = lo[keep], hi[keep]
    if lo.size == 0:
        raise ValueError("no panels with positive width")

    vals = None  # (nrows, npanels) Kronrod estimates
    errs = None
    pending = np.arange(lo.size)
    for _ in range(max_rounds):
        mid = 0.5 * (lo[pending] + hi[pending])
        hw = 0.5 * (hi[pending] - lo[pending])
        nodes = (mid[:, None] + hw[:, None] * _NODES[None, :]).ravel()
        fx = np.asarray(fun(nodes))
        if fx.ndim == 1:
            fx = fx[None, :]
        nrows = fx.shape[0]
        fx = fx.reshape(nrows, pending.size, 15)
        k = (fx @ _WEIGHTS_K) * hw
        g = (fx @ _WEIGHTS_G) * hw
        e = np.abs(k - g)
        if vals is None:
            vals, errs = k, e
        else:
            vals = np.concatenate([vals, k], axis=1)
            errs = np.concatenate([errs, e], axis=1)

        totals = vals.sum(axis=1)
        toterr = errs.sum(axis=1)
        # Floor the scale with a slice of the L1 mass so heavily cancelling
        # components cannot demand unbounded refinement.
        scale = np.maximum(np.abs(totals), 1e-6 * np.abs(vals).sum(axis=1))
        scale = np.maximum(scale, 1e-300)
        if np.all(toterr <= epsrel * scale):
            return totals, toterr

        rel = (errs / scale[:, None]).max(axis=0)
        budget = epsrel / max(vals.shape[1], 1)
        split = np.nonzero(rel > 0.25 * budget)[0]
        if split.size == 0:
            split = np.array([int(rel.argmax())])
        if vals.shape[1] + split.size > max_panels:
            break
        s_lo, s_hi = lo[split], hi[split]
        s_mid = 0.5 * (s_lo + s_hi)
        keep_mask = np.ones(lo.size, dtype=bool)
        keep_mask[split] = False
        vals = vals[:, keep_mask]
        errs = errs[:, keep_mask]
        lo = np.concatenate([lo[keep_mask], s_lo, s_mid])
        hi = np.concatenate([hi[keep_mask], s_mid, s_hi])
        pending = np.arange(lo.size - 2 * split.size, lo.size)

    totals = vals.sum(axis=1)
    toterr = errs.sum(axis=1)
    achieved = float((toterr / np.maximum(np.abs(totals), 1e-300)).max())
    if achieved > target:
        raise AccuracyError("quadrature did not converge", achieved)
    return totals, toterr
