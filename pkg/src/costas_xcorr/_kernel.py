"""Compiled pair-scan kernel.

For each pair (a, b) of permutations the kernel walks every horizontal
shift u, histograms the vertical offsets g(i + u) - f(i), and keeps the
best (value, u, v) for each shift filter.  Filter codes are fixed by
``FILTER_CODES`` and mirrored in ``xcorr.ShiftFilter``.
"""

import numpy as np
from numba import njit

FILTER_CODES = (
    "ALL",
    "V_ZERO",
    "U_ZERO",
    "V_NONZERO",
    "U_NONZERO_V_ZERO",
    "ORIGIN_ONLY",
    "EXCLUDE_ORIGIN",
    "U_ZERO_V_NONZERO",
    "UV_NONZERO",
)
N_FILTERS = len(FILTER_CODES)

# filters answerable from the u = 0 and v = 0 axes alone
AXIS_FILTERS = ("V_ZERO", "U_ZERO", "U_NONZERO_V_ZERO", "ORIGIN_ONLY", "U_ZERO_V_NONZERO")

# which of the per-column statistics each filter reads
_ALL, _NZ, _ZERO = 0, 1, 2


@njit(cache=True)
def _first_v(hist, off, target, skip_zero):
    # smallest v whose count equals target
    for idx in range(hist.shape[0]):
        if skip_zero and idx == off:
            continue
        if hist[idx] == target:
            return idx - off
    return 0


@njit(cache=True)
def _offer(out, k, val, stat, u, hist, off, drop_origin):
    # u arrives in ascending order, so a tie keeps the earlier shift
    if val <= out[k, 0]:
        return
    out[k, 0] = val
    out[k, 1] = u
    if stat == _ZERO:
        out[k, 2] = 0
    elif stat == _NZ:
        out[k, 2] = _first_v(hist, off, val, True)
    else:
        out[k, 2] = _first_v(hist, off, val, drop_origin)


@njit(cache=True)
def _scan_pair(f, g, exclude_origin, hist, out):
    n = f.shape[0]
    off = n - 1
    for k in range(N_FILTERS):
        out[k, 0] = -1
        out[k, 1] = 0
        out[k, 2] = 0
    for u in range(-off, n):
        lo = -u if u < 0 else 0
        hi = n - u if u > 0 else n
        gg = g[lo + u:hi + u]
        ff = f[lo:hi]
        m_all = 0
        for i in range(hi - lo):
            idx = gg[i] - ff[i] + off
            c = hist[idx] + 1
            hist[idx] = c
            if c > m_all:
                m_all = c
        c0 = hist[off]
        on_axis = u == 0
        drop_origin = on_axis and exclude_origin

        # best over v != 0, only worked out when it could still win somewhere
        if m_all > c0:
            m_nz = m_all
        elif n == 1:
            m_nz = -1
        elif m_all > out[3, 0] or (on_axis and m_all > min(out[6, 0], out[7, 0])) \
                or (not on_axis and m_all > out[8, 0]):
            m_nz = 0
            for i in range(hi - lo):
                idx = gg[i] - ff[i] + off
                if idx != off and hist[idx] > m_nz:
                    m_nz = hist[idx]
        else:
            m_nz = -1
        # with the origin dropped, the best over all v is the best over v != 0
        m_adm = m_nz if drop_origin else m_all

        _offer(out, 0, m_adm, _ALL, u, hist, off, drop_origin)
        if not drop_origin:
            _offer(out, 1, c0, _ZERO, u, hist, off, drop_origin)
        _offer(out, 3, m_nz, _NZ, u, hist, off, drop_origin)
        if on_axis:
            _offer(out, 2, m_adm, _ALL, u, hist, off, drop_origin)
            if not exclude_origin:
                _offer(out, 5, c0, _ZERO, u, hist, off, drop_origin)
            _offer(out, 6, m_nz, _NZ, u, hist, off, drop_origin)
            _offer(out, 7, m_nz, _NZ, u, hist, off, drop_origin)
        else:
            _offer(out, 4, c0, _ZERO, u, hist, off, drop_origin)
            _offer(out, 6, m_all, _ALL, u, hist, off, drop_origin)
            _offer(out, 8, m_nz, _NZ, u, hist, off, drop_origin)

        for i in range(hi - lo):
            hist[gg[i] - ff[i] + off] = 0


@njit(cache=True)
def _axis_best(hist, off, skip_zero, k, out, as_u):
    best = -1
    at = 0
    for idx in range(hist.shape[0]):
        if skip_zero and idx == off:
            continue
        if hist[idx] > best:
            best = hist[idx]
            at = idx - off
    out[k, 0] = best
    out[k, 1] = at if as_u else 0
    out[k, 2] = 0 if as_u else at


@njit(cache=True)
def _scan_pair_axes(f, g, ginv, exclude_origin, hist_u, hist_v, out):
    """Filters that only look along u = 0 or v = 0, in O(n).

    Psi(u, 0) counts i with g(i + u) = f(i), so each i contributes to the
    single column u = ginv(f(i)) - i; Psi(0, v) likewise to v = g(i) - f(i).
    Slots of filters needing the full grid are left at -1.
    """
    n = f.shape[0]
    off = n - 1
    for k in range(N_FILTERS):
        out[k, 0] = -1
        out[k, 1] = 0
        out[k, 2] = 0
    hist_u[:] = 0
    hist_v[:] = 0
    for i in range(n):
        hist_u[ginv[f[i] - 1] - 1 - i + off] += 1
        hist_v[g[i] - f[i] + off] += 1
    if not exclude_origin:
        out[5, 0] = hist_u[off]
    _axis_best(hist_u, off, exclude_origin, 1, out, True)
    _axis_best(hist_v, off, exclude_origin, 2, out, False)
    if n > 1:
        _axis_best(hist_u, off, True, 4, out, True)
        _axis_best(hist_v, off, True, 7, out, False)


@njit(cache=True, nogil=True)
def scan_pairs(members, a_idx, b_idx, out):
    """Fill ``out[k]`` with per-filter ``(value, u, v)`` for pair ``(a_idx[k], b_idx[k])``.

    ``members`` is an (m, n) array of one-indexed permutation values.  A
    pair with ``a == b`` is an auto-correlation and never sees (0, 0).
    Value -1 marks a filter that admits no shift for that pair.
    """
    n = members.shape[1]
    hist = np.zeros(2 * n - 1, dtype=np.int32)
    for k in range(a_idx.shape[0]):
        a = a_idx[k]
        b = b_idx[k]
        _scan_pair(members[a], members[b], a == b, hist, out[k])


@njit(cache=True, nogil=True)
def scan_pairs_axes(members, inverses, a_idx, b_idx, out):
    """Like ``scan_pairs`` but only for V_ZERO, U_ZERO, U_NONZERO_V_ZERO,
    ORIGIN_ONLY and U_ZERO_V_NONZERO; the other slots come back as -1."""
    n = members.shape[1]
    hist_u = np.zeros(2 * n - 1, dtype=np.int32)
    hist_v = np.zeros(2 * n - 1, dtype=np.int32)
    for k in range(a_idx.shape[0]):
        a = a_idx[k]
        b = b_idx[k]
        _scan_pair_axes(members[a], members[b], inverses[b], a == b, hist_u, hist_v, out[k])
