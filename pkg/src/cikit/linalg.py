"""Exact dense linear algebra over Q and GF(p).

Thin field-aware wrappers around the row-reduction kernels.  The compiled
kernel (`_rowred`, Cython) is preferred; the pure-Python twin (`_rowred_py`)
is selected when the extension is unavailable or ``CIKIT_PURE_PYTHON`` is
set.  Both produce identical output, which `benchmarks/bench_rowred.py`
exercises directly.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import lcm

from .fields import Field

from . import _rowred_py

_compiled = None
if not os.environ.get("CIKIT_PURE_PYTHON"):
    try:
        from . import _rowred as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None

_impl = _compiled if _compiled is not None else _rowred_py

KERNEL = "compiled" if _compiled is not None else "python"

_FP_LIMIT = 1 << 31


def _scale_row_to_int(row):
    den = 1
    for v in row:
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    if den == 1:
        return [int(v) for v in row]
    return [int(v * den) for v in row]


def _fp_impl(p):
    return _impl if p < _FP_LIMIT else _rowred_py


def rref(rows, field: Field):
    """Canonical reduced row echelon form. Returns (rows, pivot columns)."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return [], []
    if field.is_rationals:
        int_rows = [_scale_row_to_int(r) for r in rows]
        red, pivots = _impl.rref_int(int_rows)
        out = []
        for row, pc in zip(red, pivots):
            piv = row[pc]
            out.append([Fraction(v, piv) for v in row])
        return out, pivots
    return _fp_impl(field.p).rref_fp(rows, field.p)


def rank(rows, field: Field) -> int:
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    if field.is_rationals:
        return len(_impl.indep_int([], [_scale_row_to_int(r) for r in rows]))
    return len(_fp_impl(field.p).indep_fp([], rows, field.p))


def independent_subset(d_rows, c_rows, field: Field):
    """Indices of candidate rows that enlarge span(d_rows), greedily in order."""
    if not c_rows:
        return []
    if field.is_rationals:
        return _impl.indep_int(
            [_scale_row_to_int(r) for r in d_rows],
            [_scale_row_to_int(r) for r in c_rows],
        )
    return _fp_impl(field.p).indep_fp(d_rows, c_rows, field.p)


def span_contains_all(span_rows, vecs, field: Field) -> bool:
    return not independent_subset(span_rows, vecs, field)


def nullspace(rows, ncols: int, field: Field):
    """Basis of {x : M x = 0} for the matrix M with the given rows.

    The basis is canonical: one vector per free column of the RREF, ordered
    by free column index.
    """
    red, pivots = rref(rows, field)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    zero = field.zero()
    one = field.one()
    basis = []
    for f in free:
        vec = [zero] * ncols
        vec[f] = one
        for i, pc in enumerate(pivots):
            vec[pc] = field.neg(red[i][f])
        basis.append(vec)
    return basis


def kernel_modulo(cols, target_dim: int, subspace_rows, field: Field,
                  subspace_pivots=None):
    """Canonical basis of {x : sum_i x_i * cols[i] in span(subspace_rows)}.

    ``cols`` are target-coordinate vectors; the subspace acts as a quotient
    of the target.  Over a prime field the subspace is echelonized (or
    taken as the given echelon when ``subspace_pivots`` is passed) and the
    columns reduced against it, which keeps the elimination square in the
    quotient dimensions; over Q the subspace rides along as extra columns.
    """
    if not cols:
        return []
    if not field.is_rationals and subspace_rows:
        if subspace_pivots is None:
            ech, pivots = rref(subspace_rows, field)
        else:
            ech, pivots = subspace_rows, subspace_pivots
        reduced = reduce_mod_echelon(ech, pivots, cols, field)
        rows = transpose(reduced, target_dim, field)
        rows = [r for r in rows if any(r)]
        kernel = nullspace(rows, len(cols), field)
        basis, _ = rref(kernel, field)
        return basis
    ncols = len(cols) + len(subspace_rows)
    rows = [[field.zero()] * ncols for _ in range(target_dim)]
    for j, col in enumerate(cols):
        for t, v in enumerate(col):
            if v:
                rows[t][j] = v
    for j, srow in enumerate(subspace_rows):
        for t, v in enumerate(srow):
            if v:
                rows[t][len(cols) + j] = v
    kernel = nullspace(rows, ncols, field)
    projected = [v[: len(cols)] for v in kernel]
    basis, _ = rref(projected, field)
    return basis


def reduce_mod_echelon(ech_rows, pivots, vecs, field: Field):
    """Reduce vectors against a unit-pivot RREF echelon (exact elimination
    at pivot coordinates)."""
    if not field.is_rationals:
        return _fp_impl(field.p).reduce_fp(ech_rows, pivots, vecs, field.p)
    out = []
    for src in vecs:
        row = list(src)
        for prow, pc in zip(ech_rows, pivots):
            b = row[pc]
            if b:
                for k in range(pc, len(row)):
                    if prow[k]:
                        row[k] = row[k] - b * prow[k]
        out.append(row)
    return out


def transpose(rows, ncols: int, field: Field):
    if not rows:
        return [[] for _ in range(ncols)]
    zero = field.zero()
    out = [[zero] * len(rows) for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v:
                out[j][i] = v
    return out


def solve(rows, ncols: int, rhs, field: Field):
    """One solution x of M x = rhs, or None.  Canonical (free vars zero)."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, field)
    zero = field.zero()
    x = [zero] * ncols
    for i, pc in enumerate(pivots):
        if pc == ncols:
            return None  # inconsistent
        x[pc] = red[i][ncols]
    # verify (guards against free-variable interactions)
    for row, b in zip(rows, rhs):
        acc = zero
        for a, v in zip(row, x):
            if a and v:
                acc = field.add(acc, field.mul(a, v))
        if acc != b:
            return None
    return x
