"""Groebner bases, normal forms, and graded-module primitives.

Two engines live here.  Buchberger's algorithm provides ideal-level
normal forms, membership, and lead-term data (Hilbert numerators, height).
Module-level work (syzygies, minimal generators, Hilbert functions of
presented modules) runs degree by degree through exact linear algebra on
finite-dimensional graded slices, which keeps one code path for modules
over R and over quotients S = R/I: quotient computations simply enlarge
every slice by the I-multiples of the ambient free basis.

Degree bounds are explicit everywhere a module is only knowable up to a
slice: results above the bound are reported as unknown, never guessed.
"""

from __future__ import annotations

import itertools

from . import linalg
from .fields import Field
from .poly import (
    DEGREVLEX,
    MonomialOrder,
    PolyRing,
    Polynomial,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)


class UnitIdeal(ValueError):
    """The homogeneous ideal contains a unit."""


# ---------------------------------------------------------------------------
# division and Buchberger


def multivariate_divide(f: Polynomial, divisors, order: MonomialOrder = DEGREVLEX):
    """Divide f by an ordered list of divisors.

    Returns (quotients, remainder) with f = sum(q_i * d_i) + r and no term
    of r divisible by any divisor's leading term.
    """
    ring = f.ring
    F = ring.field
    for d in divisors:
        if d.ring != ring:
            raise ValueError("divisor in wrong ring")
        if d.is_zero():
            raise ZeroDivisionError("zero divisor")
    lts = [d.leading_term(order) for d in divisors]
    quotients = [dict() for _ in divisors]
    remainder: dict = {}
    work = dict(f.terms)
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        for i, (lm, lc) in enumerate(lts):
            if monomial_divides(lm, m):
                q_mon = monomial_div(m, lm)
                q_coeff = F.div(c, lc)
                qd = quotients[i]
                qd[q_mon] = F.add(qd.get(q_mon, F.zero()), q_coeff)
                for dm, dc in divisors[i].terms.items():
                    if dm == lm:
                        continue
                    t = monomial_mul(dm, q_mon)
                    s = F.sub(work.get(t, F.zero()), F.mul(dc, q_coeff))
                    if F.is_zero(s):
                        work.pop(t, None)
                    else:
                        work[t] = s
                break
        else:
            remainder[m] = c
    qs = [Polynomial(ring, {m: c for m, c in q.items() if not F.is_zero(c)}) for q in quotients]
    return qs, Polynomial(ring, remainder)


def _reduce(f: Polynomial, reducers, order: MonomialOrder) -> Polynomial:
    _, r = multivariate_divide(f, reducers, order)
    return r


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    F = f.ring.field
    fm, fc = f.leading_term(order)
    gm, gc = g.leading_term(order)
    l = monomial_lcm(fm, gm)
    return f.mul_monomial(monomial_div(l, fm), F.inv(fc)) - g.mul_monomial(
        monomial_div(l, gm), F.inv(gc)
    )


class GroebnerBasis:
    """A reduced Groebner basis (monic elements, sorted by leading term)."""

    __slots__ = ("ring", "order", "elements")

    def __init__(self, ring: PolyRing, order: MonomialOrder, elements):
        self.ring = ring
        self.order = order
        self.elements = list(elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def normal_form(self, f: Polynomial) -> Polynomial:
        return _reduce(f, self.elements, self.order)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def lead_monomials(self):
        return [g.leading_term(self.order)[0] for g in self.elements]


def buchberger(ideal: "Ideal", order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of a homogeneous ideal."""
    ring = ideal.ring
    F = ring.field
    basis: list[Polynomial] = []
    for g in ideal.generators:
        _, lc = g.leading_term(order)
        basis.append(g.scale(F.inv(lc)))
    basis.sort(key=lambda g: order.key(g.leading_term(order)[0]))

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    while pairs:
        # normal selection: smallest lcm degree first, index order breaks ties
        i, j = min(
            pairs,
            key=lambda ij: (
                sum(
                    monomial_lcm(
                        basis[ij[0]].leading_term(order)[0],
                        basis[ij[1]].leading_term(order)[0],
                    )
                ),
                ij,
            ),
        )
        pairs.discard((i, j))
        fi, fj = basis[i], basis[j]
        mi = fi.leading_term(order)[0]
        mj = fj.leading_term(order)[0]
        if monomial_lcm(mi, mj) == monomial_mul(mi, mj):
            continue  # coprime leads reduce to zero
        r = _reduce(s_polynomial(fi, fj, order), basis, order)
        if r.is_zero():
            continue
        _, lc = r.leading_term(order)
        basis.append(r.scale(F.inv(lc)))
        k = len(basis) - 1
        pairs.update((i2, k) for i2 in range(k))

    # inter-reduce to the canonical reduced basis
    reduced: list[Polynomial] = []
    basis.sort(key=lambda g: order.key(g.leading_term(order)[0]))
    for i, g in enumerate(basis):
        others = basis[:i] + basis[i + 1 :]
        r = _reduce(g, others, order) if others else g
        if not r.is_zero():
            _, lc = r.leading_term(order)
            reduced.append(r.scale(F.inv(lc)))
    # drop duplicates, keep canonical order
    seen = set()
    final = []
    for g in sorted(reduced, key=lambda g: order.key(g.leading_term(order)[0])):
        key = frozenset(g.terms.items())
        if key not in seen:
            seen.add(key)
            final.append(g)
    return GroebnerBasis(ring, order, final)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(f)


class Ideal:
    """A homogeneous ideal given by generators (zero generators discarded)."""

    __slots__ = ("ring", "generators", "_gb_cache", "_slice_cache")

    def __init__(self, ring: PolyRing, generators):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator in wrong ring")
            if g.is_zero():
                continue
            g.homogeneous_degree()  # raises on inhomogeneous input
            gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb_cache: dict = {}
        self._slice_cache: dict = {}

    def groebner(self, order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
        if order.name not in self._gb_cache:
            self._gb_cache[order.name] = buchberger(self, order)
        return self._gb_cache[order.name]

    def contains(self, f: Polynomial) -> bool:
        return self.groebner().contains(f)

    def is_zero(self) -> bool:
        return not self.generators

    def slice_rows(self, d: int):
        """k-spanning rows of the degree-d slice, in ring monomial coordinates."""
        ring = self.ring
        basis = ring.monomials_of_degree(d)
        index = {m: i for i, m in enumerate(basis)}
        rows = []
        zero = ring.field.zero()
        for g in self.generators:
            gd = g.homogeneous_degree()
            for m in ring.monomials_of_degree(d - gd):
                row = [zero] * len(basis)
                for gm, gc in g.terms.items():
                    row[index[monomial_mul(gm, m)]] = gc
                rows.append(row)
        return rows

    def slice_rref(self, d: int):
        """Cached canonical (RREF) basis of the degree-d slice."""
        if d not in self._slice_cache:
            self._slice_cache[d] = linalg.rref(self.slice_rows(d), self.ring.field)
        return self._slice_cache[d]

    def slice_dim(self, d: int) -> int:
        return len(self.slice_rref(d)[0])

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.generators) or '0'})"


# ---------------------------------------------------------------------------
# graded slices of free modules


class FreeSlices:
    """Cached graded slices of a free module with given row degrees."""

    __slots__ = ("ring", "row_degrees", "_basis", "_index")

    def __init__(self, ring: PolyRing, row_degrees):
        self.ring = ring
        self.row_degrees = list(row_degrees)
        self._basis: dict = {}
        self._index: dict = {}

    def basis(self, d: int):
        """Slice basis [(row, expts)] at internal degree d, canonical order."""
        if d not in self._basis:
            out = []
            for i, rd in enumerate(self.row_degrees):
                for m in self.ring.monomials_of_degree(d - rd):
                    out.append((i, m))
            self._basis[d] = out
            self._index[d] = {bm: pos for pos, bm in enumerate(out)}
        return self._basis[d]

    def index(self, d: int):
        self.basis(d)
        return self._index[d]

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def coords(self, vec, d: int):
        """Coordinates of a homogeneous vector (tuple of polynomials) of
        internal degree d."""
        idx = self.index(d)
        row = [self.ring.field.zero()] * len(self.basis(d))
        for i, p in enumerate(vec):
            for m, c in p.terms.items():
                row[idx[(i, m)]] = c
        return row

    def from_coords(self, coords, d: int):
        """Inverse of :meth:`coords`."""
        F = self.ring.field
        polys = [dict() for _ in self.row_degrees]
        for pos, c in enumerate(coords):
            if F.is_zero(c):
                continue
            i, m = self.basis(d)[pos]
            polys[i][m] = c
        return tuple(Polynomial(self.ring, t) for t in polys)

    def multiply_coords_by_var(self, coords, d: int, var: int):
        """Coordinates of x_var * v for v given in degree-d coordinates."""
        src = self.basis(d)
        idx = self.index(d + 1)
        F = self.ring.field
        out = [F.zero()] * self.dim(d + 1)
        for pos, c in enumerate(coords):
            if F.is_zero(c):
                continue
            i, m = src[pos]
            mm = list(m)
            mm[var] += 1
            out[idx[(i, tuple(mm))]] = c
        return out


def scatter_multiples(slices: FreeSlices, vec, vec_degree: int, d: int, proper_only=False):
    """Coordinate rows of all monomial multiples m*vec landing in degree d."""
    ring = slices.ring
    idx = slices.index(d)
    F = ring.field
    rows = []
    for m in ring.monomials_of_degree(d - vec_degree):
        if proper_only and not any(m):
            continue
        row = [F.zero()] * slices.dim(d)
        for i, p in enumerate(vec):
            for pm, pc in p.terms.items():
                row[idx[(i, monomial_mul(pm, m))]] = pc
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# module presentations


class ModulePresentation:
    """A finitely generated graded module over R or S = R/modulus.

    The matrix columns are vectors in the free module with the given row
    degrees.  Operations state which view they take: `syzygies` and
    `minimal_generators` treat the columns as generators of the submodule
    they span; Hilbert data refers to the cokernel unless noted.
    """

    __slots__ = (
        "ring",
        "modulus",
        "row_degrees",
        "columns",
        "col_degrees",
        "_slices",
        "_ideal_ech",
    )

    def __init__(self, ring: PolyRing, modulus, row_degrees, columns):
        self.ring = ring
        self.modulus = modulus  # Ideal or None
        self.row_degrees = list(row_degrees)
        cols = []
        degs = []
        for col in columns:
            col = tuple(col)
            if len(col) != len(self.row_degrees):
                raise ValueError("column length mismatch")
            d = None
            for p, rd in zip(col, self.row_degrees):
                if p.is_zero():
                    continue
                pd = p.homogeneous_degree() + rd
                if d is None:
                    d = pd
                elif d != pd:
                    raise ValueError("inhomogeneous column")
            if d is None:
                continue  # zero column dropped
            cols.append(col)
            degs.append(d)
        self.columns = cols
        self.col_degrees = degs
        self._slices = FreeSlices(ring, self.row_degrees)
        self._ideal_ech: dict = {}

    # -- basic views -----------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self.row_degrees)

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.columns[j][i]

    def over_quotient(self) -> bool:
        return self.modulus is not None and not self.modulus.is_zero()

    def slices(self) -> FreeSlices:
        return self._slices

    def ideal_echelon(self, d: int):
        """Canonical RREF of (I*F)_d, assembled block-by-block from the
        cached ideal slice echelons (returns (rows, pivot columns))."""
        if not self.over_quotient():
            return [], []
        if d in self._ideal_ech:
            return self._ideal_ech[d]
        zero = self.ring.field.zero()
        total = self._slices.dim(d)
        out_rows: list = []
        out_pivs: list = []
        offset = 0
        for rd in self.row_degrees:
            e = d - rd
            width = self.ring.slice_dim(e)
            if width:
                local_rows, local_pivs = self.modulus.slice_rref(e)
                for lr, lp in zip(local_rows, local_pivs):
                    row = [zero] * total
                    row[offset : offset + width] = lr
                    out_rows.append(row)
                    out_pivs.append(offset + lp)
            offset += width
        self._ideal_ech[d] = (out_rows, out_pivs)
        return self._ideal_ech[d]

    def ideal_slice_rows(self, d: int):
        """Rows spanning (I*F)_d when working over S = R/I (echelonized)."""
        return self.ideal_echelon(d)[0]

    def ideal_slice_rank(self, d: int) -> int:
        if not self.over_quotient():
            return 0
        return sum(
            len(self.modulus.slice_rref(d - rd)[0])
            for rd in self.row_degrees
            if self.ring.slice_dim(d - rd)
        )

    def span_slice_rows(self, d: int, proper_only=False, include_ideal=True):
        """Rows spanning the degree-d slice of the column span (plus I*F)."""
        rows = []
        for col, cd in zip(self.columns, self.col_degrees):
            if cd > d:
                continue
            rows.extend(scatter_multiples(self._slices, col, cd, d, proper_only))
        if include_ideal:
            rows.extend(self.ideal_slice_rows(d))
        return rows

    # -- module data -------------------------------------------------------

    def cokernel_slice_dim(self, d: int) -> int:
        field = self.ring.field
        return self._slices.dim(d) - linalg.rank(self.span_slice_rows(d), field)

    def image_slice_dim(self, d: int) -> int:
        field = self.ring.field
        full = linalg.rank(self.span_slice_rows(d), field)
        return full - self.ideal_slice_rank(d)

    def hilbert_function(self, bound: int):
        """dim_k of the cokernel in degrees 0..bound."""
        return [self.cokernel_slice_dim(d) for d in range(bound + 1)]

    def nf_columns(self):
        """Columns with entries normal-formed mod the quotient ideal."""
        if not self.over_quotient():
            return self.columns
        gb = self.modulus.groebner()
        return [tuple(gb.normal_form(p) for p in col) for col in self.columns]


def free_presentation(ring: PolyRing, modulus, row_degrees) -> ModulePresentation:
    return ModulePresentation(ring, modulus, row_degrees, [])


def ideal_as_module(ideal: Ideal) -> ModulePresentation:
    """The ideal's generators as columns of a rank-one free module over R."""
    return ModulePresentation(ideal.ring, None, [0], [(g,) for g in ideal.generators])


def quotient_presentation(ideal: Ideal) -> ModulePresentation:
    """S = R/I presented as the cokernel of the generators in R."""
    return ideal_as_module(ideal)


def residue_field_presentation(ring: PolyRing, modulus) -> ModulePresentation:
    """k = S/m_S presented over S by the ring variables."""
    return ModulePresentation(ring, modulus, [0], [(ring.gen(i),) for i in range(ring.nvars)])


# ---------------------------------------------------------------------------
# minimal generators (graded Nakayama, slice by slice)


def minimal_generators(pres: ModulePresentation):
    """Minimal generating subset of the column-generated submodule.

    Returns (count, selected column indices).  Columns are scanned in
    increasing degree (input order within a degree); a column is kept iff it
    leaves the span of the already-kept columns plus m*(everything), which
    is graded Nakayama.  The result is deterministic.
    """
    field = pres.ring.field
    selected: list[int] = []
    degrees = sorted(set(pres.col_degrees))
    for d in degrees:
        denom = pres.span_slice_rows(d, proper_only=True)
        candidates = []
        cand_idx = []
        for j, cd in enumerate(pres.col_degrees):
            if cd == d:
                candidates.append(pres._slices.coords(pres.columns[j], d))
                cand_idx.append(j)
        chosen = linalg.independent_subset(denom, candidates, field)
        selected.extend(cand_idx[c] for c in chosen)
    selected.sort()
    return len(selected), selected


def minimal_generator_columns(pres: ModulePresentation) -> ModulePresentation:
    _, selected = minimal_generators(pres)
    return ModulePresentation(
        pres.ring, pres.modulus, pres.row_degrees, [pres.columns[j] for j in selected]
    )


# ---------------------------------------------------------------------------
# syzygies (graded slice computation)


def syzygies(pres: ModulePresentation, degree_bound: int) -> ModulePresentation:
    """First syzygy module of the columns, as columns over the same ring.

    Generators are complete up to the degree bound; together with the input
    matrix they compose to zero (exactly over R, modulo I over S).
    """
    gens, _ = syzygy_generators(pres, degree_bound)
    return ModulePresentation(pres.ring, pres.modulus, pres.col_degrees, gens)


def _syzygy_slice(pres: ModulePresentation, domain: FreeSlices, d: int):
    """Canonical basis of the degree-d syzygy slice in domain coordinates
    (vectors x with sum x_j c_j = 0, modulo I*F over a quotient)."""
    ring = pres.ring
    field = ring.field
    target = pres._slices
    dom_basis = domain.basis(d)
    if not dom_basis:
        return []
    cols = []
    idx = target.index(d)
    tdim = target.dim(d)
    for j, m in dom_basis:
        vec = pres.columns[j]
        row = [field.zero()] * tdim
        for i, p in enumerate(vec):
            for pm, pc in p.terms.items():
                pos = idx[(i, monomial_mul(pm, m))]
                row[pos] = field.add(row[pos], pc)
        cols.append(row)
    ech, pivots = pres.ideal_echelon(d)
    return linalg.kernel_modulo(cols, tdim, ech, field, subspace_pivots=pivots)


def syzygy_generators(pres: ModulePresentation, degree_bound: int):
    """Minimal syzygy generators plus per-degree slice bases.

    Returns (columns, slices_by_degree) where slices_by_degree maps d to the
    canonical basis of the degree-d syzygy slice in domain coordinates.
    """
    ring = pres.ring
    field = ring.field
    domain = FreeSlices(ring, pres.col_degrees)
    nvars = ring.nvars

    gens: list[tuple] = []
    slice_basis: dict[int, list] = {}
    if not pres.columns:
        return gens, slice_basis

    dom_pres = None
    if pres.over_quotient():
        dom_pres = free_presentation(ring, pres.modulus, pres.col_degrees)

    start = min(pres.col_degrees)
    for d in range(start, degree_bound + 1):
        basis_rows = _syzygy_slice(pres, domain, d)
        slice_basis[d] = basis_rows
        if not basis_rows:
            continue
        # Nakayama denominator: m * (lower syzygy slices) + I-coordinate vectors
        denom = []
        prev = slice_basis.get(d - 1, [])
        for v in prev:
            for var in range(nvars):
                denom.append(domain.multiply_coords_by_var(v, d - 1, var))
        if dom_pres is not None:
            denom.extend(dom_pres.ideal_slice_rows(d))
        chosen = linalg.independent_subset(denom, basis_rows, field)
        for c in chosen:
            gens.append(domain.from_coords(basis_rows[c], d))
    return gens, slice_basis


def first_syzygy_degree(pres: ModulePresentation, degree_bound: int):
    """Smallest degree <= bound carrying a nontrivial syzygy of the
    columns, or None.  Early-exits: used to decide (non-)termination of a
    resolution without materialising the next syzygy module."""
    if not pres.columns:
        return None
    ring = pres.ring
    field = ring.field
    domain = FreeSlices(ring, pres.col_degrees)
    dom_pres = None
    if pres.over_quotient():
        dom_pres = free_presentation(ring, pres.modulus, pres.col_degrees)
    for d in range(min(pres.col_degrees), degree_bound + 1):
        basis_rows = _syzygy_slice(pres, domain, d)
        if not basis_rows:
            continue
        if dom_pres is None:
            return d
        ideal_rows = dom_pres.ideal_slice_rows(d)
        if linalg.independent_subset(ideal_rows, basis_rows, field):
            return d
    return None


def compose_is_zero(pres: ModulePresentation, syz: ModulePresentation) -> bool:
    """matrix(pres) . matrix(syz) == 0 (mod I over a quotient)."""
    gb = pres.modulus.groebner() if pres.over_quotient() else None
    for col in syz.columns:
        for i in range(pres.nrows):
            acc = pres.ring.zero()
            for j in range(pres.ncols):
                acc = acc + pres.columns[j][i] * col[j]
            if gb is not None:
                acc = gb.normal_form(acc)
            if not acc.is_zero():
                return False
    return True


# ---------------------------------------------------------------------------
# pruning non-minimal presentations


def minimalize_presentation(pres: ModulePresentation) -> ModulePresentation:
    """Remove unit entries by row/column pivoting.

    The result presents the same module with all matrix entries in the
    irrelevant maximal ideal.
    """
    ring = pres.ring
    field = ring.field
    rows = list(pres.row_degrees)
    cols = [list(c) for c in pres.columns]

    while True:
        pivot = None
        for j, col in enumerate(cols):
            for i, p in enumerate(col):
                if not p.is_zero() and p.homogeneous_degree() == 0:
                    pivot = (i, j, p.constant_coefficient())
                    break
            if pivot:
                break
        if not pivot:
            break
        i, j, c = pivot
        inv = field.inv(c)
        pcol = cols[j]
        for jj, col in enumerate(cols):
            if jj == j:
                continue
            e = col[i]
            if e.is_zero():
                continue
            q = e.scale(inv)
            for ii in range(len(rows)):
                col[ii] = col[ii] - q * pcol[ii]
        del cols[j]
        del rows[i]
        for col in cols:
            del col[i]
    return ModulePresentation(ring, pres.modulus, rows, [tuple(c) for c in cols])


# ---------------------------------------------------------------------------
# Hilbert series and height via lead-term data


def hilbert_series(pres: ModulePresentation, degree_bound: int):
    """Hilbert function of the cokernel up to the bound (slice ranks)."""
    return pres.hilbert_function(degree_bound)


def quotient_hilbert_by_monomials(ideal: Ideal, degree_bound: int, order=DEGREVLEX):
    """Hilbert function of R/I by counting standard monomials (Groebner
    route; independent of the slice-rank route)."""
    leads = ideal.groebner(order).lead_monomials()
    ring = ideal.ring
    out = []
    for d in range(degree_bound + 1):
        count = 0
        for m in ring.monomials_of_degree(d):
            if not any(monomial_divides(lm, m) for lm in leads):
                count += 1
        out.append(count)
    return out


def _minimalize_monomials(mons):
    mons = sorted(set(mons), key=lambda m: (sum(m), m))
    keep = []
    for m in mons:
        if not any(monomial_divides(k, m) for k in keep):
            keep.append(m)
    return tuple(keep)


def _hilbert_numerator(mons, nvars, cache):
    """Numerator of the Hilbert series of R/(mons) over (1-t)^nvars, as a
    coefficient list."""
    mons = _minimalize_monomials(mons)
    if mons in cache:
        return cache[mons]
    if not mons:
        result = [1]
    elif any(sum(m) == 0 for m in mons):
        result = [0]
    else:
        rest = mons[:-1]
        last = mons[-1]
        n_rest = _hilbert_numerator(rest, nvars, cache)
        colon = tuple(tuple(max(e - f, 0) for e, f in zip(g, last)) for g in rest)
        n_colon = _hilbert_numerator(colon, nvars, cache)
        shift = sum(last)
        result = list(n_rest) + [0] * max(0, shift + len(n_colon) - len(n_rest))
        for i, c in enumerate(n_colon):
            result[shift + i] -= c
        while result and result[-1] == 0:
            result.pop()
    cache[mons] = result
    return result


def height(ideal: Ideal, order: MonomialOrder = DEGREVLEX) -> int:
    """Codimension of a proper homogeneous ideal.

    Computed exactly as the multiplicity of (1-t) in the Hilbert numerator
    of R/in(I); no degree heuristic is involved.
    """
    if ideal.is_zero():
        return 0
    gb = ideal.groebner(order)
    for g in gb:
        if g.homogeneous_degree() == 0:
            raise UnitIdeal("ideal contains a unit")
    leads = gb.lead_monomials()
    numerator = _hilbert_numerator(tuple(leads), ideal.ring.nvars, {})
    h = 0
    coeffs = list(numerator)
    while coeffs and sum(coeffs) == 0:
        # synthetic division by (1 - t)
        out = []
        acc = 0
        for c in coeffs[:-1]:
            acc += c
            out.append(acc)
        coeffs = out
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        h += 1
    return h


def krull_dimension(ideal: Ideal) -> int:
    return ideal.ring.nvars - height(ideal)
