"""Minimal graded free resolutions, Betti tables, projective dimension probes.

Resolutions are built from minimal generators of successive syzygy modules,
so every matrix is minimal by construction (entries in the irrelevant
maximal ideal); pruning of the input presentation happens first.  All
statements above the internal degree bound are reported as truncation, never
extrapolated.
"""

from __future__ import annotations

from . import linalg
from .groebner import (
    FreeSlices,
    ModulePresentation,
    first_syzygy_degree,
    minimal_generators,
    minimalize_presentation,
    syzygies,
    compose_is_zero,
)
from .poly import monomial_mul


class ResolutionError(RuntimeError):
    pass


class FreeResolution:
    """maps[i] is the matrix of F_{i+1} -> F_i; row degrees of maps[0] are
    the generator degrees of the resolved module."""

    __slots__ = ("ring", "modulus", "row_degrees", "maps", "status", "degree_bound")

    def __init__(self, ring, modulus, row_degrees, maps, status, degree_bound):
        self.ring = ring
        self.modulus = modulus
        self.row_degrees = list(row_degrees)
        self.maps = maps
        self.status = status  # ("terminated", d) or ("truncated", L)
        self.degree_bound = degree_bound

    @property
    def length(self) -> int:
        return len(self.maps)

    def is_terminated(self) -> bool:
        return self.status[0] == "terminated"

    def betti_bigraded(self):
        """{(homological i, internal j): rank}."""
        table: dict = {}
        for j in self.row_degrees:
            table[(0, j)] = table.get((0, j), 0) + 1
        for i, m in enumerate(self.maps, start=1):
            for j in m.col_degrees:
                table[(i, j)] = table.get((i, j), 0) + 1
        return table

    def betti_totals(self):
        """[b_0, b_1, ...] including trailing zeros up to the build length."""
        out = [len(self.row_degrees)]
        out.extend(m.ncols for m in self.maps)
        return out

    def free_module(self, i: int):
        """Row degrees of F_i."""
        if i == 0:
            return list(self.row_degrees)
        return list(self.maps[i - 1].col_degrees)


class ProjDimCertificate:
    """Finite(d) is asserted only when the d-th syzygy is verified free
    within the recorded degree bound."""

    __slots__ = ("verdict", "value", "resolution", "degree_bound")

    def __init__(self, verdict: str, value: int, resolution: FreeResolution, degree_bound: int):
        self.verdict = verdict  # "finite" | "not_terminated"
        self.value = value
        self.resolution = resolution
        self.degree_bound = degree_bound

    def is_finite(self) -> bool:
        return self.verdict == "finite"

    def __repr__(self):
        if self.is_finite():
            return f"Finite({self.value}; intdeg<={self.degree_bound})"
        return f"NotTerminatedWithin({self.value})"


def minimal_free_resolution(
    pres: ModulePresentation, length_bound: int, degree_bound: int
) -> FreeResolution:
    """Minimal resolution of coker(pres) up to the given bounds."""
    pruned = minimalize_presentation(pres)
    if pruned.nrows == 0:
        return FreeResolution(pres.ring, pres.modulus, [], [], ("terminated", 0), degree_bound)
    _, selected = minimal_generators(pruned)
    first = ModulePresentation(
        pres.ring, pres.modulus, pruned.row_degrees, [pruned.columns[j] for j in selected]
    )
    if first.ncols == 0:
        return FreeResolution(
            pres.ring, pres.modulus, pruned.row_degrees, [], ("terminated", 0), degree_bound
        )
    maps = [first]
    while len(maps) < length_bound:
        nxt = syzygies(maps[-1], degree_bound)
        if nxt.ncols == 0:
            return FreeResolution(
                pres.ring,
                pres.modulus,
                pruned.row_degrees,
                maps,
                ("terminated", len(maps)),
                degree_bound,
            )
        maps.append(nxt)
    # a single early-exit scan decides termination at the last stage
    if first_syzygy_degree(maps[-1], degree_bound) is None:
        status = ("terminated", len(maps))
    else:
        status = ("truncated", length_bound)
    return FreeResolution(pres.ring, pres.modulus, pruned.row_degrees, maps, status, degree_bound)


def projdim_probe(
    pres: ModulePresentation, length_bound: int, degree_bound: int
) -> ProjDimCertificate:
    res = minimal_free_resolution(pres, length_bound, degree_bound)
    if res.is_terminated():
        return ProjDimCertificate("finite", res.status[1], res, degree_bound)
    return ProjDimCertificate("not_terminated", length_bound, res, degree_bound)


def ext_betti(ring, modulus, n: int, degree_bound: int):
    """dim_k Ext^i_S(k, k) for i <= n, read off the minimal resolution of k."""
    from .groebner import residue_field_presentation

    res = minimal_free_resolution(residue_field_presentation(ring, modulus), n, degree_bound)
    totals = res.betti_totals()
    totals = totals + [0] * (n + 1 - len(totals))
    return totals[: n + 1]


# ---------------------------------------------------------------------------
# invariant checks


def composite_zero_on_generators(upper: ModulePresentation, lower: ModulePresentation):
    """Exact d.d = 0 check in slice coordinates, one vector per generator.

    Each column of ``lower`` is mapped through ``upper`` by direct monomial
    scatter and the image must fall into (I*F) (zero over R); by linearity
    this certifies the full matrix identity.
    """
    ring = upper.ring
    field = ring.field
    target = upper.slices()
    by_degree: dict[int, list] = {}
    for col, cd in zip(lower.columns, lower.col_degrees):
        by_degree.setdefault(cd, []).append(col)
    for d in sorted(by_degree):
        idx = target.index(d)
        tdim = target.dim(d)
        images = []
        for col in by_degree[d]:
            w = [field.zero()] * tdim
            for j, p in enumerate(col):
                if p.is_zero():
                    continue
                ucol = upper.columns[j]
                for pm, pc in p.terms.items():
                    for i2, q in enumerate(ucol):
                        for qm, qc in q.terms.items():
                            pos = idx[(i2, monomial_mul(qm, pm))]
                            w[pos] = field.add(w[pos], field.mul(pc, qc))
            images.append(w)
        ech, _ = upper.ideal_echelon(d)
        if not linalg.span_contains_all(ech, images, field):
            return False
    return True


def verify_composites(res: FreeResolution):
    """d^2 = 0 across every consecutive pair of resolution maps."""
    failures = []
    for i in range(len(res.maps) - 1):
        if not composite_zero_on_generators(res.maps[i], res.maps[i + 1]):
            failures.append(f"d2 != 0 between steps {i + 1} and {i + 2}")
    return failures


def verify_resolution(res: FreeResolution, module_pres: ModulePresentation | None = None):
    """Exact invariant suite for a computed resolution.

    Returns a list of failure strings (empty = all good): d^2 = 0,
    minimality of every entry, slice-wise exactness by rank counts, and the
    Euler/Hilbert comparison against the resolved module when given.
    """
    failures = []
    bound = res.degree_bound
    field = res.ring.field

    for i in range(len(res.maps) - 1):
        if not compose_is_zero(res.maps[i], res.maps[i + 1]):
            failures.append(f"d2 != 0 between steps {i + 1} and {i + 2}")

    for i, m in enumerate(res.maps, start=1):
        for col in m.columns:
            for p in col:
                if not p.is_zero() and p.homogeneous_degree() == 0:
                    failures.append(f"non-minimal entry in step {i}")

    def s_dim(pres_rows_pres, d):
        ideal_rows = pres_rows_pres.ideal_slice_rows(d)
        return pres_rows_pres.slices().dim(d) - linalg.rank(ideal_rows, field)

    def s_image_rank(mp, d):
        full = linalg.rank(mp.span_slice_rows(d), field)
        return full - linalg.rank(mp.ideal_slice_rows(d), field)

    # exactness between consecutive maps: ker(d_i) slice = im(d_{i+1}) slice
    for i in range(len(res.maps) - 1):
        upper = res.maps[i]      # d_{i+1}: F_{i+1} -> F_i
        lower = res.maps[i + 1]  # d_{i+2}: F_{i+2} -> F_{i+1}
        dom = ModulePresentation(res.ring, res.modulus, upper.col_degrees, [])
        for d in range(bound + 1):
            dom_dim = s_dim(dom, d)
            if dom_dim == 0:
                continue
            ker_dim = dom_dim - s_image_rank(upper, d)
            im_dim = s_image_rank(lower, d)
            if ker_dim != im_dim:
                failures.append(
                    f"exactness fails at step {i + 1}, degree {d}: ker {ker_dim} vs im {im_dim}"
                )
    # terminated resolutions: last map slice-injective
    if res.is_terminated() and res.maps:
        last = res.maps[-1]
        dom = ModulePresentation(res.ring, res.modulus, last.col_degrees, [])
        for d in range(bound + 1):
            dom_dim = s_dim(dom, d)
            if dom_dim and dom_dim != s_image_rank(last, d):
                failures.append(f"terminated resolution not injective at degree {d}")

    if module_pres is not None:
        target = module_pres.hilbert_function(bound)
        if res.maps:
            got = [
                ModulePresentation(
                    res.ring, res.modulus, res.row_degrees, res.maps[0].columns
                ).cokernel_slice_dim(d)
                for d in range(bound + 1)
            ]
        else:
            free = ModulePresentation(res.ring, res.modulus, res.row_degrees, [])
            got = free.hilbert_function(bound)
        if got != target:
            failures.append(f"module Hilbert mismatch: {got} vs {target}")
    return failures
