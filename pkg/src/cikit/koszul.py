"""Koszul complexes on minimal generators and the first Koszul homology.

H1 is the test module for the Koszul-side rigidity theorem: it vanishes
exactly when the generators form a regular sequence, and its S-module
presentation here is (syzygies of the generators) modulo the Koszul
boundaries f_i e_j - f_j e_i.
"""

from __future__ import annotations

import itertools

from . import linalg
from .groebner import (
    FreeSlices,
    Ideal,
    ModulePresentation,
    ideal_as_module,
    minimal_generators,
    quotient_hilbert_by_monomials,
    scatter_multiples,
    syzygies,
    compose_is_zero,
)


class KoszulComplex:
    """Exterior complex on c generators; degree-i bases are the sorted
    i-subsets of the generator indices, differential sign (-1)^(j+1) on
    removal of the j-th factor."""

    __slots__ = ("ideal", "generators", "gen_degrees", "maps")

    def __init__(self, ideal: Ideal, generators):
        self.ideal = ideal
        self.generators = list(generators)
        self.gen_degrees = [g.homogeneous_degree() for g in self.generators]
        self.maps = [self._differential(i) for i in range(1, len(self.generators) + 1)]

    def basis(self, i: int):
        return list(itertools.combinations(range(len(self.generators)), i))

    def rank(self, i: int) -> int:
        c = len(self.generators)
        if i < 0 or i > c:
            return 0
        import math

        return math.comb(c, i)

    def subset_degree(self, subset) -> int:
        return sum(self.gen_degrees[t] for t in subset)

    def _differential(self, i: int) -> ModulePresentation:
        """Matrix of Lambda^i -> Lambda^(i-1) as a module presentation."""
        ring = self.ideal.ring
        rows = self.basis(i - 1)
        row_pos = {s: p for p, s in enumerate(rows)}
        columns = []
        for subset in self.basis(i):
            col = [ring.zero()] * len(rows)
            for j, t in enumerate(subset):
                rest = subset[:j] + subset[j + 1 :]
                f = self.generators[t]
                col[row_pos[rest]] = f if j % 2 == 0 else -f
            columns.append(tuple(col))
        return ModulePresentation(
            ring, None, [self.subset_degree(s) for s in rows], columns
        )

    def verify_d_squared(self) -> bool:
        return all(
            compose_is_zero(self.maps[i], self.maps[i + 1]) for i in range(len(self.maps) - 1)
        )

    def rank_profile(self):
        return [self.rank(i) for i in range(len(self.generators) + 1)]


def koszul_complex(ideal: Ideal) -> KoszulComplex:
    """Koszul complex on a minimal generating set of the ideal."""
    pres = ideal_as_module(ideal)
    _, selected = minimal_generators(pres)
    return KoszulComplex(ideal, [ideal.generators[j] for j in selected])


class KoszulH1:
    """First Koszul homology with its S-module presentation.

    ``cycle_reps`` are vectors a with sum(a_j f_j) = 0 representing the
    chosen minimal generators; ``presentation`` has one row per chosen
    cycle and columns generating all relations among their classes.
    """

    __slots__ = ("complex", "cycle_reps", "cycle_degrees", "presentation", "degree_bound")

    def __init__(self, complex, cycle_reps, cycle_degrees, presentation, degree_bound):
        self.complex = complex
        self.cycle_reps = cycle_reps
        self.cycle_degrees = cycle_degrees
        self.presentation = presentation
        self.degree_bound = degree_bound

    def is_zero(self) -> bool:
        return not self.cycle_reps

    def minimal_generator_count(self) -> int:
        return len(self.cycle_reps)

    def hilbert_function(self, bound: int):
        """dim_k H1 in each degree, computed from the presentation."""
        return self.presentation.hilbert_function(bound)

    def direct_hilbert_function(self, bound: int):
        """dim Z_1 - dim B_1 per degree, straight from the complex (an
        independent route to the same numbers)."""
        cx = self.complex
        ring = cx.ideal.ring
        field = ring.field
        if not cx.generators:
            return [0] * (bound + 1)
        d1 = cx.maps[0]
        dom = FreeSlices(ring, cx.gen_degrees)
        tgt = d1.slices()
        out = []
        for d in range(bound + 1):
            dim_dom = dom.dim(d)
            if dim_dom == 0:
                out.append(0)
                continue
            rows = []
            for j, m in dom.basis(d):
                vec = tuple(p.mul_monomial(m) for p in d1.columns[j])
                rows.append(tgt.coords(vec, d))
            cycle_dim = dim_dom - linalg.rank(rows, field)
            boundary_dim = cx.maps[1].image_slice_dim(d) if len(cx.maps) > 1 else 0
            out.append(cycle_dim - boundary_dim)
        return out


def koszul_h1(ideal: Ideal, degree_bound: int) -> KoszulH1:
    cx = koszul_complex(ideal)
    ring = ideal.ring
    field = ring.field
    gens = cx.generators
    c = len(gens)
    if c == 0:
        pres = ModulePresentation(ring, ideal, [], [])
        return KoszulH1(cx, [], [], pres, degree_bound)

    gen_module = ModulePresentation(ring, None, [0], [(g,) for g in gens])
    cycles = syzygies(gen_module, degree_bound)  # columns: vectors in R^c... rows of R^1

    # reorient: syzygies of the 1-row presentation live in the free module on
    # the generator degrees
    cycle_cols = cycles.columns
    cycle_degs = cycles.col_degrees

    boundary_cols = []
    for i in range(c):
        for j in range(i + 1, c):
            col = [ring.zero()] * c
            col[i] = gens[j]
            col[j] = -gens[i]
            boundary_cols.append(tuple(col))

    # minimal generators of Z/B over S: candidates are the cycle generators,
    # denominator = boundaries + m * Z
    dom = FreeSlices(ring, cx.gen_degrees)
    chosen: list[int] = []
    for d in sorted(set(cycle_degs)):
        denom = []
        for b in boundary_cols:
            bd = _vec_degree(b, cx.gen_degrees)
            if bd is not None and bd <= d:
                denom.extend(scatter_multiples(dom, b, bd, d))
        for col, cd in zip(cycle_cols, cycle_degs):
            if cd <= d:
                denom.extend(scatter_multiples(dom, col, cd, d, proper_only=True))
        cands = [dom.coords(cycle_cols[j], d) for j in range(len(cycle_cols)) if cycle_degs[j] == d]
        cand_idx = [j for j in range(len(cycle_cols)) if cycle_degs[j] == d]
        for c_i in linalg.independent_subset(denom, cands, field):
            chosen.append(cand_idx[c_i])
    chosen.sort()
    reps = [cycle_cols[j] for j in chosen]
    rep_degs = [cycle_degs[j] for j in chosen]

    # relations among the chosen classes: syzygies over R of [reps | boundaries],
    # first block of coordinates, reduced mod I
    combined = ModulePresentation(ring, None, cx.gen_degrees, list(reps) + boundary_cols)
    rel = syzygies(combined, degree_bound)
    gb = ideal.groebner()
    rel_cols = []
    t = len(reps)
    for col in rel.columns:
        head = tuple(gb.normal_form(p) for p in col[:t])
        if any(not p.is_zero() for p in head):
            rel_cols.append(head)
    presentation = ModulePresentation(ring, ideal, rep_degs, rel_cols)
    return KoszulH1(cx, reps, rep_degs, presentation, degree_bound)


def _vec_degree(vec, row_degrees):
    for p, rd in zip(vec, row_degrees):
        if not p.is_zero():
            return p.homogeneous_degree() + rd
    return None


def h1_free_summand_probe(h1: KoszulH1) -> str:
    """Detect a free S-summand of H1 within the computed degree range.

    Searches for a graded map H1 -> S sending some minimal generator to 1;
    such a map splits off a free summand.  Returns "FreeSummand" or
    "NoneFoundWithinBound".
    """
    if h1.is_zero():
        return "NoneFoundWithinBound"
    pres = h1.presentation
    ring = pres.ring
    field = ring.field
    ideal = pres.modulus
    gb = ideal.groebner()
    leads = gb.lead_monomials()

    from .poly import monomial_divides

    def standard_monomials(d):
        return [
            m
            for m in ring.monomials_of_degree(d)
            if not any(monomial_divides(lm, m) for lm in leads)
        ]

    t = len(h1.cycle_degrees)
    for i in range(t):
        a_i = h1.cycle_degrees[i]
        # unknowns: coefficients of s_j over standard monomials of S in
        # degree a_j - a_i
        unknowns = []  # (j, monomial)
        for j, a_j in enumerate(h1.cycle_degrees):
            for m in standard_monomials(a_j - a_i) if a_j >= a_i else []:
                unknowns.append((j, m))
        upos = {u: p for p, u in enumerate(unknowns)}
        rows = []
        rhs = []
        # pin phi(g_i) = 1
        unit = (i, (0,) * ring.nvars)
        if unit not in upos:
            continue
        row = [field.zero()] * len(unknowns)
        row[upos[unit]] = field.one()
        rows.append(row)
        rhs.append(field.one())
        # each relation column r: sum_j r_j s_j = 0 in S
        for col, cdeg in zip(pres.columns, pres.col_degrees):
            out_deg = cdeg - a_i
            mons = standard_monomials(out_deg) if out_deg >= 0 else []
            pos_of = {m: p for p, m in enumerate(mons)}
            block = [[field.zero()] * len(unknowns) for _ in mons]
            for (j, m), p in upos.items():
                prod = gb.normal_form(col[j].mul_monomial(m))
                for pm, pc in prod.terms.items():
                    block[pos_of[pm]][p] = field.add(block[pos_of[pm]][p], pc)
            for brow in block:
                rows.append(brow)
                rhs.append(field.zero())
        if linalg.solve(rows, len(unknowns), rhs, field) is not None:
            return "FreeSummand"
    return "NoneFoundWithinBound"
