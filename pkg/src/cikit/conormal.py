"""The conormal module I/I^2 by two independent routes, Kaehler
differentials of S over the base field, the four-term Jacobi-Zariski
sequence, the evolution criterion, and hypothesis checkers.

Route A presents I/I^2 directly: generators of I modulo I^2 with relations
from syzygies.  Route B reads the presentation off the reduced Kaehler
complex of the minimal model.  Both must agree in Hilbert function and
minimal generator count; a disagreement is a bug, not a result.
"""

from __future__ import annotations

import warnings

from . import linalg
from .dgmodel import DgAlgebraModel, build_minimal_model, kahler_module
from .fields import Field
from .groebner import (
    FreeSlices,
    Ideal,
    ModulePresentation,
    ideal_as_module,
    minimal_generators,
    minimalize_presentation,
    syzygies,
)
from .koszul import koszul_h1
from .poly import Polynomial, monomial_mul
from .resolution import projdim_probe


class RouteDisagreement(RuntimeError):
    pass


class IllFormedMap(ValueError):
    pass


class ConormalModule:
    """Both presentations of I/I^2 plus the agreement certificate."""

    __slots__ = ("ideal", "route_a", "route_b", "hilbert", "mu", "degree_bound")

    def __init__(self, ideal, route_a, route_b, hilbert, mu, degree_bound):
        self.ideal = ideal
        self.route_a = route_a
        self.route_b = route_b
        self.hilbert = hilbert
        self.mu = mu
        self.degree_bound = degree_bound

    @property
    def presentation(self) -> ModulePresentation:
        return self.route_a


def conormal_route_a(ideal: Ideal, degree_bound: int) -> ModulePresentation:
    """I/I^2 presented by minimal generators of I with syzygy relations."""
    ring = ideal.ring
    _, selected = minimal_generators(ideal_as_module(ideal))
    gens = [ideal.generators[j] for j in selected]
    gen_degs = [g.homogeneous_degree() for g in gens]
    square_gens = [
        gens[i] * gens[j] for i in range(len(gens)) for j in range(i, len(gens))
    ]
    combined = ModulePresentation(
        ring, None, [0], [(g,) for g in gens] + [(q,) for q in square_gens]
    )
    syz = syzygies(combined, degree_bound)
    gb = ideal.groebner()
    t = len(gens)
    rel_cols = []
    for col in syz.columns:
        head = tuple(gb.normal_form(p) for p in col[:t])
        if any(not p.is_zero() for p in head):
            rel_cols.append(head)
    return ModulePresentation(ring, ideal, gen_degs, rel_cols)


def conormal(ideal: Ideal, degree_bound: int, model: DgAlgebraModel | None = None) -> ConormalModule:
    """Both routes with the agreement certificate; raises RouteDisagreement
    on any mismatch (which would be an implementation bug)."""
    route_a = conormal_route_a(ideal, degree_bound)
    if model is None:
        model = build_minimal_model(ideal, 3, degree_bound)
    route_b = kahler_module(model).conormal_presentation()
    hf_a = route_a.hilbert_function(degree_bound)
    hf_b = route_b.hilbert_function(degree_bound)
    mu_a = minimalize_presentation(route_a).nrows
    mu_b = minimalize_presentation(route_b).nrows
    if hf_a != hf_b:
        raise RouteDisagreement(f"conormal Hilbert functions differ: {hf_a} vs {hf_b}")
    if mu_a != mu_b:
        raise RouteDisagreement(f"conormal mu differs: {mu_a} vs {mu_b}")
    return ConormalModule(ideal, route_a, route_b, hf_a, mu_a, degree_bound)


# ---------------------------------------------------------------------------
# Kaehler differentials of S over the base field


def jacobian_columns(ideal: Ideal):
    """Columns (df/dx_1, ..., df/dx_n) for each generator, entries over R.

    In characteristic p a partial derivative can vanish identically; that is
    surfaced as a warning, not an error.
    """
    ring = ideal.ring
    cols = []
    for g in ideal.generators:
        col = tuple(g.partial_derivative(i) for i in range(ring.nvars))
        if g.homogeneous_degree() >= 1 and all(p.is_zero() for p in col):
            warnings.warn(
                f"all partial derivatives of {g} vanish (characteristic "
                f"{ring.field.characteristic} effect)",
                RuntimeWarning,
            )
        cols.append(col)
    return cols


def kahler_s_over_k(ideal: Ideal) -> ModulePresentation:
    """Omega_{S/K} as the cokernel over S of the Jacobian matrix
    d: generators of I -> sum (df/dx_i) dx_i."""
    ring = ideal.ring
    gb = ideal.groebner()
    cols = [
        tuple(gb.normal_form(p) for p in col) for col in jacobian_columns(ideal)
    ]
    return ModulePresentation(ring, ideal, [1] * ring.nvars, cols)


# ---------------------------------------------------------------------------
# slice helpers for the kernel of d: I/I^2 -> S (x) Omega_{R/K}


def _ideal_slice_basis(ideal: Ideal, d: int):
    """Canonical basis (coordinate rows) of the degree-d slice of I."""
    return linalg.rref(ideal.slice_rows(d), ideal.ring.field)[0]


def _coords_to_poly(ring, coords, d: int) -> Polynomial:
    mons = ring.monomials_of_degree(d)
    F = ring.field
    return Polynomial(
        ring, {m: c for m, c in zip(mons, coords) if not F.is_zero(c)}
    )


def _poly_coords(ring, p: Polynomial, d: int):
    mons = ring.monomials_of_degree(d)
    pos = {m: i for i, m in enumerate(mons)}
    row = [ring.field.zero()] * len(mons)
    for m, c in p.terms.items():
        row[pos[m]] = c
    return row


def differential_kernel_slice(ideal: Ideal, d: int):
    """Basis of {v in I_d : all partials of v lie in I_{d-1}}, i.e. the
    degree-d slice of the kernel of d: I/I^2 -> S^n before dividing by I^2.

    Vectors come back as polynomials.
    """
    ring = ideal.ring
    field = ring.field
    basis = _ideal_slice_basis(ideal, d)
    if not basis:
        return []
    lower = _ideal_slice_basis(ideal, d - 1)
    lower_dim = len(ring.monomials_of_degree(d - 1))
    # map: candidate coefficients -> n stacked quotient coordinates
    cols = []
    for vec in basis:
        v = _coords_to_poly(ring, vec, d)
        stacked = []
        for i in range(ring.nvars):
            stacked.extend(_poly_coords(ring, v.partial_derivative(i), d - 1))
        cols.append(stacked)
    subspace = []
    for w in lower:
        for i in range(ring.nvars):
            row = [field.zero()] * (ring.nvars * lower_dim)
            row[i * lower_dim : (i + 1) * lower_dim] = w
            subspace.append(row)
    coeffs = linalg.kernel_modulo(cols, ring.nvars * lower_dim, subspace, field)
    out = []
    for cvec in coeffs:
        p = ring.zero()
        for c, bvec in zip(cvec, basis):
            if not field.is_zero(c):
                p = p + _coords_to_poly(ring, bvec, d).scale(c)
        out.append(p)
    return out


# ---------------------------------------------------------------------------
# Jacobi-Zariski four-term exactness


class JacobiZariskiReport:
    """Slice-dimension table of 0 -> D1(S/K,S) -> I/I^2 -> S^n(-1) ->
    Omega_{S/K} -> 0; exact iff every alternating sum vanishes."""

    __slots__ = ("degrees", "d1", "conormal", "free", "omega", "failures")

    def __init__(self, degrees, d1, conormal, free, omega, failures):
        self.degrees = degrees
        self.d1 = d1
        self.conormal = conormal
        self.free = free
        self.omega = omega
        self.failures = failures

    @property
    def exact(self) -> bool:
        return not self.failures

    def rows(self):
        return list(zip(self.degrees, self.d1, self.conormal, self.free, self.omega))


def jacobi_zariski_check(
    ideal: Ideal, degree_bound: int, conormal_pres: ModulePresentation | None = None
) -> JacobiZariskiReport:
    """Each of the four modules is computed by its own machinery; the
    alternating slice sums vanishing in every degree is the consistency
    statement."""
    ring = ideal.ring
    from .groebner import quotient_hilbert_by_monomials

    if conormal_pres is None:
        conormal_pres = conormal_route_a(ideal, degree_bound)
    hf_conormal = conormal_pres.hilbert_function(degree_bound)
    hf_s = quotient_hilbert_by_monomials(ideal, degree_bound)
    hf_free = [0] + [ring.nvars * hf_s[d - 1] for d in range(1, degree_bound + 1)]
    omega = kahler_s_over_k(ideal)
    hf_omega = omega.hilbert_function(degree_bound)

    sq = Ideal(ring, [a * b for a in ideal.generators for b in ideal.generators])
    hf_d1 = []
    for d in range(degree_bound + 1):
        k = len(differential_kernel_slice(ideal, d))
        hf_d1.append(k - sq.slice_dim(d) if k else 0)

    failures = []
    for d in range(degree_bound + 1):
        alt = hf_d1[d] - hf_conormal[d] + hf_free[d] - hf_omega[d]
        if alt != 0:
            failures.append(f"degree {d}: alternating sum {alt}")
    return JacobiZariskiReport(
        list(range(degree_bound + 1)), hf_d1, hf_conormal, hf_free, hf_omega, failures
    )


# ---------------------------------------------------------------------------
# evolutions: the minimal-generator kernel criterion


class EvolutionVerdict:
    __slots__ = ("kind", "witness")

    def __init__(self, kind: str, witness=None):
        self.kind = kind  # "trivial_only" | "nontrivial_possible"
        self.witness = witness

    def __repr__(self):
        if self.kind == "trivial_only":
            return "TrivialEvolutionsOnly"
        return f"NontrivialEvolutionPossible(witness={self.witness})"


def lenstra_evolution_check(ideal: Ideal) -> EvolutionVerdict:
    """Only trivial evolutions exist iff no minimal generator of I/I^2 is
    killed by d, i.e. ker(d), sliced in the generating degrees, sits inside
    m_S * (I/I^2)."""
    ring = ideal.ring
    if not ring.field.is_rationals:
        raise ValueError("the evolution criterion is applied over char 0")
    field = ring.field
    _, selected = minimal_generators(ideal_as_module(ideal))
    gen_degrees = sorted({ideal.generators[j].homogeneous_degree() for j in selected})
    sq = Ideal(ring, [a * b for a in ideal.generators for b in ideal.generators])
    for d in gen_degrees:
        kernel_vectors = differential_kernel_slice(ideal, d)
        if not kernel_vectors:
            continue
        # m*(I/I^2) + I^2 at degree d: x_i * I_{d-1} plus I^2_d
        denom = list(sq.slice_rows(d))
        for w in _ideal_slice_basis(ideal, d - 1):
            p = _coords_to_poly(ring, w, d - 1)
            for i in range(ring.nvars):
                denom.append(_poly_coords(ring, p.mul_monomial(_unit(ring.nvars, i)), d))
        kern_rows = [_poly_coords(ring, v, d) for v in kernel_vectors]
        stray = linalg.independent_subset(denom, kern_rows, field)
        if stray:
            return EvolutionVerdict("nontrivial_possible", kernel_vectors[stray[0]])
    return EvolutionVerdict("trivial_only")


def _unit(nvars, i):
    e = [0] * nvars
    e[i] = 1
    return tuple(e)


# ---------------------------------------------------------------------------
# injective-into-finite-projective-dimension hypothesis check


class SharpVCReport:
    __slots__ = ("alpha_mod_k_injective", "target_probe", "hypotheses_hold", "ci_asserted")

    def __init__(self, injective, probe, hold, ci_asserted):
        self.alpha_mod_k_injective = injective
        self.target_probe = probe
        self.hypotheses_hold = hold
        self.ci_asserted = ci_asserted


def sharpvc_hypothesis_check(
    ideal: Ideal,
    alpha,  # matrix: rows over target generators, cols over conormal generators
    target: ModulePresentation,
    length_bound: int,
    degree_bound: int,
    ci_predicate=None,
) -> SharpVCReport:
    """Check (a) alpha (x) k injective, (b) target has finite projective
    dimension; if both hold the complete-intersection certificate must hold
    for I (an executable instance of the conormal rigidity theorem), which
    is asserted through ``ci_predicate`` when provided."""
    ring = ideal.ring
    field = ring.field
    source = conormal_route_a(ideal, degree_bound)
    if len(alpha) != target.nrows or any(len(r) != source.nrows for r in alpha):
        raise IllFormedMap("alpha has the wrong shape")
    # well-formedness: alpha maps every relation of I/I^2 into the target's
    # relation submodule
    for col, cdeg in zip(source.columns, source.col_degrees):
        image = []
        for i in range(target.nrows):
            acc = ring.zero()
            for j in range(source.nrows):
                acc = acc + alpha[i][j] * col[j]
            image.append(acc)
        image = tuple(image)
        if all(p.is_zero() for p in image):
            continue
        d = None
        for p, rd in zip(image, target.row_degrees):
            if p.is_zero():
                continue
            e = p.homogeneous_degree() + rd
            if d is None:
                d = e
            elif d != e:
                raise IllFormedMap("alpha is not degree-homogeneous")
        span = target.span_slice_rows(d)
        vec = target.slices().coords(image, d)
        if not linalg.span_contains_all(span, [vec], field):
            raise IllFormedMap("alpha does not respect the conormal relations")

    # alpha (x) k: degree-0 entries between generators of equal degree
    cols_k = []
    for j in range(source.nrows):
        col = []
        for i in range(target.nrows):
            p = alpha[i][j]
            if (
                not p.is_zero()
                and target.row_degrees[i] == source.row_degrees[j]
            ):
                col.append(p.constant_coefficient())
            else:
                col.append(field.zero())
        cols_k.append(col)
    injective = linalg.rank(cols_k, field) == source.nrows

    probe = projdim_probe(target, length_bound, degree_bound)
    hold = injective and probe.is_finite()
    ci_asserted = None
    if hold and ci_predicate is not None:
        ci_asserted = bool(ci_predicate(ideal))
        if not ci_asserted:
            raise RouteDisagreement(
                "sharp hypothesis check passed but the CI certificate failed"
            )
    return SharpVCReport(injective, probe, hold, ci_asserted)


# ---------------------------------------------------------------------------
# cross-checks used by the harness


def mu_invariant_check(ideal: Ideal, degree_bound: int) -> bool:
    """mu(I/I^2) = mu(I) (graded Nakayama)."""
    _, selected = minimal_generators(ideal_as_module(ideal))
    pres = conormal_route_a(ideal, degree_bound)
    return minimalize_presentation(pres).nrows == len(selected)


def koszul_strand_crosscheck(ideal: Ideal, degree_bound: int, model: DgAlgebraModel):
    """The module presented by the degree-3 strand of the reduced Kaehler
    complex matches the first Koszul homology in mu and Hilbert function."""
    h1 = koszul_h1(ideal, degree_bound)
    strand = kahler_module(model).koszul_h1_strand()
    mu_h1 = h1.minimal_generator_count()
    mu_strand = minimalize_presentation(strand).nrows
    hf_h1 = h1.presentation.hilbert_function(degree_bound)
    hf_strand = strand.hilbert_function(degree_bound)
    ok = (mu_h1 == mu_strand) and (hf_h1 == hf_strand)
    return ok, {
        "mu_koszul": mu_h1,
        "mu_strand": mu_strand,
        "hf_koszul": hf_h1,
        "hf_strand": hf_strand,
    }
