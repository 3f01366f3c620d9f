"""Graded-commutative dg algebras R[X] and degree-by-degree minimal models.

A model is built stage by stage: X_1 kills a minimal generating set of the
ideal, and each X_n (n >= 2) kills a minimal generating set of the homology
H_{n-1} of the previous stage, chosen slice-by-slice in increasing internal
degree through exact linear algebra.  Odd-degree variables square to zero,
even ones are polynomial; all sign bookkeeping is funnelled through one
monomial-merge routine so the Koszul sign convention lives in a single spot.

The construction refuses characteristic 2 (globally) and prime fields with
p <= the homological bound: even-variable p-th powers would create spurious
homology that a strictly graded-commutative model cannot kill minimally.
"""

from __future__ import annotations

import itertools
from bisect import bisect_right

from . import linalg
from .fields import Field
from .groebner import (
    Ideal,
    ideal_as_module,
    minimal_generators,
    ModulePresentation,
    quotient_hilbert_by_monomials,
)
from .poly import PolyRing, Polynomial, monomial_mul


class ModelError(RuntimeError):
    pass


class CharacteristicTooSmall(ModelError):
    pass


class DgVariable:
    __slots__ = ("name", "hdeg", "intdeg", "index")

    def __init__(self, name: str, hdeg: int, intdeg: int, index: int):
        self.name = name
        self.hdeg = hdeg
        self.intdeg = intdeg
        self.index = index

    @property
    def is_odd(self) -> bool:
        return self.hdeg % 2 == 1

    def __repr__(self):
        return f"{self.name}[{self.hdeg},{self.intdeg}]"


class DgElement:
    """Normal-form element of R[X]: {(ring exponents, dg monomial): coeff}.

    A dg monomial is a tuple of (variable index, exponent) pairs sorted by
    index, odd variables with exponent one.
    """

    __slots__ = ("model", "terms")

    def __init__(self, model: "DgAlgebraModel", terms: dict):
        self.model = model
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, DgElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        F = self.model.field
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = F.add(out.get(key, F.zero()), c)
            if F.is_zero(s):
                out.pop(key, None)
            else:
                out[key] = s
        return DgElement(self.model, out)

    def __neg__(self):
        F = self.model.field
        return DgElement(self.model, {k: F.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        F = self.model.field
        if F.is_zero(c):
            return self.model.zero()
        return DgElement(self.model, {k: F.mul(c, v) for k, v in self.terms.items()})

    def __mul__(self, other):
        model = self.model
        F = model.field
        out: dict = {}
        for (m1, w1), c1 in self.terms.items():
            for (m2, w2), c2 in other.terms.items():
                merged = model.dgmon_mul(w1, w2)
                if merged is None:
                    continue
                sign, w = merged
                m = monomial_mul(m1, m2)
                c = F.mul(c1, c2)
                if sign < 0:
                    c = F.neg(c)
                key = (m, w)
                s = F.add(out.get(key, F.zero()), c)
                if F.is_zero(s):
                    out.pop(key, None)
                else:
                    out[key] = s
        return DgElement(model, out)

    # -- degree bookkeeping ------------------------------------------------

    def homological_degree(self) -> int:
        degs = {self.model.dgmon_hdeg(w) for (_, w) in self.terms}
        if not degs:
            return -1
        if len(degs) > 1:
            raise ModelError(f"mixed homological degrees {sorted(degs)}")
        return degs.pop()

    def internal_degree(self) -> int:
        degs = {sum(m) + self.model.dgmon_intdeg(w) for (m, w) in self.terms}
        if not degs:
            return -1
        if len(degs) > 1:
            raise ModelError(f"mixed internal degrees {sorted(degs)}")
        return degs.pop()

    def ring_part(self) -> Polynomial:
        """The variable-free component, as a ring polynomial."""
        return Polynomial(
            self.model.ring,
            {m: c for (m, w), c in self.terms.items() if not w},
        )

    def in_augmentation_square(self) -> bool:
        """Every term in m_R*A + m_A^2 (no unit coefficient on a bare
        variable and no constant term)."""
        for (m, w), _ in self.terms.items():
            if any(m):
                continue
            if self.model.dgmon_length(w) < 2:
                return False
        return True

    # -- printing ------------------------------------------------------------

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        model = self.model
        F = model.field
        names = model.ring.names
        items = sorted(
            self.terms.items(),
            key=lambda kv: (kv[0][1], tuple(-e for e in kv[0][0])),
        )
        parts = []
        for (m, w), c in items:
            factors = []
            for n, e in zip(names, m):
                if e:
                    factors.append(n if e == 1 else f"{n}^{e}")
            for v, e in w:
                nm = model.variables[v].name
                factors.append(nm if e == 1 else f"{nm}^{e}")
            cs = F.to_str(c)
            negative = cs.startswith("-")
            if negative:
                cs = cs[1:]
            body = "*".join(factors) if factors else cs
            if factors and cs != "1":
                body = f"{cs}*{body}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"<dg {self.to_string()}>"


class DgDerivation:
    """R-linear derivation determined by its values on the dg variables.

    ``degree`` is the homological degree; the Leibniz sign when passing a
    degree-j element is (-1)^(degree*j).
    """

    __slots__ = ("model", "degree", "values")

    def __init__(self, model: "DgAlgebraModel", degree: int, values: dict):
        self.model = model
        self.degree = degree
        self.values = values  # var index -> DgElement

    def apply(self, elem: DgElement) -> DgElement:
        return self.model.apply_derivation(self, elem)

    def is_chain(self) -> bool:
        """Commutes with the differential (checked on generators, which
        suffices: the graded commutator with d is itself a derivation)."""
        model = self.model
        sign_flip = self.degree % 2 == 1
        for v in range(len(model.variables)):
            theta_t = self.values.get(v, model.zero())
            lhs = model.differential(theta_t)
            rhs = self.apply(model.differentials[v])
            if sign_flip:
                rhs = -rhs
            if lhs != rhs:
                return False
        return True

    def lands_in_augmentation(self) -> bool:
        return all(
            val.is_zero() or _in_augmentation(val) for val in self.values.values()
        )


def _in_augmentation(elem: DgElement) -> bool:
    """Element of m_A = (m_R, X)A: no nonzero constant term."""
    for (m, w), _ in elem.terms.items():
        if not any(m) and not w:
            return False
    return True


class DgAlgebraModel:
    """R[X] with differential, truncated at (hdeg_bound, intdeg_bound)."""

    def __init__(self, ring: PolyRing, ideal: Ideal | None, hdeg_bound: int, intdeg_bound: int):
        self.ring = ring
        self.field: Field = ring.field
        self.ideal = ideal
        self.hdeg_bound = hdeg_bound
        self.intdeg_bound = intdeg_bound
        self.variables: list[DgVariable] = []
        self.differentials: list[DgElement] = []
        self.warnings: list[str] = []
        self._mon_cache: dict = {}
        self._basis_cache: dict = {}
        self._dw_cache: dict = {}
        self._diff_cache: dict = {}

    # -- construction ------------------------------------------------------

    def add_variable(self, hdeg: int, intdeg: int, differential: DgElement) -> DgVariable:
        index = len(self.variables)
        count = sum(1 for v in self.variables if v.hdeg == hdeg)
        var = DgVariable(f"t{hdeg}_{count + 1}", hdeg, intdeg, index)
        self.variables.append(var)
        self.differentials.append(differential)
        return var

    def zero(self) -> DgElement:
        return DgElement(self, {})

    def one(self) -> DgElement:
        return DgElement(self, {((0,) * self.ring.nvars, ()): self.field.one()})

    def embed(self, p: Polynomial) -> DgElement:
        return DgElement(self, {(m, ()): c for m, c in p.terms.items()})

    def var_element(self, index: int) -> DgElement:
        return DgElement(
            self, {((0,) * self.ring.nvars, ((index, 1),)): self.field.one()}
        )

    # -- monomial algebra ----------------------------------------------------

    def dgmon_hdeg(self, w) -> int:
        return sum(self.variables[v].hdeg * e for v, e in w)

    def dgmon_intdeg(self, w) -> int:
        return sum(self.variables[v].intdeg * e for v, e in w)

    def dgmon_length(self, w) -> int:
        return sum(e for _, e in w)

    def dgmon_mul(self, w1, w2):
        """Merge sorted dg monomials; returns (sign, monomial) or None when
        an odd variable squares."""
        if not w1:
            return 1, w2
        if not w2:
            return 1, w1
        odd1 = [v for v, _ in w1 if self.variables[v].hdeg % 2]
        merged = dict(w1)
        sign = 1
        for v, e in w2:
            if self.variables[v].hdeg % 2:
                if v in merged:
                    return None
                if (len(odd1) - bisect_right(odd1, v)) % 2:
                    sign = -sign
            merged[v] = merged.get(v, 0) + e
        return sign, tuple(sorted(merged.items()))

    def _expand_word(self, w):
        word = []
        for v, e in w:
            word.extend([v] * e)
        return word

    def _collapse_word(self, word):
        out = []
        for v in word:
            if out and out[-1][0] == v:
                out[-1] = (v, out[-1][1] + 1)
            else:
                out.append((v, 1))
        return tuple(out)

    # -- derivations ---------------------------------------------------------

    def apply_derivation(self, theta: DgDerivation, elem: DgElement) -> DgElement:
        F = self.field
        result = self.zero()
        flip = theta.degree % 2 == 1
        for (m, w), c in elem.terms.items():
            word = self._expand_word(w)
            prefix_deg = 0
            for pos, v in enumerate(word):
                val = theta.values.get(v)
                if val is not None and val.terms:
                    coeff = F.neg(c) if (flip and prefix_deg % 2) else c
                    head = DgElement(
                        self, {(m, self._collapse_word(word[:pos])): coeff}
                    )
                    tail = DgElement(
                        self,
                        {((0,) * self.ring.nvars, self._collapse_word(word[pos + 1 :])): F.one()},
                    )
                    result = result + head * val * tail
                prefix_deg += self.variables[v].hdeg
        return result

    def differential(self, elem: DgElement) -> DgElement:
        """d extended from the variables by the graded Leibniz rule."""
        F = self.field
        result = self.zero()
        for (m, w), c in elem.terms.items():
            if not w:
                continue
            dw = self._dw_cache.get(w)
            if dw is None:
                dw = self._differential_of_monomial(w)
                self._dw_cache[w] = dw
            for (dm, dww), dc in dw.terms.items():
                key = (monomial_mul(m, dm), dww)
                s = F.add(result.terms.get(key, F.zero()), F.mul(c, dc))
                if F.is_zero(s):
                    result.terms.pop(key, None)
                else:
                    result.terms[key] = s
        return result

    def _differential_of_monomial(self, w) -> DgElement:
        F = self.field
        out = self.zero()
        word = self._expand_word(w)
        prefix_deg = 0
        for pos, v in enumerate(word):
            dval = self.differentials[v]
            if dval.terms:
                coeff = F.neg(F.one()) if prefix_deg % 2 else F.one()
                head = DgElement(
                    self, {((0,) * self.ring.nvars, self._collapse_word(word[:pos])): coeff}
                )
                tail = DgElement(
                    self,
                    {((0,) * self.ring.nvars, self._collapse_word(word[pos + 1 :])): F.one()},
                )
                out = out + head * dval * tail
            prefix_deg += self.variables[v].hdeg
        return out

    # -- graded slices ---------------------------------------------------------

    def dg_monomials(self, hdeg: int):
        """All dg monomials of the given homological degree with internal
        degree within the truncation, over the current variables."""
        key = (len(self.variables), hdeg)
        if key not in self._mon_cache:
            out = []
            self._gen_monomials(0, hdeg, self.intdeg_bound, [], out)
            out.sort()
            self._mon_cache[key] = tuple(out)
        return self._mon_cache[key]

    def _gen_monomials(self, i, h_left, d_left, current, out):
        if h_left == 0:
            out.append(tuple(current))
            return
        if i >= len(self.variables):
            return
        v = self.variables[i]
        if v.hdeg > h_left:
            return  # variables are hdeg-sorted
        max_e = 1 if v.is_odd else h_left // v.hdeg
        max_e = min(max_e, d_left // v.intdeg)
        for e in range(max_e, -1, -1):
            if e:
                current.append((v.index, e))
            self._gen_monomials(
                i + 1, h_left - e * v.hdeg, d_left - e * v.intdeg, current, out
            )
            if e:
                current.pop()

    def slice_basis(self, hdeg: int, d: int):
        """Basis [(ring monomial, dg monomial)] of the (hdeg, d) slice."""
        key = (len(self.variables), hdeg, d)
        if key not in self._basis_cache:
            out = []
            for w in self.dg_monomials(hdeg):
                wd = self.dgmon_intdeg(w)
                for m in self.ring.monomials_of_degree(d - wd):
                    out.append((m, w))
            index = {b: p for p, b in enumerate(out)}
            self._basis_cache[key] = (out, index)
        return self._basis_cache[key]

    def slice_dim(self, hdeg: int, d: int) -> int:
        return len(self.slice_basis(hdeg, d)[0])

    def element_coords(self, elem: DgElement, hdeg: int, d: int):
        _, index = self.slice_basis(hdeg, d)
        row = [self.field.zero()] * len(index)
        for key, c in elem.terms.items():
            row[index[key]] = c
        return row

    def element_from_coords(self, coords, hdeg: int, d: int):
        basis, _ = self.slice_basis(hdeg, d)
        F = self.field
        return DgElement(
            self, {basis[p]: c for p, c in enumerate(coords) if not F.is_zero(c)}
        )

    def differential_rows(self, hdeg: int, d: int):
        """Images of the (hdeg, d) basis under d, as coordinate rows in the
        (hdeg-1, d) slice (cached per stage)."""
        key = (len(self.variables), hdeg, d)
        cached = self._diff_cache.get(key)
        if cached is not None:
            return cached
        basis, _ = self.slice_basis(hdeg, d)
        rows = []
        for m, w in basis:
            dw = self._dw_cache.get(w)
            if dw is None:
                dw = self._differential_of_monomial(w)
                self._dw_cache[w] = dw
            shifted = DgElement(
                self,
                {(monomial_mul(m, dm), dww): dc for (dm, dww), dc in dw.terms.items()},
            )
            rows.append(self.element_coords(shifted, hdeg - 1, d))
        self._diff_cache[key] = rows
        return rows

    def cycle_slice(self, hdeg: int, d: int):
        """Canonical basis of the degree-(hdeg, d) cycles."""
        basis, _ = self.slice_basis(hdeg, d)
        if not basis:
            return []
        rows = self.differential_rows(hdeg, d)
        target_dim = self.slice_dim(hdeg - 1, d)
        if target_dim == 0:
            eye = []
            one = self.field.one()
            zero = self.field.zero()
            for i in range(len(basis)):
                row = [zero] * len(basis)
                row[i] = one
                eye.append(row)
            return eye
        matrix = linalg.transpose(rows, target_dim, self.field)
        return linalg.nullspace(matrix, len(basis), self.field)

    def boundary_rows(self, hdeg: int, d: int):
        """Coordinate rows spanning the boundaries inside the (hdeg, d) slice."""
        if self.slice_dim(hdeg + 1, d) == 0:
            return []
        rows = self.differential_rows(hdeg + 1, d)
        return [r for r in rows if any(not self.field.is_zero(v) for v in r)]

    def homology_dim(self, hdeg: int, d: int) -> int:
        """dim ker - dim im by rank counts (no kernel basis materialised)."""
        dim_here = self.slice_dim(hdeg, d)
        if dim_here == 0:
            return 0
        if self.slice_dim(hdeg - 1, d) == 0:
            cycle_dim = dim_here
        else:
            cycle_dim = dim_here - linalg.rank(self.differential_rows(hdeg, d), self.field)
        boundaries = self.boundary_rows(hdeg, d)
        return cycle_dim - linalg.rank(boundaries, self.field)

    # -- variable bookkeeping ------------------------------------------------

    def variables_of_hdeg(self, h: int):
        return [v for v in self.variables if v.hdeg == h]

    def deviations(self):
        """epsilon_i = |X_i| for i = 1..hdeg_bound."""
        out = [0] * (self.hdeg_bound + 1)
        for v in self.variables:
            out[v.hdeg] += 1
        return out[1:]

    def dump(self) -> str:
        """One line per variable: `name : hdeg intdeg : differential`."""
        lines = []
        for v in self.variables:
            lines.append(
                f"{v.name} : {v.hdeg} {v.intdeg} : {self.differentials[v.index].to_string()}"
            )
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# model construction


def build_minimal_model(
    ideal: Ideal, hdeg_bound: int = 5, intdeg_bound: int = 12
) -> DgAlgebraModel:
    """Minimal model of R -> R/I with variables in degrees 1..hdeg_bound.

    After stage n the model kills H_{n-1}, so on completion H_i vanishes for
    0 < i < hdeg_bound within internal degree <= intdeg_bound.
    """
    ring = ideal.ring
    field = ring.field
    if field.p is not None and field.p <= hdeg_bound:
        raise CharacteristicTooSmall(
            f"GF({field.p}) with homological bound {hdeg_bound}: even-variable "
            f"p-th powers are not handled without divided powers"
        )
    if hdeg_bound < 2:
        raise ModelError("homological bound must be at least 2")

    model = DgAlgebraModel(ring, ideal, hdeg_bound, intdeg_bound)
    max_gen_degree = max((g.homogeneous_degree() for g in ideal.generators), default=0)
    if intdeg_bound < max_gen_degree * hdeg_bound:
        model.warnings.append(
            f"internal degree bound {intdeg_bound} is below (max generator "
            f"degree) * (homological bound) = {max_gen_degree * hdeg_bound}; "
            f"variables above the bound will be missed"
        )

    _, selected = minimal_generators(ideal_as_module(ideal))
    for j in selected:
        g = ideal.generators[j]
        model.add_variable(1, g.homogeneous_degree(), model.embed(g))

    for stage in range(2, hdeg_bound + 1):
        _adjoin_stage(model, stage)
    return model


def _adjoin_stage(model: DgAlgebraModel, n: int):
    """Adjoin X_n killing minimal generators of H_{n-1} of the current stage."""
    field = model.field
    nvars = model.ring.nvars
    h = n - 1
    cycle_slices: dict[int, list] = {}
    new_vars = []  # (intdeg, cycle element)

    # positions of bare-variable monomials (unit coefficient on one variable):
    # a minimal model never produces cycles through them, which we assert
    for d in range(0, model.intdeg_bound + 1):
        basis, _ = model.slice_basis(h, d)
        if not basis:
            cycle_slices[d] = []
            continue
        cycles = linalg.rref(model.cycle_slice(h, d), field)[0]
        cycle_slices[d] = cycles
        if not cycles:
            continue
        linear_positions = [
            pos
            for pos, (m, w) in enumerate(basis)
            if not any(m) and model.dgmon_length(w) == 1
        ]
        for z in cycles:
            for pos in linear_positions:
                if not field.is_zero(z[pos]):
                    raise ModelError(
                        f"cycle with unit linear term at stage {n}, degree {d}"
                    )
        denom = list(model.boundary_rows(h, d))
        prev = cycle_slices.get(d - 1, [])
        for zvec in prev:
            elem = model.element_from_coords(zvec, h, d - 1)
            for var in range(nvars):
                shifted = DgElement(
                    model,
                    {
                        (monomial_mul(m, _unit_exp(nvars, var)), w): c
                        for (m, w), c in elem.terms.items()
                    },
                )
                denom.append(model.element_coords(shifted, h, d))
        chosen = linalg.independent_subset(denom, cycles, field)
        for c in chosen:
            new_vars.append((d, model.element_from_coords(cycles[c], h, d)))

    for intdeg, cycle in new_vars:
        model.add_variable(n, intdeg, cycle)


def _unit_exp(nvars: int, var: int):
    e = [0] * nvars
    e[var] = 1
    return tuple(e)


# ---------------------------------------------------------------------------
# stages, fibers, verification


def stage_algebra(model: DgAlgebraModel, n: int) -> DgAlgebraModel:
    """A_(n) = R[X_<n] with the restricted differential."""
    sub = DgAlgebraModel(model.ring, model.ideal, n - 1, model.intdeg_bound)
    for v in model.variables:
        if v.hdeg < n:
            diff = model.differentials[v.index]
            sub.add_variable(v.hdeg, v.intdeg, DgElement(sub, dict(diff.terms)))
        else:
            break
    return sub


def fiber_algebra(model: DgAlgebraModel, n: int) -> DgAlgebraModel:
    """A^(n) = k[X_>=n]: kill m_R and the variables below stage n."""
    kring = PolyRing(model.ring.field, ())
    fiber = DgAlgebraModel(kring, None, model.hdeg_bound, model.intdeg_bound)
    keep = [v for v in model.variables if v.hdeg >= n]
    remap = {v.index: i for i, v in enumerate(keep)}
    for v in keep:
        diff = model.differentials[v.index]
        terms = {}
        for (m, w), c in diff.terms.items():
            if any(m):
                continue
            if any(vv not in remap for vv, _ in w):
                continue
            terms[((), tuple((remap[vv], e) for vv, e in w))] = c
        placeholder = DgElement(fiber, terms)
        fiber.add_variable(v.hdeg, v.intdeg, placeholder)
    return fiber


def stage_and_fiber(model: DgAlgebraModel, n: int):
    return stage_algebra(model, n), fiber_algebra(model, n)


def verify_model_differential(model: DgAlgebraModel):
    """d^2 = 0 on every variable and minimality of every differential."""
    failures = []
    for v in model.variables:
        if not model.differential(model.differentials[v.index]).is_zero():
            failures.append(f"d^2 != 0 on {v.name}")
        if not model.differentials[v.index].in_augmentation_square():
            failures.append(f"differential of {v.name} not in m_R*A + m_A^2")
    return failures


def verify_model_acyclicity(model: DgAlgebraModel):
    """H_0 = S (against the Groebner standard-monomial count) and H_i = 0
    for 0 < i < hdeg_bound, within the internal degree bound."""
    failures = []
    target_hf = quotient_hilbert_by_monomials(model.ideal, model.intdeg_bound)
    for d in range(model.intdeg_bound + 1):
        h0 = model.ring.slice_dim(d) - linalg.rank(
            model.boundary_rows(0, d), model.field
        )
        if h0 != target_hf[d]:
            failures.append(f"H_0 mismatch at degree {d}: {h0} vs {target_hf[d]}")
    for i in range(1, model.hdeg_bound):
        for d in range(model.intdeg_bound + 1):
            hd = model.homology_dim(i, d)
            if hd != 0:
                failures.append(f"H_{i} nonzero at degree {d}: dim {hd}")
    return failures


def verify_model(model: DgAlgebraModel):
    """Full invariant suite; returns failure strings."""
    return verify_model_differential(model) + verify_model_acyclicity(model)


def deviations(model: DgAlgebraModel):
    return model.deviations()


def dg_multiply(a: DgElement, b: DgElement) -> DgElement:
    if a.model is not b.model:
        raise ModelError("elements of different models")
    return a * b


def apply_derivation(theta: DgDerivation, a: DgElement) -> DgElement:
    return theta.apply(a)


# ---------------------------------------------------------------------------
# Kaehler dg module


class KahlerDgModule:
    """Omega_{A/R}: free A-module on dX with the universal-derivation
    differential, together with its reduction S (x)_A Omega.

    ``reduced_matrix(i)`` is the degree-i differential of the reduced
    complex: a matrix over S with rows indexed by X_{i-1} and columns by
    X_i.  Its homological degree-1 cokernel presents I/I^2; the degree-2
    cokernel presents the first Koszul homology.
    """

    __slots__ = ("model", "deltas", "_matrices")

    def __init__(self, model: DgAlgebraModel):
        self.model = model
        # delta(t) = d(del t) as an Omega element: {var index: A-coefficient}
        self.deltas = {
            v.index: universal_derivative(model, model.differentials[v.index])
            for v in model.variables
        }
        self._matrices: dict = {}

    def reduced_matrix(self, i: int) -> ModulePresentation:
        """S-matrix of (S (x) Omega)_i -> (S (x) Omega)_{i-1}."""
        if i in self._matrices:
            return self._matrices[i]
        model = self.model
        gb = model.ideal.groebner()
        rows = model.variables_of_hdeg(i - 1)
        cols = model.variables_of_hdeg(i)
        row_pos = {v.index: p for p, v in enumerate(rows)}
        columns = []
        for c in cols:
            col = [model.ring.zero()] * len(rows)
            for tvar, coeff in self.deltas[c.index].items():
                if tvar not in row_pos:
                    continue
                col[row_pos[tvar]] = gb.normal_form(coeff.ring_part())
            columns.append(tuple(col))
        pres = ModulePresentation(
            model.ring, model.ideal, [v.intdeg for v in rows], columns
        )
        self._matrices[i] = pres
        return pres

    def conormal_presentation(self) -> ModulePresentation:
        """(S(x)Omega)_2 -> (S(x)Omega)_1, a minimal presentation of I/I^2."""
        return self.reduced_matrix(2)

    def koszul_h1_strand(self) -> ModulePresentation:
        """(S(x)Omega)_3 -> (S(x)Omega)_2, presenting the first Koszul homology."""
        return self.reduced_matrix(3)

    def verify(self):
        """d^2 = 0 on the reduced complex and minimality of its entries."""
        failures = []
        model = self.model
        from .groebner import compose_is_zero

        for i in range(2, model.hdeg_bound + 1):
            upper = self.reduced_matrix(i)
            for col in upper.columns:
                for p in col:
                    if not p.is_zero() and p.homogeneous_degree() == 0:
                        failures.append(f"reduced complex not minimal in degree {i}")
            if i >= 3 and not compose_is_zero(self.reduced_matrix(i - 1), upper):
                failures.append(f"reduced d^2 != 0 at degree {i}")
        # full Omega differential squares to zero on the basis elements dt
        for v in model.variables:
            dd = omega_differential(self, self.deltas[v.index])
            if any(not coeff.is_zero() for coeff in dd.values()):
                failures.append(f"Omega d^2 != 0 on d{v.name}")
        return failures


def universal_derivative(model: DgAlgebraModel, elem: DgElement) -> dict:
    """d(elem) in Omega_{A/R}, as {variable index: A-coefficient}.

    Terms a*dt are stored with dt on the right; extracting the factor at
    position j costs the Koszul sign (-1)^(|t| * |suffix|).
    """
    F = model.field
    out: dict = {}
    for (m, w), c in elem.terms.items():
        word = model._expand_word(w)
        suffix_degs = [0] * (len(word) + 1)
        for pos in range(len(word) - 1, -1, -1):
            suffix_degs[pos] = suffix_degs[pos + 1] + model.variables[word[pos]].hdeg
        for pos, v in enumerate(word):
            vdeg = model.variables[v].hdeg
            sign = -1 if (vdeg % 2) and (suffix_degs[pos + 1] % 2) else 1
            rest = model._collapse_word(word[:pos] + word[pos + 1 :])
            coeff = F.mul(c, F.of_int(sign))
            entry = out.get(v, model.zero())
            out[v] = entry + DgElement(model, {(m, rest): coeff})
    return {v: e for v, e in out.items() if not e.is_zero()}


def omega_differential(kahler: KahlerDgModule, omega_elem: dict) -> dict:
    """Differential of sum(a_t dt): del(a) dt + (-1)^|a| a * d(del t)."""
    model = kahler.model
    out: dict = {}

    def add(v, elem):
        cur = out.get(v, model.zero())
        s = cur + elem
        if s.is_zero():
            out.pop(v, None)
        else:
            out[v] = s

    for t, a in omega_elem.items():
        da = model.differential(a)
        if not da.is_zero():
            add(t, da)
        adeg = a.homological_degree()
        sign = -1 if (adeg >= 0 and adeg % 2) else 1
        for t2, b in kahler.deltas[t].items():
            term = a * b
            if sign < 0:
                term = -term
            if not term.is_zero():
                add(t2, term)
    return out


def kahler_module(model: DgAlgebraModel) -> KahlerDgModule:
    return KahlerDgModule(model)
