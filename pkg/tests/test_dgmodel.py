import random

import pytest

from cikit import groebner as gr
from cikit.dgmodel import (
    CharacteristicTooSmall,
    DgDerivation,
    build_minimal_model,
    dg_multiply,
    fiber_algebra,
    kahler_module,
    stage_and_fiber,
    verify_model,
)
from cikit.fields import QQ, GF
from cikit.poly import PolyRing


@pytest.fixture
def R():
    return PolyRing(QQ, ["x", "y"])


def ideal(ring, *texts):
    return gr.Ideal(ring, [ring.from_string(t) for t in texts])


def model_for(ring, *texts, hdeg=4, intdeg=12):
    return build_minimal_model(ideal(ring, *texts), hdeg, intdeg)


def test_ci_model_is_koszul_complex(R):
    m = model_for(R, "x^2", "y^2", hdeg=5)
    assert m.deviations() == [2, 0, 0, 0, 0]
    assert verify_model(m) == []


def test_aci_stages(R):
    m = model_for(R, "x^2", "x*y")
    assert m.deviations()[:3] == [2, 1, 1]
    dump = m.dump().splitlines()
    assert dump[0] == "t1_1 : 1 2 : x^2"
    assert dump[1] == "t1_2 : 1 2 : x*y"
    assert dump[2] == "t2_1 : 2 3 : y*t1_1 - x*t1_2"
    assert dump[3] == "t3_1 : 3 4 : t1_1*t1_2 + x*t2_1"
    assert verify_model(m) == []


def test_m2_deviations(R):
    m = model_for(R, "x^2", "x*y", "y^2")
    assert m.deviations()[:2] == [3, 2]
    assert verify_model(m) == []


def test_graded_commutativity(R):
    m = model_for(R, "x^2", "x*y")
    t1, t2 = m.var_element(0), m.var_element(1)
    assert (t1 * t1).is_zero()                    # odd square
    assert (t1 * t2 + t2 * t1).is_zero()          # anticommutation
    x = m.embed(R.from_string("x"))
    assert (x * t1) * t2 == x * (t1 * t2)
    assert dg_multiply(x * t1, t2) == x * (t1 * t2)


def test_differential_squares_to_zero_on_products(R):
    m = model_for(R, "x^2", "x*y", "y^2")
    rng = random.Random(2)
    els = [m.var_element(i) for i in range(len(m.variables))]
    els.append(m.embed(R.from_string("x + 2*y")))
    for _ in range(15):
        w = rng.choice(els) * rng.choice(els)
        assert m.differential(m.differential(w)).is_zero()


def test_leibniz_on_random_triples(R):
    m = model_for(R, "x^2", "x*y", "y^2")
    rng = random.Random(9)
    els = [m.var_element(i) for i in range(len(m.variables))]
    for _ in range(15):
        a, b = rng.choice(els), rng.choice(els)
        da = a.homological_degree()
        lhs = m.differential(a * b)
        rhs = m.differential(a) * b
        term = a * m.differential(b)
        if da % 2:
            term = -term
        assert lhs == rhs + term


def test_derivation_signs(R):
    # d/dy (y z) = z and d/dy (z y) = (-1)^|z| z for odd y, z
    m = model_for(R, "x^2", "x*y")
    y, z = m.var_element(0), m.var_element(1)  # both odd (stage 1)
    dy = DgDerivation(m, -1, {0: m.one()})
    assert dy.apply(y * z) == z
    assert dy.apply(z * y) == -z


def test_stage_and_fiber(R):
    m = model_for(R, "x^2", "x*y")
    stage2, fiber2 = stage_and_fiber(m, 2)
    assert len(stage2.variables) == 2
    assert all(v.hdeg >= 2 for v in fiber2.variables)
    # n = 1: the derived fibre carries every variable
    _, fiber1 = stage_and_fiber(m, 1)
    assert len(fiber1.variables) == len(m.variables)
    # complete intersection: A^(2) has no variables at all
    mci = model_for(R, "x^2", "y^2")
    assert len(fiber_algebra(mci, 2).variables) == 0
    # fiber differentials drop coefficients in m_R
    for v in fiber1.variables:
        diff = fiber1.differentials[v.index]
        for (mon, w), _ in diff.terms.items():
            assert mon == ()


def test_m2_fiber_at_2(R):
    m = model_for(R, "x^2", "x*y", "y^2")
    _, fiber = stage_and_fiber(m, 2)
    assert sum(1 for v in fiber.variables if v.hdeg == 2) == 2


def test_characteristic_guard():
    R3 = PolyRing(GF(3), ["x"])
    with pytest.raises(CharacteristicTooSmall):
        build_minimal_model(gr.Ideal(R3, [R3.from_string("x^2")]), 5, 12)
    # GF(7) with bound 5 is fine
    R7 = PolyRing(GF(7), ["x", "y"])
    m = build_minimal_model(gr.Ideal(R7, [R7.from_string("x^2"), R7.from_string("y^2")]), 5, 12)
    assert verify_model(m) == []


def test_degree_bound_warning(R):
    m = build_minimal_model(ideal(R, "x^3 + y^3"), 5, 12)  # needs 15
    assert m.warnings


def test_zero_ideal_has_no_variables(R):
    m = build_minimal_model(gr.Ideal(R, []), 3, 8)
    assert m.deviations() == [0, 0, 0]


def test_kahler_module(R):
    m = model_for(R, "x^2", "x*y")
    km = kahler_module(m)
    assert km.verify() == []
    con = km.conormal_presentation()
    assert con.nrows == 2 and con.ncols == 1
    # degree-1 component has rank |X_1| = mu(I)
    assert len(m.variables_of_hdeg(1)) == con.nrows

    Rx = PolyRing(QQ, ["x"])
    mx = build_minimal_model(gr.Ideal(Rx, [Rx.from_string("x^2")]), 4, 10)
    kx = kahler_module(mx)
    conx = kx.conormal_presentation()
    # free of rank 1, Hilbert function of (x^2)/(x^4)
    assert conx.nrows == 1 and conx.ncols == 0
    assert conx.hilbert_function(5) == [0, 0, 1, 1, 0, 0]


def test_kahler_ci_conormal_free(R):
    m = model_for(R, "x^2", "y^2", hdeg=5)
    con = kahler_module(m).conormal_presentation()
    assert con.nrows == 2 and con.ncols == 0
