"""Command-line interface.

Every math command takes the ideal as a positional comma-separated list of
polynomials plus `--ring`/`--field`; `--json` switches reports to the
versioned JSON schema.
"""

from __future__ import annotations

import json
import sys

import click

from . import conormal as conormal_mod
from . import harness
from . import homlie as homlie_mod
from .dgmodel import build_minimal_model, kahler_module
from .fields import Field
from .groebner import (
    Ideal,
    ideal_as_module,
    minimal_generators,
    quotient_hilbert_by_monomials,
    residue_field_presentation,
)
from .koszul import koszul_complex, koszul_h1
from .poly import MonomialOrder, PolyRing, parse_poly_list
from .resolution import minimal_free_resolution
from .harness import Bounds


def _ring(ring_opt: str, field_opt: str) -> PolyRing:
    names = [v.strip() for v in ring_opt.split(",") if v.strip()]
    return PolyRing(Field.parse(field_opt), names)


def _ideal(ring: PolyRing, ideal_arg: str) -> Ideal:
    return Ideal(ring, parse_poly_list(ring, ideal_arg))


def _emit(data, as_json: bool, text_fn):
    if as_json:
        click.echo(json.dumps({"schema": harness.SCHEMA, "result": data}, sort_keys=True, indent=2))
    else:
        click.echo(text_fn(data))


common_options = [
    click.option("--ring", "ring_opt", required=True, help="comma-separated variable names"),
    click.option("--field", "field_opt", default="Q", show_default=True,
                 help="Q or Fp <p> (e.g. F7)"),
    click.option("--bounds", "bounds_opt", default="", help="e.g. 'hdeg=5 intdeg=12 reslen=8'"),
    click.option("--json", "as_json", is_flag=True, help="emit JSON"),
]


def with_common(fn):
    for opt in reversed(common_options):
        fn = opt(fn)
    return fn


@click.group()
def main():
    """Exact commutative algebra: Groebner bases, resolutions, Koszul
    homology, minimal models, homotopy Lie brackets, conormal modules."""


@main.command()
@click.argument("ideal_arg")
@with_common
@click.option("--order", "order_opt", default="degrevlex", show_default=True)
def gb(ideal_arg, ring_opt, field_opt, bounds_opt, as_json, order_opt):
    """Reduced Groebner basis of the ideal."""
    ring = _ring(ring_opt, field_opt)
    basis = _ideal(ring, ideal_arg).groebner(MonomialOrder.parse(order_opt))
    _emit([str(g) for g in basis], as_json, lambda gs: "\n".join(gs))


@main.command()
@click.argument("ideal_arg")
@with_common
@click.option("--module", "module_opt", default="k", show_default=True,
              type=click.Choice(["k", "s", "ideal", "conormal", "h1"]),
              help="which module to resolve (k/s over R, or conormal/h1 over S)")
def resolve(ideal_arg, ring_opt, field_opt, bounds_opt, as_json, module_opt):
    """Minimal free resolution with bigraded and total Betti numbers."""
    ring = _ring(ring_opt, field_opt)
    ideal = _ideal(ring, ideal_arg)
    bounds = Bounds.parse(bounds_opt)
    if module_opt == "k":
        pres = residue_field_presentation(ring, ideal if ideal.generators else None)
    elif module_opt == "s":
        pres = ideal_as_module(ideal)
    elif module_opt == "ideal":
        pres = ideal_as_module(ideal)
    elif module_opt == "conormal":
        pres = conormal_mod.conormal_route_a(ideal, bounds.resdeg)
    else:
        pres = koszul_h1(ideal, bounds.resdeg).presentation
    res = minimal_free_resolution(pres, bounds.reslen, bounds.resdeg)
    table = sorted(res.betti_bigraded().items())
    payload = {
        "status": {"terminated": res.status[0] == "terminated", "at": res.status[1],
                   "intdeg_bound": res.degree_bound},
        "betti_total": res.betti_totals(),
        "betti_bigraded": [[i, j, b] for (i, j), b in table],
    }

    def text(p):
        lines = [f"status: {res.status[0]} at {res.status[1]} (intdeg <= {res.degree_bound})"]
        lines.append("total betti: " + " ".join(str(b) for b in p["betti_total"]))
        lines.append("bigraded (i, j, b):")
        lines.extend(f"  {i} {j} {b}" for i, j, b in p["betti_bigraded"])
        return "\n".join(lines)

    _emit(payload, as_json, text)


@main.command()
@click.argument("ideal_arg")
@with_common
def koszul(ideal_arg, ring_opt, field_opt, bounds_opt, as_json):
    """Koszul complex ranks and the first homology module."""
    ring = _ring(ring_opt, field_opt)
    ideal = _ideal(ring, ideal_arg)
    bounds = Bounds.parse(bounds_opt)
    cx = koszul_complex(ideal)
    h1 = koszul_h1(ideal, bounds.intdeg)
    payload = {
        "rank_profile": cx.rank_profile(),
        "d_squared_zero": cx.verify_d_squared(),
        "h1_minimal_generators": h1.minimal_generator_count(),
        "h1_hilbert": h1.hilbert_function(bounds.intdeg),
        "h1_cycles": [[str(p) for p in c] for c in h1.cycle_reps],
    }

    def text(p):
        return (
            f"rank profile: {p['rank_profile']}\n"
            f"d^2 = 0: {p['d_squared_zero']}\n"
            f"H1 minimal generators: {p['h1_minimal_generators']}\n"
            f"H1 Hilbert function: {p['h1_hilbert']}\n"
            + "\n".join("cycle: (" + ", ".join(c) + ")" for c in p["h1_cycles"])
        )

    _emit(payload, as_json, text)


@main.command()
@click.argument("ideal_arg")
@with_common
def conormal(ideal_arg, ring_opt, field_opt, bounds_opt, as_json):
    """I/I^2 by both routes with the agreement certificate."""
    ring = _ring(ring_opt, field_opt)
    ideal = _ideal(ring, ideal_arg)
    bounds = Bounds.parse(bounds_opt)
    con = conormal_mod.conormal(ideal, bounds.intdeg)
    payload = {
        "mu": con.mu,
        "hilbert": con.hilbert,
        "routes_agree": True,
        "relations": [[str(p) for p in c] for c in con.route_a.columns],
    }

    def text(p):
        return (
            f"minimal generators: {p['mu']}\n"
            f"hilbert function: {p['hilbert']}\n"
            f"routes agree: {p['routes_agree']}\n"
            + "\n".join("relation: (" + ", ".join(c) + ")" for c in p["relations"])
        )

    _emit(payload, as_json, text)


@main.command()
@click.argument("ideal_arg")
@with_common
def model(ideal_arg, ring_opt, field_opt, bounds_opt, as_json):
    """Minimal model dump: `name : hdeg intdeg : differential` per line."""
    ring = _ring(ring_opt, field_opt)
    bounds = Bounds.parse(bounds_opt)
    m = build_minimal_model(_ideal(ring, ideal_arg), bounds.hdeg, bounds.intdeg)
    payload = {"dump": m.dump().splitlines(), "deviations": m.deviations(),
               "warnings": m.warnings}
    _emit(payload, as_json, lambda p: "\n".join(p["dump"]))


@main.command()
@click.argument("ideal_arg")
@with_common
def pi(ideal_arg, ring_opt, field_opt, bounds_opt, as_json):
    """Dimensions and basis of the homotopy Lie algebra truncation."""
    ring = _ring(ring_opt, field_opt)
    bounds = Bounds.parse(bounds_opt)
    m = build_minimal_model(_ideal(ring, ideal_arg), bounds.hdeg, bounds.intdeg)
    p = homlie_mod.compute_pi(m)
    payload = {
        "dims": {str(i): p.dim(i) for i in range(2, p.N + 1)},
        "basis": {str(i): [e.name for e in p.by_degree.get(i, [])]
                  for i in range(2, p.N + 1)},
    }

    def text(pp):
        return "\n".join(
            f"pi^{i}: dim {pp['dims'][str(i)]}  [{', '.join(pp['basis'][str(i)])}]"
            for i in range(2, p.N + 1)
        )

    _emit(payload, as_json, text)


@main.command()
@click.argument("ideal_arg")
@with_common
def bracket(ideal_arg, ring_opt, field_opt, bounds_opt, as_json):
    """Full bracket table in canonical order."""
    ring = _ring(ring_opt, field_opt)
    bounds = Bounds.parse(bounds_opt)
    m = build_minimal_model(_ideal(ring, ideal_arg), bounds.hdeg, bounds.intdeg)
    p = homlie_mod.compute_pi(m)
    dump = p.bracket_table_dump()
    _emit({"table": dump.splitlines()}, as_json, lambda pp: dump or "(empty)")


@main.command()
@click.argument("ideal_arg")
@with_common
@click.option("--z", "z_name", required=True, help="pi^2 basis element, e.g. p2_1")
def theta(ideal_arg, ring_opt, field_opt, bounds_opt, as_json, z_name):
    """The commutator derivation theta_z: values on every model variable."""
    ring = _ring(ring_opt, field_opt)
    bounds = Bounds.parse(bounds_opt)
    m = build_minimal_model(_ideal(ring, ideal_arg), bounds.hdeg, bounds.intdeg)
    p = homlie_mod.compute_pi(m)
    z = p.element_by_name(z_name)
    th = homlie_mod.theta(m, p, z)
    values = {
        v.name: th.value_on(v.index).to_string()
        for v in m.variables
        if not th.value_on(v.index).is_zero()
    }
    payload = {"z": z_name, "chain": True, "values": values}

    def text(pp):
        if not values:
            return f"theta_{z_name} = 0"
        return "\n".join(f"theta_{z_name}({k}) = {v}" for k, v in values.items())

    _emit(payload, as_json, text)


@main.command()
@click.argument("ideal_arg")
@with_common
@click.option("--z", "z_name", default="", help="pi^2 basis element; default all")
def radical(ideal_arg, ring_opt, field_opt, bounds_opt, as_json, z_name):
    """Bounded radical probes for degree-2 elements."""
    ring = _ring(ring_opt, field_opt)
    bounds = Bounds.parse(bounds_opt)
    m = build_minimal_model(_ideal(ring, ideal_arg), bounds.hdeg, bounds.intdeg)
    p = homlie_mod.compute_pi(m)
    targets = (
        [p.element_by_name(z_name)] if z_name else p.by_degree.get(2, [])
    )
    verdicts = {z.name: repr(homlie_mod.radical_probe(p, z)) for z in targets}
    _emit(verdicts, as_json,
          lambda v: "\n".join(f"{k}: {val}" for k, val in v.items()) or "(no pi^2)")


@main.command()
@click.argument("ideal_arg")
@with_common
def ci(ideal_arg, ring_opt, field_opt, bounds_opt, as_json):
    """Complete-intersection certificate (Koszul H1 and mu = height)."""
    ring = _ring(ring_opt, field_opt)
    bounds = Bounds.parse(bounds_opt)
    cert = harness.ci_certificate(_ideal(ring, ideal_arg), bounds.intdeg)
    _emit(cert, as_json,
          lambda c: (f"complete intersection: {c['is_ci']}  "
                     f"(mu = {c['mu']}, height = {c['height']}, mu(H1) = {c['h1_mu']})"))


@main.command(name="verify-a")
@click.argument("ideal_arg")
@with_common
def verify_a(ideal_arg, ring_opt, field_opt, bounds_opt, as_json):
    """Conormal rigidity consistency report for one ideal."""
    ring = _ring(ring_opt, field_opt)
    bounds = Bounds.parse(bounds_opt)
    rep, _ = harness.verify_conormal_rigidity(_ideal(ring, ideal_arg), bounds)
    _emit(rep, as_json, lambda r: json.dumps(r, indent=2, sort_keys=True))


@main.command(name="verify-b")
@click.argument("ideal_arg")
@with_common
def verify_b(ideal_arg, ring_opt, field_opt, bounds_opt, as_json):
    """Koszul-homology rigidity consistency report for one ideal."""
    ring = _ring(ring_opt, field_opt)
    bounds = Bounds.parse(bounds_opt)
    rep, _ = harness.verify_koszul_rigidity(_ideal(ring, ideal_arg), bounds)
    _emit(rep, as_json, lambda r: json.dumps(r, indent=2, sort_keys=True))


@main.command()
@click.argument("ideal_arg")
@with_common
def jz(ideal_arg, ring_opt, field_opt, bounds_opt, as_json):
    """Jacobi-Zariski four-term slice-exactness table."""
    ring = _ring(ring_opt, field_opt)
    bounds = Bounds.parse(bounds_opt)
    rep = conormal_mod.jacobi_zariski_check(_ideal(ring, ideal_arg), bounds.intdeg)
    payload = {"exact": rep.exact, "rows": rep.rows(), "failures": rep.failures}

    def text(p):
        lines = ["deg  D1  I/I2  S^n(-1)  Omega"]
        for d, a, b, c, e in p["rows"]:
            lines.append(f"{d:3d} {a:3d} {b:5d} {c:8d} {e:6d}")
        lines.append(f"exact: {p['exact']}")
        return "\n".join(lines)

    _emit(payload, as_json, text)


@main.command()
@click.argument("ideal_arg")
@with_common
def lenstra(ideal_arg, ring_opt, field_opt, bounds_opt, as_json):
    """Evolution criterion: no minimal conormal generator in ker(d)."""
    ring = _ring(ring_opt, field_opt)
    verdict = conormal_mod.lenstra_evolution_check(_ideal(ring, ideal_arg))
    _emit({"verdict": repr(verdict)}, as_json, lambda v: v["verdict"])


@main.group()
def corpus():
    """Corpus file operations."""


@corpus.command(name="run")
@click.argument("path", type=click.Path(exists=True))
@click.option("--parallel", default=1, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.option("--cache-dir", default=None, help="result cache directory (insert-only)")
@click.option("--bounds", "bounds_opt", default="", help="override default bounds")
def corpus_run(path, parallel, as_json, cache_dir, bounds_opt):
    """Run the full invariant and theorem suite over a corpus file."""
    base = Bounds.parse(bounds_opt) if bounds_opt else None
    report = harness.run_corpus_file(path, parallel, cache_dir, base)
    if as_json:
        click.echo(harness.report_json(report))
    else:
        click.echo(harness.report_to_text(report))
    if report["summary"]["failed"]:
        sys.exit(1)


if __name__ == "__main__":
    main()
