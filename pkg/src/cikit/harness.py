"""Corpus management, certificates, theorem verifiers, reports, cache.

The harness treats the rigidity theorems as proved facts: on corpus entries
they become consistency tripwires.  Every inconclusive verdict carries its
truncation bound; reports are deterministic (timings live in a separate,
stripped section).
"""

from __future__ import annotations

import concurrent.futures
import hashlib
import json
import os
import time

from . import conormal as conormal_mod
from . import homlie as homlie_mod
from .dgmodel import (
    build_minimal_model,
    kahler_module,
    verify_model_acyclicity,
    verify_model_differential,
)
from .fields import Field
from .groebner import (
    Ideal,
    ModulePresentation,
    height,
    ideal_as_module,
    minimal_generators,
    quotient_hilbert_by_monomials,
)
from .koszul import h1_free_summand_probe, koszul_complex, koszul_h1
from .poly import PolyRing, parse_poly_list
from .resolution import projdim_probe, verify_composites, verify_resolution

SCHEMA = "cikit-report/1"


class CriteriaDisagree(RuntimeError):
    """The two complete-intersection certificates disagreed (a bug)."""


class TheoremViolationSignal(RuntimeError):
    """A proved implication failed on an entry (a bug, not mathematics)."""


class CorpusError(ValueError):
    pass


# ---------------------------------------------------------------------------
# bounds


class Bounds:
    __slots__ = ("hdeg", "intdeg", "reslen", "resdeg")

    def __init__(self, hdeg=5, intdeg=12, reslen=8, resdeg=None):
        self.hdeg = hdeg
        self.intdeg = intdeg
        self.reslen = reslen
        self.resdeg = intdeg if resdeg is None else resdeg

    def to_dict(self):
        return {
            "hdeg": self.hdeg,
            "intdeg": self.intdeg,
            "reslen": self.reslen,
            "resdeg": self.resdeg,
        }

    @staticmethod
    def parse(text: str, base: "Bounds | None" = None) -> "Bounds":
        out = Bounds() if base is None else Bounds(**base.to_dict())
        text = text.replace(",", " ")
        for part in text.split():
            if not part:
                continue
            key, _, val = part.partition("=")
            key = key.strip()
            if key not in ("hdeg", "intdeg", "reslen", "resdeg"):
                raise CorpusError(f"unknown bound {key!r}")
            setattr(out, key, int(val))
        return out


DEFAULT_BOUNDS = Bounds()


# ---------------------------------------------------------------------------
# complete intersection certificate


def ci_certificate(ideal: Ideal, degree_bound: int = 12) -> dict:
    """CI iff the first Koszul homology vanishes; independently iff
    mu(I) = height(I).  The two criteria must agree or the run aborts."""
    h1 = koszul_h1(ideal, degree_bound)
    via_h1 = h1.is_zero()
    mu, _ = minimal_generators(ideal_as_module(ideal))
    ht = height(ideal)
    via_height = mu == ht
    if via_h1 != via_height:
        raise CriteriaDisagree(
            f"H1 says CI={via_h1} but mu={mu}, height={ht} says CI={via_height}"
        )
    return {"is_ci": via_h1, "mu": mu, "height": ht, "h1_mu": h1.minimal_generator_count()}


# ---------------------------------------------------------------------------
# theorem verifiers


def verify_conormal_rigidity(ideal: Ideal, bounds: Bounds):
    """Conormal-module side: if S has finite projdim over R and I/I^2 has
    finite projdim over S then I must be a complete intersection.  On
    non-CI entries the conormal probe must come back non-terminated.

    Returns (report, probe resolutions)."""
    cert = ci_certificate(ideal, bounds.intdeg)
    s_probe = projdim_probe(ideal_as_module(ideal), bounds.reslen, bounds.resdeg)
    con_pres = conormal_mod.conormal_route_a(ideal, bounds.resdeg)
    con_probe = projdim_probe(con_pres, bounds.reslen, bounds.resdeg)
    report = {
        "is_ci": cert["is_ci"],
        "s_over_r": repr(s_probe),
        "conormal_over_s": repr(con_probe),
        "betti_conormal": con_probe.resolution.betti_totals(),
    }
    resolutions = {"s_over_r": s_probe.resolution, "conormal": con_probe.resolution}
    if s_probe.is_finite() and con_probe.is_finite():
        if not cert["is_ci"]:
            raise TheoremViolationSignal(
                "both projective dimensions finite but the CI certificate failed"
            )
    if not cert["is_ci"]:
        if con_probe.is_finite():
            raise TheoremViolationSignal(
                "non-CI entry with finite conormal projective dimension"
            )
        totals = con_probe.resolution.betti_totals()
        if any(b <= 0 for b in totals):
            raise TheoremViolationSignal(
                f"non-CI conormal resolution has a zero Betti number: {totals}"
            )
    else:
        if not con_probe.is_finite():
            raise TheoremViolationSignal("CI entry with non-free-looking conormal")
    return report, resolutions


def verify_koszul_rigidity(ideal: Ideal, bounds: Bounds):
    """First-Koszul-homology side, plus the free-summand probe: a free
    summand of H1 would force a complete intersection.

    Returns (report, probe resolutions)."""
    cert = ci_certificate(ideal, bounds.intdeg)
    h1 = koszul_h1(ideal, bounds.resdeg)
    report = {"is_ci": cert["is_ci"], "h1_mu": h1.minimal_generator_count()}
    if cert["is_ci"]:
        if not h1.is_zero():
            raise TheoremViolationSignal("CI entry with nonzero first Koszul homology")
        report["h1_over_s"] = "Finite(0)"
        report["gulliksen"] = h1_free_summand_probe(h1)
        return report, {}
    probe = projdim_probe(h1.presentation, bounds.reslen, bounds.resdeg)
    report["h1_over_s"] = repr(probe)
    report["betti_h1"] = probe.resolution.betti_totals()
    if probe.is_finite():
        raise TheoremViolationSignal("non-CI entry with finite H1 projective dimension")
    if any(b <= 0 for b in probe.resolution.betti_totals()):
        raise TheoremViolationSignal("non-CI H1 resolution has a zero Betti number")
    summand = h1_free_summand_probe(h1)
    report["gulliksen"] = summand
    if summand == "FreeSummand":
        raise TheoremViolationSignal("free H1 summand found on a non-CI entry")
    return report, {"h1": probe.resolution}


# ---------------------------------------------------------------------------
# corpus entries


class CorpusEntry:
    __slots__ = ("name", "field_spec", "ring_vars", "ideal_strs", "bounds", "expect")

    def __init__(self, name, field_spec, ring_vars, ideal_strs, bounds, expect):
        self.name = name
        self.field_spec = field_spec
        self.ring_vars = ring_vars
        self.ideal_strs = ideal_strs
        self.bounds = bounds
        self.expect = expect

    def to_dict(self):
        return {
            "name": self.name,
            "field": self.field_spec,
            "ring": list(self.ring_vars),
            "ideal": list(self.ideal_strs),
            "bounds": self.bounds.to_dict(),
            "expect": dict(sorted(self.expect.items())),
        }

    def build(self):
        field = Field.parse(self.field_spec)
        ring = PolyRing(field, self.ring_vars)
        ideal = Ideal(ring, parse_poly_list(ring, ", ".join(self.ideal_strs)))
        return ring, ideal


def _parse_expect_value(key, val):
    if key in ("ci", "h1zero", "conormal_free"):
        if val not in ("true", "false"):
            raise CorpusError(f"expect {key} must be true/false, got {val!r}")
        return val == "true"
    if key in ("deviations", "ext"):
        return [int(x) for x in val.split(",") if x]
    if key == "h1mu":
        return int(val)
    if key == "lenstra":
        if val not in ("trivial", "nontrivial"):
            raise CorpusError(f"expect lenstra must be trivial/nontrivial")
        return val
    raise CorpusError(f"unknown expect key {key!r}")


def parse_corpus(text: str, base_bounds: Bounds | None = None):
    """Parse the corpus text format: one entry per line, `/`-separated
    clauses `entry NAME / field Q | Fp p / ring x, y / ideal f, g / bounds
    k=v... / expect k=v...`, with `#` comments."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        clauses = [c.strip() for c in line.split("/")]
        name = None
        field_spec = "Q"
        ring_vars: list[str] = []
        ideal_strs: list[str] = []
        bounds = Bounds(**(base_bounds or DEFAULT_BOUNDS).to_dict())
        expect: dict = {}
        for clause in clauses:
            if not clause:
                continue
            key, _, rest = clause.partition(" ")
            rest = rest.strip()
            if key == "entry":
                name = rest
            elif key == "field":
                field_spec = rest
            elif key == "ring":
                ring_vars = [v.strip() for v in rest.split(",") if v.strip()]
            elif key == "ideal":
                ideal_strs = [f.strip() for f in rest.split(",") if f.strip()]
            elif key == "bounds":
                bounds = Bounds.parse(rest, bounds)
            elif key == "expect":
                for pair in rest.split():
                    k, _, v = pair.partition("=")
                    expect[k] = _parse_expect_value(k, v)
            else:
                raise CorpusError(f"line {lineno}: unknown clause {key!r}")
        if not name:
            raise CorpusError(f"line {lineno}: missing entry name")
        if not ring_vars:
            raise CorpusError(f"line {lineno}: missing ring")
        if expect.get("ci") and not (
            expect.get("h1zero", True) and expect.get("conormal_free", True)
        ):
            raise CorpusError(
                f"line {lineno}: inconsistent flags (ci requires h1zero and conormal_free)"
            )
        entries.append(
            CorpusEntry(name, field_spec, tuple(ring_vars), tuple(ideal_strs), bounds, expect)
        )
    return entries


# ---------------------------------------------------------------------------
# per-entry evaluation


def _check(checks, name, ok, detail=None, bound=None, inconclusive=False):
    status = "pass" if ok else ("inconclusive" if inconclusive else "fail")
    entry = {"name": name, "status": status}
    if bound is not None:
        entry["bound"] = bound
    if detail:
        entry["detail"] = detail if isinstance(detail, str) else "; ".join(detail)
    checks.append(entry)


def evaluate_entry(entry: CorpusEntry) -> dict:
    """Run the full invariant and theorem suite on one corpus entry."""
    checks: list = []
    data: dict = {}
    bounds = entry.bounds
    try:
        ring, ideal = entry.build()
    except Exception as exc:
        _check(checks, "parse", False, detail=str(exc))
        return {"name": entry.name, "checks": checks, "data": data, "ok": False}

    is_char0 = ring.field.is_rationals
    try:
        model = build_minimal_model(ideal, bounds.hdeg, bounds.intdeg)
        data["deviations"] = model.deviations()
        data["model_warnings"] = list(model.warnings)
        _check(checks, "model_built", True)
    except Exception as exc:
        _check(checks, "model_built", False, detail=str(exc))
        return {"name": entry.name, "checks": checks, "data": data, "ok": False}

    fails = verify_model_differential(model)
    _check(checks, "model_d2_and_minimality", not fails, detail=fails)
    fails = verify_model_acyclicity(model)
    _check(checks, "model_acyclicity", not fails, detail=fails, bound=bounds.intdeg)

    cx = koszul_complex(ideal)
    _check(checks, "koszul_d2", cx.verify_d_squared())
    data["koszul_ranks"] = cx.rank_profile()

    km = kahler_module(model)
    fails = km.verify()
    _check(checks, "kahler_complex", not fails, detail=fails)

    pi = homlie_mod.compute_pi(model)
    data["pi_dims"] = [pi.dim(i) for i in range(2, pi.N + 1)]
    fails = homlie_mod.check_antisymmetry(pi)
    _check(checks, "lie_antisymmetry", not fails, detail=fails)
    fails = homlie_mod.check_jacobi(pi)
    _check(checks, "lie_jacobi", not fails, detail=fails)

    try:
        for z in pi.by_degree.get(2, []):
            th = homlie_mod.theta(model, pi, z)
            homlie_mod.induced_ad(th, pi)
        _check(checks, "theta_induces_minus_ad", True)
    except Exception as exc:
        _check(checks, "theta_induces_minus_ad", False, detail=str(exc))

    try:
        con = conormal_mod.conormal(ideal, bounds.intdeg, model)
        data["conormal_mu"] = con.mu
        data["conormal_hilbert"] = con.hilbert
        _check(checks, "conormal_routes_agree", True)
    except Exception as exc:
        con = None
        _check(checks, "conormal_routes_agree", False, detail=str(exc))

    _check(checks, "mu_conormal_equals_mu_ideal",
           conormal_mod.mu_invariant_check(ideal, bounds.intdeg))

    h1 = koszul_h1(ideal, bounds.intdeg)
    data["h1_mu"] = h1.minimal_generator_count()
    eps = model.deviations()
    x2 = eps[1] if len(eps) > 1 else 0
    _check(checks, "x2_matches_koszul_h1_mu", x2 == data["h1_mu"],
           detail=f"|X_2|={x2}, mu(H1)={data['h1_mu']}")
    _check(checks, "h1_hilbert_two_routes",
           h1.hilbert_function(bounds.intdeg) == h1.direct_hilbert_function(bounds.intdeg))

    ok, info = conormal_mod.koszul_strand_crosscheck(ideal, bounds.intdeg, model)
    _check(checks, "kahler_strand_matches_h1", ok,
           detail=None if ok else json.dumps(info))

    try:
        ext = homlie_mod.ext_crosscheck(model, 5, bounds.resdeg)
        data["ext_dims"] = ext
        _check(checks, "ext_crosscheck", True)
    except Exception as exc:
        _check(checks, "ext_crosscheck", False, detail=str(exc))

    try:
        cert = ci_certificate(ideal, bounds.intdeg)
        data.update(cert)
        _check(checks, "ci_criteria_agree", True)
        if "ci" in entry.expect:
            _check(checks, "expected_ci_flag", cert["is_ci"] == entry.expect["ci"],
                   detail=f"computed {cert['is_ci']}, expected {entry.expect['ci']}")
    except CriteriaDisagree as exc:
        cert = None
        _check(checks, "ci_criteria_agree", False, detail=str(exc))

    probe_resolutions = {}
    try:
        rep, resolutions = verify_conormal_rigidity(ideal, bounds)
        probe_resolutions.update(resolutions)
        data["conormal_probe"] = rep["conormal_over_s"]
        data["betti_conormal"] = rep["betti_conormal"]
        _check(checks, "theorem_conormal_consistency", True, bound=bounds.reslen)
    except Exception as exc:
        _check(checks, "theorem_conormal_consistency", False, detail=str(exc))

    try:
        rep, resolutions = verify_koszul_rigidity(ideal, bounds)
        probe_resolutions.update(resolutions)
        data["h1_probe"] = rep["h1_over_s"]
        data["gulliksen"] = rep.get("gulliksen")
        if "betti_h1" in rep:
            data["betti_h1"] = rep["betti_h1"]
        _check(checks, "theorem_koszul_consistency", True, bound=bounds.reslen)
    except Exception as exc:
        _check(checks, "theorem_koszul_consistency", False, detail=str(exc))

    # d^2 = 0 across every computed resolution; the S-over-R resolution gets
    # the full slice-exactness suite as well (it is small, over R)
    fails: list = []
    for label, res in sorted(probe_resolutions.items()):
        for f in verify_composites(res):
            fails.append(f"{label}: {f}")
    _check(checks, "resolution_d2", not fails, detail=fails)
    if "s_over_r" in probe_resolutions:
        fails = verify_resolution(probe_resolutions["s_over_r"], ideal_as_module(ideal))
        _check(checks, "resolution_exactness_s_over_r", not fails, detail=fails)

    if "h1zero" in entry.expect:
        _check(checks, "expected_h1zero", h1.is_zero() == entry.expect["h1zero"])
    if "conormal_free" in entry.expect and con is not None:
        free = projdim_probe(con.presentation, bounds.reslen, bounds.resdeg)
        computed_free = free.is_finite() and free.value == 0
        _check(checks, "expected_conormal_free",
               computed_free == entry.expect["conormal_free"])

    verdicts = []
    for z in pi.by_degree.get(2, []):
        v = homlie_mod.radical_probe(pi, z)
        verdicts.append({"z": z.name, "kind": v.kind,
                         "data": v.data if not isinstance(v.data, list) else list(v.data),
                         "bound": v.bound})
    data["radical"] = verdicts
    if cert is not None and cert["is_ci"]:
        ok = all(v["kind"] == "radical_witness" for v in verdicts)
        _check(checks, "ci_radical_witnesses", ok, bound=pi.N)
        brackets_zero = all(not tbl for tbl in pi.bracket.values())
        pi_above_2_empty = all(pi.dim(i) == 0 for i in range(3, pi.N + 1))
        _check(checks, "ci_pi_structure", brackets_zero and pi_above_2_empty)

    if is_char0:
        jz = conormal_mod.jacobi_zariski_check(
            ideal, bounds.intdeg,
            con.route_a if con is not None else None)
        _check(checks, "jacobi_zariski_exact", jz.exact, detail=jz.failures,
               bound=bounds.intdeg)
        data["jz_table"] = jz.rows()
        verdict = conormal_mod.lenstra_evolution_check(ideal)
        data["lenstra"] = "trivial" if verdict.kind == "trivial_only" else "nontrivial"
        if "lenstra" in entry.expect:
            _check(checks, "expected_lenstra", data["lenstra"] == entry.expect["lenstra"],
                   detail=f"computed {data['lenstra']}")

    # sharp hypothesis consistency with the Jacobian map into the free module
    try:
        _, selected = minimal_generators(ideal_as_module(ideal))
        gens = [ideal.generators[j] for j in selected]
        jac = [tuple(g.partial_derivative(i) for i in range(ring.nvars)) for g in gens]
        alpha = [[jac[j][i] for j in range(len(gens))] for i in range(ring.nvars)]
        target = ModulePresentation(ring, ideal, [1] * ring.nvars, [])
        rep = conormal_mod.sharpvc_hypothesis_check(
            ideal, alpha, target, bounds.reslen, bounds.resdeg,
            ci_predicate=lambda I: ci_certificate(I, bounds.intdeg)["is_ci"])
        data["sharp_jacobian_injective"] = rep.alpha_mod_k_injective
        _check(checks, "sharp_hypothesis_consistency", True)
    except Exception as exc:
        _check(checks, "sharp_hypothesis_consistency", False, detail=str(exc))

    if "deviations" in entry.expect:
        want = entry.expect["deviations"]
        got = data["deviations"][: len(want)]
        _check(checks, "frozen_deviations", got == want, detail=f"computed {got}")
    if "ext" in entry.expect:
        want = entry.expect["ext"]
        got = data.get("ext_dims", [])[: len(want)]
        _check(checks, "frozen_ext", got == want, detail=f"computed {got}")
    if "h1mu" in entry.expect:
        _check(checks, "frozen_h1mu", data["h1_mu"] == entry.expect["h1mu"],
               detail=f"computed {data['h1_mu']}")

    ok = all(c["status"] == "pass" for c in checks)
    result = {"name": entry.name, "checks": checks, "data": data, "ok": ok}
    # canonical JSON form, so cached and fresh results are indistinguishable
    return json.loads(json.dumps(result, sort_keys=True))


def _evaluate_entry_dict(entry_dict: dict) -> dict:
    entry = CorpusEntry(
        entry_dict["name"],
        entry_dict["field"],
        tuple(entry_dict["ring"]),
        tuple(entry_dict["ideal"]),
        Bounds(**entry_dict["bounds"]),
        entry_dict["expect"],
    )
    return evaluate_entry(entry)


# ---------------------------------------------------------------------------
# result cache (content-addressed, insert-only)


def cache_key(entry: CorpusEntry) -> str:
    blob = json.dumps({"entry": entry.to_dict(), "schema": SCHEMA}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def cache_lookup(cache_dir: str | None, key: str):
    if not cache_dir:
        return None
    path = os.path.join(cache_dir, key + ".json")
    if os.path.exists(path):
        with open(path) as fh:
            return json.load(fh)
    return None


def cache_insert(cache_dir: str | None, key: str, value: dict):
    if not cache_dir:
        return
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, key + ".json")
    if os.path.exists(path):
        return  # insert-only
    tmp = path + f".tmp{os.getpid()}"
    with open(tmp, "w") as fh:
        json.dump(value, fh, sort_keys=True)
    os.replace(tmp, path)


# ---------------------------------------------------------------------------
# corpus runs


def run_corpus(
    entries,
    parallelism: int = 1,
    cache_dir: str | None = None,
) -> dict:
    """Evaluate all entries; returns the aggregate report.  Entries are
    independent; with parallelism > 1 they run in separate processes.
    Cached and uncached runs produce identical reports."""
    if cache_dir is None:
        cache_dir = os.environ.get("CIKIT_CACHE_DIR") or None
    results: dict[str, dict] = {}
    timings: dict[str, float] = {}
    to_compute = []
    for entry in entries:
        key = cache_key(entry)
        hit = cache_lookup(cache_dir, key)
        if hit is not None:
            results[entry.name] = hit
            timings[entry.name] = 0.0
        else:
            to_compute.append((entry, key))

    if parallelism > 1 and len(to_compute) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=parallelism) as pool:
            futures = {}
            for entry, key in to_compute:
                t0 = time.monotonic()
                fut = pool.submit(_evaluate_entry_dict, entry.to_dict())
                futures[fut] = (entry, key, t0)
            for fut in concurrent.futures.as_completed(futures):
                entry, key, t0 = futures[fut]
                result = fut.result()
                timings[entry.name] = round((time.monotonic() - t0) * 1000.0, 3)
                cache_insert(cache_dir, key, result)
                results[entry.name] = result
    else:
        for entry, key in to_compute:
            t0 = time.monotonic()
            result = evaluate_entry(entry)
            timings[entry.name] = round((time.monotonic() - t0) * 1000.0, 3)
            cache_insert(cache_dir, key, result)
            results[entry.name] = result

    ordered = [results[e.name] for e in entries]
    ok_count = sum(1 for r in ordered if r["ok"])
    return {
        "schema": SCHEMA,
        "entries": ordered,
        "summary": {"total": len(ordered), "ok": ok_count, "failed": len(ordered) - ok_count},
        "timings": timings,
    }


def run_corpus_file(path: str, parallelism: int = 1, cache_dir: str | None = None,
                    base_bounds: Bounds | None = None) -> dict:
    with open(path) as fh:
        entries = parse_corpus(fh.read(), base_bounds)
    return run_corpus(entries, parallelism, cache_dir)


def report_to_text(report: dict) -> str:
    lines = []
    for entry in report["entries"]:
        mark = "ok" if entry["ok"] else "FAIL"
        lines.append(f"[{mark}] {entry['name']}")
        for c in entry["checks"]:
            status = c["status"]
            extra = ""
            if "bound" in c:
                extra += f" (bound {c['bound']})"
            if status != "pass" and c.get("detail"):
                extra += f" :: {c['detail']}"
            lines.append(f"    {status:12s} {c['name']}{extra}")
    s = report["summary"]
    lines.append(f"{s['ok']}/{s['total']} entries ok")
    return "\n".join(lines)


def strip_timings(report: dict) -> dict:
    out = dict(report)
    out.pop("timings", None)
    return out


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)
