"""Acceptance suite: each criterion prints one pass/fail line.

The shipped corpus drives everything; a session-scoped fixture computes the
full report once and the criteria interrogate it.  Criterion 1 re-runs the
structural invariant phase on its own clock.
"""

import json
import os
import time

import pytest

from cikit import harness
from cikit.dgmodel import build_minimal_model, kahler_module, verify_model
from cikit.koszul import koszul_complex

from conftest import check_status, entry_by_name


def _require(name, condition, detail=""):
    status = "PASS" if condition else "FAIL"
    print(f"ACCEPTANCE {name}: {status} {detail}")
    assert condition, f"{name} failed: {detail}"


def _all_pass(report, check_name, entries=None):
    bad = []
    for entry in report["entries"]:
        if entries is not None and entry["name"] not in entries:
            continue
        status = check_status(entry, check_name)
        if status is None:
            continue
        if status != "pass":
            bad.append(entry["name"])
    return bad


def test_criterion_1_structural_exactness(corpus_report, corpus_entries):
    assert len(corpus_entries) >= 12
    t0 = time.monotonic()
    for entry in corpus_entries:
        _, ideal = entry.build()
        model = build_minimal_model(ideal, entry.bounds.hdeg, entry.bounds.intdeg)
        fails = verify_model(model)
        assert not fails, (entry.name, fails)
        assert koszul_complex(ideal).verify_d_squared(), entry.name
        assert kahler_module(model).verify() == [], entry.name
    elapsed = time.monotonic() - t0

    # resolution d^2 = 0 checks ran inside the corpus evaluation
    bad = _all_pass(corpus_report, "resolution_d2")
    bad += _all_pass(corpus_report, "resolution_exactness_s_over_r")
    bad += _all_pass(corpus_report, "model_d2_and_minimality")
    bad += _all_pass(corpus_report, "model_acyclicity")
    bad += _all_pass(corpus_report, "koszul_d2")
    bad += _all_pass(corpus_report, "kahler_complex")
    _require(
        "1-structural-exactness",
        not bad and elapsed <= 60.0,
        f"(structural phase {elapsed:.1f}s over {len(corpus_entries)} entries"
        + (f"; failing: {bad}" if bad else "")
        + ")",
    )


def test_criterion_2_lie_structure(corpus_report):
    bad = _all_pass(corpus_report, "lie_antisymmetry")
    bad += _all_pass(corpus_report, "lie_jacobi")
    bad += _all_pass(corpus_report, "theta_induces_minus_ad")
    _require("2-lie-structure", not bad, f"failing: {bad}" if bad else "")


def test_criterion_3_oracle_equivalences(corpus_report):
    bad = _all_pass(corpus_report, "conormal_routes_agree")
    bad += _all_pass(corpus_report, "mu_conormal_equals_mu_ideal")
    bad += _all_pass(corpus_report, "x2_matches_koszul_h1_mu")
    bad += _all_pass(corpus_report, "ext_crosscheck")
    bad += _all_pass(corpus_report, "kahler_strand_matches_h1")
    bad += _all_pass(corpus_report, "h1_hilbert_two_routes")
    _require("3-oracle-equivalences", not bad, f"failing: {bad}" if bad else "")


def test_criterion_4_theorem_consistency(corpus_report, corpus_entries):
    failures = []
    for entry in corpus_entries:
        rep = entry_by_name(corpus_report, entry.name)
        data = rep["data"]
        for check in ("ci_criteria_agree", "theorem_conormal_consistency",
                      "theorem_koszul_consistency"):
            if check_status(rep, check) != "pass":
                failures.append(f"{entry.name}:{check}")
        if data.get("is_ci"):
            if data.get("h1_mu") != 0:
                failures.append(f"{entry.name}: CI with nonzero H1")
            if data.get("conormal_mu") != data.get("height"):
                failures.append(f"{entry.name}: conormal rank != height")
            if any(d != 0 for d in data.get("pi_dims", [])[1:]):
                failures.append(f"{entry.name}: CI with pi above degree 2")
            if check_status(rep, "ci_pi_structure") != "pass":
                failures.append(f"{entry.name}: bracket table not identically zero")
            if check_status(rep, "ci_radical_witnesses") != "pass":
                failures.append(f"{entry.name}: missing radical witnesses")
        else:
            reslen = entry.bounds.reslen
            for key in ("conormal_probe", "h1_probe"):
                if data.get(key) != f"NotTerminatedWithin({reslen})":
                    failures.append(f"{entry.name}: {key} = {data.get(key)}")
            for key in ("betti_conormal", "betti_h1"):
                betti = data.get(key, [])
                if len(betti) != reslen + 1 or any(b <= 0 for b in betti):
                    failures.append(f"{entry.name}: {key} not strictly positive: {betti}")
            if data.get("gulliksen") != "NoneFoundWithinBound":
                failures.append(f"{entry.name}: gulliksen {data.get('gulliksen')}")
    _require("4-theorem-consistency", not failures, f"{failures}" if failures else "")


def test_criterion_5_jz_and_lenstra(corpus_report, corpus_entries):
    failures = []
    char0 = {e.name for e in corpus_entries if e.field_spec.strip() in ("Q", "QQ")}
    for name in sorted(char0):
        rep = entry_by_name(corpus_report, name)
        if check_status(rep, "jacobi_zariski_exact") != "pass":
            failures.append(f"{name}: JZ")
    for name in ("socle_square", "linear_gen"):
        rep = entry_by_name(corpus_report, name)
        if rep["data"].get("lenstra") != "trivial":
            failures.append(f"{name}: lenstra {rep['data'].get('lenstra')}")
    bad = _all_pass(corpus_report, "expected_lenstra", entries=char0)
    failures += [f"{n}: frozen lenstra" for n in bad]
    _require("5-jz-and-lenstra", not failures, f"{failures}" if failures else "")


def test_criterion_6_determinism_and_cache(corpus_report, corpus_entries, tmp_path):
    cache_dir = str(tmp_path / "cache")
    workers = min(3, os.cpu_count() or 1)
    second = harness.run_corpus(corpus_entries, parallelism=workers, cache_dir=cache_dir)
    third = harness.run_corpus(corpus_entries, parallelism=1, cache_dir=cache_dir)

    blob_first = json.dumps(harness.strip_timings(corpus_report), sort_keys=True)
    blob_second = json.dumps(harness.strip_timings(second), sort_keys=True)
    blob_third = json.dumps(harness.strip_timings(third), sort_keys=True)
    identical = blob_first == blob_second == blob_third
    cached_fast = all(v == 0.0 for v in third["timings"].values())
    _require(
        "6-determinism-and-cache",
        identical and cached_fast,
        "(byte-identical modulo timings; cached run all hits)" if identical else "reports differ",
    )


def test_all_entries_pass(corpus_report):
    failed = [e["name"] for e in corpus_report["entries"] if not e["ok"]]
    _require("entries-all-ok", not failed, f"failing entries: {failed}" if failed else
             f"({corpus_report['summary']['total']} entries)")
