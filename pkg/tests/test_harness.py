import json

import pytest
from click.testing import CliRunner

from cikit import harness
from cikit.cli import main as cli_main
from cikit.fields import QQ
from cikit.groebner import Ideal
from cikit.harness import (
    Bounds,
    CorpusError,
    CriteriaDisagree,
    cache_insert,
    cache_key,
    cache_lookup,
    ci_certificate,
    parse_corpus,
    run_corpus,
)
from cikit.poly import PolyRing


@pytest.fixture
def R():
    return PolyRing(QQ, ["x", "y"])


def ideal(ring, *texts):
    return Ideal(ring, [ring.from_string(t) for t in texts])


MINI_CORPUS = """
# two fast entries
entry ci / field Q / ring x, y / ideal x^2, y^2 / expect ci=true h1zero=true conormal_free=true
entry aci / field Q / ring x, y / ideal x^2, x*y / expect ci=false h1zero=false conormal_free=false
"""


def test_ci_certificate_examples(R):
    assert ci_certificate(ideal(R, "x^2", "y^2"))["is_ci"]
    cert = ci_certificate(ideal(R, "x^2", "x*y", "y^2"))
    assert not cert["is_ci"] and cert["mu"] == 3 and cert["height"] == 2
    cert2 = ci_certificate(ideal(R, "x^2", "x*y"))
    assert not cert2["is_ci"] and cert2["mu"] == 2 and cert2["height"] == 1


def test_bounds_parse():
    b = Bounds.parse("hdeg=4 intdeg=10,reslen=6 resdeg=11")
    assert (b.hdeg, b.intdeg, b.reslen, b.resdeg) == (4, 10, 6, 11)
    assert Bounds().resdeg == Bounds().intdeg
    with pytest.raises(CorpusError):
        Bounds.parse("nope=1")


def test_corpus_parse():
    entries = parse_corpus(MINI_CORPUS)
    assert [e.name for e in entries] == ["ci", "aci"]
    assert entries[0].field_spec == "Q"
    assert entries[0].expect["ci"] is True
    ring, I = entries[0].build()
    assert len(I.generators) == 2


def test_corpus_parse_errors():
    with pytest.raises(CorpusError):
        parse_corpus("entry a / ring x / unknown clause")
    with pytest.raises(CorpusError):
        parse_corpus("entry a")  # missing ring
    with pytest.raises(CorpusError):
        parse_corpus("ring x / ideal x")  # missing name
    # inconsistent flags: ci=true forces h1zero and conormal_free
    with pytest.raises(CorpusError):
        parse_corpus("entry a / ring x / ideal x / expect ci=true h1zero=false")


def test_empty_corpus_runs_clean():
    report = run_corpus([])
    assert report["summary"] == {"total": 0, "ok": 0, "failed": 0}


def test_wrong_expected_flag_fails_with_named_entry(tmp_path):
    bad = "entry liar / field Q / ring x, y / ideal x^2, y^2 / expect ci=false\n"
    entries = parse_corpus(bad)
    report = run_corpus(entries)
    assert report["summary"]["failed"] == 1
    entry = report["entries"][0]
    assert entry["name"] == "liar" and not entry["ok"]
    assert any(
        c["name"] == "expected_ci_flag" and c["status"] == "fail" for c in entry["checks"]
    )


def test_cache_roundtrip_and_transparency(tmp_path):
    entries = parse_corpus(MINI_CORPUS)
    plain = run_corpus(entries)
    cached_dir = str(tmp_path / "cache")
    first = run_corpus(entries, cache_dir=cached_dir)
    second = run_corpus(entries, cache_dir=cached_dir)  # all hits
    for report in (first, second):
        assert harness.strip_timings(report) == harness.strip_timings(plain)
    # insert-only: keys exist, lookup returns the stored result
    key = cache_key(entries[0])
    stored = cache_lookup(cached_dir, key)
    assert stored is not None and stored["name"] == "ci"
    cache_insert(cached_dir, key, {"name": "clobber"})
    assert cache_lookup(cached_dir, key)["name"] == "ci"


def test_report_text_rendering():
    entries = parse_corpus(MINI_CORPUS)
    report = run_corpus(entries)
    text = harness.report_to_text(report)
    assert "[ok] ci" in text and "2/2 entries ok" in text


# -- CLI ------------------------------------------------------------------


def run_cli(*args):
    return CliRunner().invoke(cli_main, list(args), catch_exceptions=False)


def test_cli_gb():
    out = run_cli("gb", "--ring", "x,y,z", "x^2 - y*z, x*y")
    assert out.exit_code == 0
    assert "y^2*z" in out.output


def test_cli_resolve_json():
    out = run_cli("resolve", "--ring", "x,y", "--module", "k", "--json", "x^2, y^2")
    assert out.exit_code == 0
    payload = json.loads(out.output)["result"]
    assert payload["betti_total"][:2] == [1, 2]
    assert payload["betti_bigraded"][0] == [0, 0, 1]


def test_cli_model_and_bracket():
    out = run_cli("model", "--ring", "x,y", "x^2, x*y")
    assert "t2_1 : 2 3 : y*t1_1 - x*t1_2" in out.output
    out2 = run_cli("bracket", "--ring", "x,y", "x^2, x*y")
    assert "[p2_2, p2_1] = 1*p4_1" in out2.output.replace("Fraction(1, 1)", "1")


def test_cli_theta_and_radical():
    out = run_cli("theta", "--ring", "x,y", "--z", "p2_1", "x^2, x*y")
    assert "theta_p2_1(t2_1) = y" in out.output
    out2 = run_cli("radical", "--ring", "x,y", "x^2, y^2")
    assert "RadicalWitness(1" in out2.output


def test_cli_ci_and_verifiers():
    out = run_cli("ci", "--ring", "x,y", "x^2, x*y, y^2")
    assert "complete intersection: False" in out.output
    out2 = run_cli("verify-a", "--ring", "x,y", "--json", "x^2, y^2")
    assert json.loads(out2.output)["result"]["is_ci"] is True
    out3 = run_cli("verify-b", "--ring", "x,y", "--json", "x^2, x*y")
    payload = json.loads(out3.output)["result"]
    assert payload["is_ci"] is False and payload["gulliksen"] == "NoneFoundWithinBound"


def test_cli_jz_and_lenstra():
    out = run_cli("jz", "--ring", "x", "x^2")
    assert "exact: True" in out.output
    out2 = run_cli("lenstra", "--ring", "x", "x^2")
    assert "TrivialEvolutionsOnly" in out2.output


def test_cli_koszul_and_conormal():
    out = run_cli("koszul", "--ring", "x,y", "x^2, x*y")
    assert "H1 minimal generators: 1" in out.output
    out2 = run_cli("conormal", "--ring", "x,y", "--json", "x^2, y^2")
    assert json.loads(out2.output)["result"]["mu"] == 2


def test_cli_corpus_run(tmp_path):
    path = tmp_path / "mini.corpus"
    path.write_text(MINI_CORPUS)
    out = run_cli("corpus", "run", str(path))
    assert out.exit_code == 0
    assert "2/2 entries ok" in out.output
    # a wrong flag produces a nonzero exit and names the entry
    bad = tmp_path / "bad.corpus"
    bad.write_text("entry liar / field Q / ring x, y / ideal x^2, y^2 / expect ci=false\n")
    runner = CliRunner()
    res = runner.invoke(cli_main, ["corpus", "run", str(bad)])
    assert res.exit_code == 1
    assert "liar" in res.output
