import json

import pytest

from irred.config import parse_config
from irred.errors import ConfigError, VerificationError
from irred.pipeline import run_pipeline
from irred.report import emit_report


def _run(doc, **kwargs):
    cfg = parse_config(json.dumps(doc))
    return run_pipeline(cfg, **kwargs)


CURVE_X3_PLUS_1 = {"a_invariants": [[0, 0], [0, 0], [0, 0], [0, 0], [1, 0]]}

LEGENDRE_FAMILY = {
    "coeff_a2": [[0, 1, [1, 0]], [1, 0, [-1, 0]]],
    "coeff_a4": [[1, 1, [-1, 0]]],
}


def test_fixed_curve_report_q13():
    rep = _run({
        "field": {"quadratic": 13, "class_number": 1},
        "curve": CURVE_X3_PLUS_1,
        "aux_primes": [5],
    })
    doc = rep.to_document()
    assert doc["B"] == {"value": "1684800", "factorization": "2^6*3^4*5^2*13"}
    assert doc["merel_bound"] == "282430599364"
    entry = doc["per_prime"]["5"]
    # 5 is inert: one prime of norm 25, trace -10, value ((-5)^12 - 1)^2
    assert entry["r"] == 1
    assert entry["R"] == str((5**12 - 1) ** 2)
    [crit] = entry["criteria"]
    assert crit["norm"] == 25 and crit["trace"] == -10
    assert crit["resultant"] == entry["R"]
    # 5^12 - 1 = 2^4*3^2*7*13*31*601; only 31 and 601 pass the size filter
    assert doc["bad_primes_beyond_baseline"] == ["31", "601"]
    assert [e["p"] for e in doc["bad_primes"]] == ["2", "3", "5", "7", "13", "31", "601"]
    reasons5 = dict((e["p"], e["reasons"]) for e in doc["bad_primes"])["5"]
    assert "auxiliary_prime" in reasons5
    assert not rep.partial


def test_bound_only_q5():
    rep = _run({"field": {"quadratic": 5, "class_number": 1}})
    doc = rep.to_document()
    assert doc["B"]["value"] == "320"
    assert doc["per_prime"] == {}
    assert doc["bad_primes_beyond_baseline"] == []
    assert set(doc["A_s"]) == {"0,12", "12,0"}
    assert any("no curve was examined" in h for h in doc["hypotheses"])
    assert any("semistable" in h for h in doc["hypotheses"])


def test_bound_only_flag_overrides_curve():
    doc = {
        "field": {"quadratic": 13, "class_number": 1},
        "curve": CURVE_X3_PLUS_1,
        "aux_primes": [5],
    }
    rep = _run(doc, bound_only=True)
    assert rep.to_document()["per_prime"] == {}


def test_corrupted_automorphisms_fail_verification():
    doc = {"field": {
        "min_poly": [-3, -1, 1],
        "integral_basis": [[1, 0], [0, 1]],
        "automorphisms": [[0, 1], [1, 1]],
        "unit_basis": [[1, 1]],
        "class_number": 1,
    }}
    cfg = parse_config(json.dumps(doc))
    with pytest.raises(VerificationError, match=r"pair \(2, 2\)"):
        run_pipeline(cfg)


def test_user_torsion_unit_rejected():
    doc = {"field": {
        "min_poly": [-3, -1, 1],
        "integral_basis": [[1, 0], [0, 1]],
        "automorphisms": [[0, 1], [1, -1]],
        "unit_basis": [[1, 0]],
        "class_number": 1,
    }}
    with pytest.raises(VerificationError, match="torsion"):
        _run(doc)


def test_user_units_noted_in_hypotheses():
    doc = {"field": {
        "min_poly": [-3, -1, 1],
        "integral_basis": [[1, 0], [0, 1]],
        "automorphisms": [[0, 1], [1, -1]],
        "unit_basis": [[1, 1]],
        "class_number": 1,
    }}
    rep = _run(doc)
    d = rep.to_document()
    assert d["unit_basis"]["provenance"] == "user_supplied"
    assert d["unit_basis"]["certified_bits"] >= 320
    assert any("user-supplied" in h for h in d["hypotheses"])
    # same B as the computed route
    assert d["B"]["value"] == "1684800"


def test_mixed_reduction_fixed_curve():
    # y^2 + xy = x^3 + theta over Q(sqrt 13): at 3 one prime is
    # multiplicative, the other good; the bad one is skipped with a reason
    rep = _run({
        "field": {"quadratic": 13, "class_number": 1},
        "curve": {"a_invariants": [[1, 0], [0, 0], [0, 0], [0, 0], [0, 1]]},
        "aux_primes": [3],
    })
    entry = rep.to_document()["per_prime"]["3"]
    assert len(entry["criteria"]) == 1
    assert entry["skipped_primes"] == [{"gpoly": [0, 1], "reason": "multiplicative_reduction"}]


def test_additive_reduction_marks_residue_char():
    # y^2 + y = x^3 + theta*x: additive at the theta=0 prime above 3
    rep = _run({
        "field": {"quadratic": 13, "class_number": 1},
        "curve": {"a_invariants": [[0, 0], [0, 0], [1, 0], [0, 1], [0, 0]]},
        "aux_primes": [3],
    })
    doc = rep.to_document()
    entry = doc["per_prime"]["3"]
    assert entry["skipped_primes"][0]["reason"] == "additive_reduction"
    reasons = dict((e["p"], e["reasons"]) for e in doc["bad_primes"])
    assert "additive_residue_char" in reasons["3"]


def test_no_good_prime_above_aux_is_config_error():
    # y^2 = x^3 + 5 has additive reduction at the inert prime above 5
    with pytest.raises(ConfigError, match="no prime of good reduction above 5"):
        _run({
            "field": {"quadratic": 13, "class_number": 1},
            "curve": {"a_invariants": [[0, 0], [0, 0], [0, 0], [0, 0], [5, 0]]},
            "aux_primes": [5],
        })


def test_family_report_and_worker_determinism():
    doc = {
        "field": {"quadratic": 13, "class_number": 1},
        "family": LEGENDRE_FAMILY,
        "aux_primes": [5],
    }
    rep1 = _run(doc, jobs=1, emit_pairs=True)
    rep2 = _run(doc, jobs=4, emit_pairs=True)
    assert emit_report(rep1) == emit_report(rep2)
    assert emit_report(rep1, "text") == emit_report(rep2, "text")
    d = rep1.to_document()
    entry = d["per_prime"]["5"]
    assert rep1.partial and entry["partial"]
    assert [0, 0, "skip_predicate"] in entry["skipped_pairs"]
    assert any(reason == "bad_reduction" for _, _, reason in entry["skipped_pairs"])
    assert len(entry["pairs"]) + len(entry["skipped_pairs"]) == 25
    assert any("partial" in h for h in d["hypotheses"])


def test_emit_pairs_flag_controls_tables():
    doc = {
        "field": {"quadratic": 13, "class_number": 1},
        "family": LEGENDRE_FAMILY,
        "aux_primes": [5],
    }
    assert "pairs" not in _run(doc).to_document()["per_prime"]["5"]
    assert "pairs" in _run(doc, emit_pairs=True).to_document()["per_prime"]["5"]


def test_r_override_changes_exponent():
    base = {
        "field": {"quadratic": 13, "class_number": 1},
        "curve": CURVE_X3_PLUS_1,
        "aux_primes": [5],
    }
    r1 = int(_run(base).to_document()["per_prime"]["5"]["R"])
    doc2 = dict(base, r_overrides={"5": 2})
    rep2 = _run(doc2)
    r2 = int(rep2.to_document()["per_prime"]["5"]["R"])
    assert rep2.to_document()["per_prime"]["5"]["r"] == 2
    assert r2 % r1 == 0 and r2 != r1
    assert any("r overrides in effect" in h for h in rep2.to_document()["hypotheses"])


def test_json_emission_is_canonical():
    doc = {
        "field": {"quadratic": 13, "class_number": 1},
        "curve": CURVE_X3_PLUS_1,
        "aux_primes": [5],
    }
    rep = _run(doc)
    payload = emit_report(rep)
    assert payload == emit_report(rep)
    assert payload.endswith(b"\n")
    parsed = json.loads(payload)
    assert parsed == rep.to_document()
    assert payload == (json.dumps(parsed, sort_keys=True, indent=2) + "\n").encode()
    # config echo inside the report parses back to the same echo
    echo = parsed["config"]
    assert parse_config(json.dumps(echo)).echo() == echo


def test_text_emission_renders_factored_values():
    rep = _run({
        "field": {"quadratic": 13, "class_number": 1},
        "curve": CURVE_X3_PLUS_1,
        "aux_primes": [5],
    })
    text = emit_report(rep, "text").decode()
    assert "B = 1684800 = 2^6*3^4*5^2*13" in text
    assert "merel bound = 282430599364" in text
    assert "l=5 (r=1)" in text

    bound_only = _run({"field": {"quadratic": 5, "class_number": 1}})
    text2 = emit_report(bound_only, "text").decode()
    assert "beyond the small-prime/ramified baseline: (none)" in text2
    assert "bound-only run" in text2
