"""Report assembly and canonical serialization.

The JSON form is byte-reproducible: keys sorted, two-space indent, one
trailing newline, and every potentially large integer rendered as a
decimal string so downstream consumers never lose precision.
"""

import json
from dataclasses import dataclass

from .errors import InvalidInputError


@dataclass(frozen=True)
class Report:
    """Finished pipeline output; every field is already JSON-ready."""

    config_echo: dict
    field_summary: dict        # degree, discriminant, index, class_number
    field_diagnostics: dict    # checks + trust notes from verify_field
    unit_basis: dict           # provenance, certified bits, coordinate vectors
    a_s: dict                  # "s1,s2,..." -> {value, factorization}
    b: dict                    # {value, factorization}
    merel_bound: str
    per_prime: dict            # str(ell) -> criterion or sweep summary
    bad_primes: list           # [{p, reasons}] sorted by p
    beyond_baseline: list      # bad primes not forced by size or ramification
    hypotheses: list

    def to_document(self) -> dict:
        return {
            "config": self.config_echo,
            "field": self.field_summary,
            "field_diagnostics": self.field_diagnostics,
            "unit_basis": self.unit_basis,
            "A_s": self.a_s,
            "B": self.b,
            "merel_bound": self.merel_bound,
            "per_prime": self.per_prime,
            "bad_primes": self.bad_primes,
            "bad_primes_beyond_baseline": self.beyond_baseline,
            "hypotheses": self.hypotheses,
        }

    @property
    def partial(self) -> bool:
        return any(entry.get("partial") for entry in self.per_prime.values())


def _text_lines(report: Report):
    doc = report.to_document()
    out = []
    add = out.append
    add("irreducibility bound report")
    add("===========================")
    add("")
    fs = doc["field"]
    add(f"field: degree {fs['degree']}, discriminant {fs['discriminant']}, "
        f"class number {fs['class_number']}")
    diag = doc["field_diagnostics"]
    failed = [c["check"] for c in diag["checks"] if not c["ok"]]
    add("field checks: " + ("all passed" if not failed else "FAILED " + ", ".join(failed)))
    ub = doc["unit_basis"]
    add(f"unit basis ({ub['provenance']}, independence certified at "
        f"{ub['certified_bits']} bits):")
    for k, coords in enumerate(ub["units"], start=1):
        add(f"  u{k} = [{', '.join(coords)}]")
    add("")
    add("per-signature invariants:")
    for key in sorted(doc["A_s"]):
        entry = doc["A_s"][key]
        add(f"  s=({key}): {entry['value']} = {entry['factorization']}")
    add(f"B = {doc['B']['value']} = {doc['B']['factorization']}")
    add(f"merel bound = {doc['merel_bound']}")
    add("")
    if doc["per_prime"]:
        add("auxiliary prime results:")
        for key in sorted(doc["per_prime"], key=int):
            entry = doc["per_prime"][key]
            add(f"  l={key} (r={entry['r']}): R = {entry['R']} = {entry['factorization']}")
            for item in entry.get("skipped_primes", ()):
                add(f"    skipped prime g={item['gpoly']}: {item['reason']}")
            skipped = entry.get("skipped_pairs", ())
            if skipped:
                add(f"    skipped pairs: " +
                    ", ".join(f"({a},{b}):{reason}" for a, b, reason in skipped))
            if entry.get("partial"):
                add("    PARTIAL: some residue pairs had bad model reduction")
    else:
        add("auxiliary prime results: none (bound-only run)")
    add("")
    add("bad primes (candidate p must avoid all of these):")
    for item in doc["bad_primes"]:
        add(f"  {item['p']}: {', '.join(item['reasons'])}")
    beyond = doc["bad_primes_beyond_baseline"]
    add("bad primes beyond the small-prime/ramified baseline: "
        + (", ".join(beyond) if beyond else "(none)"))
    add("")
    add("hypotheses and caveats:")
    for h in doc["hypotheses"]:
        add(f"  - {h}")
    add("")
    return out


def emit_report(report: Report, format: str = "json") -> bytes:
    if format == "json":
        text = json.dumps(report.to_document(), sort_keys=True, indent=2) + "\n"
    elif format == "text":
        text = "\n".join(_text_lines(report)) + "\n"
    else:
        raise InvalidInputError(f"unknown report format {format!r}")
    return text.encode("utf-8")
