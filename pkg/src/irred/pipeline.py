"""End-to-end orchestration: field checks, unit bound, Merel cutoff,
resultant criteria (fixed curve) or residue sweeps (family), and the final
bad-prime assembly.  Every assumption the run makes lands in the report's
hypothesis list; nothing is dropped silently.
"""

from .config import RunConfig
from .criteria import assemble_bad_primes, merel_bound, resultant_criterion
from .curves import frobenius_data, reduce_curve
from .errors import ConfigError, VerificationError
from .exact import factorize, gcd_set
from .field import split_prime, verify_field
from .report import Report
from .signatures import compute_B
from .sweep import sweep_prime
from .units import unit_basis_for, verify_unit_basis


def _fixed_curve_stage(cfg: RunConfig, ell: int):
    """Resultant criteria at every good-reduction prime above ell."""
    r = cfg.r_for(ell)
    criteria = []
    skipped = []
    additive = False
    for q in split_prime(cfg.field, ell):
        red = reduce_curve(cfg.curve, q)
        kind = red.reduction_type
        if kind == "good":
            F = frobenius_data(cfg.curve, q, cap=cfg.count_cap)
            criteria.append(resultant_criterion(F, r))
        else:
            skipped.append({"gpoly": list(q.gpoly), "reason": f"{kind}_reduction"})
            additive = additive or kind == "additive"
    if not criteria:
        raise ConfigError(
            "aux_primes",
            f"the curve has no prime of good reduction above {ell}; "
            "it contributes no resultant criterion",
        )
    values = [abs(c.resultant) for c in criteria]
    g = gcd_set(values)
    entry = {
        "r": r,
        "R": str(g),
        "factorization": factorize(g).render(),
        "criteria": [
            {
                "gpoly": list(c.q_gpoly),
                "norm": c.norm,
                "trace": c.trace,
                "resultant": str(c.resultant),
                "factorization": c.factorization.render(),
            }
            for c in criteria
        ],
    }
    if skipped:
        entry["skipped_primes"] = skipped
    return entry, values, additive


def _family_stage(cfg: RunConfig, ell: int, jobs: int, emit_pairs: bool):
    r = cfg.r_for(ell)
    res = sweep_prime(cfg.family, ell, r, jobs=jobs, cap=cfg.count_cap)
    entry = {
        "r": r,
        "R": str(res.value),
        "factorization": res.factorization.render(),
        "skipped_pairs": [[a, b, reason] for (a, b), reason in res.skipped],
        "partial": res.partial,
    }
    if emit_pairs:
        entry["pairs"] = [[a, b, str(v)] for (a, b), v in res.pairs]
    return entry, [res.value]


def run_pipeline(cfg: RunConfig, jobs: int = 1, bound_only: bool = False,
                 emit_pairs: bool = False) -> Report:
    field = cfg.field
    diagnostics = verify_field(field)
    if not diagnostics.all_ok:
        raise VerificationError(
            "field verification failed: "
            + "; ".join(f"{name}: {detail}" for name, detail in diagnostics.failed())
        )

    units = unit_basis_for(field, user_units=cfg.unit_vectors)
    bits = verify_unit_basis(field, units.units)
    units = units.with_certificate(bits)

    bb = compute_B(field, units.units)
    mb = merel_bound(field.degree, field.class_number)

    skip_curve_stage = bound_only or cfg.bound_only
    per_prime = {}
    per_prime_values = {}
    additive_chars = set()
    if not skip_curve_stage:
        if cfg.family is not None:
            additive_chars.update(cfg.family.additive_residue_chars)
        for ell in cfg.aux_primes:
            if cfg.curve is not None:
                entry, values, additive = _fixed_curve_stage(cfg, ell)
                if additive:
                    additive_chars.add(ell)
            else:
                entry, values = _family_stage(cfg, ell, jobs, emit_pairs)
            per_prime[str(ell)] = entry
            per_prime_values[ell] = values

    bad = assemble_bad_primes(
        field, bb.value, per_prime_values, sorted(additive_chars)
    )

    hypotheses = [
        "the curve (or each family member) is assumed semistable at every "
        "candidate prime p; this hypothesis is recorded, not verified",
        f"r defaults to the class number h = {field.class_number}; principality "
        "of q^r follows from the class number and is not certified per prime",
    ]
    if cfg.r_overrides:
        hypotheses.append(
            "r overrides in effect: "
            + ", ".join(f"l={ell} uses r={r}" for ell, r in sorted(cfg.r_overrides.items()))
        )
    if per_prime:
        hypotheses.append(
            "resultant criteria use the constant twist exponent only: for p not "
            "dividing B the twisted-norm variants add nothing, so they are "
            "exposed in the library but not run here"
        )
    if units.provenance == "user_supplied":
        hypotheses.append(
            "the unit basis was user-supplied; it is certified multiplicatively "
            "independent but may generate a finite-index subgroup of the units, "
            "which can only enlarge the bound B, never invalidate it"
        )
    hypotheses.extend(diagnostics.trust_notes)
    for key in sorted(per_prime, key=int):
        if per_prime[key].get("partial"):
            hypotheses.append(
                f"sweep at l={key} skipped residue pairs with bad model reduction; "
                "the run is partial and sound only if those pairs cannot arise "
                "from genuine solutions"
            )
    if skip_curve_stage:
        hypotheses.append(
            "no curve was examined: the bad-prime set reflects only the "
            "small-prime, ramification, and unit-bound exclusions"
        )

    return Report(
        config_echo=cfg.echo(),
        field_summary={
            "degree": field.degree,
            "discriminant": str(field.discriminant),
            "index": field.index,
            "class_number": field.class_number,
        },
        field_diagnostics={
            "checks": diagnostics.as_dict_list(),
            "trust_notes": list(diagnostics.trust_notes),
        },
        unit_basis={
            "provenance": units.provenance,
            "certified_bits": units.certified_bits,
            "units": [[str(c) for c in u.coords] for u in units.units],
        },
        a_s={
            ",".join(map(str, s)): {
                "value": str(a),
                "factorization": factorize(a).render(),
            }
            for s, a in bb.per_signature
        },
        b={"value": str(bb.value), "factorization": bb.factorization.render()},
        merel_bound=str(mb),
        per_prime=per_prime,
        bad_primes=bad.as_dict_list(),
        beyond_baseline=[str(p) for p in bad.beyond_baseline(field)],
        hypotheses=hypotheses,
    )
