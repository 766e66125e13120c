"""Run configuration: a single JSON document describing the field, an
optional curve or curve family, and the auxiliary primes to examine.

Algebraic integers are written as coordinate vectors over the declared
integral basis; rationals in basis/automorphism data as ints or "p/q"
strings.  There is no expression grammar.  Every validation failure is a
ConfigError carrying a dotted path to the offending entry.
"""

import json
from dataclasses import dataclass
from fractions import Fraction

from .curves import DEFAULT_COUNT_CAP, WeierstrassCurve
from .errors import ConfigError, InvalidInputError
from .exact import factorize, is_prime
from .field import FieldDescriptor, make_quadratic_field
from .sweep import SKIP_PREDICATE_NAMES, CurveFamily

_TOP_KEYS = ("field", "curve", "family", "aux_primes", "r_overrides", "count_cap")
_QUADRATIC_KEYS = ("quadratic", "class_number")
_GENERAL_KEYS = ("min_poly", "integral_basis", "automorphisms", "unit_basis",
                 "class_number")
_FAMILY_COEFF_KEYS = ("coeff_a1", "coeff_a2", "coeff_a3", "coeff_a4", "coeff_a6")
_FAMILY_KEYS = _FAMILY_COEFF_KEYS + ("skip", "additive_residue_chars")


def _expect(cond, path, message):
    if not cond:
        raise ConfigError(path, message)


def _as_int(value, path):
    # bool is an int subclass; true/false are never valid numbers here
    _expect(isinstance(value, int) and not isinstance(value, bool), path,
            f"expected an integer, got {value!r}")
    return value


def _as_rational(value, path):
    if isinstance(value, bool):
        raise ConfigError(path, f"expected an integer or \"p/q\" string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ConfigError(path, f"cannot parse {value!r} as a rational") from None
    raise ConfigError(path, f"expected an integer or \"p/q\" string, got {value!r}")


def _rational_vector(value, length, path):
    _expect(isinstance(value, list), path, "expected a list")
    _expect(len(value) == length, path, f"expected {length} entries, got {len(value)}")
    return tuple(_as_rational(v, f"{path}[{k}]") for k, v in enumerate(value))


def _int_vector(value, length, path):
    _expect(isinstance(value, list), path, "expected a list")
    _expect(len(value) == length, path, f"expected {length} entries, got {len(value)}")
    return tuple(_as_int(v, f"{path}[{k}]") for k, v in enumerate(value))


def _check_keys(obj, allowed, path):
    _expect(isinstance(obj, dict), path, "expected an object")
    unknown = sorted(set(obj) - set(allowed))
    _expect(not unknown, path, f"unknown keys {unknown}")


def _rational_json(fr: Fraction):
    return int(fr) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"


@dataclass
class RunConfig:
    """Validated configuration with the field descriptor already built.

    field_data / curve_data / family_data hold the normalized JSON echo;
    field / curve / family hold the working objects.
    """

    field: FieldDescriptor
    field_data: dict
    unit_vectors: tuple | None  # user-supplied unit coordinates, general fields
    curve: WeierstrassCurve | None
    curve_data: dict | None
    family: CurveFamily | None
    family_data: dict | None
    aux_primes: tuple
    r_overrides: dict  # {ell: r}
    count_cap: int

    @property
    def bound_only(self):
        return self.curve is None and self.family is None

    def r_for(self, ell: int) -> int:
        return self.r_overrides.get(ell, self.field.class_number)

    def echo(self) -> dict:
        """Normalized JSON form; parsing it reproduces this config."""
        doc = {
            "field": self.field_data,
            "aux_primes": list(self.aux_primes),
            "r_overrides": {str(ell): r for ell, r in sorted(self.r_overrides.items())},
            "count_cap": self.count_cap,
        }
        if self.curve_data is not None:
            doc["curve"] = self.curve_data
        if self.family_data is not None:
            doc["family"] = self.family_data
        return doc


def _parse_field(obj):
    _expect(isinstance(obj, dict), "field", "expected an object")
    if "quadratic" in obj:
        _check_keys(obj, _QUADRATIC_KEYS, "field")
        D = _as_int(obj["quadratic"], "field.quadratic")
        _expect(D > 1, "field.quadratic", "D must be an integer > 1")
        _expect(all(e == 1 for _, e in factorize(D).factors),
                "field.quadratic", f"D = {D} is not squarefree")
        h = _class_number(obj, "field.class_number")
        field = make_quadratic_field(D, class_number=h)
        return field, {"quadratic": D, "class_number": h}, None

    missing = [k for k in ("min_poly", "integral_basis", "automorphisms", "unit_basis")
               if k not in obj]
    _expect(not missing, "field",
            f"general field requires keys {missing} (or use \"quadratic\")")
    _check_keys(obj, _GENERAL_KEYS, "field")

    mp = obj["min_poly"]
    _expect(isinstance(mp, list) and len(mp) >= 3, "field.min_poly",
            "expected coefficient list of degree >= 2 (ascending)")
    min_poly = tuple(_as_int(c, f"field.min_poly[{k}]") for k, c in enumerate(mp))
    _expect(min_poly[-1] == 1, "field.min_poly", "polynomial must be monic")
    d = len(min_poly) - 1

    basis_raw = obj["integral_basis"]
    _expect(isinstance(basis_raw, list) and len(basis_raw) == d, "field.integral_basis",
            f"expected {d} basis vectors")
    basis = tuple(_rational_vector(v, d, f"field.integral_basis[{k}]")
                  for k, v in enumerate(basis_raw))

    autos_raw = obj["automorphisms"]
    _expect(isinstance(autos_raw, list) and len(autos_raw) == d, "field.automorphisms",
            f"expected {d} automorphism polynomials")
    autos = tuple(_rational_vector(v, d, f"field.automorphisms[{k}]")
                  for k, v in enumerate(autos_raw))

    units_raw = obj["unit_basis"]
    _expect(isinstance(units_raw, list) and len(units_raw) == d - 1, "field.unit_basis",
            f"expected {d - 1} unit coordinate vectors for degree {d}")
    units = tuple(_int_vector(v, d, f"field.unit_basis[{k}]")
                  for k, v in enumerate(units_raw))

    h = _class_number(obj, "field.class_number")
    try:
        field = FieldDescriptor(min_poly, basis, autos, class_number=h)
    except InvalidInputError as e:
        raise ConfigError("field", str(e)) from None
    echo = {
        "min_poly": list(min_poly),
        "integral_basis": [[_rational_json(x) for x in v] for v in basis],
        "automorphisms": [[_rational_json(x) for x in v] for v in autos],
        "unit_basis": [list(v) for v in units],
        "class_number": h,
    }
    return field, echo, units


def _class_number(obj, path):
    _expect("class_number" in obj, path.rsplit(".", 1)[0],
            "class_number is required")
    h = _as_int(obj["class_number"], path)
    _expect(h >= 1, path, "class number must be >= 1")
    return h


def _parse_curve(obj, field):
    _check_keys(obj, ("a_invariants",), "curve")
    _expect("a_invariants" in obj, "curve", "a_invariants is required")
    vecs = obj["a_invariants"]
    _expect(isinstance(vecs, list) and len(vecs) == 5, "curve.a_invariants",
            "expected 5 coordinate vectors (a1, a2, a3, a4, a6)")
    d = field.degree
    coords = tuple(_int_vector(v, d, f"curve.a_invariants[{k}]")
                   for k, v in enumerate(vecs))
    try:
        curve = WeierstrassCurve(field, [field.element(c) for c in coords])
    except InvalidInputError as e:
        raise ConfigError("curve", str(e)) from None
    return curve, {"a_invariants": [list(c) for c in coords]}


def _parse_family(obj, field):
    _check_keys(obj, _FAMILY_KEYS, "family")
    d = field.degree
    coeffs = {}
    echo = {}
    for key in _FAMILY_COEFF_KEYS:
        if key not in obj:
            continue
        raw = obj[key]
        _expect(isinstance(raw, list), f"family.{key}", "expected a list of monomials")
        monos = []
        for k, entry in enumerate(raw):
            path = f"family.{key}[{k}]"
            _expect(isinstance(entry, list) and len(entry) == 3, path,
                    "expected [i, j, coords]")
            i = _as_int(entry[0], f"{path}[0]")
            j = _as_int(entry[1], f"{path}[1]")
            _expect(i >= 0 and j >= 0, path, "monomial exponents must be >= 0")
            c = _int_vector(entry[2], d, f"{path}[2]")
            monos.append((i, j, c))
        if monos:
            monos.sort(key=lambda m: (m[0], m[1]))
            coeffs[key[-2:]] = tuple(monos)  # "coeff_a1" -> "a1"
            echo[key] = [[i, j, list(c)] for i, j, c in monos]

    skip = obj.get("skip", "both_zero")
    _expect(skip in SKIP_PREDICATE_NAMES, "family.skip",
            f"expected one of {list(SKIP_PREDICATE_NAMES)}, got {skip!r}")
    chars_raw = obj.get("additive_residue_chars", [])
    _expect(isinstance(chars_raw, list), "family.additive_residue_chars",
            "expected a list of primes")
    chars = []
    for k, c in enumerate(chars_raw):
        c = _as_int(c, f"family.additive_residue_chars[{k}]")
        ok, _ = is_prime(c)
        _expect(ok, f"family.additive_residue_chars[{k}]", f"{c} is not prime")
        chars.append(c)
    chars = sorted(set(chars))

    try:
        family = CurveFamily(field, coeffs, skip=skip, additive_residue_chars=chars)
    except InvalidInputError as e:
        raise ConfigError("family", str(e)) from None
    echo["skip"] = skip
    echo["additive_residue_chars"] = chars
    return family, echo


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON configuration document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError("", f"invalid JSON: {e}") from None
    _check_keys(doc, _TOP_KEYS, "")
    _expect("field" in doc, "", "a field description is required")
    field, field_data, unit_vectors = _parse_field(doc["field"])

    _expect(not ("curve" in doc and "family" in doc), "",
            "curve and family are mutually exclusive")
    curve = curve_data = family = family_data = None
    if "curve" in doc:
        curve, curve_data = _parse_curve(doc["curve"], field)
    elif "family" in doc:
        family, family_data = _parse_family(doc["family"], field)

    aux_raw = doc.get("aux_primes", [])
    _expect(isinstance(aux_raw, list), "aux_primes", "expected a list of primes")
    aux = []
    for k, ell in enumerate(aux_raw):
        ell = _as_int(ell, f"aux_primes[{k}]")
        ok, _ = is_prime(ell)
        _expect(ok, f"aux_primes[{k}]", f"{ell} is not prime")
        _expect(ell not in aux, f"aux_primes[{k}]", f"duplicate auxiliary prime {ell}")
        aux.append(ell)
    _expect(not (aux and curve is None and family is None), "aux_primes",
            "auxiliary primes require a curve or family to examine")

    overrides_raw = doc.get("r_overrides", {})
    _expect(isinstance(overrides_raw, dict), "r_overrides", "expected an object")
    overrides = {}
    for key, val in overrides_raw.items():
        path = f"r_overrides.{key}"
        try:
            ell = int(key)
        except ValueError:
            raise ConfigError(path, f"key {key!r} is not an integer") from None
        _expect(ell in aux, path, f"{ell} is not among the auxiliary primes")
        r = _as_int(val, path)
        _expect(r >= 1, path, "r must be >= 1")
        overrides[ell] = r

    cap = doc.get("count_cap", DEFAULT_COUNT_CAP)
    cap = _as_int(cap, "count_cap")
    _expect(cap >= 2, "count_cap", "count_cap must be >= 2")

    return RunConfig(
        field=field,
        field_data=field_data,
        unit_vectors=unit_vectors,
        curve=curve,
        curve_data=curve_data,
        family=family,
        family_data=family_data,
        aux_primes=tuple(aux),
        r_overrides=overrides,
        count_cap=cap,
    )
