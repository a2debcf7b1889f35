"""Reading job payloads into library objects, with field pointers on failure."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping

from .errors import DomainError, ValidationError
from .padic import SquareClass, check_prime, parse_rational, square_class
from .quadspace import QuadraticSpace
from .wdparam import IrredDescriptor, WDParameter
from .xi import GammaElement, QuadAlgebraElement, XiEntry, XiFamily, solve_gamma


def require(job: Mapping, key: str, where: str) -> Any:
    if not isinstance(job, Mapping):
        raise ValidationError("expected an object", where)
    if key not in job:
        raise ValidationError(f"missing field {key!r}", f"{where}.{key}")
    return job[key]


def read_int(value: Any, where: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError("expected an integer", where)
    if minimum is not None and value < minimum:
        raise ValidationError(f"must be >= {minimum}", where)
    return value


def read_prime(value: Any, where: str) -> int:
    p = read_int(value, where)
    try:
        return check_prime(p)
    except DomainError as exc:
        raise ValidationError(str(exc), where) from None


def read_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, float):
        raise ValidationError("floats are not accepted; use an integer or 'a/b'", where)
    try:
        return parse_rational(value)
    except DomainError as exc:
        raise ValidationError(str(exc), where) from None


def read_class(value: Any, p: int, where: str) -> SquareClass:
    """A square class given by any nonzero rational representative."""
    x = read_rational(value, where)
    if x == 0:
        raise ValidationError("zero has no square class", where)
    return square_class(x, p)


def read_form(value: Any, p: int, where: str) -> QuadraticSpace:
    """Either a list of diagonal entries or {"diag": [...]} or {"gram": [[...]]}."""
    if isinstance(value, list):
        diag = value
    elif isinstance(value, Mapping) and "diag" in value:
        diag = value["diag"]
    elif isinstance(value, Mapping) and "gram" in value:
        gram = value["gram"]
        if not isinstance(gram, list) or any(not isinstance(r, list) or len(r) != len(gram) for r in gram):
            raise ValidationError("gram must be a square matrix", f"{where}.gram")
        rows = [[read_rational(v, f"{where}.gram[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(gram)]
        try:
            return QuadraticSpace.from_gram(rows, p)
        except DomainError as exc:
            raise ValidationError(str(exc), f"{where}.gram") from None
    else:
        raise ValidationError("a form is a list of diagonal entries or an object with diag/gram", where)
    if not isinstance(diag, list):
        raise ValidationError("diag must be a list", where)
    return QuadraticSpace(p, tuple(read_class(a, p, f"{where}[{k}]") for k, a in enumerate(diag)))


def _read_y(value: Any, where: str) -> tuple[Fraction, Fraction]:
    if not isinstance(value, list) or len(value) != 4:
        raise ValidationError("y must be [num, den, num, den]", where)
    nums = [read_int(v, f"{where}[{k}]") for k, v in enumerate(value)]
    if nums[1] == 0 or nums[3] == 0:
        raise ValidationError("zero denominator", where)
    return Fraction(nums[0], nums[1]), Fraction(nums[2], nums[3])


def read_xi(value: Any, p: int, where: str) -> XiFamily:
    if not isinstance(value, list):
        raise ValidationError("xi must be a list of entries", where)
    entries = []
    for k, e in enumerate(value):
        w = f"{where}[{k}]"
        kind = require(e, "kind", w)
        a, b = _read_y(require(e, "y", w), f"{w}.y")
        if kind == "split":
            if a == 0 or b == 0:
                raise ValidationError("split coordinates must be nonzero", f"{w}.y")
            y = QuadAlgebraElement.split_elt(a, b)
        elif isinstance(kind, Mapping) and "field" in kind:
            delta = read_rational(kind["field"], f"{w}.kind.field")
            if delta == 0:
                raise ValidationError("radicand must be nonzero", f"{w}.kind.field")
            y = QuadAlgebraElement.field_elt(delta, a, b)
        else:
            raise ValidationError('kind must be "split" or {"field": radicand}', f"{w}.kind")
        if y.norm() != 1:
            raise ValidationError(f"y = {y} does not have norm 1", f"{w}.y")
        entries.append(XiEntry(y))
    try:
        return XiFamily(p, tuple(entries))
    except DomainError as exc:
        raise ValidationError(str(exc), where) from None


def read_c(value: Any, xi: XiFamily, where: str) -> dict[int, Fraction]:
    """c as {"index": rational} on the field entries."""
    if not isinstance(value, Mapping):
        raise ValidationError("c must map field-entry indices to rationals", where)
    out = {}
    for key, v in value.items():
        try:
            i = int(key)
        except ValueError:
            raise ValidationError("keys must be entry indices", f"{where}.{key}") from None
        if i not in xi.istar:
            raise ValidationError(f"index {i} is not a field entry", f"{where}.{key}")
        c = read_rational(v, f"{where}.{key}")
        if c == 0:
            raise ValidationError("c_i must be nonzero", f"{where}.{key}")
        out[i] = c
    missing = sorted(set(xi.istar) - out.keys())
    if missing:
        raise ValidationError(f"missing indices {missing}", where)
    return out


def read_gamma(value: Any, xi: XiFamily, where: str, gamma_d: SquareClass | None) -> GammaElement:
    """gamma as {"index": 0 | 1}, picking one of the two norm cosets per field entry."""
    if not isinstance(value, Mapping):
        raise ValidationError("gamma must map field-entry indices to 0 or 1", where)
    picks = {}
    for key, v in value.items():
        try:
            i = int(key)
        except ValueError:
            raise ValidationError("keys must be entry indices", f"{where}.{key}") from None
        if i not in xi.istar:
            raise ValidationError(f"index {i} is not a field entry", f"{where}.{key}")
        if v not in (0, 1) or isinstance(v, bool):
            raise ValidationError("coset tag must be 0 or 1", f"{where}.{key}")
        picks[i] = v
    missing = sorted(set(xi.istar) - picks.keys())
    if missing:
        raise ValidationError(f"missing indices {missing}", where)
    gammas = tuple((i, solve_gamma(xi.entries[i], xi.p)[picks[i]]) for i in xi.istar)
    return GammaElement(gammas, gamma_d)


def read_descriptor(value: Any, p: int, where: str) -> IrredDescriptor:
    ident = require(value, "id", where)
    if not isinstance(ident, str) or not ident:
        raise ValidationError("id must be a non-empty string", f"{where}.id")
    n = read_int(require(value, "N", where), f"{where}.N", 1)
    kind = require(value, "type", where)
    disc = read_class(value["disc"], p, f"{where}.disc") if "disc" in value else None
    sign = value.get("central_sign")
    try:
        if kind == "orth" and disc is not None and sign is None:
            return IrredDescriptor.orth(ident, n, disc)
        if sign is None:
            sign = 1
        return IrredDescriptor(ident, n, kind, disc, read_int(sign, f"{where}.central_sign"))
    except ValidationError as exc:
        raise ValidationError(str(exc), f"{where}.{exc.field}") from None


def read_descriptors(value: Any, p: int, where: str) -> dict[str, IrredDescriptor]:
    if not isinstance(value, list):
        raise ValidationError("descriptors must be a list", where)
    out: dict[str, IrredDescriptor] = {}
    for k, d in enumerate(value):
        desc = read_descriptor(d, p, f"{where}[{k}]")
        if desc.id in out:
            raise ValidationError(f"duplicate id {desc.id!r}", f"{where}[{k}].id")
        out[desc.id] = desc
    return out


def read_parameter(value: Any, descs: Mapping[str, IrredDescriptor], where: str) -> WDParameter:
    if not isinstance(value, Mapping):
        raise ValidationError("a parameter is an object with items and theta_pairs", where)
    parts = {}
    for key in ("items", "theta_pairs"):
        rows = value.get(key, [])
        if not isinstance(rows, list):
            raise ValidationError("expected a list of [id, multiplicity]", f"{where}.{key}")
        got = []
        for k, row in enumerate(rows):
            w = f"{where}.{key}[{k}]"
            if not isinstance(row, list) or len(row) != 2:
                raise ValidationError("expected [id, multiplicity]", w)
            if row[0] not in descs:
                raise ValidationError(f"unknown descriptor id {row[0]!r}", f"{w}[0]")
            got.append((descs[row[0]], read_int(row[1], f"{w}[1]", 1)))
        parts[key] = got
    return WDParameter.of(parts["items"], parts["theta_pairs"])


def read_bits(value: Any, basis: tuple[str, ...], where: str) -> tuple[int, ...]:
    """An element of (Z/2)^basis given as {"id": 0 | 1}; missing ids are 0."""
    if not isinstance(value, Mapping):
        raise ValidationError("expected an object mapping ids to 0 or 1", where)
    for key, v in value.items():
        if key not in basis:
            raise ValidationError(f"{key!r} is not in the component group basis", f"{where}.{key}")
        if v not in (0, 1) or isinstance(v, bool):
            raise ValidationError("expected 0 or 1", f"{where}.{key}")
    return tuple(int(value.get(i, 0)) for i in basis)
