"""Batch front end: a JSON job (or array of jobs) in, JSON results out."""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from typing import Any, Callable, Mapping

from . import __version__
from .classparam import admissible_coset_even, admissible_coset_odd, build_qxic, coset_label, other_coset
from .engine import m_pairing, predict
from .errors import DomainError, ValidationError
from .jsonio import (
    read_bits,
    read_c,
    read_class,
    read_descriptors,
    read_form,
    read_gamma,
    read_int,
    read_parameter,
    read_prime,
    read_rational,
    read_xi,
    require,
)
from .padic import all_square_classes, hilbert, square_class, valuation
from .quadspace import classify, other_class
from .rootnumbers import (
    AbelianIrred,
    MultChar,
    gauss_eps,
    oracle_table,
    sp_correction,
    table_from_json,
    validate_table,
)
from .transfer import capital_D, delta_element, poly_P, tf_even, tf_odd, tf_twisted
from .wdparam import ORTH, SYMP, component_group, epsilon_set
from .xi import c_one, enumerate_c, solve_gamma

COMMANDS: dict[str, Callable[[Mapping, "Context"], dict]] = {}


class Context:
    """Values supplied on the command line rather than in the job."""

    def __init__(self, p: int | None = None, nu0: str | None = None, table: dict | None = None):
        self.p = p
        self.nu0 = nu0
        self.table = table

    def prime(self, job: Mapping, where: str) -> int:
        if self.p is not None:
            return self.p
        return read_prime(require(job, "p", where), f"{where}.p")

    def nu0_class(self, job: Mapping, p: int, where: str):
        raw = self.nu0 if self.nu0 is not None else job.get("nu0", 1)
        return read_class(raw, p, f"{where}.nu0")


def command(name: str):
    def wrap(fn):
        COMMANDS[name] = fn
        return fn

    return wrap


@command("hilbert")
def _hilbert(job, ctx, where="job"):
    p = ctx.prime(job, where)
    a = read_class(require(job, "a", where), p, f"{where}.a")
    b = read_class(require(job, "b", where), p, f"{where}.b")
    return {"p": p, "a": str(a), "b": str(b), "value": hilbert(a, b)}


@command("squareclass")
def _squareclass(job, ctx, where="job"):
    p = ctx.prime(job, where)
    classes = all_square_classes(p)
    if "x" not in job:
        return {"p": p, "classes": [str(c) for c in classes]}
    x = read_rational(job["x"], f"{where}.x")
    if x == 0:
        raise ValidationError("zero has no square class", f"{where}.x")
    c = square_class(x, p)
    return {
        "p": p,
        "x": str(x),
        "class": str(c),
        "index": classes.index(c),
        "val_parity": c.val_parity,
        "unit_class": c.unit_class,
    }


@command("classify")
def _classify(job, ctx, where="job"):
    p = ctx.prime(job, where)
    d = read_int(require(job, "d", where), f"{where}.d", 0)
    delta = read_class(job.get("delta", 1), p, f"{where}.delta")
    forms = classify(d, delta, p)
    return {"p": p, "d": d, "delta": str(delta), "count": len(forms), "classes": [q.to_json() for q in forms]}


@command("xi-inspect")
def _xi_inspect(job, ctx, where="job"):
    p = ctx.prime(job, where)
    xi = read_xi(require(job, "xi", where), p, f"{where}.xi")
    regular = xi.is_regular()
    out = {
        "p": p,
        "xi": xi.to_json(),
        "d": xi.d,
        "delta": str(xi.delta),
        "regular": regular,
        "field_indices": list(xi.istar),
        "C_order": len(enumerate_c(xi)),
        "C1_order": len(c_one(xi)),
        "P": [str(c) for c in poly_P(xi).coeffs],
    }
    dv = delta_element(xi)
    out["Delta"] = {"P(1)": str(dv), "v_p": None if dv == 0 else valuation(dv, p)}
    out["D_v_p"] = capital_D(xi).exponent if regular else None
    out["gamma"] = {
        str(i): [[str(c) for c in (g.x, g.y)] for g in solve_gamma(xi.entries[i], p)]
        for i in xi.istar
        if xi.entries[i].y != xi.entries[i].y.scalar(1)
    }
    return out


@command("transfer-factor")
def _transfer_factor(job, ctx, where="job"):
    p = ctx.prime(job, where)
    mode = require(job, "mode", where)
    if mode in ("odd", "even"):
        xp = read_xi(job.get("xi_plus", []), p, f"{where}.xi_plus")
        xm = read_xi(job.get("xi_minus", []), p, f"{where}.xi_minus")
        c = read_c(require(job, "c", where), xp + xm, f"{where}.c")
        if mode == "odd":
            qp = read_form(require(job, "q_prime", where), p, f"{where}.q_prime")
            value = tf_odd(qp, xp, xm, c)
        else:
            q = read_form(require(job, "q", where), p, f"{where}.q")
            value = tf_even(q, xp, xm, c, ctx.nu0_class(job, p, where))
        return {"p": p, "mode": mode, "value": value}
    if mode == "twisted":
        q = read_form(require(job, "q", where), p, f"{where}.q")
        xi = read_xi(require(job, "xi", where), p, f"{where}.xi")
        y_xi = read_xi(require(job, "y_xi", where), p, f"{where}.y_xi")
        gamma_d = read_class(job["gamma_d"], p, f"{where}.gamma_d") if "gamma_d" in job else None
        gamma = read_gamma(require(job, "gamma", where), xi, f"{where}.gamma", gamma_d)
        return {"p": p, "mode": mode, "value": tf_twisted(q, y_xi, xi, gamma)}
    raise ValidationError("mode must be odd, even or twisted", f"{where}.mode")


@command("param-fiber")
def _param_fiber(job, ctx, where="job"):
    p = ctx.prime(job, where)
    xi = read_xi(require(job, "xi", where), p, f"{where}.xi")
    if "q" in job:
        q = read_form(job["q"], p, f"{where}.q")
        coset = admissible_coset_even(q, xi)
        line = None
    elif "q_prime" in job:
        q = read_form(job["q_prime"], p, f"{where}.q_prime")
        coset, line = admissible_coset_odd(q, xi)
    else:
        raise ValidationError("give q (even case) or q_prime (odd case)", where)
    rest = other_coset(coset, xi)
    alt = other_class(q)
    return {
        "p": p,
        "form": q.to_json(),
        "coset": [c.to_json() for c in coset],
        "label": coset_label(coset) if xi.istar else 1,
        "line": None if line is None else str(line.diag[0]),
        "q_xi_c": build_qxic(xi, coset[0]).to_json(),
        "other_coset": [c.to_json() for c in rest],
        "other_form": None if alt is None else alt.to_json(),
    }


def _read_kind(job, where):
    kind = require(job, "kind", where)
    if kind not in (ORTH, SYMP):
        raise ValidationError("kind must be orth or symp", f"{where}.kind")
    return kind


@command("compgroup")
def _compgroup(job, ctx, where="job"):
    p = ctx.prime(job, where)
    kind = _read_kind(job, where)
    descs = read_descriptors(require(job, "descriptors", where), p, f"{where}.descriptors")
    phi = read_parameter(require(job, "phi", where), descs, f"{where}.phi")
    g = component_group(phi, kind)
    return {
        "p": p,
        "kind": kind,
        "N": phi.N,
        "group": g.to_json(),
        "characters": [ch.to_json() for ch in g.characters()],
        "packet_plus": [ch.to_json() for ch in epsilon_set(phi, kind, 1)],
        "packet_minus": [ch.to_json() for ch in epsilon_set(phi, kind, -1)],
    }


@command("gp-predict")
def _gp_predict(job, ctx, where="job"):
    p = ctx.prime(job, where)
    nu0 = ctx.nu0_class(job, p, where)
    q = read_form(require(job, "q", where), p, f"{where}.q")
    qp = read_form(require(job, "q_prime", where), p, f"{where}.q_prime")
    descs = read_descriptors(require(job, "descriptors", where), p, f"{where}.descriptors")
    phi = read_parameter(require(job, "phi", where), descs, f"{where}.phi")
    phip = read_parameter(require(job, "phi_prime", where), descs, f"{where}.phi_prime")
    raw = ctx.table if ctx.table is not None else require(job, "table", where)
    try:
        table = table_from_json(raw)
    except ValidationError as exc:
        raise ValidationError(str(exc), f"{where}.{exc.field}") from None
    used = [d for d, _ in phi.items + phi.theta_pairs]
    used_p = [d for d, _ in phip.items + phip.theta_pairs]
    bad = validate_table(table.restricted([d.id for d in used], [d.id for d in used_p]), used, used_p)
    if bad:
        raise ValidationError("; ".join(bad), f"{where}.table")
    pred = predict(phi, phip, q, qp, nu0, table)
    out = {"p": p, "nu0": str(nu0), "mu_G": pred.mu_g, "prediction": pred.to_json()}
    if "s" in job or "s_prime" in job:
        s = read_bits(job.get("s", {}), pred.group.basis, f"{where}.s")
        sp = read_bits(job.get("s_prime", {}), pred.group_prime.basis, f"{where}.s_prime")
        out["m_pairing"] = str(m_pairing(s, sp, pred))
    return out


def _read_char(raw, p, where) -> MultChar:
    if not isinstance(raw, Mapping):
        raise ValidationError("a character is an object", where)
    if "quadratic" in raw:
        return MultChar.quadratic(read_class(raw["quadratic"], p, f"{where}.quadratic"))
    turns = require(raw, "unit_turns", where)
    if not isinstance(turns, list):
        raise ValidationError("unit_turns must be a list", f"{where}.unit_turns")
    try:
        return MultChar(
            p,
            tuple(read_rational(t, f"{where}.unit_turns[{k}]") for k, t in enumerate(turns)),
            read_rational(raw.get("unram_turn", 0), f"{where}.unram_turn"),
        )
    except DomainError as exc:
        raise ValidationError(str(exc), where) from None


def _read_abelian(rows, p, where) -> list[AbelianIrred]:
    if not isinstance(rows, list):
        raise ValidationError("expected a list of constituents", where)
    out = []
    for k, r in enumerate(rows):
        w = f"{where}[{k}]"
        ident = require(r, "id", w)
        chi = MultChar.quadratic(read_class(r.get("disc", 1), p, f"{w}.disc"))
        out.append(AbelianIrred(str(ident), chi, read_int(r.get("n", 1), f"{w}.n", 1)))
    return out


@command("rootnum")
def _rootnum(job, ctx, where="job"):
    p = ctx.prime(job, where)
    psi = read_int(job.get("psi_conductor", 0), f"{where}.psi_conductor")
    out: dict[str, Any] = {"p": p, "psi_conductor": psi}
    if "chi" in job:
        chi = _read_char(job["chi"], p, f"{where}.chi")
        n = read_int(job.get("sp", 1), f"{where}.sp", 1)
        out["chi"] = chi.to_json()
        out["sp"] = n
        out["eps"] = sp_correction(chi, n, psi).to_json()
        out["eps_inverse_product"] = (gauss_eps(chi, psi) * gauss_eps(chi.inverse(), psi)).to_json()
    if "abelian" in job:
        ab = job["abelian"]
        side = _read_abelian(require(ab, "phi", f"{where}.abelian"), p, f"{where}.abelian.phi")
        side_p = _read_abelian(require(ab, "phi_prime", f"{where}.abelian"), p, f"{where}.abelian.phi_prime")
        out["descriptors"] = [a.descriptor().to_json() for a in side + side_p]
        out["table"] = oracle_table(side, side_p, psi).to_json()
    if len(out) == 2:
        raise ValidationError("give chi and/or abelian", where)
    return out


@command("selftest")
def _selftest(job, ctx, where="job"):
    from .selftest import run_selftest

    plist = job.get("p_list", [2, 3, 5])
    if ctx.p is not None:
        plist = [ctx.p]
    if not isinstance(plist, list) or not plist:
        raise ValidationError("p_list must be a non-empty list", f"{where}.p_list")
    primes = [read_prime(x, f"{where}.p_list[{k}]") for k, x in enumerate(plist)]
    return run_selftest(primes)


def run(name: str, job: Any, ctx: Context) -> dict:
    """Header plus one result, or a list of results for an array job."""
    fn = COMMANDS[name]
    header = {"version": __version__, "command": name}
    if isinstance(job, list):
        header["results"] = [fn(j, ctx, f"job[{k}]") for k, j in enumerate(job)]
    else:
        header["result"] = fn(job, ctx)
    return header


def _text(value: Any, prefix: str = "") -> list[str]:
    if isinstance(value, Mapping):
        lines = []
        for k in sorted(value):
            lines += _text(value[k], f"{prefix}.{k}" if prefix else str(k))
        return lines
    if isinstance(value, list) and any(isinstance(v, (Mapping, list)) for v in value):
        return list(itertools.chain.from_iterable(_text(v, f"{prefix}[{k}]") for k, v in enumerate(value)))
    return [f"{prefix}: {json.dumps(value)}"]


def render(result: dict, fmt: str) -> str:
    if fmt == "text":
        return "\n".join(_text(result)) + "\n"
    return json.dumps(result, sort_keys=True, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="localgp", description="Exact local computations for SO groups.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--p", type=int, help="prime; overrides the job's p")
    ap.add_argument("--nu0", help="square class nu0; overrides the job's nu0")
    ap.add_argument("--job", help="job file (JSON object or array); default: standard input")
    ap.add_argument("--table", help="root-number table file for gp-predict")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    return ap


def _load(path: str | None, label: str) -> Any:
    try:
        if path is None:
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", label) from None
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}", label) from None


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.p is not None:
            read_prime(args.p, "--p")
        ctx = Context(args.p, args.nu0, _load(args.table, "--table") if args.table else None)
        job = {} if args.command == "selftest" and args.job is None else _load(args.job, "job")
        result = run(args.command, job, ctx)
    except ValidationError as exc:
        print(f"error: {exc.field or 'job'}: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: job: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(render(result, args.format))
    if args.command == "selftest" and result["result"]["failures"]:
        return 1
    return 0
