"""Command line interface.

States are described by JSON files.  A state spec is an object with exactly
one of the following keys:

    {"matrix": [[...], ...]}
        A correlation matrix given literally, row by row.
    {"thermal": {"nbar": 0.5}}
        A thermal state; nbar may be a number or a list (one entry per mode).
    {"squeezed_thermal": {"nbar": [...], "r": [...], "theta": [...]}}
        Per-mode squeezed thermal states; theta is optional and defaults to
        zero, and all lists must have the same length.
    {"composite": {"parts": [spec, ...], "transform": [[...], ...]}}
        The tensor product of the listed specs, optionally conjugated by a
        symplectic matrix (A -> S^T A S).  transform is optional.

Exit codes: 0 on success, 1 for domain errors (invalid states, formula
preconditions), 2 for unreadable files or malformed specs, 3 when a numeric
verification request falls outside the oracle envelope.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .core import (
    Tolerances,
    conjugate,
    euler_decompose,
    is_pure,
    squeezed_thermal_state,
    standard_form,
    symplectic_eigenvalues,
    tensor,
    thermal_state,
    validate,
    williamson,
)
from .errors import GaussianStateError, TruncationError
from .fidelity import (
    _thermal_diagonal,
    fidelity_general,
    fidelity_one_mode,
    fidelity_thermal,
)
from .fock import gaussian_density, uhlmann_fidelity_numeric

__all__ = ["main", "entry"]


class SpecError(Exception):
    """A state spec or option file could not be parsed."""


_VARIANTS = ("matrix", "thermal", "squeezed_thermal", "composite")


def _fmt(x: float) -> str:
    return f"{float(x):.12g}"


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _print_matrix(label: str, m: np.ndarray) -> None:
    print(f"{label}:")
    for row in np.atleast_2d(m):
        if np.iscomplexobj(m):
            print("  " + " ".join(_fmt_complex(z) for z in row))
        else:
            print("  " + " ".join(_fmt(x) for x in row))


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path} is not valid JSON: {exc}") from exc


def _numeric_array(body, where: str, ndim: int) -> np.ndarray:
    try:
        arr = np.array(body, dtype=float)
    except (TypeError, ValueError) as exc:
        raise SpecError(f"{where} must be numeric: {exc}") from exc
    if arr.ndim != ndim:
        raise SpecError(f"{where} must be {ndim}-dimensional, got shape {arr.shape}")
    return arr


def _require_keys(body, where: str, required: set, optional: set = frozenset()):
    if not isinstance(body, dict):
        raise SpecError(f"{where} must be a JSON object")
    missing = required - set(body)
    if missing:
        raise SpecError(f"{where} is missing {sorted(missing)}")
    extra = set(body) - required - optional
    if extra:
        raise SpecError(f"{where} has unknown keys {sorted(extra)}")


def _vector(body, where: str) -> np.ndarray:
    try:
        arr = np.atleast_1d(np.asarray(body, dtype=float))
    except (TypeError, ValueError) as exc:
        raise SpecError(f"{where} must be a number or list of numbers: {exc}") from exc
    if arr.ndim != 1:
        raise SpecError(f"{where} must be a number or flat list, got shape {arr.shape}")
    return arr


def state_from_spec(spec, where: str = "state spec") -> np.ndarray:
    """Resolve a JSON state spec into a correlation matrix.

    Raises:
        SpecError: structural problems (wrong keys, non-numeric data).
        GaussianStateError: the described state is not physical.
    """
    if not isinstance(spec, dict):
        raise SpecError(f"{where} must be a JSON object")
    present = [k for k in _VARIANTS if k in spec]
    if len(present) != 1:
        raise SpecError(
            f"{where} must contain exactly one of {list(_VARIANTS)}, "
            f"found {present if present else 'none of them'}"
        )
    kind = present[0]
    extra = set(spec) - {kind}
    if extra:
        raise SpecError(f"{where} has unknown keys {sorted(extra)}")
    body = spec[kind]
    if kind == "matrix":
        return _numeric_array(body, f"{where}: matrix", 2)
    if kind == "thermal":
        _require_keys(body, f"{where}: thermal", {"nbar"})
        return thermal_state(_vector(body["nbar"], f"{where}: nbar")).a
    if kind == "squeezed_thermal":
        _require_keys(body, f"{where}: squeezed_thermal", {"nbar", "r"}, {"theta"})
        nbar = _vector(body["nbar"], f"{where}: nbar")
        r = _vector(body["r"], f"{where}: r")
        theta = (
            _vector(body["theta"], f"{where}: theta") if "theta" in body else None
        )
        return squeezed_thermal_state(nbar, r, theta).a
    _require_keys(body, f"{where}: composite", {"parts"}, {"transform"})
    parts = body["parts"]
    if not isinstance(parts, list) or not parts:
        raise SpecError(f"{where}: composite parts must be a non-empty list")
    acc = state_from_spec(parts[0], f"{where}: parts[0]")
    for i, part in enumerate(parts[1:], start=1):
        acc = tensor(acc, state_from_spec(part, f"{where}: parts[{i}]")).a
    if "transform" in body:
        s = _numeric_array(body["transform"], f"{where}: transform", 2)
        acc = conjugate(acc, s).a
    return acc


def _load_state(path: str) -> np.ndarray:
    return state_from_spec(_load_json(path), where=path)


def _load_tolerances(path: str | None) -> Tolerances | None:
    if path is None:
        return None
    data = _load_json(path)
    if not isinstance(data, dict):
        raise SpecError(f"{path} must hold a JSON object of tolerance overrides")
    try:
        return Tolerances.from_dict(data)
    except (TypeError, ValueError) as exc:
        raise SpecError(f"{path}: {exc}") from exc


def _cmd_validate(args, tol: Tolerances | None) -> int:
    cm = validate(_load_state(args.state), tol)
    d = symplectic_eigenvalues(cm, tol)
    print(f"modes: {cm.n}")
    print("symplectic eigenvalues: " + " ".join(_fmt(x) for x in d))
    print(f"pure: {'true' if is_pure(cm, tol) else 'false'}")
    print(f"det A: {_fmt(np.linalg.det(cm.a))}")
    return 0


def _resolve_method(cm1, cm2, tol: Tolerances | None) -> str:
    t = Tolerances() if tol is None else tol
    if cm1.n == 1:
        return "one-mode"
    if (
        _thermal_diagonal(cm1, t) is not None
        and _thermal_diagonal(cm2, t) is not None
    ):
        return "thermal"
    return "general"


def _cmd_fidelity(args, tol: Tolerances | None) -> int:
    cm1 = validate(_load_state(args.state1), tol)
    cm2 = validate(_load_state(args.state2), tol)
    method = args.method
    if method == "auto":
        method = _resolve_method(cm1, cm2, tol)
    if method == "one-mode":
        f = fidelity_one_mode(cm1, cm2, tol)
    elif method == "thermal":
        f = fidelity_thermal(cm1, cm2, tol)
    else:
        f = fidelity_general(cm1, cm2, tol).f
    print(f"method: {method}")
    print(f"fidelity: {_fmt(f)}")
    print(f"sqrt fidelity: {_fmt(np.sqrt(f))}")
    if args.breakdown:
        bd = fidelity_general(cm1, cm2, tol)
        print("breakdown (general formula):")
        print(f"  L: {_fmt(bd.l)}")
        print(f"  det Phi(O): {_fmt(bd.det_phi_o)}")
        _print_matrix("  Phi(A1)", bd.phi1)
        _print_matrix("  U", bd.u)
        _print_matrix("  O", bd.o)
    if args.verify is not None:
        rho1 = gaussian_density(cm1, args.verify, tol)
        rho2 = gaussian_density(cm2, args.verify, tol)
        f_num = uhlmann_fidelity_numeric(rho1, rho2)
        print(f"oracle cutoff: {args.verify}")
        print(f"oracle fidelity: {_fmt(f_num)}")
        print(f"oracle difference: {_fmt(abs(f - f_num))}")
    return 0


def _cmd_decompose(args, tol: Tolerances | None) -> int:
    cm = validate(_load_state(args.state), tol)
    dec = williamson(cm, tol)
    eul = euler_decompose(dec.s, tol)
    j = standard_form(cm.n).j
    print(f"modes: {cm.n}")
    print("symplectic eigenvalues: " + " ".join(_fmt(x) for x in dec.d))
    _print_matrix("S", dec.s)
    print("euler m: " + " ".join(_fmt(x) for x in eul.m))
    _print_matrix("O", eul.o)
    _print_matrix("O'", eul.o_prime)
    recon_w = np.abs(dec.s.T @ dec.d_matrix @ dec.s - cm.a).max()
    recon_e = np.abs(eul.o @ eul.m_matrix @ eul.o_prime - dec.s).max()
    symp = np.abs(dec.s.T @ j @ dec.s - j).max()
    print(
        "residuals: williamson "
        + _fmt(recon_w)
        + " euler "
        + _fmt(recon_e)
        + " symplectic "
        + _fmt(symp)
    )
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gaussfid",
        description="Fidelity and structure of multimode Gaussian states "
        "given by correlation matrices.",
    )
    parser.add_argument(
        "--tolerances",
        metavar="FILE",
        help="JSON object overriding numerical tolerances by name",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser(
        "validate", help="check a state spec and print its invariants"
    )
    p_validate.add_argument("state", help="JSON state spec file")

    p_fidelity = sub.add_parser(
        "fidelity", help="fidelity between two states"
    )
    p_fidelity.add_argument("state1", help="JSON state spec file")
    p_fidelity.add_argument("state2", help="JSON state spec file")
    p_fidelity.add_argument(
        "--method",
        choices=["auto", "general", "one-mode", "thermal"],
        default="auto",
        help="formula to use (default: picked from the inputs)",
    )
    p_fidelity.add_argument(
        "--breakdown",
        action="store_true",
        help="also print the intermediates of the general formula",
    )
    p_fidelity.add_argument(
        "--verify",
        type=int,
        metavar="N",
        help="cross check against the truncated number-basis oracle at cutoff N",
    )

    p_decompose = sub.add_parser(
        "decompose", help="Williamson and Euler factorizations of a state"
    )
    p_decompose.add_argument("state", help="JSON state spec file")

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        tol = _load_tolerances(args.tolerances)
        if args.command == "validate":
            return _cmd_validate(args, tol)
        if args.command == "fidelity":
            return _cmd_fidelity(args, tol)
        return _cmd_decompose(args, tol)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TruncationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except GaussianStateError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
