"""Command-line interface.

Exit codes: 0 all requested checks passed, 1 a verification or
validation failed, 2 usage or parse errors. Text and JSON output carry
the same data; identical invocations print identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import graded
from .determinacy import check_determinacy
from .equivalence import (
    MembershipError,
    NumericWitness,
    WitnessChain,
    absorption_profile,
    exact_kth_root,
    normalize_harmonic,
    reduce_germ,
    verify_biharmonic,
)
from .harmonic import almansi_decompose, harmonic_pair, harmonic_split, PolyharmonicError
from .jets import jet_compose, jet_map, jet_truncate
from .polyring import Poly, PolyParseError, format_poly, laplacian, laplacian_power, parse_poly
from .selftest import format_report, run_selftest

X = Poly.monomial(1, 0)
Y = Poly.monomial(0, 1)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, separators=(", ", ": ")))
    else:
        print(text)


def _parse_arg_poly(text: str) -> Poly:
    # PolyParseError propagates to main, which reports it and exits 2
    return parse_poly(text)


def cmd_harmonic(args) -> int:
    if args.k < 1:
        print("usage error: harmonic requires --k >= 1", file=sys.stderr)
        return 2
    pair = harmonic_pair(args.k)
    _emit(
        args,
        {"k": args.k, "f": format_poly(pair.f), "g": format_poly(pair.g)},
        f"f_{args.k} = {pair.f}\ng_{args.k} = {pair.g}",
    )
    return 0


def cmd_kernel(args) -> int:
    space = graded.kernel_basis(args.k, args.s)
    basis = [format_poly(p) for p in space.basis]
    text = [f"kernel of Laplacian^{args.s} on P_{args.k}: dimension {space.dim}"]
    text.extend(f"  {b}" for b in basis)
    _emit(args, {"k": args.k, "s": args.s, "dimension": space.dim, "basis": basis}, "\n".join(text))
    return 0


def cmd_span(args) -> int:
    space = graded.product_space(args.s, args.k)
    basis = [format_poly(p) for p in space.basis]
    text = [
        f"span of degree-{args.s} multiples of the degree-{args.k} harmonics "
        f"in P_{args.s + args.k}: dimension {space.dim}"
    ]
    text.extend(f"  {b}" for b in basis)
    _emit(
        args,
        {"k": args.k, "s": args.s, "degree": args.s + args.k, "dimension": space.dim, "basis": basis},
        "\n".join(text),
    )
    return 0


def cmd_almansi(args) -> int:
    u = _parse_arg_poly(args.poly)
    try:
        deco = almansi_decompose(u, args.s)
    except (PolyharmonicError, ValueError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1
    layers = [format_poly(h) for h in deco.components]
    text = [f"almansi layers of {u} at order {args.s}:"]
    text.extend(f"  r^{2 * j} * ({h})" for j, h in enumerate(layers))
    _emit(args, {"s": args.s, "input": format_poly(u), "layers": layers}, "\n".join(text))
    return 0


def cmd_split(args) -> int:
    p = _parse_arg_poly(args.poly)
    try:
        h, q = harmonic_split(p)
    except ValueError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1
    _emit(
        args,
        {"input": format_poly(p), "harmonic": format_poly(h), "radial_factor": format_poly(q)},
        f"harmonic part: {h}\nradial part:   (x^2 + y^2) * ({q})",
    )
    return 0


def cmd_determinacy(args) -> int:
    h = _parse_arg_poly(args.poly)
    level = args.k
    try:
        cert = check_determinacy(h, level)
    except ValueError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1
    payload = {
        "germ": format_poly(h),
        "level": level,
        "verdict": cert.verdict,
        "products": len(cert.products),
        "missing": format_poly(cert.missing) if cert.missing else None,
    }
    if cert.verdict:
        text = f"{h} is {level}-determined (criterion passed, {len(cert.products)} products)"
    else:
        text = (
            f"criterion inconclusive for {level}-determinacy of {h}; "
            f"first uncovered monomial: {cert.missing}"
        )
    _emit(args, payload, text)
    return 0 if cert.verdict else 1


def _leading_normalisation(germ: Poly, k: int):
    """Split off the leading degree-k form; None when it is zero or not harmonic."""
    leading = germ.graded_component(k)
    if not leading or laplacian(leading):
        return None
    solved = graded.solve_membership(leading, k, 0)
    if solved is None:
        return None
    return solved[0].coeff(0, 0), solved[1].coeff(0, 0)


def cmd_reduce(args) -> int:
    germ = _parse_arg_poly(args.poly)
    k = args.k
    if k < 1:
        print("usage error: reduce requires --k >= 1", file=sys.stderr)
        return 2
    if germ.order() < k:
        print(
            f"validation error: germ has terms of degree below k = {k}", file=sys.stderr
        )
        return 1
    leading = germ.graded_component(k)
    if germ == leading and leading:
        # pure homogeneous form: a linear normalisation witness suffices
        coeffs = _leading_normalisation(germ, k)
        if coeffs is None:
            print("validation error: degree-k form is not harmonic", file=sys.stderr)
            return 1
        witness = normalize_harmonic(coeffs[0], coeffs[1], k, tolerance=args.tolerance)
        if isinstance(witness, NumericWitness):
            _emit(args, witness.to_json_dict(), _numeric_text(witness))
        else:
            _emit(args, witness.to_json_dict(), _chain_text(witness))
        return 0 if witness.verified else 1
    if k < 5:
        print(
            "usage error: reduce requires --k >= 5 unless the germ is purely harmonic",
            file=sys.stderr,
        )
        return 2
    # kernel conditions first: each graded piece below the tail range must
    # sit in its iterated-Laplacian kernel, whatever the leading form is
    profile = absorption_profile(k)
    for degree, component in germ.components().items():
        s = degree - k
        if 1 <= s <= k - 4:
            power = profile.exponent(s)
            residual = laplacian_power(component, power)
            if residual:
                print(
                    f"validation error: degree-{degree} component violates its kernel "
                    f"condition ({power}-fold Laplacian = {residual})",
                    file=sys.stderr,
                )
                return 1
    coeffs = _leading_normalisation(germ, k)
    if coeffs is None:
        print("validation error: leading degree-k part is zero or not harmonic", file=sys.stderr)
        return 1
    pair = harmonic_pair(k)
    prefix_maps = []
    if leading != pair.f:
        a, b = coeffs
        inverse = _invert_gaussian(a, -b)
        root = exact_kth_root(inverse[0], inverse[1], k)
        if root is None:
            print(
                "validation error: leading form needs an irrational rescaling; "
                "only pure harmonic germs are handled numerically",
                file=sys.stderr,
            )
            return 1
        bound = 2 * k - 4
        phi = jet_map(X * root[0] - Y * root[1], X * root[1] + Y * root[0], bound)
        germ_for_reduction = jet_compose(jet_truncate(germ, bound), phi).poly
        prefix_maps.append(phi)
    else:
        germ_for_reduction = germ

    perturbations = {}
    tail = Poly.zero()
    for degree, component in germ_for_reduction.components().items():
        if degree == k:
            continue
        if degree >= 2 * k - 3:
            tail = tail + component
        else:
            perturbations[degree - k] = component
    try:
        chain = reduce_germ(k, perturbations, tail)
    except (MembershipError, ValueError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1
    if prefix_maps:
        chain = WitnessChain(
            source=germ,
            target=chain.target,
            maps=tuple(prefix_maps) + chain.maps,
            bound=chain.bound,
            certificate=chain.certificate,
            verified=True,
        )
        if not chain.verify():
            print("internal error: prefixed chain failed re-verification", file=sys.stderr)
            return 1
    _emit(args, chain.to_json_dict(), _chain_text(chain))
    return 0


def _invert_gaussian(re, im):
    norm = re * re + im * im
    return re / norm, -im / norm


def _chain_text(chain: WitnessChain) -> str:
    lines = [
        f"source:   {chain.source}",
        f"target:   {chain.target}",
        f"bound:    {chain.bound}",
        f"verified: {str(chain.verified).lower()}",
    ]
    for i, phi in enumerate(chain.maps):
        lines.append(f"map {i}: x -> {phi.x.poly}")
        lines.append(f"       y -> {phi.y.poly}")
    if chain.certificate is not None:
        lines.append(
            f"determinacy: level {chain.certificate.level} "
            f"(criterion at {chain.certificate.criterion.level}, "
            f"ok={str(chain.certificate.ok).lower()})"
        )
    return "\n".join(lines)


def _numeric_text(witness: NumericWitness) -> str:
    return (
        f"numeric witness for ({witness.a})*f_{witness.k} + ({witness.b})*g_{witness.k}:\n"
        f"  root = {witness.root_re} + ({witness.root_im})*i\n"
        f"  residual {witness.residual} (tolerance {witness.tolerance})\n"
        f"  verified: {str(witness.verified).lower()}"
    )


def cmd_biharm(args) -> int:
    R = _parse_arg_poly(args.poly)
    try:
        chain = verify_biharmonic(args.k, R)
    except (MembershipError, ValueError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1
    _emit(args, chain.to_json_dict(), _chain_text(chain))
    return 0


def cmd_selftest(args) -> int:
    report = run_selftest(seed=args.seed, max_degree=args.max_degree)
    print(format_report(report, args.format))
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmgerm",
        description=(
            "Exact computation with plane function-germs whose leading term is "
            "harmonic: polyharmonic kernels, Almansi layers, determinacy "
            "certificates and explicit right-equivalence witnesses."
        ),
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("harmonic", help="print the degree-k harmonic generator pair")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(run=cmd_harmonic)

    p = sub.add_parser("kernel", help="basis of the iterated-Laplacian kernel on P_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(run=cmd_kernel)

    p = sub.add_parser("span", help="span of degree-s multiples of the degree-k harmonics")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(run=cmd_span)

    p = sub.add_parser("almansi", help="harmonic layer expansion of a polyharmonic polynomial")
    p.add_argument("poly")
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(run=cmd_almansi)

    p = sub.add_parser("split", help="split homogeneous p as harmonic + (x^2+y^2)*q")
    p.add_argument("poly")
    p.set_defaults(run=cmd_split)

    p = sub.add_parser("determinacy", help="Jacobian-ideal determinacy certificate at level k")
    p.add_argument("poly")
    p.add_argument("--k", type=int, required=True, help="determinacy level to certify")
    p.set_defaults(run=cmd_determinacy)

    p = sub.add_parser("reduce", help="witness chain composing a germ down to f_k")
    p.add_argument("poly")
    p.add_argument("--k", type=int, required=True, help="degree of the harmonic leading term")
    p.add_argument("--tolerance", type=float, default=1e-30)
    p.set_defaults(run=cmd_reduce)

    p = sub.add_parser("biharm", help="witness that f_k + R ~ f_k for R with vanishing 2-fold Laplacian")
    p.add_argument("poly", help="the perturbation R, order above k")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(run=cmd_biharm)

    p = sub.add_parser("selftest", help="run the full verification grid")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-degree", type=int, default=None)
    p.set_defaults(run=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except PolyParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
