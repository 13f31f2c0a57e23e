"""Command-line interface.

Subcommands: detect, scan, threshold, decompose, generators, selftest.
States and criteria are given as ``name:key=value,...`` spec strings; vector
values use square brackets, e.g. ``theorem1:alpha=[0.5,0.5],beta=[1,0]``.

Exit codes: ``detect`` returns 0 when entanglement is certified, 1 when the
criterion is inconclusive and 2 on any parse or validation error.  The other
subcommands return 0 on success and 2 on errors; ``selftest`` returns 1 when
any acceptance item fails.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bloch, scan, selftest
from .criteria import CRITERION_NAMES, parse_criterion
from .states import DensityMatrix, family, parse_state

__all__ = ["main"]


def _parse_dims(text: str) -> tuple[int, int]:
    try:
        m_str, n_str = text.split(",")
        return int(m_str), int(n_str)
    except ValueError:
        raise ValueError(f"--dims expects M,N (e.g. 2,3), got {text!r}") from None


def _state_from_args(args) -> DensityMatrix:
    dims = _parse_dims(args.dims) if getattr(args, "dims", None) else None
    return parse_state(args.state, dims=dims)


def _cmd_detect(args) -> int:
    state = _state_from_args(args)
    verdict = parse_criterion(args.criterion)(state)
    if args.json:
        print(json.dumps(verdict.as_dict()))
    else:
        print(f"lhs       = {verdict.lhs:.12g}")
        print(f"bound     = {verdict.bound:.12g}")
        print(f"violation = {verdict.violation:.12g}")
        print(f"decision  = {verdict.decision}")
    return 0 if verdict.entangled else 1


def _cmd_scan(args) -> int:
    fam = family(args.family, args.param)
    crit = parse_criterion(args.criterion)
    result = scan.sweep(fam, crit, args.start, args.stop, args.steps, workers=args.workers)
    sys.stdout.write(result.to_csv())
    return 0


def _cmd_threshold(args) -> int:
    fam = family(args.family, args.param)
    crit = parse_criterion(args.criterion)
    found = scan.threshold(fam, crit, args.start, args.stop, tol=args.tol)
    print(
        f"{fam.param} = {found.value:.12g} ({found.direction}; tol={found.tolerance:g}; "
        f"family={found.family}; criterion={found.criterion})"
    )
    return 0


def _cmd_decompose(args) -> int:
    state = _state_from_args(args)
    dec = bloch.decompose(state)
    print(f"# bipartition ({dec.m}, {dec.n})")
    print("# basis order per factor: diagonal generators first, then symmetric")
    print("# off-diagonal pairs u_jk (j<k, lexicographic), then antisymmetric v_jk")
    with np.printoptions(precision=12, suppress=True, linewidth=200):
        print(f"r = {dec.r}")
        print(f"s = {dec.s}")
        print("T =")
        print(dec.t)
    return 0


def _cmd_generators(args) -> int:
    gens = bloch.generators(args.d)
    d = args.d
    labels = [f"omega_{level}" for level in range(d - 1)]
    labels += [f"u_{j}{k}" for j in range(d) for k in range(j + 1, d)]
    labels += [f"v_{j}{k}" for j in range(d) for k in range(j + 1, d)]
    print(f"# dimension {d}: {d * d - 1} traceless Hermitian generators, Tr(g_i g_j) = 2 delta_ij")
    with np.printoptions(precision=12, suppress=True, linewidth=200):
        for label, gen in zip(labels, gens):
            print(f"{label} =")
            print(gen)
    return 0


def _cmd_selftest(args) -> int:
    results = selftest.run_all()
    for res in results:
        status = "PASS" if res.ok else "FAIL"
        print(f"[{res.number:2d}/10] {status}  {res.slug:38s} {res.seconds:6.2f} s  {res.detail}")
    passed = sum(res.ok for res in results)
    print(f"{passed}/{len(results)} acceptance items passed")
    return 0 if passed == len(results) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepdetect",
        description=(
            "Entanglement detection for bipartite density matrices via "
            "correlation-tensor separability criteria."
        ),
        epilog=(
            "State specs: isotropic:d1=2,d2=3,p=0.4  horodecki:x=0.9,q=0.99  "
            "bound2x4:d=0.9,x=0.3  ex2:p=0.7  ex4:a1=0.1,a2=0.3,a3=0.2  "
            "random:M=3,N=3,rank=9,seed=42  file:<path> (with --dims M,N). "
            f"Criteria: {', '.join(CRITERION_NAMES)}. "
            "The SEPDETECT_SEED environment variable seeds 'random' states "
            "when no seed= key is given."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    detect = sub.add_parser("detect", help="evaluate one criterion on one state")
    detect.add_argument("--state", required=True, help="state spec string")
    detect.add_argument("--criterion", required=True, help="criterion spec string")
    detect.add_argument("--json", action="store_true", help="emit a single JSON object")
    detect.add_argument("--dims", help="M,N dimensions (required for file: states)")
    detect.set_defaults(fn=_cmd_detect)

    scan_p = sub.add_parser("scan", help="sweep a family parameter, print CSV")
    scan_p.add_argument("--family", required=True, help="state spec with the scan parameter omitted")
    scan_p.add_argument("--param", required=True, help="name of the free parameter")
    scan_p.add_argument("--from", dest="start", type=float, required=True)
    scan_p.add_argument("--to", dest="stop", type=float, required=True)
    scan_p.add_argument("--steps", type=int, required=True)
    scan_p.add_argument("--criterion", required=True)
    scan_p.add_argument("--workers", type=int, default=1, help="parallel grid workers")
    scan_p.set_defaults(fn=_cmd_scan)

    thr = sub.add_parser("threshold", help="bisect the detection threshold of a family")
    thr.add_argument("--family", required=True)
    thr.add_argument("--param", required=True)
    thr.add_argument("--from", dest="start", type=float, required=True)
    thr.add_argument("--to", dest="stop", type=float, required=True)
    thr.add_argument("--criterion", required=True)
    thr.add_argument("--tol", type=float, default=scan.DEFAULT_TOL)
    thr.set_defaults(fn=_cmd_threshold)

    dec = sub.add_parser("decompose", help="print the r, s, T coefficients of a state")
    dec.add_argument("--state", required=True)
    dec.add_argument("--dims", help="M,N dimensions (required for file: states)")
    dec.set_defaults(fn=_cmd_decompose)

    gen = sub.add_parser("generators", help="print the generator basis for one dimension")
    gen.add_argument("--d", type=int, required=True)
    gen.set_defaults(fn=_cmd_generators)

    st = sub.add_parser("selftest", help="run the acceptance battery")
    st.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
