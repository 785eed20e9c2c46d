"""cswap-lab command line: list, run, sweep, validate.

CSV schema v1: header `experiment_id, schema_version, seed, <params...>,
<outputs...>`; floats at 17 significant digits, LF line endings, UTF-8,
empty string for missing values.  Exit codes: 0 success, 1 validation
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from typing import Iterable, Sequence

import numpy as np

from . import closedform as cf
from . import measures, optical, qstates, shots, swaptest
from .experiments import (
    DEFAULT_SEED,
    EXPERIMENTS,
    SCHEMA_VERSION,
    SWEEP_COLUMNS,
    RunContext,
    run_sweep,
)
from .hilbert import basis_state, partial_trace, qubits


def _format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool) or isinstance(v, np.bool_):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def write_csv(stream, experiment_id: str, seed: int,
              columns: Sequence[str], rows: Iterable[dict]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["experiment_id", "schema_version", "seed", *columns])
    for row in rows:
        cells = [experiment_id, str(SCHEMA_VERSION), str(seed)]
        cells += [_format_value(row.get(c)) for c in columns]
        writer.writerow(cells)


def _parse_grid_overrides(entries: Sequence[str]) -> dict:
    """KEY=START:STOP:STEPS or KEY=v1,v2,... or KEY=value."""
    out = {}
    for entry in entries or ():
        if "=" not in entry:
            raise ValueError(f"bad grid spec {entry!r}; expected KEY=...")
        key, spec = entry.split("=", 1)
        if ":" in spec:
            parts = spec.split(":")
            if len(parts) != 3:
                raise ValueError(f"bad grid range {spec!r}; use START:STOP:STEPS")
            start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
            if steps < 1:
                raise ValueError("grid STEPS must be >= 1")
            out[key] = np.linspace(start, stop, steps)
        else:
            out[key] = np.array([float(x) for x in spec.split(",")])
    return out


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline="\n"), True


def _make_context(args) -> RunContext:
    workers = args.workers
    if workers is None:
        workers = int(os.environ.get("CSWAP_LAB_WORKERS", "1"))
    return RunContext(
        seed=args.seed,
        shots=args.shots,
        workers=workers,
        bit_order=args.bit_order.lower(),
        grid_overrides=_parse_grid_overrides(args.grid),
    )


# ---------------------------------------------------------------------------
# validation battery
# ---------------------------------------------------------------------------

def _engines_agree(a, b, spec) -> float:
    de = swaptest.swap_expectation_test(a, b, spec)
    dc = swaptest.cswap_circuit_test(a, b, spec)
    return float(np.max(np.abs(de.probs - dc.probs)))


def _validation_checks():
    """Yield (name, callable) pairs; each callable returns an error
    magnitude that must stay below the stated bound, encoded as
    (value, bound)."""

    def engine_agreement_bell():
        b = qstates.bell()
        return _engines_agree(b, b, swaptest.per_site_spec(b.layout)), 1e-10

    def engine_agreement_mixed_ghz():
        rho = partial_trace(
            qstates.mixed_ghz_purified(3, 0.3, 0.2).density_matrix(),
            range(1, 4))
        return _engines_agree(rho, rho,
                              swaptest.per_site_spec(rho.layout)), 1e-10

    def ghz_closed_form():
        worst = 0.0
        for n in (2, 3, 4):
            for dl in (0.0, 0.4):
                for ep in (0.0, 0.3):
                    ra = partial_trace(
                        qstates.mixed_ghz_purified(n, dl, 0.0).density_matrix(),
                        range(1, n + 1))
                    rb = partial_trace(
                        qstates.mixed_ghz_purified(n, dl, ep).density_matrix(),
                        range(1, n + 1))
                    d = swaptest.full_entanglement_test(ra, rb)
                    ref = cf.ghz_family_probs(n, dl, ep)
                    worst = max(worst, abs(d.p_all_zero - ref["p_all_zero"]),
                                abs(d.p_odd - ref["p_odd"]),
                                abs(d.p_even_nonzero - ref["p_even_nonzero"]))
        return worst, 1e-9

    def w_closed_form():
        worst = 0.0
        for n in (3, 4):
            for dl in (0.0, 0.4):
                for ep in (0.0, 0.3):
                    ra = partial_trace(
                        qstates.mixed_w_purified(n, dl, 0.0).density_matrix(),
                        range(1, n + 1))
                    rb = partial_trace(
                        qstates.mixed_w_purified(n, dl, ep).density_matrix(),
                        range(1, n + 1))
                    d = swaptest.full_entanglement_test(ra, rb)
                    ref = cf.w_family_probs(n, dl, ep)
                    worst = max(worst, abs(d.p_all_zero - ref["p_all_zero"]),
                                abs(d.p_odd - ref["p_odd"]),
                                abs(d.p_even_nonzero - ref["p_even_nonzero"]))
        return worst, 1e-9

    def seesaw_closed_form():
        worst = 0.0
        for D in (2, 3, 4, 5):
            for dl in (0.0, 0.5):
                a = qstates.seesaw_qudit(D, 2, 0.0)
                b = qstates.seesaw_qudit(D, 2, dl)
                d = swaptest.full_entanglement_test(a, b)
                ref = cf.seesaw_family_probs(D, 2, dl)
                worst = max(worst, abs(d.p_all_zero - ref["p_all_zero"]),
                            abs(d.p_odd - ref["p_odd"]))
        return worst, 1e-10

    def bipartite_table_anchor():
        st = qstates.phi_plus_plus_4(0.0)
        worst = 0.0
        for name, cut in (("12-34", (0, 1)), ("13-24", (0, 2)),
                          ("3-124", (2,))):
            d = swaptest.bipartite_test(st, st, cut)
            oracle = cf.pair_table_oracle(1.0)[name]
            got = [d.p(b) for b in ("00", "01", "10", "11")]
            worst = max(worst, max(abs(g - o) for g, o in zip(got, oracle)))
        return worst, 1e-12

    def two_party_tables():
        chi = qstates.chi_4(basis_state(qubits(2), [0, 0]))
        worst = 0.0
        for (i, j), expect in cf.TWO_PARTY_TABLE_CHI4.items():
            d = swaptest.two_party_test(chi, chi, i - 1, j - 1)
            got = [d.p(b) for b in ("00", "01", "10", "11")]
            worst = max(worst, max(abs(g - e) for g, e in zip(got, expect)))
        return worst, 1e-12

    def mixture_probe():
        a = qstates.ghz_w_mixture(4, math.pi / 4)
        worst = 0.0
        for dl in (0.0, 0.2):
            b = qstates.ghz_w_mixture(4, math.pi / 4 + dl)
            d = swaptest.full_entanglement_test(a, b)
            worst = max(worst, abs(d.p("1111")
                                   - cf.ghz_w_mixture_p_all_ones(dl)))
        return worst, 1e-10

    def squeezed_equivalence():
        rec = swaptest.optical_equivalence_suite(
            optical.OpticalParams(alpha=1.0, r=1.0), d_cut=80)
        return abs(rec["p1_squeezed_numeric"]
                   - rec["p1_squeezed_analytic"]), 1e-5

    def tmsv_sum_identity():
        st = optical.tmsv_qudit(1.0, 0.0, 250, allow_deficit=True)
        p11 = swaptest.full_entanglement_test(st, st).p("11")
        return abs(p11 - cf.tmsv_signature_sum(1.0, 250)), 1e-12

    def ce_route_agreement():
        sampler = qstates.HaarSampler(3, DEFAULT_SEED)
        worst = 0.0
        for _ in range(20):
            psi = sampler.sample()
            d = swaptest.full_entanglement_test(psi, psi)
            worst = max(worst,
                        abs(measures.concentratable_from_distribution(d)
                            - measures.concentratable_from_purities(psi)))
        return worst, 1e-10

    def sampling_determinism():
        d = swaptest.full_entanglement_test(qstates.bell(), qstates.bell())
        r1 = shots.sample(d, 2000, 7)
        r2 = shots.sample(d, 2000, 7)
        return (0.0 if r1 == r2 else 1.0), 0.5

    return [
        ("engine-agreement-bell", engine_agreement_bell),
        ("engine-agreement-mixed-ghz", engine_agreement_mixed_ghz),
        ("ghz-closed-form", ghz_closed_form),
        ("w-closed-form", w_closed_form),
        ("seesaw-closed-form", seesaw_closed_form),
        ("bipartite-table-anchor", bipartite_table_anchor),
        ("two-party-tables", two_party_tables),
        ("ghz-w-mixture-probe", mixture_probe),
        ("squeezed-equivalence", squeezed_equivalence),
        ("tmsv-sum-identity", tmsv_sum_identity),
        ("ce-route-agreement", ce_route_agreement),
        ("sampling-determinism", sampling_determinism),
    ]


def run_validate(stream=None) -> int:
    stream = stream or sys.stdout
    failures = 0
    for name, check in _validation_checks():
        try:
            value, bound = check()
            ok = value <= bound
        except Exception as exc:  # a crashed check is a failed check
            stream.write(f"FAIL {name}: raised {exc!r}\n")
            failures += 1
            continue
        if ok:
            stream.write(f"PASS {name} (err {value:.2e} <= {bound:.0e})\n")
        else:
            stream.write(f"FAIL {name}: err {value:.2e} > {bound:.0e}\n")
            failures += 1
    stream.write(f"{'OK' if failures == 0 else 'FAILED'}: "
                 f"{len(_validation_checks()) - failures} passed, "
                 f"{failures} failed\n")
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cswap-lab",
        description="Controlled-SWAP equivalence and entanglement test "
                    "experiments over qubit, qudit, and optical states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", default=None,
                       help="output CSV path (default: stdout)")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                       help=f"base RNG seed (default {DEFAULT_SEED})")
        p.add_argument("--shots", type=int, default=0,
                       help="add sampled columns with this many shots")
        p.add_argument("--workers", type=int, default=None,
                       help="parallel grid evaluation (or CSWAP_LAB_WORKERS)")
        p.add_argument("--grid", action="append", default=[],
                       metavar="KEY=START:STOP:STEPS",
                       help="override a parameter grid (also KEY=v1,v2,...)")
        p.add_argument("--bit-order", default="GROUP_FIRST",
                       choices=["GROUP_FIRST", "GROUP_LAST",
                                "group_first", "group_last"],
                       help="control bitstring reading direction")

    p_list = sub.add_parser("list", help="enumerate experiments")
    p_list.set_defaults(func=_cmd_list)

    p_run = sub.add_parser("run", help="run a named experiment to CSV")
    p_run.add_argument("--experiment", required=True,
                       help="experiment id (see `list`)")
    add_common(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="generic state-family sweep")
    p_sweep.add_argument("--family", required=True,
                         help="ghz | w | bell | seesaw | ghz-w-mixture")
    p_sweep.add_argument("--test", default="full",
                         help="full | equivalence | bipartite=i,j,... | pair=i,j")
    add_common(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_val = sub.add_parser("validate",
                           help="run the built-in consistency battery")
    p_val.set_defaults(func=_cmd_validate)
    return parser


def _cmd_list(args) -> int:
    for exp in EXPERIMENTS.values():
        marker = " [tabular-only]" if exp.tabular_only else ""
        print(f"{exp.experiment_id}{marker}\n    {exp.description}")
    return 0


def _cmd_run(args) -> int:
    if args.experiment not in EXPERIMENTS:
        print(f"unknown experiment {args.experiment!r}; "
              f"choose from: {', '.join(EXPERIMENTS)}", file=sys.stderr)
        return 2
    exp = EXPERIMENTS[args.experiment]
    ctx = _make_context(args)
    rows = exp.runner(ctx)
    stream, close = _open_out(args.out)
    try:
        write_csv(stream, exp.experiment_id, ctx.seed, exp.columns, rows)
    finally:
        if close:
            stream.close()
    return 0


def _cmd_sweep(args) -> int:
    ctx = _make_context(args)
    rows = run_sweep(args.family, args.test, ctx)
    stream, close = _open_out(args.out)
    try:
        write_csv(stream, f"sweep-{args.family}", ctx.seed,
                  SWEEP_COLUMNS, rows)
    finally:
        if close:
            stream.close()
    return 0


def _cmd_validate(args) -> int:
    return run_validate()


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
