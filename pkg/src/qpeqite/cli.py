"""Command-line runner: ``qpeqite <subcommand> [flags]``.

Data go to ``--output`` (default stdout) as CSV or JSON with 12 significant
digits; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import contextlib
import sys

import numpy as np

from . import experiments as ex
from .circuit import simulate
from .hamiltonians import SpinSequence, evaluate, index_to_bits, labs_constant, labs_hamiltonian, sidelobe_energy
from .io import write_table
from .qite import apply_qite, min_tau, overlap_without_qite, qite_sweep
from .qpe import InitialState, RegisterConfig
from .spectrum import DEFAULT_CAP, enumerate_spectrum, fit_gap_exponent, load_archive
from .synthesis.clifford_t import ry, rz
from .synthesis.resources import fit_sk_exponent, resource_report
from .synthesis.solovay_kitaev import DEFAULT_NET_LENGTH, MAX_DEPTH, build_epsilon_net, sk_synthesize

VALIDATION_TOL = 1e-10


class CliError(Exception):
    pass


# ---------------------------------------------------------------- helpers

def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _alpha(text):
    if text == "auto":
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"alpha must be a number or 'auto', got {text!r}") from None


@contextlib.contextmanager
def _output(args):
    if args.output in (None, "-"):
        yield sys.stdout
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _emit(args, rows, columns, comments=()):
    with _output(args) as out:
        write_table(rows, columns, out, args.format, comments)


def _setup(args) -> ex.LabsSetup:
    if args.n > DEFAULT_CAP:
        raise CliError(f"N={args.n} exceeds the enumeration cap of {DEFAULT_CAP}")
    if args.alpha == "auto":
        archive = load_archive(args.archive) if args.archive else None
        alpha = ex.resolve_alpha(args.n, args.hamiltonian, archive, jobs=args.jobs)
    else:
        alpha = args.alpha
    return ex.labs_setup(args.n, args.hamiltonian, alpha, jobs=args.jobs)


def _cfg(args, setup=None) -> RegisterConfig:
    nr = args.nr
    if nr is None:
        if setup is None:
            raise CliError("--nr is required")
        nr = ex.fig2_register_size(setup.spectrum)
    return RegisterConfig(nr, args.l)


def _taus(args, n):
    raw = np.linspace(args.tau_start, args.tau_stop, args.tau_steps)
    return raw if args.raw_tau else raw * ((1 << n) - 1)


def _flags(result):
    for f in result.flags:
        print(f"qpeqite: warning: {f}", file=sys.stderr)


# ---------------------------------------------------------------- commands

def cmd_energy(args):
    seq = SpinSequence.parse(args.seq)
    n = len(seq)
    bits = "".join("0" if s == 1 else "1" for s in seq.spins)
    rows = [(args.seq, n, sidelobe_energy(seq), evaluate(labs_hamiltonian(n), bits), labs_constant(n))]
    _emit(args, rows, ("sequence", "n", "sidelobe_energy", "hamiltonian_energy", "constant"))


def cmd_spectrum(args):
    setup = _setup(args)
    spec = setup.spectrum
    print(
        f"qpeqite: E0={spec.ground_energy:g} degeneracy={len(spec.ground_set)} "
        f"gap={spec.gap} max={spec.max_energy:g}",
        file=sys.stderr,
    )
    if args.format == "csv":
        with _output(args) as out:
            spec.to_csv(out)
    else:
        rows = ((index_to_bits(x, args.n), e) for x, e in enumerate(spec.energies))
        _emit(args, rows, ("bitstring", "energy"))


def cmd_qpe(args):
    setup = _setup(args)
    res = setup.qpe(_cfg(args, setup))
    _flags(res)
    with _output(args) as out:
        res.to_csv(out, args.format)


def _sweep_rows(setup, cfg, taus, jobs):
    qpe = setup.qpe(cfg)
    _flags(qpe)
    base = overlap_without_qite(qpe, setup.ground_set)
    for out in qite_sweep(qpe, setup.ground_set, taus, jobs=jobs):
        yield (out.tau, out.tau_normalized, out.ground_overlap, out.success_probability, base)


def cmd_qite_sweep(args):
    setup = _setup(args)
    cfg = _cfg(args, setup)
    rows = list(_sweep_rows(setup, cfg, _taus(args, args.n), args.jobs))
    _emit(args, rows, ("tau", "tau_normalized", "ground_overlap", "success_probability", "overlap_no_qite"))


def cmd_min_tau(args):
    n_values = range(args.n_min, args.n_max + 1) if args.n is None else [args.n]
    rows = []
    for n in n_values:
        args.n = n
        setup = _setup(args)
        cfg = _cfg(args, setup)
        qpe = setup.qpe(cfg)
        _flags(qpe)
        res = min_tau(setup.hamiltonian, InitialState.uniform(n), cfg, setup.ground_set,
                      args.threshold, _taus(args, n), qpe=qpe)
        base = overlap_without_qite(qpe, setup.ground_set)
        if res.found:
            rows.append((n, cfg.n_register, True, res.tau, res.tau_normalized,
                         res.outcome.ground_overlap, res.outcome.success_probability, base))
        else:
            rows.append((n, cfg.n_register, False, "", "", res.max_overlap, "", base))
    _emit(args, rows, ("n", "n_register", "found", "tau", "tau_normalized",
                       "ground_overlap", "success_probability", "overlap_no_qite"))


def cmd_nr_scaling(args):
    rows = ex.nr_scaling(range(args.n_min, args.n_max + 1), args.l, args.hamiltonian, args.jobs)
    comments = [
        "N_R = min register size with 2^N_R > l*(E_max - E_0) and l*gap >= 1 (alpha = E_0)",
        f"scale l = {args.l:g}; hamiltonian = {args.hamiltonian}",
    ]
    if sum(r.n_register is not None for r in rows) >= 2 and len({r.n for r in rows}) >= 2:
        fit = ex.fit_nr_scaling(rows)
        comments.append(f"fit N_R = {fit.prefactor:.6g} + {fit.exponent:.6g}*ln(N); rms residual {fit.residual:.6g}")
    gaps = [(r.n, r.gap) for r in rows if r.gap]
    if len(gaps) >= 3:
        g = fit_gap_exponent(gaps)
        comments.append(f"gap fit: gap = {g.prefactor:.6g}*N^{g.exponent:.6g}; rms residual {g.residual:.6g}")
    table = [(r.n, r.ground_energy, r.max_energy, r.gap if r.gap is not None else "",
              r.n_register if r.n_register is not None else "") for r in rows]
    _emit(args, table, ("n", "ground_energy", "max_energy", "gap", "n_register"),
          comments if args.format == "csv" else ())


def cmd_synth(args):
    net = build_epsilon_net(args.net_length)
    if args.uar:
        cols = ("n_register", "depth", "t_count", "error")
        rows = []
        for nr in args.nr_list:
            for d, t, err in ex.uar_tradeoff(nr, args.tau, range(args.depth + 1), net):
                rows.append((nr, d, t, err))
        _emit(args, rows, cols)
        return
    target = {"rz": rz, "ry": ry}[args.gate](args.angle)
    rows, points = [], []
    for d in range(args.depth + 1):
        res = sk_synthesize(target, d, net)
        rows.append((d, res.error, res.t_count, len(res.word)))
        if 0 < res.error < 1 and res.t_count > 0:
            points.append((res.error, res.t_count))
    comments = []
    uniq = {e: t for e, t in points}
    if len(uniq) >= 4:
        fit = fit_sk_exponent(uniq.items())
        comments.append(f"fit t_count = {fit.prefactor:.6g}*log(1/eps)^{fit.exponent:.6g}")
    _emit(args, rows, ("depth", "error", "t_count", "word_length"), comments if args.format == "csv" else ())
    if args.word:
        print(res.to_text(), end="", file=sys.stderr)


def cmd_resources(args):
    setup = _setup(args)
    cfg = _cfg(args, setup)
    net = build_epsilon_net(args.net_length)
    uar = args.uar if args.uar == "exact" else int(args.uar)
    report = resource_report(setup.hamiltonian, cfg, args.tau, args.eps, net, args.depth, uar)
    if not report.eps_reached:
        worst = max(s.achieved_error for s in report.stages)
        print(f"qpeqite: warning: eps={args.eps:g} not reached at depth {args.depth}; "
              f"worst achieved error {worst:.3g}", file=sys.stderr)
    with _output(args) as out:
        report.to_csv(out, args.format)


def cmd_validate(args):
    setup = _setup(args)
    cfg = _cfg(args, setup)
    if setup.n + cfg.n_register + 1 > 22:
        raise CliError("circuit exceeds the 22-qubit dense-simulation cap")
    qpe = setup.qpe(cfg)
    rows, worst = [], 0.0
    for tau in args.tau:
        sim = simulate(setup.hamiltonian, cfg, tau)
        closed = apply_qite(qpe, setup.ground_set, tau)
        tv = 0.5 * float(np.abs(sim.register_distribution - qpe.register_distribution).sum())
        dsucc = abs(sim.success_probability - closed.success_probability)
        if sim.postselected_register is not None:
            tv_post = 0.5 * float(np.abs(sim.postselected_register - closed.postselected_register).sum())
        else:
            tv_post = 0.0
        worst = max(worst, tv, dsucc, tv_post)
        rows.append((tau, tv, dsucc, tv_post))
    _emit(args, rows, ("tau", "register_tv_distance", "success_probability_diff", "postselected_tv_distance"))
    print(f"max total variation distance: {worst:.3e}", file=sys.stderr)
    if worst > VALIDATION_TOL:
        raise CliError(f"circuit and closed form disagree by {worst:.3e} > {VALIDATION_TOL:g}")


# ---------------------------------------------------------------- parser

def _common(p, problem=True, register=True, tau_grid=False):
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=_positive_int, default=1, help="worker threads")
    if problem:
        p.add_argument("--n", type=_positive_int, help="number of spins / state qubits")
        p.add_argument("--alpha", type=_alpha, default="auto",
                       help="energy offset, or 'auto' for the brute-force ground energy")
        p.add_argument("--archive", help="file of 'N E_opt' lines used by --alpha auto beyond the cap")
        p.add_argument("--hamiltonian", choices=("labs", "sidelobe"), default="labs",
                       help="Z-monomial LABS form or the sidelobe energy itself")
    if register:
        p.add_argument("--nr", type=_positive_int, help="register qubits")
        p.add_argument("--l", type=float, default=1.0, help="energy scale l")
    if tau_grid:
        p.add_argument("--tau-start", type=float, default=0.0)
        p.add_argument("--tau-stop", type=float, default=1.0)
        p.add_argument("--tau-steps", type=_positive_int, default=101)
        p.add_argument("--raw-tau", action="store_true",
                       help="grid is in raw tau instead of tau/(2^N-1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpeqite", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("energy", help="sidelobe and Hamiltonian energy of one sequence")
    _common(p, problem=False, register=False)
    p.add_argument("--seq", required=True, help="e.g. '++-+' or '1,1,-1,1'")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("spectrum", help="brute-force spectrum as bitstring,energy")
    _common(p, register=False)
    p.set_defaults(func=cmd_spectrum, need_n=True)

    p = sub.add_parser("qpe", help="register distribution p,probability")
    _common(p)
    p.set_defaults(func=cmd_qpe, need_n=True)

    p = sub.add_parser("qite-sweep", help="ground overlap and success probability over a tau grid")
    _common(p, tau_grid=True)
    p.set_defaults(func=cmd_qite_sweep, need_n=True)

    p = sub.add_parser("min-tau", help="minimal tau reaching a ground-overlap threshold")
    _common(p, tau_grid=True)
    p.add_argument("--n-min", type=_positive_int, default=3)
    p.add_argument("--n-max", type=_positive_int, default=8)
    p.add_argument("--threshold", type=float, default=0.999)
    p.set_defaults(func=cmd_min_tau)

    p = sub.add_parser("nr-scaling", help="register size needed to resolve the ground state vs N")
    _common(p, problem=False, register=False)
    p.add_argument("--n-min", type=_positive_int, default=4)
    p.add_argument("--n-max", type=_positive_int, default=16)
    p.add_argument("--l", type=float, default=1.0)
    p.add_argument("--hamiltonian", choices=("labs", "sidelobe"), default="labs")
    p.set_defaults(func=cmd_nr_scaling)

    p = sub.add_parser("synth", help="Solovay-Kitaev error vs T count")
    _common(p, problem=False, register=False)
    p.add_argument("--gate", choices=("rz", "ry"), default="rz")
    p.add_argument("--angle", type=float, default=0.1)
    p.add_argument("--depth", type=int, default=4, help="maximum recursion depth")
    p.add_argument("--net-length", type=_positive_int, default=DEFAULT_NET_LENGTH)
    p.add_argument("--uar", action="store_true", help="synthesize the multiplexed ancilla rotation instead")
    p.add_argument("--nr-list", type=_positive_int, nargs="+", default=[1, 2, 3])
    p.add_argument("--tau", type=float, default=10.0)
    p.add_argument("--word", action="store_true", help="print the deepest gate word to stderr")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("resources", help="per-stage rotation, CNOT and T counts")
    _common(p)
    p.add_argument("--tau", type=float, default=10.0)
    p.add_argument("--eps", type=float, default=1e-2)
    p.add_argument("--depth", type=int, default=3, help="maximum SK depth")
    p.add_argument("--net-length", type=_positive_int, default=DEFAULT_NET_LENGTH)
    p.add_argument("--uar", choices=("exact", "0", "1"), default="exact")
    p.set_defaults(func=cmd_resources, need_n=True)

    p = sub.add_parser("validate", help="compare the statevector circuit with the closed form")
    _common(p)
    p.add_argument("--tau", type=float, nargs="+", default=[0.0, 1.0, 5.0, 25.0])
    p.set_defaults(func=cmd_validate, need_n=True)
    return parser


def _check(args):
    if getattr(args, "need_n", False) and args.n is None:
        raise CliError("--n is required")
    if hasattr(args, "depth") and not 0 <= args.depth <= MAX_DEPTH:
        raise CliError(f"--depth must lie in [0, {MAX_DEPTH}]")
    if hasattr(args, "threshold") and not 0 < args.threshold <= 1:
        raise CliError("--threshold must lie in (0, 1]")
    if hasattr(args, "eps") and args.eps <= 0:
        raise CliError("--eps must be positive")
    if hasattr(args, "tau_start") and args.tau_stop < args.tau_start:
        raise CliError("--tau-stop must not be below --tau-start")
    if hasattr(args, "n_min") and args.n_max < args.n_min:
        raise CliError("--n-max must not be below --n-min")
    if getattr(args, "l", 1.0) <= 0:
        raise CliError("--l must be positive")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _check(args)
        args.func(args)
    except (CliError, ValueError, OSError) as exc:
        print(f"qpeqite: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
