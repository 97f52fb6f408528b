"""Command-line front end.

Every command reads optional ``key = value`` config files (# comments),
lets flags override file values, runs its computation with an explicit
64-bit seed, writes a CSV report (or a textual netlist for ``decompose``)
and exits 0 only if every invariant asserted by that command holds.

Exit codes: 0 all checks pass, 1 invariant failure (a ``FAIL <name>`` line
is printed), 2 unknown command / unparseable flags, 3 invalid config.
Data rows are deterministic: identical command, config and seed give
byte-identical rows (floats carry 17 significant digits); metadata such as
the seed, package version and command line rides in trailing # comments.
"""
from __future__ import annotations

import argparse
import itertools
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__, circuits, clifford, cqp, gqft, linalg, simulator, trotter


class ConfigError(Exception):
    pass


class CheckFailure(Exception):
    def __init__(self, name: str, detail: str):
        super().__init__(f"{name}: {detail}")
        self.name = name
        self.detail = detail


# ---------------------------------------------------------------------------
# config plumbing

_COMMON_KEYS = {"seed": ("int", 0)}

_COMMAND_KEYS = {
    "verify-basis": {"n": ("int", 2)},
    "omega-count": {"n": ("int", 2)},
    "verify-gqft": {
        "n": ("int", 2),
        "thetas": ("floats", (0.01, 0.1, 0.5, 1.0, 2.0)),
        "trials": ("int", 5),
    },
    "gqft-distance": {
        "n": ("int", 2),
        "thetas": ("floats", (0.01, 0.1, 0.5, 1.0, 2.0)),
        "trials": ("int", 5),
    },
    "trotter-sweep": {
        "n": ("int", 1),
        "terms": ("int", 2),
        "t": ("float", 1.0),
        "rs": ("ints", (1, 2, 5, 10, 20, 50, 100, 200, 500, 1000)),
    },
    "swap-test": {
        "n": ("int", 2),
        "shots": ("ints", (1000, 10000, 100000)),
    },
    "train-cqp": {
        "n": ("int", 1),
        "beta": ("float", math.pi / 3),
        "eta": ("float", 0.1),
        "iterations": ("int", 500),
        "activation": ("str", "tanh"),
        "output_index": ("int", 0),
        "fd_step": ("float", 1e-5),
        "require_fidelity": ("float", 0.99),
    },
    "equivalence": {"n": ("int", 2), "trials": ("int", 50)},
    "decompose": {"theta1": ("float", math.pi / 8), "theta2": ("float", math.pi / 8)},
}


def _coerce(key: str, kind: str, raw):
    if not isinstance(raw, str):
        return raw
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "ints":
            return tuple(int(p) for p in raw.split(",") if p.strip())
        if kind == "floats":
            return tuple(float(p) for p in raw.split(",") if p.strip())
        return raw
    except ValueError as exc:
        raise ConfigError(f"bad value for {key!r}: {raw!r} ({exc})") from None


def _read_config_file(path: str) -> dict[str, str]:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {path}")
    values: dict[str, str] = {}
    for lineno, line in enumerate(p.read_text().splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, value = stripped.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _load_config(command: str, args: argparse.Namespace) -> dict:
    keys = dict(_COMMON_KEYS)
    keys.update(_COMMAND_KEYS[command])
    cfg = {k: default for k, (_, default) in keys.items()}
    if args.config:
        for key, raw in _read_config_file(args.config).items():
            if key not in keys:
                raise ConfigError(f"unknown config key {key!r} for {command}")
            cfg[key] = _coerce(key, keys[key][0], raw)
    for key in keys:
        flag_val = getattr(args, key, None)
        if flag_val is not None:
            cfg[key] = _coerce(key, keys[key][0], flag_val)
    if not 0 <= cfg["seed"] < 2 ** 64:
        raise ConfigError(f"seed must be an unsigned 64-bit integer, got {cfg['seed']}")
    return cfg


def _require(cond: bool, key: str, detail: str) -> None:
    if not cond:
        raise ConfigError(f"{key}: {detail}")


def _check(cond: bool, name: str, detail: str) -> None:
    if not cond:
        raise CheckFailure(name, detail)


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


# ---------------------------------------------------------------------------
# command handlers: return (header or None, rows/lines, summary lines)

def _cmd_verify_basis(cfg):
    n = cfg["n"]
    _require(1 <= n <= 3, "n", "must be in 1..3")
    basis = clifford.hermitian_basis(n)
    herm = max(linalg.hermiticity_defect(b.dense()) for b in basis)
    eye = np.eye(2 ** n)
    gen = 0.0
    for a in range(2 * n):
        ga = clifford.gamma(n, a).dense()
        for b in range(a, 2 * n):
            gb = clifford.gamma(n, b).dense()
            want = 2.0 * eye if a == b else 0.0 * eye
            gen = max(gen, linalg.frobenius_norm(ga @ gb + gb @ ga - want))
    rank = clifford.gram_rank([b.dense() for b in basis])
    _check(herm <= 1e-12, "basis-hermiticity", f"max defect {herm:.3e}")
    _check(gen <= 1e-12, "generator-relations", f"max defect {gen:.3e}")
    _check(rank == 4 ** n, "basis-independence", f"gram rank {rank} != {4 ** n}")
    header = ["n", "blade_count", "max_hermiticity_defect",
              "max_generator_relation_defect", "gram_rank"]
    rows = [[n, len(basis), herm, gen, rank]]
    return header, rows, [f"verify-basis: n={n}, {len(basis)} blades, "
                          f"hermiticity {herm:.3e}, relations {gen:.3e}, rank {rank}"]


def _cmd_omega_count(cfg):
    n = cfg["n"]
    _require(1 <= n <= 3, "n", "must be in 1..3")
    parity = clifford.omega_count(n)
    dense = clifford.omega_count_dense(n)
    _check(parity == dense, "omega-agreement", f"parity {parity} != dense {dense}")
    header = ["n", "omega_parity_rule", "omega_bruteforce"]
    return header, [[n, parity, dense]], [f"omega-count: n={n}, omega={parity}"]


def _gqft_grid(cfg):
    n = cfg["n"]
    _require(1 <= n <= 4, "n", "must be in 1..4")
    _require(cfg["trials"] >= 1, "trials", "must be >= 1")
    _require(all(t >= 0 for t in cfg["thetas"]), "thetas", "must all be >= 0")
    for theta in cfg["thetas"]:
        for i in range(cfg["trials"]):
            seed = cfg["seed"] + i
            axes = gqft.random_axes(n, np.random.default_rng(seed))
            yield theta, seed, gqft.GqftParams(n, theta, axes)


def _cmd_verify_gqft(cfg):
    rows = []
    worst_u = worst_f = 0.0
    for theta, seed, params in _gqft_grid(cfg):
        f_g = gqft.gqft_dense(params)
        defect = linalg.unitarity_defect(f_g)
        fact = max(
            float(np.linalg.norm(f_g[:, j] - gqft.gqft_column_factored(params, j)))
            for j in range(2 ** params.n))
        _check(defect <= 1e-10, "gqft-unitarity",
               f"theta={theta} seed={seed} defect {defect:.3e}")
        _check(fact <= 1e-10, "gqft-factorization",
               f"theta={theta} seed={seed} error {fact:.3e}")
        worst_u, worst_f = max(worst_u, defect), max(worst_f, fact)
        rows.append([theta, params.n, seed, defect, fact])
    header = ["theta", "n", "seed", "unitarity_defect", "factorization_error"]
    return header, rows, [f"verify-gqft: {len(rows)} rows, "
                          f"max unitarity defect {worst_u:.3e}, "
                          f"max factorization error {worst_f:.3e}"]


def _cmd_gqft_distance(cfg):
    rows = []
    for theta, seed, params in _gqft_grid(cfg):
        rep = gqft.distance_report(params)
        _check(rep.distance_to_qft <= rep.bound, "gqft-distance-bound",
               f"theta={theta} seed={seed} distance {rep.distance_to_qft:.6e} "
               f"> bound {rep.bound:.6e}")
        rows.append([theta, params.n, seed, rep.distance_to_qft, rep.bound])
    header = ["theta", "n", "seed", "distance", "bound"]
    return header, rows, [f"gqft-distance: {len(rows)} rows, all within bound"]


def _cmd_trotter_sweep(cfg):
    n, terms_n, t = cfg["n"], cfg["terms"], cfg["t"]
    _require(1 <= n <= 2, "n", "must be in 1..2")
    _require(1 <= terms_n <= 4 ** n - 1, "terms", f"must be in 1..{4 ** n - 1} for n={n}")
    _require(math.isfinite(t), "t", "must be finite")
    _require(len(cfg["rs"]) >= 1 and all(r >= 1 for r in cfg["rs"]), "rs",
             "need at least one r, all >= 1")
    terms = trotter.random_instance(n, terms_n, cfg["seed"])
    rows = []
    for rep in trotter.error_sweep(terms, t, cfg["rs"]):
        _check(rep.measured_error <= rep.bound_full, "trotter-bound",
               f"r={rep.r}: measured {rep.measured_error:.6e} "
               f"> bound_full {rep.bound_full:.6e}")
        rows.append([rep.r, rep.t, rep.measured_error, rep.bound_simple,
                     rep.bound_full, rep.bound_commutator, rep.omega])
    header = ["r", "t", "measured_error", "bound_simple", "bound_full",
              "bound_commutator", "omega"]
    return header, rows, [f"trotter-sweep: n={n}, L={terms_n}, t={t}, "
                          f"omega={rows[0][6]}, {len(rows)} r values, "
                          "measured error within bound_full everywhere"]


def _cmd_swap_test(cfg):
    n = cfg["n"]
    _require(1 <= n <= 4, "n", "must be in 1..4")
    _require(all(s >= 1 for s in cfg["shots"]), "shots", "must all be >= 1")
    rng = np.random.default_rng(cfg["seed"])
    psi = simulator.random_state(n, rng)
    phi = simulator.random_state(n, rng)
    formula = (1.0 + abs(simulator.inner(psi, phi)) ** 2) / 2.0
    protocol = simulator.swap_test_circuit_probability(psi, phi)
    _check(abs(formula - protocol) <= 1e-10, "swap-agreement",
           f"formula {formula!r} vs protocol {protocol!r}")
    overlap = abs(simulator.inner(psi, phi))
    rows = []
    for idx, shots in enumerate(cfg["shots"]):
        row_seed = cfg["seed"] + 1 + idx
        tally, estimate = simulator.swap_test_sampled(psi, phi, shots, row_seed)
        spread = 8.0 * math.sqrt(formula * (1.0 - formula) / shots) + 1e-12
        _check(abs(estimate ** 2 - overlap ** 2) <= spread, "swap-concentration",
               f"shots={shots}: |est^2 - exact^2| = "
               f"{abs(estimate ** 2 - overlap ** 2):.6e} > {spread:.6e}")
        rows.append([tally.shots, tally.seed, tally.zero_count, estimate, overlap])
    header = ["shots", "seed", "zero_count", "estimate", "exact_overlap"]
    return header, rows, [f"swap-test: n={n}, exact overlap {overlap:.6f}, "
                          f"{len(rows)} shot counts, estimates concentrated"]


def _cmd_train_cqp(cfg):
    n = cfg["n"]
    _require(1 <= n <= 2, "n", "must be in 1..2")
    _require(cfg["eta"] > 0, "eta", "must be > 0")
    _require(1 <= cfg["iterations"] <= 20000, "iterations", "must be in 1..20000")
    _require(0 <= cfg["output_index"] < 2 * n, "output_index",
             f"must be in 0..{2 * n - 1}")
    _require(0 <= cfg["require_fidelity"] <= 1, "require_fidelity", "must be in [0, 1]")
    try:
        activation = cqp.Activation(cfg["activation"])
    except ValueError:
        raise ConfigError(f"activation: unknown kind {cfg['activation']!r}") from None
    config = cqp.PerceptronConfig.type_ii(
        n, cfg["output_index"], activation=activation, eta=cfg["eta"])
    rng = np.random.default_rng(cfg["seed"])
    x_coeffs = rng.uniform(0.1, 0.6, 2 * n)
    theta0 = rng.uniform(0.0, 0.5, 2 * n)
    sample = cqp.TrainingSample(x_coeffs, cfg["beta"])
    records = cqp.train(config, sample, theta0, cfg["iterations"], cfg["fd_step"])
    for prev, cur in itertools.pairwise(records):
        _check(cur.fidelity >= prev.fidelity - 1e-12, "train-monotone",
               f"iteration {cur.iteration}: fidelity fell "
               f"{prev.fidelity!r} -> {cur.fidelity!r}")
    final = records[-1].fidelity
    _check(final >= cfg["require_fidelity"], "train-converged",
           f"final fidelity {final:.6f} < {cfg['require_fidelity']}")
    header = ["iteration", "fidelity"] + [f"theta_{j}" for j in range(2 * n)]
    rows = [[rec.iteration, rec.fidelity, *rec.theta] for rec in records]
    return header, rows, [f"train-cqp: n={n}, {cfg['iterations']} iterations, "
                          f"fidelity {records[0].fidelity:.6f} -> {final:.6f}"]


def _cmd_equivalence(cfg):
    n = cfg["n"]
    _require(1 <= n <= 3, "n", "must be in 1..3")
    _require(cfg["trials"] >= 1, "trials", "must be >= 1")
    config = cqp.PerceptronConfig.type_ii(n)
    rows = []
    worst = 0.0
    for i in range(cfg["trials"]):
        seed = cfg["seed"] + i
        rng = np.random.default_rng(seed)
        u = linalg.random_unitary(2 ** n, rng)
        x = cqp.encode(config, rng.uniform(-1.0, 1.0, 2 * n))
        w = cqp.encode(config, rng.uniform(-1.0, 1.0, 2 * n))
        phi, y = cqp.forward(x, w, config.activation, config.output_blade)
        phi_u, y_u = cqp.forward(u @ x, u @ w, config.activation, config.output_blade)
        phi_defect = abs(phi - phi_u)
        state_defect = float(np.linalg.norm(y - y_u))
        _check(phi_defect <= 1e-10 and state_defect <= 1e-10, "equivalence-defect",
               f"seed={seed}: phi defect {phi_defect:.3e}, "
               f"state defect {state_defect:.3e}")
        worst = max(worst, phi_defect, state_defect)
        rows.append([seed, n, phi_defect, state_defect])
    header = ["seed", "n", "phi_defect", "state_defect"]
    return header, rows, [f"equivalence: {len(rows)} trials, max defect {worst:.3e}"]


def _cmd_decompose(cfg):
    theta1, theta2 = cfg["theta1"], cfg["theta2"]
    _require(math.isfinite(theta1) and math.isfinite(theta2),
             "theta1", "angles must be finite")
    u = circuits.xy_yx_unitary(theta1, theta2)
    factors = circuits.two_level_decompose(u)
    recon = linalg.frobenius_norm(circuits.gates_product(factors, 4) - u)
    _check(recon <= 1e-9, "decompose-reconstruction", f"defect {recon:.3e}")
    circuit = circuits.compile_unitary(u, 2)
    compiled = linalg.frobenius_norm(circuit.dense() - u)
    _check(compiled <= 1e-9, "decompose-compilation", f"defect {compiled:.3e}")
    lines = [f"# two-level factors ({len(factors)})"]
    lines += circuits.format_two_level(factors)
    lines.append(f"# compiled circuit ({len(circuit.gates)} gates)")
    lines += circuits.format_circuit(circuit)
    return None, lines, [f"decompose: theta1={theta1:.6f}, theta2={theta2:.6f}, "
                         f"{len(factors)} factors, {len(circuit.gates)} gates, "
                         f"reconstruction {recon:.3e}, compiled {compiled:.3e}"]


_HANDLERS = {
    "verify-basis": _cmd_verify_basis,
    "omega-count": _cmd_omega_count,
    "verify-gqft": _cmd_verify_gqft,
    "gqft-distance": _cmd_gqft_distance,
    "trotter-sweep": _cmd_trotter_sweep,
    "swap-test": _cmd_swap_test,
    "train-cqp": _cmd_train_cqp,
    "equivalence": _cmd_equivalence,
    "decompose": _cmd_decompose,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliffsim",
        description="Clifford-algebra quantum network verification tools")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for command, keys in _COMMAND_KEYS.items():
        p = sub.add_parser(command)
        p.add_argument("--config", default=None, help="key = value config file")
        p.add_argument("--out", default=None, help="output report path")
        p.add_argument("--seed", default=None, help="64-bit RNG seed")
        for key in keys:
            p.add_argument(f"--{key.replace('_', '-')}", dest=key, default=None)
    return parser


def _write_report(path: Path, header, payload, meta: list[str]) -> None:
    lines = []
    if header is not None:
        lines.append(",".join(header))
        lines += [",".join(_fmt(v) for v in row) for row in payload]
    else:
        lines += payload
    lines += [f"# {m}" for m in meta]
    path.write_text("\n".join(lines) + "\n")


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _load_config(args.command, args)
        header, payload, summary = _HANDLERS[args.command](cfg)
    except ConfigError as exc:
        print(f"ERROR invalid config: {exc}", file=sys.stderr)
        return 3
    except CheckFailure as exc:
        print(f"FAIL {exc.name} ({exc.detail})")
        return 1
    suffix = ".csv" if header is not None else ".txt"
    out = Path(args.out) if args.out else Path(f"{args.command}{suffix}")
    meta = [f"seed = {cfg['seed']}",
            f"version = {__version__}",
            f"command = cliffsim {' '.join(argv)}"]
    _write_report(out, header, payload, meta)
    for line in summary:
        print(line)
    print(f"OK wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
