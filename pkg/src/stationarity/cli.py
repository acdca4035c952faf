"""Command-line front end.

    stationarity eval  --model M.json --act A.json [--act2 B.json]
    stationarity core  --capacity V.json [--objective 5,1]
    stationarity axiom --model M.json --axiom SS --trials 10000 --seed 0
    stationarity repro {solar-carbon,example1,exchange,core-identity}

Exit codes: 0 success, 2 invalid input, 3 internal error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io
from .axioms import AxiomId, run_trials
from .capacity import (capacity_from_distortion, core_min_expectation, core_vertices, is_additive,
                       is_convex)
from .config import EPS, SamplerConfig, RunConfig
from .errors import StationarityError, UnknownExample
from .evaluate import PreferenceModel, deu_value, deu_value_swapped, prefer, value
from .scenarios import EXAMPLE_BETA, example_cdeu, example_deu, hedging_scenario, solar_carbon
from .streams import Act, StateSpace, UtilityFunction

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3
EXAMPLES = ("solar-carbon", "example1", "exchange", "core-identity")


def _objective(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"objective must be comma-separated numbers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps", type=float, default=EPS, help="indifference tolerance")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="stationarity", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="value an act, or compare two")
    p.add_argument("--model", required=True)
    p.add_argument("--act", required=True)
    p.add_argument("--act2")

    p = sub.add_parser("core", parents=[common], help="inspect a capacity and its core")
    p.add_argument("--capacity", required=True)
    p.add_argument("--objective", type=_objective)

    p = sub.add_parser("axiom", parents=[common], help="search for violations of an axiom")
    p.add_argument("--model", required=True)
    p.add_argument("--axiom", required=True, choices=[a.value for a in AxiomId])
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("repro", parents=[common], help="recompute a named worked example")
    p.add_argument("name", help="one of: " + ", ".join(EXAMPLES))
    p.add_argument("--seed", type=int, default=0)
    return parser


def config_from_args(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        model=getattr(args, "model", None),
        act=getattr(args, "act", None),
        act2=getattr(args, "act2", None),
        capacity=getattr(args, "capacity", None),
        objective=getattr(args, "objective", None),
        axiom=getattr(args, "axiom", None),
        trials=getattr(args, "trials", 1000),
        seed=getattr(args, "seed", 0),
        eps=args.eps,
        format=args.format,
        name=getattr(args, "name", None),
    )


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(round(x, 12))
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(_fmt(v) for v in x) + ")"
    return str(x)


def _table(rows: list[tuple]) -> str:
    cells = [[_fmt(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(cells[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells)


def _emit(cfg: RunConfig, payload: dict, text: str, out) -> None:
    if cfg.format == "json":
        print(io.dumps(payload), file=out)
    else:
        print(text, file=out)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

class InvalidInput(StationarityError):
    def __init__(self, message, issues=()):
        super().__init__(message)
        self.issues = list(issues)


def _checked_act(path, model: PreferenceModel):
    act, filt, report = io.load_act(path)
    if not report.ok:
        raise InvalidInput(f"{path}: act is not adapted to its filtration", report.lines())
    if model.n_states is not None and act.n != model.n_states:
        raise InvalidInput(f"{path}: act has {act.n} states, model has {model.n_states}")
    if model.kind == "DU" and not act.is_deterministic():
        raise InvalidInput(f"{path}: a DU model only values deterministic streams")
    return act


def cmd_eval(cfg: RunConfig, out) -> int:
    model = io.load_model(cfg.model)
    left = _checked_act(cfg.act, model)
    payload = {"model": model.kind, "value": value(model, left)}
    rows = [("act", "value"), (cfg.act, payload["value"])]
    text_extra = ""
    if cfg.act2:
        right = _checked_act(cfg.act2, model)
        verdict = prefer(model, left, right, cfg.eps)
        payload["value2"] = verdict.values[1]
        payload["relation"] = verdict.relation
        rows.append((cfg.act2, verdict.values[1]))
        text_extra = f"\nrelation: {verdict.relation} (eps {cfg.eps:g})"
    _emit(cfg, payload, f"model: {model.kind}\n" + _table(rows) + text_extra, out)
    return EXIT_OK


def cmd_core(cfg: RunConfig, out) -> int:
    v = io.load_capacity(cfg.capacity)
    convex, witness = is_convex(v, cfg.eps)
    additive = is_additive(v, cfg.eps)
    payload = {"states": list(v.states.labels), "convex": convex, "additive": additive}
    lines = [f"states: {', '.join(v.states.labels)}", f"convex: {convex}", f"additive: {additive}"]
    if not convex and witness is not None:
        a, b = (list(v.states.names(x)) for x in witness)
        payload["supermodularity_witness"] = [a, b]
        lines.append(f"supermodularity fails for A={a}, B={b}")
    if additive:
        p = v.singletons().tolist()
        payload["core"] = [p]
        lines.append(f"core: the single probability {_fmt(p)}")
    elif convex and v.n <= 6:
        verts = [x.tolist() for x in core_vertices(v, cfg.eps)]
        payload["core_vertices"] = verts
        lines.append(f"core vertices ({len(verts)}):")
        lines += [f"  {_fmt(x)}" for x in verts]
    if cfg.objective is not None:
        f = np.asarray(cfg.objective, dtype=float)
        res = core_min_expectation(f, v, cfg.eps)
        payload["objective"] = f.tolist()
        payload["status"] = res.status
        if res.status == "empty_core":
            lines.append("core: empty")
        else:
            payload["min"] = res.value
            payload["minimizer"] = res.minimizer.tolist()
            lines.append(f"min E_p[f] over the core: {_fmt(res.value)}")
            lines.append(f"minimizer: {_fmt(res.minimizer.tolist())}")
            if res.choquet_delta is not None:
                payload["choquet_delta"] = res.choquet_delta
                payload["marginal"] = res.marginal.tolist()
                lines.append(f"choquet cross-check delta: {res.choquet_delta:.3g}")
    elif not convex:
        # emptiness needs the LP; any objective works
        res = core_min_expectation(np.zeros(v.n), v, cfg.eps, cross_check=False)
        payload["status"] = res.status
        lines.append("core: empty" if res.status == "empty_core" else "core: nonempty")
    else:
        payload["status"] = "ok"
    _emit(cfg, payload, "\n".join(lines), out)
    return EXIT_OK


def cmd_axiom(cfg: RunConfig, out) -> int:
    model = io.load_model(cfg.model)
    summary = run_trials(model, cfg.axiom, cfg.trials, cfg.seed, eps=cfg.eps)
    payload = summary.to_dict(model)
    if summary.violation is None:
        c = summary.counts
        text = (f"{cfg.axiom}: no violation found in {cfg.trials} trials (seed {cfg.seed}); "
                f"{c['holds']} held, {c['inapplicable']} inapplicable")
    else:
        text = f"{cfg.axiom}: violation at trial {summary.trial_index}\n" + io.dumps(payload["violation"])
    _emit(cfg, payload, text, out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# worked examples
# ---------------------------------------------------------------------------

def repro_example1(eps: float = EPS) -> dict:
    sc = hedging_scenario()
    model = example_cdeu(0.4)
    vals = {k: value(model, getattr(sc, k)) for k in ("f", "g", "f_hat", "g_hat")}
    before = prefer(model, sc.f, sc.g, eps).relation
    after = prefer(model, sc.f_hat, sc.g_hat, eps).relation
    sweep = []
    for v in np.round(np.arange(1, 10) / 10, 1):
        m = example_cdeu(float(v))
        sweep.append({
            "v": float(v),
            "f_vs_g": prefer(m, sc.f, sc.g, eps).relation,
            "f_hat": value(m, sc.f_hat),
            "g_hat": value(m, sc.g_hat),
            "f_hat_vs_g_hat": prefer(m, sc.f_hat, sc.g_hat, eps).relation,
        })
    return {"beta": EXAMPLE_BETA, "capacity": [0.4, 0.4], "values": vals,
            "f_vs_g": before, "f_hat_vs_g_hat": after, "sweep": sweep}


def repro_solar_carbon(eps: float = EPS) -> dict:
    sc = solar_carbon()
    states = ("D", "R")
    models = {"DEU": example_deu(0.5, states=states), "CDEU": example_cdeu(0.4, states=states)}
    out = {}
    for name, m in models.items():
        vals = {k: value(m, sc[k]) for k in ("s", "c", "s_hat", "c_hat")}
        out[name] = {"values": vals,
                     "s_vs_c": prefer(m, sc["s"], sc["c"], eps).relation,
                     "s_hat_vs_c_hat": prefer(m, sc["s_hat"], sc["c_hat"], eps).relation}
    return {"beta": EXAMPLE_BETA, "models": out}


def random_act(n: int, rng, max_horizon: int = 6, low: float = 0.0, high: float = 10.0) -> Act:
    T = int(rng.integers(0, max_horizon + 1))
    return Act(rng.uniform(low, high, size=(T + 1, n)), rng.uniform(low, high, size=n))


def repro_exchange(seed: int = 0, count: int = 100) -> dict:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        n = int(rng.integers(1, 7))
        p = rng.dirichlet(np.ones(n))
        m = PreferenceModel.deu(p, UtilityFunction.crra(0.5), float(rng.uniform(0.5, 0.95)))
        act = random_act(n, rng)
        worst = max(worst, abs(deu_value(act, m) - deu_value_swapped(act, m)))
    return {"count": count, "seed": seed, "max_abs_diff": worst}


def repro_core_identity(seed: int = 0, count: int = 100, eps: float = EPS) -> dict:
    from .capacity import choquet

    rng = np.random.default_rng(seed)
    worst_value = worst_vertex = 0.0
    for _ in range(count):
        n = int(rng.integers(2, 6))
        k = float(rng.uniform(1.0, 4.0))
        v = capacity_from_distortion(rng.dirichlet(np.ones(n)), lambda x, k=k: x ** k, StateSpace.of(n))
        f = rng.uniform(-5, 5, size=n)
        res = core_min_expectation(f, v, eps)
        worst_value = max(worst_value, abs(choquet(f, v) - res.value))
        worst_vertex = max(worst_vertex, float(np.abs(res.minimizer - res.marginal).max()))
    return {"count": count, "seed": seed, "max_abs_diff": worst_value, "max_minimizer_diff": worst_vertex}


def cmd_repro(cfg: RunConfig, out) -> int:
    name = cfg.name
    if name == "example1":
        r = repro_example1(cfg.eps)
        vals = r["values"]
        rows = [("act", "value")] + [(f"V({k})", vals[k]) for k in ("f", "g", "f_hat", "g_hat")]
        sweep = [("v(A)=v(Ac)", "V(f_hat)", "V(g_hat)", "f_hat vs g_hat")]
        sweep += [(s["v"], s["f_hat"], s["g_hat"], s["f_hat_vs_g_hat"]) for s in r["sweep"]]
        text = (f"beta={r['beta']}, u=id, v(A)=v(Ac)=0.4\n" + _table(rows)
                + f"\nf vs g: {r['f_vs_g']}\nf_hat vs g_hat: {r['f_hat_vs_g_hat']}\n\n" + _table(sweep))
    elif name == "solar-carbon":
        r = repro_solar_carbon(cfg.eps)
        rows = [("model", "V(s)", "V(c)", "V(s_hat)", "V(c_hat)", "s vs c", "s_hat vs c_hat")]
        for m, d in r["models"].items():
            v = d["values"]
            rows.append((m, v["s"], v["c"], v["s_hat"], v["c_hat"], d["s_vs_c"], d["s_hat_vs_c_hat"]))
        text = f"beta={r['beta']}, u=id; DEU P=(0.5, 0.5); CDEU v(D)=v(R)=0.4\n" + _table(rows)
    elif name == "exchange":
        r = repro_exchange(cfg.seed)
        text = f"max |inner - swapped| over {r['count']} acts (seed {r['seed']}): {r['max_abs_diff']:.3g}"
    elif name == "core-identity":
        r = repro_core_identity(cfg.seed, eps=cfg.eps)
        text = (f"max |choquet - core min| over {r['count']} convex capacities (seed {r['seed']}): "
                f"{r['max_abs_diff']:.3g}\nmax |LP minimizer - marginal vector|: {r['max_minimizer_diff']:.3g}")
    else:
        raise UnknownExample(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    _emit(cfg, r, text, out)
    return EXIT_OK


COMMANDS = {"eval": cmd_eval, "core": cmd_core, "axiom": cmd_axiom, "repro": cmd_repro}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.command](cfg, out)
    except InvalidInput as exc:
        print(f"error: {exc}", file=err)
        for line in exc.issues:
            print(f"  {line}", file=err)
        return EXIT_INPUT
    except (StationarityError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - report anything else as internal
        print(f"internal error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
