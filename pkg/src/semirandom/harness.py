"""Experiment specs, trial execution and report streams.

An :class:`ExperimentSpec` fully determines its report: trial ``i`` runs
with ``split_seed(seed, i)``, records are emitted in trial order, and the
only nondeterministic field (``wall_ms``) can be switched off.
"""
from __future__ import annotations

import csv
import io
import json
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Optional

from .constants import ALPHA, harmonic
from .errors import InvalidArgumentError, PatternFormatError, SemiRandomError, VariantError
from .graph import SemiRandomGraph, SimpleGraph, is_connected, read_simple_graph
from .oracles import (Connected, HasEdge, MinDegreeAtLeast, contains_subgraph,
                      crossing_edges, has_min_degree, is_induced_cycle_on, is_k_connected)
from .process import (HittingTimeEstimate, ProcessVariant, RunConfig, StopReason, coupled_run,
                      run_until)
from .rng import split_seed
from .strategies import (ConnectSmallestComponent, MinDegreePre, degeneracy_ordering,
                         run_bipartite, run_degenerate_subgraph, run_induced_cycle,
                         run_two_connect, side_size, strat_min_degree, strat_s_min_star)
from .strategies.degenerate import budget_function

COMMANDS = ("run", "estimate", "verify", "couple")
STRATEGIES = ("kmin", "s-min-star", "connect", "two-connect", "degenerate", "bipartite",
              "induced-cycle")
STOPS = ("default", "min-degree", "connected", "2-connected", "has-edge")
FORMATS = ("jsonl", "csv")

DEFAULT_VARIANT = {
    "kmin": "post", "s-min-star": "post", "connect": "pre", "two-connect": "pre",
    "degenerate": "pre", "bipartite": "pre", "induced-cycle": "post",
}
FIXED_VARIANT = {"two-connect": "pre", "degenerate": "pre", "bipartite": "pre",
                 "induced-cycle": "post"}
# strategies driven by a stop predicate; the rest run their own construction
STOPPABLE = ("kmin", "s-min-star", "connect")

TRIAL_FIELDS = ("record", "trial", "n", "seed", "variant", "strategy", "params", "rounds_total",
                "rounds_by_phase", "failures_by_phase", "stopped_reason", "property_verified",
                "wall_ms")


@dataclass
class ExperimentSpec:
    command: str = "run"
    strategy: str = "kmin"
    variant: Optional[str] = None
    n: int = 1000
    k: int = 2
    m: Optional[int] = None
    pattern: Optional[str] = None
    g: str = "ln"
    trials: int = 1
    seed: int = 0
    budget: int = 0
    format: str = "jsonl"
    stop: str = "default"
    rounds: int = 1000
    workers: int = 1
    emit_edges: bool = False
    omit_timing: bool = False
    input: Optional[str] = None  # verify: file of trial records

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentSpec":
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise InvalidArgumentError(f"unknown spec fields {sorted(extra)}")
        return cls(**d)


# -- validation -----------------------------------------------------------------

_BUILTIN = re.compile(r"^([KCP])(\d+)$")


def builtin_pattern(name: str) -> Optional[SimpleGraph]:
    """``K<r>``, ``C<r>`` and ``P<r>`` (r vertices) for quick experiments."""
    mt = _BUILTIN.match(name)
    if not mt:
        return None
    kind, r = mt.group(1), int(mt.group(2))
    if r < 1 or (kind == "C" and r < 3):
        raise PatternFormatError(f"invalid built-in pattern {name!r}")
    if kind == "K":
        edges = [(a, b) for a in range(1, r + 1) for b in range(a + 1, r + 1)]
    elif kind == "C":
        edges = [(i, i % r + 1) for i in range(1, r + 1)]
    else:
        edges = [(i, i + 1) for i in range(1, r)]
    return SimpleGraph.from_edges(r, edges)


def load_pattern(spec_pattern) -> SimpleGraph:
    if isinstance(spec_pattern, dict):
        return SimpleGraph.from_edges(spec_pattern["n"], [tuple(e) for e in spec_pattern["edges"]])
    path = Path(spec_pattern)
    if path.exists():
        return read_simple_graph(path)
    g = builtin_pattern(str(spec_pattern))
    if g is None:
        raise PatternFormatError(f"pattern file {spec_pattern!r} not found")
    return g


def validate(spec: ExperimentSpec) -> dict:
    """Check a spec and return the normalised strategy parameters.

    Everything that can be rejected is rejected here, before any random
    draw is made.
    """
    if spec.command not in COMMANDS:
        raise InvalidArgumentError(f"unknown command {spec.command!r}")
    if spec.format not in FORMATS:
        raise InvalidArgumentError(f"unknown format {spec.format!r}")
    if spec.command == "verify":
        if not spec.input:
            raise InvalidArgumentError("verify needs an input file of trial records")
        return {}
    if spec.strategy not in STRATEGIES:
        raise InvalidArgumentError(f"unknown strategy {spec.strategy!r}; choose from {list(STRATEGIES)}")
    variant = ProcessVariant.parse(spec.variant or DEFAULT_VARIANT[spec.strategy]).value
    need = FIXED_VARIANT.get(spec.strategy)
    if need and variant != need:
        raise VariantError(f"strategy {spec.strategy} exists only for the {need} variant")
    spec.variant = variant
    RunConfig(spec.n, spec.seed, spec.budget, variant)  # range checks
    if spec.trials < 1:
        raise InvalidArgumentError("trials must be >= 1")
    if spec.workers < 1:
        raise InvalidArgumentError("workers must be >= 1")
    if spec.stop not in STOPS:
        raise InvalidArgumentError(f"unknown stop property {spec.stop!r}")
    if spec.stop != "default" and spec.strategy not in STOPPABLE:
        raise InvalidArgumentError(f"--stop is not supported for strategy {spec.strategy}")
    params: dict = {}
    s = spec.strategy
    n = spec.n
    if s in ("kmin", "s-min-star") or spec.stop == "min-degree":
        if not 1 <= spec.k < n:
            raise InvalidArgumentError(f"need 1 <= k < n, got k={spec.k}, n={n}")
        params["k"] = spec.k
    if s == "two-connect" and n < 5:
        raise InvalidArgumentError("two-connect needs n >= 5")
    if s == "induced-cycle" and n < 4:
        raise InvalidArgumentError("induced-cycle needs n >= 4")
    if s == "bipartite":
        if spec.m is None or spec.m < 1:
            raise InvalidArgumentError("bipartite needs --m >= 1")
        if 4 * side_size(spec.m) > n:
            raise InvalidArgumentError(f"need 4*ceil(sqrt(m)) <= n, got m={spec.m}, n={n}")
        params["m"] = spec.m
    if s == "degenerate":
        if spec.pattern is None:
            raise InvalidArgumentError("degenerate needs --pattern")
        H = load_pattern(spec.pattern)
        if H.n > n:
            raise InvalidArgumentError(f"pattern has {H.n} vertices but n = {n}")
        if H.n > 12:
            raise InvalidArgumentError("patterns are limited to 12 vertices for verification")
        budget_function(spec.g)
        params["pattern"] = {"n": H.n, "edges": [list(e) for e in H.sorted_edges()]}
        params["g"] = spec.g
    if spec.command == "couple":
        if s not in STOPPABLE:
            raise InvalidArgumentError("couple supports kmin, s-min-star and connect")
        if spec.rounds < 0:
            raise InvalidArgumentError("rounds must be >= 0")
    if spec.stop != "default":
        params["stop"] = spec.stop
    return params


# -- trials -------------------------------------------------------------------

def _stop_predicate(name: str, params: dict):
    if name == "min-degree":
        return MinDegreeAtLeast(params["k"])
    if name == "connected":
        return Connected()
    if name == "has-edge":
        return HasEdge()
    if name == "2-connected":
        return _TwoConnectedStop()
    raise InvalidArgumentError(name)


class _TwoConnectedStop:
    def __call__(self, g) -> bool:
        return g.min_degree() >= 2 and is_k_connected(g, 2)


def _default_stop(strategy: str) -> str:
    return {"kmin": "min-degree", "s-min-star": "min-degree", "connect": "connected"}[strategy]


def execute_trial(strategy: str, params: dict, config: RunConfig):
    """Run one trial; returns ``(trace, certificates)``."""
    if strategy in STOPPABLE:
        stop = params.get("stop", _default_stop(strategy))
        if strategy == "kmin":
            strat = strat_min_degree(config.variant)
        elif strategy == "s-min-star":
            strat = strat_s_min_star(config.variant)
        else:
            strat = ConnectSmallestComponent()
        return run_until(config, strat, _stop_predicate(stop, params)), {}
    if strategy == "two-connect":
        pt = run_two_connect(config)
    elif strategy == "degenerate":
        pt = run_degenerate_subgraph(config, degeneracy_ordering(load_pattern(params["pattern"])),
                                     params["g"])
    elif strategy == "bipartite":
        pt = run_bipartite(config, params["m"])
    elif strategy == "induced-cycle":
        pt = run_induced_cycle(config)
    else:
        raise InvalidArgumentError(f"unknown strategy {strategy!r}")
    return pt.trace, pt.certificates


def verify_property(strategy: str, params: dict, g) -> bool:
    """Strategy-independent check of the property the trial was aiming for."""
    stop = params.get("stop")
    if stop is None and strategy in STOPPABLE:
        stop = _default_stop(strategy)
    if stop == "min-degree":
        return has_min_degree(g, params["k"])
    if stop == "connected":
        return is_connected(g)
    if stop == "2-connected":
        return is_k_connected(g, 2)
    if stop == "has-edge":
        return g.rounds >= 1 if isinstance(g, SemiRandomGraph) else True
    if strategy == "two-connect":
        return is_k_connected(g, 2)
    if strategy == "degenerate":
        return contains_subgraph(g, load_pattern(params["pattern"])) is not None
    if strategy == "bipartite":
        a = side_size(params["m"])
        return crossing_edges(g, range(1, a + 1), range(a + 1, g.n + 1)) >= params["m"]
    if strategy == "induced-cycle":
        return is_induced_cycle_on(g, range(1, g.n))
    raise InvalidArgumentError(f"unknown strategy {strategy!r}")


def _trial_record(spec_d: dict, params: dict, i: int) -> dict:
    spec = ExperimentSpec(**spec_d)
    seed = split_seed(spec.seed, i)
    config = RunConfig(spec.n, seed, spec.budget, spec.variant)
    t0 = time.perf_counter()
    trace, certificates = execute_trial(spec.strategy, params, config)
    wall = (time.perf_counter() - t0) * 1000.0
    rec = {
        "record": "trial",
        "trial": i,
        "n": spec.n,
        "seed": seed,
        "variant": spec.variant,
        "strategy": spec.strategy,
        "params": params,
        "budget": spec.budget,
        "rounds_total": trace.rounds,
        "rounds_by_phase": trace.phase_rounds,
        "failures_by_phase": trace.failure_counts,
        "stopped_reason": trace.stopped_reason.value,
        "property_verified": verify_property(spec.strategy, params, trace.final_graph),
        "wall_ms": None if spec.omit_timing else round(wall, 3),
    }
    if spec.emit_edges:
        rec["edges"] = [[e.square, e.circle, int(e.used)] for e in trace.final_graph.iter_edges()]
    if certificates and spec.strategy in ("degenerate", "bipartite"):
        rec["certificate"] = _jsonable(certificates)
    return rec


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _trial_task(args):
    return _trial_record(*args)


def run_trials(spec: ExperimentSpec, params: dict) -> list[dict]:
    tasks = [(spec.to_dict(), params, i) for i in range(spec.trials)]
    if spec.workers > 1 and spec.trials > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            return list(pool.map(_trial_task, tasks))
    return [_trial_task(t) for t in tasks]


def reference_value(strategy: str, params: dict, n: int) -> Optional[dict]:
    """Asymptotic rounds/n the estimate should be compared with, when one is known."""
    if "stop" in params and params["stop"] not in ("min-degree",):
        return None
    if strategy in ("kmin", "s-min-star") and params.get("k") in ALPHA:
        k = params["k"]
        return {"name": f"alpha_{k}", "rounds_per_n": ALPHA[k]}
    if strategy == "connect":
        return {"name": "connect", "rounds_per_n": 1.0}
    if strategy == "two-connect":
        return {"name": "alpha_2", "rounds_per_n": ALPHA[2]}
    if strategy == "bipartite":
        return {"name": "m_over_n", "rounds_per_n": params["m"] / n}
    if strategy == "induced-cycle":
        return {"name": "coupon_collector", "rounds_per_n": harmonic(n - 1)}
    return None


def summary_record(spec: ExperimentSpec, params: dict, trials: list[dict]) -> dict:
    """Fold the trial records (in trial order) into the summary."""
    rounds = [r["rounds_total"] if r["stopped_reason"] == StopReason.PROPERTY_REACHED.value else None
              for r in sorted(trials, key=lambda r: r["trial"])]
    est = HittingTimeEstimate.from_rounds(rounds, spec.n)
    out = {"record": "summary", "strategy": spec.strategy, "variant": spec.variant, "n": spec.n,
           "params": params, "master_seed": spec.seed}
    out.update(est.to_dict())
    out["property_verified_fraction"] = sum(1 for r in trials if r["property_verified"]) / len(trials)
    out["reference"] = reference_value(spec.strategy, params, spec.n)
    return out


def couple_records(spec: ExperimentSpec, params: dict) -> list[dict]:
    recs = []
    same = 0
    for i in range(spec.trials):
        seed = split_seed(spec.seed, i)
        config = RunConfig(spec.n, seed, 0, ProcessVariant.PRE)
        if spec.strategy == "connect":
            strat = ConnectSmallestComponent()
        else:
            strat = MinDegreePre()
        a, b = coupled_run(config, strat, spec.rounds)
        ok = a.records() == b.records()
        same += ok
        recs.append({"record": "couple", "trial": i, "seed": seed, "rounds": spec.rounds,
                     "identical": ok, "used_pre": a.final_graph.used_count(),
                     "used_post": b.final_graph.used_count()})
    recs.append({"record": "summary", "strategy": spec.strategy, "n": spec.n,
                 "identical_traces": f"{same}/{spec.trials}"})
    return recs


def verify_records(spec: ExperimentSpec) -> tuple[list[dict], bool]:
    """Re-check each trial record; graphs come from its edges or a replay."""
    out = []
    all_ok = True
    for rec in read_records(spec.input):
        if rec.get("record") != "trial":
            continue
        strategy, params, n = rec["strategy"], rec.get("params") or {}, rec["n"]
        if "edges" in rec:
            g = SemiRandomGraph.from_records(n, [tuple(e) for e in rec["edges"]])
            replay_ok = g.rounds == rec["rounds_total"]
        else:
            config = RunConfig(n, rec["seed"], rec.get("budget", 0), rec["variant"])
            trace, _ = execute_trial(strategy, params, config)
            g = trace.final_graph
            replay_ok = (trace.rounds == rec["rounds_total"]
                         and trace.stopped_reason.value == rec["stopped_reason"])
        verified = verify_property(strategy, params, g)
        ok = verified and replay_ok and bool(rec.get("property_verified", verified)) == verified
        all_ok &= ok
        out.append({"record": "verify", "trial": rec.get("trial"), "seed": rec.get("seed"),
                    "property_verified": verified, "replay_matches": replay_ok, "ok": ok})
    if not out:
        raise InvalidArgumentError(f"no trial records found in {spec.input!r}")
    return out, all_ok


def read_records(path) -> list[dict]:
    text = Path(path).read_text()
    recs = []
    lines = text.splitlines()
    if lines and lines[0].startswith("record,"):
        reader = csv.DictReader([ln for ln in lines if not ln.startswith("#")])
        for row in reader:
            recs.append(_decode_csv_row(row))
        return recs
    for ln in lines:
        ln = ln.strip()
        if ln:
            try:
                recs.append(json.loads(ln))
            except json.JSONDecodeError as exc:
                raise InvalidArgumentError(f"malformed record line: {exc}") from None
    return recs


def _decode_csv_row(row: dict) -> dict:
    out = {}
    for k, v in row.items():
        try:
            out[k] = json.loads(v)
        except (json.JSONDecodeError, TypeError):
            out[k] = v
    return out


# -- output -------------------------------------------------------------------

def dumps(rec: dict) -> str:
    return json.dumps(rec, sort_keys=False, separators=(", ", ": "))


def write_report(records: list[dict], fmt: str, stream) -> None:
    if fmt == "jsonl":
        for r in records:
            stream.write(dumps(r) + "\n")
        return
    rows = [r for r in records if r.get("record") == "trial"]
    other = [r for r in records if r.get("record") != "trial"]
    if rows:
        cols = list(TRIAL_FIELDS) + [k for k in rows[0] if k not in TRIAL_FIELDS]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_csv_cell(r.get(c)) for c in cols])
        stream.write(buf.getvalue())
    for r in other:
        stream.write(f"# {r.get('record', 'record')} {dumps(r)}\n")


def _csv_cell(v):
    if isinstance(v, (dict, list, bool)) or v is None:
        return json.dumps(v, separators=(",", ":"))
    return v


def execute(spec: ExperimentSpec, out, err) -> int:
    """Run ``spec``, writing the report to ``out``; returns the exit status."""
    try:
        params = validate(spec)
        if spec.command == "verify":
            recs, ok = verify_records(spec)
            write_report(recs, "jsonl", out)
            return 0 if ok else 1
        if spec.command == "couple":
            recs = couple_records(spec, params)
            write_report(recs, spec.format, out)
            return 0 if recs[-1]["identical_traces"] == f"{spec.trials}/{spec.trials}" else 1
        trials = run_trials(spec, params)
        recs = list(trials)
        if spec.command == "estimate":
            recs.append(summary_record(spec, params, trials))
        write_report(recs, spec.format, out)
        return 0
    except (SemiRandomError, OSError) as exc:
        err.write(json.dumps({"record": "error", "error": type(exc).__name__,
                              "message": str(exc)}) + "\n")
        return 2
