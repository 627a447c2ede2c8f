"""Sweep orchestration: states x confinement radii -> measures + complexities.

Cells are independent and run on a bounded thread pool; the only shared
state is a write-once solution cache. Output assembly is a single-threaded
merge in deterministic key order, so identical configs give byte-identical
files.
"""

import csv
import hashlib
import io
import json
import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .complexity import DEFAULT_B_VALUES, FAMILIES, SPACES, assemble_report
from .errors import ChainfoError, ConfigurationError
from .measures import assemble_measures
from .momentum import MomentumGridSpec, build_momentum
from .radial import STATE_LABELS, Confinement, QuantumState, SolverOptions, solve_state

log = logging.getLogger(__name__)

OUTPUT_FORMATS = ("csv", "json", "plot")
CSV_HEADER = ["state", "r_c", "alpha", "beta", "b", "family", "space", "value"]

# family, scaling parameter and relative tolerance of each reference table
TABLE_SPEC = {
    "I": ("ES", 1.0, 3e-3),
    "II": ("ER", 1.0, 5e-3),
    "III": ("IS", 2.0 / 3.0, 3e-3),
    "IV": ("IR", 2.0 / 3.0, 5e-3),
}


@dataclass(frozen=True)
class SweepConfig:
    states: tuple
    rc_values: tuple
    alpha: float = 0.6
    beta: float = 3.0
    b_values: tuple = DEFAULT_B_VALUES
    solver: SolverOptions = field(default_factory=SolverOptions)
    momentum: MomentumGridSpec = field(default_factory=MomentumGridSpec)
    output_format: str = "csv"
    output_path: str = ""
    threads: int = 4
    plot_family: str = "ES"
    plot_space: str = "r"
    plot_b: float = 1.0

    def __post_init__(self):
        unknown = [s for s in self.states if s not in STATE_LABELS]
        if unknown:
            raise ConfigurationError(f"unsupported states: {unknown}")
        if any(rc <= 0 or rc > 1e4 for rc in self.rc_values):
            raise ConfigurationError("rc values must lie in (0, 1e4]")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigurationError(f"format must be one of {OUTPUT_FORMATS}")
        if self.plot_family not in FAMILIES or self.plot_space not in SPACES:
            raise ConfigurationError("invalid plot family/space")
        if self.threads < 1:
            raise ConfigurationError("threads must be >= 1")


@dataclass(frozen=True)
class CacheKey:
    state: str
    r_c: float
    signature: str

    @classmethod
    def build(cls, state_label, r_c, solver, momentum):
        raw = f"{solver.signature()}|{momentum.signature()}"
        sig = hashlib.sha256(raw.encode()).hexdigest()[:16]
        return cls(state_label, float(r_c), sig)

    def filename(self):
        return f"{self.state}_rc{self.r_c:.6g}_{self.signature}.json"


def _solution_to_payload(rsol, psol):
    return {
        "state": [rsol.state.n, rsol.state.l, rsol.state.m],
        "r_c": rsol.r_c,
        "energy": rsol.energy,
        "grid": rsol.grid.tolist(),
        "weights": rsol.weights.tolist(),
        "values": rsol.values.tolist(),
        "norm_constant": rsol.norm_constant,
        "nodes_r": list(rsol.nodes_r),
        "x_nodes": rsol._x_nodes.tolist(),
        "u_nodes": rsol._u_nodes.tolist(),
        "du_nodes": rsol._du_nodes.tolist(),
        "map_scale": rsol._map_scale,
        "p_grid": psol.p_grid.tolist(),
        "p_weights": psol.weights.tolist(),
        "p_values": psol.values.tolist(),
        "p_max": psol.p_max,
        "tail_mass": psol.tail_mass,
        "p_norm_constant": psol.norm_constant,
        "tail_amplitude2": psol.tail_amplitude2,
    }


def _payload_to_solutions(payload):
    from .momentum import MomentumSolution
    from .radial import RadialSolution

    state = QuantumState(*payload["state"])
    rsol = RadialSolution(
        state=state,
        r_c=payload["r_c"],
        energy=payload["energy"],
        grid=np.array(payload["grid"]),
        weights=np.array(payload["weights"]),
        values=np.array(payload["values"]),
        norm_constant=payload["norm_constant"],
        nodes_r=tuple(payload["nodes_r"]),
        _x_nodes=np.array(payload["x_nodes"]),
        _u_nodes=np.array(payload["u_nodes"]),
        _du_nodes=np.array(payload["du_nodes"]),
        _map_scale=payload["map_scale"],
    )
    psol = MomentumSolution(
        state=state,
        r_c=payload["r_c"],
        p_grid=np.array(payload["p_grid"]),
        weights=np.array(payload["p_weights"]),
        values=np.array(payload["p_values"]),
        p_max=payload["p_max"],
        tail_mass=payload["tail_mass"],
        norm_constant=payload["p_norm_constant"],
        tail_amplitude2=payload["tail_amplitude2"],
    )
    return rsol, psol


class SolutionCache:
    """Write-once cache of (radial, momentum) solutions, memory + optional disk."""

    def __init__(self, directory=None):
        self.directory = Path(directory) if directory else None
        if self.directory:
            self.directory.mkdir(parents=True, exist_ok=True)
        self._memory = {}
        self._lock = threading.Lock()
        self.compute_count = 0

    def get_or_compute(self, key, compute):
        with self._lock:
            if key in self._memory:
                return self._memory[key]
        pair = self._load_disk(key)
        if pair is None:
            pair = compute()
            with self._lock:
                self.compute_count += 1
            self._store_disk(key, pair)
        with self._lock:
            # first writer wins; concurrent equal recomputation is harmless
            self._memory.setdefault(key, pair)
            return self._memory[key]

    def _load_disk(self, key):
        if not self.directory:
            return None
        path = self.directory / key.filename()
        if not path.exists():
            return None
        try:
            payload = json.loads(path.read_text())
            return _payload_to_solutions(payload)
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("cache entry %s corrupted (%s); recomputing", path, exc)
            return None

    def _store_disk(self, key, pair):
        if not self.directory:
            return
        path = self.directory / key.filename()
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(_solution_to_payload(*pair)))
        tmp.replace(path)


def cache_get_or_compute(cache, state_label, r_c,
                         solver=None, momentum=None):
    """Cached (RadialSolution, MomentumSolution) for one cell."""
    solver = solver or SolverOptions()
    momentum = momentum or MomentumGridSpec()
    key = CacheKey.build(state_label, r_c, solver, momentum)

    def compute():
        rsol = solve_state(QuantumState.from_label(state_label),
                           Confinement(r_c), solver)
        return rsol, build_momentum(rsol, momentum)

    return cache.get_or_compute(key, compute)


@dataclass
class CellResult:
    state: str
    r_c: float
    measures: object = None
    report: object = None
    error: str = ""

    @property
    def ok(self):
        return not self.error


def run_sweep(cfg, cache=None):
    """One CellResult per (state, r_c), deterministic given the config.

    Failures are confined to their own cell; the remaining cells are
    unaffected.
    """
    cache = cache if cache is not None else SolutionCache()
    cells = [(s, rc) for s in cfg.states for rc in cfg.rc_values]

    def work(cell):
        state_label, rc = cell
        try:
            rsol, psol = cache_get_or_compute(cache, state_label, rc,
                                              cfg.solver, cfg.momentum)
            ms = assemble_measures(rsol, psol, cfg.alpha, cfg.beta)
            return CellResult(state_label, rc, ms,
                              assemble_report(ms, cfg.b_values))
        except ChainfoError as exc:
            log.warning("cell (%s, %g) failed: %s", state_label, rc, exc)
            return CellResult(state_label, rc, error=str(exc))

    if not cells:
        return []
    if cfg.threads == 1:
        results = [work(c) for c in cells]
    else:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(work, cells))
    return results


def _format_number(value):
    return format(value, ".9g")


def _iter_rows(records):
    for rec in records:
        if not rec.ok:
            continue
        rep = rec.report
        for family in FAMILIES:
            for space in SPACES:
                for b in sorted({b for (f, s, b) in rep.entries
                                 if f == family and s == space}):
                    yield [rec.state, _format_number(rec.r_c),
                           _format_number(rep.alpha), _format_number(rep.beta),
                           _format_number(b), family, space,
                           _format_number(rep.entries[(family, space, b)])]


def render_output(records, output_format, plot_selector=("ES", "r", 1.0)):
    """Serialized csv/json/plot-data text for sweep records."""
    if not records:
        raise ConfigurationError("output rendering requires nonempty records")
    if output_format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(_iter_rows(records))
        text = buf.getvalue()
    elif output_format == "json":
        rows = [dict(zip(CSV_HEADER, row)) for row in _iter_rows(records)]
        for row in rows:
            for k in ("r_c", "alpha", "beta", "b", "value"):
                row[k] = float(row[k])
        text = json.dumps(rows, indent=1) + "\n"
    elif output_format == "plot":
        family, space, b = plot_selector
        blocks = []
        for state in dict.fromkeys(rec.state for rec in records):
            lines = [f"# {state}  {family} {space} b={_format_number(b)}"]
            for rec in records:
                if rec.ok and rec.state == state:
                    val = rec.report.entries[(family, space, float(b))]
                    lines.append(f"{_format_number(rec.r_c)} {_format_number(val)}")
            blocks.append("\n".join(lines))
        text = "\n\n".join(blocks) + "\n"
    else:
        raise ConfigurationError(f"unknown output format {output_format!r}")
    return text


def emit_output(records, output_format, path, plot_selector=("ES", "r", 1.0)):
    """Serialize sweep records to csv/json/plot-data at the given path."""
    text = render_output(records, output_format, plot_selector)
    out = Path(path)
    out.write_text(text)
    return out


def load_golden_table(which):
    """Rows (state, r_c, c_r, c_p, c_t) of one shipped reference table."""
    if which not in TABLE_SPEC:
        raise ConfigurationError(f"unknown table {which!r}; use I, II, III or IV")
    try:
        raw = resources.files("chainfo.data").joinpath(
            "golden_tables.csv").read_text()
    except FileNotFoundError as exc:
        raise ConfigurationError("golden table data file missing") from exc
    rows = []
    for rec in csv.DictReader(io.StringIO(raw)):
        if rec["table"] == which:
            rows.append((rec["state"], float(rec["r_c"]),
                         float(rec["col1"]), float(rec["col2"]),
                         float(rec["col3"])))
    return rows


@dataclass
class TableComparison:
    which: str
    family: str
    b: float
    tolerance: float
    rows: list  # (state, r_c, computed triple, reference triple, rel devs)

    @property
    def passed(self):
        return all(max(dev) <= self.tolerance for *_, dev in self.rows)

    def report_text(self):
        lines = [f"Table {self.which} ({self.family}, b={self.b:.6g}, "
                 f"tol {self.tolerance:.1%})"]
        for state, rc, comp, ref, dev in self.rows:
            status = "ok" if max(dev) <= self.tolerance else "FAIL"
            lines.append(
                f"  {state} rc={rc:<6g} computed=({comp[0]:.6f}, {comp[1]:.6f}, "
                f"{comp[2]:.6f}) ref=({ref[0]:.6f}, {ref[1]:.6f}, {ref[2]:.6f}) "
                f"maxdev={max(dev):.2e} {status}"
            )
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def reproduce_table(which, cache=None, alpha=0.6, beta=3.0,
                    solver=None, momentum=None, threads=4):
    """Recompute one reference table and report per-cell relative deviation."""
    family, b, tol = TABLE_SPEC[which]
    golden = load_golden_table(which)
    cache = cache if cache is not None else SolutionCache()
    cfg = SweepConfig(
        states=tuple(dict.fromkeys(state for state, *_ in golden)),
        rc_values=(),
        alpha=alpha, beta=beta, b_values=(b,),
        solver=solver or SolverOptions(),
        momentum=momentum or MomentumGridSpec(),
        threads=threads,
    )
    cells = {}
    unique = list(dict.fromkeys((state, rc) for state, rc, *_ in golden))

    def work(cell):
        state_label, rc = cell
        rsol, psol = cache_get_or_compute(cache, state_label, rc,
                                          cfg.solver, cfg.momentum)
        ms = assemble_measures(rsol, psol, alpha, beta)
        return cell, assemble_report(ms, (b,))

    with ThreadPoolExecutor(max_workers=threads) as pool:
        for cell, rep in pool.map(work, unique):
            cells[cell] = rep

    rows = []
    for state, rc, c_r, c_p, c_t in golden:
        rep = cells[(state, rc)]
        comp = tuple(rep.entries[(family, space, b)] for space in SPACES)
        ref = (c_r, c_p, c_t)
        dev = tuple(abs(c / g - 1.0) for c, g in zip(comp, ref))
        rows.append((state, rc, comp, ref, dev))
    return TableComparison(which, family, b, tol, rows)
