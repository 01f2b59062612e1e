"""Parameter sweeps over ``(n_s, r)`` and flat-file writers for their results."""

from __future__ import annotations

import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .exceptions import DomainError, ToleranceError
from .solver import (
    DEFAULT_TOLERANCES,
    SqueezeParams,
    Tolerances,
    bogoliubov_matrix,
    bosonic_reference,
    eigensolve,
    quadrature_variances,
    select_index,
    spectrum,
    uncertainty_product,
)

TOOL = "cobosqueeze"
ROW_TOL = 1e-9


@dataclass(frozen=True)
class SweepConfig:
    n_s: tuple[int, ...]
    r_min: float
    r_max: float
    steps: int = 1
    phi: float = 0.0
    state_selector: int | str = "last"
    fmt: str = "csv"
    out: str | None = None

    def __post_init__(self):
        n_s = (self.n_s,) if isinstance(self.n_s, (int, np.integer)) else tuple(self.n_s)
        if not n_s or any(int(n) < 1 for n in n_s):
            raise DomainError(f"n_s values must be >= 1, got {self.n_s!r}")
        object.__setattr__(self, "n_s", tuple(int(n) for n in n_s))
        if not self.r_min > 0:
            raise DomainError("r_min must be > 0 (r = 0 is degenerate)")
        if self.r_max < self.r_min:
            raise DomainError("r_max must be >= r_min")
        if self.steps < 1:
            raise DomainError("steps must be >= 1")
        if self.fmt not in ("csv", "json"):
            raise DomainError(f"unknown format {self.fmt!r}")
        _validate_selector(self.state_selector)

    def r_grid(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([float(self.r_min)])
        return np.linspace(self.r_min, self.r_max, self.steps)


def _validate_selector(selector):
    if isinstance(selector, str):
        if selector in ("last", "first", "vacuum"):
            return
        try:
            int(selector)
        except ValueError:
            raise DomainError(f"state selector must be an integer, 'last' or 'vacuum', got {selector!r}") from None
    elif isinstance(selector, bool) or not isinstance(selector, (int, np.integer)):
        raise DomainError(f"invalid state selector {selector!r}")


@dataclass(frozen=True)
class SweepRecord:
    n_s: int
    r: float
    phi: float
    state_index: int
    alpha_re: float
    alpha_im: float
    d: float
    var_chi: float
    var_pi: float
    product: float
    bound: float
    bosonic_var_chi: float
    bosonic_var_pi: float


RECORD_COLUMNS = tuple(f.name for f in fields(SweepRecord))


def compute_record(n_s: int, r: float, phi: float = 0.0, selector="last",
                   tol: Tolerances = DEFAULT_TOLERANCES) -> SweepRecord:
    """Solve one grid point and evaluate every observable for the selected state."""
    m = bogoliubov_matrix(n_s, SqueezeParams(r, phi))
    k = select_index(m, selector, tol)
    (state,) = eigensolve(m, [k], tol)
    var_chi, var_pi = quadrature_variances(state)
    product, bound = uncertainty_product(state)
    ref_chi, ref_pi = bosonic_reference(r)
    return SweepRecord(
        n_s=n_s, r=float(r), phi=m.params.phi, state_index=k,
        alpha_re=state.alpha.real, alpha_im=state.alpha.imag, d=state.d,
        var_chi=var_chi, var_pi=var_pi, product=product, bound=bound,
        bosonic_var_chi=ref_chi, bosonic_var_pi=ref_pi,
    )


def _pool_map(fn, items: Sequence, jobs: int | None):
    if jobs == 1 or len(items) <= 1:
        return [fn(*it) for it in items]
    workers = jobs or min(32, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map() yields in submission order, which fixes the output ordering
        return list(pool.map(lambda it: fn(*it), items))


def run_sweep(config: SweepConfig, jobs: int | None = None,
              tol: Tolerances = DEFAULT_TOLERANCES) -> list[SweepRecord]:
    """One record per grid point, ``n_s`` outer and ``r`` inner."""
    points = [(n, float(r), config.phi, config.state_selector, tol)
              for n in config.n_s for r in config.r_grid()]
    records = _pool_map(compute_record, points, jobs)
    validate_records(records)
    return records


def validate_records(records: Iterable[SweepRecord], tol: float = ROW_TOL) -> None:
    """Re-check the uncertainty invariants of every emitted row.

    Raises:
        ToleranceError: a row has ``product < bound - tol`` or ``bound != (1 - d)/2``.
    """
    for rec in records:
        if rec.product < rec.bound - tol:
            raise ToleranceError(f"uncertainty product below bound: {rec}")
        if abs(rec.bound - (1.0 - rec.d) / 2.0) > tol:
            raise ToleranceError(f"bound differs from (1 - d)/2: {rec}")


def spectrum_rows(n_s: int, r: float, phi: float = 0.0) -> list[dict]:
    w = spectrum(bogoliubov_matrix(n_s, SqueezeParams(r, phi)))
    return [{"index": k, "alpha_re": float(a.real), "alpha_im": float(a.imag), "abs_alpha": float(abs(a))}
            for k, a in enumerate(w)]


FIGURE_COLUMNS = {
    "fig1": ("state", "n_s", "r", "state_index", "alpha_re", "var_chi", "bosonic_var_chi"),
    "fig2": ("state", "n_s", "r", "state_index", "alpha_re", "var_pi", "bosonic_var_pi"),
    "fig3": ("state", "n_s", "r", "state_index", "alpha_re", "product", "canonical_bound", "bound", "d"),
}


def _same_observables(a: SweepRecord, b: SweepRecord, tol: float = 1e-12) -> bool:
    pairs = ((a.var_chi, b.var_chi), (a.var_pi, b.var_pi), (a.d, b.d))
    return all(abs(x - y) <= tol * max(1.0, abs(x)) for x, y in pairs)


def figure_tables(n_s: Sequence[int], r_grid: Sequence[float], phi: float = 0.0,
                  selector="last", jobs: int | None = None) -> dict[str, list[dict]]:
    """Rows for the three figure files.

    With the default ``"last"`` selector the opposite extreme (``"first"``) is also
    computed; its rows are emitted, labelled, only where its observables differ.
    """
    n_list = [n_s] if isinstance(n_s, (int, np.integer)) else list(n_s)
    points = [(int(n), float(r)) for n in n_list for r in r_grid]
    primary = _pool_map(compute_record, [(n, r, phi, selector) for n, r in points], jobs)
    validate_records(primary)
    labelled = [(str(selector), rec) for rec in primary]
    if selector == "last":
        other = _pool_map(compute_record, [(n, r, phi, "first") for n, r in points], jobs)
        validate_records(other)
        labelled += [("first", b) for a, b in zip(primary, other) if not _same_observables(a, b)]

    tables: dict[str, list[dict]] = {name: [] for name in FIGURE_COLUMNS}
    for label, rec in labelled:
        base = {"state": label, "n_s": rec.n_s, "r": rec.r, "state_index": rec.state_index,
                "alpha_re": rec.alpha_re}
        tables["fig1"].append({**base, "var_chi": rec.var_chi, "bosonic_var_chi": rec.bosonic_var_chi})
        tables["fig2"].append({**base, "var_pi": rec.var_pi, "bosonic_var_pi": rec.bosonic_var_pi})
        tables["fig3"].append({**base, "product": rec.product, "canonical_bound": 0.5,
                               "bound": rec.bound, "d": rec.d})
    return tables


def write_figures(out_dir, n_s, r_grid, phi: float = 0.0, selector="last",
                  jobs: int | None = None) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, rows in figure_tables(n_s, r_grid, phi, selector, jobs).items():
        path = out_dir / f"{name}.csv"
        path.write_text(format_csv(rows, FIGURE_COLUMNS[name]))
        paths.append(path)
    return paths


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if v == 0.0:
            return "0"  # drop the sign of negative zero
        return format(v, ".17g")
    return str(v)


def format_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    """CSV with one ``#`` header line carrying the tool version and column names."""
    buf = io.StringIO()
    buf.write(f"# {TOOL} {__version__} columns: {','.join(columns)}\n")
    for row in rows:
        buf.write(",".join(_fmt(row[c]) for c in columns))
        buf.write("\n")
    return buf.getvalue()


def _json_value(v):
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if not math.isfinite(v):
            raise ToleranceError(f"non-finite value {v} cannot be emitted")
        return 0.0 if v == 0.0 else v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return int(v)
    return v


def format_json(rows: Sequence[dict], columns: Sequence[str]) -> str:
    doc = {
        "tool": TOOL,
        "version": __version__,
        "columns": list(columns),
        "records": [{c: _json_value(row[c]) for c in columns} for row in rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def records_as_rows(records: Iterable[SweepRecord]) -> list[dict]:
    return [asdict(r) for r in records]


def read_csv(path_or_text) -> list[dict]:
    """Parse a CSV written by :func:`format_csv` back into dictionaries."""
    text = Path(path_or_text).read_text() if isinstance(path_or_text, Path) else str(path_or_text)
    lines = text.splitlines()
    header = lines[0]
    if not header.startswith("#") or "columns:" not in header:
        raise DomainError("missing header comment")
    columns = header.split("columns:", 1)[1].strip().split(",")
    out = []
    for line in lines[1:]:
        if not line.strip():
            continue
        vals = line.split(",")
        row = {}
        for c, v in zip(columns, vals):
            try:
                row[c] = int(v) if c in ("n_s", "state_index", "index") else float(v)
            except ValueError:
                row[c] = v
        out.append(row)
    return out
