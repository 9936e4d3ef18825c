"""Sweep a beta grid and report every route at every point.

One record per beta: the thermodynamic routes, the mmse-integral route,
the closed form when one exists, plus per-point diagnostics (the max
free-energy identity residual over an output grid, the derivative/mmse
residual).  Reports serialize to JSON and to CSV with a fixed column set,
and rerunning with the same config gives identical numbers whether the
grid is computed serially or across processes.
"""
from __future__ import annotations

import csv
import json
import math
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import boltzmann, estimation, thermo
from ._version import __version__
from .config import RunConfig
from .distributions import InputDistribution, from_dict as prior_from_dict, prior_mean, prior_variance
from .errors import ConfigError, NonEquiprobablePriorWarning
from .quadrature import QuadratureConfig
from .reference import closed_form_mi

ROUTE_TOKENS = ("thermo", "classical", "gsv")

CSV_COLUMNS = (
    "beta",
    "snr_db",
    "mi_generalized",
    "mi_classical",
    "mi_gsv",
    "mi_closed",
    "mmse",
    "gsv_residual",
)

# Output grid for the per-record free-energy identity residual: centered
# on the output mean and wide enough to cover the mixture at any beta.
IDENTITY_GRID_POINTS = 9
IDENTITY_GRID_SIGMAS = 4.0


def parse_routes(spec: str | None, dist: InputDistribution) -> tuple[str, ...]:
    """Turn a comma-separated route list into a validated tuple.

    None selects the defaults: the generalized route and the mmse
    integral always, and the classical route only when the prior is
    equiprobable so its heat integrand actually converges.
    """
    if spec is None:
        routes = ["thermo", "gsv"]
        if not boltzmann.beta_dependent_energy(dist):
            routes.insert(1, "classical")
        return tuple(routes)
    tokens = [t.strip() for t in spec.split(",") if t.strip()]
    if not tokens:
        raise ConfigError("routes list is empty")
    bad = sorted(set(tokens) - set(ROUTE_TOKENS))
    if bad:
        raise ConfigError(
            f"unknown route(s): {', '.join(bad)} (choose from {', '.join(ROUTE_TOKENS)})"
        )
    seen: list[str] = []
    for t in tokens:
        if t not in seen:
            seen.append(t)
    return tuple(sorted(seen, key=ROUTE_TOKENS.index))


@dataclass(frozen=True)
class SweepRecord:
    """All quantities computed at one beta; absent routes are None."""

    beta: float
    snr_db: float
    mi_thermo_generalized: float | None
    mi_thermo_classical: float | None
    mi_gsv: float | None
    mi_closed_form: float | None
    mmse: float | None
    gsv_residual: float | None
    identity_residual_max: float
    runtime_ms: float


@dataclass(frozen=True)
class SweepReport:
    """Header describing the run plus one record per grid point."""

    header: dict
    records: tuple[SweepRecord, ...]

    def to_dict(self) -> dict:
        return {"header": self.header, "records": [asdict(r) for r in self.records]}

    @classmethod
    def from_dict(cls, data: dict) -> "SweepReport":
        records = tuple(SweepRecord(**r) for r in data["records"])
        return cls(header=data["header"], records=records)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SweepReport":
        return cls.from_dict(json.loads(text))

    def write_json(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    def write_csv(self, path: str | Path) -> None:
        """Write the fixed-column CSV; missing routes become empty cells."""
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for r in self.records:
                cells = (
                    r.beta,
                    r.snr_db,
                    r.mi_thermo_generalized,
                    r.mi_thermo_classical,
                    r.mi_gsv,
                    r.mi_closed_form,
                    r.mmse,
                    r.gsv_residual,
                )
                writer.writerow("" if c is None else repr(float(c)) for c in cells)


def identity_residual_max(dist: InputDistribution, beta: float) -> float:
    """max_y |log Z + beta U - S| over a grid spanning the output density."""
    scale = math.sqrt(prior_variance(dist) + 1.0 / beta)
    ys = prior_mean(dist) + scale * np.linspace(
        -IDENTITY_GRID_SIGMAS, IDENTITY_GRID_SIGMAS, IDENTITY_GRID_POINTS
    )
    res = boltzmann.free_energy_identity_residual(dist, ys, beta)
    return float(np.max(np.abs(res)))


def compute_record(
    dist: InputDistribution,
    beta: float,
    cfg: QuadratureConfig,
    routes: tuple[str, ...],
) -> SweepRecord:
    """Evaluate every requested route at one beta.

    A truncated-divergence warning from the classical route is silenced
    here: asking for that route on a prior it cannot handle is a per-run
    decision, and the verify command is where the disagreement surfaces.
    """
    start = time.perf_counter()
    mi_gen = mi_cls = mi_g = mmse_val = residual = None
    if "thermo" in routes:
        mi_gen = thermo.mi_thermo_generalized(dist, beta, cfg).value_nats
    if "classical" in routes:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NonEquiprobablePriorWarning)
            mi_cls = thermo.mi_thermo_classical(dist, beta, cfg).value_nats
    if "gsv" in routes:
        mi_g = estimation.mi_gsv(dist, beta, cfg).value_nats
        mmse_val = estimation.mmse(dist, beta, cfg)
        if beta > cfg.fd_step:
            residual = estimation.gsv_check(dist, beta, cfg).residual
    closed = closed_form_mi(dist, beta, cfg)
    ident = identity_residual_max(dist, beta)
    elapsed_ms = 1000.0 * (time.perf_counter() - start)
    return SweepRecord(
        beta=float(beta),
        snr_db=10.0 * math.log10(beta),
        mi_thermo_generalized=mi_gen,
        mi_thermo_classical=mi_cls,
        mi_gsv=mi_g,
        mi_closed_form=closed,
        mmse=mmse_val,
        gsv_residual=residual,
        identity_residual_max=ident,
        runtime_ms=elapsed_ms,
    )


def _record_from_payload(payload: tuple) -> SweepRecord:
    prior_dict, beta, cfg, routes = payload
    return compute_record(prior_from_dict(prior_dict), beta, cfg, routes)


def run_sweep(
    config: RunConfig,
    routes: tuple[str, ...] | None = None,
    jobs: int = 1,
    reproducible: bool = False,
) -> SweepReport:
    """Compute a full report over the config's beta grid.

    jobs > 1 distributes grid points over processes; every point is an
    independent pure computation, so the records do not depend on how the
    work was split.  reproducible=True zeroes the per-record wall times,
    which are the only run-to-run varying field.
    """
    if jobs < 1:
        raise ConfigError(f"jobs must be >= 1, got {jobs!r}")
    chosen = parse_routes(None, config.prior) if routes is None else routes
    betas = config.grid.expand()
    if jobs == 1 or betas.size == 1:
        records = [compute_record(config.prior, float(b), config.quadrature, chosen) for b in betas]
    else:
        payloads = [
            (config.prior.to_dict(), float(b), config.quadrature, chosen) for b in betas
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_record_from_payload, payloads))
    if reproducible:
        records = [
            SweepRecord(**{**asdict(r), "runtime_ms": 0.0}) for r in records
        ]
    header = {
        "tool": "thermomi",
        "version": __version__,
        "prior": config.prior.to_dict(),
        "beta_grid": config.grid.to_dict(),
        "routes": list(chosen),
        "quadrature": asdict(config.quadrature),
        "oracle": {
            "mc_samples": config.oracle.mc_samples,
            "seed": config.oracle.rng_seed,
            "hermite_nodes": config.oracle.hermite_nodes,
        },
    }
    return SweepReport(header=header, records=tuple(records))
