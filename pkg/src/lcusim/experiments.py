"""Named experiments: build models, run the algorithms, emit CSV rows.

Each experiment maps an ExperimentConfig to one or more CsvArtifact values.
Row order is fully determined by the config (chain lengths, then methods,
then grid index), so identical configs yield identical files regardless of
the thread count used for the independent per-(L, method) tasks.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .config import ExperimentConfig
from .gapamp import AmplifiedHamiltonian, build_amplified
from .greens import fermion_system, grid_normalize, ldos, lehmann_greens, resolvent_greens
from .gsp import SweepRecord, fidelity_sweep
from .models import (HubbardSpec, NormalizedHamiltonian, XxzSpec, build_hubbard,
                     build_qxxz, normalize_spectrum, trial_state)
from .resolvent import certify, fit_schedule

SWEEP_HEADER = ("method", "model", "L", "gridIndex", "scheduleParam", "t_H",
                "infidelity_exactOp", "infidelity_lcu", "energyError_exactOp",
                "energyError_lcu", "successWeight")
RESOLVENT_HEADER = ("model", "L", "omega", "gamma", "epsPrime", "N_c",
                    "errorNorm", "l1Alpha")
GREENS_HEADER = ("model", "L", "j", "jprime", "omega", "gamma", "mode",
                 "reG", "imG", "ldos", "ldosNormalized")
GAPS_HEADER = ("model", "L", "deltaS", "gamma")


@dataclass(frozen=True)
class CsvArtifact:
    """One output file: basename, header, and fully formatted-ready rows."""

    name: str
    header: Sequence[str]
    rows: list[tuple]


def _map_tasks(fn: Callable, tasks: Sequence, threads: int) -> list:
    if threads <= 1 or len(tasks) <= 1:
        return [fn(task) for task in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, tasks))


def _hubbard_normalized(cfg: ExperimentConfig, sites: int) -> tuple[NormalizedHamiltonian, np.ndarray, float]:
    spec = HubbardSpec(sites=sites, hopping=cfg.hopping,
                       interaction=cfg.interaction, mu=cfg.mu)
    system = normalize_spectrum(build_hubbard(spec))
    psi, gamma = trial_state(system, cfg.trial, sites=sites)
    return system, psi, gamma


def _xxz_normalized(cfg: ExperimentConfig, sites: int) -> tuple[NormalizedHamiltonian, np.ndarray, float, list[np.ndarray]]:
    ham, terms = build_qxxz(XxzSpec(sites=sites, q=cfg.q))
    system = normalize_spectrum(ham)
    psi, gamma = trial_state(system, cfg.trial, sites=sites)
    return system, psi, gamma, terms


def _sweep_rows(model: str, sites: int, records: Iterable[SweepRecord]) -> list[tuple]:
    return [(rec.method, model, sites, rec.grid_index, rec.schedule_param,
             rec.t_hamiltonian, rec.infidelity_exact, rec.infidelity_lcu,
             rec.energy_error_exact, rec.energy_error_lcu, rec.success_weight)
            for rec in records]


def _run_sweeps(cfg: ExperimentConfig, threads: int, model: str) -> tuple[list[tuple], list[tuple]]:
    """Sweep rows plus per-L gap/overlap rows for a sweep-style experiment."""
    def one_length(sites: int) -> tuple[list[tuple], tuple]:
        if model == "hubbard":
            system, psi, gamma = _hubbard_normalized(cfg, sites)
            terms: list[np.ndarray] = []
        else:
            system, psi, gamma, terms = _xxz_normalized(cfg, sites)
        amp: AmplifiedHamiltonian | None = None
        rows: list[tuple] = []
        for method in cfg.methods:
            if method == "hs+gapamp" and amp is None:
                amp = build_amplified(terms, scale=system.scale)
            records = fidelity_sweep(system, psi, method, cfg.eps,
                                     amp=amp if method == "hs+gapamp" else None,
                                     points=cfg.points)
            rows.extend(_sweep_rows(model, sites, records))
        return rows, (model, sites, system.gap, gamma)

    results = _map_tasks(one_length, cfg.sites, threads)
    sweep_rows = [row for rows, _ in results for row in rows]
    gap_rows = [gap for _, gap in results]
    return sweep_rows, gap_rows


def _run_certify(cfg: ExperimentConfig, threads: int) -> list[tuple]:
    omegas = np.linspace(cfg.omega_min, cfg.omega_max, cfg.omega_count)
    sched = fit_schedule(cfg.broadening, cfg.eps_prime, norm_h=1.0)

    def one_length(sites: int) -> list[tuple]:
        system, _, _ = _hubbard_normalized(cfg, sites)
        return [("hubbard", sites, rec.omega, cfg.broadening, cfg.eps_prime,
                 rec.n_c, rec.error_norm, rec.l1)
                for rec in certify(system.eig, omegas, sched)]

    return [row for rows in _map_tasks(one_length, cfg.sites, threads) for row in rows]


def _run_ldos(cfg: ExperimentConfig, threads: int) -> list[tuple]:
    omegas = np.linspace(cfg.omega_min, cfg.omega_max, cfg.omega_count)

    def one_length(sites: int) -> list[tuple]:
        spec = HubbardSpec(sites=sites, hopping=cfg.hopping,
                           interaction=cfg.interaction, mu=cfg.mu)
        system = fermion_system(spec)
        reach = float(np.max(np.abs(system.eig.values - system.ground_energy)))
        rows: list[tuple] = []
        for mode in cfg.modes:
            if mode == "lehmann":
                series = lehmann_greens(system, cfg.site, cfg.site, omegas,
                                        cfg.broadening)
            elif mode == "resolvent-exact":
                series = resolvent_greens(system, cfg.site, cfg.site, omegas,
                                          cfg.broadening)
            else:
                sched = fit_schedule(cfg.broadening, cfg.eps_prime, norm_h=reach)
                series = resolvent_greens(system, cfg.site, cfg.site, omegas,
                                          cfg.broadening, lcu=sched)
            series.validate()
            density = ldos(series)
            normalized = grid_normalize(density)
            rows.extend(
                ("hubbard", sites, cfg.site, cfg.site, float(w), cfg.broadening,
                 mode, float(g.real), float(g.imag), float(d), float(dn))
                for w, g, d, dn in zip(omegas, series.values, density.values,
                                       normalized.values))
        return rows

    return [row for rows in _map_tasks(one_length, cfg.sites, threads) for row in rows]


def run_experiment(cfg: ExperimentConfig, threads: int = 1) -> list[CsvArtifact]:
    """Execute one configured experiment and return its CSV artifacts."""
    name = cfg.experiment
    if name == "gsp-hubbard":
        rows, _ = _run_sweeps(cfg, threads, "hubbard")
        return [CsvArtifact(f"{name}.csv", SWEEP_HEADER, rows)]
    if name == "gsp-xxz":
        rows, _ = _run_sweeps(cfg, threads, "xxz")
        return [CsvArtifact(f"{name}.csv", SWEEP_HEADER, rows)]
    if name == "gse-hubbard":
        rows, gaps = _run_sweeps(cfg, threads, "hubbard")
        return [CsvArtifact(f"{name}.csv", SWEEP_HEADER, rows),
                CsvArtifact(f"{name}-gaps.csv", GAPS_HEADER, gaps)]
    if name == "resolvent-certify":
        return [CsvArtifact(f"{name}.csv", RESOLVENT_HEADER, _run_certify(cfg, threads))]
    if name == "ldos-hubbard":
        return [CsvArtifact(f"{name}.csv", GREENS_HEADER, _run_ldos(cfg, threads))]
    raise ValueError(f"unknown experiment {name!r}")
