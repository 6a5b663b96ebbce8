"""Copula sampling and the Monte Carlo mean-squared-error study harness.

Sampling uses the conditional distribution method: u and w are independent
uniforms and v solves dC/du(u, v) = w, found by bisection using the analytic
partial dC/du = (C/u){A(t) - t A'(t)}. Studies draw replicates with
counter-derived seeds so results are bit-identical no matter how many worker
processes execute them.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Union

import numpy as np

from .inference import FitResult, OptimConfig, SampleSet, fit_cfg, fit_full, fit_sub
from .pickands import GenericPickands, PickandsPoly


class StudyError(RuntimeError):
    """Raised when more than 1% of a study's replicates fail."""


@dataclass(frozen=True)
class AsymmetricLogistic:
    """A(t) = (1-psi1) t + (1-psi2)(1-t) + [(psi1 t)^(1/a) + {psi2 (1-t)}^(1/a)]^a."""

    alpha: float
    psi1: float
    psi2: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError("alpha must lie in (0, 1]")
        if not (0.0 <= self.psi1 <= 1.0 and 0.0 <= self.psi2 <= 1.0):
            raise ValueError("psi1, psi2 must lie in [0, 1]")


@dataclass(frozen=True)
class SymmetricMixed:
    """A(t) = 1 - psi t + psi t^2."""

    psi: float

    def __post_init__(self):
        if not 0.0 <= self.psi <= 1.0:
            raise ValueError("psi must lie in [0, 1]")


@dataclass(frozen=True)
class PolynomialModel:
    """True Pickands function given directly as a validated polynomial."""

    pickands: PickandsPoly


ReferenceModel = Union[AsymmetricLogistic, SymmetricMixed, PolynomialModel]


def model_pickands(model: ReferenceModel) -> GenericPickands:
    """The model's Pickands function with analytic first and second derivative."""
    if isinstance(model, SymmetricMixed):
        psi = model.psi
        return GenericPickands(
            a=lambda t: 1.0 - psi * t + psi * t * t,
            da=lambda t: psi * (2.0 * t - 1.0),
            d2a=lambda t: np.full_like(np.asarray(t, dtype=float), 2.0 * psi),
            tag="mix",
        )
    if isinstance(model, PolynomialModel):
        p = model.pickands
        return GenericPickands(a=p.value, da=p.deriv, d2a=p.deriv2, tag="poly")
    if isinstance(model, AsymmetricLogistic):
        alpha, psi1, psi2 = model.alpha, model.psi1, model.psi2
        if alpha == 1.0 or psi1 == 0.0 or psi2 == 0.0:
            # the bracket collapses to a linear term and A is identically 1
            one = lambda t: np.ones_like(np.asarray(t, dtype=float))
            zero = lambda t: np.zeros_like(np.asarray(t, dtype=float))
            return GenericPickands(a=one, da=zero, d2a=zero, tag="alog")
        r = 1.0 / alpha
        c1, c2 = psi1**r, psi2**r

        def a(t):
            t = np.asarray(t, dtype=float)
            g = c1 * t**r + c2 * (1.0 - t) ** r
            return (1.0 - psi1) * t + (1.0 - psi2) * (1.0 - t) + g**alpha

        def da(t):
            t = np.asarray(t, dtype=float)
            g = c1 * t**r + c2 * (1.0 - t) ** r
            dg = r * (c1 * t ** (r - 1.0) - c2 * (1.0 - t) ** (r - 1.0))
            return (psi2 - psi1) + alpha * g ** (alpha - 1.0) * dg

        def d2a(t):
            t = np.asarray(t, dtype=float)
            g = c1 * t**r + c2 * (1.0 - t) ** r
            dg = r * (c1 * t ** (r - 1.0) - c2 * (1.0 - t) ** (r - 1.0))
            d2g = r * (r - 1.0) * (c1 * t ** (r - 2.0) + c2 * (1.0 - t) ** (r - 2.0))
            return alpha * (alpha - 1.0) * g ** (alpha - 2.0) * dg**2 + alpha * g ** (alpha - 1.0) * d2g

        return GenericPickands(a=a, da=da, d2a=d2a, tag="alog")
    raise TypeError(f"unknown reference model {model!r}")


def split_seed(master: int, *key: int) -> int:
    """Derive an independent 64-bit child seed from (master, key...)."""
    ss = np.random.SeedSequence(entropy=master, spawn_key=tuple(key))
    return int(ss.generate_state(1, np.uint64)[0])


def model_to_json(model: ReferenceModel) -> dict:
    """Serialize a reference model to the CLI's model JSON schema."""
    if isinstance(model, AsymmetricLogistic):
        return {"model": "alog", "alpha": model.alpha, "psi1": model.psi1, "psi2": model.psi2}
    if isinstance(model, SymmetricMixed):
        return {"model": "mix", "psi": model.psi}
    if isinstance(model, PolynomialModel):
        from .bernstein import poly_to_json

        return {"model": "poly", "pickands": poly_to_json(model.pickands.poly)}
    raise TypeError(f"unknown reference model {model!r}")


def model_from_json(obj: dict) -> ReferenceModel:
    """Parse the model JSON schema: alog | mix | poly."""
    kind = obj.get("model")
    if kind == "alog":
        return AsymmetricLogistic(float(obj["alpha"]), float(obj["psi1"]), float(obj["psi2"]))
    if kind == "mix":
        return SymmetricMixed(float(obj["psi"]))
    if kind == "poly":
        from .bernstein import PowerPoly, poly_from_json, power_to_bernstein

        poly = poly_from_json(obj["pickands"])
        if isinstance(poly, PowerPoly):
            poly = power_to_bernstein(poly)
        return PolynomialModel(PickandsPoly(poly))
    raise ValueError(f"model JSON: unknown model kind {kind!r}")


def sample_copula(model: ReferenceModel, n: int, seed: int) -> SampleSet:
    """Draw n pairs with uniform margins and copula C_A by conditional inversion.

    v solves dC/du(u, v) = w by 80 bisection steps on (1e-14, 1 - 1e-14);
    deterministic given the seed.
    """
    A = model_pickands(model)
    rng = np.random.default_rng(seed)
    u = np.clip(rng.random(n), 1e-16, 1.0 - 1e-16)
    w = rng.random(n)
    logu = np.log(u)
    lo = np.full(n, 1e-14)
    hi = np.full(n, 1.0 - 1e-14)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        logm = np.log(mid)
        s = logu + logm
        t = logm / s
        a = A.value(t)
        d1 = A.deriv(t)
        cond = np.exp(s * a - logu) * (a - t * d1)
        go_left = cond >= w
        hi = np.where(go_left, mid, hi)
        lo = np.where(go_left, lo, mid)
    return SampleSet(u, 0.5 * (lo + hi))


@dataclass(frozen=True)
class StudyConfig:
    """One Monte Carlo experiment: model, sizes, estimators, seed, grid."""

    model: ReferenceModel
    n: int
    replicates: int
    m: int
    estimators: tuple[str, ...] = ("full", "sub", "cfg")
    seed: int = 0
    grid: int = 101
    optim: OptimConfig | None = None
    ranks: bool = False  # fit on midrank pseudo-observations instead of true margins

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if self.n < 2:
            raise ValueError("n must be >= 2")
        bad = set(self.estimators) - {"full", "sub", "cfg"}
        if bad or not self.estimators:
            raise ValueError(f"estimators must be a nonempty subset of full/sub/cfg, got {bad}")
        if self.grid < 2:
            raise ValueError("grid must be >= 2")


@dataclass(frozen=True, eq=False)
class StudyReport:
    """Per-estimator mse/variance/bias^2 curves plus replicate diagnostics.

    mse = variance + bias^2 holds per grid point over the included
    replicates. runtime_seconds is wall time and is excluded from payload()
    so that reports from equal configurations compare bit-identical.
    """

    abscissae: np.ndarray
    truth: np.ndarray
    mse: dict[str, np.ndarray]
    variance: dict[str, np.ndarray]
    bias_sq: dict[str, np.ndarray]
    logliks: dict[str, np.ndarray]
    excluded: dict[str, int]
    failures: dict[str, list[tuple[int, str]]]
    runtime_seconds: float

    def payload(self) -> dict:
        """Deterministic content (no wall time), as plain JSON-able data.

        NaN logliks (the CFG estimator has no likelihood) become None so the
        payload is valid JSON and compares equal across identical runs.
        """
        return {
            "abscissae": self.abscissae.tolist(),
            "truth": self.truth.tolist(),
            "mse": {k: v.tolist() for k, v in self.mse.items()},
            "variance": {k: v.tolist() for k, v in self.variance.items()},
            "bias_sq": {k: v.tolist() for k, v in self.bias_sq.items()},
            "logliks": {k: [None if np.isnan(x) else float(x) for x in v]
                        for k, v in self.logliks.items()},
            "excluded": dict(self.excluded),
            "failures": {k: list(map(list, v)) for k, v in self.failures.items()},
        }


def _fit_one(est: str, sample: SampleSet, config: StudyConfig, rep: int) -> FitResult:
    base = config.optim if config.optim is not None else OptimConfig()
    if est == "full":
        return fit_full(sample, config.m, replace(base, seed=split_seed(config.seed, rep, 1)))
    if est == "sub":
        return fit_sub(sample, config.m, replace(base, seed=split_seed(config.seed, rep, 2)))
    return fit_cfg(sample)


def _study_replicate(args: tuple[StudyConfig, int]) -> dict:
    config, rep = args
    tgrid = np.linspace(0.0, 1.0, config.grid)
    sample = sample_copula(config.model, config.n, split_seed(config.seed, rep, 0))
    if config.ranks:
        sample = SampleSet.from_arrays(sample.u, sample.v, ranks=True)
    out: dict = {}
    for est in config.estimators:
        try:
            fit = _fit_one(est, sample, config, rep)
            out[est] = {"curve": np.asarray(fit.estimate.value(tgrid)),
                        "loglik": fit.loglik, "error": None}
        except Exception as exc:  # recorded, never silently dropped
            out[est] = {"curve": None, "loglik": float("nan"), "error": f"{type(exc).__name__}: {exc}"}
    return out


def _resolve_threads(threads: int | None) -> int:
    if threads is not None:
        return max(1, threads)
    env = os.environ.get("PICKPOLY_THREADS", "").strip()
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_study(config: StudyConfig, threads: int | None = None) -> StudyReport:
    """Run the Monte Carlo study; deterministic given (config, seed).

    Replicates draw their sample and optimizer seeds from (seed, replicate)
    so any execution order gives the same report. Failed replicates are
    excluded per estimator with a count; more than 1% failures raise
    StudyError.
    """
    t0 = time.perf_counter()
    nthreads = _resolve_threads(threads)
    tasks = [(config, r) for r in range(config.replicates)]
    if nthreads <= 1 or config.replicates == 1:
        results = [_study_replicate(t) for t in tasks]
    else:
        chunk = max(1, config.replicates // (nthreads * 8))
        with ProcessPoolExecutor(max_workers=nthreads) as pool:
            results = list(pool.map(_study_replicate, tasks, chunksize=chunk))

    tgrid = np.linspace(0.0, 1.0, config.grid)
    truth = model_pickands(config.model).value(tgrid)
    mse: dict[str, np.ndarray] = {}
    variance: dict[str, np.ndarray] = {}
    bias_sq: dict[str, np.ndarray] = {}
    logliks: dict[str, np.ndarray] = {}
    excluded: dict[str, int] = {}
    failures: dict[str, list[tuple[int, str]]] = {}
    for est in config.estimators:
        fails = [(r, results[r][est]["error"]) for r in range(config.replicates)
                 if results[r][est]["error"] is not None]
        if len(fails) > 0.01 * config.replicates:
            raise StudyError(f"estimator {est}: {len(fails)} of {config.replicates} replicates failed: {fails[:3]}")
        curves = np.stack([results[r][est]["curve"] for r in range(config.replicates)
                           if results[r][est]["error"] is None])
        mean_curve = curves.mean(axis=0)
        mse[est] = ((curves - truth) ** 2).mean(axis=0)
        variance[est] = ((curves - mean_curve) ** 2).mean(axis=0)
        bias_sq[est] = (mean_curve - truth) ** 2
        logliks[est] = np.array([results[r][est]["loglik"] for r in range(config.replicates)])
        excluded[est] = len(fails)
        failures[est] = fails
    return StudyReport(
        abscissae=tgrid,
        truth=truth,
        mse=mse,
        variance=variance,
        bias_sq=bias_sq,
        logliks=logliks,
        excluded=excluded,
        failures=failures,
        runtime_seconds=time.perf_counter() - t0,
    )
