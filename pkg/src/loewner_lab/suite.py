"""Randomized verification campaigns, counterexample hunting, tightness
probing, and JSON reporting.

Reports are deterministic functions of their configuration: trial seeds are
derived from the master seed and the trial coordinates, aggregation is
sequential, and timing is kept out of the serialized payload so that two
runs of the same configuration produce byte-identical files.
"""

from __future__ import annotations

import dataclasses
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import certificates as certs
from .certificates import (
    ALL_INEQUALITIES,
    AUDIT_INEQUALITIES,
    NON_AUDIT_INEQUALITIES,
    Certificate,
)
from .errors import LoewnerLabError
from .generate import (
    SplitMix64,
    derive_seed,
    fnv1a64,
    random_orthogonal,
    _bounded_pair,
    _sandwich_pair,
    _spd,
)
from .kernels import kernel_dominance, parse_function, parse_kernel, GEOMETRIC
from .maps import DEFAULT_MAP_SPECS, check_unital, parse_map
from .spectral import SymMatrix, parse_norm

TOOL_VERSION = "0.1.0"
SCHEMA_VERSION = 1

_DEFAULT_KERNELS = ("arithmetic", "geometric", "harmonic", "logarithmic", "heinz:0.25")
_DEFAULT_MONOTONE = ("power:0.5", "power:1", "log1p", "rational:1")
_DEFAULT_DECREASING = ("inv_power:1", "inv_power:0.5", "shifted_inverse:1")
_DEFAULT_CONVEX = ("square", "power:1.5")
_DEFAULT_NORMS = ("operator", "trace", "frobenius", "kyfan:2", "schatten:3")


@dataclass
class SuiteConfig:
    """Description of a randomized verification campaign."""

    inequalities: tuple = NON_AUDIT_INEQUALITIES
    dims: tuple = (2, 3, 4)
    trials: int = 50
    seed: int = 0
    tol_rel: float = 1e-9
    # Sandwich scalars: fixed when s/t given, otherwise sampled log-uniformly
    # from sandwich_range (sorted per trial).
    s: float | None = None
    t: float | None = None
    sandwich_range: tuple = (0.25, 4.0)
    # Two-sided bounds: fixed when m/M given, otherwise sampled with a
    # moderate spread to keep the means well conditioned.
    m: float | None = None
    M: float | None = None
    kernels: tuple = _DEFAULT_KERNELS
    monotone_fns: tuple = _DEFAULT_MONOTONE
    decreasing_fns: tuple = _DEFAULT_DECREASING
    convex_fns: tuple = _DEFAULT_CONVEX
    maps: tuple = DEFAULT_MAP_SPECS
    norms: tuple = _DEFAULT_NORMS
    constant_multiplier: float = 1.0
    max_recorded_violations: int = 10
    probe_refine_steps: int = 200

    def __post_init__(self):
        self.inequalities = _resolve_inequalities(self.inequalities)
        self.dims = tuple(int(d) for d in self.dims)
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if any(d < 1 or d > 16 for d in self.dims):
            raise ValueError("dims must stay within [1, 16]")
        if self.constant_multiplier <= 0:
            raise ValueError("constant multiplier must be positive")
        if (self.s is None) != (self.t is None):
            raise ValueError("provide both s and t, or neither")
        if (self.m is None) != (self.M is None):
            raise ValueError("provide both m and M, or neither")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def _resolve_inequalities(spec) -> tuple:
    if isinstance(spec, str):
        spec = (spec,)
    out: list[str] = []
    for item in spec:
        if item == "all":
            out.extend(ALL_INEQUALITIES)
        elif item == "all-non-audit":
            out.extend(NON_AUDIT_INEQUALITIES)
        elif item in ALL_INEQUALITIES:
            out.append(item)
        else:
            raise ValueError(f"unknown inequality id {item!r}")
    seen, ordered = set(), []
    for item in out:
        if item not in seen:
            seen.add(item)
            ordered.append(item)
    return tuple(ordered)


def config_from_dict(data: dict) -> SuiteConfig:
    kwargs = dict(data)
    for key in (
        "inequalities",
        "dims",
        "sandwich_range",
        "kernels",
        "monotone_fns",
        "decreasing_fns",
        "convex_fns",
        "maps",
        "norms",
    ):
        if key in kwargs and kwargs[key] is not None:
            kwargs[key] = tuple(kwargs[key])
    return SuiteConfig(**kwargs)


@dataclass
class _DimPools:
    maps: list
    unital_maps: list
    kernels: list
    tau_ge_sharp: list
    sigma_le_sharp: list
    f_monotone: list
    g_decreasing: list
    g_convex: list
    norms: list


def _build_pools(config: SuiteConfig, dim: int) -> _DimPools:
    rng = SplitMix64(derive_seed(config.seed, fnv1a64("map-pool"), dim))
    maps = [parse_map(spec, dim, rng) for spec in config.maps]
    unital = [mp for mp in maps if check_unital(mp).is_unital]
    kernels = [parse_kernel(spec) for spec in config.kernels]
    tau_ge = [k for k in kernels if kernel_dominance(GEOMETRIC, k).holds]
    sigma_le = [k for k in kernels if kernel_dominance(k, GEOMETRIC).holds]
    norms = []
    for spec in config.norms:
        kind = parse_norm(spec)
        if kind.variant == "kyfan" and int(kind.param) > dim:
            kind = parse_norm(f"kyfan:{dim}")
        norms.append(kind)
    return _DimPools(
        maps=maps,
        unital_maps=unital,
        kernels=kernels,
        tau_ge_sharp=tau_ge or [GEOMETRIC],
        sigma_le_sharp=sigma_le or [GEOMETRIC],
        f_monotone=[parse_function(spec) for spec in config.monotone_fns],
        g_decreasing=[parse_function(spec) for spec in config.decreasing_fns],
        g_convex=[parse_function(spec) for spec in config.convex_fns],
        norms=norms,
    )


def _pick(pool, index: int):
    return pool[index % len(pool)]


def _sample_st(rng: SplitMix64, config: SuiteConfig, force_st_ge_1: bool = False):
    if config.s is not None and config.t is not None:
        s, t = float(config.s), float(config.t)
    else:
        lo, hi = config.sandwich_range
        a = rng.log_uniform(lo, hi)
        b = rng.log_uniform(lo, hi)
        s, t = (a, b) if a <= b else (b, a)
    if force_st_ge_1 and s * t < 1.0:
        s, t = 1.0 / t, 1.0 / s
    return s, t


def _sample_mM(rng: SplitMix64, config: SuiteConfig):
    if config.m is not None and config.M is not None:
        return float(config.m), float(config.M)
    m = rng.log_uniform(0.5, 2.0)
    return m, m * rng.log_uniform(1.5, 8.0)


def _instance_blob(**matrices) -> dict:
    return {
        name: {"dim": mat.dim, "data": [float(x) for x in mat.data.ravel()]}
        for name, mat in matrices.items()
    }


def _corner_sandwich(dim: int, s: float, t: float):
    """Commuting boundary instance: anti-aligned spectra hitting s and t."""
    a_diag = [1.0 if j % 2 == 0 else 4.0 for j in range(dim)]
    c_diag = [t if j % 2 == 0 else s for j in range(dim)]
    A = SymMatrix(np.diag(a_diag))
    B = SymMatrix(np.diag([a * c for a, c in zip(a_diag, c_diag)]))
    return A, B


def _corner_bounded(dim: int, m: float, M: float):
    A = SymMatrix(np.diag([m if j % 2 == 0 else M for j in range(dim)]))
    B = SymMatrix(np.diag([M if j % 2 == 0 else m for j in range(dim)]))
    return A, B


def _evaluate_trial(
    ineq: str, dim: int, trial: int, config: SuiteConfig, pools: _DimPools
) -> tuple[list[Certificate], dict]:
    """Evaluate one seeded trial; returns (certificates, instance blob).

    Catalog entries rotate with the trial index so that ``trials`` at least
    as large as the pool sizes guarantees full coverage.
    """
    rng = SplitMix64(derive_seed(config.seed, fnv1a64(ineq), dim, trial))
    mult = config.constant_multiplier
    tol = config.tol_rel
    i = trial

    if ineq == "ando":
        A = _spd(rng, dim, 0.25, 4.0)
        B = _spd(rng, dim, 0.25, 4.0)
        cert = certs.ando_check(
            _pick(pools.maps, i), _pick(pools.kernels, i), A, B,
            constant_multiplier=mult, tol_rel=tol,
        )
        return [cert], _instance_blob(A=A, B=B)

    if ineq == "polya-szego":
        m, M = _sample_mM(rng, config)
        pair = _bounded_pair(rng, dim, m, M)
        cert = certs.check_polya_szego(
            _pick(pools.maps, i), pair.A, pair.B, m, M,
            constant_multiplier=mult, tol_rel=tol,
        )
        return [cert], _instance_blob(A=pair.A, B=pair.B)

    if ineq == "kantorovich-f":
        m, M = _sample_mM(rng, config)
        pair = _bounded_pair(rng, dim, m, M)
        cert = certs.check_kantorovich_f(
            _pick(pools.maps, i), _pick(pools.kernels, i), _pick(pools.kernels, i + 1),
            _pick(pools.f_monotone, i), pair.A, pair.B, m, M,
            constant_multiplier=mult, tol_rel=tol,
        )
        return [cert], _instance_blob(A=pair.A, B=pair.B)

    if ineq == "sandwich-lemma":
        s, t = _sample_st(rng, config)
        pair = _sandwich_pair(rng, dim, s, t)
        lower, upper = certs.check_sandwich_lemma(
            pair.A, pair.B, s, t, constant_multiplier=mult, tol_rel=tol
        )
        return [lower, upper], _instance_blob(A=pair.A, B=pair.B)

    if ineq == "alpha-scaling":
        alpha = rng.log_uniform(1.0, 8.0)
        fns = pools.f_monotone + pools.g_decreasing
        cert = certs.check_alpha_scaling(
            _pick(fns, i), alpha, constant_multiplier=mult, tol_rel=tol
        )
        return [cert], {}

    if ineq == "main-monotone":
        s, t = _sample_st(rng, config)
        pair = _sandwich_pair(rng, dim, s, t)
        cert = certs.check_main_monotone(
            _pick(pools.maps, i), _pick(pools.kernels, i), _pick(pools.kernels, i + 1),
            _pick(pools.f_monotone, i), pair.A, pair.B, s, t,
            constant_multiplier=mult, tol_rel=tol,
        )
        return [cert], _instance_blob(A=pair.A, B=pair.B)

    if ineq == "main-decreasing":
        s, t = _sample_st(rng, config)
        pair = _sandwich_pair(rng, dim, s, t)
        cert = certs.check_main_decreasing(
            _pick(pools.maps, i), _pick(pools.kernels, i), _pick(pools.kernels, i + 1),
            _pick(pools.g_decreasing, i), pair.A, pair.B, s, t,
            constant_multiplier=mult, tol_rel=tol,
        )
        return [cert], _instance_blob(A=pair.A, B=pair.B)

    if ineq in ("gruss-f", "gruss-g"):
        if not pools.unital_maps:
            raise ValueError(f"{ineq} needs at least one unital map in the pool")
        m, M = _sample_mM(rng, config)
        pair = _bounded_pair(rng, dim, m, M)
        family = "monotone" if ineq == "gruss-f" else "decreasing"
        fn = _pick(pools.f_monotone if family == "monotone" else pools.g_decreasing, i)
        cert = certs.check_gruss(
            _pick(pools.unital_maps, i), _pick(pools.kernels, i),
            _pick(pools.kernels, i + 1), fn, pair.A, pair.B, m, M, family,
            constant_multiplier=mult, tol_rel=tol,
        )
        return [cert], _instance_blob(A=pair.A, B=pair.B)

    if ineq == "squared":
        m, M = _sample_mM(rng, config)
        A = _spd(rng, dim, m, M)
        bump = _spd(rng, dim, 1e-3, max(1e-2, M - m))
        B = A + bump
        cert = certs.check_squared(A, B, m, M, constant_multiplier=mult, tol_rel=tol)
        return [cert], _instance_blob(A=A, B=B)

    if ineq in ("squared-consequence-f", "squared-consequence-g"):
        m, M = _sample_mM(rng, config)
        pair = _bounded_pair(rng, dim, m, M)
        pool = pools.f_monotone if ineq.endswith("-f") else pools.g_decreasing
        cert = certs.check_squared_consequences(
            _pick(pool, i), pair.A, pair.B, m, M, constant_multiplier=mult, tol_rel=tol
        )
        return [cert], _instance_blob(A=pair.A, B=pair.B)

    if ineq == "midpoint":
        s, t = _sample_st(rng, config)
        pair = _sandwich_pair(rng, dim, s, t)
        cert = certs.check_midpoint(pair.A, pair.B, s, t, constant_multiplier=mult, tol_rel=tol)
        return [cert], _instance_blob(A=pair.A, B=pair.B)

    if ineq == "diaz-metcalf":
        s, t = _sample_st(rng, config)
        pair = _sandwich_pair(rng, dim, s, t)
        cert = certs.check_diaz_metcalf(
            _pick(pools.maps, i), _pick(pools.kernels, i), _pick(pools.kernels, i + 1),
            _pick(pools.f_monotone, i), pair.A, pair.B, s, t,
            constant_multiplier=mult, tol_rel=tol,
        )
        return [cert], _instance_blob(A=pair.A, B=pair.B)

    if ineq == "klamkin-mclenaghan":
        s, t = _sample_st(rng, config)
        pair = _sandwich_pair(rng, dim, s, t)
        cert = certs.check_klamkin_mclenaghan(
            _pick(pools.maps, i), _pick(pools.kernels, i), _pick(pools.f_monotone, i),
            pair.A, pair.B, s, t, constant_multiplier=mult, tol_rel=tol,
        )
        return [cert], _instance_blob(A=pair.A, B=pair.B)

    if ineq == "specht-bound":
        if config.m is not None and config.M is not None:
            m, M = float(config.m), float(config.M)
        else:
            m = 1.0
            M = m * rng.log_uniform(1.0 + 1e-6, 100.0)
        cert = certs.check_specht_bound(m, M, constant_multiplier=mult, tol_rel=tol)
        return [cert], {}

    if ineq == "strengthened-remark":
        s, t = _sample_st(rng, config, force_st_ge_1=True)
        pair = _sandwich_pair(rng, dim, s, t)
        cert = certs.check_strengthened_remark(
            _pick(pools.maps, i), _pick(pools.kernels, i), _pick(pools.kernels, i + 1),
            _pick(pools.f_monotone, i), pair.A, pair.B, s, t,
            constant_multiplier=mult, tol_rel=tol,
        )
        return [cert], _instance_blob(A=pair.A, B=pair.B)

    # The audit family pins its known boundary instance as trial 0 so its
    # documented violation is reported (never asserted) by every campaign
    # that covers the matching (s, t) cell.
    if ineq in ("norm-ratio-tau", "norm-ratio-sharp", "norm-ratio-power4"):
        s, t = _sample_st(rng, config)
        if trial == 0:
            A, B = _corner_sandwich(dim, s, t)
        else:
            pair = _sandwich_pair(rng, dim, s, t)
            A, B = pair.A, pair.B
        mode, kernel_pool = {
            "norm-ratio-tau": ("tau_side", pools.tau_ge_sharp),
            "norm-ratio-sharp": ("sharp_side", pools.sigma_le_sharp),
            "norm-ratio-power4": ("power4", pools.kernels),
        }[ineq]
        cert = certs.check_norm_ratio(
            mode, _pick(kernel_pool, i), _pick(pools.g_convex, i),
            A, B, s=s, t=t, norm=_pick(pools.norms, i),
            constant_multiplier=mult, tol_rel=tol,
        )
        return [cert], _instance_blob(A=A, B=B)

    if ineq == "norm-ratio-eq15":
        m, M = _sample_mM(rng, config)
        if trial == 0:
            A, B = _corner_bounded(dim, m, M)
        else:
            pair = _bounded_pair(rng, dim, m, M)
            A, B = pair.A, pair.B
        cert = certs.check_norm_ratio(
            "eq15", GEOMETRIC, _pick(pools.g_convex, i),
            A, B, m=m, M=M, norm=_pick(pools.norms, i),
            constant_multiplier=mult, tol_rel=tol,
        )
        return [cert], _instance_blob(A=A, B=B)

    raise ValueError(f"unknown inequality id {ineq!r}")


@dataclass
class InequalityStats:
    trials: int = 0
    holds_count: int = 0
    violations: int = 0
    min_slack: float | None = None
    max_ratio: float | None = None
    violating_instances: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "holds_count": self.holds_count,
            "violations": self.violations,
            "min_slack": self.min_slack,
            "max_ratio": self.max_ratio,
            "violating_instances": self.violating_instances,
        }


@dataclass
class Report:
    """Machine-readable result of a campaign.

    ``wall_time_s`` is measured but deliberately excluded from the
    serialized payload so reports stay byte-identical across repeat runs.
    """

    config: dict
    results: dict
    audit_results: dict
    probe: dict | None = None
    tool_version: str = TOOL_VERSION
    schema_version: int = SCHEMA_VERSION
    wall_time_s: float = 0.0

    def to_payload(self) -> dict:
        body = {
            "schema_version": self.schema_version,
            "tool_version": self.tool_version,
            "config": self.config,
            "results": self.results,
            "audit_results": self.audit_results,
        }
        if self.probe is not None:
            body["probe"] = self.probe
        return {"loewner_lab_report": body}

    @property
    def all_non_audit_hold(self) -> bool:
        return all(stats["violations"] == 0 for stats in self.results.values())

    def to_json(self) -> str:
        return json.dumps(self.to_payload(), indent=2, sort_keys=True) + "\n"


def run_suite(config: SuiteConfig, _trace: list | None = None) -> Report:
    """Evaluate every requested certificate on seeded generated instances."""
    start = time.perf_counter()
    results: dict = {}
    audit_results: dict = {}
    pools_by_dim = {dim: _build_pools(config, dim) for dim in config.dims}
    for ineq in config.inequalities:
        stats = InequalityStats()
        for dim in config.dims:
            pools = pools_by_dim[dim]
            for trial in range(config.trials):
                certificates, blob = _evaluate_trial(ineq, dim, trial, config, pools)
                if _trace is not None:
                    _trace.append((ineq, dim, trial, [c.params for c in certificates]))
                stats.trials += 1
                trial_holds = all(c.holds for c in certificates)
                trial_slack = min(c.slack for c in certificates)
                trial_ratio = max(c.ratio for c in certificates)
                if stats.min_slack is None or trial_slack < stats.min_slack:
                    stats.min_slack = trial_slack
                if math.isfinite(trial_ratio) and (
                    stats.max_ratio is None or trial_ratio > stats.max_ratio
                ):
                    stats.max_ratio = trial_ratio
                if trial_holds:
                    stats.holds_count += 1
                else:
                    stats.violations += 1
                    if len(stats.violating_instances) < config.max_recorded_violations:
                        stats.violating_instances.append(
                            {
                                "inequality": ineq,
                                "dim": dim,
                                "trial": trial,
                                "trial_seed": derive_seed(
                                    config.seed, fnv1a64(ineq), dim, trial
                                ),
                                "slack": trial_slack,
                                "ratio": trial_ratio if math.isfinite(trial_ratio) else None,
                                "certificates": [c.to_json() for c in certificates],
                                "instance": blob,
                            }
                        )
        bucket = audit_results if ineq in AUDIT_INEQUALITIES else results
        entry = stats.to_dict()
        if ineq in AUDIT_INEQUALITIES:
            entry["violation_rate"] = stats.violations / stats.trials
        bucket[ineq] = entry
    report = Report(
        config=config.to_dict(),
        results=results,
        audit_results=audit_results,
    )
    report.wall_time_s = time.perf_counter() - start
    return report


def hunt_counterexamples(config: SuiteConfig, constant_override: float) -> Report:
    """Re-run a campaign with every constant scaled by a positive multiplier."""
    if constant_override <= 0:
        raise ValueError("constant override must be positive")
    hunted = dataclasses.replace(config, constant_multiplier=constant_override)
    return run_suite(hunted)


_BOUNDED_FAMILY = {
    "polya-szego",
    "kantorovich-f",
    "gruss-f",
    "gruss-g",
    "squared-consequence-f",
    "squared-consequence-g",
    "norm-ratio-eq15",
}
_SANDWICH_FAMILY = {
    "sandwich-lemma",
    "main-monotone",
    "main-decreasing",
    "midpoint",
    "diaz-metcalf",
    "klamkin-mclenaghan",
    "strengthened-remark",
    "norm-ratio-tau",
    "norm-ratio-sharp",
    "norm-ratio-power4",
}


class _ProbeInstance:
    """Mutable eigen-coordinates of an instance, for hill climbing."""

    def __init__(self, q_a, lam_a, q_c, lam_c, lo, hi, family):
        self.q_a = q_a
        self.lam_a = lam_a
        self.q_c = q_c
        self.lam_c = lam_c
        self.lo = lo  # clip range for lam_c
        self.hi = hi
        self.family = family

    def matrices(self) -> tuple[SymMatrix, SymMatrix]:
        A = SymMatrix(self.q_a.T @ np.diag(self.lam_a) @ self.q_a)
        if self.family == "bounded":
            B = SymMatrix(self.q_c.T @ np.diag(self.lam_c) @ self.q_c)
            return A, B
        C = SymMatrix(self.q_c.T @ np.diag(self.lam_c) @ self.q_c)
        from .spectral import decompose

        dec = decompose(A)
        root = (dec.basis * np.sqrt(dec.eigenvalues)) @ dec.basis.T
        return A, SymMatrix(root @ C.data @ root)

    def copy(self) -> "_ProbeInstance":
        return _ProbeInstance(
            self.q_a.copy(), self.lam_a.copy(), self.q_c.copy(), self.lam_c.copy(),
            self.lo, self.hi, self.family,
        )

    def perturb(self, rng: SplitMix64) -> "_ProbeInstance":
        out = self.copy()
        dim = out.lam_a.size
        move = rng.choice_index(4)
        if move == 0:
            j = rng.choice_index(dim)
            out.lam_a[j] = float(np.clip(out.lam_a[j] + 0.2 * (self.hi - self.lo) * rng.normal(),
                                         self.lo, self.hi))
        elif move == 1:
            j = rng.choice_index(dim)
            out.lam_c[j] = float(np.clip(out.lam_c[j] + 0.2 * (self.hi - self.lo) * rng.normal(),
                                         self.lo, self.hi))
        elif move == 2:
            out.q_a = _rotate(out.q_a, rng)
        else:
            out.q_c = _rotate(out.q_c, rng)
        return out


def _rotate(q: np.ndarray, rng: SplitMix64) -> np.ndarray:
    dim = q.shape[0]
    if dim == 1:
        return q
    i = rng.choice_index(dim)
    j = (i + 1 + rng.choice_index(dim - 1)) % dim
    theta = 0.2 * rng.normal()
    rot = np.eye(dim)
    c, s = math.cos(theta), math.sin(theta)
    rot[i, i] = c
    rot[j, j] = c
    rot[i, j] = s
    rot[j, i] = -s
    return q @ rot


def _probe_starts(ineq: str, dim: int, rng: SplitMix64, lo: float, hi: float, n_random: int):
    """Corner instances (extremal, anti-aligned spectra) plus random starts."""
    family = "bounded" if ineq in _BOUNDED_FAMILY else "sandwich"
    starts = []
    pattern_lo = np.array([lo if j % 2 == 0 else hi for j in range(dim)])
    pattern_hi = np.array([hi if j % 2 == 0 else lo for j in range(dim)])
    eye = np.eye(dim)
    if family == "bounded":
        starts.append(_ProbeInstance(eye.copy(), pattern_lo.copy(), eye.copy(),
                                     pattern_hi.copy(), lo, hi, family))
        q = random_orthogonal(dim, rng)
        starts.append(_ProbeInstance(q.copy(), pattern_lo.copy(), q.copy(),
                                     pattern_hi.copy(), lo, hi, family))
    else:
        # C carries the sandwich spectrum; its corner alternates t and s.
        corner_c = np.array([hi if j % 2 == 0 else lo for j in range(dim)])
        a_spec = np.array([0.5 + 0.25 * (j % 3) for j in range(dim)])
        starts.append(_ProbeInstance(eye.copy(), a_spec.copy(), eye.copy(),
                                     corner_c.copy(), lo, hi, family))
        q = random_orthogonal(dim, rng)
        starts.append(_ProbeInstance(q.copy(), a_spec.copy(), eye.copy(),
                                     corner_c.copy(), lo, hi, family))
    for _ in range(n_random):
        if family == "bounded":
            lam_a = np.array([rng.uniform(lo, hi) for _ in range(dim)])
            lam_b = np.array([rng.uniform(lo, hi) for _ in range(dim)])
            starts.append(_ProbeInstance(random_orthogonal(dim, rng), lam_a,
                                         random_orthogonal(dim, rng), lam_b, lo, hi, family))
        else:
            lam_a = np.array([rng.uniform(0.25, 4.0) for _ in range(dim)])
            lam_c = np.array([rng.uniform(lo, hi) for _ in range(dim)])
            starts.append(_ProbeInstance(random_orthogonal(dim, rng), lam_a,
                                         random_orthogonal(dim, rng), lam_c, lo, hi, family))
    return starts


def _probe_evaluate(ineq, inst, pick, config, pools):
    A, B = inst.matrices()
    try:
        certificates, _ = _evaluate_on_instance(ineq, A, B, inst, pick, config, pools)
    except LoewnerLabError:
        return None
    ratios = [c.ratio for c in certificates if math.isfinite(c.ratio)]
    return max(ratios) if ratios else None


def _evaluate_on_instance(ineq, A, B, inst, pick, config, pools):
    """Evaluate one inequality on explicit matrices with a pick index."""
    tol = config.tol_rel
    i = pick
    if ineq in _BOUNDED_FAMILY:
        m, M = inst.lo, inst.hi
    else:
        s, t = inst.lo, inst.hi
    if ineq == "polya-szego":
        return [certs.check_polya_szego(_pick(pools.maps, i), A, B, m, M, tol_rel=tol)], {}
    if ineq == "kantorovich-f":
        return [certs.check_kantorovich_f(
            _pick(pools.maps, i), _pick(pools.kernels, i), _pick(pools.kernels, i + 1),
            _pick(pools.f_monotone, i), A, B, m, M, tol_rel=tol)], {}
    if ineq == "gruss-f":
        return [certs.check_gruss(
            _pick(pools.unital_maps, i), _pick(pools.kernels, i), _pick(pools.kernels, i + 1),
            _pick(pools.f_monotone, i), A, B, m, M, "monotone", tol_rel=tol)], {}
    if ineq == "gruss-g":
        return [certs.check_gruss(
            _pick(pools.unital_maps, i), _pick(pools.kernels, i), _pick(pools.kernels, i + 1),
            _pick(pools.g_decreasing, i), A, B, m, M, "decreasing", tol_rel=tol)], {}
    if ineq == "squared-consequence-f":
        return [certs.check_squared_consequences(
            _pick(pools.f_monotone, i), A, B, m, M, tol_rel=tol)], {}
    if ineq == "squared-consequence-g":
        return [certs.check_squared_consequences(
            _pick(pools.g_decreasing, i), A, B, m, M, tol_rel=tol)], {}
    if ineq == "norm-ratio-eq15":
        return [certs.check_norm_ratio(
            "eq15", GEOMETRIC, _pick(pools.g_convex, i), A, B, m=m, M=M,
            norm=_pick(pools.norms, i), tol_rel=tol)], {}
    if ineq == "sandwich-lemma":
        return list(certs.check_sandwich_lemma(A, B, s, t, tol_rel=tol)), {}
    if ineq == "main-monotone":
        return [certs.check_main_monotone(
            _pick(pools.maps, i), _pick(pools.kernels, i), _pick(pools.kernels, i + 1),
            _pick(pools.f_monotone, i), A, B, s, t, tol_rel=tol)], {}
    if ineq == "main-decreasing":
        return [certs.check_main_decreasing(
            _pick(pools.maps, i), _pick(pools.kernels, i), _pick(pools.kernels, i + 1),
            _pick(pools.g_decreasing, i), A, B, s, t, tol_rel=tol)], {}
    if ineq == "midpoint":
        return [certs.check_midpoint(A, B, s, t, tol_rel=tol)], {}
    if ineq == "diaz-metcalf":
        return [certs.check_diaz_metcalf(
            _pick(pools.maps, i), _pick(pools.kernels, i), _pick(pools.kernels, i + 1),
            _pick(pools.f_monotone, i), A, B, s, t, tol_rel=tol)], {}
    if ineq == "klamkin-mclenaghan":
        return [certs.check_klamkin_mclenaghan(
            _pick(pools.maps, i), _pick(pools.kernels, i), _pick(pools.f_monotone, i),
            A, B, s, t, tol_rel=tol)], {}
    if ineq == "strengthened-remark":
        return [certs.check_strengthened_remark(
            _pick(pools.maps, i), _pick(pools.kernels, i), _pick(pools.kernels, i + 1),
            _pick(pools.f_monotone, i), A, B, s, t, tol_rel=tol)], {}
    if ineq == "norm-ratio-tau":
        return [certs.check_norm_ratio(
            "tau_side", _pick(pools.tau_ge_sharp, i), _pick(pools.g_convex, i),
            A, B, s=s, t=t, norm=_pick(pools.norms, i), tol_rel=tol)], {}
    if ineq == "norm-ratio-sharp":
        return [certs.check_norm_ratio(
            "sharp_side", _pick(pools.sigma_le_sharp, i), _pick(pools.g_convex, i),
            A, B, s=s, t=t, norm=_pick(pools.norms, i), tol_rel=tol)], {}
    if ineq == "norm-ratio-power4":
        return [certs.check_norm_ratio(
            "power4", _pick(pools.kernels, i), _pick(pools.g_convex, i),
            A, B, s=s, t=t, norm=_pick(pools.norms, i), tol_rel=tol)], {}
    raise ValueError(f"probe does not support inequality {ineq!r}")


def probe_tightness(inequality_id: str, config: SuiteConfig) -> Report:
    """Random search plus coordinate hill-climb for the largest observed ratio.

    Perturbs eigenvalues (clipped to the hypothesis cell) and orthogonal
    factors, accepting ratio increases, for ``probe_refine_steps`` steps.
    """
    start = time.perf_counter()
    if inequality_id == "specht-bound" or inequality_id == "alpha-scaling":
        raise ValueError(f"{inequality_id!r} has no matrix instances to probe")
    if inequality_id == "ando" or inequality_id == "squared":
        raise ValueError(f"probing {inequality_id!r} is not supported")
    if inequality_id in _BOUNDED_FAMILY:
        lo = config.m if config.m is not None else 1.0
        hi = config.M if config.M is not None else 4.0
        cell = {"m": lo, "M": hi}
    else:
        lo = config.s if config.s is not None else 0.25
        hi = config.t if config.t is not None else 4.0
        cell = {"s": lo, "t": hi}
    dim = config.dims[0]
    pools = _build_pools(config, dim)
    rng = SplitMix64(derive_seed(config.seed, fnv1a64("probe"), fnv1a64(inequality_id), dim))
    n_picks = max(len(pools.maps), len(pools.kernels), len(pools.f_monotone))
    best_ratio = -math.inf
    best_inst = None
    best_pick = 0
    for inst in _probe_starts(inequality_id, dim, rng, lo, hi, config.trials):
        for pick in range(n_picks):
            ratio = _probe_evaluate(inequality_id, inst, pick, config, pools)
            if ratio is not None and ratio > best_ratio:
                best_ratio, best_inst, best_pick = ratio, inst, pick
    if best_inst is None:
        raise LoewnerLabError("probe found no feasible instance")
    accepted = 0
    for _ in range(config.probe_refine_steps):
        cand = best_inst.perturb(rng)
        ratio = _probe_evaluate(inequality_id, cand, best_pick, config, pools)
        if ratio is not None and ratio > best_ratio:
            best_ratio, best_inst = ratio, cand
            accepted += 1
    A, B = best_inst.matrices()
    probe_payload = {
        "inequality": inequality_id,
        "cell": cell,
        "dim": dim,
        "max_ratio": best_ratio,
        "refine_steps": config.probe_refine_steps,
        "accepted_steps": accepted,
        "best_instance": _instance_blob(A=A, B=B),
        "pick_index": best_pick,
    }
    report = Report(config=config.to_dict(), results={}, audit_results={}, probe=probe_payload)
    report.wall_time_s = time.perf_counter() - start
    return report


def write_report(report: Report, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(report.to_json())


def load_report(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    if "loewner_lab_report" not in data:
        raise ValueError("missing field 'loewner_lab_report'")
    return data["loewner_lab_report"]


def load_matrix(path: str) -> SymMatrix:
    """Load {"dim": n, "data": [n*n row-major]} JSON; symmetrize on load.

    Asymmetry above 1e-8 relative (Frobenius) is rejected.
    """
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    if "dim" not in data:
        raise ValueError("matrix file is missing field 'dim'")
    if "data" not in data:
        raise ValueError("matrix file is missing field 'data'")
    n = data["dim"]
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"field 'dim' must be a positive integer, got {n!r}")
    entries = data["data"]
    if len(entries) != n * n:
        raise ValueError(f"field 'data' must hold {n * n} numbers, got {len(entries)}")
    raw = np.array(entries, dtype=float).reshape(n, n)
    asym = float(np.linalg.norm(raw - raw.T))
    if asym > 1e-8 * max(1.0, float(np.linalg.norm(raw))):
        raise ValueError(f"field 'data' is asymmetric beyond tolerance ({asym:.3e})")
    return SymMatrix(raw)


def save_matrix(X: SymMatrix, path: str) -> None:
    payload = {"dim": X.dim, "data": [float(v) for v in X.data.ravel()]}
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle)
        handle.write("\n")


def collect_violations(report_body: dict) -> list:
    """Flatten recorded violations across all sections, in report order."""
    out = []
    for section in ("results", "audit_results"):
        for ineq in sorted(report_body.get(section, {})):
            out.extend(report_body[section][ineq].get("violating_instances", []))
    return out


def recheck(report_path: str, index: int) -> tuple[bool, dict]:
    """Re-evaluate a recorded violation from its trial coordinates.

    Returns (reproduced, detail): reproduced is True when the re-run still
    violates with the slack recorded in the report.
    """
    body = load_report(report_path)
    violations = collect_violations(body)
    if not 0 <= index < len(violations):
        raise IndexError(f"violation index {index} out of range 0..{len(violations) - 1}")
    record = violations[index]
    config = config_from_dict(body["config"])
    pools = _build_pools(config, record["dim"])
    certificates, _ = _evaluate_trial(
        record["inequality"], record["dim"], record["trial"], config, pools
    )
    slack = min(c.slack for c in certificates)
    holds = all(c.holds for c in certificates)
    reproduced = (not holds) and abs(slack - record["slack"]) <= 1e-12 * max(1.0, abs(slack))
    return reproduced, {
        "inequality": record["inequality"],
        "dim": record["dim"],
        "trial": record["trial"],
        "recorded_slack": record["slack"],
        "recomputed_slack": slack,
        "holds": holds,
    }
