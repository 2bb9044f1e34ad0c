"""Seeded verification campaigns for the finitary lemmas.

Trial ``j`` of a campaign with seed ``s`` draws everything from
``random.Random(s ^ j)``, so a trial can be replayed alone and the report
does not depend on how trials are scheduled across workers.
"""

from __future__ import annotations

import cmath
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import InfinitePPointsError
from .exact import GaussianRational
from .expr import Add, Const, Exp, Mul, Var
from .generators import (
    CampaignConfig,
    gen_gaussian_rational,
    gen_poly,
    gen_proper_plus_polynomial,
    gen_ratfunc,
    gen_spec,
    trial_rng,
)
from .monomial import exp_image
from .numeric import NumericFunction, numeric_monomial_eval
from .ppoints import (
    degree_drop_check,
    degree_drop_equality_check,
    distinct_ppoints,
    polynomial_part,
    shares_value,
)
from .ratfunc import deg_infinity, format_rf, rf_derivative

CAMPAIGNS = ("lemma4", "degree-drop", "degree-equality", "exp-identity", "share-reflexive")
EXP_IDENTITY_RTOL = 1e-9
EXP_IDENTITY_POINTS = 10


@dataclass
class CampaignReport:
    campaign_name: str
    config: CampaignConfig
    trials_run: int
    violations: list[dict]
    elapsed_ms: float
    statistics: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "pass" if not self.violations else "fail"

    def to_json(self) -> dict:
        return {
            "campaign_name": self.campaign_name,
            "config": self.config.to_json(),
            "trials_run": self.trials_run,
            "violations": self.violations,
            "statistics": self.statistics,
            "elapsed_ms": self.elapsed_ms,
            "verdict": self.verdict,
        }


# ------------------------------------------------------------------ trials


def _lemma4_trial(rng, cfg: CampaignConfig, index: int, negative_controls: bool) -> dict:
    f = gen_ratfunc(rng, cfg)
    spec = gen_spec(rng, cfg, "meromorphic")
    p = gen_gaussian_rational(rng, cfg.coefficient_height)
    count = distinct_ppoints(f, spec, p).distinct_count
    out = {"count": count, "polynomial": f.is_polynomial()}
    if count < 2:
        out["violation"] = {
            "trial": index,
            "expression": format_rf(f),
            "spec": str(spec),
            "p": str(p),
            "observed_count": count,
            "reproduce": ["ppoints", format_rf(f), "--spec", str(spec), "--p", str(p)],
        }
    if negative_controls:
        bad = gen_spec(rng, cfg, "violating")
        nc = distinct_ppoints(f, bad, p).distinct_count
        out["control"] = {
            "count": nc,
            "spec": str(bad),
            "expression": format_rf(f),
            "p": str(p),
            "reproduce": ["ppoints", format_rf(f), "--spec", str(bad), "--p", str(p)],
        }
    return out


def _degree_drop_trial(rng, cfg: CampaignConfig, index: int) -> dict:
    f = gen_ratfunc(rng, cfg, require_pole=True)
    k = rng.randint(1, cfg.max_k)
    if degree_drop_check(f, k):
        return {}
    return {"violation": {
        "trial": index,
        "expression": format_rf(f),
        "k": k,
        "observed": [deg_infinity(rf_derivative(f, k)), deg_infinity(f)],
        "reproduce": ["deg-inf", format_rf(f), "--k", str(k)],
    }}


def _degree_equality_trial(rng, cfg: CampaignConfig, index: int) -> dict:
    f = gen_proper_plus_polynomial(rng, cfg)
    m = polynomial_part(f)[0].degree
    k = rng.randint(1, m)
    if degree_drop_equality_check(f, k):
        return {}
    return {"violation": {
        "trial": index,
        "expression": format_rf(f),
        "k": k,
        "observed": [deg_infinity(rf_derivative(f, k)), deg_infinity(f)],
        "reproduce": ["deg-inf", format_rf(f), "--k", str(k)],
    }}


def exp_identity_error(spec, c: GaussianRational, d: GaussianRational, points) -> tuple[float, bool]:
    """Max relative error between M(exp(cz+d)) evaluated numerically and the closed form.

    Also returns whether ``rate == (n + sum n_i) * c`` holds exactly.
    """
    img = exp_image(spec, c, d)
    rate_ok = img.rate == c * (spec.n + sum(spec.exponents))
    g = NumericFunction(Exp(Add(Mul(Const(c), Var()), Const(d))))
    zs = np.asarray(points, dtype=complex)
    numeric = numeric_monomial_eval(g, spec, zs)
    coef, rate, dd = complex(img.coefficient), complex(img.rate), complex(d)
    closed = np.array([coef * cmath.exp(rate * z + img.offset_scale * dd) for z in zs])
    err = float(np.max(np.abs(numeric - closed) / np.abs(closed)))
    return err, rate_ok


def _exp_identity_trial(rng, cfg: CampaignConfig, index: int) -> dict:
    spec = gen_spec(rng, cfg, "meromorphic")
    c = gen_gaussian_rational(rng, cfg.coefficient_height)
    d = gen_gaussian_rational(rng, cfg.coefficient_height, nonzero=False)
    pts = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(EXP_IDENTITY_POINTS)]
    err, rate_ok = exp_identity_error(spec, c, d, pts)
    out = {"error": err}
    if err > EXP_IDENTITY_RTOL or not rate_ok or not np.isfinite(err):
        out["violation"] = {
            "trial": index,
            "spec": str(spec),
            "c": str(c),
            "d": str(d),
            "max_relative_error": err,
            "rate_exact": rate_ok,
            "reproduce": ["exp-identity", "--spec", str(spec), "--c", str(c), "--d", str(d)],
        }
    return out


def _share_trial(rng, cfg: CampaignConfig, index: int) -> dict:
    f = gen_ratfunc(rng, cfg)
    g = gen_ratfunc(rng, cfg)
    spec = gen_spec(rng, cfg, "meromorphic")
    if rng.random() < 0.5:
        target = gen_poly(rng, 0, cfg.coefficient_height)
    else:
        target = gen_poly(rng, rng.randint(1, 2), cfg.coefficient_height)
    try:
        reflexive = shares_value(f, f, spec, target).shared
        fg = shares_value(f, g, spec, target).shared
        gf = shares_value(g, f, spec, target).shared
    except InfinitePPointsError:
        return {"skipped": True}
    if reflexive and fg == gf:
        return {"shared": fg}
    return {"violation": {
        "trial": index,
        "expression": format_rf(f),
        "other": format_rf(g),
        "spec": str(spec),
        "target": str(target),
        "observed": {"reflexive": reflexive, "f_g": fg, "g_f": gf},
        "reproduce": ["share", format_rf(f), format_rf(g), "--spec", str(spec), "--target", str(target)],
    }}


def run_trial(name: str, cfg: CampaignConfig, index: int, negative_controls: bool = False) -> dict:
    rng = trial_rng(cfg.seed, index)
    if name == "lemma4":
        return _lemma4_trial(rng, cfg, index, negative_controls)
    if name == "degree-drop":
        return _degree_drop_trial(rng, cfg, index)
    if name == "degree-equality":
        return _degree_equality_trial(rng, cfg, index)
    if name == "exp-identity":
        return _exp_identity_trial(rng, cfg, index)
    if name == "share-reflexive":
        return _share_trial(rng, cfg, index)
    raise ValueError(f"unknown campaign {name!r}; choose from {', '.join(CAMPAIGNS)}")


def _run_chunk(args) -> list[dict]:
    name, cfg, indices, negative_controls = args
    return [run_trial(name, cfg, i, negative_controls) for i in indices]


# ---------------------------------------------------------------- reporting


def _statistics(name: str, results: list[dict]) -> dict:
    if name == "lemma4":
        counts = Counter(r["count"] for r in results)
        stats = {
            "distinct_count_distribution": {str(k): counts[k] for k in sorted(counts)},
            "min_distinct_count": min(counts),
            "polynomial_instances": sum(r["polynomial"] for r in results),
        }
        controls = [r["control"] for r in results if "control" in r]
        if controls:
            below = [c for c in controls if c["count"] < 2]
            stats["negative_controls"] = {
                "trials": len(controls),
                "count_below_two": len(below),
                "fraction_below_two": len(below) / len(controls),
                "examples": below[:5],
            }
        return stats
    if name == "exp-identity":
        return {"max_relative_error": max(r["error"] for r in results), "tolerance": EXP_IDENTITY_RTOL}
    if name == "share-reflexive":
        return {
            "skipped": sum(1 for r in results if r.get("skipped")),
            "distinct_pairs_sharing": sum(1 for r in results if r.get("shared")),
        }
    return {}


def run_campaign(name: str, config: CampaignConfig, jobs: int = 1,
                 negative_controls: bool = False) -> CampaignReport:
    if name not in CAMPAIGNS:
        raise ValueError(f"unknown campaign {name!r}; choose from {', '.join(CAMPAIGNS)}")
    start = time.perf_counter()
    indices = list(range(config.trials))
    if jobs > 1:
        size = max(1, len(indices) // (4 * jobs))
        chunks = [(name, config, indices[i:i + size], negative_controls)
                  for i in range(0, len(indices), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [r for chunk in pool.map(_run_chunk, chunks) for r in chunk]
    else:
        results = [run_trial(name, config, i, negative_controls) for i in indices]
    violations = [r["violation"] for r in results if "violation" in r]
    elapsed = (time.perf_counter() - start) * 1000.0
    return CampaignReport(
        campaign_name=name,
        config=config,
        trials_run=len(results),
        violations=violations,
        elapsed_ms=round(elapsed, 3),
        statistics=_statistics(name, results),
    )
