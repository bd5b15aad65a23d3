"""Closed-form epidemic-threshold and survival-time bounds.

Pure arithmetic, no randomness.  Asymptotic statements carry hidden
constants; every such constant is an explicit calibration parameter
(default 1) and reported alongside values, so none of these functions is a
numerical prediction; they evaluate the parametric form of each bound.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


def explicit_lambda_threshold(k: int, ell: int, rho: float, eps: float) -> float:
    """Explicit form of the infection-rate condition for k connected stars
    with ell leaves: (k / ell^((1-eps) rho))^(1 / (1 + 2 (1-eps) rho))."""
    if k < 1 or ell < 1:
        raise ValueError("k and ell must be at least 1")
    if not rho > 0:
        raise ValueError("deimmunization rate must be positive")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    e = (1.0 - eps) * rho
    return (k / ell ** e) ** (1.0 / (1.0 + 2.0 * e))


@dataclass(frozen=True)
class SurvivalBound:
    """Evaluated survival-time lower bound (kp)^-1 (lam/(kp))^(k-1).

    ``in_regime`` is the condition lam > k p; outside it the bound is
    vacuous (reported, not an error).
    """

    p: float
    bound: float
    in_regime: bool


def survival_lower_bound(k: int, ell: int, lam: float, rho: float, eps: float,
                         p_constant: float = 1.0) -> SurvivalBound:
    """Evaluate the connected-star survival bound with an explicit constant.

    p = p_constant * (lam^2 ell)^(-(1-eps) rho); the bound grows
    exponentially in k with base lam/(kp) and only means anything when
    lam > kp.
    """
    if k < 1 or ell < 1:
        raise ValueError("k and ell must be at least 1")
    if not 0 < lam <= 1:
        raise ValueError("infection rate must lie in (0, 1]")
    if not rho > 0:
        raise ValueError("deimmunization rate must be positive")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if not p_constant > 0:
        raise ValueError("calibration constant must be positive")
    p = p_constant * (lam * lam * ell) ** (-(1.0 - eps) * rho)
    kp = k * p
    bound = (lam / kp) ** (k - 1) / kp
    return SurvivalBound(p=p, bound=bound, in_regime=lam > kp)


def scalefree_threshold_exponent(gamma: float, rho: float) -> float:
    """Exponent of n in the scale-free threshold: -1/((2 + 1/rho)(gamma-1)).

    The additive slack eps of the full statement is carried separately by
    reports."""
    if not 2.0 < gamma < 3.0:
        raise ValueError(f"power-law exponent {gamma} outside (2, 3)")
    if not rho > 0:
        raise ValueError("deimmunization rate must be positive")
    return -1.0 / ((2.0 + 1.0 / rho) * (gamma - 1.0))


def constar_threshold_exponent(c: float, rho: float) -> float:
    """Exponent of n in the threshold for planted connected stars with
    Omega(n^c) leaves: -c/(2 + 1/rho)."""
    if not c > 0:
        raise ValueError("leaf-size exponent must be positive")
    if not rho > 0:
        raise ValueError("deimmunization rate must be positive")
    return -c / (2.0 + 1.0 / rho)


def expander_threshold_exponent(gamma: float) -> float:
    """Exponent of n in the expansion-based threshold: (gamma - 3)/2."""
    if not 2.0 < gamma < 3.0:
        raise ValueError(f"power-law exponent {gamma} outside (2, 3)")
    return (gamma - 3.0) / 2.0


def meta_threshold(rho: float) -> float:
    """The power-law exponent 2 + (2 rho + 1)^(-1/2) above which the
    connected-star threshold is more permissive than the expander one."""
    if not rho > 0:
        raise ValueError("deimmunization rate must be positive")
    return 2.0 + (2.0 * rho + 1.0) ** -0.5


def gamblers_ruin_probs(p: float, start: int, lower: int,
                        upper: int) -> tuple[float, float]:
    """Absorption probabilities of the biased gambler's ruin game.

    A walk from ``start`` moves +1 with probability p and -1 with q = 1-p,
    until it hits ``lower`` or ``upper``.  Returns (ruin, win) =
    (P[hit lower], P[hit upper]):

        ruin = (1 - (p/q)^(upper-start)) / (1 - (p/q)^(upper-lower))
        win  = (1 - (q/p)^(start-lower)) / (1 - (q/p)^(upper-lower))

    Requires p != 1/2 (see gamblers_ruin_probs_fair for the symmetric
    limit).
    """
    if not 0.0 < p < 1.0:
        raise ValueError("step probability must lie strictly in (0, 1)")
    if p == 0.5:
        raise ValueError("p = 1/2 is outside this formula; use gamblers_ruin_probs_fair")
    if not lower < start < upper:
        raise ValueError("need lower < start < upper")
    r = p / (1.0 - p)
    ruin = (1.0 - r ** (upper - start)) / (1.0 - r ** (upper - lower))
    s = 1.0 / r
    win = (1.0 - s ** (start - lower)) / (1.0 - s ** (upper - lower))
    return ruin, win


def gamblers_ruin_probs_fair(start: int, lower: int, upper: int) -> tuple[float, float]:
    """Symmetric-walk limit of the absorption probabilities:
    ruin = (upper-start)/(upper-lower), win = (start-lower)/(upper-lower)."""
    if not lower < start < upper:
        raise ValueError("need lower < start < upper")
    span = upper - lower
    return (upper - start) / span, (start - lower) / span


@dataclass(frozen=True)
class ThresholdReport:
    """Evaluated bounds for one parameter set, JSON-serializable."""

    inputs: dict
    bounds: tuple[dict, ...]
    verdict: str | None

    def to_json(self) -> str:
        return json.dumps({"inputs": self.inputs, "bounds": list(self.bounds),
                           "verdict": self.verdict}, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ThresholdReport":
        d = json.loads(text)
        return cls(inputs=d["inputs"], bounds=tuple(d["bounds"]),
                   verdict=d["verdict"])


def threshold_report(n: int | None = None, k: int | None = None,
                     ell: int | None = None, gamma: float | None = None,
                     rho: float = 1.0, eps: float = 0.5,
                     lam: float | None = None, c: float = 1.0,
                     p_constant: float = 1.0) -> ThresholdReport:
    """Evaluate every bound applicable to the given inputs.

    gamma present: scale-free and expander exponents, the meta threshold,
    and the comparison verdict.  (k, ell) present: the explicit lambda
    threshold; with lam also the survival lower bound.
    """
    inputs = {key: val for key, val in
              [("n", n), ("k", k), ("ell", ell), ("gamma", gamma),
               ("rho", rho), ("eps", eps), ("lambda", lam), ("c", c),
               ("p_constant", p_constant)] if val is not None}
    bounds: list[dict] = []
    verdict = None
    if gamma is not None:
        sf = scalefree_threshold_exponent(gamma, rho)
        ex = expander_threshold_exponent(gamma)
        gstar = meta_threshold(rho)
        bounds.append({"id": "scalefree", "exponent": sf, "eps_slack": eps,
                       "formula": "-1/((2+1/rho)(gamma-1))"})
        bounds.append({"id": "expander", "exponent": ex,
                       "formula": "(gamma-3)/2"})
        bounds.append({"id": "meta_threshold", "value": gstar,
                       "formula": "2+(2rho+1)^(-1/2)"})
        verdict = ("constar_more_permissive" if sf < ex
                   else "expander_more_permissive" if ex < sf else "tie")
    if gamma is None and c is not None and n is not None:
        bounds.append({"id": "constar", "exponent": constar_threshold_exponent(c, rho),
                       "eps_slack": eps, "formula": "-c/(2+1/rho)"})
    if k is not None and ell is not None:
        bounds.append({"id": "explicit_lambda",
                       "value": explicit_lambda_threshold(k, ell, rho, eps),
                       "formula": "(k/ell^((1-eps)rho))^(1/(1+2(1-eps)rho))"})
        if lam is not None and 0 < lam <= 1:
            sb = survival_lower_bound(k, ell, lam, rho, eps, p_constant)
            bounds.append({"id": "survival_lower_bound", "value": sb.bound,
                           "p": sb.p, "in_regime": sb.in_regime,
                           "formula": "(kp)^-1 (lam/(kp))^(k-1)"})
    return ThresholdReport(inputs=inputs, bounds=tuple(bounds), verdict=verdict)
