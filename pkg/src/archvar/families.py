"""Archimedean copula families: generators, inverses, CDFs and the VaR kernel.

Five families are supported (Clayton, Frank, Gumbel-Hougaard, Joe,
Ali-Mikhail-Haq).  Each is characterized by a strictly decreasing generator
``phi`` with ``phi(1) = 0``; the copula is ``phi_inverse(sum phi(u_i))``.
All operations are pure, accept scalars or numpy arrays, and are safe to
call concurrently.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GeneratorInfinityError, ParameterError

__all__ = [
    "FamilyId",
    "CopulaSpec",
    "phi",
    "phi_prime",
    "phi_inverse",
    "copula_cdf",
    "beta_kernel",
]


class FamilyId(enum.Enum):
    """Tags for the supported Archimedean families."""

    CLAYTON = "clayton"
    FRANK = "frank"
    GUMBEL_HOUGAARD = "gumbel"
    JOE = "joe"
    ALI_MIKHAIL_HAQ = "amh"

    @classmethod
    def from_string(cls, name: str) -> "FamilyId":
        """Parse a family name, accepting common aliases."""
        key = name.strip().lower().replace("_", "-")
        aliases = {
            "clayton": cls.CLAYTON,
            "frank": cls.FRANK,
            "gumbel": cls.GUMBEL_HOUGAARD,
            "gumbel-hougaard": cls.GUMBEL_HOUGAARD,
            "joe": cls.JOE,
            "amh": cls.ALI_MIKHAIL_HAQ,
            "ali-mikhail-haq": cls.ALI_MIKHAIL_HAQ,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ParameterError(
                f"unknown copula family {name!r}; expected one of "
                f"{sorted(set(aliases))}"
            ) from None


@dataclass(frozen=True)
class CopulaSpec:
    """A fully specified copula: family tag, dependence parameter, dimension.

    Parameter domains:

    * Clayton: ``theta > 0``
    * Frank: ``theta != 0`` (VaR routines additionally require ``theta > 0``)
    * Gumbel-Hougaard, Joe: ``theta >= 1``
    * Ali-Mikhail-Haq: ``-1 <= theta < 1`` and ``d == 2`` (the generator
      degenerates at ``theta = 1`` and the family has no genuine Archimedean
      extension beyond the bivariate case)

    Boundary values that only arise as limits (Clayton ``theta = 0``,
    Frank ``theta = 0``) are rejected, not clamped.
    """

    family: FamilyId
    theta: float
    d: int

    def __post_init__(self):
        if not isinstance(self.family, FamilyId):
            raise ParameterError(f"family must be a FamilyId, got {self.family!r}")
        if not isinstance(self.d, (int, np.integer)) or isinstance(self.d, bool):
            raise ParameterError(f"dimension d must be an integer, got {self.d!r}")
        if self.d < 2:
            raise ParameterError(f"dimension d must be >= 2, got {self.d}")
        th = self.theta
        if not math.isfinite(th):
            raise ParameterError(f"theta must be finite, got {th}")
        fam = self.family
        if fam is FamilyId.CLAYTON and not th > 0:
            raise ParameterError(f"Clayton requires theta > 0, got {th}")
        if fam is FamilyId.FRANK and th == 0:
            raise ParameterError("Frank requires theta != 0")
        if fam in (FamilyId.GUMBEL_HOUGAARD, FamilyId.JOE) and not th >= 1:
            raise ParameterError(f"{fam.value} requires theta >= 1, got {th}")
        if fam is FamilyId.ALI_MIKHAIL_HAQ:
            if not -1.0 <= th < 1.0:
                raise ParameterError(
                    f"Ali-Mikhail-Haq requires -1 <= theta < 1, got {th} "
                    "(the generator degenerates at theta = 1)"
                )
            if self.d != 2:
                raise ParameterError(
                    "Ali-Mikhail-Haq is bivariate only (no genuine Archimedean "
                    f"extension to d >= 3); got d = {self.d}"
                )
        object.__setattr__(self, "theta", float(th))
        object.__setattr__(self, "d", int(self.d))


def _as_result(x: np.ndarray, scalar: bool):
    return float(x) if scalar else x


def _log1m_pow(th: float, t: np.ndarray) -> np.ndarray:
    """``ln(1 - (1-t)^th)`` for ``t in (0, 1]`` at full relative precision.

    Uses the expm1 route while ``(1-t)^th`` is large and the log1p route
    once it is small; ``t = 1`` flows through to exactly 0.
    """
    with np.errstate(divide="ignore"):
        inner = th * np.log1p(-t)
    return np.where(
        inner > -0.6931471805599453,
        np.log(-np.expm1(inner)),
        np.log1p(-np.exp(inner)),
    )


def _check_t_unit(t: np.ndarray, include_one: bool) -> None:
    hi_bad = (t > 1.0) if include_one else (t >= 1.0)
    if np.any(t < 0.0) or np.any(hi_bad) or np.any(np.isnan(t)):
        bracket = "(0, 1]" if include_one else "(0, 1)"
        raise DomainError(f"generator argument must lie in {bracket}")
    if np.any(t == 0.0):
        raise GeneratorInfinityError(
            "infinite generator value: phi diverges at t = 0 for every "
            "strict generator"
        )


def phi(spec: CopulaSpec, t) -> float | np.ndarray:
    """Generator ``phi_theta(t)`` on ``t in (0, 1]``.

    Strictly decreasing with ``phi(1) = 0``.  Raises
    :class:`GeneratorInfinityError` at ``t = 0``, where all five generators
    diverge, and :class:`DomainError` outside ``[0, 1]``.
    """
    t_arr = np.asarray(t, dtype=float)
    scalar = t_arr.ndim == 0
    t_arr = np.atleast_1d(t_arr)
    _check_t_unit(t_arr, include_one=True)
    th = spec.theta
    fam = spec.family
    if fam is FamilyId.CLAYTON:
        # (t^-theta - 1)/theta, via expm1 for accuracy near t = 1;
        # overflow to inf at denormal t is the correct monotone limit
        with np.errstate(over="ignore"):
            out = np.expm1(-th * np.log(t_arr)) / th
    elif fam is FamilyId.FRANK:
        # -ln[(e^(-theta t) - 1)/(e^(-theta) - 1)]; the ratio is positive
        # for either sign of theta
        out = -np.log(np.expm1(-th * t_arr) / np.expm1(-th))
    elif fam is FamilyId.GUMBEL_HOUGAARD:
        out = (-np.log(t_arr)) ** th
    elif fam is FamilyId.JOE:
        out = -_log1m_pow(th, t_arr)
    else:  # Ali-Mikhail-Haq
        out = np.log1p(-th * (1.0 - t_arr)) - np.log(t_arr)
    return _as_result(out if not scalar else out[0], scalar)


def phi_prime(spec: CopulaSpec, t) -> float | np.ndarray:
    """Generator derivative ``phi'_theta(t)`` on ``t in (0, 1)``; always < 0."""
    t_arr = np.asarray(t, dtype=float)
    scalar = t_arr.ndim == 0
    t_arr = np.atleast_1d(t_arr)
    _check_t_unit(t_arr, include_one=False)
    th = spec.theta
    fam = spec.family
    if fam is FamilyId.CLAYTON:
        with np.errstate(over="ignore"):
            out = -(t_arr ** (-th - 1.0))
    elif fam is FamilyId.FRANK:
        out = -th / np.expm1(th * t_arr)
    elif fam is FamilyId.GUMBEL_HOUGAARD:
        out = -th * (-np.log(t_arr)) ** (th - 1.0) / t_arr
    elif fam is FamilyId.JOE:
        one_m = 1.0 - t_arr
        out = -th * one_m ** (th - 1.0) / (-np.expm1(th * np.log1p(-t_arr)))
    else:  # Ali-Mikhail-Haq; simplifies to -(1-theta)/(t (1 - theta(1-t)))
        out = -(1.0 - th) / (t_arr * (1.0 - th * (1.0 - t_arr)))
    return _as_result(out if not scalar else out[0], scalar)


def phi_inverse(spec: CopulaSpec, s) -> float | np.ndarray:
    """Generator inverse on ``s >= 0``; ``phi_inverse(0) = 1`` exactly."""
    s_arr = np.asarray(s, dtype=float)
    scalar = s_arr.ndim == 0
    s_arr = np.atleast_1d(s_arr)
    if np.any(s_arr < 0.0) or np.any(np.isnan(s_arr)):
        raise DomainError("generator inverse argument must be >= 0")
    th = spec.theta
    fam = spec.family
    if fam is FamilyId.CLAYTON:
        out = np.exp(np.log1p(th * s_arr) * (-1.0 / th))
    elif fam is FamilyId.FRANK:
        out = np.where(
            s_arr == 0.0,
            1.0,
            -np.log1p(np.exp(-s_arr) * np.expm1(-th)) / th,
        )
    elif fam is FamilyId.GUMBEL_HOUGAARD:
        out = np.exp(-(s_arr ** (1.0 / th)))
    elif fam is FamilyId.JOE:
        # 1 - (1 - e^-s)^(1/theta); ln(1 - e^-s) needs the log1p route for
        # large s and the expm1 route for small s to keep full precision
        with np.errstate(divide="ignore"):
            log1m = np.where(
                s_arr > 0.6931471805599453,
                np.log1p(-np.exp(-s_arr)),
                np.log(-np.expm1(-s_arr)),
            )
            out = np.where(s_arr == 0.0, 1.0, -np.expm1(log1m / th))
    else:  # Ali-Mikhail-Haq
        with np.errstate(over="ignore"):
            out = (1.0 - th) / (np.exp(s_arr) - th)
    return _as_result(out if not scalar else out[0], scalar)


def copula_cdf(spec: CopulaSpec, u) -> float | np.ndarray:
    """Copula CDF at one point of shape ``(d,)`` or a batch ``(..., d)``.

    Coordinates must lie in ``[0, 1]``; any zero coordinate forces the value
    to 0.  Equals ``phi_inverse(sum_i phi(u_i))`` wherever both are defined.
    """
    u_arr = np.asarray(u, dtype=float)
    if u_arr.ndim == 0 or u_arr.shape[-1] != spec.d:
        raise ParameterError(
            f"point dimension mismatch: expected last axis of length {spec.d}, "
            f"got shape {u_arr.shape}"
        )
    if np.any(u_arr < 0.0) or np.any(u_arr > 1.0) or np.any(np.isnan(u_arr)):
        raise DomainError("copula arguments must lie in [0, 1]")
    scalar = u_arr.ndim == 1
    pts = u_arr.reshape(-1, spec.d)
    out = np.zeros(pts.shape[0])
    ok = ~np.any(pts == 0.0, axis=1)
    if np.any(ok):
        out[ok] = _cdf_interior(spec, pts[ok])
    if scalar:
        return float(out[0])
    return out.reshape(u_arr.shape[:-1])


def _cdf_interior(spec: CopulaSpec, pts: np.ndarray) -> np.ndarray:
    """Family CDF on points with all coordinates in (0, 1]."""
    th = spec.theta
    d = spec.d
    fam = spec.family
    if fam is FamilyId.CLAYTON:
        with np.errstate(over="ignore"):
            return (np.sum(pts ** -th, axis=1) - d + 1.0) ** (-1.0 / th)
    if fam is FamilyId.FRANK:
        ratio = np.prod(np.expm1(-th * pts), axis=1) / np.expm1(-th) ** (d - 1)
        return -np.log1p(ratio) / th
    if fam is FamilyId.GUMBEL_HOUGAARD:
        return np.exp(-(np.sum((-np.log(pts)) ** th, axis=1) ** (1.0 / th)))
    if fam is FamilyId.JOE:
        # 1 - [1 - prod_i (1 - (1-u_i)^theta)]^(1/theta)
        log_prod = np.sum(_log1m_pow(th, pts), axis=1)
        with np.errstate(divide="ignore"):
            return np.where(
                log_prod == 0.0,
                1.0,
                -np.expm1(np.log(-np.expm1(log_prod)) / th),
            )
    # Ali-Mikhail-Haq (bivariate)
    u1, u2 = pts[:, 0], pts[:, 1]
    return u1 * u2 / (1.0 - th * (1.0 - u1) * (1.0 - u2))


def beta_kernel(spec: CopulaSpec, u, alpha: float) -> float | np.ndarray:
    """VaR integration kernel ``-phi'(u) [phi(alpha) - phi(u)]^(d-2)``.

    Defined for ``alpha in (0, 1)`` and ``u in [alpha, 1)``.  For ``d = 2``
    the bracket power is identically 1, including at ``u = alpha`` where the
    base vanishes (0^0 = 1 convention), so the kernel degenerates to
    ``-phi'(u)``.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    u_arr = np.asarray(u, dtype=float)
    scalar = u_arr.ndim == 0
    u_arr = np.atleast_1d(u_arr)
    if np.any(u_arr < alpha) or np.any(u_arr >= 1.0) or np.any(np.isnan(u_arr)):
        raise DomainError(f"kernel argument must lie in [alpha, 1) = [{alpha}, 1)")
    bracket = phi(spec, alpha) - phi(spec, u_arr)
    out = -phi_prime(spec, u_arr) * bracket ** (spec.d - 2)
    return _as_result(out if not scalar else out[0], scalar)
