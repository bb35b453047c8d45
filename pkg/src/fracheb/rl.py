r"""Riemann-Liouville fractional integrals and derivatives.

Left operators are anchored at ``a`` and act on functions of ``x - a``;
right operators are anchored at ``b`` and act on functions of ``b - x``:

.. math::

    {}_aI_x^s f(x) = \frac{1}{\Gamma(s)}\int_a^x \frac{f(y)}{(x-y)^{1-s}}\,dy,
    \qquad
    {}_xI_b^s f(x) = \frac{1}{\Gamma(s)}\int_x^b \frac{f(y)}{(y-x)^{1-s}}\,dy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from fracheb._quad import adaptive_gauss
from fracheb.errors import DomainError
from fracheb.ggf import GgfParams, ggf_eval
from fracheb.special import _digamma_any, _is_nonpos_int, gamma_product, gamma_ratio

__all__ = [
    "RlSpec",
    "ggf_frac_identity",
    "h_factor",
    "rl_numeric",
    "rl_power",
    "rl_power_log",
]


@dataclass(frozen=True)
class RlSpec:
    """Side (``"left"`` from ``anchor`` or ``"right"`` up to ``anchor``) and order ``s``."""

    side: str
    order: float
    anchor: float

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise DomainError(f"side must be 'left' or 'right', got {self.side!r}")
        if not (math.isfinite(self.order) and self.order > 0):
            raise DomainError(f"order must be positive, got {self.order!r}")

    def distance(self, x):
        """Distance from ``x`` to the anchor, oriented by the side."""
        x = np.asarray(x, dtype=float)
        d = x - self.anchor if self.side == "left" else self.anchor - x
        if np.any(d <= 0):
            raise DomainError("x must lie strictly on the integration side of the anchor")
        return d


def _shape(value, like):
    return float(value) if np.ndim(like) == 0 else value


def rl_power(spec: RlSpec, mode: str, eta: float, x):
    """Closed-form RL integral or derivative of ``(x-a)^eta`` (``(b-x)^eta`` on the right)."""
    if eta <= -1:
        raise DomainError(f"eta must exceed -1, got {eta!r}")
    d = spec.distance(x)
    s = spec.order
    if mode == "integral":
        out = gamma_ratio(0.0, eta + 1.0, eta + s + 1.0) * d ** (eta + s)
    elif mode == "derivative":
        if _is_nonpos_int(eta - s + 1.0):
            out = np.zeros_like(d)
        else:
            out = gamma_ratio(0.0, eta + 1.0, eta - s + 1.0) * d ** (eta - s)
    else:
        raise DomainError(f"mode must be 'integral' or 'derivative', got {mode!r}")
    return _shape(out, x)


def rl_power_log(spec: RlSpec, eta: float, x, mode: str = "integral"):
    r"""RL integral (or derivative) of ``(x-a)^eta ln(x-a)``.

    The integral of order :math:`s \ge 0` is

    .. math:: \frac{\Gamma(\eta+1)}{\Gamma(\eta+s+1)}\{\ln(x-a)+\psi(\eta+1)-\psi(\eta+s+1)\}(x-a)^{\eta+s},

    and the derivative is the same expression with ``s`` replaced by ``-s``.
    When :math:`\eta+1-s` is a non-positive integer ``-k`` the derivative
    keeps only the limit of :math:`\psi/\Gamma`, namely
    :math:`\Gamma(\eta+1)(-1)^k k!\,(x-a)^{\eta-s}`.
    """
    if eta <= -1:
        raise DomainError(f"eta must exceed -1, got {eta!r}")
    d = spec.distance(x)
    if mode == "integral":
        shift = spec.order
    elif mode == "derivative":
        shift = -spec.order
    else:
        raise DomainError(f"mode must be 'integral' or 'derivative', got {mode!r}")
    top = eta + shift + 1.0
    if _is_nonpos_int(top):
        k = int(-top)
        out = gamma_product((eta + 1.0,)) * (-1) ** k * math.factorial(k) * d ** (eta + shift)
    else:
        ratio = gamma_ratio(0.0, eta + 1.0, top)
        psi = _digamma_any(eta + 1.0) - _digamma_any(top)
        out = ratio * (np.log(d) + psi) * d ** (eta + shift)
    return _shape(out, x)


def rl_numeric(f, spec: RlSpec, x: float, tol: float = 1e-11) -> float:
    """Evaluate the RL integral of a vectorised ``f`` at ``x`` by quadrature.

    The substitution ``y = x -+ |x - anchor| t^(1/s)`` removes the kernel
    singularity, leaving ``|x - anchor|^s / Gamma(s+1)`` times the integral
    of ``f`` over ``t`` in ``[0, 1]``.  The half ``t > 1/2`` is integrated in
    ``u = 1 - t`` with the offset from the anchor formed directly, so that a
    singularity of ``f`` at the anchor is resolved below the spacing of ``t``.
    """
    d = float(spec.distance(x))
    s = spec.order
    sign = -1.0 if spec.side == "left" else 1.0
    scale = d**s / gamma_product((s + 1.0,))
    budget = 0.5 * tol / max(scale, 1e-300)

    def near_x(t):
        return f(x + sign * d * t ** (1.0 / s))

    def near_anchor(u):
        offset = -d * np.expm1(np.log1p(-u) / s)
        return f(spec.anchor - sign * offset)

    return scale * (adaptive_gauss(near_x, 0.0, 0.5, tol=budget)
                    + adaptive_gauss(near_anchor, 0.0, 0.5, tol=budget))


def h_factor(lam: float, beta: float) -> float:
    """``2^beta Gamma(lam + 1/2) / Gamma(lam - beta + 1/2)``."""
    return 2.0**beta * gamma_ratio(0.0, lam + 0.5, lam - beta + 0.5)


def _omega(lam, x):
    return (1.0 - x * x) ** (lam - 0.5)


def _five_point(g, x, h):
    return (g(x - 2 * h) - 8 * g(x - h) + 8 * g(x + h) - g(x + 2 * h)) / (12 * h)


def ggf_frac_identity(side: str, nu: float, lam: float, s: float, x: float,
                      mode: str = "integral", tol: float = 1e-11):
    """Return ``(lhs, rhs)`` of the RL transform identity for weighted GGFs.

    ``lhs`` applies a numerical RL operator to ``(1-x^2)^(lam-1/2) G_nu^(lam)``;
    ``rhs`` is the closed form with shifted degree and parameter.  The right
    function pairs with operators anchored at ``+1``, the left function with
    operators anchored at ``-1``.  Derivative mode supports ``0 < s <= 1``;
    its left-hand side differentiates the ``(1-s)``-integral numerically.
    """
    if side not in ("right", "left"):
        raise DomainError(f"side must be 'right' or 'left', got {side!r}")
    if not -1.0 < x < 1.0:
        raise DomainError(f"x must lie in (-1, 1), got {x!r}")
    p = GgfParams(side, nu, lam)

    def weighted(y):
        return _omega(lam, y) * ggf_eval(p, y)

    rl_side = "right" if side == "right" else "left"
    anchor = 1.0 if side == "right" else -1.0

    if mode == "integral":
        if not nu >= s > 0:
            raise DomainError(f"integral identity needs nu >= s > 0, got nu={nu}, s={s}")
        lhs = rl_numeric(weighted, RlSpec(rl_side, s, anchor), x, tol)
        q = GgfParams(side, nu - s, lam + s)
        rhs = h_factor(lam, -s) * _omega(lam + s, x) * ggf_eval(q, x)
        if side == "left":
            rhs *= (-1) ** (math.floor(nu) + math.floor(nu - s))
        return lhs, rhs

    if mode != "derivative":
        raise DomainError(f"mode must be 'integral' or 'derivative', got {mode!r}")
    if not 0 < s <= 1:
        raise DomainError(f"derivative identity is provided for 0 < s <= 1, got {s}")
    if not lam > s - 0.5:
        raise DomainError(f"derivative identity needs lambda > s - 1/2, got lambda={lam}, s={s}")
    if s == 1:
        def inner(y):
            return weighted(np.asarray(y, dtype=float))
    else:
        spec = RlSpec(rl_side, 1.0 - s, anchor)

        def inner(y):
            return rl_numeric(weighted, spec, y, tol)
    h = 1e-3 * min(1.0, (1.0 - abs(x)) * 10.0)
    slope = _five_point(inner, x, h)
    lhs = -slope if side == "right" else slope
    q = GgfParams(side, nu + s, lam - s)
    rhs = h_factor(lam, s) * _omega(lam - s, x) * ggf_eval(q, x)
    if side == "left":
        rhs *= (-1) ** (math.floor(nu) + math.floor(nu + s))
    return float(lhs), float(rhs)
