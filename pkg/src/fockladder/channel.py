"""Single-mode phase-covariant/contravariant bosonic Gaussian channels.

The four families are parametrized by their native physical quantities and
mapped to the four-tuple (alpha, beta, gamma, chi) that generates all
photon-number transition probabilities through

    h(x, z) = chi / (1 - alpha*x - beta*z - gamma*x*z).

Trace preservation forces alpha + beta + gamma = 1 and beta + chi = 1, so
each channel carries two independent parameters. The derived combination
nu = gamma + beta*alpha appears in the ladder matrix and is nonnegative
for every in-domain channel.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError


class Family(str, enum.Enum):
    """The four channel families."""

    LOSSY = "lossy"        # beam splitter of transmittance eta, thermal environment N
    AMP = "amp"            # two-mode squeezer of gain g, thermal environment N
    NOISE = "noise"        # classical additive noise, n added thermal photons
    CONJ = "conj"          # phase-conjugating amplifier (output on the idler mode)

    @classmethod
    def parse(cls, text: str) -> "Family":
        aliases = {
            "lossy": cls.LOSSY, "loss": cls.LOSSY, "e": cls.LOSSY,
            "amp": cls.AMP, "amplifier": cls.AMP, "a": cls.AMP,
            "noise": cls.NOISE, "additive": cls.NOISE, "n": cls.NOISE,
            "conj": cls.CONJ, "conjugate": cls.CONJ, "atilde": cls.CONJ,
        }
        key = text.strip().lower()
        if key not in aliases:
            raise DomainError("family", text, f"one of {sorted(set(aliases))}")
        return aliases[key]


@dataclass(frozen=True)
class ChannelSpec:
    """A validated channel instance.

    Only the fields relevant to the family are set; the rest stay None.
    thermal_N is the mean photon number of the environment mode and enters
    the parameter table through y = N/(N+1), so 0 <= y < 1 always.
    """

    family: Family
    eta: Optional[float] = None        # transmittance, LOSSY only, in [0, 1]
    g: Optional[float] = None          # gain, AMP/CONJ only, >= 1
    thermal_N: Optional[float] = None  # environment mean photon number, >= 0
    added_n: Optional[float] = None    # added classical noise photons, NOISE only

    @property
    def y(self) -> float:
        N = self.thermal_N or 0.0
        return N / (N + 1.0)

    def label(self) -> str:
        if self.family is Family.LOSSY:
            return f"lossy(eta={self.eta:g},N={self.thermal_N:g})"
        if self.family is Family.AMP:
            return f"amp(g={self.g:g},N={self.thermal_N:g})"
        if self.family is Family.CONJ:
            return f"conj(g={self.g:g},N={self.thermal_N:g})"
        return f"noise(n={self.added_n:g})"

    def to_json_dict(self) -> dict:
        """Flat record with the CLI flag names: family, eta, g, N, n."""
        out = {"family": self.family.value}
        for key, attr in (("eta", "eta"), ("g", "g"), ("N", "thermal_N"),
                          ("n", "added_n")):
            value = getattr(self, attr)
            if value is not None:
                out[key] = value
        return out


@dataclass(frozen=True)
class ChannelParams:
    """The generating-function four-tuple plus the derived nu = gamma + beta*alpha."""

    alpha: float
    beta: float
    gamma: float
    chi: float
    nu: float

    def to_json_dict(self) -> dict:
        return {
            "alpha": self.alpha, "beta": self.beta, "gamma": self.gamma,
            "chi": self.chi, "nu": self.nu,
        }


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the parameter identity and sign checks."""

    checks: dict
    ok: bool
    notes: tuple

    def to_json_dict(self) -> dict:
        return {"checks": self.checks, "ok": self.ok, "notes": list(self.notes)}


def _require(name, value, ok, requirement):
    if value is None or not math.isfinite(value) or not ok:
        raise DomainError(name, value, requirement)


def make_channel(family, eta=None, g=None, thermal_N=None, added_n=None) -> ChannelSpec:
    """Validate native parameters and build a ChannelSpec.

    Raises DomainError naming the offending parameter. Boundary values
    (eta=1, g=1, added_n=0) are admitted and give the identity channel,
    except for the conjugating family where g=1 replaces the input with
    the environment state (flagged by validate_params).
    """
    if not isinstance(family, Family):
        family = Family.parse(str(family))

    if family is Family.LOSSY:
        _require("eta", eta, eta is not None and 0.0 <= eta <= 1.0, "0 <= eta <= 1")
        N = 0.0 if thermal_N is None else thermal_N
        _require("thermal_N", N, N >= 0.0, "thermal_N >= 0")
        return ChannelSpec(family, eta=float(eta), thermal_N=float(N))

    if family in (Family.AMP, Family.CONJ):
        _require("g", g, g is not None and g >= 1.0, "g >= 1")
        N = 0.0 if thermal_N is None else thermal_N
        _require("thermal_N", N, N >= 0.0, "thermal_N >= 0")
        return ChannelSpec(family, g=float(g), thermal_N=float(N))

    _require("added_n", added_n, added_n is not None and added_n >= 0.0, "added_n >= 0")
    return ChannelSpec(family, added_n=float(added_n))


def abgx(spec: ChannelSpec) -> ChannelParams:
    """Evaluate the parameter table row for the given channel.

    With y = N/(N+1):

        lossy:  alpha = (1-eta)/(1-eta*y)   beta = y*(1-eta)/(1-eta*y)
                gamma = (eta-y)/(1-eta*y)   chi  = (1-y)/(1-eta*y)
        amp:    alpha = y*(g-1)/(g-y)       beta = (g-1)/(g-y)
                gamma = (1-g*y)/(g-y)       chi  = (1-y)/(g-y)
        noise:  alpha = n/(n+1)             beta = n/(n+1)
                gamma = (1-n)/(n+1)         chi  = 1/(n+1)
        conj:   alpha = (g*y-y+1)/g         beta = (g+y-1)/g
                gamma = -y                  chi  = (1-y)/g
    """
    y = spec.y
    if spec.family is Family.LOSSY:
        eta = spec.eta
        d = 1.0 - eta * y
        alpha = (1.0 - eta) / d
        beta = y * (1.0 - eta) / d
        gamma = (eta - y) / d
        chi = (1.0 - y) / d
    elif spec.family is Family.AMP:
        g = spec.g
        d = g - y
        alpha = y * (g - 1.0) / d
        beta = (g - 1.0) / d
        gamma = (1.0 - g * y) / d
        chi = (1.0 - y) / d
    elif spec.family is Family.NOISE:
        n = spec.added_n
        alpha = n / (n + 1.0)
        beta = n / (n + 1.0)
        gamma = (1.0 - n) / (n + 1.0)
        chi = 1.0 / (n + 1.0)
    else:
        g = spec.g
        alpha = (g * y - y + 1.0) / g
        beta = (g + y - 1.0) / g
        gamma = -y
        chi = (1.0 - y) / g
    return ChannelParams(alpha, beta, gamma, chi, nu=gamma + beta * alpha)


def validate_params(p: ChannelParams, tol: float = 1e-14,
                    spec: Optional[ChannelSpec] = None) -> ValidationReport:
    """Check the two affine identities and the sign conditions.

    Each entry of the report maps a check name to (passed, residual).
    Sign conditions get 1e-15 slack on top of tol-free exact bounds.
    """
    slack = 1e-15
    checks = {
        "alpha+beta+gamma=1": (abs(p.alpha + p.beta + p.gamma - 1.0) <= tol,
                               p.alpha + p.beta + p.gamma - 1.0),
        "beta+chi=1": (abs(p.beta + p.chi - 1.0) <= tol, p.beta + p.chi - 1.0),
        "nu=gamma+beta*alpha": (abs(p.nu - (p.gamma + p.beta * p.alpha)) <= tol,
                                p.nu - (p.gamma + p.beta * p.alpha)),
        "alpha>=0": (p.alpha >= -slack, p.alpha),
        "0<=beta<1": (-slack <= p.beta < 1.0, p.beta),
        "nu>=0": (p.nu >= -slack, p.nu),
        "0<chi<=1": (slack < p.chi <= 1.0 + slack, p.chi),
    }
    notes = []
    if spec is not None and spec.family is Family.CONJ and spec.g == 1.0:
        notes.append("conj family at g=1: every input is replaced by the "
                     "environment thermal state (nu=0, all output rows equal)")
    ok = all(passed for passed, _ in checks.values())
    return ValidationReport(checks=checks, ok=ok, notes=tuple(notes))


class LimitRoute(str, enum.Enum):
    """How to realize added classical noise as a limit of the other families."""

    VIA_LOSS = "loss"   # eta = 1 - eps, N = n/eps
    VIA_AMP = "amp"     # g = 1 + eps, N = n/eps


def noise_limit_params(n: float, eps: float, route: LimitRoute) -> ChannelParams:
    """Parameters of the added-noise channel approached through a weak-coupling
    limit: transmittance 1-eps (or gain 1+eps) with environment N = n/eps.

    Converges linearly in eps to the direct added-noise row; exists for
    validating that row, which production code evaluates directly.
    """
    if not (0.0 < eps < 1.0):
        raise DomainError("eps", eps, "0 < eps < 1")
    if n < 0.0:
        raise DomainError("n", n, "n >= 0")
    route = LimitRoute(route)
    if route is LimitRoute.VIA_LOSS:
        return abgx(make_channel(Family.LOSSY, eta=1.0 - eps, thermal_N=n / eps))
    return abgx(make_channel(Family.AMP, g=1.0 + eps, thermal_N=n / eps))
