"""Step-like potentials: hyperbolic tangent and alpha-attractor."""

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PotentialKind",
    "PotentialSpec",
    "Thresholds",
    "tanh_potential",
    "alpha_attractor",
    "evaluate",
    "asymptotic_limits",
    "thresholds",
    "saturation_length",
    "SATURATION_ARGUMENT",
]

# |tanh(s)| is within 2e-13 of 1 for s >= 15
SATURATION_ARGUMENT = 15.0


class PotentialKind(enum.Enum):
    HYPERBOLIC_TANGENT = "tanh"
    ALPHA_ATTRACTOR = "alpha"


@dataclass(frozen=True)
class PotentialSpec:
    """A potential of one of the two supported families.

    ``tanh``:   V(x) = a tanh(b x),          b > 0 sets the smoothness.
    ``alpha``:  V(x) = a exp(-b tanh(c x)),  b is the amplitude exponent,
                c > 0 the smoothness.
    """

    kind: PotentialKind
    a: float
    b: float
    c: float | None = None

    def __post_init__(self):
        kind = PotentialKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is PotentialKind.HYPERBOLIC_TANGENT:
            if not self.b > 0:
                raise ValueError(f"tanh potential needs b > 0, got b={self.b!r}")
            if self.c is not None:
                raise ValueError("tanh potential takes no c parameter")
        else:
            if self.c is None or not self.c > 0:
                raise ValueError(f"alpha-attractor needs c > 0, got c={self.c!r}")

    @property
    def smoothness(self):
        """Inverse length multiplying x inside the tanh."""
        return self.b if self.kind is PotentialKind.HYPERBOLIC_TANGENT else self.c

    def __call__(self, x):
        return evaluate(self, x)

    def as_dict(self):
        return {"kind": self.kind.value, "a": self.a, "b": self.b, "c": self.c}


def tanh_potential(a=5.0, b=1.0):
    return PotentialSpec(PotentialKind.HYPERBOLIC_TANGENT, float(a), float(b))


def alpha_attractor(a=-5.0, b=1.0, c=1.0):
    return PotentialSpec(PotentialKind.ALPHA_ATTRACTOR, float(a), float(b), float(c))


def evaluate(spec, x):
    """V(x); ``x`` may be a scalar or an array."""
    if spec.kind is PotentialKind.HYPERBOLIC_TANGENT:
        return spec.a * np.tanh(spec.b * x)
    return spec.a * np.exp(-spec.b * np.tanh(spec.c * x))


def asymptotic_limits(spec):
    """Return ``(V_L, V_R)``, the limits of V at -inf and +inf."""
    if spec.kind is PotentialKind.HYPERBOLIC_TANGENT:
        return -spec.a, spec.a
    return spec.a * math.exp(spec.b), spec.a * math.exp(-spec.b)


@dataclass(frozen=True)
class Thresholds:
    """Relativistic thresholds V_L +- m and V_R +- m."""

    v_l: float
    v_r: float
    e_vl_minus: float
    e_vl_plus: float
    e_vr_minus: float
    e_vr_plus: float

    @property
    def mass(self):
        return 0.5 * (self.e_vl_plus - self.e_vl_minus)

    def sorted(self):
        return tuple(sorted((self.e_vl_minus, self.e_vl_plus, self.e_vr_minus, self.e_vr_plus)))


def thresholds(spec, m):
    if not m > 0:
        raise ValueError(f"mass must be positive, got {m!r}")
    v_l, v_r = asymptotic_limits(spec)
    return Thresholds(v_l, v_r, v_l - m, v_l + m, v_r - m, v_r + m)


def saturation_length(spec):
    """Half-width L beyond which V sits on its asymptotes to ~1e-13 relative."""
    return SATURATION_ARGUMENT / spec.smoothness
