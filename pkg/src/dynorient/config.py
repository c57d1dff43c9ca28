"""Engine configuration: tunables, named presets, and exact guard arithmetic.

Every runtime comparison the engines make is integer arithmetic derived from
the slack ratio eta/b, which is stored as an exact ``Fraction``.  Presets whose
published formulas involve ln N rationalize it once at construction; after
that nothing in the package touches floating point on a decision path.

The named presets trade orientation quality against work per update:

==================== ===== ==== =======================================
preset               theta b    character
==================== ===== ==== =======================================
simple-additive      1     1    exact degrees, additive +2 slack
simple-multiplicative 0    10   exact degrees, multiplicative slack
fast-additive        1     6    perceived degrees, round-robin updates
fast-multiplicative  0     12   perceived degrees, multiplicative slack
eps-density          0     f(ε) fast-multiplicative tuned so that the
                                 degree/b ratio tracks the maximum
                                 subgraph density within (1+ε)
==================== ===== ==== =======================================

The theory behind the multiplicative presets permits far larger eta and b
than the defaults here; those values cost orders of magnitude more work per
update for no observable gain at the scales this artifact targets, so the
defaults are chosen for practical replay speed and every constructor accepts
overrides.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from .errors import ConfigError

PRESET_SIMPLE_ADDITIVE = "simple-additive"
PRESET_SIMPLE_MULTIPLICATIVE = "simple-multiplicative"
PRESET_FAST_ADDITIVE = "fast-additive"
PRESET_FAST_MULTIPLICATIVE = "fast-multiplicative"
PRESET_EPS_DENSITY = "eps-density"
PRESET_CUSTOM = "custom"

PRESETS = (
    PRESET_SIMPLE_ADDITIVE,
    PRESET_SIMPLE_MULTIPLICATIVE,
    PRESET_FAST_ADDITIVE,
    PRESET_FAST_MULTIPLICATIVE,
    PRESET_EPS_DENSITY,
)

#: Presets driven by the basic (exact-degree) engine.
BASIC_PRESETS = (PRESET_SIMPLE_ADDITIVE, PRESET_SIMPLE_MULTIPLICATIVE)


def _rationalize(x, max_denominator: int = 10**6) -> Fraction:
    """Turn a parameter into an exact Fraction.

    Floats (e.g. 1/(2 ln N)) are snapped to a nearby rational once; from then
    on all comparisons involving the value are exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(x).limit_denominator(max_denominator)


class OrientationConfig:
    """All tunables for one engine instance, frozen at construction.

    Parameters
    ----------
    capacity:
        Fixed number of vertices N.  Vertex ids are 0..N-1; the vertex set
        never grows (parameter formulas depend on ln N).
    eta:
        Invariant slack numerator; eta/b is the multiplicative slack.
    b:
        Edge duplication count: every simple edge is maintained as b
        oriented copies.
    gamma:
        Growth parameter for the threshold-set construction used by the
        density layer and the structural out-degree bound.
    theta:
        0 for the purely multiplicative invariant, 1 for the additive one.
        The additive constant in the maintained invariant is c = 2*theta.
    epsilon:
        Target density approximation; only set by the eps-density preset.
    """

    __slots__ = (
        "capacity", "eta", "b", "gamma", "theta", "epsilon", "preset",
        "slack", "rr_width", "c",
        "_g_lhs", "_g_rhs", "_g_add",
        "_f_lhs", "_f_rhs", "_f_add",
        "_bucket_thresholds",
    )

    def __init__(self, capacity: int, eta, b: int, gamma, theta: int,
                 epsilon=None, preset: str = PRESET_CUSTOM):
        if capacity < 2:
            raise ConfigError("capacity must be at least 2")
        if theta not in (0, 1):
            raise ConfigError("theta must be 0 or 1")
        if b < 1:
            raise ConfigError("b must be a positive integer")
        eta = _rationalize(eta)
        gamma = _rationalize(gamma)
        if eta <= 0:
            raise ConfigError("eta must be positive")
        if gamma <= 0:
            raise ConfigError("gamma must be positive")
        slack = eta / b
        if slack >= 1:
            raise ConfigError(f"eta/b must be < 1 (got {slack})")
        if theta == 0:
            # Multiplicative invariant: a single edge between fresh vertices
            # forces a ceil(b/2)/floor(b/2) copy split, which only satisfies
            # the invariant when eta exceeds 2 and b is even.
            if eta <= 2:
                raise ConfigError("theta=0 requires eta > 2")
            if b < 2 or b % 2:
                raise ConfigError("theta=0 requires an even b >= 2")
        if epsilon is not None:
            epsilon = _rationalize(epsilon)
            if not (0 < epsilon < 1):
                raise ConfigError("epsilon must lie in (0, 1)")

        self.capacity = capacity
        self.eta = eta
        self.b = b
        self.gamma = gamma
        self.theta = theta
        self.epsilon = epsilon
        self.preset = preset
        self.slack = slack
        self.c = 2 * theta
        # Round-robin width: ceil(128 / (eta/b)).
        p, q = slack.numerator, slack.denominator
        self.rr_width = -((-128 * q) // p)

        # Integer guard constants.  The basic engines test
        #   d(u)+1 > (1 + eta/b) * d(x) + 2*theta
        # which with slack = p/q becomes
        #   (d(u)+1)*q > (q+p)*d(x) + 2*theta*q.
        self._g_lhs = q
        self._g_rhs = q + p
        self._g_add = 2 * theta * q
        # The fast engines use half the slack and a +theta term:
        #   (d(u)+1)*2q > (2q+p)*d(x) + theta*2q.
        self._f_lhs = 2 * q
        self._f_rhs = 2 * q + p
        self._f_add = theta * 2 * q

        self._bucket_thresholds: Optional[list] = None

    # ------------------------------------------------------------------
    # Invariant checks shared by audits (exact rational comparisons).
    # ------------------------------------------------------------------

    def invariant_ok(self, d_tail: int, d_head: int) -> bool:
        """Terminal invariant for a directed copy tail->head:
        d(tail) <= (1 + eta/b) * d(head) + 2*theta."""
        return d_tail * self._g_lhs <= self._g_rhs * d_head + self._g_add

    # ------------------------------------------------------------------
    # Geometric bucketing (fast mode only).
    # ------------------------------------------------------------------

    def bucket_thresholds(self) -> list:
        """Integer lower boundaries of the geometric degree buckets.

        thresholds[j] is the smallest integer d with d >= (1 + slack/64)^j,
        computed with exact rational powers so bucket boundaries never
        flicker.  The table covers every degree reachable under the fixed
        capacity (d <= (N-1)*b).
        """
        if self._bucket_thresholds is None:
            base = 1 + self.slack / 64
            num, den = base.numerator, base.denominator
            limit = (self.capacity - 1) * self.b + 1
            thresholds = [1]
            pn, pd = num, den  # exact value of base^j
            while True:
                t = -((-pn) // pd)  # ceil(pn/pd)
                if t > limit:
                    break
                thresholds.append(t)
                pn *= num
                pd *= den
            self._bucket_thresholds = thresholds
        return self._bucket_thresholds

    def bucket_index(self, d: int) -> int:
        """Bucket j with (1+slack/64)^j <= d < (1+slack/64)^(j+1).

        Zero maps to the reserved sentinel index -1; the geometric buckets
        start at d = 1.
        """
        if d <= 0:
            return -1
        thresholds = self.bucket_thresholds()
        # thresholds is sorted; find rightmost threshold <= d.
        lo, hi = 0, len(thresholds)
        while lo < hi:
            mid = (lo + hi) // 2
            if thresholds[mid] <= d:
                lo = mid + 1
            else:
                hi = mid
        return lo - 1

    # ------------------------------------------------------------------
    # Presets.
    # ------------------------------------------------------------------

    @classmethod
    def simple_additive(cls, capacity: int, gamma=1) -> "OrientationConfig":
        """Additive invariant on the plain graph: b = 1, eta = 1/(2 ln N)."""
        eta = _rationalize(1.0 / (2.0 * math.log(capacity)))
        cfg = cls(capacity, eta, 1, gamma, theta=1,
                  preset=PRESET_SIMPLE_ADDITIVE)
        cfg._check_log_bound(factor=1)
        return cfg

    @classmethod
    def simple_multiplicative(cls, capacity: int, eta=4, b: int = 10,
                              gamma=1) -> "OrientationConfig":
        """Multiplicative invariant with exact degrees.

        Defaults keep replay practical; the published analysis allows any
        eta > 2 with eta/b inversely proportional to ln N.
        """
        return cls(capacity, eta, b, gamma, theta=0,
                   preset=PRESET_SIMPLE_MULTIPLICATIVE)

    @classmethod
    def fast_additive(cls, capacity: int, gamma=1) -> "OrientationConfig":
        """Additive invariant with perceived degrees: b = 6 and the largest
        eta with eta/b < 1/(ln N * max(1/gamma, 1))."""
        gamma_f = _rationalize(gamma)
        log_n = _rationalize(math.log(capacity))
        bound = 1 / (log_n * max(1 / gamma_f, Fraction(1)))
        b = 6
        eta = b * bound * Fraction(99, 100)
        cfg = cls(capacity, eta, b, gamma_f, theta=1,
                  preset=PRESET_FAST_ADDITIVE)
        cfg._check_log_bound(factor=1)
        return cfg

    @classmethod
    def fast_multiplicative(cls, capacity: int, eta=4, b: int = 12,
                            gamma=1) -> "OrientationConfig":
        """Multiplicative invariant with perceived degrees."""
        return cls(capacity, eta, b, gamma, theta=0,
                   preset=PRESET_FAST_MULTIPLICATIVE)

    @classmethod
    def eps_density(cls, capacity: int, epsilon, eta=4) -> "OrientationConfig":
        """Fast-multiplicative tuned so b * max-out-degree tracks the maximum
        subgraph density within a factor (1+epsilon).

        With eps' = epsilon/10 we take gamma = eps' and the smallest even b
        with eta/b <= eps'.  The resulting estimate ratio is at most
        (1+gamma)*(1+eta/b)^k <= (1+eps')^(k+1) where k is the realized
        threshold index of the extraction, so the (1+epsilon) envelope holds
        whenever k+1 <= ln(1+eps)/ln(1+eps'); the density layer asserts the
        envelope directly.
        """
        epsilon = _rationalize(epsilon)
        if not (0 < epsilon < 1):
            raise ConfigError("epsilon must lie in (0, 1)")
        eps_prime = epsilon / 10
        eta = _rationalize(eta)
        b = math.ceil(eta / eps_prime)
        if b % 2:
            b += 1
        return cls(capacity, eta, b, eps_prime, theta=0, epsilon=epsilon,
                   preset=PRESET_EPS_DENSITY)

    @classmethod
    def from_preset(cls, preset: str, capacity: int,
                    epsilon=None) -> "OrientationConfig":
        """Build a preset by name (CLI entry point)."""
        if preset == PRESET_SIMPLE_ADDITIVE:
            return cls.simple_additive(capacity)
        if preset == PRESET_SIMPLE_MULTIPLICATIVE:
            return cls.simple_multiplicative(capacity)
        if preset == PRESET_FAST_ADDITIVE:
            return cls.fast_additive(capacity)
        if preset == PRESET_FAST_MULTIPLICATIVE:
            return cls.fast_multiplicative(capacity)
        if preset == PRESET_EPS_DENSITY:
            if epsilon is None:
                raise ConfigError("eps-density requires epsilon")
            return cls.eps_density(capacity, epsilon)
        raise ConfigError(f"unknown preset {preset!r}")

    def _check_log_bound(self, factor: int) -> None:
        # Additive presets keep eta/b < 1/(factor * ln N * max(1/gamma, 1)).
        log_n = _rationalize(math.log(self.capacity))
        bound = 1 / (factor * log_n * max(1 / self.gamma, Fraction(1)))
        if not self.slack < bound:
            raise ConfigError(
                f"eta/b = {self.slack} violates the {self.preset} bound {bound}")

    def is_fast(self) -> bool:
        return self.preset not in BASIC_PRESETS

    def __repr__(self) -> str:
        return (f"OrientationConfig(preset={self.preset!r}, N={self.capacity}, "
                f"eta={self.eta}, b={self.b}, gamma={self.gamma}, "
                f"theta={self.theta}, epsilon={self.epsilon})")
