"""Control functions and exact comparisons against them.

A control function here is piecewise linear through rational knots
``(0, 0) = (x_0, y_0), ..., (x_m, y_m)`` and, for ``x >= x_m``, a logarithmic
tail

    F(x) = p * ln(q*x + r) + s,    s = s_rat + sum(c_i * ln(a_i))

with every parameter rational.  The constant ``s`` is kept symbolic, so
``F(x_m)`` can cancel exactly against the last knot.

Comparing an integer ``d`` with ``F(n)`` on the tail reduces to comparing
``exp(K)`` with a rational ``R``: with ``D`` a common denominator of ``p`` and
the ``c_i``,

    d >= F(n)  <=>  exp(D*(d - s_rat)) >= (q*n + r)**(D*p) * prod(a_i**(D*c_i)).

When ``K = D*(d - s_rat)`` is zero both sides are rational; otherwise
``exp(K)`` is transcendental and never equals ``R``, so interval refinement
terminates.  Intervals come from MPFR with directed rounding.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import gmpy2

from .errors import UndecidableComparison

__all__ = [
    "Comparison",
    "LogTerm",
    "LogTail",
    "ControlFunction",
    "CertifiedInterval",
    "ValidationCheck",
    "ValidationReport",
    "reference_F",
    "eval_bounds",
    "compare_delta_F",
    "compare_exact",
    "validate_control_function",
    "inverse_bound",
    "max_size_for_delta",
    "required_delta",
    "is_concave",
]

MAX_PRECISION = 1 << 16
DEFAULT_HORIZON = 10_000


class Comparison(enum.Enum):
    GE = "GE"
    LT = "LT"


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("control function parameters must be exact rationals, not floats")
    return Fraction(x)


@dataclass(frozen=True)
class LogTerm:
    """``coef * ln(arg)``."""

    coef: Fraction
    arg: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coef", _q(self.coef))
        object.__setattr__(self, "arg", _q(self.arg))
        if self.arg <= 0:
            raise ValueError("logarithm argument must be positive")


@dataclass(frozen=True)
class LogTail:
    p: Fraction
    q: Fraction
    r: Fraction
    s_rational: Fraction = Fraction(0)
    s_logs: tuple[LogTerm, ...] = ()

    def __post_init__(self):
        for name in ("p", "q", "r", "s_rational"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        object.__setattr__(self, "s_logs", tuple(self.s_logs))


@dataclass(frozen=True)
class ControlFunction:
    knots: tuple[tuple[Fraction, Fraction], ...]
    tail: LogTail
    name: str = ""

    def __post_init__(self):
        knots = tuple((_q(x), _q(y)) for x, y in self.knots)
        if not knots:
            raise ValueError("at least one knot is required")
        if any(b[0] <= a[0] for a, b in zip(knots, knots[1:])):
            raise ValueError("knot abscissae must be strictly increasing")
        object.__setattr__(self, "knots", knots)

    @property
    def tail_start(self) -> Fraction:
        return self.knots[-1][0]

    def is_reference(self) -> bool:
        return self == reference_F()

    def linear_value(self, x: Fraction) -> Fraction:
        """Exact value on the piecewise-linear part (``x <= tail_start``)."""
        x = _q(x)
        ks = self.knots
        if x < ks[0][0] or x > ks[-1][0]:
            raise ValueError(f"{x} is outside the linear part")
        for (x0, y0), (x1, y1) in zip(ks, ks[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        return ks[-1][1]

    # -- serialisation ---------------------------------------------------

    def to_dict(self) -> dict:
        t = self.tail
        s_terms = [{"kind": "rational", "value": str(t.s_rational)}]
        s_terms += [{"kind": "log", "coef": str(term.coef), "arg": str(term.arg)} for term in t.s_logs]
        return {
            "name": self.name,
            "knots": [[str(x), str(y)] for x, y in self.knots],
            "tail": {"p": str(t.p), "q": str(t.q), "r": str(t.r), "s": s_terms},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> ControlFunction:
        tail = data["tail"]
        s_rat = Fraction(0)
        logs = []
        for term in tail.get("s", []):
            kind = term.get("kind")
            if kind == "rational":
                s_rat += Fraction(term["value"])
            elif kind == "log":
                logs.append(LogTerm(Fraction(term["coef"]), Fraction(term["arg"])))
            else:
                raise ValueError(f"unknown constant kind {kind!r}")
        return cls(
            knots=tuple((Fraction(x), Fraction(y)) for x, y in data["knots"]),
            tail=LogTail(Fraction(tail["p"]), Fraction(tail["q"]), Fraction(tail["r"]), s_rat, tuple(logs)),
            name=data.get("name", ""),
        )

    @classmethod
    def from_json(cls, text: str) -> ControlFunction:
        return cls.from_dict(json.loads(text))


@lru_cache(maxsize=None)
def reference_F() -> ControlFunction:
    """Piecewise linear through (0,0), (1,2), (2,3); then
    ``1/4 ln(8x+1) + 3 - 1/4 ln 17``."""
    return ControlFunction(
        knots=((Fraction(0), Fraction(0)), (Fraction(1), Fraction(2)), (Fraction(2), Fraction(3))),
        tail=LogTail(Fraction(1, 4), Fraction(8), Fraction(1), Fraction(3), (LogTerm(Fraction(-1, 4), Fraction(17)),)),
        name="reference",
    )


# -- certified arithmetic ----------------------------------------------------


@dataclass(frozen=True)
class CertifiedInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= _q(x) <= self.hi

    def __add__(self, other: CertifiedInterval) -> CertifiedInterval:
        return CertifiedInterval(self.lo + other.lo, self.hi + other.hi)

    def scale(self, c: Fraction) -> CertifiedInterval:
        return CertifiedInterval(c * self.lo, c * self.hi) if c >= 0 else CertifiedInterval(c * self.hi, c * self.lo)

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)


def _mpfr_to_q(x) -> Fraction:
    return Fraction(*x.as_integer_ratio())


def _log_int(n: int, prec: int, up: bool) -> Fraction:
    ctx = gmpy2.context(precision=prec, round=gmpy2.RoundUp if up else gmpy2.RoundDown)
    with ctx:
        return _mpfr_to_q(gmpy2.log(gmpy2.mpfr(n)))


def log_bounds(x: Fraction, prec: int) -> CertifiedInterval:
    """Enclosure of ``ln(x)`` for rational ``x > 0``."""
    x = _q(x)
    if x <= 0:
        raise ValueError("log of a non-positive number")
    if x == 1:
        return CertifiedInterval(Fraction(0), Fraction(0))
    num, den = x.numerator, x.denominator
    lo = _log_int(num, prec, up=False) - (_log_int(den, prec, up=True) if den != 1 else 0)
    hi = _log_int(num, prec, up=True) - (_log_int(den, prec, up=False) if den != 1 else 0)
    return CertifiedInterval(lo, hi)


def exp_bounds(k: Fraction, prec: int) -> CertifiedInterval:
    """Enclosure of ``exp(k)`` for rational ``k``."""
    k = _q(k)
    if k == 0:
        return CertifiedInterval(Fraction(1), Fraction(1))
    out = []
    for mode in (gmpy2.RoundDown, gmpy2.RoundUp):
        with gmpy2.context(precision=prec, round=mode):
            arg = gmpy2.mpfr(k.numerator) / gmpy2.mpfr(k.denominator)
            out.append(_mpfr_to_q(gmpy2.exp(arg)))
    return CertifiedInterval(out[0], out[1])


def _tail_bounds(F: ControlFunction, x: Fraction, prec: int) -> CertifiedInterval:
    t = F.tail
    iv = log_bounds(t.q * x + t.r, prec).scale(t.p)
    iv = iv + CertifiedInterval(t.s_rational, t.s_rational)
    for term in t.s_logs:
        iv = iv + log_bounds(term.arg, prec).scale(term.coef)
    return iv


def eval_bounds(F: ControlFunction, x, precision_bits: int = 53) -> CertifiedInterval:
    """An interval of width at most ``2**-precision_bits`` containing F(x)."""
    x = _q(x)
    if x < 0:
        raise ValueError("control functions are defined on x >= 0")
    if x <= F.tail_start:
        v = F.linear_value(x)
        return CertifiedInterval(v, v)
    target = Fraction(1, 1 << precision_bits)
    prec = precision_bits + 16
    while True:
        iv = _tail_bounds(F, x, prec)
        if iv.width <= target:
            return iv
        prec *= 2
        if prec > MAX_PRECISION:
            raise UndecidableComparison("could not reach the requested width")


def _exponential_form(F: ControlFunction, delta: Fraction, x: Fraction) -> tuple[Fraction, Fraction]:
    """(K, R) with ``delta >= F(x)`` iff ``exp(K) >= R`` on the tail."""
    t = F.tail
    coefs = [t.p] + [term.coef for term in t.s_logs]
    D = math.lcm(*(c.denominator for c in coefs))
    R = Fraction(1)
    for base, c in [(t.q * x + t.r, t.p)] + [(term.arg, term.coef) for term in t.s_logs]:
        e = int(c * D)
        R *= base ** e
    K = D * (delta - t.s_rational)
    return K, R


def _sign_exp_vs(K: Fraction, R: Fraction) -> int:
    """Sign of exp(K) - R, exactly."""
    if K == 0:
        return (Fraction(1) > R) - (Fraction(1) < R)
    if R <= 0:
        return 1
    prec = 64
    while prec <= MAX_PRECISION:
        iv = exp_bounds(K, prec)
        if iv.lo > R:
            return 1
        if iv.hi < R:
            return -1
        prec *= 2
    raise UndecidableComparison(f"exp({K}) vs {R} unresolved at {MAX_PRECISION} bits")


def _reference_sign(delta: int, n: int) -> int:
    # 17 * exp(4(delta - 3)) vs 8n + 1
    return _sign_exp_vs(Fraction(4 * (delta - 3)), Fraction(8 * n + 1, 17))


def compare_exact(delta, x, F: ControlFunction) -> int:
    """Sign of ``delta - F(x)``: -1, 0 or 1, decided exactly."""
    delta, x = _q(delta), _q(x)
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x <= F.tail_start:
        v = F.linear_value(x)
        return (delta > v) - (delta < v)
    if F is _REF or F == _REF:
        if delta.denominator == 1 and x.denominator == 1:
            return _reference_sign(int(delta), int(x))
    K, R = _exponential_form(F, delta, x)
    return _sign_exp_vs(K, R)


def compare_delta_F(delta: int, n: int, F: ControlFunction) -> Comparison:
    """GE iff ``delta >= F(n)``.  Never rounds: knife-edge inputs either
    resolve exactly or raise :class:`UndecidableComparison`."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Comparison.GE if compare_exact(delta, n, F) >= 0 else Comparison.LT


def inverse_bound(F: ControlFunction, y: int) -> int:
    """Least integer ``m >= 0`` with ``F(m) >= y``, so ``F^{-1}(y) <= m``.

    F is increasing, so the scan over ``m`` is done by doubling then
    bisection on the sign of ``y - F(m)``.
    """
    if y < 0:
        raise ValueError("y must be nonnegative")

    def ok(m: int) -> bool:
        return compare_exact(y, m, F) <= 0

    if ok(0):
        return 0
    lo, hi = 0, 1
    while not ok(hi):
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def max_size_for_delta(F: ControlFunction, d: int) -> int:
    """Largest ``n >= 0`` with ``F(n) <= d``; -1 when ``d < F(0)``."""
    if compare_exact(d, 0, F) < 0:
        return -1
    lo, hi = 0, 1
    while compare_exact(d, hi, F) >= 0:
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if compare_exact(d, mid, F) >= 0:
            lo = mid
        else:
            hi = mid
    return lo


@lru_cache(maxsize=4096)
def required_delta(F: ControlFunction, n: int) -> int:
    """Least integer ``d`` with ``d >= F(n)``."""
    d = math.floor(float(eval_bounds(F, n, 40).lo))
    while compare_exact(d, n, F) < 0:
        d += 1
    while compare_exact(d - 1, n, F) >= 0:
        d -= 1
    return d


# -- validation ----------------------------------------------------------------


@dataclass(frozen=True)
class ValidationCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list[ValidationCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(ValidationCheck(name, bool(passed), detail))

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks]}


def _slopes(F: ControlFunction) -> list[Fraction]:
    return [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(F.knots, F.knots[1:])]


def _tail_slope_at(F: ControlFunction, x: Fraction) -> Fraction:
    t = F.tail
    return t.p * t.q / (t.q * x + t.r)


def _tail_well_formed(F: ControlFunction) -> bool:
    t = F.tail
    return t.q >= 0 and t.q * F.tail_start + t.r > 0


def is_concave(F: ControlFunction) -> bool:
    """Right derivative nonincreasing everywhere (decided symbolically)."""
    if not _tail_well_formed(F):
        return False
    slopes = _slopes(F)
    if any(b > a for a, b in zip(slopes, slopes[1:])):
        return False
    t = F.tail
    if t.p * t.q < 0:
        return False
    return not slopes or _tail_slope_at(F, F.tail_start) <= slopes[-1]


def _continuous_at_tail(F: ControlFunction) -> bool:
    if not _tail_well_formed(F):
        return False
    x0, y0 = F.knots[-1]
    return compare_exact_tail(y0, x0, F) == 0


def compare_exact_tail(delta, x, F: ControlFunction) -> int:
    """Sign of ``delta - tail(x)``, evaluating the tail formula even at the
    junction with the linear part."""
    K, R = _exponential_form(F, _q(delta), _q(x))
    return _sign_exp_vs(K, R)


def validate_control_function(F: ControlFunction, horizon: int = DEFAULT_HORIZON) -> ValidationReport:
    """Check the hypotheses a control function must satisfy.

    Conditions on the closed-form tail (monotonicity, concavity, the
    derivative bound ``F'(x) <= 2/(8x+1)`` for ``x >= 2``) are decided
    symbolically; the integer-sample checks up to ``horizon`` use certified
    intervals and can only refute, never prove.
    """
    rep = ValidationReport()
    t = F.tail
    rep.add("F(0)=0", F.knots[0] == (0, 0), f"first knot {F.knots[0]}")
    for x, y in ((1, 2), (2, 3)):
        try:
            s = compare_exact(y, x, F)
        except ValueError as exc:
            rep.add(f"F({x})={y}", False, str(exc))
        else:
            rep.add(f"F({x})={y}", s == 0, "" if s == 0 else f"F({x}) {'<' if s > 0 else '>'} {y}")
    rep.add("tail well-formed", _tail_well_formed(F), "q >= 0 and q*x0 + r > 0")
    rep.add("continuous at tail start", _tail_well_formed(F) and _continuous_at_tail(F))

    slopes = _slopes(F)
    inc_sym = all(s > 0 for s in slopes) and t.p > 0 and t.q > 0
    rep.add("strictly increasing (symbolic)", inc_sym, f"slopes={[str(s) for s in slopes]}, p*q={t.p * t.q}")
    rep.add("unbounded", t.p > 0 and t.q > 0)

    prev = None
    bad = None
    for n in range(horizon + 1):
        iv = eval_bounds(F, n, 60)
        if prev is not None and not iv.lo > prev.hi:
            bad = n
            break
        prev = iv
    rep.add("strictly increasing on integers", bad is None, "" if bad is None else f"fails between {bad - 1} and {bad}")

    rep.add("right derivative decreasing (symbolic)", is_concave(F), f"slopes={[str(s) for s in slopes]}")
    bad = None
    vals = [eval_bounds(F, n, 60) for n in range(min(horizon, 200) + 2)]
    for n in range(1, len(vals) - 1):
        # certified F(n+1) - F(n) > F(n) - F(n-1) refutes concavity
        lo_next = vals[n + 1].lo - vals[n].hi
        hi_prev = vals[n].hi - vals[n - 1].lo
        if lo_next > hi_prev:
            bad = n
            break
    rep.add("right derivative decreasing (integer samples)", bad is None, "" if bad is None else f"difference quotient increases at {bad}")

    rep.add("derivative bound 2/(8x+1) on x >= 2 (symbolic)", _derivative_bound_holds(F))
    bad = None
    for n in range(2, min(horizon, 200)):
        dq = vals[n + 1].lo - vals[n].hi if n + 1 < len(vals) else None
        if dq is not None and dq > Fraction(2, 8 * n + 1):
            bad = n
            break
    rep.add("derivative bound (difference quotients)", bad is None, "" if bad is None else f"at n={bad}")
    return rep


def _derivative_bound_holds(F: ControlFunction) -> bool:
    """F'(x) <= 2/(8x+1) for every x >= 2."""
    if not _tail_well_formed(F):
        return False
    x0 = F.tail_start
    # linear pieces lying (partly) right of 2
    for ((a, _), (b, _)), s in zip(zip(F.knots, F.knots[1:]), _slopes(F)):
        if b > 2 and s > Fraction(2) / (8 * b + 1):
            return False
    t = F.tail
    start = max(x0, Fraction(2))
    # p*q*(8x+1) <= 2*(q*x + r) for all x >= start: linear in x
    lead = 8 * t.p * t.q - 2 * t.q
    const = t.p * t.q - 2 * t.r
    return lead <= 0 and lead * start + const <= 0


_REF = reference_F()
