"""Necessary-condition tests on dimension sequences.

Each test is a gate that the dimension sequence (and, where present, the
orbit-count sequence) of a connected Hopf monoid must pass. All of them are
necessary conditions only; a fail verdict certifies that no Hopf monoid of
the stated kind exists with those dimensions, a pass verdict certifies
nothing. Verdicts carry the first violated index and exact witnesses; a
flag turns on exhaustive violation listing.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .exactalg import (TruncatedSeries, ZeroConstantTerm, binomial_transform,
                       egf_from_counts, ogf_from_counts)
from .reports import FAIL, INCONCLUSIVE, PASS, TestReport


class PreconditionFailed(ValueError):
    """The test's hypotheses do not hold for this input."""


@dataclass
class DimSequence:
    """A dimension sequence, optionally with its orbit-count companion."""

    name: str
    a: tuple
    abar: tuple | None = None

    def __post_init__(self):
        self.a = tuple(int(x) for x in self.a)
        if any(x < 0 for x in self.a):
            raise ValueError("dimension sequences are nonnegative")
        if self.abar is not None:
            self.abar = tuple(int(x) for x in self.abar)
            if any(x < 0 for x in self.abar):
                raise ValueError("orbit sequences are nonnegative")

    @classmethod
    def from_json(cls, data: dict) -> "DimSequence":
        return cls(data.get("name", "sequence"), data["a"],
                   tuple(data["abar"]) if data.get("abar") else None)

    def to_json(self) -> dict:
        out = {"name": self.name, "a": list(self.a)}
        if self.abar is not None:
            out["abar"] = list(self.abar)
        return out


def _series_of(seq: DimSequence, kind: str, order: int) -> TruncatedSeries:
    if kind == "egf":
        return egf_from_counts(seq.a[: order + 1], order)
    if kind == "ogf":
        return ogf_from_counts(seq.a[: order + 1], order)
    if kind == "tgf":
        if seq.abar is None:
            raise PreconditionFailed("type series needs the orbit sequence")
        return ogf_from_counts(seq.abar[: order + 1], order)
    raise ValueError("kind must be 'ogf', 'egf' or 'tgf'")


def _first_negative(series: TruncatedSeries):
    for i, c in enumerate(series.coeffs):
        if c < 0:
            return i, c
    return None, None


def quotient_nonneg_test(numer: DimSequence, denom: DimSequence, kind: str,
                         order: int | None = None) -> TestReport:
    """Divide the chosen generating series and demand a nonnegative prefix.

    This is the submonoid/quotient gate: if the quotient has a negative
    coefficient, `denom` cannot sit inside (or under) `numer` as a Hopf
    monoid.
    """
    if order is None:
        order = min(len(numer.a), len(denom.a)) - 1
        if kind == "tgf":
            order = min(order,
                        len(numer.abar or ()) - 1, len(denom.abar or ()) - 1)
    num = _series_of(numer, kind, order)
    den = _series_of(denom, kind, order)
    if den[0] == 0:
        raise ZeroConstantTerm("denominator sequence starts with 0")
    quot = num / den
    name = "quotient-nonneg(%s)" % kind
    idx, val = _first_negative(quot)
    details = {"quotient": quot.to_json()}
    if idx is None:
        return TestReport(name, PASS, details=details)
    return TestReport(name, FAIL, first_violation=idx,
                      witness={"coefficient": val}, details=details)


def ord_exp_test(seq: DimSequence, order: int | None = None) -> TestReport:
    """Nonnegativity of the ordinary-by-exponential quotient, with the two
    low-order polynomial inequalities instantiated exactly."""
    a = seq.a
    if not a or a[0] != 1:
        raise PreconditionFailed("connectedness needs a_0 = 1")
    if order is None:
        order = len(a) - 1
    quot = ogf_from_counts(a[: order + 1], order) / egf_from_counts(a[: order + 1], order)
    inequalities = []
    if len(a) >= 4:
        lhs, rhs = 5 * a[3], 3 * a[2] * a[1]
        inequalities.append({"inequality": "5*a3 >= 3*a2*a1",
                             "lhs": lhs, "rhs": rhs, "holds": lhs >= rhs})
    if len(a) >= 5:
        lhs = 23 * a[4] + 12 * a[2] * a[1] ** 2
        rhs = 20 * a[3] * a[1] + 6 * a[2] ** 2
        inequalities.append({"inequality": "23*a4 + 12*a2*a1^2 >= 20*a3*a1 + 6*a2^2",
                             "lhs": lhs, "rhs": rhs, "holds": lhs >= rhs})
    details = {"quotient": quot.to_json(), "inequalities": inequalities}
    idx, val = _first_negative(quot)
    if idx is None:
        return TestReport("ord/exp", PASS, details=details)
    return TestReport("ord/exp", FAIL, first_violation=idx,
                      witness={"coefficient": val}, details=details)


def ord_type_test(seq: DimSequence, order: int | None = None) -> TestReport:
    """Nonnegativity of the ordinary-by-type quotient; non-integer
    coefficients are reported as a warning, not a failure, since the sign
    is the discriminating part."""
    if seq.abar is None:
        raise PreconditionFailed("the ord/type test needs the orbit sequence")
    if order is None:
        order = min(len(seq.a), len(seq.abar)) - 1
    num = ogf_from_counts(seq.a[: order + 1], order)
    den = ogf_from_counts(seq.abar[: order + 1], order)
    if den[0] == 0:
        raise ZeroConstantTerm("type sequence starts with 0")
    quot = num / den
    warnings = []
    for i, c in enumerate(quot.coeffs):
        if c.denominator != 1:
            warnings.append("coefficient of x^%d is %s, not an integer"
                            % (i, c))
            break
    details = {"quotient": quot.to_json()}
    idx, val = _first_negative(quot)
    if idx is None:
        return TestReport("ord/type", PASS, details=details, warnings=warnings)
    return TestReport("ord/type", FAIL, first_violation=idx,
                      witness={"coefficient": val}, details=details,
                      warnings=warnings)


def e_test(seq: DimSequence) -> TestReport:
    """Gate for containing or surjecting onto the one-dimensional monoid:
    the binomial transform must be nonnegative; the orbit sequence, if
    given, must be nondecreasing."""
    a = seq.a
    if not a or a[0] != 1:
        raise PreconditionFailed("connectedness needs a_0 = 1")
    b = binomial_transform(a)
    details = {"binomial_transform": b}
    for n, bn in enumerate(b):
        if bn < 0:
            return TestReport("e-test", FAIL, first_violation=n,
                              witness={"b_n": bn}, details=details)
    if seq.abar is not None:
        for n in range(1, len(seq.abar)):
            if seq.abar[n] < seq.abar[n - 1]:
                return TestReport(
                    "e-test", FAIL, first_violation=n,
                    witness={"abar_n": seq.abar[n], "abar_{n-1}": seq.abar[n - 1]},
                    details=details)
    return TestReport("e-test", PASS, details=details)


def l_test(seq: DimSequence) -> TestReport:
    """Gate for containing or surjecting onto linear orders:
    a_n >= n a_{n-1}, and the orbit sequence must be nondecreasing."""
    a = seq.a
    margins = [a[n] - n * a[n - 1] for n in range(1, len(a))]
    details = {"margins": margins}
    for n in range(1, len(a)):
        if a[n] < n * a[n - 1]:
            return TestReport("l-test", FAIL, first_violation=n,
                              witness={"a_n - n*a_{n-1}": a[n] - n * a[n - 1]},
                              details=details)
    if seq.abar is not None:
        for n in range(1, len(seq.abar)):
            if seq.abar[n] < seq.abar[n - 1]:
                return TestReport(
                    "l-test", FAIL, first_violation=n,
                    witness={"abar_n": seq.abar[n], "abar_{n-1}": seq.abar[n - 1]},
                    details=details)
    return TestReport("l-test", PASS, details=details)


def ek_test(seq: DimSequence, k: int, order: int | None = None) -> TestReport:
    """Gate from the inclusion of the k-th into the (k+1)-st Cauchy power of
    the one-dimensional monoid: the quotient of the twisted exponential
    series must be nonnegative, and two explicit inequalities hold at k."""
    a = seq.a
    if not a or a[0] != 1:
        raise PreconditionFailed("connectedness needs a_0 = 1")
    if k < 0:
        raise PreconditionFailed("k must be nonnegative")
    if order is None:
        order = len(a) - 1
    num = egf_from_counts([(k + 1) ** n * a[n] for n in range(order + 1)], order)
    den = egf_from_counts([k ** n * a[n] for n in range(order + 1)], order)
    quot = num / den
    inequalities = []
    if len(a) >= 3:
        lhs, rhs = (2 * k + 1) * a[2], 2 * k * a[1] ** 2
        inequalities.append({"inequality": "(2k+1)*a2 >= 2k*a1^2", "k": k,
                             "lhs": lhs, "rhs": rhs, "holds": lhs >= rhs})
    if len(a) >= 4:
        lhs = (3 * k * k + 3 * k + 1) * a[3]
        rhs = 3 * (3 * k * k + k) * a[2] * a[1] - 6 * k * k * a[1] ** 3
        inequalities.append({"inequality": "(3k^2+3k+1)*a3 >= 3(3k^2+k)*a2*a1 - 6k^2*a1^3",
                             "k": k, "lhs": lhs, "rhs": rhs, "holds": lhs >= rhs})
    details = {"quotient": quot.to_json(), "inequalities": inequalities}
    idx, val = _first_negative(quot)
    if idx is None:
        return TestReport("ek-test(k=%d)" % k, PASS, details=details)
    return TestReport("ek-test(k=%d)" % k, FAIL, first_violation=idx,
                      witness={"coefficient": val}, details=details)


def ek_limit_test(seq: DimSequence) -> TestReport:
    """The k -> infinity limit inequalities a2 >= a1^2 and
    a3 >= 3 a2 a1 - 2 a1^3; purely polynomial, no series division."""
    a = seq.a
    if len(a) < 4:
        return TestReport("ek-limit", INCONCLUSIVE,
                          warnings=["need a_0..a_3 to instantiate both inequalities"])
    ineq1 = {"inequality": "a2 >= a1^2", "lhs": a[2], "rhs": a[1] ** 2,
             "holds": a[2] >= a[1] ** 2}
    rhs2 = 3 * a[2] * a[1] - 2 * a[1] ** 3
    ineq2 = {"inequality": "a3 >= 3*a2*a1 - 2*a1^3", "lhs": a[3], "rhs": rhs2,
             "holds": a[3] >= rhs2}
    details = {"inequalities": [ineq1, ineq2]}
    if not ineq1["holds"]:
        return TestReport("ek-limit", FAIL, first_violation=2,
                          witness={"a2": a[2], "a1^2": a[1] ** 2}, details=details)
    if not ineq2["holds"]:
        return TestReport("ek-limit", FAIL, first_violation=3,
                          witness={"a3": a[3], "3*a2*a1 - 2*a1^3": rhs2},
                          details=details)
    return TestReport("ek-limit", PASS, details=details)


def supermult_test(seq: DimSequence, exhaustive: bool = False) -> TestReport:
    """a_{i+j} >= a_i a_j for all splits inside the window."""
    a = seq.a
    violations = []
    for n in range(len(a)):
        for i in range(n + 1):
            j = n - i
            if a[n] < a[i] * a[j]:
                violations.append((n, i, j))
                if not exhaustive:
                    n0, i0, j0 = violations[0]
                    return TestReport(
                        "supermultiplicative", FAIL, first_violation=n0,
                        witness={"a_n": a[n0], "a_i*a_j": a[i0] * a[j0],
                                 "i": i0, "j": j0})
    if violations:
        n0, i0, j0 = violations[0]
        return TestReport("supermultiplicative", FAIL, first_violation=n0,
                          witness={"a_n": a[n0], "a_i*a_j": a[i0] * a[j0],
                                   "i": i0, "j": j0},
                          details={"all_violations": violations})
    return TestReport("supermultiplicative", PASS)


def growth_test(seq: DimSequence, k: int) -> TestReport:
    """Weak monotonicity (needs a_1 >= 1) and the proven lower bound
    a_n >= 2^floor(n/k), given a_k >= 2 and a_i >= 1 below k."""
    a = seq.a
    if k < 1 or k >= len(a):
        raise PreconditionFailed("k must satisfy 1 <= k < len(a)")
    if a[k] < 2 or any(a[i] < 1 for i in range(k)):
        raise PreconditionFailed(
            "growth test needs a_k >= 2 and a_i >= 1 for i < k")
    if a[1] >= 1:
        for n in range(1, len(a)):
            if a[n] < a[n - 1]:
                return TestReport("growth", FAIL, first_violation=n,
                                  witness={"a_n": a[n], "a_{n-1}": a[n - 1]})
    for n in range(len(a)):
        bound = 2 ** (n // k)
        if a[n] < bound:
            return TestReport("growth", FAIL, first_violation=n,
                              witness={"a_n": a[n], "2^(n/k)": bound})
    return TestReport("growth", PASS)


def support_test(seq: DimSequence) -> TestReport:
    """Within the window, the support must be closed under addition; the
    report carries the gcd of the positive support and whether the support's
    complement can be finite (gcd 1). A finite prefix can never certify
    closure globally, so a pass is a pass within the window."""
    a = seq.a
    supp = [n for n, v in enumerate(a) if v != 0]
    positive = [n for n in supp if n > 0]
    g = 0
    for n in positive:
        g = gcd(g, n)
    details = {
        "support": supp,
        "gcd": g,
        "complement_can_be_finite": g == 1,
        "support_infinite_unless_zero": bool(positive),
        "window": len(a) - 1,
    }
    if not positive:
        return TestReport("support", INCONCLUSIVE, details=details,
                          warnings=["support is {0} within the window"])
    sset = set(supp)
    for n in range(len(a)):
        if n in sset:
            continue
        for i in positive:
            j = n - i
            if j in sset and j > 0:
                return TestReport("support", FAIL, first_violation=n,
                                  witness={"i": i, "j": j, "a_{i+j}": a[n]},
                                  details=details)
    return TestReport("support", PASS, details=details,
                      warnings=["closure verified within the window only"])
