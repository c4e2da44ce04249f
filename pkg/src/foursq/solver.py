"""Solving x**2+y**2+z**2+t**2 = m with ax+by+cz+dt constrained to a value set.

The core routine descends from a representation l*m - n**2 = A**2+B**2+C**2
to an integral quaternion gamma = (n+Ai+Bj+Ck)*conj(beta)/l, whose
components give a solution of the linear system at value n.  On top of that
sit the admissibility filters (which value sets / residue classes can work
at all) and a family of transformation rules that transport solutions
between related coefficient quadruples via quaternion identities
beta*u == v*beta'.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import isqrt
from typing import Iterator, NamedTuple, Optional, Sequence, Union

import numpy as np

from . import _residues
from .arith import iroot, is_square, is_three_square, four_square_reps
from .lipschitz import Quaternion, mul, norm, sandwich


class UnsupportedQuadrupleError(ValueError):
    """Raised for coefficient quadruples outside the supported family."""


class NoSolutionError(Exception):
    """Raised when a restricted system has no solution.

    Carries the search trace: every candidate value n that survived the
    filters and was tried without success.
    """

    def __init__(self, m: int, quad: "SystemQuadruple", target_set: "TargetSet",
                 tried: Sequence[int]):
        self.m = m
        self.quad = quad
        self.target_set = target_set
        self.tried = tuple(tried)
        super().__init__(
            f"no solution for m={m}, coefficients {tuple(quad)}, "
            f"values in {target_set.value}; tried n={list(self.tried)}"
        )


class ResourceLimitError(RuntimeError):
    """Raised when a brute-force request exceeds its configured bound."""


class SystemQuadruple(NamedTuple):
    """Coefficients (a, b, c, d) of the linear form ax + by + cz + dt."""

    a: int
    b: int
    c: int
    d: int

    @property
    def l(self) -> int:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def beta(self) -> Quaternion:
        return Quaternion(self.a, self.b, self.c, self.d)

    def linear_form(self, x: int, y: int, z: int, t: int) -> int:
        return self.a * x + self.b * y + self.c * z + self.d * t

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c},{self.d})"


class RestrictedSolution(NamedTuple):
    """A solution (x, y, z, t) together with the linear-form value n."""

    x: int
    y: int
    z: int
    t: int
    n: int


class TargetSet(Enum):
    """Value set the linear form is restricted to."""

    SQUARES = "squares"
    CUBES = "cubes"
    POW2 = "pow2"

    @classmethod
    def parse(cls, name: Union[str, "TargetSet"]) -> "TargetSet":
        if isinstance(name, cls):
            return name
        for member in cls:
            if member.value == name:
                return member
        raise ValueError(f"unknown value set {name!r} (expected squares, cubes or pow2)")

    def contains(self, n: int) -> bool:
        if self is TargetSet.POW2:
            return n >= 1 and n & (n - 1) == 0
        if n < 0:
            return False
        if self is TargetSet.SQUARES:
            return is_square(n)
        return iroot(n, 3) ** 3 == n

    def values_upto(self, hi: int) -> list[int]:
        """All members of the set that are <= hi, ascending."""
        if hi < 0:
            return []
        if self is TargetSet.SQUARES:
            return [k * k for k in range(isqrt(hi) + 1)]
        if self is TargetSet.CUBES:
            return [k ** 3 for k in range(iroot(hi, 3) + 1)]
        out = []
        v = 1
        while v <= hi:
            out.append(v)
            v <<= 1
        return out


# The nine supported coefficient quadruples, in the order the solvability
# results list them.
NINE_QUADRUPLES = (
    SystemQuadruple(1, 1, 2, 2),
    SystemQuadruple(1, 2, 2, 2),
    SystemQuadruple(2, 2, 3, 0),
    SystemQuadruple(1, 3, 3, 0),
    SystemQuadruple(1, 2, 4, 0),
    SystemQuadruple(1, 1, 2, 4),
    SystemQuadruple(2, 3, 4, 0),
    SystemQuadruple(1, 1, 2, 5),
    SystemQuadruple(1, 2, 3, 5),
)

_SUPPORTED = frozenset(NINE_QUADRUPLES)

# Residue filters: for these quadruples l*m - n**2 must avoid certain
# classes, which prunes candidate values of n before any enumeration.
_MOD3_QUADS = frozenset(
    [(1, 1, 2, 2), (1, 2, 2, 2), (2, 2, 3, 0), (2, 3, 4, 0)]
)
_MOD5_QUADS = frozenset(
    [(1, 1, 2, 4), (1, 3, 3, 0), (1, 2, 4, 0), (1, 1, 2, 5)]
)

_COMPANIONS = {
    (1, 1, 2, 4): SystemQuadruple(2, 3, 3, 0),
    (1, 1, 2, 2): SystemQuadruple(1, 3, 0, 0),
    (1, 2, 2, 2): SystemQuadruple(2, 3, 0, 0),
    (2, 2, 3, 0): SystemQuadruple(1, 4, 0, 0),
    (2, 3, 4, 0): SystemQuadruple(2, 5, 0, 0),
    (1, 3, 3, 0): SystemQuadruple(1, 1, 1, -4),
    (1, 2, 4, 0): SystemQuadruple(2, 2, 2, -3),
    (1, 1, 2, 5): SystemQuadruple(3, 3, 3, -2),
    (1, 2, 3, 5): SystemQuadruple(1, 1, 1, 6),
}


def _as_quad(quad: Sequence[int]) -> SystemQuadruple:
    q = SystemQuadruple(*quad)
    if q not in _SUPPORTED and q not in _COMPANIONS.values():
        raise UnsupportedQuadrupleError(
            f"coefficient quadruple {tuple(q)} is not supported"
        )
    return q


def _require_primary(quad: Sequence[int]) -> SystemQuadruple:
    q = SystemQuadruple(*quad)
    if q not in _SUPPORTED:
        raise UnsupportedQuadrupleError(
            f"coefficient quadruple {tuple(q)} is not one of the nine "
            f"supported quadruples"
        )
    return q


def companion_source(quad: Sequence[int]) -> SystemQuadruple:
    """The source quadruple whose solutions transform into this one's."""
    q = _require_primary(quad)
    return _COMPANIONS[tuple(q)]


# --------------------------------------------------------------------------
# Transformation rules
# --------------------------------------------------------------------------

class RulePair(NamedTuple):
    """One branch of a transformation rule.

    The branch applies when congruence . (x,y,z,t) == 0 (mod rule.modulus),
    after permuting the first three solution coordinates by perm (which is a
    symmetry of the source coefficients, so the permuted tuple still solves
    the source system).  Then u**-1 * gamma * v is integral and encodes a
    solution of the system with coefficients new_coeffs.
    """

    u: Quaternion
    v: Quaternion
    new_coeffs: Quaternion
    congruence: tuple[int, int, int, int]
    perm: tuple[int, int, int] = (0, 1, 2)


@dataclass(frozen=True)
class TransformationRule:
    case: int
    source: SystemQuadruple
    target: SystemQuadruple
    modulus: int
    pairs: tuple[RulePair, ...]


def _Q(a1: int, a2: int, a3: int, a4: int) -> Quaternion:
    return Quaternion(a1, a2, a3, a4)


def _make_rule(case: int, source: Sequence[int], target: Sequence[int],
               modulus: int, pairs: Sequence[RulePair]) -> TransformationRule:
    src = SystemQuadruple(*source)
    tgt = SystemQuadruple(*target)
    beta = src.beta()
    tgt_class = sorted(abs(c) for c in tgt)
    for pair in pairs:
        if norm(pair.u) != modulus or norm(pair.v) != modulus:
            raise AssertionError(f"conjugator norm != {modulus} in rule {src}->{tgt}")
        if mul(beta, pair.u) != mul(pair.v, pair.new_coeffs):
            raise AssertionError(f"identity fails for {src}->{tgt}, pair {pair}")
        if sorted(abs(c) for c in pair.new_coeffs) != tgt_class:
            raise AssertionError(f"wrong target class for {src}->{tgt}, pair {pair}")
        p = pair.perm
        if (src[p[0]], src[p[1]], src[p[2]]) != (src.a, src.b, src.c):
            raise AssertionError(f"perm {p} is not a symmetry of {src}")
    return TransformationRule(case, src, tgt, modulus, tuple(pairs))


_CASE1_PAIRS = (
    RulePair(_Q(1, 2, 0, 0), _Q(1, 0, -2, 0), _Q(-2, -1, -1, -4), (1, -2, -2, 1)),
    RulePair(_Q(1, -2, 0, 0), _Q(1, 0, 0, 2), _Q(4, 1, 1, -2), (1, 2, -1, 2)),
    RulePair(_Q(1, 0, 2, 0), _Q(1, -2, 0, 0), _Q(-2, -1, -1, 4), (1, -2, -2, -1)),
    RulePair(_Q(1, 0, -2, 0), _Q(1, 0, 0, -2), _Q(4, 1, 1, 2), (1, -1, 2, -2)),
    RulePair(_Q(1, 0, 0, 2), _Q(1, 2, 0, 0), _Q(4, 1, 1, 2), (1, 2, -1, -2)),
    RulePair(_Q(1, 0, 0, -2), _Q(1, 0, 2, 0), _Q(4, 1, 1, -2), (1, -1, 2, 2)),
)

_CASE23_US = (_Q(1, 1, 1, 0), _Q(1, 1, -1, 0), _Q(1, -1, 1, 0), _Q(1, -1, -1, 0))
_CASE2_CONGRUENCES = ((0, 1, -1, 1), (0, 1, 1, -1), (0, 1, 1, 1), (0, 1, -1, -1))
_CASE3_VS = (_Q(1, -1, -1, 0), _Q(1, -1, 1, 0), _Q(1, 1, 1, 0), _Q(1, 1, -1, 0))
_CASE3_CONGRUENCES = ((1, -1, -1, 0), (1, -1, 1, 0), (1, -1, 0, 1), (1, -1, 0, -1))


def _case2_pairs(coeffs: Sequence[Quaternion]) -> tuple[RulePair, ...]:
    return tuple(
        RulePair(u, u, bp, cong)
        for u, bp, cong in zip(_CASE23_US, coeffs, _CASE2_CONGRUENCES)
    )


def _case3_pairs(coeffs: Sequence[Quaternion]) -> tuple[RulePair, ...]:
    return tuple(
        RulePair(u, v, bp, cong)
        for u, v, bp, cong in zip(_CASE23_US, _CASE3_VS, coeffs, _CASE3_CONGRUENCES)
    )


# Case 4: sources (a, a, a, b) with norm divisible by 5.  Each branch's new
# coefficients are a fixed arrangement of p=(a+4b)/5, q=(7a-2b)/5,
# r=(3a+2b)/5, s=(4a+b)/5.
_CASE4_SLOTS = (
    (_Q(1, 2, 0, 0), _Q(1, 0, 2, 0), (0, 1, 2), (1, -2, 2, -1)),
    (_Q(1, -2, 0, 0), _Q(1, 0, -2, 0), (0, 2, 1), (1, 2, -2, -1)),
    (_Q(1, 0, 2, 0), _Q(1, 0, 0, 2), (2, 1, 0), (1, -1, -2, 2)),
    (_Q(1, 0, -2, 0), _Q(1, 0, 0, -2), (1, 2, 0), (1, -1, 2, -2)),
    (_Q(1, 0, 0, 2), _Q(1, 2, 0, 0), (1, 0, 2), (1, 2, -1, -2)),
    (_Q(1, 0, 0, -2), _Q(1, -2, 0, 0), (2, 0, 1), (1, -2, -1, 2)),
)

_CASE4_TARGETS = {
    (1, -4): (1, 3, 3, 0),
    (1, 6): (1, 2, 3, 5),
    (2, -3): (1, 2, 4, 0),
    (3, -2): (1, 1, 2, 5),
}


def _case4_pairs(a: int, b: int) -> tuple[RulePair, ...]:
    for num in (a + 4 * b, 7 * a - 2 * b, 3 * a + 2 * b, 4 * a + b):
        if num % 5:
            raise AssertionError(f"source ({a},{a},{a},{b}) is not reducible mod 5")
    comps = ((a + 4 * b) // 5, (7 * a - 2 * b) // 5, (3 * a + 2 * b) // 5,
             (4 * a + b) // 5)
    out = []
    for u, v, layout, cong in _CASE4_SLOTS:
        bp = _Q(comps[layout[0]], comps[layout[1]], comps[layout[2]], comps[3])
        out.append(RulePair(u, v, bp, cong))
    return tuple(out)


# Case 5: a single identity; the six branches differ only in which symmetry
# of the source coefficients (1,1,1,6) is applied to the solution first.
_CASE5_BRANCHES = (
    ((0, 1, 2), (0, 1, -1, 1)),
    ((1, 2, 0), (-1, 0, 1, 1)),
    ((2, 0, 1), (1, -1, 0, 1)),
    ((0, 2, 1), (0, -1, 1, 1)),
    ((2, 1, 0), (-1, 1, 0, 1)),
    ((1, 0, 2), (1, 0, -1, 1)),
)


def _case5_pairs() -> tuple[RulePair, ...]:
    u = _Q(1, 1, 1, 0)
    bp = _Q(1, -3, 5, -2)
    return tuple(
        RulePair(u, u, bp, cong, perm) for perm, cong in _CASE5_BRANCHES
    )


@lru_cache(maxsize=1)
def builtin_rules() -> tuple[TransformationRule, ...]:
    """The built-in transformation rules, identity-checked at construction."""
    rules = [
        _make_rule(1, (2, 3, 3, 0), (1, 1, 2, 4), 5, _CASE1_PAIRS),
        _make_rule(2, (1, 3, 0, 0), (1, 1, 2, 2), 3, _case2_pairs(
            (_Q(1, 1, 2, 2), _Q(1, 1, -2, -2), _Q(1, 1, -2, 2), _Q(1, 1, 2, -2)))),
        _make_rule(2, (2, 3, 0, 0), (1, 2, 2, 2), 3, _case2_pairs(
            (_Q(2, 1, 2, 2), _Q(2, 1, -2, -2), _Q(2, 1, -2, 2), _Q(2, 1, 2, -2)))),
        _make_rule(3, (1, 4, 0, 0), (2, 2, 3, 0), 3, _case3_pairs(
            (_Q(-3, 2, -2, 0), _Q(-3, 2, 2, 0), _Q(3, -2, 0, 2), _Q(3, -2, 0, -2)))),
        _make_rule(3, (2, 5, 0, 0), (2, 3, 4, 0), 3, _case3_pairs(
            (_Q(-4, 3, -2, 0), _Q(-4, 3, 2, 0), _Q(4, -3, 0, 2), _Q(4, -3, 0, -2)))),
    ]
    for (a, b), target in _CASE4_TARGETS.items():
        rules.append(_make_rule(4, (a, a, a, b), target, 5, _case4_pairs(a, b)))
    rules.append(_make_rule(5, (1, 1, 1, 6), (1, 2, 3, 5), 3, _case5_pairs()))
    for rule in rules:
        if len(four_square_reps(rule.source.l)) != 2:
            raise AssertionError(
                f"norm {rule.source.l} does not have exactly two representations"
            )
    return tuple(rules)


@lru_cache(maxsize=None)
def _rules_for_target(quad: SystemQuadruple) -> tuple[TransformationRule, ...]:
    matching = [r for r in builtin_rules() if r.target == quad]
    # For (1,2,3,5) both the single-identity rule and a generic one apply;
    # prefer the single-identity rule.
    matching.sort(key=lambda r: 0 if r.case == 5 else 1)
    return tuple(matching)


def identity_suite() -> list[tuple[str, bool]]:
    """Re-verify every distinct quaternion identity behind the rules.

    Returns (label, ok) entries: one per displayed identity -- six for case
    1, four for each of the case 2 and case 3 rules, six generic ones for
    case 4 (each checked at all four source instantiations), and one for
    case 5.  29 in total.
    """
    out: list[tuple[str, bool]] = []
    rules = builtin_rules()
    for rule in rules:
        if rule.case == 4:
            continue
        beta = rule.source.beta()
        seen = set()
        for i, pair in enumerate(rule.pairs, 1):
            key = (pair.u, pair.v, pair.new_coeffs)
            if key in seen:
                continue
            seen.add(key)
            ok = mul(beta, pair.u) == mul(pair.v, pair.new_coeffs)
            out.append((f"case {rule.case}: {rule.source} pair {i}", ok))
    case4 = [r for r in rules if r.case == 4]
    for slot in range(6):
        ok = all(
            mul(r.source.beta(), r.pairs[slot].u)
            == mul(r.pairs[slot].v, r.pairs[slot].new_coeffs)
            for r in case4
        )
        out.append((f"case 4: generic pair {slot + 1} at all four sources", ok))
    return out


def apply_rule(rule: TransformationRule,
               sol: RestrictedSolution) -> Optional[RestrictedSolution]:
    """Transform a solution of rule.source into one of rule.target.

    Tries the rule's branches in order; the first branch whose congruence is
    satisfied produces the result.  Returns None when no branch applies.
    Raises ValueError if sol does not actually solve the source system.
    """
    x, y, z, t = sol.x, sol.y, sol.z, sol.t
    if rule.source.linear_form(x, y, z, t) != sol.n:
        raise ValueError("solution does not satisfy the rule's source system")
    for pair in rule.pairs:
        cx, cy, cz, ct = pair.congruence
        if (cx * x + cy * y + cz * z + ct * t) % rule.modulus:
            continue
        p = pair.perm
        xs = (x, y, z)
        g = Quaternion(xs[p[0]], -xs[p[1]], -xs[p[2]], -t)
        r = sandwich(pair.u, g, pair.v)
        if r is None:  # pragma: no cover - congruence guarantees integrality
            raise AssertionError("congruence held but sandwich was not integral")
        raw = (r.a1, -r.a2, -r.a3, -r.a4)
        return RestrictedSolution(
            *_normalize_to(raw, pair.new_coeffs, rule.target), sol.n
        )
    return None


def _normalize_to(raw: tuple[int, int, int, int], coeffs: Quaternion,
                  target: SystemQuadruple) -> tuple[int, int, int, int]:
    """Rearrange a solution of `coeffs` into one of the canonical target.

    Negating a coordinate absorbs a negative coefficient; coordinates are
    then matched to target positions by coefficient magnitude (first unused
    match wins), which keeps the result deterministic.
    """
    vals = [s if c >= 0 else -s for s, c in zip(raw, coeffs)]
    mags = [abs(c) for c in coeffs]
    used = [False] * 4
    out = []
    for tc in target:
        for i in range(4):
            if not used[i] and mags[i] == tc:
                used[i] = True
                out.append(vals[i])
                break
        else:  # pragma: no cover - construction guarantees matching classes
            raise AssertionError("coefficient multiset mismatch")
    return tuple(out)


# --------------------------------------------------------------------------
# Direct descent
# --------------------------------------------------------------------------

def _bitmask_of_squares(mod: int) -> int:
    mask = 0
    for i in range(mod):
        mask |= 1 << (i * i % mod)
    return mask


_SQ64 = _bitmask_of_squares(64)
_SQ63 = _bitmask_of_squares(63)
_SQ65 = _bitmask_of_squares(65)


def _maybe_square(v: int) -> bool:
    return bool(
        (_SQ64 >> (v & 63)) & 1
        and (_SQ63 >> (v % 63)) & 1
        and (_SQ65 >> (v % 65)) & 1
    )


def _descent_solutions(m: int, n: int,
                       quad: SystemQuadruple) -> Iterator[RestrictedSolution]:
    """Yield solutions at value n in the deterministic enumeration order.

    Canonical triples A >= B >= C >= 0 with A**2+B**2+C**2 = l*m - n**2 are
    visited in decreasing lexicographic order; within one triple the 48
    signed permutations are visited in variant order (permutations of
    (A,B,C) lexicographically, then signs with + before -).
    """
    a, b, c, d = quad
    l = quad.l
    big_r = l * m - n * n
    if big_r < 0 or not is_three_square(big_r):
        return
    mask, planes = _residues.masks_for(tuple(quad), l, n % l)
    mask_get = mask.get
    ll = l * l
    A = isqrt(big_r)
    while A >= 0 and 3 * A * A >= big_r:
        rem = big_r - A * A
        bres = planes[A % l]
        if bres:
            bhi = min(A, isqrt(rem))
            blo = 0 if rem == 0 else isqrt((rem - 1) // 2) + 1
            base = (A % l) * ll
            hits = []
            for br in bres:
                B = bhi - ((bhi - br) % l)
                while B >= blo:
                    c2 = rem - B * B
                    if _maybe_square(c2):
                        C = isqrt(c2)
                        if C * C == c2:
                            mk = mask_get(base + br * l + C % l)
                            if mk:
                                hits.append((B, C, mk))
                    B -= l
            hits.sort(key=lambda h: -h[0])
            for B, C, mk in hits:
                v = 0
                while mk:
                    if mk & 1:
                        A2, B2, C2 = _residues.signed_permutation((A, B, C), v)
                        g1 = (a * n + b * A2 + c * B2 + d * C2) // l
                        g2 = (-b * n + a * A2 - d * B2 + c * C2) // l
                        g3 = (-c * n + d * A2 + a * B2 - b * C2) // l
                        g4 = (-d * n - c * A2 + b * B2 + a * C2) // l
                        yield RestrictedSolution(g1, -g2, -g3, -g4, n)
                    mk >>= 1
                    v += 1
        A -= 1


def _naturalize(sol: RestrictedSolution,
                quad: SystemQuadruple) -> Optional[RestrictedSolution]:
    """Flip free coordinates (zero coefficient) and demand nonnegativity."""
    coords = [sol.x, sol.y, sol.z, sol.t]
    for i, coef in enumerate(quad):
        if coef == 0:
            coords[i] = abs(coords[i])
    if all(v >= 0 for v in coords):
        return RestrictedSolution(coords[0], coords[1], coords[2], coords[3], sol.n)
    return None


def solve_linear_system(m: int, n: int, quad: Sequence[int],
                        natural: bool = False) -> Optional[RestrictedSolution]:
    """First solution of x**2+..+t**2 = m, ax+..+dt = n in enumeration order.

    Returns None when no solution exists at this value n.  With
    natural=True, only solutions with all coordinates nonnegative are
    accepted (coordinates at zero coefficients may be freely flipped).
    """
    q = _as_quad(quad)
    if m < 0:
        raise ValueError("m must be nonnegative")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n * n > q.l * m:
        raise ValueError(f"n**2 = {n * n} exceeds l*m = {q.l * m}")
    for sol in _descent_solutions(m, n, q):
        if not natural:
            _validate(sol, m, q)
            return sol
        nat = _naturalize(sol, q)
        if nat is not None:
            _validate(nat, m, q)
            return nat
    return None


def _validate(sol: RestrictedSolution, m: int, quad: SystemQuadruple) -> None:
    x, y, z, t, n = sol
    if x * x + y * y + z * z + t * t != m:  # pragma: no cover
        raise AssertionError(f"certificate norm mismatch: {sol} vs m={m}")
    if quad.linear_form(x, y, z, t) != n:  # pragma: no cover
        raise AssertionError(f"certificate linear form mismatch: {sol}")


# --------------------------------------------------------------------------
# Admissible values and candidate sets
# --------------------------------------------------------------------------

def admissible_n(m: int, quad: Sequence[int],
                 target_set: Union[str, TargetSet]) -> list[int]:
    """Values n in the target set that pass all solvability filters.

    Keeps n with n**2 <= l*m, l*m - n**2 a sum of three squares, and, for
    quadruples with a residue obstruction, l*m - n**2 in the allowed classes
    (mod 3 or mod 5).  Ascending.
    """
    q = _require_primary(quad)
    ts = TargetSet.parse(target_set)
    if m < 0:
        raise ValueError("m must be nonnegative")
    lm = q.l * m
    key = tuple(q)
    out = []
    for n in ts.values_upto(isqrt(lm)):
        r = lm - n * n
        if not is_three_square(r):
            continue
        if key in _MOD3_QUADS:
            ok = r % 3 != 1
        elif key in _MOD5_QUADS:
            ok = r % 5 in (0, 1, 4)
        else:  # (1, 2, 3, 5)
            ok = r % 5 in (0, 1, 4) or n % 3 != 0
        if ok:
            out.append(n)
    return out


def candidate_set(M: int, kind: Union[str, TargetSet]) -> list[int]:
    """Indices whose set member leaves a three-square remainder under M.

    cubes: n with n**6 <= M and M - n**6 a sum of three squares;
    squares: n with n**4 <= M and M - n**4 a sum of three squares;
    pow2: exponents k with 4**k <= M and M - 4**k a sum of three squares.
    """
    ts = TargetSet.parse(kind)
    if M < 0:
        return []
    if ts is TargetSet.CUBES:
        return [n for n in range(iroot(M, 6) + 1) if is_three_square(M - n ** 6)]
    if ts is TargetSet.SQUARES:
        return [n for n in range(iroot(M, 4) + 1) if is_three_square(M - n ** 4)]
    out = []
    k = 0
    while 4 ** k <= M:
        if is_three_square(M - 4 ** k):
            out.append(k)
        k += 1
    return out


# --------------------------------------------------------------------------
# Restricted solving
# --------------------------------------------------------------------------

def solve_restricted(m: int, quad: Sequence[int],
                     target_set: Union[str, TargetSet],
                     natural: bool = False,
                     n: Optional[int] = None) -> RestrictedSolution:
    """Solve the system with the linear form restricted to the target set.

    Values n are tried in ascending order: first the filtered admissible
    values (where a failed direct solve falls back to transforming a
    companion-system solution), then any remaining set members n with
    n**2 <= l*m and l*m - n**2 a sum of three squares.  Passing n pins the
    value instead.  Raises NoSolutionError with the full trace when every
    candidate fails.

    With natural=True the n values are walked in descending order instead:
    natural solutions need the linear form close to its maximum, where the
    per-n enumeration is small, whereas proving that a small n admits no
    natural solution means exhausting an enormous enumeration.
    """
    q = _require_primary(quad)
    ts = TargetSet.parse(target_set)
    if m < 0:
        raise ValueError("m must be nonnegative")
    lm = q.l * m
    if n is not None:
        if not ts.contains(n):
            raise ValueError(f"n={n} is not in {ts.value}")
        if n * n > lm:
            raise ValueError(f"n**2 = {n * n} exceeds l*m = {lm}")
        sol = _solve_at(m, n, q, natural)
        if sol is not None:
            return sol
        raise NoSolutionError(m, q, ts, [n])
    tried = []
    phase1 = admissible_n(m, q, ts)
    for nv in reversed(phase1) if natural else phase1:
        sol = _solve_at(m, nv, q, natural)
        if sol is not None:
            return sol
        tried.append(nv)
    seen = set(phase1)
    phase2 = [nv for nv in ts.values_upto(isqrt(lm))
              if nv not in seen and is_three_square(lm - nv * nv)]
    for nv in reversed(phase2) if natural else phase2:
        sol = solve_linear_system(m, nv, q, natural=natural)
        if sol is not None:
            return sol
        tried.append(nv)
    raise NoSolutionError(m, q, ts, tried)


def _solve_at(m: int, n: int, quad: SystemQuadruple,
              natural: bool) -> Optional[RestrictedSolution]:
    """Direct solve at one value, with the rule-based companion fallback."""
    sol = solve_linear_system(m, n, quad, natural=natural)
    if sol is not None:
        return sol
    comp = _COMPANIONS[tuple(quad)]
    csol = solve_linear_system(m, n, comp)
    if csol is not None:
        for rule in _rules_for_target(quad):
            out = apply_rule(rule, csol)
            if out is None:
                continue
            if natural:
                out = _naturalize(out, quad)
                if out is None:
                    continue
            _validate(out, m, quad)
            return out
    return None


def check_solution(m: int, quad: Sequence[int],
                   target_set: Union[str, TargetSet],
                   sol: RestrictedSolution) -> bool:
    """True iff sol solves the system and its value lies in the target set."""
    q = _require_primary(quad)
    ts = TargetSet.parse(target_set)
    x, y, z, t, n = sol
    return (
        x * x + y * y + z * z + t * t == m
        and q.linear_form(x, y, z, t) == n
        and ts.contains(n)
    )


# --------------------------------------------------------------------------
# Brute-force oracle
# --------------------------------------------------------------------------

ORACLE_DEFAULT_BOUND = 10 ** 6


@lru_cache(maxsize=4)
def _signed_variants(m: int) -> np.ndarray:
    """All integer 4-tuples of norm m, lexicographically ascending."""
    seen = set()
    for rep in four_square_reps(m):
        for perm in set(itertools.permutations(rep)):
            for signs in itertools.product((1, -1), repeat=4):
                seen.add(tuple(s * v for s, v in zip(signs, perm)))
    return np.array(sorted(seen), dtype=np.int64).reshape(-1, 4)


def brute_force_oracle(m: int, quad: Sequence[int],
                       target_set: Union[str, TargetSet],
                       bound: int = ORACLE_DEFAULT_BOUND
                       ) -> Optional[RestrictedSolution]:
    """Reference solver: exhaustive scan over all norm-m tuples.

    Returns the solution with the smallest achieved value, breaking ties by
    the lexicographically least tuple; None when no tuple lands in the set.
    Raises ResourceLimitError when m exceeds the bound.
    """
    q = _require_primary(quad)
    ts = TargetSet.parse(target_set)
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m > bound:
        raise ResourceLimitError(f"oracle limited to m <= {bound}, got {m}")
    variants = _signed_variants(m)
    if variants.size == 0:
        return None
    nvec = variants @ np.array(q, dtype=np.int64)
    nmax = int(nvec.max())
    members = np.array(ts.values_upto(nmax), dtype=np.int64)
    hits = np.isin(nvec, members)
    idx = np.nonzero(hits)[0]
    if idx.size == 0:
        return None
    best = idx[nvec[idx] == nvec[idx].min()][0]
    row = variants[best]
    return RestrictedSolution(int(row[0]), int(row[1]), int(row[2]),
                              int(row[3]), int(nvec[best]))
