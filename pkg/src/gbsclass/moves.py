"""Equivalence moves on Pauli exponent sets.

Every move here is (the exponent-level shadow of) a unitary that maps one
Pauli set to another inside the same local-unitary class:

* symplectic maps -- conjugation by the Clifford generators P (shear),
  R (rotation), V (transposed shear) and Q_k (scaling), which act on an
  exponent vector by a determinant-one 2x2 matrix mod d;
* pivots -- right translation by the inverse of a member, which moves
  that member onto the identity and shifts every exponent vector;
* the sublattice multiplier move W(s, t, k) -- a permutation unitary that
  exists on prime-power dimensions, fixes Z^(p^s), and multiplies the
  X-exponent of every member of the sublattice {x = 0 mod p^t,
  z = 0 mod p^s} by k*p^(a-s-t) + 1;
* named rewrite rules -- guarded set-level rewrites (shears that clear a
  Z-tail, bracket moves on the shear residue, chain moves on commuting
  sets, and the two tensor-split collapses available when the members
  commute on the nose).

Moves serialize to short labels ("P", "Q(5)", "PIVOT(2)", "W(1,0,2)",
"RULE(xz3-split)") and replay via :func:`parse_move` / :func:`apply_trace`,
which is how classification witnesses are checked.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .pauli import Gpm, GpmSet, Vec
from .residues import NonInvertible, inv_mod, prime_power


class NotInLattice(ValueError):
    """A set member falls outside the sublattice a context move needs."""


class PreconditionViolated(ValueError):
    """Move parameters violate their documented bounds."""


class GuardFailed(ValueError):
    """A rewrite rule was applied to a set that does not match its pattern."""


@dataclass(frozen=True)
class SymplecticMap:
    """A 2x2 exponent action mod d with determinant one."""

    d: int
    m: tuple[tuple[int, int], tuple[int, int]]

    def __post_init__(self) -> None:
        (a, b), (c, e) = self.m
        object.__setattr__(
            self, "m", ((a % self.d, b % self.d), (c % self.d, e % self.d))
        )

    def det(self) -> int:
        (a, b), (c, e) = self.m
        return (a * e - b * c) % self.d

    def apply_vec(self, v: Vec) -> Vec:
        (a, b), (c, e) = self.m
        s, t = v
        return ((a * s + b * t) % self.d, (c * s + e * t) % self.d)

    def compose(self, other: "SymplecticMap") -> "SymplecticMap":
        """self after other (matrix product self.m @ other.m)."""
        (a, b), (c, e) = self.m
        (f, g), (h, i) = other.m
        return SymplecticMap(
            self.d,
            ((a * f + b * h, a * g + b * i), (c * f + e * h, c * g + e * i)),
        )


def clifford_generator(name: str, d: int, k: int | None = None) -> SymplecticMap:
    """Exponent action of a Clifford generator.

    P: (s,t) -> (s, s+t)      (shear; diagonal quadratic-phase unitary)
    R: (s,t) -> (-t, s)       (Fourier rotation)
    V: (s,t) -> (s+t, t)      (the word P P R P R P P)
    Q(k): (s,t) -> (s/k, k*t) for k invertible mod d
    """
    if name == "P":
        return SymplecticMap(d, ((1, 0), (1, 1)))
    if name == "R":
        return SymplecticMap(d, ((0, -1), (1, 0)))
    if name == "V":
        return SymplecticMap(d, ((1, 1), (0, 1)))
    if name == "Q":
        if k is None:
            raise PreconditionViolated("Q needs its scale parameter k")
        return SymplecticMap(d, ((inv_mod(k, d), 0), (0, k)))
    raise PreconditionViolated(f"unknown generator {name!r}")


def apply_map(F: SymplecticMap, S: GpmSet) -> GpmSet:
    if F.d != S.d:
        raise PreconditionViolated(f"map mod {F.d} applied to set mod {S.d}")
    return GpmSet(S.d, tuple(F.apply_vec(v) for v in S.members))


def pivot_move(S: GpmSet, j: int) -> GpmSet:
    """Translate the set so that member j lands on the identity."""
    if not 0 <= j < len(S.members):
        raise IndexError(f"pivot index {j} out of range for {len(S.members)} members")
    s, t = S.members[j]
    return GpmSet(S.d, tuple(sorted(S.translated((-s, -t)).members)))


def w_move(S: GpmSet, p: int, alpha: int, s: int, t: int, k: int) -> GpmSet:
    """Apply the sublattice multiplier move.

    Requires d = p**alpha, 0 <= t, s + t < alpha and 1 <= k < p**s; every
    member must satisfy x = 0 mod p**t and z = 0 mod p**s.  The move
    multiplies each X-exponent by k*p**(alpha-s-t) + 1 and fixes every
    Z-exponent.
    """
    d = p**alpha
    if S.d != d:
        raise PreconditionViolated(f"set lives mod {S.d}, context says {d}")
    if alpha < 2 or s < 1 or t < 0 or s + t >= alpha:
        raise PreconditionViolated(f"need alpha >= 2, s >= 1, t >= 0, s+t < alpha; "
                                   f"got s={s} t={t} alpha={alpha}")
    if not 1 <= k < p**s:
        raise PreconditionViolated(f"need 1 <= k < p**s = {p**s}, got k={k}")
    ps, pt = p**s, p**t
    for x, z in S.members:
        if x % pt or z % ps:
            raise NotInLattice(f"member ({x},{z}) not in the (p^{t}, p^{s}) sublattice")
    u = (k * p ** (alpha - s - t) + 1) % d
    return GpmSet(d, tuple(sorted(((x * u) % d, z) for x, z in S.members)))


def det_realizability_check(
    F: SymplecticMap, p: int, alpha: int, s: int, t: int
) -> bool:
    """Whether a sublattice exponent map is realizable by some unitary.

    On the sublattice {x = 0 mod p**t, z = 0 mod p**s} of a p**alpha
    system, an integer matrix F acting on (x, z) comes from a unitary
    conjugation exactly when det(F) = 1 mod p**(alpha - s - t).
    """
    if s < 0 or t < 0 or s + t >= alpha:
        raise PreconditionViolated(f"need 0 <= s, t with s+t < alpha, got s={s} t={t}")
    (a, b), (c, e) = F.m
    return (a * e - b * c) % p ** (alpha - s - t) == 1


@dataclass(frozen=True)
class Move:
    """A labeled, replayable set move."""

    label: str
    fn: Callable[[GpmSet], GpmSet]

    def apply(self, S: GpmSet) -> GpmSet:
        return self.fn(S)

    def applies(self, S: GpmSet) -> bool:
        try:
            self.fn(S)
            return True
        except (GuardFailed, NotInLattice, PreconditionViolated, NonInvertible,
                IndexError, ValueError):
            return False


def _sorted_set(d: int, members: list[Vec]) -> GpmSet:
    ms = sorted((s % d, t % d) for s, t in members)
    if len(set(ms)) != len(ms):
        raise GuardFailed("rewrite would collapse two members")
    return GpmSet(d, tuple(ms))


def _clifford_move(name: str, d: int, k: int | None = None) -> Move:
    F = clifford_generator(name, d, k)
    label = f"Q({k})" if name == "Q" else name

    def fn(S: GpmSet) -> GpmSet:
        return GpmSet(S.d, tuple(sorted(apply_map(F, S).members)))

    return Move(label, fn)


def _pivot_move_obj(j: int) -> Move:
    return Move(f"PIVOT({j})", lambda S: pivot_move(S, j))


def _translate_move_obj(v: Vec) -> Move:
    def fn(S: GpmSet) -> GpmSet:
        return GpmSet(S.d, tuple(sorted(S.translated(v).members)))

    return Move(f"TRANSLATE({v[0]},{v[1]})", fn)


def _w_move_obj(p: int, alpha: int, s: int, t: int, k: int) -> Move:
    return Move(f"W({s},{t},{k})", lambda S: w_move(S, p, alpha, s, t, k))


def _vp(x: int, p: int, alpha: int) -> int:
    """p-adic valuation of x mod p**alpha (alpha for x = 0)."""
    if x % p**alpha == 0:
        return alpha
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


# ---------------------------------------------------------------------------
# Named rewrite rules.  Each guard matches a normalized triple
# {(0,0), (0,z), (x,w)} (or pair) literally; reaching the guarded shape is
# the job of the symplectic moves, so the patterns stay strict.
# ---------------------------------------------------------------------------


def _match_triple(S: GpmSet) -> tuple[Vec, Vec]:
    if len(S.members) != 3 or S.members[0] != (0, 0):
        raise GuardFailed("pattern needs a normalized triple with the identity first")
    return S.members[1], S.members[2]


def _match_z_x(S: GpmSet) -> tuple[int, int, int]:
    """Match {(0,0), (0,z), (x,w)} with z != 0, x != 0; returns (z, x, w)."""
    (s1, t1), (s2, t2) = _match_triple(S)
    if s1 == 0 and t1 != 0 and s2 != 0:
        return t1, s2, t2
    raise GuardFailed("pattern needs one pure-Z member and one X-bearing member")


def _match_power_of(p: int, alpha: int, z: int) -> int:
    s = _vp(z, p, alpha)
    if z != p**s:
        raise GuardFailed(f"member Z^{z} is not a plain power of {p}")
    return s


def _rule(label: str, fn: Callable[[GpmSet], GpmSet]) -> Move:
    return Move(f"RULE({label})", fn)


def _p2_rules(p: int) -> list[Move]:
    d = p * p

    def clear_tail2(S: GpmSet) -> GpmSet:
        z, x, w = _match_z_x(S)
        if x % p != 0:
            pass
        elif w % p == 0 and (x // p) % p != 0:
            pass
        else:
            raise GuardFailed("Z-tail is not clearable by a shear here")
        return _sorted_set(d, [(0, 0), (0, z), (x, 0)])

    def mirror_x2(S: GpmSet) -> GpmSet:
        z, x, w = _match_z_x(S)
        if z != 1 or w != 0:
            raise GuardFailed("pattern is {I, Z, X^s}")
        return _sorted_set(d, [(0, 0), (0, 1), (-x, 0)])

    def drop_unit_tail2(S: GpmSet) -> GpmSet:
        z, x, w = _match_z_x(S)
        if z != 1 or w != 1 or _vp(x, p, 2) != 1:
            raise GuardFailed("pattern is {I, Z, X^(kp) Z}")
        return _sorted_set(d, [(0, 0), (0, 1), (-x, 0)])

    def step_tail2(S: GpmSet) -> GpmSet:
        z, x, w = _match_z_x(S)
        if z != 1 or _vp(x, p, 2) != 1:
            raise GuardFailed("pattern is {I, Z, X^(kp) Z^t}")
        return _sorted_set(d, [(0, 0), (0, 1), (x, w - p)])

    def flip_residue2(S: GpmSet) -> GpmSet:
        z, x, w = _match_z_x(S)
        if z != 1 or _vp(x, p, 2) != 1:
            raise GuardFailed("pattern is {I, Z, X^(kp) Z^s}")
        return _sorted_set(d, [(0, 0), (0, 1), (-x, 1 - w)])

    def invert_residue2(S: GpmSet) -> GpmSet:
        z, x, w = _match_z_x(S)
        if z != 1 or _vp(x, p, 2) != 1 or w % p == 0:
            raise GuardFailed("pattern is {I, Z, X^(kp) Z^s} with s invertible")
        return _sorted_set(d, [(0, 0), (0, 1), (-x, inv_mod(w, d))])

    def swap_depth2(S: GpmSet) -> GpmSet:
        z, x, w = _match_z_x(S)
        if z != p or w != 0 or x % p == 0:
            raise GuardFailed("pattern is {I, Z^p, X^s} with s invertible")
        return _sorted_set(d, [(0, 0), (0, 1), (-x * p, 0)])

    def collapse_chain2(S: GpmSet) -> GpmSet:
        z, x, w = _match_z_x(S)
        if z != p or _vp(x, p, 2) != 1 or w % p == 0:
            raise GuardFailed("pattern is {I, Z^p, X^(kp) Z^t} with t invertible")
        return _sorted_set(d, [(0, 0), (0, 1), (0, (p * inv_mod(w, d)) % d)])

    def drop_unit2(S: GpmSet) -> GpmSet:
        z, x, w = _match_z_x(S)
        if z != p or w != 0 or _vp(x, p, 2) != 1:
            raise GuardFailed("pattern is {I, Z^p, X^(kp)}")
        return _sorted_set(d, [(0, 0), (0, p), (p, 0)])

    return [
        _rule("tail-clear2", clear_tail2),
        _rule("x-mirror2", mirror_x2),
        _rule("unit-tail-drop2", drop_unit_tail2),
        _rule("tail-step2", step_tail2),
        _rule("residue-flip2", flip_residue2),
        _rule("residue-invert2", invert_residue2),
        _rule("depth-swap2", swap_depth2),
        _rule("chain-collapse2", collapse_chain2),
        _rule("unit-drop2", drop_unit2),
    ]


def _alpha_rules(p: int, alpha: int) -> list[Move]:
    d = p**alpha

    def match_a(S: GpmSet) -> tuple[int, int, int]:
        """{I, Z^(p^s), X^(k p^t)}; returns (s, t, k)."""
        z, x, w = _match_z_x(S)
        if w != 0:
            raise GuardFailed("pattern needs a pure-X third member")
        s = _match_power_of(p, alpha, z)
        t = _vp(x, p, alpha)
        return s, t, x // p**t

    def match_c(S: GpmSet) -> tuple[int, int, int, int]:
        """{I, Z^(p^s), X^x Z^(t' p^s)}; returns (s, t, k, t')."""
        z, x, w = _match_z_x(S)
        s = _match_power_of(p, alpha, z)
        if w % p**s:
            raise GuardFailed("Z-tail is not a multiple of the chain step")
        t = _vp(x, p, alpha)
        return s, t, x // p**t, w // p**s

    def x3_axis_swap(S: GpmSet) -> GpmSet:
        s, t, k = match_a(S)
        return _sorted_set(d, [(0, 0), (0, p**t), (-k * p**s, 0)])

    def x3_sign_flip(S: GpmSet) -> GpmSet:
        s, t, k = match_a(S)
        if s < t:
            raise GuardFailed("sign flip in place needs s >= t")
        return _sorted_set(d, [(0, 0), (0, p**s), (-k * p**t, 0)])

    def x3_split(S: GpmSet) -> GpmSet:
        s, t, k = match_a(S)
        if s + t < alpha:
            raise GuardFailed("tensor split needs s + t >= alpha")
        return _sorted_set(d, [(0, 0), (0, p**s), (p**t, 0)])

    def xz3_residue_flip(S: GpmSet) -> GpmSet:
        s, t, k, tp = match_c(S)
        return _sorted_set(d, [(0, 0), (0, p**s), (-k * p**t, (1 - tp) * p**s)])

    def xz3_residue_invert(S: GpmSet) -> GpmSet:
        s, t, k, tp = match_c(S)
        if tp % p == 0:
            raise GuardFailed("bracket inverse needs the shear residue invertible")
        m = p ** (alpha - s)
        return _sorted_set(d, [(0, 0), (0, p**s), (-k * p**t, inv_mod(tp, m) * p**s)])

    def xz3_residue_flip_invert(S: GpmSet) -> GpmSet:
        s, t, k, tp = match_c(S)
        m = p ** (alpha - s)
        if (1 - tp) % p == 0:
            raise GuardFailed("bracket flip needs 1 - t' invertible")
        return _sorted_set(
            d, [(0, 0), (0, p**s), (k * p**t, inv_mod(1 - tp, m) * p**s)]
        )

    def xz3_unit_swap(S: GpmSet) -> GpmSet:
        z, x, w = _match_z_x(S)
        s = _match_power_of(p, alpha, z)
        if x % p == 0:
            raise GuardFailed("pattern needs an invertible X-exponent")
        return _sorted_set(d, [(0, 0), (0, 1), (-x * p**s, 0)])

    def xz3_tail_swap(S: GpmSet) -> GpmSet:
        z, x, w = _match_z_x(S)
        s = _match_power_of(p, alpha, z)
        t = _vp(x, p, alpha)
        tq = _vp(w, p, alpha)
        if tq >= t or w == 0:
            raise GuardFailed("swap form needs the Z-tail valuation below the X one")
        kq = w // p**tq
        return _sorted_set(
            d,
            [(0, 0), (0, p**tq),
             (-x // p**t * p ** min(t - tq + s, alpha), inv_mod(kq, d) * p**s)],
        )

    def xz3_tail_clear(S: GpmSet) -> GpmSet:
        z, x, w = _match_z_x(S)
        _match_power_of(p, alpha, z)
        if w == 0 or _vp(w, p, alpha) < _vp(x, p, alpha):
            raise GuardFailed("shear clear needs the Z-tail valuation at least the X one")
        return _sorted_set(d, [(0, 0), (0, z), (x, 0)])

    def xz3_unit_tail_clear(S: GpmSet) -> GpmSet:
        z, x, w = _match_z_x(S)
        _match_power_of(p, alpha, z)
        if w != z:
            raise GuardFailed("pattern is {I, Z^(p^s), X^(k p^t) Z^(p^s)}")
        return _sorted_set(d, [(0, 0), (0, z), (x, 0)])

    def xz3_split(S: GpmSet) -> GpmSet:
        s, t, k, tp = match_c(S)
        if s + t < alpha:
            raise GuardFailed("tensor split needs s + t >= alpha")
        return _sorted_set(d, [(0, 0), (0, p**s), (p**t, tp * p**s)])

    def match_b(S: GpmSet) -> tuple[int, int, int]:
        """{I, Z^(p^s), Z^(k p^t)}; returns (s, t, k)."""
        (s1, t1), (s2, t2) = _match_triple(S)
        if s1 != 0 or s2 != 0 or t1 == 0 or t2 == 0:
            raise GuardFailed("pattern needs two pure-Z members")
        s = _match_power_of(p, alpha, t1)
        t = _vp(t2, p, alpha)
        return s, t, t2 // p**t

    def z3_axis_swap(S: GpmSet) -> GpmSet:
        s, t, k = match_b(S)
        return _sorted_set(d, [(0, 0), (0, p**t), (0, inv_mod(k, d) * p**s)])

    def z3_flip_invert(S: GpmSet) -> GpmSet:
        s, t, k = match_b(S)
        m = p ** (alpha - s)
        tv = (k * p ** (t - s)) % m if t >= s else None
        if tv is None or (1 - tv) % p == 0:
            raise GuardFailed("chain flip needs 1 - t invertible on the chain")
        return _sorted_set(d, [(0, 0), (0, p**s), (0, inv_mod(1 - tv, m) * p**s)])

    def z3_invert_flip(S: GpmSet) -> GpmSet:
        s, t, k = match_b(S)
        m = p ** (alpha - s)
        if t != s:
            raise GuardFailed("chain move needs an invertible chain residue")
        tv = k % m
        return _sorted_set(d, [(0, 0), (0, p**s), (0, ((1 - inv_mod(tv, m)) % m) * p**s)])

    return [
        _rule("x3-axis-swap", x3_axis_swap),
        _rule("x3-sign-flip", x3_sign_flip),
        _rule("x3-split", x3_split),
        _rule("xz3-residue-flip", xz3_residue_flip),
        _rule("xz3-residue-invert", xz3_residue_invert),
        _rule("xz3-residue-flip-invert", xz3_residue_flip_invert),
        _rule("xz3-unit-swap", xz3_unit_swap),
        _rule("xz3-tail-swap", xz3_tail_swap),
        _rule("xz3-tail-clear", xz3_tail_clear),
        _rule("xz3-unit-tail-clear", xz3_unit_tail_clear),
        _rule("xz3-split", xz3_split),
        _rule("z3-axis-swap", z3_axis_swap),
        _rule("z3-flip-invert", z3_flip_invert),
        _rule("z3-invert-flip", z3_invert_flip),
    ]


def _gcd_rule(d: int) -> Move:
    from math import gcd

    def fn(S: GpmSet) -> GpmSet:
        if len(S.members) != 2 or S.members[0] != (0, 0):
            raise GuardFailed("the content rule applies to normalized pairs only")
        s, t = S.members[1]
        g = gcd(gcd(s, t), d)
        if g == 0 or (s, t) == (0, g % d):
            raise GuardFailed("pair already in content form")
        return GpmSet(d, ((0, 0), (0, g)))

    return _rule("gcd", fn)


def rule_catalog(d: int) -> list[Move]:
    """All named rewrite rules available at dimension d."""
    rules: list[Move] = [_gcd_rule(d)]
    pa = prime_power(d)
    if pa is not None:
        p, alpha = pa
        if alpha == 2:
            rules.extend(_p2_rules(p))
        if alpha >= 2:
            rules.extend(_alpha_rules(p, alpha))
    return rules


_MOVE_RE = re.compile(
    r"^(?:(?P<plain>[PRV])"
    r"|Q\((?P<qk>-?\d+)\)"
    r"|PIVOT\((?P<pj>\d+)\)"
    r"|TRANSLATE\((?P<tx>-?\d+),(?P<tz>-?\d+)\)"
    r"|W\((?P<ws>\d+),(?P<wt>\d+),(?P<wk>\d+)\)"
    r"|RULE\((?P<rule>[^)]+)\))$"
)


def parse_move(label: str, d: int) -> Move:
    """Reconstruct a move from its serialized label for dimension d."""
    m = _MOVE_RE.match(label.replace(" ", ""))
    if m is None:
        raise PreconditionViolated(f"unparseable move label {label!r}")
    if m["plain"]:
        return _clifford_move(m["plain"], d)
    if m["qk"]:
        return _clifford_move("Q", d, int(m["qk"]))
    if m["pj"]:
        return _pivot_move_obj(int(m["pj"]))
    if m["tx"] is not None:
        return _translate_move_obj((int(m["tx"]), int(m["tz"])))
    if m["ws"] is not None:
        pa = prime_power(d)
        if pa is None:
            raise PreconditionViolated(f"W moves need a prime-power dimension, d={d}")
        p, alpha = pa
        return _w_move_obj(p, alpha, int(m["ws"]), int(m["wt"]), int(m["wk"]))
    name = m["rule"]
    for rule in rule_catalog(d):
        if rule.label == f"RULE({name})":
            return rule
    raise PreconditionViolated(f"unknown rule {name!r} at dimension {d}")


def apply_trace(S: GpmSet, labels: list[str]) -> GpmSet:
    """Replay a serialized move trace on a normalized set."""
    cur = GpmSet(S.d, tuple(sorted(S.members)))
    for label in labels:
        cur = parse_move(label, S.d).apply(cur)
    return cur
