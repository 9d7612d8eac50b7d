"""
Osborn identities and holomorph theorems as executable checks.

Every check scans a finite instance space and records the first failing
instance as its witness. Witness tuples put group indices (into the
canonical element order of A) before loop elements:

    (x, y, z)              Osborn identities on L or on the holomorph
    (i, j, x, y, z)        twisted Osborn identity, α = A[i], φ = A[j]
    (i, x, u, v)           triple families at α = A[i], failing at (u, v)
    (i, x) / (j, x)        point claims at α or φ

Each result also carries a layout string with one letter per witness
coordinate, so reports can show loop elements 1-based and group indices
as they are.

Notation used in statements: c = xα·x^ρ (the left offset of x under α) and
d = x^λ·xφ⁻¹ (the right offset of x under φ). They satisfy
L_x⁻¹L_{xα} = L_c and R_x⁻¹R_{xφ⁻¹} = R_d whenever the holomorph is Osborn.
Compositions are postfix: ``U * V`` applies U first.
"""

import dataclasses
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.config.settings import get_settings
from src.loop_theory.autotopy import (
    NUCLEUS_MAPS,
    AutotopismTriple,
    NucleusIsoWitness,
    PermGroup,
    autotopism_violation,
    nucleus_iso,
    regular_sets,
)
from src.loop_theory.core_tables import LoopTable, Perm, identity_perm
from src.loop_theory.errors import UnknownName
from src.loop_theory.holomorph import HolomorphLoop, build_holomorph
from src.loop_theory.nuclei_centers import NucleiReport, nuclei_report
from src.verification.checks import (
    FAILS,
    SKIPPED,
    CheckResult,
    TheoremReport,
    bundle,
    failed,
    passed,
    skipped,
)

logger = logging.getLogger(__name__)

OSBORN_VARIANTS = ("division", "left_inverse", "right_inverse")

OSBORN_STATEMENTS = {
    "division": "x(yz·x) = (x^λ\\y)·zx",
    "left_inverse": "x(yz·x) = x(yx^λ·x)·zx",
    "right_inverse": "x(yz·x) = x(yx·x^ρ)·zx",
}


class VerifierContext:
    """Lazily computed data shared by the checks on one (L, A) pair."""

    def __init__(self, L: LoopTable, A: Optional[PermGroup] = None, budget: Optional[int] = None):
        self.L = L
        self.A = A if A is not None else PermGroup.trivial(L.n)
        self.budget = get_settings().holomorph_budget if budget is None else budget
        self.phi_inverses: Tuple[Perm, ...] = tuple(alpha.inverse() for alpha in self.A)
        self.identity = identity_perm(L.n)

    @cached_property
    def nuclei(self) -> NucleiReport:
        return nuclei_report(self.L)

    @cached_property
    def regular(self):
        return regular_sets(self.L, self.nuclei)

    @cached_property
    def maps(self) -> Dict[str, NucleusIsoWitness]:
        return {name: nucleus_iso(self.L, name, self.regular, self.nuclei) for name in NUCLEUS_MAPS}

    @cached_property
    def holomorph(self) -> HolomorphLoop:
        return build_holomorph(self.L, self.A, budget=self.budget)

    @cached_property
    def loop_osborn(self) -> CheckResult:
        return osborn_check(self.L, "division")

    @cached_property
    def holomorph_osborn(self) -> CheckResult:
        return holomorph_osborn_direct(self.L, self.A, ctx=self)

    def known_holomorph_verdict(self) -> Optional[bool]:
        if "holomorph_osborn" in self.__dict__:
            return self.__dict__["holomorph_osborn"].holds
        return None

    # --- Element helpers ---

    def left_offset(self, i: int, x: int) -> int:
        """xα·x^ρ for α = A[i]."""
        return self.L.mul(self.A[i](x), self.L.right_inverse(x))

    def right_offset(self, j: int, x: int) -> int:
        """x^λ·xφ⁻¹ for φ = A[j]."""
        return self.L.mul(self.L.left_inverse(x), self.phi_inverses[j](x))

    def lt(self, a: int) -> Perm:
        return self.L.left_translation(a)

    def rt(self, a: int) -> Perm:
        return self.L.right_translation(a)

    @cached_property
    def _lt_inverses(self) -> Tuple[Perm, ...]:
        return tuple(self.L.left_translation(a).inverse() for a in self.L.elements)

    @cached_property
    def _rt_inverses(self) -> Tuple[Perm, ...]:
        return tuple(self.L.right_translation(a).inverse() for a in self.L.elements)

    def lt_inv(self, a: int) -> Perm:
        return self._lt_inverses[a]

    def rt_inv(self, a: int) -> Perm:
        return self._rt_inverses[a]

    # Permutations that recur across several checks.

    def left_quotient(self, i: int, x: int) -> Perm:
        """L_x⁻¹L_{xα}."""
        return self.lt_inv(x) * self.lt(self.A[i](x))

    def right_quotient(self, j: int, x: int) -> Perm:
        """R_x⁻¹R_{xφ⁻¹}."""
        return self.rt_inv(x) * self.rt(self.phi_inverses[j](x))

    def conjugated_quotient(self, j: int, x: int) -> Perm:
        """L_x⁻¹R_x⁻¹R_{xφ⁻¹}L_x."""
        return self.lt_inv(x) * self.right_quotient(j, x) * self.lt(x)


# --- Claims ---

@dataclass(frozen=True)
class Claim:
    """
    A universally quantified statement over one instance space.

    ``kind == "triple"``: ``fn`` builds an AutotopismTriple from the
    parameters and the claim is that it is an autotopism.
    ``kind == "point"``: ``fn`` returns whether the claim holds at the
    instance. ``replay`` overrides ``fn`` when re-evaluating witnesses, and
    ``scanner`` overrides the default instance loop.
    """

    name: str
    statement: str
    space: str
    kind: str
    fn: Callable
    replay: Optional[Callable] = None
    scanner: Optional[Callable] = None

    def holds_at(self, ctx: VerifierContext, witness: Sequence) -> bool:
        if self.kind == "triple":
            *params, u, v = witness
            t = self.fn(ctx, *params)
            L = ctx.L
            return L.mul(t.a(u), t.b(v)) == t.c(L.mul(u, v))
        evaluate = self.replay or self.fn
        return bool(evaluate(ctx, *witness))


CLAIMS: Dict[str, Claim] = {}


def _register(*claims: Claim) -> None:
    for claim in claims:
        CLAIMS[claim.name] = claim


def _space(ctx: VerifierContext, key: str) -> Iterable[Tuple[int, ...]]:
    m, n = ctx.A.order, ctx.L.n
    spaces = {
        "a": lambda: ((i,) for i in range(m)),
        "ax": lambda: product(range(m), range(n)),
        "px": lambda: product(range(m), range(n)),
        "apx": lambda: product(range(m), range(m), range(n)),
        "axy": lambda: product(range(m), range(n), range(n)),
        "pxy": lambda: product(range(m), range(n), range(n)),
        "kax": lambda: product(range(3), range(m), range(n)),
    }
    return spaces[key]()


def _scan(ctx: VerifierContext, claim: Claim) -> CheckResult:
    if claim.scanner is not None:
        return claim.scanner(ctx, claim)
    scanned = 0
    cells = ctx.L.n * ctx.L.n
    for params in _space(ctx, claim.space):
        if claim.kind == "triple":
            bad = autotopism_violation(ctx.L, claim.fn(ctx, *params))
            scanned += cells
            if bad is not None:
                return failed(claim.name, claim.statement, params + bad, scanned, claim.space + "uv")
        else:
            scanned += 1
            if not claim.fn(ctx, *params):
                return failed(claim.name, claim.statement, params, scanned, claim.space)
    return passed(claim.name, claim.statement, scanned)


def _scan_all(ctx: VerifierContext, names: Sequence[str]) -> List[CheckResult]:
    return [_scan(ctx, CLAIMS[name]) for name in names]


# --- Definitional helpers used by witness replay ---

def _triple_ok(L: LoopTable, a: Perm, b: Perm, c: Perm) -> bool:
    return all(
        L.mul(a(u), b(v)) == c(L.mul(u, v)) for u in L.elements for v in L.elements
    )


def _is_rho_regular(L: LoopTable, u: Perm) -> bool:
    return _triple_ok(L, identity_perm(L.n), u, u)


def _is_lambda_regular(L: LoopTable, u: Perm) -> bool:
    return _triple_ok(L, u, identity_perm(L.n), u)


def _is_mu_regular(L: LoopTable, u: Perm) -> bool:
    # x = e forces the partner to be L_{eU}⁻¹.
    partner = L.left_translation(u(L.e)).inverse()
    return _triple_ok(L, u, partner, identity_perm(L.n))


def _is_adjoint(L: LoopTable, v: Perm) -> bool:
    # y = e forces the μ-regular map to be R_{eV⁻¹}⁻¹.
    base = L.right_translation(v.inverse()(L.e)).inverse()
    return _triple_ok(L, base, v.inverse(), identity_perm(L.n))


def _is_nuclear(L: LoopTable, a: int) -> bool:
    m = L.mul
    for y in L.elements:
        for z in L.elements:
            if m(a, m(y, z)) != m(m(a, y), z):
                return False
            if m(m(y, a), z) != m(y, m(a, z)):
                return False
            if m(m(y, z), a) != m(y, m(z, a)):
                return False
    return True


def _is_central(L: LoopTable, a: int) -> bool:
    return _is_nuclear(L, a) and all(L.mul(a, x) == L.mul(x, a) for x in L.elements)


# --- Osborn identities ---

def _osborn_scalar(L: LoopTable, variant: str, x: int, y: int, z: int) -> bool:
    m = L.mul
    zx = m(z, x)
    if variant == "division":
        left = L.ldiv(L.left_inverse(x), y)
    elif variant == "left_inverse":
        left = m(x, m(m(y, L.left_inverse(x)), x))
    else:
        left = m(x, m(m(y, x), L.right_inverse(x)))
    return m(x, m(m(y, z), x)) == m(left, zx)


def _osborn_mismatch(L: LoopTable, variant: str, x: int) -> np.ndarray:
    """Boolean grid over (y, z) marking failures of the chosen form at x."""
    T = L.table
    zx = T[:, x]
    lhs = T[x][zx[T]]
    if variant == "division":
        left = L.ldiv_table[L.left_inverse(x)]
    elif variant == "left_inverse":
        left = T[x][zx[T[:, L.left_inverse(x)]]]
    else:
        left = T[x][T[:, L.right_inverse(x)][zx]]
    rhs = T[left[:, None], zx[None, :]]
    return lhs != rhs


def _osborn_scan(L: LoopTable, variant: str, name: str) -> CheckResult:
    statement = OSBORN_STATEMENTS[variant]
    scanned = 0
    for x in L.elements:
        bad = np.argwhere(_osborn_mismatch(L, variant, x))
        scanned += L.n * L.n
        if bad.size:
            y, z = bad[0]
            return failed(name, statement, (x, int(y), int(z)), scanned, "xyz")
    return passed(name, statement, scanned)


for _variant in OSBORN_VARIANTS:
    _register(Claim(
        name=f"osborn.{_variant}",
        statement=OSBORN_STATEMENTS[_variant],
        space="xyz",
        kind="point",
        fn=lambda ctx, x, y, z, _v=_variant: _osborn_scalar(ctx.L, _v, x, y, z),
    ))
_register(Claim(
    name="nuclear_conditions.osborn",
    statement=OSBORN_STATEMENTS["division"],
    space="xyz",
    kind="point",
    fn=lambda ctx, x, y, z: _osborn_scalar(ctx.L, "division", x, y, z),
))
_register(Claim(
    name="holomorph_osborn",
    statement="the holomorph satisfies " + OSBORN_STATEMENTS["division"],
    space="xyz",
    kind="point",
    fn=lambda ctx, x, y, z: _osborn_scalar(ctx.holomorph.h_table, "division", x, y, z),
))


def osborn_check(L: LoopTable, variant: str = "division") -> CheckResult:
    """
    Scan one Osborn form over all (x, y, z), or all three with ``"all"``.

    With ``"all"`` the bundle notes whether the three verdicts coincide.
    """
    if variant == "all":
        parts = [osborn_check(L, v) for v in OSBORN_VARIANTS]
        agree = len({p.status for p in parts}) == 1
        if not agree:
            logger.warning("⚠️ Osborn forms disagree on %s: %s", L.label,
                           {p.name: p.status for p in parts})
        return bundle("osborn", parts, "three forms of the Osborn identity", variants_agree=agree)
    if variant not in OSBORN_VARIANTS:
        raise UnknownName("Osborn variant", variant, OSBORN_VARIANTS + ("all",))
    return _osborn_scan(L, variant, f"osborn.{variant}")


def holomorph_osborn_direct(L: LoopTable, A: PermGroup, ctx: Optional[VerifierContext] = None) -> CheckResult:
    """Build the A-holomorph and scan it for the Osborn identity."""
    ctx = ctx or VerifierContext(L, A)
    H = ctx.holomorph
    logger.info("Scanning holomorph of order %d for the Osborn identity", H.order)
    result = _osborn_scan(H.h_table, "division", "holomorph_osborn")
    return dataclasses.replace(result, statement=CLAIMS["holomorph_osborn"].statement)


# --- Twisted Osborn identity and its autotopism form ---

def _twisted_scalar(ctx: VerifierContext, i: int, j: int, x: int, y: int, z: int) -> bool:
    L = ctx.L
    m = L.mul
    xa = ctx.A[i](x)
    xp = ctx.phi_inverses[j](x)
    lhs = m(xa, m(m(y, z), xp))
    rhs = m(m(xa, m(m(y, L.left_inverse(x)), x)), m(z, xp))
    return lhs == rhs


def _twisted_scanner(ctx: VerifierContext, claim: Claim) -> CheckResult:
    L = ctx.L
    T = L.table
    m = ctx.A.order
    scanned = 0
    for i, j in product(range(m), range(m)):
        alpha = ctx.A[i].array
        phi_inv = ctx.phi_inverses[j].array
        for x in L.elements:
            xa = alpha[x]
            col = T[:, phi_inv[x]]
            lhs = T[xa][col[T]]
            g = T[xa][T[:, x][T[:, L.left_inverse(x)]]]
            rhs = T[g[:, None], col[None, :]]
            bad = np.argwhere(lhs != rhs)
            scanned += L.n * L.n
            if bad.size:
                y, z = bad[0]
                return failed(claim.name, claim.statement, (i, j, x, int(y), int(z)), scanned, claim.space)
    return passed(claim.name, claim.statement, scanned)


def _twisted_triple(ctx: VerifierContext, i: int, j: int, x: int) -> AutotopismTriple:
    L = ctx.L
    xa = ctx.A[i](x)
    xp = ctx.phi_inverses[j](x)
    a = ctx.rt(L.left_inverse(x)) * ctx.rt(x) * ctx.lt(xa)
    b = ctx.rt(xp)
    return AutotopismTriple(a, b, ctx.rt(xp) * ctx.lt(xa))


_register(
    Claim(
        name="twisted_osborn",
        statement="xα(yz·xφ⁻¹) = xα(yx^λ·x)·(z·xφ⁻¹)",
        space="apxyz",
        kind="point",
        fn=_twisted_scalar,
        scanner=_twisted_scanner,
    ),
    Claim(
        name="twisted_autotopism",
        statement="(R_{x^λ}R_xL_{xα}, R_{xφ⁻¹}, R_{xφ⁻¹}L_{xα}) is an autotopism",
        space="apx",
        kind="triple",
        fn=_twisted_triple,
    ),
)


def _context(L: LoopTable, A: PermGroup, ctx: Optional[VerifierContext]) -> VerifierContext:
    return ctx or VerifierContext(L, A)


def twisted_osborn_check(L: LoopTable, A: PermGroup, ctx: Optional[VerifierContext] = None) -> CheckResult:
    """The Osborn identity twisted by α, φ ∈ A, over all x, y, z."""
    return _scan(_context(L, A, ctx), CLAIMS["twisted_osborn"])


def twisted_autotopism_check(L: LoopTable, A: PermGroup, ctx: Optional[VerifierContext] = None) -> CheckResult:
    return _scan(_context(L, A, ctx), CLAIMS["twisted_autotopism"])


# --- Offset autotopisms (hypothesis: L is Osborn) ---

_register(
    Claim(
        name="offset_autotopisms.left",
        statement="(L_x⁻¹L_{xα}, I, L_x⁻¹L_{xα}) is an autotopism",
        space="ax",
        kind="triple",
        fn=lambda ctx, i, x: AutotopismTriple(
            ctx.left_quotient(i, x), ctx.identity, ctx.left_quotient(i, x)),
    ),
    Claim(
        name="offset_autotopisms.right",
        statement="(I, R_x⁻¹R_{xφ⁻¹}, L_x⁻¹R_x⁻¹R_{xφ⁻¹}L_x) is an autotopism",
        space="px",
        kind="triple",
        fn=lambda ctx, j, x: AutotopismTriple(
            ctx.identity, ctx.right_quotient(j, x), ctx.conjugated_quotient(j, x)),
    ),
)


def offset_autotopism_check(L: LoopTable, A: PermGroup, ctx: Optional[VerifierContext] = None) -> CheckResult:
    ctx = _context(L, A, ctx)
    if not ctx.loop_osborn.holds:
        return skipped("offset_autotopisms", "HypothesisNotMet: the loop is not Osborn")
    parts = _scan_all(ctx, ["offset_autotopisms.left", "offset_autotopisms.right"])
    return bundle("offset_autotopisms", parts, "two offset autotopism families")


# --- Nuclear conditions ---

def _offset_kind(ctx: VerifierContext, kind: int, k: int, x: int) -> int:
    if kind == 0:
        return ctx.left_offset(k, x)
    if kind == 1:
        return ctx.L.mul(ctx.L.left_inverse(x), ctx.A[k](x))
    return ctx.right_offset(k, x)


_register(
    Claim(
        name="nuclear_conditions.offsets_nuclear",
        statement="xα·x^ρ, x^λ·xφ and x^λ·xφ⁻¹ lie in the nucleus",
        space="kax",
        kind="point",
        fn=lambda ctx, kind, k, x: _offset_kind(ctx, kind, k, x) in ctx.nuclei.nucleus,
        replay=lambda ctx, kind, k, x: _is_nuclear(ctx.L, _offset_kind(ctx, kind, k, x)),
    ),
    Claim(
        name="nuclear_conditions.left_offset_cancel",
        statement="(xα·x^ρ)x = xα",
        space="ax",
        kind="point",
        fn=lambda ctx, i, x: ctx.L.mul(ctx.left_offset(i, x), x) == ctx.A[i](x),
    ),
    Claim(
        name="nuclear_conditions.right_offset_cancel",
        statement="x(x^λ·xφ⁻¹) = xφ⁻¹",
        space="px",
        kind="point",
        fn=lambda ctx, j, x: ctx.L.mul(x, ctx.right_offset(j, x)) == ctx.phi_inverses[j](x),
    ),
)


def nuclear_conditions(L: LoopTable, A: PermGroup, ctx: Optional[VerifierContext] = None) -> CheckResult:
    """Four conditions whose conjunction characterizes an Osborn holomorph."""
    ctx = _context(L, A, ctx)
    osborn_part = dataclasses.replace(ctx.loop_osborn, name="nuclear_conditions.osborn")
    parts = [osborn_part] + _scan_all(ctx, [
        "nuclear_conditions.offsets_nuclear",
        "nuclear_conditions.left_offset_cancel",
        "nuclear_conditions.right_offset_cancel",
    ])
    return bundle("nuclear_conditions", parts, "L Osborn, offsets nuclear, offsets cancel")


# --- Consequences of an Osborn holomorph ---

def _needs_osborn_holomorph(ctx: VerifierContext, name: str) -> Optional[CheckResult]:
    if not ctx.holomorph_osborn.holds:
        return skipped(name, "HypothesisNotMet: the holomorph is not Osborn")
    return None


def _offset_identity(name: str, statement: str, space: str, fn: Callable) -> Claim:
    return Claim(name=f"offset_identities.{name}", statement=statement, space=space, kind="point", fn=fn)


def _left_absorb(ctx, i, x, y):
    m = ctx.L.mul
    return m(ctx.left_offset(i, x), m(x, y)) == m(ctx.A[i](x), y)


def _left_inverse_offset(ctx, i, x):
    L = ctx.L
    return L.mul(x, L.right_inverse(ctx.A[i](x))) == L.right_inverse(ctx.left_offset(i, x))


def _conjugate_absorb(ctx, j, x, y):
    m = ctx.L.mul
    xp = ctx.phi_inverses[j](x)
    return m(m(x, m(y, x)), ctx.right_offset(j, x)) == m(x, m(y, xp))


def _right_inverse_offset(ctx, j, x):
    L = ctx.L
    xp = ctx.phi_inverses[j](x)
    return L.mul(L.left_inverse(xp), x) == L.left_inverse(ctx.right_offset(j, x))


def _right_absorb(ctx, j, x, y):
    m = ctx.L.mul
    return m(m(y, x), ctx.right_offset(j, x)) == m(y, ctx.phi_inverses[j](x))


def _division_shift(ctx, j, x, y):
    L = ctx.L
    xp = ctx.phi_inverses[j](x)
    return L.mul(x, L.mul(L.rdiv(y, x), xp)) == L.mul(L.rdiv(L.mul(x, y), x), xp)


def _division_point(ctx, j, x):
    L = ctx.L
    xp = ctx.phi_inverses[j](x)
    return L.mul(x, L.mul(L.rdiv(L.right_inverse(x), x), xp)) == ctx.right_offset(j, x)


_register(
    _offset_identity("left_absorb", "(xα·x^ρ)·xy = xα·y", "axy", _left_absorb),
    _offset_identity("left_inverse_offset", "x·(xα)^ρ = (xα·x^ρ)^ρ", "ax", _left_inverse_offset),
    _offset_identity("left_cancel", "(xα·x^ρ)x = xα", "ax",
                     lambda ctx, i, x: ctx.L.mul(ctx.left_offset(i, x), x) == ctx.A[i](x)),
    _offset_identity("conjugate_absorb", "(x·yx)(x^λ·xφ⁻¹) = x(y·xφ⁻¹)", "pxy", _conjugate_absorb),
    _offset_identity("right_inverse_offset", "(xφ⁻¹)^λ·x = (x^λ·xφ⁻¹)^λ", "px", _right_inverse_offset),
    _offset_identity("right_absorb", "yx·(x^λ·xφ⁻¹) = y·xφ⁻¹", "pxy", _right_absorb),
    _offset_identity("right_cancel", "x(x^λ·xφ⁻¹) = xφ⁻¹", "px",
                     lambda ctx, j, x: ctx.L.mul(x, ctx.right_offset(j, x)) == ctx.phi_inverses[j](x)),
    _offset_identity("division_shift", "x(y/x·xφ⁻¹) = (xy)/x·xφ⁻¹", "pxy", _division_shift),
    _offset_identity("division_point", "x(x^ρ/x·xφ⁻¹) = x^λ·xφ⁻¹", "px", _division_point),
)

OFFSET_IDENTITIES = (
    "left_absorb", "left_inverse_offset", "left_cancel",
    "conjugate_absorb", "right_inverse_offset", "right_absorb", "right_cancel",
    "division_shift", "division_point",
)


def offset_identities(L: LoopTable, A: PermGroup, ctx: Optional[VerifierContext] = None) -> CheckResult:
    """Element identities in the offsets; divisions bind tighter than the product."""
    ctx = _context(L, A, ctx)
    skip = _needs_osborn_holomorph(ctx, "offset_identities")
    if skip:
        return skip
    parts = _scan_all(ctx, [f"offset_identities.{name}" for name in OFFSET_IDENTITIES])
    return bundle("offset_identities", parts, "identities in xα·x^ρ and x^λ·xφ⁻¹")


def _left_offset_perm(ctx, i, x, side):
    c = ctx.left_offset(i, x)
    return ctx.lt(c) if side == "L" else ctx.rt(c)


def _right_offset_perm(ctx, j, x, side):
    d = ctx.right_offset(j, x)
    return ctx.lt(d) if side == "L" else ctx.rt(d)


_register(
    Claim("regular_autotopisms.left_quotient", "(L_x⁻¹L_{xα}, I, L_x⁻¹L_{xα})", "ax", "triple",
          lambda ctx, i, x: AutotopismTriple(ctx.left_quotient(i, x), ctx.identity, ctx.left_quotient(i, x))),
    Claim("regular_autotopisms.left_offset", "(L_{xα·x^ρ}, I, L_{xα·x^ρ})", "ax", "triple",
          lambda ctx, i, x: AutotopismTriple(
              _left_offset_perm(ctx, i, x, "L"), ctx.identity, _left_offset_perm(ctx, i, x, "L"))),
    Claim("regular_autotopisms.right_quotient", "(I, R_x⁻¹R_{xφ⁻¹}, R_x⁻¹R_{xφ⁻¹})", "px", "triple",
          lambda ctx, j, x: AutotopismTriple(ctx.identity, ctx.right_quotient(j, x), ctx.right_quotient(j, x))),
    Claim("regular_autotopisms.conjugated_quotient",
          "(I, L_x⁻¹R_x⁻¹R_{xφ⁻¹}L_x, L_x⁻¹R_x⁻¹R_{xφ⁻¹}L_x)", "px", "triple",
          lambda ctx, j, x: AutotopismTriple(
              ctx.identity, ctx.conjugated_quotient(j, x), ctx.conjugated_quotient(j, x))),
    Claim("regular_autotopisms.right_offset", "(I, R_{x^λ·xφ⁻¹}, R_{x^λ·xφ⁻¹})", "px", "triple",
          lambda ctx, j, x: AutotopismTriple(
              ctx.identity, _right_offset_perm(ctx, j, x, "R"), _right_offset_perm(ctx, j, x, "R"))),
    Claim("regular_autotopisms.left_offset_middle", "(R_{xα·x^ρ}, L_{xα·x^ρ}⁻¹, I)", "ax", "triple",
          lambda ctx, i, x: AutotopismTriple(
              _left_offset_perm(ctx, i, x, "R"), _left_offset_perm(ctx, i, x, "L").inverse(), ctx.identity)),
    Claim("regular_autotopisms.right_offset_middle", "(R_{x^λ·xφ⁻¹}, L_{x^λ·xφ⁻¹}⁻¹, I)", "px", "triple",
          lambda ctx, j, x: AutotopismTriple(
              _right_offset_perm(ctx, j, x, "R"), _right_offset_perm(ctx, j, x, "L").inverse(), ctx.identity)),
)

REGULAR_AUTOTOPISMS = (
    "left_quotient", "left_offset", "right_quotient", "conjugated_quotient",
    "right_offset", "left_offset_middle", "right_offset_middle",
)


def regular_autotopisms(L: LoopTable, A: PermGroup, ctx: Optional[VerifierContext] = None) -> CheckResult:
    ctx = _context(L, A, ctx)
    skip = _needs_osborn_holomorph(ctx, "regular_autotopisms")
    if skip:
        return skip
    parts = _scan_all(ctx, [f"regular_autotopisms.{name}" for name in REGULAR_AUTOTOPISMS])
    return bundle("regular_autotopisms", parts, "autotopism families built from the offsets")


# --- Regular-set memberships ---

def _membership(name, statement, space, member, group_field, definitional) -> Claim:
    return Claim(
        name=f"regular_memberships.{name}",
        statement=statement,
        space=space,
        kind="point",
        fn=lambda ctx, k, x: member(ctx, k, x) in getattr(ctx.regular, group_field),
        replay=lambda ctx, k, x: definitional(ctx.L, member(ctx, k, x)),
    )


def _left_coset(ctx, i, x) -> bool:
    factor = ctx.left_quotient(i, x)
    return factor in ctx.regular.lambda_set and ctx.lt(x) * factor == ctx.lt(ctx.A[i](x))


def _left_coset_replay(ctx, i, x) -> bool:
    factor = ctx.left_quotient(i, x)
    return _is_lambda_regular(ctx.L, factor) and ctx.lt(x) * factor == ctx.lt(ctx.A[i](x))


def _right_coset(ctx, j, x, definitional=False) -> bool:
    factor = ctx.right_quotient(j, x)
    member = _is_rho_regular(ctx.L, factor) if definitional else factor in ctx.regular.p_set
    return member and ctx.rt(x) * factor == ctx.rt(ctx.phi_inverses[j](x))


def _double_coset(ctx, j, x, definitional=False) -> bool:
    factor = ctx.conjugated_quotient(j, x)
    member = _is_rho_regular(ctx.L, factor) if definitional else factor in ctx.regular.p_set
    target = ctx.rt(ctx.phi_inverses[j](x)) * ctx.lt(x)
    return member and ctx.rt(x) * ctx.lt(x) * factor == target


_register(
    _membership("left_quotient_in_lambda", "L_x⁻¹L_{xα} ∈ Λ", "ax",
                lambda ctx, i, x: ctx.left_quotient(i, x), "lambda_set", _is_lambda_regular),
    _membership("left_offset_in_lambda", "L_{xα·x^ρ} ∈ Λ", "ax",
                lambda ctx, i, x: _left_offset_perm(ctx, i, x, "L"), "lambda_set", _is_lambda_regular),
    Claim("regular_memberships.left_coset", "L_{xα} ∈ L_xΛ", "ax", "point",
          _left_coset, replay=_left_coset_replay),
    _membership("right_quotient_in_rho", "R_x⁻¹R_{xφ⁻¹} ∈ P", "px",
                lambda ctx, j, x: ctx.right_quotient(j, x), "p_set", _is_rho_regular),
    _membership("conjugated_quotient_in_rho", "L_x⁻¹R_x⁻¹R_{xφ⁻¹}L_x ∈ P", "px",
                lambda ctx, j, x: ctx.conjugated_quotient(j, x), "p_set", _is_rho_regular),
    _membership("right_offset_in_rho", "R_{x^λ·xφ⁻¹} ∈ P", "px",
                lambda ctx, j, x: _right_offset_perm(ctx, j, x, "R"), "p_set", _is_rho_regular),
    Claim("regular_memberships.right_coset", "R_{xφ⁻¹} ∈ R_xP", "px", "point",
          _right_coset, replay=lambda ctx, j, x: _right_coset(ctx, j, x, definitional=True)),
    Claim("regular_memberships.double_coset", "R_{xφ⁻¹}L_x ∈ R_xL_xP", "px", "point",
          _double_coset, replay=lambda ctx, j, x: _double_coset(ctx, j, x, definitional=True)),
    _membership("left_offset_in_mu", "R_{xα·x^ρ} ∈ Φ", "ax",
                lambda ctx, i, x: _left_offset_perm(ctx, i, x, "R"), "phi_set", _is_mu_regular),
    _membership("right_offset_in_mu", "R_{x^λ·xφ⁻¹} ∈ Φ", "px",
                lambda ctx, j, x: _right_offset_perm(ctx, j, x, "R"), "phi_set", _is_mu_regular),
    _membership("left_offset_in_adjoints", "L_{xα·x^ρ} ∈ Ψ", "ax",
                lambda ctx, i, x: _left_offset_perm(ctx, i, x, "L"), "psi_set", _is_adjoint),
    _membership("right_offset_in_adjoints", "L_{x^λ·xφ⁻¹} ∈ Ψ", "px",
                lambda ctx, j, x: _right_offset_perm(ctx, j, x, "L"), "psi_set", _is_adjoint),
)

REGULAR_MEMBERSHIPS = (
    "left_quotient_in_lambda", "left_offset_in_lambda", "left_coset",
    "right_quotient_in_rho", "conjugated_quotient_in_rho", "right_offset_in_rho",
    "right_coset", "double_coset",
    "left_offset_in_mu", "right_offset_in_mu", "left_offset_in_adjoints", "right_offset_in_adjoints",
)


def regular_memberships(L: LoopTable, A: PermGroup, ctx: Optional[VerifierContext] = None) -> CheckResult:
    """Memberships in P, Λ, Φ, Ψ and the coset factorizations."""
    ctx = _context(L, A, ctx)
    skip = _needs_osborn_holomorph(ctx, "regular_memberships")
    if skip:
        return skip
    parts = _scan_all(ctx, [f"regular_memberships.{name}" for name in REGULAR_MEMBERSHIPS])
    return bundle("regular_memberships", parts, "regular-set and coset memberships")


# --- Intersection of the regular groups ---

def _regular_intersection_set(ctx: VerifierContext) -> set:
    reg = ctx.regular
    return (set(reg.p_set.elements) & set(reg.lambda_set.elements)
            & set(reg.phi_set.elements) & set(reg.psi_set.elements))


def _in_all_regular(L: LoopTable, u: Perm) -> bool:
    return (_is_rho_regular(L, u) and _is_lambda_regular(L, u)
            and _is_mu_regular(L, u) and _is_adjoint(L, u))


def _intersection_scanner(ctx: VerifierContext, claim: Claim) -> CheckResult:
    common = _regular_intersection_set(ctx)
    group = set(ctx.A.elements)
    scanned = len(common | group)
    notes = {"intersection_order": len(common), "group_order": len(group)}
    for i, alpha in enumerate(ctx.A):
        if alpha not in common:
            return failed(claim.name, claim.statement, (0, i), scanned, "ka", **notes)
    for u in sorted(common):
        if u not in group:
            return failed(claim.name, claim.statement, (1,) + u.image, scanned, "k" + "i" * len(u.image), **notes)
    return passed(claim.name, claim.statement, scanned, **notes)


def _intersection_replay(ctx: VerifierContext, side: int, *rest: int) -> bool:
    if side == 0:
        return _in_all_regular(ctx.L, ctx.A[rest[0]])
    u = Perm(tuple(rest))
    return u in ctx.A or not _in_all_regular(ctx.L, u)


def _translation_form(ctx: VerifierContext, i: int) -> bool:
    L = ctx.L
    alpha = ctx.A[i]
    left = any(L.left_translation(pi(L.e)) == alpha for pi in ctx.regular.phi_set)
    right = any(L.right_translation(rho(L.e)).inverse() == alpha for rho in ctx.regular.psi_set)
    return left and right


def _translation_form_replay(ctx: VerifierContext, i: int) -> bool:
    # A μ-regular π with eπ = a is R_{a^ρ}⁻¹; an adjoint ϱ with eϱ = b is L_b.
    L = ctx.L
    alpha = ctx.A[i]
    a = alpha(L.e)
    pi = L.right_translation(L.right_inverse(a)).inverse()
    left = pi(L.e) == a and _is_mu_regular(L, pi) and L.left_translation(a) == alpha
    b = alpha.inverse()(L.e)
    right = _is_adjoint(L, L.left_translation(b)) and L.right_translation(b).inverse() == alpha
    return left and right


_register(
    Claim("regular_intersection.equality", "A = P ∩ Λ ∩ Φ ∩ Ψ", "a", "point",
          fn=lambda ctx, side, *rest: _intersection_replay(ctx, side, *rest),
          replay=_intersection_replay, scanner=_intersection_scanner),
    Claim("regular_intersection.translation_form", "α = L_{eπ} = R_{eϱ}⁻¹ for some π ∈ Φ, ϱ ∈ Ψ", "a", "point",
          fn=_translation_form, replay=_translation_form_replay),
)


def regular_intersection(L: LoopTable, A: PermGroup, ctx: Optional[VerifierContext] = None) -> CheckResult:
    """
    Compare A with P∩Λ∩Φ∩Ψ and look for translation forms of each α.

    In a group the intersection is {R_z : z central}, so this fails for
    every group with a non-trivial centre or a non-trivial A; the failure
    carries a witness like any other.
    """
    ctx = _context(L, A, ctx)
    skip = _needs_osborn_holomorph(ctx, "regular_intersection")
    if skip:
        return skip
    parts = _scan_all(ctx, ["regular_intersection.equality", "regular_intersection.translation_form"])
    return bundle("regular_intersection", parts, "A against the intersection of the regular groups")


# --- Images under the nucleus maps ---

def _map_image_is(ctx: VerifierContext, map_name: str, u: Perm, expected) -> bool:
    witness = ctx.maps[map_name]
    return witness.defined_at(u) and witness.image(u) == expected


def _image_claim(name, statement, space, fn) -> Claim:
    return Claim(f"isomorphism_images.{name}", statement, space, "point", fn)


def _conjugated_formula(ctx: VerifierContext, j: int, x: int) -> int:
    """x(x^ρ/x·xφ⁻¹)."""
    L = ctx.L
    return L.mul(x, L.mul(L.rdiv(L.right_inverse(x), x), ctx.phi_inverses[j](x)))


_register(
    _image_claim("left_quotient_translation", "L_x⁻¹L_{xα} = L_{xα·x^ρ}", "ax",
                 lambda ctx, i, x: ctx.left_quotient(i, x) == _left_offset_perm(ctx, i, x, "L")),
    _image_claim("lambda_image", "lambda_nucleus(L_{xα·x^ρ}) = xα·x^ρ", "ax",
                 lambda ctx, i, x: _map_image_is(ctx, "lambda_nucleus", _left_offset_perm(ctx, i, x, "L"),
                                                 ctx.left_offset(i, x))),
    _image_claim("adjoint_nucleus_left_image", "adjoint_nucleus(L_{xα·x^ρ}) = xα·x^ρ", "ax",
                 lambda ctx, i, x: _map_image_is(ctx, "adjoint_nucleus", _left_offset_perm(ctx, i, x, "L"),
                                                 ctx.left_offset(i, x))),
    _image_claim("right_quotient_conjugation", "R_x⁻¹R_{xφ⁻¹} = L_x⁻¹R_x⁻¹R_{xφ⁻¹}L_x", "px",
                 lambda ctx, j, x: ctx.right_quotient(j, x) == ctx.conjugated_quotient(j, x)),
    _image_claim("right_quotient_translation", "R_x⁻¹R_{xφ⁻¹} = R_{x^λ·xφ⁻¹}", "px",
                 lambda ctx, j, x: ctx.right_quotient(j, x) == _right_offset_perm(ctx, j, x, "R")),
    _image_claim("rho_image", "rho_nucleus(R_{x^λ·xφ⁻¹}) = x^λ·xφ⁻¹", "px",
                 lambda ctx, j, x: _map_image_is(ctx, "rho_nucleus", _right_offset_perm(ctx, j, x, "R"),
                                                 ctx.right_offset(j, x))),
    _image_claim("mu_right_image", "mu_nucleus(R_{x^λ·xφ⁻¹}) = x^λ·xφ⁻¹", "px",
                 lambda ctx, j, x: _map_image_is(ctx, "mu_nucleus", _right_offset_perm(ctx, j, x, "R"),
                                                 ctx.right_offset(j, x))),
    _image_claim("right_offset_formula", "x^λ·xφ⁻¹ = x(x^ρ/x·xφ⁻¹)", "px",
                 lambda ctx, j, x: ctx.right_offset(j, x) == _conjugated_formula(ctx, j, x)),
    _image_claim("conjugated_rho_image", "rho_nucleus(L_x⁻¹R_x⁻¹R_{xφ⁻¹}L_x) = x(x^ρ/x·xφ⁻¹)", "px",
                 lambda ctx, j, x: _map_image_is(ctx, "rho_nucleus", ctx.conjugated_quotient(j, x),
                                                 _conjugated_formula(ctx, j, x))),
    Claim("isomorphism_images.cross_quotient_translation", "R_x⁻¹R_{xφ⁻¹} = R_{xα·x^ρ}", "apx", "point",
          lambda ctx, i, j, x: ctx.right_quotient(j, x) == _left_offset_perm(ctx, i, x, "R")),
    _image_claim("mu_left_image", "mu_nucleus(R_{xα·x^ρ}) = xα·x^ρ", "ax",
                 lambda ctx, i, x: _map_image_is(ctx, "mu_nucleus", _left_offset_perm(ctx, i, x, "R"),
                                                 ctx.left_offset(i, x))),
    _image_claim("adjoint_nucleus_right_image", "adjoint_nucleus(L_{x^λ·xφ⁻¹}) = x^λ·xφ⁻¹", "px",
                 lambda ctx, j, x: _map_image_is(ctx, "adjoint_nucleus", _right_offset_perm(ctx, j, x, "L"),
                                                 ctx.right_offset(j, x))),
    _image_claim("adjoint_left_image", "adjoint(R_{xα·x^ρ}) = L_{xα·x^ρ}", "ax",
                 lambda ctx, i, x: _map_image_is(ctx, "adjoint", _left_offset_perm(ctx, i, x, "R"),
                                                 _left_offset_perm(ctx, i, x, "L"))),
    _image_claim("adjoint_right_image", "adjoint(R_{x^λ·xφ⁻¹}) = L_{x^λ·xφ⁻¹}", "px",
                 lambda ctx, j, x: _map_image_is(ctx, "adjoint", _right_offset_perm(ctx, j, x, "R"),
                                                 _right_offset_perm(ctx, j, x, "L"))),
)

ISOMORPHISM_IMAGES = (
    "left_quotient_translation", "lambda_image", "adjoint_nucleus_left_image",
    "right_quotient_conjugation", "right_quotient_translation", "rho_image", "mu_right_image",
    "right_offset_formula", "conjugated_rho_image",
    "cross_quotient_translation", "mu_left_image", "adjoint_nucleus_right_image",
    "adjoint_left_image", "adjoint_right_image",
)


def isomorphism_images(L: LoopTable, A: PermGroup, ctx: Optional[VerifierContext] = None) -> CheckResult:
    """
    Permutation equalities and pointwise images under the nucleus maps.

    ``cross_quotient_translation`` pairs an arbitrary φ with an arbitrary α
    and already fails for Z_3 with its full automorphism group.
    """
    ctx = _context(L, A, ctx)
    skip = _needs_osborn_holomorph(ctx, "isomorphism_images")
    if skip:
        return skip
    parts = _scan_all(ctx, [f"isomorphism_images.{name}" for name in ISOMORPHISM_IMAGES])
    return bundle("isomorphism_images", parts, "images of offset translations under the nucleus maps")


# --- Composite maps ---

# Postfix chains: ("a", "b") applies a first. "name^-1" is the inverse graph.
DERIVED_MAPS: Dict[str, Tuple[str, ...]] = {
    "lambda_to_mu": ("lambda_nucleus", "mu_nucleus^-1"),
    "mu_to_lambda": ("mu_nucleus", "lambda_nucleus^-1"),
    "rho_to_mu": ("rho_nucleus", "mu_nucleus^-1"),
    "mu_to_rho": ("mu_nucleus", "rho_nucleus^-1"),
    "rho_to_lambda": ("rho_nucleus", "lambda_nucleus^-1"),
    "lambda_to_rho": ("lambda_nucleus", "rho_nucleus^-1"),
    "adjoint_to_lambda": ("adjoint_nucleus", "lambda_nucleus^-1"),
    "lambda_to_adjoint": ("lambda_nucleus", "adjoint_nucleus^-1"),
}


class DomainMismatch(Exception):
    """A composite is undefined at a point, or its two sides have different types."""

    def __init__(self, step: str, value):
        self.step = step
        self.value = value
        super().__init__(f"{step} undefined at {value}")


def _expand(chain: Sequence[str]) -> Iterator[str]:
    for token in chain:
        if token in DERIVED_MAPS:
            yield from DERIVED_MAPS[token]
        else:
            yield token


def run_chain(ctx: VerifierContext, chain: Sequence[str], value):
    for token in _expand(chain):
        inverse = token.endswith("^-1")
        name = token[:-3] if inverse else token
        graph = ctx.maps[name]
        if inverse:
            if not graph.has_preimage(value):
                raise DomainMismatch(token, value)
            value = graph.preimage(value)
        else:
            if not graph.defined_at(value):
                raise DomainMismatch(token, value)
            value = graph.image(value)
    return value


def _form(ctx: VerifierContext, form: str, k: int, x: int):
    element = ctx.left_offset(k, x) if form.endswith("c") else ctx.right_offset(k, x)
    if form.startswith("L_"):
        return ctx.lt(element)
    if form.startswith("R_"):
        return ctx.rt(element)
    return element


# (label, point form, left chain, right chain or target form)
DIAGRAM_ITEMS: Tuple[Tuple[str, str, Tuple[str, ...], object], ...] = (
    ("mu_is_adjoint_then_lambda", "R_c", ("mu_nucleus",), ("adjoint", "lambda_nucleus")),
    ("mu_is_adjoint_then_adjoint_nucleus", "R_c", ("mu_nucleus",), ("adjoint", "adjoint_nucleus")),
    ("mu_is_adjoint_then_adjoint_nucleus_right", "R_d", ("mu_nucleus",), ("adjoint", "adjoint_nucleus")),
    ("rho_is_adjoint_then_adjoint_nucleus", "R_d", ("rho_nucleus",), ("adjoint", "adjoint_nucleus")),
    ("lambda_through_mu", "L_c", ("lambda_nucleus",), ("lambda_to_mu", "mu_nucleus")),
    ("lambda_through_adjoint", "L_c", ("lambda_nucleus",), ("lambda_to_mu", "adjoint", "adjoint_nucleus")),
    ("lambda_to_mu_image", "L_c", ("lambda_to_mu",), "R_c"),
    ("mu_through_lambda", "R_c", ("mu_nucleus",), ("mu_to_lambda", "lambda_nucleus")),
    ("mu_to_lambda_matches_adjoint", "R_c", ("mu_to_lambda", "lambda_nucleus"), ("adjoint", "adjoint_nucleus")),
    ("mu_to_lambda_image", "R_c", ("mu_to_lambda",), "L_c"),
    ("rho_through_mu", "R_d", ("rho_nucleus",), ("rho_to_mu", "mu_nucleus")),
    ("rho_through_adjoint", "R_d", ("rho_nucleus",), ("rho_to_mu", "adjoint", "adjoint_nucleus")),
    ("rho_to_mu_image", "R_d", ("rho_to_mu",), "R_d"),
    ("mu_through_rho", "R_d", ("mu_nucleus",), ("mu_to_rho", "rho_nucleus")),
    ("mu_to_rho_matches_adjoint", "R_d", ("mu_to_rho", "rho_nucleus"), ("adjoint", "adjoint_nucleus")),
    ("mu_to_rho_image", "R_d", ("mu_to_rho",), "R_d"),
    ("rho_to_mu_factors", "R_d", ("rho_to_mu",), ("rho_to_lambda", "lambda_to_mu")),
    ("rho_through_lambda", "R_d", ("rho_nucleus",), ("rho_to_lambda", "lambda_nucleus")),
    ("rho_to_lambda_image", "R_d", ("rho_to_lambda",), "L_d"),
    ("mu_to_rho_factors", "R_d", ("mu_to_rho",), ("mu_to_lambda", "lambda_to_rho")),
    ("lambda_through_rho", "L_d", ("lambda_nucleus",), ("lambda_to_rho", "rho_nucleus")),
    ("lambda_to_rho_image", "L_d", ("lambda_to_rho",), "R_d"),
    ("rho_to_mu_via_inverses", "R_d", ("rho_to_mu",), ("rho_nucleus", "adjoint_nucleus^-1", "adjoint^-1")),
    ("adjoint_to_lambda_image", "L_d", ("adjoint_to_lambda",), "L_d"),
    ("rho_to_lambda_via_adjoint", "R_d", ("rho_to_lambda",), ("rho_to_mu", "adjoint", "adjoint_to_lambda")),
    ("mu_to_rho_via_adjoint", "R_d", ("mu_to_rho",), ("adjoint", "adjoint_nucleus", "rho_nucleus^-1")),
    ("lambda_to_adjoint_image", "L_d", ("lambda_to_adjoint",), "L_d"),
    ("mu_to_rho_then_adjoint", "R_d", ("mu_to_rho", "adjoint"), ("adjoint", "adjoint_nucleus")),
)


def _diagram_point(ctx: VerifierContext, item, k: int, x: int) -> Optional[bool]:
    """True or False at a point, or None when the comparison is undefined there."""
    _, form, left_chain, right = item
    start = _form(ctx, form, k, x)
    try:
        lhs = run_chain(ctx, left_chain, start)
        rhs = _form(ctx, right, k, x) if isinstance(right, str) else run_chain(ctx, right, start)
    except DomainMismatch:
        return None
    if type(lhs) is not type(rhs):
        return None
    return lhs == rhs


def _diagram_scanner(ctx: VerifierContext, claim: Claim) -> CheckResult:
    item = next(it for it in DIAGRAM_ITEMS if f"diagram_suite.{it[0]}" == claim.name)
    mismatches = []
    scanned = 0
    for k, x in _space(ctx, claim.space):
        scanned += 1
        verdict = _diagram_point(ctx, item, k, x)
        if verdict is None:
            mismatches.append((k, x))
        elif not verdict:
            return failed(claim.name, claim.statement, (k, x), scanned, claim.space,
                          domain_mismatches=len(mismatches))
    if mismatches:
        logger.warning("⚠️ %s: composite undefined or mistyped at %d points", claim.name, len(mismatches))
    return passed(claim.name, claim.statement, scanned,
                  domain_mismatches=len(mismatches), first_mismatch=list(mismatches[0]) if mismatches else None)


def _chain_text(chain) -> str:
    return chain if isinstance(chain, str) else " then ".join(chain)


for _item in DIAGRAM_ITEMS:
    _register(Claim(
        name=f"diagram_suite.{_item[0]}",
        statement=f"at {_item[1]}: {_chain_text(_item[2])} = {_chain_text(_item[3])}",
        space="ax" if _item[1].endswith("c") else "px",
        kind="point",
        fn=lambda ctx, k, x, _it=_item: _diagram_point(ctx, _it, k, x) is not False,
        scanner=_diagram_scanner,
    ))
_register(Claim(
    name="diagram_suite.left_offset_central",
    statement="xα·x^ρ lies in the centre",
    space="ax",
    kind="point",
    fn=lambda ctx, i, x: ctx.left_offset(i, x) in ctx.nuclei.center,
    replay=lambda ctx, i, x: _is_central(ctx.L, ctx.left_offset(i, x)),
))


def diagram_suite(L: LoopTable, A: PermGroup, ctx: Optional[VerifierContext] = None) -> CheckResult:
    """
    Composite-map equalities evaluated at the offset translations.

    Composites are postfix chains of the nucleus maps and their inverses.
    Points where a composite is undefined, or where the two sides land in
    different kinds of object, are counted as domain mismatches rather than
    failures.
    """
    ctx = _context(L, A, ctx)
    skip = _needs_osborn_holomorph(ctx, "diagram_suite")
    if skip:
        return skip
    names = [f"diagram_suite.{item[0]}" for item in DIAGRAM_ITEMS] + ["diagram_suite.left_offset_central"]
    parts = _scan_all(ctx, names)
    mismatched = [p.name for p in parts if p.notes.get("domain_mismatches")]
    return bundle("diagram_suite", parts, "composite nucleus-map equalities", domain_mismatches=mismatched)


# --- Reports ---

CHECK_ORDER = (
    "osborn",
    "holomorph_osborn",
    "twisted_osborn",
    "twisted_autotopism",
    "nuclear_conditions",
    "offset_autotopisms",
    "offset_identities",
    "regular_autotopisms",
    "regular_memberships",
    "regular_intersection",
    "isomorphism_images",
    "diagram_suite",
)

RUNNERS: Dict[str, Callable[[VerifierContext], CheckResult]] = {
    "osborn": lambda ctx: osborn_check(ctx.L, "all"),
    "holomorph_osborn": lambda ctx: ctx.holomorph_osborn,
    "twisted_osborn": lambda ctx: twisted_osborn_check(ctx.L, ctx.A, ctx),
    "twisted_autotopism": lambda ctx: twisted_autotopism_check(ctx.L, ctx.A, ctx),
    "nuclear_conditions": lambda ctx: nuclear_conditions(ctx.L, ctx.A, ctx),
    "offset_autotopisms": lambda ctx: offset_autotopism_check(ctx.L, ctx.A, ctx),
    "offset_identities": lambda ctx: offset_identities(ctx.L, ctx.A, ctx),
    "regular_autotopisms": lambda ctx: regular_autotopisms(ctx.L, ctx.A, ctx),
    "regular_memberships": lambda ctx: regular_memberships(ctx.L, ctx.A, ctx),
    "regular_intersection": lambda ctx: regular_intersection(ctx.L, ctx.A, ctx),
    "isomorphism_images": lambda ctx: isomorphism_images(ctx.L, ctx.A, ctx),
    "diagram_suite": lambda ctx: diagram_suite(ctx.L, ctx.A, ctx),
}

EQUIVALENT_CHECKS = ("holomorph_osborn", "twisted_osborn", "twisted_autotopism", "nuclear_conditions")


def select_checks(checks: Optional[Iterable[str]]) -> Tuple[str, ...]:
    """Normalize a check selection; ``None`` or ``"all"`` selects every check."""
    if checks is None:
        return CHECK_ORDER
    wanted = set()
    for raw in checks:
        name = raw.strip().replace("-", "_")
        if not name:
            continue
        if name == "all":
            return CHECK_ORDER
        if name not in RUNNERS:
            raise UnknownName("check", raw, CHECK_ORDER)
        wanted.add(name)
    return tuple(name for name in CHECK_ORDER if name in wanted)


def _consistency(ctx: VerifierContext, results: Dict[str, CheckResult]) -> Tuple[Dict[str, bool], List[str]]:
    equivalences: Dict[str, bool] = {}
    contradictions: List[str] = []

    present = [name for name in EQUIVALENT_CHECKS
               if name in results and results[name].status != SKIPPED]
    for first, second in zip(present, present[1:]):
        equivalences[f"{first}<=>{second}"] = results[first].holds == results[second].holds

    offset = results.get("offset_autotopisms")
    direct = results.get("holomorph_osborn")
    if offset is not None and offset.status != SKIPPED and direct is not None:
        equivalences["offset_autotopisms<=>holomorph_osborn"] = offset.holds == direct.holds

    osborn = results.get("osborn")
    if osborn is not None:
        equivalences["osborn_forms_agree"] = bool(osborn.notes.get("variants_agree", True))
        twisted = results.get("twisted_osborn")
        if twisted is not None and ctx.A.is_trivial:
            left_form = osborn.part("left_inverse")
            equivalences["twisted_osborn<=>osborn.left_inverse"] = twisted.holds == left_form.holds

    for key, agrees in equivalences.items():
        if not agrees:
            contradictions.append(f"equivalence broken: {key}")

    direct_holds = direct.holds if direct is not None else ctx.known_holomorph_verdict()
    if direct_holds:
        for name, result in results.items():
            if result.status == FAILS:
                contradictions.append(f"{name} fails while the holomorph is Osborn")
    return equivalences, contradictions


def full_report(
    L: LoopTable,
    A: Optional[PermGroup] = None,
    checks: Optional[Iterable[str]] = None,
    loop_id: Optional[str] = None,
    group_id: Optional[str] = None,
    budget: Optional[int] = None,
) -> TheoremReport:
    """
    Run the selected checks in dependency order and collect a report.

    Contradictions (a failing check next to an Osborn holomorph, or a
    broken equivalence) are logged at ERROR level and listed in the report.
    """
    ctx = VerifierContext(L, A, budget=budget)
    selected = select_checks(checks)
    results: Dict[str, CheckResult] = {}
    for name in selected:
        results[name] = RUNNERS[name](ctx)
        logger.debug("%s: %s", name, results[name].status)

    equivalences, contradictions = _consistency(ctx, results)
    for line in contradictions:
        logger.error("❌ %s (%s)", line, L.label)

    return TheoremReport(
        loop_id=loop_id or L.label,
        group_id=group_id or f"group of order {ctx.A.order}",
        loop_order=L.n,
        group_order=ctx.A.order,
        results=list(results.values()),
        equivalences=equivalences,
        contradictions=contradictions,
    )


def replay_witness(
    L: LoopTable,
    A: Optional[PermGroup],
    result: CheckResult,
    ctx: Optional[VerifierContext] = None,
) -> bool:
    """
    Re-evaluate every failing leaf of ``result`` at its witness.

    Returns:
        True when each recorded witness is again a violation
    """
    ctx = ctx or VerifierContext(L, A)
    for leaf in result.leaves():
        if leaf.status != FAILS:
            continue
        claim = CLAIMS.get(leaf.name)
        if claim is None:
            raise UnknownName("check", leaf.name, sorted(CLAIMS))
        if claim.holds_at(ctx, leaf.witness):
            return False
    return True
