"""
Autotopisms, automorphisms and regular bijections of a finite loop.

A triple (A, B, C) is an autotopism when xA·yB = (x·y)C for all x, y.
Setting y = e and x = e gives C = A·R_{eB} and C = B·L_{eA}, so a triple
is determined by A and the single point eB; the search walks (A, eB).

Regular bijections:
    U is ρ-regular  when (I, U, U) is an autotopism   (group P)
    U is λ-regular  when (U, I, U) is an autotopism   (group Λ)
    U is μ-regular  when (U, U'^-1, I) is an autotopism for some U',
                    the adjoint of U                  (groups Φ and Ψ)
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.config.settings import get_settings
from src.loop_theory.core_tables import (
    LoopTable,
    Perm,
    check_points,
    closure,
    identity_perm,
    isomorphisms,
)
from src.loop_theory.errors import (
    IsoViolation,
    LoopIntegrityError,
    PointCountMismatch,
    SearchBoundExceeded,
    UnknownName,
)
from src.loop_theory.nuclei_centers import NucleiReport, nuclei_report
from src.utils.workers import parallel_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class AutotopismTriple:
    a: Perm
    b: Perm
    c: Perm

    def __post_init__(self):
        if not self.a.n == self.b.n == self.c.n:
            raise PointCountMismatch(self.a.n, max(self.b.n, self.c.n))

    @classmethod
    def identity(cls, n: int) -> "AutotopismTriple":
        i = identity_perm(n)
        return cls(i, i, i)

    @property
    def n(self) -> int:
        return self.a.n

    def __mul__(self, other: "AutotopismTriple") -> "AutotopismTriple":
        return AutotopismTriple(self.a * other.a, self.b * other.b, self.c * other.c)

    def inverse(self) -> "AutotopismTriple":
        return AutotopismTriple(self.a.inverse(), self.b.inverse(), self.c.inverse())

    @property
    def is_diagonal(self) -> bool:
        return self.a == self.b == self.c


def assert_group(elements: Sequence, identity, label: str) -> Tuple:
    """
    Confirm a finite set is a group and return generators drawn from it.

    Generators are picked greedily in canonical order; the set must equal
    the closure of the picked generators, and no closure step may leave it.
    """
    members = set(elements)
    if identity not in members:
        raise LoopIntegrityError(f"{label} lacks the identity")
    generators = []
    generated = {identity}
    for candidate in sorted(members):
        if candidate in generated:
            continue
        generators.append(candidate)
        generated = closure(generators, identity)
        if not generated <= members:
            raise LoopIntegrityError(f"{label} is not closed under composition")
    return tuple(generators)


@dataclass(frozen=True)
class PermGroup:
    """Finite permutation group in canonical (lexicographic) order."""

    elements: Tuple[Perm, ...]
    generators: Tuple[Perm, ...] = ()

    def __post_init__(self):
        if not self.elements:
            raise LoopIntegrityError("a permutation group needs at least the identity")
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))

    @classmethod
    def from_perms(cls, perms, label: str = "permutation group") -> "PermGroup":
        """Build a group from its full element set, asserting closure."""
        perms = list(perms)
        if not perms:
            raise LoopIntegrityError(f"{label} is empty")
        generators = assert_group(perms, identity_perm(perms[0].n), label)
        return cls(tuple(perms), generators)

    @classmethod
    def trivial(cls, n: int) -> "PermGroup":
        return cls((identity_perm(n),))

    @property
    def degree(self) -> int:
        return self.elements[0].n

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return self.elements[0]

    @property
    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    @cached_property
    def _index(self) -> Dict[Perm, int]:
        return {p: i for i, p in enumerate(self.elements)}

    def index(self, perm: Perm) -> int:
        return self._index[perm]

    def __contains__(self, perm: Perm) -> bool:
        return perm in self._index

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i: int) -> Perm:
        return self.elements[i]


# --- Autotopism predicate ---

def is_autotopism(L: LoopTable, t: AutotopismTriple) -> bool:
    check_points(L, t.a, t.b, t.c)
    T = L.table
    return bool(np.array_equal(T[t.a.array[:, None], t.b.array[None, :]], t.c.array[T]))


def autotopism_violation(L: LoopTable, t: AutotopismTriple) -> Optional[Tuple[int, int]]:
    """First (x, y) with xA·yB ≠ (xy)C, or None."""
    check_points(L, t.a, t.b, t.c)
    T = L.table
    bad = np.argwhere(T[t.a.array[:, None], t.b.array[None, :]] != t.c.array[T])
    if bad.size:
        return int(bad[0][0]), int(bad[0][1])
    return None


def _holds(rows, a, b, c) -> bool:
    """Early-exit scalar version of the autotopism identity on image tuples."""
    for x, row in enumerate(rows):
        xa_row = rows[a[x]]
        for y, xy in enumerate(row):
            if xa_row[b[y]] != c[xy]:
                return False
    return True


def _determination_slice(args) -> List[AutotopismTriple]:
    L, first = args
    n, e = L.n, L.e
    rows = L.product_rows
    found = []
    rest_points = [v for v in range(n) if v != first]
    for rest in permutations(rest_points):
        image = (first,) + rest
        A = Perm.trusted(image)
        left_inv = L.left_translation(image[e]).inverse()
        for b in range(n):
            C = A * L.right_translation(b)
            B = C * left_inv
            if _holds(rows, A.image, B.image, C.image):
                found.append(AutotopismTriple(A, B, C))
    return found


def _check_bound(n: int, bound: Optional[int], default: int) -> None:
    limit = default if bound is None else bound
    if n > limit:
        raise SearchBoundExceeded(n, limit)


def autotopism_group(
    L: LoopTable, bound: Optional[int] = None, jobs: Optional[int] = None
) -> Tuple[AutotopismTriple, ...]:
    """
    All autotopisms of L, found by walking candidate pairs (A, eB).

    Args:
        L: Loop
        bound: Largest order searched (defaults to LOOPS_AUT_SEARCH_BOUND)
        jobs: Worker processes; the search splits on the image of point 0

    Returns:
        Autotopisms in canonical order
    """
    settings = get_settings()
    _check_bound(L.n, bound, settings.aut_search_bound)
    jobs = settings.jobs if jobs is None else jobs

    slices = parallel_map(_determination_slice, [(L, v) for v in range(L.n)], jobs)
    triples = sorted(t for part in slices for t in part)

    for t in triples:
        eb = t.b(L.e)
        ea = t.a(L.e)
        if t.c != t.a * L.right_translation(eb) or t.c != t.b * L.left_translation(ea):
            raise LoopIntegrityError(f"determination rule fails for {t}")
    assert_group(triples, AutotopismTriple.identity(L.n), "autotopism group")
    logger.info("Autotopism group of %s has order %d", L.label, len(triples))
    return tuple(triples)


def autotopism_group_bruteforce(L: LoopTable, bound: Optional[int] = None) -> Tuple[AutotopismTriple, ...]:
    """Oracle: every (A, B) in Sym(n)², with C read off from x = e."""
    _check_bound(L.n, bound, get_settings().brute_force_bound)
    rows = L.product_rows
    perms = [Perm.trusted(p) for p in permutations(range(L.n))]
    found = []
    for A in perms:
        left = L.left_translation(A(L.e))
        for B in perms:
            C = B * left
            if _holds(rows, A.image, B.image, C.image):
                found.append(AutotopismTriple(A, B, C))
    return tuple(sorted(found))


def automorphism_group(L: LoopTable, bound: Optional[int] = None) -> PermGroup:
    """Automorphisms via the pruned isomorphism search of L onto itself."""
    _check_bound(L.n, bound, get_settings().aut_search_bound)
    group = PermGroup.from_perms(isomorphisms(L, L), "automorphism group")
    logger.debug("Automorphism group of %s has order %d", L.label, group.order)
    return group


def autotopic_bijections(L: LoopTable, bound: Optional[int] = None,
                         jobs: Optional[int] = None) -> PermGroup:
    """First components of the autotopism group."""
    triples = autotopism_group(L, bound=bound, jobs=jobs)
    return PermGroup.from_perms({t.a for t in triples}, "autotopic bijections")


# --- Regular bijections ---

@dataclass(frozen=True)
class RegularSets:
    p_set: PermGroup
    lambda_set: PermGroup
    phi_set: PermGroup
    psi_set: PermGroup
    adjoint_pairs: Tuple[Tuple[Perm, Perm], ...]

    @cached_property
    def _adjoints(self) -> Dict[Perm, Perm]:
        return dict(self.adjoint_pairs)

    @cached_property
    def _coadjoints(self) -> Dict[Perm, Perm]:
        return {v: u for u, v in self.adjoint_pairs}

    def adjoint(self, u: Perm) -> Perm:
        return self._adjoints[u]

    def adjoint_preimage(self, v: Perm) -> Perm:
        return self._coadjoints[v]


def _assemble(rho, lam, adjoint_pairs, label: str) -> RegularSets:
    adjoint_pairs = tuple(sorted(adjoint_pairs))
    phi = [u for u, _ in adjoint_pairs]
    psi = [v for _, v in adjoint_pairs]
    if len(set(phi)) != len(phi) or len(set(psi)) != len(psi):
        raise LoopIntegrityError(f"{label}: adjoint correspondence is not a bijection")
    return RegularSets(
        p_set=PermGroup.from_perms(rho, "ρ-regular bijections"),
        lambda_set=PermGroup.from_perms(lam, "λ-regular bijections"),
        phi_set=PermGroup.from_perms(phi, "μ-regular bijections"),
        psi_set=PermGroup.from_perms(psi, "adjoints"),
        adjoint_pairs=adjoint_pairs,
    )


def regular_sets(L: LoopTable, nuclei: Optional[NucleiReport] = None) -> RegularSets:
    """
    Regular bijections from nucleus candidates, each verified as an autotopism.

    Candidates: R_a for a in N_ρ, L_a for a in N_λ, and R_c with adjoint L_c
    for c in N_μ.
    """
    nuclei = nuclei or nuclei_report(L)
    identity = identity_perm(L.n)
    rows = L.product_rows

    rho = []
    for a in nuclei.n_rho:
        u = L.right_translation(a)
        if not _holds(rows, identity.image, u.image, u.image):
            raise LoopIntegrityError(f"R_{a + 1} is not ρ-regular although {a + 1} is right nuclear")
        rho.append(u)

    lam = []
    for a in nuclei.n_lambda:
        u = L.left_translation(a)
        if not _holds(rows, u.image, identity.image, u.image):
            raise LoopIntegrityError(f"L_{a + 1} is not λ-regular although {a + 1} is left nuclear")
        lam.append(u)

    pairs = []
    for c in nuclei.n_mu:
        u = L.right_translation(c)
        adj = L.left_translation(c)
        if not _holds(rows, u.image, adj.inverse().image, identity.image):
            raise LoopIntegrityError(f"R_{c + 1} is not μ-regular although {c + 1} is middle nuclear")
        pairs.append((u, adj))

    return _assemble(rho, lam, pairs, "regular sets")


def regular_sets_bruteforce(L: LoopTable, bound: Optional[int] = None) -> RegularSets:
    """Oracle: scan Sym(n) (and Sym(n)² for adjoint pairs) by definition."""
    _check_bound(L.n, bound, get_settings().brute_force_bound)
    rows = L.product_rows
    identity = identity_perm(L.n).image
    perms = [Perm.trusted(p) for p in permutations(range(L.n))]

    rho = [u for u in perms if _holds(rows, identity, u.image, u.image)]
    lam = [u for u in perms if _holds(rows, u.image, identity, u.image)]
    pairs = []
    for u in perms:
        partners = [v for v in perms if _holds(rows, u.image, v.image, identity)]
        if len(partners) > 1:
            raise LoopIntegrityError(f"{u} has {len(partners)} adjoints")
        if partners:
            pairs.append((u, partners[0].inverse()))
    return _assemble(rho, lam, pairs, "brute-force regular sets")


# --- Nucleus isomorphisms ---

Image = Union[int, Perm]

# name -> (domain field of RegularSets, codomain, composition law)
NUCLEUS_MAPS: Dict[str, Tuple[str, str, str]] = {
    "rho_nucleus": ("p_set", "n_rho", "homomorphism"),
    "lambda_nucleus": ("lambda_set", "n_lambda", "anti-homomorphism"),
    "mu_nucleus": ("phi_set", "n_mu", "homomorphism"),
    "adjoint_nucleus": ("psi_set", "n_mu", "anti-homomorphism"),
    "adjoint": ("phi_set", "psi_set", "anti-homomorphism"),
}


@dataclass(frozen=True)
class NucleusIsoWitness:
    """Graph of one of the maps U ↦ eU (or U ↦ U') with its checked law."""

    map_name: str
    domain: PermGroup
    graph: Tuple[Tuple[Perm, Image], ...]
    law: str

    @cached_property
    def _forward(self) -> Dict[Perm, Image]:
        return dict(self.graph)

    @cached_property
    def _backward(self) -> Dict[Image, Perm]:
        return {v: u for u, v in self.graph}

    def image(self, u: Perm) -> Image:
        return self._forward[u]

    def preimage(self, v: Image) -> Perm:
        return self._backward[v]

    def defined_at(self, u) -> bool:
        return isinstance(u, Perm) and u in self._forward

    def has_preimage(self, v) -> bool:
        try:
            return v in self._backward
        except TypeError:
            return False

    @property
    def images(self) -> List[Image]:
        return [v for _, v in self.graph]


def nucleus_iso(
    L: LoopTable,
    map_name: str,
    regular: Optional[RegularSets] = None,
    nuclei: Optional[NucleiReport] = None,
) -> NucleusIsoWitness:
    """
    Evaluate a nucleus map pointwise and check it is an isomorphism.

    Maps act on the right, so L_a·L_b = L_{b·a}; the λ-side maps and the
    adjoint therefore reverse products. The declared law is the one checked.

    Raises:
        IsoViolation: graph not injective, image set wrong, or law broken
    """
    if map_name not in NUCLEUS_MAPS:
        raise UnknownName("map", map_name, NUCLEUS_MAPS)
    domain_field, target, law = NUCLEUS_MAPS[map_name]
    nuclei = nuclei or nuclei_report(L)
    regular = regular or regular_sets(L, nuclei)
    domain: PermGroup = getattr(regular, domain_field)

    if map_name == "adjoint":
        graph = tuple((u, regular.adjoint(u)) for u in domain)
        expected = set(regular.psi_set.elements)
    else:
        graph = tuple((u, u(L.e)) for u in domain)
        expected = set(getattr(nuclei, target).members)

    seen: Dict[Image, Perm] = {}
    for u, v in graph:
        if v in seen:
            raise IsoViolation(map_name, (seen[v].one_line(), u.one_line()), "not injective")
        seen[v] = u
    if set(seen) != expected:
        stray = sorted(set(seen) ^ expected, key=str)[0]
        raise IsoViolation(map_name, (str(stray),), f"image differs from {target}")

    forward = dict(graph)
    reversed_law = law == "anti-homomorphism"
    for u in domain:
        for v in domain:
            uv = u * v
            if uv not in forward:
                raise IsoViolation(map_name, (u.one_line(), v.one_line()), "domain not closed")
            first, second = (forward[v], forward[u]) if reversed_law else (forward[u], forward[v])
            if map_name == "adjoint":
                expected_image = first * second
            else:
                expected_image = L.mul(first, second)
            if forward[uv] != expected_image:
                raise IsoViolation(map_name, (u.one_line(), v.one_line()), f"{law} law fails")

    return NucleusIsoWitness(map_name=map_name, domain=domain, graph=graph, law=law)
