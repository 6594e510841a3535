"""Drinfeld-center anyon data, Lagrangian algebras, and braided symmetries.

For pointed inputs the center is the double D(A) with anyons A x Ahat,
handled exactly with integer phase exponents.  Fib and Ising doubles ship
as hardcoded tables.  Lagrangian and Q-system candidate searches are
exhaustive over the documented necessary conditions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceeded, NotSubgroup, UnknownTable, UnsupportedSystem
from .groupdata import (
    Bicharacter,
    DualGroup,
    FiniteAbelianGroup,
    chi_tilde,
    dual_group,
    pairing_exponent,
)

CANDIDATE_DIM_TOL = 1e-6
MAX_MULTIPLICITY = 2


@dataclass(frozen=True)
class AnyonSystem:
    """A modular-category skeleton: labels, twists, monodromies, dims, fusion.

    Twists and pairwise monodromy scalars are stored as exact exponents of
    a primitive root of unity of order `phase_order` where possible; the
    complex values are derived.
    """

    labels: tuple[str, ...]
    qdims: tuple[float, ...]
    phase_order: int
    twist_exponents: tuple[int, ...]
    monodromy_exponents: np.ndarray | None  # exact, abelian case
    N: np.ndarray | None = None  # fusion tensor, needed for candidate search
    monodromy_values: np.ndarray | None = None  # complex, general case
    group: FiniteAbelianGroup | None = None
    anyon_elements: tuple | None = None  # (a, phi) pairs for doubles
    name: str = ""

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def vacuum(self) -> int:
        return 0

    def twist(self, i: int) -> complex:
        return np.exp(2j * np.pi * self.twist_exponents[i] / self.phase_order)

    def monodromy(self, i: int, j: int) -> complex:
        if self.monodromy_exponents is not None:
            e = self.monodromy_exponents[i, j]
            return np.exp(2j * np.pi * e / self.phase_order)
        return complex(self.monodromy_values[i, j])

    def total_dim_sq(self) -> float:
        return float(sum(d * d for d in self.qdims))

    def index(self, label: str) -> int:
        return self.labels.index(label)


def double_of_abelian(group: FiniteAbelianGroup) -> AnyonSystem:
    """D(A): anyons (a, phi) in A x Ahat, twist = phi(a), monodromy
    M((a,phi),(b,psi)) = phi(b) psi(a)."""
    dual = dual_group(group)
    els = group.elements()
    chars = dual.as_group.elements()
    anyons = [(a, phi) for a in els for phi in chars]
    E = group.exponent
    k = len(anyons)
    twists = tuple(pairing_exponent(group, phi, a) for a, phi in anyons)
    mono = np.zeros((k, k), dtype=np.int64)
    for i, (a, phi) in enumerate(anyons):
        for j, (b, psi) in enumerate(anyons):
            mono[i, j] = (
                pairing_exponent(group, phi, b) + pairing_exponent(group, psi, a)
            ) % E
    N = np.zeros((k, k, k), dtype=np.int64)
    idx = {x: i for i, x in enumerate(anyons)}
    for i, (a, phi) in enumerate(anyons):
        for j, (b, psi) in enumerate(anyons):
            prod = (group.add(a, b), dual.as_group.add(phi, psi))
            N[i, j, idx[prod]] = 1

    def label(a, phi):
        return f"({','.join(map(str, a))};{','.join(map(str, phi))})"

    return AnyonSystem(
        labels=tuple(label(a, phi) for a, phi in anyons),
        qdims=(1.0,) * k,
        phase_order=E,
        twist_exponents=twists,
        monodromy_exponents=mono,
        N=N,
        group=group,
        anyon_elements=tuple(anyons),
        name=f"D({group})",
    )


def fib_double() -> AnyonSystem:
    """Z(Fib) = Fib x Fib-bar: four anyons, twists 1, e^{4pi i/5}, e^{-4pi i/5}, 1."""
    phi = (1 + math.sqrt(5)) / 2
    labels = ("(1,1)", "(tau,1)", "(1,taub)", "(tau,taub)")
    qdims = (1.0, phi, phi, phi * phi)
    # twists as exponents of a primitive 5th root: theta_tau = e^{4 pi i/5} = zeta_5^2
    tw = (0, 2, -2, 0)
    nfib = np.zeros((2, 2, 2), dtype=np.int64)
    nfib[0, 0, 0] = nfib[0, 1, 1] = nfib[1, 0, 1] = nfib[1, 1, 0] = nfib[1, 1, 1] = 1
    k = 4
    N = np.zeros((k, k, k), dtype=np.int64)
    for (a1, a2), (b1, b2), (c1, c2) in itertools.product(
        itertools.product(range(2), repeat=2), repeat=3
    ):
        i = a1 + 2 * a2
        j = b1 + 2 * b2
        c = c1 + 2 * c2
        N[i, j, c] = nfib[a1, b1, c1] * nfib[a2, b2, c2]
    # monodromy of a deligne product: S-matrix based, tau x tau-bar pieces cancel
    sfib = np.array([[1.0, phi], [phi, -1.0]])  # unnormalized S of Fib
    mono = np.ones((k, k), dtype=complex)
    for i in range(k):
        for j in range(k):
            a1, a2 = i % 2, i // 2
            b1, b2 = j % 2, j // 2
            # monodromy scalar S_ab S_00 / (S_0a S_0b), conjugated on the bar factor
            m1 = sfib[a1, b1] / (nfib_dim(a1) * nfib_dim(b1))
            m2 = (sfib[a2, b2] / (nfib_dim(a2) * nfib_dim(b2))).conjugate()
            mono[i, j] = m1 * m2
    return AnyonSystem(
        labels=labels,
        qdims=qdims,
        phase_order=5,
        twist_exponents=tw,
        monodromy_exponents=None,
        N=N,
        monodromy_values=mono,
        name="Z(Fib)",
    )


def nfib_dim(a: int) -> float:
    return 1.0 if a == 0 else (1 + math.sqrt(5)) / 2


def ising_double() -> AnyonSystem:
    """Z(Ising) = Ising x Ising-bar: nine anyons."""
    s2 = math.sqrt(2)
    lab1 = ("1", "s", "p")  # 1, sigma, psi
    d1 = (1.0, s2, 1.0)
    tw1 = (0, 1, 8)  # exponents of zeta_16: theta_sigma = e^{i pi/8}
    S1 = np.array([[1.0, s2, 1.0], [s2, 0.0, -s2], [1.0, -s2, 1.0]])
    n1 = np.zeros((3, 3, 3), dtype=np.int64)
    for a in range(3):
        n1[0, a, a] = 1
        n1[a, 0, a] = 1
    n1[1, 1, 0] = n1[1, 1, 2] = 1
    n1[1, 2, 1] = n1[2, 1, 1] = 1
    n1[2, 2, 0] = 1
    k = 9
    labels = tuple(f"({x},{y}b)" for y in lab1 for x in lab1)
    qdims = tuple(d1[i % 3] * d1[i // 3] for i in range(k))
    tw = tuple((tw1[i % 3] - tw1[i // 3]) % 16 for i in range(k))
    N = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            for c in range(k):
                N[i, j, c] = n1[i % 3, j % 3, c % 3] * n1[i // 3, j // 3, c // 3]
    mono = np.ones((k, k), dtype=complex)
    for i in range(k):
        for j in range(k):
            m1 = S1[i % 3, j % 3] / (d1[i % 3] * d1[j % 3])
            m2 = (S1[i // 3, j // 3] / (d1[i // 3] * d1[j // 3])).conjugate()
            mono[i, j] = m1 * m2
    return AnyonSystem(
        labels=labels,
        qdims=qdims,
        phase_order=16,
        twist_exponents=tw,
        monodromy_exponents=None,
        N=N,
        monodromy_values=mono,
        name="Z(Ising)",
    )


def center_of_pointed(group: FiniteAbelianGroup) -> AnyonSystem:
    return double_of_abelian(group)


# ---------------------------------------------------------------------------
# Lagrangian algebras


def _subgroups_of_product(group: FiniteAbelianGroup, dual: DualGroup, order: int):
    """All subgroups of A x Ahat of the given order, by closure of generating
    sets.  Elements are (a, phi) pairs."""
    els = [(a, phi) for a in group.elements() for phi in dual.as_group.elements()]

    def add(x, y):
        return (group.add(x[0], y[0]), dual.as_group.add(x[1], y[1]))

    zero = (group.identity(), dual.as_group.identity())
    found: set[frozenset] = set()

    def closure(gens):
        seen = {zero} | set(gens)
        while True:
            nxt = {add(x, y) for x in seen for y in seen}
            if nxt <= seen:
                return frozenset(seen)
            seen |= nxt

    # BFS over generator additions, pruning by divisibility
    queue = [frozenset([zero])]
    seen_sub = {frozenset([zero])}
    while queue:
        H = queue.pop()
        if len(H) == order:
            found.add(H)
            continue
        if order % len(H) != 0:
            continue
        for x in els:
            if x in H:
                continue
            H2 = closure(set(H) | {x})
            if len(H2) <= order and H2 not in seen_sub:
                seen_sub.add(H2)
                queue.append(H2)
    return [sorted(H) for H in found]


def lagrangian_algebras(system: AnyonSystem) -> list[dict]:
    """All Lagrangian subgroups of an abelian double: order |A|, trivial
    twists, trivial mutual monodromy."""
    if system.group is None or system.anyon_elements is None:
        raise UnsupportedSystem("exhaustive subgroup search needs an abelian double")
    group = system.group
    dual = dual_group(group)
    idx = {x: i for i, x in enumerate(system.anyon_elements)}
    out = []
    for H in _subgroups_of_product(group, dual, group.order):
        ids = [idx[x] for x in H]
        if any(system.twist_exponents[i] % system.phase_order for i in ids):
            continue
        if any(
            system.monodromy_exponents[i, j] % system.phase_order
            for i in ids
            for j in ids
        ):
            continue
        out.append(
            {
                "anyons": tuple(sorted(system.labels[i] for i in ids)),
                "indices": tuple(sorted(ids)),
                "elements": tuple(H),
                "support": tuple(sorted({x[0] for x in H})),
            }
        )
    out.sort(key=lambda d: d["anyons"])
    return out


def electric_lagrangian(group: FiniteAbelianGroup) -> dict:
    """L = C[A] x 1: all (a, 0)."""
    system = double_of_abelian(group)
    for lag in lagrangian_algebras(system):
        if all(phi == dual_group(group).as_group.identity() for _, phi in lag["elements"]):
            return lag
    raise UnknownTable("electric Lagrangian not found")


def magnetic_lagrangian(group: FiniteAbelianGroup) -> dict:
    """L = 1 x C[Ahat]: all (0, phi)."""
    system = double_of_abelian(group)
    for lag in lagrangian_algebras(system):
        if all(a == group.identity() for a, _ in lag["elements"]):
            return lag
    raise UnknownTable("magnetic Lagrangian not found")


def torsor_size(system: AnyonSystem, lagrangian: dict) -> int:
    """|Aut(L)| for a Lagrangian in an abelian double: the support subgroup
    of A is the group of invertible objects acting, size |A|."""
    if system.group is None:
        raise UnsupportedSystem("torsor size implemented for abelian doubles")
    return system.group.order


# ---------------------------------------------------------------------------
# Braided autoequivalences


@dataclass(frozen=True)
class BraidedAutoequivalence:
    system: AnyonSystem
    permutation: tuple[int, ...]  # anyon index map

    def __call__(self, i: int) -> int:
        return self.permutation[i]

    def apply_to_lagrangian(self, lagrangian: dict) -> tuple[int, ...]:
        return tuple(sorted(self.permutation[i] for i in lagrangian["indices"]))

    def compose(self, other: BraidedAutoequivalence) -> BraidedAutoequivalence:
        return BraidedAutoequivalence(
            self.system, tuple(self.permutation[j] for j in other.permutation)
        )

    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.permutation))


def braided_autoequivalences(
    system: AnyonSystem, cap: int = 10000
) -> list[BraidedAutoequivalence]:
    """Group automorphisms of A x Ahat preserving twists and monodromies.

    For abelian doubles these are exactly the braided autoequivalences of
    D(A) (no nontrivial soft structure at this skeleton level).
    """
    if system.group is None or system.anyon_elements is None:
        raise UnsupportedSystem("enumeration implemented for abelian doubles")
    group = system.group
    dual = dual_group(group)

    prod = FiniteAbelianGroup(group.cyclic_factors + dual.as_group.cyclic_factors)
    flat = {
        (a, phi): a + phi for (a, phi) in system.anyon_elements
    }
    idx = {x: i for i, x in enumerate(system.anyon_elements)}
    from .groupdata import automorphism_group

    out = []
    for auto in automorphism_group(prod, cap=cap):
        k = group.rank
        perm = []
        ok = True
        for i, (a, phi) in enumerate(system.anyon_elements):
            img = auto(flat[(a, phi)])
            target = (img[:k], img[k:])
            j = idx[target]
            if system.twist_exponents[j] != system.twist_exponents[i]:
                ok = False
                break
            perm.append(j)
        if not ok:
            continue
        perm_arr = tuple(perm)
        mono = system.monodromy_exponents
        if not all(
            mono[perm_arr[i], perm_arr[j]] == mono[i, j]
            for i in range(system.rank)
            for j in range(system.rank)
        ):
            continue
        out.append(BraidedAutoequivalence(system, perm_arr))
    return out


def alpha_chi(group: FiniteAbelianGroup, chi: Bicharacter) -> BraidedAutoequivalence:
    """The electric-magnetic swap attached to a nondegenerate symmetric
    bicharacter: (a, f) -> (chitilde^{-1}(f), chitilde(a))."""
    system = double_of_abelian(group)
    iso = chi_tilde(chi)
    inv = iso.inverse()
    idx = {x: i for i, x in enumerate(system.anyon_elements)}
    perm = tuple(
        idx[(inv(phi), iso(a))] for a, phi in system.anyon_elements
    )
    out = BraidedAutoequivalence(system, perm)
    # sanity: must genuinely be braided
    mono = system.monodromy_exponents
    for i in range(system.rank):
        if system.twist_exponents[perm[i]] != system.twist_exponents[i]:
            raise UnsupportedSystem("alpha_chi does not preserve twists")
        for j in range(system.rank):
            if mono[perm[i], perm[j]] != mono[i, j]:
                raise UnsupportedSystem("alpha_chi does not preserve monodromy")
    return out


# ---------------------------------------------------------------------------
# Q-system completeness


def modular_candidates(system: AnyonSystem) -> list[dict]:
    """Exhaustive search for Lagrangian-algebra candidate objects
    L = sum n_a a satisfying the documented necessary conditions:
    n_1 = 1; theta = 1 on the support; dim L = sqrt(total dim);
    n_a n_b <= sum_c N_ab^c n_c; multiplicities capped at 2."""
    if system.N is None:
        raise UnsupportedSystem("candidate search needs fusion coefficients")
    k = system.rank
    d = np.asarray(system.qdims)
    target = math.sqrt(system.total_dim_sq())
    trivial_twist = [
        i
        for i in range(k)
        if (
            system.twist_exponents[i] % system.phase_order == 0
            if system.monodromy_exponents is not None
            else abs(system.twist(i) - 1) < 1e-9
        )
    ]
    others = [i for i in trivial_twist if i != system.vacuum]
    out = []
    for mults in itertools.product(range(MAX_MULTIPLICITY + 1), repeat=len(others)):
        n = np.zeros(k, dtype=np.int64)
        n[system.vacuum] = 1
        for i, m in zip(others, mults):
            n[i] = m
        if abs(float(n @ d) - target) > CANDIDATE_DIM_TOL:
            continue
        prod = np.einsum("abc,c->ab", system.N, n)
        if np.any(np.outer(n, n) > prod):
            continue
        out.append(
            {
                "multiplicities": tuple(int(v) for v in n),
                "object": " + ".join(
                    (f"{n[i]}*" if n[i] > 1 else "") + system.labels[i]
                    for i in range(k)
                    if n[i]
                ),
                "dim": float(n @ d),
            }
        )
    out.sort(key=lambda c: c["multiplicities"])
    return out


def qsystem_completeness_report(system: AnyonSystem) -> dict:
    """Candidate count with an interpretation: a unique candidate (the
    canonical one) is the hallmark of Q-system completeness."""
    cands = modular_candidates(system)
    return {
        "system": system.name,
        "candidates": cands,
        "count": len(cands),
        "qsystem_complete_hint": len(cands) == 1,
    }
