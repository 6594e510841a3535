"""Exact arithmetic for finite abelian groups, characters, and bicharacters.

Elements of a group with cyclic factors (n_1, ..., n_k) are integer tuples
(a_1, ..., a_k) with 0 <= a_i < n_i.  All root-of-unity values are stored as
integer exponents of the primitive E-th root of unity, E the group exponent,
so every computation here is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, lcm

from .errors import CapExceeded, DegenerateBicharacter

Element = tuple[int, ...]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    cyclic_factors: tuple[int, ...]

    def __post_init__(self):
        if not self.cyclic_factors or any(n < 1 for n in self.cyclic_factors):
            raise ValueError(f"invalid cyclic factors {self.cyclic_factors}")
        object.__setattr__(self, "cyclic_factors", tuple(int(n) for n in self.cyclic_factors))

    @property
    def order(self) -> int:
        out = 1
        for n in self.cyclic_factors:
            out *= n
        return out

    @property
    def exponent(self) -> int:
        return lcm(*self.cyclic_factors)

    @property
    def rank(self) -> int:
        return len(self.cyclic_factors)

    def elements(self) -> list[Element]:
        return list(itertools.product(*(range(n) for n in self.cyclic_factors)))

    def identity(self) -> Element:
        return (0,) * self.rank

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.cyclic_factors))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % n for x, n in zip(a, self.cyclic_factors))

    def scale(self, k: int, a: Element) -> Element:
        return tuple((k * x) % n for x, n in zip(a, self.cyclic_factors))

    def element_order(self, a: Element) -> int:
        return lcm(*(n // gcd(n, x) if x else 1 for x, n in zip(a, self.cyclic_factors)))

    def generators(self) -> list[Element]:
        """Canonical generating set e_1, ..., e_k."""
        gens = []
        for i in range(self.rank):
            e = [0] * self.rank
            e[i] = 1
            gens.append(tuple(e))
        return gens

    def contains(self, a) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == self.rank
            and all(0 <= x < n for x, n in zip(a, self.cyclic_factors))
        )

    def times(self, other: "FiniteAbelianGroup") -> "FiniteAbelianGroup":
        return FiniteAbelianGroup(self.cyclic_factors + other.cyclic_factors)

    def __str__(self):
        return "x".join(f"Z{n}" for n in self.cyclic_factors)


def cyclic(n: int) -> FiniteAbelianGroup:
    return FiniteAbelianGroup((n,))


def pairing_exponent(group: FiniteAbelianGroup, phi: Element, a: Element) -> int:
    """Exponent e with phi(a) = zeta_E^e, zeta_E the primitive E-th root of unity.

    phi lives in the dual group (same cyclic factors); phi = (c_1, ..., c_k)
    represents a |-> zeta_E^(sum_i c_i a_i E/n_i).
    """
    E = group.exponent
    return sum(c * x * (E // n) for c, x, n in zip(phi, a, group.cyclic_factors)) % E


@dataclass(frozen=True)
class DualGroup:
    """The character group of `group`, with its exact evaluation pairing."""

    group: FiniteAbelianGroup

    @property
    def as_group(self) -> FiniteAbelianGroup:
        # Ã is abstractly isomorphic to A with the same invariant factors.
        return FiniteAbelianGroup(self.group.cyclic_factors)

    def pairing(self, phi: Element, a: Element) -> int:
        return pairing_exponent(self.group, phi, a)


def dual_group(group: FiniteAbelianGroup) -> DualGroup:
    return DualGroup(group)


@dataclass(frozen=True)
class Bicharacter:
    """chi(a, b) = zeta_E^e(a,b) with e(a,b) = sum_ij B_ij a_i b_j E/gcd(n_i, n_j).

    The per-pair unit E/gcd(n_i, n_j) makes the value well defined for any
    integer matrix B.
    """

    group: FiniteAbelianGroup
    matrix: tuple[tuple[int, ...], ...]

    def exponent(self, a: Element, b: Element) -> int:
        ns = self.group.cyclic_factors
        E = self.group.exponent
        total = 0
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = self.matrix[i]
            for j, bj in enumerate(b):
                if row[j] and bj:
                    total += row[j] * ai * bj * (E // gcd(ns[i], ns[j]))
        return total % E

    def is_symmetric(self) -> bool:
        els = self.group.elements()
        return all(
            self.exponent(a, b) == self.exponent(b, a) for a in els for b in els
        )

    def kernel(self) -> list[Element]:
        els = self.group.elements()
        return [a for a in els if all(self.exponent(a, b) == 0 for b in els)]

    def is_nondegenerate(self) -> bool:
        return self.kernel() == [self.group.identity()]


def standard_bicharacter(group: FiniteAbelianGroup):
    """Diagonal bicharacter chi(a, b) = prod_i zeta_{n_i}^{a_i b_i}, with report."""
    k = group.rank
    mat = tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))
    chi = Bicharacter(group, mat)
    report = {"symmetric": chi.is_symmetric(), "nondegenerate": chi.is_nondegenerate()}
    return chi, report


@dataclass(frozen=True)
class GroupIsomorphism:
    """A bijection between two groups, stored as full lookup tables."""

    source: FiniteAbelianGroup
    target: FiniteAbelianGroup
    forward: tuple[tuple[Element, Element], ...]

    def __call__(self, a: Element) -> Element:
        return self._fwd()[a]

    def _fwd(self):
        return dict(self.forward)

    def inverse(self) -> "GroupIsomorphism":
        return GroupIsomorphism(
            self.target, self.source, tuple((b, a) for a, b in self.forward)
        )


def chi_tilde(chi: Bicharacter) -> GroupIsomorphism:
    """The isomorphism a |-> chi(a, .) from A to its character group.

    Raises DegenerateBicharacter if chi has nontrivial kernel.
    """
    group = chi.group
    if not chi.is_nondegenerate():
        raise DegenerateBicharacter(f"kernel has {len(chi.kernel())} elements")
    ns = group.cyclic_factors
    table = []
    for a in group.elements():
        # chi(a, .) as a character tuple c with c_j = sum_i a_i B_ij n_j/gcd(n_i,n_j)
        c = tuple(
            sum(a[i] * chi.matrix[i][j] * (ns[j] // gcd(ns[i], ns[j])) for i in range(group.rank))
            % ns[j]
            for j in range(group.rank)
        )
        table.append((a, c))
    images = [c for _, c in table]
    if len(set(images)) != group.order:
        raise DegenerateBicharacter("chi~ is not injective")
    return GroupIsomorphism(group, FiniteAbelianGroup(ns), tuple(table))


@dataclass(frozen=True)
class GroupAutomorphism:
    """Automorphism given by images of the canonical generators e_1, ..., e_k."""

    group: FiniteAbelianGroup
    generator_images: tuple[Element, ...]

    def __call__(self, a: Element) -> Element:
        out = self.group.identity()
        for coeff, img in zip(a, self.generator_images):
            if coeff:
                out = self.group.add(out, self.group.scale(coeff, img))
        return out

    def compose(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        """self after other."""
        return GroupAutomorphism(
            self.group, tuple(self(img) for img in other.generator_images)
        )

    def inverse(self) -> "GroupAutomorphism":
        table = {self(a): a for a in self.group.elements()}
        gens = self.group.generators()
        return GroupAutomorphism(self.group, tuple(table[e] for e in gens))

    def is_identity(self) -> bool:
        return self.generator_images == tuple(self.group.generators())


def identity_automorphism(group: FiniteAbelianGroup) -> GroupAutomorphism:
    return GroupAutomorphism(group, tuple(group.generators()))


def automorphism_group(group: FiniteAbelianGroup, cap: int = 64) -> list[GroupAutomorphism]:
    """All automorphisms, by brute force over generator-image tuples.

    Candidate images of e_i are restricted to elements of order exactly n_i;
    bijectivity is then checked by enumeration.  Output sorted canonically.
    """
    if group.order > cap:
        raise CapExceeded(f"group order {group.order} exceeds cap {cap}")
    ns = group.cyclic_factors
    els = group.elements()
    candidates = [
        [g for g in els if group.element_order(g) == n] for n in ns
    ]
    autos = []
    for images in itertools.product(*candidates):
        phi = GroupAutomorphism(group, images)
        seen = {phi(a) for a in els}
        if len(seen) == group.order:
            autos.append(phi)
    autos.sort(key=lambda p: p.generator_images)
    return autos
