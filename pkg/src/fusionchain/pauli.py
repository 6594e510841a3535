"""Generalized Pauli strings over Z_q with exact phase arithmetic.

A string is a finitely supported product of clock/shift operators
X^x Z^z per site, normal ordered (X left of Z on each site), carrying a
global phase which is an exact power of a primitive M-th root of unity,
M = 2q for even q and M = q for odd q (so that adjoints and square roots
of commutation phases stay representable).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def phase_modulus(q: int) -> int:
    return 2 * q if q % 2 == 0 else q


@dataclass(frozen=True)
class PauliString:
    """X^x Z^z with exact phase zeta_M^phase, zeta_M = e^{2 pi i/M}."""

    q: int
    phase: int
    sites: tuple[tuple[int, int, int], ...]  # sorted (site, x, z), x,z not both 0

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("q must be at least 2")
        M = phase_modulus(self.q)
        object.__setattr__(self, "phase", self.phase % M)
        cleaned = tuple(
            (s, x % self.q, z % self.q)
            for s, x, z in sorted(self.sites)
            if (x % self.q, z % self.q) != (0, 0)
        )
        if len({s for s, _, _ in cleaned}) != len(cleaned):
            raise ValueError("duplicate sites")
        object.__setattr__(self, "sites", cleaned)

    # -- basic structure ----------------------------------------------------

    @property
    def modulus(self) -> int:
        return phase_modulus(self.q)

    @property
    def phase_unit(self) -> int:
        """Exponent step of zeta_q inside zeta_M."""
        return self.modulus // self.q

    def support(self) -> tuple[int, ...]:
        return tuple(s for s, _, _ in self.sites)

    def spread(self) -> int:
        sup = self.support()
        return 0 if not sup else max(sup) - min(sup) + 1

    def exponents(self, site: int) -> tuple[int, int]:
        for s, x, z in self.sites:
            if s == site:
                return x, z
        return 0, 0

    def is_identity(self) -> bool:
        return not self.sites and self.phase == 0

    def is_scalar(self) -> bool:
        return not self.sites

    def phase_value(self) -> complex:
        return np.exp(2j * np.pi * self.phase / self.modulus)

    # -- algebra ------------------------------------------------------------

    def __mul__(self, other: PauliString) -> PauliString:
        if self.q != other.q:
            raise ValueError("mismatched q")
        u = self.phase_unit
        a = {s: (x, z) for s, x, z in self.sites}
        b = {s: (x, z) for s, x, z in other.sites}
        phase = self.phase + other.phase
        out = {}
        for s in set(a) | set(b):
            x1, z1 = a.get(s, (0, 0))
            x2, z2 = b.get(s, (0, 0))
            # Z^z1 X^x2 = zeta_q^{z1 x2} X^x2 Z^z1
            phase += u * z1 * x2
            out[s] = ((x1 + x2) % self.q, (z1 + z2) % self.q)
        return PauliString(
            self.q,
            phase,
            tuple((s, x, z) for s, (x, z) in out.items() if (x, z) != (0, 0)),
        )

    def adjoint(self) -> PauliString:
        # (X^x Z^z)^* = Z^-z X^-x = zeta_q^{xz} X^-x Z^-z
        u = self.phase_unit
        phase = -self.phase
        for _, x, z in self.sites:
            phase += u * x * z
        return PauliString(
            self.q, phase, tuple((s, -x, -z) for s, x, z in self.sites)
        )

    def __pow__(self, n: int) -> PauliString:
        out = identity(self.q)
        base = self
        if n < 0:
            base = self.adjoint()  # unitary inverse
            n = -n
        for _ in range(n):
            out = out * base
        return out

    def scale_phase(self, delta: int) -> PauliString:
        return PauliString(self.q, self.phase + delta, self.sites)

    def translate(self, shift: int) -> PauliString:
        return PauliString(
            self.q, self.phase, tuple((s + shift, x, z) for s, x, z in self.sites)
        )

    def commutation_phase(self, other: PauliString) -> int:
        """Exponent c of zeta_q with  self * other = zeta_q^c other * self."""
        if self.q != other.q:
            raise ValueError("mismatched q")
        c = 0
        b = {s: (x, z) for s, x, z in other.sites}
        for s, x1, z1 in self.sites:
            x2, z2 = b.get(s, (0, 0))
            c += z1 * x2 - x1 * z2
        return c % self.q

    def commutes_with(self, other: PauliString) -> bool:
        return self.commutation_phase(other) == 0

    def is_hermitian(self) -> bool:
        adj = self.adjoint()
        return adj.sites == self.sites and adj.phase == self.phase

    def order(self) -> int:
        """Smallest n >= 1 with self^n scalar with trivial phase."""
        M = self.modulus
        out = self
        for n in range(1, self.q * M + 1):
            if out.is_identity():
                return n
            out = out * self
        raise ValueError("no finite order found")

    def equals_up_to_phase(self, other: PauliString) -> bool:
        return self.q == other.q and self.sites == other.sites

    def __str__(self) -> str:
        if not self.sites:
            body = "I"
        else:
            parts = []
            for s, x, z in self.sites:
                t = ""
                if x:
                    t += f"X{x if x > 1 else ''}"
                if z:
                    t += f"Z{z if z > 1 else ''}"
                parts.append(f"{t}[{s}]")
            body = " ".join(parts)
        if self.phase == 0:
            return body
        return f"w^{self.phase} {body}"

    # -- dense matrices -----------------------------------------------------

    def matrix(self, window: tuple[int, int]) -> np.ndarray:
        """Dense matrix on sites [window[0], window[1]) with the leftmost
        site as the most significant digit."""
        lo, hi = window
        sup = self.support()
        if sup and (min(sup) < lo or max(sup) >= hi):
            raise ValueError("string not supported in window")
        q = self.q
        omega = np.exp(2j * np.pi / q)
        Xm = np.zeros((q, q), dtype=complex)
        for r in range(q):
            Xm[(r + 1) % q, r] = 1.0
        Zm = np.diag([omega**r for r in range(q)])
        out = np.array([[self.phase_value()]], dtype=complex)
        table = {s: (x, z) for s, x, z in self.sites}
        for s in range(lo, hi):
            x, z = table.get(s, (0, 0))
            out = np.kron(out, np.linalg.matrix_power(Xm, x) @ np.linalg.matrix_power(Zm, z))
        return out


def identity(q: int) -> PauliString:
    return PauliString(q, 0, ())


def x_op(q: int, site: int, power: int = 1) -> PauliString:
    return PauliString(q, 0, ((site, power, 0),))


def z_op(q: int, site: int, power: int = 1) -> PauliString:
    return PauliString(q, 0, ((site, 0, power),))


def bond(q: int, site: int) -> PauliString:
    """Z_site Z^{-1}_{site+1}, the symmetric bond generator."""
    return PauliString(q, 0, ((site, 0, 1), (site + 1, 0, -1)))


def charge_weight(s: PauliString) -> int:
    """Total Z-exponent, the on-site symmetry charge coupling: sum of z parts."""
    return sum(z for _, _, z in s.sites) % s.q


def x_weight(s: PauliString) -> int:
    return sum(x for _, x, _ in s.sites) % s.q


def is_symmetric(s: PauliString) -> bool:
    """Invariant under the global clock rotation prod_i X_i (conjugation),
    i.e. total Z-charge zero."""
    return charge_weight(s) == 0
