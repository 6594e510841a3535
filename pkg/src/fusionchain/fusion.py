"""Fusion rings and fusion-category data.

Constructors for pointed and Tambara-Yamagami categories, tensor-power
decomposition, quantum dimensions via Perron-Frobenius iteration, and
strong-generation tests.  F-symbol tables are stored only for the
multiplicity-free families shipped here (pointed, TY, Fib); the pentagon
checker is the source of truth for any table.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidBicharacter, NonAssociative
from .groupdata import Bicharacter, FiniteAbelianGroup, dual_group

ASSOC_TOL = 0  # integer identity
QDIM_TOL = 1e-12
PENTAGON_TOL = 1e-10


def _label_of_element(a) -> str:
    return ",".join(str(x) for x in a)


@dataclass(frozen=True)
class FusionCategorySpec:
    labels: tuple[str, ...]
    N: np.ndarray  # N[a, b, c] = multiplicity of c in a (x) b
    dual: tuple[int, ...]
    qdims: np.ndarray
    fsymbols: dict | None = None  # (a,b,c,d,e,f) label-index 6-tuples -> complex
    grading: tuple[int, ...] | None = None  # Z/2-degree per label
    name: str = ""
    group: FiniteAbelianGroup | None = None  # set for pointed / TY constructions
    element_of_label: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "N", np.asarray(self.N, dtype=np.int64))
        object.__setattr__(self, "qdims", np.asarray(self.qdims, dtype=np.float64))

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def unit(self) -> int:
        return 0

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def fusion_products(self, a: int, b: int) -> list[int]:
        return [c for c in range(self.rank) if self.N[a, b, c]]

    def associativity_residual(self) -> int:
        lhs = np.einsum("abe,ecd->abcd", self.N, self.N)
        rhs = np.einsum("bcf,afd->abcd", self.N, self.N)
        return int(np.abs(lhs - rhs).max())

    def check_unit(self) -> bool:
        k = self.rank
        return bool(
            np.array_equal(self.N[self.unit], np.eye(k, dtype=np.int64))
            and np.array_equal(self.N[:, self.unit, :], np.eye(k, dtype=np.int64))
        )

    def validate(self):
        if not self.check_unit():
            raise ValueError("unit fusion rules violated")
        if self.associativity_residual() != 0:
            raise NonAssociative(f"{self.name or 'category'}: N not associative")
        d = self.qdims
        residual = np.abs(
            d[:, None] * d[None, :] - np.einsum("abc,c->ab", self.N, d)
        ).max()
        if residual > 1e-9:
            raise ValueError(f"quantum dimensions inconsistent: residual {residual}")
        if self.fsymbols is not None:
            res = pentagon_residual(self)
            if res > PENTAGON_TOL:
                raise ValueError(f"pentagon residual {res} exceeds {PENTAGON_TOL}")


@dataclass(frozen=True)
class ObjectExpr:
    spec: FusionCategorySpec
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.multiplicities) != self.spec.rank:
            raise ValueError("multiplicity vector has wrong length")
        if any(m < 0 for m in self.multiplicities):
            raise ValueError("multiplicities must be nonnegative")

    @property
    def dimension(self) -> float:
        return float(np.dot(self.multiplicities, self.spec.qdims))

    def vector(self) -> np.ndarray:
        return np.asarray(self.multiplicities, dtype=np.int64)


def object_from_labels(spec: FusionCategorySpec, labels) -> ObjectExpr:
    m = [0] * spec.rank
    for lab in labels:
        m[spec.index(lab)] += 1
    return ObjectExpr(spec, tuple(m))


def regular_object(spec: FusionCategorySpec) -> ObjectExpr:
    return ObjectExpr(spec, (1,) * spec.rank)


def pointed_category(group: FiniteAbelianGroup) -> FusionCategorySpec:
    """Hilb(A) for a finite abelian group A: invertible simples, trivial F."""
    els = group.elements()
    idx = {a: i for i, a in enumerate(els)}
    k = len(els)
    N = np.zeros((k, k, k), dtype=np.int64)
    for a in els:
        for b in els:
            N[idx[a], idx[b], idx[group.add(a, b)]] = 1
    dual = tuple(idx[group.neg(a)] for a in els)
    spec = FusionCategorySpec(
        labels=tuple(_label_of_element(a) for a in els),
        N=N,
        dual=dual,
        qdims=np.ones(k),
        fsymbols=None,
        grading=None,
        name=f"Vec({group})",
        group=group,
        element_of_label={_label_of_element(a): a for a in els},
    )
    spec.validate()
    return spec


def rep_of_abelian(group: FiniteAbelianGroup) -> FusionCategorySpec:
    """Rep(G) for abelian G, realized as the pointed category on the dual group."""
    return pointed_category(dual_group(group).as_group)


def root_of_unity(num: int, den: int) -> complex:
    return cmath.exp(2j * cmath.pi * num / den)


def tambara_yamagami(
    group: FiniteAbelianGroup, chi: Bicharacter, sign: int
) -> FusionCategorySpec:
    """TY(A, chi, sign): labels A + {rho}, rho (x) rho = sum of all a in A."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not (chi.is_symmetric() and chi.is_nondegenerate()):
        raise InvalidBicharacter("TY construction needs chi symmetric nondegenerate")
    els = group.elements()
    idx = {a: i for i, a in enumerate(els)}
    n = len(els)
    k = n + 1
    rho = n
    N = np.zeros((k, k, k), dtype=np.int64)
    for a in els:
        for b in els:
            N[idx[a], idx[b], idx[group.add(a, b)]] = 1
        N[idx[a], rho, rho] = 1
        N[rho, idx[a], rho] = 1
    for a in els:
        N[rho, rho, idx[a]] = 1
    dual = tuple(idx[group.neg(a)] for a in els) + (rho,)
    qdims = np.ones(k)
    qdims[rho] = math.sqrt(n)

    E = group.exponent
    chival = {}
    for a in els:
        for b in els:
            chival[(idx[a], idx[b])] = root_of_unity(chi.exponent(a, b), E)

    fs: dict = {}
    tau = sign / math.sqrt(n)
    for a in els:
        for b in els:
            ia, ib = idx[a], idx[b]
            # (a rho) b with both intermediates rho
            fs[(ia, rho, ib, rho, rho, rho)] = chival[(ia, ib)]
            # (rho a) rho -> total b in A, intermediates rho / rho
            fs[(rho, ia, rho, ib, rho, rho)] = chival[(ia, ib)]
            # (rho rho) rho -> total rho; intermediates a (left), b (right)
            fs[(rho, rho, rho, rho, ia, ib)] = tau * chival[(ia, ib)].conjugate()
    spec = FusionCategorySpec(
        labels=tuple(_label_of_element(a) for a in els) + ("rho",),
        N=N,
        dual=dual,
        qdims=qdims,
        fsymbols=fs,
        grading=(0,) * n + (1,),
        name=f"TY({group},{'+' if sign > 0 else '-'})",
        group=group,
        element_of_label={_label_of_element(a): a for a in els},
    )
    spec.validate()
    return spec


def fib_category() -> FusionCategorySpec:
    """The Fibonacci fusion category (hardcoded, pentagon-verified)."""
    phi = (1 + math.sqrt(5)) / 2
    N = np.zeros((2, 2, 2), dtype=np.int64)
    N[0, 0, 0] = 1
    N[0, 1, 1] = 1
    N[1, 0, 1] = 1
    N[1, 1, 0] = 1
    N[1, 1, 1] = 1
    fs = {
        (1, 1, 1, 1, 0, 0): 1 / phi,
        (1, 1, 1, 1, 0, 1): 1 / math.sqrt(phi),
        (1, 1, 1, 1, 1, 0): 1 / math.sqrt(phi),
        (1, 1, 1, 1, 1, 1): -1 / phi,
    }
    spec = FusionCategorySpec(
        labels=("1", "tau"),
        N=N,
        dual=(0, 1),
        qdims=np.array([1.0, phi]),
        fsymbols=fs,
        name="Fib",
    )
    spec.validate()
    return spec


def ising_category() -> FusionCategorySpec:
    """Ising fusion ring realized as TY(Z2, standard chi, +1)."""
    from .groupdata import cyclic, standard_bicharacter

    chi, _ = standard_bicharacter(cyclic(2))
    return tambara_yamagami(cyclic(2), chi, +1)


def f_symbol(spec: FusionCategorySpec, a, b, c, d, e, f) -> complex:
    """F^{abc}_d(e, f) with e in a(x)b and f in b(x)c; 1 on admissible tuples
    absent from the table, 0 on inadmissible ones."""
    N = spec.N
    if not (N[a, b, e] and N[e, c, d] and N[b, c, f] and N[a, f, d]):
        return 0.0
    if spec.fsymbols is None:
        return 1.0
    return spec.fsymbols.get((a, b, c, d, e, f), 1.0)


def pentagon_residual(spec: FusionCategorySpec) -> float:
    """Max residual of the multiplicity-free pentagon identity over all
    admissible tuples."""
    k = spec.rank
    N = spec.N
    prods = [[spec.fusion_products(a, b) for b in range(k)] for a in range(k)]
    worst = 0.0
    for a in range(k):
        for b in range(k):
            for f in prods[a][b]:
                for c in range(k):
                    for g in prods[f][c]:
                        for d in range(k):
                            for l in prods[c][d]:
                                for e in prods[g][d]:
                                    if not N[a, :, e].any():
                                        continue
                                    for kk in prods[b][l]:
                                        if not N[a, kk, e]:
                                            continue
                                        lhs = f_symbol(spec, f, c, d, e, g, l) * f_symbol(
                                            spec, a, b, l, e, f, kk
                                        )
                                        rhs = 0.0
                                        for h in prods[b][c]:
                                            rhs += (
                                                f_symbol(spec, a, b, c, g, f, h)
                                                * f_symbol(spec, a, h, d, e, g, kk)
                                                * f_symbol(spec, b, c, d, kk, h, l)
                                            )
                                        worst = max(worst, abs(lhs - rhs))
    return worst


def tensor_decompose(x: ObjectExpr, y: ObjectExpr) -> ObjectExpr:
    if x.spec is not y.spec:
        raise ValueError("objects live in different categories")
    m = np.einsum("a,b,abc->c", x.vector(), y.vector(), x.spec.N)
    return ObjectExpr(x.spec, tuple(int(v) for v in m))


def power_decompose(x: ObjectExpr, n: int) -> ObjectExpr:
    if n < 0:
        raise ValueError("n must be nonnegative")
    unit = [0] * x.spec.rank
    unit[x.spec.unit] = 1
    out = ObjectExpr(x.spec, tuple(unit))
    for _ in range(n):
        out = tensor_decompose(out, x)
    return out


def end_dimension(x: ObjectExpr, n: int) -> int:
    """dim End(X^(x)n) = sum_c m_c(n)^2."""
    m = power_decompose(x, n).vector()
    return int(np.dot(m, m))


def quantum_dims(spec: FusionCategorySpec, tol: float = QDIM_TOL, max_iter: int = 100000) -> np.ndarray:
    """The unique positive vector with d_a d_b = sum_c N_ab^c d_c and d_1 = 1."""
    if spec.associativity_residual() != 0:
        raise NonAssociative("fusion coefficients are not associative")
    if spec.fsymbols is None and np.array_equal(
        np.sort(np.einsum("abc->a", spec.N)), np.full(spec.rank, spec.rank)
    ) and all(
        spec.N[a, b, :].sum() == 1 for a in range(spec.rank) for b in range(spec.rank)
    ):
        # pointed: every product is a single invertible simple
        return np.ones(spec.rank)
    K = np.einsum("bac->bc", spec.N).astype(np.float64)
    d = np.ones(spec.rank)
    for _ in range(max_iter):
        new = K @ d
        new = new / new[spec.unit]
        if np.abs(new - d).max() < tol:
            d = new
            break
        d = new
    residual = np.abs(d[:, None] * d[None, :] - np.einsum("abc,c->ab", spec.N, d)).max()
    if residual > 1e-9:
        raise NonAssociative(f"no consistent dimension vector found (residual {residual})")
    return d


def is_strong_generator(x: ObjectExpr, spec: FusionCategorySpec):
    """Whether powers of X reach every simple with the positivity a
    well-connected fusion graph needs; returns (yes, witness power or None,
    reason).

    Plain case: some n <= rank^2 gives a strictly positive multiplicity
    vector; the witness is the smallest such n.  Graded case (a homogeneous
    X of nontrivial degree can never be positive on every simple at once):
    require X noninvertible, strict positivity on each graded component the
    power lands in, and cumulative coverage of all simples; the witness is
    the power at which coverage completes.
    """
    cap = spec.rank * spec.rank
    unit = [0] * spec.rank
    unit[spec.unit] = 1
    m = np.asarray(unit, dtype=np.int64)
    powers = []
    for n in range(1, cap + 1):
        m = np.einsum("b,a,bac->c", m, x.vector(), spec.N)
        if np.all(m > 0):
            return True, n, "all simples reached at a single power"
        powers.append(m.copy())
    if spec.grading is not None and x.dimension > 1 + 1e-9:
        grades = np.asarray(spec.grading)
        covered: set[int] = set()
        witness = None
        component_positive = True
        for n, mv in enumerate(powers, start=1):
            support = {int(c) for c in np.nonzero(mv)[0]}
            if len({grades[c] for c in support}) == 1:
                comp = {int(c) for c in range(spec.rank) if grades[c] == grades[next(iter(support))]}
                if support != comp and covered | support != covered:
                    component_positive = False
            covered |= support
            if witness is None and len(covered) == spec.rank:
                witness = n
        if witness is not None and component_positive:
            return True, witness, "graded components each fully reached"
    return False, None, f"no power up to {cap} contains every simple"


@dataclass(frozen=True)
class ModuleCategorySpec:
    """Module category data at the multiplicity level.

    action[c][i, j] = dim M(i, c |> j) for the category label c.
    """

    spec: FusionCategorySpec
    labels: tuple[str, ...]
    action: tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "action", tuple(np.asarray(m, dtype=np.int64) for m in self.action)
        )

    @property
    def rank(self) -> int:
        return len(self.labels)

    def validate(self):
        k = self.spec.rank
        for c in range(k):
            for cp in range(k):
                lhs = self.action[c] @ self.action[cp]
                rhs = sum(
                    int(self.spec.N[c, cp, e]) * self.action[e] for e in range(k)
                )
                if not np.array_equal(lhs, rhs):
                    raise ValueError(
                        f"module associativity fails at ({self.spec.labels[c]}, {self.spec.labels[cp]})"
                    )
        if not self.is_indecomposable():
            raise ValueError("module action graph is disconnected")

    def is_indecomposable(self) -> bool:
        total = sum(self.action)
        adj = (total + total.T) > 0
        seen = {0}
        frontier = [0]
        while frontier:
            v = frontier.pop()
            for w in range(self.rank):
                if adj[v, w] and w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == self.rank


def regular_module(spec: FusionCategorySpec) -> ModuleCategorySpec:
    """The category acting on itself: M(i, c |> j) = Hom(i, c (x) j)."""
    k = spec.rank
    action = tuple(spec.N[c].T.copy() for c in range(k))  # action[c][i,j] = N[c,j,i]
    mod = ModuleCategorySpec(spec, spec.labels, action)
    mod.validate()
    return mod


def rank_one_module(spec: FusionCategorySpec) -> ModuleCategorySpec:
    """Fiber-functor module for categories with integer dimensions (pointed)."""
    dims = spec.qdims
    if np.abs(dims - np.round(dims)).max() > 1e-9:
        raise ValueError("rank-one module needs integer quantum dimensions")
    action = tuple(np.array([[int(round(d))]], dtype=np.int64) for d in dims)
    mod = ModuleCategorySpec(spec, ("*",), action)
    mod.validate()
    return mod
