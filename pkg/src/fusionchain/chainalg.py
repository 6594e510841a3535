"""Finite-window chain algebras.

Edge graphs over module vertices, path-count window algebras with Markov
traces, window inclusions (plain concatenation for pointed categories,
F-symbol recoupling for TY towers), on-site symmetry operators and their
commutants, conditional expectations, and extended local algebras.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    CapExceeded,
    DecomposableModule,
    FSymbolsMissing,
    NotSubgroup,
)
from .fusion import (
    FusionCategorySpec,
    ModuleCategorySpec,
    ObjectExpr,
    f_symbol,
    power_decompose,
)
from .groupdata import FiniteAbelianGroup

SVD_TOL = 1e-9
DENSE_CAP = 4096


# ---------------------------------------------------------------------------
# Edge graphs and window algebras


@dataclass(frozen=True)
class EdgeGraph:
    vertices: tuple[str, ...]
    adjacency: np.ndarray  # counts, adjacency[i, j] = dim M(i, X |> j)
    connected: bool

    def __post_init__(self):
        object.__setattr__(self, "adjacency", np.asarray(self.adjacency, dtype=np.int64))

    @property
    def onsite_dimension(self) -> int:
        return int(self.adjacency.sum())


def edge_graph(module: ModuleCategorySpec, x: ObjectExpr) -> EdgeGraph:
    if not module.is_indecomposable():
        raise DecomposableModule("module action graph is disconnected")
    k = module.rank
    adj = np.zeros((k, k), dtype=np.int64)
    for c in range(module.spec.rank):
        adj += x.multiplicities[c] * module.action[c]
    sym = (adj + adj.T) > 0
    seen = {0}
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for w in range(k):
            if sym[v, w] and w not in seen:
                seen.add(w)
                frontier.append(w)
    return EdgeGraph(module.labels, adj, len(seen) == k)


@dataclass(frozen=True)
class WindowAlgebra:
    """Multimatrix algebra of an n-site window.

    Edge-restricted form: blocks keyed by vertex pairs (i, j), dims are
    n-step path counts.  Abstract fusion-chain form: blocks keyed by a
    central label c, dims are tensor-power multiplicities m_c(n).
    """

    n: int
    block_keys: tuple
    block_dims: tuple[int, ...]
    trace_weights: tuple[float, ...]  # weight per minimal projection, per block
    form: str  # "edge" or "central"

    def __post_init__(self):
        w = np.asarray(self.trace_weights)
        d = np.asarray(self.block_dims)
        if np.any(w <= 0):
            raise ValueError("trace weights must be positive")
        if abs(float(w @ d) - 1.0) > 1e-9:
            raise ValueError("trace weights must normalize to 1")

    @property
    def total_dimension(self) -> int:
        return int(sum(d * d for d in self.block_dims))


def window_algebra(graph: EdgeGraph, n: int) -> WindowAlgebra:
    if n < 1:
        raise ValueError("n must be at least 1")
    En = np.linalg.matrix_power(graph.adjacency, n)
    keys = []
    dims = []
    for i in range(len(graph.vertices)):
        for j in range(len(graph.vertices)):
            if En[i, j]:
                keys.append((graph.vertices[i], graph.vertices[j]))
                dims.append(int(En[i, j]))
    A = graph.adjacency.astype(np.float64)
    evals, evecs = np.linalg.eig(A)
    p = int(np.argmax(evals.real))
    lam = evals.real[p]
    v = np.abs(evecs[:, p].real)
    evalsl, evecsl = np.linalg.eig(A.T)
    pl = int(np.argmax(evalsl.real))
    u = np.abs(evecsl[:, pl].real)
    weights = []
    norm = 0.0
    for (li, lj), d in zip(keys, dims):
        i = graph.vertices.index(li)
        j = graph.vertices.index(lj)
        w = u[i] * v[j] / lam**n
        weights.append(w)
        norm += w * d
    weights = [w / norm for w in weights]
    return WindowAlgebra(n, tuple(keys), tuple(dims), tuple(weights), "edge")


def central_window_algebra(x: ObjectExpr, n: int) -> WindowAlgebra:
    """End(X^(x)n) with blocks per total charge and Markov trace weights
    d_c / d_X^n."""
    spec = x.spec
    m = power_decompose(x, n).vector()
    keys = []
    dims = []
    weights = []
    dX = x.dimension
    for c in range(spec.rank):
        if m[c]:
            keys.append(spec.labels[c])
            dims.append(int(m[c]))
            weights.append(float(spec.qdims[c]) / dX**n)
    norm = float(np.dot(weights, dims))
    weights = [w / norm for w in weights]
    return WindowAlgebra(n, tuple(keys), tuple(dims), tuple(weights), "central")


def markov_trace(w: WindowAlgebra) -> tuple[float, ...]:
    """Per-block trace weight of a minimal projection; positive, normalized
    against block dimensions."""
    return w.trace_weights


# ---------------------------------------------------------------------------
# Fusion-tree paths and inclusions


def _paths(spec: FusionCategorySpec, x: ObjectExpr, n: int, total: int):
    """Left-grouped fusion trees: sequences (s_1, c_1, s_2, c_2, ..., s_n, c_n)
    with s_k a simple summand of X, c_k in c_{k-1} (x) s_k, c_0 = unit,
    c_n = total.  Multiplicity-free categories only; X here must be a
    multiplicity-free sum of simples."""
    summands = [a for a in range(spec.rank) if x.multiplicities[a]]
    if any(m > 1 for m in x.multiplicities):
        raise FSymbolsMissing("paths need a multiplicity-free generating object")
    out = []

    def rec(prefix, charge):
        if len(prefix) == n:
            if charge == total:
                out.append(tuple(prefix))
            return
        for s in summands:
            for c in spec.fusion_products(charge, s):
                rec(prefix + [(s, c)], c)

    rec([], spec.unit)
    return out


@dataclass(frozen=True)
class WindowElement:
    """A matrix in one or more central blocks of End(X^(x)n), stored per block
    in the fusion-tree path basis."""

    x: ObjectExpr
    n: int
    blocks: dict  # total-charge label index -> complex matrix

    def algebra(self) -> WindowAlgebra:
        return central_window_algebra(self.x, self.n)


def window_identity(x: ObjectExpr, n: int) -> WindowElement:
    m = power_decompose(x, n).vector()
    return WindowElement(
        x, n, {c: np.eye(int(m[c]), dtype=complex) for c in range(len(m)) if m[c]}
    )


def central_projection(x: ObjectExpr, n: int, label: str) -> WindowElement:
    spec = x.spec
    c = spec.index(label)
    m = power_decompose(x, n).vector()
    if not m[c]:
        raise ValueError(f"label {label} does not occur at n={n}")
    return WindowElement(x, n, {c: np.eye(int(m[c]), dtype=complex)})


def element_trace(f: WindowElement) -> complex:
    w = central_window_algebra(f.x, f.n)
    spec = f.x.spec
    out = 0.0 + 0j
    for key, weight in zip(w.block_keys, w.trace_weights):
        c = spec.index(key)
        if c in f.blocks:
            out += weight * np.trace(f.blocks[c])
    return out


def multiply(f: WindowElement, g: WindowElement) -> WindowElement:
    if f.x != g.x or f.n != g.n:
        raise ValueError("mismatched windows")
    out = {}
    for c in set(f.blocks) & set(g.blocks):
        out[c] = f.blocks[c] @ g.blocks[c]
    return WindowElement(f.x, f.n, out)


def _right_extension_matrix(spec, x, n, c, paths_n, paths_n1, cprime):
    """Unit matrix entries of f (x) 1_X mapping block c at length n into
    block c' at length n+1: delta on the appended step."""
    rows = {p: i for i, p in enumerate(paths_n1)}
    out = np.zeros((len(paths_n1), len(paths_n)))
    for j, p in enumerate(paths_n):
        for s in range(spec.rank):
            if not x.multiplicities[s]:
                continue
            if spec.N[c, s, cprime]:
                q = p + ((s, cprime),)
                out[rows[q], j] = 1.0
    return out


def _left_recoupling(spec, x, n, paths_n, paths_n1, c, cprime):
    """Matrix of the isometry embedding block c of End(X^n) into block c' of
    End(X^(n+1)) under f -> 1_X (x) f, expressed in left-grouped path bases.

    The change of parenthesization ((s_0 (s_1 ... )) vs (s_0 s_1) ... ) is a
    product of F-symbols along the tree; for trivial F this reduces to path
    concatenation on the left.
    """
    out = np.zeros((len(paths_n1), len(paths_n)), dtype=complex)
    for jq, q in enumerate(paths_n):  # tree of X^n with total charge c
        for s0 in range(spec.rank):
            if not x.multiplicities[s0]:
                continue
            # target trees p of length n+1, first step s0, total c'
            for ip, p in enumerate(paths_n1):
                if p[0][0] != s0 or p[-1][1] != cprime:
                    continue
                if tuple(step[0] for step in p[1:]) != tuple(step[0] for step in q):
                    continue
                # amplitude: product over k of F^{s0, t_k, s_{k+1}}_{c_{k+2}(p)}
                # with t_k the running charge of q and c the running charge of p
                amp = 1.0 + 0j
                ok = True
                for k in range(n - 1):
                    tk = q[k][1]
                    sk1 = q[k + 1][0]
                    tk1 = q[k + 1][1]
                    ck1 = p[k + 1][1]
                    ck2 = p[k + 2][1]
                    val = f_symbol(spec, s0, tk, sk1, ck2, ck1, tk1)
                    if val == 0:
                        ok = False
                        break
                    amp *= val
                if not ok:
                    continue
                # leading consistency: charge after 2 steps of p is s0 x q_1
                if not spec.N[s0, q[0][0], p[1][1]]:
                    continue
                if abs(amp) > 0:
                    out[ip, jq] = amp
    return out


def include_window(
    f: WindowElement, target_n: int, offset: int
) -> WindowElement:
    """f -> 1_X^(x)offset (x) f (x) 1_X^(x)(target_n - n - offset)."""
    spec = f.x.spec
    if offset < 0 or offset + f.n > target_n:
        raise ValueError("offset places the window outside the target")
    if spec.fsymbols is not None:
        nontriv = {a for a in range(spec.rank) if f.x.multiplicities[a]}
        graded_ok = spec.grading is not None and all(
            spec.grading[a] == 1 for a in nontriv
        )
        if not graded_ok:
            raise FSymbolsMissing(
                "inclusion supported for pointed categories and homogeneous TY towers"
            )
    cur = f
    for _ in range(target_n - f.n - offset):
        cur = _extend(cur, right=True)
    for _ in range(offset):
        cur = _extend(cur, right=False)
    return cur


def _extend(f: WindowElement, right: bool) -> WindowElement:
    spec = f.x.spec
    x = f.x
    n = f.n
    m1 = power_decompose(x, n + 1).vector()
    out: dict = {}
    paths_cache = {}

    def paths(nn, c):
        if (nn, c) not in paths_cache:
            paths_cache[(nn, c)] = _paths(spec, x, nn, c)
        return paths_cache[(nn, c)]

    for cprime in range(spec.rank):
        if not m1[cprime]:
            continue
        pn1 = paths(n + 1, cprime)
        acc = np.zeros((len(pn1), len(pn1)), dtype=complex)
        touched = False
        for c, block in f.blocks.items():
            pn = paths(n, c)
            if not pn:
                continue
            if right:
                V = _right_extension_matrix(spec, x, n, c, pn, pn1, cprime)
            else:
                V = _left_recoupling(spec, x, n, pn, pn1, c, cprime)
            if not V.any():
                continue
            acc = acc + V @ block @ V.conj().T
            touched = True
        if touched:
            out[cprime] = acc
    return WindowElement(x, n + 1, out)


# ---------------------------------------------------------------------------
# Concrete windows: on-site regular actions


def regular_rep_matrix(group: FiniteAbelianGroup, g) -> np.ndarray:
    els = group.elements()
    idx = {a: i for i, a in enumerate(els)}
    d = len(els)
    R = np.zeros((d, d))
    for a in els:
        R[idx[group.add(g, a)], idx[a]] = 1.0
    return R


def group_mpo(group: FiniteAbelianGroup, g, n: int) -> np.ndarray:
    """U_g = R_g^(x)n on the window, R_g the regular representation."""
    R = regular_rep_matrix(group, g)
    out = np.array([[1.0]])
    for _ in range(n):
        out = np.kron(out, R)
    return out


def _permutation_of_matrix(U: np.ndarray):
    """Return the permutation if U is a 0/1 permutation matrix, else None."""
    if not np.array_equal(U, U.astype(bool).astype(U.dtype)):
        return None
    if not (np.all(U.sum(axis=0) == 1) and np.all(U.sum(axis=1) == 1)):
        return None
    return np.argmax(U, axis=0)


def commutant_basis(
    generators: list[np.ndarray], cap: int = DENSE_CAP
) -> list[np.ndarray]:
    """Orthonormal basis (normalized trace) of the joint commutant.

    Permutation generators take an exact orbit-averaging path: the commutant
    is spanned by orbit sums of matrix units under (i, j) -> (pi i, pi j).
    Otherwise the stacked-commutator null space is computed by SVD with
    tolerance 1e-9, capped at dimension 64.
    """
    if not generators:
        raise ValueError("need at least one generator")
    D = generators[0].shape[0]
    perms = [_permutation_of_matrix(U) for U in generators]
    if all(p is not None for p in perms):
        if D * D > 64 * cap:
            raise CapExceeded(f"window dimension {D} too large")
        # orbits of index pairs
        parent = list(range(D * D))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for p in perms:
            for i in range(D):
                for j in range(D):
                    union(i * D + j, int(p[i]) * D + int(p[j]))
        orbits: dict[int, list[int]] = {}
        for v in range(D * D):
            orbits.setdefault(find(v), []).append(v)
        basis = []
        for members in orbits.values():
            M = np.zeros((D, D), dtype=complex)
            for v in members:
                M[v // D, v % D] = 1.0
            M /= np.sqrt(len(members) / D)  # tr(M* M)/D = |orbit|/D
            basis.append(M)
        return basis
    if D > 64:
        raise CapExceeded(f"dense commutant limited to dimension 64, got {D}")
    rows = []
    for U in generators:
        L = np.kron(U, np.eye(D)) - np.kron(np.eye(D), U.T)
        rows.append(L)
    stack = np.vstack(rows)
    _, s, vh = np.linalg.svd(stack)
    null = vh[np.sum(s > SVD_TOL) :].conj()
    basis = []
    for row in null:
        M = row.reshape(D, D)
        M /= np.sqrt(np.trace(M.conj().T @ M).real / D)
        basis.append(M)
    return basis


def commutant_dimension(generators: list[np.ndarray], cap: int = DENSE_CAP) -> int:
    return len(commutant_basis(generators, cap=cap))


def conditional_expectation(
    x: np.ndarray, group: FiniteAbelianGroup, n: int
) -> np.ndarray:
    """E(x) = |A|^-1 sum_g U_g x U_g*: the canonical trace-preserving
    expectation onto the symmetric subalgebra."""
    out = np.zeros_like(x, dtype=complex)
    for g in group.elements():
        U = group_mpo(group, g, n)
        out += U @ x @ U.conj().T
    return out / group.order


# ---------------------------------------------------------------------------
# Extended local algebras


def extended_window_dims(
    group: FiniteAbelianGroup, L_elements, n: int
) -> dict:
    """Block data for C(X^(x)n, X^(x)n (x) L) in the pointed chain over A,
    L a subgroup of A x Ahat given by its (a, phi) elements.
    dim = sum_{l in L} sum_c m_c(n) m_{c+a(l)}(n)."""
    els = set(group.elements())
    supports = []
    seen = set()
    for ell in L_elements:
        a = tuple(ell[0])
        if a not in els:
            raise NotSubgroup("element outside A x Ahat")
        supports.append(a)
        seen.add((tuple(ell[0]), tuple(ell[1])))
    # subgroup check on the presented elements
    for e1 in L_elements:
        for e2 in L_elements:
            s = (
                group.add(tuple(e1[0]), tuple(e2[0])),
                tuple(
                    (u + v) % m
                    for u, v, m in zip(e1[1], e2[1], group.cyclic_factors)
                ),
            )
            if s not in seen:
                raise NotSubgroup("presented elements are not closed under addition")
    from .fusion import object_from_labels, pointed_category

    spec = pointed_category(group)
    x = object_from_labels(spec, list(spec.labels))
    m = power_decompose(x, n).vector()
    total = 0
    per_ell = []
    for ell, a in zip(L_elements, supports):
        d = 0
        for c_el in group.elements():
            c = spec.index(",".join(map(str, c_el)))
            ca = spec.index(",".join(map(str, group.add(c_el, a))))
            d += int(m[c]) * int(m[ca])
        per_ell.append({"element": (tuple(ell[0]), tuple(ell[1])), "dim": d})
        total += d
    return {"n": n, "total_dim": total, "per_element": per_ell}
