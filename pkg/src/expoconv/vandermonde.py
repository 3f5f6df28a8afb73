"""Simple and confluent Vandermonde systems over a root multiset."""
from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, replace
from typing import Iterable, Optional

import numpy as np

from . import kernels
from .errors import DuplicateRoots, NumericallySingular
from .signals import ROOT_TOL, _finite, same_root

#: Scaled-pivot threshold below which elimination gives up.
PIVOT_TOL = 1e-13

_residual_log: contextvars.ContextVar = contextvars.ContextVar("residual_log", default=None)


@contextlib.contextmanager
def residual_log():
    """Collect every solved :class:`VandermondeSystem` inside the block.

    >>> with residual_log() as log:
    ...     conv_atoms(rm)
    >>> max(s.residual for s in log)
    """
    log: list = []
    token = _residual_log.set(log)
    try:
        yield log
    finally:
        _residual_log.reset(token)


@dataclass(frozen=True)
class RootMultiset:
    """Distinct roots with multiplicities, in caller order.

    ``clusters`` is a tuple of ``(root, multiplicity)`` pairs.
    """

    clusters: tuple

    def __post_init__(self):
        cl = []
        for r, m in self.clusters:
            r = _finite(r, "root")
            if int(m) != m or m < 1:
                raise ValueError(f"multiplicity must be a positive integer, got {m!r}")
            cl.append((r, int(m)))
        if not cl:
            raise ValueError("a root multiset needs at least one root")
        for i in range(len(cl)):
            for j in range(i + 1, len(cl)):
                if same_root(cl[i][0], cl[j][0]):
                    raise DuplicateRoots(f"roots {cl[i][0]} and {cl[j][0]} coincide")
        object.__setattr__(self, "clusters", tuple(cl))

    @classmethod
    def simple(cls, roots: Iterable) -> "RootMultiset":
        return cls(tuple((r, 1) for r in roots))

    @classmethod
    def merged(cls, pairs: Iterable) -> "RootMultiset":
        """Build from ``(root, mult)`` pairs, adding multiplicities of equal roots."""
        out: list = []
        for r, m in pairs:
            r = complex(r)
            for i, (s, k) in enumerate(out):
                if same_root(s, r):
                    out[i] = (s, k + m)
                    break
            else:
                out.append((r, m))
        return cls(tuple(out))

    def union(self, other: "RootMultiset | Iterable") -> "RootMultiset":
        pairs = other.clusters if isinstance(other, RootMultiset) else tuple(other)
        return RootMultiset.merged(self.clusters + pairs)

    def with_root(self, root: complex, mult: int = 1) -> "RootMultiset":
        return self.union(((root, mult),))

    @property
    def roots(self) -> tuple:
        return tuple(r for r, _ in self.clusters)

    @property
    def multiplicities(self) -> tuple:
        return tuple(m for _, m in self.clusters)

    @property
    def order(self) -> int:
        return sum(self.multiplicities)

    def expanded(self) -> list:
        return [r for r, m in self.clusters for _ in range(m)]

    def offsets(self) -> list:
        """Column index where each cluster's block starts."""
        out, c = [], 0
        for _, m in self.clusters:
            out.append(c)
            c += m
        return out


@dataclass(frozen=True)
class VandermondeSystem:
    """``matrix @ solution = rhs``; ``residual`` is ``||V A - B||_inf`` once solved."""

    matrix: np.ndarray
    rhs: np.ndarray
    multiset: Optional[RootMultiset] = None
    solution: Optional[np.ndarray] = None
    residual: Optional[float] = None

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def residual_ok(self, factor: float = 1e-8) -> bool:
        """Whether the residual meets ``factor * (1 + ||B||_inf)``."""
        if self.residual is None:
            return False
        return self.residual <= factor * (1.0 + float(np.max(np.abs(self.rhs), initial=0.0)))


def _unit_rhs(n: int) -> np.ndarray:
    b = np.zeros(n, dtype=np.complex128)
    b[-1] = 1.0
    return b


def build_simple(roots) -> VandermondeSystem:
    """``V[i, j] = roots[j]**i`` with rhs ``(0, ..., 0, 1)``."""
    roots = [complex(r) for r in roots]
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if same_root(roots[i], roots[j]):
                raise DuplicateRoots(f"roots {roots[i]} and {roots[j]} coincide")
    rm = RootMultiset.simple(roots)
    return build_confluent(rm)


def build_confluent(rm: RootMultiset) -> VandermondeSystem:
    """Block matrix with ``C(i, j) * r_s**(i - j)`` in column ``j`` of block ``s``."""
    mat = kernels.confluent_matrix(
        np.array(rm.roots, dtype=np.complex128), np.array(rm.multiplicities, dtype=np.int64)
    )
    return VandermondeSystem(mat, _unit_rhs(rm.order), rm)


def _closest_pair(rm: Optional[RootMultiset], column: int):
    if rm is None or len(rm.clusters) < 2:
        return None
    # cluster owning the failing column, then its nearest neighbour
    owner = 0
    for s, off in enumerate(rm.offsets()):
        if off <= column:
            owner = s
    r = rm.roots[owner]
    others = [q for i, q in enumerate(rm.roots) if i != owner]
    q = min(others, key=lambda x: abs(x - r))
    return (r, q)


def solve_system(sys: VandermondeSystem, rhs=None) -> VandermondeSystem:
    """Solve and return a new system with ``solution`` and ``residual`` filled in.

    ``rhs`` may be a vector or an ``(n, m)`` block; it replaces ``sys.rhs``.
    """
    b = sys.rhs if rhs is None else np.asarray(rhs, dtype=np.complex128)
    if b.shape[0] != sys.n:
        raise ValueError(f"rhs has length {b.shape[0]}, system has order {sys.n}")
    if not np.all(np.isfinite(b)):
        raise ValueError("non-finite right-hand side")
    b2 = b.reshape(sys.n, -1)
    x, fail = kernels.gauss_solve(sys.matrix, b2, PIVOT_TOL)
    if fail >= 0:
        pair = _closest_pair(sys.multiset, fail)
        hint = f" (closest roots {pair[0]:.6g} and {pair[1]:.6g})" if pair else ""
        raise NumericallySingular(
            f"pivot below {PIVOT_TOL:g} at column {fail}{hint}", pair=pair, column=fail
        )
    res = float(np.max(np.abs(sys.matrix @ x - b2), initial=0.0))
    x = x.reshape(b.shape)
    out = replace(sys, rhs=b, solution=x, residual=res)
    log = _residual_log.get()
    if log is not None:
        log.append(out)
    return out


def solve(sys: VandermondeSystem) -> np.ndarray:
    """Coefficient vector ``A`` of ``V A = sys.rhs``."""
    return solve_system(sys).solution


def solve_with_rhs(sys: VandermondeSystem, b) -> np.ndarray:
    """Coefficient vector for a caller-supplied right-hand side (e.g. initial values)."""
    return solve_system(sys, b).solution
