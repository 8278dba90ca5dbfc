"""Window norms with square-root weights, their direct sums, and the parity norm.

The window space of size parameter N lives on indices 1..2N-1: its norm is the
larger of the Euclidean norm and the sup of weighted left partial sums over
the window [N, 2N-1] with weights 1/sqrt(offset).  The global sum spaces
concatenate these blocks along the integers, block N occupying
((N-1)^2, N^2].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .vectors import SparseVector


class NormDomainError(ValueError):
    pass


def kt_block_norm(x: SparseVector, N: int) -> float:
    """Norm of the size-N window space; support must lie in [1..2N-1]."""
    if N < 1:
        raise NormDomainError(f"bad window parameter {N}")
    hi = 2 * N - 1
    squares = []
    for i, a in x.entries.items():
        if i > hi:
            raise NormDomainError(f"index {i} outside the window space [1..{hi}]")
        fa = float(a)
        squares.append(fa * fa)
    l2 = math.sqrt(math.fsum(squares))
    best = 0.0
    running = 0.0
    for i in range(N, hi + 1):
        a = x.entries.get(i)
        if a:
            running += float(a) / math.sqrt(i - N + 1)
            mag = abs(running)
            if mag > best:
                best = mag
    return l2 if l2 >= best else best


def kt_global_index(N: int, local: int) -> int:
    """Global index of local coordinate `local` inside block N."""
    if not (1 <= local <= 2 * N - 1):
        raise NormDomainError(f"local index {local} outside block {N}")
    return (N - 1) * (N - 1) + local


def kt_block_of(g: int):
    """(block, local) of a global index; blocks tile ((N-1)^2, N^2]."""
    if g < 1:
        raise NormDomainError(f"bad global index {g}")
    N = math.isqrt(g - 1) + 1
    return N, g - (N - 1) * (N - 1)


def block_sum_norm(x: SparseVector, outer: str) -> float:
    """c0 or l2 aggregate of per-block window norms over the global indices."""
    if outer not in ("c0", "l2"):
        raise NormDomainError(f"outer aggregate must be c0 or l2, got {outer!r}")
    per_block = {}
    for g, a in x.entries.items():
        N, local = kt_block_of(g)
        per_block.setdefault(N, {})[local] = a
    norms = [kt_block_norm(SparseVector(entries), N)
             for N, entries in sorted(per_block.items())]
    if not norms:
        return 0.0
    if outer == "c0":
        return max(norms)
    return math.sqrt(math.fsum(v * v for v in norms))


def mixed_parity_norm(x: SparseVector) -> float:
    """l1 over even indices plus l2 over odd indices."""
    even = math.fsum(abs(float(v)) for i, v in x.entries.items() if i % 2 == 0)
    odd = math.fsum(float(v) * float(v) for i, v in x.entries.items() if i % 2 == 1)
    return even + math.sqrt(odd)


def suppression_project(x: SparseVector, A) -> SparseVector:
    """Coordinate projection onto the index set A."""
    return x.restrict(A)


@dataclass
class NormOracle:
    """A named norm with evaluation, certified basis bounds and metadata.

    exactness: closed-form | search-exact | family-truncated.  `certified`
    optionally carries proven upper constants, e.g. a suppression constant.
    """

    name: str
    evaluate: object
    basis_bounds: tuple = (1.0, 1.0)
    dimension_cap: int = 1_000_000
    exactness: str = "closed-form"
    witness_fn: object = None
    certified: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def norm(self, x: SparseVector):
        if x.entries and x.max_index() > self.dimension_cap:
            raise NormDomainError(
                f"support index {x.max_index()} exceeds the cap "
                f"{self.dimension_cap} of space {self.name}"
            )
        return self.evaluate(x)

    def norm_with_witness(self, x: SparseVector):
        if self.witness_fn is None:
            return self.norm(x), None
        if x.entries and x.max_index() > self.dimension_cap:
            raise NormDomainError(
                f"support index {x.max_index()} exceeds the cap "
                f"{self.dimension_cap} of space {self.name}"
            )
        return self.witness_fn(x)
