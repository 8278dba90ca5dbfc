"""Repeated averages of the unit basis in exact rationals.

The level-0 vectors are basis vectors along a stream; each successor level
averages the first min-many lower-level vectors and moves the stream past the
support just used.  Everything here is exact: l1 mass one and the flat
coefficient cap are rational identities, and the small-family-norm tail
certificates are strict Fraction inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .config import BudgetExceeded, support_budget
from .family_norms import schreier_alpha_norm
from .ordinals import Ordinal, fundamental_term
from .schreier import FamilyError
from .vectors import SparseVector

# largest bit count we are willing to materialize for a block endpoint
MATERIALIZE_SHIFT_CAP = 1 << 30


class RangeNotMaterializable(FamilyError):
    """An endpoint would need more bits than the materialization cap."""


@dataclass(frozen=True)
class IndexStream:
    """Strictly increasing infinite index set: explicit prefix, then a co-finite
    tail {tail_start, tail_start+1, ...}."""

    prefix: tuple = ()
    tail_start: int = 1

    def __post_init__(self):
        if self.tail_start < 1:
            raise FamilyError("tail must start at a positive integer")
        prev = 0
        for k in self.prefix:
            if not isinstance(k, int) or k <= prev:
                raise FamilyError(f"prefix must be strictly increasing, got {self.prefix!r}")
            prev = k
        if self.prefix and self.prefix[-1] >= self.tail_start:
            raise FamilyError("prefix must sit strictly below the tail")

    @classmethod
    def naturals(cls, start: int = 1) -> "IndexStream":
        return cls((), start)

    @property
    def min(self) -> int:
        return self.prefix[0] if self.prefix else self.tail_start

    def advance_past(self, n: int) -> "IndexStream":
        """The stream restricted to elements strictly above n."""
        kept = tuple(k for k in self.prefix if k > n)
        return IndexStream(kept, max(self.tail_start, n + 1))

    def first(self, count: int) -> tuple:
        out = list(self.prefix[:count])
        nxt = self.tail_start
        while len(out) < count:
            out.append(nxt)
            nxt += 1
        return tuple(out)

    def describe(self) -> dict:
        return {"prefix": list(self.prefix), "tail_start": self.tail_start}


def _rah_block(alpha: Ordinal, stream: IndexStream, budget: int, used: int):
    """One level-alpha average on the stream; returns (vector, used)."""
    if alpha.is_zero:
        if used + 1 > budget:
            raise BudgetExceeded(
                f"support budget {budget} exhausted while placing index "
                f"{stream.min}",
                attained=used,
            )
        return SparseVector({stream.min: Fraction(1)}), used + 1
    if alpha.is_limit:
        step = fundamental_term(alpha, stream.min).successor()
        return _rah_block(step, stream, budget, used)
    k = stream.min
    pred = alpha.predecessor()
    cur = stream
    entries = {}
    coeff = Fraction(1, k)
    for _ in range(k):
        part, used = _rah_block(pred, cur, budget, used)
        for i, a in part.entries.items():
            entries[i] = coeff * a
        cur = cur.advance_past(part.max_index())
    return SparseVector(entries), used


def rah_sequence(alpha: Ordinal, stream: IndexStream, count: int,
                 max_support=None):
    """First `count` level-alpha averages on the stream, supports successive
    and disjoint.  Fails loudly with the attained prefix on budget exhaustion."""
    budget = support_budget() if max_support is None else max_support
    out = []
    used = 0
    cur = stream
    for _ in range(count):
        try:
            vec, used = _rah_block(alpha, cur, budget, used)
        except BudgetExceeded as exc:
            raise BudgetExceeded(
                f"{exc} (completed {len(out)} whole blocks)",
                attained=out,
            ) from None
        out.append(vec)
        cur = stream.advance_past(vec.max_index())
    return out


def rah_vector(alpha: Ordinal, stream: IndexStream, n: int, max_support=None):
    """The n-th level-alpha average (1-based)."""
    if n < 1:
        raise FamilyError("block number must be >= 1")
    return rah_sequence(alpha, stream, n, max_support)[-1]


@dataclass(frozen=True)
class TailNormCertificate:
    """A tail L of the stream whose level-beta average has level-alpha family
    norm strictly below 3/min L, certified by exact evaluation."""

    alpha: Ordinal
    beta: Ordinal
    stream: IndexStream
    vector: SparseVector
    norm_value: Fraction
    bound: Fraction

    @property
    def holds(self) -> bool:
        return self.norm_value < self.bound

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha.text(),
            "beta": self.beta.text(),
            "L": self.stream.describe(),
            "L_min": self.stream.min,
            "support_size": len(self.vector),
            "norm": {"num": self.norm_value.numerator,
                     "den": self.norm_value.denominator},
            "bound": {"num": self.bound.numerator,
                      "den": self.bound.denominator},
            "holds": self.holds,
        }


def rah_schreier_bound_search(alpha: Ordinal, beta: Ordinal, N: int,
                              stream: IndexStream | None = None,
                              max_support=None, max_tries: int = 8):
    """Search for a certified small-norm tail: min L > N and exact
    level-alpha norm of the level-beta average below 3/min L.

    Tails of the stream are tried with escalating cut points; each candidate
    is certified by the exact family-norm evaluator before being returned.
    """
    if not alpha < beta:
        raise FamilyError(f"need alpha < beta, got {alpha} and {beta}")
    if stream is None:
        stream = IndexStream.naturals()
    cut = N
    for _ in range(max_tries):
        tail = stream.advance_past(cut)
        vec = rah_sequence(beta, tail, 1, max_support)[0]
        value = schreier_alpha_norm(vec, alpha)
        bound = Fraction(3, tail.min)
        if value < bound:
            return TailNormCertificate(alpha, beta, tail, vec, value, bound)
        cut = tail.min
    raise FamilyError(
        f"no certified tail found for levels ({alpha}, {beta}) within "
        f"{max_tries} cut escalations past {N}"
    )


# ---------------------------------------------------------------------------
# weight families for the truncated weighted norm
# ---------------------------------------------------------------------------


def _checked_shift(bits: int) -> int:
    if bits > MATERIALIZE_SHIFT_CAP:
        raise RangeNotMaterializable(
            f"a shift by a {bits.bit_length()}-bit exponent exceeds the "
            f"materialization cap of {MATERIALIZE_SHIFT_CAP} bits"
        )
    return 1 << bits


@dataclass(frozen=True)
class GeometricBlock:
    """A maximal family interval starting at `start`, with repeated-average weights.

    level 0: the interval [start, 2*start-1] with flat weight 1/start (the
    first level-1 average on the consecutive tail).
    level 1: `start` runs, run n = [start*2^(n-1), start*2^n - 1] with weight
    1/(start^2 * 2^(n-1)) (the first level-2 average on the consecutive tail);
    a maximal level-2 interval.

    Runs are produced lazily so that blocks too large to enumerate still
    answer point queries, partial sums and closed-form certificates.
    """

    level: int
    start: int

    def __post_init__(self):
        if self.level not in (0, 1):
            raise FamilyError(
                f"weight blocks are implemented for levels 0 and 1, got {self.level}"
            )
        if self.start < 2:
            raise FamilyError("block start must be at least 2")

    @property
    def min_index(self) -> int:
        return self.start

    @property
    def run_count(self) -> int:
        return 1 if self.level == 0 else self.start

    def run(self, n: int):
        """(lo, hi, weight) of the n-th run, 1-based."""
        if not (1 <= n <= self.run_count):
            raise FamilyError(f"run {n} outside 1..{self.run_count}")
        if self.level == 0:
            return self.start, 2 * self.start - 1, Fraction(1, self.start)
        scale = _checked_shift(n - 1)
        lo = self.start * scale
        return lo, 2 * lo - 1, Fraction(1, self.start * self.start * scale)

    def run_of_index(self, i: int):
        """1-based run number owning index i, or None."""
        q = i // self.start
        if q < 1 or (self.level == 0 and (i < self.start or i > 2 * self.start - 1)):
            return None
        if self.level == 0:
            return 1
        n = q.bit_length()
        if n > self.start or i < self.start:
            return None
        return n

    def weight_at(self, i: int):
        n = self.run_of_index(i)
        if n is None:
            return None
        return self.run(n)[2]

    def max_index(self) -> int:
        if self.level == 0:
            return 2 * self.start - 1
        return self.start * _checked_shift(self.start) - 1

    def size(self) -> int:
        if self.level == 0:
            return self.start
        return self.start * (_checked_shift(self.start) - 1)

    @property
    def materializable(self) -> bool:
        return self.level == 0 or self.start <= MATERIALIZE_SHIFT_CAP

    def mass(self) -> Fraction:
        # level 0: one run of mass 1; level 1: start runs of mass 1/start each
        if self.level == 0:
            return Fraction(1)
        return Fraction(self.run_count, self.start)

    def family_norm_times_min(self) -> Fraction:
        """Closed form for min * (level-`level` family norm of the weights).

        Level 0: the best singleton is the flat weight, min*w = 1.  Level 1:
        a best admissible set starting inside run n takes s consecutive
        support elements; the run mass telescopes so every admissible start
        yields exactly mass 1/start, hence the value is 1.  Cross-checked
        against the generic evaluator on materialized small blocks in tests.
        """
        return Fraction(1)

    def to_sparse(self) -> SparseVector:
        """Materialize the weight vector (small blocks only)."""
        if self.level == 1 and self.start > 16:
            raise RangeNotMaterializable(
                f"refusing to materialize a level-1 block of start {self.start}"
            )
        entries = {}
        for n in range(1, self.run_count + 1):
            lo, hi, w = self.run(n)
            for i in range(lo, hi + 1):
                entries[i] = w
        return SparseVector(entries)

    def interval_mass_compare(self, lo: int, hi: int):
        """(numerator, denominator) of min * sum of weights over [lo, hi],
        unreduced, so callers can compare against 1 without a giant gcd.

        Each run term is count * start * w = count / (start * scale) after the
        structural cancellation, keeping huge-int work down to comparisons."""
        if hi < lo:
            return 0, 1
        num = 0
        den = 1
        n_lo = self.run_of_index(max(lo, self.start))
        if n_lo is None:
            if lo > self.start:
                return 0, 1
            n_lo = 1
        n = n_lo
        while n <= self.run_count:
            r_lo, r_hi, _ = self.run(n)
            if r_lo > hi:
                break
            count = min(hi, r_hi) - max(lo, r_lo) + 1
            if count > 0:
                # level 0: count * start * (1/start) = count
                # level 1: count * start * w = count / (start * 2^(n-1))
                if self.level == 0:
                    term_num, term_den = count, 1
                else:
                    term_num, term_den = count, self.start * (1 << (n - 1))
                num = num * term_den + term_num * den
                den = den * term_den
            n += 1
        return num, den

    def describe(self) -> dict:
        out = {"level": self.level, "start": _int_descriptor(self.start),
               "runs": _int_descriptor(self.run_count)}
        if self.materializable:
            out["max"] = _int_descriptor(self.max_index())
            out["size"] = _int_descriptor(self.size())
        else:
            out["max"] = {"form": f"start*2^start - 1 (start of {self.start.bit_length()} bits)"}
        return out


def _int_descriptor(v: int):
    if v.bit_length() <= 63:
        return v
    return {"bit_length": v.bit_length(), "hex_head": format(v >> max(0, v.bit_length() - 64), "x")}


@dataclass(frozen=True)
class WeightFamily:
    """Successive disjoint maximal blocks with exact weights, defining the
    truncated weighted norm.  The family is part of the space identity."""

    level: int
    blocks: tuple
    n0: int

    def weight_at(self, i: int):
        for block in self.blocks:
            w = block.weight_at(i)
            if w is not None:
                return w
        return None

    def describe(self) -> dict:
        return {
            "level": self.level,
            "n0": self.n0,
            "blocks": [b.describe() for b in self.blocks],
        }


def make_weight_family(alpha, count: int, n0: int) -> WeightFamily:
    """`count` successive disjoint maximal level-(alpha+1) intervals with exact
    weights of unit mass and certified small family norm.

    Blocks are adjacent: each one starts right after the previous maximum.
    Construction fails loudly with the attained prefix when the next start
    cannot be materialized.
    """
    level = alpha.natural_value() if isinstance(alpha, Ordinal) else alpha
    if level not in (0, 1):
        raise FamilyError(
            "weight families are implemented for levels 0 and 1 "
            f"(got {alpha})"
        )
    if count < 1:
        raise FamilyError("count must be >= 1")
    start = n0 + 1
    blocks = []
    for i in range(count):
        block = GeometricBlock(level, start)
        blocks.append(block)
        if i + 1 < count:
            try:
                start = block.max_index() + 1
            except RangeNotMaterializable:
                raise BudgetExceeded(
                    f"cannot place block {i + 2}: the previous maximum is not "
                    f"materializable",
                    attained=tuple(blocks),
                ) from None
    return WeightFamily(level, tuple(blocks), n0)


def _sample_run_numbers(block: GeometricBlock):
    rc = block.run_count
    if rc <= 4096:
        picks = [1, 2, rc // 2, rc]
    elif rc <= MATERIALIZE_SHIFT_CAP:
        picks = [1, 2, 64, rc]
    else:
        # runs deep inside an unmaterializable block cannot be expanded
        picks = [1, 2, 64]
    return sorted({n for n in picks if 1 <= n <= rc})


def weight_family_certificates(family: WeightFamily) -> list:
    """Per-block exact certificates: unit mass, the closed-form norm value,
    and per-run mass identities sampled across the run range.

    Run-mass identities are checked in integer form, (hi-lo+1)*w.num*start ==
    w.den, to avoid reducing fractions with enormous denominators."""
    rows = []
    for pos, block in enumerate(family.blocks, start=1):
        checks = {"mass_is_one": block.mass() == 1}
        norm_times_min = block.family_norm_times_min()
        checks["norm_bound"] = norm_times_min < 3
        run_mass_ok = True
        for n in _sample_run_numbers(block):
            lo, hi, w = block.run(n)
            # run mass is 1 at level 0 and 1/start at level 1
            expected_factor = 1 if block.level == 0 else block.start
            if (hi - lo + 1) * w.numerator * expected_factor != w.denominator:
                run_mass_ok = False
        checks["sampled_run_mass"] = run_mass_ok
        rows.append({
            "block": pos,
            "min": _int_descriptor(block.min_index),
            "norm_times_min": {"num": norm_times_min.numerator,
                               "den": norm_times_min.denominator},
            "checks": checks,
        })
    return rows


def _adjacent_partner_is_unit(blocks, block) -> bool:
    """True when the interval right after `block`, of the block's size, has
    weighted norm exactly one: every other block's contribution must stay
    strictly below the sup term, checked by unreduced exact comparisons."""
    lo = block.max_index() + 1
    hi = lo + block.size() - 1
    for other in blocks:
        if other is block:
            continue
        if other.min_index > hi:
            continue
        num, den = other.interval_mass_compare(lo, hi)
        if num >= den:
            return False
    return True


def democracy_growth_table(family: WeightFamily) -> list:
    """Democracy-ratio lower bounds: per block, the indicator of the block
    against an equally sized disjoint partner of norm one.

    Partners sit right after their block when the overlap with later runs
    stays strictly below the sup term (checked exactly, without reducing huge
    fractions); otherwise they sit past the whole family where every weight
    vanishes.  Either way the partner norm is exactly one, so the ratio is the
    block minimum.
    """
    rows = []
    blocks = list(family.blocks)
    family_max = None
    for pos, block in enumerate(blocks):
        partner = None
        if block.materializable and _adjacent_partner_is_unit(blocks, block):
            lo = block.max_index() + 1
            partner = {"lo": _int_descriptor(lo),
                       "hi": _int_descriptor(lo + block.size() - 1),
                       "count": _int_descriptor(block.size()),
                       "placement": "adjacent"}
        elif block.materializable:
            if family_max is None:
                last = blocks[-1]
                if last.materializable:
                    family_max = last.max_index()
            if family_max is not None:
                lo = family_max + 1
                partner = {"lo": _int_descriptor(lo),
                           "hi": _int_descriptor(lo + block.size() - 1),
                           "count": _int_descriptor(block.size()),
                           "placement": "beyond-family"}
        if partner is None:
            partner = {"after_block": len(blocks),
                       "count": "size of the block (beyond every weight)",
                       "placement": "beyond-family-symbolic"}
        rows.append({
            "block": pos + 1,
            "min": block.min_index,
            "partner": partner,
            "partner_norm": 1,
            "ratio": block.min_index,
        })
    return rows
