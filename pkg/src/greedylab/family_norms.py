"""Norms defined by maximizing over Schreier-type families.

Three evaluators live here: the family sup norm (best weighted member of a
level-alpha family), the interval-system norm whose interval minima must form
a relaxed-family member, and the weighted truncated norm driven by a generated
family of weight blocks.  All three are exact when fed int/Fraction payloads.
"""

from __future__ import annotations

import heapq
from itertools import combinations, product

from .config import BudgetExceeded, james_ops_budget, node_budget
from .ordinals import ONE, Ordinal
from .schreier import FamilyError, f_alpha_member, schreier_member
from .vectors import SparseVector


# ---------------------------------------------------------------------------
# family sup norm: sup over members F of  sum_{n in F} |x_n|
# ---------------------------------------------------------------------------


def _s1_best(values):
    """Exact optimum at level 1 by a descending scan with a shrinking top-k pool.

    At start value s the admissible sets inside the tail have at most s
    elements, so the best is the top-s sum of the tail; scanning s downward
    keeps a min-heap of the current kept values.
    """
    heap = []
    total = 0
    best = 0
    for idx, val in reversed(values):
        heapq.heappush(heap, val)
        total += val
        while len(heap) > idx:
            total -= heapq.heappop(heap)
        if total > best:
            best = total
    return best


def _s1_best_with_witness(values):
    """Quadratic variant recomputing each start's top-k sum afresh, so the
    reported value and witness come from one summation order."""
    best = 0
    best_wit = ()
    for idx, _ in values:
        tail = [(v, i) for i, v in values if i >= idx]
        tail.sort(key=lambda t: (-t[0], t[1]))
        kept = tail[:idx]
        s = sum(v for v, _ in kept)
        if s > best:
            best = s
            best_wit = tuple(sorted(i for _, i in kept))
    return best, best_wit


def _bnb_best(values, alpha, max_nodes):
    """Branch-and-bound over members inside the support, pruned by tail mass.

    Hereditary families allow pruning a branch as soon as the extended prefix
    leaves the family; remaining absolute mass bounds the achievable gain.
    """
    idxs = [i for i, _ in values]
    vals = [v for _, v in values]
    n = len(values)
    suffix = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        suffix[j] = suffix[j + 1] + vals[j]
    best = 0
    best_wit = ()
    nodes = 0

    def dfs(start, cur, cur_sum):
        nonlocal best, best_wit, nodes
        for j in range(start, n):
            if cur_sum + suffix[j] <= best:
                break
            nodes += 1
            if nodes > max_nodes:
                raise BudgetExceeded(
                    f"family norm search exceeded {max_nodes} nodes "
                    f"(best so far {best})",
                    attained=best,
                )
            cand = cur + (idxs[j],)
            if schreier_member(cand, alpha):
                new_sum = cur_sum + vals[j]
                if new_sum > best:
                    best = new_sum
                    best_wit = cand
                dfs(j + 1, cand, new_sum)

    dfs(0, (), 0)
    return best, best_wit


def schreier_alpha_norm(x: SparseVector, alpha: Ordinal, max_nodes=None,
                        want_witness=False):
    """sup of sum_{n in F} |x_n| over level-alpha members F; exact.

    Exhausted search budgets raise instead of silently approximating.
    """
    values = sorted((i, abs(v)) for i, v in x.entries.items())
    if not values:
        return (0, ()) if want_witness else 0
    if alpha.is_zero:
        best = max(v for _, v in values)
        if not want_witness:
            return best
        wit = next((i,) for i, v in values if v == best)
        return best, wit
    if alpha == ONE:
        if not want_witness:
            return _s1_best(values)
        return _s1_best_with_witness(values)
    budget = node_budget() if max_nodes is None else max_nodes
    best, wit = _bnb_best(values, alpha, budget)
    return (best, wit) if want_witness else best


def naive_schreier_norm(x: SparseVector, alpha: Ordinal):
    """Reference evaluator: enumerate every subset of the support."""
    supp = x.support
    if len(supp) > 16:
        raise FamilyError("naive family norm limited to supports of size <= 16")
    best = 0
    for size in range(len(supp) + 1):
        for combo in combinations(supp, size):
            if schreier_member(combo, alpha):
                s = sum(abs(x.get(i)) for i in combo)
                if s > best:
                    best = s
    return best


# ---------------------------------------------------------------------------
# interval-system norm (James-type): sup over interval chains I_1 < ... < I_d
# with (min I_j)_j in the relaxed family, of  sum_j |sum_{i in I_j} x_i|
# ---------------------------------------------------------------------------


def _prefix_tables(coeffs):
    zero = 0
    ps = [zero]
    for c in coeffs:
        ps.append(ps[-1] + c)
    n = len(coeffs)
    # rmax[i][t] = max of ps[i+1 .. i+1+t]; rmin likewise
    rmax = []
    rmin = []
    for i in range(n):
        row_max = []
        row_min = []
        cur_max = cur_min = ps[i + 1]
        for j in range(i + 1, n + 1):
            if ps[j] > cur_max:
                cur_max = ps[j]
            if ps[j] < cur_min:
                cur_min = ps[j]
            row_max.append(cur_max)
            row_min.append(cur_min)
        rmax.append(row_max)
        rmin.append(row_min)
    return ps, rmax, rmin


def _james_dp_level1(support, coeffs, want_witness=False):
    """Exact interval-system optimum when minima only need size <= 2*min.

    Minima may be restricted to support points: sliding an interval's start
    right to its first support point keeps every block sum and only spreads
    the minima set, which stays in the family.  Chains are scored by a DP over
    (start position, intervals allowed); each gap contributes its best prefix
    sum deviation.
    """
    n = len(support)
    if n == 0:
        return (0, ()) if want_witness else 0
    ps, rmax, rmin = _prefix_tables(coeffs)

    def gapbest(i, r):
        # best |interval sum| for an interval starting at position i and
        # ending before position r (r = n allows running to the end)
        t = r - i - 1
        a = rmax[i][t] - ps[i]
        b = ps[i] - rmin[i][t]
        return a if a >= b else b

    tcaps = [min(2 * support[i], n - i) for i in range(n)]
    tmax = max(tcaps)
    est_ops = n * n * tmax
    if est_ops > james_ops_budget():
        raise BudgetExceeded(
            f"interval-system DP needs ~{est_ops} operations, over budget"
        )

    stop_val = [gapbest(i, n) for i in range(n)]
    levels = [None, stop_val[:]]
    choice = [None, [None] * n] if want_witness else None
    for t in range(2, tmax + 1):
        prev = levels[t - 1]
        cur = stop_val[:]
        ch = [None] * n if want_witness else None
        for i in range(n - 1, -1, -1):
            best_i = cur[i]
            arg = None
            for r in range(i + 1, n):
                cand = gapbest(i, r) + prev[r]
                if cand > best_i:
                    best_i = cand
                    arg = r
            cur[i] = best_i
            if want_witness:
                ch[i] = arg
        levels.append(cur)
        if want_witness:
            choice.append(ch)

    best = 0
    best_start = None
    for i in range(n):
        v = levels[tcaps[i]][i]
        if v > best:
            best = v
            best_start = i
    if not want_witness:
        return best
    if best_start is None:
        return best, ()
    # walk the DP choices to recover the minima chain
    minima = []
    i, t = best_start, tcaps[best_start]
    while i is not None:
        minima.append(support[i])
        nxt = choice[t][i] if t >= 2 else None
        if nxt is None:
            break
        i, t = nxt, t - 1
    return best, tuple(minima)


def _james_dfs(support, coeffs, alpha, max_nodes):
    """General-level interval-system search over support minima with pruning."""
    n = len(support)
    if n == 0:
        return 0
    ps, rmax, rmin = _prefix_tables(coeffs)
    abs_suffix = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        abs_suffix[j] = abs_suffix[j + 1] + abs(coeffs[j])

    def gapbest(i, r):
        t = r - i - 1
        a = rmax[i][t] - ps[i]
        b = ps[i] - rmin[i][t]
        return a if a >= b else b

    best = 0
    nodes = 0

    def dfs(minima, last_pos, closed):
        nonlocal best, nodes
        # current chain ends with an open interval from last_pos
        total_stop = closed + gapbest(last_pos, n)
        if total_stop > best:
            best = total_stop
        for r in range(last_pos + 1, n):
            bound = closed + gapbest(last_pos, r) + abs_suffix[r]
            if bound <= best:
                continue
            nodes += 1
            if nodes > max_nodes:
                raise BudgetExceeded(
                    f"interval-system search exceeded {max_nodes} nodes",
                    attained=best,
                )
            cand = minima + (support[r],)
            if f_alpha_member(cand, alpha):
                dfs(cand, r, closed + gapbest(last_pos, r))

    for i in range(n):
        if f_alpha_member((support[i],), alpha):
            dfs((support[i],), i, 0)
    return best


def jamesification_norm(x: SparseVector, alpha: Ordinal = ONE, max_nodes=None,
                        want_witness=False):
    """Interval-system norm at a successor level; exact for exact payloads."""
    if not alpha.is_successor:
        raise FamilyError(f"interval-system norm needs a successor level, got {alpha}")
    support = list(x.support)
    coeffs = [x.get(i) for i in support]
    if alpha == ONE:
        return _james_dp_level1(support, coeffs, want_witness=want_witness)
    budget = node_budget() if max_nodes is None else max_nodes
    best = _james_dfs(support, coeffs, alpha, budget)
    return (best, None) if want_witness else best


def naive_james_norm(x: SparseVector, alpha: Ordinal = ONE):
    """Reference evaluator: all minima sets inside [1..max support], all ends."""
    if x.is_zero:
        return 0
    top = x.max_index()
    if top > 10:
        raise FamilyError("naive interval-system norm limited to max index <= 10")
    line = list(range(1, top + 1))
    best = 0
    for d in range(1, top + 1):
        for minima in combinations(line, d):
            if not f_alpha_member(minima, alpha):
                continue
            end_ranges = []
            for j, m in enumerate(minima):
                hi = (minima[j + 1] - 1) if j + 1 < d else top
                end_ranges.append(range(m, hi + 1))
            for ends in product(*end_ranges):
                total = 0
                for m, e in zip(minima, ends):
                    total += abs(sum(x.get(i) for i in range(m, e + 1)))
                if total > best:
                    best = total
    return best


# ---------------------------------------------------------------------------
# weighted truncated norm: max of sup-norm and, per generated block F_i,
# min F_i * sum_{n in F_i} w_n |x_n|
# ---------------------------------------------------------------------------


class _ExplicitBlock:
    """Adapter for an explicit (index set, weights) pair."""

    __slots__ = ("indices", "weights", "min_index")

    def __init__(self, indices, weights):
        self.indices = tuple(indices)
        if not self.indices:
            raise FamilyError("weight block needs a nonempty index set")
        self.weights = dict(weights)
        self.min_index = self.indices[0]
        total = sum(self.weights[i] for i in self.indices)
        if total != 1:
            raise FamilyError(f"weights must sum to one exactly, got {total}")

    def weight_at(self, i):
        return self.weights.get(i)


def _as_blocks(family):
    if hasattr(family, "blocks"):
        return list(family.blocks)
    return [
        item if hasattr(item, "weight_at") else _ExplicitBlock(item[0], item[1])
        for item in family
    ]


def weighted_schreier_norm(x: SparseVector, family):
    """Evaluate the truncated weighted norm against a list of weight blocks.

    `family` is either an object with a `.blocks` attribute or an iterable of
    (indices, weights) pairs / block objects exposing weight_at and min_index.
    """
    blocks = _as_blocks(family)
    float_mode = x.has_float_payload()
    best = x.inf_norm()
    if float_mode:
        best = float(best)
    for block in blocks:
        acc = 0
        hit = False
        for i, v in x.entries.items():
            w = block.weight_at(i)
            if w is None:
                continue
            hit = True
            acc += (float(w) * abs(v)) if float_mode else (w * abs(v))
        if not hit:
            continue
        val = block.min_index * acc
        if val > best:
            best = val
    return best
