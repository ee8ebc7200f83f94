"""Truncated differential/linear trail bounds over the Feistel structure.

In the truncated model a bit position is only "active" or "inactive".
A vertex of the interaction layer activates when any bit of its
read-set (itself plus its graph inputs) is active, active vertices
always emit an active output, and the Feistel coupling ORs the branch
activity together:

    s_F(r, i) = OR of R_r over read-set(i)
    L_{r+1}   = R_r
    R_{r+1}   = L_r OR s_F(r, .)

On binary activity variables these rules make the whole trace a
deterministic function of the starting pattern, and OR-propagation is
monotone in the start, so the minimum total activation over admissible
starts is attained on single-bit-per-branch patterns.  That turns the
trail-bound search into a small enumeration whose optima match an exact
integer-programming solve of the same constraint system (the LP file
writer in :mod:`egc128.lpmodel` emits that system for third-party
verification).

Boundary conditions: differential trails need at least one active bit
in each input branch; linear trails need at least one active input bit
overall plus a nontrivial output.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log2

from .boolfun import ddt as _ddt
from .graphs import GraphTopology
from .params import RULE_A_TRUTH_TABLE, scaled_offsets

#: Worst-case differential weight contributed by one active vertex.
W_NODE = -log2(3 / 4)

MODES = ("differential", "linear")


def _reader_masks(g: GraphTopology) -> list[int]:
    """mask[j] = vertices whose activation is triggered by bit j
    (vertex j itself plus every vertex reading j)."""
    masks = [1 << j for j in range(g.n)]
    for i, reads in enumerate(g.read_sets):
        for j in reads:
            masks[j] |= 1 << i
    return masks


@dataclass(frozen=True)
class ActivationTrace:
    """Full OR-propagation trace from one starting pattern."""

    n: int
    l_activity: tuple[int, ...]      # L_0 .. L_R as bitmasks
    r_activity: tuple[int, ...]      # R_0 .. R_R
    sf_activity: tuple[int, ...]     # s_F(0,.) .. s_F(R-1,.)
    round_counts: tuple[int, ...]
    total_active: int


def propagate_activation(l0: int, r0: int, rounds: int, g: GraphTopology) -> ActivationTrace:
    """Deterministic OR-propagation of (L_0, R_0) activity."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    masks = _reader_masks(g)
    full = (1 << g.n) - 1
    L, R = l0 & full, r0 & full
    ls, rs, sfs, counts = [L], [R], [], []
    for _ in range(rounds):
        sf = 0
        rem = R
        while rem:
            j = (rem & -rem).bit_length() - 1
            sf |= masks[j]
            rem &= rem - 1
        sfs.append(sf)
        counts.append(sf.bit_count())
        L, R = R, L | sf
        ls.append(L)
        rs.append(R)
    return ActivationTrace(g.n, tuple(ls), tuple(rs), tuple(sfs),
                           tuple(counts), sum(counts))


@dataclass(frozen=True)
class TrailBoundReport:
    mode: str
    rounds: int
    min_active: int
    weight_bits: float | None           # differential mode only
    start_left: int
    start_right: int
    round_counts: tuple[int, ...]


def _candidate_starts(mode: str, g: GraphTopology) -> list[tuple[int, int]]:
    # Monotonicity reduces the search to single-bit-per-branch starts;
    # vertex transitivity of circulant graphs then fixes one bit at
    # position 0.
    circulant = g.circulant_offsets is not None
    if mode == "differential":
        if circulant:
            return [(1, 1 << b) for b in range(g.n)]
        return [(1 << a, 1 << b) for a in range(g.n) for b in range(g.n)]
    if mode == "linear":
        if circulant:
            return [(1, 0), (0, 1)]
        return [(1 << a, 0) for a in range(g.n)] + [(0, 1 << b) for b in range(g.n)]
    raise ValueError(f"unknown mode {mode!r}")


def _start_key(l0: int, r0: int) -> tuple:
    # Tie-break among equally optimal starts: lexicographically smallest
    # (branch, bit offset), i.e. prefer a left-branch bit, then low bits.
    return (0 if l0 else 1, l0.bit_length(), r0.bit_length())


def min_active(mode: str, rounds: int, g: GraphTopology,
               transpose: bool = False) -> TrailBoundReport:
    """Minimum cumulative active-vertex count over admissible starts.

    `transpose` propagates on the reversed read relation instead (the
    mask-propagation dual); the reference bounds use the forward one.
    """
    graph = g.transposed() if transpose else g
    best_trace = None
    best_key = None
    best_l0 = best_r0 = 0
    for l0, r0 in _candidate_starts(mode, graph):
        trace = propagate_activation(l0, r0, rounds, graph)
        key = (trace.total_active, *_start_key(l0, r0))
        if best_key is None or key < best_key:
            best_trace, best_key, best_l0, best_r0 = trace, key, l0, r0
    weight = best_trace.total_active * W_NODE if mode == "differential" else None
    return TrailBoundReport(mode, rounds, best_trace.total_active, weight,
                            best_l0, best_r0, best_trace.round_counts)


@dataclass(frozen=True)
class BoundSeries:
    mode: str
    rounds: tuple[int, ...]
    min_active: tuple[int, ...]
    growth_rates: tuple[float, ...]     # ratio of consecutive minima
    weights_bits: tuple[float, ...] | None


def bound_series(mode: str, max_rounds: int, g: GraphTopology,
                 transpose: bool = False) -> BoundSeries:
    counts = [min_active(mode, r, g, transpose).min_active
              for r in range(1, max_rounds + 1)]
    growth = tuple(counts[i] / counts[i - 1] if counts[i - 1] else float("inf")
                   for i in range(1, len(counts)))
    weights = None
    if mode == "differential":
        weights = tuple(differential_weight(c) for c in counts)
    return BoundSeries(mode, tuple(range(1, max_rounds + 1)), tuple(counts),
                       growth, weights)


def differential_weight(count: int) -> float:
    """Total weight in bits of `count` active vertices at worst-case
    per-vertex probability 3/4."""
    if count < 0:
        raise ValueError("count must be >= 0")
    return count * W_NODE


def extrapolate_full(value: float, mode: str, n: int = 64,
                     saturated_rounds: int = 10) -> float:
    """Extend a proven half-depth bound to the full 20-round cipher.

    Differential mode: the proven 10-round weight plus ten fully
    saturated rounds of n active vertices each.  Linear mode: five
    independent 4-round segments, each contributing the proven 4-round
    active count (pass that count as `value`).
    """
    if mode == "differential":
        return value + saturated_rounds * n * W_NODE
    if mode == "linear":
        return 5 * value
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class SingleLayerReport:
    width: int
    offsets: tuple[int, int, int]
    min_weight_bits: float
    optimal_delta: int
    restricted_to_hamming: int | None
    n_deltas_examined: int


def single_layer_min_weight(width: int,
                            offsets: tuple[int, int, int] | None = None,
                            exhaustive_limit: int = 1 << 20,
                            max_hamming: int = 4) -> SingleLayerReport:
    """Exact minimum differential weight of one interaction layer.

    Every nonzero input difference fixes a 4-bit local difference at
    each vertex; the vertex then picks the cheapest admissible output
    difference from the Rule-A DDT, subject to the global output
    difference being nonzero.  Widths whose difference space exceeds
    `exhaustive_limit` are scanned over differences of Hamming weight
    at most `max_hamming` (the optimum sits at single-bit differences,
    and the restriction is recorded in the report).
    """
    if width > 32:
        raise ValueError("single-layer search supports widths up to 32")
    if offsets is None:
        offsets = scaled_offsets(width)
    table = _ddt(RULE_A_TRUTH_TABLE)
    base_cost = [0.0] * 16
    one_cost = [None] * 16
    for a in range(16):
        costs = {b: -log2(table[a][b] / 16) for b in range(2) if table[a][b]}
        base_cost[a] = min(costs.values())
        one_cost[a] = costs.get(1)

    if (1 << width) - 1 <= exhaustive_limit:
        deltas = range(1, 1 << width)
        restricted = None
    else:
        deltas = _bounded_weight_deltas(width, max_hamming)
        restricted = max_hamming

    offs = [o % width for o in offsets]
    best = None
    best_delta = 0
    examined = 0
    for delta in deltas:
        examined += 1
        total = 0.0
        flip_penalty = None
        d2 = delta | (delta << width)      # wraparound-free shifts
        for i in range(width):
            a = ((delta >> i) & 1) \
                | (((d2 >> (i + offs[0])) & 1) << 1) \
                | (((d2 >> (i + offs[1])) & 1) << 2) \
                | (((d2 >> (i + offs[2])) & 1) << 3)
            total += base_cost[a]
            if one_cost[a] is not None:
                extra = one_cost[a] - base_cost[a]
                if flip_penalty is None or extra < flip_penalty:
                    flip_penalty = extra
        if flip_penalty is None:
            continue                       # no nonzero output reachable
        total += flip_penalty
        if best is None or total < best:
            best, best_delta = total, delta
    return SingleLayerReport(width, tuple(offsets), best, best_delta,
                             restricted, examined)


def _bounded_weight_deltas(width: int, max_hamming: int):
    from itertools import combinations
    for hw in range(1, max_hamming + 1):
        for bits in combinations(range(width), hw):
            yield sum(1 << b for b in bits)
