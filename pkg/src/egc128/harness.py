"""Randomised empirical analyses of the full and reduced ciphers.

Every operation takes an :class:`RngConfig`; a given master seed fully
determines the report, independent of worker count, because each unit
of work draws from its own derived substream and results merge through
associative reductions (sums, maxima, counts).
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import log2

import numpy as np

from .bitslice import (
    BitslicedCipher,
    pack_words,
    popcount_lanes,
    random_lanes,
    tail_mask,
    unpack_words,
)
from .cipher import lfsr_step
from .params import Block, CipherParams, MasterKey

_FULL_PARAMS = CipherParams.full()
_U1 = np.uint64(1)


@dataclass(frozen=True)
class RngConfig:
    """Master seed plus the substream-splitting rule.

    Substreams are derived from SHA-256 of the master seed and a tag
    tuple, so any unit of work can be computed in isolation and in any
    order without changing its random draws.
    """

    master_seed: int = 0

    def generator(self, *tags) -> np.random.Generator:
        text = repr((self.master_seed,) + tags).encode()
        digest = hashlib.sha256(text).digest()
        return np.random.default_rng(int.from_bytes(digest[:16], "little"))


def _random_words(rng: np.random.Generator, n: int) -> np.ndarray:
    return np.frombuffer(rng.bytes(8 * n), dtype=np.uint64).copy()


def _pad64(n: int) -> int:
    return (n + 63) // 64 * 64


def _run_units(worker, units, threads: int):
    if threads <= 1:
        return [worker(u) for u in units]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, units))


# ---------------------------------------------------------------------------
# Avalanche
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AvalancheReport:
    pairs: int
    samples_per_round: int
    mean_hd: tuple[float, ...]        # index r = state after round r
    fraction: tuple[float, ...]


def avalanche_profile(pairs: int, rounds: int = 20,
                      cfg: RngConfig = RngConfig()) -> AvalancheReport:
    """Mean Hamming distance between the states of P and P xor e_i,
    over `pairs` random (key, plaintext) pairs and all 128 bit flips."""
    if pairs < 1:
        raise ValueError("pairs must be >= 1")
    rng = cfg.generator("avalanche", pairs, rounds)
    kh = _random_words(rng, pairs)
    kl = _random_words(rng, pairs)
    lw = _random_words(rng, pairs)
    rw = _random_words(rng, pairs)

    block = 2 * _FULL_PARAMS.branch_width
    n = pairs * block
    pair_idx = np.repeat(np.arange(pairs), block)
    bitpos = np.tile(np.arange(block), pairs)
    fl, fr = lw[pair_idx].copy(), rw[pair_idx].copy()
    hi = bitpos >= 64
    fl[hi] ^= _U1 << (bitpos[hi] - 64).astype(np.uint64)
    fr[~hi] ^= _U1 << bitpos[~hi].astype(np.uint64)

    pad = _pad64(n)
    def padded(a):
        out = np.zeros(pad, dtype=np.uint64)
        out[:n] = a
        return out

    engine = BitslicedCipher(_FULL_PARAMS)
    key = (pack_words(padded(kh[pair_idx]), 64), pack_words(padded(kl[pair_idx]), 64))
    snaps = set(range(rounds + 1))
    base = engine.encrypt(pack_words(padded(lw[pair_idx]), 64),
                          pack_words(padded(rw[pair_idx]), 64), key,
                          rounds=rounds, snapshot_rounds=snaps)
    flip = engine.encrypt(pack_words(padded(fl), 64), pack_words(padded(fr), 64),
                          key, rounds=rounds, snapshot_rounds=snaps)
    mask = tail_mask(n, pad // 64)
    means = []
    for r in range(rounds + 1):
        dl = (base[r][0] ^ flip[r][0]) & mask
        dr = (base[r][1] ^ flip[r][1]) & mask
        means.append((popcount_lanes(dl) + popcount_lanes(dr)) / n)
    return AvalancheReport(pairs, n, tuple(means),
                           tuple(m / block for m in means))


# ---------------------------------------------------------------------------
# Strict avalanche criterion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SacReport:
    samples_per_bit: int
    matrix: np.ndarray                # (input bit, output bit) flip rates
    mean: float
    std: float
    minimum: float
    maximum: float
    fraction_tight: float             # entries in [0.45, 0.55]
    fraction_loose: float             # entries in [0.40, 0.60]
    per_input_bit_means: tuple[float, ...]
    per_input_mean_std: float


def sac_matrix(samples_per_bit: int, cfg: RngConfig = RngConfig(),
               threads: int = 1) -> SacReport:
    """Empirical flip probability of every output bit for every single
    input-bit flip, fresh random (key, plaintext) samples per input bit."""
    if samples_per_bit < 100:
        raise ValueError("need at least 100 samples per bit")
    n = samples_per_bit
    pad = _pad64(n)
    words = pad // 64
    mask = tail_mask(n, words)
    engine = BitslicedCipher(_FULL_PARAMS)

    def one_bit(i: int) -> np.ndarray:
        rng = cfg.generator("sac", samples_per_bit, i)
        KH = random_lanes(rng, 64, words)
        KL = random_lanes(rng, 64, words)
        L = random_lanes(rng, 64, words)
        R = random_lanes(rng, 64, words)
        fL, fR = L.copy(), R.copy()
        if i >= 64:
            fL[i - 64] = ~fL[i - 64]
        else:
            fR[i] = ~fR[i]
        bL, bR = engine.encrypt(L, R, (KH, KL))
        qL, qR = engine.encrypt(fL, fR, (KH, KL))
        dL, dR = (bL ^ qL) & mask, (bR ^ qR) & mask
        return np.concatenate([
            np.bitwise_count(dR).sum(axis=1),
            np.bitwise_count(dL).sum(axis=1),
        ]).astype(np.int64)

    counts = np.stack(_run_units(one_bit, range(128), threads))
    P = counts / n
    per_input = P.mean(axis=1)
    return SacReport(
        samples_per_bit=n,
        matrix=P,
        mean=float(P.mean()),
        std=float(P.std()),
        minimum=float(P.min()),
        maximum=float(P.max()),
        fraction_tight=float(((P >= 0.45) & (P <= 0.55)).mean()),
        fraction_loose=float(((P >= 0.40) & (P <= 0.60)).mean()),
        per_input_bit_means=tuple(float(v) for v in per_input),
        per_input_mean_std=float(per_input.std()),
    )


# ---------------------------------------------------------------------------
# Bit independence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BicReport:
    samples: int
    max_abs_correlation: float
    mean_abs_correlation: float
    fraction_above_0p05: float


def bic_correlations(samples: int, cfg: RngConfig = RngConfig()) -> BicReport:
    """Pairwise correlations among output-difference bits under random
    single-bit input differences."""
    if samples < 1000:
        raise ValueError("need at least 1000 samples")
    rng = cfg.generator("bic", samples)
    n = samples
    pad = _pad64(n)
    kh, kl = _random_words(rng, pad), _random_words(rng, pad)
    lw, rw = _random_words(rng, pad), _random_words(rng, pad)
    bitpos = rng.integers(0, 128, pad)
    fl, fr = lw.copy(), rw.copy()
    hi = bitpos >= 64
    fl[hi] ^= _U1 << (bitpos[hi] - 64).astype(np.uint64)
    fr[~hi] ^= _U1 << bitpos[~hi].astype(np.uint64)
    engine = BitslicedCipher(_FULL_PARAMS)
    key = (pack_words(kh, 64), pack_words(kl, 64))
    bL, bR = engine.encrypt(pack_words(lw, 64), pack_words(rw, 64), key)
    qL, qR = engine.encrypt(pack_words(fl, 64), pack_words(fr, 64), key)
    X = np.concatenate([_lanes_to_bits(bR ^ qR), _lanes_to_bits(bL ^ qL)])[:, :n]
    X = X.astype(np.float64).T            # (samples, 128)
    Xc = X - X.mean(axis=0)
    sd = Xc.std(axis=0)
    sd[sd == 0] = 1.0
    C = (Xc.T @ Xc) / (n * np.outer(sd, sd))
    off = C[np.triu_indices(128, 1)]
    return BicReport(
        samples=n,
        max_abs_correlation=float(np.abs(off).max()),
        mean_abs_correlation=float(np.abs(off).mean()),
        fraction_above_0p05=float((np.abs(off) > 0.05).mean()),
    )


def _lanes_to_bits(lanes: np.ndarray) -> np.ndarray:
    width, words = lanes.shape
    return np.unpackbits(
        np.ascontiguousarray(lanes).view(np.uint8).reshape(width, words * 8),
        axis=1, bitorder="little",
    )


# ---------------------------------------------------------------------------
# Empirical maximum differential probability
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DpReport:
    delta: str
    rounds: int
    samples: int
    max_count: int
    max_probability: float
    weight_bits: float
    distinct_output_diffs: int


def empirical_max_dp(delta: Block, rounds: int, samples: int,
                     cfg: RngConfig = RngConfig()) -> DpReport:
    """Most frequent output difference over random plaintext pairs with
    fixed input difference, fresh random key per sample."""
    if delta.to_int() == 0:
        raise ValueError("input difference must be nonzero")
    rng = cfg.generator("empirical_dp", delta.to_int(), rounds, samples)
    n = samples
    pad = _pad64(n)
    kh, kl = _random_words(rng, pad), _random_words(rng, pad)
    lw, rw = _random_words(rng, pad), _random_words(rng, pad)
    engine = BitslicedCipher(_FULL_PARAMS)
    key = (pack_words(kh, 64), pack_words(kl, 64))
    bL, bR = engine.encrypt(pack_words(lw, 64), pack_words(rw, 64), key, rounds=rounds)
    qL, qR = engine.encrypt(pack_words(lw ^ np.uint64(delta.left), 64),
                            pack_words(rw ^ np.uint64(delta.right), 64),
                            key, rounds=rounds)
    dl = unpack_words(bL ^ qL, n)
    dr = unpack_words(bR ^ qR, n)
    diffs = np.stack([dl, dr], axis=1)
    _, counts = np.unique(diffs, axis=0, return_counts=True)
    max_count = int(counts.max())
    return DpReport(
        delta=delta.hex(),
        rounds=rounds,
        samples=n,
        max_count=max_count,
        max_probability=max_count / n,
        weight_bits=-log2(max_count / n),
        distinct_output_diffs=int(len(counts)),
    )


# ---------------------------------------------------------------------------
# Related-key round-key differences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RoundHwStats:
    round: int
    mean: float
    std: float
    minimum: int
    maximum: int
    zero_count: int


@dataclass(frozen=True)
class RelatedKeyReport:
    n_diffs: int
    rounds: int
    per_round: tuple[RoundHwStats, ...]
    overall_mean: float
    total_zero_count: int
    case1_count: int                   # high-half difference nonzero
    case2_count: int                   # difference confined to low half


def related_key_scan(n_diffs: int, cfg: RngConfig = RngConfig(),
                     rounds: int = 20) -> RelatedKeyReport:
    """Round-key differences for random nonzero master-key differences.

    The round constants cancel, so the difference at round r is the low
    key-half difference XOR the r-step LFSR image of the high half (the
    step map is linear and fixes 0, which covers the case of a
    difference confined to the low half).
    """
    if n_diffs < 1:
        raise ValueError("n_diffs must be >= 1")
    rng = cfg.generator("related_key", n_diffs, rounds)
    hw = np.empty((n_diffs, rounds), dtype=np.int64)
    case1 = 0
    for t in range(n_diffs):
        dk_high = int(rng.integers(0, 1 << 32)) << 32 | int(rng.integers(0, 1 << 32))
        dk_low = int(rng.integers(0, 1 << 32)) << 32 | int(rng.integers(0, 1 << 32))
        if dk_high == 0 and dk_low == 0:
            dk_low = 1
        if dk_high != 0:
            case1 += 1
        d = dk_high
        for r in range(rounds):
            hw[t, r] = (dk_low ^ d).bit_count()
            d = lfsr_step(d, _FULL_PARAMS)
    per_round = tuple(
        RoundHwStats(
            round=r,
            mean=float(hw[:, r].mean()),
            std=float(hw[:, r].std()),
            minimum=int(hw[:, r].min()),
            maximum=int(hw[:, r].max()),
            zero_count=int((hw[:, r] == 0).sum()),
        )
        for r in range(rounds)
    )
    return RelatedKeyReport(
        n_diffs=n_diffs,
        rounds=rounds,
        per_round=per_round,
        overall_mean=float(hw.mean()),
        total_zero_count=int((hw == 0).sum()),
        case1_count=case1,
        case2_count=n_diffs - case1,
    )


def round_key_difference(dk: MasterKey, rounds: int = 20) -> list[int]:
    """Exact per-round round-key differences for one key difference."""
    d = dk.high
    out = []
    for _ in range(rounds):
        out.append(dk.low ^ d)
        d = lfsr_step(d, _FULL_PARAMS)
    return out


# ---------------------------------------------------------------------------
# Invariant affine subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubspaceTestReport:
    dims: tuple[int, ...]
    trials_per_dim: int
    invariants_found: int
    invariant_examples: tuple[tuple[int, ...], ...]
    total_evaluations: int


def _fcore_vec(values: np.ndarray) -> np.ndarray:
    """Vectorised 64-bit interaction layer on an array of branch words."""
    x = values
    def rot(v, k):
        k = np.uint64(k % 64)
        return (v >> k) | (v << (np.uint64(64) - k))
    x1, x2, x3 = rot(x, 63), rot(x, 1), rot(x, 16)
    g = ~(x ^ x1 ^ (x & x3))
    return ~((x2 & g) ^ (x1 & x3))


def invariant_subspace_search(dims, trials_per_dim: int,
                              cfg: RngConfig = RngConfig(),
                              map_fn=None, width: int = 64,
                              max_points: int = 4096) -> SubspaceTestReport:
    """Test random affine subspaces V + c for invariance under the
    interaction layer: the subspace passes only if every sampled coset
    point maps into a single coset of V.

    `map_fn` substitutes another vectorised map over uint64 arrays
    (the identity map serves as the positive control)."""
    dims = tuple(sorted(dims))
    if any(d < 1 or d > 16 for d in dims):
        raise ValueError("supported subspace dimensions are 1..16")
    fn = map_fn if map_fn is not None else _fcore_vec
    mask = np.uint64((1 << width) - 1)
    found = 0
    examples = []
    evals = 0
    for k in dims:
        for trial in range(trials_per_dim):
            rng = cfg.generator("subspace", k, trial)
            basis = _random_basis(rng, k, width)
            offset = np.uint64(int(rng.integers(0, 1 << 32)) << 32
                               | int(rng.integers(0, 1 << 32))) & mask
            n_pts = min(1 << k, max_points)
            if 1 << k <= max_points:
                sel = np.arange(n_pts, dtype=np.uint64)
            else:
                sel = rng.integers(0, 1 << k, n_pts).astype(np.uint64)
            pts = np.full(n_pts, offset, dtype=np.uint64)
            for t, vec in enumerate(basis):
                chosen = ((sel >> np.uint64(t)) & _U1).astype(bool)
                pts ^= np.where(chosen, np.uint64(vec), np.uint64(0))
            images = fn(pts) & mask
            evals += n_pts
            diffs = images ^ images[0]
            # Reduce from the highest pivot down: clearing a high pivot
            # may set lower bits, which later steps then absorb.
            for vec in sorted(basis, reverse=True):
                pivot = np.uint64(vec.bit_length() - 1)
                hit = ((diffs >> pivot) & _U1).astype(bool)
                diffs ^= np.where(hit, np.uint64(vec), np.uint64(0))
            if not diffs.any():
                found += 1
                examples.append(tuple(int(v) for v in basis))
    return SubspaceTestReport(dims, trials_per_dim, found,
                              tuple(examples[:8]), evals)


def _random_basis(rng: np.random.Generator, k: int, width: int) -> list[int]:
    """k linearly independent words kept in row-echelon form (each has a
    unique leading bit), which makes coset-membership reduction cheap."""
    echelon: dict[int, int] = {}
    raw: list[int] = []
    while len(raw) < k:
        v = int(rng.integers(0, 1 << 32)) << 32 | int(rng.integers(0, 1 << 32))
        v &= (1 << width) - 1
        w = v
        while w:
            top = w.bit_length() - 1
            if top in echelon:
                w ^= echelon[top]
            else:
                break
        if w == 0:
            continue
        echelon[w.bit_length() - 1] = w
        raw.append(w)
    return sorted(echelon.values())


# ---------------------------------------------------------------------------
# Reduced-cipher zero-differential scan
# ---------------------------------------------------------------------------

REDUCED_SCAN_PARAMS = CipherParams.reduced(16, (-1, 1, 4))

#: Input differences of the standard scan: single bits at the branch
#: boundaries and interior, plus adjacent pairs within and across the
#: branch boundary and around the block wraparound (12 differences,
#: Hamming weight <= 2, on the 32-bit reduced block).
STANDARD_SCAN_DELTAS = (
    0x00000001, 0x00000002, 0x00000100, 0x00008000,
    0x00010000, 0x00020000, 0x01000000, 0x80000000,
    0x00000003, 0x00018000, 0x00030000, 0x80000001,
)
STANDARD_SCAN_ROUNDS = (2, 3, 4)


def standard_zero_diff_combos() -> list[tuple[Block, int]]:
    return [(Block.from_int(d, 16), r)
            for d in STANDARD_SCAN_DELTAS for r in STANDARD_SCAN_ROUNDS]


@dataclass(frozen=True)
class ZeroDiffReport:
    delta: str
    rounds: int
    samples: int
    mode: str
    zero_output_hits: int
    single_bit_output_hits: int | None   # only checked at rounds 2 and 3
    key: str


def reduced_zero_diff_scan(delta: Block, rounds: int,
                           samples: int | None = 1 << 24,
                           cfg: RngConfig = RngConfig(),
                           key: MasterKey | None = None,
                           exhaustive: bool = False,
                           chunk: int = 1 << 22) -> ZeroDiffReport:
    """Count plaintext pairs with zero (and, at rounds 2-3, single-bit)
    output difference on the reduced 32-bit cipher under a fixed key.

    Sampled mode draws `samples` random plaintexts; exhaustive mode
    sweeps all 2^32 plaintexts in counter order.  `rounds=0` is a
    harness self-check: the output difference then equals the input
    difference on every pair."""
    p = REDUCED_SCAN_PARAMS
    if delta.width != p.branch_width:
        raise ValueError("difference must be a 16-bit-branch block")
    if delta.to_int() == 0:
        raise ValueError("input difference must be nonzero")
    if rounds not in (0, 2, 3, 4):
        raise ValueError("supported round counts are 0 (self-check), 2, 3, 4")
    if key is None:
        krng = cfg.generator("zero_diff_key")
        key = MasterKey(int(krng.integers(1, 1 << 16)),
                        int(krng.integers(0, 1 << 16)), 16)
    engine = BitslicedCipher(p)
    check_hw1 = rounds in (0, 2, 3)
    total = 1 << 32 if exhaustive else samples
    zero_hits = 0
    hw1_hits = 0
    done = 0
    chunk_idx = 0
    while done < total:
        m = min(chunk, total - done)
        m_pad = _pad64(m)
        words = m_pad // 64
        if exhaustive:
            vals = (np.arange(done, done + m_pad, dtype=np.uint64))
            L = pack_words(vals >> np.uint64(16) & np.uint64(0xFFFF), 16)
            R = pack_words(vals & np.uint64(0xFFFF), 16)
        else:
            rng = cfg.generator("zero_diff", delta.to_int(), rounds, chunk_idx)
            L = random_lanes(rng, 16, words)
            R = random_lanes(rng, 16, words)
        fL, fR = L.copy(), R.copy()
        for b in range(16):
            if (delta.left >> b) & 1:
                fL[b] = ~fL[b]
            if (delta.right >> b) & 1:
                fR[b] = ~fR[b]
        bL, bR = engine.encrypt(L, R, key, rounds=rounds)
        qL, qR = engine.encrypt(fL, fR, key, rounds=rounds)
        dL, dR = bL ^ qL, bR ^ qR
        c0 = np.zeros(words, dtype=np.uint64)
        c1 = np.zeros(words, dtype=np.uint64)
        for lane in list(dL) + list(dR):
            carry = c0 & lane
            c0 ^= lane
            c1 |= carry
        valid = tail_mask(m, words)
        zero_hits += int(np.bitwise_count(~(c0 | c1) & valid).sum())
        if check_hw1:
            hw1_hits += int(np.bitwise_count(c0 & ~c1 & valid).sum())
        done += m
        chunk_idx += 1
    return ZeroDiffReport(
        delta=delta.hex(),
        rounds=rounds,
        samples=total,
        mode="exhaustive" if exhaustive else "sampled",
        zero_output_hits=zero_hits,
        single_bit_output_hits=hw1_hits if check_hw1 else None,
        key=key.hex(),
    )


def zero_diff_scan_all(samples: int = 1 << 24, cfg: RngConfig = RngConfig(),
                       threads: int = 1) -> list[ZeroDiffReport]:
    """The standard 36-combination scan (12 differences x rounds 2-4)."""
    combos = standard_zero_diff_combos()
    worker = lambda c: reduced_zero_diff_scan(c[0], c[1], samples, cfg)
    return _run_units(worker, combos, threads)


# ---------------------------------------------------------------------------
# Truncated coverage
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverageReport:
    pairs: int
    checkpoints: tuple[int, ...]
    never_active_counts: tuple[int, ...]
    trials_to_full_coverage: tuple[int | None, ...]


def truncated_coverage_scan(pairs: int, checkpoints=(5, 10, 15, 18, 20),
                            cfg: RngConfig = RngConfig()) -> CoverageReport:
    """Which state-difference bits ever activate at the checkpoint
    rounds across random single-bit differential pairs, and how many
    trials it takes to see every bit active at least once."""
    if pairs < 100:
        raise ValueError("need at least 100 pairs")
    checkpoints = tuple(sorted(checkpoints))
    rng = cfg.generator("coverage", pairs, checkpoints)
    n = pairs
    pad = _pad64(n)
    kh, kl = _random_words(rng, pad), _random_words(rng, pad)
    lw, rw = _random_words(rng, pad), _random_words(rng, pad)
    bitpos = rng.integers(0, 128, pad)
    fl, fr = lw.copy(), rw.copy()
    hi = bitpos >= 64
    fl[hi] ^= _U1 << (bitpos[hi] - 64).astype(np.uint64)
    fr[~hi] ^= _U1 << bitpos[~hi].astype(np.uint64)
    engine = BitslicedCipher(_FULL_PARAMS)
    key = (pack_words(kh, 64), pack_words(kl, 64))
    snaps = set(checkpoints)
    base = engine.encrypt(pack_words(lw, 64), pack_words(rw, 64), key,
                          snapshot_rounds=snaps)
    flip = engine.encrypt(pack_words(fl, 64), pack_words(fr, 64), key,
                          snapshot_rounds=snaps)
    never = []
    cover = []
    for r in checkpoints:
        dl = base[r][0] ^ flip[r][0]
        dr = base[r][1] ^ flip[r][1]
        bits = np.concatenate([_lanes_to_bits(dr), _lanes_to_bits(dl)])[:, :n]
        active_any = bits.any(axis=1)
        never.append(int((~active_any).sum()))
        seen = np.logical_or.accumulate(bits.astype(bool), axis=1)
        complete = seen.all(axis=0)
        idx = np.nonzero(complete)[0]
        cover.append(int(idx[0]) + 1 if len(idx) else None)
    return CoverageReport(pairs, checkpoints, tuple(never), tuple(cover))
