"""Bitsliced batch evaluation of the cipher for the statistical harness.

Layout: a batch of N samples is stored as one uint64 "lane" array per
state bit, shape (width, N/64); bit j of word w in lane b is bit b of
sample 64*w + j.  Every cipher operation (Rule-A, branch XOR, LFSR
update, round-constant injection) is bit-local, so the whole cipher
runs as vectorised word operations, 64 samples per machine word.

Results are bit-identical to the scalar implementation in
:mod:`egc128.cipher`; the test suite cross-checks the two routes.
"""

from __future__ import annotations

import numpy as np

from .cipher import derive_round_keys
from .params import CipherParams, MasterKey

_ONE = np.uint64(1)
_FULL = np.uint64(0xFFFFFFFFFFFFFFFF)


def pack_words(values: np.ndarray, width: int) -> np.ndarray:
    """Pack per-sample integers (N,) into bit lanes (width, N/64).

    N must be a multiple of 64.  Large batches are packed in chunks to
    bound the intermediate bit-matrix size.
    """
    values = np.asarray(values, dtype=np.uint64)
    n = values.shape[0]
    if n % 64:
        raise ValueError("sample count must be a multiple of 64")
    lanes = np.empty((width, n // 64), dtype=np.uint64)
    chunk = 1 << 18
    shifts = np.arange(width, dtype=np.uint64)[None, :]
    for lo in range(0, n, chunk):
        part = values[lo : lo + chunk]
        bits = ((part[:, None] >> shifts) & _ONE).astype(np.uint8)
        packed = np.ascontiguousarray(np.packbits(bits.T, axis=1, bitorder="little"))
        lanes[:, lo // 64 : (lo + part.shape[0]) // 64] = packed.view(np.uint64)
    return lanes


def unpack_words(lanes: np.ndarray, count: int | None = None) -> np.ndarray:
    """Inverse of :func:`pack_words`; returns (N,) uint64 sample values."""
    width, words = lanes.shape
    n = words * 64
    bits = np.unpackbits(
        np.ascontiguousarray(lanes).view(np.uint8).reshape(width, n // 8),
        axis=1, bitorder="little",
    )
    out = np.zeros(n, dtype=np.uint64)
    for b in range(width):
        out |= bits[b].astype(np.uint64) << np.uint64(b)
    return out if count is None else out[:count]


def random_lanes(rng: np.random.Generator, width: int, words: int) -> np.ndarray:
    """Uniform random lanes; equivalent to packing uniform random samples."""
    raw = rng.bytes(8 * width * words)
    return np.frombuffer(raw, dtype=np.uint64).reshape(width, words).copy()


def broadcast_word(value: int, width: int, words: int) -> np.ndarray:
    """Lanes in which every sample holds the same width-bit value."""
    lanes = np.zeros((width, words), dtype=np.uint64)
    for b in range(width):
        if (value >> b) & 1:
            lanes[b] = _FULL
    return lanes


def popcount_lanes(lanes: np.ndarray) -> int:
    return int(np.bitwise_count(lanes).sum())


def tail_mask(count: int, words: int) -> np.ndarray:
    """Per-word mask selecting the first `count` samples of a batch."""
    mask = np.full(words, _FULL, dtype=np.uint64)
    full_words, rem = divmod(count, 64)
    if full_words < words:
        mask[full_words] = np.uint64((1 << rem) - 1)
        mask[full_words + 1 :] = 0
    return mask


def _rule_a_lanes(x0, x1, x2, x3):
    return ~((x2 & ~(x0 ^ x1 ^ (x0 & x3))) ^ (x1 & x3))


class BitslicedCipher:
    """Batch encryption engine for one parameter set."""

    def __init__(self, params: CipherParams | None = None):
        self.params = params or CipherParams.full()

    def f_core(self, R: np.ndarray) -> np.ndarray:
        o1, o2, o3 = self.params.offsets
        w = self.params.branch_width
        x1 = np.roll(R, -(o1 % w), axis=0)
        x2 = np.roll(R, -(o2 % w), axis=0)
        x3 = np.roll(R, -(o3 % w), axis=0)
        return _rule_a_lanes(R, x1, x2, x3)

    def _lfsr_init(self, KH: np.ndarray) -> np.ndarray:
        S = KH.copy()
        nonzero = KH[0].copy()
        for b in range(1, self.params.branch_width):
            nonzero |= KH[b]
        S[0] |= ~nonzero
        return S

    def _lfsr_step(self, S: np.ndarray) -> np.ndarray:
        fb = S[self.params.lfsr_taps[0]].copy()
        for t in self.params.lfsr_taps[1:]:
            fb ^= S[t]
        S = np.roll(S, -1, axis=0)
        S[-1] = fb
        return S

    def encrypt(
        self,
        L: np.ndarray,
        R: np.ndarray,
        key: MasterKey | tuple[np.ndarray, np.ndarray],
        rounds: int | None = None,
        snapshot_rounds=None,
    ):
        """Encrypt a batch in place of (L, R) lanes.

        `key` is either a scalar :class:`MasterKey` shared by every
        sample (the schedule is then precomputed once) or a pair of
        (high, low) lane arrays holding one key per sample.

        Returns (L, R) lanes, or a dict {round: (L, R)} when
        `snapshot_rounds` is given (round 0 is the input state).
        """
        p = self.params
        nr = p.rounds if rounds is None else rounds
        if not 0 <= nr <= p.rounds:
            raise ValueError("round override outside schedule length")
        L = L.copy()
        R = R.copy()
        words = L.shape[1]

        scalar_rks = None
        S = KL = None
        if isinstance(key, MasterKey):
            scalar_rks = derive_round_keys(key, p)
        else:
            KH, KL = key
            S = self._lfsr_init(KH)

        rc_bits = [
            [b for b in range(p.branch_width) if (p.round_constants[r] >> b) & 1]
            for r in range(nr)
        ]

        snaps = {}
        want = set(snapshot_rounds) if snapshot_rounds is not None else None
        if want is not None and 0 in want:
            snaps[0] = (L.copy(), R.copy())
        for r in range(nr):
            F = self.f_core(R)
            newR = L ^ F
            if scalar_rks is not None:
                rk = scalar_rks[r]
                for b in range(p.branch_width):
                    if (rk >> b) & 1:
                        newR[b] = ~newR[b]
            else:
                newR ^= KL ^ S
                for b in rc_bits[r]:
                    newR[b] = ~newR[b]
                S = self._lfsr_step(S)
            L, R = R, newR
            if want is not None and (r + 1) in want:
                snaps[r + 1] = (L.copy(), R.copy())
        if want is not None:
            return snaps
        return L, R
