"""Input bitstream generation for external statistical test suites.

Three plaintext regimes feed the fixed-key cipher:

* ``random_pt``     fresh uniform random 128-bit plaintexts;
* ``counter``       the block counter itself, X_i = E_K(i);
* ``nonce_counter`` a random 64-bit nonce in the high half and the
                    counter in the low half, X_i = E_K(nonce || i).

Ciphertext bits are emitted most-significant-first (block bit 127 down
to bit 0), either as ASCII '0'/'1' characters or packed binary.
Generation is streamed in bitsliced batches, so arbitrarily long files
use constant memory, and a run is a pure function of (mode, key, seed).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bitslice import BitslicedCipher, pack_words, random_lanes
from .harness import RngConfig
from .params import CipherParams, MasterKey

MODES = ("random_pt", "counter", "nonce_counter")
BLOCK_BITS = 128


@dataclass(frozen=True)
class NistStreamReport:
    path: Path
    mode: str
    format: str
    n_bits: int
    ones_count: int
    monobit_sigma: float       # (ones - n/2) / sqrt(n/4)
    nonce: int | None


def generate_nist_bitstream(mode: str, n_bits: int, key: MasterKey,
                            out: str | Path, cfg: RngConfig = RngConfig(),
                            fmt: str = "ascii",
                            start_counter: int = 0,
                            batch_blocks: int = 1 << 16) -> NistStreamReport:
    """Write an `n_bits`-symbol stream of ciphertext bits to `out`."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if fmt not in ("ascii", "binary"):
        raise ValueError(f"unknown format {fmt!r}")
    if n_bits < BLOCK_BITS or n_bits % BLOCK_BITS:
        raise ValueError("n_bits must be a positive multiple of 128")
    params = CipherParams.full()
    engine = BitslicedCipher(params)
    n_blocks = n_bits // BLOCK_BITS
    nonce = None
    if mode == "nonce_counter":
        nrng = cfg.generator("nist_nonce")
        nonce = int(nrng.integers(0, 1 << 32)) << 32 | int(nrng.integers(0, 1 << 32))

    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    ones = 0
    with open(out, "wb") as fh:
        done = 0
        batch_idx = 0
        while done < n_blocks:
            m = min(batch_blocks, n_blocks - done)
            m_pad = (m + 63) // 64 * 64
            words = m_pad // 64
            if mode == "random_pt":
                rng = cfg.generator("nist_pt", batch_idx)
                L = random_lanes(rng, 64, words)
                R = random_lanes(rng, 64, words)
            else:
                ctr = np.arange(start_counter + done,
                                start_counter + done + m_pad, dtype=np.uint64)
                R = pack_words(ctr, 64)
                if mode == "counter":
                    L = np.zeros((64, words), dtype=np.uint64)
                else:
                    lanes = np.zeros((64, words), dtype=np.uint64)
                    for b in range(64):
                        if (nonce >> b) & 1:
                            lanes[b] = np.uint64(0xFFFFFFFFFFFFFFFF)
                    L = lanes
            cL, cR = engine.encrypt(L, R, key)
            chunk_bits = _blocks_to_bits(cL, cR, m)
            ones += int(chunk_bits.sum())
            if fmt == "ascii":
                fh.write((chunk_bits + ord("0")).tobytes())
            else:
                fh.write(np.packbits(chunk_bits, bitorder="big").tobytes())
            done += m
            batch_idx += 1
    sigma = (ones - n_bits / 2) / (n_bits / 4) ** 0.5
    return NistStreamReport(out, mode, fmt, n_bits, ones, sigma, nonce)


def _blocks_to_bits(L: np.ndarray, R: np.ndarray, count: int) -> np.ndarray:
    """Per-block bit sequence, bit 127 first: L bits 63..0, R bits 63..0."""
    lb = _lanes_bits(L)[::-1]      # row 0 becomes bit 63
    rb = _lanes_bits(R)[::-1]
    seq = np.concatenate([lb, rb], axis=0)       # (128, n_pad) block-bit rows
    return np.ascontiguousarray(seq[:, :count].T).reshape(-1)


def _lanes_bits(lanes: np.ndarray) -> np.ndarray:
    width, words = lanes.shape
    return np.unpackbits(
        np.ascontiguousarray(lanes).view(np.uint8).reshape(width, words * 8),
        axis=1, bitorder="little",
    )


def monobit_sigma_bound(n_bits: int, sigmas: float = 3.0) -> float:
    """Allowed deviation of the ones count from n/2 at `sigmas` sigma."""
    return sigmas * (n_bits / 4) ** 0.5
