"""Bitstream generation: formats, bit order, determinism."""

import numpy as np
import pytest

from egc128.cipher import Cipher
from egc128.harness import RngConfig
from egc128.nist import generate_nist_bitstream, monobit_sigma_bound
from egc128.params import Block, MasterKey

KEY = MasterKey.from_hex("000102030405060708090a0b0c0d0e0f")
CFG = RngConfig(99)


def _expected_counter_bits(key, n_blocks, start=0):
    c = Cipher()
    out = []
    for i in range(start, start + n_blocks):
        ct = c.encrypt_block(key, Block.from_int(i))
        v = ct.to_int()
        out.append(f"{v:0128b}")
    return "".join(out)


def test_counter_mode_matches_scalar_cipher(tmp_path):
    path = tmp_path / "ctr.txt"
    rep = generate_nist_bitstream("counter", 128 * 5, KEY, path, CFG)
    assert path.read_text() == _expected_counter_bits(KEY, 5)
    assert rep.ones_count == _expected_counter_bits(KEY, 5).count("1")


def test_single_block_stream(tmp_path):
    path = tmp_path / "one.txt"
    rep = generate_nist_bitstream("counter", 128, KEY, path, CFG)
    assert rep.n_bits == 128
    assert len(path.read_text()) == 128


def test_counter_mode_deterministic(tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    generate_nist_bitstream("counter", 128 * 64, KEY, a, CFG)
    generate_nist_bitstream("counter", 128 * 64, KEY, b, CFG)
    assert a.read_bytes() == b.read_bytes()


def test_random_pt_mode_deterministic_per_seed(tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    c = tmp_path / "c.txt"
    generate_nist_bitstream("random_pt", 128 * 32, KEY, a, RngConfig(1))
    generate_nist_bitstream("random_pt", 128 * 32, KEY, b, RngConfig(1))
    generate_nist_bitstream("random_pt", 128 * 32, KEY, c, RngConfig(2))
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes() != c.read_bytes()


def test_ascii_alphabet_and_binary_packing(tmp_path):
    at = tmp_path / "a.txt"
    bt = tmp_path / "b.bin"
    generate_nist_bitstream("counter", 128 * 8, KEY, at, CFG)
    generate_nist_bitstream("counter", 128 * 8, KEY, bt, CFG, fmt="binary")
    text = at.read_text()
    assert set(text) <= {"0", "1"}
    raw = bt.read_bytes()
    assert len(raw) == 128 * 8 // 8
    unpacked = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="big")
    assert "".join(str(b) for b in unpacked) == text


def test_nonce_counter_mode(tmp_path):
    path = tmp_path / "n.txt"
    rep = generate_nist_bitstream("nonce_counter", 128 * 4, KEY, path, CFG)
    assert rep.nonce is not None
    c = Cipher()
    expected = ""
    for i in range(4):
        ct = c.encrypt_block(KEY, Block(rep.nonce, i))
        expected += f"{ct.to_int():0128b}"
    assert path.read_text() == expected


def test_monobit_on_moderate_stream(tmp_path):
    path = tmp_path / "m.txt"
    n = 128 * 8192          # about a million bits
    rep = generate_nist_bitstream("random_pt", n, KEY, path, CFG)
    assert abs(rep.ones_count - n / 2) < monobit_sigma_bound(n, 5)


def test_batching_is_invisible(tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    generate_nist_bitstream("counter", 128 * 300, KEY, a, CFG, batch_blocks=64)
    generate_nist_bitstream("counter", 128 * 300, KEY, b, CFG, batch_blocks=256)
    assert a.read_bytes() == b.read_bytes()


def test_validation_errors(tmp_path):
    with pytest.raises(ValueError):
        generate_nist_bitstream("counter", 100, KEY, tmp_path / "x", CFG)
    with pytest.raises(ValueError):
        generate_nist_bitstream("bogus", 128, KEY, tmp_path / "x", CFG)
    with pytest.raises(ValueError):
        generate_nist_bitstream("counter", 128, KEY, tmp_path / "x", CFG, fmt="hex")
