"""Bit-exact scalar implementation of the EGC128 block cipher family.

The nonlinear layer F_core evaluates Rule-A at every bit position of a
branch word.  Because the interaction graph is circulant, the whole
layer reduces to four word rotations plus the Boolean algebra of
Rule-A's normal form, so one call transforms an entire branch at once
while remaining bit-identical to a per-vertex evaluation.

Feistel update for round r (branches L, R; round key RK_r):

    L' = R
    R' = L xor F_core(R) xor RK_r

Round keys come from a width-wide LFSR seeded with the high key half
(with 0 mapped to 1 to avoid the degenerate all-zero state), XORed with
the low key half and a per-round constant.
"""

from __future__ import annotations

from .params import Block, CipherParams, LfsrState, MasterKey, RoundKeySchedule

#: Rule-A lookup table indexed by x0 + 2*x1 + 4*x2 + 8*x3.
RULE_A_LUT = (1, 1, 1, 1, 0, 1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0)


def rule_a_eval(x0: int, x1: int, x2: int, x3: int) -> int:
    """Evaluate Rule-A on four single bits.

    Algebraic normal form: 1 + x2 + x0*x2 + x1*x2 + x1*x3 + x0*x2*x3
    over GF(2).  The induced truth table is 0x036F.
    """
    return (1 ^ x2 ^ (x0 & x2) ^ (x1 & x2) ^ (x1 & x3) ^ (x0 & x2 & x3)) & 1


def _read_vector(x: int, offset: int, width: int) -> int:
    """Word whose bit i equals bit (i + offset) mod width of x."""
    k = offset % width
    mask = (1 << width) - 1
    return ((x >> k) | (x << (width - k))) & mask


def rule_a_word(x0: int, x1: int, x2: int, x3: int, mask: int) -> int:
    """Rule-A applied laterally to every bit of four equal-width words."""
    # 1 ^ x2 ^ x0x2 ^ x1x2 ^ x1x3 ^ x0x2x3  ==  ~((x2 & ~(x0^x1^(x0&x3))) ^ (x1&x3))
    g = mask ^ x0 ^ x1 ^ (x0 & x3)
    return (mask ^ ((x2 & g) ^ (x1 & x3))) & mask


def f_core(branch: int, params: CipherParams) -> int:
    """Graph interaction layer: output bit i is Rule-A applied to
    (x_i, x_{i+o1}, x_{i+o2}, x_{i+o3}) with all indices mod width.

    Every output bit is computed from the unmodified input word.
    """
    w = params.branch_width
    if not 0 <= branch <= params.branch_mask:
        raise ValueError(f"branch value does not fit in {w} bits")
    o1, o2, o3 = params.offsets
    x1 = _read_vector(branch, o1, w)
    x2 = _read_vector(branch, o2, w)
    x3 = _read_vector(branch, o3, w)
    return rule_a_word(branch, x1, x2, x3, params.branch_mask)


def lfsr_init(k_high: int, params: CipherParams | None = None) -> LfsrState:
    """Initial LFSR state: the high key half, or 1 if that half is zero."""
    if params is not None:
        k_high &= params.branch_mask
    return k_high if k_high != 0 else 1


def lfsr_step(s: LfsrState, params: CipherParams | None = None) -> LfsrState:
    """One LFSR update: shift right, feedback bit enters at the top.

    The feedback is the XOR of tap bits {0, 1, 3, 4} of the input state.
    """
    p = params or _FULL
    fb = 0
    for t in p.lfsr_taps:
        fb ^= (s >> t) & 1
    return (s >> 1) | (fb << (p.branch_width - 1))


def lfsr_inverse_step(s: LfsrState, params: CipherParams | None = None) -> LfsrState:
    """Exact inverse of :func:`lfsr_step`."""
    p = params or _FULL
    w = p.branch_width
    # Output bit w-1 is the old feedback; the old bit 0 is recovered by
    # cancelling the taps that shifted down by one position.
    b0 = (s >> (w - 1)) & 1
    for t in p.lfsr_taps:
        if t >= 1:
            b0 ^= (s >> (t - 1)) & 1
    return ((s << 1) & p.branch_mask) | b0


def derive_round_keys(key: MasterKey, params: CipherParams) -> RoundKeySchedule:
    """Round keys RK_r = K_low xor S_r xor RC_r, advancing the LFSR once
    per round after each key is emitted."""
    if key.width != params.branch_width:
        raise ValueError("key width does not match cipher parameters")
    s = lfsr_init(key.high, params)
    keys = []
    for r in range(params.rounds):
        keys.append(key.low ^ s ^ params.round_constants[r])
        s = lfsr_step(s, params)
    return tuple(keys)


class Cipher:
    """An encrypt/decrypt pair for one parameter set.

    Instances are immutable after construction and safe to share across
    threads; all methods are pure functions of their arguments.
    """

    def __init__(self, params: CipherParams | None = None):
        self.params = params or CipherParams.full()

    def round_keys(self, key: MasterKey) -> RoundKeySchedule:
        return derive_round_keys(key, self.params)

    def _check(self, key: MasterKey, block: Block) -> None:
        if key.width != self.params.branch_width or block.width != self.params.branch_width:
            raise ValueError("key/block width does not match cipher parameters")

    def encrypt_block(self, key: MasterKey, pt: Block, rounds: int | None = None) -> Block:
        self._check(key, pt)
        p = self.params
        nr = p.rounds if rounds is None else rounds
        if not 0 <= nr <= p.rounds:
            raise ValueError("round override outside schedule length")
        rks = derive_round_keys(key, p)
        L, R = pt.left, pt.right
        for r in range(nr):
            L, R = R, L ^ f_core(R, p) ^ rks[r]
        return Block(L, R, p.branch_width)

    def decrypt_block(self, key: MasterKey, ct: Block, rounds: int | None = None) -> Block:
        self._check(key, ct)
        p = self.params
        nr = p.rounds if rounds is None else rounds
        if not 0 <= nr <= p.rounds:
            raise ValueError("round override outside schedule length")
        rks = derive_round_keys(key, p)
        L, R = ct.left, ct.right
        for r in range(nr - 1, -1, -1):
            R, L = L, R ^ f_core(L, p) ^ rks[r]
        return Block(L, R, p.branch_width)

    def encrypt_states(self, key: MasterKey, pt: Block) -> list[Block]:
        """All intermediate states: entry [r] is the state after round r
        (entry [0] is the plaintext)."""
        self._check(key, pt)
        p = self.params
        rks = derive_round_keys(key, p)
        L, R = pt.left, pt.right
        states = [Block(L, R, p.branch_width)]
        for r in range(p.rounds):
            L, R = R, L ^ f_core(R, p) ^ rks[r]
            states.append(Block(L, R, p.branch_width))
        return states


_FULL = CipherParams.full()
EGC128 = Cipher(_FULL)


def encrypt_block(key: MasterKey, pt: Block, params: CipherParams | None = None) -> Block:
    return Cipher(params).encrypt_block(key, pt)


def decrypt_block(key: MasterKey, ct: Block, params: CipherParams | None = None) -> Block:
    return Cipher(params).decrypt_block(key, ct)


def reduced_cipher(params: CipherParams) -> Cipher:
    """Structurally identical cipher at a reduced branch width."""
    return Cipher(params)


def encrypt_hex(key_hex: str, pt_hex: str, params: CipherParams | None = None) -> str:
    p = params or _FULL
    w = p.branch_width
    out = Cipher(p).encrypt_block(MasterKey.from_hex(key_hex, w), Block.from_hex(pt_hex, w))
    return out.hex()


def decrypt_hex(key_hex: str, ct_hex: str, params: CipherParams | None = None) -> str:
    p = params or _FULL
    w = p.branch_width
    out = Cipher(p).decrypt_block(MasterKey.from_hex(key_hex, w), Block.from_hex(ct_hex, w))
    return out.hex()
