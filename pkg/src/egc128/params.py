"""Parameter and state types for the EGC128 cipher family.

EGC128 is a 20-round balanced Feistel cipher on 128-bit blocks.  Its
nonlinear layer applies one 4-input Boolean function (Rule-A) at every
vertex of a 3-regular circulant interaction graph on 64 vertices with
neighbour offsets ``{-1, +1, +16}``.  The same structure scales down to
reduced branch widths, which the analysis modules use whenever an
exhaustive computation is feasible only at small state sizes.

Bit conventions used throughout the package:

* bit 0 of a word is the least significant bit;
* a block's canonical hex string is its value as a big-endian integer,
  so the most significant half is the left branch L and the least
  significant half is the right branch R.
"""

from __future__ import annotations

from dataclasses import dataclass

# First 320 fractional hexadecimal digits of pi.  Consecutive 16-digit
# (64-bit) words of this string are the cipher's round constants
# RC_0 .. RC_19; the derivation is re-checked from scratch in the tests.
PI_FRACTIONAL_HEX = (
    "243f6a8885a308d313198a2e03707344a4093822299f31d0082efa98ec4e6c89"
    "452821e638d01377be5466cf34e90c6cc0ac29b7c97c50dd3f84d5b5b5470917"
    "9216d5d98979fb1bd1310ba698dfb5ac2ffd72dbd01adfb7b8e1afed6a267e96"
    "ba7c9045f12c7f9924a19947b3916cf70801f2e2858efc16636920d871574e69"
    "a458fea3f4933d7e0d95748f728eb658718bcd5882154aee7b54a41dc25a59b5"
)

ROUND_CONSTANTS: tuple[int, ...] = tuple(
    int(PI_FRACTIONAL_HEX[16 * r : 16 * r + 16], 16) for r in range(20)
)

#: Rule-A truth table; bit k holds f(k) with k = x0 + 2*x1 + 4*x2 + 8*x3.
RULE_A_TRUTH_TABLE = 0x036F

#: LFSR feedback taps (bit positions); taps above the register width are
#: dropped for very narrow reduced instances.
LFSR_TAPS = (0, 1, 3, 4)

FULL_BRANCH_WIDTH = 64
FULL_OFFSETS = (-1, 1, 16)
FULL_ROUNDS = 20


def scaled_offsets(branch_width: int) -> tuple[int, int, int]:
    """Default neighbour offsets for a reduced instance.

    The long-range offset scales as width/4, matching +16 at width 64
    and +4 at width 16.  It is floored at +2 so the three offsets stay
    distinct at the narrowest supported widths.
    """
    return (-1, 1, max(2, round(branch_width / 4)))


@dataclass(frozen=True)
class CipherParams:
    """Width, topology, round count and round constants of one instance."""

    branch_width: int = FULL_BRANCH_WIDTH
    offsets: tuple[int, int, int] = FULL_OFFSETS
    rounds: int = FULL_ROUNDS
    round_constants: tuple[int, ...] = ROUND_CONSTANTS

    def __post_init__(self):
        w = self.branch_width
        if not 4 <= w <= 64:
            raise ValueError(f"branch width {w} outside supported range [4, 64]")
        if self.rounds < 1:
            raise ValueError("round count must be >= 1")
        residues = [o % w for o in self.offsets]
        if len(set(residues)) != 3 or 0 in residues:
            raise ValueError(f"offsets {self.offsets} not distinct and nonzero mod {w}")
        if len(self.round_constants) != self.rounds:
            raise ValueError("round_constants length must equal round count")
        mask = (1 << w) - 1
        if any(rc & ~mask for rc in self.round_constants):
            raise ValueError("round constant wider than branch width")

    @property
    def branch_mask(self) -> int:
        return (1 << self.branch_width) - 1

    @property
    def block_width(self) -> int:
        return 2 * self.branch_width

    @property
    def block_mask(self) -> int:
        return (1 << self.block_width) - 1

    @property
    def lfsr_taps(self) -> tuple[int, ...]:
        return tuple(t for t in LFSR_TAPS if t < self.branch_width)

    @classmethod
    def full(cls) -> "CipherParams":
        """The production 128-bit instance."""
        return cls()

    @classmethod
    def reduced(cls, branch_width: int, offsets: tuple[int, int, int] | None = None,
                rounds: int = FULL_ROUNDS) -> "CipherParams":
        """A structurally identical instance at a smaller branch width.

        Round constants are the full-width constants truncated to the
        low ``branch_width`` bits (extended cyclically past round 20).
        """
        if offsets is None:
            offsets = scaled_offsets(branch_width)
        mask = (1 << branch_width) - 1
        rcs = tuple(ROUND_CONSTANTS[r % len(ROUND_CONSTANTS)] & mask for r in range(rounds))
        return cls(branch_width=branch_width, offsets=offsets, rounds=rounds,
                   round_constants=rcs)


def _check_branch(value: int, width: int, what: str) -> None:
    if not 0 <= value < (1 << width):
        raise ValueError(f"{what} does not fit in {width} bits")


@dataclass(frozen=True)
class Block:
    """A 2*width-bit cipher block split into left and right branches."""

    left: int
    right: int
    width: int = FULL_BRANCH_WIDTH

    def __post_init__(self):
        _check_branch(self.left, self.width, "left branch")
        _check_branch(self.right, self.width, "right branch")

    @classmethod
    def from_int(cls, value: int, width: int = FULL_BRANCH_WIDTH) -> "Block":
        _check_branch(value, 2 * width, "block value")
        return cls(value >> width, value & ((1 << width) - 1), width)

    @classmethod
    def from_hex(cls, text: str, width: int = FULL_BRANCH_WIDTH) -> "Block":
        text = text.strip().lower().removeprefix("0x")
        digits = (2 * width + 3) // 4
        if len(text) != digits:
            raise ValueError(f"expected {digits} hex digits, got {len(text)}")
        return cls.from_int(int(text, 16), width)

    def to_int(self) -> int:
        return (self.left << self.width) | self.right

    def hex(self) -> str:
        digits = (2 * self.width + 3) // 4
        return f"{self.to_int():0{digits}x}"

    def __xor__(self, other: "Block") -> "Block":
        if other.width != self.width:
            raise ValueError("width mismatch")
        return Block(self.left ^ other.left, self.right ^ other.right, self.width)

    def hamming_weight(self) -> int:
        return (self.left.bit_count() + self.right.bit_count())


@dataclass(frozen=True)
class MasterKey:
    """A 2*width-bit key split into high and low halves."""

    high: int
    low: int
    width: int = FULL_BRANCH_WIDTH

    def __post_init__(self):
        _check_branch(self.high, self.width, "high key half")
        _check_branch(self.low, self.width, "low key half")

    @classmethod
    def from_int(cls, value: int, width: int = FULL_BRANCH_WIDTH) -> "MasterKey":
        _check_branch(value, 2 * width, "key value")
        return cls(value >> width, value & ((1 << width) - 1), width)

    @classmethod
    def from_hex(cls, text: str, width: int = FULL_BRANCH_WIDTH) -> "MasterKey":
        text = text.strip().lower().removeprefix("0x")
        digits = (2 * width + 3) // 4
        if len(text) != digits:
            raise ValueError(f"expected {digits} hex digits, got {len(text)}")
        return cls.from_int(int(text, 16), width)

    def to_int(self) -> int:
        return (self.high << self.width) | self.low

    def hex(self) -> str:
        digits = (2 * self.width + 3) // 4
        return f"{self.to_int():0{digits}x}"


#: A round-key schedule is one word per round.
RoundKeySchedule = tuple[int, ...]

#: LFSR state is a plain branch-width word.
LfsrState = int
