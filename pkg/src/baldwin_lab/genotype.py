"""Genome representations and genetic operators.

Three genome kinds appear in the simulations:

* ``TurneyGenotype`` -- 32 bias-direction bits plus 32 bias-strength genes,
  each strength coded as 8 bits and decoded linearly to [0, 1].
* ``DirectionOnlyGenotype`` -- the 32 direction bits alone, used when bias
  strength is imposed by an external schedule instead of evolving.
* ``HNGenotype`` -- 20 trinary switch alleles (0, 1, ?) from the classic
  20-switch learning model.

Genomes serialize to a flat bitstring (directions first, then strength codes
in gene order, most-significant bit first) and to lowercase hex for fixtures.
All operators are pure functions of their arguments plus an explicit
``numpy.random.Generator``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

NUM_GENES = 32
STRENGTH_BITS = 8
MAX_CODE = (1 << STRENGTH_BITS) - 1  # 255
FULL_GENOME_BITS = NUM_GENES + NUM_GENES * STRENGTH_BITS  # 288
DIRECTION_GENOME_BITS = NUM_GENES

HN_NUM_GENES = 20
# HN alleles are carried as 2-bit fields on the flat bitstring: 00 -> ZERO,
# 01 -> ONE, 10/11 -> QUESTION.  Uniform random bits then reproduce the
# 0.25 / 0.25 / 0.5 initial allele law, and the per-bit operators apply
# unchanged.
HN_GENOME_BITS = 2 * HN_NUM_GENES

_BIT_WEIGHTS = 1 << np.arange(STRENGTH_BITS - 1, -1, -1)  # MSB first


class GenotypeError(ValueError):
    """Malformed genome content (bad length, illegal symbol, bad code)."""


def decode_strength(code):
    """Decode an 8-bit strength code to a real in [0, 1] (linear, code/255)."""
    code = int(code)
    if not 0 <= code <= MAX_CODE:
        raise GenotypeError(f"strength code {code} outside [0, {MAX_CODE}]")
    return code / MAX_CODE


def encode_strength(value):
    """Encode a strength in [0, 1] to the nearest 8-bit code."""
    if not 0.0 <= value <= 1.0:
        raise GenotypeError(f"strength {value} outside [0, 1]")
    return int(round(value * MAX_CODE))


def _as_bits(seq, name):
    bits = np.asarray(seq, dtype=np.uint8)
    if bits.ndim != 1:
        raise GenotypeError(f"{name} must be one-dimensional")
    if bits.size and bits.max() > 1:
        raise GenotypeError(f"{name} entries must be 0 or 1")
    return bits


def bits_to_hex(bits):
    """Flat bitstring -> lowercase hex, MSB-first (length must be a multiple of 8)."""
    bits = _as_bits(bits, "bitstring")
    if bits.size % 8:
        raise GenotypeError("bit length must be a multiple of 8 for hex serialization")
    return np.packbits(bits).tobytes().hex()


def hex_to_bits(text, num_bits):
    """Inverse of :func:`bits_to_hex` for a known bit length."""
    raw = bytes.fromhex(text)
    if len(raw) * 8 != num_bits:
        raise GenotypeError(f"expected {num_bits} bits, got {len(raw) * 8}")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8))


@dataclass(frozen=True)
class TurneyGenotype:
    """Bias-direction bits paired with 8-bit-coded bias-strength genes.

    Standard genomes carry ``NUM_GENES`` (32) genes; the 20-gene variant
    produced by :func:`hn_embed` uses the same layout.
    """

    directions: tuple
    strength_codes: tuple

    def __post_init__(self):
        dirs = tuple(int(d) for d in self.directions)
        codes = tuple(int(c) for c in self.strength_codes)
        if len(dirs) != len(codes):
            raise GenotypeError("direction and strength gene counts differ")
        if any(d not in (0, 1) for d in dirs):
            raise GenotypeError("directions must be 0 or 1")
        if any(not 0 <= c <= MAX_CODE for c in codes):
            raise GenotypeError(f"strength codes must lie in [0, {MAX_CODE}]")
        object.__setattr__(self, "directions", dirs)
        object.__setattr__(self, "strength_codes", codes)

    @property
    def num_genes(self):
        return len(self.directions)

    @property
    def strengths(self):
        """Decoded strength genes as a float array in [0, 1]."""
        return np.asarray(self.strength_codes, dtype=np.float64) / MAX_CODE

    def to_bits(self):
        """Serialize to the flat bitstring (directions, then strength codes)."""
        code_bits = (
            (np.asarray(self.strength_codes, dtype=np.uint8)[:, None] >> np.arange(STRENGTH_BITS - 1, -1, -1)) & 1
        ).ravel()
        return np.concatenate([np.asarray(self.directions, dtype=np.uint8), code_bits.astype(np.uint8)])

    @classmethod
    def from_bits(cls, bits, num_genes=NUM_GENES):
        bits = _as_bits(bits, "genome")
        expected = num_genes * (1 + STRENGTH_BITS)
        if bits.size != expected:
            raise GenotypeError(f"expected {expected} bits, got {bits.size}")
        codes = bits[num_genes:].reshape(num_genes, STRENGTH_BITS) @ _BIT_WEIGHTS
        return cls(tuple(bits[:num_genes]), tuple(codes))

    def to_hex(self):
        return bits_to_hex(self.to_bits())

    @classmethod
    def from_hex(cls, text, num_genes=NUM_GENES):
        return cls.from_bits(hex_to_bits(text, num_genes * (1 + STRENGTH_BITS)), num_genes)


@dataclass(frozen=True)
class DirectionOnlyGenotype:
    """Direction bits alone; strength comes from a forced schedule."""

    directions: tuple

    def __post_init__(self):
        dirs = tuple(int(d) for d in self.directions)
        if len(dirs) != NUM_GENES:
            raise GenotypeError(f"expected {NUM_GENES} direction genes, got {len(dirs)}")
        if any(d not in (0, 1) for d in dirs):
            raise GenotypeError("directions must be 0 or 1")
        object.__setattr__(self, "directions", dirs)

    @property
    def num_genes(self):
        return NUM_GENES

    def to_bits(self):
        return np.asarray(self.directions, dtype=np.uint8)

    @classmethod
    def from_bits(cls, bits):
        bits = _as_bits(bits, "genome")
        if bits.size != NUM_GENES:
            raise GenotypeError(f"expected {NUM_GENES} bits, got {bits.size}")
        return cls(tuple(bits))

    def to_hex(self):
        return bits_to_hex(self.to_bits())

    @classmethod
    def from_hex(cls, text):
        return cls.from_bits(hex_to_bits(text, NUM_GENES))


class Allele(IntEnum):
    ZERO = 0
    ONE = 1
    QUESTION = 2


@dataclass(frozen=True)
class HNGenotype:
    """Twenty switch alleles, each ZERO, ONE, or QUESTION."""

    alleles: tuple

    def __post_init__(self):
        alleles = tuple(Allele(a) for a in self.alleles)
        if len(alleles) != HN_NUM_GENES:
            raise GenotypeError(f"expected {HN_NUM_GENES} alleles, got {len(alleles)}")
        object.__setattr__(self, "alleles", alleles)

    def count(self, allele):
        return sum(1 for a in self.alleles if a is Allele(allele))

    def to_bits(self):
        """2-bit field serialization; QUESTION is written canonically as 10."""
        pairs = {Allele.ZERO: (0, 0), Allele.ONE: (0, 1), Allele.QUESTION: (1, 0)}
        return np.asarray([b for a in self.alleles for b in pairs[a]], dtype=np.uint8)

    @classmethod
    def from_bits(cls, bits):
        bits = _as_bits(bits, "genome")
        if bits.size != HN_GENOME_BITS:
            raise GenotypeError(f"expected {HN_GENOME_BITS} bits, got {bits.size}")
        high, low = bits[0::2], bits[1::2]
        alleles = np.where(high == 1, Allele.QUESTION, np.where(low == 1, Allele.ONE, Allele.ZERO))
        return cls(tuple(int(a) for a in alleles))


class InitKind(IntEnum):
    UNIFORM = 0
    SKEWED_STRONG = 1


@dataclass(frozen=True)
class Band:
    """Half-open strength band [low, high) with a sampling probability.

    Boundary points belong to the higher band; the top band closes at 1.0.
    """

    low: float
    high: float
    probability: float


@dataclass(frozen=True)
class InitDistribution:
    """First-generation genome distribution (uniform bits or strength-skewed)."""

    kind: InitKind
    bands: tuple = ()

    def __post_init__(self):
        if self.kind is InitKind.SKEWED_STRONG:
            if abs(sum(b.probability for b in self.bands) - 1.0) > 1e-12:
                raise GenotypeError("band probabilities must sum to 1")
            edges = sorted((b.low, b.high) for b in self.bands)
            if edges[0][0] != 0.0 or edges[-1][1] != 1.0:
                raise GenotypeError("bands must cover [0, 1]")
            for (_, hi), (lo, _) in zip(edges, edges[1:]):
                if hi != lo:
                    raise GenotypeError("bands must tile [0, 1] without gaps or overlap")
        elif self.bands:
            raise GenotypeError("uniform init takes no bands")


UNIFORM_INIT = InitDistribution(InitKind.UNIFORM)

# Strong-bias skew: 75% of strength genes land in [0.9, 1.0], 20% in
# [0.5, 0.9), 5% in [0.0, 0.5).
SKEWED_STRONG_INIT = InitDistribution(
    InitKind.SKEWED_STRONG,
    bands=(
        Band(0.9, 1.0, 0.75),
        Band(0.5, 0.9, 0.20),
        Band(0.0, 0.5, 0.05),
    ),
)


def sample_strength_codes(dist, size, rng):
    """Draw strength codes (uint8 array of ``size``) from an init distribution.

    UNIFORM draws each code's 8 bits as fair coins.  SKEWED_STRONG first picks
    a band by its probability, then a uniform real within the band, then
    encodes to the nearest code.
    """
    n = int(np.prod(size))
    if dist.kind is InitKind.UNIFORM:
        codes = rng.integers(0, MAX_CODE + 1, size=n, dtype=np.uint16)
    else:
        probs = np.asarray([b.probability for b in dist.bands])
        lows = np.asarray([b.low for b in dist.bands])
        highs = np.asarray([b.high for b in dist.bands])
        band = np.searchsorted(np.cumsum(probs), rng.random(n), side="right")
        band = np.minimum(band, len(dist.bands) - 1)
        values = lows[band] + rng.random(n) * (highs[band] - lows[band])
        codes = np.rint(values * MAX_CODE).astype(np.uint16)
    return codes.reshape(size).astype(np.uint8)


def random_genotype(dist, rng):
    """Random 32-gene genotype: fair-coin directions, dist-drawn strengths."""
    directions = rng.integers(0, 2, size=NUM_GENES, dtype=np.uint8)
    codes = sample_strength_codes(dist, NUM_GENES, rng)
    return TurneyGenotype(tuple(directions), tuple(codes))


def random_direction_genotype(rng):
    """Random direction-only genotype (32 fair coin flips)."""
    return DirectionOnlyGenotype(tuple(rng.integers(0, 2, size=NUM_GENES, dtype=np.uint8)))


def random_hn_genotype(rng):
    """Random 20-switch genotype: ZERO w.p. 0.25, ONE w.p. 0.25, QUESTION w.p. 0.5.

    Uses one uniform per allele, inverse-CDF style: u < 0.25 -> ZERO,
    u < 0.5 -> ONE, else QUESTION.
    """
    u = rng.random(HN_NUM_GENES)
    alleles = np.where(u < 0.25, Allele.ZERO, np.where(u < 0.5, Allele.ONE, Allele.QUESTION))
    return HNGenotype(tuple(int(a) for a in alleles))


def mutate(bits, rate, rng):
    """Flip each bit independently with probability ``rate``."""
    if not 0.0 <= rate <= 1.0:
        raise GenotypeError(f"mutation rate {rate} outside [0, 1]")
    bits = _as_bits(bits, "genome")
    flips = rng.random(bits.size) < rate
    return bits ^ flips.astype(np.uint8)


def crossover(parent_a, parent_b, rate, rng):
    """Two-point crossover on flat bitstrings.

    With probability ``rate`` two distinct cut points are drawn from
    [1, L-1], order-normalized, and the segment between them is exchanged;
    otherwise the children are copies of the parents.
    """
    if not 0.0 <= rate <= 1.0:
        raise GenotypeError(f"crossover rate {rate} outside [0, 1]")
    a = _as_bits(parent_a, "parent_a")
    b = _as_bits(parent_b, "parent_b")
    if a.size != b.size:
        raise GenotypeError(f"parent lengths differ: {a.size} vs {b.size}")
    if a.size < 2:
        raise GenotypeError("parents must carry at least 2 bits")
    if rng.random() >= rate:
        return a.copy(), b.copy()
    lo, hi = draw_cut_points(a.size, rng)
    child_a, child_b = a.copy(), b.copy()
    child_a[lo:hi] = b[lo:hi]
    child_b[lo:hi] = a[lo:hi]
    return child_a, child_b


def draw_cut_points(length, rng):
    """Two distinct cut positions from [1, length-1], returned sorted."""
    first = int(rng.integers(1, length))
    second = int(rng.integers(1, length - 1))
    if second >= first:
        second += 1
    return min(first, second), max(first, second)


def hn_embed(hn, rng):
    """Map a 20-switch genotype onto the direction/strength representation.

    ZERO -> (d=0, s=1), ONE -> (d=1, s=1), QUESTION -> (d = fair coin, s=0);
    the two QUESTION encodings are behaviorally identical because strength 0
    makes the direction bit inert.
    """
    directions = []
    codes = []
    for allele in hn.alleles:
        if allele is Allele.QUESTION:
            directions.append(int(rng.integers(0, 2)))
            codes.append(0)
        else:
            directions.append(int(allele is Allele.ONE))
            codes.append(MAX_CODE)
    return TurneyGenotype(tuple(directions), tuple(codes))
