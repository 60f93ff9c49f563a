"""The noisy Boolean-concept task and its fitness model.

An individual faces a fixed 32-bit target concept.  Training and testing
vectors are independent noisy copies of the target (each bit flipped with
probability ``p``).  For every bit the individual guesses its instinctive
direction ``d_i`` when it agrees with the observed training bit; on
disagreement it trusts instinct with probability ``s_i`` (its bias strength)
and the training bit otherwise.  Fitness is all-or-nothing: a guess vector
matching the testing vector on all 32 bits scores ``(1-p)**-32``, anything
else scores 0, so a pure correct instinct has expected fitness exactly 1.

The module also carries the 20-switch lifetime-learning fitness: an
individual with no ZERO alleles makes up to 1000 uniform random guesses at
its undecided switches and earns ``1 + 19*(1000-i)/1000`` for first success
at guess ``i`` (``i = 0`` for an all-ONE genome, fitness 20).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .genotype import HN_NUM_GENES, Allele

VECTOR_LEN = 32
ALL_ONES_TARGET = tuple([1] * VECTOR_LEN)

HN_MAX_FITNESS = 20.0
HN_MIN_FITNESS = 1.0
HN_GUESS_LIMIT = 1000
HN_FITNESS_GAIN = 19.0


class TaskError(ValueError):
    """Invalid task parameters (noise level, vector shape)."""


def _check_noise(p):
    if not 0.0 <= p < 0.5:
        raise TaskError(f"noise level {p} outside [0, 0.5)")


def _as_vector(bits, name):
    arr = np.asarray(bits, dtype=np.uint8)
    if arr.shape != (VECTOR_LEN,):
        raise TaskError(f"{name} must have exactly {VECTOR_LEN} bits")
    if arr.max(initial=0) > 1:
        raise TaskError(f"{name} entries must be 0 or 1")
    return arr


@dataclass(frozen=True)
class TaskSetup:
    """A target concept plus the class-noise level."""

    target: tuple = ALL_ONES_TARGET
    noise_p: float = 0.0

    def __post_init__(self):
        target = tuple(int(b) for b in self.target)
        _as_vector(target, "target")
        _check_noise(self.noise_p)
        object.__setattr__(self, "target", target)


def corrupt(target, p, rng):
    """Noisy copy of ``target``: each bit flipped independently with prob ``p``."""
    _check_noise(p)
    target = _as_vector(target, "target")
    return target ^ (rng.random(target.size) < p).astype(np.uint8)


def guess_from_uniforms(directions, strengths, train, coins):
    """Apply the guess rule given pre-drawn uniforms in ``coins``.

    Where ``d_i`` equals the training bit the guess is ``d_i`` outright;
    elsewhere instinct wins when ``coins < strengths``.  Shape-generic:
    accepts single vectors or (n, num_genes) matrices.
    """
    directions = np.asarray(directions, dtype=np.uint8)
    train = np.asarray(train, dtype=np.uint8)
    instinct = (directions == train) | (np.asarray(coins) < np.asarray(strengths))
    return np.where(instinct, directions, train).astype(np.uint8)


def guess(genotype, train, rng):
    """Guess vector for one genotype against one training vector."""
    train = np.asarray(train, dtype=np.uint8)
    if train.size != genotype.num_genes:
        raise TaskError("genotype and training vector lengths differ")
    return guess_from_uniforms(genotype.directions, genotype.strengths, train, rng.random(train.size))


def perfect_score(p):
    """Fitness awarded for a perfect test match: (1-p)**-32."""
    _check_noise(p)
    return (1.0 - p) ** -VECTOR_LEN


def fitness(guess_bits, test_bits, p):
    """All-or-nothing score: ``perfect_score(p)`` on a full match, else 0."""
    g = _as_vector(guess_bits, "guess")
    t = _as_vector(test_bits, "test")
    return perfect_score(p) if bool((g == t).all()) else 0.0


def evaluate(genotype, task, rng):
    """One fitness evaluation: fresh noisy train/test vectors, then guess."""
    target = np.asarray(task.target, dtype=np.uint8)
    train = corrupt(target, task.noise_p, rng)
    test = corrupt(target, task.noise_p, rng)
    g = guess(genotype, train, rng)
    return fitness(g, test, task.noise_p)


def prob_perfect_pure_learning(p):
    """P(perfect test score) for bias strength 0: (1 - 2p + 2p^2)**32."""
    _check_noise(p)
    return (1.0 - 2.0 * p + 2.0 * p * p) ** VECTOR_LEN


def expected_fitness_pure_learning(p):
    """Expected fitness of a pure learner (strength 0 everywhere)."""
    return prob_perfect_pure_learning(p) * perfect_score(p)


def prob_perfect_pure_instinct_correct(p):
    """P(perfect test score) for correct pure instinct: (1-p)**32."""
    _check_noise(p)
    return (1.0 - p) ** VECTOR_LEN


def expected_fitness_pure_instinct_correct(p):
    """Expected fitness of a correct pure instinct; algebraically 1."""
    return prob_perfect_pure_instinct_correct(p) * perfect_score(p)


def bias_strength(genotype):
    """Mean decoded strength gene."""
    return float(np.mean(genotype.strengths))


def bias_correctness(genotype, target):
    """Fraction of direction genes matching the target."""
    target = _as_vector(target, "target")
    directions = np.asarray(genotype.directions, dtype=np.uint8)
    if directions.size != target.size:
        raise TaskError("genotype and target lengths differ")
    return float(np.mean(directions == target))


def hn_evaluate(hn, rng):
    """Lifetime-learning fitness of one 20-switch genotype.

    Any ZERO allele pins fitness at 1.  Otherwise each of up to 1000 guesses
    independently sets all undecided switches, succeeding with probability
    2**-z; the first success at guess ``i`` yields 1 + 19*(1000-i)/1000.
    """
    zeros = hn.count(Allele.ZERO)
    questions = hn.count(Allele.QUESTION)
    if zeros:
        return HN_MIN_FITNESS
    if questions == 0:
        return HN_MAX_FITNESS
    first_success = int(rng.geometric(2.0 ** -questions))
    if first_success > HN_GUESS_LIMIT:
        return HN_MIN_FITNESS
    return HN_MIN_FITNESS + HN_FITNESS_GAIN * (HN_GUESS_LIMIT - first_success) / HN_GUESS_LIMIT


def hn_fitness_batch(num_zeros, num_questions, rng):
    """Vectorized :func:`hn_evaluate` over per-individual allele counts.

    Draw order is row order, so results are reproducible for a given stream
    regardless of how callers consume them.
    """
    num_zeros = np.asarray(num_zeros)
    num_questions = np.asarray(num_questions)
    q = 2.0 ** -num_questions.astype(np.float64)
    first_success = rng.geometric(q)  # one draw per individual, even where unused
    scores = HN_MIN_FITNESS + HN_FITNESS_GAIN * (HN_GUESS_LIMIT - first_success) / HN_GUESS_LIMIT
    scores = np.where(first_success > HN_GUESS_LIMIT, HN_MIN_FITNESS, scores)
    scores = np.where(num_questions == 0, HN_MAX_FITNESS, scores)
    return np.where(num_zeros > 0, HN_MIN_FITNESS, scores)


def hn_expected_fitness(num_ones, num_questions):
    """Exact expectation of :func:`hn_evaluate` for a ZERO-free genotype.

    With z undecided switches and q = 2**-z the first success is geometric,
    truncated at 1000 guesses:

        E[F] = 1 + 19 * sum_{i=1..1000} ((1000 - i) / 1000) * q * (1-q)**(i-1)

    and E[F] = 20 when z = 0.
    """
    if num_ones < 0 or num_questions < 0:
        raise TaskError("allele counts must be non-negative")
    if num_ones + num_questions > HN_NUM_GENES:
        raise TaskError(f"allele counts exceed {HN_NUM_GENES} genes")
    if num_questions == 0:
        return HN_MAX_FITNESS
    q = 2.0 ** -num_questions
    i = np.arange(1, HN_GUESS_LIMIT + 1, dtype=np.float64)
    weights = (HN_GUESS_LIMIT - i) / HN_GUESS_LIMIT
    pmf = q * (1.0 - q) ** (i - 1.0)
    return HN_MIN_FITNESS + HN_FITNESS_GAIN * float(np.sum(weights * pmf))
