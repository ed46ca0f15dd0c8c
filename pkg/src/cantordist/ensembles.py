"""Bitstring ensembles: unconstrained, solus (no ``11``) and multus (no isolated 1).

A string w1 w2 ... wm is packed into an int with w1 as the most significant
of m bits, so ``format(value, f"0{m}b")`` prints it left to right.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import InfeasibleSizeError, ParameterError

MAX_ENUMERATION = 10**8


class EnsembleKind(str, enum.Enum):
    UNCONSTRAINED = "unconstrained"
    SOLUS = "solus"
    MULTUS = "multus"

    def __str__(self) -> str:
        return self.value


def as_kind(kind) -> EnsembleKind:
    try:
        return EnsembleKind(kind)
    except ValueError:
        raise ParameterError(f"unknown ensemble kind {kind!r}") from None


@dataclass(frozen=True)
class BitString:
    value: int
    length: int

    def __post_init__(self):
        if self.length < 0 or self.value < 0 or self.value >> self.length:
            raise ValueError(f"value {self.value} does not fit in {self.length} bits")

    @classmethod
    def from_str(cls, bits: str) -> BitString:
        if bits and set(bits) - {"0", "1"}:
            raise ValueError(f"not a bitstring: {bits!r}")
        return cls(int(bits, 2) if bits else 0, len(bits))

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        """0-based bit i, i.e. w_{i+1}."""
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.value >> (self.length - 1 - i)) & 1

    def __iter__(self) -> Iterator[int]:
        return (self[i] for i in range(self.length))

    def __add__(self, other: BitString) -> BitString:
        return BitString((self.value << other.length) | other.value, self.length + other.length)

    def bitsum(self) -> int:
        return self.value.bit_count()

    def longest_run(self, bit: int) -> int:
        return longest_run(self.value, self.length, bit)


def longest_run(value: int, length: int, bit: int) -> int:
    v = value if bit else ~value & ((1 << length) - 1)
    run = 0
    while v:
        v &= v << 1
        run += 1
    return run


def _is_solus(value: int) -> bool:
    return value & (value >> 1) == 0


def _is_multus(value: int, length: int) -> bool:
    isolated = value & ~(value << 1) & ~(value >> 1)
    return isolated & ((1 << length) - 1) == 0


def is_member(kind, omega: BitString) -> bool:
    kind = as_kind(kind)
    if kind is EnsembleKind.SOLUS:
        return _is_solus(omega.value)
    if kind is EnsembleKind.MULTUS:
        return _is_multus(omega.value, omega.length)
    return True


@dataclass(frozen=True)
class DistributionParams:
    theta: Fraction

    def __post_init__(self):
        t = self.theta
        if not isinstance(t, Fraction):
            if isinstance(t, int):
                object.__setattr__(self, "theta", Fraction(t))
            else:
                raise ParameterError("theta must be an exact fraction")
        if not 0 < self.theta <= Fraction(1, 2):
            raise ParameterError(f"theta must satisfy 0 < theta <= 1/2, got {self.theta}")

    @property
    def theta_bar(self) -> Fraction:
        return 1 - self.theta


def parse_theta(text: str) -> Fraction:
    """Accept only ``p/q`` (or an integer); decimals would break exactness."""
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ParameterError(f"theta must be an exact fraction p/q, got {text!r}")
    try:
        theta = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParameterError(f"theta must be an exact fraction p/q, got {text!r}") from None
    DistributionParams(theta)
    return theta


def check_theta(theta) -> Fraction:
    return DistributionParams(theta if isinstance(theta, Fraction) else Fraction(theta)).theta


# --- counting ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _fib(k: int) -> int:
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


@lru_cache(maxsize=None)
def _upper_fib(k: int) -> int:
    f = [0, 1, 1]
    while len(f) <= k:
        f.append(2 * f[-1] - f[-2] + f[-3])
    return f[k]


def count(kind, m: int) -> int:
    """Number of length-m strings of the ensemble."""
    if m < 0:
        raise ParameterError("length must be >= 0")
    kind = as_kind(kind)
    if kind is EnsembleKind.UNCONSTRAINED:
        return 2**m
    if kind is EnsembleKind.SOLUS:
        return _fib(m + 2)
    return _upper_fib(m + 2)


def _guard(kind, m: int, limit: int | None) -> None:
    limit = MAX_ENUMERATION if limit is None else limit
    n = count(kind, m)
    if n > limit:
        raise InfeasibleSizeError(
            f"{kind} ensemble at length {m} has {n} strings, above the cap {limit}"
        )


# Prefix grammars: a string is a sequence of blocks followed by an optional
# terminal block that must end the string exactly.
_BLOCKS = {
    EnsembleKind.UNCONSTRAINED: (((0, 1), (1, 1)), ()),
    EnsembleKind.SOLUS: (((0, 1), (0b10, 2)), ((1, 1),)),
    EnsembleKind.MULTUS: (((0, 1), (0b11, 2), (0b1110, 4)), ((0b111, 3),)),
}


def enumerate_values(kind, m: int, limit: int | None = None) -> Iterator[int]:
    """Packed values of every length-m member, each exactly once."""
    kind = as_kind(kind)
    _guard(kind, m, limit)
    if kind is EnsembleKind.UNCONSTRAINED:
        yield from range(2**m)
        return
    blocks, terminals = _BLOCKS[kind]
    # depth-first; reversed pushes emit the 0 block first
    stack = [(0, 0)]
    while stack:
        value, used = stack.pop()
        rest = m - used
        if rest == 0:
            yield value
            continue
        for bits, width in reversed(blocks + terminals):
            if (bits, width) in terminals:
                if width == rest:
                    stack.append(((value << width) | bits, m))
            elif width <= rest:
                stack.append(((value << width) | bits, used + width))


def enumerate_strings(kind, m: int, limit: int | None = None) -> Iterator[BitString]:
    for v in enumerate_values(kind, m, limit):
        yield BitString(v, m)


def f_value(params: DistributionParams | Fraction, omega: BitString) -> Fraction:
    """F(w) = (theta_bar/theta) * sum_i w_i theta^i, exactly."""
    theta = params.theta if isinstance(params, DistributionParams) else check_theta(params)
    total, power = Fraction(0), Fraction(1)
    for bit in omega:
        power *= theta
        if bit:
            total += power
    return (1 - theta) / theta * total


def f_numerators(theta: Fraction, m: int) -> tuple[list[int], int]:
    """Integer weights W_i with F(w) = sum_i w_i W_i / q**m for theta = p/q."""
    p, q = theta.numerator, theta.denominator
    weights = [(q - p) * p ** (i - 1) * q ** (m - i) for i in range(1, m + 1)]
    return weights, q**m


# --- uniform sampling ----------------------------------------------------------

# Automata reading left to right; state 0 is the start, SINK absorbs illegal moves.
# transitions[state] = (next on 0, next on 1); accepting = states allowed at the end.
_SINK = -1
_AUTOMATA = {
    EnsembleKind.UNCONSTRAINED: (((0, 0),), (0,)),
    EnsembleKind.SOLUS: (((0, 1), (0, _SINK)), (0, 1)),
    # 0: after a 0 (or start), 1: a lone 1 so far, 2: run of >= 2 ones
    EnsembleKind.MULTUS: (((0, 1), (_SINK, 2), (0, 2)), (0, 2)),
}


@lru_cache(maxsize=64)
def completion_counts(kind: EnsembleKind, m: int) -> tuple[tuple[int, ...], ...]:
    """counts[r][s]: accepted completions of length r starting in state s."""
    transitions, accepting = _AUTOMATA[kind]
    n_states = len(transitions)
    counts = [tuple(int(s in accepting) for s in range(n_states))]
    for _ in range(m):
        prev = counts[-1]
        counts.append(tuple(
            sum(prev[t] for t in transitions[s] if t != _SINK) for s in range(n_states)
        ))
    return tuple(counts)


def unrank(kind, m: int, rank: int) -> BitString:
    """The rank-th member of length m in lexicographic order."""
    kind = as_kind(kind)
    transitions, _ = _AUTOMATA[kind]
    counts = completion_counts(kind, m)
    if not 0 <= rank < counts[m][0]:
        raise ValueError(f"rank {rank} out of range")
    state, value = 0, 0
    for pos in range(m):
        rest = m - pos - 1
        nxt0 = transitions[state][0]
        zeros = counts[rest][nxt0] if nxt0 != _SINK else 0
        bit = int(rank >= zeros)
        rank -= bit * zeros
        value = (value << 1) | bit
        state = transitions[state][bit]
    return BitString(value, m)


def sample_uniform(kind, m: int, seed: int) -> BitString:
    """Exactly uniform member of length m; the same seed gives the same string."""
    if m < 0:
        raise ParameterError("length must be >= 0")
    kind = as_kind(kind)
    rng = random.Random(seed)
    return unrank(kind, m, rng.randrange(completion_counts(kind, m)[m][0]))


def sample_f_values(kind, theta: Fraction, prefix_len: int, size: int,
                    rng: np.random.Generator) -> np.ndarray:
    """Float F-values of ``size`` uniform length-prefix_len members (vectorized unranking)."""
    kind = as_kind(kind)
    counts = completion_counts(kind, prefix_len)
    total = counts[prefix_len][0]
    if total >= 2**62:
        raise ParameterError("prefix too long for 64-bit ranks")
    transitions, _ = _AUTOMATA[kind]
    n_states = len(transitions)
    table = np.array(counts, dtype=np.int64)
    # sink is an extra all-zero column
    table = np.hstack([table, np.zeros((prefix_len + 1, 1), dtype=np.int64)])
    nxt = np.array([[t if t != _SINK else n_states for t in row] for row in transitions]
                   + [[n_states, n_states]], dtype=np.int64)

    th = float(theta)
    scale = (1 - th) / th
    ranks = rng.integers(0, total, size=size, dtype=np.int64)
    state = np.zeros(size, dtype=np.int64)
    f = np.zeros(size)
    power = 1.0
    for pos in range(prefix_len):
        power *= th
        rest = prefix_len - pos - 1
        zeros = table[rest, nxt[state, 0]]
        bit = ranks >= zeros
        ranks -= np.where(bit, zeros, 0)
        state = nxt[state, bit.astype(np.int64)]
        f += np.where(bit, power, 0.0)
    return scale * f


def fibonacci_word(n: int) -> BitString:
    """Length-n prefix of the fixed point of 0 -> 01, 1 -> 0."""
    if n < 1:
        raise ParameterError("n must be >= 1")
    rule = str.maketrans({"0": "01", "1": "0"})
    word = "0"
    while len(word) < n:
        word = word.translate(rule)
    return BitString.from_str(word[:n])
