"""Binary codewords and codebooks with Hamming-distance arithmetic.

Codewords are fixed-length bit vectors stored as integers, most significant
bit first, so integer order coincides with lexicographic order on the
bitstrings.  A codebook bundles codewords with its design parameters
(n, k, d): length n, a target of 2**k codewords, and a minimum pairwise
Hamming distance of d.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

MAX_N = 24  # exhaustive 2**n scans stay tractable below this


class CodebookFormatError(ValueError):
    """A codebook document or value violates the file contract."""


@dataclass(frozen=True, order=True)
class Codeword:
    """Length-n binary vector, encoded as an int with the MSB as position 0."""

    n: int
    value: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"codeword length must be in [1, {MAX_N}], got {self.n}")
        if not 0 <= self.value < (1 << self.n):
            raise ValueError(f"value {self.value} does not fit in {self.n} bits")

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.n - 1 - i)) & 1 for i in range(self.n))

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def __str__(self) -> str:
        return format(self.value, f"0{self.n}b")

    @classmethod
    def from_string(cls, text: str) -> "Codeword":
        if not text or any(ch not in "01" for ch in text):
            raise CodebookFormatError(f"malformed bitstring {text!r}")
        return cls(n=len(text), value=int(text, 2))


def hamming_distance(x: Codeword, y: Codeword) -> int:
    """Number of positions where x and y differ."""
    if x.n != y.n:
        raise ValueError(f"length mismatch: {x.n} vs {y.n}")
    return (x.value ^ y.value).bit_count()


@dataclass(frozen=True)
class Codebook:
    """Distinct equal-length codewords under a (n, k, d) design contract.

    Codewords are kept sorted lexicographically so codebook equality is
    structural.  Construction checks parameter sanity and distinctness only;
    the O(m^2 n) pairwise-distance invariant is checked by validate().
    """

    n: int
    k: int
    d: int
    codewords: tuple[Codeword, ...] = field(default=())

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"n must be in [1, {MAX_N}], got {self.n}")
        if not 0 < self.d <= self.n:
            raise ValueError(f"d must satisfy 0 < d <= n, got d={self.d} n={self.n}")
        if not 0 < self.k <= self.n:
            raise ValueError(f"k must satisfy 0 < k <= n, got k={self.k} n={self.n}")
        words = tuple(sorted(self.codewords))
        for w in words:
            if w.n != self.n:
                raise ValueError(f"codeword {w} has length {w.n}, codebook has n={self.n}")
        if len(set(words)) != len(words):
            raise ValueError("duplicate codewords")
        object.__setattr__(self, "codewords", words)

    @classmethod
    def from_values(cls, n: int, k: int, d: int, values: Iterable[int]) -> "Codebook":
        """Build from raw integer codeword values, deduplicating."""
        return cls(n=n, k=k, d=d, codewords=tuple(Codeword(n, v) for v in sorted(set(values))))

    @cached_property
    def values(self) -> tuple[int, ...]:
        return tuple(w.value for w in self.codewords)

    @property
    def m(self) -> int:
        return len(self.codewords)

    @property
    def size_target(self) -> int:
        return 1 << self.k

    @property
    def is_complete(self) -> bool:
        return self.m >= self.size_target

    def bitstrings(self) -> tuple[str, ...]:
        return tuple(str(w) for w in self.codewords)

    def validate(self) -> None:
        """Check the pairwise-distance invariant, naming the first violating pair."""
        vals = self.values
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                dist = (vals[i] ^ vals[j]).bit_count()
                if dist < self.d:
                    a = format(vals[i], f"0{self.n}b")
                    b = format(vals[j], f"0{self.n}b")
                    raise CodebookFormatError(
                        f"codewords {a} and {b} are at distance {dist} < d={self.d}"
                    )

    def is_valid(self) -> bool:
        try:
            self.validate()
        except CodebookFormatError:
            return False
        return True


def distance_to_codebook(x: Codeword, book: Codebook) -> float:
    """Minimum Hamming distance from x to any codeword; inf for an empty codebook."""
    if x.n != book.n:
        raise ValueError(f"length mismatch: codeword n={x.n}, codebook n={book.n}")
    if not book.codewords:
        return math.inf
    xv = x.value
    return min((xv ^ v).bit_count() for v in book.values)


def min_distance(book: Codebook) -> int:
    """Minimum pairwise Hamming distance over all distinct codeword pairs."""
    if book.m < 2:
        raise ValueError("min distance is undefined for fewer than 2 codewords")
    vals = np.asarray(book.values, dtype=np.uint32)
    dists = np.bitwise_count(vals[:, None] ^ vals[None, :])
    np.fill_diagonal(dists, np.iinfo(dists.dtype).max)
    return int(dists.min())


def total_ones(book: Codebook) -> int:
    """Sum of Hamming weights over all codewords (the quantity maximized)."""
    return sum(w.weight for w in book.codewords)


def positions_to_mask(positions: Iterable[int], n: int) -> int:
    """XOR mask for a set of bit positions, position 0 being the MSB."""
    mask = 0
    for p in set(positions):
        if not 0 <= p < n:
            raise ValueError(f"position {p} out of range for n={n}")
        mask |= 1 << (n - 1 - p)
    return mask


def mutate(book: Codebook, positions: Iterable[int]) -> Codebook:
    """Flip the bits at the given positions in every codeword.

    This is a distance-preserving isometry (XOR with a fixed mask), so the
    (n, k, d) property of the codebook is unchanged, and applying the same
    mutation twice restores the original codebook.
    """
    mask = positions_to_mask(positions, book.n)
    return Codebook.from_values(book.n, book.k, book.d, (v ^ mask for v in book.values))


def lex_successor(x: Codeword) -> Codeword:
    """Next codeword in lexicographic (binary counter) order."""
    if x.value == (1 << x.n) - 1:
        raise ValueError("all-ones codeword has no successor")
    return Codeword(x.n, x.value + 1)


def finalize(book: Codebook) -> Codebook:
    """Reduce to the 2**k heaviest codewords.

    Ties are broken in favor of the lexicographically larger codeword, for
    determinism.  Any subset of a distance-d codebook keeps distance >= d.
    """
    target = book.size_target
    if book.m < target:
        raise ValueError(
            f"incomplete codebook: {book.m} codewords, finalize needs at least {target}"
        )
    ranked = sorted(book.codewords, key=lambda w: (-w.weight, -w.value))
    return Codebook(book.n, book.k, book.d, tuple(ranked[:target]))


def message_order(book: Codebook) -> tuple[Codeword, ...]:
    """Codewords in message-index order: heaviest first, lexicographically larger first on ties."""
    return tuple(sorted(book.codewords, key=lambda w: (-w.weight, -w.value)))


def parse_codebook(text: str) -> Codebook:
    """Parse a codebook JSON document and validate every invariant."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodebookFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CodebookFormatError("document must be a JSON object")
    for key in ("n", "k", "d", "codewords"):
        if key not in doc:
            raise CodebookFormatError(f"missing field {key!r}")
    n, k, d = doc["n"], doc["k"], doc["d"]
    for name, val in (("n", n), ("k", k), ("d", d)):
        if not isinstance(val, int) or isinstance(val, bool):
            raise CodebookFormatError(f"field {name!r} must be an integer")
    raw = doc["codewords"]
    if not isinstance(raw, list) or not all(isinstance(s, str) for s in raw):
        raise CodebookFormatError("field 'codewords' must be a list of bitstrings")
    words = []
    for s in raw:
        if len(s) != n or any(ch not in "01" for ch in s):
            raise CodebookFormatError(
                f"malformed bitstring {s!r}: expected exactly {n} characters over '0'/'1'"
            )
        words.append(Codeword.from_string(s))
    if len(set(words)) != len(words):
        seen: set[Codeword] = set()
        for w in words:
            if w in seen:
                raise CodebookFormatError(f"duplicate codeword {w}")
            seen.add(w)
    try:
        book = Codebook(n=n, k=k, d=d, codewords=tuple(words))
    except ValueError as exc:
        raise CodebookFormatError(str(exc)) from exc
    book.validate()
    return book


def serialize_codebook(book: Codebook) -> str:
    """Render the canonical JSON document (keys sorted, codewords in stored order)."""
    doc = {
        "n": book.n,
        "k": book.k,
        "d": book.d,
        "codewords": book.bitstrings(),
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_codebook(path) -> Codebook:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_codebook(fh.read())


def save_codebook(book: Codebook, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_codebook(book))


def pairwise_distance_counts(values: Sequence[int]) -> np.ndarray:
    """Matrix of pairwise Hamming distances between integer codeword values."""
    vals = np.asarray(values, dtype=np.uint32)
    return np.bitwise_count(vals[:, None] ^ vals[None, :]).astype(np.int64)
