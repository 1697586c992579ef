"""Extended-integer scalars and the dense matrix kernels everything else consumes.

Weight matrices are plain float64 ndarrays whose finite entries are integers;
the two infinities are numpy's ``inf``/``-inf``.  ``+inf`` encodes "no edge /
no walk" and ``-inf`` encodes "arbitrarily short" (negative-cycle influence).
Finite values stay far inside the exact-integer range of float64, so every
comparison and sum below is exact.
"""

from __future__ import annotations

import math
import operator
import sys

import numpy as np

POS_INF = math.inf
NEG_INF = -math.inf

_WORD_BITS = 64
_WORD_SHIFTS = np.arange(_WORD_BITS, dtype=np.uint64)
# packbits/unpackbits write byte 0 first, so viewing them as uint64 words only
# matches the bit layout on little-endian hosts
_LITTLE_ENDIAN = sys.byteorder == "little"
# above this size the one-shot (n, n, n) broadcast would need too much memory
_DENSE3D_LIMIT = 150


class VerificationError(RuntimeError):
    """An enabled self-check failed: the input or an internal stage is inconsistent."""


def ext_add(a, b):
    """Add two extended integers; +inf absorbs (a missing edge kills any walk)."""
    if a == POS_INF or b == POS_INF:
        return POS_INF
    if a == NEG_INF or b == NEG_INF:
        return NEG_INF
    return a + b


def ext_ceil_half(a):
    """Round half of ``a`` toward +inf; both infinities are fixed points.

    Works elementwise on ndarrays as well as on scalars.
    """
    return np.ceil(np.asarray(a, dtype=np.float64) / 2.0)


def as_square(matrix, name="matrix"):
    """Coerce to a square float64 ndarray or raise ValueError."""
    out = np.asarray(matrix, dtype=np.float64)
    if out.ndim != 2 or out.shape[0] != out.shape[1]:
        raise ValueError(f"{name} must be square, got shape {out.shape}")
    return out


def _conform_square_pair(a, b):
    a = as_square(a, "left operand")
    b = as_square(b, "right operand")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a, b


def minplus_product(a, b):
    """(min, +) product: out[i, j] = min_k ext_add(a[i, k], b[k, j])."""
    a, b = _conform_square_pair(a, b)
    n = a.shape[0]
    # inf + (-inf) -> nan under IEEE; only possible when both signs are present
    mixed = ((a == NEG_INF).any() or (b == NEG_INF).any()) and (
        (a == POS_INF).any() or (b == POS_INF).any()
    )
    if n == 0:
        return a.copy()
    with np.errstate(invalid="ignore"):  # the nans are repaired right below
        if n <= _DENSE3D_LIMIT:
            sums = a[:, :, None] + b[None, :, :]
            if mixed:
                sums[np.isnan(sums)] = POS_INF
            return sums.min(axis=1)
        out = np.empty_like(a)
        for i in range(n):
            sums = a[i][:, None] + b
            if mixed:
                sums[np.isnan(sums)] = POS_INF
            out[i] = sums.min(axis=0)
    return out


def bounded_hop_closure(a, hops):
    """Minimum walk weight over at most ``hops`` edges (plus the empty walk).

    Requires the diagonal convention a[i, i] <= 0, under which the k-fold
    (min, +) power of ``a`` equals the <=k-hop optimum.  The exponent is
    honored exactly (square-and-multiply), never rounded up.
    """
    a = as_square(a)
    hops = operator.index(hops)
    if hops < 1:
        raise ValueError(f"hop bound must be >= 1, got {hops}")
    result = None
    base = a
    e = hops
    while True:
        if e & 1:
            result = base if result is None else minplus_product(result, base)
        e >>= 1
        if not e:
            break
        base = minplus_product(base, base)
    if result is a:
        result = a.copy()
    return result


class BitMatrix:
    """Dense 0/1 matrix with each row packed into 64-bit words (bit j of word
    w holds column 64*w + j).  Padding bits past ``cols`` are always zero."""

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows, cols, words):
        self.rows = rows
        self.cols = cols
        self.words = words

    @classmethod
    def from_bool(cls, array) -> "BitMatrix":
        array = np.asarray(array, dtype=bool)
        if array.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {array.shape}")
        rows, cols = array.shape
        nwords = (cols + _WORD_BITS - 1) // _WORD_BITS
        if _LITTLE_ENDIAN:
            packed = np.packbits(array, axis=1, bitorder="little")
            buffer = np.zeros((rows, nwords * 8), dtype=np.uint8)
            buffer[:, : packed.shape[1]] = packed
            return cls(rows, cols, buffer.view(np.uint64))
        padded = np.zeros((rows, nwords * _WORD_BITS), dtype=np.uint64)
        padded[:, :cols] = array
        words = np.bitwise_or.reduce(
            padded.reshape(rows, nwords, _WORD_BITS) << _WORD_SHIFTS, axis=2
        )
        return cls(rows, cols, words)

    @classmethod
    def zeros(cls, rows, cols) -> "BitMatrix":
        nwords = (cols + _WORD_BITS - 1) // _WORD_BITS
        return cls(rows, cols, np.zeros((rows, nwords), dtype=np.uint64))

    def to_bool(self) -> np.ndarray:
        if self.words.size == 0:
            return np.zeros((self.rows, self.cols), dtype=bool)
        if _LITTLE_ENDIAN:
            as_bytes = np.ascontiguousarray(self.words).view(np.uint8)
            bits = np.unpackbits(as_bytes, axis=1, bitorder="little")
            return bits[:, : self.cols].view(bool)
        bits = (self.words[:, :, None] >> _WORD_SHIFTS) & np.uint64(1)
        return bits.reshape(self.rows, -1)[:, : self.cols].astype(bool)

    def get(self, i, j) -> int:
        word = int(self.words[i, j // _WORD_BITS])
        return (word >> (j % _WORD_BITS)) & 1

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and np.array_equal(self.words, other.words)
        )

    __hash__ = None

    def __repr__(self):
        return f"BitMatrix({self.rows}x{self.cols})"


def bool_product(p: BitMatrix, q: BitMatrix) -> BitMatrix:
    """Boolean matrix product: scan each row of ``p`` and OR together the rows
    of ``q`` selected by its set bits, one word at a time."""
    if p.cols != q.rows:
        raise ValueError(f"dimension mismatch: {p.cols} vs {q.rows}")
    out = np.zeros((p.rows, q.words.shape[1]), dtype=np.uint64)
    row_ids, col_ids = np.nonzero(p.to_bool())
    if row_ids.size:
        gathered = q.words[col_ids]
        lengths = np.bincount(row_ids, minlength=p.rows)
        nonempty = np.flatnonzero(lengths)
        starts = np.concatenate(([0], np.cumsum(lengths)))[nonempty]
        out[nonempty] = np.bitwise_or.reduceat(gathered, starts, axis=0)
    return BitMatrix(p.rows, q.cols, out)


def bool_closure(p: BitMatrix) -> BitMatrix:
    """Reflexive-transitive closure of a square 0/1 relation (repeated squaring)."""
    if p.rows != p.cols:
        raise ValueError(f"closure needs a square matrix, got {p.rows}x{p.cols}")
    current = BitMatrix.from_bool(p.to_bool() | np.eye(p.rows, dtype=bool))
    while True:
        squared = bool_product(current, current)
        if squared == current:
            return current
        current = squared
