"""Vectorized evaluation of configuration formulas on whole configuration spaces.

Every algebra element is encoded as a small bitmask such that join is
bitwise OR and meet is bitwise AND:

* ``bool2``: one bit, ``0 -> 0``, ``1 -> 1``;
* ``kleene3``: two-bit thermometer, ``0 -> 00``, ``u -> 01``, ``1 -> 11``;
* ``four``: the product lattice 2x2, ``0 -> 00``, ``u -> 01``, ``w -> 10``,
  ``1 -> 11``;
* ``fuzzy`` on the grid ``n/D``: D-bit thermometer, ``n/D -> 2**n - 1``.

In all four encodings the complement is "reverse the bits, then negate".

Because join and meet act bitwise, coalescing decomposes into one Boolean
problem per bit: bit ``b`` of ``(z1 # z2)(S)`` is set iff some cover
``A | B == S`` has bit ``b`` set in both ``z1(A)`` and ``z2(B)``.  Over the
full power set this is a union product, computed with zeta/Moebius
transforms in ``O(N 2**N)`` per bit.  Size-bounded spaces enumerate their
covers explicitly instead.
"""

from __future__ import annotations

import itertools
import math
from typing import Dict, List, Optional, Sequence

import numpy as np

from .algebra import Algebra, Element
from .semantics import Configuration, EvaluationError, Interaction
from .syntax import Atom, Coalesce, FNot, FOr, Neg, Pil, Plus, Top

__all__ = ["BitEncoding", "ConfigurationSpace", "MAX_FULL_UNIVERSE", "MAX_FUZZY_DENOMINATOR"]

MAX_FULL_UNIVERSE = 18
MAX_FUZZY_DENOMINATOR = 62

_FINITE_CODES = {
    Algebra.BOOL2: {"0": 0b0, "1": 0b1},
    Algebra.KLEENE3: {"0": 0b00, "u": 0b01, "1": 0b11},
    Algebra.FOUR: {"0": 0b00, "u": 0b01, "w": 0b10, "1": 0b11},
}


def _reverse_bits(x: int, width: int) -> int:
    return int(format(x, f"0{width}b")[::-1], 2)


class BitEncoding:
    """Bitmask encoding of one algebra (or a fuzzy grid with denominator ``D``)."""

    def __init__(self, algebra: Algebra, denominator: Optional[int] = None):
        self.algebra = algebra
        if algebra.is_finite:
            table = _FINITE_CODES[algebra]
            self.width = 2 if algebra is not Algebra.BOOL2 else 1
            self._encode = {algebra.element(s): c for s, c in table.items()}
        else:
            if denominator is None or not 1 <= denominator <= MAX_FUZZY_DENOMINATOR:
                raise ValueError(
                    f"fuzzy grid denominator must lie in 1..{MAX_FUZZY_DENOMINATOR}, got {denominator}"
                )
            self.width = denominator
            self._encode = {
                algebra.element(f"{n}/{denominator}"): (1 << n) - 1 for n in range(denominator + 1)
            }
        self.denominator = denominator
        self._decode = {c: e for e, c in self._encode.items()}
        self.top = (1 << self.width) - 1
        codes = sorted(self._decode)
        self._valid = np.array(codes, dtype=np.int64)
        self._complement = np.array(
            [self.top ^ _reverse_bits(c, self.width) for c in codes], dtype=np.int64
        )

    def encode(self, e: Element) -> int:
        try:
            return self._encode[e]
        except KeyError:
            raise ValueError(f"{e!r} is not representable in this encoding") from None

    def decode(self, code: int) -> Element:
        return self._decode[int(code)]

    def complement(self, codes: np.ndarray) -> np.ndarray:
        return self._complement[np.searchsorted(self._valid, codes)]


class ConfigurationSpace:
    """All nonempty sets of ``interactions`` (optionally up to ``max_size``).

    Configurations are ordered by size, then lexicographically by the
    positions of their members in ``interactions``; :meth:`evaluate` returns
    one code per configuration in that order.
    """

    def __init__(self, interactions: Sequence[Interaction], max_size: Optional[int] = None):
        self.interactions = list(interactions)
        if not self.interactions:
            raise ValueError("empty interaction universe")
        if len(set(self.interactions)) != len(self.interactions):
            raise ValueError("duplicate interactions in the universe")
        first = self.interactions[0]
        for a in self.interactions:
            if a.ports != first.ports or a.algebra is not first.algebra:
                raise ValueError("interactions must share ports and algebra")
        self.ports = first.ports
        self.algebra = first.algebra
        n = len(self.interactions)
        self.max_size = n if max_size is None else max(1, min(max_size, n))
        self.full = self.max_size == n
        if self.full and n > MAX_FULL_UNIVERSE:
            raise ValueError(
                f"{n} interactions exceed the full power-set limit of {MAX_FULL_UNIVERSE}; set max_size"
            )

        denominator = None
        if self.algebra is Algebra.FUZZY:
            denominator = 1
            for a in self.interactions:
                for w in a.weights:
                    denominator = math.lcm(denominator, w.value.denominator)
        self.encoding = BitEncoding(self.algebra, denominator)
        enc = self.encoding
        self._port_codes = {
            p: np.array([enc.encode(a.weights[i]) for a in self.interactions], dtype=np.int64)
            for i, p in enumerate(self.ports)
        }

        combos: List[tuple] = []
        for r in range(1, self.max_size + 1):
            combos.extend(itertools.combinations(range(n), r))
        self._combos = combos
        masks = np.array([sum(1 << i for i in c) for c in combos], dtype=np.int64)
        if self.full:
            # native index = bitmask; slot 0 is the (unused) empty set
            self._native = masks
        else:
            self._native = np.arange(len(combos), dtype=np.int64)
            self._build_bounded(combos, masks)

    def __len__(self) -> int:
        return len(self._combos)

    # -- bounded-size machinery ------------------------------------------

    def _build_bounded(self, combos, masks) -> None:
        position = {int(m): i for i, m in enumerate(masks)}
        flat, starts = [], []
        cover_a, cover_b, cover_starts = [], [], []
        for c in combos:
            starts.append(len(flat))
            flat.extend(c)
            cover_starts.append(len(cover_a))
            for sides in itertools.product((0, 1, 2), repeat=len(c)):
                left = sum(1 << i for i, s in zip(c, sides) if s != 1)
                right = sum(1 << i for i, s in zip(c, sides) if s != 0)
                if left and right:
                    cover_a.append(position[left])
                    cover_b.append(position[right])
        self._flat = np.array(flat, dtype=np.int64)
        self._starts = np.array(starts, dtype=np.int64)
        self._cover_a = np.array(cover_a, dtype=np.int64)
        self._cover_b = np.array(cover_b, dtype=np.int64)
        self._cover_starts = np.array(cover_starts, dtype=np.int64)

    # -- evaluation -------------------------------------------------------

    def configuration(self, index: int) -> Configuration:
        return Configuration.of(self.interactions[i] for i in self._combos[index])

    def configurations(self):
        for i in range(len(self)):
            yield self.configuration(i)

    def decode(self, code: int) -> Element:
        return self.encoding.decode(code)

    def _pil_vector(self, f) -> np.ndarray:
        """Codes of an interaction formula on each interaction of the universe."""
        if isinstance(f, Top):
            return np.full(len(self.interactions), self.encoding.top, dtype=np.int64)
        if isinstance(f, Atom):
            try:
                return self._port_codes[f.port]
            except KeyError:
                raise EvaluationError(
                    f"port {f.port!r} is not declared by the interactions (ports: {', '.join(self.ports)})"
                ) from None
        if isinstance(f, FNot):
            return self.encoding.complement(self._pil_vector(f.arg))
        if isinstance(f, FOr):
            return self._pil_vector(f.left) | self._pil_vector(f.right)
        raise TypeError(f"not an interaction formula: {f!r}")

    def _pil_on_configs(self, f) -> np.ndarray:
        v = self._pil_vector(f)
        if self.full:
            n = len(self.interactions)
            out = np.empty(1 << n, dtype=np.int64)
            out[0] = self.encoding.top
            for i in range(n):
                out[1 << i : 2 << i] = out[: 1 << i] & v[i]
            return out
        return np.bitwise_and.reduceat(v[self._flat], self._starts)

    def _coalesce(self, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        if not self.full:
            vals = f[self._cover_a] & g[self._cover_b]
            return np.bitwise_or.reduceat(vals, self._cover_starts)
        n = len(self.interactions)
        width = self.encoding.width
        shifts = np.arange(width, dtype=np.int64)[:, None]
        fb = (f[None, :] >> shifts) & 1
        gb = (g[None, :] >> shifts) & 1
        fb[:, 0] = 0
        gb[:, 0] = 0
        _zeta(fb, n)
        _zeta(gb, n)
        h = fb * gb
        _moebius(h, n)
        return ((h > 0).astype(np.int64) << shifts).sum(axis=0)

    def _native_eval(self, z, memo: Dict[int, np.ndarray]) -> np.ndarray:
        hit = memo.get(id(z))
        if hit is not None:
            return hit
        if isinstance(z, Pil):
            out = self._pil_on_configs(z.formula)
        elif isinstance(z, Neg):
            out = self.encoding.complement(self._native_eval(z.arg, memo))
        elif isinstance(z, Plus):
            out = self._native_eval(z.left, memo) | self._native_eval(z.right, memo)
        elif isinstance(z, Coalesce):
            out = self._coalesce(self._native_eval(z.left, memo), self._native_eval(z.right, memo))
        else:
            raise TypeError(f"not a configuration formula: {z!r}")
        memo[id(z)] = out
        return out

    def evaluate(self, z) -> np.ndarray:
        """Codes of ``z`` on every configuration, in canonical order."""
        if not isinstance(z, (Pil, Neg, Plus, Coalesce)):
            z = Pil(z)
        native = self._native_eval(z, {})
        return native[self._native]

    def values(self, z) -> List[Element]:
        return [self.decode(c) for c in self.evaluate(z)]


def _zeta(a: np.ndarray, n: int) -> None:
    """In-place subset-sum transform along the last axis (length ``2**n``)."""
    for i in range(n):
        v = a.reshape(a.shape[0], -1, 2, 1 << i)
        v[:, :, 1, :] += v[:, :, 0, :]


def _moebius(a: np.ndarray, n: int) -> None:
    for i in range(n):
        v = a.reshape(a.shape[0], -1, 2, 1 << i)
        v[:, :, 1, :] -= v[:, :, 0, :]
