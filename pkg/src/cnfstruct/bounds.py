"""Integer sequences and the potential-degree-pair machinery.

The central sequence enumerates the naturals whose binary representation is
not all ones (it skips 2^n - 1); it bounds the minimum variable degree of
minimally unsatisfiable clause-sets in the deficiency.  Two independent
implementations are provided: the closed form k + fld(k+1+fld(k+1)) and the
splitting recursion max_i min(2i, f(k-i+1)+i).  On top sit the auxiliary
index functions i, i', h, the jump set, the variable-count threshold nA, the
factorial two-adic sequence s2, and the bounds-improvement operator driven by
potential degree-pairs.
"""

from __future__ import annotations

import threading
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import InvalidBoundsFunction, ParameterOutOfRange

_INF = int(kernels.get_backend("pure").INF)


def _fld(x: int) -> int:
    """Integer part of the binary logarithm."""
    if x < 1:
        raise ParameterOutOfRange(f"fld needs a positive argument, got {x}")
    return x.bit_length() - 1


def nm(k: int) -> int:
    """Closed form: k + fld(k+1 + fld(k+1))."""
    if k < 1:
        raise ParameterOutOfRange(f"nm is defined for k >= 1, got {k}")
    return k + _fld(k + 1 + _fld(k + 1))


class _RecTable:
    """Growable memo for the recursion, shared and lock-protected."""

    def __init__(self):
        self._vals = kernels.nm_rec_table(1)
        self._lock = threading.Lock()

    def upto(self, K: int) -> np.ndarray:
        if K >= len(self._vals):
            with self._lock:
                if K >= len(self._vals):
                    self._vals = kernels.nm_rec_table(max(K, 2 * (len(self._vals) - 1)))
        return self._vals


_rec = _RecTable()


def nm_rec(k: int) -> int:
    """Memoised recursion max_i min(2i, nm(k-i+1)+i); independent of :func:`nm`."""
    if k < 1:
        raise ParameterOutOfRange(f"nm_rec is defined for k >= 1, got {k}")
    return int(_rec.upto(k)[k])


def nm_rec_table(K: int) -> np.ndarray:
    """Recursion values for 1..K as an array (index 0 unused)."""
    if K < 1:
        raise ParameterOutOfRange(f"table bound must be >= 1, got {K}")
    return _rec.upto(K)[: K + 1]


def nm_i(k: int) -> int:
    """Smallest i in [2, k] with i >= nm(k-i+1).

    The probe i - nm(k-i+1) is strictly increasing in i, so binary search.
    """
    if k < 2:
        raise ParameterOutOfRange(f"nm_i is defined for k >= 2, got {k}")
    lo, hi = 2, k
    while lo < hi:
        mid = (lo + hi) // 2
        if mid >= nm(k - mid + 1):
            hi = mid
        else:
            lo = mid + 1
    return lo


def nm_iprime(k: int) -> int:
    if k < 2:
        raise ParameterOutOfRange(f"nm_iprime is defined for k >= 2, got {k}")
    return k - nm_i(k) + 1


def nm_h(k: int) -> int:
    if k < 2:
        raise ParameterOutOfRange(f"nm_h is defined for k >= 2, got {k}")
    return nm(nm_iprime(k))


def is_jump(k: int) -> bool:
    """Membership in the jump set {2^(m+1) - m - 2 : m >= 1}."""
    if k < 1:
        raise ParameterOutOfRange(f"is_jump is defined for k >= 1, got {k}")
    m = 1
    while True:
        j = 2 ** (m + 1) - m - 2
        if j == k:
            return True
        if j > k:
            return False
        m += 1


def jump_set(upto: int) -> list:
    """All jump positions up to and including ``upto``."""
    out = []
    m = 1
    while True:
        j = 2 ** (m + 1) - m - 2
        if j > upto:
            return out
        out.append(j)
        m += 1


def nA(k: int) -> int:
    """Smallest n >= 0 with 2^n - n >= k (minimum variable count at deficiency k)."""
    if k < 1:
        raise ParameterOutOfRange(f"nA is defined for k >= 1, got {k}")
    n = 0
    while 2**n - n < k:
        n += 1
    return n


def s2(k: int) -> int:
    """Least s such that 2^k divides s! (equivalently s - popcount(s) >= k)."""
    if k < 1:
        raise ParameterOutOfRange(f"s2 is defined for k >= 1, got {k}")
    s = k + 1
    while s - s.bit_count() < k:
        s += 1
    return s


class BoundsFunction:
    """Finite monotone prefix [a_1..a_p] with an implicit +infinity tail.

    Only a_1 = 2 and monotonicity are checked; whether the prefix really
    bounds the minimum variable degree at each deficiency is the caller's
    responsibility (the shipped prefixes [2] and [2,4,5,6,8,8] do).
    """

    __slots__ = ("prefix",)

    def __init__(self, prefix):
        t = tuple(int(a) for a in prefix)
        if not t or t[0] != 2:
            raise InvalidBoundsFunction("prefix must start with a_1 = 2")
        if any(a > b for a, b in zip(t, t[1:])):
            raise InvalidBoundsFunction("prefix must be monotonically non-decreasing")
        self.prefix = t

    def __call__(self, k: int):
        """Value at k, or None for the +infinity tail."""
        if k < 1:
            raise ParameterOutOfRange(f"bounds functions start at k = 1, got {k}")
        return self.prefix[k - 1] if k <= len(self.prefix) else None

    def __len__(self) -> int:
        return len(self.prefix)

    def __eq__(self, other) -> bool:
        if isinstance(other, BoundsFunction):
            return self.prefix == other.prefix
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.prefix)

    def __repr__(self) -> str:
        return f"BoundsFunction({list(self.prefix)})"


class DegreePair(NamedTuple):
    e0: int
    e1: int


def _as_bounds_callable(f):
    if isinstance(f, BoundsFunction):
        return f
    if callable(f):
        return f
    return BoundsFunction(f)


def potp(f, k: int, m: int) -> frozenset:
    """Potential variable-degree pairs (e0, e1) for deficiency k and degree m.

    Pairs with 2 <= e0 <= e1 <= k, e0 + e1 = m, and f(k-e+1) + e >= m for
    both components, where the +infinity tail always satisfies the test.
    """
    if k < 2:
        raise ParameterOutOfRange(f"potp needs k >= 2, got {k}")
    if m < 4:
        raise ParameterOutOfRange(f"potp needs m >= 4, got {m}")
    g = _as_bounds_callable(f)

    def ok(e):
        v = g(k - e + 1)
        return v is None or v + e >= m

    out = []
    for e0 in range(max(2, m - k), m // 2 + 1):
        e1 = m - e0
        if e1 <= k and ok(e0) and ok(e1):
            out.append(DegreePair(e0, e1))
    return frozenset(out)


class _PotprecCache:
    """Per-prefix growable tables of the improvement operator."""

    def __init__(self):
        self._tables: dict[tuple, np.ndarray] = {}
        self._lock = threading.Lock()

    def upto(self, prefix: tuple, K: int) -> np.ndarray:
        vals = self._tables.get(prefix)
        if vals is None or K >= len(vals):
            with self._lock:
                vals = self._tables.get(prefix)
                if vals is None or K >= len(vals):
                    size = max(K, 64, 2 * (len(vals) - 1 if vals is not None else 0))
                    cap = np.full(size + 1, _INF, np.int64)
                    p = min(len(prefix), size)
                    cap[1 : p + 1] = prefix[:p]
                    vals = kernels.potprec_table(cap, size)
                    self._tables[prefix] = vals
        return vals


_potprec_cache = _PotprecCache()


def potprec_eval(prefix, k: int) -> int:
    """Value at k of the operator applied to a bounds function.

    f'(1) = 2; f'(k) is the largest degree m in [4, 2k] still admitting a
    potential degree-pair against the already-improved values, capped by the
    input function.  Always at most :func:`nm`.
    """
    if k < 1:
        raise ParameterOutOfRange(f"potprec is evaluated at k >= 1, got {k}")
    f = prefix if isinstance(prefix, BoundsFunction) else BoundsFunction(prefix)
    return int(_potprec_cache.upto(f.prefix, k)[k])


def potprec_table(prefix, K: int) -> np.ndarray:
    """Operator values 1..K as an array (index 0 unused)."""
    if K < 1:
        raise ParameterOutOfRange(f"table bound must be >= 1, got {K}")
    f = prefix if isinstance(prefix, BoundsFunction) else BoundsFunction(prefix)
    return _potprec_cache.upto(f.prefix, K)[: K + 1]


NM1_SEED = BoundsFunction((2, 4, 5, 6, 8, 8))


def _nm1_closed(k: int) -> int:
    # deviates from nm exactly at k = 2^m - m + 1 for m >= 3
    v = nm(k)
    m = 3
    while 2**m - m + 1 <= k:
        if 2**m - m + 1 == k:
            return v - 1
        m += 1
    return v


def nm1(k: int) -> int:
    """Improved upper bound: the operator applied to [2,4,5,6,8,8].

    Cross-checked against the closed characterisation (nm(k) - 1 exactly at
    k = 2^m - m + 1, m >= 3).
    """
    if k < 1:
        raise ParameterOutOfRange(f"nm1 is defined for k >= 1, got {k}")
    v = potprec_eval(NM1_SEED, k)
    expected = _nm1_closed(k)
    if v != expected:
        raise AssertionError(f"nm1({k}) = {v} disagrees with closed form {expected}")
    return v


def nm1_table(K: int) -> np.ndarray:
    if K < 1:
        raise ParameterOutOfRange(f"table bound must be >= 1, got {K}")
    vals = potprec_table(NM1_SEED, K)
    expected = np.array([0] + [_nm1_closed(k) for k in range(1, K + 1)], np.int64)
    if not np.array_equal(vals, expected):
        raise AssertionError("nm1 table disagrees with the closed characterisation")
    return vals
