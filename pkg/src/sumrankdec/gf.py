"""Exact arithmetic in GF(q) and GF(q^m) towers, with basis expansion maps.

Field elements are plain Python integers.  An element of GF(p^e) with
polynomial coefficients (d_0, ..., d_{e-1}) over GF(p) has code
sum_i d_i * p^i, and an element of GF(q^m) with polynomial coefficients
(c_0, ..., c_{m-1}) over GF(q) = GF(p^e) has code sum_j c_j * q^j.  Codes
are therefore base-p positional in every tower, addition is digit-wise
mod p, and 0 / 1 always encode the additive / multiplicative identities.
GF(q) embeds into GF(q^m) without re-encoding (codes below q are the
constant polynomials).

Field objects expose vectorised operations on numpy int64 arrays of codes.
Fields of order up to TABLE_LIMIT get discrete exp/log tables built from a
multiplicative generator; larger fields fall back to per-element polynomial
arithmetic (correct but slow, see the package README for scale limits).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "PrimeField",
    "ExtField",
    "FieldTower",
    "Scalar",
    "default_modulus",
    "TABLE_LIMIT",
]

# Largest field order for which exp/log tables are built.
TABLE_LIMIT = 1 << 20


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Polynomial helpers over a coefficient field K.
#
# Polynomials are little-endian lists of integer codes.  They are used for
# modulus validation, inversion and table bootstrap only, so they stay on the
# plain-int scalar paths (K._add_i and friends).
# ---------------------------------------------------------------------------


def _poly_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_sub(K, f: Sequence[int], g: Sequence[int]) -> list[int]:
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else 0
        b = g[i] if i < len(g) else 0
        out.append(K._add_i(a, K._neg_i(b)))
    return _poly_trim(out)


def _poly_mul(K, f: Sequence[int], g: Sequence[int]) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = K._add_i(out[i + j], K._mul_i(a, b))
    return _poly_trim(out)


def _poly_divmod(K, f: Sequence[int], g: Sequence[int]) -> tuple[list[int], list[int]]:
    g = _poly_trim(list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = _poly_trim(list(f))
    if len(rem) < len(g):
        return [], rem
    quo = [0] * (len(rem) - len(g) + 1)
    ginv = K._inv_i(g[-1])
    while len(rem) >= len(g):
        shift = len(rem) - len(g)
        c = K._mul_i(rem[-1], ginv)
        quo[shift] = c
        for i, gi in enumerate(g):
            if gi:
                rem[shift + i] = K._add_i(rem[shift + i], K._neg_i(K._mul_i(c, gi)))
        _poly_trim(rem)
    return _poly_trim(quo), rem


def _poly_mod(K, f, g):
    return _poly_divmod(K, f, g)[1]


def _poly_gcd(K, f, g) -> list[int]:
    a, b = _poly_trim(list(f)), _poly_trim(list(g))
    while b:
        a, b = b, _poly_mod(K, a, b)
    if a:
        lead_inv = K._inv_i(a[-1])
        a = [K._mul_i(c, lead_inv) for c in a]
    return a


def _poly_mulmod(K, f, g, mod):
    return _poly_mod(K, _poly_mul(K, f, g), mod)


def _poly_powmod(K, f, exp: int, mod) -> list[int]:
    result = [1]
    base = _poly_mod(K, f, mod)
    while exp > 0:
        if exp & 1:
            result = _poly_mulmod(K, result, base, mod)
        base = _poly_mulmod(K, base, base, mod)
        exp >>= 1
    return result


def _poly_inv_mod(K, f, mod) -> list[int]:
    """Inverse of f modulo `mod`, assuming gcd(f, mod) = 1."""
    old_r, r = _poly_trim(list(mod)), _poly_mod(K, f, mod)
    old_t: list[int] = []
    t: list[int] = [1]
    while r:
        q, rem = _poly_divmod(K, old_r, r)
        old_r, r = r, rem
        old_t, t = t, _poly_sub(K, old_t, _poly_mul(K, q, t))
    if len(old_r) != 1:
        raise ZeroDivisionError("element is not invertible modulo the given polynomial")
    c = K._inv_i(old_r[0])
    return _poly_trim([K._mul_i(c, x) for x in old_t])


def is_irreducible(K, f: Sequence[int]) -> bool:
    """Rabin's deterministic irreducibility test for a monic f over K."""
    f = _poly_trim(list(f))
    n = len(f) - 1
    if n < 1:
        return False
    if f[-1] != 1:
        raise ValueError("modulus must be monic")
    if n == 1:
        return True
    Q = K.order
    x = [0, 1]
    h = _poly_powmod(K, x, Q**n, f)
    if _poly_sub(K, h, x):
        return False
    for r in _prime_factors(n):
        h = _poly_powmod(K, x, Q ** (n // r), f)
        g = _poly_gcd(K, _poly_sub(K, h, x), f)
        if len(g) != 1:
            return False
    return True


def default_modulus(K, degree: int) -> list[int]:
    """First monic irreducible of the given degree over K, in code order.

    Candidates are enumerated by the integer whose base-|K| digits are the
    non-leading coefficients, so the result is deterministic.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    Q = K.order
    for code in range(Q**degree):
        coeffs = []
        c = code
        for _ in range(degree):
            c, d = divmod(c, Q)
            coeffs.append(d)
        coeffs.append(1)
        if is_irreducible(K, coeffs):
            return coeffs
    raise RuntimeError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# Field backends
# ---------------------------------------------------------------------------


def _unwrap(a: np.ndarray):
    return int(a) if a.ndim == 0 else a


class PrimeField:
    """GF(p) with elements 0..p-1."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.order = p
        self.pdigits = 1
        self._inv_table: np.ndarray | None = None

    # scalar (plain int) paths
    def _add_i(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def _neg_i(self, a: int) -> int:
        return (-a) % self.p

    def _mul_i(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def _inv_i(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return pow(a, self.p - 2, self.p)

    def _pow_i(self, a: int, k: int) -> int:
        return pow(a, k, self.p)

    # vectorised paths (accept ints or int64 arrays of codes)
    def add(self, a, b):
        return _unwrap((np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64)) % self.p)

    def neg(self, a):
        return _unwrap((-np.asarray(a, dtype=np.int64)) % self.p)

    def sub(self, a, b):
        return _unwrap((np.asarray(a, dtype=np.int64) - np.asarray(b, dtype=np.int64)) % self.p)

    def mul(self, a, b):
        return _unwrap((np.asarray(a, dtype=np.int64) * np.asarray(b, dtype=np.int64)) % self.p)

    def inv(self, a):
        arr = np.asarray(a, dtype=np.int64)
        if np.any(arr == 0):
            raise ZeroDivisionError("division by zero in GF(p)")
        if self._inv_table is None:
            self._inv_table = np.array(
                [0] + [pow(x, self.p - 2, self.p) for x in range(1, self.p)], dtype=np.int64
            )
        return _unwrap(self._inv_table[arr])

    def pow(self, a: int, k: int) -> int:
        return pow(int(a), int(k), self.p)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[1] == 0:
            return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        # int64 is safe: entries < p, so products sum to < p^2 * inner
        assert self.p * self.p * a.shape[1] < 2**62
        return (a @ b) % self.p

    def sum_axis(self, x: np.ndarray, axis: int) -> np.ndarray:
        return np.asarray(x, dtype=np.int64).sum(axis=axis) % self.p

    def random(self, rng: np.random.Generator, size) -> np.ndarray:
        return rng.integers(0, self.order, size=size, dtype=np.int64)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class ExtField:
    """GF(|sub|^deg) as sub[x] modulo a monic irreducible polynomial."""

    def __init__(self, subfield, modulus: Sequence[int], check_irreducible: bool = True):
        modulus = [int(c) for c in modulus]
        if len(modulus) < 2 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 1")
        if any(c < 0 or c >= subfield.order for c in modulus):
            raise ValueError("modulus coefficients out of range for the subfield")
        if check_irreducible and not is_irreducible(subfield, modulus):
            raise ValueError("modulus is reducible over the subfield")
        self.subfield = subfield
        self.modulus = tuple(modulus)
        self.deg = len(modulus) - 1
        self.order = subfield.order ** self.deg
        self.char = subfield.char
        self.pdigits = subfield.pdigits * self.deg
        # x^deg reduced: the negated non-leading modulus coefficients
        self._xred = tuple(subfield._neg_i(c) for c in modulus[:-1])
        self._exp: np.ndarray | None = None
        self._log: np.ndarray | None = None
        self.generator: int | None = None

    # ---- coefficient conversions -------------------------------------
    def _coeffs(self, a: int) -> list[int]:
        out = []
        q = self.subfield.order
        for _ in range(self.deg):
            a, c = divmod(a, q)
            out.append(c)
        return out

    def _from_coeffs(self, cs: Iterable[int]) -> int:
        out = 0
        q = self.subfield.order
        for c in reversed(list(cs)):
            out = out * q + c
        return out

    # ---- scalar (plain int) paths --------------------------------------
    def _add_i(self, a: int, b: int) -> int:
        p = self.char
        out = 0
        mult = 1
        for _ in range(self.pdigits):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def _neg_i(self, a: int) -> int:
        p = self.char
        out = 0
        mult = 1
        for _ in range(self.pdigits):
            out += ((p - a % p) % p) * mult
            a //= p
            mult *= p
        return out

    def _mul_i(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        sub = self.subfield
        n = self.deg
        fa = self._coeffs(a)
        fb = self._coeffs(b)
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(fa):
            if ai == 0:
                continue
            for j, bj in enumerate(fb):
                if bj:
                    prod[i + j] = sub._add_i(prod[i + j], sub._mul_i(ai, bj))
        for i in range(2 * n - 2, n - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j, rj in enumerate(self._xred):
                    if rj:
                        prod[i - n + j] = sub._add_i(prod[i - n + j], sub._mul_i(c, rj))
        return self._from_coeffs(prod[:n])

    def _inv_i(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("division by zero in GF(q^m)")
        inv = _poly_inv_mod(self.subfield, self._coeffs(a), list(self.modulus))
        inv += [0] * (self.deg - len(inv))
        return self._from_coeffs(inv)

    def _pow_i(self, a: int, k: int) -> int:
        if k < 0:
            return self._pow_i(self._inv_i(a), -k)
        result = 1
        base = a
        while k > 0:
            if k & 1:
                result = self._mul_i(result, base)
            base = self._mul_i(base, base)
            k >>= 1
        return result

    # ---- exp/log tables -------------------------------------------------
    def _find_generator(self) -> int:
        n1 = self.order - 1
        factors = _prime_factors(n1)
        candidates = []
        if self.deg >= 2:
            candidates.append(self.subfield.order)  # the residue class of x
        candidates.extend(c for c in range(2, self.order) if c not in candidates)
        for g in candidates:
            if all(self._pow_i(g, n1 // r) != 1 for r in factors):
                return g
        raise RuntimeError("no multiplicative generator found")  # unreachable

    def _ensure_tables(self) -> bool:
        if self._exp is not None:
            return True
        if self.order > TABLE_LIMIT:
            return False
        g = self._find_generator()
        n1 = self.order - 1
        exp = np.zeros(n1, dtype=np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        v = 1
        for i in range(n1):
            exp[i] = v
            log[v] = i
            v = self._mul_i(v, g)
        self.generator = g
        self._exp = exp
        self._log = log
        return True

    # ---- vectorised paths ------------------------------------------------
    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        p = self.char
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        mult = 1
        for _ in range(self.pdigits):
            out += ((a % p) + (b % p)) % p * mult
            a = a // p
            b = b // p
            mult *= p
        return _unwrap(out)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        p = self.char
        out = np.zeros(a.shape, dtype=np.int64)
        mult = 1
        for _ in range(self.pdigits):
            out += (p - a % p) % p * mult
            a = a // p
            mult *= p
        return _unwrap(out)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._ensure_tables():
            mask = (a == 0) | (b == 0)
            idx = (self._log[a] + self._log[b]) % (self.order - 1)
            out = np.where(mask, 0, self._exp[idx])
            return _unwrap(out)
        if a.ndim == 0 and b.ndim == 0:
            return self._mul_i(int(a), int(b))
        fn = np.frompyfunc(self._mul_i, 2, 1)
        return fn(a, b).astype(np.int64)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("division by zero in GF(q^m)")
        if self._ensure_tables():
            n1 = self.order - 1
            return _unwrap(self._exp[(n1 - self._log[a]) % n1])
        if a.ndim == 0:
            return self._inv_i(int(a))
        fn = np.frompyfunc(self._inv_i, 1, 1)
        return fn(a).astype(np.int64)

    def pow(self, a: int, k: int) -> int:
        return self._pow_i(int(a), int(k))

    def sum_axis(self, x: np.ndarray, axis: int) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        p = self.char
        out = np.zeros(tuple(s for i, s in enumerate(x.shape) if i != axis % x.ndim), dtype=np.int64)
        mult = 1
        for _ in range(self.pdigits):
            out += (x % p).sum(axis=axis) % p * mult
            x = x // p
            mult *= p
        return out

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        rows, inner = a.shape
        cols = b.shape[1]
        if inner == 0:
            return np.zeros((rows, cols), dtype=np.int64)
        if self._ensure_tables():
            prods = self.mul(a[:, :, None], b[None, :, :])
            return self.sum_axis(prods, axis=1)
        out = np.zeros((rows, cols), dtype=np.int64)
        for i in range(rows):
            for j in range(cols):
                acc = 0
                for k in range(inner):
                    acc = self._add_i(acc, self._mul_i(int(a[i, k]), int(b[k, j])))
                out[i, j] = acc
        return out

    def random(self, rng: np.random.Generator, size) -> np.ndarray:
        return rng.integers(0, self.order, size=size, dtype=np.int64)

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.subfield == self.subfield
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ExtField", self.subfield, self.modulus))

    def __repr__(self):
        return f"GF({self.subfield.order}^{self.deg})"


# ---------------------------------------------------------------------------
# Field tower with basis expansion
# ---------------------------------------------------------------------------


class FieldTower:
    """GF(p) <= GF(q) <= GF(q^m) with a fixed ordered expansion basis.

    Parameters
    ----------
    p : characteristic (prime).
    e : degree of GF(q) over GF(p); base_modulus required when e > 1.
    m : degree of GF(q^m) over GF(q).
    ext_modulus : little-endian coefficients (codes over GF(q)) of a monic
        irreducible polynomial of degree m.
    basis : optional m-tuple of GF(q^m) codes used by the expansion map;
        defaults to the polynomial basis (1, x, ..., x^(m-1)).  Must be
        linearly independent over GF(q).
    """

    def __init__(
        self,
        p: int,
        e: int,
        m: int,
        ext_modulus: Sequence[int],
        base_modulus: Sequence[int] | None = None,
        basis: Sequence[int] | None = None,
    ):
        if e < 1 or m < 1:
            raise ValueError("extension degrees must be >= 1")
        self.p = p
        self.e = e
        self.m = m
        if e == 1:
            if base_modulus is not None:
                raise ValueError("base_modulus only applies when e > 1")
            self.base_field = PrimeField(p)
            self.base_modulus = None
        else:
            if base_modulus is None:
                raise ValueError("base_modulus required when e > 1")
            if len(base_modulus) != e + 1:
                raise ValueError("base_modulus must have degree e")
            self.base_field = ExtField(PrimeField(p), base_modulus)
            self.base_modulus = tuple(int(c) for c in base_modulus)
        if len(ext_modulus) != m + 1:
            raise ValueError("ext_modulus must have degree m")
        self.ext_field = ExtField(self.base_field, ext_modulus)
        self.ext_modulus = tuple(int(c) for c in ext_modulus)
        self.q = self.base_field.order
        self.order = self.ext_field.order

        if basis is None:
            self.basis = tuple(self.q**j for j in range(m))
            self._bmat = None
            self._bmat_inv = None
        else:
            basis = tuple(int(b) for b in basis)
            if len(basis) != m:
                raise ValueError("basis must have m elements")
            if any(b < 0 or b >= self.order for b in basis):
                raise ValueError("basis element out of range")
            self.basis = basis
            bmat = np.zeros((m, m), dtype=np.int64)
            for j, b in enumerate(basis):
                bmat[:, j] = self._poly_digits(b)
            self._bmat = bmat
            self._bmat_inv = self._invert_base_matrix(bmat)

    @classmethod
    def standard(cls, p: int, m: int, e: int = 1) -> "FieldTower":
        """Tower with deterministically chosen default moduli."""
        if e == 1:
            return cls(p, 1, m, default_modulus(PrimeField(p), m))
        base_mod = default_modulus(PrimeField(p), e)
        base = ExtField(PrimeField(p), base_mod)
        return cls(p, e, m, default_modulus(base, m), base_modulus=base_mod)

    # ---- small helpers ---------------------------------------------------
    def _poly_digits(self, a: int) -> np.ndarray:
        out = np.zeros(self.m, dtype=np.int64)
        for j in range(self.m):
            a, out[j] = divmod(a, self.q)
        return out

    def _invert_base_matrix(self, bmat: np.ndarray) -> np.ndarray:
        # tiny Gauss-Jordan over GF(q); raises if the basis is dependent
        K = self.base_field
        m = self.m
        a = bmat.copy()
        inv = np.eye(m, dtype=np.int64)
        for col in range(m):
            piv = next((r for r in range(col, m) if a[r, col] != 0), None)
            if piv is None:
                raise ValueError("basis elements are linearly dependent over GF(q)")
            if piv != col:
                a[[col, piv]] = a[[piv, col]]
                inv[[col, piv]] = inv[[piv, col]]
            f = K.inv(int(a[col, col]))
            a[col] = K.mul(f, a[col])
            inv[col] = K.mul(f, inv[col])
            for r in range(m):
                if r != col and a[r, col] != 0:
                    fac = int(a[r, col])
                    a[r] = K.sub(a[r], K.mul(fac, a[col]))
                    inv[r] = K.sub(inv[r], K.mul(fac, inv[col]))
        return inv

    # ---- scalar arithmetic (codes in GF(q^m)) -----------------------------
    def add(self, a: int, b: int) -> int:
        return int(self.ext_field.add(a, b))

    def sub(self, a: int, b: int) -> int:
        return int(self.ext_field.sub(a, b))

    def neg(self, a: int) -> int:
        return int(self.ext_field.neg(a))

    def mul(self, a: int, b: int) -> int:
        return int(self.ext_field.mul(a, b))

    def inv(self, a: int) -> int:
        return int(self.ext_field.inv(a))

    def pow(self, a: int, k: int) -> int:
        return self.ext_field.pow(a, k)

    @property
    def alpha(self) -> int:
        """Code of the residue class of the indeterminate in GF(q^m)."""
        if self.m < 2:
            raise ValueError("alpha undefined for m = 1")
        return self.q

    def alpha_power(self, k: int) -> int:
        return self.pow(self.alpha, k)

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        n1 = self.order - 1
        order = n1
        for r in _prime_factors(n1):
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    # ---- expansion maps ---------------------------------------------------
    def ext(self, a: int) -> np.ndarray:
        """Coordinates of a in the configured basis (length-m GF(q) codes)."""
        digits = self._poly_digits(int(a))
        if self._bmat_inv is None:
            return digits
        return self.base_field.matmul(self._bmat_inv, digits[:, None])[:, 0]

    def unext(self, v) -> int:
        v = np.asarray(v, dtype=np.int64)
        if v.shape != (self.m,):
            raise ValueError(f"expected a length-{self.m} coordinate vector")
        if np.any(v < 0) or np.any(v >= self.q):
            raise ValueError("coordinates out of range for GF(q)")
        digits = v if self._bmat is None else self.base_field.matmul(self._bmat, v[:, None])[:, 0]
        code = 0
        for d in reversed(digits.tolist()):
            code = code * self.q + int(d)
        return code

    def ext_array(self, arr: np.ndarray) -> np.ndarray:
        """Element-wise expansion of an (r, c) code array into (r*m, c).

        Entry (i, j) expands column-wise into rows i*m .. i*m+m-1 of column j.
        """
        arr = np.asarray(arr, dtype=np.int64)
        r, c = arr.shape
        digits = np.zeros((r, self.m, c), dtype=np.int64)
        work = arr.copy()
        for j in range(self.m):
            digits[:, j, :] = work % self.q
            work //= self.q
        if self._bmat_inv is not None:
            flat = digits.transpose(1, 0, 2).reshape(self.m, r * c)
            flat = self.base_field.matmul(self._bmat_inv, flat)
            digits = flat.reshape(self.m, r, c).transpose(1, 0, 2)
        return digits.reshape(r * self.m, c)

    def ext_matrix(self, M) -> "Matrix":
        """Matrix version of ext(); expands a GF(q^m) matrix over GF(q)."""
        from .linalg import Matrix

        if M.field != self.ext_field:
            raise ValueError("matrix is not over this tower's extension field")
        return Matrix(self.base_field, self.ext_array(M.array), _checked=True)

    def lift(self, M) -> "Matrix":
        """Reinterpret a GF(q) matrix as a GF(q^m) matrix (codes unchanged)."""
        from .linalg import Matrix

        if M.field != self.base_field:
            raise ValueError("matrix is not over this tower's base field")
        return Matrix(self.ext_field, M.array, _checked=True)

    def scalar(self, code: int) -> "Scalar":
        return Scalar(self, int(code))

    # ---- serialization -----------------------------------------------------
    def to_dict(self) -> dict:
        d = {"p": self.p, "e": self.e, "m": self.m, "ext_modulus": list(self.ext_modulus)}
        if self.base_modulus is not None:
            d["base_modulus"] = list(self.base_modulus)
        if self._bmat is not None:
            d["basis"] = list(self.basis)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "FieldTower":
        return cls(
            int(d["p"]),
            int(d.get("e", 1)),
            int(d["m"]),
            d["ext_modulus"],
            base_modulus=d.get("base_modulus"),
            basis=d.get("basis"),
        )

    def __eq__(self, other):
        return (
            isinstance(other, FieldTower)
            and (other.p, other.e, other.m) == (self.p, self.e, self.m)
            and other.base_modulus == self.base_modulus
            and other.ext_modulus == self.ext_modulus
            and other.basis == self.basis
        )

    def __hash__(self):
        return hash((self.p, self.e, self.m, self.base_modulus, self.ext_modulus, self.basis))

    def __repr__(self):
        return f"FieldTower(GF({self.q}^{self.m}), p={self.p}, e={self.e})"


@dataclass(frozen=True)
class Scalar:
    """A GF(q^m) element bound to its tower, with operator sugar."""

    tower: FieldTower
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.tower.order:
            raise ValueError(f"code {self.code} out of range for {self.tower!r}")

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.tower != self.tower:
                raise ValueError("operands belong to different field towers")
            return other
        if isinstance(other, (int, np.integer)):
            return Scalar(self.tower, int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return Scalar(self.tower, self.tower.add(self.code, other.code))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return Scalar(self.tower, self.tower.sub(self.code, other.code))

    def __mul__(self, other):
        other = self._coerce(other)
        return Scalar(self.tower, self.tower.mul(self.code, other.code))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.tower, self.tower.neg(self.code))

    def __truediv__(self, other):
        other = self._coerce(other)
        return Scalar(self.tower, self.tower.mul(self.code, self.tower.inv(other.code)))

    def __pow__(self, k: int):
        return Scalar(self.tower, self.tower.pow(self.code, k))

    def inverse(self) -> "Scalar":
        return Scalar(self.tower, self.tower.inv(self.code))

    def ext(self) -> np.ndarray:
        return self.tower.ext(self.code)

    def __int__(self):
        return self.code

    def __repr__(self):
        return f"Scalar({self.code} in GF({self.tower.q}^{self.tower.m}))"
