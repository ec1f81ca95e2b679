"""Exact sparse polynomial arithmetic and the folding-polynomial family.

A polynomial in 1 to 3 variables is stored as a map from exponent tuples to
rational coefficients (``Fraction``).  Everything is exact until a caller
asks for a floating evaluation; the constructors below (Chebyshev, folding,
real folding, surface) therefore produce coefficients that are correct to
the last digit regardless of degree.

Variable order is fixed: 2-variable polynomials live in (x, y), 3-variable
ones in (x, y, z), and 1-variable ones use z (they parameterize the third
axis of the surface family).
"""

from __future__ import annotations

import functools
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]

#: Construction is exact at any degree, but coefficient growth makes degrees
#: beyond this desk-scale limit pointless for the downstream verifiers.
MAX_CONSTRUCTION_DEGREE = 50

_VAR_NAMES = {1: ("z",), 2: ("x", "y"), 3: ("x", "y", "z")}

_SPLIT = 134217729.0  # 2^27 + 1, Veltkamp splitter


def _two_prod(a: float, b: float) -> tuple[float, float]:
    """Error-free product: returns (p, err) with a*b == p + err exactly."""
    p = a * b
    ca = _SPLIT * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLIT * b
    bhi = cb - (cb - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def _dd_mul_float(hi: float, lo: float, f: float) -> tuple[float, float]:
    p, e = _two_prod(hi, f)
    e += lo * f
    s = p + e
    return s, e - (s - p)


def _dd_mul_dd(h1: float, l1: float, h2: float, l2: float) -> tuple[float, float]:
    p, e = _two_prod(h1, h2)
    e += h1 * l2 + l1 * h2
    s = p + e
    return s, e - (s - p)


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients.

    Zero coefficients are never stored; the zero polynomial has an empty
    term map.  Instances are safe to share between threads.
    """

    __slots__ = ("nvars", "_terms", "_float_cache")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Fraction | int]):
        if nvars not in (1, 2, 3):
            raise ValueError(f"nvars must be 1, 2 or 3, got {nvars}")
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in terms.items():
            exp = tuple(exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has wrong length for nvars={nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = Fraction(coeff)
            if c != 0:
                clean[exp] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_float_cache", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> Polynomial:
        return Polynomial(nvars, {})

    @staticmethod
    def constant(value: Fraction | int, nvars: int) -> Polynomial:
        return Polynomial(nvars, {(0,) * nvars: Fraction(value)})

    @staticmethod
    def variable(index: int, nvars: int) -> Polynomial:
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for nvars={nvars}")
        exp = [0] * nvars
        exp[index] = 1
        return Polynomial(nvars, {tuple(exp): Fraction(1)})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        """Read-only view of the term map."""
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(exp) for exp in self._terms)

    def coefficient(self, exp: Exponent) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {self.to_text()!r})"

    # -- arithmetic --------------------------------------------------------

    def _check_compatible(self, other: Polynomial) -> None:
        if self.nvars != other.nvars:
            raise ValueError(
                f"variable-count mismatch: {self.nvars} vs {other.nvars}"
            )

    def __add__(self, other: Polynomial | Fraction | int) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.nvars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            out[exp] = out.get(exp, Fraction(0)) + c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Polynomial | Fraction | int) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.nvars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Fraction | int) -> Polynomial:
        return (-self) + other

    def __mul__(self, other: Polynomial | Fraction | int) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Polynomial(self.nvars, {e: k * c for e, k in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exp = tuple(a + b for a, b in zip(ea, eb))
                out[exp] = out.get(exp, Fraction(0)) + ca * cb
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def differentiate(self, var: int) -> Polynomial:
        """Exact partial derivative with respect to variable ``var``."""
        if not 0 <= var < self.nvars:
            raise ValueError(f"variable index {var} out of range")
        out: dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            e = exp[var]
            if e == 0:
                continue
            new = list(exp)
            new[var] = e - 1
            out[tuple(new)] = c * e
        return Polynomial(self.nvars, out)

    # -- evaluation --------------------------------------------------------

    def _floats(self) -> tuple[tuple[Exponent, ...], tuple[float, ...]]:
        cache = self._float_cache
        if cache is None:
            exps = tuple(sorted(self._terms))
            coeffs = tuple(float(self._terms[e]) for e in exps)
            cache = (exps, coeffs)
            object.__setattr__(self, "_float_cache", cache)
        return cache

    def _term_values(self, point: Sequence[float]) -> list[float]:
        if len(point) != self.nvars:
            raise ValueError(
                f"point has {len(point)} coordinates, expected {self.nvars}"
            )
        exps, coeffs = self._floats()
        if not exps:
            return []
        maxexp = [max(e[i] for e in exps) for i in range(self.nvars)]
        pows: list[list[float]] = []
        for i in range(self.nvars):
            p = [1.0]
            xi = float(point[i])
            for _ in range(maxexp[i]):
                p.append(p[-1] * xi)
            pows.append(p)
        vals = []
        for exp, c in zip(exps, coeffs):
            t = c
            for i, e in enumerate(exp):
                if e:
                    t *= pows[i][e]
            vals.append(t)
        return vals

    def evaluate(self, point: Sequence[float]) -> float:
        """Compensated floating evaluation, accurate to ~eps * |result|.

        The folding polynomials have large coefficients but small values on
        the region of interest, so naive evaluation loses most digits to
        cancellation.  Powers are carried as double-doubles (error-free
        products) and terms are accumulated with Neumaier summation, which
        keeps the error near machine epsilon relative to the true value as
        long as coefficients convert to float exactly (integers and halves
        below 2^53, which covers the whole family here).
        """
        if len(point) != self.nvars:
            raise ValueError(
                f"point has {len(point)} coordinates, expected {self.nvars}"
            )
        exps, coeffs = self._floats()
        if not exps:
            return 0.0
        maxexp = [max(e[i] for e in exps) for i in range(self.nvars)]
        pows: list[list[tuple[float, float]]] = []
        for i in range(self.nvars):
            chain = [(1.0, 0.0)]
            xi = float(point[i])
            for _ in range(maxexp[i]):
                chain.append(_dd_mul_float(*chain[-1], xi))
            pows.append(chain)
        s = 0.0
        comp = 0.0
        for exp, c in zip(exps, coeffs):
            hi, lo = c, 0.0
            for i, e in enumerate(exp):
                if e:
                    ph, pl = pows[i][e]
                    hi, lo = _dd_mul_dd(hi, lo, ph, pl)
            for t in (hi, lo):
                tmp = s + t
                if abs(s) >= abs(t):
                    comp += (s - tmp) + t
                else:
                    comp += (t - tmp) + s
                s = tmp
        return s + comp

    def evaluation_scale(self, point: Sequence[float]) -> float:
        """Largest term magnitude at ``point``; the natural scale for residuals."""
        vals = self._term_values(point)
        if not vals:
            return 1.0
        return max(1.0, max(abs(t) for t in vals))

    def evaluate_exact(self, point: Sequence[Fraction | int]) -> Fraction:
        """Exact evaluation at a rational point."""
        if len(point) != self.nvars:
            raise ValueError(
                f"point has {len(point)} coordinates, expected {self.nvars}"
            )
        coords = [Fraction(v) for v in point]
        total = Fraction(0)
        for exp, c in self._terms.items():
            t = c
            for i, e in enumerate(exp):
                if e:
                    t *= coords[i] ** e
            total += t
        return total

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        """JSON form: terms sorted lexicographically by exponent vector."""
        return {
            "nvars": self.nvars,
            "terms": [
                {
                    "exp": list(exp),
                    "num": str(self._terms[exp].numerator),
                    "den": str(self._terms[exp].denominator),
                }
                for exp in sorted(self._terms)
            ],
        }

    @staticmethod
    def from_json_dict(data: Mapping) -> Polynomial:
        terms = {
            tuple(t["exp"]): Fraction(int(t["num"]), int(t["den"]))
            for t in data["terms"]
        }
        return Polynomial(int(data["nvars"]), terms)

    def to_text(self) -> str:
        """Human-readable form, graded by total degree, e.g. ``2 - 4*x + 2*x^2``."""
        if not self._terms:
            return "0"
        names = _VAR_NAMES[self.nvars]
        ordered = sorted(self._terms, key=lambda e: (sum(e), e))
        parts: list[str] = []
        for exp in ordered:
            c = self._terms[exp]
            factors = []
            for name, e in zip(names, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


# ---------------------------------------------------------------------------
# Chebyshev polynomials


@functools.lru_cache(maxsize=None)
def chebyshev(d: int) -> Polynomial:
    """Degree-d Chebyshev polynomial of the first kind, exact coefficients.

    Built from the three-term recurrence; satisfies T_d(cos t) = cos(d t),
    so every interior critical value is -1 or +1.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    if d > MAX_CONSTRUCTION_DEGREE:
        raise ValueError(f"degree {d} exceeds supported maximum {MAX_CONSTRUCTION_DEGREE}")
    prev = Polynomial.constant(1, 1)
    if d == 0:
        return prev
    cur = Polynomial.variable(0, 1)
    two_z = 2 * cur
    for _ in range(d - 1):
        prev, cur = cur, two_z * cur - prev
    return cur


# ---------------------------------------------------------------------------
# Folding matrices and their determinants


class PolyMatrix:
    """Square matrix of polynomials with zeros above the superdiagonal."""

    __slots__ = ("size", "entries")

    def __init__(self, entries: Sequence[Sequence[Polynomial]]):
        size = len(entries)
        rows = tuple(tuple(row) for row in entries)
        if any(len(row) != size for row in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    def is_hessenberg(self) -> bool:
        """True iff entry (i, j) vanishes whenever j > i + 1."""
        return all(
            self.entries[i][j].is_zero()
            for i in range(self.size)
            for j in range(i + 2, self.size)
        )


def folding_matrix(d: int, flavor: str = "x") -> PolyMatrix:
    """The d-by-d structured matrix whose determinant feeds the folding polynomial.

    Pattern (x flavor): diagonal x, superdiagonal 1, entry (2,1) = 2y,
    entry (3,1) = 3, subdiagonal y from row 3 on, sub-subdiagonal 1.
    The y flavor swaps the roles of x and y.  Sizes below 4 truncate the
    same pattern.
    """
    if d < 1:
        raise ValueError("matrix size must be >= 1")
    if flavor not in ("x", "y"):
        raise ValueError(f"flavor must be 'x' or 'y', got {flavor!r}")
    main = Polynomial.variable(0 if flavor == "x" else 1, 2)
    other = Polynomial.variable(1 if flavor == "x" else 0, 2)
    zero = Polynomial.zero(2)
    one = Polynomial.constant(1, 2)
    rows = []
    for i in range(1, d + 1):
        row = []
        for j in range(1, d + 1):
            if j == i:
                row.append(main)
            elif j == i + 1:
                row.append(one)
            elif (i, j) == (2, 1):
                row.append(2 * other)
            elif (i, j) == (3, 1):
                row.append(Polynomial.constant(3, 2))
            elif j == i - 1 and i >= 3:
                row.append(other)
            elif j == i - 2 and i >= 4:
                row.append(one)
            else:
                row.append(zero)
        rows.append(row)
    return PolyMatrix(rows)


def det_expansion(mat: PolyMatrix) -> Polynomial:
    """Exact determinant via cofactor expansion on the Hessenberg structure.

    Every leading principal minor is expanded along its final row/column;
    zeros above the superdiagonal make each cofactor block-triangular, so
    the whole determinant costs O(size^2) polynomial multiplications.
    """
    if not mat.is_hessenberg():
        raise ValueError("matrix has nonzero entries above the superdiagonal")
    h = mat.entries
    nvars = h[0][0].nvars
    minors = [Polynomial.constant(1, nvars)]
    for n in range(1, mat.size + 1):
        acc = h[n - 1][n - 1] * minors[n - 1]
        super_prod = Polynomial.constant(1, nvars)
        for j in range(n - 1, 0, -1):
            super_prod = super_prod * h[j - 1][j]
            entry = h[n - 1][j - 1]
            if entry.is_zero():
                continue
            term = entry * super_prod * minors[j - 1]
            acc = acc + term if (n - j) % 2 == 0 else acc - term
        minors.append(acc)
    return minors[mat.size]


def det_bareiss(mat: PolyMatrix) -> Polynomial:
    """Fraction-free elimination determinant; independent cross-check.

    Bareiss updates keep every intermediate entry polynomial because each
    division by the previous pivot is exact in the polynomial ring.
    """
    n = mat.size
    nvars = mat.entries[0][0].nvars
    m = [list(row) for row in mat.entries]
    prev = Polynomial.constant(1, nvars)
    sign = 1
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next(
                (i for i in range(k + 1, n) if not m[i][k].is_zero()), None
            )
            if pivot_row is None:
                return Polynomial.zero(nvars)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = _div_exact(
                    m[i][j] * m[k][k] - m[i][k] * m[k][j], prev
                )
            m[i][k] = Polynomial.zero(nvars)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def _grlex_leading(p: Polynomial) -> Exponent:
    return max(p.terms, key=lambda e: (sum(e), e))


def _div_exact(a: Polynomial, b: Polynomial) -> Polynomial:
    """Exact polynomial division; raises if ``b`` does not divide ``a``."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    nvars = a.nvars
    lead_b = _grlex_leading(b)
    cb = b.coefficient(lead_b)
    quotient: dict[Exponent, Fraction] = {}
    rem = a
    while not rem.is_zero():
        lead_r = _grlex_leading(rem)
        exp = tuple(r - s for r, s in zip(lead_r, lead_b))
        if any(e < 0 for e in exp):
            raise ArithmeticError("inexact polynomial division")
        c = rem.coefficient(lead_r) / cb
        quotient[exp] = quotient.get(exp, Fraction(0)) + c
        rem = rem - Polynomial(nvars, {exp: c}) * b
    return Polynomial(nvars, quotient)


# ---------------------------------------------------------------------------
# The folding family


@functools.lru_cache(maxsize=None)
def folding_complex(d: int) -> Polynomial:
    """Bivariate folding polynomial: 2 plus the two structured determinants.

    Symmetric under swapping x and y; integer coefficients; its zero set is
    d lines with non-real coordinates, which is why the conjugate
    substitution below is needed to obtain a real arrangement.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    if d > MAX_CONSTRUCTION_DEGREE:
        raise ValueError(f"degree {d} exceeds supported maximum {MAX_CONSTRUCTION_DEGREE}")
    det_x = det_expansion(folding_matrix(d, "x"))
    det_y = det_expansion(folding_matrix(d, "y"))
    return det_x + det_y + 2


# A Gaussian-rational polynomial maps exponents to (real, imaginary) pairs.
# Only the conjugate substitution below needs this; it never leaks out.
_GaussTerms = dict[Exponent, tuple[Fraction, Fraction]]


def _gauss_mul(a: _GaussTerms, b: _GaussTerms) -> _GaussTerms:
    out: _GaussTerms = {}
    for ea, (ra, ia) in a.items():
        for eb, (rb, ib) in b.items():
            exp = tuple(p + q for p, q in zip(ea, eb))
            re, im = out.get(exp, (Fraction(0), Fraction(0)))
            out[exp] = (re + ra * rb - ia * ib, im + ra * ib + ia * rb)
    return {e: c for e, c in out.items() if c != (0, 0)}


@functools.lru_cache(maxsize=None)
def folding_real(d: int) -> Polynomial:
    """Real folding polynomial: the folding polynomial at (x+iy, x-iy).

    The substitution runs over Gaussian rationals and every imaginary part
    must cancel exactly; a nonzero residue is an implementation bug and
    raises rather than being rounded away.  The result has integer
    coefficients, total degree d, and is even in y.
    """
    base = folding_complex(d)
    one = (Fraction(1), Fraction(0))
    # powers of (x + iy) as Gaussian polynomials; conjugation gives (x - iy)^b
    plus_pows: list[_GaussTerms] = [{(0, 0): one}]
    plus = {(1, 0): one, (0, 1): (Fraction(0), Fraction(1))}
    for _ in range(d):
        plus_pows.append(_gauss_mul(plus_pows[-1], plus))
    acc: _GaussTerms = {}
    for (a, b), coeff in base.terms.items():
        conj_b = {e: (re, -im) for e, (re, im) in plus_pows[b].items()}
        for exp, (re, im) in _gauss_mul(plus_pows[a], conj_b).items():
            r0, i0 = acc.get(exp, (Fraction(0), Fraction(0)))
            acc[exp] = (r0 + coeff * re, i0 + coeff * im)
    bad = {e: c for e, (r, c) in acc.items() if c != 0}
    if bad:
        raise ArithmeticError(
            f"imaginary residue after conjugate substitution at degree {d}: {bad}"
        )
    return Polynomial(2, {e: r for e, (r, _) in acc.items()})


@functools.lru_cache(maxsize=None)
def chmutov_surface(d: int) -> Polynomial:
    """Degree-d surface polynomial: real folding part plus (T_d(z) + 1) / 2.

    Its singular points sit exactly where a critical value of the planar
    part and a critical value of the z part sum to zero.
    """
    f = folding_real(d)
    t = chebyshev(d)
    terms: dict[Exponent, Fraction] = {
        (ex, ey, 0): c for (ex, ey), c in f.terms.items()
    }
    for (ez,), c in t.terms.items():
        exp = (0, 0, ez)
        terms[exp] = terms.get(exp, Fraction(0)) + c / 2
    terms[(0, 0, 0)] = terms.get((0, 0, 0), Fraction(0)) + Fraction(1, 2)
    return Polynomial(3, terms)
