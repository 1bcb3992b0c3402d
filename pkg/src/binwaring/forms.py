"""Binary forms with exact rational coefficients.

A form of degree ``d`` is stored as ``coeffs[i]`` = coefficient of
``x**i * y**(d - i)``, the plain monomial basis with no binomial weights.
Dehomogenising at ``y = 1`` therefore gives the ascending coefficient list of
``p(t, 1)`` directly, and ``y`` divides the form exactly when the top
coefficient vanishes (a root at ``[1:0]``).
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gcd, lcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def falling(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1); zero when k > n."""
    if k > n:
        return 0
    return factorial(n) // factorial(n - k)


@dataclass(frozen=True)
class BinaryForm:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a binary form needs at least one coefficient")
        cs = []
        for c in self.coeffs:
            if isinstance(c, (bool, float)):
                raise TypeError(f"inexact coefficient {c!r}")
            cs.append(Fraction(c))
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors -------------------------------------------------------

    @classmethod
    def of(cls, coeffs: Iterable[Scalar]) -> "BinaryForm":
        return cls(tuple(coeffs))

    @classmethod
    def zero(cls, degree: int) -> "BinaryForm":
        return cls((Fraction(0),) * (degree + 1))

    @classmethod
    def monomial(cls, i: int, degree: int, c: Scalar = 1) -> "BinaryForm":
        cs = [Fraction(0)] * (degree + 1)
        cs[i] = Fraction(c)
        return cls(tuple(cs))

    @classmethod
    def linear(cls, a: Scalar, b: Scalar) -> "BinaryForm":
        """The linear form a*x + b*y."""
        return cls((Fraction(b), Fraction(a)))

    @classmethod
    def from_roots(cls, points: Iterable[tuple[Scalar, Scalar]]) -> "BinaryForm":
        """Product of the factors b*x - a*y vanishing at each point [a:b]."""
        out = cls.one()
        for a, b in points:
            out = out * cls.linear(b, -a)
        return out

    @classmethod
    def one(cls) -> "BinaryForm":
        return cls((Fraction(1),))

    @classmethod
    def parse(cls, text: str) -> "BinaryForm":
        return parse_form(text)

    # -- basic properties ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __call__(self, a: Scalar, b: Scalar) -> Fraction:
        a, b = Fraction(a), Fraction(b)
        d = self.degree
        return sum((c * a**i * b ** (d - i) for i, c in enumerate(self.coeffs) if c),
                   Fraction(0))

    def dehomogenize(self) -> list[Fraction]:
        """Ascending coefficients of p(t, 1), trailing zeros dropped."""
        cs = list(self.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        return cs

    def infinity_multiplicity(self) -> int:
        """Multiplicity of the root [1:0], i.e. the power of y dividing the form."""
        if self.is_zero():
            raise ValueError("the zero form has no well-defined roots")
        return self.degree - (len(self.dehomogenize()) - 1)

    # -- arithmetic ---------------------------------------------------------

    def _check_same_degree(self, other: "BinaryForm") -> None:
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        self._check_same_degree(other)
        return BinaryForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        self._check_same_degree(other)
        return BinaryForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(tuple(-a for a in self.coeffs))

    def scale(self, c: Scalar) -> "BinaryForm":
        c = Fraction(c)
        return BinaryForm(tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            out = [Fraction(0)] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        if b:
                            out[i + j] += a * b
            return BinaryForm(tuple(out))
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BinaryForm":
        out = BinaryForm.one()
        for _ in range(k):
            out = out * self
        return out

    def divide(self, other: "BinaryForm") -> "BinaryForm":
        """Exact division; raises ValueError if ``other`` does not divide."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero form")
        if other.degree > self.degree:
            if self.is_zero():
                raise ValueError("degree of divisor exceeds degree of zero form")
            raise ValueError("divisor has larger degree")
        # divide in the ascending basis starting from the lowest nonzero term
        n, m = self.degree, other.degree
        b = list(other.coeffs)
        lo = next(i for i, c in enumerate(b) if c)
        r = list(self.coeffs)
        q = [Fraction(0)] * (n - m + 1)
        for k in range(n - m + 1):
            c = r[k + lo] / b[lo]
            q[k] = c
            if c:
                for j in range(lo, m + 1):
                    r[k + j] -= c * b[j]
        if any(r):
            raise ValueError("form is not divisible")
        return BinaryForm(tuple(q))

    # -- normalisations -----------------------------------------------------

    def primitive(self) -> "BinaryForm":
        """Coprime integer coefficients with the first nonzero one positive."""
        if self.is_zero():
            return self
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = gcd(g, c)
        first = next(c for c in ints if c)
        if first < 0:
            g = -g
        return BinaryForm(tuple(Fraction(c // g) for c in ints))

    def monic(self) -> "BinaryForm":
        """Scaled so that the first nonzero coefficient is 1."""
        if self.is_zero():
            return self
        first = next(c for c in self.coeffs if c)
        return self.scale(1 / first)

    def is_proportional(self, other: "BinaryForm") -> bool:
        if self.degree != other.degree:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.monic() == other.monic()

    def norm_inf(self) -> Fraction:
        return max(abs(c) for c in self.coeffs)

    def height(self) -> int:
        p = self.primitive()
        return int(max(abs(c) for c in p.coeffs))

    def __str__(self) -> str:
        return format_form(self)


def apply_apolar(h: BinaryForm, f: BinaryForm) -> BinaryForm:
    """Apply the differential operator of ``h`` to ``f``.

    ``h = sum b_j x^j y^(e-j)`` acts as ``sum b_j d^e / dx^j dy^(e-j)``.
    """
    e, d = h.degree, f.degree
    if e > d:
        raise ValueError(f"operator degree {e} exceeds form degree {d}")
    out = [Fraction(0)] * (d - e + 1)
    for j, b in enumerate(h.coeffs):
        if not b:
            continue
        for k in range(d - e + 1):
            a = f.coeffs[j + k]
            if a:
                out[k] += b * a * falling(j + k, j) * falling(d - j - k, e - j)
    return BinaryForm(tuple(out))


def apolar_matrix(g: BinaryForm, target_degree: int) -> list[list[Fraction]]:
    """Matrix of f -> apply_apolar(g, f) on forms of ``target_degree``.

    Rows index the output monomials x^k y^(D-e-k); columns the input x^i y^(D-i).
    Empty when ``g`` has larger degree than the target.
    """
    e, dd = g.degree, target_degree
    if e > dd:
        return []
    rows = []
    for k in range(dd - e + 1):
        row = [Fraction(0)] * (dd + 1)
        for j, b in enumerate(g.coeffs):
            if b:
                i = j + k
                row[i] = b * falling(i, j) * falling(dd - i, e - j)
        rows.append(row)
    return rows


def multiplication_matrix(p: BinaryForm, q_degree: int) -> list[list[Fraction]]:
    """Matrix of q -> p*q from forms of ``q_degree``; rows index the product."""
    n = p.degree + q_degree
    rows = [[Fraction(0)] * (q_degree + 1) for _ in range(n + 1)]
    for j in range(q_degree + 1):
        for i, a in enumerate(p.coeffs):
            rows[i + j][j] = a
    return rows


def multiples(p: BinaryForm, target_degree: int) -> list[BinaryForm]:
    """The forms x^j y^(k-j) * p spanning p * R_k, k = target - deg p."""
    k = target_degree - p.degree
    return [BinaryForm.monomial(j, k) * p for j in range(k + 1)]


def power_of_linear(a: Scalar, b: Scalar, d: int) -> BinaryForm:
    """(a x + b y)^d expanded in the monomial basis."""
    a, b = Fraction(a), Fraction(b)
    return BinaryForm(tuple(comb(d, i) * a**i * b ** (d - i) for i in range(d + 1)))


# -- text I/O ---------------------------------------------------------------


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_form(f: BinaryForm) -> str:
    d = f.degree
    terms = []
    for i in range(d, -1, -1):
        c = f.coeffs[i]
        if not c:
            continue
        mono = []
        if i:
            mono.append("x" if i == 1 else f"x^{i}")
        if d - i:
            mono.append("y" if d - i == 1 else f"y^{d - i}")
        mag = abs(c)
        if mono and mag == 1:
            body = "*".join(mono)
        else:
            body = "*".join([_fmt_coeff(mag)] + mono)
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for s, body in terms[1:]:
        out += f" {s} {body}"
    return out


class FormSyntaxError(ValueError):
    pass


# A parsed expression: dict {(i, j): coefficient} for x^i y^j
_Poly = dict


def _padd(p: _Poly, q: _Poly, sgn: int = 1) -> _Poly:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, Fraction(0)) + sgn * v
    return {k: v for k, v in out.items() if v}


def _pmul(p: _Poly, q: _Poly) -> _Poly:
    out: _Poly = {}
    for (i1, j1), a in p.items():
        for (i2, j2), b in q.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, Fraction(0)) + a * b
    return {k: v for k, v in out.items() if v}


def _const(p: _Poly) -> Fraction:
    if any(k != (0, 0) for k in p):
        raise FormSyntaxError("expected a constant")
    return p.get((0, 0), Fraction(0))


def _eval(node) -> _Poly:
    if isinstance(node, ast.Expression):
        return _eval(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) \
            and not isinstance(node.value, bool):
        return {(0, 0): Fraction(node.value)} if node.value else {}
    if isinstance(node, ast.Name):
        if node.id == "x":
            return {(1, 0): Fraction(1)}
        if node.id == "y":
            return {(0, 1): Fraction(1)}
        raise FormSyntaxError(f"unknown variable {node.id!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand)
        return v if isinstance(node.op, ast.UAdd) else {k: -c for k, c in v.items()}
    if isinstance(node, ast.BinOp):
        left, right = _eval(node.left), _eval(node.right)
        if isinstance(node.op, ast.Add):
            return _padd(left, right)
        if isinstance(node.op, ast.Sub):
            return _padd(left, right, -1)
        if isinstance(node.op, ast.Mult):
            return _pmul(left, right)
        if isinstance(node.op, ast.Div):
            c = _const(right)
            if c == 0:
                raise FormSyntaxError("division by zero")
            return {k: v / c for k, v in left.items()}
        if isinstance(node.op, ast.Pow):
            e = _const(right)
            if e.denominator != 1 or e < 0:
                raise FormSyntaxError("exponents must be non-negative integers")
            out: _Poly = {(0, 0): Fraction(1)}
            for _ in range(int(e)):
                out = _pmul(out, left)
            return out
    raise FormSyntaxError(f"unsupported syntax: {ast.dump(node)[:60]}")


def _insert_mult(text: str) -> str:
    # implicit products such as "2xy" or "3(x+y)" or ")("
    out = []
    prev = ""
    for ch in text:
        if prev and ((prev.isdigit() and (ch.isalpha() or ch == "("))
                     or (prev in "xy)" and (ch.isalnum() or ch == "("))):
            if not (prev.isdigit() and ch.isdigit()):
                out.append("*")
        out.append(ch)
        if not ch.isspace():
            prev = ch
    return "".join(out)


def parse_form(text: str, degree: int | None = None) -> BinaryForm:
    """Parse an expression such as ``"(x-2y)^3*(x+y)"`` or ``"x^2 - 3/2 x y"``.

    The expression must be homogeneous; the zero form needs an explicit degree.
    """
    src = _insert_mult(text.replace("^", "**").replace(" ", ""))
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise FormSyntaxError(f"cannot parse {text!r}") from exc
    poly = _eval(tree)
    degs = {i + j for i, j in poly}
    if not poly:
        if degree is None:
            raise FormSyntaxError("the zero form needs an explicit degree")
        return BinaryForm.zero(degree)
    if len(degs) != 1:
        raise FormSyntaxError(f"{text!r} is not homogeneous")
    d = degs.pop()
    if degree is not None and degree != d:
        raise FormSyntaxError(f"expected degree {degree}, got {d}")
    cs = [Fraction(0)] * (d + 1)
    for (i, j), c in poly.items():
        cs[i] = c
    return BinaryForm(tuple(cs))
