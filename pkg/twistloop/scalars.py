# twistloop/scalars.py
"""Exact scalars: Q(xi) for a primitive r-th root of unity and Laurent
polynomials in z^(1/r) over it.

A ``Cyc`` with r = 3 is a + b*xi with xi^2 = -1 - xi. For r <= 2 the xi part is
always zero and xi itself evaluates to 1 or -1.

A ``Laurent`` stores {n: coefficient}, the exponent n standing for z^(n/r).
"""
from fractions import Fraction

from twistloop.errors import ScalarError

SUPPORTED_ORDERS = (1, 2, 3)


def _frac(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ScalarError(f"Cannot read {value!r} as an exact rational")


def _check_order(r):
    if r not in SUPPORTED_ORDERS:
        raise ScalarError(f"Unsupported root-of-unity order r={r}")


class Cyc:
    """Element a + b*xi of Q(xi)."""

    __slots__ = ("r", "a", "b")

    def __init__(self, r, a=0, b=0):
        _check_order(r)
        a, b = _frac(a), _frac(b)
        if r == 2 and b:
            # xi = -1
            a, b = a - b, Fraction(0)
        elif r == 1 and b:
            a, b = a + b, Fraction(0)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("Cyc is immutable")

    # --- Constructors ---

    @classmethod
    def xi(cls, r):
        return cls(r, 0, 1) if r == 3 else cls(r, -1 if r == 2 else 1)

    @classmethod
    def xi_power(cls, r, k):
        """xi^k for any integer k."""
        k %= r
        if r == 3:
            return (cls(3, 1), cls(3, 0, 1), cls(3, -1, -1))[k]
        if r == 2:
            return cls(2, -1 if k else 1)
        return cls(1, 1)

    def _coerce(self, other):
        if isinstance(other, Cyc):
            if other.r != self.r:
                raise ScalarError(f"Mismatched orders r={self.r} and r={other.r}")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyc(self.r, other)
        return None

    # --- Field operations ---

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Cyc(self.r, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.r, -self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Cyc(self.r, self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.a, self.b, other.a, other.b
        # (a + b xi)(c + d xi), xi^2 = -1 - xi
        return Cyc(self.r, a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def norm(self):
        """Product with the Galois conjugate; a rational."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self):
        if self.is_zero():
            raise ScalarError("Division by zero in Q(xi)")
        n = self.norm()
        conj = self.omega_bar()
        return Cyc(self.r, conj.a / n, conj.b / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyc(self.r, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # --- Galois ---

    def omega_bar(self):
        """xi^n -> xi^-n. For r = 3: a + b xi -> (a - b) - b xi."""
        if self.r != 3:
            return self
        return Cyc(3, self.a - self.b, -self.b)

    # --- Predicates / protocol ---

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def is_rational(self):
        return self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Cyc):
            return self.r == other.r and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash((self.r, self.a, self.b))

    def __repr__(self):
        return f"Cyc(r={self.r}, {self})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*xi"
        return f"{self.a}+{self.b}*xi"


def cyc_ops(op, x, y=None):
    """Dispatch helper for add | mul | neg | inv, mirroring the operation table."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    raise ValueError(f"Unknown Cyc operation '{op}'")


def omega_bar(x):
    return x.omega_bar()


class Laurent:
    """Finite Laurent polynomial sum_n c_n z^(n/r) with Cyc coefficients."""

    __slots__ = ("r", "terms")

    def __init__(self, r, terms=None):
        _check_order(r)
        clean = {}
        for n, c in (terms or {}).items():
            if not isinstance(c, Cyc):
                c = Cyc(r, c)
            elif c.r != r:
                raise ScalarError(f"Coefficient order r={c.r} does not match container r={r}")
            if not c.is_zero():
                clean[int(n)] = c
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Laurent is immutable")

    # --- Constructors ---

    @classmethod
    def zero(cls, r):
        return cls(r)

    @classmethod
    def const(cls, r, c):
        return cls(r, {0: c})

    @classmethod
    def monomial(cls, r, n, c=1):
        return cls(r, {n: c})

    @classmethod
    def z(cls, r):
        """z itself, i.e. z^(r/r)."""
        return cls(r, {r: 1})

    def _coerce(self, other):
        if isinstance(other, Laurent):
            if other.r != self.r:
                raise ScalarError(f"Mismatched orders r={self.r} and r={other.r}")
            return other
        if isinstance(other, (int, Fraction, Cyc)):
            return Laurent.const(self.r, other)
        return None

    # --- Ring operations ---

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for n, c in other.terms.items():
            terms[n] = terms[n] + c if n in terms else c
        return Laurent(self.r, terms)

    __radd__ = __add__

    def __neg__(self):
        return Laurent(self.r, {n: -c for n, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for n, c in self.terms.items():
            for m, d in other.terms.items():
                k = n + m
                terms[k] = terms[k] + c * d if k in terms else c * d
        return Laurent(self.r, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inv_unit() ** (-k)
        result = Laurent.const(self.r, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        """Division by a unit (a single-term polynomial) or a nonzero scalar."""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv_unit()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inv_unit()

    def scale(self, c):
        return self * c

    # --- Galois actions ---

    def sigma_prime(self):
        """z^(n/r) -> xi^(-n) z^(n/r)."""
        if self.r == 1:
            return self
        return Laurent(self.r, {n: c * Cyc.xi_power(self.r, -n) for n, c in self.terms.items()})

    def omega_prime(self):
        """omega_bar applied coefficientwise; trivial unless r = 3."""
        if self.r != 3:
            return self
        return Laurent(self.r, {n: c.omega_bar() for n, c in self.terms.items()})

    # --- Degree statistics and units ---

    def is_zero(self):
        return not self.terms

    def deg_stats(self):
        """(M, m, k): max exponent, min exponent and their difference; (0, 0, 0) for zero."""
        if not self.terms:
            return (0, 0, 0)
        hi, lo = max(self.terms), min(self.terms)
        return (hi, lo, hi - lo)

    def top(self):
        """(M, coefficient of z^(M/r)); None for zero."""
        if not self.terms:
            return None
        hi = max(self.terms)
        return hi, self.terms[hi]

    def bottom(self):
        if not self.terms:
            return None
        lo = min(self.terms)
        return lo, self.terms[lo]

    def coeff(self, n):
        return self.terms.get(n, Cyc(self.r))

    def is_unit(self):
        return len(self.terms) == 1

    def inv_unit(self):
        if not self.is_unit():
            raise ScalarError(f"{self} is not a unit of the Laurent ring")
        (n, c), = self.terms.items()
        return Laurent(self.r, {-n: c.inverse()})

    def is_constant(self):
        return not self.terms or set(self.terms) == {0}

    def constant_value(self):
        return self.coeff(0)

    def is_gamma_fixed(self):
        return self.sigma_prime() == self and self.omega_prime() == self

    def is_rational(self):
        return all(c.is_rational() for c in self.terms.values())

    # --- Protocol ---

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Laurent):
            return self.r == other.r and self.terms == other.terms
        if isinstance(other, (int, Fraction, Cyc)):
            if isinstance(other, Cyc) and other.r != self.r:
                return False
            return self == Laurent.const(self.r, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.r, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return f"Laurent(r={self.r}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for n in sorted(self.terms):
            c = self.terms[n]
            if n == 0:
                parts.append(f"({c})")
            else:
                exp = Fraction(n, self.r)
                parts.append(f"({c})*z^{exp}")
        return " + ".join(parts)

    # --- JSON ---

    def to_json(self):
        return {
            "r": self.r,
            "terms": [
                {"n": n, "a": str(self.terms[n].a), "b": str(self.terms[n].b)}
                for n in sorted(self.terms)
            ],
        }

    @classmethod
    def from_json(cls, data):
        try:
            r = int(data["r"])
            terms = {}
            for item in data["terms"]:
                a, b = _frac(item["a"]), _frac(item.get("b", "0"))
                if r <= 2 and b != 0:
                    raise ScalarError("xi-coefficient must be 0 when r <= 2")
                n = int(item["n"])
                c = Cyc(r, a, b)
                terms[n] = terms[n] + c if n in terms else c
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise ScalarError(f"Malformed Laurent JSON: {e}") from e
        return cls(r, terms)


# --- Module-level operation names ---

def lau_ops(op, s, t=None):
    if op == "add":
        return s + t
    if op == "mul":
        return s * t
    if op == "neg":
        return -s
    raise ValueError(f"Unknown Laurent operation '{op}'")


def sigma_prime(s):
    return s.sigma_prime()


def omega_prime(s):
    return s.omega_prime()


def deg_stats(s):
    return s.deg_stats()


def is_unit(s):
    return s.is_unit()


def inv_unit(s):
    return s.inv_unit()


def is_gamma_fixed(s):
    return s.is_gamma_fixed()


def as_laurent(r, value):
    """Promote int / Fraction / Cyc / Laurent to a Laurent of order r."""
    if isinstance(value, Laurent):
        if value.r != r:
            raise ScalarError(f"Mismatched orders r={r} and r={value.r}")
        return value
    return Laurent.const(r, value)
