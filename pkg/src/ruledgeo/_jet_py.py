"""Pure-Python backend for truncated Taylor jets.

Mirrors `_jet_cy.pyx` exactly; keep the two in sync when touching formulas.
"""

import math


class Jet2:
    """Taylor jet of a scalar function of u, truncated at order 3.

    `value`, `d1`, `d2` are the function value and its first two
    derivatives with respect to u. The third-order slot `d3` rides along
    because the striction-line construction consumes three derivatives of
    its raw inputs; consumers that only need order 2 can ignore it.
    Instances are treated as immutable.
    """

    __slots__ = ("value", "d1", "d2", "d3")

    def __init__(self, value, d1=0.0, d2=0.0, d3=0.0):
        self.value = float(value)
        self.d1 = float(d1)
        self.d2 = float(d2)
        self.d3 = float(d3)

    @staticmethod
    def constant(c):
        return Jet2(c, 0.0, 0.0, 0.0)

    @staticmethod
    def variable(u):
        """Jet of the identity map at u (seed for evaluating f(u))."""
        return Jet2(u, 1.0, 0.0, 0.0)

    def derivative(self):
        """Jet of the derivative; the top order of the result is unknown (0)."""
        return Jet2(self.d1, self.d2, self.d3, 0.0)

    def __repr__(self):
        return f"Jet2({self.value!r}, {self.d1!r}, {self.d2!r}, {self.d3!r})"

    def __eq__(self, other):
        if isinstance(other, Jet2):
            return (self.value, self.d1, self.d2, self.d3) == (
                other.value,
                other.d1,
                other.d2,
                other.d3,
            )
        return NotImplemented

    # arithmetic -----------------------------------------------------------

    def __neg__(self):
        return Jet2(-self.value, -self.d1, -self.d2, -self.d3)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, Jet2):
            return Jet2(
                self.value + other.value,
                self.d1 + other.d1,
                self.d2 + other.d2,
                self.d3 + other.d3,
            )
        if isinstance(other, (int, float)):
            return Jet2(self.value + other, self.d1, self.d2, self.d3)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet2):
            return Jet2(
                self.value - other.value,
                self.d1 - other.d1,
                self.d2 - other.d2,
                self.d3 - other.d3,
            )
        if isinstance(other, (int, float)):
            return Jet2(self.value - other, self.d1, self.d2, self.d3)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, float)):
            return Jet2(other - self.value, -self.d1, -self.d2, -self.d3)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Jet2):
            # Leibniz rule with binomial weights 1, 3, 3, 1 at order 3.
            return Jet2(
                self.value * other.value,
                self.d1 * other.value + self.value * other.d1,
                self.d2 * other.value + 2.0 * self.d1 * other.d1 + self.value * other.d2,
                self.d3 * other.value
                + 3.0 * self.d2 * other.d1
                + 3.0 * self.d1 * other.d2
                + self.value * other.d3,
            )
        if isinstance(other, (int, float)):
            return Jet2(
                self.value * other, self.d1 * other, self.d2 * other, self.d3 * other
            )
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            b0 = other.value
            if b0 == 0.0:
                raise ZeroDivisionError("jet division by zero value")
            q0 = self.value / b0
            q1 = (self.d1 - q0 * other.d1) / b0
            q2 = (self.d2 - q0 * other.d2 - 2.0 * q1 * other.d1) / b0
            q3 = (
                self.d3 - q0 * other.d3 - 3.0 * q1 * other.d2 - 3.0 * q2 * other.d1
            ) / b0
            return Jet2(q0, q1, q2, q3)
        if isinstance(other, (int, float)):
            if other == 0.0:
                raise ZeroDivisionError("jet division by zero")
            inv = 1.0 / other
            return Jet2(self.value * inv, self.d1 * inv, self.d2 * inv, self.d3 * inv)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, float)):
            return Jet2.constant(other).__truediv__(self)
        return NotImplemented

    def __pow__(self, p):
        if isinstance(p, Jet2):
            if p.d1 == 0.0 and p.d2 == 0.0 and p.d3 == 0.0:
                return self.__pow__(p.value)
            if self.value <= 0.0:
                raise ValueError("jet exponent requires a positive base")
            return (p * self.log()).exp()
        if isinstance(p, (int, float)):
            if float(p).is_integer():
                return self._int_pow(int(p))
            v = self.value
            if v <= 0.0:
                raise ValueError("fractional power of a non-positive jet value")
            f0 = math.pow(v, p)
            f1 = p * math.pow(v, p - 1.0)
            f2 = p * (p - 1.0) * math.pow(v, p - 2.0)
            f3 = p * (p - 1.0) * (p - 2.0) * math.pow(v, p - 3.0)
            return self._compose(f0, f1, f2, f3)
        return NotImplemented

    def __rpow__(self, base):
        if isinstance(base, (int, float)):
            if base <= 0.0:
                raise ValueError("jet exponent requires a positive base")
            return (self * math.log(base)).exp()
        return NotImplemented

    def _int_pow(self, n):
        if n < 0:
            return 1.0 / self._int_pow(-n)
        result = Jet2.constant(1.0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # elementary functions (chain rule via Faa di Bruno at order 3) --------

    def _compose(self, f0, f1, f2, f3):
        x1, x2, x3 = self.d1, self.d2, self.d3
        return Jet2(
            f0,
            f1 * x1,
            f2 * x1 * x1 + f1 * x2,
            f3 * x1 * x1 * x1 + 3.0 * f2 * x1 * x2 + f1 * x3,
        )

    def sin(self):
        s, c = math.sin(self.value), math.cos(self.value)
        return self._compose(s, c, -s, -c)

    def cos(self):
        s, c = math.sin(self.value), math.cos(self.value)
        return self._compose(c, -s, -c, s)

    def tan(self):
        t = math.tan(self.value)
        sec2 = 1.0 + t * t
        return self._compose(t, sec2, 2.0 * t * sec2, (2.0 + 6.0 * t * t) * sec2)

    def sqrt(self):
        r = math.sqrt(self.value)  # raises ValueError for negatives
        if r == 0.0:
            raise ValueError("jet sqrt at zero has no finite derivatives")
        inv = 0.5 / r
        return self._compose(r, inv, -0.5 * inv / self.value, 0.75 * inv / self.value**2)

    def exp(self):
        e = math.exp(self.value)
        return self._compose(e, e, e, e)

    def log(self):
        v = self.value
        f0 = math.log(v)  # raises ValueError for non-positive
        return self._compose(f0, 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))

    def sinh(self):
        s, c = math.sinh(self.value), math.cosh(self.value)
        return self._compose(s, c, s, c)

    def cosh(self):
        s, c = math.sinh(self.value), math.cosh(self.value)
        return self._compose(c, s, c, s)
