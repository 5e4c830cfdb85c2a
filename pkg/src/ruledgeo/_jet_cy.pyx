# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for truncated Taylor jets.

Mirrors `_jet_py.py` exactly; keep the two in sync when touching formulas.
"""

from libc cimport math as cm


cdef inline Jet2 _new(double v, double d1, double d2, double d3):
    cdef Jet2 j = Jet2.__new__(Jet2)
    j.value = v
    j.d1 = d1
    j.d2 = d2
    j.d3 = d3
    return j


cdef inline Jet2 _mul(Jet2 a, Jet2 b):
    return _new(
        a.value * b.value,
        a.d1 * b.value + a.value * b.d1,
        a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2,
        a.d3 * b.value + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.value * b.d3,
    )


cdef inline Jet2 _div(Jet2 a, Jet2 b):
    cdef double b0 = b.value
    if b0 == 0.0:
        raise ZeroDivisionError("jet division by zero value")
    cdef double q0 = a.value / b0
    cdef double q1 = (a.d1 - q0 * b.d1) / b0
    cdef double q2 = (a.d2 - q0 * b.d2 - 2.0 * q1 * b.d1) / b0
    cdef double q3 = (a.d3 - q0 * b.d3 - 3.0 * q1 * b.d2 - 3.0 * q2 * b.d1) / b0
    return _new(q0, q1, q2, q3)


cdef class Jet2:
    """Taylor jet of a scalar function of u, truncated at order 3.

    `value`, `d1`, `d2` are the function value and its first two
    derivatives with respect to u. The third-order slot `d3` rides along
    because the striction-line construction consumes three derivatives of
    its raw inputs; consumers that only need order 2 can ignore it.
    Instances are treated as immutable.
    """

    cdef public double value, d1, d2, d3

    def __init__(self, value, d1=0.0, d2=0.0, d3=0.0):
        self.value = value
        self.d1 = d1
        self.d2 = d2
        self.d3 = d3

    @staticmethod
    def constant(c):
        return _new(c, 0.0, 0.0, 0.0)

    @staticmethod
    def variable(u):
        """Jet of the identity map at u (seed for evaluating f(u))."""
        return _new(u, 1.0, 0.0, 0.0)

    def derivative(self):
        """Jet of the derivative; the top order of the result is unknown (0)."""
        return _new(self.d1, self.d2, self.d3, 0.0)

    def __repr__(self):
        return f"Jet2({self.value!r}, {self.d1!r}, {self.d2!r}, {self.d3!r})"

    def __eq__(self, other):
        if isinstance(other, Jet2):
            return (
                self.value == (<Jet2>other).value
                and self.d1 == (<Jet2>other).d1
                and self.d2 == (<Jet2>other).d2
                and self.d3 == (<Jet2>other).d3
            )
        return NotImplemented

    # arithmetic -----------------------------------------------------------

    def __neg__(self):
        return _new(-self.value, -self.d1, -self.d2, -self.d3)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, Jet2):
            return _new(
                self.value + (<Jet2>other).value,
                self.d1 + (<Jet2>other).d1,
                self.d2 + (<Jet2>other).d2,
                self.d3 + (<Jet2>other).d3,
            )
        if isinstance(other, (int, float)):
            return _new(self.value + <double>other, self.d1, self.d2, self.d3)
        return NotImplemented

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        if isinstance(other, Jet2):
            return _new(
                self.value - (<Jet2>other).value,
                self.d1 - (<Jet2>other).d1,
                self.d2 - (<Jet2>other).d2,
                self.d3 - (<Jet2>other).d3,
            )
        if isinstance(other, (int, float)):
            return _new(self.value - <double>other, self.d1, self.d2, self.d3)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, float)):
            return _new(<double>other - self.value, -self.d1, -self.d2, -self.d3)
        return NotImplemented

    def __mul__(self, other):
        cdef double f
        if isinstance(other, Jet2):
            return _mul(self, <Jet2>other)
        if isinstance(other, (int, float)):
            f = <double>other
            return _new(self.value * f, self.d1 * f, self.d2 * f, self.d3 * f)
        return NotImplemented

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        cdef double inv
        if isinstance(other, Jet2):
            return _div(self, <Jet2>other)
        if isinstance(other, (int, float)):
            if <double>other == 0.0:
                raise ZeroDivisionError("jet division by zero")
            inv = 1.0 / <double>other
            return _new(self.value * inv, self.d1 * inv, self.d2 * inv, self.d3 * inv)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, float)):
            return _div(_new(<double>other, 0.0, 0.0, 0.0), self)
        return NotImplemented

    def __pow__(self, p, modulo=None):
        cdef double pd, v, f0, f1, f2, f3
        cdef Jet2 pj
        if isinstance(p, Jet2):
            pj = <Jet2>p
            if pj.d1 == 0.0 and pj.d2 == 0.0 and pj.d3 == 0.0:
                return self.__pow__(pj.value, None)
            if self.value <= 0.0:
                raise ValueError("jet exponent requires a positive base")
            return _mul(pj, self.log()).exp()
        if isinstance(p, (int, float)):
            pd = <double>p
            if pd == cm.floor(pd) and cm.fabs(pd) < 9.0e15:
                return self._int_pow(<long long>pd)
            v = self.value
            if v <= 0.0:
                raise ValueError("fractional power of a non-positive jet value")
            f0 = cm.pow(v, pd)
            f1 = pd * cm.pow(v, pd - 1.0)
            f2 = pd * (pd - 1.0) * cm.pow(v, pd - 2.0)
            f3 = pd * (pd - 1.0) * (pd - 2.0) * cm.pow(v, pd - 3.0)
            return self._compose(f0, f1, f2, f3)
        return NotImplemented

    def __rpow__(self, base):
        if isinstance(base, (int, float)):
            if <double>base <= 0.0:
                raise ValueError("jet exponent requires a positive base")
            return (self * cm.log(<double>base)).exp()
        return NotImplemented

    cdef Jet2 _int_pow(self, long long n):
        cdef Jet2 result, base
        if n < 0:
            return _div(_new(1.0, 0.0, 0.0, 0.0), self._int_pow(-n))
        result = _new(1.0, 0.0, 0.0, 0.0)
        base = self
        while n:
            if n & 1:
                result = _mul(result, base)
            base = _mul(base, base)
            n >>= 1
        return result

    # elementary functions (chain rule via Faa di Bruno at order 3) --------

    cdef Jet2 _compose(self, double f0, double f1, double f2, double f3):
        cdef double x1 = self.d1, x2 = self.d2, x3 = self.d3
        return _new(
            f0,
            f1 * x1,
            f2 * x1 * x1 + f1 * x2,
            f3 * x1 * x1 * x1 + 3.0 * f2 * x1 * x2 + f1 * x3,
        )

    cpdef Jet2 sin(self):
        cdef double s = cm.sin(self.value), c = cm.cos(self.value)
        return self._compose(s, c, -s, -c)

    cpdef Jet2 cos(self):
        cdef double s = cm.sin(self.value), c = cm.cos(self.value)
        return self._compose(c, -s, -c, s)

    cpdef Jet2 tan(self):
        cdef double t = cm.tan(self.value)
        cdef double sec2 = 1.0 + t * t
        return self._compose(t, sec2, 2.0 * t * sec2, (2.0 + 6.0 * t * t) * sec2)

    cpdef Jet2 sqrt(self):
        if self.value < 0.0:
            raise ValueError("math domain error")
        cdef double r = cm.sqrt(self.value)
        if r == 0.0:
            raise ValueError("jet sqrt at zero has no finite derivatives")
        cdef double inv = 0.5 / r
        return self._compose(
            r, inv, -0.5 * inv / self.value, 0.75 * inv / (self.value * self.value)
        )

    cpdef Jet2 exp(self):
        cdef double e = cm.exp(self.value)
        return self._compose(e, e, e, e)

    cpdef Jet2 log(self):
        cdef double v = self.value
        if v <= 0.0:
            raise ValueError("math domain error")
        return self._compose(cm.log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))

    cpdef Jet2 sinh(self):
        cdef double s = cm.sinh(self.value), c = cm.cosh(self.value)
        return self._compose(s, c, s, c)

    cpdef Jet2 cosh(self):
        cdef double s = cm.sinh(self.value), c = cm.cosh(self.value)
        return self._compose(c, s, c, s)
