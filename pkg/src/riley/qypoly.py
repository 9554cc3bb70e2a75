"""Exact bivariate polynomials in q = x^2 and y with integer coefficients."""

import json
from collections import defaultdict

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    _mpz = int


class QYPoly:
    """
    Sum of c * q**i * y**j stored as {(i, j): c}, zero coefficients dropped.

    Writing the x-dependence through q = x^2 makes evenness in x structural.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: int(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def q(cls):
        return cls({(1, 0): 1})

    @classmethod
    def y(cls):
        return cls({(0, 1): 1})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = QYPoly.const(other)
        return isinstance(other, QYPoly) and self.terms == other.terms

    def __repr__(self):
        return f"QYPoly({len(self.terms)} terms, y-degree {self.y_degree})"

    def _coerce(self, other):
        return QYPoly.const(other) if isinstance(other, int) else other

    def __neg__(self):
        return QYPoly({k: -c for k, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return QYPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return QYPoly({k: other * c for k, c in self.terms.items()}) if other else QYPoly()
        return _mul(self, other)

    __rmul__ = __mul__

    @property
    def y_degree(self):
        return max((j for _, j in self.terms), default=-1)

    @property
    def q_degree(self):
        return max((i for i, _ in self.terms), default=-1)

    def y_coefficient(self, j):
        """Coefficient of y**j as a dict {i: c} over powers of q."""
        return {i: c for (i, jj), c in self.terms.items() if jj == j}

    def __call__(self, x, y):
        """Evaluate at (x, y); q is substituted by x*x."""
        return self.eval_qy(x * x, y)

    def eval_qy(self, q, y):
        rows = defaultdict(dict)
        for (i, j), c in self.terms.items():
            rows[j][i] = c
        acc = 0 * y
        for j in range(self.y_degree, -1, -1):
            row = rows.get(j)
            coef = 0 * q
            if row:
                for i in range(max(row), -1, -1):
                    coef = coef * q + row.get(i, 0)
            acc = acc * y + coef
        return acc

    def to_json_list(self):
        """[[i, j, "c"], ...] sorted by (j, i) descending."""
        items = sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]), reverse=True)
        return [[i, j, str(c)] for (i, j), c in items]

    def to_json(self):
        return json.dumps(self.to_json_list())

    @classmethod
    def from_json_list(cls, data):
        return cls({(int(i), int(j)): int(c) for i, j, c in data})

    @classmethod
    def from_json(cls, text):
        return cls.from_json_list(json.loads(text))


def _mul(a, b):
    if not a.terms or not b.terms:
        return QYPoly()
    if len(a.terms) * len(b.terms) < 4096:
        out = defaultdict(int)
        for (i1, j1), c1 in a.terms.items():
            for (i2, j2), c2 in b.terms.items():
                out[i1 + i2, j1 + j2] += c1 * c2
        return QYPoly(out)
    return _kronecker_mul(a, b)


def _kronecker_mul(a, b):
    """
    Multiply by packing both operands into one big integer each.

    Exponent (i, j) maps to slot i + j * width and slot s to bit offset
    s * bits. Slots are written as hex digits biased by half the slot range
    so that packing and unpacking are linear-time string operations.
    """
    width = a.q_degree + b.q_degree + 1
    bound = max(abs(c) for c in a.terms.values()) * max(abs(c) for c in b.terms.values())
    bound *= min(len(a.terms), len(b.terms))
    bits = bound.bit_length() + 2
    bits += -bits % 4
    ndig = bits // 4
    half = 1 << (bits - 1)
    zero_slot = "8" + "0" * (ndig - 1)

    def pack(p):
        nslots = (p.y_degree + 1) * width
        slots = [zero_slot] * nslots
        for (i, j), c in p.terms.items():
            slots[nslots - 1 - (i + j * width)] = format(c + half, "x").rjust(ndig, "0")
        return _mpz("".join(slots), 16) - _mpz(zero_slot * nslots, 16)

    nslots = (a.y_degree + b.y_degree + 1) * width
    biased = pack(a) * pack(b) + _mpz(zero_slot * nslots, 16)
    h = format(biased, "x").rjust(nslots * ndig, "0")
    out = {}
    for s in range(nslots):
        end = len(h) - s * ndig
        d = int(h[end - ndig:end], 16) - half
        if d:
            out[s % width, s // width] = d
    return QYPoly(out)
