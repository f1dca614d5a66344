"""Complexified Clifford algebra of physical space, Cl(3,0) over C.

A multivector stores eight complex coefficients on the blades

    1, e1, e2, e3, e23, e31, e12, e123

The pseudoscalar ``I = e1 e2 e3`` squares to -1 and is central, but it is a
basis element, not the coefficient imaginary.  Coefficients are ordinary
Python/numpy complex numbers whose imaginary unit is written ``j``; the two
never mix.  Bivectors use cyclic names so that ``I * e_k`` is the bivector
with a *positive* coefficient (``I e3 = e12``, ``I e1 = e23``, ``I e2 = e31``),
which means the bivector coefficients of ``p + I q`` are just the vector
coefficients of ``q``.

Coefficient arrays have the blade axis first, ``coeffs.shape == (8, ...)``,
so one :class:`Multivector` can hold a whole grid of values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BLADES = ("1", "e1", "e2", "e3", "e23", "e31", "e12", "e123")
GRADES = np.array([0, 1, 1, 1, 2, 2, 2, 3])

# (sign, bitmask) of each named blade relative to the ascending-index product
# of generators; e31 = e3 e1 = -e1 e3.
_CANONICAL = [(1, 0b000), (1, 0b001), (1, 0b010), (1, 0b100),
              (1, 0b110), (-1, 0b101), (1, 0b011), (1, 0b111)]
_BY_MASK = {mask: (sign, idx) for idx, (sign, mask) in enumerate(_CANONICAL)}


def _reorder_sign(a: int, b: int) -> int:
    # sign from sorting the generator string of a followed by b
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def _build_table():
    index = np.zeros((8, 8), dtype=int)
    sign = np.zeros((8, 8), dtype=int)
    for p, (sp, mp) in enumerate(_CANONICAL):
        for q, (sq, mq) in enumerate(_CANONICAL):
            s = sp * sq * _reorder_sign(mp, mq)
            s_out, r = _BY_MASK[mp ^ mq]
            index[p, q] = r
            sign[p, q] = s * s_out
    return index, sign


PRODUCT_INDEX, PRODUCT_SIGN = _build_table()
PRODUCT_INDEX.setflags(write=False)
PRODUCT_SIGN.setflags(write=False)

_CONJ_SIGN = np.array([1, -1, -1, -1, -1, -1, -1, 1])
_REV_SIGN = np.array([1, 1, 1, 1, -1, -1, -1, -1])


def _col(sign, ndim):
    return sign.reshape((8,) + (1,) * ndim)


@dataclass(frozen=True, eq=False)
class Multivector:
    """Dense multivector; ``coeffs`` has shape ``(8, ...)``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.shape[:1] != (8,):
            raise ValueError(f"expected leading axis of length 8, got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, shape=()):
        return cls(np.zeros((8,) + tuple(shape), dtype=complex))

    @classmethod
    def blade(cls, name: str, value=1.0):
        c = np.zeros(8, dtype=complex)
        c[BLADES.index(name)] = value
        return cls(c)

    @classmethod
    def from_parts(cls, scalar=0.0, vector=None, bivector=None, trivector=0.0):
        """Assemble from grade parts; ``bivector`` holds the (e23, e31, e12)
        coefficients, i.e. the vector ``q`` in ``I q``."""
        parts = [np.asarray(scalar, dtype=complex), np.asarray(trivector, dtype=complex)]
        for part in (vector, bivector):
            if part is not None:
                arr = np.asarray(part, dtype=complex)
                # a bare scalar fills all three components
                parts.append(arr if arr.ndim == 0 else arr[0])
        shape = np.broadcast_shapes(*(p.shape for p in parts))
        c = np.zeros((8,) + shape, dtype=complex)
        c[0] = scalar
        if vector is not None:
            c[1:4] = vector
        if bivector is not None:
            c[4:7] = bivector
        c[7] = trivector
        return cls(c)

    @classmethod
    def from_pq(cls, p: "Paravector", q: "Paravector"):
        """``p + I q`` with complex paravectors ``p`` and ``q``."""
        return cls.from_parts(p.s, p.v, q.v, q.s)

    # views --------------------------------------------------------------
    @property
    def shape(self):
        return self.coeffs.shape[1:]

    @property
    def scalar(self):
        return self.coeffs[0]

    @property
    def vector(self):
        return self.coeffs[1:4]

    @property
    def bivector(self):
        return self.coeffs[4:7]

    @property
    def trivector(self):
        return self.coeffs[7]

    def to_pq(self):
        """Inverse of :meth:`from_pq`."""
        c = self.coeffs
        return Paravector(c[0], c[1:4]), Paravector(c[7], c[4:7])

    def __getitem__(self, name: str):
        return self.coeffs[BLADES.index(name)]

    # algebra ------------------------------------------------------------
    def grade(self, g: int) -> "Multivector":
        return grade_project(self, g)

    def conjugate(self) -> "Multivector":
        return clifford_conjugate(self)

    def reverse(self) -> "Multivector":
        return Multivector(_col(_REV_SIGN, len(self.shape)) * self.coeffs)

    def cconj(self) -> "Multivector":
        """Complex conjugate of the coefficients (j -> -j); blades untouched."""
        return Multivector(np.conj(self.coeffs))

    def __add__(self, other):
        if isinstance(other, Multivector):
            return Multivector(self.coeffs + other.coeffs)
        return self + Multivector.from_parts(scalar=other)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return gp(self, other)
        return Multivector(self.coeffs * other)

    def __rmul__(self, other):
        return Multivector(other * self.coeffs)

    def __truediv__(self, other):
        return Multivector(self.coeffs / other)

    def allclose(self, other, atol=1e-12) -> bool:
        return bool(np.allclose(self.coeffs, other.coeffs, rtol=0.0, atol=atol))

    def __repr__(self):
        if self.shape:
            return f"Multivector(shape={self.shape})"
        terms = [f"({c:.6g}){b}" for c, b in zip(self.coeffs, BLADES) if c != 0]
        return "Multivector(" + (" + ".join(terms) or "0") + ")"


def gp(a: Multivector, b: Multivector) -> Multivector:
    """Geometric product, broadcasting over the trailing (grid) axes."""
    ca, cb = a.coeffs, b.coeffs
    shape = np.broadcast_shapes(ca.shape[1:], cb.shape[1:])
    out = np.zeros((8,) + shape, dtype=complex)
    # index with ``...`` so 0-d inputs stay arrays: numpy scalar arithmetic
    # rounds complex products differently from the array path
    for p in range(8):
        ap = ca[p, ...]
        if not np.any(ap):
            continue
        for q in range(8):
            out[PRODUCT_INDEX[p, q]] += PRODUCT_SIGN[p, q] * ap * cb[q, ...]
    return Multivector(out)


def grade_project(a: Multivector, g: int) -> Multivector:
    if g not in (0, 1, 2, 3):
        raise ValueError(f"grade must be 0..3, got {g!r}")
    mask = (GRADES == g).astype(float)
    return Multivector(_col(mask, len(a.shape)) * a.coeffs)


def clifford_conjugate(a: Multivector) -> Multivector:
    """Bar conjugation: grade signs (+, -, -, +)."""
    return Multivector(_col(_CONJ_SIGN, len(a.shape)) * a.coeffs)


def dot(a, b):
    """Bilinear dot product of complex 3-vectors (components on axis 0)."""
    a, b = np.asarray(a), np.asarray(b)
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a, b):
    """Bilinear cross product; no conjugation."""
    a, b = np.asarray(a), np.asarray(b)
    return np.stack([a[1] * b[2] - a[2] * b[1],
                     a[2] * b[0] - a[0] * b[2],
                     a[0] * b[1] - a[1] * b[0]])


@dataclass(frozen=True, eq=False)
class Paravector:
    """Scalar plus vector, ``U = U0 + U``; carries a four-vector (U0, U)."""

    s: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "s", np.asarray(self.s, dtype=complex))
        v = np.asarray(self.v, dtype=complex)
        if v.shape[:1] != (3,):
            raise ValueError("vector part must have a leading axis of length 3")
        object.__setattr__(self, "v", v)

    def bar(self) -> "Paravector":
        return Paravector(self.s, -self.v)

    def to_multivector(self) -> Multivector:
        return Multivector.from_parts(scalar=self.s, vector=self.v)

    def __add__(self, other):
        return Paravector(self.s + other.s, self.v + other.v)

    def __sub__(self, other):
        return Paravector(self.s - other.s, self.v - other.v)

    def __mul__(self, other):
        if isinstance(other, Paravector):
            return paravector_product(self, other)
        return Paravector(self.s * other, self.v * other)

    __rmul__ = __mul__


def paravector_product(u: Paravector, v: Paravector) -> Multivector:
    """``UV = (U0 V0 + U.V) + (U0 V + U V0 + I U x V)``.

    Written component by component so each multiply sees the same array
    shapes as :func:`gp`; the two then agree bit for bit.
    """
    a = [u.v[i, ...] for i in range(3)]
    b = [v.v[i, ...] for i in range(3)]
    scalar = u.s * v.s + a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    vector = np.stack([u.s * b[i] + a[i] * v.s for i in range(3)])
    bivector = np.stack([a[1] * b[2] - a[2] * b[1],
                         a[2] * b[0] - a[0] * b[2],
                         a[0] * b[1] - a[1] * b[0]])
    return Multivector.from_parts(scalar=scalar, vector=vector, bivector=bivector)


ONE = Multivector.blade("1")
E1 = Multivector.blade("e1")
E2 = Multivector.blade("e2")
E3 = Multivector.blade("e3")
E23 = Multivector.blade("e23")
E31 = Multivector.blade("e31")
E12 = Multivector.blade("e12")
I = Multivector.blade("e123")
BASIS = (ONE, E1, E2, E3, E23, E31, E12, I)
