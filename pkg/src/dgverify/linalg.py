"""Exact dense linear algebra over Q or F_p.

Every decision procedure in the package reduces to the affine solves and
rank computations here.  Row reduction runs on the compiled kernel when
the extension built, otherwise on the pure-Python fallback; both follow
the identical fixed pivot rule, so results are bit-identical.  Witness
solutions are deterministic: free variables are pinned to 0.
"""

from __future__ import annotations

from .fields import QQ, PrimeField, RationalField

try:  # compiled kernel is optional
    from . import _kernel_cy as _kernel
except ImportError:  # pragma: no cover - depends on build environment
    from . import _kernel_py as _kernel

from . import _kernel_py

KERNEL_NAME = _kernel.KERNEL_NAME


class LinalgError(ValueError):
    pass


def _rref(field, rows):
    if isinstance(field, RationalField):
        return _kernel.rref_q(rows)
    return _kernel.rref_fp(rows, field.p)


class Matrix:
    """Dense matrix over an exact field; row-major flat storage."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, rows, cols, data):
        if len(data) != rows * cols:
            raise LinalgError(f"matrix data length {len(data)} != {rows}x{cols}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = list(data)

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, rows, cols, [field.zero] * (rows * cols))

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.data[i * n + i] = field.one
        return m

    @classmethod
    def from_rows(cls, field, rowlist):
        rows = len(rowlist)
        cols = len(rowlist[0]) if rows else 0
        data = []
        for r in rowlist:
            if len(r) != cols:
                raise LinalgError("ragged rows")
            data.extend(r)
        return cls(field, rows, cols, data)

    def __getitem__(self, rc):
        r, c = rc
        return self.data[r * self.cols + c]

    def __setitem__(self, rc, v):
        r, c = rc
        self.data[r * self.cols + c] = v

    def row(self, r):
        return self.data[r * self.cols:(r + 1) * self.cols]

    def to_rows(self):
        return [self.row(r) for r in range(self.rows)]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows and self.cols == other.cols
                and self.data == other.data)

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.rows}x{self.cols})"

    def is_zero(self):
        z = self.field.is_zero
        return all(z(x) for x in self.data)

    def transpose(self):
        out = Matrix.zeros(self.field, self.cols, self.rows)
        for r in range(self.rows):
            base = r * self.cols
            for c in range(self.cols):
                out.data[c * self.rows + r] = self.data[base + c]
        return out

    def add(self, other):
        self._check_same_shape(other)
        f = self.field
        return Matrix(f, self.rows, self.cols,
                      [f.add(a, b) for a, b in zip(self.data, other.data)])

    def sub(self, other):
        self._check_same_shape(other)
        f = self.field
        return Matrix(f, self.rows, self.cols,
                      [f.sub(a, b) for a, b in zip(self.data, other.data)])

    def scale(self, c):
        f = self.field
        return Matrix(f, self.rows, self.cols, [f.mul(c, a) for a in self.data])

    def mul(self, other):
        if self.cols != other.rows:
            raise LinalgError("inner dimension mismatch")
        f = self.field
        out = Matrix.zeros(f, self.rows, other.cols)
        oc = other.cols
        for r in range(self.rows):
            base = r * self.cols
            obase = r * oc
            for k in range(self.cols):
                a = self.data[base + k]
                if f.is_zero(a):
                    continue
                kbase = k * oc
                for c in range(oc):
                    b = other.data[kbase + c]
                    if not f.is_zero(b):
                        out.data[obase + c] = f.add(out.data[obase + c], f.mul(a, b))
        return out

    def apply(self, vec):
        """Matrix-vector product (vec as a list)."""
        if len(vec) != self.cols:
            raise LinalgError("vector length mismatch")
        f = self.field
        out = [f.zero] * self.rows
        for r in range(self.rows):
            base = r * self.cols
            acc = f.zero
            for c, v in enumerate(vec):
                if not f.is_zero(v):
                    a = self.data[base + c]
                    if not f.is_zero(a):
                        acc = f.add(acc, f.mul(a, v))
            out[r] = acc
        return out

    def augment(self, vec):
        if len(vec) != self.rows:
            raise LinalgError("rhs length mismatch")
        out = Matrix.zeros(self.field, self.rows, self.cols + 1)
        for r in range(self.rows):
            out.data[r * (self.cols + 1):(r + 1) * (self.cols + 1)] = \
                self.row(r) + [vec[r]]
        return out

    def rref(self):
        rows, pivots = _rref(self.field, self.to_rows())
        if not rows:
            return Matrix.zeros(self.field, 0, self.cols), ()
        return Matrix.from_rows(self.field, rows), tuple(pivots)

    def rank(self):
        _, pivots = _rref(self.field, self.to_rows())
        return len(pivots)

    def solve(self, rhs):
        """Some x with A x = rhs, free variables pinned to 0; None if inconsistent."""
        aug = self.augment(rhs)
        rows, pivots = _rref(self.field, aug.to_rows())
        f = self.field
        x = [f.zero] * self.cols
        for r, c in enumerate(pivots):
            if c == self.cols:
                return None
            x[c] = rows[r][self.cols]
        return x

    def nullspace(self):
        """Deterministic basis of ker A (one vector per free column)."""
        rows, pivots = _rref(self.field, self.to_rows())
        f = self.field
        pivset = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivset:
                continue
            v = [f.zero] * self.cols
            v[free] = f.one
            for r, c in enumerate(pivots):
                if c < free:
                    v[c] = f.neg(rows[r][free])
            basis.append(v)
        return basis

    def _check_same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise LinalgError("shape mismatch")


def rank(m):
    return m.rank()


class AffineSystem:
    """A x = b with the unknown vector split into named blocks.

    The layout maps block name -> (offset, length) and must partition
    [0, cols).
    """

    def __init__(self, field, matrix, rhs, layout):
        if matrix.rows != len(rhs):
            raise LinalgError("rhs length != matrix rows")
        cover = sorted(layout.values())
        pos = 0
        for off, length in cover:
            if off != pos or length < 0:
                raise LinalgError("block layout does not partition the columns")
            pos += length
        if pos != matrix.cols:
            raise LinalgError("block layout does not partition the columns")
        self.field = field
        self.matrix = matrix
        self.rhs = list(rhs)
        self.layout = dict(layout)

    def unpack(self, x):
        return {name: x[off:off + length]
                for name, (off, length) in self.layout.items()}


def solve_affine(system):
    """Some exact solution of the system, or None when inconsistent."""
    return system.matrix.solve(system.rhs)


class AffineBuilder:
    """Assemble a block affine system  sum_i M_i x_{u_i} = rhs  row by row."""

    def __init__(self, field):
        self.field = field
        self._unknowns = []  # (name, length)
        self._equations = []  # (terms: list[(Matrix, name)], rhs: list)

    def unknown(self, name, length):
        if any(n == name for n, _ in self._unknowns):
            raise LinalgError(f"duplicate unknown {name}")
        self._unknowns.append((name, length))
        return name

    def equation(self, terms, rhs):
        rd = len(rhs)
        for mat, name in terms:
            if mat.rows != rd:
                raise LinalgError("equation block row mismatch")
            if mat.cols != self._length(name):
                raise LinalgError(f"matrix cols != length of unknown {name}")
        self._equations.append((list(terms), list(rhs)))

    def _length(self, name):
        for n, length in self._unknowns:
            if n == name:
                return length
        raise LinalgError(f"unknown unknown {name}")

    def build(self):
        offsets = {}
        pos = 0
        for name, length in self._unknowns:
            offsets[name] = (pos, length)
            pos += length
        total_rows = sum(len(rhs) for _, rhs in self._equations)
        f = self.field
        big = Matrix.zeros(f, total_rows, pos)
        rhs = []
        r0 = 0
        for terms, erhs in self._equations:
            for mat, name in terms:
                off, _ = offsets[name]
                for r in range(mat.rows):
                    src = r * mat.cols
                    dst = (r0 + r) * pos + off
                    for c in range(mat.cols):
                        v = mat.data[src + c]
                        if not f.is_zero(v):
                            big.data[dst + c] = f.add(big.data[dst + c], v)
            rhs.extend(erhs)
            r0 += len(erhs)
        return AffineSystem(f, big, rhs, offsets)

    def solve(self):
        system = self.build()
        x = solve_affine(system)
        if x is None:
            return None
        return system.unpack(x)
