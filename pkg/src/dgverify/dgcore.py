"""Finite DG-categories over an exact field.

A DG-category here is a finite object set with cochain complexes of
morphisms, a bilinear composition given on basis elements, and closed
degree-0 identities.  The Leibniz convention is fixed once for the whole
package:

    d(g o f) = d(g) o f + (-1)^{|g|} g o d(f).

Alongside validation and cohomology, this module carries the homotopy
decision procedures: null-homotopy, homotopy-equivalence witnesses
(g, r_X, r_Y) and their degree -2 refinement (g, r_X, r_Y, r_XY), all as
single exact affine solves with free variables pinned to 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fields import QQ
from .linalg import AffineBuilder, LinalgError, Matrix


class InputError(ValueError):
    """Malformed input data (bad shapes, mismatched objects, wrong degrees)."""


class GenerationError(RuntimeError):
    """A randomized generator exhausted its retry budget."""


# ---------------------------------------------------------------------------
# graded spaces and complexes


class GradedSpace:
    """Finite-support map degree -> dimension."""

    __slots__ = ("dims",)

    def __init__(self, dims):
        self.dims = {int(k): int(v) for k, v in dims.items() if int(v) != 0}
        if any(v < 0 for v in self.dims.values()):
            raise InputError("negative dimension")

    def dim(self, k):
        return self.dims.get(k, 0)

    def degrees(self):
        return sorted(self.dims)

    def total_dim(self):
        return sum(self.dims.values())

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and self.dims == other.dims

    def __repr__(self):
        return f"GradedSpace({self.dims})"


class CochainComplex:
    """Graded space with a degree +1 differential, d o d = 0 exactly."""

    def __init__(self, field, space, d, check=True):
        self.field = field
        self.space = space if isinstance(space, GradedSpace) else GradedSpace(space)
        self.d = {}
        for k, mat in d.items():
            k = int(k)
            if mat.rows != self.space.dim(k + 1) or mat.cols != self.space.dim(k):
                raise InputError(f"differential at degree {k} has wrong shape")
            if not mat.is_zero():
                self.d[k] = mat
        if check:
            for k in list(self.d):
                nxt = self.d_matrix(k + 1)
                if not nxt.mul(self.d[k]).is_zero():
                    raise InputError(f"d o d != 0 at degree {k}")

    def dim(self, k):
        return self.space.dim(k)

    def degrees(self):
        return self.space.degrees()

    def total_dim(self):
        return self.space.total_dim()

    def d_matrix(self, k):
        mat = self.d.get(k)
        if mat is None:
            return Matrix.zeros(self.field, self.space.dim(k + 1), self.space.dim(k))
        return mat

    def cohomology_dims(self):
        out = {}
        for k in self.degrees():
            dk = self.d_matrix(k).rank()
            dkm1 = self.d_matrix(k - 1).rank()
            h = self.dim(k) - dk - dkm1
            if h:
                out[k] = h
        return out

    def __eq__(self, other):
        if not isinstance(other, CochainComplex) or self.space != other.space:
            return False
        return all(self.d_matrix(k) == other.d_matrix(k) for k in self.degrees())


class ChainMap:
    """Degreewise linear map between complexes commuting with d (checked)."""

    def __init__(self, src, dst, blocks):
        self.src = src
        self.dst = dst
        self.blocks = {}
        for k, mat in blocks.items():
            k = int(k)
            if mat.rows != dst.dim(k) or mat.cols != src.dim(k):
                raise InputError(f"chain map block at degree {k} has wrong shape")
            if not mat.is_zero():
                self.blocks[k] = mat
        for k in set(src.degrees()) | set(self.blocks):
            left = self.block(k + 1).mul(src.d_matrix(k))
            right = dst.d_matrix(k).mul(self.block(k))
            if left != right:
                raise InputError(f"map does not commute with d at degree {k}")

    def block(self, k):
        mat = self.blocks.get(k)
        if mat is None:
            return Matrix.zeros(self.src.field, self.dst.dim(k), self.src.dim(k))
        return mat


def induced_cohomology_rank(cmap):
    """Rank of the induced map H^k(src) -> H^k(dst), per degree."""
    src, dst = cmap.src, cmap.dst
    out = {}
    for k in sorted(set(src.degrees()) | set(dst.degrees())):
        cycles = src.d_matrix(k).nullspace()
        if not cycles:
            continue
        images = [cmap.block(k).apply(v) for v in cycles]
        bk = dst.d_matrix(k - 1)
        # rank of the composite cycle-space -> H^k(dst): columns of f(cycles)
        # modulo the image of d_{k-1}
        cols = [list(col) for col in zip(*images)] if images else []
        boundary_cols = [bk.row(r) for r in range(bk.rows)]
        # build [B | f(Z)] with B spanning the boundaries
        bmat = bk
        nb = bmat.cols
        rows = dst.dim(k)
        joint = Matrix.zeros(dst.field, rows, nb + len(images))
        for r in range(rows):
            base = r * (nb + len(images))
            joint.data[base:base + nb] = bmat.row(r)
            for j, img in enumerate(images):
                joint.data[base + nb + j] = img[r]
        rk = joint.rank() - bmat.rank()
        if rk:
            out[k] = rk
    return out


# ---------------------------------------------------------------------------
# the category and its morphisms


@dataclass(frozen=True)
class Morphism:
    source: object
    target: object
    degree: int
    coords: tuple

    def is_zero(self):
        return not self.coords or all(c == 0 for c in self.coords)


class DGCategory:
    """Finite DG-category.

    ``basis_compose(x, y, z, p, q, i, j)`` returns the sparse coordinate
    dict of  e_i o e_j  in hom(x, z)^{p+q}, for e_i in hom(y, z)^p and
    e_j in hom(x, y)^q.
    """

    def __init__(self, field, objects, homs, basis_compose, ids, name=""):
        self.field = field
        self.objects = tuple(objects)
        self._homs = homs
        self._compose = basis_compose
        self._ids = ids
        self.name = name

    def hom(self, x, y):
        try:
            return self._homs[(x, y)]
        except KeyError:
            raise InputError(f"no hom complex for ({x}, {y})") from None

    def basis_compose(self, x, y, z, p, q, i, j):
        return self._compose(x, y, z, p, q, i, j)

    # -- morphism algebra ---------------------------------------------------

    def zero(self, x, y, degree):
        return Morphism(x, y, degree,
                        (self.field.zero,) * self.hom(x, y).dim(degree))

    def identity(self, x):
        return Morphism(x, x, 0, tuple(self._ids[x]))

    def morphism(self, x, y, degree, coords):
        coords = tuple(coords)
        if len(coords) != self.hom(x, y).dim(degree):
            raise InputError("coordinate length does not match hom dimension")
        return Morphism(x, y, degree, coords)

    def basis_morphism(self, x, y, degree, idx):
        n = self.hom(x, y).dim(degree)
        coords = [self.field.zero] * n
        coords[idx] = self.field.one
        return Morphism(x, y, degree, tuple(coords))

    def add(self, f, g):
        if (f.source, f.target, f.degree) != (g.source, g.target, g.degree):
            raise InputError("cannot add morphisms of different type")
        fl = self.field
        return Morphism(f.source, f.target, f.degree,
                        tuple(fl.add(a, b) for a, b in zip(f.coords, g.coords)))

    def sub(self, f, g):
        return self.add(f, self.scale(g, self.field.neg(self.field.one)))

    def scale(self, f, c):
        fl = self.field
        return Morphism(f.source, f.target, f.degree,
                        tuple(fl.mul(c, a) for a in f.coords))

    def compose(self, g, f):
        """g o f (f applied first)."""
        if f.target != g.source:
            raise InputError(f"object mismatch: {f.target} vs {g.source}")
        fl = self.field
        out = [fl.zero] * self.hom(f.source, g.target).dim(f.degree + g.degree)
        for i, ci in enumerate(g.coords):
            if fl.is_zero(ci):
                continue
            for j, cj in enumerate(f.coords):
                if fl.is_zero(cj):
                    continue
                c = fl.mul(ci, cj)
                sparse = self.basis_compose(f.source, f.target, g.target,
                                            g.degree, f.degree, i, j)
                for l, v in sparse.items():
                    out[l] = fl.add(out[l], fl.mul(c, v))
        return Morphism(f.source, g.target, f.degree + g.degree, tuple(out))

    def diff(self, f):
        mat = self.hom(f.source, f.target).d_matrix(f.degree)
        return Morphism(f.source, f.target, f.degree + 1,
                        tuple(mat.apply(list(f.coords))))

    def eq(self, f, g):
        return (f.source, f.target, f.degree) == (g.source, g.target, g.degree) \
            and list(f.coords) == list(g.coords)

    # -- composition/differential as matrices --------------------------------

    def left_compose_matrix(self, f, src_obj, degree):
        """Matrix of  h -> f o h  on hom(src_obj, f.source)^degree."""
        cx = self.hom(src_obj, f.source)
        out_dim = self.hom(src_obj, f.target).dim(degree + f.degree)
        cols = []
        for j in range(cx.dim(degree)):
            h = self.basis_morphism(src_obj, f.source, degree, j)
            cols.append(self.compose(f, h).coords)
        return _matrix_from_cols(self.field, out_dim, cols)

    def right_compose_matrix(self, f, tgt_obj, degree):
        """Matrix of  h -> h o f  on hom(f.target, tgt_obj)^degree."""
        cx = self.hom(f.target, tgt_obj)
        out_dim = self.hom(f.source, tgt_obj).dim(degree + f.degree)
        cols = []
        for j in range(cx.dim(degree)):
            h = self.basis_morphism(f.target, tgt_obj, degree, j)
            cols.append(self.compose(h, f).coords)
        return _matrix_from_cols(self.field, out_dim, cols)


def _matrix_from_cols(field, out_dim, cols):
    mat = Matrix.zeros(field, out_dim, len(cols))
    for j, col in enumerate(cols):
        for r in range(out_dim):
            mat.data[r * len(cols) + j] = col[r]
    return mat


# ---------------------------------------------------------------------------
# validation


def validate_category(cat, max_total_dim=None):
    """Check d^2 = 0, the Leibniz rule, associativity and unit laws.

    Exhaustive over basis elements; returns a report dict with the list of
    violations (empty iff the category is valid).
    """
    failures = []
    fl = cat.field

    for (x, y) in itertools.product(cat.objects, repeat=2):
        cx = cat.hom(x, y)
        for k in cx.degrees():
            if not cx.d_matrix(k + 1).mul(cx.d_matrix(k)).is_zero():
                failures.append({"axiom": "d_squared", "hom": [x, y], "degree": k})

    for x in cat.objects:
        idx = cat.identity(x)
        if not cat.diff(idx).is_zero():
            failures.append({"axiom": "identity_closed", "object": x})

    for (x, y) in itertools.product(cat.objects, repeat=2):
        cx = cat.hom(x, y)
        for q in cx.degrees():
            for j in range(cx.dim(q)):
                f = cat.basis_morphism(x, y, q, j)
                if not cat.eq(cat.compose(cat.identity(y), f), f):
                    failures.append({"axiom": "left_unit", "hom": [x, y],
                                     "degree": q, "index": j})
                if not cat.eq(cat.compose(f, cat.identity(x)), f):
                    failures.append({"axiom": "right_unit", "hom": [x, y],
                                     "degree": q, "index": j})

    for (x, y, z) in itertools.product(cat.objects, repeat=3):
        cxy, cyz = cat.hom(x, y), cat.hom(y, z)
        for q in cxy.degrees():
            for p in cyz.degrees():
                for j in range(cxy.dim(q)):
                    f = cat.basis_morphism(x, y, q, j)
                    df = cat.diff(f)
                    for i in range(cyz.dim(p)):
                        g = cat.basis_morphism(y, z, p, i)
                        lhs = cat.diff(cat.compose(g, f))
                        rhs = cat.add(cat.compose(cat.diff(g), f),
                                      cat.scale(cat.compose(g, df),
                                                _sign(fl, p)))
                        if not cat.eq(lhs, rhs):
                            failures.append({"axiom": "leibniz", "homs": [x, y, z],
                                             "degrees": [p, q], "indices": [i, j]})

    for (w, x, y, z) in itertools.product(cat.objects, repeat=4):
        cwx, cxy, cyz = cat.hom(w, x), cat.hom(x, y), cat.hom(y, z)
        for r_ in cwx.degrees():
            for q in cxy.degrees():
                for p in cyz.degrees():
                    for kk in range(cwx.dim(r_)):
                        f = cat.basis_morphism(w, x, r_, kk)
                        for j in range(cxy.dim(q)):
                            g = cat.basis_morphism(x, y, q, j)
                            gf = cat.compose(g, f)
                            for i in range(cyz.dim(p)):
                                h = cat.basis_morphism(y, z, p, i)
                                if not cat.eq(cat.compose(cat.compose(h, g), f),
                                              cat.compose(h, gf)):
                                    failures.append({
                                        "axiom": "associativity",
                                        "homs": [w, x, y, z],
                                        "degrees": [p, q, r_],
                                        "indices": [i, j, kk]})

    return {"status": "pass" if not failures else "fail", "failures": failures}


def _sign(field, k):
    return field.one if k % 2 == 0 else field.neg(field.one)


# ---------------------------------------------------------------------------
# cohomology and homotopy decisions


def cohomology_dims(cat, x, y):
    return cat.hom(x, y).cohomology_dims()


def is_null_homotopic(cat, f):
    """Some h with d(h) = f, or None.  Requires d(f) = 0."""
    if not cat.diff(f).is_zero():
        raise InputError("is_null_homotopic requires a closed morphism")
    cx = cat.hom(f.source, f.target)
    x = cx.d_matrix(f.degree - 1).solve(list(f.coords))
    if x is None:
        return None
    return cat.morphism(f.source, f.target, f.degree - 1, x)


@dataclass(frozen=True)
class HomotopyWitness:
    g: Morphism
    r_x: Morphism
    r_y: Morphism


@dataclass(frozen=True)
class KontsevichWitness:
    g: Morphism
    r_x: Morphism
    r_y: Morphism
    r_xy: Morphism


def _check_hoequiv_input(cat, f):
    if f.degree != 0:
        raise InputError("homotopy equivalence candidates must have degree 0")
    if not cat.diff(f).is_zero():
        raise InputError("homotopy equivalence candidates must be closed")


def is_homotopy_equivalence(cat, f):
    """Witness (g, r_X, r_Y) with d(g) = 0, g f = 1_X + d(r_X) and
    f g = 1_Y + d(r_Y); None iff [f] is not invertible in H^0."""
    _check_hoequiv_input(cat, f)
    x, y = f.source, f.target
    fl = cat.field
    hyx = cat.hom(y, x)
    builder = AffineBuilder(fl)
    builder.unknown("g", hyx.dim(0))
    builder.unknown("r_x", cat.hom(x, x).dim(-1))
    builder.unknown("r_y", cat.hom(y, y).dim(-1))
    one = fl.one
    neg = fl.neg(one)
    builder.equation([(hyx.d_matrix(0), "g")],
                     [fl.zero] * hyx.dim(1))
    builder.equation([(cat.right_compose_matrix(f, x, 0), "g"),
                      (cat.hom(x, x).d_matrix(-1).scale(neg), "r_x")],
                     list(cat.identity(x).coords))
    builder.equation([(cat.left_compose_matrix(f, y, 0), "g"),
                      (cat.hom(y, y).d_matrix(-1).scale(neg), "r_y")],
                     list(cat.identity(y).coords))
    sol = builder.solve()
    if sol is None:
        return None
    return HomotopyWitness(
        g=cat.morphism(y, x, 0, sol["g"]),
        r_x=cat.morphism(x, x, -1, sol["r_x"]),
        r_y=cat.morphism(y, y, -1, sol["r_y"]))


def kontsevich_witness(cat, f):
    """Full witness (g, r_X, r_Y, r_XY), additionally satisfying
    f r_X - r_Y f = d(r_XY).  Solvable whenever f is a homotopy equivalence."""
    _check_hoequiv_input(cat, f)
    x, y = f.source, f.target
    fl = cat.field
    hyx = cat.hom(y, x)
    neg = fl.neg(fl.one)
    builder = AffineBuilder(fl)
    builder.unknown("g", hyx.dim(0))
    builder.unknown("r_x", cat.hom(x, x).dim(-1))
    builder.unknown("r_y", cat.hom(y, y).dim(-1))
    builder.unknown("r_xy", cat.hom(x, y).dim(-2))
    builder.equation([(hyx.d_matrix(0), "g")], [fl.zero] * hyx.dim(1))
    builder.equation([(cat.right_compose_matrix(f, x, 0), "g"),
                      (cat.hom(x, x).d_matrix(-1).scale(neg), "r_x")],
                     list(cat.identity(x).coords))
    builder.equation([(cat.left_compose_matrix(f, y, 0), "g"),
                      (cat.hom(y, y).d_matrix(-1).scale(neg), "r_y")],
                     list(cat.identity(y).coords))
    hxy = cat.hom(x, y)
    builder.equation([(cat.left_compose_matrix(f, x, -1), "r_x"),
                      (cat.right_compose_matrix(f, y, -1).scale(neg), "r_y"),
                      (hxy.d_matrix(-2).scale(neg), "r_xy")],
                     [fl.zero] * hxy.dim(-1))
    sol = builder.solve()
    if sol is None:
        return None
    return KontsevichWitness(
        g=cat.morphism(y, x, 0, sol["g"]),
        r_x=cat.morphism(x, x, -1, sol["r_x"]),
        r_y=cat.morphism(y, y, -1, sol["r_y"]),
        r_xy=cat.morphism(x, y, -2, sol["r_xy"]))


def check_homotopy_witness(cat, f, w):
    """Exact re-check of the witness identities."""
    gf = cat.compose(w.g, f)
    fg = cat.compose(f, w.g)
    ok = (cat.diff(w.g).is_zero()
          and cat.eq(gf, cat.add(cat.identity(f.source), cat.diff(w.r_x)))
          and cat.eq(fg, cat.add(cat.identity(f.target), cat.diff(w.r_y))))
    if ok and isinstance(w, KontsevichWitness):
        lhs = cat.sub(cat.compose(f, w.r_x), cat.compose(w.r_y, f))
        ok = cat.eq(lhs, cat.diff(w.r_xy))
    return ok


# ---------------------------------------------------------------------------
# standard constructions


def make_k_n(n, field=QQ):
    """Linearization of the poset {0 < ... < n}: hom(i, j) = k for i <= j."""
    if n < 0:
        raise InputError("n must be nonnegative")
    objects = [str(i) for i in range(n + 1)]
    homs = {}
    for i in range(n + 1):
        for j in range(n + 1):
            dims = {0: 1} if i <= j else {}
            homs[(objects[i], objects[j])] = CochainComplex(field, GradedSpace(dims), {})

    def basis_compose(x, y, z, p, q, i, j):
        return {0: field.one}

    ids = {o: [field.one] for o in objects}
    return DGCategory(field, objects, homs, basis_compose, ids, name=f"k[{n}]")


def endo_basis(v, w, k):
    """Ordered basis (j, r, c) of hom(V, W)^k = prod_j Hom(V^j, W^{j+k})."""
    out = []
    for j in v.degrees():
        dv, dw = v.dim(j), w.dim(j + k)
        if dv and dw:
            for r in range(dw):
                for c in range(dv):
                    out.append((j, r, c))
    return out


def make_endo_category(complexes, field=None, names=None):
    """DG-category of cochain complexes with hom(V, W)^k = prod Hom(V^j, W^{j+k})
    and d(phi) = d_W phi - (-1)^k phi d_V."""
    if isinstance(complexes, dict):
        items = list(complexes.items())
    else:
        names = names or [f"C{i}" for i in range(len(complexes))]
        items = list(zip(names, complexes))
    if not items:
        raise InputError("need at least one complex")
    field = field or items[0][1].field
    cxs = dict(items)
    objects = [name for name, _ in items]

    bases = {}
    index = {}

    def get_basis(x, y, k):
        key = (x, y, k)
        if key not in bases:
            b = endo_basis(cxs[x], cxs[y], k)
            bases[key] = b
            index[key] = {t: i for i, t in enumerate(b)}
        return bases[key]

    homs = {}
    for x in objects:
        for y in objects:
            v, w = cxs[x], cxs[y]
            degs = set()
            for j in v.degrees():
                for jj in w.degrees():
                    degs.add(jj - j)
            dims = {}
            for k in degs:
                dims[k] = len(get_basis(x, y, k))
            d = {}
            for k in sorted(dims):
                if not dims.get(k) or not dims.get(k + 1):
                    continue
                rows = dims[k + 1]
                cols = dims[k]
                mat = Matrix.zeros(field, rows, cols)
                tgt_index = index[(x, y, k + 1)]
                sgn = field.one if k % 2 == 0 else field.neg(field.one)
                for col, (j, r, c) in enumerate(get_basis(x, y, k)):
                    dw = w.d_matrix(j + k)
                    for r2 in range(dw.rows):
                        val = dw[r2, r]
                        if not field.is_zero(val):
                            row = tgt_index.get((j, r2, c))
                            if row is not None:
                                mat.data[row * cols + col] = field.add(
                                    mat.data[row * cols + col], val)
                    dv = v.d_matrix(j - 1)
                    for c2 in range(dv.cols):
                        val = dv[c, c2]
                        if not field.is_zero(val):
                            row = tgt_index.get((j - 1, r, c2))
                            if row is not None:
                                mat.data[row * cols + col] = field.sub(
                                    mat.data[row * cols + col], field.mul(sgn, val))
                d[k] = mat
            homs[(x, y)] = CochainComplex(field, GradedSpace(dims), d, check=False)

    def basis_compose(x, y, z, p, q, i, j):
        (j2, r2, c2) = bases[(y, z, p)][i]
        (j1, r1, c1) = bases[(x, y, q)][j]
        if j2 != j1 + q or c2 != r1:
            return {}
        out = index[(x, z, p + q)].get((j1, r2, c1))
        if out is None:
            return {}
        return {out: field.one}

    ids = {}
    for x in objects:
        v = cxs[x]
        b = get_basis(x, x, 0)
        coords = [field.zero] * len(b)
        for i, (j, r, c) in enumerate(b):
            if r == c:
                coords[i] = field.one
        ids[x] = coords

    cat = DGCategory(field, objects, homs, basis_compose, ids, name="endo")
    cat.complexes = cxs
    return cat


# ---------------------------------------------------------------------------
# randomized instances


def random_invertible(field, rng, n, span=2):
    """Random invertible n x n matrix with exactly invertible structure:
    product of unit triangular matrices and an invertible diagonal."""
    lower = Matrix.identity(field, n)
    upper = Matrix.identity(field, n)
    for r in range(n):
        for c in range(n):
            if r > c and rng.random() < 0.5:
                lower[r, c] = field.from_int(rng.randint(-span, span))
            elif r < c and rng.random() < 0.5:
                upper[r, c] = field.from_int(rng.randint(-span, span))
    diag = Matrix.zeros(field, n, n)
    for i in range(n):
        diag[i, i] = field.random_nonzero(rng)
    return lower.mul(diag).mul(upper)


def random_complex(field, rng, min_deg=-3, max_deg=3, max_dim=4,
                   interesting=True):
    """Random cochain complex, built from interval pieces (so d^2 = 0 exactly)
    then conjugated by random invertible degreewise maps.

    ``interesting`` forces at least one degree with nonzero cohomology.
    """
    degs = list(range(min_deg, max_deg + 1))
    lo = rng.randint(min_deg, max_deg - 1)
    hi = rng.randint(lo, max_deg)
    window = [k for k in degs if lo <= k <= hi]
    gens = {k: 0 for k in window}     # surviving cohomology classes
    pairs = {k: 0 for k in window}    # acyclic pieces k -> k+1
    for k in window:
        gens[k] = rng.choice((0, 0, 1, 1, 2))
        if k < hi:
            pairs[k] = rng.choice((0, 1, 1))
    if interesting and all(v == 0 for v in gens.values()):
        gens[rng.choice(window)] = 1

    dims = {}
    for k in window:
        dims[k] = gens[k] + pairs.get(k, 0) + pairs.get(k - 1, 0)
        dims[k] = min(dims[k], max_dim)
    # rebuild consistently after the clamp: drop pairs that no longer fit
    while True:
        changed = False
        for k in window:
            need = gens[k] + pairs.get(k, 0) + pairs.get(k - 1, 0)
            if need > max_dim:
                if pairs.get(k, 0) > 0:
                    pairs[k] -= 1
                elif pairs.get(k - 1, 0) > 0:
                    pairs[k - 1] -= 1
                else:
                    gens[k] = max(0, gens[k] - 1)
                changed = True
        if not changed:
            break
    dims = {k: gens[k] + pairs.get(k, 0) + pairs.get(k - 1, 0) for k in window}
    dims = {k: v for k, v in dims.items() if v}
    if not dims:
        dims = {0: 1}
        gens = {0: 1}
        pairs = {}

    space = GradedSpace(dims)
    d = {}
    for k in sorted(dims):
        if not space.dim(k + 1) or not pairs.get(k, 0):
            continue
        mat = Matrix.zeros(field, space.dim(k + 1), space.dim(k))
        # basis layout at degree k: [gens[k] | pairs[k] sources | pairs[k-1] targets]
        src_off = gens.get(k, 0)
        tgt_off = gens.get(k + 1, 0) + pairs.get(k + 1, 0)
        for t in range(pairs[k]):
            mat[tgt_off + t, src_off + t] = field.one
        d[k] = mat

    # conjugate by random degreewise invertible maps
    s = {k: random_invertible(field, rng, space.dim(k)) for k in space.degrees()}
    sinv = {}
    for k, mat in s.items():
        n = mat.rows
        inv_cols = [mat.solve([field.one if i == r else field.zero
                               for i in range(n)]) for r in range(n)]
        inv = Matrix.zeros(field, n, n)
        for c, col in enumerate(inv_cols):
            for r in range(n):
                inv.data[r * n + c] = col[r]
        sinv[k] = inv
    dd = {}
    for k in space.degrees():
        if space.dim(k) and space.dim(k + 1) and k in d:
            dd[k] = s.get(k + 1, Matrix.identity(field, space.dim(k + 1))) \
                .mul(d[k]).mul(sinv[k])
    return CochainComplex(field, space, dd)


def random_morphism(cat, x, y, degree, rng, span=2):
    n = cat.hom(x, y).dim(degree)
    return cat.morphism(x, y, degree,
                        [cat.field.random_scalar(rng, span) for _ in range(n)])


def random_cycle(cat, x, y, degree, rng, span=2):
    """Random closed morphism: random combination of a kernel basis."""
    basis = cat.hom(x, y).d_matrix(degree).nullspace()
    fl = cat.field
    coords = [fl.zero] * cat.hom(x, y).dim(degree)
    for v in basis:
        c = fl.random_scalar(rng, span)
        if fl.is_zero(c):
            continue
        coords = [fl.add(a, fl.mul(c, b)) for a, b in zip(coords, v)]
    return cat.morphism(x, y, degree, coords)


def random_strict_automorphism(cat, x, rng, tries=12):
    """Closed degree-0 automorphism of x, invertible on the nose.

    Built as  lambda id + d(r); invertibility is checked exactly and the
    candidate is resampled on failure.
    """
    fl = cat.field
    n0 = cat.hom(x, x).dim(0)
    for _ in range(tries):
        lam = fl.random_nonzero(rng)
        w = cat.scale(cat.identity(x), lam)
        r = random_morphism(cat, x, x, -1, rng, span=1)
        w = cat.add(w, cat.diff(r))
        mat = cat.left_compose_matrix(w, x, 0)
        if mat.rank() == n0:
            return w
    raise GenerationError("failed to generate a strict automorphism")


def strict_inverse(cat, w):
    """Exact two-sided inverse of an invertible closed degree-0 morphism."""
    x, y = w.source, w.target
    mat = cat.left_compose_matrix(w, y, 0)  # h in hom(y,x)... w o h
    target = list(cat.identity(y).coords)
    sol = mat.solve(target)
    if sol is None:
        raise InputError("morphism is not strictly invertible")
    winv = cat.morphism(y, x, 0, sol)
    # for invertible w a right inverse is two-sided; re-check exactly
    if not cat.eq(cat.compose(winv, w), cat.identity(x)):
        raise InputError("morphism is not strictly invertible")
    return winv


def random_homotopy_equivalence(cat, x, y, rng, tries=20):
    """Some homotopy equivalence x -> y with its witness, or None.

    Candidates are random closed degree-0 morphisms; each is tested with
    the exact witness solver.
    """
    for _ in range(tries):
        f = random_cycle(cat, x, y, 0, rng)
        if f.is_zero():
            continue
        w = is_homotopy_equivalence(cat, f)
        if w is not None:
            return f, w
    return None
