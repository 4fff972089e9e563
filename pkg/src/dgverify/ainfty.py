"""Functor families over the linearized n-simplex.

An object (X, f) is a tuple of objects X_0..X_n together with a degree-1
family f = {f_I} over the subsets I of {0..n} of size >= 2, an element
f_I in A^{1-k}(X_{i0}, X_{ik}) for |I| = k+1, subject to the
Maurer-Cartan equation and the requirement that every edge f_{ij} is a
homotopy equivalence.  Morphisms (X, f) -> (Y, g) of degree m are
families a = {a_I} over nonempty subsets, a_I in A^{m-k}(X_{i0}, Y_{ik}).

Operator conventions (fixed package-wide; all verified exactly by the
test suite):

    (delta phi)_I = (-1)^{|phi|} sum_{s=1}^{k-1} (-1)^s phi_{I minus i_s}
    (phi o psi)_I = sum_{s=0}^{k} (-1)^{|phi| s} phi_{i_s..i_k} o psi_{i_0..i_s}
    (D phi)_I     = (-1)^k d(phi_I)
    mc_defect(f)  = D f + delta f + f o f
    dinf(a)_I     = (D a)_I - sum_{s=1}^{k-1} (-1)^s a_{I minus i_s}
                    + (g o a)_I - (-1)^{|a|} (a o f)_I

With these choices dinf o dinf = 0 whenever both endpoints satisfy
Maurer-Cartan, dinf is a derivation for the convolution product, and the
explicit primitives below are exact identities.  Components indexed by a
subset the family does not admit (too small, or the full subset for
truncated data) read as zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .dgcore import (DGCategory, CochainComplex, GradedSpace, GenerationError,
                     InputError, Morphism, is_homotopy_equivalence,
                     random_morphism, random_strict_automorphism, strict_inverse)
from .linalg import Matrix


def subsets_of(n, min_size=1, max_size=None):
    """Nonempty subsets of {0..n} as increasing tuples, ordered by (size, lex)."""
    if max_size is None:
        max_size = n + 1
    out = []
    for size in range(min_size, max_size + 1):
        out.extend(itertools.combinations(range(n + 1), size))
    return out


class SubsetFamily:
    """Sparse subset-indexed family of morphisms of a uniform degree.

    ``min_size`` and ``allow_full`` form the admissibility mask: components
    outside the mask are identically zero and cannot be set.
    """

    __slots__ = ("cat", "n", "degree", "source", "target", "comps",
                 "min_size", "allow_full")

    def __init__(self, cat, n, degree, source, target, comps=None,
                 min_size=1, allow_full=True):
        if len(source) != n + 1 or len(target) != n + 1:
            raise InputError("object tuples must have length n+1")
        self.cat = cat
        self.n = n
        self.degree = degree
        self.source = tuple(source)
        self.target = tuple(target)
        self.min_size = min_size
        self.allow_full = allow_full
        self.comps = {}
        if comps:
            for I, mor in comps.items():
                self.set(tuple(I), mor)

    # -- mask and typing ------------------------------------------------------

    def admissible(self, I):
        if len(I) < self.min_size:
            return False
        if not self.allow_full and len(I) == self.n + 1:
            return False
        return True

    def expected_type(self, I):
        k = len(I) - 1
        return (self.source[I[0]], self.target[I[-1]], self.degree - k)

    def set(self, I, mor):
        I = tuple(I)
        if not self.admissible(I):
            raise InputError(f"subset {I} is outside the admissibility mask")
        src, tgt, deg = self.expected_type(I)
        if (mor.source, mor.target, mor.degree) != (src, tgt, deg):
            raise InputError(
                f"component at {I} must lie in hom({src},{tgt})^{deg}, "
                f"got hom({mor.source},{mor.target})^{mor.degree}")
        if mor.is_zero():
            self.comps.pop(I, None)
        else:
            self.comps[I] = mor

    def component(self, I):
        I = tuple(I)
        mor = self.comps.get(I)
        if mor is not None:
            return mor
        src, tgt, deg = self.expected_type(I)
        return self.cat.zero(src, tgt, deg)

    def component_or_none(self, I):
        if not self.admissible(I):
            return None
        return self.comps.get(tuple(I))

    def subsets(self):
        return subsets_of(self.n, self.min_size,
                          self.n + 1 if self.allow_full else self.n)

    # -- algebra ---------------------------------------------------------------

    def _like(self, degree=None, comps=None, min_size=None, allow_full=None,
              source=None, target=None):
        return SubsetFamily(
            self.cat, self.n,
            self.degree if degree is None else degree,
            self.source if source is None else source,
            self.target if target is None else target,
            comps or {},
            self.min_size if min_size is None else min_size,
            self.allow_full if allow_full is None else allow_full)

    def add(self, other):
        out = self._like(min_size=min(self.min_size, other.min_size),
                         allow_full=self.allow_full or other.allow_full)
        for I in set(self.comps) | set(other.comps):
            if out.admissible(I):
                out.set(I, self.cat.add(self.component(I), other.component(I)))
        return out

    def sub(self, other):
        return self.add(other.scale(self.cat.field.neg(self.cat.field.one)))

    def scale(self, c):
        out = self._like()
        for I, mor in self.comps.items():
            out.set(I, self.cat.scale(mor, c))
        return out

    def is_zero(self):
        return all(m.is_zero() for m in self.comps.values())

    def eq(self, other):
        if (self.n, self.degree) != (other.n, other.degree):
            return False
        for I in set(self.comps) | set(other.comps):
            a = self.comps.get(I)
            b = other.comps.get(I)
            if a is None:
                a = self.component(I)
            if b is None:
                b = other.component(I)
            if not self.cat.eq(a, b):
                return False
        return True

    def restrict(self, min_size=None, allow_full=None):
        """Drop components outside a tighter mask."""
        out = self._like(min_size=self.min_size if min_size is None else min_size,
                         allow_full=self.allow_full if allow_full is None else allow_full)
        for I, mor in self.comps.items():
            if out.admissible(I):
                out.set(I, mor)
        return out

    def nonzero_subsets(self):
        return sorted((I for I, m in self.comps.items() if not m.is_zero()),
                      key=lambda t: (len(t), t))


def _sgn(field, e):
    return field.one if e % 2 == 0 else field.neg(field.one)


# ---------------------------------------------------------------------------
# the operators


def delta(phi):
    """Interior-deletion operator, degree +1."""
    cat = phi.cat
    field = cat.field
    pref = _sgn(field, phi.degree)
    out = phi._like(degree=phi.degree + 1, min_size=1, allow_full=True)
    for I in subsets_of(phi.n, 3):
        k = len(I) - 1
        acc = None
        for s in range(1, k):
            term = phi.component_or_none(I[:s] + I[s + 1:])
            if term is None or term.is_zero():
                continue
            term = cat.scale(term, _sgn(field, s))
            acc = term if acc is None else cat.add(acc, term)
        if acc is not None and not acc.is_zero():
            out.set(I, cat.scale(acc, pref))
    return out


def circ(phi, psi, exclude_top_term=False):
    """Convolution product (phi o psi); with ``exclude_top_term`` the
    summand phi_{0..n} o psi_{0} at the full subset is dropped."""
    if phi.n != psi.n:
        raise InputError("level mismatch in convolution")
    if psi.target != phi.source:
        raise InputError("object tuples do not chain in convolution")
    cat = phi.cat
    field = cat.field
    n = phi.n
    full = tuple(range(n + 1))
    out = SubsetFamily(cat, n, phi.degree + psi.degree, psi.source, phi.target,
                       min_size=1, allow_full=True)
    for I in subsets_of(n, 1):
        k = len(I) - 1
        acc = None
        for s in range(0, k + 1):
            if exclude_top_term and I == full and s == 0:
                continue
            left = phi.component_or_none(I[s:])
            if left is None or left.is_zero():
                continue
            right = psi.component_or_none(I[:s + 1])
            if right is None or right.is_zero():
                continue
            term = cat.compose(left, right)
            if (phi.degree * s) % 2:
                term = cat.scale(term, field.neg(field.one))
            acc = term if acc is None else cat.add(acc, term)
        if acc is not None and not acc.is_zero():
            out.set(I, acc)
    return out


def famd(phi):
    """Componentwise differential with the simplicial twist (-1)^k."""
    cat = phi.cat
    out = phi._like(degree=phi.degree + 1)
    for I, mor in phi.comps.items():
        dm = cat.diff(mor)
        if not dm.is_zero():
            out.set(I, cat.scale(dm, _sgn(cat.field, len(I) - 1)))
    return out


# ---------------------------------------------------------------------------
# objects and transformations


@dataclass(frozen=True)
class MCObject:
    cat: object
    n: int
    objects: tuple
    f: SubsetFamily

    @property
    def truncated(self):
        return not self.f.allow_full

    def edge(self, i, j):
        return self.f.component((i, j))


def mc_object(cat, n, objects, comps, allow_full=True):
    fam = SubsetFamily(cat, n, 1, objects, objects, comps,
                       min_size=2, allow_full=allow_full)
    return MCObject(cat, n, tuple(objects), fam)


@dataclass(frozen=True)
class Transformation:
    source: MCObject
    target: MCObject
    fam: SubsetFamily

    @property
    def degree(self):
        return self.fam.degree

    @property
    def truncated(self):
        return not self.fam.allow_full

    def component(self, I):
        return self.fam.component(I)


def transformation(source, target, degree, comps=None, allow_full=None):
    if source.n != target.n or source.cat is not target.cat:
        raise InputError("transformation endpoints live at different levels")
    if allow_full is None:
        allow_full = not (source.truncated or target.truncated)
    fam = SubsetFamily(source.cat, source.n, degree, source.objects,
                       target.objects, comps or {}, min_size=1,
                       allow_full=allow_full)
    return Transformation(source, target, fam)


def mc_defect(obj):
    """The family D f + delta f + f o f over the object's admissible subsets."""
    f = obj.f if isinstance(obj, MCObject) else obj
    total = famd(f).add(delta(f)).add(circ(f, f))
    return total.restrict(min_size=2, allow_full=f.allow_full)


def dinf_family(a, f_src, g_tgt):
    """The differential of a degree-m family a: (X, f) -> (Y, g)."""
    m = a.degree
    field = a.cat.field
    neg_m = field.neg(_sgn(field, m))
    out = famd(a)
    out = out.add(delta(a).scale(neg_m))        # net coefficient -1 on deletions
    out = out.add(circ(g_tgt, a))
    out = out.add(circ(a, f_src).scale(neg_m))
    return out.restrict(min_size=1, allow_full=a.allow_full)


def dinf(t):
    """Differential on transformations; squares to zero over MC endpoints."""
    fam = dinf_family(t.fam, t.source.f, t.target.f)
    return Transformation(t.source, t.target, fam)


def compose_transformations(b, a):
    """Convolution composition; associative, unital, Leibniz against dinf."""
    if a.target.objects != b.source.objects or not a.target.f.eq(b.source.f):
        raise InputError("endpoint mismatch in transformation composition")
    fam = circ(b.fam, a.fam).restrict(
        min_size=1, allow_full=a.fam.allow_full and b.fam.allow_full)
    return Transformation(a.source, b.target, fam)


def identity_transformation(obj):
    t = transformation(obj, obj, 0)
    for i in range(obj.n + 1):
        t.fam.set((i,), obj.cat.identity(obj.objects[i]))
    return t


def scale_transformation(t, c):
    return Transformation(t.source, t.target, t.fam.scale(c))


def add_transformations(t, u):
    if t.source.objects != u.source.objects or t.target.objects != u.target.objects:
        raise InputError("endpoint mismatch")
    return Transformation(t.source, t.target, t.fam.add(u.fam))


def transformations_equal(t, u):
    return t.fam.eq(u.fam)


# ---------------------------------------------------------------------------
# validation


def validate_mc_object(obj, check_edges=True):
    """Maurer-Cartan defect per subset plus a homotopy witness per edge."""
    failures = []
    defect = mc_defect(obj)
    for I in defect.nonzero_subsets():
        failures.append({"kind": "mc_defect", "subset": list(I)})
    if check_edges:
        for (i, j) in itertools.combinations(range(obj.n + 1), 2):
            w = is_homotopy_equivalence(obj.cat, obj.edge(i, j))
            if w is None:
                failures.append({"kind": "edge_not_equivalence", "edge": [i, j]})
    return {"status": "pass" if not failures else "fail", "failures": failures}


# ---------------------------------------------------------------------------
# the constant inclusion and the two explicit primitives


def constant_object(cat, x, n):
    """cX: the constant tuple with identity edges and no higher homotopies."""
    comps = {}
    for (i, j) in itertools.combinations(range(n + 1), 2):
        comps[(i, j)] = cat.identity(x)
    return mc_object(cat, n, (x,) * (n + 1), comps)


def constant_transformation(h, n, cat=None):
    """c(h): singleton components h, higher components zero."""
    cat = cat or getattr(h, "cat", None)
    src = constant_object(cat, h.source, n)
    tgt = constant_object(cat, h.target, n)
    t = transformation(src, tgt, h.degree)
    if not h.is_zero():
        for i in range(n + 1):
            t.fam.set((i,), h)
    return t


def constant_inclusion(cat, x, n):
    """The constant inclusion on objects or on morphisms, by input kind."""
    if isinstance(x, Morphism):
        return constant_transformation(x, n, cat)
    return constant_object(cat, x, n)


def _require_constant(obj):
    x = obj.objects[0]
    if any(o != x for o in obj.objects):
        raise InputError("endpoint is not a constant object")
    idx = obj.cat.identity(x)
    for (i, j) in itertools.combinations(range(obj.n + 1), 2):
        if not obj.cat.eq(obj.edge(i, j), idx):
            raise InputError("endpoint is not a constant object")
    for I in obj.f.nonzero_subsets():
        if len(I) > 2:
            raise InputError("endpoint is not a constant object")
    return x


def exactness_primitive(a):
    """For closed degree-0 a: cX -> cY, the degree -1 primitive b with
    dinf(b) = a - c(a_0); components  b_I = -a_{{0} u I}  when 0 not in I,
    zero otherwise."""
    if a.degree != 0:
        raise InputError("exactness primitive requires degree 0")
    _require_constant(a.source)
    _require_constant(a.target)
    if not dinf(a).fam.is_zero():
        raise InputError("exactness primitive requires a closed transformation")
    cat = a.source.cat
    neg = cat.field.neg(cat.field.one)
    b = transformation(a.source, a.target, -1)
    for I in subsets_of(a.source.n, 1):
        if I[0] == 0:
            continue
        comp = a.fam.component_or_none((0,) + I)
        if comp is not None and not comp.is_zero():
            b.fam.set(I, cat.scale(comp, neg))
    return b


def strictification_point(obj):
    """The closed degree-0 transformation cX_0 -> (X, f) with singleton
    components 1_{X_0} and f_{0i}, and higher components f_{{0} u I}."""
    if obj.truncated:
        raise InputError("strictification point requires a full-level object")
    cat = obj.cat
    n = obj.n
    src = constant_object(cat, obj.objects[0], n)
    t = transformation(src, obj, 0)
    t.fam.set((0,), cat.identity(obj.objects[0]))
    for I in subsets_of(n, 1, n):
        if I[0] == 0:
            continue
        comp = obj.f.component_or_none((0,) + I)
        if comp is not None and not comp.is_zero():
            t.fam.set(I, comp)
    return t


# ---------------------------------------------------------------------------
# simplicial structure


def is_monotone(theta, n):
    return all(0 <= v <= n for v in theta) and \
        all(theta[i] <= theta[i + 1] for i in range(len(theta) - 1))


def face_map(i, n):
    """The injection [n-1] -> [n] skipping i."""
    return tuple(v if v < i else v + 1 for v in range(n))


def degeneracy_map(i, n):
    """The surjection [n+1] -> [n] repeating i."""
    return tuple(v if v <= i else v - 1 for v in range(n + 2))


def compose_monotone(theta, theta2):
    """theta o theta2 (theta2 applied first)."""
    return tuple(theta[v] for v in theta2)


def reindex(theta, datum):
    """Structure map along a monotone theta: [m] -> [n].

    Components at J are pulled back from theta(J) when theta is injective
    on J.  Collapsed pairs become identities for object families (strict
    unitality) and zero for transformations; larger collapsed subsets are
    zero in both cases.
    """
    if isinstance(datum, Transformation):
        src = reindex(theta, datum.source)
        tgt = reindex(theta, datum.target)
        fam = _reindex_family(theta, datum.fam, is_object=False)
        return Transformation(src, tgt, fam)
    obj = datum
    fam = _reindex_family(theta, obj.f, is_object=True)
    return MCObject(obj.cat, len(theta) - 1, tuple(obj.objects[v] for v in theta), fam)


def _reindex_family(theta, fam, is_object):
    n = fam.n
    m = len(theta) - 1
    if not is_monotone(theta, n):
        raise InputError(f"not a monotone map into [{n}]: {theta}")
    cat = fam.cat
    src = tuple(fam.source[v] for v in theta)
    tgt = tuple(fam.target[v] for v in theta)
    out = SubsetFamily(cat, m, fam.degree, src, tgt,
                       min_size=fam.min_size, allow_full=fam.allow_full)
    for J in subsets_of(m, fam.min_size, m + 1 if fam.allow_full else m):
        img = tuple(theta[j] for j in J)
        if len(set(img)) == len(img):
            comp = fam.component_or_none(img)
            if comp is not None and not comp.is_zero():
                out.set(J, comp)
        elif is_object and len(J) == 2:
            out.set(J, cat.identity(fam.source[img[0]]))
        # non-injective with |J| > 2, or a collapsed transformation pair: zero
    return out


def gauge_transport(obj, isos):
    """Conjugate an MC family by strictly invertible closed degree-0 maps
    w_i: X_i -> Y_i; returns the transported object and the strict
    transformation with singleton components w_i."""
    cat = obj.cat
    if len(isos) != obj.n + 1:
        raise InputError("need one iso per tuple position")
    invs = [strict_inverse(cat, w) for w in isos]
    comps = {}
    for I in obj.f.nonzero_subsets():
        comps[I] = cat.compose(isos[I[-1]],
                               cat.compose(obj.f.component(I), invs[I[0]]))
    new_obj = MCObject(cat, obj.n, tuple(w.target for w in isos),
                       SubsetFamily(cat, obj.n, 1,
                                    tuple(w.target for w in isos),
                                    tuple(w.target for w in isos),
                                    comps, min_size=2,
                                    allow_full=obj.f.allow_full))
    t = transformation(obj, new_obj, 0)
    for i, w in enumerate(isos):
        t.fam.set((i,), w)
    return new_obj, t


# ---------------------------------------------------------------------------
# materialized Hom complexes of the functor tower


def fn_hom_dims(source, target, degree):
    """dim of the transformation space in the given degree:
    sum over subsets I of dim A^{degree-k}(X_{i0}, Y_{ik})."""
    cat = source.cat
    total = 0
    full = not (source.truncated or target.truncated)
    for I in subsets_of(source.n, 1, source.n + 1 if full else source.n):
        k = len(I) - 1
        total += cat.hom(source.objects[I[0]],
                         target.objects[I[-1]]).dim(degree - k)
    return total


class FnHom:
    """Materialization of the transformation complex between two objects."""

    def __init__(self, source, target):
        if source.n != target.n:
            raise InputError("level mismatch")
        self.source = source
        self.target = target
        self.cat = source.cat
        self.n = source.n
        self.full = not (source.truncated or target.truncated)
        self.subsets = subsets_of(self.n, 1, self.n + 1 if self.full else self.n)
        self._layout = {}

    def layout(self, degree):
        """Blocks [(I, offset, dim)] at the given total degree."""
        if degree not in self._layout:
            blocks = []
            off = 0
            for I in self.subsets:
                k = len(I) - 1
                dim = self.cat.hom(self.source.objects[I[0]],
                                   self.target.objects[I[-1]]).dim(degree - k)
                if dim:
                    blocks.append((I, off, dim))
                off += dim
            self._layout[degree] = (blocks, off)
        return self._layout[degree]

    def dim(self, degree):
        return self.layout(degree)[1]

    def support(self):
        degs = set()
        for I in self.subsets:
            k = len(I) - 1
            cx = self.cat.hom(self.source.objects[I[0]],
                              self.target.objects[I[-1]])
            for d in cx.degrees():
                degs.add(d + k)
        return sorted(degs)

    def to_coords(self, fam, degree):
        field = self.cat.field
        vec = [field.zero] * self.dim(degree)
        blocks, _ = self.layout(degree)
        for I, off, dim in blocks:
            comp = fam.component_or_none(I)
            if comp is not None:
                vec[off:off + dim] = list(comp.coords)
        return vec

    def from_coords(self, degree, vec):
        fam = SubsetFamily(self.cat, self.n, degree,
                           self.source.objects, self.target.objects,
                           min_size=1, allow_full=self.full)
        blocks, total = self.layout(degree)
        if len(vec) != total:
            raise InputError("coordinate length mismatch")
        for I, off, dim in blocks:
            src, tgt, deg = fam.expected_type(I)
            mor = self.cat.morphism(src, tgt, deg, vec[off:off + dim])
            if not mor.is_zero():
                fam.set(I, mor)
        return fam

    def basis_family(self, degree, idx):
        blocks, total = self.layout(degree)
        for I, off, dim in blocks:
            if off <= idx < off + dim:
                fam = SubsetFamily(self.cat, self.n, degree,
                                   self.source.objects, self.target.objects,
                                   min_size=1, allow_full=self.full)
                src, tgt, deg = fam.expected_type(I)
                fam.set(I, self.cat.basis_morphism(src, tgt, deg, idx - off))
                return fam
        raise InputError("basis index out of range")

    def dinf_matrix(self, degree):
        cols = []
        for idx in range(self.dim(degree)):
            fam = self.basis_family(degree, idx)
            image = dinf_family(fam, self.source.f, self.target.f)
            cols.append(self.to_coords(image, degree + 1))
        out_dim = self.dim(degree + 1)
        mat = Matrix.zeros(self.cat.field, out_dim, len(cols))
        for j, col in enumerate(cols):
            for r in range(out_dim):
                mat.data[r * len(cols) + j] = col[r]
        return mat

    def complex(self, degrees=None):
        degs = self.support() if degrees is None else sorted(degrees)
        dims = {d: self.dim(d) for d in degs}
        d = {}
        for deg in degs:
            if dims.get(deg) and dims.get(deg + 1):
                d[deg] = self.dinf_matrix(deg)
        return CochainComplex(self.cat.field, GradedSpace(dims), d, check=False)


def fn_category(mcobjs, degrees=None, name="Fn"):
    """DG-category materialization of the functor tower on the given objects.

    Hom complexes are the transformation complexes with differential dinf,
    composition is the convolution product.  ``degrees`` restricts the
    materialized window (the differential is cut off outside it).
    """
    if not mcobjs:
        raise InputError("need at least one object")
    cat = mcobjs[0].cat
    labels = list(range(len(mcobjs)))
    fnhoms = {}
    homs = {}
    for i in labels:
        for j in labels:
            fh = FnHom(mcobjs[i], mcobjs[j])
            fnhoms[(i, j)] = fh
            homs[(i, j)] = fh.complex(degrees)

    memo = {}

    def basis_compose(x, y, z, p, q, i, j):
        key = (x, y, z, p, q, i, j)
        if key not in memo:
            left = fnhoms[(y, z)].basis_family(p, i)
            right = fnhoms[(x, y)].basis_family(q, j)
            prod = circ(left, right)
            coords = fnhoms[(x, z)].to_coords(
                prod.restrict(min_size=1,
                              allow_full=fnhoms[(x, z)].full), p + q)
            memo[key] = {l: v for l, v in enumerate(coords)
                         if not cat.field.is_zero(v)}
        return memo[key]

    ids = {}
    for i in labels:
        ids[i] = fnhoms[(i, i)].to_coords(identity_transformation(mcobjs[i]).fam, 0)

    fncat = DGCategory(cat.field, labels, homs, basis_compose, ids, name=name)
    fncat.fnhoms = fnhoms
    fncat.mcobjs = list(mcobjs)
    return fncat


def is_hoequiv_fn(a, return_witness=True):
    """Invertibility of a closed degree-0 transformation in H^0 of the tower.

    Joint exact solve for a closed degree-0 inverse b and homotopies h1, h2
    with  b a = id + dinf(h1)  and  a b = id + dinf(h2); None when [a] is
    not invertible.
    """
    if a.degree != 0:
        raise InputError("homotopy equivalence candidates must have degree 0")
    if not dinf(a).fam.is_zero():
        raise InputError("homotopy equivalence candidates must be closed")
    fncat = fn_category([a.source, a.target], degrees=(-1, 0, 1))
    amor = fncat.morphism(0, 1, 0, fncat.fnhoms[(0, 1)].to_coords(a.fam, 0))
    w = is_homotopy_equivalence(fncat, amor)
    if w is None:
        return None
    if not return_witness:
        return True
    fh_b = fncat.fnhoms[(1, 0)]
    b = Transformation(a.target, a.source, fh_b.from_coords(0, list(w.g.coords)))
    h1 = Transformation(a.source, a.source,
                        fncat.fnhoms[(0, 0)].from_coords(-1, list(w.r_x.coords)))
    h2 = Transformation(a.target, a.target,
                        fncat.fnhoms[(1, 1)].from_coords(-1, list(w.r_y.coords)))
    return b, h1, h2


def pointwise_hoequiv(a):
    """The pointwise criterion: every singleton component is a homotopy
    equivalence in the base category."""
    cat = a.source.cat
    return all(is_homotopy_equivalence(cat, a.component((i,))) is not None
               for i in range(a.source.n + 1))


# ---------------------------------------------------------------------------
# randomized generators


def random_family(source, target, degree, rng, span=1, density=0.7,
                  min_size=1, allow_full=True):
    fam = SubsetFamily(source.cat, source.n, degree, source.objects,
                       target.objects, min_size=min_size, allow_full=allow_full)
    cat = source.cat
    for I in fam.subsets():
        if rng.random() > density:
            continue
        src, tgt, deg = fam.expected_type(I)
        mor = random_morphism(cat, src, tgt, deg, rng, span)
        if not mor.is_zero():
            fam.set(I, mor)
    return fam


def _random_frame(cat, x, y, rng):
    """A homotopy equivalence x -> y with witness, biased toward cheap
    perturbations of identities when x == y."""
    from .dgcore import random_cycle
    if x == y:
        lam = cat.field.random_nonzero(rng)
        e = cat.scale(cat.identity(x), lam)
        e = cat.add(e, cat.diff(random_morphism(cat, x, x, -1, rng, span=1)))
        w = is_homotopy_equivalence(cat, e)
        if w is not None:
            return e, w
    for _ in range(15):
        e = random_cycle(cat, x, y, 0, rng)
        if e.is_zero():
            continue
        w = is_homotopy_equivalence(cat, e)
        if w is not None:
            return e, w
    raise GenerationError(f"no homotopy equivalence found {x} -> {y}")


def _generate_mc_once(cat, n, rng, objects=None, truncated=False, span=1):
    if objects is None:
        x0 = rng.choice(cat.objects)
        h0 = cat.hom(x0, x0).cohomology_dims()
        pool = [y for y in cat.objects
                if cat.hom(y, y).cohomology_dims() == h0
                and cat.hom(x0, y).cohomology_dims().get(0, 0) > 0] or [x0]
        objects = (x0,) + tuple(rng.choice(pool) for _ in range(n))
    frames = [None] * (n + 1)
    invs = [None] * (n + 1)
    frames[0] = cat.identity(objects[0])
    invs[0] = cat.identity(objects[0])
    for i in range(1, n + 1):
        e, w = _random_frame(cat, objects[0], objects[i], rng)
        frames[i] = e
        invs[i] = w.g
    comps = {}
    for (i, j) in itertools.combinations(range(n + 1), 2):
        edge = cat.compose(frames[j], invs[i])
        edge = cat.add(edge, cat.diff(
            random_morphism(cat, objects[i], objects[j], -1, rng, span)))
        comps[(i, j)] = edge
    fam = SubsetFamily(cat, n, 1, objects, objects, comps,
                       min_size=2, allow_full=not truncated)
    max_size = n if truncated else n + 1
    for size in range(3, max_size + 1):
        partial = fam
        rest = delta(partial).add(circ(partial, partial))
        for I in itertools.combinations(range(n + 1), size):
            k = size - 1
            src, tgt, deg = fam.expected_type(I)
            rhs = rest.component(I)
            rhs = cat.scale(rhs, _sgn(cat.field, k + 1))  # d(f_I) = -(-1)^k (...)
            cx = cat.hom(src, tgt)
            sol = cx.d_matrix(deg).solve(list(rhs.coords))
            if sol is None:
                raise GenerationError(f"Maurer-Cartan level {size} inconsistent at {I}")
            base = cx.d_matrix(deg).nullspace()
            coords = sol
            for v in base:
                c = cat.field.random_scalar(rng, span)
                if rng.random() < 0.5 and not cat.field.is_zero(c):
                    coords = [cat.field.add(p, cat.field.mul(c, q))
                              for p, q in zip(coords, v)]
            mor = cat.morphism(src, tgt, deg, coords)
            if not mor.is_zero():
                fam.set(I, mor)
    return MCObject(cat, n, tuple(objects), fam)


def generate_mc_object(cat, n, rng, objects=None, truncated=False,
                       max_retries=8, span=1, validate=True):
    """Random Maurer-Cartan object: coherent homotopy-equivalence edges,
    then the higher components solved cardinality by cardinality.  Retries
    with fresh randomness when a level is inconsistent."""
    last = None
    for _ in range(max_retries):
        try:
            obj = _generate_mc_once(cat, n, rng, objects, truncated, span)
        except GenerationError as exc:
            last = exc
            continue
        if validate:
            rep = validate_mc_object(obj, check_edges=True)
            if rep["status"] != "pass":
                last = GenerationError(f"generated object failed validation: "
                                       f"{rep['failures'][:2]}")
                continue
        return obj
    raise GenerationError(f"mc object generation exhausted retries: {last}")


def generate_hoequiv(obj, rng, span=1, compositions=1):
    """Random self-equivalence of (X, f): an invertible scalar times
    id + dinf(u) for random degree -1 families u, optionally composed."""
    cat = obj.cat
    t = identity_transformation(obj)
    for _ in range(max(1, compositions)):
        u = Transformation(obj, obj, random_family(obj, obj, -1, rng, span=span,
                                                   allow_full=not obj.truncated))
        step = add_transformations(identity_transformation(obj), dinf(u))
        lam = cat.field.random_nonzero(rng)
        step = scale_transformation(step, lam)
        t = compose_transformations(step, t)
    return t
