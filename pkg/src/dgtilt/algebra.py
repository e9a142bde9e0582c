"""Differential graded algebras given by structure constants.

Multiplication is stored sparsely as ``{(a, b): vector}`` over basis labels;
omitted pairs multiply to zero.  The unit is a vector, so path algebras
whose unit is a sum of vertex idempotents need no special casing.
"""

from itertools import product as iproduct

from .complexes import ChainMap, Complex, homology, is_quasi_iso
from .errors import SemanticError, ShapeMismatch
from .graded import GradedMap, GradedSpace, sign, vaxpy, vclean
from .report import Report

MAX_WITNESSES = 3


def _witness(bad):
    if not bad:
        return ""
    shown = ", ".join(str(b) for b in bad[:MAX_WITNESSES])
    more = f" (+{len(bad) - MAX_WITNESSES} more)" if len(bad) > MAX_WITNESSES else ""
    return shown + more


class DGAlgebra:
    def __init__(self, space, d, unit, mul, name=None, check=True):
        if not isinstance(d, GradedMap):
            d = GradedMap(space, space, 1, d)
        self.complex = Complex(space, d, check=False)
        self.unit = vclean(unit)
        self.mul = {}
        for (a, b), vec in mul.items():
            vec = vclean(vec)
            if vec:
                self.mul[(a, b)] = vec
        self.name = name
        if check:
            self._check_shapes()

    def _check_shapes(self):
        sp = self.space
        for lab in self.unit:
            if lab not in sp:
                raise SemanticError(f"unit mentions unknown label {lab!r}")
            if sp.degree(lab) != 0:
                raise SemanticError(f"unit term {lab!r} is not in degree 0")
        for (a, b), vec in self.mul.items():
            for lab in (a, b):
                if lab not in sp:
                    raise SemanticError(f"product {a}*{b} mentions unknown label {lab!r}")
            want = sp.degree(a) + sp.degree(b)
            for t in vec:
                if t not in sp:
                    raise SemanticError(f"product {a}*{b} has unknown term {t!r}")
                if sp.degree(t) != want:
                    raise SemanticError(f"product {a}*{b} has a term {t!r} of degree "
                                        f"{sp.degree(t)}, expected {want}")

    @property
    def space(self):
        return self.complex.space

    @property
    def d(self):
        return self.complex.d

    @property
    def field(self):
        return self.space.field

    def deg(self, label):
        return self.space.degree(label)

    def basis(self):
        return self.space.labels()

    def dim(self):
        return self.space.dim()

    def mul_basis(self, a, b):
        return self.mul.get((a, b), {})

    def product(self, u, v):
        acc = {}
        for a, x in u.items():
            for b, y in v.items():
                vec = self.mul.get((a, b))
                if vec:
                    vaxpy(acc, x * y, vec)
        return acc

    def left_mult(self, u, degree=None):
        """The map ``x -> u x`` for a homogeneous ``u``."""
        if degree is None:
            degree = self.space.vec_degree(u) or 0
        sp = self.space
        return GradedMap(sp, sp, degree, {b: self.product(u, {b: self.field.one}) for b in sp},
                         check=False)

    def one(self):
        return dict(self.unit)

    def __eq__(self, other):
        return (isinstance(other, DGAlgebra) and self.complex == other.complex
                and self.unit == other.unit and self.mul == other.mul)

    __hash__ = None

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"DGAlgebra{tag}({self.space.dims()})"


def check_dga(a):
    """Unit, associativity, Leibniz, d^2 = 0 and d(1) = 0, with witnesses."""
    rep = Report()
    sp = a.space
    one = a.field.one
    labels = sp.labels()
    e = {lab: {lab: one} for lab in labels}

    bad = [lab for lab in labels
           if a.product(a.unit, e[lab]) != e[lab] or a.product(e[lab], a.unit) != e[lab]]
    rep.add("unit", "axiom", not bad, _witness(bad))

    bad = []
    for x, y, z in iproduct(labels, repeat=3):
        if a.product(a.product(e[x], e[y]), e[z]) != a.product(e[x], a.product(e[y], e[z])):
            bad.append((x, y, z))
    rep.add("associativity", "axiom", not bad, _witness(bad))

    bad = []
    for x, y in iproduct(labels, repeat=2):
        lhs = a.d(a.mul_basis(x, y))
        rhs = a.product(a.d(e[x]), e[y])
        vaxpy(rhs, sign(sp.degree(x)), a.product(e[x], a.d(e[y])))
        if lhs != rhs:
            bad.append((x, y))
    rep.add("Leibniz", "axiom", not bad, _witness(bad))

    rep.extend(_d_squared(a.complex))
    du = a.d(a.unit)
    rep.add("d(1) = 0", "axiom", not du, str(du) if du else "")
    return rep


def _d_squared(c):
    from .complexes import check_complex
    return check_complex(c)


def opposite(a, name=None):
    """Same complex and unit, product ``a.b = (-1)^{|a||b|} ba``."""
    sp = a.space
    mul = {}
    for (x, y), vec in a.mul.items():
        s = sign(sp.degree(x) * sp.degree(y))
        mul[(y, x)] = {t: s * c for t, c in vec.items()}
    if name is None and a.name:
        name = a.name[:-3] if a.name.endswith("^op") else a.name + "^op"
    return DGAlgebra(sp, a.d, a.unit, mul, name=name, check=False)


def ground(field, label="1"):
    """The field itself as a DGA in degree 0."""
    sp = GradedSpace(field, {0: [label]})
    one = field.one
    return DGAlgebra(sp, {}, {label: one}, {(label, label): {label: one}}, name="k")


class DGAMorphism:
    def __init__(self, source, target, map):
        if map.degree != 0:
            raise ShapeMismatch("algebra morphisms have degree 0")
        if map.source != source.space or map.target != target.space:
            raise ShapeMismatch("map does not match the algebras")
        self.source = source
        self.target = target
        self.map = map

    def __call__(self, vec):
        return self.map(vec)

    def chain_map(self):
        return ChainMap(self.source.complex, self.target.complex, self.map, check=False)

    @classmethod
    def identity(cls, a):
        return cls(a, a, GradedMap.identity(a.space))


def check_dga_morphism(f):
    rep = Report()
    src, tgt = f.source, f.target
    one = src.field.one
    ok = f(src.unit) == tgt.unit
    rep.add("unit preserved", "axiom", ok, "" if ok else f"image of unit is {f(src.unit)}")
    ok = f.chain_map().commutes()
    rep.add("chain map", "axiom", ok)
    bad = []
    labels = src.space.labels()
    for x, y in iproduct(labels, repeat=2):
        if f(src.mul_basis(x, y)) != tgt.product(f({x: one}), f({y: one})):
            bad.append((x, y))
    rep.add("multiplicative", "axiom", not bad, _witness(bad))
    return rep


def is_dga_quasi_iso(f):
    return check_dga_morphism(f).ok and is_quasi_iso(f.chain_map())


class HomologyAlgebra:
    """H(A) with the product induced on representative cycles."""

    def __init__(self, algebra, data, product_algebra):
        self.algebra = algebra
        self.data = data
        self.H = product_algebra


def homology_algebra(a):
    data = homology(a.complex)
    hs = data.homology
    mul = {}
    reps = {lab: data.representative(lab) for lab in hs}
    for x, y in iproduct(hs.labels(), repeat=2):
        mul[(x, y)] = data.classify(a.product(reps[x], reps[y]))
    unit = data.classify(a.unit)
    H = DGAlgebra(hs, {}, unit, mul, name=None)
    return HomologyAlgebra(a, data, H)


def tensor_algebra(a, b, name=None):
    """``a (x) b`` with ``(x(x)y)(x'(x)y') = (-1)^{|y||x'|} xx' (x) yy'``.

    Labels are ``x|y``.
    """
    if a.field != b.field:
        from .errors import FieldMismatch
        raise FieldMismatch("tensor of algebras over different fields")
    field = a.field
    comps = {}
    for x, nx in a.space.pairs():
        for y, ny in b.space.pairs():
            comps.setdefault(nx + ny, []).append(f"{x}|{y}")
    sp = GradedSpace(field, comps)
    da, db = a.d, b.d
    d = {}
    for x, nx in a.space.pairs():
        for y, _ in b.space.pairs():
            col = {}
            for t, c in da.image(x).items():
                vaxpy(col, c, {f"{t}|{y}": field.one})
            for t, c in db.image(y).items():
                vaxpy(col, sign(nx) * c, {f"{x}|{t}": field.one})
            d[f"{x}|{y}"] = col
    unit = {}
    for x, c in a.unit.items():
        for y, e in b.unit.items():
            unit[f"{x}|{y}"] = c * e
    mul = {}
    for (x, x2), u in a.mul.items():
        for (y, y2), v in b.mul.items():
            s = sign(b.deg(y) * a.deg(x2))
            vec = {}
            for t, c in u.items():
                for r, e in v.items():
                    vec[f"{t}|{r}"] = s * c * e
            mul[(f"{x}|{y}", f"{x2}|{y2}")] = vec
    return DGAlgebra(sp, d, unit, mul, name=name, check=False)


def enveloping(r, s):
    """``R (x) S^op``, whose left modules are the (R, S)-bimodules."""
    return tensor_algebra(r, opposite(s), name="env")


def orthogonal_idempotents(a):
    """Unit terms as basis idempotents, when that decomposition is clean.

    Returns the labels if the unit is a sum of distinct basis elements of
    degree 0 with zero differential that are idempotent and pairwise
    orthogonal; otherwise None.
    """
    one = a.field.one
    labels = list(a.unit)
    if any(a.unit[lab] != one for lab in labels):
        return None
    for e in labels:
        if a.d.image(e):
            return None
        for f in labels:
            want = {e: one} if e == f else {}
            if a.mul_basis(e, f) != want:
                return None
    return labels
