"""Cochain complexes (differential of degree +1), homology and mapping cones.

Suspension follows ``(S c)^m = c^(m+1)`` with negated differential; on a
homogeneous map of degree ``d`` the n-fold suspension multiplies by
``(-1)^(d*n)``.  The cone of ``f: X -> Y`` lives on ``Y + S X`` with
differential ``(y, sx) -> (dy + f(x), -s dx)``.
"""

from . import linalg
from .errors import SemanticError, ShapeMismatch
from .graded import GradedMap, GradedSpace, direct_sum, sign
from .report import Report

SHIFT_PREFIX = "sh."


class Complex:
    def __init__(self, space, differential, check=True):
        if differential.degree != 1:
            raise ShapeMismatch("a differential has degree +1")
        if differential.source != space or differential.target != space:
            raise ShapeMismatch("differential must be an endomorphism of the space")
        self.space = space
        self.d = differential
        if check:
            bad = _square_failures(differential)
            if bad:
                raise SemanticError(f"d o d != 0 in degree(s) {bad}")

    @property
    def field(self):
        return self.space.field

    @classmethod
    def zero_differential(cls, space):
        return cls(space, GradedMap.zero(space, space, 1), check=False)

    def dims(self):
        return self.space.dims()

    def euler_characteristic(self):
        return sum(sign(n) * k for n, k in self.space.dims().items())

    def __eq__(self, other):
        return isinstance(other, Complex) and self.space == other.space and self.d == other.d

    __hash__ = None

    def __repr__(self):
        return f"Complex({self.space.dims()})"


def _square_failures(d):
    dd = d.compose(d)
    return sorted({d.source.degree(lab) for lab in dd.cols})


def check_complex(c):
    rep = Report()
    bad = _square_failures(c.d)
    rep.add("d o d = 0", "axiom", not bad, f"fails in degree(s) {bad}" if bad else "")
    return rep


class ChainMap:
    """Degree-0 map commuting with differentials."""

    def __init__(self, source, target, map, check=True):
        if map.degree != 0:
            raise ShapeMismatch("chain maps have degree 0")
        if map.source != source.space or map.target != target.space:
            raise ShapeMismatch("map does not match the complexes")
        self.source = source
        self.target = target
        self.map = map
        if check and not self.commutes():
            raise SemanticError("map does not commute with the differentials")

    def commutes(self):
        return self.map.compose(self.source.d) == self.target.d.compose(self.map)

    def __call__(self, vec):
        return self.map(vec)

    @classmethod
    def identity(cls, c):
        return cls(c, c, GradedMap.identity(c.space), check=False)


class HomologyData:
    """Per-degree cohomology with chosen representative cycles.

    ``reps[n]`` lists coordinate vectors of cycles whose classes form the
    basis ``homology.basis(n)``.
    """

    def __init__(self, complex, reps, boundaries):
        self.complex = complex
        self.reps = reps
        self.boundaries = boundaries
        comps = {n: [f"h{n}_{i}" for i in range(len(r))] for n, r in reps.items() if r}
        self.homology = GradedSpace(complex.field, comps)

    def dims(self):
        return self.homology.dims()

    def dim(self, n):
        return self.homology.dim(n)

    def total_dim(self):
        return self.homology.dim()

    def representative(self, label):
        n, i = self.homology.index(label)
        return self.complex.space.vector(n, self.reps[n][i])

    def classify(self, vec):
        """Homology class of a cycle, as a vector in ``homology``."""
        space = self.complex.space
        if self.complex.d(vec):
            raise ValueError("not a cycle")
        out = {}
        for n, part in space.homogeneous_parts(vec).items():
            reps = self.reps.get(n, [])
            if not reps:
                continue
            cols = self.boundaries.get(n, []) + reps
            dim = space.dim(n)
            mat = linalg.transpose(cols, len(cols), dim)
            x = linalg.solve(mat, len(cols), space.coords(part, n), space.field)
            if x is None:
                raise ValueError("cycle outside the span of boundaries and representatives")
            nb = len(self.boundaries.get(n, []))
            out.update(self.homology.vector(n, x[nb:]))
        return out

    def is_boundary(self, vec):
        return not self.classify(vec)


def homology(c):
    field = c.field
    space = c.space
    reps, bounds = {}, {}
    for n in space.degrees():
        dim = space.dim(n)
        dn = c.d.block(n)
        if space.dim(n + 1):
            z = linalg.nullspace(dn, dim, field)
        else:
            z = [[field.one if i == j else field.zero for i in range(dim)] for j in range(dim)]
        prev = space.dim(n - 1)
        if prev:
            b = linalg.column_space(linalg.transpose(c.d.block(n - 1), dim, prev), dim, field)
        else:
            b = []
        cols = b + z
        if not cols:
            continue
        _, pivots = linalg.rref(linalg.transpose(cols, len(cols), dim), len(cols), field)
        chosen = [z[j - len(b)] for j in pivots if j >= len(b)]
        bounds[n] = b
        if chosen:
            reps[n] = chosen
    return HomologyData(c, reps, bounds)


def is_exact(c):
    return homology(c).total_dim() == 0


def shift(c, n=1, relabel=None):
    """``n``-fold suspension; labels are kept unless ``relabel`` is given."""
    relabel = relabel or (lambda s: s)
    space = c.space.shifted(n, relabel)
    s = sign(n)
    images = {relabel(lab): {relabel(t): s * x for t, x in col.items()} for lab, col in c.d.cols.items()}
    return Complex(space, GradedMap(space, space, 1, images, check=False), check=False)


def shift_map(f, n=1, relabel=None):
    relabel = relabel or (lambda s: s)
    src = f.source.shifted(n, relabel)
    tgt = f.target.shifted(n, relabel)
    s = sign(f.degree * n)
    images = {relabel(lab): {relabel(t): s * x for t, x in col.items()} for lab, col in f.cols.items()}
    return GradedMap(src, tgt, f.degree, images, check=False)


class Cone:
    """Mapping cone with its structure maps."""

    def __init__(self, complex, inclusion, projection, relabel):
        self.complex = complex
        self.inclusion = inclusion
        self.projection = projection
        self.relabel = relabel

    # allow ``c, inc, proj = cone(f)``
    def __iter__(self):
        return iter((self.complex, self.inclusion, self.projection))


def cone(f, relabel=None):
    relabel = relabel or (lambda s: SHIFT_PREFIX + s)
    X, Y = f.source, f.target
    sx = shift(X, 1, relabel)
    clash = set(Y.space.labels()) & set(sx.space.labels())
    if clash:
        raise SemanticError(f"cone labels clash: {sorted(clash)[:3]}")
    ds = direct_sum([Y.space, sx.space], tags=None)
    space = ds.space
    images = {}
    for lab in Y.space:
        images[lab] = dict(Y.d.image(lab))
    for lab in X.space:
        col = dict(f.map.image(lab))
        for t, x in X.d.image(lab).items():
            col[relabel(t)] = -x
        images[relabel(lab)] = col
    cc = Complex(space, GradedMap(space, space, 1, images, check=False), check=False)
    inc = ChainMap(Y, cc, ds.inclusions[0], check=False)
    proj = ds.projections[1]
    return Cone(cc, inc, proj, relabel)


def induced_homology_map(f, hs=None, ht=None):
    hs = hs or homology(f.source)
    ht = ht or homology(f.target)
    images = {}
    for lab in hs.homology:
        images[lab] = ht.classify(f.map(hs.representative(lab)))
    return GradedMap(hs.homology, ht.homology, 0, images, check=False)


def _bijective(g):
    field = g.field
    degs = set(g.source.degrees()) | set(g.target.degrees())
    for n in degs:
        a, b = g.source.dim(n), g.target.dim(n)
        if a != b:
            return False
        if a and linalg.rank(g.block(n), a, field) != a:
            return False
    return True


def is_quasi_iso(f, cross_check=True):
    """Whether ``f`` induces isomorphisms on homology.

    Decided on the induced map; the cone route must agree, otherwise this
    is an internal error.
    """
    verdict = _bijective(induced_homology_map(f))
    if cross_check:
        other = is_exact(cone(f).complex)
        assert other == verdict, "induced-map and cone routes disagree"
    return verdict


def quasi_iso_routes(f):
    """Both verdicts, for reports that show the agreement explicitly."""
    return _bijective(induced_homology_map(f)), is_exact(cone(f).complex)
