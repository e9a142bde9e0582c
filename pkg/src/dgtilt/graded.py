"""Finite-support graded vector spaces and homogeneous linear maps.

Vectors are sparse dicts ``{label: coefficient}`` holding nonzero entries
only.  A :class:`GradedMap` stores the image of every source basis label;
dense per-degree blocks are produced on demand for elimination.
"""

from . import linalg
from .errors import FieldMismatch, NotASubspace, SemanticError, ShapeMismatch


# -- sparse vectors ---------------------------------------------------------

def vadd(u, v):
    out = dict(u)
    for k, x in v.items():
        y = out.get(k)
        s = x if y is None else y + x
        if s:
            out[k] = s
        elif y is not None:
            del out[k]
    return out


def vscale(c, u):
    if not c:
        return {}
    return {k: c * x for k, x in u.items()}


def vaxpy(acc, c, u):
    """In place ``acc += c*u``."""
    if not c:
        return acc
    for k, x in u.items():
        y = acc.get(k)
        s = c * x if y is None else y + c * x
        if s:
            acc[k] = s
        elif y is not None:
            del acc[k]
    return acc


def vsum(terms):
    """Sum of ``(coefficient, vector)`` pairs."""
    acc = {}
    for c, u in terms:
        vaxpy(acc, c, u)
    return acc


def vclean(u):
    return {k: x for k, x in u.items() if x}


def sign(e):
    return -1 if e % 2 else 1


# -- spaces -----------------------------------------------------------------

class GradedSpace:
    """Graded vector space with a labelled basis in each degree.

    ``components`` maps degree to an ordered sequence of labels; labels are
    unique across the whole space.
    """

    def __init__(self, field, components):
        self.field = field
        comps = {}
        where = {}
        for n in sorted(components):
            labels = tuple(components[n])
            if not labels:
                continue
            for i, lab in enumerate(labels):
                if lab in where:
                    raise SemanticError(f"duplicate basis label {lab!r}")
                where[lab] = (n, i)
            comps[n] = labels
        self.components = comps
        self._where = where

    @classmethod
    def from_pairs(cls, field, pairs):
        """Build from ``(label, degree)`` pairs, keeping their order within a degree."""
        comps = {}
        for lab, n in pairs:
            comps.setdefault(n, []).append(lab)
        return cls(field, comps)

    def degrees(self):
        return list(self.components)

    def basis(self, n):
        return self.components.get(n, ())

    def dim(self, n=None):
        if n is None:
            return len(self._where)
        return len(self.components.get(n, ()))

    def dims(self):
        return {n: len(b) for n, b in self.components.items()}

    def labels(self):
        return [lab for n in self.components for lab in self.components[n]]

    def pairs(self):
        return [(lab, n) for n in self.components for lab in self.components[n]]

    def degree(self, label):
        return self._where[label][0]

    def index(self, label):
        return self._where[label]

    def __contains__(self, label):
        return label in self._where

    def __iter__(self):
        return iter(self.labels())

    def __len__(self):
        return len(self._where)

    def coords(self, vec, n):
        pos = {lab: i for i, lab in enumerate(self.basis(n))}
        out = [self.field.zero] * len(pos)
        for lab, x in vec.items():
            if lab not in pos:
                raise ShapeMismatch(f"{lab!r} is not a degree-{n} basis element")
            out[pos[lab]] = x
        return out

    def vector(self, n, coords):
        return {lab: x for lab, x in zip(self.basis(n), coords) if x}

    def homogeneous_parts(self, vec):
        parts = {}
        for lab, x in vec.items():
            parts.setdefault(self.degree(lab), {})[lab] = x
        return parts

    def vec_degree(self, vec):
        """Degree of a nonzero homogeneous vector (None for zero)."""
        ds = {self.degree(lab) for lab in vec}
        if len(ds) > 1:
            raise ShapeMismatch("vector is not homogeneous")
        return ds.pop() if ds else None

    def shifted(self, n, relabel=None):
        """The space with every label moved from degree d to d - n."""
        relabel = relabel or (lambda s: s)
        return GradedSpace(self.field, {d - n: [relabel(l) for l in b] for d, b in self.components.items()})

    def __eq__(self, other):
        return (isinstance(other, GradedSpace) and self.field == other.field
                and self.components == other.components)

    def __hash__(self):
        return hash((self.field, tuple(self.components.items())))

    def __repr__(self):
        inner = ", ".join(f"{n}: {list(b)}" for n, b in self.components.items())
        return f"GradedSpace({{{inner}}})"


def zero_space(field):
    return GradedSpace(field, {})


def _check_fields(*spaces):
    f = spaces[0].field
    for s in spaces[1:]:
        if s.field != f:
            raise FieldMismatch(f"{f!r} vs {s.field!r}")
    return f


# -- maps -------------------------------------------------------------------

class GradedMap:
    """Homogeneous linear map of a fixed degree."""

    def __init__(self, source, target, degree, images=None, check=True):
        _check_fields(source, target)
        self.source = source
        self.target = target
        self.degree = degree
        cols = {}
        for lab, vec in (images or {}).items():
            vec = vclean(vec)
            if not vec:
                continue
            if check:
                if lab not in source:
                    raise ShapeMismatch(f"{lab!r} not in source")
                want = source.degree(lab) + degree
                for t in vec:
                    if t not in target:
                        raise ShapeMismatch(f"{t!r} not in target")
                    if target.degree(t) != want:
                        raise ShapeMismatch(f"image of {lab!r} has a term {t!r} of degree "
                                            f"{target.degree(t)}, expected {want}")
            cols[lab] = vec
        self.cols = cols

    @property
    def field(self):
        return self.source.field

    @classmethod
    def from_blocks(cls, source, target, degree, blocks):
        images = {}
        for n, mat in blocks.items():
            src = source.basis(n)
            tgt = target.basis(n + degree)
            if len(mat) != len(tgt) or any(len(r) != len(src) for r in mat):
                raise ShapeMismatch(f"block at degree {n} has the wrong shape")
            for j, lab in enumerate(src):
                images[lab] = {t: mat[i][j] for i, t in enumerate(tgt) if mat[i][j]}
        return cls(source, target, degree, images)

    @classmethod
    def identity(cls, space):
        return cls(space, space, 0, {lab: {lab: space.field.one} for lab in space}, check=False)

    @classmethod
    def zero(cls, source, target, degree=0):
        return cls(source, target, degree, {}, check=False)

    def image(self, label):
        return self.cols.get(label, {})

    def __call__(self, vec):
        acc = {}
        for lab, x in vec.items():
            col = self.cols.get(lab)
            if col:
                vaxpy(acc, x, col)
        return acc

    apply = __call__

    def block(self, n):
        src = self.source.basis(n)
        tgt = self.target.basis(n + self.degree)
        pos = {t: i for i, t in enumerate(tgt)}
        mat = linalg.zeros(len(tgt), len(src), self.field)
        for j, lab in enumerate(src):
            for t, x in self.cols.get(lab, {}).items():
                mat[pos[t]][j] = x
        return mat

    @property
    def blocks(self):
        return {n: self.block(n) for n in self.source.degrees()
                if self.target.dim(n + self.degree)}

    def compose(self, f):
        """``self o f``."""
        if f.target != self.source:
            raise ShapeMismatch("cannot compose: spaces differ")
        return GradedMap(f.source, self.target, self.degree + f.degree,
                         {lab: self(col) for lab, col in f.cols.items()}, check=False)

    def __add__(self, other):
        self._same_shape(other)
        images = dict(self.cols)
        for lab, col in other.cols.items():
            images[lab] = vadd(images.get(lab, {}), col)
        return GradedMap(self.source, self.target, self.degree, images, check=False)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return GradedMap(self.source, self.target, self.degree,
                         {lab: vscale(c, col) for lab, col in self.cols.items()}, check=False)

    def _same_shape(self, other):
        if (other.source != self.source or other.target != self.target
                or other.degree != self.degree):
            raise ShapeMismatch("maps have different shapes")

    def is_zero(self):
        return not self.cols

    def restrict(self, source, target=None):
        """Same assignment viewed between (sub)spaces sharing labels."""
        target = target or self.target
        return GradedMap(source, target, self.degree,
                         {lab: self.image(lab) for lab in source}, check=True)

    def __eq__(self, other):
        return (isinstance(other, GradedMap) and self.degree == other.degree
                and self.source == other.source and self.target == other.target
                and self.cols == other.cols)

    __hash__ = None

    def __repr__(self):
        return f"GradedMap(degree={self.degree}, {self.cols})"


def compose(g, f):
    return g.compose(f)


# -- subspaces, kernels, images ---------------------------------------------

class Subspace:
    """Per-degree independent generators, as coordinate vectors of the ambient space."""

    def __init__(self, ambient, gens):
        self.ambient = ambient
        g = {}
        for n, vecs in gens.items():
            d = ambient.dim(n)
            for v in vecs:
                if len(v) != d:
                    raise NotASubspace(f"generator of length {len(v)} in degree {n}, ambient has {d}")
            red = linalg.column_space(vecs, d, ambient.field) if vecs else []
            if red:
                g[n] = red
        self.gens = g

    def dim(self, n=None):
        if n is None:
            return sum(len(v) for v in self.gens.values())
        return len(self.gens.get(n, ()))

    def vectors(self, n):
        return [self.ambient.vector(n, v) for v in self.gens.get(n, ())]

    def contains(self, vec):
        for n, part in self.ambient.homogeneous_parts(vec).items():
            gens = self.gens.get(n, [])
            c = self.ambient.coords(part, n)
            if linalg.rank(gens + [c], len(c), self.ambient.field) != len(gens):
                return False
        return True

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.gens == other.gens)

    def __repr__(self):
        return f"Subspace(dims={ {n: len(v) for n, v in self.gens.items()} })"


def kernel_image(f):
    field = f.field
    ker, im = {}, {}
    for n in f.source.degrees():
        src_dim = f.source.dim(n)
        tgt_dim = f.target.dim(n + f.degree)
        mat = f.block(n)
        if tgt_dim == 0:
            ker[n] = [[field.one if i == j else field.zero for i in range(src_dim)]
                      for j in range(src_dim)]
            continue
        ker[n] = linalg.nullspace(mat, src_dim, field)
        cols = linalg.transpose(mat, tgt_dim, src_dim)
        im[n + f.degree] = cols
    return Subspace(f.source, ker), Subspace(f.target, im)


def quotient(ambient, sub):
    """Quotient space and its degree-0 projection.

    The quotient keeps the labels of the non-pivot coordinates of the
    reduced generators, so it is spanned by images of ambient basis vectors.
    """
    if sub.ambient != ambient:
        raise NotASubspace("subspace lives in a different space")
    field = ambient.field
    comps = {}
    images = {}
    for n in ambient.degrees():
        basis = ambient.basis(n)
        red, pivots = linalg.rref(sub.gens.get(n, []), len(basis), field)
        pivset = set(pivots)
        keep = [j for j in range(len(basis)) if j not in pivset]
        comps[n] = [basis[j] for j in keep]
        for j in keep:
            images[basis[j]] = {basis[j]: field.one}
        for i, c in enumerate(pivots):
            images[basis[c]] = {basis[j]: -red[i][j] for j in keep if red[i][j]}
    q = GradedSpace(field, comps)
    return q, GradedMap(ambient, q, 0, images, check=False)


class DirectSum:
    """Result of :func:`direct_sum` on spaces: the sum plus structure maps."""

    def __init__(self, space, inclusions, projections, relabels):
        self.space = space
        self.inclusions = inclusions
        self.projections = projections
        self.relabels = relabels


def _relabelers(parts, tags):
    if tags is None:
        seen = set()
        clash = False
        for p in parts:
            for lab in p:
                if lab in seen:
                    clash = True
                seen.add(lab)
        if not clash:
            return [lambda s: s for _ in parts]
        tags = [str(i) for i in range(len(parts))]
    return [(lambda t: (lambda s: f"{t}.{s}"))(t) for t in tags]


def direct_sum(parts, tags=None):
    """Direct sum of spaces, or the block-diagonal sum of maps.

    Labels are kept when they are disjoint across summands and otherwise
    prefixed ``tag.``.
    """
    if not parts:
        raise ShapeMismatch("empty direct sum")
    if isinstance(parts[0], GradedMap):
        src = direct_sum([f.source for f in parts], tags)
        tgt = direct_sum([f.target for f in parts], tags)
        deg = parts[0].degree
        if any(f.degree != deg for f in parts):
            raise ShapeMismatch("summed maps must share a degree")
        images = {}
        for f, rs, rt in zip(parts, src.relabels, tgt.relabels):
            for lab, col in f.cols.items():
                images[rs(lab)] = {rt(t): x for t, x in col.items()}
        return GradedMap(src.space, tgt.space, deg, images, check=False)
    field = _check_fields(*parts)
    rel = _relabelers(parts, tags)
    pairs = []
    for p, r in zip(parts, rel):
        pairs.extend((r(lab), n) for lab, n in p.pairs())
    comps = {}
    for lab, n in sorted(pairs, key=lambda x: x[1]):
        comps.setdefault(n, []).append(lab)
    space = GradedSpace(field, comps)
    inc, proj = [], []
    for p, r in zip(parts, rel):
        inc.append(GradedMap(p, space, 0, {lab: {r(lab): field.one} for lab in p}, check=False))
        proj.append(GradedMap(space, p, 0, {r(lab): {lab: field.one} for lab in p}, check=False))
    return DirectSum(space, inc, proj, rel)


def solve(f, target_vec):
    """A preimage of ``target_vec`` under ``f``, or None if there is none."""
    field = f.field
    out = {}
    for n, part in f.target.homogeneous_parts(target_vec).items():
        sdeg = n - f.degree
        src_dim = f.source.dim(sdeg)
        b = f.target.coords(part, n)
        x = linalg.solve(f.block(sdeg), src_dim, b, field) if src_dim else None
        if x is None:
            if src_dim == 0 and not any(b):
                continue
            return None
        out.update(f.source.vector(sdeg, x))
    return out
