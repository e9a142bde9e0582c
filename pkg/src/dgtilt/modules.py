"""DG-modules and bimodules, Hom complexes, tensor products and duality.

A :class:`DGModule` carries an optional left action and an optional right
action, each as sparse structure constants.  Left actions are stored as
``{(a, m): vector}`` and right actions as ``{(m, a): vector}``.

Sign conventions (cohomological, Koszul):

* Hom of left modules: a degree-n map satisfies ``f(am) = (-1)^{n|a|} a f(m)``;
  for right modules ``f(ma) = f(m) a``.
* ``d(f) = d_N f - (-1)^{|f|} f d_M``.
* Suspension of a module: ``a.s(m) = (-1)^{|a|} s(am)`` and ``s(m).b = s(mb)``.
"""

from itertools import product as iproduct

from . import linalg
from .algebra import DGAlgebra, _witness
from .complexes import Complex, cone
from .errors import FieldMismatch, NotASubspace, SemanticError, ShapeMismatch, SideMismatch
from .graded import (GradedMap, GradedSpace, Subspace, direct_sum, quotient, sign, vaxpy,
                     vclean)
from .report import Report

SHIFT_PREFIX = "sh."
DUAL_PREFIX = "D."


def _clean_table(table):
    out = {}
    for key, vec in (table or {}).items():
        vec = vclean(vec)
        if vec:
            out[key] = vec
    return out


class DGModule:
    """A complex with a left and/or right algebra action.

    With neither action it is just a complex (useful for tensor products
    whose residual actions are absent).
    """

    def __init__(self, space, d, left=None, lact=None, right=None, ract=None, name=None,
                 check=True):
        if not isinstance(d, GradedMap):
            d = GradedMap(space, space, 1, d)
        self.complex = Complex(space, d, check=False)
        self.left = left
        self.right = right
        self.lact = _clean_table(lact) if left is not None else {}
        self.ract = _clean_table(ract) if right is not None else {}
        self.name = name
        for alg in (left, right):
            if alg is not None and alg.field != space.field:
                raise FieldMismatch("module and algebra over different fields")
        if check:
            self._check_shapes()

    def _check_shapes(self):
        for (a, m), vec in self.lact.items():
            self._check_term(self.left, a, m, vec, f"{a}*{m}")
        for (m, a), vec in self.ract.items():
            self._check_term(self.right, a, m, vec, f"{m}*{a}")

    def _check_term(self, alg, a, m, vec, what):
        sp = self.space
        if a not in alg.space:
            raise SemanticError(f"action {what}: {a!r} is not an algebra basis label")
        if m not in sp:
            raise SemanticError(f"action {what}: {m!r} is not a module basis label")
        want = alg.deg(a) + sp.degree(m)
        for t in vec:
            if t not in sp:
                raise SemanticError(f"action {what} has unknown term {t!r}")
            if sp.degree(t) != want:
                raise SemanticError(f"action {what} has a term {t!r} of degree {sp.degree(t)}, "
                                    f"expected {want}")

    @property
    def space(self):
        return self.complex.space

    @property
    def d(self):
        return self.complex.d

    @property
    def field(self):
        return self.space.field

    @property
    def side(self):
        if self.left is not None and self.right is not None:
            return "bi"
        if self.left is not None:
            return "left"
        if self.right is not None:
            return "right"
        return None

    def deg(self, label):
        return self.space.degree(label)

    def act(self, r, m):
        """Left action on vectors."""
        acc = {}
        for a, x in r.items():
            for b, y in m.items():
                vec = self.lact.get((a, b))
                if vec:
                    vaxpy(acc, x * y, vec)
        return acc

    def ract_vec(self, m, s):
        """Right action on vectors."""
        acc = {}
        for b, y in m.items():
            for a, x in s.items():
                vec = self.ract.get((b, a))
                if vec:
                    vaxpy(acc, x * y, vec)
        return acc

    def left_part(self):
        return DGModule(self.space, self.d, left=self.left, lact=self.lact, name=self.name,
                        check=False)

    def right_part(self):
        return DGModule(self.space, self.d, right=self.right, ract=self.ract, name=self.name,
                        check=False)

    def plain(self):
        return DGModule(self.space, self.d, name=self.name, check=False)

    def __eq__(self, other):
        return (isinstance(other, DGModule) and self.complex == other.complex
                and self.left == other.left and self.right == other.right
                and self.lact == other.lact and self.ract == other.ract)

    __hash__ = None

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"DGModule{tag}({self.side}, {self.space.dims()})"


def check_module(m):
    """Module axioms on all basis tuples; bimodules also get compatibility."""
    rep = Report()
    sp = m.space
    one = m.field.one
    labels = sp.labels()
    e = {lab: {lab: one} for lab in labels}
    from .complexes import check_complex
    rep.extend(check_complex(m.complex))

    if m.left is not None:
        A = m.left
        al = A.space.labels()
        ea = {a: {a: one} for a in al}
        bad = [x for x in labels if m.act(A.unit, e[x]) != e[x]]
        rep.add("left unit", "axiom", not bad, _witness(bad))
        bad = []
        for a, b, x in iproduct(al, al, labels):
            if m.act(ea[a], m.act(ea[b], e[x])) != m.act(A.mul_basis(a, b), e[x]):
                bad.append((a, b, x))
        rep.add("left associativity", "axiom", not bad, _witness(bad))
        bad = []
        for a, x in iproduct(al, labels):
            lhs = m.d(m.act(ea[a], e[x]))
            rhs = m.act(A.d.image(a), e[x])
            vaxpy(rhs, sign(A.deg(a)), m.act(ea[a], m.d.image(x)))
            if lhs != rhs:
                bad.append((a, x))
        rep.add("left Leibniz", "axiom", not bad, _witness(bad))

    if m.right is not None:
        A = m.right
        al = A.space.labels()
        ea = {a: {a: one} for a in al}
        bad = [x for x in labels if m.ract_vec(e[x], A.unit) != e[x]]
        rep.add("right unit", "axiom", not bad, _witness(bad))
        bad = []
        for x, a, b in iproduct(labels, al, al):
            if m.ract_vec(m.ract_vec(e[x], ea[a]), ea[b]) != m.ract_vec(e[x], A.mul_basis(a, b)):
                bad.append((x, a, b))
        rep.add("right associativity", "axiom", not bad, _witness(bad))
        bad = []
        for x, a in iproduct(labels, al):
            lhs = m.d(m.ract_vec(e[x], ea[a]))
            rhs = m.ract_vec(m.d.image(x), ea[a])
            vaxpy(rhs, sign(sp.degree(x)), m.ract_vec(e[x], A.d.image(a)))
            if lhs != rhs:
                bad.append((x, a))
        rep.add("right Leibniz", "axiom", not bad, _witness(bad))

    if m.left is not None and m.right is not None:
        bad = []
        for a, x, b in iproduct(m.left.space.labels(), labels, m.right.space.labels()):
            ea, eb = {a: one}, {b: one}
            if m.ract_vec(m.act(ea, e[x]), eb) != m.act(ea, m.ract_vec(e[x], eb)):
                bad.append((a, x, b))
        rep.add("bimodule compatibility", "axiom", not bad, _witness(bad))
    return rep


# -- constructions ----------------------------------------------------------

def regular(A, side="left", name=None):
    """``A`` as a module over itself ("left", "right" or "bi")."""
    lact = ract = None
    if side in ("left", "bi"):
        lact = dict(A.mul)
    if side in ("right", "bi"):
        ract = dict(A.mul)
    return DGModule(A.space, A.d,
                    left=A if lact is not None else None, lact=lact,
                    right=A if ract is not None else None, ract=ract,
                    name=name or A.name, check=False)


def free_module(A, degrees, prefix="g"):
    """Direct sum of copies ``A g_i`` with ``|g_i| = degrees[i]`` and ``d g_i = 0``.

    Basis labels are ``g<i>.<a>`` for the element ``a g_i``.
    """
    field = A.field
    comps = {}
    d = {}
    lact = {}
    for i, n in enumerate(degrees):
        g = f"{prefix}{i}"
        for a, na in A.space.pairs():
            comps.setdefault(na + n, []).append(f"{g}.{a}")
            d[f"{g}.{a}"] = {f"{g}.{t}": c for t, c in A.d.image(a).items()}
        for (a, b), vec in A.mul.items():
            lact[(a, f"{g}.{b}")] = {f"{g}.{t}": c for t, c in vec.items()}
    sp = GradedSpace(field, comps)
    return DGModule(sp, d, left=A, lact=lact, check=False)


def shift_module(m, n=1, relabel=None):
    """``S^n m``: degrees drop by n, ``d`` picks up ``(-1)^n``.

    Left action ``a.s^n(x) = (-1)^{n|a|} s^n(ax)``, right action unsigned.
    """
    if relabel is None:
        pre = SHIFT_PREFIX if n == 1 else f"sh{n}."
        relabel = lambda s: pre + s
    sp = m.space.shifted(n, relabel)
    sd = sign(n)
    d = {relabel(x): {relabel(t): sd * c for t, c in col.items()} for x, col in m.d.cols.items()}
    lact = ract = None
    if m.left is not None:
        lact = {}
        for (a, x), vec in m.lact.items():
            s = sign(n * m.left.deg(a))
            lact[(a, relabel(x))] = {relabel(t): s * c for t, c in vec.items()}
    if m.right is not None:
        ract = {(relabel(x), a): {relabel(t): c for t, c in vec.items()}
                for (x, a), vec in m.ract.items()}
    return DGModule(sp, d, left=m.left, lact=lact, right=m.right, ract=ract, check=False)


class ModuleMap:
    """Homogeneous map of modules (degree taken from the underlying map)."""

    def __init__(self, source, target, map):
        if map.source != source.space or map.target != target.space:
            raise ShapeMismatch("map does not match the modules")
        self.source = source
        self.target = target
        self.map = map

    @property
    def degree(self):
        return self.map.degree

    def __call__(self, vec):
        return self.map(vec)

    def compose(self, other):
        return ModuleMap(other.source, self.target, self.map.compose(other.map))

    @classmethod
    def identity(cls, m):
        return cls(m, m, GradedMap.identity(m.space))


def check_module_map(f, chain=None):
    """Linearity (with the Koszul sign on the left) and, for degree 0, the chain condition."""
    rep = Report()
    src, tgt = f.source, f.target
    one = src.field.one
    n = f.degree
    labels = src.space.labels()
    if src.left is not None and tgt.left is not None:
        bad = []
        for a, x in iproduct(src.left.space.labels(), labels):
            lhs = f(src.act({a: one}, {x: one}))
            rhs = tgt.act({a: one}, f.map.image(x))
            s = sign(n * src.left.deg(a))
            if lhs != {t: s * c for t, c in rhs.items()}:
                bad.append((a, x))
        rep.add("left linear", "axiom", not bad, _witness(bad))
    if src.right is not None and tgt.right is not None:
        bad = []
        for x, a in iproduct(labels, src.right.space.labels()):
            if f(src.ract_vec({x: one}, {a: one})) != tgt.ract_vec(f.map.image(x), {a: one}):
                bad.append((x, a))
        rep.add("right linear", "axiom", not bad, _witness(bad))
    if chain is None:
        chain = n == 0
    if chain:
        lhs = f.map.compose(src.d)
        rhs = tgt.d.compose(f.map)
        if n % 2:
            rhs = -rhs
        ok = lhs == rhs
        rep.add("commutes with d", "axiom", ok)
    return rep


def is_bijective(g):
    field = g.field
    for n in set(g.source.degrees()) | set(g.target.degrees()):
        a, b = g.source.dim(n), g.target.dim(n + g.degree)
        if a != b:
            return False
        if a and linalg.rank(g.block(n), a, field) != a:
            return False
    return True


def check_module_iso(f):
    rep = check_module_map(f)
    rep.add("bijective", "module-iso", is_bijective(f.map))
    return rep


class ModuleSum:
    def __init__(self, module, inclusions, projections):
        self.module = module
        self.inclusions = inclusions
        self.projections = projections


def direct_sum_modules(parts, tags=None):
    ds = direct_sum([p.space for p in parts], tags)
    d = {}
    lact, ract = {}, {}
    left = parts[0].left
    right = parts[0].right
    for p, r in zip(parts, ds.relabels):
        if p.left != left or p.right != right:
            raise SideMismatch("summands act over different algebras")
        for x, col in p.d.cols.items():
            d[r(x)] = {r(t): c for t, c in col.items()}
        for (a, x), vec in p.lact.items():
            lact[(a, r(x))] = {r(t): c for t, c in vec.items()}
        for (x, a), vec in p.ract.items():
            ract[(r(x), a)] = {r(t): c for t, c in vec.items()}
    mod = DGModule(ds.space, d, left=left, lact=lact, right=right, ract=ract, check=False)
    inc = [ModuleMap(p, mod, i) for p, i in zip(parts, ds.inclusions)]
    proj = [ModuleMap(mod, p, q) for p, q in zip(parts, ds.projections)]
    return ModuleSum(mod, inc, proj)


class ModuleCone:
    def __init__(self, module, inclusion, projection, relabel):
        self.module = module
        self.inclusion = inclusion
        self.projection = projection
        self.relabel = relabel


def cone_module(f, relabel=None):
    """Cone of a degree-0 module map ``f: X -> Y`` on ``Y + S X``."""
    if f.degree != 0:
        raise ShapeMismatch("cones are taken of degree-0 maps")
    X, Y = f.source, f.target
    from .complexes import ChainMap
    cm = ChainMap(X.complex, Y.complex, f.map, check=False)
    cn = cone(cm, relabel)
    rl = cn.relabel
    lact, ract = {}, {}
    for (a, y), vec in Y.lact.items():
        lact[(a, y)] = vec
    for (a, x), vec in X.lact.items():
        s = sign(X.left.deg(a))
        lact[(a, rl(x))] = {rl(t): s * c for t, c in vec.items()}
    for (y, a), vec in Y.ract.items():
        ract[(y, a)] = vec
    for (x, a), vec in X.ract.items():
        ract[(rl(x), a)] = {rl(t): c for t, c in vec.items()}
    mod = DGModule(cn.complex.space, cn.complex.d, left=Y.left, lact=lact, right=Y.right,
                   ract=ract, check=False)
    sx = shift_module(X, 1, rl)
    return ModuleCone(mod, ModuleMap(Y, mod, cn.inclusion.map),
                      ModuleMap(mod, sx, cn.projection.restrict(mod.space, sx.space)), rl)


def induced_module(m, space, projection, name=None):
    """Structure pushed through a surjective degree-0 ``projection``.

    ``space`` must use a subset of the labels of ``m`` whose images span.
    """
    one = m.field.one
    d = {}
    lact, ract = {}, {}
    for q in space:
        d[q] = projection(m.d.image(q))
        if m.left is not None:
            for a in m.left.space:
                v = projection(m.act({a: one}, {q: one}))
                if v:
                    lact[(a, q)] = v
        if m.right is not None:
            for a in m.right.space:
                v = projection(m.ract_vec({q: one}, {a: one}))
                if v:
                    ract[(q, a)] = v
    return DGModule(space, d, left=m.left, lact=lact, right=m.right, ract=ract, name=name,
                    check=False)


def is_submodule(m, sub):
    one = m.field.one
    for n in sub.gens:
        for v in sub.vectors(n):
            if not sub.contains(m.d(v)):
                return False
            if m.left is not None:
                for a in m.left.space:
                    if not sub.contains(m.act({a: one}, v)):
                        return False
            if m.right is not None:
                for a in m.right.space:
                    if not sub.contains(m.ract_vec(v, {a: one})):
                        return False
    return True


def quotient_module(m, sub, name=None):
    """Quotient by a submodule, with its projection."""
    if not is_submodule(m, sub):
        raise NotASubspace("subspace is not closed under d and the actions")
    q, proj = quotient(m.space, sub)
    mod = induced_module(m, q, proj, name=name)
    return mod, ModuleMap(m, mod, proj)


def span_subspace(space, vectors):
    gens = {}
    for v in vectors:
        for n, part in space.homogeneous_parts(v).items():
            gens.setdefault(n, []).append(space.coords(part, n))
    return Subspace(space, gens)


# -- Hom complexes ----------------------------------------------------------

def _hom_label(m, t):
    return f"[{m}>{t}]"


class HomComplex:
    """Module maps ``M -> N`` of every degree, with explicit bases.

    Each basis map is attached to one free unknown ``(m, t)`` (the
    coefficient of ``t`` in ``f(m)``), so the coordinates of a module map
    are its values at the free unknowns.
    """

    def __init__(self, algebra, source, target, side, complex, maps, free):
        self.algebra = algebra
        self.source = source
        self.target = target
        self.side = side
        self.complex = complex
        self.maps = maps
        self.free = free

    @property
    def space(self):
        return self.complex.space

    def map_of(self, vec):
        n = self.space.vec_degree(vec)
        if n is None:
            return None
        acc = GradedMap.zero(self.source.space, self.target.space, n)
        for lab, c in vec.items():
            acc = acc + self.maps[lab].scale(c)
        return acc

    def vec_of(self, f, verify=True):
        """Coordinates of a module map; with ``verify`` the map is checked to lie in Hom."""
        if f.is_zero():
            return {}
        out = {}
        for lab in self.space.basis(f.degree):
            m, t = self.free[lab]
            c = f.image(m).get(t)
            if c:
                out[lab] = c
        if verify:
            back = self.map_of(out) if out else GradedMap.zero(f.source, f.target, f.degree)
            if back != f:
                raise SemanticError("map is not a module map of this Hom complex")
        return out

    def as_module(self):
        """Hom with the actions induced from the outer structures.

        For left modules: a right S-action on the source gives
        ``(s.f)(v) = (-1)^{|s|(|f|+|v|)} f(vs)`` and a right T-action on the
        target gives ``(f.t)(m) = (-1)^{|t||m|} f(m)t``.  For right modules:
        a left S-action on the source gives ``(f.s)(m) = f(sm)`` and a left
        T-action on the target gives ``(t.f)(m) = t f(m)``.
        """
        M, N = self.source, self.target
        one = M.field.one
        lact, ract = {}, {}
        left = right = None
        basis = self.space.labels()
        if self.side == "left":
            if M.right is not None:
                left = M.right
                for s in left.space:
                    ds = left.deg(s)
                    for lab in basis:
                        f = self.maps[lab]
                        images = {}
                        for v in M.space:
                            sg = sign(ds * (f.degree + M.deg(v)))
                            images[v] = {t: sg * c for t, c in
                                         f(M.ract_vec({v: one}, {s: one})).items()}
                        g = GradedMap(M.space, N.space, f.degree + ds, images, check=False)
                        lact[(s, lab)] = self.vec_of(g)
            if N.right is not None:
                right = N.right
                for t_ in right.space:
                    dt = right.deg(t_)
                    for lab in basis:
                        f = self.maps[lab]
                        images = {}
                        for v in M.space:
                            sg = sign(dt * M.deg(v))
                            images[v] = {t: sg * c for t, c in
                                         N.ract_vec(f.image(v), {t_: one}).items()}
                        g = GradedMap(M.space, N.space, f.degree + dt, images, check=False)
                        ract[(lab, t_)] = self.vec_of(g)
        else:
            if M.left is not None:
                right = M.left
                for s in right.space:
                    for lab in basis:
                        f = self.maps[lab]
                        images = {v: f(M.act({s: one}, {v: one})) for v in M.space}
                        g = GradedMap(M.space, N.space, f.degree + right.deg(s), images,
                                      check=False)
                        ract[(lab, s)] = self.vec_of(g)
            if N.left is not None:
                left = N.left
                for t_ in left.space:
                    for lab in basis:
                        f = self.maps[lab]
                        images = {v: N.act({t_: one}, f.image(v)) for v in M.space}
                        g = GradedMap(M.space, N.space, f.degree + left.deg(t_), images,
                                      check=False)
                        lact[(t_, lab)] = self.vec_of(g)
        return DGModule(self.space, self.complex.d, left=left, lact=lact, right=right,
                        ract=ract, check=False)


def _infer_side(A, m, n, side):
    if side is not None:
        return side
    if m.left is not None and m.left == A and n.left is not None and n.left == A:
        return "left"
    if m.right is not None and m.right == A and n.right is not None and n.right == A:
        return "right"
    raise SideMismatch("modules are not both left or both right modules over the algebra")


def _hom_degree_system(A, M, N, side, n):
    """Unknowns and constraint rows for degree-n module maps."""
    field = M.field
    one = field.one
    unknowns = []
    index = {}
    for m in M.space.labels():
        for t in N.space.basis(M.deg(m) + n):
            index[(m, t)] = len(unknowns)
            unknowns.append((m, t))
    rows = []
    if not unknowns:
        return unknowns, rows
    avoid = set(A.unit) if len(A.unit) == 1 else set()
    for a in A.space.labels():
        if a in avoid:
            continue
        sa = sign(n * A.deg(a))
        for m in M.space.labels():
            row = {}
            if side == "left":
                am = M.act({a: one}, {m: one})
            else:
                am = M.ract_vec({m: one}, {a: one})
            # f(a m): sum over c of coef * f(c)
            for c, x in am.items():
                for t in N.space.basis(M.deg(c) + n):
                    row.setdefault(t, {})
                    k = index[(c, t)]
                    row[t][k] = row[t].get(k, field.zero) + x
            # minus the sign times a f(m)
            for t in N.space.basis(M.deg(m) + n):
                k = index[(m, t)]
                if side == "left":
                    at = N.act({a: one}, {t: one})
                    s = sa
                else:
                    at = N.ract_vec({t: one}, {a: one})
                    s = 1
                for u, x in at.items():
                    row.setdefault(u, {})
                    row[u][k] = row[u].get(k, field.zero) - s * x
            for u, r in row.items():
                r = {k: x for k, x in r.items() if x}
                if r:
                    rows.append(r)
    return unknowns, rows


def hom_complex(A, M, N, side=None):
    """Hom complex of module maps ``M -> N`` over ``A``."""
    side = _infer_side(A, M, N, side)
    field = M.field
    if N.field != field:
        raise FieldMismatch("modules over different fields")
    lo = min(N.space.degrees(), default=0) - max(M.space.degrees(), default=0)
    hi = max(N.space.degrees(), default=0) - min(M.space.degrees(), default=0)
    comps = {}
    maps = {}
    free = {}
    if M.space.dim() and N.space.dim():
        for n in range(lo, hi + 1):
            unknowns, rows = _hom_degree_system(A, M, N, side, n)
            if not unknowns:
                continue
            k = len(unknowns)
            dense = []
            for r in rows:
                row = [field.zero] * k
                for j, x in r.items():
                    row[j] = x
                dense.append(row)
            basis = linalg.nullspace(dense, k, field)
            piv = set(linalg.rref(dense, k, field)[1])
            frees = [j for j in range(k) if j not in piv]
            labels = []
            for j, vec in zip(frees, basis):
                m, t = unknowns[j]
                lab = _hom_label(m, t)
                images = {}
                for (mm, tt), x in zip(unknowns, vec):
                    if x:
                        images.setdefault(mm, {})[tt] = x
                maps[lab] = GradedMap(M.space, N.space, n, images, check=False)
                free[lab] = (m, t)
                labels.append(lab)
            if labels:
                comps[n] = labels
    space = GradedSpace(field, comps)
    hc = HomComplex(A, M, N, side, None, maps, free)
    hc.complex = Complex(space, GradedMap.zero(space, space, 1), check=False)
    d = {}
    for lab, f in maps.items():
        df = N.d.compose(f)
        tail = f.compose(M.d)
        df = df - tail if f.degree % 2 == 0 else df + tail
        d[lab] = hc.vec_of(df, verify=False)
    hc.complex = Complex(space, GradedMap(space, space, 1, d, check=False), check=False)
    return hc


def end_dga(A, M, side=None, name=None):
    """``Hom_A(M, M)`` with composition ``(fg)(x) = f(g(x))``."""
    hc = hom_complex(A, M, M, side)
    mul = {}
    labels = hc.space.labels()
    for f in labels:
        F = hc.maps[f]
        for g in labels:
            v = hc.vec_of(F.compose(hc.maps[g]), verify=False)
            if v:
                mul[(f, g)] = v
    unit = hc.vec_of(GradedMap.identity(M.space), verify=False)
    alg = DGAlgebra(hc.space, hc.complex.d, unit, mul, name=name, check=False)
    alg.hom = hc
    return alg


# -- tensor products --------------------------------------------------------

TENSOR_SEP = "&"


class TensorProduct:
    """``m (x)_A n`` with the class map on pure tensors."""

    def __init__(self, module, ambient, projection):
        self.module = module
        self.ambient = ambient
        self.projection = projection

    def pure(self, x, y):
        """Class of ``x (x) y`` for vectors ``x`` in m and ``y`` in n."""
        acc = {}
        for a, c in x.items():
            for b, e in y.items():
                vaxpy(acc, c * e, {f"{a}{TENSOR_SEP}{b}": 1})
        return self.projection(acc)


def tensor_over_algebra(m, n, A=None):
    """Tensor product of a right module ``m`` and a left module ``n`` over ``A``.

    Residual actions: the left action of ``m`` and the right action of ``n``.
    """
    A = A or m.right
    if m.right is None or m.right != A or n.left is None or n.left != A:
        raise SideMismatch("need a right A-module and a left A-module")
    field = m.field
    one = field.one
    comps = {}
    for x, nx in m.space.pairs():
        for y, ny in n.space.pairs():
            comps.setdefault(nx + ny, []).append(f"{x}{TENSOR_SEP}{y}")
    amb = GradedSpace(field, comps)
    rel = []
    for a in A.space:
        for x in m.space:
            xa = m.ract_vec({x: one}, {a: one})
            for y in n.space:
                ay = n.act({a: one}, {y: one})
                v = {}
                for t, c in xa.items():
                    vaxpy(v, c, {f"{t}{TENSOR_SEP}{y}": one})
                for t, c in ay.items():
                    vaxpy(v, -c, {f"{x}{TENSOR_SEP}{t}": one})
                if v:
                    rel.append(v)
    sub = span_subspace(amb, rel)
    q, proj = quotient(amb, sub)
    d = {}
    lact, ract = {}, {}
    for x, nx in m.space.pairs():
        for y in n.space:
            col = {}
            for t, c in m.d.image(x).items():
                vaxpy(col, c, {f"{t}{TENSOR_SEP}{y}": one})
            for t, c in n.d.image(y).items():
                vaxpy(col, sign(nx) * c, {f"{x}{TENSOR_SEP}{t}": one})
            d[f"{x}{TENSOR_SEP}{y}"] = col
    full_d = GradedMap(amb, amb, 1, d, check=False)
    qd = {lab: proj(full_d.image(lab)) for lab in q}
    if m.left is not None:
        for r in m.left.space:
            for lab in q:
                x, y = lab.split(TENSOR_SEP, 1)
                v = {}
                for t, c in m.act({r: one}, {x: one}).items():
                    vaxpy(v, c, {f"{t}{TENSOR_SEP}{y}": one})
                lact[(r, lab)] = proj(v)
    if n.right is not None:
        for s in n.right.space:
            for lab in q:
                x, y = lab.split(TENSOR_SEP, 1)
                v = {}
                for t, c in n.ract_vec({y: one}, {s: one}).items():
                    vaxpy(v, c, {f"{x}{TENSOR_SEP}{t}": one})
                ract[(lab, s)] = proj(v)
    mod = DGModule(q, qd, left=m.left, lact=lact, right=n.right, ract=ract, check=False)
    return TensorProduct(mod, amb, proj)


# -- duality ----------------------------------------------------------------

def dualize(m, prefix=DUAL_PREFIX):
    """``D(m) = Hom_k(m, k)`` with basis the dual functionals ``D.x``.

    ``D(m)^n`` is dual to ``m^{-n}`` and ``d(phi) = -(-1)^{|phi|} phi d``.
    A left action on ``m`` becomes the right action ``(phi.r)(x) = phi(rx)``;
    a right action becomes the left action
    ``(r.phi)(x) = (-1)^{|r|(|phi|+|x|)} phi(xr)``.
    """
    field = m.field
    one = field.one
    dl = lambda x: prefix + x
    sp = GradedSpace(field, {-n: [dl(x) for x in b] for n, b in m.space.components.items()})
    d = {}
    for y, col in m.d.cols.items():
        for x, c in col.items():
            # d(D.x)(y) = -(-1)^{|D.x|} D.x(dy)
            s = -sign(m.deg(x))
            vaxpy(d.setdefault(dl(x), {}), s * c, {dl(y): one})
    ract = lact = None
    if m.left is not None:
        ract = {}
        for (r, y), vec in m.lact.items():
            for x, c in vec.items():
                vaxpy(ract.setdefault((dl(x), r), {}), c, {dl(y): one})
    if m.right is not None:
        lact = {}
        for (y, r), vec in m.ract.items():
            for x, c in vec.items():
                dr = m.right.deg(r)
                s = sign(dr * (-m.deg(x) + m.deg(y)))
                vaxpy(lact.setdefault((r, dl(x)), {}), s * c, {dl(y): one})
    return DGModule(sp, d, left=m.right, lact=lact, right=m.left, ract=ract,
                    name=f"D({m.name})" if m.name else None, check=False)


def double_dual_map(m, prefix=DUAL_PREFIX):
    """Evaluation ``x -> (phi -> (-1)^{|phi||x|} phi(x))`` into ``D(D(m))``."""
    dd = dualize(dualize(m, prefix), prefix)
    images = {x: {prefix + prefix + x: sign(n * n) * m.field.one} for x, n in m.space.pairs()}
    return ModuleMap(m, dd, GradedMap(m.space, dd.space, 0, images, check=False))
