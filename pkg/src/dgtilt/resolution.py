"""Semifree resolutions by killing cone homology one generator at a time.

Given a module ``M`` and a semifree ``P`` with augmentation ``e: P -> M``,
a cycle ``(x, s y)`` of degree ``n`` in ``cone(e) = M + S P`` is killed by
a new free generator ``g`` of degree ``n`` with ``d g = -y`` and
``e(g) = x``.  When the unit of the algebra is a sum of orthogonal basis
idempotents (path algebras, and their enveloping algebras) the generator is
typed by one idempotent ``e_i`` and spans ``A e_i``, which keeps classical
quiver resolutions minimal in size.
"""

from .algebra import enveloping, orthogonal_idempotents
from .complexes import ChainMap, cone, homology, is_exact, is_quasi_iso
from .errors import DegreeWindowExceeded, ResolutionBudgetExceeded, SemanticError
from .graded import GradedMap, GradedSpace, sign, vaxpy
from .modules import (DGModule, ModuleMap, check_module_map, hom_complex, is_bijective,
                      regular)
from .report import Report

DEFAULT_MAX_GENERATORS = 64
DEFAULT_WINDOW = (-16, 16)
CONE_TAG = "~"


class Generator:
    def __init__(self, name, degree, idempotent, boundary):
        self.name = name
        self.degree = degree
        self.idempotent = idempotent
        self.boundary = boundary

    def __repr__(self):
        return f"Generator({self.name}, {self.degree}, {self.idempotent})"


class SemifreeModule:
    """A module built from free generators attached in order.

    ``d(g_i)`` is a vector in the span of the generators before ``g_i``.
    """

    def __init__(self, algebra, prefix="g"):
        self.algebra = algebra
        self.prefix = prefix
        self.generators = []
        self.owner = {}
        self._comps = {}
        self._d = {}
        self._lact = {}
        self.module = DGModule(GradedSpace(algebra.field, {}), {}, left=algebra, lact={},
                               check=False)

    def _span_labels(self, idem):
        A = self.algebra
        one = A.field.one
        if idem is None:
            return A.space.labels()
        return [a for a in A.space.labels() if A.mul_basis(a, idem) == {a: one}]

    def attach(self, degree, boundary, idempotent=None):
        """Add a generator with the given differential; returns its name."""
        A = self.algebra
        one = A.field.one
        name = f"{self.prefix}{len(self.generators)}"
        span = self._span_labels(idempotent)
        lab = lambda a: f"{name}.{a}"
        inspan = set(span)
        for a in span:
            self._comps.setdefault(A.deg(a) + degree, []).append(lab(a))
        for a in span:
            col = {lab(t): c for t, c in A.d.image(a).items()}
            vaxpy(col, sign(A.deg(a)), self.module.act({a: one}, boundary))
            self._d[lab(a)] = col
            for b in A.space.labels():
                v = A.mul_basis(b, a)
                if v:
                    if any(t not in inspan for t in v):
                        raise SemanticError("idempotent span is not closed under the action")
                    self._lact[(b, lab(a))] = {lab(t): c for t, c in v.items()}
        for a in span:
            self.owner[lab(a)] = (name, a)
        self.generators.append(Generator(name, degree, idempotent, dict(boundary)))
        space = GradedSpace(A.field, self._comps)
        self.module = DGModule(space, self._d, left=A, lact=self._lact, check=False)
        return name

    def generator_vector(self, name):
        g = next(x for x in self.generators if x.name == name)
        if g.idempotent is None:
            return {f"{name}.{u}": c for u, c in self.algebra.unit.items()}
        return {f"{name}.{g.idempotent}": self.algebra.field.one}

    def check_filtration(self):
        """``d(g_i)`` only involves generators ``g_j`` with ``j < i``."""
        rep = Report()
        bad = []
        for i, g in enumerate(self.generators):
            earlier = {x.name for x in self.generators[:i]}
            for lab in g.boundary:
                if self.owner[lab][0] not in earlier:
                    bad.append(g.name)
                    break
        rep.add("semifree filtration", "axiom", not bad, ", ".join(bad))
        return rep


class ResolutionResult:
    def __init__(self, resolution, module, augmentation, stats):
        self.resolution = resolution
        self.module = module
        self.augmentation = augmentation
        self.stats = stats

    @property
    def generator_degrees(self):
        if self.resolution is None:
            return []
        return [g.degree for g in self.resolution.generators]

    def verify(self):
        rep = Report()
        f = self.augmentation
        rep.extend(check_module_map(f), "augmentation: ")
        cm = ChainMap(f.source.complex, f.target.complex, f.map, check=False)
        induced = is_quasi_iso(cm, cross_check=False)
        by_cone = is_exact(cone(cm).complex)
        rep.add("augmentation quasi-iso (induced map)", "quasi-iso", induced)
        rep.add("augmentation quasi-iso (cone exact)", "quasi-iso", by_cone)
        if self.resolution is not None:
            rep.extend(self.resolution.check_filtration())
        return rep


def _free_rank_one(A, M):
    """A degree-0 cycle ``m0`` with ``a -> a m0`` bijective, if there is one."""
    one = A.field.one
    if M.space.dims() != A.space.dims():
        return None
    if M.space == A.space and M.lact == A.mul and M.d == A.d:
        return A.unit
    for m0 in M.space.basis(0):
        if M.d.image(m0):
            continue
        images = {a: M.act({a: one}, {m0: one}) for a in A.space}
        g = GradedMap(A.space, M.space, 0, images, check=False)
        if is_bijective(g):
            return m0
    return None


def semifree_resolution(M, max_generators=DEFAULT_MAX_GENERATORS, degree_window=DEFAULT_WINDOW,
                        prefix="g", typed=True):
    """Semifree resolution of a left module ``M`` over ``M.left``."""
    A = M.left
    if A is None:
        raise SemanticError("semifree resolutions are of left modules")
    field = A.field
    one = field.one
    if _free_rank_one(A, M) is not None:
        aug = ModuleMap(M, M, GradedMap.identity(M.space))
        return ResolutionResult(None, M, aug, {"generators": 0, "stages": []})
    idems = orthogonal_idempotents(A) if typed else None
    if idems is not None:
        for e in idems:
            for a in A.space:
                if A.mul_basis(a, e) not in ({}, {a: one}):
                    idems = None
                    break
            if idems is None:
                break
    lo, hi = degree_window
    P = SemifreeModule(A, prefix)
    eps = {}
    stages = []
    while True:
        Pm = P.module
        aug = GradedMap(Pm.space, M.space, 0, eps, check=False)
        cn = cone(ChainMap(Pm.complex, M.complex, aug, check=False),
                  relabel=lambda s: CONE_TAG + s)
        h = homology(cn.complex)
        if h.total_dim() == 0:
            break
        n = max(h.homology.degrees())
        z = h.representative(h.homology.basis(n)[0])
        idem = None
        if idems is not None:
            for e in idems:
                ez = _idempotent_part(M, Pm, cn, e, z)
                if ez and not h.is_boundary(ez):
                    z, idem = ez, e
                    break
        x = {k: c for k, c in z.items() if k in M.space}
        y = {k[len(CONE_TAG):]: c for k, c in z.items() if k not in M.space}
        if len(P.generators) >= max_generators:
            raise ResolutionBudgetExceeded(
                f"not certified perfect within budget: {max_generators} generators used, "
                f"homology of the cone remains in degree {n}")
        if not lo <= n <= hi:
            raise DegreeWindowExceeded(
                f"a generator of degree {n} is needed, outside the window [{lo}, {hi}]")
        name = P.attach(n, {k: -c for k, c in y.items()}, idem)
        span = P._span_labels(idem)
        for a in span:
            v = M.act({a: one}, x)
            if v:
                eps[f"{name}.{a}"] = v
        if stages and stages[-1][0] == n:
            stages[-1][1] += 1
        else:
            stages.append([n, 1])
    aug = ModuleMap(P.module, M, GradedMap(P.module.space, M.space, 0, eps, check=False))
    stats = {"generators": len(P.generators), "stages": [tuple(s) for s in stages]}
    return ResolutionResult(P, P.module, aug, stats)


def _idempotent_part(M, Pm, cn, e, z):
    """``e z`` for a cone vector ``z``; e has degree 0 so no sign appears."""
    one = M.field.one
    x = {k: c for k, c in z.items() if k in M.space}
    y = {k[len(CONE_TAG):]: c for k, c in z.items() if k not in M.space}
    out = dict(M.act({e: one}, x))
    for k, c in Pm.act({e: one}, y).items():
        out[CONE_TAG + k] = c
    return out


# -- bimodules --------------------------------------------------------------

def bimodule_to_env(M):
    """An (R, S)-bimodule as a left module over ``R (x) S^op``.

    ``(r|s) m = (-1)^{|s||m|} r m s``.
    """
    R, S = M.left, M.right
    env = enveloping(R, S)
    one = M.field.one
    lact = {}
    for r in R.space:
        for s in S.space:
            for m in M.space:
                v = M.ract_vec(M.act({r: one}, {m: one}), {s: one})
                if v:
                    sg = sign(S.deg(s) * M.deg(m))
                    lact[(f"{r}|{s}", m)] = {k: sg * c for k, c in v.items()}
    return DGModule(M.space, M.d, left=env, lact=lact, check=False)


def env_to_bimodule(N, R, S):
    """Inverse of :func:`bimodule_to_env`: ``r m = (r|1) m``, ``m s = (-1)^{|s||m|} (1|s) m``."""
    one = N.field.one
    lact, ract = {}, {}
    for m in N.space:
        for r in R.space:
            v = N.act({f"{r}|{u}": c for u, c in S.unit.items()}, {m: one})
            if v:
                lact[(r, m)] = v
        for s in S.space:
            v = N.act({f"{u}|{s}": c for u, c in R.unit.items()}, {m: one})
            if v:
                sg = sign(S.deg(s) * N.deg(m))
                ract[(m, s)] = {k: sg * c for k, c in v.items()}
    return DGModule(N.space, N.d, left=R, lact=lact, right=S, ract=ract, check=False)


class BimoduleReplacement:
    def __init__(self, V, augmentation, result):
        self.V = V
        self.augmentation = augmentation
        self.result = result

    def __iter__(self):
        return iter((self.V, self.augmentation))


def bimodule_replacement(M, max_generators=DEFAULT_MAX_GENERATORS,
                         degree_window=DEFAULT_WINDOW, prefix="v"):
    """A bimodule replacement ``V -> M`` with V K-projective over R.

    If M is already semifree as a left R-module it is its own replacement.
    Otherwise M is resolved over ``R (x) S^op``; the result is free over the
    enveloping algebra, hence K-projective over R since ``R (x) S^op`` is
    free over R.
    """
    R, S = M.left, M.right
    if _semifree_over_left(M, max_generators, degree_window):
        res = ResolutionResult(None, M, ModuleMap.identity(M), {"generators": 0, "stages": []})
        return BimoduleReplacement(M, ModuleMap.identity(M), res)
    N = bimodule_to_env(M)
    res = semifree_resolution(N, max_generators, degree_window, prefix=prefix)
    if res.resolution is None:
        return BimoduleReplacement(M, ModuleMap.identity(M), res)
    V = env_to_bimodule(res.module, R, S)
    f = ModuleMap(V, M, res.augmentation.map)
    return BimoduleReplacement(V, f, res)


def _semifree_over_left(M, max_generators, degree_window):
    """Whether M is already semifree as a left module.

    True when the one-sided resolution of M is an isomorphism, in which
    case M itself is a K-projective replacement.
    """
    try:
        res = semifree_resolution(M.left_part(), max_generators, degree_window)
    except ResolutionBudgetExceeded:
        return False
    return is_bijective(res.augmentation.map)


def kprojectivity_spot_check(u, witnesses):
    """``Hom(u, w)`` exact for every exact witness ``w``.

    A finite certificate against the given witnesses, not a proof of
    K-projectivity.
    """
    rep = Report()
    A = u.left
    for i, (name, w) in enumerate(witnesses):
        if not is_exact(w.complex):
            rep.add(f"witness {name} is exact", "exactness", False, "witness has homology")
            continue
        H = hom_complex(A, u, w, side="left")
        h = homology(H.complex).dims()
        rep.add(f"Hom(U, {name}) exact", "exactness", not h,
                f"homology in degrees {sorted(h)}" if h else "")
    return rep


def identity_cone_module(A):
    """``cone(id_A)``, an exact (contractible) left module."""
    from .modules import ModuleMap as MM, cone_module
    reg = regular(A)
    return cone_module(MM.identity(reg)).module
