"""Upper triangular DGAs ``[R M; 0 S]`` and their column and row modules.

Basis labels of the triangular algebra are the labels of ``R``, ``M`` and
``S`` behind the prefixes ``R.``, ``M.`` and ``S.``; the column modules
``B = [R; 0]`` and ``C = [M; S]`` and the row modules ``[R M]`` and
``[0 S]`` reuse those labels, so ``Lambda = B + C`` holds label for label.
"""

from .algebra import DGAlgebra, DGAMorphism, check_dga, check_dga_morphism, opposite
from .complexes import homology
from .errors import FieldMismatch, SideMismatch
from .graded import GradedMap, GradedSpace, sign
from .modules import (DGModule, ModuleMap, check_module, check_module_iso, direct_sum_modules,
                      end_dga, hom_complex, quotient_module, regular, shift_module,
                      span_subspace, tensor_over_algebra)
from .report import Report


def _prefixed(pre, vec):
    return {pre + k: c for k, c in vec.items()}


class TriangularDGA:
    def __init__(self, algebra, R, S, M, prefixes):
        self.algebra = algebra
        self.R, self.S, self.M = R, S, M
        self.prefixes = prefixes
        pr, pm, ps = prefixes
        self.e_R = _prefixed(pr, R.unit)
        self.e_S = _prefixed(ps, S.unit)

    @property
    def field(self):
        return self.algebra.field

    def rl(self, x):
        return self.prefixes[0] + x

    def ml(self, x):
        return self.prefixes[1] + x

    def sl(self, x):
        return self.prefixes[2] + x

    def labels_of(self, part):
        src = {"R": self.R.space, "M": self.M.space, "S": self.S.space}[part]
        pre = self.prefixes["RMS".index(part)]
        return [pre + x for x in src]

    def element(self, r=None, m=None, s=None):
        out = {}
        for part, vec in (("R", r), ("M", m), ("S", s)):
            if vec:
                out.update(_prefixed(self.prefixes["RMS".index(part)], vec))
        return out

    def components(self, vec):
        """Split a vector of the algebra into unprefixed ``(r, m, s)``."""
        parts = ({}, {}, {})
        for lab, c in vec.items():
            for i, pre in enumerate(self.prefixes):
                if lab.startswith(pre):
                    parts[i][lab[len(pre):]] = c
                    break
        return parts


def build_triangular(R, S, M, prefixes=("R.", "M.", "S."), name=None):
    """``[R M; 0 S]`` with matrix multiplication and componentwise differential."""
    if M.left is None or M.right is None:
        raise SideMismatch("the corner must be a bimodule")
    if not (R.field == S.field == M.field):
        raise FieldMismatch("R, S and M must share a field")
    if M.left != R or M.right != S:
        raise SideMismatch("the corner must be an (R, S)-bimodule")
    pr, pm, ps = prefixes
    field = R.field
    comps = {}
    for pre, sp in ((pr, R.space), (pm, M.space), (ps, S.space)):
        for lab, n in sp.pairs():
            comps.setdefault(n, []).append(pre + lab)
    space = GradedSpace(field, comps)
    d = {}
    for pre, cx in ((pr, R.d), (pm, M.d), (ps, S.d)):
        for lab, col in cx.cols.items():
            d[pre + lab] = _prefixed(pre, col)
    mul = {}
    for (a, b), v in R.mul.items():
        mul[(pr + a, pr + b)] = _prefixed(pr, v)
    for (a, b), v in S.mul.items():
        mul[(ps + a, ps + b)] = _prefixed(ps, v)
    for (a, m), v in M.lact.items():
        mul[(pr + a, pm + m)] = _prefixed(pm, v)
    for (m, s), v in M.ract.items():
        mul[(pm + m, ps + s)] = _prefixed(pm, v)
    unit = _prefixed(pr, R.unit)
    unit.update(_prefixed(ps, S.unit))
    alg = DGAlgebra(space, d, unit, mul, name=name, check=False)
    return TriangularDGA(alg, R, S, M, prefixes)


# -- modules cut out of the regular bimodule -------------------------------

def _restrict(t, labels, left=True, right_alg=None, right_pre=None):
    """Span of ``labels`` inside the regular module, which must be closed."""
    L = t.algebra
    keep = set(labels)
    field = L.field
    sp = GradedSpace(field, {n: [x for x in b if x in keep] for n, b in L.space.components.items()})
    d = {x: L.d.image(x) for x in sp}
    lact = ract = None
    if left:
        lact = {}
        for (a, b), v in L.mul.items():
            if b in keep:
                lact[(a, b)] = v
    if right_alg is not None:
        ract = {}
        for (a, b), v in L.mul.items():
            if a in keep and b.startswith(right_pre):
                key = b[len(right_pre):] if right_alg is not L else b
                ract[(a, key)] = v
    mod = DGModule(sp, d, left=L if left else None, lact=lact, right=right_alg, ract=ract,
                   check=False)
    return mod


def build_B(t, bimodule=False):
    """``B = Lambda e_R = [R; 0]``; as a bimodule it carries the right R-action."""
    if bimodule:
        return _restrict(t, t.labels_of("R"), right_alg=t.R, right_pre=t.prefixes[0])
    return _restrict(t, t.labels_of("R"))


def build_C(t, bimodule=False):
    """``C = Lambda e_S = [M; S]``; as a bimodule it carries the right S-action."""
    labels = t.labels_of("M") + t.labels_of("S")
    if bimodule:
        return _restrict(t, labels, right_alg=t.S, right_pre=t.prefixes[2])
    return _restrict(t, labels)


def row_module(t, parts):
    """``e Lambda`` as a right Lambda-module: parts "RM" gives [R M], "S" gives [0 S]."""
    labels = [x for p in parts for x in t.labels_of(p)]
    L = t.algebra
    keep = set(labels)
    sp = GradedSpace(L.field, {n: [x for x in b if x in keep]
                               for n, b in L.space.components.items()})
    ract = {(a, b): v for (a, b), v in L.mul.items() if a in keep}
    return DGModule(sp, {x: L.d.image(x) for x in sp}, right=L, ract=ract, check=False)


def c_star(t):
    """The (S, Lambda)-bimodule ``[0 S]``."""
    m = row_module(t, "S")
    ps = t.prefixes[2]
    lact = {}
    for (a, b), v in t.S.mul.items():
        lact[(a, ps + b)] = _prefixed(ps, v)
    return DGModule(m.space, m.d, left=t.S, lact=lact, right=t.algebra, ract=m.ract,
                    check=False)


def column_module(t, Y=None, g=None, with_S=True, name=None):
    """The column ``[Y; S]`` (or ``[Y; 0]`` without S) over Lambda.

    ``Y`` is a left R-module and ``g: M -> Y`` a degree-0 R-linear map; an
    element ``m`` of the corner acts on ``[y; s]`` by ``[g(ms); 0]``.  The
    labels of ``Y`` are kept and the S-part uses the algebra's S labels.
    """
    field = t.field
    ps = t.prefixes[2]
    comps = {}
    d = {}
    lact = {}
    if Y is not None:
        for lab, n in Y.space.pairs():
            comps.setdefault(n, []).append(lab)
        d.update(Y.d.cols)
        for (r, y), v in Y.lact.items():
            lact[(t.rl(r), y)] = v
    if with_S:
        for lab, n in t.S.space.pairs():
            comps.setdefault(n, []).append(ps + lab)
            d[ps + lab] = _prefixed(ps, t.S.d.image(lab))
        for (a, b), v in t.S.mul.items():
            lact[(ps + a, ps + b)] = _prefixed(ps, v)
        if g is not None:
            for (m, s), v in t.M.ract.items():
                img = g(v)
                if img:
                    lact[(t.ml(m), ps + s)] = img
    sp = GradedSpace(field, comps)
    return DGModule(sp, d, left=t.algebra, lact=lact, name=name, check=False)


def embed_left(t, X):
    """``i_* X = [X; 0]``: only the R-corner acts."""
    return column_module(t, X, with_S=False)


def quotient_C(t):
    """``C / [M; 0]`` with its projection from ``C``."""
    C = build_C(t)
    one = t.field.one
    sub = span_subspace(C.space, [{x: one} for x in t.labels_of("M")])
    return quotient_module(C, sub)


# -- explicit maps ----------------------------------------------------------

def f_map(t, B=None):
    """``r -> f_r`` with ``f_r([1;0]) = [r;0]``, i.e. ``f_r(b) = (-1)^{|r||b|} b r``."""
    B = B or build_B(t)
    F = end_dga(t.algebra, B)
    Rop = opposite(t.R)
    one = t.field.one
    images = {}
    for r, nr in t.R.space.pairs():
        cols = {}
        for b, nb in B.space.pairs():
            v = t.algebra.product({b: one}, {t.rl(r): one})
            cols[b] = {k: sign(nr * nb) * c for k, c in v.items()}
        g = GradedMap(B.space, B.space, nr, cols, check=False)
        images[r] = F.hom.vec_of(g)
    return DGAMorphism(Rop, F, GradedMap(Rop.space, F.space, 0, images, check=False))


def g_map(t, C=None):
    """``s -> g_s`` with ``g_s([0;1]) = [0;s]``, i.e. ``g_s(c) = (-1)^{|s||c|} c s``."""
    C = C or build_C(t)
    G = end_dga(t.algebra, C)
    Sop = opposite(t.S)
    one = t.field.one
    images = {}
    for s, ns in t.S.space.pairs():
        cols = {}
        for c, nc in C.space.pairs():
            v = t.algebra.product({c: one}, {t.sl(s): one})
            cols[c] = {k: sign(ns * nc) * x for k, x in v.items()}
        g = GradedMap(C.space, C.space, ns, cols, check=False)
        images[s] = G.hom.vec_of(g)
    return DGAMorphism(Sop, G, GradedMap(Sop.space, G.space, 0, images, check=False))


def _bijective_morphism(f):
    from .modules import is_bijective
    return is_bijective(f.map)


def check_peirce(t):
    """``e_R L e_R = R``, ``e_R L e_S = M``, ``e_S L e_S = S`` and ``e_S L e_R = 0``."""
    rep = Report()
    L = t.algebra
    one = t.field.one
    for name, left, right, part in (("e_R L e_R = R", t.e_R, t.e_R, "R"),
                                    ("e_R L e_S = M", t.e_R, t.e_S, "M"),
                                    ("e_S L e_S = S", t.e_S, t.e_S, "S"),
                                    ("e_S L e_R = 0", t.e_S, t.e_R, None)):
        span = set()
        ok = True
        for x in L.space:
            v = L.product(L.product(left, {x: one}), right)
            span.update(v)
            if part is not None and x in t.labels_of(part) and v != {x: one}:
                ok = False
        want = set(t.labels_of(part)) if part else set()
        ok = ok and span == want
        rep.add(name, "module-iso", ok)
    return rep


def check_decomposition(t):
    """``Lambda = B + C`` as left modules via the coordinate maps."""
    B, C = build_B(t), build_C(t)
    ds = direct_sum_modules([B, C])
    Lm = regular(t.algebra)
    fwd = ModuleMap(ds.module, Lm, GradedMap(ds.module.space, Lm.space, 0,
                                             {x: {x: t.field.one} for x in ds.module.space}))
    back = ModuleMap(Lm, ds.module, GradedMap(Lm.space, ds.module.space, 0,
                                              {x: {x: t.field.one} for x in Lm.space}))
    rep = Report()
    r1 = check_module_iso(fwd)
    r2 = check_module_iso(back)
    inverse = fwd.map.compose(back.map) == GradedMap.identity(Lm.space)
    rep.add("Lambda = B + C", "module-iso", r1.ok and r2.ok and inverse,
            "" if r1.ok and r2.ok else "; ".join(e.render() for e in r1.failures + r2.failures))
    return rep


def check_hom_vanishes(t, C=None, B=None):
    C = C or build_C(t)
    B = B or build_B(t)
    H = hom_complex(t.algebra, C, B, side="left")
    dims = H.space.dims()
    rep = Report()
    rep.add("Hom(C, B) = 0 in all degrees", "exactness", not dims,
            f"nonzero in degrees {sorted(dims)}" if dims else "")
    return rep


def check_end_algebras(t):
    rep = Report()
    for name, f in (("End(B)^op = R via r -> f_r", f_map(t)),
                    ("End(C)^op = S via s -> g_s", g_map(t))):
        r = check_dga_morphism(f)
        ok = r.ok and _bijective_morphism(f)
        wit = "; ".join(e.render() for e in r.failures) if not r.ok else ("" if ok else "not bijective")
        rep.add(name, "module-iso", ok, wit)
    return rep


def c_star_map(t):
    """``Hom(C, Lambda) -> [0 S]``, ``theta -> theta([0;1])``."""
    Cb = build_C(t, bimodule=True)
    Lb = regular(t.algebra, "bi")
    H = hom_complex(t.algebra, Cb, Lb, side="left")
    Hm = H.as_module()
    target = c_star(t)
    images = {}
    for lab in H.space:
        images[lab] = H.maps[lab](t.e_S)
    f = ModuleMap(Hm, target, GradedMap(Hm.space, target.space, 0, images, check=False))
    return H, f


def check_c_star(t):
    rep = Report()
    H, f = c_star_map(t)
    r = check_module_iso(f)
    rep.add("Hom(C, Lambda) = [0 S] as (S, Lambda)-bimodules", "module-iso", r.ok,
            "; ".join(e.render() for e in r.failures))
    left = ModuleMap(f.source.left_part(), f.target.left_part(), f.map)
    r = check_module_iso(left)
    rep.add("Hom(C, Lambda) = S as left S-modules", "module-iso", r.ok,
            "; ".join(e.render() for e in r.failures))
    RM, S0 = row_module(t, "RM"), row_module(t, "S")
    ds = direct_sum_modules([RM, S0])
    Lr = regular(t.algebra, "right")
    one = t.field.one
    phi = ModuleMap(Lr, ds.module, GradedMap(Lr.space, ds.module.space, 0,
                                             {x: {x: one} for x in Lr.space}))
    r = check_module_iso(phi)
    rep.add("Lambda = [R M] + [0 S] as right modules", "module-iso", r.ok,
            "; ".join(e.render() for e in r.failures))
    return rep


def check_useful_facts(t):
    """``j_* S = C/[M;0]`` through ``Hom_S([0 S], S)``."""
    rep = Report()
    Cs = c_star(t)
    Sreg = regular(t.S, "left")
    H = hom_complex(t.S, Cs, Sreg, side="left")
    Hm = H.as_module()
    Q, proj = quotient_C(t)
    unit_row = {t.sl(x): c for x, c in t.S.unit.items()}
    images = {}
    for lab in H.space:
        s = H.maps[lab](unit_row)
        images[lab] = proj({t.sl(x): c for x, c in s.items()})
    f = ModuleMap(Hm, Q, GradedMap(Hm.space, Q.space, 0, images, check=False))
    r = check_module_iso(f)
    rep.add("Hom_S(C*, S) = C/[M;0]", "module-iso", r.ok, "; ".join(e.render() for e in r.failures))
    rep.add("C/[M;0] has the dimensions of S", "module-iso", Q.space.dims() == t.S.space.dims())
    return rep


def tensor_embedding(t, X):
    """Isomorphism ``[X; 0] -> B (x)_R X``, ``x -> 1 (x) x``."""
    Bb = build_B(t, bimodule=True)
    T = tensor_over_algebra(Bb, X, t.R)
    E = embed_left(t, X)
    unit_b = {t.rl(x): c for x, c in t.R.unit.items()}
    one = t.field.one
    images = {x: T.pure(unit_b, {x: one}) for x in X.space}
    return ModuleMap(E, T.module, GradedMap(E.space, T.module.space, 0, images, check=False))


def check_embedding(t, X, name="X"):
    rep = Report()
    f = tensor_embedding(t, X)
    r = check_module_iso(f)
    rep.add(f"B (x)_R {name} = [{name}; 0]", "module-iso", r.ok, "; ".join(e.render() for e in r.failures))
    hx = homology(X.complex).dims()
    he = homology(f.source.complex).dims()
    rep.add(f"H([{name}; 0]) = H({name})", "quasi-iso", hx == he, "" if hx == he else f"{he} vs {hx}")
    return rep


def default_test_modules(t):
    """Left Lambda-modules used for the perp dimension identity."""
    L = t.algebra
    B, C = build_B(t), build_C(t)
    Q, _ = quotient_C(t)
    mods = [("Lambda", regular(L)), ("B", B), ("C", C), ("C/[M;0]", Q),
            ("S B", shift_module(B)), ("[M;0]", embed_left(t, t.M.left_part())),
            ("[R;0]", embed_left(t, regular(t.R)))]
    return mods


def check_perp_identity(t, modules=None):
    rep = Report()
    L = t.algebra
    B, C = build_B(t), build_C(t)
    for name, X in modules or default_test_modules(t):
        hx = homology(X.complex).dims()
        hb = homology(hom_complex(L, B, X, side="left").complex).dims()
        hc = homology(hom_complex(L, C, X, side="left").complex).dims()
        total = {}
        for part in (hb, hc):
            for n, k in part.items():
                total[n] = total.get(n, 0) + k
        ok = total == hx
        rep.add(f"dim H(X) = dim H Hom(B,X) + dim H Hom(C,X) for X = {name}", "quasi-iso", ok,
                "" if ok else f"{hx} vs {total}")
    return rep


def verify_triangular(t, modules=None):
    """All structural checks on ``Lambda``, ``B``, ``C`` and ``C*``."""
    rep = Report()
    rep.extend(check_dga(t.algebra), "Lambda: ")
    rep.extend(check_module(build_B(t)), "B: ")
    rep.extend(check_module(build_C(t)), "C: ")
    rep.extend(check_peirce(t))
    rep.extend(check_decomposition(t))
    rep.extend(check_hom_vanishes(t))
    rep.extend(check_end_algebras(t))
    rep.extend(check_c_star(t))
    rep.extend(check_useful_facts(t))
    rep.extend(check_embedding(t, regular(t.R), "R"))
    rep.extend(check_embedding(t, t.M.left_part(), "M"))
    rep.extend(check_perp_identity(t, modules))
    return rep
