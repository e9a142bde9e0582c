"""Line-oriented text format for algebras, modules, maps and tilt problems.

A file is a sequence of sections::

    field Q                       # optional file-wide default
    [algebra A2]
    basis e1:0 e2:0 a:0
    unit 1 e1 + 1 e2
    mul e1*a = 1 a
    ...
    [bimodule S1]
    over A2
    rightover k
    basis m:0
    act e1*m = 1 m
    ract m*1 = 1 m

Omitted products, actions and differentials are zero.  References to other
sections are a bare ``NAME``, ``file:PATH`` or ``file:PATH#NAME``, with
relative paths taken from the directory of the referring file.  A ``[map]``
section (``from``, ``to``, ``degree``, ``image``) carries the augmentation of
a supplied resolution; problems refer to it through ``U = MAP`` or
``V = MAP``.
"""

import os
import re

from .algebra import DGAlgebra, check_dga
from .errors import DGError, FieldMismatch, ParseError, SemanticError, UnresolvedReference
from .graded import GradedMap, GradedSpace
from .modules import DGModule, ModuleMap, check_module, check_module_map
from .resolution import DEFAULT_MAX_GENERATORS, DEFAULT_WINDOW
from .scalars import GF, QQ
from .tilt import TiltProblem

KINDS = ("algebra", "bimodule", "map", "module", "problem")
_DIRECTIVES = {
    "algebra": {"field", "basis", "unit", "mul", "diff"},
    "module": {"field", "basis", "over", "rightover", "act", "ract", "diff"},
    "bimodule": {"field", "basis", "over", "rightover", "act", "ract", "diff"},
    "map": {"from", "to", "degree", "image"},
    "problem": {"R", "S", "M", "X", "U", "V", "max_generators", "degree_window"},
}
_SINGLE = {"field", "unit", "over", "rightover", "from", "to", "degree", "R", "S", "M", "X",
           "U", "V", "max_generators", "degree_window"}
_HEADER = re.compile(r"^\[\s*(\S+)\s+(\S+?)\s*\]$")
_NAME = re.compile(r"^[A-Za-z_][\w.\-]*$")
_COMMENT = re.compile(r"(^|\s)#.*$")
_INT = re.compile(r"^-?\d+$")


def _check_label(lab, line, col):
    if not lab or re.search(r"[\s*=#]", lab) or lab == "+":
        raise ParseError(f"bad basis label {lab!r}", line, col)


class Token:
    __slots__ = ("text", "col")

    def __init__(self, text, col):
        self.text = text
        self.col = col


class Directive:
    def __init__(self, key, tokens, line):
        self.key = key
        self.tokens = tokens
        self.line = line

    def col(self, i=0):
        return self.tokens[i].col if i < len(self.tokens) else None

    def error(self, msg, i=None):
        return ParseError(msg, self.line, self.col(i) if i is not None else None)


class Section:
    def __init__(self, kind, name, line):
        self.kind = kind
        self.name = name
        self.line = line
        self.directives = []

    def get(self, key):
        for d in self.directives:
            if d.key == key:
                return d
        return None

    def all(self, key):
        return [d for d in self.directives if d.key == key]


class SourceFile:
    """Parsed sections in file order, with their constructed objects."""

    def __init__(self, path=None):
        self.path = path
        self.sections = []
        self.objects = {}
        self.field = None
        self.external = []

    def kind_of(self, name):
        for s in self.sections:
            if s.name == name:
                return s.kind
        raise UnresolvedReference(name)

    def names(self, kind=None):
        return [s.name for s in self.sections if kind is None or s.kind == kind]

    def __getitem__(self, name):
        if name not in self.objects:
            raise UnresolvedReference(f"no section named {name!r}")
        return self.objects[name]

    def __contains__(self, name):
        return name in self.objects

    def __iter__(self):
        return iter(self.names())


# -- lexing -----------------------------------------------------------------

def _tokens(line):
    return [Token(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _split_sections(text):
    top = []
    sections = []
    seen = {}
    cur = None
    for i, raw in enumerate(text.splitlines(), 1):
        line = _COMMENT.sub("", raw).rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("["):
            m = _HEADER.match(stripped)
            col = line.index("[") + 1
            if not m:
                raise ParseError("malformed section header", i, col)
            kind, name = m.groups()
            if kind not in _DIRECTIVES:
                raise ParseError(f"unknown section kind {kind!r}", i, col + 1)
            if not _NAME.match(name):
                raise ParseError(f"bad section name {name!r}", i, line.index(name) + 1)
            if name in seen:
                raise ParseError(f"duplicate section name {name!r} (first on line {seen[name]})",
                                 i, line.index(name) + 1)
            seen[name] = i
            cur = Section(kind, name, i)
            sections.append(cur)
            continue
        toks = _tokens(line)
        key = toks[0].text
        d = Directive(key, toks[1:], i)
        if cur is None:
            if key != "field":
                raise ParseError(f"directive {key!r} outside a section", i, toks[0].col)
            top.append(d)
            continue
        if key not in _DIRECTIVES[cur.kind]:
            raise ParseError(f"unknown directive {key!r} in a {cur.kind} section", i, toks[0].col)
        if key in _SINGLE and cur.get(key) is not None:
            raise ParseError(f"repeated directive {key!r}", i, toks[0].col)
        cur.directives.append(d)
    if len(top) > 1:
        raise ParseError("repeated file-wide field directive", top[1].line, 1)
    return top, sections


# -- directive parsers --------------------------------------------------------

def _parse_field(d):
    t = [x.text for x in d.tokens]
    if t == ["Q"]:
        return QQ
    if len(t) == 2 and t[0] == "Fp":
        if not _INT.match(t[1]):
            raise d.error(f"bad modulus {t[1]!r}", 1)
        try:
            return GF(int(t[1]))
        except ValueError as e:
            raise d.error(str(e), 1)
    raise d.error("expected 'field Q' or 'field Fp P'", 0)


def _parse_basis(d, pairs, seen):
    if not d.tokens:
        raise d.error("empty basis directive")
    for i, tok in enumerate(d.tokens):
        lab, sep, deg = tok.text.rpartition(":")
        if not sep or not _INT.match(deg):
            raise d.error(f"expected LABEL:DEGREE, got {tok.text!r}", i)
        _check_label(lab, d.line, tok.col)
        if lab in seen:
            raise d.error(f"duplicate basis label {lab!r}", i)
        seen.add(lab)
        pairs.append((lab, int(deg)))


def _parse_terms(d, toks, field, known):
    """``COEFF LABEL [+ COEFF LABEL ...]`` or ``0``."""
    if len(toks) == 1 and toks[0].text == "0":
        return {}
    if not toks:
        raise d.error("missing right-hand side")
    vec = {}
    i = 0
    while True:
        if i + 1 >= len(toks):
            raise ParseError("expected COEFF LABEL", d.line, toks[min(i, len(toks) - 1)].col)
        try:
            c = field.parse(toks[i].text)
        except DGError as e:
            raise ParseError(str(e), d.line, toks[i].col)
        lab = toks[i + 1].text
        if lab not in known:
            raise SemanticError(f"line {d.line}, col {toks[i + 1].col}: "
                                f"unknown basis label {lab!r}")
        if lab in vec:
            raise ParseError(f"label {lab!r} repeated in one sum", d.line, toks[i + 1].col)
        if c:
            vec[lab] = c
        i += 2
        if i == len(toks):
            return vec
        if toks[i].text != "+":
            raise ParseError("expected '+'", d.line, toks[i].col)
        i += 1


def _lhs(d, sep=None):
    """Split ``LHS = terms``; with ``sep`` the left side is ``A<sep>B``."""
    if len(d.tokens) < 2 or d.tokens[1].text != "=":
        raise d.error("expected 'LHS = terms'", 0)
    lhs = d.tokens[0]
    if sep is None:
        return lhs.text, d.tokens[2:]
    a, s, b = lhs.text.partition(sep)
    if not s or not a or not b:
        raise ParseError(f"expected A{sep}B", d.line, lhs.col)
    return (a, b), d.tokens[2:]


def _one_value(d):
    if len(d.tokens) != 1:
        raise d.error(f"{d.key} takes one value", 0 if d.tokens else None)
    return d.tokens[0].text


def _assignment(d):
    if len(d.tokens) != 2 or d.tokens[0].text != "=":
        raise d.error(f"expected '{d.key} = REF'", 0 if d.tokens else None)
    return d.tokens[1]


# -- loading ------------------------------------------------------------------

class _Loader:
    def __init__(self, check, cache):
        self.check = check
        self.cache = cache

    def load_path(self, path):
        path = os.path.abspath(path)
        if path in self.cache:
            src = self.cache[path]
            if src is None:
                raise SemanticError(f"circular file reference through {path}")
            return src
        self.cache[path] = None
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UnresolvedReference(f"cannot read {path}: {e.strerror}")
        src = self.load_text(text, path)
        self.cache[path] = src
        return src

    def load_text(self, text, path=None):
        top, sections = _split_sections(text)
        src = SourceFile(path)
        src.sections = sections
        if top:
            src.field = _parse_field(top[0])
        for s in sections:
            fd = s.get("field")
            if fd is not None:
                f = _parse_field(fd)
                if src.field is None:
                    src.field = f
                elif f != src.field:
                    raise SemanticError(f"line {fd.line}: field {f.text()} differs from "
                                        f"{src.field.text()} declared earlier in the file")
        src._building = set()
        for s in sections:
            self._build(src, s)
        return src

    def _section(self, src, name):
        for s in src.sections:
            if s.name == name:
                return s
        return None

    def _build(self, src, s):
        if s.name in src.objects:
            return src.objects[s.name]
        if s.name in src._building:
            raise SemanticError(f"line {s.line}: circular reference through {s.name!r}")
        src._building.add(s.name)
        try:
            obj = getattr(self, "_build_" + s.kind)(src, s)
        except FieldMismatch as e:
            raise SemanticError(f"section {s.name!r} (line {s.line}): {e}")
        src._building.discard(s.name)
        src.objects[s.name] = obj
        return obj

    def resolve(self, src, tok, line, kinds):
        """Object for a reference token; ``kinds`` lists acceptable section kinds."""
        text = tok.text
        if text.startswith("file:"):
            path, _, name = text[5:].partition("#")
            if not path:
                raise ParseError("empty file reference", line, tok.col)
            base = os.path.dirname(src.path) if src.path else os.getcwd()
            other = self.load_path(os.path.join(base, path))
            if not name:
                cands = [s.name for s in other.sections if s.kind in kinds]
                if len(cands) != 1:
                    raise UnresolvedReference(
                        f"line {line}, col {tok.col}: {path} has {len(cands)} sections of kind "
                        f"{'/'.join(kinds)}; name one with #NAME")
                name = cands[0]
            if name not in other.objects:
                raise UnresolvedReference(f"line {line}, col {tok.col}: no section {name!r} "
                                          f"in {path}")
            if other.kind_of(name) not in kinds:
                raise SemanticError(f"line {line}, col {tok.col}: {name!r} is a "
                                    f"{other.kind_of(name)}, expected {'/'.join(kinds)}")
            if src.field is not None and other.field is not None and other.field != src.field:
                raise SemanticError(f"line {line}, col {tok.col}: {path} is over "
                                    f"{other.field.text()}, this file over {src.field.text()}")
            obj = other.objects[name]
            if not any(o is obj for _, o in src.external):
                src.external.append((f"file:{path}#{name}", obj))
            return obj
        s = self._section(src, text)
        if s is None:
            raise UnresolvedReference(f"line {line}, col {tok.col}: unknown name {text!r}")
        if s.kind not in kinds:
            raise SemanticError(f"line {line}, col {tok.col}: {text!r} is a {s.kind}, "
                                f"expected {'/'.join(kinds)}")
        return self._build(src, s)

    def _field_for(self, src, s, fallback=None):
        fd = s.get("field")
        if fd is not None:
            return _parse_field(fd)
        if src.field is not None:
            return src.field
        if fallback is not None:
            return fallback
        raise SemanticError(f"section {s.name!r} (line {s.line}) declares no field")

    def _space(self, s, field):
        pairs, seen = [], set()
        for d in s.all("basis"):
            _parse_basis(d, pairs, seen)
        return GradedSpace.from_pairs(field, pairs)

    def _diff(self, s, space):
        images = {}
        for d in s.all("diff"):
            lab, toks = _lhs(d)
            if lab not in space:
                raise SemanticError(f"line {d.line}, col {d.col(0)}: unknown basis label {lab!r}")
            if lab in images:
                raise ParseError(f"second differential for {lab!r}", d.line, d.col(0))
            vec = _parse_terms(d, toks, space.field, space)
            for t in vec:
                if space.degree(t) != space.degree(lab) + 1:
                    raise SemanticError(f"line {d.line}: diff {lab} has a term {t!r} of degree "
                                        f"{space.degree(t)}, expected {space.degree(lab) + 1}")
            images[lab] = vec
        return GradedMap(space, space, 1, images, check=False)

    def _table(self, s, key, sep, left_space, right_space, target, what):
        table = {}
        for d in s.all(key):
            (a, b), toks = _lhs(d, sep)
            for lab, sp in ((a, left_space), (b, right_space)):
                if lab not in sp:
                    raise SemanticError(f"line {d.line}, col {d.col(0)}: {what} mentions "
                                        f"unknown label {lab!r}")
            if (a, b) in table:
                raise ParseError(f"second entry for {a}{sep}{b}", d.line, d.col(0))
            table[(a, b)] = _parse_terms(d, toks, target.field, target)
        return table

    def _checked(self, rep, s):
        if self.check and not rep.ok:
            raise SemanticError(f"section {s.name!r} (line {s.line}) fails its axioms: "
                                + "; ".join(e.render() for e in rep.failures))

    def _build_algebra(self, src, s):
        field = self._field_for(src, s)
        space = self._space(s, field)
        ud = s.get("unit")
        if ud is None:
            raise SemanticError(f"algebra {s.name!r} (line {s.line}) has no unit")
        unit = _parse_terms(ud, ud.tokens, field, space)
        mul = self._table(s, "mul", "*", space, space, space, "product")
        try:
            a = DGAlgebra(space, self._diff(s, space), unit, mul, name=s.name)
        except SemanticError as e:
            raise SemanticError(f"algebra {s.name!r} (line {s.line}): {e}")
        self._checked(check_dga(a), s)
        return a

    def _build_module(self, src, s):
        left = right = None
        for key in ("over", "rightover"):
            d = s.get(key)
            if d is None:
                continue
            if len(d.tokens) != 1:
                raise d.error(f"{key} takes one algebra reference", 0 if d.tokens else None)
            alg = self.resolve(src, d.tokens[0], d.line, ("algebra",))
            if key == "over":
                left = alg
            else:
                right = alg
        if s.kind == "bimodule" and (left is None or right is None):
            raise SemanticError(f"bimodule {s.name!r} (line {s.line}) needs over and rightover")
        if s.kind == "module" and left is not None and right is not None:
            raise SemanticError(f"module {s.name!r} (line {s.line}) has two actions; "
                                "declare it as a bimodule")
        for key, alg in (("act", left), ("ract", right)):
            if alg is None and s.get(key) is not None:
                d = s.get(key)
                raise SemanticError(f"line {d.line}: {key} without "
                                    f"{'over' if key == 'act' else 'rightover'}")
        fallback = (left or right).field if (left or right) else None
        field = self._field_for(src, s, fallback)
        space = self._space(s, field)
        lact = self._table(s, "act", "*", left.space, space, space, "action") if left else None
        ract = self._table(s, "ract", "*", space, right.space, space, "action") if right else None
        try:
            m = DGModule(space, self._diff(s, space), left=left, lact=lact, right=right,
                         ract=ract, name=s.name)
        except SemanticError as e:
            raise SemanticError(f"{s.kind} {s.name!r} (line {s.line}): {e}")
        self._checked(check_module(m), s)
        return m

    _build_bimodule = _build_module

    def _build_map(self, src, s):
        ends = []
        for key in ("from", "to"):
            d = s.get(key)
            if d is None:
                raise SemanticError(f"map {s.name!r} (line {s.line}) needs '{key}'")
            if len(d.tokens) != 1:
                raise d.error(f"{key} takes one module reference")
            ends.append(self.resolve(src, d.tokens[0], d.line, ("module", "bimodule")))
        source, target = ends
        degree = 0
        d = s.get("degree")
        if d is not None:
            v = _one_value(d)
            if not _INT.match(v):
                raise d.error(f"bad degree {v!r}", 0)
            degree = int(v)
        images = {}
        for d in s.all("image"):
            lab, toks = _lhs(d)
            if lab not in source.space:
                raise SemanticError(f"line {d.line}, col {d.col(0)}: unknown source label {lab!r}")
            if lab in images:
                raise ParseError(f"second image for {lab!r}", d.line, d.col(0))
            vec = _parse_terms(d, toks, target.field, target.space)
            for t in vec:
                if target.deg(t) != source.deg(lab) + degree:
                    raise SemanticError(f"line {d.line}: image of {lab} has a term {t!r} of the "
                                        "wrong degree")
            images[lab] = vec
        f = ModuleMap(source, target, GradedMap(source.space, target.space, degree, images,
                                                check=False))
        self._checked(check_module_map(f), s)
        return f

    def _build_problem(self, src, s):
        refs = {}
        want = {"R": ("algebra",), "S": ("algebra",), "M": ("bimodule",),
                "X": ("module", "bimodule"), "U": ("map",), "V": ("map",)}
        for key, kinds in want.items():
            d = s.get(key)
            if d is None:
                if key in "RSM":
                    raise SemanticError(f"problem {s.name!r} (line {s.line}) needs '{key} = REF'")
                continue
            refs[key] = (self.resolve(src, _assignment(d), d.line, kinds), d.line)
        R, S, M = refs["R"][0], refs["S"][0], refs["M"][0]
        if M.left != R or M.right != S:
            raise SemanticError(f"line {refs['M'][1]}: M is not an (R, S)-bimodule")
        if R.field != S.field:
            raise SemanticError(f"problem {s.name!r}: R and S are over different fields")
        X = refs["X"][0] if "X" in refs else None
        if X is not None and X.left != R:
            raise SemanticError(f"line {refs['X'][1]}: X is not a left R-module")
        if X is not None and X.right is not None:
            X = X.left_part()
        pairs = {}
        for key, target in (("U", X), ("V", M)):
            if key not in refs:
                continue
            f, line = refs[key]
            if target is None and key == "U":
                if f.target.left != R or f.target.space != R.space:
                    raise SemanticError(f"line {line}: U must resolve R when X is omitted")
            elif f.target.space != target.space:
                raise SemanticError(f"line {line}: the map does not end at {'X' if key == 'U' else 'M'}")
            pairs[key] = (f.source, f)
        caps = {"max_generators": DEFAULT_MAX_GENERATORS, "degree_window": DEFAULT_WINDOW}
        d = s.get("max_generators")
        if d is not None:
            v = _one_value(d)
            if not v.isdigit():
                raise d.error(f"bad generator cap {v!r}", 0)
            caps["max_generators"] = int(v)
        d = s.get("degree_window")
        if d is not None:
            v = _one_value(d)
            m = re.match(r"^(-?\d+):(-?\d+)$", v)
            if not m or int(m.group(1)) > int(m.group(2)):
                raise d.error(f"expected LO:HI, got {v!r}", 0)
            caps["degree_window"] = (int(m.group(1)), int(m.group(2)))
        p = TiltProblem(R, S, M, X, U=pairs.get("U"), V=pairs.get("V"), name=s.name, **caps)
        p.refs = {k: v[0] for k, v in refs.items()}
        return p


def parse(text, path=None, check=True):
    """Parse file text into a :class:`SourceFile`; axioms are checked unless ``check`` is off."""
    return _Loader(check, {}).load_text(text, path)


def load(path, check=True):
    return _Loader(check, {}).load_path(path)


# -- serialization ------------------------------------------------------------

def _vec_text(vec, field):
    if not vec:
        return "0"
    return " + ".join(f"{field.format(vec[k])} {k}" for k in sorted(vec))


def _basis_lines(space):
    lines = []
    for n in sorted(space.degrees()):
        labs = sorted(space.basis(n))
        lines.append("basis " + " ".join(f"{lab}:{n}" for lab in labs))
    return lines


def _diff_lines(d, field):
    return [f"diff {lab} = {_vec_text(d.cols[lab], field)}" for lab in sorted(d.cols) if d.cols[lab]]


def _table_lines(key, table, field):
    return [f"{key} {a}*{b} = {_vec_text(table[(a, b)], field)}" for a, b in sorted(table)]


class _Namer:
    """Assigns section names to objects, pulling in dependencies."""

    def __init__(self, external=()):
        self.entries = []
        self.external = list(external)

    def name_of(self, obj, hint):
        for ref, o in self.external:
            if o is obj:
                return ref
        for name, o in self.entries:
            if o is obj:
                return name
        for name, o in self.entries:
            if type(o) is type(obj) and not isinstance(o, TiltProblem) and o == obj:
                return name
        return self.add(obj, hint)

    def add(self, obj, hint):
        base = re.sub(r"[^\w.\-]", "_", hint or "obj")
        if not re.match(r"[A-Za-z_]", base):
            base = "_" + base
        taken = {n for n, _ in self.entries}
        name, i = base, 2
        while name in taken:
            name, i = f"{base}{i}", i + 1
        self.entries.append((name, obj))
        return name


def _kind(obj):
    if isinstance(obj, DGAlgebra):
        return "algebra"
    if isinstance(obj, DGModule):
        return "bimodule" if obj.left is not None and obj.right is not None else "module"
    if isinstance(obj, ModuleMap):
        return "map"
    if isinstance(obj, TiltProblem):
        return "problem"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _section_lines(obj, namer):
    kind = _kind(obj)
    if kind == "algebra":
        f = obj.field
        return ["field " + f.text(), *_basis_lines(obj.space), "unit " + _vec_text(obj.unit, f),
                *_table_lines("mul", obj.mul, f), *_diff_lines(obj.d, f)]
    if kind in ("module", "bimodule"):
        f = obj.field
        lines = ["field " + f.text()]
        if obj.left is not None:
            lines.append("over " + namer.name_of(obj.left, obj.left.name or "A"))
        if obj.right is not None:
            lines.append("rightover " + namer.name_of(obj.right, obj.right.name or "A"))
        lines += _basis_lines(obj.space)
        lines += _diff_lines(obj.d, f)
        lines += _table_lines("act", obj.lact, f)
        lines += _table_lines("ract", obj.ract, f)
        return lines
    if kind == "map":
        f = obj.source.field
        lines = ["from " + namer.name_of(obj.source, obj.source.name or "source"),
                 "to " + namer.name_of(obj.target, obj.target.name or "target")]
        if obj.map.degree:
            lines.append(f"degree {obj.map.degree}")
        cols = obj.map.cols
        lines += [f"image {lab} = {_vec_text(cols[lab], f)}" for lab in sorted(cols) if cols[lab]]
        return lines
    p = obj
    lines = [f"R = {namer.name_of(p.R, p.R.name or 'R')}",
             f"S = {namer.name_of(p.S, p.S.name or 'S')}",
             f"M = {namer.name_of(p.M, p.M.name or 'M')}"]
    if p.X is not None:
        lines.append(f"X = {namer.name_of(p.X, p.X.name or 'X')}")
    for key, pair in (("U", p.U), ("V", p.V)):
        if pair is not None:
            lines.append(f"{key} = {namer.name_of(pair[1], key + '_aug')}")
    lines.append(f"max_generators {p.max_generators}")
    lo, hi = p.degree_window
    lines.append(f"degree_window {lo}:{hi}")
    return lines


def serialize(objects, name=None):
    """Canonical text for one object, a ``{name: object}`` mapping or a SourceFile.

    Sections are sorted by kind then name; objects an item depends on (the
    algebras of a module, the ends of a map) are emitted as well.
    """
    namer = _Namer(objects.external if isinstance(objects, SourceFile) else ())
    if isinstance(objects, SourceFile):
        items = [(n, objects.objects[n]) for n in objects.names()]
    elif isinstance(objects, dict):
        items = list(objects.items())
    else:
        items = [(name or getattr(objects, "name", None) or _kind(objects), objects)]
    for n, obj in items:
        _kind(obj)
        namer.add(obj, n)
    body = {}
    i = 0
    while i < len(namer.entries):
        n, obj = namer.entries[i]
        body[n] = (_kind(obj), _section_lines(obj, namer))
        i += 1
    fields = {o.field for _, o in namer.entries if isinstance(o, (DGAlgebra, DGModule))}
    if len(fields) > 1:
        raise SemanticError("objects over different fields cannot share a file")
    out = []
    for n in sorted(body, key=lambda n: (KINDS.index(body[n][0]), n)):
        kind, lines = body[n]
        out.append(f"[{kind} {n}]")
        out.extend(lines)
        out.append("")
    return "\n".join(out)


def canonical(obj):
    """The object with every basis sorted by (degree, label), as a parse would give."""
    return parse(serialize({"it": obj}))["it"]
