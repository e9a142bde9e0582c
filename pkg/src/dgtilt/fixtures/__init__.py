"""Bundled fixture files: algebras and modules (``.dga``) and tilt problems (``.problem``)."""

from importlib import resources

from ..fileformat import load as _load


def names(suffix=None):
    out = sorted(p.name for p in resources.files(__name__).iterdir()
                 if p.name.endswith((".dga", ".problem")))
    if suffix:
        out = [n for n in out if n.endswith(suffix)]
    return out


def path(name):
    p = resources.files(__name__) / name
    if not p.is_file():
        raise FileNotFoundError(f"no bundled fixture {name!r}")
    return str(p)


def load(name, check=True):
    return _load(path(name), check=check)
