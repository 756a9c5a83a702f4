"""Access to the shipped example algebras."""

from importlib import resources

from .algebra import parse_algebra

CORPUS_NAMES = ("point", "kxk", "m2k", "cl1", "oddext", "dualnumbers")

# Algebras whose annotations mark them smooth; the remaining two are the
# non-smooth negative controls.
SMOOTH_NAMES = ("point", "kxk", "m2k", "cl1")


def corpus_text(name):
    if name not in CORPUS_NAMES:
        raise KeyError("unknown corpus algebra %r" % name)
    return resources.files("ncbtt").joinpath("corpus/%s.json" % name).read_text("utf-8")


def load(name):
    return parse_algebra(corpus_text(name))


def load_all():
    return {name: load(name) for name in CORPUS_NAMES}
