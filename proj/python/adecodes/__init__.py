"""Generalized labeled codes of ADE singularities."""

import json as _json

from ._core import Code as _Code, InputError, ResourceError, __version__
from . import _core

__all__ = ["Code", "InputError", "ResourceError", "local_homology", "catalog", "catalog_names", "__version__"]


class Code:
    """A labeled code, built from a code document (dict or JSON text)."""

    def __init__(self, doc):
        self._c = doc if isinstance(doc, _Code) else _Code.from_json(doc if isinstance(doc, str) else _json.dumps(doc))

    def to_dict(self):
        return _json.loads(self._c.to_json())

    @property
    def order(self):
        return int(self._c.order)

    @property
    def group(self):
        return self._c.group

    @property
    def labels(self):
        return self._c.labels

    @property
    def point_ids(self):
        return list(self._c.point_ids)

    @property
    def is_extended(self):
        return self._c.is_extended

    @property
    def rank(self):
        return self._c.rank

    def vectors(self):
        return _json.loads(self._c.vectors())

    def strict_part(self):
        return Code(self._c.strict_part())

    def shorten(self, point, vertices=None):
        return Code(self._c.shorten(point, vertices))

    def equivalent(self, other):
        return self._c.equivalent(other._c)

    def check(self, degree=None, k3=False):
        return _json.loads(self._c.check(degree, k3))

    def genealogy(self, max_depth=None):
        return _json.loads(self._c.genealogy(max_depth))

    def __repr__(self):
        return f"Code({self.labels}, K={self.group})"


def local_homology(family, index):
    return _json.loads(_core.local_homology(family, index))


def catalog_names():
    return list(_core.catalog_names())


def catalog(name):
    """Entry as a dict; "code" and "extended_code" are Code objects."""
    entry = _json.loads(_core.catalog_entry(name))
    for key in ("code", "extended_code"):
        if key in entry:
            entry[key] = Code(entry[key])
    return entry
