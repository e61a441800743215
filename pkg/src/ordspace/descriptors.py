"""JSON descriptors for cones, subgroups and maps.

Every shipped cone serializes to a small JSON term (``Cone.descriptor()``)
and is rebuilt here.  Printing is canonical (sorted keys, no whitespace), so
``dumps(loads(text)) == text`` for printed descriptors.  Errors carry the JSON
path of the offending node.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache

from .abelian import FlagCone, FlagOrder, LatticeSubgroup
from .braid import DehornoyCone, ParabolicSubgroup, ShiftMap
from .cones import Cone, LexCone, PullbackCone, Subgroup, SurgeryCone
from .elements import AbelianGroup, BraidGroup, FreeGroup, TowerGroup, parse_group
from .errors import DescriptorError
from .lattice import Lattice
from .magnus import MagnusCone
from .maps import (
    B3CommutatorMap,
    CoordinateMap,
    ExponentSum,
    IdentityMap,
    Inclusion,
    InvertGenerator,
    Map,
    Retraction,
)
from .quad import parse_quad
from .tower import TowerCone

__all__ = ["dumps", "loads", "cone_from", "subgroup_from", "map_from", "parse_cone_spec"]


def dumps(obj) -> str:
    """Canonical text of a descriptor, cone, subgroup or map."""
    if hasattr(obj, "descriptor"):
        obj = obj.descriptor()
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def loads(text: str) -> Cone:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise DescriptorError(f"malformed JSON: {e.msg}", e.pos) from None
    return cone_from(d)


# --------------------------------------------------------------- helpers


def _need(d, key: str, path: str, kind=None):
    if not isinstance(d, dict):
        raise DescriptorError(f"expected an object at {path}")
    if key not in d:
        raise DescriptorError(f"missing key {key!r} at {path}")
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise DescriptorError(f"bad type for {path}.{key}")
    return v


def _group(d, key: str, path: str, cls=None):
    tag = _need(d, key, path, str)
    try:
        G = parse_group(tag)
    except (ValueError, TypeError) as e:
        raise DescriptorError(f"{path}.{key}: {e}") from None
    if cls is not None and not isinstance(G, cls):
        raise DescriptorError(f"{path}.{key}: {tag} is the wrong kind of group")
    return G


def _int(d, key, path) -> int:
    v = _need(d, key, path)
    if not isinstance(v, int) or isinstance(v, bool):
        raise DescriptorError(f"{path}.{key} must be an integer")
    return v


def _wrap(path: str, fn, *args):
    try:
        return fn(*args)
    except DescriptorError:
        raise
    except (ValueError, TypeError) as e:
        raise DescriptorError(f"{path}: {e}") from None


# ------------------------------------------------------------------ cones


def cone_from(d, path: str = "$") -> Cone:
    kind = _need(d, "kind", path, str)
    if kind == "zk-flag":
        G = _group(d, "group", path, AbelianGroup)
        rows = _need(d, "functionals", path, list)
        fs = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or not all(isinstance(x, str) for x in row):
                raise DescriptorError(f"{path}.functionals[{i}] must be a list of numbers as strings")
            fs.append(tuple(_wrap(f"{path}.functionals[{i}]", parse_quad, x) for x in row))
        return FlagCone(_wrap(path, FlagOrder, G.dim, tuple(fs)))
    if kind == "magnus":
        G = _group(d, "group", path, FreeGroup)
        return MagnusCone(G.rank, _int(d, "degree", path) if "degree" in d else 2)
    if kind == "dehornoy":
        G = _group(d, "group", path, BraidGroup)
        return _wrap(path, DehornoyCone, G.strands)
    if kind == "tower-signs":
        G = _group(d, "group", path, TowerGroup)
        signs = _need(d, "signs", path, str)
        if not re.fullmatch(r"[+-]+", signs):
            raise DescriptorError(f"{path}.signs must be a string of + and -")
        return _wrap(path, TowerCone, G.rank, tuple(1 if c == "+" else -1 for c in signs))
    if kind == "surgery":
        base = cone_from(_need(d, "base", path), path + ".base")
        convex = subgroup_from(_need(d, "convex", path), path + ".convex")
        repl = cone_from(_need(d, "replacement", path), path + ".replacement")
        embed = map_from(d["embed"], path + ".embed") if "embed" in d else None
        return _wrap(path, SurgeryCone, base, convex, repl, embed)
    if kind == "lex-ses":
        kernel = cone_from(_need(d, "kernel", path), path + ".kernel")
        quotient = cone_from(_need(d, "quotient", path), path + ".quotient")
        maps = _need(d, "maps", path, dict)
        project = map_from(_need(maps, "project", path + ".maps"), path + ".maps.project")
        kmap = map_from(maps["kernel"], path + ".maps.kernel") if "kernel" in maps else None
        return _wrap(path, LexCone, kernel, quotient, project, kmap)
    if kind == "pullback":
        inner = cone_from(_need(d, "cone", path), path + ".cone")
        along = map_from(_need(d, "map", path), path + ".map")
        return _wrap(path, PullbackCone, inner, along)
    if kind == "homeo-lex":
        base = cone_from(_need(d, "base", path), path + ".base")
        return _pipeline(dumps(base), _int(d, "k", path), path)[0]
    raise DescriptorError(f"unknown cone kind {kind!r} at {path}")


def subgroup_from(d, path: str = "$") -> Subgroup:
    kind = _need(d, "kind", path, str)
    if kind == "lattice":
        G = _group(d, "group", path, AbelianGroup)
        basis = _need(d, "basis", path, list)
        return LatticeSubgroup(_wrap(path, Lattice.from_generators, G.dim, basis))
    if kind == "parabolic":
        G = _group(d, "group", path, BraidGroup)
        return _wrap(path, ParabolicSubgroup, G.strands, _int(d, "r", path))
    if kind == "stab0":
        base = cone_from(_need(d, "base", path), path + ".base")
        return _pipeline(dumps(base), _int(d, "k", path), path)[1]
    raise DescriptorError(f"unknown subgroup kind {kind!r} at {path}")


def map_from(d, path: str = "$") -> Map:
    kind = _need(d, "kind", path, str)
    if kind == "identity":
        return IdentityMap(_group(d, "group", path))
    if kind == "coords":
        keep = _need(d, "keep", path, list)
        return _wrap(path, CoordinateMap, _group(d, "source", path), keep)
    if kind == "exponent-sum":
        return _wrap(path, ExponentSum, _group(d, "source", path))
    if kind == "b3-commutator":
        return B3CommutatorMap()
    if kind == "retraction":
        return _wrap(path, Retraction, _int(d, "split", path))
    if kind == "inclusion":
        return Inclusion(_group(d, "source", path, FreeGroup), _group(d, "target", path, FreeGroup))
    if kind == "invert":
        return _wrap(path, InvertGenerator, _group(d, "group", path, FreeGroup), _int(d, "index", path))
    if kind == "shift":
        return _wrap(path, ShiftMap, _group(d, "source", path, BraidGroup).strands)
    raise DescriptorError(f"unknown map kind {kind!r} at {path}")


@lru_cache(maxsize=32)
def _pipeline_cached(base_text: str, k: int):
    from .realization import pipeline_parts

    return pipeline_parts(loads(base_text), k)


def _pipeline(base_text: str, k: int, path: str):
    try:
        return _pipeline_cached(base_text, k)
    except (ValueError, TypeError) as e:
        raise DescriptorError(f"{path}: {e}") from None


# ------------------------------------------------------------- shorthand


def parse_cone_spec(spec: str, group=None) -> Cone:
    """CLI shorthand or a JSON descriptor.

    ``magnus[:D]``, ``dehornoy``, ``flag:[(1,r2),(0,1)]``, ``tower:+-+``,
    ``lex`` (standard flag), a JSON object, or ``@path`` to a JSON file.
    Shorthands take their group from ``group``.
    """
    s = spec.strip()
    if s.startswith("@"):
        try:
            with open(s[1:], encoding="utf-8") as fh:
                return loads(fh.read())
        except OSError as e:
            raise DescriptorError(f"cannot read {s[1:]}: {e.strerror}") from None
    if s.startswith("{"):
        return loads(s)
    head, _, rest = s.partition(":")
    if group is None:
        raise DescriptorError(f"shorthand {head!r} needs --group")
    try:
        if head == "magnus":
            if not isinstance(group, FreeGroup):
                raise DescriptorError("magnus needs a free group")
            return MagnusCone(group.rank, int(rest) if rest else 2)
        if head == "dehornoy":
            return DehornoyCone(group.strands)
        if head == "tower":
            return TowerCone(group.rank, tuple(1 if c == "+" else -1 for c in rest))
        if head == "lex":
            return FlagCone(FlagOrder.standard(group.dim))
        if head == "flag":
            return FlagCone(FlagOrder(group.dim, parse_flag(rest)))
    except AttributeError:
        raise DescriptorError(f"shorthand {head!r} does not fit group {group.tag}") from None
    except (ValueError, TypeError) as e:
        if isinstance(e, DescriptorError):
            raise
        raise DescriptorError(f"bad cone {spec!r}: {e}") from None
    raise DescriptorError(f"unknown cone shorthand {head!r}", 0)


def parse_flag(text: str) -> tuple:
    """``[(1,r2),(0,1)]`` -> tuple of QuadField tuples."""
    t = text.replace(" ", "")
    if not (t.startswith("[") and t.endswith("]")):
        raise DescriptorError("flag must look like [(a,b),(c,d)]", 0)
    rows = []
    pos = 1
    for m in re.finditer(r"\(([^()]*)\)", t):
        if m.start() != pos:
            raise DescriptorError("unexpected text in flag", pos)
        rows.append(tuple(parse_quad(x) for x in m.group(1).split(",")))
        pos = m.end() + (1 if m.end() < len(t) - 1 and t[m.end()] == "," else 0)
    if pos != len(t) - 1 or not rows:
        raise DescriptorError("malformed flag", pos)
    return tuple(rows)


def fraction_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

