"""Built-in group catalog: Z1..Z8, the Klein four group, S3, D4, Q8.

Every table is normalized so the identity sits at index 0, then run through
the full validator.  Groups are addressable by name (case-insensitive) so
test fixtures and CLI invocations stay small.
"""

from __future__ import annotations

import functools
import itertools

from .errors import InputError
from .groups import FiniteGroup, group_from_json, validate_group


def _cyclic(n: int) -> FiniteGroup:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return validate_group(table, name=f"Z{n}")


def _klein_four() -> FiniteGroup:
    # (Z2)^2 with elements packed as 2-bit values: addition is XOR
    table = [[a ^ b for b in range(4)] for a in range(4)]
    return validate_group(table, name="V4")


def _perm_group(perms: list[tuple[int, ...]], name: str) -> FiniteGroup:
    # composition p*q = "apply q, then p"; identity must sort first
    perms = sorted(perms)
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = [[0] * n for _ in range(n)]
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i][j] = index[tuple(p[q[k]] for k in range(len(p)))]
    return validate_group(table, name=name)


def _symmetric3() -> FiniteGroup:
    return _perm_group(list(itertools.permutations(range(3))), "S3")


def _dihedral4() -> FiniteGroup:
    # symmetries of the square as permutations of its 4 corners
    rot = (1, 2, 3, 0)
    flip = (1, 0, 3, 2)
    elems = {tuple(range(4))}
    frontier = [tuple(range(4))]
    while frontier:
        p = frontier.pop()
        for g in (rot, flip):
            q = tuple(g[p[k]] for k in range(4))
            if q not in elems:
                elems.add(q)
                frontier.append(q)
    assert len(elems) == 8
    return _perm_group(sorted(elems), "D4")


def _quaternion8() -> FiniteGroup:
    # elements 1,-1,i,-i,j,-j,k,-k encoded as (axis, sign) with axis 0..3
    def mul(x, y):
        ax, sx = x
        ay, sy = y
        if ax == 0:
            return (ay, sx * sy)
        if ay == 0:
            return (ax, sx * sy)
        if ax == ay:
            return (0, -sx * sy)
        az = ({1, 2, 3} - {ax, ay}).pop()
        # cyclic rule i*j=k, j*k=i, k*i=j; reversed order flips the sign
        sign = 1 if (ay - ax) % 3 == 1 else -1
        return (az, sign * sx * sy)

    elems = [(a, s) for a in range(4) for s in (1, -1)]
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[mul(x, y)] for y in elems] for x in elems]
    return validate_group(table, name="Q8")


_BUILDERS = {
    **{f"Z{n}": functools.partial(_cyclic, n) for n in range(1, 9)},
    "V4": _klein_four,
    "S3": _symmetric3,
    "D4": _dihedral4,
    "Q8": _quaternion8,
}

_ALIASES = {"K4": "V4", "KLEIN4": "V4", "KLEIN-FOUR": "V4", "KLEINFOUR": "V4"}


def builtin_names() -> list[str]:
    return sorted(_BUILDERS)


@functools.lru_cache(maxsize=None)
def builtin_group(name: str) -> FiniteGroup:
    key = name.strip().upper()
    key = _ALIASES.get(key, key)
    if key not in _BUILDERS:
        raise InputError(f"unknown group {name!r}; built-ins: {', '.join(builtin_names())}")
    return _BUILDERS[key]()


def resolve_group(spec) -> FiniteGroup:
    """Resolve a group reference: a catalog name or an inline group object."""
    if isinstance(spec, str):
        return builtin_group(spec)
    if isinstance(spec, dict):
        return group_from_json(spec)
    if isinstance(spec, FiniteGroup):
        return spec
    raise InputError(f"cannot resolve a group from {type(spec).__name__}")


def groups_of_order_at_most(n: int) -> list[FiniteGroup]:
    return [g for g in (builtin_group(name) for name in builtin_names()) if g.order <= n]
