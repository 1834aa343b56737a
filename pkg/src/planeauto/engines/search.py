"""Bounded breadth-first search for moves that symmetrize a polynomial."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from ..endo import Endo
from ..errors import NotFound, ResourceLimit
from ..field import QQ
from ..involutions import SymmetryType, builtin, symmetry_type
from ..poly import Poly

# involutions of Jacobian -1 tried as goals, in this order
GOAL_MENU = ("alpha", "beta", "gamma", "a")


@dataclass(frozen=True)
class SearchResult:
    moves: tuple  # Endo g_1, ..., g_l; the witness is g_l(...g_1(A))
    witness: Poly
    involution: str
    type: SymmetryType
    nodes: int


def _coefficient_values(height: int):
    vals = []
    for k in range(1, height + 1):
        vals += [k, -k]
    return vals


def _elementary_moves(degree_cap: int, height_cap: int):
    """(nonzero count, degree, h coefficients) for every nonzero h of degree <= cap."""
    vals = [0] + _coefficient_values(height_cap)
    hs = []
    for coeffs in itertools.product(vals, repeat=degree_cap + 1):
        if not any(coeffs):
            continue
        deg = max(k for k, c in enumerate(coeffs) if c)
        hs.append((sum(1 for c in coeffs if c), deg, coeffs))
    hs.sort(key=lambda t: (t[0], t[1]))
    return [c for _, _, c in hs]


def moves(degree_cap: int, height_cap: int) -> list[Endo]:
    """The move basis, in search order.

    Elementary moves x -> s*x + h(y) come first, then y -> s*y + h(x), with
    s in (1, -1) and h ordered by number of terms and degree; affine maps with
    integer entries of height <= height_cap follow.
    """
    x, y = Poly.x(QQ), Poly.y(QQ)
    out = []
    hs = _elementary_moves(degree_cap, height_cap)
    for var in ("x", "y"):
        for coeffs in hs:
            t = y if var == "x" else x
            h = Poly.zero()
            for k, c in enumerate(coeffs):
                if c:
                    h = h + t ** k * c
            for s in (1, -1):
                if var == "x":
                    out.append(Endo(x * s + h, y))
                else:
                    out.append(Endo(x, y * s + h))
    vals = [0] + _coefficient_values(height_cap)
    for a, b, c, d in itertools.product(vals, repeat=4):
        if a * d - b * c == 0:
            continue
        for e0, e1 in itertools.product(vals, repeat=2):
            g = Endo(x * a + y * b + e0, x * c + y * d + e1)
            if g.is_identity():
                continue
            out.append(g)
    return out


def _goal(p: Poly):
    for name in GOAL_MENU:
        typ = symmetry_type(p, builtin(name))
        if typ is not SymmetryType.Neither:
            return name, typ
    return None


def symmetrize_search(a: Poly, depth: int, degree_cap: int, height_cap: int,
                      node_cap: int = 200_000) -> SearchResult:
    """First move sequence (breadth first) making a (skew-)symmetric.

    Raises NotFound when no sequence of length <= depth works and
    ResourceLimit when more than node_cap images are examined.
    """
    goal = _goal(a)
    if goal is not None:
        return SearchResult((), a, goal[0], goal[1], 1)
    basis = moves(degree_cap, height_cap)
    seen = {a}
    frontier = deque([(a, ())])
    nodes = 1
    for _ in range(depth):
        nxt = deque()
        while frontier:
            cur, path = frontier.popleft()
            for g in basis:
                img = g.apply(cur)
                if img in seen:
                    continue
                nodes += 1
                if nodes > node_cap:
                    raise ResourceLimit(f"search examined more than {node_cap} images")
                seen.add(img)
                goal = _goal(img)
                if goal is not None:
                    return SearchResult(path + (g,), img, goal[0], goal[1], nodes)
                nxt.append((img, path + (g,)))
        frontier = nxt
    raise NotFound(f"no symmetrizing sequence of length <= {depth} for {a}")
