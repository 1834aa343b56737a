"""Seeded random generation of tame maps, Keller maps and involutions.

Streams come from numpy's PCG64 seeded with ``(seed, hash(label))`` so that
different consumers with the same seed draw independent sequences.
"""
from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, replace

import numpy as np
from gmpy2 import mpq

from .endo import Endo, compose
from .errors import ResourceLimit
from .field import QQ, FieldElement, FieldTower, sqrt
from .involutions import Involution, builtin, make_involution
from .poly import Poly
from .tame import Affine, ElementaryX, ElementaryY, TameCertificate, compose_through, invert_certificate, recompose

log = logging.getLogger(__name__)

FIELD_MODES = ("rational", "gaussian", "real_radical")
MAX_REJECTIONS = 10_000


@dataclass(frozen=True)
class GenSpec:
    seed: int
    factor_count: int = 3
    max_elem_degree: int = 3
    coeff_height: int = 5
    field_mode: str = "rational"
    label: str = "default"

    def __post_init__(self):
        if self.field_mode not in FIELD_MODES:
            raise ValueError(f"field_mode must be one of {FIELD_MODES}")
        if self.coeff_height < 1:
            raise ValueError("coeff_height must be positive")


def field_for(mode: str) -> FieldTower:
    if mode == "rational":
        return QQ
    if mode == "gaussian":
        return sqrt(QQ(-1)).tower
    return sqrt(FieldTower(real=True)(2)).tower


def _stream_key(label: str) -> int:
    return int.from_bytes(hashlib.sha256(label.encode("utf-8")).digest()[:8], "little")


class Sampler:
    """Draws field elements and factors for one GenSpec."""

    def __init__(self, spec: GenSpec):
        self.spec = spec
        seed = spec.seed & (2 ** 64 - 1)
        self.rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, _stream_key(spec.label)])))
        self.tower = field_for(spec.field_mode)

    def _int(self, lo: int, hi: int) -> int:
        return int(self.rng.integers(lo, hi + 1))

    def rational(self, nonzero: bool = False) -> mpq:
        h = self.spec.coeff_height
        while True:
            num = self._int(-h, h)
            if num or not nonzero:
                return mpq(num, self._int(1, h))

    def coeff(self, nonzero: bool = False) -> FieldElement:
        t = self.tower
        while True:
            coords = [self.rational() for _ in range(t.degree)]
            # keep most coefficients in the base field so the maps stay readable
            if t.degree > 1 and self.rng.random() < 0.5:
                coords[1:] = [mpq(0)] * (t.degree - 1)
            c = t.from_coords(coords)
            if c or not nonzero:
                return c

    def univariate(self, var: str, degree: int) -> Poly:
        """Random polynomial in var of exactly the given degree."""
        coeffs = [self.coeff() for _ in range(degree)] + [self.coeff(nonzero=True)]
        mono = (lambda k: (k, 0)) if var == "x" else (lambda k: (0, k))
        return Poly.from_dict({mono(k): c for k, c in enumerate(coeffs)}, self.tower)

    def affine(self) -> Affine:
        while True:
            a, b, c, d = (self.coeff() for _ in range(4))
            if a * d - b * c:
                return Affine(((a, b), (c, d)), (self.coeff(), self.coeff()))

    def elementary(self):
        deg = self._int(1, max(1, self.spec.max_elem_degree))
        scale = self.coeff(nonzero=True)
        if self.rng.random() < 0.5:
            return ElementaryX(self.univariate("y", deg), scale)
        return ElementaryY(self.univariate("x", deg), scale)

    def tame(self, factor_count: int | None = None) -> tuple[Endo, TameCertificate]:
        n = self.spec.factor_count if factor_count is None else factor_count
        if n < 1:
            raise ValueError("factor_count must be at least 1")
        affine_turn = self.rng.random() < 0.5
        factors = []
        for _ in range(n):
            factors.append(self.affine() if affine_turn else self.elementary())
            affine_turn = not affine_turn
        f = recompose(factors)
        return f, TameCertificate(tuple(factors), f)


def random_tame(spec: GenSpec) -> tuple[Endo, TameCertificate]:
    """A product of factor_count alternating affine and elementary factors."""
    return Sampler(spec).tame()


def random_keller_with_quadratic_x(spec: GenSpec) -> Endo:
    """Rejection-sample random_tame outputs until deg f(x) <= 2."""
    s = Sampler(spec)
    for attempt in range(1, MAX_REJECTIONS + 1):
        f, _ = s.tame()
        if f.p.degree() <= 2:
            log.info("quadratic-x sample accepted after %d draws (rate %.3f)", attempt, 1 / attempt)
            return f
    raise ResourceLimit(f"no sample with deg p <= 2 in {MAX_REJECTIONS} draws")


def random_involution(spec: GenSpec, base: str = "alpha") -> Involution:
    """u^-1 s u for the named builtin s and a random tame u."""
    u, cert = random_tame(spec)
    u_inv = invert_certificate(cert).subject
    s = builtin(base).endo
    return make_involution(compose_through(compose(u_inv, s), cert.factors))


def random_unipoly_coeffs(spec: GenSpec, max_degree: int) -> list[FieldElement]:
    s = Sampler(replace(spec, label=spec.label + "/unipoly"))
    deg = s._int(0, max_degree)
    return [s.coeff() for _ in range(deg)] + [s.coeff(nonzero=True)]
