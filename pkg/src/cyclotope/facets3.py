"""Facets of the three-orbit polytopes P(a, b, c).

P(a, b, c) is the permutation polytope of the cyclic group generated by
disjoint cycles of lengths ab, ac, bc with a, b, c pairwise coprime. Vertex
``k`` (in ``[[abc]]``) has coordinates ``x_{k mod ab}``, ``y_{k mod ac}``,
``z_{k mod bc}`` equal to 1. Through the Chinese remainder theorem ``k`` is
also the triple ``(k mod a, k mod b, k mod c)`` and an x-index is a pair in
``[[a]] x [[b]]``; y and z work the same way with (a, c) and (b, c).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .arith import CrtIndex, check_pairwise_coprime, crt_encode
from .embed import vertex_vector
from .errors import InvalidInputError, ResourceLimitError
from .group import CycleType
from .linalg import dot
from .structure import dimension_inclusion_exclusion

VERIFIED_FACET = "verified_facet"
VERIFIED_FACE_ONLY = "verified_face_only"
FAILED = "failed"

DEFAULT_CERT_BUDGET = 20_000
AXES = ("x", "y", "z")


@dataclass(frozen=True)
class AbcSpec:
    a: int
    b: int
    c: int

    def __post_init__(self):
        for v in (self.a, self.b, self.c):
            if not isinstance(v, int) or v < 2:
                raise InvalidInputError(f"a, b, c must be integers >= 2, got {v!r}")
        check_pairwise_coprime((self.a, self.b, self.c))

    @property
    def cycle_type(self) -> CycleType:
        return CycleType((self.a * self.b, self.a * self.c, self.b * self.c))

    @property
    def n(self) -> int:
        a, b, c = self.a, self.b, self.c
        return a * b + a * c + b * c

    @property
    def vertex_count(self) -> int:
        return self.a * self.b * self.c

    @property
    def dim(self) -> int:
        a, b, c = self.a, self.b, self.c
        return a * b + a * c + b * c - a - b - c

    def block_size(self, axis: str) -> int:
        a, b, c = self.a, self.b, self.c
        return {"x": a * b, "y": a * c, "z": b * c}[axis]

    def block_offset(self, axis: str) -> int:
        return {"x": 0, "y": self.a * self.b, "z": self.a * (self.b + self.c)}[axis]

    def project(self, axis: str, k: int) -> int:
        """Index of the 1 in block ``axis`` of vertex ``k``."""
        return k % self.block_size(axis)

    def pair_moduli(self, axis: str) -> tuple[int, int]:
        a, b, c = self.a, self.b, self.c
        return {"x": (a, b), "y": (a, c), "z": (b, c)}[axis]

    def vertices(self) -> list[tuple[int, ...]]:
        ct = self.cycle_type
        return [vertex_vector(ct, k) for k in range(self.vertex_count)]

    def __str__(self):
        return f"{self.a},{self.b},{self.c}"


def abc_vertex(spec: AbcSpec, k: int) -> tuple[int, ...]:
    if not 0 <= k < spec.vertex_count:
        raise InvalidInputError(f"vertex index {k} outside [0, {spec.vertex_count})")
    return vertex_vector(spec.cycle_type, k)


@dataclass(frozen=True)
class FaceSpec:
    S_x: frozenset
    S_y: frozenset
    S_z: frozenset

    def __post_init__(self):
        for name in ("S_x", "S_y", "S_z"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))

    def get(self, axis: str) -> frozenset:
        return {"x": self.S_x, "y": self.S_y, "z": self.S_z}[axis]

    def validate(self, spec: AbcSpec) -> None:
        for axis in AXES:
            S, m = self.get(axis), spec.block_size(axis)
            if any(not 0 <= s < m for s in S) or len(S) >= m:
                raise InvalidInputError(f"S_{axis} must be a proper subset of [[{m}]]")


def preimage(spec: AbcSpec, axis: str, S: Iterable[int]) -> frozenset:
    """Vertices whose ``axis`` coordinate index lies in ``S``."""
    S = set(S)
    m = spec.block_size(axis)
    return frozenset(k for k in range(spec.vertex_count) if k % m in S)


def image(spec: AbcSpec, axis: str, ks: Iterable[int]) -> frozenset:
    m = spec.block_size(axis)
    return frozenset(k % m for k in ks)


def face_lemma_check(spec: AbcSpec, f: FaceSpec) -> bool:
    """Both sufficient conditions for ``F_x u F_y u F_z`` to be a face."""
    f.validate(spec)
    F = {axis: preimage(spec, axis, f.get(axis)) for axis in AXES}
    if F["x"] & F["y"] & F["z"]:
        return False
    for i, j, k in permutations(AXES):
        lifted = preimage(spec, k, image(spec, k, F[i] & F[j]))
        if not (F[i] & lifted) <= F[j]:
            return False
    return True


@dataclass
class FacetCertificate:
    """Inequality ``functional @ v >= offset`` with its claimed tight vertices."""

    functional: tuple[int, ...]
    offset: Fraction
    tight_set: tuple[int, ...]
    status: str
    label: str = ""

    def as_json(self) -> dict:
        off = Fraction(self.offset)
        out = {
            "lambda": list(self.functional),
            "offset": int(off) if off.denominator == 1 else str(off),
            "tight": list(self.tight_set),
            "status": self.status,
        }
        if self.label:
            out["label"] = self.label
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FacetCertificate":
        return cls(
            tuple(int(x) for x in data["lambda"]),
            Fraction(data["offset"]),
            tuple(sorted(int(x) for x in data["tight"])),
            data.get("status", FAILED),
            data.get("label", ""),
        )

    def hull_row(self) -> tuple:
        """The same inequality as ``(r, c...)`` meaning ``r + c @ x >= 0``."""
        return (-Fraction(self.offset),) + tuple(self.functional)


def certify(points: Sequence[Sequence[int]], dim: int, functional: Sequence[int],
            offset, claimed_tight: Iterable[int]) -> str:
    """Re-derive the status of a claimed facet from scratch.

    ``verified_facet`` needs the inequality to hold on every point, to be
    tight exactly on ``claimed_tight`` and the tight points to have affine
    rank ``dim - 1``. If only the rank test fails the result is
    ``verified_face_only``; otherwise ``failed``.
    """
    from .hull import tight_rank_is

    offset = Fraction(offset)
    claimed = set(claimed_tight)
    if len(functional) != len(points[0]):
        return FAILED
    tight = set()
    for i, p in enumerate(points):
        val = dot(functional, p)
        if val < offset:
            return FAILED
        if val == offset:
            tight.add(i)
    if tight != claimed or not tight:
        return FAILED
    if len(tight) == len(points):
        return VERIFIED_FACE_ONLY
    return VERIFIED_FACET if tight_rank_is(points, sorted(tight), dim - 1) else VERIFIED_FACE_ONLY


def face_lemma_functional(spec: AbcSpec, f: FaceSpec, points=None) -> FacetCertificate:
    """Functional of value -1 on ``F_x u F_y u F_z`` and larger elsewhere.

    Block ``i`` gets -1 on ``S_i``, +1 on ``pi_i(F_j & F_k)`` and 0 otherwise.
    The result is checked, not trusted.
    """
    if not face_lemma_check(spec, f):
        raise InvalidInputError("face spec does not satisfy the face lemma conditions")
    F = {axis: preimage(spec, axis, f.get(axis)) for axis in AXES}
    lam = [0] * spec.n
    for i, j, k in (("x", "y", "z"), ("y", "x", "z"), ("z", "x", "y")):
        off = spec.block_offset(i)
        for m in image(spec, i, F[j] & F[k]):
            lam[off + m] = 1
        for m in f.get(i):
            lam[off + m] = -1
    tight = tuple(sorted(F["x"] | F["y"] | F["z"]))
    if points is None:
        points = spec.vertices()
    status = certify(points, spec.dim, lam, -1, tight)
    return FacetCertificate(tuple(lam), Fraction(-1), tight, status)


def nonessential_facets(spec: AbcSpec) -> list[FacetCertificate]:
    """The coordinate facets ``x_i >= 0``, ``y_j >= 0``, ``z_k >= 0``."""
    points = spec.vertices()
    certs = []
    for axis in AXES:
        off, m = spec.block_offset(axis), spec.block_size(axis)
        for idx in range(m):
            lam = [0] * spec.n
            lam[off + idx] = 1
            tight = tuple(k for k in range(spec.vertex_count) if k % m != idx)
            status = certify(points, spec.dim, lam, 0, tight)
            certs.append(FacetCertificate(tuple(lam), Fraction(0), tight, status, f"{axis}_{idx}>=0"))
    return certs


@dataclass(frozen=True)
class CheckerboardTriple:
    """Nonempty proper subsets ``I <= [[a]]``, ``J <= [[b]]``, ``K <= [[c]]``."""

    I: frozenset
    J: frozenset
    K: frozenset

    def __post_init__(self):
        for name in ("I", "J", "K"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))

    def validate(self, spec: AbcSpec) -> None:
        for S, m, name in ((self.I, spec.a, "I"), (self.J, spec.b, "J"), (self.K, spec.c, "K")):
            if not S or len(S) >= m or any(not 0 <= s < m for s in S):
                raise InvalidInputError(f"{name} must be a nonempty proper subset of [[{m}]]")

    def complement(self, spec: AbcSpec) -> "CheckerboardTriple":
        return CheckerboardTriple(
            frozenset(range(spec.a)) - self.I,
            frozenset(range(spec.b)) - self.J,
            frozenset(range(spec.c)) - self.K,
        )

    def canonical(self, spec: AbcSpec) -> "CheckerboardTriple":
        """Representative of ``{(I,J,K), (I^c,J^c,K^c)}`` with ``0 in I``."""
        return self if 0 in self.I else self.complement(spec)

    def key(self) -> tuple[int, int, int]:
        return tuple(sum(1 << s for s in S) for S in (self.I, self.J, self.K))

    def label(self) -> str:
        fmt = lambda S: "{" + ",".join(map(str, sorted(S))) + "}"
        return f"checkerboard I={fmt(self.I)} J={fmt(self.J)} K={fmt(self.K)}"


def _pairs_to_index(m1: int, m2: int, pairs: Iterable[tuple[int, int]]) -> frozenset:
    return frozenset(crt_encode(CrtIndex((m1, m2), (u, v))) for u, v in pairs)


def checkerboard_face_spec(spec: AbcSpec, triple: CheckerboardTriple) -> FaceSpec:
    triple.validate(spec)
    a, b, c = spec.a, spec.b, spec.c
    I, J, K = triple.I, triple.J, triple.K

    def mixed(A, B, ma, mb):
        return [(u, v) for u in range(ma) for v in range(mb) if (u in A) != (v in B)]

    return FaceSpec(
        _pairs_to_index(a, b, mixed(I, J, a, b)),
        _pairs_to_index(a, c, mixed(I, K, a, c)),
        _pairs_to_index(b, c, mixed(J, K, b, c)),
    )


def checkerboard_vertex_set(spec: AbcSpec, triple: CheckerboardTriple) -> tuple[int, ...]:
    """All vertices except those in ``I x J x K`` and ``I^c x J^c x K^c``."""
    triple.validate(spec)
    a, b, c = spec.a, spec.b, spec.c
    out = []
    for k in range(spec.vertex_count):
        inside = (k % a in triple.I, k % b in triple.J, k % c in triple.K)
        if not (all(inside) or not any(inside)):
            out.append(k)
    return tuple(out)


def _nontrivial_subsets(m: int, containing_zero: bool = False) -> list[frozenset]:
    subs = []
    for mask in range(1, (1 << m) - 1):
        if containing_zero and not mask & 1:
            continue
        subs.append(frozenset(i for i in range(m) if mask >> i & 1))
    return subs


def canonical_triples(spec: AbcSpec) -> list[CheckerboardTriple]:
    """Canonical triples (``0 in I``), sorted by their bitmask encoding."""
    triples = [
        CheckerboardTriple(I, J, K)
        for I in _nontrivial_subsets(spec.a, containing_zero=True)
        for J in _nontrivial_subsets(spec.b)
        for K in _nontrivial_subsets(spec.c)
    ]
    triples.sort(key=CheckerboardTriple.key)
    return triples


def checkerboard_count(spec: AbcSpec) -> int:
    return (2 ** spec.a - 2) * (2 ** spec.b - 2) * (2 ** spec.c - 2) // 2


def checkerboard_certificate(spec: AbcSpec, triple: CheckerboardTriple, points=None) -> FacetCertificate:
    cert = face_lemma_functional(spec, checkerboard_face_spec(spec, triple), points)
    cert.label = triple.label()
    return cert


def enumerate_checkerboard_facets(spec: AbcSpec, budget: int = DEFAULT_CERT_BUDGET) -> list[FacetCertificate]:
    """Certified checkerboard facets, one per complementary pair of triples."""
    count = checkerboard_count(spec)
    if count > budget:
        raise ResourceLimitError(
            f"{count} checkerboard facets exceed the certificate budget {budget}",
            {"would_produce": count, "budget": budget},
        )
    points = spec.vertices()
    certs = []
    seen = set()
    for triple in canonical_triples(spec):
        cert = checkerboard_certificate(spec, triple, points)
        if cert.tight_set in seen:
            raise AssertionError(f"duplicate checkerboard facet for {triple.label()}")
        seen.add(cert.tight_set)
        certs.append(cert)
    return certs


def facet_lower_bound(spec: AbcSpec) -> int:
    return checkerboard_count(spec) + spec.n


def conjectured_facet_count_2bc(b: int, c: int) -> int:
    """Conjectured exact facet count of P(2, b, c) for odd coprime b, c >= 3."""
    return (2 ** b - 2) * (2 ** c - 2) + 2 * b + 2 * c + b * c


def facet_count_probe(spec: AbcSpec, budget=None) -> dict:
    """Compare a full hull enumeration with the lower bound. Reports, never asserts."""
    from .hull import facet_enumeration

    hrep = facet_enumeration(spec.vertices(), budget)
    found = len(hrep.inequalities)
    report = {
        "abc": [spec.a, spec.b, spec.c],
        "dim": hrep.dim,
        "vertices": spec.vertex_count,
        "facets": found,
        "lower_bound": facet_lower_bound(spec),
        "bound_attained": found == facet_lower_bound(spec),
    }
    if spec.a == 2:
        report["conjectured_2bc"] = conjectured_facet_count_2bc(spec.b, spec.c)
    return report


def read_certificates(lines: Iterable[str]) -> list[FacetCertificate]:
    return [FacetCertificate.from_json(json.loads(ln)) for ln in lines if ln.strip()]
