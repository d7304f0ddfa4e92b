"""Bundled algebra objects and their verification.

One object type covers all four kinds (the transforms module moves objects
between kinds and shares the carrier and reports):

  skew-truss      (G, +, circ, sigma)   circ associative, left skew
                                        sigma-distributive
  ditruss         (G, +, sigma, circ, dot)   sigma(a) + a.b = a o b
  weak-truss      (G, +, dot, sigma)    dot left weakly sigma-associative
                                        and left distributive
  interchange-nr  (G, +, circ)          circ satisfies the interchange law

check() runs exactly the defining axioms of the kind; everything else
(consequence reports, transforms, decompositions) demands a verified object
first and never re-derives the axioms silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import catalog
from .errors import (
    CarrierMismatch,
    DotNotDistributive,
    InputError,
    MissingComponent,
    NotVerified,
    PreconditionFailed,
    VerificationFailed,
)
from .groups import (
    EndoMap,
    FiniteGroup,
    MapLike,
    compose_commute,
    compose_maps,
    images_of,
    is_endomorphism_images,
    is_idempotent_map,
)
from .ops import (
    BinOpTable,
    LawReport,
    binop,
    is_associative,
    is_left_distributive,
    is_left_skew_sigma_distributive,
    is_left_weak_sigma_associative,
    satisfies_interchange,
)

SKEW_TRUSS = "skew-truss"
DITRUSS = "ditruss"
WEAK_TRUSS = "weak-truss"
INTERCHANGE = "interchange-nr"

KINDS = (SKEW_TRUSS, DITRUSS, WEAK_TRUSS, INTERCHANGE)

# which components each kind carries: (sigma, circ, dot)
_COMPONENTS = {
    SKEW_TRUSS: (True, True, False),
    DITRUSS: (True, True, True),
    WEAK_TRUSS: (True, False, True),
    INTERCHANGE: (False, True, False),
}

_KIND_ALIASES = {"interchange": INTERCHANGE, "interchange-near-ring": INTERCHANGE}


def normalize_kind(kind: str) -> str:
    k = kind.strip().lower()
    k = _KIND_ALIASES.get(k, k)
    if k not in KINDS:
        raise InputError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    return k


@dataclass(frozen=True)
class SigmaFlags:
    """Validated facts about the unary map; downstream operations state which
    flags they require instead of assuming them."""

    endomorphism: bool
    idempotent: bool
    fixes_zero: bool


@dataclass
class AlgebraObject:
    group: FiniteGroup
    kind: str
    sigma: tuple[int, ...] | None = None
    circ: BinOpTable | None = None
    dot: BinOpTable | None = None
    verified: bool = field(default=False, compare=False)

    @property
    def order(self) -> int:
        return self.group.order

    def sigma_flags(self) -> SigmaFlags:
        if self.sigma is None:
            raise MissingComponent(f"{self.kind} object carries no unary map")
        return SigmaFlags(
            endomorphism=is_endomorphism_images(self.group, self.sigma),
            idempotent=is_idempotent_map(self.sigma),
            fixes_zero=self.sigma[0] == 0,
        )

    def structure_key(self) -> tuple:
        """Serialization used for structural identity and canonical forms:
        sigma images, then circ row-major, then dot row-major."""
        parts: list = []
        if self.sigma is not None:
            parts.append(self.sigma)
        if self.circ is not None:
            parts.append(tuple(x for row in self.circ.table for x in row))
        if self.dot is not None:
            parts.append(tuple(x for row in self.dot.table for x in row))
        return tuple(parts)


@dataclass(frozen=True)
class CheckResult:
    kind: str
    reports: tuple[LawReport, ...]

    @property
    def ok(self) -> bool:
        return all(r.holds for r in self.reports)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "verified": self.ok,
            "axioms": [r.to_json() for r in self.reports],
        }


def make_algebra(
    group: FiniteGroup,
    kind: str,
    sigma: MapLike | None = None,
    circ: BinOpTable | Sequence[Sequence[int]] | None = None,
    dot: BinOpTable | Sequence[Sequence[int]] | None = None,
) -> AlgebraObject:
    """Assemble an (unverified) algebra object, enforcing the component set
    of the kind and a single shared carrier."""
    kind = normalize_kind(kind)
    need_sigma, need_circ, need_dot = _COMPONENTS[kind]

    def as_op(x, label):
        if x is None:
            return None
        if not isinstance(x, BinOpTable):
            x = binop(group, x)
        if x.carrier.table != group.table:
            raise CarrierMismatch(f"{label} table lives on a different carrier than the group")
        return x

    sig = None if sigma is None else images_of(sigma)
    if sig is not None and (len(sig) != group.order or any(not 0 <= v < group.order for v in sig)):
        raise InputError("sigma images do not fit the carrier")
    circ_t = as_op(circ, "circ")
    dot_t = as_op(dot, "dot")

    for present, needed, label in (
        (sig, need_sigma, "sigma"),
        (circ_t, need_circ, "circ"),
        (dot_t, need_dot, "dot"),
    ):
        if needed and present is None:
            raise MissingComponent(f"kind {kind} requires component {label}")
        if not needed and present is not None:
            raise InputError(f"kind {kind} does not take component {label}")
    return AlgebraObject(group=group, kind=kind, sigma=sig, circ=circ_t, dot=dot_t)


def make_skew_truss(group, circ, sigma) -> AlgebraObject:
    return make_algebra(group, SKEW_TRUSS, sigma=sigma, circ=circ)


def make_ditruss(group, sigma, circ, dot) -> AlgebraObject:
    return make_algebra(group, DITRUSS, sigma=sigma, circ=circ, dot=dot)


def make_weak_truss(group, dot, sigma) -> AlgebraObject:
    return make_algebra(group, WEAK_TRUSS, sigma=sigma, dot=dot)


def make_interchange(group, circ) -> AlgebraObject:
    return make_algebra(group, INTERCHANGE, circ=circ)


def _ditruss_compatibility(obj: AlgebraObject) -> LawReport:
    """sigma(a) + a.b = a o b for all a, b."""
    add = obj.group.table
    s, c, d = obj.sigma, obj.circ.table, obj.dot.table
    for a in obj.group.elements:
        sa = s[a]
        for b in obj.group.elements:
            lhs = add[sa][d[a][b]]
            rhs = c[a][b]
            if lhs != rhs:
                return LawReport("sigma-plus-dot-equals-circ", False, (a, b), lhs, rhs)
    return LawReport("sigma-plus-dot-equals-circ", True)


def check(obj: AlgebraObject) -> CheckResult:
    """Run exactly the defining axioms for obj.kind; marks the object
    verified iff every axiom passes."""
    kind = obj.kind
    if kind == SKEW_TRUSS:
        reports = (
            is_associative(obj.circ),
            is_left_skew_sigma_distributive(obj.circ, obj.sigma),
        )
    elif kind == DITRUSS:
        reports = (_ditruss_compatibility(obj),)
    elif kind == WEAK_TRUSS:
        reports = (
            is_left_weak_sigma_associative(obj.dot, obj.sigma),
            is_left_distributive(obj.dot),
        )
    elif kind == INTERCHANGE:
        reports = (satisfies_interchange(obj.circ),)
    else:  # pragma: no cover - construction forbids it
        raise InputError(f"unknown kind {kind}")
    result = CheckResult(kind=kind, reports=reports)
    obj.verified = result.ok
    return result


def verify(obj: AlgebraObject) -> AlgebraObject:
    """check() that raises on the first failing axiom."""
    result = check(obj)
    if not result.ok:
        bad = next(r for r in result.reports if not r.holds)
        raise VerificationFailed(
            f"{obj.kind} axiom {bad.law} fails at {bad.witness}: {bad.lhs} != {bad.rhs}",
            report=bad,
        )
    return obj


def require_verified(obj: AlgebraObject, kinds: tuple[str, ...] | None = None) -> None:
    if kinds is not None and obj.kind not in kinds:
        raise InputError(f"expected kind in {kinds}, got {obj.kind}")
    if not obj.verified:
        raise NotVerified(f"object of kind {obj.kind} has not passed check()")


# ---------------------------------------------------------------------------
# lambda maps

@dataclass(frozen=True)
class LambdaFamily:
    """The left-translation family: maps[a](b) = -sigma(a) + (a o b), which
    for ditrusses and weak trusses is just a.b."""

    maps: tuple[EndoMap, ...]
    all_endomorphisms: bool
    constant: bool

    def __getitem__(self, a: int) -> EndoMap:
        return self.maps[a]


def lambda_family(obj: AlgebraObject) -> LambdaFamily:
    G = obj.group
    if obj.sigma is None:
        raise MissingComponent("lambda family needs the unary map")
    if obj.dot is not None:
        rows = obj.dot.table
    elif obj.circ is not None:
        add, inv, s, c = G.table, G.inverse, obj.sigma, obj.circ.table
        rows = tuple(
            tuple(add[inv[s[a]]][c[a][b]] for b in G.elements) for a in G.elements
        )
    else:
        raise MissingComponent("lambda family needs a binary operation")
    maps = tuple(
        EndoMap(images=tuple(row), is_endomorphism=is_endomorphism_images(G, row))
        for row in rows
    )
    return LambdaFamily(
        maps=maps,
        all_endomorphisms=all(m.is_endomorphism for m in maps),
        constant=all(m.images == maps[0].images for m in maps),
    )


def sigma_from_circ(G: FiniteGroup, circ: BinOpTable) -> tuple[int, ...]:
    """The map a -> a o 0, the canonical unary-map candidate of any circ."""
    return tuple(circ.table[a][0] for a in G.elements)


# ---------------------------------------------------------------------------
# consequence reports

@dataclass(frozen=True)
class Claim:
    name: str
    holds: bool | None  # None = hypotheses not met, claim skipped
    witness: tuple | None = None

    @property
    def applicable(self) -> bool:
        return self.holds is not None

    def to_json(self) -> dict:
        out: dict = {"claim": self.name, "holds": self.holds}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


@dataclass(frozen=True)
class ConsequenceReport:
    name: str
    claims: tuple[Claim, ...]

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.claims if c.applicable)

    def to_json(self) -> dict:
        return {"report": self.name, "ok": self.ok, "claims": [c.to_json() for c in self.claims]}


def _forall(name: str, pairs, pred) -> Claim:
    for args in pairs:
        if not pred(*args):
            return Claim(name, False, witness=tuple(args))
    return Claim(name, True)


def skew_truss_consequence_report(obj: AlgebraObject) -> ConsequenceReport:
    """Derived facts every verified skew truss must satisfy: each lambda map
    is an additive endomorphism, a o 0 recovers sigma, sigma is idempotent,
    and (when sigma fixes 0) lambda_0 is an idempotent endomorphism that
    computes 0 o a and commutes with sigma."""
    require_verified(obj, (SKEW_TRUSS,))
    G = obj.group
    lam = lambda_family(obj)
    s, c = obj.sigma, obj.circ.table
    claims = [
        _forall(
            "lambda-maps-are-endomorphisms",
            ((a,) for a in G.elements),
            lambda a: lam[a].is_endomorphism,
        ),
        _forall(
            "circ-by-zero-recovers-sigma",
            ((a,) for a in G.elements),
            lambda a: c[a][0] == s[a],
        ),
        Claim("sigma-idempotent", is_idempotent_map(s)),
    ]
    if s[0] == 0:
        lam0 = lam[0]
        claims.append(
            Claim(
                "lambda0-idempotent-endomorphism",
                lam0.is_endomorphism and is_idempotent_map(lam0),
            )
        )
        claims.append(
            _forall(
                "zero-circ-recovers-lambda0",
                ((a,) for a in G.elements),
                lambda a: c[0][a] == lam0(a),
            )
        )
        claims.append(Claim("sigma-commutes-with-lambda0", compose_commute(s, lam0)))
    else:
        for name in (
            "lambda0-idempotent-endomorphism",
            "zero-circ-recovers-lambda0",
            "sigma-commutes-with-lambda0",
        ):
            claims.append(Claim(name, None))
    return ConsequenceReport("skew-truss-consequences", tuple(claims))


def ditruss_consequence_report(obj: AlgebraObject) -> ConsequenceReport:
    """Derived facts for a verified ditruss whose dot is left distributive:
    zero/negation behavior of both operations, and (when sigma is an
    idempotent endomorphism) the equivalence of circ-associativity with weak
    sigma-associativity of dot plus its companions."""
    require_verified(obj, (DITRUSS,))
    if not is_left_distributive(obj.dot).holds:
        raise DotNotDistributive("consequence report requires a left-distributive dot")
    G = obj.group
    add, inv = G.table, G.inverse
    s, c, d = obj.sigma, obj.circ.table, obj.dot.table
    elements = G.elements
    pairs = [(a, b) for a in elements for b in elements]
    claims = [
        _forall("dot-by-zero-is-zero", ((a,) for a in elements), lambda a: d[a][0] == 0),
        _forall(
            "dot-negates-second-argument",
            pairs,
            lambda a, b: d[a][inv[b]] == inv[d[a][b]],
        ),
        _forall(
            "circ-by-zero-recovers-sigma",
            ((a,) for a in elements),
            lambda a: c[a][0] == s[a],
        ),
        _forall(
            "circ-of-negated-second",
            pairs,
            lambda a, b: c[a][inv[b]] == add[add[s[a]][inv[c[a][b]]]][s[a]],
        ),
    ]
    flags = obj.sigma_flags()
    if flags.endomorphism and flags.idempotent:
        assoc = is_associative(obj.circ).holds
        weak = is_left_weak_sigma_associative(obj.dot, s).holds
        claims.append(
            Claim("circ-associative-iff-dot-weak-sigma-associative", assoc == weak)
        )
        if assoc and weak:
            claims.append(
                _forall(
                    "sigma-slides-through-dot",
                    pairs,
                    lambda a, b: s[d[a][b]] == d[a][s[b]],
                )
            )
            lam = lambda_family(obj)
            claims.append(
                _forall(
                    "lambda-respects-circ",
                    pairs,
                    lambda a, b: lam[c[a][b]].images
                    == compose_maps(lam[a], lam[b]),
                )
            )
            claims.append(Claim("lambda0-idempotent", is_idempotent_map(lam[0])))
        else:
            claims.append(Claim("sigma-slides-through-dot", None))
            claims.append(Claim("lambda-respects-circ", None))
            claims.append(Claim("lambda0-idempotent", None))
    else:
        for name in (
            "circ-associative-iff-dot-weak-sigma-associative",
            "sigma-slides-through-dot",
            "lambda-respects-circ",
            "lambda0-idempotent",
        ):
            claims.append(Claim(name, None))
    return ConsequenceReport("ditruss-consequences", tuple(claims))


# ---------------------------------------------------------------------------
# example constructions

def build_conjugation_ditruss(G: FiniteGroup, sigma: MapLike, tau: MapLike) -> AlgebraObject:
    """The ditruss with a o b = tau(b) + sigma(a) and a.b the conjugate
    -sigma(a) + tau(b) + sigma(a).  Requires commuting idempotent
    endomorphisms; collapses to dot = tau-pi2 on abelian carriers."""
    s, t = images_of(sigma), images_of(tau)
    for label, m in (("sigma", s), ("tau", t)):
        if not is_endomorphism_images(G, m):
            raise PreconditionFailed(f"{label} is not a group endomorphism")
        if not is_idempotent_map(m):
            raise PreconditionFailed(f"{label} is not idempotent")
    if not compose_commute(s, t):
        raise PreconditionFailed("sigma and tau do not commute under composition")
    add, inv = G.table, G.inverse
    n = G.order
    circ = [[add[t[b]][s[a]] for b in range(n)] for a in range(n)]
    dot = [[add[add[inv[s[a]]][t[b]]][s[a]] for b in range(n)] for a in range(n)]
    return verify(make_ditruss(G, s, circ, dot))


# ---------------------------------------------------------------------------
# JSON round trip

def _strict_group_resolver(spec) -> FiniteGroup:
    # inline groups must already carry the identity at 0: the structure
    # tables share the labeling and cannot be relabeled behind their back
    if isinstance(spec, dict):
        from .groups import group_from_json

        return group_from_json(spec, normalize=False)
    return catalog.resolve_group(spec)


def structure_from_json(data: dict, resolver: Callable = _strict_group_resolver) -> AlgebraObject:
    if not isinstance(data, dict):
        raise InputError("structure JSON must be an object")
    if "kind" not in data or "group" not in data:
        raise InputError("structure JSON requires 'kind' and 'group' fields")
    kind = normalize_kind(str(data["kind"]))
    group = resolver(data["group"])
    return make_algebra(
        group,
        kind,
        sigma=data.get("sigma"),
        circ=data.get("circ"),
        dot=data.get("dot"),
    )


def structure_to_json(obj: AlgebraObject, inline_group: bool = False) -> dict:
    out: dict = {"kind": obj.kind}
    out["group"] = obj.group.to_json() if inline_group else obj.group.name
    if obj.sigma is not None:
        out["sigma"] = list(obj.sigma)
    if obj.circ is not None:
        out["circ"] = [list(r) for r in obj.circ.table]
    if obj.dot is not None:
        out["dot"] = [list(r) for r in obj.dot.table]
    return out
