"""Exhaustive classification of structures on a finite group.

Two independent routes are kept deliberately separate:

* a parametrized search over (sigma, lambda-family) pairs: every candidate
  that survives the vectorized filters is re-verified against the raw axioms
  in plain Python before it is emitted;
* raw-axiom brute force over full operation tables, feasible only for
  carriers of size <= 3, used to certify the parametrization (the
  parametrization is justified by the structure theory that the tests are
  supposed to certify, so the oracle must not share it).

The parametrized search keys on the reduction circ(a,b) = sigma(a) +
lam_a(b) with every lam_a an additive endomorphism, under which
associativity of circ is equivalent to

    (i)  sigma(a o b) = sigma(a) + lam_a(sigma(b))     for all a, b
    (ii) lam_{a o b}  = lam_a . lam_b                  for all a, b

and weak sigma-associativity of the dot table lam is equivalent to (ii)
alone (with a o b read as sigma(a) + lam_a(b)).
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import CarrierTooLarge, GroupMismatch, InputError, TrussLabError
from .groups import (
    EndoMap,
    FiniteGroup,
    automorphisms,
    compose_commute,
    compose_maps,
    enumerate_endomorphisms,
    image_commuting,
    is_idempotent_map,
    validate_group,
)
from .ops import is_associative, make_sigma_pi1, make_tau_pi2, op_add
from .structures import (
    DITRUSS,
    INTERCHANGE,
    SKEW_TRUSS,
    WEAK_TRUSS,
    AlgebraObject,
    make_algebra,
    verify,
)

ORDER_CAP_DEFAULT = 4
GUARDED_ORDER_CAP = 6
CANDIDATE_BUDGET = 50_000_000
ORACLE_ORDER_CAP = 3
_BATCH = 1 << 16


def worker_count(threads: int | None = None) -> int:
    if threads is not None:
        return max(1, int(threads))
    return max(1, int(os.environ.get("TRUSSLAB_THREADS", "1")))


@dataclass
class ClassificationResult:
    group_name: str
    kind: str
    total_count: int
    iso_class_count: int
    representatives: list[AlgebraObject]
    search_stats: dict
    structures: list[AlgebraObject] = field(default_factory=list)

    def to_json(self, up_to_iso: bool = False) -> dict:
        from .structures import structure_to_json

        stats = {k: v for k, v in self.search_stats.items() if k != "seconds"}
        out = {
            "group": self.group_name,
            "kind": self.kind,
            "total_count": self.total_count,
            "iso_class_count": self.iso_class_count,
            "representatives": [structure_to_json(o) for o in self.representatives],
            "search_stats": stats,
        }
        if not up_to_iso:
            out["structures"] = [structure_to_json(o) for o in self.structures]
        return out


# ---------------------------------------------------------------------------
# small combinatorial generators

def all_self_maps(n: int) -> list[tuple[int, ...]]:
    return [tuple(m) for m in itertools.product(range(n), repeat=n)]


def idempotent_self_maps(n: int) -> list[tuple[int, ...]]:
    """All maps f with f(f(a)) = f(a): fix a set of representatives, send
    everything else into it."""
    out = []
    for mask in range(1, 1 << n):
        fixed = [a for a in range(n) if mask >> a & 1]
        free = [a for a in range(n) if not mask >> a & 1]
        for choice in itertools.product(fixed, repeat=len(free)):
            f = list(range(n))
            for a, v in zip(free, choice):
                f[a] = v
            out.append(tuple(f))
    out.sort()
    return out


def _endo_tables(G: FiniteGroup):
    """Endomorphism list, image matrix and composition-index table."""
    endos = enumerate_endomorphisms(G)
    index = {e.images: i for i, e in enumerate(endos)}
    imgs = np.array([e.images for e in endos], dtype=np.int64)
    comp = np.empty((len(endos), len(endos)), dtype=np.int64)
    for i, e in enumerate(endos):
        for j, f in enumerate(endos):
            comp[i, j] = index[compose_maps(e, f)]
    return endos, imgs, comp


# ---------------------------------------------------------------------------
# parametrized searches

def _lambda_search(G: FiniteGroup, sigmas, require_condition_i: bool, threads: int):
    """For each sigma, all lambda assignments satisfying (ii) (and (i) when
    requested).  Yields (sigma, digit-tuple, dot-rows, circ-rows) in
    lexicographic (sigma, lambda) order."""
    n = G.order
    endos, endo_imgs, comp = _endo_tables(G)
    E = len(endos)
    total = E ** n
    add_np = np.array(G.table, dtype=np.int64)
    sig_col = np.arange(n)[None, :, None]

    def scan(sigma):
        sig = np.array(sigma, dtype=np.int64)
        a2 = add_np[sig]  # a2[a, x] = sigma(a) + x
        hits = []
        for start in range(0, total, _BATCH):
            count = min(_BATCH, total - start)
            ks = np.arange(start, start + count)
            powers = E ** np.arange(n - 1, -1, -1, dtype=np.int64)
            digits = (ks[:, None] // powers[None, :]) % E
            # necessary prefilter: lam_{sigma(a)} = lam_a . lam_0
            keep = (digits[:, sig] == comp[digits, digits[:, :1]]).all(axis=1)
            digits = digits[keep]
            if not len(digits):
                continue
            m = endo_imgs[digits]  # m[k, a, b] = lam_a(b)
            t = a2[sig_col, m]  # t[k, a, b] = sigma(a) + lam_a(b)
            b = len(digits)
            left = np.take_along_axis(digits, t.reshape(b, -1), axis=1).reshape(b, n, n)
            right = comp[digits[:, :, None], digits[:, None, :]]
            keep2 = (left == right).all(axis=(1, 2))
            if require_condition_i:
                msig = m[:, :, sig]
                keep2 &= (sig[t] == a2[sig_col, msig]).all(axis=(1, 2))
            for k in np.flatnonzero(keep2):
                hits.append(
                    (
                        tuple(int(x) for x in digits[k]),
                        tuple(tuple(int(x) for x in row) for row in m[k]),
                        tuple(tuple(int(x) for x in row) for row in t[k]),
                    )
                )
        return hits

    if threads > 1 and len(sigmas) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            all_hits = list(pool.map(scan, sigmas))
    else:
        all_hits = [scan(s) for s in sigmas]
    for sigma, hits in zip(sigmas, all_hits):
        for digit_tuple, dot_rows, circ_rows in hits:
            yield sigma, digit_tuple, dot_rows, circ_rows


def _budget_or_raise(kind: str, G: FiniteGroup, sigma_count: int, lam_count: int,
                     cap: int, budget: int) -> int:
    n = G.order
    candidates = sigma_count * lam_count
    if n > cap:
        if n > GUARDED_ORDER_CAP:
            raise CarrierTooLarge(
                f"{kind} search on order {n} exceeds the cap {cap} "
                f"(hard guard at {GUARDED_ORDER_CAP})"
            )
        if candidates > budget:
            raise CarrierTooLarge(
                f"{kind} search on {G.name} needs {candidates} candidates, "
                f"over the guard budget {budget}"
            )
    return candidates


def enumerate_skew_trusses(
    G: FiniteGroup,
    cap: int = ORDER_CAP_DEFAULT,
    budget: int = CANDIDATE_BUDGET,
    threads: int | None = None,
) -> ClassificationResult:
    """All skew trusses on G: pairs (circ, sigma) with circ associative and
    left skew sigma-distributive.

    The sigma axis ranges over ALL self-maps.  Idempotency of sigma is not a
    consequence of the axioms (shifted group operations a o b = a + u + b
    with sigma(a) = a + u are associative and skew distributive with a
    non-idempotent sigma whenever u != 0); it only follows when sigma fixes
    0, so pruning by it would lose structures.  Every emitted object is
    re-verified against the raw axioms."""
    n = G.order
    sigmas = all_self_maps(n)
    endos = enumerate_endomorphisms(G)
    candidates = _budget_or_raise(
        SKEW_TRUSS, G, len(sigmas), len(endos) ** n, cap, budget
    )
    start = time.perf_counter()
    structures = []
    for sigma, _digits, _dot, circ_rows in _lambda_search(
        G, sigmas, require_condition_i=True, threads=worker_count(threads)
    ):
        structures.append(verify(make_algebra(G, SKEW_TRUSS, sigma=sigma, circ=circ_rows)))
    stats = {
        "candidates": candidates,
        "seconds": time.perf_counter() - start,
        "sigma_fixes_zero_count": sum(1 for o in structures if o.sigma[0] == 0),
    }
    return _classify(G, SKEW_TRUSS, structures, stats)


def enumerate_weak_trusses(
    G: FiniteGroup,
    cap: int = ORDER_CAP_DEFAULT,
    budget: int = CANDIDATE_BUDGET,
    threads: int | None = None,
    sigma_mode: str = "all",
) -> ClassificationResult:
    """All weak trusses on G: pairs (dot, sigma) with dot left distributive
    and left weakly sigma-associative.  sigma carries no idempotency
    constraint here; ``sigma_mode="idempotent-endomorphisms"`` restricts the
    sigma axis to idempotent endomorphisms."""
    n = G.order
    if sigma_mode == "all":
        sigmas = all_self_maps(n)
    elif sigma_mode == "idempotent-endomorphisms":
        sigmas = [
            e.images for e in enumerate_endomorphisms(G) if is_idempotent_map(e)
        ]
    else:
        raise InputError(f"unknown sigma_mode {sigma_mode!r}")
    endos = enumerate_endomorphisms(G)
    candidates = _budget_or_raise(
        WEAK_TRUSS, G, len(sigmas), len(endos) ** n, cap, budget
    )
    start = time.perf_counter()
    structures = []
    for sigma, _digits, dot_rows, _circ in _lambda_search(
        G, sigmas, require_condition_i=False, threads=worker_count(threads)
    ):
        structures.append(verify(make_algebra(G, WEAK_TRUSS, sigma=sigma, dot=dot_rows)))
    stats = {"candidates": candidates, "seconds": time.perf_counter() - start}
    return _classify(G, WEAK_TRUSS, structures, stats)


def enumerate_interchange(
    G: FiniteGroup, associative_only: bool = False
) -> ClassificationResult:
    """All interchange near-rings on G, as image-commuting endomorphism
    pairs (eps, eta) with circ = eps-pi1 + eta-pi2; the associative ones are
    the commuting idempotent pairs.  On carriers of size <= 3 the count is
    cross-checked against the raw table scan."""
    endos = enumerate_endomorphisms(G)
    start = time.perf_counter()
    structures = []
    for eps in endos:
        for eta in endos:
            if not image_commuting(G, eps, eta):
                continue
            if associative_only and not (
                is_idempotent_map(eps)
                and is_idempotent_map(eta)
                and compose_commute(eps, eta)
            ):
                continue
            circ = op_add(make_sigma_pi1(G, eps), make_tau_pi2(G, eta))
            obj = verify(make_algebra(G, INTERCHANGE, circ=circ))
            if associative_only and not is_associative(obj.circ).holds:
                raise TrussLabError("idempotent commuting pair lost associativity")
            structures.append(obj)
    stats = {
        "candidates": len(endos) ** 2,
        "seconds": time.perf_counter() - start,
    }
    if G.order <= ORACLE_ORDER_CAP:
        oracle = raw_interchange_search(G, associative_only=associative_only)
        stats["oracle_count"] = oracle.count
        if oracle.count != len(structures):
            raise TrussLabError(
                f"interchange oracle disagrees on {G.name}: "
                f"{oracle.count} != {len(structures)}"
            )
    return _classify(G, INTERCHANGE, structures, stats)


def enumerate_constant_lambda_ditrusses(
    G: FiniteGroup, image_commuting_only: bool = False
) -> ClassificationResult:
    """Ditrusses (sigma, sigma-pi1 + tau-pi2, tau-pi2) over commuting
    idempotent endomorphism pairs (sigma, tau); the image-commuting filter
    cuts the family down to the one matching associative interchange
    near-rings."""
    endos = [e for e in enumerate_endomorphisms(G) if is_idempotent_map(e)]
    start = time.perf_counter()
    structures = []
    for sig in endos:
        for tau in endos:
            if not compose_commute(sig, tau):
                continue
            if image_commuting_only and not image_commuting(G, sig, tau):
                continue
            circ = op_add(make_sigma_pi1(G, sig), make_tau_pi2(G, tau))
            structures.append(
                verify(
                    make_algebra(
                        G, DITRUSS, sigma=sig.images, circ=circ, dot=make_tau_pi2(G, tau)
                    )
                )
            )
    stats = {"candidates": len(endos) ** 2, "seconds": time.perf_counter() - start}
    return _classify(G, DITRUSS, structures, stats)


def _classify(G, kind, structures, stats) -> ClassificationResult:
    structures.sort(key=lambda o: o.structure_key())
    reps: dict[tuple, AlgebraObject] = {}
    for obj in structures:
        canon = canonical_form(obj)
        reps.setdefault(canon.structure_key(), canon)
    return ClassificationResult(
        group_name=G.name,
        kind=kind,
        total_count=len(structures),
        iso_class_count=len(reps),
        representatives=[reps[k] for k in sorted(reps)],
        search_stats=stats,
        structures=structures,
    )


# ---------------------------------------------------------------------------
# isomorphism and canonical forms

_AUT_CACHE: dict[tuple, list[EndoMap]] = {}


def _automorphisms(G: FiniteGroup) -> list[EndoMap]:
    auts = _AUT_CACHE.get(G.table)
    if auts is None:
        auts = automorphisms(G)
        _AUT_CACHE[G.table] = auts
    return auts


def relabel_structure(obj: AlgebraObject, perm) -> AlgebraObject:
    """Push the structure forward along a carrier bijection h: components
    become h . f . h^-1.  When h is an automorphism the carrier group table
    is unchanged and the result lives on the same group."""
    h = tuple(perm)
    n = obj.group.order
    hinv = [0] * n
    for a, v in enumerate(h):
        hinv[v] = a
    t = obj.group.table
    new_add = [[h[t[hinv[x]][hinv[y]]] for y in range(n)] for x in range(n)]
    if tuple(tuple(r) for r in new_add) == obj.group.table:
        group = obj.group
    else:
        group = validate_group(new_add, name=obj.group.name)

    def push_op(op):
        if op is None:
            return None
        s = op.table
        return tuple(
            tuple(h[s[hinv[x]][hinv[y]]] for y in range(n)) for x in range(n)
        )

    sigma = None
    if obj.sigma is not None:
        sigma = tuple(h[obj.sigma[hinv[x]]] for x in range(n))
    return verify(
        make_algebra(group, obj.kind, sigma=sigma, circ=push_op(obj.circ), dot=push_op(obj.dot))
    )


def canonical_key(obj: AlgebraObject) -> tuple:
    """Lexicographically least serialization over the automorphism orbit."""
    best = None
    for aut in _automorphisms(obj.group):
        key = relabel_structure(obj, aut.images).structure_key()
        if best is None or key < best:
            best = key
    return (obj.kind,) + best


def canonical_form(obj: AlgebraObject) -> AlgebraObject:
    best = None
    best_obj = None
    for aut in _automorphisms(obj.group):
        cand = relabel_structure(obj, aut.images)
        key = cand.structure_key()
        if best is None or key < best:
            best, best_obj = key, cand
    return best_obj


def are_isomorphic(a: AlgebraObject, b: AlgebraObject) -> bool:
    if a.group.table != b.group.table:
        raise GroupMismatch("isomorphism test requires the same carrier group")
    if a.kind != b.kind:
        raise InputError(f"cannot compare kinds {a.kind} and {b.kind}")
    return canonical_key(a) == canonical_key(b)


# ---------------------------------------------------------------------------
# raw-axiom oracles (carriers of size <= 3)

@dataclass(frozen=True)
class OracleResult:
    count: int
    keys: tuple  # sorted serializations of everything found


def _require_tiny(G: FiniteGroup, what: str) -> None:
    if G.order > ORACLE_ORDER_CAP:
        raise CarrierTooLarge(
            f"raw {what} oracle only runs for order <= {ORACLE_ORDER_CAP}"
        )


def _all_tables(n: int) -> np.ndarray:
    count = n ** (n * n)
    ks = np.arange(count, dtype=np.int64)
    powers = n ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    return ((ks[:, None] // powers[None, :]) % n).reshape(count, n, n)


def _assoc_mask(tables: np.ndarray) -> np.ndarray:
    k, n, _ = tables.shape
    flat = tables.reshape(k, n * n)
    idx_left = (tables.reshape(k, n * n, 1) * n + np.arange(n)).reshape(k, -1)
    left = np.take_along_axis(flat, idx_left, axis=1)
    idx_right = (np.arange(n).reshape(1, n, 1, 1) * n + tables.reshape(k, 1, n, n)).reshape(k, -1)
    right = np.take_along_axis(flat, idx_right, axis=1)
    return (left == right).all(axis=1)


def raw_skew_truss_search(G: FiniteGroup) -> OracleResult:
    """Scan every (circ table, sigma map) pair against associativity and the
    skew distributivity axiom, no structure theory involved."""
    _require_tiny(G, "skew truss")
    n = G.order
    add = np.array(G.table, dtype=np.int64)
    inv = np.array(G.inverse, dtype=np.int64)
    tables = _all_tables(n)
    k = len(tables)
    flat = tables.reshape(k, n * n)
    assoc = _assoc_mask(tables)

    # lhs[k,a,b,c] = circ[a, b+c]; shared across sigma
    idx = (np.arange(n).reshape(n, 1, 1) * n + add[None, :, :]).reshape(1, -1)
    lhs = np.take_along_axis(flat, np.broadcast_to(idx, (k, idx.shape[1])), axis=1)
    lhs = lhs.reshape(k, n, n, n)

    keys = []
    for sigma in itertools.product(range(n), repeat=n):
        neg = inv[np.array(sigma)]
        head = add[tables, neg[None, :, None]]  # circ[a,b] - sigma(a)
        rhs = add[head[:, :, :, None], tables[:, :, None, :]]
        good = assoc & (lhs == rhs).all(axis=(1, 2, 3))
        for i in np.flatnonzero(good):
            keys.append((sigma, tuple(int(x) for x in flat[i])))
    keys.sort()
    return OracleResult(count=len(keys), keys=tuple(keys))


def raw_weak_truss_search(G: FiniteGroup) -> OracleResult:
    """Scan every (dot table, sigma map) pair against left distributivity
    and weak sigma-associativity."""
    _require_tiny(G, "weak truss")
    n = G.order
    add = np.array(G.table, dtype=np.int64)
    tables = _all_tables(n)
    k = len(tables)
    flat = tables.reshape(k, n * n)

    idx = (np.arange(n).reshape(n, 1, 1) * n + add[None, :, :]).reshape(1, -1)
    dist_lhs = np.take_along_axis(flat, np.broadcast_to(idx, (k, idx.shape[1])), axis=1)
    dist_lhs = dist_lhs.reshape(k, n, n, n)
    dist_rhs = add[tables[:, :, :, None], tables[:, :, None, :]]
    distributive = (dist_lhs == dist_rhs).all(axis=(1, 2, 3))

    # rhs[k,a,b,c] = dot[a, dot[b,c]]; shared across sigma
    idx_r = (np.arange(n).reshape(1, n, 1, 1) * n + tables.reshape(k, 1, n, n)).reshape(k, -1)
    weak_rhs = np.take_along_axis(flat, idx_r, axis=1).reshape(k, n, n, n)

    keys = []
    for sigma in itertools.product(range(n), repeat=n):
        sig = np.array(sigma)
        e = add[sig[None, :, None], tables]  # sigma(a) + a.b
        idx_l = (e.reshape(k, n * n, 1) * n + np.arange(n)).reshape(k, -1)
        weak_lhs = np.take_along_axis(flat, idx_l, axis=1).reshape(k, n, n, n)
        good = distributive & (weak_lhs == weak_rhs).all(axis=(1, 2, 3))
        for i in np.flatnonzero(good):
            keys.append((sigma, tuple(int(x) for x in flat[i])))
    keys.sort()
    return OracleResult(count=len(keys), keys=tuple(keys))


def raw_interchange_search(G: FiniteGroup, associative_only: bool = False) -> OracleResult:
    """Scan every table against (w+x)o(y+z) = (woy)+(xoz)."""
    _require_tiny(G, "interchange")
    n = G.order
    add = np.array(G.table, dtype=np.int64)
    tables = _all_tables(n)
    k = len(tables)
    flat = tables.reshape(k, n * n)
    idx = (add[:, :, None, None] * n + add[None, None, :, :]).reshape(1, -1)
    lhs = np.take_along_axis(flat, np.broadcast_to(idx, (k, idx.shape[1])), axis=1)
    lhs = lhs.reshape(k, n, n, n, n)
    rhs = add[tables[:, :, None, :, None], tables[:, None, :, None, :]]
    good = (lhs == rhs).all(axis=(1, 2, 3, 4))
    if associative_only:
        good &= _assoc_mask(tables)
    keys = sorted(tuple(int(x) for x in flat[i]) for i in np.flatnonzero(good))
    return OracleResult(count=len(keys), keys=tuple(keys))


def raw_constant_lambda_ditruss_search(
    G: FiniteGroup, image_commuting_only: bool = False
) -> OracleResult:
    """Scan (sigma map, circ table) pairs for: sigma an idempotent
    endomorphism, derived dot = -sigma-pi1 + circ row-constant, circ
    associative, the row map an idempotent endomorphism, optionally
    image-commuting with sigma."""
    _require_tiny(G, "constant-lambda ditruss")
    n = G.order
    add = np.array(G.table, dtype=np.int64)
    inv = np.array(G.inverse, dtype=np.int64)
    tables = _all_tables(n)
    assoc = _assoc_mask(tables)
    endo_imgs = {
        e.images for e in enumerate_endomorphisms(G) if is_idempotent_map(e)
    }

    keys = []
    for sigma in itertools.product(range(n), repeat=n):
        if tuple(sigma) not in endo_imgs:
            continue
        neg = inv[np.array(sigma)]
        dot = add[neg[None, :, None], tables]  # -sigma(a) + circ[a,b]
        constant = (dot == dot[:, :1, :]).all(axis=(1, 2))
        good = assoc & constant
        for i in np.flatnonzero(good):
            tau = tuple(int(x) for x in dot[i, 0])
            if tau not in endo_imgs:
                continue
            if image_commuting_only and not image_commuting(G, sigma, tau):
                continue
            keys.append((tuple(sigma), tuple(int(x) for x in tables[i].reshape(-1))))
    keys.sort()
    return OracleResult(count=len(keys), keys=tuple(keys))


# ---------------------------------------------------------------------------
# serialization helpers shared with the parametrized side

def skew_truss_key(obj: AlgebraObject) -> tuple:
    return (obj.sigma, tuple(x for row in obj.circ.table for x in row))


def weak_truss_key(obj: AlgebraObject) -> tuple:
    return (obj.sigma, tuple(x for row in obj.dot.table for x in row))


def interchange_key(obj: AlgebraObject) -> tuple:
    return tuple(x for row in obj.circ.table for x in row)


def constant_lambda_ditruss_key(obj: AlgebraObject) -> tuple:
    return (obj.sigma, tuple(x for row in obj.circ.table for x in row))
