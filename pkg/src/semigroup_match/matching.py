"""Permutation and involution matchings of a semigroup onto its inverses.

A permutation matching is a bijection f of S with f(a) always an inverse of
a; an involution matching additionally satisfies f(f(a)) = a.  Existence of
a permutation matching is exactly Hall's condition for the sets V(a), which
this module decides two independent ways: maximum bipartite matching with a
violating-set certificate, and (for orthodox input) a structural test on the
maximal rectangular blocks of each D-class, which also yields an involution
matching when it succeeds.
"""

from __future__ import annotations

import itertools
import sys
import time
from collections import deque
from dataclasses import dataclass

from .errors import CapExceededError, LiftFailureError, NotOrthodoxError, TooLargeError
from .factors import (
    PrincipalFactor,
    ZeroRectBand,
    h_quotient_band,
    maximal_rect_subbands,
    principal_factors,
    similarity_check,
)
from .green import omega_data
from .structure import classify, gamma_structure, inverse_sets, orthodoxy_witness
from .table import MulTable

DEFAULT_INVOLUTION_CAP = 200
DEFAULT_BRUTE_CAP = 20

_INF = float("inf")


@dataclass(frozen=True)
class Matching:
    """A matching f of the semigroup onto inverses, as a tuple f[a] in V(a)."""

    f: tuple
    kind: str
    provenance: str

    def is_involution_map(self) -> bool:
        return all(self.f[b] == a for a, b in enumerate(self.f))


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    reason: str | None
    element: int | None


def verify_matching(table: MulTable, f, require_involution: bool = False) -> VerifyResult:
    """Check that f is a permutation of S with f(a) in V(a) for every a.

    With require_involution also demand f(f(a)) = a.  Conditions are checked
    in that order, each over elements ascending, and the first violation is
    reported.
    """
    n = table.n
    f = tuple(int(x) for x in f)
    if len(f) != n:
        return VerifyResult(False, "wrong length", None)
    for a in range(n):
        if not 0 <= f[a] < n:
            return VerifyResult(False, "image out of range", a)
    seen = [False] * n
    for a in range(n):
        if seen[f[a]]:
            return VerifyResult(False, "not injective", a)
        seen[f[a]] = True
    v = inverse_sets(table)
    for a in range(n):
        if f[a] not in v[a]:
            return VerifyResult(False, "image not an inverse", a)
    if require_involution:
        for a in range(n):
            if f[f[a]] != a:
                return VerifyResult(False, "not an involution", a)
    return VerifyResult(True, None, None)


@dataclass(frozen=True)
class HallCertificate:
    """A set A with |V(A)| < |A|, witnessing that no permutation matching exists."""

    violating_set: tuple
    image: tuple


def _adjacency(table: MulTable) -> list:
    v = inverse_sets(table)
    return [tuple(sorted(v[a])) for a in range(table.n)]


def _hk_bfs(n, adj, match_l, match_r, dist):
    """Layer the lefts by alternating distance; return the free-right layer depth."""
    q = deque()
    for a in range(n):
        if match_l[a] == -1:
            dist[a] = 0
            q.append(a)
        else:
            dist[a] = _INF
    free_dist = _INF
    while q:
        a = q.popleft()
        if dist[a] + 1 >= free_dist:
            continue
        for b in adj[a]:
            c = match_r[b]
            if c == -1:
                if free_dist == _INF:
                    free_dist = dist[a] + 1
            elif dist[c] == _INF:
                dist[c] = dist[a] + 1
                q.append(c)
    return free_dist


def _hk_augment(a0, adj, dist, match_l, match_r, free_dist):
    """Augment along one shortest alternating path from the free left a0.

    Explicit-stack depth-first search; each frame holds a left vertex and
    the index of the next edge to try.
    """
    stack = [[a0, 0]]
    while stack:
        a, i = stack[-1]
        if i < len(adj[a]):
            stack[-1][1] += 1
            b = adj[a][i]
            c = match_r[b]
            if c == -1:
                if dist[a] + 1 != free_dist:
                    continue
                match_l[a] = b
                match_r[b] = a
                stack.pop()
                while stack:
                    pa, pi = stack.pop()
                    pb = adj[pa][pi - 1]
                    match_l[pa] = pb
                    match_r[pb] = pa
                return True
            if dist[c] == dist[a] + 1:
                stack.append([c, 0])
        else:
            dist[a] = _INF
            stack.pop()
    return False


def _hall_certificate(n, adj, match_l, match_r) -> HallCertificate:
    """Read the violating set off a maximum matching that is not perfect.

    Alternating reachability from the free lefts: every edge out of a
    reached left leads to a reached right, so the reached lefts A satisfy
    V(A) = reached rights and |A| exceeds |V(A)| by the number of free
    lefts.
    """
    reached_l = [False] * n
    reached_r = [False] * n
    q = deque()
    for a in range(n):
        if match_l[a] == -1:
            reached_l[a] = True
            q.append(a)
    while q:
        a = q.popleft()
        for b in adj[a]:
            if b == match_l[a] or reached_r[b]:
                continue
            reached_r[b] = True
            c = match_r[b]
            if c == -1:
                raise RuntimeError("free right reachable from a free left after maximum matching")
            if not reached_l[c]:
                reached_l[c] = True
                q.append(c)
    violating = tuple(a for a in range(n) if reached_l[a])
    image = tuple(b for b in range(n) if reached_r[b])
    if len(violating) <= len(image):
        raise RuntimeError("certificate set does not violate Hall's condition")
    if set(image) != {b for a in violating for b in adj[a]}:
        raise RuntimeError("certificate image differs from the inverse union")
    return HallCertificate(violating_set=violating, image=image)


def find_permutation_matching(table: MulTable):
    """Maximum bipartite matching between elements and their inverse sets.

    Returns a Matching when Hall's condition holds, otherwise a
    HallCertificate exhibiting a set with too few inverses.  An element with
    no inverse at all short-circuits to a singleton certificate.
    """
    n = table.n
    adj = _adjacency(table)
    for a in range(n):
        if not adj[a]:
            return HallCertificate(violating_set=(a,), image=())
    match_l = [-1] * n
    match_r = [-1] * n
    dist = [_INF] * n
    while True:
        free_dist = _hk_bfs(n, adj, match_l, match_r, dist)
        if free_dist == _INF:
            break
        for a in range(n):
            if match_l[a] == -1:
                _hk_augment(a, adj, dist, match_l, match_r, free_dist)
    if all(b != -1 for b in match_l):
        return Matching(f=tuple(match_l), kind="permutation", provenance="hall_bipartite")
    return _hall_certificate(n, adj, match_l, match_r)


@dataclass(frozen=True)
class HallBruteResult:
    holds: bool
    witness: tuple | None


def hall_brute_force(table: MulTable, max_size: int = DEFAULT_BRUTE_CAP) -> HallBruteResult:
    """Check |V(A)| >= |A| over every subset A directly.

    Subsets are enumerated by size and then lexicographically, so a failure
    reports a violating set of minimum size (earliest such set).  Exponential;
    refuses tables above max_size.
    """
    n = table.n
    if n > max_size:
        raise TooLargeError(f"subset enumeration over {n} elements exceeds the cap of {max_size}")
    v = inverse_sets(table)
    masks = [0] * n
    for a in range(n):
        for b in v[a]:
            masks[a] |= 1 << b
    for k in range(1, n + 1):
        for combo in itertools.combinations(range(n), k):
            union = 0
            for a in combo:
                union |= masks[a]
            if union.bit_count() < k:
                return HallBruteResult(holds=False, witness=combo)
    return HallBruteResult(holds=True, witness=None)


@dataclass(frozen=True)
class ClassSizeMismatch:
    """A V-class whose size differs from that of its class of inverses."""

    gamma_members: tuple
    inverse_members: tuple


def _require_orthodox(table: MulTable):
    v = inverse_sets(table)
    for a in range(table.n):
        if not v[a]:
            raise NotOrthodoxError(a, f"not orthodox: element {a} has no inverse")
    pair = orthodoxy_witness(table)
    if pair is not None:
        e, f = pair
        raise NotOrthodoxError(
            pair, f"not orthodox: product of idempotents {e} and {f} is not idempotent"
        )


def orthodox_involution(table: MulTable):
    """Involution matching of an orthodox semigroup from its V-class pairing.

    In an orthodox semigroup the inverse sets partition S, and taking
    inverses induces an involution on the classes.  A matching exists
    exactly when each class has the size of its partner; the construction
    fixes the self-paired classes pointwise and pairs the others off in
    element order.  Returns ClassSizeMismatch on the first class (by id)
    whose partner has a different size.
    """
    _require_orthodox(table)
    gs = gamma_structure(table)
    if gs.v_involution is None:
        raise RuntimeError("orthodox inverse sets must induce a class involution")
    k = gs.gamma_classes()
    for c in range(k):
        d = gs.v_involution[c]
        if len(gs.class_list[c]) != len(gs.class_list[d]):
            return ClassSizeMismatch(
                gamma_members=gs.class_list[c], inverse_members=gs.class_list[d]
            )
    f = [-1] * table.n
    for c in range(k):
        d = gs.v_involution[c]
        if c == d:
            for a in gs.class_list[c]:
                f[a] = a
        elif c < d:
            for a, b in zip(gs.class_list[c], gs.class_list[d]):
                f[a] = b
                f[b] = a
    m = Matching(f=tuple(f), kind="involution", provenance="gamma_class_pairing")
    check = verify_matching(table, m.f, require_involution=True)
    if not check.ok:
        raise RuntimeError("V-class pairing failed to produce an involution matching")
    return m


@dataclass(frozen=True)
class DClassVerdict:
    """Block analysis of one D-class: factor, band quotient, decomposition."""

    d_class: int
    factor: PrincipalFactor
    band: ZeroRectBand
    decomposition: object
    similarity: object


@dataclass(frozen=True)
class OrthodoxDecision:
    exists: bool
    per_d_class: tuple
    matching: Matching | None


def lift_band_matching(factor: PrincipalFactor, band: ZeroRectBand, band_matching: Matching) -> Matching:
    """Pull a matching of the H-quotient band back up to the principal factor.

    Each element has exactly one inverse inside any compatible H-cell, so a
    cell-level matching lifts by sending every element to its unique inverse
    in the image cell.  The zero stays fixed.
    """
    bt = band.table()
    check = verify_matching(bt, band_matching.f)
    if not check.ok:
        raise LiftFailureError(f"band matching invalid: {check.reason}")
    if band_matching.f[band.zero] != band.zero:
        raise LiftFailureError("band matching must fix the zero")
    cell_members = {}
    for x in range(factor.zero):
        cell = band.h_map[factor.element_map[x]]
        cell_members.setdefault(cell, []).append(x)
    v = inverse_sets(factor.table)
    f = [-1] * (factor.zero + 1)
    f[factor.zero] = factor.zero
    for x in range(factor.zero):
        src = band.h_map[factor.element_map[x]]
        dst = band.coords(band_matching.f[band.pair_index(*src)])
        candidates = sorted(v[x] & set(cell_members[dst]))
        if len(candidates) != 1:
            raise LiftFailureError(
                f"element {x} has {len(candidates)} inverses in the image cell, need exactly 1"
            )
        f[x] = candidates[0]
    lifted = Matching(
        f=tuple(f),
        kind=band_matching.kind,
        provenance="band_lift",
    )
    check = verify_matching(factor.table, lifted.f)
    if not check.ok:
        raise LiftFailureError(f"lifted map is not a matching: {check.reason}")
    return lifted


def decide_orthodox_matching(table: MulTable) -> OrthodoxDecision:
    """Structural existence test for matchings of an orthodox semigroup.

    Works one D-class at a time: the principal factor collapses to a
    rectangular band with zero, whose idempotent cells split into maximal
    rectangular blocks.  A permutation matching of S exists exactly when,
    inside every D-class, the block shapes are pairwise proportional.  When
    they are, an involution matching is assembled by matching each band to
    itself and lifting through the factors.
    """
    _require_orthodox(table)
    verdicts = []
    for pf in principal_factors(table):
        band = h_quotient_band(pf)
        dec = maximal_rect_subbands(band)
        verdicts.append(
            DClassVerdict(
                d_class=pf.d_class,
                factor=pf,
                band=band,
                decomposition=dec,
                similarity=similarity_check(dec),
            )
        )
    exists = all(vd.similarity.pairwise_similar for vd in verdicts)
    if not exists:
        return OrthodoxDecision(exists=False, per_d_class=tuple(verdicts), matching=None)
    f = [-1] * table.n
    for vd in verdicts:
        band_matching = orthodox_involution(vd.band.table())
        if not isinstance(band_matching, Matching):
            raise RuntimeError("similar blocks must admit a band involution")
        lifted = lift_band_matching(vd.factor, vd.band, band_matching)
        for x in range(vd.factor.zero):
            f[vd.factor.element_map[x]] = vd.factor.element_map[lifted.f[x]]
    matching = Matching(f=tuple(f), kind="involution", provenance="band_lift")
    check = verify_matching(table, matching.f, require_involution=True)
    if not check.ok:
        raise RuntimeError("assembled band lift is not an involution matching")
    return OrthodoxDecision(exists=True, per_d_class=tuple(verdicts), matching=matching)


@dataclass(frozen=True)
class SearchExhausted:
    """Involution search ended without a matching.

    complete distinguishes a definitive no (the whole tree was explored)
    from a budget timeout.
    """

    complete: bool
    nodes: int


def find_involution_matching(table: MulTable, cap: int = DEFAULT_INVOLUTION_CAP,
                             budget_ms=None):
    """Backtracking search for an involution matching of any semigroup.

    An involution matching is a perfect matching of the graph joining
    mutually inverse elements, with fixed points allowed at a = a^3.
    Elements are processed in order of fewest inverses; assignments keep a
    live count of remaining candidates per element and backtrack as soon as
    one hits zero.
    """
    n = table.n
    if n > cap:
        raise CapExceededError(f"involution search over {n} elements exceeds the cap of {cap}")
    v = inverse_sets(table)
    if any(not v[a] for a in range(n)):
        return SearchExhausted(complete=True, nodes=0)
    deadline = None
    if budget_ms is not None:
        deadline = time.monotonic() + budget_ms / 1000.0
    order = sorted(range(n), key=lambda a: (len(v[a]), a))
    neighbors = [tuple(sorted(b for b in v[a] if b != a)) for a in range(n)]
    loop = [a in v[a] for a in range(n)]
    avail = [len(neighbors[a]) + (1 if loop[a] else 0) for a in range(n)]
    partner = [-1] * n
    state = {"nodes": 0, "timed_out": False}

    def mark(x):
        ok = True
        for y in neighbors[x]:
            avail[y] -= 1
            if partner[y] == -1 and avail[y] == 0:
                ok = False
        return ok

    def unmark(x):
        for y in neighbors[x]:
            avail[y] += 1

    def extend(pos):
        while pos < n and partner[order[pos]] != -1:
            pos += 1
        if pos == n:
            return True
        state["nodes"] += 1
        if deadline is not None and state["nodes"] % 256 == 1:
            if time.monotonic() > deadline:
                state["timed_out"] = True
                return False
        a = order[pos]
        if loop[a]:
            partner[a] = a
            if mark(a) and extend(pos + 1):
                return True
            unmark(a)
            partner[a] = -1
            if state["timed_out"]:
                return False
        for b in neighbors[a]:
            if partner[b] != -1:
                continue
            partner[a] = b
            partner[b] = a
            ok = mark(a)
            ok = mark(b) and ok
            if ok and extend(pos + 1):
                return True
            unmark(b)
            unmark(a)
            partner[a] = -1
            partner[b] = -1
            if state["timed_out"]:
                return False
        return False

    old_limit = sys.getrecursionlimit()
    needed = 3 * n + 200
    if needed > old_limit:
        sys.setrecursionlimit(needed)
    try:
        found = extend(0)
    finally:
        if needed > old_limit:
            sys.setrecursionlimit(old_limit)
    if found:
        return Matching(f=tuple(partner), kind="involution", provenance="brute_force_involution")
    return SearchExhausted(complete=not state["timed_out"], nodes=state["nodes"])


@dataclass(frozen=True)
class MatchingCount:
    count: int
    exact: bool


def count_permutation_matchings(table: MulTable, limit=None,
                                max_size: int = DEFAULT_BRUTE_CAP) -> MatchingCount:
    """Count permutation matchings by exhaustive assignment.

    Always branches on an element with fewest remaining images.  With a
    limit the count stops there and exact is False.
    """
    n = table.n
    if n > max_size:
        raise TooLargeError(f"matching count over {n} elements exceeds the cap of {max_size}")
    v = inverse_sets(table)
    masks = [0] * n
    for a in range(n):
        for b in v[a]:
            masks[a] |= 1 << b
    if any(m == 0 for m in masks):
        return MatchingCount(count=0, exact=True)
    state = {"count": 0, "capped": False}

    def rec(used, remaining):
        if state["capped"]:
            return
        if not remaining:
            state["count"] += 1
            if limit is not None and state["count"] >= limit:
                state["capped"] = True
            return
        best = min(remaining, key=lambda a: (masks[a] & ~used).bit_count())
        cand = masks[best] & ~used
        if cand == 0:
            return
        rest = [a for a in remaining if a != best]
        while cand:
            bit = cand & -cand
            rec(used | bit, rest)
            if state["capped"]:
                return
            cand ^= bit

    rec(0, list(range(n)))
    return MatchingCount(count=state["count"], exact=not state["capped"])


@dataclass(frozen=True)
class ClauseResult:
    """One two-sided test: a formula-defined map against a structural flag."""

    name: str
    left: bool
    right: bool
    witness: tuple | None

    @property
    def agree(self) -> bool:
        return self.left == self.right


@dataclass(frozen=True)
class CharacterizationReport:
    clauses: tuple

    def all_agree(self) -> bool:
        return all(c.agree for c in self.clauses)

    def clause(self, name: str) -> ClauseResult:
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)


def _map_matches(table: MulTable, f):
    check = verify_matching(table, f)
    if check.ok:
        return True, None
    return False, (check.element,) if check.element is not None else None


def _two_variable_check(table: MulTable, formula):
    """Evaluate f_y(x) = formula(x, y); demand y-independence plus a matching.

    Returns (ok, witness) where a y-dependence witness is the pair (x, y)
    whose value first differs from the y = 0 map.
    """
    n = table.n
    base = [formula(x, 0) for x in range(n)]
    for y in range(1, n):
        for x in range(n):
            if formula(x, y) != base[x]:
                return False, (x, y)
    return _map_matches(table, base)


def formula_characterizations(table: MulTable, k=None) -> CharacterizationReport:
    """Test the classical formula-defined matchings against structural flags.

    Each clause pairs a candidate map built from omega powers (left side)
    with an independently computed property of the semigroup (right side);
    the two sides are provably equivalent, so agree should always hold.
    Pass k to include the clause for the identity x = x^(k+2).
    """
    n = table.n
    prod = table.product
    flags = classify(table)
    om = [omega_data(table, a) for a in range(n)]
    omega = [d.omega for d in om]
    om1 = [d.omega_minus_one for d in om]
    v = inverse_sets(table)
    clauses = []

    left, witness = _map_matches(table, om1)
    clauses.append(ClauseResult("completely_regular", left, flags.completely_regular, witness))

    left, witness = _two_variable_check(
        table, lambda x, y: int(prod[om1[x], omega[int(prod[int(prod[x, y]), x])]])
    )
    clauses.append(ClauseResult("completely_simple", left, flags.completely_simple, witness))

    left, witness = _two_variable_check(
        table, lambda x, y: int(prod[int(prod[omega[y], om1[x]]), omega[y]])
    )
    clauses.append(ClauseResult("group", left, flags.group, witness))

    if k is not None:
        if k < 1:
            raise ValueError("power identity needs k >= 1")
        powers = [table.power(x, k) for x in range(n)]
        left, witness = _map_matches(table, powers)
        right = all(table.power(x, k + 2) == x for x in range(n))
        clauses.append(ClauseResult(f"power_identity_k{k}", left, right, witness))

    witness = None
    left = True
    for a in range(n):
        if len(v[a]) != n:
            left = False
            witness = (a,)
            break
    clauses.append(ClauseResult("rectangular_band", left, flags.rectangular_band, witness))

    witness = None
    left = True
    for a in range(n):
        if a not in v[a]:
            left = False
            witness = (a,)
            break
    clauses.append(ClauseResult("self_inverse", left, flags.self_inverse, witness))

    return CharacterizationReport(clauses=tuple(clauses))
