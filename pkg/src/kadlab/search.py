"""Exhaustive search for small algebras satisfying an axiom profile.

Tables are enumerated by backtracking with the zero element first and the
unit last in the carrier order; for profiles with (derivable) additive
idempotence the enumeration fixes the additive order to be compatible with
the carrier order, with the unit as additive top.  Partial tables are
pruned against every axiom instance whose lookups are already defined, and
full candidates are re-validated with ``check_axioms``.  Duplicate models
that differ only by a relabelling of the middle elements are suppressed by
keeping the lexicographically least representative.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Iterator, Optional

from .algebra import (FiniteAlgebra, Profile, check_axioms, check_phi,
                      required_ops)
from .errors import BoundError, ModelError

__all__ = ["find_models", "CONSTRAINTS"]

CONSTRAINTS = ("phi-fails", "phi-holds")

# additive idempotence is an axiom of these profiles or derivable in them
_IDEMPOTENT = frozenset({
    Profile.DIOID, Profile.KLEENE, Profile.TS, Profile.KAT,
    Profile.AS, Profile.KAD, Profile.ARS, Profile.KA_DR,
})

_PHI_CAPABLE = frozenset({
    Profile.TS, Profile.KAT, Profile.AS, Profile.NEAR_AS,
    Profile.KAD, Profile.KA_DR,
})

_MIDDLE_NAMES = "abcdefgh"


def _carrier_names(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("0",)
    return ("0",) + tuple(_MIDDLE_NAMES[: n - 2]) + ("1",)


def find_models(size: int, profile, constraint: Optional[str] = None,
                *, bound: int = 4, limit: Optional[int] = None
                ) -> Iterator[FiniteAlgebra]:
    """Yield models of the profile on a carrier of the given size.

    ``constraint`` may be ``"phi-fails"`` or ``"phi-holds"`` to keep only
    models refuting/satisfying the mid-assertion sentence; it requires a
    profile that provides tests.  Enumeration order is deterministic.
    """
    if isinstance(profile, str):
        profile = Profile.parse(profile)
    if size < 1:
        raise BoundError("carrier size must be positive")
    if size > bound:
        raise BoundError(f"size {size} exceeds the search bound {bound}")
    if constraint is not None and constraint not in CONSTRAINTS:
        raise ModelError(f"unknown constraint {constraint!r} "
                         f"(one of {', '.join(CONSTRAINTS)})")
    if constraint is not None and profile not in _PHI_CAPABLE:
        raise ModelError(
            f"constraint {constraint} needs a profile with tests "
            f"(ts/kat) or an antidomain (as/near-as/kad/kadr)")

    found = 0
    for model in _enumerate_models(size, profile):
        report = check_axioms(model, profile)
        if not report.passed:
            continue
        if constraint is not None:
            holds = check_phi(model).holds
            if constraint == "phi-fails" and holds:
                continue
            if constraint == "phi-holds" and not holds:
                continue
        found += 1
        model.name = f"search-{profile.value}-{size}-{found}"
        yield model
        if limit is not None and found >= limit:
            return


# ---------------------------------------------------------------------------
# enumeration

def _enumerate_models(n: int, profile: Profile) -> Iterator[FiniteAlgebra]:
    names = _carrier_names(n)
    idem = profile in _IDEMPOTENT
    ops = required_ops(profile)
    near = profile is Profile.NEAR_AS
    left_distrib = not near
    for plus in _plus_tables(n, idem):
        for times in _times_tables(n, plus, left_distrib=left_distrib,
                                   right_annihilate=not near):
            for star in (_star_tables(n, plus, times)
                         if "star" in ops else (None,)):
                for adom in (_adom_tables(n, plus, times)
                             if "adom" in ops else (None,)):
                    for aran in (_aran_tables(n, plus, times)
                                 if "aran" in ops else (None,)):
                        yield from _with_tests(
                            n, names, profile, idem,
                            plus, times, star, adom, aran,
                            want_tests="tests" in ops)


def _with_tests(n, names, profile, idem, plus, times, star, adom, aran,
                want_tests):
    if want_tests:
        choices = _test_choices(n, plus, times)
    else:
        choices = ((None, None),)
    for tests_i, comp_i in choices:
        if not _canonical(n, idem, plus, times, star, adom, aran,
                          tests_i, comp_i):
            continue
        kwargs = {}
        if tests_i is not None:
            kwargs["tests"] = [names[t] for t in tests_i]
            kwargs["complement"] = {names[k]: names[v]
                                    for k, v in comp_i.items()}
        yield FiniteAlgebra(
            names, names[0], names[n - 1], plus, times,
            star=star, adom=adom, aran=aran, name="candidate", **kwargs)


def _plus_tables(n, idem):
    t = [[None] * n for _ in range(n)]
    for j in range(n):
        t[0][j] = j
        t[j][0] = j
    if idem:
        for i in range(n):
            t[i][i] = i
            t[i][n - 1] = n - 1
            t[n - 1][i] = n - 1
    free = [(i, j) for i in range(1, n) for j in range(i, n)
            if t[i][j] is None]

    def rec(k):
        if k == len(free):
            yield tuple(tuple(row) for row in t)
            return
        i, j = free[k]
        lo = max(i, j) if idem else 0
        for v in range(lo, n):
            t[i][j] = v
            t[j][i] = v
            if _assoc_ok(t, n):
                yield from rec(k + 1)
        t[i][j] = None
        t[j][i] = None

    yield from rec(0)


def _times_tables(n, plus, *, left_distrib, right_annihilate):
    one = n - 1
    t = [[None] * n for _ in range(n)]
    for j in range(n):
        t[one][j] = j
        t[j][one] = j
        t[0][j] = 0
        if right_annihilate:
            t[j][0] = 0
    t[0][0] = 0
    free = [(i, j) for i in range(n) for j in range(n) if t[i][j] is None]

    def ok():
        return (_assoc_ok(t, n)
                and _distrib_right_ok(plus, t, n)
                and (not left_distrib or _distrib_left_ok(plus, t, n)))

    def rec(k):
        if k == len(free):
            yield tuple(tuple(row) for row in t)
            return
        i, j = free[k]
        for v in range(n):
            t[i][j] = v
            if ok():
                yield from rec(k + 1)
        t[i][j] = None

    yield from rec(0)


def _assoc_ok(t, n):
    for a, b, c in product(range(n), repeat=3):
        ab = t[a][b]
        bc = t[b][c]
        if ab is None or bc is None:
            continue
        l, r = t[ab][c], t[a][bc]
        if l is not None and r is not None and l != r:
            return False
    return True


def _distrib_left_ok(plus, times, n):
    # x ; (y + z) = x;y + x;z
    for x, y, z in product(range(n), repeat=3):
        lhs = times[x][plus[y][z]]
        xy, xz = times[x][y], times[x][z]
        if lhs is None or xy is None or xz is None:
            continue
        if lhs != plus[xy][xz]:
            return False
    return True


def _distrib_right_ok(plus, times, n):
    # (x + y) ; z = x;z + y;z
    for x, y, z in product(range(n), repeat=3):
        lhs = times[plus[x][y]][z]
        xz, yz = times[x][z], times[y][z]
        if lhs is None or xz is None or yz is None:
            continue
        if lhs != plus[xz][yz]:
            return False
    return True


def _star_tables(n, plus, times):
    one = n - 1
    star = [None] * n

    def leq(i, j):
        return plus[i][j] == j

    def unfold_ok(x):
        s = star[x]
        return (plus[one][times[x][s]] == s
                and plus[one][times[s][x]] == s)

    def induction_ok():
        for x, y, z in product(range(n), repeat=3):
            if leq(plus[z][times[x][y]], y) and not leq(times[star[x]][z], y):
                return False
            if leq(plus[z][times[y][x]], y) and not leq(times[z][star[x]], y):
                return False
        return True

    def rec(k):
        if k == n:
            if induction_ok():
                yield tuple(star)
            return
        for v in range(n):
            star[k] = v
            if unfold_ok(k):
                yield from rec(k + 1)
        star[k] = None

    yield from rec(0)


def _adom_tables(n, plus, times):
    one = n - 1
    a = [None] * n

    def partial_ok(x):
        if times[a[x]][x] != 0:
            return False
        ax = a[x]
        if a[ax] is not None and plus[a[x]][a[ax]] != one:
            return False
        return True

    def locality_ok():
        d = [a[a[x]] for x in range(n)]
        for x, y in product(range(n), repeat=2):
            lhs = a[times[x][y]]
            rhs = a[times[x][d[y]]]
            if plus[lhs][rhs] != rhs:
                return False
        for x in range(n):
            if plus[a[x]][a[a[x]]] != one:
                return False
        return True

    def rec(k):
        if k == n:
            if locality_ok():
                yield tuple(a)
            return
        for v in range(n):
            a[k] = v
            if partial_ok(k):
                yield from rec(k + 1)
        a[k] = None

    yield from rec(0)


def _aran_tables(n, plus, times):
    one = n - 1
    r = [None] * n

    def partial_ok(x):
        if times[x][r[x]] != 0:
            return False
        rx = r[x]
        if r[rx] is not None and plus[r[x]][r[rx]] != one:
            return False
        return True

    def locality_ok():
        ran = [r[r[x]] for x in range(n)]
        for x, y in product(range(n), repeat=2):
            lhs = r[times[x][y]]
            rhs = r[times[ran[x]][y]]
            if plus[lhs][rhs] != rhs:
                return False
        for x in range(n):
            if plus[r[x]][r[r[x]]] != one:
                return False
        return True

    def rec(k):
        if k == n:
            if locality_ok():
                yield tuple(r)
            return
        for v in range(n):
            r[k] = v
            if partial_ok(k):
                yield from rec(k + 1)
        r[k] = None

    yield from rec(0)


def _test_choices(n, plus, times):
    """Test subsets (always containing zero and one) with valid complements."""
    one = n - 1
    middles = list(range(1, n - 1))
    for mask in range(1 << len(middles)):
        tests = [0] + [m for b, m in enumerate(middles) if mask >> b & 1]
        if one not in tests:
            tests.append(one)
        tests = tuple(sorted(set(tests)))
        mids = [t for t in tests if t not in (0, one)]
        for values in product(tests, repeat=len(mids)):
            comp = {0: one, one: 0}
            comp.update(zip(mids, values))
            if any(comp.get(comp[t]) != t for t in tests):
                continue
            if any(times[t][comp[t]] != 0 or plus[t][comp[t]] != one
                   for t in tests):
                continue
            yield tests, comp


# ---------------------------------------------------------------------------
# canonical representatives

def _canonical(n, idem, plus, times, star, adom, aran, tests_i, comp_i):
    middles = list(range(1, n - 1))
    if len(middles) < 2:
        return True
    mine = _model_key(n, plus, times, star, adom, aran, tests_i, comp_i)
    for perm in permutations(middles):
        if list(perm) == middles:
            continue
        pi = {0: 0, n - 1: n - 1}
        pi.update(zip(middles, perm))
        p2 = _permute_binary(plus, pi, n)
        if idem and not _order_compatible(p2, n):
            continue
        other = _model_key(
            n, p2, _permute_binary(times, pi, n),
            _permute_unary(star, pi, n), _permute_unary(adom, pi, n),
            _permute_unary(aran, pi, n),
            None if tests_i is None else tuple(sorted(pi[t] for t in tests_i)),
            None if comp_i is None else {pi[k]: pi[v] for k, v in comp_i.items()})
        if other < mine:
            return False
    return True


def _permute_binary(t, pi, n):
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[pi[i]][pi[j]] = pi[t[i][j]]
    return tuple(tuple(row) for row in out)


def _permute_unary(t, pi, n):
    if t is None:
        return None
    out = [None] * n
    for i in range(n):
        out[pi[i]] = pi[t[i]]
    return tuple(out)


def _order_compatible(plus, n):
    for i in range(n):
        for j in range(n):
            if plus[i][j] < max(i, j):
                return False
        if plus[i][n - 1] != n - 1:
            return False
    return True


def _model_key(n, plus, times, star, adom, aran, tests_i, comp_i):
    flat = [v for row in plus for v in row] + [v for row in times for v in row]
    for t in (star, adom, aran):
        flat += list(t) if t is not None else [-1]
    flat += list(tests_i) if tests_i is not None else [-1]
    if comp_i is not None:
        flat += [v for _, v in sorted(comp_i.items())]
    return tuple(flat)
