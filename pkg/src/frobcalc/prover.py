"""Bounded equational rewriting, independent of the diagram engine.

Terms are kept in a spine form: a composition chain of factors listed in
application order, where a factor is some number of lifts over a generator
or over a nested chain.  Associativity and identity laws are applied eagerly
by this flattening; every other law is an explicit bidirectional rule,
applicable at any position, at any lift depth, and inside nested factors.

``rewrite_search`` grows the rewrite neighbourhoods of both terms breadth
first until they meet; a hit yields a step-by-step trace, a miss is only
ever inconclusive.  ``enumerate_terms`` provides the deterministic corpus
used by the cross-validation suites: all chains of whiskered generators
with bounded generator count and bounded subscript-plus-depth, preceded by
the bare identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .terms import (
    Compose, Comult, Counit, Id, Lift, Mult, Unit,
    FrobTerm, TypeMismatchError, compose_chain, lift_n, term_to_str, type_of,
)

_GEN_CLS = {"eb": Counit, "ed": Unit, "db": Comult, "dd": Mult}
_GEN_TYPE = {
    "eb": lambda n: (n + 1, n),
    "ed": lambda n: (n, n + 1),
    "db": lambda n: (n + 1, n + 2),
    "dd": lambda n: (n + 2, n + 1),
}
_CLS_GEN = {Counit: "eb", Unit: "ed", Comult: "db", Mult: "dd"}


# --- canonical spine form -----------------------------------------------------
#
# factor: (depth, ("g", kind, n)) or (depth, ("c", factors)) with depth >= 1
# for nested chains, which always hold at least two factors.


def _norm_chain(factors) -> tuple:
    out = []
    for f in factors:
        if f is None:
            continue
        depth, core = f
        if depth == 0 and core[0] == "c":
            out.extend(_norm_chain(core[1]))
        else:
            out.append(f)
    return tuple(out)


def _mk_factor(depth: int, factors):
    factors = _norm_chain(factors)
    if not factors:
        return None
    if len(factors) == 1:
        d2, core2 = factors[0]
        return (depth + d2, core2)
    return (depth, ("c", factors))


def factor_type(f) -> tuple[int, int]:
    depth, core = f
    if core[0] == "g":
        src, tgt = _GEN_TYPE[core[1]](core[2])
    else:
        src, tgt = chain_type(core[1])
    return (src + depth, tgt + depth)


def chain_type(factors) -> tuple[int, int]:
    src, cur = factor_type(factors[0])
    for f in factors[1:]:
        fsrc, ftgt = factor_type(f)
        if fsrc != cur:
            raise TypeMismatchError(f"broken chain at {f!r}: {cur} != {fsrc}")
        cur = ftgt
    return (src, cur)


def canonical_key(t) -> tuple[int, tuple]:
    """Spine form of a term: source object plus factors in application order."""
    src, _ = type_of(t)
    return (src, _factors_of(t, 0))


def _factors_of(t, depth: int) -> tuple:
    if isinstance(t, Id):
        return ()
    if isinstance(t, Lift):
        return _factors_of(t.body, depth + 1)
    cls = type(t)
    if cls in _CLS_GEN:
        return ((depth, ("g", _CLS_GEN[cls], t.n)),)
    if isinstance(t, Compose):
        sub = _norm_chain(_factors_of(t.before, 0) + _factors_of(t.after, 0))
        if depth == 0:
            return sub
        f = _mk_factor(depth, sub)
        return () if f is None else (f,)
    raise TypeError(f"not a Frobenius term: {t!r}")


def factor_ast(f) -> FrobTerm:
    depth, core = f
    if core[0] == "g":
        base: FrobTerm = _GEN_CLS[core[1]](core[2])
    else:
        base = chain_ast(chain_type(core[1])[0], core[1])
    return lift_n(base, depth)


def chain_ast(src: int, factors) -> FrobTerm:
    if not factors:
        return Id(src)
    return compose_chain(factor_ast(f) for f in factors)


# --- rewrite rules -------------------------------------------------------------


def _strip(f, j):
    return (f[0] - j, f[1])


def _bump(f, j=1):
    return (f[0] + j, f[1])


def _gen(f, kind=None):
    """The (kind, n) of a depth-0 generator factor, else None."""
    depth, core = f
    if depth != 0 or core[0] != "g":
        return None
    if kind is not None and core[1] != kind:
        return None
    return core[1], core[2]


def _pair_rules(u, v):
    """Rewrites of the adjacent pair (u then v), as (name, replacement) items.

    Both factors are already stripped to a common whisker depth; replacements
    are re-whiskered by the caller.
    """
    out = []
    ug, vg = _gen(u), _gen(v)
    du, dv = u[0], v[0]

    # naturality of the four generators
    if ug and ug[0] == "eb":
        out.append(("counit-nat", (_bump(v), (0, ("g", "eb", factor_type(v)[1])))))
    if dv >= 1 and _gen(_strip(v, 1), "eb") if False else False:
        pass
    if vg and vg[0] == "eb" and du >= 1:
        f0 = _strip(u, 1)
        out.append(("counit-nat", ((0, ("g", "eb", factor_type(f0)[0])), f0)))
    if vg and vg[0] == "ed":
        out.append(("unit-nat", ((0, ("g", "ed", factor_type(u)[0])), _bump(u))))
    if ug and ug[0] == "ed" and dv >= 1:
        f0 = _strip(v, 1)
        out.append(("unit-nat", (f0, (0, ("g", "ed", factor_type(f0)[1])))))
    if ug and ug[0] == "db" and dv >= 2:
        f0 = _strip(v, 2)
        out.append(("comult-nat", (_strip(v, 1), (0, ("g", "db", factor_type(f0)[1])))))
    if vg and vg[0] == "db" and du >= 1:
        f0 = _strip(u, 1)
        out.append(("comult-nat", ((0, ("g", "db", factor_type(f0)[0])), _bump(u))))
    if vg and vg[0] == "dd" and du >= 2:
        f0 = _strip(u, 2)
        out.append(("mult-nat", ((0, ("g", "dd", factor_type(f0)[0])), _strip(u, 1))))
    if ug and ug[0] == "dd" and dv >= 1:
        f0 = _strip(v, 1)
        out.append(("mult-nat", (_bump(v), (0, ("g", "dd", factor_type(f0)[1])))))

    # comultiplication coassociativity and multiplication associativity
    if ug and ug[0] == "db":
        n = ug[1]
        if v == (1, ("g", "db", n)):
            out.append(("comult-coassoc", (u, (0, ("g", "db", n + 1)))))
        if v == (0, ("g", "db", n + 1)):
            out.append(("comult-coassoc", (u, (1, ("g", "db", n)))))
    if vg and vg[0] == "dd":
        n = vg[1]
        if u == (1, ("g", "dd", n)):
            out.append(("mult-assoc", ((0, ("g", "dd", n + 1)), v)))
        if u == (0, ("g", "dd", n + 1)):
            out.append(("mult-assoc", ((1, ("g", "dd", n)), v)))

    # counit/unit against comultiplication/multiplication: the four collapses
    if ug and ug[0] == "db":
        n = ug[1]
        if v == (0, ("g", "eb", n + 1)):
            out.append(("counit-comult", ()))
        if v == (1, ("g", "eb", n)):
            out.append(("lift-counit-comult", ()))
    if vg and vg[0] == "dd":
        n = vg[1]
        if u == (0, ("g", "ed", n + 1)):
            out.append(("mult-unit", ()))
        if u == (1, ("g", "ed", n)):
            out.append(("mult-lift-unit", ()))

    # the Frobenius exchange, in its three pairwise forms
    if ug and ug[0] == "db" and v == (1, ("g", "dd", ug[1] - 1)) and ug[1] >= 1:
        n = ug[1] - 1
        out.append(("frobenius", ((0, ("g", "dd", n)), (0, ("g", "db", n)))))
        out.append(("frobenius", ((1, ("g", "db", n)), (0, ("g", "dd", n + 1)))))
    if u == (1, ("g", "db", (vg or (None, -2))[1] - 1)) if False else False:
        pass
    if vg and vg[0] == "dd" and u == (1, ("g", "db", vg[1] - 1)) and vg[1] >= 1:
        n = vg[1] - 1
        out.append(("frobenius", ((0, ("g", "dd", n)), (0, ("g", "db", n)))))
        out.append(("frobenius", ((0, ("g", "db", n + 1)), (1, ("g", "dd", n)))))
    if ug and vg and ug[0] == "dd" and vg[0] == "db" and ug[1] == vg[1]:
        n = ug[1]
        out.append(("frobenius", ((0, ("g", "db", n + 1)), (1, ("g", "dd", n)))))
        out.append(("frobenius", ((1, ("g", "db", n)), (0, ("g", "dd", n + 1)))))

    return out


_EXPANSIONS = (
    # name, factory building the two inserted factors from (n, j)
    ("counit-comult", lambda n, j: ((j, ("g", "db", n)), (j, ("g", "eb", n + 1)))),
    ("mult-unit", lambda n, j: ((j, ("g", "ed", n + 1)), (j, ("g", "dd", n)))),
    ("lift-counit-comult", lambda n, j: ((j, ("g", "db", n)), (j + 1, ("g", "eb", n)))),
    ("mult-lift-unit", lambda n, j: ((j + 1, ("g", "ed", n)), (j, ("g", "dd", n)))),
)


def _bubble_pattern(n: int, k: int):
    pat = [("ed", n)]
    pat += [("db", n + i) for i in range(k)]
    pat += [("dd", n + k - 1 - i) for i in range(k)]
    pat.append(("eb", n))
    return pat


class RuleSet:
    """The rewrite rules active for one theory."""

    def __init__(self, theory: str = "frob"):
        self.with_bubble_shift = theory in ("frob-phi", "sep-matrix")
        self.with_separability = theory in ("frob-sep", "sep-matrix")

    def neighbours(self, key) -> list[tuple[tuple, str]]:
        src, factors = key
        results: list[tuple[tuple, str]] = []
        seen = set()

        def emit(new_factors, name):
            nk = (src, _norm_chain(new_factors))
            if nk not in seen:
                seen.add(nk)
                results.append((nk, name))

        n_factors = len(factors)

        # adjacent-pair rules at every common whisker depth
        for i in range(n_factors - 1):
            u, v = factors[i], factors[i + 1]
            for j in range(min(u[0], v[0]) + 1):
                su, sv = _strip(u, j), _strip(v, j)
                for name, repl in _pair_rules(su, sv):
                    lifted = tuple(_bump(r, j) for r in repl)
                    emit(factors[:i] + lifted + factors[i + 2:], name)

        # separability contraction
        if self.with_separability:
            for i in range(n_factors - 1):
                u, v = factors[i], factors[i + 1]
                if u[0] == v[0] and u[1][0] == "g" and v[1][0] == "g":
                    if u[1][1] == "db" and v[1][1] == "dd" and u[1][2] == v[1][2]:
                        emit(factors[:i] + factors[i + 2:], "separability")

        # insertions at every gap
        objects = [src]
        for f in factors:
            objects.append(factor_type(f)[1])
        for gap, obj in enumerate(objects):
            for n in range(obj):
                j = obj - 1 - n
                for name, make in _EXPANSIONS:
                    emit(factors[:gap] + make(n, j) + factors[gap:], name)
                if self.with_separability:
                    pair = ((j, ("g", "db", n)), (j, ("g", "dd", n)))
                    emit(factors[:gap] + pair + factors[gap:], "separability")

        # lift distribution over nested chains, both ways
        for i, f in enumerate(factors):
            depth, core = f
            if core[0] == "c" and depth >= 1:
                sub = core[1]
                for s in range(1, len(sub)):
                    part1 = _mk_factor(1, sub[:s])
                    part2 = _mk_factor(1, sub[s:])
                    repl = (_mk_factor(depth - 1, (part1, part2)),)
                    emit(factors[:i] + _norm_chain(repl) + factors[i + 1:], "lift-split")
        for i in range(n_factors - 1):
            u, v = factors[i], factors[i + 1]
            if u[0] >= 1 and v[0] >= 1:
                merged = _mk_factor(1, (_strip(u, 1), _strip(v, 1)))
                emit(factors[:i] + (merged,) + factors[i + 2:], "lift-merge")

        # bubble relocation segments
        if self.with_bubble_shift:
            for i in range(n_factors):
                head = _gen(_strip(factors[i], factors[i][0]))
                if not head or head[0] != "ed":
                    continue
                j = factors[i][0]
                n = head[1]
                k = 0
                while i + 2 * k + 2 <= n_factors:
                    seg = factors[i:i + 2 * k + 2]
                    pat = _bubble_pattern(n, k)
                    if all(
                        f[0] == j and f[1][0] == "g" and f[1][1:] == p
                        for f, p in zip(seg, pat)
                    ):
                        if n >= 1:
                            repl = tuple((j + 1, ("g", kind, m)) for kind, m in _bubble_pattern(n - 1, k))
                            emit(factors[:i] + repl + factors[i + 2 * k + 2:], "bubble-shift")
                        if j >= 1:
                            repl = tuple((j - 1, ("g", kind, m)) for kind, m in _bubble_pattern(n + 1, k))
                            emit(factors[:i] + repl + factors[i + 2 * k + 2:], "bubble-shift")
                    k += 1

        # rules inside nested factors
        for i, f in enumerate(factors):
            depth, core = f
            if core[0] == "c":
                inner_src = chain_type(core[1])[0]
                for (isrc, inew), name in self.neighbours((inner_src, core[1])):
                    repl = (_mk_factor(depth, inew),)
                    emit(factors[:i] + _norm_chain(repl) + factors[i + 1:], name)

        return results


@dataclass
class ProofTrace:
    """A rule-by-rule path between two terms."""

    start: FrobTerm
    steps: list[tuple[str, FrobTerm]]

    def to_str(self) -> str:
        lines = [term_to_str(self.start)]
        for rule, t in self.steps:
            lines.append(f"  == [{rule}]")
            lines.append(term_to_str(t))
        return "\n".join(lines)


def rewrite_search(
    t1,
    t2,
    theory: str = "frob",
    depth: int = 12,
    max_nodes: int = 50000,
) -> Optional[ProofTrace]:
    """Bidirectional bounded search for an equational proof.

    Returns a trace when the rewrite neighbourhoods meet within the given
    total depth and node budget, else None; a miss is inconclusive.
    """
    if type_of(t1) != type_of(t2):
        raise TypeMismatchError(
            f"terms have different types: {type_of(t1)} vs {type_of(t2)}"
        )
    rules = RuleSet(theory)
    k1, k2 = canonical_key(t1), canonical_key(t2)
    # parents: key -> (parent_key, rule); roots map to None
    left: dict = {k1: None}
    right: dict = {k2: None}
    frontier_l, frontier_r = [k1], [k2]
    if k1 == k2:
        return _build_trace(t1, left, right, k1)
    used = 0
    nodes = 2
    while used < depth and frontier_l and frontier_r:
        expand_left = len(frontier_l) <= len(frontier_r)
        frontier = frontier_l if expand_left else frontier_r
        own, other = (left, right) if expand_left else (right, left)
        new_frontier = []
        meet = None
        for key in frontier:
            for nk, rule in rules.neighbours(key):
                if nk in own:
                    continue
                own[nk] = (key, rule)
                new_frontier.append(nk)
                nodes += 1
                if nk in other:
                    meet = nk
                    break
                if nodes > max_nodes:
                    return None
            if meet:
                break
        if meet is not None:
            return _build_trace(t1, left, right, meet)
        if expand_left:
            frontier_l = new_frontier
        else:
            frontier_r = new_frontier
        used += 1
    return None


def _build_trace(t1, left, right, meet) -> ProofTrace:
    back = []
    key = meet
    while left[key] is not None:
        parent, rule = left[key]
        back.append((rule, key))
        key = parent
    steps = [(rule, chain_ast(*k)) for rule, k in reversed(back)]
    key = meet
    while right[key] is not None:
        parent, rule = right[key]
        steps.append((rule, chain_ast(*parent)))
        key = parent
    return ProofTrace(start=t1, steps=steps)


# --- deterministic term enumeration -------------------------------------------


def factor_list(max_object: int) -> list:
    """All whiskered generators with subscript plus depth at most max_object."""
    out = []
    for kind in ("eb", "ed", "db", "dd"):
        for n in range(max_object + 1):
            for j in range(max_object - n + 1):
                out.append((j, ("g", kind, n)))
    return out


def enumerate_chains(max_size: int, max_object: int) -> Iterator[tuple[int, tuple]]:
    """All typable factor chains with at most max_size factors, DFS preorder."""
    if max_size < 1:
        return
    all_factors = factor_list(max_object)
    by_src: dict[int, list] = {}
    for f in all_factors:
        by_src.setdefault(factor_type(f)[0], []).append(f)

    stack: list[tuple] = []

    def walk(cur_tgt: int) -> Iterator[tuple[int, tuple]]:
        for f in by_src.get(cur_tgt, ()):
            stack.append(f)
            yield (factor_type(stack[0])[0], tuple(stack))
            if len(stack) < max_size:
                yield from walk(factor_type(f)[1])
            stack.pop()

    for src in sorted({factor_type(f)[0] for f in all_factors}):
        yield from walk(src)


def enumerate_terms(max_size: int, max_object: int) -> Iterator[FrobTerm]:
    """Identity terms, then every enumerated chain as a right-nested composite."""
    for n in range(max_object + 1):
        yield Id(n)
    for src, factors in enumerate_chains(max_size, max_object):
        yield chain_ast(src, factors)
