"""Equational theories as label-normalization passes over evaluated diagrams.

Four theories of increasing strength share one composition engine; each is a
label-only rewrite of the evaluated diagram, applied before comparison:

* ``frob``      -- no rewrite; diagrams are already canonical.
* ``frob-phi``  -- loop position-independence: circle material migrates to
  the leftmost gap, leaving only finite counts on wire classes.
* ``frob-sep``  -- separability: labels are squashed to homogeneous height
  per region parity (bare circles trapped on wire material vanish).
* ``sep-matrix`` -- both collapses; all that survives is a single loop count
  on the leftmost gap.
"""

from __future__ import annotations

from .diagrams import Diagram, InternalInvariantError, eval_frob
from .ordinals import EVEN, ODD, ZERO, collapse, nat, nat_sum, sep_norm
from .terms import type_of

THEORIES = ("frob", "frob-phi", "frob-sep", "sep-matrix")


def _phi_pass(d: Diagram) -> Diagram:
    """Move circle content leftwards: wire classes keep only their summand
    count, every other gap is zeroed, and the leftmost gap absorbs the
    collapsed total."""
    leftmost = d.class_index_of(1)
    labels = list(d.labels)
    acc = ZERO
    for i, (c, lbl) in enumerate(zip(d.classes, d.labels)):
        even = next(iter(c)) % 2 == 0
        if even:
            labels[i] = nat(len(lbl.exps))
            acc = nat_sum(acc, *[collapse(e) for e in lbl.exps])
        elif i != leftmost:
            labels[i] = ZERO
            acc = nat_sum(acc, collapse(lbl))
    labels[leftmost] = nat_sum(collapse(d.labels[leftmost]), acc)
    return Diagram(d.src, d.tgt, list(d.classes), labels)


def _sep_pass(d: Diagram) -> Diagram:
    labels = [
        sep_norm(lbl, EVEN if next(iter(c)) % 2 == 0 else ODD)
        for c, lbl in zip(d.classes, d.labels)
    ]
    return Diagram(d.src, d.tgt, list(d.classes), labels)


def normalize(d: Diagram, theory: str) -> Diagram:
    """Canonical representative of d's equivalence class under the theory."""
    if theory == "frob":
        return d
    if theory == "frob-phi":
        return _phi_pass(d)
    if theory == "frob-sep":
        return _sep_pass(d)
    if theory == "sep-matrix":
        out = _sep_pass(_phi_pass(_sep_pass(d)))
        leftmost = out.class_index_of(1)
        for i, lbl in enumerate(out.labels):
            if i == leftmost:
                if not lbl.is_finite:
                    raise InternalInvariantError(
                        f"sep-matrix normal form has infinite loop count {lbl}"
                    )
            elif lbl != ZERO:
                raise InternalInvariantError(
                    f"sep-matrix normal form keeps a label off the leftmost gap: {lbl}"
                )
        return out
    raise ValueError(f"unknown theory {theory!r}; expected one of {THEORIES}")


def decide(t1, t2, theory: str = "frob") -> bool:
    """Whether two arrow terms are equal under the theory.

    Terms of different types are never equal; ill-typed terms raise.
    """
    if type_of(t1) != type_of(t2):
        return False
    return normalize(eval_frob(t1), theory) == normalize(eval_frob(t2), theory)
