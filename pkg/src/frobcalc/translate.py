"""Structural translations between the five arrow-term languages.

Each pair of functors is mutually inverse on the relevant side: the monad
language against the B side of the free adjunction, the bijunction sides
against the even/odd halves of the free self-adjunction, and the Frobenius
language against the even half of the free self-adjunction.  Where a clause
depends on whether a subterm lives in the even or odd half, the parity is
recomputed from its type rather than stored.
"""

from __future__ import annotations

from . import diagrams
from .terms import (
    AdCompose, AdCounit, AdF, AdG, AdId, AdUnit,
    BjCompose, BjCounitA, BjCounitB, BjId, BjP, BjU, BjUnitA, BjUnitB,
    Compose, Comult, Counit, Id, Lift, Mult, Unit,
    SjCompose, SjCounit, SjId, SjLift, SjUnit,
    TypeMismatchError, sj_type_of,
)


class NotInFragmentError(ValueError):
    pass


# --- monad <-> adjunction (B side) ------------------------------------------


def monad_to_adj(t):
    """Interpret a monad-fragment term in the B side of the free adjunction."""
    if isinstance(t, Id):
        return AdId("B", t.n)
    if isinstance(t, Unit):
        return AdUnit(t.n)
    if isinstance(t, Mult):
        return AdG(AdCounit(t.n))
    if isinstance(t, Lift):
        return AdG(AdF(monad_to_adj(t.body)))
    if isinstance(t, Compose):
        return AdCompose(monad_to_adj(t.after), monad_to_adj(t.before))
    if isinstance(t, (Counit, Comult)):
        raise NotInFragmentError(
            f"{type(t).__name__} is not part of the monad fragment"
        )
    raise TypeError(f"not a monad term: {t!r}")


def adj_to_monad(t):
    """Collapse an adjunction term to the monad language (defined on both sides)."""
    if isinstance(t, AdId):
        return Id(t.k if t.side == "B" else t.k + 1)
    if isinstance(t, AdUnit):
        return Unit(t.k)
    if isinstance(t, AdCounit):
        return Mult(t.k)
    if isinstance(t, AdG):
        return adj_to_monad(t.body)
    if isinstance(t, AdF):
        return Lift(adj_to_monad(t.body))
    if isinstance(t, AdCompose):
        return Compose(adj_to_monad(t.after), adj_to_monad(t.before))
    raise TypeError(f"not an adjunction term: {t!r}")


# --- bijunction <-> self-adjunction ------------------------------------------


def bij_to_selfadj(t):
    """A-side objects k land on 2k, B-side objects on 2k+1."""
    if isinstance(t, BjId):
        return SjId(2 * t.k if t.side == "A" else 2 * t.k + 1)
    if isinstance(t, BjUnitA):
        return SjUnit(2 * t.k)
    if isinstance(t, BjUnitB):
        return SjUnit(2 * t.k + 1)
    if isinstance(t, BjCounitA):
        return SjCounit(2 * t.k)
    if isinstance(t, BjCounitB):
        return SjCounit(2 * t.k + 1)
    if isinstance(t, (BjP, BjU)):
        return SjLift(bij_to_selfadj(t.body))
    if isinstance(t, BjCompose):
        return SjCompose(bij_to_selfadj(t.after), bij_to_selfadj(t.before))
    raise TypeError(f"not a bijunction term: {t!r}")


def selfadj_to_bij(t, side: str):
    """Inverse direction; the term's endpoints must match the side's parity
    (A holds the even objects, B the odd ones)."""
    src, tgt = sj_type_of(t)
    want = 0 if side == "A" else 1
    if side not in ("A", "B"):
        raise ValueError(f"unknown side {side!r}")
    if src % 2 != want or tgt % 2 != want:
        raise TypeMismatchError(
            f"term of type {src} -> {tgt} does not live on side {side}"
        )
    return _selfadj_to_bij(t)


def _selfadj_to_bij(t):
    if isinstance(t, SjId):
        return BjId("A", t.n // 2) if t.n % 2 == 0 else BjId("B", (t.n - 1) // 2)
    if isinstance(t, SjUnit):
        return BjUnitA(t.n // 2) if t.n % 2 == 0 else BjUnitB((t.n - 1) // 2)
    if isinstance(t, SjCounit):
        return BjCounitA(t.n // 2) if t.n % 2 == 0 else BjCounitB((t.n - 1) // 2)
    if isinstance(t, SjLift):
        src, _ = sj_type_of(t.body)
        inner = _selfadj_to_bij(t.body)
        return BjP(inner) if src % 2 == 1 else BjU(inner)
    if isinstance(t, SjCompose):
        return BjCompose(_selfadj_to_bij(t.after), _selfadj_to_bij(t.before))
    raise TypeError(f"not a self-adjunction term: {t!r}")


# --- Frobenius <-> self-adjunction (even side) --------------------------------


def frob_to_selfadj(t):
    """Double the objects: n goes to 2n, each generator to its two-step form."""
    if isinstance(t, Id):
        return SjId(2 * t.n)
    if isinstance(t, Counit):
        return SjCounit(2 * t.n)
    if isinstance(t, Unit):
        return SjUnit(2 * t.n)
    if isinstance(t, Comult):
        return SjLift(SjUnit(2 * t.n + 1))
    if isinstance(t, Mult):
        return SjLift(SjCounit(2 * t.n + 1))
    if isinstance(t, Lift):
        return SjLift(SjLift(frob_to_selfadj(t.body)))
    if isinstance(t, Compose):
        return SjCompose(frob_to_selfadj(t.after), frob_to_selfadj(t.before))
    raise TypeError(f"not a Frobenius term: {t!r}")


def selfadj_to_frob(t):
    """Halve the objects; defined on the whole self-adjunction language.

    A lift over an odd-endpoint subterm is absorbed, a lift over an
    even-endpoint subterm becomes the endofunctor of the Frobenius language.
    """
    if isinstance(t, SjId):
        return Id(t.n // 2 if t.n % 2 == 0 else (t.n + 1) // 2)
    if isinstance(t, SjCounit):
        return Counit(t.n // 2) if t.n % 2 == 0 else Mult((t.n - 1) // 2)
    if isinstance(t, SjUnit):
        return Unit(t.n // 2) if t.n % 2 == 0 else Comult((t.n - 1) // 2)
    if isinstance(t, SjLift):
        src, _ = sj_type_of(t.body)
        inner = selfadj_to_frob(t.body)
        return inner if src % 2 == 1 else Lift(inner)
    if isinstance(t, SjCompose):
        return Compose(selfadj_to_frob(t.after), selfadj_to_frob(t.before))
    raise TypeError(f"not a self-adjunction term: {t!r}")


def eval_selfadj(t) -> "diagrams.Diagram":
    """Diagram of a self-adjunction term, through the Frobenius language."""
    return diagrams.eval_frob(selfadj_to_frob(t))
