"""Arrow-term languages: syntax trees, typing, parsing and printing.

Five term languages share this module.  The main one describes arrows of the
one-generator Frobenius structure; its objects are naturals and its
generators are the counit/unit and comultiplication/multiplication family.
The monad language is the fragment of it without the co-side.  Alongside it
live the self-adjunction language (one endofunctor adjoint to itself) and
the two-sorted adjunction and twin-adjoint ("bijunction") languages used by
the translation functors.

Composition is written with the source side on the right: Compose(g, f)
applies f first.  Tensor is not a constructor; ``tensor`` desugars it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


class TermSyntaxError(ValueError):
    """Malformed term text; ``pos`` is the 0-based offset of the offense."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class TypeMismatchError(ValueError):
    pass


# --- Frobenius / monad language --------------------------------------------


@dataclass(frozen=True)
class Id:
    n: int


@dataclass(frozen=True)
class Counit:  # eb : n+1 -> n
    n: int


@dataclass(frozen=True)
class Unit:  # ed : n -> n+1
    n: int


@dataclass(frozen=True)
class Comult:  # db : n+1 -> n+2
    n: int


@dataclass(frozen=True)
class Mult:  # dd : n+2 -> n+1
    n: int


@dataclass(frozen=True)
class Lift:  # M f : n+1 -> m+1
    body: "FrobTerm"


@dataclass(frozen=True)
class Compose:
    after: "FrobTerm"
    before: "FrobTerm"


FrobTerm = Union[Id, Counit, Unit, Comult, Mult, Lift, Compose]


def type_of(t) -> tuple[int, int]:
    """Source and target of a term; raises TypeMismatchError when ill-typed."""
    if isinstance(t, Id):
        return (t.n, t.n)
    if isinstance(t, Counit):
        return (t.n + 1, t.n)
    if isinstance(t, Unit):
        return (t.n, t.n + 1)
    if isinstance(t, Comult):
        return (t.n + 1, t.n + 2)
    if isinstance(t, Mult):
        return (t.n + 2, t.n + 1)
    if isinstance(t, Lift):
        src, tgt = type_of(t.body)
        return (src + 1, tgt + 1)
    if isinstance(t, Compose):
        bsrc, btgt = type_of(t.before)
        asrc, atgt = type_of(t.after)
        if btgt != asrc:
            raise TypeMismatchError(
                f"cannot compose {term_to_str(t.after)} : {asrc} -> {atgt} "
                f"after {term_to_str(t.before)} : {bsrc} -> {btgt}"
            )
        return (bsrc, atgt)
    raise TypeError(f"not a term: {t!r}")


def lift_n(t, n: int):
    for _ in range(n):
        t = Lift(t)
    return t


def subscript_shift(t, n: int):
    """Add n to every numeric subscript; realizes placing n strands below."""
    if isinstance(t, Id):
        return Id(t.n + n)
    if isinstance(t, Counit):
        return Counit(t.n + n)
    if isinstance(t, Unit):
        return Unit(t.n + n)
    if isinstance(t, Comult):
        return Comult(t.n + n)
    if isinstance(t, Mult):
        return Mult(t.n + n)
    if isinstance(t, Lift):
        return Lift(subscript_shift(t.body, n))
    if isinstance(t, Compose):
        return Compose(subscript_shift(t.after, n), subscript_shift(t.before, n))
    raise TypeError(f"not a term: {t!r}")


def tensor(f1, f2):
    """Monoidal product, f1 above f2: (f1 x 1) . (1 x f2).

    1_n x f is the n-fold Lift of f and f x 1_n shifts the subscripts of f
    by n; identity operands collapse to the bare shift or lift.
    """
    n1, _ = type_of(f1)
    n2, m2 = type_of(f2)
    if isinstance(f2, Id):
        return subscript_shift(f1, n2)
    if isinstance(f1, Id):
        return lift_n(f2, n1)
    return Compose(subscript_shift(f1, m2), lift_n(f2, n1))


def compose_chain(factors):
    """Right-associated composite of factors listed in application order."""
    factors = list(factors)
    if not factors:
        raise ValueError("empty chain has no type")
    t = factors[0]
    for f in factors[1:]:
        t = Compose(f, t)
    return t


def bubble_term(n: int, k: int) -> FrobTerm:
    """The closed-bubble probe at strand n with k nested splits.

    Built as counit . mult^k . comult^k . unit, where the k-th powers follow
    the usual telescoping subscripts; types n -> n.
    """
    factors = [Unit(n)]
    factors += [Comult(n + i) for i in range(k)]
    factors += [Mult(n + i) for i in reversed(range(k))]
    factors.append(Counit(n))
    return compose_chain(factors)


# --- self-adjunction language ----------------------------------------------


@dataclass(frozen=True)
class SjId:
    n: int


@dataclass(frozen=True)
class SjUnit:  # gam : n -> n+2
    n: int


@dataclass(frozen=True)
class SjCounit:  # phi : n+2 -> n
    n: int


@dataclass(frozen=True)
class SjLift:  # F f
    body: "SelfAdjTerm"


@dataclass(frozen=True)
class SjCompose:
    after: "SelfAdjTerm"
    before: "SelfAdjTerm"


SelfAdjTerm = Union[SjId, SjUnit, SjCounit, SjLift, SjCompose]


def sj_type_of(t) -> tuple[int, int]:
    if isinstance(t, SjId):
        return (t.n, t.n)
    if isinstance(t, SjUnit):
        return (t.n, t.n + 2)
    if isinstance(t, SjCounit):
        return (t.n + 2, t.n)
    if isinstance(t, SjLift):
        src, tgt = sj_type_of(t.body)
        return (src + 1, tgt + 1)
    if isinstance(t, SjCompose):
        bsrc, btgt = sj_type_of(t.before)
        asrc, atgt = sj_type_of(t.after)
        if btgt != asrc:
            raise TypeMismatchError(
                f"cannot compose {term_to_str(t.after)} : {asrc} -> {atgt} "
                f"after {term_to_str(t.before)} : {bsrc} -> {btgt}"
            )
        return (bsrc, atgt)
    raise TypeError(f"not a self-adjunction term: {t!r}")


def zigzag_term(n: int, k: int) -> SelfAdjTerm:
    """k successive counit-then-unit bounces at odd object 2n+1."""
    t: SelfAdjTerm = SjId(2 * n + 1)
    for _ in range(k):
        t = SjCompose(t, SjCompose(SjCounit(2 * n + 1), SjUnit(2 * n + 1)))
    return t


# --- adjunction language (two-sorted) --------------------------------------
#
# Side "B" object k is the k-fold roundtrip over the generator; side "A"
# object k is that with one extra left-functor application on top.


@dataclass(frozen=True)
class AdId:
    side: str
    k: int


@dataclass(frozen=True)
class AdUnit:  # gam k : B k -> B k+1
    k: int


@dataclass(frozen=True)
class AdCounit:  # phi k : A k+1 -> A k
    k: int


@dataclass(frozen=True)
class AdF:  # left adjoint on a B-side arrow
    body: "AdjTerm"


@dataclass(frozen=True)
class AdG:  # right adjoint on an A-side arrow
    body: "AdjTerm"


@dataclass(frozen=True)
class AdCompose:
    after: "AdjTerm"
    before: "AdjTerm"


AdjTerm = Union[AdId, AdUnit, AdCounit, AdF, AdG, AdCompose]

Obj = tuple[str, int]


def adj_type_of(t) -> tuple[Obj, Obj]:
    if isinstance(t, AdId):
        if t.side not in ("A", "B"):
            raise TypeMismatchError(f"unknown side {t.side!r}")
        return ((t.side, t.k), (t.side, t.k))
    if isinstance(t, AdUnit):
        return (("B", t.k), ("B", t.k + 1))
    if isinstance(t, AdCounit):
        return (("A", t.k + 1), ("A", t.k))
    if isinstance(t, AdF):
        (side, i), (side2, j) = adj_type_of(t.body)
        if side != "B" or side2 != "B":
            raise TypeMismatchError("F applies to B-side arrows only")
        return (("A", i), ("A", j))
    if isinstance(t, AdG):
        (side, i), (side2, j) = adj_type_of(t.body)
        if side != "A" or side2 != "A":
            raise TypeMismatchError("G applies to A-side arrows only")
        return (("B", i + 1), ("B", j + 1))
    if isinstance(t, AdCompose):
        bsrc, btgt = adj_type_of(t.before)
        asrc, atgt = adj_type_of(t.after)
        if btgt != asrc:
            raise TypeMismatchError(
                f"cannot compose {term_to_str(t.after)} after {term_to_str(t.before)}: "
                f"{btgt} != {asrc}"
            )
        return (bsrc, atgt)
    raise TypeError(f"not an adjunction term: {t!r}")


# --- bijunction language (two-sorted, twin adjoints) ------------------------


@dataclass(frozen=True)
class BjId:
    side: str
    k: int


@dataclass(frozen=True)
class BjUnitA:  # gamA k : A k -> A k+1
    k: int


@dataclass(frozen=True)
class BjUnitB:  # gamB k : B k -> B k+1
    k: int


@dataclass(frozen=True)
class BjCounitA:  # phiA k : A k+1 -> A k
    k: int


@dataclass(frozen=True)
class BjCounitB:  # phiB k : B k+1 -> B k
    k: int


@dataclass(frozen=True)
class BjP:  # B-side arrow, lifted: (B,i)->(B,j) becomes (A,i+1)->(A,j+1)
    body: "BijTerm"


@dataclass(frozen=True)
class BjU:  # A-side arrow, lowered: (A,i)->(A,j) becomes (B,i)->(B,j)
    body: "BijTerm"


@dataclass(frozen=True)
class BjCompose:
    after: "BijTerm"
    before: "BijTerm"


BijTerm = Union[BjId, BjUnitA, BjUnitB, BjCounitA, BjCounitB, BjP, BjU, BjCompose]


def bij_type_of(t) -> tuple[Obj, Obj]:
    if isinstance(t, BjId):
        if t.side not in ("A", "B"):
            raise TypeMismatchError(f"unknown side {t.side!r}")
        return ((t.side, t.k), (t.side, t.k))
    if isinstance(t, BjUnitA):
        return (("A", t.k), ("A", t.k + 1))
    if isinstance(t, BjUnitB):
        return (("B", t.k), ("B", t.k + 1))
    if isinstance(t, BjCounitA):
        return (("A", t.k + 1), ("A", t.k))
    if isinstance(t, BjCounitB):
        return (("B", t.k + 1), ("B", t.k))
    if isinstance(t, BjP):
        (side, i), (side2, j) = bij_type_of(t.body)
        if side != "B" or side2 != "B":
            raise TypeMismatchError("P applies to B-side arrows only")
        return (("A", i + 1), ("A", j + 1))
    if isinstance(t, BjU):
        (side, i), (side2, j) = bij_type_of(t.body)
        if side != "A" or side2 != "A":
            raise TypeMismatchError("U applies to A-side arrows only")
        return (("B", i), ("B", j))
    if isinstance(t, BjCompose):
        bsrc, btgt = bij_type_of(t.before)
        asrc, atgt = bij_type_of(t.after)
        if btgt != asrc:
            raise TypeMismatchError(
                f"cannot compose {term_to_str(t.after)} after {term_to_str(t.before)}: "
                f"{btgt} != {asrc}"
            )
        return (bsrc, atgt)
    raise TypeError(f"not a bijunction term: {t!r}")


# --- printing ----------------------------------------------------------------

_ATOM_KEYWORD = {
    Id: "id", Counit: "eb", Unit: "ed", Comult: "db", Mult: "dd",
    SjId: "id", SjUnit: "gam", SjCounit: "phi",
    AdUnit: "gam", AdCounit: "phi",
    BjUnitA: "gamA", BjUnitB: "gamB", BjCounitA: "phiA", BjCounitB: "phiB",
}

_UNARY_KEYWORD = {Lift: "M", SjLift: "F", AdF: "F", AdG: "G", BjP: "P", BjU: "U"}


def term_to_str(t) -> str:
    """Canonical text: composites fully parenthesized, atoms bare."""
    cls = type(t)
    if cls in (AdId, BjId):
        return f"id{t.side} {t.k}"
    if cls in _ATOM_KEYWORD:
        sub = t.n if hasattr(t, "n") else t.k
        return f"{_ATOM_KEYWORD[cls]} {sub}"
    if cls in _UNARY_KEYWORD:
        return f"{_UNARY_KEYWORD[cls]} {term_to_str(t.body)}"
    if cls in (Compose, SjCompose, AdCompose, BjCompose):
        return f"({term_to_str(t.after)} . {term_to_str(t.before)})"
    raise TypeError(f"not a term: {t!r}")


# --- parsing -----------------------------------------------------------------
#
#   term  := xterm ("." term)?          composition, right operand first
#   xterm := mterm ("x" mterm)*         tensor (Frobenius language only)
#   mterm := UNARY mterm | atom
#   atom  := KEYWORD NAT | "(" term ")"

_LANGS = {
    "frob": {
        "atoms": {"id": Id, "eb": Counit, "ed": Unit, "db": Comult, "dd": Mult},
        "unary": {"M": Lift},
        "compose": Compose,
        "tensor": True,
    },
    "monad": {
        "atoms": {"id": Id, "ed": Unit, "dd": Mult},
        "unary": {"M": Lift},
        "compose": Compose,
        "tensor": False,
    },
    "selfadj": {
        "atoms": {"id": SjId, "gam": SjUnit, "phi": SjCounit},
        "unary": {"F": SjLift},
        "compose": SjCompose,
        "tensor": False,
    },
    "adj": {
        "atoms": {"idA": lambda k: AdId("A", k), "idB": lambda k: AdId("B", k),
                  "gam": AdUnit, "phi": AdCounit},
        "unary": {"F": AdF, "G": AdG},
        "compose": AdCompose,
        "tensor": False,
    },
    "bij": {
        "atoms": {"idA": lambda k: BjId("A", k), "idB": lambda k: BjId("B", k),
                  "gamA": BjUnitA, "gamB": BjUnitB,
                  "phiA": BjCounitA, "phiB": BjCounitB},
        "unary": {"P": BjP, "U": BjU},
        "compose": BjCompose,
        "tensor": False,
    },
}

# Every keyword of every language, for diagnosing cross-language mixups.
_ALL_KEYWORDS: dict[str, set[str]] = {}
for _lang, _spec in _LANGS.items():
    for _kw in list(_spec["atoms"]) + list(_spec["unary"]):
        _ALL_KEYWORDS.setdefault(_kw, set()).add(_lang)


class _TermParser:
    def __init__(self, text: str, lang: str):
        if lang not in _LANGS:
            raise ValueError(f"unknown language {lang!r}")
        self.text = text
        self.lang = lang
        self.spec = _LANGS[lang]
        self.pos = 0

    def error(self, message: str, pos: int | None = None):
        raise TermSyntaxError(message, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def read_word(self) -> tuple[str, int]:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalpha() or self.text[self.pos].isdigit()
        ):
            self.pos += 1
        return self.text[start:self.pos], start

    def read_nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def parse_term(self):
        left = self.parse_xterm()
        self.skip_ws()
        if self.peek() == ".":
            self.pos += 1
            right = self.parse_term()
            return self.spec["compose"](left, right)
        return left

    def parse_xterm(self):
        left = self.parse_mterm()
        while True:
            save = self.pos
            self.skip_ws()
            if (
                self.pos < len(self.text)
                and self.text[self.pos] == "x"
                and not (self.pos + 1 < len(self.text) and self.text[self.pos + 1].isalnum())
            ):
                if not self.spec["tensor"]:
                    self.error("tensor is not available in this language")
                self.pos += 1
                right = self.parse_mterm()
                left = tensor(left, right)
            else:
                self.pos = save
                return left

    def parse_mterm(self):
        self.skip_ws()
        if self.peek() == "(":
            self.pos += 1
            inner = self.parse_term()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        word, start = self.read_word()
        if not word:
            self.error("expected a term")
        if word in self.spec["unary"]:
            return self.spec["unary"][word](self.parse_mterm())
        if word in self.spec["atoms"]:
            return self.spec["atoms"][word](self.read_nat())
        if word in _ALL_KEYWORDS:
            others = ", ".join(sorted(_ALL_KEYWORDS[word]))
            self.error(
                f"keyword {word!r} belongs to language(s) {others}, not {self.lang}",
                start,
            )
        self.error(f"unknown keyword {word!r}", start)

    def check_types(self, t):
        fn = {
            "frob": type_of, "monad": type_of, "selfadj": sj_type_of,
            "adj": adj_type_of, "bij": bij_type_of,
        }[self.lang]
        fn(t)


def parse_term(text: str, lang: str = "frob"):
    """Parse arrow-term text in the given language; validates typing."""
    p = _TermParser(text, lang)
    t = p.parse_term()
    if p.peek() != "":
        p.error("trailing input")
    p.check_types(t)
    return t
