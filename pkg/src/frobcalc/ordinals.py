"""Exact ordinal arithmetic below epsilon-zero, in hereditary Cantor normal form.

An ordinal is represented by the multiset of exponents of its base-omega
normal form, kept as a tuple sorted nonincreasingly.  The empty tuple is 0,
and repeated exponents are stored explicitly (no coefficient compression),
so the natural (Hessenberg) sum is a plain merge and equality is structural.

Ordinals double as codes for nested circle configurations: the empty
configuration is 0, disjoint union is the natural sum, and enclosing a
configuration coded by ``a`` in a fresh circle gives ``omega_pow(a)``.
"""

from __future__ import annotations

from functools import total_ordering
from typing import Iterable


class OrdinalSyntaxError(ValueError):
    """Malformed ordinal text; ``pos`` is the 0-based offset of the offense."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


@total_ordering
class Ordinal:
    """An ordinal below epsilon-zero in hereditary Cantor normal form."""

    __slots__ = ("exps", "_hash")

    def __init__(self, exps: Iterable["Ordinal"] = ()):
        exps = tuple(sorted(exps, reverse=True))
        object.__setattr__(self, "exps", exps)
        object.__setattr__(self, "_hash", hash(exps))

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    def __eq__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._hash == other._hash and self.exps == other.exps

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) < 0

    def __bool__(self):
        return bool(self.exps)

    @property
    def is_finite(self) -> bool:
        return all(e == ZERO for e in self.exps)

    def as_int(self) -> int:
        """Value of a finite ordinal as an int; raises on infinite input."""
        if not self.is_finite:
            raise ValueError(f"not a finite ordinal: {self}")
        return len(self.exps)

    def __str__(self):
        return ordinal_to_str(self)

    def __repr__(self):
        return f"Ordinal({ordinal_to_str(self)!r})"


ZERO = Ordinal()
ONE = Ordinal((ZERO,))
OMEGA = Ordinal((ONE,))


def nat(n: int) -> Ordinal:
    """The finite ordinal n, i.e. an n-fold natural sum of omega^0."""
    if n < 0:
        raise ValueError("naturals only")
    return Ordinal((ZERO,) * n)


def omega_pow(a: Ordinal) -> Ordinal:
    """omega raised to ``a``: the single-summand normal form."""
    return Ordinal((a,))


def nat_sum(*parts: Ordinal) -> Ordinal:
    """Natural (Hessenberg) sum: merge of the exponent multisets."""
    if len(parts) == 1:
        return parts[0]
    merged = []
    for p in parts:
        merged.extend(p.exps)
    return Ordinal(merged)


def compare(a: Ordinal, b: Ordinal) -> int:
    """Total order on normal forms: -1, 0 or 1.

    Exponent sequences (sorted nonincreasingly) are compared lexicographically;
    when one is a prefix of the other the longer sequence is the greater.
    """
    if a._hash == b._hash and a.exps == b.exps:
        return 0
    for ea, eb in zip(a.exps, b.exps):
        c = compare(ea, eb)
        if c != 0:
            return c
    return (len(a.exps) > len(b.exps)) - (len(a.exps) < len(b.exps))


def collapse(a: Ordinal) -> Ordinal:
    """Squash the hierarchy below epsilon-zero into omega^omega.

    The map distributes over the natural sum.  A summand omega^e contributes 1
    when e = 0; otherwise, writing e with normal-form exponents g_1..g_k, it
    contributes omega^k # collapse(g_1) # ... # collapse(g_k).  Every exponent
    of the result is finite, and the map fixes its own image.
    """
    parts = []
    for e in a.exps:
        if e == ZERO:
            parts.append(ONE)
        else:
            k = len(e.exps)
            parts.append(nat_sum(omega_pow(nat(k)), *[collapse(g) for g in e.exps]))
    return nat_sum(ZERO, *parts)


EVEN = "even"
ODD = "odd"
INHOMOGENEOUS = "inhomogeneous"


def height_parity(a: Ordinal) -> str:
    """Height parity of a normal form: 'even', 'odd' or 'inhomogeneous'.

    0 has even height; a sum of omega-powers whose exponents all have even
    (odd) height has odd (even) height; mixed exponents are inhomogeneous.
    """
    if a == ZERO:
        return EVEN
    seen = set()
    for e in a.exps:
        p = height_parity(e)
        if p == INHOMOGENEOUS:
            return INHOMOGENEOUS
        seen.add(p)
        if len(seen) > 1:
            return INHOMOGENEOUS
    return ODD if seen == {EVEN} else EVEN


def sep_norm(a: Ordinal, region: str) -> Ordinal:
    """Separability normalization towards a homogeneous-height ordinal.

    In an odd region every summand omega^e is kept and rewritten to
    omega^{sep_norm(e, even)}.  In an even region summands with e = 0 are
    dropped (a bare circle trapped on wire material is erased) and the rest
    become omega^{sep_norm(e, odd)}.  The result has odd height in odd
    regions and even height in even regions (or is 0), and the map is
    idempotent per region.
    """
    if region == ODD:
        return Ordinal(sep_norm(e, EVEN) for e in a.exps)
    if region == EVEN:
        return Ordinal(sep_norm(e, ODD) for e in a.exps if e != ZERO)
    raise ValueError(f"unknown region parity: {region!r}")


# Growing prime table for the multiplicative coding; _PRIMES[i] is the
# (i+1)-th prime, so the 1st prime is 2.
_PRIMES: list[int] = [2, 3, 5, 7, 11, 13]


def nth_prime(n: int) -> int:
    """The n-th prime number, n >= 1 (p_1 = 2)."""
    if n < 1:
        raise ValueError("prime index starts at 1")
    candidate = _PRIMES[-1]
    while len(_PRIMES) < n:
        candidate += 2
        for p in _PRIMES:
            if p * p > candidate:
                _PRIMES.append(candidate)
                break
            if candidate % p == 0:
                break
    return _PRIMES[n - 1]


def prime_code(a: Ordinal) -> int:
    """Injective coding into the positive integers.

    0 codes to 1, a natural sum codes to the product of its summand codes,
    and omega^e codes to the prime_code(e)-th prime.  Exact big-integer
    arithmetic throughout.
    """
    r = 1
    for e in a.exps:
        r *= nth_prime(prime_code(e))
    return r


# --- text form ------------------------------------------------------------
#
#   ord  := atom ("#" atom)*
#   atom := NAT | "w" | "w^" atom | "(" ord ")"
#
# NAT n is sugar for the n-fold sum of w^0 and bare "w" for w^1.  Printing
# is minimal: trailing w^0 summands group into a decimal, w^1 prints as "w",
# summands are emitted in nonincreasing order.


def _print_atom(e: Ordinal) -> str:
    """Render an exponent so that "w^" can prefix it without parentheses."""
    s = ordinal_to_str(e)
    if e.is_finite or len(e.exps) == 1:
        return s
    return f"({s})"


def ordinal_to_str(a: Ordinal) -> str:
    if a == ZERO:
        return "0"
    pieces = []
    finite_tail = 0
    for e in a.exps:
        if e == ZERO:
            finite_tail += 1
        elif e == ONE:
            pieces.append("w")
        else:
            pieces.append(f"w^{_print_atom(e)}")
    if finite_tail:
        pieces.append(str(finite_tail))
    return " # ".join(pieces)


class _OrdParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise OrdinalSyntaxError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse_ord(self) -> Ordinal:
        parts = [self.parse_atom()]
        while self.peek() == "#":
            self.pos += 1
            parts.append(self.parse_atom())
        return nat_sum(ZERO, *parts)

    def parse_atom(self) -> Ordinal:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.parse_ord()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if ch == "w":
            self.pos += 1
            if self.pos < len(self.text) and self.text[self.pos] == "^":
                self.pos += 1
                return omega_pow(self.parse_atom())
            return OMEGA
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return nat(int(self.text[start:self.pos]))
        self.error("expected a natural, 'w' or '('")


def parse_ordinal(text: str) -> Ordinal:
    p = _OrdParser(text)
    result = p.parse_ord()
    if p.peek() != "":
        p.error("trailing input")
    return result
