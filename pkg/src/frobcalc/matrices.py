"""Exact integer-matrix realization of arrows at a chosen dimension p.

Two independent evaluation routes are kept apart on purpose: a structural
one over terms, using the p-dimensional componentwise algebra (unit sends 1
to the all-ones vector, multiplication keeps equal coordinates), and a
Brauerian one over canonical diagrams, where an entry is 1 exactly when the
combined wire assignment is constant on every wire class and the whole
matrix is scaled by p to the loop count.  Cross-checking the two guards the
normalization pipeline.

Multi-index convention: wire 1 is the most significant digit, so lifting a
term tensors the identity on the least significant side.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import terms
from .diagrams import Diagram
from .theories import normalize
from .terms import TypeMismatchError, type_of

DEFAULT_DIM_CAP = 10**6


class ResourceCapError(RuntimeError):
    pass


class IntMatrix:
    """An exact integer matrix; wraps int64 data, escalating to Python ints
    when a product could overflow."""

    __slots__ = ("data",)

    def __init__(self, data):
        self.data = np.asarray(data)
        if self.data.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(
            (self.data == other.data).all()
        )

    def __hash__(self):
        return hash(self.to_str())

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise TypeMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        a, b = self.data, other.data
        bound = int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0)) * self.cols
        if bound >= 2**62 and a.dtype != object:
            a = a.astype(object)
            b = b.astype(object)
        return IntMatrix(a @ b)

    def kron(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(np.kron(self.data, other.data))

    def scale(self, factor: int) -> "IntMatrix":
        data = self.data
        if factor and int(np.abs(data).max(initial=0)) * factor >= 2**62:
            data = data.astype(object)
        return IntMatrix(data * factor)

    def to_str(self) -> str:
        lines = [f"{self.rows} x {self.cols}"]
        for row in self.data:
            lines.append(" ".join(str(int(x)) for x in row))
        return "\n".join(lines)

    def __repr__(self):
        return f"<IntMatrix {self.rows}x{self.cols}>"


def _identity(dim: int) -> IntMatrix:
    return IntMatrix(np.eye(dim, dtype=np.int64))


def _unit_matrix(p: int) -> IntMatrix:
    return IntMatrix(np.ones((p, 1), dtype=np.int64))


def _counit_matrix(p: int) -> IntMatrix:
    return IntMatrix(np.ones((1, p), dtype=np.int64))


def _mult_matrix(p: int) -> IntMatrix:
    m = np.zeros((p, p * p), dtype=np.int64)
    for j in range(p):
        m[j, j * p + j] = 1
    return IntMatrix(m)


def _comult_matrix(p: int) -> IntMatrix:
    return IntMatrix(_mult_matrix(p).data.T.copy())


def _check_dims(t, p: int, cap: int):
    def objects(u):
        if isinstance(u, terms.Compose):
            yield from objects(u.before)
            yield from objects(u.after)
        elif isinstance(u, terms.Lift):
            for n in objects(u.body):
                yield n + 1
        else:
            src, tgt = type_of(u)
            yield src
            yield tgt

    worst = max(objects(t))
    if p**worst > cap:
        raise ResourceCapError(
            f"dimension {p}^{worst} exceeds the cap of {cap}"
        )


def matrix_of_term(t, p: int, cap: int = DEFAULT_DIM_CAP) -> IntMatrix:
    """Structural evaluation of a Frobenius term at dimension p >= 2."""
    if p < 2:
        raise ValueError("dimension must be at least 2")
    type_of(t)
    _check_dims(t, p, cap)
    return _mat(t, p)


def _mat(t, p: int) -> IntMatrix:
    if isinstance(t, terms.Id):
        return _identity(p**t.n)
    if isinstance(t, terms.Counit):
        return _identity(p**t.n).kron(_counit_matrix(p))
    if isinstance(t, terms.Unit):
        return _identity(p**t.n).kron(_unit_matrix(p))
    if isinstance(t, terms.Comult):
        return _identity(p**t.n).kron(_comult_matrix(p))
    if isinstance(t, terms.Mult):
        return _identity(p**t.n).kron(_mult_matrix(p))
    if isinstance(t, terms.Lift):
        return _mat(t.body, p).kron(_identity(p))
    if isinstance(t, terms.Compose):
        return _mat(t.after, p) @ _mat(t.before, p)
    raise TypeError(f"not a Frobenius term: {t!r}")


def matrix_of_diagram(d: Diagram, p: int, cap: int = DEFAULT_DIM_CAP) -> IntMatrix:
    """Brauerian evaluation of a diagram already in sep-matrix normal form.

    Gap classes are dropped except for the loop count on the leftmost gap;
    the wire classes constrain which basis assignments survive.
    """
    if p < 2:
        raise ValueError("dimension must be at least 2")
    if normalize(d, "sep-matrix") != d:
        raise ValueError("diagram is not in sep-matrix normal form")
    n, m = d.src, d.tgt
    if p ** max(n, m) > cap:
        raise ResourceCapError(f"dimension {p}^{max(n, m)} exceeds the cap of {cap}")
    loops = d.label_of(1).as_int()

    wire_groups = []
    for c in d.classes:
        if next(iter(c)) % 2 == 0:
            srcs = [p_ // 2 - 1 for p_ in c if p_ > 0]
            tgts = [-p_ // 2 - 1 for p_ in c if p_ < 0]
            wire_groups.append((srcs, tgts))

    data = np.zeros((p**m, p**n), dtype=np.int64)
    for col, i_vec in enumerate(product(range(p), repeat=n)):
        for row, j_vec in enumerate(product(range(p), repeat=m)):
            ok = True
            for srcs, tgts in wire_groups:
                values = {i_vec[w] for w in srcs} | {j_vec[w] for w in tgts}
                if len(values) > 1:
                    ok = False
                    break
            if ok:
                data[row, col] = 1
    return IntMatrix(data).scale(p**loops)


@dataclass
class CollisionReport:
    """Outcome of a faithfulness probe over an enumerated term corpus."""

    theory: str
    p: int
    size_bound: int
    max_object: int
    terms_seen: int
    diagram_classes: int
    distinct_diagram_equal_matrix: list[tuple[str, str]]
    equal_diagram_distinct_matrix: list[tuple[str, str]]
    complete: bool

    def to_str(self) -> str:
        lines = [
            f"theory\t{self.theory}",
            f"p\t{self.p}",
            f"size-bound\t{self.size_bound}",
            f"max-object\t{self.max_object}",
            f"terms\t{self.terms_seen}",
            f"diagram-classes\t{self.diagram_classes}",
            f"complete\t{'yes' if self.complete else 'no'}",
        ]
        for a, b in self.distinct_diagram_equal_matrix:
            lines.append(f"distinct-diagram-equal-matrix\t{a}\t{b}")
        for a, b in self.equal_diagram_distinct_matrix:
            lines.append(f"equal-diagram-distinct-matrix\t{a}\t{b}")
        if not self.distinct_diagram_equal_matrix and not self.equal_diagram_distinct_matrix:
            lines.append("collisions\tnone")
        return "\n".join(lines)


def collision_search(
    theory: str,
    p: int,
    size_bound: int,
    max_object: int = 3,
    max_terms: int = 20000,
) -> CollisionReport:
    """Group enumerated terms by theory-diagram and by matrix and report both
    kinds of mismatch between the groupings.

    A pair with distinct diagrams but equal matrices witnesses that the
    theory is too fine to embed faithfully at this dimension; a pair with
    equal diagrams but distinct matrices would be a soundness bug.
    """
    from .diagrams import diagram_to_str, eval_frob
    from .prover import enumerate_terms
    from .terms import term_to_str

    by_matrix: dict[str, dict[str, str]] = {}
    by_diagram: dict[str, dict[str, str]] = {}
    distinct_d_equal_m: list[tuple[str, str]] = []
    equal_d_distinct_m: list[tuple[str, str]] = []
    seen = 0
    complete = True
    for t in enumerate_terms(size_bound, max_object):
        if seen >= max_terms:
            complete = False
            break
        seen += 1
        text = term_to_str(t)
        dkey = diagram_to_str(normalize(eval_frob(t), theory))
        mkey = matrix_of_term(t, p).to_str()

        slot = by_matrix.setdefault(mkey, {})
        if dkey not in slot:
            if slot:
                other = next(iter(slot.values()))
                distinct_d_equal_m.append((other, text))
            slot[dkey] = text

        slot = by_diagram.setdefault(dkey, {})
        if mkey not in slot:
            if slot:
                other = next(iter(slot.values()))
                equal_d_distinct_m.append((other, text))
            slot[mkey] = text

    return CollisionReport(
        theory=theory,
        p=p,
        size_bound=size_bound,
        max_object=max_object,
        terms_seen=seen,
        diagram_classes=len(by_diagram),
        distinct_diagram_equal_matrix=distinct_d_equal_m,
        equal_diagram_distinct_matrix=equal_d_distinct_m,
        complete=complete,
    )
