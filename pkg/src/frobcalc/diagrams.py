"""Planar labelled partition diagrams and their composition.

An arrow of type n -> m is a partition of the 4 + 2n + 2m boundary slots
minus... concretely: positive positions 1..2n+1 name the source boundary and
negative positions -1..-(2m+1) the target boundary.  Even-magnitude
positions are wire material, odd ones are the gaps between wires.  Classes
are parity-homogeneous, noncrossing and maximal, and each carries an ordinal
label coding the nest of closed circles living in that region.

Composition glues the middle boundary, merges classes through it, and folds
every component that loses contact with the outer boundary into an ordinal
deposit on its enclosing region: a closed component with accumulated content
``a`` adds ``omega_pow(a)`` to the label of the region around it, resolved
innermost first.
"""

from __future__ import annotations

from itertools import combinations

from .ordinals import Ordinal, ZERO, nat_sum, omega_pow, ordinal_to_str, parse_ordinal
from . import terms
from .terms import TypeMismatchError


class InternalInvariantError(RuntimeError):
    """A structural assumption failed; indicates a bug, never bad input."""


class DiagramSyntaxError(ValueError):
    pass


def _class_sort_key(cls: frozenset[int]):
    m = min(abs(p) for p in cls)
    return (m, 0 if m in cls else 1)


class Diagram:
    __slots__ = ("src", "tgt", "classes", "labels", "_hash")

    def __init__(self, src: int, tgt: int, classes, labels):
        order = sorted(range(len(classes)), key=lambda i: _class_sort_key(classes[i]))
        cls = tuple(frozenset(classes[i]) for i in order)
        lbl = tuple(labels[i] for i in order)
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "tgt", tgt)
        object.__setattr__(self, "classes", cls)
        object.__setattr__(self, "labels", lbl)
        object.__setattr__(self, "_hash", hash((src, tgt, cls, lbl)))

    def __setattr__(self, name, value):
        raise AttributeError("Diagram is immutable")

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.src == other.src
            and self.tgt == other.tgt
            and self.classes == other.classes
            and self.labels == other.labels
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<Diagram {self.src}->{self.tgt}, {len(self.classes)} classes>"

    def __str__(self):
        return diagram_to_str(self)

    def class_index_of(self, pos: int) -> int:
        for i, c in enumerate(self.classes):
            if pos in c:
                return i
        raise KeyError(f"position {pos} not in any class")

    def label_of(self, pos: int) -> Ordinal:
        return self.labels[self.class_index_of(pos)]


def identity_diagram(n: int) -> Diagram:
    classes = [frozenset((i, -i)) for i in range(1, 2 * n + 2)]
    return Diagram(n, n, classes, [ZERO] * len(classes))


def generator_diagram(family: str, k: int, label: Ordinal) -> Diagram:
    """The minimal-type diagram for generator family 'a', 'b' or 'c' at index k.

    a caps material at the high end (odd k caps a wire under an ordinal, even
    k joins two wires around an enclosed gap), b is the top-bottom mirror of
    a, and c is an identity carrying the label on the k-th slot.
    """
    if k < 1:
        raise ValueError("generator index starts at 1")
    if family == "b":
        mirror = generator_diagram("a", k, label)
        classes = [frozenset(-p for p in c) for c in mirror.classes]
        return Diagram(mirror.tgt, mirror.src, classes, list(mirror.labels))
    if family == "c":
        n = (k - 1) // 2 if k % 2 else k // 2
        base = identity_diagram(n) if k % 2 else identity_diagram(n + 1)
        labels = list(base.labels)
        idx = base.class_index_of(k)
        labels[idx] = label
        return Diagram(base.src, base.tgt, list(base.classes), labels)
    if family != "a":
        raise ValueError(f"unknown generator family {family!r}")
    classes: list[frozenset[int]] = []
    labels: list[Ordinal] = []
    if k % 2:  # a at odd index 2n+1 : n+1 -> n
        n = (k - 1) // 2
        for i in range(1, n + 1):
            classes += [frozenset((2 * i, -2 * i)), frozenset((2 * i - 1, -(2 * i - 1)))]
            labels += [ZERO, ZERO]
        classes.append(frozenset((2 * n + 2,)))
        labels.append(label)
        classes.append(frozenset((2 * n + 1, 2 * n + 3, -(2 * n + 1))))
        labels.append(ZERO)
        return Diagram(n + 1, n, classes, labels)
    # a at even index 2n+2 : n+2 -> n+1
    n = (k - 2) // 2
    for i in range(1, n + 1):
        classes += [frozenset((2 * i, -2 * i)), frozenset((2 * i - 1, -(2 * i - 1)))]
        labels += [ZERO, ZERO]
    classes.append(frozenset((2 * n + 2, 2 * n + 4, -(2 * n + 2))))
    labels.append(ZERO)
    classes.append(frozenset((2 * n + 3,)))
    labels.append(label)
    classes.append(frozenset((2 * n + 1, -(2 * n + 1))))
    labels.append(ZERO)
    classes.append(frozenset((2 * n + 5, -(2 * n + 3))))
    labels.append(ZERO)
    return Diagram(n + 2, n + 1, classes, labels)


def compose(g: Diagram, f: Diagram) -> Diagram:
    """The composite g after f; f's target boundary is glued to g's source."""
    if f.tgt != g.src:
        raise TypeMismatchError(
            f"cannot compose {g.src} -> {g.tgt} after {f.src} -> {f.tgt}"
        )
    nt = 2 * f.src + 1  # outer top slots
    nm = 2 * f.tgt + 1  # glued middle slots
    nb = 2 * g.tgt + 1  # outer bottom slots
    total = nt + nm + nb
    parent = list(range(total))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(x: int, y: int):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    # Node ids: top position +i -> i-1; middle magnitude j -> nt+j-1;
    # bottom position -j -> nt+nm+j-1.
    member_lists = []
    for c, lbl in zip(f.classes, f.labels):
        nodes = [(p - 1) if p > 0 else (nt + (-p) - 1) for p in c]
        member_lists.append((nodes, lbl))
    for c, lbl in zip(g.classes, g.labels):
        nodes = [(nt + p - 1) if p > 0 else (nt + nm + (-p) - 1) for p in c]
        member_lists.append((nodes, lbl))
    for nodes, _ in member_lists:
        first = nodes[0]
        for x in nodes[1:]:
            union(first, x)

    content: dict[int, Ordinal] = {}
    for nodes, lbl in member_lists:
        if lbl != ZERO:
            r = find(nodes[0])
            content[r] = nat_sum(content[r], lbl) if r in content else lbl

    components: dict[int, list[int]] = {}
    for x in range(total):
        components.setdefault(find(x), []).append(x)

    closed = []
    for root, nodes in components.items():
        if all(nt <= x < nt + nm for x in nodes):
            span = [x - nt + 1 for x in nodes]
            closed.append((max(span) - min(span), min(span), max(span), root))
    closed.sort()

    for _, lo, hi, root in closed:
        if lo - 1 < 1 or hi + 1 > nm:
            raise InternalInvariantError(
                f"closed component span [{lo}, {hi}] touches the glued boundary"
            )
        right = find(nt + hi)  # middle slot hi+1
        left = find(nt + lo - 2)  # middle slot lo-1
        if right != left:
            raise InternalInvariantError(
                f"enclosure mismatch around closed span [{lo}, {hi}]"
            )
        deposit = omega_pow(content.get(root, ZERO))
        content[right] = nat_sum(content[right], deposit) if right in content else deposit

    classes = []
    labels = []
    for root, nodes in components.items():
        positions = []
        for x in nodes:
            if x < nt:
                positions.append(x + 1)
            elif x >= nt + nm:
                positions.append(-(x - nt - nm + 1))
        if positions:
            classes.append(frozenset(positions))
            labels.append(content.get(root, ZERO))
    return Diagram(f.src, g.tgt, classes, labels)


def pad_high(d: Diagram, n: int) -> Diagram:
    """Add n untouched wire-plus-gap pairs at the high-position end."""
    if n == 0:
        return d
    classes = list(d.classes)
    labels = list(d.labels)
    for s in range(1, n + 1):
        top_w, bot_w = 2 * (d.src + s), 2 * (d.tgt + s)
        classes.append(frozenset((top_w, -bot_w)))
        labels.append(ZERO)
        classes.append(frozenset((top_w + 1, -(bot_w + 1))))
        labels.append(ZERO)
    return Diagram(d.src + n, d.tgt + n, classes, labels)


def pad_low(d: Diagram, n: int) -> Diagram:
    """Shift the diagram up by n wires and put n identity strands below."""
    if n == 0:
        return d
    shift = 2 * n
    classes = [
        frozenset((p + shift) if p > 0 else (p - shift) for p in c) for c in d.classes
    ]
    labels = list(d.labels)
    for i in range(1, shift + 1):
        classes.append(frozenset((i, -i)))
        labels.append(ZERO)
    return Diagram(d.src + n, d.tgt + n, classes, labels)


def eval_frob(t) -> Diagram:
    """Evaluate an arrow term of the Frobenius language to its diagram."""
    if isinstance(t, terms.Id):
        return identity_diagram(t.n)
    if isinstance(t, terms.Counit):
        return generator_diagram("a", 2 * t.n + 1, ZERO)
    if isinstance(t, terms.Unit):
        return generator_diagram("b", 2 * t.n + 1, ZERO)
    if isinstance(t, terms.Comult):
        return generator_diagram("b", 2 * t.n + 2, ZERO)
    if isinstance(t, terms.Mult):
        return generator_diagram("a", 2 * t.n + 2, ZERO)
    if isinstance(t, terms.Lift):
        return pad_high(eval_frob(t.body), 1)
    if isinstance(t, terms.Compose):
        return compose(eval_frob(t.after), eval_frob(t.before))
    raise TypeError(f"not a Frobenius term: {t!r}")


def equal_diagrams(d1: Diagram, d2: Diagram) -> bool:
    return d1 == d2


def equal_up_to_pad(d1: Diagram, d2: Diagram) -> bool:
    """Equality modulo trailing identity strands at the high end."""
    if d2.src - d1.src != d2.tgt - d1.tgt:
        return False
    delta = d2.src - d1.src
    if delta >= 0:
        return pad_high(d1, delta) == d2
    return d1 == pad_high(d2, -delta)


def _crosses(a: int, b: int, c: int, d: int) -> bool:
    lo, hi = (a, b) if a < b else (b, a)
    return (lo < c < hi) != (lo < d < hi)


def check_invariants(d: Diagram) -> list[str]:
    """All structural violations of the diagram laws, empty when canonical."""
    problems = []
    want_pos = set(range(1, 2 * d.src + 2))
    want_neg = set(range(-(2 * d.tgt + 1), 0))
    seen: dict[int, int] = {}
    for i, c in enumerate(d.classes):
        for p in c:
            if p in seen:
                problems.append(f"position {p} appears in classes {seen[p]} and {i}")
            else:
                seen[p] = i
    missing = (want_pos | want_neg) - set(seen)
    extra = set(seen) - (want_pos | want_neg)
    if missing:
        problems.append(f"positions missing for type {d.src} -> {d.tgt}: {sorted(missing)}")
    if extra:
        problems.append(f"positions out of range: {sorted(extra)}")
    if len(d.labels) != len(d.classes):
        problems.append("label count differs from class count")

    for i, c in enumerate(d.classes):
        parities = {abs(p) % 2 for p in c}
        if len(parities) > 1:
            problems.append(f"class {i} {sorted(c)} mixes wire and gap positions")

    for i, j in combinations(range(len(d.classes)), 2):
        ci, cj = sorted(d.classes[i]), sorted(d.classes[j])
        for a, b in combinations(ci, 2):
            for c, e in combinations(cj, 2):
                if _crosses(a, b, c, e):
                    problems.append(
                        f"classes {i} and {j} intersect via ({a},{b}) x ({c},{e})"
                    )
                    break
            else:
                continue
            break

    for i, j in combinations(range(len(d.classes)), 2):
        if next(iter(d.classes[i])) % 2 != next(iter(d.classes[j])) % 2:
            continue
        if _immediate_neighbours(d, i, j):
            problems.append(
                f"classes {i} {sorted(d.classes[i])} and {j} {sorted(d.classes[j])} "
                "are same-parity immediate neighbours (not maximal)"
            )

    if problems:
        return problems  # anchoring checks assume a well-formed position table

    if d.class_index_of(1) != d.class_index_of(-1):
        problems.append("leftmost gap does not run top to bottom")
    if d.class_index_of(2 * d.src + 1) != d.class_index_of(-(2 * d.tgt + 1)):
        problems.append("rightmost gap does not run top to bottom")
    return problems


def _immediate_neighbours(d: Diagram, i: int, j: int) -> bool:
    for a in d.classes[i]:
        for b in d.classes[j]:
            for k, other in enumerate(d.classes):
                if k in (i, j):
                    continue
                for c, e in combinations(other, 2):
                    if _crosses(a, b, c, e):
                        return False
    return True


# --- serialization ----------------------------------------------------------
#
#   type: N -> M
#   class: +1 +3 -1 : w
#
# One class per line in canonical order; a zero label is omitted.


def _positions_to_str(c: frozenset[int]) -> str:
    pos = sorted(p for p in c if p > 0)
    neg = sorted((p for p in c if p < 0), reverse=True)
    return " ".join(f"+{p}" if p > 0 else str(p) for p in pos + neg)


def diagram_to_str(d: Diagram) -> str:
    lines = [f"type: {d.src} -> {d.tgt}"]
    for c, lbl in zip(d.classes, d.labels):
        line = f"class: {_positions_to_str(c)}"
        if lbl != ZERO:
            line += f" : {ordinal_to_str(lbl)}"
        lines.append(line)
    return "\n".join(lines)


def parse_diagram(text: str) -> Diagram:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("type:"):
        raise DiagramSyntaxError("expected a 'type: N -> M' header line")
    head = lines[0][len("type:"):].split("->")
    if len(head) != 2:
        raise DiagramSyntaxError(f"bad type line: {lines[0]!r}")
    try:
        src, tgt = int(head[0]), int(head[1])
    except ValueError:
        raise DiagramSyntaxError(f"bad type line: {lines[0]!r}") from None
    classes = []
    labels = []
    for ln in lines[1:]:
        if not ln.startswith("class:"):
            raise DiagramSyntaxError(f"expected a 'class:' line, got {ln!r}")
        body = ln[len("class:"):]
        label = ZERO
        if ":" in body:
            body, _, label_text = body.partition(":")
            label = parse_ordinal(label_text.strip())
        members = []
        for tok in body.split():
            try:
                members.append(int(tok))
            except ValueError:
                raise DiagramSyntaxError(f"bad position token {tok!r}") from None
        if not members:
            raise DiagramSyntaxError("empty class line")
        classes.append(frozenset(members))
        labels.append(label)
    d = Diagram(src, tgt, classes, labels)
    problems = check_invariants(d)
    if problems:
        raise DiagramSyntaxError("; ".join(problems))
    return d
