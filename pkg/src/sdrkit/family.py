"""Set families over a dense ground set, stored as incidence bit-masks.

Members are Python ints used as bit-masks over ground indices ``[0, m)``;
index sets over members (``I``, ``I_x``) are bit-masks over ``[0, n)``.
Python ints are arbitrary precision, so there is no word-size limit on
``m`` or ``n``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Iterator, NamedTuple, Sequence

__all__ = [
    "FamilyError",
    "NotValuedError",
    "GroundMap",
    "SetFamily",
    "FamilyDocument",
    "TightSet",
    "bits",
    "parse_family",
    "parse_family_document",
    "serialize_family",
    "union_size",
    "is_t_family",
    "is_valued_family",
    "check_valuation",
    "member_indices",
    "degree",
    "construct_star",
    "construct_bar",
    "is_bar_family",
    "exchange",
    "tight_sets",
    "equivalence_classes",
    "canonical_form",
    "family_from_canonical",
    "relabel",
    "permute_members",
]


class FamilyError(ValueError):
    """Malformed family, bad arguments, or a violated precondition."""


class NotValuedError(FamilyError):
    """The family is not a valued (t, n)-family for the given t and valuation."""


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class GroundMap:
    """External labels of the ground elements, in dense-index order."""

    labels: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        index = {label: i for i, label in enumerate(self.labels)}
        if len(index) != len(self.labels):
            raise FamilyError("ground labels must be pairwise distinct")
        if not self.labels:
            raise FamilyError("ground set must be nonempty")
        object.__setattr__(self, "index", index)

    def __len__(self) -> int:
        return len(self.labels)

    def __hash__(self) -> int:
        return hash(self.labels)


@dataclass(frozen=True)
class SetFamily:
    """A family ``(A_1, ..., A_n)`` of nonempty sets whose union is the ground set.

    Attributes:
        members: one bit-mask over ground indices per member, in member order.
        ground: labels of the ``m`` ground elements.
    """

    members: tuple[int, ...]
    ground: GroundMap

    def __post_init__(self) -> None:
        if not self.members:
            raise FamilyError("a family needs at least one member")
        m = len(self.ground)
        everything = 0
        for i, mask in enumerate(self.members):
            if mask <= 0:
                raise FamilyError(f"member {i} is empty")
            everything |= mask
        if everything != (1 << m) - 1:
            raise FamilyError("ground set must equal the union of the members")

    @property
    def n(self) -> int:
        return len(self.members)

    @property
    def m(self) -> int:
        return len(self.ground)

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[Any]]) -> "SetFamily":
        """Build a family from label collections; dense indices follow first occurrence.

        Labels are converted with ``str``, so ``1`` and ``"1"`` are the same element.
        """
        index: dict[str, int] = {}
        members = []
        for i, member in enumerate(sets):
            mask = 0
            for raw in member:
                label = _label(raw)
                k = index.setdefault(label, len(index))
                if mask >> k & 1:
                    raise FamilyError(f"duplicate label {label!r} in member {i}")
                mask |= 1 << k
            if not mask:
                raise FamilyError(f"member {i} is empty")
            members.append(mask)
        if not members:
            raise FamilyError("a family needs at least one member")
        return cls(tuple(members), GroundMap(tuple(index)))

    def sets(self) -> list[list[str]]:
        """Members as label lists, elements in dense-index order."""
        labels = self.ground.labels
        return [[labels[x] for x in bits(mask)] for mask in self.members]

    def sizes(self) -> tuple[int, ...]:
        return tuple(mask.bit_count() for mask in self.members)

    @cached_property
    def columns(self) -> tuple[int, ...]:
        """``I_x`` for every ground element ``x``, as member bit-masks."""
        cols = [0] * self.m
        for i, mask in enumerate(self.members):
            for x in bits(mask):
                cols[x] |= 1 << i
        return tuple(cols)

    @cached_property
    def subset_unions(self) -> tuple[int, ...]:
        """Union mask of ``A_i, i in I`` for every member subset ``I`` (index ``I``)."""
        unions = [0] * (1 << self.n)
        for s in range(1, 1 << self.n):
            low = s & -s
            unions[s] = unions[s ^ low] | self.members[low.bit_length() - 1]
        return tuple(unions)

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(s) + "}" for s in self.sets())
        return f"SetFamily({body})"


def _label(raw: Any) -> str:
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise FamilyError(f"labels must be strings or integers, got {raw!r}")
    return str(raw)


class FamilyDocument(NamedTuple):
    family: SetFamily
    t: int | None
    valuation: tuple[int, ...] | None


def parse_family_document(document: str | bytes | dict) -> FamilyDocument:
    """Read a family file (JSON text or an already-decoded mapping).

    The document holds ``"sets"`` (required) and optional ``"t"`` and
    ``"valuation"`` metadata.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise FamilyError(f"malformed family document: {exc}") from None
    if not isinstance(document, dict) or "sets" not in document:
        raise FamilyError('malformed family document: expected an object with "sets"')
    sets = document["sets"]
    if not isinstance(sets, list) or not all(isinstance(s, list) for s in sets):
        raise FamilyError('malformed family document: "sets" must be a list of lists')
    family = SetFamily.from_sets(sets)

    t = document.get("t")
    if t is not None and (isinstance(t, bool) or not isinstance(t, int) or t < 0):
        raise FamilyError('"t" must be a nonnegative integer')
    valuation = document.get("valuation")
    if valuation is not None:
        if not isinstance(valuation, list):
            raise FamilyError('"valuation" must be a list of integers')
        valuation = check_valuation(family, valuation)
    return FamilyDocument(family, t, valuation)


def parse_family(document: str | bytes | dict) -> SetFamily:
    return parse_family_document(document).family


def serialize_family(
    family: SetFamily,
    t: int | None = None,
    valuation: Sequence[int] | None = None,
) -> dict:
    """Family document for ``family``; labels keep their first-occurrence order."""
    doc: dict[str, Any] = {"sets": family.sets()}
    if t is not None:
        doc["t"] = t
    if valuation is not None:
        doc["valuation"] = list(valuation)
    return doc


def check_valuation(family: SetFamily, a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(a)
    if len(a) != family.n:
        raise FamilyError(f"valuation has length {len(a)}, family has {family.n} members")
    for w in a:
        if isinstance(w, bool) or not isinstance(w, int) or w < 1:
            raise FamilyError(f"valuation entries must be positive integers, got {w!r}")
    return a


def union_size(family: SetFamily, index_set: int) -> int:
    """``|union of A_i over i in index_set|``."""
    if index_set <= 0 or index_set >> family.n:
        raise FamilyError("index set must be a nonempty subset of the members")
    if family.n <= 20:
        return family.subset_unions[index_set].bit_count()
    union = 0
    for i in bits(index_set):
        union |= family.members[i]
    return union.bit_count()


def is_t_family(family: SetFamily, t: int) -> bool:
    """Every nonempty ``I`` has ``|union| >= |I| + t``."""
    unions = family.subset_unions
    return all(
        unions[s].bit_count() >= s.bit_count() + t for s in range(1, 1 << family.n)
    )


def _subset_weights(a: Sequence[int]) -> list[int]:
    weights = [0] * (1 << len(a))
    for s in range(1, len(weights)):
        low = s & -s
        weights[s] = weights[s ^ low] + a[low.bit_length() - 1]
    return weights


def is_valued_family(family: SetFamily, t: int, a: Sequence[int]) -> bool:
    a = check_valuation(family, a)
    if any(size != w + t for size, w in zip(family.sizes(), a)):
        return False
    unions = family.subset_unions
    weights = _subset_weights(a)
    for s in range(1, 1 << family.n):
        if s & (s - 1) and unions[s].bit_count() < weights[s] + t:
            return False
    return True


def _require_valued(family: SetFamily, t: int, a: Sequence[int]) -> tuple[int, ...]:
    a = check_valuation(family, a)
    if not is_valued_family(family, t, a):
        raise NotValuedError(f"not a valued ({t},{family.n})-family with valuation {a}")
    return a


def member_indices(family: SetFamily, x: int) -> int:
    """``I_x``: the members containing ground element ``x``."""
    if not 0 <= x < family.m:
        raise FamilyError(f"element index {x} out of range [0, {family.m})")
    return family.columns[x]


def degree(family: SetFamily, x: int) -> int:
    return member_indices(family, x).bit_count()


def construct_star(t: int, n: int) -> SetFamily:
    """``A_i = {i, n+1, ..., n+t}`` with labels ``"1" .. str(n+t)``."""
    if t < 0 or n < 1:
        raise FamilyError("need t >= 0 and n >= 1")
    shared = list(range(n + 1, n + t + 1))
    return SetFamily.from_sets([[i, *shared] for i in range(1, n + 1)])


def construct_bar(t: int, a: Sequence[int]) -> SetFamily:
    """Disjoint private blocks of sizes ``a_i`` plus one common block of ``t`` elements.

    Private elements are labelled ``1 .. sum(a)`` block by block and the
    common block ``sum(a)+1 .. sum(a)+t``, so the all-ones valuation gives
    exactly ``construct_star(t, len(a))``.
    """
    a = tuple(a)
    if t < 0 or not a or any(w < 1 for w in a):
        raise FamilyError("need t >= 0 and a nonempty valuation of positive integers")
    total = sum(a)
    shared = list(range(total + 1, total + t + 1))
    sets, start = [], 1
    for w in a:
        sets.append([*range(start, start + w), *shared])
        start += w
    return SetFamily.from_sets(sets)


def is_bar_family(family: SetFamily, t: int, a: Sequence[int]) -> bool:
    """Sizes are ``a_i + t`` and all pairwise intersections are one common ``t``-set."""
    a = check_valuation(family, a)
    if any(size != w + t for size, w in zip(family.sizes(), a)):
        return False
    if family.n == 1:
        return True
    members = family.members
    common = members[0] & members[1]
    if common.bit_count() != t:
        return False
    return all(
        members[i] & members[j] == common
        for i, j in itertools.combinations(range(family.n), 2)
    )


def exchange(family: SetFamily, x: int, y: int) -> SetFamily:
    """``F_y^x``: members containing ``x`` but not ``y`` swap ``x`` for ``y``.

    When ``x`` leaves every member it is dropped from the ground set and the
    remaining elements are re-indexed densely; labels travel with their
    elements, so ``result.ground.index`` gives the new positions.
    """
    if x == y:
        raise FamilyError("exchange needs two distinct elements")
    for e in (x, y):
        if not 0 <= e < family.m:
            raise FamilyError(f"element index {e} out of range [0, {family.m})")
    bx, by = 1 << x, 1 << y
    members = [
        (mask & ~bx) | by if mask & bx and not mask & by else mask
        for mask in family.members
    ]
    if any(mask & bx for mask in members):
        return SetFamily(tuple(members), family.ground)
    low = bx - 1
    members = [(mask & low) | ((mask >> 1) & ~low) for mask in members]
    labels = family.ground.labels[:x] + family.ground.labels[x + 1 :]
    return SetFamily(tuple(members), GroundMap(labels))


class TightSet(NamedTuple):
    """An index set ``I`` (``|I| >= 2``) whose union has exactly ``sum(a_I) + t`` elements."""

    indices: int
    union_size: int


def tight_sets(family: SetFamily, t: int, a: Sequence[int]) -> list[TightSet]:
    """All tight index sets, ascending by bit-mask value."""
    a = _require_valued(family, t, a)
    unions = family.subset_unions
    weights = _subset_weights(a)
    found = []
    for s in range(3, 1 << family.n):
        if s & (s - 1):
            size = unions[s].bit_count()
            if size == weights[s] + t:
                found.append(TightSet(s, size))
    return found


def equivalence_classes(family: SetFamily, t: int, a: Sequence[int]) -> list[int]:
    """Classes of the relation "both indices lie in a common tight set".

    Returns member bit-masks, ordered by their lowest member index. Indices
    in no tight set form singleton classes.
    """
    parent = list(range(family.n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for tight in tight_sets(family, t, a):
        first, *rest = bits(tight.indices)
        for i in rest:
            parent[find(i)] = find(first)

    classes: dict[int, int] = {}
    for i in range(family.n):
        root = find(i)
        classes[root] = classes.get(root, 0) | (1 << i)
    return sorted(classes.values(), key=lambda mask: mask & -mask)


# --- canonical forms -------------------------------------------------------


def _refine_members(family: SetFamily, weights: Sequence[int]) -> list[int]:
    """Isomorphism-invariant colour of each member, by iterated refinement."""
    cols = family.columns
    start = [(w, size) for w, size in zip(weights, family.sizes())]
    ranks = {sig: r for r, sig in enumerate(sorted(set(start)))}
    colour = [ranks[sig] for sig in start]
    while True:
        elem_colour = [
            tuple(sorted(colour[i] for i in bits(col))) for col in cols
        ]
        sigs = [
            (colour[i], tuple(sorted(elem_colour[x] for x in bits(mask))))
            for i, mask in enumerate(family.members)
        ]
        ranks = {sig: r for r, sig in enumerate(sorted(set(sigs)))}
        refined = [ranks[sig] for sig in sigs]
        if len(ranks) == len(set(colour)):
            return refined
        colour = refined


def canonical_form(family: SetFamily, weights: Sequence[int] | None = None) -> bytes:
    """Bytes identifying ``family`` up to ground relabelling and weight-preserving
    member permutations.

    ``weights`` groups the members: only members of equal weight may be
    swapped. ``None`` lets every member move. A family up to ground
    relabelling is the multiset of its columns ``I_x``; the form is the
    least sorted column list over member orders consistent with a refined
    colouring of the members.
    """
    n = family.n
    if weights is None:
        weights = (1,) * n
    else:
        weights = check_valuation(family, weights)
    colour = _refine_members(family, weights)
    cells: dict[int, list[int]] = {}
    for i in range(n):
        cells.setdefault(colour[i], []).append(i)
    ordered = [cells[c] for c in sorted(cells)]

    cols = family.columns
    best = None
    for choice in itertools.product(*(itertools.permutations(cell) for cell in ordered)):
        order = [i for block in choice for i in block]
        position = [0] * n
        for new, old in enumerate(order):
            position[old] = new
        key = sorted(sum(1 << position[i] for i in bits(col)) for col in cols)
        if best is None or key < best:
            best = key
    cell_weights = [weights[cell[0]] for cell in ordered for _ in cell]
    head = f"{n}:{family.m}:" + ",".join(map(str, cell_weights))
    return (head + "|" + ",".join(f"{c:x}" for c in best)).encode("ascii")


def family_from_canonical(form: bytes, weights: Sequence[int] | None = None) -> SetFamily:
    """A concrete family (labels ``"1".."m"``) with the given canonical form.

    Members come out in canonical order unless ``weights`` is given, in which
    case they are arranged so member ``k`` carries weight ``weights[k]``.
    """
    head, body = form.decode("ascii").split("|")
    n_text, _, weight_text = head.split(":")
    n = int(n_text)
    cols = [int(c, 16) for c in body.split(",")]
    members = [0] * n
    for x, col in enumerate(cols):
        for i in bits(col):
            members[i] |= 1 << x
    if weights is not None:
        pool: dict[int, list[int]] = {}
        for mask, w in zip(members, map(int, weight_text.split(","))):
            pool.setdefault(w, []).append(mask)
        try:
            members = [pool[w].pop(0) for w in weights]
        except (KeyError, IndexError):
            raise FamilyError("weights do not match the canonical form") from None
        if any(pool.values()) or len(members) != n:
            raise FamilyError("weights do not match the canonical form")
    return SetFamily(tuple(members), GroundMap(tuple(str(x + 1) for x in range(len(cols)))))


def relabel(family: SetFamily, perm: Sequence[int]) -> SetFamily:
    """Move ground element ``x`` to index ``perm[x]``, carrying its label along."""
    if sorted(perm) != list(range(family.m)):
        raise FamilyError("perm must be a permutation of the ground indices")
    members = tuple(
        sum(1 << perm[x] for x in bits(mask)) for mask in family.members
    )
    labels = [""] * family.m
    for x, label in enumerate(family.ground.labels):
        labels[perm[x]] = label
    return SetFamily(members, GroundMap(tuple(labels)))


def permute_members(family: SetFamily, order: Sequence[int]) -> SetFamily:
    """Family whose ``k``-th member is ``family.members[order[k]]``."""
    if sorted(order) != list(range(family.n)):
        raise FamilyError("order must be a permutation of the member indices")
    return SetFamily(tuple(family.members[i] for i in order), family.ground)
