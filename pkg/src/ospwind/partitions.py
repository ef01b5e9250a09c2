# SPDX-License-Identifier: MPL-2.0
"""Decorated ordered set partitions: validation, admissibility, enumeration, winding.

A decorated ordered set partition ``({1,5,6}_2|{2,9}_1|...)`` is canonical when
element 1 sits in the first block. Enumeration walks block-assignment words for the
elements 2..n in lexicographic order (element 1 is pinned to block 0) and, for each
block structure, the decoration compositions in lexicographic order. Both walks prune
as soon as the remaining elements or the remaining decoration total can no longer
satisfy the family bounds.

The winding map sends a canonical partition with decoration total ``a`` to the cyclic
differences of its position labels modulo ``a``; ``unwind`` inverts it.
"""
from __future__ import annotations

import itertools
import re
from collections.abc import Iterator, Sequence
from functools import lru_cache

from .errors import (
    EmptyBlock,
    EncodingError,
    InvalidFamily,
    LevelNotDivisible,
    MissingElements,
    ModulusMismatch,
    NoPreimage,
    NonPositiveDecoration,
    NotAdmissible,
    NotCanonical,
    OverlappingBlocks,
    PartitionError,
    UnknownElements,
)
from .logging import get_logger, timed
from .models import DecoratedOSP, FamilySpec, HStarVector, WindingData

__all__ = [
    "count_admissible",
    "cyclic_winding",
    "enumerate_partitions",
    "format_partition",
    "grading_histogram",
    "is_admissible",
    "modular_section",
    "modular_section_layers",
    "parse_partition",
    "position_labels",
    "unwind",
    "validate",
    "winding_classes",
    "winding_data",
    "winding_vector",
]

logger = get_logger(__name__).bind(component="partitions")

_BLOCK_RE = re.compile(r"\{(\d+(?:,\d+)*)\}_(\d+)")


# ---------------- Structure -----------------


def validate(partition: DecoratedOSP) -> None:
    """Raise a PartitionError subclass unless ``partition`` is a valid canonical partition."""

    seen: set[int] = set()
    for index, block in enumerate(partition.blocks):
        if not block:
            raise EmptyBlock(f"block {index + 1} is empty")
        for element in block:
            if not 1 <= element <= partition.n:
                raise UnknownElements(f"element {element} is outside 1..{partition.n}")
            if element in seen:
                raise OverlappingBlocks(f"element {element} appears in more than one place")
            seen.add(element)

    missing = sorted(set(range(1, partition.n + 1)) - seen)
    if missing:
        raise MissingElements(f"elements {missing} are not covered by any block")

    for index, decoration in enumerate(partition.decorations):
        if decoration < 1:
            raise NonPositiveDecoration(f"block {index + 1} has decoration {decoration}")

    if 1 not in partition.blocks[0]:
        raise NotCanonical("element 1 must belong to the first block")


def is_admissible(partition: DecoratedOSP, family: FamilySpec) -> bool:
    """Whether ``partition`` satisfies the decoration total and per-block bounds of ``family``.

    Every family bounds a block of size m by 1 <= l <= r*m - 1; the hypersimplex is the
    r = 1 case (l < |L|) and the dilated simplex is the slice at s = r.
    """

    if partition.n != family.n or partition.decoration_sum != family.decoration_total:
        return False
    return all(
        1 <= decoration <= family.upper_bound(len(block))
        for block, decoration in zip(partition.blocks, partition.decorations)
    )


# ---------------- Enumeration -----------------


def _min_block_size(family: FamilySpec) -> int:
    return 1 if family.upper_bound(1) >= 1 else 2


def _assignment_words(n: int, max_blocks: int, min_size: int) -> Iterator[tuple[int, ...]]:
    """Yield block indices for elements 1..n, element 1 pinned to block 0, in lex order.

    A word is kept only when the blocks it uses are exactly 0..k-1, each of size at
    least ``min_size``.
    """

    if max_blocks < 1 or min_size - 1 > n - 1:
        return
    word = [0] * n
    sizes = [0] * max_blocks
    sizes[0] = 1

    def deficit(top: int) -> int:
        return sum(max(0, min_size - sizes[i]) for i in range(top + 1))

    def extend(pos: int, top: int) -> Iterator[tuple[int, ...]]:
        if pos == n:
            yield tuple(word)
            return
        remaining = n - pos - 1
        for block in range(max_blocks):
            sizes[block] += 1
            new_top = max(top, block)
            if deficit(new_top) <= remaining:
                word[pos] = block
                yield from extend(pos + 1, new_top)
            sizes[block] -= 1

    yield from extend(1, 0)


def _block_structures(family: FamilySpec) -> Iterator[tuple[tuple[int, ...], ...]]:
    n, r, s = family.n, family.r, family.s
    min_size = _min_block_size(family)
    # k blocks need k <= s (each l_i >= 1) and s <= rn - k (each l_i <= r|L_i| - 1).
    max_blocks = min(s, n // min_size, r * n - s)
    for word in _assignment_words(n, max_blocks, min_size):
        k = max(word) + 1
        yield tuple(
            tuple(element + 1 for element, block in enumerate(word) if block == index)
            for index in range(k)
        )


@lru_cache(maxsize=None)
def _decoration_choices(uppers: tuple[int, ...], total: int) -> tuple[tuple[int, ...], ...]:
    """All compositions of ``total`` with 1 <= l_i <= uppers[i], in lex order."""

    suffix = [0] * (len(uppers) + 1)
    for i in range(len(uppers) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + uppers[i]

    found: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def extend(i: int, remaining: int) -> None:
        if i == len(uppers):
            if remaining == 0:
                found.append(tuple(prefix))
            return
        parts_left = len(uppers) - i - 1
        low = max(1, remaining - suffix[i + 1])
        high = min(uppers[i], remaining - parts_left)
        for decoration in range(low, high + 1):
            prefix.append(decoration)
            extend(i + 1, remaining - decoration)
            prefix.pop()

    extend(0, total)
    return tuple(found)


def enumerate_partitions(family: FamilySpec) -> Iterator[DecoratedOSP]:
    """Yield every canonical admissible partition for ``family`` exactly once.

    The order is deterministic: block-assignment words first, then decorations.
    """

    with timed(logger, "enumerate", family=family.label) as summary:
        count = 0
        for blocks in _block_structures(family):
            uppers = tuple(family.upper_bound(len(block)) for block in blocks)
            for decorations in _decoration_choices(uppers, family.decoration_total):
                count += 1
                yield DecoratedOSP(n=family.n, blocks=blocks, decorations=decorations)
        summary["count"] = count


def count_admissible(family: FamilySpec) -> int:
    """Cardinality of ``enumerate_partitions(family)`` without materialising partitions."""

    return sum(
        len(
            _decoration_choices(
                tuple(family.upper_bound(len(block)) for block in blocks),
                family.decoration_total,
            )
        )
        for blocks in _block_structures(family)
    )


# ---------------- Winding -----------------


def position_labels(partition: DecoratedOSP, modulus: int) -> tuple[int, ...]:
    """Cumulative decoration before the block of each element, reduced mod ``modulus``."""

    if modulus != partition.decoration_sum:
        raise ModulusMismatch(
            f"modulus {modulus} differs from the decoration total {partition.decoration_sum}"
        )
    positions = [0] * partition.n
    offset = 0
    for block, decoration in zip(partition.blocks, partition.decorations):
        for element in block:
            positions[element - 1] = offset % modulus
        offset += decoration
    return tuple(positions)


def cyclic_winding(positions: Sequence[int], modulus: int) -> tuple[tuple[int, ...], int]:
    """Winding vector and level of position labels under the cyclic successor i -> i+1."""

    n = len(positions)
    vector = tuple((positions[(i + 1) % n] - positions[i]) % modulus for i in range(n))
    return vector, sum(vector)


def winding_data(partition: DecoratedOSP, modulus: int) -> WindingData:
    """Winding statistics of ``partition`` for decoration total ``modulus``."""

    positions = position_labels(partition, modulus)
    vector, level = cyclic_winding(positions, modulus)
    if level % modulus:
        raise LevelNotDivisible(f"level {level} is not a multiple of {modulus}")
    return WindingData(
        positions=positions,
        winding_vector=vector,
        level=level,
        winding_number=level // modulus,
    )


def winding_vector(partition: DecoratedOSP, family: FamilySpec) -> WindingData:
    if not is_admissible(partition, family):
        raise NotAdmissible(f"{format_partition(partition)} is not admissible for {family.label}")
    return winding_data(partition, family.winding_modulus)


def unwind(vector: Sequence[int], modulus: int) -> DecoratedOSP:
    """Rebuild the canonical partition whose winding vector is ``vector``.

    Position labels are the prefix sums of the vector starting from p_1 = 0; blocks
    group equal labels in increasing label order and decorations are the gaps between
    consecutive labels, the last one closing up to ``modulus``.
    """

    if modulus < 1 or not vector:
        raise NoPreimage(f"no partition has winding vector {tuple(vector)} mod {modulus}")
    if any(not 0 <= entry < modulus for entry in vector):
        raise NoPreimage(f"entries of {tuple(vector)} must lie in 0..{modulus - 1}")
    if sum(vector) % modulus:
        raise LevelNotDivisible(f"level {sum(vector)} is not a multiple of {modulus}")

    positions = [0]
    for entry in vector[:-1]:
        positions.append((positions[-1] + entry) % modulus)

    labels = sorted(set(positions))
    blocks = tuple(
        tuple(element + 1 for element, p in enumerate(positions) if p == label)
        for label in labels
    )
    decorations = tuple(b - a for a, b in zip(labels, [*labels[1:], modulus]))
    partition = DecoratedOSP(n=len(vector), blocks=blocks, decorations=decorations)
    try:
        validate(partition)
    except PartitionError as exc:
        raise NoPreimage(f"reconstruction of {tuple(vector)} is not a partition: {exc}") from exc
    return partition


def grading_histogram(family: FamilySpec) -> HStarVector:
    """Counts (m_0, ..., m_{n-1}) of admissible partitions by winding number."""

    counts = [0] * family.hstar_length
    for partition in enumerate_partitions(family):
        counts[winding_vector(partition, family).winding_number] += 1
    return HStarVector(coeffs=tuple(counts))


def winding_classes(
    family: FamilySpec, limit: int | None = None
) -> dict[int, list[DecoratedOSP]]:
    """Admissible partitions grouped by winding number, each class in enumeration order."""

    classes: dict[int, list[DecoratedOSP]] = {}
    for partition in enumerate_partitions(family):
        members = classes.setdefault(winding_vector(partition, family).winding_number, [])
        if limit is None or len(members) < limit:
            members.append(partition)
    return dict(sorted(classes.items()))


def modular_section(r: int, n: int) -> frozenset[tuple[int, ...]]:
    """All x in (Z/r)^n with sum x_i = 0 mod r; there are r^(n-1) of them."""

    if r < 1 or n < 1:
        raise InvalidFamily(f"modular section needs r >= 1 and n >= 1, got r={r}, n={n}")
    return frozenset(
        point for point in itertools.product(range(r), repeat=n) if sum(point) % r == 0
    )


def modular_section_layers(r: int, n: int) -> dict[int, list[tuple[int, ...]]]:
    """The modular section split by sum(x) / r, representatives taken in 0..r-1."""

    layers: dict[int, list[tuple[int, ...]]] = {}
    for point in sorted(modular_section(r, n)):
        layers.setdefault(sum(point) // r, []).append(point)
    return layers


# ---------------- Text encoding -----------------


def format_partition(partition: DecoratedOSP) -> str:
    """Canonical text form, e.g. ``{1,5,6}_2|{2,9}_1|{4,10,12}_1|{3,7,8,11}_3``."""

    return "|".join(
        "{" + ",".join(str(e) for e in block) + "}_" + str(decoration)
        for block, decoration in zip(partition.blocks, partition.decorations)
    )


def parse_partition(text: str, n: int | None = None) -> DecoratedOSP:
    """Parse the canonical text form; ``n`` defaults to the largest element."""

    blocks: list[tuple[int, ...]] = []
    decorations: list[int] = []
    for chunk in text.strip().split("|"):
        match = _BLOCK_RE.fullmatch(chunk.strip())
        if match is None:
            raise EncodingError(f"malformed block {chunk!r} in {text!r}")
        blocks.append(tuple(int(e) for e in match.group(1).split(",")))
        decorations.append(int(match.group(2)))
    size = n if n is not None else max(max(block) for block in blocks)
    if size < 1:
        raise EncodingError(f"ground set size must be positive in {text!r}")
    return DecoratedOSP(n=size, blocks=tuple(blocks), decorations=tuple(decorations))
