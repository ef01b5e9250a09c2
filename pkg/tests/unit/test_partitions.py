# SPDX-License-Identifier: MPL-2.0
from __future__ import annotations

import pytest

from ospwind.errors import (
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
    UnknownElements,
)
from ospwind.ehrhart import eulerian
from ospwind.models import DecoratedOSP, FamilySpec
from ospwind.partitions import (
    count_admissible,
    enumerate_partitions,
    format_partition,
    grading_histogram,
    is_admissible,
    modular_section,
    modular_section_layers,
    parse_partition,
    position_labels,
    unwind,
    validate,
    winding_classes,
    winding_data,
    winding_vector,
)

TWELVE_ELEMENT_PARTITION = "{1,5,6}_2|{2,9}_1|{4,10,12}_1|{3,7,8,11}_3"


def _osp(n: int, blocks, decorations) -> DecoratedOSP:
    return DecoratedOSP(n=n, blocks=tuple(map(tuple, blocks)), decorations=tuple(decorations))


def test_validate_accepts_canonical_partition() -> None:
    validate(parse_partition(TWELVE_ELEMENT_PARTITION))


@pytest.mark.parametrize(
    ("partition", "error"),
    [
        (_osp(3, [[1, 2], [2, 3]], [1, 1]), OverlappingBlocks),
        (_osp(3, [[1], [2]], [1, 1]), MissingElements),
        (_osp(2, [[1], [2, 3]], [1, 1]), UnknownElements),
        (_osp(2, [[1, 2], []], [1, 1]), EmptyBlock),
        (_osp(2, [[1], [2]], [1, 0]), NonPositiveDecoration),
        (_osp(2, [[2], [1]], [1, 1]), NotCanonical),
    ],
)
def test_validate_reports_each_violation(partition: DecoratedOSP, error: type[Exception]) -> None:
    with pytest.raises(error):
        validate(partition)


def test_hypersimplex_admissibility_needs_decoration_below_block_size() -> None:
    family = FamilySpec.hypersimplex(2, 2)

    assert is_admissible(_osp(4, [[1, 2], [3, 4]], [1, 1]), family)
    assert not is_admissible(_osp(4, [[1], [2, 3, 4]], [1, 1]), family)
    assert not is_admissible(_osp(4, [[1, 2, 3, 4]], [1]), family)


def test_simplex_admissibility_allows_singletons_below_r() -> None:
    family = FamilySpec.dilated_simplex(3, 3)

    assert is_admissible(_osp(3, [[1], [2], [3]], [1, 1, 1]), family)
    assert is_admissible(_osp(3, [[1], [2, 3]], [2, 1]), family)
    assert not is_admissible(_osp(3, [[1], [2, 3]], [3, 0]), family)
    assert not is_admissible(_osp(3, [[1, 2], [3]], [0, 3]), family)


def test_hypersimplex_enumeration_order() -> None:
    rendered = [format_partition(p) for p in enumerate_partitions(FamilySpec.hypersimplex(2, 2))]

    assert rendered == [
        "{1,2,3,4}_2",
        "{1,2}_1|{3,4}_1",
        "{1,3}_1|{2,4}_1",
        "{1,4}_1|{2,3}_1",
    ]


def test_enumeration_is_deterministic() -> None:
    family = FamilySpec.cube_slice(2, 3, 3)

    assert list(enumerate_partitions(family)) == list(enumerate_partitions(family))


@pytest.mark.parametrize(("a", "b"), [(1, 1), (2, 2), (2, 3), (3, 3), (2, 5), (4, 3)])
def test_hypersimplex_count_is_eulerian(a: int, b: int) -> None:
    family = FamilySpec.hypersimplex(a, b)
    partitions = list(enumerate_partitions(family))

    assert len(partitions) == eulerian(a + b - 1, a - 1)
    assert count_admissible(family) == len(partitions)
    assert len(set(partitions)) == len(partitions)


@pytest.mark.parametrize(("r", "n"), [(2, 2), (3, 3), (2, 4), (4, 3)])
def test_simplex_count_is_power_of_r(r: int, n: int) -> None:
    family = FamilySpec.dilated_simplex(r, n)

    assert count_admissible(family) == r ** (n - 1)
    assert sum(1 for _ in enumerate_partitions(family)) == r ** (n - 1)


def test_every_enumerated_partition_is_valid_and_admissible() -> None:
    family = FamilySpec.cube_slice(3, 3, 4)

    for partition in enumerate_partitions(family):
        validate(partition)
        assert is_admissible(partition, family)
        assert 1 in partition.blocks[0]


def test_twelve_element_partition_winds_five_times() -> None:
    partition = parse_partition(TWELVE_ELEMENT_PARTITION)
    family = FamilySpec.hypersimplex(7, 5)

    data = winding_vector(partition, family)

    assert data.positions == (0, 2, 4, 3, 0, 0, 4, 4, 2, 3, 4, 3)
    assert data.winding_vector == (2, 2, 6, 4, 0, 4, 0, 5, 1, 1, 6, 4)
    assert data.level == 35
    assert data.winding_number == 5


def test_single_block_has_zero_winding() -> None:
    data = winding_data(_osp(3, [[1, 2, 3]], [2]), 2)

    assert data.winding_vector == (0, 0, 0)
    assert data.winding_number == 0


def test_position_labels_need_matching_modulus() -> None:
    with pytest.raises(ModulusMismatch):
        position_labels(_osp(2, [[1], [2]], [1, 1]), 3)


def test_winding_vector_rejects_inadmissible_partition() -> None:
    with pytest.raises(NotAdmissible):
        winding_vector(_osp(4, [[1], [2, 3, 4]], [1, 1]), FamilySpec.hypersimplex(2, 2))


def test_unwind_inverts_the_twelve_element_partition() -> None:
    partition = parse_partition(TWELVE_ELEMENT_PARTITION)

    assert unwind((2, 2, 6, 4, 0, 4, 0, 5, 1, 1, 6, 4), 7) == partition


@pytest.mark.parametrize(
    ("vector", "modulus", "error"),
    [
        ((1, 1), 3, LevelNotDivisible),
        ((3, 0), 3, NoPreimage),
        ((), 3, NoPreimage),
        ((0, 0), 0, NoPreimage),
    ],
)
def test_unwind_rejects_vectors_without_preimage(vector, modulus, error) -> None:
    with pytest.raises(error):
        unwind(vector, modulus)


def test_grading_histogram_of_small_hypersimplices() -> None:
    assert grading_histogram(FamilySpec.hypersimplex(2, 2)).trimmed().coeffs == (1, 2, 1)
    assert grading_histogram(FamilySpec.hypersimplex(2, 3)).trimmed().coeffs == (1, 5, 5)


def test_winding_classes_respect_limit_and_order() -> None:
    family = FamilySpec.hypersimplex(2, 3)

    classes = winding_classes(family)
    limited = winding_classes(family, limit=2)

    assert list(classes) == [0, 1, 2]
    assert [len(members) for members in classes.values()] == [1, 5, 5]
    assert [len(members) for members in limited.values()] == [1, 2, 2]
    assert limited[1] == classes[1][:2]


def test_modular_section_size_and_layers() -> None:
    section = modular_section(3, 3)
    layers = modular_section_layers(3, 3)

    assert len(section) == 9
    assert all(sum(point) % 3 == 0 for point in section)
    assert {k: len(v) for k, v in layers.items()} == {0: 1, 1: 7, 2: 1}


def test_modular_section_rejects_bad_parameters() -> None:
    with pytest.raises(InvalidFamily):
        modular_section(0, 3)


def test_parse_partition_round_trips_text() -> None:
    assert format_partition(parse_partition(TWELVE_ELEMENT_PARTITION)) == TWELVE_ELEMENT_PARTITION
    assert parse_partition("{1}_1|{2}_1", n=2).n == 2


@pytest.mark.parametrize("text", ["", "{1,2}", "{1,2}_x", "{1,2}_1|{3", "(1,2)_1"])
def test_parse_partition_rejects_malformed_text(text: str) -> None:
    with pytest.raises(EncodingError):
        parse_partition(text)
