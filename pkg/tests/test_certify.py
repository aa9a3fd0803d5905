"""Partitions, catalogs, ranks, certificates.

Rank computations are cross-checked against a plain rational Gaussian
elimination oracle; partition enumeration against brute force over tuples.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from itertools import product as iter_product

import pytest

from braidcert.certify import (
    Certificate,
    certificate,
    dual_partition,
    exact_rank,
    multiplicity_factor,
    partition_cycles,
    partition_layout,
    partitions,
    scalar_factor_check,
)
from braidcert.chains import parse_cycle
from braidcert.magnus import MagnusExpansion

F = Fraction


# partitions


def brute_partitions(total: int, slots: int) -> set[tuple[int, ...]]:
    return {
        tup
        for tup in iter_product(range(total + 1), repeat=slots)
        if sum(tup) == total and all(a >= b for a, b in zip(tup, tup[1:]))
    }


def test_partitions_match_brute_force():
    for total in range(0, 7):
        for slots in range(0, 5):
            got = partitions(total, slots)
            assert set(got) == brute_partitions(total, slots)
            assert len(set(got)) == len(got)


def test_partitions_are_ordered_largest_first():
    assert partitions(2, 2) == [(2, 0), (1, 1)]
    assert partitions(3, 3) == [(3, 0, 0), (2, 1, 0), (1, 1, 1)]
    assert partitions(4, 2) == [(4, 0), (3, 1), (2, 2)]


def test_dual_partition_counts_tall_parts():
    assert dual_partition((2, 1, 0)) == (2, 1)
    assert dual_partition((3, 3, 1)) == (3, 2, 2)
    assert dual_partition((0, 0)) == ()
    # duality is an involution once zeros are stripped
    for parts in partitions(5, 4):
        stripped = tuple(p for p in parts if p)
        assert tuple(p for p in dual_partition(dual_partition(parts)) if p) == stripped


def test_multiplicity_factor_frozen_values():
    assert multiplicity_factor((1, 1)) == 2
    assert multiplicity_factor((2, 1, 0)) == 1
    assert multiplicity_factor((2, 2, 1)) == 2
    assert multiplicity_factor((3, 3, 3)) == 6
    assert multiplicity_factor((0, 0)) == 1


def test_partition_layout_tiles_the_strands():
    layout = partition_layout((2, 1, 0), 6)
    assert [(e.offset, e.size) for e in layout] == [(0, 3), (3, 2), (5, 1)]
    with pytest.raises(ValueError):
        partition_layout((2, 1), 6)


# rank


def rank_oracle(rows) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    rank = 0
    for col in range(len(rows[0])):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def test_exact_rank_matches_gaussian_oracle():
    rng = random.Random(71)
    for _ in range(60):
        n_rows = rng.randint(1, 5)
        n_cols = rng.randint(1, 6)
        rows = [
            [F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n_cols)]
            for _ in range(n_rows)
        ]
        assert exact_rank(rows) == rank_oracle(rows)


def test_exact_rank_detects_dependent_rows():
    rows = [
        [F(1), F(2), F(3)],
        [F(2), F(4), F(6)],
        [F(0), F(1), F(1)],
    ]
    assert exact_rank(rows) == 2
    assert exact_rank([[F(0), F(0)]]) == 0
    assert exact_rank([]) == 0


# catalogs


def test_partition_cycles_round_trip_through_grammar():
    for parts, n in [((2, 0), 4), ((1, 1), 4), ((2, 1, 0), 6)]:
        for cand in partition_cycles(parts, n, depth=3):
            assert parse_cycle(cand.descriptor, n) == cand.chain
            assert cand.chain.is_cycle()


def test_partition_cycles_priority_order_for_pairs():
    # in a block of three strands the adjacent band generators come first
    cands = partition_cycles((2, 0), 4, depth=3)
    descriptors = [c.descriptor for c in cands]
    assert descriptors[0] == "cross:{3:torus:A(1,2)|twist(3)}"
    assert descriptors[1] == "cross:{3:torus:A(2,3)|twist(3)}"


def test_partition_cycles_depth_limits_count():
    assert len(partition_cycles((2, 0), 4, depth=1)) == 1
    assert len(partition_cycles((2, 0), 4, depth=2)) == 2


# certificates


def test_certificate_small_cases_pass():
    for n, q in [(2, 1), (3, 1), (4, 2)]:
        cert = certificate(n, q)
        assert cert.passed
        assert cert.rank == cert.expected_rank == len(cert.partitions)
        assert not cert.triangular_violations


def test_certificate_q_zero_trivially_passes():
    cert = certificate(3, 0)
    assert cert.passed
    assert cert.partitions == [] and cert.rank == 0


def test_certificate_rejects_bad_degrees():
    with pytest.raises(ValueError):
        certificate(3, 4)
    with pytest.raises(ValueError):
        certificate(3, -1)


def test_certificate_json_is_deterministic():
    a = certificate(4, 2).to_json_dict()
    b = certificate(4, 2).to_json_dict()
    assert json.dumps(a) == json.dumps(b)
    assert a["verdict"] == "pass"
    assert a["triangular_ok"] is True
    assert a["partitions"] == [[2, 0], [1, 1]]
    assert all("/" in entry for row in a["matrix"] for entry in row)


def test_certificate_matrix_row_shape():
    cert = certificate(4, 2)
    n_cycles = sum(len(c) for c in cert.cycles.values())
    n_basis = 6  # increasing pairs in four letters
    assert all(len(row) == n_cycles * n_basis for row in cert.matrix)


# the restriction scalar


def test_scalar_factor_on_singleton_partition():
    rng = random.Random(72)
    theta = MagnusExpansion.standard(3, 2)
    ok, witnesses = scalar_factor_check(theta, (2,), 3, rng)
    assert ok
    assert any(not left.is_zero() for left, _ in witnesses)


def test_scalar_factor_sees_the_repeat_factor_two():
    # lambda = (1,1): the restriction equals twice the cup of the pullbacks
    rng = random.Random(73)
    theta = MagnusExpansion.standard(4, 2)
    ok, witnesses = scalar_factor_check(theta, (1, 1), 4, rng)
    assert ok
    assert any(not left.is_zero() for left, _ in witnesses)
    # dropping the factor must break the identity on some witness
    from braidcert.cochains import (
        block_restrict,
        cup,
        hbar_cochain,
        hbar_partition_cochain,
        projection_pullback,
        unit_cochain,
    )
    from braidcert.certify import partition_layout as layout_of
    from braidcert.chains import pair, torus_cycle

    layout = layout_of((1, 1), 4)
    lhs = block_restrict(hbar_partition_cochain(theta, (1, 1)), layout)
    rhs = cup(
        projection_pullback(hbar_cochain(theta, 1, exterior=True), 0, layout),
        projection_pullback(hbar_cochain(theta, 1, exterior=True), 1, layout),
    )
    from braidcert.braids import pure_gen_braid
    from braidcert.cochains import GroupElement, ProductElement

    a = ProductElement(
        [GroupElement.from_braid(pure_gen_braid(2, 1, 2)), GroupElement.identity(2)],
        layout,
    )
    b = ProductElement(
        [GroupElement.identity(2), GroupElement.from_braid(pure_gen_braid(2, 1, 2))],
        layout,
    )
    z = torus_cycle([a, b])
    assert pair(lhs, z) == 2 * pair(rhs, z)
    assert pair(lhs, z) != pair(rhs, z)
