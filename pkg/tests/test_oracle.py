import random
from itertools import combinations

import pytest

from coabelian import oracle
from coabelian.analyzer import normalize, projection_of_kernel
from coabelian.forge import make_extended_family, make_generic_family
from coabelian.intmatrix import IntMatrix, rank
from coabelian.lattice import Lattice, image_lattice, lattice_index
from coabelian.model import ProductHom, build_hom_from_family


def M(rows):
    return IntMatrix.from_rows(rows, cols=len(rows[0]))


def test_rank_by_elimination_basics():
    assert oracle.rank_by_elimination(IntMatrix.identity(4)) == 4
    assert oracle.rank_by_elimination(IntMatrix.zeros(3, 2)) == 0
    assert oracle.rank_by_elimination(M([[1, 2], [2, 4]])) == 1


def test_rank_agreement_random():
    rng = random.Random(17)
    for _ in range(200):
        r, c = rng.randint(1, 4), rng.randint(1, 6)
        a = M([[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)])
        assert oracle.rank_by_elimination(a) == rank(a)


def test_index_by_residue_count_examples():
    assert oracle.index_by_residue_count(Lattice.full(2)) == 1
    assert oracle.index_by_residue_count(image_lattice(M([[2, 0], [0, 3]]))) == 6
    assert oracle.index_by_residue_count(image_lattice(M([[2, 0], [1, 2]]))) == 4


def test_index_agreement_random():
    rng = random.Random(23)
    checked = 0
    while checked < 100:
        n = rng.randint(1, 4)
        a = M([[rng.randint(-5, 5) for _ in range(n + 1)] for _ in range(n)])
        lat = image_lattice(a)
        idx = lattice_index(lat)
        if idx is None or idx > oracle.INDEX_BOUND:
            continue
        assert oracle.index_by_residue_count(lat) == idx
        checked += 1


def test_index_oracle_bounds():
    with pytest.raises(oracle.OracleBoundExceeded):
        oracle.index_by_residue_count(Lattice.full(5))
    with pytest.raises(ValueError):
        oracle.index_by_residue_count(image_lattice(M([[1, 2], [2, 4]])))


def test_vsp_agreement_on_families():
    for spec in (make_generic_family(2, 4), make_generic_family(1, 4),
                 make_extended_family(1, 5)):
        h, n = normalize(build_hom_from_family(spec))
        r = h.num_factors
        for size in range(1, r + 1):
            for t in combinations(range(1, r + 1), size):
                slow = oracle.vsp_by_preimage(h, t)
                fast = projection_of_kernel(h, t).index
                assert slow == fast, (spec.kind, t)


def test_vsp_trivial_target():
    h = ProductHom((2, 2), 0, (IntMatrix.zeros(0, 4), IntMatrix.zeros(0, 4)))
    assert oracle.vsp_by_preimage(h, (1,)) == 1
