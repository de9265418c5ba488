import random

import pytest

from coabelian.intmatrix import IntMatrix
from coabelian.lattice import (AmbientMismatchError, Lattice, contains,
                               image_lattice, kernel_lattice, lattice_index,
                               lattice_intersection, lattice_sum,
                               preimage_lattice, solve_in_basis)


def M(rows):
    return IntMatrix.from_rows(rows, cols=len(rows[0]) if rows else 0)


def test_index_examples():
    assert lattice_index(image_lattice(M([[2, 0], [0, 3]]))) == 6
    assert lattice_index(image_lattice(M([[2, 0], [1, 2]]))) == 4
    assert lattice_index(Lattice.full(3)) == 1
    assert lattice_index(image_lattice(M([[1, 2], [2, 4]]))) is None  # rank 1


def test_canonical_equality():
    # different generating sets of the same lattice compare equal
    l1 = image_lattice(M([[2, 0], [0, 3]]))
    l2 = image_lattice(M([[2, 0, 2], [0, 3, 3]]))
    assert l1 == l2


def test_kernel_is_saturated():
    a = M([[2, 4]])
    k = kernel_lattice(a)
    # kernel of (2 4) is spanned by (2,-1), primitive
    assert k.rank == 1
    assert contains(k, (2, -1)) or contains(k, (-2, 1))
    assert not contains(k, (1, 0))


def test_preimage_of_image_is_everything():
    rng = random.Random(3)
    for _ in range(30):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        a = M([[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)])
        assert preimage_lattice(a, image_lattice(a)) == Lattice.full(c)


def test_sum_intersection_index_multiplicativity():
    rng = random.Random(5)
    checked = 0
    while checked < 20:
        a = M([[rng.randint(-6, 6) for _ in range(2)] for _ in range(2)])
        b = M([[rng.randint(-6, 6) for _ in range(2)] for _ in range(2)])
        la, lb = image_lattice(a), image_lattice(b)
        ia, ib = lattice_index(la), lattice_index(lb)
        if ia is None or ib is None:
            continue
        imeet = lattice_index(lattice_intersection(la, lb))
        ijoin = lattice_index(lattice_sum(la, lb))
        assert imeet is not None and ijoin is not None
        assert ia * ib == imeet * ijoin
        checked += 1


def test_solve_in_basis():
    lat = image_lattice(M([[2, 0], [0, 3]]))
    assert solve_in_basis(lat, (4, 3)) is not None
    assert solve_in_basis(lat, (1, 0)) is None
    coeffs = solve_in_basis(lat, (2, 3))
    assert coeffs is not None
    # reconstruct
    v = [sum(lat.basis.data[i][j] * coeffs[j] for j in range(lat.rank))
         for i in range(2)]
    assert tuple(v) == (2, 3)


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatchError):
        lattice_sum(Lattice.full(2), Lattice.full(3))


def test_zero_and_full():
    z = Lattice.zero(3)
    assert z.rank == 0 and lattice_index(z) is None
    assert lattice_sum(z, Lattice.full(3)) == Lattice.full(3)
    assert lattice_intersection(z, Lattice.full(3)) == z
