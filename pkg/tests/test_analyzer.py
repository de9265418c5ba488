"""Analyzer behaviour on the worked examples plus structural invariants."""

from itertools import combinations

import pytest

from coabelian.analyzer import (analyze, betti_kernel, deficiency_profile,
                                even_betti_witness, finiteness_type, fullness,
                                irreducibility, kahler_verdict, normalize,
                                projection_of_kernel, splitting_search,
                                subdirectness, three_factor_classify)
from coabelian.intmatrix import IntMatrix, hstack, rank
from coabelian.lattice import Lattice, kernel_lattice
from coabelian.forge import (make_degenerate_family, make_extended_family,
                             make_generic_family)
from coabelian.model import ProductHom, build_hom_from_family


def M(rows):
    return IntMatrix.from_rows(rows, cols=len(rows[0]))


def rank_one_hom(genera):
    """Surjection onto Z, every block [1 0 1 0 ...]: subdirect, n' = 1."""
    return ProductHom(tuple(genera), 1,
                      tuple(M([[1, 0] * g]) for g in genera))


GENERIC24 = make_generic_family(2, 4)


def test_normalize_surjective_is_identity():
    h = build_hom_from_family(GENERIC24)
    hn, n = normalize(h)
    assert hn == h and n == 4


def test_normalize_drops_zero_rows():
    blocks = (M([[1, 0, 1, 0], [0, 0, 0, 0]]),)
    hn, n = normalize(ProductHom((2,), 2, blocks))
    assert n == 1
    assert hn.blocks[0] == M([[1, 0, 1, 0]])


def test_normalize_finite_index_image_preserves_kernel():
    # image = span{2e1, e1+2e2}, index 4 in Z^2
    blocks = (M([[2, 0, 1, 0], [0, 0, 2, 0]]),)
    h = ProductHom((2,), 2, blocks)
    hn, n = normalize(h)
    assert n == 2
    assert kernel_lattice(hn.concatenated()) == kernel_lattice(h.concatenated())
    # idempotent
    assert normalize(hn)[0] == hn


def test_fullness_always():
    assert fullness(build_hom_from_family(GENERIC24)).claim == "Full"


def test_projection_full_set_is_kernel():
    h = build_hom_from_family(GENERIC24)
    proj = projection_of_kernel(h, (1, 2, 3, 4))
    assert proj.lattice == kernel_lattice(h.concatenated())
    assert proj.index is None  # n' >= 1 makes the kernel infinite index


def test_projection_rejects_bad_input():
    h = build_hom_from_family(GENERIC24)
    with pytest.raises(ValueError):
        projection_of_kernel(h, ())
    with pytest.raises(ValueError):
        projection_of_kernel(h, (0,))


def test_subdirectness_rank_one_hom():
    statuses = subdirectness(rank_one_hom((2, 2, 2)))
    assert all(s.status == "Exact" for s in statuses)


def test_subdirectness_single_factor():
    h = build_hom_from_family(make_generic_family(1, 3))
    # restrict to one factor: projection of kernel has infinite-index image
    single = ProductHom(h.genera[:1], h.target_rank, h.blocks[:1])
    assert subdirectness(single)[0].status == "InfiniteIndex"


def test_deficiency_generic_24():
    h = build_hom_from_family(GENERIC24)
    d, witnesses = deficiency_profile(h)
    assert d == 1
    assert witnesses[0].subset == (1,)  # lex-smallest maximal witness
    assert witnesses[0].rank_of_blocks == 2


def test_deficiency_extended():
    h = build_hom_from_family(make_extended_family(2, 5))
    d, witnesses = deficiency_profile(h)
    assert d == 2
    assert witnesses[0].subset == (1, 2)


def test_deficiency_downward_closed():
    for spec in (GENERIC24, make_extended_family(2, 5),
                 make_degenerate_family(2, 5, (3, 1, 1))):
        h, n = normalize(build_hom_from_family(spec))
        _, witnesses = deficiency_profile(h)
        for w in witnesses:
            for size in range(len(w.subset)):
                for sub in combinations(w.subset, size):
                    idx = tuple(i - 1 for i in sub)
                    assert rank(hstack([h.blocks[i] for i in idx],
                                       rows=h.target_rank)) < n


def test_deficiency_trivial_map():
    h = ProductHom((2, 2), 0, (IntMatrix.zeros(0, 4), IntMatrix.zeros(0, 4)))
    assert deficiency_profile(h) == (None, ())
    fin, _ = finiteness_type(h)
    assert fin.kind == "F_infinity"


def test_finiteness_generic_and_extended():
    fin, certs = finiteness_type(build_hom_from_family(GENERIC24))
    assert (fin.kind, fin.m) == ("ExactType", 2)
    claims = {c.claim for c in certs}
    assert "of type F_2" in claims and "not of type F_3" in claims

    fin, _ = finiteness_type(build_hom_from_family(make_extended_family(1, 4)))
    assert (fin.kind, fin.m) == ("ExactType", 2)


def test_finiteness_edge_m1_certified_as_finitely_generated():
    fin, certs = finiteness_type(
        build_hom_from_family(make_degenerate_family(2, 5, (3, 1, 1))))
    assert (fin.kind, fin.m) == ("ExactType", 1)
    assert any(c.claim == "finitely generated" for c in certs)


def test_not_finitely_generated():
    # single factor onto Z: the empty set is deficient, D = r-1 = 0, m = 0
    fin, _ = finiteness_type(rank_one_hom((2,)))
    assert fin.kind == "NotFinitelyGenerated"


def test_betti_rank_one_subdirect():
    betti, cert = betti_kernel(rank_one_hom((2, 2, 2)))
    assert (betti.kind, betti.value) == ("Value", 11)
    assert cert is not None and cert.data["condition"] == "rank-one subdirect"


def test_betti_unknown_for_generic24():
    # blocks have rank 2 < 4: neither criterion applies
    betti, _ = betti_kernel(build_hom_from_family(GENERIC24))
    assert betti.kind == "UnknownByCriteria"


def test_betti_three_surjecting_factors():
    blocks = tuple(M([[1, 0, 0, 0], [0, 0, 1, 0]]) for _ in range(3))
    betti, cert = betti_kernel(ProductHom((2, 2, 2), 2, blocks))
    assert (betti.kind, betti.value) == ("Value", 10)
    assert cert is not None and cert.data["condition"] == "three surjecting factors"


def test_betti_trivial_map():
    h = ProductHom((2, 3), 0, (IntMatrix.zeros(0, 4), IntMatrix.zeros(0, 6)))
    betti, _ = betti_kernel(h)
    assert betti.value == 10


def test_kahler_odd_rank():
    h = ProductHom((2, 2, 2), 3,
                   tuple(M([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
                         for _ in range(3)))
    verdict, _ = kahler_verdict(h)
    assert (verdict.kind, verdict.reason) == ("NotKahler", "OddRank")


def test_kahler_odd_betti_both_reasons_for_rank_one():
    verdict, cert = kahler_verdict(rank_one_hom((2, 2, 2)))
    assert verdict.kind == "NotKahler"
    assert verdict.reason == "OddRank"  # odd-rank rule fires first
    assert "OddBetti" in verdict.reasons
    assert cert.data["betti"] == 11


def test_kahler_from_family_provenance():
    h = build_hom_from_family(GENERIC24)
    assert kahler_verdict(h, GENERIC24)[0].kind == "Kahler"
    assert kahler_verdict(h)[0].kind == "Unknown"  # no provenance, no verdict
    # degenerate families never certify Kaehlerness
    deg = make_degenerate_family(2, 6, (3, 1, 1, 1))
    hd = build_hom_from_family(deg)
    assert kahler_verdict(hd, deg)[0].kind == "Unknown"


def block_diagonal_hom():
    up = M([[1, 0, 0, 0], [0, 0, 0, 0]])
    down = M([[0, 0, 0, 0], [1, 0, 0, 0]])
    return ProductHom((2, 2, 2, 2), 2, (up, up, down, down))


def test_splitting_block_diagonal():
    verdict, _ = splitting_search(block_diagonal_hom())
    assert verdict.kind == "Reducible"
    assert verdict.partition == ((1, 2), (3, 4))


def test_splitting_trivial_map():
    h = ProductHom((2, 2), 0, (IntMatrix.zeros(0, 4), IntMatrix.zeros(0, 4)))
    verdict, _ = splitting_search(h)
    assert verdict.kind == "Reducible"


def test_no_split_for_generic():
    verdict, _ = splitting_search(build_hom_from_family(GENERIC24))
    assert verdict.kind == "Unknown"


def test_irreducibility_generic():
    verdict, cert = irreducibility(build_hom_from_family(GENERIC24))
    assert verdict.kind == "Irreducible"
    assert cert is not None and cert.data["m"] == 2


def test_irreducibility_unknown_when_tuple_check_passes():
    # triple-repeated basis vector: m = 2 but some 4-tuple has full-rank
    # complement, so the sufficient criterion stays silent
    h = build_hom_from_family(make_degenerate_family(2, 6, (3, 1, 1, 1)))
    verdict, _ = irreducibility(h)
    assert verdict.kind == "Unknown"


def test_even_betti_witness_generic_16():
    h = build_hom_from_family(make_generic_family(1, 6))
    w = even_betti_witness(h, ((1, 2), (3, 4), (5, 6)))
    assert w.applicable
    assert w.index is not None
    assert w.certificate is not None


def test_even_betti_witness_not_applicable():
    h = build_hom_from_family(make_extended_family(2, 5))
    # block {1,2} repeats the same vector: rank 2 < 4
    w = even_betti_witness(h, ((1, 2), (3,), (4, 5)))
    assert not w.applicable and w.failing_block == 1


def test_even_betti_witness_partition_validation():
    h = build_hom_from_family(GENERIC24)
    with pytest.raises(ValueError):
        even_betti_witness(h, ((1, 2), (2, 3), (4,)))


def test_three_factor_classify():
    assert three_factor_classify(
        build_hom_from_family(make_generic_family(1, 3)))[0] == \
        "VirtuallyCoabelianEvenRank"
    assert three_factor_classify(rank_one_hom((2, 2, 2)))[0] == \
        "OddRankObstruction"
    h0 = ProductHom((2, 2, 2), 0, tuple(IntMatrix.zeros(0, 4) for _ in range(3)))
    assert three_factor_classify(h0)[0] == "WholeProduct"
    with pytest.raises(ValueError):
        three_factor_classify(build_hom_from_family(GENERIC24))


def test_report_json_shape():
    report = analyze(build_hom_from_family(GENERIC24), GENERIC24)
    doc = report.to_json_dict()
    assert list(doc) == ["effective_rank", "fullness", "subdirectness",
                         "max_deficient_size", "witnesses", "finiteness",
                         "betti", "kahler", "irreducibility", "certificates"]
    assert doc["finiteness"] == {"kind": "ExactType", "m": 2}
    assert doc["kahler"] == {"kind": "Kahler"}
    assert all(set(c) == {"claim", "justification", "data"}
               for c in doc["certificates"])


def test_subdirect_variant_makes_all_factors_exact():
    spec = make_generic_family(2, 5, subdirect_variant=True)
    statuses = subdirectness(build_hom_from_family(spec))
    assert all(s.status == "Exact" for s in statuses)
