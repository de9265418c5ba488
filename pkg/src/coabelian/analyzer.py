"""Invariants of kernels of maps from products of surface groups onto Z^n.

Every public function first normalizes its input: a non-surjective map is
rewritten in coordinates for its image lattice (a free abelian group), which
leaves the kernel untouched and makes the surjectivity hypotheses of the
underlying theorems available. The effective rank n' is the rank of the
concatenated block matrix.

Index sets in public signatures, witnesses, and JSON output are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .intmatrix import IntMatrix, elementary_divisors, hstack, rank
from .lattice import (Lattice, image_lattice, kernel_lattice, lattice_index,
                      lattice_intersection, lattice_sum, preimage_lattice,
                      solve_in_basis)
from .model import DEGENERATE, FamilySpec, ProductHom, build_hom_from_family

EXACT = "Exact"
FINITE_INDEX = "FiniteIndex"
INFINITE_INDEX = "InfiniteIndex"


@dataclass(frozen=True)
class Certificate:
    claim: str
    justification: str
    data: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {"claim": self.claim, "justification": self.justification,
                "data": self.data}


@dataclass(frozen=True)
class FactorStatus:
    factor: int  # 1-based
    status: str  # Exact | FiniteIndex | InfiniteIndex
    index: int | None = None  # set exactly when status == FiniteIndex


@dataclass(frozen=True)
class DeficiencyWitness:
    subset: tuple[int, ...]  # 1-based, sorted
    rank_of_blocks: int


@dataclass(frozen=True)
class Finiteness:
    kind: str  # F_infinity | ExactType | NotFinitelyGenerated
    m: int | None = None


@dataclass(frozen=True)
class Betti:
    kind: str  # Value | UnknownByCriteria
    value: int | None = None


@dataclass(frozen=True)
class Kahler:
    kind: str  # NotKahler | Kahler | Unknown
    reason: str | None = None  # primary obstruction when kind == NotKahler
    # every applicable obstruction; the primary reason is listed first
    reasons: tuple[str, ...] = ()


@dataclass(frozen=True)
class Irreducibility:
    kind: str  # Irreducible | Reducible | Unknown
    partition: tuple[tuple[int, ...], tuple[int, ...]] | None = None


@dataclass(frozen=True)
class KernelProjection:
    """Abelianized image of the projection of the kernel to the factors in T."""
    lattice: Lattice
    index: int | None  # None means infinite


@dataclass(frozen=True)
class ParityWitness:
    applicable: bool
    failing_block: int | None = None
    lattice: Lattice | None = None
    index: int | None = None
    certificate: Certificate | None = None


def normalize(h: ProductHom) -> tuple[ProductHom, int]:
    """Rewrite h in coordinates for its image lattice; returns (h', n').

    The image of the concatenated matrix is a free abelian subgroup of the
    target, so this is a lossless change of coordinates: h' is surjective
    onto Z^n' and has the same kernel lattice as h. Idempotent.
    """
    image = image_lattice(h.concatenated())
    n_prime = image.rank
    if image.is_full:
        return h, n_prime
    new_blocks = []
    for block in h.blocks:
        cols = []
        for j in range(block.cols):
            coeffs = solve_in_basis(image, tuple(block.data[i][j] for i in range(block.rows)))
            assert coeffs is not None  # every column lies in the image by definition
            cols.append(coeffs)
        new_blocks.append(IntMatrix.from_rows(
            [[c[i] for c in cols] for i in range(n_prime)], cols=block.cols))
    return ProductHom(h.genera, n_prime, tuple(new_blocks)), n_prime


def _stack(h: ProductHom, indices: tuple[int, ...]) -> IntMatrix:
    """Concatenated blocks over a 0-based index tuple (empty → n' x 0)."""
    return hstack([h.blocks[i] for i in indices], rows=h.target_rank)


def fullness(h: ProductHom) -> Certificate:
    """The kernel meets every factor nontrivially, always."""
    return Certificate(
        claim="Full",
        justification="the target is abelian and each surface group of genus >= 2 "
                      "is non-abelian, so every factor's commutator subgroup is a "
                      "nontrivial subgroup of the kernel",
        data={"genera": list(h.genera)})


def projection_of_kernel(h: ProductHom, t: tuple[int, ...] | list[int]) -> KernelProjection:
    """Image of the kernel's projection to the factors in T (1-based, nonempty),
    described on abelianizations: the preimage under A_T of the image of the
    complementary blocks."""
    h, _ = normalize(h)
    t = tuple(sorted(set(t)))
    if not t:
        raise ValueError("T must be nonempty")
    if t[0] < 1 or t[-1] > h.num_factors:
        raise ValueError("T out of range")
    t0 = tuple(i - 1 for i in t)
    comp = tuple(i for i in range(h.num_factors) if i not in t0)
    a_t = _stack(h, t0)
    target_image = image_lattice(_stack(h, comp))  # zero lattice when comp empty
    lat = preimage_lattice(a_t, target_image)
    return KernelProjection(lattice=lat, index=lattice_index(lat))


def subdirectness(h: ProductHom) -> tuple[FactorStatus, ...]:
    """Per-factor status of the kernel's projections on abelianizations."""
    h, _ = normalize(h)
    out = []
    for i in range(1, h.num_factors + 1):
        proj = projection_of_kernel(h, (i,))
        if proj.lattice.is_full:
            out.append(FactorStatus(i, EXACT))
        elif proj.index is not None:
            out.append(FactorStatus(i, FINITE_INDEX, proj.index))
        else:
            out.append(FactorStatus(i, INFINITE_INDEX))
    return tuple(out)


def deficiency_profile(h: ProductHom) -> tuple[int | None, tuple[DeficiencyWitness, ...]]:
    """(D, witnesses): D is the largest size of an index set S with
    rank(A_S) < n'. Deficiency is downward-closed, so sizes are searched in
    decreasing order; the lexicographically smallest witness of size D is
    returned. D is None when n' = 0 (no deficient sets exist)."""
    h, n_prime = normalize(h)
    if n_prime == 0:
        return None, ()
    r = h.num_factors
    for size in range(r - 1, -1, -1):  # the full set has rank n', never deficient
        for subset in combinations(range(r), size):
            rk = rank(_stack(h, subset))
            if rk < n_prime:
                witness = DeficiencyWitness(tuple(i + 1 for i in subset), rk)
                return size, (witness,)
    raise AssertionError("empty set is deficient whenever n' >= 1")


def finiteness_type(h: ProductHom) -> tuple[Finiteness, tuple[Certificate, ...]]:
    h, n_prime = normalize(h)
    r = h.num_factors
    if n_prime == 0:
        return Finiteness("F_infinity"), (Certificate(
            claim="type F_infinity",
            justification="the map is trivial, so the kernel is the whole product "
                          "of surface groups, which is of type F_infinity"),)
    d, witnesses = deficiency_profile(h)
    assert d is not None
    m = r - d - 1
    if m <= 0:
        w = witnesses[0]
        return Finiteness("NotFinitelyGenerated"), (Certificate(
            claim="not finitely generated",
            justification="the blocks outside a deficient index set of size r-1 "
                          "have image of infinite index, so the kernel does not "
                          "even virtually surject onto single factors",
            data={"deficient_subset": list(w.subset),
                  "rank_of_blocks": w.rank_of_blocks}),)
    w = witnesses[0]
    upper = Certificate(
        claim=f"not of type F_{m + 1}",
        justification="the blocks indexed by the complement of the witness have "
                      f"image of infinite index in Z^{n_prime}, so the kernel does "
                      f"not virtually surject onto some ({m + 1})-tuple of factors; "
                      "by Kochloukova's criterion a coabelian subgroup of type "
                      f"F_{m + 1} would have to",
        data={"deficient_subset": list(w.subset),
              "rank_of_blocks": w.rank_of_blocks})
    if m == 1:
        lower = Certificate(
            claim="finitely generated",
            justification="every (r-1)-subset of blocks has full rank, so the "
                          "kernel virtually surjects onto every single factor and "
                          "is therefore finitely generated")
    else:
        lower = Certificate(
            claim=f"of type F_{m}",
            justification=f"every index set of size {m} has complement of full rank "
                          f"{n_prime}, so the kernel virtually surjects onto every "
                          f"{m}-tuple of factors; by the converse direction of "
                          "Kochloukova's criterion, valid for virtually coabelian "
                          f"subgroups, the kernel is of type F_{m}")
    return Finiteness("ExactType", m), (lower, upper)


def betti_kernel(h: ProductHom) -> tuple[Betti, Certificate | None]:
    """First Betti number of the kernel when one of two sufficient exactness
    conditions holds: (1) rank-one target with exact subdirectness, or
    (2) at least three factors individually surjecting onto the target."""
    h, n_prime = normalize(h)
    total = sum(2 * g for g in h.genera)
    if n_prime == 0:
        return Betti("Value", total), Certificate(
            claim=f"b1 = {total}",
            justification="the kernel is the whole product, whose first Betti "
                          "number is the sum of those of the factors")
    if n_prime == 1 and all(s.status == EXACT for s in subdirectness(h)):
        return Betti("Value", total - 1), Certificate(
            claim=f"b1 = {total - 1}",
            justification="the target has rank one and the kernel is subdirect, "
                          "so the five-term exact sequence in homology gives "
                          "b1(kernel) = sum of 2g_i minus the target rank",
            data={"condition": "rank-one subdirect"})
    surjecting = [i + 1 for i, b in enumerate(h.blocks)
                  if rank(b) == n_prime
                  and all(x == 1 for x in elementary_divisors(b)[:n_prime])]
    if len(surjecting) >= 3:
        return Betti("Value", total - n_prime), Certificate(
            claim=f"b1 = {total - n_prime}",
            justification="at least three factors individually surject onto the "
                          "target, which forces the homology transgression to "
                          "vanish, so b1(kernel) = sum of 2g_i minus the target rank",
            data={"condition": "three surjecting factors",
                  "factors": surjecting[:3]})
    return Betti("UnknownByCriteria"), None


def _family_provenance(h: ProductHom, family: FamilySpec | None) -> bool:
    """True when h was built from a validated family of a Kaehler-producing
    kind (construction preconditions re-checked, blocks compared)."""
    if family is None or family.kind == DEGENERATE:
        return False
    try:
        built = build_hom_from_family(family)
    except ValueError:
        return False
    return built.blocks == h.blocks and built.genera == h.genera


def kahler_verdict(h: ProductHom, family: FamilySpec | None = None
                   ) -> tuple[Kahler, Certificate]:
    raw = h
    h, n_prime = normalize(h)
    betti, _ = betti_kernel(h)
    odd_betti = (betti.kind == "Value" and betti.value is not None
                 and betti.value % 2 == 1)
    reasons = ()
    if n_prime % 2 == 1:
        reasons += ("OddRank",)
    if odd_betti:
        reasons += ("OddBetti",)
    if reasons:
        parts = []
        if "OddRank" in reasons:
            parts.append(
                "the kernel of an epimorphism from a product of surface groups "
                "onto a free abelian group of odd rank is never Kaehler (when "
                "it is not finitely presented it is not Kaehler for independent "
                "reasons)")
        if "OddBetti" in reasons:
            parts.append("Kaehler groups have even first Betti number")
        data: dict = {"effective_rank": n_prime}
        if odd_betti:
            data["betti"] = betti.value
        return Kahler("NotKahler", reasons[0], reasons), Certificate(
            claim="not Kaehler", justification="; and ".join(parts), data=data)
    if _family_provenance(raw, family):
        return Kahler("Kahler"), Certificate(
            claim="Kaehler",
            justification="the kernel is the fundamental group of a compact "
                          "Kaehler manifold, constructed from branched covers of "
                          "elliptic curves that are surjective on fundamental "
                          "groups combined along a vector configuration in "
                          "general position",
            data={"family_kind": family.kind if family else None})
    return Kahler("Unknown"), Certificate(
        claim="Kaehlerness undecided",
        justification="no parity obstruction applies and no validated "
                      "construction certificate is available")


def splitting_search(h: ProductHom, max_factors: int = 12
                     ) -> tuple[Irreducibility, Certificate | None]:
    """Look for a bipartition of the factors across which the kernel splits
    as a direct product: the two image sublattices must intersect trivially
    and sum to the whole target."""
    h, n_prime = normalize(h)
    r = h.num_factors
    if n_prime == 0:
        if r >= 2:
            part = ((1,), tuple(range(2, r + 1)))
            return Irreducibility("Reducible", part), Certificate(
                claim="reducible",
                justification="the kernel is the whole product, which splits "
                              "across any bipartition of the factors",
                data={"partition": [list(part[0]), list(part[1])]})
        return Irreducibility("Unknown"), None  # single factor: nothing to split
    if r > max_factors:
        return Irreducibility("Unknown"), None
    full = Lattice.full(n_prime)
    for size in range(1, r // 2 + 1):
        for left in combinations(range(r), size):
            if 0 not in left and size == r - size:
                continue  # avoid enumerating each balanced bipartition twice
            right = tuple(i for i in range(r) if i not in left)
            im_l = image_lattice(_stack(h, left))
            im_r = image_lattice(_stack(h, right))
            if lattice_intersection(im_l, im_r).rank == 0 and lattice_sum(im_l, im_r) == full:
                part = (tuple(i + 1 for i in left), tuple(i + 1 for i in right))
                return Irreducibility("Reducible", part), Certificate(
                    claim="reducible",
                    justification="the images of the two groups of blocks are "
                                  "complementary sublattices of the target, so the "
                                  "kernel is the direct product of the kernels of "
                                  "the two restrictions",
                    data={"partition": [list(part[0]), list(part[1])]})
    return Irreducibility("Unknown"), None


def irreducibility(h: ProductHom, family: FamilySpec | None = None
                   ) -> tuple[Irreducibility, Certificate | None]:
    """Reducible when an explicit splitting exists; Irreducible under a
    sufficient criterion (exact type F_m with m >= 2, virtual subdirectness,
    no factor mapped to zero, and failure of virtual surjection onto every
    2m-tuple); Unknown otherwise."""
    h, n_prime = normalize(h)
    split, cert = splitting_search(h)
    if split.kind == "Reducible":
        return split, cert
    fin, _ = finiteness_type(h)
    if fin.kind != "ExactType" or fin.m is None or fin.m < 2:
        return Irreducibility("Unknown"), None
    m = fin.m
    if any(s.status == INFINITE_INDEX for s in subdirectness(h)):
        return Irreducibility("Unknown"), None
    if any(b.is_zero() for b in h.blocks):
        return Irreducibility("Unknown"), None
    r = h.num_factors
    for t in combinations(range(r), 2 * m) if 2 * m <= r else ():
        comp = tuple(i for i in range(r) if i not in t)
        if rank(_stack(h, comp)) == n_prime:
            return Irreducibility("Unknown"), None  # kernel virtually surjects onto this 2m-tuple
    return Irreducibility("Irreducible"), Certificate(
        claim="irreducible",
        justification=f"the kernel is of type F_{m} but not F_{m + 1} with m >= 2, "
                      "is virtually subdirect, meets every factor in an infinite "
                      "subgroup, and does not virtually surject onto any 2m-tuple "
                      "of factors; a finite-index direct-product decomposition "
                      "would force one of these to fail",
        data={"m": m})


def even_betti_witness(h: ProductHom,
                       partition: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
                       ) -> ParityWitness:
    """Parity certificate from a three-block partition of the factors: when
    each block's image has full rank, the triple intersection of the image
    lattices has finite index, and passing to the corresponding finite-index
    subgroup evens out the first Betti number. No numeric b1 is claimed."""
    h, n_prime = normalize(h)
    r = h.num_factors
    seen = [i for block in partition for i in block]
    if sorted(seen) != list(range(1, r + 1)):
        raise ValueError("partition blocks must be disjoint and cover all factors")
    if n_prime == 0:
        return ParityWitness(True, lattice=Lattice.full(0), index=1,
                             certificate=Certificate(
                                 claim="even first Betti number witness",
                                 justification="the kernel is the whole product; "
                                               "its first Betti number is an even "
                                               "sum of 2g_i"))
    lats = []
    for pos, block in enumerate(partition):
        idx = tuple(i - 1 for i in block)
        if rank(_stack(h, idx)) < n_prime:
            return ParityWitness(False, failing_block=pos + 1)
        lats.append(image_lattice(_stack(h, idx)))
    lat = lattice_intersection(lattice_intersection(lats[0], lats[1]), lats[2])
    index = lattice_index(lat)
    assert index is not None  # three full-rank lattices intersect in full rank
    cert = Certificate(
        claim="even first Betti number witness",
        justification="each of the three groups of factors surjects onto a "
                      "finite-index sublattice, and their common sublattice "
                      "yields a finite-index subgroup fibering in three "
                      "independent ways over tori; the first Betti number of "
                      "that subgroup is even",
        data={"index": index,
              "lattice_basis": [list(row) for row in lat.basis.data]})
    return ParityWitness(True, lattice=lat, index=index, certificate=cert)


def three_factor_classify(h: ProductHom) -> tuple[str, Certificate]:
    """Classification labels for maps from a product of exactly three
    surface groups."""
    if h.num_factors != 3:
        raise ValueError("classification requires exactly three factors")
    h, n_prime = normalize(h)
    if n_prime == 0:
        return "WholeProduct", Certificate(
            claim="kernel is the whole product",
            justification="the map is trivial")
    split, _ = splitting_search(h)
    if split.kind == "Reducible":
        return "VirtuallyProduct", Certificate(
            claim="kernel is a direct product across a bipartition",
            justification="the images of the two groups of blocks are "
                          "complementary sublattices",
            data={"partition": [list(p) for p in (split.partition or ())]})
    if n_prime % 2 == 1:
        return "OddRankObstruction", Certificate(
            claim="coabelian of odd rank, hence not Kaehler",
            justification="the classification of subgroups of products of three "
                          "surface groups leaves only the coabelian cases, and "
                          "odd rank obstructs Kaehlerness",
            data={"effective_rank": n_prime})
    return "VirtuallyCoabelianEvenRank", Certificate(
        claim="virtually coabelian of even rank",
        justification="the classification of subgroups of products of three "
                      "surface groups places irreducible coabelian kernels of "
                      "even rank in this case",
        data={"effective_rank": n_prime})


@dataclass(frozen=True)
class AnalysisReport:
    effective_rank: int
    surjective_onto_Zn: bool
    fullness: Certificate
    subdirectness: tuple[FactorStatus, ...]
    max_deficient_size: int | None
    witnesses: tuple[DeficiencyWitness, ...]
    finiteness: Finiteness
    betti: Betti
    coabelian_rank: int
    kahler: Kahler
    irreducibility: Irreducibility
    certificates: tuple[Certificate, ...]

    def to_json_dict(self) -> dict:
        sub = []
        for s in self.subdirectness:
            entry = {"factor": s.factor, "status": s.status}
            if s.status == FINITE_INDEX:
                entry["index"] = s.index
            sub.append(entry)
        fin: dict = {"kind": self.finiteness.kind}
        if self.finiteness.kind == "ExactType":
            fin["m"] = self.finiteness.m
        betti: dict = {"kind": self.betti.kind}
        if self.betti.kind == "Value":
            betti["value"] = self.betti.value
        kahler: dict = {"kind": self.kahler.kind}
        if self.kahler.reason is not None:
            kahler["reason"] = self.kahler.reason
            kahler["reasons"] = list(self.kahler.reasons)
        irr: dict = {"kind": self.irreducibility.kind}
        if self.irreducibility.partition is not None:
            irr["partition"] = [list(p) for p in self.irreducibility.partition]
        return {
            "effective_rank": self.effective_rank,
            "fullness": self.fullness.claim,
            "subdirectness": sub,
            "max_deficient_size": self.max_deficient_size,
            "witnesses": [{"subset": list(w.subset), "rank_of_blocks": w.rank_of_blocks}
                          for w in self.witnesses],
            "finiteness": fin,
            "betti": betti,
            "kahler": kahler,
            "irreducibility": irr,
            "certificates": [c.to_json_dict() for c in self.certificates],
        }


def analyze(h: ProductHom, family: FamilySpec | None = None) -> AnalysisReport:
    """Full report on the kernel of h, with certificates for every verdict."""
    surjective = image_lattice(h.concatenated()).is_full
    hn, n_prime = normalize(h)
    full_cert = fullness(hn)
    sub = subdirectness(hn)
    d, witnesses = deficiency_profile(hn)
    fin, fin_certs = finiteness_type(hn)
    betti, betti_cert = betti_kernel(hn)
    kahler, kahler_cert = kahler_verdict(h, family)
    irr, irr_cert = irreducibility(hn, family)
    certs = [full_cert, *fin_certs]
    if betti_cert is not None:
        certs.append(betti_cert)
    certs.append(kahler_cert)
    if irr_cert is not None:
        certs.append(irr_cert)
    return AnalysisReport(
        effective_rank=n_prime,
        surjective_onto_Zn=surjective,
        fullness=full_cert,
        subdirectness=sub,
        max_deficient_size=d,
        witnesses=witnesses,
        finiteness=fin,
        betti=betti,
        coabelian_rank=n_prime,
        kahler=kahler,
        irreducibility=irr,
        certificates=tuple(certs),
    )
