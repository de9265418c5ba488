"""Deterministic generators for the example families.

Vector completion is greedy against a fixed total order on Z^k: vectors with
nonnegative entries come first, ordered by max-norm and then
lexicographically; sign-mixed vectors come after all nonnegative ones. The
inadmissible candidates at each step lie on finitely many hyperplanes, which
never contain the whole nonnegative orthant, so the greedy search only ever
inspects the nonnegative part of the order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .intmatrix import IntMatrix, det
from .model import (DEGENERATE, DPS, EXTENDED, GENERIC, CoverData, FamilySpec,
                    VectorSet, check_property_P_prime)

# safety bound on the max-norm of greedily chosen vectors; generously above
# anything the supported parameter ranges require
_NORM_BOUND = 64


@dataclass(frozen=True)
class GeneratorConfig:
    """Optional prescribed prefix for greedy vector generation.

    The prefix is validated against the relevant admissibility predicate,
    never repaired.
    """

    seed_vectors: tuple[tuple[int, ...], ...] = ()


def _nonneg_candidates(k: int):
    """Nonnegative vectors of Z^k by (max-norm, lexicographic) order."""
    for norm in range(1, _NORM_BOUND + 1):
        for v in product(range(norm + 1), repeat=k):
            if max(v) == norm:
                yield v
    raise AssertionError("candidate norm bound exceeded")


def _every_k_subset_independent(prefix: list[tuple[int, ...]],
                                cand: tuple[int, ...]) -> bool:
    """Admissibility step for property P: every k-subset of prefix+cand that
    contains cand is linearly independent."""
    k = len(cand)
    if all(x == 0 for x in cand):
        return False
    if k == 1:
        return True
    for subset in combinations(prefix, k - 1):
        cols = list(subset) + [cand]
        if det(IntMatrix.from_rows([[c[i] for c in cols] for i in range(k)],
                                   cols=k)) == 0:
            return False
    return True


def _pairwise_independent(prefix: list[tuple[int, ...]],
                          cand: tuple[int, ...]) -> bool:
    """Admissibility step for the extended-family tail: cand is independent
    from every single prefix vector (k = 2)."""
    if all(x == 0 for x in cand):
        return False
    for v in prefix:
        if v[0] * cand[1] - v[1] * cand[0] == 0:
            return False
    return True


def _greedy_extend(k: int, prefix: list[tuple[int, ...]], count: int,
                   admissible) -> list[tuple[int, ...]]:
    out = list(prefix)
    for _ in range(count):
        for cand in _nonneg_candidates(k):
            if admissible(out, cand):
                out.append(cand)
                break
    return out


def _standard_basis(k: int) -> list[tuple[int, ...]]:
    return [tuple(1 if j == i else 0 for j in range(k)) for i in range(k)]


def generate_P_prime(k: int, r: int, cfg: GeneratorConfig | None = None) -> VectorSet:
    """Greedy deterministic vector set with standard-basis prefix satisfying
    property P' (every k-subset linearly independent). A configured seed
    prefix is validated, then completed."""
    if not 1 <= k <= r:
        raise ValueError("need 1 <= k <= r")
    if k == 1:
        # independence of singletons only requires nonzero entries;
        # the least admissible candidate is 1 every time
        prefix = list((cfg.seed_vectors if cfg else ()) or [(1,)])
    else:
        prefix = _standard_basis(k)
        if cfg and cfg.seed_vectors:
            prefix = list(cfg.seed_vectors)
            if prefix[:k] != _standard_basis(k)[:len(prefix)]:
                raise ValueError("seed prefix must start with the standard basis")
            if len(prefix) < k:
                prefix += _standard_basis(k)[len(prefix):]
    for v in prefix:
        if len(v) != k:
            raise ValueError("seed vector of wrong dimension")
    for i, v in enumerate(prefix):
        if not _every_k_subset_independent(prefix[:i], v):
            raise ValueError(f"seed prefix violates property P at position {i + 1}")
    if len(prefix) > r:
        raise ValueError("seed prefix longer than r")
    vectors = _greedy_extend(k, prefix, r - len(prefix),
                             _every_k_subset_independent)
    vs = VectorSet(k, tuple(vectors))
    assert check_property_P_prime(vs)
    return vs


def _default_covers(genera: tuple[int, ...], flagged: set[int]) -> tuple[CoverData, ...]:
    return tuple(CoverData.default(g, pi1_surjective=(i in flagged))
                 for i, g in enumerate(genera))


def _check_genera(genera, r: int) -> tuple[int, ...]:
    genera = tuple(genera) if genera is not None else (2,) * r
    if len(genera) != r or any(g < 2 for g in genera):
        raise ValueError("need one genus >= 2 per factor")
    return genera


def make_generic_family(k: int, r: int, genera=None,
                        cfg: GeneratorConfig | None = None,
                        subdirect_variant: bool = False) -> FamilySpec:
    """Family with a property-P' vector configuration; the first k covers are
    asserted surjective on fundamental groups. With the subdirect variant the
    (k+1)-st vector is the sum of the basis vectors and its cover is flagged
    too, which makes the kernel subdirect on every factor."""
    if not 1 <= k <= r - 2:
        raise ValueError("need 1 <= k <= r-2")
    genera = _check_genera(genera, r)
    if subdirect_variant and not (cfg and cfg.seed_vectors):
        cfg = GeneratorConfig(seed_vectors=tuple(_standard_basis(k)) + ((1,) * k,))
    vs = generate_P_prime(k, r, cfg)
    flagged = set(range(k))
    if subdirect_variant:
        flagged.add(k)
    return FamilySpec(kind=DPS if k == 1 else GENERIC, k=k, r=r,
                      vector_set=vs, covers=_default_covers(genera, flagged))


def make_extended_family(m: int, r: int, genera=None,
                         subdirect_variant: bool = False) -> FamilySpec:
    """Family over Z^4 whose first vector is repeated m times; the remaining
    vectors are pairwise linearly independent. Covers m and m+1 are asserted
    surjective on fundamental groups."""
    if r < 4 or m < 1 or r - m < 3:
        raise ValueError("need r >= 4, m >= 1, r-m >= 3")
    genera = _check_genera(genera, r)
    second = (1, 1) if subdirect_variant else (0, 1)
    prefix = [(1, 0)] * m + [second]
    vectors = _greedy_extend(2, prefix, r - m - 1, _pairwise_independent)
    flagged = {m - 1, m}
    return FamilySpec(kind=EXTENDED, k=2, r=r, m=m,
                      vector_set=VectorSet(2, tuple(vectors)),
                      covers=_default_covers(genera, flagged))


def make_degenerate_family(k: int, r: int, duplicate_profile, genera=None) -> FamilySpec:
    """Family obtained from a property-P' configuration by repeating each
    distinct vector with the given multiplicity. Large repeats create large
    deficient sets and drop the finiteness type below the generic value.
    A profile with no repeats reduces to the generic family."""
    profile = tuple(duplicate_profile)
    if not profile or any(c < 1 for c in profile) or sum(profile) != r:
        raise ValueError("profile must be positive multiplicities summing to r")
    if len(profile) < k:
        raise ValueError("need at least k distinct vectors")
    if all(c == 1 for c in profile) and k <= r - 2:
        return make_generic_family(k, r, genera)
    genera = _check_genera(genera, r)
    distinct = generate_P_prime(k, len(profile)).vectors
    vectors = tuple(v for v, count in zip(distinct, profile) for _ in range(count))
    return FamilySpec(kind=DEGENERATE, k=k, r=r,
                      vector_set=VectorSet(k, vectors),
                      covers=_default_covers(genera, set()))
