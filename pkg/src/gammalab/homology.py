"""Group homology with sign-twisted integer coefficients, in degrees up
to four, plus the action of character-preserving automorphisms on it and
the resulting orbit decomposition.

Homology is read off a free resolution after collapsing each differential
through the sign character.  The kernel-modulo-image step presents the
answer on a basis of the kernel lattice; induced maps are solved in that
same basis, which keeps everything exact and keeps automorphism actions
honest homomorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import itertools

from .abelian import AbelianHom, AbelianPresentation
from .errors import IncompatibleInputError, UnsupportedInputError
from .groups import (FiniteGroup, OrientationChar, automorphisms_preserving,
                     DEFAULT_AUT_CAP)
from .intmat import IntMatrix, SNFSolver, kernel_basis
from .resolutions import (DEFAULT_BUDGET, Resolution, chain_resolution,
                          periodic_generator, periodic_resolution)

MAX_DEGREE = 4


def quotient_of_kernel_by_image(d_out: IntMatrix, d_in: IntMatrix) -> AbelianPresentation:
    """Present ``ker(d_out) / im(d_in)`` for a composable pair with
    ``d_out . d_in = 0``."""
    pres, _ = homology_with_basis(d_out, d_in)
    return pres


def homology_with_basis(d_out: IntMatrix,
                        d_in: IntMatrix) -> Tuple[AbelianPresentation, IntMatrix]:
    """As :func:`quotient_of_kernel_by_image`, also returning the kernel
    basis the presentation generators refer to (columns)."""
    if d_out.cols != d_in.rows:
        raise IncompatibleInputError(
            f"maps of shapes {d_out.shape} and {d_in.shape} do not compose")
    if not d_out.mul(d_in).is_zero():
        raise IncompatibleInputError(
            "maps do not compose to zero; not a chain complex")
    basis = kernel_basis(d_out)
    c = basis.cols
    if c == 0:
        if not d_in.is_zero():
            raise IncompatibleInputError(
                "incoming map is nonzero but the kernel is trivial")
        return AbelianPresentation.free(0), basis
    solved = SNFSolver(basis).solve_matrix(d_in)
    if solved is None:
        raise IncompatibleInputError(
            "image does not lie inside the kernel lattice")
    rows = [solved.column(j) for j in range(solved.cols)]
    return AbelianPresentation.from_relation_rows(c, rows), basis


def resolution_for(group: FiniteGroup, length: int, provider: str = "auto",
                   budget: Optional[int] = DEFAULT_BUDGET) -> Resolution:
    """Pick and build a resolution: the periodic one for cyclic groups under
    ``auto``, the chain resolution otherwise."""
    if provider == "auto":
        provider = "cyclic" if group.is_cyclic() else "bar"
    if provider == "cyclic":
        return periodic_resolution(group, length)
    if provider == "bar":
        return chain_resolution(group, length, budget=budget)
    raise UnsupportedInputError(f"unknown resolution provider '{provider}'")


def _check_degree(k: int) -> None:
    if not (0 <= k <= MAX_DEGREE):
        raise UnsupportedInputError(
            f"homology degree {k} is outside the supported range "
            f"0..{MAX_DEGREE}")


def group_homology(group: FiniteGroup, w: OrientationChar, k: int,
                   provider: str = "auto",
                   budget: Optional[int] = DEFAULT_BUDGET,
                   resolution: Optional[Resolution] = None) -> AbelianPresentation:
    """Homology of the group in degree ``k`` with coefficients in the
    integers twisted by the character."""
    _check_degree(k)
    if w.group is not group:
        raise IncompatibleInputError(
            "orientation character belongs to a different group")
    if resolution is None:
        resolution = resolution_for(group, k + 1, provider, budget)
    elif resolution.length < k + 1:
        raise UnsupportedInputError(
            f"resolution of length {resolution.length} cannot compute "
            f"degree {k}; length {k + 1} is needed")
    d_in = resolution.twisted_matrix(k + 1, w)
    if k == 0:
        rows = [d_in.column(j) for j in range(d_in.cols)]
        return AbelianPresentation.from_relation_rows(resolution.ranks[0], rows)
    d_out = resolution.twisted_matrix(k, w)
    return quotient_of_kernel_by_image(d_out, d_in)


def _chain_tuples(group: FiniteGroup, k: int) -> List[Tuple[int, ...]]:
    nonidentity = list(range(1, group.order))
    return list(itertools.product(nonidentity, repeat=k))


def _chain_self_map(group: FiniteGroup, k: int, alpha: Sequence[int]) -> IntMatrix:
    """Degree-``k`` twisted chain map induced by an automorphism on the
    chain resolution: entrywise relabeling of tuples."""
    tuples = _chain_tuples(group, k)
    index = {t: i for i, t in enumerate(tuples)}
    mat = IntMatrix.zeros(len(tuples), len(tuples))
    for j, tup in enumerate(tuples):
        image = tuple(alpha[g] for g in tup)
        mat.data[index[image]][j] = 1
    return mat


def _periodic_self_map(group: FiniteGroup, w: OrientationChar, k: int,
                       alpha: Sequence[int]) -> IntMatrix:
    """Twisted chain map on the periodic resolution for the automorphism
    sending the generator to its ``m``-th power: in degree ``2i`` multiply
    by ``m^i``, in degree ``2i + 1`` additionally by the signed count of a
    length-``m`` geometric sum."""
    t = periodic_generator(group)
    m = None
    for e in range(1, group.order + 1):
        if group.power(t, e) == alpha[t]:
            m = e
            break
    if m is None:
        raise IncompatibleInputError(
            "automorphism does not send the generator to one of its powers")
    scalar = m ** (k // 2)
    if k % 2 == 1:
        scalar *= sum(w(t) ** j for j in range(m))
    return IntMatrix.from_rows([[scalar]], cols=1)


def induced_homology_maps(group: FiniteGroup, w: OrientationChar, k: int,
                          provider: str = "auto",
                          budget: Optional[int] = DEFAULT_BUDGET,
                          aut_cap: int = DEFAULT_AUT_CAP
                          ) -> Tuple[AbelianPresentation, List[AbelianHom]]:
    """The degree-``k`` homology together with the endomorphisms induced by
    every character-preserving automorphism of the group."""
    _check_degree(k)
    if provider == "auto":
        provider = "cyclic" if group.is_cyclic() else "bar"
    resolution = resolution_for(group, k + 1, provider, budget)
    auts = automorphisms_preserving(group, w, cap=aut_cap)
    if provider == "cyclic":
        self_map = lambda alpha: _periodic_self_map(group, w, k, alpha)
    else:
        self_map = lambda alpha: _chain_self_map(group, k, alpha)
    d_in = resolution.twisted_matrix(k + 1, w)
    if k == 0:
        rows = [d_in.column(j) for j in range(d_in.cols)]
        pres = AbelianPresentation.from_relation_rows(resolution.ranks[0], rows)
        homs = [AbelianHom(pres, pres, self_map(alpha)) for alpha in auts]
        return pres, homs
    d_out = resolution.twisted_matrix(k, w)
    pres, basis = homology_with_basis(d_out, d_in)
    homs = []
    solver = SNFSolver(basis) if basis.cols else None
    for alpha in auts:
        if basis.cols == 0:
            homs.append(AbelianHom.identity(pres))
            continue
        moved = self_map(alpha).mul(basis)
        in_basis = solver.solve_matrix(moved)
        if in_basis is None:
            raise IncompatibleInputError(
                "chain map does not preserve the kernel lattice")
        homs.append(AbelianHom(pres, pres, in_basis))
    return pres, homs


@dataclass
class OrbitReport:
    """Orbit decomposition of the torsion of a homology group under sign
    and character-preserving automorphisms.

    Only the (always enumerable) torsion part is partitioned; a nonzero
    ``free_rank`` is reported so callers know sign still identifies ``x``
    with ``-x`` on the rest.
    """

    presentation: AbelianPresentation
    free_rank: int
    automorphism_count: int
    orbit_count: int
    orbits: List[Tuple[Tuple[int, ...], int]]


def homology_orbits(group: FiniteGroup, w: OrientationChar, k: int,
                    provider: str = "auto",
                    budget: Optional[int] = DEFAULT_BUDGET,
                    aut_cap: int = DEFAULT_AUT_CAP) -> OrbitReport:
    """Partition the torsion classes of the degree-``k`` twisted homology
    under negation and induced automorphism action, with orbit sizes and
    canonical-coordinate representatives."""
    pres, homs = induced_homology_maps(group, w, k, provider, budget, aut_cap)
    free_rank = pres.rank
    zeros_free = [0] * free_rank
    vec_of = {}
    for key in pres.enumerate_torsion():
        vec_of[key] = pres.from_canonical(zeros_free, key)
    orbits = []
    seen = set()
    for key in sorted(vec_of):
        if key in seen:
            continue
        stack = [key]
        orbit = set()
        while stack:
            current = stack.pop()
            if current in orbit:
                continue
            orbit.add(current)
            x = vec_of[current]
            images = [[-c for c in x]]
            for hom in homs:
                y = hom.apply(x)
                images.append(y)
                images.append([-c for c in y])
            for y in images:
                yk = pres.to_canonical(y)[1]
                if yk not in orbit:
                    stack.append(yk)
        seen |= orbit
        rep = min(orbit)
        orbits.append((rep, len(orbit)))
    orbits.sort(key=lambda item: item[0])
    return OrbitReport(pres, free_rank, len(homs), len(orbits), orbits)
