"""Finite-rank truncation of multipartite states and convergence sweeps.

A sweep fixes a nested projector family on each side of a bipartition,
truncates the state to growing ranks (n, k), renormalizes, and tracks how
the conditional entropy of the truncated state approaches that of the full
state. Two correlation terms are recorded per step:

* ``h_nk``: relative entropy of the truncated state against the product of
  its OWN marginals (its mutual information).
* ``h_tilde_nk``: relative entropy against the product of the truncated and
  renormalized marginals of the ORIGINAL state.

Their difference equals the sum of the relative entropies between the two
marginal pairs (see :func:`truncation_diagnostics`), so it is nonnegative
and vanishes exactly when truncation commutes with taking marginals
(e.g. rank-aligned truncation of a Schmidt-diagonal state).

:func:`truncate_normalize` returns states in the original space. Sweeps
instead compress each projected factor onto its retained subspace: replacing
P rho P by (V (x) W)^dagger rho (V (x) W) with isometries V, W changes no
eigenvalue of the state, its marginals, or any product of them, so every
entropy commutes with the compression while matrices shrink from
d_A d_B to n k. That keeps full sweeps inside the runtime budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Mapping, Sequence

import numpy as np

from .entropy import relative_entropy, relative_entropy_vs_product, von_neumann_entropy
from .errors import DegenerateTruncationError, PreconditionError, StructuralError
from .states import (
    DensityMatrix,
    LabelSet,
    SubsystemLayout,
    clamped_spectrum,
    partial_trace,
    permute_subsystems,
)
from .tolerances import TAU_LAMBDA

ProjectorMode = Literal["computational", "eigenbasis"]
PROJECTOR_MODES = ("computational", "eigenbasis")


@dataclass(frozen=True)
class ProjectorSequence:
    """Nested family of projectors P_1 <= P_2 <= ... from a fixed orthonormal basis.

    ``basis`` holds the basis as columns; ``isometry(r)`` returns the first r
    columns and ``projector(r)`` the corresponding rank-r projector. Because
    every projector reuses the same leading columns, the family is increasing
    by construction: P_m P_n = P_min(m,n), and P equals the identity at full
    rank.
    """

    basis: np.ndarray

    def __post_init__(self):
        b = np.array(self.basis, dtype=np.complex128, copy=True)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise StructuralError(f"basis must be a square matrix, got shape {b.shape}")
        gram_defect = float(np.max(np.abs(b.conj().T @ b - np.eye(b.shape[0]))))
        if gram_defect > 1e-9:
            raise StructuralError(f"basis columns are not orthonormal (defect {gram_defect:.3e})")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def isometry(self, rank: int) -> np.ndarray:
        rank = int(rank)
        if not 1 <= rank <= self.dim:
            raise PreconditionError(f"rank must be in [1, {self.dim}], got {rank}")
        return self.basis[:, :rank]

    def projector(self, rank: int) -> np.ndarray:
        v = self.isometry(rank)
        return v @ v.conj().T

    @classmethod
    def computational(cls, dim: int) -> "ProjectorSequence":
        """Projectors onto the first r computational (number) basis states."""
        return cls(np.eye(int(dim)))

    @classmethod
    def from_state(cls, rho: DensityMatrix) -> "ProjectorSequence":
        """Projectors onto the top-r eigenvectors of a state (descending eigenvalue)."""
        w, u = clamped_spectrum(rho)
        return cls(u[:, ::-1])


@dataclass(frozen=True)
class TruncationStep:
    """A truncated-normalized state with its retained weight.

    ``ranks`` maps each projected subsystem label to its rank; subsystems
    absent from the map were left untouched. ``state`` lives in the original
    space with the original layout.
    """

    ranks: dict[str, int]
    lam: float
    state: DensityMatrix


def truncate_normalize(
    rho: DensityMatrix,
    projections: Mapping[str, tuple[int, ProjectorSequence]],
) -> TruncationStep:
    """Project chosen subsystems to finite rank, then renormalize.

    ``projections`` maps subsystem labels to (rank, projector family) pairs;
    subsystems not in the map get the identity, which covers one-sided
    truncation. With full-rank projectors everywhere this is the identity:
    lam = 1 and state = rho. Raises :class:`DegenerateTruncationError` when
    the retained weight lam = Tr(P rho P) is at or below the degeneracy
    threshold, since the normalized state is then meaningless.
    """
    if not projections:
        raise StructuralError("projections must name at least one subsystem")
    ranks: dict[str, int] = {}
    factors = []
    for label, dim in rho.layout.subsystems:
        if label in projections:
            rank, seq = projections[label]
            if seq.dim != dim:
                raise StructuralError(
                    f"projector family for {label!r} acts on dimension {seq.dim}, "
                    f"subsystem has dimension {dim}"
                )
            factors.append(seq.projector(rank))
            ranks[label] = int(rank)
        else:
            factors.append(np.eye(dim))
    unknown = set(projections) - set(rho.layout.labels)
    if unknown:
        raise StructuralError(f"unknown subsystem labels {sorted(unknown)} in projections")
    proj = factors[0]
    for f in factors[1:]:
        proj = np.kron(proj, f)
    projected = proj @ rho.entries @ proj
    lam = float(np.trace(projected).real)
    if lam <= TAU_LAMBDA:
        raise DegenerateTruncationError(
            f"retained weight {lam:.3e} is at or below {TAU_LAMBDA:g}", weight=lam
        )
    return TruncationStep(ranks=ranks, lam=lam, state=DensityMatrix(projected / lam, rho.layout))


@dataclass(frozen=True)
class SweepPoint:
    """One row of a convergence sweep.

    Entropy fields are None on a skipped step (degenerate truncation), in
    which case ``lam`` records the weight that triggered the skip.
    """

    schedule_index: int
    rank_a: int
    rank_b: int
    lam: float
    cond_entropy_nats: float | None
    h_nk: float | None
    h_tilde_nk: float | None
    diff: float | None

    @property
    def skipped(self) -> bool:
        return self.cond_entropy_nats is None


def diagonal_schedule(min_rank: int, max_rank: int, stride: int = 1) -> list[tuple[int, int]]:
    """Rank pairs (n, n) for n = min_rank, min_rank + stride, ..., <= max_rank."""
    min_rank, max_rank, stride = int(min_rank), int(max_rank), int(stride)
    if min_rank < 1 or max_rank < min_rank or stride < 1:
        raise PreconditionError(
            f"need 1 <= min_rank <= max_rank and stride >= 1, got "
            f"({min_rank}, {max_rank}, {stride})"
        )
    return [(n, n) for n in range(min_rank, max_rank + 1, stride)]


def _validate_schedule(schedule: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    if not schedule:
        raise PreconditionError("schedule must contain at least one rank pair")
    pairs = [(int(n), int(k)) for n, k in schedule]
    for n, k in pairs:
        if n < 1 or k < 1:
            raise PreconditionError(f"ranks must be positive, got ({n}, {k})")
    for (n1, k1), (n2, k2) in zip(pairs, pairs[1:]):
        if n2 < n1 or k2 < k1 or (n1, k1) == (n2, k2):
            raise PreconditionError(
                f"schedule must be increasing; ({n2}, {k2}) does not advance ({n1}, {k1})"
            )
    return pairs


def _group_bipartition(rho: DensityMatrix, target: LabelSet, given: LabelSet) -> DensityMatrix:
    """Collapse a multipartite state to two factors labeled A (target) and B (given).

    Each group is made contiguous in its original internal order and then
    treated as one factor; target and given must disjointly cover the layout.
    """
    labels_t = rho.layout.normalize_labels(target)
    labels_g = rho.layout.normalize_labels(given)
    overlap = set(labels_t) & set(labels_g)
    if overlap:
        raise StructuralError(f"target and conditioning labels overlap on {sorted(overlap)}")
    if not labels_t or not labels_g:
        raise StructuralError("target and conditioning label sets must be nonempty")
    missing = set(rho.layout.labels) - set(labels_t) - set(labels_g)
    if missing:
        raise StructuralError(
            f"target and conditioning labels must cover every subsystem; "
            f"missing {sorted(missing)}"
        )
    grouped = permute_subsystems(rho, labels_t + labels_g)
    dim_t = int(np.prod([grouped.layout.dim_of(lab) for lab in labels_t]))
    dim_g = grouped.layout.total_dim // dim_t
    layout = SubsystemLayout([("A", dim_t), ("B", dim_g)])
    return DensityMatrix(grouped.entries, layout)


def _projector_sequences(
    grouped: DensityMatrix, mode: ProjectorMode
) -> tuple[ProjectorSequence, ProjectorSequence]:
    dim_a, dim_b = grouped.layout.dims
    if mode == "computational":
        return ProjectorSequence.computational(dim_a), ProjectorSequence.computational(dim_b)
    if mode == "eigenbasis":
        return (
            ProjectorSequence.from_state(partial_trace(grouped, "A")),
            ProjectorSequence.from_state(partial_trace(grouped, "B")),
        )
    raise PreconditionError(f"unknown projector mode {mode!r}; have {PROJECTOR_MODES}")


def _compress(
    grouped: DensityMatrix, iso_a: np.ndarray, iso_b: np.ndarray
) -> tuple[DensityMatrix, float]:
    """Truncated-normalized state conjugated onto the retained subspace."""
    k = np.kron(iso_a, iso_b)
    compressed = k.conj().T @ grouped.entries @ k
    lam = float(np.trace(compressed).real)
    if lam <= TAU_LAMBDA:
        raise DegenerateTruncationError(
            f"retained weight {lam:.3e} is at or below {TAU_LAMBDA:g}", weight=lam
        )
    layout = SubsystemLayout([("A", iso_a.shape[1]), ("B", iso_b.shape[1])])
    return DensityMatrix(compressed / lam, layout), lam


def _compress_marginal(marginal: np.ndarray, iso: np.ndarray, side: str) -> np.ndarray:
    """Truncated, renormalized original marginal in the retained subspace."""
    m = iso.conj().T @ marginal @ iso
    weight = float(np.trace(m).real)
    if weight <= TAU_LAMBDA:
        raise DegenerateTruncationError(
            f"retained weight {weight:.3e} of the {side} marginal is at or below "
            f"{TAU_LAMBDA:g}",
            weight=weight,
        )
    return m / weight


def conditional_entropy_sweep(
    rho: DensityMatrix,
    target: LabelSet,
    given: LabelSet,
    schedule: Sequence[tuple[int, int]],
    mode: ProjectorMode = "computational",
) -> list[SweepPoint]:
    """Truncated conditional entropies H(target | given) along a rank schedule.

    For each (rank_a, rank_b) in the increasing schedule, the state is
    truncated to the leading rank_a (target side) and rank_b (given side)
    directions of the chosen projector family, renormalized, and measured.
    As the ranks grow, ``cond_entropy_nats`` converges to the conditional
    entropy of the full state; at full rank it reproduces it identically.
    Degenerate steps are recorded with null entropies, not raised.
    """
    pairs = _validate_schedule(schedule)
    grouped = _group_bipartition(rho, target, given)
    dim_a, dim_b = grouped.layout.dims
    for n, k in pairs:
        if n > dim_a or k > dim_b:
            raise PreconditionError(
                f"rank pair ({n}, {k}) exceeds factor dimensions ({dim_a}, {dim_b})"
            )
    seq_a, seq_b = _projector_sequences(grouped, mode)
    marginal_a = partial_trace(grouped, "A").entries
    marginal_b = partial_trace(grouped, "B").entries

    points = []
    for index, (rank_a, rank_b) in enumerate(pairs):
        iso_a = seq_a.isometry(rank_a)
        iso_b = seq_b.isometry(rank_b)
        try:
            truncated, lam = _compress(grouped, iso_a, iso_b)
            trunc_a = partial_trace(truncated, "A")
            trunc_b = partial_trace(truncated, "B")
            h_nk = relative_entropy_vs_product(truncated, trunc_a, trunc_b)
            tilde_a = _compress_marginal(marginal_a, iso_a, "target")
            tilde_b = _compress_marginal(marginal_b, iso_b, "conditioning")
            h_tilde_nk = relative_entropy_vs_product(
                truncated,
                DensityMatrix(tilde_a, trunc_a.layout),
                DensityMatrix(tilde_b, trunc_b.layout),
            )
            cond = -math.inf if math.isinf(h_nk) else von_neumann_entropy(trunc_a) - h_nk
            point = SweepPoint(
                schedule_index=index,
                rank_a=rank_a,
                rank_b=rank_b,
                lam=lam,
                cond_entropy_nats=cond,
                h_nk=h_nk,
                h_tilde_nk=h_tilde_nk,
                diff=h_tilde_nk - h_nk,
            )
        except DegenerateTruncationError as exc:
            point = SweepPoint(
                schedule_index=index,
                rank_a=rank_a,
                rank_b=rank_b,
                lam=exc.weight,
                cond_entropy_nats=None,
                h_nk=None,
                h_tilde_nk=None,
                diff=None,
            )
        points.append(point)
    return points


@dataclass(frozen=True)
class TruncationDiagnostics:
    """The two correlation terms at one rank pair and the decomposition of their gap.

    ``h_tilde_nk - h_nk`` equals ``marginal_a_divergence + marginal_b_divergence``
    up to rounding: expanding both relative entropies against the common
    truncated state leaves exactly the divergences between its marginals and
    the truncated-renormalized original marginals.
    """

    rank_a: int
    rank_b: int
    h_nk: float
    h_tilde_nk: float
    marginal_a_divergence: float
    marginal_b_divergence: float

    @property
    def diff(self) -> float:
        return self.h_tilde_nk - self.h_nk

    @property
    def residual(self) -> float:
        """|diff - (divergence_A + divergence_B)|; zero up to rounding."""
        return abs(self.diff - (self.marginal_a_divergence + self.marginal_b_divergence))


def truncation_diagnostics(
    rho: DensityMatrix,
    target: LabelSet,
    given: LabelSet,
    rank_a: int,
    rank_b: int,
    mode: ProjectorMode = "computational",
) -> TruncationDiagnostics:
    """Evaluate h_nk, h_tilde_nk, and the two marginal divergences at one point.

    The divergences are finite because each projected original marginal
    dominates the corresponding marginal of the projected state: for the
    target side, Tr_B((P x Q) rho (P x Q)) <= P Tr_B((I x Q) rho (I x Q)) P
    <= P rho_A P as operators, so supports are contained.
    """
    grouped = _group_bipartition(rho, target, given)
    seq_a, seq_b = _projector_sequences(grouped, mode)
    iso_a = seq_a.isometry(rank_a)
    iso_b = seq_b.isometry(rank_b)
    truncated, _ = _compress(grouped, iso_a, iso_b)
    trunc_a = partial_trace(truncated, "A")
    trunc_b = partial_trace(truncated, "B")
    h_nk = relative_entropy_vs_product(truncated, trunc_a, trunc_b)
    tilde_a = _compress_marginal(partial_trace(grouped, "A").entries, iso_a, "target")
    tilde_b = _compress_marginal(partial_trace(grouped, "B").entries, iso_b, "conditioning")
    h_tilde_nk = relative_entropy_vs_product(
        truncated,
        DensityMatrix(tilde_a, trunc_a.layout),
        DensityMatrix(tilde_b, trunc_b.layout),
    )
    div_a = relative_entropy(trunc_a, DensityMatrix(tilde_a, trunc_a.layout))
    div_b = relative_entropy(trunc_b, DensityMatrix(tilde_b, trunc_b.layout))
    return TruncationDiagnostics(
        rank_a=int(rank_a),
        rank_b=int(rank_b),
        h_nk=h_nk,
        h_tilde_nk=h_tilde_nk,
        marginal_a_divergence=div_a,
        marginal_b_divergence=div_b,
    )


__all__ = [
    "ProjectorSequence",
    "ProjectorMode",
    "PROJECTOR_MODES",
    "TruncationStep",
    "SweepPoint",
    "TruncationDiagnostics",
    "truncate_normalize",
    "diagonal_schedule",
    "conditional_entropy_sweep",
    "truncation_diagnostics",
]
