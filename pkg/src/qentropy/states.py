"""Multipartite state foundation: layouts, density matrices, tensor algebra.

Composite indexing convention (fixed, used everywhere including file I/O):
subsystems are ordered, and a basis vector of the composite space is indexed
row-major over that order, i.e. ``|i_0, i_1, ..., i_{N-1}>`` maps to the flat
index ``i_0 * d_1 * ... * d_{N-1} + ... + i_{N-1}``. This is exactly the
ordering of ``numpy.kron`` applied left to right.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import InvalidStateError, StructuralError
from .rng import complex_normal, generator
from .tolerances import TAU_HERM, TAU_PSD, TAU_SUPP, TAU_TRACE

LabelSet = Union[str, Iterable[str]]

_EINSUM_LETTERS = string.ascii_lowercase + string.ascii_uppercase


@dataclass(frozen=True)
class SubsystemLayout:
    """Ordered, labeled tensor factorization of a Hilbert space."""

    subsystems: tuple[tuple[str, int], ...]

    def __init__(self, subsystems: Iterable[tuple[str, int]]):
        subs = tuple((str(label), int(dim)) for label, dim in subsystems)
        if not subs:
            raise StructuralError("layout needs at least one subsystem")
        labels = [label for label, _ in subs]
        if len(set(labels)) != len(labels):
            raise StructuralError(f"duplicate subsystem labels in {labels}")
        for label, dim in subs:
            if dim < 1:
                raise StructuralError(f"subsystem {label!r} has dimension {dim} < 1")
        object.__setattr__(self, "subsystems", subs)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.subsystems)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(dim for _, dim in self.subsystems)

    @property
    def total_dim(self) -> int:
        out = 1
        for _, dim in self.subsystems:
            out *= dim
        return out

    def dim_of(self, label: str) -> int:
        for name, dim in self.subsystems:
            if name == label:
                return dim
        raise StructuralError(f"unknown subsystem label {label!r}; have {self.labels}")

    def index_of(self, label: str) -> int:
        for i, (name, _) in enumerate(self.subsystems):
            if name == label:
                return i
        raise StructuralError(f"unknown subsystem label {label!r}; have {self.labels}")

    def normalize_labels(self, labels: LabelSet) -> tuple[str, ...]:
        """Resolve a label or iterable of labels to layout order; reject unknowns."""
        listed = [labels] if isinstance(labels, str) else list(labels)
        wanted = set(listed)
        if len(wanted) != len(listed):
            raise StructuralError(f"duplicate labels in {listed!r}")
        for lab in wanted:
            self.index_of(lab)
        return tuple(lab for lab in self.labels if lab in wanted)


def single(label: str, dim: int) -> SubsystemLayout:
    """Layout with one subsystem."""
    return SubsystemLayout([(label, dim)])


def _freeze(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class DensityMatrix:
    """A (candidate) quantum state: complex matrix plus subsystem layout.

    Construction checks structure only (square, dimension matches the
    layout). The statistical invariants are measured by :func:`validate`,
    so defective matrices can be built and inspected.
    """

    entries: np.ndarray
    layout: SubsystemLayout

    def __post_init__(self):
        entries = _freeze(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise StructuralError(f"entries must be square, got shape {entries.shape}")
        if entries.shape[0] != self.layout.total_dim:
            raise StructuralError(
                f"entries are {entries.shape[0]}x{entries.shape[0]} but layout "
                f"{self.layout.labels} has total dimension {self.layout.total_dim}"
            )
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> complex:
        return complex(np.trace(self.entries))


@dataclass(frozen=True)
class PureState:
    """Unit vector with a layout; ``as_density`` gives the rank-1 projector."""

    amplitudes: np.ndarray
    layout: SubsystemLayout

    def __post_init__(self):
        amp = _freeze(self.amplitudes).reshape(-1)
        if amp.shape[0] != self.layout.total_dim:
            raise StructuralError(
                f"amplitude vector has length {amp.shape[0]} but layout "
                f"{self.layout.labels} has total dimension {self.layout.total_dim}"
            )
        object.__setattr__(self, "amplitudes", amp)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def as_density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.layout)


State = Union[DensityMatrix, PureState]


def as_density(state: State) -> DensityMatrix:
    """Coerce a pure state to its density matrix; pass density matrices through."""
    if isinstance(state, PureState):
        return state.as_density()
    if isinstance(state, DensityMatrix):
        return state
    raise StructuralError(f"expected DensityMatrix or PureState, got {type(state).__name__}")


@dataclass(frozen=True)
class Violation:
    invariant: str
    magnitude: float


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "pass"
        return "; ".join(f"{v.invariant} (defect {v.magnitude:.3e})" for v in self.violations)


def validate(rho: DensityMatrix) -> ValidationReport:
    """Measure the density-matrix invariants: hermiticity, unit trace, positivity.

    Returns a report whose ``violations`` carry the measured defect of every
    invariant that is out of tolerance; an empty report means pass.
    """
    m = rho.entries
    violations = []
    herm_defect = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if herm_defect > TAU_HERM:
        violations.append(Violation("hermitian", herm_defect))
    trace_defect = abs(complex(np.trace(m)) - 1.0)
    if trace_defect > TAU_TRACE:
        violations.append(Violation("unit_trace", float(trace_defect)))
    eigmin = float(np.min(np.linalg.eigvalsh((m + m.conj().T) / 2.0)))
    if eigmin < -TAU_PSD:
        violations.append(Violation("positive_semidefinite", -eigmin))
    return ValidationReport(tuple(violations))


def clamped_spectrum(rho: State) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition with hygiene applied.

    Symmetrizes, then clamps eigenvalues in [-TAU_PSD, 0] to 0. Anything
    below -TAU_PSD is not noise and raises :class:`InvalidStateError`.
    Returns (eigenvalues ascending, eigenvectors as columns).
    """
    rho = as_density(rho)
    sym = (rho.entries + rho.entries.conj().T) / 2.0
    w, u = np.linalg.eigh(sym)
    if w[0] < -TAU_PSD:
        raise InvalidStateError(
            f"state has eigenvalue {w[0]:.3e} below -{TAU_PSD:g}; not a density matrix"
        )
    w = np.where(w < 0.0, 0.0, w)
    return w, u


def tensor(rho: State, sigma: State) -> DensityMatrix:
    """Kronecker product with concatenated layouts."""
    rho, sigma = as_density(rho), as_density(sigma)
    shared = set(rho.layout.labels) & set(sigma.layout.labels)
    if shared:
        raise StructuralError(f"label collision in tensor product: {sorted(shared)}")
    layout = SubsystemLayout(rho.layout.subsystems + sigma.layout.subsystems)
    return DensityMatrix(np.kron(rho.entries, sigma.entries), layout)


def partial_trace(rho: State, keep: LabelSet) -> DensityMatrix:
    """Reduced state on ``keep`` (kept subsystems stay in their original order)."""
    rho = as_density(rho)
    kept = rho.layout.normalize_labels(keep)
    if not kept:
        raise StructuralError("partial_trace needs a nonempty set of kept labels")
    if len(kept) == len(rho.layout.labels):
        return rho
    dims = rho.layout.dims
    n = len(dims)
    if 2 * n > len(_EINSUM_LETTERS):
        raise StructuralError(f"too many subsystems for partial trace: {n}")
    tensor_form = rho.entries.reshape(dims + dims)
    bra = list(_EINSUM_LETTERS[:n])
    ket = list(_EINSUM_LETTERS[n : 2 * n])
    out = []
    kept_set = set(kept)
    for i, label in enumerate(rho.layout.labels):
        if label in kept_set:
            out.append((bra[i], ket[i]))
        else:
            ket[i] = bra[i]
    spec = "".join(bra) + "".join(ket) + "->" + "".join(b for b, _ in out) + "".join(
        k for _, k in out
    )
    kept_dims = [rho.layout.dim_of(label) for label in kept]
    d = int(np.prod(kept_dims))
    reduced = np.einsum(spec, tensor_form).reshape(d, d)
    layout = SubsystemLayout([(label, rho.layout.dim_of(label)) for label in kept])
    return DensityMatrix(reduced, layout)


def permute_subsystems(rho: State, new_order: Sequence[str]) -> DensityMatrix:
    """Reorder tensor factors; ``new_order`` must be a permutation of the labels."""
    rho = as_density(rho)
    if tuple(new_order) == rho.layout.labels:
        return rho
    if sorted(new_order) != sorted(rho.layout.labels):
        raise StructuralError(
            f"{list(new_order)} is not a permutation of {list(rho.layout.labels)}"
        )
    dims = rho.layout.dims
    n = len(dims)
    perm = [rho.layout.index_of(label) for label in new_order]
    tensor_form = rho.entries.reshape(dims + dims)
    shuffled = tensor_form.transpose(perm + [n + p for p in perm])
    d = rho.layout.total_dim
    layout = SubsystemLayout([(label, rho.layout.dim_of(label)) for label in new_order])
    return DensityMatrix(shuffled.reshape(d, d), layout)


def ginibre_state(
    rng: np.random.Generator, layout: SubsystemLayout, rank: int | None = None
) -> DensityMatrix:
    """Ginibre-induced random state: G G^dagger / Tr, G a dim x rank complex Gaussian.

    ``rank=None`` means full rank; full-rank output has full support with
    probability 1, which keeps relative entropies finite in randomized suites.
    Consumes the generator, so several draws per trial stay on one stream.
    """
    dim = layout.total_dim
    if rank is None:
        rank = dim
    if not 1 <= rank <= dim:
        raise StructuralError(f"rank must be in [1, {dim}], got {rank}")
    g = complex_normal(rng, (dim, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, layout)


def random_density_matrix(
    dim: int,
    rank: int | None = None,
    seed: int = 0,
    layout: SubsystemLayout | None = None,
) -> DensityMatrix:
    """Seeded Ginibre-induced random state; deterministic for a fixed seed."""
    dim = int(dim)
    if layout is None:
        layout = single("A", dim)
    elif layout.total_dim != dim:
        raise StructuralError(f"layout total dimension {layout.total_dim} != dim {dim}")
    return ginibre_state(generator(seed), layout, rank)


def haar_pure_state(rng: np.random.Generator, layout: SubsystemLayout) -> PureState:
    """Haar-random unit vector (normalized complex Gaussian) from a live generator.

    The global phase is fixed by making the first nonzero component real
    positive, which leaves the Haar distribution of the induced state
    untouched.
    """
    v = complex_normal(rng, (layout.total_dim,))
    v /= np.linalg.norm(v)
    for x in v:
        if abs(x) > TAU_SUPP:
            v = v * (x.conjugate() / abs(x))
            break
    return PureState(v, layout)


def random_pure_state(layout: SubsystemLayout, seed: int = 0) -> PureState:
    """Seeded Haar-random pure state; deterministic per seed."""
    return haar_pure_state(generator(seed), layout)
