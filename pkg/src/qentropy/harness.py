"""Randomized property checks with reproducible, replayable reports.

Each check draws seeded random states (and channels where relevant), measures
a margin per trial, and aggregates into a :class:`PropertyReport`. Margins
are raw slack values with no tolerance folded in: for an inequality
``lhs <= rhs`` the margin is ``rhs - lhs``; for an identity the margin is
``-|residual|``. A report passes iff its worst margin is at least
``-tolerance``, so equalities and boundary saturations pass while genuine
violations fail.

Reproducibility contract: trial i uses seed ``master_seed XOR i``, every
report embeds its full effective config, and re-running a config reproduces
the report exactly (see :func:`replay_report`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from .catalog import build_state
from .channels import (
    KrausChannel,
    complementary,
    coherent_information,
    conditional_entropy_via_coherent_info,
    haar_channel,
    purify,
)
from .entropy import (
    conditional_entropy,
    conditional_entropy_standard,
    von_neumann_entropy,
)
from .errors import InvalidStateError, PreconditionError
from .rng import generator, trial_seed
from .states import (
    DensityMatrix,
    PureState,
    SubsystemLayout,
    ginibre_state,
    haar_pure_state,
    partial_trace,
)
from .truncation import PROJECTOR_MODES, ProjectorMode, conditional_entropy_sweep

SATURATION_BAND = 1e-10  # |margin| at or below this is an exact boundary touch


def resolve_state(spec: str) -> DensityMatrix:
    """Build a state from a catalog spec string, or load it from a JSON file.

    Anything that names an existing file (or ends in .json) is treated as a
    state document and validated; everything else goes through the catalog
    grammar ``name:key=value,...``.
    """
    import os

    from .fileio import load_state
    from .states import validate

    if os.path.exists(spec) or spec.endswith(".json"):
        rho = load_state(spec)
        report = validate(rho)
        if not report.ok:
            raise InvalidStateError(f"{spec}: invalid state: {report.describe()}")
        return rho
    return build_state(spec)


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of one randomized property check.

    ``worst_margin`` is the most-violating raw slack over all trials
    (negative would mean violation beyond rounding); ``worst_seed`` is the
    trial seed that produced it, so a failure can be reproduced in isolation.
    ``config`` is the full effective configuration; feeding it back through
    :func:`replay_report` regenerates this report identically.
    """

    property: str
    trials: int
    seed: int
    tolerance: float
    worst_margin: float
    worst_seed: int
    verdict: str
    config: dict[str, Any]
    saturated: tuple[dict[str, Any], ...] = ()
    records: tuple[dict[str, Any], ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


@dataclass
class _Trial:
    label: str
    seed: int
    margin: float
    values: dict[str, Any] = field(default_factory=dict)


def _assemble(
    name: str,
    config: dict[str, Any],
    tolerance: float,
    trials: Sequence[_Trial],
    keep_records: Sequence[str] = (),
) -> PropertyReport:
    worst = min(trials, key=lambda t: t.margin)
    # only named fixed trials are scanned: identity checks have every random
    # margin near zero, which is agreement, not a boundary touch
    saturated = tuple(
        {"trial": t.label, "margin": t.margin}
        for t in trials
        if not t.label.isdigit() and abs(t.margin) <= SATURATION_BAND
    )
    keep = set(keep_records)
    records = tuple(
        {"trial": t.label, "seed": t.seed, "margin": t.margin, **t.values}
        for t in trials
        if t.label in keep or t is worst
    )
    verdict = "pass" if worst.margin >= -tolerance else "fail"
    return PropertyReport(
        property=name,
        trials=len(trials),
        seed=int(config["seed"]),
        tolerance=float(tolerance),
        worst_margin=float(worst.margin),
        worst_seed=int(worst.seed),
        verdict=verdict,
        config=config,
        saturated=saturated,
        records=records,
    )


def _three_layout(dims: Sequence[int]) -> SubsystemLayout:
    if len(dims) != 3:
        raise PreconditionError(f"need three dimensions, got {list(dims)}")
    return SubsystemLayout(list(zip(("A", "B", "C"), map(int, dims))))


def check_duality(
    dims: Sequence[int] = (2, 2, 2),
    trials: int = 500,
    seed: int = 0,
    tolerance: float = 1e-7,
) -> PropertyReport:
    """H(C|A) + H(C|B) = 0 for random pure states on A x B x C.

    Margin is -|H(C|A) + H(C|B)| per trial. A product pure state is included
    as a fixed trial where both terms vanish individually.
    """
    layout = _three_layout(dims)
    config = {
        "property": "duality",
        "dims": [int(d) for d in dims],
        "trials": int(trials),
        "seed": int(seed),
        "tolerance": float(tolerance),
    }

    def margin_for(state: PureState) -> tuple[float, dict[str, float]]:
        rho = state.as_density()
        h_ca = conditional_entropy(partial_trace(rho, ("A", "C")), "C", "A")
        h_cb = conditional_entropy(partial_trace(rho, ("B", "C")), "C", "B")
        return -abs(h_ca + h_cb), {"h_c_given_a": h_ca, "h_c_given_b": h_cb}

    results = []
    rng = generator(seed)
    parts = [haar_pure_state(rng, SubsystemLayout([(lab, d)])) for lab, d in layout.subsystems]
    product_amp = parts[0].amplitudes
    for part in parts[1:]:
        product_amp = np.kron(product_amp, part.amplitudes)
    m, vals = margin_for(PureState(product_amp, layout))
    results.append(_Trial("product", int(seed), m, vals))
    for i in range(int(trials)):
        ts = trial_seed(seed, i)
        m, vals = margin_for(haar_pure_state(generator(ts), layout))
        results.append(_Trial(str(i), ts, m, vals))
    return _assemble("duality", config, tolerance, results, keep_records=("product",))


def check_bound(
    dims: Sequence[int] = (3, 3),
    trials: int = 1000,
    seed: int = 0,
    tolerance: float = 1e-8,
) -> PropertyReport:
    """|H(C|A)| <= H(rho_C) for random mixed states on A x C.

    Margin is H(rho_C) - |H(C|A)|. Two saturating fixed trials are included:
    a maximally entangled pair (margin 0 from below) and a product state
    (margin 0 from above); both are recorded as saturations, not failures.
    """
    if len(dims) != 2:
        raise PreconditionError(f"need two dimensions, got {list(dims)}")
    layout = SubsystemLayout([("A", int(dims[0])), ("C", int(dims[1]))])
    config = {
        "property": "bound",
        "dims": [int(d) for d in dims],
        "trials": int(trials),
        "seed": int(seed),
        "tolerance": float(tolerance),
    }

    def margin_for(rho: DensityMatrix) -> tuple[float, dict[str, float]]:
        target = rho.layout.labels[-1]
        given = rho.layout.labels[0]
        h_c = von_neumann_entropy(partial_trace(rho, target))
        h_cond = conditional_entropy(rho, target, given)
        return h_c - abs(h_cond), {"h_target": h_c, "cond_entropy": h_cond}

    results = []
    from .catalog import bell

    m, vals = margin_for(bell(2).as_density())
    results.append(_Trial("bell", int(seed), m, vals))
    rng = generator(seed)
    prod_a = ginibre_state(rng, SubsystemLayout([("A", int(dims[0]))]))
    prod_c = ginibre_state(rng, SubsystemLayout([("C", int(dims[1]))]))
    from .states import tensor

    m, vals = margin_for(tensor(prod_a, prod_c))
    results.append(_Trial("product", int(seed), m, vals))
    for i in range(int(trials)):
        ts = trial_seed(seed, i)
        m, vals = margin_for(ginibre_state(generator(ts), layout))
        results.append(_Trial(str(i), ts, m, vals))
    return _assemble("bound", config, tolerance, results, keep_records=("bell", "product"))


def check_monotonicity(
    dims: Sequence[int] = (2, 2, 2),
    trials: int = 500,
    seed: int = 0,
    tolerance: float = 1e-8,
) -> PropertyReport:
    """H(A|BC) <= H(A|B) for random mixed states on A x B x C.

    Margin is H(A|B) - H(A|BC). Fixed trials: a three-party GHZ state, where
    the gap is exactly ln 2, and a trivial (1-dimensional) conditioner where
    the two sides are equal.
    """
    layout = _three_layout(dims)
    config = {
        "property": "monotonicity",
        "dims": [int(d) for d in dims],
        "trials": int(trials),
        "seed": int(seed),
        "tolerance": float(tolerance),
    }

    def margin_for(rho: DensityMatrix) -> tuple[float, dict[str, float]]:
        h_ab = conditional_entropy(partial_trace(rho, ("A", "B")), "A", "B")
        h_abc = conditional_entropy(rho, "A", ("B", "C"))
        return h_ab - h_abc, {"h_a_given_b": h_ab, "h_a_given_bc": h_abc}

    results = []
    from .catalog import ghz

    m, vals = margin_for(ghz(3, 2).as_density())
    results.append(_Trial("ghz", int(seed), m, vals))
    trivial_layout = SubsystemLayout([("A", int(dims[0])), ("B", int(dims[1])), ("C", 1)])
    m, vals = margin_for(ginibre_state(generator(seed), trivial_layout))
    results.append(_Trial("trivial-conditioner", int(seed), m, vals))
    for i in range(int(trials)):
        ts = trial_seed(seed, i)
        m, vals = margin_for(ginibre_state(generator(ts), layout))
        results.append(_Trial(str(i), ts, m, vals))
    return _assemble(
        "monotonicity", config, tolerance, results, keep_records=("ghz", "trivial-conditioner")
    )


def check_concavity(
    dims: Sequence[int] = (2, 3),
    trials: int = 500,
    seed: int = 0,
    tolerance: float = 1e-8,
) -> PropertyReport:
    """Conditional entropy is concave: H(A|B) of a mixture dominates the mixture.

    Each trial draws two states and a uniform mixing weight alpha; the margin
    is H(A|B)(mix) - alpha H(A|B)(rho1) - (1-alpha) H(A|B)(rho2). Fixed
    trials pin the equality cases alpha = 0 and rho1 = rho2.
    """
    if len(dims) != 2:
        raise PreconditionError(f"need two dimensions, got {list(dims)}")
    layout = SubsystemLayout([("A", int(dims[0])), ("B", int(dims[1]))])
    config = {
        "property": "concavity",
        "dims": [int(d) for d in dims],
        "trials": int(trials),
        "seed": int(seed),
        "tolerance": float(tolerance),
    }

    def margin_for(
        rho1: DensityMatrix, rho2: DensityMatrix, alpha: float
    ) -> tuple[float, dict[str, float]]:
        mix = DensityMatrix(alpha * rho1.entries + (1.0 - alpha) * rho2.entries, layout)
        h_mix = conditional_entropy(mix, "A", "B")
        h1 = conditional_entropy(rho1, "A", "B")
        h2 = conditional_entropy(rho2, "A", "B")
        return h_mix - alpha * h1 - (1.0 - alpha) * h2, {
            "alpha": alpha,
            "h_mix": h_mix,
            "h_first": h1,
            "h_second": h2,
        }

    results = []
    rng = generator(seed)
    fixed1 = ginibre_state(rng, layout)
    fixed2 = ginibre_state(rng, layout)
    m, vals = margin_for(fixed1, fixed2, 0.0)
    results.append(_Trial("alpha-zero", int(seed), m, vals))
    m, vals = margin_for(fixed1, fixed1, 0.37)
    results.append(_Trial("equal-states", int(seed), m, vals))
    for i in range(int(trials)):
        ts = trial_seed(seed, i)
        trial_rng = generator(ts)
        alpha = float(trial_rng.uniform())
        rho1 = ginibre_state(trial_rng, layout)
        rho2 = ginibre_state(trial_rng, layout)
        m, vals = margin_for(rho1, rho2, alpha)
        results.append(_Trial(str(i), ts, m, vals))
    return _assemble(
        "concavity", config, tolerance, results, keep_records=("alpha-zero", "equal-states")
    )


def check_subadditivity(
    dims: Sequence[int] = (2, 2, 2, 2),
    trials: int = 300,
    seed: int = 0,
    tolerance: float = 1e-7,
) -> PropertyReport:
    """Subadditivity of conditional entropy on A x B x C x D, three relations at once.

    Per trial the margin is the worst of:

    * ``H(A|C) + H(B|D) - H(AB|CD)`` (pairwise subadditivity),
    * ``H(A|CD) + H(B|CD) - H(AB|CD)`` (shared-conditioner intermediate),
    * ``-|chain residual|`` for the identity
      H(AB|CD) = H(A|CD) + H(B|CD) - (H(A|CD) - H(A|BCD)).

    A product state rho_AC x rho_BD is fixed as the equality case of the
    first relation.
    """
    if len(dims) != 4:
        raise PreconditionError(f"need four dimensions, got {list(dims)}")
    layout = SubsystemLayout(list(zip(("A", "B", "C", "D"), map(int, dims))))
    config = {
        "property": "subadditivity",
        "dims": [int(d) for d in dims],
        "trials": int(trials),
        "seed": int(seed),
        "tolerance": float(tolerance),
    }

    def margin_for(rho: DensityMatrix) -> tuple[float, dict[str, float]]:
        h_ab_cd = conditional_entropy(rho, ("A", "B"), ("C", "D"))
        h_a_c = conditional_entropy(partial_trace(rho, ("A", "C")), "A", "C")
        h_b_d = conditional_entropy(partial_trace(rho, ("B", "D")), "B", "D")
        h_a_cd = conditional_entropy(partial_trace(rho, ("A", "C", "D")), "A", ("C", "D"))
        h_b_cd = conditional_entropy(partial_trace(rho, ("B", "C", "D")), "B", ("C", "D"))
        h_a_bcd = conditional_entropy(rho, "A", ("B", "C", "D"))
        pairwise = h_a_c + h_b_d - h_ab_cd
        shared = h_a_cd + h_b_cd - h_ab_cd
        chain = -abs(h_ab_cd - h_a_cd - h_b_cd + (h_a_cd - h_a_bcd))
        return min(pairwise, shared, chain), {
            "pairwise_margin": pairwise,
            "shared_margin": shared,
            "chain_residual_margin": chain,
        }

    results = []
    rng = generator(seed)
    from .states import tensor

    prod = tensor(
        ginibre_state(rng, SubsystemLayout([("A", int(dims[0])), ("C", int(dims[2]))])),
        ginibre_state(rng, SubsystemLayout([("B", int(dims[1])), ("D", int(dims[3]))])),
    )
    m, vals = margin_for(prod)
    results.append(_Trial("product", int(seed), m, vals))
    for i in range(int(trials)):
        ts = trial_seed(seed, i)
        m, vals = margin_for(ginibre_state(generator(ts), layout))
        results.append(_Trial(str(i), ts, m, vals))
    return _assemble("subadditivity", config, tolerance, results, keep_records=("product",))


def check_coherent_duality(
    dims: Sequence[int] = (3, 3),
    env_dim: int = 3,
    trials: int = 300,
    seed: int = 0,
    tolerance: float = 1e-7,
) -> PropertyReport:
    """I_c(rho, channel) + I_c(rho, complementary channel) = 0.

    Margin is -|sum| over random full-rank states and Haar-random channels.
    Fixed trials: the identity channel (the terms are H(rho) and -H(rho))
    and a pure input state (both terms vanish).
    """
    if len(dims) != 2:
        raise PreconditionError(f"need (dim_in, dim_out), got {list(dims)}")
    dim_in, dim_out = int(dims[0]), int(dims[1])
    layout = SubsystemLayout([("A", dim_in)])
    config = {
        "property": "coherent-duality",
        "dims": [dim_in, dim_out],
        "env_dim": int(env_dim),
        "trials": int(trials),
        "seed": int(seed),
        "tolerance": float(tolerance),
    }

    def margin_for(
        rho: DensityMatrix, channel: KrausChannel
    ) -> tuple[float, dict[str, float]]:
        ic = coherent_information(rho, channel)
        ic_comp = coherent_information(rho, complementary(channel))
        return -abs(ic + ic_comp), {"coherent_info": ic, "coherent_info_complement": ic_comp}

    results = []
    rng = generator(seed)
    identity = KrausChannel([np.eye(dim_in)])
    m, vals = margin_for(ginibre_state(rng, layout), identity)
    results.append(_Trial("identity-channel", int(seed), m, vals))
    pure_in = haar_pure_state(rng, layout).as_density()
    m, vals = margin_for(pure_in, haar_channel(rng, dim_in, dim_out, env_dim))
    results.append(_Trial("pure-state", int(seed), m, vals))
    for i in range(int(trials)):
        ts = trial_seed(seed, i)
        trial_rng = generator(ts)
        rho = ginibre_state(trial_rng, layout)
        channel = haar_channel(trial_rng, dim_in, dim_out, env_dim)
        m, vals = margin_for(rho, channel)
        results.append(_Trial(str(i), ts, m, vals))
    return _assemble(
        "coherent-duality",
        config,
        tolerance,
        results,
        keep_records=("identity-channel", "pure-state"),
    )


def check_formula_standard(
    dims: Sequence[int] = (2, 3),
    trials: int = 500,
    seed: int = 0,
    tolerance: float = 1e-8,
) -> PropertyReport:
    """The relative-entropy and entropy-difference forms of H(C|A) agree.

    Margin is -|difference| on random full-support states, where both
    quantities are finite and the two definitions coincide.
    """
    if len(dims) != 2:
        raise PreconditionError(f"need two dimensions, got {list(dims)}")
    layout = SubsystemLayout([("A", int(dims[0])), ("C", int(dims[1]))])
    config = {
        "property": "formula-standard",
        "dims": [int(d) for d in dims],
        "trials": int(trials),
        "seed": int(seed),
        "tolerance": float(tolerance),
    }
    results = []
    for i in range(int(trials)):
        ts = trial_seed(seed, i)
        rho = ginibre_state(generator(ts), layout)
        via_relative = conditional_entropy(rho, "C", "A")
        via_difference = conditional_entropy_standard(rho, "C", "A")
        m = -abs(via_relative - via_difference)
        results.append(
            _Trial(
                str(i),
                ts,
                m,
                {"relative_form": via_relative, "difference_form": via_difference},
            )
        )
    return _assemble("formula-standard", config, tolerance, results)


def check_formula_coherent(
    dims: Sequence[int] = (2, 3),
    trials: int = 500,
    seed: int = 0,
    tolerance: float = 1e-7,
) -> PropertyReport:
    """The coherent-information route to H(C|A) agrees with the direct definition.

    Each trial purifies a random full-support state on A x C and compares
    conditional_entropy against the channel-based route through the purified
    state; margin is -|difference|.
    """
    if len(dims) != 2:
        raise PreconditionError(f"need two dimensions, got {list(dims)}")
    layout = SubsystemLayout([("A", int(dims[0])), ("C", int(dims[1]))])
    config = {
        "property": "formula-coherent",
        "dims": [int(d) for d in dims],
        "trials": int(trials),
        "seed": int(seed),
        "tolerance": float(tolerance),
    }
    results = []
    for i in range(int(trials)):
        ts = trial_seed(seed, i)
        rho = ginibre_state(generator(ts), layout)
        direct = conditional_entropy(rho, "C", "A")
        via_channel = conditional_entropy_via_coherent_info(purify(rho), "C", "A")
        m = -abs(direct - via_channel)
        results.append(
            _Trial(str(i), ts, m, {"direct": direct, "channel_route": via_channel})
        )
    return _assemble("formula-coherent", config, tolerance, results)


def check_continuity_smoke(
    base: str = "werner:p=0.5",
    steps: int = 20,
    seed: int = 0,
    tolerance: float = 1e-6,
) -> PropertyReport:
    """Conditional entropy is continuous along a shrinking mixing schedule.

    Mixes the base state with the maximally mixed state at eps = 2^-n for
    n = 1..steps and tracks |H(target|given)(mixed) - H(target|given)(base)|.
    The margin is the worse of (a) minus the final deviation, so the check
    passes only if the deviation ends below tolerance, and (b) the smallest
    consecutive decrease, so any rise beyond tolerance also fails. The
    schedule is deterministic; the seed is carried only for config uniformity.
    """
    steps = int(steps)
    if steps < 2:
        raise PreconditionError(f"need at least 2 schedule points, got {steps}")
    rho0 = build_state(base)
    labels = rho0.layout.labels
    if len(labels) < 2:
        raise PreconditionError(f"base state must be multipartite, got labels {labels}")
    target, given = labels[0], labels[1:]
    config = {
        "property": "continuity",
        "base": str(base),
        "steps": steps,
        "seed": int(seed),
        "tolerance": float(tolerance),
    }
    dim = rho0.layout.total_dim
    sigma = np.eye(dim) / dim
    h_base = conditional_entropy(rho0, target, given)
    deviations = []
    for n in range(1, steps + 1):
        eps = 2.0**-n
        mixed = DensityMatrix((1.0 - eps) * rho0.entries + eps * sigma, rho0.layout)
        h_mixed = conditional_entropy(mixed, target, given)
        deviations.append((eps, abs(h_mixed - h_base)))
    final_margin = -deviations[-1][1]
    shrink_margin = min(
        prev - nxt for (_, prev), (_, nxt) in zip(deviations, deviations[1:])
    )
    margin = min(final_margin, shrink_margin)
    record = {
        "trial": "schedule",
        "seed": int(seed),
        "margin": margin,
        "base_cond_entropy": h_base,
        "deviations": [[eps, dev] for eps, dev in deviations],
    }
    verdict = "pass" if margin >= -tolerance else "fail"
    return PropertyReport(
        property="continuity",
        trials=steps,
        seed=int(seed),
        tolerance=float(tolerance),
        worst_margin=float(margin),
        worst_seed=int(seed),
        verdict=verdict,
        config=config,
        saturated=(),
        records=(record,),
    )


def report_to_dict(report: PropertyReport) -> dict[str, Any]:
    """Flatten a report for serialization; feed through json_ready before dumping."""
    return {
        "property": report.property,
        "verdict": report.verdict,
        "trials": report.trials,
        "seed": report.seed,
        "tolerance": report.tolerance,
        "worst_margin": report.worst_margin,
        "worst_seed": report.worst_seed,
        "units": "nats",
        "config": report.config,
        "saturated": list(report.saturated),
        "records": list(report.records),
    }


CHECKS: dict[str, Callable[..., PropertyReport]] = {
    "duality": check_duality,
    "bound": check_bound,
    "coherent-duality": check_coherent_duality,
    "monotonicity": check_monotonicity,
    "concavity": check_concavity,
    "subadditivity": check_subadditivity,
    "formula-standard": check_formula_standard,
    "formula-coherent": check_formula_coherent,
    "continuity": check_continuity_smoke,
}


def run_check(name: str, **overrides: Any) -> PropertyReport:
    """Run one named property check with keyword overrides of its defaults."""
    if name not in CHECKS:
        raise PreconditionError(f"unknown property {name!r}; have {sorted(CHECKS)}")
    if "dims" in overrides and overrides["dims"] is not None:
        overrides["dims"] = tuple(int(d) for d in overrides["dims"])
    overrides = {k: v for k, v in overrides.items() if v is not None}
    return CHECKS[name](**overrides)


def replay_report(config: dict[str, Any]) -> PropertyReport:
    """Re-run a check from a report's embedded config; output matches the original."""
    config = dict(config)
    name = config.pop("property", None)
    if name is None:
        raise PreconditionError("config has no 'property' field")
    return run_check(name, **config)


def run_suite(seed: int = 0, properties: Sequence[str] | None = None) -> list[PropertyReport]:
    """Run the named checks (default: all, in a fixed order) at their default configs."""
    names = list(CHECKS) if properties is None else list(properties)
    return [run_check(name, seed=seed) for name in names]


def run_converge(
    state_spec: str = "tmsv:nbar=1,cutoff=30",
    target: str | Sequence[str] = "A",
    given: str | Sequence[str] = "B",
    min_rank: int = 5,
    max_rank: int | None = None,
    stride: int = 1,
    schedule: Sequence[tuple[int, int]] | None = None,
    mode: ProjectorMode = "computational",
    seed: int = 0,
) -> dict[str, Any]:
    """Run a truncation convergence sweep on a catalog or file state.

    Returns a document with the effective config, the per-step table (as
    :class:`~.truncation.SweepPoint` objects under ``"points"``), and a
    summary comparing the final step against the conditional entropy of the
    full state. Without an explicit ``schedule``, a diagonal (n, n) schedule
    runs from ``min_rank`` to ``max_rank`` (default: the smaller factor
    dimension) with the given stride.
    """
    if mode not in PROJECTOR_MODES:
        raise PreconditionError(f"unknown projector mode {mode!r}; have {PROJECTOR_MODES}")
    rho = resolve_state(state_spec)
    target_labels = rho.layout.normalize_labels(target)
    given_labels = rho.layout.normalize_labels(given)
    if schedule is None:
        from .truncation import diagonal_schedule

        dim_t = int(np.prod([rho.layout.dim_of(lab) for lab in target_labels]))
        dim_g = int(np.prod([rho.layout.dim_of(lab) for lab in given_labels]))
        top = min(dim_t, dim_g) if max_rank is None else int(max_rank)
        schedule = diagonal_schedule(min(int(min_rank), top), top, int(stride))
    points = conditional_entropy_sweep(rho, target_labels, given_labels, schedule, mode=mode)
    base_value = conditional_entropy(rho, target_labels, given_labels)
    final = next((p for p in reversed(points) if not p.skipped), None)
    summary: dict[str, Any] = {
        "base_cond_entropy_nats": base_value,
        "steps": len(points),
        "skipped_steps": sum(1 for p in points if p.skipped),
    }
    if final is not None:
        summary["final_rank_A"] = final.rank_a
        summary["final_rank_B"] = final.rank_b
        summary["final_lambda"] = final.lam
        summary["final_cond_entropy_nats"] = final.cond_entropy_nats
        gap = final.cond_entropy_nats - base_value
        summary["final_gap_to_base"] = abs(gap) if math.isfinite(gap) else math.inf
    config = {
        "state": str(state_spec),
        "target": list(target_labels),
        "given": list(given_labels),
        "schedule": [[int(n), int(k)] for n, k in schedule],
        "mode": str(mode),
        "seed": int(seed),
    }
    return {"kind": "sweep", "config": config, "summary": summary, "points": points}


__all__ = [
    "PropertyReport",
    "CHECKS",
    "report_to_dict",
    "resolve_state",
    "check_duality",
    "check_bound",
    "check_monotonicity",
    "check_concavity",
    "check_subadditivity",
    "check_coherent_duality",
    "check_formula_standard",
    "check_formula_coherent",
    "check_continuity_smoke",
    "run_check",
    "replay_report",
    "run_suite",
    "run_converge",
]
