"""Scenario execution and seeded sweeps.

``run_scenario`` turns a :class:`~distmeas.scenario.Scenario` into one
:class:`~distmeas.theorems.CheckReport` per requested check.  Ingredients
are drawn from the scenario seed in a fixed order (state, observable,
models, remote evolution, twin structures, then per-check draws in the
listed check order), so a scenario file pins its reports bit for bit.

Negative-control scenarios sabotage the ingredient that each check is
sensitive to and are expected to *fail*; the sweep aggregate accounts for
them separately.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DistmeasError, ScenarioInputError
from .linalg import DIM_CAP
from .measurement import (
    MeasurementModel,
    build_ideal,
    build_intricate,
    measure_subsystem,
)
from .observables import (
    SpectralForm,
    TwinPair,
    build_twins,
    random_degenerate_observable,
)
from .scenario import Scenario, SweepRequest
from .states import (
    PROBABILITY_FLOOR,
    BipartiteState,
    born_probabilities,
    conditional_state,
    random_state,
    random_state_with_schmidt,
    reduced_state,
    schmidt,
)
from .theorems import (
    CHECK_IDS,
    CheckReport,
    check_calibration_dynamics,
    check_certainty,
    check_distant_luders,
    check_mixture_decomposition,
    check_no_signaling,
    check_nonselective_twin_invariance,
    check_probability_consistency,
    check_selective_equals_conditional,
    check_under_trace_commutativity,
)

TWIN_CHECKS = ("eq15", "eq16b")


@dataclass(frozen=True)
class ScenarioResult:
    """Reports of one scenario plus the pass/fail verdict.

    For a normal scenario ``passed`` means every check passed; for a
    negative-control scenario it means every check failed, i.e. the
    sabotage was detected.
    """

    scenario: Scenario
    context: dict
    reports: list[CheckReport]
    passed: bool


@dataclass
class _Ingredients:
    phi: BipartiteState
    observable: SpectralForm
    models: list[MeasurementModel]
    remote: np.ndarray | None
    pair: TwinPair | None
    twin_models: list[MeasurementModel]
    model_labels: list[str]


def _even_split(total: int, parts: int, remainder_to: str) -> list[int]:
    """Split ``total`` into ``parts`` positive sizes as evenly as possible."""
    if parts > total:
        raise ScenarioInputError(
            f"cannot split pointer dimension {total} into {parts} positive sectors"
        )
    base, extra = divmod(total, parts)
    sizes = [base] * parts
    if remainder_to == "first":
        for i in range(extra):
            sizes[i] += 1
    else:
        for i in range(extra):
            sizes[parts - 1 - i] += 1
    return sizes


def _build_state(scenario: Scenario, rng: np.random.Generator) -> BipartiteState:
    d1, d2 = scenario.dims.a1, scenario.dims.a2
    spec = scenario.state
    if spec.kind == "random":
        return random_state(d1, d2, rng)
    if spec.kind == "random_schmidt":
        try:
            return random_state_with_schmidt(d1, d2, spec.coefficients, rng)
        except ValueError as exc:
            raise ScenarioInputError(f"state.coefficients: {exc}") from exc
    amps = linalg.vector_from_pairs(spec.amplitudes)
    try:
        return BipartiteState(d1, d2, amps)
    except ValueError as exc:
        raise ScenarioInputError(f"state.amplitudes: {exc}") from exc


def _build_observable(scenario: Scenario, rng: np.random.Generator) -> SpectralForm:
    spec = scenario.observable
    if spec.type == "random_degenerate":
        return random_degenerate_observable(scenario.dims.a2, spec.multiplicities, rng)
    projectors = tuple(
        linalg.matrix_from_json(p.model_dump()) for p in spec.projectors
    )
    try:
        return SpectralForm(np.asarray(spec.eigenvalues, dtype=float), projectors)
    except ValueError as exc:
        raise ScenarioInputError(f"observable: {exc}") from exc


def _build_model(
    measured: SpectralForm,
    spec,
    pointer_dim: int,
    rng: np.random.Generator,
    auto_sectors: bool,
) -> MeasurementModel:
    try:
        if spec.kind == "ideal":
            return build_ideal(measured, pointer_dim)
        if auto_sectors:
            sectors = _even_split(pointer_dim, measured.n_outcomes, "last")
        else:
            sectors = spec.pointer_sector_dims
            if len(sectors) != measured.n_outcomes:
                raise ScenarioInputError(
                    f"measurement.pointer_sector_dims has {len(sectors)} sectors but the "
                    f"observable has {measured.n_outcomes} outcomes"
                )
        return build_intricate(
            measured, sectors, rng, feedback=spec.feedback, pointer_scramble=spec.scramble
        )
    except ValueError as exc:
        raise ScenarioInputError(str(exc)) from exc


def _model_label(spec) -> str:
    if spec.kind == "ideal":
        return "ideal"
    flags = []
    if spec.feedback == "none":
        flags.append("no-feedback")
    if spec.scramble == "none":
        flags.append("no-scramble")
    suffix = f" ({', '.join(flags)})" if flags else ""
    return f"intricate{list(spec.pointer_sector_dims or [])}{suffix}"


def _completed_twin_observable(pair: TwinPair) -> SpectralForm:
    """Nearby-side twin family completed to a full observable."""
    d2 = pair.state.d2
    mats = list(pair.e2)
    rest = np.eye(d2, dtype=complex) - sum(mats)
    if float(np.max(np.abs(rest))) > 1e-10:
        mats.append(rest)
    return SpectralForm(np.arange(len(mats), dtype=float), tuple(mats))


def _build_ingredients(scenario: Scenario, rng: np.random.Generator) -> _Ingredients:
    phi = _build_state(scenario, rng)
    observable = _build_observable(scenario, rng)
    pointer_dim = scenario.dims.pointer

    models = []
    labels = []
    for spec in scenario.measurements:
        models.append(_build_model(observable, spec, pointer_dim, rng, auto_sectors=False))
        labels.append(_model_label(spec))

    remote = None
    if scenario.remote_evolution == "random":
        remote = linalg.random_unitary(scenario.dims.a1, rng)

    pair = None
    twin_models: list[MeasurementModel] = []
    if any(c in TWIN_CHECKS for c in scenario.checks):
        sd = schmidt(phi)
        grouping = scenario.twin_grouping
        if grouping is None:
            grouping = [[i] for i in range(sd.rank)]
        try:
            pair = build_twins(phi, grouping, residual="random", rng=rng)
        except (ValueError, DistmeasError) as exc:
            raise ScenarioInputError(f"twin_grouping: {exc}") from exc
        if "eq15" in scenario.checks:
            measured2 = _completed_twin_observable(pair)
            for spec in scenario.measurements:
                twin_models.append(
                    _build_model(measured2, spec, pointer_dim, rng, auto_sectors=True)
                )
    return _Ingredients(phi, observable, models, remote, pair, twin_models, labels)


def _scenario_context(scenario: Scenario, ing: _Ingredients) -> dict:
    if scenario.state.kind == "random_schmidt":
        state_desc = f"random_schmidt(rank={len(scenario.state.coefficients)})"
    else:
        state_desc = scenario.state.kind
    if scenario.observable.type == "random_degenerate":
        obs_desc = f"random_degenerate{list(scenario.observable.multiplicities)}"
    else:
        obs_desc = f"explicit({len(scenario.observable.eigenvalues)} outcomes)"
    return {
        "seed": scenario.seed,
        "dims": {
            "a1": scenario.dims.a1,
            "a2": scenario.dims.a2,
            "pointer": scenario.dims.pointer,
        },
        "state": state_desc,
        "observable": obs_desc,
        "models": list(ing.model_labels),
        "remote_evolution": scenario.remote_evolution,
        "negative_control": scenario.negative_control,
    }


def _merge(check_id: str, parts, tol: float, context: dict) -> CheckReport:
    """Fold labeled sub-reports into a single report for one check id."""
    residuals: dict[str, float] = {}
    ctx = dict(context)
    for prefix, report in parts:
        for label, value in report.residuals.items():
            residuals[f"{prefix}{label}"] = value
        for key, value in report.context.items():
            if key not in context:
                ctx[f"{prefix}{key}"] = value
    return CheckReport.evaluate(check_id, residuals, tol, ctx)


def _certainty_instances(dim: int, rng: np.random.Generator):
    """A certain and (when possible) an uncertain event/state instance."""
    max_rank = max(dim - 1, 1)
    rank = int(rng.integers(1, max_rank + 1))
    basis = linalg.random_unitary(dim, rng)
    block = basis[:, :rank]
    event = block @ block.conj().T
    weights = linalg.random_complex_matrix(rank, 1, rng).reshape(-1)
    inside = block @ (weights / np.linalg.norm(weights))
    instances = [("positive_", event, inside)]
    if rank < dim:
        outside = basis[:, rank]
        theta = float(rng.uniform(0.3, 1.2))
        mixed = np.cos(theta) * inside + np.sin(theta) * outside
        instances.append(("negative_", event, mixed / np.linalg.norm(mixed)))
    return instances


def _run_check(check: str, scenario: Scenario, ing: _Ingredients,
               rng: np.random.Generator, context: dict) -> CheckReport:
    tol = scenario.tolerance
    if check == "eq5":
        parts = [
            (prefix, check_certainty(event, psi, tol))
            for prefix, event, psi in _certainty_instances(scenario.dims.a2, rng)
        ]
        return _merge("eq5", parts, tol, context)
    if check == "eq7":
        parts = [
            (f"model{i}_", check_calibration_dynamics(m, tol))
            for i, m in enumerate(ing.models)
        ]
        return _merge("eq7", parts, tol, context)
    if check == "eq8":
        return check_no_signaling(ing.phi, ing.models, ing.remote, tol, context)
    if check == "eq9":
        da = scenario.dims.a1
        db = scenario.dims.a2 * scenario.dims.pointer
        parts = [
            (f"draw{j}_", check_under_trace_commutativity((da, db), rng, tol))
            for j in range(3)
        ]
        return _merge("eq9", parts, tol, context)
    if check == "eq11a":
        parts = [
            (f"model{i}_", check_selective_equals_conditional(ing.phi, m, ing.remote, tol))
            for i, m in enumerate(ing.models)
        ]
        return _merge("eq11a", parts, tol, context)
    if check == "eq12":
        parts = [
            (f"model{i}_", check_probability_consistency(ing.phi, m, ing.remote, tol))
            for i, m in enumerate(ing.models)
        ]
        return _merge("eq12", parts, tol, context)
    if check == "eq13":
        report = check_mixture_decomposition(ing.phi, ing.observable.projectors, tol)
        residuals = dict(report.residuals)
        for i, m in enumerate(ing.models):
            out = measure_subsystem(ing.phi, m, ing.remote)
            acc = np.zeros((scenario.dims.a1,) * 2, dtype=complex)
            for p, sel in zip(out.probabilities, out.selective_distant_states):
                if sel is not None:
                    acc += p * sel.matrix
            residuals[f"model{i}_recombination"] = linalg.frobenius_distance(
                acc, out.nonselective_distant_state.matrix
            )
        return CheckReport.evaluate("eq13", residuals, tol, context)
    if check == "eq15":
        parts = [
            (f"model{i}_", check_distant_luders(ing.pair, m, ing.remote, tol))
            for i, m in enumerate(ing.twin_models)
        ]
        return _merge("eq15", parts, tol, context)
    if check == "eq16b":
        return check_nonselective_twin_invariance(ing.pair, tol, context)
    raise ScenarioInputError(f"unknown check id {check!r}")


def _run_negative_check(check: str, scenario: Scenario, ing: _Ingredients,
                        rng: np.random.Generator, context: dict) -> CheckReport:
    """Run one check against a sabotaged ingredient; the report must fail."""
    tol = scenario.tolerance
    d1 = scenario.dims.a1
    context = dict(context)
    if check == "eq5":
        # Event that is not a projector: certain in expectation yet moves the state.
        basis = linalg.random_unitary(scenario.dims.a2, rng)
        u, w = basis[:, 0], basis[:, 1]
        event = 2.0 * np.outer(u, u.conj())
        psi = (u + w) / np.sqrt(2.0)
        context["sabotage"] = "non_projector_event"
        return check_certainty(event, psi, tol, context)
    if check == "eq7":
        context["sabotage"] = "generic_unitary"
        parts = []
        for i, m in enumerate(ing.models):
            broken = dataclasses.replace(
                m, unitary=linalg.random_unitary(m.total_dim, rng), kind="sabotaged"
            )
            parts.append((f"model{i}_", check_calibration_dynamics(broken, tol)))
        return _merge("eq7", parts, tol, context)
    if check == "eq8":
        context["sabotage"] = "wrong_remote_target"
        wrong = linalg.random_unitary(d1, rng)
        target = wrong @ reduced_state(ing.phi, 1).matrix @ wrong.conj().T
        residuals = {}
        for i, m in enumerate(ing.models):
            out = measure_subsystem(ing.phi, m, ing.remote)
            residuals[f"model{i}_vs_wrong_target"] = linalg.frobenius_distance(
                out.nonselective_distant_state.matrix, target
            )
        return CheckReport.evaluate("eq8", residuals, tol, context)
    if check == "eq9":
        # The commutation claim holds for the traced factor only; moving the
        # operator to the kept factor must break it.
        context["sabotage"] = "kept_factor_operator"
        db = scenario.dims.a2 * scenario.dims.pointer
        y = linalg.random_complex_matrix(d1, d1, rng)
        x = linalg.random_complex_matrix(d1 * db, d1 * db, rng)
        y_big = linalg.tensor(y, np.eye(db))
        lhs = linalg.partial_trace(y_big @ x, (d1, db), (1,))
        rhs = linalg.partial_trace(x @ y_big, (d1, db), (1,))
        residual = linalg.frobenius_distance(lhs, rhs)
        return CheckReport.evaluate("eq9", {"commutativity": residual}, tol, context)
    if check == "eq11a":
        context["sabotage"] = "permuted_outcome_labels"
        model = ing.models[0]
        out = measure_subsystem(ing.phi, model, ing.remote)
        projectors = model.measured.projectors
        n = len(projectors)
        borns = born_probabilities(ing.phi, projectors)
        residuals = {}
        for k, sel in enumerate(out.selective_distant_states):
            wrong_k = (k + 1) % n
            if sel is None or borns[wrong_k] <= PROBABILITY_FLOOR:
                continue
            cond = conditional_state(ing.phi, projectors[wrong_k]).matrix
            if ing.remote is not None:
                cond = ing.remote @ cond @ ing.remote.conj().T
            residuals[f"outcome_{k}"] = linalg.frobenius_distance(sel.matrix, cond)
        return CheckReport.evaluate("eq11a", residuals, tol, context)
    if check == "eq12":
        context["sabotage"] = "permuted_outcome_labels"
        model = ing.models[0]
        out = measure_subsystem(ing.phi, model, ing.remote)
        projectors = model.measured.projectors
        borns = born_probabilities(ing.phi, projectors)
        rolled = np.roll(borns, 1)
        residuals = {
            f"outcome_{k}": float(abs(out.probabilities[k] - rolled[k]))
            for k in range(len(projectors))
        }
        return CheckReport.evaluate("eq12", residuals, tol, context)
    if check == "eq13":
        context["sabotage"] = "incomplete_family"
        family = ing.observable.projectors[:-1]
        if not family:
            raise ScenarioInputError("eq13 negative control needs >= 2 outcomes")
        return check_mixture_decomposition(ing.phi, family, tol, context)
    if check == "eq15":
        context["sabotage"] = "mismatched_twin_labels"
        pair = ing.pair
        if len(pair) < 2:
            raise ScenarioInputError("eq15 negative control needs >= 2 twin groups")
        rotated = TwinPair(
            pair.state, pair.e1[1:] + pair.e1[:1], pair.e2, pair.o1_prime, pair.o2_prime
        )
        parts = [
            (f"model{i}_", check_distant_luders(rotated, m, ing.remote, tol))
            for i, m in enumerate(ing.twin_models)
        ]
        return _merge("eq15", parts, tol, context)
    if check == "eq16b":
        context["sabotage"] = "unrelated_distant_family"
        pair = ing.pair
        k = len(pair)
        mults = ([1] * (k - 1) + [d1 - k + 1]) if k > 1 else [d1]
        fake = random_degenerate_observable(d1, mults, rng)
        impostor = TwinPair(pair.state, fake.projectors, pair.e2)
        return check_nonselective_twin_invariance(impostor, tol, context)
    raise ScenarioInputError(f"unknown check id {check!r}")


def run_scenario(scenario: Scenario) -> ScenarioResult:
    """Execute every requested check of a scenario deterministically."""
    rng = linalg.make_rng(scenario.seed)
    ing = _build_ingredients(scenario, rng)
    context = _scenario_context(scenario, ing)
    reports = []
    for check in scenario.checks:
        if scenario.negative_control:
            reports.append(_run_negative_check(check, scenario, ing, rng, context))
        else:
            reports.append(_run_check(check, scenario, ing, rng, context))
    if scenario.negative_control:
        passed = bool(reports) and all(not r.passed and r.residuals for r in reports)
    else:
        passed = all(r.passed for r in reports)
    return ScenarioResult(scenario, context, reports, passed)


def run_payload(result: ScenarioResult) -> dict:
    """JSON-able document for one scenario run."""
    return {
        "scenario": result.context,
        "reports": [r.to_json_dict() for r in result.reports],
        "passed": result.passed,
    }


# --- sweeps -----------------------------------------------------------------


def _child_seed(master: int, *key: int) -> int:
    ss = np.random.SeedSequence(entropy=master, spawn_key=tuple(key))
    return int(ss.generate_state(1, np.uint64)[0])


def _meta_rng(master: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=master, spawn_key=tuple(key)))


def _random_partition(total: int, parts: int, rng: np.random.Generator) -> list[int]:
    """Random composition of ``total`` into ``parts`` positive integers."""
    if parts == 1:
        return [total]
    cuts = np.sort(rng.choice(np.arange(1, total), size=parts - 1, replace=False))
    edges = np.concatenate(([0], cuts, [total]))
    return np.diff(edges).astype(int).tolist()


def _generate_positive(req: SweepRequest, combo_idx: int, i: int,
                       a1: int, a2: int, pointer: int) -> Scenario:
    meta = _meta_rng(req.seed, combo_idx, i, 1)
    seed = _child_seed(req.seed, combo_idx, i, 0)

    n_out_cap = min(a2, pointer)
    degenerate = (i % 2 == 1) and a2 >= 2 and min(a2 - 1, n_out_cap) >= 1
    if degenerate:
        n_out = int(meta.integers(1, min(a2 - 1, n_out_cap) + 1))
        multiplicities = _random_partition(a2, n_out, meta)
    elif a2 <= pointer:
        multiplicities = [1] * a2
    else:
        multiplicities = _random_partition(a2, n_out_cap, meta)
    n_out = len(multiplicities)

    if i % 4 == 3 and min(a1, a2) >= 2:
        if i % 8 == 7:
            rank = int(meta.integers(1, min(a1, a2)))
        else:
            rank = min(a1, a2)
        raw = meta.uniform(0.2, 1.0, rank)
        raw = raw / raw.sum()
        state = {"kind": "random_schmidt", "coefficients": np.sqrt(raw).tolist()}
    else:
        rank = min(a1, a2)
        state = {"kind": "random"}

    measurements = [
        {"kind": "ideal"},
        {"kind": "intricate", "pointer_sector_dims": _even_split(pointer, n_out, "last")},
        {"kind": "intricate", "pointer_sector_dims": _even_split(pointer, n_out, "first")},
    ]

    twin_grouping = None
    if any(c in TWIN_CHECKS for c in req.checks):
        needs_completion = rank < a2
        group_cap = min(rank, pointer - (1 if needs_completion else 0))
        if group_cap < 1:
            raise ScenarioInputError(
                f"pointer dimension {pointer} cannot register any twin outcome"
            )
        groups = int(meta.integers(1, group_cap + 1))
        perm = meta.permutation(rank)
        parts = _random_partition(rank, groups, meta)
        twin_grouping = []
        start = 0
        for p in parts:
            twin_grouping.append(sorted(int(x) for x in perm[start:start + p]))
            start += p

    return Scenario(
        seed=seed,
        dims={"a1": a1, "a2": a2, "pointer": pointer},
        state=state,
        observable={"type": "random_degenerate", "multiplicities": multiplicities},
        measurements=measurements,
        twin_grouping=twin_grouping,
        remote_evolution="random" if (i // 2) % 2 == 1 else "identity",
        checks=list(req.checks),
        tolerance=req.tolerance,
    )


def _generate_negative(req: SweepRequest, combo_idx: int, j: int, check: str,
                       a1: int, a2: int, pointer: int) -> Scenario | None:
    if check in ("eq11a", "eq12", "eq13") and min(a2, pointer) < 2:
        return None
    if check in TWIN_CHECKS:
        rank = min(a1, a2)
        if rank < 2:
            return None
        if check == "eq15" and pointer < 2 + (1 if rank < a2 else 0):
            return None
    seed = _child_seed(req.seed, combo_idx, 100_000 + j, 0)
    n_out = min(2, a2, pointer)
    multiplicities = [a2 - n_out + 1] + [1] * (n_out - 1)

    twin_grouping = None
    if check in TWIN_CHECKS:
        rank = min(a1, a2)
        twin_grouping = [[0], list(range(1, rank))]
    return Scenario(
        seed=seed,
        dims={"a1": a1, "a2": a2, "pointer": pointer},
        state={"kind": "random"},
        observable={"type": "random_degenerate", "multiplicities": multiplicities},
        measurements=[{"kind": "ideal"}],
        twin_grouping=twin_grouping,
        remote_evolution="identity",
        checks=[check],
        tolerance=req.tolerance,
        negative_control=True,
    )


@dataclass(frozen=True)
class SweepOutcome:
    """All scenario results of a sweep plus the serializable aggregate."""

    results: list[ScenarioResult]
    skipped: list[dict]
    aggregate: dict


def generate_scenarios(req: SweepRequest) -> tuple[list[Scenario], list[dict]]:
    """Deterministic scenario grid for a sweep request."""
    scenarios: list[Scenario] = []
    skipped: list[dict] = []
    combo_idx = 0
    for a1 in req.a1:
        for a2 in req.a2:
            for pointer in req.pointer:
                if a1 * a2 * pointer > DIM_CAP:
                    skipped.append(
                        {
                            "a1": a1, "a2": a2, "pointer": pointer,
                            "reason": f"dimension product exceeds cap {DIM_CAP}",
                        }
                    )
                    combo_idx += 1
                    continue
                for i in range(req.count):
                    scenarios.append(
                        _generate_positive(req, combo_idx, i, a1, a2, pointer)
                    )
                if req.negative_controls:
                    for j, check in enumerate(req.checks):
                        s = _generate_negative(req, combo_idx, j, check, a1, a2, pointer)
                        if s is not None:
                            scenarios.append(s)
                combo_idx += 1
    return scenarios, skipped


def run_sweep(req: SweepRequest) -> SweepOutcome:
    """Run the full scenario grid and aggregate pass counts and residuals."""
    scenarios, skipped = generate_scenarios(req)
    results = [run_scenario(s) for s in scenarios]

    check_stats = {
        c: {"runs": 0, "passed": 0, "max_residual": None}
        for c in CHECK_IDS if c in req.checks
    }
    negative_stats: dict[str, dict] = {}
    positives_passed = 0
    positives = 0
    negatives_ok = True
    for result in results:
        if result.scenario.negative_control:
            for report in result.reports:
                stats = negative_stats.setdefault(
                    report.check_id,
                    {"runs": 0, "failed_as_expected": 0, "min_residual": None},
                )
                stats["runs"] += 1
                if not report.passed and report.residuals:
                    stats["failed_as_expected"] += 1
                else:
                    negatives_ok = False
                worst = report.max_residual
                if stats["min_residual"] is None or worst < stats["min_residual"]:
                    stats["min_residual"] = worst
        else:
            positives += 1
            positives_passed += int(result.passed)
            for report in result.reports:
                stats = check_stats.setdefault(
                    report.check_id, {"runs": 0, "passed": 0, "max_residual": None}
                )
                stats["runs"] += 1
                stats["passed"] += int(report.passed)
                worst = report.max_residual
                if stats["max_residual"] is None or worst > stats["max_residual"]:
                    stats["max_residual"] = worst

    all_passed = positives_passed == positives and negatives_ok
    aggregate = {
        "config": {
            "a1": list(req.a1),
            "a2": list(req.a2),
            "pointer": list(req.pointer),
            "count": req.count,
            "seed": req.seed,
            "checks": list(req.checks),
            "tolerance": req.tolerance,
            "negative_controls": req.negative_controls,
        },
        "scenarios_run": positives,
        "scenarios_passed": positives_passed,
        "checks": check_stats,
        "negative_controls": negative_stats,
        "skipped": skipped,
        "all_passed": all_passed,
    }
    return SweepOutcome(results, skipped, aggregate)
