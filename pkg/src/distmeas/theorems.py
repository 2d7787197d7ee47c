"""Named checkers, one per operator identity the library verifies.

Each checker returns a :class:`CheckReport` of labeled residuals against a
tolerance.  Check ids are short stable tokens (``eq5`` ... ``eq16b``) that
the scenario schema, the CLI, and the service all share:

========  ==================================================================
id        identity
========  ==================================================================
eq5       certainty: ``<psi|E|psi> = 1``  iff  ``E|psi> = |psi>``
eq7       calibration and pointer dynamics agree for a coupling unitary
eq8       no signaling: the nonselective distant state is the evolved
          initial reduced state, independent of the measurement model
eq9       a nearby-subsystem operator commutes under the nearby-subsystem
          partial trace: ``tr_B(Y X) = tr_B(X Y)``
eq11a     the selective distant state equals the evolved conditional state
eq12      pointer statistics equal the object-side Born probabilities
eq13      conditional states weighted by their probabilities recompose the
          reduced state
eq15      measuring one family of a twin pair steers the distant subsystem
          by the ideal (project-and-renormalize) update of its twin
eq16b     the nonselective twin update leaves the distant state unchanged
          (off-diagonal blocks between twin projectors vanish)
========  ==================================================================
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import ShapeMismatchError
from .measurement import (
    MeasurementModel,
    luders_nonselective,
    luders_update,
    measure_subsystem,
    verify_calibration,
    verify_dynamical,
)
from .observables import TwinPair
from .states import (
    PROBABILITY_FLOOR,
    BipartiteState,
    born_probabilities,
    conditional_state,
    reduced_state,
)

CHECK_IDS = ("eq5", "eq7", "eq8", "eq9", "eq11a", "eq12", "eq13", "eq15", "eq16b")
CHECK_ALIASES = {"appA": "eq5", "appB": "eq9"}


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one checker: labeled residuals against a tolerance.

    ``passed`` is true exactly when the largest residual is below
    ``tolerance``.  ``context`` is a JSON-able fingerprint of the scenario
    (seed, dimensions, model kinds, sabotage markers, ...).
    """

    check_id: str
    residuals: dict[str, float]
    tolerance: float
    passed: bool
    context: dict = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    @classmethod
    def evaluate(cls, check_id: str, residuals: dict[str, float], tolerance: float,
                 context: dict | None = None) -> "CheckReport":
        clean = {k: float(v) for k, v in residuals.items()}
        passed = max(clean.values(), default=0.0) < tolerance
        return cls(check_id, clean, float(tolerance), passed, dict(context or {}))

    def to_json_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "passed": self.passed,
            "tolerance": self.tolerance,
            "residuals": dict(self.residuals),
            "context": dict(self.context),
        }


def _evolved(v: np.ndarray | None, rho: np.ndarray) -> np.ndarray:
    return rho if v is None else v @ rho @ v.conj().T


def check_certainty(event, psi, tol: float = 1e-10, context: dict | None = None) -> CheckReport:
    """An event is certain in a pure state iff it fixes the state vector.

    Both sides are measured: the probability gap ``|<psi|E|psi> - 1|`` and
    the vector residual ``||E psi - psi||``.  The reported residual is the
    mismatch of the biconditional: zero when both sides agree (both below
    or both above ``tol``), the larger side otherwise.  The raw values are
    recorded in the context.
    """
    e = linalg.as_complex_matrix(event, "event")
    v = np.asarray(psi, dtype=complex).reshape(-1)
    if e.shape != (v.size, v.size):
        raise ShapeMismatchError((v.size, v.size), e.shape, what="event")
    prob_residual = float(abs(np.vdot(v, e @ v) - 1.0))
    vector_residual = float(np.linalg.norm(e @ v - v))
    agree = (prob_residual < tol) == (vector_residual < tol)
    mismatch = 0.0 if agree else max(prob_residual, vector_residual)
    ctx = dict(context or {})
    ctx["probability_residual"] = prob_residual
    ctx["vector_residual"] = vector_residual
    return CheckReport.evaluate("eq5", {"biconditional": mismatch}, tol, ctx)


def check_under_trace_commutativity(
    dims: tuple[int, int],
    rng: np.random.Generator,
    tol: float = 1e-12,
    context: dict | None = None,
) -> CheckReport:
    """``tr_B(Y X) = tr_B(X Y)`` for a random pair of operators.

    Draws a random operator Y on the traced factor and a random composite
    operator X, then evaluates both orderings through independent code
    paths and reports the Frobenius distance.
    """
    da, db = int(dims[0]), int(dims[1])
    y = linalg.random_complex_matrix(db, db, rng)
    x = linalg.random_complex_matrix(da * db, da * db, rng)
    y_big = linalg.tensor(np.eye(da), y)
    lhs = linalg.partial_trace(y_big @ x, (da, db), (1,))
    rhs = linalg.partial_trace(x @ y_big, (da, db), (1,))
    residual = linalg.frobenius_distance(lhs, rhs)
    return CheckReport.evaluate("eq9", {"commutativity": residual}, tol, context)


def check_calibration_dynamics(
    model: MeasurementModel, tol: float = 1e-10, context: dict | None = None
) -> CheckReport:
    """A coupling is an exact measurement by dynamics iff by calibration.

    Runs both verifiers; an exact model passes both, a generic unitary
    fails both.
    """
    dyn = verify_dynamical(model, tol)
    cal = verify_calibration(model, tol)
    residuals = {"dynamical": dyn.max_residual, "calibration": cal.max_residual}
    return CheckReport.evaluate("eq7", residuals, tol, context)


def check_no_signaling(
    phi: BipartiteState,
    models,
    remote_evolution: np.ndarray | None = None,
    tol: float = 1e-10,
    context: dict | None = None,
) -> CheckReport:
    """Nonselective measurement cannot influence the distant subsystem.

    All models must measure on subsystem 2.  Residuals: pairwise distances
    between the nonselective distant states of the models, and each model's
    distance to the evolved initial reduced state.
    """
    outcomes = [measure_subsystem(phi, m, remote_evolution) for m in models]
    target = _evolved(remote_evolution, reduced_state(phi, 1).matrix)
    residuals: dict[str, float] = {}
    for i, out in enumerate(outcomes):
        residuals[f"model{i}_vs_evolved_initial"] = linalg.frobenius_distance(
            out.nonselective_distant_state.matrix, target
        )
    for i in range(len(outcomes)):
        for j in range(i + 1, len(outcomes)):
            residuals[f"model{i}_vs_model{j}"] = linalg.frobenius_distance(
                outcomes[i].nonselective_distant_state.matrix,
                outcomes[j].nonselective_distant_state.matrix,
            )
    return CheckReport.evaluate("eq8", residuals, tol, context)


def check_selective_equals_conditional(
    phi: BipartiteState,
    model: MeasurementModel,
    remote_evolution: np.ndarray | None = None,
    tol: float = 1e-10,
    context: dict | None = None,
) -> CheckReport:
    """Selective measurement steers the distant subsystem to the conditional state.

    For every above-floor outcome the selective distant state must equal
    the evolved conditional state of the measured projector, whatever the
    internal structure of the model.
    """
    out = measure_subsystem(phi, model, remote_evolution)
    borns = born_probabilities(phi, model.measured.projectors)
    residuals: dict[str, float] = {}
    for k, sel in enumerate(out.selective_distant_states):
        if sel is None or borns[k] <= PROBABILITY_FLOOR:
            continue
        cond = conditional_state(phi, model.measured.projectors[k])
        target = _evolved(remote_evolution, cond.matrix)
        residuals[f"outcome_{k}"] = linalg.frobenius_distance(sel.matrix, target)
    return CheckReport.evaluate("eq11a", residuals, tol, context)


def check_probability_consistency(
    phi: BipartiteState,
    model: MeasurementModel,
    remote_evolution: np.ndarray | None = None,
    tol: float = 1e-10,
    context: dict | None = None,
) -> CheckReport:
    """Pointer statistics equal the object-side Born probabilities."""
    out = measure_subsystem(phi, model, remote_evolution)
    borns = born_probabilities(phi, model.measured.projectors)
    residuals = {
        f"outcome_{k}": float(abs(out.probabilities[k] - borns[k]))
        for k in range(model.measured.n_outcomes)
    }
    return CheckReport.evaluate("eq12", residuals, tol, context)


def check_mixture_decomposition(
    phi: BipartiteState,
    family,
    tol: float = 1e-10,
    context: dict | None = None,
) -> CheckReport:
    """Probability-weighted conditional states recompose the reduced state.

    ``family`` is a projector family on subsystem 2; outcomes below the
    probability floor are skipped (their weight is negligible by
    definition of the floor).
    """
    probs = born_probabilities(phi, family)
    acc = np.zeros((phi.d1, phi.d1), dtype=complex)
    for p, e in zip(probs, family):
        if p <= PROBABILITY_FLOOR:
            continue
        acc += p * conditional_state(phi, e).matrix
    residual = linalg.frobenius_distance(acc, reduced_state(phi, 1).matrix)
    return CheckReport.evaluate("eq13", {"mixture": residual}, tol, context)


def _completed_family(projectors, dim: int) -> list[np.ndarray]:
    """Append the null-space projector when the family is incomplete."""
    mats = [np.asarray(p, dtype=complex) for p in projectors]
    rest = np.eye(dim, dtype=complex) - sum(mats)
    if float(np.max(np.abs(rest))) > 1e-10:
        mats.append(rest)
    return mats


def check_distant_luders(
    pair: TwinPair,
    model: MeasurementModel,
    remote_evolution: np.ndarray | None = None,
    tol: float = 1e-10,
    context: dict | None = None,
) -> CheckReport:
    """Measuring the nearby twin family ideally updates the distant state.

    ``model`` must measure the pair's nearby family (its first outcomes
    must be ``pair.e2``; a completion outcome on the null space may
    follow).  For every above-floor outcome the selective distant state
    must match the project-and-renormalize update of the distant twin
    projector, evolved; additionally the nonselective update with the
    completed distant family must leave the reduced state unchanged.
    """
    k_twin = len(pair)
    if model.measured.n_outcomes < k_twin:
        raise ValueError(
            f"model has {model.measured.n_outcomes} outcomes but the pair has {k_twin}"
        )
    for k in range(k_twin):
        dev = float(np.max(np.abs(model.measured.projectors[k] - pair.e2[k])))
        if dev > 1e-8:
            raise ValueError(
                f"model outcome {k} does not measure the pair's nearby projector "
                f"(deviation {dev:.3e})"
            )

    phi = pair.state
    rho_i = reduced_state(phi, 1)
    out = measure_subsystem(phi, model, remote_evolution)
    residuals: dict[str, float] = {}
    for k in range(k_twin):
        sel = out.selective_distant_states[k]
        weight = float(np.trace(rho_i.matrix @ pair.e1[k]).real)
        if sel is None or weight <= PROBABILITY_FLOOR:
            continue
        target = _evolved(remote_evolution, luders_update(rho_i, pair.e1[k]).matrix)
        residuals[f"outcome_{k}"] = linalg.frobenius_distance(sel.matrix, target)
    family1 = _completed_family(pair.e1, phi.d1)
    residuals["nonselective_invariance"] = linalg.frobenius_distance(
        luders_nonselective(rho_i, family1).matrix, rho_i.matrix
    )
    return CheckReport.evaluate("eq15", residuals, tol, context)


def check_nonselective_twin_invariance(
    pair: TwinPair, tol: float = 1e-10, context: dict | None = None
) -> CheckReport:
    """The nonselective twin update is the identity on the distant state.

    Residuals: the distance between ``sum_k E1_k rho E1_k`` (family
    completed on the null space) and the reduced state itself, plus every
    off-diagonal block ``||E1_k rho E1_k'||`` which must vanish because the
    twin projectors act identically on the state.
    """
    rho_i = reduced_state(pair.state, 1)
    family1 = _completed_family(pair.e1, pair.state.d1)
    residuals = {
        "nonselective_invariance": linalg.frobenius_distance(
            luders_nonselective(rho_i, family1).matrix, rho_i.matrix
        )
    }
    for k in range(len(pair)):
        for kp in range(k + 1, len(pair)):
            residuals[f"offdiag_{k}_{kp}"] = float(
                np.linalg.norm(pair.e1[k] @ rho_i.matrix @ pair.e1[kp])
            )
    return CheckReport.evaluate("eq16b", residuals, tol, context)
