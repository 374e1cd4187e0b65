"""The analysis pipeline: expand, normalize, lift, solve, tabulate, judge.

``run_analysis`` produces the invariant report, ``run_verification`` runs
every identity suite at the primary point and ``compare`` sets two reports
side by side. Independent sample points can be processed in worker
processes (``settings.workers``).
"""

from __future__ import annotations

import logging
import random
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor

from src.bundle import make_bundle_chart
from src.config import settings
from src.errors import (
    DegenerateFrameError,
    InputError,
    InternalConsistencyError,
    ProblemFileError,
)
from src.expr import Expr, expand_to_jet, parse
from src.fields import Chart, RegularityProfile, VField, regularity_check
from src.frame import (
    CanonicalFrame,
    Residual,
    ResidualReport,
    adapted_coefficients,
    solve_normalization,
    torsion_functionals,
    uniqueness_probe,
    verify_structural,
)
from src.invariants import (
    FlatnessEvidence,
    FlatnessVerdict,
    TorsionTable,
    bf1_exact_check,
    derived_flag_ranks,
    equation_type_test,
    flatness_verdict,
    model_coframe,
    point_flatness,
    structure_table,
    torsion_table,
    w_functions,
    w_homogeneity_check,
)
from src.jets import Jet, format_rational, to_rational
from src.metrics import record_outcome, timed_stage
from src.normalize import (
    NormalizationGauge,
    normalize_pair,
    ode_field,
    vertical_field,
    wunschmann_residuals,
)
from src.pipeline.models import (
    CompareReport,
    InvariantReport,
    NormalizationEvidence,
    PointEvidence,
    ProblemSpec,
    VerificationReport,
    WunschmannEvidence,
)
from src.pipeline.sampling import Point, format_point, primary_point, sample_points
from src.validation import validate_or_raise

logger = logging.getLogger(__name__)

Fiber = tuple[object, object, object]
FrameHook = Callable[[CanonicalFrame], CanonicalFrame]

# Verdicts compared by ``compare``; all are independent of gauge and point.
INVARIANT_VERDICTS = ("regular", "wunschmann", "equation_type", "flat")


# ── Frame construction ──


def reference_pair(
    k: int,
    ast: Expr,
    point: Point,
    order: int,
    timings: dict[str, float] | None = None,
) -> tuple[VField, VField, RegularityProfile]:
    """``(X_F, d/dx_k)`` at ``point`` and their regularity profile.

    Raises:
        ExpansionDomainError: F cannot be expanded exactly at ``point``
    """
    chart = Chart.base(k, point)
    with timed_stage("expand", timings):
        rhs = expand_to_jet(ast, point, order, space=chart.space)
        x_f = ode_field(rhs, chart, k)
        v0 = vertical_field(chart, k, order)
        profile = regularity_check(x_f, v0, k)
    return x_f, v0, profile


def frame_from_pair(
    x_f: VField,
    v0: VField,
    k: int,
    fiber: Fiber,
    gauge: NormalizationGauge | None = None,
    timings: dict[str, float] | None = None,
) -> CanonicalFrame:
    """Normalize a regular pair, lift it and solve for the adapted frame."""
    with timed_stage("normalize", timings):
        reference = normalize_pair(x_f, v0, k, gauge=gauge)
    with timed_stage("bundle", timings):
        bundle = make_bundle_chart(reference, fiber)
    with timed_stage("frame", timings):
        frame = solve_normalization(bundle)
    logger.debug("adapted frame valid to order %d", frame.order)
    return frame


def _require_regular(profile: RegularityProfile) -> None:
    if not profile.regular:
        raise DegenerateFrameError(
            f"pair is not regular at the expansion point (ranks {profile.ranks})"
        )


def build_frame(
    k: int,
    ast: Expr,
    point: Point,
    fiber: Fiber,
    order: int,
    gauge: NormalizationGauge | None = None,
    timings: dict[str, float] | None = None,
) -> CanonicalFrame:
    """Run expansion, normalization, bundle lift and frame solve at one point.

    Raises:
        ExpansionDomainError: F cannot be expanded exactly at ``point``
        DegenerateFrameError: the pair is not regular at ``point``
        InsufficientOrderError: ``order`` is too small for the construction
        InternalConsistencyError: a normalization condition failed
    """
    x_f, v0, profile = reference_pair(k, ast, point, order, timings)
    _require_regular(profile)
    return frame_from_pair(x_f, v0, k, fiber, gauge=gauge, timings=timings)


def _fiber(spec: ProblemSpec) -> Fiber:
    f0, f1, g = (to_rational(v) for v in spec.resolved_fiber())
    return (f0, f1, g)


def _constant(frame: CanonicalFrame, jet: Jet) -> str:
    return format_rational(frame.bundle.chart.constant_term(jet))


# ── Evidence at one point ──


def analyze_point(
    k: int,
    ast: Expr,
    point: Point,
    fiber: Fiber,
    order: int,
    label: str = "p0",
    gauge: NormalizationGauge | None = None,
    timings: dict[str, float] | None = None,
) -> PointEvidence:
    """Full evidence at one expansion point."""
    x_f, v0, regularity = reference_pair(k, ast, point, order, timings)
    _require_regular(regularity)
    frame = frame_from_pair(x_f, v0, k, fiber, gauge=gauge, timings=timings)
    reference = frame.bundle.reference
    wunschmann = wunschmann_residuals(reference)

    with timed_stage("tables", timings):
        torsion = torsion_table(frame)
        structure = structure_table(frame, torsion)
    with timed_stage("verdicts", timings):
        adapted = torsion_functionals(frame.bv[0], frame.bundle, solver=frame.solver, bx=frame.bx)
        coframe = model_coframe(frame)
        evidence = PointEvidence(
            label=label,
            base_point=format_point(point),
            fiber_point=tuple(format_rational(to_rational(v)) for v in fiber),
            order=order,
            regularity=regularity,
            wunschmann=WunschmannEvidence(
                holds=wunschmann.holds,
                constant_terms=[format_rational(v) for v in wunschmann.constant_terms],
            ),
            normalization=NormalizationEvidence(
                alpha=_constant(frame, frame.alpha),
                beta=_constant(frame, frame.beta),
                gamma0=_constant(frame, frame.gamma0),
                gamma1=_constant(frame, frame.gamma1),
                c_tilde=_constant(frame, frame.constants.c_tilde) if k == 3 else None,
                adapted={name: _constant(frame, j) for name, j in adapted.as_dict().items()},
                c_ij={
                    name: format_rational(value)
                    for name, value in adapted_coefficients(reference).items()
                },
            ),
            torsion=torsion.constant_terms(),
            torsion_jets=_torsion_jets(torsion) if settings.full_jets else None,
            w=[_constant(frame, w) for w in structure.w],
            structural=verify_structural(frame),
            bf1_exact=bf1_exact_check(frame),
            model=coframe.brackets,
            obstruction=coframe.obstruction,
            equation_type=equation_type_test(torsion),
            flatness=point_flatness(torsion, structure.w, label=label),
            homogeneity=w_homogeneity_check(structure),
            derived_flag=derived_flag_ranks(frame),
        )
    if timings is not None:
        evidence = evidence.model_copy(update={"timings": dict(timings)})
    return evidence


def _torsion_jets(torsion: TorsionTable) -> dict[str, str]:
    return {f"T{p}{q}_{r}": str(jet) for (p, q, r), jet in torsion.torsion_items()}


# ── Flatness ──


def point_flatness_evidence(
    k: int, ast: Expr, point: Point, fiber: Fiber, order: int, label: str
) -> FlatnessEvidence:
    """Flatness evidence alone: torsion and ``w_i`` to first order."""
    frame = build_frame(k, ast, point, fiber, order)
    return point_flatness(torsion_table(frame), w_functions(frame), label=label)


FlatnessJob = tuple[int, str, dict[str, str], tuple[str, ...], int, str]


def _flatness_worker(job: FlatnessJob) -> FlatnessEvidence:
    """Process-pool entry point; arguments travel as text."""
    k, rhs, point, fiber, order, label = job
    exact_point = {name: to_rational(value) for name, value in point.items()}
    exact_fiber = tuple(to_rational(v) for v in fiber)
    return point_flatness_evidence(k, parse(rhs, k), exact_point, exact_fiber, order, label)


def flatness_test(
    spec: ProblemSpec,
    points: Sequence[Point],
    primary: FlatnessEvidence | None = None,
) -> FlatnessVerdict:
    """FLAT when torsion and all ``w_i`` vanish to first order at every point.

    Args:
        spec: The problem
        points: Sample points still to be analyzed
        primary: Evidence already computed at the primary point, counted as
            one of the tested points

    Raises:
        ValueError: fewer than two points in total
    """
    total = len(points) + (primary is not None)
    if total < 2:
        raise ValueError(f"flatness needs at least 2 sample points (got {total})")
    fiber = tuple(spec.resolved_fiber())
    order = spec.resolved_order()
    offset = 1 if primary is not None else 0
    jobs = [
        (spec.k, spec.rhs, format_point(point), fiber, order, f"p{i + offset}")
        for i, point in enumerate(points)
    ]
    with timed_stage("flatness"):
        if settings.workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=settings.workers) as pool:
                evidence = list(pool.map(_flatness_worker, jobs))
        else:
            evidence = [_flatness_worker(job) for job in jobs]
    if primary is not None:
        evidence.insert(0, primary)
    verdict = flatness_verdict(evidence)
    logger.info("flatness at %d points: %s", len(evidence), verdict.status.value)
    return verdict


# ── Commands ──


def _run(command: str, body: Callable[[], object]) -> object:
    try:
        result = body()
    except InputError:
        record_outcome(command, "input_error")
        raise
    except InternalConsistencyError:
        record_outcome(command, "internal_error")
        raise
    record_outcome(command, "success")
    return result


def run_analysis(spec: ProblemSpec) -> InvariantReport:
    """Analyze a problem at its primary point and at seeded sample points.

    Raises:
        ProblemFileError: the specification is invalid
        InputError: F cannot be analyzed at the chosen points
        InternalConsistencyError: a guaranteed identity failed
    """

    def body() -> InvariantReport:
        validate_or_raise(spec)
        ast = parse(spec.rhs, spec.k)
        seed = spec.seed if spec.seed is not None else settings.default_seed
        samples = spec.samples if spec.samples is not None else settings.default_samples
        order = spec.resolved_order()
        rng = random.Random(seed)
        timings: dict[str, float] | None = {} if settings.include_timings else None

        point = primary_point(spec, ast, rng)
        logger.info("analyzing k=%d at %s, order %d", spec.k, format_point(point), order)
        primary = analyze_point(
            spec.k, ast, point, _fiber(spec), order, label="p0", timings=timings
        )
        extra = sample_points(ast, spec.k, samples - 1, rng)
        flatness = flatness_test(spec, extra, primary=primary.flatness)
        return InvariantReport(
            problem=spec,
            seed=seed,
            order=order,
            primary=primary,
            flatness=flatness,
            timings=dict(timings) if timings is not None else {},
        )

    return _run("analyze", body)  # type: ignore[return-value]


def _jet_residual(identity: str, jet: Jet) -> Residual:
    return Residual(
        identity=identity,
        holds=jet.is_zero(),
        order=jet.order,
        witness="" if jet.is_zero() else str(jet),
    )


def verification_suites(frame: CanonicalFrame) -> list[ResidualReport]:
    """Every identity suite that holds for all equations."""
    adapted = torsion_functionals(frame.bv[0], frame.bundle, solver=frame.solver, bx=frame.bx)
    torsion = torsion_table(frame)
    equation_type = [
        _jet_residual(f"T{p}{q}_{r}=0", jet)
        for (p, q, r), jet in torsion.torsion_items()
        if r > max(p, q) + 1
    ]
    flag = derived_flag_ranks(frame)
    return [
        ResidualReport(
            name="adapted",
            residuals=[_jet_residual(f"{n}=0", j) for n, j in adapted.as_dict().items()],
        ),
        verify_structural(frame),
        bf1_exact_check(frame),
        model_coframe(frame).brackets,
        ResidualReport(name="equation-type", residuals=equation_type),
        ResidualReport(
            name="derived-flag",
            residuals=[
                Residual(
                    identity=f"ranks={flag.expected}",
                    holds=flag.holds,
                    order=frame.order,
                    witness="" if flag.holds else f"ranks={flag.ranks}",
                )
            ],
        ),
    ]


def run_verification(spec: ProblemSpec, frame_hook: FrameHook | None = None) -> VerificationReport:
    """Run every identity suite at the primary point.

    Args:
        spec: The problem
        frame_hook: Replaces the solved frame before checking; lets tests
            feed a corrupted frame

    Raises:
        ProblemFileError: the specification is invalid
        InputError: F cannot be analyzed at the primary point
    """

    def body() -> VerificationReport:
        validate_or_raise(spec)
        ast = parse(spec.rhs, spec.k)
        seed = spec.seed if spec.seed is not None else settings.default_seed
        order = spec.resolved_order()
        point = primary_point(spec, ast, random.Random(seed))
        frame = build_frame(spec.k, ast, point, _fiber(spec), order)
        if frame_hook is not None:
            frame = frame_hook(frame)
        with timed_stage("verify"):
            suites = verification_suites(frame)
            uniqueness = uniqueness_probe(frame)
        report = VerificationReport(
            problem=spec, order=order, suites=suites, uniqueness=uniqueness
        )
        if not report.passed:
            logger.warning("verification failed: %s", report.first_failure)
        return report

    return _run("verify", body)  # type: ignore[return-value]


def compare(first: ProblemSpec, second: ProblemSpec) -> CompareReport:
    """Compare the invariant verdicts of two problems.

    Only differences are conclusive; matching verdicts never establish
    equivalence.

    Raises:
        ProblemFileError: the problems have different k
    """
    if first.k != second.k:
        raise ProblemFileError(
            f"cannot compare equations of different order (k = {first.k} and k = {second.k})"
        )
    a, b = run_analysis(first), run_analysis(second)
    differing = [name for name in INVARIANT_VERDICTS if a.verdicts[name] != b.verdicts[name]]
    logger.info("compare: differing verdicts %s", differing or "none")
    return CompareReport(first=a, second=b, differing=differing)
