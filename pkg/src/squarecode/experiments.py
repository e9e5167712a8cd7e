"""Trial runners shared by the CLI and the test-suite."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

from .distinguisher import (
    BoundInputs,
    bound_for,
    is_distinguishable,
    measure_square_dual_dim,
    lp_identity_check,
    random_expected_dim,
)
from .families import FamilyParams, derive_seed, sample_instance
from .reports import DistinguisherReport


def bound_report(fp: FamilyParams) -> DistinguisherReport:
    """Report from the closed-form bound alone (no code is built)."""
    b = BoundInputs(fp.q, fp.m, fp.r, fp.n, fp.family)
    bd = bound_for(b)
    return DistinguisherReport(
        family=fp.family,
        q=fp.q,
        m=fp.m,
        n=fp.n,
        r=fp.r,
        predicted_dim=bd.value,
        random_expected_dim=random_expected_dim(b),
        e_used=bd.e,
        saturated=bd.saturated,
        verdict="distinguishable" if is_distinguishable(b) else "not-distinguishable",
        seed=fp.seed,
    )


def run_trial(fp: FamilyParams, with_lp: bool = False) -> DistinguisherReport:
    """Sample an instance, build its public code and measure dim (C^⊥)^2."""
    fp.validate()
    rep = bound_report(fp)
    C = sample_instance(fp).public_code()
    rep.dual_dim = C.n - C.k
    if with_lp:
        res = lp_identity_check(C)
        rep.measured_dim = res.measured
        rep.deficiency_D = res.D
    else:
        rep.measured_dim = measure_square_dual_dim(C)
    return rep


def expected_dual_dim(fp: FamilyParams) -> int:
    return fp.r if fp.family == "grs" else fp.r * fp.m


def is_sound(rep: DistinguisherReport) -> bool:
    return rep.measured_dim is None or rep.measured_dim <= rep.predicted_dim


def is_generic(rep: DistinguisherReport, fp: FamilyParams) -> bool:
    return rep.dual_dim == expected_dual_dim(fp)


def _trial_job(args):
    fp, with_lp = args
    return run_trial(fp, with_lp)


def trial_params(fp: FamilyParams, trials: int) -> list[FamilyParams]:
    return [
        FamilyParams(fp.family, fp.q, fp.m, fp.n, fp.r, derive_seed(fp.seed, i), fp.flavor)
        for i in range(trials)
    ]


def run_trials(fp: FamilyParams, trials: int, with_lp: bool = False, jobs: int = 1):
    """Yield reports in trial-index order; jobs > 1 computes them in worker processes."""
    params = trial_params(fp, trials)
    if jobs <= 1:
        for p in params:
            yield run_trial(p, with_lp)
        return
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        yield from ex.map(_trial_job, [(p, with_lp) for p in params])
