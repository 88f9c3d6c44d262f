"""Shared report builders for the verify and learn commands."""
from app.services.distribution_service import tv_distance
from app.utils.messages import MSG


def build_verify_report(rows: list) -> tuple[list[str], bool]:
    """Build report lines from verify rows.
    Returns (lines, all_passed) tuple.
    """
    lines = []
    for row in rows:
        template = MSG.VERIFY_PASS if row.passed else MSG.VERIFY_FAIL
        lines.append(template.format(suite=row.suite, name=row.name, deviation=row.deviation))
    passed = sum(1 for row in rows if row.passed)
    lines.append(MSG.VERIFY_SUMMARY.format(passed=passed, total=len(rows)))
    return lines, passed == len(rows)


def build_learn_report(result, truth=None, mismatches=None) -> dict:
    """Machine-readable summary of one learner run."""
    report = {
        "atoms": len(result.mixture),
        "seconds": round(result.seconds, 4),
        "samples": result.samples,
        "slack": result.slack,
        "stage_sizes": [len(stage.support) for stage in result.stages],
        "plan": {
            "max_len": result.plan.max_len,
            "stage_j_max": result.plan.stage_j_max,
            "final_j_max": result.plan.final_j_max,
            "sigma_min": {str(s): v for s, v in result.plan.sigma_min.items()},
            "budgets": {str(s): v for s, v in result.plan.budgets.items()},
        },
    }
    if truth is not None:
        report["tv"] = tv_distance(truth, result.mixture)
        report["support_mismatch_stages"] = mismatches or []
    return report
