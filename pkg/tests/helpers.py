"""Shared checks for normal form reports."""

from crnormal.normalform import transform


def residual(report):
    """``transform(original, map) - normalized`` up to the report's order."""
    out = transform(report.original, report.map).phi
    wt = report.normalized.weighting
    if out.weighting != wt:
        out = out.reweight(wt)
    n = report.order
    assert out.trunc >= n
    return out.truncate(n) - report.normalized.phi.truncate(n)
