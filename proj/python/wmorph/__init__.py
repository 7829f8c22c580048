"""Exact and numerical toolkit for the generalized Weinstein morphism on CP^n.

The heavy lifting lives in the compiled extension ``_wmorph``; this package
re-exports it and adds a few dict-returning conveniences.
"""

import json as _json

try:
    from ._wmorph import *  # noqa: F401,F403
    from ._wmorph import __version__, discrepancy_report_json  # noqa: F401
except ImportError:  # in-tree builds put the extension directly on sys.path
    from _wmorph import *  # noqa: F401,F403
    from _wmorph import __version__, discrepancy_report_json  # noqa: F401


def discrepancy_report(n, samples=100000, seed=42, convention="normalized", workers=0):
    """Cross-validation record for one n, as a plain dict.

    Holds the Monte-Carlo and quadrature oracles, both closed forms, gaps and
    verdict strings; see the JSON schema in the README.
    """
    return _json.loads(
        discrepancy_report_json(
            n, samples=samples, seed=seed, convention=convention, workers=workers
        )
    )
