"""Multipartite quantum correlation measures."""

import json as _json

from ._qcorr import *  # noqa: F401,F403
from ._qcorr import QcorrError, analyze_json as _analyze_json


def analyze(rho, measures=("witness", "gmc", "entropy"), config=None):
    """Run the analysis report and return it as a dict."""
    args = [rho, list(measures)]
    if config is not None:
        args.append(config)
    return _json.loads(_analyze_json(*args))


__all__ = [name for name in dir() if not name.startswith("_")]
