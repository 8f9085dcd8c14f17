"""Extremality certificates for Kraus families with fixed marginals."""

import json as _json

from ._cpmarg import *  # noqa: F401,F403
from ._cpmarg import _oracle, _table, _verify

__version__ = "0.1.0"


def verify(family, *params):
    """Run the `verify` command and return its report as a dict."""
    return _json.loads(_verify(family, list(params)))


def oracle(d, m):
    return _json.loads(_oracle(d, m))


def table(d_min=2, d_max=5, m_min=1, m_max=5, fixed_rows=True):
    return _json.loads(_table(d_min, d_max, m_min, m_max, fixed_rows))
