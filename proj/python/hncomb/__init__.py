"""Exact combinatorics of admissible sets, sigma-conjugacy classes and
Hodge-Newton decomposability in extended affine Weyl groups."""

from ._hncomb import ConfigError, Instance, scan, verify, __version__

__all__ = ["ConfigError", "Instance", "scan", "verify", "__version__"]
