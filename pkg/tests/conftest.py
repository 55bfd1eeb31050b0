"""Shared pytest configuration: keep hypothesis deadlines off.

Several property tests wrap numpy-heavy operations whose first call pays
JIT-ish warmup (BLAS thread pools, import caches); wall-clock deadlines
would make them flaky on loaded CI boxes without adding any checking power.
"""

from __future__ import annotations

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")
