from hypothesis import HealthCheck, settings

# Exact rational arithmetic makes individual examples slow but never flaky;
# wall-clock deadlines just add noise.
settings.register_profile(
    "exact",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("exact")
