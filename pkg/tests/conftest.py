import hypothesis
import numpy as np

np.seterr(all="warn")

hypothesis.settings.register_profile(
    "numeric", max_examples=25, deadline=None,
    suppress_health_check=[hypothesis.HealthCheck.too_slow],
)
hypothesis.settings.load_profile("numeric")
