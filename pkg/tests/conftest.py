import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# property suites run at least this many randomized cases
PROPERTY_CASES = 500

slow = pytest.mark.skipif(os.environ.get("LCDRING_SLOW") != "1", reason="set LCDRING_SLOW=1 to run")
