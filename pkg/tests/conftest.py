import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

SEED = 20240917

settings.register_profile("fixed", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("fixed")
