from pathlib import Path

TOOL_VERSION = "0.1.0"

# Base Directories
BASE_DIR = Path(__file__).resolve().parent.parent
APP_DIR = BASE_DIR / "app"

# ENV
ENV_PATH = BASE_DIR / ".env"
TOLERANCE_ENV_VAR = "CALABI_TOL"

# Config
CONFIG_PATH = APP_DIR / "config.json"
CONFIG_ROOT_KEY = "runtime_modules"

# Jets: n <= 8 keeps C(n+4, 4) monomials small
MAX_JET_ORDER = 4
MAX_DIMENSION = 8

# Tolerance policy: absolute tolerance scaled by (1 + tensor norm)
DEFAULT_TOLERANCE = 1e-8
IDENTITY_TOLERANCE = 1e-9
TIE_TOLERANCE = 1e-6

# Sampling
DEFAULT_SEED = 1
DEFAULT_SAMPLE_COUNT = 100

CASE_PREFIX = "C"

