import logging
import os
from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)


def _int_env(name, default):
    """Integer setting from the environment; unset or malformed values give default."""
    raw = os.getenv(name)
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"{name}={raw!r} is not an integer, using {default}")
        return default


# Parallelism cap for enumeration / verification (default: machine parallelism)
FS_THREADS = max(1, _int_env("FS_THREADS", os.cpu_count() or 1))

# Logging
FS_LOG_LEVEL = os.getenv("FS_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# Enumeration settings
FS_ENUM_K_LIMIT = _int_env("FS_ENUM_K_LIMIT", 16)  # exhaustive search beyond this is refused
FS_DEFAULT_KMAX = _int_env("FS_DEFAULT_KMAX", 6)

# CORS - API is open to any origin unless restricted
CORS_ORIGINS = os.getenv("CORS_ORIGINS", "*").split(",") if os.getenv("CORS_ORIGINS") else ["*"]
