from __future__ import annotations

import sys
from pathlib import Path

# make tests/oracles importable as `oracles` from any test module
sys.path.insert(0, str(Path(__file__).resolve().parent))
