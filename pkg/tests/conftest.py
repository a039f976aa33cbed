import sys
from pathlib import Path

# make the standalone oracles importable from any pytest invocation directory
sys.path.insert(0, str(Path(__file__).parent))
