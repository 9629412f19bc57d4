import sys
from pathlib import Path

# make the oracle helpers importable from any test
sys.path.insert(0, str(Path(__file__).parent))
