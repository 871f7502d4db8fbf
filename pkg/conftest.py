import sys
from pathlib import Path

# Modules are imported from the repository root, as unipred.py does
sys.path.insert(0, str(Path(__file__).resolve().parent))
