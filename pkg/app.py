#!/usr/bin/env python3
"""
Moduli Desk
Main application entry point.

Exact, finite checks for Maurer-Cartan moduli of DGLAs, descent of groupoid-valued
prestacks on finite sites, and surface-group holonomy into finite groups.
"""
import sys
from pathlib import Path

# Add the src directory to the Python path
src_path = Path(__file__).parent / "src"
sys.path.insert(0, str(src_path))

try:
    from src.cli import main

    if __name__ == "__main__":
        sys.exit(main())

except ImportError as e:
    print(f"Import error: {e}", file=sys.stderr)
    print("\nPlease ensure you have:", file=sys.stderr)
    print("1. Installed all dependencies: pip install -r requirements.txt", file=sys.stderr)
    print("2. Created the config/config.toml file with required configuration", file=sys.stderr)
    sys.exit(2)

except Exception as e:
    print(f"Application error: {e}", file=sys.stderr)
    print("\nCheck the logs and configuration for more details.", file=sys.stderr)
    sys.exit(2)
