#!/usr/bin/env python3
"""
Stochastic R-matrix engine - command-line entry point
"""

import sys
from pathlib import Path

# Add project directory to path
sys.path.append(str(Path(__file__).parent))

from src.cli.main import main

if __name__ == "__main__":
    exit(main())
