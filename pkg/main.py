# -*- coding: utf-8 -*-
"""
Main entry point for the FRLab command-line tool.
"""

import sys

# Use absolute import based on the project structure
from src.cli_experiments.cli import main

if __name__ == '__main__':
    sys.exit(main())
