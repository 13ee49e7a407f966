"""Module entry point; `python -m lumen` mirrors the console script."""

import sys

from .cli import main

sys.exit(main())
