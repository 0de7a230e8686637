"""Run the command line interface with ``python -m zipshift``."""

import sys

from .cli import main

sys.exit(main())
