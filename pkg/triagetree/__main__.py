"""Entry point for `python -m triagetree`."""

import sys

from triagetree.cli.main import main

sys.exit(main())
