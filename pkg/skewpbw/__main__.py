"""Allow ``python -m skewpbw``."""

import sys

from .cli import main

sys.exit(main())
