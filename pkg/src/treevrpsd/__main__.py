"""Allow ``python -m treevrpsd``."""

import sys

from .cli import main

sys.exit(main())
