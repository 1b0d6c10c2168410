"""Allow ``python -m shuffles``."""
import sys

from .cli import main

sys.exit(main())
