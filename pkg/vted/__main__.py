"""`python -m vted`."""
import sys

from vted.main import main

sys.exit(main())
