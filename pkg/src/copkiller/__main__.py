import sys

from copkiller.cli import main

sys.exit(main())
