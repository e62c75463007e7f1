import sys

from dagdepth.cli import main

sys.exit(main())
