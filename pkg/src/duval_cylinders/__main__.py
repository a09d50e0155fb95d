import sys

from duval_cylinders.cli import main

sys.exit(main())
