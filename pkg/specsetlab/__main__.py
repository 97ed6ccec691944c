import sys

from specsetlab.cli import main

sys.exit(main())
