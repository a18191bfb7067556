import sys

from conesurf.cli import main

sys.exit(main())
