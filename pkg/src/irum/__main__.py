import sys

from irum.cli import main

sys.exit(main())
