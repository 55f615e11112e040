import sys

from scfgame.cli import main

sys.exit(main())
