import sys

from modquality.cli import main

sys.exit(main())
