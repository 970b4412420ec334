import sys

from pinwheel.cli import main

sys.exit(main())
