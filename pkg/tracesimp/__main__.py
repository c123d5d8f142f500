import sys

from tracesimp.cli import main

sys.exit(main())
