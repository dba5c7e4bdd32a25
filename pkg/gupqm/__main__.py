import sys

from gupqm.controller.cli import main

sys.exit(main())
