import sys

from .cli_scan import main

sys.exit(main())
