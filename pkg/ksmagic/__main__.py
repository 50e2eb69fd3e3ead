import sys

from ksmagic.run import cli_main

sys.exit(cli_main())
