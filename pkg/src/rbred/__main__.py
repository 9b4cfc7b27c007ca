import sys

from rbred.cli import main

sys.exit(main())
