import sys

from anderson_lab.cli import main

sys.exit(main())
