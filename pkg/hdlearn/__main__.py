import sys

from hdlearn.cli import main

sys.exit(main())
