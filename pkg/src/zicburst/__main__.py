import sys

from zicburst.cli import main

sys.exit(main())
