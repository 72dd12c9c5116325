import sys

from drsa.cli import run_command

sys.exit(run_command(sys.argv[1:]))
