"""
CLI Entrypoint
--------------

Runs the ``prosody-toolkit`` command line.  See ``python main.py --help``
for the subcommands and ``python main.py SUBCOMMAND --help`` for their
options.
"""

import sys

from src.prosody_toolkit.cli import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
