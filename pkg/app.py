"""
Regular simplex tensors: eigenpairs, power iteration dynamics and robustness
"""

import sys

from cli import main


if __name__ == "__main__":
    sys.exit(main())
