"""Run the acceptance suite and print its one-line-per-criterion summary.

    python3 scripts/run_acceptance.py [--threads N]

The relation sweep dominates the runtime; N worker processes split it.
"""

import argparse
import os
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    args = ap.parse_args()
    env = dict(os.environ, GLREP_THREADS=str(args.threads))
    cmd = [sys.executable, "-m", "pytest", "-q", str(ROOT / "tests" / "test_acceptance.py")]
    return subprocess.call(cmd, cwd=ROOT, env=env)


if __name__ == "__main__":
    sys.exit(main())
