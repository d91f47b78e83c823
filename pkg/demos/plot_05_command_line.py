"""
Jobs from the command line
==========================

The ``tpimplicit`` command wraps the same steps. Each call here is what the
shell would run, for instance ``tpimplicit matrix ex51.json --mu 1 --nu 1``.
"""

from pathlib import Path

import tpimplicit
from tpimplicit.cli import main

data = Path(tpimplicit.__file__).parent / "data"

main(["analyze", str(data / "segre.json")])
main(["matrix", str(data / "ex51.json"), "--mu", "1", "--nu", "1", "--no-verify"])
main(["implicitize", str(data / "ex53.json"), "--output", "json"])
