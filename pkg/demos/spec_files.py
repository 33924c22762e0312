"""
Writing a spec by hand and running it through the command runner
================================================================

The same text that `dorfman gallery NAME` prints can be edited and fed to
any command. `run` is what the CLI calls; it returns the report instead of
exiting.
"""

import os
import tempfile

from dorfman import SpecError, parse_spec
from dorfman.cli import run

SPEC = """\
[chart]
coordinates = x, y

# T + T* of the plane
[twisted CM]

[graph omega]
host = CM
type = two-form
omega.x.y = 1 + x^2
"""

doc = parse_spec(SPEC)
print([s.header() for s in doc.sections])

# printing and re-parsing is lossless
assert parse_spec(doc.to_text()) == doc

# errors point at a line and column
try:
    parse_spec(SPEC.replace("1 + x^2", "1 + x^"))
except SpecError as exc:
    print("error:", exc)

# commands take a path or a gallery name; here we write the text to a file first
with tempfile.NamedTemporaryFile("w", suffix=".spec", delete=False) as fh:
    fh.write(SPEC)
report = run("check-dirac", fh.name)
os.unlink(fh.name)
print(report.status, report.exit)
print(list(report.to_machine()))
