"""The live transport: pipe a stream into `vigil live` and watch events.

Spawns the CLI exactly as a shell pipeline would (`... | vigil live`),
feeds it a scripted stream on stdin, and shows the event lines arriving,
then runs `vigil stats` over the log the replay path writes.

Run: python demos/03_live_pipe.py
"""

import io
import subprocess
import sys
from pathlib import Path

from vigil.stream_io import write_landmark_stream
from vigil.synth import build_stream

ACTIVE = (0.32, 0.30, 0.0)

script = (
    [ACTIVE] * 10
    + [(0.10, 0.30, 0.0)] * 3 + [ACTIVE] * 10     # blink
    + [(0.32, 0.85, 0.0)] * 8 + [ACTIVE] * 10     # yawn
    + [None] * 8 + [ACTIVE] * 10                  # the face drops out, then returns
)

header, frames = build_stream(script, fps=30.0, source="demo-live")
buf = io.StringIO()
write_landmark_stream(header, frames, buf)
stream_bytes = buf.getvalue().encode()

out_dir = Path(__file__).parent / "demo_out"
out_dir.mkdir(exist_ok=True)

print("$ ... | vigil live --out demo_out/live_run")
proc = subprocess.run(
    [sys.executable, "-m", "vigil", "live", "--out", str(out_dir / "live_run")],
    input=stream_bytes,
    capture_output=True,
)
print(proc.stdout.decode(), end="")
print(f"(exit {proc.returncode})")

print("\n$ vigil stats demo_out/live_run/events.csv")
proc = subprocess.run(
    [sys.executable, "-m", "vigil", "stats", str(out_dir / "live_run" / "events.csv")],
    capture_output=True,
)
print(proc.stdout.decode(), end="")
