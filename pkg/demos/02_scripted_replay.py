"""Script a drive, replay it, and read the event log.

Builds a synthetic stream with two blinks, a yawn, a long eye closure, and
a glance away; replays it through the detector; prints the events and
summary; leaves the artifacts in demo_out/.

Run: python demos/02_scripted_replay.py
"""

import io
from pathlib import Path

from vigil.session import emit_plot_data, run_replay
from vigil.stream_io import write_event_csv, write_landmark_stream
from vigil.synth import build_stream

ACTIVE = (0.32, 0.30, 0.0)
CLOSED = (0.10, 0.30, 0.0)
YAWNING = (0.32, 0.85, 0.0)
TURNED = (0.32, 0.30, 30.0)

script = (
    [ACTIVE] * 20
    + [CLOSED] * 2 + [ACTIVE] * 30          # a quick blink
    + [CLOSED] * 4 + [ACTIVE] * 20          # a slower blink
    + [YAWNING] * 12 + [ACTIVE] * 20        # one yawn
    + [CLOSED] * 60 + [ACTIVE] * 20         # a drowsy episode (48+ closed frames)
    + [TURNED] * 15 + [ACTIVE] * 17         # looking away from the road
)

print(f"Scripted {len(script)} frames at 30 fps ({len(script) / 30:.1f} s of driving).")

header, frames = build_stream(script, fps=30.0, source="demo-scripted-drive")
out_dir = Path(__file__).parent / "demo_out"
out_dir.mkdir(exist_ok=True)
stream_path = out_dir / "drive.vlm.jsonl"
with open(stream_path, "w", encoding="utf-8", newline="") as f:
    write_landmark_stream(header, frames, f)
print(f"Stream written to {stream_path}")

with open(stream_path, encoding="utf-8") as f:
    report = run_replay(f)

print("\nEvents:")
for event in report.events:
    print(f"  frame {event.frame_index:3d} @ {event.timestamp_ms:5d} ms  "
          f"{event.kind.value:<20} {event.detail}")

summary = report.summary
print(f"\nSummary: {summary.frames_seen} frames, {summary.blink_count} blinks")
for kind, count in summary.event_counts.items():
    if count:
        print(f"  {kind.value}: {count}")

with open(out_dir / "events.csv", "w", encoding="utf-8", newline="") as f:
    write_event_csv(report.events, f)
emit_plot_data(report, out_dir)
print(f"\nevents.csv and metrics.csv written to {out_dir}/")

buf = io.StringIO()
write_event_csv(report.events, buf)
print("\nevents.csv contents:")
print(buf.getvalue())
