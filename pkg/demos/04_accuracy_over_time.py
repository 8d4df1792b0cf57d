"""Rolling accuracy against ground truth, rendered as a text sparkline.

Labels a scripted stream with the truth, corrupts a stretch of labels to
simulate a disagreement, and shows how the rolling accuracy series dips
and recovers. The same numbers land in accuracy.csv for real plotting.

Run: python demos/04_accuracy_over_time.py
"""

import io
from pathlib import Path

from vigil.session import GroundTruthLabel, emit_plot_data, run_replay
from vigil.stream_io import write_landmark_stream
from vigil.synth import build_stream

ACTIVE = (0.32, 0.30, 0.0)
CLOSED = (0.10, 0.30, 0.0)

script = [ACTIVE] * 60 + [CLOSED] * 60 + [ACTIVE] * 60
header, frames = build_stream(script, fps=30.0, source="demo-accuracy")
buf = io.StringIO()
write_landmark_stream(header, frames, buf)

# Truth: ACTIVE / EYES_CLOSED / DROWSY exactly as the engine will label it,
# except frames 80-99 are deliberately labeled ACTIVE - a disagreement zone.
report_unlabeled = run_replay(io.StringIO(buf.getvalue()))
labels = []
for row in report_unlabeled.metrics_rows:
    truth = row.state_label
    if 80 <= row.frame_index < 100:
        from vigil.detector import StateLabel

        truth = StateLabel.ACTIVE
    labels.append(GroundTruthLabel(row.frame_index, truth))

report = run_replay(io.StringIO(buf.getvalue()), labels=labels)

BARS = " .:-=+*#%@"
print("Rolling accuracy (window 30), one character per labeled frame:")
line = "".join(BARS[min(int(v * (len(BARS) - 1)), len(BARS) - 1)] for _, v in report.accuracy_series)
print("  " + line)
low_frame, low = min(report.accuracy_series, key=lambda p: p[1])
print(f"\nLowest point: {low:.4f} at frame {low_frame} "
      f"(20 corrupted labels inside a 30-frame window).")

out_dir = Path(__file__).parent / "demo_out"
written = emit_plot_data(report, out_dir / "accuracy_run")
print("Artifacts:", ", ".join(str(p) for p in written))
