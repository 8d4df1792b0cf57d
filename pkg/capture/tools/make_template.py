"""Regenerate the 68-point mean-shape template model.

Run from capture/:  python tools/make_template.py

Writes src/vigil_capture/models/mean_face_68.json: a neutral upright face
layout (open eyes, closed-ish mouth) in coordinates normalized to the face
bounding box, plus the luma-threshold detection parameters the template
predictor uses. The layout follows the canonical 68-point indexing: jaw
0-16, brows 17-26, nose 27-35, right eye 36-41, left eye 42-47, outer lip
48-59, inner lip 60-67.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "vigil_capture" / "models" / "mean_face_68.json"


def layout() -> list[tuple[float, float]]:
    # Working canvas: x in [-80, 80], y in [-60, 120]; normalized at the end.
    pts: list[tuple[float, float]] = [(0.0, 0.0)] * 68

    for i in range(17):  # jaw arc
        t = (i - 8) / 8.0
        pts[i] = (t * 78.0, 38.0 + 80.0 * math.cos(t * math.pi / 2.0))
    for i in range(5):  # brows
        pts[17 + i] = (-60.0 + 10.0 * i, -22.0 - 4.0 * math.sin(math.pi * i / 4.0))
        pts[22 + i] = (20.0 + 10.0 * i, -22.0 - 4.0 * math.sin(math.pi * i / 4.0))
    for i in range(4):  # nose bridge
        pts[27 + i] = (0.0, -5.0 + 11.0 * i)
    for i in range(5):  # nostril line
        pts[31 + i] = (-10.0 + 5.0 * i, 32.0)

    def eye(cx: float, base: int):
        # Open eye, EAR ~ 0.3: lid gap 9 px over a 30 px span.
        pts[base + 0] = (cx - 15.0, 0.0)
        pts[base + 1] = (cx - 5.0, -4.5)
        pts[base + 2] = (cx + 5.0, -4.5)
        pts[base + 3] = (cx + 15.0, 0.0)
        pts[base + 4] = (cx + 5.0, 4.5)
        pts[base + 5] = (cx - 5.0, 4.5)

    eye(-40.0, 36)
    eye(40.0, 42)

    drop, gap = 62.0, 7.0  # mouth center and lip half-gap (MAR ~ 0.35)
    top = [(-20.0, -0.8 * gap), (-10.0, -gap), (0.0, -gap), (10.0, -gap), (20.0, -0.8 * gap)]
    pts[48] = (-30.0, drop)
    for i, (dx, dy) in enumerate(top):
        pts[49 + i] = (dx, drop + dy)
    pts[54] = (30.0, drop)
    for i, (dx, dy) in enumerate(reversed(top)):
        pts[55 + i] = (dx, drop - dy)
    inner = [(-15.0, 0.0), (-7.0, -0.5 * gap), (0.0, -0.5 * gap), (7.0, -0.5 * gap), (15.0, 0.0)]
    for i, (dx, dy) in enumerate(inner):
        pts[60 + i] = (dx, drop + dy)
    for i, (dx, dy) in enumerate([(7.0, 0.5 * gap), (0.0, 0.5 * gap), (-7.0, 0.5 * gap)]):
        pts[65 + i] = (dx, drop + dy)
    return pts


def main() -> int:
    pts = layout()
    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    x0, y0 = min(xs), min(ys)
    w, h = max(xs) - x0, max(ys) - y0
    normalized = [[round((x - x0) / w, 6), round((y - y0) / h, 6)] for x, y in pts]
    model = {
        "kind": "template-68",
        "description": "Neutral upright mean-face template; coordinates normalized "
                       "to the detected face bounding box.",
        "points": normalized,
        "min_luma": 140,
        "min_area_frac": 0.005,
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(model, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {OUT} ({len(normalized)} points)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
