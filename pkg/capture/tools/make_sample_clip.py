"""Regenerate the committed sample clip used by the capture contract test.

Run from capture/:  python tools/make_sample_clip.py

Renders 45 frames of a bright face-like blob (skin-toned ellipse, always
fully visible, drifting slightly) on a dark cabin background, 320x240 at
30 fps, MJPG. The template predictor localizes it by luminance every
frame, so capture output has a face on every record.
"""

from __future__ import annotations

import math
from pathlib import Path

import cv2
import numpy as np

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "sample_face.avi"

WIDTH, HEIGHT, FRAMES, FPS = 320, 240, 45, 30.0


def draw_frame(i: int) -> np.ndarray:
    frame = np.full((HEIGHT, WIDTH, 3), 22, np.uint8)  # dim cabin
    cx = 160 + round(12 * math.sin(2 * math.pi * i / FRAMES))
    cy = 120 + round(6 * math.cos(2 * math.pi * i / FRAMES))
    cv2.ellipse(frame, (cx, cy), (55, 72), 0, 0, 360, (185, 205, 225), -1)
    # Facial features darker than the skin blob but above background.
    cv2.circle(frame, (cx - 22, cy - 18), 7, (90, 100, 110), -1)
    cv2.circle(frame, (cx + 22, cy - 18), 7, (90, 100, 110), -1)
    cv2.ellipse(frame, (cx, cy + 30), (20, 9), 0, 0, 360, (100, 110, 120), -1)
    return frame


def main() -> int:
    OUT.parent.mkdir(parents=True, exist_ok=True)
    writer = cv2.VideoWriter(str(OUT), cv2.VideoWriter_fourcc(*"MJPG"), FPS, (WIDTH, HEIGHT))
    if not writer.isOpened():
        raise RuntimeError("cannot open MJPG video writer")
    for i in range(FRAMES):
        writer.write(draw_frame(i))
    writer.release()
    print(f"wrote {OUT} ({FRAMES} frames, {OUT.stat().st_size} bytes)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
