"""vigil-capture: convert video into a .vlm.jsonl landmark stream.

    vigil-capture --source <path|cam:N> --predictor <model> --out <file.vlm.jsonl>
                  [--fps F] [--max-frames N]

The predictor model decides the backend: a dlib .dat shape predictor, or a
.json template model for controlled footage (see the package README).
Exit codes: 0 success, 2 bad arguments or model load failure, 3 source
unavailable.
"""

from __future__ import annotations

import argparse
import sys

from .capture import CaptureConfig, capture
from .errors import ModelLoadFailureError, SourceUnavailableError


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vigil-capture",
        description="Convert a video file or camera feed into a landmark stream.",
    )
    parser.add_argument("--source", required=True, help="video path, or cam:N for a camera index")
    parser.add_argument("--predictor", required=True, help="68-landmark predictor model file")
    parser.add_argument("--out", required=True, help="output .vlm.jsonl path")
    parser.add_argument("--fps", type=float, default=None, help="override the source fps")
    parser.add_argument("--max-frames", type=int, default=None, help="stop after N frames")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.max_frames is not None and args.max_frames < 1:
        print("vigil-capture: --max-frames must be >= 1", file=sys.stderr)
        return 2
    config = CaptureConfig(
        source=args.source,
        predictor_model_path=args.predictor,
        output_path=args.out,
        fps_override=args.fps,
        max_frames=args.max_frames,
    )
    try:
        written = capture(config)
    except ModelLoadFailureError as exc:
        print(f"vigil-capture: {exc}", file=sys.stderr)
        return 2
    except SourceUnavailableError as exc:
        print(f"vigil-capture: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"vigil-capture: i/o error: {exc}", file=sys.stderr)
        return 4
    print(f"wrote {written} records to {config.output_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
