"""A tour of the landmark geometry: EAR, MAR, and the orientation angle.

Run: python demos/01_geometry_tour.py
"""

from vigil.detector import compute_metrics
from vigil.geometry import Point2, Vector2, angle_between_vectors, eye_aspect_ratio
from vigil.landmarks import LandmarkFrame
from vigil.synth import synthetic_face_points

print("An open symmetric eye: two lid gaps of 2 px over a 4 px span -> EAR 0.5")
eye = [Point2(0, 0), Point2(1, 1), Point2(3, 1), Point2(4, 0), Point2(3, -1), Point2(1, -1)]
print("  eye_aspect_ratio:", eye_aspect_ratio(eye))

print("\nClose the lids (upper points meet lower points) and EAR collapses to 0:")
closed = [Point2(0, 0), Point2(1, 0), Point2(3, 0), Point2(4, 0), Point2(3, 0), Point2(1, 0)]
print("  eye_aspect_ratio:", eye_aspect_ratio(closed))

print("\nThe orientation angle compares the eye->mouth axis with straight down:")
for v in [Vector2(0, 1), Vector2(1, 1), Vector2(1, 0)]:
    print(f"  axis ({v.dx:+.0f},{v.dy:+.0f}) -> {angle_between_vectors(v, Vector2(0, 1)):6.2f} deg")

print("\nWhole synthetic faces invert exactly: request metrics, read them back.")
for ear, mar, angle in [(0.32, 0.30, 0.0), (0.10, 0.30, 0.0), (0.32, 0.85, 0.0), (0.32, 0.30, 25.0)]:
    frame = LandmarkFrame(0, 0, synthetic_face_points(ear=ear, mar=mar, angle_deg=angle))
    m = compute_metrics(frame)
    print(
        f"  requested ear={ear:.2f} mar={mar:.2f} angle={angle:5.1f}"
        f"  ->  measured ear={m.ear_mean:.4f} mar={m.mar:.4f} angle={m.angle_deg:7.4f}"
    )

print("\nRotating every landmark leaves the ratios alone (they are distance ratios):")
frame = LandmarkFrame(0, 0, synthetic_face_points(ear=0.32, mar=0.85, angle_deg=40.0))
m = compute_metrics(frame)
print(f"  rotated 40 deg: ear={m.ear_mean:.4f} mar={m.mar:.4f} angle={m.angle_deg:.4f}")
