"""Planar convex bodies: slicing, area, x-axis symmetrization/shaking,
affine images, and uniform sampling.

Polygons carry exact rational vertices; disk and ellipse slice bounds are
returned as high-precision rationals (see `rationals.SQRT_PRECISION_BITS`).
The boundary functions fix the reading y_top = sup, y_bottom = inf of the
slice ordinates, and the support is [min abscissa, max abscissa].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .rationals import (
    Rational,
    format_rational,
    rational_sqrt,
    to_fraction,
)

#: Vertex count of the inscribed polygon used when a curved body must be
#: converted to a polygon for an exact transform.
CURVED_APPROX_VERTICES = 64


class UnsupportedBodyError(ValueError):
    """Transform not defined for this body form."""


@dataclass(frozen=True)
class Polygon:
    """Strictly convex polygon, counter-clockwise rational vertices."""

    vertices: tuple

    def __post_init__(self):
        verts = [
            (to_fraction(x), to_fraction(y)) for x, y in self.vertices
        ]
        # Drop consecutive duplicates (closed cyclically).
        cleaned = []
        for v in verts:
            if not cleaned or v != cleaned[-1]:
                cleaned.append(v)
        if len(cleaned) > 1 and cleaned[0] == cleaned[-1]:
            cleaned.pop()
        if len(cleaned) < 3:
            raise ValueError("polygon needs at least three distinct vertices")
        if _signed_area(cleaned) < 0:
            cleaned.reverse()
        n = len(cleaned)
        for i in range(n):
            a, b, c = cleaned[i], cleaned[(i + 1) % n], cleaned[(i + 2) % n]
            if _cross(a, b, c) <= 0:
                raise ValueError("vertices are not strictly convex")
        object.__setattr__(self, "vertices", tuple(cleaned))

    @property
    def n(self):
        return len(self.vertices)


def triangle(a, b, c) -> Polygon:
    return Polygon((a, b, c))


@dataclass(frozen=True)
class Disk:
    center: tuple
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(
            self, "center", tuple(to_fraction(v) for v in self.center)
        )
        object.__setattr__(self, "radius", to_fraction(self.radius))
        if self.radius <= 0:
            raise ValueError("radius must be positive")


@dataclass(frozen=True)
class Ellipse:
    """Affine image of the unit disk: {t + m.w : |w| = 1} and its interior."""

    m: tuple  # 2x2 row-major rational matrix
    t: tuple

    def __post_init__(self):
        m = tuple(tuple(to_fraction(v) for v in row) for row in self.m)
        t = tuple(to_fraction(v) for v in self.t)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "t", t)
        if _det2(m) == 0:
            raise ValueError("degenerate ellipse")


ConvexBody = (Polygon, Disk, Ellipse)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _signed_area(vertices):
    total = Fraction(0)
    n = len(vertices)
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        total += x0 * y1 - x1 * y0
    return total / 2


def _det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


# -- support and slicing ---------------------------------------------------


def x_range(body):
    """Exact (polygon) or high-precision rational (curved) abscissa support."""
    if isinstance(body, Polygon):
        xs = [v[0] for v in body.vertices]
        return min(xs), max(xs)
    if isinstance(body, Disk):
        return body.center[0] - body.radius, body.center[0] + body.radius
    if isinstance(body, Ellipse):
        half = rational_sqrt(body.m[0][0] ** 2 + body.m[0][1] ** 2)
        return body.t[0] - half, body.t[0] + half
    raise TypeError(f"not a convex body: {body!r}")


def y_bounds(body, x):
    """(bottom, top) ordinates of the vertical slice at abscissa x."""
    x = to_fraction(x)
    lo, hi = x_range(body)
    if x < lo or x > hi:
        raise ValueError(f"abscissa {x} outside the body support")
    if isinstance(body, Polygon):
        ys = []
        verts = body.vertices
        n = len(verts)
        for i in range(n):
            (x0, y0), (x1, y1) = verts[i], verts[(i + 1) % n]
            if x0 == x1:
                if x0 == x:
                    ys.extend((y0, y1))
                continue
            if min(x0, x1) <= x <= max(x0, x1):
                ys.append(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
        return min(ys), max(ys)
    if isinstance(body, Disk):
        (cx, cy), r = body.center, body.radius
        h = rational_sqrt(max(Fraction(0), r * r - (x - cx) ** 2))
        return cy - h, cy + h
    if isinstance(body, Ellipse):
        # Slice of {t + m.w : |w| <= 1}: w lies on a line a.w = d cut with
        # the unit disk; the slice endpoints are the two circle points.
        a = (body.m[0][0], body.m[0][1])
        b = (body.m[1][0], body.m[1][1])
        d = x - body.t[0]
        norm2 = a[0] ** 2 + a[1] ** 2
        disc = max(Fraction(0), 1 - d * d / norm2)
        s = rational_sqrt(disc)
        base = (d * a[0] / norm2, d * a[1] / norm2)
        perp_scale = rational_sqrt(1 / norm2)
        perp = (-a[1] * perp_scale, a[0] * perp_scale)
        y1 = body.t[1] + b[0] * (base[0] + s * perp[0]) + b[1] * (
            base[1] + s * perp[1]
        )
        y2 = body.t[1] + b[0] * (base[0] - s * perp[0]) + b[1] * (
            base[1] - s * perp[1]
        )
        return min(y1, y2), max(y1, y2)
    raise TypeError(f"not a convex body: {body!r}")


def width(body, x):
    lo, hi = y_bounds(body, x)
    return hi - lo


@dataclass(frozen=True)
class AreaValue:
    """Rational multiple of a power of pi."""

    coefficient: Fraction
    pi_power: int

    def __float__(self):
        return float(self.coefficient) * float(np.pi) ** self.pi_power


def area(body):
    """Exact rational area for polygons; a pi-multiple for disk/ellipse."""
    if isinstance(body, Polygon):
        return _signed_area(body.vertices)
    if isinstance(body, Disk):
        return AreaValue(body.radius**2, 1)
    if isinstance(body, Ellipse):
        return AreaValue(abs(_det2(body.m)), 1)
    raise TypeError(f"not a convex body: {body!r}")


def area_float(body):
    a = area(body)
    return float(a) if isinstance(a, AreaValue) else float(a)


# -- x-axis transforms -----------------------------------------------------


def _width_profile(polygon):
    xs = sorted({v[0] for v in polygon.vertices})
    return [(x, width(polygon, x)) for x in xs]


def _profile_polygon(profile, bottom):
    # Build a polygon from per-abscissa (bottom(x), bottom(x)+W(x)) pairs.
    lower = [(x, bottom(x, w)) for x, w in profile]
    upper = [(x, bottom(x, w) + w) for x, w in profile]
    ring = lower + upper[::-1]
    # Collinear break points (linear width across a vertex abscissa, flat
    # bottom after shaking) must be dropped before Polygon's strictness check.
    ring = _drop_collinear(_dedupe_ring(ring))
    return Polygon(tuple(ring))


def _dedupe_ring(ring):
    out = []
    for v in ring:
        if not out or v != out[-1]:
            out.append(v)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def _drop_collinear(ring):
    changed = True
    while changed and len(ring) > 3:
        changed = False
        for i in range(len(ring)):
            a = ring[(i - 1) % len(ring)]
            b = ring[i]
            c = ring[(i + 1) % len(ring)]
            if _cross(a, b, c) == 0:
                ring = ring[:i] + ring[i + 1 :]
                changed = True
                break
    return ring


def _as_polygon(body):
    if isinstance(body, Polygon):
        return body
    if isinstance(body, (Disk, Ellipse)):
        return inscribed_polygon(body, CURVED_APPROX_VERTICES)
    raise TypeError(f"not a convex body: {body!r}")


def inscribed_polygon(body, vertex_count) -> Polygon:
    """Rational polygon inscribed in a disk or ellipse.

    Boundary points at `vertex_count` angles, each rounded to high-precision
    rationals; the rounding is documented, not exact.
    """
    from .rationals import round_to_dyadic

    pts = []
    for k in range(vertex_count):
        theta = 2 * np.pi * k / vertex_count
        w = (
            round_to_dyadic(float(np.cos(theta)), 30),
            round_to_dyadic(float(np.sin(theta)), 30),
        )
        if isinstance(body, Disk):
            pts.append(
                (
                    body.center[0] + body.radius * w[0],
                    body.center[1] + body.radius * w[1],
                )
            )
        else:
            m, t = body.m, body.t
            pts.append(
                (
                    t[0] + m[0][0] * w[0] + m[0][1] * w[1],
                    t[1] + m[1][0] * w[0] + m[1][1] * w[1],
                )
            )
    return Polygon(tuple(pts))


def steiner_symmetrize(body):
    """Recenter every vertical slice on the x-axis (|y| <= W(x)/2)."""
    if isinstance(body, Disk):
        return Disk((body.center[0], Fraction(0)), body.radius)
    if isinstance(body, Ellipse):
        if _is_axis_aligned(body):
            return Ellipse(body.m, (body.t[0], Fraction(0)))
        raise UnsupportedBodyError(
            "symmetrization of a general ellipse is not supported; "
            "use inscribed_polygon first"
        )
    poly = _as_polygon(body)
    return _profile_polygon(_width_profile(poly), lambda x, w: -w / 2)


def shake(body):
    """Rest every vertical slice on the x-axis (0 <= y <= W(x))."""
    poly = _as_polygon(body)
    return _profile_polygon(_width_profile(poly), lambda x, w: Fraction(0))


def _is_axis_aligned(ellipse):
    m = ellipse.m
    return (m[0][1] == 0 and m[1][0] == 0) or (m[0][0] == 0 and m[1][1] == 0)


def affine_image(body, matrix, translation=(0, 0)):
    """Image under an invertible affine map; disk becomes ellipse."""
    m = tuple(tuple(to_fraction(v) for v in row) for row in matrix)
    t = tuple(to_fraction(v) for v in translation)
    if _det2(m) == 0:
        raise ValueError("singular affine map")
    if isinstance(body, Polygon):
        verts = [
            (
                m[0][0] * x + m[0][1] * y + t[0],
                m[1][0] * x + m[1][1] * y + t[1],
            )
            for x, y in body.vertices
        ]
        return Polygon(tuple(verts))
    if isinstance(body, Disk):
        r = body.radius
        c = body.center
        new_m = ((m[0][0] * r, m[0][1] * r), (m[1][0] * r, m[1][1] * r))
        new_t = (
            m[0][0] * c[0] + m[0][1] * c[1] + t[0],
            m[1][0] * c[0] + m[1][1] * c[1] + t[1],
        )
        return Ellipse(new_m, new_t)
    if isinstance(body, Ellipse):
        em, et = body.m, body.t
        new_m = tuple(
            tuple(sum(m[i][k] * em[k][j] for k in range(2)) for j in range(2))
            for i in range(2)
        )
        new_t = (
            m[0][0] * et[0] + m[0][1] * et[1] + t[0],
            m[1][0] * et[0] + m[1][1] * et[1] + t[1],
        )
        return Ellipse(new_m, new_t)
    raise TypeError(f"not a convex body: {body!r}")


def contains(body, point) -> bool:
    """Closed containment; exact for polygons with rational input."""
    x, y = point
    if isinstance(body, Polygon):
        x, y = to_fraction(x), to_fraction(y)
        verts = body.vertices
        n = len(verts)
        return all(
            _cross(verts[i], verts[(i + 1) % n], (x, y)) >= 0
            for i in range(n)
        )
    if isinstance(body, Disk):
        dx = float(x) - float(body.center[0])
        dy = float(y) - float(body.center[1])
        return dx * dx + dy * dy <= float(body.radius) ** 2 * (1 + 1e-12)
    if isinstance(body, Ellipse):
        m = np.array([[float(v) for v in row] for row in body.m])
        t = np.array([float(v) for v in body.t])
        w = np.linalg.solve(m, np.array([float(x), float(y)]) - t)
        return float(w @ w) <= 1 + 1e-9
    raise TypeError(f"not a convex body: {body!r}")


# -- sampling --------------------------------------------------------------


def sample_points(body, count, rng) -> np.ndarray:
    """(count, 2) float array of uniform points in the body."""
    if isinstance(body, Polygon):
        verts = np.array([[float(x), float(y)] for x, y in body.vertices])
        v0 = verts[0]
        a = verts[1:-1] - v0
        b = verts[2:] - v0
        areas = np.abs(a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]) / 2
        idx = rng.choice(len(areas), size=count, p=areas / areas.sum())
        u = rng.random(count)
        v = rng.random(count)
        flip = u + v > 1
        u[flip] = 1 - u[flip]
        v[flip] = 1 - v[flip]
        return v0 + u[:, None] * a[idx] + v[:, None] * b[idx]
    if isinstance(body, Disk):
        r = np.sqrt(rng.random(count)) * float(body.radius)
        theta = rng.random(count) * 2 * np.pi
        c = np.array([float(v) for v in body.center])
        return c + np.column_stack((r * np.cos(theta), r * np.sin(theta)))
    if isinstance(body, Ellipse):
        r = np.sqrt(rng.random(count))
        theta = rng.random(count) * 2 * np.pi
        w = np.column_stack((r * np.cos(theta), r * np.sin(theta)))
        m = np.array([[float(v) for v in row] for row in body.m])
        t = np.array([float(v) for v in body.t])
        return t + w @ m.T
    raise TypeError(f"not a convex body: {body!r}")


def sample_point(body, rng):
    """One uniform point in the body, as a (float, float) pair."""
    p = sample_points(body, 1, rng)[0]
    return float(p[0]), float(p[1])


# -- serialization ---------------------------------------------------------


def body_to_json(body):
    if isinstance(body, Polygon):
        return {
            "type": "polygon",
            "vertices": [
                [format_rational(x), format_rational(y)]
                for x, y in body.vertices
            ],
        }
    if isinstance(body, Disk):
        return {
            "type": "disk",
            "center": [format_rational(v) for v in body.center],
            "r": format_rational(body.radius),
        }
    if isinstance(body, Ellipse):
        return {
            "type": "ellipse",
            "m": [[format_rational(v) for v in row] for row in body.m],
            "t": [format_rational(v) for v in body.t],
        }
    raise TypeError(f"not a convex body: {body!r}")


def body_from_json(doc):
    kind = doc.get("type")
    if kind == "polygon":
        return Polygon(
            tuple((Fraction(x), Fraction(y)) for x, y in doc["vertices"])
        )
    if kind == "disk":
        return Disk(
            tuple(Fraction(v) for v in doc["center"]), Fraction(doc["r"])
        )
    if kind == "ellipse":
        return Ellipse(
            tuple(tuple(Fraction(v) for v in row) for row in doc["m"]),
            tuple(Fraction(v) for v in doc["t"]),
        )
    raise ValueError(f"unknown body type {kind!r}")
