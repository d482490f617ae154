"""Newton polygons with exact rational vertices.

A polygon is stored by its vertex list, starting at (0, 0), with strictly
increasing slopes between consecutive vertices.  Slope multisets carry
(slope, horizontal length) pairs; the two views convert losslessly.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .cyclo import INF
from .errors import HypothesisError


@dataclass(frozen=True)
class SlopeMultiset:
    """Sorted (slope, multiplicity) pairs with distinct slopes."""

    items: tuple

    @classmethod
    def from_pairs(cls, pairs):
        acc = {}
        for s, m in pairs:
            s, m = Fraction(s), Fraction(m)
            if m <= 0:
                raise HypothesisError("multiplicities must be positive")
            acc[s] = acc.get(s, 0) + m
        return cls(tuple(sorted((s, _intify(m)) for s, m in acc.items())))

    @classmethod
    def from_list(cls, slopes):
        return cls.from_pairs((s, 1) for s in slopes)

    @property
    def width(self):
        return sum(m for _, m in self.items)

    def expanded(self):
        """Flat sorted slope list (integer multiplicities only)."""
        out = []
        for s, m in self.items:
            if Fraction(m).denominator != 1:
                raise ValueError("non-integral multiplicity")
            out.extend([s] * int(m))
        return out

    def multiplicity(self, s):
        s = Fraction(s)
        for t, m in self.items:
            if t == s:
                return m
        return 0

    def scaled(self, k):
        """Each multiplicity times k (k-fold union with itself)."""
        return SlopeMultiset(tuple((s, _intify(m * k)) for s, m in self.items))

    def __repr__(self):
        body = ", ".join(f"{s} x{m}" for s, m in self.items)
        return "{" + body + "}"


def _intify(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple
    degenerate: bool = field(default=False, compare=False)

    @property
    def width(self):
        return self.vertices[-1][0]

    @property
    def endpoint(self):
        return self.vertices[-1]

    def __call__(self, x):
        """Piecewise-linear value at abscissa x (0 <= x <= width)."""
        x = Fraction(x)
        vs = self.vertices
        if x < 0 or x > vs[-1][0]:
            raise ValueError(f"x={x} outside [0, {vs[-1][0]}]")
        for (x0, y0), (x1, y1) in zip(vs, vs[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        return vs[0][1]

    def __repr__(self):
        return "NP[" + ", ".join(f"({x}, {y})" for x, y in self.vertices) + "]"


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _lower_hull(points):
    hull = []
    for pt in points:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


def hull_from_values(points):
    """Lower convex hull of (i, v_i); INF values are skipped."""
    pts = sorted((Fraction(i), Fraction(v)) for i, v in points if v is not INF)
    if not pts or pts[0][0] != 0:
        raise HypothesisError("need a finite point at abscissa 0")
    # keep the lowest value per abscissa
    dedup = []
    for pt in pts:
        if dedup and dedup[-1][0] == pt[0]:
            continue
        dedup.append(pt)
    hull = _lower_hull(dedup)
    return NewtonPolygon(tuple((_intify(x), _intify(y)) for x, y in hull),
                         degenerate=len(hull) == 1)


def slopes(np_):
    vs = np_.vertices
    return SlopeMultiset.from_pairs(
        (Fraction(y1 - y0) / (x1 - x0), x1 - x0) for (x0, y0), (x1, y1) in zip(vs, vs[1:]))


def polygon_from_slopes(ms):
    x, y = Fraction(0), Fraction(0)
    verts = [(0, 0)]
    for s, m in ms.items:
        x += m
        y += s * m
        verts.append((_intify(x), _intify(y)))
    return NewtonPolygon(tuple(verts))


def lies_above(a, b):
    """a(x) >= b(x) at every breakpoint of either polygon."""
    if a.width != b.width:
        raise HypothesisError(f"width mismatch: {a.width} vs {b.width}")
    xs = sorted({v[0] for v in a.vertices} | {v[0] for v in b.vertices})
    return all(a(x) >= b(x) for x in xs)


def dilate(np_, k):
    """Horizontal and vertical scaling by k: every slope repeated k times."""
    if k < 1:
        raise HypothesisError("dilation factor must be positive")
    return NewtonPolygon(tuple((_intify(x * k), _intify(y * k)) for x, y in np_.vertices),
                         degenerate=np_.degenerate)


def truncate_lt_one(np_):
    """The slope < 1 part (a prefix of the polygon)."""
    verts = [np_.vertices[0]]
    for (x0, y0), (x1, y1) in zip(np_.vertices, np_.vertices[1:]):
        if Fraction(y1 - y0) / (x1 - x0) >= 1:
            break
        verts.append((x1, y1))
    return NewtonPolygon(tuple(verts))


def union_slopes(multisets):
    pairs = []
    for ms in multisets:
        pairs.extend(ms.items)
    return SlopeMultiset.from_pairs(pairs)


# ---------------------------------------------------------------------------
# emitters
# ---------------------------------------------------------------------------

def to_csv(np_):
    """Rows ``x,y_num,y_den`` with a header line."""
    lines = ["x,y_num,y_den"]
    for x, y in np_.vertices:
        y = Fraction(y)
        lines.append(f"{x},{y.numerator},{y.denominator}")
    return "\n".join(lines) + "\n"


def to_svg(np_, width=480, height=320, margin=40, title=None):
    """Polyline rendering with axis ticks at integer abscissae."""
    xmax = max(Fraction(np_.width), Fraction(1))
    ymax = max(max(Fraction(y) for _, y in np_.vertices), Fraction(1))

    def sx(x):
        return margin + float(Fraction(x) / xmax) * (width - 2 * margin)

    def sy(y):
        return height - margin - float(Fraction(y) / ymax) * (height - 2 * margin)

    pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in np_.vertices)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
           f'<line x1="{margin}" y1="{sy(0):.2f}" x2="{width - margin}" y2="{sy(0):.2f}" stroke="black"/>',
           f'<line x1="{margin}" y1="{sy(0):.2f}" x2="{margin}" y2="{margin}" stroke="black"/>']
    for i in range(int(xmax) + 1):
        out.append(f'<line x1="{sx(i):.2f}" y1="{sy(0):.2f}" x2="{sx(i):.2f}" '
                   f'y2="{sy(0) + 5:.2f}" stroke="black"/>')
        out.append(f'<text x="{sx(i):.2f}" y="{sy(0) + 18:.2f}" font-size="10" '
                   f'text-anchor="middle">{i}</text>')
    if title:
        out.append(f'<text x="{width / 2:.0f}" y="{margin / 2:.0f}" font-size="12" '
                   f'text-anchor="middle">{title}</text>')
    out.append(f'<polyline points="{pts}" fill="none" stroke="steelblue" stroke-width="2"/>')
    for x, y in np_.vertices:
        out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="3" fill="steelblue"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
