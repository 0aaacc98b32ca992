"""Independent validation paths for the polynomial engine.

Three oracles that share no code with the quadratic engine:

* a cubic dynamic program that counts partial upper triangulations straight
  off a visibility triangle (apex recursion below each upper edge, then a
  path sweep over visible curves);
* an exact-rational realization that turns a formula into concrete plane
  points whose triple orientations reproduce the visibility triangle;
* a brute-force triangulation counter for tiny point sets that backtracks
  over candidate edges with exact crossing tests and a maximality check.

Everything here runs on exact arithmetic (integers and Fractions).
"""

from __future__ import annotations

from fractions import Fraction

from .formula import (CapExceededError, Formula, PRIM, WEDGE, flip, vee,
                      visibility, VisibilityTriangle)
from .tripoly import TriPolynomial

ORACLE_CAP = 64
REALIZE_CAP = 32
POINT_COUNT_CAP = 10


def orientation(p, q, r) -> int:
    """Sign of the signed area of the triangle p,q,r (+1 = counter-clockwise)."""
    det = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (det > 0) - (det < 0)


class RationalPointSet:
    """Chain-ordered plane points with exact rational coordinates."""

    __slots__ = ("points",)

    def __init__(self, points):
        pts = [(Fraction(x), Fraction(y)) for x, y in points]
        for a, b in zip(pts, pts[1:]):
            if a[0] >= b[0]:
                raise ValueError("x-coordinates must be strictly increasing")
        self.points = pts

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def to_csv_text(self) -> str:
        lines = ["x_num,x_den,y_num,y_den"]
        for x, y in self.points:
            lines.append(
                f"{x.numerator},{x.denominator},{y.numerator},{y.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv_text(cls, text: str) -> "RationalPointSet":
        lines = [ln for ln in text.strip().splitlines() if ln]
        if not lines or lines[0].strip() != "x_num,x_den,y_num,y_den":
            raise ValueError("missing point-set CSV header")
        pts = []
        for ln in lines[1:]:
            xn, xd, yn, yd = (int(v) for v in ln.split(","))
            pts.append((Fraction(xn, xd), Fraction(yn, yd)))
        return cls(pts)

    def __repr__(self):
        return f"<{len(self.points)} rational points>"


# ---------------------------------------------------------------------------
# Cubic oracle on visibility triangles
# ---------------------------------------------------------------------------

def oracle_tripoly(tri: VisibilityTriangle, cap: int = ORACLE_CAP) -> TriPolynomial:
    """Exact triangulation polynomial computed from the triangle alone.

    ``region[i][k]`` counts the triangulations of the area between edge
    (i, k) and the chain curve: every such triangulation has a unique apex
    triangle on (i, k), whose legs must again be chain or upper edges (every
    in-between point lies below an upper edge, so the split is always
    geometrically valid).  A second sweep walks all x-monotone visible
    curves and bins them by edge count.
    """
    n = tri.n
    if n > cap:
        raise CapExceededError(f"oracle capped at n <= {cap}")
    sign = tri.sign
    region = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        region[i][i + 1] = 1
    for span in range(2, n + 1):
        for i in range(n - span + 1):
            k = i + span
            if sign(i, k) == 1:
                total = 0
                row = region[i]
                for j in range(i + 1, k):
                    left = row[j]
                    if left and region[j][k]:
                        total += left * region[j][k]
                region[i][k] = total

    # walks[b][v]: weighted number of visible curves from 0 to b with v edges
    walks = [[0] * (n + 1) for _ in range(n + 1)]
    walks[0][0] = 1
    for b in range(1, n + 1):
        wb = walks[b]
        for a in range(b):
            weight = region[a][b]
            if weight:
                wa = walks[a]
                for v in range(a + 1):
                    if wa[v]:
                        wb[v + 1] += wa[v] * weight
    coeffs = [walks[n][n - k] for k in range(n)]
    return TriPolynomial.from_exact(coeffs)


# ---------------------------------------------------------------------------
# Exact geometric realization
# ---------------------------------------------------------------------------

def _orientations_match(points, tri: VisibilityTriangle) -> bool:
    n = len(points) - 1
    for i in range(n - 1):
        for k in range(i + 2, n + 1):
            want = tri.sign(i, k)
            for j in range(i + 1, k):
                if orientation(points[i], points[j], points[k]) != want:
                    return False
    return True


def _normalize_into(points, x_lo: Fraction, x_hi: Fraction):
    """Affinely map a realization so its endpoints land on (x_lo, 0) and
    (x_hi, 0), interior heights in [-1, 1]; orientations are preserved."""
    x0, y0 = points[0]
    x1, y1 = points[-1]
    lam = (y0 - y1) / (x1 - x0)
    leveled = [(x, y + lam * x) for x, y in points]
    base = leveled[0][1]
    width = x1 - x0
    span = x_hi - x_lo
    out = [((x - x0) / width * span + x_lo, y - base) for x, y in leveled]
    peak = max(abs(y) for _, y in out)
    if peak:
        out = [(x, y / peak) for x, y in out]
    return out


def _vee_join(left_pts, right_pts, target: VisibilityTriangle):
    """Geometric convex sum: flatten both sides, shear them into a V shape,
    and shrink the flattening until every exact orientation matches."""
    left_n = _normalize_into(left_pts, Fraction(-1), Fraction(0))
    right_n = _normalize_into(right_pts, Fraction(0), Fraction(1))
    eps = Fraction(1, 4)
    while True:
        left = [(x, eps * y - x) for x, y in left_n]
        right = [(x, eps * y + x) for x, y in right_n]
        pts = left + right[1:]
        if _orientations_match(pts, target):
            return pts
        eps /= 2
        if eps < Fraction(1, 1 << 512):  # pragma: no cover - safety net
            raise RuntimeError("flattening did not converge")


def realize(f: Formula, cap: int = REALIZE_CAP) -> RationalPointSet:
    """Exact point set whose order type realizes the chain.

    Convex sums are folded pairwise left to right; concave subchains are
    realized as the mirror image of their flip.  Every fold is verified with
    exact orientation tests before it is accepted.
    """
    if f.n > cap:
        raise CapExceededError(f"realize capped at n <= {cap}")
    pts = _realize(f)
    if not _orientations_match(pts, visibility(f)):  # pragma: no cover
        raise RuntimeError("realization failed exact verification")
    return RationalPointSet(pts)


def _realize(node: Formula):
    if node.kind == PRIM:
        return [(Fraction(-1), Fraction(0)), (Fraction(1), Fraction(0))]
    if node.kind == WEDGE:
        return [(x, -y) for x, y in _realize(flip(node))]
    children = node.children
    acc_pts = _realize(children[0])
    acc_formula = children[0]
    for child in children[1:]:
        acc_formula = vee(acc_formula, child)
        acc_pts = _vee_join(acc_pts, _realize(child), visibility(acc_formula))
    return acc_pts


# ---------------------------------------------------------------------------
# Brute-force triangulation counting
# ---------------------------------------------------------------------------

def _proper_cross(p, q, r, s) -> bool:
    # Segments pq and rs share no endpoint; general position keeps all
    # orientations nonzero.
    return (orientation(p, q, r) != orientation(p, q, s)
            and orientation(r, s, p) != orientation(r, s, q))


def count_triangulations_points(points, cap: int = POINT_COUNT_CAP) -> int:
    """Number of triangulations (edge-maximal crossing-free graphs).

    Walks candidate edges in lexicographic order, branching on include or
    exclude; an excluded edge must end up crossed by a chosen one, which is
    checked incrementally and finally at the leaves.  Independent of any
    chain structure.
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    count = len(pts)
    if count > cap:
        raise CapExceededError(f"point counting capped at {cap} points")
    if len(set(pts)) != count:
        raise ValueError("duplicate points")
    for i in range(count - 2):
        for j in range(i + 1, count - 1):
            for k in range(j + 1, count):
                if orientation(pts[i], pts[j], pts[k]) == 0:
                    raise ValueError(f"collinear triple ({i},{j},{k})")

    edges = [(i, j) for i in range(count) for j in range(i + 1, count)]
    m = len(edges)
    cross = [0] * m
    for a in range(m):
        ia, ja = edges[a]
        for b in range(a + 1, m):
            ib, jb = edges[b]
            if ia in (ib, jb) or ja in (ib, jb):
                continue
            if _proper_cross(pts[ia], pts[ja], pts[ib], pts[jb]):
                cross[a] |= 1 << b
                cross[b] |= 1 << a
    future = [0] * (m + 1)
    for k in range(m - 1, -1, -1):
        future[k] = future[k + 1] | (1 << k)

    def search(k: int, chosen: int, pending: int) -> int:
        if k == m:
            return 1 if pending == 0 else 0
        crossers = cross[k]
        if crossers & chosen:
            # Crossed by a chosen edge: excluding it is forced and fine.
            return search(k + 1, chosen, pending)
        total = search(k + 1, chosen | (1 << k), pending & ~crossers)
        remaining = crossers & future[k + 1]
        if remaining:
            # Exclude: this edge becomes an obligation.  Any pending edge
            # that just lost its last potential crosser kills the branch.
            affected = pending & crossers
            while affected:
                low = affected & -affected
                if cross[low.bit_length() - 1] & future[k + 1] == 0:
                    return total
                affected ^= low
            total += search(k + 1, chosen, pending | (1 << k))
        return total

    return search(0, 0, 0)
