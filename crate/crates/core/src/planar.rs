//! Planar realization of the resolutions of a braid closure.
//!
//! Layout (y grows upwards): strand `k` (0-based) runs down the line
//! `x = 2k + 2`; crossing `j` occupies `y ∈ [-(6j+5), -(6j+1)]`; the closure
//! strands return around the right-hand side, strand `b-1` innermost.
//!
//! Gap `j` at column `k` is the piece of strand `k` just above crossing `j`
//! (gap 0 includes the closure arc). Its identifier is `j*b + k`, and a
//! circle's label is the smallest identifier it runs through. Labels are
//! stable across cube edges for every circle away from the surgered site.
//!
//! Surgery arcs at 0-smoothed sites: a positive crossing (identity
//! smoothing) carries an arc from strand `i` to strand `i+1`; a negative
//! crossing (cap/cup smoothing) carries a downward arc from the cap to the
//! cup. After surgery the arrow is turned a quarter turn counterclockwise.

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::exterior::{self, Combo};

pub type Point = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SquareType {
    A,
    C,
    X,
    Y,
}

impl SquareType {
    /// +1 for C and Y, -1 for A and X.
    pub fn sign(self) -> i64 {
        match self {
            SquareType::A | SquareType::X => -1,
            SquareType::C | SquareType::Y => 1,
        }
    }
}

/// One circle of a resolution as a closed lattice polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circle {
    pub label: u32,
    pub points: Vec<Point>,
}

impl Circle {
    /// Twice the signed area; positive for counterclockwise traversal.
    pub fn signed_area2(&self) -> i64 {
        let p = &self.points;
        (0..p.len())
            .map(|i| {
                let (a, b) = (p[i], p[(i + 1) % p.len()]);
                a.0 * b.1 - b.0 * a.1
            })
            .sum()
    }

    /// Even-odd test for a point lifted half a unit above `pt`; the lift keeps
    /// the horizontal ray off every polygon vertex.
    pub fn contains_lifted(&self, pt: Point) -> bool {
        let (px, py) = (2 * pt.0, 2 * pt.1 + 1);
        let p = &self.points;
        let mut inside = false;
        for i in 0..p.len() {
            let (a, b) = (p[i], p[(i + 1) % p.len()]);
            if a.0 == b.0 && 2 * a.0 > px {
                let (lo, hi) = (2 * a.1.min(b.1), 2 * a.1.max(b.1));
                if lo < py && py < hi {
                    inside = !inside;
                }
            }
        }
        inside
    }

    fn position(&self, pt: Point) -> Option<usize> {
        self.points.iter().position(|&q| q == pt)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryArc {
    pub crossing: usize,
    pub tail: Point,
    pub head: Point,
    /// Index into the resolution's circles.
    pub tail_circle: usize,
    pub head_circle: usize,
}

impl SurgeryArc {
    fn midpoint(&self) -> Point {
        ((self.tail.0 + self.head.0) / 2, (self.tail.1 + self.head.1) / 2)
    }
}

/// Elementary cobordism along a cube edge, in circle labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeAction {
    Merge { circles: (u32, u32), kept: u32 },
    Split { circle: u32, tail_side: u32, head_side: u32 },
}

#[derive(Debug, Clone)]
pub struct PlanarResolution {
    braid: BraidWord,
    vertex: u64,
    pub circles: Vec<Circle>,
    pub arcs: Vec<Option<SurgeryArc>>,
}

/// Circle data of one vertex without geometry: sorted labels and, per
/// crossing, the circle indices at the ports `top(i)`, `top(i+1)`, `bottom(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct VertexCircles {
    pub labels: Vec<u32>,
    pub sites: Vec<[u8; 3]>,
}

impl VertexCircles {
    pub fn len(&self) -> usize {
        self.labels.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum EdgeKind {
    Merge { tail: u8, head: u8, into: u8 },
    /// `from` splits into `a0` (tail side) and `a1` (head side).
    Split { from: u8, a0: u8, a1: u8 },
}

/// Edge action in circle indices, with the induced correspondence of source
/// circles to target circles (a split circle is lifted to its tail side).
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct EdgeMap {
    pub kind: EdgeKind,
    pub map: Vec<u8>,
}

impl EdgeMap {
    pub(crate) fn between(letter: i32, crossing: usize, src: &VertexCircles, tgt: &VertexCircles) -> EdgeMap {
        let s = src.sites[crossing];
        let t = tgt.sites[crossing];
        let (tail, head) = if letter > 0 { (s[0], s[1]) } else { (s[0], s[2]) };
        let mut map: Vec<u8> = src.labels.iter().map(|&l| tgt.labels.binary_search(&l).unwrap_or(usize::MAX) as u8).collect();
        if tail != head {
            let into = t[0];
            map[tail as usize] = into;
            map[head as usize] = into;
            EdgeMap { kind: EdgeKind::Merge { tail, head, into }, map }
        } else {
            // positive: target is cap/cup, arrow turns from right to up, tail = cup side.
            // negative: target is the identity smoothing, arrow turns from down to right.
            let (a0, a1) = if letter > 0 { (t[2], t[0]) } else { (t[0], t[1]) };
            map[tail as usize] = a0;
            EdgeMap { kind: EdgeKind::Split { from: tail, a0, a1 }, map }
        }
    }

    /// Odd (exterior algebra) map on a monomial, unsigned.
    pub(crate) fn apply_odd(&self, mask: u64, out: &mut Vec<(u64, i64)>) {
        match self.kind {
            EdgeKind::Merge { tail, head, .. } => {
                if mask >> tail & 1 == 1 && mask >> head & 1 == 1 {
                    return;
                }
                if let Some((s, m)) = exterior::map_monomial(mask, &self.map) {
                    out.push((m, s));
                }
            }
            EdgeKind::Split { a0, a1, .. } => {
                let Some((s, m)) = exterior::map_monomial(mask, &self.map) else { return };
                if let Some(w) = exterior::wedge_left(m, a0 as usize) {
                    out.push((m | 1 << a0, s * w));
                }
                if let Some(w) = exterior::wedge_left(m, a1 as usize) {
                    out.push((m | 1 << a1, -s * w));
                }
            }
        }
    }
}

const MAX_CIRCLES: usize = 64;

struct Tracer<'a> {
    letters: &'a [i32],
    b: usize,
    vertex: u64,
}

impl<'a> Tracer<'a> {
    fn n(&self) -> usize {
        self.letters.len()
    }

    fn top(&self, k: usize, j: usize) -> usize {
        2 * (j * self.b + k)
    }

    fn bottom(&self, k: usize, j: usize) -> usize {
        2 * (j * self.b + k) + 1
    }

    fn decode(&self, port: usize) -> (usize, usize, bool) {
        let slot = port / 2;
        (slot % self.b, slot / self.b, port % 2 == 1)
    }

    fn involved(&self, j: usize) -> (usize, usize) {
        let left = self.letters[j].unsigned_abs() as usize - 1;
        (left, left + 1)
    }

    /// Whether crossing `j` is smoothed as the identity (‖) at this vertex.
    fn identity_smoothing(&self, j: usize) -> bool {
        let state = self.vertex >> j & 1;
        (self.letters[j] > 0) == (state == 0)
    }

    fn crossing_partner(&self, port: usize) -> usize {
        let (k, j, is_bottom) = self.decode(port);
        let (l, r) = self.involved(j);
        if (k != l && k != r) || self.identity_smoothing(j) {
            port ^ 1
        } else {
            let other = if k == l { r } else { l };
            if is_bottom {
                self.bottom(other, j)
            } else {
                self.top(other, j)
            }
        }
    }

    fn gap_partner(&self, port: usize) -> usize {
        let (k, j, is_bottom) = self.decode(port);
        let n = self.n();
        if is_bottom {
            self.top(k, (j + 1) % n)
        } else {
            self.bottom(k, (j + n - 1) % n)
        }
    }

    fn xcol(k: usize) -> i64 {
        2 * k as i64 + 2
    }

    fn y_top(j: usize) -> i64 {
        -(6 * j as i64 + 1)
    }

    fn y_bottom(j: usize) -> i64 {
        -(6 * j as i64 + 5)
    }

    fn port_point(&self, port: usize) -> Point {
        let (k, j, is_bottom) = self.decode(port);
        (Self::xcol(k), if is_bottom { Self::y_bottom(j) } else { Self::y_top(j) })
    }

    /// Points strictly after `from` up to and including `to` inside crossing `j`.
    fn crossing_path(&self, from: usize, to: usize, pts: &mut Vec<Point>) {
        let (k, j, from_bottom) = self.decode(from);
        let (kt, _, _) = self.decode(to);
        let (l, r) = self.involved(j);
        let y_mid = -(6 * j as i64 + 3);
        if k == kt {
            if k == l || k == r {
                pts.push((Self::xcol(k), y_mid));
            }
        } else {
            let y = if from_bottom { -(6 * j as i64 + 4) } else { -(6 * j as i64 + 2) };
            let xs = [Self::xcol(k), Self::xcol(l) + 1, Self::xcol(kt)];
            pts.extend(xs.iter().map(|&x| (x, y)));
        }
        pts.push(self.port_point(to));
    }

    fn closure_path(&self, k: usize, downward: bool, pts: &mut Vec<Point>) {
        let n = self.n();
        let d = (self.b - k) as i64;
        let x = Self::xcol(k);
        let right = 2 * self.b as i64 + 2 + 2 * d;
        let yb = if n == 0 { -5 } else { Self::y_bottom(n - 1) };
        let mut route = vec![(x, yb - 2 * d), (right, yb - 2 * d), (right, -1 + 2 * d), (x, -1 + 2 * d)];
        if !downward {
            route.reverse();
        }
        pts.extend(route);
    }

    /// Traces every circle. Returns circle index per port, the labels, and,
    /// when `geometry` is set, each circle's polygon.
    fn trace(&self, geometry: bool) -> (Vec<u8>, Vec<u32>, Vec<Vec<Point>>) {
        let n = self.n();
        let b = self.b;
        if n == 0 {
            let polys = if geometry {
                (0..b)
                    .map(|k| {
                        let mut pts = vec![(Self::xcol(k), -1), (Self::xcol(k), -5)];
                        self.closure_path(k, true, &mut pts);
                        pts
                    })
                    .collect()
            } else {
                Vec::new()
            };
            return (Vec::new(), (0..b as u32).collect(), polys);
        }
        const UNSEEN: u8 = u8::MAX;
        let mut circ = vec![UNSEEN; 2 * n * b];
        let mut labels = Vec::new();
        let mut polys = Vec::new();
        for j in 0..n {
            for k in 0..b {
                let start = self.top(k, j);
                if circ[start] != UNSEEN {
                    continue;
                }
                let idx = labels.len();
                assert!(idx < MAX_CIRCLES, "too many circles in one resolution");
                labels.push((j * b + k) as u32);
                let mut pts = Vec::new();
                if geometry {
                    pts.push(self.port_point(start));
                }
                let mut cur = start;
                loop {
                    circ[cur] = idx as u8;
                    let q = self.crossing_partner(cur);
                    circ[q] = idx as u8;
                    let next = self.gap_partner(q);
                    if geometry {
                        self.crossing_path(cur, q, &mut pts);
                        let (kq, jq, q_bottom) = self.decode(q);
                        let wraps = (q_bottom && jq == n - 1) || (!q_bottom && jq == 0);
                        if wraps {
                            self.closure_path(kq, q_bottom, &mut pts);
                        }
                        pts.push(self.port_point(next));
                    }
                    if next == start {
                        break;
                    }
                    cur = next;
                }
                if geometry {
                    pts.pop();
                    polys.push(pts);
                }
            }
        }
        (circ, labels, polys)
    }

    fn sites(&self, circ: &[u8]) -> Vec<[u8; 3]> {
        (0..self.n())
            .map(|j| {
                let (l, r) = self.involved(j);
                [circ[self.top(l, j)], circ[self.top(r, j)], circ[self.bottom(l, j)]]
            })
            .collect()
    }
}

pub(crate) fn vertex_circles(braid: &BraidWord, vertex: u64) -> VertexCircles {
    let tracer = Tracer { letters: braid.letters(), b: braid.strands(), vertex };
    let (circ, labels, _) = tracer.trace(false);
    VertexCircles { sites: tracer.sites(&circ), labels }
}

/// Traces the circles of the resolution `vertex` (bit `j` = smoothing at
/// crossing `j`) and locates the surgery arc at every 0-smoothed crossing.
pub fn resolve(braid: &BraidWord, vertex: u64) -> PlanarResolution {
    let tracer = Tracer { letters: braid.letters(), b: braid.strands(), vertex };
    let (circ, labels, polys) = tracer.trace(true);
    let circles: Vec<Circle> =
        labels.iter().zip(polys).map(|(&label, points)| Circle { label, points }).collect();
    let arcs = (0..braid.len())
        .map(|j| {
            if vertex >> j & 1 == 1 {
                return None;
            }
            let (l, r) = tracer.involved(j);
            let (tail, head, tail_port, head_port) = if braid.letters()[j] > 0 {
                let y = -(6 * j as i64 + 3);
                ((Tracer::xcol(l), y), (Tracer::xcol(r), y), tracer.top(l, j), tracer.top(r, j))
            } else {
                let x = Tracer::xcol(l) + 1;
                ((x, -(6 * j as i64 + 2)), (x, -(6 * j as i64 + 4)), tracer.top(l, j), tracer.bottom(l, j))
            };
            Some(SurgeryArc {
                crossing: j,
                tail,
                head,
                tail_circle: circ[tail_port] as usize,
                head_circle: circ[head_port] as usize,
            })
        })
        .collect();
    PlanarResolution { braid: braid.clone(), vertex, circles, arcs }
}

impl PlanarResolution {
    pub fn vertex(&self) -> u64 {
        self.vertex
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    /// |α|, the number of 1-smoothings.
    pub fn height(&self) -> u32 {
        self.vertex.count_ones()
    }

    pub fn arc(&self, crossing: usize) -> Result<&SurgeryArc> {
        self.arcs
            .get(crossing)
            .and_then(|a| a.as_ref())
            .ok_or(Error::NoArcAtSite(crossing))
    }

    /// The cobordism obtained by surgering the arc at `crossing`.
    pub fn arc_action(&self, crossing: usize) -> Result<EdgeAction> {
        let arc = self.arc(crossing)?;
        let label = |i: usize| self.circles[i].label;
        if arc.tail_circle != arc.head_circle {
            let (a, b) = (label(arc.tail_circle), label(arc.head_circle));
            return Ok(EdgeAction::Merge { circles: (a, b), kept: a.min(b) });
        }
        let src = vertex_circles(&self.braid, self.vertex);
        let tgt = vertex_circles(&self.braid, self.vertex | 1 << crossing);
        match EdgeMap::between(self.braid.letters()[crossing], crossing, &src, &tgt).kind {
            EdgeKind::Split { a0, a1, .. } => Ok(EdgeAction::Split {
                circle: label(arc.tail_circle),
                tail_side: tgt.labels[a0 as usize],
                head_side: tgt.labels[a1 as usize],
            }),
            EdgeKind::Merge { .. } => unreachable!("arc endpoints on one circle always split"),
        }
    }

    /// X/Y disambiguation for a square whose two arcs sit on one circle with
    /// interleaved endpoints, one inside and one outside: walk the circle
    /// counterclockwise from the inside arc's tail; meeting the outside arc's
    /// tail first gives X, its head first gives Y.
    pub(crate) fn ladybug_type(&self, c1: usize, c2: usize) -> Option<SquareType> {
        let (a1, a2) = (self.arcs[c1].as_ref()?, self.arcs[c2].as_ref()?);
        let ci = a1.tail_circle;
        if [a1.head_circle, a2.tail_circle, a2.head_circle].iter().any(|&c| c != ci) {
            return None;
        }
        let circle = &self.circles[ci];
        let (in1, in2) = (circle.contains_lifted(a1.midpoint()), circle.contains_lifted(a2.midpoint()));
        let (inner, outer) = match (in1, in2) {
            (true, false) => (a1, a2),
            (false, true) => (a2, a1),
            _ => return None,
        };
        let len = circle.points.len();
        let ccw = circle.signed_area2() > 0;
        let pos = |p: Point| circle.position(p).expect("arc endpoints lie on the circle");
        let along = |p: Point| {
            let d = (pos(p) + len - pos(inner.tail)) % len;
            if ccw {
                d
            } else {
                (len - d) % len
            }
        };
        let (t_out, h_out, h_in) = (along(outer.tail), along(outer.head), along(inner.head));
        // interleaved: exactly one endpoint of the outside arc before the inside head
        if (t_out < h_in) == (h_out < h_in) {
            return None;
        }
        Some(if t_out < h_out { SquareType::X } else { SquareType::Y })
    }
}

/// Both unsigned two-step compositions around the square at `root` on
/// crossings `c1`, `c2`, evaluated on the monomials of the circles touched by
/// the two arcs (all other circles ride along identically on both paths).
pub(crate) fn square_compositions(
    braid: &BraidWord,
    root: u64,
    c1: usize,
    c2: usize,
    circles: &dyn Fn(u64) -> VertexCircles,
) -> Vec<(Combo, Combo)> {
    let letters = braid.letters();
    let (v00, v10, v01, v11) = (root, root | 1 << c1, root | 1 << c2, root | 1 << c1 | 1 << c2);
    let (r00, r10, r01, r11) = (circles(v00), circles(v10), circles(v01), circles(v11));
    let e1 = EdgeMap::between(letters[c1], c1, &r00, &r10);
    let e12 = EdgeMap::between(letters[c2], c2, &r10, &r11);
    let e2 = EdgeMap::between(letters[c2], c2, &r00, &r01);
    let e21 = EdgeMap::between(letters[c1], c1, &r01, &r11);
    let touched = |c: usize| -> u64 {
        let s = r00.sites[c];
        let head = if letters[c] > 0 { s[1] } else { s[2] };
        1 << s[0] | 1 << head
    };
    let support = touched(c1) | touched(c2);
    let compose = |first: &EdgeMap, second: &EdgeMap, mask: u64| -> Combo {
        let mut mid = Vec::new();
        first.apply_odd(mask, &mut mid);
        let mut out = Vec::new();
        for (m, c) in mid {
            let mut step = Vec::new();
            second.apply_odd(m, &mut step);
            out.extend(step.into_iter().map(|(mm, cc)| (mm, cc * c)));
        }
        exterior::normalize(out)
    };
    let mut results = Vec::new();
    let mut sub = support;
    loop {
        results.push((compose(&e1, &e12, sub), compose(&e2, &e21, sub)));
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & support;
    }
    results
}

pub(crate) fn classify_with(
    braid: &BraidWord,
    root: u64,
    c1: usize,
    c2: usize,
    circles: &dyn Fn(u64) -> VertexCircles,
) -> SquareType {
    let pairs = square_compositions(braid, root, c1, c2, circles);
    let all_zero = pairs.iter().all(|(p, q)| p.is_empty() && q.is_empty());
    if all_zero {
        return resolve(braid, root)
            .ladybug_type(c1, c2)
            .expect("doubly-zero square must be a ladybug configuration");
    }
    let negate = |c: &Combo| c.iter().map(|&(m, v)| (m, -v)).collect::<Combo>();
    if pairs.iter().all(|(p, q)| p == q) {
        SquareType::C
    } else if pairs.iter().all(|(p, q)| *p == negate(q)) {
        SquareType::A
    } else {
        panic!("square at {root:b} on ({c1},{c2}) neither commutes nor anticommutes")
    }
}

/// Type of the square rooted at `root` spanned by crossings `c1` and `c2`.
pub fn classify_square(braid: &BraidWord, root: u64, c1: usize, c2: usize) -> Result<SquareType> {
    let n = braid.len();
    if c1 == c2 || c1 >= n || c2 >= n || root >> c1 & 1 == 1 || root >> c2 & 1 == 1 {
        return Err(Error::NotASquareRoot { vertex: root, c1, c2 });
    }
    Ok(classify_with(braid, root, c1, c2, &|v| vertex_circles(braid, v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[i32]) -> BraidWord {
        BraidWord::new(letters.to_vec(), None).unwrap()
    }

    #[test]
    fn circle_counts() {
        assert_eq!(resolve(&w(&[1, 1, 1]), 0).circles.len(), 2);
        assert_eq!(resolve(&BraidWord::unknot(), 0).circles.len(), 1);
        let b = w(&[1, -2, 1, -2, -1]);
        assert_eq!(resolve(&b, b.oriented_resolution()).circles.len(), 3);
    }

    #[test]
    fn polygons_are_simple_and_labelled() {
        let b = w(&[1, -2, 1, 2, -1, -1]);
        for v in 0..(1u64 << b.len()) {
            let res = resolve(&b, v);
            let fast = vertex_circles(&b, v);
            assert_eq!(res.circles.iter().map(|c| c.label).collect::<Vec<_>>(), fast.labels);
            assert!(res.circles.windows(2).all(|p| p[0].label < p[1].label));
            for c in &res.circles {
                assert_ne!(c.signed_area2(), 0);
                // axis-aligned closed lattice polygon
                for i in 0..c.points.len() {
                    let (p, q) = (c.points[i], c.points[(i + 1) % c.points.len()]);
                    assert!(p.0 == q.0 || p.1 == q.1, "{p:?} {q:?}");
                    assert_ne!(p, q);
                }
            }
        }
    }

    #[test]
    fn edge_actions() {
        let b = w(&[1, 1]);
        let res = resolve(&b, 0b00);
        assert!(matches!(res.arc_action(0), Ok(EdgeAction::Merge { .. })));
        let res = resolve(&b, 0b10);
        assert!(matches!(res.arc_action(0), Ok(EdgeAction::Split { .. })));
        assert_eq!(res.arc_action(1), Err(Error::NoArcAtSite(1)));
        assert_eq!(resolve(&BraidWord::unknot(), 0).arc_action(0), Err(Error::NoArcAtSite(0)));
    }

    #[test]
    fn circle_count_changes_by_one() {
        let b = w(&[2, -1, 2, 1, -2]);
        for v in 0..(1u64 << b.len()) {
            let k = vertex_circles(&b, v).len() as i64;
            for c in (0..b.len()).filter(|c| v >> c & 1 == 0) {
                let k2 = vertex_circles(&b, v | 1 << c).len() as i64;
                assert_eq!((k2 - k).abs(), 1);
            }
        }
    }

    #[test]
    fn square_examples() {
        assert_eq!(classify_square(&w(&[1, 1]), 0, 0, 1), Ok(SquareType::A));
        assert_eq!(classify_square(&w(&[1, 3]), 0, 0, 1), Ok(SquareType::C));
        // nested arcs on one circle: split then split
        assert_eq!(classify_square(&w(&[1, 1, 1]), 0b100, 0, 1), Ok(SquareType::A));
        let t = classify_square(&w(&[1, 2, 1, 2, 1, 2]), 0b11, 2, 3).unwrap();
        assert!(matches!(t, SquareType::X | SquareType::Y));
        assert!(classify_square(&w(&[1, 1]), 0b01, 0, 1).is_err());
    }

    #[test]
    fn square_type_is_symmetric() {
        let b = w(&[1, -2, 1, 2, -1]);
        for root in 0..(1u64 << b.len()) {
            for c1 in 0..b.len() {
                for c2 in c1 + 1..b.len() {
                    if root >> c1 & 1 == 0 && root >> c2 & 1 == 0 {
                        assert_eq!(classify_square(&b, root, c1, c2), classify_square(&b, root, c2, c1));
                    }
                }
            }
        }
    }
}
