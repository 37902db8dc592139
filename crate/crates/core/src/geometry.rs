//! Lattice points, exact distance matrices and the integer-distance certifier.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{exact_sqrt, exact_sqrt_u128, Integer};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: Integer,
    pub y: Integer,
}

impl LatticePoint {
    pub fn new(x: impl Into<Integer>, y: impl Into<Integer>) -> Self {
        Self {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn origin() -> Self {
        Self::new(0, 0)
    }

    pub fn offset(&self, dx: impl Into<Integer>, dy: impl Into<Integer>) -> Self {
        Self::new(&self.x + dx.into(), &self.y + dy.into())
    }

    fn sub(&self, other: &Self) -> (Integer, Integer) {
        (&self.x - &other.x, &self.y - &other.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let [x, y] = <[String; 2]>::deserialize(d)?;
        let parse = |s: &str| {
            s.trim()
                .parse::<Integer>()
                .map_err(|_| D::Error::custom(format!("coordinate `{s}` is not a decimal integer")))
        };
        Ok(Self {
            x: parse(&x)?,
            y: parse(&y)?,
        })
    }
}

pub fn squared_distance(p: &LatticePoint, q: &LatticePoint) -> Integer {
    let (dx, dy) = p.sub(q);
    &dx * &dx + &dy * &dy
}

/// `(a - o) x (b - o)`; positive for a counter-clockwise turn.
pub fn cross(o: &LatticePoint, a: &LatticePoint, b: &LatticePoint) -> Integer {
    let (ax, ay) = a.sub(o);
    let (bx, by) = b.sub(o);
    ax * by - ay * bx
}

pub fn collinear(p: &LatticePoint, q: &LatticePoint, r: &LatticePoint) -> bool {
    cross(p, q, r).is_zero()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Ordered vertex list; convexity is evaluated.
    #[default]
    Polygon,
    /// Unordered point set.
    Set,
}

/// An ordered list of distinct lattice points with its squared-distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfiguration {
    points: Vec<LatticePoint>,
    squared: Vec<Vec<Integer>>,
}

impl PointConfiguration {
    pub fn new(points: Vec<LatticePoint>) -> Result<Self> {
        Self::with_min(points, 2)
    }

    fn with_min(points: Vec<LatticePoint>, min: usize) -> Result<Self> {
        if points.len() < min {
            return Err(Error::Arity {
                expected: min,
                got: points.len(),
            });
        }
        let n = points.len();
        let mut squared = vec![vec![Integer::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let d = squared_distance(&points[i], &points[j]);
                if d.is_zero() {
                    return Err(Error::DuplicatePoint(i, j));
                }
                squared[i][j] = d.clone();
                squared[j][i] = d;
            }
        }
        Ok(Self { points, squared })
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn squared_distances(&self) -> &[Vec<Integer>] {
        &self.squared
    }

    pub fn squared_distance(&self, i: usize, j: usize) -> &Integer {
        &self.squared[i][j]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificationReport {
    pub mode: Mode,
    pub vertices: Vec<LatticePoint>,
    #[serde(serialize_with = "ser_matrix")]
    pub squared_distances: Vec<Vec<Integer>>,
    #[serde(serialize_with = "ser_opt_matrix")]
    pub integer_distances: Vec<Vec<Option<Integer>>>,
    pub is_diophantine: bool,
    #[serde(serialize_with = "crate::exactmath::decimal::option::serialize")]
    pub k: Option<Integer>,
    pub pairs_with_length: Vec<(usize, usize)>,
    pub is_simple: Option<bool>,
    pub is_convex: Option<bool>,
    pub collinear_triples: Vec<(usize, usize, usize)>,
}

impl CertificationReport {
    /// Integer distances with no collinear triple.
    pub fn is_nondegenerate_diophantine(&self) -> bool {
        self.is_diophantine && self.collinear_triples.is_empty()
    }

    /// Sorted multiset of pairwise distances (only when all are integral).
    pub fn distance_multiset(&self) -> Option<Vec<Integer>> {
        let n = self.vertices.len();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.integer_distances[i][j].clone()?);
            }
        }
        out.sort();
        Some(out)
    }
}

fn ser_matrix<S: Serializer>(m: &[Vec<Integer>], s: S) -> std::result::Result<S::Ok, S::Error> {
    m.iter()
        .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .serialize(s)
}

fn ser_opt_matrix<S: Serializer>(
    m: &[Vec<Option<Integer>>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|v| v.as_ref().map(|x| x.to_string()))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .serialize(s)
}

pub fn certify(
    points: &[LatticePoint],
    k: Option<&Integer>,
    mode: Mode,
) -> Result<CertificationReport> {
    let config = PointConfiguration::with_min(points.to_vec(), 3)?;
    Ok(certify_configuration(&config, k, mode))
}

pub fn certify_configuration(
    config: &PointConfiguration,
    k: Option<&Integer>,
    mode: Mode,
) -> CertificationReport {
    let n = config.len();
    let pts = config.points();
    let mut integer_distances = vec![vec![None; n]; n];
    let mut is_diophantine = true;
    let mut pairs_with_length = Vec::new();
    for i in 0..n {
        integer_distances[i][i] = Some(Integer::zero());
        for j in i + 1..n {
            let root = exact_sqrt(config.squared_distance(i, j));
            match &root {
                Some(r) if k == Some(r) => pairs_with_length.push((i, j)),
                Some(_) => {}
                None => is_diophantine = false,
            }
            integer_distances[i][j] = root.clone();
            integer_distances[j][i] = root;
        }
    }

    let mut collinear_triples = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                if collinear(&pts[i], &pts[j], &pts[l]) {
                    collinear_triples.push((i, j, l));
                }
            }
        }
    }

    let (is_simple, is_convex) = match mode {
        Mode::Set => (None, None),
        Mode::Polygon => {
            let simple = is_simple_polygon(pts);
            (Some(simple), simple.then(|| strictly_convex_turns(pts)))
        }
    };

    CertificationReport {
        mode,
        vertices: pts.to_vec(),
        squared_distances: config.squared_distances().to_vec(),
        integer_distances,
        is_diophantine,
        k: k.cloned(),
        pairs_with_length,
        is_simple,
        is_convex,
        collinear_triples,
    }
}

fn sign(v: &Integer) -> Ordering {
    if v.is_positive() {
        Ordering::Greater
    } else if v.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

fn on_segment(p: &LatticePoint, q: &LatticePoint, r: &LatticePoint) -> bool {
    // r collinear with p-q; is it inside the bounding box?
    r.x >= p.x.clone().min(q.x.clone())
        && r.x <= p.x.clone().max(q.x.clone())
        && r.y >= p.y.clone().min(q.y.clone())
        && r.y <= p.y.clone().max(q.y.clone())
}

fn segments_touch(
    p1: &LatticePoint,
    p2: &LatticePoint,
    q1: &LatticePoint,
    q2: &LatticePoint,
) -> bool {
    let d1 = sign(&cross(q1, q2, p1));
    let d2 = sign(&cross(q1, q2, p2));
    let d3 = sign(&cross(p1, p2, q1));
    let d4 = sign(&cross(p1, p2, q2));
    use Ordering::*;
    if d1 != d2 && d3 != d4 && d1 != Equal && d2 != Equal && d3 != Equal && d4 != Equal {
        return true;
    }
    (d1 == Equal && on_segment(q1, q2, p1))
        || (d2 == Equal && on_segment(q1, q2, p2))
        || (d3 == Equal && on_segment(p1, p2, q1))
        || (d4 == Equal && on_segment(p1, p2, q2))
}

/// True when the closed polyline through `points` (in order) does not
/// self-intersect and no edge doubles back over its neighbour.
pub fn is_simple_polygon(points: &[LatticePoint]) -> bool {
    let n = points.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                return false;
            }
        }
    }
    let edge = |i: usize| (&points[i], &points[(i + 1) % n]);
    for i in 0..n {
        // adjacent edges meeting at vertex i+1 must not overlap
        let (a, b) = edge(i);
        let c = &points[(i + 2) % n];
        if collinear(a, b, c) {
            let (abx, aby) = b.sub(a);
            let (bcx, bcy) = c.sub(b);
            if (abx * bcx + aby * bcy).is_negative() {
                return false;
            }
        }
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = edge(j);
            if segments_touch(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

fn strictly_convex_turns(points: &[LatticePoint]) -> bool {
    let n = points.len();
    let mut seen = Ordering::Equal;
    for i in 0..n {
        let turn = sign(&cross(
            &points[i],
            &points[(i + 1) % n],
            &points[(i + 2) % n],
        ));
        if turn == Ordering::Equal {
            return false;
        }
        if seen == Ordering::Equal {
            seen = turn;
        } else if seen != turn {
            return false;
        }
    }
    true
}

/// Strict convexity of a simple polygon given in cyclic order.
pub fn is_convex(points: &[LatticePoint]) -> Result<bool> {
    if points.len() < 3 {
        return Err(Error::Arity {
            expected: 3,
            got: points.len(),
        });
    }
    if !is_simple_polygon(points) {
        return Err(Error::NotSimple);
    }
    Ok(strictly_convex_turns(points))
}

/// First cyclic order (lexicographic over permutations fixing vertex 0)
/// in which the points bound a simple polygon.
pub fn simple_polygon_order(points: &[LatticePoint]) -> Option<Vec<usize>> {
    let n = points.len();
    if n < 3 {
        return None;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    loop {
        // skip mirror orders: keep rest[0] < rest[last]
        if rest[0] < rest[n - 2] {
            let order: Vec<usize> = std::iter::once(0).chain(rest.iter().copied()).collect();
            let poly: Vec<LatticePoint> = order.iter().map(|&i| points[i].clone()).collect();
            if is_simple_polygon(&poly) {
                return Some(order);
            }
        }
        if !next_permutation(&mut rest) {
            return None;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All `(a, b)` with `0 < a <= b` and `a^2 + b^2 = k^2`, ascending in `a`.
/// An empty list means every integer-length lattice segment of length `k`
/// is axis-parallel.
pub fn hypotenuse_decompositions(k: u64) -> Vec<(u64, u64)> {
    let k2 = (k as u128) * (k as u128);
    let mut out = Vec::new();
    let mut a: u128 = 1;
    while 2 * a * a <= k2 {
        if let Some(b) = exact_sqrt_u128(k2 - a * a) {
            out.push((a as u64, b as u64));
        }
        a += 1;
    }
    out
}

/// The eight symmetries of the square lattice that fix the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Symmetry {
    swap: bool,
    neg_x: bool,
    neg_y: bool,
}

impl Symmetry {
    pub fn all() -> impl Iterator<Item = Symmetry> {
        (0..8u8).map(|m| Symmetry {
            swap: m & 1 != 0,
            neg_x: m & 2 != 0,
            neg_y: m & 4 != 0,
        })
    }

    pub fn apply(&self, p: &LatticePoint) -> LatticePoint {
        let (mut x, mut y) = if self.swap {
            (p.y.clone(), p.x.clone())
        } else {
            (p.x.clone(), p.y.clone())
        };
        if self.neg_x {
            x = -x;
        }
        if self.neg_y {
            y = -y;
        }
        LatticePoint { x, y }
    }
}

fn translate_to_origin(pts: &mut [LatticePoint], anchor: &LatticePoint) {
    let anchor = anchor.clone();
    for p in pts.iter_mut() {
        p.x -= &anchor.x;
        p.y -= &anchor.y;
    }
}

/// Canonical representative of a point set under lattice translations and
/// the eight axis symmetries: sorted, least vertex at the origin,
/// lexicographically least over symmetries.
pub fn canonical_set(points: &[LatticePoint]) -> Vec<LatticePoint> {
    Symmetry::all()
        .map(|g| {
            let mut v: Vec<LatticePoint> = points.iter().map(|p| g.apply(p)).collect();
            v.sort();
            if let Some(first) = v.first().cloned() {
                translate_to_origin(&mut v, &first);
            }
            v
        })
        .min()
        .unwrap_or_default()
}

/// Canonical representative of a polygon: additionally minimises over the
/// starting vertex and traversal direction.
pub fn canonical_polygon(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let n = points.len();
    let mut best: Option<Vec<LatticePoint>> = None;
    for g in Symmetry::all() {
        let mapped: Vec<LatticePoint> = points.iter().map(|p| g.apply(p)).collect();
        for reversed in [false, true] {
            for start in 0..n {
                let mut v: Vec<LatticePoint> = (0..n)
                    .map(|i| {
                        let idx = if reversed {
                            (start + n - i) % n
                        } else {
                            (start + i) % n
                        };
                        mapped[idx].clone()
                    })
                    .collect();
                let least = v.iter().min().cloned().unwrap();
                translate_to_origin(&mut v, &least);
                if best.as_ref().map_or(true, |b| v < *b) {
                    best = Some(v);
                }
            }
        }
    }
    best.unwrap_or_default()
}
