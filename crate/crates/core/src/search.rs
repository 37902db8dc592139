//! Exhaustive and structured searches for integer-distance lattice
//! configurations containing a segment of length `k`.
//!
//! Coordinates are bounded by `max(|x|, |y|) <= radius`, with the length-`k`
//! segment anchored at the origin. Certification is translation and
//! symmetry invariant, so one representative direction per symmetry class
//! of the segment suffices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{exact_sqrt, exact_sqrt_u128, Integer};
use crate::families::{self, FamilyMember};
use crate::geometry::{
    canonical_set, certify, collinear, hypotenuse_decompositions, is_convex, simple_polygon_order,
    squared_distance, LatticePoint, Mode,
};

/// Largest radius the machine-word lattice scan accepts.
pub const MAX_RADIUS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub vertices: Vec<LatticePoint>,
    #[serde(serialize_with = "crate::exactmath::decimal::vec::serialize")]
    pub distances: Vec<Integer>,
    pub convex: Option<bool>,
}

impl Witness {
    /// Canonicalise `points`, order them as a simple polygon when one
    /// exists, and record the sorted distance multiset.
    pub fn from_points(points: &[LatticePoint]) -> Result<Self> {
        let canon = canonical_set(points);
        let (vertices, convex) = match simple_polygon_order(&canon) {
            Some(order) => {
                let poly: Vec<LatticePoint> = order.iter().map(|&i| canon[i].clone()).collect();
                let convex = is_convex(&poly).ok();
                (poly, convex)
            }
            None => (canon, None),
        };
        let report = certify(&vertices, None, Mode::Set)?;
        let distances = report
            .distance_multiset()
            .ok_or_else(|| Error::Parameter("witness has a non-integral distance".into()))?;
        Ok(Self {
            vertices,
            distances,
            convex,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "search", rename_all = "snake_case")]
pub enum SearchQuery {
    Triangles {
        k: u64,
        radius: u64,
    },
    Pairs {
        k: u64,
        limit: String,
    },
    Ngon {
        k: u64,
        n: usize,
        source: String,
        bound: String,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub query: SearchQuery,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pair_hits: Vec<PairHit>,
    pub scanned: BTreeMap<String, u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchReport {
    fn new(query: SearchQuery) -> Self {
        Self {
            query,
            witnesses: Vec::new(),
            pair_hits: Vec::new(),
            scanned: BTreeMap::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn count(&mut self, key: &str, n: u64) {
        *self.scanned.entry(key.to_string()).or_default() += n;
    }

    /// Canonical vertex sets of all witnesses.
    pub fn canonical_witnesses(&self) -> BTreeSet<Vec<LatticePoint>> {
        self.witnesses
            .iter()
            .map(|w| canonical_set(&w.vertices))
            .collect()
    }

    /// Hits with `b != d`.
    pub fn off_diagonal_hits(&self) -> Vec<&PairHit> {
        self.pair_hits.iter().filter(|h| h.b != h.d).collect()
    }

    /// `b` values with a `b = d` hit in the given arrangement.
    pub fn mirror_hits(&self, arrangement: Arrangement) -> Vec<Integer> {
        self.pair_hits
            .iter()
            .filter(|h| h.b == h.d && h.arrangement == arrangement)
            .map(|h| h.b.clone())
            .collect()
    }
}

fn check_radius(k: u64, radius: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    if radius < k {
        return Err(Error::Parameter(format!(
            "radius {radius} must be at least k = {k}"
        )));
    }
    if radius > MAX_RADIUS {
        return Err(Error::Parameter(format!(
            "radius {radius} exceeds {MAX_RADIUS}"
        )));
    }
    Ok(())
}

/// One representative far endpoint per symmetry class of length-`k`
/// segments starting at the origin.
pub fn segment_directions(k: u64) -> Vec<(i64, i64)> {
    std::iter::once((k as i64, 0))
        .chain(
            hypotenuse_decompositions(k)
                .into_iter()
                .map(|(a, b)| (a as i64, b as i64)),
        )
        .collect()
}

fn is_sq(v: i128) -> bool {
    v >= 0 && exact_sqrt_u128(v as u128).is_some()
}

/// Every lattice point `A` with `|A| <= radius` (max-norm) at integer
/// distance from both `(0, 0)` and `end`. Collinear points are returned
/// separately.
fn integral_apexes(end: (i64, i64), radius: u64) -> (Vec<(i64, i64)>, u64, u64) {
    let r = radius as i64;
    let (ex, ey) = end;
    let rows: Vec<(Vec<(i64, i64)>, u64)> = (-r..=r)
        .into_par_iter()
        .map(|x| {
            let mut hits = Vec::new();
            let mut degenerate = 0u64;
            for y in -r..=r {
                if (x, y) == (0, 0) || (x, y) == end {
                    continue;
                }
                let (x, y) = (x as i128, y as i128);
                let d0 = x * x + y * y;
                let d1 = (x - ex as i128).pow(2) + (y - ey as i128).pow(2);
                if is_sq(d0) && is_sq(d1) {
                    if x * ey as i128 - y * ex as i128 == 0 {
                        degenerate += 1;
                    } else {
                        hits.push((x as i64, y as i64));
                    }
                }
            }
            (hits, degenerate)
        })
        .collect();
    let scanned = (2 * radius + 1).pow(2) - 2;
    let degenerate = rows.iter().map(|r| r.1).sum();
    (
        rows.into_iter().flat_map(|r| r.0).collect(),
        scanned,
        degenerate,
    )
}

/// All nondegenerate lattice triangles with a side of length `k` and
/// integer sides, deduplicated up to lattice congruence.
pub fn brute_force_triangles(k: u64, radius: u64) -> Result<SearchReport> {
    check_radius(k, radius)?;
    let start = Instant::now();
    let mut report = SearchReport::new(SearchQuery::Triangles { k, radius });
    let mut found = BTreeSet::new();
    for end in segment_directions(k) {
        let (apexes, scanned, degenerate) = integral_apexes(end, radius);
        report.count("segment_directions", 1);
        report.count("third_vertices", scanned);
        report.count("degenerate_skipped", degenerate);
        let e = LatticePoint::new(end.0, end.1);
        for (x, y) in apexes {
            found.insert(canonical_set(&[
                LatticePoint::origin(),
                e.clone(),
                LatticePoint::new(x, y),
            ]));
        }
    }
    report.witnesses = found
        .iter()
        .map(|pts| Witness::from_points(pts))
        .collect::<Result<_>>()?;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Relative placement of two family apexes over the same base segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Arrangement {
    /// Same side of the base line, beyond opposite endpoints.
    SameSide,
    /// Opposite sides of the base line, beyond the same endpoint.
    OppositeSide,
    /// Same side, beyond the same endpoint.
    SameSideSameEnd,
    /// Opposite sides, beyond opposite endpoints.
    OppositeSideOppositeEnd,
}

impl Arrangement {
    pub const ALL: [Arrangement; 4] = [
        Arrangement::SameSide,
        Arrangement::OppositeSide,
        Arrangement::SameSideSameEnd,
        Arrangement::OppositeSideOppositeEnd,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Arrangement::SameSide => "same_side",
            Arrangement::OppositeSide => "opposite_side",
            Arrangement::SameSideSameEnd => "same_side_same_end",
            Arrangement::OppositeSideOppositeEnd => "opposite_side_opposite_end",
        }
    }

    fn placement(self) -> (End, i64, End, i64) {
        match self {
            Arrangement::SameSide => (End::Near, 1, End::Far, 1),
            Arrangement::OppositeSide => (End::Near, 1, End::Near, -1),
            Arrangement::SameSideSameEnd => (End::Near, 1, End::Near, 1),
            Arrangement::OppositeSideOppositeEnd => (End::Near, 1, End::Far, -1),
        }
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Arrangement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Arrangement::ALL
            .into_iter()
            .find(|a| a.as_str() == s.trim())
            .ok_or_else(|| Error::Parameter(format!("unknown arrangement `{s}`")))
    }
}

/// Which endpoint of the base `(0,0)-(k,0)` the apex foot lies beyond.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum End {
    /// Beyond `(k, 0)`: apex at `(k + b, ±h)`.
    Near,
    /// Beyond `(0, 0)`: apex at `(-b, ±h)`.
    Far,
}

fn apex(m: &FamilyMember, end: End, side: i64) -> LatticePoint {
    let y = &m.h * side;
    match end {
        End::Near => LatticePoint::new(&m.b + m.k, y),
        End::Far => LatticePoint::new(-m.b.clone(), y),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApexPairQuery {
    pub k: u64,
    pub arrangement: Arrangement,
    pub b: Integer,
    pub d: Integer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairHit {
    #[serde(with = "crate::exactmath::decimal")]
    pub b: Integer,
    #[serde(with = "crate::exactmath::decimal")]
    pub d: Integer,
    pub arrangement: Arrangement,
    #[serde(with = "crate::exactmath::decimal")]
    pub c: Integer,
}

impl ApexPairQuery {
    fn members(&self) -> Result<(FamilyMember, FamilyMember)> {
        Ok((
            families::member(self.k, &self.b)?,
            families::member(self.k, &self.d)?,
        ))
    }

    /// The four points: base endpoints, apex for `b`, apex for `d`.
    pub fn configuration(&self) -> Result<[LatticePoint; 4]> {
        let (mb, md) = self.members()?;
        let (e1, s1, e2, s2) = self.arrangement.placement();
        Ok([
            LatticePoint::origin(),
            LatticePoint::new(self.k, 0),
            apex(&mb, e1, s1),
            apex(&md, e2, s2),
        ])
    }
}

/// Closed-form apex separation squared, from the family heights.
pub fn apex_pair_distance_squared(q: &ApexPairQuery) -> Result<Integer> {
    let (mb, md) = q.members()?;
    let k = Integer::from(q.k);
    let (hb, hd) = (&mb.h, &md.h);
    let (dx, dy) = match q.arrangement {
        Arrangement::SameSide => (&q.b + &q.d + &k, hb - hd),
        Arrangement::OppositeSide => (&q.d - &q.b, hb + hd),
        Arrangement::SameSideSameEnd => (&q.d - &q.b, hd - hb),
        Arrangement::OppositeSideOppositeEnd => (&q.b + &q.d + &k, hb + hd),
    };
    Ok(&dx * &dx + &dy * &dy)
}

/// `Some(c)` when the two apexes are an integer distance `c` apart.
pub fn apex_pair_distance(q: &ApexPairQuery) -> Result<Option<Integer>> {
    Ok(exact_sqrt(&apex_pair_distance_squared(q)?))
}

/// Same-side same-end pairs (`b < d`): an integer distance would have to be
/// `3(d-b) + 1` for k = 3 or `2(d-b) + 1` for k = 4, and either reduces to
/// an odd left side against an even right side. True when that split holds.
fn parity_split_holds(k: u64, mb: &FamilyMember, md: &FamilyMember) -> bool {
    let x = &md.b - &mb.b;
    match k {
        // 8x^2 + 6x + 1 vs (h_d - h_b)^2
        3 => {
            let lhs: Integer = 8 * &x * &x + 6 * &x + 1;
            let dh = &md.h - &mb.h;
            let rhs = &dh * &dh;
            lhs.bit(0) && !rhs.bit(0) && lhs != rhs
        }
        // 6db + 8d + 16b + 17 vs 2 h_b h_d
        4 => {
            let lhs: Integer = 6 * &md.b * &mb.b + 8 * &md.b + 16 * &mb.b + 17;
            let rhs: Integer = 2 * &mb.h * &md.h;
            lhs.bit(0) && !rhs.bit(0) && lhs != rhs
        }
        _ => true,
    }
}

/// Evaluate every arrangement for every admissible pair `b <= d <= limit`.
pub fn scan_apex_pairs(k: u64, b_limit: &Integer) -> Result<SearchReport> {
    if b_limit < &Integer::from(1) {
        return Err(Error::Parameter("b limit must be at least 1".into()));
    }
    let start = Instant::now();
    let admissible = families::admissible_b_values(k, b_limit)?;
    let mut report = SearchReport::new(SearchQuery::Pairs {
        k,
        limit: b_limit.to_string(),
    });
    report.count("admissible_b", admissible.len() as u64);
    let mut witnesses = BTreeSet::new();
    for (i, b) in admissible.iter().enumerate() {
        for d in &admissible[i..] {
            for arrangement in Arrangement::ALL {
                if b == d && arrangement == Arrangement::SameSideSameEnd {
                    continue;
                }
                let q = ApexPairQuery {
                    k,
                    arrangement,
                    b: b.clone(),
                    d: d.clone(),
                };
                report.count("pairs_evaluated", 1);
                if arrangement == Arrangement::SameSideSameEnd {
                    let (mb, md) = q.members()?;
                    if !parity_split_holds(k, &mb, &md) {
                        return Err(Error::Parameter(format!(
                            "parity split fails at b={b}, d={d}"
                        )));
                    }
                    report.count("parity_rechecked", 1);
                }
                if let Some(c) = apex_pair_distance(&q)? {
                    let pts = q.configuration()?;
                    debug_assert_eq!(squared_distance(&pts[2], &pts[3]), &c * &c);
                    witnesses.insert(canonical_set(&pts));
                    report.pair_hits.push(PairHit {
                        b: b.clone(),
                        d: d.clone(),
                        arrangement,
                        c,
                    });
                }
            }
        }
    }
    report.witnesses = witnesses
        .iter()
        .map(|pts| Witness::from_points(pts))
        .collect::<Result<_>>()?;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Candidate extra vertices over a length-`k` segment anchored at the
/// origin. Each entry is a segment far endpoint and every admissible apex
/// over it.
pub trait ApexSource: Send + Sync {
    fn name(&self) -> &'static str;
    fn bound(&self) -> String;
    fn candidates(&self, k: u64) -> Result<Vec<(LatticePoint, Vec<LatticePoint>)>>;
}

/// Apexes of the parametric triangle families, four per admissible `b`.
pub struct FamilyApexes {
    pub b_limit: Integer,
}

impl ApexSource for FamilyApexes {
    fn name(&self) -> &'static str {
        "family"
    }

    fn bound(&self) -> String {
        self.b_limit.to_string()
    }

    fn candidates(&self, k: u64) -> Result<Vec<(LatticePoint, Vec<LatticePoint>)>> {
        let mut out = Vec::new();
        for b in families::admissible_b_values(k, &self.b_limit)? {
            let m = families::member(k, &b)?;
            for end in [End::Near, End::Far] {
                for side in [1, -1] {
                    out.push(apex(&m, end, side));
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(vec![(LatticePoint::new(k, 0), out)])
    }
}

/// Every lattice point within the radius at integer distance from both
/// segment endpoints. Makes no use of the family structure.
pub struct LatticeApexes {
    pub radius: u64,
}

impl ApexSource for LatticeApexes {
    fn name(&self) -> &'static str {
        "lattice"
    }

    fn bound(&self) -> String {
        self.radius.to_string()
    }

    fn candidates(&self, k: u64) -> Result<Vec<(LatticePoint, Vec<LatticePoint>)>> {
        check_radius(k, self.radius)?;
        Ok(segment_directions(k)
            .into_iter()
            .map(|end| {
                let (pts, _, _) = integral_apexes(end, self.radius);
                let pts = pts
                    .into_iter()
                    .map(|(x, y)| LatticePoint::new(x, y))
                    .collect();
                (LatticePoint::new(end.0, end.1), pts)
            })
            .collect())
    }
}

type SourceFactory = fn(&Integer) -> Result<Box<dyn ApexSource>>;

pub struct SourceRegistry {
    factories: BTreeMap<&'static str, SourceFactory>,
}

impl SourceRegistry {
    pub fn standard() -> Self {
        let mut r = Self {
            factories: BTreeMap::new(),
        };
        r.register("family", |bound| {
            Ok(Box::new(FamilyApexes {
                b_limit: bound.clone(),
            }))
        });
        r.register("lattice", |bound| {
            let radius = bound
                .to_u64()
                .ok_or_else(|| Error::Parameter(format!("radius {bound} out of range")))?;
            Ok(Box::new(LatticeApexes { radius }))
        });
        r
    }

    pub fn register(&mut self, name: &'static str, factory: SourceFactory) {
        self.factories.insert(name, factory);
    }

    pub fn create(&self, name: &str, bound: &Integer) -> Result<Box<dyn ApexSource>> {
        let factory = self
            .factories
            .get(name)
            .ok_or_else(|| Error::UnknownSource(name.to_string()))?;
        factory(bound)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.factories.keys().copied().collect()
    }
}

pub fn sources() -> &'static SourceRegistry {
    static REGISTRY: OnceLock<SourceRegistry> = OnceLock::new();
    REGISTRY.get_or_init(SourceRegistry::standard)
}

/// n-gons made of the segment endpoints plus `n - 2` family apexes,
/// with every pairwise distance integral and no three vertices collinear.
pub fn extend_to_ngon(k: u64, n: usize, b_limit: &Integer) -> Result<SearchReport> {
    extend_to_ngon_with(
        k,
        n,
        &FamilyApexes {
            b_limit: b_limit.clone(),
        },
    )
}

pub fn extend_to_ngon_with(k: u64, n: usize, source: &dyn ApexSource) -> Result<SearchReport> {
    if n < 4 {
        return Err(Error::Parameter(format!("n = {n} must be at least 4")));
    }
    let start = Instant::now();
    let mut report = SearchReport::new(SearchQuery::Ngon {
        k,
        n,
        source: source.name().into(),
        bound: source.bound(),
    });
    let mut found = BTreeSet::new();
    let origin = LatticePoint::origin();

    for (end, apexes) in source.candidates(k)? {
        report.count("apex_candidates", apexes.len() as u64);
        let m = apexes.len();
        // compatible: integer distance, and not collinear with either endpoint
        let mut adj = vec![vec![false; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let ok = exact_sqrt(&squared_distance(&apexes[i], &apexes[j])).is_some()
                    && !collinear(&origin, &apexes[i], &apexes[j])
                    && !collinear(&end, &apexes[i], &apexes[j]);
                adj[i][j] = ok;
                adj[j][i] = ok;
                if ok {
                    report.count("compatible_pairs", 1);
                }
            }
        }
        let mut cliques = Vec::new();
        let mut stack = Vec::new();
        extend_cliques(&adj, n - 2, 0, &mut stack, &mut cliques);
        report.count("cliques", cliques.len() as u64);
        for clique in cliques {
            let mut pts = vec![origin.clone(), end.clone()];
            pts.extend(clique.iter().map(|&i| apexes[i].clone()));
            let has_collinear_apexes = clique.len() >= 3
                && (0..clique.len()).any(|a| {
                    (a + 1..clique.len()).any(|b| {
                        (b + 1..clique.len()).any(|c| {
                            collinear(&apexes[clique[a]], &apexes[clique[b]], &apexes[clique[c]])
                        })
                    })
                });
            if has_collinear_apexes {
                report.count("collinear_rejected", 1);
                continue;
            }
            found.insert(canonical_set(&pts));
        }
    }
    report.witnesses = found
        .iter()
        .map(|pts| Witness::from_points(pts))
        .collect::<Result<_>>()?;
    report.elapsed = start.elapsed();
    Ok(report)
}

fn extend_cliques(
    adj: &[Vec<bool>],
    size: usize,
    from: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if stack.len() == size {
        out.push(stack.clone());
        return;
    }
    for v in from..adj.len() {
        if stack.iter().all(|&u| adj[u][v]) {
            stack.push(v);
            extend_cliques(adj, size, v + 1, stack, out);
            stack.pop();
        }
    }
}
