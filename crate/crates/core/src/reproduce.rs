//! The reproduction ledger: every headline claim re-derived and checked,
//! one row per claim, with known misprints in the published tables flagged
//! as documented divergences rather than failures.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::certificates::{self, CaseId};
use crate::constructors;
use crate::error::Result;
use crate::exactmath::{exact_sqrt_u128, Integer};
use crate::families::{self, realize, Side};
use crate::geometry::{canonical_set, certify, hypotenuse_decompositions, LatticePoint, Mode};
use crate::pell::{self, PellSolution};
use crate::search::{self, Arrangement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    DocumentedDivergence,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::DocumentedDivergence => "documented-divergence",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LedgerEntry {
    pub criterion: u8,
    pub title: String,
    pub status: Status,
    pub detail: String,
    pub elapsed_ms: u128,
    pub budget_ms: Option<u128>,
}

/// Published k = 3 table: (x, y, b, printed height).
pub const K3_TABLE: [(u64, u64, u64, u64); 5] = [
    (7, 5, 48, 140),
    (41, 29, 1680, 4756),
    (239, 169, 57120, 80782),
    (1393, 985, 1_940_448, 2_744_210),
    (8119, 5741, 65_918_160, 93_222_358),
];

/// Published k = 4 rows that satisfy the height identity.
pub const K4_TABLE_VALID: [(u64, u64); 6] = [
    (5, 12),
    (24, 45),
    (95, 168),
    (360, 627),
    (1349, 2340),
    (5040, 8733),
];

/// Remaining published k = 4 rows (b, printed height).
pub const K4_TABLE_EXTRA: [(u64, u64); 12] = [
    (5820, 10084),
    (7171, 12424),
    (7951, 13775),
    (8731, 15126),
    (9511, 16477),
    (10082, 17466),
    (10862, 18817),
    (11433, 19806),
    (11642, 20168),
    (5820, 10084),
    (7171, 12424),
    (7951, 13775),
];

/// Count the published text claims for k = 4 up to 25 000.
pub const K4_CLAIMED_COUNT: usize = 54;

struct Outcome {
    ok: bool,
    detail: String,
    divergences: Vec<String>,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Self {
            ok,
            detail: detail.into(),
            divergences: Vec::new(),
        }
    }
}

fn timed(
    criterion: u8,
    title: &str,
    budget: Option<Duration>,
    f: impl FnOnce() -> Result<Outcome>,
) -> Vec<LedgerEntry> {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (mut ok, mut detail, divergences) = match outcome {
        Ok(o) => (o.ok, o.detail, o.divergences),
        Err(e) => (false, format!("error: {e}"), Vec::new()),
    };
    if let Some(b) = budget {
        if elapsed > b {
            ok = false;
            detail = format!(
                "{detail}; over budget ({} ms > {} ms)",
                elapsed.as_millis(),
                b.as_millis()
            );
        }
    }
    let mut rows = vec![LedgerEntry {
        criterion,
        title: title.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
        detail,
        elapsed_ms: elapsed.as_millis(),
        budget_ms: budget.map(|b| b.as_millis()),
    }];
    rows.extend(divergences.into_iter().map(|d| LedgerEntry {
        criterion,
        title: title.to_string(),
        status: Status::DocumentedDivergence,
        detail: d,
        elapsed_ms: 0,
        budget_ms: None,
    }));
    rows
}

fn int(v: u64) -> Integer {
    Integer::from(v)
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

pub fn pell_table() -> Vec<LedgerEntry> {
    timed(1, "Pell table x^2 - 2y^2 = -1", secs(1), || {
        let sols = pell::generate(2, -1, 6)?;
        let got: BTreeSet<(Integer, Integer)> =
            sols.iter().map(|s| (s.x.clone(), s.y.clone())).collect();
        let missing: Vec<_> = K3_TABLE
            .iter()
            .filter(|r| !got.contains(&(int(r.0), int(r.1))))
            .collect();
        let identity = sols.iter().all(PellSolution::satisfies_identity);
        Ok(Outcome::new(
            missing.is_empty() && identity,
            format!(
                "{} solutions generated, table rows missing: {:?}",
                sols.len(),
                missing
            ),
        ))
    })
}

pub fn k3_b_column() -> Vec<LedgerEntry> {
    timed(2, "k=3 b column and heights", secs(1), || {
        let mut ok = true;
        let mut divergences = Vec::new();
        for (i, &(x, y, b, printed_h)) in K3_TABLE.iter().enumerate() {
            let s = PellSolution::new(int(x), int(y), 2, -1)?;
            let got_b = families::from_pell(3, &s)?;
            let m = families::member(3, &got_b)?;
            ok &= got_b == int(b);
            ok &= &m.h * &m.h == 8 * (&got_b + 1) * (&got_b + 2);
            if i < 2 {
                ok &= m.h == int(printed_h);
            } else if m.h == 2 * int(printed_h) {
                divergences.push(format!(
                    "row {}: b = {b}, printed height {printed_h} is half of the identity value {}",
                    i + 1,
                    m.h
                ));
            } else {
                ok = false;
            }
        }
        Ok(Outcome {
            ok,
            detail: "b = 48, 1680, 57120, 1940448, 65918160; h^2 = 8(b+1)(b+2)".into(),
            divergences,
        })
    })
}

pub fn k4_family() -> Vec<LedgerEntry> {
    timed(3, "k=4 admissible b <= 25000", secs(1), || {
        let expected: Vec<u64> = vec![5, 24, 95, 360, 1349, 5040, 18815];
        let via_pell: Vec<Integer> = families::admissible_b_values(4, &int(25_000))?
            .into_iter()
            .filter(|b| b >= &int(1))
            .collect();
        let via_scan: Vec<Integer> = families::admissible_b_values_scan(4, 25_000)?
            .into_iter()
            .filter(|&b| b >= 1)
            .map(int)
            .collect();
        let mut ok = via_pell == via_scan
            && via_scan == expected.iter().map(|&b| int(b)).collect::<Vec<_>>();
        for &(b, h) in &K4_TABLE_VALID {
            ok &= families::member(4, &int(b))?.h == int(h);
        }
        let extra: BTreeSet<(u64, u64)> = K4_TABLE_EXTRA.iter().copied().collect();
        let mut inadmissible = Vec::new();
        for &(b, _) in &extra {
            if !families::is_admissible(4, &int(b))? {
                inadmissible.push(b);
            }
        }
        let divergences = vec![
            format!(
                "claimed {K4_CLAIMED_COUNT} admissible b up to 25000; Pell and scan both give {}",
                via_scan.len()
            ),
            format!("later table rows b = {inadmissible:?} do not satisfy h^2 = 3(b+1)(b+3)"),
        ];
        Ok(Outcome {
            ok,
            detail: format!("Pell and scan agree: {via_scan:?}"),
            divergences,
        })
    })
}

pub fn apex_pairs_empty() -> Vec<LedgerEntry> {
    timed(4, "apex pairs b != d up to 10^6", secs(1), || {
        let mut ok = true;
        let mut parts = Vec::new();
        for k in [3, 4] {
            let r = search::scan_apex_pairs(k, &int(1_000_000))?;
            ok &= r.off_diagonal_hits().is_empty();
            parts.push(format!(
                "k={k}: {} admissible, {} pairs, {} off-diagonal hits",
                r.scanned["admissible_b"],
                r.scanned["pairs_evaluated"],
                r.off_diagonal_hits().len()
            ));
        }
        Ok(Outcome::new(ok, parts.join("; ")))
    })
}

pub fn mirror_quadrilaterals() -> Vec<LedgerEntry> {
    timed(5, "mirror quadrilaterals b = d", None, || {
        let mut ok = true;
        for k in [3, 4] {
            let r = search::scan_apex_pairs(k, &int(1_000_000))?;
            ok &= r.mirror_hits(Arrangement::OppositeSide)
                == families::admissible_b_values(k, &int(1_000_000))?;
        }
        for (k, b, c) in [(3u64, 7u64, 48u64), (4, 5, 24)] {
            let q = search::ApexPairQuery {
                k,
                arrangement: Arrangement::OppositeSide,
                b: int(b),
                d: int(b),
            };
            ok &= search::apex_pair_distance(&q)? == Some(int(c));
            let rep = certify(&q.configuration()?, Some(&int(k)), Mode::Set)?;
            ok &= rep.is_nondegenerate_diophantine() && !rep.pairs_with_length.is_empty();
        }
        Ok(Outcome::new(
            ok,
            "opposite-side hit set equals admissible set; (3,7) -> 48, (4,5) -> 24",
        ))
    })
}

fn family_classes(k: u64, bs: &[u64]) -> Result<BTreeSet<Vec<LatticePoint>>> {
    bs.iter()
        .map(|&b| {
            Ok(canonical_set(&realize(
                &families::member(k, &int(b))?,
                &LatticePoint::origin(),
                Side::Above,
            )))
        })
        .collect()
}

pub fn brute_force_vs_family() -> Vec<LedgerEntry> {
    timed(6, "lattice oracle vs family", secs(60), || {
        let k3 = search::brute_force_triangles(3, 60)?.canonical_witnesses()
            == family_classes(3, &[0, 7])?;
        let k4 = search::brute_force_triangles(4, 60)?.canonical_witnesses()
            == family_classes(4, &[0, 5, 24])?;
        let k1 = search::brute_force_triangles(1, 30)?.witnesses.is_empty();
        let k2 = search::brute_force_triangles(2, 30)?.witnesses.is_empty();
        Ok(Outcome::new(
            k1 && k2 && k3 && k4,
            format!("k=3 {k3}, k=4 {k4}, k=1 empty {k1}, k=2 empty {k2}"),
        ))
    })
}

pub fn ngon_classification() -> Vec<LedgerEntry> {
    timed(7, "n-gon classification k = 3, 4", secs(1), || {
        let mut ok = true;
        let mut parts = Vec::new();
        for k in [3, 4] {
            let five = search::extend_to_ngon(k, 5, &int(1_000_000))?
                .witnesses
                .len();
            let four = search::extend_to_ngon(k, 4, &int(100))?.witnesses.len();
            ok &= five == 0 && four > 0;
            parts.push(format!("k={k}: {four} quadrilaterals, {five} pentagons"));
        }
        Ok(Outcome::new(ok, parts.join("; ")))
    })
}

fn hypotenuse_brute(k: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for a in 1..k {
        for b in a..k {
            if a * a + b * b == k * k {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn hypotenuses() -> Vec<LedgerEntry> {
    timed(8, "hypotenuse decompositions", secs(5), || {
        let small = (1..=4).all(|k| hypotenuse_decompositions(k).is_empty())
            && hypotenuse_decompositions(5) == vec![(3, 4)];
        let mismatches: Vec<u64> = (1..=1000u64)
            .into_par_iter()
            .filter(|&k| hypotenuse_decompositions(k) != hypotenuse_brute(k))
            .collect();
        Ok(Outcome::new(
            small && mismatches.is_empty(),
            format!("brute-force mismatches for k <= 1000: {mismatches:?}"),
        ))
    })
}

pub fn parity_suite() -> Vec<LedgerEntry> {
    timed(9, "parity certificates", None, || {
        let mut failing = Vec::new();
        for id in CaseId::ALL {
            let c = certificates::verify_parity_case(id, 10_000)?;
            if !c.holds() {
                failing.push(id.to_string());
            }
        }
        Ok(Outcome::new(
            failing.is_empty(),
            format!("cases with witnesses: {failing:?}"),
        ))
    })
}

pub fn constructor_sweep() -> Vec<LedgerEntry> {
    timed(10, "constructors 3 <= k <= 1000", secs(5), || {
        let bad: Vec<u64> = (3..=1000u64)
            .into_par_iter()
            .filter(|&k| {
                let kk = int(k);
                let good = |pts: &[LatticePoint]| {
                    certify(pts, Some(&kk), Mode::Polygon)
                        .map(|r| {
                            r.is_nondegenerate_diophantine() && !r.pairs_with_length.is_empty()
                        })
                        .unwrap_or(false)
                };
                let tri = constructors::triangle_with_side(k)
                    .map(|t| good(&t))
                    .unwrap_or(false);
                let rect = constructors::rectangle_with_side(k, None)
                    .map(|r| r.len() == 1 && good(&r[0]))
                    .unwrap_or(false);
                !(tri && rect)
            })
            .collect();
        Ok(Outcome::new(bad.is_empty(), format!("failing k: {bad:?}")))
    })
}

/// Solutions of `x^2 - d y^2 = n` with `1 <= x <= max`, `y > 0`.
pub fn pell_brute(d: i64, n: i64, max: u64) -> Vec<(u128, u128)> {
    (1..=max as i128)
        .into_par_iter()
        .filter_map(|x| {
            let rem = x * x - n as i128;
            if rem <= 0 || rem % d as i128 != 0 {
                return None;
            }
            exact_sqrt_u128((rem / d as i128) as u128).map(|y| (x as u128, y))
        })
        .collect()
}

pub fn property_suite() -> Vec<LedgerEntry> {
    timed(11, "property suite", None, || {
        let unit_side = certificates::unit_side_isosceles_counterexamples(10_000) == 0;

        let mut monotone = true;
        let mut realized = true;
        for k in [3, 4] {
            let ms: Vec<_> = families::members(k)?.take(6).collect();
            for w in ms.windows(2) {
                let lo = families::apex_cosines(k, &w[0].b)?;
                let hi = families::apex_cosines(k, &w[1].b)?;
                monotone &= hi.cos_at_far_vertex < lo.cos_at_far_vertex
                    && hi.cos_at_near_vertex < lo.cos_at_near_vertex;
            }
            for m in families::members(k)?.take(12) {
                for side in [Side::Above, Side::Below] {
                    let tri = realize(&m, &LatticePoint::origin(), side);
                    let r = certify(&tri, Some(&int(k)), Mode::Polygon)?;
                    realized &= r.is_nondegenerate_diophantine()
                        && r.distance_multiset()
                            == Some({
                                let mut v = vec![int(k), m.side_short.clone(), m.side_long.clone()];
                                v.sort();
                                v
                            });
                }
            }
        }

        let mut streams = true;
        for (d, n) in pell::SUPPORTED {
            let brute = pell_brute(d, n, 1_000_000);
            let got: Vec<(u128, u128)> = pell::stream(d, n)?
                .take_while(|s| s.x <= int(1_000_000))
                .map(|s| {
                    (
                        s.x.to_string().parse().unwrap(),
                        s.y.to_string().parse().unwrap(),
                    )
                })
                .collect();
            streams &= brute == got;
        }
        Ok(Outcome::new(
            unit_side && monotone && realized && streams,
            format!("unit_side {unit_side}, cosine monotonicity {monotone}, realize certifies {realized}, Pell = brute {streams}"),
        ))
    })
}

pub fn run_all() -> Vec<LedgerEntry> {
    [
        pell_table,
        k3_b_column,
        k4_family,
        apex_pairs_empty,
        mirror_quadrilaterals,
        brute_force_vs_family,
        ngon_classification,
        hypotenuses,
        parity_suite,
        constructor_sweep,
        property_suite,
    ]
    .into_iter()
    .flat_map(|f| f())
    .collect()
}

pub fn all_passed(ledger: &[LedgerEntry]) -> bool {
    ledger.iter().all(|e| e.status != Status::Fail)
}

pub fn render_table(ledger: &[LedgerEntry]) -> String {
    let mut out = String::new();
    for e in ledger {
        out.push_str(&format!(
            "{:>2}  {:<22} {:<36} {:>7} ms  {}\n",
            e.criterion,
            e.status.to_string(),
            e.title,
            e.elapsed_ms,
            e.detail
        ));
    }
    let fails = ledger.iter().filter(|e| e.status == Status::Fail).count();
    let divs = ledger
        .iter()
        .filter(|e| e.status == Status::DocumentedDivergence)
        .count();
    out.push_str(&format!(
        "{} rows, {fails} failed, {divs} documented divergences\n",
        ledger.len()
    ));
    out
}
