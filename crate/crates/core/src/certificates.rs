//! Impossibility certificates: finite exhaustive scans of the linear and
//! radical equations that rule out particular triangle and quadrilateral
//! shapes, each paired with the parity or factorization reason it can have
//! no solution at all.
//!
//! A certificate is evidence over a bounded range, never a proof.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::search;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CaseId {
    #[serde(rename = "L3")]
    L3,
    #[serde(rename = "K2")]
    K2,
    #[serde(rename = "K3_II")]
    K3II,
    #[serde(rename = "K3_III_contr")]
    K3IIIContr,
    #[serde(rename = "K4_II")]
    K4II,
    #[serde(rename = "K4_IV")]
    K4IV,
    #[serde(rename = "EQ16")]
    Eq16,
    #[serde(rename = "EQ16i")]
    Eq16i,
    #[serde(rename = "K3_13_odd")]
    K313Odd,
}

impl CaseId {
    pub const ALL: [CaseId; 9] = [
        CaseId::L3,
        CaseId::K2,
        CaseId::K3II,
        CaseId::K3IIIContr,
        CaseId::K4II,
        CaseId::K4IV,
        CaseId::Eq16,
        CaseId::Eq16i,
        CaseId::K313Odd,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::L3 => "L3",
            CaseId::K2 => "K2",
            CaseId::K3II => "K3_II",
            CaseId::K3IIIContr => "K3_III_contr",
            CaseId::K4II => "K4_II",
            CaseId::K4IV => "K4_IV",
            CaseId::Eq16 => "EQ16",
            CaseId::Eq16i => "EQ16i",
            CaseId::K313Odd => "K3_13_odd",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownCase(s.to_string()))
    }
}

/// One impossibility argument: the equation, its free variables, and the
/// witness predicate the scan evaluates.
pub trait ParityCase: Send + Sync {
    fn id(&self) -> CaseId;
    fn equation(&self) -> &'static str;
    fn context(&self) -> &'static str;
    fn reason(&self) -> &'static str;
    fn variables(&self) -> &'static [&'static str];
    /// Smallest value of every free variable.
    fn lower_bound(&self) -> i128;
    fn is_witness(&self, vars: &[i128]) -> bool;
}

struct TableCase {
    id: CaseId,
    equation: &'static str,
    context: &'static str,
    reason: &'static str,
    variables: &'static [&'static str],
    lower_bound: i128,
    witness: fn(&[i128]) -> bool,
}

impl ParityCase for TableCase {
    fn id(&self) -> CaseId {
        self.id
    }
    fn equation(&self) -> &'static str {
        self.equation
    }
    fn context(&self) -> &'static str {
        self.context
    }
    fn reason(&self) -> &'static str {
        self.reason
    }
    fn variables(&self) -> &'static [&'static str] {
        self.variables
    }
    fn lower_bound(&self) -> i128 {
        self.lower_bound
    }
    fn is_witness(&self, v: &[i128]) -> bool {
        (self.witness)(v)
    }
}

fn standard_cases() -> Vec<TableCase> {
    vec![
        TableCase {
            id: CaseId::L3,
            equation: "(2m - q)(2m + q) = 1",
            context: "four points, no three collinear, one unit distance: both far points on the perpendicular bisector",
            reason: "product of two naturals with 2m + q >= 3 cannot equal 1 unless 2m - q = 2m + q = 1, which forces q = 0",
            variables: &["m", "q"],
            lower_bound: 1,
            witness: |v| 4 * v[0] * v[0] - v[1] * v[1] == 1,
        },
        TableCase {
            id: CaseId::K2,
            equation: "2a + 1 = 4b + 4",
            context: "k = 2, legs differ by 1, apex beyond the base",
            reason: "LHS odd, RHS even",
            variables: &["a", "b"],
            lower_bound: 1,
            witness: |v| 2 * v[0] + 1 == 4 * v[1] + 4,
        },
        TableCase {
            id: CaseId::K3II,
            equation: "a^2 = b^2 + h^2, 2a + 1 = 6b + 9",
            context: "k = 3, legs differ by 1: every solution is a family member",
            reason: "2a + 1 = 6b + 9 forces a = 3b + 4, and then h^2 = a^2 - b^2 = 8(b+1)(b+2); a witness is a solution escaping that form",
            variables: &["a", "b"],
            lower_bound: 0,
            witness: |v| {
                let (a, b) = (v[0], v[1]);
                2 * a + 1 == 6 * b + 9 && (a != 3 * b + 4 || a * a - b * b != 8 * (b + 1) * (b + 2))
            },
        },
        TableCase {
            id: CaseId::K3IIIContr,
            equation: "2(2a - 3b - 4) = 1",
            context: "k = 3, legs differ by 2",
            reason: "LHS even, RHS odd",
            variables: &["a", "b"],
            lower_bound: 0,
            witness: |v| 2 * (2 * v[0] - 3 * v[1] - 4) == 1,
        },
        TableCase {
            id: CaseId::K4II,
            equation: "2a + 1 = 8b + 16",
            context: "k = 4, legs differ by 1",
            reason: "LHS odd, RHS even",
            variables: &["a", "b"],
            lower_bound: 0,
            witness: |v| 2 * v[0] + 1 == 8 * v[1] + 16,
        },
        TableCase {
            id: CaseId::K4IV,
            equation: "6a + 9 = 8b + 16",
            context: "k = 4, legs differ by 3",
            reason: "LHS odd, RHS even",
            variables: &["a", "b"],
            lower_bound: 0,
            witness: |v| 6 * v[0] + 9 == 8 * v[1] + 16,
        },
        TableCase {
            id: CaseId::Eq16,
            equation: "2(3db + 4d + 8b + 8) + 1 = 6 sqrt((b+1)(b+3)(d+1)(d+3))",
            context: "k = 4, two apexes on the same side beyond the same endpoint",
            reason: "2(3db+4d+8b+8)+1 is odd; 6*(integer) is even",
            variables: &["b", "d"],
            lower_bound: 0,
            witness: |v| {
                let (b, d) = (v[0], v[1]);
                let lhs = 2 * (3 * d * b + 4 * d + 8 * b + 8) + 1;
                lhs * lhs == 36 * (b + 1) * (b + 3) * (d + 1) * (d + 3)
            },
        },
        TableCase {
            id: CaseId::Eq16i,
            equation: "6bd + 8(b + d) + 15 = 6 sqrt((b+1)(b+3)(d+1)(d+3))",
            context: "k = 4, two apexes on opposite sides beyond opposite endpoints",
            reason: "LHS odd, RHS even when integral",
            variables: &["b", "d"],
            lower_bound: 0,
            witness: |v| {
                let (b, d) = (v[0], v[1]);
                let lhs = 6 * b * d + 8 * (b + d) + 15;
                lhs * lhs == 36 * (b + 1) * (b + 3) * (d + 1) * (d + 3)
            },
        },
        TableCase {
            id: CaseId::K313Odd,
            equation: "16 sqrt(2b^2 + 6b + 4) = 18b + 37  or  = 6b + 25",
            context: "k = 3, apex paired with the b = 0 rectangle corner: the odd branches",
            reason: "LHS even when integral, RHS odd",
            variables: &["b"],
            lower_bound: 0,
            witness: |v| {
                let b = v[0];
                let rad = 256 * (2 * b * b + 6 * b + 4);
                let r1 = 18 * b + 37;
                let r3 = 6 * b + 25;
                r1 * r1 == rad || r3 * r3 == rad
            },
        },
    ]
}

pub struct CaseRegistry {
    cases: BTreeMap<CaseId, Box<dyn ParityCase>>,
}

impl CaseRegistry {
    pub fn standard() -> Self {
        let mut cases: BTreeMap<CaseId, Box<dyn ParityCase>> = BTreeMap::new();
        for c in standard_cases() {
            cases.insert(c.id, Box::new(c));
        }
        Self { cases }
    }

    pub fn register(&mut self, case: Box<dyn ParityCase>) {
        self.cases.insert(case.id(), case);
    }

    pub fn get(&self, id: CaseId) -> Result<&dyn ParityCase> {
        self.cases
            .get(&id)
            .map(|c| c.as_ref())
            .ok_or_else(|| Error::UnknownCase(id.to_string()))
    }

    pub fn ids(&self) -> Vec<CaseId> {
        self.cases.keys().copied().collect()
    }
}

pub fn registry() -> &'static CaseRegistry {
    static REGISTRY: OnceLock<CaseRegistry> = OnceLock::new();
    REGISTRY.get_or_init(CaseRegistry::standard)
}

const MAX_REPORTED_WITNESSES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImpossibilityCertificate {
    pub subject: String,
    pub equation: String,
    pub context: String,
    pub reason: String,
    pub variables: Vec<String>,
    pub verified_range: u64,
    pub scanned: u64,
    pub witness_count: u64,
    /// First few witnesses, if any; always empty for a sound argument.
    pub witnesses: Vec<Vec<String>>,
}

impl ImpossibilityCertificate {
    pub fn holds(&self) -> bool {
        self.witness_count == 0
    }
}

/// Scan every free variable of `case` over `[lower_bound, range_limit]`.
pub fn verify_parity_case(id: CaseId, range_limit: u64) -> Result<ImpossibilityCertificate> {
    if range_limit < 1 {
        return Err(Error::Parameter("range limit must be at least 1".into()));
    }
    scan_case(registry().get(id)?, range_limit)
}

/// Exhaustive scan of any [`ParityCase`] over `[lower_bound, range_limit]`.
pub fn scan_case(case: &dyn ParityCase, range_limit: u64) -> Result<ImpossibilityCertificate> {
    let id = case.id();
    let lo = case.lower_bound();
    let hi = range_limit as i128;
    let arity = case.variables().len();

    let (scanned, count, witnesses) = match arity {
        1 => {
            let hits: Vec<Vec<i128>> = (lo..=hi)
                .filter(|&a| case.is_witness(&[a]))
                .map(|a| vec![a])
                .collect();
            ((hi - lo + 1) as u64, hits.len() as u64, hits)
        }
        2 => {
            let per_row: Vec<(u64, Vec<Vec<i128>>)> = (lo..=hi)
                .into_par_iter()
                .map(|a| {
                    let mut hits = Vec::new();
                    let mut n = 0u64;
                    for b in lo..=hi {
                        if case.is_witness(&[a, b]) {
                            n += 1;
                            if hits.len() < MAX_REPORTED_WITNESSES {
                                hits.push(vec![a, b]);
                            }
                        }
                    }
                    (n, hits)
                })
                .collect();
            let side = (hi - lo + 1) as u64;
            let count = per_row.iter().map(|r| r.0).sum();
            let hits = per_row
                .into_iter()
                .flat_map(|r| r.1)
                .take(MAX_REPORTED_WITNESSES)
                .collect();
            (side * side, count, hits)
        }
        _ => {
            return Err(Error::Parameter(format!(
                "case {id} has unsupported arity {arity}"
            )))
        }
    };

    Ok(ImpossibilityCertificate {
        subject: id.to_string(),
        equation: case.equation().to_string(),
        context: case.context().to_string(),
        reason: case.reason().to_string(),
        variables: case.variables().iter().map(|s| s.to_string()).collect(),
        verified_range: range_limit,
        scanned,
        witness_count: count,
        witnesses: witnesses
            .into_iter()
            .take(MAX_REPORTED_WITNESSES)
            .map(|w| w.into_iter().map(|v| v.to_string()).collect())
            .collect(),
    })
}

/// No nondegenerate lattice triangle with a side of length `k` in {1, 2}
/// has all three side lengths integral, within the given radius.
pub fn nonexistence_k12(k: u64, radius: u64) -> Result<ImpossibilityCertificate> {
    if !(1..=2).contains(&k) {
        return Err(Error::Parameter(format!(
            "nonexistence scan covers k = 1, 2 (got {k})"
        )));
    }
    if radius < k + 1 {
        return Err(Error::Parameter(format!(
            "radius must be at least k + 1 = {}",
            k + 1
        )));
    }
    let report = search::brute_force_triangles(k, radius)?;
    let reason = if k == 1 {
        "a unit side forces the other two sides equal (strict triangle inequality), so the apex lies on the perpendicular bisector x = 1/2, off the lattice"
    } else {
        "k^2 = 4 is not a sum of two positive squares, so the side is axis-parallel; legs differing by 0 put the apex on x = 1 with h^2 + 1 = c^2, by 1 give 2a + 1 = 4b + 4"
    };
    Ok(ImpossibilityCertificate {
        subject: format!("nonexistence k={k}"),
        equation: format!("|PA|, |KA| in N with |PK| = {k}"),
        context: "lattice triangles anchored on the segment (0,0)-(k,0)".into(),
        reason: reason.into(),
        variables: vec!["x".into(), "y".into()],
        verified_range: radius,
        scanned: report.scanned.get("third_vertices").copied().unwrap_or(0),
        witness_count: report.witnesses.len() as u64,
        witnesses: report
            .witnesses
            .iter()
            .take(MAX_REPORTED_WITNESSES)
            .map(|w| w.vertices.iter().map(|p| p.to_string()).collect())
            .collect(),
    })
}

/// Integer triples `(u, v)` with `w = 1` and strict triangle inequalities
/// where `u != v`. Returns the number of counterexamples in `[1, limit]^2`.
pub fn unit_side_isosceles_counterexamples(limit: u64) -> u64 {
    (1..=limit)
        .into_par_iter()
        .map(|u| {
            (1..=limit)
                .filter(|&v| u < v + 1 && v < u + 1 && 1 < u + v && u != v)
                .count() as u64
        })
        .sum()
}
