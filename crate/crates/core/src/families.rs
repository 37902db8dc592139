//! Parametric families of integer-distance lattice triangles with one side
//! of length `k`.
//!
//! Every such triangle for `k = 3` and `k = 4` has its length-`k` side on a
//! lattice axis, and its apex sits at height `h` over the extension of that
//! side, a horizontal offset `b` beyond one endpoint. The remaining sides
//! are then fixed linear functions of `b`:
//!
//! | k | `h^2`           | near side | far side |
//! |---|-----------------|-----------|----------|
//! | 3 | `8(b+1)(b+2)`   | `3b+4`    | `3b+5`   |
//! | 4 | `3(b+1)(b+3)`   | `2b+3`    | `2b+5`   |
//!
//! `b` is *admissible* when `h^2` is a perfect square. Each family is a
//! [`TriangleFamily`] implementation; [`FamilyRegistry`] looks them up by `k`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{exact_sqrt, exact_sqrt_u128, rational, ExactRational, Integer};
use crate::geometry::LatticePoint;
use crate::pell::{self, PellSolution};

pub trait TriangleFamily: Send + Sync {
    fn k(&self) -> u64;

    /// Exact `h^2` as a function of the foot offset.
    fn height_squared(&self, b: &Integer) -> Integer;

    /// Side from the near endpoint of the base to the apex.
    fn side_short(&self, b: &Integer) -> Integer;

    /// Side from the far endpoint of the base to the apex.
    fn side_long(&self, b: &Integer) -> Integer;

    /// Cosine of the base angle at the far endpoint.
    fn cos_far(&self, b: &Integer) -> ExactRational;

    /// Cosine of the (obtuse) angle at the near endpoint.
    fn cos_near(&self, b: &Integer) -> ExactRational;

    /// `(D, N)` Pell streams whose solutions map onto admissible `b`.
    fn pell_sources(&self) -> &'static [(i64, i64)];

    /// Map a solution from one of [`pell_sources`](Self::pell_sources) to `b`.
    fn b_from_pell(&self, s: &PellSolution) -> Result<Integer>;

    /// `h^2` over machine words; `None` on overflow.
    fn height_squared_u128(&self, b: u64) -> Option<u128>;
}

pub struct KThree;
pub struct KFour;

impl TriangleFamily for KThree {
    fn k(&self) -> u64 {
        3
    }

    fn height_squared(&self, b: &Integer) -> Integer {
        8 * (b + 1) * (b + 2)
    }

    fn side_short(&self, b: &Integer) -> Integer {
        3 * b + 4
    }

    fn side_long(&self, b: &Integer) -> Integer {
        3 * b + 5
    }

    fn cos_far(&self, b: &Integer) -> ExactRational {
        rational(b + 3, 3 * b + 5).expect("3b+5 > 0")
    }

    fn cos_near(&self, b: &Integer) -> ExactRational {
        rational(-b.clone(), 3 * b + 4).expect("3b+4 > 0")
    }

    fn pell_sources(&self) -> &'static [(i64, i64)] {
        &[(2, -1), (2, 1)]
    }

    fn b_from_pell(&self, s: &PellSolution) -> Result<Integer> {
        // even b = 2p: p+1 = y^2, 2p+1 = x^2; odd b = 2p-1: p = y^2, 2p+1 = x^2
        match (s.d, s.n) {
            (2, -1) => Ok(2 * (&s.y * &s.y - 1)),
            (2, 1) => Ok(2 * &s.y * &s.y - 1),
            (d, n) => Err(Error::FamilyMismatch { k: 3, d, n }),
        }
    }

    fn height_squared_u128(&self, b: u64) -> Option<u128> {
        let b = b as u128;
        8u128.checked_mul(b + 1)?.checked_mul(b + 2)
    }
}

impl TriangleFamily for KFour {
    fn k(&self) -> u64 {
        4
    }

    fn height_squared(&self, b: &Integer) -> Integer {
        3 * (b + 1) * (b + 3)
    }

    fn side_short(&self, b: &Integer) -> Integer {
        2 * b + 3
    }

    fn side_long(&self, b: &Integer) -> Integer {
        2 * b + 5
    }

    fn cos_far(&self, b: &Integer) -> ExactRational {
        rational(b + 4, 2 * b + 5).expect("2b+5 > 0")
    }

    fn cos_near(&self, b: &Integer) -> ExactRational {
        rational(-b.clone(), 2 * b + 3).expect("2b+3 > 0")
    }

    fn pell_sources(&self) -> &'static [(i64, i64)] {
        &[(3, 1)]
    }

    fn b_from_pell(&self, s: &PellSolution) -> Result<Integer> {
        // t = b + 2, h = 3s, t^2 - 3s^2 = 1
        match (s.d, s.n) {
            (3, 1) => Ok(&s.x - 2),
            (d, n) => Err(Error::FamilyMismatch { k: 4, d, n }),
        }
    }

    fn height_squared_u128(&self, b: u64) -> Option<u128> {
        let b = b as u128;
        3u128.checked_mul(b + 1)?.checked_mul(b + 3)
    }
}

#[derive(Default)]
pub struct FamilyRegistry {
    families: BTreeMap<u64, Box<dyn TriangleFamily>>,
}

impl FamilyRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn standard() -> Self {
        let mut r = Self::new();
        r.register(Box::new(KThree));
        r.register(Box::new(KFour));
        r
    }

    pub fn register(&mut self, family: Box<dyn TriangleFamily>) {
        self.families.insert(family.k(), family);
    }

    pub fn get(&self, k: u64) -> Result<&dyn TriangleFamily> {
        self.families
            .get(&k)
            .map(|f| f.as_ref())
            .ok_or(Error::UnsupportedFamily(k))
    }

    pub fn ks(&self) -> Vec<u64> {
        self.families.keys().copied().collect()
    }
}

pub fn registry() -> &'static FamilyRegistry {
    static REGISTRY: OnceLock<FamilyRegistry> = OnceLock::new();
    REGISTRY.get_or_init(FamilyRegistry::standard)
}

pub fn family(k: u64) -> Result<&'static dyn TriangleFamily> {
    registry().get(k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub k: u64,
    #[serde(with = "crate::exactmath::decimal")]
    pub b: Integer,
    #[serde(with = "crate::exactmath::decimal")]
    pub h: Integer,
    #[serde(with = "crate::exactmath::decimal")]
    pub side_short: Integer,
    #[serde(with = "crate::exactmath::decimal")]
    pub side_long: Integer,
}

impl FamilyMember {
    /// Horizontal offset of the apex foot beyond the near endpoint.
    pub fn foot(&self) -> &Integer {
        &self.b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApexCosines {
    #[serde(with = "crate::exactmath::rational_str")]
    pub cos_at_far_vertex: ExactRational,
    #[serde(with = "crate::exactmath::rational_str")]
    pub cos_at_near_vertex: ExactRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Above,
    Below,
}

impl Side {
    pub fn sign(self) -> i64 {
        match self {
            Side::Above => 1,
            Side::Below => -1,
        }
    }
}

fn check_b(b: &Integer) -> Result<()> {
    if b.is_negative() {
        return Err(Error::Parameter(format!("b = {b} must be non-negative")));
    }
    Ok(())
}

/// Admissible `b <= limit`, generated from the Pell streams.
pub fn admissible_b_values(k: u64, limit: &Integer) -> Result<Vec<Integer>> {
    let fam = family(k)?;
    let mut out = Vec::new();
    for &(d, n) in fam.pell_sources() {
        for s in pell::stream(d, n)? {
            let b = fam.b_from_pell(&s)?;
            if &b > limit {
                break;
            }
            out.push(b);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Admissible `b <= limit` by testing every candidate's radicand for
/// squareness. Independent of the Pell route.
pub fn admissible_b_values_scan(k: u64, limit: u64) -> Result<Vec<u64>> {
    let fam = family(k)?;
    let mut out = Vec::new();
    for b in 0..=limit {
        let h2 = fam
            .height_squared_u128(b)
            .ok_or_else(|| Error::Parameter(format!("limit {limit} overflows the scan")))?;
        if exact_sqrt_u128(h2).is_some() {
            out.push(b);
        }
    }
    Ok(out)
}

pub fn is_admissible(k: u64, b: &Integer) -> Result<bool> {
    let fam = family(k)?;
    Ok(!b.is_negative() && exact_sqrt(&fam.height_squared(b)).is_some())
}

pub fn from_pell(k: u64, s: &PellSolution) -> Result<Integer> {
    let fam = family(k)?;
    let b = fam.b_from_pell(s)?;
    debug_assert!(exact_sqrt(&fam.height_squared(&b)).is_some());
    Ok(b)
}

pub fn member(k: u64, b: &Integer) -> Result<FamilyMember> {
    let fam = family(k)?;
    check_b(b)?;
    let radicand = fam.height_squared(b);
    let h = exact_sqrt(&radicand).ok_or_else(|| Error::Inadmissible {
        k,
        b: b.clone(),
        radicand,
    })?;
    Ok(FamilyMember {
        k,
        b: b.clone(),
        h,
        side_short: fam.side_short(b),
        side_long: fam.side_long(b),
    })
}

/// Lattice triangle: base from `base_start` along +x, apex over the
/// extension past the second endpoint.
pub fn realize(m: &FamilyMember, base_start: &LatticePoint, side: Side) -> [LatticePoint; 3] {
    let k = Integer::from(m.k);
    let near = base_start.offset(k.clone(), 0);
    let apex = base_start.offset(&k + &m.b, &m.h * side.sign());
    [base_start.clone(), near, apex]
}

pub fn apex_cosines(k: u64, b: &Integer) -> Result<ApexCosines> {
    let fam = family(k)?;
    check_b(b)?;
    Ok(ApexCosines {
        cos_at_far_vertex: fam.cos_far(b),
        cos_at_near_vertex: fam.cos_near(b),
    })
}

/// Stream of members in increasing `b`, unbounded.
pub fn members(k: u64) -> Result<impl Iterator<Item = FamilyMember>> {
    let fam = family(k)?;
    let mut streams: Vec<_> = fam
        .pell_sources()
        .iter()
        .map(|&(d, n)| pell::stream(d, n).map(|s| s.peekable()))
        .collect::<Result<_>>()?;
    Ok(std::iter::from_fn(move || {
        // merge by b, which is monotone in y within each stream
        let (idx, _) = streams
            .iter_mut()
            .enumerate()
            .filter_map(|(i, s)| {
                s.peek()
                    .and_then(|sol| fam.b_from_pell(sol).ok())
                    .map(|b| (i, b))
            })
            .min_by(|a, b| a.1.cmp(&b.1))?;
        let sol = streams[idx].next()?;
        let b = fam.b_from_pell(&sol).ok()?;
        member(k, &b).ok()
    }))
}
