//! Solutions of `x^2 - D*y^2 = N` for the parameter pairs the triangle
//! families need, and the Brahmagupta composition law.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{exact_sqrt, Integer};

/// `(D, N)` pairs with a solution stream.
pub const SUPPORTED: [(i64, i64); 4] = [(2, -1), (2, 1), (3, 1), (3, -3)];

pub fn is_supported(d: i64, n: i64) -> bool {
    SUPPORTED.contains(&(d, n))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PellSolution {
    #[serde(with = "crate::exactmath::decimal")]
    pub x: Integer,
    #[serde(with = "crate::exactmath::decimal")]
    pub y: Integer,
    #[serde(serialize_with = "crate::exactmath::display")]
    pub d: i64,
    #[serde(serialize_with = "crate::exactmath::display")]
    pub n: i64,
}

impl PellSolution {
    /// Checked constructor: requires `x, y > 0` and the defining identity.
    pub fn new(x: Integer, y: Integer, d: i64, n: i64) -> Result<Self> {
        if !x.is_positive() || !y.is_positive() {
            return Err(Error::DegenerateComposition { x, y });
        }
        if d <= 0 || exact_sqrt(&Integer::from(d)).is_some() {
            return Err(Error::Parameter(format!(
                "D = {d} must be a positive non-square"
            )));
        }
        if &x * &x - Integer::from(d) * &y * &y != Integer::from(n) {
            return Err(Error::Parameter(format!("{x}^2 - {d}*{y}^2 != {n}")));
        }
        Ok(Self { x, y, d, n })
    }

    pub fn satisfies_identity(&self) -> bool {
        &self.x * &self.x - Integer::from(self.d) * &self.y * &self.y == Integer::from(self.n)
    }
}

fn check_supported(d: i64, n: i64) -> Result<()> {
    if is_supported(d, n) {
        Ok(())
    } else {
        Err(Error::UnsupportedPell { d, n })
    }
}

/// The solution with least positive `x` (and `y > 0`).
pub fn fundamental_solution(d: i64, n: i64) -> Result<PellSolution> {
    check_supported(d, n)?;
    let big_d = Integer::from(d);
    let big_n = Integer::from(n);
    let mut x = Integer::one();
    loop {
        let rem = &x * &x - &big_n;
        if rem.is_positive() && (&rem % &big_d).is_zero() {
            if let Some(y) = exact_sqrt(&(&rem / &big_d)) {
                return PellSolution::new(x, y, d, n);
            }
        }
        x += 1;
    }
}

fn same_d(s: &PellSolution, u: &PellSolution) -> Result<()> {
    if s.d == u.d {
        Ok(())
    } else {
        Err(Error::MismatchedD(s.d, u.d))
    }
}

/// `(x_s x_u + D y_s y_u, x_s y_u + y_s x_u)`, solving `N = N_s * N_u`.
pub fn compose(s: &PellSolution, u: &PellSolution) -> Result<PellSolution> {
    same_d(s, u)?;
    let d = Integer::from(s.d);
    let x = &s.x * &u.x + &d * &s.y * &u.y;
    let y = &s.x * &u.y + &s.y * &u.x;
    PellSolution::new(x, y, s.d, s.n * u.n)
}

/// `(|x_s x_u - D y_s y_u|, |x_s y_u - y_s x_u|)`; fails when a component
/// vanishes.
pub fn compose_difference(s: &PellSolution, u: &PellSolution) -> Result<PellSolution> {
    same_d(s, u)?;
    let d = Integer::from(s.d);
    let x = (&s.x * &u.x - &d * &s.y * &u.y).abs();
    let y = (&s.x * &u.y - &s.y * &u.x).abs();
    if x.is_zero() || y.is_zero() {
        return Err(Error::DegenerateComposition { x, y });
    }
    PellSolution::new(x, y, s.d, s.n * u.n)
}

/// Lazy ascending stream: the fundamental solution of `N`, then repeated
/// composition with the fundamental unit of `x^2 - D*y^2 = 1`.
#[derive(Debug, Clone)]
pub struct PellStream {
    next: PellSolution,
    unit: PellSolution,
}

impl Iterator for PellStream {
    type Item = PellSolution;

    fn next(&mut self) -> Option<PellSolution> {
        let following =
            compose(&self.next, &self.unit).expect("unit composition stays on the curve");
        debug_assert!(following.satisfies_identity() && following.x > self.next.x);
        Some(std::mem::replace(&mut self.next, following))
    }
}

pub fn stream(d: i64, n: i64) -> Result<PellStream> {
    let first = fundamental_solution(d, n)?;
    let unit = fundamental_solution(d, 1)?;
    Ok(PellStream { next: first, unit })
}

pub fn generate(d: i64, n: i64, count: usize) -> Result<Vec<PellSolution>> {
    if count == 0 {
        return Err(Error::Parameter("count must be at least 1".into()));
    }
    Ok(stream(d, n)?.take(count).collect())
}
