//! Explicit integer-distance lattice triangles and rectangles with a side of
//! any length `k >= 3`.

use crate::error::{Error, Result};
use crate::geometry::LatticePoint;

fn check_k(k: u64) -> Result<()> {
    if k < 3 {
        return Err(Error::Domain(format!(
            "no integer-distance lattice triangle has a side of length {k}; need k >= 3"
        )));
    }
    Ok(())
}

/// Second leg of the Pythagorean triple with leg `k`: `(k^2 - 1)/2` for odd
/// `k`, `k^2/4 - 1` for even `k`.
pub fn partner_leg(k: u64) -> Result<u64> {
    check_k(k)?;
    let k2 = k
        .checked_mul(k)
        .ok_or_else(|| Error::Parameter(format!("k = {k} too large")))?;
    Ok(if k % 2 == 1 { (k2 - 1) / 2 } else { k2 / 4 - 1 })
}

/// Right triangle with legs `k` and [`partner_leg`] along the axes.
pub fn triangle_with_side(k: u64) -> Result<[LatticePoint; 3]> {
    let w = partner_leg(k)?;
    Ok([
        LatticePoint::origin(),
        LatticePoint::new(k, 0),
        LatticePoint::new(0, w),
    ])
}

/// Every `w > 0` with `k^2 + w^2` a square, ascending. From the factor pairs
/// `k^2 = u v`, `u < v`, `u = v (mod 2)`: `w = (v - u) / 2`.
pub fn rectangle_widths(k: u64) -> Vec<u64> {
    let k2 = (k as u128) * (k as u128);
    let mut out: Vec<u64> = (1..k as u128)
        .filter(|u| k2 % u == 0 && (k2 / u - u) % 2 == 0)
        .map(|u| ((k2 / u - u) / 2) as u64)
        .collect();
    out.sort_unstable();
    out
}

fn rectangle(k: u64, w: u64) -> [LatticePoint; 4] {
    [
        LatticePoint::origin(),
        LatticePoint::new(k, 0),
        LatticePoint::new(k, w),
        LatticePoint::new(0, w),
    ]
}

/// Axis-aligned `k x w` rectangles with integral diagonals: the narrowest
/// one when `limit` is `None`, otherwise all with `w <= limit`.
pub fn rectangle_with_side(k: u64, limit: Option<u64>) -> Result<Vec<[LatticePoint; 4]>> {
    check_k(k)?;
    let widths = rectangle_widths(k);
    Ok(match limit {
        None => widths
            .first()
            .map(|&w| vec![rectangle(k, w)])
            .unwrap_or_default(),
        Some(limit) => widths
            .into_iter()
            .take_while(|&w| w <= limit)
            .map(|w| rectangle(k, w))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Integer;
    use crate::geometry::{certify, Mode};

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    fn sides(pts: &[LatticePoint]) -> Vec<Integer> {
        certify(pts, None, Mode::Polygon)
            .unwrap()
            .distance_multiset()
            .unwrap()
    }

    #[test]
    fn triangles() {
        assert_eq!(triangle_with_side(5).unwrap(), [p(0, 0), p(5, 0), p(0, 12)]);
        assert_eq!(
            sides(&triangle_with_side(5).unwrap()),
            vec![5.into(), 12.into(), 13.into()]
        );
        assert_eq!(triangle_with_side(4).unwrap(), [p(0, 0), p(4, 0), p(0, 3)]);
        assert_eq!(triangle_with_side(3).unwrap(), [p(0, 0), p(3, 0), p(0, 4)]);
        assert!(matches!(triangle_with_side(2), Err(Error::Domain(_))));
        assert!(triangle_with_side(1).is_err());
    }

    #[test]
    fn rectangles() {
        assert_eq!(
            rectangle_with_side(3, None).unwrap(),
            vec![[p(0, 0), p(3, 0), p(3, 4), p(0, 4)]]
        );
        let r = rectangle_with_side(7, None).unwrap();
        assert_eq!(r[0][2], p(7, 24));
        let ws: Vec<_> = rectangle_with_side(12, Some(40))
            .unwrap()
            .iter()
            .map(|r| r[2].y.clone())
            .collect();
        assert_eq!(ws, vec![5.into(), 9.into(), 16.into(), 35.into()]);
        assert!(rectangle_with_side(7, Some(10)).unwrap().is_empty());
        assert!(rectangle_with_side(2, None).is_err());
    }

    #[test]
    fn widths_match_brute_force() {
        for k in 3u64..200 {
            let brute: Vec<u64> = (1..=k * k)
                .filter(|w| {
                    let s = k * k + w * w;
                    let r = (s as f64).sqrt().round() as u64;
                    r * r == s
                })
                .collect();
            assert_eq!(rectangle_widths(k), brute, "k={k}");
        }
    }

    #[test]
    fn constructive_leg_is_a_width() {
        for k in 3u64..300 {
            assert!(rectangle_widths(k).contains(&partner_leg(k).unwrap()));
        }
        // nondegenerate
        assert!((4..1000).step_by(2).all(|k| partner_leg(k).unwrap() >= 3));
        assert!((3..1000).step_by(2).all(|k| partner_leg(k).unwrap() >= 4));
    }
}
