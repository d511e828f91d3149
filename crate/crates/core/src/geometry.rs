//! Payoff-space geometry: points, advantages, the egalitarian line.

use serde::{Deserialize, Serialize};

use crate::error::{GameError, Result};

/// Default tolerance for the geometry predicates.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A pair of expected discounted returns, one per player.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PayoffPoint {
    pub p1: f64,
    pub p2: f64,
}

impl PayoffPoint {
    pub const fn new(p1: f64, p2: f64) -> Self {
        Self { p1, p2 }
    }

    pub fn get(&self, player: crate::Player) -> f64 {
        match player {
            crate::Player::One => self.p1,
            crate::Player::Two => self.p2,
        }
    }

    /// Weighted value `w * p1 + (1 - w) * p2`.
    pub fn sigma(&self, w: f64) -> f64 {
        w * self.p1 + (1.0 - w) * self.p2
    }

    /// Translates this point into advantage coordinates relative to `v`.
    pub fn advantage(&self, v: PayoffPoint) -> AdvantagePoint {
        AdvantagePoint {
            a1: self.p1 - v.p1,
            a2: self.p2 - v.p2,
        }
    }

    pub fn distance(&self, other: PayoffPoint) -> f64 {
        (self.p1 - other.p1).hypot(self.p2 - other.p2)
    }

    pub fn is_finite(&self) -> bool {
        self.p1.is_finite() && self.p2.is_finite()
    }
}

impl std::ops::Add for PayoffPoint {
    type Output = PayoffPoint;
    fn add(self, rhs: Self) -> Self {
        PayoffPoint::new(self.p1 + rhs.p1, self.p2 + rhs.p2)
    }
}

impl std::ops::Sub for PayoffPoint {
    type Output = PayoffPoint;
    fn sub(self, rhs: Self) -> Self {
        PayoffPoint::new(self.p1 - rhs.p1, self.p2 - rhs.p2)
    }
}

impl std::ops::Mul<f64> for PayoffPoint {
    type Output = PayoffPoint;
    fn mul(self, k: f64) -> Self {
        PayoffPoint::new(self.p1 * k, self.p2 * k)
    }
}

impl std::fmt::Display for PayoffPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:.2}, {:.2})", self.p1, self.p2)
    }
}

/// Payoff minus disagreement value, per player.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdvantagePoint {
    pub a1: f64,
    pub a2: f64,
}

impl AdvantagePoint {
    /// Signed distance along the anti-diagonal: positive when player 1 is ahead.
    pub fn imbalance(&self) -> f64 {
        self.a1 - self.a2
    }

    pub fn min(&self) -> f64 {
        self.a1.min(self.a2)
    }
}

/// Position of a payoff relative to the egalitarian line through `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    On,
}

/// Egalitarian value: the smaller of the two advantages over `v`.
pub fn egal_value(x: PayoffPoint, v: PayoffPoint) -> f64 {
    x.advantage(v).min()
}

/// Which side of the egalitarian line `x` lies on. Right means player 1's
/// advantage exceeds player 2's by more than `tol`.
pub fn line_side(x: PayoffPoint, v: PayoffPoint, tol: f64) -> Side {
    let d = x.advantage(v).imbalance();
    if d.abs() <= tol {
        Side::On
    } else if d > tol {
        Side::Right
    } else {
        Side::Left
    }
}

/// Convex combination `lambda * l + (1 - lambda) * r`.
pub fn mix_points(l: PayoffPoint, r: PayoffPoint, lambda: f64) -> Result<PayoffPoint> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(GameError::InvalidArgument(format!(
            "mixing weight {lambda} outside [0, 1]"
        )));
    }
    Ok(PayoffPoint::new(
        lambda * l.p1 + (1.0 - lambda) * r.p1,
        lambda * l.p2 + (1.0 - lambda) * r.p2,
    ))
}

/// Area of the triangle spanned by three payoff points.
pub fn triangle_area(a: PayoffPoint, b: PayoffPoint, c: PayoffPoint) -> f64 {
    0.5 * ((b.p1 - a.p1) * (c.p2 - a.p2) - (c.p1 - a.p1) * (b.p2 - a.p2)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(a: f64, b: f64) -> PayoffPoint {
        PayoffPoint::new(a, b)
    }

    #[test]
    fn egal_value_examples() {
        assert_eq!(egal_value(p(5.0, 4.0), p(2.0, 1.0)), 3.0);
        assert_eq!(egal_value(p(3.0, 7.0), p(1.0, 2.0)), 2.0);
        assert_eq!(egal_value(p(1.5, -2.0), p(1.5, -2.0)), 0.0);
    }

    #[test]
    fn line_side_examples() {
        let v = p(1.0, 1.0);
        assert_eq!(line_side(p(3.0, 3.0), v, 1e-9), Side::On);
        assert_eq!(line_side(p(6.0, 2.0), v, 1e-9), Side::Right);
        assert_eq!(line_side(p(2.0, 6.0), v, 1e-9), Side::Left);
        assert_eq!(line_side(p(3.0, 3.0 + 1e-3), v, 1e-2), Side::On);
    }

    #[test]
    fn mix_points_examples() {
        let l = p(0.0, 2.0);
        let r = p(2.0, 0.0);
        assert_eq!(mix_points(l, r, 1.0).unwrap(), l);
        assert_eq!(mix_points(l, r, 0.0).unwrap(), r);
        assert_eq!(mix_points(l, r, 0.5).unwrap(), p(1.0, 1.0));
        let m = mix_points(p(79.6, 77.7), p(77.7, 79.6), 0.5).unwrap();
        assert!((m.p1 - 78.65).abs() < 1e-12 && (m.p2 - 78.65).abs() < 1e-12);
        assert!((m.p1 - 78.7).abs() < 0.1);
        assert!(mix_points(l, r, 1.5).is_err());
        assert!(mix_points(l, r, -0.1).is_err());
    }

    fn coord() -> impl Strategy<Value = f64> {
        -100.0..100.0f64
    }

    proptest! {
        #[test]
        fn egal_value_threshold(x1 in coord(), x2 in coord(), v1 in coord(), v2 in coord(), c in coord()) {
            let e = egal_value(p(x1, x2), p(v1, v2));
            prop_assert_eq!(e >= c, (x1 - v1) >= c && (x2 - v2) >= c);
        }

        #[test]
        fn egal_value_concave_along_mixes(
            l1 in coord(), l2 in coord(), r1 in coord(), r2 in coord(),
            v1 in coord(), v2 in coord(), lambda in 0.0..=1.0f64,
        ) {
            let (l, r, v) = (p(l1, l2), p(r1, r2), p(v1, v2));
            let m = mix_points(l, r, lambda).unwrap();
            let lhs = egal_value(m, v);
            let rhs = lambda * egal_value(l, v) + (1.0 - lambda) * egal_value(r, v);
            prop_assert!(lhs >= rhs - 1e-9);
        }

        #[test]
        fn line_side_translation_invariant(
            x1 in coord(), x2 in coord(), v1 in coord(), v2 in coord(),
            c1 in -1e3..1e3f64, c2 in -1e3..1e3f64,
        ) {
            // offsets are exact dyadic multiples to keep the float comparison honest
            let c1 = (c1 * 8.0).round() / 8.0;
            let c2 = (c2 * 8.0).round() / 8.0;
            let x1 = (x1 * 8.0).round() / 8.0;
            let x2 = (x2 * 8.0).round() / 8.0;
            let v1 = (v1 * 8.0).round() / 8.0;
            let v2 = (v2 * 8.0).round() / 8.0;
            let c = p(c1, c2);
            prop_assert_eq!(
                line_side(p(x1, x2), p(v1, v2), 1e-9),
                line_side(p(x1, x2) + c, p(v1, v2) + c, 1e-9)
            );
        }
    }
}
