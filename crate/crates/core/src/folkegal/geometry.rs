//! The two line solves used by the search and the iteration bound.

use crate::error::{GameError, Result};
use crate::geometry::{line_side, mix_points, PayoffPoint, Side, DEFAULT_TOL};

const DEGENERATE: f64 = 1e-12;

/// Weight `w` with `sigma_w(l) == sigma_w(r)`, clamped to `[0, 1]`.
/// Returns 0.5 when the two points make the equation degenerate.
pub fn balance(l: PayoffPoint, r: PayoffPoint) -> f64 {
    let denom = (l.p1 - r.p1) + (r.p2 - l.p2);
    if denom.abs() <= DEGENERATE {
        return 0.5;
    }
    ((r.p2 - l.p2) / denom).clamp(0.0, 1.0)
}

/// Mixing weight on `l` that puts `lambda * l + (1 - lambda) * r` on the
/// egalitarian line through `v`.
pub fn intersect(l: PayoffPoint, r: PayoffPoint, v: PayoffPoint) -> Result<(f64, PayoffPoint)> {
    if line_side(l, v, DEFAULT_TOL) == Side::Right || line_side(r, v, DEFAULT_TOL) == Side::Left {
        return Err(GameError::SameSide);
    }
    let dl = l.advantage(v).imbalance();
    let dr = r.advantage(v).imbalance();
    let lambda = if dr != dl { (dr / (dr - dl)).clamp(0.0, 1.0) } else { 0.5 };
    Ok((lambda, mix_points(l, r, lambda)?))
}

/// Number of search iterations after which the active triangle is small
/// enough to guarantee `eps` accuracy: `ceil(log2(2 nu0 / eps^2))`, at least 0.
pub fn iteration_bound(nu0: f64, eps: f64) -> Result<usize> {
    if !(eps > 0.0) || !(nu0 >= 0.0) || !nu0.is_finite() {
        return Err(GameError::InvalidArgument(format!(
            "iteration bound needs nu0 >= 0 and eps > 0 (got {nu0}, {eps})"
        )));
    }
    if nu0 == 0.0 {
        return Ok(0);
    }
    let t = (2.0 * nu0 / (eps * eps)).log2().ceil();
    Ok(if t > 0.0 { t as usize } else { 0 })
}

/// Area of the square of all attainable payoff pairs, halved.
pub fn default_nu0(u_max: f64, gamma: f64) -> f64 {
    let side = 2.0 * u_max / (1.0 - gamma);
    side * side / 2.0
}

/// Corner where the supporting lines `sigma_wl(x) = sigma_wl(l)` and
/// `sigma_wr(x) = sigma_wr(r)` cross, or `None` when they are parallel.
pub(crate) fn apex(l: PayoffPoint, wl: f64, r: PayoffPoint, wr: f64) -> Option<PayoffPoint> {
    let (a1, b1, c1) = (wl, 1.0 - wl, l.sigma(wl));
    let (a2, b2, c2) = (wr, 1.0 - wr, r.sigma(wr));
    let det = a1 * b2 - a2 * b1;
    if det.abs() <= DEGENERATE {
        return None;
    }
    Some(PayoffPoint::new((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(a: f64, b: f64) -> PayoffPoint {
        PayoffPoint::new(a, b)
    }

    #[test]
    fn balance_examples() {
        assert_eq!(balance(p(0.0, 2.0), p(2.0, 0.0)), 0.5);
        let w = balance(p(1.0, 4.0), p(3.0, 0.0));
        assert!((w - 2.0 / 3.0).abs() < 1e-15);
        assert!((p(1.0, 4.0).sigma(w) - 2.0).abs() < 1e-12);
        assert!((p(3.0, 0.0).sigma(w) - 2.0).abs() < 1e-12);
        assert_eq!(balance(p(1.0, 1.0), p(1.0, 1.0)), 0.5);
    }

    #[test]
    fn intersect_examples() {
        let o = p(0.0, 0.0);
        let (l, x) = intersect(p(0.0, 2.0), p(2.0, 0.0), o).unwrap();
        assert_eq!((l, x), (0.5, p(1.0, 1.0)));
        let (l, x) = intersect(p(1.0, 3.0), p(4.0, 0.0), o).unwrap();
        assert!((l - 2.0 / 3.0).abs() < 1e-15);
        assert!((x.p1 - 2.0).abs() < 1e-12 && (x.p2 - 2.0).abs() < 1e-12);
        let v = p(43.65, 43.65);
        let (l, x) = intersect(p(83.14, 84.05), p(84.05, 83.14), v).unwrap();
        assert!((l - 0.5).abs() < 1e-12);
        assert!((x.p1 - 83.595).abs() < 1e-9);
    }

    #[test]
    fn intersect_rejects_same_side() {
        let o = p(0.0, 0.0);
        assert_eq!(intersect(p(3.0, 1.0), p(4.0, 0.0), o), Err(GameError::SameSide));
        assert_eq!(intersect(p(0.0, 2.0), p(1.0, 3.0), o), Err(GameError::SameSide));
    }

    #[test]
    fn iteration_bound_examples() {
        assert_eq!(iteration_bound(8.0, 0.5).unwrap(), 6);
        assert_eq!(iteration_bound(0.0, 0.5).unwrap(), 0);
        let nu0 = default_nu0(100.0, 0.95);
        assert!((nu0 - 8.0e6).abs() < 1e-6);
        assert_eq!(iteration_bound(nu0, 0.1).unwrap(), 31);
        assert!(iteration_bound(1.0, 0.0).is_err());
    }

    #[test]
    fn apex_of_axis_lines() {
        let a = apex(p(0.0, 5.0), 0.0, p(7.0, 1.0), 1.0).unwrap();
        assert_eq!(a, p(7.0, 5.0));
        assert!(apex(p(0.0, 5.0), 0.3, p(7.0, 1.0), 0.3).is_none());
    }

    proptest! {
        #[test]
        fn balance_equalizes(l1 in -50.0..50.0f64, l2 in -50.0..50.0f64,
                             r1 in -50.0..50.0f64, r2 in -50.0..50.0f64) {
            // L upper-left of R, as in the search
            let (l, r) = (p(l1.min(r1), l2.max(r2)), p(l1.max(r1), l2.min(r2)));
            prop_assume!((l.p1 - r.p1).abs() > 1e-6 && (l.p2 - r.p2).abs() > 1e-6);
            let w = balance(l, r);
            prop_assert!((0.0..=1.0).contains(&w));
            prop_assert!((l.sigma(w) - r.sigma(w)).abs() < 1e-9);
        }

        #[test]
        fn intersect_lands_on_line(dl in -50.0..0.0f64, dr in 0.0..50.0f64,
                                   s1 in -50.0..50.0f64, s2 in -50.0..50.0f64,
                                   v1 in -20.0..20.0f64, v2 in -20.0..20.0f64) {
            let v = p(v1, v2);
            let l = p(v1 + s1 + dl, v2 + s1);
            let r = p(v1 + s2 + dr, v2 + s2);
            let (lambda, x) = intersect(l, r, v).unwrap();
            prop_assert!((0.0..=1.0).contains(&lambda));
            prop_assert!(x.advantage(v).imbalance().abs() < 1e-9);
        }
    }
}
