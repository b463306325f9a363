//! Union bound `C(N, n) (1 - p)^m` in log space.
//!
//! `N` is a real number (falling-factorial extension of the binomial), so
//! what-if queries with astronomically large `N` are expressed through
//! `ln N` and never overflow.

use num_traits::Float;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnionBound<T> {
    /// Natural log of `C(N, n) (1 - p)^m`.
    pub log_value: T,
    /// `value < 1`: some coloring has no independent `n`-set.
    pub feasible: bool,
}

impl<T: Float> UnionBound<T> {
    pub fn value(&self) -> T {
        self.log_value.exp()
    }
}

fn cast<T: Float>(x: f64) -> T {
    T::from(x).expect("finite constant")
}

/// `ln C(N, n)` with `N = e^ln_n_big`, valid for `N >= n`.
pub fn log_binomial_ln<T: Float>(ln_big: T, n: u64) -> T {
    let mut acc = T::zero();
    let inv = (-ln_big).exp();
    for i in 0..n {
        let it: T = cast(i as f64);
        acc = acc + ln_big + (-(it * inv)).ln_1p() - cast::<T>(i as f64 + 1.0).ln();
    }
    acc
}

fn check_p<T: Float>(p: T) -> Result<()> {
    if !(p > T::zero() && p < T::one()) {
        return Err(Error::Domain(format!(
            "edge probability must lie strictly between 0 and 1, got {}",
            p.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(())
}

/// `C(N, n) (1 - p)^m` for `N >= n`.
pub fn union_bound<T: Float>(n: u64, big_n: T, p: T, m: u64) -> Result<UnionBound<T>> {
    check_p(p)?;
    if big_n.is_nan() || big_n < cast(n as f64) {
        return Err(Error::Domain(format!("N must be at least n = {n}")));
    }
    if big_n == cast(n as f64) {
        let log_value = cast::<T>(m as f64) * (-p).ln_1p();
        return Ok(UnionBound {
            log_value,
            feasible: log_value < T::zero(),
        });
    }
    union_bound_ln(n, big_n.ln(), p, m)
}

/// As [`union_bound`] but with `N` given as `ln N`.
pub fn union_bound_ln<T: Float>(n: u64, ln_big: T, p: T, m: u64) -> Result<UnionBound<T>> {
    check_p(p)?;
    let log_value = log_binomial_ln(ln_big, n) + cast::<T>(m as f64) * (-p).ln_1p();
    Ok(UnionBound {
        log_value,
        feasible: log_value < T::zero(),
    })
}

/// Largest `log2 N` (real) for which the bound stays below 1, or `None` when
/// even `N = n` is infeasible.
pub fn max_feasible_log2_n<T: Float>(n: u64, p: T, m: u64) -> Result<Option<T>> {
    check_p(p)?;
    let ln_min: T = cast::<T>(n.max(1) as f64).ln();
    let f = |l: T| union_bound_ln(n, l, p, m).map(|b| b.log_value);
    if !union_bound(n, cast::<T>(n.max(1) as f64), p, m)?.feasible {
        return Ok(None);
    }
    let mut lo = ln_min;
    let mut step = T::one();
    let mut hi = lo + step;
    while f(hi)? < T::zero() {
        lo = hi;
        step = step + step;
        hi = hi + step;
        if !hi.is_finite() {
            return Ok(Some(T::infinity()));
        }
    }
    for _ in 0..200 {
        let mid = (lo + hi) / cast(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(lo / cast::<T>(2.0).ln()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_binomial_matches_integers() {
        for (n, r, c) in [(12u64, 5u64, 792.0f64), (10, 0, 1.0), (30, 15, 155117520.0), (7, 7, 1.0)] {
            let got = log_binomial_ln((n as f64).ln(), r);
            assert!((got - c.ln()).abs() < 1e-9, "C({n},{r})");
        }
    }

    #[test]
    fn p_near_one_drives_bound_to_zero() {
        let b = union_bound(12, 12.0f64, 1.0 - 1e-12, 3).unwrap();
        assert!(b.value() < 1e-30);
        assert!(b.feasible);
    }

    #[test]
    fn no_blocks_means_infeasible() {
        let b = union_bound(5, 9.0f64, 0.3, 0).unwrap();
        assert!((b.value() - 126.0).abs() < 1e-9);
        assert!(!b.feasible);
        assert_eq!(max_feasible_log2_n(5, 0.3f64, 0).unwrap(), None);
    }

    #[test]
    fn domain_errors() {
        assert!(union_bound(5, 9.0f64, 0.0, 1).is_err());
        assert!(union_bound(5, 9.0f64, 1.0, 1).is_err());
        assert!(union_bound(5, 4.0f64, 0.5, 1).is_err());
    }

    #[test]
    fn inversion_brackets_the_threshold() {
        let (n, p, m) = (10u64, 0.2f64, 40u64);
        let x = max_feasible_log2_n(n, p, m).unwrap().unwrap();
        let below = union_bound_ln(n, (x - 1e-6) * 2f64.ln(), p, m).unwrap();
        let above = union_bound_ln(n, (x + 1e-6) * 2f64.ln(), p, m).unwrap();
        assert!(below.feasible && !above.feasible);
    }

    #[test]
    fn huge_n_stays_finite() {
        let b = union_bound_ln(50, 1.0e6f64, 0.01, 10).unwrap();
        assert!(b.log_value.is_finite() && !b.feasible);
        let x = max_feasible_log2_n(8u64, 0.3f64, 1_000_000).unwrap().unwrap();
        assert!(x.is_finite() && x > 100.0);
    }

    #[test]
    fn works_in_f32() {
        let b = union_bound(12u64, 40.0f32, 0.1, 30).unwrap();
        let d = union_bound(12u64, 40.0f64, 0.1, 30).unwrap();
        assert!((b.log_value as f64 - d.log_value).abs() < 1e-3);
    }
}
