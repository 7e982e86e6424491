//! Golden-section search for the maximum of a unimodal function.

/// `(sqrt(5) − 1) / 2`
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Maximizes `f` on `[lo, hi]`, stopping once the bracket is narrower than
/// `tol`. Returns the abscissa of the best point seen.
///
/// `f` must be unimodal on the interval; otherwise a local maximum is
/// returned.
pub fn golden_section_max<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    debug_assert!(lo <= hi && tol > 0.0);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // each step shrinks the bracket by INV_PHI; 200 steps reach below 1e-40
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        x1
    } else {
        x2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola() {
        let x = golden_section_max(|x| -(x - 0.2) * (x - 0.2), -1.0, 1.0, 1e-9);
        assert!((x - 0.2).abs() < 1e-8);
    }

    #[test]
    fn maximum_at_boundary() {
        let x = golden_section_max(|x| x, 0.0, 3.0, 1e-9);
        assert!((x - 3.0).abs() < 1e-8);
    }

    #[test]
    fn log_scale_peak() {
        // x·exp(−x/1e6) peaks at 1e6
        let x = golden_section_max(|u: f64| u.exp() * (-u.exp() / 1e6).exp(), 0.0, 30.0, 1e-8);
        assert!((x.exp() / 1e6 - 1.0).abs() < 1e-6);
    }
}
