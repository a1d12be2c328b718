//! Derivative-free scalar solvers used on the signed steering curves.

/// Result of a bracketing root search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    pub root: f64,
    /// `f(root)`.
    pub residual: f64,
    /// Width of the final bracket.
    pub bracket_width: f64,
    pub iterations: usize,
}

/// Bisection on `[lo, hi]`. Returns `None` unless `f(lo)` and `f(hi)` have
/// strictly opposite signs. Stops once `|f(mid)| < ftol`, the bracket can no
/// longer be split, or after `max_iter` halvings.
pub fn bisect<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    ftol: f64,
    max_iter: usize,
) -> Option<Bisection> {
    let (mut lo, mut hi) = (lo, hi);
    let (f_lo, f_hi) = (f(lo), f(hi));
    if !(f_lo * f_hi < 0.0) {
        return None;
    }
    let lo_positive = f_lo > 0.0;
    let mut mid = 0.5 * (lo + hi);
    let mut f_mid = f(mid);
    let mut iterations = 1;
    while f_mid.abs() >= ftol && iterations < max_iter {
        if (f_mid > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
        let next = 0.5 * (lo + hi);
        if next == lo || next == hi {
            break;
        }
        mid = next;
        f_mid = f(mid);
        iterations += 1;
    }
    Some(Bisection {
        root: mid,
        residual: f_mid,
        bracket_width: hi - lo,
        iterations,
    })
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
/// Returns `(argmax, max)`.
pub fn golden_section_max<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    xtol: f64,
    max_iter: usize,
) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..max_iter {
        if b - a <= xtol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    // best of the interior probes and the final midpoint
    let mid = 0.5 * (a + b);
    [(c, fc), (d, fd), (mid, f(mid))]
        .into_iter()
        .fold((mid, f64::NEG_INFINITY), |best, cand| {
            if cand.1 > best.1 {
                cand
            } else {
                best
            }
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_sqrt_two() {
        let b = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14, 200).unwrap();
        assert!((b.root - 2f64.sqrt()).abs() < 1e-14);
        assert!(b.residual.abs() < 1e-14 || b.bracket_width < 1e-15);
    }

    #[test]
    fn bisect_decreasing_function() {
        let b = bisect(|x| 1.0 - x, 0.0, 3.0, 1e-13, 200).unwrap();
        assert!((b.root - 1.0).abs() < 1e-13);
    }

    #[test]
    fn bisect_without_sign_change() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 200).is_none());
        // a zero endpoint is not a sign change
        assert!(bisect(|x| x, 0.0, 1.0, 1e-12, 200).is_none());
    }

    #[test]
    fn bisect_respects_iteration_cap() {
        let b = bisect(|x| x - 0.3, 0.0, 1.0, 0.0, 5).unwrap();
        assert_eq!(b.iterations, 5);
    }

    #[test]
    fn golden_smooth_and_kinked() {
        let (x, fx) = golden_section_max(|x| -(x - 0.7).powi(2), 0.0, 3.0, 1e-10, 500);
        assert!((x - 0.7).abs() < 1e-5);
        assert!(fx <= 0.0);
        let (x, _) = golden_section_max(|x| -(x - 1.234567).abs(), 0.0, 3.0, 1e-12, 500);
        assert!((x - 1.234567).abs() < 1e-11);
    }
}
