//! Shared numerical routines: bracketed root finding, real cubic roots,
//! a small Levenberg–Marquardt fitter, and ordinary least squares.

use nalgebra::{DMatrix, DVector};

/// Maximum iterations for the bracketed root finder.
pub const ROOT_MAX_ITER: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub enum RootError {
    /// The supplied bracket does not straddle a sign change.
    NoSignChange,
    /// The iteration converged onto a pole rather than a zero.
    ConvergedToPole,
}

impl std::fmt::Display for RootError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootError::NoSignChange => write!(f, "no sign change on bracket"),
            RootError::ConvergedToPole => write!(f, "bracket converged onto a pole"),
        }
    }
}

impl std::error::Error for RootError {}

/// Bracketed bisection–secant hybrid.
///
/// Keeps a sign-changing bracket at every step; a secant trial point is
/// accepted when it falls safely inside the bracket, otherwise the step
/// falls back to bisection. Converges to `rel_tol` on the abscissa.
///
/// Rational functions can change sign across a pole as well as a zero; the
/// caller gets `ConvergedToPole` when the residual at the converged point
/// is larger than at the original bracket edges.
pub fn find_root_bracketed<F>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<f64, RootError>
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = if a < b { (a, b) } else { (b, a) };
    let mut flo = f(lo);
    let mut fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return Err(RootError::NoSignChange);
    }
    let edge_scale = flo.abs().max(fhi.abs());

    for _ in 0..ROOT_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= rel_tol * mid.abs().max(f64::MIN_POSITIVE) {
            let fm = f(mid);
            // A genuine root shrinks the residual; a pole inflates it.
            if fm.abs() > edge_scale || !fm.is_finite() {
                return Err(RootError::ConvergedToPole);
            }
            return Ok(mid);
        }

        // Secant trial from the current bracket endpoints.
        let secant = hi - fhi * (hi - lo) / (fhi - flo);
        let margin = 0.01 * (hi - lo);
        let x = if secant.is_finite() && secant > lo + margin && secant < hi - margin {
            secant
        } else {
            mid
        };
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if !fx.is_finite() {
            return Err(RootError::ConvergedToPole);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Real roots of a₃x³ + a₂x² + a₁x + a₀ = 0, ascending, deduplicated.
///
/// Degenerate leading coefficients reduce the degree. Roots are polished
/// with a few Newton steps to recover precision lost in the closed form.
pub fn cubic_real_roots(a3: f64, a2: f64, a1: f64, a0: f64) -> Vec<f64> {
    let eval = |x: f64| ((a3 * x + a2) * x + a1) * x + a0;
    let deriv = |x: f64| (3.0 * a3 * x + 2.0 * a2) * x + a1;

    let scale = a3.abs().max(a2.abs()).max(a1.abs()).max(a0.abs());
    if scale == 0.0 {
        return vec![];
    }

    let mut roots = if a3.abs() < 1e-14 * scale {
        quadratic_real_roots(a2, a1, a0)
    } else {
        // Depressed cubic t³ + pt + q with x = t − a2/(3a3).
        let b = a2 / a3;
        let c = a1 / a3;
        let d = a0 / a3;
        let p = c - b * b / 3.0;
        let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
        let shift = -b / 3.0;
        let disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);
        if disc > 0.0 {
            // One real root (Cardano).
            let sq = disc.sqrt();
            let u = (-q / 2.0 + sq).cbrt();
            let v = (-q / 2.0 - sq).cbrt();
            vec![u + v + shift]
        } else if p == 0.0 && q == 0.0 {
            vec![shift]
        } else {
            // Three real roots (trigonometric form).
            let m = 2.0 * (-p / 3.0).sqrt();
            let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
            let theta = arg.acos() / 3.0;
            (0..3)
                .map(|k| {
                    m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() + shift
                })
                .collect()
        }
    };

    // Newton polish.
    for r in roots.iter_mut() {
        for _ in 0..4 {
            let d = deriv(*r);
            if d.abs() < f64::MIN_POSITIVE {
                break;
            }
            let step = eval(*r) / d;
            if !step.is_finite() {
                break;
            }
            *r -= step;
        }
    }

    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-9 * x.abs().max(y.abs()).max(1e-300));
    roots
}

fn quadratic_real_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if a.abs() < 1e-14 * scale {
        if b == 0.0 {
            return vec![];
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    let sq = disc.sqrt();
    // Numerically stable split.
    let q = -0.5 * (b + b.signum() * sq);
    if q == 0.0 {
        return vec![0.0];
    }
    let mut r = vec![q / a, c / q];
    r.sort_by(|x, y| x.partial_cmp(y).unwrap());
    r
}

/// Ordinary least squares y = slope·x + intercept.
///
/// Returns `(slope, intercept, r_squared)`. R² is defined as 1 − SSR/SST
/// and reported as 1 when the data has no variance around its mean.
pub fn ols(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    assert_eq!(x.len(), y.len(), "ols: mismatched lengths");
    assert!(x.len() >= 2, "ols: need at least two points");
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
        syy += (yi - my) * (yi - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr = syy - slope * sxy;
    let r2 = if syy > 0.0 { 1.0 - (ssr / syy).max(0.0) } else { 1.0 };
    (slope, intercept, r2)
}

/// Linear interpolation of tabulated `(xs, ys)` at `x`; xs strictly increasing.
/// Out-of-range queries clamp to the end values.
pub fn interp_linear(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    match xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
        Ok(i) => ys[i],
        Err(0) => ys[0],
        Err(i) if i >= xs.len() => ys[xs.len() - 1],
        Err(i) => {
            let t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
            ys[i - 1] + t * (ys[i] - ys[i - 1])
        }
    }
}

/// Result of a Levenberg–Marquardt fit.
#[derive(Debug, Clone)]
pub struct LmResult {
    pub params: Vec<f64>,
    /// RMS of the residual vector at the solution.
    pub rms: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// Dense Levenberg–Marquardt with a forward-difference Jacobian.
///
/// `residuals(p, out)` writes the residual vector for parameters `p`.
/// Suitable for the small (≤ 10 parameter) fits used in this crate.
pub fn lm_fit<F>(mut residuals: F, p0: &[f64], n_resid: usize, max_iter: usize) -> LmResult
where
    F: FnMut(&[f64], &mut [f64]),
{
    let np = p0.len();
    let mut p = p0.to_vec();
    let mut r = vec![0.0; n_resid];
    residuals(&p, &mut r);
    let mut cost = r.iter().map(|v| v * v).sum::<f64>();

    let mut lambda = 1e-3;
    let mut converged = false;
    let mut iterations = 0;

    let mut jac = DMatrix::<f64>::zeros(n_resid, np);
    let mut r_trial = vec![0.0; n_resid];

    for iter in 0..max_iter {
        iterations = iter + 1;

        // Forward-difference Jacobian with per-parameter scaled steps.
        for j in 0..np {
            let h = 1e-7 * p[j].abs().max(1e-12);
            let saved = p[j];
            p[j] = saved + h;
            residuals(&p, &mut r_trial);
            p[j] = saved;
            for i in 0..n_resid {
                jac[(i, j)] = (r_trial[i] - r[i]) / h;
            }
        }

        let rv = DVector::from_column_slice(&r);
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let g = &jt * &rv;

        let mut improved = false;
        for _ in 0..12 {
            let mut a = jtj.clone();
            for j in 0..np {
                a[(j, j)] += lambda * jtj[(j, j)].max(1e-30);
            }
            let step = match a.lu().solve(&g) {
                Some(s) => s,
                None => break,
            };
            let trial: Vec<f64> = p.iter().zip(step.iter()).map(|(pi, si)| pi - si).collect();
            residuals(&trial, &mut r_trial);
            let trial_cost = r_trial.iter().map(|v| v * v).sum::<f64>();
            if trial_cost.is_finite() && trial_cost < cost {
                let rel_drop = (cost - trial_cost) / cost.max(1e-300);
                p = trial;
                r.copy_from_slice(&r_trial);
                cost = trial_cost;
                lambda = (lambda * 0.3).max(1e-12);
                improved = true;
                if rel_drop < 1e-12 {
                    converged = true;
                }
                break;
            }
            lambda *= 10.0;
            if lambda > 1e12 {
                break;
            }
        }

        if !improved {
            converged = cost.is_finite();
            break;
        }
        if converged {
            break;
        }
    }

    LmResult {
        params: p,
        rms: (cost / n_resid as f64).sqrt(),
        converged,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_of_cosine() {
        let r = find_root_bracketed(|x: f64| x.cos(), 1.0, 2.0, 1e-12).unwrap();
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-10);
    }

    #[test]
    fn root_rejects_same_sign_bracket() {
        let err = find_root_bracketed(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12).unwrap_err();
        assert_eq!(err, RootError::NoSignChange);
    }

    #[test]
    fn root_detects_pole() {
        // tan has a pole at π/2 where it flips sign without a zero.
        let err = find_root_bracketed(|x: f64| x.tan(), 1.4, 1.8, 1e-13).unwrap_err();
        assert_eq!(err, RootError::ConvergedToPole);
    }

    #[test]
    fn cubic_three_roots() {
        // (x−1)(x−2)(x−3) = x³ − 6x² + 11x − 6
        let roots = cubic_real_roots(1.0, -6.0, 11.0, -6.0);
        assert_eq!(roots.len(), 3);
        for (r, want) in roots.iter().zip([1.0, 2.0, 3.0]) {
            assert!((r - want).abs() < 1e-9, "{r} vs {want}");
        }
    }

    #[test]
    fn cubic_single_root() {
        // x³ + x + 1 has one real root near −0.6823
        let roots = cubic_real_roots(1.0, 0.0, 1.0, 1.0);
        assert_eq!(roots.len(), 1);
        assert!((roots[0] + 0.6823278038280193).abs() < 1e-12);
    }

    #[test]
    fn cubic_degenerates_to_linear() {
        let roots = cubic_real_roots(0.0, 0.0, 2.0, -4.0);
        assert_eq!(roots, vec![2.0]);
    }

    #[test]
    fn ols_exact_line() {
        let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|&v| 0.6 * v + 3.0).collect();
        let (slope, intercept, r2) = ols(&x, &y);
        assert!((slope - 0.6).abs() < 1e-12);
        assert!((intercept - 3.0).abs() < 1e-12);
        assert!((r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ols_constant_series_has_zero_slope() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y = [5.0, 5.0, 5.0, 5.0];
        let (slope, _, _) = ols(&x, &y);
        assert_eq!(slope, 0.0);
    }

    #[test]
    fn lm_recovers_exponential_decay() {
        // y = a·exp(−b x), truth a=2, b=0.5
        let xs: Vec<f64> = (0..40).map(|i| i as f64 * 0.25).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| 2.0 * (-0.5 * x).exp()).collect();
        let res = lm_fit(
            |p, out| {
                for (i, (&x, &y)) in xs.iter().zip(&ys).enumerate() {
                    out[i] = p[0] * (-p[1] * x).exp() - y;
                }
            },
            &[1.0, 1.0],
            xs.len(),
            100,
        );
        assert!(res.converged);
        assert!((res.params[0] - 2.0).abs() < 1e-8);
        assert!((res.params[1] - 0.5).abs() < 1e-8);
    }

    #[test]
    fn interp_midpoint() {
        let xs = [0.0, 1.0, 2.0];
        let ys = [0.0, 10.0, 40.0];
        assert!((interp_linear(&xs, &ys, 0.5) - 5.0).abs() < 1e-12);
        assert!((interp_linear(&xs, &ys, 1.5) - 25.0).abs() < 1e-12);
        assert_eq!(interp_linear(&xs, &ys, -1.0), 0.0);
        assert_eq!(interp_linear(&xs, &ys, 5.0), 40.0);
    }
}
