//! Bracketing scalar root refinement and sign-change scanning.

/// Brent's method (bisection / secant / inverse quadratic interpolation).
///
/// `fa` and `fb` must have opposite signs (or one of them be zero). The
/// iteration stops once the bracket is narrower than
/// `2·ε·|x| + rel_tol·max(|x|, abs_floor)`.
pub fn brent<F>(mut f: F, a: f64, b: f64, fa: f64, fb: f64, rel_tol: f64, abs_floor: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    if fa == 0.0 {
        return (a, fa);
    }
    if fb == 0.0 {
        return (b, fb);
    }
    debug_assert!(fa.signum() != fb.signum());

    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * rel_tol * b.abs().max(abs_floor);
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return (b, fb);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    (b, fb)
}

/// Uniform grid of `points` abscissae spanning `[lo, hi]` inclusive.
pub fn linspace(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (points.max(2) - 1) as f64;
    (0..points.max(2)).map(move |i| if i + 1 == points.max(2) { hi } else { lo + step * i as f64 })
}

/// Adjacent grid cells `(x0, f0, x1, f1)` across which `f` changes sign.
///
/// Samples for which `f` is undefined (`None`) break the chain, so a sign
/// change is never reported across a hole in the domain. Exact zeros are
/// reported as degenerate cells with `x0 == x1`.
pub fn sign_changes(samples: &[(f64, Option<f64>)]) -> Vec<(f64, f64, f64, f64)> {
    let mut cells = Vec::new();
    for (i, &(x, fx)) in samples.iter().enumerate() {
        let Some(fx) = fx else { continue };
        if fx == 0.0 {
            cells.push((x, fx, x, fx));
            continue;
        }
        if let Some(&(xn, Some(fxn))) = samples.get(i + 1) {
            if fxn != 0.0 && fx.signum() != fxn.signum() {
                cells.push((x, fx, xn, fxn));
            }
        }
    }
    cells
}
