//! Independent numerical oracles for verifying the `scalelaw` crates.
//!
//! Everything here is deliberately naive: direct `powf` evaluation, adaptive
//! Simpson quadrature, golden-section search, and bisection. None of it shares
//! code with the production crates, so agreement between the two routes is
//! meaningful evidence rather than a tautology.
//!
//! This crate is a dev-dependency only; it never ships in a production build.

/// Loss of the separable law evaluated the obvious way: `e + a*n^-p + b*d^-q`.
pub fn separable_loss(e: f64, a: f64, p: f64, b: f64, q: f64, n: f64, d: f64) -> f64 {
    e + a * n.powf(-p) + b * d.powf(-q)
}

/// Loss of the compute-only law evaluated the obvious way: `e + k*c^-kappa`.
pub fn compute_only_loss(e: f64, k: f64, kappa: f64, c: f64) -> f64 {
    e + k * c.powf(-kappa)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Classic Lyness recursion: accept a panel when the two-half refinement moves
/// the estimate by less than `15 * tol`, and add the `delta / 15` correction.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    adapt(f, a, b, fa, fm, fb, whole, tol, 60)
}

/// Adaptive Simpson quadrature with a relative tolerance.
///
/// The absolute budget is derived from a coarse first pass, which is adequate
/// for the positive monotone integrands these suites verify.
pub fn integrate_rel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let coarse = simpson(a, b, f(a), f(0.5 * (a + b)), f(b)).abs();
    let scale = if coarse > 0.0 { coarse } else { 1.0 };
    integrate(f, a, b, rel_tol * scale)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Golden-section minimization of a unimodal `f` on `[lo, hi]`.
///
/// Returns `(x_min, f(x_min))` once the bracket is narrower than `tol`.
pub fn golden_min<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Minimize `f` over `[lo, hi]` by a coarse scan followed by golden-section
/// refinement of the bracketing interval. Robust when `f` is unimodal but the
/// minimum's location is unknown to within many orders of magnitude.
pub fn scan_then_golden<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    coarse_points: usize,
    tol: f64,
) -> (f64, f64) {
    assert!(coarse_points >= 3);
    let step = (hi - lo) / (coarse_points - 1) as f64;
    let mut best_i = 0;
    let mut best_f = f64::INFINITY;
    for i in 0..coarse_points {
        let v = f(lo + step * i as f64);
        if v < best_f {
            best_f = v;
            best_i = i;
        }
    }
    let a = lo + step * best_i.saturating_sub(1) as f64;
    let b = lo + step * (best_i + 1).min(coarse_points - 1) as f64;
    golden_min(f, a, b, tol)
}

/// Bisection root of `f` on `[lo, hi]`, assuming a sign change on the bracket.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let flo = f(lo);
    assert!(
        (flo <= 0.0) != (f(hi) <= 0.0),
        "bisect: no sign change on [{lo}, {hi}]"
    );
    let falling = flo > 0.0;
    while hi - lo > tol {
        let m = 0.5 * (lo + hi);
        let fm = f(m);
        if (fm > 0.0) == falling {
            lo = m;
        } else {
            hi = m;
        }
    }
    0.5 * (lo + hi)
}
