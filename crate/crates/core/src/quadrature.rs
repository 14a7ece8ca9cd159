//! Adaptive Simpson quadrature with interval bisection.
//!
//! A panel is accepted when the one-panel and two-panel Simpson estimates
//! differ by at most the panel's share of the tolerance. Integrands need not
//! be smooth; discontinuities only cost extra bisections.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const MAX_DEPTH: u32 = 60;

struct Panel<S> {
    a: S,
    b: S,
    fa: S,
    fm: S,
    fb: S,
    whole: S,
}

fn simpson<S: Scalar>(a: S, b: S, fa: S, fm: S, fb: S) -> S {
    (b - a) / S::lit(6.0) * (fa + S::lit(4.0) * fm + fb)
}

/// Integrates `f` over `[a, b]` with absolute error estimate ≤ `tol`.
pub fn adaptive_simpson<S, F>(f: &F, a: S, b: S, tol: S) -> Result<S>
where
    S: Scalar,
    F: Fn(S) -> Result<S> + ?Sized,
{
    if !(tol > S::zero()) {
        return Err(Error::Precondition(format!("quadrature tolerance must be > 0, got {tol}")));
    }
    if a == b {
        return Ok(S::zero());
    }
    let half = S::lit(0.5);
    let eval = |s: S| -> Result<S> {
        let v = f(s)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation(format!("integrand is {v} at s = {s}")))
        }
    };
    let m = (a + b) * half;
    let (fa, fm, fb) = (eval(a)?, eval(m)?, eval(b)?);
    let root = Panel {
        a,
        b,
        fa,
        fm,
        fb,
        whole: simpson(a, b, fa, fm, fb),
    };
    let mut total = S::zero();
    // explicit stack of (panel, tolerance share, depth)
    let mut stack = vec![(root, tol, 0u32)];
    while let Some((p, ptol, depth)) = stack.pop() {
        let m = (p.a + p.b) * half;
        let lm = (p.a + m) * half;
        let rm = (m + p.b) * half;
        let (flm, frm) = (eval(lm)?, eval(rm)?);
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let refined = left + right;
        let diff = refined - p.whole;
        if diff.abs() <= ptol {
            total = total + refined + diff / S::lit(15.0);
        } else if depth >= MAX_DEPTH {
            return Err(Error::Quadrature {
                a: p.a.to_f64_lossy(),
                b: p.b.to_f64_lossy(),
                tol: ptol.to_f64_lossy(),
            });
        } else {
            let share = ptol * half;
            stack.push((
                Panel {
                    a: m,
                    b: p.b,
                    fa: p.fm,
                    fm: frm,
                    fb: p.fb,
                    whole: right,
                },
                share,
                depth + 1,
            ));
            stack.push((
                Panel {
                    a: p.a,
                    b: m,
                    fa: p.fa,
                    fm: flm,
                    fb: p.fm,
                    whole: left,
                },
                share,
                depth + 1,
            ));
        }
    }
    Ok(total)
}
