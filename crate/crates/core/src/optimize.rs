//! Derivative-free minimization in the plane.

use num_complex::Complex;

use crate::scalar::{lit, Real};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Minimum<S> {
    pub at: Complex<S>,
    pub value: S,
    pub iterations: usize,
}

/// Nelder–Mead over ℂ ≅ ℝ² with the standard coefficients (1, 2, 1/2, 1/2).
///
/// The initial simplex is `start`, `start + step`, `start + i·step`. Stops after
/// `max_iter` iterations or once the simplex diameter drops below `xtol`.
pub fn nelder_mead<S: Real, F>(f: F, start: Complex<S>, step: S, max_iter: usize, xtol: S) -> Minimum<S>
where
    F: Fn(Complex<S>) -> S,
{
    let eval = |z: Complex<S>| {
        let v = f(z);
        if v.is_nan() {
            S::infinity()
        } else {
            v
        }
    };
    let mut simplex = [start, start + Complex::new(step, S::zero()), start + Complex::new(S::zero(), step)];
    let mut values = simplex.map(eval);
    let half = lit::<S>(0.5);
    let two = lit::<S>(2.0);

    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        // sort ascending
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap_or(std::cmp::Ordering::Equal));
        simplex = idx.map(|i| simplex[i]);
        values = idx.map(|i| values[i]);

        let diam = (simplex[0] - simplex[1]).norm().max((simplex[0] - simplex[2]).norm());
        if diam < xtol {
            break;
        }

        let centroid = (simplex[0] + simplex[1]) * half;
        let worst = simplex[2];
        let reflected = centroid + (centroid - worst);
        let fr = eval(reflected);
        if fr < values[0] {
            let expanded = centroid + (centroid - worst) * two;
            let fe = eval(expanded);
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
            continue;
        }
        if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[2] {
            let c = centroid + (reflected - centroid) * half;
            (c, eval(c))
        } else {
            let c = centroid + (worst - centroid) * half;
            (c, eval(c))
        };
        if fc < values[2].min(fr) {
            simplex[2] = contracted;
            values[2] = fc;
            continue;
        }
        // shrink toward the best vertex
        for k in 1..3 {
            simplex[k] = simplex[0] + (simplex[k] - simplex[0]) * half;
            values[k] = eval(simplex[k]);
        }
    }
    let best =
        (0..3).min_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap_or(std::cmp::Ordering::Equal)).unwrap_or(0);
    Minimum { at: simplex[best], value: values[best], iterations }
}

/// Golden-section search for a minimum of a unimodal `f` on `[a, b]`.
pub fn golden_section<S: Real, F: Fn(S) -> S>(f: F, mut a: S, mut b: S, iters: usize) -> (S, S) {
    let g = (lit::<S>(5.0).sqrt() - S::one()) * lit(0.5);
    let mut c = b - (b - a) * g;
    let mut d = a + (b - a) * g;
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * g;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * g;
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Bisection root of `f` on `[a, b]`, assuming a sign change.
pub fn bisect<S: Real, F: Fn(S) -> S>(f: F, mut a: S, mut b: S, iters: usize) -> Option<S> {
    let mut fa = f(a);
    let fb = f(b);
    if fa.is_nan() || fb.is_nan() || (fa > S::zero()) == (fb > S::zero()) {
        return None;
    }
    for _ in 0..iters {
        let m = (a + b) * lit(0.5);
        let fm = f(m);
        if fm == S::zero() {
            return Some(m);
        }
        if (fm > S::zero()) == (fa > S::zero()) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some((a + b) * lit(0.5))
}
