//! Central finite differences on (t, y¹, y²).

use crate::scalar::Real;

/// Default relative step for first derivatives: h = 1e-5·(1+|x|).
pub const FIRST_STEP: f64 = 1e-5;
/// Relative step for second derivatives, where roundoff scales with 1/h².
pub const SECOND_STEP: f64 = 1e-3;
/// Relative step used for proxies differentiated with Richardson extrapolation.
pub const FIELD_STEP: f64 = 2e-3;

fn step<T: Real>(rel: T, x: T) -> T {
    rel * (T::one() + x.abs())
}

fn combine<T: Real>(terms: &[(T, &Vec<T>)], scale: T) -> Vec<T> {
    let n = terms[0].1.len();
    (0..n)
        .map(|k| terms.iter().fold(T::zero(), |acc, (c, v)| acc + *c * v[k]) * scale)
        .collect()
}

/// Fourth-order central first derivative of a vector-valued function of one variable.
pub fn d1<T: Real>(f: &dyn Fn(T) -> Vec<T>, x: T, h: T) -> Vec<T> {
    let (fm2, fm1, fp1, fp2) = (f(x - h - h), f(x - h), f(x + h), f(x + h + h));
    combine(
        &[(T::one(), &fm2), (-T::c(8.0), &fm1), (T::c(8.0), &fp1), (-T::one(), &fp2)],
        T::one() / (T::c(12.0) * h),
    )
}

/// Fourth-order central pure second derivative.
pub fn d2<T: Real>(f: &dyn Fn(T) -> Vec<T>, x: T, h: T) -> Vec<T> {
    let (fm2, fm1, f0, fp1, fp2) = (f(x - h - h), f(x - h), f(x), f(x + h), f(x + h + h));
    combine(
        &[
            (-T::one(), &fm2),
            (T::c(16.0), &fm1),
            (-T::c(30.0), &f0),
            (T::c(16.0), &fp1),
            (-T::one(), &fp2),
        ],
        T::one() / (T::c(12.0) * h * h),
    )
}

fn shifted<T: Real>(t: T, y: [T; 2], axis: usize, s: T) -> (T, [T; 2]) {
    match axis {
        0 => (t + s, y),
        1 => (t, [y[0] + s, y[1]]),
        _ => (t, [y[0], y[1] + s]),
    }
}

fn coord<T: Real>(t: T, y: [T; 2], axis: usize) -> T {
    match axis {
        0 => t,
        1 => y[0],
        _ => y[1],
    }
}

/// First partials along (t, y¹, y²) with relative step `rel`.
pub fn partials<T: Real>(f: &dyn Fn(T, [T; 2]) -> Vec<T>, t: T, y: [T; 2], rel: T) -> [Vec<T>; 3] {
    let one = |axis: usize| {
        let h = step(rel, coord(t, y, axis));
        let g = |s: T| {
            let (tt, yy) = shifted(t, y, axis, s);
            f(tt, yy)
        };
        d1(&g, T::zero(), h)
    };
    [one(0), one(1), one(2)]
}

/// First partials with one Richardson step: (16·D(h/2) − D(h))/15.
pub fn partials_richardson<T: Real>(
    f: &dyn Fn(T, [T; 2]) -> Vec<T>,
    t: T,
    y: [T; 2],
    rel: T,
) -> [Vec<T>; 3] {
    let coarse = partials(f, t, y, rel);
    let fine = partials(f, t, y, rel * T::c(0.5));
    let mix = |c: &Vec<T>, f: &Vec<T>| {
        c.iter().zip(f).map(|(&a, &b)| (T::c(16.0) * b - a) / T::c(15.0)).collect::<Vec<T>>()
    };
    [mix(&coarse[0], &fine[0]), mix(&coarse[1], &fine[1]), mix(&coarse[2], &fine[2])]
}

/// Full Hessian along (t, y¹, y²) with relative step `rel`.
pub fn hessian<T: Real>(f: &dyn Fn(T, [T; 2]) -> Vec<T>, t: T, y: [T; 2], rel: T) -> [[Vec<T>; 3]; 3] {
    let h = [step(rel, t), step(rel, y[0]), step(rel, y[1])];
    let pure = |a: usize| {
        let g = |s: T| {
            let (tt, yy) = shifted(t, y, a, s);
            f(tt, yy)
        };
        d2(&g, T::zero(), h[a])
    };
    let mixed = |a: usize, b: usize| {
        let outer = |s: T| {
            let (ta, ya) = shifted(t, y, a, s);
            let inner = |r: T| {
                let (tb, yb) = shifted(ta, ya, b, r);
                f(tb, yb)
            };
            d1(&inner, T::zero(), h[b])
        };
        d1(&outer, T::zero(), h[a])
    };
    let d00 = pure(0);
    let d11 = pure(1);
    let d22 = pure(2);
    let d01 = mixed(0, 1);
    let d02 = mixed(0, 2);
    let d12 = mixed(1, 2);
    [
        [d00, d01.clone(), d02.clone()],
        [d01, d11, d12.clone()],
        [d02, d12, d22],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_of_trig() {
        let f = |t: f64, y: [f64; 2]| vec![(t + 2.0 * y[0]).sin() * y[1].cos()];
        let (t, y) = (0.3, [0.7, -0.4]);
        let p = partials_richardson(&f, t, y, 1e-3);
        assert!((p[0][0] - (t + 2.0 * y[0]).cos() * y[1].cos()).abs() < 1e-12);
        assert!((p[1][0] - 2.0 * (t + 2.0 * y[0]).cos() * y[1].cos()).abs() < 1e-12);
        assert!((p[2][0] + (t + 2.0 * y[0]).sin() * y[1].sin()).abs() < 1e-12);
        let hs = hessian(&f, t, y, 1e-3);
        assert!((hs[0][1][0] + 2.0 * (t + 2.0 * y[0]).sin() * y[1].cos()).abs() < 1e-9);
        assert!((hs[2][2][0] + (t + 2.0 * y[0]).sin() * y[1].cos()).abs() < 1e-9);
    }
}
