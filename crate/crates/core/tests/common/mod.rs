//! Reference evaluation straight from point lists, sharing no code with the
//! library's map types.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational as Q;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::Rng;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    q(n, 1)
}

fn lerp(p: &(Q, Q), r: &(Q, Q), x: &Q) -> Q {
    &p.1 + (x - &p.0) * (&r.1 - &p.1) / (&r.0 - &p.0)
}

/// Map of the line through sorted points, slope 1 outside them.
pub fn line_eval(pts: &[(Q, Q)], x: &Q) -> Q {
    let first = &pts[0];
    let last = &pts[pts.len() - 1];
    if x <= &first.0 {
        return x + (&first.1 - &first.0);
    }
    if x >= &last.0 {
        return x + (&last.1 - &last.0);
    }
    for w in pts.windows(2) {
        if x <= &w[1].0 {
            return lerp(&w[0], &w[1], x);
        }
    }
    unreachable!()
}

pub fn swap(pts: &[(Q, Q)]) -> Vec<(Q, Q)> {
    pts.iter().map(|(x, y)| (y.clone(), x.clone())).collect()
}

fn floor_div(x: &Q, l: &Q) -> Q {
    (x / l).floor()
}

/// Degree-one lift through points `(x, F(x))` with `x` sorted in `[0, L)`.
pub fn circle_lift(l: &Q, pts: &[(Q, Q)], x: &Q) -> Q {
    let k = floor_div(x, l);
    let r = x - &k * l;
    let n = pts.len();
    let mut ext = Vec::with_capacity(n + 2);
    ext.push((&pts[n - 1].0 - l, &pts[n - 1].1 - l));
    ext.extend(pts.iter().cloned());
    ext.push((&pts[0].0 + l, &pts[0].1 + l));
    for w in ext.windows(2) {
        if r >= w[0].0 && r <= w[1].0 {
            return lerp(&w[0], &w[1], &r) + &k * l;
        }
    }
    unreachable!()
}

pub fn modulo(x: &Q, l: &Q) -> Q {
    x - floor_div(x, l) * l
}

/// The bump on `(0,2)` with `f(1/2) = 1` and `f(1) = 3/2`.
pub fn bump_points() -> Vec<(Q, Q)> {
    vec![(qi(0), qi(0)), (q(1, 2), qi(1)), (qi(1), q(3, 2)), (qi(2), qi(2))]
}

/// `r_i` of the standard 5-ring at `x` (positions mod 5), or its inverse.
pub fn ring_r(i: i64, inverse: bool, x: &Q) -> Q {
    let l = qi(5);
    let i = (i - 1).rem_euclid(5) + 1;
    let t = modulo(&(x - qi(i)), &l);
    if t.is_zero() || t >= qi(2) {
        return x.clone();
    }
    let pts = if inverse { swap(&bump_points()) } else { bump_points() };
    x - &t + line_eval(&pts, &t)
}

/// Applies `(index, exponent)` syllables right to left.
pub fn ring_word(syllables: &[(i64, i64)], x: &Q) -> Q {
    let mut y = x.clone();
    for &(i, e) in syllables.iter().rev() {
        for _ in 0..e.abs() {
            y = ring_r(i, e < 0, &y);
        }
    }
    y
}

/// `c_i = r_{i+2}^2 r_{i+1}^2 r_i^2 r_{i-1}`.
pub fn c_word(i: i64) -> Vec<(i64, i64)> {
    vec![(i + 2, 2), (i + 1, 2), (i, 2), (i - 1, 1)]
}

pub fn dyadic(rng: &mut StdRng, lo: i64, hi: i64, den: i64) -> Q {
    q(rng.gen_range(lo * den..hi * den), den)
}

/// `n` distinct sorted dyadics `k/den` with `lo*den <= k < hi*den`.
pub fn sorted_dyadics(rng: &mut StdRng, n: usize, lo: i64, hi: i64, den: i64) -> Vec<Q> {
    let span = ((hi - lo) * den) as usize;
    let mut ks: Vec<usize> = sample(rng, span, n).into_vec();
    ks.sort_unstable();
    ks.into_iter().map(|k| q(k as i64 + lo * den, den)).collect()
}

/// Random increasing point list with 1..=max_bps dyadic points in `[-4, 4)`.
pub fn random_line_points(rng: &mut StdRng, max_bps: usize) -> Vec<(Q, Q)> {
    let n = rng.gen_range(1..=max_bps);
    let xs = sorted_dyadics(rng, n, -4, 4, 16);
    let mut y = &xs[0] + dyadic(rng, -1, 1, 8);
    let mut pts = Vec::with_capacity(n);
    for (k, x) in xs.into_iter().enumerate() {
        if k > 0 {
            y += q(rng.gen_range(1..48), 16);
        }
        pts.push((x, y.clone()));
    }
    pts
}

/// Random lift points for a circle of length `l` (an integer).
pub fn random_circle_points(rng: &mut StdRng, l: i64, max_bps: usize) -> Vec<(Q, Q)> {
    let n = rng.gen_range(1..=max_bps);
    let xs = sorted_dyadics(rng, n, 0, l, 16);
    let y0 = dyadic(rng, -l, 2 * l, 16);
    let ys = sorted_dyadics(rng, n, 0, l, 16);
    let shift = &y0 - &ys[0];
    xs.into_iter().zip(ys).map(|(x, y)| (x, y + &shift)).collect()
}

pub fn midpoints(pts: &[(Q, Q)]) -> Vec<Q> {
    let half = q(1, 2);
    let mut out: Vec<Q> = pts.windows(2).map(|w| (&w[0].0 + &w[1].0) * &half).collect();
    out.push(&pts[0].0 - Q::one());
    out.push(&pts[pts.len() - 1].0 + Q::one());
    out
}
