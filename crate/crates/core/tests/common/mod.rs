#![allow(dead_code)]

use std::collections::BTreeMap;

use lemnikit::{Complex64, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Monic polynomial with `degree` zeros drawn uniformly from `[-2, 2]^2`.
pub fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> (Polynomial, Vec<Complex64>) {
    let roots: Vec<Complex64> = (0..degree)
        .map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
        .collect();
    (Polynomial::from_roots(c(1.0, 0.0), &roots).unwrap(), roots)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Levels spread log-uniformly over `[lo, hi]` that keep a relative gap of at
/// least `gap` from every value in `avoid`.
pub fn levels_avoiding(lo: f64, hi: f64, count: usize, avoid: &[f64], gap: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let candidates = 40 * count;
    for k in 0..candidates {
        let t = lo * (hi / lo).powf(k as f64 / (candidates - 1) as f64);
        if avoid.iter().all(|&v| (t - v).abs() > gap * v.max(t)) {
            out.push(t);
        }
    }
    if out.len() <= count {
        return out;
    }
    (0..count)
        .map(|k| out[k * (out.len() - 1) / (count - 1).max(1)])
        .collect()
}

/// Partition of the zeros induced by 4-connected components of
/// `{|P| <= tau}` sampled on an `n x n` node grid over the zeros' bounding box.
/// A zero whose nearest node lies outside the set is its own class.
pub fn flood_fill_partition(p: &Polynomial, zeros: &[Complex64], tau: f64, n: usize, margin: f64) -> Vec<Vec<usize>> {
    let (mut lo, mut hi) = (zeros[0], zeros[0]);
    for z in zeros {
        lo = c(lo.re.min(z.re), lo.im.min(z.im));
        hi = c(hi.re.max(z.re), hi.im.max(z.im));
    }
    lo -= c(margin, margin);
    hi += c(margin, margin);
    let h = c((hi.re - lo.re) / (n - 1) as f64, (hi.im - lo.im) / (n - 1) as f64);
    let inside: Vec<bool> = (0..n * n)
        .map(|k| {
            let (i, j) = (k % n, k / n);
            let z = lo + c(i as f64 * h.re, j as f64 * h.im);
            p.eval(z).norm() <= tau
        })
        .collect();
    let mut label = vec![usize::MAX; n * n];
    let mut next = 0;
    let mut stack = Vec::new();
    for start in 0..n * n {
        if !inside[start] || label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        stack.push(start);
        while let Some(k) = stack.pop() {
            let (i, j) = (k % n, k / n);
            let mut push = |m: usize| {
                if inside[m] && label[m] == usize::MAX {
                    label[m] = next;
                    stack.push(m);
                }
            };
            if i > 0 {
                push(k - 1);
            }
            if i + 1 < n {
                push(k + 1);
            }
            if j > 0 {
                push(k - n);
            }
            if j + 1 < n {
                push(k + n);
            }
        }
        next += 1;
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (idx, z) in zeros.iter().enumerate() {
        let i = ((z.re - lo.re) / h.re).round() as usize;
        let j = ((z.im - lo.im) / h.im).round() as usize;
        let k = j * n + i;
        let key = if inside[k] { label[k] } else { usize::MAX - idx };
        classes.entry(key).or_default().push(idx);
    }
    let mut parts: Vec<Vec<usize>> = classes.into_values().collect();
    parts.sort();
    parts
}

/// `(1 / 2 pi i) * sum (P'/P)(midpoint) dz` around a closed polygon.
pub fn contour_zero_count(p: &Polynomial, polygon: &[Complex64]) -> f64 {
    let n = polygon.len();
    let mut acc = c(0.0, 0.0);
    for k in 0..n {
        let (a, b) = (polygon[k], polygon[(k + 1) % n]);
        let m = (a + b) * 0.5;
        let (v, dv) = p.eval_with_derivative(m);
        acc += dv / v * (b - a);
    }
    (acc / c(0.0, std::f64::consts::TAU)).re
}
