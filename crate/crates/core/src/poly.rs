//! Complex polynomials: evaluation, roots, critical points, and the two
//! pointwise quantities checked elsewhere in the crate, the normalized
//! logarithmic derivative `|(z - a) P'(z) / P(z)|` and the polar derivative
//! `n P(z) - (z - a) P'(z)`.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree accepted at construction.
pub const MAX_DEGREE: usize = 64;

const EPS: f64 = f64::EPSILON;

/// Numerical knobs for root finding and critical point classification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootParams {
    pub max_iters: usize,
    /// Roots closer than this (relative to `max(1, |z|)`) form one multiple root.
    pub cluster_tol: f64,
    /// Accepted `|P(root)|` relative to the coefficient scale at the root.
    pub residual_tol: f64,
    /// Critical points with `|P| <= classification_tol * max|coeff|` coincide with zeros.
    pub classification_tol: f64,
}

impl Default for RootParams {
    fn default() -> Self {
        Self {
            max_iters: 2000,
            cluster_tol: 1e-6,
            residual_tol: 1e-8,
            classification_tol: 1e-9,
        }
    }
}

/// A polynomial with complex coefficients stored in ascending powers.
///
/// The leading coefficient is always nonzero and the degree is at least one.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self> {
        if let Some(index) = coeffs
            .iter()
            .position(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::NonFiniteCoefficient { index });
        }
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => Err(Error::EmptyPolynomial),
            1 => Err(Error::ConstantPolynomial),
            len if len - 1 > MAX_DEGREE => Err(Error::DegreeTooLarge {
                degree: len - 1,
                max: MAX_DEGREE,
            }),
            _ => Ok(Self { coeffs }),
        }
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// `leading * prod (z - r)`.
    pub fn from_roots(leading: Complex64, roots: &[Complex64]) -> Result<Self> {
        let mut coeffs = vec![leading];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            coeffs = next;
        }
        Self::new(coeffs)
    }

    /// `c * z^n`.
    pub fn monomial(c: Complex64, n: usize) -> Result<Self> {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree()]
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `sum |c_k| |z|^k`, the magnitude against which evaluation rounding is measured.
    pub fn abs_scale_at(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `(P(z), P'(z))` in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Option<Polynomial> {
        if self.degree() < 2 {
            return None;
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Some(Polynomial { coeffs })
    }

    /// Coefficients of `P'` as a plain vector; defined for every degree.
    pub fn derivative_coeffs(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect()
    }

    /// The `k`-th derivative evaluated at `z`.
    pub fn eval_nth_derivative(&self, k: usize, z: Complex64) -> Complex64 {
        if k > self.degree() {
            return Complex64::new(0.0, 0.0);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for j in (k..=self.degree()).rev() {
            let falling: f64 = (j + 1 - k..=j).map(|v| v as f64).product();
            acc = acc * z + self.coeffs[j] * falling;
        }
        acc
    }

    pub fn scaled(&self, c: Complex64) -> Result<Polynomial> {
        Polynomial::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            coeffs: self.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let parsed: PolynomialJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Polynomial::try_from(parsed)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.norm() == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}{:+}i)", c.re, c.im)?;
            match k {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

/// On-disk polynomial form: `{"coeffs": [[re, im], ...]}`, ascending powers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub coeffs: Vec<[f64; 2]>,
}

impl TryFrom<PolynomialJson> for Polynomial {
    type Error = Error;

    fn try_from(value: PolynomialJson) -> Result<Self> {
        if value.coeffs.iter().all(|c| c[0] == 0.0 && c[1] == 0.0) {
            return Err(Error::EmptyPolynomial);
        }
        Polynomial::new(
            value
                .coeffs
                .iter()
                .map(|c| Complex64::new(c[0], c[1]))
                .collect(),
        )
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolynomialJson::deserialize(d)?;
        Polynomial::try_from(raw).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub location: Complex64,
    pub multiplicity: usize,
}

/// Distinct zeros with multiplicities, sorted by real then imaginary part.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<Root>,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn locations(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.roots.iter().map(|r| r.location)
    }

    /// Index of and distance to the root nearest to `z`.
    pub fn nearest(&self, z: Complex64) -> (usize, f64) {
        self.roots
            .iter()
            .enumerate()
            .map(|(i, r)| (i, (r.location - z).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("root sets are never empty")
    }

    /// Smallest distance from root `i` to any other distinct root, infinite when alone.
    pub fn separation(&self, i: usize) -> f64 {
        let here = self.roots[i].location;
        self.roots
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, r)| (r.location - here).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Expands back to `leading * prod (z - r)^m`.
    pub fn reconstruct(&self, leading: Complex64) -> Result<Polynomial> {
        let flat: Vec<Complex64> = self
            .roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.location, r.multiplicity))
            .collect();
        Polynomial::from_roots(leading, &flat)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CriticalKind {
    /// `P(zeta) = 0`: the critical point sits on a multiple zero.
    ZeroCoincident,
    /// `P(zeta) != 0`: a saddle of `|P|`.
    Proper,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub location: Complex64,
    /// Multiplicity as a zero of `P'`.
    pub multiplicity: usize,
    pub critical_value: f64,
    pub kind: CriticalKind,
}

impl CriticalPoint {
    pub fn is_proper(&self) -> bool {
        self.kind == CriticalKind::Proper
    }
}

pub fn evaluate(p: &Polynomial, z: Complex64) -> Complex64 {
    p.eval(z)
}

/// Roots of `p` via Aberth–Ehrlich iteration with multiplicity clustering.
pub fn find_roots(p: &Polynomial) -> Result<RootSet> {
    find_roots_with(p, &RootParams::default())
}

pub fn find_roots_with(p: &Polynomial, params: &RootParams) -> Result<RootSet> {
    let raw = roots_of_coeffs(p.coeffs(), params)?;
    let mut roots = cluster(&raw, params.cluster_tol);
    for root in &mut roots {
        // adding +0 turns a -0.0 component into 0.0
        root.location = polish(p, root.location, root.multiplicity) + Complex64::new(0.0, 0.0);
    }
    sort_roots(&mut roots);
    let scale = p.max_coeff_abs();
    for root in &roots {
        let bound = params.residual_tol
            * scale
            * root.location.norm().max(1.0).powi(p.degree() as i32);
        if p.eval(root.location).norm() > bound {
            return Err(Error::NonConvergence {
                iterations: params.max_iters,
            });
        }
    }
    Ok(RootSet { roots })
}

/// Zeros of `P'` with their multiplicities and classification.
pub fn critical_points(p: &Polynomial) -> Result<Vec<CriticalPoint>> {
    critical_points_with(p, &RootParams::default())
}

pub fn critical_points_with(p: &Polynomial, params: &RootParams) -> Result<Vec<CriticalPoint>> {
    let Some(dp) = p.derivative() else {
        return Ok(Vec::new());
    };
    let zeros = find_roots_with(&dp, params)?;
    let tol = params.classification_tol * p.max_coeff_abs();
    Ok(zeros
        .roots
        .iter()
        .map(|r| {
            let value = p.eval(r.location).norm();
            CriticalPoint {
                location: r.location,
                multiplicity: r.multiplicity,
                critical_value: value,
                kind: if value > tol {
                    CriticalKind::Proper
                } else {
                    CriticalKind::ZeroCoincident
                },
            }
        })
        .collect())
}

/// True when `|P(z)|` is below the rounding level of its own evaluation.
pub fn is_numerical_zero(p: &Polynomial, z: Complex64, value: Complex64) -> bool {
    value.norm() <= 16.0 * EPS * p.abs_scale_at(z)
}

/// `|(z - a) P'(z) / P(z)|`.
pub fn bound_value(p: &Polynomial, a: Complex64, z: Complex64) -> Result<f64> {
    let (v, dv) = p.eval_with_derivative(z);
    if is_numerical_zero(p, z, v) {
        return Err(Error::DivisionNearZero {
            z,
            modulus: v.norm(),
        });
    }
    Ok(((z - a) * dv / v).norm())
}

/// `n P(z) - (z - a) P'(z)` with `n = deg P`.
pub fn polar_derivative(p: &Polynomial, a: Complex64, z: Complex64) -> Complex64 {
    let (v, dv) = p.eval_with_derivative(z);
    v * p.degree() as f64 - (z - a) * dv
}

fn sort_roots(roots: &mut [Root]) {
    roots.sort_by(|a, b| {
        a.location
            .re
            .partial_cmp(&b.location.re)
            .unwrap_or(Ordering::Equal)
            .then(
                a.location
                    .im
                    .partial_cmp(&b.location.im)
                    .unwrap_or(Ordering::Equal),
            )
    });
}

/// Raw Aberth–Ehrlich roots (with repetition) of the polynomial with the given
/// ascending coefficients. Exact zeros at the origin are deflated first.
fn roots_of_coeffs(coeffs: &[Complex64], params: &RootParams) -> Result<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    let trailing = coeffs.iter().take_while(|c| **c == zero).count();
    let mut out = vec![zero; trailing];
    let reduced = &coeffs[trailing..];
    let n = reduced.len() - 1;
    match n {
        0 => return Ok(out),
        1 => {
            out.push(-reduced[0] / reduced[1]);
            return Ok(out);
        }
        _ => {}
    }

    let lead = reduced[n];
    // Upper bound on root moduli (Fujiwara); guesses start on a circle of that radius.
    let radius = (1..=n)
        .map(|k| (reduced[n - k] / lead).norm().powf(1.0 / k as f64))
        .fold(0.0, f64::max);
    let radius = if radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    let mut done = vec![false; n];

    let abs_coeffs: Vec<f64> = reduced.iter().map(|c| c.norm()).collect();
    for _ in 0..params.max_iters {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let zi = z[i];
            let mut p = zero;
            let mut dp = zero;
            let mut scale = 0.0;
            let r = zi.norm();
            for (k, &c) in reduced.iter().enumerate().rev() {
                dp = dp * zi + p;
                p = p * zi + c;
                scale = scale * r + abs_coeffs[k];
            }
            if p.norm() <= 4.0 * EPS * scale {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = zi - z[j];
                    if d == zero {
                        Complex64::new(1e300, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                // Flat spot: nudge off it.
                z[i] = zi + Complex64::new(radius * 1e-3, radius * 1e-3);
                continue;
            }
            z[i] = zi - step;
            if step.norm() <= 4.0 * EPS * z[i].norm().max(EPS) {
                done[i] = true;
            }
        }
        if done.iter().all(|d| *d) {
            out.extend(z);
            return Ok(out);
        }
    }
    Err(Error::NonConvergence {
        iterations: params.max_iters,
    })
}

/// Groups raw roots into clusters by single linkage at `tol * max(1, |z|)`.
fn cluster(raw: &[Complex64], tol: f64) -> Vec<Root> {
    let n = raw.len();
    let mut group: Vec<usize> = (0..n).collect();
    fn find(group: &mut [usize], mut i: usize) -> usize {
        while group[i] != i {
            group[i] = group[group[i]];
            i = group[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = raw[i].norm().max(raw[j].norm()).max(1.0);
            if (raw[i] - raw[j]).norm() <= tol * scale {
                let (a, b) = (find(&mut group, i), find(&mut group, j));
                if a != b {
                    group[b] = a;
                }
            }
        }
    }
    let mut sums: Vec<(usize, Complex64, usize)> = Vec::new();
    for (i, &z) in raw.iter().enumerate().take(n) {
        let g = find(&mut group, i);
        match sums.iter_mut().find(|(id, _, _)| *id == g) {
            Some(entry) => {
                entry.1 += z;
                entry.2 += 1;
            }
            None => sums.push((g, z, 1)),
        }
    }
    sums.into_iter()
        .map(|(_, s, m)| Root {
            location: s / m as f64,
            multiplicity: m,
        })
        .collect()
}

/// A few steps of multiplicity-aware Newton, kept only while `|P|` shrinks.
fn polish(p: &Polynomial, mut z: Complex64, multiplicity: usize) -> Complex64 {
    let mut best = p.eval(z).norm();
    for _ in 0..8 {
        if best == 0.0 {
            break;
        }
        let (v, dv) = p.eval_with_derivative(z);
        if dv.norm() == 0.0 {
            break;
        }
        let next = z - v / dv * multiplicity as f64;
        let value = p.eval(next).norm();
        if value < best {
            best = value;
            z = next;
        } else {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn counterexample() -> Polynomial {
        Polynomial::from_real(&[0.0, 0.0, -0.75, 0.5]).unwrap()
    }

    #[test]
    fn construction_rejects_constants_and_empty() {
        assert!(matches!(Polynomial::new(vec![]), Err(Error::EmptyPolynomial)));
        assert!(matches!(
            Polynomial::from_real(&[0.0, 0.0]),
            Err(Error::EmptyPolynomial)
        ));
        assert!(matches!(
            Polynomial::from_real(&[3.0, 0.0]),
            Err(Error::ConstantPolynomial)
        ));
        let big = vec![1.0; MAX_DEGREE + 2];
        assert!(matches!(
            Polynomial::from_real(&big),
            Err(Error::DegreeTooLarge { .. })
        ));
        assert_eq!(Polynomial::from_real(&[1.0, 2.0, 0.0]).unwrap().degree(), 1);
    }

    #[test]
    fn json_parsing() {
        let p = Polynomial::from_json_str(r#"{"coeffs": [[-1, 0], [0, 0], [1, 0]]}"#).unwrap();
        assert_eq!(p.degree(), 2);
        assert!(Polynomial::from_json_str(r#"{"coeffs": []}"#).is_err());
        assert!(Polynomial::from_json_str(r#"{"coeffs": [[0, 0], [0, 0]]}"#).is_err());
        let back: Polynomial = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(evaluate(&counterexample(), c(2.0, 0.0)), c(1.0, 0.0));
        let zn = Polynomial::monomial(c(1.0, 0.0), 5).unwrap();
        assert_eq!(evaluate(&zn, c(0.0, 0.0)), c(0.0, 0.0));
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        assert!((evaluate(&p, c(1.2, 0.0)) - c(0.44, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn derivative_examples() {
        let d = counterexample().derivative().unwrap();
        assert_eq!(d.coeffs(), &[c(0.0, 0.0), c(-1.5, 0.0), c(1.5, 0.0)]);
        let d = Polynomial::monomial(c(1.0, 0.0), 4).unwrap().derivative().unwrap();
        assert_eq!(d.coeffs(), &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(4.0, 0.0)]);
        let lin = Polynomial::new(vec![c(2.0, 1.0), c(-3.0, 0.5)]).unwrap();
        assert!(lin.derivative().is_none());
        assert_eq!(lin.derivative_coeffs(), vec![c(-3.0, 0.5)]);
    }

    #[test]
    fn nth_derivative_matches_repeated_differentiation() {
        let p = Polynomial::from_real(&[1.0, -2.0, 0.5, 3.0, -1.0]).unwrap();
        let z = c(0.3, -0.7);
        let d1 = p.derivative().unwrap();
        let d2 = d1.derivative().unwrap();
        assert!((p.eval_nth_derivative(1, z) - d1.eval(z)).norm() < 1e-13);
        assert!((p.eval_nth_derivative(2, z) - d2.eval(z)).norm() < 1e-13);
        assert!((p.eval_nth_derivative(4, z) - c(-24.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn roots_examples() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        let r = find_roots(&p).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r.roots[0].location - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((r.roots[1].location - c(1.0, 0.0)).norm() < 1e-14);

        let r = find_roots(&counterexample()).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.roots[0].location, c(0.0, 0.0));
        assert_eq!(r.roots[0].multiplicity, 2);
        assert!((r.roots[1].location - c(1.5, 0.0)).norm() < 1e-14);
        assert_eq!(r.roots[1].multiplicity, 1);

        for n in 1..=8 {
            let r = find_roots(&Polynomial::monomial(c(2.0, 1.0), n).unwrap()).unwrap();
            assert_eq!(r.len(), 1);
            assert_eq!(r.roots[0].multiplicity, n);
        }
    }

    #[test]
    fn shifted_double_root_clusters() {
        let a = c(0.3, -0.2);
        let p = Polynomial::from_roots(c(1.0, 0.0), &[a, a, c(1.0, 1.0)]).unwrap();
        let r = find_roots(&p).unwrap();
        assert_eq!(r.total_multiplicity(), 3);
        let double = r.roots.iter().find(|x| x.multiplicity == 2).unwrap();
        assert!((double.location - a).norm() < 1e-7);
    }

    #[test]
    fn critical_point_examples() {
        let cps = critical_points(&counterexample()).unwrap();
        assert_eq!(cps.len(), 2);
        let zc = cps.iter().find(|p| p.location.norm() < 1e-9).unwrap();
        assert_eq!(zc.kind, CriticalKind::ZeroCoincident);
        let proper = cps.iter().find(|p| p.is_proper()).unwrap();
        assert!((proper.location - c(1.0, 0.0)).norm() < 1e-14);
        assert!((proper.critical_value - 0.25).abs() < 1e-15);

        let cps = critical_points(&Polynomial::monomial(c(1.0, 0.0), 6).unwrap()).unwrap();
        assert_eq!(cps.len(), 1);
        assert_eq!(cps[0].multiplicity, 5);
        assert_eq!(cps[0].kind, CriticalKind::ZeroCoincident);

        let cps = critical_points(&Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap()).unwrap();
        assert_eq!(cps.len(), 1);
        assert!(cps[0].is_proper());
        assert!((cps[0].critical_value - 1.0).abs() < 1e-15);

        let lin = Polynomial::from_real(&[1.0, 1.0]).unwrap();
        assert!(critical_points(&lin).unwrap().is_empty());
    }

    #[test]
    fn bound_value_examples() {
        let v = bound_value(&counterexample(), c(0.0, 0.0), c(2.0, 0.0)).unwrap();
        assert_eq!(v, 6.0);
        let p = Polynomial::monomial(c(2.0, 1.0), 4).unwrap();
        let v = bound_value(&p, c(0.0, 0.0), c(0.3, -1.7)).unwrap();
        assert!((v - 4.0).abs() < 1e-14);
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        let v = bound_value(&p, c(1.0, 0.0), c(1.2, 0.0)).unwrap();
        assert!((v - 0.48 / 0.44).abs() < 1e-14);
        assert!(matches!(
            bound_value(&p, c(1.0, 0.0), c(1.0, 0.0)),
            Err(Error::DivisionNearZero { .. })
        ));
    }

    #[test]
    fn polar_derivative_examples() {
        let sq = Polynomial::monomial(c(1.0, 0.0), 2).unwrap();
        assert_eq!(polar_derivative(&sq, c(0.0, 0.0), c(0.7, -0.2)).norm(), 0.0);
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        assert_eq!(polar_derivative(&p, c(1.0, 0.0), c(0.0, 0.0)), c(-2.0, 0.0));
        assert_eq!(
            polar_derivative(&counterexample(), c(0.0, 0.0), c(2.0, 0.0)),
            c(-3.0, 0.0)
        );
    }
}
