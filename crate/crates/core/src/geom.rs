//! Small planar helpers shared by the tracing, sampling, and figure code.

use num_complex::Complex64;

/// Winding number of the closed polygon `poly` (last vertex joins the first)
/// around `z`. Zero for points outside a simple polygon.
pub fn winding_number(poly: &[Complex64], z: Complex64) -> i64 {
    let n = poly.len();
    let mut wn = 0i64;
    for k in 0..n {
        let a = poly[k];
        let b = poly[(k + 1) % n];
        let cross = (b.re - a.re) * (z.im - a.im) - (z.re - a.re) * (b.im - a.im);
        if a.im <= z.im {
            if b.im > z.im && cross > 0.0 {
                wn += 1;
            }
        } else if b.im <= z.im && cross < 0.0 {
            wn -= 1;
        }
    }
    wn
}

pub fn point_in_polygon(poly: &[Complex64], z: Complex64) -> bool {
    winding_number(poly, z) != 0
}

/// Signed area, positive for counterclockwise vertex order.
pub fn signed_area(poly: &[Complex64]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|k| {
            let a = poly[k];
            let b = poly[(k + 1) % n];
            a.re * b.im - b.re * a.im
        })
        .sum::<f64>()
        * 0.5
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundingBox {
    pub min: Complex64,
    pub max: Complex64,
}

impl BoundingBox {
    pub fn of(points: impl IntoIterator<Item = Complex64>) -> Option<Self> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut bb = BoundingBox {
            min: first,
            max: first,
        };
        for p in it {
            bb.include(p);
        }
        Some(bb)
    }

    pub fn include(&mut self, p: Complex64) {
        self.min.re = self.min.re.min(p.re);
        self.min.im = self.min.im.min(p.im);
        self.max.re = self.max.re.max(p.re);
        self.max.im = self.max.im.max(p.im);
    }

    pub fn width(&self) -> f64 {
        self.max.re - self.min.re
    }

    pub fn height(&self) -> f64 {
        self.max.im - self.min.im
    }

    pub fn center(&self) -> Complex64 {
        (self.min + self.max) * 0.5
    }

    /// Grows each side by `fraction` of the larger extent, and by `floor` at least.
    pub fn with_margin(&self, fraction: f64, floor: f64) -> Self {
        let pad = (self.width().max(self.height()) * fraction).max(floor);
        let d = Complex64::new(pad, pad);
        BoundingBox {
            min: self.min - d,
            max: self.max + d,
        }
    }

    pub fn contains(&self, p: Complex64) -> bool {
        p.re >= self.min.re && p.re <= self.max.re && p.im >= self.min.im && p.im <= self.max.im
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Complex64> {
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(0.0, 1.0),
        ]
    }

    #[test]
    fn winding_of_square() {
        let sq = square();
        assert_eq!(winding_number(&sq, Complex64::new(0.5, 0.5)), 1);
        assert_eq!(winding_number(&sq, Complex64::new(1.5, 0.5)), 0);
        let rev: Vec<_> = sq.iter().rev().copied().collect();
        assert_eq!(winding_number(&rev, Complex64::new(0.5, 0.5)), -1);
        assert!((signed_area(&sq) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bbox_margin() {
        let bb = BoundingBox::of(square()).unwrap().with_margin(0.5, 0.0);
        assert_eq!(bb.min, Complex64::new(-0.5, -0.5));
        assert!(bb.contains(Complex64::new(1.4, -0.4)));
    }
}
