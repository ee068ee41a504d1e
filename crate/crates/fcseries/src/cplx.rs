//! Complex helpers with the branch cut on the positive real axis.
//!
//! Every fractional power in the crate goes through [`pow`], which takes
//! `arg(w)` in `[0, 2π)`.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

/// Argument of `w` in `[0, 2π)`.
pub fn arg(w: Complex64) -> f64 {
    let a = w.im.atan2(w.re);
    if a < 0.0 {
        let b = a + TAU;
        // -0.0 imaginary parts and rounding can land exactly on 2π
        if b >= TAU {
            0.0
        } else {
            b
        }
    } else {
        a
    }
}

pub fn ln(w: Complex64) -> Complex64 {
    Complex64::new(w.norm().ln(), arg(w))
}

/// `w^alpha` on the fixed branch. `0^alpha` is 0 for alpha > 0 and 1 for alpha = 0.
pub fn pow(w: Complex64, alpha: f64) -> Complex64 {
    if alpha == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    if w.re == 0.0 && w.im == 0.0 {
        return if alpha > 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(f64::INFINITY, 0.0)
        };
    }
    let l = ln(w);
    Complex64::from_polar((alpha * l.re).exp(), alpha * l.im)
}

/// `e^{iπ x}`.
pub fn expi_pi(x: f64) -> Complex64 {
    // reduce first so large multiples of π keep full precision
    let y = x.rem_euclid(2.0);
    Complex64::from_polar(1.0, PI * y)
}

/// Neumaier compensated accumulator for complex values.
#[derive(Debug, Clone, Copy, Default)]
pub struct Accumulator {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
}

fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, &mut self.re_c, z.re);
        neumaier(&mut self.im, &mut self.im_c, z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.re_c, self.im + self.im_c)
    }
}
