//! Compensated accumulation.
//!
//! Every long sum in the crate — Dirichlet polynomials with 10⁵ terms,
//! quadrature panels, diagonal partial sums — runs through the Neumaier
//! variant of Kahan summation.  The variant matters: plain Kahan loses the
//! compensation when a term exceeds the running sum, which happens routinely
//! when a panel near t = 0 dominates everything accumulated so far.

use num_complex::Complex64;

/// Neumaier-compensated `f64` accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Start from a given value (compensation zero).
    pub fn from_value(v: f64) -> Self {
        KahanSum { sum: v, comp: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// The compensated total.
    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Componentwise-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanComplex {
    re: KahanSum,
    im: KahanSum,
}

impl KahanComplex {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}
