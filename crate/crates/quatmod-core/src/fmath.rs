//! Floating-point primitives, routed through `std` or `libm` so the crate
//! builds without the standard library.

#[cfg(feature = "std")]
mod imp {
    pub fn sqrt(x: f64) -> f64 {
        x.sqrt()
    }
    pub fn floor(x: f64) -> f64 {
        x.floor()
    }
    pub fn round(x: f64) -> f64 {
        x.round()
    }
    pub fn abs(x: f64) -> f64 {
        x.abs()
    }
    pub fn ln(x: f64) -> f64 {
        x.ln()
    }
}

#[cfg(not(feature = "std"))]
mod imp {
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }
    pub fn floor(x: f64) -> f64 {
        libm::floor(x)
    }
    pub fn round(x: f64) -> f64 {
        libm::round(x)
    }
    pub fn abs(x: f64) -> f64 {
        libm::fabs(x)
    }
    pub fn ln(x: f64) -> f64 {
        libm::log(x)
    }
}

pub use imp::{abs, floor, ln, round, sqrt};

/// Inverse hyperbolic cosine for x >= 1.
pub fn acosh(x: f64) -> f64 {
    ln(x + sqrt(x * x - 1.0))
}
