//! Directed-rounding helpers for `f64` results derived from certified data.
//!
//! `libm` logarithms are accurate to within one ulp; widening by two ulps
//! in the requested direction gives a safe bound.

pub fn ln_down(x: f64) -> f64 {
    libm::log(x).next_down().next_down()
}

pub fn ln_up(x: f64) -> f64 {
    libm::log(x).next_up().next_up()
}

pub fn div_down(a: f64, b: f64) -> f64 {
    (a / b).next_down()
}

pub fn div_up(a: f64, b: f64) -> f64 {
    (a / b).next_up()
}

pub fn mul_down(a: f64, b: f64) -> f64 {
    (a * b).next_down()
}

pub fn mul_up(a: f64, b: f64) -> f64 {
    (a * b).next_up()
}

pub fn add_down(a: f64, b: f64) -> f64 {
    (a + b).next_down()
}

pub fn add_up(a: f64, b: f64) -> f64 {
    (a + b).next_up()
}

pub fn sub_down(a: f64, b: f64) -> f64 {
    (a - b).next_down()
}

pub fn sub_up(a: f64, b: f64) -> f64 {
    (a - b).next_up()
}
