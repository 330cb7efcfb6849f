//! Thin wrapper over `rustfft` with a per-thread planner cache.

use std::cell::RefCell;

use num_complex::Complex64;
use rustfft::FftPlanner;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Unnormalized forward transform: `X_k = sum_j x_j exp(-2 pi i j k / N)`.
pub(crate) fn forward(data: &mut [Complex64]) {
    if data.len() <= 1 {
        return;
    }
    PLANNER.with(|p| {
        let fft = p.borrow_mut().plan_fft_forward(data.len());
        fft.process(data);
    });
}

/// Unnormalized inverse transform: `x_j = sum_k X_k exp(+2 pi i j k / N)`.
pub(crate) fn inverse(data: &mut [Complex64]) {
    if data.len() <= 1 {
        return;
    }
    PLANNER.with(|p| {
        let fft = p.borrow_mut().plan_fft_inverse(data.len());
        fft.process(data);
    });
}
