//! 2D complex FFTs over `ndarray` storage, with one cached planner per thread.

use std::cell::RefCell;

use ndarray::Array2;
use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Unnormalized in-place 2D transform. `data` must be in standard layout.
pub(crate) fn fft2(data: &mut Array2<Complex64>, direction: FftDirection) {
    let (n1, n2) = data.dim();
    let (row_fft, col_fft) = PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        (p.plan_fft(n2, direction), p.plan_fft(n1, direction))
    });

    let buf = data
        .as_slice_mut()
        .expect("fft2 requires a contiguous standard-layout array");
    // rustfft processes every length-n2 chunk of the buffer in turn.
    row_fft.process(buf);

    let mut transposed = vec![Complex64::default(); n1 * n2];
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            transposed[i2 * n1 + i1] = buf[i1 * n2 + i2];
        }
    }
    col_fft.process(&mut transposed);
    for i2 in 0..n2 {
        for i1 in 0..n1 {
            buf[i1 * n2 + i2] = transposed[i2 * n1 + i1];
        }
    }
}
