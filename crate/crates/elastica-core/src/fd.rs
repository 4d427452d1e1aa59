// Periodic second-order central differences on the uniform grid x_i = i/N.

use alloc::vec::Vec;

pub fn d1(v: &[[f64; 2]], h: f64) -> Vec<[f64; 2]> {
    let n = v.len();
    (0..n)
        .map(|i| {
            let a = v[(i + 1) % n];
            let b = v[(i + n - 1) % n];
            [(a[0] - b[0]) / (2.0 * h), (a[1] - b[1]) / (2.0 * h)]
        })
        .collect()
}

pub fn d2(v: &[[f64; 2]], h: f64) -> Vec<[f64; 2]> {
    let n = v.len();
    let h2 = h * h;
    (0..n)
        .map(|i| {
            let a = v[(i + 1) % n];
            let c = v[i];
            let b = v[(i + n - 1) % n];
            [(a[0] - 2.0 * c[0] + b[0]) / h2, (a[1] - 2.0 * c[1] + b[1]) / h2]
        })
        .collect()
}

pub fn d1_scalar(v: &[f64], h: f64) -> Vec<f64> {
    let n = v.len();
    (0..n)
        .map(|i| (v[(i + 1) % n] - v[(i + n - 1) % n]) / (2.0 * h))
        .collect()
}
