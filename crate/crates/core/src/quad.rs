//! Composite Simpson quadrature on sample grids, with a half-grid error
//! estimate.

/// Integral value together with a Richardson-style error estimate from
/// comparing against the half-density grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
}

/// Integral of the quadratic through `(0, f0)`, `(h0, f1)`, `(h0+h1, f2)`
/// over the full span. Reduces to Simpson's rule for `h0 == h1`.
fn pair_segment(h0: f64, h1: f64, f0: f64, f1: f64, f2: f64) -> f64 {
    (h0 + h1) / 6.0
        * ((2.0 - h1 / h0) * f0 + (h0 + h1) * (h0 + h1) / (h0 * h1) * f1 + (2.0 - h0 / h1) * f2)
}

/// Integral of the same quadratic over only the trailing interval
/// `[h0, h0+h1]`; used when an odd interval is left over.
fn tail_segment(h0: f64, h1: f64, f0: f64, f1: f64, f2: f64) -> f64 {
    (-f0 * h1.powi(3)
        + f1 * (3.0 * h0 * h0 * h1 + 4.0 * h0 * h1 * h1 + h1.powi(3))
        + f2 * (3.0 * h0 * h0 * h1 + 2.0 * h0 * h1 * h1))
        / (6.0 * h0 * (h0 + h1))
}

/// Composite Simpson integral of samples `values` at `times`. Interval
/// pairs are integrated with the (grid-spacing aware) three-point rule; a
/// leftover odd interval is handled by integrating the last fitted
/// quadratic over that interval alone.
pub fn simpson(times: &[f64], values: &[f64]) -> f64 {
    assert_eq!(times.len(), values.len(), "times/values length mismatch");
    let n = times.len();
    if n < 2 {
        return 0.0;
    }
    if n == 2 {
        return 0.5 * (times[1] - times[0]) * (values[0] + values[1]);
    }
    let mut total = 0.0;
    let mut i = 0;
    while i + 2 < n {
        let h0 = times[i + 1] - times[i];
        let h1 = times[i + 2] - times[i + 1];
        total += pair_segment(h0, h1, values[i], values[i + 1], values[i + 2]);
        i += 2;
    }
    if i + 1 < n {
        // one interval left; reuse the last three points
        let h0 = times[n - 2] - times[n - 3];
        let h1 = times[n - 1] - times[n - 2];
        total += tail_segment(h0, h1, values[n - 3], values[n - 2], values[n - 1]);
    }
    total
}

/// Simpson integral plus `|I_h - I_2h| / 15` from the stride-2 subgrid.
pub fn integrate_with_error(times: &[f64], values: &[f64]) -> Quadrature {
    let value = simpson(times, values);
    let n = times.len();
    if n < 5 {
        let trap: f64 = times
            .windows(2)
            .zip(values.windows(2))
            .map(|(t, v)| 0.5 * (t[1] - t[0]) * (v[0] + v[1]))
            .sum();
        return Quadrature {
            value,
            error_estimate: (value - trap).abs(),
        };
    }
    let mut ct = Vec::with_capacity(n / 2 + 2);
    let mut cv = Vec::with_capacity(n / 2 + 2);
    let mut i = 0;
    while i < n {
        ct.push(times[i]);
        cv.push(values[i]);
        i += 2;
    }
    if *ct.last().unwrap() < times[n - 1] {
        ct.push(times[n - 1]);
        cv.push(values[n - 1]);
    }
    let coarse = simpson(&ct, &cv);
    Quadrature {
        value,
        error_estimate: (value - coarse).abs() / 15.0,
    }
}
