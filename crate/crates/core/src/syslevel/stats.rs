use crate::error::{Error, Result};

/// Empirical quantiles at 1 % resolution: 101 `(q, value)` pairs,
/// `q = 0.00, 0.01, ..., 1.00`, using the inverse of the right-continuous
/// empirical CDF.
pub fn empirical_cdf(values: &[f64]) -> Result<Vec<(f64, f64)>> {
    if values.is_empty() {
        return Err(Error::Empty("CDF sample"));
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Ok((0..=100)
        .map(|i| {
            let q = i as f64 / 100.0;
            let idx = ((q * n as f64).ceil() as usize).clamp(1, n) - 1;
            (q, v[idx])
        })
        .collect())
}

/// Fraction of `values` not above `t`.
pub fn cdf_at(values: &[f64], t: f64) -> f64 {
    values.iter().filter(|&&v| v <= t).count() as f64 / values.len() as f64
}

/// Largest CDF difference between two samples over a grid of 100
/// thresholds at the midpoints of 1 % bins of `[0, scale]`.
pub fn sup_distance(a: &[f64], b: &[f64], scale: f64) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Empty("CDF sample"));
    }
    Ok((0..100)
        .map(|i| {
            let t = (i as f64 + 0.5) / 100.0 * scale;
            (cdf_at(a, t) - cdf_at(b, t)).abs()
        })
        .fold(0.0, f64::max))
}
