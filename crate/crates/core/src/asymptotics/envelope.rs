//! Upper envelopes of oscillating sequences and straight-line fits.

/// Maxima over consecutive, non-overlapping blocks. A block starting at time
/// `k` spans `⌈k/10⌉` samples; a trailing incomplete block is dropped.
/// Returns `(k at the maximum, maximum)`.
pub fn block_maxima(ks: &[usize], values: &[f64]) -> Vec<(usize, f64)> {
    assert_eq!(ks.len(), values.len(), "ladder and values differ in length");
    let mut out = Vec::new();
    let mut i = 0;
    while i < ks.len() {
        let width = ks[i].div_ceil(10).max(1);
        if i + width > ks.len() {
            break;
        }
        let best = (i..i + width)
            .max_by(|&a, &b| values[a].total_cmp(&values[b]))
            .expect("nonempty block");
        out.push((ks[best], values[best]));
        i += width;
    }
    out
}

/// Least-squares line `y = slope x + intercept`; `None` with fewer than two
/// distinct abscissae.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    let n = xs.len();
    if n < 2 || n != ys.len() {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

/// Slope of `log v` against `log k`.
pub fn power_slope(envelope: &[(usize, f64)]) -> Option<f64> {
    let xs: Vec<f64> = envelope.iter().map(|(k, _)| (*k as f64).ln()).collect();
    let ys: Vec<f64> = envelope.iter().map(|(_, v)| v.ln()).collect();
    linear_fit(&xs, &ys).map(|(s, _)| s)
}

/// `a` in `v ≈ C e^{-a k}`.
pub fn exponential_rate(envelope: &[(usize, f64)]) -> Option<f64> {
    let xs: Vec<f64> = envelope.iter().map(|(k, _)| *k as f64).collect();
    let ys: Vec<f64> = envelope.iter().map(|(_, v)| v.ln()).collect();
    linear_fit(&xs, &ys).map(|(s, _)| -s)
}
