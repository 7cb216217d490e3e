use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RateError {
    #[error("rate fit needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("rate fit needs positive errors, got {0} at N = {1}")]
    NonPositive(f64, usize),
}

/// Algebraic rate `r` in `e ~ N^{-r}`, from a least-squares fit of `log e`
/// against `log N` over the last `⌈len/2⌉` points.
pub fn estimate_rate(points: &[(usize, f64)]) -> Result<f64, RateError> {
    if points.len() < 3 {
        return Err(RateError::TooFewPoints(points.len()));
    }
    if let Some(&(n, e)) = points.iter().find(|p| !(p.1 > 0.0)) {
        return Err(RateError::NonPositive(e, n));
    }
    let tail = &points[points.len() / 2..];
    let xs: Vec<f64> = tail.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|p| p.1.ln()).collect();
    Ok(-least_squares_slope(&xs, &ys))
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Slope of `log e` against `log N` between two points.
pub fn pair_rate(a: (usize, f64), b: (usize, f64)) -> Option<f64> {
    if a.1 > 0.0 && b.1 > 0.0 && b.0 != a.0 {
        Some(-(b.1 / a.1).ln() / (b.0 as f64 / a.0 as f64).ln())
    } else {
        None
    }
}

/// True when the log-log slope over the last two points above `floor` is
/// more than 1.5 times the slope over the first two, as for `e ~ ρ^N`.
pub fn super_algebraic(points: &[(usize, f64)], floor: f64) -> bool {
    let live: Vec<(usize, f64)> = points.iter().copied().filter(|p| p.1 > floor).collect();
    if live.len() < 3 {
        return false;
    }
    let head = pair_rate(live[0], live[1]);
    let tail = pair_rate(live[live.len() - 2], live[live.len() - 1]);
    matches!((head, tail), (Some(h), Some(t)) if h > 0.0 && t > 1.5 * h)
}

/// Errors decrease until they reach `floor`, after which they may only
/// fluctuate below it.
pub fn decreasing_to_floor(points: &[(usize, f64)], floor: f64) -> bool {
    points
        .windows(2)
        .all(|w| w[1].1 < w[0].1 || (w[0].1 <= floor && w[1].1 <= floor))
}
