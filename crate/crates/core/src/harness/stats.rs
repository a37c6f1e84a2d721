use crate::algorithms::RunResult;
use crate::error::{Error, Result};

/// Hitting-time statistics of one cell.
///
/// Moments are taken over successful runs only and are `None` when no run
/// succeeded. Failed runs only enter `success_rate`.
#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub runs: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub mean: Option<f64>,
    pub median: Option<f64>,
    /// Sample standard deviation; 0 for a single success.
    pub stddev: Option<f64>,
}

pub fn summarize(results: &[RunResult]) -> Summary {
    let mut hits: Vec<f64> = results
        .iter()
        .filter_map(|r| r.evaluations_to_cover)
        .map(|e| e as f64)
        .collect();
    hits.sort_by(f64::total_cmp);
    let runs = results.len();
    let successes = hits.len();
    let success_rate = if runs == 0 {
        0.0
    } else {
        successes as f64 / runs as f64
    };
    if hits.is_empty() {
        return Summary {
            runs,
            successes,
            success_rate,
            mean: None,
            median: None,
            stddev: None,
        };
    }
    let k = hits.len();
    let mean = hits.iter().sum::<f64>() / k as f64;
    let median = if k % 2 == 1 {
        hits[k / 2]
    } else {
        (hits[k / 2 - 1] + hits[k / 2]) / 2.0
    };
    let stddev = if k == 1 {
        0.0
    } else {
        (hits.iter().map(|h| (h - mean).powi(2)).sum::<f64>() / (k - 1) as f64).sqrt()
    };
    Summary {
        runs,
        successes,
        success_rate,
        mean: Some(mean),
        median: Some(median),
        stddev: Some(stddev),
    }
}

/// Least-squares fit of `mean ≈ c · n ln n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalingFit {
    pub c: f64,
    /// `max |mean − c·n ln n| / mean` over the fitted points.
    pub max_relative_residual: f64,
}

impl ScalingFit {
    pub fn predict(&self, n: f64) -> f64 {
        self.c * n * n.ln()
    }
}

pub fn fit_scaling(ns: &[usize], means: &[f64]) -> Result<ScalingFit> {
    if ns.len() != means.len() {
        return Err(Error::LengthMismatch {
            expected: ns.len(),
            actual: means.len(),
        });
    }
    if ns.len() < 3 {
        return Err(Error::invalid(format!(
            "scaling fit needs at least 3 points, got {}",
            ns.len()
        )));
    }
    if ns.iter().any(|&n| n < 2) || means.iter().any(|m| !(m.is_finite() && *m > 0.0)) {
        return Err(Error::invalid(
            "scaling fit needs n ≥ 2 and positive finite means",
        ));
    }
    let g: Vec<f64> = ns.iter().map(|&n| n as f64 * (n as f64).ln()).collect();
    let c =
        g.iter().zip(means).map(|(g, y)| g * y).sum::<f64>() / g.iter().map(|g| g * g).sum::<f64>();
    let max_relative_residual = g
        .iter()
        .zip(means)
        .map(|(g, y)| (y - c * g).abs() / y)
        .fold(0.0, f64::max);
    Ok(ScalingFit {
        c,
        max_relative_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn result(hit: Option<u64>) -> RunResult {
        RunResult {
            run_id: 0,
            seed: 0,
            success: hit.is_some(),
            evaluations: hit.unwrap_or(1000),
            evaluations_to_cover: hit,
            generations: 0,
            monotone_violations: 0,
            final_max_ones: 0,
            final_max_zeros: 0,
            final_population_size: 0,
        }
    }

    #[test]
    fn summary_examples() {
        let s = summarize(&[result(None), result(None)]);
        assert_eq!(s.success_rate, 0.0);
        assert_eq!((s.mean, s.median, s.stddev), (None, None, None));

        let s = summarize(&[result(Some(1000))]);
        assert_eq!(
            (s.mean, s.median, s.stddev),
            (Some(1000.0), Some(1000.0), Some(0.0))
        );

        let s = summarize(&[
            result(Some(300)),
            result(Some(100)),
            result(Some(200)),
            result(None),
        ]);
        assert_eq!(s.mean, Some(200.0));
        assert_eq!(s.median, Some(200.0));
        assert_eq!(s.stddev, Some(100.0));
        assert_eq!(s.success_rate, 0.75);

        let s = summarize(&[result(Some(1)), result(Some(4))]);
        assert_eq!(s.median, Some(2.5));
    }

    #[test]
    fn fit_examples() {
        let ns = [32, 64, 128];
        let exact: Vec<f64> = ns
            .iter()
            .map(|&n| 2.0 * n as f64 * (n as f64).ln())
            .collect();
        let fit = fit_scaling(&ns, &exact).unwrap();
        assert!((fit.c - 2.0).abs() < 1e-12);
        assert!(fit.max_relative_residual < 1e-12);

        let quadratic: Vec<f64> = ns.iter().map(|&n| (n * n) as f64).collect();
        assert!(fit_scaling(&ns, &quadratic).unwrap().max_relative_residual > 0.3);

        assert!(fit_scaling(&ns, &[500.0; 3]).unwrap().max_relative_residual > 0.3);

        assert!(fit_scaling(&[32, 64], &exact[..2]).is_err());
        assert!(fit_scaling(&ns, &exact[..2]).is_err());
    }
}
