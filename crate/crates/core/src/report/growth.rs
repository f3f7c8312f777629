use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `y = a x^2 + b x + c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl GrowthFit {
    pub fn eval(&self, x: f64) -> f64 {
        (self.a * x + self.b) * x + self.c
    }
}

/// Least-squares quadratic through `(sizes[i], times[i])`.
///
/// Needs at least three distinct sizes. Sizes are rescaled to `[0, 1]`
/// before solving to keep the normal matrix well conditioned.
pub fn fit_time_growth(sizes: &[f64], times: &[f64]) -> Result<GrowthFit> {
    if sizes.len() != times.len() {
        return Err(Error::InvalidArgument(format!(
            "{} sizes but {} timings",
            sizes.len(),
            times.len()
        )));
    }
    let mut distinct: Vec<f64> = sizes.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::InvalidArgument(
            "a quadratic fit needs at least three distinct sizes".into(),
        ));
    }
    let scale = sizes.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let x = DMatrix::from_fn(sizes.len(), 3, |i, j| {
        let t = sizes[i] / scale;
        match j {
            0 => t * t,
            1 => t,
            _ => 1.0,
        }
    });
    let y = DVector::from_column_slice(times);
    let coef = x
        .svd(true, true)
        .solve(&y, 1e-14)
        .map_err(|e| Error::InvalidArgument(format!("least-squares fit failed: {e}")))?;
    Ok(GrowthFit {
        a: coef[0] / (scale * scale),
        b: coef[1] / scale,
        c: coef[2],
    })
}
