//! Least-squares fits of information per scale.

use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitKind {
    /// `ln I = -l / lambda + c`; the estimate is `lambda`.
    DecayLength,
    /// `ln I = p ln l + c`; the estimate is `p`.
    PowerLaw,
    /// `i = alpha / l^2`; the estimate is `alpha`.
    Alpha,
}

impl FitKind {
    pub fn name(self) -> &'static str {
        match self {
            FitKind::DecayLength => "decay-length",
            FitKind::PowerLaw => "power-law",
            FitKind::Alpha => "alpha",
        }
    }

    pub fn parse(s: &str) -> Option<FitKind> {
        match s {
            "decay-length" | "exp" => Some(FitKind::DecayLength),
            "power-law" | "power" => Some(FitKind::PowerLaw),
            "alpha" => Some(FitKind::Alpha),
            _ => None,
        }
    }
}

/// Inclusive scale window; values at or below `floor` are skipped.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitWindow {
    pub min: i64,
    pub max: i64,
    pub floor: f64,
}

impl FitWindow {
    pub fn new(min: i64, max: i64) -> Self {
        Self {
            min,
            max,
            floor: 1e-9,
        }
    }

    /// Drops `l = 0, 1` and tiny values.
    pub fn exponential_default() -> Self {
        Self::new(2, i64::MAX)
    }

    /// `l` in `[3, len / 2]` for a system of `len` sites along the axis.
    pub fn power_law_default(len: usize) -> Self {
        Self::new(3, len as i64 / 2)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitResult {
    pub kind: FitKind,
    pub estimate: f64,
    pub slope: f64,
    pub intercept: f64,
    pub window: (i64, i64),
    /// Relative residual `|A x - b| / |b|` of the log-space least-squares
    /// problem; rms deviation over `|alpha|` for the alpha fit.
    pub residual: f64,
    pub points: Vec<i64>,
    pub dropped: Vec<i64>,
    pub flag: Option<String>,
}

impl fmt::Display for FitResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {:.6} on [{}, {}] ({} points, residual {:.3e})",
            self.kind.name(),
            self.estimate,
            self.window.0,
            self.window.1,
            self.points.len(),
            self.residual
        )?;
        if let Some(flag) = &self.flag {
            write!(f, " [{flag}]")?;
        }
        Ok(())
    }
}

fn select(data: &BTreeMap<i64, f64>, w: &FitWindow, positive: bool) -> (Vec<(i64, f64)>, Vec<i64>) {
    let mut used = Vec::new();
    let mut dropped = Vec::new();
    for (&l, &v) in data.range(w.min..=w.max) {
        let ok = v.is_finite() && (!positive || v > w.floor) && (positive || v.abs() > w.floor);
        if ok && l > 0 {
            used.push((l, v));
        } else {
            dropped.push(l);
        }
    }
    (used, dropped)
}

fn too_few(used: &[(i64, f64)], dropped: &[i64]) -> Error {
    Error::Fit(format!(
        "{} usable points, need at least 3 (dropped scales {:?})",
        used.len(),
        dropped
    ))
}

struct Line {
    slope: f64,
    intercept: f64,
    relative_residual: f64,
}

fn linear_fit(xs: &[f64], ys: &[f64]) -> Line {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    let norm = ys.iter().map(|y| y * y).sum::<f64>().sqrt();
    let relative_residual = if norm > 0.0 {
        ss_res.sqrt() / norm
    } else {
        0.0
    };
    Line {
        slope,
        intercept,
        relative_residual,
    }
}

fn window_of(used: &[(i64, f64)]) -> (i64, i64) {
    (used[0].0, used[used.len() - 1].0)
}

/// Exponential decay fit `ln I(l) = -l / lambda + c`.
pub fn fit_decay_length(data: &BTreeMap<i64, f64>, w: &FitWindow) -> Result<FitResult> {
    let (used, dropped) = select(data, w, true);
    if used.len() < 3 {
        return Err(too_few(&used, &dropped));
    }
    let xs: Vec<f64> = used.iter().map(|p| p.0 as f64).collect();
    let ys: Vec<f64> = used.iter().map(|p| p.1.ln()).collect();
    let line = linear_fit(&xs, &ys);
    let flag = (line.slope >= 0.0).then(|| "not decaying".to_string());
    Ok(FitResult {
        kind: FitKind::DecayLength,
        estimate: -1.0 / line.slope,
        slope: line.slope,
        intercept: line.intercept,
        window: window_of(&used),
        residual: line.relative_residual,
        points: used.iter().map(|p| p.0).collect(),
        dropped,
        flag,
    })
}

/// Power-law fit `ln I(l) = p ln l + c`.
pub fn fit_power_law(data: &BTreeMap<i64, f64>, w: &FitWindow) -> Result<FitResult> {
    let (used, dropped) = select(data, w, true);
    if used.len() < 3 {
        return Err(too_few(&used, &dropped));
    }
    let xs: Vec<f64> = used.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = used.iter().map(|p| p.1.ln()).collect();
    let line = linear_fit(&xs, &ys);
    Ok(FitResult {
        kind: FitKind::PowerLaw,
        estimate: line.slope,
        slope: line.slope,
        intercept: line.intercept,
        window: window_of(&used),
        residual: line.relative_residual,
        points: used.iter().map(|p| p.0).collect(),
        dropped,
        flag: None,
    })
}

/// Mean of `i(l) l^2` over the window, with the spread as residual.
pub(crate) fn fit_constant_l2(data: &BTreeMap<i64, f64>, w: &FitWindow) -> Result<FitResult> {
    let (used, dropped) = select(data, w, false);
    if used.len() < 3 {
        return Err(too_few(&used, &dropped));
    }
    let vals: Vec<f64> = used.iter().map(|&(l, v)| v * (l * l) as f64).collect();
    let n = vals.len() as f64;
    let alpha = vals.iter().sum::<f64>() / n;
    let rms = (vals.iter().map(|v| (v - alpha).powi(2)).sum::<f64>() / n).sqrt();
    let residual = if alpha != 0.0 {
        rms / alpha.abs()
    } else {
        f64::INFINITY
    };
    let flag = (residual > 0.2).then(|| "no power-law plateau".to_string());
    Ok(FitResult {
        kind: FitKind::Alpha,
        estimate: alpha,
        slope: -2.0,
        intercept: alpha.abs().ln(),
        window: window_of(&used),
        residual,
        points: used.iter().map(|p| p.0).collect(),
        dropped,
        flag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synth(f: impl Fn(f64) -> f64) -> BTreeMap<i64, f64> {
        (0..12).map(|l| (l, f(l as f64))).collect()
    }

    #[test]
    fn exact_exponential() {
        let r = fit_decay_length(
            &synth(|l| 5.0 * 2f64.powf(-l)),
            &FitWindow::exponential_default(),
        )
        .unwrap();
        assert!((r.estimate - 1.0 / 2f64.ln()).abs() < 1e-10);
        assert!(r.residual < 1e-6);
        let r =
            fit_decay_length(&synth(|l| 0.3 * (-l / 3.0).exp()), &FitWindow::new(0, 11)).unwrap();
        assert!((r.estimate - 3.0).abs() < 1e-10);
    }

    #[test]
    fn exact_power_law() {
        let r = fit_power_law(&synth(|l| 0.7 / (l * l)), &FitWindow::new(1, 11)).unwrap();
        assert!((r.estimate + 2.0).abs() < 1e-10);
    }

    #[test]
    fn too_few_points_lists_dropped() {
        let d = synth(|l| if l < 6.0 { -1.0 } else { 1.0 });
        let e = fit_decay_length(&d, &FitWindow::new(2, 7)).unwrap_err();
        assert!(e.to_string().contains("[2, 3, 4, 5]"), "{e}");
    }

    #[test]
    fn growing_data_flagged() {
        let r = fit_decay_length(&synth(|l| (l / 2.0).exp()), &FitWindow::new(1, 8)).unwrap();
        assert!(r.flag.is_some());
    }

    #[test]
    fn alpha_from_exact_profile() {
        let r = fit_constant_l2(&synth(|l| 0.12 / (l * l)), &FitWindow::new(3, 8)).unwrap();
        assert!((r.estimate - 0.12).abs() < 1e-14);
        assert!(r.flag.is_none());
        let r = fit_constant_l2(&synth(|l| (-l).exp()), &FitWindow::new(3, 8)).unwrap();
        assert!(r.flag.is_some());
    }
}
