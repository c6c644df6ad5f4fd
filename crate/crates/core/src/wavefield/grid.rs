use num_complex::Complex64;
use rayon::prelude::*;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use super::fields::{cartesian_field, eval_a, eval_a32, Evaluation};
use super::{check_gamma, WaveError};

/// Coordinate frame of a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    /// Curvilinear `(S, N)`.
    Sn,
    /// Parabolic `(X, Y)`, or Cartesian `(x, y)` when a carrier `k` is given.
    Xy,
    Cartesian,
}

impl Frame {
    pub fn as_str(self) -> &'static str {
        match self {
            Frame::Sn => "sn",
            Frame::Xy => "xy",
            Frame::Cartesian => "cartesian",
        }
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Frame {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sn" => Ok(Frame::Sn),
            "xy" => Ok(Frame::Xy),
            "cartesian" => Ok(Frame::Cartesian),
            other => Err(format!("unknown frame '{other}' (expected sn, xy or cartesian)")),
        }
    }
}

/// Which field a grid samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldMode {
    /// `A(S, N)`.
    A,
    /// `Ã₃₂(X, Y)`.
    A32,
    /// `−2e^{ikx} Ã₃₂(k^{1/5}x, k^{3/5}y)`.
    Cartesian { k: f64 },
}

/// Uniform axis `min, min + step, …, max` with `count` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisSpec {
    pub fn new(min: f64, max: f64, count: usize) -> Self {
        Self { min, max, count }
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.count <= 1 {
            return self.min;
        }
        let t = i as f64 / (self.count - 1) as f64;
        // Exact at both ends.
        if i + 1 == self.count {
            self.max
        } else {
            self.min + (self.max - self.min) * t
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

impl FromStr for AxisSpec {
    type Err = String;
    /// Parses `min:max:count`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("range '{s}' must look like min:max:count"));
        }
        let min: f64 = parts[0].trim().parse().map_err(|_| format!("bad range minimum '{}'", parts[0]))?;
        let max: f64 = parts[1].trim().parse().map_err(|_| format!("bad range maximum '{}'", parts[1]))?;
        let count: usize = parts[2].trim().parse().map_err(|_| format!("bad range count '{}'", parts[2]))?;
        if !(min.is_finite() && max.is_finite()) {
            return Err(format!("range '{s}' has non-finite bounds"));
        }
        if count == 0 {
            return Err(format!("range '{s}' is empty"));
        }
        if count > 1 && max < min {
            return Err(format!("range '{s}' has max < min"));
        }
        Ok(Self { min, max, count })
    }
}

/// A sample whose quadrature missed its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleIssue {
    pub index: usize,
    pub coord1: f64,
    pub coord2: f64,
    pub error_estimate: f64,
}

/// Sampled field on a rectangular grid, stored with `coord2` varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    pub frame: Frame,
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    pub gamma: f64,
    pub k: Option<f64>,
    pub samples: Vec<Complex64>,
    pub unconverged: Vec<SampleIssue>,
}

impl FieldGrid {
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.samples[i * self.axis2.count + j]
    }

    /// CSV with a three-line header: `frame,gamma,k`, its values, then the
    /// column names `coord1,coord2,re,im,abs`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "frame,gamma,k")?;
        let k = self.k.map(fmt_num).unwrap_or_default();
        writeln!(w, "{},{},{}", self.frame, fmt_num(self.gamma), k)?;
        writeln!(w, "coord1,coord2,re,im,abs")?;
        for i in 0..self.axis1.count {
            let a = self.axis1.value(i);
            for j in 0..self.axis2.count {
                let v = self.get(i, j);
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    fmt_num(a),
                    fmt_num(self.axis2.value(j)),
                    fmt_num(v.re),
                    fmt_num(v.im),
                    fmt_num(v.norm())
                )?;
            }
        }
        Ok(())
    }
}

/// 17 significant digits in scientific notation.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Evaluates `mode` on the grid `axis1 × axis2` with `jobs` worker threads.
///
/// Samples are independent and written by index, so the output does not
/// depend on `jobs`. Unconverged samples are reported, not fatal; a hard
/// quadrature failure aborts the grid.
pub fn grid_eval(
    frame: Frame,
    axis1: AxisSpec,
    axis2: AxisSpec,
    gamma: f64,
    mode: FieldMode,
    tol: f64,
    jobs: usize,
) -> Result<FieldGrid, WaveError> {
    check_gamma(gamma)?;
    if axis1.count == 0 || axis2.count == 0 {
        return Err(WaveError::InvalidArgument("grid axes must be nonempty".into()));
    }
    let k = match mode {
        FieldMode::Cartesian { k } => Some(k),
        _ => None,
    };
    let total = axis1.count * axis2.count;
    let eval = |idx: usize| -> Result<Evaluation, WaveError> {
        let a = axis1.value(idx / axis2.count);
        let b = axis2.value(idx % axis2.count);
        match mode {
            FieldMode::A => eval_a(a, b, gamma, tol),
            FieldMode::A32 => eval_a32(a, b, gamma, tol),
            FieldMode::Cartesian { k } => cartesian_field(a, b, k, gamma, tol),
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| WaveError::InvalidArgument(format!("thread pool: {e}")))?;
    let results: Vec<Result<Evaluation, WaveError>> =
        pool.install(|| (0..total).into_par_iter().map(eval).collect());

    let mut samples = Vec::with_capacity(total);
    let mut unconverged = Vec::new();
    for (idx, r) in results.into_iter().enumerate() {
        let e = r?;
        if !e.value.is_finite() {
            return Err(WaveError::Quad(crate::quad::QuadError::NonFinite));
        }
        if !e.converged {
            unconverged.push(SampleIssue {
                index: idx,
                coord1: axis1.value(idx / axis2.count),
                coord2: axis2.value(idx % axis2.count),
                error_estimate: e.error_estimate,
            });
        }
        samples.push(e.value);
    }
    Ok(FieldGrid { frame, axis1, axis2, gamma, k, samples, unconverged })
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: f64 = 4.0 / 9.0;

    #[test]
    fn parses_ranges() {
        let a: AxisSpec = "-10:10:200".parse().unwrap();
        assert_eq!(a, AxisSpec::new(-10.0, 10.0, 200));
        assert_eq!(a.value(0), -10.0);
        assert_eq!(a.value(199), 10.0);
        assert!("1:2".parse::<AxisSpec>().is_err());
        assert!("1:2:0".parse::<AxisSpec>().is_err());
        assert!("3:2:5".parse::<AxisSpec>().is_err());
        assert_eq!("0.5:0.5:1".parse::<AxisSpec>().unwrap().values(), vec![0.5]);
    }

    #[test]
    fn small_grid_matches_pointwise() {
        let ax1 = AxisSpec::new(-1.0, 1.0, 2);
        let ax2 = AxisSpec::new(0.0, 2.0, 2);
        let g = grid_eval(Frame::Sn, ax1, ax2, G, FieldMode::A, 1e-10, 2).unwrap();
        assert_eq!(g.samples.len(), 4);
        for i in 0..2 {
            for j in 0..2 {
                let want = eval_a(ax1.value(i), ax2.value(j), G, 1e-10).unwrap().value;
                assert_eq!(g.get(i, j), want);
            }
        }
        let mut out = Vec::new();
        g.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 3 + 4);
        assert!(text.starts_with("frame,gamma,k\nsn,4.4444444444444442e-1,\ncoord1,coord2,re,im,abs\n"));
    }
}
