//! Parameter sweeps over a state family and zero-crossing location.

use std::collections::BTreeMap;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{Method, Options};
use crate::error::{Error, Result};
use crate::states::FamilySpec;

/// Values within this distance of zero count as touching zero at a bracket end.
pub const ZERO_TOUCH: f64 = 1e-9;
pub const DEFAULT_THRESHOLD_TOL: f64 = 1e-6;

/// Inclusive grid parsed from `start:end:step`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
}

impl Grid {
    /// Points `start, start + step, ...`; the last point is snapped to `end`
    /// when it lands within half a step of it.
    pub fn new(start: f64, end: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && end.is_finite() && step.is_finite()) {
            return Err(Error::InvalidGrid("non-finite value".into()));
        }
        if !(0.0..=1.0).contains(&start) || !(0.0..=1.0).contains(&end) {
            return Err(Error::InvalidGrid(format!(
                "range [{start}, {end}] not inside [0, 1]"
            )));
        }
        if start > end {
            return Err(Error::InvalidGrid(format!("start {start} > end {end}")));
        }
        if step.is_nan() || step <= 0.0 {
            return Err(Error::InvalidGrid(format!(
                "step must be positive, got {step}"
            )));
        }
        let k = ((end - start) / step + 0.5).floor() as usize;
        let mut points: Vec<f64> = (0..=k).map(|i| start + i as f64 * step).collect();
        if k > 0 {
            points[k] = end;
        }
        Ok(Self { points })
    }

    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidGrid("no points".into()));
        }
        if points.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::InvalidGrid("points must lie in [0, 1]".into()));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid(
                "points must be strictly increasing".into(),
            ));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(Error::InvalidGrid(format!(
                "expected start:end:step, got {s:?}"
            )));
        };
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidGrid(format!("bad number {x:?}")))
        };
        Grid::new(num(a)?, num(b)?, num(c)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    PosToNeg,
    NegToPos,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::PosToNeg => "pos_to_neg",
            Direction::NegToPos => "neg_to_pos",
        }
    }
}

/// Adjacent grid points between which a method's value changes sign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub method: Method,
    pub lo: f64,
    pub hi: f64,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub parameter: String,
    pub grid: Vec<f64>,
    pub values: BTreeMap<Method, Vec<f64>>,
    pub crossings: Vec<Crossing>,
}

/// Sign changes in `values` over `grid`, treating `v > 0` as positive.
pub fn find_crossings(method: Method, grid: &[f64], values: &[f64]) -> Vec<Crossing> {
    grid.windows(2)
        .zip(values.windows(2))
        .filter_map(|(p, v)| {
            let (a, b) = (v[0] > 0.0, v[1] > 0.0);
            (a != b).then(|| Crossing {
                method,
                lo: p[0],
                hi: p[1],
                direction: if a {
                    Direction::PosToNeg
                } else {
                    Direction::NegToPos
                },
            })
        })
        .collect()
}

/// Evaluates every method at every grid point of the family's `p`.
///
/// Grid points are evaluated in parallel; output order follows the grid.
pub fn sweep(
    spec: &FamilySpec,
    methods: &[Method],
    grid: &Grid,
    opts: &Options,
) -> Result<SweepResult> {
    if methods.is_empty() {
        return Err(Error::InvalidArgument("no methods requested".into()));
    }
    let rows: Vec<Vec<f64>> = grid
        .points()
        .par_iter()
        .map(|&p| {
            let (rho, layout) = spec.at(p).build(opts.max_dim)?;
            methods
                .iter()
                .map(|m| m.evaluate(&rho, &layout, opts).map(|r| r.value))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;

    let mut values = BTreeMap::new();
    let mut crossings = Vec::new();
    for (j, &m) in methods.iter().enumerate() {
        let column: Vec<f64> = rows.iter().map(|r| r[j]).collect();
        crossings.extend(find_crossings(m, grid.points(), &column));
        values.insert(m, column);
    }
    Ok(SweepResult {
        parameter: "p".into(),
        grid: grid.points().to_vec(),
        values,
        crossings,
    })
}

/// Outcome of bracketed bisection on a bound value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub method: Method,
    pub p_star: f64,
    /// Half-width of the final bracket around `p_star`.
    pub width: f64,
    pub iterations: usize,
    pub direction: Direction,
}

/// Root of a scalar function by bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    pub root: f64,
    pub width: f64,
    pub iterations: usize,
    pub direction: Direction,
}

/// Bisects `[lo, hi]` until its width is at most `tol`.
///
/// The endpoints must straddle zero, or one of them must already be within
/// [`ZERO_TOUCH`] of it.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<Bisection>
where
    F: FnMut(f64) -> Result<f64>,
{
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::InvalidArgument(format!(
            "empty bracket [{lo}, {hi}]"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let (f_lo, f_hi) = (f(lo)?, f(hi)?);
    let direction = if f_lo > 0.0 {
        Direction::PosToNeg
    } else {
        Direction::NegToPos
    };
    for (p, v) in [(lo, f_lo), (hi, f_hi)] {
        if v.abs() <= ZERO_TOUCH {
            return Ok(Bisection {
                root: p,
                width: 0.0,
                iterations: 0,
                direction,
            });
        }
    }
    if (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    }
    let lo_positive = f_lo > 0.0;
    let (mut a, mut b) = (lo, hi);
    let mut iterations = 0;
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let v = f(mid)?;
        iterations += 1;
        if v == 0.0 {
            return Ok(Bisection {
                root: mid,
                width: 0.0,
                iterations,
                direction,
            });
        }
        if (v > 0.0) == lo_positive {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(Bisection {
        root: 0.5 * (a + b),
        width: 0.5 * (b - a),
        iterations,
        direction,
    })
}

/// Locates the `p` where `method`'s bound on the family crosses zero.
pub fn threshold(
    spec: &FamilySpec,
    method: Method,
    lo: f64,
    hi: f64,
    tol: f64,
    opts: &Options,
) -> Result<ThresholdResult> {
    for p in [lo, hi] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ParameterOutOfRange(p));
        }
    }
    let eval = |p: f64| -> Result<f64> {
        let (rho, layout) = spec.at(p).build(opts.max_dim)?;
        Ok(method.evaluate(&rho, &layout, opts)?.value)
    };
    let b = bisect(eval, lo, hi, tol)?;
    Ok(ThresholdResult {
        method,
        p_star: b.root,
        width: b.width,
        iterations: b.iterations,
        direction: b.direction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::Family;

    #[test]
    fn grid_parsing() {
        let g: Grid = "0:1:0.25".parse().unwrap();
        assert_eq!(g.points(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        let g: Grid = "0:1:0.001".parse().unwrap();
        assert_eq!(g.len(), 1001);
        assert_eq!(*g.points().last().unwrap(), 1.0);
        assert!(g.points().windows(2).all(|w| w[0] < w[1]));
        let g: Grid = "0.5:0.5:0.1".parse().unwrap();
        assert_eq!(g.points(), &[0.5]);
        // 0:1:0.3 -> 0, 0.3, 0.6, then 0.9 snapped to 1 (within half a step)
        let g: Grid = "0:1:0.3".parse().unwrap();
        assert_eq!(g.points(), &[0.0, 0.3, 0.6, 1.0]);
    }

    #[test]
    fn grid_errors() {
        for bad in [
            "0:1",
            "0:2:0.1",
            "0.5:0.2:0.1",
            "0:1:0",
            "0:1:-1",
            "a:1:0.1",
        ] {
            assert!(bad.parse::<Grid>().is_err(), "{bad}");
        }
        assert!(Grid::from_points(vec![0.2, 0.1]).is_err());
    }

    #[test]
    fn crossings_detected() {
        let grid = [0.0, 0.1, 0.2, 0.3];
        let c = find_crossings(Method::Lemma3, &grid, &[1.0, -1.0, -0.5, 2.0]);
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].direction, Direction::PosToNeg);
        assert_eq!((c[0].lo, c[0].hi), (0.0, 0.1));
        assert_eq!(c[1].direction, Direction::NegToPos);
        assert!(find_crossings(Method::Lemma3, &[0.5], &[1.0]).is_empty());
    }

    #[test]
    fn bisect_finds_sqrt2() {
        let b = bisect(|x| Ok(x * x - 2.0), 1.0, 2.0, 1e-10).unwrap();
        assert!((b.root - 2f64.sqrt()).abs() < 1e-10);
        assert!(b.width <= 0.5e-10);
        assert_eq!(b.direction, Direction::NegToPos);
    }

    #[test]
    fn bisect_no_sign_change() {
        assert!(matches!(
            bisect(|x| Ok(x + 1.0), 0.0, 1.0, 1e-6),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn bisect_touching_zero() {
        let b = bisect(Ok, 0.0, 1.0, 1e-6).unwrap();
        assert_eq!(b.root, 0.0);
        assert_eq!(b.iterations, 0);
    }

    #[test]
    fn single_point_sweep() {
        let spec = FamilySpec::new(Family::GhzWMixture);
        let grid: Grid = "0.3:0.3:0.1".parse().unwrap();
        let r = sweep(&spec, &[Method::Lemma3], &grid, &Options::default()).unwrap();
        assert_eq!(r.grid.len(), 1);
        assert!(r.crossings.is_empty());
    }

    #[test]
    fn ghz_w_threshold_near_lower_crossing() {
        let spec = FamilySpec::new(Family::GhzWMixture);
        let t = threshold(&spec, Method::Lemma3, 0.05, 0.2, 1e-6, &Options::default()).unwrap();
        assert!(t.width <= 0.5e-6);
        assert_eq!(t.direction, Direction::PosToNeg);
        assert!((t.p_star - 0.113).abs() < 0.005);
    }
}
