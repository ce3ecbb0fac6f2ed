//! Check rows and their CSV form.
//!
//! Every row carries `check_id, anchor, h, max_norm, l2_norm, slope,
//! threshold, status`. Convergence checks emit one row per grid level; the
//! verdict sits on the finest level and coarser rows have status `level`.
//! Scalar checks (determinants, orders of the integrator, algebra
//! identities) put the measured value in `max_norm` or `slope`.

use bers_core::ResidualReport;
use std::io::Write;
use std::path::Path;

pub const COLUMNS: [&str; 8] = [
    "check_id",
    "anchor",
    "h",
    "max_norm",
    "l2_norm",
    "slope",
    "threshold",
    "status",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Intermediate refinement level of a convergence check.
    Level,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Level => "level",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub check_id: String,
    pub anchor: String,
    pub h: Option<f64>,
    pub max_norm: Option<f64>,
    pub l2_norm: Option<f64>,
    pub slope: Option<f64>,
    pub threshold: f64,
    pub status: Status,
}

/// Deterministic float formatting; absent values are empty cells and
/// negative zero prints as zero.
pub fn fmt(v: Option<f64>) -> String {
    v.map(|x| format!("{:.9e}", x + 0.0)).unwrap_or_default()
}

#[derive(Debug, Default)]
pub struct Report {
    rows: Vec<CheckRow>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn rows(&self) -> &[CheckRow] {
        &self.rows
    }

    pub fn failures(&self) -> Vec<&CheckRow> {
        self.rows.iter().filter(|r| r.status == Status::Fail).collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    /// One row per level; passes when the observed order between the two
    /// finest levels reaches `min_order` or the finest residual is below
    /// `floor`.
    pub fn convergence(&mut self, id: &str, anchor: &str, r: &ResidualReport, min_order: f64, floor: f64) {
        let orders = r.pairwise_orders();
        let last = r.levels.len() - 1;
        for (k, level) in r.levels.iter().enumerate() {
            self.rows.push(CheckRow {
                check_id: id.into(),
                anchor: anchor.into(),
                h: Some(level.h),
                max_norm: Some(level.max_norm),
                l2_norm: Some(level.l2_norm),
                slope: k.checked_sub(1).map(|j| orders[j]),
                threshold: min_order,
                status: if k == last {
                    Status::from_bool(r.converges(min_order, floor))
                } else {
                    Status::Level
                },
            });
        }
    }

    /// Several residuals of the same kind on the same levels (randomised
    /// cases). Norms are the worst case per level; the slope is the smallest
    /// observed order among cases that are not already below `floor`, and
    /// the check passes only if every case converges.
    pub fn convergence_all(&mut self, id: &str, anchor: &str, cases: &[ResidualReport], min_order: f64, floor: f64) {
        let levels = cases[0].levels.len();
        let last = levels - 1;
        for k in 0..levels {
            let worst = |f: fn(&bers_core::calculus::LevelNorms) -> f64| {
                cases.iter().map(|c| f(&c.levels[k])).fold(0.0, f64::max)
            };
            let slope = (k > 0).then(|| {
                cases
                    .iter()
                    .filter(|c| c.levels[k].max_norm > floor)
                    .map(|c| c.pairwise_orders()[k - 1])
                    .fold(f64::INFINITY, f64::min)
            });
            self.rows.push(CheckRow {
                check_id: id.into(),
                anchor: anchor.into(),
                h: Some(cases[0].levels[k].h),
                max_norm: Some(worst(|l| l.max_norm)),
                l2_norm: Some(worst(|l| l.l2_norm)),
                // every case at the floor: no order to report
                slope: slope.filter(|s| s.is_finite()),
                threshold: min_order,
                status: if k == last {
                    Status::from_bool(cases.iter().all(|c| c.converges(min_order, floor)))
                } else {
                    Status::Level
                },
            });
        }
    }

    /// Passes when `value ≤ threshold`.
    pub fn at_most(&mut self, id: &str, anchor: &str, h: Option<f64>, value: f64, threshold: f64) {
        self.rows.push(CheckRow {
            check_id: id.into(),
            anchor: anchor.into(),
            h,
            max_norm: Some(value),
            l2_norm: None,
            slope: None,
            threshold,
            status: Status::from_bool(value <= threshold),
        });
    }

    /// Passes when `value > threshold`.
    pub fn above(&mut self, id: &str, anchor: &str, h: Option<f64>, value: f64, threshold: f64) {
        self.rows.push(CheckRow {
            check_id: id.into(),
            anchor: anchor.into(),
            h,
            max_norm: Some(value),
            l2_norm: None,
            slope: None,
            threshold,
            status: Status::from_bool(value > threshold),
        });
    }

    /// An observed order, reported in the slope column; passes when it
    /// reaches `min_order`.
    pub fn order(&mut self, id: &str, anchor: &str, h: Option<f64>, order: f64, min_order: f64) {
        self.rows.push(CheckRow {
            check_id: id.into(),
            anchor: anchor.into(),
            h,
            max_norm: None,
            l2_norm: None,
            slope: Some(order),
            threshold: min_order,
            status: Status::from_bool(order >= min_order),
        });
    }

    pub fn write_csv(&self, w: impl Write) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(COLUMNS)?;
        for r in &self.rows {
            out.write_record([
                r.check_id.clone(),
                r.anchor.clone(),
                fmt(r.h),
                fmt(r.max_norm),
                fmt(r.l2_norm),
                fmt(r.slope),
                fmt(Some(r.threshold)),
                r.status.as_str().to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn save(&self, path: &Path) -> csv::Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bers_core::calculus::LevelNorms;

    fn report(maxes: &[f64]) -> ResidualReport {
        ResidualReport {
            operator: "r".into(),
            levels: maxes
                .iter()
                .enumerate()
                .map(|(k, &m)| LevelNorms {
                    h: 0.5f64.powi(k as i32),
                    max_norm: m,
                    l2_norm: m / 2.0,
                })
                .collect(),
        }
    }

    fn csv(r: &Report) -> String {
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn convergence_rows() {
        let mut r = Report::new();
        r.convergence("c", "anchor", &report(&[1.0, 0.25, 0.0625]), 1.9, 0.0);
        r.convergence("d", "anchor", &report(&[1.0, 0.5, 0.25]), 1.9, 0.0);
        let text = csv(&r);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], COLUMNS.join(","));
        assert_eq!(
            lines[1],
            "c,anchor,1.000000000e0,1.000000000e0,5.000000000e-1,,1.900000000e0,level"
        );
        assert!(lines[3].ends_with("2.000000000e0,1.900000000e0,pass"), "{}", lines[3]);
        assert!(lines[6].ends_with("fail"));
        assert_eq!(r.failures().len(), 1);
    }

    #[test]
    fn worst_case_aggregation() {
        let mut r = Report::new();
        let good = report(&[1.0, 0.25, 0.0625]);
        let exact = report(&[0.0, 0.0, 0.0]);
        r.convergence_all("g", "a", &[good.clone(), exact.clone()], 1.9, 1e-12);
        assert!(r.passed());
        assert_eq!(r.rows()[2].slope, Some(2.0));
        let stalled = report(&[0.1, 0.1, 0.1]);
        r.convergence_all("g", "a", &[good, stalled], 1.9, 1e-12);
        assert!(!r.passed());
        // the stalled case caps the reported order
        assert_eq!(r.rows()[5].slope, Some(0.0));
        let mut r = Report::new();
        r.convergence_all("z", "a", &[exact], 1.9, 1e-12);
        assert!(r.passed() && r.rows()[2].slope.is_none());
    }

    #[test]
    fn formatting() {
        assert_eq!(fmt(Some(-0.0)), "0.000000000e0");
        assert_eq!(fmt(Some(-1.5e-7)), "-1.500000000e-7");
        assert_eq!(fmt(None), "");
    }

    #[test]
    fn scalar_rows() {
        let mut r = Report::new();
        r.at_most("a", "x", None, 1e-13, 1e-12);
        r.above("b", "x", Some(0.5), 0.1, 0.1);
        r.order("c", "x", None, 4.0, 3.9);
        let s: Vec<Status> = r.rows().iter().map(|x| x.status).collect();
        assert_eq!(s, [Status::Pass, Status::Fail, Status::Pass]);
        assert!(csv(&r).contains("c,x,,,,4.000000000e0,3.900000000e0,pass"));
    }
}
