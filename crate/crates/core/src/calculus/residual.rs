use super::Field;
use crate::algebra::FieldValue;
use crate::Result;

/// Norms of one residual on one grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelNorms {
    /// Largest grid spacing.
    pub h: f64,
    /// Maximum nodal norm over interior nodes.
    pub max_norm: f64,
    /// Grid-weighted ℓ2 norm over interior nodes, `sqrt(Σ |r|² · cell volume)`.
    pub l2_norm: f64,
}

/// Residual norms of a named operator on one or more grids, coarsest first.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub operator: String,
    pub levels: Vec<LevelNorms>,
}

impl ResidualReport {
    pub fn new(operator: impl Into<String>) -> Self {
        ResidualReport {
            operator: operator.into(),
            levels: Vec::new(),
        }
    }

    /// Norms of a residual field, interior nodes only.
    pub fn from_field<V: FieldValue, const D: usize>(
        operator: impl Into<String>,
        residual: &Field<V, D>,
    ) -> Self {
        let grid = residual.grid();
        let (mut max, mut sum) = (0.0f64, 0.0f64);
        for i in grid.interior_indices() {
            let r = residual[i].norm();
            max = max.max(r);
            sum += r * r;
        }
        ResidualReport {
            operator: operator.into(),
            levels: vec![LevelNorms {
                h: grid.max_spacing(),
                max_norm: max,
                l2_norm: (sum * grid.cell_volume()).sqrt(),
            }],
        }
    }

    /// Run `level` on each refinement and merge the single-level reports.
    pub fn refine<T>(
        operator: impl Into<String>,
        inputs: impl IntoIterator<Item = T>,
        mut level: impl FnMut(T) -> Result<ResidualReport>,
    ) -> Result<Self> {
        let mut report = ResidualReport::new(operator);
        for input in inputs {
            report.levels.extend(level(input)?.levels);
        }
        Ok(report)
    }

    fn finest(&self) -> LevelNorms {
        *self.levels.last().expect("report has at least one level")
    }

    pub fn h(&self) -> f64 {
        self.finest().h
    }

    pub fn max_norm(&self) -> f64 {
        self.finest().max_norm
    }

    pub fn l2_norm(&self) -> f64 {
        self.finest().l2_norm
    }

    /// Observed order between consecutive levels, from the max norm.
    pub fn pairwise_orders(&self) -> Vec<f64> {
        self.levels
            .windows(2)
            .map(|w| (w[0].max_norm / w[1].max_norm).ln() / (w[0].h / w[1].h).ln())
            .collect()
    }

    /// Observed order between the two finest levels (the asymptotic range);
    /// only reported with at least three levels.
    pub fn order(&self) -> Option<f64> {
        if self.levels.len() < 3 {
            return None;
        }
        self.pairwise_orders().last().copied()
    }

    /// True when the residual converges at `min_order` or better, or is
    /// already below `floor` on the finest grid (exact up to rounding).
    pub fn converges(&self, min_order: f64, floor: f64) -> bool {
        if self.levels.is_empty() {
            return false;
        }
        if self.max_norm() <= floor {
            return true;
        }
        matches!(self.order(), Some(p) if p >= min_order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Grid;

    #[test]
    fn norms_skip_boundary() {
        let g = Grid::from_ranges([(0.0, 1.0)], [5]).unwrap();
        let f = Field::new(g, vec![100.0, 1.0, -2.0, 1.0, 100.0]).unwrap();
        let r = ResidualReport::from_field("t", &f);
        assert_eq!(r.max_norm(), 2.0);
        assert!((r.l2_norm() - (6.0f64 * 0.25).sqrt()).abs() < 1e-15);
        assert_eq!(r.order(), None);
    }

    #[test]
    fn order_needs_three_levels() {
        let lv = |h: f64| LevelNorms {
            h,
            max_norm: 3.0 * h * h,
            l2_norm: h * h,
        };
        let mut r = ResidualReport::new("t");
        r.levels = vec![lv(0.1), lv(0.05)];
        assert_eq!(r.order(), None);
        r.levels.push(lv(0.025));
        assert!((r.order().unwrap() - 2.0).abs() < 1e-12);
        assert!(r.converges(1.9, 0.0));
        assert!(!r.converges(2.1, 0.0));
        assert!(r.converges(2.1, 1.0));
    }
}
