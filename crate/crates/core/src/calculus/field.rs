use super::Grid;
use crate::algebra::FieldValue;
use crate::{Error, Result};
use std::ops::Index;

/// One value per node of a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Field<V, const D: usize> {
    grid: Grid<D>,
    values: Vec<V>,
}

impl<V: Copy, const D: usize> Field<V, D> {
    pub fn new(grid: Grid<D>, values: Vec<V>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidInput(format!(
                "field has {} values for {} nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(Field { grid, values })
    }

    pub fn from_fn(grid: Grid<D>, f: impl Fn([f64; D]) -> V) -> Self {
        let values = (0..grid.len()).map(|i| f(grid.node_coords(i))).collect();
        Field { grid, values }
    }

    pub fn try_from_fn(grid: Grid<D>, f: impl Fn([f64; D]) -> Result<V>) -> Result<Self> {
        let values = (0..grid.len())
            .map(|i| f(grid.node_coords(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Field { grid, values })
    }

    pub fn constant(grid: Grid<D>, v: V) -> Self {
        Field {
            grid,
            values: vec![v; grid.len()],
        }
    }

    pub fn grid(&self) -> &Grid<D> {
        &self.grid
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn into_values(self) -> Vec<V> {
        self.values
    }

    pub fn at(&self, m: [usize; D]) -> V {
        self.values[self.grid.linear_index(m)]
    }

    pub fn map<W: Copy>(&self, f: impl Fn(V) -> W) -> Field<W, D> {
        Field {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Nodewise map that also receives node coordinates.
    pub fn map_with_coords<W: Copy>(&self, f: impl Fn([f64; D], V) -> W) -> Field<W, D> {
        Field {
            grid: self.grid,
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(i, &v)| f(self.grid.node_coords(i), v))
                .collect(),
        }
    }

    pub fn zip_with<U: Copy, W: Copy>(
        &self,
        other: &Field<U, D>,
        f: impl Fn(V, U) -> W,
    ) -> Result<Field<W, D>> {
        self.check_grid(other.grid())?;
        Ok(Field {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn check_grid(&self, other: &Grid<D>) -> Result<()> {
        if &self.grid != other {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }
}

impl<V: FieldValue, const D: usize> Field<V, D> {
    pub fn max_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn all_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn add(&self, other: &Field<V, D>) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Field<V, D>) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|v| v * s)
    }
}

impl<V, const D: usize> Index<usize> for Field<V, D> {
    type Output = V;

    fn index(&self, i: usize) -> &V {
        &self.values[i]
    }
}
