use crate::{Error, Result};

/// Fewest nodes per axis; central differences need an interior.
pub const MIN_NODES: usize = 5;

/// Uniform tensor-product grid. Nodes are stored row-major with the last
/// axis varying fastest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<const D: usize> {
    origin: [f64; D],
    spacing: [f64; D],
    counts: [usize; D],
}

pub type Grid2 = Grid<2>;
pub type Grid3 = Grid<3>;

impl<const D: usize> Grid<D> {
    pub fn new(origin: [f64; D], spacing: [f64; D], counts: [usize; D]) -> Result<Self> {
        for axis in 0..D {
            if !(spacing[axis] > 0.0) || !spacing[axis].is_finite() || !origin[axis].is_finite() {
                return Err(Error::InvalidGrid(format!(
                    "axis {axis}: spacing {} must be positive and finite",
                    spacing[axis]
                )));
            }
            if counts[axis] < MIN_NODES {
                return Err(Error::GridTooSmall {
                    axis,
                    count: counts[axis],
                });
            }
        }
        Ok(Grid {
            origin,
            spacing,
            counts,
        })
    }

    /// Grid with `counts[k]` nodes spanning `ranges[k]` inclusively.
    pub fn from_ranges(ranges: [(f64, f64); D], counts: [usize; D]) -> Result<Self> {
        let mut spacing = [0.0; D];
        for axis in 0..D {
            let (a, b) = ranges[axis];
            if counts[axis] < 2 {
                return Err(Error::GridTooSmall {
                    axis,
                    count: counts[axis],
                });
            }
            spacing[axis] = (b - a) / (counts[axis] - 1) as f64;
        }
        Self::new(ranges.map(|r| r.0), spacing, counts)
    }

    pub fn origin(&self) -> [f64; D] {
        self.origin
    }

    pub fn spacing(&self) -> [f64; D] {
        self.spacing
    }

    pub fn counts(&self) -> [usize; D] {
        self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn max_spacing(&self) -> f64 {
        self.spacing.iter().cloned().fold(0.0, f64::max)
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    /// Upper end of `axis`.
    pub fn end(&self, axis: usize) -> f64 {
        self.coord(axis, self.counts[axis] - 1)
    }

    pub fn coord(&self, axis: usize, i: usize) -> f64 {
        self.origin[axis] + self.spacing[axis] * i as f64
    }

    pub fn stride(&self, axis: usize) -> usize {
        self.counts[axis + 1..].iter().product()
    }

    pub fn multi_index(&self, mut index: usize) -> [usize; D] {
        let mut m = [0; D];
        for axis in (0..D).rev() {
            m[axis] = index % self.counts[axis];
            index /= self.counts[axis];
        }
        m
    }

    pub fn linear_index(&self, m: [usize; D]) -> usize {
        m.iter()
            .zip(self.counts.iter())
            .fold(0, |acc, (&i, &n)| acc * n + i)
    }

    pub fn coords(&self, m: [usize; D]) -> [f64; D] {
        let mut x = [0.0; D];
        for axis in 0..D {
            x[axis] = self.coord(axis, m[axis]);
        }
        x
    }

    pub fn node_coords(&self, index: usize) -> [f64; D] {
        self.coords(self.multi_index(index))
    }

    pub fn is_interior(&self, m: [usize; D]) -> bool {
        (0..D).all(|a| m[a] > 0 && m[a] + 1 < self.counts[a])
    }

    pub fn interior_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.is_interior(self.multi_index(i)))
    }

    /// Same extent with every axis refined by `factor` (spacing divided).
    pub fn refined(&self, factor: usize) -> Self {
        let mut g = *self;
        for axis in 0..D {
            g.counts[axis] = (self.counts[axis] - 1) * factor + 1;
            g.spacing[axis] = self.spacing[axis] / factor as f64;
        }
        g
    }
}
