//! Equidistant grids, sampled datasets, and the affine normalization that
//! maps both axes onto [-1, 1] ahead of fitting.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::transform::{t2_forward, AffineMap};
use std::io::{BufRead, Write};

/// `n` equally spaced points on `[a, b]`, spacing `h = (b - a)/(n - 1)`.
///
/// Points are generated as `a + i*h` rather than by cumulative addition, so
/// the per-point error stays bounded; the two endpoints are returned exactly.
#[derive(Clone, Debug)]
pub struct Grid<S> {
    a: S,
    b: S,
    n: usize,
    h: S,
}

impl<S: Scalar> Grid<S> {
    pub fn new(a: S, b: S, n: usize) -> Result<Self> {
        if !(b > a) {
            return Err(Error::InvalidDomain {
                a: a.to_f64(),
                b: b.to_f64(),
            });
        }
        if n < 2 {
            return Err(Error::InvalidCount { need: 2, got: n });
        }
        let h = (b - a) / S::from_usize(n - 1);
        Ok(Grid { a, b, n, h })
    }

    pub fn a(&self) -> S {
        self.a
    }

    pub fn b(&self) -> S {
        self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> S {
        self.h
    }

    /// The i-th abscissa. Endpoints are exact; interior points are `a + i*h`.
    pub fn point(&self, i: usize) -> S {
        debug_assert!(i < self.n);
        if i == 0 {
            self.a
        } else if i == self.n - 1 {
            self.b
        } else {
            self.a + S::from_usize(i) * self.h
        }
    }

    pub fn points(&self) -> Vec<S> {
        (0..self.n).map(|i| self.point(i)).collect()
    }
}

/// The pair of affine maps that normalized a dataset: `x_map` sends the
/// source interval onto [-1, 1], `y_map` sends the observed value range
/// onto [-1, 1] (or shifts a constant signal to zero).
#[derive(Clone, Debug)]
pub struct NormalizationRecord<S> {
    pub x_map: AffineMap<S>,
    pub y_map: AffineMap<S>,
}

/// Paired samples `(x_i, y_i)` on an equidistant grid, optionally carrying
/// the record of the normalization that produced them.
#[derive(Clone, Debug)]
pub struct Dataset<S> {
    grid: Grid<S>,
    y: Vec<S>,
    norm: Option<NormalizationRecord<S>>,
}

impl<S: Scalar> Dataset<S> {
    pub fn new(grid: Grid<S>, y: Vec<S>) -> Result<Self> {
        if y.len() != grid.n() {
            return Err(Error::ShapeMismatch {
                left: grid.n(),
                right: y.len(),
            });
        }
        Ok(Dataset {
            grid,
            y,
            norm: None,
        })
    }

    /// Wrap samples as if already normalized: grid on [-1, 1], identity
    /// maps recorded so back-transformation is a no-op. The y values are
    /// taken as-is (exact basis-function samples may exceed [-1, 1]).
    pub fn from_normalized(y: Vec<S>) -> Result<Self> {
        let one = S::one();
        let grid = Grid::new(-one, one, y.len())?;
        Ok(Dataset {
            grid,
            y,
            norm: Some(NormalizationRecord {
                x_map: AffineMap::identity(),
                y_map: AffineMap::identity(),
            }),
        })
    }

    pub fn grid(&self) -> &Grid<S> {
        &self.grid
    }

    pub fn y(&self) -> &[S] {
        &self.y
    }

    pub fn norm(&self) -> Option<&NormalizationRecord<S>> {
        self.norm.as_ref()
    }

    pub fn is_normalized(&self) -> bool {
        self.norm.is_some()
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    /// Ingest two numeric columns (x, y), comma- or whitespace-separated,
    /// with an optional single header line. The x column must be strictly
    /// increasing and equidistant to within `1e-8 * (b - a)`; the grid is
    /// then reconstructed from the endpoints, which the estimators rely on.
    /// Row numbers in errors are 1-based over the data rows.
    pub fn load<R: BufRead>(reader: R) -> Result<Self> {
        let mut xs: Vec<f64> = Vec::new();
        let mut ys: Vec<f64> = Vec::new();
        let mut header_allowed = true;
        for line in reader.lines() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            let fields: Vec<&str> = if t.contains(',') {
                t.split(',').map(str::trim).collect()
            } else {
                t.split_whitespace().collect()
            };
            let row = xs.len() + 1;
            let parsed = if fields.len() == 2 {
                match (fields[0].parse::<f64>(), fields[1].parse::<f64>()) {
                    (Ok(x), Ok(y)) => Some((x, y)),
                    _ => None,
                }
            } else {
                None
            };
            match parsed {
                Some((x, y)) if x.is_finite() && y.is_finite() => {
                    header_allowed = false;
                    xs.push(x);
                    ys.push(y);
                }
                _ => {
                    if header_allowed {
                        // one non-numeric line up front is a header
                        header_allowed = false;
                        continue;
                    }
                    return Err(Error::Parse {
                        row,
                        detail: format!("expected two numeric columns, got {t:?}"),
                    });
                }
            }
        }
        let n = xs.len();
        if n < 2 {
            return Err(Error::InvalidCount { need: 2, got: n });
        }
        for i in 1..n {
            if xs[i] <= xs[i - 1] {
                return Err(Error::NotIncreasing { row: i + 1 });
            }
        }
        let span = xs[n - 1] - xs[0];
        let mean_h = span / (n - 1) as f64;
        let tolerance = 1e-8 * span.abs();
        let mut worst = (0.0f64, 1usize);
        for i in 0..(n - 1) {
            let dev = ((xs[i + 1] - xs[i]) - mean_h).abs();
            if dev >= worst.0 {
                // ties resolve to the later row
                worst = (dev, i + 2);
            }
        }
        if worst.0 > tolerance {
            return Err(Error::NotEquidistant {
                row: worst.1,
                deviation: worst.0,
                tolerance,
            });
        }
        let grid = Grid::new(S::from_f64(xs[0]), S::from_f64(xs[n - 1]), n)?;
        Dataset::new(grid, ys.into_iter().map(S::from_f64).collect())
    }

    /// Write as `x,y` lines at 17 significant digits, the round-trip-exact
    /// width for binary doubles.
    pub fn save<W: Write>(&self, mut writer: W) -> std::io::Result<()> {
        for i in 0..self.n() {
            writeln!(
                writer,
                "{:.16e},{:.16e}",
                self.grid.point(i).to_f64(),
                self.y[i].to_f64()
            )?;
        }
        Ok(())
    }

    /// Return a copy mapped onto [-1, 1] on both axes, with the applied
    /// maps recorded. A constant y signal is shifted to zero rather than
    /// scaled (scale 1, offset -y_min).
    pub fn normalize(&self) -> Result<Dataset<S>> {
        if self.norm.is_some() {
            return Err(Error::AlreadyNormalized);
        }
        let x_map = t2_forward(self.grid.a(), self.grid.b())?;
        let mut y_min = self.y[0];
        let mut y_max = self.y[0];
        for &v in &self.y {
            y_min = y_min.minimum(v);
            y_max = y_max.maximum(v);
        }
        let y_map = if y_max == y_min {
            AffineMap::new(S::one(), -y_min)?
        } else {
            let scale = S::from_f64(2.0) / (y_max - y_min);
            let offset = -(y_min + y_max) / (y_max - y_min);
            AffineMap::new(scale, offset)?
        };
        let one = S::one();
        let y: Vec<S> = self
            .y
            .iter()
            .map(|&v| y_map.apply(v).minimum(one).maximum(-one))
            .collect();
        let grid = Grid::new(-one, one, self.n())?;
        Ok(Dataset {
            grid,
            y,
            norm: Some(NormalizationRecord { x_map, y_map }),
        })
    }

    /// Re-express the dataset in another working precision (via f64, which
    /// is exact for data that was ever serialized).
    pub fn convert<T: Scalar>(&self) -> Result<Dataset<T>> {
        let grid = Grid::new(
            T::from_f64(self.grid.a().to_f64()),
            T::from_f64(self.grid.b().to_f64()),
            self.n(),
        )?;
        let y = self.y.iter().map(|v| T::from_f64(v.to_f64())).collect();
        let norm = self.norm.as_ref().map(|r| NormalizationRecord {
            x_map: AffineMap {
                scale: T::from_f64(r.x_map.scale.to_f64()),
                offset: T::from_f64(r.x_map.offset.to_f64()),
            },
            y_map: AffineMap {
                scale: T::from_f64(r.y_map.scale.to_f64()),
                offset: T::from_f64(r.y_map.offset.to_f64()),
            },
        });
        Ok(Dataset { grid, y, norm })
    }
}
