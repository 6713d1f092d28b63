use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Concentric circles of equispaced sample points inside the unit disc.
///
/// With `include_positive_axis` the first angle on each circle is 0, so the
/// positive real axis is sampled at every radius; otherwise the angles are
/// offset by half a step.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskGrid {
    radii: Vec<f64>,
    angular_count: usize,
    include_positive_axis: bool,
}

/// A grid sample. Points are ordered radius-major, then by angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub z: Complex64,
    pub radius: f64,
    pub radius_index: usize,
    pub angle_index: usize,
}

pub const DEFAULT_RADII: [f64; 11] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999];
pub const DEFAULT_ANGLES: usize = 256;

impl DiskGrid {
    pub fn new(radii: Vec<f64>, angular_count: usize, include_positive_axis: bool) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::Domain("grid needs at least one radius".into()));
        }
        if let Some(r) = radii.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
            return Err(Error::Domain(format!("grid radius {r} outside (0, 1)")));
        }
        if radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain(
                "grid radii must be strictly increasing".into(),
            ));
        }
        if angular_count < 4 {
            return Err(Error::Domain(format!(
                "angular count {angular_count} below the minimum of 4"
            )));
        }
        Ok(Self {
            radii,
            angular_count,
            include_positive_axis,
        })
    }

    /// Parses `default` or `r1,r2,...:angles[:noaxis]`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec == "default" {
            return Ok(Self::default());
        }
        let mut parts = spec.split(':');
        let radii = parts
            .next()
            .unwrap_or_default()
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Domain(format!("bad radius `{s}` in grid spec")))
            })
            .collect::<Result<Vec<_>>>()?;
        let angles = match parts.next() {
            Some(a) => a
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::Domain(format!("bad angle count `{a}` in grid spec")))?,
            None => DEFAULT_ANGLES,
        };
        let axis = match parts.next() {
            None | Some("axis") => true,
            Some("noaxis") => false,
            Some(other) => {
                return Err(Error::Domain(format!(
                    "bad axis flag `{other}` in grid spec"
                )))
            }
        };
        if parts.next().is_some() {
            return Err(Error::Domain("too many `:` sections in grid spec".into()));
        }
        Self::new(radii, angles, axis)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angular_count(&self) -> usize {
        self.angular_count
    }

    pub fn include_positive_axis(&self) -> bool {
        self.include_positive_axis
    }

    pub fn max_radius(&self) -> f64 {
        *self.radii.last().expect("non-empty")
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angular_count
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> Vec<GridPoint> {
        let n = self.angular_count;
        let offset = if self.include_positive_axis { 0.0 } else { 0.5 };
        let mut out = Vec::with_capacity(self.len());
        for (ri, &r) in self.radii.iter().enumerate() {
            for k in 0..n {
                let theta = 2.0 * PI * (k as f64 + offset) / n as f64;
                let z = if k == 0 && self.include_positive_axis {
                    Complex64::new(r, 0.0)
                } else {
                    Complex64::from_polar(r, theta)
                };
                out.push(GridPoint {
                    z,
                    radius: r,
                    radius_index: ri,
                    angle_index: k,
                });
            }
        }
        out
    }
}

impl Default for DiskGrid {
    /// Radii `0.1, ..., 0.9, 0.99, 0.999`, 256 angles, positive axis included.
    fn default() -> Self {
        Self {
            radii: DEFAULT_RADII.to_vec(),
            angular_count: DEFAULT_ANGLES,
            include_positive_axis: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(DiskGrid::new(vec![], 8, true).is_err());
        assert!(DiskGrid::new(vec![0.5, 1.0], 8, true).is_err());
        assert!(DiskGrid::new(vec![0.0, 0.5], 8, true).is_err());
        assert!(DiskGrid::new(vec![0.5, 0.4], 8, true).is_err());
        assert!(DiskGrid::new(vec![0.5], 3, true).is_err());
        assert!(DiskGrid::new(vec![0.5], 4, false).is_ok());
    }

    #[test]
    fn axis_sampling() {
        let g = DiskGrid::new(vec![0.25, 0.75], 8, true).unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 16);
        assert_eq!(pts[0].z, Complex64::new(0.25, 0.0));
        assert_eq!(pts[8].z, Complex64::new(0.75, 0.0));
        let g = DiskGrid::new(vec![0.25], 8, false).unwrap();
        assert!(g.points().iter().all(|p| p.z.im != 0.0));
        for p in g.points() {
            assert!((p.z.norm() - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn parse_specs() {
        assert_eq!(DiskGrid::parse("default").unwrap(), DiskGrid::default());
        let g = DiskGrid::parse("0.5,0.9:16").unwrap();
        assert_eq!(g.radii(), &[0.5, 0.9]);
        assert_eq!(g.angular_count(), 16);
        assert!(g.include_positive_axis());
        assert!(!DiskGrid::parse("0.5:16:noaxis")
            .unwrap()
            .include_positive_axis());
        assert!(DiskGrid::parse("0.5,x:16").is_err());
        assert!(DiskGrid::parse("0.5:16:what").is_err());
        assert_eq!(DiskGrid::default().len(), 11 * 256);
    }
}
