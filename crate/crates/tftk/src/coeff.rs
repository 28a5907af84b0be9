//! Labeled multi-axis coefficient arrays.
//!
//! A [`CoeffArray`] stores a complex array together with one descriptor per
//! axis: the axis role (time or frequency), the variable it belongs to, and
//! its extent. Values are row-major in the axis list order. Full-grid STFT
//! coefficients are 2-axis arrays; kernel coefficients are 4-axis arrays
//! ordered (time 1, time 2, frequency 1, frequency 2).

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisRole {
    Time,
    Frequency,
}

/// One axis descriptor: role, variable index, extent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Axis {
    pub role: AxisRole,
    pub var: usize,
    pub extent: usize,
}

impl Axis {
    pub fn time(var: usize, extent: usize) -> Self {
        Self { role: AxisRole::Time, var, extent }
    }

    pub fn frequency(var: usize, extent: usize) -> Self {
        Self { role: AxisRole::Frequency, var, extent }
    }
}

/// A complex array with labeled axes, row-major in the axis list order.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffArray {
    axes: Vec<Axis>,
    values: Vec<Complex64>,
}

impl CoeffArray {
    pub fn new(axes: Vec<Axis>, values: Vec<Complex64>) -> Result<Self> {
        let expected: usize = axes.iter().map(|a| a.extent).product();
        if axes.is_empty() || axes.iter().any(|a| a.extent == 0) || expected != values.len() {
            return Err(Error::ShapeMismatch { expected, got: values.len() });
        }
        for (i, a) in axes.iter().enumerate() {
            if axes[..i].iter().any(|b| (b.role, b.var) == (a.role, a.var)) {
                return Err(Error::DuplicateAxis);
            }
        }
        if !values.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        Ok(Self { axes, values })
    }

    pub fn zeros(axes: Vec<Axis>) -> Result<Self> {
        let len = axes.iter().map(|a| a.extent).product();
        Self::new(axes, vec![Complex64::new(0.0, 0.0); len])
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn arity(&self) -> usize {
        self.axes.len()
    }

    pub fn extents(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.extent).collect()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    #[allow(dead_code)] // test construction helper
    pub(crate) fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    /// Row-major linear index of a multi-index.
    pub fn linear_index(&self, idx: &[usize]) -> Result<usize> {
        if idx.len() != self.axes.len() {
            return Err(Error::ArityMismatch { expected: self.axes.len(), got: idx.len() });
        }
        let mut lin = 0usize;
        for (i, (&x, a)) in idx.iter().zip(&self.axes).enumerate() {
            if x >= a.extent {
                return Err(Error::ShapeMismatch { expected: a.extent, got: x });
            }
            let _ = i;
            lin = lin * a.extent + x;
        }
        Ok(lin)
    }

    pub fn at(&self, idx: &[usize]) -> Result<Complex64> {
        Ok(self.values[self.linear_index(idx)?])
    }

    /// Total energy `sum |c|^2`.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.energy().sqrt()
    }

    /// Frobenius pairing `sum a conj(b)`; arities and extents must agree.
    pub fn inner(&self, other: &CoeffArray) -> Result<Complex64> {
        if self.extents() != other.extents() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                got: other.arity(),
            });
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    /// Walks multi-indices in storage order alongside values.
    pub fn indexed_values(&self) -> IndexedValues<'_> {
        IndexedValues {
            array: self,
            idx: vec![0; self.axes.len()],
            pos: 0,
        }
    }
}

pub struct IndexedValues<'a> {
    array: &'a CoeffArray,
    idx: Vec<usize>,
    pos: usize,
}

impl<'a> Iterator for IndexedValues<'a> {
    type Item = (Vec<usize>, Complex64);

    fn next(&mut self) -> Option<Self::Item> {
        if self.pos >= self.array.values.len() {
            return None;
        }
        let item = (self.idx.clone(), self.array.values[self.pos]);
        self.pos += 1;
        // odometer increment, last axis fastest
        for ax in (0..self.idx.len()).rev() {
            self.idx[ax] += 1;
            if self.idx[ax] < self.array.axes[ax].extent {
                break;
            }
            self.idx[ax] = 0;
        }
        Some(item)
    }
}

// JSON schema: {"axes": [{"role": "time", "var": 1, "extent": 8}, ...],
// "values": [[re, im], ...]} with row-major value order by the axis list.
#[derive(Serialize, Deserialize)]
struct AxisRepr {
    role: AxisRole,
    var: usize,
    extent: usize,
}

#[derive(Serialize, Deserialize)]
struct CoeffArrayRepr {
    axes: Vec<AxisRepr>,
    values: Vec<(f64, f64)>,
}

impl Serialize for CoeffArray {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CoeffArrayRepr {
            axes: self
                .axes
                .iter()
                .map(|a| AxisRepr { role: a.role, var: a.var, extent: a.extent })
                .collect(),
            values: self.values.iter().map(|z| (z.re, z.im)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CoeffArray {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CoeffArrayRepr::deserialize(deserializer)?;
        CoeffArray::new(
            repr.axes
                .into_iter()
                .map(|a| Axis { role: a.role, var: a.var, extent: a.extent })
                .collect(),
            repr.values
                .into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect(),
        )
        .map_err(D::Error::custom)
    }
}
