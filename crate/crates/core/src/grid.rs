//! Piecewise-constant functions on uniform Cartesian grids.
//!
//! A [`GridFunction`] with cell size `h` and lower corner `offset` stands for
//! the function equal to `values[i]` on the half-open cell
//! `offset + h * (idx + [0, 1)^d)`, where `idx` is the multi-index of flat
//! position `i` in row-major order (last axis fastest). Integrals are exact
//! finite sums with cell measure `h^d`.

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    h: f64,
    offset: Vec<f64>,
    shape: Vec<usize>,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(h: f64, offset: Vec<f64>, shape: Vec<usize>, values: Vec<Complex64>) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::invalid(format!(
                "cell size must be positive and finite, got {h}"
            )));
        }
        if shape.is_empty() {
            return Err(Error::invalid("grid dimension must be at least 1"));
        }
        if offset.len() != shape.len() {
            return Err(Error::invalid(format!(
                "offset has {} components but the grid has {} axes",
                offset.len(),
                shape.len()
            )));
        }
        if shape.contains(&0) {
            return Err(Error::invalid("every axis needs at least one cell"));
        }
        if offset.iter().any(|o| !o.is_finite()) {
            return Err(Error::invalid("offset must be finite"));
        }
        let len = shape
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::Resource("grid cell count overflows usize".into()))?;
        if values.len() != len {
            return Err(Error::invalid(format!(
                "expected {len} values for shape {shape:?}, got {}",
                values.len()
            )));
        }
        Ok(GridFunction {
            h,
            offset,
            shape,
            values,
        })
    }

    pub fn zeros(h: f64, offset: Vec<f64>, shape: Vec<usize>) -> Result<Self> {
        let len = shape.iter().product();
        Self::new(h, offset, shape, vec![Complex64::new(0.0, 0.0); len])
    }

    /// Box `[-n_k h / 2, n_k h / 2)` on every axis.
    pub fn symmetric(shape: &[usize], h: f64) -> Result<Self> {
        let offset = shape.iter().map(|&n| -(n as f64) * h / 2.0).collect();
        Self::zeros(h, offset, shape.to_vec())
    }

    /// Samples `f` at cell centers of the symmetric box.
    pub fn symmetric_from_fn<F>(shape: &[usize], h: f64, f: F) -> Result<Self>
    where
        F: FnMut(&[f64]) -> Complex64,
    {
        let mut g = Self::symmetric(shape, h)?;
        g.fill_with(f);
        Ok(g)
    }

    pub fn from_fn<F>(h: f64, offset: Vec<f64>, shape: Vec<usize>, f: F) -> Result<Self>
    where
        F: FnMut(&[f64]) -> Complex64,
    {
        let mut g = Self::zeros(h, offset, shape)?;
        g.fill_with(f);
        Ok(g)
    }

    /// Overwrites every value with `f(center)`.
    pub fn fill_with<F>(&mut self, mut f: F)
    where
        F: FnMut(&[f64]) -> Complex64,
    {
        let mut x = vec![0.0; self.dim()];
        for i in 0..self.values.len() {
            self.center_into(i, &mut x);
            self.values[i] = f(&x);
        }
    }

    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn offset(&self) -> &[f64] {
        &self.offset
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn cell_measure(&self) -> f64 {
        self.h.powi(self.dim() as i32)
    }

    /// Copy of this grid's geometry with new values.
    pub fn with_values(&self, values: Vec<Complex64>) -> Result<Self> {
        Self::new(self.h, self.offset.clone(), self.shape.clone(), values)
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim()];
        for k in (0..self.dim()).rev() {
            idx[k] = flat % self.shape[k];
            flat /= self.shape[k];
        }
        idx
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.shape).fold(0, |acc, (&i, &n)| acc * n + i)
    }

    pub fn center(&self, flat: usize) -> Vec<f64> {
        let mut x = vec![0.0; self.dim()];
        self.center_into(flat, &mut x);
        x
    }

    pub fn center_into(&self, mut flat: usize, out: &mut [f64]) {
        for k in (0..self.dim()).rev() {
            let i = flat % self.shape[k];
            flat /= self.shape[k];
            out[k] = self.offset[k] + (i as f64 + 0.5) * self.h;
        }
    }

    /// Piecewise-constant evaluation; zero outside the box.
    pub fn eval(&self, x: &[f64]) -> Complex64 {
        let mut flat = 0usize;
        for ((&xk, &o), &n) in x.iter().zip(&self.offset).zip(&self.shape) {
            let t = ((xk - o) / self.h).floor();
            if t < 0.0 || t >= n as f64 {
                return Complex64::new(0.0, 0.0);
            }
            flat = flat * n + t as usize;
        }
        self.values[flat]
    }

    pub fn same_grid(&self, other: &GridFunction) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(self.h);
        self.shape == other.shape
            && close(self.h, other.h)
            && self.offset.iter().zip(&other.offset).all(|(&a, &b)| close(a, b))
    }

    pub fn abs(&self) -> GridFunction {
        self.map(|v| Complex64::new(v.norm(), 0.0))
    }

    pub fn map<F: Fn(Complex64) -> Complex64>(&self, f: F) -> GridFunction {
        GridFunction {
            h: self.h,
            offset: self.offset.clone(),
            shape: self.shape.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn magnitudes(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm()).collect()
    }

    /// `(h^d Σ |v|^p)^{1/p}`; `p = ∞` gives the sup norm.
    pub fn norm(&self, p: f64) -> f64 {
        lp_norm(&self.magnitudes(), self.cell_measure(), p)
    }

    /// Measure of the set of cells with a nonzero value.
    pub fn support_measure(&self) -> f64 {
        self.values.iter().filter(|v| v.norm() > 0.0).count() as f64 * self.cell_measure()
    }

    pub fn integral(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() * self.cell_measure()
    }

    /// Cells sorted by distance of their centers from the coordinate origin,
    /// ties broken by lexicographic (row-major) index.
    ///
    /// When every `2 * offset_k / h` is an integer the distances are compared
    /// in exact integer arithmetic, so mirror-image cells tie exactly.
    pub fn cell_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        if let Some(doubled) = self.doubled_offsets() {
            let keys: Vec<u128> = (0..self.len())
                .map(|flat| {
                    let idx = self.multi_index(flat);
                    idx.iter()
                        .zip(&doubled)
                        .map(|(&i, &o)| {
                            let c = (o + 2 * i as i64 + 1) as i128;
                            (c * c) as u128
                        })
                        .sum()
                })
                .collect();
            order.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));
        } else {
            let keys: Vec<f64> = (0..self.len())
                .map(|flat| self.center(flat).iter().map(|x| x * x).sum())
                .collect();
            order.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]).then(a.cmp(&b)));
        }
        order
    }

    /// `2 * offset_k / h` as integers, when they are integers.
    fn doubled_offsets(&self) -> Option<Vec<i64>> {
        self.offset
            .iter()
            .map(|&o| {
                let t = 2.0 * o / self.h;
                let r = t.round();
                ((t - r).abs() <= 1e-9 * r.abs().max(1.0) && r.abs() < 1e15).then_some(r as i64)
            })
            .collect()
    }

    /// `x ↦ f(x / alpha)`: same values on a grid scaled by `alpha`.
    pub fn dilate(&self, alpha: f64) -> Result<GridFunction> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::invalid(format!("dilation factor must be positive, got {alpha}")));
        }
        Self::new(
            self.h * alpha,
            self.offset.iter().map(|o| o * alpha).collect(),
            self.shape.clone(),
            self.values.clone(),
        )
    }

    /// Splits every cell into `factor^d` equal subcells carrying the same value.
    pub fn refine(&self, factor: usize) -> Result<GridFunction> {
        if factor == 0 {
            return Err(Error::invalid("refinement factor must be at least 1"));
        }
        let shape: Vec<usize> = self.shape.iter().map(|n| n * factor).collect();
        let mut out = Self::zeros(self.h / factor as f64, self.offset.clone(), shape)?;
        for flat in 0..out.len() {
            let idx: Vec<usize> = out.multi_index(flat).iter().map(|i| i / factor).collect();
            out.values[flat] = self.values[self.flat_index(&idx)];
        }
        Ok(out)
    }

    /// Embeds the function in a larger box with `new_shape[k] >= shape[k]`
    /// cells per axis, placing the old box `(new - old) / 2` cells from the
    /// lower corner so a symmetric box stays symmetric when the growth is even.
    pub fn pad_to(&self, new_shape: &[usize]) -> Result<GridFunction> {
        if new_shape.len() != self.dim() || new_shape.iter().zip(&self.shape).any(|(n, o)| n < o) {
            return Err(Error::invalid(format!(
                "cannot pad shape {:?} to {new_shape:?}",
                self.shape
            )));
        }
        let lead: Vec<usize> = new_shape.iter().zip(&self.shape).map(|(n, o)| (n - o) / 2).collect();
        let offset = self
            .offset
            .iter()
            .zip(&lead)
            .map(|(o, &l)| o - l as f64 * self.h)
            .collect();
        let mut out = Self::zeros(self.h, offset, new_shape.to_vec())?;
        let mut idx = vec![0; self.dim()];
        for flat in 0..self.len() {
            let src = self.multi_index(flat);
            for k in 0..self.dim() {
                idx[k] = src[k] + lead[k];
            }
            let dst = out.flat_index(&idx);
            out.values[dst] = self.values[flat];
        }
        Ok(out)
    }

    /// Pads every axis by `factor`.
    pub fn zero_pad(&self, factor: usize) -> Result<GridFunction> {
        if factor == 0 {
            return Err(Error::invalid("padding factor must be at least 1"));
        }
        let shape: Vec<usize> = self.shape.iter().map(|n| n * factor).collect();
        self.pad_to(&shape)
    }

    /// Restricts to `new_shape` cells starting `start[k]` cells into the box.
    pub fn crop(&self, start: &[usize], new_shape: &[usize]) -> Result<GridFunction> {
        if start.len() != self.dim()
            || new_shape.len() != self.dim()
            || (0..self.dim()).any(|k| start[k] + new_shape[k] > self.shape[k])
        {
            return Err(Error::invalid("crop window exceeds the grid"));
        }
        let offset = self
            .offset
            .iter()
            .zip(start)
            .map(|(o, &s)| o + s as f64 * self.h)
            .collect();
        let mut out = Self::zeros(self.h, offset, new_shape.to_vec())?;
        let mut idx = vec![0; self.dim()];
        for flat in 0..out.len() {
            let local = out.multi_index(flat);
            for k in 0..self.dim() {
                idx[k] = local[k] + start[k];
            }
            out.values[flat] = self.values[self.flat_index(&idx)];
        }
        Ok(out)
    }

    /// `x ↦ f(x - shift * h)` on the same grid; values pushed out of the box
    /// are an error.
    pub fn translate_cells(&self, shift: &[isize]) -> Result<GridFunction> {
        if shift.len() != self.dim() {
            return Err(Error::invalid("shift has the wrong number of components"));
        }
        let mut out = self.map(|_| Complex64::new(0.0, 0.0));
        let mut idx = vec![0usize; self.dim()];
        for flat in 0..self.len() {
            if self.values[flat].norm() == 0.0 {
                continue;
            }
            let src = self.multi_index(flat);
            for k in 0..self.dim() {
                let t = src[k] as isize + shift[k];
                if t < 0 || t >= self.shape[k] as isize {
                    return Err(Error::range("translation moves support outside the box"));
                }
                idx[k] = t as usize;
            }
            let dst = out.flat_index(&idx);
            out.values[dst] = self.values[flat];
        }
        Ok(out)
    }

    /// Multiplies by `e^{2πi <a, x>}` sampled at cell centers.
    pub fn modulate(&self, a: &[f64]) -> GridFunction {
        let mut out = self.clone();
        let mut x = vec![0.0; self.dim()];
        for flat in 0..self.len() {
            self.center_into(flat, &mut x);
            let phase: f64 = x.iter().zip(a).map(|(x, a)| x * a).sum();
            out.values[flat] *= Complex64::from_polar(1.0, 2.0 * PI * phase);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GridFile::from_grid(self)).expect("grid serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GridFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("grid file: {e}")))?;
        file.into_grid()
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Reads a grid file, or a 1-D CSV when the extension is `.csv`.
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
            Self::from_csv_1d(&text)
        } else {
            Self::from_json(&text)
        }
    }

    /// 1-D import from CSV rows `x,re,im` where `x` are equally spaced cell
    /// centers. A header row is allowed.
    pub fn from_csv_1d(text: &str) -> Result<Self> {
        let mut xs = Vec::new();
        let mut values = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!(
                    "line {}: expected 3 columns x,re,im",
                    line_no + 1
                )));
            }
            let parsed: std::result::Result<Vec<f64>, _> = fields.iter().map(|f| f.parse::<f64>()).collect();
            match parsed {
                Ok(v) => {
                    xs.push(v[0]);
                    values.push(Complex64::new(v[1], v[2]));
                }
                Err(_) if xs.is_empty() && line_no == 0 => continue,
                Err(e) => return Err(Error::Parse(format!("line {}: {e}", line_no + 1))),
            }
        }
        if xs.len() < 2 {
            return Err(Error::Parse("need at least two samples to infer the cell size".into()));
        }
        let h = xs[1] - xs[0];
        if !(h > 0.0) {
            return Err(Error::Parse("x column must be increasing".into()));
        }
        for (i, pair) in xs.windows(2).enumerate() {
            if ((pair[1] - pair[0]) - h).abs() > 1e-9 * h {
                return Err(Error::Parse(format!("x column not uniformly spaced at row {}", i + 2)));
            }
        }
        let n = xs.len();
        Self::new(h, vec![xs[0] - h / 2.0], vec![n], values)
    }
}

/// `(cell Σ |v|^p)^{1/p}`, with `p = ∞` the max.
pub(crate) fn lp_norm(magnitudes: &[f64], cell: f64, p: f64) -> f64 {
    if p.is_infinite() {
        magnitudes.iter().copied().fold(0.0, f64::max)
    } else if p == 1.0 {
        cell * magnitudes.iter().sum::<f64>()
    } else if p == 2.0 {
        (cell * magnitudes.iter().map(|m| m * m).sum::<f64>()).sqrt()
    } else {
        (cell * magnitudes.iter().map(|m| m.powf(p)).sum::<f64>()).powf(1.0 / p)
    }
}

/// Magnitudes sorted in nonincreasing order.
pub(crate) fn sorted_magnitudes(f: &GridFunction) -> Vec<f64> {
    let mut m = f.magnitudes();
    m.sort_by(|a, b| b.total_cmp(a));
    m
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct GridFile {
    pub format: String,
    pub version: u32,
    pub dim: usize,
    pub h: f64,
    pub offset: Vec<f64>,
    pub shape: Vec<usize>,
    pub values: Vec<[f64; 2]>,
}

impl GridFile {
    pub(crate) const FORMAT: &'static str = "gridfunction";

    pub(crate) fn from_grid(g: &GridFunction) -> Self {
        GridFile {
            format: Self::FORMAT.into(),
            version: 1,
            dim: g.dim(),
            h: g.h,
            offset: g.offset.clone(),
            shape: g.shape.clone(),
            values: g.values.iter().map(|v| [v.re, v.im]).collect(),
        }
    }

    pub(crate) fn into_grid(self) -> Result<GridFunction> {
        if self.format != Self::FORMAT {
            return Err(Error::Parse(format!(
                "expected format \"{}\", got \"{}\"",
                Self::FORMAT,
                self.format
            )));
        }
        if self.version != 1 {
            return Err(Error::Parse(format!("unsupported grid file version {}", self.version)));
        }
        if self.dim != self.shape.len() {
            return Err(Error::Parse("dim does not match the shape".into()));
        }
        GridFunction::new(
            self.h,
            self.offset,
            self.shape,
            self.values.into_iter().map(|[re, im]| Complex64::new(re, im)).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn rejects_bad_geometry() {
        assert!(GridFunction::new(0.0, vec![0.0], vec![2], vec![c(1.0); 2]).is_err());
        assert!(GridFunction::new(1.0, vec![0.0], vec![0], vec![]).is_err());
        assert!(GridFunction::new(1.0, vec![0.0, 0.0], vec![2], vec![c(1.0); 2]).is_err());
        assert!(GridFunction::new(1.0, vec![0.0], vec![3], vec![c(1.0); 2]).is_err());
    }

    #[test]
    fn centers_and_indices_round_trip() {
        let g = GridFunction::symmetric(&[4, 3], 0.5).unwrap();
        for flat in 0..g.len() {
            assert_eq!(g.flat_index(&g.multi_index(flat)), flat);
        }
        assert_eq!(g.center(0), vec![-0.75, -0.5]);
        assert_eq!(g.center(g.len() - 1), vec![0.75, 0.5]);
    }

    #[test]
    fn cell_order_ties_are_lexicographic() {
        let g = GridFunction::symmetric(&[4], 1.0).unwrap();
        // centers -1.5 -0.5 0.5 1.5
        assert_eq!(g.cell_order(), vec![1, 2, 0, 3]);
        let g2 = GridFunction::symmetric(&[2, 2], 1.0).unwrap();
        assert_eq!(g2.cell_order(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn eval_is_piecewise_constant() {
        let g = GridFunction::new(0.5, vec![-1.0], vec![4], vec![c(1.0), c(2.0), c(3.0), c(4.0)]).unwrap();
        assert_eq!(g.eval(&[-1.0]), c(1.0));
        assert_eq!(g.eval(&[-0.51]), c(1.0));
        assert_eq!(g.eval(&[-0.5]), c(2.0));
        assert_eq!(g.eval(&[0.99]), c(4.0));
        assert_eq!(g.eval(&[1.0]), c(0.0));
    }

    #[test]
    fn pad_and_crop_are_inverse() {
        let g = GridFunction::symmetric_from_fn(&[6], 0.25, |x| c(x[0])).unwrap();
        let p = g.pad_to(&[16]).unwrap();
        assert!((p.offset()[0] + 2.0).abs() < 1e-15);
        let back = p.crop(&[5], &[6]).unwrap();
        assert!(back.same_grid(&g));
        assert_eq!(back.values(), g.values());
    }

    #[test]
    fn refine_preserves_integrals() {
        let g = GridFunction::symmetric_from_fn(&[3, 5], 0.5, |x| c(x[0] - x[1])).unwrap();
        let r = g.refine(2).unwrap();
        assert!((r.integral() - g.integral()).norm() < 1e-12);
        assert!((r.norm(2.0) - g.norm(2.0)).abs() < 1e-12);
    }

    #[test]
    fn csv_import_infers_geometry() {
        let text = "x,re,im\n-0.75,1,0\n-0.25,2,0\n0.25,3,1\n0.75,4,0\n";
        let g = GridFunction::from_csv_1d(text).unwrap();
        assert_eq!(g.shape(), &[4]);
        assert!((g.h() - 0.5).abs() < 1e-15);
        assert!((g.offset()[0] + 1.0).abs() < 1e-15);
        assert_eq!(g.values()[2], Complex64::new(3.0, 1.0));
        assert!(GridFunction::from_csv_1d("0,1,0\n1,1,0\n3,1,0\n").is_err());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let g = GridFunction::symmetric_from_fn(&[3, 2], 0.1, |x| Complex64::new(x[0].sin(), x[1].exp())).unwrap();
        let back = GridFunction::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
    }
}
