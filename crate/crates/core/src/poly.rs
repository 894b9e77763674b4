//! Sparse trigonometric polynomials on the n-torus.
//!
//! A polynomial is a finite map from character indices to complex Fourier
//! coefficients. This is the computable stand-in for `L²`, `L∞` and the
//! Hardy spaces at desk scale: every identity tested in this crate is
//! coefficient-level exact on such polynomials.
//!
//! Inner products and `L²` norms come straight from the coefficients
//! (characters are an orthonormal basis); the sup norm is only ever
//! reported as a grid lower bound, never as an exact value.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::{CharacterIndex, IndexBox};

/// A uniform evaluation grid: `points` samples per dimension at
/// `x_j = j / points`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    n: usize,
    points: usize,
}

impl GridSpec {
    pub fn new(n: usize, points: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        if points < 2 {
            return Err(Error::InvalidArgument(
                "grid needs at least 2 points per dimension".into(),
            ));
        }
        Ok(GridSpec { n, points })
    }

    /// Default grid density per dimension: 512 for n=1, 128 for n=2,
    /// 32 for n >= 3.
    pub fn default_for_dim(n: usize) -> Result<Self> {
        let points = match n {
            0 => return Err(Error::InvalidArgument("dimension must be >= 1".into())),
            1 => 512,
            2 => 128,
            _ => 32,
        };
        GridSpec::new(n, points)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn points_per_dim(&self) -> usize {
        self.points
    }

    pub fn total_points(&self) -> usize {
        self.points.pow(self.n as u32)
    }

    /// Whether quadrature on this grid is exact for coefficients up to the
    /// given degree (requires `points >= 2*degree + 1`).
    pub fn resolves_degree(&self, degree: i64) -> bool {
        degree >= 0 && self.points as i64 >= 2 * degree + 1
    }
}

/// A term of the on-disk symbol format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymbolTerm {
    pub k: Vec<i64>,
    pub re: f64,
    pub im: f64,
}

/// On-disk symbol format: `{"n":1,"terms":[{"k":[-1],"re":0.0,"im":1.0}]}`.
/// Duplicate indices are rejected on parse.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymbolFile {
    pub n: usize,
    pub terms: Vec<SymbolTerm>,
}

/// Sparse complex Fourier coefficient map on `ℤⁿ`.
///
/// Coefficients with modulus at or below the drop tolerance are absent;
/// the default tolerance 0 keeps everything except exact zeros. Iteration
/// over terms is in lexicographic index order, so all derived output is
/// deterministic.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPoly {
    n: usize,
    coeffs: BTreeMap<CharacterIndex, Complex64>,
    drop_tol: f64,
}

impl TrigPoly {
    /// The zero polynomial of dimension `n`.
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "dimension must be >= 1");
        TrigPoly {
            n,
            coeffs: BTreeMap::new(),
            drop_tol: 0.0,
        }
    }

    /// The constant polynomial `c · 𝟏`.
    pub fn constant(n: usize, c: Complex64) -> Self {
        let mut p = TrigPoly::zero(n);
        p.set_coeff(CharacterIndex::zero(n), c);
        p
    }

    /// The single character `x ↦ e^{2πi k·x}`.
    pub fn character(k: &CharacterIndex) -> Self {
        let mut p = TrigPoly::zero(k.dim());
        p.set_coeff(k.clone(), Complex64::new(1.0, 0.0));
        p
    }

    /// Build from `(index, coefficient)` pairs; duplicate indices are summed.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (CharacterIndex, Complex64)>,
    {
        let mut p = TrigPoly::zero(n);
        for (k, c) in terms {
            if k.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: k.dim(),
                });
            }
            let cur = p.coeff(&k);
            p.set_coeff(k, cur + c);
        }
        Ok(p)
    }

    /// Return a copy that drops coefficients with modulus `<= tol`.
    pub fn with_drop_tolerance(mut self, tol: f64) -> Result<Self> {
        if !(tol >= 0.0) {
            return Err(Error::InvalidArgument(
                "drop tolerance must be nonnegative".into(),
            ));
        }
        self.drop_tol = tol;
        let tol = self.drop_tol;
        self.coeffs.retain(|_, c| c.norm() > tol);
        Ok(self)
    }

    pub fn drop_tolerance(&self) -> f64 {
        self.drop_tol
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at `k`; zero when absent.
    pub fn coeff(&self, k: &CharacterIndex) -> Complex64 {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    /// Insert or overwrite one coefficient, applying the drop rule.
    pub fn set_coeff(&mut self, k: CharacterIndex, c: Complex64) {
        assert_eq!(k.dim(), self.n, "character dimension mismatch");
        if c.norm() > self.drop_tol {
            self.coeffs.insert(k, c);
        } else {
            self.coeffs.remove(&k);
        }
    }

    /// Terms in lexicographic index order.
    pub fn terms(&self) -> impl Iterator<Item = (&CharacterIndex, Complex64)> {
        self.coeffs.iter().map(|(k, &c)| (k, c))
    }

    /// Support indices in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = &CharacterIndex> {
        self.coeffs.keys()
    }

    /// Smallest box containing the support, `None` for the zero polynomial.
    pub fn support_box(&self) -> Option<IndexBox> {
        let mut lo: Option<Vec<i64>> = None;
        let mut hi: Option<Vec<i64>> = None;
        for k in self.coeffs.keys() {
            match (&mut lo, &mut hi) {
                (Some(lo), Some(hi)) => {
                    for (i, &c) in k.coords().iter().enumerate() {
                        lo[i] = lo[i].min(c);
                        hi[i] = hi[i].max(c);
                    }
                }
                _ => {
                    lo = Some(k.coords().to_vec());
                    hi = Some(k.coords().to_vec());
                }
            }
        }
        Some(IndexBox::new(lo?, hi?).expect("support hull is a valid box"))
    }

    /// Largest coordinate modulus over the support.
    pub fn max_degree(&self) -> i64 {
        self.coeffs
            .keys()
            .flat_map(|k| k.coords().iter().map(|c| c.abs()))
            .max()
            .unwrap_or(0)
    }

    fn check_same_dim(&self, other: &TrigPoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TrigPoly) -> Result<TrigPoly> {
        self.check_same_dim(other)?;
        let mut out = self.clone();
        out.drop_tol = self.drop_tol.max(other.drop_tol);
        for (k, c) in other.terms() {
            let cur = out.coeff(k);
            out.set_coeff(k.clone(), cur + c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TrigPoly) -> Result<TrigPoly> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> TrigPoly {
        let mut out = TrigPoly::zero(self.n);
        out.drop_tol = self.drop_tol;
        for (k, v) in self.terms() {
            out.set_coeff(k.clone(), c * v);
        }
        out
    }

    /// Exact coefficient convolution: `(fg)^(k) = Σ_j f^(j) g^(k-j)`.
    pub fn multiply(&self, other: &TrigPoly) -> Result<TrigPoly> {
        self.check_same_dim(other)?;
        let mut acc: BTreeMap<CharacterIndex, Complex64> = BTreeMap::new();
        for (j, a) in self.terms() {
            for (k, b) in other.terms() {
                let entry = acc
                    .entry(j.add(k))
                    .or_insert_with(|| Complex64::new(0.0, 0.0));
                *entry += a * b;
            }
        }
        let mut out = TrigPoly::zero(self.n);
        out.drop_tol = self.drop_tol.max(other.drop_tol);
        for (k, c) in acc {
            out.set_coeff(k, c);
        }
        Ok(out)
    }

    /// Complex conjugate: `(f̄)^(k) = conj(f^(-k))`.
    pub fn conj(&self) -> TrigPoly {
        let mut out = TrigPoly::zero(self.n);
        out.drop_tol = self.drop_tol;
        for (k, c) in self.terms() {
            out.set_coeff(k.negate(), c.conj());
        }
        out
    }

    /// Whether the coefficients have the symmetry `f^(-k) = conj(f^(k))`,
    /// i.e. the polynomial takes real values.
    pub fn is_real_valued(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(k, &c)| self.coeff(&k.negate()) == c.conj())
    }

    /// Evaluate at a point of `[0,1)ⁿ`.
    pub fn evaluate(&self, x: &[f64]) -> Complex64 {
        assert_eq!(x.len(), self.n, "evaluation point dimension mismatch");
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.terms() {
            let phase: f64 = k
                .coords()
                .iter()
                .zip(x)
                .map(|(&ki, &xi)| ki as f64 * xi)
                .sum();
            acc += c * Complex64::from_polar(1.0, TAU * phase);
        }
        acc
    }

    /// Evaluate on the full grid, row-major by coordinate (first coordinate
    /// slowest). Points are processed in parallel but each point sums its
    /// terms in a fixed order, so the output is identical to a sequential
    /// evaluation.
    pub fn evaluate_grid(&self, grid: &GridSpec) -> Result<Vec<Complex64>> {
        if grid.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: grid.dim(),
            });
        }
        let m = grid.points_per_dim();
        // e^{2πi j/m} for j in 0..m; exact index reduction keeps k·x
        // periodicity free of rounding drift.
        let roots: Vec<Complex64> = (0..m)
            .map(|j| Complex64::from_polar(1.0, TAU * (j as f64 / m as f64)))
            .collect();
        let terms: Vec<(&CharacterIndex, Complex64)> = self.terms().collect();
        let total = grid.total_points();
        let n = self.n;
        let values: Vec<Complex64> = (0..total)
            .into_par_iter()
            .map(|flat| {
                let mut point = vec![0usize; n];
                let mut rem = flat;
                for axis in (0..n).rev() {
                    point[axis] = rem % m;
                    rem /= m;
                }
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, c) in &terms {
                    let mut root_index: i64 = 0;
                    for (axis, &ki) in k.coords().iter().enumerate() {
                        root_index += ki.rem_euclid(m as i64) * point[axis] as i64;
                    }
                    acc += c * roots[(root_index % m as i64) as usize];
                }
                acc
            })
            .collect();
        Ok(values)
    }

    /// Largest modulus over the grid: a certified lower bound of the sup
    /// norm. Nondecreasing along refining grids `M, 2M, 4M, …`.
    pub fn sup_norm_lower(&self, grid: &GridSpec) -> Result<f64> {
        Ok(self
            .evaluate_grid(grid)?
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max))
    }

    /// `L^p` quadrature estimate on the grid, `p in [1, ∞)`. On a uniform
    /// periodic grid the trapezoidal rule reduces to the plain average.
    pub fn lp_norm_estimate(&self, p: f64, grid: &GridSpec) -> Result<f64> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::InvalidArgument(
                "lp estimate requires finite p >= 1".into(),
            ));
        }
        let values = self.evaluate_grid(grid)?;
        let total = values.len() as f64;
        let sum: f64 = values.iter().map(|v| v.norm().powf(p)).sum();
        Ok((sum / total).powf(1.0 / p))
    }

    /// Exact `L²` norm from the coefficients.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs
            .values()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Exact `L²` inner product `⟨f, g⟩ = Σ f^(k) conj(g^(k))`.
    pub fn inner(&self, other: &TrigPoly) -> Result<Complex64> {
        self.check_same_dim(other)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.terms() {
            acc += c * other.coeff(k).conj();
        }
        Ok(acc)
    }

    pub fn to_symbol_file(&self) -> SymbolFile {
        SymbolFile {
            n: self.n,
            terms: self
                .terms()
                .map(|(k, c)| SymbolTerm {
                    k: k.coords().to_vec(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }

    pub fn from_symbol_file(file: &SymbolFile) -> Result<Self> {
        if file.n == 0 {
            return Err(Error::Parse("symbol dimension must be >= 1".into()));
        }
        let mut p = TrigPoly::zero(file.n);
        for term in &file.terms {
            if term.k.len() != file.n {
                return Err(Error::Parse(format!(
                    "term index {:?} does not have dimension {}",
                    term.k, file.n
                )));
            }
            if !term.re.is_finite() || !term.im.is_finite() {
                return Err(Error::Parse(format!(
                    "non-finite coefficient at index {:?}",
                    term.k
                )));
            }
            let k = CharacterIndex::new(term.k.clone());
            if p.coeffs.contains_key(&k) {
                return Err(Error::Parse(format!("duplicate index {:?}", term.k)));
            }
            p.set_coeff(k, Complex64::new(term.re, term.im));
        }
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_symbol_file()).expect("symbol serialization")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: SymbolFile =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        TrigPoly::from_symbol_file(&file)
    }
}
