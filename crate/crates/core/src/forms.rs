//! Symmetric bilinear, trilinear and Hermitian forms: polarization,
//! signatures, and the Cauchy–Schwarz style residuals used by the
//! inequality checks in the geometric modules.

use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::linalg::{symmetric_eigen, SymmetricEigen};

/// Default relative zero threshold for signatures.
pub const DEFAULT_ZERO_THRESHOLD: f64 = 1e-9;

const HOMOGENEITY_SAMPLES: usize = 16;
const HOMOGENEITY_SCALES: [f64; 2] = [0.5, 2.0];
const HOMOGENEITY_TOL: f64 = 1e-9;
const POLARIZATION_TOL: f64 = 1e-10;
const POLARIZATION_SAMPLES: usize = 16;
const FORMS_SEED: u64 = 0x6d69_7865_645f_6172;

/// Counts of positive, zero and negative eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
    pub zero_threshold: f64,
}

impl Signature {
    /// `(positive, zero, negative)`.
    pub fn as_tuple(&self) -> (usize, usize, usize) {
        (self.positive, self.zero, self.negative)
    }

    pub fn dim(&self) -> usize {
        self.positive + self.zero + self.negative
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.zero, self.negative)
    }
}

fn classify(values: &[f64], zero_threshold: f64) -> Result<Signature> {
    if !(zero_threshold > 0.0 && zero_threshold < 1.0) {
        return Err(Error::InvalidInput(format!(
            "zero threshold must lie in (0, 1), got {zero_threshold}"
        )));
    }
    let radius = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let tau = if radius > 0.0 { zero_threshold * radius } else { zero_threshold };
    let mut sig = Signature { positive: 0, zero: 0, negative: 0, zero_threshold };
    for &v in values {
        if v > tau {
            sig.positive += 1;
        } else if v < -tau {
            sig.negative += 1;
        } else {
            sig.zero += 1;
        }
    }
    Ok(sig)
}

/// Dense symmetric real matrix viewed as a bilinear form.
#[derive(Clone)]
pub struct SymmetricForm {
    dim: usize,
    entries: Vec<f64>,
    eigen: OnceLock<SymmetricEigen>,
}

impl fmt::Debug for SymmetricForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymmetricForm")
            .field("dim", &self.dim)
            .field("entries", &self.entries)
            .finish()
    }
}

impl PartialEq for SymmetricForm {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.entries == other.entries
    }
}

impl SymmetricForm {
    /// Builds a form from row-major entries that must be exactly symmetric.
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::InvalidInput(format!(
                "expected {dim}×{dim} entries, got {}",
                entries.len()
            )));
        }
        ensure_finite(&entries, "form entries")?;
        for i in 0..dim {
            for j in (i + 1)..dim {
                if entries[i * dim + j] != entries[j * dim + i] {
                    return Err(Error::InvalidInput(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(Self::from_raw(dim, entries))
    }

    fn from_raw(dim: usize, entries: Vec<f64>) -> Self {
        SymmetricForm { dim, entries, eigen: OnceLock::new() }
    }

    /// Accepts a nearly symmetric matrix, checks `|Mᵢⱼ − Mⱼᵢ| ≤ tol·max|M|`
    /// and stores its symmetric part.
    pub fn from_nearly_symmetric(dim: usize, entries: Vec<f64>, tol: f64) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::InvalidInput("matrix size mismatch".into()));
        }
        ensure_finite(&entries, "form entries")?;
        let defect = asymmetry(dim, &entries);
        let size = entries.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if defect > tol * size.max(f64::MIN_POSITIVE) {
            return Err(Error::Consistency(format!(
                "matrix asymmetry {defect:.3e} exceeds {tol:.1e}·{size:.3e}"
            )));
        }
        let mut sym = entries;
        for i in 0..dim {
            for j in (i + 1)..dim {
                let m = 0.5 * (sym[i * dim + j] + sym[j * dim + i]);
                sym[i * dim + j] = m;
                sym[j * dim + i] = m;
            }
        }
        Ok(Self::from_raw(dim, sym))
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_raw(dim, vec![0.0; dim * dim])
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1.0; dim])
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut e = vec![0.0; n * n];
        for (i, v) in values.iter().enumerate() {
            e[i * n + i] = *v;
        }
        Self::from_raw(n, e)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn bilinear(&self, h: &[f64], k: &[f64]) -> f64 {
        debug_assert_eq!(h.len(), self.dim);
        debug_assert_eq!(k.len(), self.dim);
        let n = self.dim;
        let mut s = 0.0;
        for i in 0..n {
            if h[i] == 0.0 {
                continue;
            }
            let row = &self.entries[i * n..(i + 1) * n];
            s += h[i] * row.iter().zip(k).map(|(a, b)| a * b).sum::<f64>();
        }
        s
    }

    pub fn eval(&self, h: &[f64]) -> f64 {
        self.bilinear(h, h)
    }

    /// `M·h`.
    pub fn apply(&self, h: &[f64]) -> Vec<f64> {
        self.entries
            .chunks(self.dim)
            .map(|row| row.iter().zip(h).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn eigen(&self) -> Result<&SymmetricEigen> {
        if let Some(e) = self.eigen.get() {
            return Ok(e);
        }
        let e = symmetric_eigen(&self.entries, self.dim)?;
        Ok(self.eigen.get_or_init(|| e))
    }

    pub fn eigenvalues(&self) -> Result<&[f64]> {
        Ok(&self.eigen()?.values)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?[0])
    }

    pub fn signature(&self, zero_threshold: f64) -> Result<Signature> {
        classify(self.eigenvalues()?, zero_threshold)
    }

    /// `Mᵀ·F·M` for a row-major `dim×cols` matrix `m`.
    pub fn congruence(&self, m: &[f64], cols: usize) -> SymmetricForm {
        let n = self.dim;
        assert_eq!(m.len(), n * cols);
        let mut fm = vec![0.0; n * cols];
        for i in 0..n {
            for j in 0..cols {
                fm[i * cols + j] = (0..n).map(|k| self.entries[i * n + k] * m[k * cols + j]).sum();
            }
        }
        let mut out = vec![0.0; cols * cols];
        for a in 0..cols {
            for b in a..cols {
                let v: f64 = (0..n).map(|k| m[k * cols + a] * fm[k * cols + b]).sum();
                out[a * cols + b] = v;
                out[b * cols + a] = v;
            }
        }
        Self::from_raw(cols, out)
    }

    pub fn scaled(&self, s: f64) -> SymmetricForm {
        Self::from_raw(self.dim, self.entries.iter().map(|v| v * s).collect())
    }

    /// Largest entrywise difference to `other`.
    pub fn max_difference(&self, other: &SymmetricForm) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

fn asymmetry(dim: usize, entries: &[f64]) -> f64 {
    let mut d = 0.0_f64;
    for i in 0..dim {
        for j in (i + 1)..dim {
            d = d.max((entries[i * dim + j] - entries[j * dim + i]).abs());
        }
    }
    d
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    dim: usize,
    entries: Vec<Vec<f64>>,
}

impl Serialize for SymmetricForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr { dim: self.dim, entries: self.rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymmetricForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        if repr.entries.len() != repr.dim || repr.entries.iter().any(|r| r.len() != repr.dim) {
            return Err(serde::de::Error::custom("entries must be dim×dim"));
        }
        SymmetricForm::new(repr.dim, repr.entries.concat()).map_err(serde::de::Error::custom)
    }
}

/// Signature of a symmetric form with relative zero threshold.
pub fn signature(form: &SymmetricForm, zero_threshold: f64) -> Result<Signature> {
    form.signature(zero_threshold)
}

fn sample_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn unit(dim: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; dim];
    e[i] = 1.0;
    e
}

fn check_homogeneity<F: Fn(&[f64]) -> f64>(f: &F, dim: usize, degree: i32) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(FORMS_SEED);
    for _ in 0..HOMOGENEITY_SAMPLES {
        let h = sample_vector(&mut rng, dim);
        let base = f(&h);
        for &t in &HOMOGENEITY_SCALES {
            let th: Vec<f64> = h.iter().map(|x| t * x).collect();
            let lhs = f(&th);
            let rhs = t.powi(degree) * base;
            if !lhs.is_finite() || !rhs.is_finite() {
                return Err(Error::Contract("evaluator returned a non-finite value".into()));
            }
            if (lhs - rhs).abs() > HOMOGENEITY_TOL * lhs.abs().max(rhs.abs()) + f64::MIN_POSITIVE {
                return Err(Error::Contract(format!(
                    "evaluator is not homogeneous of degree {degree}: f({t}·h) = {lhs}, {t}^{degree}·f(h) = {rhs}"
                )));
            }
        }
    }
    Ok(())
}

/// Polarizes a homogeneous quadratic: `b(h,k) = ½(q(h+k) − q(h) − q(k))`.
pub fn polarize<F: Fn(&[f64]) -> f64>(q: F, dim: usize) -> Result<SymmetricForm> {
    if dim == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    check_homogeneity(&q, dim, 2)?;
    let diag: Vec<f64> = (0..dim).map(|i| q(&unit(dim, i))).collect();
    let mut m = vec![0.0; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = diag[i];
        for j in (i + 1)..dim {
            let mut e = unit(dim, i);
            e[j] = 1.0;
            let b = 0.5 * (q(&e) - diag[i] - diag[j]);
            m[i * dim + j] = b;
            m[j * dim + i] = b;
        }
    }
    let form = SymmetricForm::from_raw(dim, m);
    let mut rng = ChaCha8Rng::seed_from_u64(FORMS_SEED ^ 1);
    for _ in 0..POLARIZATION_SAMPLES {
        let h = sample_vector(&mut rng, dim);
        let (direct, via) = (q(&h), form.eval(&h));
        let scale = h.iter().map(|x| x * x).sum::<f64>() * form.max_abs().max(direct.abs());
        if (direct - via).abs() > POLARIZATION_TOL * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::Contract(format!(
                "evaluator is not a quadratic form: q(h) = {direct}, b(h,h) = {via}"
            )));
        }
    }
    Ok(form)
}

/// Dense fully symmetric 3-tensor viewed as a trilinear form.
#[derive(Debug, Clone, PartialEq)]
pub struct TrilinearForm {
    dim: usize,
    entries: Vec<f64>,
}

impl TrilinearForm {
    /// Accepts a nearly symmetric tensor (row-major `n³`), checks the largest
    /// permutation defect against `tol·max|T|` and stores the symmetrization.
    pub fn from_nearly_symmetric(dim: usize, entries: Vec<f64>, tol: f64) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim * dim {
            return Err(Error::InvalidInput("tensor size mismatch".into()));
        }
        ensure_finite(&entries, "tensor entries")?;
        let raw = TrilinearForm { dim, entries };
        let defect = raw.symmetry_defect();
        let size = raw.entries.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if defect > tol * size.max(f64::MIN_POSITIVE) {
            return Err(Error::Consistency(format!(
                "tensor symmetry defect {defect:.3e} exceeds {tol:.1e}·{size:.3e}"
            )));
        }
        let n = dim;
        let mut sym = vec![0.0; n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let s = raw.get(a, b, c)
                        + raw.get(a, c, b)
                        + raw.get(b, a, c)
                        + raw.get(b, c, a)
                        + raw.get(c, a, b)
                        + raw.get(c, b, a);
                    sym[(a * n + b) * n + c] = s / 6.0;
                }
            }
        }
        Ok(TrilinearForm { dim, entries: sym })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        self.entries[(a * self.dim + b) * self.dim + c]
    }

    /// Largest difference between an entry and any of its index permutations.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.dim;
        let mut d = 0.0_f64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let x = self.get(a, b, c);
                    for y in [self.get(a, c, b), self.get(b, a, c), self.get(b, c, a), self.get(c, a, b), self.get(c, b, a)] {
                        d = d.max((x - y).abs());
                    }
                }
            }
        }
        d
    }

    pub fn eval(&self, h: &[f64], k: &[f64], p: &[f64]) -> f64 {
        let n = self.dim;
        let mut s = 0.0;
        for a in 0..n {
            if h[a] == 0.0 {
                continue;
            }
            for b in 0..n {
                if k[b] == 0.0 {
                    continue;
                }
                let row = &self.entries[(a * n + b) * n..(a * n + b + 1) * n];
                s += h[a] * k[b] * row.iter().zip(p).map(|(x, y)| x * y).sum::<f64>();
            }
        }
        s
    }

    pub fn cubic(&self, h: &[f64]) -> f64 {
        self.eval(h, h, h)
    }

    /// The bilinear form `T(h, ·, ·)`.
    pub fn contract(&self, h: &[f64]) -> SymmetricForm {
        let n = self.dim;
        let mut m = vec![0.0; n * n];
        for (a, &ha) in h.iter().enumerate() {
            if ha == 0.0 {
                continue;
            }
            for (bc, slot) in m.iter_mut().enumerate() {
                *slot += ha * self.entries[a * n * n + bc];
            }
        }
        // Contraction of a symmetric tensor is symmetric; enforce it bitwise.
        for i in 0..n {
            for j in (i + 1)..n {
                let v = 0.5 * (m[i * n + j] + m[j * n + i]);
                m[i * n + j] = v;
                m[j * n + i] = v;
            }
        }
        SymmetricForm::from_raw(n, m)
    }
}

#[derive(Serialize, Deserialize)]
struct TensorRepr {
    dim: usize,
    entries: Vec<Vec<Vec<f64>>>,
}

impl Serialize for TrilinearForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim;
        let entries = (0..n)
            .map(|a| (0..n).map(|b| (0..n).map(|c| self.get(a, b, c)).collect()).collect())
            .collect();
        TensorRepr { dim: n, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TrilinearForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TensorRepr::deserialize(d)?;
        let n = repr.dim;
        let ok = repr.entries.len() == n
            && repr.entries.iter().all(|m| m.len() == n && m.iter().all(|r| r.len() == n));
        if !ok {
            return Err(serde::de::Error::custom("entries must be dim×dim×dim"));
        }
        let flat: Vec<f64> = repr.entries.into_iter().flatten().flatten().collect();
        TrilinearForm::from_nearly_symmetric(n, flat, 1e-12).map_err(serde::de::Error::custom)
    }
}

/// Polarizes a homogeneous cubic by inclusion–exclusion:
/// `6v(h,k,p) = v(h+k+p) + v(h) + v(k) + v(p) − v(h+k) − v(k+p) − v(h+p)`.
pub fn polarize_cubic<F: Fn(&[f64]) -> f64>(v: F, dim: usize) -> Result<TrilinearForm> {
    if dim == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    check_homogeneity(&v, dim, 3)?;
    let n = dim;
    let single: Vec<f64> = (0..n).map(|i| v(&unit(n, i))).collect();
    let mut pair = vec![0.0; n * n];
    for a in 0..n {
        for b in a..n {
            let mut e = unit(n, a);
            e[b] += 1.0;
            let x = v(&e);
            pair[a * n + b] = x;
            pair[b * n + a] = x;
        }
    }
    let mut t = vec![0.0; n * n * n];
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                let mut e = unit(n, a);
                e[b] += 1.0;
                e[c] += 1.0;
                let x = (v(&e) + single[a] + single[b] + single[c]
                    - pair[a * n + b]
                    - pair[b * n + c]
                    - pair[a * n + c])
                    / 6.0;
                for (i, j, k) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                    t[(i * n + j) * n + k] = x;
                }
            }
        }
    }
    let form = TrilinearForm { dim, entries: t };
    let mut rng = ChaCha8Rng::seed_from_u64(FORMS_SEED ^ 2);
    for _ in 0..POLARIZATION_SAMPLES {
        let h = sample_vector(&mut rng, dim);
        let (direct, via) = (v(&h), form.cubic(&h));
        let hn = h.iter().map(|x| x.abs()).sum::<f64>();
        let size = form.entries.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        let scale = hn.powi(3) * size.max(f64::MIN_POSITIVE) + direct.abs();
        if (direct - via).abs() > POLARIZATION_TOL * scale {
            return Err(Error::Contract(format!(
                "evaluator is not a cubic form: v(h) = {direct}, T(h,h,h) = {via}"
            )));
        }
    }
    Ok(form)
}

/// `b(h,k)² − q(h)·q(k)` for a form with exactly one positive eigenvalue and
/// `q(h) > 0`. The result is non-negative up to rounding (reversed
/// Cauchy–Schwarz).
pub fn lorentz_cauchy_schwarz_residual(form: &SymmetricForm, h: &[f64], k: &[f64]) -> Result<f64> {
    ensure_finite(h, "h")?;
    ensure_finite(k, "k")?;
    let sig = form.signature(DEFAULT_ZERO_THRESHOLD)?;
    if sig.positive != 1 {
        return Err(Error::Domain(format!("form signature {sig} is not Lorentzian (1, *, *)")));
    }
    let qh = form.eval(h);
    if qh <= 0.0 {
        return Err(Error::Domain(format!("q(h) = {qh} is not positive")));
    }
    let b = form.bilinear(h, k);
    Ok(b * b - qh * form.eval(k))
}

/// The three coefficients of the quadratic polynomial `Aλ² ∓ 2λB + C` from
/// the equality-case argument for mixed areas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbcResiduals {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl AbcResiduals {
    /// `B² − A·C`, non-positive when both polynomials are non-negative.
    pub fn discriminant(&self) -> f64 {
        self.b * self.b - self.a * self.c
    }
}

/// With `K₁,K₂,K₃` given by `h1,h2,h3`:
/// `A = area(K₁,K₃)² − area(K₁)area(K₃)`,
/// `B = area(K₂,K₃)area(K₁) − area(K₁,K₂)area(K₁,K₃)`,
/// `C = area(K₁,K₂)² − area(K₁)area(K₂)`.
pub fn abc_lemma_residuals(area: &SymmetricForm, h1: &[f64], h2: &[f64], h3: &[f64]) -> Result<AbcResiduals> {
    ensure_finite(h1, "h1")?;
    ensure_finite(h2, "h2")?;
    ensure_finite(h3, "h3")?;
    let q1 = area.eval(h1);
    let q2 = area.eval(h2);
    let q3 = area.eval(h3);
    let b12 = area.bilinear(h1, h2);
    let b13 = area.bilinear(h1, h3);
    let b23 = area.bilinear(h2, h3);
    Ok(AbcResiduals {
        a: b13 * b13 - q1 * q3,
        b: b23 * q1 - b12 * b13,
        c: b12 * b12 - q1 * q2,
    })
}

/// Dense Hermitian matrix viewed as a Hermitian form `z*·H·z`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianForm {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermitianForm {
    /// Requires `|Hᵢⱼ − conj(Hⱼᵢ)| ≤ 1e−14·max|H|`; stores the Hermitian part.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::InvalidInput("matrix size mismatch".into()));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite Hermitian entry".into()));
        }
        let size = entries.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
        let mut e = entries;
        for i in 0..dim {
            for j in i..dim {
                let a = e[i * dim + j];
                let b = e[j * dim + i].conj();
                if (a - b).norm() > 1e-14 * size.max(f64::MIN_POSITIVE) {
                    return Err(Error::InvalidInput(format!("entries ({i},{j}) are not conjugate-symmetric")));
                }
                let m = (a + b) * 0.5;
                e[i * dim + j] = m;
                e[j * dim + i] = m.conj();
            }
        }
        Ok(HermitianForm { dim, entries: e })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn sesquilinear(&self, w: &[Complex64], z: &[Complex64]) -> Complex64 {
        let n = self.dim;
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                s += w[i].conj() * self.entries[i * n + j] * z[j];
            }
        }
        s
    }

    /// `z*·H·z`, real for a Hermitian `H`.
    pub fn eval(&self, z: &[Complex64]) -> f64 {
        self.sesquilinear(z, z).re
    }

    /// `B*·H·B` for the subspace spanned by the given column vectors.
    pub fn restrict(&self, basis: &[Vec<Complex64>]) -> Result<HermitianForm> {
        let k = basis.len();
        let mut e = vec![Complex64::new(0.0, 0.0); k * k];
        for a in 0..k {
            for b in 0..k {
                e[a * k + b] = self.sesquilinear(&basis[a], &basis[b]);
            }
        }
        HermitianForm::new(k, e)
    }

    /// Eigenvalues via the real symmetric embedding `[[Re, −Im], [Im, Re]]`,
    /// whose spectrum is that of `H` with every eigenvalue doubled.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let n = self.dim;
        let m = 2 * n;
        let mut r = vec![0.0; m * m];
        for i in 0..n {
            for j in 0..n {
                let z = self.entries[i * n + j];
                r[i * m + j] = z.re;
                r[(i + n) * m + (j + n)] = z.re;
                r[i * m + (j + n)] = -z.im;
                r[(i + n) * m + j] = z.im;
            }
        }
        let values = symmetric_eigen(&r, m)?.values;
        // Ascending order pairs up duplicates.
        Ok(values.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect())
    }

    pub fn signature(&self, zero_threshold: f64) -> Result<Signature> {
        classify(&self.eigenvalues()?, zero_threshold)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_signature() {
        let f = SymmetricForm::diagonal(&[1.0, -1.0, 0.0]);
        assert_eq!(f.signature(1e-9).unwrap().as_tuple(), (1, 1, 1));
    }

    #[test]
    fn zero_form_signature() {
        assert_eq!(SymmetricForm::zeros(4).signature(1e-9).unwrap().as_tuple(), (0, 4, 0));
    }

    #[test]
    fn non_finite_entries_rejected() {
        assert!(matches!(
            SymmetricForm::new(2, vec![1.0, f64::NAN, f64::NAN, 0.0]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn threshold_out_of_range_rejected() {
        assert!(SymmetricForm::identity(2).signature(0.0).is_err());
        assert!(SymmetricForm::identity(2).signature(1.0).is_err());
    }

    #[test]
    fn polarize_product() {
        let f = polarize(|h| h[0] * h[1], 2).unwrap();
        assert_eq!(f.rows(), vec![vec![0.0, 0.5], vec![0.5, 0.0]]);
    }

    #[test]
    fn polarize_norm_is_identity() {
        let f = polarize(|h| h.iter().map(|x| x * x).sum(), 3).unwrap();
        assert_eq!(f, SymmetricForm::identity(3));
    }

    #[test]
    fn polarize_rejects_non_homogeneous() {
        assert!(matches!(polarize(|h| h[0] * h[0] + h[1], 2), Err(Error::Contract(_))));
        assert!(matches!(polarize(|h| h[0].powi(3), 2), Err(Error::Contract(_))));
    }

    #[test]
    fn polarize_rejects_homogeneous_non_quadratic() {
        let q = |h: &[f64]| {
            let s = h[0] * h[0] + h[1] * h[1];
            if s == 0.0 { 0.0 } else { h[0].powi(4) / s }
        };
        assert!(matches!(polarize(q, 2), Err(Error::Contract(_))));
    }

    #[test]
    fn polarize_cubic_monomials() {
        let t = polarize_cubic(|h| h[0] * h[1] * h[2], 3).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let mut idx = [a, b, c];
                    idx.sort();
                    let expected = if idx == [0, 1, 2] { 1.0 / 6.0 } else { 0.0 };
                    assert!((t.get(a, b, c) - expected).abs() < 1e-15);
                }
            }
        }
        let t = polarize_cubic(|h| h[0].powi(3), 2).unwrap();
        assert_eq!(t.get(0, 0, 0), 1.0);
        assert_eq!(t.entries().iter().filter(|&&x| x != 0.0).count(), 1);
    }

    #[test]
    fn lorentz_residual_examples() {
        let f = SymmetricForm::diagonal(&[1.0, -1.0]);
        assert_eq!(lorentz_cauchy_schwarz_residual(&f, &[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
        let h = [1.0, 0.3];
        assert_eq!(lorentz_cauchy_schwarz_residual(&f, &h, &h).unwrap(), 0.0);
        assert!(matches!(
            lorentz_cauchy_schwarz_residual(&f, &[0.0, 1.0], &h),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            lorentz_cauchy_schwarz_residual(&SymmetricForm::identity(2), &h, &h),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn abc_trivial_cases() {
        let f = SymmetricForm::diagonal(&[1.0, -1.0, -1.0]);
        let h = [2.0, 0.5, 0.1];
        let r = abc_lemma_residuals(&f, &h, &h, &h).unwrap();
        assert_eq!((r.a, r.b, r.c), (0.0, 0.0, 0.0));
        let h3 = [4.0, 1.0, 0.2];
        let r = abc_lemma_residuals(&f, &h, &[1.0, 0.2, -0.3], &h3).unwrap();
        assert!(r.a.abs() < 1e-12 && r.b.abs() < 1e-12);
    }

    #[test]
    fn hermitian_two_by_two() {
        let i4 = Complex64::new(0.0, 0.25);
        let h = HermitianForm::new(2, vec![Complex64::new(0.0, 0.0), -i4, i4, Complex64::new(0.0, 0.0)]).unwrap();
        let ev = h.eigenvalues().unwrap();
        assert!((ev[0] + 0.25).abs() < 1e-15 && (ev[1] - 0.25).abs() < 1e-15);
        assert_eq!(h.signature(1e-9).unwrap().as_tuple(), (1, 0, 1));
    }

    #[test]
    fn hermitian_rejects_asymmetric() {
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        assert!(HermitianForm::new(2, vec![one, i, i, one]).is_err());
    }

    #[test]
    fn form_json_shape() {
        let f = SymmetricForm::diagonal(&[1.0, 2.0]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"dim":2,"entries":[[1.0,0.0],[0.0,2.0]]}"#);
        let back: SymmetricForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let t = polarize_cubic(|h| h[0] * h[0] * h[1], 2).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.starts_with(r#"{"dim":2,"entries":[[[0.0,"#));
        let back: TrilinearForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back.get(0, 0, 1), t.get(0, 0, 1));
    }
}
