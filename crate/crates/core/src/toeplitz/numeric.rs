//! Floating-point Toeplitz layer: truncated Fredholm determinants of
//! multiplicative commutators of exponential symbols.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pivots below this modulus abort the determinant.
pub const PIVOT_THRESHOLD: f64 = 1e-12;

/// Laurent polynomial `Σ f_k z^k` with complex double coefficients.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TrigPolySpec", into = "TrigPolySpec")]
pub struct TrigPoly {
    coeffs: BTreeMap<i64, Complex64>,
}

/// JSON form: `{"coeffs": {"-1": [re, im], "1": [re, im]}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TrigPolySpec {
    coeffs: BTreeMap<String, [f64; 2]>,
}

impl TryFrom<TrigPolySpec> for TrigPoly {
    type Error = String;
    fn try_from(s: TrigPolySpec) -> std::result::Result<Self, String> {
        let mut coeffs = Vec::with_capacity(s.coeffs.len());
        for (k, [re, im]) in s.coeffs {
            let d: i64 = k
                .trim()
                .parse()
                .map_err(|_| format!("invalid degree {k:?}"))?;
            if !re.is_finite() || !im.is_finite() {
                return Err(format!("non-finite coefficient at degree {d}"));
            }
            coeffs.push((d, Complex64::new(re, im)));
        }
        Ok(TrigPoly::new(coeffs))
    }
}

impl From<TrigPoly> for TrigPolySpec {
    fn from(p: TrigPoly) -> Self {
        TrigPolySpec {
            coeffs: p
                .coeffs
                .into_iter()
                .map(|(k, z)| (k.to_string(), [z.re, z.im]))
                .collect(),
        }
    }
}

impl TrigPoly {
    /// Later entries for the same degree are added to earlier ones.
    pub fn new(coeffs: Vec<(i64, Complex64)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, z) in coeffs {
            *map.entry(k).or_insert(Complex64::new(0.0, 0.0)) += z;
        }
        map.retain(|_, z| *z != Complex64::new(0.0, 0.0));
        TrigPoly { coeffs: map }
    }

    /// `Σ c z^k` from `(k, re)` pairs.
    pub fn real(terms: &[(i64, f64)]) -> Self {
        Self::new(
            terms
                .iter()
                .map(|&(k, x)| (k, Complex64::new(x, 0.0)))
                .collect(),
        )
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        self.coeffs.get(&k).copied().unwrap_or_default()
    }

    /// `K = max |k|` over the support (0 for the zero polynomial).
    pub fn max_degree(&self) -> i64 {
        self.coeffs.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&k, &z)| (k, z))
    }

    fn filtered(&self, keep: impl Fn(i64) -> bool) -> TrigPoly {
        TrigPoly {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| keep(**k))
                .map(|(&k, &z)| (k, z))
                .collect(),
        }
    }

    /// Part with strictly negative degrees.
    pub fn minus_part(&self) -> TrigPoly {
        self.filtered(|k| k < 0)
    }

    /// Part with degrees `≥ 0`.
    pub fn plus_part(&self) -> TrigPoly {
        self.filtered(|k| k >= 0)
    }

    pub fn neg(&self) -> TrigPoly {
        TrigPoly {
            coeffs: self.coeffs.iter().map(|(&k, &z)| (k, -z)).collect(),
        }
    }
}

/// Coefficients `h_0..=h_len` of `exp(Σ_{k≥1} p_k w^k)` via `m h_m = Σ k p_k h_{m−k}`.
fn exp_one_sided(p: &[(usize, Complex64)], len: usize) -> Vec<Complex64> {
    let mut h = vec![Complex64::new(0.0, 0.0); len + 1];
    h[0] = Complex64::new(1.0, 0.0);
    for m in 1..=len {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(k, pk) in p {
            if k <= m {
                acc += pk * h[m - k] * k as f64;
            }
        }
        h[m] = acc / m as f64;
    }
    h
}

/// Fourier coefficients of `e^f` on degrees `-n..=n` (index `j + n`).
///
/// `e^f = e^{f_0} e^{f_+} e^{f_−}`; each one-sided factor is expanded by the
/// derivative recurrence to degree `2n + 64` before the product is formed,
/// so the discarded tail is of order `‖f‖^{m/K} / ⌊m/K⌋!` with `m ≥ n + 64`.
pub fn exp_symbol_coeffs(f: &TrigPoly, n: usize) -> Vec<Complex64> {
    let len = 2 * n + 64;
    let side = |sign: i64| -> Vec<(usize, Complex64)> {
        f.terms()
            .filter(|(k, _)| k.signum() == sign)
            .map(|(k, z)| (k.unsigned_abs() as usize, z))
            .collect()
    };
    let hp = exp_one_sided(&side(1), len);
    let hm = exp_one_sided(&side(-1), len);
    let scale = f.coeff(0).exp();
    let ni = n as i64;
    (-ni..=ni)
        .map(|j| {
            let mut acc = Complex64::new(0.0, 0.0);
            // coefficient of z^j: Σ_m hp[j + m] · hm[m]
            let start = if j < 0 { (-j) as usize } else { 0 };
            for (m, b) in hm.iter().enumerate().take(len + 1).skip(start) {
                let idx = (j + m as i64) as usize;
                if idx > len {
                    break;
                }
                acc += hp[idx] * b;
            }
            acc * scale
        })
        .collect()
}

/// `exp(Σ_k k f_{−k} g_k)`.
pub fn closed_form_di(f: &TrigPoly, g: &TrigPoly) -> Complex64 {
    let s: Complex64 = g.terms().map(|(k, gk)| f.coeff(-k) * gk * k as f64).sum();
    s.exp()
}

/// `4 K ⌈log₂(1/ε)⌉` with `ε = 1e−14`, taking `K` over both symbols.
pub fn default_buffer(f: &TrigPoly, g: &TrigPoly) -> usize {
    let k = f.max_degree().max(g.max_degree()).max(1) as usize;
    let bits = ((1.0f64 / 1e-14).ln() / 2f64.ln()).ceil() as usize;
    4 * k * bits
}

/// `T_{jk} = φ_{j−k}` of size `m` from the coefficients of `e^φ`.
fn toeplitz_of_exp(f: &TrigPoly, m: usize) -> DMatrix<Complex64> {
    let c = exp_symbol_coeffs(f, m.saturating_sub(1));
    let off = m as i64 - 1;
    DMatrix::from_fn(m, m, |j, k| c[(j as i64 - k as i64 + off) as usize])
}

/// Determinant of the leading `n×n` block of `T_{e^f} T_{e^g} T_{e^f}⁻¹ T_{e^g}⁻¹`,
/// with the factors built at size `n + buffer` and the inverses from the
/// Wiener–Hopf factorization `T_{e^f}⁻¹ = T_{e^{−f_+−f_0}} T_{e^{−f_−}}`.
pub fn numeric_det_invariant(
    f: &TrigPoly,
    g: &TrigPoly,
    n: usize,
    buffer: usize,
) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "matrix size must be positive".into(),
        ));
    }
    let m = n + buffer;
    let t = |p: &TrigPoly| toeplitz_of_exp(p, m);
    // only the first n rows of the product are needed
    let rows = t(f).rows(0, n).into_owned() * t(g);
    let rows = rows * t(&f.plus_part().neg()) * t(&f.minus_part().neg());
    let rows = rows * t(&g.plus_part().neg());
    let block = rows * t(&g.minus_part().neg()).columns(0, n);
    let lu = block.lu();
    let min_pivot = lu
        .u()
        .diagonal()
        .iter()
        .map(|z| z.norm())
        .fold(f64::INFINITY, f64::min);
    if min_pivot.is_nan() || min_pivot < PIVOT_THRESHOLD {
        return Err(Error::TruncationUnstable { pivot: min_pivot });
    }
    Ok(lu.determinant())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub value: Complex64,
    pub error: f64,
}

/// `numeric_det_invariant` at each `n` with the default buffer, against the
/// closed form. Rows come back in the order of `ns`.
pub fn convergence_table(f: &TrigPoly, g: &TrigPoly, ns: &[usize]) -> Result<Vec<ConvergenceRow>> {
    let exact = closed_form_di(f, g);
    let buffer = default_buffer(f, g);
    ns.par_iter()
        .map(|&n| {
            let value = numeric_det_invariant(f, g, n, buffer)?;
            Ok(ConvergenceRow {
                n,
                value,
                error: (value - exact).norm(),
            })
        })
        .collect()
}
