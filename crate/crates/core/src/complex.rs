//! Chain complexes, their homology, and the torsion of based exact sequences.
//!
//! Degrees run `0..=n`; `d_k : V_k → V_{k-1}` for `k = 1..=n`. The determinant
//! line is `det V_n^* ⊗ det V_{n-1} ⊗ det V_{n-2}^* ⊗ …`, so degree `k` enters
//! with exponent `s_k = +1` when `n - k` is odd and `-1` when it is even.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::QiScalar;
use crate::subquotient::{build_subquotient, Subquotient};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    diffs: Vec<ExactMatrix>,
}

impl ChainComplex {
    /// `dims[k] = dim V_k`, `diffs[k - 1] = d_k`.
    pub fn new(dims: Vec<usize>, diffs: Vec<ExactMatrix>) -> Result<Self> {
        if dims.is_empty() || diffs.len() + 1 != dims.len() {
            return Err(Error::DimensionMismatch {
                context: "complex length",
                left: diffs.len() + 1,
                right: dims.len(),
            });
        }
        for (i, d) in diffs.iter().enumerate() {
            let k = i + 1;
            if d.shape() != (dims[k - 1], dims[k]) {
                return Err(Error::DimensionMismatch {
                    context: "differential shape",
                    left: d.rows() * d.cols(),
                    right: dims[k - 1] * dims[k],
                });
            }
        }
        for k in 1..diffs.len() {
            if !(&diffs[k - 1] * &diffs[k]).is_zero() {
                return Err(Error::NotAComplex { degree: k });
            }
        }
        Ok(ChainComplex { dims, diffs })
    }

    /// Spaces and differentials listed from the top: `V_n..V_0`, `d_n..d_1`.
    pub fn from_top(spaces: &[usize], diffs: &[ExactMatrix]) -> Result<Self> {
        let dims = spaces.iter().rev().copied().collect();
        let diffs = diffs.iter().rev().cloned().collect();
        Self::new(dims, diffs)
    }

    /// Top degree `n`.
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims[k]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d_k` for `1 ≤ k ≤ n`.
    pub fn diff(&self, k: usize) -> &ExactMatrix {
        &self.diffs[k - 1]
    }

    pub fn diffs(&self) -> &[ExactMatrix] {
        &self.diffs
    }

    /// `d_k` with the conventions `d_0 = 0`, `d_{n+1} = 0`.
    fn diff_or_zero(&self, k: usize) -> ExactMatrix {
        if k == 0 {
            ExactMatrix::zeros(0, self.dims[0])
        } else if k > self.top() {
            ExactMatrix::zeros(self.dims[self.top()], 0)
        } else {
            self.diffs[k - 1].clone()
        }
    }

    pub fn homology(&self, k: usize) -> Result<Subquotient> {
        if k > self.top() {
            return Err(Error::InvalidArgument(format!(
                "degree {k} above top {}",
                self.top()
            )));
        }
        let cycles = self.diff_or_zero(k).kernel();
        let boundaries = self.diff_or_zero(k + 1);
        build_subquotient(self.dims[k], &cycles, &boundaries)
    }

    /// Homology dimensions by degree, from rank counts.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..=self.top())
            .map(|k| self.dims[k] - ranks[k] - ranks[k + 1])
            .collect()
    }

    /// `ranks[k] = rank d_k` for `k = 0..=n+1`.
    fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0];
        r.extend(self.diffs.iter().map(ExactMatrix::rank));
        r.push(0);
        r
    }

    /// Degreewise direct sum; both complexes must have the same length.
    pub fn direct_sum(&self, other: &ChainComplex) -> Result<Self> {
        if self.dims.len() != other.dims.len() {
            return Err(Error::DimensionMismatch {
                context: "direct sum length",
                left: self.dims.len(),
                right: other.dims.len(),
            });
        }
        ChainComplex::new(
            self.dims
                .iter()
                .zip(&other.dims)
                .map(|(a, b)| a + b)
                .collect(),
            self.diffs
                .iter()
                .zip(&other.diffs)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        )
    }
}

/// `s_k` as a sign: `true` when degree `k` of an `n`-complex is unstarred.
pub fn unstarred(n: usize, k: usize) -> bool {
    (n - k) % 2 == 1
}

/// An exact complex together with a basis of each space, given as the
/// columns of an invertible matrix in standard coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedExactSequence {
    complex: ChainComplex,
    bases: Vec<ExactMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionScalar {
    pub value: QiScalar,
    pub basis_fingerprint: u64,
}

impl BasedExactSequence {
    /// Standard bases. Fails unless the complex is exact.
    pub fn new(complex: ChainComplex) -> Result<Self> {
        let bases = complex
            .dims
            .iter()
            .map(|&d| ExactMatrix::identity(d))
            .collect();
        Self::with_bases(complex, bases)
    }

    /// `bases` indexed by degree.
    pub fn with_bases(complex: ChainComplex, bases: Vec<ExactMatrix>) -> Result<Self> {
        if bases.len() != complex.dims.len() {
            return Err(Error::DimensionMismatch {
                context: "number of bases",
                left: bases.len(),
                right: complex.dims.len(),
            });
        }
        for (k, (b, &d)) in bases.iter().zip(&complex.dims).enumerate() {
            if b.shape() != (d, d) || b.rank() != d {
                return Err(Error::SingularBasis { degree: k });
            }
        }
        let ranks = complex.ranks();
        for k in 0..=complex.top() {
            let h = complex.dims[k] - ranks[k] - ranks[k + 1];
            if h != 0 {
                return Err(Error::NotExact { degree: k, dim: h });
            }
        }
        Ok(BasedExactSequence { complex, bases })
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn bases(&self) -> &[ExactMatrix] {
        &self.bases
    }

    /// New bases `old_k · g_k`.
    pub fn rebase(&self, changes: &[ExactMatrix]) -> Result<Self> {
        if changes.len() != self.bases.len() {
            return Err(Error::DimensionMismatch {
                context: "number of basis changes",
                left: changes.len(),
                right: self.bases.len(),
            });
        }
        let mut bases = Vec::with_capacity(changes.len());
        for (k, (b, g)) in self.bases.iter().zip(changes).enumerate() {
            if g.shape() != b.shape() || g.rank() != g.rows() {
                return Err(Error::SingularBasis { degree: k });
            }
            bases.push(b * g);
        }
        Ok(BasedExactSequence {
            complex: self.complex.clone(),
            bases,
        })
    }

    /// Degreewise direct sum with concatenated bases.
    pub fn direct_sum(&self, other: &BasedExactSequence) -> Result<Self> {
        let complex = self.complex.direct_sum(&other.complex)?;
        let bases = self
            .bases
            .iter()
            .zip(&other.bases)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Ok(BasedExactSequence { complex, bases })
    }

    /// `Σ_k r_k(self)·r_{k+1}(other)` with `r_k = rank d_k`. The torsion of
    /// the direct sum is `(−1)^e τ(self) τ(other)` for this exponent `e`.
    pub fn direct_sum_sign(&self, other: &BasedExactSequence) -> u64 {
        let (r, s) = (self.complex.ranks(), other.complex.ranks());
        r.iter()
            .zip(s.iter().skip(1))
            .map(|(a, b)| (a * b) as u64)
            .sum()
    }

    /// The standard choice `T_k`: coordinate vectors at the pivot columns of `d_k`.
    pub fn pivot_selections(&self) -> Vec<ExactMatrix> {
        (0..=self.complex.top())
            .map(|k| {
                let dim = self.complex.dims[k];
                if k == 0 {
                    return ExactMatrix::zeros(dim, 0);
                }
                ExactMatrix::identity(dim).select_columns(&self.complex.diff(k).pivot_columns())
            })
            .collect()
    }

    pub fn torsion_scalar(&self) -> TorsionScalar {
        self.torsion_scalar_with(&self.pivot_selections())
            .expect("pivot selections are valid for an exact sequence")
    }

    /// Torsion computed from arbitrary lifts `T_k` (columns in `V_k`) such
    /// that `d_k` maps them onto a basis of `im d_k`.
    pub fn torsion_scalar_with(&self, selections: &[ExactMatrix]) -> Result<TorsionScalar> {
        let c = &self.complex;
        let n = c.top();
        if selections.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                context: "number of selections",
                left: selections.len(),
                right: n + 1,
            });
        }
        let ranks = c.ranks();
        for (k, t) in selections.iter().enumerate() {
            let ok = t.shape() == (c.dims[k], ranks[k])
                && (k == 0 || c.diff(k).try_mul(t).map(|m| m.rank()).ok() == Some(ranks[k]));
            if !ok {
                return Err(Error::InvalidSelection { degree: k });
            }
        }
        let mut value = QiScalar::one();
        for k in 0..=n {
            let image_part = if k < n {
                c.diff(k + 1) * &selections[k + 1]
            } else {
                ExactMatrix::zeros(c.dims[k], 0)
            };
            let square = image_part.hstack(&selections[k])?;
            // measure against the chosen basis of V_k
            let ck = self.bases[k].inverse()?.try_mul(&square)?.determinant()?;
            if ck.is_zero() {
                return Err(Error::InvalidSelection { degree: k });
            }
            value = if unstarred(n, k) {
                value * ck
            } else {
                value.checked_div(&ck)?
            };
        }
        Ok(TorsionScalar {
            value,
            basis_fingerprint: fingerprint(&self.bases),
        })
    }
}

/// FNV-1a over the textual entries of the bases.
fn fingerprint(bases: &[ExactMatrix]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    for b in bases {
        eat(format!("{}x{}", b.rows(), b.cols()).as_bytes());
        for x in b.entries() {
            eat(x.to_string().as_bytes());
            eat(b",");
        }
        eat(b";");
    }
    h
}
