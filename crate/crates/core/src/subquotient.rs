//! Based subquotients `Z/B` of a coordinate space and the maps they induce.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;

/// A subquotient `Z/B ⊆ C^ambient_dim / B` with a fixed basis of classes.
///
/// All bases are stored as column matrices in ambient coordinates. The
/// cycle basis is `[boundary_basis | rep_basis]`, and `left_inverse` is a
/// left inverse of it, so class coordinates of any cycle are the last
/// `dim()` entries of `left_inverse · v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    ambient_dim: usize,
    cycle_basis: ExactMatrix,
    boundary_basis: ExactMatrix,
    rep_basis: ExactMatrix,
    left_inverse: ExactMatrix,
}

/// `cycles` and `boundaries` hold spanning vectors as columns.
pub fn build_subquotient(
    ambient_dim: usize,
    cycles: &ExactMatrix,
    boundaries: &ExactMatrix,
) -> Result<Subquotient> {
    for m in [cycles, boundaries] {
        if m.rows() != ambient_dim {
            return Err(Error::DimensionMismatch {
                context: "subquotient generators",
                left: m.rows(),
                right: ambient_dim,
            });
        }
    }
    let bnd = boundaries.image();
    let all = bnd.hstack(cycles)?;
    let pivots = all.pivot_columns();
    if pivots.len() != cycles.rank() {
        return Err(Error::NotSubquotient);
    }
    let b = bnd.cols();
    debug_assert!(pivots[..b].iter().copied().eq(0..b));
    let rep_idx: Vec<usize> = pivots[b..].to_vec();
    let reps = all.select_columns(&rep_idx);
    let basis = bnd.hstack(&reps)?;
    let d = basis.rref_decompose();
    let left_inverse = d.transform.row_range(0, basis.cols());
    Ok(Subquotient {
        ambient_dim,
        cycle_basis: basis,
        boundary_basis: bnd,
        rep_basis: reps,
        left_inverse,
    })
}

impl Subquotient {
    /// `ker m` as a subspace of the source of `m`.
    pub fn kernel(m: &ExactMatrix) -> Self {
        let n = m.cols();
        build_subquotient(n, &m.kernel(), &ExactMatrix::zeros(n, 0)).expect("kernel is a subspace")
    }

    /// `C^rows / im m`.
    pub fn cokernel(m: &ExactMatrix) -> Self {
        let n = m.rows();
        build_subquotient(n, &ExactMatrix::identity(n), m).expect("image lies in the whole space")
    }

    /// `C^n` with its standard basis.
    pub fn whole(n: usize) -> Self {
        build_subquotient(n, &ExactMatrix::identity(n), &ExactMatrix::zeros(n, 0))
            .expect("whole space")
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.rep_basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cycle_basis(&self) -> &ExactMatrix {
        &self.cycle_basis
    }

    pub fn boundary_basis(&self) -> &ExactMatrix {
        &self.boundary_basis
    }

    pub fn rep_basis(&self) -> &ExactMatrix {
        &self.rep_basis
    }

    /// Section: quotient coordinates to ambient representatives.
    pub fn lift_map(&self) -> &ExactMatrix {
        &self.rep_basis
    }

    /// Projection from cycles to quotient coordinates. Only meaningful on `Z`.
    pub fn project_map(&self) -> ExactMatrix {
        let z = self.cycle_basis.cols();
        self.left_inverse.row_range(z - self.dim(), z)
    }

    /// Class coordinates of the columns of `vs`, which must lie in `Z`.
    pub fn class_coords(&self, vs: &ExactMatrix) -> Result<ExactMatrix> {
        let full = self.cycle_coords(vs)?;
        let z = self.cycle_basis.cols();
        Ok(full.row_range(z - self.dim(), z))
    }

    /// Coordinates in the full cycle basis `[boundary | rep]`.
    fn cycle_coords(&self, vs: &ExactMatrix) -> Result<ExactMatrix> {
        let c = self.left_inverse.try_mul(vs)?;
        if &self.cycle_basis * &c != *vs {
            return Err(Error::MapDoesNotDescend("image leaves the cycles"));
        }
        Ok(c)
    }

    /// Same subquotient with class basis `rep_basis · g`.
    pub fn rebase(&self, g: &ExactMatrix) -> Result<Self> {
        let q = self.dim();
        if g.shape() != (q, q) {
            return Err(Error::DimensionMismatch {
                context: "subquotient change of basis",
                left: g.rows(),
                right: q,
            });
        }
        let g_inv = g
            .inverse()
            .map_err(|_| Error::Singular("change of basis"))?;
        let b = self.boundary_basis.cols();
        let reps = &self.rep_basis * g;
        let mut left_inverse = self.left_inverse.clone();
        let new_tail = &g_inv * &self.left_inverse.row_range(b, b + q);
        left_inverse.set_block(b, 0, &new_tail);
        Ok(Subquotient {
            ambient_dim: self.ambient_dim,
            cycle_basis: self.boundary_basis.hstack(&reps)?,
            boundary_basis: self.boundary_basis.clone(),
            rep_basis: reps,
            left_inverse,
        })
    }
}

/// Matrix of the map `src → dst` induced by `m`, in the two class bases.
pub fn induced_map(m: &ExactMatrix, src: &Subquotient, dst: &Subquotient) -> Result<ExactMatrix> {
    if m.shape() != (dst.ambient_dim, src.ambient_dim) {
        return Err(Error::DimensionMismatch {
            context: "induced map",
            left: m.cols(),
            right: src.ambient_dim,
        });
    }
    let on_bnd = dst
        .class_coords(&(m * &src.boundary_basis))
        .map_err(|_| Error::MapDoesNotDescend("boundaries leave the cycles"))?;
    if !on_bnd.is_zero() {
        return Err(Error::MapDoesNotDescend(
            "boundaries do not map to boundaries",
        ));
    }
    dst.class_coords(&(m * &src.rep_basis))
        .map_err(|_| Error::MapDoesNotDescend("cycles do not map to cycles"))
}

/// Whether the columns of `v` lie in the span of the columns of `basis`.
pub fn in_span(basis: &ExactMatrix, v: &ExactMatrix) -> bool {
    let r = basis.rank();
    basis.hstack(v).map(|m| m.rank() == r).unwrap_or(false)
}
