//! Exact finite-dimensional checks of how perturbation scalars and joint
//! torsion change when operators are multiplied or conjugated by an
//! invertible `U`.
//!
//! Every restriction `U^{±1}|_X` is the matrix of the induced map between the
//! default bases of the two subquotients involved, and every `d(·,·)` factor
//! is 1 in finite dimension.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::joint::{joint_torsion_quad, perturbation_sigma};
use crate::koszul::KoszulQuadruple;
use crate::matrix::ExactMatrix;
use crate::scalar::QiScalar;
use crate::subquotient::{induced_map, Subquotient};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `σ_{A,U⁻¹DU} = σ_{A,D} · τ(U⁻¹|ker D) / τ(U⁻¹|coker D)`
    Conjugation,
    /// `σ_{AU,DU} = σ_{A,D} · τ(U⁻¹|ker D) / τ(U⁻¹|ker A)`
    RightProduct,
    /// `σ_{UA,UD} = σ_{A,D} · τ(U|coker A) / τ(U|coker D)`
    LeftProduct,
    /// `σ_{A,DU} = σ_{A,D} · τ(U⁻¹|ker D) · det U`
    DetClassRight,
    /// `σ_{A,UD} = σ_{A,D} · det U / τ(U|coker D)`
    DetClassLeft,
    /// `τ(A, BU, CU, U⁻¹DU) = τ(A, B, C, D)`
    InvertibleRight,
    /// `τ(UA, B, UCU⁻¹, UD) = τ(A, B, C, D)`
    InvertibleLeft,
    /// `τ(A, B, CU, U⁻¹D) = τ(A, B, C, D)`
    InvertibleInner,
}

impl Identity {
    pub const ALL: [Identity; 8] = [
        Identity::Conjugation,
        Identity::RightProduct,
        Identity::LeftProduct,
        Identity::DetClassRight,
        Identity::DetClassLeft,
        Identity::InvertibleRight,
        Identity::InvertibleLeft,
        Identity::InvertibleInner,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Conjugation => "conjugation",
            Identity::RightProduct => "right_product",
            Identity::LeftProduct => "left_product",
            Identity::DetClassRight => "det_class_right",
            Identity::DetClassLeft => "det_class_left",
            Identity::InvertibleRight => "invertible_right",
            Identity::InvertibleLeft => "invertible_left",
            Identity::InvertibleInner => "invertible_inner",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown identity {s:?}")))
    }
}

/// `det` of `u` restricted to `src → dst`.
fn restricted_det(u: &ExactMatrix, src: &Subquotient, dst: &Subquotient) -> Result<QiScalar> {
    induced_map(u, src, dst)?.determinant()
}

/// Both sides of the selected identity, for the pair `(A, D)` of `q` or the
/// whole quadruple.
pub fn factorization_identities(
    q: &KoszulQuadruple,
    u: &ExactMatrix,
    which: Identity,
) -> Result<(QiScalar, QiScalar)> {
    let h = q.space_dim();
    if u.shape() != (h, h) {
        return Err(Error::DimensionMismatch {
            context: "U",
            left: u.rows(),
            right: h,
        });
    }
    let u_inv = u.inverse().map_err(|_| Error::Hypothesis("U invertible"))?;
    let (a, b, c, d) = (&q.a, &q.b, &q.c, &q.d);
    let ker = Subquotient::kernel;
    let coker = Subquotient::cokernel;

    match which {
        Identity::Conjugation => {
            let d2 = &(&u_inv * d) * u;
            let lhs = perturbation_sigma(a, &d2)?;
            let rhs = perturbation_sigma(a, d)? * restricted_det(&u_inv, &ker(d), &ker(&d2))?
                / restricted_det(&u_inv, &coker(d), &coker(&d2))?;
            Ok((lhs, rhs))
        }
        Identity::RightProduct => {
            let (a2, d2) = (a * u, d * u);
            let lhs = perturbation_sigma(&a2, &d2)?;
            let rhs = perturbation_sigma(a, d)? * restricted_det(&u_inv, &ker(d), &ker(&d2))?
                / restricted_det(&u_inv, &ker(a), &ker(&a2))?;
            Ok((lhs, rhs))
        }
        Identity::LeftProduct => {
            let (a2, d2) = (u * a, u * d);
            let lhs = perturbation_sigma(&a2, &d2)?;
            let rhs = perturbation_sigma(a, d)? * restricted_det(u, &coker(a), &coker(&a2))?
                / restricted_det(u, &coker(d), &coker(&d2))?;
            Ok((lhs, rhs))
        }
        Identity::DetClassRight => {
            let d2 = d * u;
            let lhs = perturbation_sigma(a, &d2)?;
            let rhs = perturbation_sigma(a, d)?
                * restricted_det(&u_inv, &ker(d), &ker(&d2))?
                * u.determinant()?;
            Ok((lhs, rhs))
        }
        Identity::DetClassLeft => {
            let d2 = u * d;
            let lhs = perturbation_sigma(a, &d2)?;
            let rhs = perturbation_sigma(a, d)? * u.determinant()?
                / restricted_det(u, &coker(d), &coker(&d2))?;
            Ok((lhs, rhs))
        }
        Identity::InvertibleRight => {
            let q2 = KoszulQuadruple::new(a.clone(), b * u, c * u, &(&u_inv * d) * u)?;
            Ok((joint_torsion_quad(&q2)?.value, joint_torsion_quad(q)?.value))
        }
        Identity::InvertibleLeft => {
            let q2 = KoszulQuadruple::new(u * a, b.clone(), &(u * c) * &u_inv, u * d)?;
            Ok((joint_torsion_quad(&q2)?.value, joint_torsion_quad(q)?.value))
        }
        Identity::InvertibleInner => {
            let q2 = KoszulQuadruple::new(a.clone(), b.clone(), c * u, &u_inv * d)?;
            Ok((joint_torsion_quad(&q2)?.value, joint_torsion_quad(q)?.value))
        }
    }
}
