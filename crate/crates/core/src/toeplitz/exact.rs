//! Analytic polynomial symbols in factored form and the finite models of
//! their Toeplitz cokernels.
//!
//! For `f = c ∏(z − r)` with no root on the circle, `T_f` has trivial kernel
//! and `coker T_f ≅ C[z]/(f_in)`, where `f_in` is the monic product over the
//! roots inside the disk. The factors with roots outside act invertibly and
//! only enter through evaluation.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::joint::{lefschetz_ratio, pseudoinv_formula, restriction_sequences, RestrictionData};
use crate::matrix::ExactMatrix;
use crate::scalar::{qi_modulus_cmp_one, QiScalar};

/// `leading · ∏ (z − root)`, with every root classified as inside or outside
/// the unit disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SymbolSpec", into = "SymbolSpec")]
pub struct AnalyticSymbol {
    leading: QiScalar,
    roots: Vec<QiScalar>,
    inside: Vec<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolSpec {
    leading: QiScalar,
    #[serde(default)]
    roots: Vec<QiScalar>,
}

impl TryFrom<SymbolSpec> for AnalyticSymbol {
    type Error = Error;
    fn try_from(s: SymbolSpec) -> Result<Self> {
        make_symbol(s.leading, s.roots)
    }
}

impl From<AnalyticSymbol> for SymbolSpec {
    fn from(s: AnalyticSymbol) -> Self {
        SymbolSpec {
            leading: s.leading,
            roots: s.roots,
        }
    }
}

pub fn make_symbol(leading: QiScalar, roots: Vec<QiScalar>) -> Result<AnalyticSymbol> {
    if leading.is_zero() {
        return Err(Error::ZeroLeading);
    }
    let mut inside = Vec::with_capacity(roots.len());
    for r in &roots {
        match qi_modulus_cmp_one(r) {
            Ordering::Equal => return Err(Error::NotFredholm(r.to_string())),
            o => inside.push(o == Ordering::Less),
        }
    }
    Ok(AnalyticSymbol {
        leading,
        roots,
        inside,
    })
}

impl AnalyticSymbol {
    pub fn leading(&self) -> &QiScalar {
        &self.leading
    }

    pub fn roots(&self) -> &[QiScalar] {
        &self.roots
    }

    /// Roots inside the disk, with multiplicity.
    pub fn inside_roots(&self) -> Vec<QiScalar> {
        self.roots
            .iter()
            .zip(&self.inside)
            .filter(|(_, &i)| i)
            .map(|(r, _)| r.clone())
            .collect()
    }

    pub fn winding(&self) -> usize {
        self.inside.iter().filter(|&&i| i).count()
    }

    pub fn evaluate(&self, z: &QiScalar) -> QiScalar {
        self.roots
            .iter()
            .fold(self.leading.clone(), |acc, r| acc * (z - r))
    }

    pub fn product(&self, other: &AnalyticSymbol) -> AnalyticSymbol {
        AnalyticSymbol {
            leading: &self.leading * &other.leading,
            roots: self.roots.iter().chain(&other.roots).cloned().collect(),
            inside: self.inside.iter().chain(&other.inside).copied().collect(),
        }
    }

    /// Coefficients of the polynomial, constant term first.
    pub fn coefficients(&self) -> Vec<QiScalar> {
        let mut c = vec![self.leading.clone()];
        for r in &self.roots {
            // multiply by (z - r)
            let mut next = vec![QiScalar::zero(); c.len() + 1];
            for (i, x) in c.iter().enumerate() {
                next[i + 1] += x;
                next[i] -= &(x * r);
            }
            c = next;
        }
        c
    }
}

/// `C[z]/(f_in)` in the monomial basis `1, z, …, z^{d−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelModel {
    dim: usize,
    /// Multiplication by `z`.
    companion: ExactMatrix,
}

impl CokernelModel {
    pub fn new(f: &AnalyticSymbol) -> Self {
        let f_in = make_symbol(QiScalar::one(), f.inside_roots())
            .expect("inside roots are off the circle")
            .coefficients();
        let d = f_in.len() - 1;
        let mut companion = ExactMatrix::zeros(d, d);
        for j in 0..d {
            if j + 1 < d {
                companion[(j + 1, j)] = QiScalar::one();
            } else {
                // z^d ≡ −Σ c_i z^i
                for (i, c) in f_in[..d].iter().enumerate() {
                    companion[(i, j)] = -c;
                }
            }
        }
        CokernelModel { dim: d, companion }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn companion(&self) -> &ExactMatrix {
        &self.companion
    }

    /// Multiplication by `g` on the quotient ring.
    pub fn mult_matrix(&self, g: &AnalyticSymbol) -> ExactMatrix {
        let id = ExactMatrix::identity(self.dim);
        g.roots.iter().fold(id.scale(&g.leading), |acc, b| {
            &acc * &(&self.companion - &id.scale(b))
        })
    }
}

/// Matrix of `T_g` on `coker T_f`.
pub fn coker_action(f: &AnalyticSymbol, g: &AnalyticSymbol) -> ExactMatrix {
    CokernelModel::new(f).mult_matrix(g)
}

fn check_acyclic(f: &AnalyticSymbol, g: &AnalyticSymbol) -> Result<()> {
    let g_in = g.inside_roots();
    match f.inside_roots().into_iter().find(|a| g_in.contains(a)) {
        Some(a) => Err(Error::NotAcyclic(a.to_string())),
        None => Ok(()),
    }
}

/// Kernel and cokernel restrictions of the pair `(T_f, T_g)`.
pub fn toeplitz_restriction_data(
    f: &AnalyticSymbol,
    g: &AnalyticSymbol,
) -> Result<RestrictionData> {
    check_acyclic(f, g)?;
    let empty = ExactMatrix::zeros(0, 0);
    Ok(RestrictionData {
        b_on_ker_a: empty.clone(),
        b_on_coker_a: coker_action(f, g),
        a_on_coker_b: coker_action(g, f),
        a_on_ker_b: empty,
    })
}

/// `τ(T_f, T_g)` from the cokernel models.
pub fn toeplitz_joint_torsion(f: &AnalyticSymbol, g: &AnalyticSymbol) -> Result<QiScalar> {
    lefschetz_ratio(&toeplitz_restriction_data(f, g)?)
}

/// `τ(T_f, T_g)` through the graded pseudoinverse determinant of the
/// restriction sequences.
pub fn toeplitz_pseudoinverse_formula(f: &AnalyticSymbol, g: &AnalyticSymbol) -> Result<QiScalar> {
    let r = toeplitz_restriction_data(f, g)?;
    let (ea, eb) = restriction_sequences(&r)?;
    pseudoinv_formula(&ea, &eb, r.mu_a(), r.mu_b())
}

/// `∏_{g(b)=0, |b|<1} f(b) / ∏_{f(a)=0, |a|<1} g(a)`, by direct evaluation.
pub fn tame_symbol(f: &AnalyticSymbol, g: &AnalyticSymbol) -> Result<QiScalar> {
    check_acyclic(f, g)?;
    let num: QiScalar = g.inside_roots().iter().map(|b| f.evaluate(b)).product();
    let den: QiScalar = f.inside_roots().iter().map(|a| g.evaluate(a)).product();
    num.checked_div(&den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QiScalar {
        s.parse().unwrap()
    }

    fn sym(lead: &str, roots: &[&str]) -> AnalyticSymbol {
        make_symbol(q(lead), roots.iter().map(|r| q(r)).collect()).unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(sym("1", &["1/2"]).winding(), 1);
        assert_eq!(sym("1", &["2"]).winding(), 0);
        assert_eq!(
            make_symbol(q("1"), vec![q("i")]),
            Err(Error::NotFredholm("1*i".into()))
        );
        assert_eq!(make_symbol(q("0"), vec![]), Err(Error::ZeroLeading));
        assert_eq!(
            make_symbol(q("1"), vec![q("3/5+4/5*i")])
                .unwrap_err()
                .name(),
            "not_fredholm"
        );
    }

    #[test]
    fn coker_action_examples() {
        let f = sym("1", &["1/2"]);
        let g = sym("1", &["1/3"]);
        assert_eq!(coker_action(&f, &g), ExactMatrix::from_strs(&[&["1/6"]]));

        let f2 = sym("1", &["1/2", "-1/2"]);
        let z = sym("1", &["0"]);
        assert_eq!(
            coker_action(&f2, &z),
            ExactMatrix::from_strs(&[&["0", "1/4"], &["1", "0"]])
        );

        let out = sym("1", &["2"]);
        assert_eq!(coker_action(&out, &g).shape(), (0, 0));
    }

    #[test]
    fn model_determinant_is_product_of_values() {
        let f = sym("3", &["1/2", "-1/3*i", "5", "1/4+1/4*i"]);
        let g = sym("2-i", &["1/5", "3", "-1/2"]);
        let det = coker_action(&f, &g).determinant().unwrap();
        let expect: QiScalar = f.inside_roots().iter().map(|a| g.evaluate(a)).product();
        assert_eq!(det, expect);
    }

    #[test]
    fn torsion_examples() {
        let cases = [
            (sym("1", &["1/2"]), sym("1", &["1/3"]), "-1"),
            (sym("1", &["1/2"]), sym("1", &["2"]), "-2/3"),
            // 2z and 1 − 2z = −2(z − 1/2)
            (sym("2", &["0"]), sym("-2", &["1/2"]), "1"),
        ];
        for (f, g, v) in cases {
            assert_eq!(toeplitz_joint_torsion(&f, &g).unwrap(), q(v));
            assert_eq!(tame_symbol(&f, &g).unwrap(), q(v));
            assert_eq!(toeplitz_pseudoinverse_formula(&f, &g).unwrap(), q(v));
        }
    }

    #[test]
    fn tame_examples() {
        assert_eq!(
            tame_symbol(&sym("1", &["0"]), &sym("1", &["1/2"])).unwrap(),
            q("-1")
        );
        let (f1, f2, g) = (sym("1", &["1/2"]), sym("1", &["1/4"]), sym("1", &["1/3"]));
        let lhs = tame_symbol(&f1.product(&f2), &g).unwrap();
        let rhs = tame_symbol(&f1, &g).unwrap() * tame_symbol(&f2, &g).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn common_inside_root_is_out_of_scope() {
        let f = sym("1", &["1/2"]);
        let err = toeplitz_joint_torsion(&f, &f).unwrap_err();
        assert_eq!(err.name(), "not_acyclic");
        assert!(err
            .to_string()
            .starts_with("Koszul complex not acyclic — out of scope"));
        // shared roots outside the disk are harmless
        let g = sym("1", &["3", "1/3"]);
        assert!(toeplitz_joint_torsion(&sym("1", &["3", "1/2"]), &g).is_ok());
    }

    #[test]
    fn symbol_json() {
        let f: AnalyticSymbol =
            serde_json::from_str(r#"{"leading":"1","roots":["1/2","-1/3*i"]}"#).unwrap();
        assert_eq!(f.winding(), 2);
        let bad = serde_json::from_str::<AnalyticSymbol>(r#"{"leading":"1","roots":["i"]}"#);
        assert!(bad.is_err());
        let back = serde_json::to_string(&f).unwrap();
        assert_eq!(back, r#"{"leading":"1","roots":["1/2","-1/3*i"]}"#);
    }
}
