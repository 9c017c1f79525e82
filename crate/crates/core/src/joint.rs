//! Long exact sequences of the quadruple Koszul complex, perturbation
//! scalars, and joint torsion.
//!
//! Every scalar here is measured against the deterministic class bases of
//! the subquotients involved. [`QuadHomology`] holds one shared set of those
//! spaces so that the torsions and perturbation scalars of a quadruple are
//! all computed against the same bases.

use num_traits::Zero;
use serde::Serialize;

use crate::complex::{unstarred, BasedExactSequence, ChainComplex, TorsionScalar};
use crate::error::{Error, Result};
use crate::koszul::{build_quad_complex, KoszulQuadruple};
use crate::matrix::ExactMatrix;
use crate::scalar::QiScalar;
use crate::subquotient::{induced_map, Subquotient};

/// The homology spaces feeding the two long exact sequences of a quadruple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadHomology {
    pub h2: Subquotient,
    pub h1: Subquotient,
    pub h0: Subquotient,
    pub ker_a: Subquotient,
    pub ker_b: Subquotient,
    pub ker_c: Subquotient,
    pub ker_d: Subquotient,
    pub coker_a: Subquotient,
    pub coker_b: Subquotient,
    pub coker_c: Subquotient,
    pub coker_d: Subquotient,
}

impl QuadHomology {
    pub fn new(q: &KoszulQuadruple) -> Result<Self> {
        let k = build_quad_complex(q)?;
        Ok(QuadHomology {
            h2: k.homology(2)?,
            h1: k.homology(1)?,
            h0: k.homology(0)?,
            ker_a: Subquotient::kernel(&q.a),
            ker_b: Subquotient::kernel(&q.b),
            ker_c: Subquotient::kernel(&q.c),
            ker_d: Subquotient::kernel(&q.d),
            coker_a: Subquotient::cokernel(&q.a),
            coker_b: Subquotient::cokernel(&q.b),
            coker_c: Subquotient::cokernel(&q.c),
            coker_d: Subquotient::cokernel(&q.d),
        })
    }

    fn spaces(&self) -> [&Subquotient; 11] {
        [
            &self.h2,
            &self.h1,
            &self.h0,
            &self.ker_a,
            &self.ker_b,
            &self.ker_c,
            &self.ker_d,
            &self.coker_a,
            &self.coker_b,
            &self.coker_c,
            &self.coker_d,
        ]
    }

    /// Applies `f` to every space (in field order), e.g. to rebase them.
    pub fn try_map(&self, mut f: impl FnMut(&Subquotient) -> Result<Subquotient>) -> Result<Self> {
        let [h2, h1, h0, ker_a, ker_b, ker_c, ker_d, coker_a, coker_b, coker_c, coker_d] =
            self.spaces();
        Ok(QuadHomology {
            h2: f(h2)?,
            h1: f(h1)?,
            h0: f(h0)?,
            ker_a: f(ker_a)?,
            ker_b: f(ker_b)?,
            ker_c: f(ker_c)?,
            ker_d: f(ker_d)?,
            coker_a: f(coker_a)?,
            coker_b: f(coker_b)?,
            coker_c: f(coker_c)?,
            coker_d: f(coker_d)?,
        })
    }

    /// Dimensions of all spaces, in field order.
    pub fn dims(&self) -> [usize; 11] {
        self.spaces().map(Subquotient::dim)
    }
}

fn ident(h: usize) -> ExactMatrix {
    ExactMatrix::identity(h)
}

/// `[0; I]` or `[I; 0]`: inclusion of `H` into a coordinate of `H²`.
fn inclusion(h: usize, second: bool) -> ExactMatrix {
    let z = ExactMatrix::zeros(h, h);
    if second {
        z.vstack(&ident(h)).expect("same width")
    } else {
        ident(h).vstack(&z).expect("same width")
    }
}

/// `[I 0]` or `[0 I]`: projection of `H²` onto a coordinate.
fn projection(h: usize, second: bool) -> ExactMatrix {
    inclusion(h, second).transpose()
}

/// Builds a based exact sequence from spaces listed top-down and the ambient
/// maps between consecutive spaces.
fn sequence_from_maps(spaces: &[&Subquotient], maps: &[ExactMatrix]) -> Result<BasedExactSequence> {
    let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
    let diffs = maps
        .iter()
        .enumerate()
        .map(|(i, m)| induced_map(m, spaces[i], spaces[i + 1]))
        .collect::<Result<Vec<_>>>()?;
    let complex = ChainComplex::from_top(&dims, &diffs)?;
    BasedExactSequence::new(complex).map_err(|e| match e {
        Error::NotExact { degree, dim } => Error::Internal(format!(
            "long exact sequence fails exactness at degree {degree} ({dim})"
        )),
        other => other,
    })
}

/// `ε_{A,D}` and `ε_{B,C}` with the default homology bases.
pub fn build_eps_sequences(
    q: &KoszulQuadruple,
) -> Result<(BasedExactSequence, BasedExactSequence)> {
    build_eps_sequences_with(q, &QuadHomology::new(q)?)
}

/// `ε_{A,D}: H₂ →ι ker B →D ker C →ι₂ H₁ →π₁ coker B →A coker C →π H₀` and
/// `ε_{B,C}: H₂ →−ι ker D →B ker A →ι₁ H₁ →π₂ coker D →C coker A →π H₀`.
pub fn build_eps_sequences_with(
    q: &KoszulQuadruple,
    hom: &QuadHomology,
) -> Result<(BasedExactSequence, BasedExactSequence)> {
    let h = q.space_dim();
    let ad = sequence_from_maps(
        &[
            &hom.h2,
            &hom.ker_b,
            &hom.ker_c,
            &hom.h1,
            &hom.coker_b,
            &hom.coker_c,
            &hom.h0,
        ],
        &[
            ident(h),
            q.d.clone(),
            inclusion(h, true),
            projection(h, false),
            q.a.clone(),
            ident(h),
        ],
    )?;
    let bc = sequence_from_maps(
        &[
            &hom.h2,
            &hom.ker_d,
            &hom.ker_a,
            &hom.h1,
            &hom.coker_d,
            &hom.coker_a,
            &hom.h0,
        ],
        &[
            -&ident(h),
            q.b.clone(),
            inclusion(h, false),
            projection(h, true),
            q.c.clone(),
            ident(h),
        ],
    )?;
    Ok((ad, bc))
}

/// `nullity · rank`.
pub fn kappa(ker: &Subquotient) -> u64 {
    let k = ker.dim();
    (k * (ker.ambient_dim() - k)) as u64
}

/// Torsion of `0 → ker T → H →T H → coker T → 0` in the given bases of
/// `ker T`, `coker T` and the standard basis of `H`.
pub fn four_term_torsion(
    t: &ExactMatrix,
    ker: &Subquotient,
    coker: &Subquotient,
) -> Result<QiScalar> {
    let h = t.rows();
    let whole = Subquotient::whole(h);
    let d3 = induced_map(&ident(h), ker, &whole)?;
    let d1 = induced_map(&ident(h), &whole, coker)?;
    let c = ChainComplex::from_top(&[ker.dim(), h, h, coker.dim()], &[d3, t.clone(), d1])?;
    Ok(BasedExactSequence::new(c)?.torsion_scalar().value)
}

/// `σ_{A,D} = (−1)^{κ(A)+κ(D)} τ(𝒜) / τ(𝒟)` with default bases.
pub fn perturbation_sigma(a: &ExactMatrix, d: &ExactMatrix) -> Result<QiScalar> {
    if a.shape() != d.shape() || !a.is_square() {
        return Err(Error::DimensionMismatch {
            context: "perturbation pair",
            left: a.rows(),
            right: d.rows(),
        });
    }
    perturbation_sigma_with(
        a,
        d,
        [
            &Subquotient::kernel(a),
            &Subquotient::cokernel(a),
            &Subquotient::kernel(d),
            &Subquotient::cokernel(d),
        ],
    )
}

/// As [`perturbation_sigma`], against bases `[ker A, coker A, ker D, coker D]`.
pub fn perturbation_sigma_with(
    a: &ExactMatrix,
    d: &ExactMatrix,
    [ker_a, coker_a, ker_d, coker_d]: [&Subquotient; 4],
) -> Result<QiScalar> {
    let sign = QiScalar::sign(kappa(ker_a) + kappa(ker_d));
    let ta = four_term_torsion(a, ker_a, coker_a)?;
    let td = four_term_torsion(d, ker_d, coker_d)?;
    Ok(sign * ta.checked_div(&td)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JointTorsionReport {
    #[serde(skip)]
    pub tau_ad: TorsionScalar,
    #[serde(skip)]
    pub tau_bc: TorsionScalar,
    pub sigma_ad: QiScalar,
    pub sigma_bc: QiScalar,
    pub lambda: u64,
    pub nu: u64,
    pub kappa_a: u64,
    pub kappa_b: u64,
    pub kappa_c: u64,
    pub kappa_d: u64,
    pub mu_a: u64,
    pub mu_b: u64,
    pub mu_c: u64,
    pub mu_d: u64,
    /// `[H₂, H₁, H₀]`.
    pub homology_dims: [usize; 3],
    /// `[ker A, ker B, ker C, ker D]`.
    pub kernel_dims: [usize; 4],
    /// `[coker A, coker B, coker C, coker D]`.
    pub cokernel_dims: [usize; 4],
    pub value: QiScalar,
}

pub fn joint_torsion_quad(q: &KoszulQuadruple) -> Result<JointTorsionReport> {
    joint_torsion_quad_with(q, &QuadHomology::new(q)?)
}

/// Joint torsion against an explicit (possibly rebased) set of homology spaces.
///
/// The value is `(−1)^{λ+ν} τ(ε_{A,D}) τ(ε_{B,C})⁻¹ σ_{A,D} σ_{B,C}` with
/// `λ = h₂(k_D + k_B) + h₀(c_A + c_C)` and `ν = k_D(k_A + 1) + k_B(k_C + 1)`.
pub fn joint_torsion_quad_with(
    q: &KoszulQuadruple,
    hom: &QuadHomology,
) -> Result<JointTorsionReport> {
    let (ad, bc) = build_eps_sequences_with(q, hom)?;
    let tau_ad = ad.torsion_scalar();
    let tau_bc = bc.torsion_scalar();
    let sigma_ad = perturbation_sigma_with(
        &q.a,
        &q.d,
        [&hom.ker_a, &hom.coker_a, &hom.ker_d, &hom.coker_d],
    )?;
    let sigma_bc = perturbation_sigma_with(
        &q.b,
        &q.c,
        [&hom.ker_b, &hom.coker_b, &hom.ker_c, &hom.coker_c],
    )?;

    let [h2, h1, h0, ka, kb, kc, kd, ca, cb, cc, cd] = hom.dims().map(|d| d as u64);
    let lambda = h2 * (kd + kb) + h0 * (ca + cc);
    let nu = kd * (ka + 1) + kb * (kc + 1);
    let value = QiScalar::sign(lambda + nu)
        * tau_ad.value.checked_div(&tau_bc.value)?
        * &sigma_ad
        * &sigma_bc;

    Ok(JointTorsionReport {
        sigma_ad,
        sigma_bc,
        lambda,
        nu,
        kappa_a: kappa(&hom.ker_a),
        kappa_b: kappa(&hom.ker_b),
        kappa_c: kappa(&hom.ker_c),
        kappa_d: kappa(&hom.ker_d),
        mu_a: ka * ca,
        mu_b: kb * cb,
        mu_c: kc * cc,
        mu_d: kd * cd,
        homology_dims: [h2, h1, h0].map(|d| d as usize),
        kernel_dims: [ka, kb, kc, kd].map(|d| d as usize),
        cokernel_dims: [ca, cb, cc, cd].map(|d| d as usize),
        value,
        tau_ad,
        tau_bc,
    })
}

/// `τ(A, B)` for a commuting pair, as the joint torsion of `(A, B, B, A)`.
pub fn joint_torsion_pair(a: &ExactMatrix, b: &ExactMatrix) -> Result<QiScalar> {
    let q = KoszulQuadruple::from_pair(a.clone(), b.clone())?;
    Ok(joint_torsion_quad(&q)?.value)
}

/// `ε_A`, `ε_B` of a commuting pair together with `μ(A)`, `μ(B)`.
pub fn commuting_pair_sequences(
    a: &ExactMatrix,
    b: &ExactMatrix,
) -> Result<(BasedExactSequence, BasedExactSequence, u64, u64)> {
    let q = KoszulQuadruple::from_pair(a.clone(), b.clone())?;
    let hom = QuadHomology::new(&q)?;
    let (eps_a, eps_b) = build_eps_sequences_with(&q, &hom)?;
    let mu = |k: &Subquotient, c: &Subquotient| (k.dim() * c.dim()) as u64;
    Ok((
        eps_a,
        eps_b,
        mu(&hom.ker_a, &hom.coker_a),
        mu(&hom.ker_b, &hom.coker_b),
    ))
}

/// The four restrictions of an acyclic commuting pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionData {
    pub b_on_ker_a: ExactMatrix,
    pub b_on_coker_a: ExactMatrix,
    pub a_on_coker_b: ExactMatrix,
    pub a_on_ker_b: ExactMatrix,
}

impl RestrictionData {
    /// Restrictions of a commuting pair of matrices to kernels and cokernels.
    pub fn from_pair(a: &ExactMatrix, b: &ExactMatrix) -> Result<Self> {
        crate::koszul::CommutingTuple::new(vec![a.clone(), b.clone()])?;
        let (ka, ca) = (Subquotient::kernel(a), Subquotient::cokernel(a));
        let (kb, cb) = (Subquotient::kernel(b), Subquotient::cokernel(b));
        Ok(RestrictionData {
            b_on_ker_a: induced_map(b, &ka, &ka)?,
            b_on_coker_a: induced_map(b, &ca, &ca)?,
            a_on_coker_b: induced_map(a, &cb, &cb)?,
            a_on_ker_b: induced_map(a, &kb, &kb)?,
        })
    }

    fn blocks(&self) -> [(&ExactMatrix, &'static str); 4] {
        [
            (&self.b_on_ker_a, "B on ker A"),
            (&self.b_on_coker_a, "B on coker A"),
            (&self.a_on_coker_b, "A on coker B"),
            (&self.a_on_ker_b, "A on ker B"),
        ]
    }

    pub fn mu_a(&self) -> u64 {
        (self.b_on_ker_a.rows() * self.b_on_coker_a.rows()) as u64
    }

    pub fn mu_b(&self) -> u64 {
        (self.a_on_ker_b.rows() * self.a_on_coker_b.rows()) as u64
    }
}

/// `det(B|ker A) det(B|coker A)⁻¹ det(A|coker B) det(A|ker B)⁻¹`.
pub fn lefschetz_ratio(r: &RestrictionData) -> Result<QiScalar> {
    let mut dets = Vec::with_capacity(4);
    for (m, name) in r.blocks() {
        let d = m.determinant()?;
        if d.is_zero() {
            return Err(Error::PairNotAcyclic(name));
        }
        dets.push(d);
    }
    Ok(&dets[0] / &dets[1] * &dets[2] / &dets[3])
}

/// `ε_A`, `ε_B` of an acyclic pair: the seven-space sequences with zero
/// homology terms, `0 → ker B →A ker B → 0 → coker B →A coker B → 0` and
/// likewise for `B`.
pub fn restriction_sequences(
    r: &RestrictionData,
) -> Result<(BasedExactSequence, BasedExactSequence)> {
    for (m, name) in r.blocks() {
        if !m.is_square() {
            return Err(Error::NotSquare {
                context: name,
                rows: m.rows(),
                cols: m.cols(),
            });
        }
    }
    let build = |on_ker: &ExactMatrix, on_coker: &ExactMatrix| -> Result<BasedExactSequence> {
        let (k, c) = (on_ker.rows(), on_coker.rows());
        let diffs = [
            ExactMatrix::zeros(k, 0),
            on_ker.clone(),
            ExactMatrix::zeros(0, k),
            ExactMatrix::zeros(c, 0),
            on_coker.clone(),
            ExactMatrix::zeros(0, c),
        ];
        let complex = ChainComplex::from_top(&[0, k, k, 0, c, c, 0], &diffs)?;
        BasedExactSequence::new(complex).map_err(|e| match e {
            Error::NotExact { .. } => Error::PairNotAcyclic("restriction block"),
            other => other,
        })
    };
    Ok((
        build(&r.a_on_ker_b, &r.a_on_coker_b)?,
        build(&r.b_on_ker_a, &r.b_on_coker_a)?,
    ))
}

/// `det(D₊ + D₋^†)` for an exact sequence, written in its own bases.
///
/// `E₊` collects the degrees of the same parity as the top degree in
/// ascending order and `E₋` the others in descending order; `D₊ : E₊ → E₋`
/// and `D₋ : E₋ → E₊` are the differentials leaving each part.
pub fn pseudoinverse_det(s: &BasedExactSequence) -> Result<QiScalar> {
    let c = s.complex();
    let n = c.top();
    let plus: Vec<usize> = (0..=n).filter(|&k| !unstarred(n, k)).collect();
    let minus: Vec<usize> = (0..=n).rev().filter(|&k| unstarred(n, k)).collect();
    let offsets = |part: &[usize]| {
        let mut off = vec![usize::MAX; n + 1];
        let mut o = 0;
        for &k in part {
            off[k] = o;
            o += c.dim(k);
        }
        (off, o)
    };
    let (off_p, np) = offsets(&plus);
    let (off_m, nm) = offsets(&minus);
    if np != nm {
        return Err(Error::Internal(format!(
            "graded parts differ in size: {np} vs {nm}"
        )));
    }
    let mut d_plus = ExactMatrix::zeros(nm, np);
    let mut d_minus = ExactMatrix::zeros(np, nm);
    for k in 1..=n {
        let b_src = &s.bases()[k];
        let b_dst = &s.bases()[k - 1];
        let local = &(&b_dst.inverse()? * c.diff(k)) * b_src;
        if unstarred(n, k) {
            d_minus.set_block(off_p[k - 1], off_m[k], &local);
        } else {
            d_plus.set_block(off_m[k - 1], off_p[k], &local);
        }
    }
    let x = &d_plus + &d_minus.pseudoinverse();
    let det = x.determinant()?;
    if det.is_zero() {
        return Err(Error::Internal(
            "graded map is singular on an exact sequence".into(),
        ));
    }
    Ok(det)
}

/// `(−1)^{μ(A)+μ(B)} det(D_{B+} + D_{B−}^†)⁻¹ det(D_{A+} + D_{A−}^†)`.
pub fn pseudoinv_formula(
    eps_a: &BasedExactSequence,
    eps_b: &BasedExactSequence,
    mu_a: u64,
    mu_b: u64,
) -> Result<QiScalar> {
    let xa = pseudoinverse_det(eps_a)?;
    let xb = pseudoinverse_det(eps_b)?;
    Ok(QiScalar::sign(mu_a + mu_b) * xa.checked_div(&xb)?)
}

/// `det(A B A⁻¹ B⁻¹)`.
pub fn det_commutator(a: &ExactMatrix, b: &ExactMatrix) -> Result<QiScalar> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            context: "commutator",
            left: a.rows(),
            right: b.rows(),
        });
    }
    let ai = a.inverse().map_err(|_| Error::Singular("A"))?;
    let bi = b.inverse().map_err(|_| Error::Singular("B"))?;
    (&(&(a * b) * &ai) * &bi).determinant()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_ints(rows)
    }

    fn s(x: &str) -> QiScalar {
        x.parse().unwrap()
    }

    fn quad(a: ExactMatrix, b: ExactMatrix, c: ExactMatrix, d: ExactMatrix) -> KoszulQuadruple {
        KoszulQuadruple::new(a, b, c, d).unwrap()
    }

    fn dims(seq: &BasedExactSequence) -> Vec<usize> {
        seq.complex().dims().iter().rev().copied().collect()
    }

    #[test]
    fn eps_of_zero_quadruple() {
        let z = m(&[&[0]]);
        let (ad, bc) = build_eps_sequences(&quad(z.clone(), z.clone(), z.clone(), z)).unwrap();
        assert_eq!(dims(&ad), vec![1, 1, 1, 2, 1, 1, 1]);
        assert_eq!(dims(&bc), vec![1, 1, 1, 2, 1, 1, 1]);
    }

    #[test]
    fn eps_of_identity_quadruple() {
        let i = ExactMatrix::identity(2);
        let (ad, _) = build_eps_sequences(&quad(i.clone(), i.clone(), i.clone(), i)).unwrap();
        assert_eq!(dims(&ad), vec![0; 7]);
    }

    #[test]
    fn eps_of_diagonal_pair() {
        let a = m(&[&[0, 0], &[0, 2]]);
        let b = m(&[&[3, 0], &[0, 0]]);
        let (ea, eb) = build_eps_sequences(&KoszulQuadruple::from_pair(a, b).unwrap()).unwrap();
        // ker B = coker B = span(e2), on which A acts by 2; H_i(A, B) = 0
        assert_eq!(dims(&ea), vec![0, 1, 1, 0, 1, 1, 0]);
        assert_eq!(ea.complex().diff(5), &m(&[&[2]]));
        assert_eq!(ea.complex().diff(2), &m(&[&[2]]));
        assert_eq!(eb.complex().diff(5), &m(&[&[3]]));
        assert_eq!(eb.complex().diff(2), &m(&[&[3]]));
    }

    #[test]
    fn sigma_examples() {
        let a = m(&[&[1, 2], &[0, 0]]);
        assert_eq!(perturbation_sigma(&a, &a).unwrap(), s("1"));
        assert_eq!(
            perturbation_sigma(&m(&[&[2]]), &m(&[&[3]])).unwrap(),
            s("3/2")
        );
        assert_eq!(
            perturbation_sigma(&m(&[&[0]]), &m(&[&[0]])).unwrap(),
            s("1")
        );
        assert!(perturbation_sigma(&m(&[&[0]]), &ExactMatrix::identity(2)).is_err());
    }

    #[test]
    fn sigma_is_determinant_ratio_for_invertibles() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let d = m(&[&[2, 1], &[1, 1]]);
        let expect = d.determinant().unwrap() / a.determinant().unwrap();
        assert_eq!(perturbation_sigma(&a, &d).unwrap(), expect);
    }

    #[test]
    fn zero_quadruple_report() {
        let z = m(&[&[0]]);
        let r = joint_torsion_quad(&quad(z.clone(), z.clone(), z.clone(), z)).unwrap();
        assert_eq!(r.value, s("1"));
        assert_eq!(r.lambda, 4);
        assert_eq!(r.homology_dims, [1, 2, 1]);
    }

    #[test]
    fn pair_examples() {
        let a = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(
            joint_torsion_pair(&a, &ExactMatrix::identity(2)).unwrap(),
            s("1")
        );
        assert_eq!(
            joint_torsion_pair(&ExactMatrix::identity(2), &a).unwrap(),
            s("1")
        );
        let a = m(&[&[0, 0], &[0, 2]]);
        let b = m(&[&[3, 0], &[0, 0]]);
        assert_eq!(joint_torsion_pair(&a, &b).unwrap(), s("1"));
        assert_eq!(
            joint_torsion_pair(&m(&[&[0]]), &m(&[&[0]])).unwrap(),
            s("1")
        );
        let n = m(&[&[0, 1], &[0, 0]]);
        assert_eq!(
            joint_torsion_pair(&n, &m(&[&[1, 0], &[0, 2]])),
            Err(Error::NonCommuting(0, 1))
        );
    }

    #[test]
    fn lefschetz_examples() {
        let e = ExactMatrix::zeros(0, 0);
        let i = ExactMatrix::identity(2);
        let r = RestrictionData {
            b_on_ker_a: i.clone(),
            b_on_coker_a: i.clone(),
            a_on_coker_b: i.clone(),
            a_on_ker_b: i,
        };
        assert_eq!(lefschetz_ratio(&r).unwrap(), s("1"));

        let toeplitz = RestrictionData {
            b_on_ker_a: e.clone(),
            b_on_coker_a: ExactMatrix::from_strs(&[&["1/6"]]),
            a_on_coker_b: ExactMatrix::from_strs(&[&["-1/6"]]),
            a_on_ker_b: e.clone(),
        };
        assert_eq!(lefschetz_ratio(&toeplitz).unwrap(), s("-1"));
        let (ea, eb) = restriction_sequences(&toeplitz).unwrap();
        assert_eq!(pseudoinv_formula(&ea, &eb, 0, 0).unwrap(), s("-1"));

        let outside = RestrictionData {
            b_on_ker_a: e.clone(),
            b_on_coker_a: ExactMatrix::from_strs(&[&["-3/2"]]),
            a_on_coker_b: e.clone(),
            a_on_ker_b: e.clone(),
        };
        assert_eq!(lefschetz_ratio(&outside).unwrap(), s("-2/3"));

        let singular = RestrictionData {
            b_on_ker_a: e.clone(),
            b_on_coker_a: m(&[&[0]]),
            a_on_coker_b: e.clone(),
            a_on_ker_b: e,
        };
        assert_eq!(
            lefschetz_ratio(&singular),
            Err(Error::PairNotAcyclic("B on coker A"))
        );
    }

    #[test]
    fn restriction_sequences_match_lefschetz() {
        let r = RestrictionData {
            b_on_ker_a: m(&[&[2, 1], &[0, 3]]),
            b_on_coker_a: m(&[&[5]]),
            a_on_coker_b: m(&[&[1, 1], &[1, 2]]),
            a_on_ker_b: m(&[&[7]]),
        };
        let (ea, eb) = restriction_sequences(&r).unwrap();
        let pipeline = ea.torsion_scalar().value / eb.torsion_scalar().value;
        assert_eq!(pipeline, lefschetz_ratio(&r).unwrap());
        assert_eq!(
            pseudoinv_formula(&ea, &eb, r.mu_a(), r.mu_b()).unwrap(),
            pipeline
        );
    }

    #[test]
    fn pseudoinverse_two_term() {
        let phi_a = m(&[&[1, 2], &[3, 4]]);
        let phi_b = m(&[&[2, 0], &[1, 1]]);
        let seq = |p: &ExactMatrix| {
            BasedExactSequence::new(
                ChainComplex::from_top(&[2, 2], std::slice::from_ref(p)).unwrap(),
            )
            .unwrap()
        };
        let v = pseudoinv_formula(&seq(&phi_a), &seq(&phi_b), 0, 0).unwrap();
        assert_eq!(
            v,
            phi_a.determinant().unwrap() / phi_b.determinant().unwrap()
        );
    }

    #[test]
    fn pseudoinverse_on_finite_pair() {
        let a = m(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 2]]);
        let b = &(&a * &a) + &a;
        let (ea, eb, mu_a, mu_b) = commuting_pair_sequences(&a, &b).unwrap();
        assert_eq!(pseudoinv_formula(&ea, &eb, mu_a, mu_b).unwrap(), s("1"));
        assert_eq!(joint_torsion_pair(&a, &b).unwrap(), s("1"));
    }

    #[test]
    fn commutator_examples() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let b = m(&[&[1, 0], &[0, 2]]);
        assert_eq!(det_commutator(&a, &b).unwrap(), s("1"));
        assert_eq!(det_commutator(&a, &a).unwrap(), s("1"));
        assert_eq!(
            det_commutator(&a, &m(&[&[0, 0], &[0, 1]])),
            Err(Error::Singular("B"))
        );
    }
}
