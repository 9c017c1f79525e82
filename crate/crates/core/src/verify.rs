//! Seeded property checks, one random instance at a time.
//!
//! `run_instance(suite, seed, i)` is a pure function of its arguments, so a
//! failing instance is reproduced by rerunning its index alone.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::Rng;

use crate::complex::{BasedExactSequence, ChainComplex};
use crate::error::{Error, Result};
use crate::factorization::{factorization_identities, Identity};
use crate::joint::{
    build_eps_sequences, commuting_pair_sequences, det_commutator, joint_torsion_pair,
    joint_torsion_quad, joint_torsion_quad_with, perturbation_sigma, pseudoinv_formula,
    QuadHomology,
};
use crate::random::{self, instance_rng, InstanceRng};
use crate::scalar::{qi_modulus_cmp_one, QiScalar};
use crate::toeplitz::exact::{
    make_symbol, tame_symbol, toeplitz_joint_torsion, toeplitz_pseudoinverse_formula,
    AnalyticSymbol,
};
use crate::toeplitz::numeric::{closed_form_di, default_buffer, numeric_det_invariant};

/// Matrix sizes compared by the numeric convergence checks.
pub const CONVERGENCE_SIZES: [usize; 3] = [32, 64, 128];

/// Slack allowed when comparing successive floating-point errors.
pub const CONVERGENCE_NOISE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    FiniteTriviality,
    TorsionDeterminant,
    DirectSum,
    BasisIndependence,
    Factorization,
    TameOracle,
    Steinberg,
    Pseudoinverse,
    NumericConvergence,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::FiniteTriviality,
        Suite::TorsionDeterminant,
        Suite::DirectSum,
        Suite::BasisIndependence,
        Suite::Factorization,
        Suite::TameOracle,
        Suite::Steinberg,
        Suite::Pseudoinverse,
        Suite::NumericConvergence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FiniteTriviality => "finite-triviality",
            Suite::TorsionDeterminant => "torsion-determinant",
            Suite::DirectSum => "direct-sum",
            Suite::BasisIndependence => "basis-independence",
            Suite::Factorization => "factorization",
            Suite::TameOracle => "tame-oracle",
            Suite::Steinberg => "steinberg",
            Suite::Pseudoinverse => "pseudoinverse",
            Suite::NumericConvergence => "numeric-convergence",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

/// Outcome of one instance: the properties checked, each with its verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub properties: Vec<(&'static str, bool)>,
    pub detail: String,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.properties.iter().all(|&(_, ok)| ok)
    }
}

pub fn run_instance(suite: Suite, seed: u64, index: u64) -> Result<Check> {
    let mut rng = instance_rng(seed, index);
    let i = index as usize;
    match suite {
        Suite::FiniteTriviality => finite_triviality(&mut rng, 1 + i % 6),
        Suite::TorsionDeterminant => torsion_determinant(&mut rng, 1 + i % 8),
        Suite::DirectSum => direct_sum(&mut rng, 1 + i % 3, 1 + (i / 3) % 3),
        Suite::BasisIndependence => basis_independence(&mut rng, 1 + i % 5),
        Suite::Factorization => factorization(
            &mut rng,
            Identity::ALL[i % Identity::ALL.len()],
            1 + (i / 8) % 4,
        ),
        Suite::TameOracle => tame_oracle(&mut rng),
        Suite::Steinberg => steinberg(&mut rng),
        Suite::Pseudoinverse => pseudoinverse(&mut rng, 1 + i % 5),
        Suite::NumericConvergence => numeric_convergence(&mut rng),
    }
}

fn finite_triviality(rng: &mut InstanceRng, h: usize) -> Result<Check> {
    let q = random::quadruple(rng, h);
    let r = joint_torsion_quad(&q)?;
    Ok(Check {
        properties: vec![("value_is_one", r.value.is_one())],
        detail: format!("h={h} value={} homology={:?}", r.value, r.homology_dims),
    })
}

fn torsion_determinant(rng: &mut InstanceRng, n: usize) -> Result<Check> {
    let m = random::invertible(rng, n);
    let det = m.determinant()?;
    let s = BasedExactSequence::new(ChainComplex::from_top(&[n, n], &[m])?)?;
    let t = s.torsion_scalar().value;
    Ok(Check {
        properties: vec![("torsion_equals_det", t == det)],
        detail: format!("n={n} torsion={t} det={det}"),
    })
}

fn direct_sum(rng: &mut InstanceRng, h1: usize, h2: usize) -> Result<Check> {
    let (q1, q2) = (random::quadruple(rng, h1), random::quadruple(rng, h2));
    let qs = q1.direct_sum(&q2);
    let jt = |q| joint_torsion_quad(q).map(|r| r.value);
    let joint = jt(&qs)? == jt(&q1)? * jt(&q2)?;

    let sigma = perturbation_sigma(&qs.a, &qs.d)?
        == perturbation_sigma(&q1.a, &q1.d)? * perturbation_sigma(&q2.a, &q2.d)?
        && perturbation_sigma(&qs.b, &qs.c)?
            == perturbation_sigma(&q1.b, &q1.c)? * perturbation_sigma(&q2.b, &q2.c)?;

    let (e1, _) = build_eps_sequences(&q1)?;
    let (e2, _) = build_eps_sequences(&q2)?;
    let torsion = e1.direct_sum(&e2)?.torsion_scalar().value
        == QiScalar::sign(e1.direct_sum_sign(&e2))
            * e1.torsion_scalar().value
            * e2.torsion_scalar().value;

    let (a1, b1) = (random::invertible(rng, h1), random::invertible(rng, h1));
    let (a2, b2) = (random::invertible(rng, h2), random::invertible(rng, h2));
    let d = det_commutator(&a1.direct_sum(&a2), &b1.direct_sum(&b2))?;
    let det_inv = d == det_commutator(&a1, &b1)? * det_commutator(&a2, &b2)? && d.is_one();

    Ok(Check {
        properties: vec![
            ("joint_torsion_multiplicative", joint),
            ("sigma_multiplicative", sigma),
            ("sequence_torsion_multiplicative", torsion),
            ("det_commutator_multiplicative", det_inv),
        ],
        detail: format!("h=({h1},{h2})"),
    })
}

fn basis_independence(rng: &mut InstanceRng, h: usize) -> Result<Check> {
    let q = random::quadruple(rng, h);
    let hom = QuadHomology::new(&q)?;
    let before = joint_torsion_quad_with(&q, &hom)?.value;
    let rebased = hom.try_map(|s| s.rebase(&random::invertible(rng, s.dim())))?;
    let after = joint_torsion_quad_with(&q, &rebased)?.value;
    Ok(Check {
        properties: vec![("value_unchanged", before == after)],
        detail: format!("h={h} before={before} after={after}"),
    })
}

fn factorization(rng: &mut InstanceRng, which: Identity, h: usize) -> Result<Check> {
    let q = random::quadruple(rng, h);
    let u = random::invertible(rng, h);
    let (lhs, rhs) = factorization_identities(&q, &u, which)?;
    Ok(Check {
        properties: vec![(which.name(), lhs == rhs)],
        detail: format!("h={h} lhs={lhs} rhs={rhs}"),
    })
}

fn tame_oracle(rng: &mut InstanceRng) -> Result<Check> {
    let (f, g) = random::symbol_pair(rng);
    let jt = toeplitz_joint_torsion(&f, &g)?;
    let tame = tame_symbol(&f, &g)?;
    let pinv = toeplitz_pseudoinverse_formula(&f, &g)?;
    Ok(Check {
        properties: vec![
            ("torsion_equals_tame", jt == tame),
            ("pseudoinverse_agrees", pinv == jt),
        ],
        detail: format!("winding=({},{}) value={jt}", f.winding(), g.winding()),
    })
}

fn disjoint_inside(f: &AnalyticSymbol, g: &AnalyticSymbol) -> bool {
    let g_in = g.inside_roots();
    f.inside_roots().iter().all(|a| !g_in.contains(a))
}

/// Symbol `cz` and `1 − cz = −c(z − 1/c)` with `|c| ≠ 1`.
pub fn affine_pair(c: &QiScalar) -> Result<(AnalyticSymbol, AnalyticSymbol)> {
    let f = make_symbol(c.clone(), vec![QiScalar::zero()])?;
    let g = make_symbol(-c, vec![c.inv()?])?;
    Ok((f, g))
}

fn steinberg(rng: &mut InstanceRng) -> Result<Check> {
    let (f1, f2, g) = loop {
        let (f1, g) = random::symbol_pair(rng);
        let f2 = random::symbol(rng);
        if disjoint_inside(&f2, &g) {
            break (f1, f2, g);
        }
    };
    let tau = toeplitz_joint_torsion;
    let f12 = f1.product(&f2);
    let left = tau(&f12, &g)? == tau(&f1, &g)? * tau(&f2, &g)?
        && tame_symbol(&f12, &g)? == tame_symbol(&f1, &g)? * tame_symbol(&f2, &g)?;
    let right = tau(&g, &f12)? == tau(&g, &f1)? * tau(&g, &f2)?;
    let skew = (tau(&f1, &g)? * tau(&g, &f1)?).is_one();

    let c = loop {
        let c = random::nonzero_scalar(rng);
        if qi_modulus_cmp_one(&c) != std::cmp::Ordering::Equal {
            break c;
        }
    };
    let (a, one_minus_a) = affine_pair(&c)?;
    let unit = tau(&a, &one_minus_a)?.is_one() && tame_symbol(&a, &one_minus_a)?.is_one();

    Ok(Check {
        properties: vec![
            ("multiplicative_first", left),
            ("multiplicative_second", right),
            ("skew_symmetric", skew),
            ("one_minus_a", unit),
        ],
        detail: format!("c={c}"),
    })
}

fn pseudoinverse(rng: &mut InstanceRng, h: usize) -> Result<Check> {
    let (a, b) = random::commuting_pair(rng, h);
    let (ea, eb, mu_a, mu_b) = commuting_pair_sequences(&a, &b)?;
    let formula = pseudoinv_formula(&ea, &eb, mu_a, mu_b)?;
    let pipeline = joint_torsion_pair(&a, &b)?;
    let skew = (pipeline.clone() * joint_torsion_pair(&b, &a)?).is_one();
    let (f, g) = random::symbol_pair(rng);
    let toeplitz = toeplitz_pseudoinverse_formula(&f, &g)? == toeplitz_joint_torsion(&f, &g)?;
    Ok(Check {
        properties: vec![
            ("finite_pair_agrees", formula == pipeline),
            ("pair_skew_symmetric", skew),
            ("toeplitz_agrees", toeplitz),
        ],
        detail: format!("h={h} formula={formula} pipeline={pipeline}"),
    })
}

fn numeric_convergence(rng: &mut InstanceRng) -> Result<Check> {
    let k = rng.random_range(1..=2);
    let f = random::trig_poly(rng, k, 0.5);
    let g = random::trig_poly(rng, k, 0.5);
    let exact = closed_form_di(&f, &g);
    let buffer = default_buffer(&f, &g);
    let errors = CONVERGENCE_SIZES
        .iter()
        .map(|&n| numeric_det_invariant(&f, &g, n, buffer).map(|v| (v - exact).norm()))
        .collect::<Result<Vec<f64>>>()?;
    let monotone = errors.windows(2).all(|w| w[1] <= w[0] + CONVERGENCE_NOISE);
    let close = errors.last().is_some_and(|&e| e <= 1e-4);
    Ok(Check {
        properties: vec![("nonincreasing", monotone), ("converged", close)],
        detail: format!("K={k} errors={errors:?}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn instances_are_deterministic() {
        for s in Suite::ALL {
            let a = run_instance(s, 5, 3).unwrap();
            assert_eq!(a, run_instance(s, 5, 3).unwrap(), "{s}");
            assert!(a.pass(), "{s}: {a:?}");
        }
    }

    #[test]
    fn affine_pair_is_trivial() {
        for c in ["2", "1/3", "1/2+1/2*i", "3*i"] {
            let (f, g) = affine_pair(&c.parse().unwrap()).unwrap();
            assert_eq!(toeplitz_joint_torsion(&f, &g).unwrap(), QiScalar::one());
        }
    }
}
