//! Acceptance run: every criterion prints one PASS/FAIL line and the process
//! exits non-zero if any fails.

use std::cmp::Ordering;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::One;
use rayon::prelude::*;

use jtorsion::complex::{BasedExactSequence, ChainComplex};
use jtorsion::factorization::{factorization_identities, Identity};
use jtorsion::joint::{
    build_eps_sequences, commuting_pair_sequences, det_commutator, joint_torsion_pair,
    joint_torsion_quad, joint_torsion_quad_with, perturbation_sigma, pseudoinv_formula,
    restriction_sequences, QuadHomology,
};
use jtorsion::random::{self, instance_rng};
use jtorsion::toeplitz::exact::{
    make_symbol, tame_symbol, toeplitz_joint_torsion, toeplitz_restriction_data, AnalyticSymbol,
};
use jtorsion::toeplitz::numeric::{
    closed_form_di, default_buffer, numeric_det_invariant, TrigPoly,
};
use jtorsion::{qi_modulus_cmp_one, QiScalar, Result};

const SEED: u64 = 20_240_517;

struct Outcome {
    passed: usize,
    total: usize,
    note: String,
}

/// Runs `check` on `count` seeded instances in parallel; an `Err` counts as a failure.
fn tally(stream: u64, count: usize, check: impl Fn(u64) -> Result<bool> + Sync) -> Outcome {
    let results: Vec<(u64, bool)> = (0..count as u64)
        .into_par_iter()
        .map(|i| (i, check(i).unwrap_or(false)))
        .collect();
    let failed: Vec<u64> = results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    Outcome {
        passed: count - failed.len(),
        total: count,
        note: if failed.is_empty() {
            String::new()
        } else {
            format!("failing instances (stream {stream}): {failed:?}")
        },
    }
}

fn rng(stream: u64, i: u64) -> random::InstanceRng {
    instance_rng(SEED ^ (stream << 32), i)
}

fn finite_triviality() -> Outcome {
    tally(1, 200, |i| {
        let q = random::quadruple(&mut rng(1, i), 1 + i as usize % 6);
        Ok(joint_torsion_quad(&q)?.value == QiScalar::one())
    })
}

fn torsion_is_determinant() -> Outcome {
    tally(2, 100, |i| {
        let n = 1 + i as usize % 8;
        let m = random::invertible(&mut rng(2, i), n);
        let det = m.determinant()?;
        let s = BasedExactSequence::new(ChainComplex::from_top(&[n, n], &[m])?)?;
        Ok(s.torsion_scalar().value == det)
    })
}

fn direct_sums() -> Outcome {
    tally(3, 50, |i| {
        let r = &mut rng(3, i);
        let (h1, h2) = (1 + i as usize % 3, 1 + (i as usize / 3) % 3);
        let (q1, q2) = (random::quadruple(r, h1), random::quadruple(r, h2));
        let qs = q1.direct_sum(&q2);
        let jt = |q| joint_torsion_quad(q).map(|x| x.value);
        let joint = jt(&qs)? == jt(&q1)? * jt(&q2)?;
        let sigma = perturbation_sigma(&qs.a, &qs.d)?
            == perturbation_sigma(&q1.a, &q1.d)? * perturbation_sigma(&q2.a, &q2.d)?;
        let (e1, _) = build_eps_sequences(&q1)?;
        let (e2, _) = build_eps_sequences(&q2)?;
        let seq = e1.direct_sum(&e2)?.torsion_scalar().value
            == QiScalar::sign(e1.direct_sum_sign(&e2))
                * e1.torsion_scalar().value
                * e2.torsion_scalar().value;
        let (a1, b1) = (random::invertible(r, h1), random::invertible(r, h1));
        let (a2, b2) = (random::invertible(r, h2), random::invertible(r, h2));
        let di = det_commutator(&a1.direct_sum(&a2), &b1.direct_sum(&b2))?
            == det_commutator(&a1, &b1)? * det_commutator(&a2, &b2)?;
        Ok(joint && sigma && seq && di)
    })
}

fn basis_independence() -> Outcome {
    tally(4, 50, |i| {
        let r = &mut rng(4, i);
        let q = random::quadruple(r, 1 + i as usize % 5);
        let hom = QuadHomology::new(&q)?;
        let before = joint_torsion_quad_with(&q, &hom)?.value;
        let rebased = hom.try_map(|s| s.rebase(&random::invertible(r, s.dim())))?;
        Ok(joint_torsion_quad_with(&q, &rebased)?.value == before)
    })
}

fn factorization() -> Outcome {
    let per = 50;
    let n = Identity::ALL.len();
    let mut o = tally(5, per * n, |i| {
        let which = Identity::ALL[i as usize % n];
        let r = &mut rng(5, i);
        let h = 1 + (i as usize / n) % 4;
        let q = random::quadruple(r, h);
        let u = random::invertible(r, h);
        let (lhs, rhs) = factorization_identities(&q, &u, which)?;
        Ok(lhs == rhs)
    });
    o.note = format!("{per} per identity, {n} identities {}", o.note);
    o
}

fn toeplitz_pseudoinverse(f: &AnalyticSymbol, g: &AnalyticSymbol) -> Result<QiScalar> {
    let r = toeplitz_restriction_data(f, g)?;
    let (ea, eb) = restriction_sequences(&r)?;
    pseudoinv_formula(&ea, &eb, r.mu_a(), r.mu_b())
}

fn toeplitz_oracle() -> Outcome {
    tally(6, 100, |i| {
        let (f, g) = random::symbol_pair(&mut rng(6, i));
        let jt = toeplitz_joint_torsion(&f, &g)?;
        Ok(jt == tame_symbol(&f, &g)? && toeplitz_pseudoinverse(&f, &g)? == jt)
    })
}

fn steinberg() -> Outcome {
    tally(7, 100, |i| {
        let r = &mut rng(7, i);
        let (f1, f2, g) = loop {
            let (f1, g) = random::symbol_pair(r);
            let f2 = random::symbol(r);
            if f2
                .inside_roots()
                .iter()
                .all(|a| !g.inside_roots().contains(a))
            {
                break (f1, f2, g);
            }
        };
        let t = toeplitz_joint_torsion;
        let f12 = f1.product(&f2);
        let mult =
            t(&f12, &g)? == t(&f1, &g)? * t(&f2, &g)? && t(&g, &f12)? == t(&g, &f1)? * t(&g, &f2)?;
        let skew = (t(&f1, &g)? * t(&g, &f1)?).is_one();
        let c = loop {
            let c = random::nonzero_scalar(r);
            if qi_modulus_cmp_one(&c) != Ordering::Equal {
                break c;
            }
        };
        let a = make_symbol(c.clone(), vec![QiScalar::from_int(0)])?;
        let one_minus_a = make_symbol(-&c, vec![c.inv()?])?;
        let unit = t(&a, &one_minus_a)?.is_one() && tame_symbol(&a, &one_minus_a)?.is_one();
        Ok(mult && skew && unit)
    })
}

fn numeric_convergence() -> Outcome {
    let c = |re: f64| Complex64::new(re, 0.0);
    let corpus = [
        (
            TrigPoly::new(vec![(1, c(1.0))]),
            TrigPoly::new(vec![(-1, c(1.0))]),
            (-1.0f64).exp(),
        ),
        (
            TrigPoly::new(vec![(1, c(1.0)), (-1, c(1.0))]),
            TrigPoly::new(vec![(1, c(1.0)), (-1, c(-1.0))]),
            2.0f64.exp(),
        ),
        (
            TrigPoly::new(vec![(1, Complex64::new(0.5, 0.25)), (2, c(-0.3))]),
            TrigPoly::new(vec![(0, c(0.2)), (1, Complex64::new(0.0, 0.4))]),
            1.0,
        ),
    ];
    let mut passed = 0;
    let mut notes = Vec::new();
    for (f, g, expect) in &corpus {
        let exact = closed_form_di(f, g);
        let errors: Vec<f64> = [32, 64, 128]
            .par_iter()
            .map(|&n| {
                numeric_det_invariant(f, g, n, default_buffer(f, g))
                    .map(|v| (v - exact).norm())
                    .unwrap_or(f64::INFINITY)
            })
            .collect();
        let closed_ok = (exact - Complex64::new(*expect, 0.0)).norm() < 1e-12;
        let monotone = errors.windows(2).all(|w| w[1] <= w[0] + 1e-10);
        if closed_ok && monotone && errors[2] <= 1e-4 {
            passed += 1;
        }
        notes.push(format!("{:.1e}", errors[2]));
    }
    Outcome {
        passed,
        total: corpus.len(),
        note: format!("errors at N=128: [{}]", notes.join(", ")),
    }
}

fn pseudoinverse_formula() -> Outcome {
    let finite = tally(9, 50, |i| {
        let (a, b) = random::commuting_pair(&mut rng(9, i), 1 + i as usize % 5);
        let (ea, eb, mu_a, mu_b) = commuting_pair_sequences(&a, &b)?;
        Ok(pseudoinv_formula(&ea, &eb, mu_a, mu_b)? == joint_torsion_pair(&a, &b)?)
    });
    // same instances as the Toeplitz oracle criterion
    let toeplitz = tally(6, 100, |i| {
        let (f, g) = random::symbol_pair(&mut rng(6, i));
        Ok(toeplitz_pseudoinverse(&f, &g)? == toeplitz_joint_torsion(&f, &g)?)
    });
    Outcome {
        passed: finite.passed + toeplitz.passed,
        total: finite.total + toeplitz.total,
        note: format!(
            "commuting pairs {}/{}, Toeplitz {}/{} {}{}",
            finite.passed,
            finite.total,
            toeplitz.passed,
            toeplitz.total,
            finite.note,
            toeplitz.note
        ),
    }
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "finite-dimensional triviality",
            finite_triviality,
            Some(Duration::from_secs(120)),
        ),
        ("torsion equals determinant", torsion_is_determinant, None),
        ("direct-sum multiplicativity", direct_sums, None),
        ("basis independence", basis_independence, None),
        ("factorization identities", factorization, None),
        ("Toeplitz torsion vs tame symbol", toeplitz_oracle, None),
        ("Steinberg relations", steinberg, None),
        (
            "numeric determinant invariant",
            numeric_convergence,
            Some(Duration::from_secs(60)),
        ),
        ("pseudoinverse formula", pseudoinverse_formula, None),
    ];
    let mut all = true;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed <= l);
        let ok = o.passed == o.total && in_time;
        all &= ok;
        let budget = limit.map_or(String::new(), |l| format!(", limit {}s", l.as_secs()));
        println!(
            "{} [{}] {name}: {}/{} ({:.2}s{budget}) {}",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            o.passed,
            o.total,
            elapsed.as_secs_f64(),
            o.note
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
