//! Seeded random instances for the property suites.
//!
//! Instance `i` of a suite run with seed `s` draws from the ChaCha8 stream
//! `(s, i)`, so instances are independent of each other and of scheduling.

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::koszul::KoszulQuadruple;
use crate::matrix::ExactMatrix;
use crate::scalar::{qi_modulus_cmp_one, QiScalar};
use crate::toeplitz::exact::{make_symbol, AnalyticSymbol};
use crate::toeplitz::numeric::TrigPoly;

pub type InstanceRng = ChaCha8Rng;

pub fn instance_rng(seed: u64, index: u64) -> InstanceRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Gaussian rational with numerators in `[-4, 4]` and denominators in
/// `[1, 4]`; real with probability one half.
pub fn scalar<R: Rng>(rng: &mut R) -> QiScalar {
    let re = QiScalar::ratio(rng.random_range(-4..=4), rng.random_range(1..=4));
    if rng.random_bool(0.5) {
        re
    } else {
        let im = QiScalar::ratio(rng.random_range(-4..=4), rng.random_range(1..=4));
        re + im * QiScalar::i()
    }
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R) -> QiScalar {
    loop {
        let x = scalar(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> ExactMatrix {
    let data = (0..rows * cols).map(|_| scalar(rng)).collect();
    ExactMatrix::new(rows, cols, data).expect("shape")
}

/// `n×n` matrix of rank at most `rank` (generically exactly `rank`).
pub fn matrix_of_rank<R: Rng>(rng: &mut R, n: usize, rank: usize) -> ExactMatrix {
    &matrix(rng, n, rank) * &matrix(rng, rank, n)
}

/// Square matrix of a uniformly drawn rank in `0..=n`.
pub fn singular_ish<R: Rng>(rng: &mut R, n: usize) -> ExactMatrix {
    let rank = rng.random_range(0..=n);
    matrix_of_rank(rng, n, rank)
}

pub fn invertible<R: Rng>(rng: &mut R, n: usize) -> ExactMatrix {
    loop {
        let m = matrix(rng, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

/// Commuting pair `(A, p(A))` with `p` a random polynomial of degree ≤ 2.
pub fn commuting_pair<R: Rng>(rng: &mut R, n: usize) -> (ExactMatrix, ExactMatrix) {
    let a = singular_ish(rng, n);
    let id = ExactMatrix::identity(n);
    let c: Vec<QiScalar> = (0..3)
        .map(|_| {
            if rng.random_bool(0.3) {
                QiScalar::zero()
            } else {
                scalar(rng)
            }
        })
        .collect();
    let b = &(&id.scale(&c[0]) + &a.scale(&c[1])) + &(&a * &a).scale(&c[2]);
    if rng.random_bool(0.5) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Random quadruple with `AB = CD` on `C^h`, drawn from one of four families:
/// `D` invertible with `C = ABD⁻¹`; `C` invertible with `D = C⁻¹AB`;
/// `A = PQ, C = P, D = QB` with all factors possibly singular; and
/// commuting pairs `(A, B, B, A)`.
pub fn quadruple<R: Rng>(rng: &mut R, h: usize) -> KoszulQuadruple {
    let (a, b, c, d) = match rng.random_range(0..4) {
        0 => {
            let (a, b) = (singular_ish(rng, h), singular_ish(rng, h));
            let d = invertible(rng, h);
            let c = &(&a * &b) * &d.inverse().expect("invertible");
            (a, b, c, d)
        }
        1 => {
            let (a, b) = (singular_ish(rng, h), singular_ish(rng, h));
            let c = invertible(rng, h);
            let d = &c.inverse().expect("invertible") * &(&a * &b);
            (a, b, c, d)
        }
        2 => {
            let (p, q, b) = (
                singular_ish(rng, h),
                singular_ish(rng, h),
                singular_ish(rng, h),
            );
            let d = &q * &b;
            (&p * &q, b, p, d)
        }
        _ => {
            let (a, b) = commuting_pair(rng, h);
            (a.clone(), b.clone(), b, a)
        }
    };
    KoszulQuadruple::new(a, b, c, d).expect("family satisfies AB = CD")
}

/// Random root off the unit circle, biased towards small moduli.
fn root<R: Rng>(rng: &mut R) -> QiScalar {
    loop {
        let x = scalar(rng);
        if qi_modulus_cmp_one(&x) != std::cmp::Ordering::Equal {
            return x;
        }
    }
}

/// Pair of analytic symbols with at most three roots each and no common
/// root inside the disk.
pub fn symbol_pair<R: Rng>(rng: &mut R) -> (AnalyticSymbol, AnalyticSymbol) {
    loop {
        let f = symbol(rng);
        let g = symbol(rng);
        let clash = f
            .inside_roots()
            .iter()
            .any(|a| g.inside_roots().contains(a));
        if !clash {
            return (f, g);
        }
    }
}

pub fn symbol<R: Rng>(rng: &mut R) -> AnalyticSymbol {
    let k = rng.random_range(0..=3);
    let roots = (0..k).map(|_| root(rng)).collect();
    make_symbol(nonzero_scalar(rng), roots).expect("roots are off the circle")
}

/// Laurent polynomial with degrees in `[-k, k]` and coefficients of modulus
/// at most `scale`.
pub fn trig_poly<R: Rng>(rng: &mut R, k: i64, scale: f64) -> TrigPoly {
    let coeffs = (-k..=k)
        .map(|d| {
            let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            (d, z * (scale / std::f64::consts::SQRT_2))
        })
        .collect();
    TrigPoly::new(coeffs)
}
