//! Koszul complexes of commuting tuples and of quadruples with `AB = CD`.

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::QiScalar;

/// Pairwise commuting square matrices on a common space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingTuple {
    ops: Vec<ExactMatrix>,
    h: usize,
}

impl CommutingTuple {
    pub fn new(ops: Vec<ExactMatrix>) -> Result<Self> {
        let h = ops.first().map_or(0, ExactMatrix::rows);
        for op in &ops {
            check_square(op, h, "tuple operator")?;
        }
        for i in 0..ops.len() {
            for j in i + 1..ops.len() {
                if &ops[i] * &ops[j] != &ops[j] * &ops[i] {
                    return Err(Error::NonCommuting(i, j));
                }
            }
        }
        Ok(CommutingTuple { ops, h })
    }

    pub fn ops(&self) -> &[ExactMatrix] {
        &self.ops
    }

    pub fn arity(&self) -> usize {
        self.ops.len()
    }

    pub fn space_dim(&self) -> usize {
        self.h
    }
}

fn check_square(m: &ExactMatrix, h: usize, context: &'static str) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            context,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() != h {
        return Err(Error::DimensionMismatch {
            context,
            left: m.rows(),
            right: h,
        });
    }
    Ok(())
}

/// Size-`k` subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `K_i = H ⊗ Λ^i C^n` with `d(v ⊗ e_S) = Σ_j (-1)^{j-1} A_{s_j} v ⊗ e_{S∖s_j}`.
///
/// Coordinates of `K_i` are grouped by subset: the block for the `p`-th
/// subset (lexicographic) occupies rows `p·h..(p+1)·h`.
pub fn build_koszul(t: &CommutingTuple) -> Result<ChainComplex> {
    let (n, h) = (t.arity(), t.space_dim());
    let bases: Vec<Vec<Vec<usize>>> = (0..=n).map(|i| subsets(n, i)).collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.len() * h).collect();
    let mut diffs = Vec::with_capacity(n);
    for i in 1..=n {
        let mut d = ExactMatrix::zeros(dims[i - 1], dims[i]);
        for (col, s) in bases[i].iter().enumerate() {
            for (j, &elem) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&x| x != elem).collect();
                let row = bases[i - 1]
                    .iter()
                    .position(|r| *r == rest)
                    .expect("face is a subset");
                let op = if j % 2 == 0 {
                    t.ops[elem].clone()
                } else {
                    -&t.ops[elem]
                };
                d.set_block(row * h, col * h, &op);
            }
        }
        diffs.push(d);
    }
    ChainComplex::new(dims, diffs)
}

/// Square matrices on a common space with `AB = CD`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulQuadruple {
    pub a: ExactMatrix,
    pub b: ExactMatrix,
    pub c: ExactMatrix,
    pub d: ExactMatrix,
}

impl KoszulQuadruple {
    pub fn new(a: ExactMatrix, b: ExactMatrix, c: ExactMatrix, d: ExactMatrix) -> Result<Self> {
        let h = a.rows();
        for (m, name) in [(&a, "A"), (&b, "B"), (&c, "C"), (&d, "D")] {
            check_square(m, h, name)?;
        }
        if &a * &b != &c * &d {
            return Err(Error::QuadrupleRelation);
        }
        Ok(KoszulQuadruple { a, b, c, d })
    }

    /// `(A, B, B, A)` for a commuting pair.
    pub fn from_pair(a: ExactMatrix, b: ExactMatrix) -> Result<Self> {
        let t = CommutingTuple::new(vec![a, b])?;
        let [a, b]: [ExactMatrix; 2] = t.ops.try_into().expect("two operators");
        Ok(KoszulQuadruple {
            c: b.clone(),
            d: a.clone(),
            a,
            b,
        })
    }

    pub fn space_dim(&self) -> usize {
        self.a.rows()
    }

    pub fn direct_sum(&self, other: &KoszulQuadruple) -> KoszulQuadruple {
        KoszulQuadruple {
            a: self.a.direct_sum(&other.a),
            b: self.b.direct_sum(&other.b),
            c: self.c.direct_sum(&other.c),
            d: self.d.direct_sum(&other.d),
        }
    }
}

/// `H →(−B; D) H² →(A C) H`.
pub fn build_quad_complex(q: &KoszulQuadruple) -> Result<ChainComplex> {
    let h = q.space_dim();
    let d2 = q.b.scale(&-QiScalar::from_int(1)).vstack(&q.d)?;
    let d1 = q.a.hstack(&q.c)?;
    ChainComplex::new(vec![h, 2 * h, h], vec![d1, d2])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_ints(rows)
    }

    #[test]
    fn single_operator() {
        let a = m(&[&[1, 2], &[0, 3]]);
        let c = build_koszul(&CommutingTuple::new(vec![a.clone()]).unwrap()).unwrap();
        assert_eq!(c.dims(), &[2, 2]);
        assert_eq!(c.diff(1), &a);

        let zero = build_koszul(&CommutingTuple::new(vec![m(&[&[0]])]).unwrap()).unwrap();
        assert_eq!(zero.homology_dims(), vec![1, 1]);
    }

    #[test]
    fn pair_homology() {
        let z = build_koszul(&CommutingTuple::new(vec![m(&[&[0]]), m(&[&[0]])]).unwrap()).unwrap();
        assert_eq!(z.homology_dims(), vec![1, 2, 1]);
        let i = build_koszul(&CommutingTuple::new(vec![m(&[&[1]]), m(&[&[1]])]).unwrap()).unwrap();
        assert_eq!(i.homology_dims(), vec![0, 0, 0]);
    }

    #[test]
    fn pair_differentials_match_block_form() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let b = m(&[&[2, 3], &[0, 2]]);
        let k = build_koszul(&CommutingTuple::new(vec![a.clone(), b.clone()]).unwrap()).unwrap();
        assert_eq!(k.diff(1), &a.hstack(&b).unwrap());
        assert_eq!(k.diff(2), &(-&b).vstack(&a).unwrap());
        let q = build_quad_complex(&KoszulQuadruple::from_pair(a, b).unwrap()).unwrap();
        assert_eq!(q.homology_dims(), k.homology_dims());
    }

    #[test]
    fn triple_squares_to_zero() {
        let a = m(&[&[0, 1], &[0, 0]]);
        let b = m(&[&[2, 1], &[0, 2]]);
        let c = m(&[&[1, 0], &[0, 1]]);
        let k = build_koszul(&CommutingTuple::new(vec![a, b, c]).unwrap()).unwrap();
        assert_eq!(k.dims(), &[2, 6, 6, 2]);
        assert_eq!(k.homology_dims(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn non_commuting_rejected() {
        let a = m(&[&[0, 1], &[0, 0]]);
        let b = m(&[&[1, 0], &[0, 2]]);
        assert_eq!(
            CommutingTuple::new(vec![a, b]),
            Err(Error::NonCommuting(0, 1))
        );
    }

    #[test]
    fn quad_examples() {
        let z = m(&[&[0]]);
        let q = KoszulQuadruple::new(z.clone(), z.clone(), z.clone(), z).unwrap();
        assert_eq!(
            build_quad_complex(&q).unwrap().homology_dims(),
            vec![1, 2, 1]
        );
        let i = m(&[&[1]]);
        let q = KoszulQuadruple::new(i.clone(), i.clone(), i.clone(), i).unwrap();
        assert_eq!(
            build_quad_complex(&q).unwrap().homology_dims(),
            vec![0, 0, 0]
        );
        let bad = KoszulQuadruple::new(m(&[&[1]]), m(&[&[2]]), m(&[&[1]]), m(&[&[3]]));
        assert_eq!(bad, Err(Error::QuadrupleRelation));
    }
}
