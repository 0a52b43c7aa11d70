//! Smith normal form with unimodular transforms, and the finitely generated
//! abelian group it presents.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::IntMatrix;

/// `Z^free_rank + Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ... | d_k`, each `d_i >= 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct AbelianGroup {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup::default()
    }

    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        let n: BigInt = n.into();
        let n = n.abs();
        if n.is_zero() {
            AbelianGroup { torsion: vec![], free_rank: 1 }
        } else if n.is_one() {
            AbelianGroup::trivial()
        } else {
            AbelianGroup { torsion: vec![n], free_rank: 0 }
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Finite cyclic, the trivial group included.
    pub fn is_finite_cyclic(&self) -> bool {
        self.free_rank == 0 && self.torsion.len() <= 1
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        parts.extend(std::iter::repeat_n("Z".to_string(), self.free_rank));
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Cokernel of the input, read as relations in rows and generators in columns.
    pub group: AbelianGroup,
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// `left * m * right == diagonal` with both transforms unimodular.
    pub fn reproduces(&self, m: &IntMatrix) -> bool {
        self.left.mul(m).mul(&self.right) == self.diagonal && self.left.is_unimodular() && self.right.is_unimodular()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            bring_cross_minimum(&mut a, &mut u, &mut v, t);
            let pivot = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..r {
                if !a[(i, t)].is_zero() {
                    let q = -(&a[(i, t)] / &pivot);
                    a.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                    clean &= a[(i, t)].is_zero();
                }
            }
            for j in t + 1..c {
                if !a[(t, j)].is_zero() {
                    let q = -(&a[(t, j)] / &pivot);
                    a.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                    clean &= a[(t, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    a.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let mut torsion = Vec::new();
    let mut nonzero = 0;
    for i in 0..r.min(c) {
        let d = &a[(i, i)];
        if !d.is_zero() {
            nonzero += 1;
            if !d.is_one() {
                torsion.push(d.clone());
            }
        }
    }
    SmithForm { group: AbelianGroup { torsion, free_rank: c - nonzero }, diagonal: a, left: u, right: v }
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

// Moves the smallest nonzero entry of row t or column t onto the diagonal.
fn bring_cross_minimum(a: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, t: usize) {
    let mut best = (t, t);
    for i in t + 1..a.rows() {
        let x = &a[(i, t)];
        if !x.is_zero() && x.abs() < a[best].abs() {
            best = (i, t);
        }
    }
    for j in t + 1..a.cols() {
        let x = &a[(t, j)];
        if !x.is_zero() && x.abs() < a[best].abs() {
            best = (t, j);
        }
    }
    if best.0 != t {
        a.swap_rows(t, best.0);
        u.swap_rows(t, best.0);
    }
    if best.1 != t {
        a.swap_cols(t, best.1);
        v.swap_cols(t, best.1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(rows: &[Vec<i64>]) -> AbelianGroup {
        let m = IntMatrix::from_rows(rows);
        let f = smith_normal_form(&m);
        assert!(f.reproduces(&m));
        f.group
    }

    #[test]
    fn diag_two_three_is_z6() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let f = smith_normal_form(&m);
        assert_eq!(f.diagonal, IntMatrix::from_rows(&[vec![1, 0], vec![0, 6]]));
        assert_eq!(f.group, AbelianGroup::cyclic(6));
        assert_eq!(f.group.to_string(), "Z/6");
    }

    #[test]
    fn trivial_and_free() {
        assert!(group(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).is_trivial());
        assert_eq!(group(&[vec![0]]), AbelianGroup { torsion: vec![], free_rank: 1 });
        assert_eq!(group(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).torsion.len(), 3);
    }

    #[test]
    fn rectangular() {
        // two generators, one relation 2x + 4y = 0: Z/2 + Z
        let g = group(&[vec![2, 4]]);
        assert_eq!(g.to_string(), "Z/2 + Z");
        let g = group(&[vec![3], vec![6], vec![0]]);
        assert_eq!(g, AbelianGroup::cyclic(3));
    }

    #[test]
    fn empty_matrix_is_trivial() {
        assert!(group(&[]).is_trivial());
    }

    #[test]
    fn order_and_cyclicity() {
        let g = group(&[vec![1, 1, 1], vec![1, 2, 1], vec![1, 1, 3]]);
        assert_eq!(g.order(), Some(BigInt::from(2)));
        assert!(g.is_finite_cyclic());
        assert!(!group(&[vec![2, 0], vec![0, 2]]).is_finite_cyclic());
    }
}
