use exact_arith::{smith_normal_form, AbelianGroup, IntMatrix};
use num_bigint::BigInt;

use crate::{ComponentId, TwistRegionGraph};

/// Row `i` is `p_i e_i + q_i * sum_j lk(i, j) e_j` for coefficient `p_i/q_i`,
/// components in ascending id order. A `1/0` row kills its own generator, which
/// is the same as deleting the component.
pub fn presentation_matrix(d: &TwistRegionGraph) -> (Vec<ComponentId>, IntMatrix) {
    let ids: Vec<ComponentId> = d.ids().collect();
    let n = ids.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, c) in d.components().enumerate() {
        m[(i, i)] = c.coefficient.num().clone();
        for (j, other) in ids.iter().enumerate() {
            let lk = d.linking(c.id, *other);
            if lk != 0 {
                m[(i, j)] = c.coefficient.den() * BigInt::from(lk);
            }
        }
    }
    (ids, m)
}

pub fn first_homology(d: &TwistRegionGraph) -> AbelianGroup {
    smith_normal_form(&presentation_matrix(d).1).group
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_arith::Slope;

    #[test]
    fn single_unknot() {
        let d = TwistRegionGraph::path(vec![Slope::new(5, 2).unwrap()], &[]).unwrap();
        assert_eq!(first_homology(&d), AbelianGroup::cyclic(5));
        let z = TwistRegionGraph::path(vec![Slope::zero()], &[]).unwrap();
        assert_eq!(first_homology(&z), AbelianGroup::cyclic(0));
    }

    #[test]
    fn triangle_with_small_coefficients() {
        let d = TwistRegionGraph::cycle(vec![1.into(), 2.into(), 3.into()], &[1, 1, 1]).unwrap();
        let (_, m) = presentation_matrix(&d);
        assert_eq!(m.determinant(), BigInt::from(2));
        assert_eq!(first_homology(&d), AbelianGroup::cyclic(2));
    }

    #[test]
    fn empty_and_unfilled() {
        assert!(first_homology(&TwistRegionGraph::new()).is_trivial());
        assert!(first_homology(&crate::mt5c()).is_trivial());
    }
}
