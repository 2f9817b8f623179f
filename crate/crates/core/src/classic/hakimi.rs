use super::{ClassicError, InfeasibleReason};
use crate::graph::Multigraph;

/// Closed-form test: even sum and no entry larger than the rest combined.
pub fn hakimi_feasible(degrees: &[usize]) -> Result<(), InfeasibleReason> {
    let sum: usize = degrees.iter().sum();
    let max = degrees.iter().copied().max().unwrap_or(0);
    if sum % 2 == 1 {
        Err(InfeasibleReason::OddSum)
    } else if sum - max < max {
        Err(InfeasibleReason::DominantDegree)
    } else {
        Ok(())
    }
}

/// Loopless multigraph with `d_G(i) = degrees[i]`. Repeatedly joins the two
/// vertices of largest residual degree.
pub fn hakimi_realize(degrees: &[usize]) -> Result<Multigraph, ClassicError> {
    hakimi_feasible(degrees).map_err(ClassicError::Infeasible)?;
    let n = degrees.len();
    let mut g = Multigraph::new(n);
    let mut rest = degrees.to_vec();
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        order.sort_by(|&a, &b| rest[b].cmp(&rest[a]).then(a.cmp(&b)));
        if n < 2 || rest[order[0]] == 0 {
            break;
        }
        let (u, v) = (order[0], order[1]);
        // Joining u to v as often as possible while v stays at least the
        // third largest keeps the pairing rule intact and saves sorts.
        let third = if n > 2 { rest[order[2]] } else { 0 };
        let times = (rest[v] - third).max(1).min(rest[v]);
        for _ in 0..times {
            g.add_edge(u, v).expect("distinct vertices");
        }
        rest[u] -= times;
        rest[v] -= times;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn star() {
        let g = hakimi_realize(&[3, 1, 1, 1]).unwrap();
        assert_eq!(g.degrees(), vec![3, 1, 1, 1]);
        assert_eq!(g.neighbors(0), vec![1, 2, 3]);
    }

    #[test]
    fn infeasible() {
        assert_eq!(
            hakimi_realize(&[4, 1, 1]).unwrap_err(),
            ClassicError::Infeasible(InfeasibleReason::DominantDegree)
        );
        assert_eq!(
            hakimi_realize(&[3, 1, 1]).unwrap_err(),
            ClassicError::Infeasible(InfeasibleReason::OddSum)
        );
    }

    #[test]
    fn three_three_two() {
        let g = hakimi_realize(&[3, 3, 2]).unwrap();
        assert_eq!(g.degrees(), vec![3, 3, 2]);
    }

    #[test]
    fn empty_and_zero() {
        assert_eq!(hakimi_realize(&[]).unwrap().vertex_count(), 0);
        assert_eq!(hakimi_realize(&[0, 0]).unwrap().edge_count(), 0);
    }

    proptest! {
        #[test]
        fn realizes_feasible_sequences(mut d in proptest::collection::vec(0usize..12, 0..12)) {
            d.sort_unstable_by(|a, b| b.cmp(a));
            match hakimi_realize(&d) {
                Ok(g) => prop_assert_eq!(g.degrees(), d),
                Err(_) => {
                    let s: usize = d.iter().sum();
                    prop_assert!(s % 2 == 1 || s < 2 * d[0]);
                }
            }
        }
    }
}
