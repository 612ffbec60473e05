//! Smith normal form over the integers and finitely generated abelian groups.

use std::fmt;

use serde::{Deserialize, Serialize};

/// `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` with `t_1 | t_2 | ... | t_k`, all `t_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupSpec {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroupSpec {
    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Finite and generated by one element (the trivial group included).
    pub fn is_finite_cyclic(&self) -> bool {
        self.free_rank == 0 && self.torsion.len() <= 1
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Diagonal entries `s_1 | s_2 | ...` (all nonzero) of the Smith normal form.
pub fn invariant_factors(matrix: &[Vec<i64>]) -> Vec<u64> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    assert!(
        matrix.iter().all(|r| r.len() == cols),
        "ragged matrix passed to invariant_factors"
    );
    let mut m: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();

    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let Some((pr, pc)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }

        loop {
            let pivot = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(pivot);
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                dirty |= m[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(pivot);
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                dirty |= m[t][j] != 0;
            }
            if !dirty {
                // pivot must divide the rest of the block
                let offender = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| m[i][j] % pivot != 0);
                match offender {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = m[i][j];
                            m[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero remainder in row/column t to the pivot
            let best_row = (t..rows)
                .filter(|&i| m[i][t] != 0)
                .min_by_key(|&i| m[i][t].abs())
                .unwrap_or(t);
            m.swap(t, best_row);
            let best_col = (t..cols)
                .filter(|&j| m[t][j] != 0)
                .min_by_key(|&j| m[t][j].abs())
                .unwrap_or(t);
            for row in m.iter_mut() {
                row.swap(t, best_col);
            }
        }
        diag.push(m[t][t].unsigned_abs() as u64);
        t += 1;
    }
    diag
}

/// Cokernel of the relation matrix: `Z^cols` modulo the span of the rows.
pub fn smith_invariants(matrix: &[Vec<i64>]) -> AbelianGroupSpec {
    let cols = matrix.first().map_or(0, Vec::len);
    let diag = invariant_factors(matrix);
    AbelianGroupSpec {
        free_rank: cols - diag.len(),
        torsion: diag.into_iter().filter(|&s| s > 1).collect(),
    }
}

/// Transpose of a rectangular matrix.
pub fn transpose(matrix: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = matrix.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| matrix.iter().map(|r| r[j]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_six() {
        let g = smith_invariants(&[vec![6]]);
        assert_eq!(g, AbelianGroupSpec { free_rank: 0, torsion: vec![6] });
        assert_eq!(g.to_string(), "Z/6");
    }

    #[test]
    fn zero_matrix() {
        let g = smith_invariants(&[vec![0, 0], vec![0, 0]]);
        assert_eq!(g, AbelianGroupSpec { free_rank: 2, torsion: vec![] });
        assert_eq!(g.to_string(), "Z^2");
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(2,3) ~ diag(1,6)
        assert_eq!(invariant_factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(
            smith_invariants(&[vec![4, 0], vec![0, 6]]).torsion,
            vec![2, 12]
        );
    }

    #[test]
    fn negative_and_rectangular() {
        assert_eq!(
            smith_invariants(&[vec![2, 2]]),
            AbelianGroupSpec { free_rank: 1, torsion: vec![2] }
        );
        assert_eq!(
            smith_invariants(&[vec![-3], vec![5]]),
            AbelianGroupSpec { free_rank: 0, torsion: vec![] }
        );
        assert_eq!(smith_invariants(&[]).free_rank, 0);
        assert_eq!(smith_invariants(&[vec![], vec![]]).to_string(), "0");
    }

    #[test]
    fn cyclicity_predicates() {
        let g = AbelianGroupSpec { free_rank: 0, torsion: vec![2] };
        assert!(g.is_finite_cyclic());
        assert_eq!(g.order(), Some(2));
        let h = AbelianGroupSpec { free_rank: 0, torsion: vec![2, 2] };
        assert!(!h.is_finite_cyclic());
        assert!(AbelianGroupSpec { free_rank: 0, torsion: vec![] }.is_finite_cyclic());
        assert_eq!(AbelianGroupSpec { free_rank: 1, torsion: vec![] }.order(), None);
    }
}
