//! Combinatorial types of plane curves and of line arrangements.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::singularities::SingularityType;

/// Degrees of the irreducible components plus the multiset of singularities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinatorialCurve {
    component_degrees: Vec<u32>,
    singularities: Vec<SingularityType>,
    /// For each singularity, the single component it lies on, when known.
    /// Only singular points of one component may be assigned.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    assignment: Option<Vec<usize>>,
}

impl CombinatorialCurve {
    pub fn new(component_degrees: Vec<u32>, singularities: Vec<SingularityType>) -> Result<Self> {
        if component_degrees.is_empty() {
            return Err(Error::InvalidCurve("no components".into()));
        }
        if component_degrees.contains(&0) {
            return Err(Error::InvalidCurve("component of degree 0".into()));
        }
        Ok(Self {
            component_degrees,
            singularities,
            assignment: None,
        })
    }

    pub fn with_assignment(mut self, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != self.singularities.len() {
            return Err(Error::InvalidCurve(format!(
                "assignment lists {} entries for {} singularities",
                assignment.len(),
                self.singularities.len()
            )));
        }
        if let Some(bad) = assignment.iter().find(|&&k| k >= self.component_degrees.len()) {
            return Err(Error::InvalidCurve(format!("no component with index {bad}")));
        }
        self.assignment = Some(assignment);
        Ok(self)
    }

    /// A single smooth irreducible curve of degree `d`.
    pub fn smooth(d: u32) -> Result<Self> {
        Self::new(vec![d], Vec::new())
    }

    pub fn component_degrees(&self) -> &[u32] {
        &self.component_degrees
    }

    pub fn singularities(&self) -> &[SingularityType] {
        &self.singularities
    }

    pub fn assignment(&self) -> Option<&[usize]> {
        self.assignment.as_deref()
    }

    pub fn degree(&self) -> i64 {
        self.component_degrees.iter().map(|&d| d as i64).sum()
    }

    pub fn component_count(&self) -> usize {
        self.component_degrees.len()
    }

    pub fn is_irreducible(&self) -> bool {
        self.component_degrees.len() == 1
    }
}

/// Same component degrees and same singularities, both as multisets.
pub fn weak_equivalent(a: &CombinatorialCurve, b: &CombinatorialCurve) -> bool {
    fn sorted<T: Ord + Clone>(xs: &[T]) -> Vec<T> {
        let mut v = xs.to_vec();
        v.sort();
        v
    }
    sorted(&a.component_degrees) == sorted(&b.component_degrees)
        && sorted(&a.singularities) == sorted(&b.singularities)
}

/// Counts `t_m` of points of multiplicity `m`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakProfile {
    pub t: BTreeMap<u32, u64>,
}

impl WeakProfile {
    pub fn count(&self, m: u32) -> u64 {
        self.t.get(&m).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }
}

/// Result of comparing `sum_m C(m,2) t_m` against `C(d,2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairCount {
    pub covered_pairs: u64,
    pub total_pairs: u64,
}

impl PairCount {
    pub fn passes(&self) -> bool {
        self.covered_pairs == self.total_pairs
    }
}

/// `d` labelled lines together with their multiple points.
///
/// Lines are indexed `0..d` internally. Only points of multiplicity at least
/// 3 need to be listed; every pair of lines not sharing a listed point meets
/// in an implicit double point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineArrangement {
    line_count: usize,
    points: Vec<Vec<usize>>,
    /// `pair_point[i * d + j]`: index into `points` of the point where lines
    /// `i` and `j` meet, or `None` for an implicit double point.
    pair_point: Vec<Option<usize>>,
}

impl LineArrangement {
    /// Lines are `0..line_count`; each point lists at least two lines.
    pub fn new(line_count: usize, points: Vec<Vec<usize>>) -> Result<Self> {
        if line_count == 0 {
            return Err(Error::InvalidArrangement("no lines".into()));
        }
        let mut pair_point = vec![None; line_count * line_count];
        let mut normalized = Vec::with_capacity(points.len());
        for (idx, point) in points.into_iter().enumerate() {
            let mut point = point;
            point.sort_unstable();
            if point.len() < 2 {
                return Err(Error::InvalidArrangement(format!(
                    "point {} has fewer than two lines",
                    idx + 1
                )));
            }
            if point.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArrangement(format!(
                    "point {} repeats a line",
                    idx + 1
                )));
            }
            if let Some(&bad) = point.iter().find(|&&l| l >= line_count) {
                return Err(Error::InvalidArrangement(format!(
                    "point {} uses line {} but there are only {line_count} lines",
                    idx + 1,
                    bad + 1
                )));
            }
            for (x, &i) in point.iter().enumerate() {
                for &j in &point[x + 1..] {
                    if let Some(prev) = pair_point[i * line_count + j] {
                        return Err(Error::InvalidArrangement(format!(
                            "lines {} and {} meet at both point {} and point {}",
                            i + 1,
                            j + 1,
                            prev + 1,
                            idx + 1
                        )));
                    }
                    pair_point[i * line_count + j] = Some(idx);
                    pair_point[j * line_count + i] = Some(idx);
                }
            }
            normalized.push(point);
        }
        Ok(Self {
            line_count,
            points: normalized,
            pair_point,
        })
    }

    /// Same as [`LineArrangement::new`] with lines numbered from 1.
    pub fn from_one_based(line_count: usize, points: &[Vec<usize>]) -> Result<Self> {
        let points = points
            .iter()
            .map(|p| {
                p.iter()
                    .map(|&l| {
                        l.checked_sub(1).ok_or_else(|| {
                            Error::InvalidArrangement("lines are numbered from 1".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(line_count, points)
    }

    pub fn line_count(&self) -> usize {
        self.line_count
    }

    /// The listed points, each sorted.
    pub fn listed_points(&self) -> &[Vec<usize>] {
        &self.points
    }

    /// Listed points followed by the implicit double points in
    /// lexicographic order of their line pairs.
    pub fn all_points(&self) -> Vec<Vec<usize>> {
        let mut all = self.points.clone();
        for i in 0..self.line_count {
            for j in i + 1..self.line_count {
                if self.meeting_point(i, j).is_none() {
                    all.push(vec![i, j]);
                }
            }
        }
        all
    }

    /// Index of the listed point through lines `i != j`, if any.
    pub fn meeting_point(&self, i: usize, j: usize) -> Option<usize> {
        self.pair_point[i * self.line_count + j]
    }

    /// Multiplicity of the point where lines `i != j` cross.
    pub fn meeting_multiplicity(&self, i: usize, j: usize) -> usize {
        self.meeting_point(i, j).map_or(2, |p| self.points[p].len())
    }

    /// Whether line `k` passes through the crossing of lines `i` and `j`.
    pub fn concurrent(&self, i: usize, j: usize, k: usize) -> bool {
        match self.meeting_point(i, j) {
            Some(p) => self.points[p].binary_search(&k).is_ok(),
            None => false,
        }
    }

    pub fn weak_profile(&self) -> WeakProfile {
        let mut t = BTreeMap::new();
        let mut covered = 0u64;
        for p in &self.points {
            let m = p.len() as u64;
            *t.entry(m as u32).or_insert(0) += 1;
            covered += m * (m - 1) / 2;
        }
        let d = self.line_count as u64;
        let implicit = d * (d - 1) / 2 - covered;
        if implicit > 0 {
            *t.entry(2).or_insert(0) += implicit;
        }
        WeakProfile { t }
    }

    pub fn pair_count_check(&self) -> PairCount {
        let covered_pairs = self
            .weak_profile()
            .t
            .iter()
            .map(|(&m, &count)| (m as u64) * (m as u64 - 1) / 2 * count)
            .sum();
        let d = self.line_count as u64;
        PairCount {
            covered_pairs,
            total_pairs: d * (d - 1) / 2,
        }
    }

    /// Euler characteristic of the union of the lines: `2d - sum (m-1) t_m`.
    pub fn arrangement_euler(&self) -> i64 {
        let profile = self.weak_profile();
        2 * self.line_count as i64
            - profile
                .t
                .iter()
                .map(|(&m, &count)| (m as i64 - 1) * count as i64)
                .sum::<i64>()
    }

    /// Each line becomes a degree-1 component and each `m`-fold point an
    /// ordinary singularity `O(m)`.
    pub fn as_combinatorial_curve(&self) -> CombinatorialCurve {
        let singularities = self
            .all_points()
            .iter()
            .map(|p| SingularityType::ordinary(p.len() as u32).expect("points have >= 2 lines"))
            .collect();
        CombinatorialCurve::new(vec![1; self.line_count], singularities)
            .expect("line_count >= 1")
    }

    /// Renames line `i` to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if !is_permutation(perm, self.line_count) {
            return Err(Error::InvalidArrangement(format!(
                "relabelling is not a permutation of {} lines",
                self.line_count
            )));
        }
        let points = self
            .points
            .iter()
            .map(|p| p.iter().map(|&l| perm[l]).collect())
            .collect();
        Self::new(self.line_count, points)
    }

    /// Multiplicities of the points on line `i` (implicit doubles included),
    /// sorted descending.
    pub fn line_signature(&self, i: usize) -> Vec<usize> {
        let mut sig: Vec<usize> = (0..self.line_count)
            .filter(|&j| j != i)
            .filter_map(|j| match self.meeting_point(i, j) {
                // count a listed point once, from its smallest other line
                Some(p) => {
                    let first_other = self.points[p].iter().copied().find(|&l| l != i);
                    (first_other == Some(j)).then(|| self.points[p].len())
                }
                None => Some(2),
            })
            .collect();
        sig.sort_unstable_by(|x, y| y.cmp(x));
        sig
    }
}

fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    perm.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

/// Searches for a relabelling `sigma` of the lines of `a` taking its point
/// system onto that of `b`. Returns `sigma` with `sigma[i]` the line of `b`
/// that line `i` of `a` maps to.
pub fn strong_equivalent(a: &LineArrangement, b: &LineArrangement) -> Option<Vec<usize>> {
    let d = a.line_count;
    if d != b.line_count || a.weak_profile() != b.weak_profile() {
        return None;
    }
    let sig_a: Vec<_> = (0..d).map(|i| a.line_signature(i)).collect();
    let sig_b: Vec<_> = (0..d).map(|i| b.line_signature(i)).collect();
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return None;
    }

    struct Search<'s> {
        a: &'s LineArrangement,
        b: &'s LineArrangement,
        sig_a: &'s [Vec<usize>],
        sig_b: &'s [Vec<usize>],
        image: Vec<usize>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn compatible(&self, k: usize, target: usize) -> bool {
            let n = self.image.len();
            for i in 0..n {
                let si = self.image[i];
                if self.a.meeting_multiplicity(i, k) != self.b.meeting_multiplicity(si, target) {
                    return false;
                }
                for j in i + 1..n {
                    let sj = self.image[j];
                    if self.a.concurrent(i, j, k) != self.b.concurrent(si, sj, target) {
                        return false;
                    }
                }
            }
            true
        }

        fn extend(&mut self) -> bool {
            let k = self.image.len();
            if k == self.sig_a.len() {
                return true;
            }
            for target in 0..self.sig_b.len() {
                if self.used[target] || self.sig_a[k] != self.sig_b[target] {
                    continue;
                }
                if !self.compatible(k, target) {
                    continue;
                }
                self.used[target] = true;
                self.image.push(target);
                if self.extend() {
                    return true;
                }
                self.image.pop();
                self.used[target] = false;
            }
            false
        }
    }

    let mut search = Search {
        a,
        b,
        sig_a: &sig_a,
        sig_b: &sig_b,
        image: Vec::with_capacity(d),
        used: vec![false; d],
    };
    search.extend().then_some(search.image)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::LineArrangement;

    /// Fano arrangement: lines `F_1..F_7` through the seven points, listed in
    /// point order so that point `j` is blown up to `e_j`.
    pub fn fano() -> LineArrangement {
        LineArrangement::from_one_based(
            7,
            &[
                vec![1, 2, 5],
                vec![1, 3, 6],
                vec![1, 4, 7],
                vec![2, 3, 7],
                vec![2, 4, 6],
                vec![5, 6, 7],
                vec![3, 4, 5],
            ],
        )
        .unwrap()
    }

    /// Six lines, two triple points sharing line 1.
    pub fn six_lines_shared() -> LineArrangement {
        LineArrangement::from_one_based(6, &[vec![1, 2, 3], vec![1, 4, 5]]).unwrap()
    }

    /// Six lines, two triple points on disjoint line triples.
    pub fn six_lines_apart() -> LineArrangement {
        LineArrangement::from_one_based(6, &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap()
    }
}
