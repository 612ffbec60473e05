//! Global invariants of combinatorial curves: the adjunction identity,
//! complement homology and Euler characteristics, finiteness bounds, and the
//! counting of cuspidal types.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::curve_model::CombinatorialCurve;
use crate::error::{Error, Result};
use crate::singularities::SingularityType;
pub use crate::smith::{smith_invariants, AbelianGroupSpec};

/// Genus of a smooth plane curve of degree `d`.
pub fn degree_genus(d: i64) -> i64 {
    (d - 1) * (d - 2) / 2
}

/// The most singular points a reduced curve of degree `d` can have.
pub fn max_singular_points(d: i64) -> i64 {
    d * (d - 1) / 2
}

/// Outcome of the singular adjunction identity
/// `sum chi_g(C_k) = 3d - d^2 + sum_p (mu_p + beta_p - 1)`.
///
/// The feasibility conditions are necessary, not sufficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjunctionVerdict {
    pub total_chi_g: i64,
    pub feasible: bool,
    pub reason: String,
    /// Per-component bounds from the optional singularity assignment:
    /// `(component, 3 d_k - d_k^2 + assigned contributions)`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub component_bounds: Vec<(usize, i64)>,
}

impl AdjunctionVerdict {
    /// Geometric genus forced on an irreducible curve.
    pub fn genus(&self, components: usize) -> Option<i64> {
        (components == 1 && self.feasible).then_some((2 - self.total_chi_g) / 2)
    }
}

pub fn adjunction_check(curve: &CombinatorialCurve) -> AdjunctionVerdict {
    let d = curve.degree();
    let c = curve.component_count() as i64;
    let local: i64 = curve
        .singularities()
        .iter()
        .map(SingularityType::adjunction_contribution)
        .sum();
    let total_chi_g = 3 * d - d * d + local;

    let mut component_bounds = Vec::new();
    if let Some(assignment) = curve.assignment() {
        for (k, &dk) in curve.component_degrees().iter().enumerate() {
            let dk = dk as i64;
            let own: i64 = curve
                .singularities()
                .iter()
                .zip(assignment)
                .filter(|(_, &comp)| comp == k)
                .map(|(s, _)| s.adjunction_contribution())
                .sum();
            component_bounds.push((k, 3 * dk - dk * dk + own));
        }
    }

    let (feasible, reason) = if total_chi_g % 2 != 0 {
        (false, format!("sum of chi_g = {total_chi_g} is odd"))
    } else if total_chi_g > 2 * c {
        (
            false,
            format!("sum of chi_g = {total_chi_g} > 2c = {}", 2 * c),
        )
    } else if let Some(&(k, bound)) = component_bounds.iter().find(|(_, b)| *b > 2) {
        (
            false,
            format!("component {k} alone forces chi_g >= {bound} > 2"),
        )
    } else {
        (
            true,
            format!("sum of chi_g = {total_chi_g} is even and <= 2c = {}", 2 * c),
        )
    };
    AdjunctionVerdict {
        total_chi_g,
        feasible,
        reason,
        component_bounds,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CuspidalGenusCheck {
    pub link_genus_sum: i64,
    pub degree_genus: i64,
}

impl CuspidalGenusCheck {
    pub fn passes(&self) -> bool {
        self.link_genus_sum == self.degree_genus
    }
}

/// An irreducible curve with only cusps is rational exactly when the link
/// genera add up to the genus of a smooth curve of the same degree.
pub fn rational_cuspidal_check(d: i64, cusps: &[SingularityType]) -> Result<CuspidalGenusCheck> {
    let mut link_genus_sum = 0;
    for cusp in cusps {
        link_genus_sum += cusp
            .link_genus()
            .map_err(|_| Error::NotRationalCuspidal(format!("{cusp} is not a cusp")))?;
    }
    Ok(CuspidalGenusCheck {
        link_genus_sum,
        degree_genus: degree_genus(d),
    })
}

/// `(a-1)(b-1) = (d-1)(d-2)` for a curve with a single cusp `T(a,b)`.
pub fn unicuspidal_torus_check(a: i64, b: i64, d: i64) -> bool {
    (a - 1) * (b - 1) == (d - 1) * (d - 2)
}

/// The families of rational unicuspidal curves with one torus-type cusp.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum UnicuspidalFamily {
    /// `(a, a+1, a+1)`
    Consecutive { a: i64 },
    /// `(a, 4a-1, 2a)`
    FourAMinusOne { a: i64 },
    /// `(F_k, F_{k+4}, F_{k+2})`, `k` odd
    Fibonacci { k: u32 },
    /// `(F_k^2, F_{k+2}^2)`, `k` odd
    FibonacciSquares { k: u32 },
    /// `(3, 22)`
    Sporadic3_22,
    /// `(6, 43)`
    Sporadic6_43,
}

fn fibonacci(n: u32) -> i64 {
    let (mut x, mut y) = (0i64, 1i64);
    for _ in 0..n {
        (x, y) = (y, x + y);
    }
    x
}

/// Looks `(a, b, d)` up in the classification table. `None` means no rational
/// unicuspidal curve of this type exists.
///
/// The squared-Fibonacci row is matched on `(a, b)` alone; its degree is then
/// whatever `(a-1)(b-1) = (d-1)(d-2)` forces, namely `F_{k+1}^2 + 1`.
pub fn fdblmhn_family(a: i64, b: i64, d: i64) -> Option<UnicuspidalFamily> {
    if !unicuspidal_torus_check(a, b, d) || a < 2 {
        return None;
    }
    if b == a + 1 && d == a + 1 {
        return Some(UnicuspidalFamily::Consecutive { a });
    }
    if b == 4 * a - 1 && d == 2 * a {
        return Some(UnicuspidalFamily::FourAMinusOne { a });
    }
    // Fibonacci numbers grow fast; k stays below 90 for i64 inputs
    let mut k = 1u32;
    while fibonacci(k) <= a && k < 80 {
        if fibonacci(k) == a && fibonacci(k + 4) == b && fibonacci(k + 2) == d {
            return Some(UnicuspidalFamily::Fibonacci { k });
        }
        k += 2;
    }
    let mut k = 1u32;
    while fibonacci(k).saturating_mul(fibonacci(k)) <= a && k < 40 {
        let (fk, fk2) = (fibonacci(k), fibonacci(k + 2));
        if fk * fk == a && fk2 * fk2 == b {
            return Some(UnicuspidalFamily::FibonacciSquares { k });
        }
        k += 2;
    }
    match (a, b) {
        (3, 22) => Some(UnicuspidalFamily::Sporadic3_22),
        (6, 43) => Some(UnicuspidalFamily::Sporadic6_43),
        _ => None,
    }
}

/// First homology of the complement: `Z^c / (d_1, ..., d_c) Z`.
pub fn complement_h1(curve: &CombinatorialCurve) -> AbelianGroupSpec {
    let relation: Vec<i64> = curve.component_degrees().iter().map(|&d| d as i64).collect();
    smith_invariants(&[relation])
}

/// Euler characteristic of the complement, `3 - chi(C)`, where
/// `chi(C) = sum chi_g - sum_p (beta_p - 1)`.
pub fn complement_euler(curve: &CombinatorialCurve, chi_g_per_component: &[i64]) -> Result<i64> {
    if chi_g_per_component.len() != curve.component_count() {
        return Err(Error::InvalidCurve(format!(
            "{} Euler characteristics for {} components",
            chi_g_per_component.len(),
            curve.component_count()
        )));
    }
    let given: i64 = chi_g_per_component.iter().sum();
    let expected = adjunction_check(curve).total_chi_g;
    if given != expected {
        return Err(Error::InconsistentChi { given, expected });
    }
    let branch_defect: i64 = curve
        .singularities()
        .iter()
        .map(|s| s.branch_count() - 1)
        .sum();
    Ok(3 - (given - branch_defect))
}

/// Partition numbers `p_0..=p_max`, built by allowing parts `1, 2, ...` in turn.
pub fn partition_table(max: usize) -> Vec<BigUint> {
    let mut ways = vec![BigUint::zero(); max + 1];
    ways[0] = BigUint::from(1u32);
    for part in 1..=max {
        for n in part..=max {
            let add = ways[n - part].clone();
            ways[n] += add;
        }
    }
    ways
}

pub fn partition_number(n: usize) -> BigUint {
    partition_table(n).swap_remove(n)
}

/// Number of combinatorial types of degree-`d` curves all of whose
/// singularities are of type `T(2, 2k+1)`: `p_0 + ... + p_g` with `g` the
/// degree genus.
pub fn count_cuspidal_types(d: i64) -> BigUint {
    let g = degree_genus(d).max(0) as usize;
    partition_table(g).into_iter().sum()
}

/// `p_n` divided by `exp(pi sqrt(2n/3)) / (4 n sqrt 3)`. Floating point.
pub fn hardy_ramanujan_ratio(n: usize) -> f64 {
    assert!(n >= 1, "asymptotic is undefined at n = 0");
    let nf = n as f64;
    let p = partition_number(n)
        .to_f64()
        .expect("partition number fits in f64 range");
    let asymptotic =
        (std::f64::consts::PI * (2.0 * nf / 3.0).sqrt()).exp() / (4.0 * nf * 3f64.sqrt());
    p / asymptotic
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> SingularityType {
        text.parse().unwrap()
    }

    fn curve(degrees: Vec<u32>, sings: &[&str]) -> CombinatorialCurve {
        CombinatorialCurve::new(degrees, sings.iter().map(|x| s(x)).collect()).unwrap()
    }

    /// Every partition of `n` as a nonincreasing list of parts.
    fn enumerate_partitions(n: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max_part.min(n)).rev() {
            prefix.push(part);
            enumerate_partitions(n - part, part, prefix, out);
            prefix.pop();
        }
    }

    fn brute_partition_count(n: u32) -> usize {
        let mut out = Vec::new();
        enumerate_partitions(n, n, &mut Vec::new(), &mut out);
        out.len()
    }

    #[test]
    fn genus_table() {
        let got: Vec<i64> = (1..=6).map(degree_genus).collect();
        assert_eq!(got, vec![0, 0, 1, 3, 6, 10]);
    }

    #[test]
    fn adjunction_examples() {
        let v = adjunction_check(&curve(vec![5], &["T(2,3)"; 6]));
        assert_eq!(v.total_chi_g, 2);
        assert!(v.feasible);
        assert_eq!(v.genus(1), Some(0));

        let v = adjunction_check(&curve(vec![6], &["T(2,3)"; 6]));
        assert_eq!(v.total_chi_g, -6);
        assert_eq!(v.genus(1), Some(4));

        let v = adjunction_check(&curve(vec![2], &["T(2,3)"]));
        assert_eq!(v.total_chi_g, 4);
        assert!(!v.feasible);
        assert!(v.reason.contains("4 > 2c = 2"), "{}", v.reason);
    }

    #[test]
    fn adjunction_smooth_sweep() {
        for d in 1..=30u32 {
            let v = adjunction_check(&CombinatorialCurve::smooth(d).unwrap());
            let d = d as i64;
            assert_eq!(v.total_chi_g, 3 * d - d * d);
            assert_eq!(v.total_chi_g, 2 - 2 * degree_genus(d));
            assert!(v.feasible);
        }
    }

    #[test]
    fn adjunction_uses_assignment() {
        // all three points on the conic: 6 - 4 + 2 + 2 + 2 = 8 > 2
        let c = curve(vec![2, 1], &["T(2,3)", "O(2)", "O(2)"])
            .with_assignment(vec![0, 0, 0])
            .unwrap();
        let v = adjunction_check(&c);
        assert_eq!(v.component_bounds[0], (0, 2 + 2 + 2 + 2));
        assert!(!v.feasible);
    }

    #[test]
    fn rational_cuspidal_examples() {
        assert!(rational_cuspidal_check(5, &[s("T(2,3)"); 6]).unwrap().passes());
        let mixed = [vec![s("T(2,3)"); 4], vec![s("T(2,5)")]].concat();
        assert!(rational_cuspidal_check(5, &mixed).unwrap().passes());
        let c = rational_cuspidal_check(4, &[s("T(2,3)")]).unwrap();
        assert_eq!((c.link_genus_sum, c.degree_genus), (1, 3));
        assert!(!c.passes());
        assert!(matches!(
            rational_cuspidal_check(4, &[s("O(2)")]),
            Err(Error::NotRationalCuspidal(_))
        ));
    }

    #[test]
    fn unicuspidal_equation() {
        assert!(unicuspidal_torus_check(2, 3, 3));
        assert!(unicuspidal_torus_check(3, 22, 8));
        assert!(!unicuspidal_torus_check(4, 5, 6));
    }

    #[test]
    fn classification_lookup() {
        assert_eq!(fdblmhn_family(2, 3, 3), Some(UnicuspidalFamily::Consecutive { a: 2 }));
        assert_eq!(fdblmhn_family(2, 13, 5), Some(UnicuspidalFamily::Fibonacci { k: 3 }));
        assert_eq!(fdblmhn_family(5, 34, 13), Some(UnicuspidalFamily::Fibonacci { k: 5 }));
        assert_eq!(fdblmhn_family(6, 43, 16), Some(UnicuspidalFamily::Sporadic6_43));
        assert_eq!(fdblmhn_family(3, 22, 8), Some(UnicuspidalFamily::Sporadic3_22));
        assert_eq!(fdblmhn_family(3, 11, 6), Some(UnicuspidalFamily::FourAMinusOne { a: 3 }));
        assert_eq!(fdblmhn_family(4, 25, 10), Some(UnicuspidalFamily::FibonacciSquares { k: 3 }));
        assert_eq!(fdblmhn_family(25, 169, 65), Some(UnicuspidalFamily::FibonacciSquares { k: 5 }));
        assert_eq!(fdblmhn_family(4, 5, 6), None);
    }

    #[test]
    fn classification_rows_satisfy_the_equation() {
        for a in 2..20 {
            assert!(unicuspidal_torus_check(a, a + 1, a + 1));
            assert!(unicuspidal_torus_check(a, 4 * a - 1, 2 * a));
        }
        for k in (3..15).step_by(2) {
            let (a, b, d) = (fibonacci(k), fibonacci(k + 4), fibonacci(k + 2));
            assert!(unicuspidal_torus_check(a, b, d), "k={k}");
            let f = fibonacci(k + 1);
            let (a2, b2) = (fibonacci(k).pow(2), fibonacci(k + 2).pow(2));
            assert!(unicuspidal_torus_check(a2, b2, f * f + 1), "k={k}");
        }
    }

    #[test]
    fn finiteness_bound() {
        assert_eq!(max_singular_points(2), 1);
        assert_eq!(max_singular_points(7), 21);
        assert_eq!(max_singular_points(1), 0);
    }

    #[test]
    fn complement_homology() {
        assert_eq!(complement_h1(&curve(vec![6], &[])).to_string(), "Z/6");
        assert_eq!(complement_h1(&curve(vec![1, 2], &[])).to_string(), "Z");
        assert_eq!(complement_h1(&curve(vec![2, 2], &[])).to_string(), "Z + Z/2");
        for degrees in [vec![1], vec![3, 6, 9], vec![4, 6], vec![5, 7, 1], vec![2, 2, 2, 2]] {
            let c = degrees.len();
            let h = complement_h1(&curve(degrees, &[]));
            assert_eq!(h.free_rank, c - 1);
            assert!(h.torsion.len() <= 1);
        }
    }

    #[test]
    fn complement_euler_examples() {
        assert_eq!(complement_euler(&curve(vec![1], &[]), &[2]), Ok(1));
        assert_eq!(complement_euler(&curve(vec![6], &[]), &[-18]), Ok(21));
        let six_lines = curve(
            vec![1; 6],
            &[&["O(3)"; 2][..], &["O(2)"; 9][..]].concat(),
        );
        assert_eq!(complement_euler(&six_lines, &[2; 6]), Ok(4));
        assert_eq!(
            complement_euler(&curve(vec![6], &[]), &[2]),
            Err(Error::InconsistentChi { given: 2, expected: -18 })
        );
    }

    #[test]
    fn partitions_match_enumeration() {
        let table = partition_table(20);
        for n in 0..=20u32 {
            assert_eq!(table[n as usize], BigUint::from(brute_partition_count(n)), "p_{n}");
        }
        assert_eq!(partition_number(5), BigUint::from(7u32));
        assert_eq!(partition_number(0), BigUint::from(1u32));
    }

    #[test]
    fn cuspidal_type_counts() {
        let expected: usize = (0..=3).map(brute_partition_count).sum();
        assert_eq!(expected, 7);
        assert_eq!(count_cuspidal_types(4), BigUint::from(7u32));
        let counts: Vec<BigUint> = (3..=12).map(count_cuspidal_types).collect();
        assert!(counts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn asymptotic_ratio() {
        let r200 = hardy_ramanujan_ratio(200);
        assert!(r200 > 0.85 && r200 < 1.0, "{r200}");
        let r50 = hardy_ramanujan_ratio(50);
        assert!(r50 > 0.7 && r50 < 1.0, "{r50}");
        let ratios: Vec<f64> = [50, 100, 200, 400].map(hardy_ramanujan_ratio).to_vec();
        assert!(ratios.windows(2).all(|w| w[0] < w[1] && w[1] < 1.0), "{ratios:?}");
    }
}
