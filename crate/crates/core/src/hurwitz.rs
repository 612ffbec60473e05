//! Riemann-Hurwitz counts for branched covers of surfaces, and the
//! projection obstruction for rational cuspidal curves.
//!
//! Projecting a rational cuspidal curve of degree `d` from one of its cusps
//! `q` gives a map `CP^1 -> CP^1` of degree `d - mult(q)` (assuming it extends
//! over the preimage of `q`). The lines through `q` and another cusp `p` force
//! ramification, and Hurwitz caps the total at `2 deg - 2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::rational_cuspidal_check;
use crate::report::Verdict;
use crate::singularities::SingularityType;

/// Ramification data of a branched cover of surfaces: one entry per point
/// upstairs, each `e_p(x) - 1` (or a lower bound for it when not exact).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamificationProfile {
    pub degree: i64,
    pub contributions: Vec<i64>,
    pub exact: bool,
}

impl RamificationProfile {
    pub fn new(degree: i64, contributions: Vec<i64>, exact: bool) -> Result<Self> {
        if degree < 1 {
            return Err(Error::DegenerateProjection(degree));
        }
        if let Some(bad) = contributions.iter().find(|&&c| c < 1 || c > degree - 1) {
            return Err(Error::InvalidCurve(format!(
                "ramification contribution {bad} outside 1..={}",
                degree - 1
            )));
        }
        Ok(Self {
            degree,
            contributions,
            exact,
        })
    }

    pub fn total(&self) -> i64 {
        self.contributions.iter().sum()
    }

    pub fn euler_of_cover(&self, chi_base: i64) -> i64 {
        hurwitz_euler(self.degree, chi_base, &self.contributions)
    }
}

/// `chi(X) = deg chi(Y) - sum_x (e_p(x) - 1)`.
pub fn hurwitz_euler(degree: i64, chi_base: i64, contributions: &[i64]) -> i64 {
    degree * chi_base - contributions.iter().sum::<i64>()
}

/// Total ramification of a degree-`deg` map from the sphere to the sphere.
pub fn rational_cover_slack(degree: i64) -> i64 {
    2 * degree - 2
}

/// Smooth degree-`d` curve via projection of the Fermat curve
/// `x^d + y^d + z^d = 0` from `[0:0:1]`: `d` points of index `d`.
pub fn fermat_projection_euler(d: i64) -> i64 {
    hurwitz_euler(d, 2, &vec![d - 1; d.max(0) as usize])
}

/// Smooth degree-`d` curve via projection from a generic point: `d(d-1)`
/// simple tangent lines.
pub fn tangent_line_euler(d: i64) -> i64 {
    hurwitz_euler(d, 2, &vec![1; (d * (d - 1)).max(0) as usize])
}

/// Smooth degree-`d` curve by smoothing `d` generic lines: `d` spheres, and
/// each of the `C(d,2)` double points trades two discs for an annulus.
pub fn deformation_euler(d: i64) -> i64 {
    2 * d - 2 * (d * (d - 1) / 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcedContribution {
    pub index: usize,
    pub singularity: String,
    pub lower_bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionCertificate {
    pub pivot_index: usize,
    pub pivot: String,
    pub cover_degree: i64,
    pub slack: i64,
    /// `max(b - a - 1, 0)` from the local parametrization `t -> (t^a, t^b)`.
    pub pivot_parametrization_bound: i64,
    /// The pivot bound actually used: the parametrization bound capped at 1.
    pub pivot_bound: i64,
    pub contributions: Vec<ForcedContribution>,
    pub forced_ramification: i64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ProjectionCertificate {
    pub fn obstructed(&self) -> bool {
        self.forced_ramification > self.slack
    }

    pub fn verdict(&self) -> Verdict {
        if self.obstructed() {
            Verdict::Obstructed
        } else {
            Verdict::Pass
        }
    }
}

/// Lower bound on the ramification of the projection from `cusps[pivot]`,
/// without checking that the configuration is rational cuspidal.
pub fn forced_ramification(
    d: i64,
    cusps: &[SingularityType],
    pivot: usize,
) -> Result<ProjectionCertificate> {
    let q = cusps.get(pivot).ok_or_else(|| {
        Error::InvalidCurve(format!("pivot {pivot} out of range for {} cusps", cusps.len()))
    })?;
    let cover_degree = d - q.multiplicity();
    if cover_degree < 1 {
        return Err(Error::DegenerateProjection(cover_degree));
    }
    let gap = q.b() as i64 - q.a() as i64;
    let pivot_parametrization_bound = (gap - 1).max(0);
    let pivot_bound = pivot_parametrization_bound.min(1);

    let mut warnings = Vec::new();
    let contributions: Vec<ForcedContribution> = cusps
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pivot)
        .map(|(index, p)| {
            let lower_bound = p.multiplicity() - p.branch_count();
            if p.multiplicity() > cover_degree {
                warnings.push(format!(
                    "{p} (#{}) has multiplicity {} > cover degree {cover_degree}",
                    index + 1,
                    p.multiplicity()
                ));
            }
            if lower_bound > cover_degree - 1 {
                warnings.push(format!(
                    "{p} (#{}) alone needs ramification {lower_bound} > {} in one fibre",
                    index + 1,
                    cover_degree - 1
                ));
            }
            ForcedContribution {
                index,
                singularity: p.to_string(),
                lower_bound,
            }
        })
        .collect();
    let forced = pivot_bound + contributions.iter().map(|c| c.lower_bound).sum::<i64>();

    Ok(ProjectionCertificate {
        pivot_index: pivot,
        pivot: q.to_string(),
        cover_degree,
        slack: rational_cover_slack(cover_degree),
        pivot_parametrization_bound,
        pivot_bound,
        contributions,
        forced_ramification: forced,
        warnings,
    })
}

fn require_rational_cuspidal(d: i64, cusps: &[SingularityType]) -> Result<()> {
    let check = rational_cuspidal_check(d, cusps)?;
    if !check.passes() {
        return Err(Error::NotRationalCuspidal(format!(
            "link genera sum to {} but degree {d} has genus {}",
            check.link_genus_sum, check.degree_genus
        )));
    }
    Ok(())
}

/// Projection from `cusps[pivot]`: obstructed when the forced ramification
/// exceeds what a rational cover of that degree can carry.
pub fn projection_obstruction(
    d: i64,
    cusps: &[SingularityType],
    pivot: usize,
) -> Result<(Verdict, ProjectionCertificate)> {
    require_rational_cuspidal(d, cusps)?;
    let cert = forced_ramification(d, cusps, pivot)?;
    Ok((cert.verdict(), cert))
}

/// Tries every cusp as the pivot. Returns the certificate with the largest
/// excess of forced ramification over slack (lowest index on ties).
pub fn best_pivot_obstruction(
    d: i64,
    cusps: &[SingularityType],
) -> Result<(Verdict, ProjectionCertificate)> {
    require_rational_cuspidal(d, cusps)?;
    if cusps.is_empty() {
        return Err(Error::NotRationalCuspidal("no cusp to project from".into()));
    }
    let mut best: Option<ProjectionCertificate> = None;
    for pivot in 0..cusps.len() {
        let cert = match forced_ramification(d, cusps, pivot) {
            Ok(cert) => cert,
            Err(Error::DegenerateProjection(_)) => continue,
            Err(e) => return Err(e),
        };
        let excess = cert.forced_ramification - cert.slack;
        if best
            .as_ref()
            .is_none_or(|b| excess > b.forced_ramification - b.slack)
        {
            best = Some(cert);
        }
    }
    let cert = best.ok_or_else(|| {
        Error::DegenerateProjection(d - cusps.iter().map(|c| c.multiplicity()).min().unwrap_or(0))
    })?;
    Ok((cert.verdict(), cert))
}
