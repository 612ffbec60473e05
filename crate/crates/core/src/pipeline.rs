//! Runs every applicable check on a document and collects the verdicts.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::curve_model::{CombinatorialCurve, LineArrangement};
use crate::error::{Error, Result};
use crate::hurwitz::best_pivot_obstruction;
use crate::input::{parse_document, Document};
use crate::invariants::{
    adjunction_check, complement_euler, complement_h1, degree_genus, fdblmhn_family,
    max_singular_points, rational_cuspidal_check,
};
use crate::lattice::{
    arrangement_proper_transforms, branched_cover_b2_obstruction, kervaire_milnor_check,
    tube_classes,
};
use crate::realize_ff::{is_prime, realize, rigid_construction, MAX_PRIME};
use crate::report::{CheckRecord, ObstructionReport, Verdict, NECESSARY_ONLY};

pub const CURVE_CHECKS: &[&str] = &[
    "adjunction",
    "singular_point_bound",
    "complement_h1",
    "complement_euler",
    "rational_cuspidal",
    "unicuspidal_classification",
    "projection",
];

pub const ARRANGEMENT_CHECKS: &[&str] = &[
    "pair_count",
    "weak_profile",
    "arrangement_euler",
    "complement_h1",
    "adjunction",
    "finite_field",
    "branched_cover_b2",
    "kervaire_milnor",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    /// Restrict to these check names; `None` runs everything.
    pub checks: Option<Vec<String>>,
    pub primes: Vec<u32>,
    pub max_branch_subset: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            checks: None,
            primes: vec![2, 3, 5, 7, 11, 13],
            max_branch_subset: 8,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(&p) = self.primes.iter().find(|&&p| !is_prime(p) || p > MAX_PRIME) {
            return Err(Error::InvalidPrime(p));
        }
        if let Some(names) = &self.checks {
            for name in names {
                if !CURVE_CHECKS.contains(&name.as_str()) && !ARRANGEMENT_CHECKS.contains(&name.as_str())
                {
                    return Err(Error::Parse {
                        line: 0,
                        column: 0,
                        message: format!("unknown check `{name}`"),
                    });
                }
            }
        }
        Ok(())
    }

    fn enabled(&self, name: &str) -> bool {
        self.checks
            .as_ref()
            .is_none_or(|names| names.iter().any(|n| n == name))
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("certificate serializes")
}

pub fn run_pipeline(doc: &Document, config: &PipelineConfig) -> Result<ObstructionReport> {
    config.validate()?;
    let checks = match doc {
        Document::Curve(c) => curve_checks(c, config),
        Document::Arrangement(a) => arrangement_checks(a, config)?,
    };
    Ok(ObstructionReport::new(doc.echo(), checks))
}

fn curve_checks(curve: &CombinatorialCurve, config: &PipelineConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let d = curve.degree();
    let c = curve.component_count();
    let adj = adjunction_check(curve);

    if config.enabled("adjunction") {
        let mut cert = to_value(&adj);
        if let Some(g) = adj.genus(c) {
            cert["genus"] = json!(g);
        }
        let rec = if adj.feasible {
            CheckRecord::new("adjunction", Verdict::Pass, cert).with_caveat(NECESSARY_ONLY)
        } else {
            CheckRecord::new("adjunction", Verdict::Obstructed, cert)
        };
        out.push(rec);
    }

    if config.enabled("singular_point_bound") {
        let count = curve.singularities().len() as i64;
        let bound = max_singular_points(d);
        let cert = json!({"singular_points": count, "bound": bound});
        out.push(if count <= bound {
            CheckRecord::new("singular_point_bound", Verdict::Pass, cert).with_caveat(NECESSARY_ONLY)
        } else {
            CheckRecord::new("singular_point_bound", Verdict::Obstructed, cert)
        });
    }

    if config.enabled("complement_h1") {
        let h1 = complement_h1(curve);
        out.push(CheckRecord::new(
            "complement_h1",
            Verdict::Pass,
            json!({"group": h1.to_string(), "invariants": h1}),
        ));
    }

    if config.enabled("complement_euler") {
        let branch_defect: i64 = curve.singularities().iter().map(|s| s.branch_count() - 1).sum();
        let euler = if c == 1 {
            complement_euler(curve, &[adj.total_chi_g]).ok()
        } else {
            Some(3 - (adj.total_chi_g - branch_defect))
        };
        let cert = json!({
            "sum_chi_g": adj.total_chi_g,
            "branch_defect": branch_defect,
            "euler_characteristic": euler,
        });
        out.push(if adj.feasible {
            CheckRecord::new("complement_euler", Verdict::Pass, cert)
        } else {
            CheckRecord::new("complement_euler", Verdict::Inapplicable, cert)
                .with_caveat("adjunction already fails")
        });
    }

    let cusps_only = curve.singularities().iter().all(|s| s.is_cusp());
    let rational_cuspidal = c == 1
        && cusps_only
        && rational_cuspidal_check(d, curve.singularities()).is_ok_and(|r| r.passes());

    if config.enabled("rational_cuspidal") {
        out.push(if c != 1 || !cusps_only {
            CheckRecord::new(
                "rational_cuspidal",
                Verdict::Inapplicable,
                json!({"reason": "needs an irreducible curve whose singularities are all cusps"}),
            )
        } else {
            let r = rational_cuspidal_check(d, curve.singularities()).expect("cusps have link genus");
            let cert = to_value(&r);
            match r.link_genus_sum.cmp(&r.degree_genus) {
                std::cmp::Ordering::Equal => CheckRecord::new("rational_cuspidal", Verdict::Pass, cert),
                std::cmp::Ordering::Less => CheckRecord::new("rational_cuspidal", Verdict::Inapplicable, cert)
                    .with_caveat("link genera fall short of the degree genus; the curve is not rational"),
                std::cmp::Ordering::Greater => {
                    CheckRecord::new("rational_cuspidal", Verdict::Obstructed, cert)
                }
            }
        });
    }

    if config.enabled("unicuspidal_classification") {
        let sings = curve.singularities();
        out.push(if rational_cuspidal && sings.len() == 1 {
            let s = sings[0];
            let (a, b) = (s.a() as i64, s.b() as i64);
            match fdblmhn_family(a, b, d) {
                Some(family) => CheckRecord::new(
                    "unicuspidal_classification",
                    Verdict::Pass,
                    json!({"a": a, "b": b, "d": d, "family": family}),
                ),
                None => CheckRecord::new(
                    "unicuspidal_classification",
                    Verdict::Obstructed,
                    json!({"a": a, "b": b, "d": d, "family": null}),
                ),
            }
        } else {
            CheckRecord::new(
                "unicuspidal_classification",
                Verdict::Inapplicable,
                json!({"reason": "needs a rational curve with exactly one cusp"}),
            )
        });
    }

    if config.enabled("projection") {
        out.push(if rational_cuspidal {
            match best_pivot_obstruction(d, curve.singularities()) {
                Ok((verdict, cert)) => {
                    let rec = CheckRecord::new("projection", verdict, to_value(&cert));
                    if verdict == Verdict::Pass {
                        rec.with_caveat(NECESSARY_ONLY)
                    } else {
                        rec
                    }
                }
                Err(e) => CheckRecord::new(
                    "projection",
                    Verdict::Inapplicable,
                    json!({"reason": e.to_string()}),
                ),
            }
        } else {
            CheckRecord::new(
                "projection",
                Verdict::Inapplicable,
                json!({"reason": "needs a rational cuspidal curve", "degree_genus": degree_genus(d)}),
            )
        });
    }
    out
}

/// Every subset of `0..n` of size `1..=max`, in order of size then lexicographic.
fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            extend(n, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 1..=max.min(n) {
        extend(n, size, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Cheap parity test: the branch class is even iff the subset has an even
/// number of lines and meets every point in an even number of lines.
fn even_branch(points: &[Vec<usize>], subset: &[usize]) -> bool {
    subset.len() % 2 == 0
        && points
            .iter()
            .all(|p| p.iter().filter(|l| subset.contains(l)).count() % 2 == 0)
}

fn arrangement_checks(arr: &LineArrangement, config: &PipelineConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let as_curve = arr.as_combinatorial_curve();

    if config.enabled("pair_count") {
        let pc = arr.pair_count_check();
        out.push(if pc.passes() {
            CheckRecord::new("pair_count", Verdict::Pass, to_value(&pc)).with_caveat(NECESSARY_ONLY)
        } else {
            CheckRecord::new("pair_count", Verdict::Obstructed, to_value(&pc))
        });
    }

    if config.enabled("weak_profile") {
        let profile: BTreeMap<String, u64> = arr
            .weak_profile()
            .t
            .iter()
            .map(|(m, t)| (format!("t{m}"), *t))
            .collect();
        out.push(CheckRecord::new("weak_profile", Verdict::Pass, json!(profile)));
    }

    if config.enabled("arrangement_euler") {
        let euler = arr.arrangement_euler();
        let adj = adjunction_check(&as_curve);
        let chi: Vec<i64> = vec![2; arr.line_count()];
        let cross_check = complement_euler(&as_curve, &chi).ok();
        let cert = json!({
            "euler_characteristic": euler,
            "complement_euler": cross_check,
            "sum_chi_g": adj.total_chi_g,
        });
        out.push(if cross_check.is_none_or(|x| x == 3 - euler) {
            CheckRecord::new("arrangement_euler", Verdict::Pass, cert)
        } else {
            CheckRecord::new("arrangement_euler", Verdict::Obstructed, cert)
        });
    }

    if config.enabled("complement_h1") {
        let h1 = complement_h1(&as_curve);
        out.push(CheckRecord::new(
            "complement_h1",
            Verdict::Pass,
            json!({"group": h1.to_string(), "invariants": h1}),
        ));
    }

    if config.enabled("adjunction") {
        let adj = adjunction_check(&as_curve);
        out.push(if adj.feasible {
            CheckRecord::new("adjunction", Verdict::Pass, to_value(&adj)).with_caveat(NECESSARY_ONLY)
        } else {
            CheckRecord::new("adjunction", Verdict::Obstructed, to_value(&adj))
        });
    }

    if config.enabled("finite_field") {
        out.push(finite_field_record(arr, &config.primes)?);
    }

    if config.enabled("branched_cover_b2") {
        out.push(branched_cover_record(arr, config.max_branch_subset)?);
    }

    if config.enabled("kervaire_milnor") {
        out.push(match tube_classes(&arrangement_proper_transforms(arr)) {
            Ok(t) => {
                let (verdict, cert) = kervaire_milnor_check(&t);
                let mut value = to_value(&cert);
                value["class"] = json!(t.to_string());
                let rec = CheckRecord::new("kervaire_milnor", verdict, value);
                match verdict {
                    Verdict::Inapplicable => rec.with_caveat("tubed class is not characteristic"),
                    Verdict::Pass => rec.with_caveat(NECESSARY_ONLY),
                    Verdict::Obstructed => rec,
                }
            }
            Err(e) => CheckRecord::new(
                "kervaire_milnor",
                Verdict::Inapplicable,
                json!({"reason": e.to_string()}),
            ),
        });
    }
    Ok(out)
}

fn finite_field_record(arr: &LineArrangement, primes: &[u32]) -> Result<CheckRecord> {
    let mut realizable = Vec::new();
    let mut too_small = Vec::new();
    let mut witnesses = Vec::new();
    for &p in primes {
        match realize(arr, p) {
            Ok(Some(w)) => {
                realizable.push(p);
                witnesses.push(w);
            }
            Ok(None) => {}
            Err(Error::PlaneTooSmall { .. }) => too_small.push(p),
            Err(e) => return Err(e),
        }
    }
    let rigid = rigid_construction(arr);
    let cert = json!({
        "tested": primes,
        "realizable": realizable,
        "plane_too_small": too_small,
        "witnesses": witnesses,
        "rigid": rigid,
    });
    Ok(match &rigid {
        Some(r) if !r.char_zero_realizable => CheckRecord::new("finite_field", Verdict::Obstructed, cert),
        Some(_) => CheckRecord::new("finite_field", Verdict::Pass, cert)
            .with_caveat("forced integer coordinates satisfy every incidence"),
        None if !realizable.is_empty() => CheckRecord::new("finite_field", Verdict::Pass, cert)
            .with_caveat("realizations over prime fields are evidence only"),
        None => CheckRecord::new("finite_field", Verdict::Inapplicable, cert)
            .with_caveat("no realization over the tested prime fields and no rigid construction"),
    })
}

fn branched_cover_record(arr: &LineArrangement, cap: usize) -> Result<CheckRecord> {
    let points = arr.all_points();
    let mut examined = 0usize;
    let mut even = 0usize;
    let mut applicable = 0usize;
    let mut first_pass = None;
    for subset in subsets(arr.line_count(), cap) {
        examined += 1;
        if !even_branch(&points, &subset) {
            continue;
        }
        even += 1;
        let (verdict, cert) = branched_cover_b2_obstruction(arr, &subset)?;
        match verdict {
            Verdict::Obstructed => {
                let value = json!({
                    "max_branch_subset": cap,
                    "subsets_examined": examined,
                    "obstructing": cert,
                });
                return Ok(CheckRecord::new("branched_cover_b2", Verdict::Obstructed, value));
            }
            Verdict::Pass => {
                applicable += 1;
                if first_pass.is_none() {
                    first_pass = Some(cert);
                }
            }
            Verdict::Inapplicable => {}
        }
    }
    let value = json!({
        "max_branch_subset": cap,
        "subsets_examined": examined,
        "even_subsets": even,
        "applicable_subsets": applicable,
        "example": first_pass,
    });
    Ok(if applicable > 0 {
        CheckRecord::new("branched_cover_b2", Verdict::Pass, value).with_caveat(NECESSARY_ONLY)
    } else {
        CheckRecord::new("branched_cover_b2", Verdict::Inapplicable, value)
    })
}

/// Outcome for one file of a batch.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchItem {
    pub path: PathBuf,
    pub result: Result<ObstructionReport>,
}

pub fn run_file(path: &Path, config: &PipelineConfig) -> Result<ObstructionReport> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    run_pipeline(&parse_document(&text)?, config)
}

/// Runs every file on a pool of `jobs` threads. Results keep input order.
pub fn batch(paths: &[PathBuf], config: &PipelineConfig, jobs: usize) -> Vec<BatchItem> {
    let work = || {
        paths
            .par_iter()
            .map(|path| BatchItem {
                path: path.clone(),
                result: run_file(path, config),
            })
            .collect()
    };
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    }
}
