//! Second homology of `CP^2 # n(-CP^2)` with its diagonal form `(1, -1, ..., -1)`,
//! proper transforms of lines, and the two lattice obstructions to line
//! arrangements: the Kervaire-Milnor congruence for characteristic spheres
//! and the Betti number count in a double branched cover.

use std::fmt;

use serde::Serialize;

use crate::curve_model::LineArrangement;
use crate::error::{Error, Result};
use crate::report::Verdict;
use crate::smith::{smith_invariants, transpose, AbelianGroupSpec};

/// `CP^2` blown up at `n` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlowupLattice {
    pub n: usize,
}

impl BlowupLattice {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn signature(&self) -> i64 {
        1 - self.n as i64
    }

    pub fn euler_characteristic(&self) -> i64 {
        3 + self.n as i64
    }

    pub fn zero(&self) -> LatticeClass {
        LatticeClass::new(0, vec![0; self.n])
    }

    pub fn line(&self) -> LatticeClass {
        LatticeClass::new(1, vec![0; self.n])
    }

    /// The exceptional class `e_i` (zero-based).
    pub fn exceptional(&self, i: usize) -> LatticeClass {
        let mut m = vec![0; self.n];
        m[i] = -1;
        LatticeClass::new(0, m)
    }
}

/// The class `d h - sum m_i e_i`. Curve multiplicities are stored positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LatticeClass {
    pub d: i64,
    pub m: Vec<i64>,
}

impl LatticeClass {
    pub fn new(d: i64, m: Vec<i64>) -> Self {
        Self { d, m }
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    /// Coordinates in the basis `h, e_1, ..., e_n`.
    pub fn coordinates(&self) -> Vec<i64> {
        std::iter::once(self.d)
            .chain(self.m.iter().map(|&x| -x))
            .collect()
    }

    pub fn square(&self) -> i64 {
        self.d * self.d - self.m.iter().map(|x| x * x).sum::<i64>()
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self::new(k * self.d, self.m.iter().map(|x| k * x).collect())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_rank(self, other)?;
        Ok(Self::new(
            self.d + other.d,
            self.m.iter().zip(&other.m).map(|(a, b)| a + b).collect(),
        ))
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}h", self.d)?;
        for (i, &mi) in self.m.iter().enumerate() {
            match mi {
                0 => {}
                1 => write!(f, " - e{}", i + 1)?,
                -1 => write!(f, " + e{}", i + 1)?,
                x if x > 0 => write!(f, " - {x}e{}", i + 1)?,
                x => write!(f, " + {}e{}", -x, i + 1)?,
            }
        }
        Ok(())
    }
}

fn same_rank(x: &LatticeClass, y: &LatticeClass) -> Result<()> {
    if x.rank() != y.rank() {
        return Err(Error::DimensionMismatch {
            left: x.rank(),
            right: y.rank(),
        });
    }
    Ok(())
}

pub fn intersect(x: &LatticeClass, y: &LatticeClass) -> Result<i64> {
    same_rank(x, y)?;
    Ok(x.d * y.d - x.m.iter().zip(&y.m).map(|(a, b)| a * b).sum::<i64>())
}

/// Class of the proper transform of a degree-`d` curve with the given
/// multiplicity at each blown-up point.
pub fn proper_transform(d: i64, mults: &[i64]) -> LatticeClass {
    LatticeClass::new(d, mults.to_vec())
}

/// For the diagonal odd form, `T` is characteristic iff every coordinate is odd.
pub fn is_characteristic(t: &LatticeClass) -> bool {
    t.d % 2 != 0 && t.m.iter().all(|x| x % 2 != 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KervaireMilnorCertificate {
    pub square: i64,
    pub signature: i64,
    pub square_mod16: i64,
    pub signature_mod16: i64,
}

/// A characteristic class carried by a smoothly embedded sphere satisfies
/// `T.T = sigma (mod 16)`. Non-characteristic classes are inapplicable.
pub fn kervaire_milnor_check(t: &LatticeClass) -> (Verdict, KervaireMilnorCertificate) {
    let square = t.square();
    let signature = BlowupLattice::new(t.rank()).signature();
    let cert = KervaireMilnorCertificate {
        square,
        signature,
        square_mod16: square.rem_euclid(16),
        signature_mod16: signature.rem_euclid(16),
    };
    let verdict = if !is_characteristic(t) {
        Verdict::Inapplicable
    } else if cert.square_mod16 != cert.signature_mod16 {
        Verdict::Obstructed
    } else {
        Verdict::Pass
    };
    (verdict, cert)
}

/// Class of the sphere obtained by tubing disjoint spheres together.
pub fn tube_classes(classes: &[LatticeClass]) -> Result<LatticeClass> {
    let first = classes.first().ok_or_else(|| {
        Error::InvalidArrangement("nothing to tube together".into())
    })?;
    classes[1..]
        .iter()
        .try_fold(first.clone(), |acc, c| acc.checked_add(c))
}

pub fn divisible_by_two(x: &LatticeClass) -> bool {
    x.d % 2 == 0 && x.m.iter().all(|v| v % 2 == 0)
}

/// `chi(X) = 2 chi(Y) - chi(B)` for a double cover of `Y` branched over `B`.
pub fn double_cover_euler(chi_base: i64, chi_branch: i64) -> i64 {
    2 * chi_base - chi_branch
}

/// How a sphere downstairs sits relative to the branch locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftRelation {
    InBranch,
    Disjoint,
    Transverse,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftDescription {
    /// Self-intersection of each lifted surface.
    pub squares: Vec<i64>,
    pub connected: bool,
}

/// Lifts of a surface of class `f` to the double cover branched over `branch`.
///
/// A branch component lifts isomorphically with half the square (its
/// pullback is twice the lift). A surface missing the branch locus has two
/// disjoint lifts. A transverse surface has a single preimage whose square
/// doubles.
pub fn lift_square(
    f: &LatticeClass,
    relation: LiftRelation,
    branch: &LatticeClass,
) -> Result<LiftDescription> {
    let sq = f.square();
    let meet = intersect(f, branch)?;
    match relation {
        LiftRelation::InBranch => {
            if sq % 2 != 0 {
                return Err(Error::InvalidLift(format!(
                    "branch component {f} has odd square {sq}"
                )));
            }
            Ok(LiftDescription {
                squares: vec![sq / 2],
                connected: true,
            })
        }
        LiftRelation::Disjoint => {
            if meet != 0 {
                return Err(Error::InvalidLift(format!(
                    "{f} meets the branch locus algebraically {meet} times"
                )));
            }
            Ok(LiftDescription {
                squares: vec![sq, sq],
                connected: false,
            })
        }
        LiftRelation::Transverse => {
            if meet < 0 {
                return Err(Error::InvalidLift(format!(
                    "{f} has negative intersection {meet} with the branch locus"
                )));
            }
            Ok(LiftDescription {
                squares: vec![2 * sq],
                connected: meet > 0,
            })
        }
    }
}

/// One row of the lifted-class table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftRow {
    /// One-based line label.
    pub line: usize,
    pub class: String,
    pub relation: LiftRelation,
    pub square: i64,
    pub lift_squares: Vec<i64>,
}

/// Every integer computed by [`branched_cover_b2_obstruction`]. Fields after
/// the first failed hypothesis are left empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchedCoverCertificate {
    /// One-based labels of the branch lines.
    pub branch_lines: Vec<usize>,
    pub blown_up_points: usize,
    pub chi_base: i64,
    pub branch_class: String,
    pub branch_class_divisible: bool,
    /// Rows: branch components; columns: `h, e_1, ..., e_n`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inclusion_matrix: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complement_h1: Option<AbelianGroupSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_branch: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_cover: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b2_cover: Option<i64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lifts: Vec<LiftRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disjoint_negative_classes: Option<i64>,
    /// Square of the preimage of a generic line.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generic_line_lift_square: Option<i64>,
    pub reason: String,
}

/// Proper transforms of all lines after blowing up every point of the
/// arrangement, in the order of [`LineArrangement::all_points`].
pub fn arrangement_proper_transforms(arr: &LineArrangement) -> Vec<LatticeClass> {
    let points = arr.all_points();
    (0..arr.line_count())
        .map(|line| {
            let mults: Vec<i64> = points
                .iter()
                .map(|p| i64::from(p.contains(&line)))
                .collect();
            proper_transform(1, &mults)
        })
        .collect()
}

/// Blow up every point of `arr`, take the double cover branched over the
/// proper transforms of `branch` (zero-based lines), and compare the forced
/// negative definite part with `b_2` of the cover.
///
/// Applicability: the branch class is divisible by two and `H_1` of the
/// complement of the branch locus is finite cyclic, so `b_1` of the cover
/// vanishes.
pub fn branched_cover_b2_obstruction(
    arr: &LineArrangement,
    branch: &[usize],
) -> Result<(Verdict, BranchedCoverCertificate)> {
    let mut branch = branch.to_vec();
    branch.sort_unstable();
    branch.dedup();
    if let Some(&bad) = branch.iter().find(|&&l| l >= arr.line_count()) {
        return Err(Error::InvalidArrangement(format!(
            "branch line {} out of range",
            bad + 1
        )));
    }
    let transforms = arrangement_proper_transforms(arr);
    let lattice = BlowupLattice::new(arr.all_points().len());
    let branch_classes: Vec<LatticeClass> =
        branch.iter().map(|&l| transforms[l].clone()).collect();
    let branch_class = tube_classes(&branch_classes).unwrap_or_else(|_| lattice.zero());

    let mut cert = BranchedCoverCertificate {
        branch_lines: branch.iter().map(|l| l + 1).collect(),
        blown_up_points: lattice.n,
        chi_base: lattice.euler_characteristic(),
        branch_class: branch_class.to_string(),
        branch_class_divisible: divisible_by_two(&branch_class),
        inclusion_matrix: None,
        complement_h1: None,
        chi_branch: None,
        chi_cover: None,
        b2_cover: None,
        lifts: Vec::new(),
        disjoint_negative_classes: None,
        generic_line_lift_square: None,
        reason: String::new(),
    };

    if branch.is_empty() {
        cert.reason = "empty branch locus".into();
        return Ok((Verdict::Inapplicable, cert));
    }
    if !cert.branch_class_divisible {
        cert.reason = format!("branch class {branch_class} is not divisible by 2");
        return Ok((Verdict::Inapplicable, cert));
    }

    // H_1(Y \ B) is the cokernel of H^2(Y) -> H^2(B), the transpose of the
    // inclusion H_2(B) -> H_2(Y).
    let inclusion: Vec<Vec<i64>> = branch_classes.iter().map(LatticeClass::coordinates).collect();
    let h1 = smith_invariants(&transpose(&inclusion));
    cert.inclusion_matrix = Some(inclusion);
    cert.complement_h1 = Some(h1.clone());
    if !h1.is_finite_cyclic() {
        cert.reason = format!("H_1 of the branch complement is {h1}, not finite cyclic");
        return Ok((Verdict::Inapplicable, cert));
    }

    // all proper transforms are disjoint spheres once every point is blown up
    let chi_branch = 2 * branch.len() as i64;
    let chi_cover = double_cover_euler(lattice.euler_characteristic(), chi_branch);
    let b2 = chi_cover - 2;
    cert.chi_branch = Some(chi_branch);
    cert.chi_cover = Some(chi_cover);
    cert.b2_cover = Some(b2);

    let mut negatives = 0;
    for (line, f) in transforms.iter().enumerate() {
        let relation = if branch.binary_search(&line).is_ok() {
            LiftRelation::InBranch
        } else {
            LiftRelation::Disjoint
        };
        let lift = match lift_square(f, relation, &branch_class) {
            Ok(lift) => lift,
            Err(e) => {
                cert.reason = e.to_string();
                return Ok((Verdict::Inapplicable, cert));
            }
        };
        negatives += lift.squares.iter().filter(|&&s| s < 0).count() as i64;
        cert.lifts.push(LiftRow {
            line: line + 1,
            class: f.to_string(),
            relation,
            square: f.square(),
            lift_squares: lift.squares,
        });
    }
    cert.disjoint_negative_classes = Some(negatives);

    let generic = lift_square(&lattice.line(), LiftRelation::Transverse, &branch_class)?;
    let positive = generic.connected && generic.squares[0] > 0;
    cert.generic_line_lift_square = Some(generic.squares[0]);

    if positive && negatives >= b2 {
        cert.reason = format!(
            "{negatives} pairwise orthogonal negative classes fill b2 = {b2}, \
             yet a generic line lifts to a class of square {}",
            generic.squares[0]
        );
        Ok((Verdict::Obstructed, cert))
    } else {
        cert.reason = format!("{negatives} negative classes < b2 = {b2}");
        Ok((Verdict::Pass, cert))
    }
}
