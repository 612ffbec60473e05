//! Exhaustive search for realizations of a line arrangement in the
//! projective plane over a prime field.
//!
//! A realization assigns distinct lines of `PG(2,p)` to the arrangement's
//! lines so that three or more of them are concurrent exactly when the
//! arrangement says so. Since `PGL(3,p)` acts transitively on ordered
//! quadruples of lines with no three concurrent, up to four lines in general
//! position are pinned to `x=0, y=0, z=0, x+y+z=0` before backtracking.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::curve_model::LineArrangement;
use crate::error::{Error, Result};

/// Largest field characteristic accepted by [`realize`].
pub const MAX_PRIME: u32 = 97;

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

/// Homogeneous coordinates normalized so the first nonzero entry is 1.
pub type Triple = [u32; 3];

/// `PG(2,p)`. Points and lines share the same coordinate set; a point lies on
/// a line when their dot product vanishes.
#[derive(Debug, Clone)]
pub struct ProjectivePlane {
    p: u32,
    elements: Vec<Triple>,
}

impl ProjectivePlane {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::InvalidPrime(p));
        }
        let mut elements = Vec::with_capacity((p * p + p + 1) as usize);
        for y in 0..p {
            for z in 0..p {
                elements.push([1, y, z]);
            }
        }
        for z in 0..p {
            elements.push([0, 1, z]);
        }
        elements.push([0, 0, 1]);
        Ok(Self { p, elements })
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// All points (equivalently, all lines), indexed consistently with
    /// [`ProjectivePlane::index_of`].
    pub fn elements(&self) -> &[Triple] {
        &self.elements
    }

    pub fn normalize(&self, v: [u64; 3]) -> Option<Triple> {
        let p = self.p as u64;
        let v = v.map(|x| x % p);
        let lead = *v.iter().find(|&&x| x != 0)?;
        let inv = mod_pow(lead, p - 2, p);
        Some(v.map(|x| (x * inv % p) as u32))
    }

    pub fn index_of(&self, t: Triple) -> usize {
        let p = self.p as usize;
        match t {
            [1, y, z] => y as usize * p + z as usize,
            [0, 1, z] => p * p + z as usize,
            _ => p * p + p,
        }
    }

    pub fn incident(&self, point: usize, line: usize) -> bool {
        let (a, b) = (self.elements[point], self.elements[line]);
        let dot: u64 = a.iter().zip(&b).map(|(&x, &y)| x as u64 * y as u64).sum();
        dot % self.p as u64 == 0
    }

    /// Index of the point where two distinct lines meet.
    pub fn meet(&self, l1: usize, l2: usize) -> usize {
        let (a, b) = (self.elements[l1], self.elements[l2]);
        let p = self.p as u64;
        let (a, b) = (a.map(|x| x as u64), b.map(|x| x as u64));
        let cross = [
            (a[1] * b[2] + p * p - a[2] * b[1]) % p,
            (a[2] * b[0] + p * p - a[0] * b[2]) % p,
            (a[0] * b[1] + p * p - a[1] * b[0]) % p,
        ];
        self.index_of(self.normalize(cross).expect("distinct lines meet in a point"))
    }
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// A realization over `F_p`: the plane line assigned to each arrangement line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Realization {
    pub p: u32,
    pub lines: Vec<Triple>,
}

/// No three of `lines` are concurrent in the arrangement.
fn general_position(arr: &LineArrangement, lines: &[usize]) -> bool {
    for (x, &i) in lines.iter().enumerate() {
        for (y, &j) in lines.iter().enumerate().skip(x + 1) {
            for &k in &lines[y + 1..] {
                if arr.concurrent(i, j, k) {
                    return false;
                }
            }
        }
    }
    true
}

/// Largest set (up to four) of arrangement lines with no three concurrent,
/// lexicographically first among those of that size.
fn choose_frame(arr: &LineArrangement) -> Vec<usize> {
    let d = arr.line_count();
    let target = d.min(4);
    for size in (1..=target).rev() {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            if general_position(arr, &combo) {
                return combo;
            }
            // next combination
            let mut i = size;
            while i > 0 && combo[i - 1] == d - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    Vec::new()
}

const STANDARD_FRAME: [Triple; 4] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]];

struct Search<'a> {
    arr: &'a LineArrangement,
    plane: &'a ProjectivePlane,
    order: Vec<usize>,
    image: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl Search<'_> {
    /// Can arrangement line `k` go to plane line `target` given the lines
    /// already placed?
    fn fits(&self, k: usize, target: usize, placed: &[usize]) -> bool {
        for (x, &i) in placed.iter().enumerate() {
            let li = self.image[i].expect("placed");
            let meet = self.plane.meet(li, target);
            for &j in &placed[x + 1..] {
                let lj = self.image[j].expect("placed");
                let through = self.plane.incident(meet, lj);
                if through != self.arr.concurrent(i, k, j) {
                    return false;
                }
            }
        }
        true
    }

    fn place(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let k = self.order[depth];
        let placed: Vec<usize> = self.order[..depth].to_vec();
        if let Some(target) = self.image[k] {
            // pinned frame line
            return self.fits(k, target, &placed) && self.place(depth + 1);
        }
        for target in 0..self.plane.len() {
            if self.used[target] || !self.fits(k, target, &placed) {
                continue;
            }
            self.used[target] = true;
            self.image[k] = Some(target);
            if self.place(depth + 1) {
                return true;
            }
            self.image[k] = None;
            self.used[target] = false;
        }
        false
    }
}

/// Finds a realization of `arr` over `F_p`, or `None` if there is none.
pub fn realize(arr: &LineArrangement, p: u32) -> Result<Option<Realization>> {
    let plane = ProjectivePlane::new(p)?;
    realize_in(arr, &plane)
}

pub fn realize_in(arr: &LineArrangement, plane: &ProjectivePlane) -> Result<Option<Realization>> {
    let d = arr.line_count();
    if d > plane.len() {
        return Err(Error::PlaneTooSmall {
            lines: d,
            p: plane.order(),
            available: plane.len(),
        });
    }
    let frame = choose_frame(arr);
    let mut image = vec![None; d];
    let mut used = vec![false; plane.len()];
    for (&line, &target) in frame.iter().zip(&STANDARD_FRAME) {
        let idx = plane.index_of(target);
        image[line] = Some(idx);
        used[idx] = true;
    }
    let mut order = frame.clone();
    // place lines that share many points with the frame first
    let mut rest: Vec<usize> = (0..d).filter(|l| !frame.contains(l)).collect();
    rest.sort_by_key(|&l| std::cmp::Reverse(arr.line_signature(l).iter().filter(|&&m| m > 2).count()));
    order.extend(rest);

    let mut search = Search {
        arr,
        plane,
        order,
        image,
        used,
    };
    if !search.place(0) {
        return Ok(None);
    }
    let lines = search
        .image
        .iter()
        .map(|i| plane.elements()[i.expect("complete")])
        .collect();
    Ok(Some(Realization {
        p: plane.order(),
        lines,
    }))
}

/// Checks a claimed realization independently of the search: listed points
/// are concurrent, and no other crossing lies on a third line.
pub fn verify_realization(arr: &LineArrangement, r: &Realization) -> bool {
    let Ok(plane) = ProjectivePlane::new(r.p) else {
        return false;
    };
    let d = arr.line_count();
    if r.lines.len() != d {
        return false;
    }
    let idx: Vec<usize> = r.lines.iter().map(|&t| plane.index_of(t)).collect();
    if r.lines.iter().zip(&idx).any(|(&t, &i)| plane.elements()[i] != t) {
        return false;
    }
    let mut distinct = idx.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != d {
        return false;
    }
    for i in 0..d {
        for j in i + 1..d {
            let pt = plane.meet(idx[i], idx[j]);
            let mut through: Vec<usize> = (0..d).filter(|&k| plane.incident(pt, idx[k])).collect();
            through.sort_unstable();
            let expected = match arr.meeting_point(i, j) {
                Some(point) => arr.listed_points()[point].clone(),
                None => vec![i, j],
            };
            if through != expected {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeSurvey {
    pub tested: Vec<u32>,
    pub realizable: Vec<u32>,
    pub witnesses: Vec<Realization>,
}

/// Runs [`realize`] for each prime, keeping one witness per success.
pub fn realizable_primes(arr: &LineArrangement, primes: &[u32]) -> Result<PrimeSurvey> {
    let mut survey = PrimeSurvey {
        tested: primes.to_vec(),
        realizable: Vec::new(),
        witnesses: Vec::new(),
    };
    for &p in primes {
        if let Some(w) = realize(arr, p)? {
            survey.realizable.push(p);
            survey.witnesses.push(w);
        }
    }
    Ok(survey)
}

type Vec3 = [BigInt; 3];

fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &Vec3, b: &Vec3) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn primitive(v: Vec3) -> Vec3 {
    let g = v[0].gcd(&v[1]).gcd(&v[2]);
    if g.is_zero() {
        return v;
    }
    let sign = v.iter().find(|x| !x.is_zero()).map_or(1, |x| if x.is_negative() { -1 } else { 1 });
    let g = g * sign;
    v.map(|x| x / &g)
}

fn show(v: &Vec3) -> String {
    format!("[{}:{}:{}]", v[0], v[1], v[2])
}

/// One forced line: the join of two already constructed points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionStep {
    /// One-based labels.
    pub line: usize,
    pub through: [Vec<usize>; 2],
    pub coordinates: String,
}

/// A condition of the arrangement that the constructed lines violate over
/// the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidViolation {
    /// One-based labels of the lines involved.
    pub lines: Vec<usize>,
    pub expected: String,
    /// `det` of the three lines (or the gcd of the cross product for a pair).
    pub value: String,
}

/// Integer coordinates for every line, derived from a pinned frame by
/// joins of forced intersection points, and the incidence conditions they
/// break. Coordinates over `Q` are forced up to projective equivalence, so
/// any violation rules out realizations over every field of characteristic 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidCertificate {
    pub frame: Vec<usize>,
    pub steps: Vec<ConstructionStep>,
    pub lines: Vec<String>,
    pub violations: Vec<RigidViolation>,
    pub char_zero_realizable: bool,
    /// Primes dividing every violated determinant, when all violations are
    /// of the form "should vanish but does not". Empty means no field works.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub possible_characteristics: Option<Vec<u64>>,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Builds the arrangement over `Z` from a frame of four lines in general
/// position, when every other line is forced through two constructed points.
/// Returns `None` when the arrangement is not rigid in this sense.
pub fn rigid_construction(arr: &LineArrangement) -> Option<RigidCertificate> {
    let d = arr.line_count();
    let frame = choose_frame(arr);
    if frame.len() < d.min(4) {
        return None;
    }
    let mut coords: Vec<Option<Vec3>> = vec![None; d];
    for (&line, target) in frame.iter().zip(&STANDARD_FRAME) {
        coords[line] = Some(target.map(BigInt::from));
    }
    let mut steps = Vec::new();
    let mut violations = Vec::new();
    loop {
        let mut progress = false;
        for k in 0..d {
            if coords[k].is_some() {
                continue;
            }
            // listed points on k already pinned by two constructed lines
            let known: Vec<(Vec<usize>, Vec3)> = arr
                .listed_points()
                .iter()
                .filter(|p| p.contains(&k))
                .filter_map(|p| {
                    let built: Vec<usize> =
                        p.iter().copied().filter(|&l| coords[l].is_some()).collect();
                    (built.len() >= 2).then(|| {
                        let pt = cross(
                            coords[built[0]].as_ref().unwrap(),
                            coords[built[1]].as_ref().unwrap(),
                        );
                        (built, pt)
                    })
                })
                .collect();
            if known.len() < 2 {
                continue;
            }
            let line = primitive(cross(&known[0].1, &known[1].1));
            if line.iter().all(Zero::is_zero) {
                // two points that should differ coincide over every field
                violations.push(RigidViolation {
                    lines: [known[0].0.clone(), known[1].0.clone()]
                        .concat()
                        .iter()
                        .map(|l| l + 1)
                        .collect(),
                    expected: format!("distinct points on line {}", k + 1),
                    value: "0".into(),
                });
                return Some(RigidCertificate {
                    frame: frame.iter().map(|l| l + 1).collect(),
                    steps,
                    lines: Vec::new(),
                    violations,
                    char_zero_realizable: false,
                    possible_characteristics: Some(Vec::new()),
                });
            }
            steps.push(ConstructionStep {
                line: k + 1,
                through: [
                    known[0].0.iter().map(|l| l + 1).collect(),
                    known[1].0.iter().map(|l| l + 1).collect(),
                ],
                coordinates: show(&line),
            });
            coords[k] = Some(line);
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let coords: Vec<Vec3> = coords.into_iter().collect::<Option<_>>()?;

    let mut must_vanish_gcd = BigInt::zero();
    let mut impossible = false;
    for i in 0..d {
        for j in i + 1..d {
            let c = cross(&coords[i], &coords[j]);
            if c.iter().all(Zero::is_zero) {
                impossible = true;
                violations.push(RigidViolation {
                    lines: vec![i + 1, j + 1],
                    expected: "distinct lines".into(),
                    value: "0".into(),
                });
                continue;
            }
            for k in j + 1..d {
                let det = dot(&c, &coords[k]);
                let concurrent = arr.concurrent(i, j, k);
                if concurrent && !det.is_zero() {
                    must_vanish_gcd = must_vanish_gcd.gcd(&det);
                    violations.push(RigidViolation {
                        lines: vec![i + 1, j + 1, k + 1],
                        expected: "concurrent".into(),
                        value: det.to_string(),
                    });
                } else if !concurrent && det.is_zero() {
                    impossible = true;
                    violations.push(RigidViolation {
                        lines: vec![i + 1, j + 1, k + 1],
                        expected: "not concurrent".into(),
                        value: "0".into(),
                    });
                }
            }
        }
    }
    let possible_characteristics = if impossible {
        Some(Vec::new())
    } else if violations.is_empty() {
        None
    } else {
        must_vanish_gcd.abs().to_u64().map(prime_factors)
    };
    Some(RigidCertificate {
        frame: frame.iter().map(|l| l + 1).collect(),
        steps,
        lines: coords.iter().map(show).collect(),
        char_zero_realizable: violations.is_empty(),
        violations,
        possible_characteristics,
    })
}
