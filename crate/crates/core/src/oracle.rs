//! Brute-force verification: grid search for idempotents, seeded axiom
//! checks and differential tests against closed-form product formulas.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{idempotents, IdempotentSet};
use crate::cones::Face;
use crate::error::{Error, Result};
use crate::exec::{map_indices, map_slice, Execution};
use crate::monoid::{GroupCoordinates, MonoidStructure};
use crate::points::{rational_pow, ToricPoint, DEFAULT_DEGREE_BOUND};

/// A failed check with the values on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub check: String,
    pub inputs: Vec<ToricPoint>,
    pub lhs: ToricPoint,
    pub rhs: ToricPoint,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub witnesses: Vec<Witness>,
}

impl OracleReport {
    pub fn merge(&mut self, other: OracleReport) {
        self.checked += other.checked;
        self.passed += other.passed;
        self.failed += other.failed;
        self.witnesses.extend(other.witnesses);
    }

    pub fn is_clean(&self) -> bool {
        self.failed == 0 && self.checked == self.passed
    }

    fn from_outcomes(outcomes: Vec<Option<Witness>>) -> Self {
        let mut r = OracleReport { checked: outcomes.len(), ..Default::default() };
        for o in outcomes {
            match o {
                None => r.passed += 1,
                Some(w) => {
                    r.failed += 1;
                    r.witnesses.push(w);
                }
            }
        }
        r
    }
}

fn compare(check: &str, inputs: &[&ToricPoint], lhs: ToricPoint, rhs: ToricPoint) -> Option<Witness> {
    (lhs != rhs).then(|| Witness {
        check: check.to_string(),
        inputs: inputs.iter().map(|p| (*p).clone()).collect(),
        lhs,
        rhs,
    })
}

fn failure(check: &str, inputs: &[&ToricPoint], err: Error) -> Option<Witness> {
    Some(Witness {
        check: format!("{check}: {err}"),
        inputs: inputs.iter().map(|p| (*p).clone()).collect(),
        lhs: ToricPoint::new(Vec::new()),
        rhs: ToricPoint::new(Vec::new()),
    })
}

/// Seeded source of small exact rationals and points.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Numerator in `[−9, 9]`, denominator in `{1, 2, 3}`.
    pub fn rational(&mut self) -> BigRational {
        let n: i64 = self.rng.gen_range(-9..=9);
        let d: i64 = self.rng.gen_range(1..=3);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn nonzero_rational(&mut self) -> BigRational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn orbit_point(&mut self, m: &MonoidStructure, face: &Face) -> ToricPoint {
        let k = m.cone().perp_lattice_basis(face).len();
        let vals: Vec<BigRational> = (0..k).map(|_| self.nonzero_rational()).collect();
        m.variety().orbit_point(face, &vals).expect("nonzero torus values")
    }

    pub fn torus_point(&mut self, m: &MonoidStructure) -> ToricPoint {
        self.orbit_point(m, &m.cone().zero_face().clone())
    }

    /// A point of the unit group, drawn in group coordinates.
    pub fn invertible(&mut self, m: &MonoidStructure) -> ToricPoint {
        let c = GroupCoordinates {
            alpha: self.rational(),
            torus_values: (0..m.rho_basis().len()).map(|_| self.nonzero_rational()).collect(),
        };
        m.from_group_coords(&c).expect("nonzero torus values")
    }

    pub fn idempotent(&mut self, set: &IdempotentSet) -> ToricPoint {
        let total = set.isolated.len() + set.lines.len();
        let k = self.index(total);
        if k < set.isolated.len() {
            set.isolated[k].point.clone()
        } else {
            let s = self.rational();
            set.lines[k - set.isolated.len()].point_at(&s)
        }
    }

    /// A point from a random stratum: the torus, a random orbit, the unit
    /// group, or the idempotent locus.
    pub fn mixed(&mut self, m: &MonoidStructure, set: &IdempotentSet) -> ToricPoint {
        match self.index(4) {
            0 => self.torus_point(m),
            1 => {
                let f = m.cone().faces().choose(&mut self.rng).expect("faces").clone();
                self.orbit_point(m, &f)
            }
            2 => self.invertible(m),
            _ => self.idempotent(set),
        }
    }
}

/// All grid assignments of generator values that are points of `X_σ` and
/// satisfy `x * x = x`.
pub fn grid_idempotents(m: &MonoidStructure, values: &[BigRational], exec: Execution) -> Result<Vec<ToricPoint>> {
    let h = m.variety().generator_count();
    let k = values.len();
    let total = (k as u128).checked_pow(h as u32).unwrap_or(u128::MAX);
    m.variety().budget().check(total)?;
    let total = total as usize;
    // warm the relation cache before fanning out
    m.variety().try_validate(&m.identity(), DEFAULT_DEGREE_BOUND)?;
    let found = map_indices(exec, total, |mut idx| {
        let mut vals = Vec::with_capacity(h);
        for _ in 0..h {
            vals.push(values[idx % k].clone());
            idx /= k;
        }
        let x = ToricPoint::new(vals);
        if !m.variety().validate(&x, DEFAULT_DEGREE_BOUND) {
            return None;
        }
        match m.multiply(&x, &x) {
            Ok(y) if y == x => Some(x),
            _ => None,
        }
    });
    let mut out: Vec<ToricPoint> = found.into_iter().flatten().collect();
    out.sort_by(|a, b| a.values.cmp(&b.values));
    Ok(out)
}

/// Grid points lying in the predicted idempotent set, without multiplying.
pub fn predicted_on_grid(m: &MonoidStructure, set: &IdempotentSet, values: &[BigRational]) -> Result<Vec<ToricPoint>> {
    let h = m.variety().generator_count();
    let k = values.len();
    let total = (k as u128).checked_pow(h as u32).unwrap_or(u128::MAX);
    m.variety().budget().check(total)?;
    let mut out = Vec::new();
    for mut idx in 0..total as usize {
        let mut vals = Vec::with_capacity(h);
        for _ in 0..h {
            vals.push(values[idx % k].clone());
            idx /= k;
        }
        let x = ToricPoint::new(vals);
        if set.contains(&x) {
            out.push(x);
        }
    }
    out.sort_by(|a, b| a.values.cmp(&b.values));
    Ok(out)
}

/// `(x*y)*z = x*(y*z)` on seeded triples from mixed strata, plus the unit
/// law on each sampled point.
pub fn check_associativity(m: &MonoidStructure, samples: usize, seed: u64, exec: Execution) -> Result<OracleReport> {
    let set = idempotents(m)?;
    let mut s = Sampler::new(seed);
    let triples: Vec<[ToricPoint; 3]> =
        (0..samples).map(|_| [s.mixed(m, &set), s.mixed(m, &set), s.mixed(m, &set)]).collect();
    let one = m.identity();
    let outcomes = map_slice(exec, &triples, |[x, y, z]| {
        let run = || -> Result<Option<Witness>> {
            let lhs = m.multiply(&m.multiply(x, y)?, z)?;
            let rhs = m.multiply(x, &m.multiply(y, z)?)?;
            if let Some(w) = compare("associativity", &[x, y, z], lhs, rhs) {
                return Ok(Some(w));
            }
            if let Some(w) = compare("right unit", &[x], m.multiply(x, &one)?, x.clone()) {
                return Ok(Some(w));
            }
            Ok(compare("left unit", &[x], m.multiply(&one, x)?, x.clone()))
        };
        run().unwrap_or_else(|e| failure("associativity", &[x, y, z], e))
    });
    Ok(OracleReport::from_outcomes(outcomes))
}

/// Inverse law, group-coordinate round trip and agreement with the
/// semidirect product on seeded invertible points.
pub fn check_group_axioms(m: &MonoidStructure, samples: usize, seed: u64, exec: Execution) -> Result<OracleReport> {
    let mut s = Sampler::new(seed);
    let pairs: Vec<[ToricPoint; 2]> = (0..samples).map(|_| [s.invertible(m), s.invertible(m)]).collect();
    let one = m.identity();
    let outcomes = map_slice(exec, &pairs, |[y, z]| {
        let run = || -> Result<Option<Witness>> {
            let inv = m.invert(y)?;
            if let Some(w) = compare("right inverse", &[y], m.multiply(y, &inv)?, one.clone()) {
                return Ok(Some(w));
            }
            if let Some(w) = compare("left inverse", &[y], m.multiply(&inv, y)?, one.clone()) {
                return Ok(Some(w));
            }
            let gy = m.to_group_coords(y)?;
            if let Some(w) = compare("group coordinates round trip", &[y], m.from_group_coords(&gy)?, y.clone()) {
                return Ok(Some(w));
            }
            let gz = m.to_group_coords(z)?;
            let through_group = m.from_group_coords(&m.semidirect_multiply(&gy, &gz))?;
            Ok(compare("semidirect product", &[y, z], m.multiply(y, z)?, through_group))
        };
        run().unwrap_or_else(|e| failure("group axioms", &[y, z], e))
    });
    Ok(OracleReport::from_outcomes(outcomes))
}

/// Closed-form product templates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleFormula {
    /// `𝔸ⁿ` with `ρ` the last axis, `e₁ = (b, −1)`, `e₂ = (a, −1)`:
    /// `x * y = (x₁y₁, …, x_{n−1}y_{n−1}, x^a·y_n + y^b·x_n)`.
    Affspace,
    /// The cone over `cone((1,0,0),(0,1,0),(1,0,1),(0,1,1))`, `ρ = ray(p₁)`,
    /// `e₁ = (−1,k₁,l₁)`, `e₂ = (−1,k₂,l₂)`, coordinates `(v,w,z,t)`.
    QuadraticCone,
}

fn is_standard_basis(vs: &[Vec<i64>], n: usize) -> bool {
    vs.len() == n && vs.iter().enumerate().all(|(i, v)| (0..n).all(|j| v[j] == i64::from(i == j)))
}

fn monomial(x: &ToricPoint, exps: &[i64]) -> BigRational {
    x.values.iter().zip(exps).fold(BigRational::one(), |acc, (v, &e)| acc * rational_pow(v, e))
}

fn closed_form(m: &MonoidStructure, which: ExampleFormula, x: &ToricPoint, y: &ToricPoint) -> ToricPoint {
    match which {
        ExampleFormula::Affspace => {
            let n = x.len();
            let b = &m.e1().0[..n - 1];
            let a = &m.e2().0[..n - 1];
            let mut out: Vec<BigRational> = (0..n - 1).map(|i| &x.values[i] * &y.values[i]).collect();
            let xa = monomial(&ToricPoint::new(x.values[..n - 1].to_vec()), a);
            let yb = monomial(&ToricPoint::new(y.values[..n - 1].to_vec()), b);
            out.push(xa * &y.values[n - 1] + yb * &x.values[n - 1]);
            ToricPoint::new(out)
        }
        ExampleFormula::QuadraticCone => {
            let (k1, l1) = (m.e1().0[1], m.e1().0[2]);
            let (k2, l2) = (m.e2().0[1], m.e2().0[2]);
            let [vx, wx, zx, tx] = [0, 1, 2, 3].map(|i| &x.values[i]);
            let [vy, wy, zy, ty] = [0, 1, 2, 3].map(|i| &y.values[i]);
            let p = rational_pow;
            ToricPoint::new(vec![
                vx * p(wy, k1) * p(zy, l1) + vy * p(wx, k2) * p(zx, l2),
                wx * wy,
                zx * zy,
                tx * p(wy, k1 + 1) * p(zy, l1 - 1) + ty * p(wx, k2 + 1) * p(zx, l2 - 1),
            ])
        }
    }
}

fn matches_template(m: &MonoidStructure, which: ExampleFormula) -> bool {
    let c = m.cone();
    let rays: Vec<Vec<i64>> = c.rays().iter().map(|r| r.0.clone()).collect();
    let gens: Vec<Vec<i64>> = m.variety().basis().generators().iter().map(|g| g.0.clone()).collect();
    match which {
        ExampleFormula::Affspace => {
            let n = c.dim();
            n >= 2 && is_standard_basis(&rays, n) && is_standard_basis(&gens, n) && m.ray_index() == n - 1
        }
        ExampleFormula::QuadraticCone => {
            let want_rays = [vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 1]];
            let want_gens = [vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, -1]];
            rays == want_rays && gens == want_gens && m.ray_index() == 0
        }
    }
}

/// `multiply` against a closed-form template on seeded pairs.
pub fn differential_example_formulas(
    m: &MonoidStructure,
    which: ExampleFormula,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<OracleReport> {
    if !matches_template(m, which) {
        return Err(Error::TemplateMismatch(match which {
            ExampleFormula::Affspace => "affine space",
            ExampleFormula::QuadraticCone => "quadratic cone",
        }));
    }
    let mut s = Sampler::new(seed);
    let faces: Vec<Face> = m.cone().faces().to_vec();
    let draw = |s: &mut Sampler| {
        // mostly torus points, with some boundary orbits
        if s.index(3) == 0 {
            let f = faces[s.index(faces.len())].clone();
            s.orbit_point(m, &f)
        } else {
            s.torus_point(m)
        }
    };
    let pairs: Vec<[ToricPoint; 2]> = (0..samples).map(|_| [draw(&mut s), draw(&mut s)]).collect();
    let outcomes = map_slice(exec, &pairs, |[x, y]| match m.multiply(x, y) {
        Ok(prod) => compare("closed-form product", &[x, y], prod, closed_form(m, which, x, y)),
        Err(e) => failure("closed-form product", &[x, y], e),
    });
    Ok(OracleReport::from_outcomes(outcomes))
}

/// Seeded commutativity probe: the first pair with `x*y ≠ y*x`, if any.
pub fn find_noncommuting_pair(m: &MonoidStructure, samples: usize, seed: u64) -> Result<Option<(ToricPoint, ToricPoint)>> {
    let set = idempotents(m)?;
    let mut s = Sampler::new(seed);
    for _ in 0..samples {
        let x = s.mixed(m, &set);
        let y = s.mixed(m, &set);
        if m.multiply(&x, &y)? != m.multiply(&y, &x)? {
            return Ok(Some((x, y)));
        }
    }
    Ok(None)
}

/// Parse a comma-separated list of rationals such as `-1,0,1/2,2`.
pub fn parse_rationals(text: &str) -> Option<Vec<BigRational>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            match t.split_once('/') {
                Some((n, d)) => {
                    let n: BigInt = n.trim().parse().ok()?;
                    let d: BigInt = d.trim().parse().ok()?;
                    (!d.is_zero()).then(|| BigRational::new(n, d))
                }
                None => t.parse::<BigInt>().ok().map(BigRational::from_integer),
            }
        })
        .collect()
}
