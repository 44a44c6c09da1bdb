//! Idempotents, zero element, center and conjugation.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cones::{Budget, DualVector, Face, Factorization, Membership};
use crate::demazure::{extend_face, DemazureRoot};
use crate::error::Result;
use crate::exec::{map_slice, Execution};
use crate::monoid::MonoidStructure;
use crate::points::{rational_pow, ToricPoint};

/// Which case of the per-face classification a face `γ` falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceCase {
    /// `ρ ⊆ γ`: the single idempotent `x_γ`.
    ContainsRho,
    /// Neither root lies in `γ^⊥`: no idempotents.
    NeitherRoot,
    /// Both roots lie in `γ^⊥`: no idempotents.
    BothRoots,
    /// Exactly one root lies in `γ^⊥`: a line of idempotents.
    OneRoot,
}

pub fn face_case(m: &MonoidStructure, face: &Face) -> FaceCase {
    let c = m.cone();
    if face.contains_ray(m.ray_index()) {
        return FaceCase::ContainsRho;
    }
    match (c.in_perp(face, m.e1()), c.in_perp(face, m.e2())) {
        (false, false) => FaceCase::NeitherRoot,
        (true, true) => FaceCase::BothRoots,
        _ => FaceCase::OneRoot,
    }
}

/// An isolated idempotent `x_γ` for a face `γ ⊇ ρ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedIdempotent {
    pub face: Face,
    pub point: ToricPoint,
}

/// The closure of a one-dimensional family of idempotents in `O_γ`.
///
/// Points of the open part are `χ^g = s^{⟨p,g⟩}` for generators `g ∈ γ^⊥`
/// and `χ^g = 0` otherwise, with `s ≠ 0`; `s = 0` gives the closure point
/// `x_{cone(γ,ρ)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineComponent {
    pub face: Face,
    /// `cone(γ, ρ)`.
    pub extended_face: Face,
    /// Generators in `cone(γ,ρ)^⊥`: the equations `χ^g = 1`.
    pub unit_generators: Vec<usize>,
    /// Generators in `γ^⊥` outside `ρ^⊥`, with their weights `⟨p, g⟩`.
    pub weighted_generators: Vec<(usize, u32)>,
    pub closure_point: ToricPoint,
    /// A generator of weight one, whose value is the parameter itself.
    pub free_generator: Option<usize>,
    /// Whether the closure point is also an `x_γ'` of the case `ρ ⊆ γ'`.
    pub absorbs_isolated: bool,
}

fn bezout(values: &[i64]) -> (i64, Vec<i64>) {
    let mut g = 0i64;
    let mut coeffs: Vec<i64> = Vec::with_capacity(values.len());
    for &v in values {
        let e = g.extended_gcd(&v);
        for c in coeffs.iter_mut() {
            *c *= e.x;
        }
        coeffs.push(e.y);
        g = e.gcd;
        if g < 0 {
            g = -g;
            for c in coeffs.iter_mut() {
                *c = -*c;
            }
        }
    }
    (g, coeffs)
}

impl LineComponent {
    /// The point with parameter `s`.
    pub fn point_at(&self, s: &BigRational) -> ToricPoint {
        let mut values = vec![BigRational::zero(); self.closure_point.len()];
        for &g in &self.unit_generators {
            values[g] = BigRational::one();
        }
        for &(g, w) in &self.weighted_generators {
            values[g] = rational_pow(s, i64::from(w));
        }
        ToricPoint::new(values)
    }

    /// The parameter `s` of `x` if `x` lies on the closure of the line.
    pub fn parameter_of(&self, x: &ToricPoint) -> Option<BigRational> {
        if x.len() != self.closure_point.len() {
            return None;
        }
        if *x == self.closure_point {
            return Some(BigRational::zero());
        }
        let weights: Vec<i64> = self.weighted_generators.iter().map(|&(_, w)| i64::from(w)).collect();
        let (g, coeffs) = bezout(&weights);
        if g != 1 || self.weighted_generators.iter().any(|&(i, _)| x.values[i].is_zero()) {
            return None;
        }
        let s = self
            .weighted_generators
            .iter()
            .zip(&coeffs)
            .fold(BigRational::one(), |acc, (&(i, _), &c)| acc * rational_pow(&x.values[i], c));
        (self.point_at(&s) == *x).then_some(s)
    }

    /// Whether `x` satisfies the open part's equations `χ^g = 1` on
    /// `cone(γ,ρ)^⊥` and lies in `O_γ`.
    pub fn satisfies_open_equations(&self, m: &MonoidStructure, x: &ToricPoint) -> bool {
        matches!(m.variety().orbit_of(x), Ok(t) if t.face == self.face)
            && self.unit_generators.iter().all(|&g| x.values[g].is_one())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentSet {
    pub isolated: Vec<IsolatedIdempotent>,
    pub lines: Vec<LineComponent>,
    pub finite: bool,
    pub count_if_finite: Option<usize>,
    /// The case of every face, in face-lattice order.
    pub cases: Vec<(Face, FaceCase)>,
}

impl IdempotentSet {
    /// Membership in the predicted idempotent locus.
    pub fn contains(&self, x: &ToricPoint) -> bool {
        self.isolated.iter().any(|i| i.point == *x) || self.lines.iter().any(|l| l.parameter_of(x).is_some())
    }
}

/// The idempotent locus, face by face.
pub fn idempotents(m: &MonoidStructure) -> Result<IdempotentSet> {
    idempotents_with(m, Execution::default())
}

pub fn idempotents_with(m: &MonoidStructure, exec: Execution) -> Result<IdempotentSet> {
    let c = m.cone();
    let variety = m.variety();
    let rho = m.ray_index();
    let faces = c.faces();
    let per_face = map_slice(exec, faces, |face| -> Result<(FaceCase, Option<IsolatedIdempotent>, Option<LineComponent>)> {
        let case = face_case(m, face);
        match case {
            FaceCase::ContainsRho => {
                let point = variety.distinguished_point(face)?;
                Ok((case, Some(IsolatedIdempotent { face: face.clone(), point }), None))
            }
            FaceCase::NeitherRoot | FaceCase::BothRoots => Ok((case, None, None)),
            FaceCase::OneRoot => {
                let e = if c.in_perp(face, m.e1()) { m.e1() } else { m.e2() };
                let root = DemazureRoot::new(c, rho, e.clone())?;
                let extended = extend_face(c, face, rho, &root)?;
                let mut unit_generators = Vec::new();
                let mut weighted = Vec::new();
                for (i, g) in variety.basis().generators().iter().enumerate() {
                    if c.in_perp(&extended, g) {
                        unit_generators.push(i);
                    } else if c.in_perp(face, g) {
                        weighted.push((i, u32::try_from(m.weight(g)).expect("nonnegative weight")));
                    }
                }
                let free_generator = weighted.iter().find(|&&(_, w)| w == 1).map(|&(i, _)| i);
                let closure_point = variety.distinguished_point(&extended)?;
                let line = LineComponent {
                    face: face.clone(),
                    extended_face: extended,
                    unit_generators,
                    weighted_generators: weighted,
                    closure_point,
                    free_generator,
                    absorbs_isolated: true,
                };
                Ok((case, None, Some(line)))
            }
        }
    });
    let mut cases = Vec::new();
    let mut isolated = Vec::new();
    let mut lines = Vec::new();
    for (face, r) in faces.iter().zip(per_face) {
        let (case, iso, line) = r?;
        cases.push((face.clone(), case));
        isolated.extend(iso);
        lines.extend(line);
    }
    isolated.retain(|i| !lines.iter().any(|l| l.closure_point == i.point));
    let finite = lines.is_empty();
    let count_if_finite = finite.then_some(isolated.len());
    Ok(IdempotentSet { isolated, lines, finite, count_if_finite, cases })
}

/// `x * x = x`.
pub fn is_idempotent(m: &MonoidStructure, x: &ToricPoint) -> Result<bool> {
    Ok(m.multiply(x, x)? == *x)
}

/// A failed condition for the existence of a zero element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ZeroReason {
    #[serde(rename = "sigma-perp nonzero")]
    SigmaPerpNonzero,
    #[serde(rename = "-e1 in dual cone")]
    NegE1InDual,
    #[serde(rename = "-e2 in dual cone")]
    NegE2InDual,
}

impl ZeroReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            ZeroReason::SigmaPerpNonzero => "sigma-perp nonzero",
            ZeroReason::NegE1InDual => "-e1 in dual cone",
            ZeroReason::NegE2InDual => "-e2 in dual cone",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroResult {
    pub exists: bool,
    pub point: Option<ToricPoint>,
    /// Every failed condition, in the order `σ^⊥`, `−e₁`, `−e₂`.
    pub reasons: Vec<ZeroReason>,
}

impl ZeroResult {
    /// The first failed condition.
    pub fn reason(&self) -> Option<ZeroReason> {
        self.reasons.first().copied()
    }
}

/// The zero element: it exists iff `σ^⊥ = 0` and `−e₁, −e₂ ∉ σ^∨`, and is
/// then `x_σ`.
pub fn zero(m: &MonoidStructure) -> Result<ZeroResult> {
    let c = m.cone();
    let mut reasons = Vec::new();
    if !c.is_full_dimensional() {
        reasons.push(ZeroReason::SigmaPerpNonzero);
    }
    if c.contains(&-m.e1(), Membership::Closed)? {
        reasons.push(ZeroReason::NegE1InDual);
    }
    if c.contains(&-m.e2(), Membership::Closed)? {
        reasons.push(ZeroReason::NegE2InDual);
    }
    if reasons.is_empty() {
        let point = m.variety().distinguished_point(c.full_face())?;
        Ok(ZeroResult { exists: true, point: Some(point), reasons })
    } else {
        Ok(ZeroResult { exists: false, point: None, reasons })
    }
}

/// One center equation `χ^{u+e₁} = χ^{u+e₂}` for a slice generator `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binomial {
    pub slice: DualVector,
    pub lhs: DualVector,
    pub rhs: DualVector,
    pub lhs_factorization: Factorization,
    pub rhs_factorization: Factorization,
}

/// Result of checking that the slice generators cover every slice point in
/// a box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceCertificate {
    pub box_bound: i64,
    pub slice_points: usize,
    pub uncovered: Vec<DualVector>,
    /// Slice generators dominated by another one (empty when minimal).
    pub dominated: Vec<DualVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterDescription {
    /// `e₁ = e₂`: the center is all of `X`.
    pub trivial: bool,
    /// Generators with `⟨p, g⟩ ≠ 0`; they vanish on the closure of `O_ρ`.
    pub closure_generators: Vec<usize>,
    pub slice_generators: Vec<DualVector>,
    pub binomials: Vec<Binomial>,
    pub certificate: Option<SliceCertificate>,
}

impl CenterDescription {
    /// Whether `x` satisfies all center equations.
    pub fn contains(&self, m: &MonoidStructure, x: &ToricPoint) -> Result<bool> {
        m.variety().check_len(x)?;
        if self.trivial {
            return Ok(true);
        }
        if self.closure_generators.iter().any(|&g| !x.values[g].is_zero()) {
            return Ok(false);
        }
        let v = m.variety();
        Ok(self.binomials.iter().all(|b| {
            v.evaluate_factorization(x, &b.lhs_factorization) == v.evaluate_factorization(x, &b.rhs_factorization)
        }))
    }
}

/// Default scale of the slice certificate box.
pub const DEFAULT_SLICE_SCALE: i64 = 4;

/// The center `Z(X)` as equations.
pub fn center_equations(m: &MonoidStructure) -> Result<CenterDescription> {
    center_equations_with(m, DEFAULT_SLICE_SCALE, m.variety().budget())
}

/// Slice generators are the Hilbert generators of weight one: any slice
/// point factors with exactly one weight-one generator, and a weight-one
/// generator is irreducible, hence minimal. The box enumeration certifies
/// the covering on every slice point within `scale` times the coordinate
/// hull of the Hilbert basis and the roots.
pub fn center_equations_with(m: &MonoidStructure, scale: i64, budget: Budget) -> Result<CenterDescription> {
    let v = m.variety();
    let basis = v.basis();
    if m.is_commutative() {
        return Ok(CenterDescription {
            trivial: true,
            closure_generators: Vec::new(),
            slice_generators: Vec::new(),
            binomials: Vec::new(),
            certificate: None,
        });
    }
    let closure_generators: Vec<usize> =
        (0..basis.len()).filter(|&i| m.weight(&basis.generators()[i]) != 0).collect();
    let slice_generators: Vec<DualVector> =
        basis.generators().iter().filter(|g| m.weight(g) == 1).cloned().collect();
    let binomials = slice_generators
        .iter()
        .map(|u| {
            let lhs = u + m.e1();
            let rhs = u + m.e2();
            Ok(Binomial {
                slice: u.clone(),
                lhs_factorization: basis.factorize(&lhs)?,
                rhs_factorization: basis.factorize(&rhs)?,
                lhs,
                rhs,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let certificate = slice_certificate(m, &slice_generators, scale, budget)?;
    Ok(CenterDescription { trivial: false, closure_generators, slice_generators, binomials, certificate: Some(certificate) })
}

fn slice_certificate(m: &MonoidStructure, gens: &[DualVector], scale: i64, budget: Budget) -> Result<SliceCertificate> {
    let c = m.cone();
    let n = c.dim();
    let p = c.rays()[m.ray_index()].coords().to_vec();
    let maxabs = m
        .variety()
        .basis()
        .generators()
        .iter()
        .chain([m.e1(), m.e2()])
        .flat_map(|g| g.0.iter().map(|x| x.abs()))
        .max()
        .unwrap_or(1)
        .max(1);
    let bound = scale * maxabs;
    let side = u128::try_from(2 * bound + 1).expect("positive box");
    budget.check(side.checked_pow((n - 1) as u32).unwrap_or(u128::MAX))?;

    // solve ⟨p, u⟩ = 1 for the coordinate with the smallest nonzero |p_k|
    let k = (0..n).filter(|&i| p[i] != 0).min_by_key(|&i| p[i].abs()).expect("nonzero ray");
    let free: Vec<usize> = (0..n).filter(|&i| i != k).collect();
    let in_dual = |u: &DualVector| c.rays().iter().all(|r| r.pair(u) >= 0);
    let mut slice_points = 0usize;
    let mut uncovered = Vec::new();
    let mut cur = vec![-bound; free.len()];
    loop {
        let partial: i64 = free.iter().zip(&cur).map(|(&i, &x)| p[i] * x).sum();
        let rest = 1 - partial;
        if rest % p[k] == 0 && (rest / p[k]).abs() <= bound {
            let mut u = vec![0i64; n];
            for (&i, &x) in free.iter().zip(&cur) {
                u[i] = x;
            }
            u[k] = rest / p[k];
            let u = DualVector(u);
            if in_dual(&u) {
                slice_points += 1;
                if !gens.iter().any(|g| in_dual(&(&u - g))) {
                    uncovered.push(u);
                }
            }
        }
        let mut j = 0;
        while j < cur.len() {
            if cur[j] < bound {
                cur[j] += 1;
                break;
            }
            cur[j] = -bound;
            j += 1;
        }
        if j == cur.len() {
            break;
        }
    }
    let dominated = if c.is_full_dimensional() {
        gens.iter()
            .filter(|g| gens.iter().any(|h| h != *g && in_dual(&(*g - h))))
            .cloned()
            .collect()
    } else {
        Vec::new()
    };
    Ok(SliceCertificate { box_bound: bound, slice_points, uncovered, dominated })
}

/// Whether `x` satisfies the center equations.
pub fn is_central(m: &MonoidStructure, x: &ToricPoint) -> Result<bool> {
    let c = center_equations(m)?;
    c.contains(m, x)
}

/// `g * x * g⁻¹`.
pub fn conjugate(m: &MonoidStructure, g: &ToricPoint, x: &ToricPoint) -> Result<ToricPoint> {
    let inv = m.invert(g)?;
    m.multiply(&m.multiply(g, x)?, &inv)
}
