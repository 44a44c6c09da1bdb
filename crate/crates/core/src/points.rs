//! Points of `X_σ` as semigroup homomorphisms `S_σ → ℚ`, stored by their
//! values on the Hilbert basis.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::cones::{Budget, DualVector, Face, Factorization, HilbertBasis, RationalCone};
use crate::error::{Error, Result};
use crate::lattice;

/// Degree bound used when no other is given.
pub const DEFAULT_DEGREE_BOUND: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToricPoint {
    pub values: Vec<BigRational>,
}

impl ToricPoint {
    pub fn new(values: Vec<BigRational>) -> Self {
        Self { values }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self { values: values.iter().map(|&v| BigRational::from_integer(v.into())).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Indices of generators with nonzero value.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| !self.values[i].is_zero()).collect()
    }
}

impl fmt::Display for ToricPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// The orbit `O_τ` containing a point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitTag {
    pub face: Face,
}

/// `base^exp` for a possibly negative exponent.
pub(crate) fn rational_pow(base: &BigRational, exp: i64) -> BigRational {
    if exp >= 0 {
        Pow::pow(base, exp.unsigned_abs())
    } else {
        Pow::pow(base.recip(), exp.unsigned_abs())
    }
}

/// An affine toric variety with a fixed embedding by its Hilbert basis.
#[derive(Debug)]
pub struct ToricVariety {
    cone: RationalCone,
    basis: HilbertBasis,
    budget: Budget,
    // generators in τ^⊥, per face index
    perp_members: Vec<Vec<bool>>,
    relations: Mutex<HashMap<u32, Arc<Vec<Vec<Vec<u32>>>>>>,
}

impl Clone for ToricVariety {
    fn clone(&self) -> Self {
        Self {
            cone: self.cone.clone(),
            basis: self.basis.clone(),
            budget: self.budget,
            perp_members: self.perp_members.clone(),
            relations: Mutex::new(self.relations.lock().expect("relation cache").clone()),
        }
    }
}

impl ToricVariety {
    pub fn new(cone: RationalCone, budget: Budget) -> Result<Self> {
        let basis = cone.hilbert_basis_with_budget(budget)?;
        let perp_members = cone
            .faces()
            .iter()
            .map(|f| basis.generators().iter().map(|g| cone.in_perp(f, g)).collect())
            .collect();
        Ok(Self { cone, basis, budget, perp_members, relations: Mutex::new(HashMap::new()) })
    }

    pub fn cone(&self) -> &RationalCone {
        &self.cone
    }

    pub fn basis(&self) -> &HilbertBasis {
        &self.basis
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn generator_count(&self) -> usize {
        self.basis.len()
    }

    fn face_slot(&self, face: &Face) -> Result<usize> {
        self.cone.face_index(face).ok_or_else(|| Error::NotAFace(face.to_string()))
    }

    /// `x_τ`: value 1 on generators in `τ^⊥`, 0 elsewhere.
    pub fn distinguished_point(&self, face: &Face) -> Result<ToricPoint> {
        let slot = self.face_slot(face)?;
        Ok(ToricPoint {
            values: self.perp_members[slot]
                .iter()
                .map(|&m| if m { BigRational::one() } else { BigRational::zero() })
                .collect(),
        })
    }

    /// The face `τ` whose orbit contains `x`, read off the zero pattern.
    pub fn orbit_of(&self, x: &ToricPoint) -> Result<OrbitTag> {
        self.check_len(x)?;
        let nonzero: Vec<bool> = x.values.iter().map(|v| !v.is_zero()).collect();
        self.perp_members
            .iter()
            .position(|m| *m == nonzero)
            .map(|i| OrbitTag { face: self.cone.faces()[i].clone() })
            .ok_or(Error::IncoherentZeroPattern)
    }

    /// The point of `O_τ` with the given torus values on
    /// [`RationalCone::perp_lattice_basis`] of `τ`.
    pub fn orbit_point(&self, face: &Face, torus_values: &[BigRational]) -> Result<ToricPoint> {
        let slot = self.face_slot(face)?;
        let perp = self.cone.perp_lattice_basis(face);
        if torus_values.len() != perp.len() {
            return Err(Error::DimensionMismatch { expected: perp.len(), found: torus_values.len() });
        }
        if let Some(k) = torus_values.iter().position(|t| t.is_zero()) {
            return Err(Error::ZeroValue(k));
        }
        let rows: Vec<Vec<i64>> = perp.iter().map(|b| b.0.clone()).collect();
        let values = self
            .basis
            .generators()
            .iter()
            .zip(&self.perp_members[slot])
            .map(|(g, &inside)| {
                if !inside {
                    return BigRational::zero();
                }
                let c = lattice::solve_integer(&rows, &g.0).expect("generator lies in the perp lattice");
                c.iter().zip(torus_values).fold(BigRational::one(), |acc, (&k, t)| acc * rational_pow(t, k))
            })
            .collect();
        Ok(ToricPoint { values })
    }

    pub(crate) fn check_len(&self, x: &ToricPoint) -> Result<()> {
        if x.len() != self.basis.len() {
            return Err(Error::InvalidPoint(format!(
                "expected {} generator values, found {}",
                self.basis.len(),
                x.len()
            )));
        }
        Ok(())
    }

    /// `Π values^multiplicities`.
    pub fn evaluate_factorization(&self, x: &ToricPoint, f: &Factorization) -> BigRational {
        let mut acc = BigRational::one();
        for (v, &m) in x.values.iter().zip(&f.multiplicities) {
            if m > 0 {
                if v.is_zero() {
                    return BigRational::zero();
                }
                acc *= Pow::pow(v, m);
            }
        }
        acc
    }

    /// `χ^v(x)` for `v ∈ S_σ`.
    pub fn character(&self, x: &ToricPoint, v: &DualVector) -> Result<BigRational> {
        self.check_len(x)?;
        let f = self.basis.factorize(v)?;
        Ok(self.evaluate_factorization(x, &f))
    }

    /// Groups of distinct multiplicity vectors of total degree at most
    /// `bound` that sum to the same lattice element.
    fn relation_groups(&self, bound: u32) -> Arc<Vec<Vec<Vec<u32>>>> {
        let mut cache = self.relations.lock().expect("relation cache");
        if let Some(g) = cache.get(&bound) {
            return Arc::clone(g);
        }
        let h = self.basis.len();
        let mut by_element: HashMap<Vec<i64>, Vec<Vec<u32>>> = HashMap::new();
        let mut cur = vec![0u32; h];
        fn walk(
            k: usize,
            left: u32,
            cur: &mut Vec<u32>,
            gens: &[DualVector],
            out: &mut HashMap<Vec<i64>, Vec<Vec<u32>>>,
        ) {
            if k == gens.len() {
                let f = Factorization { multiplicities: cur.clone() };
                let mut v = vec![0i64; gens[0].dim()];
                for (g, &m) in gens.iter().zip(&f.multiplicities) {
                    for (x, y) in v.iter_mut().zip(&g.0) {
                        *x += i64::from(m) * y;
                    }
                }
                out.entry(v).or_default().push(f.multiplicities);
                return;
            }
            for m in 0..=left {
                cur[k] = m;
                walk(k + 1, left - m, cur, gens, out);
            }
            cur[k] = 0;
        }
        walk(0, bound, &mut cur, self.basis.generators(), &mut by_element);
        let mut groups: Vec<Vec<Vec<u32>>> = by_element.into_values().filter(|g| g.len() > 1).collect();
        groups.sort();
        let groups = Arc::new(groups);
        cache.insert(bound, Arc::clone(&groups));
        groups
    }

    /// Number of monomials `validate` inspects at a given degree bound.
    pub fn relation_monomials(&self, bound: u32) -> u128 {
        let h = self.basis.len() as u128;
        let d = u128::from(bound);
        // C(h + d, d)
        (1..=d).fold(1u128, |acc, i| acc * (h + i) / i)
    }

    /// Whether the generator values define a point of `X_σ`: every pair of
    /// factorizations of the same element (total degree ≤ `degree_bound`)
    /// evaluates equally and the zero pattern matches a face.
    pub fn validate(&self, x: &ToricPoint, degree_bound: u32) -> bool {
        if x.len() != self.basis.len() || self.orbit_of(x).is_err() {
            return false;
        }
        if self.budget.check(self.relation_monomials(degree_bound)).is_err() {
            return false;
        }
        let groups = self.relation_groups(degree_bound);
        groups.iter().all(|group| {
            let eval = |m: &Vec<u32>| self.evaluate_factorization(x, &Factorization { multiplicities: m.clone() });
            let first = eval(&group[0]);
            group[1..].iter().all(|m| eval(m) == first)
        })
    }

    /// `validate`, but failing with a budget error instead of returning
    /// false when the relation enumeration is too large.
    pub fn try_validate(&self, x: &ToricPoint, degree_bound: u32) -> Result<bool> {
        self.budget.check(self.relation_monomials(degree_bound))?;
        Ok(self.validate(x, degree_bound))
    }
}

/// `BigRational` from an integer.
pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `BigRational` from a fraction.
pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
