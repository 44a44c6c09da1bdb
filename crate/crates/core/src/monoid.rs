//! Noncommutative monoid structures of corank one on `X_σ`.
//!
//! The structure is determined by a ray `ρ = cone(p)` of `σ` and two
//! Demazure roots `e₁, e₂` of `p`. On characters it reads
//!
//! ```text
//! χ^u(x * y) = Σ_{i+j=⟨p,u⟩} C(⟨p,u⟩, i) · χ^{u+i·e₂}(x) · χ^{u+j·e₁}(y)
//! ```
//!
//! and it suffices to evaluate this on the Hilbert basis of `S_σ`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cones::{Budget, DualVector, Face, Factorization, RationalCone};
use crate::demazure::{root_violation, DemazureRoot};
use crate::error::{Error, Result};
use crate::lattice;
use crate::points::{rational_pow, ToricPoint, ToricVariety};

#[derive(Clone, Debug)]
struct GeneratorTerms {
    weight: u32,
    // factorizations of g + i·e₂ and g + j·e₁ for i, j in 0..=weight
    left: Vec<Factorization>,
    right: Vec<Factorization>,
    binomials: Vec<BigRational>,
}

/// The classification datum `(σ, ρ, e₁, e₂)` with everything needed to
/// multiply points.
#[derive(Clone, Debug)]
pub struct MonoidStructure {
    variety: ToricVariety,
    ray_index: usize,
    e1: DemazureRoot,
    e2: DemazureRoot,
    witness: DualVector,
    terms: Vec<GeneratorTerms>,
    rho_basis: Vec<DualVector>,
    chi: Vec<i64>,
}

/// Coordinates on the unit group `𝔾_a ⋊ T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCoordinates {
    pub alpha: BigRational,
    /// Values on the lattice basis of `M(ρ) = ρ^⊥ ∩ M`.
    pub torus_values: Vec<BigRational>,
}

impl MonoidStructure {
    /// Validate `(σ, ρ, e₁, e₂)` and precompute the comultiplication on the
    /// Hilbert basis.
    pub fn build(cone: RationalCone, ray_index: usize, e1: DualVector, e2: DualVector, budget: Budget) -> Result<Self> {
        let check = |which: &'static str, e: &DualVector| -> Result<()> {
            match root_violation(&cone, ray_index, e)? {
                None => Ok(()),
                Some(detail) => Err(Error::NotADemazureRoot { which, vector: e.0.clone(), ray: ray_index, detail }),
            }
        };
        check("e1", &e1)?;
        check("e2", &e2)?;
        let variety = ToricVariety::new(cone, budget)?;
        Self::from_variety(variety, ray_index, e1, e2)
    }

    /// As [`MonoidStructure::build`], reusing an existing variety.
    pub fn from_variety(variety: ToricVariety, ray_index: usize, e1: DualVector, e2: DualVector) -> Result<Self> {
        let e1 = DemazureRoot::new(variety.cone(), ray_index, e1)
            .map_err(|e| rename_root_error(e, "e1"))?;
        let e2 = DemazureRoot::new(variety.cone(), ray_index, e2)
            .map_err(|e| rename_root_error(e, "e2"))?;
        let cone = variety.cone();
        let basis = variety.basis();
        let p = &cone.rays()[ray_index];
        let rho = cone.ray_face(ray_index).expect("every ray spans a face").clone();

        let mut witness = DualVector::zero(cone.dim());
        for g in basis.generators() {
            if p.pair(g) == 0 {
                witness = &witness + g;
            }
        }
        debug_assert!(cone.in_dual_face_interior(&rho, &witness).unwrap());

        let mut terms = Vec::with_capacity(basis.len());
        for g in basis.generators() {
            let k = p.pair(g);
            let weight = u32::try_from(k).expect("generators pair nonnegatively with rays");
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut binomials = Vec::new();
            for i in 0..=k {
                left.push(basis.factorize(&(g + &(&e2.e * i)))?);
                right.push(basis.factorize(&(g + &(&e1.e * i)))?);
                binomials.push(BigRational::from_integer(binomial(BigInt::from(k), BigInt::from(i))));
            }
            terms.push(GeneratorTerms { weight, left, right, binomials });
        }

        let rho_basis = cone.perp_lattice_basis(&rho);
        let rows: Vec<Vec<i64>> = rho_basis.iter().map(|b| b.0.clone()).collect();
        let chi = lattice::solve_integer(&rows, &(&e2.e - &e1.e).0).expect("e2 - e1 lies in the perp of the ray");

        Ok(Self { variety, ray_index, e1, e2, witness, terms, rho_basis, chi })
    }

    pub fn variety(&self) -> &ToricVariety {
        &self.variety
    }

    pub fn cone(&self) -> &RationalCone {
        self.variety.cone()
    }

    pub fn ray_index(&self) -> usize {
        self.ray_index
    }

    pub fn e1(&self) -> &DualVector {
        &self.e1.e
    }

    pub fn e2(&self) -> &DualVector {
        &self.e2.e
    }

    pub fn is_commutative(&self) -> bool {
        self.e1 == self.e2
    }

    /// The face `ρ`.
    pub fn rho(&self) -> &Face {
        self.cone().ray_face(self.ray_index).expect("every ray spans a face")
    }

    /// `⟨p, u⟩`.
    pub fn weight(&self, u: &DualVector) -> i64 {
        self.cone().rays()[self.ray_index].pair(u)
    }

    /// Weights `⟨p, g⟩` of the Hilbert generators.
    pub fn generator_weights(&self) -> Vec<u32> {
        self.terms.iter().map(|t| t.weight).collect()
    }

    /// The relative-interior point `u′` of `ρ^⊥ ∩ σ^∨` used for invertibility.
    pub fn witness(&self) -> &DualVector {
        &self.witness
    }

    /// Lattice basis of `M(ρ)` used by [`GroupCoordinates`].
    pub fn rho_basis(&self) -> &[DualVector] {
        &self.rho_basis
    }

    /// Exponents of `χ = χ^{e₂−e₁}` in the basis of `M(ρ)`.
    pub fn chi_exponents(&self) -> &[i64] {
        &self.chi
    }

    /// The unity `x_ρ`.
    pub fn identity(&self) -> ToricPoint {
        self.variety.distinguished_point(self.rho()).expect("ρ is a face")
    }

    fn check_point(&self, x: &ToricPoint) -> Result<()> {
        self.variety.check_len(x)?;
        if self.variety.orbit_of(x).is_err() {
            return Err(Error::InvalidPoint(format!("{x} has a zero pattern matching no face")));
        }
        Ok(())
    }

    /// `x * y`. Inputs are checked for length and zero-pattern coherence;
    /// use [`ToricVariety::validate`] for the full relation check.
    pub fn multiply(&self, x: &ToricPoint, y: &ToricPoint) -> Result<ToricPoint> {
        self.check_point(x)?;
        self.check_point(y)?;
        let v = &self.variety;
        let values = self
            .terms
            .iter()
            .map(|t| {
                let k = t.weight as usize;
                let mut acc = BigRational::zero();
                for i in 0..=k {
                    let a = v.evaluate_factorization(x, &t.left[i]);
                    if a.is_zero() {
                        continue;
                    }
                    let b = v.evaluate_factorization(y, &t.right[k - i]);
                    acc += &t.binomials[i] * a * b;
                }
                acc
            })
            .collect();
        Ok(ToricPoint::new(values))
    }

    /// `χ^{u′}(x) ≠ 0`.
    pub fn is_invertible(&self, x: &ToricPoint) -> Result<bool> {
        self.variety.check_len(x)?;
        Ok(!self.variety.character(x, &self.witness)?.is_zero())
    }

    /// `χ^v(x)` for an invertible `x` and any `v` with `⟨p, v⟩ ≥ 0`, via
    /// `χ^v = χ^{v + k·u′} / (χ^{u′})^k`.
    pub fn laurent_character(&self, x: &ToricPoint, v: &DualVector) -> Result<BigRational> {
        if self.weight(v) < 0 {
            return Err(Error::NotInSemigroup(v.0.clone()));
        }
        let w = self.variety.character(x, &self.witness)?;
        if w.is_zero() {
            return Err(Error::NotInvertible);
        }
        let mut k: i64 = 0;
        for (j, pj) in self.cone().rays().iter().enumerate() {
            if j == self.ray_index {
                continue;
            }
            let a = pj.pair(v);
            let b = pj.pair(&self.witness);
            if a < 0 {
                k = k.max((-a + b - 1) / b);
            }
        }
        let lifted = v + &(&self.witness * k);
        let top = self.variety.character(x, &lifted)?;
        Ok(top * rational_pow(&w, -k))
    }

    /// `y⁻¹`, from `χ^u(y⁻¹) = (−1)^{⟨p,u⟩} χ^{−u−⟨p,u⟩(e₁+e₂)}(y)`.
    pub fn invert(&self, y: &ToricPoint) -> Result<ToricPoint> {
        self.check_point(y)?;
        if !self.is_invertible(y)? {
            return Err(Error::NotInvertible);
        }
        let shift = &self.e1.e + &self.e2.e;
        let values = self
            .variety
            .basis()
            .generators()
            .iter()
            .zip(&self.terms)
            .map(|(g, t)| {
                let k = i64::from(t.weight);
                let target = &(-g) - &(&shift * k);
                let val = self.laurent_character(y, &target)?;
                Ok(if k % 2 == 0 { val } else { -val })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ToricPoint::new(values))
    }

    /// `χ(t) = χ^{e₂−e₁}(t)` for torus values on the `M(ρ)` basis.
    pub fn chi_value(&self, torus_values: &[BigRational]) -> BigRational {
        self.chi.iter().zip(torus_values).fold(BigRational::one(), |acc, (&d, t)| acc * rational_pow(t, d))
    }

    pub fn to_group_coords(&self, x: &ToricPoint) -> Result<GroupCoordinates> {
        self.check_point(x)?;
        if !self.is_invertible(x)? {
            return Err(Error::NotInvertible);
        }
        let alpha = self.laurent_character(x, &-&self.e1.e)?;
        let torus_values =
            self.rho_basis.iter().map(|b| self.laurent_character(x, b)).collect::<Result<Vec<_>>>()?;
        Ok(GroupCoordinates { alpha, torus_values })
    }

    /// Each generator `g` is written as `(g + ⟨p,g⟩e₁) − ⟨p,g⟩e₁` with the first
    /// summand in `M(ρ)`, so `χ^g = χ^{g+⟨p,g⟩e₁}(t) · α^{⟨p,g⟩}`.
    pub fn from_group_coords(&self, c: &GroupCoordinates) -> Result<ToricPoint> {
        if c.torus_values.len() != self.rho_basis.len() {
            return Err(Error::DimensionMismatch { expected: self.rho_basis.len(), found: c.torus_values.len() });
        }
        if let Some(k) = c.torus_values.iter().position(|t| t.is_zero()) {
            return Err(Error::ZeroValue(k));
        }
        let rows: Vec<Vec<i64>> = self.rho_basis.iter().map(|b| b.0.clone()).collect();
        let values = self
            .variety
            .basis()
            .generators()
            .iter()
            .zip(&self.terms)
            .map(|(g, t)| {
                let k = i64::from(t.weight);
                let m = g + &(&self.e1.e * k);
                let coords = lattice::solve_integer(&rows, &m.0).expect("shifted generator lies in M(ρ)");
                let torus = coords
                    .iter()
                    .zip(&c.torus_values)
                    .fold(BigRational::one(), |acc, (&e, tv)| acc * rational_pow(tv, e));
                torus * rational_pow(&c.alpha, k)
            })
            .collect();
        Ok(ToricPoint::new(values))
    }

    /// `(α, t) · (α′, t′) = (α + χ(t)α′, tt′)`.
    pub fn semidirect_multiply(&self, g: &GroupCoordinates, h: &GroupCoordinates) -> GroupCoordinates {
        GroupCoordinates {
            alpha: &g.alpha + self.chi_value(&g.torus_values) * &h.alpha,
            torus_values: g.torus_values.iter().zip(&h.torus_values).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn group_identity(&self) -> GroupCoordinates {
        GroupCoordinates { alpha: BigRational::zero(), torus_values: vec![BigRational::one(); self.rho_basis.len()] }
    }

    /// `t · x` for `t` given by its values on the standard basis of `M`.
    pub fn torus_act(&self, t: &[BigRational], x: &ToricPoint) -> Result<ToricPoint> {
        let n = self.cone().dim();
        if t.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: t.len() });
        }
        if let Some(k) = t.iter().position(|v| v.is_zero()) {
            return Err(Error::ZeroValue(k));
        }
        self.variety.check_len(x)?;
        let values = self
            .variety
            .basis()
            .generators()
            .iter()
            .zip(&x.values)
            .map(|(g, v)| g.0.iter().zip(t).fold(v.clone(), |acc, (&e, tv)| acc * rational_pow(tv, e)))
            .collect();
        Ok(ToricPoint::new(values))
    }
}

fn rename_root_error(e: Error, which: &'static str) -> Error {
    match e {
        Error::NotADemazureRoot { vector, ray, detail, .. } => Error::NotADemazureRoot { which, vector, ray, detail },
        other => other,
    }
}
