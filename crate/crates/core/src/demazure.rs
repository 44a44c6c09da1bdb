//! Demazure roots of an affine toric variety.
//!
//! A root of the ray `pᵢ` is a character `e ∈ M` with `⟨pᵢ, e⟩ = −1` and
//! `⟨pⱼ, e⟩ ≥ 0` for every other ray.

use serde::{Deserialize, Serialize};

use crate::cones::{graded_sort, Budget, DualVector, Face, RationalCone};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DemazureRoot {
    pub e: DualVector,
    pub ray_index: usize,
}

fn check_ray(cone: &RationalCone, ray_index: usize) -> Result<()> {
    if ray_index >= cone.rays().len() {
        return Err(Error::RayIndexOutOfRange { index: ray_index, rays: cone.rays().len() });
    }
    Ok(())
}

/// Why `e` fails to be a root of ray `ray_index`, if it does.
pub(crate) fn root_violation(cone: &RationalCone, ray_index: usize, e: &DualVector) -> Result<Option<String>> {
    check_ray(cone, ray_index)?;
    if e.dim() != cone.dim() {
        return Err(Error::DimensionMismatch { expected: cone.dim(), found: e.dim() });
    }
    for (j, p) in cone.rays().iter().enumerate() {
        let v = p.pair(e);
        if j == ray_index && v != -1 {
            return Ok(Some(format!("<p{}, e> = {v}, expected -1 on the distinguished ray", j + 1)));
        }
        if j != ray_index && v < 0 {
            return Ok(Some(format!("<p{}, e> = {v} < 0 on a non-distinguished ray", j + 1)));
        }
    }
    Ok(None)
}

/// Whether `e` is a Demazure root of the ray `ray_index`.
pub fn is_root(cone: &RationalCone, ray_index: usize, e: &DualVector) -> Result<bool> {
    Ok(root_violation(cone, ray_index, e)?.is_none())
}

impl DemazureRoot {
    /// Validated constructor.
    pub fn new(cone: &RationalCone, ray_index: usize, e: DualVector) -> Result<Self> {
        match root_violation(cone, ray_index, &e)? {
            None => Ok(Self { e, ray_index }),
            Some(detail) => Err(Error::NotADemazureRoot { which: "e", vector: e.0, ray: ray_index, detail }),
        }
    }
}

/// All roots of `ray_index` with coordinates in `[−bound, bound]`, in
/// graded order.
pub fn enumerate_roots(cone: &RationalCone, ray_index: usize, bound: u32, budget: Budget) -> Result<Vec<DemazureRoot>> {
    check_ray(cone, ray_index)?;
    let n = cone.dim();
    let side = 2 * u128::from(bound) + 1;
    let needed = side.checked_pow(n as u32).unwrap_or(u128::MAX);
    budget.check(needed)?;
    let b = i64::from(bound);
    let mut out = Vec::new();
    let mut cur = vec![-b; n];
    loop {
        let e = DualVector(cur.clone());
        if root_violation(cone, ray_index, &e)?.is_none() {
            out.push(e);
        }
        let mut k = 0;
        while k < n {
            if cur[k] < b {
                cur[k] += 1;
                break;
            }
            cur[k] = -b;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    graded_sort(&mut out);
    Ok(out.into_iter().map(|e| DemazureRoot { e, ray_index }).collect())
}

/// For a root `e` of `ρ = ray(ray_index)` lying in `γ^⊥` with `ρ ⊄ γ`, the
/// face `cone(γ, ρ)`.
pub fn extend_face(cone: &RationalCone, face: &Face, ray_index: usize, e: &DemazureRoot) -> Result<Face> {
    check_ray(cone, ray_index)?;
    if e.ray_index != ray_index || !is_root(cone, ray_index, &e.e)? {
        return Err(Error::NotAFace(format!("{} is not a root of ray p{}", e.e, ray_index + 1)));
    }
    if face.contains_ray(ray_index) {
        return Err(Error::NotAFace(format!("{face} already contains p{}", ray_index + 1)));
    }
    if !cone.in_perp(face, &e.e) {
        return Err(Error::NotAFace(format!("{} is not in the orthogonal of {face}", e.e)));
    }
    let mut rays = face.ray_indices.clone();
    rays.push(ray_index);
    let out = cone
        .face_with_rays(&rays)
        .ok_or_else(|| Error::NotAFace(format!("cone({face}, p{}) is not a face", ray_index + 1)))?;
    if out.dim != face.dim + 1 {
        return Err(Error::NotAFace(format!("cone({face}, p{}) has the wrong dimension", ray_index + 1)));
    }
    Ok(out.clone())
}
