//! Rational polyhedral cones: duals, faces, Hilbert bases and semigroup
//! factorization.
//!
//! A cone `σ ⊆ N_ℚ` is given by primitive ray generators. Its dual `σ^∨`
//! lives in `M_ℚ` and is described by the inequalities `⟨pᵢ, u⟩ ≥ 0`. When
//! `σ` is not full-dimensional the dual has lineality space `σ^⊥`; internally
//! the lattice `M` is split as `M' ⊕ (σ^⊥ ∩ M)` and all pointed-cone work
//! (extreme rays, triangulation, Hilbert basis) happens in `M'`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice;

/// Default cap on the number of lattice points any enumeration may touch.
pub const DEFAULT_POINT_BUDGET: u64 = 1_000_000;

/// An element of the lattice `N` of one-parameter subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

/// An element of the character lattice `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DualVector(pub Vec<i64>);

impl LatticeVector {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Self(coords.into())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_primitive(&self) -> bool {
        lattice::gcd_slice(&self.0) == 1
    }

    /// The natural pairing `⟨self, u⟩`.
    pub fn pair(&self, u: &DualVector) -> i64 {
        lattice::dot(&self.0, &u.0)
    }
}

impl DualVector {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Self(coords.into())
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        lattice::is_zero(&self.0)
    }

    /// Ordering key: total absolute degree first, then lexicographically
    /// descending coordinates.
    pub(crate) fn graded_key(&self) -> (i64, std::cmp::Reverse<Vec<i64>>) {
        (self.0.iter().map(|x| x.abs()).sum(), std::cmp::Reverse(self.0.clone()))
    }
}

pub(crate) fn graded_sort(v: &mut [DualVector]) {
    v.sort_by_key(|a| a.graded_key());
}

impl fmt::Display for DualVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Add for &DualVector {
    type Output = DualVector;
    fn add(self, rhs: &DualVector) -> DualVector {
        DualVector(lattice::add(&self.0, &rhs.0))
    }
}

impl Sub for &DualVector {
    type Output = DualVector;
    fn sub(self, rhs: &DualVector) -> DualVector {
        DualVector(lattice::sub(&self.0, &rhs.0))
    }
}

impl Neg for &DualVector {
    type Output = DualVector;
    fn neg(self) -> DualVector {
        DualVector(self.0.iter().map(|x| -x).collect())
    }
}

impl Mul<i64> for &DualVector {
    type Output = DualVector;
    fn mul(self, k: i64) -> DualVector {
        DualVector(lattice::scale(&self.0, k))
    }
}

/// Point budget for lattice enumerations. Exceeding it is an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub points: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { points: DEFAULT_POINT_BUDGET }
    }
}

impl Budget {
    pub fn new(points: u64) -> Self {
        Self { points }
    }

    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > u128::from(self.points) {
            Err(Error::ScaleLimit { needed, budget: self.points })
        } else {
            Ok(())
        }
    }
}

/// Membership test flavor for [`RationalCone::contains`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `⟨pᵢ, v⟩ ≥ 0` for every ray.
    Closed,
    /// `⟨pᵢ, v⟩ > 0` for every ray.
    RelativeInterior,
}

/// A face of `σ`, identified by the set of rays it contains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face {
    /// Sorted indices into [`RationalCone::rays`].
    pub ray_indices: Vec<usize>,
    pub dim: usize,
}

impl Face {
    pub fn contains_ray(&self, i: usize) -> bool {
        self.ray_indices.binary_search(&i).is_ok()
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.ray_indices.iter().all(|r| other.contains_ray(*r))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ray_indices.is_empty() {
            return write!(f, "0");
        }
        write!(f, "cone(")?;
        for (i, r) in self.ray_indices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "p{}", r + 1)?;
        }
        write!(f, ")")
    }
}

/// A strongly convex rational polyhedral cone together with its dual.
#[derive(Clone, Debug)]
pub struct RationalCone {
    dim: usize,
    rays: Vec<LatticeVector>,
    dual_rays: Vec<DualVector>,
    lineality: Vec<DualVector>,
    // lattice complement of σ^⊥ ∩ M, as vectors of M
    complement: Vec<Vec<i64>>,
    // inverse of [complement | lineality], rows index coordinates
    coords_inverse: Vec<Vec<i64>>,
    faces: Vec<Face>,
    face_witness: Vec<DualVector>,
}

/// Extreme rays of the pointed cone `{c ∈ ℚʳ : rows · c ≥ 0}` (rows of rank
/// `r`), as primitive integer vectors. Every extreme ray is the kernel line
/// of some `r − 1` linearly independent tight rows.
fn pointed_extreme_rays(rows: &[Vec<i64>], r: usize) -> Vec<Vec<i64>> {
    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
    let m = rows.len();
    let k = r - 1;
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let sub: Vec<Vec<i64>> = idx.iter().map(|&i| rows[i].clone()).collect();
        let ker = lattice::rational_kernel(&sub, r);
        if ker.len() == 1 {
            let d = lattice::primitive_from_rational(&ker[0]);
            for cand in [d.clone(), lattice::scale(&d, -1)] {
                if rows.iter().all(|h| lattice::dot(h, &cand) >= 0) {
                    found.insert(cand);
                }
            }
        }
        // next k-combination of 0..m
        let mut i = k;
        loop {
            if i == 0 {
                return found.into_iter().collect();
            }
            i -= 1;
            if idx[i] < m - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            return found.into_iter().collect();
        }
    }
}

/// Close a family of index sets under pairwise intersection.
fn intersection_closure(seeds: Vec<Vec<usize>>) -> BTreeSet<Vec<usize>> {
    let mut all: BTreeSet<Vec<usize>> = seeds.into_iter().collect();
    let mut frontier: Vec<Vec<usize>> = all.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        let snapshot: Vec<Vec<usize>> = all.iter().cloned().collect();
        for a in &frontier {
            for b in &snapshot {
                let c: Vec<usize> = a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect();
                if !all.contains(&c) {
                    all.insert(c.clone());
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    all
}

impl RationalCone {
    /// Build `σ = cone(rays)` and compute `σ^∨` and the face lattice.
    ///
    /// Rays are normalized to primitive vectors. Duplicate or non-extreme
    /// generators are rejected so that ray indices stay meaningful.
    pub fn new(rays: &[Vec<i64>]) -> Result<Self> {
        let first = rays.first().ok_or(Error::Empty("rays"))?;
        let n = first.len();
        if n == 0 {
            return Err(Error::Empty("ray coordinates"));
        }
        for r in rays {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: r.len() });
            }
        }
        let mut prim: Vec<Vec<i64>> = Vec::with_capacity(rays.len());
        for (i, r) in rays.iter().enumerate() {
            if lattice::is_zero(r) {
                return Err(Error::ZeroRay(i));
            }
            let p = lattice::primitive(r);
            if prim.contains(&p) {
                return Err(Error::RedundantRay { index: i });
            }
            prim.push(p);
        }

        let (u, r) = lattice::column_echelon(&prim, n);
        let complement: Vec<Vec<i64>> = (0..r).map(|c| lattice::column(&u, c)).collect();
        let lineality_rows: Vec<Vec<i64>> = (r..n).map(|c| lattice::column(&u, c)).collect();
        let lineality_rows = lattice::row_hnf(&lineality_rows, n);
        let mut full_cols = complement.clone();
        full_cols.extend(lineality_rows.iter().cloned());
        let full = lattice::transpose(&full_cols, n);
        let coords_inverse = lattice::rational_inverse(&full)
            .expect("unimodular basis change")
            .into_iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        assert!(x.is_integer(), "basis change is not unimodular");
                        num_traits::ToPrimitive::to_i64(&x.to_integer()).expect("overflow")
                    })
                    .collect()
            })
            .collect();

        let reduced: Vec<Vec<i64>> =
            prim.iter().map(|p| complement.iter().map(|c| lattice::dot(p, c)).collect()).collect();
        let ext = pointed_extreme_rays(&reduced, r);
        if lattice::rank(&ext, r) != r {
            return Err(Error::NotStronglyConvex);
        }
        let inner: Vec<i64> = (0..r).map(|k| ext.iter().map(|e| e[k]).sum()).collect();
        if reduced.iter().any(|h| lattice::dot(h, &inner) <= 0) {
            return Err(Error::NotStronglyConvex);
        }

        let to_m = |c: &[i64]| -> Vec<i64> {
            let mut v = vec![0; n];
            for (k, ck) in c.iter().enumerate() {
                for i in 0..n {
                    v[i] += ck * complement[k][i];
                }
            }
            v
        };
        let mut dual_rays: Vec<DualVector> = ext.iter().map(|c| DualVector(to_m(c))).collect();
        graded_sort(&mut dual_rays);
        let lineality: Vec<DualVector> = lineality_rows.into_iter().map(DualVector).collect();

        let rays: Vec<LatticeVector> = prim.into_iter().map(LatticeVector).collect();

        // each ray must be extreme: its tight dual constraints have rank n - 1
        for (i, p) in rays.iter().enumerate() {
            let mut tight: Vec<Vec<i64>> =
                dual_rays.iter().filter(|g| p.pair(g) == 0).map(|g| g.0.clone()).collect();
            tight.extend(lineality.iter().map(|l| l.0.clone()));
            if lattice::rank(&tight, n) != n - 1 {
                return Err(Error::RedundantRay { index: i });
            }
        }

        let mut cone = Self {
            dim: n,
            rays,
            dual_rays,
            lineality,
            complement,
            coords_inverse,
            faces: Vec::new(),
            face_witness: Vec::new(),
        };
        cone.build_faces();
        Ok(cone)
    }

    fn vanishing_rays(&self, u: &DualVector) -> Vec<usize> {
        (0..self.rays.len()).filter(|&i| self.rays[i].pair(u) == 0).collect()
    }

    fn build_faces(&mut self) {
        let mut seeds = vec![(0..self.rays.len()).collect::<Vec<_>>()];
        seeds.extend(self.dual_rays.iter().map(|g| self.vanishing_rays(g)));
        let sets = intersection_closure(seeds);
        let ray_rows: Vec<Vec<i64>> = self.rays.iter().map(|r| r.0.clone()).collect();
        let mut faces: Vec<Face> = sets
            .into_iter()
            .map(|s| {
                let rows: Vec<Vec<i64>> = s.iter().map(|&i| ray_rows[i].clone()).collect();
                let dim = lattice::rank(&rows, self.dim);
                Face { ray_indices: s, dim }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.ray_indices).cmp(&(b.dim, &b.ray_indices)));
        let witness: Vec<DualVector> = faces
            .iter()
            .map(|f| {
                let mut w = DualVector::zero(self.dim);
                for g in &self.dual_rays {
                    if f.ray_indices.iter().all(|&i| self.rays[i].pair(g) == 0) {
                        w = &w + g;
                    }
                }
                debug_assert_eq!(self.vanishing_rays(&w), f.ray_indices);
                w
            })
            .collect();
        self.faces = faces;
        self.face_witness = witness;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    /// Extreme rays of `σ^∨` modulo its lineality space `σ^⊥`.
    pub fn dual_rays(&self) -> &[DualVector] {
        &self.dual_rays
    }

    /// Inner facet normals of `σ`; these coincide with the dual rays.
    pub fn facet_normals(&self) -> &[DualVector] {
        &self.dual_rays
    }

    /// Lattice basis of `σ^⊥ ∩ M`; empty iff `σ` is full-dimensional.
    pub fn lineality(&self) -> &[DualVector] {
        &self.lineality
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Faces of `σ`, sorted by dimension and then by ray set.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// A vector `u ∈ σ^∨` with `σ ∩ u^⊥ = face`.
    pub fn face_witness(&self, face: &Face) -> Option<&DualVector> {
        self.face_index(face).map(|i| &self.face_witness[i])
    }

    pub fn face_index(&self, face: &Face) -> Option<usize> {
        self.faces.iter().position(|f| f.ray_indices == face.ray_indices)
    }

    /// The face whose ray set is exactly `rays` (in any order).
    pub fn face_with_rays(&self, rays: &[usize]) -> Option<&Face> {
        let mut sorted = rays.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.faces.iter().find(|f| f.ray_indices == sorted)
    }

    pub fn zero_face(&self) -> &Face {
        &self.faces[0]
    }

    pub fn full_face(&self) -> &Face {
        self.faces.last().expect("face lattice is never empty")
    }

    pub fn ray_face(&self, i: usize) -> Option<&Face> {
        self.face_with_rays(&[i])
    }

    fn check_dim(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(())
    }

    /// Membership of `v` in `σ^∨`.
    pub fn contains(&self, v: &DualVector, mode: Membership) -> Result<bool> {
        self.check_dim(&v.0)?;
        Ok(match mode {
            Membership::Closed => self.rays.iter().all(|p| p.pair(v) >= 0),
            Membership::RelativeInterior => self.rays.iter().all(|p| p.pair(v) > 0),
        })
    }

    /// Whether `v` lies in the relative interior of the dual face
    /// `face^⊥ ∩ σ^∨`: zero on the face's rays, positive on all others.
    pub fn in_dual_face_interior(&self, face: &Face, v: &DualVector) -> Result<bool> {
        self.check_dim(&v.0)?;
        Ok(self.rays.iter().enumerate().all(|(i, p)| {
            let x = p.pair(v);
            if face.contains_ray(i) {
                x == 0
            } else {
                x > 0
            }
        }))
    }

    /// Whether `v ∈ face^⊥`.
    pub fn in_perp(&self, face: &Face, v: &DualVector) -> bool {
        face.ray_indices.iter().all(|&i| self.rays[i].pair(v) == 0)
    }

    /// Dimension of the dual face `face^⊥ ∩ σ^∨`.
    pub fn dual_face_dim(&self, face: &Face) -> usize {
        let mut rows: Vec<Vec<i64>> =
            self.dual_rays.iter().filter(|g| self.in_perp(face, g)).map(|g| g.0.clone()).collect();
        rows.extend(self.lineality.iter().map(|l| l.0.clone()));
        lattice::rank(&rows, self.dim)
    }

    /// Hermite-reduced lattice basis of `face^⊥ ∩ M`.
    pub fn perp_lattice_basis(&self, face: &Face) -> Vec<DualVector> {
        let rows: Vec<Vec<i64>> = face.ray_indices.iter().map(|&i| self.rays[i].0.clone()).collect();
        lattice::integer_kernel(&rows, self.dim).into_iter().map(DualVector).collect()
    }

    /// Coordinates of `v` in the split `M' ⊕ (σ^⊥ ∩ M)`.
    fn split_coords(&self, v: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let all = lattice::mat_vec(&self.coords_inverse, v);
        let r = self.complement.len();
        (all[..r].to_vec(), all[r..].to_vec())
    }

    fn from_complement(&self, c: &[i64]) -> Vec<i64> {
        let mut v = vec![0; self.dim];
        for (k, ck) in c.iter().enumerate() {
            for i in 0..self.dim {
                v[i] += ck * self.complement[k][i];
            }
        }
        v
    }

    fn reduced_constraints(&self) -> Vec<Vec<i64>> {
        self.rays
            .iter()
            .map(|p| self.complement.iter().map(|c| lattice::dot(&p.0, c)).collect())
            .collect()
    }

    /// The Hilbert basis of `S_σ = σ^∨ ∩ M` with the default point budget.
    pub fn hilbert_basis(&self) -> Result<HilbertBasis> {
        self.hilbert_basis_with_budget(Budget::default())
    }

    /// The Hilbert basis of `S_σ`, computed by a pulling triangulation of the
    /// pointed part of `σ^∨`, enumeration of each simplicial cone's
    /// fundamental parallelepiped and removal of reducible candidates.
    ///
    /// When `σ` is not full-dimensional the result also carries `±l` for a
    /// lattice basis `l` of `σ^⊥ ∩ M`; those are units of the semigroup.
    pub fn hilbert_basis_with_budget(&self, budget: Budget) -> Result<HilbertBasis> {
        let r = self.complement.len();
        let h = self.reduced_constraints();
        let ext: Vec<Vec<i64>> = self.dual_rays.iter().map(|g| self.split_coords(&g.0).0).collect();

        // faces of the reduced dual cone, as sets of extreme-ray indices
        let mut seeds = vec![(0..ext.len()).collect::<Vec<_>>()];
        for row in &h {
            seeds.push((0..ext.len()).filter(|&k| lattice::dot(row, &ext[k]) == 0).collect());
        }
        let dual_faces: Vec<(Vec<usize>, usize)> = intersection_closure(seeds)
            .into_iter()
            .map(|s| {
                let rows: Vec<Vec<i64>> = s.iter().map(|&k| ext[k].clone()).collect();
                let d = lattice::rank(&rows, r);
                (s, d)
            })
            .collect();

        let all: Vec<usize> = (0..ext.len()).collect();
        let simplices = pulling_triangulation(&all, r, &dual_faces);

        let in_cone = |c: &[i64]| h.iter().all(|row| lattice::dot(row, c) >= 0);
        let mut candidates: BTreeSet<Vec<i64>> = ext.iter().cloned().collect();
        let mut spent: u128 = 0;
        for simplex in &simplices {
            // columns are the simplex rays
            let g: Vec<Vec<i64>> = (0..r).map(|i| simplex.iter().map(|&k| ext[k][i]).collect()).collect();
            let (det, adj) = lattice::scaled_inverse(&g).expect("simplex rays are independent");
            spent += det as u128;
            budget.check(spent)?;
            for num in parallelepiped_numerators(det, &adj, r) {
                if num.iter().all(|&x| x == 0) {
                    continue;
                }
                let p: Vec<i64> = g.iter().map(|row| lattice::dot(row, &num) / det).collect();
                debug_assert!(in_cone(&p));
                candidates.insert(p);
            }
        }
        let candidates: Vec<Vec<i64>> = candidates.into_iter().collect();
        let irreducible: Vec<Vec<i64>> = candidates
            .iter()
            .filter(|v| {
                !candidates.iter().any(|c| c != *v && in_cone(&lattice::sub(v, c)))
            })
            .cloned()
            .collect();

        let mut generators: Vec<DualVector> =
            irreducible.iter().map(|c| DualVector(self.from_complement(c))).collect();
        for l in &self.lineality {
            generators.push(l.clone());
            generators.push(-l);
        }
        graded_sort(&mut generators);

        let pointed: Vec<usize> = (0..generators.len())
            .filter(|&i| !self.lineality.iter().any(|l| generators[i] == *l || generators[i] == -l))
            .collect();
        let units: Vec<(usize, usize)> = self
            .lineality
            .iter()
            .map(|l| {
                let plus = generators.iter().position(|g| g == l).unwrap();
                let minus = generators.iter().position(|g| *g == -l).unwrap();
                (plus, minus)
            })
            .collect();
        let pointed_coords: Vec<Vec<i64>> = pointed.iter().map(|&i| self.split_coords(&generators[i].0).0).collect();

        Ok(HilbertBasis {
            dim: self.dim,
            generators,
            pointed,
            pointed_coords,
            units,
            rays: self.rays.clone(),
            constraints: h,
            coords_inverse: self.coords_inverse.clone(),
            rank: r,
        })
    }
}

/// `σ = cone(rays)` with its dual cone and face lattice.
pub fn dual_cone(rays: &[LatticeVector]) -> Result<RationalCone> {
    let raw: Vec<Vec<i64>> = rays.iter().map(|r| r.0.clone()).collect();
    RationalCone::new(&raw)
}

/// All faces of `σ`, sorted by dimension.
pub fn face_lattice(cone: &RationalCone) -> Vec<Face> {
    cone.faces().to_vec()
}

/// Pulling triangulation of the face `face` (of dimension `dim`) of a
/// pointed cone, given the full list of its faces as extreme-ray index sets.
fn pulling_triangulation(face: &[usize], dim: usize, faces: &[(Vec<usize>, usize)]) -> Vec<Vec<usize>> {
    if face.len() == dim {
        return vec![face.to_vec()];
    }
    let apex = face[0];
    let mut out = Vec::new();
    for (sub, d) in faces {
        if *d + 1 == dim && !sub.contains(&apex) && sub.iter().all(|k| face.contains(k)) {
            for mut s in pulling_triangulation(sub, dim - 1, faces) {
                s.push(apex);
                s.sort_unstable();
                out.push(s);
            }
        }
    }
    out
}

/// All `λ·det` numerator vectors of the fundamental parallelepiped of a
/// simplicial cone, given `det = |det G|` and `adj = det · G⁻¹`. They form
/// the group `ℤʳ / Gℤʳ` and are found by breadth-first closure under the
/// images of the standard basis.
fn parallelepiped_numerators(det: i64, adj: &[Vec<i64>], r: usize) -> Vec<Vec<i64>> {
    let steps: Vec<Vec<i64>> = (0..r).map(|j| adj.iter().map(|row| row[j].rem_euclid(det)).collect()).collect();
    let start = vec![0i64; r];
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(cur) = queue.pop_front() {
        for s in &steps {
            let next: Vec<i64> = cur.iter().zip(s).map(|(a, b)| (a + b).rem_euclid(det)).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        out.push(cur);
    }
    out
}

/// Multiplicity of each Hilbert generator in a decomposition of a
/// semigroup element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    pub multiplicities: Vec<u32>,
}

impl Factorization {
    pub fn degree(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    /// `Σ mᵢ · gᵢ`.
    pub fn vector(&self, basis: &HilbertBasis) -> DualVector {
        let mut v = vec![0; basis.dim];
        for (g, &m) in basis.generators.iter().zip(&self.multiplicities) {
            for (x, y) in v.iter_mut().zip(&g.0) {
                *x += i64::from(m) * y;
            }
        }
        DualVector(v)
    }
}

/// Minimal generating set of `S_σ`, in graded order.
#[derive(Clone, Debug)]
pub struct HilbertBasis {
    dim: usize,
    generators: Vec<DualVector>,
    pointed: Vec<usize>,
    pointed_coords: Vec<Vec<i64>>,
    units: Vec<(usize, usize)>,
    rays: Vec<LatticeVector>,
    constraints: Vec<Vec<i64>>,
    coords_inverse: Vec<Vec<i64>>,
    rank: usize,
}

impl HilbertBasis {
    pub fn generators(&self) -> &[DualVector] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index_of(&self, v: &DualVector) -> Option<usize> {
        self.generators.iter().position(|g| g == v)
    }

    /// Pairs `(+l, −l)` of unit generators spanning `σ^⊥ ∩ M`.
    pub fn unit_pairs(&self) -> &[(usize, usize)] {
        &self.units
    }

    pub fn in_semigroup(&self, v: &DualVector) -> bool {
        v.dim() == self.dim && self.rays.iter().all(|p| p.pair(v) >= 0)
    }

    /// One factorization of `v`, trying generators in index order.
    pub fn factorize(&self, v: &DualVector) -> Result<Factorization> {
        let order: Vec<usize> = (0..self.pointed.len()).collect();
        self.factorize_in_order(v, &order)
    }

    /// One factorization of `v`, trying pointed generators in the given
    /// order (a permutation of `0..#pointed generators`).
    ///
    /// `S_σ` is saturated, so any generator `g` with `v − g ∈ σ^∨` leaves a
    /// remainder that still factors; the search never backtracks.
    pub fn factorize_in_order(&self, v: &DualVector, order: &[usize]) -> Result<Factorization> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.dim() });
        }
        if !self.in_semigroup(v) {
            return Err(Error::NotInSemigroup(v.0.clone()));
        }
        let mut mult = vec![0u32; self.generators.len()];
        let all = lattice::mat_vec(&self.coords_inverse, &v.0);
        let (mut rem, unit_part) = (all[..self.rank].to_vec(), &all[self.rank..]);
        for (k, &d) in unit_part.iter().enumerate() {
            let (plus, minus) = self.units[k];
            let idx = if d >= 0 { plus } else { minus };
            mult[idx] += u32::try_from(d.unsigned_abs()).expect("multiplicity overflow");
        }
        let in_cone = |c: &[i64]| self.constraints.iter().all(|row| lattice::dot(row, c) >= 0);
        while !lattice::is_zero(&rem) {
            let step = order.iter().copied().find(|&k| in_cone(&lattice::sub(&rem, &self.pointed_coords[k])));
            let Some(k) = step else {
                return Err(Error::NotInSemigroup(v.0.clone()));
            };
            // take as many copies as fit
            let g = &self.pointed_coords[k];
            let mut next = lattice::sub(&rem, g);
            mult[self.pointed[k]] += 1;
            loop {
                let again = lattice::sub(&next, g);
                if in_cone(&again) {
                    next = again;
                    mult[self.pointed[k]] += 1;
                } else {
                    break;
                }
            }
            rem = next;
        }
        Ok(Factorization { multiplicities: mult })
    }

    /// Number of pointed (non-unit) generators.
    pub fn pointed_len(&self) -> usize {
        self.pointed.len()
    }
}
