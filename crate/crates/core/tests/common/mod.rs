#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torimon::{Budget, DualVector, LatticeVector, MonoidStructure, RationalCone, ToricPoint, ToricVariety};

pub fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn pt(v: &[i64]) -> ToricPoint {
    ToricPoint::from_ints(v)
}

pub fn octant(n: usize) -> RationalCone {
    let rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    RationalCone::new(&rays).unwrap()
}

pub fn quadratic_cone() -> RationalCone {
    RationalCone::new(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]).unwrap()
}

/// The monoid on affine `n`-space with product
/// `(x₁y₁, …, x_{n−1}y_{n−1}, x^a·y_n + y^b·x_n)`.
pub fn affine(a: &[i64], b: &[i64]) -> MonoidStructure {
    let n = a.len() + 1;
    let mut e1 = b.to_vec();
    e1.push(-1);
    let mut e2 = a.to_vec();
    e2.push(-1);
    MonoidStructure::build(octant(n), n - 1, DualVector(e1), DualVector(e2), Budget::default()).unwrap()
}

/// Quadratic cone monoid with `e₁ = (−1,k₁,l₁)`, `e₂ = (−1,k₂,l₂)` on the ray `p₁`.
pub fn quadratic(k1: i64, l1: i64, k2: i64, l2: i64) -> MonoidStructure {
    MonoidStructure::build(
        quadratic_cone(),
        0,
        DualVector(vec![-1, k1, l1]),
        DualVector(vec![-1, k2, l2]),
        Budget::default(),
    )
    .unwrap()
}

fn pow(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

fn monomial(x: &[BigRational], exps: &[i64]) -> BigRational {
    x.iter().zip(exps).fold(BigRational::one(), |acc, (v, &e)| acc * pow(v, e))
}

/// Closed-form product on affine space.
pub fn affine_product(a: &[i64], b: &[i64], x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
    let n = x.len();
    let mut out: Vec<BigRational> = (0..n - 1).map(|i| &x[i] * &y[i]).collect();
    out.push(monomial(&x[..n - 1], a) * &y[n - 1] + monomial(&y[..n - 1], b) * &x[n - 1]);
    out
}

/// Closed-form product on the quadratic cone `vw = zt`, coordinates `(v, w, z, t)`.
pub fn quadratic_product(k1: i64, l1: i64, k2: i64, l2: i64, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
    let (vx, wx, zx, tx) = (&x[0], &x[1], &x[2], &x[3]);
    let (vy, wy, zy, ty) = (&y[0], &y[1], &y[2], &y[3]);
    vec![
        vx * pow(wy, k1) * pow(zy, l1) + vy * pow(wx, k2) * pow(zx, l2),
        wx * wy,
        zx * zy,
        tx * pow(wy, k1 + 1) * pow(zy, l1 - 1) + ty * pow(wx, k2 + 1) * pow(zx, l2 - 1),
    ]
}

pub struct Rng8(pub ChaCha8Rng);

impl Rng8 {
    pub fn new(seed: u64) -> Self {
        Rng8(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn rational(&mut self) -> BigRational {
        r(self.0.gen_range(-9..=9), self.0.gen_range(1..=3))
    }

    pub fn nonzero(&mut self) -> BigRational {
        loop {
            let q = self.rational();
            if !q.is_zero() {
                return q;
            }
        }
    }

    pub fn affine_point(&mut self, n: usize) -> Vec<BigRational> {
        (0..n)
            .map(|_| if self.0.gen_bool(0.15) { BigRational::zero() } else { self.rational() })
            .collect()
    }

    /// A point on `vw = zt`: either `(v, w, z, vw/z)` or one with `z = 0`.
    pub fn quadric_point(&mut self) -> Vec<BigRational> {
        let v = self.rational();
        let w = self.rational();
        if self.0.gen_bool(0.2) {
            let t = self.rational();
            if v.is_zero() || w.is_zero() {
                return vec![v, w, BigRational::zero(), t];
            }
            return vec![v, BigRational::zero(), BigRational::zero(), t];
        }
        let z = self.nonzero();
        let t = &v * &w / &z;
        vec![v, w, z, t]
    }
}

/// Strongly convex, full-dimensional cones with ray coordinates in
/// `[−3, 3]`, drawn deterministically.
pub fn random_cones(count: usize, seed: u64) -> Vec<RationalCone> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(2..=3);
        let k = rng.gen_range(n..=n + 2);
        let rays: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let rays: Vec<Vec<i64>> = rays.into_iter().map(|v| primitive(&v)).filter(|v| v.iter().any(|&x| x != 0)).collect();
        if let Ok(c) = RationalCone::new(&rays) {
            if c.is_full_dimensional() {
                out.push(c);
            }
        }
    }
    out
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Rank over the rationals by Gaussian elimination.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rk = 0;
    for c in 0..cols {
        let Some(p) = (rk..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rk, p);
        for i in 0..m.len() {
            if i != rk && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rk][c];
                for j in 0..cols {
                    let d = &f * &m[rk][j];
                    m[i][j] -= d;
                }
            }
        }
        rk += 1;
    }
    rk
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn in_dual(c: &RationalCone, u: &[i64]) -> bool {
    c.rays().iter().all(|p| dot(&p.0, u) >= 0)
}

fn sorted(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    v.sort();
    v
}

/// `dual_cone` applied to the dual rays gives back the rays.
pub fn check_duality(c: &RationalCone) -> Result<(), String> {
    for u in c.dual_rays() {
        if !in_dual(c, &u.0) {
            return Err(format!("dual ray {u} not in the dual cone"));
        }
        let tight: Vec<Vec<i64>> = c.rays().iter().filter(|p| dot(&p.0, &u.0) == 0).map(|p| p.0.clone()).collect();
        if rank(&tight) != c.dim() - 1 {
            return Err(format!("dual ray {u} is not extreme"));
        }
    }
    let as_n: Vec<LatticeVector> = c.dual_rays().iter().map(|u| LatticeVector(u.0.clone())).collect();
    let back = torimon::cones::dual_cone(&as_n).map_err(|e| e.to_string())?;
    let got = sorted(back.dual_rays().iter().map(|u| u.0.clone()).collect());
    let want = sorted(c.rays().iter().map(|p| p.0.clone()).collect());
    if got != want {
        return Err(format!("round trip gave {got:?}, expected {want:?}"));
    }
    Ok(())
}

/// `dim τ + dim(τ^⊥ ∩ σ^∨) = n` for every face, with both dimensions
/// recomputed here from ranks.
pub fn check_face_dims(c: &RationalCone) -> Result<(), String> {
    let n = c.dim();
    for f in c.faces() {
        let rays: Vec<Vec<i64>> = f.ray_indices.iter().map(|&i| c.rays()[i].0.clone()).collect();
        let dim_tau = rank(&rays);
        let dual: Vec<Vec<i64>> = c
            .dual_rays()
            .iter()
            .filter(|u| rays.iter().all(|p| dot(p, &u.0) == 0))
            .map(|u| u.0.clone())
            .collect();
        let dim_dual = rank(&dual);
        if dim_tau != f.dim || dim_dual != c.dual_face_dim(f) || dim_tau + dim_dual != n {
            return Err(format!("face {f}: dim {dim_tau} (reported {}), dual face dim {dim_dual}", f.dim));
        }
    }
    Ok(())
}

fn box_points(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (-bound..=bound).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Generators lie in `S_σ`, no generator minus another lies in `S_σ`, and
/// every lattice point of `σ^∨` in the box `[−bound, bound]^n` factors.
pub fn check_hilbert(c: &RationalCone, bound: i64) -> Result<(), String> {
    let hb = c.hilbert_basis().map_err(|e| e.to_string())?;
    let gens = hb.generators();
    for g in gens {
        if g.is_zero() || !in_dual(c, &g.0) {
            return Err(format!("generator {g} not a nonzero element of the semigroup"));
        }
    }
    for (i, g) in gens.iter().enumerate() {
        for (j, h) in gens.iter().enumerate() {
            if i != j && in_dual(c, &(g - h).0) {
                return Err(format!("{g} = {h} + ({})", g - h));
            }
        }
    }
    for v in box_points(c.dim(), bound) {
        if !in_dual(c, &v) {
            continue;
        }
        let v = DualVector(v);
        let f = hb.factorize(&v).map_err(|e| format!("{v}: {e}"))?;
        if f.vector(&hb) != v {
            return Err(format!("factorization of {v} sums to {}", f.vector(&hb)));
        }
    }
    Ok(())
}

/// Evaluating `χ^v` on orbit points does not depend on the factorization.
pub fn check_factorization_independence(c: &RationalCone, seed: u64, samples: usize) -> Result<(), String> {
    let variety = ToricVariety::new(c.clone(), Budget::default()).map_err(|e| e.to_string())?;
    let hb = variety.basis().clone();
    let mut rng = Rng8::new(seed);
    for _ in 0..samples {
        let face = c.faces()[rng.0.gen_range(0..c.faces().len())].clone();
        let k = c.perp_lattice_basis(&face).len();
        let torus: Vec<BigRational> = (0..k).map(|_| rng.nonzero()).collect();
        let x = variety.orbit_point(&face, &torus).map_err(|e| e.to_string())?;
        let terms = rng.0.gen_range(1..=4);
        let mut v = DualVector::zero(c.dim());
        for _ in 0..terms {
            v = &v + &hb.generators()[rng.0.gen_range(0..hb.pointed_len())];
        }
        let mut order: Vec<usize> = (0..hb.pointed_len()).collect();
        order.shuffle(&mut rng.0);
        let f1 = hb.factorize(&v).map_err(|e| e.to_string())?;
        let f2 = hb.factorize_in_order(&v, &order).map_err(|e| e.to_string())?;
        if f2.vector(&hb) != v {
            return Err(format!("reordered factorization of {v} is wrong"));
        }
        let a = variety.evaluate_factorization(&x, &f1);
        let b = variety.evaluate_factorization(&x, &f2);
        if a != b {
            return Err(format!("χ^{v} at {x}: {a} vs {b}"));
        }
        // direct product of generator values with the chosen multiplicities
        let direct = f2
            .multiplicities
            .iter()
            .enumerate()
            .fold(BigRational::one(), |acc, (i, &m)| acc * num_traits::pow(x.values[i].clone(), m as usize));
        if direct != b {
            return Err(format!("χ^{v} at {x}: direct {direct} vs {b}"));
        }
    }
    Ok(())
}
