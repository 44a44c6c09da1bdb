//! Acceptance run: one PASS/FAIL line per criterion, exact arithmetic
//! throughout. Runs without the libtest harness so the lines always show.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use common::*;
use torimon::classify::{center_equations, conjugate, idempotents, idempotents_with, is_central, is_idempotent, zero, ZeroReason};
use torimon::demazure::enumerate_roots;
use torimon::oracle::{
    check_associativity, check_group_axioms, differential_example_formulas, grid_idempotents, predicted_on_grid,
    ExampleFormula, Sampler,
};
use torimon::{Budget, DualVector, Execution, MonoidStructure, ToricPoint};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn vals(p: &ToricPoint) -> Vec<BigRational> {
    p.values.clone()
}

fn set_of(points: &[ToricPoint]) -> BTreeSet<Vec<BigRational>> {
    points.iter().map(vals).collect()
}

fn ints(rows: &[&[i64]]) -> BTreeSet<Vec<BigRational>> {
    rows.iter().map(|r| vals(&pt(r))).collect()
}

fn grid_points(values: &[BigRational], n: usize) -> Vec<Vec<BigRational>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| values.iter().map(move |x| [v.clone(), vec![x.clone()]].concat())).collect();
    }
    out
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn plane(a: i64) -> MonoidStructure {
    MonoidStructure::build(octant(2), 1, DualVector(vec![a, -1]), DualVector(vec![0, -1]), Budget::default()).unwrap()
}

/// `x₁y₁, x₂y₂, x₃y₃, x₃^a·y₄ + y₂^b·y₃^c·x₄`.
fn affine4(a: i64, b: i64, c: i64) -> MonoidStructure {
    affine(&[0, 0, a], &[0, b, c])
}

const A4_PARAMS: [(i64, i64, i64); 3] = [(1, 1, 1), (2, 1, 1), (1, 1, 2)];

const A4_ISOLATED: [[i64; 4]; 6] = [[0, 0, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [1, 0, 0, 0], [1, 1, 0, 0], [1, 1, 1, 0]];

fn criterion_1() -> Outcome {
    let grid = vec![r(-1, 1), r(0, 1), r(1, 2), r(1, 1), r(2, 1)];
    let mut found = 0;
    for a in 1..=3 {
        let m = plane(a);
        let set = idempotents(&m).map_err(err)?;
        ensure!(set.isolated.len() == 1 && set.isolated[0].point == pt(&[1, 0]), "a={a}: isolated {:?}", set.isolated);
        ensure!(set.lines.len() == 1, "a={a}: {} lines", set.lines.len());
        let line = &set.lines[0];
        ensure!(line.closure_point == pt(&[0, 0]), "a={a}: closure point {}", line.closure_point);
        for s in [r(-2, 1), r(1, 2), r(3, 1)] {
            let p = line.point_at(&s);
            ensure!(p.values == vec![BigRational::zero(), s.clone()], "a={a}: line at {s} is {p}");
        }

        // the product here is (x₁y₁, y₁^a·x₂ + y₂), so x*x = x iff x₁² = x₁ and x₁^a·x₂ = 0
        let brute: BTreeSet<Vec<BigRational>> =
            grid_points(&grid, 2).into_iter().filter(|x| affine_product(&[0], &[a], x, x) == *x).collect();
        let literal: BTreeSet<Vec<BigRational>> =
            grid.iter().map(|g| vec![BigRational::zero(), g.clone()]).chain([vec![r(1, 1), r(0, 1)]]).collect();
        ensure!(brute == literal, "a={a}: brute force {brute:?}");
        for exec in [Execution::Sequential, Execution::Parallel] {
            let g = grid_idempotents(&m, &grid, exec).map_err(err)?;
            ensure!(set_of(&g) == literal, "a={a}: grid oracle {g:?}");
        }
        let predicted = predicted_on_grid(&m, &set, &grid).map_err(err)?;
        ensure!(set_of(&predicted) == literal, "a={a}: predicted {predicted:?}");
        found += literal.len();
    }
    Ok(format!("a=1,2,3: line (0,s) closing at (0,0), point (1,0); {found} grid idempotents match"))
}

fn criterion_2() -> Outcome {
    let grid = vec![r(0, 1), r(1, 1)];
    for (a, b, c) in A4_PARAMS {
        let m = affine4(a, b, c);
        let set = idempotents(&m).map_err(err)?;
        let iso: Vec<ToricPoint> = set.isolated.iter().map(|i| i.point.clone()).collect();
        let want: Vec<&[i64]> = A4_ISOLATED.iter().map(|p| &p[..]).collect();
        ensure!(iso.len() == 6 && set_of(&iso) == ints(&want), "({a},{b},{c}): isolated {iso:?}");
        ensure!(set.lines.len() == 2, "({a},{b},{c}): {} lines", set.lines.len());
        let mut bases = BTreeSet::new();
        for l in &set.lines {
            let x1 = l.point_at(&BigRational::one()).values[0].clone();
            bases.insert(x1.clone());
            for s in [r(-1, 1), r(2, 1), r(1, 3), r(0, 1)] {
                let want = vec![x1.clone(), r(0, 1), r(1, 1), s.clone()];
                ensure!(l.point_at(&s).values == want, "({a},{b},{c}): line point at {s}");
            }
            ensure!(l.closure_point.values == vec![x1.clone(), r(0, 1), r(1, 1), r(0, 1)], "closure {}", l.closure_point);
        }
        ensure!(bases == [r(0, 1), r(1, 1)].into_iter().collect(), "({a},{b},{c}): line bases {bases:?}");

        let brute: BTreeSet<Vec<BigRational>> = grid_points(&grid, 4)
            .into_iter()
            .filter(|x| affine_product(&[0, 0, a], &[0, b, c], x, x) == *x)
            .collect();
        let g = grid_idempotents(&m, &grid, Execution::default()).map_err(err)?;
        let predicted = predicted_on_grid(&m, &set, &grid).map_err(err)?;
        ensure!(set_of(&g) == brute, "({a},{b},{c}): grid oracle {g:?} vs brute force {brute:?}");
        ensure!(set_of(&predicted) == brute, "({a},{b},{c}): predicted {predicted:?}");
        if (a, b, c) == (1, 1, 1) {
            let mut want = want.clone();
            want.extend([&[0, 0, 1, 0][..], &[0, 0, 1, 1], &[1, 0, 1, 0], &[1, 0, 1, 1]]);
            ensure!(brute == ints(&want), "a=b=c=1: grid set {brute:?}");
        }
    }
    Ok("3 parameter choices: lines (0,0,1,s), (1,0,1,s) and the six points; {0,1}^4 grid matches".into())
}

fn criterion_3() -> Outcome {
    let mut rng = Rng8::new(3);
    for (a, b, c) in A4_PARAMS {
        let m = affine4(a, b, c);
        let z = zero(&m).map_err(err)?;
        ensure!(z.exists && z.point == Some(pt(&[0, 0, 0, 0])), "({a},{b},{c}): zero {z:?}");
        let o = vec![BigRational::zero(); 4];
        for _ in 0..20 {
            let y = rng.affine_point(4);
            ensure!(affine_product(&[0, 0, a], &[0, b, c], &o, &y) == o, "0*y != 0");
            ensure!(affine_product(&[0, 0, a], &[0, b, c], &y, &o) == o, "y*0 != 0");
        }
    }
    let mut cases = 0;
    for n in 2..=4 {
        let ones = vec![1i64; n - 1];
        let zeros = vec![0i64; n - 1];
        let mut mixed = zeros.clone();
        mixed[0] = 2;
        // (a, b, expected reasons); e₁ = (b, −1), e₂ = (a, −1)
        let table: Vec<(Vec<i64>, Vec<i64>, Vec<ZeroReason>)> = vec![
            (ones.clone(), zeros.clone(), vec![ZeroReason::NegE1InDual]),
            (zeros.clone(), mixed.clone(), vec![ZeroReason::NegE2InDual]),
            (zeros.clone(), zeros.clone(), vec![ZeroReason::NegE1InDual, ZeroReason::NegE2InDual]),
            (mixed.clone(), ones.clone(), vec![]),
        ];
        for (a, b, reasons) in table {
            let m = affine(&a, &b);
            let z = zero(&m).map_err(err)?;
            ensure!(z.reasons == reasons, "n={n} a={a:?} b={b:?}: reasons {:?}", z.reasons);
            ensure!(z.exists == reasons.is_empty(), "n={n} a={a:?} b={b:?}: exists={}", z.exists);
            let o = vec![BigRational::zero(); n];
            let mut y = vec![BigRational::one(); n];
            y[n - 1] = r(5, 1);
            let absorbs = affine_product(&a, &b, &o, &y) == o && affine_product(&a, &b, &y, &o) == o;
            ensure!(absorbs == z.exists, "n={n} a={a:?} b={b:?}: origin absorbs y={absorbs}");
            cases += 1;
        }
    }
    let roots = enumerate_roots(&quadratic_cone(), 0, 2, Budget::default()).map_err(err)?;
    for e1 in &roots {
        for e2 in &roots {
            let m = MonoidStructure::build(quadratic_cone(), 0, e1.e.clone(), e2.e.clone(), Budget::default()).map_err(err)?;
            let z = zero(&m).map_err(err)?;
            ensure!(z.exists && z.point == Some(pt(&[0, 0, 0, 0])), "quadratic {} {}: {z:?}", e1.e, e2.e);
        }
    }
    Ok(format!(
        "affine 4-space zero at origin; {cases} affine-space cases with expected reasons; {} quadratic-cone root pairs",
        roots.len() * roots.len()
    ))
}

fn criterion_4() -> Outcome {
    let params: Vec<(Vec<i64>, Vec<i64>)> = vec![
        (vec![1], vec![0]),
        (vec![2], vec![1]),
        (vec![0], vec![3]),
        (vec![1, 0], vec![0, 2]),
        (vec![2, 1], vec![1, 1]),
        (vec![0, 0], vec![1, 2]),
        (vec![1, 0, 2], vec![0, 1, 1]),
        (vec![0, 0, 1], vec![2, 0, 0]),
        (vec![3, 1, 0], vec![0, 0, 0]),
    ];
    let mut rng = Rng8::new(4);
    let mut probes = 0;
    for (a, b) in &params {
        let n = a.len() + 1;
        let m = affine(a, b);
        let c = center_equations(&m).map_err(err)?;
        ensure!(!c.trivial, "a={a:?} b={b:?}: trivial");
        ensure!(c.closure_generators == vec![n - 1], "a={a:?} b={b:?}: closure {:?}", c.closure_generators);
        ensure!(c.slice_generators == vec![DualVector::unit(n, n - 1)], "slice {:?}", c.slice_generators);
        ensure!(c.binomials.len() == 1, "{} binomials", c.binomials.len());
        let bin = &c.binomials[0];
        let ext = |v: &Vec<i64>| v.iter().map(|&x| x as u32).chain([0]).collect::<Vec<u32>>();
        let got: BTreeSet<Vec<u32>> =
            [bin.lhs_factorization.multiplicities.clone(), bin.rhs_factorization.multiplicities.clone()].into();
        ensure!(got == [ext(a), ext(b)].into(), "a={a:?} b={b:?}: binomial sides {got:?}");
        let cert = c.certificate.as_ref().ok_or("no certificate")?;
        ensure!(cert.uncovered.is_empty() && cert.dominated.is_empty(), "certificate {cert:?}");

        // central iff x commutes with sampled y under the closed formula
        let ys: Vec<Vec<BigRational>> = (0..20).map(|_| rng.affine_point(n)).collect();
        for k in 0..30 {
            let mut x: Vec<BigRational> = (0..n).map(|_| [r(0, 1), r(1, 1), r(-1, 1), r(2, 1)][rng.0.gen_range(0..4)].clone()).collect();
            if k % 3 != 0 {
                x[n - 1] = BigRational::zero();
            }
            let commutes = ys.iter().all(|y| affine_product(a, b, &x, y) == affine_product(a, b, y, &x));
            let central = c.contains(&m, &ToricPoint::new(x.clone())).map_err(err)?;
            ensure!(commutes == central, "a={a:?} b={b:?} x={x:?}: commutes={commutes} central={central}");
            probes += 1;
        }
    }
    Ok(format!("{} monoids on affine 2,3,4-space: x_n = 0 plus one binomial from u_n; {probes} commutation probes agree", params.len()))
}

fn criterion_5() -> Outcome {
    let m = quadratic(0, 1, 1, 2);
    let c = center_equations(&m).map_err(err)?;
    let slice: BTreeSet<Vec<i64>> = c.slice_generators.iter().map(|u| u.0.clone()).collect();
    ensure!(slice == [vec![1, 0, 0], vec![1, 1, -1]].into(), "slice generators {slice:?}");
    ensure!(c.closure_generators == vec![0, 3], "closure generators {:?} (want v, t)", c.closure_generators);
    let sides: BTreeSet<(Vec<u32>, Vec<u32>)> = c
        .binomials
        .iter()
        .map(|b| (b.lhs_factorization.multiplicities.clone(), b.rhs_factorization.multiplicities.clone()))
        .collect();
    // z = w·z² and w = w²·z in the generator order v, w, z, t
    let want: BTreeSet<(Vec<u32>, Vec<u32>)> =
        [(vec![0, 0, 1, 0], vec![0, 1, 2, 0]), (vec![0, 1, 0, 0], vec![0, 2, 1, 0])].into();
    ensure!(sides == want, "binomials {sides:?}");

    let prod = |x: &[BigRational], y: &[BigRational]| quadratic_product(0, 1, 1, 2, x, y);
    let mut sampler = Sampler::new(5);
    let units: Vec<ToricPoint> = (0..20).map(|_| sampler.invertible(&m)).collect();
    for u in &units {
        ensure!(m.variety().validate(u, 6) && m.is_invertible(u).map_err(err)?, "sample {u} is not a unit");
    }
    let commutes_all = |x: &ToricPoint| -> Result<bool, String> {
        for y in &units {
            let lib = m.multiply(x, y).map_err(err)? == m.multiply(y, x).map_err(err)?;
            let closed = prod(&x.values, &y.values) == prod(&y.values, &x.values);
            ensure!(lib == closed, "library and closed formula disagree on commuting {x}, {y}");
            if !lib {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut central_points: Vec<ToricPoint> = [r(1, 1), r(2, 1), r(3, 1), r(-1, 1), r(1, 2)]
        .into_iter()
        .map(|w| ToricPoint::new(vec![r(0, 1), w.clone(), w.recip(), r(0, 1)]))
        .collect();
    central_points.push(pt(&[0, 0, 0, 0]));
    for x in &central_points {
        ensure!(is_central(&m, x).map_err(err)?, "{x} not central by equations");
        ensure!(commutes_all(x)?, "{x} fails to commute");
    }
    let mut rng = Rng8::new(55);
    let mut noncentral = 0;
    let mut draws = 0;
    while noncentral < 20 {
        draws += 1;
        ensure!(draws < 10_000, "could not draw 20 non-central points");
        let x = ToricPoint::new(rng.quadric_point());
        if c.contains(&m, &x).map_err(err)? {
            continue;
        }
        ensure!(!is_central(&m, &x).map_err(err)?, "{x}");
        ensure!(!commutes_all(&x)?, "{x} violates the equations but commutes with all samples");
        noncentral += 1;
    }
    Ok("slice generators (1,0,0),(1,1,-1); v=0, t=0, z=w·z², w=w²·z; 6 central and 20 non-central points confirmed".into())
}

fn criterion_6() -> Outcome {
    let m = affine(&[1], &[0]);
    let p = m.multiply(&pt(&[2, 3]), &pt(&[5, 7])).map_err(err)?;
    ensure!(p == pt(&[10, 17]), "(2,3)*(5,7) = {p}");
    let mut rng = Rng8::new(6);
    let affine_params: Vec<(Vec<i64>, Vec<i64>)> = vec![
        (vec![1], vec![0]),
        (vec![0], vec![2]),
        (vec![3], vec![1]),
        (vec![1, 0], vec![0, 2]),
        (vec![2, 1], vec![0, 0]),
        (vec![0, 0, 1], vec![0, 1, 1]),
        (vec![1, 2, 0], vec![2, 0, 1]),
    ];
    let pairs = 60;
    let mut checked = 0;
    for (a, b) in &affine_params {
        let n = a.len() + 1;
        let m = affine(a, b);
        for _ in 0..pairs {
            let x = rng.affine_point(n);
            let y = rng.affine_point(n);
            let lib = m.multiply(&ToricPoint::new(x.clone()), &ToricPoint::new(y.clone())).map_err(err)?;
            ensure!(lib.values == affine_product(a, b, &x, &y), "a={a:?} b={b:?}: {x:?} * {y:?} = {lib}");
            checked += 1;
        }
        let rep = differential_example_formulas(&m, ExampleFormula::Affspace, pairs, 6, Execution::default()).map_err(err)?;
        ensure!(rep.is_clean() && rep.checked == pairs, "library differential {rep:?}");
    }
    for (k1, l1, k2, l2) in [(0, 1, 1, 2), (2, 1, 0, 3), (1, 2, 1, 2)] {
        let m = quadratic(k1, l1, k2, l2);
        for _ in 0..pairs {
            let x = ToricPoint::new(rng.quadric_point());
            let y = ToricPoint::new(rng.quadric_point());
            ensure!(m.variety().validate(&x, 6) && m.variety().validate(&y, 6), "sampled point off the quadric");
            let lib = m.multiply(&x, &y).map_err(err)?;
            ensure!(lib.values == quadratic_product(k1, l1, k2, l2, &x.values, &y.values), "quadratic {x} * {y} = {lib}");
            checked += 1;
        }
        let rep =
            differential_example_formulas(&m, ExampleFormula::QuadraticCone, pairs, 6, Execution::default()).map_err(err)?;
        ensure!(rep.is_clean() && rep.checked == pairs, "library differential {rep:?}");
    }
    Ok(format!("(2,3)*(5,7) = (10,17); {checked} sampled products equal the closed formulas"))
}

fn test_monoids() -> Vec<(String, MonoidStructure)> {
    vec![
        ("plane a=1".into(), affine(&[1], &[0])),
        ("plane b=2".into(), affine(&[0], &[2])),
        ("plane commutative".into(), affine(&[1], &[1])),
        ("3-space".into(), affine(&[1, 0], &[0, 2])),
        ("4-space 1,1,1".into(), affine4(1, 1, 1)),
        ("4-space 2,1,1".into(), affine4(2, 1, 1)),
        ("quadric 0,1,1,2".into(), quadratic(0, 1, 1, 2)),
        ("quadric 1,1,2,1".into(), quadratic(1, 1, 2, 1)),
        ("quadric commutative".into(), quadratic(0, 1, 0, 1)),
    ]
}

fn criterion_7() -> Outcome {
    let mut total = 0;
    for (name, m) in test_monoids() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let assoc = check_associativity(&m, 120, 7, exec).map_err(err)?;
            ensure!(assoc.is_clean() && assoc.checked >= 120, "{name}: associativity {assoc:?}");
            let group = check_group_axioms(&m, 100, 7, exec).map_err(err)?;
            ensure!(group.is_clean() && group.checked >= 100, "{name}: group axioms {group:?}");
            total += assoc.checked + group.checked;
        }
    }

    // independent checks against the closed formulas on affine space
    let mut rng = Rng8::new(77);
    for (a, b) in [(vec![1], vec![0]), (vec![1, 0], vec![0, 2]), (vec![0, 0, 2], vec![0, 1, 1])] {
        let n = a.len() + 1;
        let m = affine(&a, &b);
        let mut one = vec![BigRational::one(); n];
        one[n - 1] = BigRational::zero();
        ensure!(m.identity().values == one, "identity {}", m.identity());
        for _ in 0..100 {
            let (x, y, z) = (rng.affine_point(n), rng.affine_point(n), rng.affine_point(n));
            let lhs = affine_product(&a, &b, &x, &affine_product(&a, &b, &y, &z));
            let rhs = affine_product(&a, &b, &affine_product(&a, &b, &x, &y), &z);
            ensure!(lhs == rhs, "closed formula not associative at {x:?} {y:?} {z:?}");
            ensure!(affine_product(&a, &b, &x, &one) == x && affine_product(&a, &b, &one, &x) == x, "unit law at {x:?}");

            // χ^u(y⁻¹) = (−1)^{⟨p,u⟩} χ^{−u−⟨p,u⟩(e₁+e₂)}(y)
            let mut y: Vec<BigRational> = (0..n).map(|_| rng.nonzero()).collect();
            y[n - 1] = rng.rational();
            let mut inv: Vec<BigRational> = y[..n - 1].iter().map(|v| v.recip()).collect();
            let scale = y[..n - 1]
                .iter()
                .zip(a.iter().zip(&b))
                .fold(BigRational::one(), |acc, (v, (ai, bi))| acc * num_traits::pow(v.recip(), (ai + bi) as usize));
            inv.push(-(&y[n - 1]) * scale);
            let lib = m.invert(&ToricPoint::new(y.clone())).map_err(err)?;
            ensure!(lib.values == inv, "inverse of {y:?}: {lib} vs {inv:?}");
            ensure!(affine_product(&a, &b, &y, &inv) == one && affine_product(&a, &b, &inv, &y) == one, "inverse law at {y:?}");
            total += 1;
        }
    }
    Ok(format!("{} monoids x 2 execution modes; {total} exact checks, zero failures", test_monoids().len()))
}

fn criterion_8() -> Outcome {
    let mut monoids = test_monoids();
    for n in 2..=4 {
        let mut e = vec![0i64; n];
        e[n - 1] = -1;
        monoids.push((format!("commutative octant {n}"), MonoidStructure::build(octant(n), n - 1, DualVector(e.clone()), DualVector(e.clone()), Budget::default()).unwrap()));
        e[0] = 1;
        monoids.push((format!("commutative octant {n}, shifted"), MonoidStructure::build(octant(n), n - 1, DualVector(e.clone()), DualVector(e), Budget::default()).unwrap()));
    }
    let mut rng = Rng8::new(8);
    let mut commutative = 0;
    for (name, m) in &monoids {
        let set = idempotents(m).map_err(err)?;
        ensure!(set == idempotents_with(m, Execution::Sequential).map_err(err)?, "{name}: execution modes differ");
        let basis = m.variety().basis();
        let p = &m.cone().rays()[m.ray_index()];
        let rho_perp: Vec<usize> = (0..basis.len()).filter(|&i| p.pair(&basis.generators()[i]) == 0).collect();

        let mut samples: Vec<(usize, ToricPoint)> = set.isolated.iter().map(|i| (usize::MAX, i.point.clone())).collect();
        for (k, l) in set.lines.iter().enumerate() {
            for _ in 0..5 {
                samples.push((k, l.point_at(&rng.nonzero())));
            }
        }
        for (_, x) in &samples {
            ensure!(m.variety().validate(x, 6), "{name}: {x} is not a point");
            ensure!(is_idempotent(m, x).map_err(err)?, "{name}: {x} is not idempotent");
            ensure!(rho_perp.iter().all(|&g| x.values[g].is_zero() || x.values[g].is_one()), "{name}: {x} not binary on rho-perp");
        }

        // disjointness
        let iso = set_of(&set.isolated.iter().map(|i| i.point.clone()).collect::<Vec<_>>());
        ensure!(iso.len() == set.isolated.len(), "{name}: repeated isolated points");
        for (k, x) in &samples {
            for (j, l) in set.lines.iter().enumerate() {
                if *k != j && l.parameter_of(x).is_some() {
                    return Err(format!("{name}: {x} lies on two components"));
                }
            }
        }
        let closures = set_of(&set.lines.iter().map(|l| l.closure_point.clone()).collect::<Vec<_>>());
        ensure!(closures.len() == set.lines.len() && closures.is_disjoint(&iso), "{name}: closure points collide");

        // closure point = distinguished point of cone(γ, ρ), recomputed from the pairings
        for l in &set.lines {
            let mut rays = l.face.ray_indices.clone();
            rays.push(m.ray_index());
            rays.sort();
            ensure!(l.extended_face.ray_indices == rays, "{name}: extended face {}", l.extended_face);
            let want: Vec<BigRational> = basis
                .generators()
                .iter()
                .map(|g| {
                    let on = rays.iter().all(|&i| m.cone().rays()[i].pair(g) == 0);
                    if on { BigRational::one() } else { BigRational::zero() }
                })
                .collect();
            ensure!(l.closure_point.values == want, "{name}: closure point {}", l.closure_point);
        }

        if m.is_commutative() {
            let faces_with_rho = m.cone().faces().iter().filter(|f| f.contains_ray(m.ray_index())).count();
            ensure!(set.lines.is_empty() && set.finite, "{name}: commutative monoid with lines");
            ensure!(set.isolated.len() == faces_with_rho, "{name}: {} idempotents, {faces_with_rho} faces", set.isolated.len());
            if name.starts_with("commutative octant") {
                let n = m.cone().dim();
                ensure!(faces_with_rho == 1 << (n - 1), "{name}: {faces_with_rho} faces contain the ray");
            }
            commutative += 1;
        }
    }
    ensure!(idempotents(&quadratic(0, 1, 0, 1)).map_err(err)?.isolated.len() == 4, "quadric commutative count");
    Ok(format!("{} monoids: disjoint components, binary rho-perp values, closure points; {commutative} commutative counts", monoids.len()))
}

#[derive(Debug, Default, PartialEq, Eq)]
struct Split {
    unity: usize,
    boundary: usize,
    off: usize,
}

fn criterion_9() -> Outcome {
    // explicit components of the closure of the group center
    type Component = fn(&[BigRational]) -> bool;
    let cases: [((i64, i64, i64), Component, Split); 2] = [
        ((2, 1, 1), |x| x[1] == x[2] && x[3].is_zero(), Split { unity: 1, boundary: 3, off: 2 }),
        ((1, 1, 2), |x| &x[1] * &x[2] == BigRational::one() && x[3].is_zero(), Split { unity: 1, boundary: 1, off: 4 }),
    ];
    let mut sampler = Sampler::new(9);
    let mut rng = Rng8::new(99);
    for ((a, b, c), component, want) in cases {
        let m = affine4(a, b, c);
        let set = idempotents(&m).map_err(err)?;
        let unity = m.identity();
        let mut split = Split::default();
        let gs: Vec<ToricPoint> = (0..20).map(|_| sampler.invertible(&m)).collect();
        let ys: Vec<Vec<BigRational>> = (0..20).map(|_| rng.affine_point(4)).collect();
        let prod = |x: &[BigRational], y: &[BigRational]| affine_product(&[0, 0, a], &[0, b, c], x, y);
        for i in &set.isolated {
            let x = &i.point;
            if *x == unity {
                split.unity += 1;
            } else if component(&x.values) && !m.is_invertible(x).map_err(err)? {
                split.boundary += 1;
            } else {
                split.off += 1;
            }
            ensure!(is_central(&m, x).map_err(err)?, "({a},{b},{c}): isolated {x} not central");
            ensure!(ys.iter().all(|y| prod(&x.values, y) == prod(y, &x.values)), "({a},{b},{c}): {x} fails to commute");
            for g in &gs {
                ensure!(conjugate(&m, g, x).map_err(err)? == *x, "({a},{b},{c}): {x} moved by conjugation with {g}");
            }
        }
        ensure!(split == want, "({a},{b},{c}): split {split:?}, expected {want:?}");
        for l in &set.lines {
            for _ in 0..5 {
                let x = l.point_at(&rng.nonzero());
                ensure!(!is_central(&m, &x).map_err(err)?, "({a},{b},{c}): line point {x} central");
                ensure!(ys.iter().any(|y| prod(&x.values, y) != prod(y, &x.values)), "line point {x} commutes with samples");
                for g in gs.iter().take(5) {
                    let y = conjugate(&m, g, &x).map_err(err)?;
                    let on_line = l.parameter_of(&y).is_some();
                    ensure!(on_line && is_idempotent(&m, &y).map_err(err)?, "conjugate {y} left the line");
                }
            }
        }
    }
    Ok("(2,1,1) splits 1/3/2, (1,1,2) splits 1/1/4; isolated points central and fixed, line points not central".into())
}

fn criterion_10() -> Outcome {
    let mut cones: Vec<(String, torimon::RationalCone)> = (1..=5).map(|n| (format!("octant {n}"), octant(n))).collect();
    cones.push(("quadratic cone".into(), quadratic_cone()));
    for (i, c) in random_cones(20, 2024).into_iter().enumerate() {
        cones.push((format!("random cone {i}"), c));
    }
    for (i, (name, c)) in cones.iter().enumerate() {
        check_duality(c).map_err(|e| format!("{name}: {e}"))?;
        check_face_dims(c).map_err(|e| format!("{name}: {e}"))?;
        check_hilbert(c, 5).map_err(|e| format!("{name}: {e}"))?;
        check_factorization_independence(c, i as u64, 20).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} cones: duality round trip, face dimensions, Hilbert basis, factorization independence", cones.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("idempotents of the affine plane", criterion_1),
        ("idempotents of affine 4-space", criterion_2),
        ("zero element", criterion_3),
        ("center of affine space", criterion_4),
        ("center of the quadratic cone", criterion_5),
        ("multiplication against closed formulas", criterion_6),
        ("group laws", criterion_7),
        ("idempotent structure", criterion_8),
        ("idempotents and the center", criterion_9),
        ("geometry kernel", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
