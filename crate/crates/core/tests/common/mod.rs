//! Oracles for the integration suites, implemented independently of the
//! library's algorithms. Chambers come from sign-vector feasibility, not
//! Zaslavsky; membership and graded dimensions come from a linear change of
//! coordinates, not successive divisions; real roots come from Descartes
//! bisection, not Sturm chains. Deliberately naive, only fit for small
//! inputs.
#![allow(dead_code)]

use arrfree_core::arrangement::{Arrangement, Multiplicity};
use arrfree_core::derivations::VectorField;
use arrfree_core::hyperplane::Hyperplane;
use arrfree_core::multipoly::{monomials_of_degree, MultiPoly};
use arrfree_core::scalar::{zint, Scalar};
use arrfree_core::unipoly::UniPoly;
use num::{BigInt, One, Signed, Zero};
use rand::rngs::StdRng;
use rand::Rng;
use std::collections::BTreeMap;

pub struct RegionCounts {
    pub chambers: u64,
    /// Regions whose recession cone is exactly the common lineality space;
    /// for essential arrangements this is ordinary boundedness.
    pub relatively_bounded: u64,
}

/// Count regions of a real arrangement in dimension <= 2 by testing every
/// strict sign vector for feasibility with Fourier-Motzkin elimination.
/// Regions of an arrangement are convex, so they are in bijection with the
/// feasible strict sign vectors.
pub fn regions_by_sign_vectors(arr: &Arrangement) -> RegionCounts {
    let ell = arr.dimension();
    assert!(ell <= 2, "the sign-vector oracle only handles dimension <= 2");
    let n = arr.num_hyperplanes();
    let normals: Vec<Vec<Scalar>> = arr.hyperplanes().iter().map(|h| h.normal_scalars()).collect();
    let consts: Vec<Scalar> = arr.hyperplanes().iter().map(|h| h.constant_scalar()).collect();

    let mut chambers = 0u64;
    let mut relatively_bounded = 0u64;
    for mask in 0..(1u64 << n) {
        // rows (v, c) encode the strict constraint v . x > c
        let rows: Vec<(Vec<Scalar>, Scalar)> = (0..n)
            .map(|i| {
                if mask & (1 << i) != 0 {
                    (normals[i].clone(), consts[i].clone())
                } else {
                    (
                        normals[i].iter().map(|a| -a).collect(),
                        -&consts[i],
                    )
                }
            })
            .collect();
        if !strict_feasible(ell, &rows) {
            continue;
        }
        chambers += 1;
        if recession_cone_is_lineality(ell, &normals, mask) {
            relatively_bounded += 1;
        }
    }
    RegionCounts {
        chambers,
        relatively_bounded,
    }
}

/// Feasibility of a system of strict linear inequalities v . x > c in
/// dimension <= 2. Fourier-Motzkin projection is exact for strict systems.
fn strict_feasible(ell: usize, rows: &[(Vec<Scalar>, Scalar)]) -> bool {
    match ell {
        0 => rows.iter().all(|(_, c)| c.is_negative()),
        1 => strict_feasible_1d(
            &rows
                .iter()
                .map(|(v, c)| (v[0].clone(), c.clone()))
                .collect::<Vec<_>>(),
        ),
        2 => {
            // eliminate y from v0 x + v1 y > c
            let mut projected: Vec<(Scalar, Scalar)> = Vec::new();
            let mut lowers: Vec<(Scalar, Scalar, Scalar)> = Vec::new(); // y > (c - v0 x)/v1
            let mut uppers: Vec<(Scalar, Scalar, Scalar)> = Vec::new(); // y < (c - v0 x)/v1
            for (v, c) in rows {
                if v[1].is_zero() {
                    projected.push((v[0].clone(), c.clone()));
                } else if v[1].is_positive() {
                    lowers.push((v[0].clone(), v[1].clone(), c.clone()));
                } else {
                    uppers.push((v[0].clone(), v[1].clone(), c.clone()));
                }
            }
            // (lc - l0 x)/l1 < (uc - u0 x)/u1 clears, across l1 u1 < 0, to
            // (l1 u0 - u1 l0) x > l1 uc - u1 lc
            for (l0, l1, lc) in &lowers {
                for (u0, u1, uc) in &uppers {
                    let k = &(l1 * u0) - &(u1 * l0);
                    let r = &(l1 * uc) - &(u1 * lc);
                    projected.push((k, r));
                }
            }
            strict_feasible_1d(&projected)
        }
        _ => unreachable!(),
    }
}

fn strict_feasible_1d(rows: &[(Scalar, Scalar)]) -> bool {
    let mut lower: Option<Scalar> = None; // x > lower
    let mut upper: Option<Scalar> = None; // x < upper
    for (v, c) in rows {
        if v.is_zero() {
            if !c.is_negative() {
                return false;
            }
        } else {
            let bound = c / v;
            if v.is_positive() {
                if lower.as_ref().map_or(true, |l| bound > *l) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().map_or(true, |u| bound < *u) {
                upper = Some(bound);
            }
        }
    }
    match (lower, upper) {
        (Some(l), Some(u)) => l < u,
        _ => true,
    }
}

/// The recession cone of the sign-vector region equals the lineality space
/// of the arrangement. In the plane every extreme ray of the cone is either
/// along a constraint boundary (perpendicular to some normal) or, when the
/// cone is a halfplane bounded by the lineality line, along a normal; so
/// those finitely many directions witness any strict containment.
fn recession_cone_is_lineality(ell: usize, normals: &[Vec<Scalar>], mask: u64) -> bool {
    let mut candidates: Vec<Vec<Scalar>> = Vec::new();
    match ell {
        0 => return true,
        1 => {
            candidates.push(vec![zint(1)]);
            candidates.push(vec![zint(-1)]);
        }
        2 => {
            for a in normals {
                for d in [
                    vec![a[0].clone(), a[1].clone()],
                    vec![-&a[0], -&a[1]],
                    vec![-&a[1], a[0].clone()],
                    vec![a[1].clone(), -&a[0]],
                ] {
                    candidates.push(d);
                }
            }
        }
        _ => unreachable!(),
    }
    for d in candidates {
        let in_cone = normals.iter().enumerate().all(|(i, a)| {
            let dot: Scalar = a.iter().zip(&d).map(|(x, y)| x * y).sum();
            if mask & (1 << i) != 0 {
                !dot.is_negative()
            } else {
                !dot.is_positive()
            }
        });
        if !in_cone {
            continue;
        }
        let in_lineality = normals.iter().all(|a| {
            let dot: Scalar = a.iter().zip(&d).map(|(x, y)| x * y).sum();
            dot.is_zero()
        });
        if !in_lineality {
            return false;
        }
    }
    true
}

/// Membership of theta in D(A, m) checked through a coordinate change: for
/// each hyperplane alpha = a.x - c, substitute the inverse of a linear map
/// sending alpha to the coordinate y_p, and require every monomial of the
/// transformed theta(alpha) to carry y_p-exponent >= m(H). Divisibility
/// under an invertible affine substitution is unchanged, so this agrees
/// with the division-based definition.
pub fn member_by_coordinate_change(
    theta: &VectorField,
    arr: &Arrangement,
    m: &Multiplicity,
) -> bool {
    for (i, h) in arr.hyperplanes().iter().enumerate() {
        let mult = m.get(i);
        if mult == 0 {
            continue;
        }
        let p = theta.apply(&h.form());
        if !divisible_by_form_power(&p, h, mult) {
            return false;
        }
    }
    true
}

fn divisible_by_form_power(p: &MultiPoly, h: &Hyperplane, mult: u32) -> bool {
    let ell = h.dimension();
    let a: Vec<Scalar> = h.normal_scalars();
    let c = h.constant_scalar();
    let pivot = a.iter().position(|x| !x.is_zero()).expect("nonzero normal");
    // old x_pivot in terms of the new coordinates, where y_pivot = alpha;
    // affine() subtracts its constant, hence the sign
    let mut images: Vec<MultiPoly> = (0..ell).map(|j| MultiPoly::var(ell, j)).collect();
    images[pivot] = pivot_image(&a, &c, pivot);
    let transformed = p.substitute(&images);
    let ok = transformed.terms().all(|(exps, _)| exps[pivot] >= mult);
    ok
}

fn pivot_image(a: &[Scalar], c: &Scalar, pivot: usize) -> MultiPoly {
    let ell = a.len();
    let mut coeffs = vec![Scalar::zero(); ell];
    coeffs[pivot] = Scalar::one() / &a[pivot];
    for j in 0..ell {
        if j != pivot {
            coeffs[j] = -&a[j] / &a[pivot];
        }
    }
    MultiPoly::affine(&coeffs, &-&(c / &a[pivot]))
}

/// Graded dimension of D(A, m) in degree d, assembled from the coordinate
/// change conditions above and reduced by a plain dense Gaussian
/// elimination over the rationals.
pub fn graded_dim_by_elimination(arr: &Arrangement, m: &Multiplicity, d: usize) -> usize {
    let ell = arr.dimension();
    let monomials = monomials_of_degree(ell, d);
    let ncols = ell * monomials.len();
    if ncols == 0 {
        return 0;
    }
    // row key: (hyperplane, monomial of the transformed condition)
    let mut row_index: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    for (i, h) in arr.hyperplanes().iter().enumerate() {
        let mult = m.get(i);
        if mult == 0 {
            continue;
        }
        let a = h.normal_scalars();
        let pivot = a.iter().position(|x| !x.is_zero()).expect("nonzero normal");
        for k in 0..ell {
            if a[k].is_zero() {
                continue;
            }
            let mut images: Vec<MultiPoly> = (0..ell).map(|j| MultiPoly::var(ell, j)).collect();
            images[pivot] = pivot_image(&a, &h.constant_scalar(), pivot);
            for (mi, mu) in monomials.iter().enumerate() {
                let col = k * monomials.len() + mi;
                let q = MultiPoly::from_term(ell, mu.clone(), a[k].clone());
                for (exps, coef) in q.substitute(&images).terms() {
                    if exps[pivot] < mult {
                        let next = row_index.len();
                        let r = *row_index
                            .entry((i, exps.clone()))
                            .or_insert(next);
                        entries.push((r, col, coef.clone()));
                    }
                }
            }
        }
    }
    let nrows = row_index.len();
    let mut dense = vec![vec![Scalar::zero(); ncols]; nrows];
    for (r, c, v) in entries {
        dense[r][c] = &dense[r][c] + &v;
    }
    ncols - rank_by_elimination(dense)
}

/// Plain rational Gaussian elimination, no pivoting tricks.
pub fn rank_by_elimination(mut rows: Vec<Vec<Scalar>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = Scalar::one() / &rows[rank][col];
        for c in col..ncols {
            rows[rank][c] = &rows[rank][c] * &inv;
        }
        for r in 0..nrows {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..ncols {
                    rows[r][c] = &rows[r][c] - &(&f * &rows[rank][c]);
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Decide "every complex root is real and <= 0" for a nonzero polynomial by
/// Descartes bisection (Vincent-Collins-Akritas) on the squarefree part:
/// the distinct real roots must number deg and none may be positive.
pub fn all_real_roots_nonpositive_oracle(p: &UniPoly) -> bool {
    assert!(!p.is_zero());
    let s = local_squarefree(p);
    let deg = s.degree().unwrap();
    if deg == 0 {
        return true;
    }
    let mut c = clear_denominators(&s);
    // a simple root at the origin is nonpositive; strip it
    let mut origin = 0usize;
    while c[0].is_zero() {
        c.remove(0);
        origin += 1;
    }
    let pos = count_positive_roots(&c);
    if pos > 0 {
        return false;
    }
    let reflected: Vec<BigInt> = c
        .iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 1 { -v } else { v.clone() })
        .collect();
    let neg = count_positive_roots(&reflected);
    neg + origin == deg
}

fn local_squarefree(p: &UniPoly) -> UniPoly {
    let d = p.derivative();
    if d.is_zero() {
        return p.clone();
    }
    let g = local_gcd(p.clone(), d);
    local_div(p, &g)
}

fn local_gcd(mut a: UniPoly, mut b: UniPoly) -> UniPoly {
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b).unwrap();
        a = b;
        b = r;
    }
    let lead = a.leading().cloned().unwrap_or_else(Scalar::one);
    a.scale(&(Scalar::one() / lead))
}

fn local_div(a: &UniPoly, b: &UniPoly) -> UniPoly {
    a.div_rem(b).unwrap().0
}

fn clear_denominators(p: &UniPoly) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = num::integer::lcm(lcm, c.denom().clone());
    }
    p.coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect()
}

/// Number of roots in (0, +inf) of a squarefree integer polynomial with
/// nonzero constant term.
fn count_positive_roots(coeffs: &[BigInt]) -> usize {
    let n = coeffs.len() - 1;
    if n == 0 {
        return 0;
    }
    // Cauchy-style bound: every root has |r| < 1 + max |a_i| <= this B,
    // using |lead| >= 1
    let maxabs = coeffs.iter().map(|c| c.abs()).max().unwrap();
    let b = maxabs + BigInt::one();
    // map (0, B) to (0, 1)
    let scaled: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c * b.pow(i as u32))
        .collect();
    count_roots_unit_interval(&scaled)
}

/// Descartes bisection on (0, 1) for a squarefree integer polynomial.
fn count_roots_unit_interval(coeffs: &[BigInt]) -> usize {
    let v = descartes_variations(&mobius_onto_positive(coeffs));
    if v <= 1 {
        return v;
    }
    let n = coeffs.len() - 1;
    // left half: 2^n p(x/2); right half: shift the left by 1
    let left: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c << (n - i))
        .collect();
    let mut right = left.clone();
    taylor_shift_by_one(&mut right);
    let mut total = 0;
    if right[0].is_zero() {
        // simple root exactly at 1/2
        total += 1;
        right.remove(0);
    }
    total + count_roots_unit_interval(&left) + count_roots_unit_interval(&right)
}

/// (1+x)^n p(1/(1+x)): reverse, then shift by one. Sign variations bound
/// the roots of p in (0,1), exactly when 0 or 1.
fn mobius_onto_positive(coeffs: &[BigInt]) -> Vec<BigInt> {
    let mut rev: Vec<BigInt> = coeffs.iter().rev().cloned().collect();
    taylor_shift_by_one(&mut rev);
    rev
}

fn taylor_shift_by_one(coeffs: &mut [BigInt]) {
    let n = coeffs.len();
    for i in (0..n).rev() {
        for j in i..n - 1 {
            let add = coeffs[j + 1].clone();
            coeffs[j] += add;
        }
    }
}

fn descartes_variations(coeffs: &[BigInt]) -> usize {
    let mut vars = 0;
    let mut last = 0i8;
    for c in coeffs {
        let s = match c.sign() {
            num::bigint::Sign::Plus => 1i8,
            num::bigint::Sign::Minus => -1,
            num::bigint::Sign::NoSign => 0,
        };
        if s != 0 {
            if last != 0 && s != last {
                vars += 1;
            }
            last = s;
        }
    }
    vars
}

/// n distinct central lines in the plane with small integer normals.
pub fn random_central_lines(rng: &mut StdRng, n: usize) -> Arrangement {
    let mut hyps: Vec<Hyperplane> = Vec::new();
    while hyps.len() < n {
        let a = rng.gen_range(-6..=6i64);
        let b = rng.gen_range(-6..=6i64);
        if a == 0 && b == 0 {
            continue;
        }
        let h = Hyperplane::from_ints(&[a, b], 0).unwrap();
        if !hyps.contains(&h) {
            hyps.push(h);
        }
    }
    Arrangement::new(2, hyps).unwrap()
}

/// Up to n distinct hyperplanes with small integer data, affine unless
/// central. Low dimensions exhaust the distinct small-coefficient forms
/// quickly (centrally, dimension 1 has just one), so the result may be
/// smaller than requested; callers should use num_hyperplanes().
pub fn random_arrangement(rng: &mut StdRng, ell: usize, n: usize, central: bool) -> Arrangement {
    let mut hyps: Vec<Hyperplane> = Vec::new();
    let mut attempts = 0;
    while hyps.len() < n && attempts < 500 {
        attempts += 1;
        let normal: Vec<i64> = (0..ell).map(|_| rng.gen_range(-3..=3)).collect();
        if normal.iter().all(|&x| x == 0) {
            continue;
        }
        let c = if central { 0 } else { rng.gen_range(-3..=3) };
        let h = Hyperplane::from_ints(&normal, c).unwrap();
        if !hyps.contains(&h) {
            hyps.push(h);
        }
    }
    Arrangement::new(ell, hyps).unwrap()
}

/// Random multiplicity with entries in lo..=hi.
pub fn random_multiplicity(rng: &mut StdRng, n: usize, lo: u32, hi: u32) -> Multiplicity {
    Multiplicity::new((0..n).map(|_| rng.gen_range(lo..=hi)).collect())
}

/// The four combinatorially determined rank-2 exponent patterns, each on
/// randomized central line sets: (i) a dominant multiplicity at least half
/// the weight, (ii) at least |m|/2 + 1 lines, (iii) constant multiplicity 2,
/// (iv) three balanced lines.
pub fn check_typical_case(rng: &mut StdRng, case: usize, iterations: usize) -> Result<(), String> {
    use arrfree_core::derivations::exponents_rank2;
    for round in 0..iterations {
        let (arr, m, expected) = match case {
            1 => {
                let n = rng.gen_range(2..=4usize);
                let arr = random_central_lines(rng, n);
                let mut vals: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
                let rest: u32 = vals.iter().skip(1).sum();
                vals[0] = rest + rng.gen_range(0..=3);
                let weight = (vals[0] + rest) as usize;
                let dominant = vals[0] as usize;
                (arr, Multiplicity::new(vals), (weight - dominant, dominant))
            }
            2 => {
                let n = rng.gen_range(3..=6usize);
                let arr = random_central_lines(rng, n);
                let mut vals = vec![1u32; n];
                for _ in 0..rng.gen_range(0..=(n - 2)) {
                    let i = rng.gen_range(0..n);
                    vals[i] += 1;
                }
                let weight: usize = vals.iter().sum::<u32>() as usize;
                (arr, Multiplicity::new(vals), (weight - n + 1, n - 1))
            }
            3 => {
                let n = rng.gen_range(2..=6usize);
                let arr = random_central_lines(rng, n);
                (arr, Multiplicity::constant(n, 2), (n, n))
            }
            4 => {
                let arr = random_central_lines(rng, 3);
                let vals: Vec<u32> = loop {
                    let v: Vec<u32> = (0..3).map(|_| rng.gen_range(1..=6)).collect();
                    let max = *v.iter().max().unwrap();
                    let sum: u32 = v.iter().sum();
                    if 2 * max <= sum {
                        break v;
                    }
                };
                let weight = vals.iter().sum::<u32>() as usize;
                (
                    arr,
                    Multiplicity::new(vals),
                    (weight / 2, weight - weight / 2),
                )
            }
            _ => unreachable!(),
        };
        let got = exponents_rank2(&arr, &m).map_err(|e| e.to_string())?;
        if got != expected {
            return Err(format!(
                "case ({case}) round {round}: expected {expected:?}, got {got:?} on {arr:?} with {:?}",
                m.values()
            ));
        }
    }
    Ok(())
}

/// Abe's bound: delta <= n - 2 for balanced multiplicities on n >= 3 lines.
pub fn check_abe_bound(rng: &mut StdRng, iterations: usize) -> Result<(), String> {
    use arrfree_core::derivations::delta;
    for round in 0..iterations {
        let n = rng.gen_range(3..=6usize);
        let arr = random_central_lines(rng, n);
        let vals: Vec<u32> = loop {
            let v: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=5)).collect();
            let max = *v.iter().max().unwrap();
            let sum: u32 = v.iter().sum();
            if 2 * max <= sum {
                break v;
            }
        };
        let m = Multiplicity::new(vals);
        let d = delta(&arr, &m).map_err(|e| e.to_string())?;
        if d > n - 2 {
            return Err(format!(
                "round {round}: delta {d} exceeds n-2 = {} on {arr:?} with {:?}",
                n - 2,
                m.values()
            ));
        }
    }
    Ok(())
}

/// The connection drops one multiplicity: for theta in D(A, m) and a
/// constant field eta, nabla_eta theta lies in D(A, m - 1).
pub fn check_nabla_drop(rng: &mut StdRng, samples: usize) -> Result<(), String> {
    use arrfree_core::derivations::{exponents_rank2, graded_basis, is_member, nabla};
    let mut done = 0;
    while done < samples {
        let ell;
        let arr;
        let m;
        if rng.gen_bool(0.7) {
            ell = 2;
            let n_req = rng.gen_range(2..=4);
            arr = random_central_lines(rng, n_req);
            m = random_multiplicity(rng, arr.num_hyperplanes(), 1, 3);
        } else {
            ell = 3;
            let n_req = rng.gen_range(2..=3);
            arr = random_arrangement(rng, 3, n_req, true);
            m = random_multiplicity(rng, arr.num_hyperplanes(), 1, 2);
        }
        let d = if ell == 2 {
            let (d1, _) = exponents_rank2(&arr, &m).map_err(|e| e.to_string())?;
            d1 + rng.gen_range(0..=1)
        } else {
            rng.gen_range(1..=4)
        };
        let basis = graded_basis(&arr, &m, d).map_err(|e| e.to_string())?;
        if basis.is_empty() {
            continue;
        }
        let theta = random_combination(rng, &basis);
        let eta = random_constant_field(rng, ell);
        let dropped = Multiplicity::new(
            m.values().iter().map(|&v| v.saturating_sub(1)).collect(),
        );
        let nab = nabla(&eta, &theta).map_err(|e| e.to_string())?;
        if !is_member(&nab, &arr, &dropped).map_err(|e| e.to_string())? {
            return Err(format!(
                "nabla dropped out of D(A, m-1) on {arr:?} with {:?} at degree {d}",
                m.values()
            ));
        }
        done += 1;
    }
    Ok(())
}

/// Nonzero random rational combination of the given fields.
pub fn random_combination(rng: &mut StdRng, basis: &[VectorField]) -> VectorField {
    let ell = basis[0].dimension();
    loop {
        let mut comps = vec![MultiPoly::zero(ell); ell];
        for f in basis {
            let c = zint(rng.gen_range(-3..=3i64));
            if c.is_zero() {
                continue;
            }
            for k in 0..ell {
                comps[k] = &comps[k] + &f.component(k).scale(&c);
            }
        }
        let theta = VectorField::new(comps).unwrap();
        if !theta.is_zero() {
            return theta;
        }
    }
}

/// Constant vector field with at least one nonzero component.
pub fn random_constant_field(rng: &mut StdRng, ell: usize) -> VectorField {
    loop {
        let comps: Vec<MultiPoly> = (0..ell)
            .map(|_| MultiPoly::constant(ell, zint(rng.gen_range(-3..=3i64))))
            .collect();
        let eta = VectorField::new(comps).unwrap();
        if !eta.is_zero() {
            return eta;
        }
    }
}
