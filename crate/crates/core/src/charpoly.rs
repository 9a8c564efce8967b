//! Characteristic polynomials by three independent routes, chamber counts,
//! and Betti numbers.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::lattice::intersection_lattice;
use crate::matrix::{det_bigint, is_prime_u64};
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;
use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

/// How to compute the characteristic polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharpolyMethod {
    /// Mobius sum over the intersection lattice.
    Mobius,
    /// Deletion-restriction recursion.
    DelRes,
    /// Point counts over finite fields plus interpolation.
    FiniteField,
}

impl FromStr for CharpolyMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mobius" => Ok(CharpolyMethod::Mobius),
            "delres" => Ok(CharpolyMethod::DelRes),
            "ff" | "finitefield" => Ok(CharpolyMethod::FiniteField),
            other => Err(Error::Parse {
                line: None,
                message: format!(
                    "unknown method '{other}' (expected mobius, delres or ff)"
                ),
            }),
        }
    }
}

impl std::fmt::Display for CharpolyMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CharpolyMethod::Mobius => "mobius",
            CharpolyMethod::DelRes => "delres",
            CharpolyMethod::FiniteField => "finitefield",
        };
        f.write_str(s)
    }
}

/// Default cap on points enumerated per finite field.
pub const DEFAULT_POINT_BUDGET: u64 = 10_000_000;

/// Cap on the number of minors inspected for the good-prime bound.
const MINOR_BUDGET: u64 = 2_000_000;

/// Cap on nodes in the deletion-restriction recursion tree.
const DELRES_NODE_BUDGET: u64 = 100_000;

/// chi(t) = sum over flats X of mu(X) t^(dim - rank X).
pub fn charpoly_mobius(arr: &Arrangement) -> Result<UniPoly> {
    let lat = intersection_lattice(arr)?;
    let ell = arr.dimension();
    let mut coeffs = vec![Scalar::zero(); ell + 1];
    for (i, f) in lat.flats().iter().enumerate() {
        coeffs[ell - f.rank] += Scalar::from_integer(lat.mobius(i).clone());
    }
    Ok(UniPoly::from_coeffs(coeffs))
}

/// chi(A) = chi(A minus H) - chi(A restricted to H), recursing on the last
/// hyperplane; empty arrangement gives t^dim.
pub fn charpoly_delres(arr: &Arrangement) -> Result<UniPoly> {
    let mut nodes = 0u64;
    delres_rec(arr, &mut nodes)
}

fn delres_rec(arr: &Arrangement, nodes: &mut u64) -> Result<UniPoly> {
    *nodes += 1;
    if *nodes > DELRES_NODE_BUDGET {
        return Err(Error::Budget {
            what: "deletion-restriction recursion nodes".into(),
            needed: format!("> {DELRES_NODE_BUDGET}"),
            budget: DELRES_NODE_BUDGET.to_string(),
        });
    }
    let n = arr.num_hyperplanes();
    let ell = arr.dimension();
    if n == 0 {
        return Ok(UniPoly::monomial(Scalar::one(), ell));
    }
    if ell == 1 {
        // n distinct points on a line
        return Ok(&UniPoly::t() - &UniPoly::constant(Scalar::from_integer(BigInt::from(n))));
    }
    let deleted = arr.deletion(n - 1)?;
    let (restricted, _) = arr.restrict(n - 1)?;
    let a = delres_rec(&deleted, nodes)?;
    let b = delres_rec(&restricted, nodes)?;
    Ok(&a - &b)
}

/// Result of the finite-field route, with the evidence used.
#[derive(Clone, Debug)]
pub struct FiniteFieldCharpoly {
    pub poly: UniPoly,
    /// Primes used as field sizes, ascending.
    pub primes: Vec<u64>,
    /// lcm of the absolute values of all nonzero minors of the augmented
    /// coefficient matrix; primes coprime to it preserve the intersection
    /// pattern.
    pub minor_lcm: BigInt,
}

/// Count complement points over the first good primes and interpolate.
///
/// A prime is good when it divides no nonzero minor (of any size) of the
/// augmented matrix (normals | constants): then every subset of hyperplanes
/// has the same rank and solvability pattern over F_q as over Q, so the
/// complement has exactly chi(q) points. Uses dim+1 good primes, each with
/// q^dim at most `point_budget`.
pub fn charpoly_finitefield(arr: &Arrangement, point_budget: u64) -> Result<FiniteFieldCharpoly> {
    let ell = arr.dimension();
    let b = minor_lcm(arr)?;

    let mut primes: Vec<u64> = Vec::new();
    let mut q = 2u64;
    while primes.len() < ell + 1 {
        if is_prime_u64(q) && !(&b % BigInt::from(q)).is_zero() {
            let cost = checked_pow_u64(q, ell as u32);
            match cost {
                Some(c) if c <= point_budget => primes.push(q),
                _ => {
                    return Err(Error::Budget {
                        what: format!("points over F_{q} (need {} good primes)", ell + 1),
                        needed: format!("{q}^{ell}"),
                        budget: point_budget.to_string(),
                    })
                }
            }
        }
        q += 1;
    }

    let values: Vec<(u64, u64)> = primes
        .iter()
        .map(|&p| (p, count_points_mod(arr, p)))
        .collect();
    let poly = lagrange_interpolate(&values)?;

    let monic_deg = poly.degree() == Some(ell) && poly.is_monic();
    if !(monic_deg && poly.has_integer_coeffs()) {
        return Err(Error::Internal(format!(
            "interpolated point counts gave {} instead of a monic integer polynomial of degree {ell}",
            poly
        )));
    }
    Ok(FiniteFieldCharpoly {
        poly,
        primes,
        minor_lcm: b,
    })
}

/// Dispatcher over the three methods.
pub fn charpoly(arr: &Arrangement, method: CharpolyMethod, point_budget: u64) -> Result<UniPoly> {
    match method {
        CharpolyMethod::Mobius => charpoly_mobius(arr),
        CharpolyMethod::DelRes => charpoly_delres(arr),
        CharpolyMethod::FiniteField => Ok(charpoly_finitefield(arr, point_budget)?.poly),
    }
}

fn checked_pow_u64(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// lcm of |det| over all nonzero square minors (all sizes) of the augmented
/// matrix. Budgeted: errs out rather than enumerating unreasonably many
/// subsets.
fn minor_lcm(arr: &Arrangement) -> Result<BigInt> {
    let n = arr.num_hyperplanes();
    let cols = arr.dimension() + 1;
    let rows: Vec<Vec<BigInt>> = arr
        .hyperplanes()
        .iter()
        .map(|h| {
            let mut r = h.normal().to_vec();
            r.push(h.constant().clone());
            r
        })
        .collect();

    let kmax = n.min(cols);
    let mut total: u64 = 0;
    for k in 1..=kmax {
        total = total.saturating_add(binomial_u64(n, k).saturating_mul(binomial_u64(cols, k)));
    }
    if total > MINOR_BUDGET {
        return Err(Error::Budget {
            what: "minor count for finite-field prime bound".into(),
            needed: total.to_string(),
            budget: MINOR_BUDGET.to_string(),
        });
    }

    let mut acc = BigInt::one();
    for k in 1..=kmax {
        for row_set in combinations(n, k) {
            for col_set in combinations(cols, k) {
                let mut sub: Vec<Vec<BigInt>> = row_set
                    .iter()
                    .map(|&i| col_set.iter().map(|&j| rows[i][j].clone()).collect())
                    .collect();
                let d = det_bigint(&mut sub);
                if !d.is_zero() {
                    acc = acc.lcm(&d.abs());
                }
            }
        }
    }
    Ok(acc)
}

fn binomial_u64(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    acc
}

/// All k-subsets of 0..n in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        // advance odometer
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (k - i) {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Number of points of (Z/qZ)^dim avoiding every hyperplane, by exact
/// enumeration. Equals chi(q) whenever q is coprime to the minor lcm of
/// the augmented matrix (in particular for the primes the finite-field
/// method selects).
pub fn count_complement_mod(arr: &Arrangement, q: u64, point_budget: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::ParameterDomain(format!(
            "modulus {q} is out of range, the point count needs q >= 2"
        )));
    }
    match checked_pow_u64(q, arr.dimension() as u32) {
        Some(c) if c <= point_budget => Ok(count_points_mod(arr, q)),
        _ => Err(Error::Budget {
            what: format!("point enumeration over Z/{q}Z"),
            needed: format!("{q}^{}", arr.dimension()),
            budget: point_budget.to_string(),
        }),
    }
}

fn count_points_mod(arr: &Arrangement, q: u64) -> u64 {
    let ell = arr.dimension();
    let n = arr.num_hyperplanes();
    let qi = BigInt::from(q);
    // reduce each augmented row mod q
    let normals: Vec<Vec<u64>> = arr
        .hyperplanes()
        .iter()
        .map(|h| {
            h.normal()
                .iter()
                .map(|a| a.mod_floor(&qi).to_u64().unwrap())
                .collect()
        })
        .collect();
    let consts: Vec<u64> = arr
        .hyperplanes()
        .iter()
        .map(|h| h.constant().mod_floor(&qi).to_u64().unwrap())
        .collect();

    if ell == 0 {
        return if n == 0 { 1 } else { 0 };
    }

    let mut point = vec![0u64; ell];
    // dot[i] tracks normals[i] . point mod q, updated incrementally
    let mut dot = vec![0u64; n];
    let mut count = 0u64;
    loop {
        if (0..n).all(|i| dot[i] != consts[i]) {
            count += 1;
        }
        // odometer increment with incremental dot-product update
        let mut pos = 0;
        loop {
            if pos == ell {
                return count;
            }
            point[pos] += 1;
            if point[pos] < q {
                for i in 0..n {
                    dot[i] = (dot[i] + normals[i][pos]) % q;
                }
                break;
            }
            // digit wraps from q-1 to 0: subtract (q-1)*a = add a mod q
            point[pos] = 0;
            for i in 0..n {
                dot[i] = (dot[i] + normals[i][pos]) % q;
            }
            pos += 1;
        }
    }
}

/// Unique polynomial of degree < #values through the given points.
fn lagrange_interpolate(values: &[(u64, u64)]) -> Result<UniPoly> {
    let mut acc = UniPoly::zero();
    for (i, &(xi, yi)) in values.iter().enumerate() {
        let mut basis = UniPoly::one();
        let mut denom = Scalar::one();
        let xi_s = Scalar::from_integer(BigInt::from(xi));
        for (j, &(xj, _)) in values.iter().enumerate() {
            if i == j {
                continue;
            }
            let xj_s = Scalar::from_integer(BigInt::from(xj));
            basis = &basis
                * &UniPoly::from_coeffs(vec![-xj_s.clone(), Scalar::one()]);
            denom *= &xi_s - &xj_s;
        }
        if denom.is_zero() {
            return Err(Error::Internal("repeated interpolation node".into()));
        }
        let w = Scalar::from_integer(BigInt::from(yi)) / denom;
        acc = &acc + &basis.scale(&w);
    }
    Ok(acc)
}

/// Chamber counts from evaluations of the characteristic polynomial:
/// total chambers and relatively bounded chambers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberCounts {
    pub chambers: BigInt,
    pub bounded: BigInt,
}

pub fn chamber_counts(arr: &Arrangement) -> Result<ChamberCounts> {
    let chi = charpoly_mobius(arr)?;
    let ell = arr.dimension();
    let r = arr.rank();
    let at_minus1 = chi.eval(&Scalar::from_integer(BigInt::from(-1)));
    let at_1 = chi.eval(&Scalar::one());
    let chambers = signed_eval(&at_minus1, ell, "(-1)^dim chi(-1)")?;
    let bounded = if at_1.is_zero() {
        BigInt::zero()
    } else {
        signed_eval(&at_1, r, "(-1)^rank chi(1)")?
    };
    Ok(ChamberCounts { chambers, bounded })
}

fn signed_eval(v: &Scalar, parity: usize, what: &str) -> Result<BigInt> {
    debug_assert!(v.is_integer());
    let mut x = v.to_integer();
    if parity % 2 == 1 {
        x = -x;
    }
    if x.is_negative() {
        return Err(Error::Internal(format!("{what} came out negative: {x}")));
    }
    Ok(x)
}

/// Unsigned Whitney numbers b_i, with b_i = |coefficient of t^(dim-i)| and
/// the alternating sign pattern checked.
pub fn betti_numbers(arr: &Arrangement) -> Result<Vec<BigInt>> {
    let chi = charpoly_mobius(arr)?;
    let ell = arr.dimension();
    let r = arr.rank();
    let mut out = Vec::with_capacity(r + 1);
    for i in 0..=r {
        let c = chi.coeff(ell - i);
        debug_assert!(c.is_integer());
        let c = c.to_integer();
        let signed = if i % 2 == 1 { -c.clone() } else { c.clone() };
        if signed.is_negative() {
            return Err(Error::Internal(format!(
                "characteristic coefficient of t^{} has unexpected sign: {c}",
                ell - i
            )));
        }
        out.push(signed);
    }
    Ok(out)
}
