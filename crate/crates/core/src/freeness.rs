//! Freeness decision procedures with machine-checkable certificates.
//!
//! Rank at most 2 is always free; rank 3 is decided by comparing the
//! quadratic Whitney coefficient b2 with the product of the Ziegler
//! multirestriction exponents; rank 4 combines a multirestriction basis
//! search with the b2 identity and a local-freeness cross-check. Saito's
//! criterion validates every basis that is ever claimed.

use crate::arrangement::{Arrangement, Multiplicity};
use crate::charpoly::charpoly_mobius;
use crate::derivations::{
    exponents_rank2, graded_basis, graded_dim, saito_check, VectorField,
};
use crate::error::{Error, Result};
use crate::lattice::intersection_lattice;
use crate::matrix::MatrixQ;
use crate::multipoly::MultiPoly;
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;
use num::bigint::BigInt;
use num::{One, Signed, Zero};

/// Attempt cap for Saito combinations in the multirestriction search.
pub const DEFAULT_SAITO_BUDGET: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreenessStatus {
    Free,
    NotFree,
    Unknown,
}

impl std::fmt::Display for FreenessStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FreenessStatus::Free => "Free",
            FreenessStatus::NotFree => "NotFree",
            FreenessStatus::Unknown => "Unknown",
        })
    }
}

/// Outcome of a freeness test. `method` names the criterion that decided;
/// a NotFree produced by `saito-basis` only refutes that particular basis,
/// every other NotFree refutes freeness of the module itself.
#[derive(Clone, Debug)]
pub struct FreenessCertificate {
    pub status: FreenessStatus,
    /// Sorted ascending; present exactly when status is Free.
    pub exponents: Option<Vec<usize>>,
    pub basis: Option<Vec<VectorField>>,
    /// b2 minus the exponent pair sum (the cokernel dimension of the
    /// restriction map); 0 on Free via char3/b2, positive on NotFree.
    pub obstruction: Option<BigInt>,
    pub method: String,
    pub note: Option<String>,
}

impl FreenessCertificate {
    fn unknown(method: &str, note: String) -> Self {
        FreenessCertificate {
            status: FreenessStatus::Unknown,
            exponents: None,
            basis: None,
            obstruction: None,
            method: method.into(),
            note: Some(note),
        }
    }
}

/// chi(A,t)/(t-1), which is exact for nonempty central arrangements.
fn charpoly_reduced(arr: &Arrangement) -> Result<UniPoly> {
    let chi = charpoly_mobius(arr)?;
    let (q, r) = chi.div_rem(&UniPoly::from_int_coeffs(&[-1, 1]))?;
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "characteristic polynomial {chi} of a central arrangement lacks the (t-1) factor"
        )));
    }
    Ok(q)
}

fn pad_exponents(mut exps: Vec<usize>, zeros: usize) -> Vec<usize> {
    exps.extend(std::iter::repeat(0).take(zeros));
    exps.sort_unstable();
    exps
}

/// Freeness of a central simple arrangement, dispatched on the rank.
pub fn free_test(arr: &Arrangement) -> Result<FreenessCertificate> {
    if !arr.is_central() {
        return Err(Error::NotCentral("freeness test needs a central arrangement".into()));
    }
    let (ess, center_dim) = arr.essentialize()?;
    let r = ess.dimension();
    let n = arr.num_hyperplanes();
    match r {
        0 => Ok(FreenessCertificate {
            status: FreenessStatus::Free,
            exponents: Some(vec![0; arr.dimension()]),
            basis: None,
            obstruction: None,
            method: "dispatch".into(),
            note: None,
        }),
        1 => Ok(FreenessCertificate {
            status: FreenessStatus::Free,
            exponents: Some(pad_exponents(vec![1], center_dim)),
            basis: None,
            obstruction: None,
            method: "dispatch".into(),
            note: None,
        }),
        2 => Ok(FreenessCertificate {
            status: FreenessStatus::Free,
            exponents: Some(pad_exponents(vec![1, n - 1], center_dim)),
            basis: None,
            obstruction: None,
            method: "rank<=2".into(),
            note: None,
        }),
        3 => {
            let mut best: Option<FreenessCertificate> = None;
            for pivot in 0..n {
                let cert = free_test_rank3(&ess, pivot)?;
                if cert.status == FreenessStatus::Free {
                    return Ok(finish_padded(cert, center_dim));
                }
                let better = match (&best, &cert.obstruction) {
                    (None, _) => true,
                    (Some(b), Some(o)) => {
                        o < b.obstruction.as_ref().expect("NotFree carries obstruction")
                    }
                    _ => false,
                };
                if better {
                    best = Some(cert);
                }
            }
            Ok(finish_padded(best.expect("at least one pivot"), center_dim))
        }
        _ => {
            for pivot in 0..n {
                let cert = free_test_highrank(&ess, pivot)?;
                if cert.status != FreenessStatus::Unknown {
                    return Ok(finish_padded(cert, center_dim));
                }
            }
            Ok(FreenessCertificate::unknown(
                "dispatch",
                "every pivot's multirestriction search was inconclusive".into(),
            ))
        }
    }
}

fn finish_padded(mut cert: FreenessCertificate, center_dim: usize) -> FreenessCertificate {
    if center_dim > 0 {
        cert.exponents = cert.exponents.map(|e| pad_exponents(e, center_dim));
        // a basis found in essential coordinates is not one of the ambient
        // module; only the exponents carry over
        cert.basis = None;
    }
    cert
}

/// Decide rank-3 freeness at one pivot: free iff b2 = d1 d2 where (d1, d2)
/// are the Ziegler multirestriction exponents.
pub fn free_test_rank3(arr: &Arrangement, pivot: usize) -> Result<FreenessCertificate> {
    if !arr.is_central() {
        return Err(Error::NotCentral("rank-3 criterion needs a central arrangement".into()));
    }
    let (ess, _) = arr.essentialize()?;
    if ess.dimension() != 3 {
        return Err(Error::Precondition(format!(
            "rank-3 criterion on a rank-{} arrangement",
            ess.dimension()
        )));
    }
    ess.hyperplane(pivot)?;
    let q = charpoly_reduced(&ess)?;
    debug_assert_eq!(q.degree(), Some(2));
    let b2 = q.coeff(0).to_integer();
    let (restr, mult, _) = ess.ziegler(pivot)?;
    let (d1, d2) = exponents_rank2(&restr, &mult)?;
    let product = BigInt::from(d1) * BigInt::from(d2);
    let obstruction = &b2 - &product;
    if obstruction.is_negative() {
        return Err(Error::Internal(format!(
            "b2 = {b2} fell below the exponent product {product} at pivot {pivot}"
        )));
    }
    if obstruction.is_zero() {
        Ok(FreenessCertificate {
            status: FreenessStatus::Free,
            exponents: Some(pad_exponents(vec![1, d1, d2], 0)),
            basis: None,
            obstruction: Some(BigInt::zero()),
            method: "char3".into(),
            note: None,
        })
    } else {
        Ok(FreenessCertificate {
            status: FreenessStatus::NotFree,
            exponents: None,
            basis: None,
            obstruction: Some(obstruction),
            method: "char3".into(),
            note: Some(format!(
                "cokernel dimension of the restriction map at pivot {pivot}"
            )),
        })
    }
}

/// Rank >= 4 criterion at one pivot: a certified-free multirestriction with
/// exponents E makes A free iff b2 equals the pairwise sum of E. The
/// local-freeness route is computed alongside as a cross-check; any
/// disagreement is reported in the note, never silently resolved.
pub fn free_test_highrank(arr: &Arrangement, pivot: usize) -> Result<FreenessCertificate> {
    if !arr.is_central() {
        return Err(Error::NotCentral("high-rank criterion needs a central arrangement".into()));
    }
    let (ess, _) = arr.essentialize()?;
    let ell = ess.dimension();
    if ell < 4 {
        return Err(Error::Precondition(format!(
            "high-rank criterion on a rank-{ell} arrangement"
        )));
    }
    ess.hyperplane(pivot)?;
    let (restr, mult, _) = ess.ziegler(pivot)?;
    if restr.rank() > 3 {
        return Ok(FreenessCertificate::unknown(
            "b2-highrank",
            format!(
                "multirestriction rank {} exceeds the degree-3 search",
                restr.rank()
            ),
        ));
    }
    let search = multi_free_search(&restr, &mult)?;
    let exps = match (search.status, search.exponents) {
        (FreenessStatus::Free, Some(e)) => e,
        (FreenessStatus::Unknown, _) => {
            return Ok(FreenessCertificate::unknown(
                "b2-highrank",
                format!(
                    "multirestriction search inconclusive at pivot {pivot}: {}",
                    search.note.unwrap_or_default()
                ),
            ))
        }
        _ => {
            return Err(Error::Internal(
                "multirestriction search claimed NotFree, which it must never do".into(),
            ))
        }
    };
    let q = charpoly_reduced(&ess)?;
    debug_assert_eq!(q.degree(), Some(ell - 1));
    let b2 = q.coeff(ell - 3).to_integer();
    let mut pair_sum = BigInt::zero();
    for i in 0..exps.len() {
        for j in i + 1..exps.len() {
            pair_sum += BigInt::from(exps[i]) * BigInt::from(exps[j]);
        }
    }
    let obstruction = &b2 - &pair_sum;
    if obstruction.is_negative() {
        return Err(Error::Internal(format!(
            "b2 = {b2} fell below the pairwise exponent sum {pair_sum} at pivot {pivot}"
        )));
    }
    // independent route: local freeness along the pivot plus the certified
    // multirestriction freeness (the two must agree with the b2 verdict)
    let locally_free = locally_free_along(&ess, pivot)?;
    let b2_free = obstruction.is_zero();
    let note = if b2_free != locally_free {
        Some(format!(
            "cross-check disagreement at pivot {pivot}: b2 identity says {}, local freeness plus free multirestriction says {}",
            if b2_free { "Free" } else { "NotFree" },
            if locally_free { "Free" } else { "NotFree" },
        ))
    } else {
        None
    };
    if b2_free {
        let mut exponents = exps;
        exponents.push(1);
        exponents.sort_unstable();
        Ok(FreenessCertificate {
            status: FreenessStatus::Free,
            exponents: Some(exponents),
            basis: None,
            obstruction: Some(BigInt::zero()),
            method: "b2-highrank".into(),
            note,
        })
    } else {
        Ok(FreenessCertificate {
            status: FreenessStatus::NotFree,
            exponents: None,
            basis: None,
            obstruction: Some(obstruction),
            method: "b2-highrank".into(),
            note: note.or_else(|| {
                Some(format!("b2 exceeds the pairwise exponent sum at pivot {pivot}"))
            }),
        })
    }
}

/// True iff every proper flat inside H_pivot localizes to a free
/// arrangement. Rank-2 localizations are skipped (always free); an Unknown
/// verdict from a deeper recursion counts as not verified.
pub fn locally_free_along(arr: &Arrangement, pivot: usize) -> Result<bool> {
    if !arr.is_central() {
        return Err(Error::NotCentral("local freeness needs a central arrangement".into()));
    }
    arr.hyperplane(pivot)?;
    let top = arr.rank();
    let lat = intersection_lattice(arr)?;
    for f in lat.flats() {
        if !f.contains_hyperplane(pivot) || f.rank <= 2 || f.rank >= top {
            continue;
        }
        let localization = arr.sub_arrangement(&f.members)?;
        if free_test(&localization)?.status != FreenessStatus::Free {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Semidecision for freeness of a multiarrangement of rank at most 3:
/// assembles candidate bases from graded kernels and validates them with
/// Saito's criterion. Never returns NotFree.
pub fn multi_free_search(arr: &Arrangement, m: &Multiplicity) -> Result<FreenessCertificate> {
    multi_free_search_budgeted(arr, m, DEFAULT_SAITO_BUDGET)
}

pub fn multi_free_search_budgeted(
    arr: &Arrangement,
    m: &Multiplicity,
    budget: u64,
) -> Result<FreenessCertificate> {
    if m.len() != arr.num_hyperplanes() {
        return Err(Error::DimensionMismatch(format!(
            "multiplicity length {} does not match {} hyperplanes",
            m.len(),
            arr.num_hyperplanes()
        )));
    }
    if !arr.is_central() {
        return Err(Error::NotCentral("multirestriction search needs a central arrangement".into()));
    }
    let dim = arr.dimension();
    // hyperplanes of multiplicity zero impose no condition; the effective
    // rank is that of the support
    let support: Vec<usize> = (0..arr.num_hyperplanes())
        .filter(|&i| m.get(i) > 0)
        .collect();
    let work = arr.sub_arrangement(&support)?;
    let r = work.rank();
    if r > 3 {
        return Err(Error::Precondition(format!(
            "multirestriction search supports rank at most 3, got {r}"
        )));
    }

    match r {
        0 => {
            let basis: Vec<VectorField> = (0..dim)
                .map(|j| {
                    let mut comps = vec![MultiPoly::zero(dim); dim];
                    comps[j] = MultiPoly::one(dim);
                    VectorField::new(comps).expect("constant field")
                })
                .collect();
            saito_check(arr, m, &basis)
        }
        1 => {
            let i = support[0];
            let h = arr.hyperplane(i)?;
            let a = h.normal_scalars();
            let norm2: Scalar = a.iter().map(|x| x * x).sum();
            let e: Vec<Scalar> = a.iter().map(|x| x / &norm2).collect();
            let alpha_pow = h.form().pow(m.get(i));
            let mut basis = vec![VectorField::new(
                e.iter()
                    .map(|c| MultiPoly::constant(dim, c.clone()))
                    .collect::<Vec<_>>(),
            )
            .expect("direction field")
            .scale_poly(&alpha_pow)];
            for v in MatrixQ::from_rows(vec![a.clone()]).kernel_basis() {
                basis.push(
                    VectorField::new(
                        v.iter()
                            .map(|c| MultiPoly::constant(dim, c.clone()))
                            .collect(),
                    )
                    .expect("tangent field"),
                );
            }
            saito_check(arr, m, &basis)
        }
        2 if dim == 2 => search_rank2(arr, m, &work, budget),
        2 => {
            // essential model decides the exponents; no ambient basis
            let (ess, center) = work.essentialize()?;
            let work_m = Multiplicity::new(support.iter().map(|&i| m.get(i)).collect());
            let (d1, d2) = exponents_rank2(&ess, &work_m)?;
            Ok(FreenessCertificate {
                status: FreenessStatus::Free,
                exponents: Some(pad_exponents(vec![d1, d2], center)),
                basis: None,
                obstruction: None,
                method: "rank<=2".into(),
                note: Some("exponents computed on the essentialized support".into()),
            })
        }
        3 if dim == 3 => search_rank3(arr, m, budget),
        _ => {
            let (ess, center) = work.essentialize()?;
            let work_m = Multiplicity::new(support.iter().map(|&i| m.get(i)).collect());
            let mut cert = search_rank3(&ess, &work_m, budget)?;
            cert = finish_padded(cert, center);
            if cert.note.is_none() {
                cert.note = Some("exponents computed on the essentialized support".into());
            }
            Ok(cert)
        }
    }
}

/// Rank-2 planar case: always free; build an actual Saito-verified basis
/// from the first graded jumps.
fn search_rank2(
    arr: &Arrangement,
    m: &Multiplicity,
    work: &Arrangement,
    budget: u64,
) -> Result<FreenessCertificate> {
    let support: Vec<usize> = (0..arr.num_hyperplanes())
        .filter(|&i| m.get(i) > 0)
        .collect();
    let work_m = Multiplicity::new(support.iter().map(|&i| m.get(i)).collect());
    let (d1, d2) = exponents_rank2(work, &work_m)?;
    let low = graded_basis(arr, m, d1)?;
    let high = if d2 == d1 {
        low.clone()
    } else {
        graded_basis(arr, m, d2)?
    };
    let mut attempts = 0u64;
    for (i, a) in low.iter().enumerate() {
        let start = if d2 == d1 { i + 1 } else { 0 };
        for b in &high[start..] {
            attempts += 1;
            if attempts > budget {
                return Ok(FreenessCertificate::unknown(
                    "saito-basis",
                    format!("Saito attempt budget {budget} exhausted"),
                ));
            }
            let cert = saito_check(arr, m, &[a.clone(), b.clone()])?;
            if cert.status == FreenessStatus::Free {
                return Ok(cert);
            }
        }
    }
    Err(Error::Internal(format!(
        "no Saito pair found for a rank-2 multiarrangement with exponents ({d1}, {d2})"
    )))
}

fn monomial_count_dim3(d: usize, gen: usize) -> u64 {
    if d < gen {
        return 0;
    }
    let k = (d - gen) as u64;
    (k + 1) * (k + 2) / 2
}

/// Greedy rank-3 search: infer the exponent triple from the first jumps of
/// the Hilbert function under a freeness hypothesis, validate with Saito,
/// then fall back to exhaustive degree combinations within the budget.
fn search_rank3(arr: &Arrangement, m: &Multiplicity, budget: u64) -> Result<FreenessCertificate> {
    let w = m.weight() as usize;
    let mut dims: Vec<Option<usize>> = vec![None; w + 1];
    let mut bases: Vec<Option<Vec<VectorField>>> = vec![None; w + 1];

    let mut d1 = None;
    for d in 0..=w / 3 {
        let dim = graded_dim(arr, m, d)?;
        dims[d] = Some(dim);
        if dim > 0 {
            d1 = Some(d);
            break;
        }
    }
    let d1 = match d1 {
        Some(d) => d,
        None => {
            return Ok(FreenessCertificate::unknown(
                "saito-basis",
                format!("no member field of degree at most |m|/3 = {}", w / 3),
            ))
        }
    };
    let dmax = w - 2 * d1;
    let mut attempts = 0u64;

    // Phase 1: exponent inference assuming the module is free.
    let mut gens: Vec<usize> = Vec::new();
    for d in d1..=dmax {
        let dim = match dims[d] {
            Some(v) => v,
            None => {
                let v = graded_dim(arr, m, d)?;
                dims[d] = Some(v);
                v
            }
        };
        let expected: u64 = gens.iter().map(|&g| monomial_count_dim3(d, g)).sum();
        let fresh = (dim as u64).saturating_sub(expected) as usize;
        for _ in 0..fresh {
            gens.push(d);
        }
        if gens.len() >= 3 {
            break;
        }
    }
    if gens.len() == 3 && gens.iter().sum::<usize>() == w {
        if let Some(cert) =
            try_triples(arr, m, &gens, &mut bases, &mut attempts, budget)?
        {
            return Ok(cert);
        }
    }

    // Phase 2: every degree triple that can sum to |m|.
    for top in d1..=dmax {
        for mid in d1..=top {
            let Some(low) = w.checked_sub(top + mid) else { continue };
            if low < d1 || low > mid {
                continue;
            }
            if let Some(cert) = try_triples(
                arr,
                m,
                &[low, mid, top],
                &mut bases,
                &mut attempts,
                budget,
            )? {
                return Ok(cert);
            }
            if attempts > budget {
                return Ok(FreenessCertificate::unknown(
                    "saito-basis",
                    format!("Saito attempt budget {budget} exhausted"),
                ));
            }
        }
    }
    Ok(FreenessCertificate::unknown(
        "saito-basis",
        "no generator triple passed Saito's criterion".into(),
    ))
}

/// Try every choice of one field per generator degree (distinct fields for
/// repeated degrees), in lexicographic order.
fn try_triples(
    arr: &Arrangement,
    m: &Multiplicity,
    degrees: &[usize],
    bases: &mut Vec<Option<Vec<VectorField>>>,
    attempts: &mut u64,
    budget: u64,
) -> Result<Option<FreenessCertificate>> {
    let mut lists = Vec::with_capacity(degrees.len());
    for &d in degrees {
        if bases[d].is_none() {
            bases[d] = Some(graded_basis(arr, m, d)?);
        }
        lists.push(bases[d].as_ref().unwrap().clone());
    }
    let sizes: Vec<usize> = lists.iter().map(|l| l.len()).collect();
    if sizes.iter().any(|&s| s == 0) {
        return Ok(None);
    }
    let mut idx = vec![0usize; degrees.len()];
    // enforce strictly increasing indices among equal degrees
    let fix = |idx: &mut Vec<usize>| -> bool {
        for k in 1..idx.len() {
            if degrees[k] == degrees[k - 1] && idx[k] <= idx[k - 1] {
                idx[k] = idx[k - 1] + 1;
            }
        }
        idx.iter().zip(&sizes).all(|(&i, &s)| i < s)
    };
    if !fix(&mut idx) {
        return Ok(None);
    }
    loop {
        *attempts += 1;
        if *attempts > budget {
            return Ok(None);
        }
        let candidates: Vec<VectorField> = idx
            .iter()
            .zip(&lists)
            .map(|(&i, l)| l[i].clone())
            .collect();
        let cert = saito_check(arr, m, &candidates)?;
        if cert.status == FreenessStatus::Free {
            return Ok(Some(cert));
        }
        // odometer over the index tuple
        let mut pos = degrees.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            idx[pos] += 1;
            for k in pos + 1..idx.len() {
                idx[k] = 0;
            }
            if fix(&mut idx) {
                break;
            }
        }
    }
}

/// Exact test of chi(t) = prod (t - e).
pub fn terao_factor_check(chi: &UniPoly, exponents: &[usize]) -> bool {
    let roots: Vec<Scalar> = exponents
        .iter()
        .map(|&e| Scalar::from_integer(BigInt::from(e)))
        .collect();
    *chi == UniPoly::from_roots(&roots)
}

/// Exact test of t^ell chi(1/t) = prod (1 - e t) modulo t^ell.
pub fn chern_relation_check(chi: &UniPoly, exponents: &[usize], ell: usize) -> bool {
    if chi.degree().map_or(false, |d| d > ell) {
        return false;
    }
    let lhs = chi.reversed(ell).truncated(ell);
    let mut rhs = UniPoly::one();
    for &e in exponents {
        let factor = UniPoly::from_coeffs(vec![
            Scalar::one(),
            -Scalar::from_integer(BigInt::from(e)),
        ]);
        rhs = (&rhs * &factor).truncated(ell);
    }
    lhs == rhs
}

/// The free-case Solomon-Terao limit, computed factorwise: each exponent e
/// contributes (t(1-x) - (1-x^e)) / ((1-x) x^e) at x = 1. The geometric
/// quotient (1-x^e)/(1-x) is divided out symbolically before evaluating.
pub fn solomon_terao_free(exponents: &[usize]) -> Result<UniPoly> {
    let one = Scalar::one();
    let mut chi = UniPoly::one();
    for &e in exponents {
        // 1 - x^e over the variable x
        let numer = &UniPoly::one() - &UniPoly::monomial(Scalar::one(), e);
        let denom = UniPoly::from_int_coeffs(&[1, -1]);
        let series = if numer.is_zero() {
            UniPoly::zero()
        } else {
            numer.div_exact(&denom)?
        };
        let value = series.eval(&one);
        let scale = UniPoly::monomial(Scalar::one(), e).eval(&one);
        let factor = UniPoly::from_coeffs(vec![-(&value / &scale), Scalar::one()]);
        chi = &chi * &factor;
    }
    Ok(chi)
}
