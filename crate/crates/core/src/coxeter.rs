//! Root systems of types A through D (rank at most 4) and G2, their
//! truncated affine Weyl deformations, and exact checkers for the
//! freeness and characteristic-polynomial statements about the Catalan
//! and Shi families.
//!
//! Type A uses the essential chart x_{l+1} = 0, so its forms are
//! x_i - x_j and x_i; types B/C/D use the standard x_i +- x_j, x_i, 2x_i
//! sets; G2 uses coordinates in the simple-root basis. Characteristic
//! polynomials and freeness are invariant under these linear models.
//!
//! The window convention follows the conjectures: a pair (a, b) denotes
//! the level window [-a, b], so the extended Catalan arrangement is
//! (k, k) and the Shi arrangement is (k - 1, k).

use crate::arrangement::{Arrangement, Multiplicity};
use crate::charpoly::charpoly_mobius;
use crate::derivations::exponents_rank2;
use crate::error::{Error, Result};
use crate::freeness::{free_test, FreenessCertificate, FreenessStatus};
use crate::hyperplane::Hyperplane;
use crate::roots::all_real_roots_nonpositive;
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;
use num::bigint::BigInt;
use num::{One, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G => "G",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            "G" | "g" => Ok(Family::G),
            other => Err(Error::UnsupportedRootSystem(format!(
                "unknown family {other:?}, expected one of A, B, C, D, G"
            ))),
        }
    }
}

/// A positive system in essential integer coordinates, with its exponent
/// and Coxeter-number tables. The tables are constants, but every one is
/// recomputed through the freeness module in the test suite.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub positive_roots: Vec<Vec<i64>>,
    pub exponents: Vec<usize>,
    pub coxeter_number: usize,
}

impl RootSystem {
    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }
}

/// The supported root systems: A1..A4, B2..B4, C2..C4, D3..D4, G2.
pub fn positive_roots(family: Family, rank: usize) -> Result<RootSystem> {
    let bad = |msg: &str| Err(Error::UnsupportedRootSystem(msg.into()));
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let unit = |i: usize, rank: usize, c: i64| {
        let mut v = vec![0i64; rank];
        v[i] = c;
        v
    };
    let pair = |i: usize, j: usize, rank: usize, s: i64| {
        let mut v = vec![0i64; rank];
        v[i] = 1;
        v[j] = s;
        v
    };
    let (exponents, coxeter_number) = match family {
        Family::A => {
            if !(1..=4).contains(&rank) {
                return bad("type A supports rank 1 through 4");
            }
            for i in 0..rank {
                for j in i + 1..rank {
                    roots.push(pair(i, j, rank, -1));
                }
            }
            for i in 0..rank {
                roots.push(unit(i, rank, 1));
            }
            ((1..=rank).collect(), rank + 1)
        }
        Family::B | Family::C => {
            if !(2..=4).contains(&rank) {
                return bad("types B and C support rank 2 through 4");
            }
            for i in 0..rank {
                for j in i + 1..rank {
                    roots.push(pair(i, j, rank, -1));
                    roots.push(pair(i, j, rank, 1));
                }
            }
            let short = if family == Family::B { 1 } else { 2 };
            for i in 0..rank {
                roots.push(unit(i, rank, short));
            }
            ((0..rank).map(|i| 2 * i + 1).collect(), 2 * rank)
        }
        Family::D => {
            if !(3..=4).contains(&rank) {
                return bad("type D supports rank 3 and 4");
            }
            for i in 0..rank {
                for j in i + 1..rank {
                    roots.push(pair(i, j, rank, -1));
                    roots.push(pair(i, j, rank, 1));
                }
            }
            let mut exps: Vec<usize> = (0..rank - 1).map(|i| 2 * i + 1).collect();
            exps.push(rank - 1);
            exps.sort_unstable();
            (exps, 2 * rank - 2)
        }
        Family::G => {
            if rank != 2 {
                return bad("type G supports rank 2 only");
            }
            roots = vec![
                vec![1, 0],
                vec![0, 1],
                vec![1, 1],
                vec![2, 1],
                vec![3, 1],
                vec![3, 2],
            ];
            (vec![1, 5], 6)
        }
    };
    Ok(RootSystem {
        family,
        rank,
        positive_roots: roots,
        exponents,
        coxeter_number,
    })
}

/// A truncated affine Weyl arrangement: one hyperplane alpha(x) = k per
/// positive root alpha and integer level k in the window [lo, hi].
#[derive(Clone, Debug)]
pub struct DeformationSpec {
    pub system: RootSystem,
    pub lo: i64,
    pub hi: i64,
}

impl DeformationSpec {
    pub fn new(system: RootSystem, lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::ParameterDomain(format!(
                "empty level window [{lo}, {hi}]"
            )));
        }
        Ok(DeformationSpec { system, lo, hi })
    }
}

pub fn deformation(spec: &DeformationSpec) -> Result<Arrangement> {
    let rank = spec.system.rank;
    let mut hyps = Vec::new();
    for root in &spec.system.positive_roots {
        for k in spec.lo..=spec.hi {
            hyps.push(Hyperplane::from_ints(root, k)?);
        }
    }
    Arrangement::new(rank, hyps)
}

/// The reflecting arrangement itself (the window [0, 0]).
pub fn coxeter_arrangement(system: &RootSystem) -> Result<Arrangement> {
    deformation(&DeformationSpec::new(system.clone(), 0, 0)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErKind {
    Catalan,
    Shi,
}

impl std::fmt::Display for ErKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ErKind::Catalan => "catalan",
            ErKind::Shi => "shi",
        })
    }
}

impl std::str::FromStr for ErKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "catalan" => Ok(ErKind::Catalan),
            "shi" => Ok(ErKind::Shi),
            other => Err(Error::ParameterDomain(format!(
                "unknown family kind {other:?}, expected catalan or shi"
            ))),
        }
    }
}

/// Comparison of a Catalan or Shi instance against its closed forms: the
/// cone must be free with exponents (1, e_i + kh) respectively
/// (1, kh, ..., kh), and the affine characteristic polynomial must equal
/// prod (t - e_i - kh) respectively (t - kh)^l.
#[derive(Clone, Debug)]
pub struct ErReport {
    pub system: String,
    pub kind: ErKind,
    pub k: usize,
    /// Raw level window [lo, hi].
    pub window: (i64, i64),
    pub num_hyperplanes: usize,
    pub certificate: FreenessCertificate,
    pub expected_exponents: Vec<usize>,
    /// None when the freeness test was inconclusive (rank-4 root systems
    /// lead to rank-5 cones, outside the decision procedures).
    pub exponents_match: Option<bool>,
    pub charpoly: UniPoly,
    pub expected_charpoly: UniPoly,
    pub charpoly_match: bool,
    /// Both comparisons succeeded; an inconclusive freeness test is a
    /// failure here, undecided is only visible via exponents_match.
    pub pass: bool,
}

pub fn er_verify(system: &RootSystem, k: usize, kind: ErKind) -> Result<ErReport> {
    let (lo, hi) = match kind {
        ErKind::Catalan => (-(k as i64), k as i64),
        ErKind::Shi => {
            if k == 0 {
                return Err(Error::ParameterDomain(
                    "the Shi family needs k >= 1".into(),
                ));
            }
            (1 - k as i64, k as i64)
        }
    };
    let arr = deformation(&DeformationSpec::new(system.clone(), lo, hi)?)?;
    let kh = k * system.coxeter_number;
    let mut expected_exponents: Vec<usize> = match kind {
        ErKind::Catalan => system.exponents.iter().map(|e| e + kh).collect(),
        ErKind::Shi => vec![kh; system.rank],
    };
    let expected_charpoly = UniPoly::from_roots(
        &expected_exponents
            .iter()
            .map(|&e| Scalar::from_integer(BigInt::from(e)))
            .collect::<Vec<_>>(),
    );
    expected_exponents.push(1);
    expected_exponents.sort_unstable();

    let certificate = free_test(&arr.cone())?;
    let exponents_match = match certificate.status {
        FreenessStatus::Unknown => None,
        FreenessStatus::NotFree => Some(false),
        FreenessStatus::Free => {
            Some(certificate.exponents.as_deref() == Some(expected_exponents.as_slice()))
        }
    };
    let charpoly = charpoly_mobius(&arr)?;
    let charpoly_match = charpoly == expected_charpoly;
    Ok(ErReport {
        system: system.name(),
        kind,
        k,
        window: (lo, hi),
        num_hyperplanes: arr.num_hyperplanes(),
        certificate,
        expected_exponents,
        exponents_match,
        charpoly,
        expected_charpoly,
        charpoly_match,
        pass: exponents_match == Some(true) && charpoly_match,
    })
}

/// Rank-2 constant-multiplicity exponents against the closed form:
/// m = 2k gives (kh, kh) and m = 2k+1 gives (e1 + kh, e2 + kh).
#[derive(Clone, Debug)]
pub struct MultiCheckReport {
    pub system: String,
    pub multiplicity: u32,
    pub computed: (usize, usize),
    pub expected: (usize, usize),
    pub pass: bool,
}

pub fn coxeter_multi_check(system: &RootSystem, m: u32) -> Result<MultiCheckReport> {
    if system.rank != 2 {
        return Err(Error::ParameterDomain(format!(
            "constant-multiplicity check needs rank 2, got {}",
            system.rank
        )));
    }
    if m == 0 {
        return Err(Error::ParameterDomain(
            "constant-multiplicity check needs m >= 1".into(),
        ));
    }
    let arr = coxeter_arrangement(system)?;
    let mult = Multiplicity::constant(arr.num_hyperplanes(), m);
    let computed = exponents_rank2(&arr, &mult)?;
    let h = system.coxeter_number;
    let k = (m / 2) as usize;
    let expected = if m % 2 == 0 {
        (k * h, k * h)
    } else {
        (system.exponents[0] + k * h, system.exponents[1] + k * h)
    };
    Ok(MultiCheckReport {
        system: system.name(),
        multiplicity: m,
        computed,
        expected,
        pass: computed == expected,
    })
}

fn check_fe_domain(a: i64, b: i64) -> Result<()> {
    if a < -1 || a > b || (a == -1 && b <= 0) {
        return Err(Error::ParameterDomain(format!(
            "window parameters (a, b) = ({a}, {b}) lie outside -1 <= a <= b minus {{(-1, 0), (-1, -1)}}"
        )));
    }
    Ok(())
}

/// An exactly checked polynomial identity; `holds` iff lhs = rhs.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub holds: bool,
    pub lhs: UniPoly,
    pub rhs: UniPoly,
}

impl IdentityReport {
    fn compare(lhs: UniPoly, rhs: UniPoly) -> Self {
        IdentityReport {
            holds: lhs == rhs,
            lhs,
            rhs,
        }
    }
    /// The difference lhs - rhs, zero exactly when the identity holds.
    pub fn residual(&self) -> UniPoly {
        &self.lhs - &self.rhs
    }
}

/// Functional equation: chi(A^{[-a,b]}, c - t) = (-1)^l chi(A^{[-a,b]}, t)
/// with c = (a + b + 1) h.
pub fn conjecture_fe(system: &RootSystem, a: i64, b: i64) -> Result<IdentityReport> {
    check_fe_domain(a, b)?;
    let arr = deformation(&DeformationSpec::new(system.clone(), -a, b)?)?;
    let chi = charpoly_mobius(&arr)?;
    let c = Scalar::from_integer(BigInt::from((a + b + 1) * system.coxeter_number as i64));
    let lhs = chi.compose_affine(&-Scalar::one(), &c);
    let rhs = if system.rank % 2 == 1 {
        chi.scale(&-Scalar::one())
    } else {
        chi
    };
    Ok(IdentityReport::compare(lhs, rhs))
}

/// Window growth as a shift: chi(A^{[-a-1,b+1]}, t) = chi(A^{[-a,b]}, t - h).
pub fn conjecture_hshift(system: &RootSystem, a: i64, b: i64) -> Result<IdentityReport> {
    check_fe_domain(a, b)?;
    let inner = deformation(&DeformationSpec::new(system.clone(), -a, b)?)?;
    let outer = deformation(&DeformationSpec::new(system.clone(), -a - 1, b + 1)?)?;
    let lhs = charpoly_mobius(&outer)?;
    let h = Scalar::from_integer(BigInt::from(system.coxeter_number));
    let rhs = charpoly_mobius(&inner)?.compose_affine(&Scalar::one(), &-h);
    Ok(IdentityReport::compare(lhs, rhs))
}

/// Outcome of the common-real-part check for chi(A^{[-a,b]}).
#[derive(Clone, Debug)]
pub struct RhReport {
    pub holds: bool,
    /// The predicted common real part (a + b + 1) h / 2.
    pub center: Scalar,
    /// False only when the a = b override was used.
    pub in_domain: bool,
    /// Set when holds is false: the failed parity coefficient or the
    /// even-part polynomial with a root off the nonpositive ray.
    pub witness: Option<String>,
}

/// Riemann-hypothesis-style check on the window (a, b) with 0 <= a < b:
/// every root of chi must have real part c = (a + b + 1) h / 2. Exact
/// reduction: psi(s) = chi(c + s) must be odd or even matching the rank,
/// and its even part q (with psi(s) = s^eps q(s^2)) must have all roots
/// real and nonpositive.
pub fn conjecture_rh(system: &RootSystem, a: i64, b: i64) -> Result<RhReport> {
    conjecture_rh_with_override(system, a, b, false)
}

/// As `conjecture_rh`, but `allow_equal` additionally permits a = b,
/// reported with in_domain = false since the conjecture does not claim it.
pub fn conjecture_rh_with_override(
    system: &RootSystem,
    a: i64,
    b: i64,
    allow_equal: bool,
) -> Result<RhReport> {
    let equal_override = allow_equal && a >= 0 && a == b;
    if !equal_override && !(0 <= a && a < b) {
        return Err(Error::ParameterDomain(format!(
            "window parameters (a, b) = ({a}, {b}) lie outside 0 <= a < b"
        )));
    }
    let ell = system.rank;
    let arr = deformation(&DeformationSpec::new(system.clone(), -a, b)?)?;
    let chi = charpoly_mobius(&arr)?;
    let center = Scalar::new(
        BigInt::from((a + b + 1) * system.coxeter_number as i64),
        BigInt::from(2),
    );
    let psi = chi.compose_affine(&Scalar::one(), &center);
    let report = |holds: bool, witness: Option<String>| RhReport {
        holds,
        center: center.clone(),
        in_domain: !equal_override,
        witness,
    };
    for i in 0..=ell {
        if i % 2 != ell % 2 && !psi.coeff(i).is_zero() {
            return Ok(report(
                false,
                Some(format!(
                    "centered polynomial breaks parity: coefficient of s^{i} is {}",
                    psi.coeff(i)
                )),
            ));
        }
    }
    let eps = ell % 2;
    let q = UniPoly::from_coeffs(
        (0..=(ell - eps) / 2).map(|j| psi.coeff(2 * j + eps)).collect(),
    );
    if all_real_roots_nonpositive(&q)? {
        Ok(report(true, None))
    } else {
        Ok(report(
            false,
            Some(format!(
                "even part {} has a root outside the nonpositive reals",
                q.display("u")
            )),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeness::terao_factor_check;
    use crate::scalar::zint;

    fn rs(family: Family, rank: usize) -> RootSystem {
        positive_roots(family, rank).unwrap()
    }

    fn window(system: &RootSystem, lo: i64, hi: i64) -> Arrangement {
        deformation(&DeformationSpec::new(system.clone(), lo, hi).unwrap()).unwrap()
    }

    #[test]
    fn tables_self_verify() {
        let all = [
            (Family::A, 1),
            (Family::A, 2),
            (Family::A, 3),
            (Family::A, 4),
            (Family::B, 2),
            (Family::B, 3),
            (Family::B, 4),
            (Family::C, 2),
            (Family::C, 3),
            (Family::C, 4),
            (Family::D, 3),
            (Family::D, 4),
            (Family::G, 2),
        ];
        for (family, rank) in all {
            let system = rs(family, rank);
            let h = system.coxeter_number;
            let e = &system.exponents;
            assert_eq!(
                system.positive_roots.len(),
                e.iter().sum::<usize>(),
                "{}: root count",
                system.name()
            );
            for i in 0..rank {
                assert_eq!(e[i] + e[rank - 1 - i], h, "{}: duality", system.name());
            }
            let arr = coxeter_arrangement(&system).unwrap();
            assert!(arr.is_central() && arr.is_essential());
            let cert = free_test(&arr).unwrap();
            assert_eq!(cert.status, FreenessStatus::Free, "{}", system.name());
            assert_eq!(cert.exponents.as_ref(), Some(e), "{}", system.name());
            assert!(terao_factor_check(
                &charpoly_mobius(&arr).unwrap(),
                cert.exponents.as_ref().unwrap()
            ));
        }
    }

    #[test]
    fn unsupported_systems_rejected() {
        assert!(positive_roots(Family::A, 5).is_err());
        assert!(positive_roots(Family::D, 2).is_err());
        assert!(positive_roots(Family::G, 3).is_err());
        assert!("E".parse::<Family>().is_err());
    }

    #[test]
    fn deformation_counts() {
        assert_eq!(window(&rs(Family::A, 2), -1, 1).num_hyperplanes(), 9);
        assert_eq!(window(&rs(Family::G, 2), -1, 1).num_hyperplanes(), 18);
        assert_eq!(window(&rs(Family::A, 3), 1, 1).num_hyperplanes(), 6);
        assert!(DeformationSpec::new(rs(Family::A, 2), 1, 0).is_err());
    }

    #[test]
    fn b_and_c_deformations_differ() {
        // the Coxeter arrangements agree, but 2x = 1 is not x = 1
        let b2 = rs(Family::B, 2);
        let c2 = rs(Family::C, 2);
        assert_eq!(
            charpoly_mobius(&coxeter_arrangement(&b2).unwrap()).unwrap(),
            charpoly_mobius(&coxeter_arrangement(&c2).unwrap()).unwrap()
        );
        let chi_b = charpoly_mobius(&window(&b2, 0, 1)).unwrap();
        let chi_c = charpoly_mobius(&window(&c2, 0, 1)).unwrap();
        assert_eq!(chi_b, chi_c, "Shi polynomials agree across the dual pair");
        assert_ne!(
            window(&b2, 0, 1).hyperplanes(),
            window(&c2, 0, 1).hyperplanes()
        );
    }

    #[test]
    fn g2_catalan_instance() {
        let report = er_verify(&rs(Family::G, 2), 1, ErKind::Catalan).unwrap();
        assert!(report.pass);
        assert_eq!(report.num_hyperplanes, 18);
        assert_eq!(report.expected_exponents, vec![1, 7, 11]);
        assert_eq!(
            report.certificate.exponents,
            Some(vec![1, 7, 11]),
            "cone exponents"
        );
        assert_eq!(report.charpoly, UniPoly::from_roots(&[zint(7), zint(11)]));
    }

    #[test]
    fn a2_shi_instance() {
        let report = er_verify(&rs(Family::A, 2), 1, ErKind::Shi).unwrap();
        assert!(report.pass);
        assert_eq!(report.window, (0, 1));
        assert_eq!(report.certificate.exponents, Some(vec![1, 3, 3]));
        assert_eq!(report.charpoly, UniPoly::from_roots(&[zint(3), zint(3)]));
    }

    #[test]
    fn a3_catalan_highrank() {
        let report = er_verify(&rs(Family::A, 3), 1, ErKind::Catalan).unwrap();
        assert!(report.pass);
        assert_eq!(report.certificate.exponents, Some(vec![1, 5, 6, 7]));
        assert_eq!(report.certificate.method, "b2-highrank");
    }

    #[test]
    fn coxeter_instances_pass_at_k0() {
        let report = er_verify(&rs(Family::B, 3), 0, ErKind::Catalan).unwrap();
        assert!(report.pass);
        assert_eq!(report.certificate.exponents, Some(vec![1, 1, 3, 5]));
        assert!(er_verify(&rs(Family::B, 3), 0, ErKind::Shi).is_err());
    }

    #[test]
    fn multi_check_examples() {
        let g2 = rs(Family::G, 2);
        let r = coxeter_multi_check(&g2, 3).unwrap();
        assert!(r.pass);
        assert_eq!(r.computed, (7, 11));

        let a2 = rs(Family::A, 2);
        let r = coxeter_multi_check(&a2, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.computed, (3, 3));

        let b2 = rs(Family::B, 2);
        let r = coxeter_multi_check(&b2, 5).unwrap();
        assert!(r.pass);
        assert_eq!(r.computed, (9, 11));

        assert!(coxeter_multi_check(&rs(Family::A, 3), 1).is_err());
        assert!(coxeter_multi_check(&a2, 0).is_err());
    }

    #[test]
    fn a3_window_11_values() {
        // chi = (t - 2)(t^2 - 4t + 7), functional-equation center 2
        let a3 = rs(Family::A, 3);
        let chi = charpoly_mobius(&window(&a3, 1, 1)).unwrap();
        let expected = {
            let lin = UniPoly::from_int_coeffs(&[-2, 1]);
            let quad = UniPoly::from_int_coeffs(&[7, -4, 1]);
            &lin * &quad
        };
        assert_eq!(chi, expected);
        let fe = conjecture_fe(&a3, -1, 1).unwrap();
        assert!(fe.holds, "residual {}", fe.residual());
    }

    #[test]
    fn fe_examples() {
        assert!(conjecture_fe(&rs(Family::A, 3), 1, 1).unwrap().holds);
        assert!(conjecture_fe(&rs(Family::A, 2), 0, 1).unwrap().holds);
        assert!(conjecture_fe(&rs(Family::G, 2), 0, 0).unwrap().holds);
        assert!(conjecture_fe(&rs(Family::A, 2), -1, 0).is_err());
        assert!(conjecture_fe(&rs(Family::A, 2), -1, -1).is_err());
        assert!(conjecture_fe(&rs(Family::A, 2), 2, 1).is_err());
        assert!(conjecture_fe(&rs(Family::A, 2), -2, 3).is_err());
    }

    #[test]
    fn catalan_windows_self_dual() {
        for system in [rs(Family::A, 2), rs(Family::B, 2), rs(Family::A, 3)] {
            for a in 0..=1 {
                let fe = conjecture_fe(&system, a, a).unwrap();
                assert!(fe.holds, "{} a=b={a}", system.name());
            }
        }
    }

    #[test]
    fn hshift_examples() {
        assert!(conjecture_hshift(&rs(Family::A, 3), -1, 1).unwrap().holds);
        assert!(conjecture_hshift(&rs(Family::A, 2), 1, 1).unwrap().holds);
        assert!(conjecture_hshift(&rs(Family::A, 3), 0, 1).unwrap().holds);
        assert!(conjecture_hshift(&rs(Family::A, 2), -1, 0).is_err());
    }

    #[test]
    fn rh_examples() {
        let a3 = rs(Family::A, 3);
        let r = conjecture_rh(&a3, 0, 1).unwrap();
        assert!(r.holds && r.in_domain);
        assert_eq!(r.center, zint(4));

        let r = conjecture_rh(&a3, 0, 2).unwrap();
        assert!(r.holds);
        assert_eq!(r.center, zint(6));
        let chi = charpoly_mobius(&window(&a3, 0, 2)).unwrap();
        let expected = {
            let lin = UniPoly::from_int_coeffs(&[-6, 1]);
            let quad = UniPoly::from_int_coeffs(&[39, -12, 1]);
            &lin * &quad
        };
        assert_eq!(chi, expected);

        let r = conjecture_rh(&rs(Family::A, 2), 0, 2).unwrap();
        assert!(r.holds);
        assert_eq!(r.center, Scalar::new(BigInt::from(9), BigInt::from(2)));
    }

    #[test]
    fn rh_domain_and_override() {
        let a2 = rs(Family::A, 2);
        assert!(conjecture_rh(&a2, 1, 1).is_err());
        assert!(conjecture_rh(&a2, 1, 0).is_err());
        assert!(conjecture_rh(&a2, -1, 2).is_err());
        // symmetry about the center is exact at a = b, but the roots
        // 4 and 5 of chi = (t-4)(t-5) are spread, so the common-real-part
        // claim is honestly false there
        let r = conjecture_rh_with_override(&a2, 1, 1, true).unwrap();
        assert!(!r.in_domain, "a = b is outside the conjecture's domain");
        assert!(!r.holds);
        assert!(r.witness.unwrap().contains("even part"));
        // degenerate rank-1 case where the single root is the center
        let a1 = rs(Family::A, 1);
        let r = conjecture_rh_with_override(&a1, 0, 0, true).unwrap();
        assert!(r.holds && !r.in_domain);
        assert_eq!(r.center, zint(1));
        assert!(conjecture_rh_with_override(&a2, -1, -1, true).is_err());
    }

    #[test]
    fn hshift_equals_fe_composition_a2_grid() {
        // both conjectures hold on a small grid; RH implies FE where tested
        let a2 = rs(Family::A, 2);
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let rh = conjecture_rh(&a2, a, b).unwrap();
            let fe = conjecture_fe(&a2, a, b).unwrap();
            assert!(rh.holds);
            assert!(fe.holds, "RH held but FE failed at ({a}, {b})");
        }
    }
}
