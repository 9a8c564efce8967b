//! The graded module D(A,m) of logarithmic vector fields of a central
//! multiarrangement: membership, graded pieces as exact kernels, rank-2
//! exponents, Saito-criterion verification, the nabla connection, the Euler
//! split and the restriction map to a hyperplane.

use crate::arrangement::{Arrangement, Multiplicity};
use crate::error::{Error, Result};
use crate::freeness::{FreenessCertificate, FreenessStatus};
use crate::matrix::MatrixQ;
use crate::multipoly::{default_var_names, monomials_of_degree, MultiPoly};
use crate::scalar::Scalar;
use num::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Cap on unknown coefficients in one graded kernel computation.
pub const DEFAULT_COEFF_BUDGET: u64 = 50_000;

/// A polynomial vector field theta = sum_i f_i d/dx_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    components: Vec<MultiPoly>,
}

impl VectorField {
    pub fn new(components: Vec<MultiPoly>) -> Result<Self> {
        let dim = components.len();
        if components.iter().any(|f| f.arity() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "vector field components must have arity {dim}"
            )));
        }
        Ok(VectorField { components })
    }

    pub fn zero(dim: usize) -> Self {
        VectorField {
            components: vec![MultiPoly::zero(dim); dim],
        }
    }

    /// The Euler field sum_i x_i d/dx_i.
    pub fn euler(dim: usize) -> Self {
        VectorField {
            components: (0..dim).map(|j| MultiPoly::var(dim, j)).collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &MultiPoly {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|f| f.is_zero())
    }

    /// Apply as a derivation: theta(g) = sum_i f_i dg/dx_i.
    pub fn apply(&self, g: &MultiPoly) -> MultiPoly {
        assert_eq!(g.arity(), self.dimension(), "arity mismatch");
        let mut acc = MultiPoly::zero(self.dimension());
        for (i, f) in self.components.iter().enumerate() {
            if !f.is_zero() {
                acc = &acc + &(f * &g.derivative(i));
            }
        }
        acc
    }

    /// Common homogeneous degree of the nonzero components, when one exists.
    /// Undefined (None) for the zero field and for mixed degrees.
    pub fn pdeg(&self) -> Option<usize> {
        let mut deg = None;
        for f in &self.components {
            if f.is_zero() {
                continue;
            }
            let d = f.homogeneous_degree()?;
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn scale_poly(&self, c: &MultiPoly) -> Self {
        VectorField {
            components: self.components.iter().map(|f| f * c).collect(),
        }
    }

    pub fn display(&self, vars: &[String]) -> String {
        self.components
            .iter()
            .map(|f| f.display(vars))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl std::fmt::Display for VectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.display(&default_var_names(self.dimension())))
    }
}

impl std::ops::Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        assert_eq!(self.dimension(), rhs.dimension());
        VectorField {
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        assert_eq!(self.dimension(), rhs.dimension());
        VectorField {
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

fn check_arity(arr: &Arrangement, m: &Multiplicity) -> Result<()> {
    if m.len() != arr.num_hyperplanes() {
        return Err(Error::DimensionMismatch(format!(
            "multiplicity length {} does not match {} hyperplanes",
            m.len(),
            arr.num_hyperplanes()
        )));
    }
    if !arr.is_central() {
        return Err(Error::NotCentral(
            "D(A,m) is defined for central arrangements".into(),
        ));
    }
    Ok(())
}

/// theta is in D(A,m) iff theta(alpha_i) is divisible by alpha_i^{m_i} for
/// every hyperplane, tested by m_i successive exact linear-form divisions.
pub fn is_member(theta: &VectorField, arr: &Arrangement, m: &Multiplicity) -> Result<bool> {
    check_arity(arr, m)?;
    if theta.dimension() != arr.dimension() {
        return Err(Error::DimensionMismatch(format!(
            "field dimension {} vs arrangement dimension {}",
            theta.dimension(),
            arr.dimension()
        )));
    }
    for (i, h) in arr.hyperplanes().iter().enumerate() {
        let mult = m.get(i);
        if mult == 0 {
            continue;
        }
        let coeffs = h.normal_scalars();
        let constant = h.constant_scalar();
        let mut g = theta.apply(&h.form());
        for _ in 0..mult {
            let (q, r) = g.div_rem_affine(&coeffs, &constant)?;
            if !r.is_zero() {
                return Ok(false);
            }
            g = q;
        }
    }
    Ok(true)
}

/// The membership conditions on a degree-d field as a linear system: one
/// row per vanishing coefficient of the alpha-adic remainders of
/// theta(alpha_i), columns indexed by (component, monomial) with component
/// outermost and monomials in ascending lexicographic order.
fn membership_matrix(arr: &Arrangement, m: &Multiplicity, d: usize) -> Result<(MatrixQ, Vec<Vec<u32>>)> {
    check_arity(arr, m)?;
    let ell = arr.dimension();
    let monos = monomials_of_degree(ell, d);
    let width = monos.len();
    let ncols = ell * width;

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (i, h) in arr.hyperplanes().iter().enumerate() {
        let mult = m.get(i);
        if mult == 0 {
            continue;
        }
        let coeffs = h.normal_scalars();
        let zero = Scalar::zero();
        // remainder stack of each monomial under repeated division by alpha
        let mut stacks: Vec<Vec<MultiPoly>> = Vec::with_capacity(width);
        for mu in &monos {
            let mut g = MultiPoly::from_term(ell, mu.clone(), Scalar::one());
            let mut stack = Vec::with_capacity(mult as usize);
            for _ in 0..mult {
                let (q, r) = g.div_rem_affine(&coeffs, &zero)?;
                stack.push(r);
                g = q;
            }
            stacks.push(stack);
        }
        for level in 0..mult as usize {
            let mut keys: BTreeSet<Vec<u32>> = BTreeSet::new();
            for stack in &stacks {
                for (e, _) in stack[level].terms() {
                    keys.insert(e.clone());
                }
            }
            for key in keys {
                let mut row = vec![Scalar::zero(); ncols];
                for (comp, a) in coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, stack) in stacks.iter().enumerate() {
                        let c = stack[level].coeff(&key);
                        if !c.is_zero() {
                            row[comp * width + j] = a * &c;
                        }
                    }
                }
                rows.push(row);
            }
        }
    }

    let matrix = if rows.is_empty() {
        MatrixQ::zero(0, ncols)
    } else {
        MatrixQ::from_rows(rows)
    };
    Ok((matrix, monos))
}

fn coeff_budget_check(arr: &Arrangement, d: usize, budget: u64) -> Result<()> {
    let ell = arr.dimension();
    let width = monomials_of_degree(ell, d).len() as u64;
    let unknowns = width.saturating_mul(ell as u64);
    if unknowns > budget {
        return Err(Error::Budget {
            what: format!("unknown coefficients of a degree-{d} field"),
            needed: unknowns.to_string(),
            budget: budget.to_string(),
        });
    }
    Ok(())
}

/// Dimension of the degree-d graded piece of D(A,m).
pub fn graded_dim(arr: &Arrangement, m: &Multiplicity, d: usize) -> Result<usize> {
    let (matrix, _) = membership_matrix(arr, m, d)?;
    Ok(matrix.kernel_dim())
}

/// Canonical basis of the degree-d graded piece of D(A,m).
pub fn graded_basis(arr: &Arrangement, m: &Multiplicity, d: usize) -> Result<Vec<VectorField>> {
    let (matrix, monos) = membership_matrix(arr, m, d)?;
    let ell = arr.dimension();
    let width = monos.len();
    let mut out = Vec::new();
    for v in matrix.kernel_basis() {
        let mut components = Vec::with_capacity(ell);
        for comp in 0..ell {
            let mut f = MultiPoly::zero(ell);
            for (j, mu) in monos.iter().enumerate() {
                let c = &v[comp * width + j];
                if !c.is_zero() {
                    f = &f + &MultiPoly::from_term(ell, mu.clone(), c.clone());
                }
            }
            components.push(f);
        }
        out.push(VectorField { components });
    }
    Ok(out)
}

/// Graded dimensions of D(A,m) for d = 0..=dmax.
pub fn hilbert(arr: &Arrangement, m: &Multiplicity, dmax: usize) -> Result<BTreeMap<usize, usize>> {
    hilbert_budgeted(arr, m, dmax, DEFAULT_COEFF_BUDGET)
}

pub fn hilbert_budgeted(
    arr: &Arrangement,
    m: &Multiplicity,
    dmax: usize,
    budget: u64,
) -> Result<BTreeMap<usize, usize>> {
    let mut out = BTreeMap::new();
    for d in 0..=dmax {
        coeff_budget_check(arr, d, budget)?;
        out.insert(d, graded_dim(arr, m, d)?);
    }
    Ok(out)
}

/// Default Hilbert truncation: every exponent of a free module is at most
/// the total multiplicity.
pub fn default_dmax(m: &Multiplicity) -> usize {
    m.weight() as usize
}

/// Exponents (d1, d2) of a rank-2 multiarrangement in the plane: d1 is the
/// first degree where D(A,m) is nonzero and d2 = |m| - d1, valid because
/// rank-2 multiarrangements are always free.
pub fn exponents_rank2(arr: &Arrangement, m: &Multiplicity) -> Result<(usize, usize)> {
    check_arity(arr, m)?;
    if arr.dimension() != 2 || arr.rank() != 2 {
        return Err(Error::Precondition(
            "exponents_rank2 expects an essential rank-2 arrangement in the plane".into(),
        ));
    }
    if m.values().iter().any(|&v| v == 0) {
        return Err(Error::Precondition(
            "exponents_rank2 expects all multiplicities positive".into(),
        ));
    }
    let weight = m.weight() as usize;
    for d in 0..=weight / 2 {
        if graded_dim(arr, m, d)? > 0 {
            return Ok((d, weight - d));
        }
    }
    Err(Error::Internal(format!(
        "no graded piece of D(A,m) below degree |m|/2 = {} is nonzero",
        weight / 2
    )))
}

/// d2 - d1 for a rank-2 multiarrangement.
pub fn delta(arr: &Arrangement, m: &Multiplicity) -> Result<usize> {
    let (d1, d2) = exponents_rank2(arr, m)?;
    Ok(d2 - d1)
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
fn det_multipoly(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    let arity = m[0][0].arity();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(arity);
    for k in 0..n {
        if m[0][k].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != k)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cof = &m[0][k] * &det_multipoly(&minor);
        if k % 2 == 0 {
            acc = &acc + &cof;
        } else {
            acc = &acc - &cof;
        }
    }
    acc
}

/// Saito's criterion: dim-many homogeneous members whose coefficient
/// determinant is a nonzero constant multiple of Q(A,m) form a basis of
/// D(A,m). Success gives a Free certificate carrying the basis; failure
/// names the failing condition and certifies nothing about the module.
pub fn saito_check(
    arr: &Arrangement,
    m: &Multiplicity,
    candidates: &[VectorField],
) -> Result<FreenessCertificate> {
    check_arity(arr, m)?;
    let ell = arr.dimension();
    if candidates.len() != ell {
        return Err(Error::Precondition(format!(
            "Saito's criterion needs exactly {ell} candidate fields, got {}",
            candidates.len()
        )));
    }
    for (k, theta) in candidates.iter().enumerate() {
        if !theta.is_zero() && theta.pdeg().is_none() {
            return Err(Error::Precondition(format!(
                "candidate {k} is not homogeneous"
            )));
        }
    }
    let fail = |note: String| {
        Ok(FreenessCertificate {
            status: FreenessStatus::NotFree,
            exponents: None,
            basis: None,
            obstruction: None,
            method: "saito-basis".into(),
            note: Some(note),
        })
    };
    for (k, theta) in candidates.iter().enumerate() {
        if !is_member(theta, arr, m)? {
            return fail(format!("candidate {k} is not a member of D(A,m)"));
        }
    }
    let mat: Vec<Vec<MultiPoly>> = (0..ell)
        .map(|i| candidates.iter().map(|th| th.component(i).clone()).collect())
        .collect();
    let det = det_multipoly(&mat);
    if det.is_zero() {
        return fail("coefficient determinant is identically zero".into());
    }
    let q = arr.defining_polynomial(m);
    match det.scalar_multiple_of(&q) {
        Some(c) if !c.is_zero() => {
            let mut exps: Vec<usize> = candidates
                .iter()
                .map(|th| th.pdeg().unwrap_or(0))
                .collect();
            exps.sort_unstable();
            Ok(FreenessCertificate {
                status: FreenessStatus::Free,
                exponents: Some(exps),
                basis: Some(candidates.to_vec()),
                obstruction: None,
                method: "saito-basis".into(),
                note: None,
            })
        }
        _ => fail("coefficient determinant is not a constant multiple of Q(A,m)".into()),
    }
}

/// The connection nabla_eta theta = sum_i eta(f_i) d/dx_i.
pub fn nabla(eta: &VectorField, theta: &VectorField) -> Result<VectorField> {
    if eta.dimension() != theta.dimension() {
        return Err(Error::DimensionMismatch(format!(
            "nabla arities {} vs {}",
            eta.dimension(),
            theta.dimension()
        )));
    }
    Ok(VectorField {
        components: theta.components.iter().map(|f| eta.apply(f)).collect(),
    })
}

/// Split theta in D(A) against the Euler field at hyperplane i:
/// theta = (theta(alpha_i)/alpha_i) * theta_E + rest, with rest(alpha_i) = 0.
pub fn split_d1(
    theta: &VectorField,
    arr: &Arrangement,
    i: usize,
) -> Result<(MultiPoly, VectorField)> {
    let simple = Multiplicity::simple(arr.num_hyperplanes());
    if !is_member(theta, arr, &simple)? {
        return Err(Error::NotMember(
            "the Euler split is defined for members of D(A)".into(),
        ));
    }
    let h = arr.hyperplane(i)?;
    let g = theta.apply(&h.form());
    let c = g.div_exact_affine(&h.normal_scalars(), &h.constant_scalar())?;
    let euler = VectorField::euler(arr.dimension());
    let rest = theta - &euler.scale_poly(&c);
    debug_assert!(rest.apply(&h.form()).is_zero());
    Ok((c, rest))
}

/// Push a field tangent to H_i (theta(alpha_i) = 0) down to the chart of
/// H_i: substitute the chart into every component and drop the pivot
/// component. The image lies in D of the Ziegler multirestriction.
pub fn restrict_field(theta: &VectorField, arr: &Arrangement, i: usize) -> Result<VectorField> {
    let h = arr.hyperplane(i)?;
    if !theta.apply(&h.form()).is_zero() {
        return Err(Error::Precondition(
            "restrict_field needs theta(alpha_i) = 0".into(),
        ));
    }
    let (_, chart) = arr.restrict(i)?;
    let images = chart.images(arr.dimension());
    let components: Vec<MultiPoly> = chart
        .kept_vars
        .iter()
        .map(|&v| theta.component(v).substitute(&images))
        .collect();
    VectorField::new(components)
}
