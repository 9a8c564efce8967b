//! Finite hyperplane arrangements and their basic constructions.

use crate::error::{Error, Result};
use crate::hyperplane::Hyperplane;
use crate::matrix::MatrixQ;
use crate::multipoly::MultiPoly;
use crate::scalar::Scalar;
use num::{One, Zero};

/// A finite list of pairwise distinct hyperplanes in a fixed ambient
/// dimension. Order is significant (indices name hyperplanes) but carries no
/// mathematical meaning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

/// Hyperplane multiplicities for a multiarrangement, aligned with the
/// arrangement's hyperplane order. Zero multiplicity is allowed and imposes
/// no condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicity {
    values: Vec<u32>,
}

impl Multiplicity {
    pub fn new(values: Vec<u32>) -> Self {
        Multiplicity { values }
    }

    pub fn constant(n: usize, m: u32) -> Self {
        Multiplicity {
            values: vec![m; n],
        }
    }

    pub fn simple(n: usize) -> Self {
        Multiplicity::constant(n, 1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.values[i]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn is_simple(&self) -> bool {
        self.values.iter().all(|&m| m == 1)
    }

    /// Total weight |m|.
    pub fn weight(&self) -> u32 {
        self.values.iter().sum()
    }
}

/// The affine chart realizing a restriction: on hyperplane `pivot` the
/// variable `pivot_var` is solved for, and the remaining variables (in
/// their original order) become the coordinates of the restricted space.
#[derive(Clone, Debug)]
pub struct Chart {
    pub pivot: usize,
    pub pivot_var: usize,
    pub kept_vars: Vec<usize>,
    /// x_{pivot_var} = expr_coeffs . y + expr_const over the kept variables.
    pub expr_coeffs: Vec<Scalar>,
    pub expr_const: Scalar,
}

impl Chart {
    /// Substitution images of the source variables as polynomials in the
    /// chart coordinates; feeding these to `MultiPoly::substitute` restricts
    /// a polynomial to the pivot hyperplane.
    pub fn images(&self, source_arity: usize) -> Vec<MultiPoly> {
        let target = self.kept_vars.len();
        (0..source_arity)
            .map(|v| {
                if v == self.pivot_var {
                    let mut p = MultiPoly::linear(&self.expr_coeffs);
                    p = &p + &MultiPoly::constant(target, self.expr_const.clone());
                    p
                } else {
                    let pos = self
                        .kept_vars
                        .iter()
                        .position(|&k| k == v)
                        .expect("kept variable");
                    MultiPoly::var(target, pos)
                }
            })
            .collect()
    }
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        Self::with_lines(dim, hyperplanes.into_iter().map(|h| (h, None)).collect())
    }

    pub(crate) fn with_lines(
        dim: usize,
        hyperplanes: Vec<(Hyperplane, Option<usize>)>,
    ) -> Result<Self> {
        let mut seen: std::collections::HashSet<Hyperplane> = Default::default();
        let mut list = Vec::with_capacity(hyperplanes.len());
        for (h, line) in hyperplanes {
            if h.dimension() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "hyperplane in dimension {} added to arrangement of dimension {}",
                    h.dimension(),
                    dim
                )));
            }
            if !seen.insert(h.clone()) {
                return Err(Error::DuplicateHyperplane {
                    line,
                    hyperplane: h.to_string(),
                });
            }
            list.push(h);
        }
        Ok(Arrangement {
            dim,
            hyperplanes: list,
        })
    }

    pub fn empty(dim: usize) -> Self {
        Arrangement {
            dim,
            hyperplanes: vec![],
        }
    }

    /// Build from integer rows, mostly for tests: (normal, constant).
    pub fn from_ints(dim: usize, rows: &[(&[i64], i64)]) -> Result<Self> {
        let hyperplanes = rows
            .iter()
            .map(|(a, d)| Hyperplane::from_ints(a, *d))
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(dim, hyperplanes)
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplane(&self, i: usize) -> Result<&Hyperplane> {
        self.hyperplanes.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.hyperplanes.len(),
        })
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn is_central(&self) -> bool {
        self.hyperplanes.iter().all(|h| h.is_central())
    }

    /// Rank of the normal matrix.
    pub fn rank(&self) -> usize {
        if self.hyperplanes.is_empty() {
            return 0;
        }
        MatrixQ::from_rows(
            self.hyperplanes
                .iter()
                .map(|h| h.normal_scalars())
                .collect(),
        )
        .rank()
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.dim
    }

    /// The defining polynomial Q(A, m) = prod alpha_i^{m_i}.
    pub fn defining_polynomial(&self, m: &Multiplicity) -> MultiPoly {
        assert_eq!(m.len(), self.hyperplanes.len());
        let mut q = MultiPoly::one(self.dim);
        for (h, &mult) in self.hyperplanes.iter().zip(m.values()) {
            q = &q * &h.form().pow(mult);
        }
        q
    }

    pub fn deletion(&self, i: usize) -> Result<Arrangement> {
        self.hyperplane(i)?;
        let mut hs = self.hyperplanes.clone();
        hs.remove(i);
        Ok(Arrangement {
            dim: self.dim,
            hyperplanes: hs,
        })
    }

    pub fn sub_arrangement(&self, indices: &[usize]) -> Result<Arrangement> {
        let hs = indices
            .iter()
            .map(|&i| self.hyperplane(i).cloned())
            .collect::<Result<Vec<_>>>()?;
        Ok(Arrangement {
            dim: self.dim,
            hyperplanes: hs,
        })
    }

    /// Cone: one dimension higher, the hyperplane at infinity z = 0 at
    /// index 0, and each a . x = d homogenized to a . x - d z = 0.
    pub fn cone(&self) -> Arrangement {
        let dim = self.dim + 1;
        let mut hs = Vec::with_capacity(self.hyperplanes.len() + 1);
        let mut h0 = vec![Scalar::zero(); dim];
        h0[dim - 1] = Scalar::one();
        hs.push(Hyperplane::new(h0, Scalar::zero()).unwrap());
        for h in &self.hyperplanes {
            let mut normal = h.normal_scalars();
            normal.push(-h.constant_scalar());
            hs.push(Hyperplane::new(normal, Scalar::zero()).unwrap());
        }
        Arrangement {
            dim,
            hyperplanes: hs,
        }
    }

    /// Restriction to hyperplane i: the arrangement induced on H_i by the
    /// other hyperplanes, realized in the chart that solves H_i's equation
    /// for its pivot variable. Parallel hyperplanes drop out; coincident
    /// images are merged (first occurrence kept).
    pub fn restrict(&self, i: usize) -> Result<(Arrangement, Chart)> {
        let (arr, _mult, chart) = self.restrict_counted(i)?;
        Ok((arr, chart))
    }

    /// Ziegler multirestriction of a central simple arrangement: the
    /// restriction together with the natural multiplicities
    /// m(X) = #{H' in A : H' contains X} - 1.
    pub fn ziegler(&self, i: usize) -> Result<(Arrangement, Multiplicity, Chart)> {
        if !self.is_central() {
            return Err(Error::NotCentral(
                "multirestriction requires a central arrangement".into(),
            ));
        }
        self.restrict_counted(i)
    }

    fn restrict_counted(&self, i: usize) -> Result<(Arrangement, Multiplicity, Chart)> {
        let pivot = self.hyperplane(i)?.clone();
        let a = pivot.normal_scalars();
        let d = pivot.constant_scalar();
        let j = a.iter().position(|c| !c.is_zero()).expect("nonzero normal");
        let a_j = a[j].clone();
        let kept_vars: Vec<usize> = (0..self.dim).filter(|&v| v != j).collect();
        let chart = Chart {
            pivot: i,
            pivot_var: j,
            kept_vars: kept_vars.clone(),
            expr_coeffs: kept_vars.iter().map(|&v| -&a[v] / &a_j).collect(),
            expr_const: &d / &a_j,
        };

        let mut hyperplanes: Vec<Hyperplane> = Vec::new();
        let mut counts: Vec<u32> = Vec::new();
        for (k, h) in self.hyperplanes.iter().enumerate() {
            if k == i {
                continue;
            }
            let b = h.normal_scalars();
            let e = h.constant_scalar();
            let factor = &b[j] / &a_j;
            let normal: Vec<Scalar> = kept_vars
                .iter()
                .map(|&v| &b[v] - &(&factor * &a[v]))
                .collect();
            let constant = &e - &(&factor * &d);
            if normal.iter().all(|c| c.is_zero()) {
                // parallel to the pivot (constant != 0 since hyperplanes are
                // distinct): empty intersection
                debug_assert!(!constant.is_zero());
                continue;
            }
            let img = Hyperplane::new(normal, constant)?;
            match hyperplanes.iter().position(|x| *x == img) {
                Some(pos) => counts[pos] += 1,
                None => {
                    hyperplanes.push(img);
                    counts.push(1);
                }
            }
        }
        let arr = Arrangement {
            dim: self.dim - 1,
            hyperplanes,
        };
        Ok((arr, Multiplicity::new(counts), chart))
    }

    /// Essentialization of a central arrangement: coordinates are chosen on
    /// the span of the normals (reduced echelon basis), so the result is
    /// essential of the same rank. Returns the new arrangement and the
    /// dimension of the split-off center.
    pub fn essentialize(&self) -> Result<(Arrangement, usize)> {
        if !self.is_central() {
            return Err(Error::NotCentral(
                "essentialization implemented for central arrangements".into(),
            ));
        }
        if self.hyperplanes.is_empty() {
            return Ok((Arrangement::empty(0), self.dim));
        }
        let normals = MatrixQ::from_rows(
            self.hyperplanes
                .iter()
                .map(|h| h.normal_scalars())
                .collect(),
        );
        let (rref, pivots) = normals.rref();
        let r = pivots.len();
        // Each normal lies in the row span; its coefficients in the echelon
        // basis are just its entries at the pivot columns.
        let hs = self
            .hyperplanes
            .iter()
            .map(|h| {
                let a = h.normal_scalars();
                let coords: Vec<Scalar> = pivots.iter().map(|&c| a[c].clone()).collect();
                Hyperplane::new(coords, Scalar::zero())
            })
            .collect::<Result<Vec<_>>>()?;
        let _ = rref;
        let arr = Arrangement::with_lines(r, hs.into_iter().map(|h| (h, None)).collect())?;
        Ok((arr, self.dim - r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn braid(n: usize) -> Arrangement {
        let mut rows = Vec::new();
        for i in 0..n {
            for jj in i + 1..n {
                let mut a = vec![0i64; n];
                a[i] = 1;
                a[jj] = -1;
                rows.push((a, 0i64));
            }
        }
        let hs = rows
            .iter()
            .map(|(a, d)| Hyperplane::from_ints(a, *d).unwrap())
            .collect();
        Arrangement::new(n, hs).unwrap()
    }

    #[test]
    fn duplicates_rejected() {
        let err = Arrangement::from_ints(2, &[(&[1, 0], 0), (&[2, 0], 0)]);
        assert!(matches!(err, Err(Error::DuplicateHyperplane { .. })));
    }

    #[test]
    fn rank_and_centrality() {
        let b3 = braid(3);
        assert_eq!(b3.num_hyperplanes(), 3);
        assert!(b3.is_central());
        assert_eq!(b3.rank(), 2);
        assert!(!b3.is_essential());
        let affine = Arrangement::from_ints(2, &[(&[1, 0], 1)]).unwrap();
        assert!(!affine.is_central());
        assert_eq!(affine.rank(), 1);
    }

    #[test]
    fn cone_of_two_points() {
        // {x = 0, x = 1} on a line
        let a = Arrangement::from_ints(1, &[(&[1], 0), (&[1], 1)]).unwrap();
        let c = a.cone();
        assert_eq!(c.dimension(), 2);
        assert_eq!(c.num_hyperplanes(), 3);
        assert_eq!(*c.hyperplane(0).unwrap(), Hyperplane::from_ints(&[0, 1], 0).unwrap());
        assert_eq!(*c.hyperplane(1).unwrap(), Hyperplane::from_ints(&[1, 0], 0).unwrap());
        assert_eq!(*c.hyperplane(2).unwrap(), Hyperplane::from_ints(&[1, -1], 0).unwrap());
        assert!(c.is_central());
    }

    #[test]
    fn restriction_merges_and_drops() {
        // in the plane: restrict {y = 0, x = 0, x = 1, y = 1} to y = 0
        let a = Arrangement::from_ints(
            2,
            &[(&[0, 1], 0), (&[1, 0], 0), (&[1, 0], 1), (&[0, 1], 1)],
        )
        .unwrap();
        let (r, chart) = a.restrict(0).unwrap();
        assert_eq!(r.dimension(), 1);
        // y = 1 is parallel and drops; x = 0 and x = 1 restrict to points
        assert_eq!(r.num_hyperplanes(), 2);
        assert_eq!(chart.pivot_var, 1);
        assert_eq!(chart.kept_vars, vec![0]);
    }

    #[test]
    fn ziegler_multiplicities_count_preimages() {
        let b3 = braid(3);
        let (r, m, _) = b3.ziegler(0).unwrap();
        // x1 - x2 = 0: both other hyperplanes restrict to the same line
        assert_eq!(r.num_hyperplanes(), 1);
        assert_eq!(m.values(), &[2]);
        assert_eq!(m.weight() as usize, b3.num_hyperplanes() - 1);
    }

    #[test]
    fn essentialize_braid() {
        let b3 = braid(3);
        let (ess, center) = b3.essentialize().unwrap();
        assert_eq!(center, 1);
        assert_eq!(ess.dimension(), 2);
        assert_eq!(ess.num_hyperplanes(), 3);
        assert!(ess.is_essential());
    }

    #[test]
    fn defining_polynomial_degree() {
        let b3 = braid(3);
        let q = b3.defining_polynomial(&Multiplicity::simple(3));
        assert_eq!(q.homogeneous_degree(), Some(3));
        let q2 = b3.defining_polynomial(&Multiplicity::new(vec![2, 1, 0]));
        assert_eq!(q2.homogeneous_degree(), Some(3));
    }
}
