//! Affine hyperplanes with canonical integer representatives.

use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::scalar::{canonical_int_vector, Scalar};
use num::bigint::BigInt;
use num::Zero;
use std::fmt;

/// The locus a . x = d. Stored canonically: (a | d) scaled so all entries
/// are integers with content 1 and the first nonzero entry of a is positive.
/// Equal loci therefore compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: Vec<BigInt>,
    constant: BigInt,
}

impl Hyperplane {
    pub fn new(normal: Vec<Scalar>, constant: Scalar) -> Result<Self> {
        Self::with_line(normal, constant, None)
    }

    pub(crate) fn with_line(
        normal: Vec<Scalar>,
        constant: Scalar,
        line: Option<usize>,
    ) -> Result<Self> {
        if normal.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroNormal { line });
        }
        let mut row = normal;
        row.push(constant);
        let ints = canonical_int_vector(&row).expect("nonzero row");
        let mut normal = ints;
        let constant = normal.pop().unwrap();
        Ok(Hyperplane { normal, constant })
    }

    pub fn from_ints(normal: &[i64], constant: i64) -> Result<Self> {
        Self::new(
            normal.iter().map(|&x| Scalar::from_integer(x.into())).collect(),
            Scalar::from_integer(constant.into()),
        )
    }

    pub fn dimension(&self) -> usize {
        self.normal.len()
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    pub fn is_central(&self) -> bool {
        self.constant.is_zero()
    }

    pub fn normal_scalars(&self) -> Vec<Scalar> {
        self.normal
            .iter()
            .map(|x| Scalar::from_integer(x.clone()))
            .collect()
    }

    pub fn constant_scalar(&self) -> Scalar {
        Scalar::from_integer(self.constant.clone())
    }

    /// The augmented row (a | d) over Q.
    pub fn augmented_row(&self) -> Vec<Scalar> {
        let mut row = self.normal_scalars();
        row.push(self.constant_scalar());
        row
    }

    /// The defining form a . x - d as a polynomial.
    pub fn form(&self) -> MultiPoly {
        MultiPoly::affine(&self.normal_scalars(), &self.constant_scalar())
    }

    /// a . p - d.
    pub fn eval_form(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.normal.len());
        let mut acc = -self.constant_scalar();
        for (a, x) in self.normal.iter().zip(point) {
            acc += Scalar::from_integer(a.clone()) * x;
        }
        acc
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::multipoly::default_var_names(self.normal.len());
        let linear = MultiPoly::linear(&self.normal_scalars());
        write!(f, "{} = {}", linear.display(&names), self.constant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, zint};

    #[test]
    fn canonicalization() {
        // 2x = 2 and x = 1 are the same locus
        let a = Hyperplane::from_ints(&[2, 0], 2).unwrap();
        let b = Hyperplane::from_ints(&[1, 0], 1).unwrap();
        assert_eq!(a, b);
        // sign: -x + y = -1 normalizes to x - y = 1
        let c = Hyperplane::from_ints(&[-1, 1], -1).unwrap();
        let d = Hyperplane::from_ints(&[1, -1], 1).unwrap();
        assert_eq!(c, d);
        // rational input
        let e = Hyperplane::new(vec![q(1, 2), q(-1, 3)], zint(1)).unwrap();
        assert_eq!(e, Hyperplane::from_ints(&[3, -2], 6).unwrap());
        assert!(Hyperplane::new(vec![zint(0), zint(0)], zint(1)).is_err());
    }

    #[test]
    fn form_and_eval() {
        let h = Hyperplane::from_ints(&[1, -1], 2).unwrap();
        assert_eq!(h.eval_form(&[zint(5), zint(3)]), zint(0));
        assert_eq!(h.eval_form(&[zint(0), zint(0)]), zint(-2));
        assert_eq!(h.to_string(), "x - y = 2");
        assert!(!h.is_central());
        assert!(Hyperplane::from_ints(&[0, 1], 0).unwrap().is_central());
    }
}
