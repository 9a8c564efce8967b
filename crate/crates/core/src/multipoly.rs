//! Sparse multivariate polynomials over Q with a fixed variable count.

use crate::error::{Error, Result};
use crate::scalar::{sign, Scalar};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Terms keyed by exponent vector (length = arity); zero coefficients are
/// never stored. The zero polynomial has an empty term map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(arity);
        if !c.is_zero() {
            p.terms.insert(vec![0; arity], c);
        }
        p
    }

    pub fn one(arity: usize) -> Self {
        MultiPoly::constant(arity, Scalar::one())
    }

    pub fn var(arity: usize, j: usize) -> Self {
        assert!(j < arity, "variable index out of range");
        let mut e = vec![0u32; arity];
        e[j] = 1;
        MultiPoly::from_term(arity, e, Scalar::one())
    }

    pub fn from_term(arity: usize, exps: Vec<u32>, c: Scalar) -> Self {
        assert_eq!(exps.len(), arity);
        let mut p = MultiPoly::zero(arity);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The linear form coeffs . x.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let arity = coeffs.len();
        let mut p = MultiPoly::zero(arity);
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0u32; arity];
                e[j] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    /// The affine form coeffs . x - constant.
    pub fn affine(coeffs: &[Scalar], constant: &Scalar) -> Self {
        let mut p = MultiPoly::linear(coeffs);
        if !constant.is_zero() {
            p.terms.insert(vec![0; coeffs.len()], -constant.clone());
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    fn insert(&mut self, exps: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
    }

    /// Some(d) iff nonzero and every term has total degree d.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d: usize = e.iter().map(|&x| x as usize).sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MultiPoly::one(self.arity);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, j: usize) -> Self {
        assert!(j < self.arity);
        let mut out = MultiPoly::zero(self.arity);
        for (e, c) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[j] -= 1;
            out.insert(e2, c * Scalar::from_integer(e[j].into()));
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.arity);
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (j, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term *= &point[j];
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitute every variable: images[j] replaces x_j. All images must
    /// share an arity, which becomes the arity of the result.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.arity);
        let out_arity = images
            .first()
            .map(|p| p.arity)
            .unwrap_or(0);
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(out_arity), p.clone()])
            .collect();
        let mut acc = MultiPoly::zero(out_arity);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(out_arity, c.clone());
            for (j, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[j].len() <= k as usize {
                    let next = &powers[j][powers[j].len() - 1] * &images[j];
                    powers[j].push(next);
                }
                term = &term * &powers[j][k as usize];
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Split into coefficients of powers of variable j (polynomials with
    /// x_j absent).
    fn coeffs_in_var(&self, j: usize) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[j];
            let mut e2 = e.clone();
            e2[j] = 0;
            out.entry(k)
                .or_insert_with(|| MultiPoly::zero(self.arity))
                .insert(e2, c.clone());
        }
        out
    }

    /// Division with remainder by an affine form alpha = coeffs . x - constant
    /// with pivot on the first nonzero coefficient: self = alpha * quo + rem,
    /// where the pivot variable does not occur in rem. Both parts are unique.
    pub fn div_rem_affine(&self, coeffs: &[Scalar], constant: &Scalar) -> Result<(MultiPoly, MultiPoly)> {
        assert_eq!(coeffs.len(), self.arity);
        let j = coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::ZeroNormal { line: None })?;
        let a_j = &coeffs[j];
        // beta = alpha - a_j x_j
        let mut beta_coeffs = coeffs.to_vec();
        beta_coeffs[j] = Scalar::zero();
        let beta = MultiPoly::affine(&beta_coeffs, constant);

        let by_pow = self.coeffs_in_var(j);
        let top = by_pow.keys().next_back().copied().unwrap_or(0);
        // alpha * h + r matched coefficient-wise in x_j from the top down:
        // h_{q-1} = (c_q - beta h_q) / a_j, then r = c_0 - beta h_0.
        let mut h: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        let zero = MultiPoly::zero(self.arity);
        let mut carry = zero.clone(); // h_q while scanning q downward
        for qdeg in (1..=top).rev() {
            let c_q = by_pow.get(&qdeg).unwrap_or(&zero);
            let num = c_q - &(&beta * &carry);
            let h_prev = num.scale(&(Scalar::one() / a_j.clone()));
            if !h_prev.is_zero() {
                h.insert(qdeg - 1, h_prev.clone());
            }
            carry = h_prev;
        }
        let c_0 = by_pow.get(&0).unwrap_or(&zero);
        let rem = c_0 - &(&beta * &carry);

        let mut quo = MultiPoly::zero(self.arity);
        for (k, part) in h {
            for (e, c) in part.terms {
                let mut e2 = e;
                e2[j] += k;
                quo.insert(e2, c);
            }
        }
        Ok((quo, rem))
    }

    /// Exact division by an affine form; errors if the remainder is nonzero.
    pub fn div_exact_affine(&self, coeffs: &[Scalar], constant: &Scalar) -> Result<MultiPoly> {
        let (q, r) = self.div_rem_affine(coeffs, constant)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision(format!(
                "nonzero remainder dividing by affine form: {}",
                r.display(&default_var_names(self.arity))
            )));
        }
        Ok(q)
    }

    /// Some(c) iff self = c * other with c a nonzero constant.
    pub fn scalar_multiple_of(&self, other: &MultiPoly) -> Option<Scalar> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let mut ratio: Option<Scalar> = None;
        for ((e1, c1), (e2, c2)) in self.terms.iter().zip(other.terms.iter()) {
            if e1 != e2 {
                return None;
            }
            let r = c1 / c2;
            match &ratio {
                None => ratio = Some(r),
                Some(r0) if *r0 != r => return None,
                _ => {}
            }
        }
        ratio
    }

    /// Render with the given variable names: terms in descending key order,
    /// `c*x^e*y^f` shape.
    pub fn display(&self, vars: &[String]) -> String {
        assert_eq!(vars.len(), self.arity);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let neg = sign(c) < 0;
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let is_const_term = e.iter().all(|&k| k == 0);
            let show_coeff = is_const_term || !mag.is_one();
            let mut parts: Vec<String> = Vec::new();
            if show_coeff {
                parts.push(mag.to_string());
            }
            for (j, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => parts.push(vars[j].clone()),
                    _ => parts.push(format!("{}^{}", vars[j], k)),
                }
            }
            out.push_str(&parts.join("*"));
        }
        out
    }
}

/// x, y, z, w for small arity, x1..xn beyond.
pub fn default_var_names(arity: usize) -> Vec<String> {
    if arity <= 4 {
        ["x", "y", "z", "w"][..arity]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (1..=arity).map(|i| format!("x{}", i)).collect()
    }
}

/// All exponent vectors of the given total degree, ascending lex order.
pub fn monomials_of_degree(arity: usize, degree: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; arity];
    fn rec(cur: &mut Vec<u32>, pos: usize, left: usize, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left as u32;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        for k in 0..=left {
            cur[pos] = k as u32;
            rec(cur, pos + 1, left - k, out);
        }
        cur[pos] = 0;
    }
    if arity == 0 {
        if degree == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(&mut cur, 0, degree, &mut out);
    out
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, rhs.arity);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, rhs.arity);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, rhs.arity);
        let mut out = MultiPoly::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(&default_var_names(self.arity)))
    }
}
