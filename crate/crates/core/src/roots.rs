//! Exact real-root location via Sturm sequences.

use crate::error::{Error, Result};
use crate::scalar::{sign, Scalar};
use crate::unipoly::UniPoly;
use num::Zero;

/// Sturm chain of a squarefree polynomial: p, p', then negated remainders.
fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]).expect("nonzero divisor");
        chain.push(-&r);
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut count = 0;
    let mut last = 0i32;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(chain: &[UniPoly], x: &Scalar) -> usize {
    variations(chain.iter().map(|p| sign(&p.eval(x))))
}

/// Sign at -infinity: leading sign flipped by odd degree.
fn variations_at_neg_inf(chain: &[UniPoly]) -> usize {
    variations(chain.iter().map(|p| match p.degree() {
        None => 0,
        Some(d) => {
            let s = sign(p.leading().unwrap());
            if d % 2 == 1 {
                -s
            } else {
                s
            }
        }
    }))
}

fn variations_at_pos_inf(chain: &[UniPoly]) -> usize {
    variations(chain.iter().map(|p| match p.degree() {
        None => 0,
        Some(_) => sign(p.leading().unwrap()),
    }))
}

/// Number of distinct real roots of `p` in the half-open interval (a, b].
pub fn count_real_roots_in(p: &UniPoly, a: &Scalar, b: &Scalar) -> Result<usize> {
    let sf = p.squarefree_part()?;
    if sf.degree() == Some(0) {
        return Ok(0);
    }
    let chain = sturm_chain(&sf);
    Ok(variations_at(&chain, a) - variations_at(&chain, b))
}

/// Number of distinct real roots of `p` on the whole line.
pub fn count_real_roots(p: &UniPoly) -> Result<usize> {
    let sf = p.squarefree_part()?;
    if sf.degree() == Some(0) {
        return Ok(0);
    }
    let chain = sturm_chain(&sf);
    Ok(variations_at_neg_inf(&chain) - variations_at_pos_inf(&chain))
}

/// Exact test that every complex root of `q` is real and <= 0.
///
/// The root set of `q` equals that of its squarefree part `q~`, so the
/// condition holds iff `q~` has deg(q~) distinct real roots and none of them
/// lies in (0, +inf). Both counts come from one Sturm chain. Errors on the
/// zero polynomial; a nonzero constant has no roots and passes vacuously.
pub fn all_real_roots_nonpositive(q: &UniPoly) -> Result<bool> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = q.squarefree_part()?;
    let deg = sf.degree().unwrap();
    if deg == 0 {
        return Ok(true);
    }
    let chain = sturm_chain(&sf);
    let total = variations_at_neg_inf(&chain) - variations_at_pos_inf(&chain);
    if total != deg {
        return Ok(false);
    }
    let positive = variations_at(&chain, &Scalar::zero()) - variations_at_pos_inf(&chain);
    Ok(positive == 0)
}
