//! Intersection lattices and the Mobius function.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::scalar::{canonical_int_vector, Scalar};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::collections::HashMap;

/// A nonempty intersection of hyperplanes, stored as the reduced echelon
/// form of its defining system (canonical integer rows), together with the
/// set of all hyperplanes containing it. A flat equals the intersection of
/// its members, so `members` determines the flat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    /// Codimension (number of independent equations).
    pub rank: usize,
    /// Indices of all hyperplanes containing the flat, ascending.
    pub members: Vec<usize>,
    mask: u128,
    /// Canonical augmented echelon rows (normal | constant).
    rows: Vec<Vec<BigInt>>,
}

impl Flat {
    pub fn contains_hyperplane(&self, i: usize) -> bool {
        self.mask >> i & 1 == 1
    }

    pub fn mask(&self) -> u128 {
        self.mask
    }

    /// Defining equations as rational augmented rows.
    pub fn equations(&self) -> Vec<Vec<Scalar>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| Scalar::from_integer(x.clone())).collect())
            .collect()
    }
}

/// Echelon context for incremental intersection: rational rows, reduced,
/// with pivot columns tracked. Augmented with the constant column last.
#[derive(Clone)]
struct Echelon {
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: vec![],
            pivots: vec![],
        }
    }

    /// Reduce a row against the echelon. Returns the reduced row.
    fn reduce(&self, mut row: Vec<Scalar>) -> Vec<Scalar> {
        for (r, &p) in self.pivots.iter().enumerate() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for j in p..self.cols {
                    let v = &row[j] - &(&self.rows[r][j] * &f);
                    row[j] = v;
                }
            }
        }
        row
    }

    /// Insert a reduced row; returns false (inconsistent) when the row is
    /// 0 = nonzero, true otherwise. A zero row is a no-op.
    fn insert(&mut self, row: Vec<Scalar>) -> bool {
        let lead = row.iter().position(|x| !x.is_zero());
        match lead {
            None => true,
            Some(p) if p + 1 == self.cols => false,
            Some(p) => {
                let inv = Scalar::one() / row[p].clone();
                let mut row: Vec<Scalar> = row.iter().map(|x| x * &inv).collect();
                for j in 0..p {
                    row[j] = Scalar::zero();
                }
                // back-substitute into existing rows to keep reduced form
                for existing in self.rows.iter_mut() {
                    if !existing[p].is_zero() {
                        let f = existing[p].clone();
                        for j in p..self.cols {
                            let v = &existing[j] - &(&row[j] * &f);
                            existing[j] = v;
                        }
                    }
                }
                let pos = self.pivots.iter().position(|&q| q > p).unwrap_or(self.pivots.len());
                self.rows.insert(pos, row);
                self.pivots.insert(pos, p);
                true
            }
        }
    }

    /// True iff the affine row lies in the row span (i.e. the flat is
    /// contained in the hyperplane with this augmented row).
    fn spans(&self, row: Vec<Scalar>) -> bool {
        self.reduce(row).iter().all(|x| x.is_zero())
    }

    fn canonical_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|r| canonical_int_vector(r).expect("nonzero echelon row"))
            .collect()
    }
}

/// The poset of nonempty intersections ordered by reverse inclusion
/// (the ambient space is the bottom element), with Mobius values.
#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    dim: usize,
    flats: Vec<Flat>,
    mobius: Vec<BigInt>,
    /// Flat indices grouped by rank.
    by_rank: Vec<Vec<usize>>,
}

impl IntersectionLattice {
    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn mobius(&self, flat_index: usize) -> &BigInt {
        &self.mobius[flat_index]
    }

    pub fn num_flats(&self) -> usize {
        self.flats.len()
    }

    pub fn max_rank(&self) -> usize {
        self.by_rank.len() - 1
    }

    pub fn flats_of_rank(&self, r: usize) -> impl Iterator<Item = (usize, &Flat)> {
        self.by_rank
            .get(r)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
            .iter()
            .map(move |&i| (i, &self.flats[i]))
    }

    /// Whitney numbers of the first kind: w_r = sum of mu over rank-r flats.
    pub fn whitney(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.by_rank.len()];
        for (r, idxs) in self.by_rank.iter().enumerate() {
            for &i in idxs {
                out[r] += &self.mobius[i];
            }
        }
        out
    }
}

/// Build the intersection lattice by rank-by-rank closure: each rank-(r+1)
/// flat is some rank-r flat intersected with one more hyperplane.
pub fn intersection_lattice(arr: &Arrangement) -> Result<IntersectionLattice> {
    let n = arr.num_hyperplanes();
    if n > 128 {
        return Err(Error::Budget {
            what: "intersection lattice hyperplane count".into(),
            needed: n.to_string(),
            budget: "128".to_string(),
        });
    }
    let cols = arr.dimension() + 1;
    let aug_rows: Vec<Vec<Scalar>> = arr
        .hyperplanes()
        .iter()
        .map(|h| h.augmented_row())
        .collect();

    let mut flats: Vec<Flat> = Vec::new();
    let mut contexts: Vec<Echelon> = Vec::new();

    // bottom element: the ambient space
    let bottom = Echelon::new(cols);
    let bottom_members: Vec<usize> = (0..n)
        .filter(|&i| bottom.spans(aug_rows[i].clone()))
        .collect();
    debug_assert!(bottom_members.is_empty());
    flats.push(Flat {
        rank: 0,
        members: vec![],
        mask: 0,
        rows: vec![],
    });
    contexts.push(bottom);

    let mut level: Vec<usize> = vec![0];
    while !level.is_empty() {
        // flats of the next rank, keyed by canonical echelon rows
        let mut seen: HashMap<Vec<Vec<BigInt>>, ()> = HashMap::new();
        let mut next: Vec<usize> = Vec::new();
        for &fi in &level {
            let parent_mask = flats[fi].mask;
            for i in 0..n {
                if parent_mask >> i & 1 == 1 {
                    continue;
                }
                let mut ctx = contexts[fi].clone();
                let reduced = ctx.reduce(aug_rows[i].clone());
                if reduced.iter().all(|x| x.is_zero()) {
                    continue; // hyperplane already contains the flat
                }
                if !ctx.insert(reduced) {
                    continue; // empty intersection
                }
                let key = ctx.canonical_rows();
                if seen.contains_key(&key) {
                    continue;
                }
                seen.insert(key.clone(), ());
                let mut members = Vec::new();
                let mut mask = 0u128;
                for (k, row) in aug_rows.iter().enumerate() {
                    if ctx.spans(row.clone()) {
                        members.push(k);
                        mask |= 1 << k;
                    }
                }
                let rank = ctx.pivots.len();
                debug_assert_eq!(rank, flats[fi].rank + 1);
                flats.push(Flat {
                    rank,
                    members,
                    mask,
                    rows: key,
                });
                contexts.push(ctx);
                next.push(flats.len() - 1);
            }
        }
        level = next;
    }

    // deterministic order: by (rank, echelon rows)
    let mut order: Vec<usize> = (0..flats.len()).collect();
    order.sort_by(|&a, &b| {
        flats[a]
            .rank
            .cmp(&flats[b].rank)
            .then_with(|| flats[a].rows.cmp(&flats[b].rows))
    });
    let flats: Vec<Flat> = order.into_iter().map(|i| flats[i].clone()).collect();

    // Mobius recursion: mu(bottom) = 1, mu(X) = -sum over Y strictly below X.
    // Y < X iff members(Y) is a strict subset of members(X).
    let mut mobius = vec![BigInt::zero(); flats.len()];
    for i in 0..flats.len() {
        if flats[i].rank == 0 {
            mobius[i] = BigInt::one();
            continue;
        }
        let mut acc = BigInt::zero();
        for j in 0..flats.len() {
            if flats[j].rank < flats[i].rank
                && flats[j].mask & flats[i].mask == flats[j].mask
            {
                acc += &mobius[j];
            }
        }
        mobius[i] = -acc;
    }

    // sign check: (-1)^rank mu > 0 on every flat
    for (f, mu) in flats.iter().zip(&mobius) {
        let signed = if f.rank % 2 == 1 { -mu.clone() } else { mu.clone() };
        if !signed.is_positive() {
            return Err(Error::Internal(format!(
                "Mobius sign violated at rank {}: {}",
                f.rank, mu
            )));
        }
    }

    let max_rank = flats.iter().map(|f| f.rank).max().unwrap_or(0);
    let mut by_rank = vec![Vec::new(); max_rank + 1];
    for (i, f) in flats.iter().enumerate() {
        by_rank[f.rank].push(i);
    }

    Ok(IntersectionLattice {
        dim: arr.dimension(),
        flats,
        mobius,
        by_rank,
    })
}
