//! Torus eigenspace decomposition of the representation.
//!
//! At a finite field the eigenvalue exponents are only defined modulo
//! `q - 1`; they are lifted to the symmetric integer window
//! `(-(q-1)/2, (q-1)/2]`, which is unambiguous once `q - 1 > 2p`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::group::GroupElement;
use crate::rep::rho_matrix;
use crate::ring::{primitive_element, FqCtx, FqElement, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightError {
    /// `q <= 2p + 1`: integer weights would alias modulo `q - 1`.
    WindowTooSmall { q: u64, p: u64 },
}

impl fmt::Display for WeightError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightError::WindowTooSmall { q, p } => {
                write!(f, "q = {q} is too small for unambiguous weights at p = {p}")
            }
        }
    }
}

/// Weights of the fixed basis under the torus action, with the eigenspace
/// layout. The basis consists of weight vectors, so each weight space is a
/// coordinate subspace.
#[derive(Debug, Clone)]
pub struct WeightDecomposition {
    /// The primitive torus parameter whose eigenvalues were read.
    pub t0: FqElement,
    /// Weight of each basis vector, in basis order.
    pub by_basis: Vec<i64>,
    /// Weight -> multiplicity.
    pub multiset: BTreeMap<i64, usize>,
    /// Weight -> indices of the basis vectors spanning that weight space.
    pub spaces: BTreeMap<i64, Vec<usize>>,
    q: u64,
}

impl WeightDecomposition {
    pub fn distinct_weights(&self) -> usize {
        self.multiset.len()
    }

    pub fn max_space_dim(&self) -> usize {
        self.multiset.values().copied().max().unwrap_or(0)
    }

    pub fn is_negation_symmetric(&self) -> bool {
        self.multiset
            .iter()
            .all(|(w, m)| self.multiset.get(&-w) == Some(m))
    }

    /// Reduce an integer into the symmetric window modulo `q - 1`.
    pub fn lift_to_window(&self, e: i64) -> i64 {
        let m = (self.q - 1) as i64;
        let r = e.rem_euclid(m);
        if r > m / 2 {
            r - m
        } else {
            r
        }
    }

    pub fn has_weight(&self, w: i64) -> bool {
        self.multiset.contains_key(&self.lift_to_window(w))
    }
}

/// Reads the weights of the representation off the diagonal of the torus
/// image at a primitive parameter. The matrix is asserted diagonal: the
/// basis is made of weight vectors by construction, so anything else is a
/// bug that must fail loudly.
pub fn weight_decomposition(ctx: &FqCtx) -> Result<WeightDecomposition, WeightError> {
    let p = ctx.p();
    let q = ctx.q();
    if q <= 2 * p + 1 {
        return Err(WeightError::WindowTooSmall { q, p });
    }
    let t0 = primitive_element(ctx);
    let m = rho_matrix(&GroupElement::torus(t0.clone()).expect("primitive element is a unit"))
        .expect("span is stable");
    assert!(
        m.mat().is_diagonal(),
        "torus image must be diagonal in the weight basis"
    );

    // discrete logarithms via a full power table of t0
    let mut powers = Vec::with_capacity((q - 1) as usize);
    let mut acc = ctx.one();
    for _ in 0..q - 1 {
        powers.push(acc.clone());
        acc = acc.mul(&t0);
    }
    let dlog = |x: &FqElement| -> i64 {
        powers
            .iter()
            .position(|y| y == x)
            .expect("diagonal entries are units") as i64
    };

    let half = ((q - 1) / 2) as i64;
    let mut by_basis = Vec::with_capacity(m.dim());
    let mut multiset = BTreeMap::new();
    let mut spaces: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for i in 0..m.dim() {
        let e = dlog(m.at(i, i));
        let w = if e > half { e - (q - 1) as i64 } else { e };
        by_basis.push(w);
        *multiset.entry(w).or_insert(0) += 1;
        spaces.entry(w).or_default().push(i);
    }
    debug_assert_eq!(by_basis.len(), (p + 3) as usize);
    Ok(WeightDecomposition {
        t0,
        by_basis,
        multiset,
        spaces,
        q,
    })
}
