//! Distribution (coefficient) operators of the upper unipotent family.
//!
//! Evaluating the pullback action at `X((a, b))` with `a, b` polynomial
//! indeterminates gives a matrix of polynomials; the coefficient matrices
//! `psi_{i,j}` of `a^i b^j` satisfy a family of exact laws: the constant
//! term is the identity, all operators commute pairwise, the non-constant
//! ones are `p^2`-nilpotent, each shifts torus weights by a fixed multiple
//! of `2i + 2pj`, and the `p`-th powers of the `psi_{i,0}` sum to the image
//! of `X((0,1))`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::weights::{weight_decomposition, WeightDecomposition, WeightError};
use crate::group::GroupElement;
use crate::matrix::Mat;
use crate::poly::{MultiPoly, VarSet};
use crate::rep::{rho_matrix, RepBasis, RepMatrix};
use crate::ring::{FqCtx, FqElement, Ring};
use crate::witt::Witt2;

/// The nonzero coefficient operators of the expansion
/// `rho(X((a,b))) = sum a^i b^j psi_{i,j}`.
#[derive(Debug, Clone)]
pub struct DistTable {
    pub psi: BTreeMap<(u32, u32), RepMatrix<FqElement>>,
    /// Global sign `s` with `psi_{i,j}: V_w -> V_{w + s(2i + 2pj)}`.
    pub shift_sign: i64,
    pub p: u64,
}

/// A falsified distribution law, with the witnessing indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistLawError {
    Window(WeightError),
    ConstantTermNotIdentity,
    NonCommuting { first: (u32, u32), second: (u32, u32) },
    NotNilpotent { index: (u32, u32) },
    WeightShift { index: (u32, u32), entry: (usize, usize) },
    PowerSumMismatch,
}

impl fmt::Display for DistLawError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistLawError::Window(e) => write!(f, "{e}"),
            DistLawError::ConstantTermNotIdentity => {
                write!(f, "constant coefficient operator is not the identity")
            }
            DistLawError::NonCommuting { first, second } => {
                write!(f, "operators {first:?} and {second:?} do not commute")
            }
            DistLawError::NotNilpotent { index } => {
                write!(f, "operator {index:?} is not p^2-nilpotent")
            }
            DistLawError::WeightShift { index, entry } => {
                write!(f, "operator {index:?} breaks weight homogeneity at {entry:?}")
            }
            DistLawError::PowerSumMismatch => {
                write!(f, "sum of p-th powers does not equal the image of X((0,1))")
            }
        }
    }
}

impl DistTable {
    pub fn get(&self, i: u32, j: u32) -> Option<&RepMatrix<FqElement>> {
        self.psi.get(&(i, j))
    }

    /// Evaluate `sum a^i b^j psi_{i,j}` at a concrete point.
    pub fn specialize(&self, a: &FqElement, b: &FqElement) -> RepMatrix<FqElement> {
        let first = self.psi.values().next().expect("table is never empty");
        let mut acc = Mat::zero(first.dim(), first.dim(), &a.zero_like());
        for ((i, j), m) in &self.psi {
            let c = a.pow(*i as u64).mul(&b.pow(*j as u64));
            acc = acc.add(&m.mat().scalar_mul(&c));
        }
        RepMatrix::from_mat(first.basis().clone(), acc)
    }
}

/// Computes the coefficient operators symbolically and verifies the exact
/// laws they satisfy. Requires a field large enough for unambiguous weights
/// (the homogeneity law reads the weight decomposition).
pub fn distribution_table(ctx: &FqCtx) -> Result<DistTable, DistLawError> {
    let wd = weight_decomposition(ctx).map_err(DistLawError::Window)?;
    distribution_table_with(ctx, &wd)
}

fn distribution_table_with(
    ctx: &FqCtx,
    wd: &WeightDecomposition,
) -> Result<DistTable, DistLawError> {
    let p = ctx.p();
    let dim = (p + 3) as usize;

    // rho(X((a,b))) with indeterminate a, b
    let vars = VarSet::new(&["a", "b"]);
    let a = MultiPoly::var(&vars, 0, &ctx.zero());
    let b = MultiPoly::var(&vars, 1, &ctx.zero());
    let g = GroupElement::upper(Witt2::new(a, b));
    let sym = rho_matrix(&g).expect("span is stable");

    // collect coefficient matrices
    let mut psi: BTreeMap<(u32, u32), Mat<FqElement>> = BTreeMap::new();
    for row in 0..dim {
        for col in 0..dim {
            for (exps, c) in sym.at(row, col).terms() {
                let key = (exps[0], exps[1]);
                let m = psi
                    .entry(key)
                    .or_insert_with(|| Mat::zero(dim, dim, &ctx.zero()));
                m.set(row, col, c.clone());
            }
        }
    }
    let basis = RepBasis::new(p);
    let psi: BTreeMap<(u32, u32), RepMatrix<FqElement>> = psi
        .into_iter()
        .map(|(k, m)| (k, RepMatrix::from_mat(basis.clone(), m)))
        .collect();

    // law: constant term is the identity
    match psi.get(&(0, 0)) {
        Some(m) if m.is_identity() => {}
        _ => return Err(DistLawError::ConstantTermNotIdentity),
    }

    // law: pairwise commutativity
    let keys: Vec<(u32, u32)> = psi.keys().copied().collect();
    for (n, k1) in keys.iter().enumerate() {
        for k2 in keys.iter().skip(n + 1) {
            let m1 = &psi[k1];
            let m2 = &psi[k2];
            if m1.mul(m2) != m2.mul(m1) {
                return Err(DistLawError::NonCommuting {
                    first: *k1,
                    second: *k2,
                });
            }
        }
    }

    // law: p^2-nilpotence away from the constant term
    for (k, m) in &psi {
        if *k == (0, 0) {
            continue;
        }
        if !m.pow(p * p).mat().is_zero() {
            return Err(DistLawError::NotNilpotent { index: *k });
        }
    }

    // law: weight homogeneity with one global sign
    let mut shift_sign: Option<i64> = None;
    for (k, m) in &psi {
        if *k == (0, 0) {
            continue;
        }
        let delta = (2 * k.0 as i64) + 2 * p as i64 * k.1 as i64;
        for row in 0..dim {
            for col in 0..dim {
                if m.at(row, col).is_zero() {
                    continue;
                }
                // entry (row, col) maps basis `col` into basis `row`
                let observed = wd.by_basis[row] - wd.by_basis[col];
                let fits = |sign: i64| wd.lift_to_window(observed - sign * delta) == 0;
                match shift_sign {
                    Some(s) if !fits(s) => {
                        return Err(DistLawError::WeightShift {
                            index: *k,
                            entry: (row, col),
                        });
                    }
                    Some(_) => {}
                    None => match (fits(1), fits(-1)) {
                        // ambiguous entries (shift 0 mod q-1) constrain nothing
                        (true, true) => {}
                        (true, false) => shift_sign = Some(1),
                        (false, true) => shift_sign = Some(-1),
                        (false, false) => {
                            return Err(DistLawError::WeightShift {
                                index: *k,
                                entry: (row, col),
                            });
                        }
                    },
                }
            }
        }
    }

    // law: sum of p-th powers of the psi_{i,0} equals rho(X((0,1)))
    let mut acc = Mat::zero(dim, dim, &ctx.zero());
    for (k, m) in &psi {
        if k.1 == 0 {
            acc = acc.add(&m.pow(p).mat().clone());
        }
    }
    let target = rho_matrix(&GroupElement::upper(Witt2::new(ctx.zero(), ctx.one())))
        .expect("span is stable");
    if &acc != target.mat() {
        return Err(DistLawError::PowerSumMismatch);
    }

    Ok(DistTable {
        psi,
        shift_sign: shift_sign.unwrap_or(1),
        p,
    })
}

/// A specialization mismatch witness.
#[derive(Debug, Clone)]
pub struct SpecializationFailure {
    pub a: FqElement,
    pub b: FqElement,
}

impl DistTable {
    /// Substitutes `count` random points into the expansion and compares
    /// with the directly computed matrices.
    pub fn check_specializations<G: rand_core::RngCore + ?Sized>(
        &self,
        ctx: &FqCtx,
        rng: &mut G,
        count: u64,
    ) -> Result<u64, SpecializationFailure> {
        for _ in 0..count {
            let a = ctx.random_element(rng);
            let b = ctx.random_element(rng);
            let lhs = self.specialize(&a, &b);
            let rhs = rho_matrix(&GroupElement::upper(Witt2::new(a.clone(), b.clone())))
                .expect("span is stable");
            if lhs != rhs {
                return Err(SpecializationFailure { a, b });
            }
        }
        Ok(count)
    }
}

/// A chain of `p + 1` nonzero weight spaces in arithmetic progression,
/// witnessed by a coefficient operator with nonvanishing `p`-th power.
#[derive(Debug, Clone)]
pub struct ChainWitness {
    /// The operator index `s` with `psi_{s,0}^p != 0`.
    pub s: u32,
    /// Starting weight.
    pub lambda: i64,
    /// The `p + 1` weights, in chain order (window representatives).
    pub chain: Vec<i64>,
    /// Basis index of the witnessing weight vector.
    pub witness_basis: usize,
}

/// No operator had a nonvanishing `p`-th power (must not happen when
/// `rho(X((0,1))) != 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoWitness;

impl fmt::Display for NoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no coefficient operator has a nonzero p-th power")
    }
}

/// Finds `s > 0` with `psi_{s,0}^p != 0`, a weight (basis) vector not killed
/// by that power, and returns the resulting chain of `p + 1` nonzero weight
/// spaces.
pub fn weight_chain_witness(
    table: &DistTable,
    wd: &WeightDecomposition,
) -> Result<ChainWitness, NoWitness> {
    let p = table.p;
    for ((i, j), m) in &table.psi {
        if *j != 0 || *i == 0 {
            continue;
        }
        let mp = m.pow(p);
        if mp.mat().is_zero() {
            continue;
        }
        // a basis vector surviving psi^p; basis vectors are weight vectors
        let dim = m.dim();
        for col in 0..dim {
            if mp.mat().col(col).iter().all(|e| e.is_zero()) {
                continue;
            }
            let lambda = wd.by_basis[col];
            let step = table.shift_sign * 2 * *i as i64;
            let mut chain = Vec::with_capacity(p as usize + 1);
            for n in 0..=p as i64 {
                let w = wd.lift_to_window(lambda + step * n);
                if !wd.has_weight(w) {
                    return Err(NoWitness);
                }
                chain.push(w);
            }
            return Ok(ChainWitness {
                s: *i,
                lambda,
                chain,
                witness_basis: col,
            });
        }
        return Err(NoWitness);
    }
    Err(NoWitness)
}

/// Index labels of the stored operators, for reports.
pub fn table_indices(table: &DistTable) -> Vec<String> {
    use alloc::format;
    table
        .psi
        .keys()
        .map(|(i, j)| format!("psi_{i}_{j}"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FieldContext;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn table_p3_q9() {
        let ctx = FieldContext::new(3, 2).unwrap();
        let table = distribution_table(&ctx).unwrap();
        // expected index set: (0,0), (1,0), (2,0), (3,0), (0,1)
        let keys: Vec<(u32, u32)> = table.psi.keys().copied().collect();
        assert_eq!(keys, [(0, 0), (0, 1), (1, 0), (2, 0), (3, 0)]);
        assert!(table.get(0, 0).unwrap().is_identity());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        table.check_specializations(&ctx, &mut rng, 20).unwrap();
    }

    #[test]
    fn chain_witness_p3_q9() {
        let ctx = FieldContext::new(3, 2).unwrap();
        let wd = weight_decomposition(&ctx).unwrap();
        let table = distribution_table(&ctx).unwrap();
        let chain = weight_chain_witness(&table, &wd).unwrap();
        assert!(chain.s >= 1);
        assert_eq!(chain.chain.len(), 4); // p + 1 entries
        for w in &chain.chain {
            assert!(wd.multiset.contains_key(w));
        }
    }

    #[test]
    fn table_p2_q8() {
        let ctx = FieldContext::new(2, 3).unwrap();
        let table = distribution_table(&ctx).unwrap();
        assert!(table.get(0, 0).unwrap().is_identity());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        table.check_specializations(&ctx, &mut rng, 20).unwrap();
    }
}
