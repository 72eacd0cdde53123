//! Fixed-space filtration under the unipotent radical.
//!
//! Iteratively computes the common fixed space of the radical generators on
//! the representation, passes to the quotient, and repeats until the whole
//! space is exhausted. Every layer must be nonzero (the algebraic statement
//! behind this is a Lie-Kolchin fixed-point argument), the radical acts
//! trivially on each layer, and the layer dimensions sum to `p + 3`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::group::GroupElement;
use crate::matrix::{Mat, Subspace};
use crate::rep::rho_matrix;
use crate::ring::{FqCtx, FqElement, Ring};
use crate::witt::Witt2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiltrationError {
    /// A nonzero quotient had no fixed vectors; the filtration cannot
    /// terminate.
    NonTerminating { at_layer: usize },
}

impl fmt::Display for FiltrationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationError::NonTerminating { at_layer } => {
                write!(f, "no fixed vectors on the nonzero quotient at layer {at_layer}")
            }
        }
    }
}

/// Layer dimensions of the ascending fixed-space filtration, with the
/// dimension of the bottom fixed space cross-checked by an independent rank
/// computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationReport {
    pub layer_dims: Vec<usize>,
    pub fixed_dim: usize,
    /// `dim V - rank` of the stacked `(rho(x) - 1)` matrices; must agree.
    pub fixed_dim_oracle: usize,
    /// Layers on which every radical generator was certified to act
    /// trivially (always all of them on success).
    pub certified_layers: usize,
}

impl FiltrationReport {
    pub fn total(&self) -> usize {
        self.layer_dims.iter().sum()
    }
}

/// The spanning set of the radical used everywhere: `X((0,e))`, `Y((0,e))`,
/// `Z(e)` over a basis `e` of the field over its prime subfield.
pub fn radical_generators(ctx: &FqCtx) -> Vec<GroupElement<FqElement>> {
    let mut gens = Vec::new();
    for e in ctx.subfield_basis() {
        let w = Witt2::new(e.zero_like(), e.clone());
        gens.push(GroupElement::upper(w.clone()));
        gens.push(GroupElement::lower(w));
        gens.push(GroupElement::central(e));
    }
    gens
}

pub fn fixed_space_filtration(ctx: &FqCtx) -> Result<FiltrationReport, FiltrationError> {
    let zero = ctx.zero();
    let deltas: Vec<Mat<FqElement>> = radical_generators(ctx)
        .iter()
        .map(|g| {
            let m = rho_matrix(g).expect("span is stable");
            m.mat().sub(&Mat::identity(m.dim(), &zero))
        })
        .collect();
    let dim = deltas[0].nrows();

    // bottom fixed space two ways: iterated kernel intersection, and the
    // rank of the stacked matrices
    let mut fixed = Subspace::full(dim, &zero);
    for d in &deltas {
        let k = Subspace::from_spanning(dim, d.kernel_basis(), &zero);
        fixed = fixed.intersect(&k, &zero);
    }
    let stacked = Mat::vstack(&deltas);
    let fixed_dim_oracle = dim - stacked.rank();
    assert_eq!(
        fixed.dim(),
        fixed_dim_oracle,
        "fixed-space routes must agree"
    );

    // ascending filtration: F_next = { v : (rho(x)-1)v in F for all x }
    let mut steps: Vec<Subspace<FqElement>> = vec![fixed.clone()];
    let mut layer_dims = vec![fixed.dim()];
    if fixed.dim() == 0 {
        return Err(FiltrationError::NonTerminating { at_layer: 1 });
    }
    while !steps.last().unwrap().is_full() {
        let prev = steps.last().unwrap();
        let ann = prev.annihilator(&zero);
        let projected: Vec<Mat<FqElement>> = deltas.iter().map(|d| ann.mul(d)).collect();
        let next_kernel = Mat::vstack(&projected);
        let next = Subspace::from_spanning(dim, next_kernel.kernel_basis(), &zero);
        let layer = next.dim() - prev.dim();
        if layer == 0 {
            return Err(FiltrationError::NonTerminating {
                at_layer: steps.len() + 1,
            });
        }
        layer_dims.push(layer);
        steps.push(next);
    }

    // triviality certificates: each delta maps every step into the one below
    let mut certified_layers = 0;
    for (i, step) in steps.iter().enumerate() {
        for d in &deltas {
            for row in step.basis().rows_iter() {
                let image = d.mul_vec(row);
                if i == 0 {
                    assert!(image.iter().all(|e| e.is_zero()));
                } else {
                    assert!(steps[i - 1].contains(&image));
                }
            }
        }
        certified_layers += 1;
    }

    Ok(FiltrationReport {
        layer_dims,
        fixed_dim: fixed.dim(),
        fixed_dim_oracle,
        certified_layers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FieldContext;

    #[test]
    fn filtration_p3_q9() {
        let ctx = FieldContext::new(3, 2).unwrap();
        let report = fixed_space_filtration(&ctx).unwrap();
        assert_eq!(report.total(), 6);
        assert!(report.layer_dims.iter().all(|d| *d > 0));
        assert_eq!(report.fixed_dim, report.fixed_dim_oracle);
        assert_eq!(report.certified_layers, report.layer_dims.len());
        // the degree-p monomials are all fixed; the two extra coordinates
        // move by monomials, so the filtration has exactly two layers
        assert_eq!(report.layer_dims, [4, 2]);
    }

    #[test]
    fn filtration_p3_q3() {
        let ctx = FieldContext::new(3, 1).unwrap();
        let report = fixed_space_filtration(&ctx).unwrap();
        assert_eq!(report.total(), 6);
        assert!(report.layer_dims.iter().all(|d| *d > 0));
    }

    #[test]
    fn filtration_p2_q2() {
        let ctx = FieldContext::new(2, 1).unwrap();
        let report = fixed_space_filtration(&ctx).unwrap();
        assert_eq!(report.total(), 5);
    }
}
