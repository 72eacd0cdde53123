//! The (p+3)-dimensional representation, built by symbolic pullback.
//!
//! The group acts on pairs of Witt vectors; pulling coordinate functions
//! back along `w -> g^-1 w` gives an action on the polynomial algebra in the
//! four coordinates `A0, A1, B0, B1`. The span of the degree-`p` monomials
//! in `A0, B0` together with `A1` and `B1` is stable, and the matrix of the
//! action on that span (columns = images of basis vectors) is computed here,
//! exactly, for any coefficient ring. Differentials come from evaluating the
//! same pullback over dual numbers.
//!
//! Convention: with pullback by `g^-1`, the central generator acts by
//! `A1 -> A1 - s*A0^p` (displayed sources often carry the opposite sign; all
//! downstream checks only use nonvanishing, and the recorded weights are the
//! negatives of the usual normalization, a convention-free multiset).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::group::{ad_twist, GroupElement, HatGroupElement, Sl2LieElement};
use crate::matrix::Mat;
use crate::poly::{MultiPoly, PolyError, VarSet};
use crate::ring::{DualNumber, FqCtx, FqElement, Ring};
use crate::witt::Witt2;

/// Errors from representation construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepError {
    /// A pullback left the stable span. Indicates a bug: the span is stable
    /// by construction.
    NotInSpan(String),
    /// A dual-number image was not of the form `I + eps*M`.
    NotFirstOrder,
}

impl fmt::Display for RepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepError::NotInSpan(m) => write!(f, "pullback left the basis span at {m}"),
            RepError::NotFirstOrder => write!(f, "dual-number image is not I + eps*M"),
        }
    }
}

impl From<PolyError> for RepError {
    fn from(e: PolyError) -> RepError {
        match e {
            PolyError::NotInSpan(m) => RepError::NotInSpan(m),
            PolyError::UnboundVariable(v) => RepError::NotInSpan(v),
        }
    }
}

/// The fixed monomial basis `[A0^p, A0^(p-1) B0, ..., B0^p, A1, B1]`.
///
/// This exact order defines the matrix conventions everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepBasis {
    p: u64,
    exps: Vec<Vec<u32>>,
    names: Vec<String>,
}

/// Shared variable context for the four Witt coordinates.
pub fn coord_vars() -> Arc<VarSet> {
    VarSet::new(&["A0", "A1", "B0", "B1"])
}

impl RepBasis {
    pub fn new(p: u64) -> RepBasis {
        let mut exps = Vec::with_capacity(p as usize + 3);
        let mut names = Vec::with_capacity(p as usize + 3);
        for j in 0..=p as u32 {
            let i = p as u32 - j;
            exps.push(vec![i, 0, j, 0]);
            let mut parts = Vec::new();
            if i == 1 {
                parts.push("A0".to_string());
            } else if i > 1 {
                parts.push(format!("A0^{i}"));
            }
            if j == 1 {
                parts.push("B0".to_string());
            } else if j > 1 {
                parts.push(format!("B0^{j}"));
            }
            names.push(parts.join("*"));
        }
        exps.push(vec![0, 1, 0, 0]);
        names.push("A1".to_string());
        exps.push(vec![0, 0, 0, 1]);
        names.push("B1".to_string());
        RepBasis { p, exps, names }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exps
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Index of the basis vector `A1`.
    pub fn a1_index(&self) -> usize {
        self.dim() - 2
    }

    /// Index of the basis vector `B1`.
    pub fn b1_index(&self) -> usize {
        self.dim() - 1
    }

    /// Index of the monomial `A0^i B0^j` with `i + j = p`.
    pub fn monomial_index(&self, j_b0: u32) -> usize {
        j_b0 as usize
    }
}

/// Matrix of the representation in the fixed basis; column `j` holds the
/// coordinates of the image of basis vector `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMatrix<R: Ring> {
    basis: RepBasis,
    mat: Mat<R>,
}

impl<R: Ring> RepMatrix<R> {
    pub fn basis(&self) -> &RepBasis {
        &self.basis
    }

    pub fn mat(&self) -> &Mat<R> {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn at(&self, i: usize, j: usize) -> &R {
        self.mat.at(i, j)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.basis, rhs.basis);
        RepMatrix {
            basis: self.basis.clone(),
            mat: self.mat.mul(&rhs.mat),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        RepMatrix {
            basis: self.basis.clone(),
            mat: self.mat.pow(e),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    pub fn identity_like(&self) -> Self {
        RepMatrix {
            basis: self.basis.clone(),
            mat: Mat::identity(self.dim(), self.mat.sample()),
        }
    }

    pub fn from_mat(basis: RepBasis, mat: Mat<R>) -> Self {
        assert_eq!(mat.nrows(), basis.dim());
        assert_eq!(mat.ncols(), basis.dim());
        RepMatrix { basis, mat }
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> RepMatrix<S> {
        RepMatrix {
            basis: self.basis.clone(),
            mat: self.mat.map(f),
        }
    }
}

impl RepMatrix<FqElement> {
    /// Injective digit encoding, used as a canonical fingerprint.
    pub fn canonical_digits(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                out.extend_from_slice(self.at(i, j).digits());
            }
        }
        out
    }
}

/// The matrix of the pullback action of `g` on the stable span.
///
/// Computes `h = g^-1`, applies `h` to the symbolic point
/// `((A0,A1), (B0,B1))` by Witt matrix-vector action, pulls each basis
/// monomial back through the resulting coordinate polynomials, and expresses
/// the images in the basis. `g -> rho_matrix(g)` is a group homomorphism.
pub fn rho_matrix<R: Ring>(g: &GroupElement<R>) -> Result<RepMatrix<R>, RepError> {
    let sample = &g.a.a0;
    let p = sample.characteristic();
    let basis = RepBasis::new(p);
    let vars = coord_vars();

    let h = g.inv();
    let lift = |w: &Witt2<R>| -> Witt2<MultiPoly<R>> {
        Witt2::new(
            MultiPoly::constant(&vars, &w.a0),
            MultiPoly::constant(&vars, &w.a1),
        )
    };
    let point_a = Witt2::new(
        MultiPoly::var(&vars, 0, sample),
        MultiPoly::var(&vars, 1, sample),
    );
    let point_b = Witt2::new(
        MultiPoly::var(&vars, 2, sample),
        MultiPoly::var(&vars, 3, sample),
    );
    // h applied to the symbolic point
    let q_a = lift(&h.a).mul(&point_a).add(&lift(&h.b).mul(&point_b));
    let q_b = lift(&h.c).mul(&point_a).add(&lift(&h.d).mul(&point_b));

    let dim = basis.dim();
    let mut mat = Mat::zero(dim, dim, sample);
    for (col, exps) in basis.exponents().iter().enumerate() {
        let image = if exps[1] == 1 {
            q_a.a1.clone()
        } else if exps[3] == 1 {
            q_b.a1.clone()
        } else {
            q_a.a0.pow(exps[0] as u64).mul(&q_b.a0.pow(exps[2] as u64))
        };
        let coords = image.express_in_basis(basis.exponents())?;
        for (row, c) in coords.into_iter().enumerate() {
            mat.set(row, col, c);
        }
    }
    Ok(RepMatrix { basis, mat })
}

// ---------------------------------------------------------------------------
// Differential via dual numbers
// ---------------------------------------------------------------------------

/// The six tangent directions spanning the Lie algebra, realized as
/// dual-number group elements reducing to the identity at `eps = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LieDirection {
    /// `X((eps, 0))` — upper unipotent, first Witt coordinate.
    E,
    /// `Y((eps, 0))` — lower unipotent, first Witt coordinate.
    F,
    /// `Phi(1 + eps)` — torus direction.
    H,
    /// `X((0, eps))` — upper unipotent, second Witt coordinate.
    E1,
    /// `Y((0, eps))` — lower unipotent, second Witt coordinate.
    F1,
    /// `Z(eps)` — central one-parameter direction.
    Z,
}

impl LieDirection {
    pub fn all() -> [LieDirection; 6] {
        [
            LieDirection::E,
            LieDirection::F,
            LieDirection::H,
            LieDirection::E1,
            LieDirection::F1,
            LieDirection::Z,
        ]
    }

    pub fn label(&self) -> &'static str {
        match self {
            LieDirection::E => "e",
            LieDirection::F => "f",
            LieDirection::H => "h",
            LieDirection::E1 => "e1",
            LieDirection::F1 => "f1",
            LieDirection::Z => "z",
        }
    }

    /// The dual-number realization over `F_q`.
    pub fn realize(&self, ctx: &FqCtx) -> GroupElement<DualNumber<FqElement>> {
        let zero = DualNumber::constant(ctx.zero());
        let eps = DualNumber::eps(&ctx.zero());
        match self {
            LieDirection::E => GroupElement::upper(Witt2::new(eps, zero)),
            LieDirection::F => GroupElement::lower(Witt2::new(eps, zero)),
            LieDirection::H => {
                let t = DualNumber::new(ctx.one(), ctx.one()); // 1 + eps
                GroupElement::torus(t).expect("1 + eps is a unit")
            }
            LieDirection::E1 => GroupElement::upper(Witt2::new(zero, eps)),
            LieDirection::F1 => GroupElement::lower(Witt2::new(zero, eps)),
            LieDirection::Z => GroupElement::central(eps),
        }
    }
}

/// First-order part of the pullback action along a tangent direction:
/// computes the representation of the dual-number realization, asserts it
/// has the form `I + eps*M`, and returns `M`.
pub fn drho(dir: LieDirection, ctx: &FqCtx) -> Result<RepMatrix<FqElement>, RepError> {
    let g = dir.realize(ctx);
    let rm = rho_matrix(&g)?;
    let dim = rm.dim();
    for i in 0..dim {
        for j in 0..dim {
            let e = rm.at(i, j);
            let expected_const = i == j;
            if e.a.is_one() != expected_const || (!expected_const && !e.a.is_zero()) {
                return Err(RepError::NotFirstOrder);
            }
        }
    }
    Ok(rm.map(|e| e.b.clone()))
}

/// Kernel of the differential on the 6-dimensional tangent space: dimension
/// and a kernel basis in `(e, f, h, e1, f1, z)` coordinates.
pub fn drho_kernel(ctx: &FqCtx) -> Result<(usize, Vec<Vec<FqElement>>), RepError> {
    let dirs = LieDirection::all();
    let mats: Vec<RepMatrix<FqElement>> = dirs
        .iter()
        .map(|d| drho(*d, ctx))
        .collect::<Result<_, _>>()?;
    let dim = mats[0].dim();
    let stacked = Mat::from_fn(dim * dim, dirs.len(), |i, j| {
        mats[j].at(i / dim, i % dim).clone()
    });
    let kernel = stacked.kernel_basis();
    Ok((kernel.len(), kernel))
}

/// Kernel dimension of the differential (0 means infinitesimally faithful).
pub fn drho_kernel_dimension(ctx: &FqCtx) -> usize {
    drho_kernel(ctx).expect("pullback stays in span").0
}

// ---------------------------------------------------------------------------
// The 4-dimensional semidirect-product representation
// ---------------------------------------------------------------------------

/// Matrix of `(v, a) -> ((w, alpha) -> (Ad_twist(a) w + alpha v, alpha))` on
/// the 4-dimensional space (trace-zero coordinates `x, y, z`, then the
/// scalar line).
pub fn hat_rep_matrix(el: &HatGroupElement, ctx: &FqCtx) -> Mat<FqElement> {
    let zero = ctx.zero();
    let mut m = Mat::zero(4, 4, &zero);
    for j in 0..3 {
        let mut coords = [ctx.zero(), ctx.zero(), ctx.zero()];
        coords[j] = ctx.one();
        let w = Sl2LieElement::new(coords[0].clone(), coords[1].clone(), coords[2].clone());
        let img = ad_twist(&el.a, &w);
        let img_coords = img.coords();
        for i in 0..3 {
            m.set(i, j, img_coords[i].clone());
        }
    }
    let v = el.v.coords();
    for i in 0..3 {
        m.set(i, 3, v[i].clone());
    }
    m.set(3, 3, ctx.one());
    m
}

// ---------------------------------------------------------------------------
// Homomorphism sweeps
// ---------------------------------------------------------------------------

/// Violating pair of a homomorphism sweep.
#[derive(Debug, Clone)]
pub struct HomFailure {
    pub g: GroupElement<FqElement>,
    pub h: GroupElement<FqElement>,
}

/// Exhaustive check that `rho(gh) = rho(g) rho(h)` over all pairs of group
/// elements. Precomputes the full representation table; `pair_budget` caps
/// the quadratic sweep.
pub fn homomorphism_check_exhaustive(
    ctx: &FqCtx,
    enum_budget: u64,
    pair_budget: u64,
) -> Result<u64, HomFailure> {
    use alloc::collections::BTreeMap;
    let elements: Vec<GroupElement<FqElement>> = crate::group::enumerate_group(ctx, enum_budget)
        .expect("enumeration within budget")
        .collect();
    let n = elements.len() as u64;
    assert!(
        n * n <= pair_budget,
        "pair sweep of {n}^2 exceeds the budget {pair_budget}"
    );
    let table: Vec<RepMatrix<FqElement>> = elements
        .iter()
        .map(|g| rho_matrix(g).expect("span is stable"))
        .collect();
    let index: BTreeMap<Vec<u64>, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, g)| (g.canonical_digits(), i))
        .collect();
    let mut pairs = 0u64;
    for (i, g) in elements.iter().enumerate() {
        for (j, h) in elements.iter().enumerate() {
            let prod = g.mul(h);
            let k = index[&prod.canonical_digits()];
            if table[i].mul(&table[j]) != table[k] {
                return Err(HomFailure {
                    g: g.clone(),
                    h: h.clone(),
                });
            }
            pairs += 1;
        }
    }
    Ok(pairs)
}

/// Homomorphism check over all pairs drawn from the one-parameter generator
/// families (`X` and `Y` over every Witt vector, `Phi` over every unit, `Z`
/// over every scalar).
pub fn homomorphism_check_generators(ctx: &FqCtx) -> Result<u64, HomFailure> {
    let mut gens: Vec<GroupElement<FqElement>> = Vec::new();
    for w in crate::witt::witt2_elements(ctx) {
        gens.push(GroupElement::upper(w.clone()));
        gens.push(GroupElement::lower(w));
    }
    for t in ctx.elements() {
        if !t.is_zero() {
            gens.push(GroupElement::torus(t.clone()).expect("unit"));
        }
        gens.push(GroupElement::central(t));
    }
    homomorphism_check_pairs(&gens)
}

/// Homomorphism check on random pairs.
pub fn homomorphism_check_sampled<G: rand_core::RngCore + ?Sized>(
    ctx: &FqCtx,
    rng: &mut G,
    samples: u64,
) -> Result<u64, HomFailure> {
    let pairs: Vec<(GroupElement<FqElement>, GroupElement<FqElement>)> = (0..samples)
        .map(|_| {
            (
                crate::group::random_element(ctx, rng),
                crate::group::random_element(ctx, rng),
            )
        })
        .collect();
    for (g, h) in &pairs {
        if rho_of(g).mul(&rho_of(h)) != rho_of(&g.mul(h)) {
            return Err(HomFailure {
                g: g.clone(),
                h: h.clone(),
            });
        }
    }
    Ok(samples)
}

fn homomorphism_check_pairs(gens: &[GroupElement<FqElement>]) -> Result<u64, HomFailure> {
    let table: Vec<RepMatrix<FqElement>> = gens
        .iter()
        .map(|g| rho_matrix(g).expect("span is stable"))
        .collect();
    let mut pairs = 0u64;
    for (i, g) in gens.iter().enumerate() {
        for (j, h) in gens.iter().enumerate() {
            if table[i].mul(&table[j]) != rho_of(&g.mul(h)) {
                return Err(HomFailure {
                    g: g.clone(),
                    h: h.clone(),
                });
            }
            pairs += 1;
        }
    }
    Ok(pairs)
}

fn rho_of(g: &GroupElement<FqElement>) -> RepMatrix<FqElement> {
    rho_matrix(g).expect("span is stable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{hat_group_elements, Sl2kElement};
    use crate::ring::FieldContext;

    fn f3() -> FqCtx {
        FieldContext::new(3, 1).unwrap()
    }

    fn w(ctx: &FqCtx, a0: i64, a1: i64) -> Witt2<FqElement> {
        Witt2::new(ctx.from_int(a0), ctx.from_int(a1))
    }

    #[test]
    fn basis_shape() {
        let b = RepBasis::new(3);
        assert_eq!(b.dim(), 6);
        assert_eq!(
            b.names(),
            &["A0^3", "A0^2*B0", "A0*B0^2", "B0^3", "A1", "B1"]
        );
        assert_eq!(RepBasis::new(2).dim(), 5);
    }

    #[test]
    fn rho_identity() {
        let ctx = f3();
        let id = GroupElement::identity_of(&ctx.zero());
        assert!(rho_matrix(&id).unwrap().is_identity());
    }

    #[test]
    fn rho_torus_is_diagonal() {
        // over GF(9) with a primitive t the diagonal shows all the weights
        let ctx = FieldContext::new(3, 2).unwrap();
        let t = crate::ring::primitive_element(&ctx);
        let g = GroupElement::torus(t.clone()).unwrap();
        let m = rho_matrix(&g).unwrap();
        assert!(m.mat().is_diagonal());
        let ti = t.inv().unwrap();
        let expect = [
            ti.pow(3),
            ti.clone(),
            t.clone(),
            t.pow(3),
            ti.pow(3),
            t.pow(3),
        ];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(m.at(i, i), e);
        }
    }

    #[test]
    fn rho_central_action() {
        let ctx = f3();
        let s = ctx.from_int(1);
        let m = rho_matrix(&GroupElement::central(s)).unwrap();
        let b = m.basis().clone();
        // monomial columns are fixed
        for j in 0..4 {
            for i in 0..6 {
                let e = m.at(i, j);
                if i == j {
                    assert!(e.is_one());
                } else {
                    assert!(e.is_zero());
                }
            }
        }
        // A1 -> A1 - s*A0^3, B1 -> B1 + s*B0^3
        assert_eq!(m.at(b.a1_index(), b.a1_index()).residue(), 1);
        assert_eq!(m.at(0, b.a1_index()).residue(), 2);
        assert_eq!(m.at(b.b1_index(), b.b1_index()).residue(), 1);
        assert_eq!(m.at(3, b.b1_index()).residue(), 1);
        // nontrivial, of order p
        assert!(!m.is_identity());
        assert!(m.pow(3).is_identity());
    }

    #[test]
    fn central_one_parameter_law() {
        for (p, r) in [(3u64, 1usize), (3, 2), (2, 1)] {
            let ctx = FieldContext::new(p, r).unwrap();
            for s in ctx.elements() {
                for s2 in ctx.elements() {
                    let lhs = rho_of(&GroupElement::central(s.clone()))
                        .mul(&rho_of(&GroupElement::central(s2.clone())));
                    let rhs = rho_of(&GroupElement::central(s.add(&s2)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn homomorphism_on_generators() {
        let ctx = f3();
        homomorphism_check_generators(&ctx).unwrap();
    }

    #[test]
    fn matrix_matches_pointwise_pullback() {
        // independent oracle: the column coordinates, evaluated as
        // functions at every point of the module, must agree with the
        // basis function evaluated at g^-1 times the point
        let ctx = f3();
        let vars = coord_vars();
        let zero = ctx.zero();
        let basis = RepBasis::new(3);
        let monomial = |exps: &[u32]| {
            MultiPoly::from_terms(&vars, &zero, [(exps.to_vec(), ctx.one())])
        };
        let elements = crate::witt::witt2_elements(&ctx);
        let samples = [
            GroupElement::upper(w(&ctx, 1, 0)),
            GroupElement::lower(w(&ctx, 2, 1)),
            GroupElement::torus(ctx.from_int(2)).unwrap(),
            GroupElement::central(ctx.one()),
            GroupElement::upper(w(&ctx, 1, 2))
                .mul(&GroupElement::lower(w(&ctx, 0, 1)))
                .mul(&GroupElement::torus(ctx.from_int(2)).unwrap()),
        ];
        for g in &samples {
            let m = rho_matrix(g).unwrap();
            let h = g.inv();
            for wa in &elements {
                for wb in &elements {
                    // h applied to the point (wa, wb)
                    let qa = h.a.mul(wa).add(&h.b.mul(wb));
                    let qb = h.c.mul(wa).add(&h.d.mul(wb));
                    let point = [wa.a0.clone(), wa.a1.clone(), wb.a0.clone(), wb.a1.clone()];
                    let moved = [qa.a0.clone(), qa.a1.clone(), qb.a0.clone(), qb.a1.clone()];
                    for (col, exps) in basis.exponents().iter().enumerate() {
                        let f = monomial(exps);
                        let direct = f.eval(&moved);
                        let mut via_matrix = ctx.zero();
                        for (row, row_exps) in basis.exponents().iter().enumerate() {
                            let coeff = m.at(row, col);
                            if coeff.is_zero() {
                                continue;
                            }
                            via_matrix =
                                via_matrix.add(&coeff.mul(&monomial(row_exps).eval(&point)));
                        }
                        assert_eq!(via_matrix, direct);
                    }
                }
            }
        }
    }

    #[test]
    fn drho_examples() {
        let ctx = f3();
        let b = RepBasis::new(3);
        // z-direction sends A1 to -A0^3 and kills the monomials
        let dz = drho(LieDirection::Z, &ctx).unwrap();
        assert_eq!(dz.at(0, b.a1_index()).residue(), 2);
        assert!(!dz.mat().is_zero());
        for j in 0..4 {
            assert!(dz.mat().col(j).iter().all(|e| e.is_zero()));
        }
        // e1-direction sends A1 to -B0^3
        let de1 = drho(LieDirection::E1, &ctx).unwrap();
        assert_eq!(de1.at(3, b.a1_index()).residue(), 2);
        // h-direction is diagonal with the basis weights mod p
        let dh = drho(LieDirection::H, &ctx).unwrap();
        assert!(dh.mat().is_diagonal());
        let weights = [-3i64, -1, 1, 3, -3, 3];
        for (i, wt) in weights.iter().enumerate() {
            assert_eq!(dh.at(i, i), &ctx.from_int(*wt));
        }
    }

    #[test]
    fn drho_first_order_additivity() {
        let ctx = f3();
        let dirs = LieDirection::all();
        for (i, d1) in dirs.iter().enumerate() {
            for d2 in dirs.iter().skip(i + 1) {
                let prod = d1.realize(&ctx).mul(&d2.realize(&ctx));
                let m = rho_matrix(&prod).unwrap();
                // first-order part of a product is the sum of the parts
                let eps_part = m.map(|e| e.b.clone());
                let sum = drho(*d1, &ctx)
                    .unwrap()
                    .mat()
                    .add(drho(*d2, &ctx).unwrap().mat());
                assert_eq!(eps_part.mat(), &sum);
            }
        }
    }

    #[test]
    fn drho_kernel_dimensions() {
        let f3 = FieldContext::new(3, 1).unwrap();
        assert_eq!(drho_kernel_dimension(&f3), 0);
        let f2 = FieldContext::new(2, 1).unwrap();
        let (dim, basis) = drho_kernel(&f2).unwrap();
        assert_eq!(dim, 1);
        // kernel is the torus direction: only the h-coordinate is nonzero
        let v = &basis[0];
        for (i, c) in v.iter().enumerate() {
            if i == 2 {
                assert!(!c.is_zero());
            } else {
                assert!(c.is_zero(), "kernel must be the h-direction");
            }
        }
    }

    #[test]
    fn radical_fixes_tangent_directions() {
        // conjugation by X((0,1)) fixes every realization exactly, p > 2
        for p in [3u64, 5] {
            let ctx = FieldContext::new(p, 1).unwrap();
            let u = GroupElement::upper(w(&ctx, 0, 1)).map(|e| DualNumber::constant(e.clone()));
            for dir in LieDirection::all() {
                let g = dir.realize(&ctx);
                assert_eq!(g.conj(&u), g, "{}", dir.label());
            }
        }
    }

    #[test]
    fn hat_rep_examples() {
        let ctx = f3();
        let id = HatGroupElement::identity(&ctx);
        assert!(hat_rep_matrix(&id, &ctx).is_identity());
        // translation part lands in the last column
        let v = Sl2LieElement::new(ctx.one(), ctx.from_int(2), ctx.zero());
        let el = HatGroupElement {
            v: v.clone(),
            a: Sl2kElement::identity(&ctx),
        };
        let m = hat_rep_matrix(&el, &ctx);
        assert_eq!(m.at(0, 3).residue(), 1);
        assert_eq!(m.at(1, 3).residue(), 2);
        assert_eq!(m.at(2, 3).residue(), 0);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.at(i, j).is_one(), i == j);
            }
        }
    }

    #[test]
    fn hat_rep_is_homomorphism_exhaustive() {
        let ctx = f3();
        let elements = hat_group_elements(&ctx);
        assert_eq!(elements.len(), 648);
        let mats: Vec<Mat<FqElement>> = elements
            .iter()
            .map(|e| hat_rep_matrix(e, &ctx))
            .collect();
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                let prod = hat_rep_matrix(&x.mul(y), &ctx);
                assert_eq!(mats[i].mul(&mats[j]), prod);
            }
        }
    }

    #[test]
    fn hat_rep_kernel() {
        let ctx = f3();
        let kernel: Vec<HatGroupElement> = hat_group_elements(&ctx)
            .into_iter()
            .filter(|e| hat_rep_matrix(e, &ctx).is_identity())
            .collect();
        assert_eq!(kernel.len(), 2);
        for e in &kernel {
            assert!(e.v.is_zero());
            let a = &e.a;
            assert!(a.is_identity() || a.neg().is_identity());
        }
    }
}
