//! Sparse multivariate polynomials over an arbitrary coefficient ring.
//!
//! This is the symbolic engine behind coordinate pullbacks `f . g^-1` and
//! indeterminate-coefficient Witt computations. Only ring arithmetic,
//! substitution, evaluation, and basis extraction are provided; no division
//! theory.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ring::Ring;

/// An ordered list of variable names shared by all polynomials of one
/// context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new(names: &[&str]) -> Arc<VarSet> {
        Arc::new(VarSet {
            names: names.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Errors from polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// Substitution hit a variable with no binding.
    UnboundVariable(String),
    /// Basis extraction found a term outside the spanned monomials.
    NotInSpan(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::UnboundVariable(v) => write!(f, "unbound variable {v}"),
            PolyError::NotInSpan(m) => write!(f, "monomial {m} is not in the basis span"),
        }
    }
}

/// Sparse polynomial: a map from exponent tuples to nonzero coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly<R: Ring> {
    vars: Arc<VarSet>,
    /// A coefficient-ring 1, carried so constants can be made in context.
    one: R,
    terms: BTreeMap<Vec<u32>, R>,
}

impl<R: Ring> MultiPoly<R> {
    pub fn zero(vars: &Arc<VarSet>, sample: &R) -> Self {
        MultiPoly {
            vars: vars.clone(),
            one: sample.one_like(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: &R) -> Self {
        let mut poly = Self::zero(vars, c);
        if !c.is_zero() {
            poly.terms.insert(vec![0; vars.len()], c.clone());
        }
        poly
    }

    /// The polynomial `x_i`.
    pub fn var(vars: &Arc<VarSet>, i: usize, sample: &R) -> Self {
        assert!(i < vars.len());
        let mut poly = Self::zero(vars, sample);
        let mut exps = vec![0u32; vars.len()];
        exps[i] = 1;
        poly.terms.insert(exps, sample.one_like());
        poly
    }

    pub fn from_terms(
        vars: &Arc<VarSet>,
        sample: &R,
        terms: impl IntoIterator<Item = (Vec<u32>, R)>,
    ) -> Self {
        let mut poly = Self::zero(vars, sample);
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent tuple length mismatch");
            poly.add_term(exps, c);
        }
        poly
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn coeff_one(&self) -> &R {
        &self.one
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|k| *k == 0))
    }

    /// The constant coefficient.
    pub fn constant_term(&self) -> R {
        self.coefficient(&vec![0; self.vars.len()])
    }

    pub fn coefficient(&self, exps: &[u32]) -> R {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| self.one.zero_like())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &R)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exps) {
            Some(old) => {
                let sum = old.add(&c);
                if !sum.is_zero() {
                    self.terms.insert(exps, sum);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    fn assert_same_vars(&self, o: &Self) {
        assert_eq!(self.vars, o.vars, "mixed polynomial variable contexts");
    }

    /// Substitute a polynomial for every variable. `bindings[i]` replaces
    /// variable `i`; all bindings must share one variable context (which
    /// becomes the context of the result).
    pub fn substitute(&self, bindings: &[Option<MultiPoly<R>>]) -> Result<MultiPoly<R>, PolyError> {
        assert_eq!(bindings.len(), self.vars.len());
        let target_vars = bindings
            .iter()
            .flatten()
            .map(|b| b.vars.clone())
            .next()
            .unwrap_or_else(|| self.vars.clone());
        let mut acc = MultiPoly::zero(&target_vars, &self.one);
        for (exps, c) in &self.terms {
            let mut term = MultiPoly::constant(&target_vars, c);
            for (i, e) in exps.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let b = bindings[i]
                    .as_ref()
                    .ok_or_else(|| PolyError::UnboundVariable(self.vars.name(i).to_string()))?;
                term = term.mul(&b.pow(*e as u64));
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Full evaluation at a point, one value per variable.
    pub fn eval(&self, point: &[R]) -> R {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = self.one.zero_like();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (i, e) in exps.iter().enumerate() {
                if *e > 0 {
                    term = term.mul(&point[i].pow(*e as u64));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Coordinates of `self` in an ordered monomial basis. Fails with the
    /// offending monomial if any term lies outside the span.
    pub fn express_in_basis(&self, basis: &[Vec<u32>]) -> Result<Vec<R>, PolyError> {
        let index: BTreeMap<&[u32], usize> = basis
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_slice(), i))
            .collect();
        let mut coords = vec![self.one.zero_like(); basis.len()];
        for (exps, c) in &self.terms {
            match index.get(exps.as_slice()) {
                Some(i) => coords[*i] = c.clone(),
                None => return Err(PolyError::NotInSpan(self.monomial_label(exps))),
            }
        }
        Ok(coords)
    }

    /// Rebuild a polynomial from basis coordinates.
    pub fn from_basis_coords(
        vars: &Arc<VarSet>,
        sample: &R,
        basis: &[Vec<u32>],
        coords: &[R],
    ) -> MultiPoly<R> {
        assert_eq!(basis.len(), coords.len());
        MultiPoly::from_terms(
            vars,
            sample,
            basis.iter().cloned().zip(coords.iter().cloned()),
        )
    }

    fn monomial_label(&self, exps: &[u32]) -> String {
        let mut parts = Vec::new();
        for (i, e) in exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars.name(i).to_string()),
                _ => parts.push(format!("{}^{}", self.vars.name(i), e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl<R: Ring> fmt::Display for MultiPoly<R> {
    /// Canonical text form: terms in graded-lex order (total degree first,
    /// then exponent tuples), unit coefficients suppressed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| {
                // higher powers of earlier variables first
                b.cmp(a).reverse()
            })
        });
        for (n, exps) in keys.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let c = &self.terms[*exps];
            let mono = self.monomial_label(exps);
            if mono == "1" {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{c}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<R: Ring> Ring for MultiPoly<R> {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(&self.vars, &self.one)
    }

    fn one_like(&self) -> Self {
        MultiPoly::constant(&self.vars, &self.one)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.assert_same_vars(rhs);
        let mut out = self.clone();
        for (exps, c) in &rhs.terms {
            out.add_term(exps.clone(), c.clone());
        }
        out
    }

    fn neg(&self) -> Self {
        let mut out = self.zero_like();
        for (exps, c) in &self.terms {
            out.terms.insert(exps.clone(), c.neg());
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_vars(rhs);
        let mut out = self.zero_like();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                out.add_term(exps, ca.mul(cb));
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn characteristic(&self) -> u64 {
        self.one.characteristic()
    }

    fn inv(&self) -> Option<Self> {
        // only constants can be units in R[x_1..x_n] over our coefficient rings
        if !self.is_constant() {
            return None;
        }
        let c = self.constant_term().inv()?;
        Some(MultiPoly::constant(&self.vars, &c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FieldContext;
    use crate::ring::FqElement;

    fn setup() -> (Arc<VarSet>, crate::ring::FqCtx) {
        (VarSet::new(&["u0", "u1", "v0", "v1"]), FieldContext::new(3, 1).unwrap())
    }

    fn var(vs: &Arc<VarSet>, ctx: &crate::ring::FqCtx, name: &str) -> MultiPoly<FqElement> {
        MultiPoly::var(vs, vs.index_of(name).unwrap(), &ctx.zero())
    }

    #[test]
    fn mul_and_identities() {
        let (vs, ctx) = setup();
        let u0 = var(&vs, &ctx, "u0");
        let u1 = var(&vs, &ctx, "u1");
        let v0 = var(&vs, &ctx, "v0");
        let one = u0.one_like();
        let f = u0.add(&u1.mul(&v0));
        assert_eq!(f.mul(&one), f);
        // freshman's dream over F_3
        let cube = u0.add(&v0).pow(3);
        assert_eq!(cube, u0.pow(3).add(&v0.pow(3)));
        // difference of squares
        let lhs = u0.add(&u1).mul(&u0.sub(&u1));
        assert_eq!(lhs, u0.pow(2).sub(&u1.pow(2)));
    }

    #[test]
    fn substitution() {
        let (vs, ctx) = setup();
        let u0 = var(&vs, &ctx, "u0");
        // constant binding
        let two = MultiPoly::constant(&vs, &ctx.from_int(2));
        let mut bindings: Vec<Option<MultiPoly<FqElement>>> = vec![None; vs.len()];
        bindings[0] = Some(two.clone());
        assert_eq!(u0.substitute(&bindings).unwrap(), two);
        // u0^3 with u0 -> u0 - s*v0 (s = 2) over F_3: cube is additive
        let v0 = var(&vs, &ctx, "v0");
        let sub = u0.sub(&v0.mul(&two));
        bindings[0] = Some(sub);
        let image = u0.pow(3).substitute(&bindings).unwrap();
        let s_cubed = MultiPoly::constant(&vs, &ctx.from_int(2).pow(3));
        assert_eq!(image, u0.pow(3).sub(&v0.pow(3).mul(&s_cubed)));
        // unbound variable reported by name
        let u1 = var(&vs, &ctx, "u1");
        let err = u1.substitute(&bindings).unwrap_err();
        assert_eq!(err, PolyError::UnboundVariable("u1".into()));
    }

    #[test]
    fn basis_extraction() {
        let ab = VarSet::new(&["A0", "A1", "B0", "B1"]);
        let ctx = FieldContext::new(3, 1).unwrap();
        let zero = ctx.zero();
        let a0 = MultiPoly::var(&ab, 0, &zero);
        let a1 = MultiPoly::var(&ab, 1, &zero);
        let b0 = MultiPoly::var(&ab, 2, &zero);
        let b1 = MultiPoly::var(&ab, 3, &zero);
        // basis [A0^3, A0^2 B0, A0 B0^2, B0^3, A1, B1]
        let basis: Vec<Vec<u32>> = vec![
            vec![3, 0, 0, 0],
            vec![2, 0, 1, 0],
            vec![1, 0, 2, 0],
            vec![0, 0, 3, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 0, 1],
        ];
        let f = a1.add(&a0.pow(3).mul(&MultiPoly::constant(&ab, &ctx.from_int(2))));
        let coords = f.express_in_basis(&basis).unwrap();
        let vals: Vec<u64> = coords.iter().map(|c| c.residue()).collect();
        assert_eq!(vals, [2, 0, 0, 0, 1, 0]);
        // round trip
        let back = MultiPoly::from_basis_coords(&ab, &zero, &basis, &coords);
        assert_eq!(back, f);
        // weight-0 monomial rejected
        let bad = a0.pow(2).mul(&b0.pow(2));
        assert_eq!(
            bad.express_in_basis(&basis).unwrap_err(),
            PolyError::NotInSpan("A0^2*B0^2".into())
        );
        let _ = b1;
    }

    #[test]
    fn display_graded_lex() {
        let (vs, ctx) = setup();
        let u0 = var(&vs, &ctx, "u0");
        let u1 = var(&vs, &ctx, "u1");
        let v0 = var(&vs, &ctx, "v0");
        let two = MultiPoly::constant(&vs, &ctx.from_int(2));
        let f = two.mul(&u0.pow(2)).mul(&v0).add(&u1);
        assert_eq!(format!("{f}"), "2*u0^2*v0 + u1");
    }
}
