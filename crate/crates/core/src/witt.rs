//! Length-2 Witt vectors `W2(R)` over a commutative ring of prime
//! characteristic, with arithmetic given by explicit polynomial laws:
//!
//! ```text
//! (a0,a1) + (b0,b1) = (a0+b0, a1+b1 + F(a0,b0))
//! (a0,a1) * (b0,b1) = (a0*b0, a0^p*b1 + b0^p*a1)
//! F(X,Y) = (X^p + Y^p - (X+Y)^p)/p
//! ```
//!
//! The carry polynomial's coefficients are computed over exact integers and
//! reduced mod `p`, so the same code path works when the components are
//! field elements, dual numbers, or multivariate polynomials.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::ring::{teichmuller_lift, FieldContext, FiniteRing, FqCtx, FqElement, Ring};
use alloc::format;
use alloc::string::String;

/// The carry polynomial `F(X,Y) = sum c_i X^i Y^(p-i)` for `1 <= i <= p-1`,
/// with `c_i = -binom(p,i)/p mod p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittFPoly {
    p: u64,
    /// `coeffs[i-1] = c_i`.
    coeffs: Vec<u64>,
}

impl WittFPoly {
    /// Exact integer computation of the coefficients. Panics if `p` is not
    /// prime (the binomial quotient stops being integral).
    pub fn new(p: u64) -> WittFPoly {
        assert!(crate::ring::is_prime(p), "carry polynomial needs prime p");
        let mut coeffs = Vec::with_capacity(p as usize - 1);
        let mut binom: u128 = 1;
        for i in 1..p {
            // binom(p, i) built incrementally; always an exact integer
            binom = binom * (p - i + 1) as u128 / i as u128;
            assert!(binom % p as u128 == 0, "binom(p,i)/p must be integral");
            let quotient = (binom / p as u128 % p as u128) as u64;
            coeffs.push((p - quotient) % p);
        }
        WittFPoly { p, coeffs }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `c_i` for `1 <= i <= p-1`.
    pub fn coeff(&self, i: u64) -> u64 {
        self.coeffs[i as usize - 1]
    }

    /// Evaluate `F(x, y)` in any ring of characteristic `p`.
    pub fn eval<R: Ring>(&self, x: &R, y: &R) -> R {
        debug_assert_eq!(x.characteristic(), self.p);
        let mut acc = x.zero_like();
        for i in 1..self.p {
            let c = self.coeffs[i as usize - 1];
            if c == 0 {
                continue;
            }
            let term = x.from_int(c as i64).mul(&x.pow(i)).mul(&y.pow(self.p - i));
            acc = acc.add(&term);
        }
        acc
    }
}

/// Shorthand constructor matching the operation name used throughout.
pub fn f_poly(p: u64) -> WittFPoly {
    WittFPoly::new(p)
}

/// A length-2 Witt vector with components in `R`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witt2<R: Ring> {
    pub a0: R,
    pub a1: R,
}

/// Error from Witt-vector operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WittError {
    /// Inversion of a vector whose first component is not a unit.
    NotUnit,
}

impl fmt::Display for WittError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WittError::NotUnit => write!(f, "Witt vector is not a unit"),
        }
    }
}

impl<R: Ring> Witt2<R> {
    pub fn new(a0: R, a1: R) -> Self {
        Witt2 { a0, a1 }
    }

    pub fn zero_of(sample: &R) -> Self {
        Witt2 {
            a0: sample.zero_like(),
            a1: sample.zero_like(),
        }
    }

    pub fn one_of(sample: &R) -> Self {
        Witt2 {
            a0: sample.one_like(),
            a1: sample.zero_like(),
        }
    }

    /// The multiplicative lift `t -> (t, 0)`.
    pub fn teichmuller(t: R) -> Self {
        let a1 = t.zero_like();
        Witt2 { a0: t, a1 }
    }

    pub fn p(&self) -> u64 {
        self.a0.characteristic()
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a0.is_one() && self.a1.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let f = WittFPoly::new(self.p());
        Witt2 {
            a0: self.a0.add(&rhs.a0),
            a1: self.a1.add(&rhs.a1).add(&f.eval(&self.a0, &rhs.a0)),
        }
    }

    /// Closed-form negation solved from the addition law; valid in every
    /// characteristic including 2.
    pub fn neg(&self) -> Self {
        let f = WittFPoly::new(self.p());
        let n0 = self.a0.neg();
        let n1 = self.a1.neg().sub(&f.eval(&self.a0, &n0));
        Witt2 { a0: n0, a1: n1 }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.p();
        Witt2 {
            a0: self.a0.mul(&rhs.a0),
            a1: self.a0.pow(p).mul(&rhs.a1).add(&rhs.a0.pow(p).mul(&self.a1)),
        }
    }

    /// `(a0, a1)^-1 = (a0^-1, -a1 * a0^-2p)`; requires `a0` to be a unit.
    pub fn inv(&self) -> Result<Self, WittError> {
        let p = self.p();
        let i0 = self.a0.inv().ok_or(WittError::NotUnit)?;
        let i1 = self.a1.neg().mul(&i0.pow(2 * p));
        Ok(Witt2 { a0: i0, a1: i1 })
    }

    pub fn is_unit(&self) -> bool {
        self.a0.inv().is_some()
    }

    pub fn map<S: Ring>(&self, mut f: impl FnMut(&R) -> S) -> Witt2<S> {
        Witt2 {
            a0: f(&self.a0),
            a1: f(&self.a1),
        }
    }
}

impl<R: Ring> fmt::Display for Witt2<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a0, self.a1)
    }
}

/// Additive order of an element of `W2(F_q)`: `p^2` when `a0 != 0`, `p` when
/// only `a1 != 0`, else 1.
pub fn witt_additive_order(w: &Witt2<FqElement>) -> u64 {
    let p = w.p();
    if !w.a0.is_zero() {
        p * p
    } else if !w.a1.is_zero() {
        p
    } else {
        1
    }
}

/// The digit map `(a0, a1) -> w(a0) + p*w(a1)` from `W2(F_p)` to `Z/p^2`
/// (`w` the Teichmuller lift), with its image value.
pub fn witt2_zmod_digit_map(p: u64, a0: u64, a1: u64) -> u64 {
    let m = p * p;
    (teichmuller_lift(p, a0).value() + p * teichmuller_lift(p, a1).value()) % m
}

/// First failing pair of the cross-model check, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittZmodIsoFailure {
    pub op: char,
    pub lhs: (u64, u64),
    pub rhs: (u64, u64),
}

impl fmt::Display for WittZmodIsoFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "digit map is not a homomorphism for `{}` at {:?}, {:?}",
            self.op, self.lhs, self.rhs
        )
    }
}

/// Exhaustively verifies that the digit map is a ring isomorphism
/// `W2(F_p) -> Z/p^2`: bijective, additive and multiplicative over all
/// `p^4` argument pairs. Returns the full value table on success.
pub fn witt2_zmod_iso_check(
    p: u64,
) -> Result<Vec<((u64, u64), u64)>, WittZmodIsoFailure> {
    assert!(p <= 13, "exhaustive check is meant for small p");
    let ctx = FieldContext::new(p, 1).expect("prime p");
    let elems: Vec<Witt2<FqElement>> = witt2_elements(&ctx);
    let m = p * p;

    let image = |w: &Witt2<FqElement>| witt2_zmod_digit_map(p, w.a0.residue(), w.a1.residue());

    let mut seen = BTreeSet::new();
    let mut table = Vec::with_capacity(elems.len());
    for w in &elems {
        let v = image(w);
        seen.insert(v);
        table.push(((w.a0.residue(), w.a1.residue()), v));
    }
    assert_eq!(seen.len() as u64, m, "digit map must be bijective");

    for a in &elems {
        for b in &elems {
            let sum = image(&a.add(b));
            if sum != (image(a) + image(b)) % m {
                return Err(WittZmodIsoFailure {
                    op: '+',
                    lhs: (a.a0.residue(), a.a1.residue()),
                    rhs: (b.a0.residue(), b.a1.residue()),
                });
            }
            let prod = image(&a.mul(b));
            if prod != image(a) * image(b) % m {
                return Err(WittZmodIsoFailure {
                    op: '*',
                    lhs: (a.a0.residue(), a.a1.residue()),
                    rhs: (b.a0.residue(), b.a1.residue()),
                });
            }
        }
    }
    Ok(table)
}

/// All `q^2` elements of `W2(F_q)` in enumeration order.
pub fn witt2_elements(ctx: &FqCtx) -> Vec<Witt2<FqElement>> {
    let field = ctx.elements();
    let mut out = Vec::with_capacity(field.len() * field.len());
    for a1 in &field {
        for a0 in &field {
            out.push(Witt2::new(a0.clone(), a1.clone()));
        }
    }
    out
}

/// `W2(F_q)` as an enumerable finite ring.
#[derive(Debug, Clone)]
pub struct Witt2Ring(pub FqCtx);

impl FiniteRing for Witt2Ring {
    type Elem = Witt2<FqElement>;

    fn name(&self) -> String {
        format!("W2(GF({}))", self.0.q())
    }

    fn size(&self) -> u64 {
        self.0.q() * self.0.q()
    }

    fn elements(&self) -> Vec<Self::Elem> {
        witt2_elements(&self.0)
    }

    fn zero(&self) -> Self::Elem {
        Witt2::zero_of(&self.0.zero())
    }

    fn one(&self) -> Self::Elem {
        Witt2::one_of(&self.0.zero())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(b)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg()
    }

    fn elem_label(&self, a: &Self::Elem) -> String {
        format!("{a}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ZmodM;

    fn w(ctx: &FqCtx, a0: i64, a1: i64) -> Witt2<FqElement> {
        Witt2::new(ctx.from_int(a0), ctx.from_int(a1))
    }

    /// Digits of `z` under the inverse of the Teichmuller digit map.
    fn zmod_digits(z: &ZmodM) -> (u64, u64) {
        let p = z.p();
        let a0 = z.value() % p;
        let w0 = teichmuller_lift(p, a0).value();
        let rest = (z.value() + p * p - w0) % (p * p);
        assert_eq!(rest % p, 0);
        (a0, rest / p % p)
    }

    #[test]
    fn f_poly_small_primes() {
        let f2 = f_poly(2);
        assert_eq!(f2.coeff(1), 1); // F = XY
        let f3 = f_poly(3);
        assert_eq!((f3.coeff(1), f3.coeff(2)), (2, 2)); // F = -X^2Y - XY^2
        let f5 = f_poly(5);
        assert_eq!(
            (f5.coeff(1), f5.coeff(2), f5.coeff(3), f5.coeff(4)),
            (4, 3, 3, 4)
        );
    }

    #[test]
    fn add_examples() {
        let f3 = FieldContext::new(3, 1).unwrap();
        // zero is neutral
        let x = w(&f3, 2, 1);
        assert_eq!(w(&f3, 0, 0).add(&x), x);
        // oracle through Z/9: 1 + 1 = 2 has digits (2, 1)
        assert_eq!(w(&f3, 1, 0).add(&w(&f3, 1, 0)), w(&f3, 2, 1));
        // w(1) + w(2) = 1 + 8 = 0 in Z/9
        assert_eq!(w(&f3, 1, 0).add(&w(&f3, 2, 0)), w(&f3, 0, 0));
    }

    #[test]
    fn mul_examples() {
        let f3 = FieldContext::new(3, 1).unwrap();
        let x = w(&f3, 2, 1);
        assert_eq!(w(&f3, 1, 0).mul(&x), x);
        // (1,1) -> 4 in Z/9; 4*4 = 7 with digits (1,2)
        assert_eq!(w(&f3, 1, 1).mul(&w(&f3, 1, 1)), w(&f3, 1, 2));
        // Teichmuller scaling: (2,0)*(1,1) = (2, 2^3 * 1) = (2, 2)
        assert_eq!(w(&f3, 2, 0).mul(&w(&f3, 1, 1)), w(&f3, 2, 2));
    }

    #[test]
    fn neg_and_inv() {
        let f2 = FieldContext::new(2, 1).unwrap();
        assert_eq!(w(&f2, 0, 0).neg(), w(&f2, 0, 0));
        assert_eq!(w(&f2, 1, 0).neg(), w(&f2, 1, 1));
        assert!(w(&f2, 1, 0).add(&w(&f2, 1, 0).neg()).is_zero());

        let f3 = FieldContext::new(3, 1).unwrap();
        // (2,1) -> 11 = 2 in Z/9; 2^-1 = 5 with digits (2,2)
        assert_eq!(w(&f3, 2, 1).inv().unwrap(), w(&f3, 2, 2));
        assert!(w(&f3, 2, 1).mul(&w(&f3, 2, 1).inv().unwrap()).is_one());
        assert_eq!(w(&f3, 0, 1).inv(), Err(WittError::NotUnit));
    }

    #[test]
    fn additive_orders() {
        let f3 = FieldContext::new(3, 1).unwrap();
        assert_eq!(witt_additive_order(&w(&f3, 0, 0)), 1);
        assert_eq!(witt_additive_order(&w(&f3, 0, 1)), 3);
        assert_eq!(witt_additive_order(&w(&f3, 1, 0)), 9);
        // verify by repeated addition
        for el in witt2_elements(&f3) {
            let ord = witt_additive_order(&el);
            let mut acc = Witt2::zero_of(&f3.zero());
            for k in 1..=ord {
                acc = acc.add(&el);
                if k < ord {
                    assert!(!acc.is_zero());
                }
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn ring_axioms_exhaustive() {
        for (p, r) in [(2u64, 1usize), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let ctx = FieldContext::new(p, r).unwrap();
            let elems = witt2_elements(&ctx);
            let one = Witt2::one_of(&ctx.zero());
            let mut units = 0u64;
            for a in &elems {
                assert!(a.add(&a.neg()).is_zero());
                assert_eq!(a.mul(&one), *a);
                if a.is_unit() {
                    units += 1;
                    assert!(a.mul(&a.inv().unwrap()).is_one());
                } else {
                    assert!(a.a0.is_zero());
                }
                for b in &elems {
                    assert_eq!(a.add(b), b.add(a));
                    assert_eq!(a.mul(b), b.mul(a));
                    for c in &elems {
                        assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
                        assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                        assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                    }
                }
            }
            let q = ctx.q();
            assert_eq!(units, q * (q - 1), "unit count in W2(F_q)");
        }
    }

    #[test]
    fn teichmuller_scaling_identity() {
        // (t,0) * (a0,a1) = (t*a0, t^p*a1), exhaustively for q <= 9
        for (p, r) in [(2u64, 1usize), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let ctx = FieldContext::new(p, r).unwrap();
            for t in ctx.elements() {
                for el in witt2_elements(&ctx) {
                    let lhs = Witt2::teichmuller(t.clone()).mul(&el);
                    let rhs = Witt2::new(t.mul(&el.a0), t.pow(p).mul(&el.a1));
                    assert_eq!(lhs, rhs);
                }
                for s in ctx.elements() {
                    let lhs = Witt2::teichmuller(t.clone()).mul(&Witt2::teichmuller(s.clone()));
                    assert_eq!(lhs, Witt2::teichmuller(t.mul(&s)));
                }
            }
        }
    }

    #[test]
    fn zmod_iso_check_small_primes() {
        for p in [2u64, 3, 5] {
            let table = witt2_zmod_iso_check(p).unwrap();
            assert_eq!(table.len() as u64, p * p);
        }
        let table = witt2_zmod_iso_check(3).unwrap();
        let lookup = |a0: u64, a1: u64| {
            table
                .iter()
                .find(|(k, _)| *k == (a0, a1))
                .map(|(_, v)| *v)
                .unwrap()
        };
        assert_eq!(lookup(0, 1), 3);
        assert_eq!(lookup(2, 1), 2); // 8 + 3 = 11 = 2 mod 9
    }

    #[test]
    fn zmod_digit_roundtrip() {
        for p in [3u64, 5, 7] {
            for v in 0..p * p {
                let z = ZmodM::new(p, 2, v);
                let (a0, a1) = zmod_digits(&z);
                assert_eq!(witt2_zmod_digit_map(p, a0, a1), v);
            }
        }
    }
}
