//! Sparse multivariate polynomials over an exact coefficient field.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::polyring::coef::{Coef, FieldKind};
use crate::polyring::grading::{Grading, MultiDeg};
use crate::polyring::monomial::{Monomial, MonomialOrder};

/// A polynomial ring k[x_1, ..., x_d]. Shared via `Arc`; rings compare by
/// field and variable names.
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    pub field: FieldKind,
    pub vars: Vec<String>,
}

impl Ring {
    pub fn new(field: FieldKind, vars: Vec<String>) -> Arc<Ring> {
        Arc::new(Ring { field, vars })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// The same ring with extra variables appended (used for tag-variable
    /// elimination).
    pub fn extended(&self, extra: &[&str]) -> Arc<Ring> {
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|s| s.to_string()));
        Ring::new(self.field.clone(), vars)
    }
}

fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Terms are kept sorted in descending degrevlex order with nonzero
/// coefficients; this is a storage convention, independent of the order a
/// Groebner run uses.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Coef)>,
}

const STORAGE_ORDER: MonomialOrder = MonomialOrder::DegRevLex;

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Polynomial {
        Polynomial { ring: Arc::clone(ring), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Polynomial {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Coef) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial { ring: Arc::clone(ring), terms: vec![(Monomial::one(ring.nvars()), c)] }
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Polynomial {
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![(Monomial::var(ring.nvars(), i), ring.field.one())],
        }
    }

    pub fn term(ring: &Arc<Ring>, c: Coef, m: Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        debug_assert_eq!(m.exps.len(), ring.nvars());
        Polynomial { ring: Arc::clone(ring), terms: vec![(m, c)] }
    }

    /// Normalizes an arbitrary term list: merges duplicates, drops zeros,
    /// sorts descending.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<(Monomial, Coef)>) -> Polynomial {
        terms.sort_by(|a, b| STORAGE_ORDER.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coef)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { ring: Arc::clone(ring), terms: out }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coef)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match STORAGE_ORDER.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca.add(cb);
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        Polynomial { ring: Arc::clone(&self.ring), terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    /// Multiplication by a single term.
    pub fn mul_term(&self, c: &Coef, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc.mul(c))).collect(),
        }
    }

    pub fn scale(&self, c: &Coef) -> Polynomial {
        self.mul_term(c, &Monomial::one(self.ring.nvars()))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        let mut acc: Vec<(Monomial, Coef)> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.push((ma.mul(mb), ca.mul(cb)));
            }
        }
        Polynomial::from_terms(&self.ring, acc)
    }

    pub fn pow(&self, e: u64) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Leading term under `order`. Errors on the zero polynomial.
    pub fn leading_term(&self, order: MonomialOrder) -> Result<(&Monomial, &Coef), Error> {
        if self.terms.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        if order == STORAGE_ORDER {
            let (m, c) = &self.terms[0];
            return Ok((m, c));
        }
        let (m, c) = self
            .terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .expect("nonempty");
        Ok((m, c))
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    /// Common multidegree of all terms under `grading`.
    pub fn multidegree(&self, grading: &Grading) -> MultiDeg {
        if self.terms.is_empty() {
            return MultiDeg::ZeroPoly;
        }
        let d0 = self.terms[0].0.weighted_degree(&grading.weights);
        for (m, _) in &self.terms[1..] {
            if m.weighted_degree(&grading.weights) != d0 {
                return MultiDeg::Inhomogeneous;
            }
        }
        MultiDeg::Homogeneous(d0)
    }

    /// Applies a ring map determined by images of the variables.
    ///
    /// `images[i]` is the image of variable `i` in the target ring; the
    /// coefficient fields must agree.
    pub fn map_vars(&self, target: &Arc<Ring>, images: &[Polynomial]) -> Result<Polynomial, Error> {
        if images.len() != self.ring.nvars() {
            return Err(Error::RingMapShape {
                expected: self.ring.nvars(),
                got: images.len(),
            });
        }
        if target.field != self.ring.field {
            return Err(Error::FieldMismatch);
        }
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(u64::from(e)));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Reinterprets this polynomial in an extension of its ring obtained by
    /// appending variables (exponents are padded with zeros).
    pub fn pad_vars(&self, target: &Arc<Ring>) -> Polynomial {
        debug_assert!(target.nvars() >= self.ring.nvars());
        debug_assert_eq!(target.vars[..self.ring.nvars()], self.ring.vars[..]);
        Polynomial {
            ring: Arc::clone(target),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.exps.clone();
                    exps.resize(target.nvars(), 0);
                    (Monomial { exps }, c.clone())
                })
                .collect(),
        }
    }

    /// Inverse of `pad_vars` for terms free of the appended variables;
    /// returns `None` if any term involves them.
    pub fn strip_vars(&self, target: &Arc<Ring>) -> Option<Polynomial> {
        let keep = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.exps[keep..].iter().any(|&e| e != 0) {
                return None;
            }
            terms.push((Monomial { exps: m.exps[..keep].to_vec() }, c.clone()));
        }
        Some(Polynomial { ring: Arc::clone(target), terms })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = m
                .exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        self.ring.vars[v].clone()
                    } else {
                        format!("{}^{}", self.ring.vars[v], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", c, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq_xy() -> Arc<Ring> {
        Ring::new(FieldKind::Rationals, vec!["x".into(), "y".into()])
    }

    #[test]
    fn arithmetic_and_display() {
        let r = qq_xy();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let p = x.add(&y).mul(&x.sub(&y));
        let expect = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(p, expect);
        assert_eq!(p.to_string(), "x^2 + -1*y^2");
    }

    #[test]
    fn frobenius_in_char_2() {
        let r = Ring::new(FieldKind::prime(2).unwrap(), vec!["x".into(), "y".into()]);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let sq = x.add(&y).pow(2);
        assert_eq!(sq, x.pow(2).add(&y.pow(2)));
    }

    #[test]
    fn leading_term_depends_on_order() {
        let r = Ring::new(FieldKind::Rationals, vec!["x".into(), "y".into(), "z".into()]);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let z = Polynomial::var(&r, 2);
        let p = x.mul(&z).add(&y.mul(&y));
        // degrevlex: y^2 leads; lex: x*z leads.
        assert_eq!(p.leading_term(MonomialOrder::DegRevLex).unwrap().0, &Monomial { exps: vec![0, 2, 0] });
        assert_eq!(p.leading_term(MonomialOrder::Lex).unwrap().0, &Monomial { exps: vec![1, 0, 1] });
        assert!(Polynomial::zero(&r).leading_term(MonomialOrder::Lex).is_err());
    }

    #[test]
    fn multidegree_reports_homogeneity() {
        let r = qq_xy();
        let g = Grading::total_degree(2);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        assert_eq!(x.add(&y).multidegree(&g), MultiDeg::Homogeneous(vec![1]));
        assert_eq!(x.add(&y.pow(2)).multidegree(&g), MultiDeg::Inhomogeneous);
        assert_eq!(Polynomial::zero(&r).multidegree(&g), MultiDeg::ZeroPoly);
    }

    #[test]
    fn map_vars_substitutes() {
        let r = qq_xy();
        let s = Ring::new(FieldKind::Rationals, vec!["u".into()]);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let u = Polynomial::var(&s, 0);
        let img = x.mul(&y).map_vars(&s, &[u.clone(), u.clone()]).unwrap();
        assert_eq!(img, u.pow(2));
        assert!(x.map_vars(&s, &[u.clone(), u.clone(), u]).is_err());
    }
}
