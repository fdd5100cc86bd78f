//! Quotient rings A = R/I and finitely generated submodules of free
//! A-modules.
//!
//! A submodule of A^rank is represented by its full preimage in R^rank: the
//! declared generators together with I times every basis vector. All
//! decisions (membership, equality, intersection, preimage) then happen over
//! R, where preimages of intersections are intersections of preimages.

use std::sync::Arc;

use crate::error::Error;
use crate::modgb::gb::{buchberger, normal_form};
use crate::modgb::ops::{intersect_gens, preimage_gens, Lifter};
use crate::modgb::order::ModOrder;
use crate::modgb::vect::ModVec;
use crate::polyring::{FieldKind, MonomialOrder, Polynomial, Ring};

/// A = R/I with a cached reduced Groebner basis of I.
#[derive(Debug)]
pub struct QuotRing {
    pub base: Arc<Ring>,
    pub ideal: Vec<Polynomial>,
    ideal_gb: Vec<Polynomial>,
}

impl PartialEq for QuotRing {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.ideal_gb == other.ideal_gb
    }
}
impl Eq for QuotRing {}

impl QuotRing {
    /// The polynomial ring itself (zero ideal).
    pub fn polynomial(base: &Arc<Ring>) -> Arc<QuotRing> {
        Arc::new(QuotRing { base: Arc::clone(base), ideal: Vec::new(), ideal_gb: Vec::new() })
    }

    pub fn new(base: &Arc<Ring>, ideal: Vec<Polynomial>) -> Result<Arc<QuotRing>, Error> {
        for f in &ideal {
            if f.ring() != base {
                return Err(Error::RingMismatch);
            }
        }
        let gens: Vec<ModVec> = ideal
            .iter()
            .filter(|f| !f.is_zero())
            .map(|f| ModVec::from_coords(vec![f.clone()]))
            .collect();
        let order = ModOrder::Top(MonomialOrder::DegRevLex);
        let ideal_gb = buchberger(&gens, 1, &order)
            .into_iter()
            .map(|v| v.coord(0).clone())
            .collect();
        Ok(Arc::new(QuotRing { base: Arc::clone(base), ideal, ideal_gb }))
    }

    pub fn field(&self) -> &FieldKind {
        &self.base.field
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    pub fn ideal_gb(&self) -> &[Polynomial] {
        &self.ideal_gb
    }

    pub fn is_trivial_ideal(&self) -> bool {
        self.ideal_gb.is_empty()
    }

    /// Canonical representative of `f` in A.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        if self.ideal_gb.is_empty() {
            return f.clone();
        }
        let order = ModOrder::Top(MonomialOrder::DegRevLex);
        let gb: Vec<ModVec> = self
            .ideal_gb
            .iter()
            .map(|g| ModVec::from_coords(vec![g.clone()]))
            .collect();
        normal_form(&ModVec::from_coords(vec![f.clone()]), &gb, &order)
            .coord(0)
            .clone()
    }

    pub fn is_zero_in_quotient(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    /// I times every basis vector of R^rank: the kernel of R^rank -> A^rank.
    pub fn ideal_lift(&self, rank: usize) -> Vec<ModVec> {
        let mut out = Vec::with_capacity(self.ideal_gb.len() * rank);
        for pos in 0..rank {
            for f in &self.ideal_gb {
                out.push(ModVec::unit(&self.base, rank, pos, f.clone()));
            }
        }
        out
    }
}

/// A finitely generated submodule of A^rank, held as its lift to R^rank.
#[derive(Debug)]
pub struct Submodule {
    pub qr: Arc<QuotRing>,
    pub rank: usize,
    /// The declared A-generators (given by R-representatives); the lift by
    /// I*basis is internal.
    pub gens: Vec<ModVec>,
    order: ModOrder,
    gb: Vec<ModVec>,
}

impl Submodule {
    pub fn new(
        qr: &Arc<QuotRing>,
        rank: usize,
        gens: Vec<ModVec>,
        mono: MonomialOrder,
    ) -> Result<Submodule, Error> {
        for g in &gens {
            if g.ring() != &qr.base {
                return Err(Error::RingMismatch);
            }
            if g.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, got: g.rank() });
            }
        }
        let mut lifted = gens.clone();
        lifted.extend(qr.ideal_lift(rank));
        let order = ModOrder::Top(mono);
        let gb = buchberger(&lifted, rank, &order);
        Ok(Submodule { qr: Arc::clone(qr), rank, gens, order, gb })
    }

    pub fn order(&self) -> ModOrder {
        self.order
    }

    /// The reduced Groebner basis of the lifted submodule.
    pub fn gb(&self) -> &[ModVec] {
        &self.gb
    }

    /// Unique normal form of (a representative of) `v` modulo the lift.
    pub fn normal_form(&self, v: &ModVec) -> ModVec {
        normal_form(v, &self.gb, &self.order)
    }

    pub fn is_member(&self, v: &ModVec) -> bool {
        self.normal_form(v).is_zero()
    }

    pub fn contains(&self, other: &Submodule) -> bool {
        other.gens.iter().all(|g| self.is_member(g))
    }

    pub fn is_zero_module(&self) -> bool {
        self.gens.iter().all(|g| self.qr_reduces_to_zero(g))
    }

    fn qr_reduces_to_zero(&self, v: &ModVec) -> bool {
        v.coords().iter().all(|c| self.qr.is_zero_in_quotient(c))
    }

    /// Declared generators that are nonzero in A (drops pure ideal content).
    pub fn gens_mod_ideal(&self) -> Vec<ModVec> {
        self.gens
            .iter()
            .filter(|g| !self.qr_reduces_to_zero(g))
            .cloned()
            .collect()
    }

    /// Sum U + V inside the same ambient module.
    pub fn sum(&self, other: &Submodule) -> Result<Submodule, Error> {
        self.check_compatible(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Submodule::new(&self.qr, self.rank, gens, self.order.mono())
    }

    /// Intersection by tag-variable elimination on the lifts.
    pub fn intersect(&self, other: &Submodule) -> Result<Submodule, Error> {
        self.check_compatible(other)?;
        let gens = intersect_gens(&self.gb, &other.gb, self.rank, self.order.mono());
        Submodule::new(&self.qr, self.rank, gens, self.order.mono())
    }

    /// Intersection through the syzygy formulation, as a cross-check:
    /// members of U that the preimage of V along (c -> sum c_i u_i) hits.
    pub fn intersect_via_syzygies(&self, other: &Submodule) -> Result<Submodule, Error> {
        self.check_compatible(other)?;
        let pre = preimage_gens(&self.gb, &other.gb, self.rank, self.order.mono());
        let gens = pre
            .iter()
            .map(|c| {
                let mut acc = ModVec::zero(&self.qr.base, self.rank);
                for (coef, g) in c.coords().iter().zip(&self.gb) {
                    acc = acc.add(&g.mul_poly(coef));
                }
                acc
            })
            .collect();
        Submodule::new(&self.qr, self.rank, gens, self.order.mono())
    }

    fn check_compatible(&self, other: &Submodule) -> Result<(), Error> {
        if self.qr != other.qr {
            return Err(Error::RingMismatch);
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: other.rank });
        }
        Ok(())
    }
}

/// Preimage of `w` under the A-linear map A^r -> A^rank with columns `phi`.
///
/// Computed over R; the result automatically contains I*R^r, so it is again
/// a lifted submodule.
pub fn preimage(phi: &[ModVec], w: &Submodule) -> Result<Submodule, Error> {
    for col in phi {
        if col.ring() != &w.qr.base {
            return Err(Error::RingMismatch);
        }
        if col.rank() != w.rank {
            return Err(Error::RankMismatch { expected: w.rank, got: col.rank() });
        }
    }
    let gens = preimage_gens(phi, w.gb(), w.rank, w.order().mono());
    Submodule::new(&w.qr, phi.len(), gens, w.order().mono())
}

/// Which side of an equality check failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Outcome of `submodule_equal`, with a certified witness on failure: a
/// declared generator of one side together with its nonzero normal form
/// modulo the other side.
#[derive(Debug)]
pub struct EqualityCheck {
    pub left_in_right: bool,
    pub right_in_left: bool,
    pub witness: Option<(Side, ModVec, ModVec)>,
}

impl EqualityCheck {
    pub fn equal(&self) -> bool {
        self.left_in_right && self.right_in_left
    }
}

/// Decides U = V via mutual membership of declared generators. The witness
/// prefers the side that is not contained in the other; when V strictly
/// exceeds U the witness is the first V-generator outside U, in V's
/// generator order.
pub fn submodule_equal(left: &Submodule, right: &Submodule) -> Result<EqualityCheck, Error> {
    left.check_compatible(right)?;
    let mut left_witness = None;
    for g in &left.gens {
        let nf = right.normal_form(g);
        if !nf.is_zero() {
            left_witness = Some((Side::Left, g.clone(), nf));
            break;
        }
    }
    let mut right_witness = None;
    for g in &right.gens {
        let nf = left.normal_form(g);
        if !nf.is_zero() {
            right_witness = Some((Side::Right, g.clone(), nf));
            break;
        }
    }
    Ok(EqualityCheck {
        left_in_right: left_witness.is_none(),
        right_in_left: right_witness.is_none(),
        witness: right_witness.or(left_witness),
    })
}

/// Coefficients expressing a member of `sub` as a combination of its
/// declared generators (mod I); `None` when `v` is not a member.
pub fn lift_to_cover(sub: &Submodule, v: &ModVec) -> Option<Vec<Polynomial>> {
    let mut list = sub.gens.clone();
    let ideal_part = sub.qr.ideal_lift(sub.rank);
    list.extend(ideal_part.iter().cloned());
    if list.is_empty() {
        return v.is_zero().then(Vec::new);
    }
    let lifter = Lifter::new(&list, sub.rank, sub.order().mono());
    let (rem, coeffs) = lifter.reduce(v);
    if !rem.is_zero() {
        return None;
    }
    Some(coeffs[..sub.gens.len()].to_vec())
}

/// A presentation of the A-module U/W: generators of U, and the relation
/// module { c : sum c_i u_i in W } pulled back to A^r.
#[derive(Debug)]
pub struct Presentation {
    pub generators: Vec<ModVec>,
    /// Generators of the relation submodule of A^generators.len().
    pub relations: Vec<ModVec>,
}

/// Presents U/W for W a submodule of U (not checked beyond membership use);
/// `gens` must generate U over A.
pub fn presentation(gens: &[ModVec], w: &Submodule) -> Result<Presentation, Error> {
    let rel = preimage(gens, w)?;
    Ok(Presentation { generators: gens.to_vec(), relations: rel.gens })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq_xy() -> (Arc<Ring>, Arc<QuotRing>) {
        let r = Ring::new(FieldKind::Rationals, vec!["x".into(), "y".into()]);
        let qr = QuotRing::polynomial(&r);
        (r, qr)
    }

    #[test]
    fn membership_with_certificate_over_plain_ring() {
        let (r, qr) = qq_xy();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let sub = Submodule::new(
            &qr,
            2,
            vec![
                ModVec::from_coords(vec![x.clone(), y.clone()]),
                ModVec::from_coords(vec![Polynomial::zero(&r), x.clone()]),
            ],
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let member = ModVec::from_coords(vec![x.pow(2), x.mul(&y).add(&x.pow(3))]);
        assert!(sub.is_member(&member));
        let coeffs = lift_to_cover(&sub, &member).unwrap();
        let rebuilt = sub.gens[0]
            .mul_poly(&coeffs[0])
            .add(&sub.gens[1].mul_poly(&coeffs[1]));
        assert_eq!(rebuilt, member);
        assert!(!sub.is_member(&ModVec::from_coords(vec![y.clone(), Polynomial::zero(&r)])));
    }

    #[test]
    fn quotient_ring_reduction() {
        let r = Ring::new(FieldKind::prime(2).unwrap(), vec!["s".into(), "t".into(), "z".into()]);
        let s = Polynomial::var(&r, 0);
        let t = Polynomial::var(&r, 1);
        let z = Polynomial::var(&r, 2);
        let qr = QuotRing::new(&r, vec![z.mul(&s.add(&t))]).unwrap();
        // z*s = z*t mod I.
        assert!(qr.is_zero_in_quotient(&z.mul(&s).add(&z.mul(&t))));
        assert!(!qr.is_zero_in_quotient(&z.mul(&s)));
    }

    #[test]
    fn lifted_membership_sees_ideal() {
        let r = Ring::new(FieldKind::prime(2).unwrap(), vec!["s".into(), "t".into(), "z".into()]);
        let s = Polynomial::var(&r, 0);
        let t = Polynomial::var(&r, 1);
        let z = Polynomial::var(&r, 2);
        let qr = QuotRing::new(&r, vec![z.mul(&s.add(&t))]).unwrap();
        let sub = Submodule::new(
            &qr,
            1,
            vec![ModVec::from_coords(vec![s.add(&t)])],
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        // z*s = z*(s+t) + z*t: membership of z*s + z*t holds via the ideal lift
        // even though (s+t) alone does not reach it over R.
        assert!(sub.is_member(&ModVec::from_coords(vec![z.mul(&s).add(&z.mul(&t))])));
    }

    #[test]
    fn equality_and_witness_sides() {
        let (r, qr) = qq_xy();
        let x = Polynomial::var(&r, 0);
        let small = Submodule::new(
            &qr,
            1,
            vec![ModVec::from_coords(vec![x.pow(2)])],
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let big = Submodule::new(
            &qr,
            1,
            vec![ModVec::from_coords(vec![x.clone()])],
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let check = submodule_equal(&small, &big).unwrap();
        assert!(!check.equal());
        assert!(check.left_in_right);
        assert!(!check.right_in_left);
        let (side, gen, nf) = check.witness.unwrap();
        assert_eq!(side, Side::Right);
        assert_eq!(gen, ModVec::from_coords(vec![x.clone()]));
        assert_eq!(nf, ModVec::from_coords(vec![x.clone()]));
    }

    #[test]
    fn intersection_methods_agree() {
        let (r, qr) = qq_xy();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let u = Submodule::new(
            &qr,
            1,
            vec![ModVec::from_coords(vec![x.clone()])],
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let v = Submodule::new(
            &qr,
            1,
            vec![ModVec::from_coords(vec![y.clone()])],
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let a = u.intersect(&v).unwrap();
        let b = u.intersect_via_syzygies(&v).unwrap();
        assert!(submodule_equal(&a, &b).unwrap().equal());
        assert!(a.is_member(&ModVec::from_coords(vec![x.mul(&y)])));
        assert!(!a.is_member(&ModVec::from_coords(vec![x.clone()])));
    }

    #[test]
    fn presentation_of_quotient_by_ideal_multiple() {
        // U = R*e1, W = (x)*e1: presentation of R/(x) has one generator and
        // relation (x).
        let (r, qr) = qq_xy();
        let x = Polynomial::var(&r, 0);
        let one = Polynomial::one(&r);
        let w = Submodule::new(
            &qr,
            1,
            vec![ModVec::from_coords(vec![x.clone()])],
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let pres = presentation(&[ModVec::from_coords(vec![one])], &w).unwrap();
        assert_eq!(pres.generators.len(), 1);
        let order = ModOrder::Top(MonomialOrder::DegRevLex);
        let gb = buchberger(&pres.relations, 1, &order);
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0], ModVec::from_coords(vec![x]));
    }
}
