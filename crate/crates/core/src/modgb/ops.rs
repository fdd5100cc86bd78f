//! Derived Groebner operations: lifts through a generating set, preimages
//! along module maps, syzygies, and submodule intersection. All work over
//! the base polynomial ring; quotient-ring wrappers live alongside
//! `Submodule`.

use crate::modgb::gb::buchberger;
use crate::modgb::order::ModOrder;
use crate::modgb::vect::ModVec;
use crate::polyring::{Monomial, MonomialOrder, Polynomial};

/// Expresses vectors as combinations of a fixed generating list by dividing
/// in the stacked module R^(rank+s): the stacked basis of (g_i, e_i) under a
/// block order whose leading block is the ambient module.
///
/// Every stacked element (h, a) satisfies h = sum a_i g_i, so a remainder
/// with zero ambient part reads off a lift.
pub struct Lifter {
    split: usize,
    order: ModOrder,
    gb: Vec<ModVec>,
}

impl Lifter {
    pub fn new(gens: &[ModVec], rank: usize, mono: MonomialOrder) -> Lifter {
        assert!(!gens.is_empty(), "lift through an empty generating set");
        let ring = gens[0].ring();
        let stacked_rank = rank + gens.len();
        let stacked: Vec<ModVec> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut v = g.pad_rank(stacked_rank);
                v = v.add(&ModVec::unit(ring, stacked_rank, rank + i, Polynomial::one(ring)));
                v
            })
            .collect();
        let order = ModOrder::BlockPot { split: rank, mono };
        Lifter { split: rank, order, gb: buchberger(&stacked, stacked_rank, &order) }
    }

    /// Returns (remainder, coefficients) with `v = remainder + sum c_i g_i`.
    /// The remainder is the normal form of `v` modulo the generated
    /// submodule; membership is `remainder == 0`.
    pub fn reduce(&self, v: &ModVec) -> (ModVec, Vec<Polynomial>) {
        let ring = v.ring();
        debug_assert_eq!(v.rank(), self.split);
        let stacked_rank = self.split + self.gb_tail_rank();
        let mut h = v.pad_rank(stacked_rank);
        let mut rem = ModVec::zero(ring, self.split);
        let leads: Vec<(Monomial, usize, crate::polyring::Coef)> = self
            .gb
            .iter()
            .map(|g| g.lead(&self.order).expect("zero element in basis"))
            .collect();
        'outer: loop {
            let Some((m, pos, c)) = h.lead(&self.order) else { break };
            if pos >= self.split {
                break;
            }
            for (g, (gm, gp, gc)) in self.gb.iter().zip(&leads) {
                if *gp == pos && gm.divides(&m) {
                    let q = c.div(gc).expect("field division");
                    h = h.sub(&g.mul_term(&q, &gm.div_into(&m)));
                    continue 'outer;
                }
            }
            let t = ModVec::unit(ring, stacked_rank, pos, Polynomial::term(ring, c.clone(), m.clone()));
            h = h.sub(&t);
            rem = rem.add(&t.take_prefix(self.split));
        }
        let coeffs = h.take_suffix(self.split).neg();
        (rem, coeffs.coords().to_vec())
    }

    fn gb_tail_rank(&self) -> usize {
        self.gb
            .first()
            .map(|g| g.rank() - self.split)
            .unwrap_or(0)
    }

    /// Stacked basis elements with zero ambient part: their tails generate
    /// the syzygy module of the generating list.
    pub fn syzygies(&self) -> Vec<ModVec> {
        self.gb
            .iter()
            .filter(|g| g.take_prefix(self.split).is_zero())
            .map(|g| g.take_suffix(self.split))
            .collect()
    }
}

/// Generators of { c in R^r : sum c_j phi_j in W }, where `phi` lists the
/// images of the source basis and `w_gens` generates W in the same ambient
/// module.
///
/// Stacks (phi_j, e_j) with tagged tails and (w_i, 0) untagged; basis
/// elements with zero ambient part have tails exactly in the preimage.
pub fn preimage_gens(phi: &[ModVec], w_gens: &[ModVec], rank: usize, mono: MonomialOrder) -> Vec<ModVec> {
    assert!(!phi.is_empty(), "preimage along an empty map");
    let ring = phi[0].ring();
    let r = phi.len();
    let stacked_rank = rank + r;
    let mut stacked: Vec<ModVec> = Vec::with_capacity(r + w_gens.len());
    for (j, col) in phi.iter().enumerate() {
        let mut v = col.pad_rank(stacked_rank);
        v = v.add(&ModVec::unit(ring, stacked_rank, rank + j, Polynomial::one(ring)));
        stacked.push(v);
    }
    for w in w_gens {
        stacked.push(w.pad_rank(stacked_rank));
    }
    let order = ModOrder::BlockPot { split: rank, mono };
    let gb = buchberger(&stacked, stacked_rank, &order);
    gb.iter()
        .filter(|g| g.take_prefix(rank).is_zero())
        .map(|g| g.take_suffix(rank))
        .collect()
}

/// Generators of the syzygy module of `gens` in R^gens.len().
pub fn syzygy_gens(gens: &[ModVec], rank: usize, mono: MonomialOrder) -> Vec<ModVec> {
    Lifter::new(gens, rank, mono).syzygies()
}

/// Intersection of two generated submodules of R^rank by tag-variable
/// elimination: t*U + (1-t)*V meets R^rank in U intersect V.
pub fn intersect_gens(
    u_gens: &[ModVec],
    v_gens: &[ModVec],
    rank: usize,
    mono: MonomialOrder,
) -> Vec<ModVec> {
    if u_gens.is_empty() || v_gens.is_empty() {
        return Vec::new();
    }
    let ring = u_gens[0].ring();
    let ext = ring.extended(&["tag#"]);
    let t = Polynomial::var(&ext, ext.nvars() - 1);
    let one_minus_t = Polynomial::one(&ext).sub(&t);
    let mut gens: Vec<ModVec> = Vec::with_capacity(u_gens.len() + v_gens.len());
    for u in u_gens {
        gens.push(u.pad_vars(&ext).mul_poly(&t));
    }
    for v in v_gens {
        gens.push(v.pad_vars(&ext).mul_poly(&one_minus_t));
    }
    let order = ModOrder::Elim { tags: 1, mono };
    let gb = buchberger(&gens, rank, &order);
    gb.iter().filter_map(|g| g.strip_vars(ring)).collect()
}
