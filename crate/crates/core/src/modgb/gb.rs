//! Buchberger's algorithm for submodules of free modules over a polynomial
//! ring, with full-tail normal forms and reduced bases.

use std::cell::Cell;
use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use crate::modgb::order::ModOrder;
use crate::modgb::vect::ModVec;
use crate::polyring::Monomial;

thread_local! {
    static SPAIRS: Cell<u64> = const { Cell::new(0) };
    static REDUCTION_STEPS: Cell<u64> = const { Cell::new(0) };
}

/// Cumulative per-thread work counters; snapshot before and after a task and
/// diff with [`GbStats::since`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    /// S-pairs taken off the queue (before criteria pruning).
    pub spairs: u64,
    /// Top-reduction steps inside normal form computations.
    pub reduction_steps: u64,
}

impl GbStats {
    pub fn since(&self, earlier: &GbStats) -> GbStats {
        GbStats {
            spairs: self.spairs - earlier.spairs,
            reduction_steps: self.reduction_steps - earlier.reduction_steps,
        }
    }
}

pub fn gb_stats() -> GbStats {
    GbStats {
        spairs: SPAIRS.with(Cell::get),
        reduction_steps: REDUCTION_STEPS.with(Cell::get),
    }
}

/// Fully reduces `v` modulo `gb`: every term of the result lies outside the
/// leading-term module. With `gb` a Groebner basis this is the unique normal
/// form.
pub fn normal_form(v: &ModVec, gb: &[ModVec], order: &ModOrder) -> ModVec {
    let ring = v.ring();
    let rank = v.rank();
    let leads: Vec<(Monomial, usize)> = gb
        .iter()
        .map(|g| {
            let (m, p, _) = g.lead(order).expect("zero element in basis");
            (m, p)
        })
        .collect();
    let mut h = v.clone();
    let mut rem = ModVec::zero(ring, rank);
    'outer: while let Some((m, pos, c)) = h.lead(order) {
        for (g, (gm, gp)) in gb.iter().zip(&leads) {
            if *gp == pos && gm.divides(&m) {
                let (_, _, gc) = g.lead(order).expect("nonzero");
                let q = c.div(&gc).expect("field division");
                h = h.sub(&g.mul_term(&q, &gm.div_into(&m)));
                REDUCTION_STEPS.with(|r| r.set(r.get() + 1));
                continue 'outer;
            }
        }
        let t = ModVec::unit(ring, rank, pos, crate::polyring::Polynomial::term(ring, c.clone(), m.clone()));
        rem = rem.add(&t);
        h = h.sub(&t);
    }
    rem
}

/// Mutually reduces a generating list; drops zeros. Does not complete to a
/// Groebner basis.
pub fn interreduce(gens: &[ModVec], order: &ModOrder) -> Vec<ModVec> {
    let mut basis: Vec<ModVec> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < basis.len() {
            let g = basis.remove(i);
            let r = normal_form(&g, &basis, order);
            if r.is_zero() {
                changed = true;
                continue;
            }
            if r != g {
                changed = true;
            }
            basis.insert(i, r);
            i += 1;
        }
        if !changed {
            return basis;
        }
    }
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct PairKey {
    degree: u64,
    lcm: Vec<u16>,
    pos: usize,
    i: usize,
    j: usize,
}

/// Computes the reduced Groebner basis of the submodule generated by `gens`
/// in R^rank under `order`.
///
/// Normal selection strategy; Buchberger's chain criterion throughout, the
/// coprimality criterion only in rank one (it is unsound for modules of
/// higher rank). The result is monic and sorted by ascending leading term,
/// hence canonical for the submodule and order.
pub fn buchberger(gens: &[ModVec], rank: usize, order: &ModOrder) -> Vec<ModVec> {
    let mut basis: Vec<ModVec> = interreduce(gens, order)
        .into_iter()
        .map(|g| {
            let (_, _, c) = g.lead(order).expect("nonzero");
            g.make_monic(&c)
        })
        .collect();
    if basis.is_empty() {
        return basis;
    }

    let mut leads: Vec<(Monomial, usize)> = basis
        .iter()
        .map(|g| {
            let (m, p, _) = g.lead(order).expect("nonzero");
            (m, p)
        })
        .collect();

    let mut heap: BinaryHeap<Reverse<PairKey>> = BinaryHeap::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let push_pairs = |from: usize,
                          leads: &[(Monomial, usize)],
                          heap: &mut BinaryHeap<Reverse<PairKey>>,
                          pending: &mut BTreeSet<(usize, usize)>| {
        let (lm, lp) = &leads[from];
        for (i, (m, p)) in leads[..from].iter().enumerate() {
            if p == lp {
                let lcm = lm.lcm(m);
                heap.push(Reverse(PairKey {
                    degree: lcm.total_degree(),
                    lcm: lcm.exps,
                    pos: *p,
                    i,
                    j: from,
                }));
                pending.insert((i, from));
            }
        }
    };
    for t in 0..basis.len() {
        push_pairs(t, &leads, &mut heap, &mut pending);
    }

    while let Some(Reverse(key)) = heap.pop() {
        SPAIRS.with(|s| s.set(s.get() + 1));
        let (i, j) = (key.i, key.j);
        pending.remove(&(i, j));
        let lcm = Monomial { exps: key.lcm };

        if rank == 1 && leads[i].0.gcd_is_one(&leads[j].0) {
            continue;
        }
        // Chain criterion: some treated third element divides the lcm.
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leads[k].1 == key.pos
                && leads[k].0.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }

        let si = basis[i].mul_term(&basis[i].ring().field.one(), &leads[i].0.div_into(&lcm));
        let sj = basis[j].mul_term(&basis[j].ring().field.one(), &leads[j].0.div_into(&lcm));
        let s = si.sub(&sj);
        let r = normal_form(&s, &basis, order);
        if r.is_zero() {
            continue;
        }
        let (_, _, c) = r.lead(order).expect("nonzero");
        basis.push(r.make_monic(&c));
        let (m, p, _) = basis.last().unwrap().lead(order).expect("nonzero");
        leads.push((m, p));
        push_pairs(basis.len() - 1, &leads, &mut heap, &mut pending);
    }

    reduce_basis(basis, order)
}

/// Minimalizes and tail-reduces a Groebner basis; sorts by ascending lead.
fn reduce_basis(basis: Vec<ModVec>, order: &ModOrder) -> Vec<ModVec> {
    let mut with_leads: Vec<(ModVec, (Monomial, usize))> = basis
        .into_iter()
        .map(|g| {
            let (m, p, _) = g.lead(order).expect("nonzero");
            (g, (m, p))
        })
        .collect();
    with_leads.sort_by(|a, b| order.cmp((&a.1 .0, a.1 .1), (&b.1 .0, b.1 .1)));

    let mut minimal: Vec<(ModVec, (Monomial, usize))> = Vec::new();
    for (g, (m, p)) in with_leads {
        if !minimal.iter().any(|(_, (km, kp))| *kp == p && km.divides(&m)) {
            minimal.push((g, (m, p)));
        }
    }

    let mut reduced: Vec<ModVec> = minimal.iter().map(|(g, _)| g.clone()).collect();
    loop {
        let mut changed = false;
        for i in 0..reduced.len() {
            let g = reduced[i].clone();
            let others: Vec<ModVec> = reduced
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, h)| h.clone())
                .collect();
            let r = normal_form(&g, &others, order);
            debug_assert!(!r.is_zero(), "minimal basis element reduced to zero");
            let (_, _, c) = r.lead(order).expect("nonzero");
            let r = r.make_monic(&c);
            if r != g {
                reduced[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    reduced.sort_by(|a, b| {
        let (am, ap, _) = a.lead(order).expect("nonzero");
        let (bm, bp, _) = b.lead(order).expect("nonzero");
        order.cmp((&am, ap), (&bm, bp))
    });
    reduced
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{FieldKind, MonomialOrder, Polynomial, Ring};
    use std::sync::Arc;

    fn ring_xy(field: FieldKind) -> Arc<Ring> {
        Ring::new(field, vec!["x".into(), "y".into()])
    }

    fn top() -> ModOrder {
        ModOrder::Top(MonomialOrder::DegRevLex)
    }

    #[test]
    fn ideal_gb_of_classic_pair() {
        // <x^2 - y, x*y - x> has reduced degrevlex GB {x^2 - y, x*y - x, y^2 - y}.
        let r = ring_xy(FieldKind::Rationals);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let g1 = ModVec::from_coords(vec![x.mul(&x).sub(&y)]);
        let g2 = ModVec::from_coords(vec![x.mul(&y).sub(&x)]);
        let gb = buchberger(&[g1, g2], 1, &top());
        assert_eq!(gb.len(), 3);
        let expect = ModVec::from_coords(vec![y.mul(&y).sub(&y)]);
        assert!(normal_form(&expect, &gb, &top()).is_zero());
        // Membership: x^3 - x = x*(x^2 - y) + (x*y - x) reduces to zero.
        let member = ModVec::from_coords(vec![x.pow(3).sub(&x)]);
        assert!(normal_form(&member, &gb, &top()).is_zero());
        let non_member = ModVec::from_coords(vec![x.clone()]);
        assert!(!normal_form(&non_member, &gb, &top()).is_zero());
    }

    #[test]
    fn module_needs_coprime_pair() {
        // In R^2 the generators x*e1 + e2 and y*e1 + e2 have coprime leads in
        // the same position, yet their S-vector (y - x)*e2 is new: the
        // rank-one coprimality shortcut must not fire here.
        let r = ring_xy(FieldKind::Rationals);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let one = Polynomial::one(&r);
        let f = ModVec::from_coords(vec![x.clone(), one.clone()]);
        let g = ModVec::from_coords(vec![y.clone(), one.clone()]);
        let gb = buchberger(&[f.clone(), g.clone()], 2, &top());
        let s = f.mul_poly(&y).sub(&g.mul_poly(&x));
        assert!(normal_form(&s, &gb, &top()).is_zero());
        assert!(gb.len() >= 3);
    }

    #[test]
    fn reduced_gb_is_idempotent_and_order_canonical() {
        let r = ring_xy(FieldKind::prime(3).unwrap());
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let gens = vec![
            ModVec::from_coords(vec![x.pow(2), y.clone()]),
            ModVec::from_coords(vec![x.mul(&y), Polynomial::zero(&r)]),
            ModVec::from_coords(vec![Polynomial::zero(&r), y.pow(2).add(&x.pow(2))]),
        ];
        let gb1 = buchberger(&gens, 2, &top());
        let gb2 = buchberger(&gb1, 2, &top());
        assert_eq!(gb1, gb2);
        let mut shuffled = gens.clone();
        shuffled.reverse();
        assert_eq!(buchberger(&shuffled, 2, &top()), gb1);
    }

    #[test]
    fn normal_form_is_linear_on_remainders() {
        let r = ring_xy(FieldKind::Rationals);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let gens = vec![ModVec::from_coords(vec![x.pow(2).sub(&y)])];
        let gb = buchberger(&gens, 1, &top());
        let v = ModVec::from_coords(vec![x.pow(4)]);
        // x^4 = (x^2+y)(x^2-y) + y^2.
        let nf = normal_form(&v, &gb, &top());
        assert_eq!(nf, ModVec::from_coords(vec![y.pow(2)]));
    }
}
