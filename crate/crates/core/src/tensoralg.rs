//! The tensor side: the symmetric group acting on T^n(F) for F free of rank
//! m, orbit-sum bases of the invariants, shuffle products, and expansion of
//! divided powers into orbit coordinates.
//!
//! Basis tensors e_{i_1} (x) ... (x) e_{i_n} are linearized row-major:
//! (i_1, ..., i_n) with 0-based entries maps to sum of i_k * m^(n-1-k).

use std::sync::Arc;

use crate::error::Error;
use crate::modgb::ModVec;
use crate::polyring::{Polynomial, Ring};

/// m^n as u128, for guardrail checks before allocating.
pub fn tensor_rank(m: usize, n: u32) -> u128 {
    (m as u128).pow(n)
}

/// Refuses tensor spaces larger than `limit`.
pub fn guardrail(m: usize, n: u32, limit: u128) -> Result<usize, Error> {
    let needed = tensor_rank(m, n);
    if needed > limit {
        return Err(Error::GuardrailExceeded { needed, limit });
    }
    Ok(needed as usize)
}

pub fn tuple_to_index(tuple: &[usize], m: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * m + i)
}

pub fn index_to_tuple(mut idx: usize, m: usize, n: u32) -> Vec<usize> {
    let mut t = vec![0; n as usize];
    for k in (0..n as usize).rev() {
        t[k] = idx % m;
        idx /= m;
    }
    t
}

/// The adjacent transposition (j, j+1) in one-line notation, 0-based.
pub fn adjacent_transposition(n: u32, j: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n as usize).collect();
    p.swap(j, j + 1);
    p
}

/// Applies a permutation (one-line notation: `perm[k]` is the image of slot
/// k) to an element of T^n(F): the slot k factor moves to slot perm[k].
pub fn sigma_action(perm: &[usize], v: &ModVec, m: usize, n: u32) -> ModVec {
    debug_assert_eq!(perm.len(), n as usize);
    debug_assert_eq!(v.rank(), tensor_rank(m, n) as usize);
    let ring = v.ring();
    let mut coords = vec![Polynomial::zero(ring); v.rank()];
    for (idx, p) in v.coords().iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let t = index_to_tuple(idx, m, n);
        let mut u = vec![0; n as usize];
        for (k, &tk) in t.iter().enumerate() {
            u[perm[k]] = tk;
        }
        let target = tuple_to_index(&u, m);
        coords[target] = coords[target].add(p);
    }
    ModVec::from_coords(coords)
}

/// A multi-index nu with |nu| = n over m letters, recording multiplicities
/// of each basis vector in an orbit of basis tensors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// All multi-indices of weight n over m letters, first coordinate
/// decreasing: (n, 0, ..), (n-1, 1, 0, ..), ...
pub fn multi_indices(m: usize, n: u32) -> Vec<MultiIndex> {
    fn rec(m: usize, n: u32, out: &mut Vec<Vec<u32>>, prefix: &mut Vec<u32>) {
        if m == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=n).rev() {
            prefix.push(first);
            rec(m - 1, n - first, out, prefix);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, n, &mut out, &mut Vec::new());
    out.into_iter().map(MultiIndex).collect()
}

/// All distinct n-tuples whose content is `nu`, in lexicographic order.
pub fn multiset_tuples(nu: &MultiIndex) -> Vec<Vec<usize>> {
    let n = nu.weight() as usize;
    let mut counts = nu.0.clone();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(counts: &mut [u32], n: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                current.push(i);
                rec(counts, n, current, out);
                current.pop();
                counts[i] += 1;
            }
        }
    }
    rec(&mut counts, n, &mut current, &mut out);
    out
}

/// An element of the orbit-sum span inside T^n(F), in coordinates indexed by
/// `multi_indices(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTensor {
    pub m: usize,
    pub n: u32,
    pub ring: Arc<Ring>,
    /// Aligned with `multi_indices(m, n)`.
    pub coords: Vec<Polynomial>,
}

impl OrbitTensor {
    pub fn zero(ring: &Arc<Ring>, m: usize, n: u32) -> OrbitTensor {
        let len = multi_indices(m, n).len();
        OrbitTensor { m, n, ring: Arc::clone(ring), coords: vec![Polynomial::zero(ring); len] }
    }

    /// The basis orbit sum e_nu.
    pub fn basis(ring: &Arc<Ring>, m: usize, n: u32, at: usize) -> OrbitTensor {
        let mut o = OrbitTensor::zero(ring, m, n);
        o.coords[at] = Polynomial::one(ring);
        o
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Polynomial::is_zero)
    }

    /// Embeds into T^n(F): each orbit sum expands over the distinct
    /// permutations of its content, all with coefficient one.
    pub fn embed(&self) -> ModVec {
        let rank = tensor_rank(self.m, self.n) as usize;
        let mut coords = vec![Polynomial::zero(&self.ring); rank];
        for (nu, c) in multi_indices(self.m, self.n).iter().zip(&self.coords) {
            if c.is_zero() {
                continue;
            }
            for t in multiset_tuples(nu) {
                let idx = tuple_to_index(&t, self.m);
                coords[idx] = coords[idx].add(c);
            }
        }
        ModVec::from_coords(coords)
    }
}

/// Reads an embedded vector back into orbit coordinates; `None` if it is not
/// constant on orbits (i.e. not an orbit-sum combination).
pub fn orbit_project(v: &ModVec, m: usize, n: u32) -> Option<OrbitTensor> {
    let ring = v.ring();
    let mut out = OrbitTensor::zero(ring, m, n);
    for (k, nu) in multi_indices(m, n).iter().enumerate() {
        let tuples = multiset_tuples(nu);
        let first = v.coord(tuple_to_index(&tuples[0], m));
        for t in &tuples[1..] {
            if v.coord(tuple_to_index(t, m)) != first {
                return None;
            }
        }
        out.coords[k] = first.clone();
    }
    Some(out)
}

/// The embedded orbit basis of the invariants of T^n(F), in
/// `multi_indices` order.
pub fn orbit_basis_embedded(ring: &Arc<Ring>, m: usize, n: u32) -> Vec<ModVec> {
    (0..multi_indices(m, n).len())
        .map(|k| OrbitTensor::basis(ring, m, n, k).embed())
        .collect()
}

/// Shuffle product on orbit coordinates:
/// e_nu x e_mu = prod_i C(nu_i + mu_i, nu_i) * e_(nu+mu), extended
/// bilinearly.
pub fn shuffle(a: &OrbitTensor, b: &OrbitTensor) -> Result<OrbitTensor, Error> {
    assert_eq!(a.m, b.m, "orbit tensors over different free modules");
    let m = a.m;
    let n = a.n + b.n;
    let field = &a.ring.field;
    let mut out = OrbitTensor::zero(&a.ring, m, n);
    let a_idx = multi_indices(m, a.n);
    let b_idx = multi_indices(m, b.n);
    let out_pos: std::collections::HashMap<MultiIndex, usize> = multi_indices(m, n)
        .into_iter()
        .enumerate()
        .map(|(k, nu)| (nu, k))
        .collect();
    for (nu, ca) in a_idx.iter().zip(&a.coords) {
        if ca.is_zero() {
            continue;
        }
        for (mu, cb) in b_idx.iter().zip(&b.coords) {
            if cb.is_zero() {
                continue;
            }
            let mut coef = field.one();
            for (x, y) in nu.0.iter().zip(&mu.0) {
                coef = coef.mul(&field.binomial(u64::from(x + y), u64::from(*x))?);
            }
            if coef.is_zero() {
                continue;
            }
            let k = out_pos[&nu.add(mu)];
            let add = ca.mul(cb).scale(&coef);
            out.coords[k] = out.coords[k].add(&add);
        }
    }
    Ok(out)
}

/// The shuffle product computed from its definition: sum over all
/// (k, l)-shuffles of the slots of z (x) z'. Exponential in n; retained as
/// an independent cross-check and for the graded oracle.
pub fn shuffle_enumerated(z: &ModVec, k: u32, zp: &ModVec, l: u32, m: usize) -> ModVec {
    let n = k + l;
    let rank = tensor_rank(m, n) as usize;
    let ring = z.ring();
    // z (x) z' in T^n.
    let mut prod = vec![Polynomial::zero(ring); rank];
    for (ia, pa) in z.coords().iter().enumerate() {
        if pa.is_zero() {
            continue;
        }
        for (ib, pb) in zp.coords().iter().enumerate() {
            if pb.is_zero() {
                continue;
            }
            let idx = ia * tensor_rank(m, l) as usize + ib;
            prod[idx] = prod[idx].add(&pa.mul(pb));
        }
    }
    let prod = ModVec::from_coords(prod);
    // Sum sigma(prod) over (k, l)-shuffles: sigma increasing on the first k
    // slots and on the last l slots.
    let mut acc = ModVec::zero(ring, rank);
    for choice in combinations(n as usize, k as usize) {
        let mut perm = vec![0usize; n as usize];
        let mut rest: Vec<usize> = (0..n as usize).filter(|i| !choice.contains(i)).collect();
        for (slot, target) in choice.iter().enumerate() {
            perm[slot] = *target;
        }
        for (slot, target) in rest.drain(..).enumerate() {
            perm[k as usize + slot] = target;
        }
        acc = acc.add(&sigma_action(&perm, &prod, m, n));
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// gamma^s(x) for x = sum x_i e_i in F, in orbit coordinates of TS^s(F):
/// the e_nu coordinate is prod x_i^(nu_i). No multinomials appear; this is
/// the defining property of divided powers.
pub fn gamma_expand(x: &[Polynomial], s: u32) -> OrbitTensor {
    let ring = x[0].ring();
    let m = x.len();
    let mut out = OrbitTensor::zero(ring, m, s);
    for (k, nu) in multi_indices(m, s).iter().enumerate() {
        let mut c = Polynomial::one(ring);
        for (xi, &e) in x.iter().zip(&nu.0) {
            if e > 0 {
                c = c.mul(&xi.pow(u64::from(e)));
            }
        }
        out.coords[k] = c;
    }
    out
}

/// x^(tensor s) in T^s(F), computed slotwise; equals the embedding of
/// gamma_expand(x, s).
pub fn tensor_power_embed(x: &[Polynomial], s: u32) -> ModVec {
    let ring = x[0].ring();
    let m = x.len();
    let rank = tensor_rank(m, s) as usize;
    let mut coords = Vec::with_capacity(rank);
    for idx in 0..rank {
        let t = index_to_tuple(idx, m, s);
        let mut c = Polynomial::one(ring);
        for &i in &t {
            c = c.mul(&x[i]);
        }
        coords.push(c);
    }
    ModVec::from_coords(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::FieldKind;

    fn ring() -> Arc<Ring> {
        Ring::new(FieldKind::Rationals, vec!["a".into(), "b".into()])
    }

    #[test]
    fn linearization_roundtrip() {
        for idx in 0..27 {
            assert_eq!(tuple_to_index(&index_to_tuple(idx, 3, 3), 3), idx);
        }
    }

    #[test]
    fn sigma_composition_generates_symmetric_group() {
        // BFS over products of adjacent transpositions of S_3 yields 6
        // distinct permutation actions on T^3.
        let r = ring();
        let m = 2;
        let basis: Vec<ModVec> = (0..8)
            .map(|i| ModVec::unit(&r, 8, i, Polynomial::one(&r)))
            .collect();
        let act = |perm: &[usize]| -> Vec<usize> {
            basis
                .iter()
                .map(|e| {
                    let v = sigma_action(perm, e, m, 3);
                    v.coords().iter().position(|c| !c.is_zero()).unwrap()
                })
                .collect()
        };
        let gens = [adjacent_transposition(3, 0), adjacent_transposition(3, 1)];
        let mut seen = std::collections::BTreeSet::new();
        let mut frontier = vec![(0..3).collect::<Vec<usize>>()];
        seen.insert(act(&frontier[0]));
        while let Some(p) = frontier.pop() {
            for g in &gens {
                let q: Vec<usize> = (0..3).map(|k| g[p[k]]).collect();
                if seen.insert(act(&q)) {
                    frontier.push(q);
                }
            }
        }
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn orbit_basis_count_and_embedding() {
        let r = ring();
        let basis = orbit_basis_embedded(&r, 2, 2);
        assert_eq!(basis.len(), 3); // C(3, 2)
        // e_(1,1) = e1(x)e2 + e2(x)e1.
        let idx = multi_indices(2, 2);
        let pos = idx.iter().position(|nu| nu.0 == vec![1, 1]).unwrap();
        let v = &basis[pos];
        let one = Polynomial::one(&r);
        assert_eq!(v.coord(tuple_to_index(&[0, 1], 2)), &one);
        assert_eq!(v.coord(tuple_to_index(&[1, 0], 2)), &one);
        assert!(v.coord(tuple_to_index(&[0, 0], 2)).is_zero());
        let back = orbit_project(v, 2, 2).unwrap();
        assert_eq!(back.embed(), *v);
    }

    #[test]
    fn embedded_orbit_sums_are_fixed_by_transpositions() {
        let r = ring();
        for (m, n) in [(2usize, 2u32), (2, 3), (3, 2)] {
            for e in orbit_basis_embedded(&r, m, n) {
                for j in 0..(n as usize - 1) {
                    let s = adjacent_transposition(n, j);
                    assert_eq!(sigma_action(&s, &e, m, n), e);
                }
            }
        }
    }

    #[test]
    fn shuffle_formula_matches_enumeration() {
        let r = ring();
        let a = Polynomial::var(&r, 0);
        let b = Polynomial::var(&r, 1);
        // z = gamma^2(ae1 + be2), z' = e_(1,0) + b*e_(0,1).
        let z = gamma_expand(&[a.clone(), b.clone()], 2);
        let mut zp = OrbitTensor::zero(&r, 2, 1);
        zp.coords[0] = Polynomial::one(&r);
        zp.coords[1] = b.clone();
        let closed = shuffle(&z, &zp).unwrap().embed();
        let brute = shuffle_enumerated(&z.embed(), 2, &zp.embed(), 1, 2);
        assert_eq!(closed, brute);
    }

    #[test]
    fn shuffle_is_commutative_here() {
        let r = ring();
        let a = Polynomial::var(&r, 0);
        let z = gamma_expand(&[a.clone(), Polynomial::one(&r)], 2);
        let w = gamma_expand(&[Polynomial::one(&r), a.clone()], 3);
        assert_eq!(shuffle(&z, &w).unwrap(), shuffle(&w, &z).unwrap());
    }

    #[test]
    fn divided_power_multiplication_rule() {
        // gamma^n(x) x gamma^k(x) = C(n+k, n) gamma^(n+k)(x).
        let r = ring();
        let x = vec![Polynomial::var(&r, 0), Polynomial::var(&r, 1)];
        let g2 = gamma_expand(&x, 2);
        let g3 = gamma_expand(&x, 3);
        let prod = shuffle(&g2, &g3).unwrap();
        let g5 = gamma_expand(&x, 5);
        let c = FieldKind::Rationals.binomial(5, 2).unwrap();
        let scaled: Vec<Polynomial> = g5.coords.iter().map(|p| p.scale(&c)).collect();
        assert_eq!(prod.coords, scaled);
    }

    #[test]
    fn gamma_embedding_is_tensor_power() {
        let r = ring();
        let a = Polynomial::var(&r, 0);
        let b = Polynomial::var(&r, 1);
        for s in 1..=3 {
            let x = vec![a.add(&b.pow(2)), b.sub(&Polynomial::one(&r))];
            assert_eq!(gamma_expand(&x, s).embed(), tensor_power_embed(&x, s));
        }
    }

    #[test]
    fn guardrail_trips() {
        assert!(guardrail(10, 5, 100_000).is_ok());
        assert!(matches!(
            guardrail(10, 6, 100_000),
            Err(Error::GuardrailExceeded { needed: 1_000_000, limit: 100_000 })
        ));
    }
}
