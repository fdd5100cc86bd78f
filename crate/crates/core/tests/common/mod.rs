//! Builders shared by the integration tests: the worked modules from the
//! CLI corpus reconstructed over the core API, plus seeded random
//! generators for polynomials, submodules, and module presentations.
#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gts_core::basechange::{extend_module, BaseExtension};
use gts_core::gammats::{check_surjective, Config, PresentedModule};
use gts_core::modgb::{ModVec, QuotRing};
use gts_core::polyring::{Coef, FieldKind, Monomial, Polynomial, Ring};

/// GF(p) for p > 0, the rationals for p = 0.
pub fn field(p: u64) -> FieldKind {
    if p == 0 {
        FieldKind::Rationals
    } else {
        FieldKind::prime(p).unwrap()
    }
}

pub fn ring(p: u64, vars: &[&str]) -> Arc<Ring> {
    Ring::new(field(p), vars.iter().map(|v| v.to_string()).collect())
}

pub fn poly_ring(p: u64, vars: &[&str]) -> Arc<QuotRing> {
    QuotRing::polynomial(&ring(p, vars))
}

pub fn var(qr: &Arc<QuotRing>, i: usize) -> Polynomial {
    Polynomial::var(&qr.base, i)
}

// ---- the corpus modules, by hand ----

/// A = GF(p)[x], M = A/(x).
pub fn torsion_line(p: u64) -> PresentedModule {
    let qr = poly_ring(p, &["x"]);
    let x = var(&qr, 0);
    PresentedModule::new(&qr, 1, vec![ModVec::from_coords(vec![x])]).unwrap()
}

/// A = GF(2)[s,t], M = coker(s e1 + t e2).
pub fn planar_pair() -> PresentedModule {
    let qr = poly_ring(2, &["s", "t"]);
    let rel = ModVec::from_coords(vec![var(&qr, 0), var(&qr, 1)]);
    PresentedModule::new(&qr, 2, vec![rel]).unwrap()
}

/// The same module pushed along A -> A' = A[z]/(z(s+t)).
pub fn planar_pair_extended() -> (BaseExtension, PresentedModule, PresentedModule) {
    let module = planar_pair();
    let base = Arc::clone(&module.qr.base);
    let big = base.extended(&["z"]);
    let s = Polynomial::var(&big, 0);
    let t = Polynomial::var(&big, 1);
    let z = Polynomial::var(&big, 2);
    let target = QuotRing::new(&big, vec![z.mul(&s.add(&t))]).unwrap();
    let ext = BaseExtension::inclusion(&module.qr, &target).unwrap();
    let extended = extend_module(&module, &ext).unwrap();
    (ext, module, extended)
}

/// A = GF(3)[s,t], M = coker(s e1 - t e2); the map at n = 3 is not onto.
pub fn antisymmetric_pair() -> PresentedModule {
    let qr = poly_ring(3, &["s", "t"]);
    let rel = ModVec::from_coords(vec![var(&qr, 0), var(&qr, 1).neg()]);
    PresentedModule::new(&qr, 2, vec![rel]).unwrap()
}

/// Nine graded variables, M = coker(z1 e1 + z2 e2 + z3 e3) over the free
/// base ring; surjective at n = 2 until the quotient below is applied.
pub fn graded_triple() -> PresentedModule {
    let qr = poly_ring(2, &["x1", "x2", "x3", "y1", "y2", "y3", "z1", "z2", "z3"]);
    let rel = ModVec::from_coords(vec![var(&qr, 6), var(&qr, 7), var(&qr, 8)]);
    PresentedModule::new(&qr, 3, vec![rel]).unwrap()
}

/// The quotient of the nine-variable base that strands
/// (x1 z2 + y2 z1) e1 x e2 outside the image.
pub fn graded_triple_extended() -> (BaseExtension, PresentedModule, PresentedModule) {
    let module = graded_triple();
    let base = Arc::clone(&module.qr.base);
    let v = |i: usize| Polynomial::var(&base, i);
    let (x1, x2, x3) = (v(0), v(1), v(2));
    let (y1, y2, y3) = (v(3), v(4), v(5));
    let (z1, z2, z3) = (v(6), v(7), v(8));
    let ideal = vec![
        x1.mul(&z2).add(&y2.mul(&z1)).add(&x2.mul(&z1)).add(&y1.mul(&z2)),
        x1.mul(&z1).add(&y1.mul(&z1)),
        x2.mul(&z2).add(&y2.mul(&z2)),
        x3.mul(&z3).add(&y3.mul(&z3)),
        x1.mul(&z3).add(&y3.mul(&z1)),
        x3.mul(&z1).add(&y1.mul(&z3)),
        x2.mul(&z3).add(&y3.mul(&z2)),
        x3.mul(&z2).add(&y2.mul(&z3)),
    ];
    let target = QuotRing::new(&base, ideal).unwrap();
    let ext = BaseExtension::inclusion(&module.qr, &target).unwrap();
    let extended = extend_module(&module, &ext).unwrap();
    (ext, module, extended)
}

/// A = GF(3)[s1,s2,s3], M = coker(s1 e1 - s2 e2, s1 e1 - s3 e3), pushed
/// along A -> A[z]/(z s1 - z s2, z s1 - z s3); n = 3 loses injectivity.
pub fn triple_lines() -> (BaseExtension, PresentedModule, PresentedModule) {
    let qr = poly_ring(3, &["s1", "s2", "s3"]);
    let zero = Polynomial::zero(&qr.base);
    let rels = vec![
        ModVec::from_coords(vec![var(&qr, 0), var(&qr, 1).neg(), zero.clone()]),
        ModVec::from_coords(vec![var(&qr, 0), zero, var(&qr, 2).neg()]),
    ];
    let module = PresentedModule::new(&qr, 3, rels).unwrap();
    let big = qr.base.extended(&["z"]);
    let v = |i: usize| Polynomial::var(&big, i);
    let z = v(3);
    let ideal = vec![z.mul(&v(0)).sub(&z.mul(&v(1))), z.mul(&v(0)).sub(&z.mul(&v(2)))];
    let target = QuotRing::new(&big, ideal).unwrap();
    let ext = BaseExtension::inclusion(&qr, &target).unwrap();
    let extended = extend_module(&module, &ext).unwrap();
    (ext, module, extended)
}

// ---- seeded random generators ----

pub fn monomials_of_degree(nvars: usize, d: u16) -> Vec<Monomial> {
    fn go(out: &mut Vec<Vec<u16>>, prefix: &mut Vec<u16>, left: u16, slots: usize) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            go(out, prefix, left - e, slots - 1);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    go(&mut raw, &mut Vec::new(), d, nvars.max(1));
    raw.into_iter().map(|exps| Monomial { exps }).collect()
}

pub fn monomials_up_to(nvars: usize, d: u16) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(nvars, k)).collect()
}

pub fn random_coef(rng: &mut ChaCha8Rng, f: &FieldKind) -> Coef {
    match f.characteristic() {
        0 => f.from_i64(rng.random_range(-4..5)),
        p => f.from_i64(rng.random_range(0..i64::from(p))),
    }
}

pub fn random_nonzero_coef(rng: &mut ChaCha8Rng, f: &FieldKind) -> Coef {
    loop {
        let c = random_coef(rng, f);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A few random terms of total degree at most `max_deg`; may come out zero.
pub fn random_poly(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, max_deg: u16) -> Polynomial {
    let pool = monomials_up_to(ring.nvars(), max_deg);
    let k = rng.random_range(1..=3);
    let terms = (0..k)
        .map(|_| {
            let m = pool[rng.random_range(0..pool.len())].clone();
            (m, random_coef(rng, &ring.field))
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}

pub fn random_nonzero_poly(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, max_deg: u16) -> Polynomial {
    loop {
        let p = random_poly(rng, ring, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Homogeneous of exact degree `d`, never zero.
pub fn random_homogeneous_poly(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, d: u16) -> Polynomial {
    let pool = monomials_of_degree(ring.nvars(), d);
    loop {
        let k = rng.random_range(1..=2.min(pool.len()));
        let terms = (0..k)
            .map(|_| {
                let m = pool[rng.random_range(0..pool.len())].clone();
                (m, random_nonzero_coef(rng, &ring.field))
            })
            .collect();
        let p = Polynomial::from_terms(ring, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_vec(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, rank: usize, max_deg: u16) -> ModVec {
    ModVec::from_coords((0..rank).map(|_| random_poly(rng, ring, max_deg)).collect())
}

/// A presentation with homogeneous relations of degree 1 or 2 (standard
/// weights, no generator shifts), each with at least one nonzero coordinate.
pub fn random_homogeneous_module(
    rng: &mut ChaCha8Rng,
    qr: &Arc<QuotRing>,
    rank: usize,
    max_rels: usize,
) -> PresentedModule {
    let ring = &qr.base;
    let nrels = rng.random_range(1..=max_rels);
    let rels = (0..nrels)
        .map(|_| {
            let d = rng.random_range(1..=2);
            loop {
                let coords: Vec<Polynomial> = (0..rank)
                    .map(|_| {
                        if rng.random_bool(0.75) {
                            random_homogeneous_poly(rng, ring, d)
                        } else {
                            Polynomial::zero(ring)
                        }
                    })
                    .collect();
                if coords.iter().any(|c| !c.is_zero()) {
                    return ModVec::from_coords(coords);
                }
            }
        })
        .collect();
    PresentedModule::new(qr, rank, rels).unwrap()
}

/// Surjectivity sweep for two-generator quotients at n = 2: returns a
/// description of every random case whose check does not hold.
pub fn surjectivity_failures_over(p: u64, count: usize, seed: u64) -> Vec<String> {
    let qr = poly_ring(p, &["s", "t"]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = Config::default();
    let mut bad = Vec::new();
    for i in 0..count {
        let module = random_homogeneous_module(&mut rng, &qr, 2, 3);
        let report = check_surjective(&module, 2, &cfg).unwrap();
        if !report.holds {
            bad.push(format!("case {i} over GF({p}): relations {:?}", module.relations));
        }
    }
    bad
}
