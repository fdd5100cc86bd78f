//! Exact decisions for the canonical map from divided powers to symmetric
//! tensors of a finitely presented module.
//!
//! For M = A^m / <relations> with A = R/I, everything happens inside the
//! free module T = R^(m^n):
//!
//! * N is the kernel of T^n(F) -> T^n(M), generated by the relations
//!   inserted into every tensor slot;
//! * Span is the free orbit-sum span, i.e. TS^n(F);
//! * K presents Gamma^n(M) inside TS^n(F), generated by shuffles
//!   gamma^s(relation) x e_mu;
//! * L is the preimage of TS^n(M), cut out by (1 - sigma_j) z in N for the
//!   adjacent transpositions sigma_j.
//!
//! The canonical map is injective iff K = N cap Span, and surjective iff
//! Span + N = L. Proper containments come with certified witnesses.

use std::sync::Arc;

use crate::error::Error;
use crate::modgb::{
    lift_to_cover, preimage, presentation, submodule_equal, ModVec, Presentation, QuotRing,
    Side, Submodule,
};
use crate::polyring::{MonomialOrder, Polynomial};
use crate::tensoralg::{
    adjacent_transposition, gamma_expand, guardrail, index_to_tuple, multi_indices,
    orbit_basis_embedded, orbit_project, shuffle, sigma_action, OrbitTensor,
};

/// M = A^rank / <relations>, relations given by vectors over the base
/// polynomial ring.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    pub qr: Arc<QuotRing>,
    pub rank: usize,
    pub relations: Vec<ModVec>,
}

impl PresentedModule {
    pub fn new(
        qr: &Arc<QuotRing>,
        rank: usize,
        relations: Vec<ModVec>,
    ) -> Result<PresentedModule, Error> {
        for rel in &relations {
            if rel.ring() != &qr.base {
                return Err(Error::RingMismatch);
            }
            if rel.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, got: rel.rank() });
            }
        }
        Ok(PresentedModule { qr: Arc::clone(qr), rank, relations })
    }

    pub fn free(qr: &Arc<QuotRing>, rank: usize) -> PresentedModule {
        PresentedModule { qr: Arc::clone(qr), rank, relations: Vec::new() }
    }

    /// True when every generator dies in M, i.e. M = 0.
    pub fn is_zero(&self, order: MonomialOrder) -> Result<bool, Error> {
        if self.rank == 0 {
            return Ok(true);
        }
        let sub = Submodule::new(&self.qr, self.rank, self.relations.clone(), order)?;
        let ring = &self.qr.base;
        Ok((0..self.rank)
            .all(|i| sub.is_member(&ModVec::unit(ring, self.rank, i, Polynomial::one(ring)))))
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub order: MonomialOrder,
    /// Upper bound on the ambient tensor rank m^n.
    pub guardrail: u128,
    /// Re-verify every reported witness against the defining submodules.
    pub verify_witnesses: bool,
}

impl Default for Config {
    fn default() -> Config {
        Config { order: MonomialOrder::DegRevLex, guardrail: 100_000, verify_witnesses: true }
    }
}

/// A certified counterexample: a vector of T^n(F) (reduced modulo the
/// smaller submodule) plus its description over the module generators.
#[derive(Clone, Debug)]
pub struct Witness {
    pub vector: ModVec,
    pub class: String,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl CheckReport {
    pub(crate) fn holds() -> CheckReport {
        CheckReport { holds: true, witness: None, note: None }
    }

    pub(crate) fn holds_with_note(note: &str) -> CheckReport {
        CheckReport { holds: true, witness: None, note: Some(note.to_string()) }
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalMapReport {
    pub n: u32,
    pub module_rank: usize,
    pub injective: CheckReport,
    pub surjective: CheckReport,
}

/// The generators of N: each relation inserted into each slot, against every
/// choice of basis vectors in the remaining slots.
pub fn insertion_gens(module: &PresentedModule, n: u32) -> Vec<ModVec> {
    let m = module.rank;
    let ring = &module.qr.base;
    if n == 0 {
        return Vec::new();
    }
    let rank = m.pow(n) as usize;
    let others = m.pow(n - 1) as usize;
    let mut out = Vec::new();
    for rel in &module.relations {
        for slot in 0..n as usize {
            for rest in 0..others {
                let frame = index_to_tuple(rest, m, n - 1);
                let mut coords = vec![Polynomial::zero(ring); rank];
                for j in 0..m {
                    if rel.coord(j).is_zero() {
                        continue;
                    }
                    let mut t = frame.clone();
                    t.insert(slot, j);
                    let idx = crate::tensoralg::tuple_to_index(&t, m);
                    coords[idx] = coords[idx].add(rel.coord(j));
                }
                let v = ModVec::from_coords(coords);
                if !v.is_zero() {
                    out.push(v);
                }
            }
        }
    }
    out
}

pub fn n_submodule(module: &PresentedModule, n: u32, cfg: &Config) -> Result<Submodule, Error> {
    let rank = guardrail(module.rank, n, cfg.guardrail)?;
    Submodule::new(&module.qr, rank, insertion_gens(module, n), cfg.order)
}

/// Span(e_nu) = TS^n(F) as a submodule of T^n(F).
pub fn span_submodule(module: &PresentedModule, n: u32, cfg: &Config) -> Result<Submodule, Error> {
    let rank = guardrail(module.rank, n, cfg.guardrail)?;
    let gens = orbit_basis_embedded(&module.qr.base, module.rank, n);
    Submodule::new(&module.qr, rank, gens, cfg.order)
}

/// The generators of K in orbit coordinates: gamma^s(relation) x e_mu for
/// 1 <= s <= n and |mu| = n - s. Ranging over the given relations suffices:
/// gamma^s(q + q') and gamma^s(aq) expand into shuffles of the same shape.
pub fn k_gens_orbit(module: &PresentedModule, n: u32) -> Result<Vec<OrbitTensor>, Error> {
    let m = module.rank;
    let ring = &module.qr.base;
    let mut out = Vec::new();
    for rel in &module.relations {
        let coords: Vec<Polynomial> = rel.coords().to_vec();
        for s in 1..=n {
            let g = gamma_expand(&coords, s);
            for at in 0..multi_indices(m, n - s).len() {
                let e_mu = OrbitTensor::basis(ring, m, n - s, at);
                out.push(shuffle(&g, &e_mu)?);
            }
        }
    }
    Ok(out)
}

pub fn k_submodule(module: &PresentedModule, n: u32, cfg: &Config) -> Result<Submodule, Error> {
    let rank = guardrail(module.rank, n, cfg.guardrail)?;
    let gens: Vec<ModVec> = k_gens_orbit(module, n)?
        .into_iter()
        .map(|o| o.embed())
        .filter(|v| !v.is_zero())
        .collect();
    Submodule::new(&module.qr, rank, gens, cfg.order)
}

/// N^{S_n} = N cap Span, since taking invariants of the free module lands in
/// the orbit-sum span over any coefficient ring.
pub fn invariants_submodule(
    module: &PresentedModule,
    n: u32,
    cfg: &Config,
) -> Result<Submodule, Error> {
    let nsub = n_submodule(module, n, cfg)?;
    let span = span_submodule(module, n, cfg)?;
    nsub.intersect(&span)
}

pub fn l_submodule(module: &PresentedModule, n: u32, cfg: &Config) -> Result<Submodule, Error> {
    let nsub = n_submodule(module, n, cfg)?;
    l_submodule_given(module, n, cfg, &nsub)
}

pub(crate) fn l_submodule_given(
    module: &PresentedModule,
    n: u32,
    cfg: &Config,
    nsub: &Submodule,
) -> Result<Submodule, Error> {
    let m = module.rank;
    let rank = nsub.rank;
    let ring = &module.qr.base;
    let mut acc: Option<Submodule> = None;
    for j in 0..(n as usize).saturating_sub(1) {
        let perm = adjacent_transposition(n, j);
        let phi: Vec<ModVec> = (0..rank)
            .map(|idx| {
                let e = ModVec::unit(ring, rank, idx, Polynomial::one(ring));
                e.sub(&sigma_action(&perm, &e, m, n))
            })
            .collect();
        let pre = preimage(&phi, nsub)?;
        acc = Some(match acc {
            None => pre,
            Some(a) => a.intersect(&pre)?,
        });
    }
    match acc {
        Some(a) => Ok(a),
        // n <= 1: no transpositions, L is everything.
        None => {
            let basis = (0..rank)
                .map(|i| ModVec::unit(ring, rank, i, Polynomial::one(ring)))
                .collect();
            Submodule::new(&module.qr, rank, basis, cfg.order)
        }
    }
}

pub(crate) fn short_circuit(
    module: &PresentedModule,
    n: u32,
    cfg: &Config,
) -> Result<Option<CheckReport>, Error> {
    if n == 0 {
        return Ok(Some(CheckReport::holds_with_note(
            "n = 0: both sides are the base ring and the map is the identity",
        )));
    }
    if module.is_zero(cfg.order)? {
        return Ok(Some(CheckReport::holds_with_note("zero module: both sides vanish")));
    }
    guardrail(module.rank, n, cfg.guardrail)?;
    Ok(None)
}

pub fn check_injective(
    module: &PresentedModule,
    n: u32,
    cfg: &Config,
) -> Result<CheckReport, Error> {
    if let Some(r) = short_circuit(module, n, cfg)? {
        return Ok(r);
    }
    let nsub = n_submodule(module, n, cfg)?;
    let span = span_submodule(module, n, cfg)?;
    injective_given(module, n, cfg, &nsub, &span)
}

pub fn check_surjective(
    module: &PresentedModule,
    n: u32,
    cfg: &Config,
) -> Result<CheckReport, Error> {
    if let Some(r) = short_circuit(module, n, cfg)? {
        return Ok(r);
    }
    let nsub = n_submodule(module, n, cfg)?;
    let span = span_submodule(module, n, cfg)?;
    let lsub = l_submodule_given(module, n, cfg, &nsub)?;
    surjective_given(module, n, cfg, &nsub, &span, &lsub)
}

pub fn check_canonical(
    module: &PresentedModule,
    n: u32,
    cfg: &Config,
) -> Result<CanonicalMapReport, Error> {
    if let Some(r) = short_circuit(module, n, cfg)? {
        return Ok(CanonicalMapReport {
            n,
            module_rank: module.rank,
            injective: r.clone(),
            surjective: r,
        });
    }
    let nsub = n_submodule(module, n, cfg)?;
    let span = span_submodule(module, n, cfg)?;
    let lsub = l_submodule_given(module, n, cfg, &nsub)?;
    Ok(CanonicalMapReport {
        n,
        module_rank: module.rank,
        injective: injective_given(module, n, cfg, &nsub, &span)?,
        surjective: surjective_given(module, n, cfg, &nsub, &span, &lsub)?,
    })
}

pub(crate) fn injective_given(
    module: &PresentedModule,
    n: u32,
    cfg: &Config,
    nsub: &Submodule,
    span: &Submodule,
) -> Result<CheckReport, Error> {
    let inv = nsub.intersect(span)?;
    let ksub = k_submodule(module, n, cfg)?;
    let eq = submodule_equal(&ksub, &inv)?;
    if !eq.left_in_right {
        return Err(Error::Internal(
            "a divided power relation fell outside the invariant kernel".into(),
        ));
    }
    if eq.right_in_left {
        return Ok(CheckReport::holds());
    }
    let (side, gen, nf) = eq.witness.expect("failed inclusion yields a witness");
    debug_assert_eq!(side, Side::Right);
    if cfg.verify_witnesses {
        let ok = nsub.is_member(&gen)
            && span.is_member(&gen)
            && !ksub.is_member(&gen)
            && !ksub.is_member(&nf)
            && !nf.is_zero();
        if !ok {
            return Err(Error::Internal("injectivity witness failed re-verification".into()));
        }
    }
    let class = orbit_class_string(&nf, module, n);
    Ok(CheckReport { holds: false, witness: Some(Witness { vector: nf, class }), note: None })
}

pub(crate) fn surjective_given(
    module: &PresentedModule,
    n: u32,
    cfg: &Config,
    nsub: &Submodule,
    span: &Submodule,
    lsub: &Submodule,
) -> Result<CheckReport, Error> {
    let sum = span.sum(nsub)?;
    let eq = submodule_equal(&sum, lsub)?;
    if !eq.left_in_right {
        return Err(Error::Internal(
            "an orbit sum or kernel element fell outside the invariant preimage".into(),
        ));
    }
    if eq.right_in_left {
        return Ok(CheckReport::holds());
    }
    let (side, gen, nf) = eq.witness.expect("failed inclusion yields a witness");
    debug_assert_eq!(side, Side::Right);
    if cfg.verify_witnesses {
        let ok = lsub.is_member(&gen) && !sum.is_member(&gen) && !sum.is_member(&nf) && !nf.is_zero();
        if !ok {
            return Err(Error::Internal("surjectivity witness failed re-verification".into()));
        }
    }
    let class = tensor_class_string(&nf, module, n);
    Ok(CheckReport { holds: false, witness: Some(Witness { vector: nf, class }), note: None })
}

/// Renders a vector of T^n(F) over the module generators, coefficients
/// reduced to canonical form in A.
pub fn tensor_class_string(v: &ModVec, module: &PresentedModule, n: u32) -> String {
    let m = module.rank;
    let one = Polynomial::one(&module.qr.base);
    let mut parts = Vec::new();
    for (idx, c) in v.coords().iter().enumerate() {
        let c = module.qr.reduce(c);
        if c.is_zero() {
            continue;
        }
        let t = index_to_tuple(idx, m, n);
        let sym: Vec<String> = t.iter().map(|i| format!("m{}", i + 1)).collect();
        let sym = sym.join("\u{2297}");
        if sym.is_empty() {
            parts.push(format!("({})", c));
        } else if c == one {
            parts.push(sym);
        } else {
            parts.push(format!("({})*{}", c, sym));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Renders an invariant vector in divided-power notation over the module
/// generators: mi^(e) stands for the e-th divided power of mi.
pub fn orbit_class_string(v: &ModVec, module: &PresentedModule, n: u32) -> String {
    let reduced = ModVec::from_coords(v.coords().iter().map(|c| module.qr.reduce(c)).collect());
    let o = match orbit_project(&reduced, module.rank, n) {
        Some(o) => o,
        None => return tensor_class_string(v, module, n),
    };
    let one = Polynomial::one(&module.qr.base);
    let mut parts = Vec::new();
    for (nu, c) in multi_indices(module.rank, n).iter().zip(&o.coords) {
        if c.is_zero() {
            continue;
        }
        let sym: Vec<String> = nu
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| {
                if *e == 1 {
                    format!("m{}", i + 1)
                } else {
                    format!("m{}^({})", i + 1, e)
                }
            })
            .collect();
        let sym = sym.join("*");
        if sym.is_empty() {
            parts.push(format!("({})", c));
        } else if *c == one {
            parts.push(sym);
        } else {
            parts.push(format!("({})*{}", c, sym));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Presentation of Gamma^n(M): free on the orbit sums e_nu, modulo the orbit
/// coordinates of the K generators (those nonzero in A).
pub fn gamma_presentation(
    module: &PresentedModule,
    n: u32,
    cfg: &Config,
) -> Result<Presentation, Error> {
    guardrail(module.rank, n, cfg.guardrail)?;
    let generators = orbit_basis_embedded(&module.qr.base, module.rank, n);
    let mut relations = Vec::new();
    for o in k_gens_orbit(module, n)? {
        let v = ModVec::from_coords(o.coords);
        if v.coords().iter().all(|c| module.qr.is_zero_in_quotient(c)) {
            continue;
        }
        relations.push(v);
    }
    Ok(Presentation { generators, relations })
}

/// Groebner basis elements of the lift that survive reduction to A.
pub(crate) fn pruned_gb_gens(sub: &Submodule) -> Vec<ModVec> {
    sub.gb()
        .iter()
        .filter(|g| !g.coords().iter().all(|c| sub.qr.is_zero_in_quotient(c)))
        .cloned()
        .collect()
}

/// Presentation of TS^n(M) = L/N: generators are the surviving Groebner
/// basis elements of L, relations their coefficient vectors into N.
pub fn ts_presentation(
    module: &PresentedModule,
    n: u32,
    cfg: &Config,
) -> Result<Presentation, Error> {
    guardrail(module.rank, n, cfg.guardrail)?;
    let nsub = n_submodule(module, n, cfg)?;
    let lsub = l_submodule_given(module, n, cfg, &nsub)?;
    presentation(&pruned_gb_gens(&lsub), &nsub)
}

/// Both presentations plus the matrix of the canonical map between them.
#[derive(Debug)]
pub struct MapPresentation {
    pub gamma: Presentation,
    pub ts: Presentation,
    /// columns[j][i] = coefficient of ts.generators[i] in the image of
    /// gamma.generators[j], reduced in A.
    pub columns: Vec<Vec<Polynomial>>,
}

pub fn map_presentation(
    module: &PresentedModule,
    n: u32,
    cfg: &Config,
) -> Result<MapPresentation, Error> {
    let ring = &module.qr.base;
    let empty = || MapPresentation {
        gamma: Presentation { generators: Vec::new(), relations: Vec::new() },
        ts: Presentation { generators: Vec::new(), relations: Vec::new() },
        columns: Vec::new(),
    };
    if module.rank == 0 || module.qr.is_zero_in_quotient(&Polynomial::one(ring)) {
        return Ok(empty());
    }
    guardrail(module.rank, n, cfg.guardrail)?;
    let nsub = n_submodule(module, n, cfg)?;
    let lsub = l_submodule_given(module, n, cfg, &nsub)?;
    let ts_gens = pruned_gb_gens(&lsub);
    let ts = presentation(&ts_gens, &nsub)?;
    let gamma = gamma_presentation(module, n, cfg)?;
    let cover = Submodule::new(&module.qr, nsub.rank, ts_gens, cfg.order)?;
    let mut columns = Vec::new();
    for e in &gamma.generators {
        let coeffs = lift_to_cover(&cover, e).ok_or_else(|| {
            Error::Internal("an orbit sum is not a combination of the TS generators".into())
        })?;
        columns.push(coeffs.iter().map(|c| module.qr.reduce(c)).collect::<Vec<_>>());
    }
    // The map must send relations to relations; anything else is a bug.
    if !ts.generators.is_empty() {
        let rel_rank = ts.generators.len();
        let rel_sub = Submodule::new(&module.qr, rel_rank, ts.relations.clone(), cfg.order)?;
        for r in &gamma.relations {
            let mut image = vec![Polynomial::zero(ring); rel_rank];
            for (col, rj) in columns.iter().zip(r.coords()) {
                if rj.is_zero() {
                    continue;
                }
                for (img, entry) in image.iter_mut().zip(col) {
                    *img = img.add(&entry.mul(rj));
                }
            }
            if !rel_sub.is_member(&ModVec::from_coords(image)) {
                return Err(Error::Internal(
                    "the canonical map does not send relations to relations".into(),
                ));
            }
        }
    }
    Ok(MapPresentation { gamma, ts, columns })
}
