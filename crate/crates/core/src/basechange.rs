//! Base change for symmetric tensors: decides injectivity and surjectivity
//! of TS^n_A(M) ox_A A' -> TS^n_{A'}(M') for a ring map A -> A'.
//!
//! The source is presented by right exactness: take the TS presentation
//! (g_1..g_r, Rel) over A and read the same matrices over A'. The map sends
//! the class of g_i to the class of its coefficientwise image. Injectivity
//! then compares the preimage of N' under c -> sum c_i g_i' with the mapped
//! relations; surjectivity compares <g_i'> + N' with L'.
//!
//! Both verdicts are cross-checked against the commuting square through the
//! divided power functor, which is insensitive to base change.

use std::sync::Arc;

use crate::error::Error;
use crate::gammats::{
    check_canonical, injective_given, insertion_gens, l_submodule_given, n_submodule,
    pruned_gb_gens, short_circuit, span_submodule, surjective_given, tensor_class_string,
    ts_presentation, CanonicalMapReport, CheckReport, Config, PresentedModule, Witness,
};
use crate::modgb::{preimage, presentation, submodule_equal, ModVec, QuotRing, Side, Submodule};
use crate::polyring::Polynomial;

/// A ring map A = R/I -> A' = R'/I' given by polynomial images of the
/// variables of R. Construction checks that I lands in I'.
#[derive(Clone, Debug)]
pub struct BaseExtension {
    pub source: Arc<QuotRing>,
    pub target: Arc<QuotRing>,
    var_images: Vec<Polynomial>,
}

impl BaseExtension {
    pub fn new(
        source: &Arc<QuotRing>,
        target: &Arc<QuotRing>,
        var_images: Vec<Polynomial>,
    ) -> Result<BaseExtension, Error> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch);
        }
        if var_images.len() != source.base.nvars() {
            return Err(Error::RingMapShape {
                expected: source.base.nvars(),
                got: var_images.len(),
            });
        }
        let ext = BaseExtension {
            source: Arc::clone(source),
            target: Arc::clone(target),
            var_images,
        };
        for (index, g) in source.ideal.iter().enumerate() {
            if !target.is_zero_in_quotient(&ext.map_poly(g)?) {
                return Err(Error::IdealNotMapped { index });
            }
        }
        Ok(ext)
    }

    /// The map matching variables of the source to target variables of the
    /// same name; the usual case A -> A[z]/(...) or A -> A/I'.
    pub fn inclusion(
        source: &Arc<QuotRing>,
        target: &Arc<QuotRing>,
    ) -> Result<BaseExtension, Error> {
        let images = source
            .base
            .vars
            .iter()
            .map(|name| {
                target
                    .base
                    .vars
                    .iter()
                    .position(|v| v == name)
                    .map(|i| Polynomial::var(&target.base, i))
                    .ok_or_else(|| Error::MissingVariable(name.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        BaseExtension::new(source, target, images)
    }

    pub fn map_poly(&self, p: &Polynomial) -> Result<Polynomial, Error> {
        p.map_vars(&self.target.base, &self.var_images)
    }

    pub fn map_vec(&self, v: &ModVec) -> Result<ModVec, Error> {
        let coords = v
            .coords()
            .iter()
            .map(|c| self.map_poly(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ModVec::from_coords(coords))
    }
}

/// M' = M ox_A A': same rank, relation vectors mapped coefficientwise.
pub fn extend_module(
    module: &PresentedModule,
    ext: &BaseExtension,
) -> Result<PresentedModule, Error> {
    if *module.qr != *ext.source {
        return Err(Error::RingMismatch);
    }
    let relations = module
        .relations
        .iter()
        .map(|r| ext.map_vec(r))
        .collect::<Result<Vec<_>, _>>()?;
    PresentedModule::new(&ext.target, module.rank, relations)
}

/// What the commuting square through Gamma^n forces. Only the negative
/// directions are conclusive: when the canonical map is an isomorphism over
/// A, the base change map inherits the kernel of the canonical map over A',
/// and when it is surjective over A, the base change map inherits its image.
#[derive(Clone, Debug)]
pub struct DiagramRecord {
    pub source: CanonicalMapReport,
    pub target: CanonicalMapReport,
    pub implies_injective_fails: bool,
    pub implies_surjective_fails: bool,
}

fn derive_record(source: CanonicalMapReport, target: CanonicalMapReport) -> DiagramRecord {
    let source_iso = source.injective.holds && source.surjective.holds;
    DiagramRecord {
        implies_injective_fails: source_iso && !target.injective.holds,
        implies_surjective_fails: source.surjective.holds && !target.surjective.holds,
        source,
        target,
    }
}

#[derive(Clone, Debug)]
pub struct BaseChangeReport {
    pub n: u32,
    pub injective: CheckReport,
    pub surjective: CheckReport,
    pub diagram: DiagramRecord,
}

pub fn diagram_cross_check(
    module: &PresentedModule,
    n: u32,
    ext: &BaseExtension,
    cfg: &Config,
) -> Result<DiagramRecord, Error> {
    let source = check_canonical(module, n, cfg)?;
    let extended = extend_module(module, ext)?;
    let target = check_canonical(&extended, n, cfg)?;
    Ok(derive_record(source, target))
}

fn bc_short_circuit(
    module: &PresentedModule,
    n: u32,
    ext: &BaseExtension,
    cfg: &Config,
) -> Result<Option<CheckReport>, Error> {
    if *module.qr != *ext.source {
        return Err(Error::RingMismatch);
    }
    short_circuit(module, n, cfg)
}

pub fn base_change_surjective(
    module: &PresentedModule,
    n: u32,
    ext: &BaseExtension,
    cfg: &Config,
) -> Result<CheckReport, Error> {
    if let Some(r) = bc_short_circuit(module, n, ext, cfg)? {
        return Ok(r);
    }
    let pres = ts_presentation(module, n, cfg)?;
    let images = map_all(ext, &pres.generators)?;
    let extended = extend_module(module, ext)?;
    let nsub = n_submodule(&extended, n, cfg)?;
    let lsub = l_submodule_given(&extended, n, cfg, &nsub)?;
    bc_surjective_given(&extended, n, cfg, &images, &lsub)
}

pub fn base_change_injective(
    module: &PresentedModule,
    n: u32,
    ext: &BaseExtension,
    cfg: &Config,
) -> Result<CheckReport, Error> {
    if let Some(r) = bc_short_circuit(module, n, ext, cfg)? {
        return Ok(r);
    }
    let pres = ts_presentation(module, n, cfg)?;
    let images = map_all(ext, &pres.generators)?;
    let mapped_relations = map_all(ext, &pres.relations)?;
    let extended = extend_module(module, ext)?;
    let nsub = n_submodule(&extended, n, cfg)?;
    bc_injective_given(module, &extended, n, cfg, &pres.generators, &images, mapped_relations, &nsub)
}

/// Full report: both direct verdicts plus the diagram chase, sharing the
/// Groebner work between all four canonical map checks.
pub fn base_change_check(
    module: &PresentedModule,
    n: u32,
    ext: &BaseExtension,
    cfg: &Config,
) -> Result<BaseChangeReport, Error> {
    if let Some(r) = bc_short_circuit(module, n, ext, cfg)? {
        let diagram = diagram_cross_check(module, n, ext, cfg)?;
        return Ok(BaseChangeReport { n, injective: r.clone(), surjective: r, diagram });
    }

    let nsub_a = n_submodule(module, n, cfg)?;
    let span_a = span_submodule(module, n, cfg)?;
    let l_a = l_submodule_given(module, n, cfg, &nsub_a)?;
    let source = CanonicalMapReport {
        n,
        module_rank: module.rank,
        injective: injective_given(module, n, cfg, &nsub_a, &span_a)?,
        surjective: surjective_given(module, n, cfg, &nsub_a, &span_a, &l_a)?,
    };

    let gens = pruned_gb_gens(&l_a);
    let relations = presentation(&gens, &nsub_a)?.relations;
    let images = map_all(ext, &gens)?;
    let mapped_relations = map_all(ext, &relations)?;

    let extended = extend_module(module, ext)?;
    let nsub_t = n_submodule(&extended, n, cfg)?;
    let span_t = span_submodule(&extended, n, cfg)?;
    let l_t = l_submodule_given(&extended, n, cfg, &nsub_t)?;
    let target = CanonicalMapReport {
        n,
        module_rank: extended.rank,
        injective: injective_given(&extended, n, cfg, &nsub_t, &span_t)?,
        surjective: surjective_given(&extended, n, cfg, &nsub_t, &span_t, &l_t)?,
    };

    let surjective = bc_surjective_given(&extended, n, cfg, &images, &l_t)?;
    let injective =
        bc_injective_given(module, &extended, n, cfg, &gens, &images, mapped_relations, &nsub_t)?;

    let diagram = derive_record(source, target);
    if diagram.implies_injective_fails && injective.holds {
        return Err(Error::Internal(
            "diagram chase contradicts the direct base change injectivity verdict".into(),
        ));
    }
    if diagram.implies_surjective_fails && surjective.holds {
        return Err(Error::Internal(
            "diagram chase contradicts the direct base change surjectivity verdict".into(),
        ));
    }
    Ok(BaseChangeReport { n, injective, surjective, diagram })
}

fn map_all(ext: &BaseExtension, vecs: &[ModVec]) -> Result<Vec<ModVec>, Error> {
    vecs.iter().map(|v| ext.map_vec(v)).collect()
}

fn bc_surjective_given(
    extended: &PresentedModule,
    n: u32,
    cfg: &Config,
    images: &[ModVec],
    lsub: &Submodule,
) -> Result<CheckReport, Error> {
    let mut gens: Vec<ModVec> = images.to_vec();
    gens.extend(insertion_gens(extended, n));
    let reached = Submodule::new(&extended.qr, lsub.rank, gens, cfg.order)?;
    let eq = submodule_equal(&reached, lsub)?;
    if !eq.left_in_right {
        return Err(Error::Internal(
            "a mapped generator fell outside the extended invariant preimage".into(),
        ));
    }
    if eq.right_in_left {
        return Ok(CheckReport::holds());
    }
    let (side, gen, nf) = eq.witness.expect("failed inclusion yields a witness");
    debug_assert_eq!(side, Side::Right);
    if cfg.verify_witnesses {
        let ok = lsub.is_member(&gen)
            && !reached.is_member(&gen)
            && !reached.is_member(&nf)
            && !nf.is_zero();
        if !ok {
            return Err(Error::Internal(
                "base change surjectivity witness failed re-verification".into(),
            ));
        }
    }
    let class = tensor_class_string(&nf, extended, n);
    Ok(CheckReport { holds: false, witness: Some(Witness { vector: nf, class }), note: None })
}

#[allow(clippy::too_many_arguments)]
fn bc_injective_given(
    module: &PresentedModule,
    extended: &PresentedModule,
    n: u32,
    cfg: &Config,
    gens: &[ModVec],
    images: &[ModVec],
    mapped_relations: Vec<ModVec>,
    nsub_t: &Submodule,
) -> Result<CheckReport, Error> {
    let pre = preimage(images, nsub_t)?;
    let rel = Submodule::new(&extended.qr, images.len(), mapped_relations, cfg.order)?;
    let eq = submodule_equal(&rel, &pre)?;
    if !eq.left_in_right {
        return Err(Error::Internal(
            "a mapped relation does not land in the extended kernel".into(),
        ));
    }
    if eq.right_in_left {
        return Ok(CheckReport::holds());
    }
    let (side, gen, nf) = eq.witness.expect("failed inclusion yields a witness");
    debug_assert_eq!(side, Side::Right);
    if cfg.verify_witnesses {
        let value = combine(&gen, images, nsub_t.rank, extended);
        let ok = nsub_t.is_member(&value) && !rel.is_member(&gen) && !rel.is_member(&nf)
            && !nf.is_zero();
        if !ok {
            return Err(Error::Internal(
                "base change injectivity witness failed re-verification".into(),
            ));
        }
    }
    let class = kernel_class_string(&nf, gens, module, extended, n);
    Ok(CheckReport { holds: false, witness: Some(Witness { vector: nf, class }), note: None })
}

fn combine(
    coeffs: &ModVec,
    images: &[ModVec],
    rank: usize,
    extended: &PresentedModule,
) -> ModVec {
    let mut acc = ModVec::zero(&extended.qr.base, rank);
    for (c, g) in coeffs.coords().iter().zip(images) {
        if !c.is_zero() {
            acc = acc.add(&g.mul_poly(c));
        }
    }
    acc
}

/// Renders a kernel element of TS^n_A(M) ox A': each term is an A-side
/// tensor class against its A' coefficient, in the order of the TS
/// generators.
fn kernel_class_string(
    coeffs: &ModVec,
    gens: &[ModVec],
    module: &PresentedModule,
    extended: &PresentedModule,
    n: u32,
) -> String {
    let mut parts = Vec::new();
    for (c, g) in coeffs.coords().iter().zip(gens) {
        let c = extended.qr.reduce(c);
        if c.is_zero() {
            continue;
        }
        parts.push(format!("({})\u{2297}({})", tensor_class_string(g, module, n), c));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modgb::lift_to_cover;
    use crate::polyring::{FieldKind, Ring};

    fn cfg() -> Config {
        Config::default()
    }

    fn two_gen_module() -> (Arc<Ring>, Arc<QuotRing>, PresentedModule) {
        let r = Ring::new(FieldKind::prime(2).unwrap(), vec!["s".into(), "t".into()]);
        let qr = QuotRing::polynomial(&r);
        let s = Polynomial::var(&r, 0);
        let t = Polynomial::var(&r, 1);
        let m = PresentedModule::new(&qr, 2, vec![ModVec::from_coords(vec![s, t])]).unwrap();
        (r, qr, m)
    }

    #[test]
    fn identity_extension_changes_nothing() {
        let (r, qr, m) = two_gen_module();
        let ids: Vec<Polynomial> = (0..r.nvars()).map(|i| Polynomial::var(&r, i)).collect();
        let ext = BaseExtension::new(&qr, &qr, ids).unwrap();
        let report = base_change_check(&m, 2, &ext, &cfg()).unwrap();
        assert!(report.injective.holds);
        assert!(report.surjective.holds);
        assert!(!report.diagram.implies_injective_fails);
        assert!(!report.diagram.implies_surjective_fails);
    }

    #[test]
    fn polynomial_extension_is_flat() {
        // A -> A[u] is flat, so both verdicts must hold for a torsion module
        // whose canonical map is far from injective.
        let r = Ring::new(FieldKind::prime(2).unwrap(), vec!["x".into()]);
        let qr = QuotRing::polynomial(&r);
        let x = Polynomial::var(&r, 0);
        let m = PresentedModule::new(&qr, 1, vec![ModVec::from_coords(vec![x])]).unwrap();
        let big = Ring::new(FieldKind::prime(2).unwrap(), vec!["x".into(), "u".into()]);
        let bigq = QuotRing::polynomial(&big);
        let ext = BaseExtension::inclusion(&qr, &bigq).unwrap();
        let report = base_change_check(&m, 2, &ext, &cfg()).unwrap();
        assert!(report.injective.holds);
        assert!(report.surjective.holds);
        // Not via the diagram: the canonical map fails over both rings.
        assert!(!report.diagram.source.injective.holds);
        assert!(!report.diagram.target.injective.holds);
    }

    #[test]
    fn quotient_extension_kills_a_class() {
        // A = GF(2)[s,t] -> A' = A[z]/(z(s+t)): the class of
        // (m1 x m1 + m2 x m2) ox zs is nonzero and dies in TS over A'.
        let (r, qr, m) = two_gen_module();
        let big = Ring::new(
            FieldKind::prime(2).unwrap(),
            vec!["s".into(), "t".into(), "z".into()],
        );
        let s2 = Polynomial::var(&big, 0);
        let t2 = Polynomial::var(&big, 1);
        let z2 = Polynomial::var(&big, 2);
        let bigq = QuotRing::new(&big, vec![z2.mul(&s2.add(&t2))]).unwrap();
        let ext = BaseExtension::inclusion(&qr, &bigq).unwrap();

        let report = base_change_check(&m, 2, &ext, &cfg()).unwrap();
        assert!(!report.injective.holds);
        assert!(report.surjective.holds);
        assert!(report.diagram.implies_injective_fails);

        // Rebuild the known kernel class as a coefficient vector: zs times
        // the lift of e1 x e1 + e2 x e2 over the TS generators.
        let pres = ts_presentation(&m, 2, &cfg()).unwrap();
        let cover = Submodule::new(&qr, 4, pres.generators.clone(), cfg().order).unwrap();
        let one = Polynomial::one(&r);
        let zero = Polynomial::zero(&r);
        let diag = ModVec::from_coords(vec![one.clone(), zero.clone(), zero, one]);
        let lam = lift_to_cover(&cover, &diag).unwrap();
        let zs = z2.mul(&s2);
        let coeffs: Vec<Polynomial> = lam
            .iter()
            .map(|c| ext.map_poly(c).unwrap().mul(&zs))
            .collect();
        let expected = ModVec::from_coords(coeffs);

        let images = map_all(&ext, &pres.generators).unwrap();
        let extended = extend_module(&m, &ext).unwrap();
        let nsub = n_submodule(&extended, 2, &cfg()).unwrap();
        let pre = preimage(&images, &nsub).unwrap();
        let rel = Submodule::new(
            &bigq,
            images.len(),
            map_all(&ext, &pres.relations).unwrap(),
            cfg().order,
        )
        .unwrap();
        assert!(pre.is_member(&expected), "the named class lies in the kernel");
        assert!(!rel.is_member(&expected), "and is nonzero in the source");

        // The reported witness is a relative multiple of that class.
        let w = report.injective.witness.unwrap();
        let mut hull_gens = rel.gens.clone();
        hull_gens.push(expected);
        let hull = Submodule::new(&bigq, images.len(), hull_gens, cfg().order).unwrap();
        assert!(hull.is_member(&w.vector));
    }

    #[test]
    fn extension_to_zero_ring_gives_zero_module() {
        let (r, qr, m) = two_gen_module();
        let one = Polynomial::one(&r);
        let trivial = QuotRing::new(&r, vec![one]).unwrap();
        let ids: Vec<Polynomial> = (0..r.nvars()).map(|i| Polynomial::var(&r, i)).collect();
        let ext = BaseExtension::new(&qr, &trivial, ids).unwrap();
        let extended = extend_module(&m, &ext).unwrap();
        assert!(extended.is_zero(cfg().order).unwrap());
        let report = base_change_check(&m, 2, &ext, &cfg()).unwrap();
        assert!(report.injective.holds);
        assert!(report.surjective.holds);
    }

    #[test]
    fn ideal_must_map_into_target_ideal() {
        let r = Ring::new(FieldKind::prime(2).unwrap(), vec!["x".into()]);
        let x = Polynomial::var(&r, 0);
        let qx = QuotRing::new(&r, vec![x.clone()]).unwrap();
        let plain = QuotRing::polynomial(&r);
        let err = BaseExtension::new(&qx, &plain, vec![x]).unwrap_err();
        assert!(matches!(err, Error::IdealNotMapped { index: 0 }));
    }

    #[test]
    fn missing_variable_is_reported() {
        let small = Ring::new(FieldKind::prime(2).unwrap(), vec!["q".into()]);
        let big = Ring::new(FieldKind::prime(2).unwrap(), vec!["s".into(), "t".into()]);
        let err = BaseExtension::inclusion(
            &QuotRing::polynomial(&small),
            &QuotRing::polynomial(&big),
        )
        .unwrap_err();
        assert!(matches!(err, Error::MissingVariable(name) if name == "q"));
    }
}
