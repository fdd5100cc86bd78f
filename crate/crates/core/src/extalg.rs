//! Degreewise algebra checks and the exterior square.
//!
//! For the symmetric algebra B = S_A(M), a canonical map failure in any
//! graded piece S^k(M) certifies the same failure for B, so the pieces are
//! presented as modules and handed back to the degree-n machinery.
//!
//! The exterior square enters through the kernel identity at n = 2: the
//! kernel of TS^2(M) -> wedge^2(M) is exactly the image of the canonical
//! map, because the diagonal submodule <x ox x> of T^2(F) coincides with
//! the orbit-sum span by polarization. A surjectivity witness therefore has
//! a nonzero wedge square class, which rules out any compatible TS-module
//! structure on wedge^2.

use std::collections::HashMap;

use crate::error::Error;
use crate::gammats::{
    check_canonical, l_submodule_given, n_submodule, short_circuit, span_submodule,
    surjective_given, CanonicalMapReport, Config, PresentedModule, Witness,
};
use crate::modgb::{submodule_equal, ModVec, Submodule};
use crate::polyring::Polynomial;
use crate::tensoralg::{multi_indices, tuple_to_index, MultiIndex};

/// S^k(M) as a presented module: one generator per degree-k monomial in the
/// module generators, one relation per (module relation, degree k-1
/// monomial) pair.
pub fn sym_power(module: &PresentedModule, k: u32) -> Result<PresentedModule, Error> {
    let m = module.rank;
    let ring = &module.qr.base;
    let gens = multi_indices(m, k);
    let rank = gens.len();
    let pos: HashMap<MultiIndex, usize> =
        gens.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
    let mut relations = Vec::new();
    if k > 0 {
        for rel in &module.relations {
            for mu in multi_indices(m, k - 1) {
                let mut coords = vec![Polynomial::zero(ring); rank];
                for i in 0..m {
                    if rel.coord(i).is_zero() {
                        continue;
                    }
                    let mut target = mu.clone();
                    target.0[i] += 1;
                    let idx = pos[&target];
                    coords[idx] = coords[idx].add(rel.coord(i));
                }
                let v = ModVec::from_coords(coords);
                if !v.is_zero() {
                    relations.push(v);
                }
            }
        }
    }
    PresentedModule::new(&module.qr, rank, relations)
}

#[derive(Clone, Debug)]
pub struct DegreeReport {
    pub degree: u32,
    pub report: CanonicalMapReport,
}

/// Runs the canonical map checks on S^k(M) for each requested k. A failure
/// at any degree certifies the same failure for the whole symmetric algebra.
pub fn algebra_degreewise_check(
    module: &PresentedModule,
    n: u32,
    degrees: &[u32],
    cfg: &Config,
) -> Result<Vec<DegreeReport>, Error> {
    degrees
        .iter()
        .map(|&k| {
            let piece = sym_power(module, k)?;
            Ok(DegreeReport { degree: k, report: check_canonical(&piece, n, cfg)? })
        })
        .collect()
}

/// The diagonal submodule of T^2(F): squares e_i ox e_i and polarized
/// squares e_i ox e_j + e_j ox e_i. Every x ox x is a coefficient
/// combination of these, and each of these is an integer combination of
/// squares.
pub fn diagonal_submodule(module: &PresentedModule, cfg: &Config) -> Result<Submodule, Error> {
    let m = module.rank;
    let ring = &module.qr.base;
    let rank = m * m;
    let one = Polynomial::one(ring);
    let mut gens = Vec::new();
    for i in 0..m {
        gens.push(ModVec::unit(ring, rank, tuple_to_index(&[i, i], m), one.clone()));
    }
    for i in 0..m {
        for j in (i + 1)..m {
            let a = ModVec::unit(ring, rank, tuple_to_index(&[i, j], m), one.clone());
            let b = ModVec::unit(ring, rank, tuple_to_index(&[j, i], m), one.clone());
            gens.push(a.add(&b));
        }
    }
    Submodule::new(&module.qr, rank, gens, cfg.order)
}

#[derive(Clone, Debug)]
pub struct WedgeKernelReport {
    /// The diagonal submodule equals the orbit-sum span (polarization).
    pub diagonal_is_orbit_span: bool,
    /// The pullback of ker(TS^2(M) -> wedge^2(M)) equals D + N, i.e. the
    /// kernel is the image of the canonical map.
    pub kernel_is_canonical_image: bool,
}

impl WedgeKernelReport {
    pub fn holds(&self) -> bool {
        self.diagonal_is_orbit_span && self.kernel_is_canonical_image
    }
}

/// Certifies the kernel identity for the exterior square of M.
pub fn wedge_kernel_check(
    module: &PresentedModule,
    cfg: &Config,
) -> Result<WedgeKernelReport, Error> {
    let n = 2;
    let dsub = diagonal_submodule(module, cfg)?;
    let span = span_submodule(module, n, cfg)?;
    let diagonal_is_orbit_span = submodule_equal(&dsub, &span)?.equal();

    let nsub = n_submodule(module, n, cfg)?;
    let dn = dsub.sum(&nsub)?;
    let lsub = l_submodule_given(module, n, cfg, &nsub)?;
    let contained = lsub.contains(&dn);
    let pulled_back = dn.intersect(&lsub)?;
    let kernel_is_canonical_image = contained && submodule_equal(&pulled_back, &dn)?.equal();

    Ok(WedgeKernelReport { diagonal_is_orbit_span, kernel_is_canonical_image })
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub obstruction: Option<Witness>,
    pub note: String,
}

/// Looks for a class of TS^2(M) outside the image of the canonical map. By
/// the kernel identity such a class has nonzero wedge square, so no
/// TS^2(M)-module structure on wedge^2(M) can make the quotient map linear:
/// the class would have to act as zero on 1 ox 1 yet map to something
/// nonzero.
pub fn ts_module_structure_obstruction(
    module: &PresentedModule,
    cfg: &Config,
) -> Result<ObstructionReport, Error> {
    let n = 2;
    if let Some(r) = short_circuit(module, n, cfg)? {
        return Ok(ObstructionReport {
            obstruction: None,
            note: format!("no obstruction found: {}", r.note.unwrap_or_default()),
        });
    }
    let nsub = n_submodule(module, n, cfg)?;
    let span = span_submodule(module, n, cfg)?;
    let lsub = l_submodule_given(module, n, cfg, &nsub)?;
    let surj = surjective_given(module, n, cfg, &nsub, &span, &lsub)?;
    match surj.witness {
        None => Ok(ObstructionReport {
            obstruction: None,
            note: "no obstruction found: the canonical map is surjective".to_string(),
        }),
        Some(w) => {
            // Re-verify through the diagonal form of the image.
            let dsub = diagonal_submodule(module, cfg)?;
            let dn = dsub.sum(&nsub)?;
            let ok = !w.vector.is_zero() && lsub.is_member(&w.vector) && !dn.is_member(&w.vector);
            if !ok {
                return Err(Error::Internal(
                    "obstruction witness failed the wedge square re-verification".into(),
                ));
            }
            Ok(ObstructionReport {
                obstruction: Some(w),
                note: "the witness class has nonzero wedge square, so no TS module \
                       structure on the exterior square is compatible with the \
                       canonical surjection"
                    .to_string(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modgb::QuotRing;
    use crate::polyring::{FieldKind, Ring};
    use std::sync::Arc;

    fn cfg() -> Config {
        Config::default()
    }

    fn char3_module() -> (Arc<Ring>, PresentedModule) {
        let r = Ring::new(FieldKind::prime(3).unwrap(), vec!["s".into(), "t".into()]);
        let qr = QuotRing::polynomial(&r);
        let s = Polynomial::var(&r, 0);
        let t = Polynomial::var(&r, 1);
        let m =
            PresentedModule::new(&qr, 2, vec![ModVec::from_coords(vec![s, t.neg()])]).unwrap();
        (r, m)
    }

    #[test]
    fn sym_power_degree_one_is_the_module() {
        let (_, m) = char3_module();
        let s1 = sym_power(&m, 1).unwrap();
        assert_eq!(s1.rank, m.rank);
        assert_eq!(s1.relations, m.relations);
        let s0 = sym_power(&m, 0).unwrap();
        assert_eq!(s0.rank, 1);
        assert!(s0.relations.is_empty());
    }

    #[test]
    fn sym_power_square_of_two_generators() {
        // Relations of S^2: the defining relation times each generator,
        // written in the monomial basis m1^2, m1 m2, m2^2.
        let (r, m) = char3_module();
        let s = Polynomial::var(&r, 0);
        let t = Polynomial::var(&r, 1);
        let zero = Polynomial::zero(&r);
        let s2 = sym_power(&m, 2).unwrap();
        assert_eq!(s2.rank, 3);
        assert_eq!(
            s2.relations,
            vec![
                ModVec::from_coords(vec![s.clone(), t.neg(), zero.clone()]),
                ModVec::from_coords(vec![zero, s, t.neg()]),
            ]
        );
    }

    #[test]
    fn degreewise_check_sees_cyclic_kernel() {
        // S_A(A/(x)) = A[u]/(xu); its degree-1 piece is A/(x) again, so the
        // square map fails injectivity there in characteristic 2.
        let r = Ring::new(FieldKind::prime(2).unwrap(), vec!["x".into()]);
        let qr = QuotRing::polynomial(&r);
        let x = Polynomial::var(&r, 0);
        let m = PresentedModule::new(&qr, 1, vec![ModVec::from_coords(vec![x])]).unwrap();
        let reports = algebra_degreewise_check(&m, 2, &[0, 1], &cfg()).unwrap();
        assert!(reports[0].report.injective.holds, "S^0 = A is free");
        assert!(reports[0].report.surjective.holds);
        assert!(!reports[1].report.injective.holds, "S^1 = M has the kernel");
    }

    #[test]
    fn degreewise_check_sees_cubic_surjectivity_failure() {
        let (_, m) = char3_module();
        let reports = algebra_degreewise_check(&m, 3, &[1], &cfg()).unwrap();
        assert!(!reports[0].report.surjective.holds);
    }

    #[test]
    fn diagonal_matches_orbit_span() {
        let r = Ring::new(FieldKind::prime(2).unwrap(), vec!["s".into(), "t".into()]);
        let qr = QuotRing::polynomial(&r);
        for rank in 1..=4 {
            let m = PresentedModule::free(&qr, rank);
            let report = wedge_kernel_check(&m, &cfg()).unwrap();
            assert!(report.diagonal_is_orbit_span, "rank {}", rank);
            assert!(report.kernel_is_canonical_image, "rank {}", rank);
        }
    }

    #[test]
    fn squares_land_in_the_diagonal() {
        // x ox x for a nontrivial x, against the finite generating set.
        let r = Ring::new(FieldKind::prime(3).unwrap(), vec!["s".into(), "t".into()]);
        let qr = QuotRing::polynomial(&r);
        let s = Polynomial::var(&r, 0);
        let t = Polynomial::var(&r, 1);
        let m = PresentedModule::free(&qr, 2);
        let d = diagonal_submodule(&m, &cfg()).unwrap();
        // x = s e1 + (t + 1) e2; x ox x has coords (s^2, s(t+1), (t+1)s, (t+1)^2).
        let u = t.add(&Polynomial::one(&r));
        let sq = ModVec::from_coords(vec![
            s.mul(&s),
            s.mul(&u),
            u.mul(&s),
            u.mul(&u),
        ]);
        assert!(d.is_member(&sq));
    }

    #[test]
    fn wedge_kernel_holds_on_presented_modules() {
        let (_, m) = char3_module();
        let report = wedge_kernel_check(&m, &cfg()).unwrap();
        assert!(report.holds());
    }

    #[test]
    fn no_obstruction_for_small_modules() {
        let r = Ring::new(FieldKind::prime(2).unwrap(), vec!["s".into(), "t".into()]);
        let qr = QuotRing::polynomial(&r);
        let free = PresentedModule::free(&qr, 3);
        let report = ts_module_structure_obstruction(&free, &cfg()).unwrap();
        assert!(report.obstruction.is_none());

        // Two-generator modules are always surjective at n = 2,
        // so no obstruction can appear.
        let s = Polynomial::var(&r, 0);
        let t = Polynomial::var(&r, 1);
        let m = PresentedModule::new(&qr, 2, vec![ModVec::from_coords(vec![s, t])]).unwrap();
        let report = ts_module_structure_obstruction(&m, &cfg()).unwrap();
        assert!(report.obstruction.is_none());
        assert!(report.note.contains("no obstruction"));
    }
}
