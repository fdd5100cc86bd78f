//! Independent verification of the canonical map verdicts: for gradable
//! inputs every question becomes finite linear algebra, one graded cell at
//! a time, with no Groebner bases involved.
//!
//! A cell is a multidegree D. Inside the free layer W_D (tuples times
//! coefficient monomials) the five players are row spaces or solution
//! spaces: the ideal layer, the kernel generators N, the orbit span, the
//! divided power relations K (built here by enumerated shuffles of tensor
//! powers, not the closed product formula), and the invariant preimage L
//! cut out by the transposition conditions modulo N. Defects are dimension
//! differences, so a nonzero defect in any explored cell refutes the
//! corresponding verdict, and the first defective cell must match the
//! witness degree reported by the Groebner path.
//!
//! The grading always carries plain total degree as its first coordinate,
//! prepended to any declared weights; this keeps every cell finite no
//! matter how degenerate the declared weights are. Generator shifts are
//! inferred from the relations and reported back.

mod linalg;

pub use linalg::{brute_fixed_subspace, Eliminator, Row};

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::Error;
use crate::gammats::{insertion_gens, PresentedModule};
use crate::modgb::ModVec;
use crate::polyring::{FieldKind, Grading, Monomial, MultiDeg, Polynomial};
use crate::tensoralg::{
    guardrail, index_to_tuple, multi_indices, shuffle_enumerated, tensor_power_embed,
    OrbitTensor,
};

#[derive(Clone, Debug)]
pub struct OracleOptions {
    /// Coefficient total degree budget: cells reachable by a coefficient
    /// monomial of total degree at most this are explored.
    pub d_max: u32,
    /// Declared variable weights; total degree is prepended internally.
    pub grading: Option<Grading>,
    pub guardrail: u128,
}

impl Default for OracleOptions {
    fn default() -> OracleOptions {
        OracleOptions { d_max: 6, grading: None, guardrail: 100_000 }
    }
}

#[derive(Clone, Debug)]
pub struct CellReport {
    pub degree: Vec<i64>,
    pub dim_ambient: usize,
    pub dim_kernel: usize,
    pub dim_orbit_span: usize,
    pub dim_relations: usize,
    pub dim_reached: usize,
    pub dim_invariant_preimage: usize,
    pub dim_invariant_kernel: usize,
    pub dim_ts: usize,
    pub injective_defect: usize,
    pub surjective_defect: usize,
}

#[derive(Clone, Debug)]
pub struct GradedReport {
    pub n: u32,
    pub d_max: u32,
    /// Inferred generator shifts, first coordinate total degree.
    pub shifts: Vec<Vec<i64>>,
    pub cells: Vec<CellReport>,
    pub injective_ok: bool,
    pub surjective_ok: bool,
    pub first_injective_defect: Option<Vec<i64>>,
    pub first_surjective_defect: Option<Vec<i64>>,
}

fn add_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn full_grading(nvars: usize, declared: Option<&Grading>) -> Result<Grading, Error> {
    match declared {
        None => Ok(Grading::total_degree(nvars)),
        Some(g) => {
            if g.weights.len() != nvars || !g.is_uniform() {
                return Err(Error::BadGrading);
            }
            let weights = g
                .weights
                .iter()
                .map(|w| {
                    let mut full = Vec::with_capacity(w.len() + 1);
                    full.push(1);
                    full.extend_from_slice(w);
                    full
                })
                .collect();
            Ok(Grading { weights })
        }
    }
}

fn poly_mdeg(p: &Polynomial, full: &Grading) -> Result<Option<Vec<i64>>, Error> {
    match p.multidegree(full) {
        MultiDeg::ZeroPoly => Ok(None),
        MultiDeg::Homogeneous(d) => Ok(Some(d)),
        MultiDeg::Inhomogeneous => Err(Error::Inhomogeneous),
    }
}

/// Shifts delta_i with mdeg(r_i) + delta_i constant across each relation.
/// Every connected component of generators is rooted at shift zero.
fn infer_shifts(module: &PresentedModule, full: &Grading) -> Result<Vec<Vec<i64>>, Error> {
    let m = module.rank;
    let c = full.dim();
    let rel_degs: Vec<Vec<Option<Vec<i64>>>> = module
        .relations
        .iter()
        .map(|r| r.coords().iter().map(|p| poly_mdeg(p, full)).collect())
        .collect::<Result<_, _>>()?;
    let mut shifts: Vec<Option<Vec<i64>>> = vec![None; m];
    for root in 0..m {
        if shifts[root].is_some() {
            continue;
        }
        shifts[root] = Some(vec![0; c]);
        let mut changed = true;
        while changed {
            changed = false;
            for degs in &rel_degs {
                let anchor = degs.iter().enumerate().find_map(|(i, d)| {
                    d.as_ref().zip(shifts[i].as_ref()).map(|(d, s)| add_vec(d, s))
                });
                let Some(rel_deg) = anchor else { continue };
                for (j, d) in degs.iter().enumerate() {
                    let Some(d) = d else { continue };
                    let want = sub_vec(&rel_deg, d);
                    match &shifts[j] {
                        None => {
                            shifts[j] = Some(want);
                            changed = true;
                        }
                        Some(s) if *s != want => return Err(Error::Inhomogeneous),
                        _ => {}
                    }
                }
            }
        }
    }
    Ok(shifts.into_iter().map(|s| s.expect("all shifts set")).collect())
}

/// Common multidegree of a homogeneous tuple vector, None when zero.
fn vec_mdeg(
    v: &ModVec,
    tuple_shift: &[Vec<i64>],
    full: &Grading,
) -> Result<Option<Vec<i64>>, Error> {
    let mut out: Option<Vec<i64>> = None;
    for (idx, p) in v.coords().iter().enumerate() {
        let Some(d) = poly_mdeg(p, full)? else { continue };
        let total = add_vec(&d, &tuple_shift[idx]);
        match &out {
            None => out = Some(total),
            Some(t) if *t != total => {
                return Err(Error::Internal(
                    "graded verifier produced an inhomogeneous generator".into(),
                ))
            }
            _ => {}
        }
    }
    Ok(out)
}

/// The divided power relation generators, by brute force: the s-fold tensor
/// power of each relation, shuffled through every complementary orbit sum
/// by explicit permutation sums.
fn enumerated_relation_gens(module: &PresentedModule, n: u32) -> Vec<ModVec> {
    let m = module.rank;
    let ring = &module.qr.base;
    let mut out = Vec::new();
    for rel in &module.relations {
        let coords: Vec<Polynomial> = rel.coords().to_vec();
        for s in 1..=n {
            let power = tensor_power_embed(&coords, s);
            for at in 0..multi_indices(m, n - s).len() {
                let orbit = OrbitTensor::basis(ring, m, n - s, at).embed();
                let g = shuffle_enumerated(&power, s, &orbit, n - s, m);
                if !g.is_zero() {
                    out.push(g);
                }
            }
        }
    }
    out
}

fn monomials_by_weight(
    nvars: usize,
    full: &Grading,
    max_total: i64,
) -> BTreeMap<Vec<i64>, Vec<Monomial>> {
    let mut map: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
    let mut exps = vec![0u16; nvars];
    fn rec(
        var: usize,
        budget: i64,
        nvars: usize,
        exps: &mut Vec<u16>,
        full: &Grading,
        map: &mut BTreeMap<Vec<i64>, Vec<Monomial>>,
    ) {
        if var == nvars {
            let mono = Monomial { exps: exps.clone() };
            map.entry(mono.weighted_degree(&full.weights)).or_default().push(mono);
            return;
        }
        for e in 0..=budget {
            exps[var] = e as u16;
            rec(var + 1, budget - e, nvars, exps, full, map);
        }
        exps[var] = 0;
    }
    if max_total >= 0 {
        rec(0, max_total, nvars, &mut exps, full, &mut map);
    }
    map
}

struct CellBasis {
    cols: usize,
    col_of: HashMap<(usize, Monomial), usize>,
    /// Column indices per tuple, parallel to its monomial list.
    by_tuple: Vec<Vec<usize>>,
}

fn build_cell_basis(
    degree: &[i64],
    rank: usize,
    tuple_shift: &[Vec<i64>],
    table: &BTreeMap<Vec<i64>, Vec<Monomial>>,
) -> CellBasis {
    let mut col_of = HashMap::new();
    let mut by_tuple = Vec::with_capacity(rank);
    for t in 0..rank {
        let w = sub_vec(degree, &tuple_shift[t]);
        let list: &[Monomial] = if w[0] < 0 {
            &[]
        } else {
            table.get(&w).map(Vec::as_slice).unwrap_or(&[])
        };
        let mut cols = Vec::with_capacity(list.len());
        for mono in list {
            cols.push(col_of.len());
            col_of.insert((t, mono.clone()), col_of.len());
        }
        by_tuple.push(cols);
    }
    CellBasis { cols: col_of.len(), col_of, by_tuple }
}

impl CellBasis {
    /// The row of multiplier * v, or an internal error if a product escapes
    /// the cell (which would mean a degree bookkeeping bug).
    fn gen_row(
        &self,
        field: &FieldKind,
        v: &ModVec,
        multiplier: &Monomial,
    ) -> Result<Row, Error> {
        let mut row = Row::zero(field, self.cols);
        for (t, p) in v.coords().iter().enumerate() {
            for (mono, coef) in p.terms() {
                let key = (t, mono.mul(multiplier));
                let col = *self.col_of.get(&key).ok_or_else(|| {
                    Error::Internal("graded verifier lost track of a monomial".into())
                })?;
                let prev = row.get(col, field);
                row.set(col, prev.add(coef));
            }
        }
        Ok(row)
    }
}

/// All multiples of the homogeneous generators that land in the cell,
/// inserted into the eliminator.
fn insert_gen_multiples(
    elim: &mut Eliminator,
    cell: &CellBasis,
    degree: &[i64],
    field: &FieldKind,
    gens: &[(ModVec, Vec<i64>)],
    table: &BTreeMap<Vec<i64>, Vec<Monomial>>,
) -> Result<(), Error> {
    for (v, gdeg) in gens {
        let want = sub_vec(degree, gdeg);
        if want[0] < 0 {
            continue;
        }
        let Some(mults) = table.get(&want) else { continue };
        for mu in mults {
            elim.insert(cell.gen_row(field, v, mu)?);
        }
    }
    Ok(())
}

pub fn graded_verdict(
    module: &PresentedModule,
    n: u32,
    opts: &OracleOptions,
) -> Result<GradedReport, Error> {
    let ring = &module.qr.base;
    let field = ring.field.clone();
    let m = module.rank;
    let rank = guardrail(m, n, opts.guardrail)?;
    let full = full_grading(ring.nvars(), opts.grading.as_ref())?;
    let shifts = infer_shifts(module, &full)?;

    let empty_report = |shifts: Vec<Vec<i64>>| GradedReport {
        n,
        d_max: opts.d_max,
        shifts,
        cells: Vec::new(),
        injective_ok: true,
        surjective_ok: true,
        first_injective_defect: None,
        first_surjective_defect: None,
    };
    if rank == 0 {
        return Ok(empty_report(shifts));
    }

    // Homogeneity of the quotient ideal, with multidegrees.
    let mut ideal: Vec<(Polynomial, Vec<i64>)> = Vec::new();
    for g in &module.qr.ideal {
        if let Some(d) = poly_mdeg(g, &full)? {
            ideal.push((g.clone(), d));
        }
    }

    let tuple_shift: Vec<Vec<i64>> = (0..rank)
        .map(|idx| {
            let t = index_to_tuple(idx, m, n);
            let mut acc = vec![0; full.dim()];
            for &g in &t {
                acc = add_vec(&acc, &shifts[g]);
            }
            acc
        })
        .collect();

    // Generators with their multidegrees; zero vectors drop out.
    let with_degs = |vs: Vec<ModVec>| -> Result<Vec<(ModVec, Vec<i64>)>, Error> {
        let mut out = Vec::new();
        for v in vs {
            if let Some(d) = vec_mdeg(&v, &tuple_shift, &full)? {
                out.push((v, d));
            }
        }
        Ok(out)
    };
    let n_gens = with_degs(insertion_gens(module, n))?;
    let span_gens = with_degs(
        (0..multi_indices(m, n).len())
            .map(|at| OrbitTensor::basis(ring, m, n, at).embed())
            .collect(),
    )?;
    let k_gens = with_degs(enumerated_relation_gens(module, n))?;

    // Coefficient monomials, bounded so that every tuple of every explored
    // cell has its complete monomial basis available.
    let shift0: Vec<i64> = tuple_shift.iter().map(|s| s[0]).collect();
    let spread = shift0.iter().max().unwrap() - shift0.iter().min().unwrap();
    let table = monomials_by_weight(ring.nvars(), &full, i64::from(opts.d_max) + spread);

    let mut cells: BTreeSet<Vec<i64>> = BTreeSet::new();
    let distinct_shifts: BTreeSet<&Vec<i64>> = tuple_shift.iter().collect();
    for w in table.keys().filter(|w| w[0] <= i64::from(opts.d_max)) {
        for ts in &distinct_shifts {
            cells.insert(add_vec(w, ts));
        }
    }

    // Transpositions as column permutations are cell-local; precompute the
    // tuple swaps once.
    let swaps: Vec<Vec<usize>> = (0..(n as usize).saturating_sub(1))
        .map(|j| {
            (0..rank)
                .map(|idx| {
                    let mut t = index_to_tuple(idx, m, n);
                    t.swap(j, j + 1);
                    crate::tensoralg::tuple_to_index(&t, m)
                })
                .collect()
        })
        .collect();

    let mut reports = Vec::new();
    let mut first_inj: Option<Vec<i64>> = None;
    let mut first_surj: Option<Vec<i64>> = None;

    for degree in &cells {
        let cell = build_cell_basis(degree, rank, &tuple_shift, &table);
        if cell.cols == 0 {
            continue;
        }

        // The ideal layer lives in every subspace.
        let mut elim_ideal = Eliminator::new(&field, cell.cols);
        for (g, gdeg) in &ideal {
            for t in 0..rank {
                let want = sub_vec(&sub_vec(degree, &tuple_shift[t]), gdeg);
                if want[0] < 0 {
                    continue;
                }
                let Some(mults) = table.get(&want) else { continue };
                for mu in mults {
                    let mut row = Row::zero(&field, cell.cols);
                    for (mono, coef) in g.terms() {
                        let col = *cell.col_of.get(&(t, mono.mul(mu))).ok_or_else(|| {
                            Error::Internal("graded verifier lost track of a monomial".into())
                        })?;
                        let prev = row.get(col, &field);
                        row.set(col, prev.add(coef));
                    }
                    elim_ideal.insert(row);
                }
            }
        }

        let mut elim_n = elim_ideal.clone();
        insert_gen_multiples(&mut elim_n, &cell, degree, &field, &n_gens, &table)?;
        let mut elim_span = elim_ideal.clone();
        insert_gen_multiples(&mut elim_span, &cell, degree, &field, &span_gens, &table)?;
        let mut elim_k = elim_ideal;
        insert_gen_multiples(&mut elim_k, &cell, degree, &field, &k_gens, &table)?;
        let mut elim_sum = elim_n.clone();
        insert_gen_multiples(&mut elim_sum, &cell, degree, &field, &span_gens, &table)?;

        let dim_n = elim_n.rank();
        let dim_span = elim_span.rank();
        let dim_k = elim_k.rank();
        let dim_sum = elim_sum.rank();

        // L: kernel of z -> ((1 - sigma_j) z mod N)_j.
        let dim_l = if swaps.is_empty() {
            cell.cols
        } else {
            let block = match field.characteristic() {
                2 => cell.cols.div_ceil(64) * 64,
                _ => cell.cols,
            };
            let mut elim_phi = Eliminator::new(&field, block.max(1) * swaps.len());
            // Column permutations per swap: tuple t moves, the monomial stays.
            let col_perm: Vec<Vec<usize>> = swaps
                .iter()
                .map(|swap| {
                    let mut perm = vec![0usize; cell.cols];
                    for t in 0..rank {
                        for (i, &c) in cell.by_tuple[t].iter().enumerate() {
                            perm[c] = cell.by_tuple[swap[t]][i];
                        }
                    }
                    perm
                })
                .collect();
            for c in 0..cell.cols {
                if col_perm.iter().all(|p| p[c] == c) {
                    continue;
                }
                let parts: Vec<Row> = col_perm
                    .iter()
                    .map(|p| {
                        let mut part = elim_n.unit_nf(c);
                        part.sub_scaled(&field.one(), &elim_n.unit_nf(p[c]));
                        part
                    })
                    .collect();
                elim_phi.insert(Row::concat(&field, &parts, cell.cols));
            }
            cell.cols - elim_phi.rank()
        };

        if dim_sum > dim_l {
            return Err(Error::Internal(
                "graded verifier: the reached subspace escapes the invariant preimage".into(),
            ));
        }
        let dim_inv = dim_n + dim_span - dim_sum;
        if dim_k > dim_inv {
            return Err(Error::Internal(
                "graded verifier: relations escape the invariant kernel".into(),
            ));
        }

        let injective_defect = dim_inv - dim_k;
        let surjective_defect = dim_l - dim_sum;
        if injective_defect > 0 && first_inj.is_none() {
            first_inj = Some(degree.clone());
        }
        if surjective_defect > 0 && first_surj.is_none() {
            first_surj = Some(degree.clone());
        }
        reports.push(CellReport {
            degree: degree.clone(),
            dim_ambient: cell.cols,
            dim_kernel: dim_n,
            dim_orbit_span: dim_span,
            dim_relations: dim_k,
            dim_reached: dim_sum,
            dim_invariant_preimage: dim_l,
            dim_invariant_kernel: dim_inv,
            dim_ts: dim_l - dim_n,
            injective_defect,
            surjective_defect,
        });
    }

    Ok(GradedReport {
        n,
        d_max: opts.d_max,
        shifts,
        injective_ok: first_inj.is_none(),
        surjective_ok: first_surj.is_none(),
        first_injective_defect: first_inj,
        first_surjective_defect: first_surj,
        cells: reports,
    })
}
