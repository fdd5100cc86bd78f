//! Executes a parsed script: declarations build rings, extensions, and
//! modules in order; queries run against the objects visible at their
//! position. Each query is independent, so `--parallel` may run them on
//! separate threads; outcomes keep query order either way.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use gts_core::basechange::{base_change_check, extend_module, BaseChangeReport, BaseExtension};
use gts_core::extalg::{
    algebra_degreewise_check, ts_module_structure_obstruction, wedge_kernel_check, DegreeReport,
    ObstructionReport, WedgeKernelReport,
};
use gts_core::gammats::{check_canonical, CanonicalMapReport, Config, PresentedModule};
use gts_core::modgb::{gb_stats, GbStats, ModVec, QuotRing};
use gts_core::oracle::{graded_verdict, GradedReport, OracleOptions};
use gts_core::polyring::{Grading, MonomialOrder, Polynomial};

use crate::parse::{Script, Stmt};

#[derive(Clone, Debug)]
pub struct Flags {
    pub order: MonomialOrder,
    pub d_max: u32,
    pub guardrail: u128,
    pub oracle: bool,
    pub witness_verify: bool,
    pub timings: bool,
    pub parallel: bool,
}

impl Default for Flags {
    fn default() -> Flags {
        Flags {
            order: MonomialOrder::DegRevLex,
            d_max: 6,
            guardrail: 100_000,
            oracle: false,
            witness_verify: true,
            timings: false,
            parallel: false,
        }
    }
}

impl Flags {
    pub fn config(&self) -> Config {
        Config {
            order: self.order,
            guardrail: self.guardrail,
            verify_witnesses: self.witness_verify,
        }
    }
}

#[derive(Debug)]
pub enum Payload {
    Canonical {
        report: CanonicalMapReport,
        oracle: Option<GradedReport>,
        oracle_error: Option<String>,
    },
    BaseChange(BaseChangeReport),
    SymPower(Vec<DegreeReport>),
    Wedge(WedgeKernelReport),
    Obstruction(ObstructionReport),
    Oracle(GradedReport),
}

#[derive(Debug)]
pub struct QueryOutcome {
    pub index: usize,
    /// The query statement, printed.
    pub query: String,
    pub module: String,
    pub result: Result<Payload, String>,
    pub stats: GbStats,
    pub millis: u128,
}

impl QueryOutcome {
    /// None when no oracle ran for this query.
    pub fn oracle_agrees(&self) -> Option<bool> {
        match &self.result {
            Ok(Payload::Canonical { report, oracle: Some(o), .. }) => Some(
                o.injective_ok == report.injective.holds
                    && o.surjective_ok == report.surjective.holds,
            ),
            _ => None,
        }
    }
}

struct Env {
    rings: HashMap<String, Arc<QuotRing>>,
    extensions: HashMap<String, BaseExtension>,
    sources: HashMap<String, String>,
    /// Module name -> (ring name, module).
    modules: HashMap<String, (String, PresentedModule)>,
    gradings: HashMap<String, Grading>,
}

impl Env {
    /// The grading in force for a ring: its own, or the nearest graded
    /// ancestor with the same variables (a quotient extension keeps the
    /// grading of the ring it divides).
    fn grading_for(&self, ring: &str) -> Option<Grading> {
        let mut name = ring;
        loop {
            if let Some(g) = self.gradings.get(name) {
                return Some(g.clone());
            }
            let source = self.sources.get(name)?;
            let same_vars = match (self.rings.get(name), self.rings.get(source)) {
                (Some(a), Some(b)) => a.base.vars == b.base.vars,
                _ => false,
            };
            if !same_vars {
                return None;
            }
            name = source;
        }
    }
}

fn context(stmt: &Stmt, e: impl std::fmt::Display) -> String {
    format!("in `{stmt}`: {e}")
}

struct Job {
    index: usize,
    stmt: Stmt,
    module: PresentedModule,
    extension: Option<BaseExtension>,
    grading: Option<Grading>,
}

/// Builds every declaration, then runs the queries. Declaration errors abort
/// with a message; query errors are recorded per query and the run goes on.
pub fn run_script(script: &Script, flags: &Flags) -> Result<Vec<QueryOutcome>, String> {
    let mut env = Env {
        rings: HashMap::new(),
        extensions: HashMap::new(),
        sources: HashMap::new(),
        modules: HashMap::new(),
        gradings: HashMap::new(),
    };
    let mut jobs: Vec<Job> = Vec::new();

    for stmt in &script.stmts {
        match stmt {
            Stmt::Ring { name, field, vars, ideal } => {
                let kind = field.kind().map_err(|e| context(stmt, e))?;
                let base = gts_core::polyring::Ring::new(kind, vars.clone());
                let ideal = retarget(ideal, &base);
                let qr = QuotRing::new(&base, ideal).map_err(|e| context(stmt, e))?;
                env.rings.insert(name.clone(), qr);
            }
            Stmt::Extend { name, source, vars, ideal } => {
                let src = Arc::clone(&env.rings[source]);
                let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
                let target_base = src.base.extended(&refs);
                let images: Vec<Polynomial> = (0..src.base.nvars())
                    .map(|i| Polynomial::var(&target_base, i))
                    .collect();
                let mut target_ideal = Vec::new();
                for g in &src.ideal {
                    target_ideal
                        .push(g.map_vars(&target_base, &images).map_err(|e| context(stmt, e))?);
                }
                target_ideal.extend(retarget(ideal, &target_base));
                let tgt =
                    QuotRing::new(&target_base, target_ideal).map_err(|e| context(stmt, e))?;
                let ext =
                    BaseExtension::inclusion(&src, &tgt).map_err(|e| context(stmt, e))?;
                env.rings.insert(name.clone(), tgt);
                env.extensions.insert(name.clone(), ext);
                env.sources.insert(name.clone(), source.clone());
            }
            Stmt::ModuleCoker { name, ring, rank, relations } => {
                let qr = &env.rings[ring];
                let relations = relations
                    .iter()
                    .map(|r| ModVec::from_coords(retarget(r.coords(), &qr.base)))
                    .collect();
                let m = PresentedModule::new(qr, *rank, relations)
                    .map_err(|e| context(stmt, e))?;
                env.modules.insert(name.clone(), (ring.clone(), m));
            }
            Stmt::ModuleExtend { name, module, via } => {
                let (_, m) = &env.modules[module];
                let ext = &env.extensions[via];
                let extended = extend_module(m, ext).map_err(|e| context(stmt, e))?;
                env.modules.insert(name.clone(), (via.clone(), extended));
            }
            Stmt::Grade { ring, weights } => {
                env.gradings.insert(ring.clone(), Grading { weights: weights.clone() });
            }
            query => {
                let (module_name, via) = match query {
                    Stmt::CheckCanonical { module, .. }
                    | Stmt::CheckSymPower { module, .. }
                    | Stmt::CheckWedge { module }
                    | Stmt::CheckObstruction { module }
                    | Stmt::Oracle { module, .. } => (module, None),
                    Stmt::CheckBaseChange { module, via, .. } => (module, Some(via)),
                    _ => unreachable!("declarations handled above"),
                };
                let (ring_name, module) = env.modules[module_name].clone();
                jobs.push(Job {
                    index: jobs.len(),
                    stmt: query.clone(),
                    module,
                    extension: via.map(|v| env.extensions[v].clone()),
                    grading: env.grading_for(&ring_name),
                });
            }
        }
    }

    if flags.parallel {
        Ok(std::thread::scope(|scope| {
            let handles: Vec<_> =
                jobs.iter().map(|job| scope.spawn(|| run_job(job, flags))).collect();
            handles.into_iter().map(|h| h.join().expect("query thread")).collect()
        }))
    } else {
        Ok(jobs.iter().map(|job| run_job(job, flags)).collect())
    }
}

// Rebuilds values on a structurally equal ring created by this run, so the
// executed objects never alias parse-time state.
fn retarget(polys: &[Polynomial], ring: &Arc<gts_core::polyring::Ring>) -> Vec<Polynomial> {
    let images: Vec<Polynomial> =
        (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
    polys
        .iter()
        .map(|p| p.map_vars(ring, &images).expect("same variables"))
        .collect()
}

fn run_job(job: &Job, flags: &Flags) -> QueryOutcome {
    let cfg = flags.config();
    let before = gb_stats();
    let start = Instant::now();
    let result = match &job.stmt {
        Stmt::CheckCanonical { n, .. } => {
            check_canonical(&job.module, *n, &cfg).map_err(|e| e.to_string()).map(|report| {
                let (oracle, oracle_error) = if flags.oracle {
                    let opts = OracleOptions {
                        d_max: flags.d_max,
                        grading: job.grading.clone(),
                        guardrail: flags.guardrail,
                    };
                    match graded_verdict(&job.module, *n, &opts) {
                        Ok(o) => (Some(o), None),
                        Err(e) => (None, Some(e.to_string())),
                    }
                } else {
                    (None, None)
                };
                Payload::Canonical { report, oracle, oracle_error }
            })
        }
        Stmt::CheckBaseChange { n, .. } => {
            let ext = job.extension.as_ref().expect("resolved extension");
            base_change_check(&job.module, *n, ext, &cfg)
                .map(Payload::BaseChange)
                .map_err(|e| e.to_string())
        }
        Stmt::CheckSymPower { n, degrees, .. } => {
            algebra_degreewise_check(&job.module, *n, degrees, &cfg)
                .map(Payload::SymPower)
                .map_err(|e| e.to_string())
        }
        Stmt::CheckWedge { .. } => {
            wedge_kernel_check(&job.module, &cfg).map(Payload::Wedge).map_err(|e| e.to_string())
        }
        Stmt::CheckObstruction { .. } => ts_module_structure_obstruction(&job.module, &cfg)
            .map(Payload::Obstruction)
            .map_err(|e| e.to_string()),
        Stmt::Oracle { n, d_max, .. } => {
            let opts = OracleOptions {
                d_max: d_max.unwrap_or(flags.d_max),
                grading: job.grading.clone(),
                guardrail: flags.guardrail,
            };
            graded_verdict(&job.module, *n, &opts)
                .map(Payload::Oracle)
                .map_err(|e| e.to_string())
        }
        _ => unreachable!("only queries become jobs"),
    };
    let module = match &job.stmt {
        Stmt::CheckCanonical { module, .. }
        | Stmt::CheckBaseChange { module, .. }
        | Stmt::CheckSymPower { module, .. }
        | Stmt::CheckWedge { module }
        | Stmt::CheckObstruction { module }
        | Stmt::Oracle { module, .. } => module.clone(),
        _ => unreachable!(),
    };
    QueryOutcome {
        index: job.index,
        query: job.stmt.to_string(),
        module,
        result,
        stats: gb_stats().since(&before),
        millis: start.elapsed().as_millis(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn canonical_check_on_torsion_line() {
        let script = parse("ring A = GF(2)[x]; module M = coker A^1 / [x]; check canonical n=2 M;")
            .unwrap();
        let out = run_script(&script, &Flags::default()).unwrap();
        assert_eq!(out.len(), 1);
        let Ok(Payload::Canonical { report, .. }) = &out[0].result else {
            panic!("{:?}", out[0].result)
        };
        assert!(!report.injective.holds);
        assert!(report.surjective.holds);
        assert_eq!(report.injective.witness.as_ref().unwrap().class, "(x)*m1^(2)");
    }

    #[test]
    fn oracle_flag_checks_agreement() {
        let script = parse("ring A = GF(2)[x]; module M = coker A^1 / [x]; check canonical n=2 M;")
            .unwrap();
        let flags = Flags { oracle: true, ..Flags::default() };
        let out = run_script(&script, &flags).unwrap();
        assert_eq!(out[0].oracle_agrees(), Some(true));
    }

    #[test]
    fn extension_and_base_change_run() {
        let script = parse(
            "ring A = GF(2)[s,t];\nmodule M = coker A^2 / [s, t];\nextend A' = A[z] / (z*(s+t));\ncheck basechange n=2 M via A';",
        )
        .unwrap();
        let out = run_script(&script, &Flags::default()).unwrap();
        let Ok(Payload::BaseChange(bc)) = &out[0].result else { panic!() };
        assert!(!bc.injective.holds);
        assert!(bc.surjective.holds);
        assert!(bc.diagram.implies_injective_fails);
    }

    #[test]
    fn parallel_keeps_query_order() {
        let script = parse(
            "ring A = GF(3)[s,t];\nmodule M = coker A^2 / [s, -t];\ncheck canonical n=2 M;\ncheck canonical n=3 M;\noracle M n=3 dmax=3;",
        )
        .unwrap();
        let flags = Flags { parallel: true, ..Flags::default() };
        let out = run_script(&script, &flags).unwrap();
        assert_eq!(out.len(), 3);
        assert!(out.iter().enumerate().all(|(i, o)| o.index == i));
        let Ok(Payload::Oracle(report)) = &out[2].result else { panic!() };
        assert_eq!(report.first_surjective_defect, Some(vec![1]));
    }

    #[test]
    fn query_error_does_not_stop_the_run() {
        // Guardrail trips on the first query; the second still runs.
        let script = parse(
            "ring A = GF(2)[x]; module M = coker A^3 / []; check canonical n=9 M; check canonical n=1 M;",
        )
        .unwrap();
        let flags = Flags { guardrail: 100, ..Flags::default() };
        let out = run_script(&script, &flags).unwrap();
        assert!(out[0].result.is_err());
        assert!(matches!(&out[1].result, Ok(Payload::Canonical { report, .. })
            if report.injective.holds && report.surjective.holds));
    }
}
