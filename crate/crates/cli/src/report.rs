//! Rendering of query outcomes: a deterministic human text form and a
//! versioned JSON schema (`schema: 1`). Timings are opt-in so default output
//! is byte-identical across runs.

use serde::Serialize;
use std::fmt::Write as _;

use gts_core::extalg::{ObstructionReport, WedgeKernelReport};
use gts_core::gammats::{CheckReport, Witness};
use gts_core::oracle::GradedReport;

use crate::run::{Flags, Payload, QueryOutcome};

pub const SCHEMA: u32 = 1;

#[derive(Serialize)]
pub struct JsonReport {
    pub schema: u32,
    pub queries: Vec<JsonQuery>,
}

#[derive(Serialize)]
pub struct JsonQuery {
    pub index: usize,
    pub kind: &'static str,
    pub query: String,
    pub module: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical: Option<JsonCanonical>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basechange: Option<JsonBaseChange>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sympower: Option<Vec<JsonDegree>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wedge: Option<JsonWedge>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<JsonObstruction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<JsonOracle>,
    pub gb: JsonGb,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_ms: Option<u128>,
}

#[derive(Serialize)]
pub struct JsonGb {
    pub spairs: u64,
    pub reduction_steps: u64,
}

#[derive(Serialize)]
pub struct JsonCheck {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<JsonWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A replayable certificate: the class over the module generators and the
/// underlying tuple vector, coordinate by coordinate.
#[derive(Serialize)]
pub struct JsonWitness {
    pub class: String,
    pub vector: Vec<String>,
    pub rank: usize,
}

#[derive(Serialize)]
pub struct JsonCanonical {
    pub n: u32,
    pub injective: JsonCheck,
    pub surjective: JsonCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<JsonOracle>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
}

#[derive(Serialize)]
pub struct JsonSide {
    pub injective: JsonCheck,
    pub surjective: JsonCheck,
}

#[derive(Serialize)]
pub struct JsonBaseChange {
    pub n: u32,
    pub source: JsonSide,
    pub target: JsonSide,
    pub injective: JsonCheck,
    pub surjective: JsonCheck,
    pub diagram: JsonDiagram,
}

#[derive(Serialize)]
pub struct JsonDiagram {
    pub implies_injective_fails: bool,
    pub implies_surjective_fails: bool,
}

#[derive(Serialize)]
pub struct JsonDegree {
    pub degree: u32,
    pub injective: JsonCheck,
    pub surjective: JsonCheck,
}

#[derive(Serialize)]
pub struct JsonWedge {
    pub diagonal_is_orbit_span: bool,
    pub kernel_is_canonical_image: bool,
    pub holds: bool,
}

#[derive(Serialize)]
pub struct JsonObstruction {
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<JsonWitness>,
    pub note: String,
}

#[derive(Serialize)]
pub struct JsonOracle {
    pub n: u32,
    pub d_max: u32,
    pub shifts: Vec<Vec<i64>>,
    pub injective_ok: bool,
    pub surjective_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_injective_defect: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_surjective_defect: Option<Vec<i64>>,
    pub cells: Vec<JsonCell>,
}

#[derive(Serialize)]
pub struct JsonCell {
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

fn json_witness(w: &Witness) -> JsonWitness {
    JsonWitness {
        class: w.class.clone(),
        vector: w.vector.coords().iter().map(|p| p.to_string()).collect(),
        rank: w.vector.rank(),
    }
}

fn json_check(c: &CheckReport) -> JsonCheck {
    JsonCheck {
        holds: c.holds,
        witness: c.witness.as_ref().map(json_witness),
        note: c.note.clone(),
    }
}

fn json_oracle(o: &GradedReport) -> JsonOracle {
    JsonOracle {
        n: o.n,
        d_max: o.d_max,
        shifts: o.shifts.clone(),
        injective_ok: o.injective_ok,
        surjective_ok: o.surjective_ok,
        first_injective_defect: o.first_injective_defect.clone(),
        first_surjective_defect: o.first_surjective_defect.clone(),
        cells: o
            .cells
            .iter()
            .map(|c| JsonCell {
                degree: c.degree.clone(),
                dim_ambient: c.dim_ambient,
                dim_kernel: c.dim_kernel,
                dim_orbit_span: c.dim_orbit_span,
                dim_relations: c.dim_relations,
                dim_reached: c.dim_reached,
                dim_invariant_preimage: c.dim_invariant_preimage,
                dim_invariant_kernel: c.dim_invariant_kernel,
                dim_ts: c.dim_ts,
                injective_defect: c.injective_defect,
                surjective_defect: c.surjective_defect,
            })
            .collect(),
    }
}

fn json_wedge(w: &WedgeKernelReport) -> JsonWedge {
    JsonWedge {
        diagonal_is_orbit_span: w.diagonal_is_orbit_span,
        kernel_is_canonical_image: w.kernel_is_canonical_image,
        holds: w.holds(),
    }
}

fn json_obstruction(o: &ObstructionReport) -> JsonObstruction {
    JsonObstruction {
        found: o.obstruction.is_some(),
        witness: o.obstruction.as_ref().map(json_witness),
        note: o.note.clone(),
    }
}

pub fn to_json(outcomes: &[QueryOutcome], flags: &Flags) -> JsonReport {
    let queries = outcomes
        .iter()
        .map(|out| {
            let mut q = JsonQuery {
                index: out.index,
                kind: kind_of(out),
                query: out.query.clone(),
                module: out.module.clone(),
                status: if out.result.is_ok() { "ok" } else { "error" },
                error: out.result.as_ref().err().cloned(),
                canonical: None,
                basechange: None,
                sympower: None,
                wedge: None,
                obstruction: None,
                oracle: None,
                gb: JsonGb {
                    spairs: out.stats.spairs,
                    reduction_steps: out.stats.reduction_steps,
                },
                time_ms: flags.timings.then_some(out.millis),
            };
            match &out.result {
                Ok(Payload::Canonical { report, oracle, oracle_error }) => {
                    q.canonical = Some(JsonCanonical {
                        n: report.n,
                        injective: json_check(&report.injective),
                        surjective: json_check(&report.surjective),
                        oracle: oracle.as_ref().map(json_oracle),
                        oracle_error: oracle_error.clone(),
                        oracle_agrees: out.oracle_agrees(),
                    });
                }
                Ok(Payload::BaseChange(bc)) => {
                    q.basechange = Some(JsonBaseChange {
                        n: bc.n,
                        source: JsonSide {
                            injective: json_check(&bc.diagram.source.injective),
                            surjective: json_check(&bc.diagram.source.surjective),
                        },
                        target: JsonSide {
                            injective: json_check(&bc.diagram.target.injective),
                            surjective: json_check(&bc.diagram.target.surjective),
                        },
                        injective: json_check(&bc.injective),
                        surjective: json_check(&bc.surjective),
                        diagram: JsonDiagram {
                            implies_injective_fails: bc.diagram.implies_injective_fails,
                            implies_surjective_fails: bc.diagram.implies_surjective_fails,
                        },
                    });
                }
                Ok(Payload::SymPower(degrees)) => {
                    q.sympower = Some(
                        degrees
                            .iter()
                            .map(|d| JsonDegree {
                                degree: d.degree,
                                injective: json_check(&d.report.injective),
                                surjective: json_check(&d.report.surjective),
                            })
                            .collect(),
                    );
                }
                Ok(Payload::Wedge(w)) => q.wedge = Some(json_wedge(w)),
                Ok(Payload::Obstruction(o)) => q.obstruction = Some(json_obstruction(o)),
                Ok(Payload::Oracle(o)) => q.oracle = Some(json_oracle(o)),
                Err(_) => {}
            }
            q
        })
        .collect();
    JsonReport { schema: SCHEMA, queries }
}

fn kind_of(out: &QueryOutcome) -> &'static str {
    match &out.result {
        Ok(Payload::Canonical { .. }) => "canonical",
        Ok(Payload::BaseChange(_)) => "basechange",
        Ok(Payload::SymPower(_)) => "sympower",
        Ok(Payload::Wedge(_)) => "wedge",
        Ok(Payload::Obstruction(_)) => "obstruction",
        Ok(Payload::Oracle(_)) => "oracle",
        Err(_) => "error",
    }
}

// Text rendering.

fn verdict(holds: bool) -> &'static str {
    if holds {
        "HOLDS"
    } else {
        "FAIL"
    }
}

fn push_check(buf: &mut String, label: &str, c: &CheckReport) {
    let _ = write!(buf, "  {label}: {}", verdict(c.holds));
    if let Some(n) = &c.note {
        let _ = write!(buf, "  ({n})");
    }
    buf.push('\n');
    if let Some(w) = &c.witness {
        let _ = writeln!(buf, "    witness: {}", w.class);
        let _ = writeln!(buf, "    vector:  [{}]", join_polys(&w.vector));
    }
}

fn join_polys(v: &gts_core::modgb::ModVec) -> String {
    v.coords().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

fn degree_str(d: &[i64]) -> String {
    let inner = d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    format!("({inner})")
}

fn push_oracle(buf: &mut String, o: &GradedReport) {
    let _ = writeln!(
        buf,
        "  oracle (d_max {}): injective {}, surjective {}",
        o.d_max,
        if o.injective_ok { "ok" } else { "DEFECT" },
        if o.surjective_ok { "ok" } else { "DEFECT" },
    );
    if let Some(d) = &o.first_injective_defect {
        let _ = writeln!(buf, "    first injective defect at degree {}", degree_str(d));
    }
    if let Some(d) = &o.first_surjective_defect {
        let _ = writeln!(buf, "    first surjective defect at degree {}", degree_str(d));
    }
    let _ = writeln!(
        buf,
        "    {:<12} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5} {:>4} {:>4}",
        "degree", "dim", "N", "span", "K", "sum", "L", "TS", "inj", "surj"
    );
    for c in &o.cells {
        let _ = writeln!(
            buf,
            "    {:<12} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5} {:>4} {:>4}",
            degree_str(&c.degree),
            c.dim_ambient,
            c.dim_kernel,
            c.dim_orbit_span,
            c.dim_relations,
            c.dim_reached,
            c.dim_invariant_preimage,
            c.dim_ts,
            c.injective_defect,
            c.surjective_defect,
        );
    }
}

pub fn render_text(outcomes: &[QueryOutcome], flags: &Flags) -> String {
    let mut buf = String::new();
    for out in outcomes {
        let _ = writeln!(buf, "[{}] {}", out.index, out.query);
        match &out.result {
            Err(e) => {
                let _ = writeln!(buf, "  error: {e}");
            }
            Ok(Payload::Canonical { report, oracle, oracle_error }) => {
                push_check(&mut buf, "injective ", &report.injective);
                push_check(&mut buf, "surjective", &report.surjective);
                if let Some(o) = oracle {
                    push_oracle(&mut buf, o);
                    let agrees = out.oracle_agrees() == Some(true);
                    let _ = writeln!(
                        buf,
                        "  oracle {} the symbolic verdicts",
                        if agrees { "agrees with" } else { "DISAGREES with" }
                    );
                }
                if let Some(e) = oracle_error {
                    let _ = writeln!(buf, "  oracle skipped: {e}");
                }
            }
            Ok(Payload::BaseChange(bc)) => {
                push_check(&mut buf, "source injective ", &bc.diagram.source.injective);
                push_check(&mut buf, "source surjective", &bc.diagram.source.surjective);
                push_check(&mut buf, "target injective ", &bc.diagram.target.injective);
                push_check(&mut buf, "target surjective", &bc.diagram.target.surjective);
                push_check(&mut buf, "base change injective ", &bc.injective);
                push_check(&mut buf, "base change surjective", &bc.surjective);
                let _ = writeln!(
                    buf,
                    "  diagram: implies injective fails = {}, implies surjective fails = {}",
                    bc.diagram.implies_injective_fails, bc.diagram.implies_surjective_fails
                );
            }
            Ok(Payload::SymPower(degrees)) => {
                for d in degrees {
                    let _ = writeln!(buf, "  symmetric power degree {}:", d.degree);
                    push_check(&mut buf, "  injective ", &d.report.injective);
                    push_check(&mut buf, "  surjective", &d.report.surjective);
                }
            }
            Ok(Payload::Wedge(w)) => {
                let _ = writeln!(
                    buf,
                    "  diagonal equals orbit span: {}",
                    verdict(w.diagonal_is_orbit_span)
                );
                let _ = writeln!(
                    buf,
                    "  wedge kernel is the canonical image: {}",
                    verdict(w.kernel_is_canonical_image)
                );
            }
            Ok(Payload::Obstruction(o)) => match &o.obstruction {
                Some(w) => {
                    let _ = writeln!(buf, "  obstruction found: {}", w.class);
                    let _ = writeln!(buf, "    vector: [{}]", join_polys(&w.vector));
                    let _ = writeln!(buf, "  {}", o.note);
                }
                None => {
                    let _ = writeln!(buf, "  {}", o.note);
                }
            },
            Ok(Payload::Oracle(o)) => push_oracle(&mut buf, o),
        }
        let _ = writeln!(
            buf,
            "  gb: {} s-pairs, {} reduction steps",
            out.stats.spairs, out.stats.reduction_steps
        );
        if flags.timings {
            let _ = writeln!(buf, "  time: {} ms", out.millis);
        }
    }
    buf
}
