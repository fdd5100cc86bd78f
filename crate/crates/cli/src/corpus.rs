//! The built-in example corpus: scripts with pinned verdicts. Each pin names
//! one boolean aspect of one query outcome; the runner compares and reports.

use std::fmt::Write as _;

use crate::parse::parse;
use crate::run::{run_script, Flags, Payload, QueryOutcome};

#[derive(Clone, Copy, Debug)]
pub enum Aspect {
    Injective,
    Surjective,
    BcInjective,
    BcSurjective,
    DiagramImpliesInjectiveFails,
    DiagramImpliesSurjectiveFails,
    SymInjective(u32),
    SymSurjective(u32),
    WedgeHolds,
    ObstructionFound,
}

impl Aspect {
    fn describe(&self) -> String {
        match self {
            Aspect::Injective => "injective".into(),
            Aspect::Surjective => "surjective".into(),
            Aspect::BcInjective => "base change injective".into(),
            Aspect::BcSurjective => "base change surjective".into(),
            Aspect::DiagramImpliesInjectiveFails => "diagram implies injective fails".into(),
            Aspect::DiagramImpliesSurjectiveFails => "diagram implies surjective fails".into(),
            Aspect::SymInjective(d) => format!("S^{d} injective"),
            Aspect::SymSurjective(d) => format!("S^{d} surjective"),
            Aspect::WedgeHolds => "wedge kernel identity".into(),
            Aspect::ObstructionFound => "obstruction found".into(),
        }
    }

    /// Reads this aspect out of an outcome; None when the outcome has no
    /// such aspect (an error, or a different query shape).
    fn read(&self, out: &QueryOutcome) -> Option<bool> {
        let payload = out.result.as_ref().ok()?;
        match (self, payload) {
            (Aspect::Injective, Payload::Canonical { report, .. }) => {
                Some(report.injective.holds)
            }
            (Aspect::Surjective, Payload::Canonical { report, .. }) => {
                Some(report.surjective.holds)
            }
            (Aspect::BcInjective, Payload::BaseChange(bc)) => Some(bc.injective.holds),
            (Aspect::BcSurjective, Payload::BaseChange(bc)) => Some(bc.surjective.holds),
            (Aspect::DiagramImpliesInjectiveFails, Payload::BaseChange(bc)) => {
                Some(bc.diagram.implies_injective_fails)
            }
            (Aspect::DiagramImpliesSurjectiveFails, Payload::BaseChange(bc)) => {
                Some(bc.diagram.implies_surjective_fails)
            }
            (Aspect::SymInjective(d), Payload::SymPower(rows)) => rows
                .iter()
                .find(|r| r.degree == *d)
                .map(|r| r.report.injective.holds),
            (Aspect::SymSurjective(d), Payload::SymPower(rows)) => rows
                .iter()
                .find(|r| r.degree == *d)
                .map(|r| r.report.surjective.holds),
            (Aspect::WedgeHolds, Payload::Wedge(w)) => Some(w.holds()),
            (Aspect::ObstructionFound, Payload::Obstruction(o)) => {
                Some(o.obstruction.is_some())
            }
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Pin {
    pub query: usize,
    pub aspect: Aspect,
    pub expect: bool,
}

const fn pin(query: usize, aspect: Aspect, expect: bool) -> Pin {
    Pin { query, aspect, expect }
}

pub struct Case {
    pub id: &'static str,
    pub label: &'static str,
    pub script: &'static str,
    pub pins: &'static [Pin],
    /// Excluded from `--all`; run explicitly with `--case`.
    pub stretch: bool,
}

pub const CASES: &[Case] = &[
    Case {
        id: "torsion_line_p2",
        label: "torsion line, char 2, n = 2: not injective",
        script: include_str!("../corpus/torsion_line_p2.gts"),
        pins: &[pin(0, Aspect::Injective, false), pin(0, Aspect::Surjective, true)],
        stretch: false,
    },
    Case {
        id: "torsion_line_p3",
        label: "torsion line, char 3, n = 3: not injective",
        script: include_str!("../corpus/torsion_line_p3.gts"),
        pins: &[pin(0, Aspect::Injective, false), pin(0, Aspect::Surjective, true)],
        stretch: false,
    },
    Case {
        id: "torsion_line_p5",
        label: "torsion line, char 5, n = 5: not injective",
        script: include_str!("../corpus/torsion_line_p5.gts"),
        pins: &[pin(0, Aspect::Injective, false), pin(0, Aspect::Surjective, true)],
        stretch: false,
    },
    Case {
        id: "planar_pair",
        label: "injectivity lost after dividing by z(s+t)",
        script: include_str!("../corpus/planar_pair.gts"),
        pins: &[
            pin(0, Aspect::Injective, true),
            pin(0, Aspect::Surjective, true),
            pin(1, Aspect::Injective, false),
            pin(1, Aspect::Surjective, true),
        ],
        stretch: false,
    },
    Case {
        id: "antisym_pair",
        label: "two-generator module, char 3, n = 3: not surjective",
        script: include_str!("../corpus/antisym_pair.gts"),
        pins: &[pin(0, Aspect::Surjective, false)],
        stretch: false,
    },
    Case {
        id: "graded_triple",
        label: "nine-variable quotient, n = 2: surjectivity lost",
        script: include_str!("../corpus/graded_triple.gts"),
        pins: &[pin(0, Aspect::Surjective, true), pin(1, Aspect::Surjective, false)],
        stretch: false,
    },
    Case {
        id: "planar_basechange",
        label: "base change map with kernel",
        script: include_str!("../corpus/planar_basechange.gts"),
        pins: &[
            pin(0, Aspect::BcInjective, false),
            pin(0, Aspect::BcSurjective, true),
            pin(0, Aspect::DiagramImpliesInjectiveFails, true),
        ],
        stretch: false,
    },
    Case {
        id: "triple_basechange",
        label: "base change map with cokernel",
        script: include_str!("../corpus/triple_basechange.gts"),
        pins: &[
            pin(0, Aspect::BcSurjective, false),
            pin(0, Aspect::DiagramImpliesSurjectiveFails, true),
        ],
        stretch: false,
    },
    Case {
        id: "sympower_pieces",
        label: "graded pieces of symmetric algebras",
        script: include_str!("../corpus/sympower_pieces.gts"),
        pins: &[pin(0, Aspect::SymInjective(1), false), pin(1, Aspect::SymSurjective(1), false)],
        stretch: false,
    },
    Case {
        id: "wedge_obstruction",
        label: "no module structure on the exterior square",
        script: include_str!("../corpus/wedge_obstruction.gts"),
        pins: &[pin(0, Aspect::WedgeHolds, true), pin(1, Aspect::ObstructionFound, true)],
        stretch: false,
    },
    Case {
        id: "triple_lines",
        label: "three-generator torsion, char 3, n = 3 (stretch)",
        script: include_str!("../corpus/triple_lines.gts"),
        pins: &[pin(1, Aspect::Injective, false)],
        stretch: true,
    },
];

pub fn find_case(id: &str) -> Option<&'static Case> {
    CASES.iter().find(|c| c.id == id)
}

pub struct CaseResult {
    pub id: &'static str,
    pub outcomes: Result<Vec<QueryOutcome>, String>,
    pub mismatches: Vec<String>,
    pub millis: u128,
}

pub fn run_case(case: &'static Case, flags: &Flags) -> CaseResult {
    let start = std::time::Instant::now();
    let outcomes = match parse(case.script) {
        Ok(script) => run_script(&script, flags),
        Err(e) => Err(e.to_string()),
    };
    let mut mismatches = Vec::new();
    match &outcomes {
        Ok(outs) => {
            for p in case.pins {
                let what = p.aspect.describe();
                match outs.get(p.query).and_then(|o| p.aspect.read(o)) {
                    Some(got) if got == p.expect => {}
                    Some(got) => mismatches.push(format!(
                        "query {}: {what}: expected {}, got {}",
                        p.query,
                        verdict(p.expect),
                        verdict(got)
                    )),
                    None => mismatches
                        .push(format!("query {}: {what}: no such verdict in outcome", p.query)),
                }
            }
            for o in outs {
                if o.oracle_agrees() == Some(false) {
                    mismatches.push(format!("query {}: oracle disagrees", o.index));
                }
            }
        }
        Err(e) => mismatches.push(e.clone()),
    }
    CaseResult { id: case.id, outcomes, mismatches, millis: start.elapsed().as_millis() }
}

fn verdict(holds: bool) -> &'static str {
    if holds {
        "HOLDS"
    } else {
        "FAIL"
    }
}

pub fn summary_table(results: &[CaseResult], flags: &Flags) -> String {
    let mut buf = String::new();
    let _ = writeln!(buf, "{:<10} {:<8} {:>7} {}", "case", "status", "pins", "detail");
    for r in results {
        let case = find_case(r.id).expect("known case");
        let status = if r.mismatches.is_empty() { "ok" } else { "MISMATCH" };
        let detail = if r.mismatches.is_empty() {
            case.label.to_string()
        } else {
            r.mismatches.join("; ")
        };
        let _ = writeln!(buf, "{:<10} {:<8} {:>7} {}", r.id, status, case.pins.len(), detail);
        if flags.timings {
            let _ = writeln!(buf, "{:<10} {:>17} ms", "", r.millis);
        }
    }
    let bad = results.iter().filter(|r| !r.mismatches.is_empty()).count();
    let _ = writeln!(buf, "{} case(s), {} mismatch(es)", results.len(), bad);
    buf
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_scripts_parse_and_roundtrip() {
        for case in CASES {
            let ast = parse(case.script).unwrap_or_else(|e| panic!("{}: {e}", case.id));
            let printed = ast.to_string();
            let reparsed = parse(&printed).unwrap_or_else(|e| panic!("{}: {e}", case.id));
            assert_eq!(reparsed, ast, "{} round trip", case.id);
        }
    }

    #[test]
    fn ten_everyday_cases() {
        assert_eq!(CASES.iter().filter(|c| !c.stretch).count(), 10);
    }

    #[test]
    fn smallest_case_matches_its_pins() {
        let r = run_case(find_case("torsion_line_p2").unwrap(), &Flags::default());
        assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
    }
}
