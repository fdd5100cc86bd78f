//! Session script grammar: `;`-terminated declarations and queries.
//!
//! ```text
//! ring A = GF(2)[s,t];                      ring A' = QQ[x] / (x^2 - 2);
//! extend A' = A[z] / (z*(s+t));             extend B = A / (f, g);
//! module M = coker A^2 / [s, t; s^2, t^2];  module M' = extend M to A';
//! grade A = [(1,1), (1,2)];
//! check canonical n=2 M;                    check basechange n=2 M via A';
//! check sympower M n=3 degrees=[0,1];       check wedge M;
//! check obstruction M;                      oracle M n=2 dmax=6;
//! ```
//!
//! Polynomials use `+ - * ^` and parentheses; `p/q` is a rational constant.
//! Names resolve at parse time, so unknown rings, modules, and variables are
//! reported with positions, as are non-prime moduli. Parsing normalizes
//! polynomial expressions, hence reparsing a printed script reproduces the
//! statement list exactly.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use gts_core::modgb::ModVec;
use gts_core::polyring::{FieldKind, Grading, Polynomial, Ring};

use crate::lex::{lex, ScriptError, Tok, TokKind};

#[derive(Clone, Debug, PartialEq)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl FieldSpec {
    pub fn kind(&self) -> Result<FieldKind, gts_core::Error> {
        match self {
            FieldSpec::Prime(p) => FieldKind::prime(*p),
            FieldSpec::Rationals => Ok(FieldKind::Rationals),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Stmt {
    Ring { name: String, field: FieldSpec, vars: Vec<String>, ideal: Vec<Polynomial> },
    /// New ring from `source` by adjoining `vars` and dividing by `ideal`
    /// (elements of the extended polynomial ring).
    Extend { name: String, source: String, vars: Vec<String>, ideal: Vec<Polynomial> },
    ModuleCoker { name: String, ring: String, rank: usize, relations: Vec<ModVec> },
    ModuleExtend { name: String, module: String, via: String },
    Grade { ring: String, weights: Vec<Vec<i64>> },
    CheckCanonical { n: u32, module: String },
    CheckBaseChange { n: u32, module: String, via: String },
    CheckSymPower { module: String, n: u32, degrees: Vec<u32> },
    CheckWedge { module: String },
    CheckObstruction { module: String },
    Oracle { module: String, n: u32, d_max: Option<u32> },
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

pub fn parse(src: &str) -> Result<Script, ScriptError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        rings: HashMap::new(),
        sources: HashMap::new(),
        modules: HashMap::new(),
    };
    let mut stmts = Vec::new();
    while !p.at_end() {
        stmts.push(p.statement()?);
    }
    Ok(Script { stmts })
}

/// What the parser tracks per declared ring: the polynomial ring underneath
/// (for resolving variables) and whether an ideal was declared.
struct RingInfo {
    base: Arc<Ring>,
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    rings: HashMap<String, RingInfo>,
    /// Extension name -> source ring name.
    sources: HashMap<String, String>,
    /// Module name -> (ring name, rank).
    modules: HashMap<String, (String, usize)>,
}

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn here(&self) -> (u32, u32) {
        match self.toks.get(self.pos).or_else(|| self.toks.last()) {
            Some(t) => (t.line, t.col),
            None => (1, 1),
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ScriptError> {
        let (line, col) = self.here();
        Err(ScriptError { line, col, msg: msg.into() })
    }

    fn peek(&self) -> Option<&TokKind> {
        self.toks.get(self.pos).map(|t| &t.kind)
    }

    fn bump(&mut self) -> Option<TokKind> {
        let k = self.toks.get(self.pos).map(|t| t.kind.clone());
        if k.is_some() {
            self.pos += 1;
        }
        k
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&TokKind::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ScriptError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(t) => self.err(format!("expected `{c}`, found {t}")),
                None => self.err(format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn ident(&mut self) -> Result<String, ScriptError> {
        match self.peek() {
            Some(TokKind::Ident(_)) => {
                let Some(TokKind::Ident(s)) = self.bump() else { unreachable!() };
                Ok(s)
            }
            Some(t) => self.err(format!("expected a name, found {t}")),
            None => self.err("expected a name, found end of input"),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), ScriptError> {
        match self.peek() {
            Some(TokKind::Ident(s)) if s == word => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => self.err(format!("expected `{word}`, found {t}")),
            None => self.err(format!("expected `{word}`, found end of input")),
        }
    }

    fn int(&mut self) -> Result<i64, ScriptError> {
        match self.peek() {
            Some(TokKind::Int(_)) => {
                let Some(TokKind::Int(n)) = self.bump() else { unreachable!() };
                Ok(n)
            }
            Some(t) => self.err(format!("expected an integer, found {t}")),
            None => self.err("expected an integer, found end of input"),
        }
    }

    fn signed_int(&mut self) -> Result<i64, ScriptError> {
        if self.eat_sym('-') {
            Ok(-self.int()?)
        } else {
            self.int()
        }
    }

    fn small(&mut self, what: &str, max: i64) -> Result<u32, ScriptError> {
        let n = self.int()?;
        if n < 0 || n > max {
            return self.err(format!("{what} must be between 0 and {max}"));
        }
        Ok(n as u32)
    }

    fn fresh_name(&self, name: &str) -> Result<(), ScriptError> {
        if self.rings.contains_key(name) || self.modules.contains_key(name) {
            return self.err(format!("`{name}` is already declared"));
        }
        Ok(())
    }

    fn ring_named(&self, name: &str) -> Result<&RingInfo, ScriptError> {
        match self.rings.get(name) {
            Some(r) => Ok(r),
            None => self.err(format!("unknown ring `{name}`")),
        }
    }

    fn module_named(&self, name: &str) -> Result<&(String, usize), ScriptError> {
        match self.modules.get(name) {
            Some(m) => Ok(m),
            None => self.err(format!("unknown module `{name}`")),
        }
    }

    fn statement(&mut self) -> Result<Stmt, ScriptError> {
        let head = self.ident()?;
        let stmt = match head.as_str() {
            "ring" => self.ring_stmt()?,
            "extend" => self.extend_stmt()?,
            "module" => self.module_stmt()?,
            "grade" => self.grade_stmt()?,
            "check" => self.check_stmt()?,
            "oracle" => self.oracle_stmt()?,
            other => return self.err(format!("unknown statement `{other}`")),
        };
        self.expect_sym(';')?;
        Ok(stmt)
    }

    fn var_list(&mut self) -> Result<Vec<String>, ScriptError> {
        self.expect_sym('[')?;
        let mut vars = Vec::new();
        if !self.eat_sym(']') {
            loop {
                vars.push(self.ident()?);
                if self.eat_sym(']') {
                    break;
                }
                self.expect_sym(',')?;
            }
        }
        Ok(vars)
    }

    fn ring_stmt(&mut self) -> Result<Stmt, ScriptError> {
        let name = self.ident()?;
        self.fresh_name(&name)?;
        self.expect_sym('=')?;
        let field = match self.ident()?.as_str() {
            "GF" => {
                self.expect_sym('(')?;
                let p = self.int()?;
                self.expect_sym(')')?;
                FieldSpec::Prime(p as u64)
            }
            "QQ" => FieldSpec::Rationals,
            other => return self.err(format!("expected `GF(p)` or `QQ`, found `{other}`")),
        };
        let kind = match field.kind() {
            Ok(k) => k,
            Err(e) => return self.err(e.to_string()),
        };
        let vars = self.var_list()?;
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return self.err(format!("variable `{v}` repeats"));
            }
        }
        let base = Ring::new(kind, vars.clone());
        let ideal = if self.eat_sym('/') { self.paren_polys(&base)? } else { Vec::new() };
        self.rings.insert(name.clone(), RingInfo { base });
        Ok(Stmt::Ring { name, field, vars, ideal })
    }

    fn extend_stmt(&mut self) -> Result<Stmt, ScriptError> {
        let name = self.ident()?;
        self.fresh_name(&name)?;
        self.expect_sym('=')?;
        let source = self.ident()?;
        let src = self.ring_named(&source)?;
        let src_base = Arc::clone(&src.base);
        let new_vars = if self.peek() == Some(&TokKind::Sym('[')) {
            self.var_list()?
        } else {
            Vec::new()
        };
        for v in &new_vars {
            if src_base.vars.contains(v) || new_vars.iter().filter(|w| *w == v).count() > 1 {
                return self.err(format!("variable `{v}` repeats"));
            }
        }
        let refs: Vec<&str> = new_vars.iter().map(String::as_str).collect();
        let target = src_base.extended(&refs);
        let ideal = if self.eat_sym('/') { self.paren_polys(&target)? } else { Vec::new() };
        self.sources.insert(name.clone(), source.clone());
        self.rings.insert(name.clone(), RingInfo { base: target });
        Ok(Stmt::Extend { name, source, vars: new_vars, ideal })
    }

    fn module_stmt(&mut self) -> Result<Stmt, ScriptError> {
        let name = self.ident()?;
        self.fresh_name(&name)?;
        self.expect_sym('=')?;
        match self.ident()?.as_str() {
            "coker" => {
                let ring = self.ident()?;
                let base = Arc::clone(&self.ring_named(&ring)?.base);
                self.expect_sym('^')?;
                let rank = self.small("module rank", 64)? as usize;
                self.expect_sym('/')?;
                self.expect_sym('[')?;
                let mut relations = Vec::new();
                if !self.eat_sym(']') {
                    loop {
                        let mut coords = Vec::with_capacity(rank);
                        coords.push(self.poly(&base)?);
                        while self.eat_sym(',') {
                            coords.push(self.poly(&base)?);
                        }
                        if coords.len() != rank {
                            return self.err(format!(
                                "relation has {} coordinates, module has rank {rank}",
                                coords.len()
                            ));
                        }
                        relations.push(ModVec::from_coords(coords));
                        if self.eat_sym(']') {
                            break;
                        }
                        self.expect_sym(';')?;
                    }
                }
                self.modules.insert(name.clone(), (ring.clone(), rank));
                Ok(Stmt::ModuleCoker { name, ring, rank, relations })
            }
            "extend" => {
                let module = self.ident()?;
                let (mring, rank) = self.module_named(&module)?.clone();
                self.keyword("to")?;
                let via = self.ident()?;
                self.ring_named(&via)?;
                match self.sources.get(&via) {
                    Some(s) if *s == mring => {}
                    _ => {
                        return self.err(format!(
                            "`{via}` is not an extension of `{mring}`"
                        ))
                    }
                }
                self.modules.insert(name.clone(), (via.clone(), rank));
                Ok(Stmt::ModuleExtend { name, module, via })
            }
            other => self.err(format!("expected `coker` or `extend`, found `{other}`")),
        }
    }

    fn grade_stmt(&mut self) -> Result<Stmt, ScriptError> {
        let ring = self.ident()?;
        let nvars = self.ring_named(&ring)?.base.nvars();
        self.expect_sym('=')?;
        self.expect_sym('[')?;
        let mut weights = Vec::new();
        loop {
            self.expect_sym('(')?;
            let mut w = vec![self.signed_int()?];
            while self.eat_sym(',') {
                w.push(self.signed_int()?);
            }
            self.expect_sym(')')?;
            weights.push(w);
            if self.eat_sym(']') {
                break;
            }
            self.expect_sym(',')?;
        }
        if weights.len() != nvars {
            return self.err(format!(
                "{} weight tuples for {} variables",
                weights.len(),
                nvars
            ));
        }
        if !(Grading { weights: weights.clone() }).is_uniform() {
            return self.err("weight tuples must all have the same length");
        }
        Ok(Stmt::Grade { ring, weights })
    }

    fn check_stmt(&mut self) -> Result<Stmt, ScriptError> {
        match self.ident()?.as_str() {
            "canonical" => {
                let n = self.n_equals()?;
                let module = self.ident()?;
                self.module_named(&module)?;
                Ok(Stmt::CheckCanonical { n, module })
            }
            "basechange" => {
                let n = self.n_equals()?;
                let module = self.ident()?;
                let mring = self.module_named(&module)?.0.clone();
                self.keyword("via")?;
                let via = self.ident()?;
                self.ring_named(&via)?;
                match self.sources.get(&via) {
                    Some(s) if *s == mring => {}
                    _ => {
                        return self.err(format!("`{via}` is not an extension of `{mring}`"))
                    }
                }
                Ok(Stmt::CheckBaseChange { n, module, via })
            }
            "sympower" => {
                let module = self.ident()?;
                self.module_named(&module)?;
                let n = self.n_equals()?;
                self.keyword("degrees")?;
                self.expect_sym('=')?;
                self.expect_sym('[')?;
                let mut degrees = vec![self.small("degree", 32)?];
                while self.eat_sym(',') {
                    degrees.push(self.small("degree", 32)?);
                }
                self.expect_sym(']')?;
                Ok(Stmt::CheckSymPower { module, n, degrees })
            }
            "wedge" => {
                let module = self.ident()?;
                self.module_named(&module)?;
                Ok(Stmt::CheckWedge { module })
            }
            "obstruction" => {
                let module = self.ident()?;
                self.module_named(&module)?;
                Ok(Stmt::CheckObstruction { module })
            }
            other => self.err(format!("unknown check `{other}`")),
        }
    }

    fn oracle_stmt(&mut self) -> Result<Stmt, ScriptError> {
        let module = self.ident()?;
        self.module_named(&module)?;
        let n = self.n_equals()?;
        let d_max = if matches!(self.peek(), Some(TokKind::Ident(s)) if s == "dmax") {
            self.pos += 1;
            self.expect_sym('=')?;
            Some(self.small("dmax", 64)?)
        } else {
            None
        };
        Ok(Stmt::Oracle { module, n, d_max })
    }

    fn n_equals(&mut self) -> Result<u32, ScriptError> {
        self.keyword("n")?;
        self.expect_sym('=')?;
        self.small("n", 16)
    }

    fn paren_polys(&mut self, ring: &Arc<Ring>) -> Result<Vec<Polynomial>, ScriptError> {
        self.expect_sym('(')?;
        let mut out = vec![self.poly(ring)?];
        while self.eat_sym(',') {
            out.push(self.poly(ring)?);
        }
        self.expect_sym(')')?;
        Ok(out)
    }

    // Polynomial expressions: sums of products of powers.

    fn poly(&mut self, ring: &Arc<Ring>) -> Result<Polynomial, ScriptError> {
        let mut acc = self.poly_term(ring)?;
        loop {
            if self.eat_sym('+') {
                acc = acc.add(&self.poly_term(ring)?);
            } else if self.eat_sym('-') {
                acc = acc.sub(&self.poly_term(ring)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn poly_term(&mut self, ring: &Arc<Ring>) -> Result<Polynomial, ScriptError> {
        let mut acc = self.poly_factor(ring)?;
        while self.eat_sym('*') {
            acc = acc.mul(&self.poly_factor(ring)?);
        }
        Ok(acc)
    }

    fn poly_factor(&mut self, ring: &Arc<Ring>) -> Result<Polynomial, ScriptError> {
        if self.eat_sym('-') {
            return Ok(self.poly_factor(ring)?.neg());
        }
        let base = self.poly_base(ring)?;
        if self.eat_sym('^') {
            let e = self.int()?;
            if e < 0 {
                return self.err("exponent must be nonnegative");
            }
            return Ok(base.pow(e as u64));
        }
        Ok(base)
    }

    fn poly_base(&mut self, ring: &Arc<Ring>) -> Result<Polynomial, ScriptError> {
        match self.peek() {
            Some(TokKind::Int(_)) => {
                let n = self.int()?;
                let mut c = ring.field.from_i64(n);
                if self.eat_sym('/') {
                    let d = ring.field.from_i64(self.int()?);
                    c = match c.div(&d) {
                        Ok(c) => c,
                        Err(e) => return self.err(e.to_string()),
                    };
                }
                Ok(Polynomial::constant(ring, c))
            }
            Some(TokKind::Ident(_)) => {
                let v = self.ident()?;
                match ring.vars.iter().position(|w| *w == v) {
                    Some(i) => Ok(Polynomial::var(ring, i)),
                    None => self.err(format!("unknown variable `{v}`")),
                }
            }
            Some(&TokKind::Sym('(')) => {
                self.pos += 1;
                let p = self.poly(ring)?;
                self.expect_sym(')')?;
                Ok(p)
            }
            Some(t) => {
                let t = t.clone();
                self.err(format!("expected a polynomial, found {t}"))
            }
            None => self.err("expected a polynomial, found end of input"),
        }
    }
}

// Printing. Parsing normalizes every polynomial, so the printed form parses
// back to an equal statement list.

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Rationals => write!(f, "QQ"),
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Ring { name, field, vars, ideal } => {
                write!(f, "ring {name} = {field}[{}]", vars.join(","))?;
                if !ideal.is_empty() {
                    write!(f, " / ({})", join(ideal, ", "))?;
                }
                write!(f, ";")
            }
            Stmt::Extend { name, source, vars, ideal } => {
                write!(f, "extend {name} = {source}")?;
                if !vars.is_empty() {
                    write!(f, "[{}]", vars.join(","))?;
                }
                if !ideal.is_empty() {
                    write!(f, " / ({})", join(ideal, ", "))?;
                }
                write!(f, ";")
            }
            Stmt::ModuleCoker { name, ring, rank, relations } => {
                let rels: Vec<String> =
                    relations.iter().map(|r| join(r.coords(), ", ")).collect();
                write!(f, "module {name} = coker {ring}^{rank} / [{}];", rels.join("; "))
            }
            Stmt::ModuleExtend { name, module, via } => {
                write!(f, "module {name} = extend {module} to {via};")
            }
            Stmt::Grade { ring, weights } => {
                let ws: Vec<String> = weights
                    .iter()
                    .map(|w| format!("({})", join(w, ",")))
                    .collect();
                write!(f, "grade {ring} = [{}];", ws.join(", "))
            }
            Stmt::CheckCanonical { n, module } => write!(f, "check canonical n={n} {module};"),
            Stmt::CheckBaseChange { n, module, via } => {
                write!(f, "check basechange n={n} {module} via {via};")
            }
            Stmt::CheckSymPower { module, n, degrees } => {
                write!(f, "check sympower {module} n={n} degrees=[{}];", join(degrees, ","))
            }
            Stmt::CheckWedge { module } => write!(f, "check wedge {module};"),
            Stmt::CheckObstruction { module } => write!(f, "check obstruction {module};"),
            Stmt::Oracle { module, n, d_max } => {
                write!(f, "oracle {module} n={n}")?;
                if let Some(d) = d_max {
                    write!(f, " dmax={d}")?;
                }
                write!(f, ";")
            }
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
