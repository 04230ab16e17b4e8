//! The line-oriented problem-file format.
//!
//! ```text
//! # the curve z*y' - y = 0 at (t, t)
//! field: Q(t)
//! vars: z y
//! point: z = t, y = t
//! eqs: z*y' - y
//! ranking: orderly
//! ```
//!
//! Other keys: `module: n` with `gens: [op, ..., op]; ...` for a raw submodule of
//! `K[d]^n`, `target: [op, ...]` for elements to reduce, and
//! `leaders: [(1,1), (0,2)]; [...]` for staircase counting. `ranking:` may list
//! the components from lowest to highest after the kind.

use std::collections::BTreeMap;

use super::expr::{eval, parse_expr, Leaf};
use super::lexer::{err, tokenize, Cursor, Tok, Token};
use crate::diffmodule::{ModElement, ModTerm, Ranking, RankingKind};
use crate::error::{Error, Result};
use crate::numpoly::Antichain;
use crate::ore::{DerivMonomial, OrePoly};
use crate::scalars::{DiffFieldConfig, RatFun};
use crate::variety::{DiffPoly, VarietyPoint};

/// A parsed problem file.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub cfg: DiffFieldConfig,
    /// Names of the module components (`vars:` or `e1..en`).
    pub names: Vec<String>,
    pub point: Option<VarietyPoint>,
    pub eqs: Vec<DiffPoly>,
    /// Set when a raw module was given.
    pub module_rank: Option<usize>,
    pub gens: Vec<ModElement>,
    pub targets: Vec<ModElement>,
    pub ranking: Ranking,
    pub leaders: Option<Antichain>,
}

struct Line {
    text: String,
    line: usize,
    column: usize,
}

const KEYS: [&str; 9] = [
    "field", "vars", "point", "eqs", "module", "gens", "ranking", "target", "leaders",
];
const REPEATABLE: [&str; 3] = ["eqs", "gens", "target"];

struct Ctx {
    cfg: DiffFieldConfig,
    field_names: Vec<String>,
    names: Vec<String>,
}

impl Ctx {
    fn field_var(&self, name: &str) -> Option<usize> {
        self.field_names.iter().position(|n| n == name)
    }

    fn delta(&self, name: &str) -> Option<usize> {
        let m = self.cfg.num_derivations();
        if m == 1 && name == "d" {
            return Some(0);
        }
        let i: usize = name.strip_prefix('d')?.parse().ok()?;
        (1..=m).contains(&i).then(|| i - 1)
    }

    fn component(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn no_marker(&self, l: &Leaf) -> Result<()> {
        if l.marker.is_some() {
            return Err(err(l.line, l.column, format!("'{}' cannot carry a derivative", l.name)));
        }
        Ok(())
    }

    fn scalar_leaf(&self, l: &Leaf) -> Result<RatFun> {
        match self.field_var(l.name) {
            Some(i) => {
                self.no_marker(l)?;
                Ok(RatFun::var(i))
            }
            None => Err(err(l.line, l.column, format!("unknown name '{}'", l.name))),
        }
    }

    fn ratfun(&self, c: &mut Cursor) -> Result<RatFun> {
        let e = parse_expr(c)?;
        eval(&e, &|r| r, &|l| self.scalar_leaf(l))
    }

    fn operator(&self, c: &mut Cursor) -> Result<OrePoly> {
        let cfg = self.cfg;
        let e = parse_expr(c)?;
        eval(&e, &|r| OrePoly::scalar(cfg, r), &|l| {
            if let Some(i) = self.delta(l.name) {
                self.no_marker(l)?;
                return Ok(OrePoly::delta(cfg, i));
            }
            self.scalar_leaf(l).map(|r| OrePoly::scalar(cfg, r))
        })
    }

    fn diffpoly(&self, c: &mut Cursor) -> Result<DiffPoly> {
        let (cfg, n) = (self.cfg, self.names.len());
        let m = cfg.num_derivations();
        let e = parse_expr(c)?;
        eval(&e, &|r| DiffPoly::constant(cfg, n, r), &|l| {
            if let Some(i) = self.component(l.name) {
                let exps = match l.marker {
                    None => vec![0; m],
                    Some(_) if l.primes && m != 1 => {
                        return Err(err(l.line, l.column, "primes need a single derivation; use y_(k1,...,km)"));
                    }
                    Some(v) if v.len() != m => {
                        return Err(err(
                            l.line,
                            l.column,
                            format!("multi-index of '{}' needs {m} entries", l.name),
                        ));
                    }
                    Some(v) => v.to_vec(),
                };
                return Ok(DiffPoly::indeterminate(
                    cfg,
                    n,
                    ModTerm::new(i, DerivMonomial::from_exponents(exps)),
                ));
            }
            if self.field_var(l.name).is_none() {
                return Err(err(l.line, l.column, format!("unknown variable '{}'", l.name)));
            }
            self.scalar_leaf(l).map(|r| DiffPoly::constant(cfg, n, r))
        })
    }

    /// `[op, ..., op]`, or a bare operator in rank one.
    fn vector(&self, c: &mut Cursor) -> Result<ModElement> {
        let n = self.names.len();
        if !c.is_sym('[') {
            if n == 1 {
                return ModElement::from_components(vec![self.operator(c)?]);
            }
            return Err(c.error("expected '[' starting a vector"));
        }
        let (line, col) = c.here();
        c.next();
        let mut comps = Vec::new();
        loop {
            comps.push(self.operator(c)?);
            if c.is_sym(',') {
                c.next();
            } else {
                c.expect_sym(']')?;
                break;
            }
        }
        if comps.len() != n {
            return Err(err(line, col, format!("vector has {} entries, expected {n}", comps.len())));
        }
        ModElement::from_components(comps)
    }
}

/// Splits `text` into (key, value) lines, dropping comments and blank lines.
fn split_lines(text: &str) -> Result<BTreeMap<&'static str, Vec<Line>>> {
    let mut out: BTreeMap<&'static str, Vec<Line>> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(err(line, col, "expected 'key: value'"));
        };
        let key = content[..colon].trim();
        let Some(&k) = KEYS.iter().find(|&&k| k == key) else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(err(line, col, format!("unknown key '{key}'")));
        };
        let entry = out.entry(k).or_default();
        if !entry.is_empty() && !REPEATABLE.contains(&k) {
            return Err(err(line, 1, format!("duplicate '{k}' line")));
        }
        entry.push(Line {
            text: content[colon + 1..].to_string(),
            line,
            column: content[..colon + 1].chars().count() + 1,
        });
    }
    Ok(out)
}

fn tokens(l: &Line) -> Result<Vec<Token>> {
    tokenize(&l.text, l.line, l.column)
}

fn end_col(l: &Line) -> usize {
    l.column + l.text.chars().count()
}

fn parse_field(l: Option<&Line>) -> Result<(DiffFieldConfig, Vec<String>)> {
    let Some(l) = l else {
        return Ok((DiffFieldConfig::ordinary(), vec!["t".into()]));
    };
    // `derivations:` is a sub-key on the same line
    let (field_text, derivs) = match l.text.find("derivations") {
        Some(pos) => (&l.text[..pos], Some(pos)),
        None => (&l.text[..], None),
    };
    let toks = tokenize(field_text, l.line, l.column)?;
    let mut c = Cursor::new(&toks, l.line, l.column + field_text.chars().count());
    match c.next() {
        Some(Token {
            tok: Tok::Ident(q, None, _),
            ..
        }) if q == "Q" => {}
        _ => return Err(err(l.line, l.column, "expected 'Q' or 'Q(t1,...,tv)'")),
    }
    let mut names = Vec::new();
    if c.is_sym('(') {
        c.next();
        loop {
            match c.next() {
                Some(Token {
                    tok: Tok::Ident(n, None, _),
                    ..
                }) => names.push(n.clone()),
                _ => return Err(c.error("expected a variable name")),
            }
            if c.is_sym(',') {
                c.next();
            } else {
                c.expect_sym(')')?;
                break;
            }
        }
    }
    if !c.at_end() {
        return Err(c.error("unexpected text after the field"));
    }
    let expected: Vec<String> = match names.len() {
        0 => vec![],
        1 => vec!["t".into()],
        v => (1..=v).map(|i| format!("t{i}")).collect(),
    };
    if names != expected {
        return Err(err(
            l.line,
            l.column,
            format!("field variables must be named {}", expected.join(",")),
        ));
    }
    let m = match derivs {
        None => names.len().max(1),
        Some(pos) => {
            let rest = &l.text[pos + "derivations".len()..];
            let col = l.column + l.text[..pos].chars().count() + "derivations".len();
            let rest = rest.trim_start();
            let Some(num) = rest.strip_prefix(':') else {
                return Err(err(l.line, col, "expected ':' after 'derivations'"));
            };
            num.trim()
                .parse::<usize>()
                .map_err(|_| err(l.line, col, "expected the number of derivations"))?
        }
    };
    let cfg = DiffFieldConfig::new(m, names.len()).map_err(|e| err(l.line, l.column, e.to_string()))?;
    Ok((cfg, names))
}

fn parse_names(l: &Line) -> Result<Vec<(String, usize)>> {
    let toks = tokens(l)?;
    let mut out = Vec::new();
    for t in &toks {
        match &t.tok {
            Tok::Ident(n, None, _) => out.push((n.clone(), t.column)),
            Tok::Sym(',') => {}
            _ => return Err(err(t.line, t.column, "expected a variable name")),
        }
    }
    Ok(out)
}

fn parse_leaders(l: &Line, m: usize) -> Result<Vec<Vec<Vec<u32>>>> {
    let toks = tokens(l)?;
    let mut c = Cursor::new(&toks, l.line, end_col(l));
    let mut sets = Vec::new();
    while !c.at_end() {
        c.expect_sym('[')?;
        let mut set = Vec::new();
        while !c.is_sym(']') {
            let (line, col) = c.here();
            let paren = c.is_sym('(');
            if paren {
                c.next();
            }
            let mut v = Vec::new();
            loop {
                match c.next() {
                    Some(Token { tok: Tok::Int(k), line, column }) => {
                        v.push(u32::try_from(k).map_err(|_| err(*line, *column, "exponent too large"))?)
                    }
                    _ => return Err(c.error("expected an exponent")),
                }
                if paren && c.is_sym(',') {
                    c.next();
                } else {
                    break;
                }
            }
            if paren {
                c.expect_sym(')')?;
            }
            if v.len() != m {
                return Err(err(line, col, format!("leader needs {m} exponents")));
            }
            set.push(v);
            if c.is_sym(',') {
                c.next();
            } else if !c.is_sym(']') {
                return Err(c.error("expected ',' or ']'"));
            }
        }
        c.expect_sym(']')?;
        sets.push(set);
        if c.is_sym(';') {
            c.next();
        } else if !c.at_end() {
            return Err(c.error("expected ';' between components"));
        }
    }
    Ok(sets)
}

/// Parses `;`-separated items with `item`, allowing a trailing `;`.
fn separated<T>(l: &Line, mut item: impl FnMut(&mut Cursor) -> Result<T>) -> Result<Vec<T>> {
    let toks = tokens(l)?;
    let mut c = Cursor::new(&toks, l.line, end_col(l));
    let mut out = Vec::new();
    while !c.at_end() {
        if c.is_sym(';') {
            c.next();
            continue;
        }
        out.push(item(&mut c)?);
        if !c.at_end() {
            c.expect_sym(';')?;
        }
    }
    Ok(out)
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        let lines = split_lines(text)?;
        let first = |k: &str| lines.get(k).and_then(|v| v.first());
        let all = |k: &str| lines.get(k).map(|v| v.as_slice()).unwrap_or(&[]);

        let (cfg, field_names) = parse_field(first("field"))?;
        let mut ctx = Ctx {
            cfg,
            field_names,
            names: Vec::new(),
        };

        let vars = first("vars").map(|l| parse_names(l).map(|v| (l, v))).transpose()?;
        if let Some((l, vars)) = &vars {
            if vars.is_empty() {
                return Err(err(l.line, end_col(l), "expected at least one variable"));
            }
            for (i, (n, col)) in vars.iter().enumerate() {
                if ctx.field_var(n).is_some() || ctx.delta(n).is_some() || n == "Q" {
                    return Err(err(l.line, *col, format!("'{n}' is reserved")));
                }
                if vars[..i].iter().any(|(m, _)| m == n) {
                    return Err(err(l.line, *col, format!("duplicate variable '{n}'")));
                }
            }
            ctx.names = vars.iter().map(|(n, _)| n.clone()).collect();
        }

        let module_rank = match first("module") {
            None => None,
            Some(l) => {
                let n: usize = l
                    .text
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| err(l.line, l.column, "expected a positive module rank"))?;
                if vars.is_some() {
                    if ctx.names.len() != n {
                        return Err(err(l.line, l.column, "module rank differs from the number of vars"));
                    }
                } else {
                    ctx.names = (1..=n).map(|i| format!("e{i}")).collect();
                }
                Some(n)
            }
        };

        let leaders = match first("leaders") {
            None => None,
            Some(l) => {
                let sets = parse_leaders(l, cfg.num_derivations())?;
                if !ctx.names.is_empty() && sets.len() != ctx.names.len() {
                    return Err(err(l.line, l.column, format!("expected {} leader groups", ctx.names.len())));
                }
                if sets.is_empty() {
                    return Err(err(l.line, end_col(l), "expected at least one leader group"));
                }
                let a = Antichain::new(cfg.num_derivations(), sets)
                    .map_err(|e| err(l.line, l.column, e.to_string()))?;
                Some(a)
            }
        };

        let n = ctx.names.len();
        let ranking = match first("ranking") {
            None => Ranking::orderly(n),
            Some(l) => {
                let toks = tokens(l)?;
                let kind = match toks.first().map(|t| &t.tok) {
                    Some(Tok::Ident(k, None, _)) if k == "orderly" => RankingKind::Orderly,
                    Some(Tok::Ident(k, None, _)) if k == "elim" || k == "elimination" => {
                        RankingKind::Elimination
                    }
                    _ => return Err(err(l.line, l.column, "expected 'orderly' or 'elim'")),
                };
                let mut order = Vec::new();
                for t in &toks[1..] {
                    match &t.tok {
                        Tok::Ident(name, None, _) => match ctx.component(name) {
                            Some(i) => order.push(i),
                            None => return Err(err(t.line, t.column, format!("unknown variable '{name}'"))),
                        },
                        Tok::Sym(',') | Tok::Sym('<') => {}
                        _ => return Err(err(t.line, t.column, "expected a variable name")),
                    }
                }
                if order.is_empty() {
                    order = (0..n).collect();
                }
                Ranking::with_order(kind, order).map_err(|_| {
                    err(l.line, l.column, "component order must list every variable once")
                })?
            }
        };

        let point = match first("point") {
            None => None,
            Some(l) => {
                if vars.is_none() {
                    return Err(err(l.line, l.column, "'point' needs a 'vars' line"));
                }
                let toks = tokens(l)?;
                let mut c = Cursor::new(&toks, l.line, end_col(l));
                let mut coords: Vec<Option<RatFun>> = vec![None; n];
                while !c.at_end() {
                    let (line, col) = c.here();
                    let i = match c.next().map(|t| &t.tok) {
                        Some(Tok::Ident(name, None, _)) => ctx
                            .component(name)
                            .ok_or_else(|| err(line, col, format!("unknown variable '{name}'")))?,
                        _ => return Err(err(line, col, "expected a variable name")),
                    };
                    c.expect_sym('=')?;
                    if coords[i].is_some() {
                        return Err(err(line, col, "coordinate given twice"));
                    }
                    coords[i] = Some(ctx.ratfun(&mut c)?);
                    if !c.at_end() {
                        c.expect_sym(',')?;
                    }
                }
                let missing: Vec<&str> = (0..n)
                    .filter(|&i| coords[i].is_none())
                    .map(|i| ctx.names[i].as_str())
                    .collect();
                if !missing.is_empty() {
                    return Err(err(l.line, end_col(l), format!("no coordinate for {}", missing.join(", "))));
                }
                Some(VarietyPoint::new(coords.into_iter().map(Option::unwrap).collect()))
            }
        };

        let mut eqs = Vec::new();
        for l in all("eqs") {
            if vars.is_none() {
                return Err(err(l.line, l.column, "'eqs' needs a 'vars' line"));
            }
            eqs.extend(separated(l, |c| ctx.diffpoly(c))?);
        }

        let mut gens = Vec::new();
        let mut targets = Vec::new();
        for (key, dest) in [("gens", &mut gens), ("target", &mut targets)] {
            for l in all(key) {
                if n == 0 {
                    return Err(err(l.line, l.column, format!("'{key}' needs a 'module' or 'vars' line")));
                }
                dest.extend(separated(l, |c| ctx.vector(c))?);
            }
        }
        if module_rank.is_some() && !eqs.is_empty() {
            let l = first("module").expect("present");
            return Err(err(l.line, l.column, "give either a module or equations, not both"));
        }

        Ok(Self {
            cfg,
            names: ctx.names,
            point,
            eqs,
            module_rank,
            gens,
            targets,
            ranking,
            leaders,
        })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// The generators of the submodule: the raw module, or the linearized
    /// equations at the point.
    pub fn presentation(&self) -> Result<Vec<ModElement>> {
        if self.module_rank.is_some() || (!self.gens.is_empty() && self.eqs.is_empty()) {
            return Ok(self.gens.clone());
        }
        let point = self
            .point
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig("equations need a 'point' line".into()))?;
        if self.eqs.is_empty() {
            return Err(Error::InvalidConfig("no module and no equations given".into()));
        }
        for (index, f) in self.eqs.iter().enumerate() {
            let v = f.eval(point)?;
            if !v.is_zero() {
                return Err(Error::PointNotOnVariety {
                    index,
                    value: self.cfg.fmt_scalar(&v),
                });
            }
        }
        self.eqs.iter().map(|f| f.linearize_at(point)).collect()
    }
}
