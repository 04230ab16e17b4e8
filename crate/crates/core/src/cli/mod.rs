//! Command dispatch for the `lindiff` binary.

mod expr;
mod lexer;
mod problem;

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde_json::{json, Map, Value};

pub use problem::ProblemFile;

use crate::diffmodule::{characteristic_set, CharSet, ModElement, ModTerm, Ranking, RankingKind};
use crate::dimension::DimensionReport;
use crate::error::{Error, Result};
use crate::normalform::{classify_tangent, diagonalize, OreMatrix, TangentClass};
use crate::numpoly::{bigint_json, count_cofilter, type_and_heights};
use crate::ore::{render_term, DerivMonomial};
use crate::variety::render_indeterminate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    /// Characteristic set of the submodule.
    Charset,
    /// Differential dimension polynomial of the quotient module.
    Dimpoly,
    /// Diagonal form and free/torsion split (one derivation).
    Decompose,
    /// Tangent space at a point of a variety.
    Tangent,
    /// Normal forms of the `target` elements.
    Reduce,
    /// Staircase count for a `leaders` antichain.
    Count,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum RankingChoice {
    Orderly,
    Elim,
}

#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub format: Format,
    /// Overrides the ranking kind of the file, keeping its component order.
    pub ranking: Option<RankingChoice>,
    /// Also list a basis of `M_k` for this `k`.
    pub order_bound: Option<u32>,
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        Error::PointNotOnVariety { .. } => 3,
        Error::UnsupportedForPartial => 4,
        _ => 1,
    }
}

/// Parses `text` and runs `cmd`, returning what should be printed.
pub fn run(cmd: Command, text: &str, flags: &Flags) -> Result<String> {
    let file = ProblemFile::parse(text)?;
    run_command(cmd, &file, flags)
}

pub fn run_command(cmd: Command, file: &ProblemFile, flags: &Flags) -> Result<String> {
    let rk = match flags.ranking {
        None => file.ranking.clone(),
        Some(choice) => {
            let kind = match choice {
                RankingChoice::Orderly => RankingKind::Orderly,
                RankingChoice::Elim => RankingKind::Elimination,
            };
            Ranking::with_order(kind, file.ranking.component_order().to_vec())?
        }
    };
    let out = Output::new(file, flags.format);
    match cmd {
        Command::Count => count(file, out),
        Command::Charset => {
            let gens = file.presentation()?;
            let cs = characteristic_set(&gens, &rk)?;
            let mut out = out;
            out.charset(&cs);
            out.order_bound(&cs, flags.order_bound)?;
            Ok(out.finish())
        }
        Command::Dimpoly => {
            let gens = file.presentation()?;
            let cs = characteristic_set(&gens, &orderly(&rk)?)?;
            let mut out = out;
            out.dimension(&DimensionReport::new(&cs, file.cfg)?);
            out.order_bound(&cs, flags.order_bound)?;
            Ok(out.finish())
        }
        Command::Decompose => {
            if file.cfg.num_derivations() != 1 {
                return Err(Error::UnsupportedForPartial);
            }
            let gens = file.presentation()?;
            let r = OreMatrix::from_columns(file.cfg, file.rank(), &gens)?;
            let diag = diagonalize(&r.transpose())?;
            if !diag.verify(&r.transpose())? {
                return Err(Error::Internal("diagonalization failed to verify".into()));
            }
            let tc = classify_tangent(&r)?;
            let mut out = out;
            let entries: Vec<String> = diag.d.diagonal().iter().map(|p| p.render()).collect();
            out.text(format!("diagonal: [{}]", entries.join(", ")));
            out.json("diagonal", json!(entries));
            out.tangent(Some(&tc));
            Ok(out.finish())
        }
        Command::Tangent => {
            if file.eqs.is_empty() || file.point.is_none() {
                return Err(Error::InvalidConfig("'tangent' needs 'eqs' and 'point' lines".into()));
            }
            let point = file.point.as_ref().expect("checked");
            let report = crate::variety::tangent_pipeline(&file.eqs, point, &rk)?;
            let mut out = out;
            let lin: Vec<String> = report
                .linearizations
                .iter()
                .map(|w| out.linear_form(w, &rk))
                .collect();
            for (f, l) in file.eqs.iter().zip(&lin) {
                out.text(format!("d({}) = {l}", f.render(&file.names)));
            }
            out.json("linearization", json!(lin));
            out.charset(&report.charset);
            out.dimension(&report.dimension);
            out.tangent(report.tangent.as_ref());
            if flags.order_bound.is_some() {
                let cs = characteristic_set(&report.linearizations, &orderly(&rk)?)?;
                out.order_bound(&cs, flags.order_bound)?;
            }
            Ok(out.finish())
        }
        Command::Reduce => {
            let gens = file.presentation()?;
            let cs = characteristic_set(&gens, &rk)?;
            if file.targets.is_empty() {
                return Err(Error::InvalidConfig("'reduce' needs a 'target' line".into()));
            }
            let mut out = out;
            let mut items = Vec::new();
            for w in &file.targets {
                let r = cs.reduce(w)?;
                let (wf, rf) = (out.linear_form(w, &rk), out.linear_form(&r, &rk));
                out.text(format!("{wf} -> {rf} (member: {})", r.is_zero()));
                items.push(json!({"target": wf, "normal_form": rf, "member": r.is_zero()}));
            }
            out.json("reduce", Value::Array(items));
            Ok(out.finish())
        }
    }
}

fn orderly(rk: &Ranking) -> Result<Ranking> {
    Ranking::with_order(RankingKind::Orderly, rk.component_order().to_vec())
}

fn count(file: &ProblemFile, mut out: Output) -> Result<String> {
    let e = file
        .leaders
        .as_ref()
        .ok_or_else(|| Error::InvalidConfig("'count' needs a 'leaders' line".into()))?;
    let p = count_cofilter(e);
    let th = type_and_heights(&p, e.num_derivations())?;
    out.text(format!("{p} (valid for t >= {})", p.valid_from()));
    out.json("dimension_polynomial", p.to_json());
    out.json("type", json!(th.diff_type));
    out.json("typical_height", bigint_json(&th.typical_height));
    out.json("diff_dimension", bigint_json(&th.diff_height));
    Ok(out.finish())
}

/// Accumulates text lines and JSON fields side by side.
struct Output<'a> {
    file: &'a ProblemFile,
    format: Format,
    text: String,
    json: Map<String, Value>,
}

impl<'a> Output<'a> {
    fn new(file: &'a ProblemFile, format: Format) -> Self {
        Self {
            file,
            format,
            text: String::new(),
            json: Map::new(),
        }
    }

    fn text(&mut self, line: String) {
        let _ = writeln!(self.text, "{line}");
    }

    fn json(&mut self, key: &str, v: Value) {
        self.json.insert(key.to_string(), v);
    }

    fn finish(self) -> String {
        match self.format {
            Format::Text => self.text,
            Format::Json => {
                let mut s = serde_json::to_string(&Value::Object(self.json)).expect("serializable");
                s.push('\n');
                s
            }
        }
    }

    fn term_name(&self, u: &ModTerm) -> String {
        render_indeterminate(u, &self.file.names[u.component])
    }

    /// `w` as a linear differential polynomial, highest-ranked term first.
    fn linear_form(&self, w: &ModElement, rk: &Ranking) -> String {
        let mut terms: Vec<_> = w.terms().collect();
        if terms.is_empty() {
            return "0".into();
        }
        terms.sort_by(|(a, _), (b, _)| rk.cmp_terms(b, a));
        let single = self.file.cfg.single_var_names() && terms.iter().all(|(_, c)| c.num_vars_used() <= 1);
        let mut out = String::new();
        for (idx, (u, c)) in terms.iter().enumerate() {
            render_term(&mut out, idx == 0, c, &self.term_name(u), single);
        }
        out
    }

    fn charset(&mut self, cs: &CharSet) {
        let rk = cs.ranking();
        let kind = if rk.is_orderly() { "orderly" } else { "elimination" };
        self.text(format!(
            "characteristic set ({kind} ranking, {} element{}):",
            cs.len(),
            if cs.len() == 1 { "" } else { "s" }
        ));
        let mut items = Vec::new();
        for (w, u) in cs.elements().iter().zip(cs.leaders()) {
            let form = self.linear_form(w, rk);
            let leader = self.term_name(u);
            self.text(format!("  [{leader}] {form}"));
            items.push(json!({"leader": leader, "element": form, "vector": w.render()}));
        }
        self.json("charset", Value::Array(items));
    }

    fn dimension(&mut self, rep: &DimensionReport) {
        let p = &rep.dimpoly;
        let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
        self.text(format!("dimension polynomial: {p} (valid for t >= {})", p.valid_from()));
        self.text(format!("binomial coefficients: [{}]", coeffs.join(", ")));
        self.text(format!("differential dimension: {}", rep.diff_dimension));
        self.text(format!(
            "type: {}",
            rep.diff_type.map_or("-inf".to_string(), |l| l.to_string())
        ));
        self.text(format!("typical height: {}", rep.typical_height));
        if let (Some(r), Some(b)) = (&rep.free_term, rep.below_leader_count) {
            self.text(format!("free term: {r}"));
            self.text(format!("below-leader count: {b}"));
        }
        let free: Vec<String> = rep.free_components.iter().map(|&i| self.file.names[i].clone()).collect();
        self.text(format!("free components: {}", if free.is_empty() { "none".into() } else { free.join(" ") }));
        if let Value::Object(fields) = rep.to_json() {
            for (k, v) in fields {
                self.json(&k, v);
            }
        }
        self.json("free_components", json!(free));
    }

    fn tangent(&mut self, tc: Option<&TangentClass>) {
        match tc {
            Some(tc) => {
                self.text(format!("tangent space: K^{} x C^{} (d = {}, k = {})", tc.d, tc.k, tc.d, tc.k));
                self.text(format!("torsion degrees: {:?}", tc.torsion_degrees));
                self.json("tangent", tc.to_json());
            }
            None => {
                self.text("tangent space: not classified (more than one derivation)".into());
                self.json("tangent", Value::Null);
            }
        }
    }

    /// Terms of order `<= k` below no leader; a `K`-basis of `M_k`.
    fn order_bound(&mut self, cs: &CharSet, k: Option<u32>) -> Result<()> {
        let Some(k) = k else { return Ok(()) };
        if !cs.ranking().is_orderly() {
            return Err(Error::OrderlyRequired);
        }
        let m = self.file.cfg.num_derivations();
        let mut basis: Vec<ModTerm> = Vec::new();
        for theta in monomials_up_to(m, k) {
            for i in 0..cs.rank() {
                let u = ModTerm::new(i, theta.clone());
                if !cs.leaders().iter().any(|l| u.is_derivative_of(l)) {
                    basis.push(u);
                }
            }
        }
        basis.sort_by(|a, b| cs.ranking().cmp_terms(a, b).then(Ordering::Equal));
        let names: Vec<String> = basis.iter().map(|u| self.term_name(u)).collect();
        self.text(format!("basis of M_{k} ({} terms): {}", names.len(), names.join(", ")));
        self.json("order_bound", json!({"k": k, "dim": names.len(), "basis": names}));
        Ok(())
    }
}

/// All derivative operators of order at most `k` in `m` derivations.
fn monomials_up_to(m: usize, k: u32) -> Vec<DerivMonomial> {
    fn rec(prefix: &mut Vec<u32>, m: usize, budget: u32, out: &mut Vec<DerivMonomial>) {
        if prefix.len() == m {
            out.push(DerivMonomial::from_exponents(prefix.clone()));
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(prefix, m, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), m, k, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const AT_T_T: &str = "field: Q(t)\nvars: z y\npoint: z = t, y = t\neqs: z*y' - y\n";
    const AT_1_0: &str = "field: Q(t)\nvars: z y\npoint: z = 1, y = 0\neqs: z*y' - y\n";

    fn json_flags() -> Flags {
        Flags {
            format: Format::Json,
            ..Flags::default()
        }
    }

    #[test]
    fn parses_the_example_file() {
        let f = ProblemFile::parse(AT_T_T).unwrap();
        assert_eq!(f.names, vec!["z", "y"]);
        assert_eq!(f.eqs.len(), 1);
        assert_eq!(f.eqs[0].render(&f.names), "z*y' - y");
        assert!(f.point.is_some());
    }

    #[test]
    fn parse_errors() {
        let e = ProblemFile::parse("field: Q(t)\nvars: z y\npoint: z = 1/0, y = 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 13, .. }), "{e:?}");
        let e = ProblemFile::parse("vars: z y\neqs: z*w' - y\n").unwrap_err();
        match e {
            Error::Parse { line, column, message } => {
                assert_eq!((line, column), (2, 8));
                assert!(message.contains("'w'"));
            }
            other => panic!("{other:?}"),
        }
        assert!(ProblemFile::parse("bogus: 1\n").is_err());
        assert!(ProblemFile::parse("field: Q(x)\n").is_err());
        assert!(ProblemFile::parse("module: 2\ngens: [d, 1\n").is_err());
        assert_eq!(exit_code(&ProblemFile::parse("vars: t\n").unwrap_err()), 2);
    }

    #[test]
    fn tangent_json() {
        let out = run(Command::Tangent, AT_1_0, &json_flags()).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["dimension_polynomial"]["binomial_coeffs"], json!([1, 1]));
        assert_eq!(v["tangent"]["d"], json!(1));
        assert_eq!(v["tangent"]["k"], json!(1));
        let out = run(Command::Tangent, AT_T_T, &json_flags()).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["tangent"]["k"], json!(0));
        assert_eq!(v["linearization"], json!(["t*y' - y + z"]));
    }

    #[test]
    fn count_text() {
        let out = run(Command::Count, "field: Q derivations: 2\nleaders: [(1,1)]\n", &Flags::default()).unwrap();
        assert_eq!(out, "2*t + 1 (valid for t >= 2)\n");
    }

    #[test]
    fn decompose_partial_is_unsupported() {
        let e = run(Command::Decompose, "field: Q(t1,t2)\nmodule: 1\ngens: d1\n", &Flags::default()).unwrap_err();
        assert_eq!(exit_code(&e), 4);
    }

    #[test]
    fn point_off_the_variety() {
        let e = run(Command::Tangent, "vars: z y\npoint: z = t, y = 1\neqs: z*y' - y\n", &Flags::default()).unwrap_err();
        assert_eq!(exit_code(&e), 3);
    }

    #[test]
    fn reduce_and_order_bound() {
        let file = "module: 2\ngens: [d, -1]\ntarget: [d^2, -d]; [1, 0]\n";
        let out = run(Command::Reduce, file, &Flags::default()).unwrap();
        assert_eq!(out, "e1'' - e2' -> 0 (member: true)\ne1 -> e1 (member: false)\n");
        let flags = Flags {
            order_bound: Some(2),
            ..Flags::default()
        };
        let out = run(Command::Dimpoly, file, &flags).unwrap();
        assert!(out.contains("basis of M_2 (4 terms): e1, e2, e2', e2''"), "{out}");
    }
}
