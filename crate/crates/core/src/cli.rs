//! Command-line surface. Every verdict is printed as
//! `CHECK (<id>) PASS|FAIL [witness <bindings>]`; informational
//! classifications use `CLASS (<id>) YES|NO` and never affect the exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::io::{emit_tables, parse_structure, write_structure, PairTable, StructureFile, TableStyle};
use crate::kleene::{build_pa, check_pa_assumptions, check_restricted_twist, restricted_structure, Gated, PaPoset};
use crate::order::{is_antitone_involution, is_pseudo_kleene, BoundSide, Poset};
use crate::residuation::{check_condition, check_lemma_implications, classify, ConditionId, Implication, ResStructure};
use crate::search::{
    check_universal, describe, enumerate_posets, enumerate_structures, Caps, EnumerationSpec, StructureClass, Suite,
    PROPERTIES,
};
use crate::twist::{check_embedding, check_operator_residuated, check_twist_groupoid, parse_pair, OperatorReport, OperatorTwist, Pair, PairMap};
use crate::verdict::{check_line, render_set, Verdict, Witness};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "twistlab", version, about = "Exact checks for finite residuated posets and their twist products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Conditions (1)-(10), classification, lattice and lemma report for a structure file
    Check { file: PathBuf },
    /// Pair-map twist of a structure and the groupoid transfer
    Twist(TwistArgs),
    /// Set-valued operator twist of a bounded commutative residuated monoid
    Optwist(OptwistArgs),
    /// Restricted twist P_a around a designated element
    Pa(PaArgs),
    /// Count or list enumerated posets and structures
    Enumerate(EnumerateArgs),
    /// Run registered universal properties over the enumerations
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct TwistArgs {
    file: PathBuf,
    /// proj1 or proj2; defaults to the file's `pairmap f`
    #[arg(long)]
    f: Option<String>,
    /// proj1 or proj2; defaults to the file's `pairmap g`
    #[arg(long)]
    g: Option<String>,
    /// Unit pair `x,y`; defaults to `(1,1)`
    #[arg(long = "const", value_name = "X,Y")]
    unit: Option<String>,
    /// Write the twisted structure to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OptwistArgs {
    file: PathBuf,
    /// Second coordinate of the embedding `x -> (x,a0)`; all elements when omitted
    #[arg(long)]
    a0: Option<String>,
    #[arg(long, default_value = "long")]
    style: String,
    /// Write the operator tables here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PaArgs {
    file: PathBuf,
    /// The designated element; defaults to the file's `designated`
    #[arg(long)]
    a: Option<String>,
    #[arg(long, default_value = "compressed")]
    style: String,
    /// Write the operator tables here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    size: usize,
    /// poset, any, lrg, bounded-lrg, crm or bcrm
    #[arg(long, default_value = "poset")]
    filter: String,
    #[arg(long)]
    limit: Option<usize>,
    /// Print every enumerated item
    #[arg(long)]
    list: bool,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// lemmas, theorems or all
    #[arg(long, default_value = "all")]
    suite: String,
    /// Run a single property by name
    #[arg(long)]
    property: Option<String>,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Debug, Args)]
struct CapArgs {
    #[arg(long, default_value_t = Caps::default().posets)]
    max_poset_size: usize,
    #[arg(long, default_value_t = Caps::default().structures)]
    max_structure_size: usize,
    #[arg(long, default_value_t = Caps::default().raw_tables)]
    max_raw_size: usize,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps { posets: self.max_poset_size, structures: self.max_structure_size, raw_tables: self.max_raw_size }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if code == EXIT_PASS { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut report = Report::default();
    let result = match &cli.command {
        Command::Check { file } => cmd_check(file, &mut report),
        Command::Twist(a) => cmd_twist(a, &mut report),
        Command::Optwist(a) => cmd_optwist(a, &mut report),
        Command::Pa(a) => cmd_pa(a, &mut report),
        Command::Enumerate(a) => cmd_enumerate(a, &mut report),
        Command::Verify(a) => cmd_verify(a, &mut report),
    };
    let _ = out.write_all(report.text.as_bytes());
    match result {
        Ok(()) if report.failed => EXIT_FAIL,
        Ok(()) => EXIT_PASS,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Default)]
struct Report {
    text: String,
    failed: bool,
}

impl Report {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn check(&mut self, id: &str, v: &Verdict, p: &Poset) {
        self.failed |= v.is_fail();
        self.line(check_line(id, v, p));
    }

    fn class(&mut self, id: &str, holds: bool, detail: Option<String>) {
        let word = if holds { "YES" } else { "NO" };
        match detail {
            Some(d) if !d.is_empty() => self.line(format!("CLASS ({id}) {word} witness {d}")),
            _ => self.line(format!("CLASS ({id}) {word}")),
        }
    }

    fn verdict_class(&mut self, id: &str, v: &Verdict, p: &Poset) {
        self.class(id, v.is_pass(), v.witness().map(|w| w.render(p)));
    }
}

fn load(path: &Path) -> Result<StructureFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_structure(&text).map_err(|e| match e {
        Error::Parse { line, message } => Error::Invalid(format!("{}:{line}: {message}", path.display())),
        other => other,
    })
}

fn element(p: &Poset, name: &str) -> Result<usize> {
    p.index_of(name).ok_or_else(|| Error::Unknown { kind: "element", name: name.to_string() })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))
}

fn lattice_lines(r: &mut Report, p: &Poset) {
    match p.is_lattice() {
        Verdict::Pass => r.class("lattice", true, None),
        Verdict::Fail(f) => {
            let (side, key) = match f.side {
                BoundSide::Upper => ("upper", "minimal-upper-bounds"),
                BoundSide::Lower => ("lower", "maximal-lower-bounds"),
            };
            r.class(
                "lattice",
                false,
                Some(format!("x={} y={} side={side} {key}={}", p.name(f.x), p.name(f.y), render_set(p, f.extremal))),
            );
        }
    }
    let d = p.distributivity();
    let w = d.lower_identity.witness().map(|&(x, y, z)| format!("x={} y={} z={}", p.name(x), p.name(y), p.name(z)));
    r.class("distributive", d.lower_identity.is_pass(), w);
}

fn structure_report(r: &mut Report, s: &ResStructure) -> Result<()> {
    let p = &s.poset;
    for c in ConditionId::ALL {
        if c.needs_imp() && s.imp.is_none() {
            continue;
        }
        if c.needs_designated() {
            if s.designated.is_none() || (c.number() == 11 && s.zero.is_none()) {
                continue;
            }
            if c.number() == 13 {
                continue;
            }
        }
        let v = check_condition(s, c)?;
        r.check(&c.number().to_string(), &v, p);
    }
    let cls = classify(s);
    r.verdict_class("left-residuated-groupoid", &cls.left_residuated, p);
    r.verdict_class("bounded", &cls.bounded, p);
    r.verdict_class("commutative", &cls.commutative, p);
    r.verdict_class("associative", &cls.associative, p);
    r.class("commutative-residuated-monoid", cls.commutative_residuated_monoid(), None);
    r.class(
        "bounded-commutative-residuated-monoid",
        cls.bounded_commutative_residuated_monoid(),
        cls.first_missing_bcrm_flag().map(|f| format!("missing={f}")),
    );
    lattice_lines(r, p);
    if s.imp.is_some() {
        for lemma in check_lemma_implications(s)? {
            match &lemma.outcome {
                Implication::Refuted(w) => {
                    r.failed = true;
                    r.line(format!("LEMMA ({}) REFUTED witness {}", lemma.name, w.render(p)));
                }
                o => r.line(format!("LEMMA ({}) {}", lemma.name, o.label())),
            }
        }
    }
    Ok(())
}

fn operator_lines(r: &mut Report, report: &OperatorReport, p: &Poset) {
    for (id, v) in report.items() {
        r.check(id, v, p);
    }
}

fn cmd_check(path: &Path, r: &mut Report) -> Result<()> {
    let file = load(path)?;
    let p = &file.poset;
    r.line(format!("structure {} elements={}", path.display(), p.size()));
    if file.has_tables() {
        structure_report(r, &file.structure()?)?;
    } else {
        lattice_lines(r, p);
    }
    if let Some(inv) = &file.involution {
        let anti = is_antitone_involution(p, inv);
        r.class("antitone-involution", anti.is_pass(), anti.witness().map(|f| format!("{f:?}")));
        if anti.is_pass() {
            let pk = matches!(is_pseudo_kleene(p, inv), Ok(Verdict::Pass));
            r.class("pseudo-kleene", pk, None);
            r.class("kleene", pk && p.is_distributive().is_pass(), None);
        }
    }
    if file.has_operators() {
        let os = file.operator_structure()?;
        operator_lines(r, &check_operator_residuated(&os), p);
    }
    Ok(())
}

fn pair_map(flag: Option<&str>, from_file: Option<&PairMap>, n: usize, name: &str) -> Result<PairMap> {
    match flag {
        Some("proj1") => Ok(PairMap::proj1(n)),
        Some("proj2") => Ok(PairMap::proj2(n)),
        Some(other) => Err(Error::Unknown { kind: "pair map", name: other.to_string() }),
        None => from_file
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("no --{name} given and the file has no `pairmap {name}`"))),
    }
}

fn cmd_twist(a: &TwistArgs, r: &mut Report) -> Result<()> {
    let file = load(&a.file)?;
    let s = file.structure()?;
    let n = s.size();
    let f = pair_map(a.f.as_deref(), file.f.as_ref(), n, "f")?;
    let g = pair_map(a.g.as_deref(), file.g.as_ref(), n, "g")?;
    let unit: Pair = match &a.unit {
        Some(u) => parse_pair(&s.poset, u)?,
        None => (s.one, s.one),
    };
    let (tp, t, rep) = check_twist_groupoid(&s, &f, &g, unit)?;
    let p = &s.poset;
    r.line(format!(
        "twist elements={} unit={} f={} g={}",
        tp.poset.size(),
        tp.poset.name(tp.index(unit)),
        map_label(&f),
        map_label(&g)
    ));
    r.verdict_class("base-adjoint", &rep.base_adjoint, p);
    r.verdict_class("base-unit", &rep.base_unit, p);
    r.verdict_class("base-decreasing", &rep.base_decreasing, p);
    r.verdict_class("base-left-unit", &rep.base_left_unit, p);
    r.verdict_class("twist-adjoint", &rep.twist_adjoint, &tp.poset);
    r.verdict_class("twist-unit", &rep.twist_unit, &tp.poset);
    r.class("base-groupoid", rep.base_groupoid(), None);
    r.class("twist-groupoid", rep.twist_groupoid(), None);
    let bool_verdict = |b: bool| if b { Verdict::Pass } else { Verdict::Fail(Witness::new()) };
    r.check("groupoid-biconditional", &bool_verdict(rep.biconditional()), p);
    r.check("adjoint-transfer", &bool_verdict(rep.adjoint_transfer()), p);
    r.check("unit-refinement", &bool_verdict(rep.unit_refinement()), p);
    if let Some(out) = &a.out {
        write_file(out, &write_structure(&StructureFile::from_structure(&t)))?;
        r.line(format!("wrote {}", out.display()));
    }
    Ok(())
}

fn map_label(m: &PairMap) -> &'static str {
    if m.is_proj1() {
        "proj1"
    } else if m.is_proj2() {
        "proj2"
    } else {
        "table"
    }
}

fn emit_or_write(r: &mut Report, text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => {
            write_file(path, text)?;
            r.line(format!("wrote {}", path.display()));
        }
        None => r.text.push_str(text),
    }
    Ok(())
}

fn cmd_optwist(a: &OptwistArgs, r: &mut Report) -> Result<()> {
    let style: TableStyle = a.style.parse()?;
    let file = load(&a.file)?;
    let s = file.structure()?;
    let ot = OperatorTwist::new(&s)?;
    let os = ot.structure();
    let tpo = &ot.twist.poset;
    r.line(format!(
        "operator twist elements={} bottom={} top={}",
        tpo.size(),
        tpo.name(os.zero),
        tpo.name(os.one)
    ));
    operator_lines(r, &check_operator_residuated(&os), tpo);
    let a0s: Vec<usize> = match &a.a0 {
        Some(name) => vec![element(&s.poset, name)?],
        None => (0..s.size()).collect(),
    };
    for a0 in a0s {
        let v = check_embedding(&s.poset, tpo, a0)?;
        r.check(&format!("embedding a0={}", s.poset.name(a0)), &v, &s.poset);
    }
    let pairs: Vec<Pair> = (0..tpo.size()).map(|i| ot.twist.pair(i)).collect();
    let text = emit_tables(
        &s.poset,
        &pairs,
        &[PairTable { symbol: "odot", table: &os.odot }, PairTable { symbol: "oimp", table: &os.oimp }],
        style,
    );
    emit_or_write(r, &text, a.out.as_ref())
}

fn pa_header(r: &mut Report, pa: &PaPoset) {
    let p = &pa.poset;
    let names: Vec<&str> = (0..p.size()).map(|i| p.name(i)).collect();
    r.line(format!("restricted twist a={} elements={}", pa.base.name(pa.a), p.size()));
    r.line(format!("carrier {}", names.join(" ")));
    let covers: Vec<String> = p.covers().iter().map(|&(x, y)| format!("{}<{}", p.name(x), p.name(y))).collect();
    r.line(format!("covers {}", covers.join(" ")));
    let (lo, hi) = p.bounds();
    let show = |b: Option<usize>| b.map_or("none".to_string(), |x| p.name(x).to_string());
    r.line(format!("bounds bottom={} top={}", show(lo), show(hi)));
}

fn cmd_pa(a: &PaArgs, r: &mut Report) -> Result<()> {
    let style: TableStyle = a.style.parse()?;
    let file = load(&a.file)?;
    let s = file.structure()?;
    let center = match &a.a {
        Some(name) => element(&s.poset, name)?,
        None => file.designated.ok_or_else(|| Error::Invalid("no --a given and the file has no `designated`".into()))?,
    };
    let pa = build_pa(&s.poset, center)?;
    pa_header(r, &pa);
    let asm = check_pa_assumptions(&pa, &s);
    let show = |v: &Verdict| if v.is_pass() { "PASS".to_string() } else { format!("FAIL witness {}", v.witness().unwrap().render(&s.poset)) };
    r.line(format!("ASSUMPTION (idempotent) {}", show(&asm.idempotent)));
    r.line(format!("ASSUMPTION (comparable-with-center) {}", show(&asm.comparable)));
    r.line(format!("ASSUMPTION (base-comparable) {}", show(&asm.base_comparable)));
    let report = match check_restricted_twist(&pa, &s)? {
        Gated::AssumptionFail(_) => {
            r.line("STATUS ASSUMPTION-FAIL no verdict on closure or residuation");
            return Err(Error::Precondition(format!(
                "the hypotheses on a={} fail; see the ASSUMPTION lines",
                s.poset.name(center)
            )));
        }
        Gated::Checked(rep) => rep,
    };
    let bp = &s.poset;
    r.check("11", &report.c11, bp);
    r.check("12", &report.c12, bp);
    let closure = match report.closure.first() {
        None => Verdict::Pass,
        Some(e) => Verdict::Fail(e.witness(bp).text("escapes", report.closure.escapes.len().to_string())),
    };
    r.check("closure", &closure, bp);
    let residuated = match (&report.operator, report.closure.closed()) {
        (Some(op), true) => match op.items().iter().find(|(_, v)| v.is_fail()) {
            None => Verdict::Pass,
            Some((id, v)) => Verdict::Fail(Witness::new().text("item", *id).text("detail", v.witness().unwrap().render(&pa.poset))),
        },
        _ => Verdict::Fail(Witness::new().text("reason", "not-closed")),
    };
    r.check("operator-residuated", &residuated, bp);
    let bic = if report.biconditional() && report.closure_agrees_with_audit() {
        Verdict::Pass
    } else {
        Verdict::Fail(Witness::new().text("conditions", report.conditions_hold().to_string()).text(
            "residuated",
            report.operator_residuated().to_string(),
        ))
    };
    r.check("biconditional", &bic, bp);
    r.check("pseudo-kleene", &report.pseudo_kleene, &pa.poset);
    r.check("kleene", &report.kleene, &pa.poset);
    r.check("embedding", &report.embedding, bp);
    r.check("involution-membership", &report.involution_membership, bp);
    if report.closure.closed() {
        let ot = OperatorTwist::new(&s)?;
        let os = restricted_structure(&pa, &ot).expect("closed operators restrict");
        let text = emit_tables(
            &s.poset,
            &pa.pairs,
            &[PairTable { symbol: "odot", table: &os.odot }, PairTable { symbol: "oimp", table: &os.oimp }],
            style,
        );
        emit_or_write(r, &text, a.out.as_ref())?;
    }
    Ok(())
}

fn cmd_enumerate(a: &EnumerateArgs, r: &mut Report) -> Result<()> {
    let caps = a.caps.caps();
    if a.filter == "poset" {
        let mut all = enumerate_posets(a.size, &caps)?;
        if let Some(l) = a.limit {
            all.truncate(l);
        }
        r.line(format!("COUNT poset size={} {}", a.size, all.len()));
        if a.list {
            for p in &all {
                let covers: Vec<String> = p.covers().iter().map(|&(x, y)| format!("{}<{}", p.name(x), p.name(y))).collect();
                r.line(format!("covers=[{}]", covers.join(",")));
            }
        }
        return Ok(());
    }
    let class: StructureClass = a.filter.parse()?;
    let spec = EnumerationSpec { size: a.size, class, limit: a.limit, caps };
    let all = enumerate_structures(&spec)?;
    r.line(format!("COUNT {} size={} {}", class, a.size, all.len()));
    if a.list {
        for s in &all {
            r.line(describe(s));
        }
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, r: &mut Report) -> Result<()> {
    let caps = a.caps.caps();
    let names: Vec<&str> = match (&a.property, a.suite.as_str()) {
        (Some(p), _) => vec![p.as_str()],
        (None, "all") => PROPERTIES.iter().map(|p| p.name).collect(),
        (None, suite) => {
            let suite: Suite = suite.parse()?;
            PROPERTIES.iter().filter(|p| p.suite == suite).map(|p| p.name).collect()
        }
    };
    let mut failed = 0;
    for name in &names {
        let rep = check_universal(name, &caps)?;
        if !rep.passed() {
            failed += 1;
            r.failed = true;
        }
        r.line(rep.line());
    }
    let status = if failed == 0 { "PASS" } else { "FAIL" };
    r.line(format!("SUITE ({}) {status} falsified={failed} properties={}", a.property.as_deref().unwrap_or(&a.suite), names.len()));
    Ok(())
}
