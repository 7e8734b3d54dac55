//! Command-line front end: argument parsing, the five commands, and their
//! text and JSON renderings.

pub mod docs;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::audit::{exhaustive_lemma_suite, lemma_suite, path_audit, rng_from_env, seed_from_env, Report};
use crate::engine::Limits;
use crate::error::{Error, Result};
use crate::green::schutz_direct;
use crate::grouptools::{enumerate_group, isomorphic};
use crate::schutz::{build_presentation, choose_representatives, Monoid, SchutzData, SchutzPresentation};
use crate::squier::base::{critical_base, group_base, HomotopyBase, Provenance};
use crate::squier::canonical::{CanonicalPaths, GROUP_CAP};
use crate::squier::search::PathCaps;
use crate::words::{parse_presentation, Word};

use docs::*;

/// Random instances per lemma check in `verify`.
pub const LEMMA_SAMPLES: usize = 1000;
/// Path audit instances in `verify --homotopy-base`.
pub const PATH_SAMPLES: usize = 100;
/// Monoids up to this size also get the exhaustive lemma suite.
pub const EXHAUSTIVE_MAX_ELEMENTS: usize = 10;
pub const EXHAUSTIVE_MAX_LEN: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Presentation file (`alphabet:` and `rule:` lines)
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// A word whose H-class is studied
    #[arg(long = "h-class", global = true)]
    pub h_class: Option<String>,
    /// Word stabilizing the H-class pointwise (default: the empty word)
    #[arg(long = "stab-word", global = true)]
    pub stab_word: Option<String>,
    #[arg(long = "max-elements", global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_elements: u64,
    #[arg(long = "kb-max-rules", global = true, default_value_t = 2000, value_parser = clap::value_parser!(u64).range(1..))]
    pub kb_max_rules: u64,
    /// Node cap for each derivation search
    #[arg(long = "path-cap", global = true, default_value_t = crate::squier::search::DEFAULT_MAX_NODES as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub path_cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, short, global = true)]
    pub verbose: bool,
    /// With `verify`: also build the homotopy base and audit its paths
    #[arg(long = "homotopy-base", global = true)]
    pub homotopy_base: bool,
    #[arg(long = "corrupt-kappa", global = true, hide = true)]
    pub corrupt_kappa: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Complete the presentation and list the elements
    Enumerate,
    /// Green's relations, and the index sets of the selected H-class
    Green,
    /// The presentation ⟨B|U⟩ of the Schützenberger group
    SchutzPres,
    /// A homotopy base Y1 ∪ Y2 ∪ Y3 for ⟨B|U⟩
    HomotopyBase,
    /// Cross-check the presented group against the direct computation
    Verify,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "schutzen", version, about = "Schützenberger groups of finitely presented monoids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

/// Parses arguments and runs; returns the exit code. Output and errors go
/// to the given writers.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match run(&cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn limits(c: &Common) -> Limits {
    Limits { max_rules: c.kb_max_rules as usize, ..Limits::default() }
}

fn caps(c: &Common) -> PathCaps {
    PathCaps::with_nodes(c.path_cap as usize)
}

fn load(c: &Common) -> Result<Monoid> {
    let path = c.input.as_ref().ok_or_else(|| Error::Input("--input is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    Monoid::new(parse_presentation(&text)?, limits(c), c.max_elements as usize)
}

fn parse_word(m: &Monoid, text: &str, what: &str) -> Result<Word> {
    m.alphabet().parse_word(text).map_err(|e| Error::Input(format!("{what}: {e}")))
}

fn selector(c: &Common, m: &Monoid) -> Result<usize> {
    let w = parse_word(m, c.h_class.as_deref().unwrap_or("1"), "--h-class")?;
    Ok(m.h_class_of(&w))
}

fn stab(c: &Common, m: &Monoid) -> Result<Word> {
    parse_word(m, c.stab_word.as_deref().unwrap_or("1"), "--stab-word")
}

fn element_names(m: &Monoid, class: &[usize]) -> Vec<String> {
    class.iter().map(|&x| m.alphabet().format_word(m.universe.word(x))).collect()
}

fn json<T: serde::Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// Runs a parsed command, returning the rendered output and exit code.
pub fn run(cli: &Cli) -> Result<(String, i32)> {
    let c = &cli.common;
    let m = load(c)?;
    match cli.command {
        Command::Enumerate => Ok((cmd_enumerate(c, &m), 0)),
        Command::Green => cmd_green(c, &m).map(|s| (s, 0)),
        Command::SchutzPres => cmd_schutz_pres(c, &m),
        Command::HomotopyBase => cmd_homotopy_base(c, &m).map(|s| (s, 0)),
        Command::Verify => cmd_verify(c, &m),
    }
}

fn cmd_enumerate(c: &Common, m: &Monoid) -> String {
    let u = &m.universe;
    let a = m.alphabet();
    let pc = m.system.presentation();
    let doc = EnumerateDoc {
        alphabet: a.names().to_vec(),
        completed_rules: pc.rules().iter().map(|r| (a.format_word(&r.lhs), a.format_word(&r.rhs))).collect(),
        elements: u.elements().iter().map(|w| a.format_word(w)).collect(),
        right: u.right_table().to_vec(),
        left: u.left_table().to_vec(),
    };
    if c.format == Format::Json {
        return json(&doc);
    }
    let n = doc.elements.len();
    let mut s = format!("{n} element{}\n", if n == 1 { "" } else { "s" });
    let _ = writeln!(s, "elements: {}", doc.elements.join(", "));
    if c.verbose {
        let _ = writeln!(s, "completed rules:");
        for (l, r) in &doc.completed_rules {
            let _ = writeln!(s, "  {l} = {r}");
        }
        let _ = writeln!(s, "right multiplication:");
        for (x, row) in doc.right.iter().enumerate() {
            let cells: Vec<&str> = row.iter().map(|&y| doc.elements[y].as_str()).collect();
            let _ = writeln!(s, "  {} | {}", doc.elements[x], cells.join(" "));
        }
    }
    s
}

fn selected_doc(m: &Monoid, d: &SchutzData) -> SelectedDoc {
    let g = &m.green;
    let a = m.alphabet();
    let star = &d.star;
    let lam = &d.lambda;
    SelectedDoc {
        h_class: element_names(m, &g.h_classes[d.h_class]),
        is_group: g.is_group_h_class(&m.universe, d.h_class),
        h: a.format_word(&d.h),
        e: a.format_word(&d.e),
        lambda: (0..lam.len())
            .map(|l| LambdaDoc {
                label: (l + 1).to_string(),
                h_class: element_names(m, &g.h_classes[lam.classes[l]]),
                action: a.letters().map(|x| lam.act(l, x).map(|k| (k + 1).to_string())).collect(),
            })
            .collect(),
        indices: (0..star.len())
            .map(|i| IndexDoc {
                label: star.label(i),
                rep: a.format_word(star.rep(i)),
                r_class: element_names(m, &g.r_classes[star.entries[i].class]),
                action: a.letters().map(|x| star.act(x, i).map(|k| star.label(k))).collect(),
            })
            .collect(),
        orbit: star.orbit_classes.iter().map(|&r| element_names(m, &g.r_classes[r])).collect(),
        j: star.j_ids.iter().map(|&j| star.label(j)).collect(),
        omega: star.label(star.omega),
        eta: star.label(star.eta),
    }
}

fn cmd_green(c: &Common, m: &Monoid) -> Result<String> {
    let g = &m.green;
    let selected = match c.h_class {
        Some(_) => {
            let d = choose_representatives(m, &m.presentation, selector(c, m)?, &stab(c, m)?)?;
            Some(selected_doc(m, &d))
        }
        None => None,
    };
    let classes = |cs: &[Vec<usize>]| cs.iter().map(|k| element_names(m, k)).collect::<Vec<_>>();
    let doc = GreenDoc {
        elements: element_names(m, &(0..m.universe.len()).collect::<Vec<_>>()),
        r_classes: classes(&g.r_classes),
        l_classes: classes(&g.l_classes),
        h_classes: classes(&g.h_classes),
        selected,
    };
    if c.format == Format::Json {
        return Ok(json(&doc));
    }
    let braces = |k: &Vec<String>| format!("{{{}}}", k.join(", "));
    let mut s = String::new();
    for (name, cs) in [("R", &doc.r_classes), ("L", &doc.l_classes), ("H", &doc.h_classes)] {
        let parts: Vec<String> = cs.iter().map(braces).collect();
        let _ = writeln!(s, "{name}-classes ({}): {}", cs.len(), parts.join(" "));
    }
    if let Some(sel) = &doc.selected {
        let _ = writeln!(s, "H = {}{}", braces(&sel.h_class), if sel.is_group { " (group)" } else { "" });
        let _ = writeln!(s, "h = {}, e = {}", sel.h, sel.e);
        let labels: Vec<&str> = sel.lambda.iter().map(|l| l.label.as_str()).collect();
        let _ = writeln!(s, "Λ = {{{}}}", labels.join(", "));
        for l in &sel.lambda {
            let acts: Vec<String> = m
                .alphabet()
                .names()
                .iter()
                .zip(&l.action)
                .map(|(x, t)| format!("{}·{x} = {}", l.label, t.as_deref().unwrap_or("0")))
                .collect();
            let _ = writeln!(s, "  H_{} = {}  {}", l.label, braces(&l.h_class), acts.join(", "));
        }
        let labels: Vec<&str> = sel.indices.iter().map(|i| i.label.as_str()).collect();
        let _ = writeln!(s, "I = {{{}}}", labels.join(", "));
        for i in &sel.indices {
            let acts: Vec<String> = m
                .alphabet()
                .names()
                .iter()
                .zip(&i.action)
                .map(|(x, t)| format!("{x}∗{} = {}", i.label, t.as_deref().unwrap_or("0")))
                .collect();
            let _ = writeln!(s, "  r_{} = {}  R = {}  {}", i.label, i.rep, braces(&i.r_class), acts.join(", "));
        }
        let orbit: Vec<String> = sel.orbit.iter().map(braces).collect();
        let _ = writeln!(s, "K = {}", orbit.join(" "));
        let _ = writeln!(s, "J = {{{}}}", sel.j.join(", "));
        let _ = writeln!(s, "ω = {}, η = {}", sel.omega, sel.eta);
    }
    Ok(s)
}

struct Built<'a> {
    d: SchutzData<'a>,
    q: SchutzPresentation,
}

fn build<'a>(c: &Common, m: &'a Monoid, pres: &'a crate::words::Presentation) -> Result<Built<'a>> {
    let mut d = choose_representatives(m, pres, selector(c, m)?, &stab(c, m)?)?;
    if c.corrupt_kappa {
        d.corrupt_kappa();
    }
    let q = build_presentation(&d)?;
    Ok(Built { d, q })
}

fn presentation_doc(m: &Monoid, b: &Built) -> PresentationDoc {
    let (relations, trivial) = PresentationDoc::relations_of(&b.q);
    let all = b.q.relations.iter().chain(&b.q.trivial);
    let failures = all.clone().filter(|r| !b.d.verify_relation(&r.lhs, &r.rhs)).count();
    PresentationDoc {
        h_class: element_names(m, &m.green.h_classes[b.d.h_class]),
        h: m.alphabet().format_word(&b.d.h),
        e: m.alphabet().format_word(&b.d.e),
        generators: b.q.alphabet().names().to_vec(),
        relations,
        trivial,
        verification: Verification { relations_checked: all.count(), failures },
    }
}

fn cmd_schutz_pres(c: &Common, m: &Monoid) -> Result<(String, i32)> {
    let b = build(c, m, &m.presentation)?;
    let mut doc = presentation_doc(m, &b);
    let code = if doc.verification.failures > 0 { 3 } else { 0 };
    if c.format == Format::Json {
        if !c.verbose {
            doc.trivial.clear();
        }
        return Ok((json(&doc), code));
    }
    let mut s = String::new();
    let _ = writeln!(s, "H = {{{}}}, h = {}, e = {}", doc.h_class.join(", "), doc.h, doc.e);
    let _ = writeln!(s, "generators ({}): {}", doc.generators.len(), doc.generators.join(" "));
    let _ = writeln!(s, "relations ({}):", doc.relations.len());
    for RelationDoc(l, r, t) in &doc.relations {
        let _ = writeln!(s, "  {l} = {r}    [{t}]");
    }
    if c.verbose {
        let _ = writeln!(s, "trivial relations ({}):", doc.trivial.len());
        for RelationDoc(l, r, t) in &doc.trivial {
            let _ = writeln!(s, "  {l} = {r}    [{t}]");
        }
    }
    let v = &doc.verification;
    let _ = writeln!(s, "verified {} relations in the monoid: {} failures", v.relations_checked, v.failures);
    Ok((s, code))
}

/// Builds X over the completed presentation and Y1 ∪ Y2 ∪ Y3 over ⟨B|U⟩.
fn homotopy<'a>(
    c: &Common,
    m: &'a Monoid,
    b: &'a Built<'a>,
) -> Result<(CanonicalPaths<'a>, HomotopyBase, HomotopyBase)> {
    let cp = CanonicalPaths::build(&b.d, &b.q, caps(c))?;
    let x = critical_base(&m.system)?;
    let y = group_base(&cp, &x)?;
    Ok((cp, x, y))
}

fn cmd_homotopy_base(c: &Common, m: &Monoid) -> Result<String> {
    let pc = m.system.presentation();
    let b = build(c, m, pc)?;
    let (_, x, y) = homotopy(c, m, &b)?;
    let doc = HomotopyBaseDoc::new(pc, element_names(m, &m.green.h_classes[b.d.h_class]), &b.q, &x, &y);
    if c.format == Format::Json {
        return Ok(json(&doc));
    }
    let z = &doc.sizes;
    let mut s = String::new();
    let _ = writeln!(s, "H = {{{}}}", doc.h_class.join(", "));
    let _ = writeln!(s, "|B| = {}, |U| = {}, |X| = {}, |Y1| = {}, |Y2| = {}, |Y3| = {}", z.b, z.u, z.x, z.y1, z.y2, z.y3);
    let _ = writeln!(
        s,
        "audit: {} members closed, {} valid",
        if doc.audit.all_closed { "all" } else { "NOT all" },
        if doc.audit.all_valid { "all" } else { "NOT all" }
    );
    if c.verbose {
        for mem in doc.x.iter().chain(&doc.y) {
            let _ = writeln!(s, "{} {} base {} ({} edges)", mem.provenance, mem.label, mem.path.base, mem.path.edges.len());
        }
    }
    Ok(s)
}

fn verify_class(c: &Common, m: &Monoid, h: usize, rng: &mut impl rand::Rng) -> Result<ClassVerification> {
    let g = &m.green;
    let pres = if c.homotopy_base { m.system.presentation() } else { &m.presentation };
    let mut d = choose_representatives(m, pres, h, &stab(c, m)?)?;
    if c.corrupt_kappa {
        d.corrupt_kappa();
    }
    let q = build_presentation(&d)?;
    let group = enumerate_group(&q.presentation, limits(c), GROUP_CAP)?;
    let direct = schutz_direct(&m.universe, g, h);
    let mut lemmas = lemma_suite(&d, &q, rng, LEMMA_SAMPLES);
    if m.universe.len() <= EXHAUSTIVE_MAX_ELEMENTS {
        lemmas.merge(exhaustive_lemma_suite(&d, &q, EXHAUSTIVE_MAX_LEN));
    }
    let paths = if c.homotopy_base {
        let b = Built { d, q };
        let (cp, _, y) = homotopy(c, m, &b)?;
        Some(path_audit(&cp, &y, rng, PATH_SAMPLES)?)
    } else {
        None
    };
    Ok(ClassVerification {
        h_class: element_names(m, &g.h_classes[h]),
        is_group: g.is_group_h_class(&m.universe, h),
        presented_order: group.order(),
        direct_order: direct.order(),
        isomorphic: isomorphic(&group, &direct)?,
        lemmas,
        paths,
    })
}

fn cmd_verify(c: &Common, m: &Monoid) -> Result<(String, i32)> {
    let targets: Vec<usize> = match c.h_class {
        Some(_) => vec![selector(c, m)?],
        None => (0..m.green.h_classes.len()).collect(),
    };
    let mut rng = rng_from_env();
    let mut classes = Vec::new();
    for h in targets {
        match verify_class(c, m, h, &mut rng) {
            Ok(v) => classes.push(v),
            // a stabilizing word only makes sense for one class
            Err(Error::NotPointwiseStabilizer) if c.h_class.is_none() => continue,
            Err(e) => return Err(e),
        }
    }
    let failures = classes.iter().map(ClassVerification::failures).sum();
    let doc = VerifyDoc { seed: seed_from_env(), classes, failures };
    let code = if failures > 0 { 3 } else { 0 };
    if c.format == Format::Json {
        return Ok((json(&doc), code));
    }
    let mut s = String::new();
    for v in &doc.classes {
        let _ = writeln!(
            s,
            "H = {{{}}}{}: presented order {}, direct order {}, isomorphic {}",
            v.h_class.join(", "),
            if v.is_group { " (group)" } else { "" },
            v.presented_order,
            v.direct_order,
            v.isomorphic
        );
        let reports: [(&str, Option<&Report>); 2] = [("lemmas", Some(&v.lemmas)), ("paths", v.paths.as_ref())];
        for (what, r) in reports {
            let Some(r) = r else { continue };
            for ch in &r.checks {
                if c.verbose || ch.failures > 0 {
                    let _ = writeln!(s, "  {what}: {}: {}/{} passed", ch.name, ch.instances - ch.failures, ch.instances);
                    if let Some(f) = &ch.first_failure {
                        let _ = writeln!(s, "    first failure: {f}");
                    }
                }
            }
        }
    }
    let _ = writeln!(s, "{} H-classes checked, {} failures (seed {})", doc.classes.len(), doc.failures, doc.seed);
    Ok((s, code))
}

/// Sizes of a homotopy base by provenance, in the order X, Y1, Y2, Y3.
pub fn base_sizes(x: &HomotopyBase, y: &HomotopyBase) -> [usize; 4] {
    [x.members.len(), y.count(Provenance::Y1), y.count(Provenance::Y2), y.count(Provenance::Y3)]
}
