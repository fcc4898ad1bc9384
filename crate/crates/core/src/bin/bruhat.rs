use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use bruhat_core::coxeter::{parse_matrix, DEFAULT_SIZE_CAP};
use bruhat_core::fiber::{certify_fiber_contractible, certify_interval_sphere, BooleanCube};
use bruhat_core::hecke::{bruhat_lt, SortingWord};
use bruhat_core::homology::{reduced_betti_with_budget, Field, DEFAULT_FACE_BUDGET};
use bruhat_core::poset::{bruhat_order_below, relation_intersection, relation_union, sorting_order, weak_interval};
use bruhat_core::subword::SubwordComplex;
use bruhat_core::totalpos;
use bruhat_core::verify::{parse_groups, Fault, Verifier, VerifyConfig};
use bruhat_core::{CoxeterSystem, CoxeterType, Element, Poset, Word};

#[derive(Parser)]
#[command(name = "bruhat", version, about = "Exact computations in finite Coxeter groups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Named type: A<n>, B<n>, D<n>, I2:<m> or H3.
    #[arg(long = "type", global = true, conflicts_with = "matrix")]
    kind: Option<String>,
    /// Coxeter matrix file: first line n, then n rows of n integers.
    #[arg(long, global = true)]
    matrix: Option<PathBuf>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Coefficient field: a prime, or 0 for the rationals. Defaults to 2;
    /// `verify` uses both 2 and 0 unless one is given.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Limit on enumerated group elements.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_CAP)]
    cap: usize,
    /// Seed for randomized trials.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// List group elements with lengths and descent sets.
    Group,
    /// Export weak, Bruhat and sorting orders below an element.
    Orders {
        /// Top element, as a word.
        #[arg(long)]
        w: String,
        /// weak, bruhat, sorting, sorting:<Q> or all.
        #[arg(long, default_value = "all")]
        which: String,
        /// Reduced word for `sorting`; defaults to the canonical word of w.
        #[arg(long = "Q")]
        q: Option<String>,
    },
    /// Facets, classification and homology of a subword complex.
    Subword {
        #[arg(long = "Q")]
        q: String,
        #[arg(long)]
        w: String,
    },
    /// Fibers of the map from subsets of Q to Bruhat order.
    Fibers {
        /// Reduced word.
        #[arg(long = "Q")]
        q: String,
        /// Only this element; otherwise every u below the product of Q.
        #[arg(long)]
        u: Option<String>,
    },
    /// Exact checks of the x_i(t) relations and total nonnegativity.
    Totalpos {
        /// Number of random parameter triples.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Number of random Chevalley products.
        #[arg(long, default_value_t = 50)]
        products: usize,
        /// Matrix size for the products.
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Show the braid parameters for a triple, e.g. "1,1,1" or "1/2,3,2".
        #[arg(long)]
        params: Option<String>,
    },
    /// Re-check every theorem on a list of groups; exit 0 iff all pass.
    Verify {
        /// Comma-separated groups; defaults to --type, or A2,A3,B2,B3,I2:3..8.
        #[arg(long)]
        groups: Option<String>,
        /// Record wall-clock times in the report.
        #[arg(long)]
        timing: bool,
        /// Inject a known bug to check that it is detected.
        #[arg(long, value_enum)]
        fault: Option<FaultArg>,
        /// Reduced words used for the fiber checks.
        #[arg(long, default_value_t = 16)]
        fiber_words: usize,
        /// Cap on reduced words per element in the order checks.
        #[arg(long)]
        max_words: Option<usize>,
        /// Face budget for homology computations.
        #[arg(long, default_value_t = DEFAULT_FACE_BUDGET)]
        face_budget: usize,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    CorruptSortingSubword,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn system(g: &Global) -> Result<CoxeterSystem> {
    if let Some(path) = &g.matrix {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(CoxeterSystem::new(parse_matrix(&text)?, g.cap)?);
    }
    let kind: CoxeterType = g.kind.as_deref().context("one of --type or --matrix is required")?.parse()?;
    Ok(CoxeterSystem::named_with_cap(kind, g.cap)?)
}

fn field(g: &Global) -> Result<Field> {
    Ok(g.field.as_deref().unwrap_or("2").parse()?)
}

fn element(sys: &CoxeterSystem, word: &str) -> Result<Element> {
    let word: Word = word.parse()?;
    Ok(sys.canonicalize(&word)?)
}

fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn emit_json(value: &serde_json::Value) -> Result<()> {
    emit(&serde_json::to_string_pretty(value)?)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let g = &cli.global;
    match &cli.command {
        Command::Group => cmd_group(g)?,
        Command::Orders { w, which, q } => cmd_orders(g, w, which, q.as_deref())?,
        Command::Subword { q, w } => cmd_subword(g, q, w)?,
        Command::Fibers { q, u } => cmd_fibers(g, q, u.as_deref())?,
        Command::Totalpos { trials, products, n, params } => {
            return cmd_totalpos(g, *trials, *products, *n, params.as_deref())
        }
        Command::Verify { groups, timing, fault, fiber_words, max_words, face_budget, out } => {
            let groups = match (groups, &g.kind, &g.matrix) {
                (Some(list), _, _) => parse_groups(list)?,
                (None, Some(_), _) | (None, _, Some(_)) => vec![system(g)?],
                (None, None, None) => VerifyConfig::default_groups()?,
            };
            let mut config = VerifyConfig::new(groups);
            config.seed = g.seed;
            config.timing = *timing;
            config.fiber_words = *fiber_words;
            config.max_words = *max_words;
            config.face_budget = *face_budget;
            config.fields = match g.field {
                None => vec![Field::GF2, Field::Rationals],
                Some(_) => vec![field(g)?],
            };
            if let Some(FaultArg::CorruptSortingSubword) = fault {
                config.fault = Fault::CorruptSortingSubword;
            }
            let report = Verifier::new(config).run();
            let json = report.to_json();
            if let Some(path) = out {
                std::fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?;
            }
            emit(&json)?;
            for t in &report.theorem_results {
                eprintln!("{} {} ({} instances)", if t.passed { "PASS" } else { "FAIL" }, t.name, t.instances);
            }
            return Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_group(g: &Global) -> Result<()> {
    let sys = system(g)?;
    let elements = sys.enumerate_group()?;
    let mut rows = Vec::new();
    for e in elements.iter() {
        rows.push((e.clone(), sys.left_descents(e)?, sys.right_descents(e)?));
    }
    match g.format.unwrap_or(Format::Tsv) {
        Format::Tsv => {
            let mut s = String::from("word\tlength\tleft_descents\tright_descents\n");
            for (e, l, r) in &rows {
                writeln!(s, "{}\t{}\t{}\t{}", e.canonical_word(), e.length(), join(l), join(r))?;
            }
            emit(&s)
        }
        Format::Json => emit_json(&json!({
            "system": sys.name(),
            "order": rows.len(),
            "elements": rows.iter().map(|(e, l, r)| json!({
                "word": e.canonical_word(), "length": e.length(), "left_descents": l, "right_descents": r,
            })).collect::<Vec<_>>(),
        })),
        Format::Dot => bail!("group listing has no DOT form; use --format tsv or json"),
    }
}

fn join(v: &[u8]) -> String {
    v.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_orders(g: &Global, w: &str, which: &str, q: Option<&str>) -> Result<()> {
    let sys = system(g)?;
    let w = element(&sys, w)?;
    let sorting_for = |q: &Word| -> Result<Poset> {
        let top = SortingWord::new(&sys, q)?;
        if top.element() != &w {
            bail!("{q} is a reduced word for {}, not {w}", top.element());
        }
        Ok(sorting_order(&sys, q)?)
    };
    let mut posets = Vec::new();
    let mut checks = serde_json::Map::new();
    match which {
        "weak" => posets.push(weak_interval(&sys, &w)?),
        "bruhat" => posets.push(bruhat_order_below(&sys, &w)?),
        "sorting" => {
            let q = match q {
                Some(q) => q.parse()?,
                None => w.canonical_word().clone(),
            };
            posets.push(sorting_for(&q)?);
        }
        "all" => {
            let weak = weak_interval(&sys, &w)?;
            let bruhat = bruhat_order_below(&sys, &w)?;
            let mut restricted = Vec::new();
            posets.push(weak.clone());
            for q in sys.reduced_words(&w)? {
                let p = sorting_for(&q)?;
                restricted.push(p.restrict(weak.ground())?);
                posets.push(p);
            }
            let bruhat_on_weak = bruhat.restrict(weak.ground())?;
            checks.insert("weak_is_intersection".into(), relation_intersection(&restricted)?.same_relation(&weak).into());
            checks.insert("bruhat_is_union".into(), relation_union(&restricted)?.equals(&bruhat_on_weak).into());
            posets.push(bruhat);
        }
        other => match other.strip_prefix("sorting:") {
            Some(q) => posets.push(sorting_for(&q.parse()?)?),
            None => bail!("unknown order `{other}`; expected weak, bruhat, sorting, sorting:<Q> or all"),
        },
    }
    match g.format.unwrap_or(Format::Dot) {
        Format::Dot => emit(&posets.iter().map(Poset::to_dot).collect::<String>()),
        Format::Tsv => {
            let mut s = String::new();
            for p in &posets {
                writeln!(s, "# {}", p.label())?;
                s.push_str(&p.to_tsv());
            }
            emit(&s)
        }
        Format::Json => emit_json(&json!({
            "system": sys.name(),
            "w": w.canonical_word(),
            "posets": posets.iter().map(Poset::to_json).collect::<Vec<_>>(),
            "checks": checks,
        })),
    }
}

fn cmd_subword(g: &Global, q: &str, w: &str) -> Result<()> {
    let sys = system(g)?;
    let q: Word = q.parse()?;
    let w = element(&sys, w)?;
    let c = SubwordComplex::build(&sys, &q, &w)?;
    let class = c.classify()?;
    let k = c.to_simplicial_complex();
    let betti = reduced_betti_with_budget(&k, field(g)?, DEFAULT_FACE_BUDGET)?;
    let dim = c.dimension();
    let matches = match class {
        bruhat_core::subword::Classification::Sphere => betti.is_sphere(dim),
        bruhat_core::subword::Classification::Ball => betti.is_acyclic(),
    };
    let faces = c.faces();
    match g.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(&json!({
            "system": sys.name(),
            "q": q,
            "w": w.canonical_word(),
            "dimension": dim,
            "facets": c.facets(),
            "face_count": faces.len(),
            "classification": class,
            "betti": betti,
            "betti_matches": matches,
        })),
        Format::Tsv => {
            let mut s = format!("classification\t{class}\ndimension\t{dim}\nface_count\t{}\n", faces.len());
            writeln!(s, "betti\t{betti}\nbetti_matches\t{matches}")?;
            for f in c.facets() {
                writeln!(s, "facet\t{f}")?;
            }
            emit(&s)
        }
        Format::Dot => bail!("subword complexes have no DOT form; use --format json or tsv"),
    }
}

fn cmd_fibers(g: &Global, q: &str, u: Option<&str>) -> Result<()> {
    let sys = system(g)?;
    let q: Word = q.parse()?;
    let cube = BooleanCube::new(&sys, &q)?;
    let section = cube.sorting_section()?;
    let targets: Vec<Element> = match u {
        Some(u) => vec![element(&sys, u)?],
        None => section.keys().cloned().collect(),
    };
    let fields = [Field::GF2, Field::Rationals];
    let mut rows = Vec::new();
    for u in &targets {
        let up = cube.fiber_up(u)?;
        let duality = up == cube.fiber_up_via_complex(u)?;
        let (open, open_ok) = if u != cube.top() {
            let open = cube.fiber_open(u)?;
            let ok = open == cube.fiber_open_via_complex(u)?;
            (Some(open), Some(ok))
        } else {
            (None, None)
        };
        let contractible = if u.is_identity() {
            None
        } else {
            Some(certify_fiber_contractible(&cube, u, DEFAULT_FACE_BUDGET)?)
        };
        let sphere = if bruhat_lt(&sys, u, cube.top())? && cube.top().length() >= u.length() + 2 {
            Some(certify_interval_sphere(&sys, u, cube.top(), &fields)?)
        } else {
            None
        };
        rows.push(json!({
            "u": u.canonical_word(),
            "sorting_subword": section.get(u),
            "fiber": cube.fiber(u),
            "fiber_up": up,
            "fiber_up_matches_faces": duality,
            "fiber_open": open,
            "fiber_open_matches_boundary": open_ok,
            "contractibility": contractible,
            "interval_sphere": sphere.as_ref().map(|r| json!({"report": r, "passed": r.passed()})),
        }));
    }
    match g.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(&json!({
            "system": sys.name(),
            "q": q,
            "w": cube.top().canonical_word(),
            "order_preserving": cube.is_order_preserving(g.seed).ok(),
            "fibers": rows,
        })),
        Format::Tsv => {
            let mut s = String::from("u\tsorting_subword\tfiber\tfiber_up\tduality\tcontractible\n");
            for r in &rows {
                let contractible = r["contractibility"]["evidence"]["kind"].as_str().unwrap_or("-").to_string();
                writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    r["u"],
                    r["sorting_subword"],
                    r["fiber"].as_array().map_or(0, Vec::len),
                    r["fiber_up"].as_array().map_or(0, Vec::len),
                    r["fiber_up_matches_faces"],
                    contractible,
                )?;
            }
            emit(&s)
        }
        Format::Dot => bail!("fibers have no DOT form; use --format json or tsv"),
    }
}

fn cmd_totalpos(g: &Global, trials: usize, products: usize, n: usize, params: Option<&str>) -> Result<ExitCode> {
    if let Some(p) = params {
        let t: Vec<num_rational::BigRational> =
            p.split(',').map(|x| x.trim().parse().context("bad rational")).collect::<Result<_>>()?;
        let [t1, t2, t3] = t.as_slice() else { bail!("--params needs three rationals") };
        let (a, b, c) = totalpos::braid_parameters(t1, t2, t3)?;
        let ok = totalpos::verify_braid_identity(3, 1, t1, t2, t3)?;
        emit_json(&json!({
            "t": [t1.to_string(), t2.to_string(), t3.to_string()],
            "braid_parameters": [a.to_string(), b.to_string(), c.to_string()],
            "identity_holds": ok,
        }))?;
        return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
    }
    let summary = totalpos::run_trials(g.seed, trials, products, n)?;
    emit_json(&json!({ "seed": g.seed, "summary": summary, "passed": summary.passed() }))?;
    Ok(if summary.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
