use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use opmonoid::collapse::{self, ClassCatalog33, CoherenceViolation, PairSet, SearchConfig, SearchMode, Target};
use opmonoid::kuratowski;
use opmonoid::locale;
use opmonoid::pseudo;
use opmonoid::{data, multiply, normal_form, words, DiagramCatalog, EndoMap, Params, Poset, Word, WordAlgebra};

#[derive(Parser)]
#[command(name = "opmonoid", version, about = "Operator monoids on finite posets")]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(clap::Args, Clone, Copy)]
struct MnArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
}

impl MnArgs {
    fn params(&self) -> Result<Params> {
        Params::new(self.m, self.n).map_err(|e| anyhow!(e))
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal form of a word in C(m,n).
    Nf {
        #[command(flatten)]
        mn: MnArgs,
        word: String,
    },
    /// Product of two normal forms.
    Mul {
        #[command(flatten)]
        mn: MnArgs,
        a: String,
        b: String,
    },
    /// Whether `a <= b` holds in general.
    Order {
        #[command(flatten)]
        mn: MnArgs,
        a: String,
        b: String,
    },
    /// Hasse diagram of the representatives.
    Hasse {
        #[command(flatten)]
        mn: MnArgs,
        #[arg(long)]
        dot: bool,
    },
    /// Classify a closure/interior pair, or realize every label.
    ClassifyKuratowski {
        /// JSON file {"poset": {...}, "c": {"img": [...]}, "i": {"img": [...]}}.
        instance: Option<PathBuf>,
        #[arg(long)]
        realize: bool,
        #[arg(long, default_value_t = 6)]
        max_points: usize,
    },
    /// Search for the collapses realized by small instances.
    SearchCollapses {
        #[command(flatten)]
        mn: MnArgs,
        #[arg(long, default_value_t = 5)]
        max_points: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Witness)]
        mode: ModeArg,
        /// Sizes always swept in witness mode.
        #[arg(long, default_value_t = 5)]
        floor: usize,
        /// Stop once the checked-in collapse set is realized.
        #[arg(long)]
        golden_target: bool,
        #[arg(long)]
        expect_count: Option<usize>,
    },
    /// Interior/pseudocomplement monoid checks.
    Pseudo {
        #[command(subcommand)]
        cmd: PseudoCmd,
    },
    /// Sublocale operators on finite frames.
    Locale {
        #[command(subcommand)]
        cmd: LocaleCmd,
    },
    /// Check a checked-in catalog against computation.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        max_points: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Witness,
    Exhaustive,
}

#[derive(Subcommand)]
enum PseudoCmd {
    /// Diagram edges and derived facts on every small instance.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_points: usize,
    },
    /// Counterexamples to the six open inequalities.
    Dashed {
        #[arg(long, default_value_t = 4)]
        max_points: usize,
    },
    /// The 30 implications between the open inequalities.
    Redundancy {
        #[arg(long, default_value_t = 4)]
        max_points: usize,
    },
}

#[derive(Subcommand)]
enum LocaleCmd {
    Demo {
        /// JSON poset {"n": .., "covers": [[a, b], ...]}; all small frames if omitted.
        #[arg(long)]
        frame: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        max_elements: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyTarget {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Table1,
    Fig7,
}

/// Outcome of a subcommand; `passed == false` maps to exit 1.
struct Report {
    passed: bool,
    json: Value,
    text: String,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { passed: true, json, text }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global().expect("thread pool set once");
    }
    match run(&cli) {
        Ok(report) => {
            if let Some(path) = &cli.out {
                let body = serde_json::to_string_pretty(&report.json).expect("json") + "\n";
                if let Err(e) = std::fs::write(path, body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("json")),
                _ => print!("{}", report.text),
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Json => println!("{}", json!({ "error": format!("{e:#}") })),
                _ => eprintln!("error: {e:#}"),
            }
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.cmd {
        Cmd::Nf { mn, word } => {
            let p = mn.params()?;
            let w: Word = word.parse().map_err(|e| anyhow!("{e}"))?;
            let nf = normal_form(&w, &p).word().to_string();
            Ok(Report::ok(json!({ "word": word, "normal_form": nf }), format!("{nf}\n")))
        }
        Cmd::Mul { mn, a, b } => {
            let p = mn.params()?;
            let (x, y) = (parse_nf(a, &p)?, parse_nf(b, &p)?);
            let prod = multiply(x, y, &p).map_err(|e| anyhow!(e))?.word().to_string();
            Ok(Report::ok(json!({ "a": a, "b": b, "product": prod }), format!("{prod}\n")))
        }
        Cmd::Order { mn, a, b } => {
            let p = mn.params()?;
            let (x, y) = (parse_nf(a, &p)?, parse_nf(b, &p)?);
            let holds = words::leq(x, y, &p).map_err(|e| anyhow!(e))?;
            Ok(Report::ok(json!({ "a": a, "b": b, "leq": holds }), format!("{holds}\n")))
        }
        Cmd::Hasse { mn, dot } => {
            let d = words::hasse(&mn.params()?);
            let json: Value = serde_json::from_str(&d.to_json())?;
            let text = if *dot || cli.format == Format::Dot { d.to_dot() } else { d.to_json() + "\n" };
            Ok(Report::ok(json, text))
        }
        Cmd::ClassifyKuratowski { instance, realize, max_points } => classify(instance.as_ref(), *realize, *max_points),
        Cmd::SearchCollapses { mn, max_points, mode, floor, golden_target, expect_count } => {
            let params = mn.params()?;
            if *max_points > collapse::MAX_SEARCH_POINTS {
                bail!("--max-points is capped at {}", collapse::MAX_SEARCH_POINTS);
            }
            let mode = match mode {
                ModeArg::Witness => SearchMode::Witness,
                ModeArg::Exhaustive => SearchMode::Exhaustive,
            };
            let mut config = SearchConfig::new(params, *max_points, mode);
            config.floor = *floor;
            config.target = if *golden_target {
                Some(Target::Set(collapse::load_golden(&params)?.collapse_sets()))
            } else {
                expect_count.map(Target::Count)
            };
            let report = collapse::search_collapses(&config);
            let passed = expect_count.is_none_or(|c| report.count == c) && report.target_met != Some(false);
            let mut text = format!("({},{}) max {} points: {} collapses\n", params.m(), params.n(), max_points, report.count);
            for s in &report.stats {
                text += &format!("  {} points: {} posets, {} instances, {} new\n", s.points, s.posets, s.instances, s.new_collapses);
            }
            if let Some(c) = expect_count {
                text += &format!("expected {c}: {}\n", if report.count == *c { "ok" } else { "MISMATCH" });
            }
            Ok(Report { passed, json: serde_json::to_value(&report)?, text })
        }
        Cmd::Pseudo { cmd } => pseudo_cmd(cmd),
        Cmd::Locale { cmd: LocaleCmd::Demo { frame, max_elements } } => locale_demo(frame.as_ref(), *max_elements),
        Cmd::Verify { target, m, n, max_points } => verify(*target, *m, *n, *max_points),
    }
}

fn parse_nf(s: &str, p: &Params) -> Result<opmonoid::NormalForm> {
    words::parse_normal_form(s, p).map_err(|e| anyhow!("{s}: {e}"))
}

fn read_json(path: &PathBuf) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn classify(instance: Option<&PathBuf>, realize: bool, max_points: usize) -> Result<Report> {
    if realize {
        let r = kuratowski::realize_labels(max_points);
        let mut text = format!("{} of 18 labels realized within {max_points} points\n", r.witnesses.len());
        for w in &r.witnesses {
            text += &format!("  {:>3}: {} points\n", w.label, w.points);
        }
        let passed = r.missing.is_empty() && r.unclassified == 0;
        return Ok(Report { passed, json: serde_json::to_value(&r)?, text });
    }
    let path = instance.ok_or_else(|| anyhow!("give an instance file or --realize"))?;
    let v = read_json(path)?;
    let poset: Poset = serde_json::from_value(v["poset"].clone()).context("poset")?;
    let c: EndoMap = serde_json::from_value(v["c"].clone()).context("c")?;
    let i: EndoMap = serde_json::from_value(v["i"].clone()).context("i")?;
    let label = kuratowski::classify(&poset, &c, &i).map_err(|e| anyhow!(e))?;
    let json = json!({ "label": label.name, "cardinality": label.cardinality(), "blocks": label.blocks() });
    Ok(Report::ok(json, format!("{} ({} operators)\n", label.name, label.cardinality())))
}

fn pseudo_cmd(cmd: &PseudoCmd) -> Result<Report> {
    match cmd {
        PseudoCmd::Verify { max_points } => {
            let cat = pseudo::catalog()?;
            let instances = pseudo::instances_upto(*max_points);
            let mut failures = Vec::new();
            let mut largest = 0;
            for inst in &instances {
                let r = pseudo::verify_edges(inst, &cat);
                largest = largest.max(pseudo::generate_m(inst).len());
                if !r.is_empty() {
                    failures.push(json!({ "instance": inst, "report": r }));
                }
            }
            let passed = failures.is_empty() && largest <= 31;
            let text = format!(
                "{} instances on at most {max_points} points, {} failing, largest monoid {largest}\n",
                instances.len(),
                failures.len()
            );
            let json = json!({ "instances": instances.len(), "largest_monoid": largest, "failures": failures });
            Ok(Report { passed, json, text })
        }
        PseudoCmd::Dashed { max_points } => {
            let r = pseudo::search_dashed_counterexamples(*max_points);
            let mut text = String::new();
            for e in &r.entries {
                match &e.witness {
                    Some(w) => text += &format!("{} <= {}: refuted on {} points at point {}\n", e.lower, e.upper, w.points, w.point),
                    None => text += &format!("{} <= {}: no witness\n", e.lower, e.upper),
                }
            }
            Ok(Report { passed: r.complete(), json: serde_json::to_value(&r)?, text })
        }
        PseudoCmd::Redundancy { max_points } => {
            let r = pseudo::implication_redundancy_check(*max_points);
            let missing = r.missing().len();
            let text = format!("{} obligations, {} discharged\n", r.obligations.len(), r.obligations.len() - missing);
            Ok(Report { passed: missing == 0, json: serde_json::to_value(&r)?, text })
        }
    }
}

fn locale_demo(frame: Option<&PathBuf>, max_elements: usize) -> Result<Report> {
    let cat = locale::sublocale_catalog()?;
    let frames = match frame {
        Some(path) => {
            let p: Poset = serde_json::from_value(read_json(path)?)?;
            vec![locale::check_frame(&p).map_err(|e| anyhow!(e))?]
        }
        None => locale::frames_upto(max_elements),
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut passed = true;
    for f in &frames {
        let r = locale::check_localic_properties(f, &cat);
        passed &= r.passed();
        text += &format!(
            "frame of {} elements: {} nuclei, monoid {} operators, {}\n",
            r.elements,
            r.nuclei,
            r.monoid_size,
            if r.passed() { "all checks hold".to_string() } else { format!("failed {:?} {:?}", r.failed, r.edge_violations) }
        );
        rows.push(serde_json::to_value(&r)?);
    }
    Ok(Report { passed, json: json!({ "frames": rows }), text })
}

fn verify(target: VerifyTarget, m: Option<u32>, n: Option<u32>, max_points: Option<usize>) -> Result<Report> {
    match target {
        VerifyTarget::Fig2 => {
            let cat = pseudo::catalog()?;
            let pairs = cat.verify_annotations();
            let points = max_points.unwrap_or(4);
            let bad = pseudo::instances_upto(points).iter().filter(|i| !pseudo::verify_edges(i, &cat).is_empty()).count();
            let passed = pairs.is_empty() && bad == 0;
            let text = format!(
                "critical pairs match annotations: {}\ninstances on at most {points} points violating edges: {bad}\n",
                pairs.is_empty()
            );
            Ok(Report { passed, json: json!({ "critical_pairs": pairs, "edge_failures": bad }), text })
        }
        VerifyTarget::Fig3 => {
            let upper = data::catalog(data::INTERIOR_PSEUDOCOMPLEMENT_QUOTIENT)?;
            let pairs = upper.critical_pairs().len();
            let annotations = upper.verify_annotations();
            let merges = pseudo::quotient_merges()?;
            let points = max_points.unwrap_or(4);
            let quotient: Vec<_> =
                pseudo::instances_upto(points).iter().filter_map(|i| pseudo::localic_quotient_check(i, &merges).ok()).collect();
            let quotient_bad = quotient.iter().filter(|r| !r.holds()).count();
            let cat = locale::sublocale_catalog()?;
            let frames: Vec<_> = locale::frames_upto(8).iter().map(|f| locale::check_localic_properties(f, &cat)).collect();
            let frames_bad = frames.iter().filter(|r| !r.passed()).count();
            let passed = pairs == 11 && annotations.is_empty() && quotient_bad == 0 && frames_bad == 0;
            let text = format!(
                "upper critical pairs: {pairs}\nquotient instances: {}, failing {quotient_bad}\nframes up to 8 elements: {}, failing {frames_bad}\n",
                quotient.len(),
                frames.len()
            );
            let json = json!({ "critical_pairs": pairs, "annotations": annotations, "quotient_failures": quotient_bad, "frame_failures": frames_bad });
            Ok(Report { passed, json, text })
        }
        VerifyTarget::Fig4 => {
            let p = Params::new(m.unwrap_or(3), n.unwrap_or(3)).map_err(|e| anyhow!(e))?;
            let points = max_points.unwrap_or(5);
            let sampled = collapse::order_intersection(&p, points);
            let alg = WordAlgebra::new(p);
            let passed = sampled == alg.order;
            let text = format!("({},{}) order equals pointwise order over {points} points: {passed}\n", p.m(), p.n());
            Ok(Report { passed, json: json!({ "params": [p.m(), p.n()], "max_points": points, "equal": passed }), text })
        }
        VerifyTarget::Fig5 => {
            let mut rows = Vec::new();
            let mut text = String::new();
            let mut passed = true;
            for ((m, n), cat) in data::two_generator_orders()? {
                let p = Params::new(m, n).map_err(|e| anyhow!(e))?;
                let ok = same_diagram(&words::hasse(&p), &cat);
                passed &= ok;
                text += &format!("({m},{n}): {}\n", if ok { "matches" } else { "DIFFERS" });
                rows.push(json!({ "params": [m, n], "matches": ok }));
            }
            Ok(Report { passed, json: json!({ "catalogs": rows }), text })
        }
        VerifyTarget::Fig6 | VerifyTarget::Table1 => {
            let catalog = ClassCatalog33::load()?;
            let points = max_points.unwrap_or(5);
            let p = Params::new(3, 3).expect("valid");
            let census = collapse::collapse_census(&p, points);
            let mut violations = BTreeSet::new();
            for fp in census.keys() {
                for v in catalog.check(fp) {
                    let keep = match (&v, target) {
                        (CoherenceViolation::Cell(..), VerifyTarget::Table1) => true,
                        (CoherenceViolation::Cell(..), _) => false,
                        (_, VerifyTarget::Table1) => false,
                        _ => true,
                    };
                    if keep {
                        violations.insert(format!("{v:?}"));
                    }
                }
            }
            let mut text = format!(
                "{} instances, {} distinct collapses on at most {points} points, {} violations\n",
                census.values().sum::<u64>(),
                census.len(),
                violations.len()
            );
            for v in &violations {
                text += &format!("  {v}\n");
            }
            Ok(Report { passed: violations.is_empty(), json: json!({ "collapses": census.len(), "violations": violations }), text })
        }
        VerifyTarget::Fig7 => {
            let p = Params::new(3, 3).expect("valid");
            let golden = collapse::load_golden(&p)?;
            let sets: Vec<PairSet> = golden.collapses.iter().map(|c| PairSet::from_pairs(&c.pairs)).collect();
            let alg = WordAlgebra::new(p);
            let ss = alg.index_of_word(&"ss".parse().expect("word"));
            let s = alg.index_of_word(&"s".parse().expect("word"));
            let tt = alg.index_of_word(&"tt".parse().expect("word"));
            let t = alg.index_of_word(&"t".parse().expect("word"));
            let flagged = sets.iter().filter(|c| c.contains(s, ss) && c.contains(t, tt)).count();
            let mut reproduced = true;
            for c in &golden.collapses {
                let inst = c.witness.instance(p).map_err(|e| anyhow!(e))?;
                reproduced &= collapse::satisfied_collapse(&inst).pairs == c.pairs;
            }
            let labels = (0..sets.len()).map(|k| format!("C{k}")).collect();
            let diagram = collapse::containment_order(&sets, labels);
            let passed = sets.len() == 52 && flagged == 16 && reproduced;
            let text = format!(
                "{} collapses, {flagged} satisfy s=ss and t=tt, {} containment edges, witnesses reproduce: {reproduced}\n",
                sets.len(),
                diagram.solid_edges().len()
            );
            let json = json!({ "collapses": sets.len(), "flagged": flagged, "edges": diagram.solid_edges(), "witnesses_reproduce": reproduced });
            Ok(Report { passed, json, text })
        }
    }
}

/// Same node names and same order relation.
fn same_diagram(a: &DiagramCatalog, b: &DiagramCatalog) -> bool {
    if a.nodes.len() != b.nodes.len() {
        return false;
    }
    let Ok(idx) = a.nodes.iter().map(|n| b.index(n)).collect::<Result<Vec<_>, _>>() else {
        return false;
    };
    let (oa, ob) = (a.order().expect("diagram"), b.order().expect("diagram"));
    (0..a.len()).all(|x| (0..a.len()).all(|y| oa[x][y] == ob[idx[x]][idx[y]]))
}
