//! `posetlab`: one check per invocation, reported as `key: value` lines.
//!
//! Exit status: 0 for a passing verdict or a finished analysis, 1 for a
//! failing verdict, 2 for bad input.

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use sha2::{Digest, Sha256};

use posetlab::certificate::{Certificate, Verdict, Witness};
use posetlab::document::{PosetDoc, PresentationDoc, WordDoc};
use posetlab::generate::{self, fixtures};
use posetlab::omega::{self, JacoRule, OmegaPresentation, Tail};
use posetlab::recognition;
use posetlab::structure::{self, AutonomousMode};
use posetlab::symdyn::{self, FactorPoset, Recurrence, WordSystem};
use posetlab::{BigOrdinal, Error, FinitePoset, Report, Result};

#[derive(Parser)]
#[command(name = "posetlab", version, about = "Checks on finite posets, presentations on ℕ, words and ordinals")]
struct Cli {
    /// Print the elapsed time to stderr. Reports themselves carry no timings.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Report,
    Dot,
    /// The poset document format.
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Checks on a finite poset read from a JSON document.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum)]
        check: AnalyzeCheck,
        #[arg(long, value_enum, default_value = "report")]
        format: Format,
        /// Enumeration cap for linear extensions.
        #[arg(long, default_value_t = posetlab::poset::DEFAULT_EXTENSION_CAP)]
        cap: u64,
        /// Uniformity boundary `B`; needs two levels above it.
        #[arg(long)]
        boundary: Option<usize>,
        #[arg(long, value_enum, default_value = "fast")]
        mode: Mode,
        /// List only proper autonomous sets.
        #[arg(long)]
        proper: bool,
        /// Realizer size for the realizer check.
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Checks on a Jaco complement given on the command line.
    Jaco {
        /// Explicit prefix of `a_n`, comma separated.
        #[arg(long, value_delimiter = ',')]
        prefix: Vec<u64>,
        /// `const:c` or `affine:s,t` for `a_n = s·n + t`.
        #[arg(long)]
        tail: String,
        /// Extra pairs `a:b`, making a sandwich over the rule.
        #[arg(long = "extra")]
        extras: Vec<String>,
        /// Accept rules that are not nondecreasing or not positive.
        #[arg(long)]
        no_validate: bool,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Checks on a presentation read from a JSON document.
    Omega {
        file: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Substitution and literal words, their factors and factor posets.
    Word {
        /// Word-system document; alternatively use --system.
        file: Option<PathBuf>,
        #[arg(long, value_enum, conflicts_with = "file")]
        system: Option<NamedSystem>,
        #[arg(long, value_enum)]
        check: WordCheck,
        /// Prefix length.
        #[arg(long, default_value_t = 10_000)]
        length: usize,
        /// Longest factor length.
        #[arg(long, default_value_t = 12)]
        maxlen: usize,
        /// Top factor lengths left out of the minimal-type quantifiers.
        #[arg(long, default_value_t = 2)]
        margin: usize,
        #[arg(long, value_enum, default_value = "report")]
        format: Format,
    },
    /// Ordinal arithmetic in Cantor normal form, e.g. `w^2*3+w+4`.
    Ord {
        #[command(subcommand)]
        op: OrdOp,
        /// Emit a full report instead of the bare result.
        #[arg(long, global = true)]
        report: bool,
    },
    /// Seeded random posets and corpus fixtures as JSON documents.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge probability for random posets.
        #[arg(long, default_value_t = 0.3)]
        density: f64,
    },
}

#[derive(clap::Args)]
struct WindowArgs {
    #[arg(long, value_enum)]
    check: OmegaCheck,
    /// Window size `N`: elements `0..N`.
    #[arg(long, default_value_t = 200)]
    window: usize,
    /// Uniformity boundary on the window's levels.
    #[arg(long)]
    boundary: Option<usize>,
    #[arg(long, value_enum, default_value = "report")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnalyzeCheck {
    Semiorder,
    Interval,
    Threshold,
    Levels,
    Extensions,
    Autonomous,
    AntichainRank,
    Spectrum,
    Uniformity,
    HMinimal,
    Realizer,
}

#[derive(Clone, Copy, ValueEnum)]
enum OmegaCheck {
    StrictOrder,
    MinimalType,
    Jonsson,
    Purity,
    Sandwich,
    Uniformity,
    HMinimal,
    Patterns,
    /// Minimum extension type; layered documents only.
    Spectrum,
}

#[derive(Clone, Copy, ValueEnum)]
enum WordCheck {
    Generate,
    Factors,
    Recurrence,
    MinimalType,
}

#[derive(Clone, Copy, ValueEnum)]
enum NamedSystem {
    Fibonacci,
    ThueMorse,
    Zeros,
    /// `1` followed by zeros.
    OneThenZeros,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Fast,
    Exhaustive,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Poset,
    Interval,
    Layered,
    Le2,
    QAnalog,
    ChainPlusPoint,
    TwoPlusTwo,
    ThreePlusOne,
}

#[derive(Subcommand)]
enum OrdOp {
    Compare { a: String, b: String },
    Add { a: String, b: String },
    Natsum { a: String, b: String },
    Limitpart { a: String },
}

/// What a command writes to stdout and how it exits.
struct Outcome {
    text: String,
    failed: bool,
}

impl Outcome {
    fn report(r: &Report) -> Self {
        Outcome {
            text: r.to_string(),
            failed: r.verdict == Verdict::Fail.to_string(),
        }
    }

    fn plain(text: impl Into<String>) -> Self {
        Outcome {
            text: text.into(),
            failed: false,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let result = run(cli.command);
    if cli.timings {
        eprintln!("elapsed-ms: {}", start.elapsed().as_millis());
    }
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Document(format!("{}: {e}", path.display())))
}

fn join<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn sets(items: &[Vec<usize>]) -> String {
    join(items.iter().map(|s| format!("{{{}}}", join(s))))
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Analyze {
            file,
            check,
            format,
            cap,
            boundary,
            mode,
            proper,
            k,
        } => {
            let text = read(&file)?;
            let p = PosetDoc::parse(&text)?.to_poset()?;
            match format {
                Format::Dot => return Ok(Outcome::plain(p.to_dot("P"))),
                Format::Json => return Ok(Outcome::plain(PosetDoc::from_poset(&p).to_json() + "\n")),
                Format::Report => {}
            }
            let mut r = Report::new("analyze", digest(text.as_bytes()));
            r.field("elements", p.len());
            analyze(&p, check, &mut r, cap, boundary, mode, proper, k)?;
            Ok(Outcome::report(&r))
        }
        Command::Jaco {
            prefix,
            tail,
            extras,
            no_validate,
            window,
        } => {
            let tail = parse_tail(&tail)?;
            let rule = if no_validate {
                JacoRule::new_unchecked(prefix.clone(), tail)
            } else {
                JacoRule::new(prefix.clone(), tail)?
            };
            let extras = extras.iter().map(|e| parse_pair(e)).collect::<Result<Vec<_>>>()?;
            let canonical = format!("prefix={prefix:?} tail={tail:?} extras={extras:?} validate={}", !no_validate);
            let pres = if extras.is_empty() {
                OmegaPresentation::jaco(rule)
            } else {
                OmegaPresentation::sandwich(OmegaPresentation::jaco(rule), extras)?
            };
            let mut r = Report::new("jaco", digest(canonical.as_bytes()));
            presentation_check(&pres, &window, &mut r)
        }
        Command::Omega { file, window } => {
            let text = read(&file)?;
            let doc = PresentationDoc::parse(&text)?;
            let mut r = Report::new("omega", digest(text.as_bytes()));
            if doc.is_layered() {
                if !matches!(window.check, OmegaCheck::Spectrum) {
                    return Err(Error::Document("layered documents support only the spectrum check".into()));
                }
                let t = structure::min_extension_type(&doc.to_layered()?)?;
                r.field("check", "spectrum").field("min-type", t);
                return Ok(Outcome::report(&r));
            }
            presentation_check(&doc.to_presentation()?, &window, &mut r)
        }
        Command::Word {
            file,
            system,
            check,
            length,
            maxlen,
            margin,
            format,
        } => {
            let (sys, input) = match (file, system) {
                (Some(path), _) => {
                    let text = read(&path)?;
                    (WordDoc::parse(&text)?.to_system()?, text)
                }
                (None, Some(named)) => (named_system(named), format!("system={}", named_name(named))),
                (None, None) => return Err(Error::Document("give a word-system file or --system".into())),
            };
            let input = format!("{input}\nlength={length} maxlen={maxlen} margin={margin}");
            let mut r = Report::new("word", digest(input.as_bytes()));
            word(&sys, check, length, maxlen, margin, format, &mut r)
        }
        Command::Ord { op, report } => ord(op, report),
        Command::Gen {
            kind,
            n,
            seed,
            density,
        } => {
            let mut rng = generate::rng(seed);
            let p = match kind {
                GenKind::Poset => generate::random_poset(&mut rng, n, density.clamp(0.0, 1.0)),
                GenKind::Interval => generate::random_interval_order(&mut rng, n).0,
                GenKind::Layered => generate::random_layered_poset(&mut rng, n),
                GenKind::Le2 => fixtures::le2(n),
                GenKind::QAnalog => fixtures::q_analog(),
                GenKind::ChainPlusPoint => fixtures::chain_plus_point(n),
                GenKind::TwoPlusTwo => posetlab::poset::patterns::two_plus_two(),
                GenKind::ThreePlusOne => posetlab::poset::patterns::three_plus_one(),
            };
            Ok(Outcome::plain(PosetDoc::from_poset(&p).to_json() + "\n"))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn analyze(
    p: &FinitePoset,
    check: AnalyzeCheck,
    r: &mut Report,
    cap: u64,
    boundary: Option<usize>,
    mode: Mode,
    proper: bool,
    k: usize,
) -> Result<()> {
    match check {
        AnalyzeCheck::Interval => {
            r.field("check", "interval");
            let cert = recognition::is_interval_order(p);
            if cert.passed() {
                let iv = recognition::interval_representation(p)?;
                r.field("intervals", join(iv.intervals.iter().map(|(a, b)| format!("{a}:{b}"))));
            }
            r.certificate(&cert);
        }
        AnalyzeCheck::Semiorder => {
            r.field("check", "semiorder");
            let cert = recognition::is_semiorder(p);
            if cert.passed() {
                let psi = recognition::psi_representation(p, true)?;
                r.field("psi-chain", join(&psi.chain)).field("psi-threshold", join(&psi.threshold));
            }
            r.certificate(&cert);
        }
        AnalyzeCheck::Threshold => {
            r.field("check", "threshold");
            r.certificate(&threshold_certificate(p));
        }
        AnalyzeCheck::Levels => {
            let profile = structure::levels(p);
            r.field("check", "levels").field("height", profile.height);
            for (alpha, level) in profile.levels.iter().enumerate() {
                r.field(format!("level-{alpha}"), join(level));
            }
            r.field("konig-chain", join(structure::konig_chain(p)));
        }
        AnalyzeCheck::Extensions => {
            r.field("check", "extensions").field("extensions", p.count_linear_extensions(cap));
            if p.len() <= 64 {
                r.field("extensions-exact", p.extension_count_exact::<BigUint>()?);
            }
        }
        AnalyzeCheck::Autonomous => {
            let mode = match mode {
                Mode::Fast => AutonomousMode::Fast,
                Mode::Exhaustive => AutonomousMode::Exhaustive,
            };
            let found = structure::autonomous_subsets(p, proper, mode)?;
            r.field("check", "autonomous")
                .field("autonomous-count", found.len())
                .field("autonomous", sets(&found));
        }
        AnalyzeCheck::AntichainRank => {
            r.field("check", "antichain-rank")
                .field("antichain-rank", structure::antichain_rank(p)?);
        }
        AnalyzeCheck::Spectrum => {
            let s = structure::spectrum_finite(p, posetlab::poset::DEFAULT_EXTENSION_CAP);
            r.field("check", "spectrum")
                .field("min-type", s.min_type)
                .field("extensions", s.extension_count)
                .field("single-type", s.single_type);
        }
        AnalyzeCheck::Uniformity => {
            r.field("check", "uniformity");
            uniformity_fields(p, need_boundary(boundary)?, r)?;
        }
        AnalyzeCheck::HMinimal => {
            r.field("check", "h-minimal");
            r.certificate(&structure::h_minimal_check(p, need_boundary(boundary)?)?);
        }
        AnalyzeCheck::Realizer => {
            r.field("check", "realizer").field("k", k);
            match p.realizer_search(k)? {
                Some(orders) => {
                    for (i, o) in orders.iter().enumerate() {
                        r.field(format!("realizer-{i}"), join(o));
                    }
                    r.verdict = Verdict::Pass.to_string();
                }
                None => r.verdict = Verdict::Fail.to_string(),
            }
        }
    }
    Ok(())
}

fn need_boundary(b: Option<usize>) -> Result<usize> {
    b.ok_or_else(|| Error::Document("this check needs --boundary".into()))
}

fn uniformity_fields(p: &FinitePoset, boundary: usize, r: &mut Report) -> Result<()> {
    let w = structure::uniformity(p, boundary)?;
    r.field("boundary", boundary)
        .field("uniformity", w.kind.as_str())
        .field("phi", join(&w.phi));
    if let Some(level) = w.failing_level {
        r.field("failing-level", level);
    }
    Ok(())
}

/// Threshold orders: `≤_pred` total and equal to `≤_succ`. A failure names
/// the first pair where that breaks.
fn threshold_certificate(p: &FinitePoset) -> Certificate {
    let pred = recognition::pred_quasiorder(p);
    let succ = recognition::succ_quasiorder(p);
    if let Some((x, y)) = pred.first_incomparable() {
        return Certificate::new(Verdict::Fail, "pred-total", Witness::Pair(x, y));
    }
    let n = p.len();
    let differ = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| pred.leq(x, y) != succ.leq(x, y));
    match differ {
        Some((x, y)) => Certificate::new(Verdict::Fail, "pred-equals-succ", Witness::Pair(x, y)),
        None => Certificate::new(
            Verdict::Pass,
            "quasi-order",
            Witness::Classes {
                name: "pred".into(),
                classes: pred.classes().expect("total"),
            },
        ),
    }
}

fn parse_tail(s: &str) -> Result<Tail> {
    let bad = || Error::Parse(format!("tail '{s}' is not const:c or affine:s,t"));
    let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
    match kind {
        "const" => Ok(Tail::Const(rest.trim().parse().map_err(|_| bad())?)),
        "affine" => {
            let (a, b) = rest.split_once(',').ok_or_else(bad)?;
            Ok(Tail::Affine {
                slope: a.trim().parse().map_err(|_| bad())?,
                offset: b.trim().parse().map_err(|_| bad())?,
            })
        }
        _ => Err(bad()),
    }
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("pair '{s}' is not a:b"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn presentation_check(pres: &OmegaPresentation, w: &WindowArgs, r: &mut Report) -> Result<Outcome> {
    let n = w.window;
    if n == 0 {
        return Err(Error::Document("--window must be at least 1".into()));
    }
    match w.format {
        Format::Dot => return Ok(Outcome::plain(pres.truncate(n)?.to_dot("P"))),
        Format::Json => return Ok(Outcome::plain(PosetDoc::from_poset(&pres.truncate(n)?).to_json() + "\n")),
        Format::Report => {}
    }
    r.field("window", n);
    match w.check {
        OmegaCheck::StrictOrder => {
            r.field("check", "strict-order");
            r.certificate(&omega::strict_order_check(pres, n));
        }
        OmegaCheck::MinimalType => {
            r.field("check", "minimal-type");
            r.certificate(&omega::minimal_type_certify(pres, n)?);
        }
        OmegaCheck::Jonsson => {
            r.field("check", "jonsson");
            r.certificate(&omega::jonsson_countable_check(pres, n)?);
        }
        OmegaCheck::Purity => {
            r.field("check", "purity");
            r.certificate(&omega::purity_certify(pres, n)?);
        }
        OmegaCheck::Sandwich => {
            r.field("check", "sandwich");
            match omega::sandwich_check(pres, n) {
                Ok(cert) => {
                    r.certificate(&cert);
                }
                Err(Error::ContainmentViolated(a, b)) => {
                    r.certificate(&Certificate::new(Verdict::Fail, "containment", Witness::Pair(a, b)));
                }
                Err(e) => return Err(e),
            }
        }
        OmegaCheck::Uniformity => {
            r.field("check", "uniformity");
            uniformity_fields(&pres.truncate(n)?, need_boundary(w.boundary)?, r)?;
        }
        OmegaCheck::HMinimal => {
            r.field("check", "h-minimal");
            r.certificate(&structure::h_minimal_check(&pres.truncate(n)?, need_boundary(w.boundary)?)?);
        }
        OmegaCheck::Patterns => {
            let g = omega::pattern_growth(pres, n)?;
            r.field("check", "patterns")
                .field("windows", join(g.windows))
                .field("antichain", join(g.antichain))
                .field("descending-chain", join(g.descending))
                .field("chain-with-top", join(g.below))
                .field("chain-beside-point", join(g.beside))
                .field("evidence", join(g.evidence()));
        }
        OmegaCheck::Spectrum => {
            return Err(Error::Document("the spectrum check needs a layered document".into()));
        }
    }
    Ok(Outcome::report(r))
}

fn named_system(s: NamedSystem) -> WordSystem {
    match s {
        NamedSystem::Fibonacci => WordSystem::fibonacci(),
        NamedSystem::ThueMorse => WordSystem::thue_morse(),
        NamedSystem::Zeros => WordSystem::literal("", "0").unwrap(),
        NamedSystem::OneThenZeros => WordSystem::literal("1", "0").unwrap(),
    }
}

fn named_name(s: NamedSystem) -> &'static str {
    match s {
        NamedSystem::Fibonacci => "fibonacci",
        NamedSystem::ThueMorse => "thue-morse",
        NamedSystem::Zeros => "zeros",
        NamedSystem::OneThenZeros => "one-then-zeros",
    }
}

fn word(
    sys: &WordSystem,
    check: WordCheck,
    length: usize,
    maxlen: usize,
    margin: usize,
    format: Format,
    r: &mut Report,
) -> Result<Outcome> {
    if length == 0 {
        return Err(Error::Document("--length must be at least 1".into()));
    }
    let prefix = sys.generate(length)?;
    if !matches!(check, WordCheck::Generate) && maxlen > prefix.len() {
        return Err(Error::Document(format!("--maxlen {maxlen} exceeds the prefix length")));
    }
    if format != Format::Report {
        let fp = FactorPoset::from_prefix(&prefix, maxlen)?;
        return Ok(Outcome::plain(match format {
            Format::Dot => fp.to_dot("F"),
            _ => PosetDoc::from_poset(&fp.poset).to_json() + "\n",
        }));
    }
    r.field("length", length);
    match check {
        WordCheck::Generate => {
            r.field("check", "generate").field("prefix", &prefix);
        }
        WordCheck::Factors => {
            let f = symdyn::factors(&prefix, maxlen);
            r.field("check", "factors").field("factor-count", f.len());
            for len in 1..=maxlen {
                r.field(format!("factors-{len}"), join(f.iter().filter(|w| w.len() == len)));
            }
        }
        WordCheck::Recurrence => {
            let profile = symdyn::recurrence_profile(&prefix, maxlen)?;
            r.field("check", "recurrence");
            for (i, v) in profile.values.iter().enumerate() {
                let text = match v {
                    Recurrence::Bounded(x) => x.to_string(),
                    Recurrence::Unbounded { observed } => format!("unbounded {}", join(observed)),
                };
                r.field(format!("recurrence-{}", i + 1), text);
            }
        }
        WordCheck::MinimalType => {
            let fp = FactorPoset::from_prefix(&prefix, maxlen)?;
            let cert = symdyn::minimal_type_window_check(&fp, margin)?;
            r.field("check", "minimal-type").field("margin", margin);
            if let Witness::Table { rows, .. } = &cert.witness {
                if cert.passed() {
                    let profile = symdyn::recurrence_profile(&prefix, maxlen)?;
                    let ok = symdyn::recurrence_cross_check(rows, &profile);
                    r.field("cross-check", if ok { "ok" } else { "mismatch" });
                }
            }
            r.certificate(&cert);
        }
    }
    Ok(Outcome::report(r))
}

fn ord(op: OrdOp, report: bool) -> Result<Outcome> {
    let parse = |s: &str| s.parse::<BigOrdinal>();
    let (name, args, result) = match &op {
        OrdOp::Compare { a, b } => {
            let o = match parse(a)?.cmp(&parse(b)?) {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            };
            ("compare", vec![a, b], o.to_string())
        }
        OrdOp::Add { a, b } => ("add", vec![a, b], parse(a)?.add(&parse(b)?).to_string()),
        OrdOp::Natsum { a, b } => ("natsum", vec![a, b], parse(a)?.natural_sum(&parse(b)?).to_string()),
        OrdOp::Limitpart { a } => {
            let (l, rem) = parse(a)?.limit_part();
            ("limitpart", vec![a], format!("{l} {rem}"))
        }
    };
    if !report {
        return Ok(Outcome::plain(result + "\n"));
    }
    let input = format!("{name} {}", args.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(" "));
    let mut r = Report::new("ord", digest(input.as_bytes()));
    r.field("op", name).field("result", result);
    Ok(Outcome::report(&r))
}
