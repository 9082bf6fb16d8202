use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use legr::augcount::{
    aug_number, basepoint_sites, brute_count_trivial, brute_count_vertex, formula_count_trivial,
    formula_count_vertex, verify_basepoint_independence, verify_main_theorem,
};
use legr::dsl::{self, ToJson};
use legr::front::{apply_rewrite, move_sites, FrontDiagram, Involution, MoveId, Rewrite};
use legr::rulings::{
    border_pairs, enumerate_rulings, enumerate_rulings_for, verify_gluing, NormalRuling,
};
use legr::QZPolynomial;

#[derive(Parser)]
#[command(name = "legr", version, about = "Rulings and augmentation numbers of Legendrian graph fronts")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a diagram and print its canonical form.
    Parse { file: PathBuf },
    /// List normal rulings.
    Rulings(DiagramArgs),
    /// Ruling polynomial.
    Rp(DiagramArgs),
    /// Augmentation number over F_q.
    Aug {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long)]
        q: u64,
    },
    /// Exhaustive point counts compared with the stratified formula.
    Bruteforce {
        #[command(subcommand)]
        target: BruteTarget,
    },
    /// Check one of the structural identities.
    Verify {
        #[command(subcommand)]
        check: VerifyCheck,
    },
    /// Apply a Legendrian isotopy move and print the result.
    Move {
        file: PathBuf,
        /// Move name, I to VI.
        #[arg(long)]
        id: MoveId,
        /// Event index where the move's window starts.
        #[arg(long)]
        at: usize,
        /// Variant number; the first matching one by default.
        #[arg(long)]
        variant: Option<u8>,
        /// Apply the move from the short side to the long side.
        #[arg(long)]
        expand: bool,
    },
}

#[derive(Args)]
struct DiagramArgs {
    file: PathBuf,
    #[command(flatten)]
    borders: BorderArgs,
    /// Restrict to one resolution: an involution per vertex, separated by ';'.
    #[arg(long)]
    phi: Option<String>,
}

#[derive(Args)]
struct BorderArgs {
    /// Left border ruling, e.g. "1-4,2-3".
    #[arg(long)]
    left: Option<String>,
    /// Right border ruling.
    #[arg(long)]
    right: Option<String>,
    /// Use every compatible pair of border rulings.
    #[arg(long)]
    all_borders: bool,
}

#[derive(Subcommand)]
enum BruteTarget {
    /// Morse complexes on a trivial tangle.
    Trivial {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        mu: Vec<i64>,
        #[arg(long)]
        q: u64,
        /// Count every differential, not only acyclic ones.
        #[arg(long)]
        all: bool,
    },
    /// Augmentations of the internal algebra of a vertex.
    Vertex {
        /// Vertex type "l,r".
        #[arg(long = "type", value_delimiter = ',', required = true)]
        kind: Vec<usize>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        mu: Vec<i64>,
        #[arg(long)]
        q: u64,
    },
}

#[derive(Subcommand)]
enum VerifyCheck {
    /// Augmentation number against the normalized ruling polynomial.
    Theorem {
        file: PathBuf,
        #[command(flatten)]
        borders: BorderArgs,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        q: Vec<u64>,
    },
    /// Ruling polynomial of a concatenation against the matrix product.
    Gluing {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        borders: BorderArgs,
    },
    /// Normalized augmentation number under splitting each base point.
    Basepoint {
        file: PathBuf,
        #[command(flatten)]
        borders: BorderArgs,
        #[arg(long, default_value_t = 3)]
        q: u64,
    },
    /// Ruling polynomials under every applicable move.
    Moves { file: PathBuf },
}

/// Errors that map to exit code 2.
#[derive(Debug)]
struct Usage(anyhow::Error);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: impl Into<anyhow::Error>) -> anyhow::Error {
    anyhow::Error::new(Usage(e.into()))
}

fn load(path: &Path) -> Result<FrontDiagram> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display())).map_err(usage)?;
    let d = dsl::parse(&text).with_context(|| path.display().to_string()).map_err(usage)?;
    d.validate().with_context(|| path.display().to_string()).map_err(usage)?;
    Ok(d)
}

fn border(s: Option<&str>, n: usize, side: &str) -> Result<Involution> {
    match s {
        Some(s) => Involution::parse_border(s, n).with_context(|| format!("--{}", side)).map_err(usage),
        None if n == 0 => Ok(Involution::identity(0)),
        None => Err(usage(anyhow!("--{} is required for a border with {} strands (or pass --all-borders)", side, n))),
    }
}

/// The border pairs selected by the flags. Without flags, empty borders
/// select the single trivial pair and nonempty ones select every pair.
fn select_borders(d: &FrontDiagram, args: &BorderArgs) -> Result<Vec<(Involution, Involution)>> {
    let trace = d.validate().map_err(usage)?;
    let unspecified = args.left.is_none() && args.right.is_none();
    if args.all_borders || (unspecified && (d.left_arity > 0 || trace.right_arity() > 0)) {
        return border_pairs(d).map_err(usage);
    }
    let l = border(args.left.as_deref(), d.left_arity, "left")?;
    let r = border(args.right.as_deref(), trace.right_arity(), "right")?;
    Ok(vec![(l, r)])
}

/// The single border pair selected by the flags.
fn single_border(d: &FrontDiagram, args: &BorderArgs) -> Result<(Involution, Involution)> {
    let mut pairs = select_borders(d, args)?;
    match pairs.len() {
        1 => Ok(pairs.remove(0)),
        0 => Err(usage(anyhow!("the borders admit no rulings"))),
        _ if args.all_borders => Err(usage(anyhow!("this command needs a single border pair"))),
        _ => Err(usage(anyhow!("pass --left and --right to pick one of {} border pairs", pairs.len()))),
    }
}

fn parse_phi(d: &FrontDiagram, s: &str) -> Result<Vec<Involution>> {
    let sites = d.vertices().map_err(usage)?;
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() != sites.len() {
        return Err(usage(anyhow!("--phi lists {} involutions for {} vertices", parts.len(), sites.len())));
    }
    parts
        .iter()
        .zip(&sites)
        .map(|(p, v)| Involution::parse_border(p, v.left + v.right).context("--phi").map_err(usage))
        .collect()
}

fn rulings_of(args: &DiagramArgs, d: &FrontDiagram, l: &Involution, r: &Involution) -> Result<Vec<NormalRuling>> {
    let out = match &args.phi {
        Some(s) => enumerate_rulings_for(d, &parse_phi(d, s)?, l, r),
        None => enumerate_rulings(d, l, r),
    };
    out.map_err(usage)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values always serialize"));
}

fn render_involution(rho: &Involution) -> String {
    if rho.is_empty() {
        "∅".to_string()
    } else {
        rho.to_string()
    }
}

fn cmd_rulings(args: &DiagramArgs, json_out: bool) -> Result<bool> {
    let d = load(&args.file)?;
    let mut blocks = Vec::new();
    for (l, r) in select_borders(&d, &args.borders)? {
        let rulings = rulings_of(args, &d, &l, &r)?;
        if json_out {
            blocks.push(json!({"left": l.to_string(), "right": r.to_string(), "rulings": rulings.to_json()}));
            continue;
        }
        println!("⟨{}| · |{}⟩: {} rulings", render_involution(&l), render_involution(&r), rulings.len());
        for (k, x) in rulings.iter().enumerate() {
            let phi: Vec<String> = x.phi.iter().map(ToString::to_string).collect();
            println!(
                "  {:>3}  phi=[{}]  switches={:?}  chi={} r={} A={}  weight={}",
                k + 1,
                phi.join("; "),
                x.switches,
                x.chi,
                x.r,
                x.a,
                x.weight()
            );
        }
    }
    if json_out {
        print_json(&Value::Array(blocks));
    }
    Ok(true)
}

fn cmd_rp(args: &DiagramArgs, json_out: bool) -> Result<bool> {
    let d = load(&args.file)?;
    let pairs = select_borders(&d, &args.borders)?;
    let mut rows = Vec::new();
    for (l, r) in &pairs {
        let p: QZPolynomial = rulings_of(args, &d, l, r)?.iter().map(NormalRuling::weight).sum();
        rows.push((l.clone(), r.clone(), p));
    }
    if json_out {
        if let [(_, _, p)] = &rows[..] {
            print_json(&p.to_json());
        } else {
            let v: Vec<Value> = rows
                .iter()
                .map(|(l, r, p)| json!({"left": l.to_string(), "right": r.to_string(), "polynomial": p.to_json()}))
                .collect();
            print_json(&Value::Array(v));
        }
    } else if let [(_, _, p)] = &rows[..] {
        println!("{}", p);
    } else {
        for (l, r, p) in &rows {
            println!("⟨{}|R|{}⟩ = {}", render_involution(l), render_involution(r), p);
        }
    }
    Ok(true)
}

fn cmd_aug(args: &DiagramArgs, q: u64, json_out: bool) -> Result<bool> {
    if args.phi.is_some() {
        bail!(usage(anyhow!("--phi is not supported by aug")));
    }
    let d = load(&args.file)?;
    let (l, r) = single_border(&d, &args.borders)?;
    let report = aug_number(&d, &l, &r, q).map_err(usage)?;
    if json_out {
        print_json(&report.to_json());
        return Ok(true);
    }
    println!("q = {}", report.q);
    println!("count = {}", report.count);
    println!("dim = {}", report.dim);
    println!("aug = {}", report.aug);
    for s in &report.strata {
        let phi: Vec<String> = s.phi.iter().map(ToString::to_string).collect();
        println!(
            "  phi=[{}] switches={:?}: (q-1)^{} q^{} = {}",
            phi.join("; "),
            s.switches,
            s.torus_rank,
            s.affine_rank,
            s.count
        );
    }
    for w in &report.warnings {
        eprintln!("warning: {}", w);
    }
    Ok(true)
}

fn cmd_bruteforce(target: &BruteTarget, json_out: bool) -> Result<bool> {
    let (count, formula, label) = match target {
        BruteTarget::Trivial { mu, q, all } => {
            let count = brute_count_trivial(mu, *q, !all).map_err(usage)?;
            (count, formula_count_trivial(mu, *q, !all), format!("trivial μ={:?} q={}", mu, q))
        }
        BruteTarget::Vertex { kind, mu, q } => {
            let &[l, r] = &kind[..] else {
                bail!(usage(anyhow!("--type expects two numbers l,r")));
            };
            if mu.len() != l + r {
                bail!(usage(anyhow!("--mu lists {} potentials for a vertex of type ({},{})", mu.len(), l, r)));
            }
            let count = brute_count_vertex(l, r, mu, *q).map_err(usage)?;
            (count, formula_count_vertex(l, r, mu, *q), format!("vertex ({},{}) μ={:?} q={}", l, r, mu, q))
        }
    };
    let agree = formula == count.into();
    if json_out {
        print_json(&json!({"count": count, "formula": formula.to_string(), "agree": agree}));
    } else {
        println!("{}", label);
        println!("brute force: {}", count);
        println!("formula:     {}", formula);
        println!("{}", if agree { "agree" } else { "DISAGREE" });
    }
    Ok(agree)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn cmd_verify(check: &VerifyCheck, json_out: bool) -> Result<bool> {
    let mut all_ok = true;
    let mut out = Vec::new();
    match check {
        VerifyCheck::Theorem { file, borders, q } => {
            let d = load(file)?;
            for (l, r) in select_borders(&d, borders)? {
                let rep = verify_main_theorem(&d, &l, &r, q).map_err(usage)?;
                all_ok &= rep.holds();
                if !json_out {
                    println!("⟨{}| · |{}⟩", render_involution(&l), render_involution(&r));
                    for row in &rep.rows {
                        println!("  q={}: aug={} ruling side={} {}", row.q, row.aug, row.ruling_side, verdict(row.holds));
                    }
                    for w in &rep.warnings {
                        eprintln!("warning: {}", w);
                    }
                }
                out.push(json!({"left": l.to_string(), "right": r.to_string(), "report": rep.to_json()}));
            }
        }
        VerifyCheck::Gluing { first, second, borders } => {
            let d1 = load(first)?;
            let d2 = load(second)?;
            let glued = legr::front::concatenate(&d1, &d2).map_err(usage)?;
            for (l, r) in select_borders(&glued, borders)? {
                let rep = verify_gluing(&d1, &d2, &l, &r).map_err(usage)?;
                all_ok &= rep.holds;
                if !json_out {
                    println!(
                        "⟨{}| · |{}⟩: glued={} summed={} {}",
                        render_involution(&l),
                        render_involution(&r),
                        rep.glued,
                        rep.summed,
                        verdict(rep.holds)
                    );
                }
                out.push(rep.to_json());
            }
        }
        VerifyCheck::Basepoint { file, borders, q } => {
            let d = load(file)?;
            let pairs = select_borders(&d, borders)?;
            for site in basepoint_sites(&d) {
                for (l, r) in &pairs {
                    let rep = verify_basepoint_independence(&d, site, l, r, *q).map_err(usage)?;
                    all_ok &= rep.holds;
                    if !json_out {
                        println!(
                            "{:?} ⟨{}| · |{}⟩: {} -> {} {}",
                            site,
                            render_involution(l),
                            render_involution(r),
                            rep.before.1,
                            rep.after.1,
                            verdict(rep.holds)
                        );
                    }
                    out.push(json!({"site": format!("{:?}", site), "report": rep.to_json()}));
                }
            }
        }
        VerifyCheck::Moves { file } => {
            let d = load(file)?;
            let before = polynomials(&d)?;
            for rw in move_sites(&d) {
                let (moved, _) = apply_rewrite(&d, &rw).map_err(usage)?;
                let holds = polynomials(&moved)? == before;
                all_ok &= holds;
                if !json_out {
                    println!("{} {}", describe(&rw), verdict(holds));
                }
                out.push(json!({"move": describe(&rw), "holds": holds}));
            }
        }
    }
    if json_out {
        print_json(&json!({"holds": all_ok, "checks": out}));
    } else {
        println!("{}", if all_ok { "verified" } else { "verification FAILED" });
    }
    Ok(all_ok)
}

fn polynomials(d: &FrontDiagram) -> Result<Vec<QZPolynomial>> {
    border_pairs(d)
        .map_err(usage)?
        .iter()
        .map(|(l, r)| legr::rulings::ruling_polynomial(d, l, r).map_err(usage))
        .collect()
}

fn describe(rw: &Rewrite) -> String {
    format!(
        "{:?}{} at {}{}",
        rw.id,
        (b'a' + rw.variant) as char,
        rw.at,
        if rw.expand { format!(" expand strand {}", rw.strand) } else { String::new() }
    )
}

fn cmd_move(file: &Path, id: MoveId, at: usize, variant: Option<u8>, expand: bool, json_out: bool) -> Result<bool> {
    let d = load(file)?;
    let rw = move_sites(&d)
        .into_iter()
        .find(|rw| rw.id == id && rw.at == at && rw.expand == expand && variant.is_none_or(|v| v == rw.variant))
        .ok_or_else(|| usage(anyhow!("move {:?} does not apply at event {}", id, at)))?;
    let (moved, _) = apply_rewrite(&d, &rw).map_err(usage)?;
    if json_out {
        print_json(&moved.to_json());
    } else {
        print!("{}", dsl::serialize(&moved));
    }
    Ok(true)
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Parse { file } => {
            let d = load(file)?;
            if cli.json {
                print_json(&d.to_json());
            } else {
                print!("{}", dsl::serialize(&d));
            }
            Ok(true)
        }
        Command::Rulings(args) => cmd_rulings(args, cli.json),
        Command::Rp(args) => cmd_rp(args, cli.json),
        Command::Aug { diagram, q } => cmd_aug(diagram, *q, cli.json),
        Command::Bruteforce { target } => cmd_bruteforce(target, cli.json),
        Command::Verify { check } => cmd_verify(check, cli.json),
        Command::Move { file, id, at, variant, expand } => cmd_move(file, *id, *at, *variant, *expand, cli.json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    legr::configure_threads();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            match e.downcast_ref::<Usage>() {
                Some(u) => eprintln!("error: {}", u),
                None => eprintln!("error: {:#}", e),
            }
            ExitCode::from(2)
        }
    }
}
