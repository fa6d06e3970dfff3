mod group;
mod suite;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use plring::chain::minimality_probe;
use plring::cvgraph::{ring_witnesses, DEFAULT_K_MAX};
use plring::exactnum::{parse_closed_set, parse_open, parse_rat, Closed, Support};
use plring::higman::{co_move, moves_into, search_higman};
use plring::plmap::{GenAssignment, MapKind, Word};
use plring::ring::make_standard_ring5;

use group::Group;
use suite::{Format, Suite};

/// Exit status for a usage or input error.
const EXIT_USAGE: u8 = 2;
/// Exit status when a bounded search finds nothing.
const EXIT_NOTFOUND: u8 = 3;

#[derive(Parser)]
#[command(
    name = "plring",
    version,
    about = "Build chain and ring groups of PL homeomorphisms and check their certificates"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write map and group files for a standard object.
    Build {
        #[command(subcommand)]
        what: BuildKind,
    },
    /// Run a verification suite and print one CHECK line per check.
    Verify(VerifyArgs),
    /// Bounded searches for certificates.
    Search {
        #[command(subcommand)]
        what: SearchKind,
    },
    /// Orbit coverage of a window, as CSV.
    Orbit(OrbitArgs),
    /// Support records for plotting.
    Plotdata(PlotArgs),
}

#[derive(Subcommand)]
enum BuildKind {
    Ring {
        /// The rotation-symmetric ring of five bumps on a circle of length 5.
        #[arg(long, required = true)]
        standard: bool,
        #[arg(long)]
        out: PathBuf,
    },
    Chain {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    Kkl {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Group file, or builtin:ring5, builtin:kkl, builtin:chain<n>.
    group: String,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Witness file; overrides the one named by the group file.
    #[arg(long)]
    witness: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest iterated commutator tried for distinguished pairs.
    #[arg(long, default_value_t = DEFAULT_K_MAX)]
    k_max: usize,
}

#[derive(Subcommand)]
enum SearchKind {
    /// Look for a Higman certificate for (s1, s2, g).
    Higman {
        #[arg(long)]
        s1: String,
        #[arg(long)]
        s2: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value = "builtin:ring5")]
        group: String,
    },
    /// Look for a word carrying the closed set K into the open set J.
    Move {
        /// Closed pieces, e.g. "[5/2,11/4]" or "[0,1/4] u [1,2]".
        #[arg(long)]
        k: String,
        /// Open interval or arc, e.g. "(3,4)" or "(4,1)" on a circle.
        #[arg(long)]
        j: String,
        #[arg(long)]
        max_len: usize,
        /// Only accept products of commutators.
        #[arg(long)]
        commutator: bool,
        #[arg(long, default_value = "builtin:ring5")]
        group: String,
    },
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long, default_value = "builtin:kkl")]
    group: String,
    /// Generators acting, comma separated; all of them by default.
    #[arg(long)]
    gen: Option<String>,
    #[arg(long)]
    seed: String,
    #[arg(long)]
    window: String,
    #[arg(long)]
    eps: String,
    #[arg(long)]
    depth: usize,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long, default_value = "builtin:ring5")]
    group: String,
    /// Also emit the conjugates rp1..rp5 of a 5-ring.
    #[arg(long)]
    with_rprime: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("plring: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

type CliResult = Result<u8, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn run(cli: Cli) -> CliResult {
    match cli.cmd {
        Cmd::Build { what } => build(what),
        Cmd::Verify(a) => {
            let group = group::load(&a.group).map_err(err)?;
            let out = suite::run(&group, a.suite, a.witness.as_deref(), a.k_max)?;
            print!("{}", out.render(a.format));
            Ok(out.exit_code())
        }
        Cmd::Search { what } => search(what),
        Cmd::Orbit(a) => orbit(a),
        Cmd::Plotdata(a) => plotdata(a),
    }
}

fn build(what: BuildKind) -> CliResult {
    let (name, out, witness) = match &what {
        BuildKind::Ring { out, .. } => {
            let w = ring_witnesses(&make_standard_ring5()).map_err(err)?;
            ("ring5".to_string(), out, Some(w.to_text()))
        }
        BuildKind::Chain { n, out } => (format!("chain{n}"), out, None),
        BuildKind::Kkl { out } => ("kkl".to_string(), out, None),
    };
    let g = group::builtin(&name).map_err(err)?;
    let paths = group::write(out, &g, witness.as_deref()).map_err(err)?;
    for p in paths {
        println!("wrote {}", p.display());
    }
    Ok(0)
}

fn search(what: SearchKind) -> CliResult {
    match what {
        SearchKind::Higman { s1, s2, g, max_len, group } => {
            let grp = group::load(&group).map_err(err)?;
            let env = grp.env_with_derived().map_err(err)?;
            let g: Word = g.parse().map_err(err)?;
            match search_higman(&env, &grp.generators, &s1, &s2, &g, max_len).map_err(err)? {
                Some(cert) => {
                    println!("{cert}");
                    Ok(0)
                }
                None => {
                    println!("NOTFOUND higman {s1} {s2} {g} max-len {max_len}");
                    Ok(EXIT_NOTFOUND)
                }
            }
        }
        SearchKind::Move { k, j, max_len, commutator, group } => {
            let grp = group::load(&group).map_err(err)?;
            let env = grp.env().map_err(err)?;
            let k = parse_closed_set(&k).map_err(err)?;
            let modulus = match &grp.kind {
                MapKind::Circle(l) => Some(l),
                MapKind::Line => None,
            };
            let j = parse_open(&j, modulus).map_err(err)?;
            match co_move(&env, &grp.generators, &k, &j, max_len, commutator).map_err(err)? {
                Some(m) => {
                    let ok = moves_into(&env, &m.word, &k, &j).map_err(err)?;
                    let mut line = format!("move {} stage {} verified {ok}", m.word, m.stage);
                    for (x, y) in &m.blocks {
                        let _ = write!(line, " [{x},{y}]");
                    }
                    println!("{line}");
                    Ok(if ok { 0 } else { 1 })
                }
                None => {
                    println!("NOTFOUND move max-len {max_len}");
                    Ok(EXIT_NOTFOUND)
                }
            }
        }
    }
}

fn orbit(a: OrbitArgs) -> CliResult {
    let grp = group::load(&a.group).map_err(err)?;
    let full = grp.env().map_err(err)?;
    let env = match &a.gen {
        None => full,
        Some(list) => {
            let mut env = GenAssignment::new();
            for n in list.split(',').map(str::trim).filter(|n| !n.is_empty()) {
                env.insert(n, full.get(n).map_err(err)?.clone()).map_err(err)?;
            }
            env
        }
    };
    let window: Closed = a.window.parse().map_err(err)?;
    let seed = parse_rat(&a.seed).map_err(err)?;
    let eps = parse_rat(&a.eps).map_err(err)?;
    let report = minimality_probe(&env, &seed, &window, &eps, a.depth).map_err(err)?;
    print!("{}", report.to_csv());
    Ok(0)
}

fn plotdata(a: PlotArgs) -> CliResult {
    let grp: Group = group::load(&a.group).map_err(err)?;
    let env = if a.with_rprime { grp.env_with_derived().map_err(err)? } else { grp.env().map_err(err)? };
    if a.with_rprime && env.names().len() == grp.generators.len() {
        return Err("--with-rprime needs a 5-ring group".into());
    }
    let mut out = String::new();
    for name in env.names() {
        match env.get(name).map_err(err)?.support() {
            Support::Line(s) => {
                for iv in s.intervals() {
                    let _ = writeln!(out, "ARC {name} {} {}", iv.lo, iv.hi);
                }
            }
            Support::Circle(s) => {
                for arc in s.arcs() {
                    let _ = writeln!(out, "ARC {name} {} {} mod {}", arc.start(), arc.end(), s.modulus());
                }
            }
        }
    }
    print!("{out}");
    Ok(0)
}
