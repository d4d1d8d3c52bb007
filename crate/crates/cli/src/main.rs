//! Command-line front end for the `hypertrees` library.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use hypertrees::egf::{rooted_tree_counts, verify_functional_equation, TreeCounts, DEFAULT_ORDER};
use hypertrees::matching::extraction_order;
use hypertrees::parking::parse_sequence;
use hypertrees::shi::{count_regions_with, RegionOptions, DEFAULT_NODE_CAP};
use hypertrees::suite::{self, Suite};
use hypertrees::{
    count_matchings_formula, count_parking, count_spanning_trees_formula, decode, egf_rooted_trees, encode,
    enumerate_matchings, enumerate_parking, enumerate_spanning_trees, extract_matching, is_r_parking,
    parking_to_tree, simulate_parking, tree_to_parking, Error, HyperTree, ParkingFn, PruferCode, RMatching,
    Rational, RationalSeries, Vertex,
};

#[derive(Parser, Debug)]
#[command(name = "hypertrees", version, about = "Spanning trees of complete uniform hypergraphs and friends")]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Cap on candidates examined by brute-force enumeration.
    #[arg(long, global = true)]
    cap: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count r-spanning trees on [n].
    Count {
        #[arg(long)]
        n: Vertex,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// List every r-spanning tree on [n].
    Enumerate {
        #[arg(long)]
        n: Vertex,
        #[arg(long)]
        r: usize,
    },
    /// Uniform matchings.
    #[command(subcommand)]
    Matching(MatchingCmd),
    /// Pruefer-type codes relative to a fixed matching.
    #[command(subcommand)]
    Prufer(PruferCmd),
    /// r-parking functions.
    #[command(subcommand)]
    Park(ParkCmd),
    /// BFS bijection between trees over the consecutive matching and parking functions.
    #[command(subcommand)]
    Bij(BijCmd),
    /// Exponential generating function of rooted r-spanning trees.
    Egf {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        /// Also check T(x) = x E(T(x)).
        #[arg(long)]
        verify: bool,
    },
    /// r-extended Shi arrangement.
    #[command(subcommand)]
    Shi(ShiCmd),
    /// Run the cross-checks.
    Verify {
        #[arg(long, default_value = "all", value_parser = Suite::NAMES)]
        suite: String,
        #[arg(long, default_value_t = 9)]
        max_n: Vertex,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Formula,
    Brute,
    Both,
}

#[derive(Args, Debug)]
struct TreeArgs {
    #[arg(long)]
    n: Vertex,
    #[arg(long)]
    r: usize,
    /// Hyperedges as "1,2,3;3,4,7".
    #[arg(long)]
    tree: String,
}

#[derive(Subcommand, Debug)]
enum MatchingCmd {
    /// The matching a spanning tree arises from.
    Extract {
        #[command(flatten)]
        tree: TreeArgs,
        /// Print blocks in the order the deletion procedure finds them.
        #[arg(long)]
        discovery_order: bool,
    },
    /// Number of partitions of [m] into blocks of size b.
    Count {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        b: usize,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// List partitions of [m] into blocks of size b.
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        b: usize,
    },
}

#[derive(Subcommand, Debug)]
enum PruferCmd {
    Encode {
        #[command(flatten)]
        tree: TreeArgs,
        /// Blocks as "1,2|3,4".
        #[arg(long)]
        matching: String,
    },
    Decode {
        #[arg(long)]
        n: Vertex,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        matching: String,
        /// Code as "3,3,4".
        #[arg(long, allow_hyphen_values = true)]
        code: String,
    },
}

#[derive(Subcommand, Debug)]
enum ParkCmd {
    Check {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[arg(long)]
        r: u64,
    },
    Count {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: u64,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: u64,
    },
    /// Run the car-parking process (r = 1).
    Simulate {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
    },
}

#[derive(Subcommand, Debug)]
enum BijCmd {
    /// Tree to parking function; the tree is (r+1)-uniform on [rk+1].
    ToPark {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        tree: String,
        /// Vertex count; defaults to r * (number of hyperedges) + 1.
        #[arg(long)]
        n: Option<Vertex>,
    },
    /// Parking function to tree.
    ToTree {
        #[arg(long)]
        r: u64,
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
    },
}

#[derive(Subcommand, Debug)]
enum ShiCmd {
    /// Count regions of S_k^r.
    Regions {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: u64,
        /// Print each region's sign vector and witness point.
        #[arg(long)]
        witnesses: bool,
    },
}

/// Failure classes, each with its own exit status.
#[derive(Debug)]
enum Failure {
    Lib(Error),
    /// A cross-check disagreed.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Lib(Error::Invalid(_)) => "invalid",
            Failure::Lib(Error::Parse(_)) => "parse",
            Failure::Lib(Error::CapExceeded { .. }) => "cap",
            Failure::Lib(Error::Mismatch(_)) => "mismatch",
            Failure::Lib(Error::Unsupported(_)) => "unsupported",
            Failure::Lib(Error::Defect(_)) => "defect",
            Failure::Check(_) => "check",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Invalid(_) | Error::Parse(_)) => 3,
            Failure::Lib(Error::CapExceeded { .. }) => 4,
            Failure::Lib(Error::Mismatch(_)) => 5,
            Failure::Lib(Error::Unsupported(_)) => 6,
            Failure::Check(_) => 7,
            Failure::Lib(Error::Defect(_)) => 70,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Check(m) => m.clone(),
        }
    }
}

/// What a command prints on success.
struct Output {
    text: String,
    json: Value,
    /// Set when the command ran but a cross-check inside it failed.
    failed: Option<String>,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, failed: None }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string(&out.json).expect("values serialize"));
            } else {
                print!("{}", out.text);
            }
            match out.failed {
                None => ExitCode::SUCCESS,
                Some(msg) => report(&cli, &Failure::Check(msg)),
            }
        }
        Err(f) => report(&cli, &f),
    }
}

fn report(cli: &Cli, f: &Failure) -> ExitCode {
    if cli.json {
        eprintln!("{}", json!({"error": f.kind(), "message": f.message()}));
    } else {
        eprintln!("error[{}]: {}", f.kind(), f.message());
    }
    ExitCode::from(f.exit_code())
}

fn tree_json(t: &HyperTree) -> Value {
    serde_json::to_value(t).expect("trees serialize")
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().fold(String::new(), |mut acc, item| {
        acc.push_str(&item.to_string());
        acc.push('\n');
        acc
    })
}

fn parse_tree(args: &TreeArgs) -> Result<HyperTree, Error> {
    HyperTree::parse(&args.tree, args.n, args.r)
}

/// Counts by formula, brute force, or both.
fn compare_counts(
    method: Method,
    formula: impl FnOnce() -> Result<BigUint, Error>,
    brute: impl FnOnce() -> Result<BigUint, Error>,
) -> Result<Output, Failure> {
    Ok(match method {
        Method::Formula => {
            let f = formula()?;
            Output::new(format!("{f}\n"), json!({"formula": f.to_string()}))
        }
        Method::Brute => {
            let b = brute()?;
            Output::new(format!("{b}\n"), json!({"brute": b.to_string()}))
        }
        Method::Both => {
            let f = formula()?;
            let b = brute()?;
            let agree = f == b;
            let mut out = Output::new(
                format!("formula={f} brute={b} agree={agree}\n"),
                json!({"formula": f.to_string(), "brute": b.to_string(), "agree": agree}),
            );
            if !agree {
                out.failed = Some(format!("formula {f} differs from brute force {b}"));
            }
            out
        }
    })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let cap = cli.cap;
    match &cli.command {
        Command::Count { n, r, method } => compare_counts(
            *method,
            || count_spanning_trees_formula(*n, *r),
            || Ok(BigUint::from(enumerate_spanning_trees(*n, *r, cap)?.count())),
        ),
        Command::Enumerate { n, r } => {
            let trees: Vec<HyperTree> = enumerate_spanning_trees(*n, *r, cap)?.collect();
            Ok(Output::new(lines(&trees), Value::Array(trees.iter().map(tree_json).collect())))
        }
        Command::Matching(cmd) => matching(cmd, cap),
        Command::Prufer(cmd) => prufer(cmd),
        Command::Park(cmd) => park(cmd, cap),
        Command::Bij(cmd) => bij(cmd),
        Command::Egf { r, order, verify } => egf(*r, *order, *verify),
        Command::Shi(ShiCmd::Regions { k, r, witnesses }) => {
            let opts = RegionOptions {
                node_cap: cap.unwrap_or(DEFAULT_NODE_CAP),
                ..RegionOptions::default()
            };
            let res = count_regions_with::<Rational>(*k, *r, &opts)?;
            let mut text = format!("regions={}\n", res.regions.len());
            if *witnesses {
                text.push_str(&lines(&res.regions));
            }
            let mut obj = json!({"k": k, "r": r, "regions": res.regions.len()});
            if *witnesses {
                obj["witnesses"] = res
                    .regions
                    .iter()
                    .map(|reg| {
                        json!({
                            "signs": reg.sign_string(),
                            "point": reg.witness.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
            }
            Ok(Output::new(text, obj))
        }
        Command::Verify { suite, max_n } => {
            let suite: Suite = suite.parse()?;
            let checks = suite::run(suite, *max_n);
            let passed = checks.iter().filter(|c| c.passed).count();
            let mut text = lines(&checks);
            let _ = writeln!(text, "passed {passed}/{}", checks.len());
            let rows = checks
                .iter()
                .map(|c| json!({"suite": c.suite, "name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect();
            let mut out = Output::new(text, Value::Array(rows));
            if passed != checks.len() {
                out.failed = Some(format!("{} of {} checks failed", checks.len() - passed, checks.len()));
            }
            Ok(out)
        }
    }
}

fn matching(cmd: &MatchingCmd, cap: Option<u64>) -> Result<Output, Failure> {
    match cmd {
        MatchingCmd::Extract { tree, discovery_order } => {
            let t = parse_tree(tree)?;
            if *discovery_order {
                let blocks = extraction_order(&t)?;
                let text = hypertrees::matching::format_block_list(&blocks);
                Ok(Output::new(format!("{text}\n"), json!(blocks)))
            } else {
                let m = extract_matching(&t)?;
                Ok(Output::new(format!("{m}\n"), json!(m)))
            }
        }
        MatchingCmd::Count { m, b, method } => compare_counts(
            *method,
            || count_matchings_formula(*m, *b),
            || Ok(BigUint::from(enumerate_matchings(*m as usize, *b, cap)?.count())),
        ),
        MatchingCmd::Enumerate { m, b } => {
            let all: Vec<RMatching> = enumerate_matchings(*m, *b, cap)?.collect();
            Ok(Output::new(lines(&all), json!(all)))
        }
    }
}

fn prufer(cmd: &PruferCmd) -> Result<Output, Failure> {
    match cmd {
        PruferCmd::Encode { tree, matching } => {
            let t = parse_tree(tree)?;
            let m = RMatching::parse(matching)?;
            let code = encode(&t, &m)?;
            Ok(Output::new(format!("{code}\n"), json!(code)))
        }
        PruferCmd::Decode { n, r, matching, code } => {
            let m = RMatching::parse(matching)?;
            let code = PruferCode::parse(code, *n)?;
            let t = decode(&code, &m, *r)?;
            Ok(Output::new(format!("{t}\n"), tree_json(&t)))
        }
    }
}

fn park(cmd: &ParkCmd, cap: Option<u64>) -> Result<Output, Failure> {
    match cmd {
        ParkCmd::Check { seq, r } => {
            let ok = is_r_parking(&parse_sequence(seq)?, *r)?;
            Ok(Output::new(format!("{ok}\n"), json!(ok)))
        }
        ParkCmd::Count { k, r, method } => compare_counts(
            *method,
            || count_parking(*k, *r),
            || Ok(BigUint::from(enumerate_parking(*k, *r, cap)?.count())),
        ),
        ParkCmd::Enumerate { k, r } => {
            let all: Vec<ParkingFn> = enumerate_parking(*k, *r, cap)?.collect();
            Ok(Output::new(lines(&all), json!(all)))
        }
        ParkCmd::Simulate { seq } => {
            let raw = parse_sequence(seq)?;
            if let Some(neg) = raw.iter().find(|&&v| v < 0) {
                return Err(Error::Invalid(format!("negative entry {neg}")).into());
            }
            let seq: Vec<u64> = raw.into_iter().map(|v| v as u64).collect();
            let ok = simulate_parking(&seq);
            Ok(Output::new(format!("{ok}\n"), json!(ok)))
        }
    }
}

fn bij(cmd: &BijCmd) -> Result<Output, Failure> {
    match cmd {
        BijCmd::ToPark { r, tree, n } => {
            let edges = tree.split(';').filter(|s| !s.trim().is_empty()).count();
            let n = n.unwrap_or((*r as usize * edges + 1) as Vertex);
            let t = HyperTree::parse(tree, n, *r as usize + 1)?;
            let a = tree_to_parking(&t)?;
            Ok(Output::new(format!("{a}\n"), json!(a)))
        }
        BijCmd::ToTree { r, seq } => {
            let raw = parse_sequence(seq)?;
            if let Some(neg) = raw.iter().find(|&&v| v < 0) {
                return Err(Error::Invalid(format!("negative entry {neg}")).into());
            }
            let a = ParkingFn::new(raw.into_iter().map(|v| v as u64).collect(), *r)?;
            let t = parking_to_tree(&a, *r)?;
            Ok(Output::new(format!("{t}\n"), tree_json(&t)))
        }
    }
}

fn egf(r: usize, order: usize, verify: bool) -> Result<Output, Failure> {
    let series: RationalSeries = egf_rooted_trees(r, order, TreeCounts::Formula)?;
    let counts = rooted_tree_counts(r, order, TreeCounts::Formula)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (n, t) in counts.iter().enumerate() {
        let c = series.coeff(n);
        let _ = writeln!(text, "{n}: {}/{} t_{n}={t}", c.numer(), c.denom());
        rows.push(json!({"n": n, "coeff": format!("{}/{}", c.numer(), c.denom()), "t": t.to_string()}));
    }
    let mut obj = json!({"r": r, "order": order, "coefficients": rows});
    let mut failed = None;
    if verify {
        let report = verify_functional_equation(r, order, TreeCounts::Formula)?;
        match &report.first_failure {
            None => {
                let _ = writeln!(text, "functional equation holds through order {order}");
            }
            Some((i, lhs, rhs)) => {
                let _ = writeln!(text, "functional equation fails at order {i}: {lhs} vs {rhs}");
                failed = Some(format!("functional equation fails at order {i}"));
            }
        }
        obj["verified"] = json!(report.holds());
    }
    let mut out = Output::new(text, obj);
    out.failed = failed;
    Ok(out)
}
