//! Command-line front end. [`run`] parses arguments and returns the exit
//! code with everything that would be printed, so the binary stays a thin
//! wrapper and commands can be tested in-process.
//!
//! Exit codes: 0 on success or a certificate that holds, 2 on a certificate
//! that fails, 1 on any error.

use std::fs;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::allocation::{PowerVector, State, StrategyMatrix, DEFAULT_TOLERANCE};
use crate::congestion::{solve_chain, Payoffs, RoadGame, Schedule, Solution};
use crate::construct::{
    balanced_spne, lexicographic_ordering, pair_traversal, petersen_example, petersen_graph,
    precarious_ordering, sole_survivor, spne_from_zero_pair, spne_rule1, Guarantee, SurvivorCase,
};
use crate::dot::export_dot;
use crate::dynamics::{check_spne, terminal_outcome, AllocationPath, DecisionRule};
use crate::equilibrium::{
    brute_force_nash_oracle, check_balanced, check_nash, construct_balanced, BalancedConstruction,
};
use crate::format::sig6;
use crate::graph::{count_extensions, enumerate_extensions, Country, SignedGraph};
use crate::preference;
use crate::scenario::{load_scenario, Scenario};
use crate::PagError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "pag",
    version,
    about = "Power allocation games on signed graphs"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Precarious band, relative to total power.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Seed for randomized choices such as `construct pairs --shuffle`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Support, threat and state of every country under the stored matrix.
    Eval { scenario: PathBuf },
    /// Certify the stored matrix or path.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Build an allocation path and print or save it as a scenario.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Chain utilities.
    #[command(subcommand)]
    Chain(ChainCmd),
    /// Built-in worked examples.
    #[command(subcommand)]
    Demo(DemoCmd),
    /// Export a scenario.
    #[command(subcommand)]
    Export(ExportCmd),
    /// Compare two matrices from one country's point of view.
    Explain {
        base: PathBuf,
        alt: PathBuf,
        #[arg(long)]
        country: Country,
    },
}

#[derive(Debug, Subcommand)]
enum CheckCmd {
    /// Stage-game Nash equilibrium.
    Ne {
        scenario: PathBuf,
        /// Also run the brute-force oracle at this grid resolution.
        #[arg(long)]
        grid: Option<u32>,
    },
    /// Balanced equilibrium conditions.
    Balanced { scenario: PathBuf },
    /// Subgame perfection of the stored path.
    Spne {
        scenario: PathBuf,
        /// Read the path under this rule instead of the stored one.
        #[arg(long, value_parser = parse_rule)]
        rule: Option<DecisionRule>,
    },
}

#[derive(Debug, Args)]
struct OutArg {
    /// Write the resulting scenario here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum ConstructCmd {
    /// Pair traversal over the adversary pairs.
    Pairs {
        scenario: PathBuf,
        /// Visit this country's pairs first.
        #[arg(long)]
        target: Option<Country>,
        /// Random pair order drawn from `--seed`.
        #[arg(long, conflicts_with = "target")]
        shuffle: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Balanced equilibrium reached by adding one adversary pair.
    Balanced {
        scenario: PathBuf,
        #[arg(long, value_parser = parse_pair)]
        pair: Option<(Country, Country)>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Chain on a complete adversary graph leaving only the target safe.
    Survivor {
        scenario: PathBuf,
        #[arg(long)]
        target: Country,
        #[command(flatten)]
        out: OutArg,
    },
    /// Replays the stored matrix after adding a pair it leaves empty.
    ZeroPair {
        scenario: PathBuf,
        #[arg(long, value_parser = parse_pair)]
        pair: (Country, Country),
        #[command(flatten)]
        out: OutArg,
    },
    /// Stage equilibrium per layer of the stored chain.
    Rule1 {
        scenario: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Subcommand)]
enum ChainCmd {
    /// Graphs between a chain layer and the scenario graph.
    Enumerate {
        scenario: PathBuf,
        /// Chain layer to extend (the edgeless graph without a chain).
        #[arg(long)]
        layer: Option<usize>,
    },
    /// Number of ways to add `m - alpha` free edges.
    Count {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        alpha: u32,
    },
}

#[derive(Debug, Subcommand)]
enum DemoCmd {
    /// Petersen graph with equal powers.
    Petersen {
        #[arg(long, default_value_t = 1.0)]
        power: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Two agents choosing between roads A and B.
    Congestion {
        #[arg(long, value_parser = ["a-first", "b-first", "simultaneous"])]
        chain: String,
        #[arg(long)]
        payoffs: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum ExportCmd {
    /// Graphviz text, with allocation labels when a matrix is stored.
    Dot {
        scenario: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
}

fn parse_rule(s: &str) -> Result<DecisionRule, String> {
    DecisionRule::parse(s).ok_or_else(|| format!("unknown rule {s:?} (use rule1 or rule1.1)"))
}

fn parse_pair(s: &str) -> Result<(Country, Country), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected i,j but got {s:?}"))?;
    let a = a.trim().parse().map_err(|_| format!("bad label {a:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad label {b:?}"))?;
    Ok((a, b))
}

/// What a command printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure(String);

impl From<PagError> for Failure {
    fn from(e: PagError) -> Self {
        let mut msg = e.to_string();
        match &e {
            PagError::InvalidMatrix(vs) => {
                for v in vs {
                    msg.push_str(&format!("\n  {v}"));
                }
            }
            PagError::InvalidPath(vs) => {
                for v in vs {
                    msg.push_str(&format!("\n  step {}: {:?}", v.step, v.kind));
                }
            }
            _ => {}
        }
        Failure(msg)
    }
}

type CmdResult = Result<(bool, String), Failure>;

struct Ctx {
    format: OutputFormat,
    tolerance: f64,
    seed: u64,
    color: bool,
}

impl Ctx {
    fn state(&self, s: State) -> String {
        if !self.color {
            return s.as_str().to_string();
        }
        let code = match s {
            State::Safe => 32,
            State::Precarious => 33,
            State::Unsafe => 31,
        };
        format!("\x1b[{code}m{}\x1b[0m", s.as_str())
    }

    fn verdict(&self, holds: bool) -> String {
        let word = if holds { "holds" } else { "fails" };
        if self.color {
            format!("\x1b[{}m{word}\x1b[0m", if holds { 32 } else { 31 })
        } else {
            word.to_string()
        }
    }

    fn json<T: Serialize>(&self, value: &T) -> String {
        serde_json::to_string_pretty(value).expect("serializable") + "\n"
    }

    fn load(&self, file: &Path) -> Result<Scenario, Failure> {
        let bytes = fs::read(file).map_err(|e| Failure(format!("{}: {e}", file.display())))?;
        let mut s = load_scenario(&bytes).map_err(|issues| {
            let mut msg = format!("{}: invalid scenario", file.display());
            for issue in issues {
                msg.push_str(&format!("\n  {issue}"));
            }
            Failure(msg)
        })?;
        let tol = self.tolerance;
        s.matrix = s.matrix.map(|u| u.with_tolerance(tol));
        s.path = s.path.map(|p| {
            let mats = p
                .matrices()
                .iter()
                .map(|u| u.clone().with_tolerance(tol))
                .collect();
            AllocationPath::unchecked(p.chain().clone(), mats, p.rule())
        });
        Ok(s)
    }
}

fn stored_matrix(s: &Scenario) -> Result<StrategyMatrix, Failure> {
    s.matrix
        .clone()
        .or_else(|| s.path.as_ref().and_then(|p| p.terminal().cloned()))
        .ok_or_else(|| Failure("scenario has no matrix or path".into()))
}

fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let visible = |s: &str| {
        let mut len = 0;
        let mut escape = false;
        for c in s.chars() {
            match (escape, c) {
                (false, '\x1b') => escape = true,
                (true, 'm') => escape = false,
                (false, _) => len += 1,
                _ => {}
            }
        }
        len
    };
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(visible(cell));
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut parts = Vec::new();
        for (k, cell) in cells.iter().enumerate() {
            let pad = widths[k] - visible(cell);
            parts.push(format!("{cell}{}", " ".repeat(pad)));
        }
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(headers.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

fn state_rows(ctx: &Ctx, u: &StrategyMatrix) -> Vec<Vec<String>> {
    (1..=u.n())
        .map(|i| {
            vec![
                i.to_string(),
                sig6(u.support(i)),
                sig6(u.threat(i)),
                ctx.state(u.state(i)),
            ]
        })
        .collect()
}

fn state_json(u: &StrategyMatrix) -> Value {
    let rows: Vec<Value> = (1..=u.n())
        .map(|i| {
            json!({
                "country": i,
                "support": u.support(i),
                "threat": u.threat(i),
                "state": u.state(i),
            })
        })
        .collect();
    Value::Array(rows)
}

fn eval(ctx: &Ctx, file: &Path) -> CmdResult {
    let s = ctx.load(file)?;
    let u = stored_matrix(&s)?;
    let out = match ctx.format {
        OutputFormat::Json => ctx.json(&json!({ "countries": state_json(&u) })),
        OutputFormat::Table => table(&["country", "sigma", "tau", "state"], &state_rows(ctx, &u)),
    };
    Ok((true, out))
}

fn check(ctx: &Ctx, cmd: CheckCmd) -> CmdResult {
    match cmd {
        CheckCmd::Ne { scenario, grid } => {
            let s = ctx.load(&scenario)?;
            let u = stored_matrix(&s)?;
            let cert = check_nash(&u)?;
            let oracle = grid.map(|g| brute_force_nash_oracle(&u, g)).transpose()?;
            let out = match ctx.format {
                OutputFormat::Json => ctx.json(&json!({
                    "certificate": cert,
                    "oracle": oracle.as_ref().map(|o| json!({ "grid": grid, "holds": o.holds })),
                })),
                OutputFormat::Table => {
                    let rows: Vec<Vec<String>> = cert
                        .countries
                        .iter()
                        .map(|c| {
                            vec![
                                c.country.to_string(),
                                ctx.state(c.state),
                                sig6(c.support),
                                sig6(c.threat),
                                sig6(c.best_achievable_support),
                                if c.deviates { "yes" } else { "no" }.into(),
                            ]
                        })
                        .collect();
                    let mut out = table(
                        &["country", "state", "sigma", "tau", "best", "deviates"],
                        &rows,
                    );
                    out.push_str(&format!("nash equilibrium: {}\n", ctx.verdict(cert.holds)));
                    if let (Some(o), Some(g)) = (&oracle, grid) {
                        let agree = if o.holds == cert.holds {
                            "agrees"
                        } else {
                            "DISAGREES"
                        };
                        out.push_str(&format!(
                            "grid oracle (grid {g}): {} ({agree})\n",
                            ctx.verdict(o.holds)
                        ));
                    }
                    out
                }
            };
            Ok((cert.holds, out))
        }
        CheckCmd::Balanced { scenario } => {
            let s = ctx.load(&scenario)?;
            let u = stored_matrix(&s)?;
            let cert = check_balanced(&u)?;
            let out = match ctx.format {
                OutputFormat::Json => ctx.json(&cert),
                OutputFormat::Table => {
                    let mut out = format!("balanced equilibrium: {}\n", ctx.verdict(cert.holds));
                    if let Some(c) = cert.violated_condition {
                        out.push_str(&format!("first violated condition: {c}\n"));
                    }
                    for b in &cert.breaches {
                        let partner = b.partner.map(|p| format!(" with {p}")).unwrap_or_default();
                        out.push_str(&format!(
                            "  {:?}: country {}{partner}, off by {}\n",
                            b.condition,
                            b.country,
                            sig6(b.magnitude)
                        ));
                    }
                    out
                }
            };
            Ok((cert.holds, out))
        }
        CheckCmd::Spne { scenario, rule } => {
            let s = ctx.load(&scenario)?;
            let path = s
                .path
                .ok_or_else(|| Failure("scenario has no path".into()))?;
            let path = match rule {
                Some(r) => path.with_rule(r),
                None => path,
            };
            let cert = check_spne(&path)?;
            let out = match ctx.format {
                OutputFormat::Json => ctx.json(&cert),
                OutputFormat::Table => {
                    let mut out = format!(
                        "subgame perfect under {}: {}\n",
                        cert.rule,
                        ctx.verdict(cert.holds)
                    );
                    for (t, layer) in cert.per_layer.iter().enumerate() {
                        let dev = layer.deviators();
                        let note = if dev.is_empty() {
                            "no deviations".to_string()
                        } else {
                            format!("deviators {dev:?}")
                        };
                        out.push_str(&format!("  layer {t}: {note}\n"));
                    }
                    out
                }
            };
            Ok((cert.holds, out))
        }
    }
}

fn path_report(
    ctx: &Ctx,
    path: &AllocationPath,
    extra: Vec<(String, Value)>,
    out: &OutArg,
    base: Scenario,
) -> CmdResult {
    let cert = check_spne(path)?;
    let scenario = Scenario {
        meta: base.meta.clone(),
        matrix: None,
        ..base
    }
    .with_path(path.clone());
    let terminal = path.terminal().expect("nonempty path");
    if let Some(file) = &out.out {
        fs::write(file, scenario.to_json_string())
            .map_err(|e| Failure(format!("{}: {e}", file.display())))?;
    }
    let text = match ctx.format {
        OutputFormat::Json => {
            let mut doc = scenario.to_json();
            let mut certs = serde_json::Map::new();
            certs.insert("spne".into(), json!(cert.holds));
            for (k, v) in extra {
                certs.insert(k, v);
            }
            doc["certificates"] = Value::Object(certs);
            ctx.json(&doc)
        }
        OutputFormat::Table => {
            let mut s = String::new();
            for (k, v) in &extra {
                let v = match v {
                    Value::String(t) => t.clone(),
                    Value::Array(items) => {
                        let parts: Vec<String> = items
                            .iter()
                            .map(|x| x.as_f64().map(sig6).unwrap_or_else(|| x.to_string()))
                            .collect();
                        parts.join(" ")
                    }
                    other => other.to_string(),
                };
                s.push_str(&format!("{k}: {v}\n"));
            }
            s.push_str(&format!(
                "layers: {} ({:?} chain, {})\n",
                path.len(),
                path.chain().kind(),
                path.rule()
            ));
            s.push_str(&table(
                &["country", "sigma", "tau", "state"],
                &state_rows(ctx, terminal),
            ));
            s.push_str(&format!("subgame perfect: {}\n", ctx.verdict(cert.holds)));
            s
        }
    };
    Ok((cert.holds, text))
}

fn construct(ctx: &Ctx, cmd: ConstructCmd) -> CmdResult {
    match cmd {
        ConstructCmd::Pairs {
            scenario,
            target,
            shuffle,
            out,
        } => {
            let s = ctx.load(&scenario)?;
            let trace = if let Some(i) = target {
                precarious_ordering(&s.graph, &s.powers, i)?
            } else {
                let mut order = lexicographic_ordering(&s.graph);
                if shuffle {
                    order.shuffle(&mut ChaCha8Rng::seed_from_u64(ctx.seed));
                }
                pair_traversal(&s.graph, &s.powers, &order)?
            };
            let order: Vec<String> = trace.ordering().iter().map(ToString::to_string).collect();
            let residual = trace.residuals.last().cloned().unwrap_or_default();
            let extra = vec![
                ("ordering".to_string(), json!(order.join(" "))),
                ("residuals".to_string(), json!(residual)),
            ];
            path_report(ctx, &trace.path, extra, &out, s)
        }
        ConstructCmd::Balanced {
            scenario,
            pair,
            out,
        } => {
            let s = ctx.load(&scenario)?;
            let u = match construct_balanced(&s.graph, &s.powers)? {
                BalancedConstruction::Found(u) => u,
                BalancedConstruction::Infeasible => return Err(PagError::Infeasible.into()),
            };
            let path = balanced_spne(&s.graph, &s.powers, &u, pair)?;
            path_report(ctx, &path, Vec::new(), &out, s)
        }
        ConstructCmd::Survivor {
            scenario,
            target,
            out,
        } => {
            let s = ctx.load(&scenario)?;
            let r = sole_survivor(&s.graph, &s.powers, target)?;
            let case = match r.case {
                SurvivorCase::Dominant { country } => format!("dominant country {country}"),
                SurvivorCase::Balanced => "balanced first layer".into(),
            };
            let guarantee = match &r.guarantee {
                Guarantee::Strict => "strict".to_string(),
                Guarantee::Degraded { shortfalls } => {
                    let parts: Vec<String> = shortfalls
                        .iter()
                        .map(|(k, st)| format!("{k} {}", st.as_str()))
                        .collect();
                    format!("degraded ({})", parts.join(", "))
                }
            };
            let extra = vec![
                ("case".to_string(), json!(case)),
                ("guarantee".to_string(), json!(guarantee)),
            ];
            path_report(ctx, &r.path, extra, &out, s)
        }
        ConstructCmd::ZeroPair {
            scenario,
            pair,
            out,
        } => {
            let s = ctx.load(&scenario)?;
            let u = s
                .matrix
                .clone()
                .ok_or_else(|| Failure("scenario has no matrix".into()))?;
            let path = spne_from_zero_pair(&s.graph, &s.powers, &u, pair)?;
            path_report(ctx, &path, Vec::new(), &out, s)
        }
        ConstructCmd::Rule1 { scenario, out } => {
            let s = ctx.load(&scenario)?;
            let chain = s
                .chain
                .clone()
                .ok_or_else(|| Failure("scenario has no chain".into()))?;
            let path = spne_rule1(&chain, &s.powers)?;
            path_report(ctx, &path, Vec::new(), &out, s)
        }
    }
}

fn edge_list(g: &SignedGraph) -> String {
    let parts: Vec<String> = g
        .edges()
        .into_iter()
        .map(|(p, sign)| {
            let mark = match sign {
                crate::Sign::Friend => '+',
                crate::Sign::Adversary => '-',
            };
            format!("{}{mark}{}", p.lo(), p.hi())
        })
        .collect();
    if parts.is_empty() {
        "(no edges)".into()
    } else {
        parts.join(" ")
    }
}

fn chain(ctx: &Ctx, cmd: ChainCmd) -> CmdResult {
    match cmd {
        ChainCmd::Count { m, alpha } => {
            let c = count_extensions(m, alpha)?;
            let out = match ctx.format {
                OutputFormat::Json => ctx.json(&c),
                OutputFormat::Table => format!(
                    "m = {m}, alpha = {alpha}\ntrue count: {}\nformula value: {}\n{}\n",
                    c.exact,
                    c.printed_formula,
                    if c.agrees() { "agree" } else { "differ" }
                ),
            };
            Ok((true, out))
        }
        ChainCmd::Enumerate { scenario, layer } => {
            let s = ctx.load(&scenario)?;
            let current = match (layer, &s.chain) {
                (None, None) => SignedGraph::edgeless(s.n()),
                (None, Some(c)) => c.graphs()[0].clone(),
                (Some(t), Some(c)) => c
                    .graphs()
                    .get(t)
                    .cloned()
                    .ok_or_else(|| Failure(format!("chain has no layer {t}")))?,
                (Some(_), None) => return Err(Failure("scenario has no chain".into())),
            };
            let ext = enumerate_extensions(&current, &s.graph)?;
            let out = match ctx.format {
                OutputFormat::Json => {
                    let items: Vec<Value> = ext
                        .iter()
                        .map(|g| {
                            let pairs = |set: &std::collections::BTreeSet<crate::Pair>| -> Vec<[usize; 2]> {
                                set.iter().map(|p| [p.lo(), p.hi()]).collect()
                            };
                            json!({ "friends": pairs(g.friend_pairs()), "adversaries": pairs(g.adversary_pairs()) })
                        })
                        .collect();
                    ctx.json(&json!({ "count": ext.len(), "graphs": items }))
                }
                OutputFormat::Table => {
                    let mut out = format!("{} graphs\n", ext.len());
                    for (k, g) in ext.iter().enumerate() {
                        out.push_str(&format!("{k:>4}  {}\n", edge_list(g)));
                    }
                    out
                }
            };
            Ok((true, out))
        }
    }
}

fn demo(ctx: &Ctx, cmd: DemoCmd) -> CmdResult {
    match cmd {
        DemoCmd::Petersen { power, out } => {
            let g = petersen_graph();
            let p = PowerVector::uniform(g.n(), power)?;
            let trace = pair_traversal(&g, &p, &lexicographic_ordering(&g))?;
            let traversal_balanced = check_balanced(trace.final_matrix())?.holds;
            let path = petersen_example(&p)?;
            let outcome = terminal_outcome(&path)?;
            let all_precarious = outcome.count(State::Precarious) == g.n();
            let extra = vec![
                ("traversal balanced".to_string(), json!(traversal_balanced)),
                ("terminal all precarious".to_string(), json!(all_precarious)),
            ];
            let base = Scenario::new(g, p);
            path_report(ctx, &path, extra, &out, base)
        }
        DemoCmd::Congestion { chain, payoffs } => {
            let schedule = Schedule::by_name(&chain).expect("validated by clap");
            let payoffs = match payoffs {
                Some(file) => {
                    let text = fs::read_to_string(&file)
                        .map_err(|e| Failure(format!("{}: {e}", file.display())))?;
                    Payoffs::from_json(&text)?
                }
                None => Payoffs::default(),
            };
            let solution = solve_chain(&RoadGame::new(payoffs, schedule))?;
            let out = match ctx.format {
                OutputFormat::Json => ctx.json(&json!({ "chain": chain, "solution": solution })),
                OutputFormat::Table => {
                    let shown: Vec<String> = solution
                        .profiles()
                        .iter()
                        .map(|(a, b)| format!("({a}, {b})"))
                        .collect();
                    match solution {
                        Solution::Unique(_) => {
                            format!("{chain}: unique equilibrium {}\n", shown[0])
                        }
                        Solution::Multiple(_) => {
                            format!("{chain}: multiple equilibria {}\n", shown.join(" "))
                        }
                    }
                }
            };
            Ok((true, out))
        }
    }
}

fn export(ctx: &Ctx, cmd: ExportCmd) -> CmdResult {
    let ExportCmd::Dot { scenario, out } = cmd;
    let s = ctx.load(&scenario)?;
    let dot = export_dot(&s.graph, s.matrix.as_ref());
    match out.out {
        Some(file) => {
            fs::write(&file, &dot).map_err(|e| Failure(format!("{}: {e}", file.display())))?;
            Ok((true, String::new()))
        }
        None => Ok((true, dot)),
    }
}

fn explain(ctx: &Ctx, base: &Path, alt: &Path, i: Country) -> CmdResult {
    let u = stored_matrix(&ctx.load(base)?)?;
    let v = stored_matrix(&ctx.load(alt)?)?;
    let verdict = preference::compare(i, &u, &v)?;
    let out = match ctx.format {
        OutputFormat::Json => ctx.json(&verdict),
        OutputFormat::Table => {
            let yn = |b: bool| if b { "yes" } else { "no" };
            let rows: Vec<Vec<String>> = verdict
                .witness
                .iter()
                .map(|w| {
                    vec![
                        w.country.to_string(),
                        format!("{:?}", w.role).to_lowercase(),
                        ctx.state(w.before),
                        ctx.state(w.after),
                        yn(w.weak_ok).into(),
                    ]
                })
                .collect();
            let mut out = table(&["country", "role", "before", "after", "ok"], &rows);
            out.push_str(&format!(
                "country {i}: weakly prefers {}, indifferent {}, strongly prefers {}\n",
                yn(verdict.weak),
                yn(verdict.indifferent),
                yn(verdict.strong)
            ));
            out
        }
    };
    Ok((true, out))
}

/// Runs one command line (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    if !(cli.tolerance.is_finite() && cli.tolerance >= 0.0) {
        return Outcome {
            code: 1,
            stdout: String::new(),
            stderr: "error: --tolerance must be a nonnegative number\n".into(),
        };
    }
    let ctx = Ctx {
        format: cli.format,
        tolerance: cli.tolerance,
        seed: cli.seed,
        color: std::env::var_os("PAG_NO_COLOR").is_none() && std::io::stdout().is_terminal(),
    };
    let result = match cli.command {
        Command::Eval { scenario } => eval(&ctx, &scenario),
        Command::Check(c) => check(&ctx, c),
        Command::Construct(c) => construct(&ctx, c),
        Command::Chain(c) => chain(&ctx, c),
        Command::Demo(c) => demo(&ctx, c),
        Command::Export(c) => export(&ctx, c),
        Command::Explain { base, alt, country } => explain(&ctx, &base, &alt, country),
    };
    match result {
        Ok((holds, stdout)) => Outcome {
            code: if holds { 0 } else { 2 },
            stdout,
            stderr: String::new(),
        },
        Err(Failure(msg)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}
