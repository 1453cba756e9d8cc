use clap::{Parser, Subcommand, ValueEnum};
use multiseg::cli::parse_multisegment;
use multiseg::ladders::{klyachko_type, ladder_dual_recursive, zelevinsky_dual, Ladder};
use multiseg::relevance::{
    check_hypothesis_star, check_hypothesis_star_star, is_distinguished, search_counterexamples,
    DistinguishedVerdict, HypothesisMode, HypothesisVerdict, SearchBounds, SearchFilter,
};
use multiseg::{in_family_f, nc, product_irreducible, product_sp_verdict, ProductVerdict};
use multiseg::{Multisegment, Segment};
use serde_json::{json, Value};
use std::io::Read;
use std::time::Instant;

const EXIT_COUNTEREXAMPLE: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_INTERNAL: i32 = 3;

#[derive(Parser)]
#[command(name = "multiseg", version, about = "Segment and multisegment combinatorics")]
struct Cli {
    /// Emit structured JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Speh-type verdict and witness
    Speh { msgm: Option<String> },
    /// The reflection m^v
    Dual { msgm: Option<String> },
    /// The Zelevinsky involution m^t
    Involution {
        msgm: Option<String>,
        /// Use the ladder recursion (input must be a ladder)
        #[arg(long)]
        recursive: bool,
    },
    /// All standard orders, or the canonical one
    Orders {
        msgm: Option<String>,
        #[arg(long)]
        canonical: bool,
    },
    /// Whether every standard order admits a relevant decomposition
    Distinguished { msgm: Option<String> },
    /// Check a hypothesis on one multisegment
    Hypothesis {
        msgm: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Star)]
        mode: ModeArg,
    },
    /// Exhaustive bounded counterexample search
    Search {
        #[arg(long)]
        max_end: i32,
        #[arg(long)]
        max_size: u32,
        #[arg(long)]
        max_mult: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Star)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
        /// Defaults to MULTISEG_THREADS or the number of CPUs
        #[arg(long)]
        shards: Option<usize>,
    },
    /// Ladder structure queries
    Ladder {
        #[command(subcommand)]
        command: LadderCommand,
    },
    /// NC irreducibility and the product verdict
    Irreducible {
        #[arg(required = true, num_args = 2..)]
        msgms: Vec<String>,
    },
    /// One elementary operation on a linked pair
    Elementary {
        msgm: Option<String>,
        #[arg(long, num_args = 2, value_names = ["SEG1", "SEG2"])]
        pair: Vec<String>,
    },
}

#[derive(Subcommand)]
enum LadderCommand {
    /// Full ladder classification report
    Classify {
        msgm: Option<String>,
        #[arg(long, default_value_t = 1)]
        d: i32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Star,
    #[value(alias = "star_star")]
    StarStar,
}

impl From<ModeArg> for HypothesisMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Star => HypothesisMode::Star,
            ModeArg::StarStar => HypothesisMode::StarStar,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    All,
    #[value(alias = "sets_only")]
    SetsOnly,
    #[value(alias = "blocks_le_2")]
    BlocksLe2,
}

impl From<FilterArg> for SearchFilter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::All => SearchFilter::All,
            FilterArg::SetsOnly => SearchFilter::SetsOnly,
            FilterArg::BlocksLe2 => SearchFilter::BlocksLe2,
        }
    }
}

fn usage_error(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(EXIT_USAGE);
}

fn read_msgm(arg: &Option<String>) -> (String, Multisegment) {
    let text = match arg.as_deref() {
        Some("-") | None => {
            let mut buf = String::new();
            if std::io::stdin().read_to_string(&mut buf).is_err() {
                usage_error("failed to read standard input");
            }
            buf.trim().to_string()
        }
        Some(t) => t.to_string(),
    };
    match parse_multisegment(&text) {
        Ok(m) => (text, m),
        Err(e) => usage_error(&e.to_string()),
    }
}

fn parse_segment_arg(text: &str) -> Segment {
    let m = match parse_multisegment(text) {
        Ok(m) => m,
        Err(e) => usage_error(&e.to_string()),
    };
    let mut segs = m.segments();
    match (segs.next(), segs.next()) {
        (Some(s), None) => s,
        _ => usage_error(&format!("expected a single segment, got '{text}'")),
    }
}

fn emit(json_mode: bool, input: &str, result: Value, witness: Option<Value>, start: Instant) {
    if json_mode {
        let mut obj = json!({
            "input": input,
            "result": result,
            "elapsed_ms": start.elapsed().as_millis() as u64,
        });
        if let Some(w) = witness {
            obj["witness"] = w;
        }
        println!("{}", serde_json::to_string_pretty(&obj).unwrap());
    }
}

fn default_shards() -> usize {
    std::env::var("MULTISEG_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    let json_mode = cli.json;
    match cli.command {
        Command::Speh { msgm } => {
            let (input, m) = read_msgm(&msgm);
            match m.speh_witness() {
                Some(w) => {
                    if !json_mode {
                        println!("speh: yes");
                        println!("witness: {w}");
                    }
                    emit(
                        json_mode,
                        &input,
                        json!("speh"),
                        Some(json!(w.to_string())),
                        start,
                    );
                }
                None => {
                    if !json_mode {
                        println!("speh: no");
                    }
                    emit(json_mode, &input, json!("not_speh"), None, start);
                }
            }
        }
        Command::Dual { msgm } => {
            let (input, m) = read_msgm(&msgm);
            let d = m.dual();
            if !json_mode {
                println!("{d}");
            }
            emit(json_mode, &input, json!(d.to_string()), None, start);
        }
        Command::Involution { msgm, recursive } => {
            let (input, m) = read_msgm(&msgm);
            let general = zelevinsky_dual(&m);
            let ladder = Ladder::from_multisegment(&m);
            if recursive && ladder.is_none() {
                usage_error("--recursive requires a ladder input");
            }
            if let Some(l) = &ladder {
                let rec = ladder_dual_recursive(l).expect("ladder input");
                if rec.as_multisegment() != general {
                    eprintln!(
                        "internal error: involution path mismatch: general {} vs recursive {}",
                        general,
                        rec.as_multisegment()
                    );
                    std::process::exit(EXIT_INTERNAL);
                }
            }
            if !json_mode {
                println!("{general}");
            }
            emit(json_mode, &input, json!(general.to_string()), None, start);
        }
        Command::Orders { msgm, canonical } => {
            let (input, m) = read_msgm(&msgm);
            if canonical {
                let o = m.canonical_order();
                if !json_mode {
                    println!("{o}");
                }
                emit(json_mode, &input, json!(o.to_string()), None, start);
            } else {
                let orders = m.standard_orders();
                if !json_mode {
                    for o in &orders {
                        println!("{o}");
                    }
                }
                let list: Vec<String> = orders.iter().map(|o| o.to_string()).collect();
                emit(json_mode, &input, json!(list), None, start);
            }
        }
        Command::Distinguished { msgm } => {
            let (input, m) = read_msgm(&msgm);
            match is_distinguished(&m) {
                DistinguishedVerdict::Distinguished(witnesses) => {
                    if !json_mode {
                        println!("distinguished: yes");
                        for w in &witnesses {
                            println!("order {} pieces {:?}", w.order, w.decomposition.pieces());
                        }
                    }
                    let ws: Vec<Value> = witnesses
                        .iter()
                        .map(|w| {
                            json!({
                                "order": w.order.to_string(),
                                "pieces": w
                                    .decomposition
                                    .pieces()
                                    .iter()
                                    .map(|row| row.iter().map(|s| s.to_string()).collect::<Vec<_>>())
                                    .collect::<Vec<_>>(),
                                "pairs": w
                                    .matching
                                    .pairs()
                                    .iter()
                                    .map(|(a, b)| json!([[a.0 + 1, a.1 + 1], [b.0 + 1, b.1 + 1]]))
                                    .collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    emit(json_mode, &input, json!("distinguished"), Some(json!(ws)), start);
                }
                DistinguishedVerdict::NotDistinguished(order) => {
                    if !json_mode {
                        println!("distinguished: no");
                        println!("failing order: {order}");
                    }
                    emit(
                        json_mode,
                        &input,
                        json!("not_distinguished"),
                        Some(json!(order.to_string())),
                        start,
                    );
                }
            }
        }
        Command::Hypothesis { msgm, mode } => {
            let (input, m) = read_msgm(&msgm);
            let verdict = match HypothesisMode::from(mode) {
                HypothesisMode::Star => check_hypothesis_star(&m),
                HypothesisMode::StarStar => check_hypothesis_star_star(&m),
            };
            match verdict {
                HypothesisVerdict::Holds => {
                    if !json_mode {
                        println!("holds");
                    }
                    emit(json_mode, &input, json!("holds"), None, start);
                }
                HypothesisVerdict::Counterexample(c) => {
                    if !json_mode {
                        println!("counterexample: {c}");
                    }
                    emit(
                        json_mode,
                        &input,
                        json!("counterexample"),
                        Some(json!(c.to_string())),
                        start,
                    );
                    std::process::exit(EXIT_COUNTEREXAMPLE);
                }
            }
        }
        Command::Search {
            max_end,
            max_size,
            max_mult,
            mode,
            filter,
            shards,
        } => {
            if max_end < 0 || max_size < 1 || max_mult < 1 {
                usage_error("bounds must satisfy max_end >= 0, max_size >= 1, max_mult >= 1");
            }
            let bounds = SearchBounds {
                max_end,
                max_size,
                max_mult,
                mode: mode.into(),
                filter: filter.into(),
                shards: shards.unwrap_or_else(default_shards),
            };
            let report = search_counterexamples(&bounds);
            if json_mode {
                let obj = json!({
                    "input": serde_json::to_value(&bounds).unwrap(),
                    "result": serde_json::to_value(&report).unwrap(),
                    "elapsed_ms": report.elapsed_ms as u64,
                });
                println!("{}", serde_json::to_string_pretty(&obj).unwrap());
            } else {
                println!("checked: {}", report.checked);
                println!("distinguished: {}", report.distinguished_count);
                println!("speh: {}", report.speh_count);
                println!("counterexamples: {}", report.counterexamples.len());
                for c in &report.counterexamples {
                    println!("  {} (canonical order {})", c.multisegment, c.canonical_order);
                }
                println!("strong violations: {}", report.strong_violations.len());
                for s in &report.strong_violations {
                    println!("  {s}");
                }
            }
            if !report.counterexamples.is_empty() {
                std::process::exit(EXIT_COUNTEREXAMPLE);
            }
        }
        Command::Ladder {
            command: LadderCommand::Classify { msgm, d },
        } => {
            if d < 1 {
                usage_error("--d must be a positive integer");
            }
            let (input, m) = read_msgm(&msgm);
            let ladder = Ladder::from_multisegment(&m);
            let family_f = in_family_f(&m);
            match &ladder {
                Some(l) => {
                    let parts: Vec<String> = l
                        .proper_parts()
                        .iter()
                        .map(|p| p.as_multisegment().to_string())
                        .collect();
                    let kly = klyachko_type(l, d);
                    if !json_mode {
                        println!("is_ladder: yes");
                        println!("is_proper: {}", if l.is_proper() { "yes" } else { "no" });
                        println!("proper_parts: {}", parts.join(" | "));
                        println!("sp_L: {}", if l.sp_distinguished_l() { "yes" } else { "no" });
                        println!("sp_Z: {}", if l.sp_distinguished_z() { "yes" } else { "no" });
                        match kly {
                            Some(kt) => println!("klyachko: k={} r={} n={}", kt.k, kt.r, kt.n),
                            None => println!("klyachko: none"),
                        }
                        println!("family_F: {}", if family_f { "yes" } else { "no" });
                    }
                    emit(
                        json_mode,
                        &input,
                        json!({
                            "is_ladder": true,
                            "is_proper": l.is_proper(),
                            "proper_parts": parts,
                            "sp_L": l.sp_distinguished_l(),
                            "sp_Z": l.sp_distinguished_z(),
                            "klyachko": kly.map(|kt| json!({"k": kt.k, "r": kt.r, "n": kt.n})),
                            "family_F": family_f,
                        }),
                        None,
                        start,
                    );
                }
                None => {
                    if !json_mode {
                        println!("is_ladder: no");
                        println!("family_F: {}", if family_f { "yes" } else { "no" });
                    }
                    emit(
                        json_mode,
                        &input,
                        json!({"is_ladder": false, "family_F": family_f}),
                        None,
                        start,
                    );
                }
            }
        }
        Command::Irreducible { msgms } => {
            let mut ladders = Vec::new();
            let mut inputs = Vec::new();
            for text in &msgms {
                let m = match parse_multisegment(text) {
                    Ok(m) => m,
                    Err(e) => usage_error(&e.to_string()),
                };
                match Ladder::from_multisegment(&m) {
                    Some(l) => ladders.push(l),
                    None => usage_error(&format!("'{text}' is not a ladder")),
                }
                inputs.push(text.clone());
            }
            let irreducible = product_irreducible(&ladders);
            let mut witnesses = Vec::new();
            for (a, l1) in ladders.iter().enumerate() {
                for (boff, l2) in ladders[a + 1..].iter().enumerate() {
                    let b = a + 1 + boff;
                    if let Some(w) = nc(l1, l2) {
                        witnesses.push(json!({"pair": [a + 1, b + 1], "i": w.i, "j": w.j, "k": w.k}));
                    }
                    if let Some(w) = nc(l2, l1) {
                        witnesses.push(json!({"pair": [b + 1, a + 1], "i": w.i, "j": w.j, "k": w.k}));
                    }
                }
            }
            let verdict = if irreducible {
                Some(product_sp_verdict(&ladders).expect("irreducible"))
            } else {
                None
            };
            if !json_mode {
                println!("irreducible: {}", if irreducible { "yes" } else { "no" });
                if !witnesses.is_empty() {
                    println!("nc_witnesses: {}", json!(witnesses));
                }
                if let Some(v) = &verdict {
                    let text = match v {
                        ProductVerdict::Distinguished => "distinguished".to_string(),
                        ProductVerdict::NotDistinguished => "not distinguished".to_string(),
                        ProductVerdict::HypothesisDependent(r) => {
                            format!("hypothesis dependent: {r}")
                        }
                    };
                    println!("sp_verdict: {text}");
                }
            }
            let verdict_json = verdict.map(|v| match v {
                ProductVerdict::Distinguished => json!("distinguished"),
                ProductVerdict::NotDistinguished => json!("not_distinguished"),
                ProductVerdict::HypothesisDependent(r) => {
                    json!({"hypothesis_dependent": r})
                }
            });
            emit(
                json_mode,
                &inputs.join(" "),
                json!({
                    "irreducible": irreducible,
                    "nc_witnesses": witnesses,
                    "sp_verdict": verdict_json,
                }),
                None,
                start,
            );
        }
        Command::Elementary { msgm, pair } => {
            let (input, m) = read_msgm(&msgm);
            if pair.len() != 2 {
                usage_error("--pair requires exactly two segments");
            }
            let d1 = parse_segment_arg(&pair[0]);
            let d2 = parse_segment_arg(&pair[1]);
            match m.elementary_operation(d1, d2) {
                Ok(result) => {
                    if !json_mode {
                        println!("{result}");
                    }
                    emit(json_mode, &input, json!(result.to_string()), None, start);
                }
                Err(e) => usage_error(&e.to_string()),
            }
        }
    }
}
