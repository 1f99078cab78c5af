//! Command-line front end: build group lattices, certify their
//! eutaxy/design/frame/optimality status, compute automorphism data and
//! run whole-table surveys with machine-readable output.
//!
//! Exit codes: 0 for computed verdicts (true or false alike), 2 for
//! invalid input, 3 for budget exhaustion.

use clap::{Parser, Subcommand, ValueEnum};
use grouplat::aut::{aut_order, aut_report, dual_cosets, dual_min_equal, subgroup_order};
use grouplat::eutaxy::{predicted_strongly_eutactic, spherical_2_design_check, strong_eutaxy_check, unt_frame_check};
use grouplat::group::{make_group, AbelianGroup};
use grouplat::json::{basis_value, eutaxy_certificate_value, minimal_vectors_value, optimality_value, rat_value};
use grouplat::lattice::shortest_vectors;
use grouplat::lg::{build, minimal_count_formula};
use grouplat::optimality::{extremality_certificate, is_eutactic, is_perfect, EutaxyOutcome};
use grouplat::rat::{rat_str, Rat};
use grouplat::survey::{group_label, types_up_to};
use grouplat::{Budget, Error};
use grouplat::rat::Int;
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "grouplat", version, about = "Exact certificates for lattices from finite Abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Wall-clock budget for searches, in seconds; 0 means unlimited.
    #[arg(long, global = true, default_value_t = 0)]
    budget_seconds: u64,
    /// Worker threads for survey fan-out.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Output format; per-group commands default to json, survey to csv.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SurveyWhat {
    /// Computed and predicted strong-eutaxy verdicts.
    Eutaxy,
    /// Automorphism-order ratio against the holomorph subgroup.
    AutRatio,
    /// Minimal-vector count, compared with the closed formula.
    Minvec,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the lattice of a group and print its basis.
    Build {
        #[arg(long)]
        group: String,
    },
    /// Enumerate the minimal vectors of the group lattice.
    Minvec {
        #[arg(long)]
        group: String,
    },
    /// Strong-eutaxy certificate for the group lattice.
    Eutaxy {
        #[arg(long)]
        group: String,
    },
    /// Spherical 2-design check for the normalized minimal vectors.
    Design {
        #[arg(long)]
        group: String,
    },
    /// Uniform normalized tight-frame check for the scaled minimal vectors.
    Frame {
        #[arg(long)]
        group: String,
    },
    /// Perfection rank test.
    Perfect {
        #[arg(long)]
        group: String,
    },
    /// Eutaxy feasibility via the exact linear program.
    Eutactic {
        #[arg(long)]
        group: String,
    },
    /// Full extremality certificate (perfect + eutactic).
    Extreme {
        #[arg(long)]
        group: String,
    },
    /// Automorphism group order, subgroup order and their ratio.
    Aut {
        #[arg(long)]
        group: String,
    },
    /// Dual-lattice minimal-vector comparison through coset minima.
    DualCheck {
        #[arg(long)]
        group: String,
    },
    /// Sweep all isomorphism types up to a maximal order.
    Survey {
        #[arg(long)]
        max_order: u64,
        #[arg(long, value_enum)]
        what: SurveyWhat,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let budget = Budget::unlimited().with_deadline(cli.budget_seconds);
    let result = match &cli.command {
        Command::Survey { max_order, what } => {
            return run_survey(*max_order, *what, &cli, &budget);
        }
        Command::Build { group } => with_group(group, |g| {
            let lg = build(&g)?;
            Ok(doc(vec![
                ("group", json!(group_label(g.invariant_factors()))),
                ("invariant_factors", json!(g.invariant_factors())),
                ("n", json!(g.order())),
                ("rank", json!(lg.lattice().rank())),
                ("basis", basis_value(lg.lattice())),
            ]))
        }),
        Command::Minvec { group } => with_group(group, |g| {
            let lg = build(&g)?;
            let sv = shortest_vectors(lg.lattice())?;
            let mut fields = vec![
                ("group".to_string(), json!(group_label(g.invariant_factors()))),
                ("n".to_string(), json!(g.order())),
            ];
            if let Value::Object(m) = minimal_vectors_value(&sv) {
                fields.extend(m);
            }
            Ok(doc_owned(fields))
        }),
        Command::Eutaxy { group } => with_group(group, |g| {
            let lg = build(&g)?;
            let cert = strong_eutaxy_check(lg.lattice())?;
            let mut fields = vec![("group".to_string(), json!(group_label(g.invariant_factors())))];
            if let Value::Object(m) = eutaxy_certificate_value(&cert) {
                fields.extend(m.into_iter().filter(|(k, _)| k != "schema"));
            }
            fields.push(("predicted".to_string(), json!(predicted_strongly_eutactic(&g))));
            Ok(doc_owned(fields))
        }),
        Command::Design { group } => with_group(group, |g| {
            let lg = build(&g)?;
            let sv = shortest_vectors(lg.lattice())?;
            let verdict = spherical_2_design_check(sv.vectors(), sv.min_norm_sq(), lg.lattice().rank())?;
            Ok(doc(vec![
                ("group", json!(group_label(g.invariant_factors()))),
                ("verdict", json!(verdict)),
                ("r", json!(lg.lattice().rank())),
                ("m", json!(sv.len())),
            ]))
        }),
        Command::Frame { group } => with_group(group, |g| {
            let lg = build(&g)?;
            let sv = shortest_vectors(lg.lattice())?;
            let r = lg.lattice().rank();
            let m = sv.len();
            let verdict = unt_frame_check(sv.vectors(), r, m)?;
            Ok(doc(vec![
                ("group", json!(group_label(g.invariant_factors()))),
                ("verdict", json!(verdict)),
                ("r", json!(r)),
                ("m", json!(m)),
            ]))
        }),
        Command::Perfect { group } => with_group(group, |g| {
            let lg = build(&g)?;
            let (perfect, rank) = is_perfect(lg.lattice())?;
            let r = lg.lattice().rank();
            Ok(doc(vec![
                ("group", json!(group_label(g.invariant_factors()))),
                ("verdict", json!(perfect)),
                ("perfection_rank", json!(rank)),
                ("perfection_target", json!(r * (r + 1) / 2)),
            ]))
        }),
        Command::Eutactic { group } => {
            let b = budget.clone();
            with_group(group, move |g| {
                let lg = build(&g)?;
                let outcome = is_eutactic(lg.lattice(), &b)?;
                let mut fields = vec![("group".to_string(), json!(group_label(g.invariant_factors())))];
                match outcome {
                    EutaxyOutcome::Eutactic(weights) => {
                        fields.push(("verdict".to_string(), json!(true)));
                        let mut wmap = Map::new();
                        for (rep, rho) in &weights {
                            let key = rep.iter().map(rat_str).collect::<Vec<_>>().join(",");
                            wmap.insert(key, rat_value(rho));
                        }
                        fields.push(("weights".to_string(), Value::Object(wmap)));
                    }
                    EutaxyOutcome::NotEutactic => fields.push(("verdict".to_string(), json!(false))),
                    EutaxyOutcome::BudgetExceeded => {
                        return Err(Error::BudgetExceeded {
                            what: "eutaxy linear program".into(),
                            lower_bound: None,
                        })
                    }
                }
                Ok(doc_owned(fields))
            })
        }
        Command::Extreme { group } => {
            let b = budget.clone();
            with_group(group, move |g| {
                let lg = build(&g)?;
                let report = extremality_certificate(lg.lattice(), &b)?;
                let mut fields = vec![("group".to_string(), json!(group_label(g.invariant_factors())))];
                if let Value::Object(m) = optimality_value(&report) {
                    fields.extend(m.into_iter().filter(|(k, _)| k != "schema"));
                }
                Ok(doc_owned(fields))
            })
        }
        Command::Aut { group } => {
            let b = budget.clone();
            with_group(group, move |g| {
                let report = aut_report(&g, &b)?;
                Ok(doc(vec![
                    ("group", json!(group_label(g.invariant_factors()))),
                    ("n", json!(g.order())),
                    ("aut_order", json!(report.aut_order.to_string())),
                    ("subgroup_order", json!(report.subgroup_order.to_string())),
                    ("ratio", json!(report.ratio.to_string())),
                ]))
            })
        }
        Command::DualCheck { group } => with_group(group, |g| {
            let verdict = dual_min_equal(&g)?;
            let family = dual_cosets(&g)?;
            let n = g.order();
            let minima: Vec<Value> = family
                .cosets
                .iter()
                .map(|c| rat_value(&c.min_norm_sq))
                .collect();
            Ok(doc(vec![
                ("group", json!(group_label(g.invariant_factors()))),
                ("n", json!(n)),
                ("verdict", json!(verdict)),
                ("ambient_dual_min", json!(format!("{}/{}", n - 1, n))),
                ("coset_minima", Value::Array(minima)),
            ]))
        }),
    };

    match result {
        Ok(value) => {
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => println!("{value}"),
                Format::Text => print_text(&value),
                Format::Csv => {
                    eprintln!("error: csv output is only available for survey");
                    return 2;
                }
            }
            0
        }
        Err(e) => report_error(&e),
    }
}

fn report_error(e: &Error) -> i32 {
    eprintln!("error: {e}");
    match e {
        Error::BudgetExceeded { .. } => 3,
        _ => 2,
    }
}

fn with_group<F>(spec: &str, f: F) -> Result<Value, Error>
where
    F: FnOnce(AbelianGroup) -> Result<Value, Error>,
{
    let group = parse_group(spec)?;
    if group.order() < 2 {
        return Err(Error::InvalidInput("the group must have order at least 2".into()));
    }
    f(group)
}

fn parse_group(spec: &str) -> Result<AbelianGroup, Error> {
    let factors: Result<Vec<u64>, Error> = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u64>()
                .map_err(|_| Error::InvalidInput(format!("cannot parse cyclic order {s:?}")))
        })
        .collect();
    make_group(&factors?)
}

fn doc(fields: Vec<(&str, Value)>) -> Value {
    doc_owned(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn doc_owned(fields: Vec<(String, Value)>) -> Value {
    let mut obj = Map::new();
    obj.insert("schema".into(), json!(1));
    for (k, v) in fields {
        obj.insert(k, v);
    }
    Value::Object(obj)
}

fn print_text(value: &Value) {
    if let Value::Object(map) = value {
        for (k, v) in map {
            println!("{k}: {v}");
        }
    } else {
        println!("{value}");
    }
}

// ---------------------------------------------------------------------
// Survey.

struct SurveyRow {
    label: String,
    n: u64,
    cells: Vec<(&'static str, String)>,
    budget_hit: bool,
}

fn run_survey(max_order: u64, what: SurveyWhat, cli: &Cli, budget: &Budget) -> i32 {
    if max_order < 2 {
        eprintln!("error: --max-order must be at least 2");
        return 2;
    }
    let types = types_up_to(max_order);
    let threads = cli.threads.max(1);

    let rows: Vec<SurveyRow> = if threads == 1 {
        types.iter().map(|t| survey_row(t, what, budget)).collect()
    } else {
        // Fan out over a shared work index; rows are reassembled in the
        // canonical type order, so output does not depend on scheduling.
        let next = std::sync::atomic::AtomicUsize::new(0);
        let slots: Vec<std::sync::Mutex<Option<SurveyRow>>> =
            (0..types.len()).map(|_| std::sync::Mutex::new(None)).collect();
        std::thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                    if i >= types.len() {
                        break;
                    }
                    let row = survey_row(&types[i], what, budget);
                    *slots[i].lock().unwrap() = Some(row);
                });
            }
        });
        slots
            .into_iter()
            .map(|s| s.into_inner().unwrap().expect("every slot filled"))
            .collect()
    };

    let any_budget_hit = rows.iter().any(|r| r.budget_hit);
    match cli.format.unwrap_or(Format::Csv) {
        Format::Csv | Format::Text => {
            let headers: Vec<&str> = match what {
                SurveyWhat::Eutaxy => vec!["group", "n", "computed", "predicted"],
                SurveyWhat::AutRatio => vec!["group", "ratio"],
                SurveyWhat::Minvec => vec!["group", "n", "min_norm_sq", "count", "formula"],
            };
            println!("{}", headers.join(","));
            for row in &rows {
                let mut cells: Vec<String> = Vec::new();
                for h in &headers {
                    match *h {
                        "group" => cells.push(row.label.clone()),
                        "n" => cells.push(row.n.to_string()),
                        _ => {
                            let v = row
                                .cells
                                .iter()
                                .find(|(k, _)| k == h)
                                .map(|(_, v)| v.clone())
                                .unwrap_or_default();
                            cells.push(v);
                        }
                    }
                }
                println!("{}", cells.join(","));
            }
        }
        Format::Json => {
            let out: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let mut obj = Map::new();
                    obj.insert("group".into(), json!(row.label));
                    obj.insert("n".into(), json!(row.n));
                    for (k, v) in &row.cells {
                        obj.insert((*k).into(), json!(v));
                    }
                    Value::Object(obj)
                })
                .collect();
            println!("{}", json!({ "schema": 1, "rows": out }));
        }
    }
    if any_budget_hit {
        3
    } else {
        0
    }
}

fn survey_row(factors: &[u64], what: SurveyWhat, budget: &Budget) -> SurveyRow {
    let group = make_group(factors).expect("canonical factors are valid");
    let label = group_label(factors);
    let n = group.order();
    let mut budget_hit = false;
    let cells: Vec<(&'static str, String)> = match what {
        SurveyWhat::Eutaxy => {
            let lg = build(&group).expect("order >= 2");
            let cert = strong_eutaxy_check(lg.lattice()).expect("rank >= 1");
            vec![
                ("computed", cert.verdict.to_string()),
                ("predicted", predicted_strongly_eutactic(&group).to_string()),
            ]
        }
        SurveyWhat::AutRatio => {
            let lg = build(&group).expect("order >= 2");
            match aut_order(lg.lattice(), budget) {
                Ok(order) => {
                    let sub = subgroup_order(&group).expect("order >= 2");
                    let ratio = Rat::new(Int::from(order), Int::from(sub));
                    vec![("ratio", ratio.to_string())]
                }
                Err(Error::BudgetExceeded { .. }) => {
                    budget_hit = true;
                    vec![("ratio", "budget-exceeded".into())]
                }
                Err(e) => panic!("unexpected error in survey: {e}"),
            }
        }
        SurveyWhat::Minvec => {
            let lg = build(&group).expect("order >= 2");
            let sv = shortest_vectors(lg.lattice()).expect("rank >= 1");
            let formula = if n >= 4 {
                let kappa = grouplat::group::two_torsion_order(&group);
                minimal_count_formula(n, kappa)
                    .map(|c| c.to_string())
                    .unwrap_or_else(|_| "-".into())
            } else {
                "-".into()
            };
            vec![
                ("min_norm_sq", rat_str(sv.min_norm_sq())),
                ("count", sv.len().to_string()),
                ("formula", formula),
            ]
        }
    };
    SurveyRow { label, n, cells, budget_hit }
}
