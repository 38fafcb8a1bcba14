//! Command-line front end: factor, count, enumerate, build, dualize,
//! classify, compute distances, and run the built-in reproduction suite.
//!
//! Every successful invocation prints a JSON payload to stdout (or writes it
//! to `--out` and prints `{"written": …}`). Validation failures print a
//! machine-readable `{"error", "detail"}` object to stderr and exit with
//! status 2.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use dihedral_codes::code_builder::{enumerate_codewords, CodeSelection, DEFAULT_WORD_CAP};
use dihedral_codes::component_algebra::SolutionSets;
use dihedral_codes::error::{Error, Result};
use dihedral_codes::ideal_enumeration::{
    classify_self, count_ideals, count_self_dual, count_self_orthogonal, enumerate_ideals,
    IdealCase, IdealDescriptor,
};
use dihedral_codes::jsonio;
use dihedral_codes::metrics_oracle::min_distances;
use dihedral_codes::ring_poly::RPoly;
use dihedral_codes::system::CodeSystem;

#[derive(Parser)]
#[command(
    name = "dihedral",
    version,
    about = "Left dihedral codes over Galois rings GR(p^2, m): construction, enumeration and exact analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RingArgs {
    /// Prime p of the ground ring GR(p^2, m)
    #[arg(long)]
    p: u32,
    /// Extension degree m over Z_{p^2}
    #[arg(long)]
    m: usize,
    /// Code half-length n (the codes have length 2n); gcd(n, p) must be 1
    #[arg(long)]
    n: u64,
    /// Optional defining modulus, ascending coefficients "c0,c1,...,1"
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
}

#[derive(Subcommand)]
enum Command {
    /// Factor x^n - 1 over GR(p^2, m) into classified basic irreducible factors
    Factor {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Primary idempotents of R[x]/<x^n - 1> and the pair idempotents
    Idempotents {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count left dihedral codes, optionally restricted to a subfamily
    Count {
        #[command(flatten)]
        ring: RingArgs,
        /// Count Euclidean self-dual codes only
        #[arg(long, conflicts_with = "self_orthogonal")]
        self_dual: bool,
        /// Count self-orthogonal codes only
        #[arg(long)]
        self_orthogonal: bool,
    },
    /// Page through the outer-ideal descriptors of one component
    Enumerate {
        #[command(flatten)]
        ring: RingArgs,
        /// Component index (0 = the x-1 component)
        #[arg(long)]
        component: usize,
        #[arg(long, default_value_t = 0)]
        offset: usize,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the generator rows of the code named by a selection file
    Build {
        #[arg(long)]
        selection: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the Euclidean dual of the code named by a selection file
    Dual {
        #[arg(long)]
        selection: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Self-dual / self-orthogonal classification of a selection
    Classify {
        #[arg(long)]
        selection: PathBuf,
    },
    /// Exhaustive minimum Hamming (and optionally Lee) distance of a selection
    Distance {
        #[arg(long)]
        selection: PathBuf,
        /// Cap on the number of codewords scanned
        #[arg(long)]
        cap: Option<u64>,
        /// Also compute the minimum Lee distance (m = 1 only)
        #[arg(long)]
        lee: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in reproduction suite for the length-30 family over Z4
    VerifyPaperExample,
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("{}", json!({"error": e.code(), "detail": e.to_string()}));
        std::process::exit(2);
    }
}

fn emit(payload: &Value, out: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string(payload).expect("serializable payload");
    match out {
        Some(path) => {
            std::fs::write(path, text.as_bytes()).map_err(|e| {
                Error::InvalidParameter(format!("cannot write {}: {e}", path.display()))
            })?;
            println!("{}", json!({"written": path.display().to_string()}));
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn load_selection(path: &PathBuf) -> Result<(CodeSystem, CodeSelection)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Schema {
        pointer: "/".into(),
        detail: format!("invalid JSON: {e}"),
    })?;
    let header = jsonio::selection_header_from_json(&value)?;
    let system = CodeSystem::new(header.p, header.m, header.n, header.modulus)?;
    let selection = jsonio::selection_from_json(&system.components, &value)?;
    Ok((system, selection))
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Factor { ring, out } => {
            let system = CodeSystem::new(ring.p, ring.m, ring.n, ring.modulus)?;
            emit(&jsonio::profile_to_json(&system.profile), out.as_ref())
        }
        Command::Idempotents { ring, out } => {
            let system = CodeSystem::new(ring.p, ring.m, ring.n, ring.modulus)?;
            emit(
                &jsonio::idempotents_to_json(&system.profile, &system.idem),
                out.as_ref(),
            )
        }
        Command::Count { ring, self_dual, self_orthogonal } => {
            let system = CodeSystem::new(ring.p, ring.m, ring.n, ring.modulus)?;
            let count = if self_dual {
                count_self_dual(&system.profile)
            } else if self_orthogonal {
                count_self_orthogonal(&system.profile)
            } else {
                count_ideals(&system.profile, &system.components)?
            };
            emit(&json!({"count": count.to_string()}), None)
        }
        Command::Enumerate { ring, component, offset, limit, out } => {
            let system = CodeSystem::new(ring.p, ring.m, ring.n, ring.modulus)?;
            let (comp, sets) = system
                .components
                .get(component)
                .ok_or(Error::IndexOutOfRange(component))?;
            let stream = enumerate_ideals(comp, sets.as_ref())?;
            let total = stream.len();
            let end = limit.map_or(total, |l| (offset + l).min(total));
            let page: Vec<Value> = stream[offset.min(total)..end]
                .iter()
                .map(|(d, info)| {
                    let mut v = jsonio::descriptor_to_json(system.ctx(), d);
                    let obj = v.as_object_mut().unwrap();
                    obj.insert("cardinality".into(), json!(info.cardinality.to_string()));
                    obj.insert("min_weight_d".into(), json!(info.min_weight_d));
                    v
                })
                .collect();
            emit(
                &json!({
                    "component": component,
                    "total": total,
                    "offset": offset,
                    "descriptors": page,
                }),
                out.as_ref(),
            )
        }
        Command::Build { selection, out } => {
            let (system, sel) = load_selection(&selection)?;
            let code = system.build(&sel)?;
            emit(&jsonio::code_to_json(&code), out.as_ref())
        }
        Command::Dual { selection, out } => {
            let (system, sel) = load_selection(&selection)?;
            let dual = system.dual(&sel)?;
            emit(&jsonio::code_to_json(&dual), out.as_ref())
        }
        Command::Classify { selection } => {
            let (system, sel) = load_selection(&selection)?;
            let mut all_sd = true;
            let mut all_so = true;
            let mut per = Vec::new();
            for (i, d) in sel.descriptors.iter().enumerate() {
                let (comp, sets) = &system.components[i];
                let cls = classify_self(comp, sets.as_ref(), d)?;
                all_sd &= cls.self_dual;
                all_so &= cls.self_orthogonal;
                per.push(json!({
                    "i": i,
                    "self_dual": cls.self_dual,
                    "self_orthogonal": cls.self_orthogonal,
                }));
            }
            emit(
                &json!({
                    "self_dual": all_sd,
                    "self_orthogonal": all_so,
                    "components": per,
                }),
                None,
            )
        }
        Command::Distance { selection, cap, lee, out } => {
            let (system, sel) = load_selection(&selection)?;
            let code = system.build(&sel)?;
            let start = Instant::now();
            let report = min_distances(&code, cap.unwrap_or(DEFAULT_WORD_CAP), lee)?;
            emit(
                &jsonio::weight_report_to_json(&report, start.elapsed().as_millis()),
                out.as_ref(),
            )
        }
        Command::VerifyPaperExample => verify_reproduction(),
    }
}

/// Reproduces the published length-30 worked example over Z4 and prints a
/// pass/fail table.
fn verify_reproduction() -> Result<()> {
    let mut checks: Vec<(String, bool, String)> = Vec::new();
    let mut record = |name: &str, pass: bool, detail: String| {
        checks.push((name.to_string(), pass, detail));
    };

    let system = CodeSystem::new(2, 1, 15, None)?;
    let ctx = system.ctx().clone();

    // factorization
    let f = &system.profile.factors;
    let fact_ok = system.profile.r == 2
        && system.profile.t == 1
        && system.profile.lambda == 1
        && f[0].f == ctx.rp_from_scalars(&[3, 1])
        && f[1].f == ctx.rp_from_scalars(&[1, 1, 1])
        && f[2].f == ctx.rp_from_scalars(&[1, 1, 1, 1, 1])
        && f[3].rho.as_ref() == Some(&ctx.rp_from_scalars(&[1, 3, 2, 0, 1]));
    record("factorization", fact_ok, "x^15 - 1 factors and degrees".into());

    // idempotents
    let e = &system.idem.eps;
    let (e31, e32) = system.idem.pair_eps[3].as_ref().unwrap();
    let idem_ok = e[0] == ctx.rp_from_scalars(&[3; 15])
        && e[1] == ctx.rp_from_scalars(&[2, 1, 1, 2, 1, 1, 2, 1, 1, 2, 1, 1, 2, 1, 1])
        && e[2] == ctx.rp_from_scalars(&[0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1])
        && *e31 == ctx.rp_from_scalars(&[2, 2, 3, 1, 2, 1, 0, 3])
        && *e32 == ctx.rp_from_scalars(&[3, 2, 1, 3, 2, 3, 0, 1]);
    record("idempotents", idem_ok, "printed idempotents and block pair".into());

    // counting
    let count = count_ideals(&system.profile, &system.components)?;
    record(
        "count",
        count == BigUint::from(1_070_685u64),
        format!("total {count}"),
    );
    let sd = count_self_dual(&system.profile);
    let so = count_self_orthogonal(&system.profile);
    record("self_dual_count", sd == BigUint::from(33u32), format!("{sd}"));
    record(
        "self_orthogonal_count",
        so == BigUint::from(5355u32),
        format!("{so}"),
    );

    // solution sets and unit orders
    let sets_ok = {
        let Some(SolutionSets::SelfReciprocal { w_set, v_set }) = &system.components[1].1 else {
            unreachable!()
        };
        let w1: BTreeSet<RPoly> = w_set.iter().cloned().collect();
        let w1_expect: BTreeSet<RPoly> = [vec![1u32], vec![0, 1], vec![3, 3]]
            .iter()
            .map(|c| ctx.rp_from_scalars(c))
            .collect();
        let v1_ok = v_set.len() == 2;
        let Some(SolutionSets::SelfReciprocal { w_set: w2, v_set: v2 }) =
            &system.components[2].1
        else {
            unreachable!()
        };
        w1 == w1_expect && v1_ok && w2.len() == 5 && v2.len() == 4
    };
    let (c1, _) = &system.components[1];
    let (c2, _) = &system.components[2];
    let (c3, _) = &system.components[3];
    let orders_ok = ctx.polymod_order(&ctx.rp_from_scalars(&[0, 1]), &c1.f, 20) == Some(3)
        && ctx.polymod_order(&ctx.rp_from_scalars(&[1, 1, 0, 2]), &c2.f, 300) == Some(15)
        && ctx.polymod_order(&ctx.rp_from_scalars(&[0, 0, 1]), c3.rho.as_ref().unwrap(), 300)
            == Some(15);
    record("solution_sets", sets_ok, "worked unit and residue sets".into());
    record("unit_orders", orders_ok, "orders 3, 15, 15".into());

    // the sixty distance-optimal codes
    let Some(SolutionSets::SelfReciprocal { w_set: w1s, v_set: v1s }) = &system.components[1].1
    else {
        unreachable!()
    };
    let Some(SolutionSets::SelfReciprocal { w_set: w2s, v_set: v2s }) = &system.components[2].1
    else {
        unreachable!()
    };
    let theta2: Vec<_> = v2s
        .iter()
        .filter(|t| t.degree().map(|d| d >= 1).unwrap_or(false))
        .cloned()
        .collect();
    let mut built = 0usize;
    let mut good = 0usize;
    for w1 in w1s {
        for t1 in v1s {
            for w2 in w2s {
                for t2 in &theta2 {
                    let descriptors = vec![
                        IdealDescriptor { component: 0, case: IdealCase::Zero },
                        IdealDescriptor {
                            component: 1,
                            case: IdealCase::WThetaPlusY { w: w1.clone(), theta: t1.clone() },
                        },
                        IdealDescriptor {
                            component: 2,
                            case: IdealCase::WThetaPlusY { w: w2.clone(), theta: t2.clone() },
                        },
                        IdealDescriptor { component: 3, case: IdealCase::Zero },
                    ];
                    let code = system.build(&CodeSelection { descriptors })?;
                    built += 1;
                    let words = enumerate_codewords(&code, 1 << 13)?;
                    let report = min_distances(&code, 1 << 13, true)?;
                    if words.len() == 4096
                        && report.d_hamming == 12
                        && report.d_lee == Some(20)
                    {
                        good += 1;
                    }
                }
            }
        }
    }
    record(
        "sixty_codes",
        built == 60 && good == 60,
        format!("{good}/{built} codes with d_H = 12, d_L = 20"),
    );

    let all_pass = checks.iter().all(|(_, pass, _)| *pass);
    let table: Vec<Value> = checks
        .iter()
        .map(|(name, pass, detail)| json!({"name": name, "pass": pass, "detail": detail}))
        .collect();
    println!(
        "{}",
        json!({"checks": table, "all_pass": all_pass})
    );
    if !all_pass {
        return Err(Error::InvalidParameter("reproduction checks failed".into()));
    }
    Ok(())
}
