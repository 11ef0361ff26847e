//! Command-line front end for the classification toolkit.
//!
//! Machine output is JSON (newline-delimited in sweep mode); `--format text`
//! renders the same fields with a one-line explanation of the mathematical
//! meaning of each. Errors print a single diagnostic line on stderr and exit
//! with 2 for unparseable input, 3 when a group exceeds the order cap, and 4
//! when the numeric congruence invariant is required but unknown.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use oliverkit::chartab::CharacterTable;
use oliverkit::corpus::{self, CorpusEntry};
use oliverkit::error::Error;
use oliverkit::gcw::GCWComplex;
use oliverkit::matcher::{self, Flavor};
use oliverkit::parse::group_from_spec;
use oliverkit::realizability::{self, Question};
use oliverkit::taxonomy::{self, TaxonomyReport};
use oliverkit::{resolve_order_cap, FiniteGroup};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "oliverkit", version, about = "Exact fixed-point classification of finite groups")]
struct Cli {
    /// Cap on group order for full enumeration (default 2000, or the
    /// OLIVERKIT_ORDER_CAP environment variable).
    #[arg(long, global = true)]
    order_cap: Option<u64>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Coefficient bound for the independent matcher oracle.
    #[arg(long, global = true, default_value_t = 3)]
    brute_force_bound: i64,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full taxonomy report for one group.
    Classify { group: String },
    /// Chain-criterion verdict, with the disqualifying chain when one exists.
    Oliver { group: String },
    /// Matched-module membership for one coefficient flavor.
    Matched {
        group: String,
        /// complex, complex_selfconjugate or real.
        #[arg(long)]
        flavor: String,
        /// Also run the bounded brute-force oracle and report agreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Exact character table.
    Chartab { group: String },
    /// Congruence verdict for a realization question.
    Realize {
        /// disk_fixed_set, template_fixed_set, template_stably_parallelizable,
        /// fixed_point_free or rp2n_fixed_point_free.
        question: String,
        group: String,
        /// Euler characteristic of the candidate fixed set.
        #[arg(long)]
        chi_f: Option<i64>,
        /// Euler characteristic of the template's fixed set.
        #[arg(long)]
        chi_yg: Option<i64>,
        /// Externally supplied congruence modulus for groups where it is not
        /// computed.
        #[arg(long)]
        ng: Option<u64>,
    },
    /// Fixed-set Euler characteristics of a cell complex read from JSON.
    Gcw {
        file: PathBuf,
        /// Second complex file to wedge onto the first.
        #[arg(long)]
        wedge: Option<PathBuf>,
    },
    /// Classify a range of groups and cross-check matched memberships.
    Sweep {
        /// Family ranges like C:2..120 Dih:3..60 S:2..6 A:3..6.
        terms: Vec<String>,
        /// Also include all pairwise direct products of the listed groups.
        #[arg(long)]
        with_products: bool,
        /// Also include the named extra groups (Dic3, Dic5, Q8).
        #[arg(long)]
        with_extras: bool,
        /// Order bound for generated entries (defaults to the cap).
        #[arg(long)]
        max_order: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let line = e.to_string();
            eprintln!("{}", line.lines().next().unwrap_or("bad arguments"));
            return ExitCode::from(2);
        }
    };
    let cap = resolve_order_cap(cli.order_cap);
    match run(&cli, cap) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(match e {
                Error::Parse(_) | Error::ComplexInput(_) => 2,
                Error::OrderCapExceeded { .. } => 3,
                Error::OliverNumber(_) => 4,
                _ => 1,
            })
        }
    }
}

fn run(cli: &Cli, cap: u64) -> Result<ExitCode, Error> {
    match &cli.cmd {
        Cmd::Classify { group } => {
            let g = group_from_spec(group, cap)?;
            let report = TaxonomyReport::for_group(&g);
            emit(cli.format, &to_value(&report), REPORT_ANCHORS);
        }
        Cmd::Oliver { group } => {
            let g = group_from_spec(group, cap)?;
            let outcome = taxonomy::oliver_check(&g);
            let mut v = json!({ "oliver": outcome.is_oliver });
            if let Some(w) = outcome.witness {
                v["witness"] = to_value(&w.names());
            }
            emit(cli.format, &v, OLIVER_ANCHORS);
        }
        Cmd::Matched {
            group,
            flavor,
            oracle,
        } => {
            let flavor = Flavor::parse(flavor)?;
            let g = group_from_spec(group, cap)?;
            let table = CharacterTable::compute(&g)?;
            let (matched, witness) = matcher::membership_with_table(&table, flavor)?;
            let mut v = json!({
                "group": g.label(),
                "flavor": flavor.name(),
                "matched": matched,
            });
            if let Some(w) = &witness {
                v["witness"] = to_value(w);
            }
            if *oracle {
                let found = matcher::brute_force_witness(&table, flavor, cli.brute_force_bound);
                // The bounded oracle can only miss witnesses, never invent one.
                let agrees = match (&found, matched) {
                    (Some(_), true) | (None, false) => true,
                    (None, true) => true,
                    (Some(_), false) => false,
                };
                v["oracle_found_witness"] = json!(found.is_some());
                v["oracle_agrees"] = json!(agrees);
                if !agrees {
                    emit(cli.format, &v, MATCHED_ANCHORS);
                    eprintln!("oracle found a witness the lattice rejects");
                    return Ok(ExitCode::from(1));
                }
            }
            emit(cli.format, &v, MATCHED_ANCHORS);
        }
        Cmd::Chartab { group } => {
            let g = group_from_spec(group, cap)?;
            let table = CharacterTable::compute(&g)?;
            let v = chartab_value(&g, &table);
            emit(cli.format, &v, CHARTAB_ANCHORS);
        }
        Cmd::Realize {
            question,
            group,
            chi_f,
            chi_yg,
            ng,
        } => {
            let question = Question::parse(question)?;
            let g = group_from_spec(group, cap)?;
            let n = realizability::oliver_number(&g, *ng)?;
            if n.value.is_none() {
                return Err(Error::OliverNumber(format!(
                    "the congruence modulus for {} is unknown; supply --ng",
                    g.label()
                )));
            }
            let need = |x: &Option<i64>, flag: &str| {
                x.ok_or_else(|| Error::Parse(format!("{flag} is required for this question")))
            };
            let verdict = match question {
                Question::DiskFixedSet => realizability::disk_fixed_set(need(chi_f, "--chi-f")?, n),
                Question::TemplateFixedSet | Question::TemplateStablyParallelizable => {
                    realizability::template_fixed_set(
                        need(chi_f, "--chi-f")?,
                        need(chi_yg, "--chi-yg")?,
                        n,
                        question == Question::TemplateStablyParallelizable,
                        &taxonomy::classify(&g),
                    )
                }
                Question::FixedPointFree => {
                    realizability::fixed_point_free(need(chi_yg, "--chi-yg")?, n)
                }
                Question::Rp2nFixedPointFree => realizability::rp2n_fixed_point_free(n),
            };
            emit(cli.format, &to_value(&verdict), REALIZE_ANCHORS);
        }
        Cmd::Gcw { file, wedge } => {
            let x = GCWComplex::from_json(&read_json(file)?, cap)?;
            let x = match wedge {
                Some(wf) => {
                    let w = GCWComplex::from_json_over(&read_json(wf)?, x.group())?;
                    x.wedge(&w)?
                }
                None => x,
            };
            let entries = x.chi_report()?;
            let v = json!({
                "group": x.group().label(),
                "entries": to_value(&entries),
            });
            emit(cli.format, &v, GCW_ANCHORS);
        }
        Cmd::Sweep {
            terms,
            with_products,
            with_extras,
            max_order,
        } => {
            let entries = sweep_entries(terms, *with_products, *with_extras, max_order.unwrap_or(cap))?;
            let outcome = corpus::run_sweep(&entries, cap)?;
            for name in &outcome.skipped {
                eprintln!("warning: {name} exceeds the order cap {cap}, skipped");
            }
            for r in &outcome.records {
                match cli.format {
                    Format::Json => println!("{}", serde_json::to_string(r).unwrap()),
                    Format::Text => {
                        print_text(&to_value(r), REPORT_ANCHORS);
                        println!();
                    }
                }
            }
            if !outcome.all_consistent {
                eprintln!("membership/predicate equivalence failed for at least one group");
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn read_json(path: &PathBuf) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ComplexInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::ComplexInput(format!("{}: {e}", path.display())))
}

fn chartab_value(g: &FiniteGroup, table: &CharacterTable) -> Value {
    let classes = g.conjugacy_classes();
    let class_list: Vec<Value> = classes
        .classes
        .iter()
        .map(|c| {
            json!({
                "representative": g.elements()[c.rep as usize].to_string(),
                "size": c.size(),
                "order": c.element_order,
            })
        })
        .collect();
    // Each value is written as its root-of-unity support: a list of
    // [exponent, multiplicity] pairs meaning sum(mult * zeta^exponent) with
    // zeta = exp(2*pi*i/modulus). Dense coefficient vectors would make the
    // dump quadratic-times-modulus in the class count, which is unusable for
    // large abelian groups; the support form stays proportional to the
    // character degrees.
    let characters: Vec<Value> = (0..table.num_characters())
        .map(|i| {
            let values: Vec<Value> = (0..table.num_classes())
                .map(|j| json!(table.spectral(i, j)))
                .collect();
            json!({ "degree": table.degree(i), "values": values })
        })
        .collect();
    json!({
        "group": g.label(),
        "order": g.order(),
        "modulus": table.modulus,
        "classes": class_list,
        "characters": characters,
    })
}

// ---------------------------------------------------------------------------
// Sweep range grammar
// ---------------------------------------------------------------------------

/// Parse `FAM:lo..hi` or `FAM:n` terms and assemble the entry list.
fn sweep_entries(
    terms: &[String],
    with_products: bool,
    with_extras: bool,
    max_order: u64,
) -> Result<Vec<CorpusEntry>, Error> {
    let mut base: Vec<CorpusEntry> = Vec::new();
    for term in terms {
        let (fam, range) = term
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad sweep term '{term}'; expected FAM:lo..hi")))?;
        let (lo, hi) = match range.split_once("..") {
            Some((lo, hi)) => (parse_bound(lo, term)?, parse_bound(hi, term)?),
            None => {
                let n = parse_bound(range, term)?;
                (n, n)
            }
        };
        base.extend(corpus::family_range(fam, lo, hi)?);
    }
    let mut entries = base.clone();
    if with_products {
        entries.extend(corpus::pairwise_products(&base, max_order));
    }
    if with_extras {
        entries.extend(corpus::named_extras());
    }
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    entries.dedup_by(|a, b| a.name == b.name);
    Ok(entries)
}

fn parse_bound(s: &str, term: &str) -> Result<u64, Error> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("bad bound '{s}' in sweep term '{term}'")))
}

// ---------------------------------------------------------------------------
// Text rendering
// ---------------------------------------------------------------------------

type Anchors = &'static [(&'static str, &'static str)];

const REPORT_ANCHORS: Anchors = &[
    ("group", "group label"),
    ("order", "group order"),
    ("is_prime_power_order", "whether the group order is a prime power"),
    ("has_npp_element", "existence of an element of non-prime-power order"),
    ("has_npp_conj_inverse", "existence of a non-prime-power-order element conjugate to its inverse"),
    ("has_dpq_subquotient", "existence of a dihedral subquotient of order 2pq, p and q distinct primes"),
    ("class_label", "five-class taxonomy by element orders and dihedral subquotients"),
    ("has_normal_sylow2", "normality of a Sylow 2-subgroup"),
    ("six_class_label", "six-class refinement splitting the first two classes by Sylow-2 normality"),
    ("oliver", "chain criterion: no P normal in H normal in G with |P|, |G:H| prime powers and H/P cyclic"),
    ("oliver_chain_witness", "disqualifying chain found by the search"),
    ("ko_recipe_id", "identifier of the tangent-condition recipe attached to the class"),
    ("matched_complex", "complex module pair agreeing on prime-power-order elements with fixed dimensions 0 and 1"),
    ("matched_selfconjugate", "self-conjugate module pair with the same agreement"),
    ("matched_real", "real module pair with the same agreement"),
    ("lemma_consistent", "memberships agree with the three group-theoretic predicates"),
    ("indicator_sum_ok", "indicator-weighted degree sum equals the count of square roots of identity"),
];

const OLIVER_ANCHORS: Anchors = &[
    ("oliver", "chain criterion: no P normal in H normal in G with |P|, |G:H| prime powers and H/P cyclic"),
    ("witness", "disqualifying chain: P normal in H, |P| and |G:H| prime powers, H/P cyclic"),
];

const MATCHED_ANCHORS: Anchors = &[
    ("group", "group label"),
    ("flavor", "coefficient flavor of the module pair"),
    ("matched", "a pair with equal characters on prime-power-order elements and fixed dimensions 0 and 1 exists"),
    ("witness", "module multiplicity vectors of such a pair"),
    ("oracle_found_witness", "the bounded exhaustive search found a pair"),
    ("oracle_agrees", "the bounded search does not contradict the lattice verdict"),
];

const CHARTAB_ANCHORS: Anchors = &[
    ("group", "group label"),
    ("order", "group order"),
    ("modulus", "cyclotomic level of the table: the group exponent"),
    ("classes", "conjugacy classes: representative, size, element order"),
    ("characters", "irreducible characters as power-basis coefficient vectors per class"),
];

const REALIZE_ANCHORS: Anchors = &[
    ("question", "realization question"),
    ("chi_f", "Euler characteristic of the candidate fixed set"),
    ("chi_y_g", "Euler characteristic of the template's fixed set"),
    ("n_g", "congruence modulus: 1 for groups passing the chain criterion"),
    ("congruence_ok", "whether the Euler characteristics satisfy the required congruence"),
    ("tangent_condition", "symbolic reduced K-theory recipe for the tangent bundle, reported not evaluated"),
    ("cited_theorem", "statement of the realization theorem the verdict instantiates"),
];

const GCW_ANCHORS: Anchors = &[
    ("group", "group label"),
    ("entries", "Euler characteristic of the fixed set, per conjugacy class of subgroups"),
];

fn emit(format: Format, v: &Value, anchors: Anchors) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(v).unwrap()),
        Format::Text => print_text(v, anchors),
    }
}

fn print_text(v: &Value, anchors: Anchors) {
    let obj = v.as_object().expect("top-level output is an object");
    for (field, anchor) in anchors {
        if let Some(val) = obj.get(*field) {
            println!("{field}: {}  [{anchor}]", render_scalar(val));
        }
    }
    // Any fields without a registered anchor still get printed.
    for (k, val) in obj {
        if !anchors.iter().any(|(f, _)| f == k) {
            println!("{k}: {}", render_scalar(val));
        }
    }
}

fn render_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => serde_json::to_string(other).unwrap(),
    }
}
