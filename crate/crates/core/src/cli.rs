//! Command-line front end. Commands produce their stdout text and an exit
//! code so they can be driven from tests without spawning a process.

use crate::cyclo::CycloProduct;
use crate::error::{Error, Result};
use crate::invariants::{self, Check};
use crate::json::{to_canonical_string, JsonInt};
use crate::lefschetz::{self, GradedMaps, LefschetzSequence};
use crate::polycurve::{self, PolyJson};
use crate::semigroup::{analyze, BranchData};
use crate::series::TruncSeries;
use crate::sweep::{run_sweep, SweepSpec};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

pub const MAX_EXPAND_VAR: &str = "BRANCHZETA_MAX_EXPAND";
pub const DEFAULT_MAX_EXPAND: usize = 10_000;

#[derive(Debug, Parser)]
#[command(
    name = "branchzeta",
    version,
    about = "Zeta functions and Poincaré series of plane branches"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a semigroup and print its structure constants.
    Analyze {
        /// Generators, comma separated (e.g. 4,6,13).
        gens: String,
    },
    /// Poincaré series, relative zeta functions, duals and monodromy zeta.
    Invariants {
        gens: String,
        /// Also print every product expanded through T^N.
        #[arg(long, value_name = "N")]
        expand: Option<usize>,
    },
    /// Check the identities between the invariants.
    Verify {
        gens: String,
        #[arg(value_enum, default_value_t = Which::All)]
        which: Which,
    },
    /// Monomial-curve equations and the eliminated plane-curve equation.
    Equations { gens: String },
    /// Enumerate semigroups within bounds and verify all of them.
    Sweep {
        #[arg(long, default_value_t = 12)]
        max_beta0: u64,
        #[arg(long, default_value_t = 400)]
        max_gen: u64,
        #[arg(long, default_value_t = 3)]
        max_g: usize,
        /// Check cases on a thread pool; output order is unchanged.
        #[arg(long)]
        parallel: bool,
    },
    /// Zeta function from Lefschetz numbers, homology maps or point counts.
    ///
    /// INPUT is JSON: `[...]`, `{"lambda": [...]}`, `{"counts": [...]}` or
    /// `{"maps": [[[...]], ...], "order": K}`. Use `-` (default) for stdin or
    /// `@path` for a file.
    Lefschetz {
        #[arg(default_value = "-")]
        input: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Cdg,
    Egz,
    Propjan,
    Lemma1,
    All,
}

impl Which {
    fn checks(self) -> Vec<Check> {
        match self {
            Which::Cdg => vec![Check::Cdg],
            Which::Egz => vec![Check::Egz],
            Which::Propjan => vec![Check::Propjan],
            Which::Lemma1 => vec![Check::Lemma1],
            Which::All => Check::ALL.to_vec(),
        }
    }
}

/// What a command printed and how it wants to exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn from_error(err: &Error) -> Self {
        let code = match err {
            Error::Internal(_) => EXIT_FAILED,
            _ => EXIT_INVALID,
        };
        Outcome {
            stdout: to_canonical_string(&json!({
                "error": { "reason": err.reason(), "message": err.to_string() }
            })),
            stderr: format!("error: {err}\n"),
            code,
        }
    }
}

/// Series order cap from the environment.
pub fn max_expand() -> usize {
    std::env::var(MAX_EXPAND_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_EXPAND)
}

fn check_order(order: usize) -> Result<()> {
    let cap = max_expand();
    if order > cap {
        return Err(Error::OrderTooLarge {
            requested: order,
            cap,
        });
    }
    Ok(())
}

pub fn parse_gens(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::Input(format!("bad generator {t:?} in {s:?}")))
        })
        .collect()
}

pub fn run(cli: Cli) -> Outcome {
    let res = match cli.command {
        Command::Analyze { gens } => cmd_analyze(&gens, cli.format),
        Command::Invariants { gens, expand } => cmd_invariants(&gens, expand, cli.format),
        Command::Verify { gens, which } => cmd_verify(&gens, which, cli.format),
        Command::Equations { gens } => cmd_equations(&gens, cli.format),
        Command::Sweep {
            max_beta0,
            max_gen,
            max_g,
            parallel,
        } => cmd_sweep(
            &SweepSpec {
                max_beta0,
                max_gen,
                max_g,
            },
            parallel,
            cli.format,
        ),
        Command::Lefschetz { input } => read_input(&input).and_then(|s| cmd_lefschetz(&s)),
    };
    res.unwrap_or_else(|err| Outcome::from_error(&err))
}

fn branch(gens: &str) -> Result<BranchData> {
    analyze(&parse_gens(gens)?)
}

pub fn cmd_analyze(gens: &str, format: Format) -> Result<Outcome> {
    let bd = branch(gens)?;
    Ok(Outcome::ok(match format {
        Format::Json => to_canonical_string(&bd),
        Format::Text => {
            let mut s = format!("semigroup <{}>\n", join(bd.beta()));
            s += &format!(
                "e = ({})\nn = ({})\nd = ({})\n",
                join(bd.e()),
                join(bd.n()),
                join(bd.d())
            );
            for (i, row) in bd.l_matrix().iter().enumerate() {
                s += &format!("l_{} = ({})\n", i + 1, join(row));
            }
            s += &format!("conductor = {}\ndelta = {}\n", bd.conductor(), bd.delta());
            s
        }
    }))
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Every invariant of the branch, keyed by the names used in the JSON output.
fn invariant_products(bd: &BranchData) -> Result<BTreeMap<&'static str, Value>> {
    let zt: Vec<CycloProduct> = (1..=bd.g())
        .map(|j| invariants::zeta_tilde(bd, j))
        .collect::<Result<_>>()?;
    let duals: Vec<CycloProduct> = (1..=bd.g())
        .map(|j| invariants::dual_at_full_level(bd, j))
        .collect::<Result<_>>()?;
    let mut m = BTreeMap::new();
    m.insert("poincare", to_value(&invariants::poincare(bd)));
    m.insert("orbit", to_value(&invariants::orbit_invariant(bd)));
    m.insert("zeta_tilde", to_value(&zt));
    m.insert("duals", to_value(&duals));
    m.insert("z_tilde", to_value(&invariants::z_tilde(bd)?));
    m.insert("z", to_value(&invariants::z_monodromy(bd)?));
    Ok(m)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn expand_value(v: &Value, order: usize) -> Value {
    match v {
        Value::Array(items) => Value::Array(items.iter().map(|x| expand_value(x, order)).collect()),
        other => {
            let p: CycloProduct = serde_json::from_value(other.clone()).expect("product json");
            to_value(&p.expand(order))
        }
    }
}

pub fn cmd_invariants(gens: &str, expand: Option<usize>, format: Format) -> Result<Outcome> {
    let bd = branch(gens)?;
    if let Some(n) = expand {
        check_order(n)?;
    }
    let products = invariant_products(&bd)?;
    if format == Format::Text {
        let mut s = format!("semigroup <{}>\n", join(bd.beta()));
        let show = |v: &Value| -> String {
            let p: CycloProduct = serde_json::from_value(v.clone()).expect("product json");
            p.to_string()
        };
        s += &format!("P(T)      = {}\n", show(&products["poincare"]));
        s += &format!("Or(T)     = {}\n", show(&products["orbit"]));
        for (j, v) in products["zeta_tilde"]
            .as_array()
            .unwrap()
            .iter()
            .enumerate()
        {
            s += &format!("zeta~_{}   = {}\n", j + 1, show(v));
        }
        for (j, v) in products["duals"].as_array().unwrap().iter().enumerate() {
            s += &format!("dual_{}    = {}\n", j + 1, show(v));
        }
        s += &format!("Z~(T)     = {}\n", show(&products["z_tilde"]));
        s += &format!("Z(T)      = {}\n", show(&products["z"]));
        s += &format!(
            "conductor = {}\ndelta     = {}\n",
            bd.conductor(),
            bd.delta()
        );
        if let Some(n) = expand {
            let p: CycloProduct = serde_json::from_value(products["poincare"].clone()).unwrap();
            s += &format!("P(T)      = {}\n", p.expand(n));
        }
        return Ok(Outcome::ok(s));
    }
    let mut out = serde_json::Map::new();
    out.insert("semigroup".into(), json!(bd.beta()));
    out.insert("conductor".into(), json!(bd.conductor()));
    out.insert("delta".into(), json!(bd.delta()));
    for (k, v) in &products {
        out.insert((*k).into(), v.clone());
    }
    if let Some(n) = expand {
        let series: serde_json::Map<String, Value> = products
            .iter()
            .map(|(k, v)| ((*k).to_string(), expand_value(v, n)))
            .collect();
        out.insert("expansions".into(), Value::Object(series));
    }
    Ok(Outcome::ok(to_canonical_string(&Value::Object(out))))
}

pub fn cmd_verify(gens: &str, which: Which, format: Format) -> Result<Outcome> {
    let bd = branch(gens)?;
    let reports = which
        .checks()
        .into_iter()
        .map(|c| c.run(&bd))
        .collect::<Result<Vec<_>>>()?;
    let all = reports.iter().all(|r| r.holds);
    let stdout = match format {
        Format::Json => to_canonical_string(&reports),
        Format::Text => reports
            .iter()
            .map(|r| {
                format!(
                    "{:<8} {}  {} {} {}\n",
                    r.check.name(),
                    if r.holds { "holds" } else { "FAILS" },
                    r.lhs,
                    if r.holds { "=" } else { "!=" },
                    r.rhs
                )
            })
            .collect(),
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if all { EXIT_OK } else { EXIT_FAILED },
    })
}

pub fn cmd_equations(gens: &str, format: Format) -> Result<Outcome> {
    let bd = branch(gens)?;
    if bd.g() == 0 {
        return Err(Error::SmoothBranch);
    }
    let names = polycurve::variable_names(&bd);
    let monomial: Vec<PolyJson> = polycurve::monomial_equation_exprs(&bd)
        .iter()
        .map(|e| PolyJson::new(e, &names))
        .collect();
    let el = polycurve::deform_and_eliminate(&bd)?;
    let el_names = polycurve::eliminated_names(&bd);
    let eliminated = PolyJson::new(&el.expr, &el_names);
    if eliminated.terms != el.poly {
        return Err(Error::Internal(
            "factored and expanded eliminations disagree".into(),
        ));
    }
    let lambdas: Vec<u32> = (1..bd.g())
        .map(|i| polycurve::lambda_exponent(&bd, i))
        .collect();
    let stdout = match format {
        Format::Json => to_canonical_string(&json!({
            "semigroup": bd.beta(),
            "variables": names,
            "monomial_equations": monomial,
            "lambda_exponents": lambdas,
            "eliminated": eliminated,
            "cleared_s_power": el.cleared_power,
        })),
        Format::Text => {
            let mut s = String::new();
            for (i, m) in monomial.iter().enumerate() {
                s += &format!("f{} = {}\n", i + 1, m.text);
            }
            for (i, k) in lambdas.iter().enumerate() {
                match k {
                    1 => s += &format!("lambda{} = s\n", i + 1),
                    _ => s += &format!("lambda{} = s^{}\n", i + 1, k),
                }
            }
            s += &format!("plane curve: {}\n", eliminated.text);
            s
        }
    };
    Ok(Outcome::ok(stdout))
}

pub fn cmd_sweep(spec: &SweepSpec, parallel: bool, format: Format) -> Result<Outcome> {
    if spec.max_beta0 == 0 || spec.max_gen == 0 || spec.max_g == 0 {
        return Err(Error::Input("sweep bounds must be at least 1".into()));
    }
    let summary = run_sweep(spec, parallel);
    let stdout = match format {
        Format::Json => to_canonical_string(&summary),
        Format::Text => {
            let mut s = format!(
                "{} semigroups (by g: {:?}), {} passed, {} failed\n",
                summary.cases,
                summary.by_g,
                summary.passed,
                summary.failures.len()
            );
            for f in &summary.failures {
                s += &format!("FAIL <{}>: {:?}\n", join(&f.semigroup), f);
            }
            s
        }
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if summary.all_passed() {
            EXIT_OK
        } else {
            EXIT_FAILED
        },
    })
}

fn read_input(arg: &str) -> Result<String> {
    use std::io::Read;
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Input(format!("reading stdin: {e}")))?;
        Ok(s)
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("reading {path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum LefschetzInput {
    Plain(Vec<JsonInt>),
    Lambda {
        lambda: Vec<JsonInt>,
        order: Option<usize>,
    },
    Counts {
        counts: Vec<JsonInt>,
        order: Option<usize>,
    },
    Maps {
        maps: Vec<Vec<Vec<JsonInt>>>,
        order: Option<usize>,
    },
}

pub fn cmd_lefschetz(input: &str) -> Result<Outcome> {
    let parsed: LefschetzInput =
        serde_json::from_str(input).map_err(|e| Error::Input(format!("lefschetz input: {e}")))?;
    let (seq_values, order, maps) = match parsed {
        LefschetzInput::Plain(v) => (Some(v), None, None),
        LefschetzInput::Lambda { lambda, order } => (Some(lambda), order, None),
        LefschetzInput::Counts { counts, order } => (Some(counts), order, None),
        LefschetzInput::Maps { maps, order } => (None, order, Some(maps)),
    };
    let value = if let Some(maps) = maps {
        let order = order.unwrap_or(10);
        check_order(order)?;
        let maps = GradedMaps::new(
            maps.into_iter()
                .map(|m| {
                    m.into_iter()
                        .map(|row| row.into_iter().map(|x| x.0).collect())
                        .collect()
                })
                .collect(),
        )?;
        let z = lefschetz::zeta_from_maps(&maps, order)?;
        let mut v = to_value(&z);
        if order > 0 {
            let seq = LefschetzSequence::new(z.lefschetz.clone())?;
            let lz = lefschetz::zeta_from_lefschetz(&seq, order)?;
            v["chi"] = to_value(&lz.chi);
            v["zeta"] = to_value(&lz.zeta);
        }
        v
    } else {
        let values: Vec<_> = seq_values.unwrap().into_iter().map(|x| x.0).collect();
        let seq = LefschetzSequence::new(values)?;
        let order = order.unwrap_or(seq.len());
        check_order(order)?;
        let lz = lefschetz::zeta_from_lefschetz(&seq, order)?;
        let mut v = to_value(&lz);
        let series: TruncSeries = lefschetz::exp_trace_series(&seq, order);
        v["series"] = to_value(&series);
        v
    };
    Ok(Outcome::ok(to_canonical_string(&value)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gens_parsing() {
        assert_eq!(parse_gens("4,6,13").unwrap(), vec![4, 6, 13]);
        assert_eq!(parse_gens(" 2, 3 ").unwrap(), vec![2, 3]);
        assert!(parse_gens("4,x").is_err());
        assert!(parse_gens("").is_err());
    }

    #[test]
    fn invalid_semigroup_exits_2() {
        let out = cmd_analyze("4,6,9", Format::Json).unwrap_err();
        let o = Outcome::from_error(&out);
        assert_eq!(o.code, EXIT_INVALID);
        assert!(o.stdout.contains("\"OrderViolation\""));
    }

    #[test]
    fn verify_golden() {
        let o = cmd_verify("4,6,13", Which::All, Format::Json).unwrap();
        assert_eq!(o.code, EXIT_OK);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 4);
        assert!(v.as_array().unwrap().iter().all(|r| r["holds"] == true));
    }

    #[test]
    fn equations_golden_text() {
        let o = cmd_equations("4,6,13", Format::Text).unwrap();
        assert_eq!(
            o.stdout,
            "f1 = y^2 - x^3\nf2 = z^2 - x^5*y\nlambda1 = s\nplane curve: (y^2-x^3)^2 - s^2*x^5*y\n"
        );
    }

    #[test]
    fn invariants_json_keys() {
        let o = cmd_invariants("4,6,13", Some(20), Format::Json).unwrap();
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        for k in [
            "poincare",
            "orbit",
            "zeta_tilde",
            "duals",
            "z_tilde",
            "z",
            "conductor",
            "delta",
        ] {
            assert!(v.get(k).is_some(), "missing {k}");
        }
        assert_eq!(v["expansions"]["poincare"]["order"], 20);
        assert_eq!(v["expansions"]["zeta_tilde"].as_array().unwrap().len(), 2);
        assert_eq!(v["z"], v["poincare"]);
    }

    #[test]
    fn lefschetz_inputs() {
        let o = cmd_lefschetz("[1,1,1,1]").unwrap();
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["chi"], json!([1, 0, 0, 0]));
        assert_eq!(v["zeta"]["product"]["factors"], json!([[1, -1]]));

        let o = cmd_lefschetz(r#"{"maps": [[[1]], [[0,-1],[1,-1]]], "order": 6}"#).unwrap();
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["numerator"], json!([1, 1, 1]));
        assert_eq!(v["denominator"], json!([1, -1]));

        let o = cmd_lefschetz(r#"{"counts": [0, 1]}"#).unwrap();
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["zeta"]["integral_exponents"], false);

        assert!(cmd_lefschetz("{\"nope\": 1}").is_err());
    }
}
