//! Command-line front end. [`run`] parses arguments and returns the exit
//! code together with what should go to stdout and stderr, so the binary
//! is a thin wrapper and the dispatch is testable in-process.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::dvr::{matrix_from_json, matrix_to_string, Ring};
use crate::dynamic::{
    dynamic_parabolic, enumerate_bala_carter, is_associated, is_associated_to_chains,
    richardson_dimension, semidirect_dimension_check, weight_decomposition, Convention,
};
use crate::error::{Error, Result};
use crate::jordan::{
    additive_relative_jordan, eigenvalue_interpolant, is_ordinary, purity_report, relative_jordan,
    stratum_indices, TorusElement, ValueGroup,
};
use crate::primes::{check_characterization, classify};
use crate::rootdata::{
    build_root_system, enumerate_closed_subsystems, CartanType, Isogeny, RootDatum,
};
use crate::verify::verify_paper_examples;

const RING_HELP: &str = "Ring grammar: `Zq:p=<prime>,deg=<d>,prec=<N>` for W(F_q)/p^N \
(deg defaults to 1), or `Fq[[x]]:q=<prime power>,prec=<N>` for F_q[[x]]/x^N, where q is \
written as 25, 5^2 or 5. Matrices are JSON arrays of rows; entries are integers or ring \
element records as printed by --json.";

#[derive(Parser, Debug)]
#[command(
    name = "reductive",
    version,
    about = "Root data, relative Jordan decompositions and nilpotent orbits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct DatumArgs {
    /// Cartan type such as G2, A1xB2 or T (a torus of rank 0).
    #[arg(long = "type")]
    cartan_type: String,
    /// sc (simply connected), adj (adjoint) or gl (GL_n, type A only).
    #[arg(long, default_value = "sc")]
    isogeny: String,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[arg(long, help = RING_HELP)]
    ring: String,
    #[arg(long)]
    matrix: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bad, torsion and non-pretty-good primes of a root datum.
    Primes {
        #[command(flatten)]
        datum: DatumArgs,
        /// Also compare pretty goodness of these primes with its characterization.
        #[arg(long = "check", value_delimiter = ',')]
        check: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Closed subsystems of a root system.
    Subsystems {
        #[arg(long = "type")]
        cartan_type: String,
        /// List one subsystem per Weyl orbit.
        #[arg(long)]
        up_to_conjugacy: bool,
        #[arg(long)]
        json: bool,
    },
    /// Relative Jordan decomposition of a matrix over a truncated DVR.
    Jordan {
        #[command(flatten)]
        input: MatrixArgs,
        /// Additive decomposition instead of the multiplicative one.
        #[arg(long)]
        additive: bool,
        #[arg(long)]
        json: bool,
    },
    /// Centralizer dimensions on the special and generic fibers.
    Purity {
        #[command(flatten)]
        input: MatrixArgs,
        #[arg(long)]
        json: bool,
    },
    /// Whether a torus element has connected centralizer.
    Ordinary {
        #[command(flatten)]
        datum: DatumArgs,
        /// Values of the basis characters of X, as a JSON array of
        /// arrays in Z^a x Z/m (the Z/m entry last).
        #[arg(long, conflicts_with = "cocharacter")]
        values: Option<String>,
        /// Rank a of the free part of the value group.
        #[arg(long, default_value_t = 0)]
        free_rank: usize,
        /// Order m of the finite part of the value group (0 for none).
        #[arg(long, default_value_t = 0)]
        torsion: u64,
        /// Take the element lambda(zeta) for this cocharacter and a
        /// primitive root of unity of order --torsion.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        cocharacter: Option<Vec<i64>>,
        #[arg(long)]
        json: bool,
    },
    /// Weight spaces and the parabolic of a cocharacter.
    Dynamic {
        #[command(flatten)]
        datum: DatumArgs,
        /// Cocharacter coordinates in the basis of Y.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        cocharacter: Vec<i64>,
        /// With --isogeny gl: test the cocharacter against a nilpotent of
        /// this Jordan type.
        #[arg(long, value_delimiter = ',')]
        partition: Option<Vec<usize>>,
        /// With --isogeny gl: test against the nilpotent with these Jordan
        /// chains (JSON array of coordinate lists, 0-based).
        #[arg(long)]
        chains: Option<String>,
        /// Prime for the centralizer dimension cross-check.
        #[arg(long, default_value_t = 7)]
        prime: u64,
        #[arg(long)]
        json: bool,
    },
    /// Nilpotent orbits through Levi subsystems and distinguished parabolics.
    BalaCarter {
        #[arg(long = "type")]
        cartan_type: String,
        /// carter (default) or literal.
        #[arg(long, default_value = "carter")]
        distinguished: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the regression suite over the worked examples.
    VerifyPaper {
        /// carter (default) or literal.
        #[arg(long, default_value = "carter")]
        distinguished: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Output of a command: the JSON report and its plain-text rendering, plus
/// whether the command reports a failure of its own checks.
struct Report {
    json: Value,
    text: String,
    failed: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            failed: false,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let json = wants_json(&cli.command);
    match dispatch(cli.command) {
        Ok(report) => {
            let stdout = if json {
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report.json).expect("serializable")
                )
            } else {
                report.text
            };
            Outcome {
                code: i32::from(report.failed),
                stdout,
                stderr: if report.failed {
                    "error[VerificationFailed]: some checks failed\n".into()
                } else {
                    String::new()
                },
            }
        }
        Err(e) => {
            let stdout = if json {
                format!("{}\n", json!({"error": e.kind(), "message": e.to_string()}))
            } else {
                String::new()
            };
            Outcome {
                code: 1,
                stdout,
                stderr: format!("error[{}]: {e}\n", e.kind()),
            }
        }
    }
}

fn wants_json(c: &Command) -> bool {
    match c {
        Command::Primes { json, .. }
        | Command::Subsystems { json, .. }
        | Command::Jordan { json, .. }
        | Command::Purity { json, .. }
        | Command::Ordinary { json, .. }
        | Command::Dynamic { json, .. }
        | Command::BalaCarter { json, .. }
        | Command::VerifyPaper { json, .. } => *json,
    }
}

fn parse_datum(args: &DatumArgs) -> Result<RootDatum> {
    let ct: CartanType = args.cartan_type.parse()?;
    match args.isogeny.as_str() {
        "sc" | "simply-connected" => {
            RootDatum::from_type(&args.cartan_type, Isogeny::SimplyConnected)
        }
        "adj" | "adjoint" => RootDatum::from_type(&args.cartan_type, Isogeny::Adjoint),
        "gl" => match ct.components() {
            [] => RootDatum::gl(1),
            [(crate::rootdata::Family::A, r)] => RootDatum::gl(r + 1),
            _ => Err(Error::UnsupportedIsogeny {
                label: "gl".into(),
                cartan_type: ct.to_string(),
            }),
        },
        other => Err(Error::InvalidInput(format!(
            "unknown isogeny {other:?}; use sc, adj or gl"
        ))),
    }
}

fn parse_json(s: &str, what: &str) -> Result<Value> {
    serde_json::from_str(s)
        .map_err(|e| Error::InvalidInput(format!("{what} is not valid JSON: {e}")))
}

fn parse_matrix(input: &MatrixArgs) -> Result<(Ring, Vec<Vec<Vec<u64>>>)> {
    let ring: Ring = input.ring.parse()?;
    let m = matrix_from_json(&ring, &parse_json(&input.matrix, "matrix")?)?;
    Ok((ring, m))
}

fn set_text(name: &str, set: &std::collections::BTreeSet<u64>) -> String {
    let items: Vec<String> = set.iter().map(u64::to_string).collect();
    format!("{name}: {{{}}}\n", items.join(", "))
}

fn dispatch(command: Command) -> Result<Report> {
    match command {
        Command::Primes { datum, check, .. } => {
            let rd = parse_datum(&datum)?;
            let c = classify(&rd)?;
            let checks = check
                .iter()
                .map(|&p| check_characterization(&rd, p))
                .collect::<Result<Vec<_>>>()?;
            let mut text = set_text("bad", &c.bad)
                + &set_text("torsion", &c.torsion)
                + &set_text("pretty_good_excluded", &c.pretty_good_excluded);
            for ch in &checks {
                text += &format!(
                    "p = {}: pretty good {}, good {}, divides pi1 {}, center non-smooth {}, equivalence {}\n",
                    ch.p, ch.is_pretty_good, ch.is_good, ch.divides_pi1, ch.center_nonsmooth, ch.equivalence_holds
                );
            }
            let mut j = json!({
                "type": datum.cartan_type,
                "isogeny": rd.isogeny().name(),
                "bad": c.bad,
                "torsion": c.torsion,
                "pretty_good_excluded": c.pretty_good_excluded,
            });
            if !checks.is_empty() {
                j["characterization"] = json!(checks);
            }
            Ok(Report::ok(j, text))
        }
        Command::Subsystems {
            cartan_type,
            up_to_conjugacy,
            ..
        } => {
            let rs = build_root_system(&cartan_type.parse()?)?;
            let list = enumerate_closed_subsystems(&rs, up_to_conjugacy)?;
            let mut text = String::new();
            let items: Vec<Value> = list
                .iter()
                .map(|s| {
                    let shape = rs.subsystem_shape(s.set());
                    text += &format!("{} (size {}, rank {})\n", shape.label(), shape.size, shape.rank);
                    json!({
                        "label": shape.label(),
                        "size": shape.size,
                        "rank": shape.rank,
                        "roots": s.member_roots().iter().map(|&a| rs.roots()[a].clone()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            text += &format!("{} subsystems\n", list.len());
            Ok(Report::ok(
                json!({"type": cartan_type, "up_to_conjugacy": up_to_conjugacy, "subsystems": items}),
                text,
            ))
        }
        Command::Jordan {
            input, additive, ..
        } => {
            let (ring, g) = parse_matrix(&input)?;
            if additive {
                let pair = additive_relative_jordan(&ring, &g)?;
                let j = pair.to_json(&ring);
                let text = format!(
                    "x_ss = {}\nx_n = {}\n",
                    matrix_to_string(&ring, &pair.x_ss),
                    matrix_to_string(&ring, &pair.x_n)
                );
                Ok(Report::ok(j, text))
            } else {
                let pair = relative_jordan(&ring, &g)?;
                let mut j = pair.to_json(&ring);
                j["eigenvalue_interpolant"] = match eigenvalue_interpolant(&ring, &g, &pair) {
                    Some(q) => Value::Array(
                        q.iter()
                            .map(|c| crate::dvr::element_to_json(&ring, c))
                            .collect(),
                    ),
                    None => Value::Null,
                };
                let text = format!(
                    "t = {}\nu = {}\n",
                    matrix_to_string(&ring, &pair.t),
                    matrix_to_string(&ring, &pair.u)
                );
                Ok(Report::ok(j, text))
            }
        }
        Command::Purity { input, .. } => {
            let (ring, g) = parse_matrix(&input)?;
            let report = purity_report(&ring, &g)?;
            let strata = stratum_indices(&ring, &g)?;
            let mut j = report.to_json(&ring);
            j["stratum_indices"] = json!(strata);
            let text = format!(
                "dims: special {}, generic {} (pure {})\nss dims: special {}, generic {} (pure {})\nstrongly pure: {}\n",
                report.dims.special,
                report.dims.generic,
                report.pure,
                report.ss_dims.special,
                report.ss_dims.generic,
                report.pure_ss_part,
                report.strongly_pure
            );
            Ok(Report::ok(j, text))
        }
        Command::Ordinary {
            datum,
            values,
            free_rank,
            torsion,
            cocharacter,
            ..
        } => {
            let rd = parse_datum(&datum)?;
            let t = match (values, cocharacter) {
                (Some(v), _) => {
                    let values: Vec<Vec<i64>> = serde_json::from_value(parse_json(&v, "values")?)
                        .map_err(|e| {
                        Error::InvalidInput(format!("values must be integer arrays: {e}"))
                    })?;
                    TorusElement::new(&rd, ValueGroup { free_rank, torsion }, values)?
                }
                (None, Some(lambda)) => {
                    if torsion == 0 {
                        return Err(Error::InvalidInput(
                            "--cocharacter needs --torsion m > 0".into(),
                        ));
                    }
                    TorusElement::from_cocharacter_at_root_of_unity(&rd, &lambda, torsion)?
                }
                (None, None) => TorusElement::trivial(&rd),
            };
            let r = is_ordinary(&t)?;
            let text = format!(
                "ordinary: {}\ncomponent index: {}\nkernel roots: {}\n",
                r.ordinary,
                r.component_index,
                r.kernel_roots.len()
            );
            Ok(Report::ok(json!(r), text))
        }
        Command::Dynamic {
            datum,
            cocharacter,
            partition,
            chains,
            prime,
            ..
        } => {
            let rd = parse_datum(&datum)?;
            let wd = weight_decomposition(&rd, &cocharacter)?;
            let parabolic = dynamic_parabolic(&rd, &cocharacter)?;
            let rich = richardson_dimension(&parabolic);
            let mut text = String::new();
            for (k, s) in &wd.spaces {
                text += &format!("weight {k}: dim {}\n", s.dim);
            }
            text += &format!(
                "parabolic: |P| = {}, |L| = {}, |U| = {}; Richardson orbit dim {}\n",
                parabolic.phi_p.len(),
                parabolic.phi_l.len(),
                parabolic.phi_u.len(),
                rich.orbit_dim
            );
            let dims: Value = wd
                .spaces
                .iter()
                .map(|(k, s)| (k.to_string(), json!(s.dim)))
                .collect();
            let mut j = json!({
                "weights": dims,
                "total_dim": wd.total_dim(),
                "parabolic": parabolic,
                "richardson": rich,
            });
            if partition.is_some() || chains.is_some() {
                if !matches!(rd.isogeny(), Isogeny::GlStyle) {
                    return Err(Error::InvalidInput(
                        "--partition and --chains need --isogeny gl".into(),
                    ));
                }
                let report = match (&chains, &partition) {
                    (Some(c), _) => {
                        let chains: Vec<Vec<usize>> =
                            serde_json::from_value(parse_json(c, "chains")?).map_err(|e| {
                                Error::InvalidInput(format!("chains must be index arrays: {e}"))
                            })?;
                        is_associated_to_chains(&cocharacter, &chains)?
                    }
                    (None, Some(p)) => is_associated(&cocharacter, p)?,
                    (None, None) => unreachable!(),
                };
                text += &format!(
                    "weight 2: {}, derived Levi: {}, distinguished in Levi: {}, associated: {}\n",
                    report.weight2,
                    report.derived_levi,
                    report.distinguished_in_levi,
                    report.associated
                );
                j["associated"] = json!(report);
                if let Some(p) = &partition {
                    let sd = semidirect_dimension_check(p, prime)?;
                    text += &format!(
                        "dim Z(X) = {} = {} + {} (identity holds: {})\n",
                        sd.dim_z, sd.dim_l_x, sd.dim_r_x, sd.identity_holds
                    );
                    j["semidirect"] = json!(sd);
                }
            }
            Ok(Report::ok(j, text))
        }
        Command::BalaCarter {
            cartan_type,
            distinguished,
            ..
        } => {
            let convention: Convention = distinguished.parse()?;
            let rs = build_root_system(&cartan_type.parse()?)?;
            let data = enumerate_bala_carter(&rs, convention)?;
            let mut text = String::new();
            for d in &data {
                text += &format!(
                    "{:<12} {:<12} diagram {:?} orbit dim {}\n",
                    d.levi_label, d.parabolic_label, d.weighted_diagram, d.orbit_dim
                );
            }
            text += &format!("{} orbits\n", data.len());
            Ok(Report::ok(
                Value::Array(data.iter().map(|d| d.to_json()).collect()),
                text,
            ))
        }
        Command::VerifyPaper { distinguished, .. } => {
            let convention: Convention = distinguished.parse()?;
            let reports = verify_paper_examples(convention)?;
            let mut text = String::new();
            for r in &reports {
                for c in &r.checks {
                    text += &format!(
                        "[{}] {}: {}\n",
                        if c.pass { "pass" } else { "FAIL" },
                        r.id,
                        c.description
                    );
                }
            }
            let failed = reports.iter().any(|r| !r.passed());
            Ok(Report {
                json: json!(reports),
                text,
                failed,
            })
        }
    }
}
