//! Argument surface and command handlers. Every handler writes data to the
//! supplied writer and signals problems through `CliError`, keeping the whole
//! surface drivable from tests without spawning processes.

use crate::error::{CliError, Result};
use crate::output::{member_labels, members_of, pairs_of, table_of, Pair};
use crate::workspace::{parse_workspace, Workspace};
use clap::{Parser, Subcommand, ValueEnum};
use lgroup_core::conjugacy::{
    conjugate_by_point, conjugate_by_point_in, conjugate_by_subset, generated, is_maximal,
    pointwise_compare,
};
use lgroup_core::normality::{
    first_nonnormal_point, normalizer_conjugacy, normalizer_setproduct,
};
use lgroup_core::verify::{
    gen_instance, run_all, run_suite, Bounds, Instance, LatticeKind, Report, SuiteId, Verdict,
};
use lgroup_core::lsubset::LSubset;
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "lgroup",
    version,
    about = "Exact computations with lattice-valued subgroups of finite groups"
)]
pub struct Cli {
    /// Workspace document to operate on (JSON).
    #[arg(long = "in", global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Setproduct,
    Conjugacy,
    Both,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Any,
    Chain,
}

#[derive(Subcommand)]
pub enum Command {
    /// Parse the workspace and run every flagged assertion.
    Validate,
    /// Print an L-subset's value table, or its values at selected elements.
    Eval {
        #[arg(long)]
        subject: String,
        /// Restrict output to these elements, in the given order.
        #[arg(long = "at", value_name = "ELT")]
        at: Vec<String>,
    },
    /// Print the level subset of an L-subset at a threshold value.
    Level {
        #[arg(long)]
        subject: String,
        #[arg(long)]
        value: String,
    },
    /// Print the set product of two L-subsets.
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Conjugate an L-subset by an L-point, or by a whole L-subset.
    Conjugate {
        #[arg(long)]
        subject: String,
        /// A point name from the workspace, or a VALUE@ELT literal.
        #[arg(long, conflicts_with = "by_subset")]
        point: Option<String>,
        /// Conjugate by this L-subset instead of a single point.
        #[arg(long = "by-subset")]
        by_subset: Option<String>,
        /// Check the point and subject against this ambient L-subgroup.
        #[arg(long)]
        ambient: Option<String>,
    },
    /// Print the least L-subgroup of the ambient containing the subject.
    Generated {
        #[arg(long)]
        subject: String,
        #[arg(long, default_value = "mu")]
        ambient: String,
    },
    /// Decide whether the subject is a normal L-subgroup of the ambient.
    IsNormal {
        #[arg(long)]
        subject: String,
        #[arg(long, default_value = "mu")]
        ambient: String,
    },
    /// Compute the normalizer of the subject within the ambient.
    Normalizer {
        #[arg(long)]
        subject: String,
        #[arg(long, default_value = "mu")]
        ambient: String,
        /// Construction to use; `both` also checks that they agree.
        #[arg(long, value_enum, default_value_t = Method::Setproduct)]
        method: Method,
    },
    /// Decide whether the subject is maximal among proper L-subgroups.
    IsMaximal {
        #[arg(long)]
        subject: String,
        #[arg(long, default_value = "mu")]
        ambient: String,
        /// Abort if the candidate search would exceed this many subsets.
        #[arg(long)]
        cap: Option<u128>,
    },
    /// Run verification suites over seeded instances (plus the workspace,
    /// when one is supplied via --in).
    Verify {
        /// A suite identifier, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// How many seeded instances to generate.
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        #[arg(long = "seed-base", default_value_t = 0)]
        seed_base: u64,
        #[arg(long = "max-group-order", default_value_t = 16)]
        max_group_order: usize,
        #[arg(long = "max-lattice-size", default_value_t = 8)]
        max_lattice_size: usize,
        #[arg(long = "lattice-kind", value_enum, default_value_t = KindArg::Any)]
        lattice_kind: KindArg,
    },
}

/// Parse `args` and run the command, writing data to `out` and diagnostics
/// to `err`. Returns the process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            }
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        // A consumer that stops reading (e.g. `lgroup ... | head`) is not an
        // error worth reporting; end quietly like other pipeline citizens.
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load(input: &Option<PathBuf>) -> Result<Workspace> {
    let path = input
        .as_ref()
        .ok_or_else(|| CliError::Usage("this command needs a workspace: --in <FILE>".into()))?;
    let text = std::fs::read_to_string(path)?;
    parse_workspace(&text)
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string(value)?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn emit_subset(out: &mut dyn Write, format: Format, s: &LSubset) -> Result<()> {
    match format {
        Format::Table => writeln!(out, "{}", table_of(s))?,
        Format::Json => emit_json(out, &pairs_of(s))?,
    }
    Ok(())
}

#[derive(Serialize)]
struct BoolOut {
    result: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

fn emit_bool(out: &mut dyn Write, format: Format, result: bool, witness: Option<String>) -> Result<()> {
    match format {
        Format::Table => {
            writeln!(out, "{result}")?;
            if let Some(w) = &witness {
                writeln!(out, "witness: {w}")?;
            }
        }
        Format::Json => emit_json(out, &BoolOut { result, witness })?,
    }
    Ok(())
}

#[derive(Serialize)]
struct ValidateOut {
    group_order: usize,
    lattice_size: usize,
    sets: Vec<String>,
    lsubsets: Vec<String>,
    points: Vec<String>,
    hom: bool,
    checks: Vec<crate::workspace::FlagCheck>,
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Validate => {
            let ws = load(&cli.input)?;
            let checks = ws.run_flag_checks();
            let failed = checks.iter().filter(|c| !c.ok).count();
            match cli.format {
                Format::Table => {
                    writeln!(out, "group order: {}", ws.group.order())?;
                    writeln!(out, "lattice size: {}", ws.lattice.size())?;
                    let names = |keys: Vec<&String>| {
                        if keys.is_empty() {
                            "(none)".to_string()
                        } else {
                            keys.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", ")
                        }
                    };
                    writeln!(out, "sets: {}", names(ws.sets.keys().collect()))?;
                    writeln!(out, "lsubsets: {}", names(ws.lsubsets.keys().collect()))?;
                    writeln!(out, "points: {}", names(ws.points.keys().collect()))?;
                    writeln!(out, "hom: {}", if ws.hom.is_some() { "present" } else { "none" })?;
                    for c in &checks {
                        let verdict = if c.ok { "pass" } else { "FAIL" };
                        let detail = c
                            .detail
                            .as_ref()
                            .map(|d| format!(" ({d})"))
                            .unwrap_or_default();
                        writeln!(out, "{}({}): {verdict}{detail}", c.check, c.names.join(", "))?;
                    }
                }
                Format::Json => emit_json(
                    out,
                    &ValidateOut {
                        group_order: ws.group.order(),
                        lattice_size: ws.lattice.size(),
                        sets: ws.sets.keys().cloned().collect(),
                        lsubsets: ws.lsubsets.keys().cloned().collect(),
                        points: ws.points.keys().cloned().collect(),
                        hom: ws.hom.is_some(),
                        checks,
                    },
                )?,
            }
            if failed > 0 {
                return Err(CliError::Check(format!("{failed} flagged check(s) failed")));
            }
            Ok(())
        }

        Command::Eval { subject, at } => {
            let ws = load(&cli.input)?;
            let s = ws.subset(subject)?;
            if at.is_empty() {
                return emit_subset(out, cli.format, &s);
            }
            let mut pairs = Vec::new();
            for label in at {
                let x = ws
                    .group
                    .resolve(label)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                pairs.push(Pair {
                    element: ws.group.label(x).to_string(),
                    value: ws.lattice.label(s.eval(x)).to_string(),
                });
            }
            match cli.format {
                Format::Table => {
                    for p in &pairs {
                        writeln!(out, "{} : {}", p.element, p.value)?;
                    }
                }
                Format::Json => emit_json(out, &pairs)?,
            }
            Ok(())
        }

        Command::Level { subject, value } => {
            let ws = load(&cli.input)?;
            let s = ws.subset(subject)?;
            let a = ws
                .lattice
                .elt(value)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let level = s.level_set(a);
            match cli.format {
                Format::Table => writeln!(out, "{}", members_of(&ws.group, &level))?,
                Format::Json => emit_json(out, &member_labels(&ws.group, &level))?,
            }
            Ok(())
        }

        Command::Product { left, right } => {
            let ws = load(&cli.input)?;
            let product = ws.subset(left)?.set_product(&ws.subset(right)?)?;
            emit_subset(out, cli.format, &product)
        }

        Command::Conjugate {
            subject,
            point,
            by_subset,
            ambient,
        } => {
            let ws = load(&cli.input)?;
            let s = ws.subset(subject)?;
            let result = match (point, by_subset) {
                (Some(p), None) => {
                    let p = ws.point(p)?;
                    match ambient {
                        Some(m) => conjugate_by_point_in(&s, &p, &ws.subset(m)?)?,
                        None => conjugate_by_point(&s, &p),
                    }
                }
                (None, Some(theta)) => conjugate_by_subset(&ws.subset(theta)?, &s)?,
                _ => {
                    return Err(CliError::Usage(
                        "provide exactly one of --point / --by-subset".into(),
                    ))
                }
            };
            emit_subset(out, cli.format, &result)
        }

        Command::Generated { subject, ambient } => {
            let ws = load(&cli.input)?;
            let result = generated(&ws.subset(subject)?, &ws.subset(ambient)?)?;
            emit_subset(out, cli.format, &result)
        }

        Command::IsNormal { subject, ambient } => {
            let ws = load(&cli.input)?;
            let witness = first_nonnormal_point(&ws.subset(subject)?, &ws.subset(ambient)?)?;
            let witness = witness.map(|p| {
                format!("{}@{}", ws.lattice.label(p.value), ws.group.label(p.at))
            });
            emit_bool(out, cli.format, witness.is_none(), witness)
        }

        Command::Normalizer {
            subject,
            ambient,
            method,
        } => {
            let ws = load(&cli.input)?;
            let s = ws.subset(subject)?;
            let m = ws.subset(ambient)?;
            let result = match method {
                Method::Setproduct => normalizer_setproduct(&s, &m)?,
                Method::Conjugacy => normalizer_conjugacy(&s, &m)?,
                Method::Both => {
                    let sp = normalizer_setproduct(&s, &m)?;
                    let cj = normalizer_conjugacy(&s, &m)?;
                    let check = pointwise_compare(&sp, &cj)?;
                    if !check.equal {
                        let (x, a, b) = check.witness.expect("unequal tables have a witness");
                        return Err(CliError::Check(format!(
                            "normalizer constructions disagree at {}: {} vs {}",
                            ws.group.label(x),
                            ws.lattice.label(a),
                            ws.lattice.label(b)
                        )));
                    }
                    sp
                }
            };
            emit_subset(out, cli.format, &result)
        }

        Command::IsMaximal {
            subject,
            ambient,
            cap,
        } => {
            let ws = load(&cli.input)?;
            let result = is_maximal(&ws.subset(subject)?, &ws.subset(ambient)?, *cap)?;
            emit_bool(out, cli.format, result, None)
        }

        Command::Verify {
            suite,
            seeds,
            seed_base,
            max_group_order,
            max_lattice_size,
            lattice_kind,
        } => {
            let mut instances: Vec<Instance> = Vec::new();
            if let Some(path) = &cli.input {
                let ws = load(&cli.input)?;
                let label = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string());
                instances.push(ws.instance(&label)?);
            }
            let bounds = Bounds {
                max_group_order: *max_group_order,
                max_lattice_size: *max_lattice_size,
                lattice_kind: match lattice_kind {
                    KindArg::Any => LatticeKind::Any,
                    KindArg::Chain => LatticeKind::Chain,
                },
            };
            for i in 0..*seeds {
                instances.push(gen_instance(seed_base + i, &bounds)?);
            }
            let reports = if suite == "all" {
                run_all(&instances)
            } else {
                let id = SuiteId::from_str(suite).map_err(|e| CliError::Usage(e.to_string()))?;
                run_suite(id, &instances)
            };
            emit_reports(out, cli.format, &reports)?;
            let failed = reports.iter().filter(|r| r.verdict.is_fail()).count();
            if failed > 0 {
                return Err(CliError::Check(format!("{failed} suite check(s) failed")));
            }
            Ok(())
        }
    }
}

fn emit_reports(out: &mut dyn Write, format: Format, reports: &[Report]) -> Result<()> {
    match format {
        Format::Json => emit_json(out, &reports)?,
        Format::Table => {
            let (mut passed, mut skipped, mut failed) = (0, 0, 0);
            for r in reports {
                let verdict = match &r.verdict {
                    Verdict::Pass => {
                        passed += 1;
                        "pass".to_string()
                    }
                    Verdict::Skip { reason } => {
                        skipped += 1;
                        format!("skip: {reason}")
                    }
                    Verdict::Fail { witness } => {
                        failed += 1;
                        format!("FAIL: {witness}")
                    }
                };
                writeln!(out, "{} | {} | {verdict}", r.suite, r.instance)?;
            }
            writeln!(
                out,
                "checks: {} total, {passed} passed, {skipped} skipped, {failed} failed",
                reports.len()
            )?;
        }
    }
    Ok(())
}
