//! Command-line front end: reads instance/allocation/certificate files,
//! dispatches to the game engine, and prints key-value reports with exact
//! rational strings. Exit codes: 0 command ran, 2 usage or format error,
//! 3 precondition violation.

mod files;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use files::{
    allocation_from_file, allocation_to_file, certificate_from_file, certificate_to_file,
    graph_from_file, instance_from_file, instance_to_file, read_json, write_json,
    AllocationFile, CertificateFile, GraphFile, InstanceFile,
};
use pcog_core::game::{Coalition, GameInstance};
use pcog_core::reductions::{
    gen_ds_membership_pdsg_ce, gen_sat_unsat_pdsg_cv, gen_vc_membership_pvcg_ce, parse_cnf,
    worked_example, reduce_pvcg_to_pdsg, ExampleId, GeneratedInstance,
};
use pcog_core::stability::{
    bird_breakdown, check_emptiness_certificate, core_existence_cutting_plane,
    core_existence_full_lp, ir_allocation, is_pre_imputation, verify_core, Allocation,
    ExistenceReport, ExistenceVerdict, Verdict,
};
use pcog_core::{graph::VertexId, Error};
use report::{coalition_str, witness_str, Report};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    /// Bad usage or malformed input files; exit code 2.
    Usage(String),
    /// Structurally fine input that violates an operation's preconditions;
    /// exit code 3.
    Precondition(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => CliError::Usage(e.to_string()),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "pcog",
    version,
    about = "Partitioned combinatorial optimization games: coalition values, core stability, allocations, and instance generators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Explicit LP with one constraint per coalition.
    Full,
    /// Constraint generation with blocking-coalition separation.
    Cut,
}

#[derive(Subcommand)]
enum Command {
    /// Value (or cost) of a coalition, with the optimum witness.
    Value {
        instance: PathBuf,
        /// Comma-separated agent ids; defaults to the grand coalition.
        #[arg(long)]
        coalition: Option<String>,
    },
    /// Core-stability verification of an allocation.
    Verify {
        instance: PathBuf,
        allocation: PathBuf,
    },
    /// Core existence: allocation or emptiness certificate.
    Core {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Full)]
        method: MethodArg,
        /// Write the emptiness certificate (if any) to this file.
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// The proportional individually-rational allocation.
    Ir { instance: PathBuf },
    /// Bird's allocation for spanning-tree games.
    Bird { instance: PathBuf },
    /// Fractional dominating-set value versus the integer optimum.
    FractionalDs { instance: PathBuf },
    /// Instance generators with brute-force-verified expected answers.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Instance-to-instance reductions.
    Reduce {
        #[command(subcommand)]
        what: ReduceCommand,
    },
    /// Revalidate an emptiness certificate against its instance.
    CheckCert {
        instance: PathBuf,
        certificate: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Single-agent dominating-set verification gadget from two 3-CNF files.
    SatUnsat {
        phi1: PathBuf,
        phi2: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Four-agent vertex-cover membership gadget.
    VcMember {
        graph: PathBuf,
        vertex: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Four-agent dominating-set membership gadget.
    DsMember {
        graph: PathBuf,
        vertex: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One of the worked examples: 1g1, 1g2, 2g1, 2g2, 3, 4g1, 4g2.
    Example {
        id: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// Agent-preserving vertex-cover to dominating-set reduction.
    VcToDs {
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn load_instance(path: &Path) -> Result<GameInstance, CliError> {
    let file: InstanceFile = read_json(path)?;
    instance_from_file(&file)
}

fn parse_coalition(inst: &GameInstance, spec: Option<&str>) -> Result<Coalition, CliError> {
    match spec {
        None => Ok(inst.grand_coalition()),
        Some(s) => {
            let ids: Vec<&str> = s
                .split(',')
                .map(|t| t.trim())
                .filter(|t| !t.is_empty())
                .collect();
            Coalition::from_agent_ids(&inst.ownership, ids).map_err(CliError::from)
        }
    }
}

fn push_allocation(report: &mut Report, a: &Allocation) {
    for (agent, v) in a.values() {
        report.push_rational(format!("alloc.{agent}"), v);
    }
}

fn push_existence(
    report: &mut Report,
    inst: &GameInstance,
    result: &ExistenceReport,
) -> Result<(), CliError> {
    report.push(
        "method",
        match result.method {
            pcog_core::stability::ExistenceMethod::FullLp => "full",
            pcog_core::stability::ExistenceMethod::CuttingPlane => "cut",
        },
    );
    report.push(
        "verdict",
        match result.verdict {
            ExistenceVerdict::CoreNonempty => "CORE_NONEMPTY",
            ExistenceVerdict::CoreEmpty => "CORE_EMPTY",
        },
    );
    report.push("oracle_calls", result.oracle_calls);
    report.push_rational("grand_value", &inst.grand_value()?);
    if let Some(a) = &result.allocation {
        push_allocation(report, a);
    }
    if let Some(cert) = &result.certificate {
        report.push_rational("cert.grand_value", &cert.grand_value);
        report.push_rational("cert.equality_multiplier", &cert.equality_multiplier);
        for (i, ((s, value), m)) in cert
            .coalitions
            .iter()
            .zip(&cert.coalition_multipliers)
            .enumerate()
        {
            report.push(
                format!("cert.coalition.{i}"),
                format!(
                    "agents={} value={} multiplier={}",
                    coalition_str(*s, &inst.ownership),
                    pcog_core::ratio::format_rational(value),
                    pcog_core::ratio::format_rational(m)
                ),
            );
        }
        for (agent, t) in inst.ownership.agents.iter().zip(&cert.nonneg_multipliers) {
            report.push_rational(format!("cert.nonneg.{agent}"), t);
        }
        report.push("cert.selfcheck", check_emptiness_certificate(inst, cert));
    }
    Ok(())
}

fn emit_generated(
    mut report: Report,
    gen: &GeneratedInstance,
    out: Option<&Path>,
) -> Result<(), CliError> {
    report.push("provenance", &gen.provenance);
    report.push("expected", gen.expected);
    if let Some(a) = &gen.allocation {
        push_allocation(&mut report, a);
    }
    emit_instance(report, &gen.instance, out)
}

fn emit_instance(
    mut report: Report,
    inst: &GameInstance,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let file = instance_to_file(inst);
    match out {
        Some(path) => {
            write_json(path, &file)?;
            report.push("out", path.display());
        }
        None => {
            report.push("instance", serde_json::to_string(&file).expect("serializable"));
        }
    }
    report.print();
    Ok(())
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Value { instance, coalition } => {
            let inst = load_instance(&instance)?;
            let s = parse_coalition(&inst, coalition.as_deref())?;
            let mut report = Report::new("value");
            report.push("goal", inst.goal);
            report.push("coalition", coalition_str(s, &inst.ownership));
            report.push_rational("value", &inst.coalition_value(s)?);
            if !s.is_empty() {
                report.push("witness", witness_str(&inst.coalition_optimum(s)?.witness));
            }
            report.print();
            Ok(())
        }
        Command::Verify { instance, allocation } => {
            let inst = load_instance(&instance)?;
            let file: AllocationFile = read_json(&allocation)?;
            let alloc = allocation_from_file(&file, &inst)?;
            let result = verify_core(&inst, &alloc)?;
            let mut report = Report::new("verify");
            report.push("goal", inst.goal);
            report.push("agents", inst.ownership.agents.join(","));
            report.push_rational("grand_value", &result.grand_value);
            report.push_rational("allocation_total", &alloc.total());
            report.push(
                "verdict",
                match result.verdict {
                    Verdict::CoreStable => "CORE_STABLE",
                    Verdict::NotPreImputation => "NOT_PRE_IMPUTATION",
                    Verdict::Blocked => "BLOCKED",
                },
            );
            if let Some(evidence) = &result.blocking {
                report.push(
                    "blocking_coalition",
                    coalition_str(evidence.coalition, &inst.ownership),
                );
                report.push_rational("blocking_value", &evidence.value);
                report.push_rational(
                    "blocking_allocation_sum",
                    &alloc.sum_over(&inst.ownership, evidence.coalition),
                );
                report.push("blocking_witness", witness_str(&evidence.witness));
            }
            report.print();
            Ok(())
        }
        Command::Core {
            instance,
            method,
            cert_out,
        } => {
            let inst = load_instance(&instance)?;
            let result = match method {
                MethodArg::Full => core_existence_full_lp(&inst)?,
                MethodArg::Cut => core_existence_cutting_plane(&inst)?,
            };
            let mut report = Report::new("core");
            push_existence(&mut report, &inst, &result)?;
            if let Some(path) = cert_out {
                match &result.certificate {
                    Some(cert) => {
                        write_json(&path, &certificate_to_file(cert, &inst))?;
                        report.push("cert_out", path.display());
                    }
                    None => report.push("cert_out", "none"),
                }
            }
            report.print();
            Ok(())
        }
        Command::Ir { instance } => {
            let inst = load_instance(&instance)?;
            let alloc = ir_allocation(&inst)?;
            let mut report = Report::new("ir");
            report.push("goal", inst.goal);
            push_allocation(&mut report, &alloc);
            for (i, agent) in inst.ownership.agents.iter().enumerate() {
                report.push_rational(
                    format!("standalone.{agent}"),
                    &inst.coalition_value(Coalition::singleton(i))?,
                );
            }
            report.push("pre_imputation", is_pre_imputation(&inst, &alloc)?);
            report.print();
            Ok(())
        }
        Command::Bird { instance } => {
            let inst = load_instance(&instance)?;
            let breakdown = bird_breakdown(&inst)?;
            let mut report = Report::new("bird");
            report.push(
                "tree",
                breakdown
                    .tree
                    .iter()
                    .map(|k| k.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
            for (v, w) in &breakdown.payments {
                report.push_rational(format!("payment.{v}"), w);
            }
            push_allocation(&mut report, &breakdown.allocation);
            report.print();
            Ok(())
        }
        Command::FractionalDs { instance } => {
            let inst = load_instance(&instance)?;
            let r = pcog_core::characterize::fractional_ds_value(&inst.graph)?;
            let mut report = Report::new("fractional-ds");
            report.push_rational("fractional_value", &r.fractional_value);
            report.push_rational("integer_value", &r.integer_value);
            report.push("equal", r.equal);
            for (v, y) in inst.graph.vertices().iter().zip(&r.lp_point) {
                report.push_rational(format!("y.{v}"), y);
            }
            report.print();
            Ok(())
        }
        Command::Gen { what } => match what {
            GenCommand::SatUnsat { phi1, phi2, out } => {
                let f1 = parse_cnf(&read_text(&phi1)?).map_err(CliError::from)?;
                let f2 = parse_cnf(&read_text(&phi2)?).map_err(CliError::from)?;
                let gen = gen_sat_unsat_pdsg_cv(&f1, &f2)?;
                let mut report = Report::new("gen");
                report.push("kind", "sat-unsat");
                emit_generated(report, &gen, out.as_deref())
            }
            GenCommand::VcMember { graph, vertex, out } => {
                let file: GraphFile = read_json(&graph)?;
                let g = graph_from_file(&file)?;
                let v = VertexId::new(&vertex).map_err(CliError::from)?;
                let gen = gen_vc_membership_pvcg_ce(&g, &v)?;
                let mut report = Report::new("gen");
                report.push("kind", "vc-member");
                emit_generated(report, &gen, out.as_deref())
            }
            GenCommand::DsMember { graph, vertex, out } => {
                let file: GraphFile = read_json(&graph)?;
                let g = graph_from_file(&file)?;
                let v = VertexId::new(&vertex).map_err(CliError::from)?;
                let gen = gen_ds_membership_pdsg_ce(&g, &v)?;
                let mut report = Report::new("gen");
                report.push("kind", "ds-member");
                emit_generated(report, &gen, out.as_deref())
            }
            GenCommand::Example { id, out } => {
                let id = ExampleId::parse(&id)?;
                let (inst, canonical) = worked_example(id);
                let mut report = Report::new("gen");
                report.push("kind", "example");
                report.push("id", id.as_str());
                if let Some(a) = &canonical {
                    push_allocation(&mut report, a);
                    report.push(
                        "allocation_json",
                        serde_json::to_string(&allocation_to_file(a)).expect("serializable"),
                    );
                }
                emit_instance(report, &inst, out.as_deref())
            }
        },
        Command::Reduce { what } => match what {
            ReduceCommand::VcToDs { instance, out } => {
                let inst = load_instance(&instance)?;
                let reduced = reduce_pvcg_to_pdsg(&inst)?;
                let mut report = Report::new("reduce");
                report.push("kind", "vc-to-ds");
                report.push("agents", reduced.ownership.agents.join(","));
                emit_instance(report, &reduced, out.as_deref())
            }
        },
        Command::CheckCert {
            instance,
            certificate,
        } => {
            let inst = load_instance(&instance)?;
            let file: CertificateFile = read_json(&certificate)?;
            let cert = certificate_from_file(&file, &inst)?;
            let mut report = Report::new("check-cert");
            report.push("valid", check_emptiness_certificate(&inst, &cert));
            report.print();
            Ok(())
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}
