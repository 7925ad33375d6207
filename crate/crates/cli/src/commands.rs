use crate::error::{CliError, CliResult};
use crate::{num, read_file, write_file, Command, ConventionArg, EntropyCommand};
use bell_core::io::ModelFile;
use bell_core::{
    behavior, ch_statistic, check_no_signalling, chsh_statistic, mc_estimate, Model, OutcomeCoding,
};
use model_search::{feasibility_retro, max_chsh_local_lp, max_chsh_retro_lp, FeasibilityVerdict};
use quantum_oracle::{quantum_behavior, singlet_state, Convention};
use serde_json::json;
use std::path::Path;

pub fn dispatch(command: Command) -> CliResult<()> {
    match command {
        Command::Chsh { model } => chsh(&model),
        Command::Ch { model } => ch(&model),
        Command::Nosignal { model, tol } => nosignal(&model, tol),
        Command::Mc {
            model,
            i,
            j,
            trials,
            seed,
        } => mc(&model, i, j, trials, seed),
        Command::Oracle {
            a0,
            a1,
            b0,
            b1,
            convention,
            out,
        } => oracle(a0, a1, b0, b1, convention, out.as_deref()),
        Command::LpLocal {
            no_signalling,
            witness_out,
        } => lp_local(no_signalling, witness_out.as_deref()),
        Command::LpRetro {
            no_signalling,
            witness_out,
        } => lp_retro(no_signalling, witness_out.as_deref()),
        Command::Feasibility {
            target,
            witness_out,
        } => feasibility(&target, witness_out.as_deref()),
        Command::Gas {
            width,
            height,
            wall_col,
            hole_rows,
            particles,
            steps,
            reverse_at,
            seed,
            out,
        } => gas(
            arrow_of_time::GasConfig {
                width,
                height,
                wall_col,
                hole_rows,
                particles,
                seed,
                steps,
                reverse_at,
            },
            out.as_deref(),
        ),
        Command::Entropy { which } => entropy(which),
        Command::Geometry { file } => geometry(&file),
    }
}

fn load_model(path: &Path) -> CliResult<Model> {
    let model = ModelFile::from_json(&read_file(path)?)?.to_model()?;
    model.validate()?;
    Ok(model)
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("valid json"));
}

fn chsh(path: &Path) -> CliResult<()> {
    let model = load_model(path)?;
    let table = behavior(&model)?;
    if table.outcome_coding == OutcomeCoding::DetectZeroOne {
        eprintln!("warning: detect-coded model; outcomes mapped 1 -> +1, 0 -> -1 for CHSH");
    }
    let s = chsh_statistic(&table)?;
    let e: Vec<Vec<f64>> = (0..2)
        .map(|i| (0..2).map(|j| table.expectation(i, j)).collect())
        .collect();
    print_json(&json!({ "statistic": s, "expectations": e }));
    Ok(())
}

fn ch(path: &Path) -> CliResult<()> {
    let model = load_model(path)?;
    let j = ch_statistic(&behavior(&model)?)?;
    print_json(&json!({ "statistic": j }));
    Ok(())
}

fn nosignal(path: &Path, tol: f64) -> CliResult<()> {
    let model = load_model(path)?;
    let report = check_no_signalling(&behavior(&model)?, tol)?;
    print_json(&serde_json::to_value(&report)?);
    Ok(())
}

fn mc(path: &Path, i: usize, j: usize, trials: u64, seed: u64) -> CliResult<()> {
    let model = load_model(path)?;
    let (mean, se) = mc_estimate(&model, i, j, trials, seed)?;
    print_json(&json!({
        "i": i, "j": j, "trials": trials, "seed": seed,
        "mean": mean, "standard_error": se,
    }));
    Ok(())
}

fn oracle(
    a0: f64,
    a1: f64,
    b0: f64,
    b1: f64,
    convention: ConventionArg,
    out: Option<&Path>,
) -> CliResult<()> {
    let convention = match convention {
        ConventionArg::Spin => Convention::Spin,
        ConventionArg::Polarization => Convention::Polarization,
    };
    let table = quantum_behavior(&singlet_state(), &[a0, a1], &[b0, b1], convention)?;
    let s = chsh_statistic(&table)?;
    let ns = check_no_signalling(&table, 1e-12)?;
    if let Some(path) = out {
        write_file(path, &serde_json::to_string_pretty(&table)?)?;
    }
    print_json(&json!({
        "chsh": s,
        "no_signalling_pass": ns.pass,
        "max_marginal_deviation": ns.max_deviation,
        "behavior_out": out.map(|p| p.display().to_string()),
    }));
    Ok(())
}

fn lp_local(no_signalling: bool, witness_out: Option<&Path>) -> CliResult<()> {
    let result = max_chsh_local_lp(no_signalling)?;
    if let Some(path) = witness_out {
        let file = ModelFile::from(&Model::Local(result.witness.clone()));
        write_file(path, &file.to_json())?;
    }
    print_json(&json!({
        "optimum": result.optimum,
        "support": result.support,
        "iterations": result.iterations,
        "verification_residual": result.verification_residual,
        "witness_out": witness_out.map(|p| p.display().to_string()),
    }));
    Ok(())
}

fn lp_retro(no_signalling: bool, witness_out: Option<&Path>) -> CliResult<()> {
    let result = max_chsh_retro_lp(no_signalling)?;
    if let Some(path) = witness_out {
        let file = ModelFile::from(&Model::Retro(result.witness.clone()));
        write_file(path, &file.to_json())?;
    }
    let e: Vec<Vec<f64>> = (0..2)
        .map(|i| {
            (0..2)
                .map(|j| Model::Retro(result.witness.clone()).expectation(i, j))
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;
    print_json(&json!({
        "optimum": result.optimum,
        "expectations": e,
        "iterations": result.iterations,
        "verification_residual": result.verification_residual,
        "witness_out": witness_out.map(|p| p.display().to_string()),
    }));
    Ok(())
}

fn feasibility(target: &Path, witness_out: Option<&Path>) -> CliResult<()> {
    let table: bell_core::BehaviorTable = serde_json::from_str(&read_file(target)?)?;
    match feasibility_retro(&table)? {
        FeasibilityVerdict::Feasible { witness, residual } => {
            if let Some(path) = witness_out {
                let file = ModelFile::from(&Model::Retro(witness));
                write_file(path, &file.to_json())?;
            }
            print_json(&json!({
                "verdict": "feasible",
                "residual": residual,
                "witness_out": witness_out.map(|p| p.display().to_string()),
            }));
        }
        FeasibilityVerdict::Infeasible { certificate } => {
            print_json(&json!({
                "verdict": "infeasible",
                "certificate": {
                    "separator": certificate.y,
                    "infeasibility": certificate.infeasibility,
                },
            }));
        }
    }
    Ok(())
}

fn trajectory_csv(points: &[arrow_of_time::TrajectoryPoint]) -> String {
    let mut csv = String::from("t,j,entropy_over_kB\n");
    for p in points {
        csv.push_str(&format!("{},{},{}\n", p.t, p.j, num(p.entropy_over_kb)));
    }
    csv
}

fn gas(config: arrow_of_time::GasConfig, out: Option<&Path>) -> CliResult<()> {
    let (trajectory, summary) = if config.reverse_at.is_some() {
        let echo = arrow_of_time::run_echo(&config)?;
        let first = echo.trajectory.first().expect("nonempty trajectory");
        let last = echo.trajectory.last().expect("nonempty trajectory");
        let summary = json!({
            "mode": "echo",
            "particles": config.particles,
            "retraced": echo.retraced,
            "entropy_initial": first.entropy_over_kb,
            "entropy_final": last.entropy_over_kb,
        });
        (echo.trajectory, summary)
    } else {
        let (trajectory, _) = arrow_of_time::run_free(&config)?;
        let first = *trajectory.first().expect("nonempty trajectory");
        let last = *trajectory.last().expect("nonempty trajectory");
        let summary = json!({
            "mode": "free",
            "particles": config.particles,
            "entropy_initial": first.entropy_over_kb,
            "entropy_final": last.entropy_over_kb,
            "j_final": last.j,
        });
        (trajectory, summary)
    };
    let csv = trajectory_csv(&trajectory);
    match out {
        Some(path) => {
            write_file(path, &csv)?;
            print_json(&summary);
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn entropy(which: EntropyCommand) -> CliResult<()> {
    let value = match which {
        EntropyCommand::Clausius { q, t } => {
            if q.len() != t.len() {
                return Err(CliError::Validation(format!(
                    "need matching --q/--t pairs, got {} and {}",
                    q.len(),
                    t.len()
                )));
            }
            let steps: Vec<arrow_of_time::HeatStep> = q
                .into_iter()
                .zip(t)
                .map(|(q, t)| arrow_of_time::HeatStep { q, t })
                .collect();
            arrow_of_time::clausius_delta_s(&steps)?
        }
        EntropyCommand::Contact { q, t_hot, t_cold } => {
            arrow_of_time::contact_delta_s(q, t_hot, t_cold)?
        }
        EntropyCommand::Boltzmann { n, j } => arrow_of_time::box_entropy(n, j)?,
        EntropyCommand::Earth { power, t_in, t_out } => {
            arrow_of_time::earth_entropy_rate(power, t_in, t_out)?
        }
    };
    println!("{}", num(value));
    Ok(())
}

fn geometry(file: &Path) -> CliResult<()> {
    let g = spacetime::ExperimentGeometry::from_json(&read_file(file)?)?;
    let report = spacetime::validate_config(&g)?;
    for condition in &report.conditions {
        let verdict = if condition.pass { "pass" } else { "FAIL" };
        println!("condition {} [{}] {}", condition.id, verdict, condition.description);
        for pair in &condition.pairs {
            println!(
                "  {} - {}: s2 = {} ({:?})",
                pair.from,
                pair.to,
                num(pair.s2),
                pair.class
            );
        }
    }
    if report.pass {
        println!("geometry: all conditions pass");
        Ok(())
    } else {
        Err(CliError::Validation(
            "geometry: one or more conditions failed".into(),
        ))
    }
}
