use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use drg_jacobi::drg::{certify_distance_regular, verify_recurrence, Certification};
use drg_jacobi::families::{density_moment, moment, truncated_jacobi, DEFAULT_QUAD_TOL};
use drg_jacobi::generators::builtin;
use drg_jacobi::graph::parse_edge_list;
use drg_jacobi::jacobi::{
    assign_multiplicities, build_jacobi, canonical_tau, interlacing, measure_for, DEFAULT_TOL,
};
use drg_jacobi::oracle::{
    adjacency_matrix, dense_recurrence_check, dense_symmetric_eigen, matrix_poly_firstkind,
};
use drg_jacobi::{FamilyGenerator, Graph, IntersectionSequence, NonRegularityWitness};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Boundary, Command, CommandResult, SequenceInput, Status};

const MIN_POLY_TOL: f64 = 1e-8;
const ORACLE_TOL: f64 = 1e-7;
const ORACLE_RESIDUAL: f64 = 1e-10;

pub fn run(command: Command) -> Result<CommandResult> {
    match command {
        Command::Certify { source } => certify(&source),
        Command::Spectrum {
            input,
            boundary,
            tol,
        } => spectrum(&input, &boundary, tol),
        Command::Verify { sources, jobs } => verify(&sources, jobs),
        Command::Moments { family, order } => moments(&family, order),
        Command::Measure { input, plot_data } => measure(&input, plot_data.as_deref()),
        Command::Interlace { input, tau, gap } => interlace(&input, &tau, gap),
        Command::Jacobi {
            input,
            family,
            size,
            boundary,
        } => jacobi(&input, family.as_deref(), size, &boundary),
    }
}

fn to_value<T: Serialize>(value: &T) -> Result<Value> {
    serde_json::to_value(value).context("serializing output")
}

fn ok(payload: Value) -> CommandResult {
    CommandResult {
        status: Status::Ok,
        payload,
        diagnostics: Vec::new(),
    }
}

fn witness(w: &NonRegularityWitness) -> Result<CommandResult> {
    Ok(CommandResult {
        status: Status::Witness,
        payload: to_value(w)?,
        diagnostics: vec!["graph is not distance-regular".into()],
    })
}

/// Builtin generator name first, then edge-list file.
fn load_graph(source: &str) -> Result<Graph> {
    if let Some(g) = builtin(source)? {
        return Ok(g);
    }
    let text = fs::read_to_string(source)
        .with_context(|| format!("'{source}' is neither a builtin graph nor a readable file"))?;
    parse_edge_list(&text).with_context(|| format!("parsing {source}"))
}

/// What a [`SequenceInput`] resolved to.
enum Resolved {
    Graph(Graph, IntersectionSequence),
    Array(IntersectionSequence),
    Witness(NonRegularityWitness),
}

impl Resolved {
    fn sequence(&self) -> Option<&IntersectionSequence> {
        match self {
            Resolved::Graph(_, is) | Resolved::Array(is) => Some(is),
            Resolved::Witness(_) => None,
        }
    }

    fn vertex_count(&self) -> Option<usize> {
        match self {
            Resolved::Graph(g, _) => Some(g.vertex_count()),
            _ => None,
        }
    }
}

fn resolve(input: &SequenceInput) -> Result<Resolved> {
    match (&input.source, &input.array) {
        (Some(source), None) => {
            let g = load_graph(source)?;
            Ok(match certify_distance_regular(&g)? {
                Certification::DistanceRegular(is) => Resolved::Graph(g, is),
                Certification::Witness(w) => Resolved::Witness(w),
            })
        }
        (None, Some(array)) => Ok(Resolved::Array(
            array
                .parse()
                .with_context(|| format!("parsing --array '{array}'"))?,
        )),
        _ => bail!("give either a graph source or --array"),
    }
}

fn boundary_value(boundary: &Boundary, is: &IntersectionSequence) -> f64 {
    boundary.tau.unwrap_or_else(|| canonical_tau(is))
}

fn certify(source: &str) -> Result<CommandResult> {
    let g = load_graph(source)?;
    match certify_distance_regular(&g)? {
        Certification::DistanceRegular(is) => Ok(ok(to_value(&is)?)),
        Certification::Witness(w) => witness(&w),
    }
}

fn spectrum(input: &SequenceInput, boundary: &Boundary, tol: f64) -> Result<CommandResult> {
    let resolved = resolve(input)?;
    let Some(is) = resolved.sequence() else {
        let Resolved::Witness(w) = &resolved else {
            unreachable!()
        };
        return witness(w);
    };
    let tau = boundary_value(boundary, is);
    let mut measure = measure_for(&build_jacobi(is, tau), tol)?;
    let mut diagnostics = Vec::new();
    match resolved.vertex_count() {
        Some(n) if tau == canonical_tau(is) => assign_multiplicities(&mut measure, n)?,
        Some(_) => diagnostics.push("multiplicities need the canonical boundary".to_string()),
        None => diagnostics.push("multiplicities need a graph source".to_string()),
    }
    let mut payload = json!({
        "tau": tau,
        "eigenvalues": measure.eigenvalues(),
        "weights": measure.weights(),
    });
    if let Some(m) = measure.multiplicities() {
        payload["multiplicities"] = to_value(&m)?;
    }
    Ok(CommandResult {
        status: Status::Ok,
        payload,
        diagnostics,
    })
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct VerifyReport {
    source: String,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    sequence: Option<IntersectionSequence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<NonRegularityWitness>,
    checks: Vec<Check>,
}

fn check(name: &'static str, outcome: std::result::Result<String, String>) -> Check {
    match outcome {
        Ok(detail) => Check {
            name,
            passed: true,
            detail,
        },
        Err(detail) => Check {
            name,
            passed: false,
            detail,
        },
    }
}

fn battery(g: &Graph, is: &IntersectionSequence) -> Vec<Check> {
    let mut checks = vec![check(
        "recurrence",
        verify_recurrence(g, is)
            .map(|()| "exact, one BFS per vertex".to_string())
            .map_err(|m| {
                format!(
                    "mismatch at k={} ({}, {}): {} vs {}",
                    m.k, m.i, m.j, m.lhs, m.rhs
                )
            }),
    )];
    checks.push(check(
        "recurrence_dense",
        match dense_recurrence_check(g, is) {
            Ok(Ok(())) => Ok("exact, dense integer products".to_string()),
            Ok(Err(m)) => Err(format!("mismatch at k={} ({}, {})", m.k, m.i, m.j)),
            Err(e) => Err(e.to_string()),
        },
    ));
    let star = canonical_tau(is);
    match matrix_poly_firstkind(g, is, star) {
        Ok(residual) => {
            checks.push(check(
                "basis_identity",
                Ok("P_k(A) sqrt(deg A_k) = A_k".to_string()),
            ));
            let max = residual.max_abs();
            checks.push(check(
                "minimal_polynomial",
                if max < MIN_POLY_TOL {
                    Ok(format!("max entry {max:e}"))
                } else {
                    Err(format!("max entry {max:e} exceeds {MIN_POLY_TOL:e}"))
                },
            ));
        }
        Err(e) => {
            checks.push(check("basis_identity", Err(e.to_string())));
            checks.push(check(
                "minimal_polynomial",
                Err("not evaluated".to_string()),
            ));
        }
    }
    checks.push(check("oracle_spectrum", oracle_agreement(g, is)));
    checks
}

fn oracle_agreement(g: &Graph, is: &IntersectionSequence) -> std::result::Result<String, String> {
    let mut measure = measure_for(&build_jacobi(is, canonical_tau(is)), DEFAULT_TOL)
        .map_err(|e| e.to_string())?;
    assign_multiplicities(&mut measure, g.vertex_count()).map_err(|e| e.to_string())?;
    let a = adjacency_matrix(g)
        .map_err(|e| e.to_string())?
        .map(|x| x as f64);
    let dense = dense_symmetric_eigen(&a, ORACLE_RESIDUAL).map_err(|e| e.to_string())?;
    if dense.clusters.len() != measure.atoms.len() {
        return Err(format!(
            "{} distinct eigenvalues, oracle found {}",
            measure.atoms.len(),
            dense.clusters.len()
        ));
    }
    let mut worst = 0.0f64;
    for (atom, &(value, mult)) in measure.atoms.iter().zip(&dense.clusters) {
        worst = worst.max((atom.lambda - value).abs());
        if atom.multiplicity != Some(mult as u64) {
            return Err(format!(
                "multiplicity at {}: {:?} vs {mult}",
                atom.lambda, atom.multiplicity
            ));
        }
    }
    if worst >= ORACLE_TOL {
        return Err(format!("eigenvalues differ by {worst:e}"));
    }
    Ok(format!("max eigenvalue difference {worst:e}"))
}

fn verify_one(source: &str) -> Result<VerifyReport> {
    let g = load_graph(source)?;
    let report = match certify_distance_regular(&g)? {
        Certification::Witness(w) => VerifyReport {
            source: source.to_string(),
            passed: false,
            sequence: None,
            witness: Some(w),
            checks: vec![check(
                "certification",
                Err("not distance-regular".to_string()),
            )],
        },
        Certification::DistanceRegular(is) => {
            let mut checks = vec![check("certification", Ok(is.to_string()))];
            checks.extend(battery(&g, &is));
            VerifyReport {
                source: source.to_string(),
                passed: checks.iter().all(|c| c.passed),
                sequence: Some(is),
                witness: None,
                checks,
            }
        }
    };
    Ok(report)
}

fn verify(sources: &[String], jobs: usize) -> Result<CommandResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .context("starting worker pool")?;
    // collect preserves input order
    let reports: Vec<Result<VerifyReport>> =
        pool.install(|| sources.par_iter().map(|s| verify_one(s)).collect());
    let reports = reports.into_iter().collect::<Result<Vec<_>>>()?;
    let diagnostics: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            r.checks
                .iter()
                .filter(|c| !c.passed)
                .map(move |c| format!("{}: {} failed: {}", r.source, c.name, c.detail))
        })
        .collect();
    Ok(CommandResult {
        status: if diagnostics.is_empty() {
            Status::Ok
        } else {
            Status::Witness
        },
        payload: json!({ "reports": to_value(&reports)? }),
        diagnostics,
    })
}

fn moments(family: &str, order: usize) -> Result<CommandResult> {
    let gen: FamilyGenerator = family.parse()?;
    let exact = (0..=order)
        .map(|k| moment(&gen, k))
        .collect::<drg_jacobi::Result<Vec<u128>>>()?;
    let mut payload = json!({
        "family": gen.description(),
        "order": order,
        "moments": to_value(&exact)?,
    });
    if let Some(n) = gen.is_tree() {
        let k_max = u32::try_from(order).map_err(|_| anyhow!("order {order} too large"))?;
        let quad = (0..=k_max)
            .map(|k| density_moment(n, k, DEFAULT_QUAD_TOL))
            .collect::<drg_jacobi::Result<Vec<f64>>>()?;
        let diffs: Vec<f64> = exact
            .iter()
            .zip(&quad)
            .map(|(&e, q)| (e as f64 - q).abs())
            .collect();
        payload["quadrature"] = to_value(&quad)?;
        payload["differences"] = to_value(&diffs)?;
    }
    Ok(ok(payload))
}

fn measure(input: &SequenceInput, plot_data: Option<&std::path::Path>) -> Result<CommandResult> {
    let resolved = resolve(input)?;
    let Some(is) = resolved.sequence() else {
        let Resolved::Witness(w) = &resolved else {
            unreachable!()
        };
        return witness(w);
    };
    let tau = canonical_tau(is);
    let mut m = measure_for(&build_jacobi(is, tau), DEFAULT_TOL)?;
    if let Some(n) = resolved.vertex_count() {
        assign_multiplicities(&mut m, n)?;
    }
    let mut payload = json!({
        "tau": tau,
        "atoms": to_value(&m.atoms)?,
        "total_weight": m.total_weight(),
    });
    if let Some(path) = plot_data {
        fs::write(path, m.plot_table()).with_context(|| format!("writing {}", path.display()))?;
        payload["plot_data"] = json!(path.display().to_string());
    }
    Ok(ok(payload))
}

fn interlace(input: &SequenceInput, taus: &[f64], gap: f64) -> Result<CommandResult> {
    let &[t1, t2] = taus else {
        bail!("--tau must be given exactly twice, got {}", taus.len());
    };
    let resolved = resolve(input)?;
    let Some(is) = resolved.sequence() else {
        let Resolved::Witness(w) = &resolved else {
            unreachable!()
        };
        return witness(w);
    };
    let report = interlacing(is, t1, t2, gap)?;
    let mut diagnostics = Vec::new();
    if !report.disjoint {
        diagnostics.push(format!("spectra come within {:e}", report.min_gap));
    }
    if !report.interlaced {
        diagnostics.push("spectra are not strictly interlaced".to_string());
    }
    Ok(CommandResult {
        status: if report.holds() {
            Status::Ok
        } else {
            Status::Witness
        },
        payload: to_value(&report)?,
        diagnostics,
    })
}

fn jacobi(
    input: &SequenceInput,
    family: Option<&str>,
    size: Option<usize>,
    boundary: &Boundary,
) -> Result<CommandResult> {
    if let Some(family) = family {
        if boundary.tau.is_some() || boundary.canonical {
            bail!("family truncations have no boundary parameter");
        }
        let gen: FamilyGenerator = family.parse()?;
        let size = size.ok_or_else(|| anyhow!("--family needs --size"))?;
        return Ok(ok(to_value(&truncated_jacobi(&gen, size)?)?));
    }
    let resolved = resolve(input)?;
    let Some(is) = resolved.sequence() else {
        let Resolved::Witness(w) = &resolved else {
            unreachable!()
        };
        return witness(w);
    };
    Ok(ok(to_value(&build_jacobi(
        is,
        boundary_value(boundary, is),
    ))?))
}
