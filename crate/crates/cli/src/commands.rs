use std::fs;
use std::path::Path;
use std::time::Duration;

use oa_jgeom::anova::{CongruenceEntry, JVectorExport};
use oa_jgeom::arrays::{first_margin_violation, MarginViolation};
use oa_jgeom::dims::{forced_sizes, ConstraintRow};
use oa_jgeom::groups::{
    burnside_orbit_count, enumerate_group, generator_permutations, iso_generators, od_generators,
    orbits_under, pair_orbits, parse_generators, DEFAULT_GROUP_CAP,
};
use oa_jgeom::{
    anova_transform, build_ild_j, build_ild_marginal, candidate_dims, check_strength_j,
    congruence_report, constraint_family, enumerate_all, signed_j_transform, DimMode,
    EmitFormat, FrequencyVector, ModeSelect, OAParams, SearchOptions, SignedJVector,
    SymbolArray, TupleSpace,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{
    CertifyArgs, CliError, CliResult, ConstraintsArgs, DimsArgs, EmitArgs, EnumerateArgs,
    GroupArg, OrbitsArgs, OutArgs, ReportFormat, SearchArgs, SystemArg, TransformArgs, VerifyArgs,
};

fn write_out(out: &OutArgs, text: &str) -> CliResult<()> {
    match &out.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut text = serde_json::to_string_pretty(value).map_err(oa_jgeom::Error::from)?;
    text.push('\n');
    Ok(text)
}

#[derive(Deserialize)]
struct CountsFile {
    n: usize,
    k: usize,
    counts: Vec<u64>,
}

/// Reads an array text file or a JSON object with `n`, `k`, `counts`.
fn read_frequency(path: &Path) -> CliResult<FrequencyVector> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        let file: CountsFile = serde_json::from_str(&text).map_err(oa_jgeom::Error::from)?;
        Ok(FrequencyVector::new(file.n, file.k, file.counts)?)
    } else {
        Ok(SymbolArray::parse(&text)?.tally()?)
    }
}

fn search_options(args: &SearchArgs, params: &OAParams) -> CliResult<SearchOptions> {
    if args.workers == 0 {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    let max_time = match args.budget_seconds {
        Some(s) if !(s.is_finite() && s >= 0.0) => {
            return Err(CliError::Usage("--budget-seconds must be a non-negative number".into()))
        }
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let variable_order = match args.seed {
        Some(seed) => {
            let mut order: Vec<usize> = (0..params.cells()?).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            Some(order)
        }
        None => None,
    };
    Ok(SearchOptions {
        max_nodes: args.budget_nodes,
        max_time,
        variable_order,
        workers: args.workers,
        ..SearchOptions::default()
    })
}

#[derive(Serialize)]
struct TransformOutput {
    j: JVectorExport,
    #[serde(skip_serializing_if = "Option::is_none")]
    signed: Option<SignedJVector>,
}

pub fn transform(args: &TransformArgs) -> CliResult<()> {
    let fv = read_frequency(&args.input)?;
    let j = anova_transform(&fv)?.to_export();
    let signed = if fv.n() == 2 { Some(signed_j_transform(&fv)?) } else { None };
    write_out(&args.out, &to_json(&TransformOutput { j, signed })?)
}

#[derive(Serialize)]
struct CongruenceSummary {
    lambda: u64,
    checked: usize,
    violations: Vec<CongruenceEntry>,
}

#[derive(Serialize)]
struct VerifyOutput {
    n: usize,
    k: usize,
    s: usize,
    runs: u64,
    strength: bool,
    first_violation: Option<MarginViolation>,
    congruence: Option<CongruenceSummary>,
}

fn describe(v: &MarginViolation) -> String {
    if v.columns.is_empty() {
        return format!("run count {} is not a multiple of n^s", v.observed);
    }
    let cols: Vec<String> = v.columns.iter().map(usize::to_string).collect();
    let syms: Vec<String> = v.symbols.iter().map(usize::to_string).collect();
    format!(
        "margin on columns {{{}}} at symbols ({}) has {} rows, expected {}",
        cols.join(","),
        syms.join(","),
        v.observed,
        v.expected
    )
}

pub fn verify(args: &VerifyArgs) -> CliResult<()> {
    let fv = read_frequency(&args.input)?;
    if args.s == 0 || args.s > fv.k() {
        return Err(CliError::Usage(format!("--s must lie in 1..={}", fv.k())));
    }
    let first_violation = first_margin_violation(&fv, args.s)?;
    let jv = anova_transform(&fv)?;
    if check_strength_j(&jv, args.s) != first_violation.is_none() {
        return Err(CliError::Failed("marginal and J-characteristic strength checks disagree".into()));
    }
    let congruence = match &first_violation {
        Some(_) => None,
        None => {
            let lambda = fv.total() / (fv.n() as u64).pow(args.s as u32);
            let params = OAParams::new(fv.n(), fv.k(), args.s, lambda)?;
            let report = congruence_report(&jv, &params)?;
            Some(CongruenceSummary {
                lambda,
                checked: report.entries.len(),
                violations: report.violations().cloned().collect(),
            })
        }
    };
    let output = VerifyOutput {
        n: fv.n(),
        k: fv.k(),
        s: args.s,
        runs: fv.total(),
        strength: first_violation.is_none(),
        first_violation,
        congruence,
    };
    write_out(&args.out, &to_json(&output)?)?;
    if let Some(v) = &output.first_violation {
        return Err(CliError::Failed(format!("not an array of strength {}: {}", args.s, describe(v))));
    }
    match &output.congruence {
        Some(c) if !c.violations.is_empty() => {
            Err(CliError::Failed(format!("{} congruence violations", c.violations.len())))
        }
        _ => Ok(()),
    }
}

pub fn dims(args: &DimsArgs) -> CliResult<()> {
    let report = candidate_dims(&args.params.params()?, args.mode.into())?;
    write_out(&args.out, &to_json(&report)?)
}

fn resolve_family(params: &OAParams, t: &[usize], select: ModeSelect) -> CliResult<(DimMode, Vec<usize>, Vec<ConstraintRow>)> {
    let mode = select.resolve(params)?;
    let mut t = t.to_vec();
    t.sort_unstable();
    t.dedup();
    let sizes = forced_sizes(params, mode, &t)?;
    let rows = constraint_family(params, &t, mode)?;
    Ok((mode, sizes, rows))
}

#[derive(Serialize)]
struct ConstraintsOutput<'a> {
    params: OAParams,
    mode: DimMode,
    #[serde(rename = "T")]
    t: &'a [usize],
    forced_block_sizes: Vec<usize>,
    rows: Vec<ConstraintRow>,
}

pub fn constraints(args: &ConstraintsArgs) -> CliResult<()> {
    let params = args.params.params()?;
    let (mode, forced_block_sizes, rows) = resolve_family(&params, &args.t, args.mode.into())?;
    let output = ConstraintsOutput { params, mode, t: &args.t, forced_block_sizes, rows };
    write_out(&args.out, &to_json(&output)?)
}

pub fn emit(args: &EmitArgs) -> CliResult<()> {
    let params = args.params.params()?;
    let format: EmitFormat = args.format.parse().map_err(|e: oa_jgeom::Error| CliError::Usage(e.to_string()))?;
    let system = match args.system {
        SystemArg::Marginal => build_ild_marginal(&params)?,
        SystemArg::J => build_ild_j(&params)?,
    };
    let (_, _, family) = resolve_family(&params, &args.t, args.mode.into())?;
    let mut text = oa_jgeom::emit(&system, &family, format)?;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    write_out(&args.out, &text)
}

#[derive(Serialize)]
struct SolutionLine<'a> {
    counts: &'a [u64],
}

pub fn enumerate(args: &EnumerateArgs) -> CliResult<()> {
    let params = args.params.params()?;
    let opts = search_options(&args.search, &params)?;
    let result = enumerate_all(&params, &opts)?;
    let mut text = String::new();
    for x in &result.solutions {
        text.push_str(&serde_json::to_string(&SolutionLine { counts: x.counts() }).map_err(oa_jgeom::Error::from)?);
        text.push('\n');
    }
    write_out(&args.out, &text)?;
    if !result.complete {
        return Err(CliError::Budget(format!(
            "budget exhausted after {} nodes; {} solutions found so far",
            result.node_count,
            result.solutions.len()
        )));
    }
    eprintln!("{} solutions, {} search nodes", result.solutions.len(), result.node_count);
    Ok(())
}

pub fn certify(args: &CertifyArgs) -> CliResult<()> {
    let params = args.params.params()?;
    let opts = search_options(&args.search, &params)?;
    let cert = oa_jgeom::certify(&params, &opts)?;
    let text = match args.format {
        ReportFormat::Json => to_json(&cert)?,
        ReportFormat::Text => {
            let mut text = format!("{}\n", cert.summary());
            for c in &cert.checks {
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                text.push_str(&format!("{verdict} {}: {}\n", c.name, c.detail));
            }
            text
        }
    };
    write_out(&args.out, &text)?;
    if !cert.complete {
        return Err(CliError::Budget(format!("budget exhausted after {} nodes", cert.node_count)));
    }
    if !cert.passed() {
        let failed: Vec<&str> = cert.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        return Err(CliError::Failed(format!("certification failed: {}", failed.join(", "))));
    }
    Ok(())
}

#[derive(Serialize)]
struct BurnsideRow {
    power: u32,
    orbits: u128,
}

#[derive(Serialize)]
struct OrbitsOutput {
    n: usize,
    k: usize,
    generators: usize,
    group_order: usize,
    point_orbit_sizes: Vec<usize>,
    pair_orbits: usize,
    burnside: Vec<BurnsideRow>,
}

pub fn orbits(args: &OrbitsArgs) -> CliResult<()> {
    let space = TupleSpace::new(args.n, args.k)?;
    let gens = match (&args.generators, args.group) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            parse_generators(&text)?
        }
        (None, GroupArg::Iso) => iso_generators(args.n, args.k),
        (None, GroupArg::Od) if args.n == 2 => od_generators(args.k),
        (None, GroupArg::Od) => return Err(oa_jgeom::Error::UnsupportedAlphabet(args.n).into()),
    };
    if args.max_power == 0 {
        return Err(CliError::Usage("--max-power must be at least 1".into()));
    }
    let perms = generator_permutations(&gens, &space)?;
    let group = enumerate_group(&perms, space.size(), DEFAULT_GROUP_CAP)?;
    let burnside = (1..=args.max_power)
        .map(|power| Ok(BurnsideRow { power, orbits: burnside_orbit_count(&group, power)? }))
        .collect::<CliResult<Vec<_>>>()?;
    let output = OrbitsOutput {
        n: args.n,
        k: args.k,
        generators: gens.len(),
        group_order: group.len(),
        point_orbit_sizes: orbits_under(space.size(), &perms)?.sizes(),
        pair_orbits: pair_orbits(space.size(), &perms)?.len(),
        burnside,
    };
    write_out(&args.out, &to_json(&output)?)
}
