use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use linkadmit::admission::{
    check_clique, check_clique_line_scaled, check_degree, check_mixed, check_row, check_row2, check_row2_designated,
    check_row_primary, check_shannon, parse_clique_scale, ConditionReport,
};
use linkadmit::generators::{
    center_with_cliques, complete, cycle, k4_minus_e, line_graph, path, petersen, random_connected_graph, random_graph,
    random_multigraph, random_points, star, unit_disk,
};
use linkadmit::invariants::{
    alpha, b_bound, beta_mixed_predicted, beta_row2_predicted, chromatic_index_bound, line_graph_cliques, max_degree,
    maximal_cliques, sigma, vertex_connectivity,
};
use linkadmit::io::{self as fmt, FormatError};
use linkadmit::oracle::{
    beta_degree, beta_mixed, beta_row, beta_row2, chi_f, feasible, imp_estimate, scaling_check, t_clique, BetaResult,
    ImpOptions, ScaledCondition, ScalingOptions,
};
use linkadmit::schedule::validate_schedule;
use linkadmit::scheduler::{schedule_degree_or_mixed, schedule_row, schedule_row2, schedule_row2_designated};
use linkadmit::{ConflictGraph, DemandVector, Error, Limits, NetworkGraph, Rational, Schedule};

use crate::output::{approx, approx_text, Output, Table};
use crate::{
    BetaKind, CheckArgs, Cli, CliError, Command, GenFamily, Global, ImpArgs, InvariantQuery, Method, OracleQuery,
    ScalingKind, ScheduleArgs,
};

type CliResult<T> = Result<T, CliError>;

pub fn run(cli: &Cli) -> CliResult<Option<Output>> {
    let g = &cli.global;
    match &cli.command {
        Command::Gen { family, output } => generate(family, output.as_deref()),
        Command::Check(args) => check(g, args).map(Some),
        Command::Schedule(args) => schedule(args),
        Command::Validate {
            graph,
            demands,
            schedule,
        } => validate(graph, demands, schedule).map(Some),
        Command::Oracle { query } => oracle(g, query).map(Some),
        Command::Invariant { query } => invariant(g, query).map(Some),
        Command::Beta { graph } => betas(g, &load_graph(graph)?).map(Some),
        Command::Imp(args) => imp(g, args).map(Some),
        Command::Report {
            graphs,
            networks,
            samples,
            seed,
        } => report(g, graphs, networks, *samples, *seed).map(Some),
    }
}

// ── Loading ──

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load<T>(path: &Path, parse: fn(&str) -> Result<T, FormatError>) -> CliResult<T> {
    parse(&read(path)?).map_err(|source| CliError::Format {
        path: path.display().to_string(),
        source,
    })
}

fn load_graph(path: &Path) -> CliResult<ConflictGraph> {
    load(path, fmt::parse_graph)
}

fn load_network(path: &Path) -> CliResult<NetworkGraph> {
    load(path, fmt::parse_network)
}

fn load_demands(path: &Path) -> CliResult<DemandVector> {
    load(path, fmt::parse_demands)
}

fn write_or_emit(text: String, output: Option<&Path>) -> CliResult<Option<Output>> {
    match output {
        Some(path) => {
            fs::write(path, text + "\n").map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            Ok(None)
        }
        None => Ok(Some(Output::ok(
            serde_json::from_str(&text).expect("renderer emits JSON"),
        ))),
    }
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable value")
}

/// Maps "not applicable" to `None`, keeping every other error.
fn applicable<T>(result: linkadmit::Result<T>) -> linkadmit::Result<Option<T>> {
    match result {
        Ok(v) => Ok(Some(v)),
        Err(Error::NotApplicable(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn cell(value: Option<&Rational>) -> String {
    value.map(ToString::to_string).unwrap_or_default()
}

// ── gen ──

fn generate(family: &GenFamily, output: Option<&Path>) -> CliResult<Option<Output>> {
    let text = match family {
        GenFamily::Star { d } => fmt::graph_to_json(&star(*d)),
        GenFamily::Path { n } => fmt::graph_to_json(&path(*n)),
        GenFamily::Cycle { n } => {
            if *n < 3 {
                return Err(CliError::Usage(format!("a cycle needs at least 3 vertices, got {n}")));
            }
            fmt::graph_to_json(&cycle(*n))
        }
        GenFamily::Complete { n } => fmt::graph_to_json(&complete(*n)),
        GenFamily::K4e => fmt::graph_to_json(&k4_minus_e()),
        GenFamily::Petersen => fmt::graph_to_json(&petersen()),
        GenFamily::T3 { sizes } => {
            if sizes.contains(&0) {
                return Err(CliError::Usage("clique sizes must be positive".into()));
            }
            fmt::graph_to_json(&center_with_cliques(sizes))
        }
        GenFamily::Line { network } => fmt::graph_to_json(&line_graph(&load_network(network)?)),
        GenFamily::Udg { points, radius } => {
            if !radius.is_positive() {
                return Err(CliError::Usage(format!("radius must be positive, got {radius}")));
            }
            fmt::graph_to_json(&unit_disk(&load(points, fmt::parse_points)?, radius))
        }
        GenFamily::Random { n, p, seed, connected } => {
            check_probability(*p)?;
            if *connected && *p == 0.0 && *n > 1 {
                return Err(CliError::Usage("a connected graph on 2+ vertices needs p > 0".into()));
            }
            let g = if *connected {
                random_connected_graph(*n, *p, *seed)
            } else {
                random_graph(*n, *p, *seed)
            };
            fmt::graph_to_json(&g)
        }
        GenFamily::Network {
            nodes,
            p,
            seed,
            max_mult,
        } => {
            check_probability(*p)?;
            if *max_mult == 0 {
                return Err(CliError::Usage("--max-mult must be at least 1".into()));
            }
            fmt::network_to_json(&random_multigraph(*nodes, *p, *max_mult, *seed))
        }
        GenFamily::Points { n, side, seed } => {
            if !side.is_positive() {
                return Err(CliError::Usage(format!("side must be positive, got {side}")));
            }
            fmt::points_to_json(&random_points(*n, side, *seed))
        }
    };
    write_or_emit(text, output)
}

fn check_probability(p: f64) -> CliResult<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("probability must lie in [0, 1], got {p}")))
    }
}

// ── check ──

fn check(global: &Global, args: &CheckArgs) -> CliResult<Output> {
    let tau = load_demands(&args.demands)?;
    let horizon = &args.horizon;
    let limits = global.limits();
    let name = args.condition.as_str();

    let network_test = matches!(name, "row-primary" | "clique-line" | "shannon");
    let report = if network_test {
        let Some(path) = &args.network else {
            return Err(CliError::Usage(format!("condition {name} needs --network")));
        };
        let n = load_network(path)?;
        match name {
            "row-primary" => check_row_primary(&n, &tau, horizon)?,
            "clique-line" => check_clique_line_scaled(&n, &tau, horizon)?,
            _ => check_shannon(&n, &tau, horizon)?,
        }
    } else {
        let g = match (&args.graph, &args.network) {
            (Some(path), _) => load_graph(path)?,
            (None, Some(path)) => line_graph(&load_network(path)?),
            (None, None) => unreachable!("clap requires one of --graph or --network"),
        };
        graph_check(&g, &tau, horizon, name, args.designated.as_deref(), &limits)?
    };
    Ok(report_output(&report, global.approx))
}

fn graph_check(
    g: &ConflictGraph,
    tau: &DemandVector,
    horizon: &Rational,
    name: &str,
    designated: Option<&str>,
    limits: &Limits,
) -> CliResult<ConditionReport> {
    let report = match name {
        "row" => check_row(g, tau, horizon)?,
        "degree" => check_degree(g, tau, horizon)?,
        "mixed" => check_mixed(g, tau, horizon)?,
        "row2" => check_row2(g, tau, horizon)?,
        "row2d" => {
            let designated = designated.ok_or_else(|| CliError::Usage("condition row2d needs --designated".into()))?;
            check_row2_designated(g, tau, horizon, designated)?
        }
        "clique" => check_clique(g, tau, horizon, &Rational::one(), limits)?,
        other => match other.strip_prefix("clique-scaled=") {
            Some(scale) => check_clique(g, tau, horizon, &parse_clique_scale(scale)?, limits)?,
            None => return Err(CliError::Usage(format!("unknown condition {other:?}"))),
        },
    };
    Ok(report)
}

fn report_output(report: &ConditionReport, with_approx: bool) -> Output {
    let mut json = to_value(report);
    let mut header = vec!["condition", "subject", "lhs", "bound", "passes"];
    if with_approx {
        header.push("lhs_approx");
        let approx_rows: Vec<Value> = report.rows.iter().map(|r| approx(&r.lhs)).collect();
        json["lhs_approx"] = Value::Array(approx_rows);
    }
    let mut table = Table::new(header);
    for row in &report.rows {
        let mut cells = vec![
            report.condition.clone(),
            row.subject.to_string(),
            row.lhs.to_string(),
            row.bound.to_string(),
            row.passes.to_string(),
        ];
        if with_approx {
            cells.push(approx_text(&row.lhs));
        }
        table.push(cells);
    }
    Output::ok(json)
        .with_table(table)
        .with_status(if report.overall { 0 } else { 1 })
}

// ── schedule / validate ──

fn schedule(args: &ScheduleArgs) -> CliResult<Option<Output>> {
    let g = load_graph(&args.graph)?;
    let tau = load_demands(&args.demands)?;
    let horizon = &args.horizon;
    let designated = || {
        args.designated
            .as_deref()
            .ok_or_else(|| CliError::Usage("method row2d needs --designated".into()))
    };
    if args.order.is_some() && args.method != Method::Row {
        return Err(CliError::Usage("--order applies to method row only".into()));
    }
    let s: Schedule = match args.method {
        Method::Row => schedule_row(&g, &tau, horizon, args.order.as_deref())?,
        Method::Degree => {
            check_degree(&g, &tau, horizon)?.require_pass()?;
            schedule_degree_or_mixed(&g, &tau, horizon)?
        }
        Method::Mixed => schedule_degree_or_mixed(&g, &tau, horizon)?,
        Method::Row2 => schedule_row2(&g, &tau, horizon)?,
        Method::Row2d => schedule_row2_designated(&g, &tau, horizon, designated()?)?,
    };
    let text = fmt::schedule_to_json(&s);
    match write_or_emit(text, args.output.as_deref())? {
        Some(out) => {
            let mut table = Table::new(["vertex", "start", "end"]);
            for (id, set) in &s.assignment {
                for iv in set.intervals() {
                    table.push([id.clone(), iv.start.to_string(), iv.end.to_string()]);
                }
            }
            Ok(Some(out.with_table(table)))
        }
        None => Ok(None),
    }
}

fn validate(graph: &Path, demands: &Path, schedule: &Path) -> CliResult<Output> {
    let g = load_graph(graph)?;
    let tau = load_demands(demands)?;
    let s = load(schedule, fmt::parse_schedule)?;
    let verdict = validate_schedule(&g, &tau, &s.horizon, &s)?;
    let violations: Vec<String> = verdict.violations().iter().map(ToString::to_string).collect();
    let mut table = Table::new(["violation"]);
    for v in &violations {
        table.push([v.clone()]);
    }
    let ok = verdict.is_ok();
    Ok(Output::ok(json!({ "ok": ok, "violations": violations }))
        .with_table(table)
        .with_status(if ok { 0 } else { 1 }))
}

// ── oracle ──

fn oracle(global: &Global, query: &OracleQuery) -> CliResult<Output> {
    let limits = global.limits();
    match query {
        OracleQuery::ChiF { graph, demands } => {
            let g = load_graph(graph)?;
            let chi = chi_f(&g, &load_demands(demands)?, &limits)?;
            let schedule: Value = serde_json::from_str(&fmt::set_schedule_to_json(&chi.schedule)).expect("JSON");
            let mut json = json!({ "value": chi.value, "schedule": schedule });
            with_approx(&mut json, global.approx, &[("value", &chi.value)]);
            Ok(Output::ok(json).with_table(value_table(global.approx, &chi.value)))
        }
        OracleQuery::Feasible {
            graph,
            demands,
            horizon,
        } => {
            let g = load_graph(graph)?;
            let tau = load_demands(demands)?;
            let ok = feasible(&g, &tau, horizon, &limits)?;
            let length = chi_f(&g, &tau, &limits)?.value;
            let mut json = json!({ "feasible": ok, "chi_f": length, "horizon": horizon });
            with_approx(&mut json, global.approx, &[("chi_f", &length)]);
            let table = Table::record([("feasible", ok.to_string()), ("chi_f", length.to_string())]);
            Ok(Output::ok(json).with_table(table).with_status(if ok { 0 } else { 1 }))
        }
        OracleQuery::TClique { graph, demands } => {
            let g = load_graph(graph)?;
            let value = t_clique(&g, &load_demands(demands)?, &limits)?;
            let mut json = json!({ "value": value });
            with_approx(&mut json, global.approx, &[("value", &value)]);
            Ok(Output::ok(json).with_table(value_table(global.approx, &value)))
        }
        OracleQuery::Beta { kind, graph } => {
            let g = load_graph(graph)?;
            let res = beta(&g, *kind, &limits)?;
            let mut json = to_value(&res);
            with_approx(&mut json, global.approx, &[("value", &res.value)]);
            let table = Table::record([
                ("value", res.value.to_string()),
                ("vertex", res.vertex.clone()),
                ("neighbor", res.neighbor.clone().unwrap_or_default()),
            ]);
            Ok(Output::ok(json).with_table(table))
        }
        OracleQuery::Imp(args) => imp(global, args),
        OracleQuery::Scaling {
            condition,
            beta,
            graph,
            samples,
            seed,
        } => {
            let g = load_graph(graph)?;
            let cond = match condition {
                ScalingKind::Row => ScaledCondition::Row,
                ScalingKind::Row2 => ScaledCondition::Row2,
                ScalingKind::Degree => ScaledCondition::Degree,
                ScalingKind::Mixed => ScaledCondition::Mixed,
                ScalingKind::Clique => ScaledCondition::Clique,
            };
            let options = ScalingOptions {
                samples: *samples,
                seed: *seed,
            };
            let verdict = scaling_check(&g, cond, beta, &options, &limits)?;
            let holds = verdict.holds();
            let mut json = to_value(&verdict);
            json["holds"] = Value::Bool(holds);
            let table = Table::record([
                ("containment", verdict.containment.to_string()),
                ("sufficiency", verdict.sufficiency.to_string()),
                ("points_checked", verdict.points_checked.to_string()),
            ]);
            Ok(Output::ok(json)
                .with_table(table)
                .with_status(if holds { 0 } else { 1 }))
        }
    }
}

fn beta(g: &ConflictGraph, kind: BetaKind, limits: &Limits) -> linkadmit::Result<BetaResult> {
    match kind {
        BetaKind::Row => beta_row(g, limits),
        BetaKind::Degree => beta_degree(g, limits),
        BetaKind::Mixed => beta_mixed(g, limits),
        BetaKind::Row2 => beta_row2(g, limits),
    }
}

fn with_approx(json: &mut Value, enabled: bool, fields: &[(&str, &Rational)]) {
    if !enabled {
        return;
    }
    let map: Map<String, Value> = fields.iter().map(|(k, v)| (k.to_string(), approx(v))).collect();
    json["approx"] = Value::Object(map);
}

fn value_table(with_approx: bool, value: &Rational) -> Table {
    let mut pairs = vec![("value", value.to_string())];
    if with_approx {
        pairs.push(("value_approx", approx_text(value)));
    }
    Table::record(pairs)
}

fn imp(global: &Global, args: &ImpArgs) -> CliResult<Output> {
    let g = load_graph(&args.graph)?;
    let options = ImpOptions {
        samples: args.samples,
        seed: args.seed,
        ..ImpOptions::default()
    };
    let est = imp_estimate(&g, &options, &global.limits())?;
    let mut json = json!({ "lower_bound": est.ratio, "witness": est.witness });
    with_approx(&mut json, global.approx, &[("lower_bound", &est.ratio)]);
    let mut pairs = vec![("lower_bound", est.ratio.to_string())];
    if global.approx {
        pairs.push(("lower_bound_approx", approx_text(&est.ratio)));
    }
    Ok(Output::ok(json).with_table(Table::record(pairs)))
}

// ── invariants ──

fn invariant(global: &Global, query: &InvariantQuery) -> CliResult<Output> {
    let limits = global.limits();
    let scalar = |name: &str, value: Value, text: String| {
        let mut json = Map::new();
        json.insert(name.to_string(), value);
        Output::ok(Value::Object(json)).with_table(Table::record([(name.to_string(), text)]))
    };
    let out = match query {
        InvariantQuery::Sigma { graph } => {
            let (s, witness) = sigma(&load_graph(graph)?, &limits)?;
            let mut out = scalar("sigma", json!(s), s.to_string());
            if let Some(w) = witness {
                out.json["witness"] = to_value(&w);
            }
            out
        }
        InvariantQuery::Alpha { graph } => {
            let g = load_graph(graph)?;
            let all: Vec<usize> = (0..g.vertex_count()).collect();
            let a = alpha(&g, &all, &limits)?;
            scalar("alpha", json!(a), a.to_string())
        }
        InvariantQuery::MaxDegree { graph } => {
            let d = max_degree(&load_graph(graph)?);
            scalar("max_degree", json!(d), d.to_string())
        }
        InvariantQuery::Cliques { graph } => {
            let g = load_graph(graph)?;
            clique_output(maximal_cliques(&g, &limits)?, |v| g.id(v).to_string())
        }
        InvariantQuery::LineCliques { network } => {
            let n = load_network(network)?;
            clique_output(line_graph_cliques(&n), |l| n.links()[l].id.clone())
        }
        InvariantQuery::ChromaticIndexBound { network } => {
            let b = chromatic_index_bound(&load_network(network)?);
            scalar("bound", to_value(&b), b.to_string())
        }
        InvariantQuery::Connectivity { graph } => {
            let k = vertex_connectivity(&load_graph(graph)?);
            scalar("connectivity", json!(k), k.to_string())
        }
        InvariantQuery::MixedPredicted { graph } => {
            let p = beta_mixed_predicted(&load_graph(graph)?);
            scalar("value", to_value(&p), cell(p.as_ref()))
        }
        InvariantQuery::Row2Predicted { graph } => {
            let p = applicable(beta_row2_predicted(&load_graph(graph)?, &limits))?;
            scalar("value", to_value(&p), cell(p.as_ref()))
        }
        InvariantQuery::BBound { graph, demands } => {
            let b = b_bound(&load_graph(graph)?, &load_demands(demands)?)?;
            scalar("value", to_value(&b), b.to_string())
        }
    };
    Ok(out)
}

fn clique_output(cliques: Vec<Vec<usize>>, id: impl Fn(usize) -> String) -> Output {
    let mut named: Vec<Vec<String>> = cliques
        .into_iter()
        .map(|k| {
            let mut ids: Vec<String> = k.into_iter().map(&id).collect();
            ids.sort();
            ids
        })
        .collect();
    named.sort();
    let mut table = Table::new(["clique"]);
    for k in &named {
        table.push([k.join(" ")]);
    }
    Output::ok(json!({ "cliques": named })).with_table(table)
}

// ── beta table / report ──

fn betas(global: &Global, g: &ConflictGraph) -> CliResult<Output> {
    let limits = global.limits();
    let (s, _) = sigma(g, &limits)?;
    let delta = max_degree(g);
    let entries: Vec<(&str, Option<Rational>, Option<Rational>)> = vec![
        (
            "row",
            applicable(beta_row(g, &limits))?.map(|b| b.value),
            Some(Rational::from(s).max(Rational::one())),
        ),
        (
            "degree",
            applicable(beta_degree(g, &limits))?.map(|b| b.value),
            Some(Rational::from(delta + 1)),
        ),
        (
            "mixed",
            applicable(beta_mixed(g, &limits))?.map(|b| b.value),
            beta_mixed_predicted(g),
        ),
        (
            "row2",
            applicable(beta_row2(g, &limits))?.map(|b| b.value),
            applicable(beta_row2_predicted(g, &limits))?,
        ),
    ];
    let mut json = json!({ "sigma": s, "max_degree": delta });
    let mut header = vec!["ratio", "value", "predicted"];
    if global.approx {
        header.push("value_approx");
    }
    let mut table = Table::new(header);
    for (name, value, predicted) in &entries {
        let mut entry = json!({ "value": value, "predicted": predicted });
        if global.approx {
            entry["approx"] = value.as_ref().map_or(Value::Null, approx);
        }
        json[*name] = entry;
        let mut cells = vec![name.to_string(), cell(value.as_ref()), cell(predicted.as_ref())];
        if global.approx {
            cells.push(value.as_ref().map(approx_text).unwrap_or_default());
        }
        table.push(cells);
    }
    Ok(Output::ok(json).with_table(table))
}

struct ReportRow {
    name: String,
    n: usize,
    m: usize,
    sigma: usize,
    delta: usize,
    ratios: [Option<Rational>; 5],
}

const RATIO_COLUMNS: [&str; 5] = ["beta_row", "beta_degree", "beta_mixed", "beta_row2", "imp_lower_bound"];

fn report_row(name: String, g: &ConflictGraph, options: &ImpOptions, limits: &Limits) -> linkadmit::Result<ReportRow> {
    let value = |r: linkadmit::Result<BetaResult>| applicable(r).map(|b| b.map(|b| b.value));
    Ok(ReportRow {
        name,
        n: g.vertex_count(),
        m: g.edge_count(),
        sigma: sigma(g, limits)?.0,
        delta: max_degree(g),
        ratios: [
            value(beta_row(g, limits))?,
            value(beta_degree(g, limits))?,
            value(beta_mixed(g, limits))?,
            value(beta_row2(g, limits))?,
            applicable(imp_estimate(g, options, limits))?.map(|e| e.ratio),
        ],
    })
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn report(global: &Global, graphs: &[PathBuf], networks: &[PathBuf], samples: usize, seed: u64) -> CliResult<Output> {
    let mut inputs = Vec::new();
    for path in graphs {
        inputs.push((stem(path), load_graph(path)?));
    }
    for path in networks {
        inputs.push((stem(path), line_graph(&load_network(path)?)));
    }
    let limits = global.limits();
    let options = ImpOptions {
        samples,
        seed,
        ..ImpOptions::default()
    };
    let rows = inputs
        .into_par_iter()
        .map(|(name, g)| report_row(name, &g, &options, &limits))
        .collect::<linkadmit::Result<Vec<_>>>()?;

    let mut header: Vec<String> = ["name", "n", "m", "sigma", "delta"].map(String::from).to_vec();
    header.extend(RATIO_COLUMNS.map(String::from));
    if global.approx {
        header.extend(RATIO_COLUMNS.map(|c| format!("{c}_approx")));
    }
    let mut table = Table::new(header);
    let mut records = Vec::new();
    for row in &rows {
        let mut cells = vec![
            row.name.clone(),
            row.n.to_string(),
            row.m.to_string(),
            row.sigma.to_string(),
            row.delta.to_string(),
        ];
        cells.extend(row.ratios.iter().map(|r| cell(r.as_ref())));
        let mut record = json!({
            "name": row.name, "n": row.n, "m": row.m, "sigma": row.sigma, "delta": row.delta,
        });
        for (col, r) in RATIO_COLUMNS.iter().zip(&row.ratios) {
            record[*col] = to_value(r);
        }
        if global.approx {
            cells.extend(
                row.ratios
                    .iter()
                    .map(|r| r.as_ref().map(approx_text).unwrap_or_default()),
            );
            let approx_map: Map<String, Value> = RATIO_COLUMNS
                .iter()
                .zip(&row.ratios)
                .map(|(c, r)| (c.to_string(), r.as_ref().map_or(Value::Null, approx)))
                .collect();
            record["approx"] = Value::Object(approx_map);
        }
        table.push(cells);
        records.push(record);
    }
    Ok(Output::ok(Value::Array(records)).with_table(table))
}
