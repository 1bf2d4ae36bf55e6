//! Acceptance gate. Runs every criterion at its stated tolerance (exact
//! equality throughout) and prints one PASS/FAIL line per criterion.
//! Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use linkadmit::admission::Subject;
use linkadmit::admission::{
    check_clique, check_clique_line_scaled, check_degree, check_mixed, check_row, check_row2, check_row2_designated,
    check_shannon, degree_lhs, mixed_lhs, row2_lhs, row_lhs,
};
use linkadmit::generators::{
    center_with_cliques, k4_minus_e, line_graph, random_connected_graph, random_graph, random_multigraph,
    random_network, random_points, rng, star, unit_disk,
};
use linkadmit::invariants::{
    b_bound, beta_mixed_predicted, beta_row2_predicted, chromatic_index_bound, max_degree, sigma,
};
use linkadmit::oracle::{beta_degree, beta_mixed, beta_row, beta_row2, chi_f, feasible, imp_estimate, ImpOptions};
use linkadmit::schedule::validate_schedule;
use linkadmit::scheduler::{schedule_degree_or_mixed, schedule_row, schedule_row2, schedule_row2_designated};
use linkadmit::{q, ConflictGraph, DemandVector, Error, Limits, LinkSpec, NetworkGraph, Rational, Schedule};

type Outcome = Result<String, String>;
type Attempt = Result<(bool, Option<Schedule>), Error>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn limits() -> Limits {
    Limits::default()
}

fn one() -> Rational {
    Rational::one()
}

fn sigma_of(g: &ConflictGraph) -> Rational {
    Rational::from(sigma(g, &limits()).unwrap().0)
}

// ---------------------------------------------------------------------------
// Graph sweep: every connected graph on 2..=6 vertices up to isomorphism, plus
// seeded random connected 7-vertex graphs.

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    pairs
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn mask_connected(n: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    let mut reach = 1u32;
    loop {
        let mut next = reach;
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 && (reach >> i & 1 == 1 || reach >> j & 1 == 1) {
                next |= 1 << i | 1 << j;
            }
        }
        if next == reach {
            return reach == (1u32 << n) - 1;
        }
        reach = next;
    }
}

/// Connected graphs on exactly `n` vertices, one per isomorphism class.
fn connected_graphs_up_to_iso(n: usize) -> Vec<ConflictGraph> {
    let pairs = pair_index(n);
    let mut slot = vec![vec![0usize; n]; n];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        slot[i][j] = k;
        slot[j][i] = k;
    }
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        if !mask_connected(n, &pairs, mask) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .fold(0u32, |m, (_, &(i, j))| m | 1 << slot[p[i]][p[j]])
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| canon >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let ids = (0..n).map(|i| format!("v{i}")).collect();
            out.push(ConflictGraph::from_index_edges(ids, &edges).unwrap());
        }
    }
    out
}

struct Sweep {
    small: Vec<ConflictGraph>,
    random7: Vec<ConflictGraph>,
}

impl Sweep {
    fn build() -> Self {
        let small: Vec<ConflictGraph> = (2..=6).flat_map(connected_graphs_up_to_iso).collect();
        let mut r = rng(7_000);
        let random7 = (0..500)
            .map(|_| {
                let p = r.random_range(0.25..0.75);
                random_connected_graph(7, p, r.random())
            })
            .collect();
        Sweep { small, random7 }
    }

    fn all(&self) -> impl Iterator<Item = &ConflictGraph> {
        self.small.iter().chain(&self.random7)
    }

    fn len(&self) -> usize {
        self.small.len() + self.random7.len()
    }
}

fn describe(g: &ConflictGraph) -> String {
    let edges: Vec<String> = g
        .edges()
        .iter()
        .map(|&(u, v)| format!("{}-{}", g.id(u), g.id(v)))
        .collect();
    format!("n={} edges=[{}]", g.vertex_count(), edges.join(","))
}

// ---------------------------------------------------------------------------

fn criterion_1(sweep: &Sweep) -> Outcome {
    for g in sweep.all() {
        let beta = beta_row(g, &limits()).map_err(|e| e.to_string())?.value;
        let s = sigma_of(g);
        if beta != s {
            return Err(format!("beta_row {beta} != sigma {s} on {}", describe(g)));
        }
    }
    // The single vertex: the row test is exact there, so the ratio is 1 while
    // the induced star number is 0.
    let k1 = star(0);
    let k1_beta = beta_row(&k1, &limits()).map_err(|e| e.to_string())?.value;
    if k1_beta != 1 || sigma_of(&k1) != 0 {
        return Err(format!("K1: beta_row {k1_beta}"));
    }
    Ok(format!(
        "{} graphs ({} iso classes on 2..6 vertices + {} random on 7); K1 gives 1 = max(1, sigma)",
        sweep.len(),
        sweep.small.len(),
        sweep.random7.len()
    ))
}

fn criterion_2(sweep: &Sweep) -> Outcome {
    for g in sweep.all().chain([&star(0)]) {
        let res = beta_degree(g, &limits()).map_err(|e| e.to_string())?;
        let expected = Rational::from(max_degree(g) + 1);
        if res.value != expected {
            return Err(format!("beta_degree {} != {} on {}", res.value, expected, describe(g)));
        }
        let v = g.index_of(&res.vertex).unwrap();
        if g.degree(v) != max_degree(g) {
            return Err(format!("arg-max vertex {} is not of maximum degree", res.vertex));
        }
    }
    Ok(format!("{} graphs plus K1", sweep.len()))
}

fn criterion_3(sweep: &Sweep) -> Outcome {
    for g in sweep.all() {
        let m = beta_mixed(g, &limits()).map_err(|e| e.to_string())?.value;
        let s = sigma_of(g);
        let lower = (&one() + &s) / Rational::from(2i64);
        if m < lower || m > s {
            return Err(format!("beta_mixed {m} outside [{lower}, {s}] on {}", describe(g)));
        }
    }
    for eta in 1..=8usize {
        let m = beta_mixed(&star(eta), &limits()).map_err(|e| e.to_string())?.value;
        let expected = Rational::from(1 + eta) / Rational::from(2i64);
        if m != expected {
            return Err(format!("star K1,{eta}: {m} != {expected}"));
        }
    }
    let families: Vec<Vec<usize>> = vec![vec![4], vec![1; 5], vec![3, 1], vec![5, 2, 1]];
    for sizes in &families {
        let eta = Rational::from(sizes.len());
        let total = Rational::from(sizes.iter().sum::<usize>());
        let expected = &eta * (&one() + &total) / (&eta + &total);
        let m = beta_mixed(&center_with_cliques(sizes), &limits())
            .map_err(|e| e.to_string())?
            .value;
        if m != expected {
            return Err(format!("family {sizes:?}: {m} != {expected}"));
        }
    }
    Ok(format!(
        "{} sweep graphs, stars 1..8, families {:?}",
        sweep.len(),
        families
    ))
}

fn criterion_4(sweep: &Sweep) -> Outcome {
    let mut applicable = 0;
    for g in sweep.all() {
        if let Some(predicted) = beta_mixed_predicted(g) {
            applicable += 1;
            let m = beta_mixed(g, &limits()).map_err(|e| e.to_string())?.value;
            if m != predicted {
                return Err(format!("beta_mixed {m} != predicted {predicted} on {}", describe(g)));
            }
        }
    }
    Ok(format!("{applicable} applicable graphs of {}", sweep.len()))
}

fn criterion_5() -> Outcome {
    let m = beta_mixed(&k4_minus_e(), &limits()).map_err(|e| e.to_string())?.value;
    if m == q(8, 5) {
        Ok("beta_mixed(K4-e) = 8/5".into())
    } else {
        Err(format!("beta_mixed(K4-e) = {m}"))
    }
}

fn criterion_6(sweep: &Sweep) -> Outcome {
    let mut eligible = 0;
    for g in sweep.all() {
        if g.is_complete() || g.is_odd_cycle() {
            continue;
        }
        eligible += 1;
        let b = beta_row2(g, &limits()).map_err(|e| e.to_string())?.value;
        let s = sigma_of(g);
        if b != s && b != &s - &one() {
            return Err(format!(
                "beta_row2 {b} not in {{sigma, sigma-1}} (sigma {s}) on {}",
                describe(g)
            ));
        }
        let predicted = beta_row2_predicted(g, &limits()).map_err(|e| e.to_string())?;
        if b != predicted {
            return Err(format!("beta_row2 {b} != predicted {predicted} on {}", describe(g)));
        }
    }
    for d in 2..=6usize {
        let b = beta_row2(&star(d), &limits()).map_err(|e| e.to_string())?.value;
        if b != Rational::from(d - 1) {
            return Err(format!("star K1,{d}: beta_row2 {b}"));
        }
    }
    Ok(format!("{eligible} eligible graphs, stars 2..6"))
}

// ---------------------------------------------------------------------------
// Scheduler soundness.

fn random_demands(r: &mut ChaCha8Rng, g: &ConflictGraph) -> Vec<Rational> {
    (0..g.vertex_count()).map(|_| q(r.random_range(0..=20), 20)).collect()
}

/// Scales `raw` so that the largest left-hand side equals a random factor
/// near 1 (about two thirds of instances land at or below 1).
fn scale_to_boundary(r: &mut ChaCha8Rng, values: &[Rational], worst: Rational) -> Option<Vec<Rational>> {
    if !worst.is_positive() {
        return None;
    }
    let target = [q(1, 2), q(3, 4), q(1, 1), q(1, 1), q(9, 8), q(3, 2)][r.random_range(0..6)].clone();
    let factor = target / worst;
    Some(values.iter().map(|x| x * &factor).collect())
}

fn validated(g: &ConflictGraph, tau: &DemandVector, s: &Schedule) -> Result<(), String> {
    let verdict = validate_schedule(g, tau, &one(), s).map_err(|e| e.to_string())?;
    if verdict.is_ok() {
        Ok(())
    } else {
        Err(format!(
            "invalid schedule on {}: {:?}",
            describe(g),
            verdict.violations()
        ))
    }
}

type Lhs = fn(&ConflictGraph, &[Rational], usize) -> Rational;

fn soundness_sweep(
    name: &str,
    seed: u64,
    lhs: Lhs,
    eligible: fn(&ConflictGraph) -> bool,
    run: &dyn Fn(&ConflictGraph, &DemandVector) -> Attempt,
) -> Result<usize, String> {
    let mut r = rng(seed);
    let mut passed = 0;
    let mut instances = 0;
    while instances < 1000 {
        let n = r.random_range(2..=12);
        let p = r.random_range(0.15..0.7);
        let g = random_connected_graph(n, p, r.random());
        if !eligible(&g) {
            continue;
        }
        let raw = random_demands(&mut r, &g);
        let worst = (0..n).map(|v| lhs(&g, &raw, v)).max().unwrap();
        let Some(values) = scale_to_boundary(&mut r, &raw, worst) else {
            continue;
        };
        instances += 1;
        let tau = DemandVector::from_slice(&g, &values);
        match run(&g, &tau) {
            Ok((true, Some(s))) => {
                validated(&g, &tau, &s).map_err(|e| format!("{name}: {e}"))?;
                passed += 1;
            }
            Ok((false, None)) => {}
            Ok(_) => unreachable!(),
            Err(e) => return Err(format!("{name}: {e} on {}", describe(&g))),
        }
    }
    Ok(passed)
}

/// Runs the check and, when it passes, the scheduler; a failing check must
/// make the scheduler refuse.
fn check_then_schedule(
    report: Result<linkadmit::admission::ConditionReport, Error>,
    schedule: impl FnOnce() -> Result<Schedule, Error>,
) -> Attempt {
    let report = report?;
    let attempt = schedule();
    match (report.overall, attempt) {
        (true, Ok(s)) => Ok((true, Some(s))),
        (true, Err(e)) => Err(e),
        (false, Err(Error::ConditionFailed(_))) => Ok((false, None)),
        (false, other) => Err(Error::Internal(format!(
            "scheduler accepted a failing instance: {other:?}"
        ))),
    }
}

fn criterion_7(sweep: &Sweep) -> Outcome {
    let any = |_: &ConflictGraph| true;
    let row2_ok = |g: &ConflictGraph| !g.is_complete() && !g.is_odd_cycle();
    let mut counts = Vec::new();

    counts.push((
        "row",
        soundness_sweep("row", 71, row_lhs, any, &|g, t| {
            check_then_schedule(check_row(g, t, &one()), || schedule_row(g, t, &one(), None))
        })?,
    ));
    counts.push((
        "degree",
        soundness_sweep("degree", 72, degree_lhs, any, &|g, t| {
            // The degree scheduler is the mixed one; a degree pass implies a
            // mixed pass, so only passing instances reach it here.
            let report = check_degree(g, t, &one())?;
            if report.overall {
                Ok((true, Some(schedule_degree_or_mixed(g, t, &one())?)))
            } else {
                Ok((false, None))
            }
        })?,
    ));
    counts.push((
        "mixed",
        soundness_sweep("mixed", 73, mixed_lhs, any, &|g, t| {
            check_then_schedule(check_mixed(g, t, &one()), || schedule_degree_or_mixed(g, t, &one()))
        })?,
    ));
    counts.push((
        "row2",
        soundness_sweep("row2", 74, row2_lhs, row2_ok, &|g, t| {
            check_then_schedule(check_row2(g, t, &one()), || schedule_row2(g, t, &one()))
        })?,
    ));
    counts.push((
        "row2-designated",
        soundness_sweep("row2-designated", 75, row2_lhs, any, &|g, t| {
            let designated = g.id(0).to_string();
            check_then_schedule(check_row2_designated(g, t, &one(), &designated), || {
                schedule_row2_designated(g, t, &one(), &designated)
            })
        })?,
    ));

    // Full case analysis of the strengthened row scheduler on small graphs.
    let mut r = rng(76);
    let mut exhaustive = 0;
    for g in sweep.small.iter().filter(|g| !g.is_complete() && !g.is_odd_cycle()) {
        let n = g.vertex_count();
        let mut trials: Vec<Vec<Rational>> = vec![vec![one(); n]];
        for _ in 0..5 {
            trials.push(random_demands(&mut r, g));
        }
        for raw in trials {
            let worst = (0..n).map(|v| row2_lhs(g, &raw, v)).max().unwrap();
            if !worst.is_positive() {
                continue;
            }
            let values: Vec<Rational> = raw.iter().map(|x| x / &worst).collect();
            let tau = DemandVector::from_slice(g, &values);
            let s = schedule_row2(g, &tau, &one()).map_err(|e| format!("row2 on {}: {e}", describe(g)))?;
            validated(g, &tau, &s)?;
            exhaustive += 1;
        }
    }
    let summary: Vec<String> = counts.iter().map(|(n, c)| format!("{n} {c}/1000 passing")).collect();
    Ok(format!(
        "{}; row2 case analysis on {exhaustive} boundary instances over all eligible graphs on 2..6 vertices",
        summary.join(", ")
    ))
}

fn criterion_8() -> Outcome {
    let mut r = rng(80);
    for _ in 0..1000 {
        let n = r.random_range(1..=8);
        let g = random_graph(n, r.random_range(0.2..0.8), r.random());
        let raw = random_demands(&mut r, &g);
        let x = DemandVector::from_slice(&g, &raw);
        let chi = chi_f(&g, &x, &limits()).map_err(|e| e.to_string())?.value;
        let tau = if chi.is_positive() { x.scaled(&chi.recip()) } else { x };
        if !feasible(&g, &tau, &one(), &limits()).map_err(|e| e.to_string())? {
            return Err("scaled instance is not feasible".into());
        }
        let report = check_clique(&g, &tau, &one(), &one(), &limits()).map_err(|e| e.to_string())?;
        if !report.overall {
            return Err(format!(
                "feasible instance fails clique constraints on {}",
                describe(&g)
            ));
        }
    }
    Ok("1000 instances at the feasibility boundary".into())
}

fn link_demands(n: &NetworkGraph, values: &[Rational]) -> DemandVector {
    DemandVector::from_pairs(n.link_ids().into_iter().zip(values.iter().cloned()))
}

fn random_link_values(r: &mut ChaCha8Rng, n: &NetworkGraph) -> Vec<Rational> {
    (0..n.links().len()).map(|_| q(r.random_range(0..=20), 20)).collect()
}

fn criterion_9() -> Outcome {
    let mut r = rng(90);
    for _ in 0..200 {
        let net = random_network(r.random_range(2..=8), r.random_range(0.2..0.9), r.random());
        let lg = line_graph(&net);
        let s = sigma(&lg, &limits()).map_err(|e| e.to_string())?.0;
        if s > 2 {
            return Err(format!("line graph with sigma {s}"));
        }
    }

    let mut passing = 0;
    let mut shannon_passes = 0;
    let mut shannon_gaps = 0;
    let mut first_gap = None;
    for _ in 0..500 {
        let net = random_network(r.random_range(2..=7), r.random_range(0.3..0.8), r.random());
        if net.links().is_empty() {
            continue;
        }
        let lg = line_graph(&net);
        let raw = random_link_values(&mut r, &net);
        let report = check_clique_line_scaled(&net, &link_demands(&net, &raw), &one()).map_err(|e| e.to_string())?;
        let worst = report.rows.iter().map(|row| &row.lhs / &q(4, 5)).max().unwrap();
        let Some(values) = scale_to_boundary(&mut r, &raw, worst) else {
            continue;
        };
        let tau = link_demands(&net, &values);
        let line_scaled = check_clique_line_scaled(&net, &tau, &one()).map_err(|e| e.to_string())?;
        if line_scaled.overall {
            passing += 1;
            if !feasible(&lg, &tau, &one(), &limits()).map_err(|e| e.to_string())? {
                return Err(format!("line-scaled pass but infeasible on {}", describe(&lg)));
            }
        }
        if check_shannon(&net, &tau, &one()).map_err(|e| e.to_string())?.overall {
            shannon_passes += 1;
            let node_part = line_scaled
                .rows
                .iter()
                .filter(|row| matches!(row.subject, Subject::Node(_)))
                .all(|row| row.passes);
            if !node_part {
                return Err("shannon pass without the 4/5 node test passing".into());
            }
            if !line_scaled.overall {
                shannon_gaps += 1;
                let failed: Vec<String> = line_scaled
                    .failures()
                    .map(|row| format!("{} = {}", row.subject, row.lhs))
                    .collect();
                first_gap.get_or_insert_with(|| failed.join(", "));
            }
        }
    }

    // Three links of 1/3 on a node triangle: every node carries 2/3, the
    // triangle carries 1 > 4/5.
    let triangle = NetworkGraph::new(
        &["u", "v", "w"],
        vec![
            LinkSpec::new("u", "v"),
            LinkSpec::new("v", "w"),
            LinkSpec::new("u", "w"),
        ],
    )
    .map_err(|e| e.to_string())?;
    let third = DemandVector::from_pairs(triangle.link_ids().into_iter().map(|id| (id, q(1, 3))));
    let triangle_gap = check_shannon(&triangle, &third, &one())
        .map_err(|e| e.to_string())?
        .overall
        && !check_clique_line_scaled(&triangle, &third, &one())
            .map_err(|e| e.to_string())?
            .overall;

    let opts = ImpOptions::default();
    let mut imp_max = Rational::zero();
    let mut bipartite = 0;
    let mut networks = 0;
    for k in 0..60 {
        let net = random_network(r.random_range(3..=8), r.random_range(0.2..0.5), r.random());
        if net.links().is_empty() {
            continue;
        }
        networks += 1;
        let lg = line_graph(&net);
        let est = imp_estimate(&lg, &ImpOptions { seed: k, ..opts }, &limits()).map_err(|e| e.to_string())?;
        if est.ratio > q(5, 4) {
            return Err(format!("imp estimate {} above 5/4 on {}", est.ratio, describe(&lg)));
        }
        if net.is_bipartite() {
            bipartite += 1;
            if est.ratio != 1 {
                return Err(format!("imp estimate {} on a bipartite network", est.ratio));
            }
        }
        imp_max = imp_max.max(est.ratio);
    }
    let summary = format!(
        "200 networks sigma <= 2; {passing} line-scaled passes all feasible; imp max {imp_max} over {networks} networks ({bipartite} bipartite at 1); {shannon_passes} shannon passes all pass the 4/5 node test"
    );
    if shannon_gaps == 0 && !triangle_gap {
        Ok(summary)
    } else {
        Err(format!(
            "{summary}; but {shannon_gaps} shannon passes fail the 4/5 triangle test (first: {}); triangle network at 1/3 per link passes shannon and fails line-scaled: {triangle_gap}",
            first_gap.unwrap_or_default()
        ))
    }
}

fn criterion_10() -> Outcome {
    let mut r = rng(100);
    let radius = q(1, 1);
    for _ in 0..500 {
        let n = r.random_range(5..=25);
        let pts = random_points(n, &q(8, 1), r.random());
        let g = unit_disk(&pts, &radius);
        let s = sigma(&g, &limits()).map_err(|e| e.to_string())?.0;
        if s > 5 {
            return Err(format!("unit disk graph with sigma {s}"));
        }
    }
    let scale = q(10, 21);
    let mut passing = 0;
    let mut instances = 0;
    while instances < 200 {
        let n = r.random_range(3..=12);
        let pts = random_points(n, &q(6, 1), r.random());
        let g = unit_disk(&pts, &radius);
        let raw = random_demands(&mut r, &g);
        let x = DemandVector::from_slice(&g, &raw);
        let report = check_clique(&g, &x, &one(), &one(), &limits()).map_err(|e| e.to_string())?;
        let worst = report.rows.iter().map(|row| &row.lhs / &scale).max().unwrap();
        let Some(values) = scale_to_boundary(&mut r, &raw, worst) else {
            continue;
        };
        instances += 1;
        let tau = DemandVector::from_slice(&g, &values);
        if check_clique(&g, &tau, &one(), &scale, &limits())
            .map_err(|e| e.to_string())?
            .overall
        {
            passing += 1;
            if !feasible(&g, &tau, &one(), &limits()).map_err(|e| e.to_string())? {
                return Err(format!("10/21-scaled clique pass but infeasible on {}", describe(&g)));
            }
        }
    }
    Ok(format!(
        "500 point sets sigma <= 5; {passing}/200 scaled-clique passes all feasible"
    ))
}

fn criterion_11() -> Outcome {
    let g = ConflictGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).map_err(|e| e.to_string())?;
    let tau = |a: Rational, b: Rational, c: Rational| DemandVector::from_pairs([("a", a), ("b", b), ("c", c)]);
    let pass = |f: fn(
        &ConflictGraph,
        &DemandVector,
        &Rational,
    ) -> linkadmit::Result<linkadmit::admission::ConditionReport>,
                t: &DemandVector| f(&g, t, &one()).map(|r| r.overall).map_err(|e| e.to_string());

    let t = tau(q(1, 2), q(3, 10), q(1, 2));
    if !(pass(check_degree, &t)? && !pass(check_row, &t)?) {
        return Err("(0.3,0.5,0.5) should pass degree and fail row".into());
    }
    let t = tau(q(6, 10), q(3, 10), q(6, 10));
    if !(!pass(check_row, &t)? && !pass(check_degree, &t)? && pass(check_mixed, &t)?) {
        return Err("(0.3,0.6,0.6) should fail row and degree and pass mixed".into());
    }
    let t = tau(q(1, 3), q(1, 3) + q(1, 100), q(1, 3));
    if !(feasible(&g, &t, &one(), &limits()).map_err(|e| e.to_string())? && !pass(check_mixed, &t)?) {
        return Err("(1/3+1/100,1/3,1/3) should be feasible and fail mixed".into());
    }
    // 0.9 with two 0.1s fails the row test wherever the 0.9 sits.
    for big in 0..3 {
        let mut v = vec![q(1, 10); 3];
        v[big] = q(9, 10);
        let t = DemandVector::from_slice(&g, &v);
        if pass(check_row, &t)? {
            return Err("a (0.9,0.1,0.1) placement passed the row test".into());
        }
    }
    let t = tau(q(1, 10), q(1, 10), q(8, 10));
    if !(pass(check_row, &t)? && !pass(check_degree, &t)?) {
        return Err("(0.8,0.1,0.1) should pass row and fail degree".into());
    }
    Ok("degree-only, mixed-only and feasible-but-not-mixed witnesses hold; (0.9,0.1,0.1) fails row in every placement; (0.8,0.1,0.1) passes row and fails degree".into())
}

fn criterion_12() -> Outcome {
    let mut r = rng(120);
    for _ in 0..1000 {
        let n = r.random_range(1..=9);
        let g = random_graph(n, r.random_range(0.1..0.9), r.random());
        let x = DemandVector::from_slice(&g, &random_demands(&mut r, &g));
        let chi = chi_f(&g, &x, &limits()).map_err(|e| e.to_string())?.value;
        let b = b_bound(&g, &x).map_err(|e| e.to_string())?;
        if chi > b {
            return Err(format!("chi_f {chi} > B {b} on {}", describe(&g)));
        }
    }
    for d in 2..=6usize {
        let g = star(d);
        let mut x = DemandVector::uniform(&g, one());
        x.set("v0", Rational::zero());
        let ratio =
            b_bound(&g, &x).map_err(|e| e.to_string())? / chi_f(&g, &x, &limits()).map_err(|e| e.to_string())?.value;
        if ratio != Rational::from(d) || ratio != sigma_of(&g) {
            return Err(format!("star K1,{d}: ratio {ratio}"));
        }
    }
    Ok("1000 weighted instances chi_f <= B; stars 2..6 attain B/chi_f = d = sigma".into())
}

fn criterion_13() -> Outcome {
    let mut r = rng(130);
    let mut worst_gap = None::<Rational>;
    for _ in 0..100 {
        let net = random_multigraph(r.random_range(2..=6), r.random_range(0.3..0.9), 4, r.random());
        let lg = line_graph(&net);
        let x = DemandVector::from_pairs(
            net.links()
                .iter()
                .map(|l| (l.id.clone(), Rational::from(l.multiplicity as usize))),
        );
        let chi = chi_f(&lg, &x, &limits()).map_err(|e| e.to_string())?.value;
        let bound = chromatic_index_bound(&net);
        if chi > bound {
            return Err(format!("chi_f {chi} > bound {bound}"));
        }
        let gap = bound - chi;
        worst_gap = Some(worst_gap.map_or(gap.clone(), |w| w.min(gap)));
    }
    Ok(format!(
        "100 multigraphs; smallest slack {}",
        worst_gap.unwrap_or_default()
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let sweep = Sweep::build();
    let criteria: Vec<Criterion<'_>> = vec![
        ("1 beta_row equals sigma", Box::new(|| criterion_1(&sweep))),
        ("2 beta_degree equals max degree + 1", Box::new(|| criterion_2(&sweep))),
        ("3 mixed ratio bounds and families", Box::new(|| criterion_3(&sweep))),
        ("4 mixed ratio closed form", Box::new(|| criterion_4(&sweep))),
        ("5 K4-e mixed ratio 8/5", Box::new(criterion_5)),
        ("6 strengthened row ratio", Box::new(|| criterion_6(&sweep))),
        ("7 scheduler soundness", Box::new(|| criterion_7(&sweep))),
        ("8 clique necessity", Box::new(criterion_8)),
        ("9 line-graph claims", Box::new(criterion_9)),
        ("10 unit-disk claims", Box::new(criterion_10)),
        ("11 P3 incomparability witnesses", Box::new(criterion_11)),
        ("12 neighborhood bound", Box::new(criterion_12)),
        ("13 chromatic index bound", Box::new(criterion_13)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.1}s): {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
