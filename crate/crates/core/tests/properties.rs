//! Property tests over random small instances: locality, monotonicity,
//! soundness of every sufficient test, necessity of clique constraints and
//! the implication lattice between tests.

use std::collections::BTreeSet;

use proptest::prelude::*;

use linkadmit::admission::{
    check_clique, check_degree, check_mixed, check_row, check_row2, check_row2_designated, degree_lhs, mixed_lhs,
    row2_lhs, row_lhs, ConditionReport,
};
use linkadmit::generators::{center_with_cliques, line_graph, random_network};
use linkadmit::invariants::{b_bound, beta_mixed_predicted, line_graph_cliques, maximal_cliques};
use linkadmit::oracle::{chi_f, feasible, t_clique};
use linkadmit::schedule::{set_form_to_intervals, validate_schedule};
use linkadmit::scheduler::{schedule_row, schedule_row2};
use linkadmit::{q, ConflictGraph, DemandVector, Limits, Rational};

fn limits() -> Limits {
    Limits::default()
}

fn one() -> Rational {
    Rational::one()
}

/// Graph on `1..=max_n` vertices with independent coin-flip edges, plus a
/// demand per vertex in twelfths.
fn instance(max_n: usize) -> impl Strategy<Value = (ConflictGraph, Vec<Rational>)> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            prop::collection::vec(any::<bool>(), pairs),
            prop::collection::vec(0i64..=12, n),
        )
            .prop_map(move |(mask, raw)| {
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if mask[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                let ids = (0..n).map(|i| format!("v{i}")).collect();
                let g = ConflictGraph::from_index_edges(ids, &edges).unwrap();
                (g, raw.into_iter().map(|x| q(x, 12)).collect())
            })
    })
}

fn connected_instance(max_n: usize) -> impl Strategy<Value = (ConflictGraph, Vec<Rational>)> {
    instance(max_n).prop_filter("connected", |(g, _)| g.is_connected())
}

type Lhs = fn(&ConflictGraph, &[Rational], usize) -> Rational;
type Check = fn(&ConflictGraph, &DemandVector, &Rational) -> linkadmit::Result<ConditionReport>;

/// Rescales `values` so the largest left-hand side is exactly 1.
fn at_boundary(g: &ConflictGraph, values: &[Rational], lhs: Lhs) -> Option<Vec<Rational>> {
    let worst = (0..g.vertex_count()).map(|v| lhs(g, values, v)).max()?;
    worst.is_positive().then(|| values.iter().map(|x| x / &worst).collect())
}

fn closed_neighborhood(g: &ConflictGraph, v: usize) -> BTreeSet<usize> {
    g.neighbors(v).iter().copied().chain([v]).collect()
}

fn row_pass(report: &ConditionReport, id: &str) -> bool {
    report.rows.iter().find(|r| r.subject.to_string() == id).unwrap().passes
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn vertex_tests_are_local((g, values) in instance(7), v in 0usize..7, noise in prop::collection::vec(0i64..=24, 7)) {
        prop_assume!(v < g.vertex_count());
        let keep = closed_neighborhood(&g, v);
        let perturbed: Vec<Rational> = values
            .iter()
            .enumerate()
            .map(|(u, x)| if keep.contains(&u) { x.clone() } else { q(noise[u], 12) })
            .collect();
        for lhs in [row_lhs as Lhs, degree_lhs, mixed_lhs, row2_lhs] {
            prop_assert_eq!(lhs(&g, &values, v), lhs(&g, &perturbed, v));
        }
        let before = DemandVector::from_slice(&g, &values);
        let after = DemandVector::from_slice(&g, &perturbed);
        let id = g.id(v);
        prop_assert_eq!(
            row_pass(&check_mixed(&g, &before, &one()).unwrap(), id),
            row_pass(&check_mixed(&g, &after, &one()).unwrap(), id)
        );
    }

    #[test]
    fn clique_rows_are_local((g, values) in instance(7), noise in prop::collection::vec(0i64..=24, 7)) {
        let cliques = maximal_cliques(&g, &limits()).unwrap();
        let clique = &cliques[0];
        let perturbed: Vec<Rational> = values
            .iter()
            .enumerate()
            .map(|(u, x)| if clique.contains(&u) { x.clone() } else { q(noise[u], 12) })
            .collect();
        let lhs_of = |vals: &[Rational]| {
            let report = check_clique(&g, &DemandVector::from_slice(&g, vals), &one(), &one(), &limits()).unwrap();
            let ids: Vec<String> = clique.iter().map(|&v| g.id(v).to_string()).collect();
            let mut sorted = ids.clone();
            sorted.sort();
            report
                .rows
                .into_iter()
                .find(|r| r.subject.to_string() == format!("{{{}}}", sorted.join(",")))
                .unwrap()
                .lhs
        };
        prop_assert_eq!(lhs_of(&values), lhs_of(&perturbed));
    }

    #[test]
    fn passing_is_monotone((g, values) in instance(7), shrink in prop::collection::vec(0i64..=4, 7)) {
        let Some(boundary) = at_boundary(&g, &values, mixed_lhs) else { return Ok(()) };
        let smaller: Vec<Rational> = boundary.iter().zip(&shrink).map(|(x, &s)| x * &q(s, 4)).collect();
        let (big, small) = (DemandVector::from_slice(&g, &boundary), DemandVector::from_slice(&g, &smaller));
        for check in [check_row as Check, check_degree, check_mixed] {
            if check(&g, &big, &one()).unwrap().overall {
                prop_assert!(check(&g, &small, &one()).unwrap().overall);
            }
        }
        let cliques = check_clique(&g, &big, &one(), &one(), &limits()).unwrap();
        if cliques.overall {
            prop_assert!(check_clique(&g, &small, &one(), &one(), &limits()).unwrap().overall);
        }
    }

    #[test]
    fn implication_lattice((g, values) in instance(7)) {
        let tau = DemandVector::from_slice(&g, &values);
        let row = check_row(&g, &tau, &one()).unwrap().overall;
        let degree = check_degree(&g, &tau, &one()).unwrap().overall;
        let mixed = check_mixed(&g, &tau, &one()).unwrap().overall;
        prop_assert!(!row || mixed);
        prop_assert!(!degree || mixed);
        if let Ok(row2) = check_row2(&g, &tau, &one()) {
            prop_assert!(!row || row2.overall);
        }
    }

    #[test]
    fn sufficient_tests_are_sound((g, values) in instance(7)) {
        let cases: [(Lhs, Check); 3] = [(row_lhs, check_row), (degree_lhs, check_degree), (mixed_lhs, check_mixed)];
        for (lhs, check) in cases {
            let Some(boundary) = at_boundary(&g, &values, lhs) else { continue };
            let tau = DemandVector::from_slice(&g, &boundary);
            prop_assert!(check(&g, &tau, &one()).unwrap().overall);
            prop_assert!(feasible(&g, &tau, &one(), &limits()).unwrap());
        }
        if check_row2(&g, &DemandVector::new(), &one()).is_ok() {
            if let Some(boundary) = at_boundary(&g, &values, row2_lhs) {
                let tau = DemandVector::from_slice(&g, &boundary);
                prop_assert!(check_row2(&g, &tau, &one()).unwrap().overall);
                prop_assert!(feasible(&g, &tau, &one(), &limits()).unwrap());
            }
        }
    }

    #[test]
    fn designated_row2_is_sound((g, values) in connected_instance(7)) {
        let designated = g.id(0).to_string();
        let tau = DemandVector::from_slice(&g, &values);
        if check_row2_designated(&g, &tau, &one(), &designated).unwrap().overall {
            prop_assert!(feasible(&g, &tau, &one(), &limits()).unwrap());
        }
    }

    #[test]
    fn feasible_demands_meet_clique_constraints((g, values) in instance(7)) {
        let x = DemandVector::from_slice(&g, &values);
        let value = chi_f(&g, &x, &limits()).unwrap().value;
        prop_assume!(value.is_positive());
        let tau = x.scaled(&value.recip());
        prop_assert!(check_clique(&g, &tau, &one(), &one(), &limits()).unwrap().overall);
    }

    #[test]
    fn clique_value_bounds_chain((g, values) in instance(7)) {
        let x = DemandVector::from_slice(&g, &values);
        let chi = chi_f(&g, &x, &limits()).unwrap();
        prop_assert!(t_clique(&g, &x, &limits()).unwrap() <= chi.value);
        prop_assert!(chi.value <= b_bound(&g, &x).unwrap());
        // The certificate realizes as an interval schedule of length chi_f.
        if chi.value.is_positive() {
            let s = set_form_to_intervals(&g, &chi.schedule).unwrap();
            prop_assert!(validate_schedule(&g, &x, &chi.value, &s).unwrap().is_ok());
        }
    }

    #[test]
    fn schedulers_are_deterministic((g, values) in connected_instance(6)) {
        let Some(boundary) = at_boundary(&g, &values, row_lhs) else { return Ok(()) };
        let tau = DemandVector::from_slice(&g, &boundary);
        prop_assert_eq!(schedule_row(&g, &tau, &one(), None).unwrap(), schedule_row(&g, &tau, &one(), None).unwrap());
        if let Ok(s) = schedule_row2(&g, &tau, &one()) {
            prop_assert_eq!(s, schedule_row2(&g, &tau, &one()).unwrap());
        }
    }

    #[test]
    fn line_graph_cliques_match_generic_enumeration(nodes in 1usize..=8, p in 0.0f64..1.0, seed in any::<u64>()) {
        let net = random_network(nodes, p, seed);
        let lg = line_graph(&net);
        let as_ids = |family: Vec<Vec<usize>>| -> BTreeSet<BTreeSet<String>> {
            family.into_iter().map(|k| k.into_iter().map(|v| lg.id(v).to_string()).collect()).collect()
        };
        prop_assert_eq!(as_ids(line_graph_cliques(&net)), as_ids(maximal_cliques(&lg, &limits()).unwrap()));
    }

    #[test]
    fn center_plus_disjoint_cliques_has_a_closed_form(sizes in prop::collection::vec(1usize..=4, 1..=4)) {
        prop_assert!(beta_mixed_predicted(&center_with_cliques(&sizes)).is_some());
    }
}
