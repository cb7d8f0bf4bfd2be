mod common;

use common::{brute_isomorphic, plain};
use mixed_moore::canon::canonical_form;
use mixed_moore::io::{parse_certificate, write_certificate};
use mixed_moore::search::{enumerate, find_almost_moore, SearchError, SearchOptions, SearchSpec};
use mixed_moore::spectral::graph_char_poly;

#[test]
fn determinism_across_threads_and_branch_order() {
    let spec = SearchSpec::count_all(1, 1, 4, 12);
    let base = enumerate(
        spec,
        &SearchOptions {
            threads: Some(1),
            ..SearchOptions::default()
        },
    )
    .unwrap();
    for (threads, reverse) in [
        (Some(4), false),
        (Some(2), true),
        (Some(1), true),
        (None, false),
    ] {
        let opts = SearchOptions {
            threads,
            reverse_branch_order: reverse,
            ..SearchOptions::default()
        };
        let cert = enumerate(spec, &opts).unwrap();
        assert_eq!(cert.representatives, base.representatives);
        assert_eq!(cert.converse, base.converse);
        assert_eq!(
            write_certificate(&cert).lines().count(),
            write_certificate(&base).lines().count()
        );
    }
}

#[test]
fn one_one_structure_on_all_outputs() {
    for (k, n) in [(3, 8), (4, 12), (4, 10), (5, 12), (3, 6)] {
        let cert = enumerate(SearchSpec::count_all(1, 1, k, n), &SearchOptions::default()).unwrap();
        for g in &cert.representatives {
            // edges: a perfect matching
            let mut matched = vec![0; n];
            for &(u, v) in g.edges() {
                matched[u] += 1;
                matched[v] += 1;
            }
            assert!(matched.iter().all(|&c| c == 1));
            // arcs: a fixed-point-free permutation alternating between the parts, no digons
            let (x, _) = g.bipartition().unwrap();
            let mut head = vec![usize::MAX; n];
            for &(u, v) in g.arcs() {
                assert_eq!(head[u], usize::MAX);
                head[u] = v;
                assert_ne!(x.contains(&u), x.contains(&v));
                assert!(!g.has_arc(v, u));
            }
            let mut sorted = head.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..n).collect::<Vec<_>>());
        }
    }
}

#[test]
fn isomorph_rejection_is_consistent_with_spectra() {
    let cert = enumerate(
        SearchSpec::count_all(1, 1, 4, 12),
        &SearchOptions::default(),
    )
    .unwrap();
    let forms = cert.forms();
    assert!(forms.windows(2).all(|w| w[0] < w[1]));
    for (i, g) in cert.representatives.iter().enumerate() {
        assert_eq!(canonical_form(g), forms[i]);
        for h in &cert.representatives[i + 1..] {
            assert!(!brute_isomorphic(&plain(g), &plain(h)));
        }
    }
    // converse map is an involution and agrees with brute force
    for (i, &j) in cert.converse.iter().enumerate() {
        assert_eq!(cert.converse[j], i);
        assert!(brute_isomorphic(
            &plain(&cert.representatives[i].converse()),
            &plain(&cert.representatives[j])
        ));
        assert_eq!(
            graph_char_poly(&cert.representatives[i]),
            graph_char_poly(&cert.representatives[j])
        );
    }
}

#[test]
fn almost_moore_orders() {
    let cert = find_almost_moore(1, 1, 4, &SearchOptions::default()).unwrap();
    assert_eq!(cert.spec.n, 12);
    assert!(cert.count() >= 2);
    let cert = find_almost_moore(1, 1, 3, &SearchOptions::default()).unwrap();
    assert_eq!(cert.spec.n, 6);
    assert!(matches!(
        find_almost_moore(1, 2, 3, &SearchOptions::default()),
        Err(SearchError::BudgetExceeded(_))
    ));
    let raised = SearchOptions {
        max_order: 16,
        max_nodes: 1_000,
        ..SearchOptions::default()
    };
    assert!(matches!(
        find_almost_moore(1, 2, 3, &raised),
        Err(SearchError::BudgetExceeded(_))
    ));
}

#[test]
fn certificates_survive_a_round_trip() {
    for (k, n) in [(3, 8), (4, 12), (4, 14)] {
        let cert = enumerate(SearchSpec::count_all(1, 1, k, n), &SearchOptions::default()).unwrap();
        let text = write_certificate(&cert);
        assert_eq!(parse_certificate(&text).unwrap(), cert);
    }
}
