use std::sync::Arc;

use proptest::prelude::*;
use yoneda_core::corpus;
use yoneda_core::fincat::{
    discrete_category, free_category_on_dag, opposite, poset_category, validate_category, FiniteCategory,
};
use yoneda_core::functors::{direct_image, sub_functor, validate_functor, SetValuedFunctor, Variance};
use yoneda_core::Error;

/// Number of directed paths `u -> v` (the empty path when `u == v`), by plain DFS.
fn count_paths(edges: &[(usize, usize)], u: usize, v: usize) -> usize {
    let mut count = 0;
    let mut stack = vec![u];
    while let Some(w) = stack.pop() {
        if w == v {
            count += 1;
        }
        stack.extend(edges.iter().filter(|e| e.0 == w).map(|e| e.1));
    }
    count
}

#[test]
fn corpus_categories_validate_and_opposite_is_an_involution() {
    for named in corpus::categories() {
        let cat = &named.category;
        assert!(validate_category(&cat.to_table()).is_empty(), "{}", named.name);
        let op = opposite(cat);
        assert!(validate_category(&op.to_table()).is_empty(), "{} op", named.name);
        assert_eq!(&opposite(&op), cat.as_ref(), "{}", named.name);
    }
}

#[test]
fn poset_categories_are_thin() {
    for cat in [corpus::chain(5), corpus::commutative_square()] {
        for x in cat.object_indices() {
            for y in cat.object_indices() {
                assert!(cat.hom(x, y).len() <= 1);
            }
        }
    }
}

#[test]
fn corpus_hom_functors_and_subset_functors_are_lawful() {
    for named in corpus::categories() {
        let cat = &named.category;
        for a in cat.object_indices() {
            for variance in [Variance::Contravariant, Variance::Covariant] {
                let h = SetValuedFunctor::hom(cat, a, variance);
                assert!(validate_functor(cat, &h.to_file()).is_empty(), "{}", named.name);
                let sub = sub_functor(&h, 12).unwrap();
                assert!(sub.check_laws().is_empty(), "{}", named.name);
                assert!(validate_functor(cat, &sub.to_file()).is_empty(), "{}", named.name);
            }
        }
    }
}

#[test]
fn contravariant_functor_is_covariant_over_the_opposite() {
    for entry in corpus::triples().into_iter().filter(|e| e.functor.variance() == Variance::Contravariant) {
        let op = Arc::new(opposite(&entry.category));
        let dual = entry.functor.dual_over(&op).unwrap();
        assert_eq!(dual.variance(), Variance::Covariant);
        assert!(validate_functor(&op, &dual.to_file()).is_empty(), "{}", entry.label());
        // same tables, reread
        let mut file = entry.functor.to_file();
        file.variance = Variance::Covariant;
        assert!(validate_functor(&op, &file).is_empty(), "{}", entry.label());
    }
}

#[test]
fn direct_image_respects_composition_and_inclusion() {
    for entry in corpus::triples() {
        let f = &entry.functor;
        let cat = f.base();
        for first in cat.morphism_indices() {
            let src = f.action_source(first);
            let n = f.size(src);
            assert!(n <= 12);
            for mask in 0u32..1 << n {
                let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                let once = direct_image(f, first, &s).unwrap();
                assert!(once.len() <= s.len());
                // monotone: every subset of s maps into the image of s
                let sub: Vec<usize> = s.iter().copied().step_by(2).collect();
                let smaller = direct_image(f, first, &sub).unwrap();
                assert!(smaller.iter().all(|v| once.contains(v)));
                for second in cat.morphism_indices().filter(|&m| f.action_source(m) == f.action_target(first)) {
                    // F(second) after F(first) is F of the composite in the base
                    let composite = match f.variance() {
                        Variance::Covariant => cat.compose(second, first),
                        Variance::Contravariant => cat.compose(first, second),
                    }
                    .unwrap();
                    let twice = direct_image(f, second, &once).unwrap();
                    assert_eq!(direct_image(f, composite, &s).unwrap(), twice, "{}", entry.label());
                }
            }
        }
    }
}

#[test]
fn broken_builders_report_witnesses() {
    assert!(matches!(discrete_category(&["X", "X"]), Err(Error::InvalidId(_))));
    assert!(matches!(poset_category(&["a"], &[("a", "b")]), Err(Error::UnknownObject(_))));
    assert!(matches!(free_category_on_dag(&["u"], &[("id_u", "u", "u")]), Err(Error::ReservedId(_))));
}

fn dag_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..6).prop_flat_map(|n| {
        // orient every sampled pair low-to-high; loops are dropped
        let edge = (0..n, 0..n).prop_map(|(a, b)| (a.min(b), a.max(b)));
        let edges = prop::collection::vec(edge, 0..8).prop_map(|v| v.into_iter().filter(|e| e.0 < e.1).collect());
        (Just(n), edges)
    })
}

proptest! {
    #[test]
    fn free_category_hom_sizes_match_path_counts((n, edges) in dag_strategy()) {
        let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let named: Vec<(String, String, String)> = edges
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| (format!("e{k}"), vertices[a].clone(), vertices[b].clone()))
            .collect();
        let cat = free_category_on_dag(&vertices, &named).unwrap();
        prop_assert!(validate_category(&cat.to_table()).is_empty());
        for u in 0..n {
            for v in 0..n {
                let (x, y) = (cat.object(&vertices[u]).unwrap(), cat.object(&vertices[v]).unwrap());
                prop_assert_eq!(cat.hom(x, y).len(), count_paths(&edges, u, v));
            }
        }
    }

    #[test]
    fn poset_builder_output_validates((n, edges) in dag_strategy()) {
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let pairs: Vec<(String, String)> = edges.iter().map(|&(a, b)| (names[a].clone(), names[b].clone())).collect();
        let cat: FiniteCategory = poset_category(&names, &pairs).unwrap();
        prop_assert!(validate_category(&cat.to_table()).is_empty());
        prop_assert_eq!(&opposite(&opposite(&cat)), &cat);
        for x in cat.object_indices() {
            for y in cat.object_indices() {
                let reachable = count_paths(&edges, x.0, y.0) > 0;
                prop_assert_eq!(cat.hom(x, y).len(), usize::from(reachable));
            }
        }
    }
}
