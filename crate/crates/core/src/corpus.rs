//! The bundled corpus of small categories and functors that the property
//! tests and the acceptance suite sweep over.

use std::sync::Arc;

use crate::fincat::{discrete_category, free_category_on_dag, monoid_category, poset_category, FiniteCategory, Ob};
use crate::functors::{sub_functor, SetValuedFunctor, Variance, DEFAULT_MATERIALIZATION_CAP};

#[derive(Debug, Clone)]
pub struct NamedCategory {
    pub name: String,
    pub category: Arc<FiniteCategory>,
}

/// One `(category, A, F)` instance.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub category_name: String,
    pub category: Arc<FiniteCategory>,
    pub a: Ob,
    pub functor_name: String,
    pub functor: Arc<SetValuedFunctor>,
}

impl CorpusEntry {
    pub fn label(&self) -> String {
        format!(
            "{}/A={}/{}/{:?}",
            self.category_name,
            self.category.object_id(self.a),
            self.functor_name,
            self.functor.variance()
        )
    }
}

fn monoid_from_fn(elements: &[&str], product: impl Fn(usize, usize) -> usize) -> FiniteCategory {
    let mut table = Vec::new();
    for (i, &a) in elements.iter().enumerate() {
        for (j, &b) in elements.iter().enumerate() {
            table.push((a, b, elements[product(i, j)]));
        }
    }
    monoid_category(elements, &table, elements[0]).expect("valid monoid")
}

/// Cyclic group of order 2: `s ∘ s = e`.
pub fn z2() -> FiniteCategory {
    monoid_from_fn(&["e", "s"], |a, b| (a + b) % 2)
}

/// Cyclic group of order 3 generated by `r`.
pub fn z3() -> FiniteCategory {
    monoid_from_fn(&["e", "r", "rr"], |a, b| (a + b) % 3)
}

/// Two-element idempotent monoid: `z ∘ z = z`.
pub fn m2() -> FiniteCategory {
    monoid_from_fn(&["e", "z"], |a, b| a.max(b))
}

/// The chain `0 < 1 < … < n-1` as a thin category.
/// All four self-maps of a two-point set under composition: the identity
/// `e`, the swap `t` and the constants `c0`, `c1`.
pub fn t2() -> FiniteCategory {
    // each map as its values on (0, 1)
    let maps = [[0, 1], [1, 0], [0, 0], [1, 1]];
    monoid_from_fn(&["e", "t", "c0", "c1"], |g, f| {
        let composite = [maps[g][maps[f][0]], maps[g][maps[f][1]]];
        maps.iter().position(|m| *m == composite).expect("closed under composition")
    })
}

/// The chain `0 < 1 < … < n-1` as a thin category.
pub fn chain(n: usize) -> FiniteCategory {
    let elements: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let pairs: Vec<(String, String)> = (1..n).map(|i| ((i - 1).to_string(), i.to_string())).collect();
    poset_category(&elements, &pairs).expect("chains are posets")
}

pub fn discrete(n: usize) -> FiniteCategory {
    let names = ["X", "Y", "Z"];
    discrete_category(&names[..n]).expect("distinct names")
}

/// Free category on `u -f-> v -g-> w` and `u -h-> x -k-> w`; the two paths
/// `u -> w` stay distinct.
pub fn free_square() -> FiniteCategory {
    free_category_on_dag(&["u", "v", "w", "x"], &[("f", "u", "v"), ("g", "v", "w"), ("h", "u", "x"), ("k", "x", "w")])
        .expect("acyclic")
}

/// The commuting square: the poset `u < v < w`, `u < x < w`.
pub fn commutative_square() -> FiniteCategory {
    poset_category(&["u", "v", "w", "x"], &[("u", "v"), ("v", "w"), ("u", "x"), ("x", "w")]).expect("poset")
}

pub fn parallel_pair() -> FiniteCategory {
    free_category_on_dag(&["u", "v"], &[("f", "u", "v"), ("g", "u", "v")]).expect("acyclic")
}

pub fn categories() -> Vec<NamedCategory> {
    let mut out = Vec::new();
    let mut push = |name: String, cat: FiniteCategory| out.push(NamedCategory { name, category: Arc::new(cat) });
    for n in 1..=5 {
        push(format!("chain{n}"), chain(n));
    }
    for n in 1..=3 {
        push(format!("discrete{n}"), discrete(n));
    }
    push("z2".into(), z2());
    push("m2".into(), m2());
    push("z3".into(), z3());
    push("t2".into(), t2());
    push("free_square".into(), free_square());
    push("commutative_square".into(), commutative_square());
    push("parallel_pair".into(), parallel_pair());
    out
}

/// Largest set `Sub F` may be built over while its own powersets (used by
/// stratification) stay under the materialization cap.
const SUB_BASE_LIMIT: usize = 3;

/// The hom-functor at `a` followed by functors built from other pieces:
/// a constant two-point functor, `h_A ⊔ h_B` with `B` the last object, and
/// `Sub h_C` with `C` the first object, or `h_A ⊔ 1` when `h_C` is too big
/// for that.
pub fn functors_for(cat: &Arc<FiniteCategory>, a: Ob, variance: Variance) -> Vec<(String, Arc<SetValuedFunctor>)> {
    let hom = SetValuedFunctor::hom(cat, a, variance);
    let last = Ob(cat.object_count() - 1);
    let sum = SetValuedFunctor::coproduct(&hom, &SetValuedFunctor::hom(cat, last, variance)).expect("same base");
    let constant = SetValuedFunctor::constant(cat, &["p", "q"], variance).expect("lawful");
    let first = SetValuedFunctor::hom(cat, Ob(0), variance);
    let third = if cat.object_indices().all(|x| first.size(x) <= SUB_BASE_LIMIT) {
        let sub = sub_functor(&first, DEFAULT_MATERIALIZATION_CAP).expect("small hom-sets");
        (format!("sub_hom_{}", cat.object_id(Ob(0))), sub)
    } else {
        let point = SetValuedFunctor::constant(cat, &["*"], variance).expect("lawful");
        ("hom+point".to_string(), SetValuedFunctor::coproduct(&hom, &point).expect("same base"))
    };
    vec![
        ("hom".into(), Arc::new(hom)),
        ("const2".into(), Arc::new(constant)),
        (format!("hom+hom_{}", cat.object_id(last)), Arc::new(sum)),
        (third.0, Arc::new(third.1)),
    ]
}

/// Every corpus category, every object as `A`, both variances, and every
/// functor from [`functors_for`].
pub fn triples() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for named in categories() {
        for variance in [Variance::Contravariant, Variance::Covariant] {
            for a in named.category.object_indices() {
                for (functor_name, functor) in functors_for(&named.category, a, variance) {
                    out.push(CorpusEntry {
                        category_name: named.name.clone(),
                        category: named.category.clone(),
                        a,
                        functor_name,
                        functor,
                    });
                }
            }
        }
    }
    out
}
