//! Natural transformations between set-valued functors, exhaustive
//! enumeration, and the Yoneda correspondence `Nat(h^A, F) ≅ F(A)`.
//!
//! Enumeration treats every pair `(X, x ∈ F(X))` as a variable ranging over
//! `G(X)`. Each non-identity `m` with `F(m)(x) = y` is a constraint
//! `τ(y) = G(m)(τ(x))`, so assigning `x` forces `y`. Only one variable per
//! source component of this constraint graph is ever branched on; everything
//! else follows by propagation or is pruned by a conflict.

use std::collections::BTreeMap;
use std::sync::Arc;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{opposite, Mor, Ob};
use crate::functors::{same_base, SetValuedFunctor, Variance};
use crate::report::{Rule, ValidationReport, Violation};

/// Default upper bound on the pruned search-space estimate.
pub const DEFAULT_SEARCH_GUARD: u128 = 10_000_000;

/// Natural-transformation file schema: `components[X][x] = τ_X(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NatFile {
    pub components: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Clone)]
pub struct NaturalTransformation {
    source: Arc<SetValuedFunctor>,
    target: Arc<SetValuedFunctor>,
    components: Vec<Vec<usize>>,
}

impl PartialEq for NaturalTransformation {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

impl Eq for NaturalTransformation {}

fn compatible(f: &SetValuedFunctor, g: &SetValuedFunctor) -> Result<()> {
    if !same_base(f, g) {
        return Err(Error::BaseMismatch);
    }
    if f.variance() != g.variance() {
        return Err(Error::VarianceMismatch);
    }
    Ok(())
}

impl NaturalTransformation {
    /// Checks only the shape: same base and variance, and each component a
    /// total function `F(X) -> G(X)`. Naturality is [`check_naturality`].
    pub fn new(
        source: Arc<SetValuedFunctor>,
        target: Arc<SetValuedFunctor>,
        components: Vec<Vec<usize>>,
    ) -> Result<Self> {
        compatible(&source, &target)?;
        let cat = source.base();
        if components.len() != cat.object_count() {
            return Err(Error::Shape("one component per object".into()));
        }
        for x in cat.object_indices() {
            let c = &components[x.0];
            if c.len() != source.size(x) || c.iter().any(|&v| v >= target.size(x)) {
                return Err(Error::Shape(format!(
                    "component at `{}` is not a function F(X) -> G(X)",
                    cat.object_id(x)
                )));
            }
        }
        Ok(NaturalTransformation { source, target, components })
    }

    pub fn identity(functor: &Arc<SetValuedFunctor>) -> Self {
        let components = functor.base().object_indices().map(|x| (0..functor.size(x)).collect()).collect();
        NaturalTransformation { source: functor.clone(), target: functor.clone(), components }
    }

    pub fn from_file(source: Arc<SetValuedFunctor>, target: Arc<SetValuedFunctor>, file: &NatFile) -> Result<Self> {
        let cat = source.base().clone();
        if let Some(x) = file.components.keys().find(|x| cat.object(x).is_err()) {
            return Err(Error::UnknownObject(x.clone()));
        }
        let mut components = Vec::with_capacity(cat.object_count());
        for x in cat.object_indices() {
            let empty = BTreeMap::new();
            let table = file.components.get(cat.object_id(x)).unwrap_or(&empty);
            let mut row = vec![usize::MAX; source.size(x)];
            for (k, v) in table {
                row[source.element_index(x, k)?] = target.element_index(x, v)?;
            }
            if let Some(i) = row.iter().position(|&v| v == usize::MAX) {
                return Err(Error::Shape(format!(
                    "component at `{}` has no value for `{}`",
                    cat.object_id(x),
                    source.element_id(x, i)
                )));
            }
            components.push(row);
        }
        Self::new(source, target, components)
    }

    pub fn to_file(&self) -> NatFile {
        let cat = self.source.base();
        let components = cat
            .object_indices()
            .map(|x| {
                let table = self.components[x.0]
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (self.source.element_id(x, i).to_string(), self.target.element_id(x, v).to_string()))
                    .collect();
                (cat.object_id(x).to_string(), table)
            })
            .collect();
        NatFile { components }
    }

    pub fn source(&self) -> &Arc<SetValuedFunctor> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SetValuedFunctor> {
        &self.target
    }

    pub fn component(&self, x: Ob) -> &[usize] {
        &self.components[x.0]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn apply(&self, x: Ob, element: usize) -> usize {
        self.components[x.0][element]
    }

    /// Component tables concatenated in object order.
    pub fn flattened(&self) -> Vec<usize> {
        self.components.concat()
    }
}

/// Empty iff every naturality square commutes. For `m` with `F(m): F(S) -> F(T)`
/// the square is `τ_T ∘ F(m) = G(m) ∘ τ_S`; violations carry the morphism and
/// the element of `F(S)` where the two paths differ.
pub fn check_naturality(tau: &NaturalTransformation) -> ValidationReport {
    let (f, g) = (&tau.source, &tau.target);
    let cat = f.base();
    let mut report = ValidationReport::default();
    for m in cat.morphism_indices() {
        let (s, t) = (f.action_source(m), f.action_target(m));
        for x in 0..f.size(s) {
            let down_then_across = tau.apply(t, f.apply(m, x));
            let across_then_down = g.apply(m, tau.apply(s, x));
            if down_then_across != across_then_down {
                report.push(Violation::new(
                    Rule::Naturality,
                    [cat.morphism_id(m), f.element_id(s, x)],
                    format!(
                        "τ(F({m})({x})) = {} but G({m})(τ({x})) = {}",
                        g.element_id(t, down_then_across),
                        g.element_id(t, across_then_down),
                        m = cat.morphism_id(m),
                        x = f.element_id(s, x),
                    ),
                ));
            }
        }
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest admissible pruned estimate.
    pub guard: u128,
    /// Split the first branching variable across rayon workers.
    pub parallel: bool,
    /// Branch in reverse canonical order. Results are identical; used to
    /// check order independence.
    pub reverse_branching: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { guard: DEFAULT_SEARCH_GUARD, parallel: true, reverse_branching: false }
    }
}

/// Size of the search for `Nat(F, G)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchEstimate {
    /// `log10` of `Π_X |G(X)|^|F(X)|`, the unpruned assignment space.
    pub raw_log10: f64,
    /// Product of `|G(X)|` over branching variables: an upper bound on the
    /// leaves actually visited.
    pub pruned: u128,
    pub branch_points: usize,
}

const UNSET: usize = usize::MAX;

struct Search<'a> {
    target: &'a SetValuedFunctor,
    var_object: Vec<Ob>,
    edges: Vec<Vec<(usize, Mor)>>,
    branch: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(source: &'a SetValuedFunctor, target: &'a SetValuedFunctor) -> Self {
        let cat = source.base();
        let mut offsets = Vec::with_capacity(cat.object_count());
        let mut var_object = Vec::new();
        for x in cat.object_indices() {
            offsets.push(var_object.len());
            var_object.extend(std::iter::repeat_n(x, source.size(x)));
        }
        let mut graph = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = (0..var_object.len()).map(|_| graph.add_node(())).collect();
        let mut edges = vec![Vec::new(); var_object.len()];
        for m in cat.morphism_indices().filter(|&m| !cat.is_identity(m)) {
            let (s, t) = (source.action_source(m), source.action_target(m));
            for x in 0..source.size(s) {
                let from = offsets[s.0] + x;
                let to = offsets[t.0] + source.apply(m, x);
                edges[from].push((to, m));
                if from != to {
                    graph.add_edge(nodes[from], nodes[to], ());
                }
            }
        }
        let sccs = tarjan_scc(&graph);
        let mut component = vec![0; var_object.len()];
        for (c, scc) in sccs.iter().enumerate() {
            for n in scc {
                component[n.index()] = c;
            }
        }
        let mut has_incoming = vec![false; sccs.len()];
        for (from, out) in edges.iter().enumerate() {
            for &(to, _) in out {
                if component[from] != component[to] {
                    has_incoming[component[to]] = true;
                }
            }
        }
        let mut branch: Vec<usize> = sccs
            .iter()
            .enumerate()
            .filter(|(c, _)| !has_incoming[*c])
            .map(|(_, scc)| scc.iter().map(|n| n.index()).min().expect("nonempty scc"))
            .collect();
        branch.sort_unstable();
        Search { target, var_object, edges, branch }
    }

    fn estimate(&self, source: &SetValuedFunctor) -> SearchEstimate {
        let cat = source.base();
        let raw_log10 = cat
            .object_indices()
            .map(|x| source.size(x) as f64 * (self.target.size(x) as f64).log10())
            .filter(|v| !v.is_nan())
            .sum();
        let pruned =
            self.branch.iter().fold(1u128, |acc, &v| acc.saturating_mul(self.target.size(self.var_object[v]) as u128));
        SearchEstimate { raw_log10, pruned, branch_points: self.branch.len() }
    }

    /// Assigns `var := value` and everything it forces. On conflict returns
    /// false; the caller rolls back to its trail mark either way.
    fn assign(&self, values: &mut [usize], trail: &mut Vec<usize>, var: usize, value: usize) -> bool {
        if values[var] != UNSET {
            return values[var] == value;
        }
        values[var] = value;
        trail.push(var);
        let mut queue = vec![var];
        while let Some(v) = queue.pop() {
            for &(w, m) in &self.edges[v] {
                let forced = self.target.apply(m, values[v]);
                if values[w] == UNSET {
                    values[w] = forced;
                    trail.push(w);
                    queue.push(w);
                } else if values[w] != forced {
                    return false;
                }
            }
        }
        true
    }

    fn undo(values: &mut [usize], trail: &mut Vec<usize>, mark: usize) {
        for v in trail.drain(mark..) {
            values[v] = UNSET;
        }
    }

    fn descend(
        &self,
        order: &[usize],
        depth: usize,
        values: &mut Vec<usize>,
        trail: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(&var) = order.get(depth) else {
            debug_assert!(values.iter().all(|&v| v != UNSET));
            out.push(values.clone());
            return;
        };
        for value in 0..self.target.size(self.var_object[var]) {
            let mark = trail.len();
            if self.assign(values, trail, var, value) {
                self.descend(order, depth + 1, values, trail, out);
            }
            Self::undo(values, trail, mark);
        }
    }

    fn run(&self, options: &SearchOptions) -> Vec<Vec<usize>> {
        let mut order = self.branch.clone();
        if options.reverse_branching {
            order.reverse();
        }
        let n = self.var_object.len();
        let mut solutions = match order.first() {
            Some(&first) if options.parallel => {
                let range = 0..self.target.size(self.var_object[first]);
                range
                    .into_par_iter()
                    .map(|value| {
                        let mut values = vec![UNSET; n];
                        let mut trail = Vec::new();
                        let mut out = Vec::new();
                        if self.assign(&mut values, &mut trail, first, value) {
                            self.descend(&order, 1, &mut values, &mut trail, &mut out);
                        }
                        out
                    })
                    .collect::<Vec<_>>()
                    .concat()
            }
            _ => {
                let mut out = Vec::new();
                self.descend(&order, 0, &mut vec![UNSET; n], &mut Vec::new(), &mut out);
                out
            }
        };
        solutions.sort_unstable();
        solutions
    }
}

pub fn search_space(source: &SetValuedFunctor, target: &SetValuedFunctor) -> Result<SearchEstimate> {
    compatible(source, target)?;
    Ok(Search::new(source, target).estimate(source))
}

fn split_components(source: &SetValuedFunctor, flat: Vec<usize>) -> Vec<Vec<usize>> {
    let mut rest = flat.as_slice();
    source
        .base()
        .object_indices()
        .map(|x| {
            let (head, tail) = rest.split_at(source.size(x));
            rest = tail;
            head.to_vec()
        })
        .collect()
}

/// Every natural transformation `F ⇒ G`, lexicographically ordered by their
/// flattened component tables. Works on either variance directly; the public
/// entry point [`enumerate_nat_trans`] routes covariant input through the
/// opposite category.
pub fn enumerate_nat_trans_direct(
    source: &Arc<SetValuedFunctor>,
    target: &Arc<SetValuedFunctor>,
    options: &SearchOptions,
) -> Result<Vec<NaturalTransformation>> {
    compatible(source, target)?;
    let search = Search::new(source, target);
    let estimate = search.estimate(source);
    if estimate.pruned > options.guard {
        return Err(Error::GuardExceeded { estimate: estimate.pruned, guard: options.guard });
    }
    Ok(search
        .run(options)
        .into_iter()
        .map(|flat| NaturalTransformation {
            source: source.clone(),
            target: target.clone(),
            components: split_components(source, flat),
        })
        .collect())
}

/// Every natural transformation `F ⇒ G` in canonical order. Covariant
/// functors are dualized to contravariant ones over the opposite category,
/// enumerated there, and mapped back (components carry over unchanged).
pub fn enumerate_nat_trans(
    source: &Arc<SetValuedFunctor>,
    target: &Arc<SetValuedFunctor>,
    options: &SearchOptions,
) -> Result<Vec<NaturalTransformation>> {
    compatible(source, target)?;
    if source.variance() == Variance::Contravariant {
        return enumerate_nat_trans_direct(source, target, options);
    }
    let op = Arc::new(opposite(source.base()));
    let dual_source = Arc::new(source.dual_over(&op)?);
    let dual_target = Arc::new(target.dual_over(&op)?);
    Ok(enumerate_nat_trans_direct(&dual_source, &dual_target, options)?
        .into_iter()
        .map(|t| NaturalTransformation { source: source.clone(), target: target.clone(), components: t.components })
        .collect())
}

fn identity_position(hom: &SetValuedFunctor, a: Ob) -> usize {
    let cat = hom.base();
    hom.element_index(a, cat.morphism_id(cat.identity(a))).expect("id_A ∈ [A, A]")
}

/// `Y(τ) = τ_A(id_A)`, returned as an index into `F(A)`.
pub fn yoneda_forward(tau: &NaturalTransformation, a: Ob) -> Result<usize> {
    let cat = tau.source.base();
    let hom = SetValuedFunctor::hom(cat, a, tau.source.variance());
    if *tau.source != hom {
        return Err(Error::NotRepresentable(cat.object_id(a).to_string()));
    }
    Ok(tau.apply(a, identity_position(&hom, a)))
}

/// `τ_α` with `τ_α(f) = F(f)(α)` for `f ∈ [X, A]` (or `[A, X]` when covariant).
pub fn yoneda_backward(alpha: usize, a: Ob, functor: &Arc<SetValuedFunctor>) -> Result<NaturalTransformation> {
    let hom = Arc::new(SetValuedFunctor::hom(functor.base(), a, functor.variance()));
    yoneda_backward_from(&hom, alpha, a, functor)
}

fn yoneda_backward_from(
    hom: &Arc<SetValuedFunctor>,
    alpha: usize,
    a: Ob,
    functor: &Arc<SetValuedFunctor>,
) -> Result<NaturalTransformation> {
    let cat = functor.base();
    if alpha >= functor.size(a) {
        return Err(Error::UnknownElement { object: cat.object_id(a).to_string(), element: format!("#{alpha}") });
    }
    let components = cat
        .object_indices()
        .map(|x| {
            hom.set(x)
                .iter()
                .map(|id| {
                    let f = cat.morphism_by_id(id).expect("hom elements are morphisms");
                    functor.apply(f, alpha)
                })
                .collect()
        })
        .collect();
    NaturalTransformation::new(hom.clone(), functor.clone(), components)
}

/// Outcome of checking `Nat(h^A, F) ≅ F(A)` by exhaustive enumeration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BijectionCertificate {
    pub object: String,
    pub variance: Variance,
    pub nat_count: usize,
    pub f_a: usize,
    pub injective: bool,
    pub surjective: bool,
    pub forward_backward_identity: bool,
    pub backward_forward_identity: bool,
    pub bijection: bool,
    pub counterexample: Option<String>,
    pub search: SearchEstimate,
}

pub fn verify_yoneda_bijection(
    a: Ob,
    functor: &Arc<SetValuedFunctor>,
    options: &SearchOptions,
) -> Result<BijectionCertificate> {
    let cat = functor.base();
    let hom = Arc::new(SetValuedFunctor::hom(cat, a, functor.variance()));
    let search = search_space(&hom, functor)?;
    let nats = enumerate_nat_trans(&hom, functor, options)?;
    let f_a = functor.size(a);
    let mut counterexample = None;
    let mut note = |msg: String| {
        counterexample.get_or_insert(msg);
    };

    let forwards = nats.iter().map(|t| yoneda_forward(t, a)).collect::<Result<Vec<_>>>()?;
    let mut seen = vec![None; f_a];
    let mut injective = true;
    for (k, &alpha) in forwards.iter().enumerate() {
        if let Some(prev) = seen[alpha].replace(k) {
            injective = false;
            note(format!("transformations #{prev} and #{k} both map to `{}`", functor.element_id(a, alpha)));
        }
    }
    let surjective = match seen.iter().position(Option::is_none) {
        Some(alpha) => {
            note(format!("`{}` is not hit by any transformation", functor.element_id(a, alpha)));
            false
        }
        None => true,
    };
    let mut forward_backward_identity = true;
    for alpha in 0..f_a {
        let tau = yoneda_backward_from(&hom, alpha, a, functor)?;
        let naturality = check_naturality(&tau);
        let back = yoneda_forward(&tau, a)?;
        if back != alpha || !naturality.is_empty() {
            forward_backward_identity = false;
            note(format!("round trip from `{}` fails: {naturality}", functor.element_id(a, alpha)));
        }
    }
    let mut backward_forward_identity = true;
    for (tau, &alpha) in nats.iter().zip(&forwards) {
        if yoneda_backward_from(&hom, alpha, a, functor)? != *tau {
            backward_forward_identity = false;
            note(format!("τ with τ(id) = `{}` is not τ_α", functor.element_id(a, alpha)));
        }
    }
    let bijection =
        injective && surjective && forward_backward_identity && backward_forward_identity && nats.len() == f_a;
    Ok(BijectionCertificate {
        object: cat.object_id(a).to_string(),
        variance: functor.variance(),
        nat_count: nats.len(),
        f_a,
        injective,
        surjective,
        forward_backward_identity,
        backward_forward_identity,
        bijection,
        counterexample,
        search,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{discrete_category, monoid_category, CategoryFile, FiniteCategory, MorphismDecl};

    fn c2() -> Arc<FiniteCategory> {
        Arc::new(
            FiniteCategory::from_file(CategoryFile {
                objects: vec!["0".into(), "1".into()],
                morphisms: vec![MorphismDecl::new("a", "0", "1")],
                composition: vec![],
            })
            .unwrap(),
        )
    }

    fn monoid(e: &str, x: &str, xx: &str) -> Arc<FiniteCategory> {
        Arc::new(monoid_category(&[e, x], &[(e, e, e), (e, x, x), (x, e, x), (x, x, xx)], e).unwrap())
    }

    fn hom(cat: &Arc<FiniteCategory>, a: &str) -> Arc<SetValuedFunctor> {
        Arc::new(SetValuedFunctor::hom(cat, cat.object(a).unwrap(), Variance::Contravariant))
    }

    fn swap(h: &Arc<SetValuedFunctor>) -> NaturalTransformation {
        NaturalTransformation::new(h.clone(), h.clone(), vec![vec![1, 0]]).unwrap()
    }

    #[test]
    fn identity_is_natural() {
        let h = hom(&c2(), "1");
        assert!(check_naturality(&NaturalTransformation::identity(&h)).is_empty());
    }

    #[test]
    fn swap_is_natural_on_z2_but_not_m2() {
        let h = hom(&monoid("e", "s", "e"), "•");
        assert!(check_naturality(&swap(&h)).is_empty());

        let h = hom(&monoid("e", "z", "z"), "•");
        let report = check_naturality(&swap(&h));
        let v = report.find(Rule::Naturality).expect("square fails");
        assert_eq!(v.witness, ["z", "e"]);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let h = hom(&monoid("e", "s", "e"), "•");
        assert!(matches!(NaturalTransformation::new(h.clone(), h.clone(), vec![vec![0]]), Err(Error::Shape(_))));
        assert!(matches!(NaturalTransformation::new(h.clone(), h, vec![vec![0, 2]]), Err(Error::Shape(_))));
    }

    #[test]
    fn enumeration_counts() {
        let cat = c2();
        let empty = Arc::new(
            SetValuedFunctor::new(cat.clone(), Variance::Contravariant, vec![vec![], vec![]], vec![vec![]; 3]).unwrap(),
        );
        let h = hom(&cat, "1");
        assert_eq!(enumerate_nat_trans(&empty, &h, &SearchOptions::default()).unwrap().len(), 1);
        assert_eq!(enumerate_nat_trans(&h, &h, &SearchOptions::default()).unwrap().len(), 1);

        let h = hom(&monoid("e", "s", "e"), "•");
        let all = enumerate_nat_trans(&h, &h, &SearchOptions::default()).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0], NaturalTransformation::identity(&h));
        assert_eq!(all[1], swap(&h));
    }

    #[test]
    fn guard_is_enforced() {
        let h = hom(&monoid("e", "s", "e"), "•");
        let options = SearchOptions { guard: 1, ..Default::default() };
        assert!(matches!(enumerate_nat_trans(&h, &h, &options), Err(Error::GuardExceeded { estimate: 2, guard: 1 })));
    }

    #[test]
    fn yoneda_forward_examples() {
        let h = hom(&monoid("e", "s", "e"), "•");
        assert_eq!(h.element_id(Ob(0), yoneda_forward(&NaturalTransformation::identity(&h), Ob(0)).unwrap()), "e");
        assert_eq!(h.element_id(Ob(0), yoneda_forward(&swap(&h), Ob(0)).unwrap()), "s");

        let cat = c2();
        let h1 = hom(&cat, "1");
        let only = enumerate_nat_trans(&h1, &h1, &SearchOptions::default()).unwrap().remove(0);
        let one = cat.object("1").unwrap();
        assert_eq!(h1.element_id(one, yoneda_forward(&only, one).unwrap()), "id_1");
        // h^0 is not the designated hom-functor for A = 1
        let h0 = hom(&cat, "0");
        let t = NaturalTransformation::identity(&h0);
        assert!(matches!(yoneda_forward(&t, one), Err(Error::NotRepresentable(_))));
    }

    #[test]
    fn yoneda_backward_examples() {
        let h = hom(&monoid("e", "s", "e"), "•");
        assert_eq!(yoneda_backward(0, Ob(0), &h).unwrap(), NaturalTransformation::identity(&h));
        assert_eq!(yoneda_backward(1, Ob(0), &h).unwrap(), swap(&h));
        assert!(yoneda_backward(2, Ob(0), &h).is_err());

        let cat = c2();
        let h1 = hom(&cat, "1");
        let tau = yoneda_backward(0, cat.object("1").unwrap(), &h1).unwrap();
        let file = tau.to_file();
        assert_eq!(file.components["0"]["a"], "a");
        assert_eq!(file.components["1"]["id_1"], "id_1");
        assert!(check_naturality(&tau).is_empty());
    }

    #[test]
    fn bijection_certificates() {
        let d = Arc::new(discrete_category(&["X"]).unwrap());
        let cert = verify_yoneda_bijection(Ob(0), &hom(&d, "X"), &SearchOptions::default()).unwrap();
        assert!(cert.bijection);
        assert_eq!((cert.nat_count, cert.f_a), (1, 1));

        for cat in [monoid("e", "s", "e"), monoid("e", "z", "z")] {
            let cert = verify_yoneda_bijection(Ob(0), &hom(&cat, "•"), &SearchOptions::default()).unwrap();
            assert!(cert.bijection, "{cert:?}");
            assert_eq!((cert.nat_count, cert.f_a), (2, 2));
            assert!(cert.counterexample.is_none());
        }
    }

    #[test]
    fn covariant_routes_agree() {
        let cat = c2();
        let zero = cat.object("0").unwrap();
        let h = Arc::new(SetValuedFunctor::hom(&cat, zero, Variance::Covariant));
        let two = Arc::new(SetValuedFunctor::constant(&cat, &["p", "q"], Variance::Covariant).unwrap());
        let via_op = enumerate_nat_trans(&h, &two, &SearchOptions::default()).unwrap();
        let direct = enumerate_nat_trans_direct(&h, &two, &SearchOptions::default()).unwrap();
        assert_eq!(via_op, direct);
        assert_eq!(via_op.len(), 2);
        let cert = verify_yoneda_bijection(zero, &two, &SearchOptions::default()).unwrap();
        assert!(cert.bijection);
    }

    #[test]
    fn nat_file_round_trip() {
        let h = hom(&monoid("e", "s", "e"), "•");
        let t = swap(&h);
        let back = NaturalTransformation::from_file(h.clone(), h.clone(), &t.to_file()).unwrap();
        assert_eq!(back, t);
    }
}
