//! Preorders on hom-sets, their poset quotients, Alexandroff topologies and
//! monotone maps into posets (poset-stratifications).

use std::ops::Deref;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{closure, FiniteCategory, Ob};
use crate::functors::{subset_family, subset_id, SetValuedFunctor, Variance};
use crate::image::image_of_morphism;

/// Which subsets count as open in an Alexandroff topology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OpenConvention {
    UpSets,
    DownSets,
}

/// Opens are up-sets: `x ∈ U` and `x <= y` imply `y ∈ U`.
pub const OPEN_SETS: OpenConvention = OpenConvention::UpSets;

/// Largest carrier for which all opens are enumerated.
pub const MAX_ALEXANDROFF_CARRIER: usize = 20;

/// A finite set with a reflexive, transitive relation, stored as a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Proset {
    carrier: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Proset {
    /// `leq[a][b]` means `a <= b`. Reflexivity and transitivity are checked.
    pub fn from_matrix(carrier: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = carrier.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::Shape("relation matrix must be square over the carrier".into()));
        }
        if let Some(a) = (0..n).find(|&a| !leq[a][a]) {
            return Err(Error::NotReflexive(carrier[a].clone()));
        }
        for a in 0..n {
            for b in (0..n).filter(|&b| leq[a][b]) {
                if let Some(c) = (0..n).find(|&c| leq[b][c] && !leq[a][c]) {
                    return Err(Error::NotTransitive(carrier[a].clone(), carrier[b].clone(), carrier[c].clone()));
                }
            }
        }
        Ok(Proset { carrier, leq })
    }

    /// The relation given exactly by `pairs`; it must already be a preorder.
    pub fn from_pairs(carrier: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = carrier.len();
        if let Some((a, b)) = pairs.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::Shape(format!("pair ({a}, {b}) outside a carrier of {n}")));
        }
        let mut leq = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            leq[a][b] = true;
        }
        Self::from_matrix(carrier, leq)
    }

    /// Reflexive-transitive closure of `pairs`.
    pub fn generated_by(carrier: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = carrier.len();
        if let Some((a, b)) = pairs.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::Shape(format!("pair ({a}, {b}) outside a carrier of {n}")));
        }
        Self::from_matrix(carrier, closure(n, pairs))
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// All related pairs `(a, b)` with `a <= b`, in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| self.leq[a][b]).collect()
    }

    /// First pair of distinct, mutually related elements, if any.
    pub fn antisymmetry_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| self.leq[a][b] && self.leq[b][a])
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetry_witness().is_none()
    }
}

/// A proset whose relation is also antisymmetric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Poset(Proset);

impl Poset {
    pub fn new(proset: Proset) -> Result<Self> {
        match proset.antisymmetry_witness() {
            Some((a, b)) => Err(Error::NotAntisymmetric(proset.carrier[a].clone(), proset.carrier[b].clone())),
            None => Ok(Poset(proset)),
        }
    }

    pub fn into_proset(self) -> Proset {
        self.0
    }

    /// Pairs `a < b` with nothing strictly between them.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |a: usize, b: usize| a != b && self.leq(a, b);
        let mut out = Vec::new();
        for a in 0..n {
            for b in (0..n).filter(|&b| lt(a, b)) {
                if !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

impl Deref for Poset {
    type Target = Proset;

    fn deref(&self) -> &Proset {
        &self.0
    }
}

/// `([X, A], ≤_L)` where `f ≤_L g` iff `f = t ∘ g` for some `t ∈ [A, A]`.
/// Reflexivity and transitivity are verified on the computed relation.
pub fn build_l_preorder(cat: &FiniteCategory, x: Ob, a: Ob) -> Result<Proset> {
    let members = cat.hom(x, a);
    let endos = cat.hom(a, a);
    let leq = members
        .iter()
        .map(|&f| members.iter().map(|&g| endos.iter().any(|&t| cat.compose(t, g) == Some(f))).collect())
        .collect();
    let carrier = members.iter().map(|&m| cat.morphism_id(m).to_string()).collect();
    Proset::from_matrix(carrier, leq)
}

/// The poset of classes of mutually related elements, with `[a] <= [b]` iff
/// `a <= b`, and the projection. Classes are the strongly connected
/// components of the relation digraph, ordered by least member, and named
/// by the JSON array of their members.
pub fn quotient_to_poset(proset: &Proset) -> (Poset, Vec<usize>) {
    let n = proset.len();
    let mut graph = DiGraph::<(), ()>::with_capacity(n, n);
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for (a, b) in proset.pairs() {
        if a != b {
            graph.add_edge(nodes[a], nodes[b], ());
        }
    }
    let mut classes: Vec<Vec<usize>> = tarjan_scc(&graph)
        .into_iter()
        .map(|scc| {
            let mut members: Vec<usize> = scc.into_iter().map(|v| v.index()).collect();
            members.sort_unstable();
            members
        })
        .collect();
    classes.sort_by_key(|c| c[0]);
    let mut projection = vec![0; n];
    for (k, class) in classes.iter().enumerate() {
        for &a in class {
            projection[a] = k;
        }
    }
    let carrier = classes
        .iter()
        .map(|c| {
            let names: Vec<&str> = c.iter().map(|&a| proset.carrier[a].as_str()).collect();
            serde_json::to_string(&names).expect("strings serialize")
        })
        .collect();
    let leq = classes.iter().map(|c| classes.iter().map(|d| proset.leq(c[0], d[0])).collect()).collect();
    let quotient = Proset::from_matrix(carrier, leq).expect("quotient of a preorder is a preorder");
    let poset = Poset::new(quotient).expect("classes are mutually unrelated");
    (poset, projection)
}

/// A carrier with a family of open subsets, each a bitmask over the carrier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteTopology {
    carrier: Vec<String>,
    opens: Vec<u64>,
}

impl FiniteTopology {
    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn opens(&self) -> &[u64] {
        &self.opens
    }

    pub fn is_open(&self, mask: u64) -> bool {
        self.opens.binary_search(&mask).is_ok()
    }

    pub fn full(&self) -> u64 {
        if self.carrier.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.carrier.len()) - 1
        }
    }

    /// Contains ∅ and the carrier and is closed under pairwise unions and
    /// intersections, which for a finite family gives closure under
    /// arbitrary ones.
    pub fn is_alexandroff(&self) -> bool {
        if !self.is_open(0) || !self.is_open(self.full()) {
            return false;
        }
        self.opens.iter().all(|&u| self.opens.iter().all(|&v| self.is_open(u | v) && self.is_open(u & v)))
    }

    /// Members of an open set, in carrier order.
    pub fn members(&self, mask: u64) -> Vec<&str> {
        (0..self.carrier.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.carrier[i].as_str()).collect()
    }
}

/// Alexandroff topology of `proset` under [`OPEN_SETS`].
pub fn alexandroff_opens(proset: &Proset) -> Result<FiniteTopology> {
    alexandroff_opens_with(proset, OPEN_SETS)
}

pub fn alexandroff_opens_with(proset: &Proset, convention: OpenConvention) -> Result<FiniteTopology> {
    let n = proset.len();
    if n > MAX_ALEXANDROFF_CARRIER {
        return Err(Error::GuardExceeded { estimate: 1u128 << n, guard: 1u128 << MAX_ALEXANDROFF_CARRIER });
    }
    // the elements an open set containing `a` must also contain
    let saturation: Vec<u64> = (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| match convention {
                    OpenConvention::UpSets => proset.leq(a, b),
                    OpenConvention::DownSets => proset.leq(b, a),
                })
                .fold(0u64, |m, b| m | 1 << b)
        })
        .collect();
    let opens = (0..1u64 << n).filter(|&u| (0..n).all(|a| u >> a & 1 == 0 || saturation[a] & !u == 0)).collect();
    Ok(FiniteTopology { carrier: proset.carrier.clone(), opens })
}

fn check_total(map: &[usize], from: usize, to: usize) -> Result<()> {
    if map.len() != from {
        return Err(Error::NonTotalMap(format!("{} values for a carrier of {from}", map.len())));
    }
    if let Some(v) = map.iter().find(|&&v| v >= to) {
        return Err(Error::NonTotalMap(format!("value {v} outside a carrier of {to}")));
    }
    Ok(())
}

/// `a <= b` implies `map(a) <= map(b)`.
pub fn is_monotone(map: &[usize], source: &Proset, target: &Proset) -> Result<bool> {
    check_total(map, source.len(), target.len())?;
    Ok(source.pairs().into_iter().all(|(a, b)| target.leq(map[a], map[b])))
}

/// Preimages of opens are open.
pub fn is_continuous(map: &[usize], source: &FiniteTopology, target: &FiniteTopology) -> Result<bool> {
    check_total(map, source.carrier.len(), target.carrier.len())?;
    Ok(target.opens.iter().all(|&v| {
        let preimage = map.iter().enumerate().filter(|(_, &b)| v >> b & 1 == 1).fold(0u64, |m, (a, _)| m | 1 << a);
        source.is_open(preimage)
    }))
}

/// A monotone map from a proset to a poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratificationMap {
    source: Proset,
    target: Poset,
    map: Vec<usize>,
}

impl StratificationMap {
    pub fn new(source: Proset, target: Poset, map: Vec<usize>) -> Result<Self> {
        check_total(&map, source.len(), target.len())?;
        if let Some((a, b)) = source.pairs().into_iter().find(|&(a, b)| !target.leq(map[a], map[b])) {
            return Err(Error::NotMonotone(source.carrier[a].clone(), source.carrier[b].clone()));
        }
        Ok(StratificationMap { source, target, map })
    }

    pub fn source(&self) -> &Proset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }
}

/// `(Sub(F(X)), ⊆)`, with elements named and ordered as in `Sub F`.
pub fn powerset_poset(functor: &SetValuedFunctor, x: Ob, cap: usize) -> Result<Poset> {
    let family = subset_family(functor, x, cap)?;
    let masks: Vec<u64> = family.subsets.iter().map(|s| s.iter().fold(0u64, |m, &i| m | 1 << i)).collect();
    let carrier = family.subsets.iter().map(|s| subset_id(functor, x, s)).collect();
    let leq = masks.iter().map(|&a| masks.iter().map(|&b| a & !b == 0).collect()).collect();
    Poset::new(Proset::from_matrix(carrier, leq)?)
}

/// `Im_F: ([X, A], ≤_L) -> (Sub(F(X)), ⊆)`; monotonicity is checked when the
/// map is built.
pub fn stratification_map(x: Ob, a: Ob, functor: &SetValuedFunctor, cap: usize) -> Result<StratificationMap> {
    if functor.variance() != Variance::Contravariant {
        return Err(Error::VarianceMismatch);
    }
    let cat = functor.base();
    let source = build_l_preorder(cat, x, a)?;
    let target = powerset_poset(functor, x, cap)?;
    let map = cat
        .hom(x, a)
        .into_iter()
        .map(|f| {
            let image = image_of_morphism(functor, a, f)?;
            target
                .carrier()
                .binary_search(&subset_id(functor, x, &image))
                .map_err(|_| Error::Shape("image missing from the powerset".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    StratificationMap::new(source, target, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::monoid_category;
    use std::sync::Arc;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn monoid(e: &str, x: &str, xx: &str) -> Arc<FiniteCategory> {
        Arc::new(monoid_category(&[e, x], &[(e, e, e), (e, x, x), (x, e, x), (x, x, xx)], e).unwrap())
    }

    fn chain2() -> Proset {
        Proset::generated_by(names(&["0", "1"]), &[(0, 1)]).unwrap()
    }

    fn total2() -> Proset {
        Proset::generated_by(names(&["e", "s"]), &[(0, 1), (1, 0)]).unwrap()
    }

    #[test]
    fn proset_validation() {
        assert!(matches!(Proset::from_pairs(names(&["a"]), &[]), Err(Error::NotReflexive(_))));
        let err = Proset::from_pairs(names(&["a", "b", "c"]), &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]);
        assert!(matches!(err, Err(Error::NotTransitive(..))));
        assert!(matches!(Poset::new(total2()), Err(Error::NotAntisymmetric(..))));
    }

    #[test]
    fn l_preorder_examples() {
        let z2 = monoid("e", "s", "e");
        let p = build_l_preorder(&z2, Ob(0), Ob(0)).unwrap();
        assert_eq!(p.pairs(), [(0, 0), (0, 1), (1, 0), (1, 1)]);

        let m2 = monoid("e", "z", "z");
        let p = build_l_preorder(&m2, Ob(0), Ob(0)).unwrap();
        // carrier [e, z]: z <=_L e, not e <=_L z
        assert!(p.leq(1, 0));
        assert!(!p.leq(0, 1));
        assert!(p.is_antisymmetric());

        let one = crate::fincat::discrete_category(&["X"]).unwrap();
        assert_eq!(build_l_preorder(&one, Ob(0), Ob(0)).unwrap().len(), 1);
    }

    #[test]
    fn quotient_examples() {
        let (q, pi) = quotient_to_poset(&chain2());
        assert_eq!(q.len(), 2);
        assert_eq!(pi, [0, 1]);

        let (q, pi) = quotient_to_poset(&total2());
        assert_eq!(q.len(), 1);
        assert_eq!(q.carrier(), [r#"["e","s"]"#]);
        assert_eq!(pi, [0, 0]);

        let m2 = monoid("e", "z", "z");
        let (q, pi) = quotient_to_poset(&build_l_preorder(&m2, Ob(0), Ob(0)).unwrap());
        assert_eq!(q.carrier(), [r#"["e"]"#, r#"["z"]"#]);
        assert!(q.leq(pi[1], pi[0]) && !q.leq(pi[0], pi[1]));
        assert_eq!(q.covers(), [(1, 0)]);
    }

    #[test]
    fn alexandroff_examples() {
        let discrete = Proset::generated_by(names(&["a", "b", "c"]), &[]).unwrap();
        assert_eq!(alexandroff_opens(&discrete).unwrap().opens().len(), 8);

        let t = alexandroff_opens(&chain2()).unwrap();
        assert_eq!(t.opens(), [0b00, 0b10, 0b11]);
        assert!(t.is_alexandroff());

        let t = alexandroff_opens(&total2()).unwrap();
        assert_eq!(t.opens(), [0b00, 0b11]);

        let down = alexandroff_opens_with(&chain2(), OpenConvention::DownSets).unwrap();
        assert_eq!(down.opens(), [0b00, 0b01, 0b11]);
    }

    #[test]
    fn alexandroff_guard() {
        let big = Proset::generated_by((0..21).map(|i| i.to_string()).collect(), &[]).unwrap();
        assert!(matches!(alexandroff_opens(&big), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn monotone_and_continuous_examples() {
        let c = chain2();
        let tc = alexandroff_opens(&c).unwrap();
        assert!(is_monotone(&[0, 1], &c, &c).unwrap());
        assert!(is_continuous(&[0, 1], &tc, &tc).unwrap());
        assert!(!is_monotone(&[1, 0], &c, &c).unwrap());
        assert!(!is_continuous(&[1, 0], &tc, &tc).unwrap());
        assert!(matches!(is_monotone(&[0], &c, &c), Err(Error::NonTotalMap(_))));
        assert!(matches!(is_continuous(&[0, 5], &tc, &tc), Err(Error::NonTotalMap(_))));

        let m2 = monoid("e", "z", "z");
        let p = build_l_preorder(&m2, Ob(0), Ob(0)).unwrap();
        let (q, pi) = quotient_to_poset(&p);
        assert!(is_monotone(&pi, &p, &q).unwrap());
        let (tp, tq) = (alexandroff_opens(&p).unwrap(), alexandroff_opens(&q).unwrap());
        assert!(is_continuous(&pi, &tp, &tq).unwrap());
    }

    #[test]
    fn stratification_examples() {
        let m2 = monoid("e", "z", "z");
        let h = SetValuedFunctor::hom(&m2, Ob(0), Variance::Contravariant);
        let s = stratification_map(Ob(0), Ob(0), &h, 12).unwrap();
        let label = |i: usize| s.target().carrier()[s.map()[i]].clone();
        assert_eq!(label(0), r#"["e","z"]"#);
        assert_eq!(label(1), r#"["z"]"#);

        let z2 = monoid("e", "s", "e");
        let h = SetValuedFunctor::hom(&z2, Ob(0), Variance::Contravariant);
        let s = stratification_map(Ob(0), Ob(0), &h, 12).unwrap();
        assert_eq!(s.map()[0], s.map()[1]);
    }

    #[test]
    fn non_monotone_stratification_is_rejected() {
        let target = Poset::new(chain2()).unwrap();
        assert!(matches!(StratificationMap::new(chain2(), target, vec![1, 0]), Err(Error::NotMonotone(..))));
    }
}
