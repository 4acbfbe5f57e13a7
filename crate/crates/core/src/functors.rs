//! Set-valued functors of either variance, hom-functors, and the subset
//! functor acting by direct image.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{opposite, FiniteCategory, Mor, Ob};
use crate::report::{Rule, ValidationReport, Violation};

/// Default bound on `|F(X)|` for materializing `Sub F` (2^12 subsets).
pub const DEFAULT_MATERIALIZATION_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Covariant,
    Contravariant,
}

impl Variance {
    pub fn flip(self) -> Self {
        match self {
            Variance::Covariant => Variance::Contravariant,
            Variance::Contravariant => Variance::Covariant,
        }
    }
}

/// On-disk functor schema. A table for `f: X -> Y` maps `F(X) -> F(Y)` when
/// covariant and `F(Y) -> F(X)` when contravariant. Identity tables may be
/// omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorFile {
    pub variance: Variance,
    pub on_objects: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub on_morphisms: BTreeMap<String, BTreeMap<String, String>>,
}

/// A functor from a finite category to finite sets.
///
/// Elements of each `F(X)` are kept sorted by id and addressed by position.
/// `actions[m]` is the function table of `F(m)` from the set at
/// [`action_source`](Self::action_source) to the set at
/// [`action_target`](Self::action_target).
#[derive(Debug, Clone)]
pub struct SetValuedFunctor {
    base: Arc<FiniteCategory>,
    variance: Variance,
    sets: Vec<Vec<String>>,
    actions: Vec<Vec<usize>>,
}

impl PartialEq for SetValuedFunctor {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.base, &other.base) || self.base == other.base)
            && self.variance == other.variance
            && self.sets == other.sets
            && self.actions == other.actions
    }
}

impl Eq for SetValuedFunctor {}

impl SetValuedFunctor {
    /// Builds a functor from parts, checking shape and the functor laws.
    pub fn new(
        base: Arc<FiniteCategory>,
        variance: Variance,
        sets: Vec<Vec<String>>,
        actions: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let mut sets = sets;
        let mut actions = actions;
        if sets.len() != base.object_count() || actions.len() != base.morphism_count() {
            return Err(Error::Shape("one set per object and one table per morphism".into()));
        }
        // reorder elements canonically, carrying the tables along
        let perms: Vec<Vec<usize>> = sets
            .iter_mut()
            .map(|set| {
                let mut order: Vec<usize> = (0..set.len()).collect();
                order.sort_by(|&a, &b| set[a].cmp(&set[b]));
                let mut rank = vec![0; set.len()];
                for (r, &i) in order.iter().enumerate() {
                    rank[i] = r;
                }
                let sorted: Vec<String> = order.iter().map(|&i| set[i].clone()).collect();
                *set = sorted;
                rank
            })
            .collect();
        let functor_shape = |m: usize| match variance {
            Variance::Covariant => (base.morphisms()[m].dom, base.morphisms()[m].cod),
            Variance::Contravariant => (base.morphisms()[m].cod, base.morphisms()[m].dom),
        };
        for (m, table) in actions.iter_mut().enumerate() {
            let (src, tgt) = functor_shape(m);
            if table.len() != sets[src.0].len() || table.iter().any(|&v| v >= sets[tgt.0].len()) {
                return Err(Error::Shape(format!(
                    "table for `{}` is not a function between the right sets",
                    base.morphism_id(Mor(m))
                )));
            }
            let mut reordered = vec![0; table.len()];
            for (i, &v) in table.iter().enumerate() {
                reordered[perms[src.0][i]] = perms[tgt.0][v];
            }
            *table = reordered;
        }
        for set in &sets {
            if set.windows(2).any(|w| w[0] == w[1]) || set.iter().any(String::is_empty) {
                return Err(Error::Shape("element ids must be nonempty and unique".into()));
            }
        }
        let functor = SetValuedFunctor { base, variance, sets, actions };
        let report = functor.check_laws();
        if !report.is_empty() {
            return Err(Error::InvalidFunctor(report));
        }
        Ok(functor)
    }

    pub fn from_file(base: Arc<FiniteCategory>, file: &FunctorFile) -> Result<Self> {
        let (parts, report) = parts_from_file(&base, file);
        match parts {
            Some((sets, actions)) if report.is_empty() => Self::new(base, file.variance, sets, actions),
            _ => Err(Error::InvalidFunctor(report)),
        }
    }

    pub fn to_file(&self) -> FunctorFile {
        let cat = &self.base;
        let on_objects = cat.object_indices().map(|x| (cat.object_id(x).to_string(), self.sets[x.0].clone())).collect();
        let on_morphisms = cat
            .morphism_indices()
            .filter(|&m| !cat.is_identity(m))
            .map(|m| {
                let (src, tgt) = (self.action_source(m), self.action_target(m));
                let table = self.actions[m.0]
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (self.sets[src.0][i].clone(), self.sets[tgt.0][v].clone()))
                    .collect();
                (cat.morphism_id(m).to_string(), table)
            })
            .collect();
        FunctorFile { variance: self.variance, on_objects, on_morphisms }
    }

    /// The representable `h^A = [-, A]` (contravariant) or `h_A = [A, -]`
    /// (covariant). Elements are the morphism ids.
    pub fn hom(cat: &Arc<FiniteCategory>, a: Ob, variance: Variance) -> Self {
        let sets_of: Vec<Vec<Mor>> = cat
            .object_indices()
            .map(|x| match variance {
                Variance::Contravariant => cat.hom(x, a),
                Variance::Covariant => cat.hom(a, x),
            })
            .collect();
        // position of each morphism inside the hom-set that contains it
        let mut pos = vec![usize::MAX; cat.morphism_count()];
        for set in &sets_of {
            for (i, m) in set.iter().enumerate() {
                pos[m.0] = i;
            }
        }
        let actions = cat
            .morphism_indices()
            .map(|m| {
                let src = match variance {
                    Variance::Contravariant => cat.cod(m),
                    Variance::Covariant => cat.dom(m),
                };
                sets_of[src.0]
                    .iter()
                    .map(|&k| {
                        let composite = match variance {
                            Variance::Contravariant => cat.compose(k, m),
                            Variance::Covariant => cat.compose(m, k),
                        };
                        pos[composite.expect("composable in a valid category").0]
                    })
                    .collect()
            })
            .collect();
        let sets = sets_of.iter().map(|set| set.iter().map(|&m| cat.morphism_id(m).to_string()).collect()).collect();
        SetValuedFunctor { base: cat.clone(), variance, sets, actions }
    }

    /// Every object goes to the same set and every morphism to the identity.
    pub fn constant<S: AsRef<str>>(cat: &Arc<FiniteCategory>, elements: &[S], variance: Variance) -> Result<Self> {
        let set: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let ident: Vec<usize> = (0..set.len()).collect();
        Self::new(cat.clone(), variance, vec![set; cat.object_count()], vec![ident; cat.morphism_count()])
    }

    /// Disjoint union; elements are tagged `0/` (left) and `1/` (right).
    pub fn coproduct(left: &Self, right: &Self) -> Result<Self> {
        if !same_base(left, right) {
            return Err(Error::BaseMismatch);
        }
        if left.variance != right.variance {
            return Err(Error::VarianceMismatch);
        }
        let cat = &left.base;
        let sets = cat
            .object_indices()
            .map(|x| {
                let l = left.sets[x.0].iter().map(|e| format!("0/{e}"));
                let r = right.sets[x.0].iter().map(|e| format!("1/{e}"));
                l.chain(r).collect()
            })
            .collect();
        let actions = cat
            .morphism_indices()
            .map(|m| {
                let offset = left.size(left.action_target(m));
                let l = left.actions[m.0].iter().copied();
                let r = right.actions[m.0].iter().map(|&v| v + offset);
                l.chain(r).collect()
            })
            .collect();
        Self::new(cat.clone(), left.variance, sets, actions)
    }

    /// The same tables read as a functor of the opposite variance over `op`,
    /// which must be `opposite(self.base())`.
    pub fn dual_over(&self, op: &Arc<FiniteCategory>) -> Result<Self> {
        if op.object_count() != self.base.object_count()
            || op.morphism_count() != self.base.morphism_count()
            || self.base.morphism_indices().any(|m| op.dom(m) != self.base.cod(m) || op.cod(m) != self.base.dom(m))
        {
            return Err(Error::BaseMismatch);
        }
        Ok(SetValuedFunctor {
            base: op.clone(),
            variance: self.variance.flip(),
            sets: self.sets.clone(),
            actions: self.actions.clone(),
        })
    }

    pub fn dual(&self) -> Self {
        let op = Arc::new(opposite(&self.base));
        self.dual_over(&op).expect("opposite has matching shape")
    }

    pub fn base(&self) -> &Arc<FiniteCategory> {
        &self.base
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn set(&self, x: Ob) -> &[String] {
        &self.sets[x.0]
    }

    pub fn size(&self, x: Ob) -> usize {
        self.sets[x.0].len()
    }

    pub fn element_id(&self, x: Ob, i: usize) -> &str {
        &self.sets[x.0][i]
    }

    pub fn element_index(&self, x: Ob, id: &str) -> Result<usize> {
        self.sets[x.0]
            .binary_search_by(|e| e.as_str().cmp(id))
            .map_err(|_| Error::UnknownElement { object: self.base.object_id(x).to_string(), element: id.to_string() })
    }

    /// Object whose set is the domain of `F(m)`.
    pub fn action_source(&self, m: Mor) -> Ob {
        match self.variance {
            Variance::Covariant => self.base.dom(m),
            Variance::Contravariant => self.base.cod(m),
        }
    }

    /// Object whose set is the codomain of `F(m)`.
    pub fn action_target(&self, m: Mor) -> Ob {
        match self.variance {
            Variance::Covariant => self.base.cod(m),
            Variance::Contravariant => self.base.dom(m),
        }
    }

    pub fn action(&self, m: Mor) -> &[usize] {
        &self.actions[m.0]
    }

    pub fn apply(&self, m: Mor, x: usize) -> usize {
        self.actions[m.0][x]
    }

    /// Names of the elements of a subset of `F(x)`.
    pub fn subset_ids(&self, x: Ob, subset: &[usize]) -> Vec<String> {
        subset.iter().map(|&i| self.sets[x.0][i].clone()).collect()
    }

    /// Identity and composition laws on the stored tables.
    pub fn check_laws(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let cat = &self.base;
        for x in cat.object_indices() {
            let id = cat.identity(x);
            if let Some(e) = (0..self.size(x)).find(|&e| self.actions[id.0][e] != e) {
                report.push(Violation::new(
                    Rule::FunctorIdentity,
                    [cat.morphism_id(id), self.element_id(x, e)],
                    format!("F({}) moves `{}`", cat.morphism_id(id), self.element_id(x, e)),
                ));
            }
        }
        for f in cat.morphism_indices() {
            for g in cat.morphism_indices().filter(|&g| cat.dom(g) == cat.cod(f)) {
                let Some(gf) = cat.compose(g, f) else { continue };
                // covariant: F(g∘f) = F(g)∘F(f); contravariant: F(g∘f) = F(f)∘F(g)
                let (first, second) = match self.variance {
                    Variance::Covariant => (f, g),
                    Variance::Contravariant => (g, f),
                };
                let src = self.action_source(first);
                let bad = (0..self.size(src)).find(|&e| self.apply(gf, e) != self.apply(second, self.apply(first, e)));
                if let Some(e) = bad {
                    report.push(Violation::new(
                        Rule::FunctorComposition,
                        [cat.morphism_id(g), cat.morphism_id(f), self.element_id(src, e)],
                        format!(
                            "F({} ∘ {}) disagrees with the composite of tables at `{}`",
                            cat.morphism_id(g),
                            cat.morphism_id(f),
                            self.element_id(src, e)
                        ),
                    ));
                }
            }
        }
        report
    }
}

pub(crate) fn same_base(a: &SetValuedFunctor, b: &SetValuedFunctor) -> bool {
    Arc::ptr_eq(&a.base, &b.base) || a.base == b.base
}

/// `h^A` or `h_A` for an object named `a`.
pub fn hom_functor(cat: &Arc<FiniteCategory>, a: &str, variance: Variance) -> Result<SetValuedFunctor> {
    Ok(SetValuedFunctor::hom(cat, cat.object(a)?, variance))
}

type Parts = (Vec<Vec<String>>, Vec<Vec<usize>>);

fn parts_from_file(cat: &FiniteCategory, file: &FunctorFile) -> (Option<Parts>, ValidationReport) {
    let mut report = ValidationReport::default();
    for x in file.on_objects.keys() {
        if cat.object(x).is_err() {
            report.push(Violation::new(Rule::DanglingId, [x.as_str()], "unknown object"));
        }
    }
    for m in file.on_morphisms.keys() {
        if cat.morphism_by_id(m).is_err() {
            report.push(Violation::new(Rule::DanglingId, [m.as_str()], "unknown morphism"));
        }
    }
    let mut sets = Vec::with_capacity(cat.object_count());
    for x in cat.object_indices() {
        let id = cat.object_id(x);
        let Some(set) = file.on_objects.get(id) else {
            report.push(Violation::new(Rule::MissingTable, [id], "no set given for object"));
            sets.push(Vec::new());
            continue;
        };
        let mut sorted = set.clone();
        sorted.sort();
        for w in sorted.windows(2).filter(|w| w[0] == w[1]) {
            report.push(Violation::new(Rule::DuplicateId, [id, w[0].as_str()], "duplicate element"));
        }
        if sorted.iter().any(String::is_empty) {
            report.push(Violation::new(Rule::EmptyId, [id], "empty element id"));
        }
        sorted.dedup();
        sets.push(sorted);
    }
    let index = |x: Ob, e: &str| sets[x.0].binary_search_by(|s: &String| s.as_str().cmp(e)).ok();
    let mut actions = Vec::with_capacity(cat.morphism_count());
    for m in cat.morphism_indices() {
        let (src, tgt) = match file.variance {
            Variance::Covariant => (cat.dom(m), cat.cod(m)),
            Variance::Contravariant => (cat.cod(m), cat.dom(m)),
        };
        let mid = cat.morphism_id(m);
        let Some(table) = file.on_morphisms.get(mid) else {
            if cat.is_identity(m) {
                actions.push((0..sets[src.0].len()).collect());
            } else {
                report.push(Violation::new(Rule::MissingTable, [mid], "no function table for morphism"));
                actions.push(Vec::new());
            }
            continue;
        };
        let mut row = vec![usize::MAX; sets[src.0].len()];
        for (k, v) in table {
            let Some(i) = index(src, k) else {
                report.push(Violation::new(
                    Rule::OutOfRange,
                    [mid, k.as_str()],
                    format!("`{k}` is not in the set at `{}`", cat.object_id(src)),
                ));
                continue;
            };
            let Some(j) = index(tgt, v) else {
                report.push(Violation::new(
                    Rule::OutOfRange,
                    [mid, v.as_str()],
                    format!("`{v}` is not in the set at `{}`", cat.object_id(tgt)),
                ));
                continue;
            };
            row[i] = j;
        }
        if let Some(i) = row.iter().position(|&v| v == usize::MAX) {
            report.push(Violation::new(
                Rule::PartialTable,
                [mid, sets[src.0][i].as_str()],
                format!("no value for `{}`", sets[src.0][i]),
            ));
        }
        actions.push(row);
    }
    if report.has_structural() {
        return (None, report);
    }
    (Some((sets, actions)), report)
}

/// Checks a functor file over `cat`: structural problems first, then the
/// identity and composition laws.
pub fn validate_functor(cat: &Arc<FiniteCategory>, file: &FunctorFile) -> ValidationReport {
    let (parts, mut report) = parts_from_file(cat, file);
    if let Some((sets, actions)) = parts {
        let functor = SetValuedFunctor { base: cat.clone(), variance: file.variance, sets, actions };
        report.extend(functor.check_laws());
    }
    report
}

/// `{ F(m)(s) : s ∈ subset }`, sorted. `subset` indexes the domain of `F(m)`.
pub fn direct_image(functor: &SetValuedFunctor, m: Mor, subset: &[usize]) -> Result<Vec<usize>> {
    let src = functor.action_source(m);
    let mut image = Vec::with_capacity(subset.len());
    for &s in subset {
        if s >= functor.size(src) {
            return Err(Error::UnknownElement {
                object: functor.base.object_id(src).to_string(),
                element: format!("#{s}"),
            });
        }
        image.push(functor.apply(m, s));
    }
    image.sort_unstable();
    image.dedup();
    Ok(image)
}

/// Canonical name of a subset as an element of `Sub F`: the JSON array of
/// its element ids.
pub fn subset_id(functor: &SetValuedFunctor, x: Ob, subset: &[usize]) -> String {
    serde_json::to_string(&functor.subset_ids(x, subset)).expect("strings serialize")
}

/// All subsets of `F(object)`, in the canonical order of their ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetFamily {
    pub object: Ob,
    pub subsets: Vec<Vec<usize>>,
}

fn check_cap(functor: &SetValuedFunctor, x: Ob, cap: usize) -> Result<()> {
    let size = functor.size(x);
    if size > cap || size >= usize::BITS as usize {
        return Err(Error::MaterializationTooLarge { object: functor.base.object_id(x).to_string(), size, cap });
    }
    Ok(())
}

pub fn subset_family(functor: &SetValuedFunctor, x: Ob, cap: usize) -> Result<SubsetFamily> {
    check_cap(functor, x, cap)?;
    let n = functor.size(x);
    let mut keyed: Vec<(String, Vec<usize>)> = (0..1usize << n)
        .map(|mask| {
            let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            (subset_id(functor, x, &subset), subset)
        })
        .collect();
    keyed.sort();
    Ok(SubsetFamily { object: x, subsets: keyed.into_iter().map(|(_, s)| s).collect() })
}

/// The subset functor `X ↦ Sub(F(X))`, acting by direct image. Fails if some
/// `|F(X)|` exceeds `cap`; use [`direct_image`] lazily in that case.
pub fn sub_functor(functor: &SetValuedFunctor, cap: usize) -> Result<SetValuedFunctor> {
    let cat = &functor.base;
    let families = cat.object_indices().map(|x| subset_family(functor, x, cap)).collect::<Result<Vec<_>>>()?;
    let lookup: Vec<HashMap<&[usize], usize>> =
        families.iter().map(|fam| fam.subsets.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()).collect();
    let sets =
        families.iter().map(|fam| fam.subsets.iter().map(|s| subset_id(functor, fam.object, s)).collect()).collect();
    let actions = cat
        .morphism_indices()
        .map(|m| {
            let (src, tgt) = (functor.action_source(m), functor.action_target(m));
            families[src.0]
                .subsets
                .iter()
                .map(|s| {
                    let image = direct_image(functor, m, s).expect("subset of the domain");
                    lookup[tgt.0][image.as_slice()]
                })
                .collect()
        })
        .collect();
    Ok(SetValuedFunctor { base: cat.clone(), variance: functor.variance, sets, actions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{monoid_category, CategoryFile, MorphismDecl};

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

    fn z2() -> Arc<FiniteCategory> {
        Arc::new(
            monoid_category(&["e", "s"], &[("e", "e", "e"), ("e", "s", "s"), ("s", "e", "s"), ("s", "s", "e")], "e")
                .unwrap(),
        )
    }

    fn ids(f: &SetValuedFunctor, x: Ob, s: &[usize]) -> Vec<String> {
        f.subset_ids(x, s)
    }

    #[test]
    fn constant_functor_is_lawful() {
        let cat = c2();
        let f = SetValuedFunctor::constant(&cat, &["*"], Variance::Contravariant).unwrap();
        assert!(validate_functor(&cat, &f.to_file()).is_empty());
    }

    #[test]
    fn hom_functor_on_c2() {
        let cat = c2();
        let h = hom_functor(&cat, "1", Variance::Contravariant).unwrap();
        assert!(h.check_laws().is_empty());
        assert!(validate_functor(&cat, &h.to_file()).is_empty());
        let (zero, one) = (cat.object("0").unwrap(), cat.object("1").unwrap());
        assert_eq!(h.set(zero), ["a"]);
        assert_eq!(h.set(one), ["id_1"]);
        let a = cat.morphism_by_id("a").unwrap();
        assert_eq!(h.element_id(zero, h.apply(a, 0)), "a");
        assert!(matches!(hom_functor(&cat, "2", Variance::Contravariant), Err(Error::UnknownObject(_))));
    }

    #[test]
    fn hom_functor_on_discrete_and_z2() {
        let d = Arc::new(crate::fincat::discrete_category(&["X"]).unwrap());
        let h = hom_functor(&d, "X", Variance::Contravariant).unwrap();
        assert_eq!(h.set(Ob(0)), ["id_X"]);

        let cat = z2();
        let h = hom_functor(&cat, "•", Variance::Contravariant).unwrap();
        assert_eq!(h.set(Ob(0)), ["e", "s"]);
        let s = cat.morphism_by_id("s").unwrap();
        assert_eq!(h.action(s), [1, 0]);
    }

    #[test]
    fn non_involutive_action_breaks_composition() {
        let cat = z2();
        let file = FunctorFile {
            variance: Variance::Contravariant,
            on_objects: BTreeMap::from([("•".into(), vec!["0".into(), "1".into(), "2".into()])]),
            on_morphisms: BTreeMap::from([(
                "s".into(),
                BTreeMap::from([("0".into(), "1".into()), ("1".into(), "2".into()), ("2".into(), "0".into())]),
            )]),
        };
        let report = validate_functor(&cat, &file);
        assert!(report.structural.is_empty());
        let v = report.find(Rule::FunctorComposition).expect("composition violation");
        assert_eq!(&v.witness[..2], ["s", "s"]);
        assert!(SetValuedFunctor::from_file(cat, &file).is_err());
    }

    #[test]
    fn structural_functor_errors() {
        let cat = c2();
        let file = FunctorFile {
            variance: Variance::Contravariant,
            on_objects: BTreeMap::from([("0".into(), vec!["x".into()]), ("1".into(), vec!["y".into()])]),
            on_morphisms: BTreeMap::from([("a".into(), BTreeMap::from([("x".into(), "y".into())]))]),
        };
        // contravariant: F(a) must map F(1) -> F(0)
        let report = validate_functor(&cat, &file);
        assert!(report.find(Rule::OutOfRange).is_some());
        let file = FunctorFile { on_morphisms: BTreeMap::new(), ..file };
        assert!(validate_functor(&cat, &file).find(Rule::MissingTable).is_some());
    }

    #[test]
    fn direct_image_examples() {
        let cat = c2();
        let h = hom_functor(&cat, "1", Variance::Contravariant).unwrap();
        let a = cat.morphism_by_id("a").unwrap();
        assert!(direct_image(&h, a, &[]).unwrap().is_empty());
        assert_eq!(ids(&h, Ob(0), &direct_image(&h, a, &[0]).unwrap()), ["a"]);
        assert!(direct_image(&h, a, &[3]).is_err());

        let cat = z2();
        let h = hom_functor(&cat, "•", Variance::Contravariant).unwrap();
        let s = cat.morphism_by_id("s").unwrap();
        assert_eq!(direct_image(&h, s, &[0, 1]).unwrap(), [0, 1]);
    }

    #[test]
    fn sub_functor_examples() {
        let cat = c2();
        let h = hom_functor(&cat, "1", Variance::Contravariant).unwrap();
        let sub = sub_functor(&h, DEFAULT_MATERIALIZATION_CAP).unwrap();
        assert_eq!(sub.size(Ob(0)), 2);
        assert_eq!(sub.size(Ob(1)), 2);
        assert!(sub.check_laws().is_empty());

        let cat = z2();
        let h = hom_functor(&cat, "•", Variance::Contravariant).unwrap();
        let sub = sub_functor(&h, DEFAULT_MATERIALIZATION_CAP).unwrap();
        assert_eq!(sub.set(Ob(0)), [r#"["e","s"]"#, r#"["e"]"#, r#"["s"]"#, "[]"]);
        let s = cat.morphism_by_id("s").unwrap();
        assert_eq!(sub.action(s), [0, 2, 1, 3]);
        assert!(validate_functor(&cat, &sub.to_file()).is_empty());
    }

    #[test]
    fn empty_set_has_one_subset() {
        let cat = c2();
        let f = SetValuedFunctor::new(
            cat.clone(),
            Variance::Contravariant,
            vec![vec![], vec![]],
            vec![vec![], vec![], vec![]],
        )
        .unwrap();
        let sub = sub_functor(&f, 12).unwrap();
        assert_eq!(sub.set(Ob(0)), ["[]"]);
    }

    #[test]
    fn materialization_cap() {
        let cat = c2();
        let big: Vec<String> = (0..13).map(|i| format!("e{i:02}")).collect();
        let f = SetValuedFunctor::constant(&cat, &big, Variance::Covariant).unwrap();
        match sub_functor(&f, DEFAULT_MATERIALIZATION_CAP) {
            Err(Error::MaterializationTooLarge { object, size, cap }) => {
                assert_eq!((object.as_str(), size, cap), ("0", 13, 12));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coproduct_and_dual_are_lawful() {
        let cat = z2();
        let h = hom_functor(&cat, "•", Variance::Contravariant).unwrap();
        let two = SetValuedFunctor::constant(&cat, &["p", "q"], Variance::Contravariant).unwrap();
        let sum = SetValuedFunctor::coproduct(&h, &two).unwrap();
        assert_eq!(sum.size(Ob(0)), 4);
        assert!(sum.check_laws().is_empty());

        let c = c2();
        let h = hom_functor(&c, "1", Variance::Contravariant).unwrap();
        let d = h.dual();
        assert_eq!(d.variance(), Variance::Covariant);
        assert!(validate_functor(d.base(), &d.to_file()).is_empty());
    }

    #[test]
    fn new_sorts_elements_and_carries_tables() {
        let cat = z2();
        let s = cat.morphism_by_id("s").unwrap();
        let e = cat.morphism_by_id("e").unwrap();
        let mut actions = vec![vec![]; 2];
        actions[e.0] = vec![0, 1, 2];
        // on ["c", "a", "b"]: swap c and a, fix b
        actions[s.0] = vec![1, 0, 2];
        let f = SetValuedFunctor::new(
            cat.clone(),
            Variance::Covariant,
            vec![vec!["c".into(), "a".into(), "b".into()]],
            actions,
        )
        .unwrap();
        assert_eq!(f.set(Ob(0)), ["a", "b", "c"]);
        assert_eq!(f.action(s), [2, 1, 0]);
    }
}
