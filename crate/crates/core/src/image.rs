//! The image transformation `Im_F: h^A ⇒ Sub F`, its brute-force oracle,
//! the coarse classification of a hom-set, and dependence sets.
//!
//! For `f ∈ [X, A]`, `Im_F(f) = F(f)(F(A)) ⊆ F(X)`. Since `F(f)(α) = τ_α(f)`,
//! this is the set of values of `f` under all transformations `h^A ⇒ F`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{Mor, Ob};
use crate::functors::{direct_image, sub_functor, subset_id, SetValuedFunctor, Variance};
use crate::nat::{enumerate_nat_trans, NaturalTransformation, SearchOptions};
use crate::report::{Rule, ValidationReport, Violation};

fn require_endpoint(functor: &SetValuedFunctor, a: Ob, f: Mor) -> Result<()> {
    if functor.action_source(f) != a {
        let cat = functor.base();
        return Err(Error::WrongEndpoint {
            morphism: cat.morphism_id(f).to_string(),
            object: cat.object_id(a).to_string(),
        });
    }
    Ok(())
}

/// `Im_F(f)` for `f: X -> A` (contravariant) or `f: A -> X` (covariant), as
/// sorted indices into `F(X)`.
pub fn image_of_morphism(functor: &SetValuedFunctor, a: Ob, f: Mor) -> Result<Vec<usize>> {
    require_endpoint(functor, a, f)?;
    let everything: Vec<usize> = (0..functor.size(a)).collect();
    direct_image(functor, f, &everything)
}

/// `Im_F` materialized as a natural transformation `h^A ⇒ Sub F`.
pub fn im_transformation(a: Ob, functor: &SetValuedFunctor, cap: usize) -> Result<NaturalTransformation> {
    let cat = functor.base();
    let hom = Arc::new(SetValuedFunctor::hom(cat, a, functor.variance()));
    let sub = Arc::new(sub_functor(functor, cap)?);
    let components = cat
        .object_indices()
        .map(|x| {
            hom.set(x)
                .iter()
                .map(|id| {
                    let f = cat.morphism_by_id(id)?;
                    let image = image_of_morphism(functor, a, f)?;
                    sub.element_index(x, &subset_id(functor, x, &image))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    NaturalTransformation::new(hom, sub, components)
}

/// Naturality of `Im_F` checked square by square with direct images, without
/// materializing `Sub F`: for every `m` and every `k` in the hom-set that
/// `h(m)` acts on, `F(m)(Im(k)) = Im(h(m)(k))`.
pub fn check_im_naturality(a: Ob, functor: &SetValuedFunctor) -> Result<ValidationReport> {
    let cat = functor.base();
    let hom = SetValuedFunctor::hom(cat, a, functor.variance());
    let mut report = ValidationReport::default();
    for m in cat.morphism_indices() {
        let s = hom.action_source(m);
        for (i, id) in hom.set(s).iter().enumerate() {
            let k = cat.morphism_by_id(id)?;
            let moved = cat.morphism_by_id(hom.element_id(hom.action_target(m), hom.apply(m, i)))?;
            let lhs = direct_image(functor, m, &image_of_morphism(functor, a, k)?)?;
            let rhs = image_of_morphism(functor, a, moved)?;
            if lhs != rhs {
                report.push(Violation::new(
                    Rule::Naturality,
                    [cat.morphism_id(m), id.as_str()],
                    format!(
                        "image of Im({id}) under F({}) differs from Im({})",
                        cat.morphism_id(m),
                        cat.morphism_id(moved)
                    ),
                ));
            }
        }
    }
    Ok(report)
}

/// Brute-force `Im_F`: all transformations `h^A ⇒ F` enumerated once, then
/// queried per morphism.
pub struct NatImageOracle {
    a: Ob,
    hom: Arc<SetValuedFunctor>,
    transformations: Vec<NaturalTransformation>,
}

impl NatImageOracle {
    pub fn new(a: Ob, functor: &Arc<SetValuedFunctor>, options: &SearchOptions) -> Result<Self> {
        let hom = Arc::new(SetValuedFunctor::hom(functor.base(), a, functor.variance()));
        let transformations = enumerate_nat_trans(&hom, functor, options)?;
        Ok(NatImageOracle { a, hom, transformations })
    }

    pub fn transformation_count(&self) -> usize {
        self.transformations.len()
    }

    /// `{ τ_X(f) : τ ∈ Nat(h^A, F) }`.
    pub fn image(&self, f: Mor) -> Result<Vec<usize>> {
        require_endpoint(&self.hom, self.a, f)?;
        let cat = self.hom.base();
        let x = self.hom.action_target(f);
        let position = self.hom.element_index(x, cat.morphism_id(f))?;
        let mut values: Vec<usize> = self.transformations.iter().map(|t| t.apply(x, position)).collect();
        values.sort_unstable();
        values.dedup();
        Ok(values)
    }
}

pub fn nat_image_oracle(a: Ob, functor: &Arc<SetValuedFunctor>, f: Mor, options: &SearchOptions) -> Result<Vec<usize>> {
    NatImageOracle::new(a, functor, options)?.image(f)
}

/// Partition of the hom-set at `x` (`[X, A]`, or `[A, X]` when covariant) by
/// equality of images. Blocks are ordered by their least member.
pub fn coarse_classes(x: Ob, a: Ob, functor: &SetValuedFunctor) -> Result<Vec<Vec<Mor>>> {
    let cat = functor.base();
    let members = match functor.variance() {
        Variance::Contravariant => cat.hom(x, a),
        Variance::Covariant => cat.hom(a, x),
    };
    let mut blocks: BTreeMap<Vec<usize>, Vec<Mor>> = BTreeMap::new();
    for f in members {
        blocks.entry(image_of_morphism(functor, a, f)?).or_default().push(f);
    }
    let mut blocks: Vec<Vec<Mor>> = blocks.into_values().collect();
    blocks.sort_by_key(|b| b[0]);
    Ok(blocks)
}

/// Which classes `β ∈ G(X)` depend on the class represented by `f_α: X -> A`.
#[derive(Debug, Clone)]
pub struct DependenceQuery {
    x: Ob,
    f_alpha: Mor,
    g: Arc<SetValuedFunctor>,
}

impl DependenceQuery {
    pub fn new(x: Ob, f_alpha: Mor, g: Arc<SetValuedFunctor>) -> Result<Self> {
        if g.variance() != Variance::Contravariant {
            return Err(Error::VarianceMismatch);
        }
        let cat = g.base();
        if cat.dom(f_alpha) != x {
            return Err(Error::WrongEndpoint {
                morphism: cat.morphism_id(f_alpha).to_string(),
                object: cat.object_id(x).to_string(),
            });
        }
        Ok(DependenceQuery { x, f_alpha, g })
    }

    /// Builds the query from `α ∈ F(X)` where `F` is represented by `A`
    /// through the natural isomorphism `iso: h^A ⇒ F`: `f_α = iso_X⁻¹(α)`.
    pub fn from_representable(
        iso: &NaturalTransformation,
        a: Ob,
        x: Ob,
        alpha: usize,
        g: Arc<SetValuedFunctor>,
    ) -> Result<Self> {
        let cat = iso.source().base();
        let hom = SetValuedFunctor::hom(cat, a, Variance::Contravariant);
        if **iso.source() != hom {
            return Err(Error::NotRepresentable(cat.object_id(a).to_string()));
        }
        for y in cat.object_indices() {
            let mut hit = vec![false; iso.target().size(y)];
            for &v in iso.component(y) {
                hit[v] = true;
            }
            if iso.component(y).len() != hit.len() || hit.contains(&false) {
                return Err(Error::Shape(format!("component at `{}` is not a bijection", cat.object_id(y))));
            }
        }
        let position = iso.component(x).iter().position(|&v| v == alpha).ok_or_else(|| Error::UnknownElement {
            object: cat.object_id(x).to_string(),
            element: format!("#{alpha}"),
        })?;
        let f_alpha = cat.morphism_by_id(hom.element_id(x, position))?;
        Self::new(x, f_alpha, g)
    }

    pub fn x(&self) -> Ob {
        self.x
    }

    pub fn f_alpha(&self) -> Mor {
        self.f_alpha
    }

    pub fn a(&self) -> Ob {
        self.g.base().cod(self.f_alpha)
    }

    pub fn functor(&self) -> &Arc<SetValuedFunctor> {
        &self.g
    }
}

/// Closed form: `G(f_α)(G(A))`.
pub fn depends_set(query: &DependenceQuery) -> Result<Vec<usize>> {
    image_of_morphism(&query.g, query.a(), query.f_alpha)
}

/// The defining quantifier, finitized: `β` depends on `α` iff for every object
/// `Y` and every `f: X -> Y` through which `f_α` factors, `β` lies in
/// `G(f)(G(Y))`.
pub fn depends_oracle(query: &DependenceQuery, beta: usize) -> Result<bool> {
    let g = &query.g;
    let cat = g.base();
    let x = query.x;
    if beta >= g.size(x) {
        return Err(Error::UnknownElement { object: cat.object_id(x).to_string(), element: format!("#{beta}") });
    }
    let a = query.a();
    let hom = SetValuedFunctor::hom(cat, a, Variance::Contravariant);
    let alpha_position = hom.element_index(x, cat.morphism_id(query.f_alpha))?;
    for y in cat.object_indices() {
        let through_y: Vec<usize> = (0..hom.size(y)).collect();
        for f in cat.hom(x, y) {
            if !direct_image(&hom, f, &through_y)?.contains(&alpha_position) {
                continue;
            }
            let all_of_y: Vec<usize> = (0..g.size(y)).collect();
            if !direct_image(g, f, &all_of_y)?.contains(&beta) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{monoid_category, CategoryFile, FiniteCategory, MorphismDecl};
    use crate::functors::DEFAULT_MATERIALIZATION_CAP;
    use crate::nat::check_naturality;

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

    fn names(f: &SetValuedFunctor, x: Ob, s: &[usize]) -> Vec<String> {
        f.subset_ids(x, s)
    }

    #[test]
    fn images_on_small_categories() {
        let cat = c2();
        let one = cat.object("1").unwrap();
        let h = hom(&cat, "1");
        let id1 = cat.identity(one);
        assert_eq!(image_of_morphism(&h, one, id1).unwrap(), [0]);
        let a = cat.morphism_by_id("a").unwrap();
        assert_eq!(names(&h, Ob(0), &image_of_morphism(&h, one, a).unwrap()), ["a"]);

        let m2 = monoid("e", "z", "z");
        let h = hom(&m2, "•");
        let (e, z) = (m2.morphism_by_id("e").unwrap(), m2.morphism_by_id("z").unwrap());
        assert_eq!(names(&h, Ob(0), &image_of_morphism(&h, Ob(0), z).unwrap()), ["z"]);
        assert_eq!(names(&h, Ob(0), &image_of_morphism(&h, Ob(0), e).unwrap()), ["e", "z"]);
    }

    #[test]
    fn wrong_codomain_is_rejected() {
        let cat = c2();
        let h = hom(&cat, "1");
        let id0 = cat.identity(cat.object("0").unwrap());
        assert!(matches!(image_of_morphism(&h, cat.object("1").unwrap(), id0), Err(Error::WrongEndpoint { .. })));
    }

    #[test]
    fn im_transformation_examples() {
        let cat = c2();
        let one = cat.object("1").unwrap();
        let h = hom(&cat, "1");
        let im = im_transformation(one, &h, DEFAULT_MATERIALIZATION_CAP).unwrap();
        assert!(check_naturality(&im).is_empty());
        let file = im.to_file();
        assert_eq!(file.components["0"]["a"], r#"["a"]"#);
        assert_eq!(file.components["1"]["id_1"], r#"["id_1"]"#);

        let z2 = monoid("e", "s", "e");
        let h = hom(&z2, "•");
        let im = im_transformation(Ob(0), &h, DEFAULT_MATERIALIZATION_CAP).unwrap();
        let file = im.to_file();
        assert_eq!(file.components["•"]["e"], r#"["e","s"]"#);
        assert_eq!(file.components["•"]["s"], r#"["e","s"]"#);
        assert!(check_im_naturality(Ob(0), &h).unwrap().is_empty());
    }

    #[test]
    fn empty_fa_gives_constant_empty_image() {
        let cat = c2();
        let empty =
            SetValuedFunctor::new(cat.clone(), Variance::Contravariant, vec![vec![], vec![]], vec![vec![]; 3]).unwrap();
        let im = im_transformation(cat.object("1").unwrap(), &empty, 12).unwrap();
        assert!(im.to_file().components.values().flat_map(|c| c.values()).all(|v| v == "[]"));
    }

    #[test]
    fn oracle_examples() {
        let cat = c2();
        let one = cat.object("1").unwrap();
        let h = hom(&cat, "1");
        let a = cat.morphism_by_id("a").unwrap();
        assert_eq!(nat_image_oracle(one, &h, a, &SearchOptions::default()).unwrap(), [0]);
        assert_eq!(nat_image_oracle(one, &h, cat.identity(one), &SearchOptions::default()).unwrap(), [0]);

        let m2 = monoid("e", "z", "z");
        let h = hom(&m2, "•");
        let z = m2.morphism_by_id("z").unwrap();
        let oracle = NatImageOracle::new(Ob(0), &h, &SearchOptions::default()).unwrap();
        assert_eq!(oracle.transformation_count(), 2);
        assert_eq!(names(&h, Ob(0), &oracle.image(z).unwrap()), ["z"]);
    }

    #[test]
    fn coarse_examples() {
        let z2 = monoid("e", "s", "e");
        let blocks = coarse_classes(Ob(0), Ob(0), &hom(&z2, "•")).unwrap();
        assert_eq!(blocks, vec![vec![Mor(0), Mor(1)]]);

        let m2 = monoid("e", "z", "z");
        let blocks = coarse_classes(Ob(0), Ob(0), &hom(&m2, "•")).unwrap();
        assert_eq!(blocks, vec![vec![Mor(0)], vec![Mor(1)]]);

        let cat = c2();
        let h = hom(&cat, "1");
        let blocks = coarse_classes(cat.object("0").unwrap(), cat.object("1").unwrap(), &h).unwrap();
        assert_eq!(blocks.len(), 1);
        let h0 = hom(&cat, "0");
        assert!(coarse_classes(cat.object("1").unwrap(), cat.object("0").unwrap(), &h0).unwrap().is_empty());
    }

    #[test]
    fn dependence_examples() {
        let cat = c2();
        let (zero, one) = (cat.object("0").unwrap(), cat.object("1").unwrap());
        let a = cat.morphism_by_id("a").unwrap();
        let q = DependenceQuery::new(zero, a, hom(&cat, "1")).unwrap();
        assert_eq!(depends_set(&q).unwrap(), [0]);
        assert!(depends_oracle(&q, 0).unwrap());
        assert!(depends_oracle(&q, 1).is_err());
        assert!(DependenceQuery::new(one, a, hom(&cat, "1")).is_err());

        let m2 = monoid("e", "z", "z");
        let h = hom(&m2, "•");
        let z = m2.morphism_by_id("z").unwrap();
        let q = DependenceQuery::new(Ob(0), z, h.clone()).unwrap();
        assert_eq!(names(&h, Ob(0), &depends_set(&q).unwrap()), ["z"]);
        let e_pos = h.element_index(Ob(0), "e").unwrap();
        assert!(!depends_oracle(&q, e_pos).unwrap());

        let empty = Arc::new(
            SetValuedFunctor::new(cat.clone(), Variance::Contravariant, vec![vec![], vec![]], vec![vec![]; 3]).unwrap(),
        );
        let q = DependenceQuery::new(zero, a, empty).unwrap();
        assert!(depends_set(&q).unwrap().is_empty());
    }

    #[test]
    fn dependence_from_representable() {
        let z2 = monoid("e", "s", "e");
        let h = hom(&z2, "•");
        // the swap is a natural isomorphism h ⇒ h; α = e corresponds to f_α = s
        let swap = NaturalTransformation::new(h.clone(), h.clone(), vec![vec![1, 0]]).unwrap();
        let q = DependenceQuery::from_representable(&swap, Ob(0), Ob(0), 0, h.clone()).unwrap();
        assert_eq!(z2.morphism_id(q.f_alpha()), "s");
        let m2 = monoid("e", "z", "z");
        let h = hom(&m2, "•");
        let collapse = NaturalTransformation::new(h.clone(), h.clone(), vec![vec![1, 1]]).unwrap();
        assert!(DependenceQuery::from_representable(&collapse, Ob(0), Ob(0), 1, h).is_err());
    }
}
