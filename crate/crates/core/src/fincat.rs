//! Finite categories stored as validated composition tables.
//!
//! Composition entries are keyed `(g, f)` and denote `g ∘ f`: apply `f` first.
//! Objects and morphisms are kept in lexicographic order of their identifiers,
//! so [`Ob`] and [`Mor`] indices double as canonical positions.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Rule, ValidationReport, Violation};

/// Prefix reserved for generated identity morphisms.
pub const IDENTITY_PREFIX: &str = "id_";

/// Categories with more morphisms than this are rejected.
pub const MAX_MORPHISMS: usize = 10_000;

/// Index of an object in its category's canonical order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Ob(pub usize);

/// Index of a morphism in its category's canonical order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Mor(pub usize);

pub fn identity_id(object: &str) -> String {
    format!("{IDENTITY_PREFIX}{object}")
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDecl {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

impl MorphismDecl {
    pub fn new(id: impl Into<String>, dom: impl Into<String>, cod: impl Into<String>) -> Self {
        MorphismDecl { id: id.into(), dom: dom.into(), cod: cod.into() }
    }
}

/// `result = g ∘ f`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionEntry {
    pub g: String,
    pub f: String,
    pub result: String,
}

impl CompositionEntry {
    pub fn new(g: impl Into<String>, f: impl Into<String>, result: impl Into<String>) -> Self {
        CompositionEntry { g: g.into(), f: f.into(), result: result.into() }
    }
}

/// The on-disk category schema. Identity morphisms and composites with an
/// identity are implied and must not be declared as morphisms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismDecl>,
    #[serde(default)]
    pub composition: Vec<CompositionEntry>,
}

impl CategoryFile {
    /// Serializable form of `cat`. Identities are renamed to `id_<object>`
    /// so the file can be read back.
    pub fn from_category(cat: &FiniteCategory) -> Self {
        let name = |m: Mor| -> String {
            let mor = &cat.morphisms[m.0];
            if cat.is_identity(m) {
                identity_id(&cat.objects[mor.dom.0])
            } else {
                mor.id.clone()
            }
        };
        let morphisms = cat
            .morphism_indices()
            .filter(|&m| !cat.is_identity(m))
            .map(|m| {
                let mor = cat.morphism(m);
                MorphismDecl::new(mor.id.clone(), cat.object_id(mor.dom), cat.object_id(mor.cod))
            })
            .collect();
        let mut composition: Vec<_> = cat
            .composition
            .iter()
            .filter(|((g, f), _)| !cat.is_identity(*g) && !cat.is_identity(*f))
            .map(|(&(g, f), &r)| CompositionEntry::new(name(g), name(f), name(r)))
            .collect();
        composition.sort();
        CategoryFile { objects: cat.objects.clone(), morphisms, composition }
    }
}

/// A fully explicit composition table: every morphism (identities included),
/// the identity assignment and every composite. This is what
/// [`validate_category`] inspects.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CategoryTable {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDecl>,
    pub identities: BTreeMap<String, String>,
    pub composition: Vec<CompositionEntry>,
}

impl CategoryTable {
    /// Expands the file schema: generates `id_<object>` for every object and
    /// fills in identity composites that the file leaves out.
    pub fn from_file(file: CategoryFile) -> Result<Self> {
        if let Some(m) = file.morphisms.iter().find(|m| m.id.starts_with(IDENTITY_PREFIX)) {
            return Err(Error::ReservedId(m.id.clone()));
        }
        let mut morphisms = file.morphisms;
        let mut identities = BTreeMap::new();
        for x in &file.objects {
            let id = identity_id(x);
            morphisms.push(MorphismDecl::new(id.clone(), x.clone(), x.clone()));
            identities.insert(x.clone(), id);
        }
        let mut table = CategoryTable { objects: file.objects, morphisms, identities, composition: file.composition };
        table.complete_identity_composites();
        Ok(table)
    }

    /// Adds `f ∘ id` and `id ∘ f` entries that are absent. Entries already
    /// present are left alone, even when wrong.
    pub fn complete_identity_composites(&mut self) {
        let present: HashSet<(String, String)> = self.composition.iter().map(|e| (e.g.clone(), e.f.clone())).collect();
        let mut extra = Vec::new();
        for m in &self.morphisms {
            if let Some(id_dom) = self.identities.get(&m.dom) {
                if !present.contains(&(m.id.clone(), id_dom.clone())) {
                    extra.push(CompositionEntry::new(&m.id, id_dom, &m.id));
                }
            }
            if let Some(id_cod) = self.identities.get(&m.cod) {
                // `id ∘ id` is already covered by the first branch
                if id_cod != &m.id && !present.contains(&(id_cod.clone(), m.id.clone())) {
                    extra.push(CompositionEntry::new(id_cod, &m.id, &m.id));
                }
            }
        }
        self.composition.extend(extra);
    }

    pub fn set_entry(&mut self, g: &str, f: &str, result: &str) {
        match self.composition.iter_mut().find(|e| e.g == g && e.f == f) {
            Some(e) => e.result = result.to_string(),
            None => self.composition.push(CompositionEntry::new(g, f, result)),
        }
    }
}

/// Checks a composition table against the category axioms.
///
/// Structural problems (dangling or duplicate ids, entries for pairs that are
/// not composable, conflicting entries) are reported under
/// [`ValidationReport::structural`]; law checks only run on a structurally
/// sound table.
pub fn validate_category(table: &CategoryTable) -> ValidationReport {
    let mut report = ValidationReport::default();

    if table.morphisms.len() > MAX_MORPHISMS {
        report.push(Violation::new(
            Rule::TooLarge,
            Vec::<String>::new(),
            format!("{} morphisms exceeds {MAX_MORPHISMS}", table.morphisms.len()),
        ));
        return report;
    }

    let mut objects = HashSet::new();
    for x in &table.objects {
        if x.is_empty() {
            report.push(Violation::new(Rule::EmptyId, [x.as_str()], "empty object id"));
        }
        if !objects.insert(x.as_str()) {
            report.push(Violation::new(Rule::DuplicateId, [x.as_str()], "duplicate object"));
        }
    }
    let mut ends: HashMap<&str, (&str, &str)> = HashMap::new();
    for m in &table.morphisms {
        if m.id.is_empty() {
            report.push(Violation::new(Rule::EmptyId, [m.id.as_str()], "empty morphism id"));
        }
        if ends.insert(&m.id, (&m.dom, &m.cod)).is_some() {
            report.push(Violation::new(Rule::DuplicateId, [m.id.as_str()], "duplicate morphism"));
        }
        for end in [&m.dom, &m.cod] {
            if !objects.contains(end.as_str()) {
                report.push(Violation::new(
                    Rule::DanglingId,
                    [m.id.as_str(), end.as_str()],
                    format!("morphism `{}` refers to unknown object `{end}`", m.id),
                ));
            }
        }
    }
    for x in &table.objects {
        match table.identities.get(x) {
            None => report.push(Violation::new(Rule::MissingIdentity, [x.as_str()], "no identity")),
            Some(id) if !ends.contains_key(id.as_str()) => report.push(Violation::new(
                Rule::DanglingId,
                [x.as_str(), id.as_str()],
                format!("identity `{id}` is not a morphism"),
            )),
            Some(_) => {}
        }
    }
    for x in table.identities.keys() {
        if !objects.contains(x.as_str()) {
            report.push(Violation::new(Rule::DanglingId, [x.as_str()], "identity for unknown object"));
        }
    }
    let mut entries: HashMap<(&str, &str), &str> = HashMap::new();
    for e in &table.composition {
        let witness = [e.g.as_str(), e.f.as_str()];
        let unknown: Vec<&str> = [&e.g, &e.f, &e.result]
            .into_iter()
            .filter(|id| !ends.contains_key(id.as_str()))
            .map(String::as_str)
            .collect();
        if !unknown.is_empty() {
            report.push(Violation::new(
                Rule::DanglingId,
                witness,
                format!("composition entry refers to unknown morphism(s) {unknown:?}"),
            ));
            continue;
        }
        if ends[e.f.as_str()].1 != ends[e.g.as_str()].0 {
            report.push(Violation::new(Rule::NonComposableEntry, witness, format!("cod({}) != dom({})", e.f, e.g)));
            continue;
        }
        match entries.insert((&e.g, &e.f), &e.result) {
            Some(prev) if prev != e.result => report.push(Violation::new(
                Rule::ConflictingEntry,
                witness,
                format!("both `{prev}` and `{}`", e.result),
            )),
            _ => {}
        }
    }
    if report.has_structural() {
        return report;
    }

    for (x, id) in &table.identities {
        let (dom, cod) = ends[id.as_str()];
        if dom != x || cod != x {
            report.push(Violation::new(
                Rule::IdentityShape,
                [x.as_str(), id.as_str()],
                format!("identity of `{x}` has shape {dom} -> {cod}"),
            ));
        }
    }
    // composable pairs, grouped by the middle object
    let mut out_of: HashMap<&str, Vec<&str>> = HashMap::new();
    for m in &table.morphisms {
        out_of.entry(m.dom.as_str()).or_default().push(&m.id);
    }
    for f in &table.morphisms {
        for &g in out_of.get(f.cod.as_str()).into_iter().flatten() {
            let witness = [g, f.id.as_str()];
            let Some(&r) = entries.get(&(g, f.id.as_str())) else {
                report.push(Violation::new(Rule::CompositionTotality, witness, format!("{g} ∘ {} is undefined", f.id)));
                continue;
            };
            let (rd, rc) = ends[r];
            if rd != f.dom || rc != ends[g].1 {
                report.push(Violation::new(
                    Rule::CompositionDomCod,
                    witness,
                    format!("{g} ∘ {} = {r} has shape {rd} -> {rc}, expected {} -> {}", f.id, f.dom, ends[g].1),
                ));
            }
        }
    }
    for m in &table.morphisms {
        if let Some(id) = table.identities.get(&m.dom) {
            if let Some(&r) = entries.get(&(m.id.as_str(), id.as_str())) {
                if r != m.id {
                    report.push(Violation::new(
                        Rule::RightUnit,
                        [m.id.as_str(), id.as_str()],
                        format!("{} ∘ {id} = {r}", m.id),
                    ));
                }
            }
        }
        if let Some(id) = table.identities.get(&m.cod) {
            if let Some(&r) = entries.get(&(id.as_str(), m.id.as_str())) {
                if r != m.id {
                    report.push(Violation::new(
                        Rule::LeftUnit,
                        [id.as_str(), m.id.as_str()],
                        format!("{id} ∘ {} = {r}", m.id),
                    ));
                }
            }
        }
    }
    for f in &table.morphisms {
        for &g in out_of.get(f.cod.as_str()).into_iter().flatten() {
            let Some(&gf) = entries.get(&(g, f.id.as_str())) else { continue };
            for &h in out_of.get(ends[g].1).into_iter().flatten() {
                let (Some(&hg), Some(&h_gf)) = (entries.get(&(h, g)), entries.get(&(h, gf))) else {
                    continue;
                };
                let Some(&hg_f) = entries.get(&(hg, f.id.as_str())) else { continue };
                if hg_f != h_gf {
                    report.push(Violation::new(
                        Rule::Associativity,
                        [h, g, f.id.as_str()],
                        format!("({h} ∘ {g}) ∘ {} = {hg_f} but {h} ∘ ({g} ∘ {}) = {h_gf}", f.id, f.id),
                    ));
                }
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub dom: Ob,
    pub cod: Ob,
}

/// An immutable, validated finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<Mor>,
    composition: HashMap<(Mor, Mor), Mor>,
}

impl FiniteCategory {
    /// Validates `table` and builds the category. Any violation, structural
    /// or not, is an error carrying the full report.
    pub fn from_table(table: &CategoryTable) -> Result<Self> {
        let report = validate_category(table);
        if !report.is_empty() {
            return Err(Error::InvalidCategory(report));
        }
        let mut objects = table.objects.clone();
        objects.sort();
        let ob = |id: &str| Ob(objects.binary_search_by(|o| o.as_str().cmp(id)).unwrap());
        let mut decls = table.morphisms.clone();
        decls.sort_by(|a, b| a.id.cmp(&b.id));
        let morphisms: Vec<Morphism> =
            decls.iter().map(|d| Morphism { id: d.id.clone(), dom: ob(&d.dom), cod: ob(&d.cod) }).collect();
        let mor = |id: &str| Mor(morphisms.binary_search_by(|m| m.id.as_str().cmp(id)).unwrap());
        let identities = objects.iter().map(|x| mor(&table.identities[x])).collect();
        let composition = table.composition.iter().map(|e| ((mor(&e.g), mor(&e.f)), mor(&e.result))).collect();
        Ok(FiniteCategory { objects, morphisms, identities, composition })
    }

    pub fn from_file(file: CategoryFile) -> Result<Self> {
        Self::from_table(&CategoryTable::from_file(file)?)
    }

    pub fn to_table(&self) -> CategoryTable {
        let mut composition: Vec<_> = self
            .composition
            .iter()
            .map(|(&(g, f), &r)| CompositionEntry::new(self.morphism_id(g), self.morphism_id(f), self.morphism_id(r)))
            .collect();
        composition.sort();
        CategoryTable {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismDecl::new(&m.id, self.object_id(m.dom), self.object_id(m.cod)))
                .collect(),
            identities: self
                .object_indices()
                .map(|x| (self.object_id(x).to_string(), self.morphism_id(self.identity(x)).to_string()))
                .collect(),
            composition,
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_indices(&self) -> impl Iterator<Item = Ob> + '_ {
        (0..self.objects.len()).map(Ob)
    }

    pub fn morphism_indices(&self) -> impl Iterator<Item = Mor> + '_ {
        (0..self.morphisms.len()).map(Mor)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_id(&self, x: Ob) -> &str {
        &self.objects[x.0]
    }

    pub fn morphism_id(&self, m: Mor) -> &str {
        &self.morphisms[m.0].id
    }

    pub fn morphism(&self, m: Mor) -> &Morphism {
        &self.morphisms[m.0]
    }

    pub fn object(&self, id: &str) -> Result<Ob> {
        self.objects.binary_search_by(|o| o.as_str().cmp(id)).map(Ob).map_err(|_| Error::UnknownObject(id.to_string()))
    }

    pub fn morphism_by_id(&self, id: &str) -> Result<Mor> {
        self.morphisms
            .binary_search_by(|m| m.id.as_str().cmp(id))
            .map(Mor)
            .map_err(|_| Error::UnknownMorphism(id.to_string()))
    }

    pub fn dom(&self, m: Mor) -> Ob {
        self.morphisms[m.0].dom
    }

    pub fn cod(&self, m: Mor) -> Ob {
        self.morphisms[m.0].cod
    }

    pub fn identity(&self, x: Ob) -> Mor {
        self.identities[x.0]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        let dom = self.dom(m);
        self.identities[dom.0] == m
    }

    /// `g ∘ f`, or `None` when `cod(f) != dom(g)`.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.composition.get(&(g, f)).copied()
    }

    /// The hom-set `[x, y]` in canonical order. Computed on demand.
    pub fn hom(&self, x: Ob, y: Ob) -> Vec<Mor> {
        self.morphism_indices().filter(|&m| self.dom(m) == x && self.cod(m) == y).collect()
    }

    pub fn is_isomorphism(&self, m: Mor) -> bool {
        let (x, y) = (self.dom(m), self.cod(m));
        self.hom(y, x)
            .into_iter()
            .any(|inv| self.compose(inv, m) == Some(self.identity(x)) && self.compose(m, inv) == Some(self.identity(y)))
    }
}

/// Same ids, dom and cod swapped, `(g, f)` entries become `(f, g)`.
/// Object and morphism indices are preserved.
pub fn opposite(cat: &FiniteCategory) -> FiniteCategory {
    FiniteCategory {
        objects: cat.objects.clone(),
        morphisms: cat.morphisms.iter().map(|m| Morphism { id: m.id.clone(), dom: m.cod, cod: m.dom }).collect(),
        identities: cat.identities.clone(),
        composition: cat.composition.iter().map(|(&(g, f), &r)| ((f, g), r)).collect(),
    }
}

fn check_ids<S: AsRef<str>>(ids: &[S]) -> Result<()> {
    let mut seen = HashSet::new();
    for id in ids {
        let id = id.as_ref();
        if id.is_empty() || !seen.insert(id) {
            return Err(Error::InvalidId(id.to_string()));
        }
    }
    Ok(())
}

/// The category with only identity morphisms.
pub fn discrete_category<S: AsRef<str>>(objects: &[S]) -> Result<FiniteCategory> {
    check_ids(objects)?;
    let file = CategoryFile { objects: objects.iter().map(|s| s.as_ref().to_string()).collect(), ..Default::default() };
    FiniteCategory::from_file(file)
}

/// Reflexive-transitive closure of `pairs` over `n` points, as a matrix.
/// Pairs must lie inside the carrier.
pub(crate) fn closure(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in pairs {
        leq[a][b] = true;
    }
    for k in 0..n {
        let through = leq[k].clone();
        for row in leq.iter_mut().filter(|row| row[k]) {
            row.iter_mut().zip(&through).for_each(|(cell, &via)| *cell |= via);
        }
    }
    leq
}

fn bfs_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &v in &adj[u] {
            if prev[v] == usize::MAX {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// The thin category of the order generated by `relation_pairs`: one arrow
/// `x -> y` (named `x<y`) exactly when `x <= y` in the reflexive-transitive
/// closure.
#[allow(clippy::needless_range_loop)]
pub fn poset_category<S: AsRef<str>>(elements: &[S], relation_pairs: &[(S, S)]) -> Result<FiniteCategory> {
    check_ids(elements)?;
    let names: Vec<&str> = elements.iter().map(AsRef::as_ref).collect();
    let index = |id: &str| names.iter().position(|&n| n == id).ok_or_else(|| Error::UnknownObject(id.to_string()));
    let pairs =
        relation_pairs.iter().map(|(a, b)| Ok((index(a.as_ref())?, index(b.as_ref())?))).collect::<Result<Vec<_>>>()?;
    let n = names.len();
    let leq = closure(n, &pairs);
    for i in 0..n {
        for j in i + 1..n {
            if leq[i][j] && leq[j][i] {
                let mut adj = vec![Vec::new(); n];
                for &(a, b) in &pairs {
                    adj[a].push(b);
                }
                let mut cycle = bfs_path(&adj, i, j);
                let back = bfs_path(&adj, j, i);
                cycle.pop();
                cycle.extend(&back[..back.len() - 1]);
                return Err(Error::Cycle(cycle.into_iter().map(|k| names[k].to_string()).collect()));
            }
        }
    }
    let arrow = |i: usize, j: usize| format!("{}<{}", names[i], names[j]);
    let mut file = CategoryFile { objects: names.iter().map(|s| s.to_string()).collect(), ..Default::default() };
    let name = |i: usize, j: usize| if i == j { identity_id(names[i]) } else { arrow(i, j) };
    for i in 0..n {
        for j in 0..n {
            if i != j && leq[i][j] {
                file.morphisms.push(MorphismDecl::new(arrow(i, j), names[i], names[j]));
                for k in 0..n {
                    if k != j && leq[j][k] {
                        file.composition.push(CompositionEntry::new(name(j, k), arrow(i, j), name(i, k)));
                    }
                }
            }
        }
    }
    FiniteCategory::from_file(file)
}

/// Object name used by [`monoid_category`].
pub const MONOID_OBJECT: &str = "•";

/// One-object category of a monoid. `cayley_table` lists `(a, b, a·b)`, read
/// as the composite `a ∘ b`; `unit` becomes the identity morphism.
pub fn monoid_category<S: AsRef<str>>(
    elements: &[S],
    cayley_table: &[(S, S, S)],
    unit: &str,
) -> Result<FiniteCategory> {
    check_ids(elements)?;
    let names: BTreeSet<&str> = elements.iter().map(AsRef::as_ref).collect();
    let known = |id: &str| {
        if names.contains(id) {
            Ok(())
        } else {
            Err(Error::UnknownMorphism(id.to_string()))
        }
    };
    known(unit)?;
    let mut product: HashMap<(&str, &str), &str> = HashMap::new();
    for (a, b, c) in cayley_table {
        let (a, b, c) = (a.as_ref(), b.as_ref(), c.as_ref());
        known(a)?;
        known(b)?;
        known(c)?;
        if let Some(prev) = product.insert((a, b), c) {
            if prev != c {
                return Err(Error::InvalidId(format!("{a}*{b} given as both {prev} and {c}")));
            }
        }
    }
    for &a in &names {
        for &b in &names {
            if !product.contains_key(&(a, b)) {
                return Err(Error::PartialTable(a.to_string(), b.to_string()));
            }
        }
    }
    for &a in &names {
        if product[&(unit, a)] != a || product[&(a, unit)] != a {
            return Err(Error::NotUnital(unit.to_string()));
        }
    }
    for &a in &names {
        for &b in &names {
            for &c in &names {
                if product[&(product[&(a, b)], c)] != product[&(a, product[&(b, c)])] {
                    return Err(Error::NotAssociative(a.to_string(), b.to_string(), c.to_string()));
                }
            }
        }
    }
    let mut composition: Vec<_> = product.iter().map(|(&(a, b), &c)| CompositionEntry::new(a, b, c)).collect();
    composition.sort();
    let table = CategoryTable {
        objects: vec![MONOID_OBJECT.to_string()],
        morphisms: names.iter().map(|&m| MorphismDecl::new(m, MONOID_OBJECT, MONOID_OBJECT)).collect(),
        identities: BTreeMap::from([(MONOID_OBJECT.to_string(), unit.to_string())]),
        composition,
    };
    FiniteCategory::from_table(&table)
}

/// Free category on an acyclic multigraph. `edges` lists `(id, source, target)`.
/// A path is named by its edges in composition order joined with `.`, so
/// `f` followed by `g` is `g.f`; empty paths are the identities.
pub fn free_category_on_dag<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S)]) -> Result<FiniteCategory> {
    check_ids(vertices)?;
    let names: Vec<&str> = vertices.iter().map(AsRef::as_ref).collect();
    let index = |id: &str| names.iter().position(|&n| n == id).ok_or_else(|| Error::UnknownObject(id.to_string()));
    let edge_ids: Vec<&str> = edges.iter().map(|e| e.0.as_ref()).collect();
    check_ids(&edge_ids)?;
    let mut arcs = Vec::with_capacity(edges.len());
    for (id, src, dst) in edges {
        let id = id.as_ref();
        if id.starts_with(IDENTITY_PREFIX) {
            return Err(Error::ReservedId(id.to_string()));
        }
        if id.contains('.') {
            return Err(Error::InvalidId(id.to_string()));
        }
        arcs.push((index(src.as_ref())?, index(dst.as_ref())?));
    }
    let n = names.len();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(s, _)) in arcs.iter().enumerate() {
        out[s].push(e);
    }
    if let Some(cycle) = find_cycle(n, &arcs, &out) {
        return Err(Error::Cycle(cycle.into_iter().map(|k| names[k].to_string()).collect()));
    }

    // all nonempty paths, grouped by source vertex
    let mut paths: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for start in 0..n {
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(start, Vec::new())];
        while let Some((v, path)) = stack.pop() {
            for &e in &out[v] {
                let mut next = path.clone();
                next.push(e);
                paths.push((start, arcs[e].1, next.clone()));
                if paths.len() > MAX_MORPHISMS {
                    return Err(Error::TooLarge { count: paths.len(), limit: MAX_MORPHISMS });
                }
                stack.push((arcs[e].1, next));
            }
        }
    }
    let path_id = |p: &[usize]| p.iter().rev().map(|&e| edge_ids[e]).collect::<Vec<_>>().join(".");
    let mut file = CategoryFile { objects: names.iter().map(|s| s.to_string()).collect(), ..Default::default() };
    let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, (s, t, p)) in paths.iter().enumerate() {
        file.morphisms.push(MorphismDecl::new(path_id(p), names[*s], names[*t]));
        by_source[*s].push(k);
    }
    for (_, t, p) in &paths {
        for &k in &by_source[*t] {
            let q = &paths[k].2;
            let mut pq = p.clone();
            pq.extend(q);
            file.composition.push(CompositionEntry::new(path_id(q), path_id(p), path_id(&pq)));
        }
    }
    FiniteCategory::from_file(file)
}

fn find_cycle(n: usize, arcs: &[(usize, usize)], out: &[Vec<usize>]) -> Option<Vec<usize>> {
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        state[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < out[v].len() {
                let w = arcs[out[v][*next]].1;
                *next += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => {
                        let start = stack.iter().position(|&(u, _)| u == w).unwrap();
                        return Some(stack[start..].iter().map(|&(u, _)| u).collect());
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}
