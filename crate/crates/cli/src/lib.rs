//! The `yoneda` command line: loads category and functor files, runs one
//! verb and renders a canonical JSON report (or DOT text).
//!
//! Exit codes: `0` everything checked out, `1` a mathematical check failed
//! (the report carries the counterexample), `2` usage, parse or guard error.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use serde_json::{json, Map, Value};
use yoneda_core::dot::{hasse_dot, proset_dot, stratification_dot};
use yoneda_core::fincat::{validate_category, CategoryFile, CategoryTable, FiniteCategory, Mor, Ob, MAX_MORPHISMS};
use yoneda_core::functors::{validate_functor, FunctorFile, SetValuedFunctor, Variance, DEFAULT_MATERIALIZATION_CAP};
use yoneda_core::image::{
    check_im_naturality, coarse_classes, depends_oracle, depends_set, image_of_morphism, DependenceQuery,
    NatImageOracle,
};
use yoneda_core::nat::{
    enumerate_nat_trans, verify_yoneda_bijection, SearchEstimate, SearchOptions, DEFAULT_SEARCH_GUARD,
};
use yoneda_core::strata::{
    alexandroff_opens, build_l_preorder, quotient_to_poset, stratification_map, Proset, MAX_ALEXANDROFF_CARRIER,
};

pub const GUARD_ENV: &str = "YONEDA_GUARD";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Check,
    NatEnum,
    Yoneda,
    Image,
    ImCheck,
    Coarse,
    Depends,
    Preorder,
    Quotient,
    Alexandroff,
    Stratify,
    ExportDot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VarianceArg {
    Co,
    Contra,
}

impl From<VarianceArg> for Variance {
    fn from(v: VarianceArg) -> Self {
        match v {
            VarianceArg::Co => Variance::Covariant,
            VarianceArg::Contra => Variance::Contravariant,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Dot,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "yoneda", version, about = "Finite-category Yoneda, image and stratification checks")]
pub struct Args {
    #[arg(value_enum)]
    pub verb: Verb,
    /// Category JSON file.
    #[arg(long)]
    pub cat: PathBuf,
    /// Functor JSON file (same as `--F <file>`).
    #[arg(long)]
    pub functor: Option<PathBuf>,
    /// The functor: `hom` for the hom-functor at `--A`, or a functor file.
    #[arg(long = "F", value_name = "hom|FILE")]
    pub functor_spec: Option<String>,
    /// Source functor for `nat-enum` (default `hom`).
    #[arg(long, value_name = "hom|FILE")]
    pub source: Option<String>,
    #[arg(long = "A", value_name = "OBJECT")]
    pub a: Option<String>,
    #[arg(long = "X", value_name = "OBJECT")]
    pub x: Option<String>,
    /// A single morphism (`image`, `depends`).
    #[arg(long = "f", value_name = "MORPHISM")]
    pub morphism: Option<String>,
    /// Variance of `hom` when no functor file fixes it (default `contra`).
    #[arg(long, value_enum)]
    pub variance: Option<VarianceArg>,
    /// Search-space guard; overrides `YONEDA_GUARD`.
    #[arg(long)]
    pub guard: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    pub out: OutFormat,
    /// Worker threads for the enumeration (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read `{}`: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("`{}` at `{json_path}`: {message}", path.display())]
    Schema { path: PathBuf, json_path: String, message: String },
    #[error(transparent)]
    Core(#[from] yoneda_core::Error),
}

/// Exit code plus the text written to standard output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| CliError::Schema {
        path: path.into(),
        json_path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

/// Raw table from a category file, before any law checking.
pub fn parse_category_table(path: &Path) -> Result<CategoryTable, CliError> {
    Ok(CategoryTable::from_file(read_json::<CategoryFile>(path)?)?)
}

/// Parses and validates a category file.
pub fn parse_category_file(path: &Path) -> Result<FiniteCategory, CliError> {
    Ok(FiniteCategory::from_table(&parse_category_table(path)?)?)
}

pub fn parse_functor_file(path: &Path, cat: &Arc<FiniteCategory>) -> Result<SetValuedFunctor, CliError> {
    Ok(SetValuedFunctor::from_file(cat.clone(), &read_json::<FunctorFile>(path)?)?)
}

/// Categories and functors loaded by one invocation, by name.
#[derive(Debug, Default)]
pub struct Workspace {
    categories: BTreeMap<String, Arc<FiniteCategory>>,
    functors: BTreeMap<String, (String, Arc<SetValuedFunctor>)>,
}

impl Workspace {
    pub fn add_category(&mut self, name: &str, cat: FiniteCategory) -> Result<Arc<FiniteCategory>, CliError> {
        if self.categories.contains_key(name) {
            return Err(CliError::Usage(format!("category `{name}` loaded twice")));
        }
        let cat = Arc::new(cat);
        self.categories.insert(name.to_string(), cat.clone());
        Ok(cat)
    }

    pub fn add_functor(
        &mut self,
        name: &str,
        category: &str,
        functor: SetValuedFunctor,
    ) -> Result<Arc<SetValuedFunctor>, CliError> {
        let cat = self.category(category)?;
        if !Arc::ptr_eq(functor.base(), cat) && **functor.base() != **cat {
            return Err(CliError::Usage(format!("functor `{name}` is not over category `{category}`")));
        }
        if self.functors.contains_key(name) {
            return Err(CliError::Usage(format!("functor `{name}` loaded twice")));
        }
        let functor = Arc::new(functor);
        self.functors.insert(name.to_string(), (category.to_string(), functor.clone()));
        Ok(functor)
    }

    pub fn category(&self, name: &str) -> Result<&Arc<FiniteCategory>, CliError> {
        self.categories.get(name).ok_or_else(|| CliError::Usage(format!("no category named `{name}`")))
    }

    pub fn functor(&self, name: &str) -> Result<&Arc<SetValuedFunctor>, CliError> {
        self.functors.get(name).map(|(_, f)| f).ok_or_else(|| CliError::Usage(format!("no functor named `{name}`")))
    }
}

fn guard_from(arg: Option<u64>, env: Option<String>) -> Result<u64, CliError> {
    if let Some(g) = arg {
        return Ok(g);
    }
    match env {
        Some(text) => text
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{GUARD_ENV} must be a non-negative integer, got `{text}`"))),
        None => Ok(DEFAULT_SEARCH_GUARD as u64),
    }
}

fn guards_json(search: u64) -> Value {
    json!({
        "alexandroff_carrier": MAX_ALEXANDROFF_CARRIER,
        "materialization_cap": DEFAULT_MATERIALIZATION_CAP,
        "max_morphisms": MAX_MORPHISMS,
        "search": search,
    })
}

fn verb_name(verb: Verb) -> String {
    verb.to_possible_value().expect("no skipped variants").get_name().to_string()
}

/// Canonical rendering: keys sorted (serde_json's default map), two-space
/// indentation, trailing newline.
pub fn render(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("values serialize");
    text.push('\n');
    text
}

enum Rendered {
    Json { ok: bool, body: Map<String, Value> },
    Dot(String),
}

struct Context {
    args: Args,
    guard: u64,
    workspace: Workspace,
    cat: Arc<FiniteCategory>,
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "category".into())
}

impl Context {
    fn options(&self) -> SearchOptions {
        SearchOptions { guard: self.guard as u128, ..SearchOptions::default() }
    }

    fn object(&self, flag: &str, value: &Option<String>) -> Result<Ob, CliError> {
        let id = value
            .as_deref()
            .ok_or_else(|| CliError::Usage(format!("`{}` needs --{flag}", verb_name(self.args.verb))))?;
        Ok(self.cat.object(id)?)
    }

    fn a(&self) -> Result<Ob, CliError> {
        self.object("A", &self.args.a)
    }

    fn x(&self) -> Result<Ob, CliError> {
        self.object("X", &self.args.x)
    }

    fn morphism(&self) -> Result<Option<Mor>, CliError> {
        self.args.morphism.as_deref().map(|id| self.cat.morphism_by_id(id)).transpose().map_err(Into::into)
    }

    fn requested_variance(&self) -> Option<Variance> {
        self.args.variance.map(Variance::from)
    }

    /// `hom` or a functor file, checked against `--variance` when both are given.
    fn load(&mut self, name: &str, spec: &str) -> Result<Arc<SetValuedFunctor>, CliError> {
        let functor = if spec == "hom" {
            let variance = self.requested_variance().unwrap_or(Variance::Contravariant);
            SetValuedFunctor::hom(&self.cat, self.a()?, variance)
        } else {
            parse_functor_file(Path::new(spec), &self.cat)?
        };
        if let Some(v) = self.requested_variance() {
            if v != functor.variance() {
                return Err(CliError::Usage(format!("--variance disagrees with the variance of `{spec}`")));
            }
        }
        let category = stem(&self.args.cat);
        self.workspace.add_functor(name, &category, functor)
    }

    fn functor_spec(&self) -> Result<Option<String>, CliError> {
        match (&self.args.functor, &self.args.functor_spec) {
            (Some(_), Some(_)) => Err(CliError::Usage("give either --functor or --F, not both".into())),
            (Some(path), None) => Ok(Some(path.to_string_lossy().into_owned())),
            (None, spec) => Ok(spec.clone()),
        }
    }

    fn functor(&mut self) -> Result<Arc<SetValuedFunctor>, CliError> {
        let spec = self.functor_spec()?.ok_or_else(|| {
            CliError::Usage(format!("`{}` needs --F hom|FILE or --functor FILE", verb_name(self.args.verb)))
        })?;
        self.load("F", &spec)
    }

    fn ids(&self, ms: impl IntoIterator<Item = Mor>) -> Vec<String> {
        ms.into_iter().map(|m| self.cat.morphism_id(m).to_string()).collect()
    }
}

fn elements(functor: &SetValuedFunctor, x: Ob, subset: &[usize]) -> Value {
    json!(functor.subset_ids(x, subset))
}

fn search_json(estimate: &SearchEstimate) -> Value {
    json!({
        "branch_points": estimate.branch_points,
        "pruned_estimate": estimate.pruned.min(u64::MAX as u128) as u64,
        "raw_log10": (estimate.raw_log10 * 1e6).round() / 1e6,
    })
}

fn describe(functor: &SetValuedFunctor) -> Value {
    serde_json::to_value(functor.to_file()).expect("functor files serialize")
}

fn proset_json(p: &Proset) -> Value {
    let pairs: Vec<[&str; 2]> =
        p.pairs().into_iter().map(|(a, b)| [p.carrier()[a].as_str(), p.carrier()[b].as_str()]).collect();
    let witness = p.antisymmetry_witness().map(|(a, b)| [p.carrier()[a].clone(), p.carrier()[b].clone()]);
    json!({
        "antisymmetric": witness.is_none(),
        "antisymmetry_witness": witness,
        "carrier": p.carrier(),
        "leq": pairs,
    })
}

fn map_of(entries: impl IntoIterator<Item = (String, Value)>) -> Map<String, Value> {
    entries.into_iter().collect()
}

/// Structural defects are operator errors; law violations are findings.
fn run_check(args: &Args) -> Result<Rendered, CliError> {
    let table = parse_category_table(&args.cat)?;
    let report = validate_category(&table);
    if report.has_structural() {
        return Err(yoneda_core::Error::InvalidCategory(report).into());
    }
    let mut ok = report.is_empty();
    let mut body = map_of([("category".into(), category_report(&report))]);
    let functor = match (&args.functor, &args.functor_spec) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give either --functor or --F, not both".into())),
        (Some(path), None) => Some(path.clone()),
        (None, spec) => spec.as_ref().map(PathBuf::from),
    };
    if let (Some(path), true) = (functor, ok) {
        let cat = Arc::new(FiniteCategory::from_table(&table)?);
        let functor_report = validate_functor(&cat, &read_json(&path)?);
        if functor_report.has_structural() {
            return Err(yoneda_core::Error::InvalidFunctor(functor_report).into());
        }
        ok &= functor_report.is_empty();
        body.insert("functor".into(), category_report(&functor_report));
    }
    body.insert("valid".into(), json!(ok));
    Ok(Rendered::Json { ok, body })
}

fn category_report(report: &yoneda_core::ValidationReport) -> Value {
    let violations: Vec<Value> =
        report.violations().map(|v| json!({ "detail": v.detail, "rule": v.rule, "witness": v.witness })).collect();
    json!({ "valid": report.is_empty(), "violations": violations })
}

fn run_nat_enum(ctx: &mut Context) -> Result<Rendered, CliError> {
    let target = ctx.functor()?;
    let source_spec = ctx.args.source.clone().unwrap_or_else(|| "hom".into());
    let source = ctx.load("source", &source_spec)?;
    let estimate = yoneda_core::nat::search_space(&source, &target)?;
    let nats = enumerate_nat_trans(&source, &target, &ctx.options())?;
    let body = map_of([
        ("count".into(), json!(nats.len())),
        ("search".into(), search_json(&estimate)),
        ("source".into(), describe(&source)),
        ("target".into(), describe(&target)),
        (
            "transformations".into(),
            Value::Array(nats.iter().map(|t| serde_json::to_value(t.to_file().components).unwrap()).collect()),
        ),
    ]);
    Ok(Rendered::Json { ok: true, body })
}

fn run_yoneda(ctx: &mut Context) -> Result<Rendered, CliError> {
    let functor = ctx.functor()?;
    let a = ctx.a()?;
    let cert = verify_yoneda_bijection(a, &functor, &ctx.options())?;
    let body = map_of([
        ("A".into(), json!(cert.object)),
        ("F_A".into(), json!(cert.f_a)),
        ("backward_forward_identity".into(), json!(cert.backward_forward_identity)),
        ("bijection".into(), json!(cert.bijection)),
        ("counterexample".into(), json!(cert.counterexample)),
        ("forward_backward_identity".into(), json!(cert.forward_backward_identity)),
        ("injective".into(), json!(cert.injective)),
        ("nat_count".into(), json!(cert.nat_count)),
        ("search".into(), search_json(&cert.search)),
        ("surjective".into(), json!(cert.surjective)),
        ("variance".into(), json!(cert.variance)),
    ]);
    Ok(Rendered::Json { ok: cert.bijection, body })
}

/// Morphisms whose image lives over `a`: `--f` alone, or every one.
fn image_morphisms(ctx: &Context, functor: &SetValuedFunctor, a: Ob) -> Result<Vec<Mor>, CliError> {
    Ok(match ctx.morphism()? {
        Some(m) => vec![m],
        None => ctx.cat.morphism_indices().filter(|&m| functor.action_source(m) == a).collect(),
    })
}

fn run_image(ctx: &mut Context) -> Result<Rendered, CliError> {
    let functor = ctx.functor()?;
    let a = ctx.a()?;
    let mut images = Map::new();
    for m in image_morphisms(ctx, &functor, a)? {
        let image = image_of_morphism(&functor, a, m)?;
        images.insert(ctx.cat.morphism_id(m).into(), elements(&functor, functor.action_target(m), &image));
    }
    let body = map_of([("A".into(), json!(ctx.cat.object_id(a))), ("images".into(), Value::Object(images))]);
    Ok(Rendered::Json { ok: true, body })
}

fn run_im_check(ctx: &mut Context) -> Result<Rendered, CliError> {
    let functor = ctx.functor()?;
    let a = ctx.a()?;
    let oracle = NatImageOracle::new(a, &functor, &ctx.options())?;
    let mut ok = true;
    let mut per_morphism = Map::new();
    for m in image_morphisms(ctx, &functor, a)? {
        let x = functor.action_target(m);
        let closed = image_of_morphism(&functor, a, m)?;
        let brute = oracle.image(m)?;
        ok &= closed == brute;
        per_morphism.insert(
            ctx.cat.morphism_id(m).into(),
            json!({
                "equal": closed == brute,
                "image": elements(&functor, x, &closed),
                "oracle": elements(&functor, x, &brute),
            }),
        );
    }
    let naturality = check_im_naturality(a, &functor)?;
    ok &= naturality.is_empty();
    let body = map_of([
        ("A".into(), json!(ctx.cat.object_id(a))),
        ("morphisms".into(), Value::Object(per_morphism)),
        ("naturality".into(), category_report(&naturality)),
        ("passed".into(), json!(ok)),
        ("transformation_count".into(), json!(oracle.transformation_count())),
    ]);
    Ok(Rendered::Json { ok, body })
}

fn run_coarse(ctx: &mut Context) -> Result<Rendered, CliError> {
    let functor = ctx.functor()?;
    let (x, a) = (ctx.x()?, ctx.a()?);
    let blocks = coarse_classes(x, a, &functor)?;
    let rendered: Vec<Value> = blocks
        .iter()
        .map(|block| {
            let image = image_of_morphism(&functor, a, block[0])?;
            Ok(json!({ "image": elements(&functor, x, &image), "morphisms": ctx.ids(block.iter().copied()) }))
        })
        .collect::<Result<_, CliError>>()?;
    let body = map_of([
        ("A".into(), json!(ctx.cat.object_id(a))),
        ("X".into(), json!(ctx.cat.object_id(x))),
        ("blocks".into(), Value::Array(rendered)),
    ]);
    Ok(Rendered::Json { ok: true, body })
}

fn run_depends(ctx: &mut Context) -> Result<Rendered, CliError> {
    let f_alpha =
        ctx.morphism()?.ok_or_else(|| CliError::Usage("`depends` needs --f MORPHISM (f_α: X -> A)".into()))?;
    let a = ctx.cat.cod(f_alpha);
    match &ctx.args.a {
        Some(given) if ctx.cat.object(given)? != a => {
            return Err(CliError::Usage(format!("--f does not end at --A `{given}`")));
        }
        Some(_) => {}
        None => ctx.args.a = Some(ctx.cat.object_id(a).to_string()),
    }
    let functor = ctx.functor()?;
    let x = ctx.cat.dom(f_alpha);
    if let Some(given) = &ctx.args.x {
        if ctx.cat.object(given)? != x {
            return Err(CliError::Usage(format!("--f does not start at --X `{given}`")));
        }
    }
    let query = DependenceQuery::new(x, f_alpha, functor.clone())?;
    let closed = depends_set(&query)?;
    let mut agrees = true;
    let mut oracle = Map::new();
    for beta in 0..functor.size(x) {
        let verdict = depends_oracle(&query, beta)?;
        agrees &= verdict == closed.contains(&beta);
        oracle.insert(functor.element_id(x, beta).into(), json!(verdict));
    }
    let body = map_of([
        ("A".into(), json!(ctx.cat.object_id(query.a()))),
        ("X".into(), json!(ctx.cat.object_id(x))),
        ("agrees".into(), json!(agrees)),
        ("depends_set".into(), elements(&functor, x, &closed)),
        ("f_alpha".into(), json!(ctx.cat.morphism_id(f_alpha))),
        ("oracle".into(), Value::Object(oracle)),
    ]);
    Ok(Rendered::Json { ok: agrees, body })
}

fn l_preorder(ctx: &Context) -> Result<Proset, CliError> {
    Ok(build_l_preorder(&ctx.cat, ctx.x()?, ctx.a()?)?)
}

fn run_preorder(ctx: &mut Context) -> Result<Rendered, CliError> {
    let p = l_preorder(ctx)?;
    if ctx.args.out == OutFormat::Dot {
        return Ok(Rendered::Dot(proset_dot(&p, "preorder")));
    }
    let Value::Object(body) = proset_json(&p) else { unreachable!() };
    Ok(Rendered::Json { ok: true, body })
}

fn run_quotient(ctx: &mut Context) -> Result<Rendered, CliError> {
    let p = l_preorder(ctx)?;
    let (q, projection) = quotient_to_poset(&p);
    if ctx.args.out == OutFormat::Dot {
        return Ok(Rendered::Dot(hasse_dot(&q, "quotient")));
    }
    let covers: Vec<[&str; 2]> =
        q.covers().into_iter().map(|(a, b)| [q.carrier()[a].as_str(), q.carrier()[b].as_str()]).collect();
    let projection: Map<String, Value> =
        p.carrier().iter().zip(&projection).map(|(f, &c)| (f.clone(), json!(q.carrier()[c]))).collect();
    let body = map_of([
        ("classes".into(), json!(q.carrier())),
        ("covers".into(), json!(covers)),
        ("projection".into(), Value::Object(projection)),
        ("quotient".into(), proset_json(&q)),
    ]);
    Ok(Rendered::Json { ok: true, body })
}

fn run_alexandroff(ctx: &mut Context) -> Result<Rendered, CliError> {
    let p = l_preorder(ctx)?;
    if ctx.args.out == OutFormat::Dot {
        return Ok(Rendered::Dot(proset_dot(&p, "alexandroff")));
    }
    let top = alexandroff_opens(&p)?;
    let opens: Vec<Vec<&str>> = top.opens().iter().map(|&u| top.members(u)).collect();
    let body = map_of([
        ("carrier".into(), json!(top.carrier())),
        ("convention".into(), json!("up-sets")),
        ("is_alexandroff".into(), json!(top.is_alexandroff())),
        ("opens".into(), json!(opens)),
    ]);
    Ok(Rendered::Json { ok: true, body })
}

fn run_stratify(ctx: &mut Context) -> Result<Rendered, CliError> {
    let functor = ctx.functor()?;
    let (x, a) = (ctx.x()?, ctx.a()?);
    let strat = match stratification_map(x, a, &functor, DEFAULT_MATERIALIZATION_CAP) {
        Err(yoneda_core::Error::NotMonotone(f, g)) => {
            let body = map_of([("counterexample".into(), json!([f, g])), ("monotone".into(), json!(false))]);
            return Ok(Rendered::Json { ok: false, body });
        }
        other => other?,
    };
    if ctx.args.out == OutFormat::Dot {
        return Ok(Rendered::Dot(stratification_dot(&strat, "stratification")));
    }
    let target = strat.target();
    let map: Map<String, Value> = strat
        .source()
        .carrier()
        .iter()
        .zip(strat.map())
        .map(|(f, &t)| (f.clone(), json!(target.carrier()[t])))
        .collect();
    let body = map_of([
        ("A".into(), json!(ctx.cat.object_id(a))),
        ("X".into(), json!(ctx.cat.object_id(x))),
        ("map".into(), Value::Object(map)),
        ("monotone".into(), json!(true)),
        ("source".into(), proset_json(strat.source())),
    ]);
    Ok(Rendered::Json { ok: true, body })
}

fn run_export_dot(ctx: &mut Context) -> Result<Rendered, CliError> {
    if ctx.functor_spec()?.is_some() {
        let functor = ctx.functor()?;
        let strat = stratification_map(ctx.x()?, ctx.a()?, &functor, DEFAULT_MATERIALIZATION_CAP)?;
        return Ok(Rendered::Dot(stratification_dot(&strat, "stratification")));
    }
    Ok(Rendered::Dot(proset_dot(&l_preorder(ctx)?, "quotient")))
}

fn dispatch(ctx: &mut Context) -> Result<Rendered, CliError> {
    let verb = ctx.args.verb;
    let dot_capable =
        matches!(verb, Verb::Preorder | Verb::Quotient | Verb::Alexandroff | Verb::Stratify | Verb::ExportDot);
    if ctx.args.out == OutFormat::Dot && !dot_capable {
        return Err(CliError::Usage(format!("`{}` has no DOT output", verb_name(verb))));
    }
    match verb {
        Verb::Check => unreachable!("handled before loading"),
        Verb::NatEnum => run_nat_enum(ctx),
        Verb::Yoneda => run_yoneda(ctx),
        Verb::Image => run_image(ctx),
        Verb::ImCheck => run_im_check(ctx),
        Verb::Coarse => run_coarse(ctx),
        Verb::Depends => run_depends(ctx),
        Verb::Preorder => run_preorder(ctx),
        Verb::Quotient => run_quotient(ctx),
        Verb::Alexandroff => run_alexandroff(ctx),
        Verb::Stratify => run_stratify(ctx),
        Verb::ExportDot => run_export_dot(ctx),
    }
}

fn execute(args: Args, guard: u64) -> Result<Rendered, CliError> {
    if args.verb == Verb::Check {
        return run_check(&args);
    }
    let mut workspace = Workspace::default();
    let cat = workspace.add_category(&stem(&args.cat), parse_category_file(&args.cat)?)?;
    let mut ctx = Context { args, guard, workspace, cat };
    dispatch(&mut ctx)
}

/// Runs parsed arguments; `env_guard` is the value of `YONEDA_GUARD`, if set.
pub fn run(args: Args, env_guard: Option<String>) -> Outcome {
    let verb = verb_name(args.verb);
    let guard = match guard_from(args.guard, env_guard) {
        Ok(g) => g,
        Err(e) => return failure(&verb, DEFAULT_SEARCH_GUARD as u64, &e),
    };
    let threads = args.threads;
    let result = match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(args, guard)),
            Err(e) => Err(CliError::Usage(format!("cannot start {n} threads: {e}"))),
        },
        None => execute(args, guard),
    };
    match result {
        Ok(Rendered::Dot(text)) => Outcome { code: 0, report: text },
        Ok(Rendered::Json { ok, mut body }) => {
            body.insert("guards".into(), guards_json(guard));
            body.insert("ok".into(), json!(ok));
            body.insert("verb".into(), json!(verb));
            Outcome { code: if ok { 0 } else { 1 }, report: render(&Value::Object(body)) }
        }
        Err(e) => failure(&verb, guard, &e),
    }
}

fn failure(verb: &str, guard: u64, error: &CliError) -> Outcome {
    let mut body = Map::new();
    body.insert("error".into(), json!(error.to_string()));
    if let CliError::Core(yoneda_core::Error::InvalidCategory(report) | yoneda_core::Error::InvalidFunctor(report)) =
        error
    {
        body.insert("report".into(), category_report(report));
    }
    if let CliError::Schema { json_path, .. } = error {
        body.insert("json_path".into(), json!(json_path));
    }
    body.insert("guards".into(), guards_json(guard));
    body.insert("ok".into(), json!(false));
    body.insert("verb".into(), json!(verb));
    Outcome { code: 2, report: render(&Value::Object(body)) }
}

/// Parses a full command line (program name first) and runs it.
pub fn run_command<I, T>(argv: I, env_guard: Option<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Args::try_parse_from(argv) {
        Ok(args) => run(args, env_guard),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            Outcome { code, report: e.to_string() }
        }
    }
}
