//! Command runners. Each returns the text for stdout and an exit code.

use std::fmt::Write as _;
use std::sync::Arc;

use oigb_core::classical::{self, ComponentSpace};
use oigb_core::division::remainder;
use oigb_core::free_module::{orbit, FreeOIModule, ModuleElement};
use oigb_core::groebner::{buchberger, max_width, minimize, passes_criterion, stabilization_check};
use oigb_core::resolution::{resolve, FreeResolution};
use oigb_core::syzygy::syzygy_generators;
use oigb_core::{Fp, MonomialOrder, OILex, Rational};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::json::{
    parse_problem, CliScalar, ElementJson, FieldSpec, ModuleJson, MorphismJson, PolynomialJson,
    ProblemFile,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Gb,
    CheckGb,
    StabilizeCheck,
    Reduce,
    Syz,
    Res,
    Restrict,
    Oracle,
}

/// Command-line flags; unset values fall back to the problem file options.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Options {
    pub json: bool,
    pub order: Option<String>,
    pub minimize: bool,
    pub steps: Option<usize>,
    pub restrict: Option<usize>,
    pub max_test_width: Option<usize>,
    pub field: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub exit: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, exit: 0 }
    }

    fn check(stdout: String, passed: bool) -> Self {
        Outcome {
            stdout,
            exit: if passed { 0 } else { 1 },
        }
    }
}

const DEFAULT_STEPS: usize = 2;

struct Context<S> {
    problem: ProblemFile,
    field: FieldSpec,
    module: FreeOIModule,
    gens: Vec<ModuleElement<S>>,
    json: bool,
    minimize: bool,
    steps: usize,
    restrict: Option<usize>,
    max_test_width: Option<usize>,
}

/// Parse `input` as a problem file and run `cmd` on it.
pub fn execute(cmd: Command, opts: &Options, input: &str) -> Result<Outcome, CliError> {
    let problem = parse_problem(input)?;
    let field = match &opts.field {
        Some(f) => FieldSpec::parse(f)?,
        None => FieldSpec::from_json(&problem.field)?,
    };
    let order = opts.order.as_deref().unwrap_or(&problem.order);
    if order != "oilex" {
        return Err(CliError::schema("order", format!("unsupported order {order:?}, expected \"oilex\"")));
    }
    match field {
        FieldSpec::Rationals => run::<Rational>(cmd, opts, problem, field),
        FieldSpec::Prime(_) => run::<Fp>(cmd, opts, problem, field),
    }
}

fn run<S: CliScalar>(cmd: Command, opts: &Options, problem: ProblemFile, field: FieldSpec) -> Result<Outcome, CliError> {
    let module = problem.module.to_core(problem.c);
    let gens = problem
        .generators
        .iter()
        .enumerate()
        .map(|(k, g)| g.to_core::<S>(&module, field, &format!("generators[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let ctx = Context {
        field,
        module,
        gens,
        json: opts.json,
        minimize: opts.minimize || problem.options.minimize.unwrap_or(false),
        steps: opts.steps.or(problem.options.steps).unwrap_or(DEFAULT_STEPS),
        restrict: opts.restrict.or(problem.options.restrict),
        max_test_width: opts.max_test_width.or(problem.options.max_test_width),
        problem,
    };
    match cmd {
        Command::Gb => gb(&ctx),
        Command::CheckGb => check_gb(&ctx),
        Command::StabilizeCheck => stabilize_check(&ctx),
        Command::Reduce => reduce(&ctx),
        Command::Syz => syz(&ctx),
        Command::Res => res(&ctx),
        Command::Restrict => restrict(&ctx),
        Command::Oracle => oracle(&ctx),
    }
}

fn to_json_string(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn listing<S: CliScalar>(elems: &[ModuleElement<S>]) -> String {
    let mut out = String::new();
    for (k, f) in elems.iter().enumerate() {
        let _ = writeln!(out, "{:>3}  {}", k + 1, f);
    }
    out
}

fn nonempty<S>(gens: &[ModuleElement<S>]) -> Result<(), CliError> {
    if gens.is_empty() {
        return Err(CliError::schema("generators", "at least one generator is required"));
    }
    Ok(())
}

fn gb<S: CliScalar>(ctx: &Context<S>) -> Result<Outcome, CliError> {
    let mut g = buchberger(&ctx.gens, &OILex)?;
    if ctx.minimize {
        g = minimize(&g, &OILex)?;
    }
    let w = max_width(&g);
    if ctx.json {
        let out = ProblemFile {
            field: ctx.field.to_json(),
            c: ctx.problem.c,
            module: ctx.problem.module.clone(),
            generators: g.iter().map(ElementJson::from_core).collect(),
            order: "oilex".into(),
            options: Default::default(),
            element: None,
            max_width: Some(w),
        };
        return Ok(Outcome::ok(to_json_string(&out)));
    }
    let title = if ctx.minimize { "minimal Gröbner basis" } else { "Gröbner basis" };
    let mut out = format!("{title} ({} elements, max width {w})\n", g.len());
    out.push_str(&listing(&g));
    Ok(Outcome::ok(out))
}

fn check_gb<S: CliScalar>(ctx: &Context<S>) -> Result<Outcome, CliError> {
    nonempty(&ctx.gens)?;
    let ok = passes_criterion(&ctx.gens, &OILex)?;
    let out = if ctx.json {
        to_json_string(&json!({ "groebner": ok }))
    } else {
        format!("Gröbner basis: {}\n", if ok { "yes" } else { "no" })
    };
    Ok(Outcome::check(out, ok))
}

fn stabilize_check<S: CliScalar>(ctx: &Context<S>) -> Result<Outcome, CliError> {
    nonempty(&ctx.gens)?;
    let ok = stabilization_check(&ctx.gens, &OILex)?;
    let bound = 2 * max_width(&ctx.gens);
    let out = if ctx.json {
        to_json_string(&json!({ "stable": ok, "checked_up_to_width": bound }))
    } else {
        format!(
            "orbits are classical Gröbner bases in widths 0..={bound}: {}\n",
            if ok { "yes" } else { "no" }
        )
    };
    Ok(Outcome::check(out, ok))
}

fn reduce<S: CliScalar>(ctx: &Context<S>) -> Result<Outcome, CliError> {
    let f = ctx
        .problem
        .element
        .as_ref()
        .ok_or_else(|| CliError::schema("element", "reduce needs an \"element\" to divide"))?
        .to_core::<S>(&ctx.module, ctx.field, "element")?;
    let res = remainder(&f, &ctx.gens, &OILex)?;
    if ctx.json {
        let quotients: Vec<Value> = res
            .quotients
            .iter()
            .map(|q| {
                json!({
                    "generator": q.generator + 1,
                    "eps": MorphismJson::from_core(&q.eps),
                    "coeff": PolynomialJson::from_core(&q.coeff),
                })
            })
            .collect();
        let v = json!({
            "remainder": ElementJson::from_core(&res.remainder),
            "quotients": quotients,
        });
        return Ok(Outcome::ok(to_json_string(&v)));
    }
    let mut out = format!("remainder: {}\n", res.remainder);
    for q in &res.quotients {
        let _ = writeln!(out, "  ({}) · F({})(b_{})", q.coeff, q.eps, q.generator + 1);
    }
    Ok(Outcome::ok(out))
}

fn syz<S: CliScalar>(ctx: &Context<S>) -> Result<Outcome, CliError> {
    nonempty(&ctx.gens)?;
    let graded = ctx.gens.iter().all(|f| f.is_homogeneous(&ctx.module));
    let pres = oigb_core::syzygy::SyzygyPresentation::new(ctx.gens.clone(), &ctx.module, graded)?;
    let (_, s) = syzygy_generators(&ctx.gens, Arc::new(OILex))?;
    if ctx.json {
        let v = json!({
            "source": ModuleJson::from_core(&pres.source),
            "generators": s.iter().map(ElementJson::from_core).collect::<Vec<_>>(),
        });
        return Ok(Outcome::ok(to_json_string(&v)));
    }
    let mut out = format!("source: {}\n", signature(&pres.source));
    let _ = writeln!(out, "{} syzygies", s.len());
    out.push_str(&listing(&s));
    Ok(Outcome::ok(out))
}

fn signature(m: &FreeOIModule) -> String {
    if m.rank() == 0 {
        return "0".into();
    }
    m.basis()
        .iter()
        .map(|b| {
            if b.shift == 0 {
                format!("F^{{OI,{}}}", b.width)
            } else {
                format!("F^{{OI,{}}}({})", b.width, -b.shift)
            }
        })
        .collect::<Vec<_>>()
        .join(" ⊕ ")
}

fn compute_resolution<S: CliScalar>(ctx: &Context<S>) -> Result<FreeResolution<S>, CliError> {
    nonempty(&ctx.gens)?;
    let ord: Arc<dyn MonomialOrder> = Arc::new(OILex);
    Ok(resolve(&ctx.gens, &ctx.module, ctx.steps, ord, ctx.minimize)?)
}

fn verify<S: CliScalar>(res: &FreeResolution<S>, up_to: usize) -> Result<(), String> {
    (0..=up_to).try_for_each(|n| res.verify_exactness(n))
}

fn res<S: CliScalar>(ctx: &Context<S>) -> Result<Outcome, CliError> {
    let r = compute_resolution(ctx)?;
    let check = ctx.max_test_width.map(|n| (n, verify(&r, n)));
    let passed = check.as_ref().is_none_or(|(_, c)| c.is_ok());
    if ctx.json {
        let mut v = json!({
            "ranks": r.ranks(),
            "gen_widths": r.gen_widths(),
            "gen_degrees": r.gen_degrees(),
            "differentials": r.maps.iter().map(|m| m.images.iter().map(ElementJson::from_core).collect::<Vec<_>>()).collect::<Vec<_>>(),
        });
        if let Some((n, c)) = &check {
            v["verified_up_to_width"] = json!(n);
            v["exact"] = json!(c.is_ok());
        }
        if let Some(n) = ctx.restrict {
            v["restricted"] = restricted_json(&r, n);
        }
        return Ok(Outcome::check(to_json_string(&v), passed));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} free resolution, {} steps",
        if ctx.minimize { "graded minimal" } else { "Schreyer" },
        r.length()
    );
    let _ = writeln!(out, "{:>3}  {:>5}  {:<24}  degrees", "k", "rank", "generator widths");
    for (k, (w, d)) in r.gen_widths().iter().zip(r.gen_degrees()).enumerate() {
        let _ = writeln!(out, "{:>3}  {:>5}  {:<24}  {}", k, w.len(), join(w), join(&d));
    }
    let _ = writeln!(out, "ranks: {}", join(&r.ranks()));
    if let Some((n, c)) = &check {
        match c {
            Ok(()) => {
                let _ = writeln!(out, "complex and exact in widths 0..={n}");
            }
            Err(e) => {
                let _ = writeln!(out, "verification failed: {e}");
            }
        }
    }
    if let Some(n) = ctx.restrict {
        let _ = writeln!(out, "ranks at width {n}: {}", join(&r.restrict_to_width(n).ranks()));
    }
    Ok(Outcome::check(out, passed))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn restricted_json<S: CliScalar>(r: &FreeResolution<S>, n: usize) -> Value {
    let rc = r.restrict_to_width(n);
    let components: Vec<Value> = rc
        .spaces
        .iter()
        .map(|s| {
            Value::Array(
                s.components()
                    .iter()
                    .map(|(slot, pi)| json!({ "slot": slot + 1, "pi": pi.images() }))
                    .collect(),
            )
        })
        .collect();
    let matrices: Vec<Value> = rc
        .columns
        .iter()
        .map(|cols| {
            Value::Array(
                cols.iter()
                    .map(|v| {
                        let mut entries: Vec<(usize, Vec<_>)> = Vec::new();
                        for t in &v.terms {
                            match entries.iter_mut().find(|(r, _)| *r == t.comp) {
                                Some((_, ts)) => ts.push(oigb_core::terms::Term::new(t.coeff.clone(), t.mono.clone())),
                                None => entries.push((t.comp, vec![oigb_core::terms::Term::new(t.coeff.clone(), t.mono.clone())])),
                            }
                        }
                        entries.sort_by_key(|e| e.0);
                        Value::Array(
                            entries
                                .into_iter()
                                .map(|(row, ts)| {
                                    let p = oigb_core::Polynomial::from_terms(n, ts).expect("width n");
                                    json!({ "row": row + 1, "poly": PolynomialJson::from_core(&p) })
                                })
                                .collect(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    json!({
        "width": n,
        "ranks": rc.ranks(),
        "components": components,
        "matrices": matrices,
    })
}

fn restrict<S: CliScalar>(ctx: &Context<S>) -> Result<Outcome, CliError> {
    let n = ctx
        .restrict
        .ok_or_else(|| CliError::Input("restrict needs a width (--restrict n)".into()))?;
    let r = compute_resolution(ctx)?;
    if ctx.json {
        return Ok(Outcome::ok(to_json_string(&restricted_json(&r, n))));
    }
    let rc = r.restrict_to_width(n);
    let mut out = format!("complex at width {n}\n");
    let _ = writeln!(out, "ranks (F, F^0, F^1, ...): {}", join(&rc.ranks()));
    for (k, cols) in rc.columns.iter().enumerate() {
        let _ = writeln!(out, "φ_{k}: {} columns", cols.len());
        for (c, v) in cols.iter().enumerate() {
            let img = rc.spaces[k].element(v, &OILex);
            let _ = writeln!(out, "  {:>3}  {}", c + 1, img);
        }
    }
    let complex = rc.verify_complex();
    let _ = writeln!(out, "φ∘φ = 0: {}", if complex.is_ok() { "yes" } else { "no" });
    Ok(Outcome::check(out, complex.is_ok()))
}

fn oracle<S: CliScalar>(ctx: &Context<S>) -> Result<Outcome, CliError> {
    nonempty(&ctx.gens)?;
    let g = buchberger(&ctx.gens, &OILex)?;
    let bound = ctx.max_test_width.unwrap_or(2 * max_width(&g));
    let mut rows = Vec::new();
    for n in 0..=bound {
        let og = orbit(&g, n);
        let ob = orbit(&ctx.gens, n);
        let space = ComponentSpace::from_module(&ctx.module, n);
        let ord = space.oilex_order();
        let vg: Vec<_> = og.iter().map(|f| space.vector(f)).collect();
        let vb: Vec<_> = ob.iter().map(|f| space.vector(f)).collect();
        let is_gb = classical::classical_is_gb(&vg, &ord);
        let agree = classical::same_monomial_module(
            &classical::leading_terms(&vg, &ord),
            &classical::leading_terms(&classical::classical_gb(&vb, &ord), &ord),
        );
        rows.push((n, og.len(), is_gb, agree));
    }
    let passed = rows.iter().all(|r| r.2 && r.3);
    if ctx.json {
        let v: Vec<Value> = rows
            .iter()
            .map(|(n, size, is_gb, agree)| json!({ "width": n, "orbit_size": size, "is_gb": is_gb, "leading_modules_agree": agree }))
            .collect();
        return Ok(Outcome::check(to_json_string(&json!({ "widths": v, "passed": passed })), passed));
    }
    let mut out = format!("{:>5}  {:>6}  {:<6}  leading modules agree\n", "width", "orbit", "is GB");
    for (n, size, is_gb, agree) in rows {
        let _ = writeln!(out, "{n:>5}  {size:>6}  {:<6}  {}", yes(is_gb), yes(agree));
    }
    Ok(Outcome::check(out, passed))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
