//! JSON wire formats and their conversion to and from core types.
//!
//! Slots are 1-based on the wire and 0-based in memory. A variable
//! `x_{i,j}^e` is the triple `[i, j, e]`.

use std::str::FromStr;

use oigb_core::field::{is_prime, rational_to_fp, rational_to_string};
use oigb_core::free_module::{BasisSpec, FreeOIModule, ModuleElement, ModuleMonomial};
use oigb_core::polynomial::{Monomial, PolyTerm, Polynomial};
use oigb_core::terms::Term;
use oigb_core::{Field, Fp, OIMorphism, OILex, Rational};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldJson {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

/// The scalar field selected by a problem file or `--field`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    pub fn from_json(f: &FieldJson) -> Result<Self, CliError> {
        match f {
            FieldJson::Named(s) => FieldSpec::parse(s),
            FieldJson::Prime { fp } => FieldSpec::prime(*fp),
        }
    }

    /// `QQ` or `Fp:p`.
    pub fn parse(s: &str) -> Result<Self, CliError> {
        if s == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        match s.strip_prefix("Fp:").map(str::parse::<u64>) {
            Some(Ok(p)) => FieldSpec::prime(p),
            _ => Err(CliError::schema("field", format!("unknown field {s:?}, expected QQ or Fp:p"))),
        }
    }

    fn prime(p: u64) -> Result<Self, CliError> {
        if p > i32::MAX as u64 || !is_prime(p) {
            return Err(CliError::schema("field.Fp", format!("{p} is not a supported prime")));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn to_json(self) -> FieldJson {
        match self {
            FieldSpec::Rationals => FieldJson::Named("QQ".into()),
            FieldSpec::Prime(p) => FieldJson::Prime { fp: p as u64 },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Int(i64),
    Text(String),
}

/// Scalars that can be read from and written to JSON.
pub trait CliScalar: Field {
    fn parse_coeff(c: &CoeffJson, field: FieldSpec) -> Result<Self, String>;
    fn coeff_json(&self) -> CoeffJson;
}

fn parse_rational(c: &CoeffJson) -> Result<Rational, String> {
    match c {
        CoeffJson::Int(v) => Ok(Rational::from_integer((*v).into())),
        CoeffJson::Text(s) => {
            let q = Rational::from_str(s.trim()).map_err(|_| format!("invalid coefficient {s:?}"))?;
            Ok(q)
        }
    }
}

impl CliScalar for Rational {
    fn parse_coeff(c: &CoeffJson, _field: FieldSpec) -> Result<Self, String> {
        parse_rational(c)
    }

    fn coeff_json(&self) -> CoeffJson {
        match (self.is_integer(), i64::try_from(self.numer())) {
            (true, Ok(v)) => CoeffJson::Int(v),
            _ => CoeffJson::Text(rational_to_string(self)),
        }
    }
}

impl CliScalar for Fp {
    fn parse_coeff(c: &CoeffJson, field: FieldSpec) -> Result<Self, String> {
        let FieldSpec::Prime(p) = field else {
            return Err("prime field coefficient requested over QQ".into());
        };
        let q = parse_rational(c)?;
        rational_to_fp(&q, p).ok_or_else(|| format!("denominator of {} vanishes mod {p}", rational_to_string(&q)))
    }

    fn coeff_json(&self) -> CoeffJson {
        CoeffJson::Int(self.value())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub m: usize,
    pub n: usize,
    pub images: Vec<usize>,
}

impl MorphismJson {
    pub fn from_core(e: &OIMorphism) -> Self {
        MorphismJson {
            m: e.source_width(),
            n: e.target_width(),
            images: e.images(),
        }
    }

    pub fn to_core(&self, path: &str) -> Result<OIMorphism, CliError> {
        if self.images.len() != self.m {
            return Err(CliError::schema(path, format!("{} images for m = {}", self.images.len(), self.m)));
        }
        OIMorphism::new(self.n, &self.images).map_err(|e| CliError::schema(path, e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub coeff: CoeffJson,
    #[serde(default)]
    pub exps: Vec<[u32; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub width: usize,
    pub terms: Vec<PolyTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: CoeffJson,
    #[serde(default)]
    pub exps: Vec<[u32; 3]>,
    pub slot: usize,
    pub pi: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub width: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub d: usize,
    #[serde(default)]
    pub shift: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub basis: Vec<BasisJson>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimize: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restrict: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_test_width: Option<usize>,
}

/// A problem file: field, `c`, module signature, generators and options.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub field: FieldJson,
    pub c: usize,
    pub module: ModuleJson,
    pub generators: Vec<ElementJson>,
    #[serde(default = "default_order")]
    pub order: String,
    #[serde(default)]
    pub options: OptionsJson,
    /// The element to divide, for `reduce`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<ElementJson>,
    /// Report field written by `gb`; ignored on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_width: Option<usize>,
}

fn default_order() -> String {
    "oilex".into()
}

/// Parse with JSON positions for syntax errors and field paths for schema
/// errors.
pub fn parse_problem(text: &str) -> Result<ProblemFile, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let parsed: Result<ProblemFile, _> = serde_path_to_error::deserialize(&mut *de);
    let problem = parsed.map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if inner.is_syntax() || inner.is_eof() {
            json_error(&inner)
        } else {
            CliError::schema(&path, inner.to_string())
        }
    })?;
    de.end().map_err(|e| json_error(&e))?;
    Ok(problem)
}

fn json_error(e: &serde_json::Error) -> CliError {
    // serde_json appends the position to its messages
    let full = e.to_string();
    let suffix = format!(" at line {} column {}", e.line(), e.column());
    CliError::Json {
        line: e.line(),
        column: e.column(),
        message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
    }
}

impl ModuleJson {
    pub fn to_core(&self, c: usize) -> FreeOIModule {
        FreeOIModule::new(
            c,
            self.basis
                .iter()
                .map(|b| BasisSpec {
                    width: b.d,
                    shift: b.shift,
                })
                .collect(),
        )
    }

    pub fn from_core(m: &FreeOIModule) -> Self {
        ModuleJson {
            basis: m
                .basis()
                .iter()
                .map(|b| BasisJson {
                    d: b.width,
                    shift: b.shift,
                })
                .collect(),
        }
    }
}

fn monomial_from_json(width: usize, exps: &[[u32; 3]], c: usize, path: &str) -> Result<Monomial, CliError> {
    let mut triples = Vec::with_capacity(exps.len());
    for (k, &[row, col, e]) in exps.iter().enumerate() {
        let p = format!("{path}.exps[{k}]");
        if row == 0 || row as usize > c {
            return Err(CliError::schema(&p, format!("row {row} outside 1..={c}")));
        }
        if col == 0 || col as usize > width {
            return Err(CliError::schema(&p, format!("column {col} outside 1..={width}")));
        }
        triples.push((row as usize, col as usize, e));
    }
    Monomial::new(width, &triples).map_err(|e| CliError::schema(path, e.to_string()))
}

fn monomial_to_json(m: &Monomial) -> Vec<[u32; 3]> {
    m.exponents()
        .into_iter()
        .map(|(r, c, e)| [r as u32, c as u32, e])
        .collect()
}

impl ElementJson {
    pub fn to_core<S: CliScalar>(
        &self,
        module: &FreeOIModule,
        field: FieldSpec,
        path: &str,
    ) -> Result<ModuleElement<S>, CliError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (k, t) in self.terms.iter().enumerate() {
            let p = format!("{path}.terms[{k}]");
            if t.slot == 0 || t.slot > module.rank() {
                return Err(CliError::schema(
                    &format!("{p}.slot"),
                    format!("slot {} outside 1..={}", t.slot, module.rank()),
                ));
            }
            let d = module.basis_width(t.slot - 1);
            if t.pi.len() != d {
                return Err(CliError::schema(
                    &format!("{p}.pi"),
                    format!("basis element {} has width {d} but pi has {} images", t.slot, t.pi.len()),
                ));
            }
            let pi = OIMorphism::new(self.width, &t.pi).map_err(|e| CliError::schema(&format!("{p}.pi"), e.to_string()))?;
            let mono = monomial_from_json(self.width, &t.exps, module.c(), &p)?;
            let coeff = S::parse_coeff(&t.coeff, field).map_err(|e| CliError::schema(&format!("{p}.coeff"), e))?;
            terms.push(Term::new(coeff, ModuleMonomial::new(mono, pi, t.slot - 1)));
        }
        let f = ModuleElement::from_terms(self.width, terms, &OILex).map_err(|e| CliError::schema(path, e.to_string()))?;
        module.validate(&f).map_err(|e| CliError::schema(path, e.to_string()))?;
        Ok(f)
    }

    pub fn from_core<S: CliScalar>(f: &ModuleElement<S>) -> Self {
        ElementJson {
            width: f.width(),
            terms: f
                .terms()
                .iter()
                .map(|t| TermJson {
                    coeff: t.coeff.coeff_json(),
                    exps: monomial_to_json(&t.mono.mono),
                    slot: t.mono.slot + 1,
                    pi: t.mono.pi.images(),
                })
                .collect(),
        }
    }
}

impl PolynomialJson {
    pub fn from_core<S: CliScalar>(p: &Polynomial<S>) -> Self {
        PolynomialJson {
            width: p.width(),
            terms: p
                .terms()
                .iter()
                .map(|t| PolyTermJson {
                    coeff: t.coeff.coeff_json(),
                    exps: monomial_to_json(&t.mono),
                })
                .collect(),
        }
    }

    pub fn to_core<S: CliScalar>(&self, c: usize, field: FieldSpec, path: &str) -> Result<Polynomial<S>, CliError> {
        let mut terms: Vec<PolyTerm<S>> = Vec::with_capacity(self.terms.len());
        for (k, t) in self.terms.iter().enumerate() {
            let p = format!("{path}.terms[{k}]");
            let mono = monomial_from_json(self.width, &t.exps, c, &p)?;
            let coeff = S::parse_coeff(&t.coeff, field).map_err(|e| CliError::schema(&format!("{p}.coeff"), e))?;
            terms.push(Term::new(coeff, mono));
        }
        Polynomial::from_terms(self.width, terms).map_err(|e| CliError::schema(path, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_specs() {
        assert_eq!(FieldSpec::parse("QQ").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("Fp:7").unwrap(), FieldSpec::Prime(7));
        assert!(FieldSpec::parse("Fp:8").is_err());
        assert!(FieldSpec::parse("RR").is_err());
        let j: FieldJson = serde_json::from_str(r#"{"Fp": 101}"#).unwrap();
        assert_eq!(FieldSpec::from_json(&j).unwrap(), FieldSpec::Prime(101));
    }

    #[test]
    fn coefficients() {
        let q = Rational::parse_coeff(&CoeffJson::Text("-3/6".into()), FieldSpec::Rationals).unwrap();
        assert_eq!(q.coeff_json(), CoeffJson::Text("-1/2".into()));
        let q = Rational::parse_coeff(&CoeffJson::Int(4), FieldSpec::Rationals).unwrap();
        assert_eq!(q.coeff_json(), CoeffJson::Int(4));
        let a = Fp::parse_coeff(&CoeffJson::Text("1/2".into()), FieldSpec::Prime(7)).unwrap();
        assert_eq!(a.value(), 4);
        let b = Fp::parse_coeff(&CoeffJson::Int(-1), FieldSpec::Prime(7)).unwrap();
        assert_eq!(b.value(), 6);
        assert!(Fp::parse_coeff(&CoeffJson::Text("1/7".into()), FieldSpec::Prime(7)).is_err());
        assert!(Rational::parse_coeff(&CoeffJson::Text("x".into()), FieldSpec::Rationals).is_err());
    }
}
