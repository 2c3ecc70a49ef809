//! Spec documents and the built-in catalog.
//!
//! A spec document is JSON:
//!
//! ```json
//! {
//!   "name": "example",
//!   "n": 1,
//!   "generators": ["phi1"],
//!   "d": { "phi1": [] },
//!   "omega": ["1"],
//!   "symbols": [],
//!   "derivations": []
//! }
//! ```
//!
//! Each `d` term is `{"coeff": {"re": "p/q", "im": "p/q"}, "monomial": [..],
//! "hol": [..], "anti": [..]}` with 1-based indices; `monomial` lists
//! function symbols (repeat a name for powers) and may be omitted. The full
//! schema ships as `specs/schema.json`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::Form;
use crate::scalars::{
    format_rational, parse_rational, Coefficient, DerivationTable, Direction, FunctionSymbol,
    GaussianRational, Monomial, SymbolContext,
};
use crate::structure::ManifoldSpec;

pub const CATALOG_NAMES: [&str; 4] = ["torus6", "iwasawa_ak", "iwasawa_cplx", "flat_kahler6"];

pub const SCHEMA: &str = include_str!("../specs/schema.json");

/// Raw text of a golden spec.
pub fn catalog_source(name: &str) -> Result<&'static str> {
    Ok(match name {
        "torus6" => include_str!("../specs/torus6.json"),
        "iwasawa_ak" => include_str!("../specs/iwasawa_ak.json"),
        "iwasawa_cplx" => include_str!("../specs/iwasawa_cplx.json"),
        "flat_kahler6" => include_str!("../specs/flat_kahler6.json"),
        _ => return Err(Error::UnknownSpec(name.to_string())),
    })
}

pub fn catalog(name: &str) -> Result<ManifoldSpec> {
    load_spec(catalog_source(name)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarDoc {
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientTermDoc {
    pub coeff: ScalarDoc,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub monomial: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormTermDoc {
    pub coeff: ScalarDoc,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub monomial: Vec<String>,
    pub hol: Vec<usize>,
    pub anti: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugate: Option<String>,
    #[serde(default = "default_order")]
    pub order: u32,
}

fn default_order() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationDoc {
    pub symbol: String,
    pub direction: String,
    pub value: Vec<CoefficientTermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub name: String,
    pub n: usize,
    pub generators: Vec<String>,
    pub d: BTreeMap<String, Vec<FormTermDoc>>,
    pub omega: Vec<String>,
    #[serde(default)]
    pub symbols: Vec<SymbolDoc>,
    #[serde(default)]
    pub derivations: Vec<DerivationDoc>,
    #[serde(default = "default_depth")]
    pub depth_limit: u32,
    #[serde(default = "default_true")]
    pub auto_fresh: bool,
}

fn default_depth() -> u32 {
    3
}

fn default_true() -> bool {
    true
}

fn json_error(e: serde_json::Error) -> Error {
    use serde_json::error::Category;
    let (line, column, message) = (e.line(), e.column(), e.to_string());
    match e.classify() {
        Category::Data => Error::Schema {
            line,
            column,
            message,
        },
        Category::Io | Category::Syntax | Category::Eof => Error::Parse {
            line,
            column,
            message,
        },
    }
}

fn scalar_from_doc(s: &ScalarDoc) -> Result<GaussianRational> {
    Ok(GaussianRational::new(
        parse_rational(&s.re)?,
        parse_rational(&s.im)?,
    ))
}

fn scalar_to_doc(s: &GaussianRational) -> ScalarDoc {
    ScalarDoc {
        re: format_rational(s.re()),
        im: format_rational(s.im()),
    }
}

fn monomial_from_doc(names: &[String]) -> Monomial {
    Monomial::from_factors(names.iter().map(|s| (s.clone(), 1)))
}

fn monomial_to_doc(m: &Monomial) -> Vec<String> {
    m.factors()
        .iter()
        .flat_map(|(s, e)| std::iter::repeat_n(s.clone(), *e as usize))
        .collect()
}

fn coefficient_from_doc(terms: &[CoefficientTermDoc]) -> Result<Coefficient> {
    let mut c = Coefficient::zero();
    for t in terms {
        c.add_term(monomial_from_doc(&t.monomial), &scalar_from_doc(&t.coeff)?);
    }
    Ok(c)
}

fn coefficient_to_doc(c: &Coefficient) -> Vec<CoefficientTermDoc> {
    c.terms()
        .map(|(m, v)| CoefficientTermDoc {
            coeff: scalar_to_doc(v),
            monomial: monomial_to_doc(m),
        })
        .collect()
}

fn indices(n: usize, generator: &str, list: &[usize]) -> Result<u32> {
    let mut mask = 0u32;
    for &k in list {
        if k == 0 || k > n {
            return Err(Error::Validation(format!(
                "d {generator}: index {k} outside 1..={n}"
            )));
        }
        if mask & (1 << (k - 1)) != 0 {
            return Err(Error::Validation(format!(
                "d {generator}: repeated index {k}"
            )));
        }
        mask |= 1 << (k - 1);
    }
    Ok(mask)
}

fn form_from_doc(n: usize, generator: &str, terms: &[FormTermDoc]) -> Result<Form> {
    let mut f = Form::zero(n);
    for t in terms {
        indices(n, generator, &t.hol)?;
        indices(n, generator, &t.anti)?;
        let c = Coefficient::from_term(monomial_from_doc(&t.monomial), scalar_from_doc(&t.coeff)?);
        f.add_assign(&Form::monomial(n, &t.hol, &t.anti).scale(&c));
    }
    Ok(f)
}

fn form_to_doc(f: &Form) -> Vec<FormTermDoc> {
    let mut out = Vec::new();
    for (m, c) in f.terms() {
        for (mono, v) in c.terms() {
            out.push(FormTermDoc {
                coeff: scalar_to_doc(v),
                monomial: monomial_to_doc(mono),
                hol: m.hol().map(|k| k + 1).collect(),
                anti: m.anti().map(|k| k + 1).collect(),
            });
        }
    }
    out
}

/// Builds a validated spec from a parsed document.
pub fn spec_from_document(doc: &SpecDocument) -> Result<ManifoldSpec> {
    let n = doc.n;
    if n == 0 || n > crate::forms::MAX_N {
        return Err(Error::Validation(format!("unsupported n = {n}")));
    }
    if doc.generators.len() != n {
        return Err(Error::Validation(format!(
            "{} generators listed for n = {n}",
            doc.generators.len()
        )));
    }
    for (i, g) in doc.generators.iter().enumerate() {
        if doc.generators[..i].contains(g) {
            return Err(Error::Validation(format!("duplicate generator `{g}`")));
        }
    }
    if let Some(extra) = doc.d.keys().find(|k| !doc.generators.contains(k)) {
        return Err(Error::Validation(format!(
            "d given for unknown generator `{extra}`"
        )));
    }
    let mut d = Vec::with_capacity(n);
    for g in &doc.generators {
        let terms = doc
            .d
            .get(g)
            .ok_or_else(|| Error::Validation(format!("missing d for generator `{g}`")))?;
        d.push(form_from_doc(n, g, terms)?);
    }
    let omega = doc
        .omega
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>>>()?;

    let symbols = doc
        .symbols
        .iter()
        .map(|s| FunctionSymbol {
            name: s.name.clone(),
            conjugate: s.conjugate.clone(),
            order: s.order,
        })
        .collect();
    let mut table = DerivationTable {
        entries: BTreeMap::new(),
        depth_limit: doc.depth_limit,
        auto_fresh: doc.auto_fresh,
    };
    for e in &doc.derivations {
        let dir: Direction = e.direction.parse()?;
        if dir.index >= n {
            return Err(Error::Validation(format!(
                "direction {} outside the frame",
                e.direction
            )));
        }
        let key = (e.symbol.clone(), dir);
        if table.entries.contains_key(&key) {
            return Err(Error::Validation(format!(
                "duplicate derivation {}({})",
                e.direction, e.symbol
            )));
        }
        table.entries.insert(key, coefficient_from_doc(&e.value)?);
    }
    let ctx = SymbolContext::new(symbols, table)?;
    ManifoldSpec::new(doc.name.clone(), doc.generators.clone(), d, omega, ctx)
}

/// Parses and validates a spec document.
pub fn load_spec(source: &str) -> Result<ManifoldSpec> {
    let doc: SpecDocument = serde_json::from_str(source).map_err(json_error)?;
    spec_from_document(&doc)
}

pub fn to_document(spec: &ManifoldSpec) -> SpecDocument {
    let ctx = spec.symbols();
    SpecDocument {
        name: spec.name().to_string(),
        n: spec.n(),
        generators: spec.generators().to_vec(),
        d: spec
            .generators()
            .iter()
            .enumerate()
            .map(|(a, g)| (g.clone(), form_to_doc(spec.d_generator(a))))
            .collect(),
        omega: spec
            .omega_coefficients()
            .iter()
            .map(format_rational)
            .collect(),
        symbols: ctx
            .symbols()
            .map(|s| SymbolDoc {
                name: s.name.clone(),
                conjugate: s.conjugate.clone(),
                order: s.order,
            })
            .collect(),
        derivations: ctx
            .derivations()
            .entries
            .iter()
            .map(|((sym, dir), v)| DerivationDoc {
                symbol: sym.clone(),
                direction: dir.to_string(),
                value: coefficient_to_doc(v),
            })
            .collect(),
        depth_limit: ctx.derivations().depth_limit,
        auto_fresh: ctx.derivations().auto_fresh,
    }
}

/// Canonical text of a spec: pretty JSON with a trailing newline.
pub fn serialize_spec(spec: &ManifoldSpec) -> String {
    let mut s = serde_json::to_string_pretty(&to_document(spec)).expect("documents serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn golden_specs_round_trip_bit_exact() {
        for name in CATALOG_NAMES {
            let src = catalog_source(name).unwrap();
            assert_eq!(serialize_spec(&catalog(name).unwrap()), src, "{name}");
        }
    }

    #[test]
    fn catalog_metadata() {
        let s = catalog("iwasawa_ak").unwrap();
        assert_eq!(s.n(), 3);
        assert!(s
            .omega_coefficients()
            .iter()
            .all(|c| c == &BigRational::from_integer(1.into())));
        let t = catalog("torus6").unwrap();
        assert_eq!(t.n(), 3);
        let half = BigRational::new(1.into(), 2.into());
        assert!(t.omega_coefficients().iter().all(|c| c == &half));
        assert_eq!(
            catalog("nosuch").unwrap_err(),
            Error::UnknownSpec("nosuch".into())
        );
    }

    #[test]
    fn iwasawa_structure_equations_match_display() {
        use crate::forms::parse_form;
        let s = catalog("iwasawa_ak").unwrap();
        let four_d1 = parse_form(
            3,
            "-phi[1,3;] + (0,-1)*phi[2,3;] + phi[1;3] + phi[3;1] + (0,-1)*phi[2;3] \
             + (0,1)*phi[3;2] + phi[;1,3] + (0,-1)*phi[;2,3]",
        )
        .unwrap();
        let four_d2 = parse_form(
            3,
            "(0,-1)*phi[1,3;] + phi[2,3;] + (0,-1)*phi[1;3] + (0,1)*phi[3;1] - phi[2;3] \
             - phi[3;2] + (0,-1)*phi[;1,3] - phi[;2,3]",
        )
        .unwrap();
        let quarter = GaussianRational::from_fractions(1, 4, 0, 1);
        assert_eq!(s.d_generator(0), &four_d1.scale_scalar(&quarter));
        assert_eq!(s.d_generator(1), &four_d2.scale_scalar(&quarter));
        assert!(s.d_generator(2).is_zero());
    }

    #[test]
    fn torus_structure_equations() {
        let t = catalog("torus6").unwrap();
        assert!(t.d_generator(1).is_zero());
        assert!(t.d_generator(2).is_zero());
        assert!(!t.is_constant());
    }

    fn doc_with_omega(omega: &str) -> String {
        format!(
            r#"{{"name":"x","n":2,"generators":["a","b"],"d":{{"a":[],"b":[]}},"omega":["1",{omega:?}]}}"#
        )
    }

    #[test]
    fn non_positive_metric_is_a_validation_error() {
        assert!(load_spec(&doc_with_omega("1/2")).is_ok());
        assert!(matches!(
            load_spec(&doc_with_omega("0/1")),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            load_spec(&doc_with_omega("-3")),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn error_categories() {
        assert!(matches!(
            load_spec("{ \"name\": "),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            load_spec("{ nope }"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            load_spec(r#"{"name":"x","n":1,"generators":["a"],"d":{"a":[]}}"#),
            Err(Error::Schema { .. })
        ));
        assert!(matches!(
            load_spec(
                r#"{"name":"x","n":1,"generators":["a"],"d":{"a":[]},"omega":["1"],"extra":1}"#
            ),
            Err(Error::Schema { .. })
        ));
        let bad_index = r#"{"name":"x","n":1,"generators":["a"],
            "d":{"a":[{"coeff":{"re":"1","im":"0"},"hol":[2],"anti":[]}]},"omega":["1"]}"#;
        assert!(matches!(load_spec(bad_index), Err(Error::Validation(_))));
        let unknown_symbol = r#"{"name":"x","n":1,"generators":["a"],
            "d":{"a":[{"coeff":{"re":"1","im":"0"},"monomial":["g"],"hol":[1],"anti":[1]}]},"omega":["1"]}"#;
        assert!(matches!(
            load_spec(unknown_symbol),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn schema_is_valid_json() {
        let v: serde_json::Value = serde_json::from_str(SCHEMA).unwrap();
        assert_eq!(v["type"], "object");
    }
}
