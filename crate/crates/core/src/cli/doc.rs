//! JSON system documents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::parse::{parse_poly_with, ParseError};
use crate::brackets::{BracketError, VectorField};
use crate::builder::FPoly;
use crate::ratpoly::{make_vars, parse_rat, MPoly, Rat, Vars};

/// A vector field, optional curves and named parameters, all as strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub variables: Vec<String>,
    pub components: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curves: Option<Vec<String>>,
    /// Rational parameters, e.g. `{"a": "1/2"}`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    /// Real parameters; a doc with any of these can only be evaluated in
    /// floating point.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub float_params: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{field}: {source}")]
    Parse {
        field: String,
        #[source]
        source: ParseError,
    },
    #[error("parameter `{0}` is not a rational literal: `{1}`")]
    BadParam(String, String),
    #[error("name `{0}` is both a variable and a parameter")]
    NameClash(String),
    #[error("document has no variables")]
    NoVariables,
    #[error("document has no curves")]
    NoCurves,
    #[error("document needs exact parameters but has float parameters {0:?}")]
    FloatOnly(Vec<String>),
    #[error("float evaluation needs exactly 2 variables, got {0}")]
    NotPlanar(usize),
    #[error(transparent)]
    Field(#[from] BracketError),
}

/// A document parsed over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedDoc {
    pub vars: Vars,
    pub field: VectorField,
    pub curves: Vec<MPoly>,
}

impl SystemDoc {
    pub fn from_json(src: &str) -> Result<Self, DocError> {
        serde_json::from_str(src).map_err(|e| DocError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Builds a doc from exact polynomials, printed canonically.
    pub fn from_polys(field: &VectorField, curves: &[MPoly]) -> Self {
        SystemDoc {
            variables: field.vars().iter().cloned().collect(),
            components: field.components().iter().map(|c| c.to_string()).collect(),
            curves: Some(curves.iter().map(|c| c.to_string()).collect()),
            params: BTreeMap::new(),
            float_params: BTreeMap::new(),
        }
    }

    pub fn is_float(&self) -> bool {
        !self.float_params.is_empty()
    }

    pub fn vars(&self) -> Result<Vars, DocError> {
        if self.variables.is_empty() {
            return Err(DocError::NoVariables);
        }
        Ok(make_vars(&self.variables))
    }

    /// Parsed rational parameters, with `extra` (e.g. a fixture sample)
    /// taking precedence over the doc's own.
    pub fn rational_params(
        &self,
        extra: &BTreeMap<String, String>,
    ) -> Result<BTreeMap<String, Rat>, DocError> {
        let mut out = BTreeMap::new();
        for (k, v) in self.params.iter().chain(extra) {
            if self.variables.contains(k) {
                return Err(DocError::NameClash(k.clone()));
            }
            let r = parse_rat(v.trim()).ok_or_else(|| DocError::BadParam(k.clone(), v.clone()))?;
            out.insert(k.clone(), r);
        }
        Ok(out)
    }

    /// Exact parse with parameters substituted.
    pub fn parse(&self) -> Result<ParsedDoc, DocError> {
        self.parse_with(&BTreeMap::new())
    }

    pub fn parse_with(&self, extra: &BTreeMap<String, String>) -> Result<ParsedDoc, DocError> {
        if self.is_float() {
            return Err(DocError::FloatOnly(self.float_params.keys().cloned().collect()));
        }
        let vars = self.vars()?;
        let params = self.rational_params(extra)?;
        let field = VectorField::new(parse_list(&self.components, "components", &vars, &params)?)?;
        let curves = parse_list(self.curves.as_deref().unwrap_or(&[]), "curves", &vars, &params)?;
        Ok(ParsedDoc {
            vars,
            field,
            curves,
        })
    }

    /// Float parse of a planar doc: float parameters are carried as extra
    /// variables during parsing and then evaluated into the coefficients.
    pub fn parse_float(&self) -> Result<(FPoly, FPoly, Vec<FPoly>), DocError> {
        if self.variables.len() != 2 {
            return Err(DocError::NotPlanar(self.variables.len()));
        }
        for k in self.float_params.keys() {
            if self.variables.contains(k) {
                return Err(DocError::NameClash(k.clone()));
            }
        }
        let names: Vec<&String> = self.variables.iter().chain(self.float_params.keys()).collect();
        let vars = make_vars(&names);
        let params = self.rational_params(&BTreeMap::new())?;
        let values: Vec<f64> = self.float_params.values().copied().collect();
        let to_f = |p: &MPoly| float_collapse(p, &values);
        let comps = parse_list(&self.components, "components", &vars, &params)?;
        if comps.len() != 2 {
            return Err(BracketError::Dimension {
                expected: 2,
                got: comps.len(),
            }
            .into());
        }
        let curves = parse_list(self.curves.as_deref().unwrap_or(&[]), "curves", &vars, &params)?;
        Ok((to_f(&comps[0]), to_f(&comps[1]), curves.iter().map(to_f).collect()))
    }
}

fn parse_list(
    srcs: &[String],
    what: &str,
    vars: &Vars,
    params: &BTreeMap<String, Rat>,
) -> Result<Vec<MPoly>, DocError> {
    srcs.iter()
        .enumerate()
        .map(|(i, s)| {
            parse_poly_with(s, vars, params).map_err(|source| DocError::Parse {
                field: format!("{what}[{i}]"),
                source,
            })
        })
        .collect()
}

/// Evaluates variables `2..` at `values`, leaving a polynomial in the first
/// two.
fn float_collapse(p: &MPoly, values: &[f64]) -> FPoly {
    let mut acc: BTreeMap<(u32, u32), f64> = BTreeMap::new();
    for (m, c) in p.terms() {
        let e = m.exponents();
        let w = e[2..]
            .iter()
            .zip(values)
            .fold(crate::ratpoly::to_f64(c), |w, (&k, v)| w * v.powi(k as i32));
        *acc.entry((e[0], e[1])).or_insert(0.0) += w;
    }
    FPoly::new(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(json: &str) -> SystemDoc {
        SystemDoc::from_json(json).unwrap()
    }

    #[test]
    fn params_are_substituted() {
        let d = doc(r#"{"variables":["x","y"],"components":["a*y","-x"],"curves":["x^2 + a*y^2"],"params":{"a":"1/2"}}"#);
        let p = d.parse().unwrap();
        assert_eq!(p.field.component(0).to_string(), "1/2*y");
        assert_eq!(p.curves[0].to_string(), "x^2 + 1/2*y^2");
        let mut s = BTreeMap::new();
        s.insert("a".to_string(), "3".to_string());
        assert_eq!(d.parse_with(&s).unwrap().curves[0].to_string(), "x^2 + 3*y^2");
    }

    #[test]
    fn errors() {
        assert!(matches!(SystemDoc::from_json("{"), Err(DocError::Json(_))));
        assert!(matches!(
            SystemDoc::from_json(r#"{"variables":["x"],"components":["x"],"bogus":1}"#),
            Err(DocError::Json(_))
        ));
        let bad = doc(r#"{"variables":["x","y"],"components":["x*","y"]}"#);
        match bad.parse() {
            Err(DocError::Parse { field, source }) => {
                assert_eq!(field, "components[0]");
                assert_eq!(source.column(), 3);
            }
            other => panic!("{other:?}"),
        }
        let clash = doc(r#"{"variables":["x","y"],"components":["x","y"],"params":{"x":"1"}}"#);
        assert_eq!(clash.parse(), Err(DocError::NameClash("x".into())));
        let nonrat = doc(r#"{"variables":["x","y"],"components":["x","y"],"params":{"a":"pi"}}"#);
        assert!(matches!(nonrat.parse(), Err(DocError::BadParam(..))));
    }

    #[test]
    fn float_mode() {
        let d = doc(r#"{"variables":["x","y"],"components":["(x + a*y)*x","y - a"],"float_params":{"a":2.5}}"#);
        assert!(d.parse().is_err());
        let (p, q, _) = d.parse_float().unwrap();
        assert_eq!(p.eval(1.0, 2.0), 6.0);
        assert_eq!(q.eval(1.0, 2.0), -0.5);
    }

    #[test]
    fn round_trip_through_polys() {
        let d = doc(r#"{"variables":["x","y"],"components":["-y + x^2","x"],"curves":["x - 1"]}"#);
        let p = d.parse().unwrap();
        let again = SystemDoc::from_polys(&p.field, &p.curves);
        assert_eq!(again.parse().unwrap(), p);
    }
}
