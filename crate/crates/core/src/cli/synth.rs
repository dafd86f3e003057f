//! Construction specs for `synthesize`.

use std::collections::BTreeMap;

use serde::Deserialize;

use super::doc::SystemDoc;
use super::parse::parse_poly_with;
use super::{check_reports, usage, CliError, SynthMode};
use crate::brackets::VectorField;
use crate::builder::{
    build_circles, build_hamiltonian_perturbation, build_leading_term, build_ndim, build_planar,
    build_separable, build_two_nests, certify, BuilderError, CircleSpec, CurveSet, MultiplierSet,
};
use crate::invariance::{InvarianceError, Verdict};
use crate::ratpoly::{make_vars, parse_rat, MPoly, Rat, Vars};

fn xy() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

/// Prescribed curves with one multiplier each. Planar specs may add the two
/// extra multipliers. In `N ≥ 3` variables there are `N` curves and the
/// determinant construction is weighted by `Φ_k = λ_k g_k`, so curve `k` has
/// cofactor `λ_k {g_1, ..., g_N}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurvesSpec {
    #[serde(default = "xy")]
    variables: Vec<String>,
    curves: Vec<String>,
    multipliers: Vec<String>,
    #[serde(default)]
    extra: Option<[String; 2]>,
    #[serde(default)]
    params: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CirclesSpec {
    centers: Vec<[String; 2]>,
    radii: Vec<String>,
    multipliers: Vec<String>,
    #[serde(default)]
    params: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwoNestsSpec {
    a: String,
    radii: Vec<String>,
}

/// Either `g = g0 + ∫f1 dx + ∫f2 dy` with the line multiplier, or a given
/// curve with a Hamiltonian part and a perturbation.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SeparableSpec {
    Line {
        f1: String,
        f2: String,
        line: [String; 3],
        lambda: String,
        #[serde(default = "zero")]
        g0: String,
        #[serde(default)]
        params: BTreeMap<String, String>,
    },
    Hamiltonian {
        curve: String,
        a: String,
        p: String,
        q: String,
        #[serde(default)]
        params: BTreeMap<String, String>,
    },
}

fn zero() -> String {
    "0".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LeadingTermSpec {
    g: String,
    a: String,
    b: String,
    n: u32,
    #[serde(default)]
    params: BTreeMap<String, String>,
}

fn spec<'a, T: Deserialize<'a>>(src: &'a str) -> Result<T, CliError> {
    serde_json::from_str(src).map_err(|e| usage(format!("spec: {e}")))
}

fn rational(s: &str, params: &BTreeMap<String, Rat>) -> Result<Rat, CliError> {
    let p = parse_poly_with(s, &make_vars::<&str>(&[]), params).map_err(|e| usage(format!("`{s}`: {e}")))?;
    Ok(p.constant_term())
}

fn polys(srcs: &[String], vars: &Vars, params: &BTreeMap<String, Rat>) -> Result<Vec<MPoly>, CliError> {
    srcs.iter()
        .map(|s| parse_poly_with(s, vars, params).map_err(|e| usage(format!("`{s}`: {e}"))))
        .collect()
}

fn params(raw: &BTreeMap<String, String>) -> Result<BTreeMap<String, Rat>, CliError> {
    raw.iter()
        .map(|(k, v)| {
            parse_rat(v.trim())
                .map(|r| (k.clone(), r))
                .ok_or_else(|| usage(format!("parameter `{k}` is not rational: `{v}`")))
        })
        .collect()
}

fn builder_err(e: BuilderError) -> CliError {
    match e {
        BuilderError::Invariance(e @ InvarianceError::NotInvariant { .. }) => {
            CliError::Verification(e.to_string())
        }
        e => usage(e),
    }
}

fn build(mode: SynthMode, src: &str) -> Result<(VectorField, Vec<MPoly>), CliError> {
    match mode {
        SynthMode::Curves => {
            let s: CurvesSpec = spec(src)?;
            let ps = params(&s.params)?;
            let vars = make_vars(&s.variables);
            let curves = polys(&s.curves, &vars, &ps)?;
            let mult = polys(&s.multipliers, &vars, &ps)?;
            if curves.is_empty() {
                return Err(builder_err(BuilderError::EmptyCurves));
            }
            let v = if vars.len() == 2 {
                let mut m = MultiplierSet::new(mult, &vars);
                if let Some([s1, s2]) = &s.extra {
                    let e = polys(&[s1.clone(), s2.clone()], &vars, &ps)?;
                    m = m.with_extra(e[0].clone(), e[1].clone());
                }
                let set = CurveSet::new(curves.clone()).map_err(builder_err)?;
                build_planar(&set, &m).map_err(builder_err)?
            } else {
                if s.extra.is_some() {
                    return Err(usage("extra multipliers are planar only"));
                }
                if mult.len() != curves.len() {
                    return Err(builder_err(BuilderError::CountMismatch {
                        curves: curves.len(),
                        multipliers: mult.len(),
                    }));
                }
                let phis: Vec<MPoly> = mult.iter().zip(&curves).map(|(l, g)| l * g).collect();
                build_ndim(&curves, &phis).map_err(builder_err)?
            };
            Ok((v, curves))
        }
        SynthMode::Circles => {
            let s: CirclesSpec = spec(src)?;
            let ps = params(&s.params)?;
            let centers = s
                .centers
                .iter()
                .map(|[a, b]| Ok((rational(a, &ps)?, rational(b, &ps)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let radii = s.radii.iter().map(|r| rational(r, &ps)).collect::<Result<Vec<_>, _>>()?;
            let cs = CircleSpec::new(centers, radii).map_err(builder_err)?;
            let vars = make_vars(&xy());
            let mult = MultiplierSet::new(polys(&s.multipliers, &vars, &ps)?, &vars);
            let r = build_circles(&cs, &mult).map_err(builder_err)?;
            Ok((r.field, r.curves))
        }
        SynthMode::TwoNests => {
            let s: TwoNestsSpec = spec(src)?;
            let none = BTreeMap::new();
            let a = rational(&s.a, &none)?;
            let radii = s.radii.iter().map(|r| rational(r, &none)).collect::<Result<Vec<_>, _>>()?;
            build_two_nests(&a, &radii).map_err(builder_err)
        }
        SynthMode::Separable => {
            let vars = make_vars(&xy());
            match spec::<SeparableSpec>(src)? {
                SeparableSpec::Line {
                    f1,
                    f2,
                    line,
                    lambda,
                    g0,
                    params: raw,
                } => {
                    let ps = params(&raw)?;
                    let f = polys(&[f1, f2], &vars, &ps)?;
                    let [a, b, c] = [&line[0], &line[1], &line[2]].map(|t| rational(t, &ps));
                    let (a, b, c) = (a?, b?, c?);
                    let (v, g) = build_separable(&f[0], &f[1], (&a, &b, &c), &rational(&lambda, &ps)?, &rational(&g0, &ps)?)
                        .map_err(builder_err)?;
                    Ok((v, vec![g]))
                }
                SeparableSpec::Hamiltonian {
                    curve,
                    a,
                    p,
                    q,
                    params: raw,
                } => {
                    let ps = params(&raw)?;
                    let f = polys(&[curve, p, q], &vars, &ps)?;
                    let (v, _) = build_hamiltonian_perturbation(&f[0], &rational(&a, &ps)?, &f[1], &f[2])
                        .map_err(builder_err)?;
                    Ok((v, vec![f[0].clone()]))
                }
            }
        }
        SynthMode::LeadingTerm => {
            let s: LeadingTermSpec = spec(src)?;
            let ps = params(&s.params)?;
            let vars = make_vars(&xy());
            let g = polys(std::slice::from_ref(&s.g), &vars, &ps)?.remove(0);
            let (v, h, _) = build_leading_term(&g, &rational(&s.a, &ps)?, &rational(&s.b, &ps)?, s.n)
                .map_err(builder_err)?;
            Ok((v, vec![h]))
        }
    }
}

/// Builds the system described by `src` and returns it as a document with
/// the cofactors of its curves. The emitted document is re-parsed and every
/// curve re-certified before it is returned.
pub fn synthesize(mode: SynthMode, src: &str) -> Result<(SystemDoc, Vec<String>), CliError> {
    let (v, curves) = build(mode, src)?;
    certify(&curves, &v).map_err(builder_err)?;
    let doc = SystemDoc::from_polys(&v, &curves);
    let again = doc.parse().map_err(|e| CliError::Verification(format!("self-check: {e}")))?;
    let reports = check_reports(&again).map_err(|e| CliError::Verification(format!("self-check: {e}")))?;
    if let Some(i) = reports.iter().position(|r| r.verdict != Verdict::Invariant) {
        return Err(CliError::Verification(format!("self-check: curve {i} is not invariant")));
    }
    let cofactors = reports.into_iter().map(|r| r.cofactor.unwrap_or_default()).collect();
    Ok((doc, cofactors))
}
