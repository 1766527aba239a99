//! Analyses and their JSON or text rendering.
//!
//! Every output is a single [`Output`] value. Field order is fixed by the
//! struct layout and maps are ordered, so identical input yields identical
//! bytes.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use torus_zeta::dynamics::{entropy, nk_direct_table, nk_spectral, Entropy, NkValue};
use torus_zeta::gf::Gf;
use torus_zeta::newton::{abs_spectrum, AbsSpectrum};
use torus_zeta::poly::factor::EDF_SEED;
use torus_zeta::polymat::{charpoly, det, MatT};
use torus_zeta::spectral::{spectral_data, SpectralData};
use torus_zeta::zeta::{
    classify, nk_from_series, series_from_closed_form, series_from_nk, SeriesTrunc, ZetaResult,
};
use torus_zeta::PolyRing;

use crate::{CliError, ProblemSpec};

pub const SCHEMA: u32 = 1;
pub const DEFAULT_K: u64 = 12;
pub const DEFAULT_TERMS: usize = 12;

/// Everything derived from one matrix, before any table is computed.
pub struct Analysis {
    pub spec: ProblemSpec,
    pub ring: PolyRing<Gf>,
    pub matrix: MatT,
    pub det_degree: u64,
    pub spectrum: AbsSpectrum,
    pub entropy: Entropy,
    pub spectral: SpectralData,
    pub zeta: ZetaResult,
}

pub fn analyze(spec: &ProblemSpec) -> Result<Analysis, CliError> {
    let (ring, matrix) = spec.build()?;
    let d = det(&ring, &matrix);
    let det_degree = d.degree().ok_or(torus_zeta::Error::SingularMatrix)? as u64;
    let spectrum = abs_spectrum(&ring, &charpoly(&ring, &matrix))?;
    let entropy = entropy(&ring, &matrix)?;
    let spectral = spectral_data(&ring, &matrix)?;
    let zeta = classify(&spectral)?;
    Ok(Analysis {
        spec: spec.clone(),
        ring,
        matrix,
        det_degree,
        spectrum,
        entropy,
        spectral,
        zeta,
    })
}

#[derive(Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Serialize)]
pub struct FieldEcho {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub modulus: Vec<u64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct NkJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u64>,
    /// Decimal value of `q^exponent`; `null` when the exponent is too large
    /// to expand.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Option<String>>,
}

impl NkJson {
    pub fn new(v: NkValue, q: u64) -> NkJson {
        match v {
            NkValue::Zero => NkJson {
                zero: Some(true),
                exponent: None,
                value: None,
            },
            NkValue::Exp(e) => NkJson {
                zero: None,
                exponent: Some(e),
                value: Some(v.to_integer(q).map(|n| n.to_string())),
            },
        }
    }

    fn text(&self) -> String {
        match (self.exponent, &self.value) {
            (None, _) => "0".into(),
            (Some(e), Some(Some(v))) => format!("q^{e} = {v}"),
            (Some(e), _) => format!("q^{e}"),
        }
    }
}

#[derive(Serialize)]
pub struct NkRow {
    pub k: u64,
    pub direct: NkJson,
    pub spectral: NkJson,
    pub equal: bool,
}

#[derive(Serialize)]
pub struct NkTable {
    pub rows: Vec<NkRow>,
    pub all_equal: bool,
}

#[derive(Serialize)]
pub struct SeriesJson {
    pub terms: usize,
    pub from_nk: Vec<String>,
    pub from_closed_form: Option<Vec<String>>,
    /// Whether the two expansions agree; `null` without a closed form.
    pub routes_equal: Option<bool>,
    pub integral: bool,
    pub inverse_recovers_nk: bool,
}

#[derive(Serialize)]
pub struct Output {
    pub schema: u32,
    pub tool: Tool,
    pub command: &'static str,
    pub field: FieldEcho,
    pub edf_seed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det_t_degree: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entropy: Option<Entropy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_spectrum: Option<AbsSpectrum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral: Option<SpectralData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nk: Option<NkTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<ZetaResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesJson>,
}

impl Output {
    fn header(a: &Analysis, command: &'static str) -> Output {
        let f = a.ring.base();
        Output {
            schema: SCHEMA,
            tool: Tool {
                name: "torus-zeta",
                version: env!("CARGO_PKG_VERSION"),
            },
            command,
            field: FieldEcho {
                p: f.p(),
                e: f.e(),
                q: f.q(),
                modulus: f.modulus().to_vec(),
            },
            edf_seed: format!("{EDF_SEED:#x}"),
            input: None,
            det_t_degree: None,
            entropy: None,
            abs_spectrum: None,
            spectral: None,
            nk: None,
            zeta: None,
            series: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("output serializes");
        s.push('\n');
        s
    }
}

pub fn nk_table(a: &Analysis, kmax: u64) -> Result<NkTable, CliError> {
    let q = a.ring.base().q();
    let direct = nk_direct_table(&a.ring, &a.matrix, kmax);
    let mut rows = Vec::with_capacity(direct.len());
    for (i, d) in direct.into_iter().enumerate() {
        let k = i as u64 + 1;
        let s = nk_spectral(&a.spectral, k)?;
        rows.push(NkRow {
            k,
            direct: NkJson::new(d, q),
            spectral: NkJson::new(s, q),
            equal: d == s,
        });
    }
    let all_equal = rows.iter().all(|r| r.equal);
    Ok(NkTable { rows, all_equal })
}

fn series(a: &Analysis, terms: usize) -> SeriesJson {
    let q = a.ring.base().q();
    let nks = nk_direct_table(&a.ring, &a.matrix, terms as u64);
    let from_nk = series_from_nk(&nks, q, terms);
    let closed: Option<SeriesTrunc> = match &a.zeta {
        ZetaResult::Algebraic { closed_form, .. } => Some(series_from_closed_form(closed_form, terms)),
        ZetaResult::Transcendental { .. } => None,
    };
    let recovered = nk_from_series(&from_nk);
    let inverse_recovers_nk = recovered.iter().zip(&nks).all(|(r, v)| {
        let want = v.to_integer(q).expect("series terms stay below the render cap");
        r.is_integer() && r.to_integer() == want.into()
    });
    SeriesJson {
        terms,
        routes_equal: closed.as_ref().map(|c| *c == from_nk),
        from_closed_form: closed.map(|c| c.rendered()),
        integral: from_nk.is_integral(),
        from_nk: from_nk.rendered(),
        inverse_recovers_nk,
    }
}

pub fn classify_output(a: &Analysis) -> Output {
    let mut o = Output::header(a, "classify");
    o.zeta = Some(a.zeta.clone());
    o
}

pub fn entropy_output(a: &Analysis) -> Output {
    let mut o = Output::header(a, "entropy");
    o.entropy = Some(a.entropy);
    o.abs_spectrum = Some(a.spectrum.clone());
    o
}

pub fn nk_output(a: &Analysis, kmax: u64) -> Result<Output, CliError> {
    let mut o = Output::header(a, "nk");
    o.nk = Some(nk_table(a, kmax)?);
    Ok(o)
}

pub fn zeta_output(a: &Analysis, terms: usize) -> Output {
    let mut o = Output::header(a, "zeta");
    o.zeta = Some(a.zeta.clone());
    o.series = Some(series(a, terms));
    o
}

pub fn report_output(a: &Analysis, kmax: u64, terms: usize) -> Result<Output, CliError> {
    let mut o = Output::header(a, "report");
    o.input = Some(a.spec.to_value());
    o.det_t_degree = Some(a.det_degree);
    o.entropy = Some(a.entropy);
    o.abs_spectrum = Some(a.spectrum.clone());
    o.spectral = Some(a.spectral.clone());
    o.nk = Some(nk_table(a, kmax)?);
    o.zeta = Some(a.zeta.clone());
    o.series = Some(series(a, terms));
    Ok(o)
}

fn fmt_multiset(m: &std::collections::BTreeMap<u64, u64>) -> String {
    if m.is_empty() {
        return "{}".into();
    }
    let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k} x{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Plain-text rendering of a full report.
pub fn report_text(a: &Analysis, kmax: u64, terms: usize) -> Result<String, CliError> {
    let f = a.ring.base();
    let mut s = String::new();
    let w = &mut s;
    let _ = writeln!(w, "torus-zeta {} (schema {SCHEMA})", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(w, "field: GF({}^{}) = GF({}), modulus {:?}", f.p(), f.e(), f.q(), f.modulus());
    let _ = writeln!(w, "dimension: {}", a.spec.d);
    let _ = writeln!(w, "deg_t det A: {}", a.det_degree);
    let _ = writeln!(w, "entropy: h(A) = {}", a.entropy);
    let abs: Vec<String> = a.spectrum.entries.iter().map(|(v, m)| format!("{v} x{m}")).collect();
    let _ = writeln!(w, "eigenvalue absolute values: {}", abs.join(", "));
    let sd = &a.spectral;
    let _ = writeln!(w, "root-of-unity orders: {}", fmt_multiset(&sd.rou_orders));
    let _ = writeln!(w, "unit orders: {}", fmt_multiset(&sd.unit_orders));
    let weights: Vec<String> = sd.weights.iter().map(|(n, w)| format!("w_{n} = {w}")).collect();
    let _ = writeln!(w, "weights: {}", if weights.is_empty() { "none".into() } else { weights.join(", ") });
    match &a.zeta {
        ZetaResult::Algebraic { closed_form, .. } => {
            let _ = writeln!(w, "zeta: algebraic, {}", closed_form.display());
        }
        ZetaResult::Transcendental { certificate, .. } => {
            let _ = writeln!(
                w,
                "zeta: transcendental, unit order {} divisible by none of {:?}",
                certificate.n, certificate.m_orders
            );
        }
    }
    let _ = writeln!(w, "radius of convergence: q^{}", a.zeta.radius_exponent());
    let table = nk_table(a, kmax)?;
    let _ = writeln!(w, "N_k (k = 1..{kmax}), routes agree: {}", table.all_equal);
    for r in &table.rows {
        let _ = writeln!(w, "  N_{} = {}", r.k, r.direct.text());
    }
    let ser = series(a, terms);
    let _ = writeln!(w, "series to z^{terms}: {}", ser.from_nk.join(", "));
    if let Some(eq) = ser.routes_equal {
        let _ = writeln!(w, "closed-form expansion agrees: {eq}");
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn analysis(doc: &str) -> Analysis {
        analyze(&ProblemSpec::parse(doc.as_bytes()).unwrap()).unwrap()
    }

    #[test]
    fn zeta_fragment_for_diagonal_example() {
        let a = analysis(r#"{"p":7,"e":1,"d":2,"matrix":[[[6],[0]],[[0],[2]]]}"#);
        let v: Value = serde_json::from_str(&zeta_output(&a, 10).to_json()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["zeta"]["tag"], "Algebraic");
        let factors = &v["zeta"]["closed_form"]["factors"];
        assert_eq!(factors["1"], serde_json::json!({"num": -1, "den": 1}));
        assert_eq!(factors["6"], serde_json::json!({"num": -1, "den": 6}));
        assert_eq!(v["series"]["routes_equal"], true);
        assert_eq!(v["series"]["from_nk"][1], "1");
    }

    #[test]
    fn classify_cubic() {
        let a = analysis(
            r#"{"p":2,"e":1,"d":3,"matrix":[[0,0,[0,1]],[1,0,[0,0,1]],[0,1,[0,0,1]]]}"#,
        );
        let v: Value = serde_json::from_str(&classify_output(&a).to_json()).unwrap();
        assert_eq!(v["zeta"]["tag"], "Transcendental");
        assert_eq!(v["zeta"]["certificate"], serde_json::json!({"n": 1, "m_orders": []}));
        assert_eq!(v["zeta"]["radius_exponent"], -2);
    }

    #[test]
    fn nk_rows_for_t() {
        let a = analysis(r#"{"p":2,"e":1,"d":1,"matrix":[[[0,1]]]}"#);
        let t = nk_table(&a, 3).unwrap();
        assert!(t.all_equal);
        let values: Vec<_> = t.rows.iter().map(|r| r.direct.value.clone().unwrap().unwrap()).collect();
        assert_eq!(values, ["2", "4", "8"]);
    }

    #[test]
    fn text_report_mentions_closed_form() {
        let a = analysis(r#"{"p":7,"e":1,"d":2,"matrix":[[6,0],[0,2]]}"#);
        let text = report_text(&a, 4, 4).unwrap();
        assert!(text.contains("(1-z^2)^{1/2}(1-z^3)^{1/3}/((1-z)(1-z^6)^{1/6})"), "{text}");
        assert!(text.contains("routes agree: true"));
    }
}
