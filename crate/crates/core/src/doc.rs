//! JSON documents for functions, spaces, batteries and reports.
//!
//! Infinite numbers are written as the strings `"inf"` and `"-inf"`. Floats use
//! the shortest representation that reads back to the same `f64`.

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::limits::{LimitDecision, LimitEstimate, LimitTarget};
use crate::oc::{DirectCheck, Evidence, OcVerdict};
use crate::oracle::OracleReport;
use crate::ppl::{Piece, Ppl};
use crate::set::Domain;
use crate::space::{Delta2, OrliczSpec, QuasiConcave, Space, SpaceDescriptor};
use crate::term::Term;

pub const FUNCTION_SCHEMA: &str = "ppl-doc/1";
pub const SPACE_SCHEMA: &str = "space-doc/1";
pub const BATTERY_SCHEMA: &str = "battery-doc/1";

/// An `f64` that may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ext(pub f64);

impl Serialize for Ext {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            v if v == f64::INFINITY => s.serialize_str("inf"),
            v if v == f64::NEG_INFINITY => s.serialize_str("-inf"),
            v if v.is_nan() => s.serialize_str("nan"),
            v => s.serialize_f64(v),
        }
    }
}

impl<'de> Deserialize<'de> for Ext {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Ext;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a number or \"inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Ext, E> {
                Ok(Ext(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Ext, E> {
                Ok(Ext(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Ext, E> {
                Ok(Ext(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Ext, E> {
                match v {
                    "inf" | "+inf" => Ok(Ext(f64::INFINITY)),
                    "-inf" => Ok(Ext(f64::NEG_INFINITY)),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }
        d.deserialize_any(V)
    }
}

pub fn ext_value(v: f64) -> Value {
    serde_json::to_value(Ext(v)).expect("numbers serialize")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceDoc {
    pub interval: [Ext; 2],
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDoc {
    pub schema: String,
    pub domain: Domain,
    pub pieces: Vec<PieceDoc>,
}

fn pieces_doc(f: &Ppl) -> Vec<PieceDoc> {
    f.pieces()
        .iter()
        .map(|p| PieceDoc { interval: [Ext(p.lo), Ext(p.hi)], terms: p.terms.clone() })
        .collect()
}

fn build_ppl(domain: Domain, pieces: &[PieceDoc], field: &str) -> Result<Ppl> {
    for (i, p) in pieces.iter().enumerate() {
        if let Some(t) = p.terms.iter().position(|t| !t.coeff.is_finite() || !t.alpha.is_finite()) {
            return Err(Error::Parse(format!("{field}[{i}].terms[{t}]: coefficients and exponents must be finite")));
        }
    }
    let ps = pieces.iter().map(|p| Piece::new(p.interval[0].0, p.interval[1].0, p.terms.clone())).collect();
    Ppl::new(domain, ps).map_err(|e| Error::Parse(format!("{field}: {e}")))
}

impl FunctionDoc {
    pub fn from_ppl(f: &Ppl) -> Self {
        FunctionDoc { schema: FUNCTION_SCHEMA.into(), domain: f.domain(), pieces: pieces_doc(f) }
    }

    pub fn to_ppl(&self) -> Result<Ppl> {
        check_schema(&self.schema, FUNCTION_SCHEMA)?;
        build_ppl(self.domain, &self.pieces, "pieces")
    }
}

fn check_schema(found: &str, want: &str) -> Result<()> {
    if found == want {
        Ok(())
    } else {
        Err(Error::Parse(format!("schema: expected \"{want}\", found \"{found}\"")))
    }
}

/// Deserialize, naming the failing field; serde reports the line and column.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        Error::Parse(format!("field {path}: {inner}"))
    })
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

pub fn parse_function(text: &str) -> Result<Ppl> {
    from_json::<FunctionDoc>(text)?.to_ppl()
}

pub fn emit_function(f: &Ppl) -> String {
    to_json(&FunctionDoc::from_ppl(f))
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Delta2Doc {
    #[serde(default)]
    pub zero: bool,
    #[serde(default)]
    pub infty: bool,
    #[serde(default)]
    pub all: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "lowercase", deny_unknown_fields)]
pub enum SpaceBody {
    Lp {
        p: Ext,
    },
    L1capinf,
    L1plusinf,
    Orlicz {
        /// `Phi` on the half-line.
        phi: Vec<PieceDoc>,
        a_phi: f64,
        b_phi: Ext,
        #[serde(default)]
        delta2: Delta2Doc,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        indices: Option<[f64; 2]>,
    },
    Lorentz {
        phi: Vec<PieceDoc>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        boyd: Option<[f64; 2]>,
    },
    Marcinkiewicz {
        phi: Vec<PieceDoc>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        boyd: Option<[f64; 2]>,
    },
    Cesaro {
        inner: Box<SpaceBody>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub schema: String,
    pub domain: Domain,
    pub space: SpaceBody,
}

fn pair(p: Option<(f64, f64)>) -> Option<[f64; 2]> {
    p.map(|(a, b)| [a, b])
}

fn body_from(s: &Space) -> SpaceBody {
    match s {
        Space::Lp(p) => SpaceBody::Lp { p: Ext(*p) },
        Space::L1CapLinf => SpaceBody::L1capinf,
        Space::L1PlusLinf => SpaceBody::L1plusinf,
        Space::Orlicz(o) => SpaceBody::Orlicz {
            phi: pieces_doc(&o.phi),
            a_phi: o.a_phi,
            b_phi: Ext(o.b_phi),
            delta2: Delta2Doc { zero: o.delta2.zero, infty: o.delta2.infty, all: o.delta2.all },
            indices: pair(o.indices),
        },
        Space::Lorentz(q) => SpaceBody::Lorentz { phi: pieces_doc(&q.phi), boyd: pair(q.boyd) },
        Space::Marcinkiewicz(q) => SpaceBody::Marcinkiewicz { phi: pieces_doc(&q.phi), boyd: pair(q.boyd) },
        Space::Cesaro(inner) => SpaceBody::Cesaro { inner: Box::new(body_from(inner)) },
    }
}

fn space_from(domain: Domain, b: &SpaceBody, field: &str) -> Result<Space> {
    let invalid = |e: Error| Error::Parse(format!("{field}: {e}"));
    let quasi = |phi: &[PieceDoc], boyd: &Option<[f64; 2]>| -> Result<QuasiConcave> {
        let phi = build_ppl(domain, phi, &format!("{field}.phi"))?;
        QuasiConcave::new(phi, boyd.map(|[a, b]| (a, b))).map_err(invalid)
    };
    Ok(match b {
        SpaceBody::Lp { p } => Space::Lp(p.0),
        SpaceBody::L1capinf => Space::L1CapLinf,
        SpaceBody::L1plusinf => Space::L1PlusLinf,
        SpaceBody::Orlicz { phi, a_phi, b_phi, delta2, indices } => {
            let phi = build_ppl(Domain::Halfline, phi, &format!("{field}.phi"))?;
            let d2 = Delta2 { zero: delta2.zero, infty: delta2.infty, all: delta2.all };
            Space::Orlicz(OrliczSpec::new(phi, *a_phi, b_phi.0, d2, indices.map(|[a, b]| (a, b))).map_err(invalid)?)
        }
        SpaceBody::Lorentz { phi, boyd } => Space::Lorentz(quasi(phi, boyd)?),
        SpaceBody::Marcinkiewicz { phi, boyd } => Space::Marcinkiewicz(quasi(phi, boyd)?),
        SpaceBody::Cesaro { inner } => Space::Cesaro(Box::new(space_from(domain, inner, &format!("{field}.inner"))?)),
    })
}

impl SpaceDoc {
    pub fn from_descriptor(x: &SpaceDescriptor) -> Self {
        SpaceDoc { schema: SPACE_SCHEMA.into(), domain: x.domain, space: body_from(&x.space) }
    }

    pub fn to_descriptor(&self) -> Result<SpaceDescriptor> {
        check_schema(&self.schema, SPACE_SCHEMA)?;
        let s = space_from(self.domain, &self.space, "space")?;
        SpaceDescriptor::new(self.domain, s).map_err(|e| Error::Parse(format!("space: {e}")))
    }
}

pub fn parse_space(text: &str) -> Result<SpaceDescriptor> {
    from_json::<SpaceDoc>(text)?.to_descriptor()
}

pub fn emit_space(x: &SpaceDescriptor) -> String {
    to_json(&SpaceDoc::from_descriptor(x))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatteryCaseDoc {
    pub id: String,
    pub function: FunctionDoc,
    pub space: SpaceDoc,
}

/// A list of `(f, X)` pairs for the `verify` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatteryDoc {
    pub schema: String,
    pub cases: Vec<BatteryCaseDoc>,
}

impl BatteryDoc {
    pub fn cases(&self) -> Result<Vec<(String, Ppl, SpaceDescriptor)>> {
        check_schema(&self.schema, BATTERY_SCHEMA)?;
        self.cases
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let at = |e: Error| Error::Parse(format!("cases[{i}] ({}): {e}", c.id));
                Ok((c.id.clone(), c.function.to_ppl().map_err(at)?, c.space.to_descriptor().map_err(at)?))
            })
            .collect()
    }
}

fn target_name(t: LimitTarget) -> &'static str {
    match t {
        LimitTarget::ZeroPlus => "0+",
        LimitTarget::Infinity => "inf",
    }
}

fn decision_name(d: LimitDecision) -> &'static str {
    match d {
        LimitDecision::TendsToZero => "tends-to-zero",
        LimitDecision::PositiveLimit => "positive-limit",
        LimitDecision::Diverges => "diverges",
        LimitDecision::Inconclusive => "inconclusive",
    }
}

fn points_value(points: &[(f64, f64)]) -> Value {
    Value::Array(points.iter().map(|&(x, y)| json!([ext_value(x), ext_value(y)])).collect())
}

pub fn limit_value(e: &LimitEstimate) -> Value {
    json!({
        "target": target_name(e.target),
        "decision": decision_name(e.decision),
        "last_value": ext_value(e.last_value),
        "extrapolated": e.extrapolated.map(ext_value),
        "samples": points_value(&e.samples),
    })
}

pub fn verdict_value(v: &OcVerdict) -> Value {
    let evidence: Vec<Value> = v
        .evidence
        .iter()
        .map(|e| match e {
            Evidence::Limit { label, estimate } => json!({"kind": "limit", "label": label, "estimate": limit_value(estimate)}),
            Evidence::Curve { label, points } => json!({"kind": "curve", "label": label, "points": points_value(points)}),
            Evidence::Note(text) => json!({"kind": "note", "text": text}),
        })
        .collect();
    json!({
        "subject": v.subject,
        "verdict": v.verdict.to_string(),
        "rule": v.rule.to_string(),
        "evidence": evidence,
    })
}

pub fn direct_value(d: &DirectCheck) -> Value {
    json!({
        "falsified": d.falsified,
        "corroborated": d.corroborated,
        "estimate": limit_value(&d.estimate),
    })
}

pub const REPORT_CSV_HEADER: &str = "case,subject,exact,oracle,discrepancy,tol,pass,flag,window";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn ext_str(v: f64) -> String {
    match v {
        v if v == f64::INFINITY => "inf".into(),
        v if v == f64::NEG_INFINITY => "-inf".into(),
        v => format!("{v:?}"),
    }
}

/// One CSV row of an oracle report.
pub fn report_csv_row(case: &str, r: &OracleReport) -> String {
    let window = r.window.map(|(a, b)| format!("{} {}", ext_str(a), ext_str(b))).unwrap_or_default();
    [
        csv_field(case),
        csv_field(&r.subject),
        ext_str(r.exact),
        ext_str(r.oracle),
        ext_str(r.discrepancy),
        ext_str(r.tol),
        r.pass.to_string(),
        csv_field(r.flag.as_deref().unwrap_or("")),
        window,
    ]
    .join(",")
}

/// Shortest round-trip decimal, with `inf` for infinity.
pub fn number(v: f64) -> String {
    ext_str(v)
}
