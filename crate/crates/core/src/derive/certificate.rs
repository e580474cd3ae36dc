//! JSON persistence of certificates. Tower elements and large integers are
//! stored as text so that a reload is exact.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::ball::Side;
use crate::exactnum::{Rational, TowerElement};
use crate::modeq::{parse_poly, ModularEquation};

use super::{Class, DerivationTrace, RationalForm, SeriesCertificate, SingularPoint};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("unsupported schema version {0} (expected {SCHEMA_VERSION})")]
    Schema(u32),
}

fn bad(what: &str, e: impl std::fmt::Display) -> CertificateError {
    CertificateError::Malformed(format!("{what}: {e}"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// SHA-256 of the equation in canonical text form.
    pub equation_sha256: String,
    pub tool_version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl Provenance {
    pub fn new(eq: &ModularEquation, timestamp: u64) -> Self {
        Provenance { equation_sha256: equation_hash(eq), tool_version: env!("CARGO_PKG_VERSION").to_string(), timestamp }
    }
}

pub fn equation_hash(eq: &ModularEquation) -> String {
    Sha256::digest(eq.render().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateFile {
    pub certificate: SeriesCertificate,
    pub provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileDoc {
    schema_version: u32,
    certificate: CertDoc,
    provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertDoc {
    equation: EquationDoc,
    class: String,
    side: String,
    identity: String,
    point: PointDoc,
    trace: TraceDoc,
    z: String,
    a: String,
    b: String,
    rational_form: Option<FormDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EquationDoc {
    name: String,
    level: u32,
    s: u32,
    degree: u32,
    k: u32,
    poly: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointDoc {
    u0: String,
    v0: String,
    zeta: String,
    alpha0: String,
    beta0: String,
    scale_root: u32,
    scale: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TraceDoc {
    v1: String,
    v2: String,
    alpha1: String,
    beta1: String,
    alpha2: String,
    beta2: String,
    m0: String,
    m_ratio: String,
    d: u32,
    l: u32,
    s: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormDoc {
    s: u32,
    #[serde(rename = "A")]
    n_coef: String,
    #[serde(rename = "B")]
    const_coef: String,
    sign: i8,
    #[serde(rename = "N")]
    z_num: String,
    #[serde(rename = "M")]
    z_den: String,
    #[serde(rename = "C")]
    c: String,
    r: String,
}

fn elem(s: &str, what: &str) -> Result<TowerElement, CertificateError> {
    TowerElement::from_str(s).map_err(|e| bad(what, e))
}

fn integer(s: &str, what: &str) -> Result<BigInt, CertificateError> {
    BigInt::from_str(s).map_err(|e| bad(what, e))
}

fn rational(s: &str, what: &str) -> Result<Rational, CertificateError> {
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let d = integer(d, what)?;
            if d == BigInt::from(0) {
                return Err(bad(what, "zero denominator"));
            }
            Rational::new(integer(n, what)?, d)
        }
        None => Rational::from_integer(integer(s, what)?),
    };
    Ok(r)
}

impl CertDoc {
    fn from_cert(c: &SeriesCertificate) -> Self {
        let e = &c.equation;
        let p = &c.point;
        let t = &c.trace;
        CertDoc {
            equation: EquationDoc { name: e.name.clone(), level: e.level, s: e.s, degree: e.degree, k: e.k, poly: e.poly.to_string() },
            class: c.class.to_string(),
            side: c.side.as_str().to_string(),
            identity: c.identity(),
            point: PointDoc {
                u0: p.u0.to_string(),
                v0: p.v0.to_string(),
                zeta: p.zeta.to_string(),
                alpha0: p.alpha0.to_string(),
                beta0: p.beta0.to_string(),
                scale_root: p.scale_root,
                scale: p.scale.to_string(),
            },
            trace: TraceDoc {
                v1: t.v1.to_string(),
                v2: t.v2.to_string(),
                alpha1: t.alpha1.to_string(),
                beta1: t.beta1.to_string(),
                alpha2: t.alpha2.to_string(),
                beta2: t.beta2.to_string(),
                m0: t.m0.to_string(),
                m_ratio: t.m_ratio.to_string(),
                d: t.d,
                l: t.l,
                s: t.s,
            },
            z: c.z.to_string(),
            a: c.a.to_string(),
            b: c.b.to_string(),
            rational_form: c.rational_form.as_ref().map(|f| FormDoc {
                s: f.s,
                n_coef: f.n_coef.to_string(),
                const_coef: f.const_coef.to_string(),
                sign: f.sign,
                z_num: f.z_num.to_string(),
                z_den: f.z_den.to_string(),
                c: f.c.to_string(),
                r: f.r.to_string(),
            }),
        }
    }

    fn into_cert(self) -> Result<SeriesCertificate, CertificateError> {
        let e = self.equation;
        let poly = parse_poly(&e.poly).map_err(|err| bad("equation.poly", err))?;
        let equation = ModularEquation::new(e.name, e.level, Some(e.s), e.degree, e.k, poly).map_err(|err| bad("equation", err))?;
        let class = Class::from_str(&self.class).map_err(|err| bad("class", err))?;
        let side = Side::from_str(&self.side).map_err(|err| bad("side", err))?;
        let p = self.point;
        let point = SingularPoint {
            u0: elem(&p.u0, "point.u0")?,
            v0: elem(&p.v0, "point.v0")?,
            zeta: elem(&p.zeta, "point.zeta")?,
            alpha0: elem(&p.alpha0, "point.alpha0")?,
            beta0: elem(&p.beta0, "point.beta0")?,
            scale_root: p.scale_root,
            scale: elem(&p.scale, "point.scale")?,
        };
        let t = self.trace;
        let trace = DerivationTrace {
            v1: elem(&t.v1, "trace.v1")?,
            v2: elem(&t.v2, "trace.v2")?,
            alpha1: elem(&t.alpha1, "trace.alpha1")?,
            beta1: elem(&t.beta1, "trace.beta1")?,
            alpha2: elem(&t.alpha2, "trace.alpha2")?,
            beta2: elem(&t.beta2, "trace.beta2")?,
            m0: elem(&t.m0, "trace.m0")?,
            m_ratio: elem(&t.m_ratio, "trace.m_ratio")?,
            d: t.d,
            l: t.l,
            s: t.s,
        };
        let rational_form = match self.rational_form {
            None => None,
            Some(f) => {
                if f.sign != 1 && f.sign != -1 {
                    return Err(bad("rational_form.sign", "must be 1 or -1"));
                }
                Some(RationalForm {
                    s: f.s,
                    n_coef: integer(&f.n_coef, "rational_form.A")?,
                    const_coef: integer(&f.const_coef, "rational_form.B")?,
                    sign: f.sign,
                    z_num: integer(&f.z_num, "rational_form.N")?,
                    z_den: integer(&f.z_den, "rational_form.M")?,
                    c: rational(&f.c, "rational_form.C")?,
                    r: integer(&f.r, "rational_form.r")?,
                })
            }
        };
        Ok(SeriesCertificate {
            equation,
            class,
            side,
            point,
            trace,
            z: elem(&self.z, "z")?,
            a: elem(&self.a, "a")?,
            b: elem(&self.b, "b")?,
            rational_form,
        })
    }
}

impl CertificateFile {
    pub fn new(certificate: SeriesCertificate, timestamp: u64) -> Self {
        let provenance = Provenance::new(&certificate.equation, timestamp);
        CertificateFile { certificate, provenance }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let doc = FileDoc { schema_version: SCHEMA_VERSION, certificate: CertDoc::from_cert(&self.certificate), provenance: self.provenance.clone() };
        let mut out = serde_json::to_string_pretty(&doc).expect("certificate serializes");
        out.push('\n');
        out
    }

    pub fn from_json(src: &str) -> Result<Self, CertificateError> {
        let raw: serde_json::Value = serde_json::from_str(src).map_err(|e| bad("json", e))?;
        let version = raw.get("schema_version").and_then(|v| v.as_u64()).ok_or_else(|| bad("schema_version", "missing"))?;
        if version != SCHEMA_VERSION as u64 {
            return Err(CertificateError::Schema(version as u32));
        }
        let doc: FileDoc = serde_json::from_value(raw).map_err(|e| bad("json", e))?;
        Ok(CertificateFile { certificate: doc.certificate.into_cert()?, provenance: doc.provenance })
    }
}
