//! Case files: one resolution case per TOML document.
//!
//! Exact rationals are `"p/q"` strings and real constants decimal strings,
//! so nothing passes through a float on the way in.

use std::path::Path;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundInput, BoundShape, DavidConstants};
use crate::curve::{parse_q, MWBasis, PointQ, Q};
use crate::error::{Error, Result};
use crate::models::Family;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Cubic,
    Quartic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseConfig {
    pub id: String,
    pub family: FamilyKind,
    /// Cubic parameter `N`; absent for the quartic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    pub basis: BasisConfig,
    pub constants: ConstantsConfig,
    pub search: SearchConfig,
    #[serde(default)]
    pub reference: ReferenceConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisConfig {
    pub generators: Vec<[String; 2]>,
    pub torsion_order: u32,
    /// A second, worse basis of the same group, for the basis-improvement check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternative: Option<Vec<[String; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsConfig {
    pub c12: String,
    pub c13: String,
    pub c14: String,
    pub c15: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c16: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c17: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c18: Option<String>,
    pub gamma: String,
    pub hhat_p0_bound: String,
    pub alpha: String,
    pub beta: String,
    /// `"log10"` or `"ln"`: the scale inside the iterated logarithm.
    #[serde(default = "default_inner_log")]
    pub inner_log: String,
}

fn default_inner_log() -> String {
    "log10".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    /// The envelope holds for `|u| >= u_threshold`; smaller `|u|` are scanned.
    pub u_threshold: i64,
    /// Least `M` for which `N <= (alpha + beta / m_min) M` is used.
    #[serde(default = "default_m_min")]
    pub m_min: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity_row: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced_bound: Option<i64>,
}

fn default_m_min() -> i64 {
    15
}

/// Published values the pipeline is compared against. Nothing here feeds
/// the computation.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega2_abs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e1: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ell: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell0: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub heights: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_alternative: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a6: Option<String>,
    /// `x(P0)` and `y(P0)` as coefficient lists in the generator of the field.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p0: Option<[Vec<String>; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_bound: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chain: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa3: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa4: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub small_points: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub solutions: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<RowReference>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub collision_pairs: Vec<[i64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowReference {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<i64>>,
    /// `["x", "y"]`, or absent for the point at infinity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<[String; 2]>,
    pub uv: [i64; 2],
}

impl RowReference {
    pub fn point_e(&self) -> Option<PointQ> {
        match &self.point {
            None => Some(PointQ::Infinity),
            Some([x, y]) => PointQ::parse(x, y),
        }
    }
}

/// A checked case with every string parsed.
#[derive(Clone, Debug)]
pub struct Case {
    pub config: CaseConfig,
    pub family: Family,
    pub basis: MWBasis,
    pub alternative: Option<MWBasis>,
    pub david: DavidConstants,
    pub gamma: f64,
    pub hhat_p0_bound: f64,
    pub alpha: f64,
    pub beta: f64,
    pub inner_log_scale: f64,
}

/// Decimal (`"1.34e281"`) or rational (`"5/2"`) string as a double.
pub fn parse_real(s: &str) -> Option<f64> {
    let s = s.trim();
    s.parse::<f64>()
        .ok()
        .or_else(|| parse_q(s).and_then(|q| q.to_f64()))
}

fn parse_point(p: &[String; 2]) -> Option<PointQ> {
    PointQ::parse(&p[0], &p[1])
}

impl CaseConfig {
    pub fn from_toml(text: &str) -> Result<CaseConfig> {
        toml::from_str(text).map_err(|e| Error::ConfigInvalid(vec![e.to_string()]))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::ConfigInvalid(vec![e.to_string()]))
    }

    pub fn load(path: &Path) -> Result<CaseConfig> {
        let text = std::fs::read_to_string(path)?;
        CaseConfig::from_toml(&text)
    }

    /// Parses and checks everything, reporting every violation at once.
    pub fn validate(&self) -> Result<Case> {
        let mut bad: Vec<String> = Vec::new();
        let family = match (self.family, self.n) {
            (FamilyKind::Cubic, Some(n)) => match Family::cubic(n) {
                Ok(f) => Some(f),
                Err(e) => {
                    bad.push(e.to_string());
                    None
                }
            },
            (FamilyKind::Cubic, None) => {
                bad.push("cubic case needs n".into());
                None
            }
            (FamilyKind::Quartic, None) => Some(Family::quartic()),
            (FamilyKind::Quartic, Some(_)) => {
                bad.push("quartic case takes no n".into());
                None
            }
        };
        let mut points = |list: &[[String; 2]], what: &str| -> Vec<PointQ> {
            let mut out = Vec::new();
            for (i, p) in list.iter().enumerate() {
                match parse_point(p) {
                    Some(pt) => {
                        if let Some(f) = &family {
                            if !f.curve().contains(&pt) {
                                bad.push(format!("{what} {} = {pt} is not on the curve", i + 1));
                            }
                        }
                        out.push(pt);
                    }
                    None => bad.push(format!("{what} {}: cannot parse {:?}", i + 1, p)),
                }
            }
            out
        };
        let gens = points(&self.basis.generators, "generator");
        let alt = self
            .basis
            .alternative
            .as_ref()
            .map(|a| points(a, "alternative generator"));
        if gens.is_empty() {
            bad.push("basis has no generators".into());
        }
        if self.basis.torsion_order != 1 {
            bad.push(format!(
                "torsion order {} is not supported (trivial torsion only)",
                self.basis.torsion_order
            ));
        }
        let c = &self.constants;
        let mut num = |name: &str, s: &str| -> f64 {
            match parse_real(s) {
                Some(v) if v > 0.0 && v.is_finite() => v,
                Some(v) => {
                    bad.push(format!("{name} = {v} must be positive"));
                    f64::NAN
                }
                None => {
                    bad.push(format!("{name}: cannot parse {s:?}"));
                    f64::NAN
                }
            }
        };
        let c12 = num("c12", &c.c12);
        let c13 = num("c13", &c.c13);
        let c14 = num("c14", &c.c14);
        let c15 = num("c15", &c.c15);
        let c16 = c.c16.as_ref().map(|s| num("c16", s));
        let c17 = c.c17.as_ref().map(|s| num("c17", s));
        let c18 = c.c18.as_ref().map(|s| num("c18", s));
        let gamma = num("gamma", &c.gamma);
        let hhat = num("hhat_p0_bound", &c.hhat_p0_bound);
        let alpha = num("alpha", &c.alpha);
        let beta = num("beta", &c.beta);
        if self.family == FamilyKind::Quartic && (c16.is_none() || c17.is_none() || c18.is_none()) {
            bad.push("quartic case needs c16, c17 and c18".into());
        }
        let inner_log_scale = match c.inner_log.as_str() {
            "log10" => 1.0 / std::f64::consts::LN_10,
            "ln" => 1.0,
            other => {
                bad.push(format!(
                    "inner_log must be \"log10\" or \"ln\", got {other:?}"
                ));
                f64::NAN
            }
        };
        if self.search.u_threshold < 1 {
            bad.push("u_threshold must be positive".into());
        }
        if self.search.m_min < 1 {
            bad.push("m_min must be positive".into());
        }
        if let (Some([u, v]), Some(f)) = (self.search.identity_row, &family) {
            if !f.on_model(&Q::from_integer(u.into()), &Q::from_integer(v.into())) {
                bad.push(format!("identity_row ({u}, {v}) is not on the model"));
            }
        }
        if !bad.is_empty() {
            return Err(Error::ConfigInvalid(bad));
        }
        let rank = gens.len();
        Ok(Case {
            config: self.clone(),
            family: family.unwrap(),
            basis: MWBasis::free(gens),
            alternative: alt.map(MWBasis::free),
            david: DavidConstants {
                c12,
                c13,
                c14,
                c15,
                c16,
                c17,
                c18,
                alpha,
                beta,
                gamma,
                rank,
                k: rank + 1,
            },
            gamma,
            hhat_p0_bound: hhat,
            alpha,
            beta,
            inner_log_scale,
        })
    }
}

impl Case {
    pub fn load(path: &Path) -> Result<Case> {
        CaseConfig::load(path)?.validate()
    }

    pub fn id(&self) -> &str {
        &self.config.id
    }

    pub fn bound_input(&self, rho: f64) -> Result<BoundInput> {
        let shape = match &self.family {
            Family::Cubic(c) => BoundShape::Cubic(crate::bounds::uniform_constants(c.n)?),
            Family::Quartic(_) => BoundShape::Quartic,
        };
        Ok(BoundInput {
            david: self.david.clone(),
            rho,
            shape,
            inner_log_scale: self.inner_log_scale,
        })
    }

    pub fn reference(&self) -> &ReferenceConfig {
        &self.config.reference
    }
}

/// Reads a reference decimal, `None` if absent or malformed.
pub fn reference_value(s: &Option<String>) -> Option<f64> {
    s.as_deref().and_then(parse_real)
}
