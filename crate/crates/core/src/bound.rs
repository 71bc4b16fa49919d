//! The separation threshold: any evaluation of `f` or `g` at a candidate
//! pair of projected roots is either exactly zero or at least `epsilon` in
//! absolute value.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact_arith::{log2_bound, serde_rational};
use crate::poly::{BiPoly, UniPoly};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EpsilonMode {
    /// Exponent constant `c = 3`. Not certified.
    Paper,
    /// Exponent constant `c = Dx + Dy`, the worst case over the unknown
    /// degrees of the coordinates.
    #[default]
    Safe,
    /// User-supplied threshold.
    Manual,
}

impl EpsilonMode {
    pub fn as_str(self) -> &'static str {
        match self {
            EpsilonMode::Paper => "paper",
            EpsilonMode::Safe => "safe",
            EpsilonMode::Manual => "manual",
        }
    }
}

impl fmt::Display for EpsilonMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EpsilonMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(EpsilonMode::Paper),
            "safe" => Ok(EpsilonMode::Safe),
            "manual" => Ok(EpsilonMode::Manual),
            other => Err(Error::InvalidConfig(format!("unknown epsilon mode `{other}`"))),
        }
    }
}

/// Parameters of the threshold `epsilon = n^(1 - s) * m^(-c * s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundParams {
    /// Largest one-norm of the integer-normalized inputs.
    pub n: Rational,
    /// Largest one-norm of the square-free projections.
    pub m: Rational,
    /// Product of the projection degrees, at least 1.
    pub s: u64,
    pub c: Rational,
    pub mode: EpsilonMode,
    pub epsilon: Rational,
    /// `floor(log2(epsilon))`.
    pub epsilon_log2: i64,
}

impl BoundParams {
    /// Whether `epsilon` is a proven lower bound for nonzero evaluations.
    pub fn is_certified(&self) -> bool {
        self.mode == EpsilonMode::Safe
    }

    /// Exact threshold from the norm, degree and exponent parameters.
    pub fn power_product(n: &Rational, m: &Rational, s: u64, c: &Rational) -> Result<Rational> {
        let cs = Rational::from(c * Integer::from(s));
        if *cs.denom() != 1 {
            return Err(Error::InvalidConfig("c * s must be an integer".into()));
        }
        let e1 = u32::try_from(s - 1).map_err(|_| Error::InvalidConfig("s too large".into()))?;
        let e2 = cs
            .numer()
            .to_u32()
            .ok_or_else(|| Error::InvalidConfig("c * s out of range".into()))?;
        let den = Rational::from(n.pow(e1)) * Rational::from(m.pow(e2));
        Ok(Rational::from(1) / den)
    }
}

/// Upper bound for the Mahler measure of any root of `p`: the one-norm of
/// its primitive integer form.
pub fn mahler_upper_bound(p: &UniPoly) -> Result<Rational> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(p.normalized().one_norm())
}

/// Threshold parameters for a system and its square-free projections.
/// Norms are taken after scaling to primitive integer coefficients.
pub fn compute_params(
    f: &BiPoly,
    g: &BiPoly,
    t_sf: &UniPoly,
    big_t_sf: &UniPoly,
    mode: EpsilonMode,
    manual_eps: Option<&Rational>,
) -> Result<BoundParams> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.normalized().one_norm().max(g.normalized().one_norm());
    let m = mahler_upper_bound(t_sf)?.max(mahler_upper_bound(big_t_sf)?);
    let s = ((t_sf.deg() * big_t_sf.deg()) as u64).max(1);
    let dx = f.deg_x().max(g.deg_x());
    let dy = f.deg_y().max(g.deg_y());
    let c = match mode {
        EpsilonMode::Safe => Rational::from(dx + dy),
        EpsilonMode::Paper | EpsilonMode::Manual => Rational::from(3),
    };
    let epsilon = match mode {
        EpsilonMode::Manual => {
            let e = manual_eps.ok_or(Error::ManualEpsMissing)?;
            if e.cmp0() != std::cmp::Ordering::Greater {
                return Err(Error::ManualEpsNonPositive);
            }
            e.clone()
        }
        _ => BoundParams::power_product(&n, &m, s, &c)?,
    };
    let epsilon_log2 = log2_bound(&epsilon)?;
    Ok(BoundParams {
        n,
        m,
        s,
        c,
        mode,
        epsilon,
        epsilon_log2,
    })
}

/// Serialized form. The power product is not stored for the computed
/// modes (it can run to millions of digits); it is rebuilt on load.
#[derive(Serialize, Deserialize)]
struct BoundParamsRepr {
    mode: EpsilonMode,
    certified: bool,
    #[serde(with = "serde_rational")]
    n: Rational,
    #[serde(with = "serde_rational")]
    m: Rational,
    s: u64,
    #[serde(with = "serde_rational")]
    c: Rational,
    epsilon_log2: i64,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_rational::option")]
    epsilon: Option<Rational>,
}

impl Serialize for BoundParams {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BoundParamsRepr {
            mode: self.mode,
            certified: self.is_certified(),
            n: self.n.clone(),
            m: self.m.clone(),
            s: self.s,
            c: self.c.clone(),
            epsilon_log2: self.epsilon_log2,
            epsilon: (self.mode == EpsilonMode::Manual).then(|| self.epsilon.clone()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BoundParams {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = BoundParamsRepr::deserialize(deserializer)?;
        let epsilon = match (r.mode, r.epsilon) {
            (EpsilonMode::Manual, Some(e)) => e,
            (EpsilonMode::Manual, None) => return Err(D::Error::missing_field("epsilon")),
            _ => BoundParams::power_product(&r.n, &r.m, r.s, &r.c).map_err(D::Error::custom)?,
        };
        Ok(BoundParams {
            n: r.n,
            m: r.m,
            s: r.s,
            c: r.c,
            mode: r.mode,
            epsilon,
            epsilon_log2: r.epsilon_log2,
        })
    }
}
