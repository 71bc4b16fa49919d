//! Univariate and bivariate polynomials over the rationals.

mod bi;
mod uni;
pub mod zpoly;

use std::cmp::Ordering;
use std::fmt;

use rug::Rational;
use serde::{Deserialize, Serialize};

pub use bi::{BiPoly, IntRows};
pub use uni::{gcd_uni, square_free_part, sturm_count, yun_decomposition, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "x",
            Var::Y => "y",
        })
    }
}

/// Writes `c1*m1 + c2*m2 ...` in the input grammar, e.g. `4*x^6 - 45*x^4`.
fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(Vec<(Var, u32)>, &Rational)]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (k, (mono, c)) in terms.iter().enumerate() {
        let neg = c.cmp0() == Ordering::Less;
        let abs = Rational::from(c.abs_ref());
        if k == 0 {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        let factors: Vec<String> = mono
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        if factors.is_empty() {
            write!(f, "{abs}")?;
        } else {
            if abs != 1 {
                write!(f, "{abs}*")?;
            }
            f.write_str(&factors.join("*"))?;
        }
    }
    Ok(())
}
