use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Which of the two separable families a state belongs to.
///
/// `Plus` puts `f+` in the upper spinor and carries the angular index `l` in
/// `u`; `Minus` puts `f-` in the upper spinor and carries `l` in `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Plus,
    Minus,
}

impl Kind {
    pub fn mirror(self) -> Self {
        match self {
            Kind::Plus => Kind::Minus,
            Kind::Minus => Kind::Plus,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Plus => "plus",
            Kind::Minus => "minus",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plus" | "+" | "first" => Ok(Kind::Plus),
            "minus" | "-" | "second" => Ok(Kind::Minus),
            other => Err(Error::Parse(format!("unknown kind {other:?}"))),
        }
    }
}

/// Sign of an energy eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergySign {
    Positive,
    Negative,
}

impl EnergySign {
    pub fn flip(self) -> Self {
        match self {
            EnergySign::Positive => EnergySign::Negative,
            EnergySign::Negative => EnergySign::Positive,
        }
    }

    pub fn apply<T: Real>(self, x: T) -> T {
        match self {
            EnergySign::Positive => x,
            EnergySign::Negative => -x,
        }
    }

    pub fn of<T: Real>(x: T) -> Self {
        if x < T::zero() {
            EnergySign::Negative
        } else {
            EnergySign::Positive
        }
    }
}

impl std::str::FromStr for EnergySign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "positive" | "pos" | "+" => Ok(EnergySign::Positive),
            "negative" | "neg" | "-" => Ok(EnergySign::Negative),
            other => Err(Error::Parse(format!("unknown energy sign {other:?}"))),
        }
    }
}

/// Labels of a separated state: kind, `l`, `m` in `-(l+1)..=l`, and the
/// radial index `n_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub kind: Kind,
    pub l: u32,
    pub m: i32,
    pub n_r: u32,
}

impl QuantumNumbers {
    pub fn new(kind: Kind, l: u32, m: i32, n_r: u32) -> Result<Self> {
        check_m(l, m)?;
        Ok(Self { kind, l, m, n_r })
    }

    /// Shorthand with `m = l`, for radial work where `m` is irrelevant.
    pub fn radial(kind: Kind, l: u32, n_r: u32) -> Self {
        Self { kind, l, m: l as i32, n_r }
    }

    pub fn principal(&self) -> u32 {
        self.n_r + self.l
    }
}

pub(crate) fn check_m(l: u32, m: i32) -> Result<()> {
    let l = l as i64;
    let m = m as i64;
    if m < -(l + 1) || m > l {
        return Err(Error::InvalidQuantumNumbers(format!("m = {m} outside -(l+1)..=l for l = {l}")));
    }
    Ok(())
}

/// Multiplicity of an energy level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Degeneracy {
    Finite(u64),
    CountablyInfinite,
}

impl Degeneracy {
    /// The `2l + 2` states sharing fixed `(kind, l, n_r)`.
    pub fn magnetic(l: u32) -> Self {
        Degeneracy::Finite(2 * l as u64 + 2)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Degeneracy::CountablyInfinite)
    }
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degeneracy::Finite(n) => write!(f, "{n}"),
            Degeneracy::CountablyInfinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Degeneracy {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Degeneracy::Finite(n) => s.serialize_u64(*n),
            Degeneracy::CountablyInfinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for Degeneracy {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(u64),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Count(n) => Ok(Degeneracy::Finite(n)),
            Raw::Word(w) if w == "infinite" => Ok(Degeneracy::CountablyInfinite),
            Raw::Word(w) => Err(serde::de::Error::custom(format!("bad degeneracy {w:?}"))),
        }
    }
}

/// The indices that produced a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelLabel {
    /// Fixed `l` and radial index.
    Radial { l: u32, n_r: u32 },
    /// Level shared by every `l` at this radial index.
    AnyL { n_r: u32 },
    /// Level depending only on `N = n_r + l`.
    Principal { n: u32 },
}

impl LevelLabel {
    pub fn l(&self) -> Option<u32> {
        match self {
            LevelLabel::Radial { l, .. } => Some(*l),
            _ => None,
        }
    }

    pub fn n_r(&self) -> Option<u32> {
        match self {
            LevelLabel::Radial { n_r, .. } | LevelLabel::AnyL { n_r } => Some(*n_r),
            LevelLabel::Principal { .. } => None,
        }
    }
}

/// Where a level value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Analytic,
    Numeric,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Analytic => "analytic",
            Source::Numeric => "numeric",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel<T> {
    pub value: T,
    pub kind: Kind,
    pub degeneracy: Degeneracy,
    pub label: LevelLabel,
    pub source: Source,
}

impl<T: Real> EnergyLevel<T> {
    pub fn sign(&self) -> EnergySign {
        EnergySign::of(self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_range_has_2l_plus_2_values() {
        for l in 0..6u32 {
            let count = (-(l as i32) - 3..=(l as i32) + 2)
                .filter(|&m| QuantumNumbers::new(Kind::Plus, l, m, 0).is_ok())
                .count();
            assert_eq!(count, 2 * l as usize + 2);
        }
        assert!(QuantumNumbers::new(Kind::Minus, 0, -2, 0).is_err());
        assert!(QuantumNumbers::new(Kind::Minus, 0, 1, 0).is_err());
    }

    #[test]
    fn degeneracy_serializes_without_sentinel() {
        assert_eq!(serde_json::to_string(&Degeneracy::Finite(12)).unwrap(), "12");
        assert_eq!(serde_json::to_string(&Degeneracy::CountablyInfinite).unwrap(), "\"infinite\"");
        let d: Degeneracy = serde_json::from_str("\"infinite\"").unwrap();
        assert!(d.is_infinite());
        assert!(serde_json::from_str::<Degeneracy>("\"lots\"").is_err());
    }
}
