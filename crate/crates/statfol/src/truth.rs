//! Three-valued truth values and their connective tables.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A truth value: definite falsehood, an undefined (uninteresting) case, or
/// definite truth.
///
/// The declaration order gives `False < Undef < True`, which is exactly the
/// order the quantifiers fold with: universal quantification takes the
/// minimum over the domain, existential the maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Truth3 {
    False,
    Undef,
    True,
}

// `not` is the connective on truth values, kept alongside `and`/`or`.
#[allow(clippy::should_implement_trait)]
impl Truth3 {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth3::True
        } else {
            Truth3::False
        }
    }

    /// `Some(bool)` for the definite values, `None` for `Undef`.
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Truth3::True => Some(true),
            Truth3::False => Some(false),
            Truth3::Undef => None,
        }
    }

    pub fn is_defined(self) -> bool {
        self != Truth3::Undef
    }

    pub fn not(self) -> Self {
        match self {
            Truth3::True => Truth3::False,
            Truth3::False => Truth3::True,
            Truth3::Undef => Truth3::Undef,
        }
    }

    /// Strong conjunction: false dominates, otherwise undefined dominates.
    pub fn and(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Truth3::False, _) | (_, Truth3::False) => Truth3::False,
            (Truth3::Undef, _) | (_, Truth3::Undef) => Truth3::Undef,
            _ => Truth3::True,
        }
    }

    /// Strong disjunction: true dominates, otherwise undefined dominates.
    pub fn or(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Truth3::True, _) | (_, Truth3::True) => Truth3::True,
            (Truth3::Undef, _) | (_, Truth3::Undef) => Truth3::Undef,
            _ => Truth3::False,
        }
    }

    /// Material implication, derived as `(not self) or rhs`.
    pub fn imp(self, rhs: Self) -> Self {
        self.not().or(rhs)
    }

    /// The conditional connective: defined only where the antecedent is
    /// definitely true, in which case it takes the consequent's definite
    /// value; every other combination is undefined.
    pub fn cond(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Truth3::True, Truth3::True) => Truth3::True,
            (Truth3::True, Truth3::False) => Truth3::False,
            _ => Truth3::Undef,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Truth3::True => "T",
            Truth3::Undef => "U",
            Truth3::False => "F",
        }
    }
}

impl From<bool> for Truth3 {
    fn from(b: bool) -> Self {
        Truth3::from_bool(b)
    }
}

impl fmt::Display for Truth3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

impl FromStr for Truth3 {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "T" => Ok(Truth3::True),
            "U" => Ok(Truth3::Undef),
            "F" => Ok(Truth3::False),
            other => Err(format!("expected `T`, `U`, or `F`, got `{other}`")),
        }
    }
}

impl Serialize for Truth3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.letter())
    }
}

impl<'de> Deserialize<'de> for Truth3 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub const ALL_TRUTH3: [Truth3; 3] = [Truth3::False, Truth3::Undef, Truth3::True];
