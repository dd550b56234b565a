use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::normalize::latinize_lookalikes;

/// Part-of-speech codes of the annotated corpus.
///
/// Function words use two-letter codes starting with `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PosTag {
    /// Noun.
    N,
    /// Verb.
    V,
    /// Adjective.
    J,
    /// Adverb.
    D,
    /// Numeral.
    M,
    /// Pronoun.
    P,
    /// Conjunction.
    AC,
    /// Preposition.
    AP,
    /// Particle.
    AR,
    /// Interjection.
    AI,
    /// Article.
    AA,
}

impl PosTag {
    pub const ALL: [PosTag; 11] = [
        PosTag::N,
        PosTag::V,
        PosTag::J,
        PosTag::D,
        PosTag::M,
        PosTag::P,
        PosTag::AC,
        PosTag::AP,
        PosTag::AR,
        PosTag::AI,
        PosTag::AA,
    ];

    pub fn code(self) -> &'static str {
        match self {
            PosTag::N => "N",
            PosTag::V => "V",
            PosTag::J => "J",
            PosTag::D => "D",
            PosTag::M => "M",
            PosTag::P => "P",
            PosTag::AC => "AC",
            PosTag::AP => "AP",
            PosTag::AR => "AR",
            PosTag::AI => "AI",
            PosTag::AA => "AA",
        }
    }

    pub fn is_function_word(self) -> bool {
        self.code().len() == 2
    }

    /// Strict parse: the code must be spelled in Latin letters exactly.
    pub fn from_code(code: &str) -> Option<PosTag> {
        PosTag::ALL.into_iter().find(|tag| tag.code() == code)
    }

    /// Lenient parse for hand-made lists: trims and maps Cyrillic lookalikes
    /// (`АС`, `Р`, `АІ`, ...) to their Latin codes.
    pub fn parse_lenient(code: &str) -> Option<PosTag> {
        let code = latinize_lookalikes(code.trim()).to_uppercase();
        PosTag::from_code(&code)
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown part-of-speech code `{0}`")]
pub struct UnknownPosCode(pub String);

impl FromStr for PosTag {
    type Err = UnknownPosCode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PosTag::parse_lenient(s).ok_or_else(|| UnknownPosCode(s.to_string()))
    }
}
