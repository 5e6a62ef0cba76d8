use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ArtinError;

/// One generator or inverse generator; `gen` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Self { gen, inverse: false }
    }

    pub fn neg(gen: usize) -> Self {
        Self { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Self { inverse: !self.inverse, ..self }
    }
}

/// A word in Artin generators. Textual form: `s1 s2 s1'` (1-based, `'` = inverse).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct ArtinWord(pub Vec<Letter>);

impl ArtinWord {
    pub fn positive(gens: &[usize]) -> Self {
        Self(gens.iter().map(|&g| Letter::pos(g)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self(self.0.iter().chain(&other.0).copied().collect())
    }

    /// `x⁻¹ · self · x`.
    pub fn conjugated_by(&self, x: &Self) -> Self {
        x.inverse().concat(self).concat(x)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    pub fn check_rank(&self, rank: usize) -> Result<(), ArtinError> {
        match self.max_generator() {
            Some(g) if g >= rank => Err(ArtinError::GeneratorOutOfRange { generator: g + 1, rank }),
            _ => Ok(()),
        }
    }

    /// Replace every letter by a word (inverted for inverse letters).
    pub fn substitute(&self, images: &[ArtinWord]) -> Self {
        let mut out = Vec::new();
        for l in &self.0 {
            let img = &images[l.gen];
            if l.inverse {
                out.extend(img.inverse().0);
            } else {
                out.extend_from_slice(&img.0);
            }
        }
        Self(out)
    }
}

impl fmt::Display for ArtinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> =
            self.0.iter().map(|l| format!("s{}{}", l.gen + 1, if l.inverse { "'" } else { "" })).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for ArtinWord {
    type Err = ArtinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for (pos, tok) in s.split_whitespace().enumerate() {
            if tok == "e" {
                continue;
            }
            let bad = || ArtinError::Parse { token: tok.to_string(), position: pos + 1 };
            let body = tok.strip_prefix('s').ok_or_else(bad)?;
            let (digits, inverse) = match body.strip_suffix('\'').or_else(|| body.strip_suffix("^-1")) {
                Some(d) => (d, true),
                None => (body, false),
            };
            let gen: usize = digits.parse().map_err(|_| bad())?;
            if gen == 0 {
                return Err(bad());
            }
            letters.push(Letter { gen: gen - 1, inverse });
        }
        Ok(Self(letters))
    }
}

impl From<ArtinWord> for String {
    fn from(w: ArtinWord) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for ArtinWord {
    type Error = ArtinError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}
