//! Basis labels.
//!
//! A [`Label`] names one basis element of a fusion ring. The variant used
//! depends on the ring family: highest weights and residues are plain
//! integers, lattice points are integer vectors, free-group elements are
//! reduced words, table rings use free-form names and tensor products use
//! pairs. Labels are only meaningful relative to the ring that produced them.

use std::fmt;

use crate::error::{FusionError, Result};

/// Letters used to render free-group generators. `e` is reserved for the unit.
const WORD_ALPHABET: &[u8] = b"abcdfghijklmnopqrstuvwxyz";

/// Maximum free-group rank that can be rendered with single letters.
pub const MAX_FREE_RANK: usize = WORD_ALPHABET.len();

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// Highest weights, group residues, points of ℤ.
    Int(i64),
    /// Points of ℤ^d for d ≥ 2.
    Vector(Vec<i64>),
    /// Reduced free-group word; letter `g > 0` is generator `g`, `-g` its inverse.
    Word(Vec<i32>),
    /// Table labels.
    Name(String),
    /// Basis element of a tensor product ring.
    Pair(Box<Label>, Box<Label>),
}

impl Label {
    pub fn pair(left: Label, right: Label) -> Label {
        Label::Pair(Box::new(left), Box::new(right))
    }

    pub fn name(s: impl Into<String>) -> Label {
        Label::Name(s.into())
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Label::Int(k) => Some(*k),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Label, &Label)> {
        match self {
            Label::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

impl From<i64> for Label {
    fn from(k: i64) -> Self {
        Label::Int(k)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(k) => write!(f, "{k}"),
            Label::Vector(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Label::Word(w) => {
                if w.is_empty() {
                    return write!(f, "e");
                }
                for &letter in w {
                    let c = WORD_ALPHABET[letter.unsigned_abs() as usize - 1] as char;
                    if letter > 0 {
                        write!(f, "{c}")?;
                    } else {
                        write!(f, "{}", c.to_ascii_uppercase())?;
                    }
                }
                Ok(())
            }
            Label::Name(s) => f.write_str(s),
            Label::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Parses a free-group word: lowercase letters are generators, uppercase
/// letters their inverses, `e` (or the empty string) the unit. The result is
/// freely reduced.
pub fn parse_word(text: &str, rank: usize) -> Result<Vec<i32>> {
    let text = text.trim();
    if text == "e" || text.is_empty() {
        return Ok(Vec::new());
    }
    let mut letters = Vec::with_capacity(text.len());
    for c in text.chars() {
        let lower = c.to_ascii_lowercase() as u8;
        let pos = WORD_ALPHABET
            .iter()
            .position(|&a| a == lower)
            .filter(|&p| p < rank && c.is_ascii_alphabetic())
            .ok_or_else(|| FusionError::InvalidLabel(text.to_string()))?;
        let g = pos as i32 + 1;
        letters.push(if c.is_ascii_uppercase() { -g } else { g });
    }
    Ok(reduce_word(letters))
}

/// Free reduction by cancelling adjacent inverse pairs.
pub fn reduce_word(letters: impl IntoIterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for x in letters {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Splits `text` at commas that are not nested inside parentheses.
pub fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(text[start..].trim());
    parts
}

/// Strips one pair of enclosing parentheses, if the whole text is wrapped.
pub fn strip_parens(text: &str) -> Option<&str> {
    let t = text.trim();
    if !(t.starts_with('(') && t.ends_with(')')) {
        return None;
    }
    let inner = &t[1..t.len() - 1];
    let mut depth = 0i32;
    for c in inner.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            _ => {}
        }
    }
    (depth == 0).then_some(inner)
}

pub(crate) fn parse_int(text: &str) -> Result<i64> {
    text.trim()
        .parse::<i64>()
        .map_err(|_| FusionError::InvalidLabel(text.trim().to_string()))
}
