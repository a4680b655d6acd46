//! Objects of the diagram category: finite words in a black letter (the
//! standard object) and a white letter (its dual).

use std::fmt;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

/// A word in black/white letters. Serializes as a string over `b`/`w`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Word(pub Vec<Color>);

impl Word {
    pub fn empty() -> Self {
        Word(vec![])
    }

    pub fn repeated(c: Color, k: usize) -> Self {
        Word(vec![c; k])
    }

    /// `k` copies of the adjoint pair black-white.
    pub fn adjoint_power(k: usize) -> Self {
        let mut v = Vec::with_capacity(2 * k);
        for _ in 0..k {
            v.push(Color::Black);
            v.push(Color::White);
        }
        Word(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letter(&self, i: usize) -> Color {
        self.0[i]
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn count(&self, c: Color) -> usize {
        self.0.iter().filter(|&&x| x == c).count()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        for c in &self.0 {
            write!(f, "{}", if *c == Color::Black { 'b' } else { 'w' })?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let s: String = self
            .0
            .iter()
            .map(|c| if *c == Color::Black { 'b' } else { 'w' })
            .collect();
        ser.serialize_str(&s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        let mut v = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                'b' => v.push(Color::Black),
                'w' => v.push(Color::White),
                _ => return Err(DeError::custom(format!("bad letter {ch:?} in word"))),
            }
        }
        Ok(Word(v))
    }
}
