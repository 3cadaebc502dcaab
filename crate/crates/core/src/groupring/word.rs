use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Generator index.
pub type Gen = u32;

/// A freely reduced word, run-length encoded as `(generator, exponent)`
/// syllables. Adjacent syllables always have distinct generators and no
/// exponent is zero; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    syllables: Vec<(Gen, i64)>,
}

/// Freely reduces a raw letter sequence.
pub fn free_reduce<I>(letters: I) -> Word
where
    I: IntoIterator<Item = (Gen, i64)>,
{
    let mut stack: Vec<(Gen, i64)> = Vec::new();
    for (g, e) in letters {
        if e == 0 {
            continue;
        }
        match stack.last_mut() {
            Some(top) if top.0 == g => {
                top.1 += e;
                if top.1 == 0 {
                    stack.pop();
                }
            }
            _ => stack.push((g, e)),
        }
    }
    Word { syllables: stack }
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(g: Gen) -> Self {
        Word { syllables: vec![(g, 1)] }
    }

    pub fn power(g: Gen, e: i64) -> Self {
        free_reduce([(g, e)])
    }

    pub fn syllables(&self) -> &[(Gen, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters `g^{±1}` in the reduced word.
    pub fn len(&self) -> u64 {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    /// Product in the free group.
    pub fn mul(&self, other: &Word) -> Word {
        if self.is_identity() {
            return other.clone();
        }
        if other.is_identity() {
            return self.clone();
        }
        free_reduce(self.syllables.iter().chain(other.syllables.iter()).copied())
    }

    /// Sum of the exponents of generator `g`.
    pub fn exponent_sum(&self, g: Gen) -> i64 {
        self.syllables.iter().filter(|s| s.0 == g).map(|s| s.1).sum()
    }

    /// Largest generator index that occurs, if any.
    pub fn max_generator(&self) -> Option<Gen> {
        self.syllables.iter().map(|s| s.0).max()
    }

    /// Replaces every generator by a word (a free-group homomorphism).
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Vec::new();
        for &(g, e) in &self.syllables {
            let img = &images[g as usize];
            let piece = if e > 0 { img.clone() } else { img.inverse() };
            for _ in 0..e.unsigned_abs() {
                out.extend_from_slice(&piece.syllables);
            }
        }
        free_reduce(out)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay { word: self, alphabet }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return write!(f, "1");
        }
        for (i, &(g, e)) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = self.alphabet.name(g).unwrap_or("?");
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Ordered generator names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Gen>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut a = Alphabet::default();
        for n in names {
            a.push(n.as_ref())?;
        }
        Ok(a)
    }

    /// Alphabet `g1, …, gn`.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        Alphabet::new(&names).expect("generated names are valid")
    }

    pub fn push(&mut self, name: &str) -> Result<Gen> {
        if !valid_name(name) {
            return Err(Error::parse("generator name", format!("`{name}` is not a valid name")));
        }
        if self.index.contains_key(name) {
            return Err(Error::parse("generator name", format!("duplicate generator `{name}`")));
        }
        let g = self.names.len() as Gen;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), g);
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, g: Gen) -> Option<&str> {
        self.names.get(g as usize).map(String::as_str)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Option<Gen> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Parses whitespace-separated tokens `name` or `name^<integer>`.
    /// The string `1` (or an empty string) denotes the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.parse().map_err(|_| Error::parse("word", format!("bad exponent in `{tok}`")))?;
                    (n, e)
                }
                None => (tok, 1),
            };
            let g = self.lookup(name).ok_or_else(|| Error::parse("word", format!("unknown generator `{name}`")))?;
            letters.push((g, exp));
        }
        Ok(free_reduce(letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_reduce(mut letters: Vec<(Gen, i64)>) -> Vec<(Gen, i64)> {
        // expand to unit letters and cancel adjacent inverse pairs until stable
        let mut unit: Vec<(Gen, i64)> = Vec::new();
        for (g, e) in letters.drain(..) {
            for _ in 0..e.unsigned_abs() {
                unit.push((g, e.signum()));
            }
        }
        loop {
            let pos = unit.windows(2).position(|w| w[0].0 == w[1].0 && w[0].1 == -w[1].1);
            match pos {
                Some(i) => {
                    unit.drain(i..i + 2);
                }
                None => break,
            }
        }
        let mut out: Vec<(Gen, i64)> = Vec::new();
        for (g, s) in unit {
            match out.last_mut() {
                Some(t) if t.0 == g => t.1 += s,
                _ => out.push((g, s)),
            }
        }
        out
    }

    #[test]
    fn reduce_examples() {
        let a = Alphabet::new(&["x", "y"]).unwrap();
        assert!(a.parse_word("x x^-1").unwrap().is_identity());
        assert_eq!(a.parse_word("x y^2 y^-2 x").unwrap(), Word::power(0, 2));
        let b = Alphabet::new(&["a", "b"]).unwrap();
        let w = b.parse_word("a b^-1 b a^-1 a").unwrap();
        assert_eq!(w, Word::generator(0));
        assert_eq!(w.syllables(), naive_reduce(vec![(0, 1), (1, -1), (1, 1), (0, -1), (0, 1)]).as_slice());
    }

    #[test]
    fn reduce_is_idempotent() {
        let w = free_reduce([(0, 2), (1, 1), (1, -1), (0, -1), (2, 3)]);
        assert_eq!(free_reduce(w.syllables().iter().copied()), w);
        assert_eq!(w.mul(&w.inverse()), Word::identity());
    }

    #[test]
    fn parse_errors() {
        let a = Alphabet::new(&["x"]).unwrap();
        assert!(a.parse_word("z").is_err());
        assert!(a.parse_word("x^q").is_err());
        assert!(Alphabet::new(&["1x"]).is_err());
        assert!(Alphabet::new(&["x", "x"]).is_err());
    }

    #[test]
    fn display_roundtrip() {
        let a = Alphabet::new(&["x", "y"]).unwrap();
        let w = a.parse_word("x y^-1 x^2").unwrap();
        let s = w.display(&a).to_string();
        assert_eq!(s, "x y^-1 x^2");
        assert_eq!(a.parse_word(&s).unwrap(), w);
    }

    #[test]
    fn substitution() {
        let a = Alphabet::new(&["x", "y"]).unwrap();
        let images = vec![a.parse_word("x y").unwrap(), a.parse_word("y x y").unwrap()];
        let w = a.parse_word("x y^-1").unwrap();
        assert_eq!(w.substitute(&images), a.parse_word("x y y^-1 x^-1 y^-1").unwrap());
        assert_eq!(w.substitute(&images), a.parse_word("y^-1").unwrap());
    }
}
