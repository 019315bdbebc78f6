//! Generator alphabet and the free-word algebra shared by every presentation.
//!
//! Words are kept freely reduced at all API boundaries; raw unreduced letter
//! sequences exist only transiently inside constructors.

use std::fmt;

use thiserror::Error;

/// The three crossing families of a virtual singular braid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Classical,
    Singular,
    Virtual,
}

impl Family {
    pub fn token(self) -> char {
        match self {
            Family::Classical => 's',
            Family::Singular => 't',
            Family::Virtual => 'v',
        }
    }

    pub fn from_token(c: char) -> Option<Family> {
        match c {
            's' => Some(Family::Classical),
            't' => Some(Family::Singular),
            'v' => Some(Family::Virtual),
            _ => None,
        }
    }
}

/// A generator: either a braid-family symbol with a 1-based strand index, or
/// a named abstract generator (kernel presentations, free-product models).
///
/// The derived order is the total order used everywhere: braid symbols sort
/// by (family, index) with Classical < Singular < Virtual, and all braid
/// symbols precede named generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    Braid { family: Family, index: usize },
    Named(String),
}

impl Gen {
    pub fn s(i: usize) -> Gen {
        Gen::Braid { family: Family::Classical, index: i }
    }
    pub fn t(i: usize) -> Gen {
        Gen::Braid { family: Family::Singular, index: i }
    }
    pub fn v(i: usize) -> Gen {
        Gen::Braid { family: Family::Virtual, index: i }
    }
    pub fn named(name: &str) -> Gen {
        Gen::Named(name.to_string())
    }

    pub fn family(&self) -> Option<Family> {
        match self {
            Gen::Braid { family, .. } => Some(*family),
            Gen::Named(_) => None,
        }
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            Gen::Braid { index, .. } => Some(*index),
            Gen::Named(_) => None,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Braid { family, index } => write!(f, "{}{}", family.token(), index),
            Gen::Named(name) => write!(f, "{name}"),
        }
    }
}

/// One run of a freely reduced word: a generator with a nonzero exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub exp: i64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("generator index {index} out of range [1, {max}]")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("zero exponent in token `{0}`")]
    ZeroExponent(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("strand count must be at least 2, got {0}")]
    BadStrandCount(usize),
}

/// Free reduction of a raw run-length letter sequence: adjacent equal symbols
/// merge, zero exponents drop.
pub(crate) fn reduce_runs<G: Clone + Eq>(raw: impl IntoIterator<Item = (G, i64)>) -> Vec<(G, i64)> {
    let mut out: Vec<(G, i64)> = Vec::new();
    for (g, e) in raw {
        if e == 0 {
            continue;
        }
        match out.last_mut() {
            Some((top, te)) if *top == g => {
                *te += e;
                if *te == 0 {
                    out.pop();
                }
            }
            _ => out.push((g, e)),
        }
    }
    out
}

/// A freely reduced word over `Gen`, tagged with the ambient strand count.
///
/// The empty sequence is the identity. Strand counts guard braid-letter
/// indices; named letters ignore them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    strands: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(strands: usize) -> Word {
        Word { strands, letters: Vec::new() }
    }

    /// Builds a word from raw letters, freely reducing.
    pub fn from_letters(strands: usize, raw: impl IntoIterator<Item = (Gen, i64)>) -> Word {
        let letters = reduce_runs(raw)
            .into_iter()
            .map(|(gen, exp)| Letter { gen, exp })
            .collect();
        Word { strands, letters }
    }

    /// Single-letter word g^e.
    pub fn gen(strands: usize, gen: Gen, exp: i64) -> Word {
        Word::from_letters(strands, [(gen, exp)])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Word length counted in unit letters (exponents unfolded).
    pub fn unit_len(&self) -> usize {
        self.letters.iter().map(|l| l.exp.unsigned_abs() as usize).sum()
    }

    /// Iterates unit letters `(gen, ±1)` in word order.
    pub fn unit_letters(&self) -> impl Iterator<Item = (&Gen, i64)> + '_ {
        self.letters.iter().flat_map(|l| {
            let sign = l.exp.signum();
            (0..l.exp.unsigned_abs()).map(move |_| (&l.gen, sign))
        })
    }

    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        if self.strands != other.strands {
            return Err(WordError::StrandMismatch(self.strands, other.strands));
        }
        let raw = self
            .letters
            .iter()
            .chain(other.letters.iter())
            .map(|l| (l.gen.clone(), l.exp));
        Ok(Word::from_letters(self.strands, raw))
    }

    /// Product of several words (left to right).
    pub fn concat_all<'a>(
        strands: usize,
        words: impl IntoIterator<Item = &'a Word>,
    ) -> Result<Word, WordError> {
        let mut acc = Word::identity(strands);
        for w in words {
            acc = acc.concat(w)?;
        }
        Ok(acc)
    }

    pub fn invert(&self) -> Word {
        let raw = self.letters.iter().rev().map(|l| (l.gen.clone(), -l.exp));
        Word::from_letters(self.strands, raw)
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut acc = Word::identity(self.strands);
        for _ in 0..n.unsigned_abs() {
            acc = acc.concat(&base).expect("equal strand counts");
        }
        acc
    }

    /// Removes conjugating prefix/suffix pairs: the shortest word in the
    /// cyclic (conjugacy-representative) class reachable by cancellation.
    pub fn cyclic_reduce(&self) -> Word {
        let mut letters = self.letters.clone();
        loop {
            if letters.len() < 2 {
                break;
            }
            let first = letters.first().unwrap();
            let last = letters.last().unwrap();
            if first.gen != last.gen {
                break;
            }
            let merged = first.exp + last.exp;
            letters.pop();
            if merged == 0 {
                letters.remove(0);
            } else {
                letters[0].exp = merged;
            }
            // merging may expose a new first/last pair of equal symbols
            let reduced = reduce_runs(letters.iter().map(|l| (l.gen.clone(), l.exp)));
            letters = reduced.into_iter().map(|(gen, exp)| Letter { gen, exp }).collect();
        }
        Word { strands: self.strands, letters }
    }

    /// Cyclic rotation by `k` unit letters: w = uv ↦ vu with |u| = k.
    pub fn rotate(&self, k: usize) -> Word {
        let units: Vec<(Gen, i64)> = self.unit_letters().map(|(g, s)| (g.clone(), s)).collect();
        if units.is_empty() {
            return self.clone();
        }
        let k = k % units.len();
        let raw = units[k..].iter().chain(units[..k].iter()).cloned();
        Word::from_letters(self.strands, raw)
    }

    /// All distinct cyclic rotations of the word (by unit letters).
    pub fn rotations(&self) -> Vec<Word> {
        let n = self.unit_len().max(1);
        let mut seen = Vec::new();
        for k in 0..n {
            let r = self.rotate(k);
            if !seen.contains(&r) {
                seen.push(r);
            }
        }
        seen
    }

    /// True if the two words are equal up to cyclic rotation or rotation of
    /// the inverse.
    pub fn cyclically_equivalent(&self, other: &Word) -> bool {
        let a = self.cyclic_reduce();
        let b = other.cyclic_reduce();
        if a.unit_len() != b.unit_len() {
            return false;
        }
        a.rotations().contains(&b) || a.invert().rotations().contains(&b)
    }

    /// Substitutes each generator by the image word, freely reducing.
    /// Generators absent from the map stay as themselves.
    pub fn substitute(&self, map: &std::collections::BTreeMap<Gen, Word>) -> Word {
        let mut raw: Vec<(Gen, i64)> = Vec::new();
        for l in &self.letters {
            match map.get(&l.gen) {
                Some(image) => {
                    let img = image.pow(l.exp);
                    raw.extend(img.letters.iter().map(|m| (m.gen.clone(), m.exp)));
                }
                None => raw.push((l.gen.clone(), l.exp)),
            }
        }
        Word::from_letters(self.strands, raw)
    }

    /// Signed exponent sum of one generator across the word.
    pub fn exponent_of(&self, gen: &Gen) -> i64 {
        self.letters.iter().filter(|l| &l.gen == gen).map(|l| l.exp).sum()
    }

    /// Number of unit-letter occurrences of `gen` (ignoring sign).
    pub fn occurrences(&self, gen: &Gen) -> usize {
        self.letters
            .iter()
            .filter(|l| &l.gen == gen)
            .map(|l| l.exp.unsigned_abs() as usize)
            .sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if l.exp == 1 {
                write!(f, "{}", l.gen)?;
            } else {
                write!(f, "{}^{}", l.gen, l.exp)?;
            }
        }
        Ok(())
    }
}

fn parse_token(tok: &str, resolve: &impl Fn(&str) -> Option<Gen>) -> Result<(Gen, i64), WordError> {
    let (name, exp) = match tok.split_once('^') {
        Some((name, e)) => {
            let exp: i64 = e.parse().map_err(|_| WordError::MalformedToken(tok.to_string()))?;
            (name, exp)
        }
        None => (tok, 1),
    };
    if exp == 0 {
        return Err(WordError::ZeroExponent(tok.to_string()));
    }
    let gen = resolve(name).ok_or_else(|| WordError::MalformedToken(tok.to_string()))?;
    Ok((gen, exp))
}

fn parse_with(
    text: &str,
    strands: usize,
    resolve: impl Fn(&str) -> Option<Gen>,
) -> Result<Word, WordError> {
    let text = text.trim();
    if text.is_empty() || text == "e" {
        return Ok(Word::identity(strands));
    }
    let mut raw = Vec::new();
    for tok in text.split_whitespace() {
        raw.push(parse_token(tok, &resolve)?);
    }
    Ok(Word::from_letters(strands, raw))
}

/// Parses a braid token `s<i>`, `t<i>`, or `v<i>` without exponent suffix.
pub fn braid_gen_from_name(name: &str) -> Option<Gen> {
    let mut chars = name.chars();
    let family = Family::from_token(chars.next()?)?;
    let rest: String = chars.collect();
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let index: usize = rest.parse().ok()?;
    Some(Gen::Braid { family, index })
}

/// Parses a word over the braid alphabet: whitespace-separated tokens
/// `s<i>`, `t<i>`, `v<i>`, optionally suffixed `^<signed-int>`; `e` or the
/// empty string denotes the identity.
pub fn parse_word(text: &str, strands: usize) -> Result<Word, WordError> {
    if strands < 2 {
        return Err(WordError::BadStrandCount(strands));
    }
    let w = parse_with(text, strands, braid_gen_from_name)?;
    for l in w.letters() {
        if let Gen::Braid { index, .. } = l.gen {
            if index < 1 || index > strands - 1 {
                return Err(WordError::IndexOutOfRange { index, max: strands - 1 });
            }
        }
    }
    Ok(w)
}

/// Parses a word whose tokens are resolved against an explicit generator
/// list (named generators first, braid tokens as fallback when listed).
pub fn parse_word_over(text: &str, strands: usize, gens: &[Gen]) -> Result<Word, WordError> {
    let w = parse_with(text, strands, |name| {
        let named = Gen::Named(name.to_string());
        if gens.contains(&named) {
            return Some(named);
        }
        let braid = braid_gen_from_name(name)?;
        gens.contains(&braid).then_some(braid)
    });
    match w {
        Err(WordError::MalformedToken(tok)) if !tok.contains('^') || tok.split_once('^').is_some() => {
            // distinguish unknown generators from syntax errors
            let name = tok.split_once('^').map(|(n, _)| n).unwrap_or(&tok);
            if name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') && !name.is_empty() {
                Err(WordError::UnknownGenerator(name.to_string()))
            } else {
                Err(WordError::MalformedToken(tok))
            }
        }
        other => other,
    }
}

/// Formats a word in the exact text grammar (inverse of `parse_word` up to
/// free reduction).
pub fn format_word(w: &Word) -> String {
    w.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, n: usize) -> Word {
        parse_word(text, n).unwrap()
    }

    #[test]
    fn parse_basic() {
        let word = w("s1 t2^-1 v3", 4);
        assert_eq!(
            word.letters(),
            &[
                Letter { gen: Gen::s(1), exp: 1 },
                Letter { gen: Gen::t(2), exp: -1 },
                Letter { gen: Gen::v(3), exp: 1 },
            ]
        );
    }

    #[test]
    fn parse_identity() {
        assert!(w("e", 2).is_identity());
        assert!(w("", 2).is_identity());
    }

    #[test]
    fn parse_free_reduction() {
        let word = w("s1 s1^-1 t1", 2);
        assert_eq!(word, w("t1", 2));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_word("s3", 3), Err(WordError::IndexOutOfRange { .. })));
        assert!(matches!(parse_word("s0", 3), Err(WordError::IndexOutOfRange { .. })));
        assert!(matches!(parse_word("x1", 3), Err(WordError::MalformedToken(_))));
        assert!(matches!(parse_word("s1^0", 3), Err(WordError::ZeroExponent(_))));
        assert!(matches!(parse_word("s1^x", 3), Err(WordError::MalformedToken(_))));
    }

    #[test]
    fn concat_cancels() {
        let a = w("s1", 2);
        let b = w("s1^-1 t1", 2);
        assert_eq!(a.concat(&b).unwrap(), w("t1", 2));
    }

    #[test]
    fn concat_strand_mismatch() {
        let a = w("s1", 2);
        let b = w("s1", 3);
        assert_eq!(a.concat(&b), Err(WordError::StrandMismatch(2, 3)));
    }

    #[test]
    fn invert_is_antihomomorphism() {
        let a = w("s1 t2^-1", 3);
        assert_eq!(a.invert(), w("t2 s1^-1", 3));
        assert!(a.concat(&a.invert()).unwrap().is_identity());
    }

    #[test]
    fn cyclic_reduce_strips_conjugation() {
        let word = w("s1 t1 s1^-1", 2);
        assert_eq!(word.cyclic_reduce(), w("t1", 2));
        let deeper = w("s1 v1 t1 v1^-1 s1^-1", 2);
        assert_eq!(deeper.cyclic_reduce(), w("t1", 2));
        // partial cancellation keeps the residue
        let partial = w("s1^2 t1 s1^-1", 2);
        assert_eq!(partial.cyclic_reduce(), w("s1 t1", 2));
        // a single power is already cyclically reduced
        assert_eq!(w("v1^2", 2).cyclic_reduce(), w("v1^2", 2));
    }

    #[test]
    fn display_round_trip() {
        for text in ["e", "s1", "s1 t2^-1 v3", "v1^2", "s2^-3 t1"] {
            let word = w(text, 4);
            assert_eq!(parse_word(&format_word(&word), 4).unwrap(), word);
        }
        assert_eq!(format_word(&w("s1 t2^-1 v3", 4)), "s1 t2^-1 v3");
        assert_eq!(format_word(&Word::identity(2)), "e");
    }

    #[test]
    fn rotations_and_equivalence() {
        let word = w("s1 t1 v1", 2);
        assert_eq!(word.rotations().len(), 3);
        assert!(word.cyclically_equivalent(&w("t1 v1 s1", 2)));
        assert!(word.cyclically_equivalent(&w("v1^-1 t1^-1 s1^-1", 2)));
        assert!(!word.cyclically_equivalent(&w("s1 v1 t1", 2)));
    }

    #[test]
    fn substitute_words() {
        let mut map = std::collections::BTreeMap::new();
        map.insert(Gen::s(1), w("t1 v1", 2));
        let word = w("s1^-1 v1", 2);
        assert_eq!(word.substitute(&map), w("v1^-1 t1^-1 v1", 2));
    }

    #[test]
    fn named_generator_parsing() {
        let gens = vec![Gen::named("a12"), Gen::named("b12"), Gen::s(1)];
        let word = parse_word_over("a12 b12^-1 s1", 2, &gens).unwrap();
        assert_eq!(word.letters().len(), 3);
        assert!(matches!(
            parse_word_over("zzz", 2, &gens),
            Err(WordError::UnknownGenerator(_))
        ));
    }
}
