//! Mapping class words in Dehn twist generators, and curves given as the image
//! of a table curve under such a word.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("unsupported genus {0} (expected 1 or 2)")]
    BadGenus(u32),
    #[error("unknown generator {token:?} for genus {genus}")]
    UnknownGenerator { token: String, genus: u32 },
    #[error("bad exponent in {0:?} (only ^1 and ^-1 are allowed)")]
    BadExponent(String),
    #[error("unknown curve {name:?} for genus {genus}")]
    UnknownCurve { name: String, genus: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Genus {
    One,
    Two,
}

impl Genus {
    pub fn new(g: u32) -> Result<Genus, WordError> {
        match g {
            1 => Ok(Genus::One),
            2 => Ok(Genus::Two),
            _ => Err(WordError::BadGenus(g)),
        }
    }

    pub fn as_u32(self) -> u32 {
        match self {
            Genus::One => 1,
            Genus::Two => 2,
        }
    }

    pub fn generator_names(self) -> &'static [&'static str] {
        match self {
            Genus::One => &["Ta", "Tb"],
            Genus::Two => &["T1", "T2", "T3", "T4", "T5"],
        }
    }

    pub fn num_generators(self) -> usize {
        self.generator_names().len()
    }

    /// Table curves: the twist curves of the generators, then (genus 2) the
    /// separating curve.
    pub fn curve_names(self) -> &'static [&'static str] {
        match self {
            Genus::One => &["a", "b"],
            Genus::Two => &["c1", "c2", "c3", "c4", "c5", "s"],
        }
    }

    pub fn default_levels(self) -> Vec<u32> {
        match self {
            Genus::One => (3..=40).collect(),
            Genus::Two => (3..=10).collect(),
        }
    }
}

/// One letter: generator index (into the genus alphabet) and inversion flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u8,
    pub inv: bool,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, inv: !self.inv }
    }
}

/// A word in the twist generators; evaluated left to right as a product of
/// generator matrices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MCWord {
    genus: Genus,
    letters: Vec<Letter>,
}

impl MCWord {
    pub fn empty(genus: Genus) -> MCWord {
        MCWord { genus, letters: Vec::new() }
    }

    pub fn from_letters(genus: Genus, letters: Vec<Letter>) -> MCWord {
        assert!(letters.iter().all(|l| (l.gen as usize) < genus.num_generators()));
        MCWord { genus, letters }
    }

    /// Whitespace separated tokens like `T1`, `T2^-1`.
    pub fn parse(genus: Genus, s: &str) -> Result<MCWord, WordError> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let (name, inv) = match tok.split_once('^') {
                None => (tok, false),
                Some((n, "-1")) => (n, true),
                Some((n, "1")) | Some((n, "+1")) => (n, false),
                Some(_) => return Err(WordError::BadExponent(tok.to_string())),
            };
            let gen = genus
                .generator_names()
                .iter()
                .position(|g| *g == name)
                .ok_or_else(|| WordError::UnknownGenerator { token: tok.to_string(), genus: genus.as_u32() })?;
            letters.push(Letter { gen: gen as u8, inv });
        }
        Ok(MCWord { genus, letters })
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }
    pub fn len(&self) -> usize {
        self.letters.len()
    }
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Cancels adjacent `g g^-1` pairs.
    pub fn free_reduce(&self) -> MCWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        MCWord { genus: self.genus, letters: out }
    }

    pub fn inverse(&self) -> MCWord {
        MCWord { genus: self.genus, letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &MCWord) -> MCWord {
        assert_eq!(self.genus, other.genus);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        MCWord { genus: self.genus, letters }
    }

    pub fn pow(&self, n: u32) -> MCWord {
        let mut letters = Vec::with_capacity(self.letters.len() * n as usize);
        for _ in 0..n {
            letters.extend_from_slice(&self.letters);
        }
        MCWord { genus: self.genus, letters }
    }

    /// `w · self · w⁻¹`, freely reduced.
    pub fn conjugate_by(&self, w: &MCWord) -> MCWord {
        w.concat(self).concat(&w.inverse()).free_reduce()
    }

    pub fn prepend(&self, l: Letter) -> MCWord {
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.push(l);
        letters.extend_from_slice(&self.letters);
        MCWord { genus: self.genus, letters }
    }

    /// Uniform random letters (not necessarily reduced).
    pub fn random<R: Rng>(genus: Genus, len: usize, rng: &mut R) -> MCWord {
        let n = genus.num_generators() as u8;
        let letters = (0..len).map(|_| Letter { gen: rng.gen_range(0..n), inv: rng.gen_bool(0.5) }).collect();
        MCWord { genus, letters }
    }

    /// Cyclically and freely reduced representative of the conjugacy class,
    /// least under rotation. Returns `(v, canon)` with `self = v·canon·v⁻¹`
    /// up to free reduction.
    pub fn conjugacy_normal_form(&self) -> (MCWord, MCWord) {
        let red = self.free_reduce();
        let mut l = red.letters;
        let mut stripped = Vec::new();
        while l.len() >= 2 && l[0] == l[l.len() - 1].inverse() {
            stripped.push(l[0]);
            l.remove(0);
            l.pop();
        }
        let n = l.len();
        let mut best = 0;
        for k in 1..n {
            if rotate(&l, k) < rotate(&l, best) {
                best = k;
            }
        }
        // rotation by k: canon = l[k..] l[..k] = p⁻¹ l p with p = l[..k]
        let canon = rotate(&l, best);
        stripped.extend_from_slice(&l[..best]);
        (MCWord { genus: self.genus, letters: stripped }.free_reduce(), MCWord { genus: self.genus, letters: canon })
    }
}

fn rotate(l: &[Letter], k: usize) -> Vec<Letter> {
    let mut v = l[k..].to_vec();
    v.extend_from_slice(&l[..k]);
    v
}

impl fmt::Display for MCWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.genus.generator_names();
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", names[l.gen as usize])?;
            if l.inv {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// A table curve of the given genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseCurve {
    pub genus: Genus,
    pub index: u8,
}

impl BaseCurve {
    pub fn parse(genus: Genus, name: &str) -> Result<BaseCurve, WordError> {
        genus
            .curve_names()
            .iter()
            .position(|c| *c == name)
            .map(|i| BaseCurve { genus, index: i as u8 })
            .ok_or_else(|| WordError::UnknownCurve { name: name.to_string(), genus: genus.as_u32() })
    }

    pub fn all(genus: Genus) -> Vec<BaseCurve> {
        (0..genus.curve_names().len()).map(|i| BaseCurve { genus, index: i as u8 }).collect()
    }

    pub fn name(&self) -> &'static str {
        self.genus.curve_names()[self.index as usize]
    }

    /// The generator whose twist curve this is, if any.
    pub fn generator(&self) -> Option<u8> {
        ((self.index as usize) < self.genus.num_generators()).then_some(self.index)
    }

    pub fn is_separating(&self) -> bool {
        self.genus == Genus::Two && self.index == 5
    }
}

impl fmt::Display for BaseCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The curve `conjugator(base)`. Written `W:c` on the command line, or just
/// `c` for a table curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveSpec {
    pub base: BaseCurve,
    pub conjugator: MCWord,
}

impl CurveSpec {
    pub fn table(base: BaseCurve) -> CurveSpec {
        CurveSpec { base, conjugator: MCWord::empty(base.genus) }
    }

    pub fn parse(genus: Genus, s: &str) -> Result<CurveSpec, WordError> {
        let (w, c) = match s.rsplit_once(':') {
            Some((w, c)) => (w, c),
            None => ("", s),
        };
        Ok(CurveSpec { base: BaseCurve::parse(genus, c.trim())?, conjugator: MCWord::parse(genus, w)? })
    }

    /// Image under a further mapping class `w`.
    pub fn transform(&self, w: &MCWord) -> CurveSpec {
        CurveSpec { base: self.base, conjugator: w.concat(&self.conjugator).free_reduce() }
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conjugator.is_empty() {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{}:{}", self.conjugator, self.base)
        }
    }
}

impl FromStr for Genus {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let g: u32 = s.trim().parse().map_err(|_| WordError::BadGenus(0))?;
        Genus::new(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn parse_and_print() {
        let w = MCWord::parse(Genus::Two, "T1 T2^-1  T5^1").unwrap();
        assert_eq!(w.to_string(), "T1 T2^-1 T5");
        assert_eq!(w.len(), 3);
        assert!(MCWord::parse(Genus::Two, "").unwrap().is_empty());
        assert_eq!(
            MCWord::parse(Genus::Two, "Ta").unwrap_err(),
            WordError::UnknownGenerator { token: "Ta".into(), genus: 2 }
        );
        assert_eq!(MCWord::parse(Genus::One, "Ta^2").unwrap_err(), WordError::BadExponent("Ta^2".into()));
    }

    #[test]
    fn free_reduction() {
        let w = MCWord::parse(Genus::Two, "T1 T1^-1").unwrap();
        assert!(w.free_reduce().is_empty());
        let w = MCWord::parse(Genus::Two, "T3 T1 T2 T2^-1 T1^-1 T4").unwrap();
        assert_eq!(w.free_reduce().to_string(), "T3 T4");
    }

    #[test]
    fn conjugacy_normal_form_recovers_the_word() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let w = MCWord::random(Genus::Two, rng.gen_range(0..9), &mut rng);
            let (v, c) = w.conjugacy_normal_form();
            assert_eq!(c.conjugate_by(&v), w.free_reduce());
            let (v2, c2) = c.conjugate_by(&MCWord::random(Genus::Two, 3, &mut rng)).conjugacy_normal_form();
            assert_eq!(c2, c, "{w} vs conj (v2 = {v2})");
        }
    }

    #[test]
    fn curve_specs() {
        let c = CurveSpec::parse(Genus::Two, "T2:c1").unwrap();
        assert_eq!(c.to_string(), "T2:c1");
        assert_eq!(CurveSpec::parse(Genus::Two, "s").unwrap().base.index, 5);
        assert!(CurveSpec::parse(Genus::Two, "c6").is_err());
        let w = MCWord::parse(Genus::Two, "T3 T2^-1").unwrap();
        assert_eq!(c.transform(&w).to_string(), "T3:c1");
    }
}
