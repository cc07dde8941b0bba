//! Pure braids and longitudes of their closures via the Artin action.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mu::LongitudeSystem;
use crate::word::Word;

/// `A_{ij}^{±1}` with `1 <= i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArtinLetter {
    pub i: usize,
    pub j: usize,
    pub exponent: i8,
}

impl ArtinLetter {
    /// `σ_{j-1} ⋯ σ_{i+1} σ_i^{±2} σ_{i+1}^{-1} ⋯ σ_{j-1}^{-1}`.
    pub fn sigmas(&self) -> Vec<(usize, i8)> {
        let mut out: Vec<(usize, i8)> = (self.i + 1..self.j).rev().map(|k| (k, 1)).collect();
        out.push((self.i, self.exponent));
        out.push((self.i, self.exponent));
        out.extend((self.i + 1..self.j).map(|k| (k, -1)));
        out
    }
}

impl fmt::Display for ArtinLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.i <= 9 && self.j <= 9 {
            write!(f, "A{}{}", self.i, self.j)?;
        } else {
            write!(f, "A({},{})", self.i, self.j)?;
        }
        if self.exponent < 0 {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureBraidWord {
    pub strands: usize,
    pub letters: Vec<ArtinLetter>,
}

impl PureBraidWord {
    pub fn new(strands: usize, letters: Vec<ArtinLetter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::BraidParse("a braid needs at least one strand".into()));
        }
        for l in &letters {
            if l.i == 0 || l.i >= l.j || l.j > strands || (l.exponent != 1 && l.exponent != -1) {
                return Err(Error::BraidParse(format!("invalid letter {l} on {strands} strands")));
            }
        }
        Ok(PureBraidWord { strands, letters })
    }

    pub fn sigmas(&self) -> Vec<(usize, i8)> {
        self.letters.iter().flat_map(ArtinLetter::sigmas).collect()
    }
}

impl fmt::Display for PureBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

fn parse_letter(token: &str) -> Result<ArtinLetter> {
    let bad = |why: &str| Error::BraidParse(format!("`{token}`: {why}"));
    let (body, exponent) = match token.split_once('^') {
        Some((b, "1")) | Some((b, "+1")) => (b, 1),
        Some((b, "-1")) => (b, -1),
        Some(_) => return Err(bad("exponent must be 1 or -1")),
        None => (token, 1),
    };
    let rest = body.strip_prefix('A').ok_or_else(|| bad("expected a letter A"))?;
    let (i, j) = if let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let (a, b) = inner.split_once(',').ok_or_else(|| bad("expected A(i,j)"))?;
        let p = |s: &str| s.trim().parse::<usize>().map_err(|_| bad("index is not a number"));
        (p(a)?, p(b)?)
    } else {
        let digits: Vec<usize> =
            rest.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(|| bad("expected two digits"))?;
        match digits[..] {
            [i, j] => (i, j),
            _ => return Err(bad("expected two digits, or A(i,j) for larger indices")),
        }
    };
    Ok(ArtinLetter { i, j, exponent })
}

impl FromStr for PureBraidWord {
    type Err = Error;

    /// `n; A12 A13^-1 A(2,11)`.
    fn from_str(s: &str) -> Result<Self> {
        let (n, rest) = s
            .split_once(';')
            .ok_or_else(|| Error::BraidParse("expected `n; letters`".into()))?;
        let strands = n
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::BraidParse(format!("strand count `{}` is not a number", n.trim())))?;
        let letters = rest.split_whitespace().map(parse_letter).collect::<Result<_>>()?;
        PureBraidWord::new(strands, letters)
    }
}

/// Longitudes of the closure of a braid given as `σ_i^{±1}` letters; the
/// braid must be pure. See [`crate::link::braid_closure_pd`] for the crossing
/// conventions, which this action matches.
pub fn sigma_longitudes(strands: usize, sigmas: &[(usize, i8)], q: usize) -> Result<LongitudeSystem> {
    if q < 2 {
        return Err(Error::DegreeBoundTooSmall(q));
    }
    // position p carries strand s with arc C^{-1} x_s C
    let mut strand: Vec<u32> = (1..=strands as u32).collect();
    let mut conj: Vec<Word> = vec![Word::identity(); strands];
    let arc = |s: u32, c: &Word| c.invert() * Word::generator(s) * c;
    for &(i, eps) in sigmas {
        if i == 0 || i >= strands || (eps != 1 && eps != -1) {
            return Err(Error::BraidParse(format!("invalid letter s{i}^{eps} on {strands} strands")));
        }
        let (p, r) = (i - 1, i);
        if eps > 0 {
            let over = arc(strand[r], &conj[r]);
            let under = &conj[p] * &over;
            conj[p] = std::mem::replace(&mut conj[r], under);
        } else {
            let over = arc(strand[p], &conj[p]);
            let under = &conj[r] * &over.invert();
            conj[r] = std::mem::replace(&mut conj[p], under);
        }
        strand.swap(p, r);
    }
    if let Some(p) = (0..strands).find(|&p| strand[p] as usize != p + 1) {
        let s = strand[p] as usize;
        return Err(Error::NotPureBraid { strand: s, ends_at: p + 1 });
    }
    let longitudes = conj
        .into_iter()
        .enumerate()
        .map(|(p, lambda)| {
            let g = p as u32 + 1;
            let e = lambda.exponent_sum(g);
            lambda * Word::power_of(g, -e)
        })
        .collect();
    LongitudeSystem::new(strands, q, longitudes)
}

/// Longitudes of the closure of a pure braid, valid modulo `F_q`.
pub fn artin_longitudes(braid: &PureBraidWord, q: usize) -> Result<LongitudeSystem> {
    sigma_longitudes(braid.strands, &braid.sigmas(), q)
}
