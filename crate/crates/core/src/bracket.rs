//! Formal brackets and linkings.
//!
//! A formal linking `lk(u,v)` is the trivalent tree obtained by joining the
//! roots of `u` and `v` by an edge, with each internal vertex cyclically
//! ordered as (left, right, parent). Re-association moves the joining edge and
//! keeps every cyclic order; swapping the children of an internal vertex
//! reverses its order and flips the sign. A class is represented by the most
//! balanced joining edge, with children ordered by [`Bracket`]'s `Ord`; when
//! several edges are equally balanced the greatest resulting `lk(u,v)` wins.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mu::MuIndex;

/// Largest index weight accepted by [`massey_sum`].
pub const MAX_WEIGHT: usize = 12;

const LETTERS: &str = "xyzwabcdefghijklmnopqrstuv";

pub fn component_letter(c: u32) -> Option<char> {
    LETTERS.chars().nth((c as usize).checked_sub(1)?)
}

pub fn letter_component(ch: char) -> Option<u32> {
    LETTERS.chars().position(|l| l == ch).map(|p| p as u32 + 1)
}

/// Binary tree with leaves labeled by 1-based components.
///
/// Ordered with leaves before composites, leaves by component, heavier
/// composites first, and equal weights by left then right child.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Bracket {
    Leaf(u32),
    Node(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn pair(a: Bracket, b: Bracket) -> Bracket {
        Bracket::Node(Box::new(a), Box::new(b))
    }

    pub fn weight(&self) -> usize {
        match self {
            Bracket::Leaf(_) => 1,
            Bracket::Node(a, b) => a.weight() + b.weight(),
        }
    }

    /// `(a_1,(a_2,(⋯,(a_{n-1},a_n))))`.
    pub fn right_nested(mut atoms: Vec<Bracket>) -> Option<Bracket> {
        let mut acc = atoms.pop()?;
        while let Some(a) = atoms.pop() {
            acc = Bracket::pair(a, acc);
        }
        Some(acc)
    }

    pub fn leaves(&self) -> Vec<u32> {
        match self {
            Bracket::Leaf(c) => vec![*c],
            Bracket::Node(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
        }
    }
}

impl Ord for Bracket {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Bracket::Leaf(a), Bracket::Leaf(b)) => a.cmp(b),
            (Bracket::Leaf(_), Bracket::Node(..)) => Ordering::Less,
            (Bracket::Node(..), Bracket::Leaf(_)) => Ordering::Greater,
            (Bracket::Node(a1, b1), Bracket::Node(a2, b2)) => other
                .weight()
                .cmp(&self.weight())
                .then_with(|| a1.cmp(a2))
                .then_with(|| b1.cmp(b2)),
        }
    }
}

impl PartialOrd for Bracket {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bracket {
    /// Leaf-headed right-nested chains print as strings (`yyxy`), other pairs as `(u,v)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bracket::Leaf(c) => match component_letter(*c) {
                Some(l) => write!(f, "{l}"),
                None => write!(f, "[{c}]"),
            },
            Bracket::Node(a, b) => match **a {
                Bracket::Leaf(_) => write!(f, "{a}{b}"),
                Bracket::Node(..) => write!(f, "({a},{b})"),
            },
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser { chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 }
    }

    fn err<T>(&self, reason: impl Into<String>) -> Result<T> {
        Err(Error::BracketParse { pos: self.pos, reason: reason.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{ch}`"))
        }
    }

    // one or more atoms, right-nested
    fn sequence(&mut self) -> Result<Bracket> {
        let mut atoms = Vec::new();
        loop {
            match self.peek() {
                Some('(') => {
                    self.pos += 1;
                    let a = self.sequence()?;
                    self.expect(',')?;
                    let b = self.sequence()?;
                    self.expect(')')?;
                    atoms.push(Bracket::pair(a, b));
                }
                Some(ch) if ch.is_alphabetic() => match letter_component(ch) {
                    Some(c) => {
                        self.pos += 1;
                        atoms.push(Bracket::Leaf(c));
                    }
                    None => return self.err(format!("`{ch}` is not a component letter")),
                },
                _ => break,
            }
        }
        match Bracket::right_nested(atoms) {
            Some(b) => Ok(b),
            None => self.err("expected a letter or `(`"),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(ch) => self.err(format!("unexpected `{ch}`")),
        }
    }
}

pub fn parse_bracket(text: &str) -> Result<Bracket> {
    let mut p = Parser::new(text);
    let b = p.sequence()?;
    p.finish()?;
    Ok(b)
}

impl FromStr for Bracket {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_bracket(s)
    }
}

/// `±lk(u,v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalLinking {
    pub sign: i8,
    pub u: Bracket,
    pub v: Bracket,
}

impl FormalLinking {
    pub fn new(u: Bracket, v: Bracket) -> Self {
        FormalLinking { sign: 1, u, v }
    }

    pub fn weight(&self) -> usize {
        self.u.weight() + self.v.weight()
    }
}

impl fmt::Display for FormalLinking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            f.write_str("-")?;
        }
        write!(f, "lk({},{})", self.u, self.v)
    }
}

impl FromStr for FormalLinking {
    type Err = Error;

    /// `lk(u,v)`, `-lk(u,v)`, or `lk(w)` meaning the two top halves of `w`.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let mut sign = 1;
        match p.peek() {
            Some('-') => {
                sign = -1;
                p.pos += 1;
            }
            Some('+') => p.pos += 1,
            _ => {}
        }
        for ch in ['l', 'k', '('] {
            p.expect(ch)?;
        }
        let first = p.sequence()?;
        let (u, v) = if p.peek() == Some(',') {
            p.pos += 1;
            (first, p.sequence()?)
        } else {
            match first {
                Bracket::Node(a, b) => (*a, *b),
                Bracket::Leaf(_) => return p.err("a linking needs weight at least 2"),
            }
        };
        p.expect(')')?;
        p.finish()?;
        Ok(FormalLinking { sign, u, v })
    }
}

/// Representative `lk(u,v)` of a nonzero class: `|u| <= |v|`, with the
/// most balanced split available.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalLinking {
    pub u: Bracket,
    pub v: Bracket,
}

impl CanonicalLinking {
    pub fn weight(&self) -> usize {
        self.u.weight() + self.v.weight()
    }
}

impl fmt::Display for CanonicalLinking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lk({},{})", self.u, self.v)
    }
}

impl Serialize for CanonicalLinking {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Unrooted tree of a formal linking. Internal vertices list their three
/// neighbours in cyclic order; leaves list their single neighbour.
struct Tree {
    label: Vec<Option<u32>>,
    adj: Vec<Vec<usize>>,
}

impl Tree {
    fn from_linking(l: &FormalLinking) -> Tree {
        let mut t = Tree { label: Vec::new(), adj: Vec::new() };
        let a = t.add(&l.u);
        let b = t.add(&l.v);
        t.adj[a].push(b);
        t.adj[b].push(a);
        t
    }

    // parent slot is pushed last by the caller
    fn add(&mut self, b: &Bracket) -> usize {
        let id = self.label.len();
        match b {
            Bracket::Leaf(c) => {
                self.label.push(Some(*c));
                self.adj.push(Vec::new());
            }
            Bracket::Node(l, r) => {
                self.label.push(None);
                self.adj.push(Vec::new());
                let li = self.add(l);
                let ri = self.add(r);
                self.adj[li].push(id);
                self.adj[ri].push(id);
                self.adj[id] = vec![li, ri];
            }
        }
        id
    }

    /// Branch at `a` seen from `parent`, with canonically ordered children
    /// and the sign of that reordering; `None` if two sibling branches coincide.
    fn rooted(&self, a: usize, parent: usize) -> Option<(Bracket, i8)> {
        if let Some(c) = self.label[a] {
            return Some((Bracket::Leaf(c), 1));
        }
        let nb = &self.adj[a];
        let k = nb.iter().position(|&n| n == parent).expect("parent is adjacent");
        let (l, ls) = self.rooted(nb[(k + 1) % 3], a)?;
        let (r, rs) = self.rooted(nb[(k + 2) % 3], a)?;
        match l.cmp(&r) {
            Ordering::Less => Some((Bracket::pair(l, r), ls * rs)),
            Ordering::Greater => Some((Bracket::pair(r, l), -ls * rs)),
            Ordering::Equal => None,
        }
    }

    fn leaves_behind(&self, a: usize, parent: usize) -> usize {
        if self.label[a].is_some() {
            return 1;
        }
        self.adj[a].iter().filter(|&&n| n != parent).map(|&n| self.leaves_behind(n, a)).sum()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, nb) in self.adj.iter().enumerate() {
            for &b in nb {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Canonical representative and the sign relating it to `l`, or `None` when
/// the class vanishes (two identical branches at some vertex, or a
/// representative equivalent to its own negative).
pub fn canonicalize(l: &FormalLinking) -> Option<(CanonicalLinking, i8)> {
    let tree = Tree::from_linking(l);
    for (v, nb) in tree.adj.iter().enumerate() {
        if tree.label[v].is_some() {
            continue;
        }
        let branches: Vec<Bracket> = nb.iter().map(|&n| tree.rooted(n, v).map(|b| b.0)).collect::<Option<_>>()?;
        if branches[0] == branches[1] || branches[1] == branches[2] || branches[0] == branches[2] {
            return None;
        }
    }

    let total = l.weight();
    let mut best: Option<(usize, CanonicalLinking, i8)> = None;
    let mut vanishes = false;
    for (a, b) in tree.edges() {
        let wa = tree.leaves_behind(a, b);
        let imbalance = wa.abs_diff(total - wa);
        let (ua, sa) = tree.rooted(a, b)?;
        let (ub, sb) = tree.rooted(b, a)?;
        let sign = sa * sb;
        let (u, v) = if (wa, &ua) <= (total - wa, &ub) { (ua, ub) } else { (ub, ua) };
        let form = CanonicalLinking { u, v };
        let better = match &best {
            None => true,
            Some((bi, bf, bs)) => {
                if (imbalance, &form) == (*bi, bf) {
                    vanishes |= sign != *bs;
                    false
                } else {
                    imbalance < *bi || (imbalance == *bi && form > *bf)
                }
            }
        };
        if better {
            vanishes = false;
            best = Some((imbalance, form, sign));
        }
    }
    if vanishes {
        return None;
    }
    best.map(|(_, form, sign)| (form, sign * l.sign))
}

/// All binary bracketings `w` of `letters`, each as `lk(w, last)`.
pub fn parenthesizations(letters: &[u32], last: u32) -> Vec<FormalLinking> {
    fn all(letters: &[u32]) -> Vec<Bracket> {
        if letters.len() == 1 {
            return vec![Bracket::Leaf(letters[0])];
        }
        let mut out = Vec::new();
        for k in 1..letters.len() {
            let left = all(&letters[..k]);
            let right = all(&letters[k..]);
            for a in &left {
                for b in &right {
                    out.push(Bracket::pair(a.clone(), b.clone()));
                }
            }
        }
        out
    }
    if letters.is_empty() {
        return Vec::new();
    }
    all(letters).into_iter().map(|w| FormalLinking::new(w, Bracket::Leaf(last))).collect()
}

/// Integer combination of canonical linkings with nonzero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LinkingExpr(BTreeMap<CanonicalLinking, i64>);

impl LinkingExpr {
    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalLinking, i64)> {
        self.0.iter().map(|(k, v)| (k, *v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, l: &CanonicalLinking) -> i64 {
        self.0.get(l).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, l: CanonicalLinking, c: i64) {
        let v = self.coefficient(&l) + c;
        if v == 0 {
            self.0.remove(&l);
        } else {
            self.0.insert(l, v);
        }
    }

    /// Adds `c · l` after canonicalizing; vanishing classes contribute nothing.
    pub fn add_linking(&mut self, l: &FormalLinking, c: i64) {
        if let Some((form, sign)) = canonicalize(l) {
            self.add_term(form, c * sign as i64);
        }
    }
}

impl fmt::Display for LinkingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (l, c)) in self.0.iter().enumerate() {
            let (sep, mag) = match (i, *c < 0) {
                (0, true) => ("-", -c),
                (0, false) => ("", *c),
                (_, true) => (" - ", -c),
                (_, false) => (" + ", *c),
            };
            f.write_str(sep)?;
            if mag != 1 {
                write!(f, "{mag}·")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// `(-1)^q Σ_w lk(w, x_{i_q})` over all bracketings `w` of `x_{i_1} ⋯ x_{i_{q-1}}`.
pub fn massey_sum(index: &MuIndex) -> Result<LinkingExpr> {
    let entries = index.entries();
    let q = entries.len();
    if q > MAX_WEIGHT {
        return Err(Error::BracketWeight { weight: q, min: 2, max: MAX_WEIGHT });
    }
    if let Some(&c) = entries.iter().find(|&&c| component_letter(c).is_none()) {
        return Err(Error::ComponentOutOfRange { index: index.to_string(), component: c, m: LETTERS.len() });
    }
    let (&last, letters) = entries.split_last().expect("weight at least 2");
    if entries[0] == last {
        return Err(Error::RepeatedEndpoint(index.to_string()));
    }
    let sign = if q.is_multiple_of(2) { 1 } else { -1 };
    let mut expr = LinkingExpr::default();
    for l in parenthesizations(letters, last) {
        expr.add_linking(&l, sign);
    }
    Ok(expr)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    #[serde(with = "crate::json::bigint")]
    pub value: BigInt,
    /// Terms with no supplied value, counted as 0.
    pub defaulted: Vec<CanonicalLinking>,
    /// Caller's assertion that a surface system of the right weight exists,
    /// which is what licenses reading the value as `μ̄`.
    pub surface_system_asserted: bool,
}

/// Parses a value map keyed by formal linkings and re-keys it by canonical
/// class, folding in each key's sign.
pub fn canonical_values(values: &BTreeMap<String, i64>) -> Result<BTreeMap<CanonicalLinking, i64>> {
    let mut out: BTreeMap<CanonicalLinking, i64> = BTreeMap::new();
    for (key, &v) in values {
        let l: FormalLinking = key.parse()?;
        let Some((form, sign)) = canonicalize(&l) else {
            if v != 0 {
                return Err(Error::Incompatible(format!("{key} is zero in the calculus but was given value {v}")));
            }
            continue;
        };
        let val = v * sign as i64;
        if let Some(&prev) = out.get(&form) {
            if prev != val {
                return Err(Error::Incompatible(format!("conflicting values for {form}")));
            }
        }
        out.insert(form, val);
    }
    Ok(out)
}

pub fn evaluate(expr: &LinkingExpr, values: &BTreeMap<CanonicalLinking, i64>, surface_system_asserted: bool) -> Evaluation {
    let mut value = BigInt::from(0);
    let mut defaulted = Vec::new();
    for (l, c) in expr.terms() {
        match values.get(l) {
            Some(&v) => value += BigInt::from(c) * BigInt::from(v),
            None => defaulted.push(l.clone()),
        }
    }
    Evaluation { value, defaulted, surface_system_asserted }
}
