//! The quotient tensor algebra
//! `T<μ_1..μ_m> / (μ_i^2 = 0, μ_i μ_j + μ_j μ_i = 0 for {i, j} ∈ K)`
//! of a flag complex `K`, with `deg μ_i = 1`.
//!
//! Words are normalised to the lexicographically smallest word of their
//! commutation class (letters `a`, `b` may swap iff `{a, b}` is an edge),
//! with a sign of `-1` per transposition. A word whose class contains a
//! square `μ_i μ_i` is zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cellular::{render_terms, split_terms};
use crate::error::{Error, Result};
use crate::simplicial::{SimplicialComplex, VertexSet};

/// A sequence of generator indices `μ_{w_1} ... μ_{w_n}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("m{}", i)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Integer combination of normal-form words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TensorElement(BTreeMap<Word, i64>);

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.0.iter().map(|(w, &n)| (w, n))
    }

    pub fn coefficient(&self, word: &Word) -> i64 {
        self.0.get(word).copied().unwrap_or(0)
    }

    /// Adds `coeff · word`; the caller guarantees `word` is in normal form.
    fn add_normal(&mut self, word: Word, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.0.entry(word).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.0.retain(|_, n| *n != 0);
        }
    }

    /// Degree of a homogeneous element. The zero element has no degree.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.0.keys().map(Word::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn scale(&self, k: i64) -> TensorElement {
        self * k
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_terms(self.terms().map(|(w, n)| (n, w.to_string()))))
    }
}

impl AddAssign<&TensorElement> for TensorElement {
    fn add_assign(&mut self, rhs: &TensorElement) {
        for (w, n) in rhs.terms() {
            self.add_normal(w.clone(), n);
        }
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        self + &(-rhs)
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        self * -1
    }
}

impl Mul<i64> for &TensorElement {
    type Output = TensorElement;
    fn mul(self, k: i64) -> TensorElement {
        if k == 0 {
            return TensorElement::zero();
        }
        TensorElement(self.0.iter().map(|(w, &n)| (w.clone(), n * k)).collect())
    }
}

/// Result of normalising a single word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalForm {
    Zero,
    Word { sign: i64, word: Word },
}

/// A bracket expression over the generators: `3`, `[3,1]`, `[[3,1],[4,[5,2]]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CommutatorExpr {
    Leaf(usize),
    Bracket(Box<CommutatorExpr>, Box<CommutatorExpr>),
}

impl CommutatorExpr {
    pub fn leaf(i: usize) -> Self {
        CommutatorExpr::Leaf(i)
    }

    pub fn bracket(a: CommutatorExpr, b: CommutatorExpr) -> Self {
        CommutatorExpr::Bracket(Box::new(a), Box::new(b))
    }

    /// `[μ_{l_1}, [μ_{l_2}, ..., [μ_{l_{k-1}}, μ_{l_k}]...]]`.
    pub fn right_nested(letters: &[usize]) -> Result<Self> {
        let (&last, rest) = letters
            .split_last()
            .ok_or_else(|| Error::InvalidArgument("empty commutator".into()))?;
        Ok(rest.iter().rev().fold(CommutatorExpr::Leaf(last), |acc, &l| {
            CommutatorExpr::bracket(CommutatorExpr::Leaf(l), acc)
        }))
    }

    /// Number of leaves.
    pub fn degree(&self) -> usize {
        match self {
            CommutatorExpr::Leaf(_) => 1,
            CommutatorExpr::Bracket(a, b) => a.degree() + b.degree(),
        }
    }

    /// Leaves from left to right.
    pub fn letters(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut Vec<usize>) {
        match self {
            CommutatorExpr::Leaf(i) => out.push(*i),
            CommutatorExpr::Bracket(a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
        }
    }

    /// Letters of a right-nested bracket of degree at least two.
    pub fn right_nested_letters(&self) -> Option<Vec<usize>> {
        let mut letters = Vec::new();
        let mut node = self;
        loop {
            match node {
                CommutatorExpr::Bracket(a, b) => {
                    let CommutatorExpr::Leaf(i) = a.as_ref() else { return None };
                    letters.push(*i);
                    node = b;
                }
                CommutatorExpr::Leaf(i) => {
                    letters.push(*i);
                    break;
                }
            }
        }
        (letters.len() >= 2).then_some(letters)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let expr = parse_expr(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::Parse(format!("trailing input in commutator {:?}", text)));
        }
        Ok(expr)
    }
}

fn parse_expr(chars: &[char], pos: &mut usize) -> Result<CommutatorExpr> {
    match chars.get(*pos) {
        Some('[') => {
            *pos += 1;
            let a = parse_expr(chars, pos)?;
            if chars.get(*pos) != Some(&',') {
                return Err(Error::Parse(format!("expected ',' at position {}", pos)));
            }
            *pos += 1;
            let b = parse_expr(chars, pos)?;
            if chars.get(*pos) != Some(&']') {
                return Err(Error::Parse(format!("expected ']' at position {}", pos)));
            }
            *pos += 1;
            Ok(CommutatorExpr::bracket(a, b))
        }
        Some(_) => {
            // accept "3", "m3" and "μ3"
            if matches!(chars[*pos], 'm' | 'μ') {
                *pos += 1;
            }
            let start = *pos;
            while chars.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                *pos += 1;
            }
            let digits: String = chars[start..*pos].iter().collect();
            match digits.parse::<usize>() {
                Ok(i) if i > 0 => Ok(CommutatorExpr::Leaf(i)),
                _ => Err(Error::Parse(format!("expected a generator index at position {}", start))),
            }
        }
        None => Err(Error::Parse("unexpected end of commutator".into())),
    }
}

impl fmt::Display for CommutatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommutatorExpr::Leaf(i) => write!(f, "{}", i),
            CommutatorExpr::Bracket(a, b) => write!(f, "[{},{}]", a, b),
        }
    }
}

impl FromStr for CommutatorExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CommutatorExpr::parse(s)
    }
}

impl Serialize for CommutatorExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CommutatorExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        CommutatorExpr::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// The loop-homology algebra of `(CP^∞)^K` for a flag complex `K`.
#[derive(Clone, Debug)]
pub struct LoopAlgebra {
    complex: SimplicialComplex,
    adjacency: Vec<VertexSet>,
}

impl LoopAlgebra {
    pub fn new(complex: &SimplicialComplex) -> Result<Self> {
        if !complex.is_flag() {
            return Err(Error::NotFlag);
        }
        Ok(LoopAlgebra { complex: complex.clone(), adjacency: complex.adjacency() })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn m(&self) -> usize {
        self.complex.m()
    }

    /// Whether `μ_a μ_b = -μ_b μ_a`.
    pub fn anticommute(&self, a: usize, b: usize) -> bool {
        self.adjacency[a - 1].contains(b)
    }

    fn check_letters(&self, letters: &[usize]) -> Result<()> {
        let m = self.m();
        match letters.iter().find(|&&l| l == 0 || l > m) {
            Some(&l) => Err(Error::VertexOutOfRange { vertex: l, m }),
            None => Ok(()),
        }
    }

    pub fn normal_form(&self, word: &Word) -> Result<NormalForm> {
        self.check_letters(word.letters())?;
        Ok(self.normal_form_unchecked(word.letters()))
    }

    fn normal_form_unchecked(&self, letters: &[usize]) -> NormalForm {
        // two consecutive occurrences of a letter with only anticommuting
        // letters between them can be brought together
        for (q, &a) in letters.iter().enumerate() {
            if let Some(p) = letters[..q].iter().rposition(|&b| b == a) {
                if letters[p + 1..q].iter().all(|&b| self.anticommute(a, b)) {
                    return NormalForm::Zero;
                }
            }
        }
        let mut rest = letters.to_vec();
        let mut out = Vec::with_capacity(letters.len());
        let mut swaps = 0usize;
        while !rest.is_empty() {
            // smallest letter that can be moved to the front
            let mut best: Option<usize> = None;
            for r in 0..rest.len() {
                let a = rest[r];
                if best.is_some_and(|b| rest[b] <= a) {
                    continue;
                }
                if rest[..r].iter().all(|&b| self.anticommute(a, b)) {
                    best = Some(r);
                }
            }
            let r = best.expect("the first letter is always movable");
            swaps += r;
            out.push(rest.remove(r));
        }
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        NormalForm::Word { sign, word: Word(out) }
    }

    /// The element `±w` (or zero) represented by an arbitrary word.
    pub fn word(&self, letters: &[usize]) -> Result<TensorElement> {
        self.check_letters(letters)?;
        Ok(self.word_unchecked(letters, 1))
    }

    fn word_unchecked(&self, letters: &[usize], coeff: i64) -> TensorElement {
        let mut out = TensorElement::zero();
        if let NormalForm::Word { sign, word } = self.normal_form_unchecked(letters) {
            out.add_normal(word, sign * coeff);
        }
        out
    }

    pub fn generator(&self, i: usize) -> Result<TensorElement> {
        self.word(&[i])
    }

    /// Normalises a combination of arbitrary words.
    pub fn from_terms<'a, I>(&self, terms: I) -> Result<TensorElement>
    where
        I: IntoIterator<Item = (i64, &'a [usize])>,
    {
        let mut out = TensorElement::zero();
        for (coeff, letters) in terms {
            self.check_letters(letters)?;
            out += &self.word_unchecked(letters, coeff);
        }
        Ok(out)
    }

    /// Parses `"- m1 m3 m2 m5 m4 + m1 m3 m4 m2 m5"`; letters may also be
    /// written `μ3`, `mu3` or bare indices.
    pub fn parse(&self, text: &str) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for (coeff, tokens) in split_terms(text)? {
            let letters = tokens
                .iter()
                .map(|t| {
                    let digits = t.trim_start_matches("mu").trim_start_matches(['m', 'μ', '_']);
                    digits.parse::<usize>().map_err(|_| Error::Parse(format!("bad generator {:?}", t)))
                })
                .collect::<Result<Vec<_>>>()?;
            self.check_letters(&letters)?;
            out += &self.word_unchecked(&letters, coeff);
        }
        Ok(out)
    }

    pub fn multiply(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (wa, na) in a.terms() {
            for (wb, nb) in b.terms() {
                let joined = wa.concat(wb);
                out += &self.word_unchecked(joined.letters(), na * nb);
            }
        }
        out
    }

    /// Graded commutator `[a, b] = ab - (-1)^{deg a · deg b} ba`.
    pub fn commutator(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        if a.is_zero() || b.is_zero() {
            return Ok(TensorElement::zero());
        }
        let (da, db) = match (a.degree(), b.degree()) {
            (Some(da), Some(db)) => (da, db),
            _ => return Err(Error::Inhomogeneous),
        };
        let ab = self.multiply(a, b);
        let ba = self.multiply(b, a);
        let sign = if (da * db) % 2 == 0 { 1 } else { -1 };
        Ok(&ab - &(&ba * sign))
    }

    pub fn expand(&self, expr: &CommutatorExpr) -> Result<TensorElement> {
        match expr {
            CommutatorExpr::Leaf(i) => self.generator(*i),
            CommutatorExpr::Bracket(a, b) => {
                let ea = self.expand(a)?;
                let eb = self.expand(b)?;
                self.commutator(&ea, &eb)
            }
        }
    }
}
