//! The finite Koszul model `Λ[u_1..u_m] ⊗ k[K] / (v_i^2 = u_i v_i = 0)`
//! of the cochains of `Z_K`, with `du_i = v_i`, `dv_i = 0`,
//! `deg u_i = 1`, `deg v_i = 2`.
//!
//! Its additive basis is `{u_J v_I : I ∈ K, I ∩ J = ∅}`, which is also in
//! bijection with the cells of `Z_K`; see [`evaluate`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cellular::{render_terms, split_terms, Cell, CellularChain};
use crate::error::{Error, Result};
use crate::linalg::{rational, IncrementalBasis, Matrix, Rational};
use crate::simplicial::{hochster_cohomology, SimplicialComplex, VertexSet};

/// `u_J v_I`, variables in ascending order with any sign carried by the
/// coefficient of the enclosing element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KoszulMonomial {
    pub u: VertexSet,
    pub v: VertexSet,
}

impl KoszulMonomial {
    pub fn new(u: VertexSet, v: VertexSet) -> Self {
        KoszulMonomial { u, v }
    }

    pub fn degree(&self) -> usize {
        self.u.len() + 2 * self.v.len()
    }

    /// The cell `(I, J)` dual to `u_J v_I`.
    pub fn dual_cell(&self) -> Cell {
        Cell { disc: self.v, circle: self.u }
    }
}

impl fmt::Display for KoszulMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.u.iter().map(|i| format!("u{}", i)).collect();
        parts.extend(self.v.iter().map(|i| format!("v{}", i)));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct KoszulElement(BTreeMap<KoszulMonomial, i64>);

impl KoszulElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_monomial(mono: KoszulMonomial) -> Self {
        let mut e = Self::zero();
        e.add_term(mono, 1);
        e
    }

    pub fn add_term(&mut self, mono: KoszulMonomial, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.0.entry(mono).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.0.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KoszulMonomial, i64)> {
        self.0.iter().map(|(m, &n)| (m, n))
    }

    pub fn coefficient(&self, mono: &KoszulMonomial) -> i64 {
        self.0.get(mono).copied().unwrap_or(0)
    }

    /// Degree of a homogeneous nonzero element.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.0.keys().map(KoszulMonomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn to_records(&self) -> Vec<KoszulRecord> {
        self.terms()
            .map(|(m, n)| KoszulRecord { u: m.u.to_vec(), v: m.v.to_vec(), coeff: n })
            .collect()
    }
}

/// JSON form of one term: `{"u": [..], "v": [..], "coeff": n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulRecord {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub coeff: i64,
}

impl fmt::Display for KoszulElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_terms(self.terms().map(|(m, n)| (n, m.to_string()))))
    }
}

impl AddAssign<&KoszulElement> for KoszulElement {
    fn add_assign(&mut self, rhs: &KoszulElement) {
        for (m, n) in rhs.terms() {
            self.add_term(*m, n);
        }
    }
}

impl Add for &KoszulElement {
    type Output = KoszulElement;
    fn add(self, rhs: &KoszulElement) -> KoszulElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &KoszulElement {
    type Output = KoszulElement;
    fn sub(self, rhs: &KoszulElement) -> KoszulElement {
        self + &(-rhs)
    }
}

impl Neg for &KoszulElement {
    type Output = KoszulElement;
    fn neg(self) -> KoszulElement {
        self * -1
    }
}

impl Mul<i64> for &KoszulElement {
    type Output = KoszulElement;
    fn mul(self, k: i64) -> KoszulElement {
        let mut out = KoszulElement::zero();
        for (m, n) in self.terms() {
            out.add_term(*m, n * k);
        }
        out
    }
}

/// A cohomology class of `Z_K` given by a cocycle representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub representative: KoszulElement,
    pub degree: usize,
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.representative)
    }
}

/// Coefficients of the products `left[a] · right[b]` against the top class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingTable {
    pub left: Vec<CohomologyClass>,
    pub right: Vec<CohomologyClass>,
    pub top: CohomologyClass,
    pub entries: Vec<Vec<Rational>>,
}

/// Sign of sorting the concatenation of two disjoint ascending sequences.
fn shuffle_sign(first: VertexSet, second: VertexSet) -> i64 {
    let inversions: usize = second.iter().map(|j| first.len() - first.count_below(j)).sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The Koszul model of a fixed complex.
#[derive(Clone, Debug)]
pub struct KoszulAlgebra {
    complex: SimplicialComplex,
}

impl KoszulAlgebra {
    pub fn new(complex: &SimplicialComplex) -> Self {
        KoszulAlgebra { complex: complex.clone() }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Whether `u_J v_I` is a basis monomial of the model.
    pub fn contains(&self, mono: &KoszulMonomial) -> bool {
        mono.u.is_disjoint(mono.v)
            && mono.u.union(mono.v).is_subset(VertexSet::full(self.complex.m()))
            && self.complex.contains(mono.v)
    }

    /// Basis monomials of degree `p`, in monomial order.
    pub fn monomials(&self, p: usize) -> Vec<KoszulMonomial> {
        let full = VertexSet::full(self.complex.m());
        let mut out = Vec::new();
        for face in self.complex.faces() {
            let Some(rest) = p.checked_sub(2 * face.len()) else { continue };
            for u in full.difference(face).subsets().filter(|s| s.len() == rest) {
                out.push(KoszulMonomial { u, v: face });
            }
        }
        out.sort();
        out
    }

    /// Parses text like `"u1 u2 u3 v4 v5"` or `"- u2 u3 u5 v6 + u2 u3 u6 v5"`.
    /// Variables may come in any order; monomials outside the model vanish.
    pub fn parse(&self, text: &str) -> Result<KoszulElement> {
        let m = self.complex.m();
        let mut out = KoszulElement::zero();
        'terms: for (coeff, tokens) in split_terms(text)? {
            let mut u_seq: Vec<usize> = Vec::new();
            let mut v = VertexSet::EMPTY;
            for tok in &tokens {
                let tok = tok.replace('_', "");
                let (kind, rest) = tok.split_at(1.min(tok.len()));
                let i: usize = rest.parse().map_err(|_| Error::Parse(format!("bad Koszul variable {:?}", tok)))?;
                if i == 0 || i > m {
                    return Err(Error::VertexOutOfRange { vertex: i, m });
                }
                match kind {
                    "u" => {
                        if u_seq.contains(&i) {
                            continue 'terms;
                        }
                        u_seq.push(i);
                    }
                    "v" => {
                        if v.contains(i) {
                            continue 'terms;
                        }
                        v.insert(i);
                    }
                    _ => return Err(Error::Parse(format!("bad Koszul variable {:?}", tok))),
                }
            }
            let inversions: usize = (0..u_seq.len())
                .map(|a| (a + 1..u_seq.len()).filter(|&b| u_seq[b] < u_seq[a]).count())
                .sum();
            let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
            let u = VertexSet::from_vertices(m, u_seq)?;
            let mono = KoszulMonomial { u, v };
            if self.contains(&mono) {
                out.add_term(mono, sign * coeff);
            }
        }
        Ok(out)
    }

    /// `d(u_J v_I) = Σ_{j ∈ J} (-1)^{#{j' ∈ J : j' < j}} u_{J \ j} v_{I ∪ j}`,
    /// dropping terms with `I ∪ j ∉ K`.
    pub fn differential(&self, element: &KoszulElement) -> KoszulElement {
        let mut out = KoszulElement::zero();
        for (mono, n) in element.terms() {
            for j in mono.u.iter() {
                let mut v = mono.v;
                v.insert(j);
                if !self.complex.contains(v) {
                    continue;
                }
                let mut u = mono.u;
                u.remove(j);
                let sign = if mono.u.count_below(j) % 2 == 0 { 1 } else { -1 };
                out.add_term(KoszulMonomial { u, v }, sign * n);
            }
        }
        out
    }

    pub fn multiply_monomials(&self, a: &KoszulMonomial, b: &KoszulMonomial) -> Option<(i64, KoszulMonomial)> {
        if !a.u.is_disjoint(b.u) || !a.v.is_disjoint(b.v) {
            return None;
        }
        let u = a.u.union(b.u);
        let v = a.v.union(b.v);
        if !u.is_disjoint(v) || !self.complex.contains(v) {
            return None;
        }
        Some((shuffle_sign(a.u, b.u), KoszulMonomial { u, v }))
    }

    pub fn multiply(&self, a: &KoszulElement, b: &KoszulElement) -> KoszulElement {
        let mut out = KoszulElement::zero();
        for (ma, na) in a.terms() {
            for (mb, nb) in b.terms() {
                if let Some((sign, mono)) = self.multiply_monomials(ma, mb) {
                    out.add_term(mono, sign * na * nb);
                }
            }
        }
        out
    }

    pub fn is_cocycle(&self, element: &KoszulElement) -> bool {
        self.differential(element).is_zero()
    }

    fn vector(&self, index: &BTreeMap<KoszulMonomial, usize>, e: &KoszulElement) -> Result<Vec<Rational>> {
        let mut v = vec![Rational::zero(); index.len()];
        for (mono, n) in e.terms() {
            let &i = index
                .get(mono)
                .ok_or_else(|| Error::InvalidArgument(format!("monomial {} not in the model", mono)))?;
            v[i] = rational(n);
        }
        Ok(v)
    }

    fn element(&self, basis: &[KoszulMonomial], v: &[Rational]) -> KoszulElement {
        let ints = crate::linalg::primitive_integer_vector(v);
        let mut e = KoszulElement::zero();
        for (mono, x) in basis.iter().zip(ints) {
            e.add_term(*mono, i64::try_from(x).expect("cocycle coefficient fits in i64"));
        }
        e
    }

    /// Coboundary vectors `d(x)`, `x` of degree `p - 1`, in degree-`p` coordinates.
    fn coboundaries(&self, p: usize, index: &BTreeMap<KoszulMonomial, usize>) -> Vec<Vec<Rational>> {
        if p == 0 {
            return Vec::new();
        }
        self.monomials(p - 1)
            .into_iter()
            .map(|mono| {
                let d = self.differential(&KoszulElement::from_monomial(mono));
                self.vector(index, &d).expect("differential stays in the model")
            })
            .collect()
    }

    /// A basis of `H^p`, preferring single-monomial cocycles in monomial order.
    pub fn cohomology_basis(&self, p: usize) -> Vec<CohomologyClass> {
        let basis = self.monomials(p);
        let index: BTreeMap<KoszulMonomial, usize> = basis.iter().enumerate().map(|(n, m)| (*m, n)).collect();
        let mut span = IncrementalBasis::new();
        for b in self.coboundaries(p, &index) {
            span.insert(&b);
        }
        let mut classes = Vec::new();
        let mut take = |v: Vec<Rational>, span: &mut IncrementalBasis| {
            if span.insert(&v) {
                classes.push(CohomologyClass { representative: self.element(&basis, &v), degree: p });
            }
        };
        for (n, mono) in basis.iter().enumerate() {
            if self.is_cocycle(&KoszulElement::from_monomial(*mono)) {
                let mut v = vec![Rational::zero(); basis.len()];
                v[n] = rational(1);
                take(v, &mut span);
            }
        }
        let targets = self.monomials(p + 1);
        let target_index: BTreeMap<KoszulMonomial, usize> =
            targets.iter().enumerate().map(|(n, m)| (*m, n)).collect();
        let mut dmat = Matrix::zeros(targets.len(), basis.len());
        for (c, mono) in basis.iter().enumerate() {
            for (t, n) in self.differential(&KoszulElement::from_monomial(*mono)).terms() {
                dmat.set_int(target_index[t], c, n);
            }
        }
        for z in dmat.kernel() {
            take(z, &mut span);
        }
        classes
    }

    fn check_cocycle(&self, e: &KoszulElement) -> Result<usize> {
        if !self.is_cocycle(e) {
            return Err(Error::NotCocycle);
        }
        e.degree().ok_or(Error::Inhomogeneous)
    }

    /// Rational coordinates of `[element]` in the span of the classes of
    /// `basis`; fails if the class lies outside that span.
    pub fn class_coordinates(&self, element: &KoszulElement, basis: &[KoszulElement]) -> Result<Vec<Rational>> {
        if !self.is_cocycle(element) {
            return Err(Error::NotCocycle);
        }
        let mut p = element.degree();
        for b in basis {
            let d = self.check_cocycle(b)?;
            if p.is_some_and(|p| p != d) {
                return Err(Error::DegreeMismatch(format!("basis class of degree {} against degree {:?}", d, p)));
            }
            p = Some(d);
        }
        let Some(p) = p else {
            return Ok(Vec::new());
        };
        if element.is_zero() {
            return Ok(vec![Rational::zero(); basis.len()]);
        }
        let monos = self.monomials(p);
        let index: BTreeMap<KoszulMonomial, usize> = monos.iter().enumerate().map(|(n, m)| (*m, n)).collect();
        let mut columns = basis.iter().map(|b| self.vector(&index, b)).collect::<Result<Vec<_>>>()?;
        columns.extend(self.coboundaries(p, &index));
        let target = self.vector(&index, element)?;
        let mat = Matrix::from_columns(monos.len(), &columns);
        let x = mat.solve(&target).ok_or(Error::OutsideSpan)?;
        Ok(x[..basis.len()].to_vec())
    }

    /// Whether two cocycles of equal degree differ by a coboundary.
    pub fn same_class(&self, a: &KoszulElement, b: &KoszulElement) -> Result<bool> {
        if !self.is_cocycle(a) || !self.is_cocycle(b) {
            return Err(Error::NotCocycle);
        }
        if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
            if da != db {
                return Err(Error::DegreeMismatch(format!("{} vs {}", da, db)));
            }
        }
        let diff = a - b;
        match self.class_coordinates(&diff, &[]) {
            Ok(_) => Ok(true),
            Err(Error::OutsideSpan) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Highest degree with nonzero cohomology.
    pub fn top_degree(&self) -> usize {
        hochster_cohomology(&self.complex).max_degree().unwrap_or(0) as usize
    }

    /// `M[a][b]` with `left[a] · right[b] = M[a][b] · top` in cohomology.
    pub fn pairing_matrix(
        &self,
        left: &[CohomologyClass],
        right: &[CohomologyClass],
        top: &CohomologyClass,
    ) -> Result<Vec<Vec<Rational>>> {
        let top_rep = std::slice::from_ref(&top.representative);
        left.iter()
            .map(|a| {
                right
                    .iter()
                    .map(|b| {
                        if a.degree + b.degree != top.degree {
                            return Err(Error::DegreeMismatch(format!(
                                "{} + {} != {}",
                                a.degree, b.degree, top.degree
                            )));
                        }
                        let product = self.multiply(&a.representative, &b.representative);
                        Ok(self.class_coordinates(&product, top_rep)?.remove(0))
                    })
                    .collect()
            })
            .collect()
    }

    /// Pairing of the computed bases of `H^p` and `H^q` against the
    /// generator of the one-dimensional top cohomology.
    pub fn product_pairing_table(&self, p: usize, q: usize) -> Result<PairingTable> {
        let top = self.top_degree();
        if p + q != top {
            return Err(Error::DegreeMismatch(format!("p + q = {} but the top degree is {}", p + q, top)));
        }
        let mut tops = self.cohomology_basis(top);
        if tops.len() != 1 {
            return Err(Error::InvalidArgument(format!(
                "top cohomology has rank {}, a pairing needs rank 1",
                tops.len()
            )));
        }
        let top = tops.remove(0);
        let left = self.cohomology_basis(p);
        let right = self.cohomology_basis(q);
        let entries = self.pairing_matrix(&left, &right, &top)?;
        Ok(PairingTable { left, right, top, entries })
    }
}

/// Value of the cochain `u_J v_I` on a cellular chain: the coefficient of
/// the cell `(I, J)`.
pub fn evaluate(cochain: &KoszulMonomial, chain: &CellularChain) -> i64 {
    chain.coefficient(&cochain.dual_cell())
}

/// Bilinear extension of [`evaluate`].
pub fn evaluate_element(cochain: &KoszulElement, chain: &CellularChain) -> i64 {
    cochain.terms().map(|(m, n)| n * evaluate(m, chain)).sum()
}
