//! The cellular chain complex of `Z_K ⊂ D^m`.
//!
//! Each disc factor splits into a point, an open 1-cell `S` on the boundary
//! circle and the open 2-cell `D`. A cell of `Z_K` is a pair `(I, J)` of
//! disjoint vertex sets with `I ∈ K`: `D` in the coordinates of `I`, `S` in
//! those of `J`, the basepoint elsewhere. Cells are oriented by writing the
//! factors in ascending index order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{primitive_integer_vector, rational, IncrementalBasis, Matrix, Rational};
use crate::simplicial::{BettiVector, SimplicialComplex, VertexSet};
use crate::smith::smith_normal_form;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub disc: VertexSet,
    pub circle: VertexSet,
}

/// A single factor of a product cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    S(usize),
    D(usize),
}

impl Factor {
    fn vertex(self) -> usize {
        match self {
            Factor::S(v) | Factor::D(v) => v,
        }
    }
}

impl Cell {
    pub fn new(disc: VertexSet, circle: VertexSet) -> Result<Self> {
        if !disc.is_disjoint(circle) {
            return Err(Error::InvalidArgument(format!("disc set {} meets circle set {}", disc, circle)));
        }
        Ok(Cell { disc, circle })
    }

    pub fn dim(&self) -> usize {
        2 * self.disc.len() + self.circle.len()
    }

    /// Sorts a product of factors written in arbitrary order into the
    /// ascending orientation. `S` factors have degree 1 and anticommute,
    /// `D` factors have degree 2. Returns `None` for a repeated index.
    pub fn from_factors(factors: &[Factor]) -> Option<(i64, Cell)> {
        let mut disc = VertexSet::EMPTY;
        let mut circle = VertexSet::EMPTY;
        let mut seen = VertexSet::EMPTY;
        let mut inversions = 0usize;
        for (n, f) in factors.iter().enumerate() {
            let v = f.vertex();
            if seen.contains(v) {
                return None;
            }
            seen.insert(v);
            if let Factor::S(_) = f {
                inversions += factors[..n]
                    .iter()
                    .filter(|g| matches!(g, Factor::S(w) if *w > v))
                    .count();
                circle.insert(v);
            } else {
                disc.insert(v);
            }
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, Cell { disc, circle }))
    }

    /// Factors in ascending index order.
    pub fn factors(&self) -> Vec<Factor> {
        self.disc
            .union(self.circle)
            .iter()
            .map(|v| if self.disc.contains(v) { Factor::D(v) } else { Factor::S(v) })
            .collect()
    }

    /// `∂(I, J) = Σ_{i ∈ I} (-1)^{#{j ∈ J : j < i}} (I \ i, J ∪ i)`.
    pub fn boundary(&self) -> CellularChain {
        let mut out = CellularChain::zero();
        for i in self.disc.iter() {
            let sign = if self.circle.count_below(i).is_multiple_of(2) { 1 } else { -1 };
            let mut disc = self.disc;
            disc.remove(i);
            let mut circle = self.circle;
            circle.insert(i);
            out.add_term(Cell { disc, circle }, sign);
        }
        out
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors = self.factors();
        if factors.is_empty() {
            return write!(f, "pt");
        }
        let parts: Vec<String> = factors
            .iter()
            .map(|x| match x {
                Factor::S(v) => format!("S{}", v),
                Factor::D(v) => format!("D{}", v),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A finitely supported integer combination of cells.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CellularChain(BTreeMap<Cell, i64>);

impl CellularChain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_cell(cell: Cell) -> Self {
        let mut c = Self::zero();
        c.add_term(cell, 1);
        c
    }

    pub fn add_term(&mut self, cell: Cell, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.0.entry(cell).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.0.remove(&cell);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, cell: &Cell) -> i64 {
        self.0.get(cell).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Cell, i64)> {
        self.0.iter().map(|(c, &n)| (c, n))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension of a homogeneous chain, `None` when zero or mixed.
    pub fn dim(&self) -> Option<usize> {
        let mut dims = self.0.keys().map(Cell::dim);
        let first = dims.next()?;
        dims.all(|d| d == first).then_some(first)
    }

    /// Parses text such as `"S1 D3 + D1 S3"` or `"- D2 S3 S5 + S2 S3 D5"`.
    /// Factors may appear in any order and are sorted with the graded sign.
    pub fn parse(text: &str) -> Result<Self> {
        let mut chain = CellularChain::zero();
        for (coeff, tokens) in split_terms(text)? {
            let factors = tokens
                .iter()
                .filter(|t| t.as_str() != "pt")
                .map(|t| parse_factor(t))
                .collect::<Result<Vec<_>>>()?;
            if let Some((sign, cell)) = Cell::from_factors(&factors) {
                chain.add_term(cell, sign * coeff);
            }
        }
        Ok(chain)
    }

    pub fn to_records(&self) -> Vec<ChainRecord> {
        self.terms()
            .map(|(c, n)| ChainRecord { d: c.disc.to_vec(), s: c.circle.to_vec(), coeff: n })
            .collect()
    }

    pub fn from_records(m: usize, records: &[ChainRecord]) -> Result<Self> {
        let mut chain = CellularChain::zero();
        for r in records {
            let cell = Cell::new(
                VertexSet::from_vertices(m, r.d.iter().copied())?,
                VertexSet::from_vertices(m, r.s.iter().copied())?,
            )?;
            chain.add_term(cell, r.coeff);
        }
        Ok(chain)
    }
}

/// JSON form of one chain term: `{"D": [..], "S": [..], "coeff": n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRecord {
    #[serde(rename = "D")]
    pub d: Vec<usize>,
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    pub coeff: i64,
}

fn parse_factor(token: &str) -> Result<Factor> {
    let token = token.replace('_', "");
    let (kind, rest) = token.split_at(1.min(token.len()));
    let v: usize = rest.parse().map_err(|_| Error::Parse(format!("bad cell factor {:?}", token)))?;
    if v == 0 {
        return Err(Error::Parse(format!("vertex 0 in factor {:?}", token)));
    }
    match kind {
        "S" => Ok(Factor::S(v)),
        "D" => Ok(Factor::D(v)),
        _ => Err(Error::Parse(format!("bad cell factor {:?}", token))),
    }
}

/// Splits `"- a b + 2 c"` into signed terms `[(-1, [a, b]), (2, [c])]`.
/// Shared by the chain, Koszul and tensor text formats.
pub(crate) fn split_terms(text: &str) -> Result<Vec<(i64, Vec<String>)>> {
    let spaced = text.replace('+', " + ").replace('-', " - ");
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut coeff: Option<i64> = None;
    let mut current: Vec<String> = Vec::new();
    let mut pending = false;
    let flush = |terms: &mut Vec<(i64, Vec<String>)>, sign: i64, coeff: Option<i64>, current: &mut Vec<String>| {
        terms.push((sign * coeff.unwrap_or(1), std::mem::take(current)));
    };
    for tok in spaced.split_whitespace() {
        match tok {
            "+" | "-" => {
                if pending {
                    flush(&mut terms, sign, coeff, &mut current);
                    pending = false;
                    sign = 1;
                    coeff = None;
                }
                if tok == "-" {
                    sign = -sign;
                }
            }
            _ if tok.chars().all(|c| c.is_ascii_digit()) && current.is_empty() && coeff.is_none() => {
                coeff = Some(tok.parse().map_err(|_| Error::Parse(format!("bad coefficient {:?}", tok)))?);
                pending = true;
            }
            _ => {
                current.push(tok.to_string());
                pending = true;
            }
        }
    }
    if pending {
        flush(&mut terms, sign, coeff, &mut current);
    } else if sign != 1 {
        return Err(Error::Parse("dangling sign".into()));
    }
    if terms.len() == 1 && terms[0].1 == ["0"] {
        return Ok(Vec::new());
    }
    Ok(terms)
}

pub(crate) fn render_terms<I>(terms: I) -> String
where
    I: IntoIterator<Item = (i64, String)>,
{
    let mut out = String::new();
    for (n, (coeff, body)) in terms.into_iter().enumerate() {
        let sign = if coeff < 0 { "-" } else { "+" };
        if n == 0 {
            if coeff < 0 {
                out.push_str("- ");
            }
        } else {
            out.push_str(&format!(" {} ", sign));
        }
        if coeff.abs() != 1 {
            out.push_str(&format!("{} ", coeff.abs()));
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for CellularChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_terms(self.terms().map(|(c, n)| (n, c.to_string()))))
    }
}

impl AddAssign<&CellularChain> for CellularChain {
    fn add_assign(&mut self, rhs: &CellularChain) {
        for (c, n) in rhs.terms() {
            self.add_term(*c, n);
        }
    }
}

impl Add for &CellularChain {
    type Output = CellularChain;
    fn add(self, rhs: &CellularChain) -> CellularChain {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &CellularChain {
    type Output = CellularChain;
    fn sub(self, rhs: &CellularChain) -> CellularChain {
        self + &(-rhs)
    }
}

impl Neg for &CellularChain {
    type Output = CellularChain;
    fn neg(self) -> CellularChain {
        self * -1
    }
}

impl Mul<i64> for &CellularChain {
    type Output = CellularChain;
    fn mul(self, k: i64) -> CellularChain {
        let mut out = CellularChain::zero();
        for (c, n) in self.terms() {
            out.add_term(*c, n * k);
        }
        out
    }
}

pub fn boundary(chain: &CellularChain) -> CellularChain {
    let mut out = CellularChain::zero();
    for (cell, n) in chain.terms() {
        out += &(&cell.boundary() * n);
    }
    out
}

pub fn is_cycle(chain: &CellularChain) -> bool {
    boundary(chain).is_zero()
}

/// All cells of `Z_K` in dimension `dim`, in `Cell` order.
pub fn cells_of(complex: &SimplicialComplex, dim: usize) -> Vec<Cell> {
    let full = VertexSet::full(complex.m());
    let mut cells = Vec::new();
    for face in complex.faces() {
        let Some(rest) = dim.checked_sub(2 * face.len()) else { continue };
        for circle in full.difference(face).subsets().filter(|s| s.len() == rest) {
            cells.push(Cell { disc: face, circle });
        }
    }
    cells.sort();
    cells
}

/// Largest cell dimension of `Z_K`.
pub fn top_dimension(complex: &SimplicialComplex) -> usize {
    let largest = complex.dimension() + 1;
    complex.m() + largest.max(0) as usize
}

/// Integer homology of `Z_K` with a chosen cycle basis in every degree.
#[derive(Clone, Debug)]
pub struct ZkHomology {
    pub ranks: BettiVector,
    /// Torsion coefficients by degree; empty for every paper example.
    pub torsion: BTreeMap<usize, Vec<BigInt>>,
    pub cycles: BTreeMap<usize, Vec<CellularChain>>,
}

struct Degree {
    cells: Vec<Cell>,
    index: BTreeMap<Cell, usize>,
}

impl Degree {
    fn new(complex: &SimplicialComplex, dim: usize) -> Self {
        let cells = cells_of(complex, dim);
        let index = cells.iter().enumerate().map(|(n, c)| (*c, n)).collect();
        Degree { cells, index }
    }

    fn vector(&self, chain: &CellularChain) -> Result<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.cells.len()];
        for (cell, n) in chain.terms() {
            let &i = self.index.get(cell).ok_or_else(|| {
                Error::InvalidArgument(format!("{} is not a cell of Z_K in dimension {}", cell, self.cells.first().map_or(0, Cell::dim)))
            })?;
            v[i] = rational(n);
        }
        Ok(v)
    }

    fn chain(&self, v: &[BigInt]) -> CellularChain {
        let mut chain = CellularChain::zero();
        for (cell, x) in self.cells.iter().zip(v) {
            chain.add_term(*cell, x.to_i64().expect("cycle coefficient fits in i64"));
        }
        chain
    }
}

/// Integer matrix of `∂ : C_dim -> C_{dim-1}`; rows index `lower`, columns `upper`.
fn boundary_matrix(upper: &Degree, lower: &Degree) -> Vec<Vec<BigInt>> {
    let mut mat = vec![vec![BigInt::zero(); upper.cells.len()]; lower.cells.len()];
    for (c, cell) in upper.cells.iter().enumerate() {
        for (face, n) in cell.boundary().terms() {
            mat[lower.index[face]][c] = BigInt::from(n);
        }
    }
    mat
}

fn to_rational(mat: &[Vec<BigInt>], cols: usize) -> Matrix {
    if mat.is_empty() {
        return Matrix::zeros(0, cols);
    }
    Matrix::from_rows(mat.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect())
}

/// Homology of the cellular chain complex of `Z_K`.
///
/// Ranks and torsion come from Smith normal forms of the boundary matrices.
/// The cycle basis is the preset one for the pentagon and hexagon (see
/// [`crate::presets::reference_cycle_basis`]) and otherwise a deterministic
/// echelon basis of the cycles modulo boundaries.
pub fn zk_homology(complex: &SimplicialComplex) -> ZkHomology {
    homology(complex, crate::presets::reference_cycle_basis(complex))
}

/// Same as [`zk_homology`] but always with the echelon cycle basis.
pub fn zk_homology_echelon(complex: &SimplicialComplex) -> ZkHomology {
    homology(complex, None)
}

fn homology(complex: &SimplicialComplex, preset: Option<BTreeMap<usize, Vec<CellularChain>>>) -> ZkHomology {
    let top = top_dimension(complex);
    let degrees: Vec<Degree> = (0..=top + 1).map(|d| Degree::new(complex, d)).collect();
    let mut ranks = BettiVector::new();
    let mut torsion = BTreeMap::new();
    let mut cycles = BTreeMap::new();
    for d in 0..=top {
        let here = &degrees[d];
        let out = if d == 0 { Vec::new() } else { boundary_matrix(here, &degrees[d - 1]) };
        let inc = boundary_matrix(&degrees[d + 1], here);
        let snf_out = smith_normal_form(&out);
        let snf_in = smith_normal_form(&inc);
        let rank = here.cells.len() - snf_out.rank() - snf_in.rank();
        ranks.add(d as i64, rank);
        let tors = snf_in.torsion();
        if !tors.is_empty() {
            torsion.insert(d, tors);
        }
        if rank == 0 {
            continue;
        }
        if let Some(basis) = preset.as_ref().and_then(|p| p.get(&d)) {
            cycles.insert(d, basis.clone());
            continue;
        }
        let mut span = IncrementalBasis::new();
        let inc_q = to_rational(&inc, degrees[d + 1].cells.len());
        for c in 0..inc_q.cols() {
            let col: Vec<Rational> = (0..inc_q.rows()).map(|r| inc_q.get(r, c).clone()).collect();
            span.insert(&col);
        }
        let kernel = if d == 0 {
            vec![vec![rational(1)]]
        } else {
            to_rational(&out, here.cells.len()).kernel()
        };
        let mut chosen = Vec::new();
        for z in kernel {
            if span.insert(&z) {
                chosen.push(here.chain(&primitive_integer_vector(&z)));
            }
        }
        debug_assert_eq!(chosen.len(), rank);
        cycles.insert(d, chosen);
    }
    ZkHomology { ranks, torsion, cycles }
}

/// Rational coordinates of `[chain]` in the span of `basis` modulo
/// boundaries. Fails for a non-cycle or a class outside the span.
pub fn homology_coordinates(
    complex: &SimplicialComplex,
    chain: &CellularChain,
    basis: &[CellularChain],
) -> Result<Vec<Rational>> {
    if !is_cycle(chain) {
        return Err(Error::NotCycle);
    }
    if let Some(bad) = basis.iter().find(|b| !is_cycle(b)) {
        return Err(Error::InvalidArgument(format!("basis element {} is not a cycle", bad)));
    }
    let dim = match (chain.dim(), basis.iter().find_map(|b| b.dim())) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::DegreeMismatch(format!("chain of dimension {} against basis of dimension {}", a, b)))
        }
        (Some(a), _) => a,
        (None, Some(b)) => b,
        (None, None) => return Ok(vec![Rational::zero(); basis.len()]),
    };
    let here = Degree::new(complex, dim);
    let above = Degree::new(complex, dim + 1);
    let mut columns = basis.iter().map(|b| here.vector(b)).collect::<Result<Vec<_>>>()?;
    for cell in &above.cells {
        columns.push(here.vector(&cell.boundary())?);
    }
    let target = here.vector(chain)?;
    let mat = Matrix::from_columns(here.cells.len(), &columns);
    let x = mat.solve(&target).ok_or(Error::OutsideSpan)?;
    Ok(x[..basis.len()].to_vec())
}
