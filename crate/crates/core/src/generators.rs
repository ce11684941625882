//! Canonical multiplicative generators of the loop homology of `Z_K` for
//! flag `K`, and their Hurewicz images as cellular cycles.
//!
//! A generator is a right-nested commutator `[μ_{k_1},[…,[μ_j, μ_i]…]]`
//! with `k_1 < … < k_p < j`, `i < j`, `i ∉ {k_s}`, such that `i` is the
//! smallest vertex of a connected component of `K_{k ∪ {j, i}}` that does
//! not contain `j`.

use std::fmt;

use serde::Serialize;

use crate::cellular::{homology_coordinates, is_cycle, zk_homology, Cell, CellularChain, ChainRecord, Factor};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};
use crate::loopalg::CommutatorExpr;
use crate::simplicial::{SimplicialComplex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorDescriptor {
    pub k_list: VertexSet,
    pub j: usize,
    pub i: usize,
}

impl GeneratorDescriptor {
    /// Loop-homology degree `p + 2`.
    pub fn degree(&self) -> usize {
        self.k_list.len() + 2
    }

    pub fn letters(&self) -> Vec<usize> {
        let mut out = self.k_list.to_vec();
        out.push(self.j);
        out.push(self.i);
        out
    }

    pub fn to_expr(&self) -> CommutatorExpr {
        CommutatorExpr::right_nested(&self.letters()).expect("at least two letters")
    }

    fn sort_key(&self) -> (usize, usize, usize, Vec<usize>) {
        (self.degree(), self.i, self.j, self.k_list.to_vec())
    }
}

impl fmt::Display for GeneratorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

fn is_generator(complex: &SimplicialComplex, k_list: VertexSet, j: usize, i: usize) -> bool {
    let mut support = k_list;
    support.insert(j);
    support.insert(i);
    complex
        .restrict(support)
        .connected_components()
        .iter()
        .any(|&c| !c.contains(j) && VertexSet::min(c) == Some(i))
}

/// All generators, sorted by degree, then `i`, then `j`, then `k_list`.
pub fn enumerate_gptw_generators(complex: &SimplicialComplex) -> Result<Vec<GeneratorDescriptor>> {
    if !complex.is_flag() {
        return Err(Error::NotFlag);
    }
    let m = complex.m();
    let mut out = Vec::new();
    for j in 2..=m {
        for i in 1..j {
            let mut pool = VertexSet::full(j - 1);
            pool.remove(i);
            for k_list in pool.subsets() {
                if is_generator(complex, k_list, j, i) {
                    out.push(GeneratorDescriptor { k_list, j, i });
                }
            }
        }
    }
    out.sort_by_key(GeneratorDescriptor::sort_key);
    Ok(out)
}

/// Cellular cycle of a right-nested commutator `[μ_{i_1},[…,[μ_{i_{k-1}}, μ_{i_k}]…]]`:
/// `S_{i_1}…S_{i_{k-2}} D_{i_{k-1}} S_{i_k} + S_{i_1}…S_{i_{k-1}} D_{i_k}`,
/// with each product re-sorted into ascending order.
pub fn hurewicz_image(expr: &CommutatorExpr, complex: &SimplicialComplex) -> Result<CellularChain> {
    let letters = expr
        .right_nested_letters()
        .ok_or_else(|| Error::InvalidArgument(format!("{} is not a right-nested commutator", expr)))?;
    if letters.len() < 2 {
        return Err(Error::InvalidArgument(format!("{} is not a commutator", expr)));
    }
    let m = complex.m();
    if let Some(&v) = letters.iter().find(|&&v| v == 0 || v > m) {
        return Err(Error::VertexOutOfRange { vertex: v, m });
    }
    let k = letters.len();
    let mut chain = CellularChain::zero();
    for d in [k - 2, k - 1] {
        let factors: Vec<Factor> =
            letters.iter().enumerate().map(|(n, &v)| if n == d { Factor::D(v) } else { Factor::S(v) }).collect();
        let (sign, cell) = Cell::from_factors(&factors)
            .ok_or_else(|| Error::InvalidArgument(format!("{} repeats a letter", expr)))?;
        if !complex.contains(cell.disc) {
            return Err(Error::InvalidArgument(format!("{} is not a cell of Z_K", cell)));
        }
        chain.add_term(cell, sign);
    }
    Ok(chain)
}

/// One generator with its Hurewicz chain and coordinates in the cycle basis
/// of [`zk_homology`].
#[derive(Clone, Debug)]
pub struct GeneratorRow {
    pub descriptor: GeneratorDescriptor,
    pub expr: CommutatorExpr,
    pub chain: CellularChain,
    pub is_cycle: bool,
    pub coords: Vec<Rational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorRecord {
    pub commutator: String,
    pub degree: usize,
    pub chain: Vec<ChainRecord>,
    pub is_cycle: bool,
    pub coords: Vec<String>,
}

impl GeneratorRow {
    pub fn to_record(&self) -> GeneratorRecord {
        GeneratorRecord {
            commutator: self.expr.to_string(),
            degree: self.descriptor.degree(),
            chain: self.chain.to_records(),
            is_cycle: self.is_cycle,
            coords: self.coords.iter().map(|x| x.to_string()).collect(),
        }
    }
}

pub fn generator_cycle_table(complex: &SimplicialComplex) -> Result<Vec<GeneratorRow>> {
    let generators = enumerate_gptw_generators(complex)?;
    let homology = zk_homology(complex);
    let mut rows = Vec::with_capacity(generators.len());
    for descriptor in generators {
        let expr = descriptor.to_expr();
        let chain = hurewicz_image(&expr, complex)?;
        let cycle = is_cycle(&chain);
        let basis = homology.cycles.get(&(descriptor.degree() + 1)).map_or(&[][..], Vec::as_slice);
        let coords = if cycle { homology_coordinates(complex, &chain, basis)? } else { Vec::new() };
        rows.push(GeneratorRow { descriptor, expr, chain, is_cycle: cycle, coords });
    }
    Ok(rows)
}

/// Determinant of the coordinate matrix of the rows of loop degree
/// `degree`, or `None` when the matrix is not square.
pub fn coordinate_determinant(rows: &[GeneratorRow], degree: usize) -> Option<Rational> {
    let selected: Vec<&GeneratorRow> = rows.iter().filter(|r| r.descriptor.degree() == degree).collect();
    if selected.iter().any(|r| r.coords.len() != selected.len()) {
        return None;
    }
    Some(Matrix::from_rows(selected.iter().map(|r| r.coords.clone()).collect()).determinant())
}
