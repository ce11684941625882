//! Simplicial complexes on the vertex set `[m] = {1, ..., m}`.
//!
//! A complex is stored through its maximal faces; membership of any other
//! set is decided by a subset test. Vertex sets are bitmasks, so `m` is
//! bounded by [`MAX_VERTICES`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Largest vertex count representable by [`VertexSet`].
pub const MAX_VERTICES: usize = 64;

/// A subset of `[m]`, stored as a bitmask (bit `v - 1` for vertex `v`).
///
/// Iteration is always in ascending order, and the ordering is the
/// lexicographic order of the ascending element sequences.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        VertexSet(1u64 << (v - 1))
    }

    /// The full vertex set `[m]`.
    pub fn full(m: usize) -> Self {
        if m >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << m) - 1)
        }
    }

    /// Builds a set from vertices, rejecting anything outside `1..=m`.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(m: usize, vertices: I) -> Result<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if v == 0 || v > m || v > MAX_VERTICES {
                return Err(Error::VertexOutOfRange { vertex: v, m });
            }
            bits |= 1u64 << (v - 1);
        }
        Ok(VertexSet(bits))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= VertexSet::singleton(v).0;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !VertexSet::singleton(v).0;
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Number of elements strictly smaller than `v`.
    pub fn count_below(self, v: usize) -> usize {
        let mask = if v <= 1 { 0 } else { (1u64 << (v - 1)) - 1 };
        (self.0 & mask).count_ones() as usize
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some(((cur | !full).wrapping_add(1)) & full) };
            Some(VertexSet(cur))
        })
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, v) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "}}")
    }
}

/// Reduced Betti numbers (or Betti numbers of `Z_K`) indexed by degree.
///
/// Zero ranks are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector(BTreeMap<i64, usize>);

impl BettiVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, degree: i64) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn add(&mut self, degree: i64, rank: usize) {
        if rank > 0 {
            *self.0.entry(degree).or_insert(0) += rank;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.0.iter().map(|(&d, &r)| (d, r))
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    /// Ranks in degrees `0..=top` as a dense vector.
    pub fn dense(&self, top: i64) -> Vec<usize> {
        (0..=top).map(|d| self.get(d)).collect()
    }
}

impl FromIterator<(i64, usize)> for BettiVector {
    fn from_iter<T: IntoIterator<Item = (i64, usize)>>(iter: T) -> Self {
        let mut b = BettiVector::new();
        for (d, r) in iter {
            b.add(d, r);
        }
        b
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(d, r)| format!("{}:{}", d, r)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A simplicial complex on `[m]`, given by its maximal faces.
///
/// The empty set is always a face. Vertices of `[m]` that lie in no face
/// are allowed (ghost vertices).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    m: usize,
    maximal: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// Builds the downward closure of `faces`. Non-maximal generators are
    /// discarded, and the maximal faces are stored in lexicographic order.
    pub fn new<I: IntoIterator<Item = VertexSet>>(m: usize, faces: I) -> Result<Self> {
        if m > MAX_VERTICES {
            return Err(Error::InvalidArgument(format!(
                "at most {} vertices are supported, got {}",
                MAX_VERTICES, m
            )));
        }
        let full = VertexSet::full(m);
        let mut candidates: Vec<VertexSet> = Vec::new();
        for f in faces {
            if !f.is_subset(full) {
                let bad = f.difference(full).min().unwrap_or(0);
                return Err(Error::VertexOutOfRange { vertex: bad, m });
            }
            candidates.push(f);
        }
        candidates.sort_by_key(|f| std::cmp::Reverse(f.len()));
        let mut maximal: Vec<VertexSet> = Vec::new();
        for f in candidates {
            if !maximal.iter().any(|g| f.is_subset(*g)) {
                maximal.push(f);
            }
        }
        maximal.retain(|f| !f.is_empty());
        maximal.sort();
        Ok(SimplicialComplex { m, maximal })
    }

    /// Convenience constructor from vertex lists.
    pub fn from_faces(m: usize, faces: &[&[usize]]) -> Result<Self> {
        let sets = faces
            .iter()
            .map(|f| VertexSet::from_vertices(m, f.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, sets)
    }

    /// Boundary of the `n`-gon: edges `{i, i+1}` and `{n, 1}`.
    pub fn polygon_boundary(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("a polygon needs at least 3 vertices, got {}", n)));
        }
        let edges = (1..=n).map(|i| {
            let j = if i == n { 1 } else { i + 1 };
            VertexSet::singleton(i).union(VertexSet::singleton(j))
        });
        Self::new(n, edges)
    }

    /// The full simplex on `[m]`.
    pub fn simplex(m: usize) -> Result<Self> {
        Self::new(m, [VertexSet::full(m)])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn maximal_faces(&self) -> &[VertexSet] {
        &self.maximal
    }

    fn check_range(&self, set: VertexSet) -> Result<()> {
        let outside = set.difference(VertexSet::full(self.m));
        match outside.min() {
            Some(v) => Err(Error::VertexOutOfRange { vertex: v, m: self.m }),
            None => Ok(()),
        }
    }

    pub fn is_face(&self, set: VertexSet) -> Result<bool> {
        self.check_range(set)?;
        Ok(self.contains(set))
    }

    /// Face test without range checking; out-of-range sets are never faces.
    pub fn contains(&self, set: VertexSet) -> bool {
        set.is_empty() || self.maximal.iter().any(|f| set.is_subset(*f))
    }

    /// Vertices `v` with `{v}` a face.
    pub fn vertex_set(&self) -> VertexSet {
        self.maximal.iter().fold(VertexSet::EMPTY, |acc, f| acc.union(*f))
    }

    /// Neighbours of every vertex in the 1-skeleton, indexed by `v - 1`.
    pub fn adjacency(&self) -> Vec<VertexSet> {
        let mut adj = vec![VertexSet::EMPTY; self.m];
        for f in &self.maximal {
            for v in f.iter() {
                let mut others = *f;
                others.remove(v);
                adj[v - 1] = adj[v - 1].union(others);
            }
        }
        adj
    }

    /// Every face, sorted by dimension and then lexicographically.
    pub fn faces(&self) -> Vec<VertexSet> {
        let mut all: Vec<VertexSet> = self.maximal.iter().flat_map(|f| f.subsets()).collect();
        all.push(VertexSet::EMPTY);
        all.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        all.dedup();
        all
    }

    pub fn dimension(&self) -> i64 {
        self.maximal.iter().map(|f| f.len() as i64 - 1).max().unwrap_or(-1)
    }

    /// True iff every minimal non-face has exactly two elements.
    ///
    /// A vertex lying in no face is a one-element minimal non-face, so
    /// complexes with ghost vertices are not flag.
    pub fn is_flag(&self) -> bool {
        if self.vertex_set() != VertexSet::full(self.m) {
            return false;
        }
        let adj = self.adjacency();
        let mut flag = true;
        bron_kerbosch(&adj, VertexSet::EMPTY, VertexSet::full(self.m), VertexSet::EMPTY, &mut |clique| {
            if !self.contains(clique) {
                flag = false;
            }
        });
        flag
    }

    /// The full subcomplex `{J in K : J ⊆ I}` on the same vertex range.
    pub fn full_subcomplex(&self, set: VertexSet) -> Result<Self> {
        self.check_range(set)?;
        Ok(self.restrict(set))
    }

    pub(crate) fn restrict(&self, set: VertexSet) -> Self {
        Self::new(self.m, self.maximal.iter().map(|f| f.intersection(set)))
            .expect("restriction stays in range")
    }

    /// Connected components of the 1-skeleton over the vertices of `K`,
    /// sorted by smallest vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let adj = self.adjacency();
        let mut unvisited = self.vertex_set();
        let mut components = Vec::new();
        while let Some(start) = unvisited.min() {
            let mut component = VertexSet::singleton(start);
            let mut frontier = component;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next = next.union(adj[v - 1]);
                }
                frontier = next.difference(component);
                component = component.union(frontier);
            }
            unvisited = unvisited.difference(component);
            components.push(component);
        }
        components
    }

    /// Reduced Betti numbers over the rationals. The complex `{∅}` has
    /// `b̃_{-1} = 1`.
    pub fn reduced_betti(&self) -> BettiVector {
        let faces = self.faces();
        let top = self.dimension();
        // faces grouped by dimension -1..=top
        let by_dim: Vec<Vec<VertexSet>> = (-1..=top)
            .map(|d| faces.iter().copied().filter(|f| f.len() as i64 - 1 == d).collect())
            .collect();
        // rank of the boundary C_d -> C_{d-1}, indexed by d + 1
        let mut ranks = vec![0usize; by_dim.len() + 1];
        for d in 0..=top {
            let idx = (d + 1) as usize;
            let rows = &by_dim[idx - 1];
            let cols = &by_dim[idx];
            let row_index: BTreeMap<VertexSet, usize> =
                rows.iter().enumerate().map(|(n, f)| (*f, n)).collect();
            let mut mat = Matrix::zeros(rows.len(), cols.len());
            for (c, face) in cols.iter().enumerate() {
                for (pos, v) in face.iter().enumerate() {
                    let mut sub = *face;
                    sub.remove(v);
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    mat.set_int(row_index[&sub], c, sign);
                }
            }
            ranks[idx] = mat.rank();
        }
        let mut betti = BettiVector::new();
        for d in -1..=top {
            let idx = (d + 1) as usize;
            let b = by_dim[idx].len() - ranks[idx] - ranks[idx + 1];
            betti.add(d, b);
        }
        betti
    }

    /// Reduced Euler characteristic `Σ_{F ∈ K} (-1)^{dim F}`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.faces()
            .iter()
            .map(|f| if f.len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile {
            m: self.m,
            maximal_faces: self.maximal.iter().map(|f| f.to_vec()).collect(),
        }
    }

    pub fn from_file(file: &ComplexFile) -> Result<Self> {
        let faces: Vec<&[usize]> = file.maximal_faces.iter().map(|f| f.as_slice()).collect();
        Self::from_faces(file.m, &faces)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ComplexFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("complex serializes")
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K on [{}] with maximal faces ", self.m)?;
        let parts: Vec<String> = self.maximal.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// On-disk form of a complex: `{"m": 5, "maximal_faces": [[1,2], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub m: usize,
    pub maximal_faces: Vec<Vec<usize>>,
}

fn bron_kerbosch(
    adj: &[VertexSet],
    r: VertexSet,
    mut p: VertexSet,
    mut x: VertexSet,
    report: &mut dyn FnMut(VertexSet),
) {
    if p.is_empty() && x.is_empty() {
        report(r);
        return;
    }
    for v in p.iter() {
        let mut with_v = r;
        with_v.insert(v);
        let nv = adj[v - 1];
        bron_kerbosch(adj, with_v, p.intersection(nv), x.intersection(nv), report);
        p.remove(v);
        x.insert(v);
    }
}

/// `H^*(Z_K)` ranks from the sum over full subcomplexes:
/// `rank H^p = Σ_{I ⊆ [m]} b̃^{p-|I|-1}(K_I)`.
pub fn hochster_cohomology(complex: &SimplicialComplex) -> BettiVector {
    let mut total = BettiVector::new();
    for subset in VertexSet::full(complex.m()).subsets() {
        let restricted = complex.restrict(subset);
        for (d, r) in restricted.reduced_betti().iter() {
            total.add(d + subset.len() as i64 + 1, r);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(m: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(m, v.iter().copied()).unwrap()
    }

    #[test]
    fn polygon_maximal_faces() {
        let p = SimplicialComplex::polygon_boundary(5).unwrap();
        let faces: Vec<Vec<usize>> = p.maximal_faces().iter().map(|f| f.to_vec()).collect();
        assert_eq!(faces, vec![vec![1, 2], vec![1, 5], vec![2, 3], vec![3, 4], vec![4, 5]]);
        let tri = SimplicialComplex::polygon_boundary(3).unwrap();
        assert_eq!(tri.maximal_faces().len(), 3);
        assert!(matches!(SimplicialComplex::polygon_boundary(2), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn face_membership() {
        let p = SimplicialComplex::polygon_boundary(5).unwrap();
        assert!(p.is_face(set(5, &[1, 2])).unwrap());
        assert!(!p.is_face(set(5, &[1, 3])).unwrap());
        assert!(p.is_face(VertexSet::EMPTY).unwrap());
        assert!(matches!(p.is_face(VertexSet::singleton(6)), Err(Error::VertexOutOfRange { vertex: 6, m: 5 })));
    }

    #[test]
    fn flagness() {
        assert!(SimplicialComplex::polygon_boundary(5).unwrap().is_flag());
        assert!(!SimplicialComplex::polygon_boundary(3).unwrap().is_flag());
        assert!(SimplicialComplex::simplex(4).unwrap().is_flag());
        // ghost vertex 3
        assert!(!SimplicialComplex::from_faces(3, &[&[1, 2]]).unwrap().is_flag());
    }

    #[test]
    fn full_subcomplexes_and_components() {
        let p = SimplicialComplex::polygon_boundary(5).unwrap();
        let path = p.full_subcomplex(set(5, &[1, 2, 3])).unwrap();
        assert_eq!(path, SimplicialComplex::from_faces(5, &[&[1, 2], &[2, 3]]).unwrap());
        assert_eq!(p.full_subcomplex(VertexSet::full(5)).unwrap(), p);
        let two = p.full_subcomplex(set(5, &[1, 3])).unwrap();
        assert_eq!(two.maximal_faces(), &[set(5, &[1]), set(5, &[3])]);
        assert_eq!(two.connected_components(), vec![set(5, &[1]), set(5, &[3])]);
        assert_eq!(p.connected_components(), vec![VertexSet::full(5)]);
        let k124 = p.full_subcomplex(set(5, &[1, 2, 4])).unwrap();
        assert_eq!(k124.connected_components(), vec![set(5, &[1, 2]), set(5, &[4])]);
    }

    #[test]
    fn reduced_betti_examples() {
        let empty = SimplicialComplex::new(5, []).unwrap();
        assert_eq!(empty.reduced_betti(), [(-1, 1)].into_iter().collect());
        let p = SimplicialComplex::polygon_boundary(5).unwrap();
        assert_eq!(p.reduced_betti(), [(1, 1)].into_iter().collect());
        let two = SimplicialComplex::from_faces(2, &[&[1], &[2]]).unwrap();
        assert_eq!(two.reduced_betti(), [(0, 1)].into_iter().collect());
    }

    #[test]
    fn hochster_examples() {
        let p = SimplicialComplex::polygon_boundary(5).unwrap();
        assert_eq!(hochster_cohomology(&p), [(0, 1), (3, 5), (4, 5), (7, 1)].into_iter().collect());
        let h = SimplicialComplex::polygon_boundary(6).unwrap();
        assert_eq!(
            hochster_cohomology(&h),
            [(0, 1), (3, 9), (4, 16), (5, 9), (8, 1)].into_iter().collect()
        );
        let s = SimplicialComplex::simplex(4).unwrap();
        assert_eq!(hochster_cohomology(&s), [(0, 1)].into_iter().collect());
    }

    #[test]
    fn json_roundtrip_is_sorted() {
        let k = SimplicialComplex::from_json(r#"{"m": 4, "maximal_faces": [[3,1],[4,2],[2,1]]}"#).unwrap();
        assert_eq!(k.to_json(), r#"{"m":4,"maximal_faces":[[1,2],[1,3],[2,4]]}"#);
        assert!(SimplicialComplex::from_json(r#"{"m": 2, "maximal_faces": [[3]]}"#).is_err());
        assert!(SimplicialComplex::from_json(r#"{"m": 2}"#).is_err());
    }

    #[test]
    fn subsets_enumerates_everything() {
        let s = set(6, &[2, 4, 5]);
        let subs: Vec<VertexSet> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(VertexSet::EMPTY.subsets().count(), 1);
    }
}
