//! Independent oracles shared by the integration tests. None of these use
//! the library's normal form.

#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use macloops_core::{CommutatorExpr, SimplicialComplex, VertexSet};

pub type FreeElement = BTreeMap<Vec<usize>, i64>;

/// Expansion of a bracket tree in the free tensor algebra.
pub fn free_expand(e: &CommutatorExpr) -> FreeElement {
    match e {
        CommutatorExpr::Leaf(i) => BTreeMap::from([(vec![*i], 1)]),
        CommutatorExpr::Bracket(a, b) => {
            let (x, y) = (free_expand(a), free_expand(b));
            let sign = if a.degree() * b.degree() % 2 == 0 { -1 } else { 1 };
            let mut out = BTreeMap::new();
            for (u, p) in &x {
                for (v, q) in &y {
                    *out.entry([u.as_slice(), v].concat()).or_insert(0) += p * q;
                    *out.entry([v.as_slice(), u].concat()).or_insert(0) += sign * p * q;
                }
            }
            out.retain(|_, c| *c != 0);
            out
        }
    }
}

pub fn add_scaled(total: &mut FreeElement, e: &FreeElement, k: i64) {
    for (w, c) in e {
        *total.entry(w.clone()).or_insert(0) += k * c;
    }
    total.retain(|_, c| *c != 0);
}

/// Rewrite closure of words under `μ_aμ_b -> -μ_bμ_a` for edges `{a, b}`
/// and `μ_aμ_a -> 0`, explored by breadth-first search.
pub struct RewriteOracle {
    adjacent: Vec<Vec<bool>>,
}

pub enum Class {
    Zero,
    Word { rep: Vec<usize>, sign: i64 },
}

impl RewriteOracle {
    pub fn new(k: &SimplicialComplex) -> Self {
        let m = k.m();
        let mut adjacent = vec![vec![false; m + 1]; m + 1];
        for a in 1..=m {
            for b in 1..=m {
                if a != b {
                    adjacent[a][b] = k.contains(VertexSet::from_vertices(m, [a, b]).unwrap());
                }
            }
        }
        RewriteOracle { adjacent }
    }

    /// Class of `w`: zero when some rewrite sequence reaches a square
    /// `μ_aμ_a` or the same word with both signs; otherwise the smallest
    /// word of the class with the sign relating it to `w`.
    pub fn class(&self, w: &[usize]) -> Class {
        let mut seen: BTreeMap<Vec<usize>, i64> = BTreeMap::from([(w.to_vec(), 1)]);
        let mut queue = VecDeque::from([w.to_vec()]);
        while let Some(x) = queue.pop_front() {
            let s = seen[&x];
            for p in 0..x.len().saturating_sub(1) {
                if x[p] == x[p + 1] {
                    return Class::Zero;
                }
                if self.adjacent[x[p]][x[p + 1]] {
                    let mut y = x.clone();
                    y.swap(p, p + 1);
                    match seen.get(&y) {
                        Some(&t) if t != -s => return Class::Zero,
                        Some(_) => {}
                        None => {
                            seen.insert(y.clone(), -s);
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        let (rep, sign) = seen.into_iter().next().unwrap();
        Class::Word { rep, sign }
    }

    /// Image of a free element in the quotient, keyed by class representative.
    pub fn reduce(&self, e: &FreeElement) -> FreeElement {
        let mut out = BTreeMap::new();
        for (w, c) in e {
            if let Class::Word { rep, sign } = self.class(w) {
                *out.entry(rep).or_insert(0) += sign * c;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }
}

pub mod checks {
    //! Property checks returning the first counterexample, shared by the
    //! property tests and the acceptance run.

    use macloops_core::cellular::{boundary, cells_of, top_dimension, zk_homology, Cell, CellularChain};
    use macloops_core::koszul::{evaluate, evaluate_element, KoszulAlgebra, KoszulElement};
    use macloops_core::loopalg::{LoopAlgebra, NormalForm, TensorElement, Word};
    use macloops_core::{hochster_cohomology, SimplicialComplex, VertexSet};
    use rand::seq::SliceRandom;
    use rand::Rng;

    use super::{Class, RewriteOracle};

    /// Random complex on `[m]` generated by a few random faces.
    pub fn random_complex<R: Rng>(rng: &mut R, m: usize) -> SimplicialComplex {
        let count = rng.gen_range(0..=2 * m);
        let faces: Vec<VertexSet> = (0..count).map(|_| VertexSet::from_bits(rng.gen_range(0..1u64 << m))).collect();
        SimplicialComplex::new(m, faces).unwrap()
    }

    /// Clique complex of a random graph on `[m]`.
    pub fn random_flag_complex<R: Rng>(rng: &mut R, m: usize, density: f64) -> SimplicialComplex {
        let mut edge = vec![vec![false; m + 1]; m + 1];
        for a in 1..=m {
            for b in a + 1..=m {
                let e = rng.gen_bool(density);
                edge[a][b] = e;
                edge[b][a] = e;
            }
        }
        let cliques = VertexSet::full(m).subsets().filter(|s| {
            let v = s.to_vec();
            v.iter().enumerate().all(|(n, &a)| v[n + 1..].iter().all(|&b| edge[a][b]))
        });
        SimplicialComplex::new(m, cliques).unwrap()
    }

    /// ∂∂ = 0 on every cell of `Z_K`.
    pub fn boundary_squared(k: &SimplicialComplex) -> Result<(), String> {
        for d in 0..=top_dimension(k) {
            for cell in cells_of(k, d) {
                let dd = boundary(&cell.boundary());
                if !dd.is_zero() {
                    return Err(format!("∂∂({}) = {}", cell, dd));
                }
            }
        }
        Ok(())
    }

    /// dd = 0 on every basis monomial of the Koszul model.
    pub fn differential_squared(k: &SimplicialComplex) -> Result<(), String> {
        let alg = KoszulAlgebra::new(k);
        for p in 0..=2 * k.m() {
            for mono in alg.monomials(p) {
                let e = KoszulElement::from_monomial(mono);
                let dd = alg.differential(&alg.differential(&e));
                if !dd.is_zero() {
                    return Err(format!("dd({}) = {}", mono, dd));
                }
            }
        }
        Ok(())
    }

    pub fn hochster_matches_cellular(k: &SimplicialComplex) -> Result<(), String> {
        let h = hochster_cohomology(k);
        let c = zk_homology(k).ranks;
        if h == c {
            Ok(())
        } else {
            Err(format!("{:?}: Hochster {} vs cellular {}", k.maximal_faces(), h, c))
        }
    }

    /// Applies `steps` random defining relations to `word` and checks the
    /// normal form tracks the sign.
    pub fn rewrite_independence<R: Rng>(alg: &LoopAlgebra, word: &[usize], steps: usize, rng: &mut R) -> Result<(), String> {
        let start = alg.normal_form(&Word::new(word.to_vec())).unwrap();
        let mut w = word.to_vec();
        let mut sign = 1;
        for _ in 0..steps {
            let spots: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&p| alg.anticommute(w[p], w[p + 1])).collect();
            let Some(&p) = spots.choose(rng) else { break };
            w.swap(p, p + 1);
            sign = -sign;
        }
        let end = alg.normal_form(&Word::new(w.clone())).unwrap();
        let consistent = match (&start, &end) {
            (NormalForm::Zero, NormalForm::Zero) => true,
            (NormalForm::Word { sign: a, word: x }, NormalForm::Word { sign: b, word: y }) => x == y && *a == sign * b,
            _ => false,
        };
        if consistent {
            Ok(())
        } else {
            Err(format!("{:?} -> {:?}: {:?} vs {:?}", word, w, start, end))
        }
    }

    /// Every word of length at most `max_len` agrees with the rewrite-closure oracle.
    pub fn zero_detection(alg: &LoopAlgebra, max_len: usize) -> Result<usize, String> {
        let oracle = RewriteOracle::new(alg.complex());
        let m = alg.m();
        let mut count = 0;
        let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..=max_len {
            for w in &frontier {
                count += 1;
                let ours = alg.normal_form(&Word::new(w.clone())).unwrap();
                let ok = match (oracle.class(w), &ours) {
                    (Class::Zero, NormalForm::Zero) => true,
                    (Class::Word { rep, sign }, NormalForm::Word { sign: s, word }) => rep == word.letters() && sign == *s,
                    _ => false,
                };
                if !ok {
                    return Err(format!("word {:?}: normal form {:?}", w, ours));
                }
            }
            frontier = frontier
                .iter()
                .flat_map(|w| (1..=m).map(move |a| [w.as_slice(), &[a]].concat()))
                .collect();
        }
        Ok(count)
    }

    pub fn random_element<R: Rng>(alg: &LoopAlgebra, rng: &mut R, degree: usize, terms: usize) -> TensorElement {
        let mut out = TensorElement::zero();
        for _ in 0..terms {
            let letters: Vec<usize> = (0..degree).map(|_| rng.gen_range(1..=alg.m())).collect();
            let c = rng.gen_range(-3..=3i64);
            out += &(&alg.word(&letters).unwrap() * c);
        }
        out
    }

    fn sign(e: usize) -> i64 {
        if e.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `[a,b] = -(-1)^{|a||b|}[b,a]` and the graded Jacobi identity.
    pub fn antisymmetry_and_jacobi(
        alg: &LoopAlgebra,
        (a, da): (&TensorElement, usize),
        (b, db): (&TensorElement, usize),
        (c, dc): (&TensorElement, usize),
    ) -> Result<(), String> {
        let br = |x: &TensorElement, y: &TensorElement| alg.commutator(x, y).unwrap();
        let anti = &br(a, b) + &(&br(b, a) * sign(da * db));
        if !anti.is_zero() {
            return Err(format!("antisymmetry fails for {} and {}", a, b));
        }
        let mut jacobi = &br(a, &br(b, c)) * sign(da * dc);
        jacobi += &(&br(b, &br(c, a)) * sign(db * da));
        jacobi += &(&br(c, &br(a, b)) * sign(dc * db));
        if !jacobi.is_zero() {
            return Err(format!("Jacobi fails for {}, {}, {}", a, b, c));
        }
        Ok(())
    }

    /// The `ε` with `evaluate(dα, c) = ε · evaluate(α, ∂c)` for all monomials
    /// `α` and cells `c` of `Z_K`, or a counterexample.
    pub fn stokes_sign(k: &SimplicialComplex) -> Result<Option<i64>, String> {
        let alg = KoszulAlgebra::new(k);
        let mut eps: Option<i64> = None;
        for d in 1..=top_dimension(k) {
            let cells: Vec<Cell> = cells_of(k, d);
            for mono in alg.monomials(d - 1) {
                let da = alg.differential(&KoszulElement::from_monomial(mono));
                for cell in &cells {
                    let lhs = evaluate_element(&da, &CellularChain::from_cell(*cell));
                    let rhs = evaluate(&mono, &cell.boundary());
                    if lhs == 0 && rhs == 0 {
                        continue;
                    }
                    if rhs == 0 || lhs.abs() != rhs.abs() {
                        return Err(format!("{} on {}: {} vs {}", mono, cell, lhs, rhs));
                    }
                    let e = lhs / rhs;
                    match eps {
                        None => eps = Some(e),
                        Some(x) if x != e => return Err(format!("{} on {}: sign {} after {}", mono, cell, e, x)),
                        _ => {}
                    }
                }
            }
        }
        Ok(eps)
    }
}
