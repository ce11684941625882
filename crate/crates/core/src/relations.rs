//! Relations among iterated commutators in the loop homology of `Z_K`,
//! checked by expansion in the tensor algebra, and linear solving for
//! unknown coefficients in a relation template.
//!
//! Built-in templates cover the boundaries of the pentagon and hexagon.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rational, IncrementalBasis, Matrix, Rational};
use crate::loopalg::{CommutatorExpr, LoopAlgebra, TensorElement, Word};
use crate::simplicial::SimplicialComplex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedTerm {
    pub coeff: i64,
    pub expr: CommutatorExpr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnknownTerm {
    pub id: String,
    pub expr: CommutatorExpr,
}

/// `Σ coeff · expr + Σ k_id · expr` with integer `coeff` and unknown `k_id`.
/// Several unknown terms may share an id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationTemplate {
    #[serde(default)]
    pub fixed: Vec<FixedTerm>,
    #[serde(default)]
    pub unknowns: Vec<UnknownTerm>,
    /// Optional values for the unknowns, used when the template is checked
    /// as a concrete relation.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, i64>,
}

impl RelationTemplate {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("template serializes")
    }

    pub fn fixed_term(&mut self, coeff: i64, expr: CommutatorExpr) {
        self.fixed.push(FixedTerm { coeff, expr });
    }

    pub fn unknown_term(&mut self, id: &str, expr: CommutatorExpr) {
        self.unknowns.push(UnknownTerm { id: id.to_string(), expr });
    }

    /// Distinct unknown ids in order of first appearance.
    pub fn unknown_ids(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        self.unknowns.iter().filter(|u| seen.insert(u.id.clone())).map(|u| u.id.clone()).collect()
    }

    fn exprs(&self) -> impl Iterator<Item = &CommutatorExpr> {
        self.fixed.iter().map(|t| &t.expr).chain(self.unknowns.iter().map(|t| &t.expr))
    }

    /// Common degree of all summands; an empty template has degree 0.
    pub fn degree(&self) -> Result<usize> {
        let degrees: BTreeSet<usize> = self.exprs().map(CommutatorExpr::degree).collect();
        match degrees.len() {
            0 => Ok(0),
            1 => Ok(*degrees.iter().next().unwrap()),
            _ => Err(Error::DegreeMismatch(format!("summand degrees {:?}", degrees))),
        }
    }

    /// Expansion of the fixed part.
    pub fn expand_fixed(&self, alg: &LoopAlgebra) -> Result<TensorElement> {
        self.degree()?;
        let mut total = TensorElement::zero();
        for t in &self.fixed {
            total += &(&alg.expand(&t.expr)? * t.coeff);
        }
        Ok(total)
    }

    /// Expansion of the summands of each unknown, keyed by id.
    pub fn expand_unknowns(&self, alg: &LoopAlgebra) -> Result<BTreeMap<String, TensorElement>> {
        self.degree()?;
        let mut out: BTreeMap<String, TensorElement> = BTreeMap::new();
        for t in &self.unknowns {
            let e = alg.expand(&t.expr)?;
            *out.entry(t.id.clone()).or_insert_with(TensorElement::zero) += &e;
        }
        Ok(out)
    }

    /// Expansion with the unknowns set to `values` (missing ids are errors).
    pub fn instantiate(&self, alg: &LoopAlgebra, values: &BTreeMap<String, i64>) -> Result<TensorElement> {
        let mut total = self.expand_fixed(alg)?;
        for (id, e) in self.expand_unknowns(alg)? {
            let k = *values.get(&id).ok_or_else(|| Error::InvalidArgument(format!("no value for unknown {}", id)))?;
            total += &(&e * k);
        }
        Ok(total)
    }

    /// Expansion using the template's own `values`.
    pub fn expand(&self, alg: &LoopAlgebra) -> Result<TensorElement> {
        self.instantiate(alg, &self.values)
    }
}

/// True iff every normal-form coefficient is zero.
pub fn verify_zero(element: &TensorElement) -> bool {
    element.is_zero()
}

/// Affine space `particular + span(homogeneous)` of unknown values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub ids: Vec<String>,
    pub particular: Vec<Rational>,
    pub homogeneous: Vec<Vec<Rational>>,
}

impl SolutionSet {
    pub fn dimension(&self) -> usize {
        self.homogeneous.len()
    }

    /// Whether the assignment `values` (one per id, in order) is a solution.
    pub fn contains(&self, values: &[Rational]) -> bool {
        if values.len() != self.ids.len() {
            return false;
        }
        let diff: Vec<Rational> = values.iter().zip(&self.particular).map(|(a, b)| a - b).collect();
        if diff.iter().all(Zero::is_zero) {
            return true;
        }
        let mut span = IncrementalBasis::new();
        for h in &self.homogeneous {
            span.insert(h);
        }
        span.contains(&diff)
    }

    pub fn contains_integers(&self, values: &BTreeMap<String, i64>) -> bool {
        let v: Option<Vec<Rational>> = self.ids.iter().map(|id| values.get(id).map(|&k| rational(k))).collect();
        v.is_some_and(|v| self.contains(&v))
    }

    /// Ids whose value is the same for every solution.
    pub fn determined(&self) -> Vec<(String, Rational)> {
        self.ids
            .iter()
            .enumerate()
            .filter(|(n, _)| self.homogeneous.iter().all(|h| h[*n].is_zero()))
            .map(|(n, id)| (id.clone(), self.particular[n].clone()))
            .collect()
    }

    /// The particular solution as integers, when it is integral.
    pub fn particular_integers(&self) -> Option<BTreeMap<String, i64>> {
        self.ids
            .iter()
            .zip(&self.particular)
            .map(|(id, x)| if x.is_integer() { x.to_integer().to_i64().map(|k| (id.clone(), k)) } else { None })
            .collect()
    }
}

/// Solves for the unknowns making the template vanish in `alg`.
/// Returns `None` when the linear system is inconsistent.
pub fn solve_coefficients(template: &RelationTemplate, alg: &LoopAlgebra) -> Result<Option<SolutionSet>> {
    let fixed = template.expand_fixed(alg)?;
    let parts = template.expand_unknowns(alg)?;
    let ids = template.unknown_ids();
    let mut words: BTreeSet<&Word> = fixed.terms().map(|(w, _)| w).collect();
    for e in parts.values() {
        words.extend(e.terms().map(|(w, _)| w));
    }
    let words: Vec<&Word> = words.into_iter().collect();
    let mut mat = Matrix::zeros(words.len(), ids.len());
    for (c, id) in ids.iter().enumerate() {
        for (r, w) in words.iter().enumerate() {
            mat.set_int(r, c, parts[id].coefficient(w));
        }
    }
    let rhs: Vec<Rational> = words.iter().map(|w| rational(-fixed.coefficient(w))).collect();
    let Some(particular) = mat.solve(&rhs) else {
        return Ok(None);
    };
    Ok(Some(SolutionSet { ids, particular, homogeneous: mat.kernel() }))
}

fn exprs(texts: &[&str]) -> Vec<CommutatorExpr> {
    texts.iter().map(|t| CommutatorExpr::parse(t).expect("built-in commutator parses")).collect()
}

/// Degree-2 generators `α_1..α_5` of the pentagon.
pub fn pentagon_alphas() -> Vec<CommutatorExpr> {
    exprs(&["[3,1]", "[4,1]", "[4,2]", "[5,2]", "[5,3]"])
}

/// Degree-3 generators `β_1..β_5` of the pentagon.
pub fn pentagon_betas() -> Vec<CommutatorExpr> {
    exprs(&["[4,[5,2]]", "[3,[5,2]]", "[1,[5,3]]", "[3,[4,1]]", "[2,[4,1]]"])
}

pub const PENTAGON_SIGNS: [i64; 5] = [-1, 1, 1, -1, 1];

/// `-[α_1,β_1] + [α_2,β_2] + [α_3,β_3] - [α_4,β_4] + [α_5,β_5]`.
pub fn pentagon_relation_template() -> RelationTemplate {
    let mut t = RelationTemplate::default();
    for ((a, b), s) in pentagon_alphas().into_iter().zip(pentagon_betas()).zip(PENTAGON_SIGNS) {
        t.fixed_term(s, CommutatorExpr::bracket(a, b));
    }
    t
}

pub fn pentagon_algebra() -> LoopAlgebra {
    LoopAlgebra::new(&SimplicialComplex::polygon_boundary(5).expect("pentagon")).expect("pentagon is flag")
}

pub fn hexagon_algebra() -> LoopAlgebra {
    LoopAlgebra::new(&SimplicialComplex::polygon_boundary(6).expect("hexagon")).expect("hexagon is flag")
}

/// Expansion of the pentagon relation; zero in the loop homology.
pub fn build_pentagon_relation() -> Result<TensorElement> {
    pentagon_relation_template().expand(&pentagon_algebra())
}

/// Degree-2 generators `α_1..α_9` of the hexagon.
pub fn hexagon_alphas() -> Vec<CommutatorExpr> {
    exprs(&["[3,1]", "[4,1]", "[5,1]", "[4,2]", "[5,2]", "[6,2]", "[5,3]", "[6,3]", "[6,4]"])
}

/// Degree-3 generators `β_1..β_8` of the hexagon.
pub fn hexagon_betas() -> Vec<CommutatorExpr> {
    exprs(&[
        "[1,[5,3]]", "[3,[5,1]]", "[3,[6,2]]", "[5,[6,2]]", "[1,[6,3]]", "[4,[6,3]]", "[5,[6,3]]", "[1,[6,4]]",
    ])
}

/// Degree-3 generators `δ_1..δ_8`, paired with the `β_j`.
pub fn hexagon_deltas() -> Vec<CommutatorExpr> {
    exprs(&[
        "[6,[4,2]]", "[4,[6,2]]", "[4,[5,1]]", "[3,[4,1]]", "[4,[5,2]]", "[2,[5,1]]", "[2,[4,1]]", "[3,[5,2]]",
    ])
}

/// Degree-4 generators `γ_1..γ_9`, paired with the `α_i`.
pub fn hexagon_gammas() -> Vec<CommutatorExpr> {
    exprs(&[
        "[4,[5,[6,2]]]",
        "[3,[5,[6,2]]]",
        "[3,[4,[6,2]]]",
        "[1,[5,[6,3]]]",
        "[1,[4,[6,3]]]",
        "[3,[4,[5,1]]]",
        "[1,[2,[6,4]]]",
        "[2,[4,[5,1]]]",
        "[2,[3,[5,1]]]",
    ])
}

/// Signs of `γ_i` inside the corrected generators `γ'_i`.
pub const HEXAGON_GAMMA_SIGNS: [i64; 9] = [-1, 1, -1, 1, -1, 1, -1, -1, 1];

/// `σ_j`: `-1` for `j ∈ {2, 7, 8}`, else `+1`.
pub const HEXAGON_SIGMA: [i64; 8] = [1, -1, 1, 1, 1, 1, -1, -1];

/// The products `[[μ_a,μ_b],[μ_c,μ_d]]` with unknown coefficients `k_1..k_12`,
/// each with the index (from 0) of the `α_i` it is bracketed with.
pub fn hexagon_additional() -> Vec<(usize, CommutatorExpr)> {
    let rows = [
        (0, "[[2,5],[4,6]]"),
        (1, "[[5,3],[6,2]]"),
        (1, "[[6,3],[5,2]]"),
        (2, "[[4,2],[6,3]]"),
        (3, "[[6,3],[5,1]]"),
        (4, "[[4,1],[6,3]]"),
        (4, "[[6,4],[3,1]]"),
        (5, "[[5,3],[4,1]]"),
        (6, "[[4,1],[6,2]]"),
        (7, "[[4,2],[5,1]]"),
        (7, "[[4,1],[5,2]]"),
        (8, "[[5,2],[3,1]]"),
    ];
    rows.iter().map(|(n, e)| (*n, CommutatorExpr::parse(e).expect("built-in commutator parses"))).collect()
}

/// `Σ ±[α_i, γ_i] + Σ σ_j [β_j, δ_j] + Σ k_n [α_{i(n)}, extra_n]`.
pub fn build_hexagon_template() -> RelationTemplate {
    let alphas = hexagon_alphas();
    let mut t = RelationTemplate::default();
    for ((a, g), s) in alphas.iter().zip(hexagon_gammas()).zip(HEXAGON_GAMMA_SIGNS) {
        t.fixed_term(s, CommutatorExpr::bracket(a.clone(), g));
    }
    for ((b, d), s) in hexagon_betas().into_iter().zip(hexagon_deltas()).zip(HEXAGON_SIGMA) {
        t.fixed_term(s, CommutatorExpr::bracket(b, d));
    }
    for (n, (row, extra)) in hexagon_additional().into_iter().enumerate() {
        t.unknown_term(&format!("k{}", n + 1), CommutatorExpr::bracket(alphas[row].clone(), extra));
    }
    t
}

fn assignment(values: [i64; 12]) -> BTreeMap<String, i64> {
    values.iter().enumerate().map(|(n, &k)| (format!("k{}", n + 1), k)).collect()
}

/// Values of `k_1..k_12` as printed with the corrected generators `γ'_i`.
/// These do not make the template vanish; see [`hexagon_vanishing_assignment`].
pub fn hexagon_printed_assignment() -> BTreeMap<String, i64> {
    assignment([1, 1, -1, 1, -1, 1, -1, -1, 0, 0, 0, 0])
}

/// The unique solution of the hexagon template with `k_9 = … = k_12 = 0`.
/// It differs from the printed values in the signs of `k_2, k_3, k_5, k_7, k_8`.
pub fn hexagon_vanishing_assignment() -> BTreeMap<String, i64> {
    assignment([1, -1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0])
}

/// Built-in templates by name, with `values` filled where known.
pub fn preset_template(name: &str) -> Option<(SimplicialComplex, RelationTemplate)> {
    match name {
        "pentagon" => Some((SimplicialComplex::polygon_boundary(5).ok()?, pentagon_relation_template())),
        "hexagon" => {
            let mut t = build_hexagon_template();
            t.values = hexagon_vanishing_assignment();
            Some((SimplicialComplex::polygon_boundary(6).ok()?, t))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon_relation_vanishes() {
        assert!(verify_zero(&build_pentagon_relation().unwrap()));
    }

    #[test]
    fn single_pentagon_summand_survives() {
        let alg = pentagon_algebra();
        let e = alg.expand(&pentagon_relation_template().fixed[0].expr).unwrap();
        assert!(!verify_zero(&e));
        assert_eq!(e.len(), 16);
    }

    #[test]
    fn hexagon_template_shape() {
        let t = build_hexagon_template();
        assert_eq!((t.fixed.len(), t.unknowns.len()), (17, 12));
        assert_eq!(t.degree().unwrap(), 6);
        assert_eq!(HEXAGON_SIGMA[0], 1);
        assert_eq!(HEXAGON_SIGMA[1], -1);
    }

    #[test]
    fn hexagon_assignments() {
        let alg = hexagon_algebra();
        let t = build_hexagon_template();
        assert!(verify_zero(&t.instantiate(&alg, &hexagon_vanishing_assignment()).unwrap()));
        assert!(!verify_zero(&t.instantiate(&alg, &hexagon_printed_assignment()).unwrap()));
        let sol = solve_coefficients(&t, &alg).unwrap().unwrap();
        assert!(sol.contains_integers(&hexagon_vanishing_assignment()));
        assert!(!sol.contains_integers(&hexagon_printed_assignment()));
        assert_eq!(sol.dimension(), 4);
    }

    #[test]
    fn empty_unknowns_solve_trivially() {
        let sol = solve_coefficients(&pentagon_relation_template(), &pentagon_algebra()).unwrap().unwrap();
        assert!(sol.ids.is_empty());
        assert_eq!(sol.dimension(), 0);
    }

    #[test]
    fn inconsistent_template() {
        let alg = pentagon_algebra();
        let mut t = RelationTemplate::default();
        t.fixed_term(1, CommutatorExpr::parse("[3,1]").unwrap());
        t.unknown_term("k", CommutatorExpr::parse("[4,2]").unwrap());
        assert_eq!(solve_coefficients(&t, &alg).unwrap(), None);
    }

    #[test]
    fn mixed_degrees_rejected() {
        let mut t = RelationTemplate::default();
        t.fixed_term(1, CommutatorExpr::parse("[3,1]").unwrap());
        t.fixed_term(1, CommutatorExpr::parse("[4,[5,2]]").unwrap());
        assert!(matches!(t.degree(), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn json_round_trip() {
        let t = build_hexagon_template();
        assert_eq!(RelationTemplate::from_json(&t.to_json()).unwrap(), t);
        let parsed = RelationTemplate::from_json(r#"{"fixed":[{"coeff":-1,"expr":"[[3,1],[4,[5,2]]]"}]}"#).unwrap();
        assert_eq!(parsed.fixed[0].coeff, -1);
        assert!(RelationTemplate::from_json(r#"{"fixd":[]}"#).is_err());
    }
}
