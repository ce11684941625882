//! Hand-chosen bases for the boundaries of the pentagon and the hexagon.
//!
//! For these two complexes the cohomology classes, cellular cycles and
//! iterated commutators below are row-aligned: row `n` of a cycle list is
//! the Hurewicz image of row `n` of the matching commutator list, and is
//! dual to row `n` of the matching cohomology list.

use std::collections::BTreeMap;

use crate::cellular::CellularChain;
use crate::koszul::{CohomologyClass, KoszulAlgebra};
use crate::loopalg::CommutatorExpr;
use crate::simplicial::SimplicialComplex;

const PENTAGON_H3: [&str; 5] = ["u1 v3", "u2 v4", "u3 v5", "u4 v1", "u5 v2"];
const PENTAGON_H4: [&str; 5] = ["u4 u5 v2", "- u1 u5 v3", "u1 u2 v4", "u2 u3 v5", "u3 u4 v1"];
const PENTAGON_TOP: &str = "u1 u2 u3 v4 v5";

const PENTAGON_CYCLES_3: [&str; 5] = [
    "S1 D3 + D1 S3",
    "S2 D4 + D2 S4",
    "S3 D5 + D3 S5",
    "S4 D1 + D4 S1",
    "S5 D2 + D5 S2",
];
const PENTAGON_CYCLES_4: [&str; 5] = [
    "D2 S4 S5 - S2 S4 D5",
    "- S1 S3 D5 - S1 D3 S5",
    "- D1 S2 S4 + S1 S2 D4",
    "- D2 S3 S5 + S2 S3 D5",
    "D1 S3 S4 - S1 S3 D4",
];

const PENTAGON_COMMUTATORS_2: [(i64, &str); 5] = [(1, "[3,1]"), (1, "[4,2]"), (1, "[5,3]"), (1, "[4,1]"), (1, "[5,2]")];
const PENTAGON_COMMUTATORS_3: [(i64, &str); 5] =
    [(1, "[4,[5,2]]"), (-1, "[1,[5,3]]"), (-1, "[2,[4,1]]"), (-1, "[3,[5,2]]"), (1, "[3,[4,1]]")];

const HEXAGON_H3: [&str; 9] =
    ["u1 v3", "u1 v4", "u1 v5", "u2 v4", "u2 v5", "u2 v6", "u3 v5", "u3 v6", "u4 v6"];
const HEXAGON_H5: [&str; 9] = [
    "u4 u5 u6 v2",
    "- u2 u3 u5 v6 + u2 u3 u6 v5",
    "u2 u3 u4 v6",
    "- u1 u5 u6 v3",
    "- u1 u3 u6 v4 + u1 u4 u6 v3",
    "- u3 u4 u5 v1",
    "u1 u2 u6 v4",
    "u1 u2 u4 v5 - u1 u2 u5 v4",
    "- u1 u2 u3 v5",
];
const HEXAGON_H4_LEFT: [&str; 8] =
    ["u1 u5 v3", "u3 u5 v1", "u2 u3 v6", "u5 u6 v2", "u1 u6 v3", "u3 u4 v6", "u5 u6 v3", "u1 u6 v4"];
const HEXAGON_H4_RIGHT: [&str; 8] = [
    "- u2 u6 v4",
    "- u4 u6 v2 + u2 u6 v4",
    "- u4 u5 v1",
    "u3 u4 v1",
    "u4 u5 v2",
    "- u2 u5 v1 + u1 u5 v2",
    "- u2 u4 v1 + u1 u4 v2",
    "- u3 u5 v2 + u2 u5 v3",
];
// A degree-8 generator needs a face in the v-part, so it is u_J v_I with I
// an edge and J its complement.
const HEXAGON_TOP: &str = "u1 u2 u3 u4 v5 v6";

const HEXAGON_CYCLES_3: [&str; 9] = [
    "S1 D3 + D1 S3",
    "S1 D4 + D1 S4",
    "S1 D5 + D1 S5",
    "S2 D4 + D2 S4",
    "S2 D5 + D2 S5",
    "S2 D6 + D2 S6",
    "S3 D5 + D3 S5",
    "S3 D6 + D3 S6",
    "S4 D6 + D4 S6",
];
const HEXAGON_CYCLES_5: [&str; 9] = [
    "D2 S4 S5 S6 + S2 S4 S5 D6",
    "- S2 S3 S5 D6 - D2 S3 S5 S6",
    "D2 S3 S4 S6 + S2 S3 S4 D6",
    "S1 S3 S5 D6 - S1 D3 S5 S6",
    "S1 D3 S4 S6 - S1 S3 S4 D6",
    "- D1 S3 S4 S5 - S1 S3 S4 D5",
    "S1 S2 D4 S6 + S1 S2 S4 D6",
    "D1 S2 S4 S5 + S1 S2 S4 D5",
    "- S1 S2 S3 D5 - D1 S2 S3 S5",
];
const HEXAGON_CYCLES_4_LEFT: [&str; 8] = [
    "S1 S3 D5 + S1 D3 S5",
    "- S1 S3 D5 + D1 S3 S5",
    "S2 S3 D6 - D2 S3 S6",
    "D2 S5 S6 - S2 S5 D6",
    "S1 D3 S6 + S1 S3 D6",
    "S3 S4 D6 - D3 S4 S6",
    "- S3 S5 D6 + D3 S5 S6",
    "S1 S4 D6 + S1 D4 S6",
];
const HEXAGON_CYCLES_4_RIGHT: [&str; 8] = [
    "- D2 S4 S6 - S2 D4 S6",
    "S2 S4 D6 - D2 S4 S6",
    "S1 S4 D5 - D1 S4 S5",
    "- S1 S3 D4 + D1 S3 S4",
    "- S2 S4 D5 + D2 S4 S5",
    "S1 S2 D5 - D1 S2 S5",
    "- D1 S2 S4 + S1 S2 D4",
    "- D2 S3 S5 + S2 S3 D5",
];

const HEXAGON_COMMUTATORS_2: [(i64, &str); 9] = [
    (1, "[3,1]"),
    (1, "[4,1]"),
    (1, "[5,1]"),
    (1, "[4,2]"),
    (1, "[5,2]"),
    (1, "[6,2]"),
    (1, "[5,3]"),
    (1, "[6,3]"),
    (1, "[6,4]"),
];
const HEXAGON_COMMUTATORS_4: [(i64, &str); 9] = [
    (1, "[4,[5,[6,2]]]"),
    (-1, "[3,[5,[6,2]]]"),
    (1, "[3,[4,[6,2]]]"),
    (-1, "[1,[5,[6,3]]]"),
    (1, "[1,[4,[6,3]]]"),
    (-1, "[3,[4,[5,1]]]"),
    (1, "[1,[2,[6,4]]]"),
    (1, "[2,[4,[5,1]]]"),
    (-1, "[2,[3,[5,1]]]"),
];
const HEXAGON_COMMUTATORS_3_LEFT: [(i64, &str); 8] = [
    (1, "[1,[5,3]]"),
    (1, "[3,[5,1]]"),
    (-1, "[3,[6,2]]"),
    (1, "[5,[6,2]]"),
    (1, "[1,[6,3]]"),
    (-1, "[4,[6,3]]"),
    (1, "[5,[6,3]]"),
    (1, "[1,[6,4]]"),
];
const HEXAGON_COMMUTATORS_3_RIGHT: [(i64, &str); 8] = [
    (1, "[6,[4,2]]"),
    (-1, "[4,[6,2]]"),
    (-1, "[4,[5,1]]"),
    (1, "[3,[4,1]]"),
    (1, "[4,[5,2]]"),
    (-1, "[2,[5,1]]"),
    (-1, "[2,[4,1]]"),
    (-1, "[3,[5,2]]"),
];

/// Which of the two preset complexes `K` is, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Pentagon,
    Hexagon,
}

impl Preset {
    pub fn detect(complex: &SimplicialComplex) -> Option<Preset> {
        let matches = |n| SimplicialComplex::polygon_boundary(n).is_ok_and(|p| &p == complex);
        if matches(5) {
            Some(Preset::Pentagon)
        } else if matches(6) {
            Some(Preset::Hexagon)
        } else {
            None
        }
    }

    pub fn complex(self) -> SimplicialComplex {
        let n = match self {
            Preset::Pentagon => 5,
            Preset::Hexagon => 6,
        };
        SimplicialComplex::polygon_boundary(n).expect("polygon")
    }
}

fn chains(rows: &[&str]) -> Vec<CellularChain> {
    rows.iter().map(|r| CellularChain::parse(r).expect("preset chain parses")).collect()
}

fn commutators(rows: &[(i64, &str)]) -> Vec<(i64, CommutatorExpr)> {
    rows.iter()
        .map(|(s, e)| (*s, CommutatorExpr::parse(e).expect("preset commutator parses")))
        .collect()
}

/// Preset cellular cycle bases by degree.
pub fn reference_cycle_basis(complex: &SimplicialComplex) -> Option<BTreeMap<usize, Vec<CellularChain>>> {
    let map = match Preset::detect(complex)? {
        Preset::Pentagon => BTreeMap::from([(3, chains(&PENTAGON_CYCLES_3)), (4, chains(&PENTAGON_CYCLES_4))]),
        Preset::Hexagon => {
            let mut h4 = chains(&HEXAGON_CYCLES_4_LEFT);
            h4.extend(chains(&HEXAGON_CYCLES_4_RIGHT));
            BTreeMap::from([(3, chains(&HEXAGON_CYCLES_3)), (4, h4), (5, chains(&HEXAGON_CYCLES_5))])
        }
    };
    Some(map)
}

/// Signed iterated commutators whose Hurewicz images are the preset
/// cycles, keyed by homology degree of `Z_K` and row-aligned with
/// [`reference_cycle_basis`].
pub fn reference_commutators(complex: &SimplicialComplex) -> Option<BTreeMap<usize, Vec<(i64, CommutatorExpr)>>> {
    let map = match Preset::detect(complex)? {
        Preset::Pentagon => BTreeMap::from([
            (3, commutators(&PENTAGON_COMMUTATORS_2)),
            (4, commutators(&PENTAGON_COMMUTATORS_3)),
        ]),
        Preset::Hexagon => {
            let mut h4 = commutators(&HEXAGON_COMMUTATORS_3_LEFT);
            h4.extend(commutators(&HEXAGON_COMMUTATORS_3_RIGHT));
            BTreeMap::from([
                (3, commutators(&HEXAGON_COMMUTATORS_2)),
                (4, h4),
                (5, commutators(&HEXAGON_COMMUTATORS_4)),
            ])
        }
    };
    Some(map)
}

/// Two row-aligned lists of cohomology classes whose products pair row `n`
/// with row `n` onto the top class.
#[derive(Clone, Debug)]
pub struct ReferencePairing {
    pub p: usize,
    pub q: usize,
    pub left: Vec<CohomologyClass>,
    pub right: Vec<CohomologyClass>,
}

/// Preset cohomology data of `Z_K`: the top class and the dual pairings.
#[derive(Clone, Debug)]
pub struct ReferenceCohomology {
    pub top: CohomologyClass,
    pub pairings: Vec<ReferencePairing>,
}

impl ReferenceCohomology {
    /// The pairing for `(p, q)`, transposing a stored `(q, p)` one.
    pub fn pairing(&self, p: usize, q: usize) -> Option<ReferencePairing> {
        self.pairings.iter().find_map(|r| {
            if (r.p, r.q) == (p, q) {
                Some(r.clone())
            } else if (r.q, r.p) == (p, q) {
                Some(ReferencePairing { p, q, left: r.right.clone(), right: r.left.clone() })
            } else {
                None
            }
        })
    }

    /// Basis of `H^p` formed by the preset classes in that degree.
    pub fn basis(&self, p: usize) -> Option<Vec<CohomologyClass>> {
        let r = self.pairing(p, self.top.degree.checked_sub(p)?)?;
        if r.p == r.q {
            let mut all = r.left;
            all.extend(r.right);
            Some(all)
        } else {
            Some(r.left)
        }
    }
}

fn classes(alg: &KoszulAlgebra, degree: usize, rows: &[&str]) -> Vec<CohomologyClass> {
    rows.iter()
        .map(|r| CohomologyClass {
            representative: alg.parse(r).expect("preset class parses"),
            degree,
        })
        .collect()
}

pub fn reference_cohomology(complex: &SimplicialComplex) -> Option<ReferenceCohomology> {
    let preset = Preset::detect(complex)?;
    let alg = KoszulAlgebra::new(complex);
    let data = match preset {
        Preset::Pentagon => ReferenceCohomology {
            top: classes(&alg, 7, &[PENTAGON_TOP]).remove(0),
            pairings: vec![ReferencePairing {
                p: 3,
                q: 4,
                left: classes(&alg, 3, &PENTAGON_H3),
                right: classes(&alg, 4, &PENTAGON_H4),
            }],
        },
        Preset::Hexagon => ReferenceCohomology {
            top: classes(&alg, 8, &[HEXAGON_TOP]).remove(0),
            pairings: vec![
                ReferencePairing { p: 3, q: 5, left: classes(&alg, 3, &HEXAGON_H3), right: classes(&alg, 5, &HEXAGON_H5) },
                ReferencePairing {
                    p: 4,
                    q: 4,
                    left: classes(&alg, 4, &HEXAGON_H4_LEFT),
                    right: classes(&alg, 4, &HEXAGON_H4_RIGHT),
                },
            ],
        },
    };
    Some(data)
}
