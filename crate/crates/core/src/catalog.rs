//! The 23 Niemeier lattices with roots, built from root components and glue.
//!
//! Coordinates are with respect to the concatenated simple roots of the
//! components, in the order listed. Simple roots follow the Bourbaki
//! numbering: `A_n` is the chain `1..n`; `D_n` is the chain `1..n-2` with
//! `n-1` and `n` attached to `n-2`; `E_k` is the chain `1,3,4,..,k` with `2`
//! attached to `4`.

use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::PermAction;
use crate::lattice::{Lattice, RootKind, RootLabel};
use crate::linalg::{int, rat, IntMatrix, Rat, RatMatrix};

/// Gram matrix of a simple-root basis: `-2` on the diagonal, `1` for adjacent roots.
pub fn root_gram(label: RootLabel) -> IntMatrix {
    let n = label.rank;
    let mut g = IntMatrix::zeros(n, n);
    for i in 0..n {
        g.set(i, i, int(-2));
    }
    let mut link = |a: usize, b: usize| {
        g.set(a - 1, b - 1, int(1));
        g.set(b - 1, a - 1, int(1));
    };
    match label.kind {
        RootKind::A => (1..n).for_each(|i| link(i, i + 1)),
        RootKind::D => {
            (1..n - 1).for_each(|i| link(i, i + 1));
            link(n - 2, n);
        }
        RootKind::E => {
            link(1, 3);
            link(2, 4);
            (3..n).for_each(|i| link(i, i + 1));
        }
    }
    g
}

pub fn root_lattice(kind: RootKind, n: usize) -> Result<Lattice> {
    Lattice::from_gram(root_gram(RootLabel::new(kind, n)?))
}

/// The discriminant representative `ε_which` in simple-root coordinates.
pub fn epsilon_vector(kind: RootKind, n: usize, which: usize) -> Result<Vec<Rat>> {
    let label = RootLabel::new(kind, n)?;
    let bad = || Error::InvalidLabel(format!("epsilon {which} of {label}"));
    let mut v = vec![Rat::zero(); n];
    match (kind, which) {
        (RootKind::A, 1) => {
            for (i, x) in v.iter_mut().enumerate() {
                *x = rat(i as i64 + 1, n as i64 + 1);
            }
        }
        (RootKind::D, 1..=3) => {
            let half = rat(1, 2);
            let quarter = rat(1, 4);
            if which == 2 {
                v[n - 2] = half.clone();
                v[n - 1] = half;
            } else {
                for i in (0..n - 2).step_by(2) {
                    v[i] = half.clone();
                }
                if n.is_multiple_of(2) {
                    v[if which == 1 { n - 2 } else { n - 1 }] = half;
                } else {
                    let s = if which == 1 { rat(1, 1) } else { rat(-1, 1) };
                    v[n - 2] = &s * &quarter;
                    v[n - 1] = -(&s * &quarter);
                }
            }
        }
        (RootKind::E, 1) | (RootKind::E, 2) if n == 6 => {
            let s = if which == 1 { 1 } else { -1 };
            v[0] = rat(s, 3);
            v[2] = rat(-s, 3);
            v[4] = rat(s, 3);
            v[5] = rat(-s, 3);
        }
        (RootKind::E, 1) if n == 7 => {
            for i in [1, 4, 6] {
                v[i] = rat(1, 2);
            }
        }
        _ => return Err(bad()),
    }
    Ok(v)
}

/// One `coef · ε_which` term on component `component` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GlueTerm {
    pub coef: i64,
    pub which: usize,
    pub component: usize,
}

/// A glue vector as an integer combination of ε vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlueVector {
    pub terms: Vec<GlueTerm>,
}

impl GlueVector {
    /// Parse `"2e1_1+4e1_2-e3_3"`: coefficient, `e`, ε index, `_`, component.
    pub fn parse(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("glue vector {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ if terms.is_empty() => (1, rest),
                _ => return Err(err()),
            };
            let end = body[1..].find(['+', '-']).map_or(body.len(), |k| k + 1);
            let term = &body[..end];
            rest = &body[end..];
            let (coef, tail) = term.split_once('e').ok_or_else(err)?;
            let coef: i64 = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| err())? };
            let (which, comp) = tail.split_once('_').ok_or_else(err)?;
            terms.push(GlueTerm {
                coef: sign * coef,
                which: which.parse().map_err(|_| err())?,
                component: comp.parse().map_err(|_| err())?,
            });
        }
        Ok(Self { terms })
    }
}

impl fmt::Display for GlueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            let sign = if t.coef < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            let c = t.coef.abs();
            let c = if c == 1 { String::new() } else { c.to_string() };
            write!(f, "{sign}{c}e{}_{}", t.which, t.component)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NiemeierSpec {
    pub index: usize,
    pub components: Vec<RootLabel>,
    pub glue: Vec<GlueVector>,
}

impl NiemeierSpec {
    /// Offset of each component's first simple root in ambient coordinates.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.components.len());
        let mut acc = 0;
        for c in &self.components {
            off.push(acc);
            acc += c.rank;
        }
        off
    }

    pub fn dimension(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    /// Ambient index (0-based) of the simple root at Bourbaki position `pos` of component `comp` (both 1-based).
    pub fn root_index(&self, pos: usize, comp: usize) -> Result<usize> {
        let c = self.components.get(comp.wrapping_sub(1)).ok_or(Error::InvalidLabel(format!("component {comp}")))?;
        if pos == 0 || pos > c.rank {
            return Err(Error::InvalidLabel(format!("simple root {pos} of component {comp} ({c})")));
        }
        Ok(self.offsets()[comp - 1] + pos - 1)
    }

    pub fn ambient_gram(&self) -> IntMatrix {
        let blocks: Vec<IntMatrix> = self.components.iter().map(|c| root_gram(*c)).collect();
        IntMatrix::block_diagonal(&blocks)
    }

    pub fn glue_coordinates(&self, g: &GlueVector) -> Result<Vec<Rat>> {
        let mut v = vec![Rat::zero(); self.dimension()];
        let off = self.offsets();
        for t in &g.terms {
            let c = self
                .components
                .get(t.component.wrapping_sub(1))
                .ok_or(Error::InvalidLabel(format!("component {}", t.component)))?;
            let e = epsilon_vector(c.kind, c.rank, t.which)?;
            for (i, x) in e.into_iter().enumerate() {
                v[off[t.component - 1] + i] += x * Rat::from_integer(int(t.coef));
            }
        }
        Ok(v)
    }

    /// Unit columns followed by the glue columns.
    pub fn generator_matrix(&self) -> Result<RatMatrix> {
        let n = self.dimension();
        let glue: Vec<Vec<Rat>> = self.glue.iter().map(|g| self.glue_coordinates(g)).collect::<Result<_>>()?;
        Ok(RatMatrix::identity(n).hstack(&RatMatrix::from_columns(n, &glue)))
    }

    pub fn label(&self) -> String {
        crate::lattice::RootSystem::new(self.components.clone()).to_string()
    }
}

/// A constructed Niemeier lattice together with its defining data.
#[derive(Clone, Debug)]
pub struct Niemeier {
    pub spec: NiemeierSpec,
    pub lattice: Lattice,
    /// Unit columns followed by glue columns.
    pub generators: RatMatrix,
    dual: OnceLock<RatMatrix>,
}

impl Niemeier {
    pub fn index(&self) -> usize {
        self.spec.index
    }

    pub fn ambient_gram(&self) -> &IntMatrix {
        self.lattice.ambient_gram()
    }

    /// Dual vectors `e*_i` of the simple roots.
    pub fn dual_roots(&self) -> &RatMatrix {
        self.dual.get_or_init(|| {
            crate::linalg::rational_inverse(&self.ambient_gram().to_rat()).expect("root lattice is nondegenerate")
        })
    }
}

const D6_GLUE: [&str; 12] = [
    "e1_2+e2_3+e3_4",
    "e3_2+e1_3+e2_4",
    "e2_2+e3_3+e1_4",
    "e1_1+e3_3+e2_4",
    "e2_1+e1_3+e3_4",
    "e3_1+e2_3+e1_4",
    "e2_1+e3_2+e1_4",
    "e1_1+e2_2+e3_4",
    "e3_1+e1_2+e2_4",
    "e3_1+e2_2+e1_3",
    "e1_1+e3_2+e2_3",
    "e2_1+e1_2+e3_3",
];

const GOLAY_WORDS: [[usize; 12]; 23] = [
    [1, 7, 9, 12, 13, 16, 17, 19, 21, 22, 23, 24],
    [1, 2, 8, 10, 13, 14, 17, 18, 20, 22, 23, 24],
    [1, 2, 3, 9, 11, 14, 15, 18, 19, 21, 23, 24],
    [1, 2, 3, 4, 10, 12, 15, 16, 19, 20, 22, 24],
    [1, 2, 3, 4, 5, 11, 13, 16, 17, 20, 21, 23],
    [1, 3, 4, 5, 6, 12, 14, 17, 18, 21, 22, 24],
    [1, 2, 4, 5, 6, 7, 13, 15, 18, 19, 22, 23],
    [1, 3, 5, 6, 7, 8, 14, 16, 19, 20, 23, 24],
    [1, 2, 4, 6, 7, 8, 9, 15, 17, 20, 21, 24],
    [1, 2, 3, 5, 7, 8, 9, 10, 16, 18, 21, 22],
    [1, 3, 4, 6, 8, 9, 10, 11, 17, 19, 22, 23],
    [1, 4, 5, 7, 9, 10, 11, 12, 18, 20, 23, 24],
    [1, 2, 5, 6, 8, 10, 11, 12, 13, 19, 21, 24],
    [1, 2, 3, 6, 7, 9, 11, 12, 13, 14, 20, 22],
    [1, 3, 4, 7, 8, 10, 12, 13, 14, 15, 21, 23],
    [1, 4, 5, 8, 9, 11, 13, 14, 15, 16, 22, 24],
    [1, 2, 5, 6, 9, 10, 12, 14, 15, 16, 17, 23],
    [1, 3, 6, 7, 10, 11, 13, 15, 16, 17, 18, 24],
    [1, 2, 4, 7, 8, 11, 12, 14, 16, 17, 18, 19],
    [1, 3, 5, 8, 9, 12, 13, 15, 17, 18, 19, 20],
    [1, 4, 6, 9, 10, 13, 14, 16, 18, 19, 20, 21],
    [1, 5, 7, 10, 11, 14, 15, 17, 19, 20, 21, 22],
    [1, 6, 8, 11, 12, 15, 16, 18, 20, 21, 22, 23],
];

fn components(list: &[(RootKind, usize, usize)]) -> Vec<RootLabel> {
    list.iter().flat_map(|&(kind, rank, mult)| std::iter::repeat_n(RootLabel { kind, rank }, mult)).collect()
}

/// Root components and glue for catalog index `i` in `1..=23`.
pub fn niemeier_spec(i: usize) -> Result<NiemeierSpec> {
    use RootKind::{A, D, E};
    let (comps, glue): (Vec<RootLabel>, Vec<String>) = match i {
        1 => (components(&[(D, 24, 1)]), vec!["e1_1".into()]),
        2 => (components(&[(D, 16, 1), (E, 8, 1)]), vec!["e1_1".into()]),
        3 => (components(&[(E, 8, 3)]), vec![]),
        4 => (components(&[(A, 24, 1)]), vec!["5e1_1".into()]),
        5 => (components(&[(D, 12, 2)]), strs(&["e1_1+e2_2", "e2_1+e1_2"])),
        6 => (components(&[(A, 17, 1), (E, 7, 1)]), strs(&["3e1_1+e1_2"])),
        7 => (components(&[(D, 10, 1), (E, 7, 2)]), strs(&["e1_1+e1_2", "e3_1+e1_3"])),
        8 => (components(&[(A, 15, 1), (D, 9, 1)]), strs(&["2e1_1+e1_2"])),
        9 => (components(&[(D, 8, 3)]), strs(&["e1_1+e2_2+e2_3", "e2_1+e1_2+e2_3", "e2_1+e2_2+e1_3"])),
        10 => (components(&[(A, 12, 2)]), strs(&["e1_1+5e1_2"])),
        11 => (components(&[(A, 11, 1), (D, 7, 1), (E, 6, 1)]), strs(&["e1_1+e1_2+e1_3"])),
        12 => (components(&[(E, 6, 4)]), strs(&["e1_1+e1_3+e2_4", "e1_1+e2_2+e1_4", "e1_1+e1_2+e2_3"])),
        13 => (components(&[(A, 9, 2), (D, 6, 1)]), strs(&["2e1_1+4e1_2", "5e1_1+e1_3", "5e1_2+e3_3"])),
        14 => (components(&[(D, 6, 4)]), strs(&D6_GLUE)),
        15 => (components(&[(A, 8, 3)]), strs(&["4e1_1+e1_2+e1_3", "e1_1+4e1_2+e1_3", "e1_1+e1_2+4e1_3"])),
        16 => (components(&[(A, 7, 2), (D, 5, 2)]), strs(&["e1_1+e1_2+e1_3+e2_4", "e1_1+7e1_2+e2_3+e1_4"])),
        17 => (
            components(&[(A, 6, 4)]),
            strs(&["e1_1+2e1_2+e1_3+6e1_4", "e1_1+6e1_2+2e1_3+e1_4", "e1_1+e1_2+6e1_3+2e1_4"]),
        ),
        18 => (
            components(&[(A, 5, 4), (D, 4, 1)]),
            strs(&[
                "2e1_1+2e1_3+4e1_4",
                "2e1_1+4e1_2+2e1_4",
                "2e1_1+2e1_2+4e1_3",
                "3e1_1+3e1_2+e1_5",
                "3e1_1+3e1_3+e2_5",
                "3e1_1+3e1_4+e3_5",
            ]),
        ),
        19 => (
            components(&[(D, 4, 6)]),
            strs(&[
                "e1_3+e1_4+e1_5+e1_6",
                "e1_2+e1_4+e2_5+e3_6",
                "e1_1+e1_4+e3_5+e2_6",
                "e2_3+e2_4+e2_5+e2_6",
                "e2_2+e2_4+e3_5+e1_6",
                "e2_1+e2_4+e1_5+e3_6",
            ]),
        ),
        20 => (
            components(&[(A, 4, 6)]),
            strs(&[
                "e1_1+e1_3-e1_4-e1_5+e1_6",
                "e1_1+e1_2+e1_4-e1_5-e1_6",
                "e1_1-e1_2+e1_3+e1_5-e1_6",
                "e1_1-e1_2-e1_3+e1_4+e1_6",
                "e1_1+e1_2-e1_3-e1_4+e1_5",
            ]),
        ),
        21 => (
            components(&[(A, 3, 8)]),
            strs(&[
                "-e1_1+2e1_2+e1_5+e1_7+e1_8",
                "-e1_1+e1_2+2e1_3+e1_6+e1_8",
                "-e1_1+e1_2+e1_3+2e1_4+e1_7",
                "-e1_1+e1_3+e1_4+2e1_5+e1_8",
                "-e1_1+e1_2+e1_4+e1_5+2e1_6",
                "-e1_1+e1_3+e1_5+e1_6+2e1_7",
                "-e1_1+e1_4+e1_6+e1_7+2e1_8",
            ]),
        ),
        22 => (
            components(&[(A, 2, 12)]),
            strs(&[
                "e1_1+e1_7-e1_9+e1_10-e1_11-e1_12",
                "e1_2+e1_7-e1_8-e1_9-e1_10+e1_11",
                "e1_3+e1_8-e1_9-e1_10-e1_11+e1_12",
                "e1_4-e1_7+e1_8-e1_9+e1_11-e1_12",
                "e1_5+e1_7+e1_8+e1_10+e1_11+e1_12",
                "e1_6-e1_7-e1_8-e1_9+e1_10+e1_12",
            ]),
        ),
        23 => (
            components(&[(A, 1, 24)]),
            GOLAY_WORDS.iter().map(|w| w.iter().map(|k| format!("e1_{k}")).collect::<Vec<_>>().join("+")).collect(),
        ),
        _ => return Err(Error::NotInCatalog(i)),
    };
    let glue = glue.iter().map(|g| GlueVector::parse(g)).collect::<Result<_>>()?;
    Ok(NiemeierSpec { index: i, components: comps, glue })
}

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Construct the Niemeier lattice with catalog index `i`.
pub fn build_niemeier(i: usize) -> Result<Niemeier> {
    let spec = niemeier_spec(i)?;
    let generators = spec.generator_matrix()?;
    let lattice = Lattice::generated_by(spec.ambient_gram(), &generators)?;
    Ok(Niemeier { spec, lattice, generators, dual: OnceLock::new() })
}

/// Shared, lazily built catalog lattice.
pub fn niemeier(i: usize) -> Result<&'static Niemeier> {
    static CATALOG: OnceLock<Vec<OnceLock<Niemeier>>> = OnceLock::new();
    if !(1..=23).contains(&i) {
        return Err(Error::NotInCatalog(i));
    }
    let cells = CATALOG.get_or_init(|| (0..23).map(|_| OnceLock::new()).collect());
    Ok(cells[i - 1].get_or_init(|| build_niemeier(i).expect("catalog data is valid")))
}

/// Generators of the symmetry group of the simple roots, where they are known as explicit permutations.
pub fn a_group_generators(i: usize) -> Result<Vec<PermAction>> {
    let spec = niemeier_spec(i)?;
    let cycles: Vec<&str> = match i {
        1 | 2 => vec![],
        3 => vec![
            "(a1_1 a1_2)(a2_1 a2_2)(a3_1 a3_2)(a4_1 a4_2)(a5_1 a5_2)(a6_1 a6_2)(a7_1 a7_2)(a8_1 a8_2)",
            "(a1_2 a1_3)(a2_2 a2_3)(a3_2 a3_3)(a4_2 a4_3)(a5_2 a5_3)(a6_2 a6_3)(a7_2 a7_3)(a8_2 a8_3)",
        ],
        4 => vec!["(a1_1 a24_1)(a2_1 a23_1)(a3_1 a22_1)(a4_1 a21_1)(a5_1 a20_1)(a6_1 a19_1)(a7_1 a18_1)(a8_1 a17_1)(a9_1 a16_1)(a10_1 a15_1)(a11_1 a14_1)(a12_1 a13_1)"],
        5 => vec!["(a1_1 a1_2)(a2_1 a2_2)(a3_1 a3_2)(a4_1 a4_2)(a5_1 a5_2)(a6_1 a6_2)(a7_1 a7_2)(a8_1 a8_2)(a9_1 a9_2)(a10_1 a10_2)(a11_1 a11_2)(a12_1 a12_2)"],
        6 => vec!["(a1_1 a17_1)(a2_1 a16_1)(a3_1 a15_1)(a4_1 a14_1)(a5_1 a13_1)(a6_1 a12_1)(a7_1 a11_1)(a8_1 a10_1)"],
        7 => vec!["(a9_1 a10_1)(a1_2 a1_3)(a2_2 a2_3)(a3_2 a3_3)(a4_2 a4_3)(a5_2 a5_3)(a6_2 a6_3)(a7_2 a7_3)"],
        8 => vec!["(a1_1 a15_1)(a2_1 a14_1)(a3_1 a13_1)(a4_1 a12_1)(a5_1 a11_1)(a6_1 a10_1)(a7_1 a9_1)(a8_2 a9_2)"],
        9 => vec![
            "(a1_1 a1_2)(a2_1 a2_2)(a3_1 a3_2)(a4_1 a4_2)(a5_1 a5_2)(a6_1 a6_2)(a7_1 a7_2)(a8_1 a8_2)",
            "(a1_2 a1_3)(a2_2 a2_3)(a3_2 a3_3)(a4_2 a4_3)(a5_2 a5_3)(a6_2 a6_3)(a7_2 a7_3)(a8_2 a8_3)",
        ],
        11 => vec!["(a1_1 a11_1)(a2_1 a10_1)(a3_1 a9_1)(a4_1 a8_1)(a5_1 a7_1)(a6_2 a7_2)(a1_3 a6_3)(a3_3 a5_3)"],
        22 => vec![
            "(a1_1 a2_1)(a1_2 a2_2)(a1_3 a2_3)(a1_4 a2_4)(a1_5 a2_5)(a1_6 a2_6)(a1_7 a2_7)(a1_8 a2_8)(a1_9 a2_9)(a1_10 a2_10)(a1_11 a2_11)(a1_12 a2_12)",
            "(a1_2 a1_3 a1_4 a1_5 a1_6 a1_7 a1_8 a1_9 a1_10 a1_11 a1_12)(a2_2 a2_3 a2_4 a2_5 a2_6 a2_7 a2_8 a2_9 a2_10 a2_11 a2_12)",
            "(a1_2 a2_2)(a1_3 a2_3)(a1_4 a1_8 a1_12 a1_9)(a2_4 a2_8 a2_12 a2_9)(a1_5 a2_11 a1_6 a2_7)(a2_5 a1_11 a2_6 a1_7)",
            "(a1_1 a1_2 a2_1 a2_2)(a1_3 a2_12 a2_3 a1_12)(a1_4 a1_7 a2_4 a2_7)(a1_5 a2_9 a2_5 a1_9)(a1_6 a2_10 a2_6 a1_10)(a1_8 a1_11 a2_8 a2_11)",
        ],
        23 => vec![
            "(a2 a3 a4 a5 a6 a7 a8 a9 a10 a11 a12 a13 a14 a15 a16 a17 a18 a19 a20 a21 a22 a23 a24)",
            "(a4 a18 a11 a8 a10)(a5 a14 a15 a20 a6)(a9 a19 a12 a13 a24)(a16 a21 a23 a22 a17)",
            "(a1 a2)(a3 a24)(a4 a13)(a5 a17)(a6 a19)(a7 a11)(a8 a21)(a9 a15)(a10 a22)(a12 a18)(a14 a23)(a16 a20)",
        ],
        10 | 12 | 13 | 14 | 15 | 16 | 17 | 18 | 19 | 20 | 21 => {
            return crate::cases::case_generators(i);
        }
        _ => return Err(Error::NotInCatalog(i)),
    };
    cycles.into_iter().map(|c| PermAction::parse(c, &spec)).collect()
}
