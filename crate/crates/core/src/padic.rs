//! p-adic Jordan decompositions and the discriminant-form invariants
//! consumed by the embedding criteria.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{int, rat_int, rational_inverse, smith_normal_form, Int, IntMatrix, Rat, RatMatrix};

/// Class of a unit modulo squares of p-adic units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum UnitClass {
    Square,
    NonSquare,
    /// Residue in {1, 3, 5, 7} modulo 8 (only for p = 2).
    Mod8(u8),
}

/// `p^valuation · u` modulo `(Z_p^*)^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct UnitSquareClass {
    pub p: u64,
    pub valuation: i64,
    pub unit: UnitClass,
    /// Compare up to sign.
    pub sign_ambiguous: bool,
}

impl UnitSquareClass {
    pub fn trivial(p: u64) -> Self {
        let unit = if p == 2 { UnitClass::Mod8(1) } else { UnitClass::Square };
        Self { p, valuation: 0, unit, sign_ambiguous: false }
    }

    /// Class of a nonzero rational.
    pub fn of(x: &Rat, p: u64) -> Self {
        assert!(!x.is_zero(), "class of zero");
        let pb = Int::from(p);
        let (vn, un) = split_valuation(x.numer(), &pb);
        let (vd, ud) = split_valuation(x.denom(), &pb);
        let unit = unit_class(&(un * ud), p);
        Self { p, valuation: vn - vd, unit, sign_ambiguous: false }
    }

    pub fn of_int(x: &Int, p: u64) -> Self {
        Self::of(&rat_int(x), p)
    }

    pub fn with_sign_ambiguity(mut self) -> Self {
        self.sign_ambiguous = true;
        self
    }

    pub fn negate(&self) -> Self {
        let unit = match self.unit {
            UnitClass::Mod8(r) => UnitClass::Mod8((8 - r) % 8),
            u if self.p % 4 == 1 => u,
            UnitClass::Square => UnitClass::NonSquare,
            UnitClass::NonSquare => UnitClass::Square,
        };
        Self { unit, ..*self }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "classes at different primes");
        let unit = match (self.unit, other.unit) {
            (UnitClass::Mod8(a), UnitClass::Mod8(b)) => UnitClass::Mod8(((a as u16 * b as u16) % 8) as u8),
            (a, b) if a == b => UnitClass::Square,
            _ => UnitClass::NonSquare,
        };
        Self {
            p: self.p,
            valuation: self.valuation + other.valuation,
            unit,
            sign_ambiguous: self.sign_ambiguous || other.sign_ambiguous,
        }
    }

    /// Equality modulo unit squares, up to sign when either side is sign-ambiguous.
    pub fn congruent(&self, other: &Self) -> bool {
        let same = |a: &Self, b: &Self| a.p == b.p && a.valuation == b.valuation && a.unit == b.unit;
        same(self, other) || ((self.sign_ambiguous || other.sign_ambiguous) && same(&self.negate(), other))
    }
}

impl fmt::Display for UnitSquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.sign_ambiguous { "±" } else { "" };
        let u = match self.unit {
            UnitClass::Square => "square".to_string(),
            UnitClass::NonSquare => "nonsquare".to_string(),
            UnitClass::Mod8(r) => format!("{r} mod 8"),
        };
        write!(f, "{sign}{}^{}·u (u {u})", self.p, self.valuation)
    }
}

fn split_valuation(x: &Int, p: &Int) -> (i64, Int) {
    let mut v = 0;
    let mut y = x.clone();
    while !y.is_zero() && y.is_multiple_of(p) {
        y /= p;
        v += 1;
    }
    (v, y)
}

fn unit_class(u: &Int, p: u64) -> UnitClass {
    if p == 2 {
        UnitClass::Mod8(u.mod_floor(&int(8)).to_u8().expect("residue"))
    } else if legendre(u, p) == 1 {
        UnitClass::Square
    } else {
        UnitClass::NonSquare
    }
}

/// Legendre symbol of a unit modulo an odd prime.
pub fn legendre(a: &Int, p: u64) -> i32 {
    let pb = Int::from(p);
    let r = a.mod_floor(&pb).modpow(&Int::from((p - 1) / 2), &pb);
    if r.is_one() {
        1
    } else if r.is_zero() {
        0
    } else {
        -1
    }
}

/// `p`-adic valuation of a nonzero rational.
pub fn valuation(x: &Rat, p: u64) -> i64 {
    let pb = Int::from(p);
    split_valuation(x.numer(), &pb).0 - split_valuation(x.denom(), &pb).0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Elementary piece of the elimination: a 1×1 or an even 2×2 block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub scale: i64,
    pub matrix: RatMatrix,
}

/// A Jordan constituent: all pieces of one scale.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanBlock {
    pub scale: i64,
    pub rank: usize,
    pub det_class: UnitSquareClass,
    /// Only meaningful at p = 2.
    pub parity: Option<Parity>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PadicJordanForm {
    pub p: u64,
    pub blocks: Vec<JordanBlock>,
    #[serde(skip)]
    pub pieces: Vec<Piece>,
}

impl PadicJordanForm {
    pub fn block(&self, scale: i64) -> Option<&JordanBlock> {
        self.blocks.iter().find(|b| b.scale == scale)
    }

    /// Product of the block determinants.
    pub fn det_class(&self) -> UnitSquareClass {
        self.blocks.iter().fold(UnitSquareClass::trivial(self.p), |acc, b| acc.mul(&b.det_class))
    }

    /// Product of the determinants of the blocks of positive scale.
    pub fn nonunimodular_det_class(&self) -> UnitSquareClass {
        self.blocks
            .iter()
            .filter(|b| b.scale > 0)
            .fold(UnitSquareClass::trivial(self.p), |acc, b| acc.mul(&b.det_class))
    }
}

/// Jordan splitting by symmetric elimination with a pivot of minimal valuation.
pub fn jordan_decompose(g: &IntMatrix, p: u64) -> Result<PadicJordanForm> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if g.det().is_zero() {
        return Err(Error::Degenerate);
    }
    let mut a = g.to_rat();
    let mut pieces = Vec::new();
    while a.rows() > 0 {
        let n = a.rows();
        let mut best: Option<(i64, usize, usize)> = None;
        for i in 0..n {
            for j in i..n {
                let x = a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let v = valuation(x, p);
                let better = match best {
                    None => true,
                    Some((bv, bi, bj)) => v < bv || (v == bv && i == j && bi != bj),
                };
                if better {
                    best = Some((v, i, j));
                }
            }
        }
        let (v, i, j) = best.expect("nondegenerate");
        let pivot: Vec<usize> = if i == j {
            vec![i]
        } else if p != 2 {
            // Replace e_i by e_i + e_j to get a diagonal entry of the same valuation.
            add_symmetric(&mut a, i, j);
            vec![i]
        } else {
            vec![i, j]
        };
        let (piece, rest) = split_off(&a, &pivot);
        pieces.push(Piece { scale: v, matrix: piece });
        a = rest;
    }
    let mut by_scale: BTreeMap<i64, Vec<&Piece>> = BTreeMap::new();
    for pc in &pieces {
        by_scale.entry(pc.scale).or_default().push(pc);
    }
    let blocks = by_scale
        .into_iter()
        .map(|(scale, ps)| {
            let rank = ps.iter().map(|pc| pc.matrix.rows()).sum();
            let det = ps.iter().fold(Rat::one(), |acc, pc| acc * pc.matrix.det());
            let parity =
                (p == 2).then(|| if ps.iter().any(|pc| pc.matrix.rows() == 1) { Parity::Odd } else { Parity::Even });
            JordanBlock { scale, rank, det_class: UnitSquareClass::of(&det, p), parity }
        })
        .collect();
    Ok(PadicJordanForm { p, blocks, pieces })
}

fn add_symmetric(a: &mut RatMatrix, i: usize, j: usize) {
    let n = a.rows();
    for k in 0..n {
        let v = a.get(i, k) + a.get(j, k);
        a.set(i, k, v);
    }
    for k in 0..n {
        let v = a.get(k, i) + a.get(k, j);
        a.set(k, i, v);
    }
}

/// Split `a` as `B ⊕ C` where `B` is the principal submatrix on `idx`.
fn split_off(a: &RatMatrix, idx: &[usize]) -> (RatMatrix, RatMatrix) {
    let n = a.rows();
    let rest: Vec<usize> = (0..n).filter(|k| !idx.contains(k)).collect();
    let sub = |rows: &[usize], cols: &[usize]| {
        let mut m = RatMatrix::zeros(rows.len(), cols.len());
        for (r, &i) in rows.iter().enumerate() {
            for (c, &j) in cols.iter().enumerate() {
                m.set(r, c, a.get(i, j).clone());
            }
        }
        m
    };
    let b = sub(idx, idx);
    let x = sub(&rest, idx);
    let c = sub(&rest, &rest);
    let binv = rational_inverse(&b).expect("pivot block is invertible");
    let schur = c.sub(&x.mul(&binv).mul(&x.transpose()));
    (b, schur)
}

/// Determinant of the non-unimodular p-adic part, i.e. of the lattice `K(q_{S_p})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DetK {
    pub class: UnitSquareClass,
    /// At p = 2 the form is not determined by the discriminant form alone.
    pub ambiguous_canonical_form: bool,
}

pub fn det_k_q_p(l: &Lattice, p: u64) -> Result<DetK> {
    let g = integral_gram(l)?;
    let jf = jordan_decompose(&g, p)?;
    let class = jf.nonunimodular_det_class();
    let ambiguous_canonical_form = p == 2 && splits_from_form(&jf);
    Ok(DetK { class, ambiguous_canonical_form })
}

/// The 2-adic discriminant form has an orthogonal summand `q_θ^{(2)}(2)`:
/// an odd Jordan constituent of scale 1.
pub fn splits_q_theta_2(l: &Lattice) -> Result<bool> {
    let g = integral_gram(l)?;
    Ok(splits_from_form(&jordan_decompose(&g, 2)?))
}

fn splits_from_form(jf: &PadicJordanForm) -> bool {
    jf.block(1).is_some_and(|b| b.parity == Some(Parity::Odd))
}

pub fn l_p(l: &Lattice, p: u64) -> Result<usize> {
    Ok(l.discriminant_group()?.l_p(p))
}

fn integral_gram(l: &Lattice) -> Result<IntMatrix> {
    let g = l.int_gram().ok_or(Error::Dimension("lattice is not integral".into()))?;
    if l.rank() == 0 || g.det().is_zero() {
        return Err(Error::Degenerate);
    }
    Ok(g)
}

/// Distribution of the discriminant quadratic form `q: A_L → Q/2Z`,
/// as value → number of group elements, computed by enumerating `L*/L`.
pub fn discriminant_form_values_brute(l: &Lattice) -> Result<BTreeMap<Rat, usize>> {
    let g = integral_gram(l)?;
    let snf = smith_normal_form(&g);
    let n = g.rows();
    let d = snf.diagonal();
    let v = snf.v.to_rat();
    let gr = g.to_rat();
    // x = V D^{-1} z for z in the box ∏ [0, d_i); only coordinates with d_i > 1 vary.
    let idx: Vec<usize> = (0..n).filter(|&i| !d[i].is_one()).collect();
    let gens: Vec<Vec<Rat>> = idx.iter().map(|&i| v.col(i).iter().map(|x| x / rat_int(&d[i])).collect()).collect();
    let pairing: Vec<Vec<Rat>> = gens
        .iter()
        .map(|a| {
            let ga = gr.mul_vec(a);
            gens.iter().map(|b| crate::linalg::dot(&ga, b)).collect()
        })
        .collect();
    let sizes: Vec<usize> = idx.iter().map(|&i| d[i].to_usize().expect("small discriminant")).collect();
    let n = idx.len();
    let mut out = BTreeMap::new();
    let mut z = vec![0usize; n];
    loop {
        let mut q = Rat::zero();
        for i in 0..n {
            for j in 0..n {
                if z[i] != 0 && z[j] != 0 {
                    q += &pairing[i][j] * Rat::from_integer(BigInt::from(z[i] * z[j]));
                }
            }
        }
        *out.entry(mod2(&q)).or_insert(0) += 1;
        let mut k = 0;
        loop {
            if k == n {
                return Ok(out);
            }
            z[k] += 1;
            if z[k] < sizes[k] {
                break;
            }
            z[k] = 0;
            k += 1;
        }
    }
}

/// The same distribution assembled from the p-adic Jordan forms of all primes dividing `|A_L|`.
pub fn discriminant_form_values_from_jordan(l: &Lattice) -> Result<BTreeMap<Rat, usize>> {
    let g = integral_gram(l)?;
    let disc = l.discriminant_group()?;
    let mut total: BTreeMap<Rat, usize> = BTreeMap::from([(Rat::zero(), 1)]);
    for p in disc.primes() {
        let jf = jordan_decompose(&g, p)?;
        let mut part: BTreeMap<Rat, usize> = BTreeMap::from([(Rat::zero(), 1)]);
        for pc in jf.pieces.iter().filter(|pc| pc.scale > 0) {
            let local = piece_values(pc, p);
            part = convolve(&part, &local);
        }
        total = convolve(&total, &part);
    }
    Ok(total)
}

fn convolve(a: &BTreeMap<Rat, usize>, b: &BTreeMap<Rat, usize>) -> BTreeMap<Rat, usize> {
    let mut out = BTreeMap::new();
    for (x, m) in a {
        for (y, k) in b {
            *out.entry(mod2(&(x + y))).or_insert(0) += m * k;
        }
    }
    out
}

fn mod2(x: &Rat) -> Rat {
    let two = Rat::from_integer(int(2));
    x - (x / &two).floor() * two
}

/// p-local rational with p-power denominator congruent to `x` (a p-adic unit multiple of a p-power).
fn p_part(x: &Rat, p: u64, precision: u32) -> Rat {
    // x = p^v · (a/b) with b prime to p; replace 1/b by its inverse modulo p^precision.
    if x.is_zero() {
        return Rat::zero();
    }
    let pb = Int::from(p);
    let v = valuation(x, p);
    let unit = x / pow_rat(&pb, v);
    let modulus = pb.pow(precision);
    let binv = unit.denom().extended_gcd(&modulus).x.mod_floor(&modulus);
    let u = (unit.numer() * binv).mod_floor(&modulus);
    rat_int(&u) * pow_rat(&pb, v)
}

fn pow_rat(p: &Int, v: i64) -> Rat {
    let base = rat_int(&p.pow(v.unsigned_abs() as u32));
    if v >= 0 {
        base
    } else {
        base.recip()
    }
}

fn piece_values(pc: &Piece, p: u64) -> BTreeMap<Rat, usize> {
    let k = pc.scale as u32;
    let inv = rational_inverse(&pc.matrix).expect("invertible piece");
    let order = Int::from(p).pow(k).to_usize().expect("small piece");
    let prec = 2 * k + 2;
    let m = inv.rows();
    let reduced: Vec<Vec<Rat>> = (0..m).map(|i| (0..m).map(|j| p_part(inv.get(i, j), p, prec)).collect()).collect();
    let mut out = BTreeMap::new();
    let mut z = vec![0usize; m];
    loop {
        let mut q = Rat::zero();
        for i in 0..m {
            for j in 0..m {
                q += &reduced[i][j] * Rat::from_integer(BigInt::from(z[i] * z[j]));
            }
        }
        *out.entry(lift_to_mod2(&q, p, k)).or_insert(0) += 1;
        let mut t = 0;
        loop {
            if t == m {
                return out;
            }
            z[t] += 1;
            if z[t] < order {
                break;
            }
            z[t] = 0;
            t += 1;
        }
    }
}

/// Values of the p-part are determined modulo `2` once reduced to p-power denominators.
fn lift_to_mod2(q: &Rat, p: u64, k: u32) -> Rat {
    if p == 2 {
        return mod2(q);
    }
    // For odd p the value is the unique representative modulo 2 whose numerator
    // over p^k is even.
    let r = mod2(q);
    let pk = Int::from(p).pow(k);
    let scaled = &r * rat_int(&pk);
    if scaled.is_integer() && scaled.to_integer().is_odd() {
        mod2(&(r + Rat::one()))
    } else {
        r
    }
}

/// Integer determinant factored over small primes, e.g. `-2^5·3^5·61·109`.
pub fn factor_string(x: &Int) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let sign = if x.is_negative() { "-" } else { "" };
    let mut n = x.abs();
    let mut parts = Vec::new();
    let mut p = Int::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            parts.push(if e == 1 { p.to_string() } else { format!("{p}^{e}") });
        }
        p += 1;
    }
    if n > Int::one() || parts.is_empty() {
        parts.push(n.to_string());
    }
    format!("{sign}{}", parts.join("·"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    #[test]
    fn a2_at_three() {
        let jf = jordan_decompose(&g(&[vec![-2, 1], vec![1, -2]]), 3).unwrap();
        assert_eq!(jf.blocks.len(), 2);
        assert_eq!((jf.blocks[0].scale, jf.blocks[0].rank), (0, 1));
        assert_eq!((jf.blocks[1].scale, jf.blocks[1].rank), (1, 1));
        assert_eq!(jf.blocks[0].det_class.unit, UnitClass::Square);
        assert_eq!(jf.blocks[1].det_class.unit, UnitClass::Square);
    }

    #[test]
    fn a1_at_two() {
        let jf = jordan_decompose(&g(&[vec![-2]]), 2).unwrap();
        assert_eq!(jf.blocks.len(), 1);
        let b = &jf.blocks[0];
        assert_eq!((b.scale, b.rank, b.parity), (1, 1, Some(Parity::Odd)));
        assert_eq!(b.det_class.unit, UnitClass::Mod8(7));
    }

    #[test]
    fn hyperbolic_plane_at_two_is_even() {
        let jf = jordan_decompose(&g(&[vec![0, 1], vec![1, 0]]), 2).unwrap();
        assert_eq!(jf.blocks[0].parity, Some(Parity::Even));
        assert_eq!(jf.blocks[0].rank, 2);
    }

    #[test]
    fn classes() {
        let c = UnitSquareClass::of(&Rat::from_integer(int(-243)), 3);
        assert_eq!(c.valuation, 5);
        assert_eq!(c.unit, UnitClass::NonSquare);
        let c = UnitSquareClass::of(&Rat::from_integer(int(160)), 2);
        assert_eq!((c.valuation, c.unit), (5, UnitClass::Mod8(5)));
        assert!(c.with_sign_ambiguity().congruent(&UnitSquareClass::of(&Rat::from_integer(int(-160)), 2)));
        assert!(!c.congruent(&UnitSquareClass::of(&Rat::from_integer(int(-160)), 2)));
    }

    #[test]
    fn factor_strings() {
        assert_eq!(factor_string(&int(2 * 2 * 2 * 2 * 2 * 243 * 61 * 109)), "2^5·3^5·61·109");
        assert_eq!(factor_string(&int(-7)), "-7");
    }
}
