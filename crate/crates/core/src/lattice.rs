//! The `Lattice` value: a full-rank set of rational columns inside an ambient
//! quadratic space with integer Gram matrix.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    dot, hermite_columns, int, module_basis, rat_int, rational_inverse, saturate_columns, signature, smith_normal_form,
    solve_many, solve_rational, Int, IntMatrix, Rat, RatMatrix,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ambient_gram: IntMatrix,
    basis: RatMatrix,
    gram: RatMatrix,
}

impl Lattice {
    /// Lattice spanned by the columns of `basis`, which must be linearly independent.
    pub fn new(ambient_gram: IntMatrix, basis: RatMatrix) -> Result<Self> {
        if !ambient_gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if basis.rows() != ambient_gram.rows() {
            return Err(Error::Dimension(format!(
                "basis has {} rows, ambient has dimension {}",
                basis.rows(),
                ambient_gram.rows()
            )));
        }
        if basis.rank() != basis.cols() {
            return Err(Error::Dimension("basis columns are linearly dependent".into()));
        }
        let gram = basis.transpose().mul(&ambient_gram.to_rat()).mul(&basis);
        Ok(Self { ambient_gram, basis, gram })
    }

    /// Lattice generated (not necessarily freely) by the columns of `gens`.
    pub fn generated_by(ambient_gram: IntMatrix, gens: &RatMatrix) -> Result<Self> {
        Self::new(ambient_gram, module_basis(gens))
    }

    pub fn from_gram(g: IntMatrix) -> Result<Self> {
        if !g.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = g.rows();
        let gram = g.to_rat();
        Ok(Self { ambient_gram: g, basis: RatMatrix::identity(n), gram })
    }

    pub fn from_gram_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_gram(IntMatrix::from_i64_rows(rows))
    }

    pub fn zero(ambient_gram: IntMatrix) -> Self {
        let n = ambient_gram.rows();
        Self { ambient_gram, basis: RatMatrix::zeros(n, 0), gram: RatMatrix::zeros(0, 0) }
    }

    pub fn ambient_gram(&self) -> &IntMatrix {
        &self.ambient_gram
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_gram.rows()
    }

    pub fn int_gram(&self) -> Option<IntMatrix> {
        self.gram.to_int()
    }

    pub fn is_integral(&self) -> bool {
        self.gram.is_integral()
    }

    pub fn is_even(&self) -> bool {
        self.is_integral() && (0..self.rank()).all(|i| self.gram.get(i, i).to_integer().is_even())
    }

    pub fn det(&self) -> Rat {
        self.gram.det()
    }

    pub fn signature(&self) -> (usize, usize, usize) {
        signature(&self.gram).expect("Gram matrix is symmetric")
    }

    pub fn is_negative_definite(&self) -> bool {
        self.signature() == (0, 0, self.rank())
    }

    /// Ambient pairing of two vectors.
    pub fn pair(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let gy: Vec<Rat> = self.ambient_gram.to_rat().mul_vec(y);
        dot(x, &gy)
    }

    /// Coordinates of an ambient vector in this lattice's basis, if it lies in the rational span.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        solve_rational(&self.basis, v)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coordinates(v).is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    /// Every column of `m` lies in the lattice.
    pub fn contains_columns(&self, m: &RatMatrix) -> bool {
        solve_many(&self.basis, m).is_some_and(|x| x.is_integral())
    }

    /// Same sublattice of the same ambient space.
    pub fn same_module(&self, other: &Lattice) -> bool {
        self.ambient_gram == other.ambient_gram && module_basis(&self.basis) == module_basis(&other.basis)
    }

    /// Ambient vector with the given integer coordinates in this basis.
    pub fn vector(&self, coords: &[Int]) -> Vec<Rat> {
        let c: Vec<Rat> = coords.iter().map(rat_int).collect();
        self.basis.mul_vec(&c)
    }

    /// Same lattice with its Gram matrix multiplied by `k`, as a standalone lattice.
    pub fn scaled(&self, k: i64) -> Result<Lattice> {
        let g = self.int_gram().ok_or(Error::Dimension("scaling a non-integral lattice".into()))?;
        Lattice::from_gram(g.scale(&int(k)))
    }

    /// Orthogonal direct sum as a standalone lattice.
    pub fn direct_sum(parts: &[Lattice]) -> Result<Lattice> {
        let grams: Vec<IntMatrix> = parts
            .iter()
            .map(|p| p.int_gram().ok_or(Error::Dimension("direct sum of a non-integral lattice".into())))
            .collect::<Result<_>>()?;
        Lattice::from_gram(IntMatrix::block_diagonal(&grams))
    }

    /// `(K ⊗ Q) ∩ self` for the module generated by the columns of `k`.
    pub fn primitive_closure(&self, k: &RatMatrix) -> Result<Lattice> {
        if k.rows() != self.ambient_dim() {
            return Err(Error::Dimension("generator columns have the wrong length".into()));
        }
        let mut coords = Vec::with_capacity(k.cols());
        for (j, col) in k.columns().iter().enumerate() {
            coords.push(self.coordinates(col).ok_or(Error::GeneratorsOutsideAmbient(j))?);
        }
        let c = RatMatrix::from_columns(self.rank(), &coords);
        let (ci, _) = c.clear_denominators();
        let sat = saturate_columns(&ci);
        self.sublattice_from_coords(&sat)
    }

    fn sublattice_from_coords(&self, coords: &IntMatrix) -> Result<Lattice> {
        if coords.cols() == 0 {
            return Ok(Lattice::zero(self.ambient_gram.clone()));
        }
        let basis = self.basis.mul(&coords.to_rat());
        let gram = basis.transpose().mul(&self.ambient_gram.to_rat()).mul(&basis);
        Ok(Lattice { ambient_gram: self.ambient_gram.clone(), basis, gram })
    }

    /// Whether `self` is primitive inside `ambient`.
    pub fn is_primitive_in(&self, ambient: &Lattice) -> Result<bool> {
        if !ambient.contains_columns(&self.basis) {
            return Err(Error::NotASublattice);
        }
        let closure = ambient.primitive_closure(&self.basis)?;
        Ok(closure.same_module(self))
    }

    pub fn discriminant_group(&self) -> Result<DiscriminantGroup> {
        let g = self.int_gram().ok_or(Error::Dimension("discriminant group of a non-integral lattice".into()))?;
        let snf = smith_normal_form(&g);
        if snf.rank() < self.rank() {
            return Err(Error::Degenerate);
        }
        Ok(DiscriminantGroup::from_invariants(snf.divisors))
    }

    /// Columns `e*_i` in ambient coordinates with `<e*_i, e_j> = δ_ij`.
    pub fn dual_basis(&self) -> Result<RatMatrix> {
        let inv = rational_inverse(&self.gram).map_err(|_| Error::Degenerate)?;
        Ok(self.basis.mul(&inv))
    }

    /// All vectors of square `-2`, as ambient vectors.
    pub fn enumerate_roots(&self) -> Result<Vec<Vec<Rat>>> {
        Ok(self.root_coordinates()?.iter().map(|c| self.vector(c)).collect())
    }

    /// All vectors of square `-2`, as integer coordinates in this basis.
    pub fn root_coordinates(&self) -> Result<Vec<Vec<Int>>> {
        if !self.is_negative_definite() {
            return Err(Error::NotNegativeDefinite);
        }
        let q = self.gram.scale(&Rat::from_integer(int(-1)));
        let two = Rat::from_integer(int(2));
        Ok(short_vectors(&q, &two).into_iter().filter(|(_, n)| *n == two).map(|(v, _)| v).collect())
    }

    pub fn root_components(&self) -> Result<RootSystem> {
        let roots = self.root_coordinates()?;
        Ok(RootSystem::from_roots(&roots, &self.gram))
    }

    /// `x + (x·δ)δ`.
    pub fn reflect(&self, delta: &[Rat], x: &[Rat]) -> Result<Vec<Rat>> {
        let n = self.pair(delta, delta);
        if n != Rat::from_integer(int(-2)) {
            return Err(Error::NotARoot(n.to_string()));
        }
        let k = self.pair(x, delta);
        Ok(x.iter().zip(delta).map(|(a, d)| a + &k * d).collect())
    }

    /// Vectors of `self` orthogonal to `s`; always primitive in `self`.
    pub fn orthogonal_complement(&self, s: &Lattice) -> Result<Lattice> {
        if s.ambient_gram != self.ambient_gram || !self.contains_columns(s.basis()) {
            return Err(Error::NotASublattice);
        }
        if s.rank() == 0 {
            return Ok(self.clone());
        }
        let m = s.basis.transpose().mul(&self.ambient_gram.to_rat()).mul(&self.basis);
        let ker = m.kernel();
        if ker.cols() == 0 {
            return Ok(Lattice::zero(self.ambient_gram.clone()));
        }
        let (ki, _) = ker.clear_denominators();
        let sat = saturate_columns(&ki);
        self.sublattice_from_coords(&sat)
    }

    /// Canonical (Hermite) form of the basis, useful for comparisons and output.
    pub fn canonical(&self) -> Lattice {
        let basis = module_basis(&self.basis);
        let gram = basis.transpose().mul(&self.ambient_gram.to_rat()).mul(&basis);
        Lattice { ambient_gram: self.ambient_gram.clone(), basis, gram }
    }

    pub fn to_json(&self) -> LatticeJson {
        let (num, den) = self.basis.clear_denominators();
        LatticeJson {
            ambient_gram: self.ambient_gram.to_rows().iter().map(|r| r.iter().map(big_to_json).collect()).collect(),
            basis_num: num.to_rows().iter().map(|r| r.iter().map(big_to_json).collect()).collect(),
            basis_den: big_to_json(&den),
        }
    }

    pub fn from_json(j: &LatticeJson) -> Result<Lattice> {
        let g = json_rows(&j.ambient_gram)?;
        let num = json_rows(&j.basis_num)?;
        let den = json_to_big(&j.basis_den)?;
        if den <= Int::zero() {
            return Err(Error::Parse("basis_den must be positive".into()));
        }
        let n = g.len();
        let gram = if n == 0 { IntMatrix::zeros(0, 0) } else { IntMatrix::from_rows_vec(&g) };
        let cols = num.first().map_or(0, |r| r.len());
        if num.len() != n || num.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("basis_num must have one row per ambient coordinate".into()));
        }
        let basis = if cols == 0 { RatMatrix::zeros(n, 0) } else { IntMatrix::from_rows_vec(&num).to_rat() };
        Lattice::new(gram, basis.scale(&Rat::new(Int::one(), den)))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Lattice> {
        let j: LatticeJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Lattice::from_json(&j)
    }
}

/// JSON form: `{"ambient_gram": [[int]], "basis_num": [[int]], "basis_den": int}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub ambient_gram: Vec<Vec<serde_json::Number>>,
    pub basis_num: Vec<Vec<serde_json::Number>>,
    pub basis_den: serde_json::Number,
}

fn big_to_json(x: &Int) -> serde_json::Number {
    x.to_string().parse().expect("integer literal")
}

fn json_to_big(n: &serde_json::Number) -> Result<Int> {
    n.to_string().parse::<Int>().map_err(|_| Error::Parse(format!("not an integer: {n}")))
}

fn json_rows(rows: &[Vec<serde_json::Number>]) -> Result<Vec<Vec<Int>>> {
    rows.iter().map(|r| r.iter().map(json_to_big).collect()).collect()
}

/// Finite abelian group given by its invariant factors (each > 1, dividing the next).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiscriminantGroup {
    pub elementary_divisors: Vec<Int>,
}

impl DiscriminantGroup {
    /// From a divisor chain possibly containing 1's.
    pub fn from_invariants(divisors: Vec<Int>) -> Self {
        Self { elementary_divisors: divisors.into_iter().filter(|d| !d.is_one()).collect() }
    }

    /// Normalize an arbitrary product of cyclic groups `Z/n_1 × Z/n_2 × ...`.
    pub fn from_cyclic_factors(factors: &[u64]) -> Self {
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &n in factors {
            for (p, e) in factorize(n) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        let len = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
        let mut inv = vec![Int::one(); len];
        for (p, mut exps) in by_prime {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (k, e) in exps.into_iter().enumerate() {
                let slot = len - 1 - k;
                inv[slot] *= Int::from(p).pow(e);
            }
        }
        Self::from_invariants(inv)
    }

    pub fn trivial() -> Self {
        Self { elementary_divisors: vec![] }
    }

    pub fn order(&self) -> Int {
        self.elementary_divisors.iter().product()
    }

    /// Minimal number of generators.
    pub fn min_generators(&self) -> usize {
        self.elementary_divisors.len()
    }

    /// Number of invariant factors divisible by `p`.
    pub fn l_p(&self, p: u64) -> usize {
        let p = Int::from(p);
        self.elementary_divisors.iter().filter(|d| d.is_multiple_of(&p)).count()
    }

    /// Primes dividing the order.
    pub fn primes(&self) -> Vec<u64> {
        match self.elementary_divisors.last().and_then(|d| d.to_u64()) {
            Some(d) => factorize(d).into_iter().map(|(p, _)| p).collect(),
            None => vec![],
        }
    }
}

impl fmt::Display for DiscriminantGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elementary_divisors.is_empty() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut ds = self.elementary_divisors.clone();
        ds.reverse();
        let mut i = 0;
        while i < ds.len() {
            let mut j = i;
            while j < ds.len() && ds[j] == ds[i] {
                j += 1;
            }
            let e = j - i;
            parts.push(if e == 1 { format!("Z/{}", ds[i]) } else { format!("(Z/{})^{}", ds[i], e) });
            i = j;
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Prime factorization by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All nonzero `x` with `xᵀ q x ≤ bound` for positive definite `q`, up to sign
/// both included, with their norms.
#[allow(clippy::needless_range_loop)]
pub fn short_vectors(q: &RatMatrix, bound: &Rat) -> Vec<(Vec<Int>, Rat)> {
    let m = q.rows();
    if m == 0 {
        return vec![];
    }
    // Q(x) = Σ_i d_i (x_i + Σ_{j>i} l_ij x_j)^2
    let mut a = q.clone();
    let mut d = vec![Rat::zero(); m];
    let mut l = RatMatrix::zeros(m, m);
    for i in 0..m {
        d[i] = a.get(i, i).clone();
        for j in i + 1..m {
            l.set(i, j, a.get(i, j) / &d[i]);
        }
        for k in i + 1..m {
            for j in k..m {
                let v = a.get(k, j) - l.get(i, k) * l.get(i, j) * &d[i];
                a.set(k, j, v);
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![Int::zero(); m];
    enumerate_level(m - 1, bound.clone(), &d, &l, &mut x, bound, &mut out);
    out
}

#[allow(clippy::needless_range_loop)]
fn enumerate_level(
    i: usize,
    budget: Rat,
    d: &[Rat],
    l: &RatMatrix,
    x: &mut Vec<Int>,
    bound: &Rat,
    out: &mut Vec<(Vec<Int>, Rat)>,
) {
    let m = x.len();
    let mut center = Rat::zero();
    for j in i + 1..m {
        if !x[j].is_zero() && !l.get(i, j).is_zero() {
            center -= l.get(i, j) * rat_int(&x[j]);
        }
    }
    let start = center.round().to_integer();
    let fits = |v: &Int| -> Option<Rat> {
        let t = rat_int(v) - &center;
        let c = &d[i] * &t * &t;
        (c <= budget).then(|| &budget - c)
    };
    let visit = |v: Int, rest: Rat, x: &mut Vec<Int>, out: &mut Vec<(Vec<Int>, Rat)>| {
        x[i] = v;
        if i == 0 {
            if x.iter().any(|c| !c.is_zero()) {
                out.push((x.clone(), bound - &rest));
            }
        } else {
            enumerate_level(i - 1, rest, d, l, x, bound, out);
        }
    };
    let mut v = start.clone();
    while let Some(rest) = fits(&v) {
        visit(v.clone(), rest, x, out);
        v += 1;
    }
    let mut v = start - 1;
    while let Some(rest) = fits(&v) {
        visit(v.clone(), rest, x, out);
        v -= 1;
    }
    x[i] = Int::zero();
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RootKind {
    A,
    D,
    E,
}

/// Irreducible root system label such as `A_9` or `E_8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RootLabel {
    pub kind: RootKind,
    pub rank: usize,
}

impl RootLabel {
    pub fn new(kind: RootKind, rank: usize) -> Result<Self> {
        let ok = match kind {
            RootKind::A => rank >= 1,
            RootKind::D => rank >= 4,
            RootKind::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(Self { kind, rank })
        } else {
            Err(Error::InadmissibleLabel(format!("{:?}{}", kind, rank)))
        }
    }

    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match (self.kind, n) {
            (RootKind::A, _) => n * (n + 1),
            (RootKind::D, _) => 2 * n * (n - 1),
            (RootKind::E, 6) => 72,
            (RootKind::E, 7) => 126,
            _ => 240,
        }
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

/// Multiset of irreducible components, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystem {
    pub components: Vec<RootLabel>,
    pub root_count: usize,
}

impl RootSystem {
    pub fn new(mut components: Vec<RootLabel>) -> Self {
        components.sort();
        let root_count = components.iter().map(|c| c.root_count()).sum();
        Self { components, root_count }
    }

    pub fn empty() -> Self {
        Self { components: vec![], root_count: 0 }
    }

    /// Classify roots given as coordinates with respect to a basis with Gram matrix `gram`.
    pub fn from_roots(roots: &[Vec<Int>], gram: &RatMatrix) -> Self {
        let positive: Vec<&Vec<Int>> =
            roots.iter().filter(|r| r.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_positive())).collect();
        let set: HashSet<&Vec<Int>> = positive.iter().copied().collect();
        let simple: Vec<&Vec<Int>> = positive
            .iter()
            .copied()
            .filter(|r| {
                !positive.iter().any(|p| {
                    let diff: Vec<Int> = r.iter().zip(p.iter()).map(|(a, b)| a - b).collect();
                    set.contains(&diff)
                })
            })
            .collect();
        let k = simple.len();
        let vecs: Vec<Vec<Rat>> = simple.iter().map(|r| r.iter().map(rat_int).collect()).collect();
        let gv: Vec<Vec<Rat>> = vecs.iter().map(|v| gram.mul_vec(v)).collect();
        let mut adj = vec![vec![]; k];
        for i in 0..k {
            for j in i + 1..k {
                if !dot(&vecs[i], &gv[j]).is_zero() {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        let mut seen = vec![false; k];
        let mut comps = Vec::new();
        for s in 0..k {
            if seen[s] {
                continue;
            }
            let mut stack = vec![s];
            let mut nodes = vec![];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                nodes.push(u);
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comps.push(classify_diagram(&nodes, &adj));
        }
        let mut rs = Self::new(comps);
        rs.root_count = roots.len();
        rs
    }
}

fn classify_diagram(nodes: &[usize], adj: &[Vec<usize>]) -> RootLabel {
    let n = nodes.len();
    let branch = nodes.iter().copied().find(|&u| adj[u].len() >= 3);
    let Some(b) = branch else {
        return RootLabel { kind: RootKind::A, rank: n };
    };
    let mut arms: Vec<usize> = adj[b]
        .iter()
        .map(|&start| {
            let (mut prev, mut cur, mut len) = (b, start, 1);
            loop {
                let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
                if next.len() != 1 {
                    break len;
                }
                prev = cur;
                cur = next[0];
                len += 1;
            }
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => RootLabel { kind: RootKind::D, rank: n },
        [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => RootLabel { kind: RootKind::E, rank: n },
        _ => panic!("root system diagram with arms {arms:?} is not simply laced finite type"),
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        let c = &self.components;
        while i < c.len() {
            let mut j = i;
            while j < c.len() && c[j] == c[i] {
                j += 1;
            }
            parts.push(if j - i == 1 { c[i].to_string() } else { format!("{}{}", j - i, c[i]) });
            i = j;
        }
        write!(f, "{}", parts.join("+"))
    }
}

/// Integer column basis of `self` expressed in another lattice's coordinates, in Hermite form.
pub fn relative_coordinates(outer: &Lattice, inner: &Lattice) -> Result<IntMatrix> {
    let x = solve_many(outer.basis(), inner.basis()).ok_or(Error::NotASublattice)?;
    let xi = x.to_int().ok_or(Error::NotASublattice)?;
    Ok(hermite_columns(&xi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn a2() -> Lattice {
        Lattice::from_gram_rows(&[vec![-2, 1], vec![1, -2]]).unwrap()
    }

    #[test]
    fn discriminant_of_a2() {
        let d = a2().discriminant_group().unwrap();
        assert_eq!(d.elementary_divisors, vec![int(3)]);
        assert_eq!(d.order(), int(3));
    }

    #[test]
    fn dual_basis_a1_a2() {
        let a1 = Lattice::from_gram_rows(&[vec![-2]]).unwrap();
        assert_eq!(a1.dual_basis().unwrap().col(0), vec![rat(-1, 2)]);
        let d = a2().dual_basis().unwrap();
        assert_eq!(d.col(0), vec![rat(-2, 3), rat(-1, 3)]);
    }

    #[test]
    fn reflection_in_a2() {
        let l = a2();
        let a1 = vec![rat(1, 1), rat(0, 1)];
        let a2v = vec![rat(0, 1), rat(1, 1)];
        assert_eq!(l.reflect(&a1, &a2v).unwrap(), vec![rat(1, 1), rat(1, 1)]);
        assert_eq!(l.reflect(&a1, &a1).unwrap(), vec![rat(-1, 1), rat(0, 1)]);
        let bad = vec![rat(1, 1), rat(1, 1)];
        let ok = l.reflect(&bad, &a1);
        assert!(ok.is_ok(), "α1+α2 is a root of A2");
        let two = vec![rat(2, 1), rat(0, 1)];
        assert!(matches!(l.reflect(&two, &a1), Err(Error::NotARoot(_))));
    }

    #[test]
    fn roots_of_a1_and_a2() {
        let a1 = Lattice::from_gram_rows(&[vec![-2]]).unwrap();
        assert_eq!(a1.enumerate_roots().unwrap().len(), 2);
        assert_eq!(a2().enumerate_roots().unwrap().len(), 6);
        assert_eq!(a2().root_components().unwrap().to_string(), "A2");
    }

    #[test]
    fn cyclic_normalization() {
        let g = DiscriminantGroup::from_cyclic_factors(&[60, 3]);
        assert_eq!(g.elementary_divisors, vec![int(3), int(60)]);
        assert_eq!(g.to_string(), "Z/60 x Z/3");
        let g = DiscriminantGroup::from_cyclic_factors(&[4, 4, 4, 4, 2, 2]);
        assert_eq!(g.to_string(), "(Z/4)^4 x (Z/2)^2");
        assert_eq!(DiscriminantGroup::from_cyclic_factors(&[2, 3]), DiscriminantGroup::from_cyclic_factors(&[6]));
    }

    #[test]
    fn hyperbolic_plane_is_not_definite() {
        let u = Lattice::from_gram_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(u.signature(), (1, 0, 1));
        assert_eq!(u.enumerate_roots(), Err(Error::NotNegativeDefinite));
    }

    #[test]
    fn json_round_trip() {
        let l = Lattice::new(
            IntMatrix::from_i64_rows(&[vec![-2, 1], vec![1, -2]]),
            RatMatrix::from_vec(2, 1, vec![rat(1, 3), rat(2, 3)]),
        )
        .unwrap();
        let s = l.to_json_string();
        assert_eq!(s, r#"{"ambient_gram":[[-2,1],[1,-2]],"basis_num":[[1],[2]],"basis_den":3}"#);
        assert_eq!(Lattice::from_json_str(&s).unwrap().to_json_string(), s);
    }
}
