//! Permutations of the simple roots of a Niemeier lattice and the lattices
//! they cut out: orbits, invariant and coinvariant sublattices.

use std::fmt;

use num_traits::Zero;
use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::catalog::{Niemeier, NiemeierSpec};
use crate::embed;
use crate::error::{Error, Result};
use crate::lattice::{DiscriminantGroup, Lattice, RootKind, RootLabel};
use crate::linalg::{Rat, RatMatrix};

/// A permutation of the simple roots, `perm[i]` being the image of root `i` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermAction {
    perm: Vec<usize>,
    cycles: Vec<Vec<(usize, usize)>>,
    source: String,
    labels: Vec<(usize, usize)>,
}

impl PermAction {
    pub fn identity(spec: &NiemeierSpec) -> Self {
        let n = spec.dimension();
        Self { perm: (0..n).collect(), cycles: vec![], source: String::new(), labels: root_labels(spec) }
    }

    /// Parse whitespace-separated cycles such as `(a11 a12 a91 a92)(a53 a63)`.
    ///
    /// A token is `a<i>_<j>` (position `i` of component `j`) or `a<i><j>` when the
    /// split is unique given the component ranks. When every component has rank
    /// one, `a<j>` names component `j`. A cycle `(x y z)` sends `x` to `y`, `y` to
    /// `z` and `z` to `x`.
    ///
    /// The listed roots need not cover whole components: the map is extended to
    /// the unique symmetry of the Dynkin diagram that agrees with it, keeping
    /// unlisted roots at their position where that leaves a choice.
    pub fn parse(s: &str, spec: &NiemeierSpec) -> Result<Self> {
        let listed = parse_cycles(s, spec)?;
        let perm = extend_to_diagram(&listed, spec)?;
        let labels = root_labels(spec);
        let cycles = cycles_of(&perm).into_iter().map(|c| c.into_iter().map(|i| labels[i]).collect()).collect();
        Ok(Self { perm, cycles, source: s.to_string(), labels })
    }

    /// Parse cycles as a permutation of the simple roots, without extension.
    pub fn parse_exact(s: &str, spec: &NiemeierSpec) -> Result<Self> {
        let listed = parse_cycles(s, spec)?;
        let perm: Vec<usize> = listed.iter().enumerate().map(|(i, m)| m.as_ref().map_or(i, |(j, _)| *j)).collect();
        let labels = root_labels(spec);
        let cycles = cycles_of(&perm).into_iter().map(|c| c.into_iter().map(|i| labels[i]).collect()).collect();
        Ok(Self { perm, cycles, source: s.to_string(), labels })
    }

    pub fn from_images(perm: Vec<usize>, spec: &NiemeierSpec) -> Result<Self> {
        let n = spec.dimension();
        let mut hit = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut hit[p], true)) {
            return Err(Error::Parse("not a permutation".into()));
        }
        let labels = root_labels(spec);
        let cycles = cycles_of(&perm).into_iter().map(|c| c.into_iter().map(|i| labels[i]).collect()).collect();
        let mut out = Self { perm, cycles, source: String::new(), labels };
        out.source = out.to_string();
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.perm
    }

    pub fn image(&self, i: usize) -> usize {
        self.perm[i]
    }

    /// The string this action was parsed from.
    pub fn source(&self) -> &str {
        &self.source
    }

    /// Disjoint cycles as `(position, component)` labels, as written in the source.
    pub fn cycle_labels(&self) -> &[Vec<(usize, usize)>] {
        &self.cycles
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PermAction) -> PermAction {
        let perm: Vec<usize> = other.perm.iter().map(|&j| self.perm[j]).collect();
        self.with_perm(perm)
    }

    pub fn inverse(&self) -> PermAction {
        let mut inv = vec![0; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            inv[j] = i;
        }
        self.with_perm(inv)
    }

    pub fn pow(&self, k: i64) -> PermAction {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = self.with_perm((0..self.perm.len()).collect());
        for _ in 0..k.unsigned_abs() {
            out = out.compose(&base);
        }
        out
    }

    pub fn order(&self) -> usize {
        cycles_of(&self.perm).iter().fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }

    fn with_perm(&self, perm: Vec<usize>) -> PermAction {
        let cycles = cycles_of(&perm).into_iter().map(|c| c.into_iter().map(|i| self.labels[i]).collect()).collect();
        let mut out = PermAction { perm, cycles, source: String::new(), labels: self.labels.clone() };
        out.source = out.to_string();
        out
    }

    /// Image of an ambient vector: `g(Σ x_i α_i) = Σ x_i α_{g(i)}`.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); v.len()];
        for (i, x) in v.iter().enumerate() {
            out[self.perm[i]] = x.clone();
        }
        out
    }
}

impl fmt::Display for PermAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return write!(f, "()");
        }
        for c in &self.cycles {
            let toks: Vec<String> = c.iter().map(|(p, k)| format!("a{p}_{k}")).collect();
            write!(f, "({})", toks.join(" "))?;
        }
        Ok(())
    }
}

fn root_labels(spec: &NiemeierSpec) -> Vec<(usize, usize)> {
    spec.components.iter().enumerate().flat_map(|(k, c)| (1..=c.rank).map(move |p| (p, k + 1))).collect()
}

fn cycles_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] || perm[s] == s {
            continue;
        }
        let mut c = vec![s];
        seen[s] = true;
        let mut x = perm[s];
        while x != s {
            seen[x] = true;
            c.push(x);
            x = perm[x];
        }
        out.push(c);
    }
    out
}

/// Images of the listed roots, each with the cycle it was written in.
fn parse_cycles(s: &str, spec: &NiemeierSpec) -> Result<Vec<Option<(usize, String)>>> {
    let mut listed: Vec<Option<(usize, String)>> = vec![None; spec.dimension()];
    let mut rest = s.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::Parse(format!("expected '(' at {rest:?}")));
        }
        let close = rest.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
        let body = &rest[1..close];
        let cycle_text = rest[..=close].to_string();
        rest = rest[close + 1..].trim_start();
        let mut idx = Vec::new();
        for tok in body.split_whitespace() {
            let (pos, comp) = parse_token(tok, spec)?;
            let k = spec.root_index(pos, comp)?;
            if let Some((_, prev)) = &listed[k] {
                return Err(Error::Parse(format!("root {tok} appears twice: in {prev} and in {cycle_text}")));
            }
            if idx.contains(&k) {
                return Err(Error::Parse(format!("root {tok} appears twice in {cycle_text}")));
            }
            idx.push(k);
        }
        if idx.is_empty() {
            return Err(Error::Parse(format!("empty cycle in {s:?}")));
        }
        for w in 0..idx.len() {
            listed[idx[w]] = Some((idx[(w + 1) % idx.len()], cycle_text.clone()));
        }
    }
    Ok(listed)
}

/// Symmetries of a connected Dynkin diagram as 0-based position maps.
fn diagram_automorphisms(label: RootLabel) -> Vec<Vec<usize>> {
    let n = label.rank;
    let id: Vec<usize> = (0..n).collect();
    let swap = |a: usize, b: usize| {
        let mut p = id.clone();
        p.swap(a, b);
        p
    };
    match label.kind {
        RootKind::A if n >= 2 => vec![id.clone(), (0..n).rev().collect()],
        RootKind::D if n == 4 => {
            let ends = [0, 2, 3];
            let mut out = Vec::new();
            for (a, b, c) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
                let mut p = id.clone();
                p[0] = ends[a];
                p[2] = ends[b];
                p[3] = ends[c];
                out.push(p);
            }
            out
        }
        RootKind::D => vec![id.clone(), swap(n - 2, n - 1)],
        RootKind::E if n == 6 => {
            let mut p = swap(0, 5);
            p.swap(2, 4);
            vec![id, p]
        }
        _ => vec![id],
    }
}

/// The unique symmetry of the Dynkin diagram extending a partial map of simple roots.
fn extend_to_diagram(listed: &[Option<(usize, String)>], spec: &NiemeierSpec) -> Result<Vec<usize>> {
    let off = spec.offsets();
    let ncomp = spec.components.len();
    let comp_of = |k: usize| off.iter().rposition(|&o| o <= k).expect("index in range");
    let mut target: Vec<Option<usize>> = vec![None; ncomp];
    for (k, m) in listed.iter().enumerate() {
        let Some((j, text)) = m else { continue };
        let (c, d) = (comp_of(k), comp_of(*j));
        match target[c] {
            Some(prev) if prev != d => {
                return Err(Error::Parse(format!(
                    "{text} sends component {} to both components {} and {}",
                    c + 1,
                    prev + 1,
                    d + 1
                )))
            }
            _ => target[c] = Some(d),
        }
    }
    let mut taken = vec![false; ncomp];
    for d in target.iter().flatten() {
        if std::mem::replace(&mut taken[*d], true) {
            return Err(Error::Parse(format!("two components are sent to component {}", d + 1)));
        }
    }
    for c in 0..ncomp {
        if target[c].is_none() && !taken[c] {
            target[c] = Some(c);
            taken[c] = true;
        }
    }
    let free: Vec<usize> = (0..ncomp).filter(|&d| !taken[d]).collect();
    let open: Vec<usize> = (0..ncomp).filter(|&c| target[c].is_none()).collect();
    match (open.as_slice(), free.as_slice()) {
        ([], []) => {}
        ([c], [d]) => target[*c] = Some(*d),
        _ => return Err(Error::Parse("the listed cycles do not determine the permutation of components".into())),
    }
    let mut perm = vec![0; spec.dimension()];
    for c in 0..ncomp {
        let d = target[c].expect("assigned");
        let (lc, ld) = (spec.components[c], spec.components[d]);
        let culprit = || {
            (off[c]..off[c] + lc.rank)
                .find_map(|k| listed[k].as_ref().map(|(_, t)| t.clone()))
                .unwrap_or_else(|| format!("component {}", c + 1))
        };
        if lc != ld {
            return Err(Error::Parse(format!(
                "{} sends component {} ({lc}) to component {} ({ld})",
                culprit(),
                c + 1,
                d + 1
            )));
        }
        let autos = diagram_automorphisms(lc);
        let hard: Vec<&Vec<usize>> = autos
            .iter()
            .filter(|a| (0..lc.rank).all(|i| listed[off[c] + i].as_ref().is_none_or(|(j, _)| *j == off[d] + a[i])))
            .collect();
        let chosen = match hard.as_slice() {
            [] => {
                return Err(Error::Parse(format!(
                    "{} does not extend to a symmetry of the Dynkin diagram of component {}",
                    culprit(),
                    c + 1
                )))
            }
            [one] => *one,
            _ => {
                let soft: Vec<&&Vec<usize>> =
                    hard.iter().filter(|a| (0..lc.rank).all(|i| listed[off[c] + i].is_some() || a[i] == i)).collect();
                match soft.as_slice() {
                    [one] => **one,
                    _ => {
                        return Err(Error::Parse(format!(
                            "{} leaves the image of component {} ambiguous",
                            culprit(),
                            c + 1
                        )))
                    }
                }
            }
        };
        for i in 0..lc.rank {
            perm[off[c] + i] = off[d] + chosen[i];
        }
    }
    Ok(perm)
}

/// Ambient index (0-based) of a root token as accepted by [`PermAction::parse`].
pub fn parse_root(tok: &str, spec: &NiemeierSpec) -> Result<usize> {
    let (pos, comp) = parse_token(tok, spec)?;
    spec.root_index(pos, comp)
}

fn parse_token(tok: &str, spec: &NiemeierSpec) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("bad root token {tok:?}"));
    let body = tok.strip_prefix('a').ok_or_else(bad)?;
    if let Some((i, j)) = body.split_once('_') {
        return Ok((i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?));
    }
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    if spec.components.iter().all(|c| c.rank == 1) {
        return Ok((1, body.parse().map_err(|_| bad())?));
    }
    let mut found = Vec::new();
    for cut in 1..body.len() {
        let (i, j) = body.split_at(cut);
        if i.starts_with('0') || j.starts_with('0') {
            continue;
        }
        let (i, j): (usize, usize) = (i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?);
        if spec.components.get(j.wrapping_sub(1)).is_some_and(|c| (1..=c.rank).contains(&i)) {
            found.push((i, j));
        }
    }
    match found.as_slice() {
        [one] => Ok(*one),
        [] => Err(Error::Parse(format!("root token {tok:?} names no simple root"))),
        _ => Err(Error::Parse(format!("root token {tok:?} is ambiguous: {found:?}"))),
    }
}

/// Why an action fails to be a symmetry of the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionDefect {
    pub reason: String,
    pub offending_cycle: Option<String>,
}

/// Check that `g` preserves the Gram matrix of the simple roots and maps the lattice to itself.
pub fn check_action(n: &Niemeier, g: &PermAction) -> std::result::Result<(), ActionDefect> {
    let gram = n.ambient_gram();
    if g.len() != gram.rows() {
        return Err(ActionDefect { reason: "permutation has the wrong degree".into(), offending_cycle: None });
    }
    for i in 0..g.len() {
        for j in 0..g.len() {
            if gram.get(g.image(i), g.image(j)) != gram.get(i, j) {
                let lab = |k: usize| g.labels[k];
                let culprit =
                    g.cycles.iter().find(|c| c.contains(&lab(i)) || c.contains(&lab(j))).map(|c| {
                        format!("({})", c.iter().map(|(p, k)| format!("a{p}_{k}")).collect::<Vec<_>>().join(" "))
                    });
                let (pi, ki) = lab(i);
                let (pj, kj) = lab(j);
                return Err(ActionDefect {
                    reason: format!("pairing of a{pi}_{ki} and a{pj}_{kj} is not preserved"),
                    offending_cycle: culprit,
                });
            }
        }
    }
    let images: Vec<Vec<Rat>> = n.generators.columns().iter().map(|c| g.apply(c)).collect();
    let m = RatMatrix::from_columns(g.len(), &images);
    if !n.lattice.contains_columns(&m) {
        return Err(ActionDefect {
            reason: "glue vectors are not mapped into the lattice".into(),
            offending_cycle: None,
        });
    }
    Ok(())
}

pub fn validate_action(n: &Niemeier, g: &PermAction) -> bool {
    check_action(n, g).is_ok()
}

/// Orbits of the group generated by `gens` on `0..n`, each sorted, ordered by smallest element.
pub fn orbits(gens: &[PermAction], n: usize) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::<usize>::new(n);
    for g in gens {
        for i in 0..n {
            uf.union(i, g.image(i));
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    for i in 0..n {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_by_key(|o| o[0]);
    out
}

/// Vectors of the lattice fixed by every generator.
pub fn invariant_lattice(n: &Niemeier, gens: &[PermAction]) -> Result<Lattice> {
    let dim = n.spec.dimension();
    let cols: Vec<Vec<Rat>> = orbits(gens, dim)
        .iter()
        .map(|o| {
            let mut v = vec![Rat::zero(); dim];
            for &i in o {
                v[i] = Rat::from_integer(1.into());
            }
            v
        })
        .collect();
    n.lattice.primitive_closure(&RatMatrix::from_columns(dim, &cols))
}

#[derive(Clone, Debug)]
pub struct CoinvariantResult {
    pub lattice: Lattice,
    pub rank: usize,
    pub disc: DiscriminantGroup,
    pub orbit_count: usize,
}

impl CoinvariantResult {
    fn from_lattice(lattice: Lattice, orbit_count: usize) -> Result<Self> {
        let disc = if lattice.rank() == 0 { DiscriminantGroup::trivial() } else { lattice.discriminant_group()? };
        Ok(Self { rank: lattice.rank(), lattice, disc, orbit_count })
    }
}

/// Orthogonal complement of the invariant lattice, spanned over Q by differences
/// of dual vectors of consecutive roots within each orbit.
pub fn coinvariant_lattice(n: &Niemeier, gens: &[PermAction]) -> Result<CoinvariantResult> {
    let dim = n.spec.dimension();
    let orb = orbits(gens, dim);
    let dual = n.dual_roots();
    let mut cols = Vec::new();
    for o in &orb {
        for w in o.windows(2) {
            let a = dual.col(w[0]);
            let b = dual.col(w[1]);
            cols.push(a.iter().zip(&b).map(|(x, y)| x - y).collect::<Vec<Rat>>());
        }
    }
    let lattice = if cols.is_empty() {
        Lattice::zero(n.ambient_gram().clone())
    } else {
        n.lattice.primitive_closure(&RatMatrix::from_columns(dim, &cols))?
    };
    CoinvariantResult::from_lattice(lattice, orb.len())
}

/// Coinvariant lattice of the group generated by several subgroups: the
/// primitive closure of their coinvariant lattices.
pub fn generated_coinvariant(n: &Niemeier, specs: &[Vec<PermAction>]) -> Result<CoinvariantResult> {
    let dim = n.spec.dimension();
    let mut cols = Vec::new();
    for gens in specs {
        cols.extend(coinvariant_lattice(n, gens)?.lattice.basis().columns());
    }
    let all: Vec<PermAction> = specs.iter().flatten().cloned().collect();
    let orbit_count = orbits(&all, dim).len();
    let lattice = if cols.is_empty() {
        Lattice::zero(n.ambient_gram().clone())
    } else {
        n.lattice.primitive_closure(&RatMatrix::from_columns(dim, &cols))?
    };
    CoinvariantResult::from_lattice(lattice, orbit_count)
}

/// The coinvariant lattice embeds primitively into the K3 lattice.
pub fn is_kahk3(n: &Niemeier, gens: &[PermAction]) -> Result<bool> {
    let c = coinvariant_lattice(n, gens)?;
    if c.rank == 0 {
        return Ok(true);
    }
    Ok(embed::is_k3_picard_negdef(&c.lattice)?.exists)
}

pub fn same_coinvariant(n: &Niemeier, a: &[PermAction], b: &[PermAction]) -> Result<bool> {
    let x = coinvariant_lattice(n, a)?;
    let y = coinvariant_lattice(n, b)?;
    Ok(x.lattice.same_module(&y.lattice))
}
