//! Arithmetic criteria for primitive embeddings into even unimodular lattices,
//! Niemeier lattices and the K3 lattice.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{rational_inverse, smith_normal_form};
use crate::padic::{det_k_q_p, splits_q_theta_2, UnitSquareClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TargetSignature {
    pub l_plus: usize,
    pub l_minus: usize,
}

impl TargetSignature {
    pub const K3: TargetSignature = TargetSignature { l_plus: 3, l_minus: 19 };
    pub const NIEMEIER: TargetSignature = TargetSignature { l_plus: 0, l_minus: 24 };

    pub fn new(l_plus: usize, l_minus: usize) -> Self {
        Self { l_plus, l_minus }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Condition {
    C1,
    C2,
    C3(u64),
    C4,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::C1 => write!(f, "(1)"),
            Condition::C2 => write!(f, "(2)"),
            Condition::C3(p) => write!(f, "(3) at p={p}"),
            Condition::C4 => write!(f, "(4)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionTrace {
    pub condition: Condition,
    /// `None` when the condition was skipped.
    pub passed: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingVerdict {
    pub exists: bool,
    pub failing_condition: Option<Condition>,
    pub trace: Vec<ConditionTrace>,
}

impl EmbeddingVerdict {
    fn from_trace(trace: Vec<ConditionTrace>) -> Self {
        let failing_condition = trace.iter().find(|t| t.passed == Some(false)).map(|t| t.condition);
        Self { exists: failing_condition.is_none(), failing_condition, trace }
    }

    pub fn evaluated(&self, c: Condition) -> bool {
        self.trace.iter().any(|t| t.condition == c && t.passed.is_some())
    }
}

impl fmt::Display for EmbeddingVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.failing_condition {
            None => writeln!(f, "exists")?,
            Some(c) => writeln!(f, "fails {c}")?,
        }
        for t in &self.trace {
            let status = match t.passed {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "skip",
            };
            writeln!(f, "  {} {status}: {}", t.condition, t.detail)?;
        }
        Ok(())
    }
}

/// Shared shape of all criteria: the rank bound, the "rank + length" bound
/// and the sign in front of `|A|` in the congruences.
struct Bounds {
    rank_max: usize,
    total_max: usize,
    negate: bool,
}

fn require_even(s: &Lattice) -> Result<()> {
    if !s.is_even() {
        return Err(Error::NotEven);
    }
    Ok(())
}

/// Conditions (3) and (4) at the primes where the rank-equality trigger fires.
fn congruence_conditions(s: &Lattice, total: usize, negate: bool, trace: &mut Vec<ConditionTrace>) -> Result<()> {
    let disc = s.discriminant_group()?;
    let order = disc.order();
    let signed = if negate { -order.clone() } else { order.clone() };
    let sign = if negate { "-" } else { "" };
    let rank = s.rank();
    for p in disc.primes().into_iter().filter(|&p| p != 2) {
        let lp = disc.l_p(p);
        if rank + lp != total {
            trace.push(ConditionTrace {
                condition: Condition::C3(p),
                passed: None,
                detail: format!("rk + l_{p} = {} < {total}", rank + lp),
            });
            continue;
        }
        let dk = det_k_q_p(s, p)?;
        let lhs = UnitSquareClass::of_int(&signed, p);
        let ok = lhs.congruent(&dk.class);
        trace.push(ConditionTrace {
            condition: Condition::C3(p),
            passed: Some(ok),
            detail: format!("{sign}|A| = {sign}{order} ≡ {lhs}; det K(q_{p}) ≡ {}", dk.class),
        });
    }
    let l2 = disc.l_p(2);
    if rank + l2 != total || l2 == 0 {
        trace.push(ConditionTrace {
            condition: Condition::C4,
            passed: None,
            detail: format!("rk + l_2 = {} < {total}", rank + l2),
        });
    } else if splits_q_theta_2(s)? {
        trace.push(ConditionTrace {
            condition: Condition::C4,
            passed: None,
            detail: "q_2 splits off q_theta(2)".into(),
        });
    } else {
        let dk = det_k_q_p(s, 2)?;
        let lhs = UnitSquareClass::of_int(&order, 2).with_sign_ambiguity();
        let ok = lhs.congruent(&dk.class);
        trace.push(ConditionTrace {
            condition: Condition::C4,
            passed: Some(ok),
            detail: format!("|A| = {order} ≡ {lhs}; det K(q_2) ≡ {}", dk.class),
        });
    }
    Ok(())
}

/// Inequalities (2) for the definite-type criteria, then (3) and (4) when the
/// second inequality is an equality.
fn definite_criterion(s: &Lattice, bounds: Bounds) -> Result<EmbeddingVerdict> {
    let rank = s.rank();
    let l = s.discriminant_group()?.min_generators();
    let mut trace = Vec::new();
    let ok = rank <= bounds.rank_max && rank + l <= bounds.total_max;
    trace.push(ConditionTrace {
        condition: Condition::C2,
        passed: Some(ok),
        detail: format!("rk = {rank} (≤ {}), rk + l = {} (≤ {})", bounds.rank_max, rank + l, bounds.total_max),
    });
    if ok && rank + l == bounds.total_max {
        congruence_conditions(s, bounds.total_max, bounds.negate, &mut trace)?;
    } else {
        for c in [Condition::C3(0), Condition::C4] {
            trace.push(ConditionTrace { condition: c, passed: None, detail: "not required".into() });
        }
    }
    Ok(EmbeddingVerdict::from_trace(trace))
}

/// Primitive embedding into some even unimodular lattice of signature `t`.
pub fn exists_primitive_embedding_unimodular(s: &Lattice, t: TargetSignature) -> Result<EmbeddingVerdict> {
    require_even(s)?;
    let (tp, tz, tm) = s.signature();
    if tz > 0 {
        return Err(Error::Degenerate);
    }
    let mut trace = Vec::new();
    let diff = (t.l_plus as i64 - t.l_minus as i64).rem_euclid(8);
    trace.push(ConditionTrace {
        condition: Condition::C1,
        passed: Some(diff == 0),
        detail: format!("l+ - l- = {} (mod 8: {diff})", t.l_plus as i64 - t.l_minus as i64),
    });
    let l = s.discriminant_group()?.min_generators();
    let room = (t.l_plus + t.l_minus) as i64 - (tp + tm) as i64;
    let ok = t.l_plus >= tp && t.l_minus >= tm && room >= l as i64;
    trace.push(ConditionTrace {
        condition: Condition::C2,
        passed: Some(ok),
        detail: format!("({tp}, {tm}) into ({}, {}); corank {room} ≥ l = {l}", t.l_plus, t.l_minus),
    });
    if ok && room == l as i64 {
        // The trigger `corank == l_p` is `rk + l_p == rk + corank`.
        let negate = (t.l_plus - tp) % 2 == 1;
        congruence_conditions(s, s.rank() + l, negate, &mut trace)?;
    } else {
        for c in [Condition::C3(0), Condition::C4] {
            trace.push(ConditionTrace { condition: c, passed: None, detail: "not required".into() });
        }
    }
    Ok(EmbeddingVerdict::from_trace(trace))
}

/// Primitive embedding into a Niemeier lattice.
pub fn embeds_in_niemeier(s: &Lattice) -> Result<EmbeddingVerdict> {
    require_even(s)?;
    if !s.is_negative_definite() && s.rank() > 0 {
        return Err(Error::NotNegativeDefinite);
    }
    definite_criterion(s, Bounds { rank_max: 24, total_max: 24, negate: false })
}

/// Negative definite Picard lattice of a K3 surface.
pub fn is_k3_picard_negdef(m: &Lattice) -> Result<EmbeddingVerdict> {
    require_even(m)?;
    if !m.is_negative_definite() && m.rank() > 0 {
        return Err(Error::NotNegativeDefinite);
    }
    definite_criterion(m, Bounds { rank_max: 19, total_max: 22, negate: true })
}

/// Semi-negative definite Picard lattice with one-dimensional kernel.
pub fn is_k3_picard_semidef(m: &Lattice) -> Result<EmbeddingVerdict> {
    require_even(m)?;
    let (plus, zero, _) = m.signature();
    if zero != 1 {
        return Err(Error::KernelNotOneDimensional(zero));
    }
    if plus > 0 {
        return Err(Error::NotNegativeDefinite);
    }
    let q = kernel_quotient(m)?;
    definite_criterion(&q, Bounds { rank_max: 18, total_max: 20, negate: false })
}

/// Hyperbolic Picard lattice of a K3 surface.
pub fn is_k3_picard_hyperbolic(m: &Lattice) -> Result<EmbeddingVerdict> {
    require_even(m)?;
    let sig = m.signature();
    if sig.0 != 1 || sig.1 != 0 {
        return Err(Error::NotHyperbolic(sig));
    }
    definite_criterion(m, Bounds { rank_max: 20, total_max: 22, negate: false })
}

/// `M / Ker M` with the induced form, given a one-dimensional kernel.
pub fn kernel_quotient(m: &Lattice) -> Result<Lattice> {
    let g = m.int_gram().ok_or(Error::NotEven)?;
    let kernel = g.to_rat().kernel();
    if kernel.cols() != 1 {
        return Err(Error::KernelNotOneDimensional(kernel.cols()));
    }
    let (kint, _) = kernel.clear_denominators();
    // Complete the primitive kernel vector to a basis via U^{-1} from the Smith form of the column.
    let snf = smith_normal_form(&kint);
    let uinv = rational_inverse(&snf.u.to_rat())?;
    let n = g.rows();
    let rest: Vec<usize> = (1..n).collect();
    let b = uinv.select_columns(&rest);
    let gram = b.transpose().mul(&g.to_rat()).mul(&b);
    let gi = gram.to_int().ok_or(Error::NotEven)?;
    Lattice::from_gram(gi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1s(k: usize) -> Lattice {
        let mut rows = vec![vec![0i64; k]; k];
        for (i, r) in rows.iter_mut().enumerate() {
            r[i] = -2;
        }
        Lattice::from_gram_rows(&rows).unwrap()
    }

    #[test]
    fn thirteen_a1() {
        let s = a1s(13);
        let v = exists_primitive_embedding_unimodular(&s, TargetSignature::NIEMEIER).unwrap();
        assert_eq!(v.failing_condition, Some(Condition::C2));
        assert_eq!(embeds_in_niemeier(&s).unwrap().failing_condition, Some(Condition::C2));
        assert_eq!(is_k3_picard_negdef(&s).unwrap().failing_condition, Some(Condition::C2));
    }

    #[test]
    fn hyperbolic_plane() {
        let u = Lattice::from_gram_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(is_k3_picard_hyperbolic(&u).unwrap().exists);
    }

    #[test]
    fn semidef_a1() {
        let m = Lattice::from_gram_rows(&[vec![0, 0], vec![0, -2]]).unwrap();
        assert!(is_k3_picard_semidef(&m).unwrap().exists);
    }
}
