//! Worked case records for the Niemeier lattices and their verification.
//!
//! Each record names a subgroup of the root-permutation group of a Niemeier
//! lattice (or a sublattice, a Gram matrix, a relation between generators)
//! together with the values reported for it. Verification recomputes every
//! reported value from scratch.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;
use std::time::Instant;

use globset::Glob;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{niemeier, niemeier_spec, GlueVector, Niemeier, NiemeierSpec};
use crate::embed::{embeds_in_niemeier, is_k3_picard_negdef};
use crate::error::{Error, Result};
use crate::groups::{check_action, coinvariant_lattice, orbits, parse_root, PermAction};
use crate::lattice::{DiscriminantGroup, Lattice};
use crate::linalg::{int, IntMatrix, Rat, RatMatrix};
use crate::padic::{det_k_q_p, factor_string, splits_q_theta_2, UnitSquareClass};

const CASES_JSON: &str = include_str!("../data/cases.json");
const CASE22_JSON: &str = include_str!("../data/case22.json");
const CASE23_JSON: &str = include_str!("../data/case23.json");

/// Groups larger than this are not enumerated when checking the stated order.
const ORDER_LIMIT: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DataStatus {
    Ok,
    PaperTypoSuspected,
}

impl fmt::Display for DataStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DataStatus::Ok => write!(f, "ok"),
            DataStatus::PaperTypoSuspected => write!(f, "paper-typo-suspected"),
        }
    }
}

/// Class of a determinant modulo squares of p-adic units, e.g. `±2^5·5` at p = 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetClassSpec {
    pub p: u64,
    pub value: i64,
    #[serde(default)]
    pub pm: bool,
}

impl DetClassSpec {
    pub fn class(&self) -> UnitSquareClass {
        let c = UnitSquareClass::of_int(&int(self.value), self.p);
        if self.pm {
            c.with_sign_ambiguity()
        } else {
            c
        }
    }
}

/// Reported values; absent keys are not checked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Orders of cyclic factors, in any order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disc: Option<Vec<u64>>,
    /// Minimal number of generators of the discriminant group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detclass: Option<DetClassSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splits_q_theta: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kahk3: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub niemeier_embeds: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k3_negdef: Option<bool>,
    /// Label of the record whose group has the same coinvariant lattice.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clos: Option<String>,
    /// Nontrivial orbits on the simple roots.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbits: Option<Vec<Vec<String>>>,
    /// Groups whose coinvariant lattice lies in the sublattice.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contains: Option<Vec<Vec<String>>>,
    /// Factored absolute determinant, e.g. `2^5·3^5·61·109`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det: Option<String>,
}

/// Generators of a sublattice of a Niemeier lattice.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SublatticeSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub roots: Vec<String>,
    /// Whole root components (1-based).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<usize>,
    /// Glue vectors such as `6e1_1`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vectors: Vec<String>,
    /// Coinvariant lattices of the groups generated by these words.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coinvariants: Vec<Vec<String>>,
    #[serde(default)]
    pub primitive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum RecordKind {
    /// Coinvariant lattice of the group generated by `generators`.
    Coinvariant,
    Sublattice(SublatticeSpec),
    /// Two words in the generators that must agree.
    Relation {
        lhs: String,
        rhs: String,
    },
    /// A Gram matrix whose determinant is reported.
    Matrix {
        rows: Vec<Vec<i64>>,
    },
}

/// How the entries of `generators` are written.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorForm {
    /// Products of named generators of the case.
    Words,
    /// Explicit cycle notation.
    Cycles,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseRecord {
    pub label: String,
    pub niemeier_index: usize,
    pub kind: RecordKind,
    pub generators: Vec<String>,
    pub generator_form: GeneratorForm,
    /// Order of the generated group, when stated.
    pub order: Option<u64>,
    pub expected: Expected,
    pub data_status: DataStatus,
    pub citation: String,
    pub notes: Vec<String>,
    #[serde(skip)]
    case: Option<usize>,
}

impl CaseRecord {
    pub fn expected_rank(&self) -> Option<usize> {
        self.expected.rank
    }

    pub fn expected_disc(&self) -> Option<DiscriminantGroup> {
        self.expected.disc.as_deref().map(DiscriminantGroup::from_cyclic_factors)
    }

    pub fn detclass(&self) -> Option<DetClassSpec> {
        self.expected.detclass
    }

    pub fn kahk3(&self) -> Option<bool> {
        self.expected.kahk3
    }

    pub fn clos(&self) -> Option<&str> {
        self.expected.clos.as_deref()
    }

    /// The generating permutations, parsed and multiplied out.
    pub fn resolve_generators(&self) -> Result<Vec<PermAction>> {
        let spec = niemeier_spec(self.niemeier_index)?;
        match self.generator_form {
            GeneratorForm::Cycles => self.generators.iter().map(|c| PermAction::parse(c, &spec)).collect(),
            GeneratorForm::Words => {
                let dict = self.dictionary()?;
                self.generators.iter().map(|w| dict.eval(w)).collect()
            }
        }
    }

    /// The lattice a coinvariant or sublattice record describes; `None` for the other kinds.
    pub fn lattice(&self) -> Result<Option<Lattice>> {
        match &self.kind {
            RecordKind::Coinvariant => {
                let n = niemeier(self.niemeier_index)?;
                Ok(Some(coinvariant_lattice(n, &self.resolve_generators()?)?.lattice))
            }
            RecordKind::Sublattice(s) => Ok(Some(build_sublattice(niemeier(self.niemeier_index)?, s, self)?)),
            RecordKind::Relation { .. } | RecordKind::Matrix { .. } => Ok(None),
        }
    }

    fn dictionary(&self) -> Result<Dictionary<'static>> {
        let case = self.case.ok_or_else(|| Error::Parse(format!("{} has no named generators", self.label)))?;
        let block = data().blocks.get(&case).ok_or(Error::NotInCatalog(case))?;
        Dictionary::new(block)
    }
}

/// A footnoted correction to an earlier discriminant group computation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Footnote {
    pub name: String,
    pub record: String,
    pub disc: Vec<u64>,
    pub citation: String,
}

#[derive(Deserialize)]
struct RawFile {
    cases: Vec<RawBlock>,
    #[serde(default)]
    matrices: Vec<RawRecord>,
    #[serde(default)]
    special: Vec<RawRecord>,
    #[serde(default)]
    footnotes: Vec<Footnote>,
}

#[derive(Deserialize)]
struct RawListFile {
    records: Vec<RawRecord>,
}

#[derive(Deserialize)]
struct RawBlock {
    case: usize,
    niemeier: usize,
    generators: BTreeMap<String, String>,
    records: Vec<RawRecord>,
    #[serde(default)]
    a_group: Vec<String>,
    #[serde(default)]
    notes: Vec<String>,
}

#[derive(Deserialize)]
struct RawGroup {
    #[serde(default)]
    words: Vec<String>,
    #[serde(default)]
    cycles: Vec<String>,
}

#[derive(Deserialize)]
struct RawRelation {
    lhs: String,
    rhs: String,
}

#[derive(Deserialize)]
struct RawRecord {
    label: String,
    #[serde(default)]
    niemeier: Option<usize>,
    kind: String,
    #[serde(default)]
    group: Option<RawGroup>,
    #[serde(default)]
    sublattice: Option<SublatticeSpec>,
    #[serde(default)]
    relation: Option<RawRelation>,
    #[serde(default)]
    matrix: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    order: Option<u64>,
    #[serde(default)]
    expected: Expected,
    status: DataStatus,
    citation: String,
    #[serde(default)]
    notes: Vec<String>,
}

/// Named generators of one case.
struct Block {
    niemeier: usize,
    generators: BTreeMap<String, String>,
    a_group: Vec<String>,
    notes: Vec<String>,
}

struct CaseData {
    records: Vec<CaseRecord>,
    by_label: HashMap<String, usize>,
    blocks: BTreeMap<usize, Block>,
    footnotes: Vec<Footnote>,
}

fn convert(raw: RawRecord, case: Option<usize>, block_niemeier: Option<usize>) -> Result<CaseRecord> {
    let niemeier_index =
        raw.niemeier.or(block_niemeier).ok_or_else(|| Error::Parse(format!("{}: no Niemeier index", raw.label)))?;
    let mut generators = Vec::new();
    let mut generator_form = GeneratorForm::Words;
    let kind = match raw.kind.as_str() {
        "coinvariant" => {
            let g = raw.group.ok_or_else(|| Error::Parse(format!("{}: missing group", raw.label)))?;
            if g.cycles.is_empty() {
                generators = g.words;
            } else {
                generators = g.cycles;
                generator_form = GeneratorForm::Cycles;
            }
            RecordKind::Coinvariant
        }
        "sublattice" => RecordKind::Sublattice(
            raw.sublattice.ok_or_else(|| Error::Parse(format!("{}: missing sublattice", raw.label)))?,
        ),
        "relation" => {
            let r = raw.relation.ok_or_else(|| Error::Parse(format!("{}: missing relation", raw.label)))?;
            RecordKind::Relation { lhs: r.lhs, rhs: r.rhs }
        }
        "matrix" => RecordKind::Matrix {
            rows: raw.matrix.ok_or_else(|| Error::Parse(format!("{}: missing matrix", raw.label)))?,
        },
        other => return Err(Error::Parse(format!("{}: unknown record kind {other:?}", raw.label))),
    };
    Ok(CaseRecord {
        label: raw.label,
        niemeier_index,
        kind,
        generators,
        generator_form,
        order: raw.order,
        expected: raw.expected,
        data_status: raw.status,
        citation: raw.citation,
        notes: raw.notes,
        case,
    })
}

fn load() -> Result<CaseData> {
    let bad = |e: serde_json::Error| Error::Parse(format!("case data: {e}"));
    let main: RawFile = serde_json::from_str(CASES_JSON).map_err(bad)?;
    let mut records = Vec::new();
    let mut blocks = BTreeMap::new();
    for b in main.cases {
        for r in b.records {
            records.push(convert(r, Some(b.case), Some(b.niemeier))?);
        }
        blocks.insert(
            b.case,
            Block { niemeier: b.niemeier, generators: b.generators, a_group: b.a_group, notes: b.notes },
        );
    }
    for r in main.matrices.into_iter().chain(main.special) {
        records.push(convert(r, None, None)?);
    }
    for text in [CASE22_JSON, CASE23_JSON] {
        let f: RawListFile = serde_json::from_str(text).map_err(bad)?;
        for r in f.records {
            records.push(convert(r, None, None)?);
        }
    }
    records.sort_by(|a, b| natural_cmp(&a.label, &b.label));
    let mut by_label = HashMap::new();
    for (i, r) in records.iter().enumerate() {
        if by_label.insert(r.label.clone(), i).is_some() {
            return Err(Error::Parse(format!("duplicate record label {}", r.label)));
        }
    }
    Ok(CaseData { records, by_label, blocks, footnotes: main.footnotes })
}

fn data() -> &'static CaseData {
    static DATA: OnceLock<CaseData> = OnceLock::new();
    DATA.get_or_init(|| load().expect("bundled case data is well formed"))
}

/// All records, sorted by label.
pub fn records() -> &'static [CaseRecord] {
    &data().records
}

pub fn record(label: &str) -> Option<&'static CaseRecord> {
    let d = data();
    d.by_label.get(label).map(|&i| &d.records[i])
}

pub fn footnotes() -> &'static [Footnote] {
    &data().footnotes
}

/// Notes attached to the generator table of a case.
pub fn case_notes(case: usize) -> &'static [String] {
    data().blocks.get(&case).map(|b| b.notes.as_slice()).unwrap_or(&[])
}

/// Generators of the full root-permutation group, for the cases that list them.
pub fn case_generators(i: usize) -> Result<Vec<PermAction>> {
    let (_, block) =
        data().blocks.iter().find(|(_, b)| b.niemeier == i && !b.a_group.is_empty()).ok_or(Error::NotInCatalog(i))?;
    let dict = Dictionary::new(block)?;
    block.a_group.iter().map(|w| dict.eval(w)).collect()
}

/// Compare labels treating digit runs as numbers.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut x, mut y) = (a.as_bytes(), b.as_bytes());
    loop {
        match (x.first(), y.first()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(c), Some(d)) if c.is_ascii_digit() && d.is_ascii_digit() => {
                let i = x.iter().take_while(|b| b.is_ascii_digit()).count();
                let j = y.iter().take_while(|b| b.is_ascii_digit()).count();
                let (p, q) = (trim_zeros(&x[..i]), trim_zeros(&y[..j]));
                let ord = p.len().cmp(&q.len()).then_with(|| p.cmp(q));
                if ord != Ordering::Equal {
                    return ord;
                }
                x = &x[i..];
                y = &y[j..];
            }
            (Some(c), Some(d)) => {
                if c != d {
                    return c.cmp(d);
                }
                x = &x[1..];
                y = &y[1..];
            }
        }
    }
}

fn trim_zeros(s: &[u8]) -> &[u8] {
    let k = s.iter().take_while(|&&b| b == b'0').count();
    if k == s.len() {
        &s[s.len().saturating_sub(1)..]
    } else {
        &s[k..]
    }
}

/// Named generators of a case, resolved lazily.
struct Dictionary<'a> {
    spec: NiemeierSpec,
    defs: &'a BTreeMap<String, String>,
}

impl<'a> Dictionary<'a> {
    fn new(block: &'a Block) -> Result<Self> {
        Ok(Self { spec: niemeier_spec(block.niemeier)?, defs: &block.generators })
    }

    fn lookup(&self, name: &str, depth: usize) -> Result<PermAction> {
        if depth > self.defs.len() {
            return Err(Error::Parse(format!("generator {name} is defined in terms of itself")));
        }
        let def = self.defs.get(name).ok_or_else(|| Error::Parse(format!("unknown generator {name}")))?;
        if def.trim_start().starts_with("(a") {
            PermAction::parse(def, &self.spec)
        } else {
            WordParser { dict: self, text: def.as_bytes(), pos: 0, depth: depth + 1 }.parse()
        }
    }

    /// Evaluate a word such as `(t12*t23)^2*phi`; `x*y` applies `y` first.
    fn eval(&self, word: &str) -> Result<PermAction> {
        WordParser { dict: self, text: word.as_bytes(), pos: 0, depth: 0 }.parse()
    }
}

struct WordParser<'d, 'a> {
    dict: &'d Dictionary<'a>,
    text: &'d [u8],
    pos: usize,
    depth: usize,
}

impl WordParser<'_, '_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} of word {:?}", self.pos, String::from_utf8_lossy(self.text)))
    }

    fn skip_ws(&mut self) {
        while self.text.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn parse(mut self) -> Result<PermAction> {
        let w = self.product()?;
        self.skip_ws();
        if self.pos != self.text.len() {
            return Err(self.error("trailing input"));
        }
        Ok(w)
    }

    fn product(&mut self) -> Result<PermAction> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            if self.text.get(self.pos) != Some(&b'*') {
                return Ok(acc);
            }
            self.pos += 1;
            let next = self.power()?;
            acc = acc.compose(&next);
        }
    }

    fn power(&mut self) -> Result<PermAction> {
        let base = self.atom()?;
        self.skip_ws();
        if self.text.get(self.pos) != Some(&b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if self.text.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.text.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        let exp: i64 = std::str::from_utf8(&self.text[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error("bad exponent"))?;
        Ok(base.pow(exp))
    }

    fn atom(&mut self) -> Result<PermAction> {
        self.skip_ws();
        match self.text.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.product()?;
                self.skip_ws();
                if self.text.get(self.pos) != Some(&b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.text.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii");
                if name == "id" {
                    Ok(PermAction::identity(&self.dict.spec))
                } else {
                    self.dict.lookup(name, self.depth)
                }
            }
            _ => Err(self.error("expected a generator name")),
        }
    }
}

/// Values recomputed for a record.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Computed {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Invariant factors of the discriminant group.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disc: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detclass: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splits_q_theta: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kahk3: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub niemeier_embeds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k3_negdef: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clos: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbits: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contains: Option<Vec<bool>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation_holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict", content = "details")]
pub enum Verdict {
    Match,
    Mismatch(Vec<String>),
    DataError(Vec<String>),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::Mismatch(_) => "mismatch",
            Verdict::DataError(_) => "data-error",
        }
    }

    pub fn details(&self) -> &[String] {
        match self {
            Verdict::Match => &[],
            Verdict::Mismatch(d) | Verdict::DataError(d) => d,
        }
    }

    pub fn is_match(&self) -> bool {
        matches!(self, Verdict::Match)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RecordReport {
    pub label: String,
    pub niemeier_index: usize,
    pub data_status: DataStatus,
    pub expected: Expected,
    pub computed: Computed,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub citation: String,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub data_errors: usize,
    /// Records flagged as suspected misprints; reported but not gated.
    pub typo_suspected: usize,
    /// Every record with status `ok` matches.
    pub gate_passed: bool,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub records: Vec<RecordReport>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn get(&self, label: &str) -> Option<&RecordReport> {
        self.records.iter().find(|r| r.label == label)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Any `ok` record failed to reproduce.
    pub fn has_ok_failures(&self) -> bool {
        !self.summary.gate_passed
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            let flag = if r.data_status == DataStatus::Ok { "" } else { " [paper-typo-suspected]" };
            writeln!(f, "{:<10} {}{flag}", r.verdict.name(), r.label)?;
            for d in r.verdict.details() {
                writeln!(f, "           {d}")?;
            }
        }
        let s = &self.summary;
        writeln!(
            f,
            "{} records: {} match, {} mismatch, {} data-error ({} suspected misprints); gate {}; {:.0} ms",
            s.total,
            s.matched,
            s.mismatched,
            s.data_errors,
            s.typo_suspected,
            if s.gate_passed { "passed" } else { "FAILED" },
            s.runtime_ms
        )
    }
}

/// Verify every record whose label matches `filter` (all records when `None`).
pub fn verify_all(filter: Option<&str>) -> Result<VerificationReport> {
    let matcher = match filter {
        Some(f) => Some(Glob::new(f).map_err(|e| Error::Parse(format!("bad filter {f:?}: {e}")))?.compile_matcher()),
        None => None,
    };
    let start = Instant::now();
    let selected: Vec<&CaseRecord> =
        records().iter().filter(|r| matcher.as_ref().is_none_or(|m| m.is_match(&r.label))).collect();
    let mut reports: Vec<RecordReport> = selected.par_iter().map(|r| verify_record(r)).collect();
    reports.sort_by(|a, b| natural_cmp(&a.label, &b.label));
    let mut summary = Summary { total: reports.len(), gate_passed: true, ..Summary::default() };
    for r in &reports {
        match r.verdict {
            Verdict::Match => summary.matched += 1,
            Verdict::Mismatch(_) => summary.mismatched += 1,
            Verdict::DataError(_) => summary.data_errors += 1,
        }
        if r.data_status == DataStatus::Ok {
            summary.gate_passed &= r.verdict.is_match();
        } else {
            summary.typo_suspected += 1;
        }
    }
    summary.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(VerificationReport { records: reports, summary })
}

pub fn verify_label(label: &str) -> Result<RecordReport> {
    let r = record(label).ok_or_else(|| Error::Parse(format!("no record labelled {label}")))?;
    Ok(verify_record(r))
}

pub fn verify_record(r: &CaseRecord) -> RecordReport {
    let start = Instant::now();
    let mut computed = Computed::default();
    let verdict = match check(r, &mut computed) {
        Ok(mismatches) if mismatches.is_empty() => Verdict::Match,
        Ok(mismatches) => Verdict::Mismatch(mismatches),
        Err(e) => Verdict::DataError(vec![e]),
    };
    RecordReport {
        label: r.label.clone(),
        niemeier_index: r.niemeier_index,
        data_status: r.data_status,
        expected: r.expected.clone(),
        computed,
        verdict,
        citation: r.citation.clone(),
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

type Check = std::result::Result<Vec<String>, String>;

fn check(r: &CaseRecord, out: &mut Computed) -> Check {
    let fail = |e: Error| e.to_string();
    match &r.kind {
        RecordKind::Matrix { rows } => check_matrix(rows, &r.expected, out),
        RecordKind::Relation { lhs, rhs } => {
            let dict = r.dictionary().map_err(fail)?;
            let (a, b) = (dict.eval(lhs).map_err(fail)?, dict.eval(rhs).map_err(fail)?);
            let holds = a.images() == b.images();
            out.relation_holds = Some(holds);
            Ok(if holds { vec![] } else { vec![format!("{lhs} = {a} but {rhs} = {b}")] })
        }
        RecordKind::Coinvariant => {
            let n = niemeier(r.niemeier_index).map_err(fail)?;
            let gens = r.resolve_generators().map_err(fail)?;
            for (g, text) in gens.iter().zip(&r.generators) {
                if let Err(d) = check_action(n, g) {
                    let at = d.offending_cycle.map(|c| format!(" (offending cycle {c})")).unwrap_or_default();
                    let shown = g.to_string();
                    let text = if shown == *text { shown } else { format!("{text} = {shown}") };
                    return Err(format!("generator {text} is not a lattice automorphism: {}{at}", d.reason));
                }
            }
            let mut bad = Vec::new();
            if let Some(order) = r.order {
                match group_order(&gens, ORDER_LIMIT) {
                    Some(k) => {
                        out.order = Some(k as u64);
                        if k as u64 != order {
                            bad.push(format!("group order {k}, expected {order}"));
                        }
                    }
                    None => bad.push(format!("group order exceeds {ORDER_LIMIT}, expected {order}")),
                }
            }
            let c = coinvariant_lattice(n, &gens).map_err(fail)?;
            check_lattice(&c.lattice, &r.expected, out, &mut bad).map_err(fail)?;
            if let Some(target) = &r.expected.clos {
                let t = record(target).ok_or_else(|| format!("closure target {target} is not a record"))?;
                let tg = t.resolve_generators().map_err(|e| format!("closure target {target}: {e}"))?;
                let tc = coinvariant_lattice(n, &tg).map_err(fail)?;
                let same = tc.lattice.same_module(&c.lattice);
                out.clos = Some(same);
                if !same {
                    bad.push(format!("coinvariant lattice differs from that of {target}"));
                }
            }
            if let Some(exp) = &r.expected.orbits {
                let found = nontrivial_orbits(&gens, &n.spec);
                let want: BTreeSet<BTreeSet<usize>> = exp
                    .iter()
                    .map(|o| o.iter().map(|t| parse_root(t, &n.spec)).collect::<Result<BTreeSet<_>>>())
                    .collect::<Result<_>>()
                    .map_err(fail)?;
                let got: BTreeSet<BTreeSet<usize>> = found.iter().map(|o| o.iter().copied().collect()).collect();
                out.orbits = Some(found.iter().map(|o| o.iter().map(|&i| root_name(&n.spec, i)).collect()).collect());
                if want != got {
                    bad.push("nontrivial orbits differ".into());
                }
            }
            Ok(bad)
        }
        RecordKind::Sublattice(s) => {
            let n = niemeier(r.niemeier_index).map_err(fail)?;
            let lat = build_sublattice(n, s, r).map_err(fail)?;
            let mut bad = Vec::new();
            check_lattice(&lat, &r.expected, out, &mut bad).map_err(fail)?;
            if let Some(groups) = &r.expected.contains {
                let dict = r.dictionary().map_err(fail)?;
                let mut flags = Vec::new();
                for words in groups {
                    let gens: Vec<PermAction> =
                        words.iter().map(|w| dict.eval(w)).collect::<Result<_>>().map_err(fail)?;
                    let c = coinvariant_lattice(n, &gens).map_err(fail)?;
                    let inside = c.rank == 0 || lat.contains_columns(c.lattice.basis());
                    flags.push(inside);
                    if !inside {
                        bad.push(format!("coinvariant lattice of [{}] is not contained", words.join(", ")));
                    }
                }
                out.contains = Some(flags);
            }
            Ok(bad)
        }
    }
}

fn check_matrix(rows: &[Vec<i64>], e: &Expected, out: &mut Computed) -> Check {
    let k = rows.len();
    if rows.iter().any(|r| r.len() != k) {
        return Err("matrix is not square".into());
    }
    for (i, row) in rows.iter().enumerate() {
        for (j, &x) in row.iter().enumerate().take(i) {
            if x != rows[j][i] {
                return Err(format!(
                    "matrix is not symmetric: entry ({},{}) is {x}, entry ({},{}) is {}",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1,
                    rows[j][i]
                ));
            }
        }
    }
    let det = IntMatrix::from_i64_rows(rows).det();
    let mut bad = Vec::new();
    let shown = factor_string(&num_bigint::BigInt::from(det.magnitude().clone()));
    out.det = Some(shown.clone());
    if let Some(want) = &e.det {
        if *want != shown {
            bad.push(format!("|det| = {shown}, expected {want}"));
        }
    }
    if let Some(dc) = &e.detclass {
        let got = UnitSquareClass::of_int(&det, dc.p);
        out.detclass = Some(got.to_string());
        if !got.congruent(&dc.class()) {
            bad.push(format!("det ≡ {got}, expected {}", dc.class()));
        }
    }
    Ok(bad)
}

/// Compare the lattice invariants listed in `e`.
fn check_lattice(l: &Lattice, e: &Expected, out: &mut Computed, bad: &mut Vec<String>) -> Result<()> {
    let disc = if l.rank() == 0 { DiscriminantGroup::trivial() } else { l.discriminant_group()? };
    out.rank = Some(l.rank());
    out.disc = Some(disc.elementary_divisors.iter().map(|d| d.try_into().unwrap_or(u64::MAX)).collect());
    if let Some(rank) = e.rank {
        if rank != l.rank() {
            bad.push(format!("rank {}, expected {rank}", l.rank()));
        }
    }
    if let Some(want) = &e.disc {
        let want = DiscriminantGroup::from_cyclic_factors(want);
        if want != disc {
            bad.push(format!("discriminant group {disc}, expected {want}"));
        }
    }
    if let Some(len) = e.length {
        out.length = Some(disc.min_generators());
        if len != disc.min_generators() {
            bad.push(format!("discriminant length {}, expected {len}", disc.min_generators()));
        }
    }
    if let Some(dc) = &e.detclass {
        let got = det_k_q_p(l, dc.p)?.class;
        out.detclass = Some(got.to_string());
        if !got.congruent(&dc.class()) {
            bad.push(format!("det K(q_{}) ≡ {got}, expected {}", dc.p, dc.class()));
        }
    }
    if let Some(want) = e.splits_q_theta {
        let got = splits_q_theta_2(l)?;
        out.splits_q_theta = Some(got);
        if got != want {
            bad.push(format!("q_2 splits off q_theta(2): {got}, expected {want}"));
        }
    }
    for (want, slot, name) in
        [(e.kahk3, &mut out.kahk3, "K3 embedding"), (e.k3_negdef, &mut out.k3_negdef, "K3 Picard criterion")]
    {
        if let Some(want) = want {
            let got = l.rank() == 0 || is_k3_picard_negdef(l)?.exists;
            *slot = Some(got);
            if got != want {
                bad.push(format!("{name}: {got}, expected {want}"));
            }
        }
    }
    if let Some(want) = e.niemeier_embeds {
        let got = l.rank() == 0 || embeds_in_niemeier(l)?.exists;
        out.niemeier_embeds = Some(got);
        if got != want {
            bad.push(format!("Niemeier embedding: {got}, expected {want}"));
        }
    }
    Ok(())
}

fn build_sublattice(n: &Niemeier, s: &SublatticeSpec, r: &CaseRecord) -> Result<Lattice> {
    let spec = &n.spec;
    let dim = spec.dimension();
    let unit = |k: usize| {
        let mut v = vec![Rat::zero(); dim];
        v[k] = Rat::from_integer(int(1));
        v
    };
    let mut cols: Vec<Vec<Rat>> = Vec::new();
    for t in &s.roots {
        cols.push(unit(parse_root(t, spec)?));
    }
    for &c in &s.components {
        let comp = spec.components.get(c.wrapping_sub(1)).ok_or(Error::InvalidLabel(format!("component {c}")))?;
        for pos in 1..=comp.rank {
            cols.push(unit(spec.root_index(pos, c)?));
        }
    }
    for v in &s.vectors {
        cols.push(spec.glue_coordinates(&GlueVector::parse(v)?)?);
    }
    if !s.coinvariants.is_empty() {
        let dict = r.dictionary()?;
        for words in &s.coinvariants {
            let gens: Vec<PermAction> = words.iter().map(|w| dict.eval(w)).collect::<Result<_>>()?;
            cols.extend(coinvariant_lattice(n, &gens)?.lattice.basis().columns());
        }
    }
    let m = RatMatrix::from_columns(dim, &cols);
    if s.primitive {
        n.lattice.primitive_closure(&m)
    } else {
        Lattice::generated_by(n.ambient_gram().clone(), &m)
    }
}

fn nontrivial_orbits(gens: &[PermAction], spec: &NiemeierSpec) -> Vec<Vec<usize>> {
    orbits(gens, spec.dimension()).into_iter().filter(|o| o.len() > 1).collect()
}

fn root_name(spec: &NiemeierSpec, k: usize) -> String {
    let off = spec.offsets();
    let comp = off.iter().rposition(|&o| o <= k).expect("index in range");
    if spec.components.iter().all(|c| c.rank == 1) {
        format!("a{}", comp + 1)
    } else {
        format!("a{}_{}", k - off[comp] + 1, comp + 1)
    }
}

/// Order of the group generated by `gens`, or `None` past `limit` elements.
pub fn group_order(gens: &[PermAction], limit: usize) -> Option<usize> {
    let Some(first) = gens.first() else { return Some(1) };
    let id: Vec<usize> = (0..first.len()).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<usize> = x.iter().map(|&i| g.image(i)).collect();
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen.len())
}

#[derive(Clone, Debug, Serialize)]
pub struct FootnoteReport {
    pub name: String,
    pub record: String,
    pub expected: String,
    pub computed: Option<String>,
    pub matches: bool,
    pub citation: String,
}

/// Recompute the discriminant groups of the footnoted corrections.
pub fn footnote_corrections() -> Vec<FootnoteReport> {
    footnotes()
        .par_iter()
        .map(|f| {
            let want = DiscriminantGroup::from_cyclic_factors(&f.disc);
            let got = record(&f.record).ok_or(Error::Parse(format!("no record {}", f.record))).and_then(|r| {
                let n = niemeier(r.niemeier_index)?;
                let gens = r.resolve_generators()?;
                Ok(coinvariant_lattice(n, &gens)?.disc)
            });
            let computed = got.as_ref().ok().map(|d| d.to_string());
            FootnoteReport {
                name: f.name.clone(),
                record: f.record.clone(),
                expected: want.to_string(),
                matches: got.is_ok_and(|d| d == want),
                computed,
                citation: f.citation.clone(),
            }
        })
        .collect()
}
