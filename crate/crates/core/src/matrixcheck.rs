//! Checks presentations against explicit matrix groups: `SL_2` for single
//! nodes, `SL_3` for joined pairs and block-diagonal `SL_2 × SL_2` for
//! unjoined pairs. A sign assignment `X_i(t) ↦ E(±t)`, `S_i ↦ ±w` is
//! searched per model and fixed before any relation is evaluated.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::presentation::{
    self, Convention, EmitOptions, Letter, PairOrder, Relation, Schema, Symbol, Word,
};
use crate::ring::RingSpec;

/// Default parameter window `[-B, B]` over ℤ.
pub const Z_WINDOW: i64 = 3;

/// Square matrix with entries stored as raw ring values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingMatrix {
    n: usize,
    a: Vec<i64>,
}

impl RingMatrix {
    pub fn identity(r: &RingSpec, n: usize) -> Self {
        let mut a = vec![r.zero_v(); n * n];
        for i in 0..n {
            a[i * n + i] = r.one_v();
        }
        RingMatrix { n, a }
    }

    pub fn from_rows(r: &RingSpec, rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let a = rows.iter().flat_map(|row| row.iter().map(|&v| r.from_int_v(v))).collect();
        RingMatrix { n, a }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.n + j] = v;
    }

    pub fn mul(&self, o: &RingMatrix, r: &RingSpec) -> RingMatrix {
        let n = self.n;
        let mut a = vec![r.zero_v(); n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x == r.zero_v() {
                    continue;
                }
                for j in 0..n {
                    a[i * n + j] = r.add_v(a[i * n + j], r.mul_v(x, o.get(k, j)));
                }
            }
        }
        RingMatrix { n, a }
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.a.chunks(self.n).map(|c| c.to_vec()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Rank1,
    Joined,
    Unjoined,
}

impl Model {
    fn dim(self) -> usize {
        match self {
            Model::Rank1 => 2,
            Model::Joined => 3,
            Model::Unjoined => 4,
        }
    }

    /// Row and column of the root subgroup for the node in `slot`.
    fn block(self, slot: usize) -> (usize, usize) {
        match (self, slot) {
            (Model::Unjoined, 1) => (2, 3),
            (Model::Joined, 1) => (1, 2),
            _ => (0, 1),
        }
    }

    fn slots(self) -> usize {
        if self == Model::Rank1 {
            1
        } else {
            2
        }
    }
}

/// Signs for one slot: `X(t) ↦ E(x·t)`, `S ↦ s·w` with `w = [[0,1],[-1,0]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signs {
    pub x: i8,
    pub s: i8,
}

const SIGN_CHOICES: [Signs; 4] = [
    Signs { x: 1, s: 1 },
    Signs { x: 1, s: -1 },
    Signs { x: -1, s: 1 },
    Signs { x: -1, s: -1 },
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub model: Model,
    pub signs: Vec<Signs>,
}

impl Assignment {
    pub fn x(&self, r: &RingSpec, slot: usize, t: i64) -> RingMatrix {
        let (i, j) = self.model.block(slot);
        let mut m = RingMatrix::identity(r, self.model.dim());
        let v = if self.signs[slot].x < 0 { r.neg_v(t) } else { t };
        m.set(i, j, v);
        m
    }

    pub fn s(&self, r: &RingSpec, slot: usize, inverse: bool) -> RingMatrix {
        let (i, j) = self.model.block(slot);
        let mut m = RingMatrix::identity(r, self.model.dim());
        let sign = if inverse { -self.signs[slot].s } else { self.signs[slot].s };
        let one = r.one_v();
        let (p, q) = if sign > 0 { (one, r.neg_v(one)) } else { (r.neg_v(one), one) };
        m.set(i, i, r.zero_v());
        m.set(j, j, r.zero_v());
        m.set(i, j, p);
        m.set(j, i, q);
        m
    }

    fn letter(&self, r: &RingSpec, slot: usize, l: &Letter) -> RingMatrix {
        match l.symbol {
            Symbol::S(_) => self.s(r, slot, l.inverse),
            Symbol::X(_, t) => {
                let t = t.unwrap_or_else(|| r.one_v());
                self.x(r, slot, if l.inverse { r.neg_v(t) } else { t })
            }
        }
    }

    /// Image of a word; `slots` maps diagram nodes to model slots.
    pub fn eval(&self, r: &RingSpec, w: &Word, slots: &BTreeMap<usize, usize>) -> RingMatrix {
        w.0.iter().fold(RingMatrix::identity(r, self.model.dim()), |acc, l| {
            acc.mul(&self.letter(r, slots[&l.symbol.node()], l), r)
        })
    }

    fn holds(&self, r: &RingSpec, rel: &Relation, slots: &BTreeMap<usize, usize>) -> bool {
        self.eval(r, &rel.left, slots) == self.eval(r, &rel.right, slots)
    }
}

fn slot_map(rel: &Relation) -> BTreeMap<usize, usize> {
    rel.nodes().into_iter().enumerate().map(|(k, n)| (n, k)).collect()
}

fn window(r: &RingSpec, b: i64) -> Vec<i64> {
    if r.is_finite() {
        r.values()
    } else {
        (-b..=b).collect()
    }
}

/// Every relation the checks use on `d`: all pair orders, plus the
/// parameter-free forms and a parameter window over ℤ.
fn relation_set(d: &Diagram, r: &RingSpec, b: i64, conv: Convention, exec: Execution) -> Vec<Relation> {
    let opts = EmitOptions { pair_order: PairOrder::Both, convention: conv, exec };
    let mut rels = presentation::parametric_relations(d, r, &window(r, b), opts);
    if !r.is_finite() {
        let p = presentation::steinberg_presentation_unchecked(d, r, opts);
        rels.splice(0..0, p.relations);
    }
    rels
}

fn search(model: Model, r: &RingSpec, b: i64) -> Result<Assignment> {
    let d = match model {
        Model::Rank1 => Diagram::new(1, &[])?,
        Model::Joined => Diagram::new(2, &[(0, 1)])?,
        Model::Unjoined => Diagram::new(2, &[])?,
    };
    let rels = relation_set(&d, r, b, Convention::Standard, Execution::Sequential);
    let combos: Vec<Vec<Signs>> = match model.slots() {
        1 => SIGN_CHOICES.iter().map(|&s| vec![s]).collect(),
        _ => SIGN_CHOICES
            .iter()
            .flat_map(|&a| SIGN_CHOICES.iter().map(move |&c| vec![a, c]))
            .collect(),
    };
    let identity: BTreeMap<usize, usize> = (0..model.slots()).map(|k| (k, k)).collect();
    combos
        .into_iter()
        .map(|signs| Assignment { model, signs })
        .find(|a| rels.iter().all(|rel| a.holds(r, rel, &identity)))
        .ok_or(Error::NoSignAssignment)
}

pub fn rank1_assignment(r: &RingSpec) -> Result<Assignment> {
    search(Model::Rank1, r, Z_WINDOW)
}

pub fn joined_pair_assignment(r: &RingSpec) -> Result<Assignment> {
    search(Model::Joined, r, Z_WINDOW)
}

pub fn unjoined_pair_assignment(r: &RingSpec) -> Result<Assignment> {
    search(Model::Unjoined, r, Z_WINDOW)
}

/// The three fixed assignments used for a ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Models {
    pub rank1: Assignment,
    pub joined: Assignment,
    pub unjoined: Assignment,
}

impl Models {
    pub fn find(r: &RingSpec) -> Result<Self> {
        Ok(Models {
            rank1: rank1_assignment(r)?,
            joined: joined_pair_assignment(r)?,
            unjoined: unjoined_pair_assignment(r)?,
        })
    }

    fn for_relation(&self, d: &Diagram, nodes: &[usize]) -> &Assignment {
        match nodes {
            [_] | [] => &self.rank1,
            [i, j] if d.joined(*i, *j) => &self.joined,
            _ => &self.unjoined,
        }
    }

    /// Evaluates a relation of at most two nodes in the matching model.
    pub fn holds(&self, d: &Diagram, r: &RingSpec, rel: &Relation) -> Result<bool> {
        let nodes: Vec<usize> = rel.nodes().into_iter().collect();
        if nodes.len() > 2 {
            return Err(Error::RelationFailed(format!("relation touches {} nodes", nodes.len())));
        }
        let a = self.for_relation(d, &nodes);
        let slots = slot_map(rel);
        let mut ok = a.holds(r, rel, &slots);
        if let Some(eq) = &rel.equivalent {
            ok &= a.eval(r, &eq.0, &slots) == a.eval(r, &eq.1, &slots);
        }
        Ok(ok)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaReport {
    pub schema: Schema,
    pub instances: usize,
    pub passed: usize,
    /// Rendered failing instances, at most [`MAX_LISTED_FAILURES`].
    pub failed: Vec<String>,
}

pub const MAX_LISTED_FAILURES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub diagram: String,
    pub ring: String,
    pub convention: Convention,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
    pub models: Models,
    pub instances: usize,
    pub passed: usize,
    pub schemas: Vec<SchemaReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.instances
    }

    pub fn failures(&self) -> usize {
        self.instances - self.passed
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub window: i64,
    pub convention: Convention,
    pub exec: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { window: Z_WINDOW, convention: Convention::Standard, exec: Execution::default() }
    }
}

/// Instantiates every Steinberg relation of `d` over `r` (both pair orders;
/// over ℤ the parameter-free forms and the window `[-B, B]`) and evaluates
/// it in the matrix models.
pub fn verify_all(d: &Diagram, r: &RingSpec) -> Result<VerifyReport> {
    verify_all_with(d, r, VerifyOptions::default())
}

pub fn verify_all_with(d: &Diagram, r: &RingSpec, opts: VerifyOptions) -> Result<VerifyReport> {
    let models = Models::find(r)?;
    let rels = relation_set(d, r, opts.window, opts.convention, opts.exec);
    let results = par::map(opts.exec, &rels, |rel| models.holds(d, r, rel));
    let mut by_schema: BTreeMap<Schema, SchemaReport> = BTreeMap::new();
    let mut passed = 0;
    for (rel, ok) in rels.iter().zip(results) {
        let ok = ok?;
        let e = by_schema.entry(rel.schema).or_insert_with(|| SchemaReport {
            schema: rel.schema,
            instances: 0,
            passed: 0,
            failed: Vec::new(),
        });
        e.instances += 1;
        if ok {
            e.passed += 1;
            passed += 1;
        } else if e.failed.len() < MAX_LISTED_FAILURES {
            e.failed.push(format!("{} = {}", rel.left, rel.right));
        }
    }
    Ok(VerifyReport {
        diagram: d.label(),
        ring: r.to_string(),
        convention: opts.convention,
        window: (!r.is_finite()).then_some(opts.window),
        models,
        instances: rels.len(),
        passed,
        schemas: by_schema.into_values().collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HCheck {
    pub identity: String,
    pub passed: bool,
}

/// Torus identities in the rank-one model: `h̃(a)h̃(b) = h̃(ab)` for all
/// units, `h̃(-1) = S⁻²`, `S⁴ = 1`, `s̃(1) = S` and `h̃(a) = diag(a, a⁻¹)`.
pub fn h_identities_check(r: &RingSpec) -> Result<Vec<HCheck>> {
    let a = rank1_assignment(r)?;
    let slots = BTreeMap::from([(0, 0)]);
    let ev = |w: &Word| a.eval(r, w, &slots);
    let s = Word(vec![Letter { symbol: Symbol::S(0), inverse: false }]);
    let m1 = r.neg_v(r.one_v());
    let mut out = Vec::new();
    let units = r.unit_values();
    for &x in &units {
        for &y in &units {
            let l = ev(&presentation::h_tilde(r, 0, x)?.then(&presentation::h_tilde(r, 0, y)?));
            let rr = ev(&presentation::h_tilde(r, 0, r.mul_v(x, y))?);
            out.push(HCheck {
                identity: format!("h({})h({}) = h({})", r.format_v(x), r.format_v(y), r.format_v(r.mul_v(x, y))),
                passed: l == rr,
            });
        }
    }
    out.push(HCheck {
        identity: "h(-1) = S^-2".into(),
        passed: ev(&presentation::h_tilde(r, 0, m1)?) == ev(&s.inverse().pow(2)),
    });
    out.push(HCheck {
        identity: "S^4 = 1".into(),
        passed: ev(&s.pow(4)) == RingMatrix::identity(r, 2),
    });
    out.push(HCheck {
        identity: "s(1) = S".into(),
        passed: ev(&presentation::s_tilde(r, 0, r.one_v())?) == ev(&s),
    });
    for &x in &units {
        let inv = r.inv_v(x).ok_or(Error::NotAUnit)?;
        let mut diag = RingMatrix::identity(r, 2);
        diag.set(0, 0, x);
        diag.set(1, 1, inv);
        out.push(HCheck {
            identity: format!("h({}) = diag({}, {})", r.format_v(x), r.format_v(x), r.format_v(inv)),
            passed: ev(&presentation::h_tilde(r, 0, x)?) == diag,
        });
    }
    Ok(out)
}
