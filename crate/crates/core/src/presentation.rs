//! Finite presentations of Steinberg and Kac–Moody groups of a simply-laced
//! hyperbolic diagram over a ring, with serialization to JSON, plain text
//! and GAP input.
//!
//! Every relation mentions at most two nodes. Commutators are expanded at
//! emission time using [`Convention`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::ring::RingSpec;

/// A generator: `S_i`, `X_i(t)`, or over ℤ the single `X_i` (`= X_i(1)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    S(usize),
    X(usize, Option<i64>),
}

impl Symbol {
    pub fn node(&self) -> usize {
        match *self {
            Symbol::S(i) | Symbol::X(i, _) => i,
        }
    }

    /// An identifier usable as a GAP generator name.
    pub fn gap_name(&self) -> String {
        match *self {
            Symbol::S(i) => format!("S{i}"),
            Symbol::X(i, None) => format!("X{i}"),
            Symbol::X(i, Some(t)) if t < 0 => format!("X{i}_m{}", -t),
            Symbol::X(i, Some(t)) => format!("X{i}_{t}"),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Symbol::S(i) => write!(f, "S{i}"),
            Symbol::X(i, None) => write!(f, "X{i}"),
            Symbol::X(i, Some(t)) => write!(f, "X{i}({t})"),
        }
    }
}

fn parse_node(s: &str, whole: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse(format!("bad node index in {whole:?}")))
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix('S') {
            return Ok(Symbol::S(parse_node(rest, s)?));
        }
        if let Some(rest) = s.strip_prefix('X') {
            if let Some((node, param)) = rest.split_once('(') {
                let param = param
                    .strip_suffix(')')
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad parameter in {s:?}")))?;
                return Ok(Symbol::X(parse_node(node, s)?, Some(param)));
            }
            return Ok(Symbol::X(parse_node(rest, s)?, None));
        }
        Err(Error::Parse(format!("unknown generator {s:?}")))
    }
}

/// A generator or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub symbol: Symbol,
    pub inverse: bool,
}

impl Letter {
    pub fn inverted(self) -> Letter {
        Letter { inverse: !self.inverse, ..self }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol)?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.strip_suffix("^-1") {
            Some(base) => Ok(Letter { symbol: base.parse()?, inverse: true }),
            None => Ok(Letter { symbol: s.parse()?, inverse: false }),
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A product of letters, read left to right; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn then(&self, o: &Word) -> Word {
        Word(self.0.iter().chain(&o.0).copied().collect())
    }

    pub fn pow(&self, k: usize) -> Word {
        Word((0..k).flat_map(|_| self.0.iter().copied()).collect())
    }

    pub fn nodes(&self) -> BTreeSet<usize> {
        self.0.iter().map(|l| l.symbol.node()).collect()
    }

    fn render(&self, sep: &str, gap: bool) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|l| {
                let base = if gap { l.symbol.gap_name() } else { l.symbol.to_string() };
                if l.inverse {
                    format!("{base}^-1")
                } else {
                    base
                }
            })
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("*", false))
    }
}

/// How a commutator `[a, b]` expands.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `a b a⁻¹ b⁻¹`.
    #[default]
    Standard,
    /// `b a b⁻¹ a⁻¹`; only used as a negative control.
    Flipped,
}

impl Convention {
    pub fn commutator(self, a: &Word, b: &Word) -> Word {
        let (x, y) = match self {
            Convention::Standard => (a, b),
            Convention::Flipped => (b, a),
        };
        x.then(y).then(&x.inverse()).then(&y.inverse())
    }

    pub fn tag(self) -> &'static str {
        match self {
            Convention::Standard => "aba^-1b^-1",
            Convention::Flipped => "bab^-1a^-1",
        }
    }
}

impl Serialize for Convention {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

impl<'de> Deserialize<'de> for Convention {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "aba^-1b^-1" => Ok(Convention::Standard),
            "bab^-1a^-1" => Ok(Convention::Flipped),
            other => Err(serde::de::Error::custom(format!("unknown convention {other:?}"))),
        }
    }
}

/// Which ordered pairs instantiate the relation families that are not
/// symmetric in `i, j`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairOrder {
    /// `i < j` only.
    #[default]
    Canonical,
    /// Both `(i, j)` and `(j, i)`.
    Both,
}

/// Relation families. Names without `z_` carry ring parameters; the `z_`
/// forms are the parameter-free versions over ℤ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Schema {
    /// `X_i(t) X_i(u) = X_i(t+u)`
    Additivity,
    /// `[S_i², X_i(t)] = 1`
    S2Central,
    /// `S_i = X_i(1) S_i X_i(1) S_i⁻¹ X_i(1)`
    SDefinition,
    /// `S_i S_j = S_j S_i`
    SCommute,
    /// `[S_i, X_j(t)] = 1`
    SXCommute,
    /// `[X_i(t), X_j(u)] = 1`
    XXCommute,
    /// `S_i S_j S_i = S_j S_i S_j`
    Braid,
    /// `S_i² S_j S_i⁻² = S_j⁻¹`
    S2ConjS,
    /// `X_i(t) S_j S_i = S_j S_i X_j(t)`
    XSS,
    /// `S_i² X_j(t) S_i⁻² = X_j(t)⁻¹`
    S2ConjX,
    /// `[X_i(t), S_i X_j(u) S_i⁻¹] = 1`
    XConjCommute,
    /// `[X_i(t), X_j(u)] = S_i X_j(tu) S_i⁻¹`
    XXCommutator,
    ZS2Central,
    ZSDefinition,
    ZSCommute,
    ZSXCommute,
    ZXXCommute,
    ZBraid,
    ZS2ConjS,
    ZXSS,
    ZS2ConjX,
    ZXConjCommute,
    ZXXCommutator,
    /// `h̃_i(a) h̃_i(b) = h̃_i(ab)`
    Torus,
}

impl Schema {
    pub fn tag(&self) -> String {
        serde_json::to_value(self).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
    }

    /// Families whose `(i, j)` and `(j, i)` instances differ.
    pub fn is_asymmetric(&self) -> bool {
        use Schema::*;
        matches!(
            self,
            SXCommute
                | S2ConjS
                | XSS
                | S2ConjX
                | XConjCommute
                | XXCommutator
                | ZSXCommute
                | ZS2ConjS
                | ZXSS
                | ZS2ConjX
                | ZXConjCommute
                | ZXXCommutator
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub i: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<i64>,
}

/// `left = right` with an optional equivalent rewriting.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relation {
    pub schema: Schema,
    pub params: Params,
    pub left: Word,
    pub right: Word,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equivalent: Option<Box<(Word, Word)>>,
}

impl Relation {
    pub fn nodes(&self) -> BTreeSet<usize> {
        let mut n = self.left.nodes();
        n.extend(self.right.nodes());
        if let Some(eq) = &self.equivalent {
            n.extend(eq.0.nodes());
            n.extend(eq.1.nodes());
        }
        n
    }

    /// `left · right⁻¹`.
    pub fn relator(&self) -> Word {
        self.left.then(&self.right.inverse())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub diagram: Diagram,
    pub ring: RingSpec,
    pub convention: Convention,
    pub pair_order: PairOrder,
    /// Node carrying the torus relations, when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kac_moody: Option<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
    pub generators: Vec<Symbol>,
    pub relations: Vec<Relation>,
}

impl Serialize for Symbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EmitOptions {
    pub pair_order: PairOrder,
    pub convention: Convention,
    pub exec: Execution,
}

fn s(i: usize) -> Word {
    Word(vec![Letter { symbol: Symbol::S(i), inverse: false }])
}

fn x(i: usize, t: Option<i64>) -> Word {
    Word(vec![Letter { symbol: Symbol::X(i, t), inverse: false }])
}

/// Parameter handling shared by the ring-valued and the ℤ forms.
#[derive(Clone, Copy)]
enum Coeffs<'a> {
    /// Ring parameters drawn from a list of values.
    Ring(&'a RingSpec, &'a [i64]),
    /// The parameter-free generators `X_i` over ℤ.
    Integral,
}

/// `s̃_i(a) = X_i(a) S_i X_i(1/a) S_i⁻¹ X_i(a)` for a unit `a`.
pub fn s_tilde(r: &RingSpec, i: usize, a: i64) -> Result<Word> {
    let inv = r.inv_v(a).ok_or(Error::NotAUnit)?;
    Ok(xr(r, i, a).then(&s(i)).then(&xr(r, i, inv)).then(&s(i).inverse()).then(&xr(r, i, a)))
}

/// `h̃_i(a) = s̃_i(a) s̃_i(-1)`.
pub fn h_tilde(r: &RingSpec, i: usize, a: i64) -> Result<Word> {
    Ok(s_tilde(r, i, a)?.then(&s_tilde(r, i, r.neg_v(r.one_v()))?))
}

/// `X_i(t)` over a finite ring, or `X_i^t` over ℤ.
fn xr(r: &RingSpec, i: usize, t: i64) -> Word {
    match r {
        RingSpec::Integers => {
            let base = x(i, None);
            if t >= 0 {
                base.pow(t as usize)
            } else {
                base.inverse().pow(t.unsigned_abs() as usize)
            }
        }
        _ => x(i, Some(t)),
    }
}

fn rel(schema: Schema, params: Params, left: Word, right: Word) -> Relation {
    Relation { schema, params, left, right, equivalent: None }
}

fn node_block(i: usize, c: Coeffs, conv: Convention) -> Vec<Relation> {
    let mut out = Vec::new();
    let s2 = s(i).pow(2);
    match c {
        Coeffs::Integral => {
            let p = Params { i, ..Default::default() };
            out.push(rel(Schema::ZS2Central, p.clone(), conv.commutator(&s2, &x(i, None)), Word::identity()));
            let def = x(i, None).then(&s(i)).then(&x(i, None)).then(&s(i).inverse()).then(&x(i, None));
            out.push(rel(Schema::ZSDefinition, p, s(i), def));
        }
        Coeffs::Ring(r, vals) => {
            for &t in vals {
                for &u in vals {
                    let p = Params { i, t: Some(t), u: Some(u), ..Default::default() };
                    let sum = r.add_v(t, u);
                    out.push(rel(Schema::Additivity, p, x(i, Some(t)).then(&x(i, Some(u))), x(i, Some(sum))));
                }
            }
            for &t in vals {
                let p = Params { i, t: Some(t), ..Default::default() };
                out.push(rel(Schema::S2Central, p, conv.commutator(&s2, &x(i, Some(t))), Word::identity()));
            }
            let one = Some(r.one_v());
            let def = x(i, one).then(&s(i)).then(&x(i, one)).then(&s(i).inverse()).then(&x(i, one));
            out.push(rel(Schema::SDefinition, Params { i, ..Default::default() }, s(i), def));
        }
    }
    out
}

/// Relations for an unjoined pair; `symmetric` selects the families that
/// are emitted once per unordered pair.
fn unjoined_block(i: usize, j: usize, c: Coeffs, conv: Convention, symmetric: bool) -> Vec<Relation> {
    let mut out = Vec::new();
    let pij = Params { i, j: Some(j), ..Default::default() };
    match c {
        Coeffs::Integral => {
            if symmetric {
                out.push(rel(Schema::ZSCommute, pij.clone(), s(i).then(&s(j)), s(j).then(&s(i))));
            }
            out.push(rel(Schema::ZSXCommute, pij.clone(), conv.commutator(&s(i), &x(j, None)), Word::identity()));
            if symmetric {
                out.push(rel(
                    Schema::ZXXCommute,
                    pij,
                    conv.commutator(&x(i, None), &x(j, None)),
                    Word::identity(),
                ));
            }
        }
        Coeffs::Ring(_, vals) => {
            if symmetric {
                out.push(rel(Schema::SCommute, pij.clone(), s(i).then(&s(j)), s(j).then(&s(i))));
            }
            for &t in vals {
                let p = Params { t: Some(t), ..pij.clone() };
                out.push(rel(Schema::SXCommute, p, conv.commutator(&s(i), &x(j, Some(t))), Word::identity()));
            }
            if symmetric {
                for &t in vals {
                    for &u in vals {
                        let p = Params { t: Some(t), u: Some(u), ..pij.clone() };
                        out.push(rel(
                            Schema::XXCommute,
                            p,
                            conv.commutator(&x(i, Some(t)), &x(j, Some(u))),
                            Word::identity(),
                        ));
                    }
                }
            }
        }
    }
    out
}

fn joined_block(i: usize, j: usize, c: Coeffs, conv: Convention, symmetric: bool) -> Vec<Relation> {
    let mut out = Vec::new();
    let pij = Params { i, j: Some(j), ..Default::default() };
    let si2 = s(i).pow(2);
    let si_2 = s(i).inverse().pow(2);
    let sjsi = s(j).then(&s(i));
    let conj = |w: &Word| s(i).then(w).then(&s(i).inverse());
    let z = matches!(c, Coeffs::Integral);
    let pick = |a: Schema, b: Schema| if z { b } else { a };
    if symmetric {
        out.push(rel(
            pick(Schema::Braid, Schema::ZBraid),
            pij.clone(),
            s(i).then(&s(j)).then(&s(i)),
            s(j).then(&s(i)).then(&s(j)),
        ));
    }
    out.push(rel(
        pick(Schema::S2ConjS, Schema::ZS2ConjS),
        pij.clone(),
        si2.then(&s(j)).then(&si_2),
        s(j).inverse(),
    ));
    match c {
        Coeffs::Integral => {
            let (xi, xj) = (x(i, None), x(j, None));
            out.push(rel(Schema::ZXSS, pij.clone(), xi.then(&sjsi), sjsi.then(&xj)));
            out.push(rel(Schema::ZS2ConjX, pij.clone(), si2.then(&xj).then(&si_2), xj.inverse()));
            out.push(rel(Schema::ZXConjCommute, pij.clone(), conv.commutator(&xi, &conj(&xj)), Word::identity()));
            out.push(rel(Schema::ZXXCommutator, pij, conv.commutator(&xi, &xj), conj(&xj)));
        }
        Coeffs::Ring(r, vals) => {
            for &t in vals {
                let p = Params { t: Some(t), ..pij.clone() };
                out.push(rel(Schema::XSS, p, x(i, Some(t)).then(&sjsi), sjsi.then(&x(j, Some(t)))));
            }
            for &t in vals {
                let p = Params { t: Some(t), ..pij.clone() };
                let xj = x(j, Some(t));
                out.push(rel(Schema::S2ConjX, p, si2.then(&xj).then(&si_2), xj.inverse()));
            }
            for &t in vals {
                for &u in vals {
                    let p = Params { t: Some(t), u: Some(u), ..pij.clone() };
                    out.push(rel(
                        Schema::XConjCommute,
                        p,
                        conv.commutator(&x(i, Some(t)), &conj(&x(j, Some(u)))),
                        Word::identity(),
                    ));
                }
            }
            for &t in vals {
                for &u in vals {
                    let p = Params { t: Some(t), u: Some(u), ..pij.clone() };
                    out.push(rel(
                        Schema::XXCommutator,
                        p,
                        conv.commutator(&x(i, Some(t)), &x(j, Some(u))),
                        conj(&x(j, Some(r.mul_v(t, u)))),
                    ));
                }
            }
        }
    }
    out
}

fn emit_blocks(d: &Diagram, c: Coeffs, opts: EmitOptions) -> Vec<Relation> {
    let n = d.rank();
    let mut blocks: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            blocks.push((i, j));
        }
    }
    let conv = opts.convention;
    let both = opts.pair_order == PairOrder::Both;
    par::flat_map_range(opts.exec, blocks.len(), |k| {
        let (i, j) = blocks[k];
        if i == j {
            return node_block(i, c, conv);
        }
        let block = if d.joined(i, j) { joined_block } else { unjoined_block };
        let mut out = block(i, j, c, conv, true);
        if both {
            out.extend(block(j, i, c, conv, false));
        }
        out
    })
}

fn generators(d: &Diagram, c: Coeffs) -> Vec<Symbol> {
    let n = d.rank();
    let mut g: Vec<Symbol> = (0..n).map(Symbol::S).collect();
    match c {
        Coeffs::Integral => g.extend((0..n).map(|i| Symbol::X(i, None))),
        Coeffs::Ring(_, vals) => {
            for i in 0..n {
                g.extend(vals.iter().map(|&t| Symbol::X(i, Some(t))));
            }
        }
    }
    g
}

/// The ring-parameter relations instantiated over `values`, for any diagram.
/// Over ℤ this is the windowed family used by the matrix checks.
pub fn parametric_relations(d: &Diagram, r: &RingSpec, values: &[i64], opts: EmitOptions) -> Vec<Relation> {
    emit_blocks(d, Coeffs::Ring(r, values), opts)
}

fn build(d: &Diagram, r: &RingSpec, opts: EmitOptions) -> Presentation {
    let values = r.values();
    let c = if r.is_finite() { Coeffs::Ring(r, &values) } else { Coeffs::Integral };
    let mut metadata = BTreeMap::new();
    if !r.is_finite() {
        metadata.insert("x_power".into(), "X_i(u) = X_i^u, X_i = X_i(1)".into());
    }
    Presentation {
        diagram: d.clone(),
        ring: r.clone(),
        convention: opts.convention,
        pair_order: opts.pair_order,
        kac_moody: None,
        metadata,
        generators: generators(d, c),
        relations: emit_blocks(d, c, opts),
    }
}

/// Presentation of the Steinberg group. Requires a hyperbolic diagram.
pub fn steinberg_presentation(d: &Diagram, r: &RingSpec) -> Result<Presentation> {
    steinberg_presentation_with(d, r, EmitOptions::default())
}

pub fn steinberg_presentation_with(d: &Diagram, r: &RingSpec, opts: EmitOptions) -> Result<Presentation> {
    if !d.is_hyperbolic() {
        return Err(Error::NotHyperbolic);
    }
    Ok(build(d, r, opts))
}

/// Emission without the hyperbolicity check, for small or partial diagrams.
pub fn steinberg_presentation_unchecked(d: &Diagram, r: &RingSpec, opts: EmitOptions) -> Presentation {
    build(d, r, opts)
}

/// Adds the torus relations at node `i0`: one relation `h̃(-1)² = 1` over ℤ
/// (with `S⁴ = 1` recorded as its equivalent), otherwise
/// `h̃(a)h̃(b) = h̃(ab)` for every pair of units.
pub fn add_torus_relations(p: &mut Presentation, i0: usize) -> Result<()> {
    if i0 >= p.diagram.rank() {
        return Err(Error::NodeOutOfRange { index: i0, rank: p.diagram.rank() });
    }
    let r = p.ring.clone();
    if r.is_finite() {
        let units = r.unit_values();
        for &a in &units {
            for &b in &units {
                let left = h_tilde(&r, i0, a)?.then(&h_tilde(&r, i0, b)?);
                let right = h_tilde(&r, i0, r.mul_v(a, b))?;
                let params = Params { i: i0, t: Some(a), u: Some(b), ..Default::default() };
                p.relations.push(rel(Schema::Torus, params, left, right));
            }
        }
    } else {
        let h = h_tilde(&r, i0, -1)?;
        let params = Params { i: i0, t: Some(-1), u: Some(-1), ..Default::default() };
        let mut relation = rel(Schema::Torus, params, h.pow(2), Word::identity());
        relation.equivalent = Some(Box::new((s(i0).pow(4), Word::identity())));
        p.relations.push(relation);
    }
    p.kac_moody = Some(i0);
    Ok(())
}

/// Presentation of the Kac–Moody group with torus relations at `i0`.
pub fn kac_moody_presentation(d: &Diagram, r: &RingSpec, i0: usize) -> Result<Presentation> {
    kac_moody_presentation_with(d, r, i0, EmitOptions::default())
}

pub fn kac_moody_presentation_with(d: &Diagram, r: &RingSpec, i0: usize, opts: EmitOptions) -> Result<Presentation> {
    let mut p = steinberg_presentation_with(d, r, opts)?;
    add_torus_relations(&mut p, i0)?;
    Ok(p)
}

/// True when every relation mentions at most two nodes.
pub fn check_locality(p: &Presentation) -> bool {
    p.relations.iter().all(|r| r.nodes().len() <= 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Gap,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            "gap" | "gap_style" => Ok(Format::Gap),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

impl Presentation {
    /// Relation counts per schema tag.
    pub fn statistics(&self) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        for r in &self.relations {
            *m.entry(r.schema.tag()).or_insert(0) += 1;
        }
        m
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn serialize(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
            Format::Gap => self.to_gap(),
        }
    }

    fn header(&self) -> Vec<String> {
        let mut h = vec![
            format!("diagram: {}", self.diagram),
            format!("ring: {}", self.ring),
            format!("convention: [a,b] = {}", self.convention.tag()),
            format!("generators: {}", self.generators.len()),
            format!("relations: {}", self.relations.len()),
        ];
        if let Some(i) = self.kac_moody {
            h.push(format!("torus relations at node {i}"));
        }
        h.extend(self.metadata.iter().map(|(k, v)| format!("{k}: {v}")));
        h
    }

    pub fn to_text(&self) -> String {
        let mut out: String = self.header().iter().map(|l| format!("# {l}\n")).collect();
        out.push_str("# schema counts:\n");
        for (tag, n) in self.statistics() {
            out.push_str(&format!("#   {tag} x{n}\n"));
        }
        for r in &self.relations {
            out.push_str(&format!("{}: {} = {}", r.schema.tag(), r.left, r.right));
            if let Some(eq) = &r.equivalent {
                out.push_str(&format!("  (equivalently {} = {})", eq.0, eq.1));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_gap(&self) -> String {
        let mut out: String = self.header().iter().map(|l| format!("# {l}\n")).collect();
        let names: Vec<String> = self.generators.iter().map(|g| format!("\"{}\"", g.gap_name())).collect();
        out.push_str(&format!("F := FreeGroup({});\n", names.join(", ")));
        for (k, g) in self.generators.iter().enumerate() {
            out.push_str(&format!("{} := F.{};\n", g.gap_name(), k + 1));
        }
        out.push_str(&format!("# relators: {}\n", self.relations.len()));
        out.push_str("rels := [\n");
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| {
                let w = r.relator();
                if w.0.is_empty() {
                    "  One(F)".to_string()
                } else {
                    format!("  {}", w.render("*", true))
                }
            })
            .collect();
        out.push_str(&rels.join(",\n"));
        out.push_str("\n];\nG := F / rels;\n");
        out
    }
}
