//! Coefficient rings: ℤ, ℤ/n, prime fields, and finite rings given by tables.
//!
//! Elements are stored as `i64` values: the integer itself for ℤ, a reduced
//! residue for ℤ/n and F_p, an element index for table rings. The `*_v`
//! methods on [`RingSpec`] work on raw values; [`RingElement`] carries its
//! ring and checks that operands agree.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite commutative ring with 1 given by its operation tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableRing {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub elements: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
    #[serde(skip)]
    neg: Vec<usize>,
}

impl TableRing {
    /// Checks the tables and the ring axioms exhaustively.
    pub fn new(
        name: Option<String>,
        elements: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = elements.len();
        let bad = |m: &str| Err(Error::InvalidRing(m.to_string()));
        if n == 0 {
            return bad("no elements");
        }
        for (label, t) in [("addition", &add), ("multiplication", &mul)] {
            if t.len() != n || t.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
                return Err(Error::InvalidRing(format!("{label} table is not {n}×{n} over the elements")));
            }
        }
        if zero >= n || one >= n {
            return bad("zero or one out of range");
        }
        let mut names = elements.clone();
        names.sort();
        names.dedup();
        if names.len() != n {
            return bad("duplicate element names");
        }
        let r = 0..n;
        for a in r.clone() {
            if add[zero][a] != a || mul[one][a] != a {
                return bad("zero or one is not an identity");
            }
            for b in r.clone() {
                if add[a][b] != add[b][a] {
                    return bad("addition is not commutative");
                }
                if mul[a][b] != mul[b][a] {
                    return bad("multiplication is not commutative");
                }
                for c in r.clone() {
                    if add[add[a][b]][c] != add[a][add[b][c]] {
                        return bad("addition is not associative");
                    }
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return bad("multiplication is not associative");
                    }
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                        return bad("multiplication does not distribute over addition");
                    }
                }
            }
        }
        let mut neg = Vec::with_capacity(n);
        for a in r.clone() {
            match r.clone().find(|&b| add[a][b] == zero) {
                Some(b) => neg.push(b),
                None => return bad("missing additive inverse"),
            }
        }
        Ok(TableRing { name, elements, add, mul, zero, one, neg })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: TableRing = serde_json::from_str(s).map_err(|e| Error::InvalidRing(e.to_string()))?;
        TableRing::new(raw.name, raw.elements, raw.add, raw.mul, raw.zero, raw.one)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table ring serializes")
    }

    /// The field with four elements `{0, 1, a, b}`, `b = a + 1 = a²`.
    pub fn gf4() -> Self {
        let elements = ["0", "1", "a", "b"].map(String::from).to_vec();
        // Index i ↔ bit pattern i over F2[a]/(a²+a+1): 0, 1, a, a+1.
        let add = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
        let mul_bits = |x: usize, y: usize| {
            let mut p = 0usize;
            for k in 0..2 {
                if y >> k & 1 == 1 {
                    p ^= x << k;
                }
            }
            if p & 4 != 0 {
                p ^= 0b111;
            }
            p
        };
        let mul = (0..4).map(|x| (0..4).map(|y| mul_bits(x, y)).collect()).collect();
        TableRing::new(Some("F4".into()), elements, add, mul, 0, 1).expect("F4 tables are a field")
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }
}

/// A coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    IntegersMod(u64),
    PrimeField(u64),
    Table(Arc<TableRing>),
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl RingSpec {
    pub fn integers_mod(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRing("modulus must be at least 1".into()));
        }
        if n > i32::MAX as u64 {
            return Err(Error::UnsupportedRing(format!("modulus {n} is too large")));
        }
        Ok(RingSpec::IntegersMod(n))
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if p > i32::MAX as u64 {
            return Err(Error::UnsupportedRing(format!("prime {p} is too large")));
        }
        Ok(RingSpec::PrimeField(p))
    }

    pub fn table(t: TableRing) -> Self {
        RingSpec::Table(Arc::new(t))
    }

    /// `"Z"`, `"Z/7"`, `"F5"`, or a path to a JSON table file.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Z" {
            return Ok(RingSpec::Integers);
        }
        if let Some(n) = t.strip_prefix("Z/") {
            let n = n.parse().map_err(|_| Error::Parse(format!("bad modulus in {t:?}")))?;
            return RingSpec::integers_mod(n);
        }
        if let Some(p) = t.strip_prefix('F').filter(|r| !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit())) {
            let p: u64 = p.parse().map_err(|_| Error::Parse(format!("bad field size in {t:?}")))?;
            if !is_prime(p) {
                return Err(Error::UnsupportedRing(format!(
                    "F{p}: only prime fields are built in; pass a table file"
                )));
            }
            return RingSpec::prime_field(p);
        }
        let path = Path::new(t);
        if path.exists() {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{t}: {e}")))?;
            return Ok(RingSpec::table(TableRing::from_json(&text)?));
        }
        Err(Error::Parse(format!("unknown ring {t:?}")))
    }

    /// Number of elements, `None` for ℤ.
    pub fn size(&self) -> Option<usize> {
        match self {
            RingSpec::Integers => None,
            RingSpec::IntegersMod(n) | RingSpec::PrimeField(n) => Some(*n as usize),
            RingSpec::Table(t) => Some(t.size()),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    pub fn characteristic_two(&self) -> bool {
        self.add_v(self.one_v(), self.one_v()) == self.zero_v()
    }

    pub fn zero_v(&self) -> i64 {
        match self {
            RingSpec::Table(t) => t.zero as i64,
            _ => 0,
        }
    }

    pub fn one_v(&self) -> i64 {
        match self {
            RingSpec::Table(t) => t.one as i64,
            RingSpec::IntegersMod(1) => 0,
            _ => 1,
        }
    }

    /// The image of an integer under `ℤ → R`.
    pub fn from_int_v(&self, k: i64) -> i64 {
        match self {
            RingSpec::Integers => k,
            RingSpec::IntegersMod(n) | RingSpec::PrimeField(n) => k.rem_euclid(*n as i64),
            RingSpec::Table(_) => {
                let base = if k < 0 { self.neg_v(self.one_v()) } else { self.one_v() };
                (0..k.unsigned_abs()).fold(self.zero_v(), |acc, _| self.add_v(acc, base))
            }
        }
    }

    pub fn add_v(&self, a: i64, b: i64) -> i64 {
        match self {
            RingSpec::Integers => a + b,
            RingSpec::IntegersMod(n) | RingSpec::PrimeField(n) => (a + b).rem_euclid(*n as i64),
            RingSpec::Table(t) => t.add[a as usize][b as usize] as i64,
        }
    }

    pub fn mul_v(&self, a: i64, b: i64) -> i64 {
        match self {
            RingSpec::Integers => a * b,
            RingSpec::IntegersMod(n) | RingSpec::PrimeField(n) => (a * b).rem_euclid(*n as i64),
            RingSpec::Table(t) => t.mul[a as usize][b as usize] as i64,
        }
    }

    pub fn neg_v(&self, a: i64) -> i64 {
        match self {
            RingSpec::Integers => -a,
            RingSpec::IntegersMod(n) | RingSpec::PrimeField(n) => (-a).rem_euclid(*n as i64),
            RingSpec::Table(t) => t.neg[a as usize] as i64,
        }
    }

    pub fn sub_v(&self, a: i64, b: i64) -> i64 {
        self.add_v(a, self.neg_v(b))
    }

    pub fn inv_v(&self, a: i64) -> Option<i64> {
        match self {
            RingSpec::Integers => (a == 1 || a == -1).then_some(a),
            _ => self.values().into_iter().find(|&b| self.mul_v(a, b) == self.one_v()),
        }
    }

    /// All element values of a finite ring in index order; empty for ℤ.
    pub fn values(&self) -> Vec<i64> {
        match self.size() {
            Some(n) => (0..n as i64).collect(),
            None => Vec::new(),
        }
    }

    pub fn unit_values(&self) -> Vec<i64> {
        match self {
            RingSpec::Integers => vec![1, -1],
            _ => self.values().into_iter().filter(|&a| self.inv_v(a).is_some()).collect(),
        }
    }

    pub fn contains_v(&self, v: i64) -> bool {
        match self.size() {
            None => true,
            Some(n) => (0..n as i64).contains(&v),
        }
    }

    pub fn element(&self, v: i64) -> Result<RingElement> {
        if !self.contains_v(v) {
            return Err(Error::InvalidRing(format!("{v} is not an element of {self}")));
        }
        Ok(RingElement { spec: self.clone(), value: v })
    }

    pub fn zero(&self) -> RingElement {
        RingElement { spec: self.clone(), value: self.zero_v() }
    }

    pub fn one(&self) -> RingElement {
        RingElement { spec: self.clone(), value: self.one_v() }
    }

    /// All elements of a finite ring; `None` for ℤ.
    pub fn elements(&self) -> Option<Vec<RingElement>> {
        self.size().map(|_| self.values().into_iter().map(|v| RingElement { spec: self.clone(), value: v }).collect())
    }

    /// The unit group: `{1, -1}` for ℤ, a brute-force scan otherwise.
    pub fn units(&self) -> Vec<RingElement> {
        self.unit_values().into_iter().map(|v| RingElement { spec: self.clone(), value: v }).collect()
    }

    pub fn format_v(&self, v: i64) -> String {
        match self {
            RingSpec::Table(t) => t.elements[v as usize].clone(),
            _ => v.to_string(),
        }
    }

    pub fn parse_v(&self, s: &str) -> Result<i64> {
        let v = match self {
            RingSpec::Table(t) => t.index_of(s).map(|i| i as i64),
            _ => s.trim().parse::<i64>().ok(),
        };
        v.filter(|&v| self.contains_v(v))
            .ok_or_else(|| Error::Parse(format!("{s:?} is not an element of {self}")))
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::IntegersMod(n) => write!(f, "Z/{n}"),
            RingSpec::PrimeField(p) => write!(f, "F{p}"),
            RingSpec::Table(t) => match &t.name {
                Some(n) => write!(f, "{n}"),
                None => write!(f, "Table({})", t.size()),
            },
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RingRecord {
    Named(String),
    Table(TableRing),
}

impl Serialize for RingSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RingSpec::Table(t) => RingRecord::Table((**t).clone()).serialize(s),
            other => RingRecord::Named(other.to_string()).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match RingRecord::deserialize(d)? {
            RingRecord::Named(n) if n.contains('/') || n == "Z" || n.starts_with('F') => {
                RingSpec::parse(&n).map_err(D::Error::custom)
            }
            RingRecord::Named(n) => Err(D::Error::custom(format!("unknown ring {n:?}"))),
            RingRecord::Table(t) => TableRing::new(t.name, t.elements, t.add, t.mul, t.zero, t.one)
                .map(RingSpec::table)
                .map_err(D::Error::custom),
        }
    }
}

/// An element together with its ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    spec: RingSpec,
    value: i64,
}

impl RingElement {
    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    fn same(&self, o: &RingElement) -> Result<()> {
        if self.spec != o.spec {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    fn wrap(&self, value: i64) -> RingElement {
        RingElement { spec: self.spec.clone(), value }
    }

    pub fn add(&self, o: &RingElement) -> Result<RingElement> {
        self.same(o)?;
        Ok(self.wrap(self.spec.add_v(self.value, o.value)))
    }

    pub fn sub(&self, o: &RingElement) -> Result<RingElement> {
        self.same(o)?;
        Ok(self.wrap(self.spec.sub_v(self.value, o.value)))
    }

    pub fn mul(&self, o: &RingElement) -> Result<RingElement> {
        self.same(o)?;
        Ok(self.wrap(self.spec.mul_v(self.value, o.value)))
    }

    pub fn neg(&self) -> RingElement {
        self.wrap(self.spec.neg_v(self.value))
    }

    pub fn inv(&self) -> Result<RingElement> {
        self.spec.inv_v(self.value).map(|v| self.wrap(v)).ok_or(Error::NotAUnit)
    }

    pub fn is_unit(&self) -> bool {
        self.spec.inv_v(self.value).is_some()
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec.format_v(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn specs() -> Vec<RingSpec> {
        vec![
            RingSpec::integers_mod(1).unwrap(),
            RingSpec::integers_mod(2).unwrap(),
            RingSpec::integers_mod(4).unwrap(),
            RingSpec::integers_mod(6).unwrap(),
            RingSpec::prime_field(5).unwrap(),
            RingSpec::table(TableRing::gf4()),
        ]
    }

    #[test]
    fn arithmetic() {
        let z = RingSpec::Integers;
        assert_eq!(z.element(2).unwrap().add(&z.element(3).unwrap()).unwrap().value(), 5);
        let z5 = RingSpec::parse("Z/5").unwrap();
        assert_eq!(z5.element(3).unwrap().mul(&z5.element(4).unwrap()).unwrap().value(), 2);
        let f4 = RingSpec::table(TableRing::gf4());
        let a = f4.element(2).unwrap();
        assert_eq!(a.mul(&a).unwrap().to_string(), "b");
        assert_eq!(a.add(&f4.one()).unwrap().to_string(), "b");
        assert_eq!(z.one().add(&z5.one()), Err(Error::RingMismatch));
        assert!(z5.element(5).is_err());
    }

    #[test]
    fn units_and_inverses() {
        let z = RingSpec::Integers;
        assert_eq!(z.unit_values(), vec![1, -1]);
        assert_eq!(z.element(-1).unwrap().inv().unwrap().value(), -1);
        assert_eq!(z.element(2).unwrap().inv(), Err(Error::NotAUnit));
        let z5 = RingSpec::parse("Z/5").unwrap();
        assert_eq!(z5.unit_values(), vec![1, 2, 3, 4]);
        assert_eq!(z5.element(2).unwrap().inv().unwrap().value(), 3);
        let z4 = RingSpec::parse("Z/4").unwrap();
        assert_eq!(z4.element(3).unwrap().inv().unwrap().value(), 3);
        assert_eq!(z4.unit_values(), vec![1, 3]);
        let z1 = RingSpec::parse("Z/1").unwrap();
        assert_eq!(z1.unit_values(), vec![0]);
        assert_eq!(RingSpec::table(TableRing::gf4()).units().len(), 3);
    }

    #[test]
    fn axioms_exhaustive() {
        for r in specs() {
            let vs = r.values();
            for &a in &vs {
                for &b in &vs {
                    assert_eq!(r.add_v(a, b), r.add_v(b, a));
                    assert_eq!(r.mul_v(a, b), r.mul_v(b, a));
                    for &c in &vs {
                        assert_eq!(r.mul_v(a, r.add_v(b, c)), r.add_v(r.mul_v(a, b), r.mul_v(a, c)));
                        assert_eq!(r.mul_v(r.mul_v(a, b), c), r.mul_v(a, r.mul_v(b, c)));
                    }
                }
                assert_eq!(r.add_v(a, r.neg_v(a)), r.zero_v());
                // units() is exactly the invertible elements.
                let invertible = vs.iter().any(|&b| r.mul_v(a, b) == r.one_v());
                assert_eq!(invertible, r.unit_values().contains(&a), "{r} {a}");
            }
        }
        let z = RingSpec::Integers;
        for a in -6..=6 {
            for b in -6..=6 {
                for c in -6..=6 {
                    assert_eq!(z.mul_v(a, z.add_v(b, c)), z.add_v(z.mul_v(a, b), z.mul_v(a, c)));
                }
            }
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(RingSpec::parse("Z").unwrap(), RingSpec::Integers);
        assert_eq!(RingSpec::parse("F5").unwrap(), RingSpec::PrimeField(5));
        assert!(matches!(RingSpec::parse("F4"), Err(Error::UnsupportedRing(_))));
        assert!(matches!(RingSpec::parse("F6"), Err(Error::UnsupportedRing(_))));
        assert!(matches!(RingSpec::parse("Z/0"), Err(Error::InvalidRing(_))));
        assert!(matches!(RingSpec::parse("Q"), Err(Error::Parse(_))));
        let dir = std::env::temp_dir().join(format!("kmx-ring-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("f4.json");
        std::fs::write(&path, TableRing::gf4().to_json()).unwrap();
        let r = RingSpec::parse(path.to_str().unwrap()).unwrap();
        assert_eq!(r, RingSpec::table(TableRing::gf4()));
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn bad_tables_rejected() {
        let g = TableRing::gf4();
        let mut mul = g.mul.clone();
        mul[2][3] = 2;
        let r = TableRing::new(None, g.elements.clone(), g.add.clone(), mul, 0, 1);
        assert!(matches!(r, Err(Error::InvalidRing(_))));
        let r = TableRing::new(None, g.elements.clone(), g.add.clone(), g.mul.clone(), 0, 2);
        assert!(matches!(r, Err(Error::InvalidRing(_))));
        // Z/2 × Z/2 with componentwise operations is a valid non-field.
        let add = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
        let mul = (0..4).map(|x| (0..4).map(|y| x & y).collect()).collect();
        let names = ["00", "01", "10", "11"].map(String::from).to_vec();
        let r = RingSpec::table(TableRing::new(None, names, add, mul, 0, 3).unwrap());
        assert_eq!(r.unit_values(), vec![3]);
    }

    #[test]
    fn serde_roundtrip() {
        for r in specs().into_iter().chain([RingSpec::Integers]) {
            let s = serde_json::to_string(&r).unwrap();
            assert_eq!(serde_json::from_str::<RingSpec>(&s).unwrap(), r);
        }
    }
}
