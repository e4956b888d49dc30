//! Integral group rings ℤ[Γ]: dimension ≡ 1, involution = inversion and
//! `N_{g,h}^k = [gh = k]`.

use std::collections::BTreeMap;

use crate::dim::Dim;
use crate::error::{FusionError, Result};
use crate::label::{self, parse_word, reduce_word, Label, MAX_FREE_RANK};
use crate::ring::{FusionRules, ProductMap};

fn single(label: Label) -> ProductMap {
    let mut m = BTreeMap::new();
    m.insert(label, 1);
    m
}

/// ℤ^d. Labels are `Int` for d = 1 and `Vector` otherwise.
#[derive(Debug, Clone)]
pub struct LatticeRules {
    d: usize,
}

impl LatticeRules {
    pub fn new(d: usize) -> Result<LatticeRules> {
        if d == 0 {
            return Err(FusionError::InvalidParam("lattice rank must be ≥ 1".into()));
        }
        Ok(LatticeRules { d })
    }

    fn coords(&self, l: &Label) -> Vec<i64> {
        match l {
            Label::Int(k) => vec![*k],
            Label::Vector(v) => v.clone(),
            _ => unreachable!("validated label"),
        }
    }

    fn make(&self, v: Vec<i64>) -> Label {
        if self.d == 1 {
            Label::Int(v[0])
        } else {
            Label::Vector(v)
        }
    }
}

impl FusionRules for LatticeRules {
    fn description(&self) -> String {
        format!("group ring of Z^{}", self.d)
    }

    fn unit(&self) -> Label {
        self.make(vec![0; self.d])
    }

    fn contains(&self, label: &Label) -> bool {
        match label {
            Label::Int(_) => self.d == 1,
            Label::Vector(v) => self.d >= 2 && v.len() == self.d,
            _ => false,
        }
    }

    fn conjugate(&self, label: &Label) -> Label {
        self.make(self.coords(label).into_iter().map(|x| -x).collect())
    }

    fn dim(&self, _label: &Label) -> Dim {
        Dim::one()
    }

    fn product(&self, a: &Label, b: &Label) -> Result<ProductMap> {
        let sum = self
            .coords(a)
            .iter()
            .zip(self.coords(b))
            .map(|(x, y)| x.checked_add(y).ok_or(FusionError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(single(self.make(sum)))
    }

    fn parse_label(&self, text: &str) -> Result<Label> {
        let inner = label::strip_parens(text).unwrap_or(text);
        let parts = label::split_top_level(inner);
        if parts.len() != self.d {
            return Err(FusionError::InvalidLabel(text.to_string()));
        }
        let v = parts.iter().map(|p| label::parse_int(p)).collect::<Result<Vec<_>>>()?;
        Ok(self.make(v))
    }

    fn generators(&self) -> Vec<Label> {
        let mut gens = Vec::new();
        for i in 0..self.d {
            for s in [1, -1] {
                let mut v = vec![0; self.d];
                v[i] = s;
                gens.push(self.make(v));
            }
        }
        gens
    }

    fn integer_labels(&self) -> bool {
        self.d == 1
    }
}

/// The free group on `rank` generators; labels are reduced words.
#[derive(Debug, Clone)]
pub struct FreeGroupRules {
    rank: usize,
}

impl FreeGroupRules {
    pub fn new(rank: usize) -> Result<FreeGroupRules> {
        if rank == 0 || rank > MAX_FREE_RANK {
            return Err(FusionError::InvalidParam(format!(
                "free group rank must be in 1..={MAX_FREE_RANK}"
            )));
        }
        Ok(FreeGroupRules { rank })
    }

    fn word<'a>(&self, l: &'a Label) -> &'a [i32] {
        match l {
            Label::Word(w) => w,
            _ => unreachable!("validated label"),
        }
    }
}

impl FusionRules for FreeGroupRules {
    fn description(&self) -> String {
        format!("group ring of the free group F_{}", self.rank)
    }

    fn unit(&self) -> Label {
        Label::Word(Vec::new())
    }

    fn contains(&self, label: &Label) -> bool {
        match label {
            Label::Word(w) => {
                w.iter().all(|&x| x != 0 && x.unsigned_abs() as usize <= self.rank)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            _ => false,
        }
    }

    fn conjugate(&self, label: &Label) -> Label {
        Label::Word(self.word(label).iter().rev().map(|x| -x).collect())
    }

    fn dim(&self, _label: &Label) -> Dim {
        Dim::one()
    }

    fn product(&self, a: &Label, b: &Label) -> Result<ProductMap> {
        let joined = self.word(a).iter().chain(self.word(b)).copied();
        Ok(single(Label::Word(reduce_word(joined))))
    }

    fn parse_label(&self, text: &str) -> Result<Label> {
        Ok(Label::Word(parse_word(text, self.rank)?))
    }

    fn generators(&self) -> Vec<Label> {
        (1..=self.rank as i32).map(|g| Label::Word(vec![g])).collect()
    }
}

/// A finite group given by its multiplication table; labels are row indices.
#[derive(Debug, Clone)]
pub struct FiniteGroupRules {
    name: String,
    table: Vec<Vec<usize>>,
    unit: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

impl FiniteGroupRules {
    /// Validates closure, identity, inverses and associativity.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroupRules> {
        let n = table.len();
        if n == 0 {
            return Err(FusionError::InvalidTable("empty multiplication table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(FusionError::InvalidTable(format!("row {i} has length {} ≠ {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(FusionError::InvalidTable(format!("entry {bad} in row {i} out of range")));
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| FusionError::InvalidTable("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| table[g][h] == unit && table[h][g] == unit)
                .ok_or_else(|| FusionError::InvalidTable(format!("element {g} has no inverse")))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(FusionError::InvalidTable(format!(
                            "not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let generators = (0..n).filter(|&g| g != unit).collect();
        Ok(FiniteGroupRules {
            name: name.into(),
            table,
            unit,
            inverse,
            generators,
        })
    }

    /// ℤ/n with generator 1.
    pub fn cyclic(n: usize) -> Result<FiniteGroupRules> {
        if n == 0 {
            return Err(FusionError::InvalidParam("cyclic order must be ≥ 1".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mut rules = FiniteGroupRules::from_table(format!("group ring of Z/{n}"), table)?;
        rules.generators = if n > 1 { vec![1] } else { Vec::new() };
        Ok(rules)
    }

    fn index(&self, l: &Label) -> usize {
        match l {
            Label::Int(k) => *k as usize,
            _ => unreachable!("validated label"),
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }
}

impl FusionRules for FiniteGroupRules {
    fn description(&self) -> String {
        self.name.clone()
    }

    fn unit(&self) -> Label {
        Label::Int(self.unit as i64)
    }

    fn contains(&self, label: &Label) -> bool {
        matches!(label, Label::Int(k) if *k >= 0 && (*k as usize) < self.table.len())
    }

    fn conjugate(&self, label: &Label) -> Label {
        Label::Int(self.inverse[self.index(label)] as i64)
    }

    fn dim(&self, _label: &Label) -> Dim {
        Dim::one()
    }

    fn product(&self, a: &Label, b: &Label) -> Result<ProductMap> {
        Ok(single(Label::Int(self.table[self.index(a)][self.index(b)] as i64)))
    }

    fn parse_label(&self, text: &str) -> Result<Label> {
        Ok(Label::Int(label::parse_int(text)?))
    }

    fn generators(&self) -> Vec<Label> {
        self.generators.iter().map(|&g| Label::Int(g as i64)).collect()
    }

    fn finite_basis(&self) -> Option<Vec<Label>> {
        Some((0..self.table.len()).map(|g| Label::Int(g as i64)).collect())
    }

    fn integer_labels(&self) -> bool {
        true
    }
}
