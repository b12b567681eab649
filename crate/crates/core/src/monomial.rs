//! Exact monomial and monomial-ideal arithmetic.
//!
//! Monomials are dense exponent vectors over a fixed number of variables.
//! Every API that takes a *variable index* uses the 1-based convention
//! `x_1, ..., x_n`; raw exponent slices are 0-based as usual.
//!
//! A [`MonomialIdeal`] always stores its unique minimal generating set,
//! sorted in descending lexicographic order with `x_1 > x_2 > ... > x_n`.
//! Ideal equality is therefore plain generator-list equality.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    /// The variable `x_i` (1-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!((1..=nvars).contains(&i), "variable x_{i} out of range 1..={nvars}");
        let mut exps = vec![0; nvars];
        exps[i - 1] = 1;
        Monomial { exps }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// `x_F`, the squarefree monomial on the 1-based index set `F`.
    pub fn squarefree<I: IntoIterator<Item = usize>>(nvars: usize, support: I) -> Self {
        let mut m = Monomial::one(nvars);
        for i in support {
            assert!((1..=nvars).contains(&i), "variable x_{i} out of range 1..={nvars}");
            m.exps[i - 1] += 1;
        }
        m
    }

    /// `x_1 x_2 ... x_n`.
    pub fn alpha(nvars: usize) -> Self {
        Monomial { exps: vec![1; nvars] }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of `x_i` (1-based).
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i - 1]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// 1-based indices of the variables dividing this monomial.
    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, _)| k + 1)
            .collect()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exps })
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    /// `self / gcd(self, other)`.
    pub fn quotient_by_gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - a.min(b))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| e * k).collect(),
        }
    }

    /// Re-indexes variables: variable `x_i` of `self` becomes `x_{map[i-1]}`
    /// of a ring with `target_nvars` variables.
    pub fn reindex(&self, map: &[usize], target_nvars: usize) -> Monomial {
        debug_assert_eq!(map.len(), self.nvars());
        let mut exps = vec![0; target_nvars];
        for (k, &e) in self.exps.iter().enumerate() {
            exps[map[k] - 1] += e;
        }
        Monomial { exps }
    }

    /// Descending-lex comparison under `x_1 > ... > x_n`; identical to `Ord`.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order with `x_1 > x_2 > ... > x_n`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(other)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", k + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Minimal generating set in canonical (descending lex) order.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    gens.dedup();
    let single_degree = gens.first().map(|g| g.degree()) == gens.last().map(|g| g.degree());
    if !single_degree {
        let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
        // kept is sorted by degree, so only the prefix of strictly smaller degree can divide.
        let mut lower_end = 0;
        let mut current_degree = None;
        for g in gens {
            let d = g.degree();
            if current_degree != Some(d) {
                current_degree = Some(d);
                lower_end = kept.len();
            }
            if !kept[..lower_end].iter().any(|k| k.divides(&g)) {
                kept.push(g);
            }
        }
        gens = kept;
    }
    gens.sort_by(|a, b| b.cmp(a));
    gens
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![Monomial::one(nvars)],
        }
    }

    pub fn principal(m: Monomial) -> Self {
        MonomialIdeal {
            nvars: m.nvars(),
            gens: vec![m],
        }
    }

    /// The ideal generated by `gens`, reduced to its minimal generators.
    pub fn from_generators<I: IntoIterator<Item = Monomial>>(nvars: usize, gens: I) -> Self {
        let gens: Vec<Monomial> = gens.into_iter().collect();
        assert!(
            gens.iter().all(|g| g.nvars() == nvars),
            "generator with wrong variable count"
        );
        MonomialIdeal {
            nvars,
            gens: minimalize(gens),
        }
    }

    /// The maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(nvars: usize) -> Self {
        Self::from_generators(nvars, (1..=nvars).map(|i| Monomial::var(nvars, i)))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    /// The common degree of all generators, if there is one.
    pub fn single_degree(&self) -> Option<u32> {
        let d = self.gens.first()?.degree();
        self.gens.iter().all(|g| g.degree() == d).then_some(d)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|m| self.contains(m))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.nvars, other.nvars);
        Self::from_generators(self.nvars, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.nvars, other.nvars);
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        Self::from_generators(self.nvars, gens)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal {
            nvars: self.nvars,
            gens: minimalize(self.gens.iter().map(|g| g.mul(m)).collect()),
        }
    }

    pub fn power(&self, s: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.nvars);
        for _ in 0..s {
            acc = acc.product(self);
        }
        acc
    }

    /// `I^t`, with `I^t = 0` for negative `t`.
    pub fn power_signed(&self, t: i64) -> MonomialIdeal {
        if t < 0 {
            MonomialIdeal::zero(self.nvars)
        } else {
            self.power(t as u32)
        }
    }

    /// `(I : m)`.
    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        Self::from_generators(self.nvars, self.gens.iter().map(|u| u.quotient_by_gcd(m)))
    }

    /// Greatest common divisor of all generators; `None` for the zero ideal.
    pub fn content(&self) -> Option<Monomial> {
        let mut it = self.gens.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, g| acc.gcd(g)))
    }

    /// Splits `I = g·J` with `g` the gcd of the generators of `I`.
    pub fn divide_out(&self) -> Result<(Monomial, MonomialIdeal)> {
        let g = self
            .content()
            .ok_or_else(|| Error::precondition("cannot divide out the zero ideal"))?;
        let gens = self
            .gens
            .iter()
            .map(|u| u.checked_div(&g).expect("content divides every generator"))
            .collect();
        Ok((
            g,
            MonomialIdeal {
                nvars: self.nvars,
                gens: minimalize(gens),
            },
        ))
    }

    /// Re-indexes variables (see [`Monomial::reindex`]).
    pub fn reindex(&self, map: &[usize], target_nvars: usize) -> MonomialIdeal {
        Self::from_generators(
            target_nvars,
            self.gens.iter().map(|g| g.reindex(map, target_nvars)),
        )
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            n: self.nvars,
            gens: self.gens.iter().map(|g| g.exps.clone()).collect(),
        }
    }

    pub fn from_json(json: IdealJson) -> Result<Self> {
        if let Some(bad) = json.gens.iter().find(|g| g.len() != json.n) {
            return Err(Error::invalid(format!(
                "generator has {} exponents, expected {}",
                bad.len(),
                json.n
            )));
        }
        Ok(Self::from_generators(
            json.n,
            json.gens.into_iter().map(Monomial::from_exponents),
        ))
    }

    /// First failure of the (strong) exchange property, if any.
    pub fn exchange_violation(&self, strong: bool) -> Option<ExchangeViolation> {
        if !self.gens.is_empty() && self.single_degree().is_none() {
            return Some(ExchangeViolation::MixedDegrees);
        }
        let members: HashSet<&Monomial> = self.gens.iter().collect();
        for u in &self.gens {
            for v in &self.gens {
                for i in 0..self.nvars {
                    if u.exps[i] <= v.exps[i] {
                        continue;
                    }
                    let mut found = false;
                    for j in 0..self.nvars {
                        if u.exps[j] >= v.exps[j] {
                            continue;
                        }
                        let mut w = u.clone();
                        w.exps[i] -= 1;
                        w.exps[j] += 1;
                        if members.contains(&w) {
                            found = true;
                            if !strong {
                                break;
                            }
                        } else if strong {
                            return Some(ExchangeViolation::Pair {
                                u: u.clone(),
                                v: v.clone(),
                                i: i + 1,
                                j: Some(j + 1),
                            });
                        }
                    }
                    if !strong && !found {
                        return Some(ExchangeViolation::Pair {
                            u: u.clone(),
                            v: v.clone(),
                            i: i + 1,
                            j: None,
                        });
                    }
                }
            }
        }
        None
    }

    pub fn is_polymatroidal(&self) -> bool {
        self.exchange_violation(false).is_none()
    }

    pub fn has_strong_exchange(&self) -> bool {
        self.exchange_violation(true).is_none()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Why an ideal fails an exchange property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExchangeViolation {
    MixedDegrees,
    /// `deg_{x_i}(u) > deg_{x_i}(v)` and `x_j (u / x_i)` is not in the ideal
    /// (for the plain property, no admissible `j` works and `j` is `None`).
    Pair {
        u: Monomial,
        v: Monomial,
        i: usize,
        j: Option<usize>,
    },
}

/// Wire form of an ideal: `{"n": .., "gens": [[e1, .., en], ..]}` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub n: usize,
    pub gens: Vec<Vec<u32>>,
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = IdealJson::deserialize(deserializer)?;
        MonomialIdeal::from_json(json).map_err(serde::de::Error::custom)
    }
}

/// `m^{[i]}`: all squarefree monomials of degree `i`.
pub fn squarefree_power_of_maximal(nvars: usize, i: usize) -> Result<MonomialIdeal> {
    if i > nvars {
        return Err(Error::precondition(format!(
            "squarefree power {i} exceeds the number of variables {nvars}"
        )));
    }
    Ok(MonomialIdeal::from_generators(
        nvars,
        itertools::Itertools::combinations(1..=nvars, i).map(|f| Monomial::squarefree(nvars, f)),
    ))
}

/// Cap vector and degree of an ideal of Veronese type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VeroneseSpec {
    pub caps: Vec<u32>,
    pub degree: u32,
}

impl VeroneseSpec {
    pub fn new(caps: Vec<u32>, degree: u32) -> Result<Self> {
        let total: u32 = caps.iter().sum();
        if degree > total {
            return Err(Error::precondition(format!(
                "degree {degree} exceeds the cap total {total}"
            )));
        }
        Ok(VeroneseSpec { caps, degree })
    }

    pub fn total(&self) -> u32 {
        self.caps.iter().sum()
    }
}

/// `I_{a,d}`: all degree-`d` monomials whose exponents are bounded by `a`.
pub fn veronese_type(spec: &VeroneseSpec) -> MonomialIdeal {
    fn fill(caps: &[u32], k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == caps.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(cur.clone()));
            }
            return;
        }
        let rest: u32 = caps[k + 1..].iter().sum();
        let lo = left.saturating_sub(rest);
        for e in lo..=caps[k].min(left) {
            cur[k] = e;
            fill(caps, k + 1, left - e, cur, out);
        }
        cur[k] = 0;
    }
    let n = spec.caps.len();
    let mut out = Vec::new();
    fill(&spec.caps, 0, spec.degree, &mut vec![0; n], &mut out);
    MonomialIdeal::from_generators(n, out)
}
