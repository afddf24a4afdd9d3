//! Class functions on products of symmetric groups S_m and type C Weyl
//! groups W_N, with characters, class maps, induction and restriction.
//!
//! Conjugacy classes of S_m are partitions (cycle types). Classes of W_N are
//! bipartitions (μ, ν): μ lists the positive cycles and ν the negative ones.
//! Irreducible characters are indexed by the same labels; for W_N the
//! bipartition ((1), ()) is the trivial character of W_1 and ((), (1)) the
//! sign character, so that tensoring by sgn_CD swaps the two components.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::orbits::partitions;
use crate::scalars::{CycloScalar, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FactorKind {
    Sym,
    WeylC,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Factor {
    pub kind: FactorKind,
    pub rank: u32,
}

impl Factor {
    pub fn sym(rank: u32) -> Self {
        Factor { kind: FactorKind::Sym, rank }
    }

    pub fn weyl(rank: u32) -> Self {
        Factor { kind: FactorKind::WeylC, rank }
    }
}

/// An ordered product of symmetric and type C Weyl groups.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GroupShape(pub Vec<Factor>);

impl GroupShape {
    pub fn new(factors: Vec<Factor>) -> Self {
        GroupShape(factors)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|f| f.rank == 0)
    }

    pub fn concat(&self, other: &GroupShape) -> GroupShape {
        GroupShape(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn order(&self) -> BigUint {
        shape_info(self).order.clone()
    }
}

/// A conjugacy class (or irreducible label) of one factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorClass {
    Sym(Vec<u32>),
    WeylC(Vec<u32>, Vec<u32>),
}

impl FactorClass {
    pub fn size(&self) -> u32 {
        match self {
            FactorClass::Sym(p) => p.iter().sum(),
            FactorClass::WeylC(a, b) => a.iter().sum::<u32>() + b.iter().sum::<u32>(),
        }
    }

    pub fn kind(&self) -> FactorKind {
        match self {
            FactorClass::Sym(_) => FactorKind::Sym,
            FactorClass::WeylC(..) => FactorKind::WeylC,
        }
    }

    /// Number of negative cycles (0 for symmetric-group classes).
    pub fn negative_cycles(&self) -> usize {
        match self {
            FactorClass::Sym(_) => 0,
            FactorClass::WeylC(_, b) => b.len(),
        }
    }

    /// Number of cycles, positive and negative together.
    pub fn cycles(&self) -> usize {
        match self {
            FactorClass::Sym(p) => p.len(),
            FactorClass::WeylC(a, b) => a.len() + b.len(),
        }
    }

    /// Cycle lengths paired with their sign (always positive for Sym).
    pub fn signed_cycles(&self) -> impl Iterator<Item = (u32, bool)> + '_ {
        let (pos, neg): (&[u32], &[u32]) = match self {
            FactorClass::Sym(p) => (p, &[]),
            FactorClass::WeylC(a, b) => (a, b),
        };
        pos.iter().map(|&a| (a, false)).chain(neg.iter().map(|&a| (a, true)))
    }

    /// For Weyl labels, the bipartition with its components exchanged.
    pub fn swapped(&self) -> FactorClass {
        match self {
            FactorClass::Sym(p) => FactorClass::Sym(p.clone()),
            FactorClass::WeylC(a, b) => FactorClass::WeylC(b.clone(), a.clone()),
        }
    }
}

fn fmt_partition(p: &[u32]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for FactorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorClass::Sym(p) => f.write_str(&fmt_partition(p)),
            FactorClass::WeylC(a, b) => write!(f, "[{};{}]", fmt_partition(a), fmt_partition(b)),
        }
    }
}

impl Serialize for FactorClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// One class per factor.
pub type ClassLabel = Vec<FactorClass>;

pub fn label_to_string(label: &[FactorClass]) -> String {
    let parts: Vec<String> = label.iter().map(|c| c.to_string()).collect();
    parts.join("x")
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn multiplicities(p: &[u32]) -> BTreeMap<u32, u32> {
    let mut m = BTreeMap::new();
    for &a in p {
        *m.entry(a).or_insert(0) += 1;
    }
    m
}

fn sym_centralizer(p: &[u32]) -> BigUint {
    multiplicities(p)
        .into_iter()
        .fold(BigUint::one(), |acc, (k, a)| acc * BigUint::from(k).pow(a) * factorial(a))
}

fn weyl_half_centralizer(p: &[u32]) -> BigUint {
    multiplicities(p)
        .into_iter()
        .fold(BigUint::one(), |acc, (k, a)| acc * BigUint::from(2 * k).pow(a) * factorial(a))
}

/// Order of the centralizer of a class in its factor.
pub fn centralizer_order(c: &FactorClass) -> BigUint {
    match c {
        FactorClass::Sym(p) => sym_centralizer(p),
        FactorClass::WeylC(a, b) => weyl_half_centralizer(a) * weyl_half_centralizer(b),
    }
}

pub fn factor_order(f: Factor) -> BigUint {
    match f.kind {
        FactorKind::Sym => factorial(f.rank),
        FactorKind::WeylC => BigUint::from(2u32).pow(f.rank) * factorial(f.rank),
    }
}

/// Class labels of one factor in canonical order. For W_N: |μ| decreasing,
/// then μ and ν in partition order.
pub fn factor_labels(f: Factor) -> Vec<FactorClass> {
    match f.kind {
        FactorKind::Sym => partitions(f.rank).into_iter().map(FactorClass::Sym).collect(),
        FactorKind::WeylC => {
            let mut out = Vec::new();
            for a in (0..=f.rank).rev() {
                for mu in partitions(a) {
                    for nu in partitions(f.rank - a) {
                        out.push(FactorClass::WeylC(mu.clone(), nu));
                    }
                }
            }
            out
        }
    }
}

/// Cached class data of a shape.
#[derive(Debug)]
pub struct ShapeInfo {
    pub labels: Vec<ClassLabel>,
    pub index: HashMap<ClassLabel, usize>,
    pub centralizers: Vec<BigUint>,
    pub order: BigUint,
}

fn shape_cache() -> &'static RwLock<HashMap<GroupShape, Arc<ShapeInfo>>> {
    static CACHE: OnceLock<RwLock<HashMap<GroupShape, Arc<ShapeInfo>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub fn shape_info(shape: &GroupShape) -> Arc<ShapeInfo> {
    if let Some(info) = shape_cache().read().expect("shape cache poisoned").get(shape) {
        return info.clone();
    }
    let mut labels: Vec<ClassLabel> = vec![Vec::new()];
    for &f in shape.factors() {
        let fl = factor_labels(f);
        labels = labels
            .into_iter()
            .flat_map(|prefix| {
                fl.iter().map(move |c| {
                    let mut l = prefix.clone();
                    l.push(c.clone());
                    l
                })
            })
            .collect();
    }
    let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
    let centralizers = labels
        .iter()
        .map(|l| l.iter().map(centralizer_order).product())
        .collect();
    let order = shape.factors().iter().map(|&f| factor_order(f)).product();
    let info = Arc::new(ShapeInfo { labels, index, centralizers, order });
    shape_cache()
        .write()
        .expect("shape cache poisoned")
        .entry(shape.clone())
        .or_insert(info)
        .clone()
}

// Murnaghan–Nakayama on beta-sets.

fn beta_set(p: &[u32]) -> Vec<u32> {
    let n = p.len() as u32;
    p.iter().enumerate().map(|(i, &x)| x + n - 1 - i as u32).collect()
}

fn from_beta(beta: &[u32]) -> Vec<u32> {
    let mut b = beta.to_vec();
    b.sort_unstable_by(|x, y| y.cmp(x));
    let n = b.len() as u32;
    b.iter()
        .enumerate()
        .map(|(i, &x)| x - (n - 1 - i as u32))
        .filter(|&x| x > 0)
        .collect()
}

/// All partitions obtained by removing a rim hook of length `k`, with the
/// sign (−1)^{height}.
fn remove_hooks(p: &[u32], k: u32) -> Vec<(Vec<u32>, i64)> {
    let beta = beta_set(p);
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut nb = beta.clone();
        nb[idx] = target;
        out.push((from_beta(&nb), if between % 2 == 0 { 1 } else { -1 }));
    }
    out
}

type MnKey = (FactorClass, FactorClass);

fn mn_cache() -> &'static RwLock<HashMap<MnKey, i64>> {
    static CACHE: OnceLock<RwLock<HashMap<MnKey, i64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn mn_sym(lambda: &[u32], mu: &[u32]) -> i64 {
    if mu.is_empty() {
        return if lambda.is_empty() { 1 } else { 0 };
    }
    let key = (FactorClass::Sym(lambda.to_vec()), FactorClass::Sym(mu.to_vec()));
    if let Some(&v) = mn_cache().read().expect("character cache poisoned").get(&key) {
        return v;
    }
    let k = mu[0];
    let rest = &mu[1..];
    let v = remove_hooks(lambda, k)
        .into_iter()
        .map(|(p, s)| s * mn_sym(&p, rest))
        .sum();
    mn_cache().write().expect("character cache poisoned").insert(key, v);
    v
}

fn mn_weyl(alpha: &[u32], beta: &[u32], pos: &[u32], neg: &[u32]) -> i64 {
    let (k, negative, pos_rest, neg_rest) = match (pos.first(), neg.first()) {
        (Some(&k), _) => (k, false, &pos[1..], neg),
        (None, Some(&k)) => (k, true, pos, &neg[1..]),
        (None, None) => return if alpha.is_empty() && beta.is_empty() { 1 } else { 0 },
    };
    let key = (
        FactorClass::WeylC(alpha.to_vec(), beta.to_vec()),
        FactorClass::WeylC(pos.to_vec(), neg.to_vec()),
    );
    if let Some(&v) = mn_cache().read().expect("character cache poisoned").get(&key) {
        return v;
    }
    let mut v = 0;
    for (a, s) in remove_hooks(alpha, k) {
        v += s * mn_weyl(&a, beta, pos_rest, neg_rest);
    }
    let cycle_sign = if negative { -1 } else { 1 };
    for (b, s) in remove_hooks(beta, k) {
        v += cycle_sign * s * mn_weyl(alpha, &b, pos_rest, neg_rest);
    }
    mn_cache().write().expect("character cache poisoned").insert(key, v);
    v
}

/// Value of the irreducible character `irr` at the class `class` of the
/// same factor type. Zero when the sizes differ.
pub fn character_value(irr: &FactorClass, class: &FactorClass) -> i64 {
    if irr.size() != class.size() {
        return 0;
    }
    match (irr, class) {
        (FactorClass::Sym(l), FactorClass::Sym(m)) => mn_sym(l, m),
        (FactorClass::WeylC(a, b), FactorClass::WeylC(p, n)) => mn_weyl(a, b, p, n),
        _ => 0,
    }
}

/// An exact class function on a [`GroupShape`], stored in the canonical
/// label order of the shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    shape: GroupShape,
    values: Vec<CycloScalar>,
}

impl Serialize for ClassFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let info = shape_info(&self.shape);
        let mut map = s.serialize_map(Some(self.values.len()))?;
        for (l, v) in info.labels.iter().zip(&self.values) {
            map.serialize_entry(&label_to_string(l), v)?;
        }
        map.end()
    }
}

impl ClassFunction {
    pub fn zero(shape: &GroupShape) -> Self {
        let n = shape_info(shape).labels.len();
        ClassFunction { shape: shape.clone(), values: vec![CycloScalar::zero(); n] }
    }

    pub fn constant(shape: &GroupShape, c: CycloScalar) -> Self {
        let n = shape_info(shape).labels.len();
        ClassFunction { shape: shape.clone(), values: vec![c; n] }
    }

    pub fn trivial(shape: &GroupShape) -> Self {
        Self::constant(shape, CycloScalar::one())
    }

    pub fn from_fn(shape: &GroupShape, f: impl Fn(&[FactorClass]) -> CycloScalar) -> Self {
        let info = shape_info(shape);
        ClassFunction { shape: shape.clone(), values: info.labels.iter().map(|l| f(l)).collect() }
    }

    pub fn from_values(shape: &GroupShape, values: Vec<CycloScalar>) -> Result<Self> {
        let n = shape_info(shape).labels.len();
        if values.len() != n {
            return Err(Error::SizeMismatch(format!("{} values for {} classes", values.len(), n)));
        }
        Ok(ClassFunction { shape: shape.clone(), values })
    }

    pub fn shape(&self) -> &GroupShape {
        &self.shape
    }

    pub fn values(&self) -> &[CycloScalar] {
        &self.values
    }

    pub fn labels(&self) -> Vec<ClassLabel> {
        shape_info(&self.shape).labels.clone()
    }

    pub fn value(&self, label: &[FactorClass]) -> Option<&CycloScalar> {
        let info = shape_info(&self.shape);
        info.index.get(label).map(|&i| &self.values[i])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    fn check_same(&self, other: &ClassFunction) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeError(format!("{:?} vs {:?}", self.shape, other.shape)));
        }
        Ok(())
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(ClassFunction { shape: self.shape.clone(), values })
    }

    pub fn add_assign(&mut self, other: &ClassFunction) -> Result<()> {
        self.check_same(other)?;
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += b;
        }
        Ok(())
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(ClassFunction { shape: self.shape.clone(), values })
    }

    pub fn scale(&self, c: &CycloScalar) -> ClassFunction {
        ClassFunction { shape: self.shape.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    /// Pointwise product.
    pub fn mul(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(ClassFunction { shape: self.shape.clone(), values })
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction { shape: self.shape.clone(), values: self.values.iter().map(|v| v.conj()).collect() }
    }

    /// Pointwise product with a value depending only on the label.
    pub fn map_labels(&self, f: impl Fn(&[FactorClass], &CycloScalar) -> CycloScalar) -> ClassFunction {
        let info = shape_info(&self.shape);
        let values = info.labels.iter().zip(&self.values).map(|(l, v)| f(l, v)).collect();
        ClassFunction { shape: self.shape.clone(), values }
    }

    /// The external tensor product on the concatenated shape.
    pub fn tensor(&self, other: &ClassFunction) -> ClassFunction {
        let shape = self.shape.concat(&other.shape);
        let values = self
            .values
            .iter()
            .flat_map(|a| other.values.iter().map(move |b| a * b))
            .collect();
        ClassFunction { shape, values }
    }

    /// Reorders the factors: factor `i` of the result is factor `perm[i]`
    /// of `self`.
    pub fn permute_factors(&self, perm: &[usize]) -> Result<ClassFunction> {
        let k = self.shape.0.len();
        let mut seen = vec![false; k];
        if perm.len() != k || perm.iter().any(|&p| p >= k || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::ShapeError(format!("{perm:?} is not a permutation of {k} factors")));
        }
        let shape = GroupShape(perm.iter().map(|&p| self.shape.0[p]).collect());
        let src = shape_info(&self.shape);
        Ok(ClassFunction::from_fn(&shape, |l| {
            let mut orig = vec![FactorClass::Sym(Vec::new()); k];
            for (i, &p) in perm.iter().enumerate() {
                orig[p] = l[i].clone();
            }
            self.values[src.index[&orig]].clone()
        }))
    }

    /// Multiplies by a product of per-factor weights.
    pub fn twist(&self, weights: &[FactorWeight]) -> Result<ClassFunction> {
        if weights.len() != self.shape.0.len() {
            return Err(Error::ShapeError(format!(
                "{} weights for {} factors",
                weights.len(),
                self.shape.0.len()
            )));
        }
        for (w, f) in weights.iter().zip(&self.shape.0) {
            if w.sgn_cd && f.kind != FactorKind::WeylC {
                return Err(Error::ShapeError("sgn_CD on a symmetric-group factor".into()));
            }
        }
        Ok(self.map_labels(|l, v| {
            let mut out = v.clone();
            for (w, c) in weights.iter().zip(l) {
                out = &out * &w.value(c);
            }
            out
        }))
    }
}

/// A multiplicative weight on the classes of one factor:
/// constant · sgn_CD^{[sgn_cd]} · Π_{cycles a} per_cycle[a].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorWeight {
    pub constant: CycloScalar,
    pub sgn_cd: bool,
    /// Indexed by cycle length; lengths past the end weigh 1.
    pub per_cycle: Option<Vec<CycloScalar>>,
}

impl Default for FactorWeight {
    fn default() -> Self {
        FactorWeight { constant: CycloScalar::one(), sgn_cd: false, per_cycle: None }
    }
}

impl FactorWeight {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn sgn_cd() -> Self {
        FactorWeight { sgn_cd: true, ..Self::default() }
    }

    pub fn constant(c: CycloScalar) -> Self {
        FactorWeight { constant: c, ..Self::default() }
    }

    pub fn is_one(&self) -> bool {
        self.constant.is_one() && !self.sgn_cd && self.per_cycle.is_none()
    }

    /// Product of two weights on the same factor.
    pub fn combine(&self, other: &FactorWeight) -> FactorWeight {
        let per_cycle = match (&self.per_cycle, &other.per_cycle) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (Some(a), Some(b)) => {
                let n = a.len().max(b.len());
                let one = CycloScalar::one();
                Some(
                    (0..n)
                        .map(|i| a.get(i).unwrap_or(&one) * b.get(i).unwrap_or(&one))
                        .collect(),
                )
            }
        };
        FactorWeight {
            constant: &self.constant * &other.constant,
            sgn_cd: self.sgn_cd != other.sgn_cd,
            per_cycle,
        }
    }

    pub fn value(&self, c: &FactorClass) -> CycloScalar {
        let mut v = self.constant.clone();
        if self.sgn_cd && c.negative_cycles() % 2 == 1 {
            v = -v;
        }
        if let Some(pc) = &self.per_cycle {
            for (a, _) in c.signed_cycles() {
                if let Some(w) = pc.get(a as usize) {
                    v = &v * w;
                }
            }
        }
        v
    }
}

/// The linear characters used as twists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LinearChar {
    /// (−1)^{#negative cycles}, type C factors only.
    SgnCd,
    /// (−1)^{rank − #cycles}, on every factor.
    Sgn,
    /// sgn · sgn_CD, type C factors only.
    EtaComb,
}

pub fn linear_char_value(name: LinearChar, c: &FactorClass) -> Result<i64> {
    let neg = c.negative_cycles() as i64;
    let sgn = (c.size() as i64 - c.cycles() as i64).rem_euclid(2);
    let e = match (name, c.kind()) {
        (LinearChar::Sgn, _) => sgn,
        (LinearChar::SgnCd, FactorKind::WeylC) => neg,
        (LinearChar::EtaComb, FactorKind::WeylC) => sgn + neg,
        _ => return Err(Error::ShapeError(format!("{name:?} needs a type C factor"))),
    };
    Ok(if e % 2 == 0 { 1 } else { -1 })
}

/// Pointwise product of `f` with the named linear character on every factor.
pub fn linear_twist(f: &ClassFunction, name: LinearChar) -> Result<ClassFunction> {
    let info = shape_info(f.shape());
    let mut values = Vec::with_capacity(f.values.len());
    for (l, v) in info.labels.iter().zip(&f.values) {
        let mut s = 1;
        for c in l {
            s *= linear_char_value(name, c)?;
        }
        values.push(if s == 1 { v.clone() } else { -v });
    }
    Ok(ClassFunction { shape: f.shape.clone(), values })
}

/// The irreducible character of a product shape, one label per factor.
pub fn irr_character(shape: &GroupShape, label: &[FactorClass]) -> Result<ClassFunction> {
    if label.len() != shape.0.len() {
        return Err(Error::SizeMismatch(format!(
            "{} labels for {} factors",
            label.len(),
            shape.0.len()
        )));
    }
    for (l, f) in label.iter().zip(&shape.0) {
        if l.kind() != f.kind || l.size() != f.rank {
            return Err(Error::SizeMismatch(format!("label {l} does not fit factor {f:?}")));
        }
    }
    Ok(ClassFunction::from_fn(shape, |c| {
        let v: i64 = label.iter().zip(c).map(|(irr, cl)| character_value(irr, cl)).product();
        CycloScalar::from_int(v)
    }))
}

/// (1/|G|) Σ_w f(w) conj(g(w)).
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<CycloScalar> {
    f.check_same(g)?;
    let info = shape_info(f.shape());
    let mut acc = CycloScalar::zero();
    for ((a, b), z) in f.values.iter().zip(&g.values).zip(&info.centralizers) {
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let w = Rational::new(BigInt::one(), BigInt::from(z.clone()));
        acc += &(a * &b.conj()).scale(&w);
    }
    Ok(acc)
}

/// Multiplicities of the irreducible characters in a virtual character,
/// nonzero entries only, in canonical label order.
pub fn decompose(f: &ClassFunction) -> Result<Vec<(ClassLabel, BigInt)>> {
    let info = shape_info(f.shape());
    let mut out = Vec::new();
    if f.is_zero() {
        return Ok(out);
    }
    for label in &info.labels {
        let chi = irr_character(f.shape(), label)?;
        let c = inner_product(f, &chi)?;
        let n = c
            .to_integer()
            .ok_or_else(|| Error::NonIntegral(label_to_string(label)))?;
        if !n.is_zero() {
            out.push((label.clone(), n));
        }
    }
    Ok(out)
}

/// Degree of a class function: its value at the identity.
pub fn degree(f: &ClassFunction) -> CycloScalar {
    let identity: ClassLabel = f
        .shape()
        .0
        .iter()
        .map(|fac| match fac.kind {
            FactorKind::Sym => FactorClass::Sym(vec![1; fac.rank as usize]),
            FactorKind::WeylC => FactorClass::WeylC(vec![1; fac.rank as usize], Vec::new()),
        })
        .collect();
    f.value(&identity).cloned().unwrap_or_default()
}

/// How the cycles of one source factor land in the target factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CycleTransform {
    /// Sym → Sym, a ↦ k·a.
    Scale(u32),
    /// Sym → W, a ↦ positive cycle k·a.
    SymToWeylPositive(u32),
    /// Sym → W, a ↦ cycle k·a, negative iff a is odd.
    SymToWeylParity(u32),
    /// W → W, (a, s) ↦ (k·a, s).
    WeylScale(u32),
    /// W → S, (a, s) ↦ a.
    WeylForget,
}

impl CycleTransform {
    fn kinds(self) -> (FactorKind, FactorKind) {
        use FactorKind::*;
        match self {
            CycleTransform::Scale(_) => (Sym, Sym),
            CycleTransform::SymToWeylPositive(_) | CycleTransform::SymToWeylParity(_) => (Sym, WeylC),
            CycleTransform::WeylScale(_) => (WeylC, WeylC),
            CycleTransform::WeylForget => (WeylC, Sym),
        }
    }

    fn factor(self) -> u32 {
        match self {
            CycleTransform::Scale(k)
            | CycleTransform::SymToWeylPositive(k)
            | CycleTransform::SymToWeylParity(k)
            | CycleTransform::WeylScale(k) => k,
            CycleTransform::WeylForget => 1,
        }
    }

    /// Image cycles as (length, negative).
    fn apply(self, c: &FactorClass, out: &mut Vec<(u32, bool)>) {
        let k = self.factor();
        for (a, neg) in c.signed_cycles() {
            let sign = match self {
                CycleTransform::Scale(_) | CycleTransform::SymToWeylPositive(_) | CycleTransform::WeylForget => false,
                CycleTransform::SymToWeylParity(_) => a % 2 == 1,
                CycleTransform::WeylScale(_) => neg,
            };
            out.push((k * a, sign));
        }
    }
}

/// A map from the classes of a source shape to those of a target shape,
/// described by one route (target factor, transform) per source factor.
/// The cycles landing in the same target factor are merged.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClassMap {
    pub source: GroupShape,
    pub target: GroupShape,
    pub routes: Vec<(usize, CycleTransform)>,
}

impl ClassMap {
    pub fn new(source: GroupShape, target: GroupShape, routes: Vec<(usize, CycleTransform)>) -> Result<Self> {
        if routes.len() != source.0.len() {
            return Err(Error::ShapeError(format!(
                "{} routes for {} source factors",
                routes.len(),
                source.0.len()
            )));
        }
        let mut load = vec![0u32; target.0.len()];
        for (f, &(t, tr)) in source.0.iter().zip(&routes) {
            let tf = target
                .0
                .get(t)
                .ok_or_else(|| Error::ShapeError(format!("route to missing factor {t}")))?;
            let (from, to) = tr.kinds();
            if f.rank > 0 && (f.kind != from || tf.kind != to) {
                return Err(Error::ShapeError(format!("{tr:?} does not map {:?} to {:?}", f.kind, tf.kind)));
            }
            load[t] += tr.factor() * f.rank;
        }
        for (l, tf) in load.iter().zip(&target.0) {
            if *l != tf.rank {
                return Err(Error::ShapeError(format!(
                    "target factor {tf:?} receives rank {l}"
                )));
            }
        }
        Ok(ClassMap { source, target, routes })
    }

    pub fn identity(shape: &GroupShape) -> Self {
        let routes = shape
            .0
            .iter()
            .enumerate()
            .map(|(i, f)| {
                (
                    i,
                    match f.kind {
                        FactorKind::Sym => CycleTransform::Scale(1),
                        FactorKind::WeylC => CycleTransform::WeylScale(1),
                    },
                )
            })
            .collect();
        ClassMap { source: shape.clone(), target: shape.clone(), routes }
    }

    /// The factor permutation: target factor i is source factor perm[i].
    pub fn permutation(shape: &GroupShape, perm: &[usize]) -> Result<Self> {
        let target = GroupShape(perm.iter().map(|&p| shape.0[p]).collect());
        let mut routes = vec![(0, CycleTransform::Scale(1)); shape.0.len()];
        for (i, &p) in perm.iter().enumerate() {
            let tr = match shape.0[p].kind {
                FactorKind::Sym => CycleTransform::Scale(1),
                FactorKind::WeylC => CycleTransform::WeylScale(1),
            };
            routes[p] = (i, tr);
        }
        ClassMap::new(shape.clone(), target, routes)
    }

    /// Image of a source class.
    pub fn apply(&self, label: &[FactorClass]) -> ClassLabel {
        let mut cycles: Vec<Vec<(u32, bool)>> = vec![Vec::new(); self.target.0.len()];
        for (c, &(t, tr)) in label.iter().zip(&self.routes) {
            tr.apply(c, &mut cycles[t]);
        }
        cycles
            .into_iter()
            .zip(&self.target.0)
            .map(|(mut cs, f)| {
                cs.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                match f.kind {
                    FactorKind::Sym => FactorClass::Sym(cs.into_iter().map(|(a, _)| a).collect()),
                    FactorKind::WeylC => {
                        let pos = cs.iter().filter(|c| !c.1).map(|c| c.0).collect();
                        let neg = cs.iter().filter(|c| c.1).map(|c| c.0).collect();
                        FactorClass::WeylC(pos, neg)
                    }
                }
            })
            .collect()
    }

    /// Target class index for every source class index.
    fn index_map(&self) -> Vec<usize> {
        let src = shape_info(&self.source);
        let tgt = shape_info(&self.target);
        src.labels.iter().map(|l| tgt.index[&self.apply(l)]).collect()
    }
}

/// Pullback: (res f)(c) = f(map(c)).
pub fn restrict_along(map: &ClassMap, f: &ClassFunction) -> Result<ClassFunction> {
    if f.shape() != &map.target {
        return Err(Error::ShapeError("function does not live on the target shape".into()));
    }
    let values = map.index_map().into_iter().map(|i| f.values[i].clone()).collect();
    Ok(ClassFunction { shape: map.source.clone(), values })
}

/// Adjoint of [`restrict_along`]:
/// (ind f)(C) = Σ_{D ↦ C} |Z(C)| / |Z(D)| · f(D).
pub fn induce_along(map: &ClassMap, f: &ClassFunction) -> Result<ClassFunction> {
    if f.shape() != &map.source {
        return Err(Error::ShapeError("function does not live on the source shape".into()));
    }
    let src = shape_info(&map.source);
    let tgt = shape_info(&map.target);
    let mut values = vec![CycloScalar::zero(); tgt.labels.len()];
    for (d, c) in map.index_map().into_iter().enumerate() {
        let v = &f.values[d];
        if v.is_zero() {
            continue;
        }
        let w = Rational::new(BigInt::from(tgt.centralizers[c].clone()), BigInt::from(src.centralizers[d].clone()));
        values[c] += &v.scale(&w);
    }
    Ok(ClassFunction { shape: map.target.clone(), values })
}

/// Class size |G| / |Z(c)| of every class of a shape, as machine integers.
pub fn class_sizes(shape: &GroupShape) -> Vec<u64> {
    let info = shape_info(shape);
    info.centralizers
        .iter()
        .map(|z| (&info.order / z).to_u64().expect("class size fits in u64"))
        .collect()
}
