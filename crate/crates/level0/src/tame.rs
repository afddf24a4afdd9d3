//! Tame characters: eigenvalue classes of roots of unity under u ↦ u^q,
//! closed under inversion, with multiplicities.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sign::Sign;

/// Which of the three kinds of eigenvalue an exponent class represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenKind {
    PlusOne,
    MinusOne,
    Generic,
}

impl EigenKind {
    /// The sign for the classes ±1.
    pub fn pm(self) -> Option<Sign> {
        match self {
            EigenKind::PlusOne => Some(Sign::Plus),
            EigenKind::MinusOne => Some(Sign::Minus),
            EigenKind::Generic => None,
        }
    }
}

/// An orbit [u] of exponents modulo N under multiplication by q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EigenClass {
    /// Least exponent of the class.
    pub rep: u32,
    /// Exponents of the class, increasing.
    pub members: Vec<u32>,
    /// Half the class size for u ≠ ±1, and 1 for u = ±1.
    pub ell: u32,
    pub mult: u32,
    /// Root-of-unity order N.
    pub order: u32,
}

impl EigenClass {
    pub fn kind(&self) -> EigenKind {
        if self.rep == 0 {
            EigenKind::PlusOne
        } else if 2 * self.rep == self.order {
            EigenKind::MinusOne
        } else {
            EigenKind::Generic
        }
    }

    pub fn is_pm(&self) -> bool {
        self.kind() != EigenKind::Generic
    }

    /// Weight of the class in the rank identity: 1 for ±1, 2ℓ otherwise.
    pub fn weight(&self) -> u32 {
        if self.is_pm() {
            1
        } else {
            2 * self.ell
        }
    }
}

/// The ⟨q⟩-orbit of `k` modulo `n` together with ℓ.
///
/// Fails with [`Error::SelfDualityViolation`] when the orbit does not
/// contain `-k`.
pub fn eigen_orbit(q: u64, n: u32, k: u32) -> Result<(Vec<u32>, u32)> {
    let k = k % n;
    let modulus = n as u64;
    let mut members = vec![k];
    let mut cur = (k as u64 * q) % modulus;
    while cur != k as u64 {
        members.push(cur as u32);
        cur = (cur * q) % modulus;
    }
    let neg = ((n - k) % n) as u64;
    if neg == k as u64 {
        members.sort_unstable();
        return Ok((members, 1));
    }
    let ell = members
        .iter()
        .position(|&m| m as u64 == neg)
        .ok_or(Error::SelfDualityViolation { rep: *members.iter().min().unwrap_or(&k), order: n })?;
    members.sort_unstable();
    Ok((members, ell as u32))
}

fn check_q_n(q: u64, n: u32) -> Result<()> {
    if q < 3 || q % 2 == 0 {
        return Err(Error::InvalidInput(format!("q must be an odd prime power, got {q}")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("N must be positive".into()));
    }
    if (n as u64).gcd(&q) != 1 {
        return Err(Error::InvalidInput(format!("gcd(N, q) must be 1 (N={n}, q={q})")));
    }
    Ok(())
}

/// The restriction of a parameter to tame inertia.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TameCharacter {
    pub q: u64,
    #[serde(rename = "N")]
    pub order: u32,
    /// Classes ordered by representative.
    pub classes: Vec<EigenClass>,
    pub two_n: u32,
}

impl TameCharacter {
    /// Multiplicity of the class of ±1, or 0 when absent.
    pub fn pm_mult(&self, s: Sign) -> u32 {
        self.class_of_pm(s).map_or(0, |c| c.mult)
    }

    pub fn class_of_pm(&self, s: Sign) -> Option<&EigenClass> {
        self.classes.iter().find(|c| c.kind().pm() == Some(s))
    }

    pub fn generic_classes(&self) -> impl Iterator<Item = &EigenClass> {
        self.classes.iter().filter(|c| !c.is_pm())
    }

    pub fn rank_identity_holds(&self) -> bool {
        self.classes.iter().map(|c| c.weight() * c.mult).sum::<u32>() == self.two_n
    }

    pub fn to_spec(&self) -> TameSpec {
        TameSpec {
            q: self.q,
            order: self.order,
            classes: self
                .classes
                .iter()
                .map(|c| SeedSpec { rep: c.rep, mult: c.mult })
                .collect(),
        }
    }
}

/// JSON form `{"q":3,"N":5,"classes":[{"rep":1,"mult":1}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TameSpec {
    pub q: u64,
    #[serde(rename = "N")]
    pub order: u32,
    pub classes: Vec<SeedSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSpec {
    pub rep: u32,
    pub mult: u32,
}

impl TameSpec {
    pub fn build(&self) -> Result<TameCharacter> {
        let seeds: Vec<(u32, u32)> = self.classes.iter().map(|s| (s.rep, s.mult)).collect();
        build_tame_character(self.q, self.order, &seeds)
    }
}

pub(crate) fn build_classes(q: u64, n: u32, seeds: &[(u32, u32)]) -> Result<Vec<EigenClass>> {
    check_q_n(q, n)?;
    let mut by_rep: BTreeMap<u32, EigenClass> = BTreeMap::new();
    for &(k, mult) in seeds {
        if mult == 0 {
            return Err(Error::InvalidInput(format!("multiplicity of exponent {k} must be positive")));
        }
        let (members, ell) = eigen_orbit(q, n, k)?;
        let rep = members[0];
        if let Some(prev) = by_rep.get(&rep) {
            if prev.mult != mult {
                return Err(Error::MultiplicityMismatch { rep });
            }
            continue;
        }
        by_rep.insert(rep, EigenClass { rep, members, ell, mult, order: n });
    }
    Ok(by_rep.into_values().collect())
}

pub fn build_tame_character(q: u64, n: u32, seeds: &[(u32, u32)]) -> Result<TameCharacter> {
    let classes = build_classes(q, n, seeds)?;
    let two_n = classes.iter().map(|c| c.weight() * c.mult).sum();
    Ok(TameCharacter { q, order: n, classes, two_n })
}

/// All self-dual ⟨q⟩-orbits of exponents modulo n, ordered by representative.
pub fn self_dual_classes(q: u64, n: u32) -> Vec<(u32, u32)> {
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for k in 0..n {
        if seen[k as usize] {
            continue;
        }
        let mut cur = k as u64;
        loop {
            seen[cur as usize] = true;
            cur = cur * q % n as u64;
            if cur == k as u64 {
                break;
            }
        }
        if let Ok((members, ell)) = eigen_orbit(q, n, k) {
            let weight = if 2 * k % n == 0 { 1 } else { 2 * ell };
            out.push((members[0], weight));
        }
    }
    out
}

/// All tame characters with the given q, N and 2n.
///
/// Order: multiplicity vectors over [`self_dual_classes`], lexicographically
/// decreasing.
pub fn enumerate_tame_characters(q: u64, two_n: u32, n: u32) -> Result<Vec<TameCharacter>> {
    check_q_n(q, n)?;
    let classes = self_dual_classes(q, n);
    let mut out = Vec::new();
    let mut mults = vec![0u32; classes.len()];
    fn rec(
        i: usize,
        rest: u32,
        classes: &[(u32, u32)],
        mults: &mut Vec<u32>,
        emit: &mut dyn FnMut(&[u32]),
    ) {
        if i == classes.len() {
            if rest == 0 {
                emit(mults);
            }
            return;
        }
        let w = classes[i].1;
        for m in (0..=rest / w).rev() {
            mults[i] = m;
            rec(i + 1, rest - m * w, classes, mults, emit);
        }
        mults[i] = 0;
    }
    let mut err = None;
    rec(0, two_n, &classes, &mut mults, &mut |ms| {
        let seeds: Vec<(u32, u32)> = classes
            .iter()
            .zip(ms)
            .filter(|(_, &m)| m > 0)
            .map(|(&(rep, _), &m)| (rep, m))
            .collect();
        match build_tame_character(q, n, &seeds) {
            Ok(chi) => out.push(chi),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}
