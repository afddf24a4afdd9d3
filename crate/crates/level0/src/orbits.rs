//! Partitions and unipotent orbits given by their Jordan blocks.

use serde::{Deserialize, Serialize};

/// Parity requirement on the Jordan blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitKind {
    /// All blocks even.
    Symplectic,
    /// All blocks odd.
    Orthogonal,
}

/// Multiplicity requirement on the Jordan blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every block size occurs at most once.
    Discrete,
    /// Every block size occurs at most twice.
    Elliptic,
}

impl Mode {
    pub fn max_multiplicity(self) -> usize {
        match self {
            Mode::Discrete => 1,
            Mode::Elliptic => 2,
        }
    }
}

/// A unipotent orbit, i.e. a partition stored in decreasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Orbit {
    blocks: Vec<u32>,
}

/// Predicates of [`classify_orbit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitFlags {
    pub symplectic: bool,
    pub orthogonal: bool,
    pub discrete: bool,
    pub elliptic: bool,
}

impl Orbit {
    /// Builds an orbit from blocks in any order; zero blocks are dropped.
    pub fn new(mut blocks: Vec<u32>) -> Self {
        blocks.retain(|&b| b > 0);
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        Orbit { blocks }
    }

    pub fn empty() -> Self {
        Orbit { blocks: Vec::new() }
    }

    /// Blocks with multiplicity, decreasing.
    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    pub fn total(&self) -> u32 {
        self.blocks.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn mult(&self, alpha: u32) -> usize {
        self.blocks.iter().filter(|&&b| b == alpha).count()
    }

    /// Distinct block sizes, decreasing.
    pub fn jord(&self) -> Vec<u32> {
        let mut j = self.blocks.clone();
        j.dedup();
        j
    }
}

impl From<Vec<u32>> for Orbit {
    fn from(v: Vec<u32>) -> Self {
        Orbit::new(v)
    }
}

pub fn classify_orbit(o: &Orbit) -> OrbitFlags {
    let max_mult = o.jord().iter().map(|&a| o.mult(a)).max().unwrap_or(0);
    OrbitFlags {
        symplectic: o.blocks.iter().all(|b| b % 2 == 0),
        orthogonal: o.blocks.iter().all(|b| b % 2 == 1),
        discrete: max_mult <= 1,
        elliptic: max_mult <= 2,
    }
}

/// Partitions of `m` with parts satisfying `allowed` and multiplicities at
/// most `max_mult`, in lexicographically decreasing order.
pub fn constrained_partitions(
    m: u32,
    max_mult: usize,
    allowed: impl Fn(u32) -> bool,
) -> Vec<Vec<u32>> {
    fn rec(
        rest: u32,
        largest: u32,
        max_mult: usize,
        allowed: &dyn Fn(u32) -> bool,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=largest.min(rest)).rev() {
            if !allowed(part) {
                continue;
            }
            let fit = (rest / part) as usize;
            for k in (1..=max_mult.min(fit)).rev() {
                let used = part * k as u32;
                cur.extend(std::iter::repeat(part).take(k));
                rec(rest - used, part - 1, max_mult, allowed, cur, out);
                cur.truncate(cur.len() - k);
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(m, m, max_mult, &allowed, &mut cur, &mut out);
    out
}

/// All partitions of `n`, lexicographically decreasing.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    constrained_partitions(n, usize::MAX, |_| true)
}

pub fn enumerate_orbits(m: u32, kind: OrbitKind, mode: Mode) -> Vec<Orbit> {
    let parity = match kind {
        OrbitKind::Symplectic => 0,
        OrbitKind::Orthogonal => 1,
    };
    constrained_partitions(m, mode.max_multiplicity(), |p| p % 2 == parity)
        .into_iter()
        .map(|blocks| Orbit { blocks })
        .collect()
}
