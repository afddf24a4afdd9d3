//! Discrete and elliptic level-zero parameters, their sign characters and
//! the Springer–Lusztig numerical data.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbits::{classify_orbit, enumerate_orbits, Mode, Orbit, OrbitKind};
use crate::sign::Sign;
use crate::tame::{EigenKind, TameCharacter};

/// The pair (U_{[u],+}, U_{[u],−}) attached to one eigenvalue class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassComponent {
    #[serde(rename = "class")]
    pub rep: u32,
    pub plus: Orbit,
    pub minus: Orbit,
}

impl ClassComponent {
    pub fn orbit(&self, side: Sign) -> &Orbit {
        match side {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }
}

/// ψ: one [`ClassComponent`] per class of the tame character, in class order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DiscreteParameter {
    pub chi: TameCharacter,
    pub mode: Mode,
    pub comps: Vec<ClassComponent>,
}

/// One Jordan block instance of a parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Block {
    /// Index of the class in `chi.classes`.
    pub class_index: usize,
    pub side: Sign,
    pub size: u32,
    /// 0 for the first copy of a block size, 1 for the second (elliptic mode).
    pub copy: u8,
}

/// A sign character ε: one sign per entry of [`DiscreteParameter::blocks`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignCharacter(pub Vec<Sign>);

impl SignCharacter {
    pub fn trivial(len: usize) -> Self {
        SignCharacter(vec![Sign::Plus; len])
    }
}

impl DiscreteParameter {
    /// Validates the orbit data against the tame character.
    pub fn new(chi: TameCharacter, mode: Mode, comps: Vec<ClassComponent>) -> Result<Self> {
        if comps.len() != chi.classes.len() {
            return Err(Error::InvalidInput(format!(
                "{} components for {} classes",
                comps.len(),
                chi.classes.len()
            )));
        }
        for (class, comp) in chi.classes.iter().zip(&comps) {
            if class.rep != comp.rep {
                return Err(Error::InvalidInput(format!(
                    "component for class {} listed at class {}",
                    comp.rep, class.rep
                )));
            }
            if comp.plus.total() + comp.minus.total() != class.mult {
                return Err(Error::InvalidInput(format!(
                    "orbit sizes at class {} do not add up to m = {}",
                    class.rep, class.mult
                )));
            }
            let minus_kind = if class.is_pm() {
                OrbitKind::Symplectic
            } else {
                OrbitKind::Orthogonal
            };
            for (orbit, kind) in [(&comp.plus, OrbitKind::Symplectic), (&comp.minus, minus_kind)] {
                let f = classify_orbit(orbit);
                let kind_ok = match kind {
                    OrbitKind::Symplectic => f.symplectic,
                    OrbitKind::Orthogonal => f.orthogonal,
                };
                let mode_ok = match mode {
                    Mode::Discrete => f.discrete,
                    Mode::Elliptic => f.elliptic,
                };
                if !kind_ok || !mode_ok {
                    return Err(Error::InvalidInput(format!(
                        "orbit {:?} at class {} is not {:?}/{:?}",
                        orbit.blocks(),
                        class.rep,
                        kind,
                        mode
                    )));
                }
            }
        }
        Ok(DiscreteParameter { chi, mode, comps })
    }

    /// All block instances: classes in order, the + orbit before the − orbit,
    /// blocks decreasing.
    pub fn blocks(&self) -> Vec<Block> {
        let mut out = Vec::new();
        for (ci, comp) in self.comps.iter().enumerate() {
            for side in Sign::BOTH {
                let orbit = comp.orbit(side);
                let mut prev = None;
                let mut copy = 0u8;
                for &size in orbit.blocks() {
                    copy = if prev == Some(size) { copy + 1 } else { 0 };
                    prev = Some(size);
                    out.push(Block { class_index: ci, side, size, copy });
                }
            }
        }
        out
    }

    pub fn n_blocks(&self) -> usize {
        self.comps
            .iter()
            .map(|c| c.plus.len() + c.minus.len())
            .sum()
    }

    pub fn class_kind(&self, class_index: usize) -> EigenKind {
        self.chi.classes[class_index].kind()
    }
}

/// All parameters for a tame character.
///
/// Order: classes in order; inside a class the size of the + orbit decreases,
/// then orbits in their enumeration order.
pub fn enumerate_parameters(chi: &TameCharacter, mode: Mode) -> Vec<DiscreteParameter> {
    let per_class: Vec<Vec<ClassComponent>> = chi
        .classes
        .iter()
        .map(|class| {
            let minus_kind = if class.is_pm() {
                OrbitKind::Symplectic
            } else {
                OrbitKind::Orthogonal
            };
            let mut opts = Vec::new();
            for a in (0..=class.mult).rev() {
                let plus = enumerate_orbits(a, OrbitKind::Symplectic, mode);
                let minus = enumerate_orbits(class.mult - a, minus_kind, mode);
                for p in &plus {
                    for m in &minus {
                        opts.push(ClassComponent { rep: class.rep, plus: p.clone(), minus: m.clone() });
                    }
                }
            }
            opts
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        i: usize,
        per_class: &[Vec<ClassComponent>],
        cur: &mut Vec<ClassComponent>,
        chi: &TameCharacter,
        mode: Mode,
        out: &mut Vec<DiscreteParameter>,
    ) {
        if i == per_class.len() {
            out.push(DiscreteParameter { chi: chi.clone(), mode, comps: cur.clone() });
            return;
        }
        for c in &per_class[i] {
            cur.push(c.clone());
            rec(i + 1, per_class, cur, chi, mode, out);
            cur.pop();
        }
    }
    rec(0, &per_class, &mut cur, chi, mode, &mut out);
    out
}

/// All 2^{#blocks} sign characters, + before −, first block most significant.
pub fn enumerate_sign_characters(psi: &DiscreteParameter) -> Vec<SignCharacter> {
    let k = psi.n_blocks();
    (0..1u64 << k)
        .map(|mask| {
            SignCharacter(
                (0..k)
                    .map(|i| {
                        if mask >> (k - 1 - i) & 1 == 1 {
                            Sign::Minus
                        } else {
                            Sign::Plus
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

fn check_eps(psi: &DiscreteParameter, eps: &SignCharacter) -> Result<()> {
    if eps.0.len() != psi.n_blocks() {
        return Err(Error::SizeMismatch(format!(
            "{} signs for {} blocks",
            eps.0.len(),
            psi.n_blocks()
        )));
    }
    Ok(())
}

/// ε_Z: the product of ε over all block instances.
pub fn epsilon_center(psi: &DiscreteParameter, eps: &SignCharacter) -> Result<Sign> {
    check_eps(psi, eps)?;
    Ok(Sign::product(eps.0.iter().copied()))
}

/// A rule computing the cuspidal-support integer k of the generalized
/// Springer correspondence for a discrete symplectic orbit with signs.
pub trait SpringerRule {
    /// `blocks` decreasing and distinct, `signs` aligned with them.
    fn k(&self, blocks: &[u32], signs: &[Sign]) -> u32;
}

/// Counts sign alternations along the blocks sorted increasingly, followed
/// by a sentinel sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlternationRule {
    pub sentinel: Sign,
}

impl Default for AlternationRule {
    fn default() -> Self {
        AlternationRule { sentinel: Sign::Plus }
    }
}

impl SpringerRule for AlternationRule {
    fn k(&self, blocks: &[u32], signs: &[Sign]) -> u32 {
        let mut seq: Vec<(u32, Sign)> = blocks.iter().copied().zip(signs.iter().copied()).collect();
        seq.sort_by_key(|&(b, _)| b);
        let mut signs: Vec<Sign> = seq.into_iter().map(|(_, s)| s).collect();
        if signs.is_empty() {
            return 0;
        }
        signs.push(self.sentinel);
        signs.windows(2).filter(|w| w[0] != w[1]).count() as u32
    }
}

/// k for a discrete symplectic orbit under the default rule.
pub fn gen_springer_k(orbit: &Orbit, signs: &[Sign]) -> Result<u32> {
    gen_springer_k_with(&AlternationRule::default(), orbit, signs)
}

pub fn gen_springer_k_with(rule: &dyn SpringerRule, orbit: &Orbit, signs: &[Sign]) -> Result<u32> {
    let f = classify_orbit(orbit);
    if !f.symplectic || !f.discrete {
        return Err(Error::NotApplicable(format!(
            "orbit {:?} is not symplectic with distinct blocks",
            orbit.blocks()
        )));
    }
    if signs.len() != orbit.len() {
        return Err(Error::SizeMismatch(format!("{} signs for {} blocks", signs.len(), orbit.len())));
    }
    let k = rule.k(orbit.blocks(), signs);
    let total = orbit.total();
    let cusp = k * (k + 1);
    if cusp > total || (total - cusp) % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "rule produced k = {k} incompatible with orbit total {total}"
        )));
    }
    Ok(k)
}

/// (I, P, ζ) from the pair (k_{u,+}, k_{u,−}).
pub fn ip_zeta_from_k(k_plus: u32, k_minus: u32) -> (u32, u32, Sign) {
    let a = k_plus + k_minus + 1;
    let b = k_plus.abs_diff(k_minus);
    let (i, p) = if a % 2 == 1 { (a, b) } else { (b, a) };
    let zeta = match k_plus.cmp(&k_minus) {
        std::cmp::Ordering::Greater => Sign::Plus,
        std::cmp::Ordering::Less => Sign::Minus,
        std::cmp::Ordering::Equal => Sign::pow_minus_one(k_plus as u64),
    };
    (i, p, zeta)
}

/// Springer–Lusztig data at a class ±1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PmData {
    pub k_plus: u32,
    pub k_minus: u32,
    #[serde(rename = "N_plus")]
    pub weyl_plus: u32,
    #[serde(rename = "N_minus")]
    pub weyl_minus: u32,
    #[serde(rename = "I")]
    pub i: u32,
    #[serde(rename = "P")]
    pub p: u32,
    pub zeta: Sign,
}

impl PmData {
    /// The data of an empty pair of orbits.
    pub fn empty() -> Self {
        let (i, p, zeta) = ip_zeta_from_k(0, 0);
        PmData { k_plus: 0, k_minus: 0, weyl_plus: 0, weyl_minus: 0, i, p, zeta }
    }

    pub fn k(&self, side: Sign) -> u32 {
        match side {
            Sign::Plus => self.k_plus,
            Sign::Minus => self.k_minus,
        }
    }

    pub fn weyl(&self, side: Sign) -> u32 {
        match side {
            Sign::Plus => self.weyl_plus,
            Sign::Minus => self.weyl_minus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSpL {
    pub rep: u32,
    pub kind: EigenKind,
    pub ell: u32,
    pub n_prime: u32,
    pub n_second: u32,
    pub pm: Option<PmData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpLData {
    pub classes: Vec<ClassSpL>,
}

impl SpLData {
    /// Data at ±1, with the empty-orbit data when χ lacks the class.
    pub fn pm(&self, s: Sign) -> PmData {
        self.classes
            .iter()
            .find(|c| c.kind.pm() == Some(s))
            .and_then(|c| c.pm.clone())
            .unwrap_or_else(PmData::empty)
    }

    /// Σ_{u∉±1} (n′+n″)ℓ + ½ Σ_{±1} (n′+n″), which must equal n.
    pub fn reconstituted_two_n(&self) -> u32 {
        self.classes
            .iter()
            .map(|c| {
                let s = c.n_prime + c.n_second;
                if c.pm.is_some() {
                    s
                } else {
                    2 * s * c.ell
                }
            })
            .sum()
    }
}

pub fn springer_lusztig_data(psi: &DiscreteParameter, eps: &SignCharacter) -> Result<SpLData> {
    springer_lusztig_data_with(&AlternationRule::default(), psi, eps)
}

pub fn springer_lusztig_data_with(
    rule: &dyn SpringerRule,
    psi: &DiscreteParameter,
    eps: &SignCharacter,
) -> Result<SpLData> {
    check_eps(psi, eps)?;
    let blocks = psi.blocks();
    let mut classes = Vec::new();
    for (ci, class) in psi.chi.classes.iter().enumerate() {
        let signed = |side: Sign| -> (Vec<u32>, Vec<Sign>) {
            blocks
                .iter()
                .zip(&eps.0)
                .filter(|(b, _)| b.class_index == ci && b.side == side)
                .map(|(b, s)| (b.size, *s))
                .unzip()
        };
        let (pb, ps) = signed(Sign::Plus);
        let (mb, ms) = signed(Sign::Minus);
        if class.is_pm() {
            let n_prime: u32 = pb.iter().sum();
            let n_second: u32 = mb.iter().sum();
            let k_plus = gen_springer_k_with(rule, &Orbit::new(pb), &ps)?;
            let k_minus = gen_springer_k_with(rule, &Orbit::new(mb), &ms)?;
            let (i, p, zeta) = ip_zeta_from_k(k_plus, k_minus);
            classes.push(ClassSpL {
                rep: class.rep,
                kind: class.kind(),
                ell: class.ell,
                n_prime,
                n_second,
                pm: Some(PmData {
                    k_plus,
                    k_minus,
                    weyl_plus: (n_prime - k_plus * (k_plus + 1)) / 2,
                    weyl_minus: (n_second - k_minus * (k_minus + 1)) / 2,
                    i,
                    p,
                    zeta,
                }),
            });
        } else {
            let mut n_prime = 0;
            let mut n_second = 0;
            for (b, s) in pb.iter().chain(&mb).zip(ps.iter().chain(&ms)) {
                match s {
                    Sign::Plus => n_prime += b,
                    Sign::Minus => n_second += b,
                }
            }
            classes.push(ClassSpL {
                rep: class.rep,
                kind: class.kind(),
                ell: class.ell,
                n_prime,
                n_second,
                pm: None,
            });
        }
    }
    Ok(SpLData { classes })
}
