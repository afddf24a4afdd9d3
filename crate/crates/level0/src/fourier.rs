//! The Fourier-type transform on sign characters, the |D| sign and stable
//! packets.
//!
//! Per class [u] ≠ ±1 the space has one basis vector per sign vector on the
//! Jordan blocks of multiplicity 1. In discrete mode that is every block; in
//! elliptic mode a basis vector stands for the sum over the signs of the
//! multiplicity-2 blocks weighted by their product, and the transform acts
//! on these coordinates.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbits::Orbit;
use crate::params::{enumerate_sign_characters, epsilon_center, DiscreteParameter, SignCharacter};
use crate::scalars::{serialize_opt_rational, serialize_rational, Rational};
use crate::sign::Sign;

/// Choice of σ(ε) in the pairing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaEps {
    /// σ(ε) = σ_{[u]}(ε), the product of ε over odd blocks.
    #[default]
    OddBlocks,
    /// σ(ε) = 1.
    Trivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FourierConfig {
    pub sigma_u: Sign,
    pub sigma_eps: SigmaEps,
}

impl Default for FourierConfig {
    fn default() -> Self {
        FourierConfig { sigma_u: Sign::Plus, sigma_eps: SigmaEps::OddBlocks }
    }
}

/// The orbit data (U_{[u],+}, U_{[u],−}) of one class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct UComponent {
    pub plus: Orbit,
    pub minus: Orbit,
    /// Whether the class is ±1.
    pub pm: bool,
}

impl UComponent {
    pub fn generic(plus: Orbit, minus: Orbit) -> Self {
        UComponent { plus, minus, pm: false }
    }

    /// The class of index `ci` of ψ.
    pub fn of(psi: &DiscreteParameter, ci: usize) -> Self {
        let c = &psi.comps[ci];
        UComponent { plus: c.plus.clone(), minus: c.minus.clone(), pm: psi.chi.classes[ci].is_pm() }
    }

    /// Sizes of the multiplicity-1 blocks, + orbit then − orbit, decreasing.
    pub fn units(&self) -> Vec<u32> {
        [&self.plus, &self.minus]
            .iter()
            .flat_map(|o| o.blocks().iter().copied().filter(|&a| o.mult(a) == 1).collect::<Vec<_>>())
            .collect()
    }

    /// Sizes of the multiplicity-2 blocks.
    pub fn doubled(&self) -> Vec<u32> {
        [&self.plus, &self.minus].iter().flat_map(|o| o.jord().into_iter().filter(|&a| o.mult(a) == 2)).collect()
    }

    /// |Jord(U_{[u]})|, counting every distinct block size once.
    pub fn jord_size(&self) -> usize {
        self.plus.jord().len() + self.minus.jord().len()
    }
}

/// A formal combination of sign vectors with exact coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EllElement {
    pub terms: BTreeMap<Vec<Sign>, Rational>,
}

#[derive(Serialize)]
struct TermOut<'a> {
    eps: &'a [Sign],
    #[serde(serialize_with = "serialize_rational")]
    coeff: &'a Rational,
}

impl Serialize for EllElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(eps, coeff)| TermOut { eps, coeff }))
    }
}

impl EllElement {
    pub fn basis(key: Vec<Sign>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(key, Rational::one());
        EllElement { terms }
    }

    pub fn add_term(&mut self, key: Vec<Sign>, c: Rational) {
        let e = self.terms.entry(key).or_insert_with(Rational::zero);
        *e += c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn coeff(&self, key: &[Sign]) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> EllElement {
        let mut out = EllElement::default();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Keys concatenated, coefficients multiplied.
    pub fn tensor(&self, other: &EllElement) -> EllElement {
        let mut out = EllElement::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut k = a.clone();
                k.extend(b);
                out.add_term(k, x * y);
            }
        }
        out
    }
}

fn all_signs(len: usize) -> Vec<Vec<Sign>> {
    (0..1u64 << len)
        .map(|mask| (0..len).map(|i| if mask >> (len - 1 - i) & 1 == 0 { Sign::Plus } else { Sign::Minus }).collect())
        .collect()
}

/// σ_{[u]}: the product of the signs on odd blocks.
fn sigma_odd(units: &[u32], eps: &[Sign]) -> Sign {
    Sign::product(units.iter().zip(eps).filter(|(a, _)| *a % 2 == 1).map(|(_, &s)| s))
}

/// The pairing ⟨(U,ε),(U,ε′)⟩ on the multiplicity-1 blocks `units`.
fn pairing(units: &[u32], eps: &[Sign], eps2: &[Sign], cfg: &FourierConfig) -> Sign {
    let s_eps = match cfg.sigma_eps {
        SigmaEps::OddBlocks => sigma_odd(units, eps),
        SigmaEps::Trivial => Sign::Plus,
    };
    let kernel = Sign::product(eps.iter().zip(eps2).filter(|(e, _)| e.is_minus()).map(|(_, &s)| s));
    cfg.sigma_u * s_eps * sigma_odd(units, eps2) * kernel
}

fn check_len(units: &[u32], eps: &[Sign]) -> Result<()> {
    if units.len() != eps.len() {
        return Err(Error::SizeMismatch(format!("{} signs for {} blocks", eps.len(), units.len())));
    }
    Ok(())
}

/// F_{[u]}(U, ε) for a class [u] ≠ ±1; `eps` lists the signs on
/// [`UComponent::units`].
pub fn fourier_component(u: &UComponent, eps: &[Sign], cfg: &FourierConfig) -> Result<EllElement> {
    if u.pm {
        return Err(Error::NotApplicable("the transform at ±1 is not defined here".into()));
    }
    let units = u.units();
    check_len(&units, eps)?;
    let mut out = EllElement::default();
    for e2 in all_signs(units.len()) {
        let c = pairing(&units, eps, &e2, cfg).to_i64();
        out.add_term(e2, Rational::from_integer(c.into()));
    }
    Ok(out)
}

/// The matrix of F_{[u]}: column j is the image of the j-th sign vector.
pub fn fourier_matrix(u: &UComponent, cfg: &FourierConfig) -> Result<Vec<Vec<Rational>>> {
    let keys = all_signs(u.units().len());
    let mut m = vec![vec![Rational::zero(); keys.len()]; keys.len()];
    for (j, k) in keys.iter().enumerate() {
        let img = fourier_component(u, k, cfg)?;
        for (i, k2) in keys.iter().enumerate() {
            m[i][j] = img.coeff(k2);
        }
    }
    Ok(m)
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j])).collect())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// F² = c·Id.
    ScaledIdentity,
    /// F² = c·F.
    ScaledTransform,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvolutionReport {
    pub units: Vec<u32>,
    pub config: FourierConfig,
    pub relation: Relation,
    #[serde(serialize_with = "serialize_opt_rational")]
    pub scale: Option<Rational>,
    /// 2^{|Jord|}.
    #[serde(serialize_with = "serialize_rational")]
    pub expected_scale: Rational,
}

/// Compares F² with multiples of Id and of F.
pub fn involution_check(u: &UComponent, cfg: &FourierConfig) -> Result<InvolutionReport> {
    let f = fourier_matrix(u, cfg)?;
    let f2 = mat_mul(&f, &f);
    let n = f.len();
    let proportional = |target: &dyn Fn(usize, usize) -> Rational| -> Option<Rational> {
        let mut c: Option<Rational> = None;
        for i in 0..n {
            for j in 0..n {
                let t = target(i, j);
                if t.is_zero() {
                    if !f2[i][j].is_zero() {
                        return None;
                    }
                    continue;
                }
                let r = &f2[i][j] / &t;
                match &c {
                    None => c = Some(r),
                    Some(c0) if *c0 != r => return None,
                    _ => {}
                }
            }
        }
        c
    };
    let id = |i: usize, j: usize| if i == j { Rational::one() } else { Rational::zero() };
    let (relation, scale) = if let Some(c) = proportional(&id) {
        (Relation::ScaledIdentity, Some(c))
    } else if let Some(c) = proportional(&|i, j| f[i][j].clone()) {
        (Relation::ScaledTransform, Some(c))
    } else {
        (Relation::Other, None)
    };
    Ok(InvolutionReport {
        units: u.units(),
        config: *cfg,
        relation,
        scale,
        expected_scale: Rational::from_integer((1u64 << u.jord_size()).into()),
    })
}

/// The transform at a class ±1, an extension point.
pub trait PmTransform {
    fn transform(&self, u: &UComponent, eps: &[Sign]) -> Result<EllElement>;
}

/// Identity placeholder for the transform at ±1.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityPlaceholder;

impl PmTransform for IdentityPlaceholder {
    fn transform(&self, u: &UComponent, eps: &[Sign]) -> Result<EllElement> {
        check_len(&u.units(), eps)?;
        Ok(EllElement::basis(eps.to_vec()))
    }
}

/// The signs of ε on the multiplicity-1 blocks, class by class.
pub fn ell_key(psi: &DiscreteParameter, eps: &SignCharacter) -> Result<Vec<Vec<Sign>>> {
    let blocks = psi.blocks();
    if blocks.len() != eps.0.len() {
        return Err(Error::SizeMismatch(format!("{} signs for {} blocks", eps.0.len(), blocks.len())));
    }
    let mut out = vec![Vec::new(); psi.comps.len()];
    for (b, &s) in blocks.iter().zip(&eps.0) {
        if psi.comps[b.class_index].orbit(b.side).mult(b.size) == 1 {
            out[b.class_index].push(s);
        }
    }
    Ok(out)
}

/// F(ψ, ε) with the kernel taken over all classes at once; classes ±1 go
/// through `pm`.
pub fn fourier_with(
    psi: &DiscreteParameter,
    eps: &SignCharacter,
    cfg: &FourierConfig,
    pm: &dyn PmTransform,
) -> Result<EllElement> {
    let key = ell_key(psi, eps)?;
    let comps: Vec<UComponent> = (0..psi.comps.len()).map(|ci| UComponent::of(psi, ci)).collect();
    let mut parts = Vec::new();
    let mut units = Vec::new();
    let mut eps_g = Vec::new();
    for (ci, comp) in comps.iter().enumerate() {
        if comp.pm {
            parts.push(pm.transform(comp, &key[ci])?);
        } else {
            let mut e = EllElement::default();
            for k in all_signs(key[ci].len()) {
                e.add_term(k, Rational::one());
            }
            parts.push(e);
            units.extend(comp.units());
            eps_g.extend(key[ci].iter().copied());
        }
    }
    let support = parts.iter().fold(EllElement::basis(Vec::new()), |acc, p| acc.tensor(p));
    let mut out = EllElement::default();
    for (k, _) in &support.terms {
        let mut pos = 0;
        let mut gk = Vec::new();
        let mut c = Rational::one();
        for (ci, comp) in comps.iter().enumerate() {
            let slice = &k[pos..pos + key[ci].len()];
            if comp.pm {
                c *= parts[ci].coeff(slice);
            } else {
                gk.extend_from_slice(slice);
            }
            pos += key[ci].len();
        }
        c *= Rational::from_integer(pairing(&units, &eps_g, &gk, cfg).to_i64().into());
        out.add_term(k.clone(), c);
    }
    Ok(out)
}

pub fn fourier(psi: &DiscreteParameter, eps: &SignCharacter, cfg: &FourierConfig) -> Result<EllElement> {
    fourier_with(psi, eps, cfg, &IdentityPlaceholder)
}

/// ⊗_{[u]} F_{[u]}(U_{[u]}, ε_{[u]}), classes ±1 through `pm`.
pub fn fourier_tensor(
    psi: &DiscreteParameter,
    eps: &SignCharacter,
    cfg: &FourierConfig,
    pm: &dyn PmTransform,
) -> Result<EllElement> {
    let key = ell_key(psi, eps)?;
    let mut out = EllElement::basis(Vec::new());
    for ci in 0..psi.comps.len() {
        let u = UComponent::of(psi, ci);
        let part = if u.pm { pm.transform(&u, &key[ci])? } else { fourier_component(&u, &key[ci], cfg)? };
        out = out.tensor(&part);
    }
    Ok(out)
}

/// The sign relating a representation to its image under |D| at elliptic
/// elements: the product of ε over the even blocks.
pub fn d_sign(psi: &DiscreteParameter, eps: &SignCharacter) -> Result<Sign> {
    let blocks = psi.blocks();
    if blocks.len() != eps.0.len() {
        return Err(Error::SizeMismatch(format!("{} signs for {} blocks", eps.0.len(), blocks.len())));
    }
    Ok(Sign::product(blocks.iter().zip(&eps.0).filter(|(b, _)| b.size % 2 == 0).map(|(_, &s)| s)))
}

/// The form ♯ of SO(2n+1): split (iso) or not (an).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sharp {
    Iso,
    An,
}

impl Sharp {
    pub fn sign(self) -> Sign {
        match self {
            Sharp::Iso => Sign::Plus,
            Sharp::An => Sign::Minus,
        }
    }
}

/// The ε with ε_Z = ♯, each with coefficient 1, or with ε_Z when
/// `weighted`.
pub fn stable_packet(psi: &DiscreteParameter, sharp: Sharp, weighted: bool) -> Result<Vec<(SignCharacter, Rational)>> {
    let mut out = Vec::new();
    for eps in enumerate_sign_characters(psi) {
        let z = epsilon_center(psi, &eps)?;
        if z == sharp.sign() {
            let c = if weighted { z.to_i64() } else { 1 };
            out.push((eps, Rational::from_integer(c.into())));
        }
    }
    Ok(out)
}

/// F(ψ, ε) for stable (ζ = +, ε ≡ +) or semistable (ζ = −, ε ≡ −) inputs
/// without classes ±1: σ_{[u]}(ε) Σ_{ε′} σ_{[u]}(ε′) (ψ, ε′) per class, with
/// the extra factor ∏ ε′(α) when ζ = −.
pub fn fourier_of_stable(psi: &DiscreteParameter, eps: &SignCharacter, zeta: Sign) -> Result<EllElement> {
    if psi.chi.classes.iter().any(|c| c.is_pm()) {
        return Err(Error::Unsupported("the transform at ±1 is a placeholder".into()));
    }
    if eps.0.iter().any(|&s| s != zeta) {
        return Err(Error::NotStable(format!("ε is not constant equal to {zeta}")));
    }
    let key = ell_key(psi, eps)?;
    let mut out = EllElement::basis(Vec::new());
    for (ci, k) in key.iter().enumerate() {
        let units = UComponent::of(psi, ci).units();
        let s = sigma_odd(&units, k);
        let mut part = EllElement::default();
        for e2 in all_signs(units.len()) {
            let mut c = s * sigma_odd(&units, &e2);
            if zeta.is_minus() {
                c = c * Sign::product(e2.iter().copied());
            }
            part.add_term(e2, Rational::from_integer(c.to_i64().into()));
        }
        out = out.tensor(&part);
    }
    Ok(out)
}
