//! The restrict–twist–induce operator ρ∘ι over quadruple splits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{ClassTag, GradedElement, Layout, LayoutClass, SplitKey};
use crate::scalars::CycloScalar;
use crate::sign::Sign;
use crate::symbols::CuspidalDatum;
use crate::tame::TameCharacter;
use crate::weylrep::{
    induce_along, restrict_along, ClassFunction, ClassMap, CycleTransform, Factor, FactorKind, FactorWeight,
    GroupShape,
};

/// A split m = m′ + m″.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SplitPair {
    pub prime: u32,
    pub second: u32,
}

impl SplitPair {
    pub fn new(prime: u32, second: u32) -> Self {
        SplitPair { prime, second }
    }

    pub fn total(&self) -> u32 {
        self.prime + self.second
    }

    /// All splits of m, m′ decreasing.
    pub fn all(m: u32) -> Vec<SplitPair> {
        (0..=m).rev().map(|a| SplitPair::new(a, m - a)).collect()
    }
}

/// (m^{′′}, m^{′″}, m^{″′}, m^{″″}).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuadSplit(pub [u32; 4]);

impl QuadSplit {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// m′ = m^{′′} + m^{′″}.
    pub fn lt_d(&self, s: SplitPair) -> bool {
        self.total() == s.total() && s.prime == self.0[0] + self.0[1]
    }

    /// m′ = m^{′′} + m^{″′}.
    pub fn lt_e(&self, s: SplitPair) -> bool {
        self.total() == s.total() && s.prime == self.0[0] + self.0[2]
    }

    /// All quads with rows `src` and columns `dst`.
    pub fn between(src: SplitPair, dst: SplitPair) -> Vec<QuadSplit> {
        if src.total() != dst.total() {
            return Vec::new();
        }
        let lo = src.prime.saturating_sub(dst.second);
        let hi = src.prime.min(dst.prime);
        (lo..=hi)
            .filter_map(|q0| {
                let q1 = src.prime - q0;
                let q2 = dst.prime - q0;
                let q3 = src.second.checked_sub(q2)?;
                Some(QuadSplit([q0, q1, q2, q3]))
            })
            .collect()
    }
}

/// The twist of one class on the four quad pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum QuadRule {
    /// Symmetric groups: the constant (−1)^{m^{″″}}.
    Sym,
    /// Type C: sgn_CD on the pieces ′″, ″′, ″″ where flagged; ′′ is untwisted.
    Weyl { t01: bool, t10: bool, t11: bool },
}

impl QuadRule {
    /// The twist on W_{N′} × W_{N″} for the side ε of a cuspidal datum:
    /// 1, sgn_CD^{(1−ζ)/2}, χ̃, χ̃·sgn_CD^{(1+ζ)/2}.
    pub fn for_cusp(cusp: &CuspidalDatum, e: Sign) -> QuadRule {
        let chi = cusp.chi_tilde_is_sgn(e);
        let zeta_minus = cusp.zeta(e).is_minus();
        QuadRule::Weyl { t01: zeta_minus, t10: chi, t11: chi != !zeta_minus }
    }

    /// The twist used on the semisimple side: sgn_CD on ″″ only.
    pub fn semisimple_weyl() -> QuadRule {
        QuadRule::Weyl { t01: false, t10: false, t11: true }
    }

    fn weights(self, q: QuadSplit) -> [FactorWeight; 4] {
        match self {
            QuadRule::Sym => [
                FactorWeight::one(),
                FactorWeight::one(),
                FactorWeight::one(),
                FactorWeight::constant(CycloScalar::sign(q.0[3] as u64)),
            ],
            QuadRule::Weyl { t01, t10, t11 } => {
                let w = |b: bool| if b { FactorWeight::sgn_cd() } else { FactorWeight::one() };
                [FactorWeight::one(), w(t01), w(t10), w(t11)]
            }
        }
    }
}

fn identity_transform(kind: FactorKind) -> CycleTransform {
    match kind {
        FactorKind::Sym => CycleTransform::Scale(1),
        FactorKind::WeylC => CycleTransform::WeylScale(1),
    }
}

/// Order in which the quad pieces are laid out after exchanging the 2nd and
/// 3rd factors: the induced function lives on (′′, ″′) × (′″, ″″).
pub const SWAP_WITNESS: [usize; 4] = [0, 2, 1, 3];

/// ρ∘ι on a graded element, one rule per layout class.
pub fn rho_iota_graded(el: &GradedElement, rules: &[QuadRule]) -> Result<GradedElement> {
    let layout = el.layout();
    if rules.len() != layout.classes.len() {
        return Err(Error::ShapeError(format!(
            "{} rules for {} classes",
            rules.len(),
            layout.classes.len()
        )));
    }
    let mut out = GradedElement::zero(layout);
    for (key, f) in el.components() {
        if f.is_zero() {
            continue;
        }
        let src_shape = layout.shape(key);
        for target in layout.keys() {
            let tgt_shape = layout.shape(&target);
            let per_class: Vec<Vec<QuadSplit>> = key
                .iter()
                .zip(&target)
                .map(|(&(a, b), &(c, d))| QuadSplit::between(SplitPair::new(a, b), SplitPair::new(c, d)))
                .collect();
            let mut acc = ClassFunction::zero(&tgt_shape);
            let mut any = false;
            for quads in cartesian(&per_class) {
                let mut factors = Vec::new();
                let mut to_src = Vec::new();
                let mut to_tgt = Vec::new();
                let mut weights = Vec::new();
                for (c, (q, class)) in quads.iter().zip(&layout.classes).enumerate() {
                    let tr = identity_transform(class.kind);
                    for (j, &r) in q.0.iter().enumerate() {
                        factors.push(Factor { kind: class.kind, rank: r });
                        to_src.push((2 * c + j / 2, tr));
                        to_tgt.push((2 * c + SWAP_WITNESS[j] / 2, tr));
                    }
                    weights.extend(rules[c].weights(*q));
                }
                let quad_shape = GroupShape(factors);
                let res = restrict_along(&ClassMap::new(quad_shape.clone(), src_shape.clone(), to_src)?, f)?;
                let tw = res.twist(&weights)?;
                let ind = induce_along(&ClassMap::new(quad_shape, tgt_shape.clone(), to_tgt)?, &tw)?;
                acc.add_assign(&ind)?;
                any = true;
            }
            if any {
                out.add_component(target, acc)?;
            }
        }
    }
    Ok(out)
}

pub(crate) fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for l in lists {
        out = out
            .into_iter()
            .flat_map(|p| {
                l.iter().map(move |x| {
                    let mut p = p.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    out
}

fn sym_layout(m: u32) -> Layout {
    Layout::new(vec![LayoutClass { kind: FactorKind::Sym, total: m, tag: ClassTag::Generic { rep: 0, ell: 1 } }])
}

fn weyl_layout(total: u32, e: Sign) -> Layout {
    Layout::new(vec![LayoutClass { kind: FactorKind::WeylC, total, tag: ClassTag::Pm(e) }])
}

fn ungrade(el: &GradedElement) -> Vec<(SplitPair, ClassFunction)> {
    el.layout()
        .keys()
        .into_iter()
        .filter_map(|k| el.component(&k).map(|f| (SplitPair::new(k[0].0, k[0].1), f.clone())))
        .collect()
}

/// ρ∘ι on S_{m′} × S_{m″}, by the quadruple-split formula.
pub fn rho_iota_sym(m0: SplitPair, f: &ClassFunction) -> Result<Vec<(SplitPair, ClassFunction)>> {
    let layout = sym_layout(m0.total());
    let el = GradedElement::single(&layout, vec![(m0.prime, m0.second)], f.clone())?;
    Ok(ungrade(&rho_iota_graded(&el, &[QuadRule::Sym])?))
}

/// ρ∘ι on S_{m′} × S_{m″}, computed directly: lift to W_{m′} × W_{m″},
/// tensor sgn_CD on the second factor, induce to W_m, then restrict along
/// the first embedding on S_{M′} and the second on S_{M″}.
pub fn rho_iota_sym_direct(m0: SplitPair, f: &ClassFunction) -> Result<Vec<(SplitPair, ClassFunction)>> {
    let m = m0.total();
    let s_shape = GroupShape(vec![Factor::sym(m0.prime), Factor::sym(m0.second)]);
    let w_shape = GroupShape(vec![Factor::weyl(m0.prime), Factor::weyl(m0.second)]);
    let big = GroupShape(vec![Factor::weyl(m)]);
    let lift = ClassMap::new(
        w_shape.clone(),
        s_shape,
        vec![(0, CycleTransform::WeylForget), (1, CycleTransform::WeylForget)],
    )?;
    let lifted = restrict_along(&lift, f)?;
    let twisted = lifted.twist(&[FactorWeight::one(), FactorWeight::sgn_cd()])?;
    let up = ClassMap::new(
        w_shape,
        big.clone(),
        vec![(0, CycleTransform::WeylScale(1)), (0, CycleTransform::WeylScale(1))],
    )?;
    let induced = induce_along(&up, &twisted)?;
    let mut out = Vec::new();
    for s in SplitPair::all(m) {
        let emb = ClassMap::new(
            GroupShape(vec![Factor::sym(s.prime), Factor::sym(s.second)]),
            big.clone(),
            vec![(0, CycleTransform::SymToWeylPositive(1)), (0, CycleTransform::SymToWeylParity(1))],
        )?;
        out.push((s, restrict_along(&emb, &induced)?));
    }
    Ok(out)
}

/// ρ∘ι on W_{N′} × W_{N″} for the side ε of a cuspidal datum. The output
/// is indexed by pairs of symbols of defects (I_ε, ζ̃_ε P_ε).
pub fn rho_iota_weyl(
    cusp: &CuspidalDatum,
    e: Sign,
    n0: SplitPair,
    f: &ClassFunction,
) -> Result<Vec<(SplitPair, ClassFunction)>> {
    let layout = weyl_layout(n0.total(), e);
    let el = GradedElement::single(&layout, vec![(n0.prime, n0.second)], f.clone())?;
    Ok(ungrade(&rho_iota_graded(&el, &[QuadRule::for_cusp(cusp, e)])?))
}

/// The χ-side layout: classes ≠ ±1 with total m([u]), then ε = +1 and
/// ε = −1 with Weyl total m(ε)/2 − (I_ε²+P_ε²−1)/4. Invalid when a Weyl
/// total is negative or not an integer.
pub fn chi_layout(chi: &TameCharacter, cusp: &CuspidalDatum) -> Layout {
    let mut classes: Vec<LayoutClass> = chi
        .generic_classes()
        .map(|c| LayoutClass {
            kind: FactorKind::Sym,
            total: c.mult,
            tag: ClassTag::Generic { rep: c.rep, ell: c.ell },
        })
        .collect();
    let mut valid = true;
    for e in Sign::BOTH {
        let total = cusp.weyl_total(e, chi.pm_mult(e));
        valid &= total.is_some();
        classes.push(LayoutClass { kind: FactorKind::WeylC, total: total.unwrap_or(0), tag: ClassTag::Pm(e) });
    }
    Layout { classes, valid }
}

/// The rules of the χ side: symmetric on classes ≠ ±1 and the cuspidal
/// twist table on ±1.
pub fn chi_rules(layout: &Layout, cusp: &CuspidalDatum) -> Vec<QuadRule> {
    layout
        .classes
        .iter()
        .map(|c| match c.tag {
            ClassTag::Generic { .. } => QuadRule::Sym,
            ClassTag::Pm(e) => QuadRule::for_cusp(cusp, e),
        })
        .collect()
}

/// ρ∘ι on the χ side: the tensor product over classes. The result is an
/// element for the retagged datum with ζ̃ in place of ζ.
pub fn rho_iota_full(chi: &TameCharacter, cusp: &CuspidalDatum, el: &GradedElement) -> Result<GradedElement> {
    let layout = chi_layout(chi, cusp);
    if el.layout() != &layout {
        return Err(Error::ShapeError("element does not live on the layout of χ".into()));
    }
    rho_iota_graded(el, &chi_rules(&layout, cusp))
}

pub fn split_key(pairs: &[SplitPair]) -> SplitKey {
    pairs.iter().map(|p| (p.prime, p.second)).collect()
}
