//! Localization of χ-side class functions at a semisimple class g_s.
//!
//! A ν-matrix distributes the ranks of every χ-side class [u] over the
//! classes [λ] of g_s. Each nonzero entry gives a block group with two
//! class maps, one into the χ-side shape and one into the g_s-side shape,
//! and a twist. Localization restricts along the first map, multiplies by
//! the twists and induces along the second.
//!
//! Ranks at ±1 are counted as Weyl ranks, so a block between two classes
//! ±1 is a type C Weyl group embedded identically on both sides, with the
//! cuspidal offsets absorbed into the layout totals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{ClassTag, GradedElement, Layout, LayoutClass, SplitKey};
use crate::rho_iota::{cartesian, chi_layout, rho_iota_full, rho_iota_graded, QuadRule};
use crate::scalars::{CycloScalar, Rational};
use crate::sign::Sign;
use crate::symbols::CuspidalDatum;
use crate::tame::{build_classes, EigenClass, SeedSpec, TameCharacter};
use crate::weylrep::{
    induce_along, restrict_along, ClassFunction, ClassMap, CycleTransform, Factor, FactorClass, FactorKind,
    FactorWeight, GroupShape,
};

/// Data of g_s at the eigenvalue ε′ = ±1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PmClassData {
    pub mult: u32,
    /// Parity of the valuation of the discriminant.
    pub v_parity: u8,
    pub eta_prime: Sign,
    pub eta_second: Sign,
}

impl Default for PmClassData {
    fn default() -> Self {
        PmClassData { mult: 0, v_parity: 0, eta_prime: Sign::Plus, eta_second: Sign::Plus }
    }
}

/// A class [λ] ≠ ±1 of g_s with its form invariant ♯.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GsClass {
    pub class: EigenClass,
    pub sharp: Sign,
}

/// The combinatorial shadow of an elliptic semisimple element g_s.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SemisimpleClass {
    pub q: u64,
    #[serde(rename = "N")]
    pub order: u32,
    pub classes: Vec<GsClass>,
    pub plus: PmClassData,
    pub minus: PmClassData,
}

/// JSON form of a semisimple class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemisimpleSpec {
    pub q: u64,
    #[serde(rename = "N")]
    pub order: u32,
    #[serde(default)]
    pub classes: Vec<SeedSpec>,
    #[serde(default)]
    pub sharp: Vec<Sign>,
    #[serde(default)]
    pub plus: PmClassData,
    #[serde(default)]
    pub minus: PmClassData,
}

impl SemisimpleSpec {
    pub fn build(&self) -> Result<SemisimpleClass> {
        let seeds: Vec<(u32, u32)> = self.classes.iter().map(|s| (s.rep, s.mult)).collect();
        SemisimpleClass::new(self.q, self.order, &seeds, &self.sharp, self.plus.clone(), self.minus.clone())
    }
}

impl SemisimpleClass {
    /// `seeds` must avoid the exponents of ±1; `sharp` defaults to +.
    pub fn new(
        q: u64,
        order: u32,
        seeds: &[(u32, u32)],
        sharp: &[Sign],
        plus: PmClassData,
        minus: PmClassData,
    ) -> Result<Self> {
        let classes = build_classes(q, order, seeds)?;
        if classes.iter().any(|c| c.is_pm()) {
            return Err(Error::InvalidInput("give the classes ±1 through their own fields".into()));
        }
        if minus.mult > 0 && order % 2 == 1 {
            return Err(Error::InvalidInput("−1 is not an N-th root of unity for odd N".into()));
        }
        let classes = classes
            .into_iter()
            .enumerate()
            .map(|(i, class)| GsClass { class, sharp: sharp.get(i).copied().unwrap_or(Sign::Plus) })
            .collect();
        Ok(SemisimpleClass { q, order, classes, plus, minus })
    }

    pub fn pm(&self, e: Sign) -> &PmClassData {
        match e {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    /// The dimension 2n+1 of the space g_s acts on.
    pub fn dimension(&self) -> u32 {
        self.plus.mult + self.minus.mult + self.classes.iter().map(|c| 2 * c.class.ell * c.class.mult).sum::<u32>()
    }
}

/// The g_s-side layout: classes ≠ ±1 with total m([λ]), then ε′ = +1 and
/// ε′ = −1 with Weyl total ½(m(ε′) − |r|′_{ε′}² − |r|″_{ε′}²).
pub fn gs_layout(gs: &SemisimpleClass, cusp: &CuspidalDatum) -> Layout {
    let mut classes: Vec<LayoutClass> = gs
        .classes
        .iter()
        .map(|c| LayoutClass {
            kind: FactorKind::Sym,
            total: c.class.mult,
            tag: ClassTag::Generic { rep: c.class.rep, ell: c.class.ell },
        })
        .collect();
    let mut valid = true;
    for e in Sign::BOTH {
        let r1 = cusp.r(true, e) as i64;
        let r2 = cusp.r(false, e) as i64;
        let num = gs.pm(e).mult as i64 - r1 * r1 - r2 * r2;
        let total = if num >= 0 && num % 2 == 0 { Some((num / 2) as u32) } else { None };
        valid &= total.is_some();
        classes.push(LayoutClass { kind: FactorKind::WeylC, total: total.unwrap_or(0), tag: ClassTag::Pm(e) });
    }
    Layout { classes, valid }
}

/// The twist case of a block ([u], [λ]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TwistCase {
    /// u, λ ∈ {±1}.
    BothPm,
    /// u, λ ∉ {±1} with ℓ_u, ℓ_λ divisible by the same power of 2.
    SameTwoPower,
    /// u, λ ∉ {±1} otherwise.
    DifferentTwoPower,
    /// u ∈ {±1}, λ ∉ {±1}.
    PmGeneric,
    /// u ∉ {±1}, λ ∈ {±1}.
    GenericPm,
}

pub fn twist_case(u: ClassTag, lam: ClassTag) -> TwistCase {
    match (u, lam) {
        (ClassTag::Pm(_), ClassTag::Pm(_)) => TwistCase::BothPm,
        (ClassTag::Pm(_), ClassTag::Generic { .. }) => TwistCase::PmGeneric,
        (ClassTag::Generic { .. }, ClassTag::Pm(_)) => TwistCase::GenericPm,
        (ClassTag::Generic { ell: a, .. }, ClassTag::Generic { ell: b, .. }) => {
            if a.trailing_zeros() == b.trailing_zeros() {
                TwistCase::SameTwoPower
            } else {
                TwistCase::DifferentTwoPower
            }
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    num_integer::Integer::gcd(&a, &b)
}

/// Weights of a block in the rank marginals: a row weight (χ side), a
/// column weight (g_s side) and the exponent x.
pub fn block_weights(u: ClassTag, lam: ClassTag) -> (u32, u32, u32) {
    match (u, lam) {
        (ClassTag::Generic { ell: lu, .. }, ClassTag::Generic { ell: ll, .. }) => {
            let g = gcd(lu, ll);
            let x = u32::from((lu / g) % 2 == 0 || (ll / g) % 2 == 0);
            ((1 << x) * ll / g, (1 << x) * lu / g, x)
        }
        (ClassTag::Pm(_), ClassTag::Generic { ell, .. }) => (ell, 1, 0),
        (ClassTag::Generic { ell, .. }, ClassTag::Pm(_)) => (1, ell, 0),
        (ClassTag::Pm(_), ClassTag::Pm(_)) => (1, 1, 0),
    }
}

/// The class maps of a block into the χ side and the g_s side.
fn block_transforms(u: ClassTag, lam: ClassTag) -> (CycleTransform, CycleTransform) {
    let (rw, cw, _) = block_weights(u, lam);
    match (u, lam) {
        (ClassTag::Generic { .. }, ClassTag::Generic { .. }) => (CycleTransform::Scale(rw), CycleTransform::Scale(cw)),
        (ClassTag::Pm(_), ClassTag::Generic { .. }) => (CycleTransform::SymToWeylParity(rw), CycleTransform::Scale(1)),
        (ClassTag::Generic { .. }, ClassTag::Pm(_)) => (CycleTransform::Scale(1), CycleTransform::SymToWeylParity(cw)),
        (ClassTag::Pm(_), ClassTag::Pm(_)) => (CycleTransform::WeylScale(1), CycleTransform::WeylScale(1)),
    }
}

fn block_kind(u: ClassTag, lam: ClassTag) -> FactorKind {
    match (u, lam) {
        (ClassTag::Pm(_), ClassTag::Pm(_)) => FactorKind::WeylC,
        _ => FactorKind::Sym,
    }
}

/// ν^δ([u],[λ]) for δ ∈ {′, ″}, rows indexed by χ-side classes and columns
/// by g_s-side classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NuMatrix {
    pub rows: Vec<ClassTag>,
    pub cols: Vec<ClassTag>,
    /// Row-major, `[ν′, ν″]` per entry.
    pub entries: Vec<[u32; 2]>,
}

impl NuMatrix {
    pub fn get(&self, r: usize, c: usize) -> [u32; 2] {
        self.entries[r * self.cols.len() + c]
    }

    /// 2^{x} for every entry.
    pub fn scale_factor(&self, r: usize, c: usize) -> u32 {
        1 << block_weights(self.rows[r], self.cols[c]).2
    }

    pub fn row_sums(&self) -> Vec<(u32, u32)> {
        (0..self.rows.len())
            .map(|r| {
                let mut s = (0, 0);
                for c in 0..self.cols.len() {
                    let (w, _, _) = block_weights(self.rows[r], self.cols[c]);
                    let v = self.get(r, c);
                    s.0 += v[0] * w;
                    s.1 += v[1] * w;
                }
                s
            })
            .collect()
    }

    pub fn col_sums(&self) -> Vec<(u32, u32)> {
        (0..self.cols.len())
            .map(|c| {
                let mut s = (0, 0);
                for r in 0..self.rows.len() {
                    let (_, w, _) = block_weights(self.rows[r], self.cols[c]);
                    let v = self.get(r, c);
                    s.0 += v[0] * w;
                    s.1 += v[1] * w;
                }
                s
            })
            .collect()
    }
}

/// All vectors v ≥ 0 with Σ v_i w_i = n.
fn compositions(n: u32, weights: &[u32]) -> Vec<Vec<u32>> {
    fn rec(i: usize, rest: u32, w: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == w.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in (0..=rest / w[i]).rev() {
            cur.push(k);
            rec(i + 1, rest - k * w[i], w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, weights, &mut Vec::new(), &mut out);
    out
}

/// All matrices with the given row sums, columns free (bounded by `caps`).
fn nu_with_rows(rows: &[(ClassTag, (u32, u32))], cols: &[ClassTag], caps: Option<&[u32]>) -> Vec<NuMatrix> {
    let ncol = cols.len();
    let mut per_row = Vec::new();
    for &(u, (n1, n2)) in rows {
        let w: Vec<u32> = cols.iter().map(|&l| block_weights(u, l).0).collect();
        let c1 = compositions(n1, &w);
        let c2 = compositions(n2, &w);
        let mut opts = Vec::new();
        for a in &c1 {
            for b in &c2 {
                opts.push((a.clone(), b.clone()));
            }
        }
        per_row.push(opts);
    }
    let row_tags: Vec<ClassTag> = rows.iter().map(|r| r.0).collect();
    cartesian(&per_row)
        .into_iter()
        .map(|choice| {
            let mut entries = vec![[0u32; 2]; rows.len() * ncol];
            for (r, (a, b)) in choice.iter().enumerate() {
                for c in 0..ncol {
                    entries[r * ncol + c] = [a[c], b[c]];
                }
            }
            NuMatrix { rows: row_tags.clone(), cols: cols.to_vec(), entries }
        })
        .filter(|m| match caps {
            None => true,
            Some(caps) => m.col_sums().iter().zip(caps).all(|(s, &cap)| s.0 + s.1 == cap),
        })
        .collect()
}

/// All ν-matrices with row sums `rows` and column sums `cols`.
pub fn enumerate_nu(rows: &[(ClassTag, (u32, u32))], cols: &[(ClassTag, (u32, u32))]) -> Vec<NuMatrix> {
    let tags: Vec<ClassTag> = cols.iter().map(|c| c.0).collect();
    let want: Vec<(u32, u32)> = cols.iter().map(|c| c.1).collect();
    nu_with_rows(rows, &tags, None)
        .into_iter()
        .filter(|m| m.col_sums() == want)
        .collect()
}

/// φ_{α,[λ],y} = y⁻¹ ℓ⁻¹ Σ_{j<ℓ} (λ^{αq^j} + λ^{−αq^j}) for λ = ζ_N^{rep}.
pub fn phi(alpha: u32, lam: &EigenClass, y: &Rational, q: u64) -> Result<CycloScalar> {
    if lam.is_pm() {
        return Err(Error::NotApplicable("φ is defined for classes other than ±1".into()));
    }
    let n = lam.order as u64;
    let mut acc = CycloScalar::zero();
    let mut e = (lam.rep as u64 * alpha as u64) % n;
    for _ in 0..lam.ell {
        acc += &CycloScalar::root_of_unity(lam.order, e as i64);
        acc += &CycloScalar::root_of_unity(lam.order, -(e as i64));
        e = e * (q % n) % n;
    }
    let denom = y * Rational::from_integer(lam.ell.into());
    Ok(acc.scale(&denom.recip()))
}

/// Data identifying a block for [`twist_class_function`].
#[derive(Clone, Debug)]
pub struct BlockData<'a> {
    pub u: ClassTag,
    pub lam: ClassTag,
    /// The g_s class when [λ] ≠ ±1.
    pub lam_class: Option<&'a EigenClass>,
    pub q: u64,
    /// ν, or the Weyl rank for a block between two classes ±1.
    pub nu: u32,
}

fn case_weight(case: TwistCase, b: &BlockData) -> Result<FactorWeight> {
    let sign_pow = |e: u64| CycloScalar::sign(e);
    Ok(match case {
        TwistCase::BothPm => {
            if b.u == ClassTag::Pm(Sign::Minus) && b.lam == ClassTag::Pm(Sign::Minus) {
                FactorWeight {
                    constant: sign_pow(b.nu as u64 * (b.q - 1) / 2),
                    sgn_cd: true,
                    per_cycle: None,
                }
            } else {
                FactorWeight::one()
            }
        }
        TwistCase::SameTwoPower | TwistCase::DifferentTwoPower => {
            let (ClassTag::Generic { ell: lu, .. }, ClassTag::Generic { ell: ll, .. }) = (b.u, b.lam) else {
                unreachable!()
            };
            let lam = b.lam_class.ok_or_else(|| Error::InvalidInput("missing class of λ".into()))?;
            let g = Rational::from_integer(gcd(lu, ll).into());
            let y = if case == TwistCase::SameTwoPower { g } else { g / Rational::from_integer(2.into()) };
            let per_cycle = (0..=b.nu).map(|a| phi(a, lam, &y, b.q)).collect::<Result<Vec<_>>>()?;
            FactorWeight { per_cycle: Some(per_cycle), ..FactorWeight::one() }
        }
        TwistCase::PmGeneric => match (b.u, b.lam) {
            (ClassTag::Pm(Sign::Minus), ClassTag::Generic { ell, .. }) => {
                let qe = b.q.pow(ell) + 1;
                FactorWeight::constant(sign_pow(b.nu as u64 * (qe / 2)))
            }
            _ => FactorWeight::one(),
        },
        TwistCase::GenericPm => match (b.u, b.lam) {
            (ClassTag::Generic { ell, .. }, ClassTag::Pm(Sign::Minus)) => {
                let qe = b.q.pow(ell) + 1;
                FactorWeight::constant(sign_pow(b.nu as u64 * (qe / 2)))
            }
            _ => FactorWeight::one(),
        },
    })
}

/// The function χ^δ_{[u],[λ]} on the block group of rank ν.
pub fn twist_class_function(case: TwistCase, b: &BlockData) -> Result<ClassFunction> {
    let actual = twist_case(b.u, b.lam);
    if actual != case {
        return Err(Error::CaseMismatch(format!("block is {actual:?}, not {case:?}")));
    }
    let shape = GroupShape(vec![Factor { kind: block_kind(b.u, b.lam), rank: b.nu }]);
    ClassFunction::trivial(&shape).twist(&[case_weight(case, b)?])
}

/// Exponents E(δ, ε′) of χ^δ_{ε′,ν} in χ_{cusp,ν}, δ = ′ (true) or ″.
pub fn cusp_exponent(cusp: &CuspidalDatum, prime: bool, target: Sign) -> u64 {
    let e_i = ((cusp.i(cusp.eps_i) - 1) / 2) as u64;
    let e_p = ((cusp.i(cusp.eps_p) - 1) / 2) as u64;
    let z = cusp.zeta(cusp.eps_p).bit();
    let minus = target.is_minus() as u64;
    if prime {
        e_i + z + minus * cusp.eps_i.bit()
    } else {
        e_p + minus * cusp.eps_p.bit()
    }
}

/// c_cusp(g_s).
pub fn c_cusp(gs: &SemisimpleClass, cusp: &CuspidalDatum) -> Sign {
    let e_i = ((cusp.i(cusp.eps_i) - 1) / 2) as u64;
    let e_p = ((cusp.i(cusp.eps_p) - 1) / 2) as u64;
    let ep = gs.plus.eta_prime * gs.minus.eta_prime;
    let es = gs.plus.eta_second * gs.minus.eta_second;
    let pow = |s: Sign, e: u64| if e % 2 == 0 { Sign::Plus } else { s };
    let mut c = pow(ep, e_i) * pow(es, e_p);
    if cusp.zeta(cusp.eps_p).is_minus() {
        c = c * ep;
    }
    if cusp.eps_i.is_minus() {
        c = c * gs.minus.eta_prime;
    }
    if cusp.eps_p.is_minus() {
        c = c * gs.minus.eta_second;
    }
    c
}

/// One block of a ν-matrix, in the factor order used by loc.
#[derive(Clone, Copy, Debug)]
struct Block {
    row: usize,
    col: usize,
    prime: bool,
    nu: u32,
}

fn blocks_of(nu: &NuMatrix) -> Vec<Block> {
    let mut out = Vec::new();
    for (d, prime) in [(0, true), (1, false)] {
        for r in 0..nu.rows.len() {
            for c in 0..nu.cols.len() {
                let v = nu.get(r, c)[d];
                if v > 0 {
                    out.push(Block { row: r, col: c, prime, nu: v });
                }
            }
        }
    }
    out
}

fn block_shape(nu: &NuMatrix, blocks: &[Block]) -> GroupShape {
    GroupShape(
        blocks
            .iter()
            .map(|b| Factor { kind: block_kind(nu.rows[b.row], nu.cols[b.col]), rank: b.nu })
            .collect(),
    )
}

/// χ_{cusp,ν} as per-block weights.
fn cusp_weights(cusp: &CuspidalDatum, nu: &NuMatrix, blocks: &[Block]) -> Vec<FactorWeight> {
    blocks
        .iter()
        .map(|b| match nu.cols[b.col] {
            ClassTag::Pm(target) => {
                let odd = cusp_exponent(cusp, b.prime, target) % 2 == 1;
                match nu.rows[b.row] {
                    ClassTag::Pm(_) if odd => FactorWeight::sgn_cd(),
                    ClassTag::Generic { .. } if odd => FactorWeight::constant(CycloScalar::sign(b.nu as u64)),
                    _ => FactorWeight::one(),
                }
            }
            ClassTag::Generic { .. } => FactorWeight::one(),
        })
        .collect()
}

/// Value of χ_{cusp,ν} at a class of the block group of ν.
pub fn chi_cusp(cusp: &CuspidalDatum, nu: &NuMatrix, w: &[FactorClass]) -> Result<CycloScalar> {
    let blocks = blocks_of(nu);
    if w.len() != blocks.len() {
        return Err(Error::SizeMismatch(format!("{} labels for {} blocks", w.len(), blocks.len())));
    }
    Ok(cusp_weights(cusp, nu, &blocks)
        .iter()
        .zip(w)
        .fold(CycloScalar::one(), |acc, (wt, c)| &acc * &wt.value(c)))
}

/// loc_{g_s} for the cuspidal datum `cusp` (the datum the χ-side element is
/// relative to). Returns an element on [`gs_layout`].
pub fn loc(chi: &TameCharacter, gs: &SemisimpleClass, cusp: &CuspidalDatum, el: &GradedElement) -> Result<GradedElement> {
    if chi.q != gs.q {
        return Err(Error::InvalidInput("χ and g_s use different q".into()));
    }
    let cl = chi_layout(chi, cusp);
    if el.layout() != &cl {
        return Err(Error::ShapeError("element does not live on the layout of χ".into()));
    }
    let gl = gs_layout(gs, cusp);
    let mut out = GradedElement::zero(&gl);
    if !cl.valid || !gl.valid {
        return Ok(out);
    }
    let c = CycloScalar::from_int(c_cusp(gs, cusp).to_i64());
    let col_tags: Vec<ClassTag> = gl.classes.iter().map(|x| x.tag).collect();
    let caps: Vec<u32> = gl.classes.iter().map(|x| x.total).collect();
    let gs_classes: Vec<Option<&EigenClass>> = gl
        .classes
        .iter()
        .map(|x| match x.tag {
            ClassTag::Generic { rep, .. } => gs.classes.iter().map(|g| &g.class).find(|k| k.rep == rep),
            ClassTag::Pm(_) => None,
        })
        .collect();
    for (key, f) in el.components() {
        if f.is_zero() {
            continue;
        }
        let src_shape = cl.shape(key);
        let rows: Vec<(ClassTag, (u32, u32))> = cl.classes.iter().zip(key).map(|(x, &k)| (x.tag, k)).collect();
        for nu in nu_with_rows(&rows, &col_tags, Some(&caps)) {
            let target: SplitKey = nu.col_sums();
            let tgt_shape = gl.shape(&target);
            let blocks = blocks_of(&nu);
            let shape = block_shape(&nu, &blocks);
            let mut to_chi = Vec::new();
            let mut to_gs = Vec::new();
            let mut weights = Vec::new();
            for b in &blocks {
                let (u, lam) = (nu.rows[b.row], nu.cols[b.col]);
                let (tc, tg) = block_transforms(u, lam);
                let d = usize::from(!b.prime);
                to_chi.push((2 * b.row + d, tc));
                to_gs.push((2 * b.col + d, tg));
                let data = BlockData { u, lam, lam_class: gs_classes[b.col], q: chi.q, nu: b.nu };
                weights.push(case_weight(twist_case(u, lam), &data)?);
            }
            let weights: Vec<FactorWeight> = weights
                .iter()
                .zip(cusp_weights(cusp, &nu, &blocks))
                .map(|(a, b)| a.combine(&b))
                .collect();
            let res = restrict_along(&ClassMap::new(shape.clone(), src_shape.clone(), to_chi)?, f)?;
            let tw = res.twist(&weights)?;
            let ind = induce_along(&ClassMap::new(shape, tgt_shape, to_gs)?, &tw)?;
            out.add_component(target, ind.scale(&c))?;
        }
    }
    Ok(out)
}

/// X_{ε′}: sgn_CD on the ″ factor of ε′, then exchange of the ′ and ″
/// factors of ε′.
pub fn x_sign(el: &GradedElement, e: Sign) -> Result<GradedElement> {
    let pos = el
        .layout()
        .position(ClassTag::Pm(e))
        .ok_or_else(|| Error::ShapeError(format!("layout has no class {e}1")))?;
    el.twist_second_factor(pos)?.swap_factors(pos)
}

/// The signs ε′ whose X_{ε′} enters X_cusp.
pub fn x_cusp_signs(cusp: &CuspidalDatum) -> Vec<Sign> {
    let half = ((cusp.i_plus + cusp.i_minus) / 2) as u64;
    let zeta_minus = cusp.zeta(cusp.eps_p).is_minus();
    match (cusp.eps_i == cusp.eps_p, zeta_minus) {
        (true, false) => vec![],
        (true, true) => vec![Sign::Plus, Sign::Minus],
        (false, true) => vec![Sign::pow_minus_one(1 + half)],
        (false, false) => vec![Sign::pow_minus_one(half)],
    }
}

pub fn x_cusp(cusp: &CuspidalDatum, el: &GradedElement) -> Result<GradedElement> {
    let mut out = el.clone();
    for e in x_cusp_signs(cusp) {
        out = x_sign(&out, e)?;
    }
    Ok(out)
}

/// ρ∘ι on the g_s side: (−1)^{Σ m^{″″}} on classes ≠ ±1 and sgn_CD on the
/// ″″ pieces at ±1.
pub fn rho_iota_gs(el: &GradedElement) -> Result<GradedElement> {
    let rules: Vec<QuadRule> = el
        .layout()
        .classes
        .iter()
        .map(|c| match c.tag {
            ClassTag::Generic { .. } => QuadRule::Sym,
            ClassTag::Pm(_) => QuadRule::semisimple_weyl(),
        })
        .collect();
    rho_iota_graded(el, &rules)
}

/// Multiplies the ″ factor at ε by sgn_CD for every ε selected by `pick`.
fn twist_pm_second(el: &GradedElement, pick: impl Fn(Sign) -> bool) -> Result<GradedElement> {
    let mut out = el.clone();
    for e in Sign::BOTH {
        if pick(e) {
            let pos = out
                .layout()
                .position(ClassTag::Pm(e))
                .ok_or_else(|| Error::ShapeError(format!("layout has no class {e}1")))?;
            out = out.twist_second_factor(pos)?;
        }
    }
    Ok(out)
}

/// The map ˜: identity on Weyl-group data, retagged to ζ̃, multiplied by χ̃
/// on the ″ factor of each ε.
pub fn tilde(cusp: &CuspidalDatum, el: &GradedElement) -> Result<GradedElement> {
    twist_pm_second(el, |e| cusp.chi_tilde_is_sgn(e))
}

/// The normalization Λ: sgn_CD on the ″ factor of each ε with ζ_ε = −.
pub fn normalization(cusp: &CuspidalDatum, el: &GradedElement) -> Result<GradedElement> {
    twist_pm_second(el, |e| cusp.zeta(e).is_minus())
}

#[derive(Clone, Debug, Serialize)]
pub struct CleReport {
    pub lhs: GradedElement,
    pub rhs: GradedElement,
    pub equal: bool,
    /// Same comparison without the normalization Λ on the upper route.
    pub equal_unnormalized: bool,
}

/// Evaluates both routes of the commutation diagram:
/// lhs = loc(Λ · ρ∘ι(el)) and rhs = ρ∘ι(X_cusp(loc(˜el))), both
/// localizations taken for the retagged datum.
pub fn verify_cle_diagram(
    chi: &TameCharacter,
    gs: &SemisimpleClass,
    cusp: &CuspidalDatum,
    el: &GradedElement,
) -> Result<CleReport> {
    let ct = cusp.tilde();
    let top = rho_iota_full(chi, cusp, el)?;
    let lhs = loc(chi, gs, &ct, &normalization(cusp, &top)?)?;
    let lhs_raw = loc(chi, gs, &ct, &top)?;
    let rhs = rho_iota_gs(&x_cusp(cusp, &loc(chi, gs, &ct, &tilde(cusp, el)?)?)?)?;
    Ok(CleReport { equal: lhs == rhs, equal_unnormalized: lhs_raw == rhs, lhs, rhs })
}
