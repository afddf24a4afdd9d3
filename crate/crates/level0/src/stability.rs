//! Stability: the trichotomy on (n̲, cusp) pairs and on parameters, the
//! instability triggers of localized terms, and the k-translation between
//! the two.

use serde::Serialize;

use crate::error::Result;
use crate::graded::ClassTag;
use crate::params::{ip_zeta_from_k, springer_lusztig_data, DiscreteParameter, SignCharacter, SpLData};
use crate::sign::Sign;
use crate::symbols::{cusp_datum, CuspidalDatum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityClass {
    Stable,
    Semistable,
    Instable,
}

impl std::fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StabilityClass::Stable => "stable",
            StabilityClass::Semistable => "semistable",
            StabilityClass::Instable => "instable",
        })
    }
}

/// The cusp part shared by both lists: ε_I = ε_P, ζ₊ = ζ₋ = `zeta` and
/// |I_ε − P_ε| = 1 for both ε.
fn cusp_clause(cusp: &CuspidalDatum, zeta: Sign) -> bool {
    cusp.eps_i == cusp.eps_p
        && Sign::BOTH.iter().all(|&e| cusp.zeta(e) == zeta && cusp.i(e).abs_diff(cusp.p(e)) == 1)
}

/// Classifies a pair (n̲, cusp); `n_data` lists (n′, n″) for every class,
/// ±1 included.
pub fn classify_pair(n_data: &[(u32, u32)], cusp: &CuspidalDatum) -> StabilityClass {
    if cusp_clause(cusp, Sign::Plus) && n_data.iter().all(|&(_, b)| b == 0) {
        StabilityClass::Stable
    } else if cusp_clause(cusp, Sign::Minus) && n_data.iter().all(|&(a, _)| a == 0) {
        StabilityClass::Semistable
    } else {
        StabilityClass::Instable
    }
}

/// The four clauses of the parameter-level classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParameterClauses {
    /// ε ≡ +1 on every block of a class other than ±1.
    pub eps_plus_off_pm: bool,
    /// U_{±1,−} = ∅.
    pub pm_minus_empty: bool,
    /// ε ≡ −1 on every block of a class other than ±1.
    pub eps_minus_off_pm: bool,
    /// U_{±1,+} = ∅.
    pub pm_plus_empty: bool,
}

pub fn parameter_clauses(psi: &DiscreteParameter, eps: &SignCharacter) -> ParameterClauses {
    let blocks = psi.blocks();
    let eps_const = |s: Sign| {
        blocks
            .iter()
            .zip(&eps.0)
            .filter(|(b, _)| !psi.chi.classes[b.class_index].is_pm())
            .all(|(_, &e)| e == s)
    };
    let pm_empty = |s: Sign| {
        psi.chi
            .classes
            .iter()
            .zip(&psi.comps)
            .filter(|(c, _)| c.is_pm())
            .all(|(_, comp)| comp.orbit(s).is_empty())
    };
    ParameterClauses {
        eps_plus_off_pm: eps_const(Sign::Plus),
        pm_minus_empty: pm_empty(Sign::Minus),
        eps_minus_off_pm: eps_const(Sign::Minus),
        pm_plus_empty: pm_empty(Sign::Plus),
    }
}

/// Classifies (ψ, ε) directly: stable iff ε is trivial on the classes
/// other than ±1 and U_{±1,−} = ∅; semistable iff ε ≡ −1 there and
/// U_{±1,+} = ∅. When both hold (the empty parameter) the answer is stable.
pub fn classify_parameter(psi: &DiscreteParameter, eps: &SignCharacter) -> StabilityClass {
    let c = parameter_clauses(psi, eps);
    if c.eps_plus_off_pm && c.pm_minus_empty {
        StabilityClass::Stable
    } else if c.eps_minus_off_pm && c.pm_plus_empty {
        StabilityClass::Semistable
    } else {
        StabilityClass::Instable
    }
}

/// The pair (n̲, cusp) attached to Springer–Lusztig data.
pub fn pair_of(spl: &SpLData) -> Result<(Vec<(u32, u32)>, CuspidalDatum)> {
    let n = spl.classes.iter().map(|c| (c.n_prime, c.n_second)).collect();
    let (p, m) = (spl.pm(Sign::Plus), spl.pm(Sign::Minus));
    Ok((n, cusp_datum([p.i, m.i], [p.p, m.p], [p.zeta, m.zeta])?))
}

/// Both classifications of (ψ, ε), the second through the Springer–Lusztig
/// data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub parameter: StabilityClass,
    pub pair: StabilityClass,
}

impl Classification {
    pub fn consistent(&self) -> bool {
        self.parameter == self.pair
    }
}

pub fn classify_both(psi: &DiscreteParameter, eps: &SignCharacter) -> Result<Classification> {
    let (n, cusp) = pair_of(&springer_lusztig_data(psi, eps)?)?;
    Ok(Classification { parameter: classify_parameter(psi, eps), pair: classify_pair(&n, &cusp) })
}

/// Multiplicities (m′, m″) at the classes of g_s, ±1 included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitData {
    pub classes: Vec<(ClassTag, (u32, u32))>,
}

/// Which instability triggers fire for a localized term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstabilityReport {
    /// Classes with m′m″ ≠ 0, read as M′M″ ≠ 0 at ±1.
    pub mixed_split: Vec<ClassTag>,
    /// Signs ε with M′(ε) or M″(ε) not an even nonnegative integer.
    pub vanishing: Vec<Sign>,
    /// Whether (*)_cusp fails.
    pub cusp_window: bool,
    /// ζ₊ζ₋ = − with P₊P₋ ≠ 0.
    pub zeta_gap: bool,
    /// Signs ε with M′(ε) = 0, M″(ε) ≠ 0 and |r|′_ε |r|″_ε ≠ 0.
    pub degenerate_prime: Vec<Sign>,
}

impl InstabilityReport {
    pub fn fired(&self) -> bool {
        !self.mixed_split.is_empty() || self.cusp_window || self.zeta_gap || !self.degenerate_prime.is_empty()
    }
}

/// M′(ε) = m′(ε) − |r|′_ε² and M″(ε) = m″(ε) − |r|″_ε², for the retagged datum.
fn reduced(cusp: &CuspidalDatum, e: Sign, (a, b): (u32, u32)) -> (i64, i64) {
    let ct = cusp.tilde();
    let r1 = ct.r(true, e) as i64;
    let r2 = ct.r(false, e) as i64;
    (a as i64 - r1 * r1, b as i64 - r2 * r2)
}

pub fn instability_report(data: &SplitData, cusp: &CuspidalDatum) -> InstabilityReport {
    let mut rep = InstabilityReport {
        mixed_split: Vec::new(),
        vanishing: Vec::new(),
        cusp_window: false,
        zeta_gap: false,
        degenerate_prime: Vec::new(),
    };
    for &(tag, m) in &data.classes {
        match tag {
            ClassTag::Generic { .. } => {
                if m.0 * m.1 != 0 {
                    rep.mixed_split.push(tag);
                }
            }
            ClassTag::Pm(e) => {
                let (a, b) = reduced(cusp, e, m);
                if a * b != 0 {
                    rep.mixed_split.push(tag);
                }
                if a < 0 || b < 0 || a % 2 != 0 || b % 2 != 0 {
                    rep.vanishing.push(e);
                }
                let ct = cusp.tilde();
                if a == 0 && b != 0 && ct.r(true, e) * ct.r(false, e) != 0 {
                    rep.degenerate_prime.push(e);
                }
            }
        }
    }
    let d = |e: Sign| cusp.i(e) as i64 - cusp.p(if e == cusp.eps_i { cusp.eps_p } else { -cusp.eps_p }) as i64;
    rep.cusp_window = d(cusp.eps_i).abs() != 1 || d(-cusp.eps_i).abs() != 1;
    rep.zeta_gap = cusp.zeta_plus != cusp.zeta_minus && cusp.p_plus * cusp.p_minus != 0;
    rep
}

/// The two equivalences relating (I, P, ζ) to the integers k_{u,ε′}, for
/// the quadruple k[u][ε′] with u, ε′ ∈ (+, −).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslationReport {
    /// k_{u,ζ_u} = (I+P−1)/2 and k_{u,−ζ_u} = (|I−P|−1)/2 for both u.
    pub k_identities: bool,
    /// (∀u: |I_u−P_u| = 1 ∧ ζ_u = +) ⇔ (∀u: k_{u,−} = 0).
    pub plus_equivalence: bool,
    /// (∀u: |I_u−P_u| = 1 ∧ ζ_u = −) ⇔ (∀u: k_{u,+} = 0).
    pub minus_equivalence: bool,
}

pub fn translation_check(k: [[u32; 2]; 2]) -> TranslationReport {
    let data: Vec<(u32, u32, Sign)> = k.iter().map(|&[kp, km]| ip_zeta_from_k(kp, km)).collect();
    let k_identities = k.iter().zip(&data).all(|(&[kp, km], &(i, p, z))| {
        let (kz, kmz) = if z.is_plus() { (kp, km) } else { (km, kp) };
        kz == (i + p - 1) / 2 && kmz == (i.abs_diff(p) - 1) / 2
    });
    let side = |s: Sign| {
        let lhs = data.iter().all(|&(i, p, z)| i.abs_diff(p) == 1 && z == s);
        let idx = usize::from(s.is_plus());
        let rhs = k.iter().all(|pair| pair[idx] == 0);
        lhs == rhs
    };
    TranslationReport { k_identities, plus_equivalence: side(Sign::Plus), minus_equivalence: side(Sign::Minus) }
}
