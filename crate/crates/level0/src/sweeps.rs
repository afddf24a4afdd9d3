//! Parallel sweeps over small instances.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{GradedElement, SplitKey};
use crate::localization::{gs_layout, verify_cle_diagram, PmClassData, SemisimpleClass};
use crate::orbits::Mode;
use crate::params::{enumerate_parameters, enumerate_sign_characters, DiscreteParameter, SignCharacter};
use crate::rho_iota::{chi_layout, rho_iota_sym, rho_iota_sym_direct, SplitPair};
use crate::scalars::CycloScalar;
use crate::sign::Sign;
use crate::stability::{classify_both, translation_check};
use crate::symbols::CuspidalDatum;
use crate::tame::{build_tame_character, enumerate_tame_characters, TameCharacter};
use crate::weylrep::{
    irr_character, label_to_string, linear_char_value, shape_info, ClassFunction, ClassLabel, ClassMap,
    CycleTransform, Factor, FactorClass, GroupShape, LinearChar,
};

/// The common order N and the class representatives ≠ ±1 used for q.
///
/// q = 3: N = 20 with ζ₄, ζ₅, ζ₁₀. q = 5: N = 78 with ζ₃, ζ₆, ζ₁₃.
pub fn eigenvalue_pool(q: u64) -> Result<(u32, Vec<u32>)> {
    match q {
        3 => Ok((20, vec![5, 4, 2])),
        5 => Ok((78, vec![26, 13, 6])),
        _ => Err(Error::Unsupported(format!("no eigenvalue pool for q = {q}"))),
    }
}

/// Multiplicity vectors with at most `max_classes` nonzero entries and
/// Σ mult·weight = target.
fn small_multisets(weights: &[u32], target: u32, max_classes: usize) -> Vec<Vec<u32>> {
    fn rec(i: usize, rest: u32, w: &[u32], left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == w.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let top = if left == 0 { 0 } else { rest / w[i] };
        for m in (0..=top).rev() {
            cur.push(m);
            rec(i + 1, rest - m * w[i], w, left - usize::from(m > 0), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, target, weights, max_classes, &mut Vec::new(), &mut out);
    out
}

/// One input of the commutation check.
#[derive(Clone, Debug, Serialize)]
pub struct CleInstance {
    pub chi: TameCharacter,
    pub gs: SemisimpleClass,
    pub cusp: CuspidalDatum,
}

/// All instances with n ≤ `max_n`, at most two classes on each side, and
/// cuspidal data with I ≤ 3, P ≤ 2, for which both layouts are nonzero.
pub fn cle_instances(q: u64, max_n: u32) -> Result<Vec<CleInstance>> {
    let (order, pool) = eigenvalue_pool(q)?;
    let half = order / 2;
    let classes = crate::tame::build_classes(q, order, &pool.iter().map(|&r| (r, 1)).collect::<Vec<_>>())?;
    let ells: Vec<u32> = pool
        .iter()
        .map(|r| classes.iter().find(|c| c.members.contains(r)).map(|c| c.ell).unwrap_or(1))
        .collect();
    let mut weights = vec![1, 1];
    weights.extend(ells.iter().map(|l| 2 * l));
    let cusps = CuspidalDatum::enumerate(3, 2);
    let mut out = Vec::new();
    for n in 0..=max_n {
        for cm in small_multisets(&weights, 2 * n, 2) {
            let mut seeds = Vec::new();
            for (i, &m) in cm.iter().enumerate().filter(|(_, &m)| m > 0) {
                seeds.push((if i == 0 { 0 } else if i == 1 { half } else { pool[i - 2] }, m));
            }
            let chi = build_tame_character(q, order, &seeds)?;
            for gm in small_multisets(&weights, 2 * n + 1, 2) {
                let generic: Vec<(u32, u32)> =
                    gm[2..].iter().zip(&pool).filter(|(&m, _)| m > 0).map(|(&m, &r)| (r, m)).collect();
                let pm = |m: u32| PmClassData { mult: m, ..PmClassData::default() };
                let gs = SemisimpleClass::new(q, order, &generic, &[], pm(gm[0]), pm(gm[1]))?;
                for cusp in &cusps {
                    if chi_layout(&chi, cusp).valid && gs_layout(&gs, &cusp.tilde()).valid {
                        out.push(CleInstance { chi: chi.clone(), gs: gs.clone(), cusp: cusp.clone() });
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CleFailure {
    pub instance: usize,
    pub key: SplitKey,
    pub label: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CleSweepReport {
    pub instances: usize,
    pub elements: usize,
    pub equal: usize,
    pub equal_unnormalized: usize,
    /// Elements whose localization is nonzero.
    pub nonzero: usize,
    /// The first few failures of the normalized comparison.
    pub failures: Vec<CleFailure>,
}

impl CleSweepReport {
    pub fn all_equal(&self) -> bool {
        self.equal == self.elements
    }
}

const MAX_FAILURES: usize = 20;

/// Runs the commutation check on every irreducible character of every
/// component of every instance.
pub fn cle_sweep(instances: &[CleInstance]) -> Result<CleSweepReport> {
    let per: Vec<CleSweepReport> = instances
        .par_iter()
        .enumerate()
        .map(|(idx, inst)| -> Result<CleSweepReport> {
            let layout = chi_layout(&inst.chi, &inst.cusp);
            let mut rep = CleSweepReport { instances: 1, ..Default::default() };
            for key in layout.keys() {
                let shape = layout.shape(&key);
                for lab in shape_info(&shape).labels.iter() {
                    let el = GradedElement::single(&layout, key.clone(), irr_character(&shape, lab)?)?;
                    let r = verify_cle_diagram(&inst.chi, &inst.gs, &inst.cusp, &el)?;
                    rep.elements += 1;
                    rep.equal += usize::from(r.equal);
                    rep.equal_unnormalized += usize::from(r.equal_unnormalized);
                    rep.nonzero += usize::from(!r.lhs.is_zero());
                    if !r.equal && rep.failures.len() < MAX_FAILURES {
                        rep.failures.push(CleFailure { instance: idx, key: key.clone(), label: label_to_string(lab) });
                    }
                }
            }
            Ok(rep)
        })
        .collect::<Result<_>>()?;
    let mut total = CleSweepReport::default();
    for r in per {
        total.instances += r.instances;
        total.elements += r.elements;
        total.equal += r.equal;
        total.equal_unnormalized += r.equal_unnormalized;
        total.nonzero += r.nonzero;
        let room = MAX_FAILURES - total.failures.len();
        total.failures.extend(r.failures.into_iter().take(room));
    }
    Ok(total)
}

/// Outcome of one verification suite.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub failed: usize,
    /// The first few failing cases.
    pub examples: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.into(), ..Default::default() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.examples.len() < MAX_FAILURES {
                self.examples.push(what());
            }
        }
    }

    fn merge(mut self, other: SuiteReport) -> SuiteReport {
        self.checked += other.checked;
        self.failed += other.failed;
        let room = MAX_FAILURES.saturating_sub(self.examples.len());
        self.examples.extend(other.examples.into_iter().take(room));
        self
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

fn odd_support(label: &[FactorClass]) -> bool {
    label.iter().all(|c| c.signed_cycles().all(|(a, _)| a % 2 == 1))
}

/// The quadruple-split formula against the direct composite for every class
/// indicator on S_{m′} × S_{m″}, m ≤ `max_m`; with `odd_only`, only classes
/// whose cycles are all odd.
pub fn mackey_sweep(max_m: u32, odd_only: bool) -> Result<SuiteReport> {
    let cases: Vec<(SplitPair, ClassLabel)> = (0..=max_m)
        .flat_map(SplitPair::all)
        .flat_map(|m0| {
            let shape = GroupShape(vec![Factor::sym(m0.prime), Factor::sym(m0.second)]);
            shape_info(&shape).labels.iter().map(|l| (m0, l.clone())).collect::<Vec<_>>()
        })
        .filter(|(_, l)| !odd_only || odd_support(l))
        .collect();
    let parts: Vec<SuiteReport> = cases
        .par_iter()
        .map(|(m0, lab)| -> Result<SuiteReport> {
            let shape = GroupShape(vec![Factor::sym(m0.prime), Factor::sym(m0.second)]);
            let f = ClassFunction::from_fn(&shape, |l| {
                if l == lab.as_slice() {
                    CycloScalar::one()
                } else {
                    CycloScalar::zero()
                }
            });
            let mut rep = SuiteReport::new("mackey");
            let a = rho_iota_sym(*m0, &f)?;
            let b = rho_iota_sym_direct(*m0, &f)?;
            rep.record(a == b, || format!("{m0:?} at {}", label_to_string(lab)));
            Ok(rep)
        })
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().fold(SuiteReport::new("mackey"), SuiteReport::merge))
}

/// sgn_CD on the image of every odd-cycle class of S_m under the second
/// embedding, against (−1)^m.
pub fn sgn_cd_sweep(max_m: u32) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("sgn_cd");
    for m in 0..=max_m {
        let map = ClassMap::new(
            GroupShape(vec![Factor::sym(m)]),
            GroupShape(vec![Factor::weyl(m)]),
            vec![(0, CycleTransform::SymToWeylParity(1))],
        )?;
        for lab in shape_info(&GroupShape(vec![Factor::sym(m)])).labels.iter().filter(|l| odd_support(l)) {
            let img = map.apply(lab);
            let v = linear_char_value(LinearChar::SgnCd, &img[0])?;
            rep.record(v == Sign::pow_minus_one(m as u64).to_i64(), || label_to_string(lab));
        }
    }
    Ok(rep)
}

/// The k-translation for every quadruple k_{u,ε′} ≤ `max_k`, one report
/// per identity: the (I, P, ζ) formulas, the + equivalence and the −
/// equivalence.
pub fn k_identity_sweep(max_k: u32) -> [SuiteReport; 3] {
    let mut out = [SuiteReport::new("k_identities"), SuiteReport::new("plus_equivalence"), SuiteReport::new("minus_equivalence")];
    for a in 0..=max_k {
        for b in 0..=max_k {
            for c in 0..=max_k {
                for d in 0..=max_k {
                    let k = [[a, b], [c, d]];
                    let r = translation_check(k);
                    out[0].record(r.k_identities, || format!("{k:?}"));
                    out[1].record(r.plus_equivalence, || format!("{k:?}"));
                    out[2].record(r.minus_equivalence, || format!("{k:?}"));
                }
            }
        }
    }
    out
}

/// All discrete (ψ, ε) for the given q, orders N and 2n ≤ `max_two_n`.
pub fn discrete_parameters(q: u64, orders: &[u32], max_two_n: u32) -> Result<Vec<(DiscreteParameter, SignCharacter)>> {
    let mut out = Vec::new();
    for &order in orders {
        for two_n in (0..=max_two_n).step_by(2) {
            for chi in enumerate_tame_characters(q, two_n, order)? {
                for psi in enumerate_parameters(&chi, Mode::Discrete) {
                    for eps in enumerate_sign_characters(&psi) {
                        out.push((psi.clone(), eps));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// classify_parameter against classify_pair through the Springer–Lusztig
/// data.
pub fn classification_sweep(q: u64, orders: &[u32], max_two_n: u32) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("classification");
    for (psi, eps) in discrete_parameters(q, orders, max_two_n)? {
        let c = classify_both(&psi, &eps)?;
        rep.record(c.consistent(), || {
            let comps: Vec<String> = psi
                .comps
                .iter()
                .map(|k| format!("{}:{:?}/{:?}", k.rep, k.plus.blocks(), k.minus.blocks()))
                .collect();
            format!(
                "N={} {} eps={:?}: parameter {} pair {}",
                psi.chi.order,
                comps.join(" "),
                eps.0.iter().map(|s| s.to_string()).collect::<String>(),
                c.parameter,
                c.pair
            )
        });
    }
    Ok(rep)
}
