//! Symbols with signed defects and cuspidal data (I, P, ζ).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{rat, Rational};
use crate::sign::Sign;

/// An ordered pair of strictly increasing rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symbol {
    pub row_a: Vec<u32>,
    pub row_b: Vec<u32>,
}

impl Symbol {
    pub fn new(row_a: Vec<u32>, row_b: Vec<u32>) -> Result<Self> {
        for row in [&row_a, &row_b] {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidInput(format!("row {row:?} is not strictly increasing")));
            }
        }
        Ok(Symbol { row_a, row_b })
    }

    pub fn swapped(&self) -> Symbol {
        Symbol { row_a: self.row_b.clone(), row_b: self.row_a.clone() }
    }

    /// Σ entries − ⌊((|A|+|B|−1)/2)²⌋.
    ///
    /// Provided for completeness; nothing downstream depends on it.
    pub fn rank(&self) -> i64 {
        let total: i64 = self.row_a.iter().chain(&self.row_b).map(|&x| x as i64).sum();
        let len = (self.row_a.len() + self.row_b.len()) as i64;
        let half = (len - 1).div_euclid(2);
        total - half * half
    }
}

/// |row A| − |row B|, possibly negative.
pub fn defect(s: &Symbol) -> i64 {
    s.row_a.len() as i64 - s.row_b.len() as i64
}

/// Rank of the Weyl group of type C attached to a symbol of the given
/// defect and rank: n − h(h+1) for defect 2h+1, n − h² for defect ±2h.
/// `None` when negative.
pub fn weyl_rank(defect: i64, rank: u32) -> Option<u32> {
    let cusp = if defect.rem_euclid(2) == 1 {
        let h = (defect - 1).div_euclid(2);
        h * (h + 1)
    } else {
        let h = defect.abs() / 2;
        h * h
    };
    let n = rank as i64 - cusp;
    u32::try_from(n).ok()
}

/// The two (I, P, ζ) triples with the derived signs ε_I, ε_P and the
/// quadruple |r| = (|r|′₊, |r|″₊, |r|′₋, |r|″₋).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CuspidalDatum {
    pub i_plus: u32,
    pub i_minus: u32,
    pub p_plus: u32,
    pub p_minus: u32,
    pub zeta_plus: Sign,
    pub zeta_minus: Sign,
    pub eps_i: Sign,
    pub eps_p: Sign,
    pub rq: [u32; 4],
}

fn leading_sign(plus: u32, minus: u32) -> Option<Sign> {
    match plus.cmp(&minus) {
        std::cmp::Ordering::Greater => Some(Sign::Plus),
        std::cmp::Ordering::Less => Some(Sign::Minus),
        std::cmp::Ordering::Equal => None,
    }
}

/// Validates parities only; the P = 0 convention is not enforced.
fn check_parities(i: [u32; 2], p: [u32; 2]) -> Result<()> {
    for v in i {
        if v % 2 == 0 {
            return Err(Error::ParityError(format!("I = {v} must be odd")));
        }
    }
    for v in p {
        if v % 2 == 1 {
            return Err(Error::ParityError(format!("P = {v} must be even")));
        }
    }
    Ok(())
}

/// Builds the datum, enforcing ζ_ε = (−1)^{(I_ε−1)/2} whenever P_ε = 0.
pub fn cusp_datum(i: [u32; 2], p: [u32; 2], zeta: [Sign; 2]) -> Result<CuspidalDatum> {
    check_parities(i, p)?;
    for k in 0..2 {
        let forced = Sign::pow_minus_one(((i[k] - 1) / 2) as u64);
        if p[k] == 0 && zeta[k] != forced {
            return Err(Error::ConventionViolation(format!(
                "P = 0 forces ζ = {forced} for I = {}",
                i[k]
            )));
        }
    }
    Ok(derive_datum(i, p, zeta))
}

/// Builds the datum without the P = 0 convention (retagged data such as the
/// output of ρ∘ι on ±1 classes may violate it).
pub fn cusp_datum_unchecked(i: [u32; 2], p: [u32; 2], zeta: [Sign; 2]) -> Result<CuspidalDatum> {
    check_parities(i, p)?;
    Ok(derive_datum(i, p, zeta))
}

fn derive_datum(i: [u32; 2], p: [u32; 2], zeta: [Sign; 2]) -> CuspidalDatum {
    let (eps_i, eps_p) = match (leading_sign(i[0], i[1]), leading_sign(p[0], p[1])) {
        (Some(a), Some(b)) => (a, b),
        (Some(a), None) => (a, a),
        (None, Some(b)) => (b, b),
        (None, None) => (Sign::Plus, Sign::Plus),
    };
    let r_sum = (i[0] + i[1]) / 2;
    let r_diff = i[0].abs_diff(i[1]) / 2;
    let (r1p, r1m) = if r_sum % 2 == 1 { (r_sum, r_diff) } else { (r_diff, r_sum) };
    let big = (p[0] + p[1]) / 2;
    let small = p[0].abs_diff(p[1]) / 2;
    let plus_is_big = zeta[0] * zeta[1] == Sign::pow_minus_one(1 + r_sum as u64);
    let (r2p, r2m) = if plus_is_big { (big, small) } else { (small, big) };
    CuspidalDatum {
        i_plus: i[0],
        i_minus: i[1],
        p_plus: p[0],
        p_minus: p[1],
        zeta_plus: zeta[0],
        zeta_minus: zeta[1],
        eps_i,
        eps_p,
        rq: [r1p, r2p, r1m, r2m],
    }
}

impl CuspidalDatum {
    pub fn i(&self, e: Sign) -> u32 {
        match e {
            Sign::Plus => self.i_plus,
            Sign::Minus => self.i_minus,
        }
    }

    pub fn p(&self, e: Sign) -> u32 {
        match e {
            Sign::Plus => self.p_plus,
            Sign::Minus => self.p_minus,
        }
    }

    pub fn zeta(&self, e: Sign) -> Sign {
        match e {
            Sign::Plus => self.zeta_plus,
            Sign::Minus => self.zeta_minus,
        }
    }

    /// |r|′_{ε′} for `prime`, |r|″_{ε′} otherwise.
    pub fn r(&self, prime: bool, e: Sign) -> u32 {
        match (prime, e) {
            (true, Sign::Plus) => self.rq[0],
            (false, Sign::Plus) => self.rq[1],
            (true, Sign::Minus) => self.rq[2],
            (false, Sign::Minus) => self.rq[3],
        }
    }

    /// ζ̃_ε = (−1)^{(I_ε−1)/2} ζ_ε.
    pub fn zeta_tilde(&self, e: Sign) -> Sign {
        Sign::pow_minus_one(((self.i(e) - 1) / 2) as u64) * self.zeta(e)
    }

    /// True when χ̃ on the ε side is sgn_CD, i.e. when I_ε < P_ε.
    pub fn chi_tilde_is_sgn(&self, e: Sign) -> bool {
        self.i(e) < self.p(e)
    }

    /// The datum with ζ replaced by ζ̃, without the P = 0 convention.
    pub fn tilde(&self) -> CuspidalDatum {
        derive_datum(
            [self.i_plus, self.i_minus],
            [self.p_plus, self.p_minus],
            [self.zeta_tilde(Sign::Plus), self.zeta_tilde(Sign::Minus)],
        )
    }

    /// Whether the P = 0 convention holds on both sides.
    pub fn satisfies_convention(&self) -> bool {
        Sign::BOTH.iter().all(|&e| {
            self.p(e) != 0 || self.zeta(e) == Sign::pow_minus_one(((self.i(e) - 1) / 2) as u64)
        })
    }

    /// Weyl rank of the ′ (odd defect) and ″ (even defect) groups on the
    /// ε side for a multiplicity m(ε): m(ε)/2 − (I²+P²−1)/4 split as given.
    pub fn weyl_total(&self, e: Sign, m: u32) -> Option<u32> {
        let i = self.i(e) as i64;
        let p = self.p(e) as i64;
        let num = 2 * m as i64 - (i * i + p * p - 1);
        if num < 0 || num % 4 != 0 {
            None
        } else {
            Some((num / 4) as u32)
        }
    }

    /// All data with I ≤ `max_i` and P ≤ `max_p` satisfying the convention,
    /// in lexicographic order of (I₊, I₋, P₊, P₋, ζ₊, ζ₋).
    pub fn enumerate(max_i: u32, max_p: u32) -> Vec<CuspidalDatum> {
        let mut out = Vec::new();
        for ip in (1..=max_i).step_by(2) {
            for im in (1..=max_i).step_by(2) {
                for pp in (0..=max_p).step_by(2) {
                    for pm in (0..=max_p).step_by(2) {
                        for zp in Sign::BOTH {
                            for zm in Sign::BOTH {
                                if let Ok(c) = cusp_datum([ip, im], [pp, pm], [zp, zm]) {
                                    out.push(c);
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Outcome of [`check_rank_identity`], one flag per reading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankIdentityReport {
    /// 2N′(ε)+2N″(ε)+(I_ε²+P_ε²)/2 = m(ε), for ε = +, −.
    pub literal: [bool; 2],
    /// 2N′(ε)+2N″(ε)+(I_ε²+P_ε²−1)/2 = m(ε), for ε = +, −.
    pub corrected: [bool; 2],
    /// Odd plus even summed identities:
    /// 2ΣN′ + |r|′₊² + |r|′₋² + 2ΣN″ + |r|″₊² + |r|″₋² = m(+1)+m(−1)+1.
    pub summed: bool,
    /// The same with the even identity read with N′ in place of N″.
    pub summed_even_as_printed: bool,
}

impl RankIdentityReport {
    pub fn holds(&self) -> bool {
        self.literal.iter().all(|&b| b) && self.summed
    }
}

/// `n_prime` and `n_second` are indexed [+, −].
pub fn check_rank_identity(
    cusp: &CuspidalDatum,
    n_prime: [u32; 2],
    n_second: [u32; 2],
    m: [u32; 2],
) -> RankIdentityReport {
    let mut literal = [false; 2];
    let mut corrected = [false; 2];
    for (k, e) in Sign::BOTH.into_iter().enumerate() {
        let i = cusp.i(e) as i64;
        let p = cusp.p(e) as i64;
        let base = rat(2 * (n_prime[k] + n_second[k]) as i64, 1);
        let lhs_lit = &base + rat(i * i + p * p, 2);
        let lhs_cor = &base + rat(i * i + p * p - 1, 2);
        let target: Rational = rat(m[k] as i64, 1);
        literal[k] = lhs_lit == target;
        corrected[k] = lhs_cor == target;
    }
    let sq = |x: u32| (x as i64) * (x as i64);
    let np: i64 = n_prime.iter().map(|&x| x as i64).sum();
    let ns: i64 = n_second.iter().map(|&x| x as i64).sum();
    let odd_r = sq(cusp.rq[0]) + sq(cusp.rq[2]);
    let even_r = sq(cusp.rq[1]) + sq(cusp.rq[3]);
    let target = m[0] as i64 + m[1] as i64 + 1;
    RankIdentityReport {
        literal,
        corrected,
        summed: 2 * np + odd_r + 2 * ns + even_r == target,
        summed_even_as_printed: 2 * np + odd_r + 2 * np + even_r == target,
    }
}
