//! Independent oracles for the acceptance suite. Nothing here calls into
//! level0 beyond plain data types.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;
use num_traits::{One, Zero};

/// All partitions of `n`, parts in any order, produced by raw recursion and
/// then sorted descending.
pub fn raw_partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            acc.push(p);
            go(n - p, p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn distinct(p: &[u32]) -> bool {
    p.windows(2).all(|w| w[0] != w[1])
}

/// ⟨q⟩-orbits of exponents mod `n` that contain their inverse, as
/// (least member, size).
pub fn self_dual_orbits(q: u64, n: u32) -> Vec<(u32, u32)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for k in 0..n {
        if seen.contains(&k) {
            continue;
        }
        let mut orbit = BTreeSet::new();
        let mut cur = k;
        loop {
            orbit.insert(cur);
            cur = ((cur as u64 * q) % n as u64) as u32;
            if cur == k {
                break;
            }
        }
        seen.extend(orbit.iter().copied());
        if orbit.contains(&((n - k) % n)) {
            out.push((*orbit.iter().next().unwrap(), orbit.len() as u32));
        }
    }
    out
}

/// Multiplicity assignments m(k) on the self-dual orbits with Σ_k m(k) = 2n,
/// as sorted (rep, mult) lists with mult ≥ 1.
pub fn raw_tame_characters(q: u64, n: u32, two_n: u32) -> Vec<Vec<(u32, u32)>> {
    let orbits = self_dual_orbits(q, n);
    let mut out = Vec::new();
    fn go(orbits: &[(u32, u32)], i: usize, left: u32, acc: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if i == orbits.len() {
            if left == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let (rep, size) = orbits[i];
        go(orbits, i + 1, left, acc, out);
        let mut m = 1;
        while m * size <= left {
            acc.push((rep, m));
            go(orbits, i + 1, left - m * size, acc, out);
            acc.pop();
            m += 1;
        }
    }
    go(&orbits, 0, two_n, &mut Vec::new(), &mut out);
    out
}

/// Canonical text of one ψ: the character, then each class with its two
/// orbits.
pub fn psi_key(chi: &[(u32, u32)], comps: &[(u32, Vec<u32>, Vec<u32>)]) -> String {
    let c: Vec<String> = chi.iter().map(|(r, m)| format!("{r}^{m}")).collect();
    let u: Vec<String> = comps.iter().map(|(r, p, m)| format!("{r}:{p:?}/{m:?}")).collect();
    format!("{} | {}", c.join(" "), u.join(" "))
}

/// Every discrete ψ for (q, N, 2n) by filtering all partitions, with the
/// number of blocks of each.
pub fn raw_parameters(q: u64, n: u32, two_n: u32) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for chi in raw_tame_characters(q, n, two_n) {
        let mut per_class: Vec<Vec<(u32, Vec<u32>, Vec<u32>)>> = Vec::new();
        for &(rep, mult) in &chi {
            let pm = rep == 0 || 2 * rep == n;
            let mut opts = Vec::new();
            for a in 0..=mult {
                for p in raw_partitions(a) {
                    if !(distinct(&p) && p.iter().all(|x| x % 2 == 0)) {
                        continue;
                    }
                    for m in raw_partitions(mult - a) {
                        let parity_ok = if pm { m.iter().all(|x| x % 2 == 0) } else { m.iter().all(|x| x % 2 == 1) };
                        if distinct(&m) && parity_ok {
                            opts.push((rep, p.clone(), m));
                        }
                    }
                }
            }
            per_class.push(opts);
        }
        let mut acc: Vec<Vec<(u32, Vec<u32>, Vec<u32>)>> = vec![Vec::new()];
        for opts in &per_class {
            acc = acc
                .iter()
                .flat_map(|a| opts.iter().map(move |o| {
                    let mut v = a.clone();
                    v.push(o.clone());
                    v
                }))
                .collect();
        }
        for comps in acc {
            let blocks = comps.iter().map(|(_, p, m)| p.len() + m.len()).sum();
            out.insert(psi_key(&chi, &comps), blocks);
        }
    }
    out
}

/// Standard Young tableaux of shape `shape`, each as the (row, col) cell of
/// 1, 2, ..., m.
pub fn standard_tableaux(shape: &[u32]) -> Vec<Vec<(i64, i64)>> {
    let m: u32 = shape.iter().sum();
    let mut out = Vec::new();
    fn go(shape: &[u32], filled: &mut Vec<u32>, cells: &mut Vec<(i64, i64)>, m: u32, out: &mut Vec<Vec<(i64, i64)>>) {
        if cells.len() as u32 == m {
            out.push(cells.clone());
            return;
        }
        for r in 0..shape.len() {
            let c = filled[r];
            if c < shape[r] && (r == 0 || filled[r - 1] > c) {
                filled[r] += 1;
                cells.push((r as i64, c as i64));
                go(shape, filled, cells, m, out);
                cells.pop();
                filled[r] -= 1;
            }
        }
    }
    go(shape, &mut vec![0; shape.len()], &mut Vec::new(), m, &mut out);
    out
}

pub type Matrix = Vec<Vec<Rational64>>;

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational64::one() } else { Rational64::zero() }).collect()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(Rational64::zero(), |s, k| s + a[i][k] * b[k][j])).collect())
        .collect()
}

fn trace(a: &Matrix) -> Rational64 {
    (0..a.len()).fold(Rational64::zero(), |s, i| s + a[i][i])
}

/// Young's seminormal matrices of the simple transpositions s_1..s_{m−1}
/// on the irreducible module of shape `shape`.
pub fn seminormal_generators(shape: &[u32]) -> Vec<Matrix> {
    let tabs = standard_tableaux(shape);
    let index: BTreeMap<Vec<(i64, i64)>, usize> = tabs.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let m: usize = shape.iter().sum::<u32>() as usize;
    let d = tabs.len();
    let mut gens = Vec::new();
    for i in 0..m.saturating_sub(1) {
        let mut s = vec![vec![Rational64::zero(); d]; d];
        for (j, t) in tabs.iter().enumerate() {
            let content = |c: (i64, i64)| c.1 - c.0;
            let rho = content(t[i + 1]) - content(t[i]);
            let r = Rational64::new(1, rho);
            s[j][j] = r;
            if rho.abs() != 1 {
                let mut t2 = t.clone();
                t2.swap(i, i + 1);
                let k = index[&t2];
                s[k][j] = if rho > 0 { Rational64::one() } else { Rational64::one() - r * r };
            }
        }
        gens.push(s);
    }
    gens
}

/// Checks the Coxeter relations of S_m on the given matrices.
pub fn coxeter_relations_hold(gens: &[Matrix], dim: usize) -> bool {
    let id = identity(dim);
    let pow = |a: &Matrix, k: usize| (0..k).fold(id.clone(), |acc, _| mat_mul(&acc, a));
    for (i, a) in gens.iter().enumerate() {
        if mat_mul(a, a) != id {
            return false;
        }
        for (j, b) in gens.iter().enumerate().skip(i + 1) {
            let order = if j == i + 1 { 3 } else { 2 };
            if pow(&mat_mul(a, b), order) != id {
                return false;
            }
        }
    }
    true
}

/// χ_shape at cycle type `cycles`: the trace of the product of the
/// standard cycles on consecutive letters.
pub fn sym_character(shape: &[u32], cycles: &[u32]) -> i64 {
    let m: u32 = shape.iter().sum();
    assert_eq!(m, cycles.iter().sum::<u32>());
    if m == 0 {
        return 1;
    }
    let gens = seminormal_generators(shape);
    let dim = standard_tableaux(shape).len();
    assert!(coxeter_relations_hold(&gens, dim), "seminormal form is not a representation for {shape:?}");
    let mut acc = identity(dim);
    let mut start = 0usize;
    for &c in cycles {
        for k in start..start + c as usize - 1 {
            acc = mat_mul(&acc, &gens[k]);
        }
        start += c as usize;
    }
    let t = trace(&acc);
    assert!(t.is_integer());
    t.to_integer()
}

/// A signed permutation: e_i ↦ sign[i]·e_{perm[i]}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    pub perm: Vec<usize>,
    pub sign: Vec<i8>,
}

impl SignedPerm {
    /// self ∘ other.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let n = self.perm.len();
        SignedPerm {
            perm: (0..n).map(|i| self.perm[other.perm[i]]).collect(),
            sign: (0..n).map(|i| other.sign[i] * self.sign[other.perm[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> SignedPerm {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut sign = vec![1; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            sign[self.perm[i]] = self.sign[i];
        }
        SignedPerm { perm, sign }
    }

    /// Cycle lengths split by the product of signs along the cycle,
    /// (positive, negative), each descending.
    pub fn signed_cycle_type(&self) -> (Vec<u32>, Vec<u32>) {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let (mut len, mut s, mut j) = (0, 1i8, i);
            while !seen[j] {
                seen[j] = true;
                s *= self.sign[j];
                len += 1;
                j = self.perm[j];
            }
            if s == 1 {
                pos.push(len);
            } else {
                neg.push(len);
            }
        }
        pos.sort_unstable_by(|a, b| b.cmp(a));
        neg.sort_unstable_by(|a, b| b.cmp(a));
        (pos, neg)
    }

    /// Cycle type of the underlying permutation restricted to `range`, which
    /// must be stable.
    fn cycle_type_on(&self, range: std::ops::Range<usize>) -> Vec<u32> {
        let mut seen = vec![false; self.perm.len()];
        let mut out = Vec::new();
        for i in range {
            if seen[i] {
                continue;
            }
            let (mut len, mut j) = (0, i);
            while !seen[j] {
                seen[j] = true;
                len += 1;
                j = self.perm[j];
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn all_signed_perms(n: usize) -> Vec<SignedPerm> {
    let mut out = Vec::new();
    for perm in all_perms(n) {
        for mask in 0..1u32 << n {
            let sign = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            out.push(SignedPerm { perm: perm.clone(), sign });
        }
    }
    out
}

/// χ_{(α,β)} of W_n at `g`: induced from W_a × W_b, a = |α|, of
/// χ_α ⊗ (χ_β · product of signs), by summing over the whole group.
pub fn weyl_character(alpha: &[u32], beta: &[u32], g: &SignedPerm, group: &[SignedPerm]) -> Rational64 {
    let a = alpha.iter().sum::<u32>() as usize;
    let n = g.perm.len();
    let in_h = |h: &SignedPerm| (0..a).all(|i| h.perm[i] < a);
    let chi_h = |h: &SignedPerm| -> i64 {
        let flips: i64 = h.sign[a..].iter().map(|&s| s as i64).product();
        sym_character(alpha, &h.cycle_type_on(0..a)) * sym_character(beta, &h.cycle_type_on(a..n)) * flips
    };
    let h_order = group.iter().filter(|h| in_h(h)).count() as i64;
    let mut sum = 0i64;
    for x in group {
        let c = x.compose(g).compose(&x.inverse());
        if in_h(&c) {
            sum += chi_h(&c);
        }
    }
    Rational64::new(sum, h_order)
}

/// Runs the built binary with `args` and returns (status, stdout).
pub fn run_cli(args: &[&str], envs: &[(&str, &str)]) -> (i32, Vec<u8>) {
    let mut cmd = std::process::Command::new(env!("CARGO_BIN_EXE_level0"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("failed to run level0");
    (out.status.code().unwrap_or(-1), out.stdout)
}
