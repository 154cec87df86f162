//! Independent oracles for monomial ideals: plain enumeration and divisibility,
//! no Gröbner bases involved.
#![allow(dead_code)]

use std::sync::Arc;

use linkage_core::{Field, Ideal, RingPresentation};
use rand::Rng;

pub type Exps = Vec<u32>;

pub const VARS: [&str; 4] = ["x", "y", "z", "w"];

pub fn ring(nvars: usize) -> Arc<RingPresentation> {
    RingPresentation::parse(&VARS[..nvars], Field::Rational, &[]).unwrap()
}

pub fn quotient(vars: &[&str], rels: &[&str]) -> Arc<RingPresentation> {
    RingPresentation::parse(vars, Field::Rational, rels).unwrap()
}

pub fn monomial_text(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { VARS[i].to_string() } else { format!("{}^{k}", VARS[i]) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

pub fn monomial_ideal(r: &Arc<RingPresentation>, gens: &[Exps]) -> Ideal {
    let texts: Vec<String> = gens.iter().map(|g| monomial_text(g)).collect();
    let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
    r.parse_ideal(&refs).unwrap()
}

pub fn random_exps<R: Rng>(rng: &mut R, nvars: usize, max_deg: u32) -> Exps {
    let deg = rng.gen_range(1..=max_deg);
    let mut e = vec![0; nvars];
    for _ in 0..deg {
        e[rng.gen_range(0..nvars)] += 1;
    }
    e
}

pub fn random_monomial_ideal<R: Rng>(rng: &mut R, nvars: usize, max_deg: u32, max_gens: usize) -> Vec<Exps> {
    let n = rng.gen_range(1..=max_gens);
    (0..n).map(|_| random_exps(rng, nvars, max_deg)).collect()
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn in_monomial_ideal(f: &[u32], gens: &[Exps]) -> bool {
    gens.iter().any(|g| divides(g, f))
}

/// All exponent vectors of total degree exactly `d`.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Exps> {
    if nvars == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in monomials_of_degree(nvars - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<Exps> {
    (0..=d).flat_map(|k| monomials_of_degree(nvars, k)).collect()
}

/// `f ∈ A : B` decided by multiplying with every generator of `B`.
pub fn in_colon(f: &[u32], a: &[Exps], b: &[Exps]) -> bool {
    b.iter().all(|g| {
        let prod: Exps = f.iter().zip(g).map(|(x, y)| x + y).collect();
        in_monomial_ideal(&prod, a)
    })
}

/// `λ(k[x]/(A + m^s))` for `s = 1..=s_max`, by counting monomials of degree `< s` outside `A`.
pub fn brute_hilbert_samuel(nvars: usize, a: &[Exps], s_max: u32) -> Vec<u64> {
    let mut acc = 0;
    (0..s_max)
        .map(|d| {
            acc += monomials_of_degree(nvars, d)
                .iter()
                .filter(|f| !in_monomial_ideal(f, a))
                .count() as u64;
            acc
        })
        .collect()
}

/// `λ(k[x]/(A + q^s))` for `q = (x_1^{c_1}, ..., x_n^{c_n})`: `f ∈ q^s` iff
/// `Σ floor(e_i / c_i) >= s`.
pub fn brute_hilbert_samuel_diagonal(a: &[Exps], c: &[u32], s_max: u32) -> Vec<u64> {
    let nvars = c.len();
    let bound = s_max * c.iter().max().unwrap() * nvars as u32;
    let all = monomials_up_to(nvars, bound);
    (1..=s_max)
        .map(|s| {
            all.iter()
                .filter(|f| {
                    let in_q: u32 = f.iter().zip(c).map(|(e, ci)| e / ci).sum();
                    in_q < s && !in_monomial_ideal(f, a)
                })
                .count() as u64
        })
        .collect()
}
