//! The arithmetic interpretation: `⊤ = 1`, `∧` is multiplication and
//! `m → n = (n+1)^m − 1`.
//!
//! Implication towers outgrow any machine representation quickly, so values
//! of at least `2^CAP_BITS` are kept only as residues modulo a fixed set of
//! moduli: three large primes and every iterated totient of them. Powers with
//! a huge exponent are reduced by the generalized Euler theorem
//! `a^k ≡ a^(k mod φ(M) + φ(M)) (mod M)` for `k ≥ log₂ M`. Distinct residues
//! prove two huge values differ; equal residues are strong but not conclusive
//! evidence of equality.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::syntax::Formula;

use super::IsoError;

/// Values below `2^CAP_BITS` are computed exactly.
pub const CAP_BITS: u64 = 1 << 14;

const PRIMES: [u64; 3] = [1_000_000_007, 998_244_353, 1_000_000_009];

struct Moduli {
    values: Vec<u64>,
    /// `totient[i]` is the index of `φ(values[i])`.
    totient: Vec<usize>,
}

fn phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            out -= out / d;
        }
        d += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn moduli() -> &'static Moduli {
    static MODULI: OnceLock<Moduli> = OnceLock::new();
    MODULI.get_or_init(|| {
        let mut values = Vec::new();
        for p in PRIMES {
            let mut m = p;
            loop {
                values.push(m);
                if m == 1 {
                    break;
                }
                m = phi(m);
            }
        }
        values.sort_unstable();
        values.dedup();
        let totient = values
            .iter()
            .map(|&m| values.binary_search(&phi(m)).expect("closed under φ"))
            .collect();
        Moduli { values, totient }
    })
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// `base^exp mod values[i]` for an exact exponent of any size.
fn mod_pow_big(base: u64, exp: &BigUint, i: usize) -> u64 {
    let md = moduli();
    let q = md.values[i];
    match exp.to_u64() {
        Some(e) => mod_pow(base, e, q),
        None => {
            // exp ≥ 2^64 > log₂ q, so the Euler reduction applies
            let t = md.values[md.totient[i]];
            mod_pow(base, residue(exp, t) + t, q)
        }
    }
}

/// A natural number: exact below `2^CAP_BITS`, otherwise known by residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArithValue {
    Exact(BigUint),
    Huge(Arc<[u64]>),
}

impl ArithValue {
    pub fn exact(n: u64) -> ArithValue {
        ArithValue::Exact(BigUint::from(n))
    }

    fn classify(v: BigUint) -> ArithValue {
        if v.bits() <= CAP_BITS {
            ArithValue::Exact(v)
        } else {
            ArithValue::Huge(residues_of(&v))
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ArithValue::Exact(v) if v.is_zero())
    }

    pub fn as_exact(&self) -> Option<&BigUint> {
        match self {
            ArithValue::Exact(v) => Some(v),
            ArithValue::Huge(_) => None,
        }
    }

    fn residues(&self) -> Arc<[u64]> {
        match self {
            ArithValue::Exact(v) => residues_of(v),
            ArithValue::Huge(r) => r.clone(),
        }
    }

    pub fn mul(&self, other: &ArithValue) -> ArithValue {
        use ArithValue::*;
        if self.is_zero() || other.is_zero() {
            return ArithValue::exact(0);
        }
        match (self, other) {
            (Exact(a), Exact(b)) => ArithValue::classify(a * b),
            _ => {
                let m = &moduli().values;
                let (a, b) = (self.residues(), other.residues());
                Huge(
                    (0..m.len())
                        .map(|i| ((a[i] as u128 * b[i] as u128) % m[i] as u128) as u64)
                        .collect(),
                )
            }
        }
    }

    /// `m → n = (n+1)^m − 1` with `self = m`.
    pub fn implies(&self, n: &ArithValue) -> ArithValue {
        use ArithValue::*;
        if self.is_zero() || n.is_zero() {
            return ArithValue::exact(0);
        }
        let md = moduli();
        match (self, n) {
            (Exact(m), Exact(n)) => {
                let base = n + 1u32;
                // base ≥ 2^(bits−1), so the power is at least 2^((bits−1)·m)
                let low = BigUint::from(base.bits() - 1) * m;
                if low > BigUint::from(CAP_BITS) {
                    let r = (0..md.values.len())
                        .map(|i| {
                            let q = md.values[i];
                            sub_one(mod_pow_big(residue(&base, q), m, i), q)
                        })
                        .collect();
                    return Huge(r);
                }
                let e = m.to_u32().expect("exponent bounded by the cap");
                ArithValue::classify(base.pow(e) - 1u32)
            }
            (Exact(m), Huge(nr)) => {
                let r = (0..md.values.len())
                    .map(|i| {
                        let q = md.values[i];
                        sub_one(mod_pow_big((nr[i] + 1) % q, m, i), q)
                    })
                    .collect();
                Huge(r)
            }
            (Huge(mr), _) => {
                let nr = n.residues();
                let r = (0..md.values.len())
                    .map(|i| {
                        let q = md.values[i];
                        if q == 1 {
                            return 0;
                        }
                        let t = md.totient[i];
                        sub_one(mod_pow((nr[i] + 1) % q, mr[t] + md.values[t], q), q)
                    })
                    .collect();
                Huge(r)
            }
        }
    }
}

fn residue(v: &BigUint, m: u64) -> u64 {
    (v % m).to_u64().expect("below modulus")
}

fn residues_of(v: &BigUint) -> Arc<[u64]> {
    moduli().values.iter().map(|&m| residue(v, m)).collect()
}

fn sub_one(x: u64, m: u64) -> u64 {
    if m == 1 {
        0
    } else {
        (x + m - 1) % m
    }
}

impl fmt::Display for ArithValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithValue::Exact(v) => write!(f, "{v}"),
            ArithValue::Huge(r) => {
                let m = &moduli().values;
                write!(f, "≥2^{CAP_BITS} [")?;
                for (i, p) in PRIMES.iter().enumerate() {
                    let idx = m.binary_search(p).expect("prime is a modulus");
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "≡{} mod {p}", r[idx])?;
                }
                write!(f, "]")
            }
        }
    }
}

pub type Assignment = BTreeMap<Arc<str>, u64>;

/// Parses `p=2,q=3`.
pub fn parse_assignment(s: &str) -> Result<Assignment, IsoError> {
    let mut out = Assignment::new();
    for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| IsoError::Assignment(item.to_string()))?;
        let v = v
            .trim()
            .parse()
            .map_err(|_| IsoError::Assignment(item.to_string()))?;
        out.insert(Arc::from(k.trim()), v);
    }
    Ok(out)
}

pub fn format_assignment(sigma: &Assignment) -> String {
    sigma
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn arith_value(a: &Formula, sigma: &Assignment) -> Result<ArithValue, IsoError> {
    Ok(match a {
        Formula::Letter(p) => ArithValue::exact(
            *sigma
                .get(p)
                .ok_or_else(|| IsoError::UnboundLetter(p.to_string()))?,
        ),
        Formula::Top => ArithValue::exact(1),
        Formula::Conj(l, r) => arith_value(l, sigma)?.mul(&arith_value(r, sigma)?),
        Formula::Impl(l, r) => arith_value(l, sigma)?.implies(&arith_value(r, sigma)?),
        _ => return Err(IsoError::NotInFragment(a.to_string())),
    })
}

/// The exact value; fails with [`IsoError::TooLarge`] at or above `2^CAP_BITS`.
pub fn arith_eval(a: &Formula, sigma: &Assignment) -> Result<BigUint, IsoError> {
    match arith_value(a, sigma)? {
        ArithValue::Exact(v) => Ok(v),
        ArithValue::Huge(_) => Err(IsoError::TooLarge(a.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithVerdict {
    EqualUpTo(u64),
    Differ {
        assignment: Assignment,
        lhs: ArithValue,
        rhs: ArithValue,
    },
}

/// Every assignment of `0..=bound` to `letters`, lexicographic, last letter fastest.
pub fn assignments(letters: &[Arc<str>], bound: u64) -> impl Iterator<Item = Assignment> + '_ {
    let total = (bound + 1)
        .checked_pow(letters.len() as u32)
        .expect("assignment space too large");
    (0..total).map(move |mut code| {
        let mut sigma = Assignment::new();
        for l in letters.iter().rev() {
            sigma.insert(l.clone(), code % (bound + 1));
            code /= bound + 1;
        }
        sigma
    })
}

/// Compares the two sides at every assignment of values `0..=bound` to their letters.
pub fn arith_equal(a: &Formula, b: &Formula, bound: u64) -> Result<ArithVerdict, IsoError> {
    let mut letters = a.letters();
    letters.extend(b.letters());
    let letters: Vec<Arc<str>> = letters.into_iter().collect();
    for sigma in assignments(&letters, bound) {
        let (l, r) = (arith_value(a, &sigma)?, arith_value(b, &sigma)?);
        if l != r {
            return Ok(ArithVerdict::Differ {
                assignment: sigma,
                lhs: l,
                rhs: r,
            });
        }
    }
    Ok(ArithVerdict::EqualUpTo(bound))
}
