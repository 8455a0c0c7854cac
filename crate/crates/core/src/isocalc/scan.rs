//! Exhaustive and sampled comparison of S-equality, arithmetic equality and
//! equality of model cardinalities over small formulae.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::pointedsets::{interp_formula, Valuation};
use crate::syntax::Formula;
use crate::theories::{random_formula, Theory};

use super::arith::{arith_value, assignments, format_assignment, ArithValue};
use super::normal::{normalize_s, NormalForm};
use super::IsoError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    /// Largest number of connectives.
    pub max_size: usize,
    pub letters: Vec<Arc<str>>,
    /// Letters range over `0..=bound` in the arithmetic comparison.
    pub bound: u64,
    pub seed: u64,
    pub workers: usize,
    pub diversified_only: bool,
    /// Enumerate when there are at most this many formulae; sample otherwise.
    pub enumeration_limit: usize,
    pub sample_size: usize,
    /// Letters range over pointed sets of sizes `1..=model_size` in the model comparison.
    pub model_size: usize,
}

impl Default for ScanConfig {
    fn default() -> ScanConfig {
        ScanConfig {
            max_size: 3,
            letters: vec![Arc::from("p"), Arc::from("q")],
            bound: 4,
            seed: 42,
            workers: 1,
            diversified_only: false,
            enumeration_limit: 300_000,
            sample_size: 20_000,
            model_size: 4,
        }
    }
}

/// A pair of formulae singled out by the scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanPair {
    pub lhs: String,
    pub rhs: String,
    /// An assignment where the arithmetic values differ, when there is one.
    pub witness: Option<String>,
    /// Whether the model cardinalities are known and agree at every tested valuation.
    pub model_equal: bool,
}

/// Number of pairs showing each agreement pattern.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PairCounts {
    /// Keyed by `S`/`s`, `A`/`a`, `M`/`m`: upper case for agreement.
    pub by_pattern: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub max_size: usize,
    pub letters: Vec<String>,
    pub bound: u64,
    pub seed: u64,
    pub diversified_only: bool,
    pub sampled: bool,
    pub formulas: usize,
    pub s_classes: usize,
    pub arith_classes: usize,
    pub model_classes: usize,
    pub pairs: PairCounts,
    /// S-equal but arithmetically different: impossible unless something is broken.
    pub soundness_violations: Vec<ScanPair>,
    /// S-different but arithmetically equal up to the bound.
    pub candidates: Vec<ScanPair>,
}

impl ScanReport {
    /// Whether S-equality and arithmetic equality up to the bound partition the formulae alike.
    pub fn s_matches_arith(&self) -> bool {
        self.soundness_violations.is_empty() && self.candidates.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mode = if self.sampled {
            "sampled"
        } else {
            "enumerated"
        };
        let _ = writeln!(
            out,
            "scan: max-size {}, letters {}, bound {}, seed {}{}",
            self.max_size,
            self.letters.join(","),
            self.bound,
            self.seed,
            if self.diversified_only {
                ", diversified only"
            } else {
                ""
            }
        );
        let _ = writeln!(out, "formulas: {} ({mode})", self.formulas);
        let _ = writeln!(
            out,
            "classes: S {}, arith {}, model {}",
            self.s_classes, self.arith_classes, self.model_classes
        );
        let _ = writeln!(
            out,
            "pairs by agreement (S arith model, upper case = equal):"
        );
        for (k, v) in &self.pairs.by_pattern {
            let _ = writeln!(out, "  {k}: {v}");
        }
        let _ = writeln!(
            out,
            "soundness violations (S-equal, arith-differ): {}",
            self.soundness_violations.len()
        );
        for p in &self.soundness_violations {
            let _ = writeln!(
                out,
                "  {}  vs  {}  at {}",
                p.lhs,
                p.rhs,
                p.witness.as_deref().unwrap_or("?")
            );
        }
        let _ = writeln!(
            out,
            "candidates (S-different, arith-agree(bound={})): {}",
            self.bound,
            self.candidates.len()
        );
        for p in &self.candidates {
            let model = if p.model_equal {
                "model-agree"
            } else {
                "model-differ"
            };
            let _ = writeln!(out, "  {}  vs  {}  {model}", p.lhs, p.rhs);
        }
        out
    }
}

/// All ∧/⊤/→ formulae with at most `max_size` connectives over `letters`,
/// by size and then in construction order. `None` once `limit` is exceeded.
pub fn enumerate_formulae(
    max_size: usize,
    letters: &[Arc<str>],
    diversified_only: bool,
    limit: usize,
) -> Option<Vec<Formula>> {
    assert!(letters.len() <= 64, "letter masks are 64 bits");
    let mut by_size: Vec<Vec<(Formula, u64)>> = Vec::new();
    let mut leaves = vec![(Formula::Top, 0u64)];
    leaves.extend(
        letters
            .iter()
            .enumerate()
            .map(|(i, l)| (Formula::Letter(l.clone()), 1u64 << i)),
    );
    let mut total = leaves.len();
    by_size.push(leaves);
    for n in 1..=max_size {
        let mut level = Vec::new();
        for k in 0..n {
            for (a, ma) in &by_size[k] {
                for (b, mb) in &by_size[n - 1 - k] {
                    if diversified_only && ma & mb != 0 {
                        continue;
                    }
                    level.push((Formula::conj(a.clone(), b.clone()), ma | mb));
                    level.push((Formula::implies(a.clone(), b.clone()), ma | mb));
                }
            }
        }
        total += level.len();
        if total > limit {
            return None;
        }
        by_size.push(level);
    }
    Some(by_size.into_iter().flatten().map(|(f, _)| f).collect())
}

fn sample_formulae(cfg: &ScanConfig) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut attempts = 0usize;
    while out.len() < cfg.sample_size && attempts < cfg.sample_size.saturating_mul(100) {
        attempts += 1;
        let a = random_formula(&mut rng, &cfg.letters, cfg.max_size, Theory::Smc);
        if cfg.diversified_only && !a.is_diversified() {
            continue;
        }
        if seen.insert(a.clone()) {
            out.push(a);
        }
    }
    out
}

/// Largest model cardinality, in bits, the scan computes exactly.
const MODEL_CAP_BITS: u64 = 1 << 12;

/// Cardinality of the pointed set interpreting `a`, or `None` when it is too
/// large to compute. A factor of size 1 (the set `I`) decides a smash or a
/// hom without its partner, so a huge partner does not hide the answer.
fn model_size(a: &Formula, v: &Valuation) -> Option<BigUint> {
    let one = BigUint::one();
    match a {
        Formula::Letter(_) | Formula::Top | Formula::AddUnit => {
            interp_formula(a, v).ok().map(|s| BigUint::from(s.size()))
        }
        Formula::Conj(l, r) | Formula::Impl(l, r) => {
            let (x, y) = (model_size(l, v), model_size(r, v));
            if x.as_ref() == Some(&one) || y.as_ref() == Some(&one) {
                return Some(one);
            }
            let (x, y) = (x?, y?);
            let out = if matches!(a, Formula::Conj(..)) {
                (x - 1u32) * (y - 1u32) + 1u32
            } else {
                let e = x - 1u32;
                if (y.bits() - 1).saturating_mul(e.to_u64()?) > MODEL_CAP_BITS {
                    return None;
                }
                y.pow(e.to_u32()?)
            };
            (out.bits() <= MODEL_CAP_BITS).then_some(out)
        }
        _ => None,
    }
}

struct Signature {
    nf: NormalForm,
    arith: Vec<ArithValue>,
    model: Vec<Option<BigUint>>,
}

fn signature(
    a: &Formula,
    sigmas: &[super::arith::Assignment],
    valuations: &[Valuation],
) -> Result<Signature, IsoError> {
    let nf = normalize_s(a)?;
    let arith = sigmas
        .iter()
        .map(|s| arith_value(a, s))
        .collect::<Result<_, _>>()?;
    let model = valuations.iter().map(|v| model_size(a, v)).collect();
    Ok(Signature { nf, arith, model })
}

struct Interner<K> {
    ids: HashMap<K, u32>,
    items: Vec<K>,
}

impl<K> Default for Interner<K> {
    fn default() -> Self {
        Interner {
            ids: HashMap::new(),
            items: Vec::new(),
        }
    }
}

impl<K: Hash + Eq + Clone> Interner<K> {
    fn intern(&mut self, key: K) -> u32 {
        if let Some(&id) = self.ids.get(&key) {
            return id;
        }
        let id = self.items.len() as u32;
        self.items.push(key.clone());
        self.ids.insert(key, id);
        id
    }
}

/// Groups indices by key, keeping first-occurrence order.
fn groups<K: Hash + Eq>(keys: impl Iterator<Item = K>) -> Vec<Vec<usize>> {
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, k) in keys.enumerate() {
        let g = *index.entry(k).or_insert_with(|| {
            out.push(Vec::new());
            out.len() - 1
        });
        out[g].push(i);
    }
    out
}

fn pair_count(groups: &[Vec<usize>]) -> u64 {
    groups
        .iter()
        .map(|g| (g.len() as u64) * (g.len() as u64 - 1) / 2)
        .sum()
}

pub fn conjecture_scan(cfg: &ScanConfig) -> Result<ScanReport, IsoError> {
    let (formulae, sampled) = match enumerate_formulae(
        cfg.max_size,
        &cfg.letters,
        cfg.diversified_only,
        cfg.enumeration_limit,
    ) {
        Some(f) => (f, false),
        None => (sample_formulae(cfg), true),
    };
    let sigmas: Vec<_> = assignments(&cfg.letters, cfg.bound).collect();
    let valuations: Vec<Valuation> =
        assignments(&cfg.letters, cfg.model_size.saturating_sub(1) as u64)
            .map(|s| {
                Valuation::from_sizes(s.iter().map(|(k, &v)| (&**k, v as usize + 1)))
                    .expect("positive sizes")
            })
            .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| IsoError::Workers(e.to_string()))?;
    // Signatures are computed a chunk at a time in parallel and interned in
    // chunk order, so only one copy of each distinct signature is kept.
    let (mut nfs, mut ariths, mut models) = (
        Interner::default(),
        Interner::default(),
        Interner::default(),
    );
    let mut sigs: Vec<[u32; 3]> = Vec::with_capacity(formulae.len());
    for chunk in formulae.chunks(4096) {
        let computed = pool.install(|| {
            chunk
                .par_iter()
                .map(|a| signature(a, &sigmas, &valuations))
                .collect::<Result<Vec<_>, _>>()
        })?;
        for sig in computed {
            sigs.push([
                nfs.intern(sig.nf),
                ariths.intern(sig.arith),
                models.intern(sig.model),
            ]);
        }
    }

    let by_s = groups(sigs.iter().map(|s| s[0]));
    let by_a = groups(sigs.iter().map(|s| s[1]));
    let by_m = groups(sigs.iter().map(|s| s[2]));
    let by_sa = groups(sigs.iter().map(|s| (s[0], s[1])));
    let by_sm = groups(sigs.iter().map(|s| (s[0], s[2])));
    let by_am = groups(sigs.iter().map(|s| (s[1], s[2])));
    let by_sam = groups(sigs.iter().map(|s| *s));
    let n = formulae.len() as u64;
    let all = n * n.saturating_sub(1) / 2;
    let (s, a, m) = (pair_count(&by_s), pair_count(&by_a), pair_count(&by_m));
    let (sa, sm, am, sam) = (
        pair_count(&by_sa),
        pair_count(&by_sm),
        pair_count(&by_am),
        pair_count(&by_sam),
    );
    // inclusion–exclusion over the agreeing attributes
    let exact = [
        ("S A M", sam),
        ("S A m", sa - sam),
        ("S a M", sm - sam),
        ("s A M", am - sam),
        ("S a m", s + sam - sa - sm),
        ("s A m", a + sam - sa - am),
        ("s a M", m + sam - sm - am),
        ("s a m", all + sa + sm + am - s - a - m - sam),
    ];
    let pairs = PairCounts {
        by_pattern: exact.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    };

    let model_equal = |i: usize, j: usize| {
        sigs[i][2] == sigs[j][2]
            && models.items[sigs[i][2] as usize]
                .iter()
                .all(Option::is_some)
    };
    let mut soundness_violations = Vec::new();
    for g in &by_s {
        let sub = groups(g.iter().map(|&i| sigs[i][1]));
        let rep = g[sub[0][0]];
        for other in &sub[1..] {
            let j = g[other[0]];
            let (x, y) = (
                &ariths.items[sigs[rep][1] as usize],
                &ariths.items[sigs[j][1] as usize],
            );
            let k = (0..sigmas.len())
                .find(|&k| x[k] != y[k])
                .expect("signatures differ");
            soundness_violations.push(ScanPair {
                lhs: formulae[rep].to_string(),
                rhs: formulae[j].to_string(),
                witness: Some(format_assignment(&sigmas[k])),
                model_equal: model_equal(rep, j),
            });
        }
    }
    let mut candidates = Vec::new();
    for g in &by_a {
        let sub = groups(g.iter().map(|&i| sigs[i][0]));
        let rep = g[sub[0][0]];
        for other in &sub[1..] {
            let j = g[other[0]];
            candidates.push(ScanPair {
                lhs: formulae[rep].to_string(),
                rhs: formulae[j].to_string(),
                witness: None,
                model_equal: model_equal(rep, j),
            });
        }
    }
    soundness_violations.sort_by(|x, y| (&x.lhs, &x.rhs).cmp(&(&y.lhs, &y.rhs)));
    candidates.sort_by(|x, y| (&x.lhs, &x.rhs).cmp(&(&y.lhs, &y.rhs)));

    Ok(ScanReport {
        max_size: cfg.max_size,
        letters: cfg.letters.iter().map(|l| l.to_string()).collect(),
        bound: cfg.bound,
        seed: cfg.seed,
        diversified_only: cfg.diversified_only,
        sampled,
        formulas: formulae.len(),
        s_classes: by_s.len(),
        arith_classes: by_a.len(),
        model_classes: by_m.len(),
        pairs,
        soundness_violations,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isocalc::{arith_equal, s_equal, ArithVerdict};

    fn letters(names: &[&str]) -> Vec<Arc<str>> {
        names.iter().map(|&n| Arc::from(n)).collect()
    }

    #[test]
    fn enumeration_counts() {
        // leaves ⊤, p: 2; one connective: 2·2·2 = 8
        let f = enumerate_formulae(1, &letters(&["p"]), false, usize::MAX).unwrap();
        assert_eq!(f.len(), 2 + 8);
        let d = enumerate_formulae(1, &letters(&["p"]), true, usize::MAX).unwrap();
        // p ∧ p and p → p are excluded
        assert_eq!(d.len(), 2 + 6);
        assert!(d.iter().all(Formula::is_diversified));
        assert!(enumerate_formulae(3, &letters(&["p", "q"]), false, 100).is_none());
    }

    #[test]
    fn single_letter_scan_is_sound() {
        let cfg = ScanConfig {
            max_size: 3,
            letters: letters(&["p"]),
            bound: 4,
            ..ScanConfig::default()
        };
        let r = conjecture_scan(&cfg).unwrap();
        assert!(r.soundness_violations.is_empty());
        assert!(!r.sampled);
        let total: u64 = r.pairs.by_pattern.values().sum();
        assert_eq!(total, (r.formulas as u64) * (r.formulas as u64 - 1) / 2);
    }

    #[test]
    fn diversified_scan_matches_pairwise_oracle() {
        let cfg = ScanConfig {
            max_size: 2,
            letters: letters(&["p", "q"]),
            bound: 4,
            diversified_only: true,
            ..ScanConfig::default()
        };
        let r = conjecture_scan(&cfg).unwrap();
        assert!(r.s_matches_arith(), "{}", r.to_text());
        // pairwise oracle on the same formulae
        let f = enumerate_formulae(2, &cfg.letters, true, usize::MAX).unwrap();
        for a in &f {
            for b in &f {
                let arith = matches!(arith_equal(a, b, 4).unwrap(), ArithVerdict::EqualUpTo(_));
                assert_eq!(s_equal(a, b).unwrap(), arith, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn workers_do_not_change_the_report() {
        let base = ScanConfig {
            max_size: 2,
            letters: letters(&["p", "q"]),
            ..ScanConfig::default()
        };
        let one = conjecture_scan(&base).unwrap();
        let four = conjecture_scan(&ScanConfig { workers: 4, ..base }).unwrap();
        assert_eq!(one, four);
        assert_eq!(one.to_text(), four.to_text());
    }

    #[test]
    fn sampling_is_seeded() {
        let cfg = ScanConfig {
            max_size: 5,
            letters: letters(&["p", "q"]),
            enumeration_limit: 10,
            sample_size: 200,
            ..ScanConfig::default()
        };
        let a = conjecture_scan(&cfg).unwrap();
        assert!(a.sampled);
        assert_eq!(a, conjecture_scan(&cfg).unwrap());
        assert!(a.soundness_violations.is_empty());
    }
}
