use std::cmp::Ordering;
use std::sync::Arc;

use super::predicates as p;
use super::{CostClass, LanguageSpec, MembershipTester, Params, Pivot, Predicate};
use crate::bitstring::BinaryString;
use crate::error::{Error, Result};

/// The named languages, in the orientation of their natural pivot.
///
/// Every variant except [`Language::DyckWords`] is a flip-swap language.
/// `DyckWords` is kept as a negative control for the closure checker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Language {
    All,
    WeightLe {
        k: u64,
    },
    LexLe {
        gamma: BinaryString,
    },
    InversionsLe {
        k: u64,
    },
    TranspositionsLe {
        k: u64,
    },
    /// Compare against the reversal (complemented when `complemented`):
    /// strictly smaller when `strict`, otherwise smaller or equal.
    Reversal {
        strict: bool,
        complemented: bool,
    },
    /// No occurrence of `1 0^t`.
    ForbiddenRun {
        t: usize,
    },
    /// Does not start with `1 gamma`.
    ForbiddenPrefix {
        gamma: Vec<bool>,
    },
    PrefixNormal,
    Necklace,
    Lyndon,
    Prenecklace,
    PseudoNecklace,
    /// Left factors of `k_ary`-ary Dyck words; natural pivot 0.
    DyckLeftFactor {
        k_ary: usize,
    },
    /// Feasible subsets; weights are kept sorted non-increasing.
    Knapsack {
        weights: Vec<u64>,
        capacity: u64,
    },
    /// Complete Dyck words. Not closed; natural pivot 0.
    DyckWords {
        k_ary: usize,
    },
}

fn bits_text(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl Language {
    /// Expression-style name, e.g. `weight_le(2)`.
    pub fn name(&self) -> String {
        match self {
            Language::All => "all".into(),
            Language::WeightLe { k } => format!("weight_le({k})"),
            Language::LexLe { gamma } => format!("lex_le({gamma})"),
            Language::InversionsLe { k } => format!("inversions_le({k})"),
            Language::TranspositionsLe { k } => format!("transpositions_le({k})"),
            Language::Reversal {
                strict,
                complemented,
            } => format!(
                "{}_{}reversal",
                if *strict { "lt" } else { "le" },
                if *complemented { "comp_" } else { "" }
            ),
            Language::ForbiddenRun { t } => format!("forbidden_run({t})"),
            Language::ForbiddenPrefix { gamma } => {
                format!("forbidden_prefix({})", bits_text(gamma))
            }
            Language::PrefixNormal => "prefix_normal".into(),
            Language::Necklace => "necklace".into(),
            Language::Lyndon => "lyndon".into(),
            Language::Prenecklace => "prenecklace".into(),
            Language::PseudoNecklace => "pseudo_necklace".into(),
            Language::DyckLeftFactor { k_ary } => format!("dyck_left_factor({k_ary})"),
            Language::Knapsack { weights, capacity } => {
                let w: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
                format!("knapsack({};{capacity})", w.join(","))
            }
            Language::DyckWords { k_ary } => format!("dyck_words({k_ary})"),
        }
    }

    pub fn natural_pivot(&self) -> Pivot {
        match self {
            Language::DyckLeftFactor { .. } | Language::DyckWords { .. } => Pivot::Zero,
            _ => Pivot::One,
        }
    }

    pub fn is_flip_swap(&self) -> bool {
        !matches!(self, Language::DyckWords { .. })
    }

    fn params(&self) -> Params {
        let mut params = Params::default();
        match self {
            Language::WeightLe { k }
            | Language::InversionsLe { k }
            | Language::TranspositionsLe { k } => params.k = Some(*k),
            Language::LexLe { gamma } => params.gamma = Some(gamma.to_string()),
            Language::ForbiddenPrefix { gamma } => params.gamma = Some(bits_text(gamma)),
            Language::ForbiddenRun { t } => params.t = Some(*t),
            Language::DyckLeftFactor { k_ary } | Language::DyckWords { k_ary } => {
                params.k_ary = Some(*k_ary)
            }
            Language::Knapsack { weights, capacity } => {
                params.weights = Some(weights.clone());
                params.capacity = Some(*capacity);
            }
            _ => {}
        }
        params
    }

    /// Validates parameters against `n` and returns the normalized predicate.
    fn normalized(&self, n: usize) -> Result<(CostClass, Predicate)> {
        if n == 0 {
            return Err(Error::ZeroLength);
        }
        let name = self.name();
        let pred: (CostClass, Predicate) = match self.clone() {
            Language::All => (CostClass::Constant, Arc::new(|_: &BinaryString| true)),
            Language::WeightLe { k } => (
                CostClass::Constant,
                Arc::new(move |s: &BinaryString| s.weight() as u64 <= k),
            ),
            Language::LexLe { gamma } => {
                if gamma.len() != n {
                    return Err(Error::LengthMismatch {
                        left: n,
                        right: gamma.len(),
                    });
                }
                (
                    CostClass::Linear,
                    Arc::new(move |s: &BinaryString| {
                        s.lex_cmp_unchecked(&gamma) != Ordering::Greater
                    }),
                )
            }
            Language::InversionsLe { k } => (
                CostClass::Linear,
                Arc::new(move |s: &BinaryString| p::inversions(s) <= k),
            ),
            Language::TranspositionsLe { k } => (
                CostClass::Linear,
                Arc::new(move |s: &BinaryString| p::transpositions(s) as u64 <= k),
            ),
            Language::Reversal {
                strict,
                complemented,
            } => (
                CostClass::Linear,
                Arc::new(
                    move |s: &BinaryString| match p::compare_with_reversal(s, complemented) {
                        Ordering::Less => true,
                        Ordering::Equal => !strict,
                        Ordering::Greater => false,
                    },
                ),
            ),
            Language::ForbiddenRun { t } => {
                if t < 1 {
                    return Err(Error::param(&name, "t must be at least 1"));
                }
                (
                    CostClass::Linear,
                    Arc::new(move |s: &BinaryString| !p::contains_one_then_zeros(s, t)),
                )
            }
            Language::ForbiddenPrefix { gamma } => {
                if gamma.len() + 1 > n {
                    return Err(Error::param(
                        &name,
                        format!("|gamma| must be at most n - 1 = {}", n - 1),
                    ));
                }
                (
                    CostClass::Linear,
                    Arc::new(move |s: &BinaryString| !p::has_prefix_one_then(s, &gamma)),
                )
            }
            Language::PrefixNormal => (CostClass::Quadratic, Arc::new(p::is_prefix_normal_zero)),
            Language::Necklace => (CostClass::Linear, Arc::new(p::is_necklace)),
            Language::Lyndon => (CostClass::Linear, Arc::new(p::is_lyndon)),
            Language::Prenecklace => (CostClass::Linear, Arc::new(p::is_prenecklace)),
            Language::PseudoNecklace => (CostClass::Linear, Arc::new(p::is_pseudo_necklace)),
            Language::DyckLeftFactor { k_ary } => {
                if k_ary < 2 {
                    return Err(Error::param(&name, "k must be at least 2"));
                }
                // Pivot-1 image: the zeros of the image are the ones of the
                // original string.
                (
                    CostClass::Linear,
                    Arc::new(move |s: &BinaryString| p::balanced_prefixes(s, k_ary, false)),
                )
            }
            Language::DyckWords { k_ary } => {
                if k_ary < 2 {
                    return Err(Error::param(&name, "k must be at least 2"));
                }
                (
                    CostClass::Linear,
                    Arc::new(move |s: &BinaryString| p::is_dyck_word(s, k_ary, false)),
                )
            }
            Language::Knapsack { weights, capacity } => {
                if weights.len() != n {
                    return Err(Error::param(
                        &name,
                        format!("expected {n} item weights, got {}", weights.len()),
                    ));
                }
                let (sorted, _) = sort_items(&weights);
                (
                    CostClass::Linear,
                    Arc::new(move |s: &BinaryString| p::subset_weight(s, &sorted) <= capacity),
                )
            }
        };
        Ok(pred)
    }

    /// Tester in the language's natural pivot.
    pub fn tester(&self, n: usize) -> Result<MembershipTester> {
        let (cost, normalized) = self.normalized(n)?;
        let spec = LanguageSpec {
            name: self.name(),
            n,
            pivot: self.natural_pivot(),
            params: self.params(),
        };
        MembershipTester::from_normalized(spec, cost, normalized)
    }

    /// Tester for the requested pivot. Asking for the opposite of the
    /// natural pivot gives the counterpart language with the roles of 0 and
    /// 1 interchanged: `weight_le(k)` becomes "weight at least k",
    /// `lex_le(g)` becomes "at least g", `forbidden_run(t)` forbids `0 1^t`,
    /// `necklace` takes the largest rotation, and so on. Parameters are
    /// complemented here, not by the caller.
    pub fn tester_with_pivot(&self, n: usize, pivot: Pivot) -> Result<MembershipTester> {
        if pivot == self.natural_pivot() {
            return self.tester(n);
        }
        let base = self.counterpart_base(n)?.tester(n)?;
        let spec = LanguageSpec {
            name: self.name(),
            n,
            pivot,
            params: self.params(),
        };
        Ok(base.pivot_wrap().with_spec(spec))
    }

    /// The natural-pivot language whose pivot-wrap is this language's
    /// counterpart.
    pub(crate) fn counterpart_base(&self, n: usize) -> Result<Language> {
        Ok(match self {
            Language::WeightLe { k } => {
                let k = usize::try_from(*k)
                    .ok()
                    .filter(|&k| k <= n)
                    .ok_or_else(|| {
                        Error::param(&self.name(), format!("weight bound exceeds n = {n}"))
                    })?;
                Language::WeightLe { k: (n - k) as u64 }
            }
            Language::LexLe { gamma } => Language::LexLe {
                gamma: gamma.complement(),
            },
            Language::ForbiddenPrefix { gamma } => Language::ForbiddenPrefix {
                gamma: gamma.iter().map(|b| !b).collect(),
            },
            other => other.clone(),
        })
    }
}

/// Sorts item weights non-increasing. Returns the sorted weights and, for
/// each sorted slot, the original item index. Ties keep input order.
pub fn sort_items(weights: &[u64]) -> (Vec<u64>, Vec<usize>) {
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]));
    (order.iter().map(|&i| weights[i]).collect(), order)
}

fn build(lang: Language, n: usize) -> Result<MembershipTester> {
    lang.tester(n)
}

/// Accepts every string.
pub fn all(n: usize) -> Result<MembershipTester> {
    build(Language::All, n)
}

/// Weight at most `k`.
pub fn weight_le(n: usize, k: u64) -> Result<MembershipTester> {
    build(Language::WeightLe { k }, n)
}

/// Lexicographically at most `gamma`.
pub fn lex_le(n: usize, gamma: &BinaryString) -> Result<MembershipTester> {
    build(
        Language::LexLe {
            gamma: gamma.clone(),
        },
        n,
    )
}

/// At most `k` inversions with respect to `0^*1^*`.
pub fn inversions_le(n: usize, k: u64) -> Result<MembershipTester> {
    build(Language::InversionsLe { k }, n)
}

/// At most `k` swaps away from `0^*1^*`.
pub fn transpositions_le(n: usize, k: u64) -> Result<MembershipTester> {
    build(Language::TranspositionsLe { k }, n)
}

/// Smaller than (`strict`) or at most its reversal, complemented or not.
/// `vs_reversal(n, false, false)` is the neckties language.
pub fn vs_reversal(n: usize, strict: bool, complemented: bool) -> Result<MembershipTester> {
    build(
        Language::Reversal {
            strict,
            complemented,
        },
        n,
    )
}

/// No substring `1 0^t`.
pub fn forbidden_run(n: usize, t: usize) -> Result<MembershipTester> {
    build(Language::ForbiddenRun { t }, n)
}

/// No prefix `1 gamma`; `gamma` is `0`/`1` text and may be empty.
pub fn forbidden_prefix(n: usize, gamma: &str) -> Result<MembershipTester> {
    let bits = gamma
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::InvalidBit(other)),
        })
        .collect::<Result<Vec<bool>>>()?;
    build(Language::ForbiddenPrefix { gamma: bits }, n)
}

/// 0-prefix normal words.
pub fn prefix_normal_zero(n: usize) -> Result<MembershipTester> {
    build(Language::PrefixNormal, n)
}

/// Necklaces, smallest-rotation representatives.
pub fn necklace(n: usize) -> Result<MembershipTester> {
    build(Language::Necklace, n)
}

pub fn lyndon(n: usize) -> Result<MembershipTester> {
    build(Language::Lyndon, n)
}

pub fn prenecklace(n: usize) -> Result<MembershipTester> {
    build(Language::Prenecklace, n)
}

/// Pseudo-necklaces with respect to `0^*1^*`.
pub fn pseudo_necklace(n: usize) -> Result<MembershipTester> {
    build(Language::PseudoNecklace, n)
}

/// Left factors of `k_ary`-ary Dyck words (pivot 0).
pub fn dyck_left_factor(n: usize, k_ary: usize) -> Result<MembershipTester> {
    build(Language::DyckLeftFactor { k_ary }, n)
}

/// Complete `k_ary`-ary Dyck words (pivot 0); not a flip-swap language.
pub fn dyck_words(n: usize, k_ary: usize) -> Result<MembershipTester> {
    build(Language::DyckWords { k_ary }, n)
}

/// Feasible 0-1 knapsack subsets. Weights are sorted non-increasing before
/// use, so position `i` holds the `i`-th heaviest item.
pub fn knapsack(n: usize, weights: &[u64], capacity: u64) -> Result<MembershipTester> {
    let (sorted, _) = sort_items(weights);
    build(
        Language::Knapsack {
            weights: sorted,
            capacity,
        },
        n,
    )
}

const PI_DIGITS: [u64; 15] = [3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9];

/// Every flip-swap language in the catalog with a small parameter sweep:
/// `k` in {0, 1, 2, n}, two bound strings, `t` in {1, 2}, Dyck arity in
/// {2, 3} and two knapsack instances. Languages with natural pivot 1 also
/// appear with their pivot-0 counterparts (the knapsack excepted).
pub fn registry_languages(n: usize) -> Vec<(Language, Pivot)> {
    let mut ks: Vec<u64> = vec![0, 1, 2, n as u64];
    ks.retain(|&k| k <= n as u64);
    ks.sort_unstable();
    ks.dedup();

    let mut lex_gammas: Vec<BinaryString> = Vec::new();
    let spread = if n == 1 {
        BinaryString::zeros(1).unwrap()
    } else {
        BinaryString::from_bits((1..=n).map(|i| i == 1 || i == n)).unwrap()
    };
    lex_gammas.push(spread);
    let alternating = BinaryString::from_bits((1..=n).map(|i| i % 2 == 1)).unwrap();
    if !lex_gammas.contains(&alternating) {
        lex_gammas.push(alternating);
    }

    let mut prefix_gammas: Vec<Vec<bool>> = vec![Vec::new()];
    let short: Vec<bool> = [false, true].into_iter().take(n - 1).collect();
    if !short.is_empty() {
        prefix_gammas.push(short);
    }

    let mut pivot_one: Vec<Language> = vec![Language::All];
    pivot_one.extend(ks.iter().map(|&k| Language::WeightLe { k }));
    pivot_one.extend(
        lex_gammas
            .into_iter()
            .map(|gamma| Language::LexLe { gamma }),
    );
    pivot_one.extend(ks.iter().map(|&k| Language::InversionsLe { k }));
    pivot_one.extend(ks.iter().map(|&k| Language::TranspositionsLe { k }));
    for strict in [true, false] {
        for complemented in [false, true] {
            pivot_one.push(Language::Reversal {
                strict,
                complemented,
            });
        }
    }
    pivot_one.extend([1, 2].map(|t| Language::ForbiddenRun { t }));
    pivot_one.extend(
        prefix_gammas
            .into_iter()
            .map(|gamma| Language::ForbiddenPrefix { gamma }),
    );
    pivot_one.extend([
        Language::PrefixNormal,
        Language::Necklace,
        Language::Lyndon,
        Language::Prenecklace,
        Language::PseudoNecklace,
    ]);

    let mut out: Vec<(Language, Pivot)> = Vec::new();
    for lang in &pivot_one {
        out.push((lang.clone(), Pivot::One));
    }
    for lang in pivot_one {
        out.push((lang, Pivot::Zero));
    }
    for k_ary in [2, 3] {
        out.push((Language::DyckLeftFactor { k_ary }, Pivot::Zero));
    }
    let linear: Vec<u64> = (1..=n as u64).collect();
    out.push((
        Language::Knapsack {
            weights: sort_items(&linear).0,
            capacity: n as u64,
        },
        Pivot::One,
    ));
    let digits: Vec<u64> = (0..n).map(|i| PI_DIGITS[i % PI_DIGITS.len()]).collect();
    let half = digits.iter().sum::<u64>() / 2;
    out.push((
        Language::Knapsack {
            weights: sort_items(&digits).0,
            capacity: half,
        },
        Pivot::One,
    ));
    out
}

/// Testers for [`registry_languages`].
pub fn registry(n: usize) -> Vec<MembershipTester> {
    registry_languages(n)
        .into_iter()
        .map(|(lang, pivot)| {
            lang.tester_with_pivot(n, pivot)
                .unwrap_or_else(|e| panic!("registry entry {} at n={n}: {e}", lang.name()))
        })
        .collect()
}
