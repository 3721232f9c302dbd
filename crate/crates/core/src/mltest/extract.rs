use std::fmt;

use super::MlTestError;
use crate::bitspace::{BitString, DepthCap, OpenSet};
use crate::Dyadic;

/// How the cover was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtractCase {
    /// A generator `σ` of `P` with `μ(U|σ) < 1`; the cover is `U|σ`.
    Localized { sigma: BitString },
    /// Every generator of `P` lies inside `U`; the cover is the union of the
    /// minimal `[σ]` with `μ(U|σ) ≥ 1 - ε`.
    Dense { epsilon: Dyadic },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub cover: OpenSet,
    pub case: ExtractCase,
}

impl fmt::Display for Extraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.case {
            ExtractCase::Localized { sigma } => writeln!(f, "# case 1 sigma {sigma}")?,
            ExtractCase::Dense { epsilon } => writeln!(f, "# case 2 epsilon {epsilon}")?,
        }
        writeln!(f, "# measure {}", self.cover.measure())?;
        write!(f, "{}", self.cover)
    }
}

/// From `P × P ⊆ U` with `μU < 1`, an open `V ⊇ P` with `μV < 1`.
pub fn extract_cover(p: &OpenSet, u: &OpenSet, cap: DepthCap) -> Result<Extraction, MlTestError> {
    let mu = u.measure();
    if mu.is_one() {
        return Err(MlTestError::PreconditionFailed(
            "the open set has measure 1".into(),
        ));
    }
    if !p.product(p, cap)?.subset(u) {
        return Err(MlTestError::PreconditionFailed(
            "the square of P is not contained in U".into(),
        ));
    }
    for sigma in p.generators() {
        if !u.local_measure(sigma).is_one() {
            return Ok(Extraction {
                cover: u.localize(sigma),
                case: ExtractCase::Localized {
                    sigma: sigma.clone(),
                },
            });
        }
    }
    let mut j = 1;
    let epsilon = loop {
        let e = Dyadic::pow2_neg(j);
        if mu < e.complement().expect("e <= 1") {
            break e;
        }
        j += 1;
    };
    let threshold = epsilon.complement().expect("e <= 1");
    Ok(Extraction {
        cover: u.dense_cylinders(&threshold),
        case: ExtractCase::Dense { epsilon },
    })
}

/// Record of an iterated extraction from `P^n ⊆ U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IteratedExtraction {
    /// The least power of two `≥ n`.
    pub seed_exponent: u32,
    /// Exponent of `P` on the left of each step, with its result; the
    /// last cover contains `P` itself.
    pub steps: Vec<(u32, Extraction)>,
}

impl IteratedExtraction {
    pub fn cover(&self) -> &OpenSet {
        &self.steps.last().expect("at least one step").1.cover
    }
}

impl fmt::Display for IteratedExtraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# seed P^{}", self.seed_exponent)?;
        for (e, step) in &self.steps {
            let case = match &step.case {
                ExtractCase::Localized { sigma } => format!("case 1 sigma {sigma}"),
                ExtractCase::Dense { epsilon } => format!("case 2 epsilon {epsilon}"),
            };
            writeln!(f, "# P^{e} {case} measure {}", step.cover.measure())?;
        }
        write!(f, "{}", self.cover())
    }
}

/// From `P^n ⊆ U` with `μU < 1` and `n ≥ 2`, an open `V ⊇ P` with `μV < 1`,
/// by halving the exponent from the least power of two `≥ n`.
pub fn iterate_extract(
    p: &OpenSet,
    u: &OpenSet,
    n: u32,
    cap: DepthCap,
) -> Result<IteratedExtraction, MlTestError> {
    if n < 2 {
        return Err(MlTestError::PreconditionFailed(format!(
            "exponent {n} is below 2"
        )));
    }
    let pn = p.power(n, cap)?;
    if !pn.subset(u) {
        return Err(MlTestError::PreconditionFailed(format!(
            "P^{n} is not contained in U"
        )));
    }
    let seed = n.next_power_of_two();
    if seed != n && !p.power(seed, cap)?.subset(&pn) {
        return Err(MlTestError::PowerNotNested {
            higher: seed,
            lower: n,
        });
    }
    let mut steps = Vec::new();
    let mut current = u.clone();
    let mut e = seed / 2;
    while e >= 1 {
        let step = extract_cover(&p.power(e, cap)?, &current, cap)?;
        current = step.cover.clone();
        steps.push((e, step));
        e /= 2;
    }
    Ok(IteratedExtraction {
        seed_exponent: seed,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitspace::CodeSet;

    const CAP: DepthCap = DepthCap(64);

    fn open(list: &[&str]) -> OpenSet {
        OpenSet::new(CodeSet::new(list.iter().map(|s| s.parse().unwrap()), CAP).unwrap())
    }

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn localized_case() {
        let x = extract_cover(&open(&["0"]), &open(&["00"]), CAP).unwrap();
        assert_eq!(
            x.case,
            ExtractCase::Localized {
                sigma: "0".parse().unwrap()
            }
        );
        assert_eq!(x.cover, open(&["0"]));
        assert_eq!(x.cover.measure(), d("1/2^1"));
    }

    #[test]
    fn dense_case() {
        let u = open(&["00", "010"]);
        assert_eq!(u.measure(), d("3/2^3"));
        let x = extract_cover(&open(&["00"]), &u, CAP).unwrap();
        assert_eq!(
            x.case,
            ExtractCase::Dense {
                epsilon: d("1/2^1")
            }
        );
        assert_eq!(x.cover, open(&["0"]));
        assert!(open(&["00"]).subset(&x.cover));
    }

    /// The dense cover against an exhaustive scan of `μ(U|σ)` by depth.
    #[test]
    fn dense_cover_matches_scan() {
        let u = open(&["00", "010", "1101", "111"]);
        let threshold = d("3/2^2");
        let got = u.dense_cylinders(&threshold);
        let mut minimal: Vec<BitString> = Vec::new();
        for len in 0..=u.depth() {
            for s in BitString::all_of_length(len) {
                if u.local_measure(&s) >= threshold && !minimal.iter().any(|m| m.is_prefix_of(&s)) {
                    minimal.push(s);
                }
            }
        }
        let want = OpenSet::new(CodeSet::new(minimal, CAP).unwrap());
        assert!(got.same_set(&want));
        assert_eq!(got.code(), want.code());
    }

    #[test]
    fn empty_p() {
        let u = open(&["01"]);
        let x = extract_cover(&OpenSet::empty(), &u, CAP).unwrap();
        assert!(x.cover.measure() < Dyadic::one());
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            extract_cover(&open(&["0"]), &OpenSet::whole(), CAP),
            Err(MlTestError::PreconditionFailed(_))
        ));
        assert!(matches!(
            extract_cover(&open(&["0"]), &open(&["01"]), CAP),
            Err(MlTestError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn iterate_exponents() {
        let p = open(&["0"]);
        for n in 2..=5u32 {
            let u = p.power(n, CAP).unwrap();
            let it = iterate_extract(&p, &u, n, CAP).unwrap();
            assert_eq!(it.seed_exponent, n.next_power_of_two());
            assert_eq!(it.steps.len() as u32, it.seed_exponent.trailing_zeros());
            assert!(p.subset(it.cover()));
            assert!(it.cover().measure() < Dyadic::one());
        }
        let it = iterate_extract(&p, &open(&["00"]), 2, CAP).unwrap();
        assert_eq!(it.steps.len(), 1);
        assert!(matches!(
            iterate_extract(&p, &open(&["00"]), 1, CAP),
            Err(MlTestError::PreconditionFailed(_))
        ));
    }
}
