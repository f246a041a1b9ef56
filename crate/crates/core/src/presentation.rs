//! Finite group presentations: words, homomorphism counting, and
//! abelianization invariants.

use crate::group::FiniteGroup;
use crate::perm::Perm;
use crate::snf;
use crate::{Error, Result};

/// A word over presentation generators: entry `k > 0` means generator
/// `k-1`, entry `-k` its inverse.
pub type Word = Vec<i64>;

/// A finite presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

/// Abelianization data: invariant factors `d_1 | d_2 | ...` (each > 1)
/// plus free rank.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct AbelianInvariants {
    pub torsion: Vec<u64>,
    pub rank: usize,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Presentation> {
        let n = generators.len() as i64;
        for r in &relators {
            for &l in r {
                if l == 0 || l.abs() > n {
                    return Err(Error::Validation(format!(
                        "relator letter {} out of range for {} generators",
                        l, n
                    )));
                }
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Evaluates a word under an assignment of generator images.
    pub fn evaluate(word: &Word, images: &[Perm], degree: usize) -> Perm {
        let mut acc = Perm::identity(degree);
        for &l in word {
            let g = &images[(l.unsigned_abs() - 1) as usize];
            if l > 0 {
                acc = acc.compose(g);
            } else {
                acc = acc.compose(&g.inverse());
            }
        }
        acc
    }
}

pub const DEFAULT_HOM_COUNT_CAP: u64 = 100_000_000;

/// Number of assignments of generators to elements of `t` satisfying
/// all relators, i.e. `|Hom(P, t)|`. Backtracking with relator pruning:
/// a relator is checked as soon as its last generator is assigned.
pub fn hom_count(p: &Presentation, t: &FiniteGroup, cap: u64) -> Result<u64> {
    let n = p.generators.len();
    let size = t.order();
    let mut space = 1u64;
    for _ in 0..n {
        space = space
            .checked_mul(size)
            .filter(|&s| s <= cap)
            .ok_or_else(|| Error::Resource(format!("|T|^{} exceeds cap {}", n, cap)))?;
    }
    // relators indexed by the last generator they mention
    let mut due: Vec<Vec<&Word>> = vec![Vec::new(); n + 1];
    for r in &p.relators {
        let last = r.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0);
        due[last].push(r);
    }
    let degree = t.degree();
    let empty_ok = due[0]
        .iter()
        .all(|r| Presentation::evaluate(r, &[], degree).is_identity());
    if !empty_ok {
        return Ok(0);
    }
    let mut images: Vec<Perm> = Vec::with_capacity(n);
    fn rec(
        pos: usize,
        n: usize,
        t: &FiniteGroup,
        due: &[Vec<&Word>],
        images: &mut Vec<Perm>,
    ) -> u64 {
        if pos == n {
            return 1;
        }
        let mut count = 0;
        for cand in t.elements() {
            images.push(cand.clone());
            let ok = due[pos + 1]
                .iter()
                .all(|r| Presentation::evaluate(r, images, t.degree()).is_identity());
            if ok {
                count += rec(pos + 1, n, t, due, images);
            }
            images.pop();
        }
        count
    }
    Ok(rec(0, n, t, &due, &mut images))
}

/// Invariant factor decomposition of the abelianized group.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let cols = p.generators.len();
    let matrix: Vec<Vec<i128>> = p
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![0i128; cols];
            for &l in r {
                let idx = (l.unsigned_abs() - 1) as usize;
                row[idx] += if l > 0 { 1 } else { -1 };
            }
            row
        })
        .collect();
    let (torsion, rank) = snf::cokernel_invariants(matrix, cols);
    AbelianInvariants { torsion, rank }
}
