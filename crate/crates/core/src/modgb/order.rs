//! Orders on module terms (monomial, position).

use std::cmp::Ordering;

use crate::polyring::{Monomial, MonomialOrder};

/// A term order on a free module R^rank.
///
/// Positions tie-break with the lowest index largest throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModOrder {
    /// Term over position: monomials first under the given order.
    Top(MonomialOrder),
    /// Positions below `split` dominate every term in later positions;
    /// within a block, term over position. Used for stacked syzygy
    /// computations, where the leading block must be eliminated.
    BlockPot { split: usize, mono: MonomialOrder },
    /// The last `tags` variables dominate: any term containing a tag
    /// variable is greater than any tag-free term, regardless of position.
    /// Used for tag-variable elimination.
    Elim { tags: usize, mono: MonomialOrder },
}

impl ModOrder {
    pub fn mono(&self) -> MonomialOrder {
        match self {
            ModOrder::Top(m) | ModOrder::BlockPot { mono: m, .. } | ModOrder::Elim { mono: m, .. } => *m,
        }
    }

    fn tag_degree(m: &Monomial, tags: usize) -> u64 {
        let n = m.exps.len();
        m.exps[n - tags..].iter().map(|&e| u64::from(e)).sum()
    }

    /// Compares module terms; greater means closer to the leading term.
    pub fn cmp(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        match self {
            ModOrder::Top(mono) => mono
                .cmp(a.0, b.0)
                .then_with(|| b.1.cmp(&a.1)),
            ModOrder::BlockPot { split, mono } => {
                let (ba, bb) = (a.1 < *split, b.1 < *split);
                bb.cmp(&ba)
                    .reverse()
                    .then_with(|| mono.cmp(a.0, b.0))
                    .then_with(|| b.1.cmp(&a.1))
            }
            ModOrder::Elim { tags, mono } => Self::tag_degree(a.0, *tags)
                .cmp(&Self::tag_degree(b.0, *tags))
                .then_with(|| mono.cmp(a.0, b.0))
                .then_with(|| b.1.cmp(&a.1)),
        }
    }
}
