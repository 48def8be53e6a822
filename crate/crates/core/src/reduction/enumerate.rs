use std::collections::BTreeSet;

use super::{ReductionError, TerminalPattern};
use crate::model::PointPattern;
use crate::rigidity::index_from_patterns;

/// Largest matrix size the enumerator accepts.
pub const MAX_ENUMERATION_SIZE: usize = 12;

/// A pattern produced by [`enumerate_terminals`]. Whether a tuple with this
/// pattern actually exists is not decided here.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EnumeratedPattern {
    pub pattern: TerminalPattern,
    pub realizability_unknown: bool,
}

/// Partitions of `n` in descending order, each descending.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every point pattern of size `n`: multisets of blocks, each block an
/// outer multiplicity with a partition of it.
pub fn point_patterns(n: usize) -> Vec<PointPattern> {
    let mut kinds: Vec<(usize, Vec<usize>)> = Vec::new();
    for s in 1..=n {
        for p in partitions(s) {
            kinds.push((s, p));
        }
    }
    kinds.sort_by(|a, b| b.cmp(a));
    fn go(
        kinds: &[(usize, Vec<usize>)],
        start: usize,
        left: usize,
        acc: &mut Vec<(usize, Vec<usize>)>,
        out: &mut Vec<PointPattern>,
    ) {
        if left == 0 {
            out.push(PointPattern::new(acc.clone()));
            return;
        }
        for k in start..kinds.len() {
            if kinds[k].0 <= left {
                acc.push(kinds[k].clone());
                go(kinds, k, left - kinds[k].0, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&kinds, 0, n, &mut Vec::new(), &mut out);
    out
}

/// A point pattern for which the pivot bound `s <= n max_l (n_l + n_{l,1})`
/// is an equality, where `s` is the commutant dimension.
fn is_balanced(p: &PointPattern, n: usize) -> bool {
    p.commutant_dim() == n * p.max_kernel()
}

/// All patterns on `r + 1` points with matrices of size at most `n_max`
/// that have index zero and at which no addition and middle convolution
/// step can lower the size.
pub fn enumerate_terminals(r: usize, n_max: usize) -> Result<Vec<EnumeratedPattern>, ReductionError> {
    if r == 0 || n_max > MAX_ENUMERATION_SIZE {
        return Err(ReductionError::EnumerationBounds { r, n_max, limit: MAX_ENUMERATION_SIZE });
    }
    let mut found = BTreeSet::new();
    for n in 1..=n_max {
        let candidates: Vec<PointPattern> =
            point_patterns(n).into_iter().filter(|p| !p.is_scalar() && is_balanced(p, n)).collect();
        let target = 2 * r * n;
        let mut chosen = Vec::with_capacity(r + 1);
        combine(&candidates, 0, r + 1, target, &mut chosen, &mut |pts| {
            if index_from_patterns(pts, r, n) == 0 {
                found.insert(TerminalPattern::new(pts));
            }
        });
    }
    Ok(found.into_iter().map(|pattern| EnumeratedPattern { pattern, realizability_unknown: true }).collect())
}

fn combine(
    cands: &[PointPattern],
    start: usize,
    left: usize,
    target: usize,
    chosen: &mut Vec<PointPattern>,
    emit: &mut dyn FnMut(&[PointPattern]),
) {
    if left == 0 {
        if target == 0 {
            emit(chosen);
        }
        return;
    }
    for k in start..cands.len() {
        let w = cands[k].max_kernel();
        if w <= target {
            chosen.push(cands[k].clone());
            combine(cands, k, left - 1, target - w, chosen, emit);
            chosen.pop();
        }
    }
}
