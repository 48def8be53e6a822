use std::fmt;

use crate::model::PointPattern;

/// Multiplicity patterns of all points of a tuple, sorted, with the common
/// divisor `d` of every multiplicity extracted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TerminalPattern {
    /// Point patterns divided by `d`, sorted descending.
    pub points: Vec<PointPattern>,
    pub d: usize,
}

impl TerminalPattern {
    pub fn new(points: &[PointPattern]) -> Self {
        let d = points.iter().map(PointPattern::gcd).fold(0, num_integer::gcd).max(1);
        let mut base: Vec<PointPattern> = points.iter().map(|p| p.divided(d)).collect();
        base.sort_by(|a, b| b.cmp(a));
        TerminalPattern { points: base, d }
    }

    /// Size of the matrices the undivided pattern describes.
    pub fn size(&self) -> usize {
        self.points.first().map_or(0, |p| p.size() * self.d)
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    /// The patterns with `d` multiplied back in.
    pub fn instantiated(&self) -> Vec<PointPattern> {
        self.points.iter().map(|p| p.scaled(self.d)).collect()
    }
}

impl fmt::Display for TerminalPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}} with d={}", parts.join(", "), self.d)
    }
}

/// Parses the textual pattern notation: `(a,b,..)` for a single block whose
/// inner multiplicities are `a,b,..`, or `(n1,n2,..)-((..),(..),..)` for
/// several blocks. Entries may be written `d`, `2d`, ... and are evaluated
/// at the given `d`; plain integers are taken literally.
pub fn parse_point_pattern(s: &str, d: usize) -> Option<PointPattern> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let entry = |tok: &str| -> Option<usize> {
        match tok.strip_suffix('d') {
            Some("") => Some(d),
            Some(k) => k.parse::<usize>().ok().map(|k| k * d),
            None => tok.parse().ok(),
        }
    };
    let list = |body: &str| -> Option<Vec<usize>> {
        let inner = body.strip_prefix('(')?.strip_suffix(')')?;
        inner.split(',').map(entry).collect()
    };
    match s.split_once("-(") {
        None => {
            let inner = list(&s)?;
            Some(PointPattern::new(vec![(inner.iter().sum(), inner)]))
        }
        Some((outer, rest)) => {
            let outer = list(outer)?;
            let rest = rest.strip_suffix(')')?;
            let groups: Vec<Vec<usize>> = rest
                .split("),(")
                .map(|g| list(&format!("({})", g.trim_start_matches('(').trim_end_matches(')'))))
                .collect::<Option<_>>()?;
            if groups.len() != outer.len() {
                return None;
            }
            for (n, g) in outer.iter().zip(&groups) {
                if g.iter().sum::<usize>() != *n {
                    return None;
                }
            }
            Some(PointPattern::new(outer.into_iter().zip(groups).collect()))
        }
    }
}
