//! The terminal patterns of index zero, in the parametrized notation parsed
//! by [`parse_point_pattern`](super::parse_point_pattern).

use super::pattern::{parse_point_pattern, TerminalPattern};

pub struct CatalogEntry {
    pub group: &'static str,
    pub points: &'static [&'static str],
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { group: "four singularities", points: &["(d,d)", "(d,d)", "(d,d)", "(d,d)"] },
    CatalogEntry { group: "three singularities", points: &["(d,d,d)", "(d,d,d)", "(d,d,d)"] },
    CatalogEntry { group: "three singularities", points: &["(2d,2d)", "(d,d,d,d)", "(d,d,d,d)"] },
    CatalogEntry { group: "three singularities", points: &["(3d,3d)", "(2d,2d,2d)", "(d,d,d,d,d,d)"] },
    CatalogEntry { group: "three singularities", points: &["(d,d)-((d),(d))", "(d,d)", "(d,d)"] },
    CatalogEntry { group: "two singularities", points: &["(d,d)-((d),(d))", "(d,d)-((d),(d))"] },
    CatalogEntry { group: "two singularities", points: &["(d,d,d)-((d),(d),(d))", "(d,d,d)"] },
    CatalogEntry { group: "two singularities", points: &["(d,d,d,d)-((d),(d),(d),(d))", "(2d,2d)"] },
    CatalogEntry { group: "two singularities", points: &["(2d,2d)-((d,d),(d,d))", "(d,d,d,d)"] },
    CatalogEntry { group: "two singularities", points: &["(3d,2d)-((d,d,d),(2d))", "(d,d,d,d,d)"] },
    CatalogEntry { group: "two singularities", points: &["(2d,2d,2d)-((d,d),(d,d),(d,d))", "(3d,3d)"] },
    CatalogEntry { group: "two singularities", points: &["(3d,3d,2d)-((d,d,d),(d,d,d),(2d))", "(4d,4d)"] },
    CatalogEntry { group: "two singularities", points: &["(5d,4d,3d)-((d,d,d,d,d),(2d,2d),(3d))", "(6d,6d)"] },
    CatalogEntry { group: "two singularities", points: &["(5d,4d)-((d,d,d,d,d),(2d,2d))", "(3d,3d,3d)"] },
    CatalogEntry { group: "two singularities", points: &["(3d,3d)-((d,d,d),(d,d,d))", "(2d,2d,2d)"] },
    CatalogEntry { group: "two singularities", points: &["(5d,3d)-((d,d,d,d,d),(3d))", "(2d,2d,2d,2d)"] },
    CatalogEntry { group: "two singularities", points: &["(4d,3d)-((2d,2d),(3d))", "(d,d,d,d,d,d,d)"] },
];

impl CatalogEntry {
    /// The entry with `d = 1`, normalized.
    pub fn base(&self) -> TerminalPattern {
        let pts: Vec<_> = self.points.iter().map(|s| parse_point_pattern(s, 1).expect("catalog entry parses")).collect();
        TerminalPattern::new(&pts)
    }

    /// Matrix size at `d = 1`.
    pub fn base_size(&self) -> usize {
        self.base().size()
    }

    pub fn instantiate(&self, d: usize) -> TerminalPattern {
        let base = self.base();
        TerminalPattern { points: base.points, d }
    }

    pub fn label(&self) -> String {
        format!("{}: {{{}}}", self.group, self.points.join(", "))
    }
}

/// Result of matching a terminal pattern against the catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Cataloged { entry: usize, d: usize, label: String },
    Uncataloged,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::Cataloged { d, label, .. } => write!(f, "{label}, d={d}"),
            Classification::Uncataloged => write!(f, "uncataloged"),
        }
    }
}

/// Looks the pattern up in the catalog, up to point order and scaling.
pub fn classify_terminal(p: &TerminalPattern) -> Classification {
    for (k, e) in CATALOG.iter().enumerate() {
        let base = e.base();
        // the catalog bases are primitive, so equality after gcd extraction
        // decides membership for every d
        if base.d == 1 && base.points == p.points {
            return Classification::Cataloged { entry: k, d: p.d, label: e.label() };
        }
    }
    Classification::Uncataloged
}
