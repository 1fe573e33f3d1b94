//! Canonical cell labels.
//!
//! Labels order cells within a dimension and serialize to unambiguous
//! strings: simplices as dot-joined vertex lists (`"0.2.5"`), cube cells as
//! sign words (`"+-*"`), poset chains in braces (`"{1<13}"`), product cells
//! as `"(left)x(right)"`.

use std::fmt;
use std::str::FromStr;

/// One symbol of a cube-cell word; the order `- < + < *` fixes the canonical
/// cell order of cube complexes.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CubeSym {
    Minus,
    Plus,
    Star,
}

impl CubeSym {
    fn as_char(self) -> char {
        match self {
            CubeSym::Minus => '-',
            CubeSym::Plus => '+',
            CubeSym::Star => '*',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            '-' => Some(CubeSym::Minus),
            '+' => Some(CubeSym::Plus),
            '*' => Some(CubeSym::Star),
            _ => None,
        }
    }
}

/// Canonical label of a cell.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CellLabel {
    /// Strictly increasing vertex tuple of a simplex.
    Simplex(Vec<u32>),
    /// Cube cell: one symbol per ambient coordinate, `Star` marks a free
    /// coordinate; the cell dimension is the number of stars.
    Cube(Vec<CubeSym>),
    /// Chain of poset elements, bottom to top, referenced by name.
    Chain(Vec<String>),
    /// Product cell (left factor, right factor).
    Product(Box<CellLabel>, Box<CellLabel>),
}

impl CellLabel {
    #[must_use]
    pub fn simplex(vertices: &[u32]) -> Self {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        v.dedup();
        assert_eq!(v.len(), vertices.len(), "simplex vertices must be distinct");
        CellLabel::Simplex(v)
    }

    /// Dimension implied by the label shape.
    #[must_use]
    pub fn dim(&self) -> usize {
        match self {
            CellLabel::Simplex(v) => {
                assert!(!v.is_empty(), "empty simplex label");
                v.len() - 1
            }
            CellLabel::Cube(w) => w.iter().filter(|&&s| s == CubeSym::Star).count(),
            CellLabel::Chain(c) => {
                assert!(!c.is_empty(), "empty chain label");
                c.len() - 1
            }
            CellLabel::Product(a, b) => a.dim() + b.dim(),
        }
    }
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellLabel::Simplex(v) => {
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ".")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            CellLabel::Cube(w) => {
                for s in w {
                    write!(f, "{}", s.as_char())?;
                }
                Ok(())
            }
            CellLabel::Chain(c) => {
                write!(f, "{{")?;
                for (i, name) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, "<")?;
                    }
                    write!(f, "{name}")?;
                }
                write!(f, "}}")
            }
            CellLabel::Product(a, b) => write!(f, "({a})x({b})"),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("unparseable cell label: {0}")]
pub struct LabelParseError(pub String);

impl FromStr for CellLabel {
    type Err = LabelParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || LabelParseError(s.to_string());
        if let Some(inner) = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
            let parts: Vec<String> = inner.split('<').map(str::to_string).collect();
            if parts.iter().any(String::is_empty) {
                return Err(err());
            }
            return Ok(CellLabel::Chain(parts));
        }
        if s.starts_with('(') {
            // Split "(left)x(right)" at the top-level ")x(" separator.
            let mut depth = 0usize;
            let bytes = s.as_bytes();
            for i in 0..bytes.len() {
                match bytes[i] {
                    b'(' => depth += 1,
                    b')' => {
                        depth = depth.checked_sub(1).ok_or_else(err)?;
                        if depth == 0 {
                            let left = &s[1..i];
                            let rest = &s[i + 1..];
                            let right = rest
                                .strip_prefix("x(")
                                .and_then(|t| t.strip_suffix(')'))
                                .ok_or_else(err)?;
                            return Ok(CellLabel::Product(
                                Box::new(left.parse()?),
                                Box::new(right.parse()?),
                            ));
                        }
                    }
                    _ => {}
                }
            }
            return Err(err());
        }
        if !s.is_empty() && s.chars().all(|c| CubeSym::from_char(c).is_some()) {
            return Ok(CellLabel::Cube(
                s.chars().map(|c| CubeSym::from_char(c).unwrap()).collect(),
            ));
        }
        let verts: Result<Vec<u32>, _> = s.split('.').map(str::parse).collect();
        match verts {
            Ok(v) if !v.is_empty() && v.windows(2).all(|p| p[0] < p[1]) => {
                Ok(CellLabel::Simplex(v))
            }
            _ => Err(err()),
        }
    }
}
