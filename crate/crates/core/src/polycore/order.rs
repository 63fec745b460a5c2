//! Monomial orders with an explicit variable priority.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::poly::Ring;
use super::PolyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    /// Pure lexicographic.
    Lex,
    /// Total degree, ties broken lexicographically.
    Grlex,
    /// Total degree, ties broken by the smallest exponent in the lowest
    /// priority variable.
    Grevlex,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Lex => "lex",
            OrderKind::Grlex => "grlex",
            OrderKind::Grevlex => "grevlex",
        }
    }
}

/// A monomial order on a specific ring.
///
/// `priority` lists ring variable indices from most to least significant,
/// so `lex` with priority `[2, 0, 1]` means `x2 > x0 > x1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, priority: Vec<usize>) -> Result<Self, PolyError> {
        let mut seen = vec![false; priority.len()];
        for &p in &priority {
            if p >= seen.len() || seen[p] {
                return Err(PolyError::InvalidOrder(format!(
                    "priority {priority:?} is not a permutation"
                )));
            }
            seen[p] = true;
        }
        Ok(MonomialOrder { kind, priority })
    }

    /// `kind` with the ring's declaration order as priority.
    pub fn declaration(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder {
            kind,
            priority: (0..nvars).collect(),
        }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::declaration(OrderKind::Grevlex, nvars)
    }

    pub fn lex(nvars: usize) -> Self {
        Self::declaration(OrderKind::Lex, nvars)
    }

    /// Order whose priority names every ring variable exactly once.
    pub fn from_names<S: AsRef<str>>(
        kind: OrderKind,
        ring: &Ring,
        names: &[S],
    ) -> Result<Self, PolyError> {
        if names.len() != ring.len() {
            return Err(PolyError::InvalidOrder(format!(
                "order names {} variables but the ring has {}",
                names.len(),
                ring.len()
            )));
        }
        let priority = names
            .iter()
            .map(|n| {
                ring.index_of(n.as_ref())
                    .ok_or_else(|| PolyError::UnknownVariable(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(kind, priority)
    }

    /// Parses `lex:a,b,c`, `grlex:...`, `grevlex:...` or a bare kind name
    /// (declaration order).
    pub fn parse(spec: &str, ring: &Ring) -> Result<Self, PolyError> {
        let (kind, rest) = match spec.split_once(':') {
            Some((k, r)) => (k.trim(), Some(r)),
            None => (spec.trim(), None),
        };
        let kind = match kind {
            "lex" | "plex" => OrderKind::Lex,
            "grlex" => OrderKind::Grlex,
            "grevlex" | "tdeg" => OrderKind::Grevlex,
            other => {
                return Err(PolyError::InvalidOrder(format!(
                    "unknown order kind `{other}`"
                )))
            }
        };
        match rest {
            None => Ok(Self::declaration(kind, ring.len())),
            Some(list) => {
                let names: Vec<&str> = list
                    .split([',', '>'])
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .collect();
                Self::from_names(kind, ring, &names)
            }
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => self.cmp_lex(a, b),
            OrderKind::Grlex => a.degree().cmp(&b.degree()).then_with(|| self.cmp_lex(a, b)),
            OrderKind::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for &v in self.priority.iter().rev() {
                    match a.exponent(v).cmp(&b.exponent(v)) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }

    fn cmp_lex(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &v in &self.priority {
            match a.exponent(v).cmp(&b.exponent(v)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Human-readable form such as `lex: k21 > k32 > k01`.
    pub fn describe(&self, ring: &Ring) -> String {
        let names: Vec<&str> = self
            .priority
            .iter()
            .map(|&i| ring.vars()[i].as_str())
            .collect();
        format!("{}: {}", self.kind.name(), names.join(" > "))
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.priority.iter().map(|i| i.to_string()).collect();
        write!(f, "{}:{}", self.kind.name(), p.join(","))
    }
}
