//! Finite groups given by Cayley tables, with the identity at index 0.

pub(crate) mod builtin;
mod classes;
mod spec;

pub use classes::{center_structure, commutator_subgroup, conjugacy_classes, CenterStructure, ConjugacyPartition};
pub use spec::{build_group, GroupSpec};

use std::collections::HashSet;
use std::fmt;

use crate::error::GroupError;

pub const MAX_ORDER: usize = 256;
const EXHAUSTIVE_ASSOCIATIVITY: usize = 64;

/// Where a group came from; selects catalog representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Cyclic(usize),
    Product(Vec<Origin>),
    S3,
    Q8,
    Klein4,
    A4,
    Custom,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Cyclic(n) => write!(f, "C{n}"),
            Origin::Product(parts) => {
                let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", names.join("x"))
            }
            Origin::S3 => write!(f, "S3"),
            Origin::Q8 => write!(f, "Q8"),
            Origin::Klein4 => write!(f, "V4"),
            Origin::A4 => write!(f, "A4"),
            Origin::Custom => write!(f, "custom"),
        }
    }
}

/// A validated finite group. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGroup {
    origin: Origin,
    cayley: Vec<Vec<usize>>,
    labels: Vec<String>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table (`cayley[i][j]` is the index of `g_i g_j`)
    /// and builds the group. Laws are checked in the order identity, Latin
    /// square, inverses, associativity; the first violation is reported.
    pub fn from_cayley(cayley: Vec<Vec<usize>>, labels: Option<Vec<String>>, origin: Origin) -> Result<Self, GroupError> {
        let n = cayley.len();
        if n == 0 || n > MAX_ORDER {
            return Err(GroupError::UnsupportedOrder(n));
        }
        for (row, r) in cayley.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare { row, len: r.len(), expected: n });
            }
            if let Some(col) = r.iter().position(|&v| v >= n) {
                return Err(GroupError::EntryOutOfRange { row, col, value: r[col] });
            }
        }
        let labels = match labels {
            Some(l) if l.len() != n => return Err(GroupError::Labels { got: l.len(), expected: n }),
            Some(l) => l,
            None => (1..=n).map(|i| format!("g{i}")).collect(),
        };
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(GroupError::DuplicateLabel(dup.clone()));
        }
        for i in 0..n {
            if cayley[0][i] != i || cayley[i][0] != i {
                return Err(GroupError::Identity(i));
            }
        }
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut row[cayley[i][j]], true) {
                    return Err(GroupError::LatinSquare(format!("row {i} repeats element {}", cayley[i][j])));
                }
                if std::mem::replace(&mut col[cayley[j][i]], true) {
                    return Err(GroupError::LatinSquare(format!("column {i} repeats element {}", cayley[j][i])));
                }
            }
        }
        let mut inverse = vec![0; n];
        for i in 0..n {
            let j = cayley[i].iter().position(|&v| v == 0).expect("latin rows contain the identity");
            if cayley[j][i] != 0 {
                return Err(GroupError::Inverse(i));
            }
            inverse[i] = j;
        }
        let group = FiniteGroup { origin, cayley, labels, inverse };
        group.check_associativity()?;
        Ok(group)
    }

    fn check_associativity(&self) -> Result<(), GroupError> {
        let n = self.order();
        let middles: Vec<usize> =
            if n <= EXHAUSTIVE_ASSOCIATIVITY { (0..n).collect() } else { self.greedy_generators() };
        // Light's test: the elements `s` with x(sy) = (xs)y for all x, y are
        // closed under the operation, so checking a generating set suffices.
        for x in 0..n {
            for &s in &middles {
                let xs = self.cayley[x][s];
                for y in 0..n {
                    if self.cayley[x][self.cayley[s][y]] != self.cayley[xs][y] {
                        return Err(GroupError::Associativity(x, s, y));
                    }
                }
            }
        }
        Ok(())
    }

    /// Generating set chosen greedily: repeatedly add the smallest element
    /// outside the closure of the current set under multiplication.
    fn greedy_generators(&self) -> Vec<usize> {
        let n = self.order();
        let mut gens = Vec::new();
        let mut reached = vec![false; n];
        reached[0] = true;
        while let Some(g) = reached.iter().position(|r| !r) {
            gens.push(g);
            let mut members: Vec<usize> = (0..n).filter(|&i| reached[i]).collect();
            let mut k = 0;
            while k < members.len() {
                for &s in &gens {
                    for p in [self.cayley[members[k]][s], self.cayley[s][members[k]]] {
                        if !reached[p] {
                            reached[p] = true;
                            members.push(p);
                        }
                    }
                }
                k += 1;
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn name(&self) -> String {
        match &self.origin {
            Origin::Custom => format!("custom({})", self.order()),
            o => o.to_string(),
        }
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Index of `g_i g_j`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.cayley[i][j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Index of `x g x⁻¹`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..i).all(|j| self.cayley[i][j] == self.cayley[j][i]))
    }
}
