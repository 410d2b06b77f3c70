//! Factored action spaces `A = A^1 x ... x A^L` and composite actions.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("a factored action space needs at least one factor")]
    NoFactors,
    #[error("factor {0} has no atomic arms")]
    EmptyFactor(usize),
    #[error("action has {got} coordinates, space has {expected} factors")]
    WrongArity { expected: usize, got: usize },
    #[error("coordinate {factor} = {index} out of range (factor size {size})")]
    OutOfRange {
        factor: usize,
        index: usize,
        size: usize,
    },
}

/// Cartesian product of atomic arm sets, described by the size of each factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct FactoredActionSpace {
    sizes: Vec<usize>,
}

impl FactoredActionSpace {
    pub fn new(sizes: Vec<usize>) -> Result<Self, SpaceError> {
        if sizes.is_empty() {
            return Err(SpaceError::NoFactors);
        }
        if let Some(f) = sizes.iter().position(|&k| k == 0) {
            return Err(SpaceError::EmptyFactor(f));
        }
        Ok(Self { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Number of factors `L`.
    pub fn factors(&self) -> usize {
        self.sizes.len()
    }

    pub fn size(&self, factor: usize) -> usize {
        self.sizes[factor]
    }

    /// Total number of composite actions, `None` on overflow.
    pub fn cardinality(&self) -> Option<usize> {
        self.sizes.iter().try_fold(1usize, |acc, &k| acc.checked_mul(k))
    }

    pub fn validate(&self, action: &CompositeAction) -> Result<(), SpaceError> {
        if action.coords.len() != self.sizes.len() {
            return Err(SpaceError::WrongArity {
                expected: self.sizes.len(),
                got: action.coords.len(),
            });
        }
        for (factor, (&index, &size)) in action.coords.iter().zip(&self.sizes).enumerate() {
            if index >= size {
                return Err(SpaceError::OutOfRange {
                    factor,
                    index,
                    size,
                });
            }
        }
        Ok(())
    }

    /// Iterates all composite actions in lexicographic order (last factor fastest).
    pub fn iter(&self) -> CompositeIter<'_> {
        CompositeIter {
            sizes: &self.sizes,
            next: Some(vec![0; self.sizes.len()]),
        }
    }
}

impl TryFrom<Vec<usize>> for FactoredActionSpace {
    type Error = SpaceError;

    fn try_from(sizes: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(sizes)
    }
}

impl From<FactoredActionSpace> for Vec<usize> {
    fn from(space: FactoredActionSpace) -> Self {
        space.sizes
    }
}

/// One atomic arm per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompositeAction {
    coords: Vec<usize>,
}

impl CompositeAction {
    pub fn new(coords: Vec<usize>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn get(&self, factor: usize) -> usize {
        self.coords[factor]
    }

    /// Copy of `self` with coordinate `factor` replaced by `arm`.
    pub fn with(&self, factor: usize, arm: usize) -> Self {
        let mut coords = self.coords.clone();
        coords[factor] = arm;
        Self { coords }
    }
}

impl From<Vec<usize>> for CompositeAction {
    fn from(coords: Vec<usize>) -> Self {
        Self { coords }
    }
}

impl FromIterator<usize> for CompositeAction {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self {
            coords: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for CompositeAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub struct CompositeIter<'a> {
    sizes: &'a [usize],
    next: Option<Vec<usize>>,
}

impl Iterator for CompositeIter<'_> {
    type Item = CompositeAction;

    fn next(&mut self) -> Option<Self::Item> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carry = true;
        for f in (0..succ.len()).rev() {
            succ[f] += 1;
            if succ[f] < self.sizes[f] {
                carry = false;
                break;
            }
            succ[f] = 0;
        }
        if !carry {
            self.next = Some(succ);
        }
        Some(CompositeAction::new(current))
    }
}
