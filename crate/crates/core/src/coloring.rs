//! Total colorings of the n-subsets of a finite universe.
//!
//! A coloring assigns one color to every n-subset of {0, .., N-1}. Colors
//! are opaque ids: only equality between them matters. Storage is a dense
//! table indexed by the subset's lexicographic rank, so lookups stay cheap
//! inside the exhaustive loops that dominate every analysis.

use crate::error::{Error, Result};
use crate::subsets::{binomial, enumerate_ksubsets, lex_rank, KSubset};

pub type ColorId = u64;

/// Hard cap on table size; analyses here are exhaustive, so anything larger
/// could not be processed anyway.
const MAX_SUBSETS: u128 = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    arity: usize,
    universe: usize,
    colors: Vec<ColorId>,
}

impl Coloring {
    /// Build by evaluating f on every n-subset in lexicographic order.
    pub fn from_fn(
        arity: usize,
        universe: usize,
        mut f: impl FnMut(&[usize]) -> ColorId,
    ) -> Result<Self> {
        let count = Self::table_size(arity, universe)?;
        let mut colors = Vec::with_capacity(count);
        for s in enumerate_ksubsets(universe, arity)? {
            colors.push(f(s.members()));
        }
        Ok(Coloring {
            arity,
            universe,
            colors,
        })
    }

    /// Build from a prefilled table in lexicographic subset order.
    pub fn from_colors(arity: usize, universe: usize, colors: Vec<ColorId>) -> Result<Self> {
        let count = Self::table_size(arity, universe)?;
        if colors.len() != count {
            return Err(Error::ColorTableSize {
                expected: count as u128,
                actual: colors.len(),
            });
        }
        Ok(Coloring {
            arity,
            universe,
            colors,
        })
    }

    fn table_size(arity: usize, universe: usize) -> Result<usize> {
        if arity == 0 || universe < arity {
            return Err(Error::UniverseTooSmall {
                universe,
                needed: arity.max(1),
            });
        }
        let count = binomial(universe, arity);
        if count > MAX_SUBSETS {
            return Err(Error::TooManySubsets {
                count,
                cap: MAX_SUBSETS,
            });
        }
        Ok(count as usize)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn subset_count(&self) -> usize {
        self.colors.len()
    }

    pub fn color(&self, subset: &KSubset) -> Result<ColorId> {
        self.color_of(subset.members())
    }

    /// Same as `color` but on a raw sorted slice, for hot loops that build
    /// selections in place.
    pub fn color_of(&self, members: &[usize]) -> Result<ColorId> {
        if members.len() != self.arity {
            return Err(Error::WrongSubsetSize {
                expected: self.arity,
                actual: members.len(),
            });
        }
        for &m in members {
            if m >= self.universe {
                return Err(Error::OutsideUniverse {
                    element: m,
                    universe: self.universe,
                });
            }
        }
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Ok(self.colors[lex_rank(self.universe, members) as usize])
    }
}

/// The named generator family. These are the reference colorings exercised
/// by the test batteries and exposed through the CLI.
pub mod generators {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Every subset gets color 0.
    pub fn constant(arity: usize, universe: usize) -> Result<Coloring> {
        Coloring::from_fn(arity, universe, |_| 0)
    }

    /// Color = the member at the given tuple index.
    pub fn projection(arity: usize, universe: usize, index: usize) -> Result<Coloring> {
        if index >= arity {
            return Err(Error::IndexOutOfRange {
                index,
                arity,
            });
        }
        Coloring::from_fn(arity, universe, |s| s[index] as ColorId)
    }

    /// Color = smallest member (projection onto index 0).
    pub fn min(arity: usize, universe: usize) -> Result<Coloring> {
        projection(arity, universe, 0)
    }

    /// Color = largest member (projection onto index n-1).
    pub fn max(arity: usize, universe: usize) -> Result<Coloring> {
        projection(arity, universe, arity.saturating_sub(1))
    }

    /// Color = member sum mod k.
    pub fn sum_mod(arity: usize, universe: usize, modulus: u64) -> Result<Coloring> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        Coloring::from_fn(arity, universe, |s| {
            s.iter().map(|&m| m as u64).sum::<u64>() % modulus
        })
    }

    /// Every subset gets a distinct color (its lexicographic rank).
    pub fn injective(arity: usize, universe: usize) -> Result<Coloring> {
        let mut next = 0;
        Coloring::from_fn(arity, universe, |_| {
            let c = next;
            next += 1;
            c
        })
    }

    /// Color = plain member sum. Injective exactly on Sidon-style sets,
    /// which is what makes it an interesting boundary case.
    pub fn sidon_sum(arity: usize, universe: usize) -> Result<Coloring> {
        Coloring::from_fn(arity, universe, |s| s.iter().map(|&m| m as u64).sum())
    }

    /// Seeded uniform coloring over `colors` colors. Same seed, same table,
    /// on every platform.
    pub fn random(arity: usize, universe: usize, seed: u64, colors: u64) -> Result<Coloring> {
        if colors == 0 {
            return Err(Error::ZeroColors);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Coloring::from_fn(arity, universe, |_| rng.gen_range(0..colors))
    }

    /// The standard named suite used by the cross-check batteries.
    pub fn standard_suite(arity: usize, universe: usize) -> Result<Vec<(String, Coloring)>> {
        let mut suite = vec![
            ("constant".to_string(), constant(arity, universe)?),
            ("min".to_string(), min(arity, universe)?),
            ("max".to_string(), max(arity, universe)?),
        ];
        for i in 0..arity {
            suite.push((format!("projection-{i}"), projection(arity, universe, i)?));
        }
        suite.push(("sum-mod-2".to_string(), sum_mod(arity, universe, 2)?));
        suite.push(("sum-mod-3".to_string(), sum_mod(arity, universe, 3)?));
        suite.push(("injective".to_string(), injective(arity, universe)?));
        suite.push(("sidon-sum".to_string(), sidon_sum(arity, universe)?));
        suite.push(("random-1-5".to_string(), random(arity, universe, 1, 5)?));
        suite.push(("random-7-50".to_string(), random(arity, universe, 7, 50)?));
        Ok(suite)
    }
}
