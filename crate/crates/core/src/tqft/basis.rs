use std::collections::HashMap;

use serde::Serialize;

use super::words::Genus;
use crate::recoupling::admissible;

/// Admissible colorings of the spine graph: a single loop in genus 1, a
/// dumbbell (loops a, b joined by a bridge c) in genus 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpineBasis {
    pub genus: Genus,
    pub r: u32,
    pub colorings: Vec<Vec<u32>>,
    #[serde(skip)]
    index: HashMap<Vec<u32>, usize>,
}

impl SpineBasis {
    pub fn new(genus: Genus, r: u32) -> SpineBasis {
        assert!(r >= 3);
        let top = r - 2;
        let colorings: Vec<Vec<u32>> = match genus {
            Genus::One => (0..=top).map(|c| vec![c]).collect(),
            Genus::Two => {
                let mut v = Vec::new();
                for a in 0..=top {
                    for b in 0..=top {
                        for c in (0..=top).step_by(2) {
                            if admissible(r, a, a, c) && admissible(r, b, b, c) {
                                v.push(vec![a, b, c]);
                            }
                        }
                    }
                }
                v
            }
        };
        let index = colorings.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        SpineBasis { genus, r, colorings, index }
    }

    pub fn dim(&self) -> usize {
        self.colorings.len()
    }

    pub fn index_of(&self, coloring: &[u32]) -> Option<usize> {
        self.index.get(coloring).copied()
    }
}

/// (r/2)^{g−1} Σ_{j=1}^{r−1} sin(jπ/r)^{2−2g}, rounded.
pub fn verlinde_dim(genus: u32, r: u32) -> u64 {
    assert!(genus >= 1 && r >= 2);
    let rf = r as f64;
    let mut s = 0.0;
    for j in 1..r {
        s += (j as f64 * std::f64::consts::PI / rf).sin().powi(2 - 2 * genus as i32);
    }
    (s * (rf / 2.0).powi(genus as i32 - 1)).round() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dimensions() {
        assert_eq!(SpineBasis::new(Genus::One, 3).colorings, vec![vec![0], vec![1]]);
        assert_eq!(SpineBasis::new(Genus::Two, 3).dim(), 4);
        assert_eq!(SpineBasis::new(Genus::Two, 4).dim(), 10);
        assert_eq!(verlinde_dim(1, 7), 6);
        assert_eq!(verlinde_dim(2, 3), 4);
        assert_eq!(verlinde_dim(2, 4), 10);
    }

    #[test]
    fn enumeration_matches_verlinde() {
        for r in 3..=12 {
            assert_eq!(SpineBasis::new(Genus::One, r).dim() as u64, verlinde_dim(1, r));
            let b = SpineBasis::new(Genus::Two, r);
            assert_eq!(b.dim() as u64, verlinde_dim(2, r));
            assert_eq!(b.dim() as u32, r * (r * r - 1) / 6);
            for (i, c) in b.colorings.iter().enumerate() {
                assert_eq!(b.index_of(c), Some(i));
            }
        }
    }
}
