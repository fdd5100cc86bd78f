//! Elements of free modules R^rank, stored as one polynomial per position.

use std::fmt;
use std::sync::Arc;

use crate::modgb::order::ModOrder;
use crate::polyring::{Coef, Monomial, Polynomial, Ring};

/// An element of R^rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModVec {
    coords: Vec<Polynomial>,
}

impl ModVec {
    pub fn zero(ring: &Arc<Ring>, rank: usize) -> ModVec {
        ModVec { coords: vec![Polynomial::zero(ring); rank] }
    }

    pub fn from_coords(coords: Vec<Polynomial>) -> ModVec {
        assert!(!coords.is_empty(), "rank 0 module element");
        ModVec { coords }
    }

    /// `p * e_pos`.
    pub fn unit(ring: &Arc<Ring>, rank: usize, pos: usize, p: Polynomial) -> ModVec {
        let mut v = ModVec::zero(ring, rank);
        v.coords[pos] = p;
        v
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.coords[0].ring()
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Polynomial {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &ModVec) -> ModVec {
        debug_assert_eq!(self.rank(), other.rank());
        ModVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &ModVec) -> ModVec {
        debug_assert_eq!(self.rank(), other.rank());
        ModVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> ModVec {
        ModVec { coords: self.coords.iter().map(Polynomial::neg).collect() }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> ModVec {
        ModVec { coords: self.coords.iter().map(|c| c.mul(p)).collect() }
    }

    pub fn mul_term(&self, c: &Coef, m: &Monomial) -> ModVec {
        ModVec { coords: self.coords.iter().map(|q| q.mul_term(c, m)).collect() }
    }

    pub fn scale(&self, c: &Coef) -> ModVec {
        ModVec { coords: self.coords.iter().map(|q| q.scale(c)).collect() }
    }

    /// The leading term under `order`: (monomial, position, coefficient).
    pub fn lead(&self, order: &ModOrder) -> Option<(Monomial, usize, Coef)> {
        let mut best: Option<(&Monomial, usize, &Coef)> = None;
        for (pos, p) in self.coords.iter().enumerate() {
            for (m, c) in p.terms() {
                match best {
                    None => best = Some((m, pos, c)),
                    Some((bm, bp, _)) => {
                        if order.cmp((m, pos), (bm, bp)) == std::cmp::Ordering::Greater {
                            best = Some((m, pos, c));
                        }
                    }
                }
            }
        }
        best.map(|(m, p, c)| (m.clone(), p, c.clone()))
    }

    /// Divides every coefficient by `c` (used to make leads monic).
    pub fn make_monic(&self, lead_coef: &Coef) -> ModVec {
        let inv = lead_coef.inv().expect("monic normalization of zero lead");
        self.scale(&inv)
    }

    /// Pads each coordinate into an extension ring with appended variables.
    pub fn pad_vars(&self, target: &Arc<Ring>) -> ModVec {
        ModVec { coords: self.coords.iter().map(|p| p.pad_vars(target)).collect() }
    }

    /// Strips appended variables; `None` if any coordinate uses them.
    pub fn strip_vars(&self, target: &Arc<Ring>) -> Option<ModVec> {
        let coords: Option<Vec<Polynomial>> =
            self.coords.iter().map(|p| p.strip_vars(target)).collect();
        coords.map(|coords| ModVec { coords })
    }

    /// Extends with zero coordinates up to `rank` (stacked constructions).
    pub fn pad_rank(&self, rank: usize) -> ModVec {
        debug_assert!(rank >= self.rank());
        let mut coords = self.coords.clone();
        coords.resize(rank, Polynomial::zero(self.ring()));
        ModVec { coords }
    }

    pub fn take_prefix(&self, rank: usize) -> ModVec {
        ModVec { coords: self.coords[..rank].to_vec() }
    }

    pub fn take_suffix(&self, from: usize) -> ModVec {
        ModVec { coords: self.coords[from..].to_vec() }
    }
}

impl fmt::Display for ModVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}
