//! Connectedness of torus-element centralizers through the Weyl group: the
//! centralizer of `t` is connected exactly when the stabilizer of `t` in
//! `W` is generated by the reflections in roots vanishing on `t`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, WeylGroup};

/// The abstract abelian group `Z^a x Z/m` receiving character values,
/// written additively. `torsion = 0` means no finite factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValueGroup {
    pub free_rank: usize,
    pub torsion: u64,
}

impl ValueGroup {
    fn width(&self) -> usize {
        self.free_rank + usize::from(self.torsion > 0)
    }

    fn normalize(&self, v: &mut [i64]) {
        if self.torsion > 0 {
            let last = self.free_rank;
            v[last] = v[last].rem_euclid(self.torsion as i64);
        }
    }
}

/// A point of the torus, given by the values of the basis characters of
/// `X` in a [`ValueGroup`].
#[derive(Debug, Clone)]
pub struct TorusElement<'a> {
    datum: &'a RootDatum,
    group: ValueGroup,
    values: Vec<Vec<i64>>,
}

impl<'a> TorusElement<'a> {
    pub fn new(datum: &'a RootDatum, group: ValueGroup, values: Vec<Vec<i64>>) -> Result<Self> {
        let rank = datum.char_lattice_rank();
        if values.len() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: values.len(),
            });
        }
        let mut values = values;
        for v in values.iter_mut() {
            if v.len() != group.width() {
                return Err(Error::DimensionMismatch {
                    expected: group.width(),
                    found: v.len(),
                });
            }
            group.normalize(v);
        }
        Ok(TorusElement {
            datum,
            group,
            values,
        })
    }

    /// The identity element.
    pub fn trivial(datum: &'a RootDatum) -> Self {
        let group = ValueGroup {
            free_rank: 0,
            torsion: 1,
        };
        let values = vec![vec![0]; datum.char_lattice_rank()];
        TorusElement {
            datum,
            group,
            values,
        }
    }

    /// `lambda(zeta)` for a cocharacter `lambda` and a primitive `m`-th
    /// root of unity `zeta`.
    pub fn from_cocharacter_at_root_of_unity(
        datum: &'a RootDatum,
        lambda: &[i64],
        m: u64,
    ) -> Result<Self> {
        let group = ValueGroup {
            free_rank: 0,
            torsion: m,
        };
        Self::new(datum, group, lambda.iter().map(|&c| vec![c]).collect())
    }

    pub fn datum(&self) -> &RootDatum {
        self.datum
    }

    pub fn value_group(&self) -> ValueGroup {
        self.group
    }

    /// Value of the character with coordinates `chi` in the basis of `X`.
    pub fn value(&self, chi: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.group.width()];
        for (c, v) in chi.iter().zip(&self.values) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += c * x;
            }
        }
        self.group.normalize(&mut out);
        out
    }

    /// Indices of the roots vanishing on this element.
    pub fn kernel_roots(&self) -> Vec<usize> {
        self.datum
            .roots_in_x()
            .iter()
            .enumerate()
            .filter(|(_, r)| self.value(r).iter().all(|&x| x == 0))
            .map(|(i, _)| i)
            .collect()
    }

    /// Whether `w` (acting on `X` by right multiplication of row vectors)
    /// fixes this element.
    fn fixed_by(&self, w: &[Vec<i64>]) -> bool {
        w.iter()
            .zip(&self.values)
            .all(|(row, v)| self.value(row) == *v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdinaryReport {
    pub ordinary: bool,
    pub component_index: usize,
    pub kernel_roots: Vec<usize>,
    pub stabilizer_order: usize,
    pub reflection_subgroup_order: usize,
}

pub fn is_ordinary(t: &TorusElement) -> Result<OrdinaryReport> {
    let rd = t.datum();
    let kernel = t.kernel_roots();
    let weyl = rd.weyl_group();
    let stabilizer: Vec<&Vec<Vec<i64>>> =
        weyl.elements()?.iter().filter(|w| t.fixed_by(w)).collect();
    let reflections: Vec<Vec<Vec<i64>>> = kernel
        .iter()
        .filter(|&&a| rd.system().is_positive(a))
        .map(|&a| rd.reflection_matrix(a))
        .collect();
    let sub = WeylGroup::new(rd.char_lattice_rank(), reflections);
    let sub_elements = sub.elements()?;
    assert!(
        sub_elements.iter().all(|w| t.fixed_by(w)),
        "reflections in kernel roots fix the element"
    );
    let index = stabilizer.len() / sub_elements.len();
    Ok(OrdinaryReport {
        ordinary: index == 1,
        component_index: index,
        kernel_roots: kernel,
        stabilizer_order: stabilizer.len(),
        reflection_subgroup_order: sub_elements.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Isogeny;

    #[test]
    fn pgl2_order_two() {
        let rd = RootDatum::from_type("A1", Isogeny::Adjoint).unwrap();
        let t = TorusElement::from_cocharacter_at_root_of_unity(&rd, &[1], 2).unwrap();
        let r = is_ordinary(&t).unwrap();
        assert!(!r.ordinary);
        assert_eq!(r.component_index, 2);
        assert!(r.kernel_roots.is_empty());
    }

    #[test]
    fn sl2_order_four() {
        let rd = RootDatum::from_type("A1", Isogeny::SimplyConnected).unwrap();
        let t = TorusElement::from_cocharacter_at_root_of_unity(&rd, &[1], 4).unwrap();
        let r = is_ordinary(&t).unwrap();
        assert!(r.ordinary);
        assert_eq!(r.component_index, 1);
        // -1 in SL2 is central
        let t = TorusElement::from_cocharacter_at_root_of_unity(&rd, &[1], 2).unwrap();
        let r = is_ordinary(&t).unwrap();
        assert_eq!(
            (r.ordinary, r.kernel_roots.len(), r.stabilizer_order),
            (true, 2, 2)
        );
    }

    #[test]
    fn trivial_elements() {
        for (ty, iso) in [
            ("B2", Isogeny::Adjoint),
            ("G2", Isogeny::SimplyConnected),
            ("A2", Isogeny::Adjoint),
        ] {
            let rd = RootDatum::from_type(ty, iso).unwrap();
            let r = is_ordinary(&TorusElement::trivial(&rd)).unwrap();
            assert_eq!((r.ordinary, r.component_index), (true, 1));
            assert_eq!(r.kernel_roots.len(), rd.system().num_roots());
        }
    }

    #[test]
    fn pgl3_order_three() {
        // diag(1, w, w^2) in PGL3 has disconnected centralizer
        let rd = RootDatum::from_type("A2", Isogeny::Adjoint).unwrap();
        let t = TorusElement::from_cocharacter_at_root_of_unity(&rd, &[1, 1], 3).unwrap();
        let r = is_ordinary(&t).unwrap();
        assert_eq!((r.ordinary, r.component_index), (false, 3));
    }
}
