//! Elements of a direct sum of class-function spaces indexed by splits.
//!
//! A layout lists eigenvalue classes, each with a factor kind and a total
//! rank. A key chooses a split (a, b) with a + b = total for every class and
//! the component at that key lives on the shape G_{a} × G_{b} × … taken in
//! class order.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::CycloScalar;
use crate::sign::Sign;
use crate::weylrep::{ClassFunction, Factor, FactorKind, GroupShape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassTag {
    Generic { rep: u32, ell: u32 },
    Pm(Sign),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LayoutClass {
    pub kind: FactorKind,
    pub total: u32,
    pub tag: ClassTag,
}

/// A list of classes; an invalid layout is the zero space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Layout {
    pub classes: Vec<LayoutClass>,
    pub valid: bool,
}

pub type SplitKey = Vec<(u32, u32)>;

impl Layout {
    pub fn new(classes: Vec<LayoutClass>) -> Self {
        Layout { classes, valid: true }
    }

    pub fn invalid(classes: Vec<LayoutClass>) -> Self {
        Layout { classes, valid: false }
    }

    pub fn position(&self, tag: ClassTag) -> Option<usize> {
        self.classes.iter().position(|c| c.tag == tag)
    }

    pub fn shape(&self, key: &[(u32, u32)]) -> GroupShape {
        GroupShape(
            self.classes
                .iter()
                .zip(key)
                .flat_map(|(c, &(a, b))| [Factor { kind: c.kind, rank: a }, Factor { kind: c.kind, rank: b }])
                .collect(),
        )
    }

    pub fn check_key(&self, key: &[(u32, u32)]) -> Result<()> {
        if !self.valid {
            return Err(Error::ShapeError("the layout is the zero space".into()));
        }
        if key.len() != self.classes.len()
            || key.iter().zip(&self.classes).any(|(&(a, b), c)| a + b != c.total)
        {
            return Err(Error::ShapeError(format!("key {key:?} does not fit the layout")));
        }
        Ok(())
    }

    /// All keys, each class split as (total, 0), (total−1, 1), …, (0, total).
    pub fn keys(&self) -> Vec<SplitKey> {
        if !self.valid {
            return Vec::new();
        }
        let mut out: Vec<SplitKey> = vec![Vec::new()];
        for c in &self.classes {
            out = out
                .into_iter()
                .flat_map(|k| {
                    (0..=c.total).rev().map(move |a| {
                        let mut k = k.clone();
                        k.push((a, c.total - a));
                        k
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct GradedElement {
    layout: Layout,
    comps: BTreeMap<SplitKey, ClassFunction>,
}

impl PartialEq for GradedElement {
    fn eq(&self, other: &Self) -> bool {
        if self.layout != other.layout {
            return false;
        }
        let nz = |e: &GradedElement| -> Vec<(SplitKey, ClassFunction)> {
            e.comps
                .iter()
                .filter(|(_, f)| !f.is_zero())
                .map(|(k, f)| (k.clone(), f.clone()))
                .collect()
        };
        nz(self) == nz(other)
    }
}

#[derive(Serialize)]
struct ComponentOut<'a> {
    key: &'a SplitKey,
    values: &'a ClassFunction,
}

impl Serialize for GradedElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let comps: Vec<ComponentOut> = self
            .comps
            .iter()
            .filter(|(_, f)| !f.is_zero())
            .map(|(key, values)| ComponentOut { key, values })
            .collect();
        let mut st = s.serialize_struct("GradedElement", 2)?;
        st.serialize_field("layout", &self.layout)?;
        st.serialize_field("components", &comps)?;
        st.end()
    }
}

impl GradedElement {
    pub fn zero(layout: &Layout) -> Self {
        GradedElement { layout: layout.clone(), comps: BTreeMap::new() }
    }

    pub fn single(layout: &Layout, key: SplitKey, f: ClassFunction) -> Result<Self> {
        let mut e = Self::zero(layout);
        e.add_component(key, f)?;
        Ok(e)
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn component(&self, key: &[(u32, u32)]) -> Option<&ClassFunction> {
        self.comps.get(key)
    }

    pub fn components(&self) -> impl Iterator<Item = (&SplitKey, &ClassFunction)> {
        self.comps.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|f| f.is_zero())
    }

    pub fn add_component(&mut self, key: SplitKey, f: ClassFunction) -> Result<()> {
        self.layout.check_key(&key)?;
        if f.shape() != &self.layout.shape(&key) {
            return Err(Error::ShapeError(format!("component at {key:?} has the wrong shape")));
        }
        match self.comps.get_mut(&key) {
            Some(g) => g.add_assign(&f)?,
            None => {
                self.comps.insert(key, f);
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedElement) -> Result<GradedElement> {
        if self.layout != other.layout {
            return Err(Error::ShapeError("layouts differ".into()));
        }
        let mut out = self.clone();
        for (k, f) in &other.comps {
            out.add_component(k.clone(), f.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycloScalar) -> GradedElement {
        GradedElement {
            layout: self.layout.clone(),
            comps: self.comps.iter().map(|(k, f)| (k.clone(), f.scale(c))).collect(),
        }
    }

    /// Applies `op` to every component; `op` receives the key and the
    /// function and returns the new key and function.
    pub fn map_components(
        &self,
        mut op: impl FnMut(&SplitKey, &ClassFunction) -> Result<(SplitKey, ClassFunction)>,
    ) -> Result<GradedElement> {
        let mut out = GradedElement::zero(&self.layout);
        for (k, f) in &self.comps {
            let (nk, nf) = op(k, f)?;
            out.add_component(nk, nf)?;
        }
        Ok(out)
    }

    /// Multiplies the ″ factor of the class at `pos` by sgn_CD.
    pub fn twist_second_factor(&self, pos: usize) -> Result<GradedElement> {
        self.map_components(|k, f| {
            let mut w = vec![crate::weylrep::FactorWeight::one(); f.shape().0.len()];
            w[2 * pos + 1] = crate::weylrep::FactorWeight::sgn_cd();
            Ok((k.clone(), f.twist(&w)?))
        })
    }

    /// Exchanges the ′ and ″ factors of the class at `pos`, in the key and
    /// in every component.
    pub fn swap_factors(&self, pos: usize) -> Result<GradedElement> {
        self.map_components(|k, f| {
            let mut nk = k.clone();
            nk[pos] = (k[pos].1, k[pos].0);
            let mut perm: Vec<usize> = (0..f.shape().0.len()).collect();
            perm.swap(2 * pos, 2 * pos + 1);
            Ok((nk, f.permute_factors(&perm)?))
        })
    }
}
