//! Finite sets in `[N]`, `Z/MZ` and `Z/pZ x Z/pZ`, and the JSON set-file format.
//!
//! A set file is one JSON object:
//!
//! ```text
//! {"ambient":{"interval":10},"elements":[1,4,7,10]}
//! {"ambient":{"cyclic":7},"elements":[0,1,3]}
//! {"ambient":{"grid":3},"elements":[[0,0],[1,1]]}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::PrimeModulus;
use crate::rational::{ratio, Rational};

/// Strictly increasing elements of `[1, N]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerSet {
    ambient: usize,
    elements: Vec<usize>,
}

impl IntegerSet {
    pub fn new(ambient: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        if ambient == 0 {
            return Err(Error::InvalidSet("interval ambient must be at least 1".into()));
        }
        let mut elements: Vec<usize> = elements.into_iter().collect();
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidSet(format!("duplicate element {}", w[0])));
        }
        if let Some(&e) = elements.iter().find(|&&e| e == 0 || e > ambient) {
            return Err(Error::InvalidSet(format!("element {e} outside [1, {ambient}]")));
        }
        Ok(IntegerSet { ambient, elements })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn density(&self) -> Rational {
        ratio(self.len() as u64, self.ambient as u64)
    }

    /// `A -> N + 1 - A`.
    pub fn reflect(&self) -> IntegerSet {
        let n = self.ambient + 1;
        IntegerSet { ambient: self.ambient, elements: self.elements.iter().rev().map(|&a| n - a).collect() }
    }

    pub fn is_subset(&self, other: &IntegerSet) -> bool {
        self.elements.iter().all(|&a| other.contains(a))
    }
}

/// Distinct residues modulo `M`, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicSet {
    modulus: usize,
    elements: Vec<usize>,
}

impl CyclicSet {
    /// Elements must already be reduced into `[0, M)`.
    pub fn new(modulus: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidSet("cyclic modulus must be at least 1".into()));
        }
        let mut elements: Vec<usize> = elements.into_iter().collect();
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidSet(format!("duplicate residue {}", w[0])));
        }
        if let Some(&e) = elements.last().filter(|&&e| e >= modulus) {
            return Err(Error::InvalidSet(format!("residue {e} not reduced modulo {modulus}")));
        }
        Ok(CyclicSet { modulus, elements })
    }

    /// `[1, N]` viewed inside `Z/MZ`, with `M >= N`.
    pub fn embed(set: &IntegerSet, modulus: usize) -> Result<Self> {
        if modulus < set.ambient() {
            return Err(Error::InvalidSet(format!(
                "modulus {modulus} smaller than the interval [1, {}]",
                set.ambient()
            )));
        }
        CyclicSet::new(modulus, set.elements().iter().map(|&a| a % modulus))
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&(x % self.modulus)).is_ok()
    }

    pub fn density(&self) -> Rational {
        ratio(self.len() as u64, self.modulus as u64)
    }
}

/// Distinct points of `Z/pZ x Z/pZ`, coordinates in `[0, p)`, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridSet {
    p: PrimeModulus,
    elements: Vec<(usize, usize)>,
}

impl GridSet {
    pub fn new(p: PrimeModulus, elements: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let side = p.get() as usize;
        let mut elements: Vec<(usize, usize)> = elements.into_iter().collect();
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidSet(format!("duplicate point {:?}", w[0])));
        }
        if let Some(e) = elements.iter().find(|&&(x, y)| x >= side || y >= side) {
            return Err(Error::InvalidSet(format!("point {e:?} not reduced modulo {p}")));
        }
        Ok(GridSet { p, elements })
    }

    /// Like [`GridSet::new`] but drops repeated points.
    pub fn from_union(p: PrimeModulus, elements: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut elements: Vec<(usize, usize)> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        GridSet::new(p, elements)
    }

    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn side(&self) -> usize {
        self.p.get() as usize
    }

    pub fn elements(&self) -> &[(usize, usize)] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, point: (usize, usize)) -> bool {
        self.elements.binary_search(&point).is_ok()
    }
}

/// Any of the three ambient structures, as read from or written to a set file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnySet {
    Interval(IntegerSet),
    Cyclic(CyclicSet),
    Grid(GridSet),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum AmbientField {
    Interval(usize),
    Cyclic(usize),
    Grid(u64),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ElementsField {
    Scalars(Vec<usize>),
    Pairs(Vec<[usize; 2]>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetFile {
    ambient: AmbientField,
    elements: ElementsField,
}

impl AnySet {
    pub fn len(&self) -> usize {
        match self {
            AnySet::Interval(s) => s.len(),
            AnySet::Cyclic(s) => s.len(),
            AnySet::Grid(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of points of the ambient structure.
    pub fn ambient_size(&self) -> usize {
        match self {
            AnySet::Interval(s) => s.ambient(),
            AnySet::Cyclic(s) => s.modulus(),
            AnySet::Grid(s) => s.side() * s.side(),
        }
    }

    pub fn density(&self) -> Rational {
        ratio(self.len() as u64, self.ambient_size() as u64)
    }

    /// Compact single-line JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let file = match self {
            AnySet::Interval(s) => SetFile {
                ambient: AmbientField::Interval(s.ambient()),
                elements: ElementsField::Scalars(s.elements().to_vec()),
            },
            AnySet::Cyclic(s) => SetFile {
                ambient: AmbientField::Cyclic(s.modulus()),
                elements: ElementsField::Scalars(s.elements().to_vec()),
            },
            AnySet::Grid(s) => SetFile {
                ambient: AmbientField::Grid(s.p().get()),
                elements: ElementsField::Pairs(s.elements().iter().map(|&(x, y)| [x, y]).collect()),
            },
        };
        let mut out = serde_json::to_string(&file).expect("set files always serialize");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<AnySet> {
        let file: SetFile = serde_json::from_str(text)?;
        let at = |message: String| Error::Parse { line: 0, column: 0, message };
        match (file.ambient, file.elements) {
            (AmbientField::Interval(n), ElementsField::Scalars(e)) => {
                IntegerSet::new(n, e).map(AnySet::Interval).map_err(|e| at(e.to_string()))
            }
            (AmbientField::Cyclic(m), ElementsField::Scalars(e)) => {
                CyclicSet::new(m, e).map(AnySet::Cyclic).map_err(|e| at(e.to_string()))
            }
            (AmbientField::Grid(p), ElementsField::Pairs(e)) => {
                let p = PrimeModulus::new(p).map_err(|e| at(e.to_string()))?;
                GridSet::new(p, e.into_iter().map(|[x, y]| (x, y))).map(AnySet::Grid).map_err(|e| at(e.to_string()))
            }
            (AmbientField::Grid(p), ElementsField::Scalars(e)) if e.is_empty() => {
                let p = PrimeModulus::new(p).map_err(|e| at(e.to_string()))?;
                Ok(AnySet::Grid(GridSet::new(p, [])?))
            }
            (AmbientField::Grid(_), ElementsField::Scalars(_)) => Err(at("grid elements must be [x, y] pairs".into())),
            (_, ElementsField::Pairs(_)) => Err(at("interval and cyclic elements must be integers".into())),
        }
    }
}

impl From<IntegerSet> for AnySet {
    fn from(s: IntegerSet) -> Self {
        AnySet::Interval(s)
    }
}

impl From<CyclicSet> for AnySet {
    fn from(s: CyclicSet) -> Self {
        AnySet::Cyclic(s)
    }
}

impl From<GridSet> for AnySet {
    fn from(s: GridSet) -> Self {
        AnySet::Grid(s)
    }
}
