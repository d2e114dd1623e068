use std::fmt;

/// Formal direct sum of simples: `mult[a]` copies of label `a`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj {
    mult: Vec<u32>,
}

/// Tensor word `X1 ⊗ X2 ⊗ …`; the empty word is the unit object.
pub type Word = Vec<Obj>;

impl Obj {
    pub fn from_mult(mult: Vec<u32>) -> Self {
        Obj { mult }
    }

    pub fn zero(rank: usize) -> Self {
        Obj {
            mult: vec![0; rank],
        }
    }

    pub fn simple(rank: usize, a: usize) -> Self {
        let mut o = Self::zero(rank);
        o.mult[a] = 1;
        o
    }

    #[inline]
    pub fn mult(&self, a: usize) -> u32 {
        self.mult[a]
    }

    pub fn mults(&self) -> &[u32] {
        &self.mult
    }

    pub fn rank(&self) -> usize {
        self.mult.len()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(a, _)| a)
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    /// The label if this is a single simple.
    pub fn as_simple(&self) -> Option<usize> {
        let mut it = self.support();
        let a = it.next()?;
        (it.next().is_none() && self.mult[a] == 1).then_some(a)
    }

    pub fn sum(&self, other: &Obj) -> Obj {
        Obj {
            mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn total(&self) -> u32 {
        self.mult.iter().sum()
    }
}

impl fmt::Debug for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Obj{:?}", self.mult)
    }
}
