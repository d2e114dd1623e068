use super::{FusionError, Obj};

/// Simple labels with fusion multiplicities and duals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    /// `n[(a * rank + b) * rank + c]` = multiplicity of `c` in `a ⊗ b`.
    n: Vec<u32>,
}

impl FusionRing {
    /// Builds the ring; `fusion(a, b, c)` supplies `N[a][b][c]`.
    pub fn new(
        labels: Vec<String>,
        unit: usize,
        dual: Vec<usize>,
        fusion: impl Fn(usize, usize, usize) -> u32,
    ) -> Result<Self, FusionError> {
        let r = labels.len();
        if r == 0 || unit >= r || dual.len() != r || dual.iter().any(|&d| d >= r) {
            return Err(FusionError::Malformed("labels, unit or duals out of range".into()));
        }
        let mut n = vec![0; r * r * r];
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    n[(a * r + b) * r + c] = fusion(a, b, c);
                }
            }
        }
        Ok(FusionRing {
            labels,
            unit,
            dual,
            n,
        })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn name(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index(&self, name: &str) -> Result<usize, FusionError> {
        self.labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| FusionError::UnknownLabel(name.to_string()))
    }

    pub fn dual(&self, a: usize) -> usize {
        self.dual[a]
    }

    #[inline]
    pub fn n(&self, a: usize, b: usize, c: usize) -> usize {
        let r = self.labels.len();
        self.n[(a * r + b) * r + c] as usize
    }

    pub fn fuse(&self, a: usize, b: usize) -> Obj {
        Obj::from_mult((0..self.rank()).map(|c| self.n(a, b, c) as u32).collect())
    }

    /// Tensor product of formal sums.
    pub fn fuse_obj(&self, x: &Obj, y: &Obj) -> Obj {
        let r = self.rank();
        let mut mult = vec![0u32; r];
        for a in x.support() {
            for b in y.support() {
                let k = x.mult(a) * y.mult(b);
                for (c, m) in mult.iter_mut().enumerate() {
                    *m += k * self.n(a, b, c) as u32;
                }
            }
        }
        Obj::from_mult(mult)
    }

    /// `dim Hom(x, y)` for formal sums.
    pub fn pairing(&self, x: &Obj, y: &Obj) -> usize {
        (0..self.rank())
            .map(|c| (x.mult(c) * y.mult(c)) as usize)
            .sum()
    }

    pub fn simple(&self, a: usize) -> Obj {
        Obj::simple(self.rank(), a)
    }

    pub fn unit_obj(&self) -> Obj {
        self.simple(self.unit)
    }

    /// Labels `a` with `a ⊗ dual(a) = unit`.
    pub fn is_invertible(&self, a: usize) -> bool {
        (0..self.rank()).map(|c| self.n(a, self.dual[a], c)).sum::<usize>() == 1
    }

    /// Ring axioms: associativity, unit, duality. Returns the first violation.
    pub fn check_axioms(&self) -> Result<(), String> {
        let r = self.rank();
        let u = self.unit;
        for a in 0..r {
            if self.dual[self.dual[a]] != a {
                return Err(format!("dual not involutive at {}", self.name(a)));
            }
            for b in 0..r {
                let d = usize::from(a == b);
                if self.n(u, a, b) != d || self.n(a, u, b) != d {
                    return Err(format!("unit law fails at a={} b={}", self.name(a), self.name(b)));
                }
                if self.n(a, b, u) != usize::from(b == self.dual[a]) {
                    return Err(format!("duality fails at a={} b={}", self.name(a), self.name(b)));
                }
            }
        }
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        let left: usize = (0..r).map(|e| self.n(a, b, e) * self.n(e, c, d)).sum();
                        let right: usize = (0..r).map(|f| self.n(a, f, d) * self.n(b, c, f)).sum();
                        if left != right {
                            return Err(format!(
                                "associativity fails at a={} b={} c={} d={}",
                                self.name(a),
                                self.name(b),
                                self.name(c),
                                self.name(d)
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
