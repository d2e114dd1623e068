use super::GCrossedError;

/// Finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GCrossedError> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(GCrossedError::Group("table must be a square table over the elements".into()));
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(GCrossedError::Group("element names must be distinct".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| GCrossedError::Group("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            let y = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| GCrossedError::Group(format!("{} has no inverse", names[x])))?;
            inverse.push(y);
        }
        let g = FiniteGroup {
            names,
            table,
            identity,
            inverse,
        };
        g.check_axioms().map_err(GCrossedError::Group)?;
        Ok(g)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z_n` with elements `e, g, g2, …`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::new(names, table).expect("cyclic group")
    }

    pub fn check_axioms(&self) -> Result<(), String> {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!(
                            "associativity fails at {} {} {}",
                            self.names[a], self.names[b], self.names[c]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `k g k⁻¹`
    pub fn conj(&self, k: usize, g: usize) -> usize {
        self.mul(self.mul(k, g), self.inv(k))
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn index(&self, name: &str) -> Result<usize, GCrossedError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| GCrossedError::UnknownElement(name.to_string()))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// True when `proj` is a surjective homomorphism onto `target`.
    pub fn is_surjection_onto(&self, target: &FiniteGroup, proj: &[usize]) -> bool {
        if proj.len() != self.order() || proj.iter().any(|&x| x >= target.order()) {
            return false;
        }
        let hom = self
            .elements()
            .all(|a| self.elements().all(|b| proj[self.mul(a, b)] == target.mul(proj[a], proj[b])));
        let onto = target.elements().all(|t| proj.contains(&t));
        hom && onto
    }

    /// Direct product, elements ordered with the first factor outer.
    pub fn product(&self, other: &FiniteGroup) -> Result<FiniteGroup, GCrossedError> {
        let (n, m) = (self.order(), other.order());
        let names = (0..n * m)
            .map(|i| {
                let (a, b) = (i / m, i % m);
                match (a == self.identity, b == other.identity) {
                    (true, true) => "e".to_string(),
                    (false, true) => self.names[a].clone(),
                    (true, false) => other.names[b].clone(),
                    (false, false) => format!("{}{}", self.names[a], other.names[b]),
                }
            })
            .collect::<Vec<String>>();
        let distinct = names.iter().collect::<std::collections::BTreeSet<_>>().len() == names.len();
        let names = if distinct {
            names
        } else {
            let unit = self.identity * m + other.identity;
            (0..n * m)
                .map(|i| match i {
                    _ if i == unit => "e".to_string(),
                    _ => format!("({},{})", self.names[i / m], other.names[i % m]),
                })
                .collect()
        };
        let table = (0..n * m)
            .map(|i| {
                (0..n * m)
                    .map(|j| self.mul(i / m, j / m) * m + other.mul(i % m, j % m))
                    .collect()
            })
            .collect();
        FiniteGroup::new(names, table)
    }
}
