use std::collections::HashMap;
use std::fmt;

use super::WeylError;

pub const MAX_RANK: usize = 8;
pub const DEFAULT_ELEMENT_CAP: usize = 200_000;
const ROOT_CAP: usize = 512;

/// Irreducible finite crystallographic types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiniteType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl FiniteType {
    pub fn rank(self) -> usize {
        match self {
            FiniteType::A(n) | FiniteType::B(n) | FiniteType::C(n) | FiniteType::D(n) | FiniteType::E(n) => n,
            FiniteType::F4 => 4,
            FiniteType::G2 => 2,
        }
    }

    /// Order of the Weyl group.
    pub fn order(self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            FiniteType::A(n) => fact(n + 1),
            FiniteType::B(n) | FiniteType::C(n) => (1u128 << n) * fact(n),
            FiniteType::D(n) => (1u128 << (n - 1)) * fact(n),
            FiniteType::E(6) => 51_840,
            FiniteType::E(7) => 2_903_040,
            FiniteType::E(_) => 696_729_600,
            FiniteType::F4 => 1_152,
            FiniteType::G2 => 12,
        }
    }

    /// Standard Cartan matrix `a_ij = <α_i^∨, α_j>` (Bourbaki numbering).
    pub fn cartan(self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut edge = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match self {
            FiniteType::A(n) => (0..n.saturating_sub(1)).for_each(|i| edge(i, i + 1, -1, -1)),
            FiniteType::B(n) => {
                (0..n - 2).for_each(|i| edge(i, i + 1, -1, -1));
                edge(n - 2, n - 1, -1, -2);
            }
            FiniteType::C(n) => {
                (0..n - 2).for_each(|i| edge(i, i + 1, -1, -1));
                edge(n - 2, n - 1, -2, -1);
            }
            FiniteType::D(n) => {
                (0..n - 2).for_each(|i| edge(i, i + 1, -1, -1));
                edge(n - 3, n - 1, -1, -1);
            }
            FiniteType::E(n) => {
                edge(0, 2, -1, -1);
                edge(1, 3, -1, -1);
                (2..n - 1).for_each(|i| edge(i, i + 1, -1, -1));
            }
            FiniteType::F4 => {
                edge(0, 1, -1, -1);
                edge(1, 2, -1, -2);
                edge(2, 3, -1, -1);
            }
            FiniteType::G2 => edge(0, 1, -3, -1),
        }
        a
    }

    fn validate(self) -> Result<Self, WeylError> {
        let ok = match self {
            FiniteType::A(n) => n >= 1,
            FiniteType::B(n) | FiniteType::C(n) => n >= 2,
            FiniteType::D(n) => n >= 4,
            FiniteType::E(n) => (6..=8).contains(&n),
            _ => true,
        };
        ok.then_some(self).ok_or_else(|| WeylError::BadType(self.to_string()))
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::C(n) => write!(f, "C{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E(n) => write!(f, "E{n}"),
            FiniteType::F4 => write!(f, "F4"),
            FiniteType::G2 => write!(f, "G2"),
        }
    }
}

/// Roots in simple-root coordinates, simple roots first.
fn root_closure(cartan: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut index: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    let mut k = 0;
    while k < roots.len() {
        for i in 0..n {
            let r = reflect(cartan, i, &roots[k]);
            if !index.contains_key(&r) {
                if roots.len() >= ROOT_CAP {
                    return None;
                }
                index.insert(r.clone(), roots.len());
                roots.push(r);
            }
        }
        k += 1;
    }
    Some(roots)
}

fn reflect(cartan: &[Vec<i64>], i: usize, beta: &[i64]) -> Vec<i64> {
    let c: i64 = (0..beta.len()).map(|j| cartan[i][j] * beta[j]).sum();
    let mut out = beta.to_vec();
    out[i] -= c;
    out
}

fn classify(cartan: &[Vec<i64>]) -> Result<FiniteType, WeylError> {
    let n = cartan.len();
    let roots = root_closure(cartan).ok_or(WeylError::NotFinite)?;
    let mut max_prod = 0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                max_prod = max_prod.max(cartan[i][j] * cartan[j][i]);
            }
        }
    }
    let count = roots.len();
    let ty = match max_prod {
        0 | 1 => {
            if count == n * (n + 1) {
                FiniteType::A(n)
            } else if n >= 4 && count == 2 * n * (n - 1) {
                FiniteType::D(n)
            } else if matches!((n, count), (6, 72) | (7, 126) | (8, 240)) {
                FiniteType::E(n)
            } else {
                return Err(WeylError::NotFinite);
            }
        }
        2 if n == 2 => FiniteType::B(2),
        2 if n == 4 && count == 48 => FiniteType::F4,
        2 => {
            // squared root lengths via a_ij / a_ji = |α_j|² / |α_i|²
            let mut len = vec![0i64; n];
            len[0] = 2;
            let mut stack = vec![0];
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if i != j && cartan[i][j] != 0 && len[j] == 0 {
                        len[j] = len[i] * cartan[i][j] / cartan[j][i];
                        stack.push(j);
                    }
                }
            }
            let short = len.iter().filter(|&&l| l == *len.iter().min().unwrap()).count();
            if count != 2 * n * n {
                return Err(WeylError::NotFinite);
            }
            if short == 1 {
                FiniteType::B(n)
            } else {
                FiniteType::C(n)
            }
        }
        3 if n == 2 => FiniteType::G2,
        _ => return Err(WeylError::NotFinite),
    };
    Ok(ty)
}

/// A finite crystallographic Coxeter type, possibly reducible, with named
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterType {
    cartan: Vec<Vec<i64>>,
    names: Vec<String>,
    components: Vec<(FiniteType, Vec<usize>)>,
}

impl CoxeterType {
    pub fn from_cartan(cartan: Vec<Vec<i64>>, names: Vec<String>) -> Result<Self, WeylError> {
        let n = cartan.len();
        if names.len() != n || cartan.iter().any(|r| r.len() != n) {
            return Err(WeylError::BadType("Cartan matrix and names disagree in size".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(WeylError::OverlappingNames(a.clone()));
            }
        }
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for j in 0..n {
                    if !seen[j] && cartan[i][j] != 0 {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            let sub: Vec<Vec<i64>> = comp.iter().map(|&i| comp.iter().map(|&j| cartan[i][j]).collect()).collect();
            components.push((classify(&sub)?, comp));
        }
        Ok(CoxeterType { cartan, names, components })
    }

    /// Irreducible type with generators named `s1..sn`.
    pub fn irreducible(t: FiniteType) -> Result<Self, WeylError> {
        let t = t.validate()?;
        let names = (1..=t.rank()).map(|i| format!("s{i}")).collect();
        Self::from_cartan(t.cartan(), names)
    }

    /// Parses `"A2xA1"`-style products; component `c` gets generators `c.1, c.2, …`.
    pub fn parse(s: &str) -> Result<Self, WeylError> {
        let mut acc = CoxeterType::trivial();
        for (c, part) in s.split(['x', '×', '*']).map(str::trim).enumerate() {
            let bad = || WeylError::Parse(part.to_string());
            let (letter, rank) = part.split_at(part.char_indices().nth(1).map_or(part.len(), |(i, _)| i));
            let rank: usize = rank.parse().map_err(|_| bad())?;
            let t = match (letter, rank) {
                ("A", n) => FiniteType::A(n),
                ("B", n) => FiniteType::B(n),
                ("C", n) => FiniteType::C(n),
                ("D", n) => FiniteType::D(n),
                ("E", n) => FiniteType::E(n),
                ("F", 4) => FiniteType::F4,
                ("G", 2) => FiniteType::G2,
                _ => return Err(bad()),
            };
            let comp = Self::irreducible(t)?.with_prefix(&format!("c{}.", c + 1));
            acc = acc.product(&comp)?;
        }
        Ok(acc)
    }

    pub fn trivial() -> Self {
        CoxeterType { cartan: Vec::new(), names: Vec::new(), components: Vec::new() }
    }

    pub fn with_prefix(&self, prefix: &str) -> Self {
        let mut t = self.clone();
        for n in &mut t.names {
            *n = format!("{prefix}{n}");
        }
        t
    }

    pub fn with_names(&self, names: Vec<String>) -> Result<Self, WeylError> {
        Self::from_cartan(self.cartan.clone(), names)
    }

    /// Disjoint product; generator names must not overlap.
    pub fn product(&self, other: &Self) -> Result<Self, WeylError> {
        if let Some(dup) = other.names.iter().find(|n| self.names.contains(n)) {
            return Err(WeylError::OverlappingNames(dup.clone()));
        }
        let (a, b) = (self.rank(), other.rank());
        let mut cartan = vec![vec![0i64; a + b]; a + b];
        for i in 0..a {
            cartan[i][..a].copy_from_slice(&self.cartan[i]);
        }
        for i in 0..b {
            cartan[a + i][a..].copy_from_slice(&other.cartan[i]);
        }
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        Self::from_cartan(cartan, names)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }
    /// Irreducible components with their generator indices.
    pub fn components(&self) -> &[(FiniteType, Vec<usize>)] {
        &self.components
    }
    pub fn order(&self) -> u128 {
        self.components.iter().map(|(t, _)| t.order()).product()
    }
    pub fn bond(&self, i: usize, j: usize) -> super::Bond {
        if i == j {
            return super::Bond::Order(1);
        }
        super::Bond::from_cartan(self.cartan[i][j], self.cartan[j][i])
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.components.iter().map(|(t, _)| t.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Elements of a finite Weyl group as permutations of its root set.
#[derive(Clone, Debug)]
pub struct CoxeterGroup {
    ty: CoxeterType,
    roots: Vec<Vec<i64>>,
    elements: Vec<Vec<u16>>,
    length: Vec<u32>,
    right_mul: Vec<Vec<usize>>,
    parent: Vec<Option<(usize, usize)>>,
}

pub fn enumerate_coxeter(ty: &CoxeterType) -> Result<CoxeterGroup, WeylError> {
    enumerate_coxeter_capped(ty, DEFAULT_ELEMENT_CAP)
}

pub fn enumerate_coxeter_capped(ty: &CoxeterType, cap: usize) -> Result<CoxeterGroup, WeylError> {
    if ty.rank() > MAX_RANK {
        return Err(WeylError::RankTooLarge(ty.rank()));
    }
    let order = ty.order();
    if order > cap as u128 {
        return Err(WeylError::CapExceeded { needed: order, cap });
    }
    let roots = root_closure(&ty.cartan).ok_or(WeylError::NotFinite)?;
    let index: HashMap<&Vec<i64>, u16> = roots.iter().enumerate().map(|(i, r)| (r, i as u16)).collect();
    let gens: Vec<Vec<u16>> = (0..ty.rank())
        .map(|i| roots.iter().map(|r| index[&reflect(&ty.cartan, i, r)]).collect())
        .collect();

    let id: Vec<u16> = (0..roots.len() as u16).collect();
    let mut elements = vec![id.clone()];
    let mut length = vec![0u32];
    let mut parent = vec![None];
    let mut lookup: HashMap<Vec<u16>, usize> = HashMap::from([(id, 0)]);
    let mut right_mul: Vec<Vec<usize>> = Vec::new();
    let mut k = 0;
    while k < elements.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (s, g) in gens.iter().enumerate() {
            // (e·s)(β) = e(s(β))
            let prod: Vec<u16> = g.iter().map(|&b| elements[k][b as usize]).collect();
            let idx = match lookup.get(&prod) {
                Some(&i) => i,
                None => {
                    let i = elements.len();
                    lookup.insert(prod.clone(), i);
                    elements.push(prod);
                    length.push(length[k] + 1);
                    parent.push(Some((k, s)));
                    i
                }
            };
            row.push(idx);
        }
        right_mul.push(row);
        k += 1;
    }
    debug_assert_eq!(elements.len() as u128, order);
    Ok(CoxeterGroup { ty: ty.clone(), roots, elements, length, right_mul, parent })
}

impl CoxeterGroup {
    pub fn ty(&self) -> &CoxeterType {
        &self.ty
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn rank(&self) -> usize {
        self.ty.rank()
    }
    pub fn length(&self, w: usize) -> u32 {
        self.length[w]
    }
    pub fn max_length(&self) -> u32 {
        self.length.iter().copied().max().unwrap_or(0)
    }
    /// Index of `w·s`.
    pub fn right_mul(&self, w: usize, s: usize) -> usize {
        self.right_mul[w][s]
    }
    /// BFS tree: `w = parent · s` with `length(w) = length(parent) + 1`.
    pub fn parent(&self, w: usize) -> Option<(usize, usize)> {
        self.parent[w]
    }
    pub fn identity(&self) -> usize {
        0
    }
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }
    /// Permutation of the root list induced by `w`.
    pub fn permutation(&self, w: usize) -> &[u16] {
        &self.elements[w]
    }
    /// Number of positive roots sent to negative roots.
    pub fn inversions(&self, w: usize) -> usize {
        let pos = |r: &Vec<i64>| r.iter().all(|&c| c >= 0);
        self.roots
            .iter()
            .enumerate()
            .filter(|(_, r)| pos(r))
            .filter(|&(i, _)| !pos(&self.roots[self.elements[w][i] as usize]))
            .count()
    }
    /// A reduced word for `w` (generator indices, left to right).
    pub fn reduced_word(&self, mut w: usize) -> Vec<usize> {
        let mut word = Vec::new();
        while let Some((p, s)) = self.parent[w] {
            word.push(s);
            w = p;
        }
        word.reverse();
        word
    }
}
