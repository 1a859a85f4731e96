//! Root systems of simple types with Bourbaki numbering.
//!
//! Coordinates used throughout the crate:
//! * roots in the simple-root basis (`Root::coords`) and weight basis (`Root::weight`);
//! * coweight-space points in the fundamental-coweight basis, so `a·x = Σ coords_i x_i`;
//! * coroots both in the simple-coroot basis and as coweight vectors.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::linalg::{self, IMat};

/// Largest supported rank; element keys pack one byte per simple root.
pub const MAX_RANK: usize = 8;

/// Marker for "no root" in the byte-indexed tables.
pub const NO_ROOT: u8 = u8::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLabel::A => "A",
            TypeLabel::B => "B",
            TypeLabel::C => "C",
            TypeLabel::D => "D",
            TypeLabel::E => "E",
            TypeLabel::F => "F",
            TypeLabel::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TypeLabel::A),
            "B" => Ok(TypeLabel::B),
            "C" => Ok(TypeLabel::C),
            "D" => Ok(TypeLabel::D),
            "E" => Ok(TypeLabel::E),
            "F" => Ok(TypeLabel::F),
            "G" => Ok(TypeLabel::G),
            other => Err(Error::InvalidType {
                label: other.to_string(),
                rank: 0,
                reason: "type label must be one of A,B,C,D,E,F,G".into(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Simple-root coordinates.
    pub coords: Vec<i64>,
    /// Weight coordinates `⟨a, ǎ_j⟩`.
    pub weight: Vec<i64>,
    /// Coroot in the simple-coroot basis.
    pub coroot: Vec<i64>,
    /// Coroot as a coweight vector: entry j is `⟨a_j, ǎ⟩`.
    pub coroot_cw: Vec<i64>,
    pub height: i64,
    /// Squared length, normalised so that short roots have length 1.
    pub norm2: i64,
}

/// Exact root datum of a simple, simply connected group.
#[derive(Clone, Debug)]
pub struct RootDatum {
    label: TypeLabel,
    rank: usize,
    cartan: IMat,
    cartan_adj: IMat,
    cartan_det: i64,
    /// Positive roots first (sorted by height), then their negatives in the same order.
    roots: Vec<Root>,
    npos: usize,
    index: FxHashMap<Vec<i64>, usize>,
    degrees: Vec<u32>,
    coxeter_number: u32,
    highest_root: usize,
    /// `reflect[i][r]` = index of `s_i(root r)`.
    reflect: Vec<Vec<u8>>,
    neg: Vec<u8>,
    /// `add[r1 * nroots + r2]` = index of `r1 + r2` or `NO_ROOT`.
    add: Vec<u8>,
}

fn invalid(label: TypeLabel, rank: usize, reason: &str) -> Error {
    Error::InvalidType {
        label: label.to_string(),
        rank,
        reason: reason.to_string(),
    }
}

/// Bourbaki Cartan matrix with `C[i][j] = ⟨a_j, ǎ_i⟩`.
pub fn cartan_matrix(label: TypeLabel, n: usize) -> Result<IMat> {
    use TypeLabel::*;
    let ok = match label {
        A => n >= 1,
        B | C => n >= 2,
        D => n >= 4,
        E => (6..=8).contains(&n),
        F => n == 4,
        G => n == 2,
    };
    if !ok {
        return Err(invalid(label, n, "unsupported rank for this type"));
    }
    if n > MAX_RANK {
        return Err(invalid(label, n, "rank above 8 is not supported"));
    }
    let mut c = linalg::identity(n);
    for row in c.iter_mut() {
        for x in row.iter_mut() {
            *x *= 2;
        }
    }
    let mut link = |i: usize, j: usize, cij: i64, cji: i64| {
        c[i][j] = cij;
        c[j][i] = cji;
    };
    match label {
        A => {
            for i in 0..n - 1 {
                link(i, i + 1, -1, -1);
            }
        }
        B => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            // a_n short
            link(n - 2, n - 1, -1, -2);
        }
        C => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            // a_n long
            link(n - 2, n - 1, -2, -1);
        }
        D => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 3, n - 1, -1, -1);
        }
        E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            for i in 2..n - 1 {
                link(i, i + 1, -1, -1);
            }
        }
        F => {
            link(0, 1, -1, -1);
            // a_1, a_2 long
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        G => {
            // a_1 short
            link(0, 1, -3, -1);
        }
    }
    Ok(c)
}

/// Squared lengths of simple roots, normalised so that short roots have length 1.
fn simple_lengths(c: &IMat) -> Vec<i64> {
    let n = c.len();
    let mut len: Vec<Option<BigRational>> = vec![None; n];
    len[0] = Some(BigRational::one());
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if j != i && c[i][j] != 0 && len[j].is_none() {
                let li = len[i].clone().unwrap();
                len[j] = Some(li * BigRational::new(c[i][j].into(), c[j][i].into()));
                stack.push(j);
            }
        }
    }
    let len: Vec<BigRational> = len
        .into_iter()
        .map(|x| x.expect("connected diagram"))
        .collect();
    let min = len.iter().min().unwrap().clone();
    len.iter()
        .map(|l| {
            let q = l / &min;
            assert!(q.is_integer());
            q.to_integer().to_i64().unwrap()
        })
        .collect()
}

impl RootDatum {
    pub fn build(label: TypeLabel, rank: usize) -> Result<RootDatum> {
        let cartan = cartan_matrix(label, rank)?;
        let n = rank;
        let lens = simple_lengths(&cartan);
        // sym[i][j] = 2 (a_i, a_j)
        let sym: IMat = (0..n)
            .map(|i| (0..n).map(|j| cartan[i][j] * lens[i]).collect())
            .collect();
        let weight_of = |c: &[i64]| -> Vec<i64> { linalg::mat_vec(&cartan, c) };

        // Reflection closure from the simple roots.
        let mut all: Vec<Vec<i64>> = Vec::new();
        let mut seen: FxHashMap<Vec<i64>, ()> = FxHashMap::default();
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            seen.insert(e.clone(), ());
            all.push(e);
        }
        let mut head = 0;
        while head < all.len() {
            let r = all[head].clone();
            head += 1;
            let w = weight_of(&r);
            for i in 0..n {
                let mut s = r.clone();
                s[i] -= w[i];
                if !seen.contains_key(&s) {
                    seen.insert(s.clone(), ());
                    all.push(s);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = all
            .into_iter()
            .filter(|r| r.iter().all(|&x| x >= 0))
            .collect();
        pos.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let npos = pos.len();
        let mut coords_list = pos.clone();
        coords_list.extend(pos.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        if coords_list.len() > NO_ROOT as usize {
            return Err(invalid(
                label,
                rank,
                "too many roots for byte-indexed tables",
            ));
        }

        let mut roots = Vec::with_capacity(coords_list.len());
        let mut index = FxHashMap::default();
        for (k, c) in coords_list.iter().enumerate() {
            let weight = weight_of(c);
            let norm2: i64 = {
                let v = linalg::mat_vec(&sym, c);
                linalg::dot(c, &v) / 2
            };
            let coroot: Vec<i64> = (0..n)
                .map(|j| {
                    let num = c[j] * lens[j];
                    assert_eq!(num % norm2, 0, "coroot coefficients are integral");
                    num / norm2
                })
                .collect();
            let coroot_cw: Vec<i64> = (0..n)
                .map(|j| (0..n).map(|k| coroot[k] * cartan[k][j]).sum())
                .collect();
            roots.push(Root {
                coords: c.clone(),
                weight,
                coroot,
                coroot_cw,
                height: c.iter().sum(),
                norm2,
            });
            index.insert(c.clone(), k);
        }
        let nroots = roots.len();
        let neg: Vec<u8> = (0..nroots)
            .map(|k| {
                if k < npos {
                    (k + npos) as u8
                } else {
                    (k - npos) as u8
                }
            })
            .collect();
        let reflect: Vec<Vec<u8>> = (0..n)
            .map(|i| {
                roots
                    .iter()
                    .map(|r| {
                        let mut s = r.coords.clone();
                        s[i] -= r.weight[i];
                        index[&s] as u8
                    })
                    .collect()
            })
            .collect();
        let mut add = vec![NO_ROOT; nroots * nroots];
        for a in 0..nroots {
            for b in 0..nroots {
                let s: Vec<i64> = roots[a]
                    .coords
                    .iter()
                    .zip(&roots[b].coords)
                    .map(|(x, y)| x + y)
                    .collect();
                if let Some(&k) = index.get(&s) {
                    add[a * nroots + b] = k as u8;
                }
            }
        }
        let highest_root = npos - 1;
        let cartan_det = linalg::det(&cartan).to_i64().unwrap();
        let cartan_adj = linalg::adjugate(&cartan);

        let mut datum = RootDatum {
            label,
            rank,
            cartan,
            cartan_adj,
            cartan_det,
            roots,
            npos,
            index,
            degrees: vec![],
            coxeter_number: 0,
            highest_root,
            reflect,
            neg,
            add,
        };
        let (h, degrees) = datum.degrees_from_coxeter_element();
        datum.coxeter_number = h;
        datum.degrees = degrees;
        Ok(datum)
    }

    /// Degrees read off the characteristic polynomial of `s_1 s_2 … s_n`.
    fn degrees_from_coxeter_element(&self) -> (u32, Vec<u32>) {
        let n = self.rank;
        let mut cox = linalg::identity(n);
        for i in 0..n {
            cox = linalg::mat_mul(&cox, &self.simple_reflection_matrix(i));
        }
        let id = linalg::identity(n);
        let mut h = 1u32;
        let mut p = cox.clone();
        while p != id {
            p = linalg::mat_mul(&p, &cox);
            h += 1;
        }
        let cp = linalg::charpoly(&cox);
        let mut exps = Vec::new();
        for d in linalg::divisors(h) {
            let k = linalg::factor_multiplicity(&cp, &linalg::cyclotomic(d));
            for j in 0..d {
                if num_integer::Integer::gcd(&j, &d) == 1 {
                    let e = (h / d) * j;
                    for _ in 0..k {
                        exps.push(e);
                    }
                }
            }
        }
        exps.sort_unstable();
        assert_eq!(
            exps.len(),
            n,
            "Coxeter element spectrum accounts for all exponents"
        );
        (h, exps.into_iter().map(|e| e + 1).collect())
    }

    /// Matrix of `s_i` in the simple-root basis (columns are images of simple roots).
    pub fn simple_reflection_matrix(&self, i: usize) -> IMat {
        let n = self.rank;
        let mut m = linalg::identity(n);
        for j in 0..n {
            m[i][j] -= self.cartan[i][j];
        }
        m
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn name(&self) -> String {
        format!("{}{}", self.label, self.rank)
    }
    pub fn cartan(&self) -> &IMat {
        &self.cartan
    }
    pub fn cartan_adjugate(&self) -> &IMat {
        &self.cartan_adj
    }
    /// `|det C|`, the order of the center of the simply connected group.
    pub fn center_order(&self) -> u64 {
        self.cartan_det.unsigned_abs()
    }
    pub fn cartan_det(&self) -> i64 {
        self.cartan_det
    }
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }
    pub fn root(&self, r: usize) -> &Root {
        &self.roots[r]
    }
    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }
    pub fn num_positive(&self) -> usize {
        self.npos
    }
    pub fn pos_roots(&self) -> &[Root] {
        &self.roots[..self.npos]
    }
    pub fn is_positive(&self, r: usize) -> bool {
        r < self.npos
    }
    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }
    pub fn exponents(&self) -> Vec<u32> {
        self.degrees.iter().map(|d| d - 1).collect()
    }
    pub fn coxeter_number(&self) -> u32 {
        self.coxeter_number
    }
    pub fn highest_root(&self) -> usize {
        self.highest_root
    }
    /// `|W₀| = ∏ d_i`.
    pub fn weyl_order(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).product()
    }
    pub fn height(&self, r: usize) -> i64 {
        self.roots[r].height
    }
    pub fn neg(&self, r: usize) -> usize {
        self.neg[r] as usize
    }
    pub fn reflect_simple(&self, i: usize, r: usize) -> usize {
        self.reflect[i][r] as usize
    }
    pub(crate) fn reflect_table(&self, i: usize) -> &[u8] {
        &self.reflect[i]
    }
    pub(crate) fn neg_table(&self) -> &[u8] {
        &self.neg
    }
    /// Index of `r1 + r2` when it is a root.
    pub fn add_roots(&self, r1: usize, r2: usize) -> Option<usize> {
        let v = self.add[r1 * self.roots.len() + r2];
        (v != NO_ROOT).then_some(v as usize)
    }
    #[inline]
    pub(crate) fn add_raw(&self, r1: u8, r2: u8) -> u8 {
        self.add[r1 as usize * self.roots.len() + r2 as usize]
    }

    /// 1-based positions `i` (in the sorted degree list) with `m | d_i`.
    pub fn regular_indices(&self, m: u32) -> Vec<usize> {
        self.degrees
            .iter()
            .enumerate()
            .filter(|(_, &d)| m != 0 && d % m == 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `∏_{i ∈ I_m} d_i`.
    pub fn degree_product(&self, m: u32) -> u64 {
        self.regular_indices(m)
            .iter()
            .map(|&i| self.degrees[i - 1] as u64)
            .product()
    }

    /// `⟨a_r, b̌⟩` for roots indexed by `r`, `b`.
    pub fn pairing(&self, r: usize, b: usize) -> i64 {
        linalg::dot(&self.roots[r].weight, &self.roots[b].coroot)
    }

    /// Index of `s_b(r)`.
    pub fn reflect_root(&self, b: usize, r: usize) -> usize {
        let p = self.pairing(r, b);
        let c: Vec<i64> = self.roots[r]
            .coords
            .iter()
            .zip(&self.roots[b].coords)
            .map(|(x, y)| x - p * y)
            .collect();
        self.index[&c]
    }

    /// Pairing of a root with a coweight-space point given in coweight coordinates.
    pub fn eval_root<T>(&self, r: usize, x: &[T]) -> T
    where
        T: Clone + Zero + std::ops::Mul<Output = T> + From<i64>,
    {
        let mut acc = T::zero();
        for (c, xi) in self.roots[r].coords.iter().zip(x) {
            if *c != 0 {
                acc = acc + T::from(*c) * xi.clone();
            }
        }
        acc
    }

    /// Converts weight coordinates to simple-root coordinates, if integral.
    pub fn weight_to_root_coords(&self, w: &[i64]) -> Option<Vec<i64>> {
        let v = linalg::mat_vec(&self.cartan_adj, w);
        let d = self.cartan_det;
        v.iter()
            .map(|&x| if x % d == 0 { Some(x / d) } else { None })
            .collect()
    }

    /// Converts a weight-coordinate vector to exact root coordinates.
    pub fn weight_to_root_coords_rational(&self, w: &[i64]) -> Vec<BigRational> {
        let v = linalg::mat_vec(&self.cartan_adj, w);
        v.into_iter()
            .map(|x| BigRational::new(BigInt::from(x), BigInt::from(self.cartan_det)))
            .collect()
    }

    /// ρ̌ in coweight coordinates.
    pub fn rho_check(&self) -> Vec<i64> {
        vec![1; self.rank]
    }

    /// True for roots of maximal length.
    pub fn is_long(&self, r: usize) -> bool {
        let max = self.roots.iter().map(|x| x.norm2).max().unwrap();
        self.roots[r].norm2 == max
    }
}

/// All supported (type, rank) pairs up to rank 8.
pub fn supported_types() -> Vec<(TypeLabel, usize)> {
    let mut v = Vec::new();
    for n in 1..=8 {
        v.push((TypeLabel::A, n));
    }
    for n in 2..=8 {
        v.push((TypeLabel::B, n));
    }
    for n in 2..=8 {
        v.push((TypeLabel::C, n));
    }
    for n in 4..=8 {
        v.push((TypeLabel::D, n));
    }
    for n in 6..=8 {
        v.push((TypeLabel::E, n));
    }
    v.push((TypeLabel::F, 4));
    v.push((TypeLabel::G, 2));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn known_order(label: TypeLabel, n: u64) -> u64 {
        let fact = |k: u64| (1..=k).product::<u64>();
        match label {
            TypeLabel::A => fact(n + 1),
            TypeLabel::B | TypeLabel::C => (1u64 << n) * fact(n),
            TypeLabel::D => (1u64 << (n - 1)) * fact(n),
            TypeLabel::E => match n {
                6 => 51840,
                7 => 2903040,
                _ => 696729600,
            },
            TypeLabel::F => 1152,
            TypeLabel::G => 12,
        }
    }

    #[test]
    fn g2_basics() {
        let d = RootDatum::build(TypeLabel::G, 2).unwrap();
        assert_eq!(d.coxeter_number(), 6);
        assert_eq!(d.degrees(), &[2, 6]);
        assert_eq!(d.num_positive(), 6);
        assert_eq!(d.center_order(), 1);
        assert_eq!(d.root(d.highest_root()).coords, vec![3, 2]);
        assert_eq!(d.height(d.highest_root()), 5);
        assert!(d.root_index(&[3, 1]).is_some());
    }

    #[test]
    fn e8_degrees() {
        let d = RootDatum::build(TypeLabel::E, 8).unwrap();
        assert_eq!(d.coxeter_number(), 30);
        assert_eq!(d.degrees(), &[2, 8, 12, 14, 18, 20, 24, 30]);
        assert_eq!(d.weyl_order(), 696729600);
        assert_eq!(d.center_order(), 1);
        assert_eq!(d.regular_indices(5), vec![6, 8]);
    }

    #[test]
    fn invariants_all_types() {
        for (label, n) in supported_types() {
            let d = RootDatum::build(label, n).unwrap();
            let h = d.coxeter_number() as usize;
            assert_eq!(d.num_positive(), n * h / 2, "{}", d.name());
            let s: u32 = d.degrees().iter().map(|x| x - 1).sum();
            assert_eq!(s as usize, d.num_positive());
            assert_eq!(d.weyl_order(), known_order(label, n as u64), "{}", d.name());
            assert_eq!(d.height(d.highest_root()), h as i64 - 1);
            for r in d.roots() {
                assert!(r.height != 0 && r.height.abs() <= h as i64 - 1);
                assert_eq!(r.weight, linalg::mat_vec(d.cartan(), &r.coords));
            }
        }
    }

    #[test]
    fn f4_i8() {
        let d = RootDatum::build(TypeLabel::F, 4).unwrap();
        assert_eq!(d.regular_indices(8), vec![3]);
        assert_eq!(d.regular_indices(1), vec![1, 2, 3, 4]);
    }

    #[test]
    fn c2_heights() {
        let d = RootDatum::build(TypeLabel::C, 2).unwrap();
        let th = d.highest_root();
        assert_eq!(d.root(th).coords, vec![2, 1]);
        assert_eq!(d.height(th), 3);
        assert_eq!(d.center_order(), 2);
    }

    #[test]
    fn rejects_bad_types() {
        assert!(RootDatum::build(TypeLabel::E, 5).is_err());
        assert!(RootDatum::build(TypeLabel::D, 3).is_err());
        assert!(RootDatum::build(TypeLabel::A, 9).is_err());
        assert!(RootDatum::build(TypeLabel::G, 3).is_err());
    }
}
