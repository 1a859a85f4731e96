//! Weyl group elements, spectra, elliptic regular certification, centralizers
//! and reflection subgroups.
//!
//! An element is determined by the images of the simple roots; the key packs
//! those root indices one byte each into a `u64`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::linalg::{self, IMat, Poly};
use crate::rootdata::{RootDatum, TypeLabel, MAX_RANK, NO_ROOT};

pub type Key = u64;

/// Default seed of every randomized search.
pub const DEFAULT_SEED: u64 = 0x5eed_0001;

/// Element budget for enumerations (closures and class orbits).
pub const DEFAULT_BUDGET: usize = 8_000_000;

/// Central centralizers (the whole group) are enumerated only up to this order.
pub const CENTRAL_ENUMERATION_LIMIT: u64 = 1_000_000;

/// Largest group that is scanned element by element when listing elliptic numbers.
pub const EXHAUSTIVE_LIMIT: u64 = 51_840;

#[inline]
pub fn key_get(k: Key, j: usize) -> u8 {
    (k >> (8 * j)) as u8
}

#[inline]
fn key_set(k: Key, j: usize, v: u8) -> Key {
    (k & !(0xffu64 << (8 * j))) | ((v as u64) << (8 * j))
}

pub fn pack_key(images: &[u8]) -> Key {
    debug_assert!(images.len() <= MAX_RANK);
    images
        .iter()
        .enumerate()
        .fold(0u64, |k, (j, &b)| k | ((b as u64) << (8 * j)))
}

pub fn identity_key(d: &RootDatum) -> Key {
    pack_key(&(0..d.rank() as u8).collect::<Vec<_>>())
}

/// Key of `s_i · x`.
#[inline]
pub fn left_simple(d: &RootDatum, k: Key, i: usize) -> Key {
    let t = d.reflect_table(i);
    let mut out = 0u64;
    for j in 0..d.rank() {
        out |= (t[key_get(k, j) as usize] as u64) << (8 * j);
    }
    out
}

/// Key of `p · x` for an element with full root permutation `p`.
#[inline]
pub fn left_perm(n: usize, perm: &[u8], k: Key) -> Key {
    let mut out = 0u64;
    for j in 0..n {
        out |= (perm[key_get(k, j) as usize] as u64) << (8 * j);
    }
    out
}

/// Key of `x · s_i`, using `s_i a_j = a_j + |C_ij| a_i`.
#[inline]
pub fn right_simple(d: &RootDatum, k: Key, i: usize) -> Key {
    let xi = key_get(k, i);
    let mut out = k;
    for j in 0..d.rank() {
        if j == i {
            out = key_set(out, j, d.neg_table()[xi as usize]);
            continue;
        }
        let t = -d.cartan()[i][j];
        let mut r = key_get(k, j);
        for _ in 0..t {
            r = d.add_raw(r, xi);
            debug_assert_ne!(r, NO_ROOT);
        }
        out = key_set(out, j, r);
    }
    out
}

/// Key of `s_i x s_i`.
#[inline]
pub fn conj_simple(d: &RootDatum, k: Key, i: usize) -> Key {
    left_simple(d, right_simple(d, k, i), i)
}

/// A Weyl group element: root-basis matrix (columns are images of simple roots) and key.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElt {
    key: Key,
    mat: IMat,
}

impl WeylElt {
    pub fn identity(d: &RootDatum) -> Self {
        WeylElt {
            key: identity_key(d),
            mat: linalg::identity(d.rank()),
        }
    }

    /// Simple reflection `s_{i+1}` (0-based index).
    pub fn simple(d: &RootDatum, i: usize) -> Self {
        Self::from_key(d, left_simple(d, identity_key(d), i))
    }

    pub fn from_key(d: &RootDatum, key: Key) -> Self {
        let n = d.rank();
        let mut mat = vec![vec![0i64; n]; n];
        for j in 0..n {
            let c = &d.root(key_get(key, j) as usize).coords;
            for i in 0..n {
                mat[i][j] = c[i];
            }
        }
        WeylElt { key, mat }
    }

    /// Builds an element from its root-basis matrix; fails if it does not permute the roots.
    pub fn from_root_matrix(d: &RootDatum, mat: IMat) -> Result<Self> {
        let n = d.rank();
        let mut imgs = Vec::with_capacity(n);
        for j in 0..n {
            let col: Vec<i64> = (0..n).map(|i| mat[i][j]).collect();
            let r = d.root_index(&col).ok_or_else(|| {
                Error::Precondition("matrix does not map simple roots to roots".into())
            })?;
            imgs.push(r as u8);
        }
        Ok(WeylElt {
            key: pack_key(&imgs),
            mat,
        })
    }

    pub fn key(&self) -> Key {
        self.key
    }

    pub fn root_matrix(&self) -> &IMat {
        &self.mat
    }

    /// Matrix on the weight lattice `X₀` in the fundamental weight basis: `C M C⁻¹`.
    pub fn weight_matrix(&self, d: &RootDatum) -> IMat {
        let cm = linalg::mat_mul(d.cartan(), &self.mat);
        let p = linalg::mat_mul(&cm, d.cartan_adjugate());
        let det = d.cartan_det();
        p.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| {
                        debug_assert_eq!(x % det, 0);
                        x / det
                    })
                    .collect()
            })
            .collect()
    }

    /// Matrix on coweight space in fundamental coweight coordinates (inverse transpose).
    pub fn coweight_matrix(&self, d: &RootDatum) -> IMat {
        linalg::transpose(self.inverse(d).root_matrix())
    }

    pub fn mul(&self, d: &RootDatum, other: &WeylElt) -> WeylElt {
        let perm = self.perm(d);
        WeylElt::from_key(d, left_perm(d.rank(), &perm, other.key))
    }

    pub fn inverse(&self, d: &RootDatum) -> WeylElt {
        let perm = self.perm(d);
        let mut inv = vec![0u8; perm.len()];
        for (r, &p) in perm.iter().enumerate() {
            inv[p as usize] = r as u8;
        }
        let imgs: Vec<u8> = (0..d.rank()).map(|j| inv[j]).collect();
        WeylElt::from_key(d, pack_key(&imgs))
    }

    pub fn pow(&self, d: &RootDatum, e: u64) -> WeylElt {
        let perm = self.perm(d);
        let mut k = identity_key(d);
        for _ in 0..e {
            k = left_perm(d.rank(), &perm, k);
        }
        WeylElt::from_key(d, k)
    }

    /// `g · self · g⁻¹`.
    pub fn conj_by(&self, d: &RootDatum, g: &WeylElt) -> WeylElt {
        g.mul(d, self).mul(d, &g.inverse(d))
    }

    /// Image of root `r`.
    pub fn apply_root(&self, d: &RootDatum, r: usize) -> usize {
        let v = linalg::mat_vec(&self.mat, &d.root(r).coords);
        d.root_index(&v).expect("Weyl elements permute roots")
    }

    /// Full permutation of root indices.
    pub fn perm(&self, d: &RootDatum) -> Vec<u8> {
        (0..d.num_roots())
            .map(|r| self.apply_root(d, r) as u8)
            .collect()
    }

    pub fn order(&self, d: &RootDatum) -> u64 {
        perm_order(&self.perm(d))
    }

    pub fn det(&self) -> i64 {
        let p = linalg::charpoly(&self.mat);
        let c0 = p[0];
        let n = self.mat.len();
        (if n % 2 == 0 { c0 } else { -c0 }) as i64
    }

    pub fn charpoly(&self) -> Poly {
        linalg::charpoly(&self.mat)
    }

    pub fn is_identity(&self, d: &RootDatum) -> bool {
        self.key == identity_key(d)
    }

    /// Word as a product of simple reflections, via descents (1-based indices).
    pub fn reduced_word(&self, d: &RootDatum) -> Vec<usize> {
        let mut word = Vec::new();
        let mut k = self.key;
        let id = identity_key(d);
        while k != id {
            // right descent: x(a_i) < 0
            let i = (0..d.rank())
                .find(|&i| !d.is_positive(key_get(k, i) as usize))
                .expect("non-identity element has a descent");
            word.push(i + 1);
            k = right_simple(d, k, i);
        }
        word.reverse();
        word
    }
}

pub fn perm_order(perm: &[u8]) -> u64 {
    let mut seen = vec![false; perm.len()];
    let mut o = 1u64;
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0u64;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize;
            len += 1;
        }
        o = linalg::lcm(o, len);
    }
    o
}

/// Product of simple reflections in the given order (1-based indices).
pub fn word_to_elt(d: &RootDatum, word: &[usize]) -> Result<WeylElt> {
    let n = d.rank();
    let mut k = identity_key(d);
    for &i in word.iter().rev() {
        if i == 0 || i > n {
            return Err(Error::BadIndex { index: i, rank: n });
        }
        k = left_simple(d, k, i - 1);
    }
    Ok(WeylElt::from_key(d, k))
}

/// Parses a digit string such as "123234" into a word.
pub fn parse_digit_word(s: &str) -> Result<Vec<usize>> {
    s.chars()
        .map(|c| {
            c.to_digit(10)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("bad word digit {c:?}")))
        })
        .collect()
}

/// Dimension of the `ζ_m`-eigenspace: multiplicity of `Φ_m` in the characteristic polynomial.
pub fn eigenspace_dim(w: &WeylElt, m: u32) -> usize {
    if m == 0 {
        return 0;
    }
    linalg::factor_multiplicity(&w.charpoly(), &linalg::cyclotomic(m))
}

/// True iff some `ζ_m`-eigenvector of `w` lies on no reflecting hyperplane.
///
/// The eigenspace avoids `ker ǎ` iff the Galois-stable space `ker Φ_m(w)` does,
/// i.e. iff the coroot is not in the row space of `Φ_m(w)`.
pub fn has_regular_eigenvector(d: &RootDatum, w: &WeylElt, m: u32) -> bool {
    let p = linalg::poly_eval_matrix(&linalg::cyclotomic(m), w.root_matrix());
    let r0 = linalg::rank(&p);
    if r0 == d.rank() {
        return false;
    }
    d.pos_roots().iter().all(|root| {
        let mut rows = p.clone();
        rows.push(root.coroot_cw.iter().map(|&x| x.into()).collect());
        linalg::rank(&rows) > r0
    })
}

/// True iff `w` has order `m`, no fixed vector, a `ζ_m`-eigenspace of dimension
/// `|I_m|`, and a regular `ζ_m`-eigenvector.
pub fn certify_elliptic_regular(d: &RootDatum, w: &WeylElt, m: u32) -> bool {
    if m < 2 || w.order(d) != m as u64 {
        return false;
    }
    let cp = w.charpoly();
    if linalg::poly_eval(&cp, 1) == 0 {
        return false;
    }
    linalg::factor_multiplicity(&cp, &linalg::cyclotomic(m)) == d.regular_indices(m).len()
        && has_regular_eigenvector(d, w, m)
}

/// Coxeter word `1 2 … n`.
pub fn coxeter_word(d: &RootDatum) -> Vec<usize> {
    (1..=d.rank()).collect()
}

/// Representative words of non-Coxeter elliptic regular classes, with their expected orders.
pub fn special_seed_words(d: &RootDatum) -> Vec<(&'static str, u32)> {
    match (d.label(), d.rank()) {
        (TypeLabel::F, 4) => vec![("123234", 8)],
        (TypeLabel::E, 6) => vec![("12342546", 9)],
        (TypeLabel::E, 7) => vec![("123425467", 14)],
        (TypeLabel::E, 8) => vec![("1234254678", 24), ("123425465478", 20)],
        _ => vec![],
    }
}

/// All seed words: Coxeter word first.
pub fn seed_words(d: &RootDatum) -> Vec<Vec<usize>> {
    let mut v = vec![coxeter_word(d)];
    for (s, _) in special_seed_words(d) {
        v.push(parse_digit_word(s).expect("static words are digits"));
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepSource {
    /// Power of a seed word.
    SeedPower { word: Vec<usize>, exponent: u64 },
    /// Power of a random element found after `tries` draws.
    Random {
        seed: u64,
        tries: usize,
        exponent: u64,
    },
}

#[derive(Clone, Debug)]
pub struct EllipticRep {
    pub m: u32,
    pub elt: WeylElt,
    pub source: RepSource,
}

/// Random element as a product of `len` or `len + 1` random simple reflections.
pub fn random_element(d: &RootDatum, rng: &mut ChaCha8Rng, len: usize) -> WeylElt {
    let mut k = identity_key(d);
    for _ in 0..len + rng.gen_range(0..2) {
        k = left_simple(d, k, rng.gen_range(0..d.rank()));
    }
    WeylElt::from_key(d, k)
}

fn random_search(d: &RootDatum, m: u32, seed: u64, budget: usize) -> Option<EllipticRep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = 4 * d.num_positive() + 7;
    for tries in 1..=budget {
        let w = random_element(d, &mut rng, len);
        let o = w.order(d);
        if o % m as u64 == 0 {
            let p = w.pow(d, o / m as u64);
            if certify_elliptic_regular(d, &p, m) {
                return Some(EllipticRep {
                    m,
                    elt: p,
                    source: RepSource::Random {
                        seed,
                        tries,
                        exponent: o / m as u64,
                    },
                });
            }
        }
    }
    None
}

/// Draw budget of the randomized fallback.
pub const RANDOM_BUDGET: usize = 3000;

/// Certified elliptic regular element of order `m`: a power of a seed word, else a random search.
pub fn elliptic_rep(d: &RootDatum, m: u32, seed: u64) -> Result<EllipticRep> {
    if m < 2 {
        return Err(Error::NoEllipticRep {
            m,
            detail: "order must be at least 2".into(),
        });
    }
    for word in seed_words(d) {
        let w = word_to_elt(d, &word)?;
        let o = w.order(d);
        if o % m as u64 == 0 {
            let p = w.pow(d, o / m as u64);
            if certify_elliptic_regular(d, &p, m) {
                return Ok(EllipticRep {
                    m,
                    elt: p,
                    source: RepSource::SeedPower {
                        word,
                        exponent: o / m as u64,
                    },
                });
            }
        }
    }
    random_search(d, m, seed, RANDOM_BUDGET).ok_or_else(|| Error::NoEllipticRep {
        m,
        detail: format!(
            "no seed power certified; {RANDOM_BUDGET} random draws with seed {seed} failed"
        ),
    })
}

/// Certification report of one seed word at its own order.
#[derive(Clone, Debug)]
pub struct SeedReport {
    pub word: Vec<usize>,
    pub expected_order: u32,
    pub order: u64,
    pub certified: bool,
    /// Set when the seed failed and the randomized search supplied an element instead.
    pub fallback: Option<RepSource>,
}

/// Certifies every seed word at its expected order, running the fallback for failures.
pub fn check_seed_words(d: &RootDatum, seed: u64) -> Vec<SeedReport> {
    let mut out = Vec::new();
    let mut items: Vec<(Vec<usize>, u32)> = vec![(coxeter_word(d), d.coxeter_number())];
    for (s, m) in special_seed_words(d) {
        items.push((parse_digit_word(s).unwrap(), m));
    }
    for (word, m) in items {
        let w = word_to_elt(d, &word).expect("seed words are in range");
        let order = w.order(d);
        let certified = certify_elliptic_regular(d, &w, m);
        let fallback = if certified {
            None
        } else {
            random_search(d, m, seed, RANDOM_BUDGET).map(|r| r.source)
        };
        out.push(SeedReport {
            word,
            expected_order: m,
            order,
            certified,
            fallback,
        });
    }
    out
}

/// Every element of `W₀` by breadth-first search on keys.
pub fn enumerate_group(d: &RootDatum, budget: usize) -> Result<Vec<Key>> {
    let id = identity_key(d);
    let mut seen = FxHashSet::default();
    seen.insert(id);
    let mut list = vec![id];
    let mut head = 0;
    while head < list.len() {
        let k = list[head];
        head += 1;
        for i in 0..d.rank() {
            let nk = left_simple(d, k, i);
            if seen.insert(nk) {
                list.push(nk);
                if list.len() > budget {
                    return Err(Error::Budget {
                        budget,
                        what: format!("enumerating W({})", d.name()),
                    });
                }
            }
        }
    }
    Ok(list)
}

#[derive(Clone, Debug)]
pub struct EllipticNumbers {
    /// `m` for which a certified representative was constructed.
    pub constructive: BTreeSet<u32>,
    /// Orders of all elliptic regular elements, when the group was scanned exhaustively.
    pub exhaustive: Option<BTreeSet<u32>>,
}

impl EllipticNumbers {
    pub fn complete(&self) -> Option<bool> {
        self.exhaustive.as_ref().map(|e| *e == self.constructive)
    }
}

/// Divisors `≥ 2` of the degrees.
pub fn en_candidates(d: &RootDatum) -> BTreeSet<u32> {
    d.degrees()
        .iter()
        .flat_map(|&x| linalg::divisors(x))
        .filter(|&m| m >= 2)
        .collect()
}

pub fn elliptic_numbers(d: &RootDatum, seed: u64) -> EllipticNumbers {
    let constructive: BTreeSet<u32> = en_candidates(d)
        .into_iter()
        .filter(|&m| elliptic_rep(d, m, seed).is_ok())
        .collect();
    let exhaustive = if d.weyl_order() <= EXHAUSTIVE_LIMIT {
        let all = enumerate_group(d, EXHAUSTIVE_LIMIT as usize + 1).expect("group within limit");
        let mut set = BTreeSet::new();
        for k in all {
            let w = WeylElt::from_key(d, k);
            let o = w.order(d);
            if o >= 2 && certify_elliptic_regular(d, &w, o as u32) {
                set.insert(o as u32);
            }
        }
        Some(set)
    } else {
        None
    };
    EllipticNumbers {
        constructive,
        exhaustive,
    }
}

/// Whether `-1` lies in `W₀` (all degrees even).
pub fn has_minus_one(d: &RootDatum) -> bool {
    d.degrees().iter().all(|x| x % 2 == 0)
}

pub fn minus_one(d: &RootDatum) -> Option<WeylElt> {
    if !has_minus_one(d) {
        return None;
    }
    let imgs: Vec<u8> = (0..d.rank()).map(|j| d.neg(j) as u8).collect();
    Some(WeylElt::from_key(d, pack_key(&imgs)))
}

/// Subgroup given by generators, its order, and its element keys when they were enumerated.
#[derive(Clone, Debug)]
pub struct SubgroupEnum {
    pub generators: Vec<WeylElt>,
    /// `None` only for the whole group `W₀` when it exceeds the enumeration budget.
    pub elements: Option<FxHashSet<Key>>,
    pub order: u64,
}

impl SubgroupEnum {
    /// Membership test; `None` when the elements were not enumerated.
    pub fn contains(&self, w: &WeylElt) -> Option<bool> {
        self.elements.as_ref().map(|e| e.contains(&w.key()))
    }
}

/// Subgroup generated by `gens`, enumerated by left multiplication.
pub fn closure(d: &RootDatum, gens: &[WeylElt], budget: usize) -> Result<SubgroupEnum> {
    let perms: Vec<Vec<u8>> = gens.iter().map(|g| g.perm(d)).collect();
    let n = d.rank();
    let id = identity_key(d);
    let mut seen = FxHashSet::default();
    seen.insert(id);
    let mut stack = vec![id];
    while let Some(k) = stack.pop() {
        for p in &perms {
            let nk = left_perm(n, p, k);
            if seen.insert(nk) {
                if seen.len() > budget {
                    return Err(Error::Budget {
                        budget,
                        what: "subgroup closure".into(),
                    });
                }
                stack.push(nk);
            }
        }
    }
    let order = seen.len() as u64;
    Ok(SubgroupEnum {
        generators: gens.to_vec(),
        elements: Some(seen),
        order,
    })
}

/// Diagnostics of a centralizer computation.
#[derive(Clone, Debug, Default)]
pub struct CentralizerStats {
    /// Size of the conjugacy class, when it had to be enumerated.
    pub class_size: Option<u64>,
    pub schreier_tested: usize,
}

/// Centralizer `Z_{W₀}(w)` of an elliptic regular element of order `m`.
pub fn centralizer(d: &RootDatum, w: &WeylElt, m: u32) -> Result<(SubgroupEnum, CentralizerStats)> {
    centralizer_with_budget(d, w, m, DEFAULT_BUDGET)
}

pub fn centralizer_with_budget(
    d: &RootDatum,
    w: &WeylElt,
    m: u32,
    budget: usize,
) -> Result<(SubgroupEnum, CentralizerStats)> {
    if !certify_elliptic_regular(d, w, m) {
        return Err(Error::Precondition(format!(
            "centralizer requires an elliptic regular element of order {m}"
        )));
    }
    let target = d.degree_product(m);
    if target == d.weyl_order() {
        // central element
        let simples: Vec<WeylElt> = (0..d.rank()).map(|i| WeylElt::simple(d, i)).collect();
        let elements = if target <= CENTRAL_ENUMERATION_LIMIT.min(budget as u64) {
            closure(d, &simples, budget)?.elements
        } else {
            None
        };
        return Ok((
            SubgroupEnum {
                generators: simples,
                elements,
                order: target,
            },
            CentralizerStats {
                class_size: Some(1),
                schreier_tested: 0,
            },
        ));
    }
    let mut gens = vec![w.clone()];
    if let Some(mo) = minus_one(d) {
        gens.push(mo);
    }
    let mut group = closure(d, &gens, budget)?;
    let mut stats = CentralizerStats::default();
    if group.order == target {
        return Ok((group, stats));
    }

    // Conjugacy class of w by simple-reflection conjugation, with a spanning tree.
    let n = d.rank();
    let mut index: FxHashMap<Key, u32> = FxHashMap::default();
    let mut nodes: Vec<(Key, u32, u8)> = vec![(w.key(), u32::MAX, u8::MAX)];
    index.insert(w.key(), 0);
    let mut head = 0;
    while head < nodes.len() {
        let k = nodes[head].0;
        for i in 0..n {
            let y = conj_simple(d, k, i);
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(y) {
                e.insert(nodes.len() as u32);
                nodes.push((y, head as u32, i as u8));
                if nodes.len() > budget {
                    return Err(Error::Budget {
                        budget,
                        what: format!("conjugacy class of an order-{m} element in W({})", d.name()),
                    });
                }
            }
        }
        head += 1;
    }
    let class = nodes.len() as u64;
    stats.class_size = Some(class);
    let wo = d.weyl_order();
    if wo % class != 0 || wo / class != target {
        return Err(Error::Internal(format!(
            "class size {class} gives centralizer order {} but the degree product is {target}",
            wo as f64 / class as f64
        )));
    }

    // Transversal element t_x with t_x w t_x⁻¹ = x.
    let transversal = |idx: u32| -> WeylElt {
        let mut path = Vec::new();
        let mut cur = idx;
        while cur != 0 {
            let (_, p, g) = nodes[cur as usize];
            path.push(g as usize);
            cur = p;
        }
        let mut k = identity_key(d);
        for &g in path.iter().rev() {
            k = left_simple(d, k, g);
        }
        WeylElt::from_key(d, k)
    };

    'outer: for x in 0..nodes.len() {
        for i in 0..n {
            let y = conj_simple(d, nodes[x].0, i);
            let iy = index[&y];
            let (_, p, g) = nodes[iy as usize];
            if p == x as u32 && g as usize == i {
                continue;
            }
            stats.schreier_tested += 1;
            let tx = transversal(x as u32);
            let ty = transversal(iy);
            let s = WeylElt::simple(d, i);
            let cand = ty.inverse(d).mul(d, &s.mul(d, &tx));
            debug_assert_eq!(cand.mul(d, w).key(), w.mul(d, &cand).key());
            if group.contains(&cand) != Some(true) {
                gens.push(cand);
                group = closure(d, &gens, budget)?;
                if group.order == target {
                    break 'outer;
                }
            }
        }
    }
    if group.order != target {
        return Err(Error::Internal(format!(
            "Schreier generators span a subgroup of order {} instead of {target}",
            group.order
        )));
    }
    Ok((group, stats))
}

/// A simple component of a root subsystem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Component {
    pub label: TypeLabel,
    pub rank: usize,
}

impl Component {
    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.label {
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
}

/// Reflection subgroup generated by a set of roots, with its Cartan type.
#[derive(Clone, Debug)]
pub struct ReflectionSubgroup {
    /// All roots of the generated subsystem.
    pub roots: Vec<usize>,
    pub positive_roots: Vec<usize>,
    pub simple_roots: Vec<usize>,
    pub components: Vec<Component>,
    /// Order from the component types.
    pub order: u64,
}

impl ReflectionSubgroup {
    /// Type string such as `A2^2xA1`; `trivial` for the empty system.
    pub fn type_string(&self) -> String {
        if self.components.is_empty() {
            return "trivial".into();
        }
        let mut comps = self.components.clone();
        comps.sort_by(|a, b| b.rank.cmp(&a.rank).then(a.label.cmp(&b.label)));
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < comps.len() {
            let mut j = i;
            while j < comps.len() && comps[j] == comps[i] {
                j += 1;
            }
            let base = format!("{}{}", comps[i].label, comps[i].rank);
            parts.push(if j - i > 1 {
                format!("{base}^{}", j - i)
            } else {
                base
            });
            i = j;
        }
        parts.join("x")
    }

    /// Enumerates the group as root permutations with determinants.
    pub fn enumerate(&self, d: &RootDatum, budget: usize) -> Result<Vec<(Vec<u8>, i8)>> {
        let gens: Vec<Vec<u8>> = self
            .simple_roots
            .iter()
            .map(|&b| {
                (0..d.num_roots())
                    .map(|r| d.reflect_root(b, r) as u8)
                    .collect()
            })
            .collect();
        enumerate_perm_group(d, &gens, budget)
    }
}

/// Enumerates the group generated by reflection permutations, tracking determinants.
pub fn enumerate_perm_group(
    d: &RootDatum,
    refl: &[Vec<u8>],
    budget: usize,
) -> Result<Vec<(Vec<u8>, i8)>> {
    let n = d.rank();
    let idp: Vec<u8> = (0..d.num_roots() as u8).collect();
    let key_of = |p: &[u8]| pack_key(&p[..n]);
    let mut seen = FxHashSet::default();
    seen.insert(key_of(&idp));
    let mut out = vec![(idp, 1i8)];
    let mut head = 0;
    while head < out.len() {
        for g in refl {
            let np: Vec<u8> = out[head].0.iter().map(|&x| g[x as usize]).collect();
            if seen.insert(key_of(&np)) {
                let s = -out[head].1;
                out.push((np, s));
                if out.len() > budget {
                    return Err(Error::Budget {
                        budget,
                        what: "reflection subgroup enumeration".into(),
                    });
                }
            }
        }
        head += 1;
    }
    Ok(out)
}

fn recognize_component(d: &RootDatum, simple: &[usize], cart: &[Vec<i64>]) -> Component {
    let r = simple.len();
    let deg = |i: usize| (0..r).filter(|&j| j != i && cart[i][j] != 0).count();
    let max_bond = (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .map(|(i, j)| cart[i][j] * cart[j][i])
        .max()
        .unwrap_or(0);
    let label_rank = |label| Component { label, rank: r };
    if r == 1 {
        return label_rank(TypeLabel::A);
    }
    if max_bond == 3 {
        return label_rank(TypeLabel::G);
    }
    if max_bond == 2 {
        if r == 2 {
            return label_rank(TypeLabel::B);
        }
        // double bond at an end node: B if that node is short, C if long; otherwise F4
        let ends: Vec<usize> = (0..r).filter(|&i| deg(i) == 1).collect();
        for &e in &ends {
            let nb = (0..r).find(|&j| j != e && cart[e][j] != 0).unwrap();
            if cart[e][nb] * cart[nb][e] == 2 {
                let short = d.root(simple[e]).norm2 < d.root(simple[nb]).norm2;
                return label_rank(if short { TypeLabel::B } else { TypeLabel::C });
            }
        }
        return label_rank(TypeLabel::F);
    }
    match (0..r).find(|&i| deg(i) == 3) {
        None => label_rank(TypeLabel::A),
        Some(b) => {
            let mut legs: Vec<usize> = Vec::new();
            for start in (0..r).filter(|&j| j != b && cart[b][j] != 0) {
                let mut len = 1;
                let mut prev = b;
                let mut cur = start;
                loop {
                    let next = (0..r).find(|&j| j != cur && j != prev && cart[cur][j] != 0);
                    match next {
                        Some(nx) => {
                            prev = cur;
                            cur = nx;
                            len += 1;
                        }
                        None => break,
                    }
                }
                legs.push(len);
            }
            legs.sort_unstable();
            match legs.as_slice() {
                [1, 1, _] => label_rank(TypeLabel::D),
                _ => label_rank(TypeLabel::E),
            }
        }
    }
}

/// Root subsystem generated by the given roots and its Weyl group data.
pub fn reflection_subgroup(d: &RootDatum, gens: &[usize]) -> ReflectionSubgroup {
    let mut inset = vec![false; d.num_roots()];
    let mut list: Vec<usize> = Vec::new();
    for &g in gens {
        for r in [g, d.neg(g)] {
            if !inset[r] {
                inset[r] = true;
                list.push(r);
            }
        }
    }
    let mut head = 0;
    while head < list.len() {
        let b = list[head];
        head += 1;
        let current: Vec<usize> = list.clone();
        for r in current {
            let s = d.reflect_root(b, r);
            if !inset[s] {
                inset[s] = true;
                list.push(s);
            }
        }
        for r in list.clone() {
            let s = d.reflect_root(r, b);
            if !inset[s] {
                inset[s] = true;
                list.push(s);
            }
        }
    }
    list.sort_unstable();
    let positive: Vec<usize> = list.iter().copied().filter(|&r| d.is_positive(r)).collect();
    let simple: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|&r| {
            !positive.iter().any(|&a| {
                let diff: Vec<i64> = d
                    .root(r)
                    .coords
                    .iter()
                    .zip(&d.root(a).coords)
                    .map(|(x, y)| x - y)
                    .collect();
                d.root_index(&diff)
                    .map(|b| inset[b] && d.is_positive(b))
                    .unwrap_or(false)
            })
        })
        .collect();
    let r = simple.len();
    let cart: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| d.pairing(simple[j], simple[i])).collect())
        .collect();
    // connected components
    let mut comp_of = vec![usize::MAX; r];
    let mut components = Vec::new();
    for s in 0..r {
        if comp_of[s] != usize::MAX {
            continue;
        }
        let cid = components.len();
        let mut members = vec![s];
        comp_of[s] = cid;
        let mut h = 0;
        while h < members.len() {
            let i = members[h];
            h += 1;
            for j in 0..r {
                if j != i && cart[i][j] != 0 && comp_of[j] == usize::MAX {
                    comp_of[j] = cid;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        let sub_simple: Vec<usize> = members.iter().map(|&i| simple[i]).collect();
        let sub_cart: Vec<Vec<i64>> = members
            .iter()
            .map(|&i| members.iter().map(|&j| cart[i][j]).collect())
            .collect();
        components.push(recognize_component(d, &sub_simple, &sub_cart));
    }
    let order = components.iter().map(|c| c.weyl_order()).product();
    ReflectionSubgroup {
        roots: list,
        positive_roots: positive,
        simple_roots: simple,
        components,
        order,
    }
}

/// Braid exponent `m_ij` of two simple reflections read from the Cartan matrix.
pub fn coxeter_exponent(cij: i64, cji: i64) -> Option<u32> {
    match cij * cji {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}
