//! Affine roots of a slope, alcoves, the `W^c` region and clans.
//!
//! Points of coweight space use fundamental-coweight coordinates. An alcove is
//! stored as the affine Weyl element `x ↦ u x + λ̌` and the integer vector
//! `h·(center)` where the center is the image of `ρ̌/h`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::linalg::{self, IMat};
use crate::rootdata::RootDatum;
use crate::weylgrp::{self, WeylElt};

/// Slope `c = k/m` with grading modulus `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slope {
    k: i64,
    m: i64,
}

impl Slope {
    /// Reduced slope: `m > 1`, `k ≠ 0`, `gcd(k, m) = 1`.
    pub fn new(k: i64, m: i64) -> Result<Slope> {
        let s = Slope::with_modulus(k, m)?;
        if linalg::gcd(k, m).abs() != 1 {
            return Err(Error::InvalidSlope {
                k,
                m,
                reason: "k and m must be coprime".into(),
            });
        }
        Ok(s)
    }

    /// Slope with numerator `k` over the grading modulus `m`, not necessarily reduced.
    ///
    /// With `g = gcd(k, m)` this is the `g`-fold dilation of the slope `(k/g)/m`:
    /// every level is multiplied by `g` while the height congruences stay mod `m`.
    pub fn with_modulus(k: i64, m: i64) -> Result<Slope> {
        if m <= 1 {
            return Err(Error::InvalidSlope {
                k,
                m,
                reason: "m must exceed 1".into(),
            });
        }
        if k == 0 {
            return Err(Error::InvalidSlope {
                k,
                m,
                reason: "k must be nonzero".into(),
            });
        }
        Ok(Slope { k, m })
    }

    pub fn k(&self) -> i64 {
        self.k
    }
    pub fn m(&self) -> i64 {
        self.m
    }
    pub fn is_reduced(&self) -> bool {
        linalg::gcd(self.k, self.m).abs() == 1
    }
    pub fn as_rational(&self) -> BigRational {
        BigRational::new(self.k.into(), self.m.into())
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.k, self.m)
    }
}

/// Real affine root `(a, ℓ)`: the affine function `x ↦ a·x + ℓ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub root: usize,
    pub level: i64,
}

impl AffineRoot {
    pub fn display(&self, d: &RootDatum) -> String {
        format!("({}, {})", root_string(d, self.root), self.level)
    }
}

/// Root as a combination of simple roots, e.g. `-3a1-a2`.
pub fn root_string(d: &RootDatum, r: usize) -> String {
    let mut s = String::new();
    for (i, &c) in d.root(r).coords.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if c.abs() != 1 {
            s.push_str(&c.abs().to_string());
        }
        s.push_str(&format!("a{}", i + 1));
    }
    s
}

/// `Δ_c⁺`: positive affine roots `(a, −k·ht(a)/m)` with `m | ht(a)`.
pub fn positive_level_roots(d: &RootDatum, s: &Slope) -> Vec<AffineRoot> {
    (0..d.num_roots())
        .filter(|&r| d.height(r) % s.m == 0)
        .map(|r| AffineRoot {
            root: r,
            level: -s.k * d.height(r) / s.m,
        })
        .filter(|a| a.level > 0 || (a.level == 0 && d.is_positive(a.root)))
        .collect()
}

/// `Π_c`: elements of `Δ_c⁺` that are not sums of two elements of `Δ_c⁺`.
pub fn level_simple_roots(d: &RootDatum, s: &Slope) -> Vec<AffineRoot> {
    let dp = positive_level_roots(d, s);
    dp.iter()
        .filter(|x| {
            !dp.iter().any(|y| {
                let diff: Vec<i64> = d
                    .root(x.root)
                    .coords
                    .iter()
                    .zip(&d.root(y.root).coords)
                    .map(|(a, b)| a - b)
                    .collect();
                d.root_index(&diff)
                    .map(|r| {
                        dp.contains(&AffineRoot {
                            root: r,
                            level: x.level - y.level,
                        })
                    })
                    .unwrap_or(false)
            })
        })
        .copied()
        .collect()
}

pub fn fiber_dim(d: &RootDatum, s: &Slope) -> usize {
    positive_level_roots(d, s).len()
}

/// Finite parts of `Δ_c` (both signs).
pub fn level_subsystem(d: &RootDatum, s: &Slope) -> Vec<usize> {
    (0..d.num_roots())
        .filter(|&r| d.height(r) % s.m == 0)
        .collect()
}

/// `𝔇_c`: affine roots `(a, k(1 − ht(a))/m)` with `ht(a) ≡ 1 mod m`.
pub fn bundle_roots(d: &RootDatum, s: &Slope) -> Vec<AffineRoot> {
    (0..d.num_roots())
        .filter(|&r| (d.height(r) - 1).rem_euclid(s.m) == 0)
        .map(|r| AffineRoot {
            root: r,
            level: s.k * (1 - d.height(r)) / s.m,
        })
        .collect()
}

/// Affine Weyl element `x ↦ u x + λ̌` with its alcove.
#[derive(Clone, Debug)]
pub struct Alcove {
    /// Reduced word in affine simple reflections (`0` is `s_0`).
    pub word: Vec<usize>,
    /// `u` on coweight coordinates.
    pub lin: IMat,
    /// `λ̌` in coweight coordinates.
    pub trans: Vec<i64>,
    /// `h` times the alcove center `u(ρ̌/h) + λ̌`.
    pub center: Vec<i64>,
}

/// Coweight-coordinate matrix of the reflection in root `b`.
fn reflection_cw(d: &RootDatum, b: usize) -> IMat {
    let n = d.rank();
    let rb = d.root(b);
    (0..n)
        .map(|j| {
            (0..n)
                .map(|k| i64::from(j == k) - rb.coroot_cw[j] * rb.coords[k])
                .collect()
        })
        .collect()
}

impl Alcove {
    pub fn fundamental(d: &RootDatum) -> Alcove {
        let n = d.rank();
        Alcove {
            word: vec![],
            lin: linalg::identity(n),
            trans: vec![0; n],
            center: d.rho_check(),
        }
    }

    /// `w · s_i` for an affine simple reflection index `i ∈ 0..=n`.
    pub fn right_mul(&self, d: &RootDatum, i: usize) -> Alcove {
        let h = d.coxeter_number() as i64;
        let (lin, trans) = if i == 0 {
            let th = d.highest_root();
            let lin = linalg::mat_mul(&self.lin, &reflection_cw(d, th));
            let shift = linalg::mat_vec(&self.lin, &d.root(th).coroot_cw);
            let trans: Vec<i64> = shift.iter().zip(&self.trans).map(|(a, b)| a + b).collect();
            (lin, trans)
        } else {
            (
                linalg::mat_mul(&self.lin, &reflection_cw(d, i - 1)),
                self.trans.clone(),
            )
        };
        let rho = linalg::mat_vec(&lin, &d.rho_check());
        let center = rho.iter().zip(&trans).map(|(r, t)| r + h * t).collect();
        let mut word = self.word.clone();
        word.push(i);
        Alcove {
            word,
            lin,
            trans,
            center,
        }
    }

    /// Product of affine simple reflections (indices `0..=n`).
    pub fn from_word(d: &RootDatum, word: &[usize]) -> Result<Alcove> {
        let mut a = Alcove::fundamental(d);
        for &i in word {
            if i > d.rank() {
                return Err(Error::BadIndex {
                    index: i,
                    rank: d.rank(),
                });
            }
            a = a.right_mul(d, i);
        }
        Ok(a)
    }

    /// Alcove `u(A)` of a finite Weyl group element.
    pub fn from_finite(d: &RootDatum, u: &WeylElt) -> Alcove {
        let word = u.reduced_word(d);
        let mut a = Alcove::fundamental(d);
        for i in word {
            a = a.right_mul(d, i);
        }
        a
    }

    /// `h·(a·center + ℓ)`; never zero.
    pub fn value(&self, d: &RootDatum, alpha: &AffineRoot) -> i64 {
        let h = d.coxeter_number() as i64;
        linalg::dot(&d.root(alpha.root).coords, &self.center) + h * alpha.level
    }

    pub fn is_positive(&self, d: &RootDatum, alpha: &AffineRoot) -> bool {
        self.value(d, alpha) > 0
    }

    pub fn center_rational(&self, d: &RootDatum) -> Vec<BigRational> {
        let h = BigInt::from(d.coxeter_number());
        self.center
            .iter()
            .map(|&x| BigRational::new(x.into(), h.clone()))
            .collect()
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// Word such as `s0s2s1`, or `1` for the identity.
    pub fn word_string(&self) -> String {
        word_string(&self.word)
    }
}

pub fn word_string(word: &[usize]) -> String {
    if word.is_empty() {
        "1".to_string()
    } else {
        word.iter().map(|i| format!("s{i}")).collect()
    }
}

/// Parses `1`, `s0s2s1` or `0 2 1` style words.
pub fn parse_affine_word(s: &str) -> Result<Vec<usize>> {
    let t = s.trim();
    if t == "1" || t.is_empty() {
        return Ok(vec![]);
    }
    t.split(|c: char| c == 's' || c.is_whitespace() || c == ',')
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad affine word {s:?}")))
        })
        .collect()
}

pub fn in_positive_region(d: &RootDatum, s: &Slope, a: &Alcove) -> bool {
    positive_level_roots(d, s)
        .iter()
        .all(|b| a.is_positive(d, b))
}

/// `𝔇_{c,w}`: elements of `𝔇_c` negative at the alcove.
pub fn bundle_roots_at(d: &RootDatum, s: &Slope, a: &Alcove) -> Vec<AffineRoot> {
    bundle_roots(d, s)
        .into_iter()
        .filter(|x| !a.is_positive(d, x))
        .collect()
}

/// Signs (true = positive) of the given affine roots at the alcove.
pub fn sign_vector(d: &RootDatum, a: &Alcove, roots: &[AffineRoot]) -> Vec<bool> {
    roots.iter().map(|x| a.is_positive(d, x)).collect()
}

/// Breadth-first walk by wall crossing inside the region cut out by `keep`, up to length `radius`.
pub fn walk_region<F>(d: &RootDatum, radius: usize, mut keep: F) -> Vec<Alcove>
where
    F: FnMut(&Alcove) -> bool,
{
    let start = Alcove::fundamental(d);
    if !keep(&start) {
        return vec![];
    }
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(start.center.clone());
    let mut out = vec![start];
    let mut head = 0;
    while head < out.len() {
        if out[head].length() < radius {
            for i in 0..=d.rank() {
                let nb = out[head].right_mul(d, i);
                if !seen.contains(&nb.center) && keep(&nb) {
                    seen.insert(nb.center.clone());
                    out.push(nb);
                }
            }
        }
        head += 1;
    }
    out
}

/// All `W^c` alcoves of length at most `radius`, in breadth-first order.
pub fn enumerate_positive_region(d: &RootDatum, s: &Slope, radius: usize) -> Vec<Alcove> {
    let dp = positive_level_roots(d, s);
    walk_region(d, radius, |a| dp.iter().all(|b| a.is_positive(d, b)))
}

#[derive(Clone, Debug)]
pub struct Clan {
    /// Signs over `𝔇_c` in the order of `bundle_roots`.
    pub sign_vector: Vec<bool>,
    /// Indices into `ClanTable::alcoves`, in breadth-first order.
    pub members: Vec<usize>,
    /// `𝔇_{c,w}` shared by all members.
    pub bundle: Vec<AffineRoot>,
    /// Whether the region of the `𝔇_c` arrangement is bounded.
    pub bounded: bool,
}

#[derive(Clone, Debug)]
pub struct ClanTable {
    pub slope: Slope,
    pub radius: usize,
    pub bundle_roots: Vec<AffineRoot>,
    pub alcoves: Vec<Alcove>,
    /// Ordered by first appearance in the walk.
    pub clans: Vec<Clan>,
}

impl ClanTable {
    pub fn clan_of(&self, alcove_index: usize) -> usize {
        self.clans
            .iter()
            .position(|c| c.members.contains(&alcove_index))
            .expect("every alcove has a clan")
    }

    /// Index of the alcove equal to `word` as an affine Weyl group element, if enumerated.
    pub fn find_alcove(&self, d: &RootDatum, word: &[usize]) -> Option<usize> {
        let a = Alcove::from_word(d, word).ok()?;
        self.alcoves.iter().position(|b| b.center == a.center)
    }

    /// Clan of the alcove given by `word`, if enumerated.
    pub fn clan_of_word(&self, d: &RootDatum, word: &[usize]) -> Option<usize> {
        self.find_alcove(d, word).map(|i| self.clan_of(i))
    }

    pub fn member_words(&self, clan: usize) -> Vec<String> {
        self.clans[clan]
            .members
            .iter()
            .map(|&i| self.alcoves[i].word_string())
            .collect()
    }
}

pub fn enumerate_clans(d: &RootDatum, s: &Slope, radius: usize) -> Result<ClanTable> {
    let bundle_roots = bundle_roots(d, s);
    let alcoves = enumerate_positive_region(d, s, radius);
    let mut by_sign: FxHashMap<Vec<bool>, usize> = FxHashMap::default();
    let mut clans: Vec<Clan> = Vec::new();
    for (idx, a) in alcoves.iter().enumerate() {
        let sv = sign_vector(d, a, &bundle_roots);
        match by_sign.get(&sv) {
            Some(&c) => clans[c].members.push(idx),
            None => {
                let bundle = bundle_roots
                    .iter()
                    .zip(&sv)
                    .filter(|(_, &p)| !p)
                    .map(|(x, _)| *x)
                    .collect();
                let bounded = region_bounded(d, &bundle_roots, &sv)?;
                by_sign.insert(sv.clone(), clans.len());
                clans.push(Clan {
                    sign_vector: sv,
                    members: vec![idx],
                    bundle,
                    bounded,
                });
            }
        }
    }
    Ok(ClanTable {
        slope: *s,
        radius,
        bundle_roots,
        alcoves,
        clans,
    })
}

/// Row budget of the Fourier–Motzkin elimination.
pub const FM_ROW_BUDGET: usize = 200_000;

/// Rational basis of the null space of integer rows, scaled to integer vectors.
fn null_space(rows: &[Vec<i64>], n: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..n {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            v.iter()
                .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// Decides whether `{x : σ_α (a·x + ℓ) > 0 ∀α}` is bounded, via its recession cone.
pub fn region_bounded(d: &RootDatum, roots: &[AffineRoot], signs: &[bool]) -> Result<bool> {
    let n = d.rank();
    let rows: HashSet<Vec<i64>> = roots
        .iter()
        .zip(signs)
        .map(|(x, &p)| {
            let c = &d.root(x.root).coords;
            if p {
                c.clone()
            } else {
                c.iter().map(|v| -v).collect()
            }
        })
        .collect();
    let neg = |r: &Vec<i64>| r.iter().map(|v| -v).collect::<Vec<_>>();
    let eqs: Vec<Vec<i64>> = rows
        .iter()
        .filter(|r| rows.contains(&neg(r)))
        .cloned()
        .collect();
    let ineqs: Vec<Vec<i64>> = rows
        .iter()
        .filter(|r| !rows.contains(&neg(r)))
        .cloned()
        .collect();
    let basis = null_space(&eqs, n);
    let f = basis.len();
    if f == 0 {
        return Ok(true);
    }
    // inequalities in the coordinates of the null space
    let b: Vec<Vec<BigInt>> = ineqs
        .iter()
        .map(|r| {
            (0..f)
                .map(|k| r.iter().zip(&basis[k]).map(|(a, v)| v * *a).sum())
                .collect()
        })
        .collect();
    if linalg::rank(&b) < f {
        return Ok(false);
    }
    // Nonzero y with B y ≥ 0 exists iff B y ≥ 0, Σ(B y) ≥ 1 is feasible.
    let mut sys: Vec<(Vec<BigInt>, BigInt)> =
        b.iter().map(|r| (r.clone(), BigInt::zero())).collect();
    let total: Vec<BigInt> = (0..f)
        .map(|k| b.iter().map(|r| r[k].clone()).sum())
        .collect();
    sys.push((total, BigInt::one()));
    Ok(!fm_feasible(sys, f)?)
}

/// Feasibility of `{y : c·y ≥ g}` by Fourier–Motzkin elimination.
fn fm_feasible(mut sys: Vec<(Vec<BigInt>, BigInt)>, vars: usize) -> Result<bool> {
    let norm = |(c, g): (Vec<BigInt>, BigInt)| -> (Vec<BigInt>, BigInt) {
        let mut all = c.clone();
        all.push(g.clone());
        let gg = all.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if gg.is_zero() || gg.is_one() {
            (c, g)
        } else {
            (c.iter().map(|x| x / &gg).collect(), &g / &gg)
        }
    };
    for v in 0..vars {
        let mut pos = Vec::new();
        let mut negs = Vec::new();
        let mut rest: HashSet<(Vec<BigInt>, BigInt)> = HashSet::new();
        for row in sys {
            if row.0[v].is_positive() {
                pos.push(row);
            } else if row.0[v].is_negative() {
                negs.push(row);
            } else {
                rest.insert(row);
            }
        }
        for (pc, pg) in &pos {
            for (nc, ng) in &negs {
                let a = pc[v].clone();
                let b = -nc[v].clone();
                let c: Vec<BigInt> = pc.iter().zip(nc).map(|(x, y)| x * &b + y * &a).collect();
                let g = pg * &b + ng * &a;
                rest.insert(norm((c, g)));
                if rest.len() > FM_ROW_BUDGET {
                    return Err(Error::Budget {
                        budget: FM_ROW_BUDGET,
                        what: "Fourier–Motzkin elimination".into(),
                    });
                }
            }
        }
        sys = rest.into_iter().collect();
    }
    Ok(sys.iter().all(|(_, g)| !g.is_positive()))
}

/// Result of the inequality `|𝔇_{c,w}| ≥ fiber_dim` over finite Weyl group alcoves.
#[derive(Clone, Debug)]
pub struct LengthCheck {
    pub fiber_dim: usize,
    pub base_bundle: usize,
    pub checked: usize,
    /// Words `w ≠ 1` with `|𝔇_{c,w}| ≤ fiber_dim`, or `w = 1` with inequality.
    pub counterexamples: Vec<(String, usize)>,
}

impl LengthCheck {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty() && self.base_bundle == self.fiber_dim
    }
}

/// Checks `|𝔇_{c,w}| ≥ fiber_dim` with equality only at `w = 1`, over `w ∈ W₀` of length `≤ radius`.
pub fn check_length_inequality(d: &RootDatum, s: &Slope, radius: usize) -> Result<LengthCheck> {
    if s.k <= 0 {
        return Err(Error::Precondition(
            "the inequality is stated for k > 0".into(),
        ));
    }
    let nc = fiber_dim(d, s);
    let dc = bundle_roots(d, s);
    let id = weylgrp::identity_key(d);
    let mut seen: HashSet<weylgrp::Key> = HashSet::new();
    seen.insert(id);
    let mut layer = vec![id];
    let mut checked = 0;
    let mut base_bundle = 0;
    let mut counterexamples = Vec::new();
    for depth in 0..=radius {
        let mut next = Vec::new();
        for &k in &layer {
            let u = WeylElt::from_key(d, k);
            let a = Alcove::from_finite(d, &u);
            let size = dc.iter().filter(|x| !a.is_positive(d, x)).count();
            checked += 1;
            if depth == 0 {
                base_bundle = size;
                if size != nc {
                    counterexamples.push((a.word_string(), size));
                }
            } else if size <= nc {
                counterexamples.push((a.word_string(), size));
            }
            if depth < radius {
                for i in 0..d.rank() {
                    let nk = weylgrp::left_simple(d, k, i);
                    if seen.insert(nk) {
                        next.push(nk);
                    }
                }
            }
        }
        layer = next;
    }
    Ok(LengthCheck {
        fiber_dim: nc,
        base_bundle,
        checked,
        counterexamples,
    })
}

/// Number of distinct `𝔇_c` sign vectors over dominant-chamber alcoves of length `≤ radius`.
pub fn dominant_sign_vectors(d: &RootDatum, s: &Slope, radius: usize) -> (usize, usize) {
    let dc = bundle_roots(d, s);
    let n = d.rank();
    let alcoves = walk_region(d, radius, |a| a.center.iter().take(n).all(|&x| x > 0));
    let vs: HashSet<Vec<bool>> = alcoves.iter().map(|a| sign_vector(d, a, &dc)).collect();
    (alcoves.len(), vs.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::TypeLabel;

    fn g2() -> RootDatum {
        RootDatum::build(TypeLabel::G, 2).unwrap()
    }

    fn strs(d: &RootDatum, v: &[AffineRoot]) -> Vec<String> {
        let mut s: Vec<String> = v.iter().map(|x| x.display(d)).collect();
        s.sort();
        s
    }

    #[test]
    fn slopes() {
        assert!(Slope::new(2, 4).is_err());
        assert!(Slope::new(1, 1).is_err());
        assert!(Slope::new(0, 3).is_err());
        assert!(Slope::with_modulus(2, 2).is_ok());
        assert!(!Slope::with_modulus(2, 2).unwrap().is_reduced());
    }

    #[test]
    fn g2_sets() {
        let d = g2();
        let s = Slope::new(1, 2).unwrap();
        assert_eq!(
            strs(&d, &positive_level_roots(&d, &s)),
            vec!["(-3a1-a2, 2)", "(-a1-a2, 1)"]
        );
        let a1 = Alcove::fundamental(&d);
        assert!(in_positive_region(&d, &s, &a1));
        assert_eq!(
            strs(&d, &bundle_roots_at(&d, &s, &a1)),
            vec!["(2a1+a2, -1)", "(3a1+2a2, -2)"]
        );
        let w = Alcove::from_word(&d, &[0, 2, 1]).unwrap();
        assert!(in_positive_region(&d, &s, &w));
        assert_eq!(bundle_roots_at(&d, &s, &w).len(), 1);
        let s3 = Slope::new(1, 3).unwrap();
        assert!(bundle_roots(&d, &s3).contains(&AffineRoot {
            root: d.root_index(&[3, 1]).unwrap(),
            level: -1
        }));
        assert!(positive_level_roots(&d, &Slope::new(1, 6).unwrap()).is_empty());
        assert_eq!(level_simple_roots(&d, &s).len(), 2);
        let e7 = RootDatum::build(TypeLabel::E, 7).unwrap();
        let p = level_simple_roots(&e7, &Slope::new(1, 2).unwrap());
        assert_eq!(p.len(), 7);
        assert_eq!(p.iter().filter(|a| a.level == 2).count(), 1);
    }

    #[test]
    fn coxeter_case_is_affine_simple_roots() {
        for (l, n) in [(TypeLabel::E, 6), (TypeLabel::B, 3), (TypeLabel::G, 2)] {
            let d = RootDatum::build(l, n).unwrap();
            let s = Slope::new(1, d.coxeter_number() as i64).unwrap();
            let dc = bundle_roots(&d, &s);
            assert_eq!(dc.len(), n + 1);
            let a = Alcove::fundamental(&d);
            for x in &dc {
                // affine simple roots vanish on a wall of the fundamental alcove
                assert!(a.is_positive(&d, x));
            }
        }
    }

    #[test]
    fn c2_sets() {
        let d = RootDatum::build(TypeLabel::C, 2).unwrap();
        let s = Slope::new(1, 2).unwrap();
        assert_eq!(strs(&d, &positive_level_roots(&d, &s)), vec!["(-a1-a2, 1)"]);
        let dc = bundle_roots(&d, &s);
        for (c, l) in [([2, 1], -1), ([1, 0], 0), ([0, 1], 0)] {
            assert!(dc.contains(&AffineRoot {
                root: d.root_index(&c).unwrap(),
                level: l
            }));
        }
        let t = enumerate_clans(&d, &s, 4).unwrap();
        let bounded: Vec<usize> = (0..t.clans.len()).filter(|&c| t.clans[c].bounded).collect();
        assert_eq!(bounded.len(), 3);
        for w in [vec![], vec![0], vec![2, 0]] {
            let c = t.clan_of_word(&d, &w).unwrap();
            assert!(bounded.contains(&c));
            assert_eq!(t.clans[c].members.len(), 1);
        }
    }

    #[test]
    fn walls_never_hit() {
        let d = RootDatum::build(TypeLabel::F, 4).unwrap();
        let s = Slope::new(1, 6).unwrap();
        for a in enumerate_positive_region(&d, &s, 4) {
            for r in 0..d.num_roots() {
                for l in -5..=5 {
                    assert_ne!(a.value(&d, &AffineRoot { root: r, level: l }), 0);
                }
            }
        }
    }

    #[test]
    fn g2_clans() {
        let d = g2();
        let t = enumerate_clans(&d, &Slope::new(1, 3).unwrap(), 4).unwrap();
        let c0 = t.clan_of(0);
        assert_eq!(t.member_words(c0), vec!["1", "s0"]);
        let s02 = t.alcoves.iter().position(|a| a.word == vec![0, 2]).unwrap();
        assert_eq!(t.member_words(t.clan_of(s02)), vec!["s0s2"]);
        assert!(t.clans[c0].bounded);
    }

    #[test]
    fn length_inequality_small() {
        let d = g2();
        let r = check_length_inequality(&d, &Slope::new(1, 2).unwrap(), 4).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.fiber_dim, 2);
        let c2 = RootDatum::build(TypeLabel::C, 2).unwrap();
        let r = check_length_inequality(&c2, &Slope::new(1, 2).unwrap(), 4).unwrap();
        assert!(r.holds());
        assert_eq!(r.fiber_dim, 1);
    }

    #[test]
    fn dominant_chamber_single_clan() {
        let d = g2();
        let (count, distinct) = dominant_sign_vectors(&d, &Slope::new(-1, 3).unwrap(), 6);
        assert!(count > 5);
        assert_eq!(distinct, 1);
    }
}
