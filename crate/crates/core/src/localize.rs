//! Fixed-point calculus over the reflection group `W_c` of a slope.
//!
//! All quantities are evaluated at integer points of coweight space given in
//! fundamental-coweight coordinates, where a root `a` evaluates to `coords(a)·ξ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use crate::affine::{self, Slope};
use crate::error::{Error, Result};
use crate::rootdata::RootDatum;
use crate::torsion;
use crate::weylgrp::{self, ReflectionSubgroup, WeylElt};

/// Largest `|W_c|` enumerated.
pub const SUBGROUP_BUDGET: usize = 2_000_000;

/// Coordinates of generic points are drawn from `[-POINT_RANGE, POINT_RANGE]`.
pub const POINT_RANGE: i64 = 1_000_000;

/// Product of roots, each read as a linear form on coweight space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinFormProduct {
    pub roots: Vec<usize>,
}

impl LinFormProduct {
    pub fn new(roots: Vec<usize>) -> Self {
        LinFormProduct { roots }
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn eval(&self, d: &RootDatum, xi: &[i64]) -> BigInt {
        self.roots
            .iter()
            .map(|&r| BigInt::from(linear_value(d, r, xi)))
            .product()
    }

    /// Value of `v·(product)` at `ξ`, with `v` given as a root permutation.
    pub fn eval_twisted(&self, d: &RootDatum, perm: &[u8], xi: &[i64]) -> BigInt {
        self.roots
            .iter()
            .map(|&r| BigInt::from(linear_value(d, perm[r] as usize, xi)))
            .product()
    }
}

pub fn linear_value(d: &RootDatum, r: usize, xi: &[i64]) -> i64 {
    d.root(r).coords.iter().zip(xi).map(|(a, x)| a * x).sum()
}

/// Power series in one variable, truncated after `s^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = BigRational::one();
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> &BigRational {
        &self.coeffs[j]
    }

    /// Multiplies by `1 + c·s`.
    pub fn mul_linear(&mut self, c: &BigRational) {
        for j in (1..self.coeffs.len()).rev() {
            let add = &self.coeffs[j - 1] * c;
            self.coeffs[j] += add;
        }
    }

    /// Divides by the unit `1 + c·s`.
    pub fn div_linear(&mut self, c: &BigRational) {
        for j in 1..self.coeffs.len() {
            let sub = &self.coeffs[j - 1] * c;
            self.coeffs[j] -= sub;
        }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let t = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); t + 1];
        for i in 0..=t {
            for j in 0..=t - i {
                coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        TruncatedSeries { coeffs }
    }
}

/// Random integer point on which no root vanishes.
pub fn generic_point(d: &RootDatum, rng: &mut ChaCha8Rng) -> Vec<i64> {
    loop {
        let xi: Vec<i64> = (0..d.rank())
            .map(|_| rng.gen_range(-POINT_RANGE..=POINT_RANGE))
            .collect();
        if (0..d.num_positive()).all(|r| linear_value(d, r, &xi) != 0) {
            return xi;
        }
    }
}

/// Root data of a slope together with an enumeration of `W_c`.
#[derive(Clone, Debug)]
pub struct Localizer {
    slope: Slope,
    /// Finite parts of `Δ_c⁺`.
    pub delta_plus: Vec<usize>,
    /// Finite parts of `𝔇_{c,1}`.
    pub base_bundle: Vec<usize>,
    pub subgroup: ReflectionSubgroup,
    elements: Vec<(Vec<u8>, i8)>,
}

impl Localizer {
    pub fn new(d: &RootDatum, s: &Slope) -> Result<Localizer> {
        Self::with_budget(d, s, SUBGROUP_BUDGET)
    }

    pub fn with_budget(d: &RootDatum, s: &Slope, budget: usize) -> Result<Localizer> {
        if s.k() <= 0 {
            return Err(Error::Precondition(
                "localization is set up for k > 0".into(),
            ));
        }
        let delta_plus: Vec<usize> = affine::positive_level_roots(d, s)
            .iter()
            .map(|a| a.root)
            .collect();
        let fund = affine::Alcove::fundamental(d);
        let base_bundle = affine::bundle_roots_at(d, s, &fund)
            .iter()
            .map(|a| a.root)
            .collect();
        let wc = weylgrp::reflection_subgroup(d, &affine::level_subsystem(d, s));
        if wc.order as usize > budget {
            return Err(Error::Budget {
                budget,
                what: "enumeration of W_c".into(),
            });
        }
        let elements = wc.enumerate(d, budget)?;
        if elements.len() as u64 != wc.order {
            return Err(Error::Internal(format!(
                "W_c enumerated {} elements, type {} predicts {}",
                elements.len(),
                wc.type_string(),
                wc.order
            )));
        }
        Ok(Localizer {
            slope: *s,
            delta_plus,
            base_bundle,
            subgroup: wc,
            elements,
        })
    }

    pub fn slope(&self) -> Slope {
        self.slope
    }

    pub fn fiber_dim(&self) -> usize {
        self.delta_plus.len()
    }

    pub fn subgroup_order(&self) -> usize {
        self.elements.len()
    }

    /// `W_c` as root permutations with determinants.
    pub fn elements(&self) -> &[(Vec<u8>, i8)] {
        &self.elements
    }

    /// `∏_{β∈Δ_c⁺} β(ξ)`.
    pub fn euler_form(&self, d: &RootDatum, xi: &[i64]) -> BigInt {
        LinFormProduct::new(self.delta_plus.clone()).eval(d, xi)
    }

    /// `Σ_{v∈W_c} det(v)·(v·p)(ξ)` for the product `p` of the given roots.
    pub fn antisymmetrize(&self, d: &RootDatum, roots: &[usize], xi: &[i64]) -> BigInt {
        let p = LinFormProduct::new(roots.to_vec());
        self.elements
            .iter()
            .map(|(perm, det)| {
                let v = p.eval_twisted(d, perm, xi);
                if *det > 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }

    /// Signed Euler number `Σ_v det(v)·(v·p)(ξ) / ((−1)^{fiber_dim} eu(ξ))`.
    pub fn euler_number(&self, d: &RootDatum, roots: &[usize], xi: &[i64]) -> Result<BigRational> {
        if roots.len() != self.fiber_dim() {
            return Err(Error::Precondition(format!(
                "bundle rank {} differs from dimension {}",
                roots.len(),
                self.fiber_dim()
            )));
        }
        let mut eu = self.euler_form(d, xi);
        if self.fiber_dim() % 2 == 1 {
            eu = -eu;
        }
        if eu.is_zero() {
            return Err(Error::Precondition("point is not generic".into()));
        }
        Ok(BigRational::new(self.antisymmetrize(d, roots, xi), eu))
    }

    /// Euler characteristic of the zero locus of a generic section of the bundle with weights `roots`.
    pub fn chi(&self, d: &RootDatum, roots: &[usize], xi: &[i64]) -> Result<BigInt> {
        let nc = self.fiber_dim();
        let dd = roots.len();
        if dd > nc {
            return Err(Error::Precondition(format!(
                "bundle rank {dd} exceeds dimension {nc}"
            )));
        }
        let t = nc - dd;
        let mut total = vec![BigRational::zero(); t + 1];
        for (perm, _) in &self.elements {
            let alpha: Vec<BigRational> = roots
                .iter()
                .map(|&r| BigRational::from_integer(linear_value(d, perm[r] as usize, xi).into()))
                .collect();
            let beta: Vec<BigRational> = self
                .delta_plus
                .iter()
                .map(|&r| {
                    BigRational::from_integer((-linear_value(d, perm[r] as usize, xi)).into())
                })
                .collect();
            let num: BigRational = alpha.iter().cloned().product();
            let den: BigRational = beta.iter().cloned().product();
            if den.is_zero() {
                return Err(Error::Precondition("point is not generic".into()));
            }
            let pref = num / den;
            let mut series = TruncatedSeries::one(t);
            for b in &beta {
                series.mul_linear(b);
            }
            for a in &alpha {
                series.div_linear(a);
            }
            for (j, slot) in total.iter_mut().enumerate() {
                *slot += &pref * series.coeff(j);
            }
        }
        // total[j] is the coefficient of s^{j - t}
        if let Some(j) = (0..t).find(|&j| !total[j].is_zero()) {
            return Err(Error::Internal(format!(
                "coefficient of s^{} does not cancel: {}",
                j as i64 - t as i64,
                total[j]
            )));
        }
        let chi = total.pop().expect("nonempty");
        if !chi.is_integer() {
            return Err(Error::Internal(format!(
                "non-integral Euler characteristic {chi}"
            )));
        }
        Ok(chi.to_integer())
    }
}

/// Finite parts of `𝔇_{c,w}` at an alcove, sorted.
pub fn bundle_at(d: &RootDatum, s: &Slope, a: &affine::Alcove) -> Vec<usize> {
    let mut v: Vec<usize> = affine::bundle_roots_at(d, s, a)
        .iter()
        .map(|x| x.root)
        .collect();
    v.sort_unstable();
    v
}

#[derive(Clone, Debug)]
pub struct EulerIdentity {
    pub holds: bool,
    pub fiber_dim: usize,
    pub reduced_torsion_order: u64,
    pub subgroup_order: usize,
    pub subgroup_type: String,
    /// Points at which both sides were compared.
    pub points: Vec<Vec<i64>>,
    /// First point where the sides differ, with both values.
    pub witness: Option<(Vec<i64>, BigInt, BigInt)>,
}

/// `(−1)^{fiber_dim} |A_m°| eu = Σ_{v∈W_c} det(v)·v(∏_{𝔇_{c,1}} a)` at a seeded point plus three guards.
pub fn verify_euler_identity(d: &RootDatum, s: &Slope, seed: u64) -> Result<EulerIdentity> {
    let rep = weylgrp::elliptic_rep(d, s.m() as u32, seed)?;
    let reduced_torsion = torsion::reduced_torsion_group(d, &rep.elt)?;
    let loc = Localizer::new(d, s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::new();
    let mut witness = None;
    for _ in 0..4 {
        let xi = generic_point(d, &mut rng);
        let mut lhs = loc.euler_form(d, &xi) * BigInt::from(reduced_torsion.order());
        if loc.fiber_dim() % 2 == 1 {
            lhs = -lhs;
        }
        let rhs = loc.antisymmetrize(d, &loc.base_bundle, &xi);
        if lhs != rhs && witness.is_none() {
            witness = Some((xi.clone(), lhs, rhs));
        }
        points.push(xi);
    }
    Ok(EulerIdentity {
        holds: witness.is_none() && loc.base_bundle.len() == loc.fiber_dim(),
        fiber_dim: loc.fiber_dim(),
        reduced_torsion_order: reduced_torsion.order(),
        subgroup_order: loc.subgroup_order(),
        subgroup_type: loc.subgroup.type_string(),
        points,
        witness,
    })
}

/// Number of points of the fiber component at an alcove with `|𝔇_{c,w}| = fiber_dim`.
pub fn point_count(d: &RootDatum, s: &Slope, a: &affine::Alcove, seed: u64) -> Result<BigInt> {
    let loc = Localizer::new(d, s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xi = generic_point(d, &mut rng);
    let q = loc.euler_number(d, &bundle_at(d, s, a), &xi)?;
    if !q.is_integer() {
        return Err(Error::Internal(format!("non-integral point count {q}")));
    }
    Ok(q.to_integer())
}

/// Euler characteristic of the fiber component at an alcove of `W^c`.
pub fn chi_fiber(d: &RootDatum, s: &Slope, a: &affine::Alcove, seed: u64) -> Result<BigInt> {
    if !affine::in_positive_region(d, s, a) {
        return Err(Error::Precondition(format!(
            "{} is not in W^c",
            a.word_string()
        )));
    }
    let loc = Localizer::new(d, s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xi = generic_point(d, &mut rng);
    loc.chi(d, &bundle_at(d, s, a), &xi)
}

#[derive(Clone, Debug)]
pub struct ClanChi {
    pub clan: usize,
    pub words: Vec<String>,
    pub bundle_size: usize,
    pub bounded: bool,
    /// Per-alcove Euler characteristic.
    pub chi: BigInt,
}

#[derive(Clone, Debug)]
pub struct ChiReport {
    pub slope: Slope,
    pub radius: usize,
    pub fiber_dim: usize,
    pub alcoves: usize,
    pub total: BigInt,
    pub clans: Vec<ClanChi>,
    /// True when every alcove of maximal length contributes zero.
    pub frontier_zero: bool,
}

impl ChiReport {
    /// Clans with nonzero contribution.
    pub fn nonzero_clans(&self) -> impl Iterator<Item = &ClanChi> {
        self.clans.iter().filter(|c| !c.chi.is_zero())
    }
}

/// Sum of fiber Euler characteristics over `W^c` alcoves of length `≤ radius`.
pub fn total_chi(d: &RootDatum, s: &Slope, radius: usize, seed: u64) -> Result<ChiReport> {
    let table = affine::enumerate_clans(d, s, radius)?;
    let loc = Localizer::new(d, s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xi = generic_point(d, &mut rng);
    let nc = loc.fiber_dim();
    let mut memo: FxHashMap<Vec<usize>, BigInt> = FxHashMap::default();
    let mut clans = Vec::new();
    for (ci, clan) in table.clans.iter().enumerate() {
        let mut roots: Vec<usize> = clan.bundle.iter().map(|x| x.root).collect();
        roots.sort_unstable();
        let chi = if roots.len() > nc {
            BigInt::zero()
        } else if let Some(v) = memo.get(&roots) {
            v.clone()
        } else {
            let v = loc.chi(d, &roots, &xi)?;
            memo.insert(roots.clone(), v.clone());
            v
        };
        clans.push(ClanChi {
            clan: ci,
            words: table.member_words(ci),
            bundle_size: roots.len(),
            bounded: clan.bounded,
            chi,
        });
    }
    let mut total = BigInt::zero();
    let mut frontier_zero = true;
    for c in &clans {
        total += &c.chi * BigInt::from(table.clans[c.clan].members.len());
        if !c.chi.is_zero()
            && table.clans[c.clan]
                .members
                .iter()
                .any(|&i| table.alcoves[i].length() == radius)
        {
            frontier_zero = false;
        }
    }
    Ok(ChiReport {
        slope: *s,
        radius,
        fiber_dim: nc,
        alcoves: table.alcoves.len(),
        total,
        clans,
        frontier_zero,
    })
}

/// `Σ_v det(v)·(v·p)(u⁻¹ξ)` with `u` acting on coweight coordinates.
pub fn antisymmetrized_at_translate(
    d: &RootDatum,
    loc: &Localizer,
    roots: &[usize],
    u: &WeylElt,
    xi: &[i64],
) -> BigInt {
    let m = u.inverse(d).coweight_matrix(d);
    let moved = crate::linalg::mat_vec(&m, xi);
    loc.antisymmetrize(d, roots, &moved)
}
