//! Smith normal form, finite quotients of lattices, and orbit counting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, IMat};
use crate::rootdata::RootDatum;
use crate::weylgrp::{self, WeylElt};

type BMat = Vec<Vec<BigInt>>;

fn to_big(m: &IMat) -> BMat {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn big_identity(n: usize) -> BMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Smith form `U·M·V = D` with unimodular `U`, `V`; `u_inv` is `U⁻¹`.
#[derive(Clone, Debug)]
pub struct Snf {
    /// Diagonal of `D`, non-negative, each dividing the next (zeros last).
    pub diag: Vec<BigInt>,
    pub u: BMat,
    pub u_inv: BMat,
    pub v: BMat,
}

struct Work {
    a: BMat,
    u: BMat,
    u_inv: BMat,
    v: BMat,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
    }
    /// row_i += q · row_t
    fn add_row(&mut self, i: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.a[0].len() {
            let x = &self.a[t][j] * q;
            self.a[i][j] += x;
        }
        for j in 0..self.u[0].len() {
            let x = &self.u[t][j] * q;
            self.u[i][j] += x;
        }
        for row in self.u_inv.iter_mut() {
            let x = &row[i] * q;
            row[t] -= x;
        }
    }
    /// col_j += q · col_t
    fn add_col(&mut self, j: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            let x = &row[t] * q;
            row[j] += x;
        }
        for row in self.v.iter_mut() {
            let x = &row[t] * q;
            row[j] += x;
        }
    }
    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -x.clone();
        }
        for x in self.u[i].iter_mut() {
            *x = -x.clone();
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -row[i].clone();
        }
    }
}

/// Smith normal form with transforms of an integer matrix.
pub fn snf_full(m: &[Vec<BigInt>]) -> Snf {
    let r = m.len();
    let c = if r == 0 { 0 } else { m[0].len() };
    let mut w = Work {
        a: m.to_vec(),
        u: big_identity(r),
        u_inv: big_identity(r),
        v: big_identity(c),
    };
    let k = r.min(c);
    for t in 0..k {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if !w.a[i][j].is_zero()
                        && best.map_or(true, |(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            w.swap_rows(t, bi);
            w.swap_cols(t, bj);
            let p = w.a[t][t].clone();
            let mut clean = true;
            for i in t + 1..r {
                if !w.a[i][t].is_zero() {
                    let q = -w.a[i][t].div_floor(&p);
                    w.add_row(i, t, &q);
                    clean &= w.a[i][t].is_zero();
                }
            }
            for j in t + 1..c {
                if !w.a[t][j].is_zero() {
                    let q = -w.a[t][j].div_floor(&p);
                    w.add_col(j, t, &q);
                    clean &= w.a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !w.a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    let diag = (0..k).map(|t| w.a[t][t].clone()).collect();
    Snf {
        diag,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
    }
}

/// Invariant factors of `coker(M)` (diagonal of the Smith form, including 1s and 0s).
pub fn snf(m: &IMat) -> Vec<BigInt> {
    snf_full(&to_big(m)).diag
}

/// Finite abelian group `ℤⁿ / M ℤᶜ` in invariant-factor form.
#[derive(Clone, Debug)]
pub struct FinAbGroup {
    factors: Vec<u64>,
    /// Rows of `U` for the nontrivial factors.
    proj_rows: BMat,
    /// Columns of `U⁻¹` for the nontrivial factors (lifts of the generators).
    lift_cols: BMat,
    relations: IMat,
}

impl FinAbGroup {
    /// Cokernel of `m` (columns are relations in the ambient lattice); must be finite.
    pub fn cokernel(m: &IMat) -> Result<FinAbGroup> {
        let s = snf_full(&to_big(m));
        let n = m.len();
        if s.diag.len() < n || s.diag.iter().any(|x| x.is_zero()) {
            return Err(Error::NotElliptic);
        }
        let mut factors = Vec::new();
        let mut proj_rows = Vec::new();
        let mut lift_cols = Vec::new();
        for (i, e) in s.diag.iter().enumerate() {
            if !e.is_one() {
                factors.push(
                    e.to_u64()
                        .ok_or_else(|| Error::Internal("invariant factor overflow".into()))?,
                );
                proj_rows.push(s.u[i].clone());
                lift_cols.push((0..n).map(|r| s.u_inv[r][i].clone()).collect());
            }
        }
        Ok(FinAbGroup {
            factors,
            proj_rows,
            lift_cols,
            relations: m.clone(),
        })
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.factors.len()]
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.factors)
            .map(|((a, b), e)| (a + b) % e)
            .collect()
    }

    pub fn neg(&self, x: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(&self.factors)
            .map(|(a, e)| (e - a) % e)
            .collect()
    }

    /// Image of an ambient lattice vector.
    pub fn project(&self, v: &[i64]) -> Vec<u64> {
        self.proj_rows
            .iter()
            .zip(&self.factors)
            .map(|(row, &e)| {
                let s: BigInt = row.iter().zip(v).map(|(a, &b)| a * b).sum();
                s.mod_floor(&BigInt::from(e)).to_u64().unwrap()
            })
            .collect()
    }

    /// Ambient lift of a group element.
    pub fn lift(&self, x: &[u64]) -> Vec<BigInt> {
        let n = self.relations.len();
        let mut out = vec![BigInt::zero(); n];
        for (col, &xi) in self.lift_cols.iter().zip(x) {
            for r in 0..n {
                out[r] += &col[r] * xi;
            }
        }
        out
    }

    /// Mixed-radix index of an element.
    pub fn index_of(&self, x: &[u64]) -> usize {
        x.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&a, &e)| acc * e as usize + a as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.factors.len()];
        for k in (0..self.factors.len()).rev() {
            let e = self.factors[k] as usize;
            out[k] = (idx % e) as u64;
            idx /= e;
        }
        out
    }

    /// Matrix of the automorphism induced by an ambient lattice map `g`, acting on element tuples.
    ///
    /// Fails if `g` does not preserve the relation sublattice.
    pub fn induced(&self, g: &IMat) -> Result<Vec<Vec<u64>>> {
        let n = self.relations.len();
        for j in 0..self.relations[0].len() {
            let col: Vec<i64> = (0..n).map(|i| self.relations[i][j]).collect();
            let img = linalg::mat_vec(g, &col);
            if self.project(&img).iter().any(|&x| x != 0) {
                return Err(Error::Precondition(
                    "map does not preserve the relation sublattice".into(),
                ));
            }
        }
        let k = self.factors.len();
        let mut out = vec![vec![0u64; k]; k];
        for l in 0..k {
            let lift = &self.lift_cols[l];
            let img: Vec<BigInt> = (0..n)
                .map(|i| (0..n).map(|j| &lift[j] * g[i][j]).sum())
                .collect();
            for (kk, row) in self.proj_rows.iter().enumerate() {
                let s: BigInt = row.iter().zip(&img).map(|(a, b)| a * b).sum();
                out[kk][l] = s
                    .mod_floor(&BigInt::from(self.factors[kk]))
                    .to_u64()
                    .unwrap();
            }
        }
        Ok(out)
    }

    pub fn apply(&self, mat: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
        mat.iter()
            .zip(&self.factors)
            .map(|(row, &e)| {
                let s: u128 = row
                    .iter()
                    .zip(x)
                    .map(|(&a, &b)| a as u128 * b as u128)
                    .sum();
                (s % e as u128) as u64
            })
            .collect()
    }
}

/// Generators of a group of automorphisms of a `FinAbGroup`, in element coordinates.
#[derive(Clone, Debug)]
pub struct LatticeAction {
    pub generators: Vec<Vec<Vec<u64>>>,
}

impl LatticeAction {
    pub fn new(group: &FinAbGroup, ambient: &[IMat]) -> Result<LatticeAction> {
        let generators = ambient
            .iter()
            .map(|g| group.induced(g))
            .collect::<Result<_>>()?;
        Ok(LatticeAction { generators })
    }

    /// Orbit sizes in ascending order, by explicit enumeration.
    pub fn orbit_sizes(&self, group: &FinAbGroup) -> Vec<u64> {
        let total = group.order() as usize;
        let mut seen = vec![false; total];
        let mut sizes = Vec::new();
        for start in 0..total {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut size = 0u64;
            while let Some(i) = stack.pop() {
                size += 1;
                let x = group.element_at(i);
                for g in &self.generators {
                    let j = group.index_of(&group.apply(g, &x));
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable();
        sizes
    }
}

fn one_minus(m: &IMat) -> IMat {
    let n = m.len();
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j) - m[i][j]).collect())
        .collect()
}

/// `A_w = X₀ / (1 − w) X₀`, weight coordinates.
pub fn torsion_group(d: &RootDatum, w: &WeylElt) -> Result<FinAbGroup> {
    FinAbGroup::cokernel(&one_minus(&w.weight_matrix(d)))
}

/// `A_w° = Q / (1 − w) X₀`, root coordinates.
pub fn reduced_torsion_group(d: &RootDatum, w: &WeylElt) -> Result<FinAbGroup> {
    let m = one_minus(&w.weight_matrix(d));
    let n = d.rank();
    let mut rel = vec![vec![0i64; n]; n];
    for j in 0..n {
        let col: Vec<i64> = (0..n).map(|i| m[i][j]).collect();
        let rc = d.weight_to_root_coords(&col).ok_or_else(|| {
            Error::Internal("(1 − w)X₀ is not contained in the root lattice".into())
        })?;
        for i in 0..n {
            rel[i][j] = rc[i];
        }
    }
    FinAbGroup::cokernel(&rel)
}

/// Orbit sizes of `Z_{W₀}(w)` on `A_w°`, together with the group and the centralizer order.
#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub reduced_torsion: FinAbGroup,
    pub centralizer_order: u64,
    pub orbit_sizes: Vec<u64>,
}

pub fn orbit_decomposition(d: &RootDatum, w: &WeylElt, m: u32) -> Result<OrbitReport> {
    let (z, _) = weylgrp::centralizer(d, w, m)?;
    let a = reduced_torsion_group(d, w)?;
    let mats: Vec<IMat> = z
        .generators
        .iter()
        .map(|g| g.root_matrix().clone())
        .collect();
    let act = LatticeAction::new(&a, &mats)?;
    Ok(OrbitReport {
        orbit_sizes: act.orbit_sizes(&a),
        centralizer_order: z.order,
        reduced_torsion: a,
    })
}
