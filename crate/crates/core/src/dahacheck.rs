//! Relation checking for finite-dimensional modules over the degenerate double affine Hecke algebra.
//!
//! Weights `λ = (μ, ℓ)` use fundamental-weight coordinates for `μ`; coweights use
//! simple-coroot coordinates, so that the pairing is the plain dot product.
//! Generators: `s_i` for `i ∈ 0..=n` and `ξ_λ`, additive in `λ`, with `ξ_δ = 1` and
//! `ξ_λ s_i − s_i ξ_{s_i λ} = −κ (λ·α̌_i)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::IMat;
use crate::rootdata::{supported_types, RootDatum, TypeLabel};
use crate::weylgrp;

pub type RMat = Vec<Vec<BigRational>>;

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn ri(p: i64) -> BigRational {
    BigRational::from_integer(p.into())
}

pub fn r_identity(n: usize) -> RMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn r_scalar(n: usize, c: &BigRational) -> RMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        c.clone()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn r_diag(v: &[BigRational]) -> RMat {
    let n = v.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        v[i].clone()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn r_mul(a: &RMat, b: &RMat) -> RMat {
    let n = a.len();
    let p = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigRational::zero(); p]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..p {
                out[i][j] += &a[i][k] * &bk[j];
            }
        }
    }
    out
}

fn r_lin(a: &RMat, x: &BigRational, b: &RMat, y: &BigRational) -> RMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(p, q)| p * x + q * y).collect())
        .collect()
}

fn is_square(a: &RMat, n: usize) -> bool {
    a.len() == n && a.iter().all(|r| r.len() == n)
}

/// Affine root system data used by the presentation.
#[derive(Clone, Debug)]
pub struct AffinePresentation {
    pub rank: usize,
    /// `cartan[i][j] = α_j·α̌_i` for `i, j ∈ 0..=n`.
    pub cartan: IMat,
    /// Braid exponents; `None` where no relation holds.
    pub coxeter: Vec<Vec<Option<u32>>>,
    /// `θ` in fundamental-weight coordinates.
    theta_weight: Vec<i64>,
    /// `θ̌` in simple-coroot coordinates.
    theta_coroot: Vec<i64>,
    /// `2ρ̌` in simple-coroot coordinates.
    two_rho_check: Vec<i64>,
    /// `cartan_fin[i][j] = a_j·α̌_i`.
    cartan_fin: IMat,
}

impl AffinePresentation {
    pub fn new(d: &RootDatum) -> AffinePresentation {
        let n = d.rank();
        let c = d.cartan().clone();
        let th = d.root(d.highest_root());
        let theta_weight = th.weight.clone();
        let theta_coroot = th.coroot.clone();
        let mut cartan = vec![vec![0i64; n + 1]; n + 1];
        cartan[0][0] = 2;
        for i in 0..n {
            for j in 0..n {
                cartan[i + 1][j + 1] = c[i][j];
            }
            // α_0 = (−θ, 1)
            cartan[i + 1][0] = -theta_weight[i];
            cartan[0][i + 1] = -(0..n).map(|k| theta_coroot[k] * c[k][i]).sum::<i64>();
        }
        let coxeter = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| {
                        if i == j {
                            Some(1)
                        } else {
                            weylgrp::coxeter_exponent(cartan[i][j], cartan[j][i])
                        }
                    })
                    .collect()
            })
            .collect();
        let mut two_rho_check = vec![0i64; n];
        for r in d.pos_roots() {
            for (k, v) in r.coroot.iter().enumerate() {
                two_rho_check[k] += v;
            }
        }
        AffinePresentation {
            rank: n,
            cartan,
            coxeter,
            theta_weight,
            theta_coroot,
            two_rho_check,
            cartan_fin: c,
        }
    }

    /// `λ·α̌_i` for `λ = (μ, ℓ)`.
    pub fn pairing(&self, lambda: &[BigRational], i: usize) -> BigRational {
        if i == 0 {
            -self.mu_theta(lambda)
        } else {
            lambda[i - 1].clone()
        }
    }

    fn mu_theta(&self, lambda: &[BigRational]) -> BigRational {
        (0..self.rank)
            .map(|k| &lambda[k] * ri(self.theta_coroot[k]))
            .sum()
    }

    /// `s_i λ` on weights `(μ, ℓ)`.
    pub fn reflect_weight(&self, i: usize, lambda: &[BigRational]) -> Vec<BigRational> {
        let n = self.rank;
        let mut out = lambda.to_vec();
        if i == 0 {
            let p = self.mu_theta(lambda);
            for k in 0..n {
                out[k] -= &p * ri(self.theta_weight[k]);
            }
            out[n] += p;
        } else {
            let p = lambda[i - 1].clone();
            for k in 0..n {
                out[k] -= &p * ri(self.cartan_fin[k][i - 1]);
            }
        }
        out
    }

    /// `s_i` on `X₀ ⊕ ℤδ` as an integer matrix acting on columns `(μ, ℓ)`.
    pub fn weight_action_matrix(&self, i: usize) -> IMat {
        let n = self.rank;
        (0..=n)
            .map(|row| {
                (0..=n)
                    .map(|col| {
                        let mut e = vec![BigRational::zero(); n + 1];
                        e[col] = BigRational::one();
                        let img = self.reflect_weight(i, &e);
                        img[row].to_integer().try_into().expect("small entry")
                    })
                    .collect()
            })
            .collect()
    }

    /// `s_i v̂` on coweights `v̂ = (v, t)`; `s_0 (v, t) = (s_θ v + t θ̌, t)`.
    pub fn reflect_coweight(&self, i: usize, v: &[BigRational]) -> Vec<BigRational> {
        let n = self.rank;
        let mut out = v.to_vec();
        if i == 0 {
            let p: BigRational = (0..n).map(|j| &v[j] * ri(self.theta_weight[j])).sum();
            for k in 0..n {
                out[k] -= &p * ri(self.theta_coroot[k]);
                out[k] += &v[n] * ri(self.theta_coroot[k]);
            }
        } else {
            let p: BigRational = (0..n).map(|j| &v[j] * ri(self.cartan_fin[j][i - 1])).sum();
            out[i - 1] -= p;
        }
        out
    }

    /// `ρ̌_c = (cρ̌, 1)`.
    pub fn shifted_rho(&self, c: &BigRational) -> Vec<BigRational> {
        let mut v: Vec<BigRational> = self.two_rho_check.iter().map(|&x| c * rat(x, 2)).collect();
        v.push(BigRational::one());
        v
    }

    /// `w ρ̌_c` for a word applied right to left (`word = [s2, s0]` gives `s2 s0 ρ̌_c`).
    pub fn twisted_shifted_rho(&self, c: &BigRational, word: &[usize]) -> Vec<BigRational> {
        let mut v = self.shifted_rho(c);
        for &i in word.iter().rev() {
            v = self.reflect_coweight(i, &v);
        }
        v
    }

    /// Basis weights `o_1, …, o_n, δ`.
    pub fn basis_weight(&self, b: usize) -> Vec<BigRational> {
        let mut e = vec![BigRational::zero(); self.rank + 1];
        e[b] = BigRational::one();
        e
    }

    pub fn basis_names(&self) -> Vec<String> {
        let mut v: Vec<String> = (1..=self.rank).map(|i| format!("o{i}")).collect();
        v.push("delta".into());
        v
    }
}

fn pair(lambda: &[BigRational], v: &[BigRational]) -> BigRational {
    lambda.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Matrices of a module: `s[i]` for `i ∈ 0..=n`, `xi[b]` for the basis weights `o_1..o_n, δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleData {
    pub label: TypeLabel,
    pub rank: usize,
    pub kappa: BigRational,
    pub dim: usize,
    pub s: Vec<RMat>,
    pub xi: Vec<RMat>,
}

impl ModuleData {
    /// `ξ_λ` for an arbitrary weight, by additivity.
    pub fn xi_of(&self, lambda: &[BigRational]) -> RMat {
        let mut out = vec![vec![BigRational::zero(); self.dim]; self.dim];
        for (b, coeff) in lambda.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            out = r_lin(&out, &BigRational::one(), &self.xi[b], coeff);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationResult {
    pub relation: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct ModuleVerdict {
    pub results: Vec<RelationResult>,
}

impl ModuleVerdict {
    pub fn passes(&self) -> bool {
        self.results.iter().all(|r| r.holds)
    }
    pub fn first_failure(&self) -> Option<&RelationResult> {
        self.results.iter().find(|r| !r.holds)
    }
}

fn power_is_identity(a: &RMat, e: u32) -> bool {
    let n = a.len();
    let mut p = r_identity(n);
    for _ in 0..e {
        p = r_mul(&p, a);
    }
    p == r_identity(n)
}

/// Checks every defining relation; dimension mismatches are rejected.
pub fn verify_module(pres: &AffinePresentation, m: &ModuleData) -> Result<ModuleVerdict> {
    let n = pres.rank;
    if m.rank != n || m.s.len() != n + 1 || m.xi.len() != n + 1 {
        return Err(Error::Precondition(format!(
            "expected {} reflections and {} weight operators for rank {n}",
            n + 1,
            n + 1
        )));
    }
    if !m.s.iter().chain(&m.xi).all(|a| is_square(a, m.dim)) {
        return Err(Error::Precondition(format!(
            "matrices must be {0}x{0}",
            m.dim
        )));
    }
    let id = r_identity(m.dim);
    let names = pres.basis_names();
    let mut results = Vec::new();
    let mut push = |relation: String, holds: bool| results.push(RelationResult { relation, holds });
    for i in 0..=n {
        push(format!("s{i}^2 = 1"), r_mul(&m.s[i], &m.s[i]) == id);
    }
    for i in 0..=n {
        for j in i + 1..=n {
            if let Some(e) = pres.coxeter[i][j] {
                let prod = r_mul(&m.s[i], &m.s[j]);
                push(format!("(s{i} s{j})^{e} = 1"), power_is_identity(&prod, e));
            }
        }
    }
    for a in 0..=n {
        for b in a + 1..=n {
            let ab = r_mul(&m.xi[a], &m.xi[b]);
            let ba = r_mul(&m.xi[b], &m.xi[a]);
            push(format!("[xi_{}, xi_{}] = 0", names[a], names[b]), ab == ba);
        }
    }
    push("xi_delta = 1".into(), m.xi[n] == id);
    for i in 0..=n {
        for b in 0..=n {
            let lambda = pres.basis_weight(b);
            let moved = pres.reflect_weight(i, &lambda);
            let lhs = r_lin(
                &r_mul(&m.xi[b], &m.s[i]),
                &BigRational::one(),
                &r_mul(&m.s[i], &m.xi_of(&moved)),
                &-BigRational::one(),
            );
            let rhs = r_scalar(m.dim, &(-&m.kappa * pres.pairing(&lambda, i)));
            push(
                format!(
                    "xi_{} s{i} - s{i} xi_(s{i} {}) = -kappa <{}, a{i}>",
                    names[b], names[b], names[b]
                ),
                lhs == rhs,
            );
        }
    }
    Ok(ModuleVerdict { results })
}

fn diag_weights(pres: &AffinePresentation, weights: &[Vec<BigRational>]) -> Vec<RMat> {
    (0..=pres.rank)
        .map(|b| {
            let lambda = pres.basis_weight(b);
            r_diag(&weights.iter().map(|w| pair(&lambda, w)).collect::<Vec<_>>())
        })
        .collect()
}

fn scalar_module(
    d: &RootDatum,
    kappa: BigRational,
    signs: &[i64],
    weight: Vec<BigRational>,
) -> ModuleData {
    let pres = AffinePresentation::new(d);
    ModuleData {
        label: d.label(),
        rank: d.rank(),
        kappa,
        dim: 1,
        s: signs.iter().map(|&e| vec![vec![ri(e)]]).collect(),
        xi: diag_weights(&pres, &[weight]),
    }
}

/// One-dimensional module `s_i ↦ −1`, `ξ_λ ↦ λ·ρ̌_c` at `c = 1/h`.
pub fn sign_module(d: &RootDatum) -> ModuleData {
    let c = rat(1, d.coxeter_number() as i64);
    let pres = AffinePresentation::new(d);
    scalar_module(d, c.clone(), &vec![-1; d.rank() + 1], pres.shifted_rho(&c))
}

/// One-dimensional module `s_i ↦ 1`, `ξ_λ ↦ λ·(−cρ̌, 1)`, with `κ = c`; a module only at `c = −1/h`.
pub fn trivial_type_module(d: &RootDatum, c: &BigRational) -> ModuleData {
    let pres = AffinePresentation::new(d);
    scalar_module(d, c.clone(), &vec![1; d.rank() + 1], pres.shifted_rho(&-c))
}

fn parse_mat(rows: &[&[(i64, i64)]]) -> RMat {
    rows.iter()
        .map(|r| r.iter().map(|&(p, q)| rat(p, q)).collect())
        .collect()
}

#[derive(Clone, Debug)]
pub struct CatalogModule {
    pub name: String,
    pub module: ModuleData,
}

/// The explicit modules listed in the examples, built exactly.
pub fn builtin_modules() -> Vec<CatalogModule> {
    let mut out = Vec::new();
    for (l, n) in supported_types() {
        let d = RootDatum::build(l, n).expect("supported");
        out.push(CatalogModule {
            name: format!("{}-sign-1/h", d.name()),
            module: sign_module(&d),
        });
        out.push(CatalogModule {
            name: format!("{}-trivial-(-1/h)", d.name()),
            module: trivial_type_module(&d, &rat(-1, d.coxeter_number() as i64)),
        });
    }
    let c2 = RootDatum::build(TypeLabel::C, 2).expect("C2");
    let p = AffinePresentation::new(&c2);
    let half = rat(1, 2);
    out.push(CatalogModule {
        name: "C2-S-1/2".into(),
        module: scalar_module(&c2, half.clone(), &[1, -1, -1], p.shifted_rho(&half)),
    });
    out.push(CatalogModule {
        name: "C2-Sbar-1/2".into(),
        module: scalar_module(
            &c2,
            half.clone(),
            &[-1, -1, 1],
            p.twisted_shifted_rho(&half, &[2, 0]),
        ),
    });
    let g2 = RootDatum::build(TypeLabel::G, 2).expect("G2");
    let p = AffinePresentation::new(&g2);
    let third = rat(1, 3);
    out.push(CatalogModule {
        name: "G2-dim2-1/3".into(),
        module: ModuleData {
            label: TypeLabel::G,
            rank: 2,
            kappa: third.clone(),
            dim: 2,
            s: vec![
                parse_mat(&[&[(1, 2), (3, 2)], &[(1, 2), (-1, 2)]]),
                parse_mat(&[&[(-1, 1), (0, 1)], &[(0, 1), (-1, 1)]]),
                parse_mat(&[&[(-1, 1), (0, 1)], &[(0, 1), (1, 1)]]),
            ],
            xi: diag_weights(
                &p,
                &[p.shifted_rho(&third), p.twisted_shifted_rho(&third, &[0])],
            ),
        },
    });
    out.push(CatalogModule {
        name: "G2-dim3-1/2".into(),
        module: ModuleData {
            label: TypeLabel::G,
            rank: 2,
            kappa: half.clone(),
            dim: 3,
            s: vec![
                parse_mat(&[
                    &[(1, 3), (8, 1), (0, 1)],
                    &[(1, 9), (-1, 3), (0, 1)],
                    &[(0, 1), (0, 1), (-1, 1)],
                ]),
                parse_mat(&[
                    &[(-1, 1), (0, 1), (0, 1)],
                    &[(0, 1), (-1, 1), (0, 1)],
                    &[(0, 1), (0, 1), (1, 1)],
                ]),
                parse_mat(&[
                    &[(-1, 1), (0, 1), (0, 1)],
                    &[(0, 1), (1, 2), (3, 1)],
                    &[(0, 1), (1, 4), (-1, 2)],
                ]),
            ],
            xi: diag_weights(
                &p,
                &[
                    p.shifted_rho(&half),
                    p.twisted_shifted_rho(&half, &[0]),
                    p.twisted_shifted_rho(&half, &[2, 0]),
                ],
            ),
        },
    });
    out
}

/// Copy of a module with one entry increased by one; `target` enumerates `s_0..s_n` then `ξ_{o_1}..ξ_δ`.
pub fn perturb(m: &ModuleData, target: usize, row: usize, col: usize) -> ModuleData {
    let mut out = m.clone();
    let ns = out.s.len();
    let mat = if target < ns {
        &mut out.s[target]
    } else {
        &mut out.xi[target - ns]
    };
    mat[row][col] += BigRational::one();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_action_is_affine_coxeter() {
        for (l, n) in [
            (TypeLabel::G, 2),
            (TypeLabel::C, 3),
            (TypeLabel::A, 1),
            (TypeLabel::E, 6),
        ] {
            let d = RootDatum::build(l, n).unwrap();
            let p = AffinePresentation::new(&d);
            let mats: Vec<IMat> = (0..=n).map(|i| p.weight_action_matrix(i)).collect();
            let id = crate::linalg::identity(n + 1);
            for i in 0..=n {
                assert_eq!(crate::linalg::mat_mul(&mats[i], &mats[i]), id);
                for j in i + 1..=n {
                    if let Some(e) = p.coxeter[i][j] {
                        let prod = crate::linalg::mat_mul(&mats[i], &mats[j]);
                        let mut q = id.clone();
                        for _ in 0..e {
                            q = crate::linalg::mat_mul(&q, &prod);
                        }
                        assert_eq!(q, id, "{} braid {i},{j}", d.name());
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_is_invariant() {
        let d = RootDatum::build(TypeLabel::G, 2).unwrap();
        let p = AffinePresentation::new(&d);
        let lam = vec![rat(3, 1), rat(-2, 1), rat(5, 1)];
        let v = vec![rat(1, 3), rat(7, 2), rat(2, 1)];
        for i in 0..=2 {
            assert_eq!(
                pair(&p.reflect_weight(i, &lam), &p.reflect_coweight(i, &v)),
                pair(&lam, &v)
            );
        }
    }

    #[test]
    fn catalog_passes() {
        let cat = builtin_modules();
        for c in &cat {
            let d = RootDatum::build(c.module.label, c.module.rank).unwrap();
            let v = verify_module(&AffinePresentation::new(&d), &c.module).unwrap();
            assert!(v.passes(), "{}: {:?}", c.name, v.first_failure());
        }
    }

    #[test]
    fn trivial_type_only_at_minus_one_over_h() {
        let d = RootDatum::build(TypeLabel::B, 3).unwrap();
        let p = AffinePresentation::new(&d);
        for (a, b) in [(-1, 6), (1, 6), (-1, 5), (-1, 3), (1, 2)] {
            let m = trivial_type_module(&d, &rat(a, b));
            assert_eq!(verify_module(&p, &m).unwrap().passes(), (a, b) == (-1, 6));
        }
    }

    #[test]
    fn perturbation_detected() {
        let cat = builtin_modules();
        let g = cat.iter().find(|c| c.name == "G2-dim2-1/3").unwrap();
        let d = RootDatum::build(TypeLabel::G, 2).unwrap();
        let p = AffinePresentation::new(&d);
        for t in 0..6 {
            let m = perturb(&g.module, t, 1, 0);
            assert!(!verify_module(&p, &m).unwrap().passes());
        }
    }
}
