//! Golden comparisons: each check carries its citation and both values.

use std::collections::BTreeSet;
use std::str::FromStr;

use ellreg_core::affine::{self, Alcove, ClanTable, Slope};
use ellreg_core::dahacheck::{builtin_modules, verify_module, AffinePresentation};
use ellreg_core::linalg::gcd;
use ellreg_core::localize;
use ellreg_core::{torsion, weylgrp, RootDatum, TypeLabel};
use serde::Serialize;

use crate::golden::{Golden, GoldenRow};
use crate::report::{centralizer_is_cheap, chi_until_stable};
use crate::{CliError, BASE_RADIUS};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub subject: String,
    pub citation: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    pub fn new(
        subject: String,
        citation: &str,
        expected: impl std::fmt::Debug,
        computed: impl std::fmt::Debug,
    ) -> Check {
        let expected = format!("{expected:?}");
        let computed = format!("{computed:?}");
        Check {
            pass: expected == computed,
            subject,
            citation: citation.to_string(),
            expected,
            computed,
        }
    }

    pub fn line(&self) -> String {
        if self.pass {
            format!("ok   {} = {}", self.subject, self.computed)
        } else {
            format!(
                "FAIL {} [{}]: computed {} vs expected {}",
                self.subject, self.citation, self.computed, self.expected
            )
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SelfTest {
    pub checks: Vec<Check>,
    pub deferred: Vec<String>,
}

impl SelfTest {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Slope `k/m`; non-coprime pairs keep the modulus `m`.
pub fn slope(k: i64, m: i64) -> Result<Slope, CliError> {
    Ok(if gcd(k, m) == 1 {
        Slope::new(k, m)?
    } else {
        Slope::with_modulus(k, m)?
    })
}

fn root_strings(d: &RootDatum, roots: &[affine::AffineRoot]) -> Vec<String> {
    let mut v: Vec<String> = roots
        .iter()
        .map(|r| affine::root_string(d, r.root))
        .collect();
    v.sort();
    v
}

/// Partition of the listed words into clans, as sets of alcove indices; `None` for a word outside the table.
fn clan_partition(
    d: &RootDatum,
    table: &ClanTable,
    clans: &[Vec<String>],
) -> Result<Vec<Option<usize>>, CliError> {
    let mut out = Vec::new();
    for words in clans {
        let mut ids = BTreeSet::new();
        for w in words {
            ids.insert(table.clan_of_word(d, &affine::parse_affine_word(w)?));
        }
        out.push(if ids.len() == 1 {
            *ids.iter().next().expect("one")
        } else {
            None
        });
    }
    Ok(out)
}

fn check_row(
    d: &RootDatum,
    row: &GoldenRow,
    seed: u64,
    deep: bool,
    out: &mut SelfTest,
) -> Result<(), CliError> {
    let m = row.m;
    let name = d.name();
    let tag = |what: &str| format!("{name} m={m} {what}");
    if let Some(g) = &row.regular_degrees {
        let mut degs: Vec<u32> = d
            .regular_indices(m)
            .iter()
            .map(|&i| d.degrees()[i - 1])
            .collect();
        degs.sort_unstable();
        out.checks
            .push(Check::new(tag("I_m degrees"), &g.citation, &g.value, degs));
    }
    let needs_rep = row.torsion_group.is_some()
        || row.reduced_torsion.is_some()
        || row.reduced_torsion_order.is_some()
        || row.orbits.is_some();
    if needs_rep {
        let rep = weylgrp::elliptic_rep(d, m, seed)?;
        if let Some(g) = &row.torsion_group {
            let f = torsion::torsion_group(d, &rep.elt)?;
            out.checks.push(Check::new(
                tag("A_m"),
                &g.citation,
                &g.value,
                f.invariant_factors(),
            ));
        }
        let reduced_torsion = torsion::reduced_torsion_group(d, &rep.elt)?;
        if let Some(g) = &row.reduced_torsion {
            out.checks.push(Check::new(
                tag("A_m°"),
                &g.citation,
                &g.value,
                reduced_torsion.invariant_factors(),
            ));
        }
        if let Some(g) = &row.reduced_torsion_order {
            out.checks.push(Check::new(
                tag("|A_m°|"),
                &g.citation,
                g.value,
                reduced_torsion.order(),
            ));
        }
        if let Some(g) = &row.orbits {
            if deep || centralizer_is_cheap(d, m) {
                let rep_orbits = torsion::orbit_decomposition(d, &rep.elt, m)?;
                let mut sizes = rep_orbits.orbit_sizes.clone();
                sizes.sort_unstable();
                out.checks
                    .push(Check::new(tag("orbit sizes"), &g.citation, &g.value, sizes));
            } else {
                out.deferred.push(tag("orbit sizes"));
            }
        }
    }
    let s1 = Slope::new(1, m as i64);
    if let Ok(s) = &s1 {
        if let Some(g) = &row.subgroup_type {
            let wc = weylgrp::reflection_subgroup(d, &affine::level_subsystem(d, s));
            out.checks.push(Check::new(
                tag("W_c type"),
                &g.citation,
                &g.value,
                wc.type_string(),
            ));
        }
        if let Some(g) = &row.base_bundle {
            let got = root_strings(d, &affine::bundle_roots_at(d, s, &Alcove::fundamental(d)));
            out.checks
                .push(Check::new(tag("D_c,1"), &g.citation, &g.value, got));
        }
        if let Some(g) = &row.level_simple_roots {
            out.checks.push(Check::new(
                tag("Pi_c"),
                &g.citation,
                &g.value,
                root_strings(d, &affine::level_simple_roots(d, s)),
            ));
        }
        if let Some(g) = &row.clans {
            let rep = localize::total_chi(d, s, BASE_RADIUS, seed)?;
            let table = affine::enumerate_clans(d, s, BASE_RADIUS)?;
            let parts = clan_partition(d, &table, &g.value)?;
            let expected: Vec<(bool, usize)> = g.value.iter().map(|w| (true, w.len())).collect();
            let computed: Vec<(bool, usize)> = parts
                .iter()
                .map(|p| match p {
                    Some(c) => (rep.clans[*c].chi != 0.into(), table.clans[*c].members.len()),
                    None => (false, 0),
                })
                .collect();
            out.checks.push(Check::new(
                tag("listed clans (nonzero χ, size)"),
                &g.citation,
                expected,
                computed,
            ));
            let listed: BTreeSet<usize> = parts.iter().flatten().copied().collect();
            let nonzero: BTreeSet<usize> = rep.nonzero_clans().map(|c| c.clan).collect();
            out.checks.push(Check::new(
                tag("distinct listed clans, clans with nonzero χ"),
                &g.citation,
                (g.value.len(), g.value.len()),
                (listed.len(), nonzero.len()),
            ));
        }
        if let Some(g) = &row.point_counts {
            for wc in &g.value {
                let a = Alcove::from_word(d, &affine::parse_affine_word(&wc.word)?)?;
                let n = localize::point_count(d, s, &a, seed)?;
                out.checks.push(Check::new(
                    tag(&format!("points at {}", wc.word)),
                    &g.citation,
                    wc.count.to_string(),
                    n.to_string(),
                ));
            }
        }
        if let Some(g) = &row.fiber_chi {
            for wc in &g.value {
                let a = Alcove::from_word(d, &affine::parse_affine_word(&wc.word)?)?;
                let n = localize::chi_fiber(d, s, &a, seed)?;
                out.checks.push(Check::new(
                    tag(&format!("χ at {}", wc.word)),
                    &g.citation,
                    wc.chi.to_string(),
                    n.to_string(),
                ));
            }
        }
    }
    for t in &row.total_chi {
        let s = slope(t.k, m as i64)?;
        let reports = chi_until_stable(d, &s, BASE_RADIUS, seed)?;
        let last = reports.last().expect("nonempty");
        out.checks.push(Check::new(
            tag(&format!(
                "k={} total χ (radius {}, clean frontier {})",
                t.k, last.radius, last.frontier_zero
            )),
            &t.citation,
            t.total.to_string(),
            last.total.to_string(),
        ));
    }
    Ok(())
}

/// Runs every golden comparison, then the module catalog and the exponent fact.
pub fn run(
    golden: &Golden,
    seed: u64,
    deep: bool,
    progress: &mut dyn FnMut(&str),
) -> Result<SelfTest, CliError> {
    let mut out = SelfTest::default();
    for case in &golden.cases {
        progress(&case.name());
        let d = RootDatum::build(TypeLabel::from_str(&case.label)?, case.rank)?;
        let en = weylgrp::elliptic_numbers(&d, seed);
        let got: Vec<u32> = en.constructive.iter().copied().collect();
        out.checks.push(Check::new(
            format!("{} EN", d.name()),
            &case.en.citation,
            &case.en.value,
            &got,
        ));
        if let Some(ex) = &en.exhaustive {
            let ex: Vec<u32> = ex.iter().copied().collect();
            out.checks.push(Check::new(
                format!("{} EN (exhaustive)", d.name()),
                &case.en.citation,
                &case.en.value,
                ex,
            ));
        }
        let bad: Vec<(u32, u32)> = d
            .exponents()
            .into_iter()
            .flat_map(|e| {
                case.en
                    .value
                    .iter()
                    .filter(move |&&m| e % m == 0)
                    .map(move |&m| (e, m))
            })
            .collect();
        out.checks.push(Check::new(
            format!("{} exponents divisible by an elliptic number", d.name()),
            "exponent fact",
            Vec::<(u32, u32)>::new(),
            bad,
        ));
        for row in &case.rows {
            if case.en.value.contains(&row.m) {
                check_row(&d, row, seed, deep, &mut out)?;
            }
        }
    }
    for cm in builtin_modules() {
        let d = RootDatum::build(cm.module.label, cm.module.rank)?;
        let v = verify_module(&AffinePresentation::new(&d), &cm.module)?;
        let first = v.first_failure().map(|r| r.relation.clone());
        out.checks.push(Check::new(
            format!("module {}", cm.name),
            "module catalog",
            None::<String>,
            first,
        ));
    }
    Ok(out)
}
