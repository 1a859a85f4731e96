//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;
use std::time::{Duration, Instant};

use ellreg_cli::golden::{self, Golden, GoldenRow};
use ellreg_cli::report::chi_until_stable;
use ellreg_cli::selftest::slope;
use ellreg_cli::{BASE_RADIUS, DEFAULT_SEED};
use ellreg_core::affine::{self, Alcove, Slope};
use ellreg_core::dahacheck::{self, builtin_modules, verify_module, AffinePresentation};
use ellreg_core::localize::{self, Localizer};
use ellreg_core::rootdata::supported_types;
use ellreg_core::torsion;
use ellreg_core::weylgrp::{self, WeylElt};
use ellreg_core::{RootDatum, TypeLabel};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = DEFAULT_SEED;

#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    info: Vec<String>,
    summary: String,
}

impl Outcome {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
    fn within(&mut self, took: Duration, limit: Duration, what: &str) {
        self.expect(took <= limit, || {
            format!("{what} took {took:?}, limit {limit:?}")
        });
    }
}

fn build(l: TypeLabel, n: usize) -> RootDatum {
    RootDatum::build(l, n).expect("supported type")
}

fn by_name(name: &str) -> RootDatum {
    let (l, n) = name.split_at(1);
    build(TypeLabel::from_str(l).unwrap(), n.parse().unwrap())
}

/// Coxeter numbers from the classification table.
fn coxeter_h(l: TypeLabel, n: usize) -> u32 {
    let n = n as u32;
    match l {
        TypeLabel::A => n + 1,
        TypeLabel::B | TypeLabel::C => 2 * n,
        TypeLabel::D => 2 * n - 2,
        TypeLabel::E => [12, 18, 30][n as usize - 6],
        TypeLabel::F => 12,
        TypeLabel::G => 6,
    }
}

/// Exponents from the classification table.
fn exponents_table(l: TypeLabel, n: usize) -> Vec<u32> {
    let n32 = n as u32;
    let mut v = match l {
        TypeLabel::A => (1..=n32).collect(),
        TypeLabel::B | TypeLabel::C => (0..n32).map(|i| 2 * i + 1).collect(),
        TypeLabel::D => (0..n32 - 1)
            .map(|i| 2 * i + 1)
            .chain([n32 - 1])
            .collect::<Vec<_>>(),
        TypeLabel::E => match n {
            6 => vec![1, 4, 5, 7, 8, 11],
            7 => vec![1, 5, 7, 9, 11, 13, 17],
            _ => vec![1, 7, 11, 13, 17, 19, 23, 29],
        },
        TypeLabel::F => vec![1, 5, 7, 11],
        TypeLabel::G => vec![1, 5],
    };
    v.sort_unstable();
    v
}

/// Order of the center of the simply connected group.
fn center_table(l: TypeLabel, n: usize) -> i64 {
    match l {
        TypeLabel::A => n as i64 + 1,
        TypeLabel::B | TypeLabel::C => 2,
        TypeLabel::D => 4,
        TypeLabel::E => [3, 2, 1][n - 6],
        TypeLabel::F | TypeLabel::G => 1,
    }
}

fn golden_row<'a>(g: &'a Golden, d: &RootDatum, m: u32) -> &'a GoldenRow {
    g.case(&d.label().to_string(), d.rank())
        .and_then(|c| c.row(m))
        .unwrap_or_else(|| panic!("no golden row for {} m={m}", d.name()))
}

fn golden_en(g: &Golden, d: &RootDatum) -> Vec<u32> {
    g.case(&d.label().to_string(), d.rank())
        .expect("golden case")
        .en
        .value
        .clone()
}

/// Cases of the localization identity: type name and m.
const IDENTITY_CASES: &[(&str, u32)] = &[
    ("C2", 2),
    ("D4", 4),
    ("G2", 2),
    ("G2", 3),
    ("G2", 6),
    ("F4", 6),
    ("F4", 8),
    ("F4", 12),
    ("E6", 3),
    ("E6", 6),
    ("E6", 9),
    ("E6", 12),
    ("E7", 2),
    ("E7", 6),
    ("E7", 14),
    ("E7", 18),
    ("E8", 15),
    ("E8", 20),
    ("E8", 24),
    ("E8", 30),
];

fn criterion_1(g: &Golden) -> Outcome {
    let mut o = Outcome::default();
    let start = Instant::now();
    let mut types: Vec<(TypeLabel, usize)> = Vec::new();
    types.extend((1..=8).map(|n| (TypeLabel::A, n)));
    types.extend((2..=6).map(|n| (TypeLabel::B, n)));
    types.extend((2..=6).map(|n| (TypeLabel::C, n)));
    types.extend((4..=8).map(|n| (TypeLabel::D, n)));
    types.extend([
        (TypeLabel::E, 6),
        (TypeLabel::E, 7),
        (TypeLabel::E, 8),
        (TypeLabel::F, 4),
        (TypeLabel::G, 2),
    ]);
    let mut exhaustive = 0;
    for (l, n) in &types {
        let d = build(*l, *n);
        let expect: BTreeSet<u32> = golden_en(g, &d).into_iter().collect();
        let en = weylgrp::elliptic_numbers(&d, SEED);
        o.expect(en.constructive == expect, || {
            format!(
                "{}: constructive {:?} vs {:?}",
                d.name(),
                en.constructive,
                expect
            )
        });
        if d.weyl_order() <= weylgrp::EXHAUSTIVE_LIMIT {
            exhaustive += 1;
            o.expect(en.exhaustive.as_ref() == Some(&expect), || {
                format!(
                    "{}: exhaustive {:?} vs {:?}",
                    d.name(),
                    en.exhaustive,
                    expect
                )
            });
        }
    }
    o.within(
        start.elapsed(),
        Duration::from_secs(300),
        "elliptic numbers",
    );
    o.summary = format!(
        "{} types, {exhaustive} certified complete by exhaustion",
        types.len()
    );
    o
}

fn criterion_2(_: &Golden) -> Outcome {
    let mut o = Outcome::default();
    let special: &[(&str, &str, u32)] = &[
        ("F4", "123234", 8),
        ("E6", "12342546", 9),
        ("E7", "123425467", 14),
        ("E8", "1234254678", 24),
        ("E8", "123425465478", 20),
    ];
    let mut items: Vec<(RootDatum, Vec<usize>, u32)> = Vec::new();
    for &(t, w, m) in special {
        items.push((by_name(t), weylgrp::parse_digit_word(w).unwrap(), m));
    }
    for (l, n) in supported_types() {
        let d = build(l, n);
        let h = coxeter_h(l, n);
        items.push((d, (1..=n).collect(), h));
    }
    let mut slowest = Duration::ZERO;
    for (d, word, m) in &items {
        let t = Instant::now();
        let w = weylgrp::word_to_elt(d, word).unwrap();
        let order = w.order(d);
        let ok = order == *m as u64 && weylgrp::certify_elliptic_regular(d, &w, *m);
        let took = t.elapsed();
        slowest = slowest.max(took);
        o.within(
            took,
            Duration::from_secs(1),
            &format!("{} word {word:?}", d.name()),
        );
        if !ok {
            let fb = weylgrp::check_seed_words(d, SEED)
                .into_iter()
                .find(|r| &r.word == word)
                .and_then(|r| r.fallback);
            o.failures.push(format!(
                "{} word {word:?}: order {order}, expected {m}; fallback {fb:?}",
                d.name()
            ));
        }
    }
    for (l, n) in supported_types() {
        let d = build(l, n);
        for r in weylgrp::check_seed_words(&d, SEED) {
            o.expect(r.certified && r.fallback.is_none(), || {
                format!(
                    "{} seed {:?} needed fallback {:?}",
                    d.name(),
                    r.word,
                    r.fallback
                )
            });
        }
    }
    o.summary = format!(
        "{} words certified, slowest {slowest:?}, no fallback used",
        items.len()
    );
    o
}

fn criterion_3(g: &Golden) -> Outcome {
    let mut o = Outcome::default();
    let mut count = 0;
    let mut largest = 0u64;
    for case in &g.cases {
        let d = by_name(&case.name());
        for &m in &case.en.value {
            let expected: u64 = match golden_row(g, &d, m).regular_degrees.as_ref() {
                Some(c) => c.value.iter().map(|&x| x as u64).product(),
                // type A: the Coxeter class, centralizer cyclic of order h
                None => coxeter_h(d.label(), d.rank()) as u64,
            };
            let rep = weylgrp::elliptic_rep(&d, m, SEED).unwrap();
            let (z, stats) = weylgrp::centralizer(&d, &rep.elt, m).unwrap();
            largest = largest.max(stats.class_size.unwrap_or(0));
            count += 1;
            o.expect(z.order == expected, || {
                format!("{} m={m}: |W_m| = {} vs {expected}", d.name(), z.order)
            });
        }
    }
    o.summary = format!("{count} (type, m) pairs, largest class enumerated {largest}");
    o
}

fn criterion_4(g: &Golden) -> Outcome {
    let mut o = Outcome::default();
    let mut rows = 0;
    for case in &g.cases {
        let d = by_name(&case.name());
        for row in &case.rows {
            if !case.en.value.contains(&row.m)
                || (row.torsion_group.is_none() && row.reduced_torsion.is_none())
            {
                continue;
            }
            rows += 1;
            let w = weylgrp::elliptic_rep(&d, row.m, SEED).unwrap().elt;
            let a = torsion::torsion_group(&d, &w).unwrap();
            let ac = torsion::reduced_torsion_group(&d, &w).unwrap();
            if let Some(x) = &row.torsion_group {
                o.expect(a.invariant_factors() == x.value.as_slice(), || {
                    format!(
                        "{} m={} torsion group {:?} vs {:?} [{}]",
                        d.name(),
                        row.m,
                        a.invariant_factors(),
                        x.value,
                        x.citation
                    )
                });
            }
            if let Some(x) = &row.reduced_torsion {
                o.expect(ac.invariant_factors() == x.value.as_slice(), || {
                    format!(
                        "{} m={} reduced torsion {:?} vs {:?} [{}]",
                        d.name(),
                        row.m,
                        ac.invariant_factors(),
                        x.value,
                        x.citation
                    )
                });
            }
            if let Some(x) = &row.reduced_torsion_order {
                o.expect(ac.order() == x.value, || {
                    format!(
                        "{} m={} reduced order {} vs {} [{}]",
                        d.name(),
                        row.m,
                        ac.order(),
                        x.value,
                        x.citation
                    )
                });
            }
        }
    }
    o.summary = format!("{rows} rows of torsion and reduced torsion structure");
    o
}

/// Orbits of `W` on `Y/2Y` by union-find over all `2^n` residues.
fn brute_force_orbits_mod2(d: &RootDatum) -> Vec<u64> {
    let n = d.rank();
    let c = d.cartan();
    let size = 1usize << n;
    let mut parent: Vec<usize> = (0..size).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for y in 0..size {
        let bits: Vec<i64> = (0..n).map(|j| ((y >> j) & 1) as i64).collect();
        for i in 0..n {
            // s_i(y) = y − ⟨a_i, y⟩ ǎ_i with ⟨a_i, ǎ_k⟩ = C[k][i]
            let pair: i64 = (0..n).map(|k| bits[k] * c[k][i]).sum();
            let mut img = bits.clone();
            img[i] = (img[i] - pair).rem_euclid(2);
            let z: usize = img
                .iter()
                .enumerate()
                .map(|(j, &b)| (b as usize) << j)
                .sum();
            let (a, b) = (find(&mut parent, y), find(&mut parent, z));
            parent[a] = b;
        }
    }
    let mut sizes: BTreeMap<usize, u64> = BTreeMap::new();
    for y in 0..size {
        *sizes.entry(find(&mut parent, y)).or_default() += 1;
    }
    let mut v: Vec<u64> = sizes.into_values().collect();
    v.sort_unstable();
    v
}

fn criterion_5(g: &Golden) -> Outcome {
    let mut o = Outcome::default();
    for (t, m) in [("G2", 2u32), ("G2", 3), ("C2", 2), ("E8", 2)] {
        let d = by_name(t);
        let w = weylgrp::elliptic_rep(&d, m, SEED).unwrap().elt;
        let mut got = torsion::orbit_decomposition(&d, &w, m).unwrap().orbit_sizes;
        got.sort_unstable();
        let row = golden_row(g, &d, m);
        let expect = &row.orbits.as_ref().unwrap().value;
        o.expect(&got == expect, || {
            format!("{t} m={m}: orbits {got:?} vs {expect:?}")
        });
        if t == "E8" {
            let oracle = brute_force_orbits_mod2(&d);
            o.expect(got == oracle, || {
                format!("E8 m=2: orbits {got:?} vs brute force {oracle:?}")
            });
            o.info
                .push(format!("E8 m=2 brute-force orbits on (Z/2)^8: {oracle:?}"));
        }
    }
    o.summary = "G2 m=2 {1,3}, G2 m=3 {1,2}, C2 m=2 {1,1}, E8 m=2 {1,120,135}".into();
    o
}

fn criterion_6(_: &Golden) -> Outcome {
    let mut o = Outcome::default();
    let start = Instant::now();
    let mut largest = (String::new(), 0usize, 0usize);
    for &(t, m) in IDENTITY_CASES {
        let d = by_name(t);
        for k in [1, 2] {
            let s = slope(k, m as i64).unwrap();
            let v = localize::verify_euler_identity(&d, &s, SEED).unwrap();
            o.expect(v.holds && v.points.len() == 4, || {
                format!("{t} {s}: identity fails, witness {:?}", v.witness)
            });
            if v.subgroup_order * v.fiber_dim > largest.1 * largest.2 {
                largest = (format!("{t} {s}"), v.subgroup_order, v.fiber_dim);
            }
        }
    }
    o.within(start.elapsed(), Duration::from_secs(120), "identity checks");
    o.summary = format!(
        "{} cases at k=1,2, 4 points each; largest {} with |W_c|={} and fiber_dim={}",
        IDENTITY_CASES.len(),
        largest.0,
        largest.1,
        largest.2
    );
    o
}

fn criterion_7(g: &Golden) -> Outcome {
    let mut o = Outcome::default();
    let mut n = 0;
    for &(t, m) in IDENTITY_CASES {
        let d = by_name(t);
        let row = golden_row(g, &d, m);
        let expect = row
            .reduced_torsion_order
            .as_ref()
            .map(|x| x.value)
            .unwrap_or_else(|| {
                let a: u64 = row.torsion_group.as_ref().unwrap().value.iter().product();
                a / center_table(d.label(), d.rank()) as u64
            });
        for k in [1, 2] {
            let s = slope(k, m as i64).unwrap();
            let got = localize::point_count(&d, &s, &Alcove::fundamental(&d), SEED).unwrap();
            n += 1;
            o.expect(got == BigInt::from(expect), || {
                format!("{t} {s} at w=1: {got} points vs |A°| = {expect}")
            });
        }
    }
    for (t, m) in [("G2", 2u32), ("G2", 3), ("C2", 2)] {
        let d = by_name(t);
        let s = Slope::new(1, m as i64).unwrap();
        let pc = golden_row(g, &d, m).point_counts.as_ref().unwrap();
        for wc in &pc.value {
            let a = Alcove::from_word(&d, &affine::parse_affine_word(&wc.word).unwrap()).unwrap();
            let got = localize::point_count(&d, &s, &a, SEED).unwrap();
            n += 1;
            o.expect(got == BigInt::from(wc.count), || {
                format!(
                    "{t} {s} at {}: {got} vs {} [{}]",
                    wc.word, wc.count, pc.citation
                )
            });
        }
    }
    o.summary = format!("{n} point counts");
    o
}

fn total_at(
    d: &RootDatum,
    s: &Slope,
    out: &mut Outcome,
    expect: i64,
    label: &str,
) -> (BigInt, usize) {
    let reports = chi_until_stable(d, s, BASE_RADIUS, SEED).unwrap();
    let first = &reports[0];
    let last = reports.last().unwrap();
    if reports.len() > 1 {
        out.info.push(format!(
            "{label}: radius {} gives {} with nonzero outer shell; clean at radius {} with {}",
            first.radius, first.total, last.radius, last.total
        ));
    }
    out.expect(last.frontier_zero, || {
        format!("{label}: frontier never clean up to radius {}", last.radius)
    });
    out.expect(last.total == BigInt::from(expect), || {
        format!("{label}: total {} vs {expect}", last.total)
    });
    (last.total.clone(), last.radius)
}

fn criterion_8(g: &Golden) -> Outcome {
    let mut o = Outcome::default();
    let start = Instant::now();
    let listed: &[(&str, u32)] = &[
        ("C2", 2),
        ("D4", 4),
        ("E6", 9),
        ("E7", 14),
        ("E8", 24),
        ("F4", 8),
        ("G2", 3),
        ("G2", 2),
        ("G2", 6),
    ];
    let mut at5 = Vec::new();
    for &(t, m) in listed {
        let d = by_name(t);
        let row = golden_row(g, &d, m);
        let expect = row.total_chi.iter().find(|x| x.k == 1).unwrap().total;
        let s = Slope::new(1, m as i64).unwrap();
        let r5 = localize::total_chi(&d, &s, BASE_RADIUS, SEED).unwrap();
        at5.push(format!("{t} m={m}: {}", r5.total));
        total_at(&d, &s, &mut o, expect, &format!("{t} m={m}"));
    }
    let mut coxeter = 0;
    for (l, n) in supported_types() {
        let d = build(l, n);
        let h = coxeter_h(l, n);
        let s = Slope::new(1, h as i64).unwrap();
        total_at(&d, &s, &mut o, 1, &format!("{} m=h={h}", d.name()));
        coxeter += 1;
    }
    o.within(start.elapsed(), Duration::from_secs(600), "Euler totals");
    o.info.push(format!("radius 5 totals: {}", at5.join(", ")));
    o.summary = format!(
        "{} listed totals and {coxeter} Coxeter cases exact",
        listed.len()
    );
    o
}

fn criterion_9(_: &Golden) -> Outcome {
    let mut o = Outcome::default();
    let mut parts = Vec::new();
    for (t, m, per_k2, k) in [("G2", 3i64, 8i64, 2i64), ("C2", 2, 6, 2)] {
        let d = by_name(t);
        let expect = per_k2 * k.pow(d.rank() as u32);
        let s = slope(k, m).unwrap();
        let (tot, r) = total_at(&d, &s, &mut o, expect, &format!("{t} {k}/{m}"));
        let base = localize::total_chi(&d, &Slope::new(1, m).unwrap(), BASE_RADIUS, SEED)
            .unwrap()
            .total;
        o.expect(
            &tot == &(&base * BigInt::from(k.pow(d.rank() as u32))),
            || format!("{t}: k-scaling {tot} vs {base}·k^rank"),
        );
        parts.push(format!("{t} {k}/{m} = {tot} (radius {r})"));
    }
    o.summary = parts.join(", ");
    o
}

fn criterion_10(g: &Golden) -> Outcome {
    let mut o = Outcome::default();
    // listed clans with nonzero χ
    for (t, m) in [("C2", 2u32), ("G2", 2), ("G2", 3)] {
        let d = by_name(t);
        let s = Slope::new(1, m as i64).unwrap();
        let table = affine::enumerate_clans(&d, &s, BASE_RADIUS).unwrap();
        let rep = localize::total_chi(&d, &s, BASE_RADIUS, SEED).unwrap();
        let expect = golden_row(g, &d, m).clans.as_ref().unwrap();
        let mut seen = BTreeSet::new();
        for words in &expect.value {
            let ids: BTreeSet<Option<usize>> = words
                .iter()
                .map(|w| table.clan_of_word(&d, &affine::parse_affine_word(w).unwrap()))
                .collect();
            let ok = ids.len() == 1 && ids.iter().next().unwrap().is_some();
            o.expect(ok, || {
                format!("{t} m={m}: words {words:?} are not one clan")
            });
            if let Some(Some(c)) = ids.iter().next() {
                seen.insert(*c);
                o.expect(table.clans[*c].members.len() == words.len(), || {
                    format!(
                        "{t} m={m}: clan of {words:?} has members {:?}",
                        table.member_words(*c)
                    )
                });
                o.expect(!rep.clans[*c].chi.is_zero(), || {
                    format!("{t} m={m}: clan {words:?} has χ = 0")
                });
            }
        }
        let nonzero: BTreeSet<usize> = rep.nonzero_clans().map(|c| c.clan).collect();
        o.expect(seen.len() == expect.value.len() && seen == nonzero, || {
            format!("{t} m={m}: listed clans {seen:?} vs nonzero-χ clans {nonzero:?}")
        });
    }
    // length inequality over u(A), u ∈ W₀
    let mut pairs = 0;
    for (l, n) in supported_types() {
        let d = build(l, n);
        for m in golden_en(g, &d) {
            let s = Slope::new(1, m as i64).unwrap();
            let c = affine::check_length_inequality(&d, &s, 4).unwrap();
            pairs += 1;
            o.expect(c.holds(), || {
                format!(
                    "{} m={m}: fiber_dim={} |D_c,1|={} counterexamples {:?}",
                    d.name(),
                    c.fiber_dim,
                    c.base_bundle,
                    c.counterexamples
                )
            });
        }
    }
    // literal reading over every W^c alcove, reported only
    {
        let d = by_name("G2");
        let s = Slope::new(1, 2).unwrap();
        let nc = affine::fiber_dim(&d, &s);
        let bad: Vec<String> = affine::enumerate_positive_region(&d, &s, 4)
            .iter()
            .filter(|a| a.length() > 0 && affine::bundle_roots_at(&d, &s, a).len() <= nc)
            .map(|a| {
                format!(
                    "{}:{}",
                    a.word_string(),
                    affine::bundle_roots_at(&d, &s, a).len()
                )
            })
            .collect();
        o.info.push(format!(
            "over all W^c alcoves (not only W0) G2 m=2 has |D_c,w| <= fiber_dim={nc} at {bad:?}; the inequality is checked over W0"
        ));
    }
    // negative slopes: one sign vector on the dominant chamber
    let mut dom = Vec::new();
    for (t, m) in [("C2", 2i64), ("G2", 3), ("F4", 8)] {
        let d = by_name(t);
        let s = Slope::new(-1, m).unwrap();
        let (count, distinct) = affine::dominant_sign_vectors(&d, &s, 6);
        o.expect(count > 1 && distinct == 1, || {
            format!("{t} -1/{m}: {distinct} sign vectors over {count} dominant alcoves")
        });
        dom.push(format!("{t} -1/{m}: {count} alcoves"));
    }
    o.summary = format!(
        "3 clan partitions exact, inequality over {pairs} (type, m) pairs at radius 4, dominant check {}",
        dom.join(", ")
    );
    o
}

fn criterion_11(g: &Golden) -> Outcome {
    let mut o = Outcome::default();
    let mut n = 0;
    for (l, nr) in supported_types() {
        let d = build(l, nr);
        let table = exponents_table(l, nr);
        let mut got = d.exponents();
        got.sort_unstable();
        o.expect(got == table, || {
            format!("{}: exponents {got:?} vs {table:?}", d.name())
        });
        for m in golden_en(g, &d) {
            for &e in &table {
                n += 1;
                o.expect(e % m != 0, || {
                    format!("{}: exponent {e} divisible by m={m}", d.name())
                });
            }
        }
    }
    o.summary = format!("{n} (exponent, m) pairs, none divisible");
    o
}

fn criterion_12(_: &Golden) -> Outcome {
    let mut o = Outcome::default();
    let start = Instant::now();
    let cat = builtin_modules();
    for cm in &cat {
        let d = RootDatum::build(cm.module.label, cm.module.rank).unwrap();
        let v = verify_module(&AffinePresentation::new(&d), &cm.module).unwrap();
        o.expect(v.passes(), || {
            format!("{} fails {:?}", cm.name, v.first_failure())
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..20 {
        let cm = &cat[rng.gen_range(0..cat.len())];
        let m = &cm.module;
        let target = rng.gen_range(0..m.s.len() + m.xi.len());
        let (r, c) = (rng.gen_range(0..m.dim), rng.gen_range(0..m.dim));
        let bad = dahacheck::perturb(m, target, r, c);
        let d = RootDatum::build(m.label, m.rank).unwrap();
        let v = verify_module(&AffinePresentation::new(&d), &bad).unwrap();
        o.expect(!v.passes(), || {
            format!("{} perturbed at {target}/{r},{c} still passes", cm.name)
        });
    }
    for t in ["A3", "C2", "G2"] {
        let d = by_name(t);
        let h = d.coxeter_number() as i64;
        let pres = AffinePresentation::new(&d);
        for (p, q) in [(1, h), (1, 2), (-1, 3), (2, 1), (-2, h)] {
            let c = dahacheck::rat(p, q);
            let ok = verify_module(&pres, &dahacheck::trivial_type_module(&d, &c))
                .unwrap()
                .passes();
            o.expect(!ok, || format!("{t}: trivial-type module passes at c={c}"));
        }
    }
    o.within(start.elapsed(), Duration::from_secs(1), "module checks");
    o.summary = format!("{} catalog modules pass, 20 perturbations fail", cat.len());
    o
}

// ---- property suites ----

fn snf_of(m: &[Vec<i64>]) -> Vec<BigInt> {
    torsion::snf(&m.to_vec())
}

fn chain_ok(diag: &[BigInt]) -> bool {
    diag.windows(2).all(|w| {
        if w[0].is_zero() {
            w[1].is_zero()
        } else {
            (&w[1] % &w[0]).is_zero()
        }
    }) && diag.iter().all(|x| !x.is_negative())
}

/// Random unimodular matrix as a product of elementary operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64, bool)]) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    for &(i, j, f, swap) in ops {
        let (i, j) = (i % n, j % n);
        if swap {
            u.swap(i, j);
        } else if i != j {
            for c in 0..n {
                u[i][c] += f * u[j][c];
            }
        }
    }
    u
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn det_small(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
    }
}

/// For each k | D: number of cosets of `M Z^n` in `Z^n` killed by k, by enumeration inside `(Z/D)^n`.
fn brute_torsion_counts(m: &[Vec<i64>], dd: i64) -> Vec<(i64, u64)> {
    let n = m.len();
    let total = (dd as usize).pow(n as u32);
    let decode = |mut x: usize| -> Vec<i64> {
        (0..n)
            .map(|_| {
                let v = (x % dd as usize) as i64;
                x /= dd as usize;
                v
            })
            .collect()
    };
    let encode = |v: &[i64]| -> usize {
        v.iter().rev().fold(0usize, |acc, &x| {
            acc * dd as usize + x.rem_euclid(dd) as usize
        })
    };
    let mut image: HashSet<usize> = HashSet::new();
    for x in 0..total {
        let coeff = decode(x);
        let v: Vec<i64> = (0..n)
            .map(|i| (0..n).map(|j| m[i][j] * coeff[j]).sum())
            .collect();
        image.insert(encode(&v));
    }
    let mut out = Vec::new();
    for k in 1..=dd {
        if dd % k != 0 {
            continue;
        }
        let killed = (0..total)
            .filter(|&x| {
                let v: Vec<i64> = decode(x).iter().map(|a| a * k).collect();
                image.contains(&encode(&v))
            })
            .count() as u64;
        out.push((k, killed / image.len() as u64));
    }
    out
}

fn chi_point_independent(
    d: &RootDatum,
    loc: &Localizer,
    roots: &[usize],
    rng: &mut ChaCha8Rng,
) -> Result<(), String> {
    let xi1 = localize::generic_point(d, rng);
    let xi2 = localize::generic_point(d, rng);
    let a = loc.chi(d, roots, &xi1).map_err(|e| e.to_string())?;
    let b = loc.chi(d, roots, &xi2).map_err(|e| e.to_string())?;
    if a != b {
        return Err(format!("χ depends on the point: {a} vs {b}"));
    }
    Ok(())
}

fn criterion_13(_: &Golden) -> Outcome {
    let mut o = Outcome::default();
    let runner = |cases: u32| {
        TestRunner::new(Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        })
    };

    // Smith form: divisibility chain and unimodular invariance
    let entries = prop::collection::vec(prop::collection::vec(-9i64..=9, 8), 8);
    let ops = prop::collection::vec((0usize..8, 0usize..8, -2i64..=2, any::<bool>()), 0..10);
    let res = runner(500).run(&(entries, ops.clone(), ops), |(m, lops, rops)| {
        let diag = snf_of(&m);
        prop_assert!(chain_ok(&diag), "not a divisibility chain: {:?}", diag);
        let moved = mul(&mul(&unimodular(8, &lops), &m), &unimodular(8, &rops));
        prop_assert_eq!(snf_of(&moved), diag);
        Ok(())
    });
    o.expect(res.is_ok(), || format!("Smith form on 8x8: {res:?}"));

    // Smith form against coset enumeration
    let small = (2usize..=3)
        .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-4i64..=4, n), n));
    let compared = std::cell::Cell::new(0u32);
    let res = runner(200).run(&small, |m| {
        let dd = det_small(&m).abs();
        if dd == 0 || dd > 24 {
            return Ok(());
        }
        compared.set(compared.get() + 1);
        let diag = snf_of(&m);
        for (k, count) in brute_torsion_counts(&m, dd) {
            let predicted: u64 = diag
                .iter()
                .map(|x| num_integer::gcd(k, x.to_i64().unwrap()) as u64)
                .product();
            prop_assert_eq!(predicted, count, "k={} diag={:?}", k, diag);
        }
        Ok(())
    });
    o.expect(res.is_ok(), || {
        format!("Smith form vs coset count: {res:?}")
    });
    let compared = compared.get();
    o.expect(compared >= 50, || {
        format!("only {compared} small matrices compared")
    });

    // localization: antisymmetry under W_c and independence of the point
    let setups: Vec<(RootDatum, Localizer, Vec<Vec<usize>>)> = [
        ("C2", 2),
        ("G2", 2),
        ("G2", 3),
        ("D4", 4),
        ("F4", 8),
        ("E6", 9),
    ]
    .iter()
    .map(|&(t, m)| {
        let d = by_name(t);
        let s = Slope::new(1, m).unwrap();
        let loc = Localizer::new(&d, &s).unwrap();
        let nc = loc.fiber_dim();
        let mut fibers: Vec<Vec<usize>> = affine::enumerate_positive_region(&d, &s, 3)
            .iter()
            .map(|a| localize::bundle_at(&d, &s, a))
            .filter(|r| r.len() <= nc)
            .collect();
        fibers.sort();
        fibers.dedup();
        (d, loc, fibers)
    })
    .collect();
    let res = runner(100).run(
        &(
            0..setups.len(),
            any::<u64>(),
            any::<prop::sample::Index>(),
            any::<prop::sample::Index>(),
        ),
        |(which, seed, ui, fi)| {
            let (d, loc, fibers) = &setups[which];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let xi = localize::generic_point(d, &mut rng);
            let (perm, det) = &loc.elements()[ui.index(loc.elements().len())];
            let simple: Vec<u8> = (0..d.rank())
                .map(|j| {
                    let e: Vec<i64> = (0..d.rank()).map(|i| (i == j) as i64).collect();
                    perm[d.root_index(&e).unwrap()]
                })
                .collect();
            let u = WeylElt::from_key(d, weylgrp::pack_key(&simple));
            let base = loc.antisymmetrize(d, &loc.base_bundle, &xi);
            let moved = localize::antisymmetrized_at_translate(d, loc, &loc.base_bundle, &u, &xi);
            prop_assert_eq!(moved, base * BigInt::from(*det));
            let roots = &fibers[fi.index(fibers.len())];
            chi_point_independent(d, loc, roots, &mut rng).map_err(TestCaseError::fail)?;
            Ok(())
        },
    );
    o.expect(res.is_ok(), || format!("localization properties: {res:?}"));

    // root-datum identities for every supported type
    for (l, n) in supported_types() {
        let d = build(l, n);
        let h = coxeter_h(l, n) as usize;
        let ex = exponents_table(l, n);
        let ok_counts = d.num_roots() == n * h
            && d.num_positive() == ex.iter().map(|&e| e as usize).sum::<usize>()
            && d.weyl_order() == ex.iter().map(|&e| e as u64 + 1).product::<u64>()
            && d.height(d.highest_root()) == h as i64 - 1
            && d.cartan_det() == center_table(l, n);
        o.expect(ok_counts, || {
            format!("{}: counting identities fail", d.name())
        });
        let rho = d.rho_check();
        for r in 0..d.num_roots() {
            let closed = (0..n).all(|i| d.reflect_simple(i, d.reflect_simple(i, r)) == r);
            let height = d.eval_root(r, &rho) == d.height(r);
            let neg = d.neg(d.neg(r)) == r && d.is_positive(r) != d.is_positive(d.neg(r));
            let self_pair = d.pairing(r, r) == 2;
            if !(closed && height && neg && self_pair) {
                o.failures
                    .push(format!("{}: root {r} violates an identity", d.name()));
                break;
            }
        }
    }
    o.summary =
        "Smith form 500 + coset oracle, localization 100 draws, root data for all types".into();
    o
}

fn main() {
    let g = golden::load();
    let criteria: Vec<(&str, fn(&Golden) -> Outcome)> = vec![
        ("elliptic numbers", criterion_1),
        ("representative words", criterion_2),
        ("centralizer orders", criterion_3),
        ("torsion groups", criterion_4),
        ("orbit counts", criterion_5),
        ("localization identity", criterion_6),
        ("point counts", criterion_7),
        ("Euler totals", criterion_8),
        ("k-scaling", criterion_9),
        ("clans and length inequality", criterion_10),
        ("exponent fact", criterion_11),
        ("module relations", criterion_12),
        ("property suites", criterion_13),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(|| f(&g))).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome {
                failures: vec![format!("panicked: {msg}")],
                ..Outcome::default()
            }
        });
        let pass = out.failures.is_empty();
        failed += !pass as usize;
        println!(
            "criterion {:>2} {} {title} ({:.1}s): {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            out.summary
        );
        for line in &out.info {
            println!("    info: {line}");
        }
        for line in &out.failures {
            println!("    fail: {line}");
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 13 criteria pass");
}
