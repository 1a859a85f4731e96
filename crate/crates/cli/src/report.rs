//! JSON documents for each subcommand.

use ellreg_core::affine::{self, Alcove, Slope};
use ellreg_core::dahacheck::{verify_module, AffinePresentation, ModuleData};
use ellreg_core::linalg::IMat;
use ellreg_core::localize::{self, ChiReport};
use ellreg_core::torsion::{self, LatticeAction};
use ellreg_core::weylgrp::{self, RepSource};
use ellreg_core::RootDatum;
use serde_json::{json, Value};

use crate::{CliError, BASE_RADIUS, DEEP_CLASS_LIMIT, MAX_RADIUS};

fn digits(word: &[usize]) -> String {
    word.iter().map(|i| i.to_string()).collect()
}

fn source_json(src: &RepSource) -> Value {
    match src {
        RepSource::SeedPower { word, exponent } => {
            json!({"kind": "seed-power", "word": digits(word), "exponent": exponent})
        }
        RepSource::Random {
            seed,
            tries,
            exponent,
        } => {
            json!({"kind": "random", "seed": seed, "tries": tries, "exponent": exponent})
        }
    }
}

/// `|W₀| / ∏_{I_m} d_i`, the size of the class of an elliptic regular element.
pub fn class_size_estimate(d: &RootDatum, m: u32) -> u64 {
    d.weyl_order() / d.degree_product(m)
}

/// Whether the centralizer of order-`m` elements is computed without `--deep`.
pub fn centralizer_is_cheap(d: &RootDatum, m: u32) -> bool {
    class_size_estimate(d, m) <= DEEP_CLASS_LIMIT
}

/// Elliptic numbers and, per `m`, centralizer, torsion and orbit data.
pub fn classify(
    d: &RootDatum,
    seed: u64,
    deep: bool,
    progress: &mut dyn FnMut(&str),
) -> Result<Value, CliError> {
    let en = weylgrp::elliptic_numbers(d, seed);
    let mut rows = Vec::new();
    for &m in &en.constructive {
        let rep = weylgrp::elliptic_rep(d, m, seed)?;
        let regular_indices = d.regular_indices(m);
        let mut row = json!({
            "m": m,
            "regular_indices": regular_indices,
            "regular_degrees": regular_indices.iter().map(|&i| d.degrees()[i - 1]).collect::<Vec<_>>(),
            "degree_product": d.degree_product(m),
            "representative": digits(&rep.elt.reduced_word(d)),
            "source": source_json(&rep.source),
            "torsion_group": torsion::torsion_group(d, &rep.elt)?.invariant_factors(),
        });
        let reduced_torsion = torsion::reduced_torsion_group(d, &rep.elt)?;
        row["reduced_torsion"] = json!(reduced_torsion.invariant_factors());
        row["reduced_torsion_order"] = json!(reduced_torsion.order());
        if deep || centralizer_is_cheap(d, m) {
            if deep {
                progress(&format!("{} m={m}: centralizer", d.name()));
            }
            let (z, stats) = weylgrp::centralizer(d, &rep.elt, m)?;
            let mats: Vec<IMat> = z
                .generators
                .iter()
                .map(|g| g.root_matrix().clone())
                .collect();
            let orbits = LatticeAction::new(&reduced_torsion, &mats)?.orbit_sizes(&reduced_torsion);
            row["centralizer_order"] = json!(z.order);
            row["class_size"] = json!(stats.class_size);
            row["spherical_factors"] = json!(orbits.len());
            row["orbit_sizes"] = json!(orbits);
            row["spherical_factors_conditional"] = json!("point-count conjecture");
        } else {
            row["deferred"] = json!(format!(
                "class of size {} exceeds {DEEP_CLASS_LIMIT}; rerun with --deep",
                class_size_estimate(d, m)
            ));
        }
        rows.push(row);
    }
    Ok(json!({
        "type": d.name(),
        "degrees": d.degrees(),
        "coxeter_number": d.coxeter_number(),
        "weyl_order": d.weyl_order(),
        "elliptic_numbers": en.constructive,
        "exhaustive": en.exhaustive,
        "complete": en.complete(),
        "rows": rows,
    }))
}

pub fn euler_identity(d: &RootDatum, s: &Slope, seed: u64) -> Result<(bool, Value), CliError> {
    let v = localize::verify_euler_identity(d, s, seed)?;
    let witness = v
        .witness
        .as_ref()
        .map(|(xi, l, r)| json!({"point": xi, "lhs": l.to_string(), "rhs": r.to_string()}));
    Ok((
        v.holds,
        json!({
            "type": d.name(),
            "slope": s.to_string(),
            "holds": v.holds,
            "fiber_dim": v.fiber_dim,
            "reduced_torsion_order": v.reduced_torsion_order,
            "subgroup_type": v.subgroup_type,
            "subgroup_order": v.subgroup_order,
            "points": v.points,
            "witness": witness,
        }),
    ))
}

pub fn clans(d: &RootDatum, s: &Slope, radius: usize) -> Result<Value, CliError> {
    let table = affine::enumerate_clans(d, s, radius)?;
    let clans: Vec<Value> = table
        .clans
        .iter()
        .enumerate()
        .map(|(ci, c)| {
            json!({
                "index": ci,
                "members": table.member_words(ci),
                "bounded": c.bounded,
                "bundle": c.bundle.iter().map(|r| r.display(d)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "type": d.name(),
        "slope": s.to_string(),
        "radius": radius,
        "fiber_dim": affine::fiber_dim(d, s),
        "bundle_roots": table.bundle_roots.iter().map(|r| r.display(d)).collect::<Vec<_>>(),
        "alcoves": table.alcoves.len(),
        "clans": clans,
    }))
}

pub fn chi_json(d: &RootDatum, rep: &ChiReport) -> Value {
    let clans: Vec<Value> = rep
        .nonzero_clans()
        .map(|c| {
            json!({
                "members": c.words,
                "bundle_size": c.bundle_size,
                "bounded": c.bounded,
                "chi": c.chi.to_string(),
            })
        })
        .collect();
    json!({
        "type": d.name(),
        "slope": rep.slope.to_string(),
        "radius": rep.radius,
        "fiber_dim": rep.fiber_dim,
        "alcoves": rep.alcoves,
        "total": rep.total.to_string(),
        "frontier_zero": rep.frontier_zero,
        "nonzero_clans": clans,
    })
}

/// Total χ at `radius`, then at growing radii until the outermost shell contributes zero.
pub fn chi_until_stable(
    d: &RootDatum,
    s: &Slope,
    radius: usize,
    seed: u64,
) -> Result<Vec<ChiReport>, CliError> {
    let mut out = vec![localize::total_chi(d, s, radius, seed)?];
    let mut r = radius.max(BASE_RADIUS);
    while !out.last().expect("nonempty").frontier_zero && r < MAX_RADIUS {
        r += 1;
        out.push(localize::total_chi(d, s, r, seed)?);
    }
    Ok(out)
}

pub fn point_count_json(
    d: &RootDatum,
    s: &Slope,
    word: &str,
    seed: u64,
) -> Result<Value, CliError> {
    let a = Alcove::from_word(d, &affine::parse_affine_word(word)?)?;
    let n = localize::point_count(d, s, &a, seed)?;
    Ok(json!({"word": a.word_string(), "points": n.to_string()}))
}

pub fn checkmod(m: &ModuleData) -> Result<(bool, Value), CliError> {
    let d = RootDatum::build(m.label, m.rank)?;
    let pres = AffinePresentation::new(&d);
    let v = verify_module(&pres, m)?;
    let failures: Vec<&str> = v
        .results
        .iter()
        .filter(|r| !r.holds)
        .map(|r| r.relation.as_str())
        .collect();
    Ok((
        v.passes(),
        json!({
            "type": d.name(),
            "kappa": m.kappa.to_string(),
            "dim": m.dim,
            "relations_checked": v.results.len(),
            "passes": v.passes(),
            "first_failure": v.first_failure().map(|r| r.relation.clone()),
            "failures": failures,
        }),
    ))
}
