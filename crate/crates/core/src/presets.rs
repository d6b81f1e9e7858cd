//! Named generator sets and the fixed subgroup-class listing orders.
//!
//! The `U(V)` material is specific to `d = 3`: `A` and `B` are the two
//! displayed transvections generating the upper unitriangular group, `C`
//! is their commutator spanning the centre, and the order-p^2 subgroups are
//! `<A,C>`, `<AB^j,C>` and `<B,C>`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::{GroupData, Subgroup, SubgroupClass, DEFAULT_LATTICE_BOUND};
use crate::matrix::FpMatrix;

fn elementary(field: &Arc<Field>, d: usize, i: usize, j: usize) -> FpMatrix {
    FpMatrix::from_fn(field.clone(), d, d, |r, c| {
        u8::from(r == c) + u8::from((r, c) == (i, j))
    })
}

fn diagonal_with(field: &Arc<Field>, d: usize, pos: usize, v: u8) -> FpMatrix {
    FpMatrix::from_fn(field.clone(), d, d, |r, c| {
        if r != c {
            0
        } else if r == pos {
            v
        } else {
            1
        }
    })
}

fn cycle_permutation(field: &Arc<Field>, d: usize) -> FpMatrix {
    FpMatrix::from_fn(field.clone(), d, d, |r, c| u8::from(c == (r + 1) % d))
}

/// Companion matrix (superdiagonal ones, coefficients along the last row)
/// of the lexicographically smallest primitive polynomial of degree `q`
/// over F_2.  Primitivity is certified by the matrix order itself.
pub fn singer_element(field: &Arc<Field>, q: usize) -> Result<FpMatrix> {
    if field.characteristic() != 2 || !field.is_prime_field() {
        return Err(Error::PresetUnavailable("gq".into(), field.characteristic(), q as u32));
    }
    let target = (1usize << q) - 1;
    for mask in 0..(1u32 << (q - 1)) {
        // constant coefficient fixed at 1; remaining low-first from the mask
        let mut coeffs = vec![1u8];
        for b in 0..q - 1 {
            coeffs.push(((mask >> b) & 1) as u8);
        }
        let m = FpMatrix::from_fn(field.clone(), q, q, |r, c| {
            if r + 1 == q {
                coeffs[c]
            } else {
                u8::from(c == r + 1)
            }
        });
        if m.order(target + 1)? == target {
            return Ok(m);
        }
    }
    Err(Error::InvalidParameter(format!("no primitive polynomial of degree {q} found")))
}

/// Block-diagonal element made of copies of the order-3 companion block,
/// padded by a final 1 when `d` is odd.
pub fn split_singer_element(field: &Arc<Field>, d: usize) -> Result<FpMatrix> {
    if field.characteristic() != 2 || d < 2 {
        return Err(Error::PresetUnavailable("gprime".into(), field.characteristic(), d as u32));
    }
    let block = [[0u8, 1], [1, 1]];
    Ok(FpMatrix::from_fn(field.clone(), d, d, |r, c| {
        let (br, bc) = (r / 2, c / 2);
        if r == c && r + 1 == d && d % 2 == 1 {
            1
        } else if br == bc && r / 2 < d / 2 {
            block[r % 2][c % 2]
        } else {
            0
        }
    }))
}

/// The named 3x3 unitriangular elements: "A", "B", "C", "AB", "AB^j".
pub fn uv_named_element(field: &Arc<Field>, label: &str) -> Result<FpMatrix> {
    let d = 3;
    let a = elementary(field, d, 0, 1);
    let b = elementary(field, d, 1, 2);
    match label {
        "A" => Ok(a),
        "B" => Ok(b),
        "C" => {
            // commutator A B A^-1 B^-1, the single off-corner transvection
            let c = a
                .mul(&b)?
                .mul(&a.inverse()?)?
                .mul(&b.inverse()?)?;
            Ok(c)
        }
        "AB" => a.mul(&b),
        _ => {
            if let Some(j) = label.strip_prefix("AB^").and_then(|s| s.parse::<u32>().ok()) {
                a.mul(&b.pow(j as u64)?)
            } else {
                Err(Error::UnknownPreset(label.to_string()))
            }
        }
    }
}

/// Generator matrices for a preset label.
///
/// Group labels: `UV`, `D`, `gq`, `gprime`, `SL2F3`, `GL2F2`, `GL`, `SL`,
/// plus the subgroups of the d = 3 unitriangular group: `A`, `B`, `C`, `AB`,
/// `AC`, `ABC:<j>`, `BC`.  `1` names the trivial group.
pub fn preset_generators(field: &Arc<Field>, d: usize, label: &str) -> Result<Vec<FpMatrix>> {
    let p = field.characteristic();
    let unavailable = || Error::PresetUnavailable(label.to_string(), p, d as u32);
    match label {
        "1" => Ok(vec![]),
        "UV" => Ok((0..d.saturating_sub(1)).map(|i| elementary(field, d, i, i + 1)).collect()),
        "D" => {
            if p == 2 {
                Ok(vec![])
            } else {
                let gamma = field.multiplicative_generator();
                Ok((0..d).map(|i| diagonal_with(field, d, i, gamma)).collect())
            }
        }
        "gq" => Ok(vec![singer_element(field, d)?]),
        "gprime" => Ok(vec![split_singer_element(field, d)?]),
        "SL2F3" => {
            if p != 3 || d != 2 {
                return Err(unavailable());
            }
            Ok(vec![
                FpMatrix::from_rows(field.clone(), &[vec![1, 1], vec![0, 1]])?,
                FpMatrix::from_rows(field.clone(), &[vec![0, -1], vec![1, 0]])?,
            ])
        }
        "GL2F2" => {
            if p != 2 || d != 2 {
                return Err(unavailable());
            }
            Ok(vec![
                FpMatrix::from_rows(field.clone(), &[vec![0, 1], vec![1, 1]])?,
                FpMatrix::from_rows(field.clone(), &[vec![0, 1], vec![1, 0]])?,
            ])
        }
        "GL" => {
            let mut gens = Vec::new();
            if d >= 2 {
                gens.push(elementary(field, d, 0, 1));
                gens.push(cycle_permutation(field, d));
            }
            if p > 2 {
                gens.push(diagonal_with(field, d, 0, field.multiplicative_generator()));
            }
            Ok(gens)
        }
        "SL" => {
            let mut gens = Vec::new();
            for i in 0..d {
                if d >= 2 {
                    gens.push(elementary(field, d, i, (i + 1) % d));
                }
            }
            Ok(gens)
        }
        "A" | "B" | "C" | "AB" => {
            if d != 3 {
                return Err(unavailable());
            }
            Ok(vec![uv_named_element(field, label)?])
        }
        "AC" => {
            if d != 3 {
                return Err(unavailable());
            }
            Ok(vec![uv_named_element(field, "A")?, uv_named_element(field, "C")?])
        }
        "BC" => {
            if d != 3 {
                return Err(unavailable());
            }
            Ok(vec![uv_named_element(field, "B")?, uv_named_element(field, "C")?])
        }
        _ => {
            if let Some(j) = label.strip_prefix("ABC:").and_then(|s| s.parse::<u32>().ok()) {
                if d != 3 {
                    return Err(unavailable());
                }
                Ok(vec![
                    uv_named_element(field, &format!("AB^{j}"))?,
                    uv_named_element(field, "C")?,
                ])
            } else {
                Err(Error::UnknownPreset(label.to_string()))
            }
        }
    }
}

/// The published listing order for the subgroup classes of the d = 3
/// unitriangular group: labels plus generating element names.
pub fn uv_class_plan(p: u32) -> Vec<(String, Vec<String>)> {
    let s = |x: &str| x.to_string();
    if p == 2 {
        vec![
            (s("1"), vec![]),
            (s("<A>"), vec![s("A")]),
            (s("<B>"), vec![s("B")]),
            (s("<C>"), vec![s("C")]),
            (s("<AB>"), vec![s("AB")]),
            (s("<A,C>"), vec![s("A"), s("C")]),
            (s("<B,C>"), vec![s("B"), s("C")]),
            (s("UV"), vec![s("A"), s("B")]),
        ]
    } else {
        let mut plan = vec![(s("1"), vec![]), (s("<A>"), vec![s("A")])];
        for j in 1..p {
            plan.push((format!("<AB^{j}>"), vec![format!("AB^{j}")]));
        }
        plan.push((s("<B>"), vec![s("B")]));
        plan.push((s("<C>"), vec![s("C")]));
        plan.push((s("<A,C>"), vec![s("A"), s("C")]));
        for j in 1..p {
            plan.push((format!("<AB^{j},C>"), vec![format!("AB^{j}"), s("C")]));
        }
        plan.push((s("<B,C>"), vec![s("B"), s("C")]));
        plan.push((s("UV"), vec![s("A"), s("B")]));
        plan
    }
}

/// Conjugacy classes of subgroups of a closed d = 3 unitriangular group,
/// in the published order.  Checks that the named subgroups exhaust the
/// classes and that the listing has non-decreasing subgroup orders.
pub fn uv_ordered_classes(group: &GroupData) -> Result<Vec<SubgroupClass>> {
    let p = group.field().characteristic();
    let lattice = group.subgroup_lattice(DEFAULT_LATTICE_BOUND)?;
    let classes = group.subgroup_conjugacy_classes(&lattice);
    let class_of_members = |members: &[usize]| -> Option<usize> {
        classes.iter().position(|c| c.iter().any(|&i| lattice[i].members == members))
    };
    let mut out = Vec::new();
    let mut used = vec![false; classes.len()];
    for (label, gen_labels) in uv_class_plan(p) {
        let mut gens = Vec::new();
        for gl in &gen_labels {
            let m = uv_named_element(group.field(), gl)?;
            gens.push(group.find(&m).ok_or(Error::NotASubgroup)?);
        }
        let members = group.subgroup_closure(&gens);
        let ci = class_of_members(&members).ok_or(Error::NotASubgroup)?;
        if used[ci] {
            return Err(Error::InvalidParameter(format!(
                "named subgroup {label} repeats a class"
            )));
        }
        used[ci] = true;
        out.push(SubgroupClass {
            label,
            rep: Subgroup { members, gens, label: None },
            class_size: classes[ci].len(),
        });
    }
    if used.iter().any(|&u| !u) {
        return Err(Error::InvalidParameter(
            "named subgroups do not exhaust the classes".into(),
        ));
    }
    for w in out.windows(2) {
        if w[0].rep.order() > w[1].rep.order() {
            return Err(Error::UnorderedClasses);
        }
    }
    Ok(out)
}

/// Members of the stabilizer `H(W_i)` inside a closed general linear group:
/// the elements `g` with `vg - v` in the span of the first `i` coordinates
/// for every `v`.
pub fn flag_stabilizer_members(group: &GroupData, i: usize) -> Vec<usize> {
    let d = group.dimension();
    (0..group.order())
        .filter(|&e| {
            let m = group.element(e);
            (0..d).all(|r| (i..d).all(|c| m.get(r, c) == u8::from(r == c)))
        })
        .collect()
}
