//! Equitable Partition gadgets, one per hardness construction:
//!
//! * `Bipartite` — complete bipartite topology `K_{n,n}` plus one apex per
//!   side; two mutually hostile guards must occupy the apexes at distance 3
//!   and are appeased exactly when each side of the partition sums to `k`.
//! * `Instar` — a hub vertex `B` flanked by two fans of `n` vertices and
//!   their heads `H_1`, `H_2`; both heads despise the agent pinned to the
//!   hub, and the elements must split evenly between the fans.
//! * `Path` — a path on `2n+4` vertices with a purpose-built distance
//!   factor table of the form `2^{3l}-d / 2^{2l} / 2^l-d / 1`; three
//!   grumpy agents all despise the trouble-maker at the far end.
//!
//! The bipartite guard utility uses `f(3)` in the denominator (the guards
//! sit at distance 3), which is what makes the zero-sum bookkeeping of the
//! construction come out exactly. The in-star head-to-hub utility is
//! emitted negative, matching the enmity arcs pointing at the hub agent.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::dff::DistanceFactorFunction;
use crate::instance::{Assignment, Instance};
use crate::rational::Rational;
use crate::topology::{Distance, Topology};

use super::unary_bin_packing::join;
use super::{
    finish, CertificateError, EquitablePartition, Gadget, GadgetParams, GeneratedInstance,
    GeneratorError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquitableVariant {
    Bipartite,
    Instar,
    Path,
}

impl EquitableVariant {
    pub fn tag(self) -> &'static str {
        match self {
            EquitableVariant::Bipartite => "bipartite",
            EquitableVariant::Instar => "instar",
            EquitableVariant::Path => "path",
        }
    }
}

/// Generates the chosen Equitable Partition gadget. The bipartite and path
/// variants refuse inputs violating the strict preconditions their
/// no-direction correctness needs, unless `waive` is set; waived instances
/// carry an `equivalence-not-guaranteed` metadata flag. The path variant
/// ignores the caller's distance factor function and emits its own table;
/// the other two default to the reciprocal function when none is given.
pub fn gen_equitable_partition(
    src: &EquitablePartition,
    variant: EquitableVariant,
    dff: Option<&DistanceFactorFunction>,
    waive: bool,
) -> Result<GeneratedInstance, GeneratorError> {
    src.validate().map_err(GeneratorError::Precondition)?;
    let mut waived = false;
    if matches!(variant, EquitableVariant::Bipartite | EquitableVariant::Path) {
        if let Err(reason) = src.strict_preconditions() {
            if waive {
                waived = true;
            } else {
                return Err(GeneratorError::Precondition(format!(
                    "strict preconditions violated ({reason}); pass the waiver to generate anyway"
                )));
            }
        }
    }
    if let EquitableVariant::Path = variant {
        if let Err(reason) = path_preconditions(src) {
            if waive {
                waived = true;
            } else {
                return Err(GeneratorError::Precondition(format!(
                    "{reason}; pass the waiver to generate anyway"
                )));
            }
        }
    }

    let default_dff = DistanceFactorFunction::Reciprocal;
    let dff = dff.unwrap_or(&default_dff);
    let mut gen = match variant {
        EquitableVariant::Bipartite => bipartite(src, dff)?,
        EquitableVariant::Instar => instar(src, dff)?,
        EquitableVariant::Path => path(src)?,
    };
    if waived {
        gen.metadata.insert("equivalence-not-guaranteed".to_string(), "true".to_string());
    }
    Ok(gen)
}

fn path_preconditions(src: &EquitablePartition) -> Result<(), String> {
    let n = src.n() as u128;
    let k = src.half_sum();
    if n < 10 {
        return Err(format!("path gadget requires n >= 10, got n = {n}"));
    }
    if k < n * n * n {
        return Err(format!("path gadget requires k >= n^3 = {}, got k = {k}", n * n * n));
    }
    Ok(())
}

fn factor_at(dff: &DistanceFactorFunction, d: usize) -> Result<Rational, GeneratorError> {
    dff.eval(Distance::Finite(d)).map_err(|e| {
        GeneratorError::Precondition(format!("distance factor function unusable: {e}"))
    })
}

fn big(value: u128) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

fn base_metadata(src: &EquitablePartition) -> BTreeMap<String, String> {
    BTreeMap::from([
        ("items".to_string(), join(&src.items)),
        ("n".to_string(), src.n().to_string()),
        ("k".to_string(), src.half_sum().to_string()),
    ])
}

/// `K_{n,n}` plus apexes: L = 0..n, R = n..2n, v_l = 2n, v_r = 2n+1.
/// Agents: elements a1..a{2n} = 0..2n, guards g1 = 2n, g2 = 2n+1.
fn bipartite(
    src: &EquitablePartition,
    dff: &DistanceFactorFunction,
) -> Result<GeneratedInstance, GeneratorError> {
    let n = src.n();
    let k = big(src.half_sum());
    let f1 = factor_at(dff, 1)?;
    let f2 = factor_at(dff, 2)?;
    let f3 = factor_at(dff, 3)?;

    let mut edges = Vec::new();
    for left in 0..n {
        for right in n..2 * n {
            edges.push((left, right));
        }
    }
    for left in 0..n {
        edges.push((left, 2 * n));
    }
    for right in n..2 * n {
        edges.push((right, 2 * n + 1));
    }
    let topology = Topology::new(2 * n + 2, edges).expect("bipartite gadget topology");

    let mut names: Vec<String> = (0..2 * n).map(|j| format!("a{}", j + 1)).collect();
    names.push("g1".to_string());
    names.push("g2".to_string());

    let agent_count = 2 * n + 2;
    let (g1, g2) = (2 * n, 2 * n + 1);
    let mut utilities = vec![vec![Rational::zero(); agent_count]; agent_count];
    for (j, &s) in src.items.iter().enumerate() {
        let value = big(u128::from(s)) / &f1;
        for g in [g1, g2] {
            utilities[g][j] = value.clone();
            utilities[j][g] = value.clone();
        }
    }
    let hostility = -(&k + &(&(&f2 / &f1) * &k)) / &f3;
    utilities[g1][g2] = hostility.clone();
    utilities[g2][g1] = hostility;

    let instance = Instance::new(topology, names, utilities, dff.clone())
        .expect("matrix is square by construction");
    finish(
        instance,
        Gadget::EquitableBipartite,
        base_metadata(src),
        GadgetParams::Equitable { items: src.items.clone(), variant: EquitableVariant::Bipartite },
    )
}

/// Fans and hub: left fan 0..n, right fan n..2n, B = 2n, H1 = 2n+1,
/// H2 = 2n+2. Agents: a1..a{2n} = 0..2n, h1 = 2n, h2 = 2n+1, b = 2n+2.
fn instar(
    src: &EquitablePartition,
    dff: &DistanceFactorFunction,
) -> Result<GeneratedInstance, GeneratorError> {
    let n = src.n();
    let k = big(src.half_sum());
    let f1 = factor_at(dff, 1)?;
    let f2 = factor_at(dff, 2)?;

    let hub = 2 * n;
    let (head1, head2) = (2 * n + 1, 2 * n + 2);
    let mut edges = Vec::new();
    for middle in 0..n {
        edges.push((middle, hub));
        edges.push((middle, head1));
    }
    for middle in n..2 * n {
        edges.push((middle, hub));
        edges.push((middle, head2));
    }
    edges.push((head1, head2));
    let topology = Topology::new(2 * n + 3, edges).expect("in-star gadget topology");

    let mut names: Vec<String> = (0..2 * n).map(|j| format!("a{}", j + 1)).collect();
    names.extend(["h1".to_string(), "h2".to_string(), "b".to_string()]);

    let agent_count = 2 * n + 3;
    let (h1, h2, b) = (2 * n, 2 * n + 1, 2 * n + 2);
    let mut utilities = vec![vec![Rational::zero(); agent_count]; agent_count];
    for (j, &s) in src.items.iter().enumerate() {
        utilities[h1][j] = big(u128::from(s));
        utilities[h2][j] = big(u128::from(s));
    }
    let hostility = -(&(&(&f1 + &f2) / &f2) * &k);
    utilities[h1][b] = hostility.clone();
    utilities[h2][b] = hostility;

    let instance = Instance::new(topology, names, utilities, dff.clone())
        .expect("matrix is square by construction");
    finish(
        instance,
        Gadget::EquitableInstar,
        base_metadata(src),
        GadgetParams::Equitable { items: src.items.clone(), variant: EquitableVariant::Instar },
    )
}

/// Path on `2n+4` vertices in id order. Agents: t = 0, g1 = 1, g2 = 2,
/// g3 = 3, elements a1..a{2n} = 4..2n+4. Emits its own distance factor
/// table built from the unique `l` with `2k^3 >= 2^l > k^3`.
fn path(src: &EquitablePartition) -> Result<GeneratedInstance, GeneratorError> {
    let n = src.n();
    let k = BigInt::from(src.half_sum());
    let k_cubed = &k * &k * &k;
    let ell = k_cubed.bits();

    let pow = |e: u64| -> BigInt { BigInt::from(1) << e };
    let two_3l = pow(3 * ell);
    let two_2l = pow(2 * ell);
    let two_l = pow(ell);

    // f(d): 2^{3l}-d on [1, n], 2^{2l} at n+1, 2^l-d on [n+2, 2n+2], 1 at 2n+3.
    let mut values = Vec::with_capacity(2 * n + 3);
    for d in 1..=n {
        values.push(Rational::from_integer(&two_3l - BigInt::from(d)));
    }
    values.push(Rational::from_integer(two_2l.clone()));
    for d in n + 2..=2 * n + 2 {
        values.push(Rational::from_integer(&two_l - BigInt::from(d)));
    }
    values.push(Rational::one());
    let dff = DistanceFactorFunction::Table(values.clone());

    let topology = Topology::path(2 * n + 4);
    let mut names = vec!["t".to_string(), "g1".to_string(), "g2".to_string(), "g3".to_string()];
    names.extend((0..2 * n).map(|j| format!("a{}", j + 1)));

    let agent_count = 2 * n + 4;
    let trouble = 0usize;
    let grumpy = [1usize, 2, 3];
    let mut utilities = vec![vec![Rational::zero(); agent_count]; agent_count];
    for (j, &s) in src.items.iter().enumerate() {
        for g in grumpy {
            utilities[g][4 + j] = big(u128::from(s));
        }
    }
    let two_nk = BigInt::from(2 * n as u128) * &k;
    let near_burden = &two_3l * &k - &two_nk; // 2^{3l} k - 2nk
    let far_burden = &two_3l * BigInt::from(2) * &k - &two_nk; // 2^{3l} 2k - 2nk
    utilities[grumpy[0]][trouble] =
        Rational::from_integer(-&near_burden) / &values[0]; // / f(1)
    utilities[grumpy[1]][trouble] =
        Rational::from_integer(-&far_burden) / &values[n]; // / f(n+1)
    utilities[grumpy[2]][trouble] =
        Rational::from_integer(-&near_burden) / &values[2 * n + 2]; // / f(2n+3) = 1

    let instance = Instance::new(topology, names, utilities, dff)
        .expect("matrix is square by construction");
    let mut metadata = base_metadata(src);
    metadata.insert("ell".to_string(), ell.to_string());
    finish(
        instance,
        Gadget::EquitablePath,
        metadata,
        GadgetParams::Equitable { items: src.items.clone(), variant: EquitableVariant::Path },
    )
}

/// The forward-direction assignment for each variant, from the index
/// set `I` of one side of the partition.
pub(crate) fn certificate_assignment(
    items: &[u64],
    variant: EquitableVariant,
    side: &[usize],
) -> Result<Assignment, CertificateError> {
    let n = items.len() / 2;
    if side.len() != n {
        return Err(CertificateError::Invalid(format!(
            "side has {} indices, expected n = {n}",
            side.len()
        )));
    }
    let mut chosen = vec![false; items.len()];
    for &i in side {
        if i >= items.len() {
            return Err(CertificateError::Invalid(format!("item index {i} out of range")));
        }
        if chosen[i] {
            return Err(CertificateError::Invalid(format!("item index {i} repeated")));
        }
        chosen[i] = true;
    }
    let target: u128 = items.iter().map(|&s| u128::from(s)).sum::<u128>() / 2;
    let sum: u128 = side.iter().map(|&i| u128::from(items[i])).sum();
    if sum != target {
        return Err(CertificateError::Invalid(format!(
            "side sums to {sum}, expected k = {target}"
        )));
    }

    // Element agent j goes to the next free slot on its side, both sides
    // filled in increasing item index order.
    let mut placement = vec![usize::MAX; items.len()];
    let (mut next_in, mut next_out) = (0usize, 0usize);
    let element_vertex = |in_side: bool, slot: usize| -> usize {
        match variant {
            // Sides L = 0..n and R = n..2n in both gadget layouts.
            EquitableVariant::Bipartite | EquitableVariant::Instar => {
                if in_side { slot } else { n + slot }
            }
            // v_3..v_{n+2} are ids 2..n+2; v_{n+4}..v_{2n+3} are ids n+3..2n+3.
            EquitableVariant::Path => {
                if in_side { 2 + slot } else { n + 3 + slot }
            }
        }
    };
    for (j, placed) in chosen.iter().enumerate() {
        if *placed {
            placement[j] = element_vertex(true, next_in);
            next_in += 1;
        } else {
            placement[j] = element_vertex(false, next_out);
            next_out += 1;
        }
    }

    let placement = match variant {
        EquitableVariant::Bipartite => {
            // g1 -> v_l, g2 -> v_r.
            placement.extend_from_slice(&[2 * n, 2 * n + 1]);
            placement
        }
        EquitableVariant::Instar => {
            // h1 -> H1, h2 -> H2, b -> B.
            placement.extend_from_slice(&[2 * n + 1, 2 * n + 2, 2 * n]);
            placement
        }
        EquitableVariant::Path => {
            // t -> v_1, g1 -> v_2, g2 -> v_{n+3}, g3 -> v_{2n+4}.
            let mut full = vec![0, 1, n + 2, 2 * n + 3];
            full.extend(placement);
            full
        }
    };
    Ok(Assignment::new(placement))
}
