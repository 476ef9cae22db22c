//! Unary Bin Packing gadget: the topology is a disjoint union of `B`
//! cliques of size `c`, one agent per unit of each item. Agents of the same
//! item value each other at `(c - s_i) / (s_i - 1)` and everyone else at
//! `-1`, so an item's agents survive exactly when they share a clique and
//! the clique is filled to capacity — i.e. when the packing exists. The
//! distances are all 1 or unreachable, so any distance factor function works.

use std::collections::BTreeMap;

use crate::dff::DistanceFactorFunction;
use crate::instance::{Assignment, Instance};
use crate::rational::Rational;
use crate::topology::Topology;

use super::{finish, CertificateError, GadgetParams, GeneratedInstance, GeneratorError, UnaryBinPacking};

pub fn gen_unary_bin_packing(
    src: &UnaryBinPacking,
    dff: &DistanceFactorFunction,
) -> Result<GeneratedInstance, GeneratorError> {
    src.validate().map_err(GeneratorError::Precondition)?;
    let capacity = src.capacity as usize;
    let vertex_count = src.bins * capacity;

    let mut edges = Vec::new();
    for bin in 0..src.bins {
        let base = bin * capacity;
        for u in 0..capacity {
            for v in u + 1..capacity {
                edges.push((base + u, base + v));
            }
        }
    }
    let topology = Topology::new(vertex_count, edges).expect("clique union is a valid topology");

    // Agent order is item-major: item i contributes agents a{i+1}_1 ...
    // a{i+1}_{s_i}.
    let mut names = Vec::with_capacity(vertex_count);
    let mut item_of_agent = Vec::with_capacity(vertex_count);
    for (i, &size) in src.items.iter().enumerate() {
        for j in 0..size {
            names.push(format!("a{}_{}", i + 1, j + 1));
            item_of_agent.push(i);
        }
    }

    let same_item: Vec<Rational> = src
        .items
        .iter()
        .map(|&s| {
            Rational::from_integer(src.capacity as i64 - s as i64)
                / Rational::from_integer(s as i64 - 1)
        })
        .collect();
    let minus_one = Rational::from_integer(-1);

    let agent_count = names.len();
    let mut utilities = vec![vec![Rational::zero(); agent_count]; agent_count];
    for a in 0..agent_count {
        for b in 0..agent_count {
            if a == b {
                continue;
            }
            utilities[a][b] = if item_of_agent[a] == item_of_agent[b] {
                same_item[item_of_agent[a]].clone()
            } else {
                minus_one.clone()
            };
        }
    }

    let instance = Instance::new(topology, names, utilities, dff.clone())
        .expect("matrix is square by construction");
    let metadata = BTreeMap::from([
        ("items".to_string(), join(&src.items)),
        ("bins".to_string(), src.bins.to_string()),
        ("capacity".to_string(), src.capacity.to_string()),
    ]);
    finish(
        instance,
        super::Gadget::UnaryBinPacking,
        metadata,
        GadgetParams::UnaryBinPacking {
            items: src.items.clone(),
            bins: src.bins,
            capacity: src.capacity,
        },
    )
}

pub(crate) fn join(items: &[u64]) -> String {
    items.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// The forward-direction assignment: each item's agents fill consecutive
/// free vertices of the clique its bin allocation names.
pub(crate) fn certificate_assignment(
    items: &[u64],
    bins: usize,
    capacity: u64,
    allocation: &[usize],
) -> Result<Assignment, CertificateError> {
    if allocation.len() != items.len() {
        return Err(CertificateError::Invalid(format!(
            "allocation covers {} items, source has {}",
            allocation.len(),
            items.len()
        )));
    }
    let mut load = vec![0u64; bins];
    for (i, &bin) in allocation.iter().enumerate() {
        if bin >= bins {
            return Err(CertificateError::Invalid(format!(
                "item {i} allocated to bin {bin}, only {bins} bins exist"
            )));
        }
        load[bin] += items[i];
    }
    if let Some(bad) = load.iter().position(|&l| l != capacity) {
        return Err(CertificateError::Invalid(format!(
            "bin {bad} holds {} units, capacity is {capacity}",
            load[bad]
        )));
    }

    let capacity = capacity as usize;
    let mut next_free: Vec<usize> = (0..bins).map(|b| b * capacity).collect();
    let mut placement = Vec::with_capacity(items.len());
    for (i, &size) in items.iter().enumerate() {
        let bin = allocation[i];
        for _ in 0..size {
            placement.push(next_free[bin]);
            next_free[bin] += 1;
        }
    }
    Ok(Assignment::new(placement))
}
