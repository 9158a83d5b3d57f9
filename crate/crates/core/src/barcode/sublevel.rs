//! Standard column reduction of the total boundary matrix.

use std::collections::HashMap;

use super::Bar;
use crate::complex::{FilteredComplex, Generator};
use crate::gf2::{BitMatrix, BitVec};

/// Bars of every degree, sorted by degree then birth.
///
/// Generators are ordered by `(filtration, degree, name)`. A pair whose
/// endpoints share a filtration value gives an empty interval and is dropped.
pub fn sublevel_barcode(c: &FilteredComplex) -> Vec<Bar> {
    let mut order: Vec<&Generator> = c.all_generators().collect();
    order.sort_by(|x, y| {
        x.filtration
            .total_cmp(&y.filtration)
            .then(x.degree.cmp(&y.degree))
            .then_with(|| x.name.cmp(&y.name))
    });
    let n = order.len();
    let rank_of: HashMap<(i32, &str), usize> = order
        .iter()
        .enumerate()
        .map(|(i, g)| ((g.degree, g.name.as_str()), i))
        .collect();
    // Local index -> position in the total order, per degree.
    let global: HashMap<i32, Vec<usize>> = c
        .degrees()
        .map(|k| {
            let pos = c
                .generators(k)
                .iter()
                .map(|g| rank_of[&(k, g.name.as_str())])
                .collect();
            (k, pos)
        })
        .collect();

    let boundaries: HashMap<i32, BitMatrix> = c.degrees().map(|k| (k, c.boundary(k))).collect();
    let mut columns: Vec<BitVec> = Vec::with_capacity(n);
    for g in &order {
        let local = c
            .generator_index(g.degree, &g.name)
            .expect("generator exists");
        let d = &boundaries[&g.degree];
        let rows = global.get(&(g.degree - 1));
        let col = match rows {
            Some(rows) => BitVec::from_indices(n, d.column(local).ones().map(|i| rows[i])),
            None => BitVec::zeros(n),
        };
        columns.push(col);
    }

    let mut owner_of_low: Vec<Option<usize>> = vec![None; n];
    let mut killed_by: Vec<Option<usize>> = vec![None; n];
    for j in 0..n {
        while let Some(low) = columns[j].highest_one() {
            match owner_of_low[low] {
                Some(i) => {
                    let other = columns[i].clone();
                    columns[j].xor_assign(&other);
                }
                None => {
                    owner_of_low[low] = Some(j);
                    killed_by[low] = Some(j);
                    break;
                }
            }
        }
    }

    let mut bars = Vec::new();
    for (i, g) in order.iter().enumerate() {
        if !columns[i].is_zero() {
            continue; // i kills a class; it does not create one
        }
        match killed_by[i] {
            Some(j) => {
                let killer = order[j];
                if killer.filtration > g.filtration {
                    bars.push(Bar {
                        degree: g.degree,
                        birth: g.filtration,
                        death: killer.filtration,
                        birth_generator: g.name.clone(),
                        death_generator: Some(killer.name.clone()),
                    });
                }
            }
            None => bars.push(Bar {
                degree: g.degree,
                birth: g.filtration,
                death: f64::INFINITY,
                birth_generator: g.name.clone(),
                death_generator: None,
            }),
        }
    }
    bars.sort_by(|x, y| {
        x.degree
            .cmp(&y.degree)
            .then(x.birth.total_cmp(&y.birth))
            .then(x.death.total_cmp(&y.death))
            .then_with(|| x.birth_generator.cmp(&y.birth_generator))
    });
    bars
}
