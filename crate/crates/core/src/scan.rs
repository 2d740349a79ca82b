//! Data-parallel scans over the elements of a field in enumeration order.
//!
//! Work is split into fixed chunks of consecutive enumeration indices; every
//! result is reported in enumeration order regardless of scheduling.

use rayon::prelude::*;

use crate::field::{Elem, Field};

const CHUNK: u64 = 1 << 12;

fn chunks(total: u64) -> impl IndexedParallelIterator<Item = (u64, u64)> {
    let n = total.div_ceil(CHUNK) as usize;
    (0..n).into_par_iter().map(move |c| {
        let c = c as u64;
        (c * CHUNK, ((c + 1) * CHUNK).min(total))
    })
}

/// First element (in enumeration order) satisfying `pred`.
pub fn find_first<P>(field: &Field, pred: P) -> Option<Elem>
where
    P: Fn(Elem) -> bool + Sync,
{
    chunks(field.order()).find_map_first(|(lo, hi)| field.iter_range(lo, hi).find(|&x| pred(x)))
}

/// Every element satisfying `pred`, in enumeration order.
pub fn filter<P>(field: &Field, pred: P) -> Vec<Elem>
where
    P: Fn(Elem) -> bool + Sync,
{
    chunks(field.order())
        .flat_map_iter(|(lo, hi)| {
            field
                .iter_range(lo, hi)
                .filter(|&x| pred(x))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Runs `body` on every element.
pub fn for_each<B>(field: &Field, body: B)
where
    B: Fn(Elem) + Sync,
{
    chunks(field.order()).for_each(|(lo, hi)| field.iter_range(lo, hi).for_each(&body));
}
