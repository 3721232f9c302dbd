//! Deterministic inputs for the benchmarks.

use cantorkit_core::bitspace::{BitString, CodeSet, DepthCap, OpenSet};
use cantorkit_core::domination::{TableFunctional, TableRow};
use cantorkit_core::kc::Request;
use cantorkit_core::MlTest;

pub const CAP: DepthCap = DepthCap(64);

/// Every `stride`-th word of length `len`, in lexicographic order.
pub fn sparse_code(len: usize, stride: usize) -> OpenSet {
    let words = BitString::all_of_length(len).step_by(stride.max(1));
    OpenSet::new(CodeSet::new(words, CAP).expect("one length is prefix-free"))
}

/// Requests of lengths cycling through `min..=max`, weight at most 1.
pub fn requests(count: usize, min: usize, max: usize) -> Vec<Request> {
    let mut spent = 0f64;
    (0..count)
        .map(|i| min + i % (max - min + 1))
        .filter(|&n| {
            let w = 0.5f64.powi(n as i32);
            let fits = spent + w <= 1.0;
            if fits {
                spent += w;
            }
            fits
        })
        .enumerate()
        .map(|(i, n)| Request::new(n, BitString::from_index(i as u64)))
        .collect()
}

/// `V_k = 0^k ⋅ {00, 011, 1}` for `k = 0..=levels`.
pub fn zero_prefixed_test(levels: usize) -> MlTest {
    let shape =
        OpenSet::new(CodeSet::new(["00", "011", "1"].map(|w| w.parse().unwrap()), CAP).unwrap());
    let sets = (0..=levels)
        .map(|k| {
            let v = OpenSet::cylinder(&BitString::zeros(k))
                .product(&shape, CAP)
                .unwrap();
            if k == 0 {
                v
            } else {
                v.intersect_cylinder(&BitString::zeros(k + 1), CAP).unwrap()
            }
        })
        .collect();
    MlTest::new(sets, CAP).expect("measures halve")
}

/// A total functional on inputs `0..inputs` with rows on every depth-`depth` word.
pub fn full_table(depth: usize, inputs: u64) -> TableFunctional {
    let rows = BitString::all_of_length(depth)
        .enumerate()
        .flat_map(|(i, prefix)| {
            (0..inputs).map(move |input| {
                let step = 1 + (i as u64 * 7 + input * 3) % 23;
                TableRow {
                    prefix: prefix.clone(),
                    input,
                    step,
                    value: step / 2,
                }
            })
        });
    TableFunctional::new(rows).expect("rows are consistent")
}
