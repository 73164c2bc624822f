//! Fixed inputs shared by the benchmarks in `benches/`.

use std::sync::Arc;

use cupres_core::{builtin_group, BrauerClass2, FiniteGroup};

pub fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(builtin_group(name).expect("builtin group"))
}

/// Split classes over `Q(sqrt a_1, ..., sqrt a_r)`, as `(class, a_list)`.
pub fn split_instances() -> Vec<(BrauerClass2, Vec<i128>)> {
    let cases: [(&[(i128, i128)], &[i128]); 4] = [
        (&[(6, 5)], &[2, 3]),
        (&[(-1, -1)], &[-1, 2]),
        (&[(-6, 35), (10, -7)], &[-6, 10, 7]),
        (&[(-23, 41), (-23, -19), (30, 13)], &[-23, 30, 13]),
    ];
    cases
        .iter()
        .map(|(pairs, a)| (BrauerClass2::from_pairs(pairs).expect("valid symbols"), a.to_vec()))
        .collect()
}
