use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::symgroup::Partition;

type Key = (Vec<usize>, Vec<usize>);

fn cache() -> &'static RwLock<HashMap<Key, i64>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, i64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Irreducible character `χ^λ` evaluated on the class with cycle type `class`,
/// via the Murnaghan–Nakayama rule.
pub fn character(lambda: &Partition, class: &Partition) -> Result<i64> {
    if lambda.size() != class.size() {
        return Err(Error::SizeMismatch {
            expected: lambda.size(),
            actual: class.size(),
        });
    }
    Ok(mn(lambda.parts(), class.parts()))
}

fn mn(shape: &[usize], class: &[usize]) -> i64 {
    let Some((&hook, rest)) = class.split_first() else {
        return i64::from(shape.is_empty());
    };
    let key = (shape.to_vec(), class.to_vec());
    if let Some(&v) = cache().read().expect("character cache poisoned").get(&key) {
        return v;
    }

    // beta numbers: first-column hook lengths, strictly decreasing
    let len = shape.len();
    let beta: Vec<usize> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < hook || beta.contains(&(b - hook)) {
            continue;
        }
        let target = b - hook;
        let crossed = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let reduced: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (len - 1 - j))
            .filter(|&p| p > 0)
            .collect();
        total += sign * mn(&reduced, rest);
    }

    cache()
        .write()
        .expect("character cache poisoned")
        .insert(key, total);
    total
}

/// Full character table of `S_n`. Rows are irreps, columns are classes, both in
/// [`Partition::all`] order.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    entries: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn new(n: usize) -> Self {
        let partitions = Partition::all(n);
        let entries = partitions
            .iter()
            .map(|lam| {
                partitions
                    .iter()
                    .map(|cls| mn(lam.parts(), cls.parts()))
                    .collect()
            })
            .collect();
        CharacterTable {
            n,
            partitions,
            entries,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn get(&self, irrep: &Partition, class: &Partition) -> Option<i64> {
        let i = self.partitions.iter().position(|p| p == irrep)?;
        let j = self.partitions.iter().position(|p| p == class)?;
        Some(self.entries[i][j])
    }

    pub fn row(&self, irrep: &Partition) -> Option<&[i64]> {
        let i = self.partitions.iter().position(|p| p == irrep)?;
        Some(&self.entries[i])
    }
}
