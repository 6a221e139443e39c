/// Range-maximum over a static array of `(key, payload)` pairs. Ties keep the
/// leftmost entry.
pub(crate) struct SparseMax {
    levels: Vec<Vec<(i64, usize)>>,
}

impl SparseMax {
    pub fn new(values: Vec<(i64, usize)>) -> Self {
        let mut levels = vec![values];
        let mut width = 1;
        while 2 * width <= levels[0].len() {
            let prev = levels.last().unwrap();
            let next: Vec<_> = (0..prev.len() - width)
                .map(|i| {
                    let (a, b) = (prev[i], prev[i + width]);
                    if b.0 > a.0 {
                        b
                    } else {
                        a
                    }
                })
                .collect();
            levels.push(next);
            width *= 2;
        }
        SparseMax { levels }
    }

    /// Maximum over the half-open range `lo..hi`; `None` when empty.
    pub fn query(&self, lo: usize, hi: usize) -> Option<(i64, usize)> {
        if lo >= hi || hi > self.levels[0].len() {
            return None;
        }
        let len = hi - lo;
        let k = (usize::BITS - 1 - len.leading_zeros()) as usize;
        let a = self.levels[k][lo];
        let b = self.levels[k][hi - (1 << k)];
        Some(if b.0 > a.0 { b } else { a })
    }
}

/// Fenwick tree over counts.
pub(crate) struct Fenwick {
    tree: Vec<u64>,
}

impl Fenwick {
    pub fn new(n: usize) -> Self {
        Fenwick { tree: vec![0; n + 1] }
    }

    pub fn add(&mut self, index: usize, delta: u64) {
        let mut i = index + 1;
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum over `0..end`.
    pub fn prefix(&self, end: usize) -> u64 {
        let mut i = end.min(self.tree.len() - 1);
        let mut total = 0;
        while i > 0 {
            total += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_max_matches_scan() {
        let values: Vec<(i64, usize)> = [5, 1, 9, 3, 9, 2, 7]
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let table = SparseMax::new(values.clone());
        for lo in 0..values.len() {
            for hi in lo + 1..=values.len() {
                let expect = values[lo..hi]
                    .iter()
                    .fold(None::<(i64, usize)>, |acc, &x| match acc {
                        Some(a) if a.0 >= x.0 => Some(a),
                        _ => Some(x),
                    });
                assert_eq!(table.query(lo, hi), expect, "{lo}..{hi}");
            }
        }
        assert_eq!(table.query(3, 3), None);
    }

    #[test]
    fn fenwick_prefix_sums() {
        let mut f = Fenwick::new(8);
        f.add(0, 2);
        f.add(5, 3);
        f.add(7, 1);
        assert_eq!(f.prefix(0), 0);
        assert_eq!(f.prefix(1), 2);
        assert_eq!(f.prefix(6), 5);
        assert_eq!(f.prefix(8), 6);
    }
}
