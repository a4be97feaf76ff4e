//! Suffix automaton over the binary alphabet.
//!
//! Every state stands for the factors of lengths `(len(link), len]` that end
//! at the same set of positions, so they share their right extensions. This
//! gives distinct-factor and right-special counts for every length at once.

const NONE: u32 = u32::MAX;

pub struct SuffixAutomaton {
    len: Vec<u32>,
    link: Vec<u32>,
    next: Vec<[u32; 2]>,
}

impl SuffixAutomaton {
    pub fn new(bits: &[u8]) -> Self {
        assert!(bits.len() < (u32::MAX / 2) as usize, "text too long for 32-bit states");
        let cap = 2 * bits.len() + 1;
        let mut sa = SuffixAutomaton {
            len: Vec::with_capacity(cap),
            link: Vec::with_capacity(cap),
            next: Vec::with_capacity(cap),
        };
        sa.push(0, NONE, [NONE; 2]);
        let mut last = 0u32;
        for &b in bits {
            let c = b as usize;
            let cur = sa.push(sa.len[last as usize] + 1, NONE, [NONE; 2]);
            let mut p = last;
            while p != NONE && sa.next[p as usize][c] == NONE {
                sa.next[p as usize][c] = cur;
                p = sa.link[p as usize];
            }
            if p == NONE {
                sa.link[cur as usize] = 0;
            } else {
                let q = sa.next[p as usize][c];
                if sa.len[p as usize] + 1 == sa.len[q as usize] {
                    sa.link[cur as usize] = q;
                } else {
                    let clone = sa.push(sa.len[p as usize] + 1, sa.link[q as usize], sa.next[q as usize]);
                    while p != NONE && sa.next[p as usize][c] == q {
                        sa.next[p as usize][c] = clone;
                        p = sa.link[p as usize];
                    }
                    sa.link[q as usize] = clone;
                    sa.link[cur as usize] = clone;
                }
            }
            last = cur;
        }
        sa
    }

    fn push(&mut self, len: u32, link: u32, next: [u32; 2]) -> u32 {
        self.len.push(len);
        self.link.push(link);
        self.next.push(next);
        (self.len.len() - 1) as u32
    }

    pub fn states(&self) -> usize {
        self.len.len()
    }

    /// `(f, s)` for lengths `0..=n_max`: distinct factors and right special
    /// factors of the text.
    pub fn counts(&self, n_max: usize) -> (Vec<u64>, Vec<u64>) {
        let mut df = vec![0i64; n_max + 2];
        let mut ds = vec![0i64; n_max + 2];
        df[0] += 1;
        df[1] -= 1;
        if self.next[0].iter().all(|&t| t != NONE) {
            ds[0] += 1;
            ds[1] -= 1;
        }
        for v in 1..self.states() {
            let lo = self.len[self.link[v] as usize] as usize + 1;
            let hi = (self.len[v] as usize).min(n_max);
            if lo > hi {
                continue;
            }
            df[lo] += 1;
            df[hi + 1] -= 1;
            if self.next[v].iter().all(|&t| t != NONE) {
                ds[lo] += 1;
                ds[hi + 1] -= 1;
            }
        }
        let run = |d: Vec<i64>| -> Vec<u64> {
            let mut acc = 0i64;
            d.into_iter()
                .take(n_max + 1)
                .map(|x| {
                    acc += x;
                    acc as u64
                })
                .collect()
        };
        (run(df), run(ds))
    }
}
