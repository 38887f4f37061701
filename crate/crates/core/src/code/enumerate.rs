//! Codeword walks in q-ary Gray order.
//!
//! With a plain base-q counter `c` over the message digits, the digits
//! `g_j = c_j - c_{j+1} (mod q)` form a modular Gray code: each increment of
//! `c` changes exactly one `g_j`, by +1, at the lowest position where `c`
//! does not wrap. The message vector is read off `g`, so each step adds a
//! single scalar multiple of one generator row to the running codeword and
//! the weight is updated from the touched coordinates only.

use rayon::prelude::*;

use super::LinearCode;

/// Per row, per field scalar `s`, the nonzero entries of `s * row`.
struct ScaledRows {
    rows: Vec<Vec<Vec<(u32, u8)>>>,
}

impl ScaledRows {
    fn new(code: &LinearCode) -> Self {
        let f = code.field();
        let q = f.order() as usize;
        let rows = code
            .generator
            .iter()
            .map(|row| {
                (0..q)
                    .map(|s| {
                        row.iter()
                            .enumerate()
                            .filter_map(|(i, &g)| {
                                let v = f.mul_raw(s as u8, g);
                                (v != 0).then_some((i as u32, v))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ScaledRows { rows }
    }
}

/// Visits every codeword whose top `prefix.len()` message symbols (the last
/// rows of the generator) equal `prefix`; the remaining symbols run through
/// the Gray order. The visitor receives the codeword and its weight.
fn walk_block<F: FnMut(&[u8], usize)>(code: &LinearCode, scaled: &ScaledRows, prefix: &[u8], mut visit: F) {
    let f = code.field();
    let q = f.order();
    let k = code.dimension();
    let free = k - prefix.len();

    let mut word = vec![0u8; code.length()];
    for (offset, &s) in prefix.iter().enumerate() {
        for &(i, v) in &scaled.rows[free + offset][s as usize] {
            word[i as usize] = f.add_raw(word[i as usize], v);
        }
    }
    let mut weight = word.iter().filter(|&&x| x != 0).count();
    visit(&word, weight);

    let mut counter = vec![0u32; free];
    let mut gray = vec![0u32; free];
    while let Some(j) = counter.iter().position(|&c| c != q - 1) {
        counter[..j].iter_mut().for_each(|c| *c = 0);
        counter[j] += 1;

        let old = gray[j];
        let new = if old + 1 == q { 0 } else { old + 1 };
        gray[j] = new;
        let delta = f.sub_raw(new as u8, old as u8);
        for &(i, v) in &scaled.rows[j][delta as usize] {
            let slot = &mut word[i as usize];
            let before = *slot != 0;
            *slot = f.add_raw(*slot, v);
            let after = *slot != 0;
            if before != after {
                if after {
                    weight += 1;
                } else {
                    weight -= 1;
                }
            }
        }
        visit(&word, weight);
    }
}

/// Sequential walk over all codewords.
pub(crate) fn for_each_codeword<F: FnMut(&[u8], usize)>(code: &LinearCode, visit: F) {
    let scaled = ScaledRows::new(code);
    walk_block(code, &scaled, &[], visit);
}

/// Weight histogram `hist[w]` over the whole code, split across the current
/// rayon pool by fixing the top message symbols per block.
pub(crate) fn weight_histogram(code: &LinearCode) -> Vec<u64> {
    let n = code.length();
    let k = code.dimension();
    let q = code.field().order() as u64;
    let workers = rayon::current_num_threads().max(1) as u64;

    let mut prefix_len = 0usize;
    let mut blocks = 1u64;
    while blocks < workers && prefix_len < k {
        blocks *= q;
        prefix_len += 1;
    }

    let scaled = ScaledRows::new(code);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut prefix = vec![0u8; prefix_len];
            let mut rest = b;
            for s in prefix.iter_mut() {
                *s = (rest % q) as u8;
                rest /= q;
            }
            let mut hist = vec![0u64; n + 1];
            walk_block(code, &scaled, &prefix, |_, w| hist[w] += 1);
            hist
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}
