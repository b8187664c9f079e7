use super::Graph;
use crate::{Error, Result};

/// Exact independence number by branch and bound over vertex bitmasks.
///
/// Vertices of degree at most one are taken greedily (always safe); otherwise
/// the search branches on a maximum-degree vertex. Limited to `n <= 64`.
pub fn independence_number(g: &Graph) -> Result<usize> {
    if g.order() > 64 {
        return Err(Error::InvalidParams(format!(
            "independence search supports n <= 64, got {}",
            g.order()
        )));
    }
    let nb = g.neighbor_masks();
    let all = if g.order() == 64 {
        u64::MAX
    } else {
        (1u64 << g.order()) - 1
    };
    let mut best = 0;
    search(&nb, all, 0, &mut best);
    Ok(best)
}

fn search(nb: &[u64], mut mask: u64, mut taken: usize, best: &mut usize) {
    loop {
        if taken + mask.count_ones() as usize <= *best {
            return;
        }
        if mask == 0 {
            *best = taken;
            return;
        }
        let mut pick_low = None;
        let mut pick_high = (0, 0);
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let d = (nb[v] & mask).count_ones();
            if d <= 1 {
                pick_low = Some(v);
                break;
            }
            if d > pick_high.1 {
                pick_high = (v, d);
            }
        }
        if let Some(v) = pick_low {
            mask &= !(nb[v] | (1u64 << v));
            taken += 1;
            continue;
        }
        let v = pick_high.0;
        search(nb, mask & !(nb[v] | (1u64 << v)), taken + 1, best);
        mask &= !(1u64 << v);
    }
}
