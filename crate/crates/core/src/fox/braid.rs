use num::Integer;

use crate::error::{Error, Result};

use super::pd::PdCode;

/// PD code of the closure of a braid on `strands` strands.
///
/// Letter `i > 0` is `σ_i` (strand `i` passes over strand `i+1`), `-i` its
/// inverse. Edges are labelled `1..=2n` along the orientation of the closed
/// knot; a closure with more than one component is rejected.
pub fn pd_from_braid(strands: usize, word: &[i64]) -> Result<PdCode> {
    if strands < 1 {
        return Err(Error::arg("a braid needs at least one strand"));
    }
    for &g in word {
        if g == 0 || g.unsigned_abs() as usize >= strands {
            return Err(Error::arg(format!("generator {g} out of range for {strands} strands")));
        }
    }
    // Edge e runs from crossing tail[e] to crossing head[e]. Edges 0..strands
    // start at the bottom of the braid and are glued to the top by the closure.
    let mut cur: Vec<usize> = (0..strands).collect();
    let mut next_edge = strands;
    // (under_in, under_out, over_in, over_out, positive)
    let mut crossings = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        let (left, right) = (cur[i], cur[i + 1]);
        let (out_left, out_right) = (next_edge, next_edge + 1);
        next_edge += 2;
        // the left strand moves right, the right strand moves left
        let (l_out, r_out) = (out_right, out_left);
        if g > 0 {
            crossings.push((right, r_out, left, l_out, true));
        } else {
            crossings.push((left, l_out, right, r_out, false));
        }
        cur[i] = out_left;
        cur[i + 1] = out_right;
    }
    // close up: identify the top edge at each position with the bottom one
    let mut alias: Vec<usize> = (0..next_edge).collect();
    for (s, &top) in cur.iter().enumerate() {
        alias[s] = top;
    }
    let canon = |e: usize| alias[e];

    if crossings.is_empty() {
        return if strands == 1 { Ok(PdCode::new(vec![])) } else { Err(Error::MultiComponent(strands)) };
    }
    // follow the knot: each edge enters exactly one crossing as under_in or over_in
    let mut succ = vec![usize::MAX; next_edge];
    for &(ui, uo, oi, oo, _) in &crossings {
        succ[canon(ui)] = canon(uo);
        succ[canon(oi)] = canon(oo);
    }
    let start = canon(crossings[0].0);
    let mut label = vec![0u32; next_edge];
    let mut e = start;
    let mut n = 0u32;
    loop {
        n += 1;
        label[e] = n;
        e = succ[e];
        if e == start {
            break;
        }
        if e == usize::MAX || label[e] != 0 {
            return Err(Error::InvalidPd("braid closure is not a single loop".into()));
        }
    }
    let expected = 2 * crossings.len() as u32;
    if n != expected {
        return Err(Error::MultiComponent(closure_components(strands, word)));
    }
    let lab = |x: usize| label[canon(x)];
    Ok(PdCode::new(
        crossings
            .iter()
            .map(
                |&(ui, uo, oi, oo, pos)| {
                    if pos {
                        [lab(ui), lab(oo), lab(uo), lab(oi)]
                    } else {
                        [lab(ui), lab(oi), lab(uo), lab(oo)]
                    }
                },
            )
            .collect(),
    ))
}

fn closure_components(strands: usize, word: &[i64]) -> usize {
    let mut perm: Vec<usize> = (0..strands).collect();
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    let mut seen = vec![false; strands];
    let mut count = 0;
    for s in 0..strands {
        if !seen[s] {
            count += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
            }
        }
    }
    count
}

/// PD code of the torus knot `T(p, q)` as the closure of `(σ_1 ⋯ σ_{p−1})^q`.
pub fn torus_knot_pd(p: i64, q: i64) -> Result<PdCode> {
    if p < 2 || q < 2 || p.gcd(&q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    let word: Vec<i64> = (0..q).flat_map(|_| 1..p).collect();
    pd_from_braid(p as usize, &word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fox::wirtinger_from_pd;

    #[test]
    fn trefoil_from_braid() {
        let pd = torus_knot_pd(2, 3).unwrap();
        pd.validate().unwrap();
        assert_eq!(pd.crossings.len(), 3);
        assert_eq!(pd.num_components(), 1);
        let s: i64 = (0..3).map(|i| pd.crossing_sign(i)).sum();
        assert_eq!(s.abs(), 3);
        assert_eq!(wirtinger_from_pd(&pd).unwrap().num_generators(), 3);
    }

    #[test]
    fn figure_eight_from_braid() {
        let pd = pd_from_braid(3, &[1, -2, 1, -2]).unwrap();
        pd.validate().unwrap();
        let s: i64 = (0..4).map(|i| pd.crossing_sign(i)).sum();
        assert_eq!(s, 0);
    }

    #[test]
    fn links_and_bad_input() {
        assert_eq!(pd_from_braid(2, &[1, 1]), Err(Error::MultiComponent(2)));
        assert_eq!(pd_from_braid(2, &[]), Err(Error::MultiComponent(2)));
        assert!(pd_from_braid(2, &[2]).is_err());
        assert_eq!(pd_from_braid(1, &[]).unwrap().crossings.len(), 0);
        assert!(torus_knot_pd(2, 4).is_err());
        for (p, q) in [(3, 4), (3, 7), (4, 5)] {
            let pd = torus_knot_pd(p, q).unwrap();
            pd.validate().unwrap();
            assert_eq!(pd.crossings.len() as i64, (p - 1) * q);
        }
    }
}
