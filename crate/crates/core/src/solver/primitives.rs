//! Building blocks of the inductive coloring: cycles, paths with shortened
//! end lists, and extension of a coloring across an ear.

use std::collections::BTreeSet;

use crate::graph::Graph;
use crate::kernel::{unique_colors, Color, Coloring, ListAssignment};
use crate::structure::Ear;

use super::{Obstruction, SolverError};

/// Smallest color of `list` outside `forbid`.
pub(crate) fn pick<'a>(list: impl IntoIterator<Item = &'a Color>, forbid: &[Color]) -> Option<Color> {
    list.into_iter().copied().find(|c| !forbid.contains(c))
}

/// Proper conflict-free coloring of the cycle `v_0 … v_{l-1}` whose lists are
/// given in cyclic order, each of size at least 4.
///
/// * `l = 3, 4`: distinct colors greedily.
/// * All lists equal: blocks `1 2 3` and `1 2 3 4` over the four smallest
///   colors tile every length except 5; a 5-cycle needs five colors, so a
///   common list of exactly four colors is the one obstruction.
/// * Otherwise rotate so that `L(v_0) ⊄ L(v_{l-1})`, give `v_0` a color
///   `α ∉ L(v_{l-1})`, and color along the cycle avoiding the two previous
///   colors (plus `α` at `v_{l-2}` and `φ(v_1)` at `v_{l-1}`).
pub(crate) fn cycle_colors(lists: &[BTreeSet<Color>]) -> Result<Vec<Color>, Obstruction> {
    let l = lists.len();
    if let Some(v) = (0..l).find(|&v| lists[v].len() < 4) {
        return Err(Obstruction::ListTooSmall { vertex: v, have: lists[v].len(), need: 4 });
    }
    if l <= 4 {
        let mut out: Vec<Color> = Vec::with_capacity(l);
        for list in lists {
            out.push(pick(list, &out).expect("list of size 4 has a fresh color"));
        }
        return Ok(out);
    }
    if lists.iter().all(|x| x == &lists[0]) {
        let colors: Vec<Color> = lists[0].iter().copied().collect();
        if l == 5 {
            if colors.len() == 4 {
                return Err(Obstruction::IsC5Uniform);
            }
            return Ok(colors[..5].to_vec());
        }
        // l = 3a + 4b with as many 3-blocks as possible.
        let b = l % 3;
        let a = (l - 4 * b) / 3;
        let mut out = Vec::with_capacity(l);
        for _ in 0..a {
            out.extend_from_slice(&colors[..3]);
        }
        for _ in 0..b {
            out.extend_from_slice(&colors[..4]);
        }
        return Ok(out);
    }
    let start = (0..l).find(|&i| !lists[i].is_subset(&lists[(i + l - 1) % l])).expect("non-uniform lists");
    let rot: Vec<&BTreeSet<Color>> = (0..l).map(|i| &lists[(start + i) % l]).collect();
    let mut phi = vec![0; l];
    phi[0] = *rot[0].difference(rot[l - 1]).next().expect("α exists");
    phi[1] = pick(rot[1], &[phi[0]]).expect("size 4");
    for i in 2..l - 2 {
        phi[i] = pick(rot[i], &[phi[i - 2], phi[i - 1]]).expect("size 4");
    }
    phi[l - 2] = pick(rot[l - 2], &[phi[l - 4], phi[l - 3], phi[0]]).expect("size 4");
    phi[l - 1] = pick(rot[l - 1], &[phi[l - 3], phi[l - 2], phi[1]]).expect("size 4");
    let mut out = vec![0; l];
    for i in 0..l {
        out[(start + i) % l] = phi[i];
    }
    Ok(out)
}

/// Proper conflict-free coloring of the cycle `0 … l-1` (vertex `i` adjacent
/// to `i ± 1 mod l`) from `lists`.
pub fn color_cycle(lists: &ListAssignment) -> Result<Coloring, Obstruction> {
    if lists.len() < 3 {
        return Err(Obstruction::ListTooSmall { vertex: lists.len(), have: 0, need: 4 });
    }
    cycle_colors(lists.lists()).map(Coloring::from_total)
}

/// Proper conflict-free coloring of the path `u_0 … u_s` (`s >= 3`) from
/// lists with at least 2 colors at the ends, 3 next to the ends and 4
/// elsewhere.
pub fn color_constrained_path(lists: &ListAssignment) -> Result<Coloring, SolverError> {
    let lists: Vec<Vec<Color>> = lists.lists().iter().map(|l| l.iter().copied().collect()).collect();
    path_colors(&lists).map(Coloring::from_total)
}

pub(crate) fn path_colors(lists: &[Vec<Color>]) -> Result<Vec<Color>, SolverError> {
    let len = lists.len();
    if len < 4 {
        return Err(SolverError::PathTooShort(len.saturating_sub(1)));
    }
    let s = len - 1;
    for (i, l) in lists.iter().enumerate() {
        let need = if i == 0 || i == s {
            2
        } else if i == 1 || i == s - 1 {
            3
        } else {
            4
        };
        if l.len() < need {
            return Err(SolverError::ListTooSmall { vertex: i, have: l.len(), need });
        }
    }
    // Peel u_s, u_{s-1}, … while s >= 4: u_s takes α = min L(u_s), and α is
    // struck from the two vertices before it.
    let mut work: Vec<Vec<Color>> = lists.to_vec();
    let mut tail: Vec<Color> = Vec::new();
    let mut top = s;
    while top >= 4 {
        let alpha = work[top][0];
        tail.push(alpha);
        for j in [top - 2, top - 1] {
            work[j].retain(|&c| c != alpha);
        }
        top -= 1;
    }
    let mut out = base_path(&work[..4]);
    out.extend(tail.into_iter().rev());
    Ok(out)
}

/// The `s = 3` case: ends trimmed to 2 colors, middles to 3.
fn base_path(lists: &[Vec<Color>]) -> Vec<Color> {
    let l0 = &lists[0][..2];
    let l1 = &lists[1][..3];
    let l2 = &lists[2][..3];
    let l3 = &lists[3][..2];
    if let Some(&alpha) = l0.iter().find(|c| l3.contains(c)) {
        let p1 = pick(l1, &[alpha]).expect("3 colors");
        let p2 = pick(l2, &[alpha, p1]).expect("3 colors");
        return vec![alpha, p1, p2, alpha];
    }
    // Ends are disjoint, so they offer 4 colors and one of them, β, misses L(u_1).
    let beta = l0.iter().chain(l3).copied().find(|c| !l1.contains(c)).expect("β exists");
    if l0.contains(&beta) {
        let p3 = l3[0];
        let p2 = pick(l2, &[beta, p3]).expect("3 colors");
        let p1 = pick(l1, &[p2, p3]).expect("β is not in L(u_1)");
        vec![beta, p1, p2, p3]
    } else {
        // β sits at u_3 and is missing from L(u_1): then φ(u_1) can never
        // equal β, so u_2 sees two colors as soon as φ(u_2) avoids φ(u_0).
        let p0 = l0[0];
        let p2 = pick(l2, &[beta, p0]).expect("3 colors");
        let p1 = pick(l1, &[p0, p2]).expect("β is not in L(u_1)");
        vec![p0, p1, p2, beta]
    }
}

/// Extends `phi` across the ear `u_1 … u_r` whose ends are colored and
/// interior uncolored, so that it stays proper and every `u_i`, `i < r`,
/// has a uniquely colored neighbor.
///
/// Requires that `u_1` already has a uniquely colored neighbor or that its
/// colored neighbors all share one color; call that color (or the smallest
/// unique one) `t`. Then `u_2` avoids `φ(u_1)` and `t`; every later `u_i`
/// avoids `φ(u_{i-1})` and `φ(u_{i-2})`; and `u_{r-2}`, `u_{r-1}` also avoid
/// `φ(u_r)`. Each `u_i` then sees `φ(u_{i-1})` exactly once.
pub fn extend_ear(g: &Graph, phi: &Coloring, ear: &Ear, lists: &ListAssignment) -> Result<Coloring, SolverError> {
    let interior: Vec<Vec<Color>> = ear.interior.iter().map(|&u| lists.get(u).iter().copied().collect()).collect();
    let mut out = phi.clone();
    extend_ear_in_place(g, &mut out, ear, &interior)?;
    Ok(out)
}

pub(crate) fn extend_ear_in_place(
    g: &Graph,
    phi: &mut Coloring,
    ear: &Ear,
    interior_lists: &[Vec<Color>],
) -> Result<(), SolverError> {
    let (u1, ur) = ear.root;
    if !g.has_edge(u1, ur) || ear.interior.is_empty() || ear.vertices().windows(2).any(|w| !g.has_edge(w[0], w[1])) {
        return Err(SolverError::BadEar);
    }
    let (Some(c1), Some(cr)) = (phi.get(u1), phi.get(ur)) else {
        return Err(SolverError::EarPrecondition { vertex: u1 });
    };
    if ear.interior.iter().any(|&u| phi.get(u).is_some()) {
        return Err(SolverError::EarPrecondition { vertex: u1 });
    }
    for (i, l) in interior_lists.iter().enumerate() {
        if l.len() < 4 {
            return Err(SolverError::ListTooSmall { vertex: ear.interior[i], have: l.len(), need: 4 });
        }
    }
    let unique = unique_colors(g, phi, u1).expect("u_1 in range");
    let t = match unique.first() {
        Some(&t) => t,
        None => {
            let seen: BTreeSet<Color> = g.neighbors(u1).iter().filter_map(|&w| phi.get(w)).collect();
            if seen.len() != 1 {
                return Err(SolverError::EarPrecondition { vertex: u1 });
            }
            *seen.first().expect("one color")
        }
    };
    let r = ear.order();
    // colors[i] = φ(u_{i+1}) for the ear u_1 … u_r.
    let mut colors = vec![0; r];
    colors[0] = c1;
    colors[r - 1] = cr;
    for i in 2..r {
        // u_i, stored at index i - 1.
        let mut forbid = vec![colors[i - 2]];
        forbid.push(if i == 2 { t } else { colors[i - 3] });
        if i + 2 >= r {
            forbid.push(cr);
        }
        let c = pick(&interior_lists[i - 2], &forbid).ok_or(SolverError::ListTooSmall {
            vertex: ear.interior[i - 2],
            have: interior_lists[i - 2].len(),
            need: 4,
        })?;
        colors[i - 1] = c;
        phi.set(ear.interior[i - 2], c);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::cycle;
    use crate::kernel::verify;

    fn sets(v: &[&[Color]]) -> Vec<BTreeSet<Color>> {
        v.iter().map(|l| l.iter().copied().collect()).collect()
    }

    #[test]
    fn uniform_cycles() {
        for l in [3, 4, 6, 7, 8, 9, 10, 11] {
            let lists = ListAssignment::uniform(l, 1..=4);
            let phi = color_cycle(&lists).unwrap();
            assert!(verify(&cycle(l).unwrap(), &lists, &phi).ok, "length {l}");
        }
        assert_eq!(color_cycle(&ListAssignment::uniform(5, 1..=4)), Err(Obstruction::IsC5Uniform));
        let five = ListAssignment::uniform(5, 1..=5);
        assert!(verify(&cycle(5).unwrap(), &five, &color_cycle(&five).unwrap()).ok);
    }

    #[test]
    fn c6_uses_three_colors() {
        let phi = color_cycle(&ListAssignment::uniform(6, 1..=4)).unwrap();
        assert_eq!(phi.to_total().unwrap(), vec![1, 2, 3, 1, 2, 3]);
    }

    #[test]
    fn c5_with_one_odd_list() {
        let lists =
            ListAssignment::new(sets(&[&[1, 2, 3, 4], &[1, 2, 3, 4], &[1, 2, 3, 4], &[1, 2, 3, 4], &[1, 2, 3, 5]]));
        let phi = color_cycle(&lists).unwrap();
        assert!(verify(&cycle(5).unwrap(), &lists, &phi).ok);
    }

    #[test]
    fn path_base_shared_end_color() {
        let lists = ListAssignment::new(sets(&[&[1, 2], &[1, 2, 3], &[1, 2, 3], &[1, 2]]));
        let phi = color_constrained_path(&lists).unwrap();
        assert_eq!(phi.to_total().unwrap(), vec![1, 2, 3, 1]);
    }

    #[test]
    fn path_base_disjoint_ends() {
        let lists = ListAssignment::new(sets(&[&[1, 2], &[3, 4, 5], &[1, 3, 4], &[3, 4]]));
        let phi = color_constrained_path(&lists).unwrap();
        let p = crate::generators::path(4);
        assert!(verify(&p, &lists, &phi).ok);
    }

    #[test]
    fn path_base_beta_at_far_end() {
        // L(u_0) ⊆ L(u_1), so β lies in L(u_3); also β ∈ L(u_2).
        let lists = ListAssignment::new(sets(&[&[1, 2], &[1, 2, 3], &[4, 5, 1], &[4, 5]]));
        let phi = color_constrained_path(&lists).unwrap();
        assert!(verify(&crate::generators::path(4), &lists, &phi).ok);
    }

    #[test]
    fn path_too_short() {
        let lists = ListAssignment::new(sets(&[&[1, 2], &[1, 2, 3], &[1, 2]]));
        assert_eq!(color_constrained_path(&lists), Err(SolverError::PathTooShort(2)));
    }

    #[test]
    fn triangle_ear() {
        // Ear 0-1-2 on root edge 0-2, with 0 also adjacent to 3 (color 2).
        let g = Graph::build(4, &[(0, 1), (1, 2), (0, 2), (0, 3), (2, 3)]).unwrap();
        let mut phi = Coloring::uncolored(4);
        phi.set(0, 1);
        phi.set(3, 2);
        phi.set(2, 4);
        let ear = Ear { root: (0, 2), interior: vec![1] };
        let lists = ListAssignment::uniform(4, 1..=4);
        let out = extend_ear(&g, &phi, &ear, &lists).unwrap();
        assert_eq!(out.get(1), Some(3));
    }

    #[test]
    fn ear_precondition_checked() {
        // u_1 = 0 sees colors 2, 2, 3, 3 outside the ear: nothing unique and
        // not a single color.
        let g = Graph::build(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        let mut phi = Coloring::uncolored(6);
        for (v, c) in [(0, 1), (2, 2), (3, 2), (4, 3), (5, 3)] {
            phi.set(v, c);
        }
        let ear = Ear { root: (0, 2), interior: vec![1] };
        let lists = ListAssignment::uniform(6, 1..=4);
        assert_eq!(extend_ear(&g, &phi, &ear, &lists), Err(SolverError::EarPrecondition { vertex: 0 }));
    }
}
