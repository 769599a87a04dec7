//! The inductive step: one handler per shape of the chosen end block.
//!
//! Notation follows the structures in [`crate::structure`]: an ear is
//! `u_1 … u_r` with root edge `u_1 u_r`; a chain has root path `v_1 … v_s`
//! and ears `H_1 … H_{s-1}`. After the recursive call, `c1`/`c2` are the
//! colors of the two root ends, and `α`/`β` the smallest colors occurring
//! exactly once around them in the smaller graph.

use crate::graph::Graph;
use crate::kernel::{Color, ListAssignment};
use crate::structure::{block_decomposition, classify_end_block, Ear, EarChain, EndBlockKind};

use super::primitives::{extend_ear_in_place, path_colors};
use super::trace::{ChainSub, LongEarSub, StepTag};
use super::Run;

fn without(alive: &[usize], remove: &[usize]) -> Vec<usize> {
    alive.iter().copied().filter(|v| !remove.contains(v)).collect()
}

impl Run<'_> {
    pub(super) fn dispatch(&mut self, h: &Graph, map: &[usize], alive: &[usize], lists: &ListAssignment, depth: usize) {
        let decomp = block_decomposition(h).unwrap_or_else(|e| self.bug(&e.to_string()));
        let case = classify_end_block(&decomp, h).unwrap_or_else(|e| self.bug(&e.to_string()));
        let x = map[case.anchor];
        match case.kind {
            EndBlockKind::K2 => {
                let v = case.block.iter().map(|&b| map[b]).find(|&b| b != x).expect("K2 has two ends");
                self.pendant_edge(alive, lists, depth, x, v);
            }
            EndBlockKind::Cycle(order) => {
                let order: Vec<usize> = order.iter().map(|&v| map[v]).collect();
                self.cycle_block(alive, lists, depth, &order);
            }
            EndBlockKind::Ear(e) => self.good_ear(alive, lists, depth, &e.map_vertices(map)),
            EndBlockKind::LongEar(e) => self.long_ear(alive, lists, depth, &e.map_vertices(map)),
            EndBlockKind::EarChain(c) => self.ear_chain(alive, lists, depth, &c.map_vertices(map)),
        }
    }

    /// Extends across `ear` with interior lists cut to 4 colors.
    fn extend(&mut self, ear: &Ear, lists: &ListAssignment, depth: usize) {
        let interior: Vec<Vec<Color>> = ear.interior.iter().map(|&u| Self::trimmed(lists, u, 2)).collect();
        if let Err(e) = extend_ear_in_place(self.g, &mut self.phi, ear, &interior) {
            self.bug(&format!("ear {ear:?}: {e}"));
        }
        let fixed = ear.interior.iter().map(|&u| (u, self.color(u))).collect();
        self.push(depth, StepTag::EarExtension, Vec::new(), fixed);
    }

    /// End block `x v` with `v` a leaf: `v` avoids `φ(x)` and one unique
    /// color of `x`.
    fn pendant_edge(&mut self, alive: &[usize], lists: &ListAssignment, depth: usize, x: usize, v: usize) {
        self.rec(&without(alive, &[v]), lists, depth + 1);
        let alpha = self.min_unique(x);
        let c = self.choose(&Self::trimmed(lists, v, 1), &[self.color(x), alpha], "pendant vertex");
        let mut fixed = Vec::new();
        self.fix(v, c, &mut fixed);
        self.push(depth, StepTag::K2, vec![v], fixed);
    }

    /// End block is the cycle `x u_0 … u_{l-2}`.
    fn cycle_block(&mut self, alive: &[usize], lists: &ListAssignment, depth: usize, order: &[usize]) {
        let x = order[0];
        let us = &order[1..];
        let l = order.len();
        self.rec(&without(alive, us), lists, depth + 1);
        let c1 = self.color(x);
        let alpha = self.min_unique(x);
        let lu: Vec<Vec<Color>> = us.iter().map(|&u| Self::trimmed(lists, u, 2)).collect();
        let mut fixed = Vec::new();
        match l {
            3 => {
                let a = self.choose(&lu[0], &[c1, alpha], "u_0");
                self.fix(us[0], a, &mut fixed);
                let b = self.choose(&lu[1], &[c1, alpha, a], "u_1");
                self.fix(us[1], b, &mut fixed);
            }
            4 => {
                let a = self.choose(&lu[0], &[c1, alpha], "u_0");
                self.fix(us[0], a, &mut fixed);
                let c = self.choose(&lu[2], &[c1, alpha, a], "u_2");
                self.fix(us[2], c, &mut fixed);
                let b = self.choose(&lu[1], &[c1, a, c], "u_1");
                self.fix(us[1], b, &mut fixed);
            }
            _ => {
                // The path u_0 … u_{l-2}: ends lose c1 and α, their neighbors lose c1.
                let last = l - 2;
                let lb: Vec<Vec<Color>> = lu
                    .iter()
                    .enumerate()
                    .map(|(i, list)| {
                        let drop: &[Color] = if i == 0 || i == last {
                            &[c1, alpha]
                        } else if i == 1 || i == last - 1 {
                            &[c1]
                        } else {
                            &[]
                        };
                        list.iter().copied().filter(|c| !drop.contains(c)).collect()
                    })
                    .collect();
                let cols = path_colors(&lb).unwrap_or_else(|e| self.bug(&format!("path lemma: {e}")));
                let mut path_fixed = Vec::new();
                for (&u, &c) in us.iter().zip(&cols) {
                    self.fix(u, c, &mut path_fixed);
                }
                self.push(depth, StepTag::PathLemma, Vec::new(), path_fixed);
            }
        }
        self.push(depth, StepTag::CycleBlock, us.to_vec(), fixed);
    }

    /// Ear `u_1 … u_r` with `d(u_r) = 3` and the anchor outside
    /// `V(H) \ {u_1}`. The extension leaves `u_r` with a unique color: in the
    /// smaller graph it had two neighbors of distinct colors, and `u_{r-1}`
    /// can repeat at most one of them.
    fn good_ear(&mut self, alive: &[usize], lists: &ListAssignment, depth: usize, ear: &Ear) {
        self.rec(&without(alive, &ear.interior), lists, depth + 1);
        self.extend(ear, lists, depth);
        self.push(depth, StepTag::GoodEar, ear.interior.clone(), Vec::new());
    }

    /// Ear `u_1 … u_r`, `r >= 6`, avoiding the anchor.
    fn long_ear(&mut self, alive: &[usize], lists: &ListAssignment, depth: usize, ear: &Ear) {
        self.rec(&without(alive, &ear.interior), lists, depth + 1);
        let verts = ear.vertices();
        let r = verts.len();
        // u[i] = u_i, 1-based.
        let u = |i: usize| verts[i - 1];
        let (c1, c2) = (self.color(u(1)), self.color(u(r)));
        let alpha = self.min_unique(u(1));
        let beta = self.min_unique(u(r));
        let lst: Vec<Vec<Color>> =
            (0..=r).map(|i| if (2..r).contains(&i) { Self::trimmed(lists, u(i), 2) } else { Vec::new() }).collect();
        let mut col: Vec<Color> = vec![0; r + 1];
        col[1] = c1;
        col[r] = c2;
        let mut fixed = Vec::new();
        let last = &lst[r - 1];
        let hits = [c2, beta].iter().filter(|c| last.contains(c)).count();
        let sub = if hits <= 1 {
            LongEarSub::Sub1
        } else if lst[r - 2].iter().any(|c| !last.contains(c)) {
            LongEarSub::Sub2
        } else {
            LongEarSub::Sub3
        };
        match sub {
            LongEarSub::Sub1 => {
                col[2] = self.choose(&lst[2], &[c1, alpha], "u_2");
                self.fix(u(2), col[2], &mut fixed);
                for i in 3..=r - 3 {
                    col[i] = self.choose(&lst[i], &[col[i - 2], col[i - 1]], "u_i");
                    self.fix(u(i), col[i], &mut fixed);
                }
                col[r - 2] = self.choose(&lst[r - 2], &[c2, col[r - 4], col[r - 3]], "u_{r-2}");
                self.fix(u(r - 2), col[r - 2], &mut fixed);
            }
            LongEarSub::Sub2 | LongEarSub::Sub3 => {
                let p = if sub == LongEarSub::Sub2 {
                    *lst[r - 2].iter().find(|c| !last.contains(c)).expect("sub-case condition")
                } else {
                    if !lst[r - 2].contains(&beta) {
                        self.bug("equal last lists must contain β");
                    }
                    beta
                };
                col[r - 2] = p;
                self.fix(u(r - 2), p, &mut fixed);
                // For r = 6, u_2 is also a neighbor of u_3 = u_{r-3}, so it
                // must avoid φ(u_{r-2}) as well.
                let first: Vec<Color> = if r == 6 { vec![c1, alpha, p] } else { vec![c1, alpha] };
                col[2] = self.choose(&lst[2], &first, "u_2");
                self.fix(u(2), col[2], &mut fixed);
                for i in 3..=r - 3 {
                    let mut forbid = vec![col[i - 2], col[i - 1]];
                    if i + 4 >= r {
                        forbid.push(p);
                    }
                    col[i] = self.choose(&lst[i], &forbid, "u_i");
                    self.fix(u(i), col[i], &mut fixed);
                }
            }
        }
        col[r - 1] = self.choose(&lst[r - 1], &[c2, beta, col[r - 3], col[r - 2]], "u_{r-1}");
        self.fix(u(r - 1), col[r - 1], &mut fixed);
        self.push(depth, StepTag::LongEar(sub), ear.interior.clone(), fixed);
    }

    /// Ear-chain with root path `v_1 … v_s` and the anchor outside
    /// `V(H) \ {v_1}`.
    fn ear_chain(&mut self, alive: &[usize], lists: &ListAssignment, depth: usize, chain: &EarChain) {
        let s = chain.s();
        let (v1, vs) = chain.root();
        let removed: Vec<usize> = chain.vertices().into_iter().filter(|&v| v != v1 && v != vs).collect();
        let rest = without(alive, &removed);
        let last = &chain.ears[s - 2];
        let sub = match (s, last.order()) {
            (3, 3) => ChainSub::S3H3,
            (3, 4) => ChainSub::S3H4,
            (3, 5) => ChainSub::S3H5,
            (3, r) => self.bug(&format!("chain with s = 3 and a last ear of order {r}")),
            _ => ChainSub::Long,
        };
        let mut fixed = Vec::new();
        match sub {
            ChainSub::Long => {
                self.rec(&rest, lists, depth + 1);
                self.chain_long(chain, lists, depth, &mut fixed);
            }
            ChainSub::S3H3 => {
                self.rec(&rest, lists, depth + 1);
                let (v2, u2) = (chain.path[1], last.interior[0]);
                let (c1, c2) = (self.color(v1), self.color(vs));
                let (alpha, beta) = (self.min_unique(v1), self.min_unique(vs));
                let a = self.choose(&Self::trimmed(lists, u2, 2), &[c1, c2, beta], "u_2");
                self.fix(u2, a, &mut fixed);
                let b = self.choose(&Self::trimmed(lists, v2, 4), &[c1, c2, alpha, beta, a], "v_2");
                self.fix(v2, b, &mut fixed);
                self.extend(&chain.ears[0], lists, depth);
            }
            ChainSub::S3H4 => self.chain_s3h4(chain, &rest, lists, depth, &mut fixed),
            ChainSub::S3H5 => {
                self.rec(&rest, lists, depth + 1);
                self.chain_s3h5(chain, lists, depth, &mut fixed);
            }
        }
        self.push(depth, StepTag::EarChain(sub), removed, fixed);
    }

    /// `s >= 4`: color `H_{s-1}` backwards from `v_s`, then `v_{s-1}`, then
    /// `v_2 … v_{s-2}` along the path, and finally extend over
    /// `H_1 … H_{s-2}` in order.
    fn chain_long(&mut self, chain: &EarChain, lists: &ListAssignment, depth: usize, fixed: &mut Vec<(usize, Color)>) {
        let s = chain.s();
        let v = |i: usize| chain.path[i - 1];
        let (c1, c2) = (self.color(v(1)), self.color(v(s)));
        let (alpha, beta) = (self.min_unique(v(1)), self.min_unique(v(s)));
        let last = &chain.ears[s - 2];
        let hv = last.vertices();
        let r = hv.len();
        let mut col = vec![0; r + 1];
        col[r] = c2;
        let lu = |i: usize| Self::trimmed(lists, hv[i - 1], 2);
        col[r - 1] = self.choose(&lu(r - 1), &[c2, beta], "u_{r-1}");
        self.fix(hv[r - 2], col[r - 1], fixed);
        for j in (2..=r - 2).rev() {
            col[j] = self.choose(&lu(j), &[c2, col[j + 1], col[j + 2]], "u_j");
            self.fix(hv[j - 1], col[j], fixed);
        }
        let pv = self.choose(&Self::trimmed(lists, v(s - 1), 4), &[c2, beta, col[2], col[3]], "v_{s-1}");
        self.fix(v(s - 1), pv, fixed);
        let mut prev = c1;
        for i in 2..=s - 2 {
            let mut forbid = vec![prev];
            if i == 2 {
                forbid.extend_from_slice(&[c1, alpha]);
            }
            if i == s - 2 {
                forbid.extend_from_slice(&[c2, pv, col[2]]);
            }
            let c = self.choose(&Self::trimmed(lists, v(i), 4), &forbid, "v_i");
            self.fix(v(i), c, fixed);
            prev = c;
        }
        for ear in &chain.ears[..s - 2] {
            self.extend(ear, lists, depth);
        }
    }

    /// `s = 3`, `H_2 = v_2 u_2 u_3 v_3`. A color `γ` of `u_2` (missing from
    /// `L(u_3)` when possible) is withheld from `v_1` and `v_3` before the
    /// recursive call, which guarantees a good color for `u_2` afterwards.
    fn chain_s3h4(
        &mut self,
        chain: &EarChain,
        rest: &[usize],
        lists: &ListAssignment,
        depth: usize,
        fixed: &mut Vec<(usize, Color)>,
    ) {
        let (v1, v2, v3) = (chain.path[0], chain.path[1], chain.path[2]);
        let (u2, u3) = (chain.ears[1].interior[0], chain.ears[1].interior[1]);
        let l2 = Self::trimmed(lists, u2, 2);
        let l3 = Self::trimmed(lists, u3, 2);
        let gamma = l2.iter().copied().find(|c| !l3.contains(c)).unwrap_or(l2[0]);
        let mut reduced = lists.clone();
        for w in [v1, v3] {
            let mut l = lists.get(w).clone();
            l.remove(&gamma);
            reduced.set(w, l);
        }
        self.rec(rest, &reduced, depth + 1);
        let (c1, c2) = (self.color(v1), self.color(v3));
        let (alpha, beta) = (self.min_unique(v1), self.min_unique(v3));
        let lv2 = Self::trimmed(lists, v2, 4);
        if beta == c1 {
            let a = self.choose(&l2, &[c1, c2], "u_2");
            self.fix(u2, a, fixed);
            let b = self.choose(&l3, &[c1, c2, a], "u_3");
            self.fix(u3, b, fixed);
            let c = self.choose(&lv2, &[c1, c2, alpha, a, b], "v_2");
            self.fix(v2, c, fixed);
        } else {
            let gp = l2
                .iter()
                .copied()
                .find(|&g| g != c1 && g != c2 && l3.iter().filter(|&&c| c != c2 && c != beta && c != g).count() >= 2)
                .unwrap_or_else(|| self.bug("no γ' for the 4-vertex last ear"));
            self.fix(u2, gp, fixed);
            let c = self.choose(&lv2, &[c1, c2, alpha, beta, gp], "v_2");
            self.fix(v2, c, fixed);
            let b = self.choose(&l3, &[c2, beta, gp, c], "u_3");
            self.fix(u3, b, fixed);
        }
        self.extend(&chain.ears[0], lists, depth);
    }

    /// `s = 3`, `H_2 = v_2 u_2 u_3 u_4 v_3`: fix `v_2` and `u_4` from short
    /// sublists so that `u_3` keeps two options, extend over `H_1`, and only
    /// then color `u_2` and `u_3` around the unique color of `v_2`.
    fn chain_s3h5(&mut self, chain: &EarChain, lists: &ListAssignment, depth: usize, fixed: &mut Vec<(usize, Color)>) {
        let (v1, v2, v3) = (chain.path[0], chain.path[1], chain.path[2]);
        let (u2, u3, u4) = (chain.ears[1].interior[0], chain.ears[1].interior[1], chain.ears[1].interior[2]);
        let (c1, c2) = (self.color(v1), self.color(v3));
        let (alpha, beta) = (self.min_unique(v1), self.min_unique(v3));
        let short = |list: Vec<Color>, drop: &[Color], k: usize| -> Vec<Color> {
            list.into_iter().filter(|c| !drop.contains(c)).take(k).collect()
        };
        let tv2 = short(Self::trimmed(lists, v2, 4), &[c1, c2, alpha, beta], 2);
        let tu3 = short(Self::trimmed(lists, u3, 2), &[c2], 3);
        let tu4 = short(Self::trimmed(lists, u4, 2), &[c2, beta], 2);
        if tv2.len() < 2 || tu3.len() < 3 || tu4.len() < 2 {
            self.bug("short lists for the 5-vertex last ear");
        }
        let (a, b) = match tv2.iter().copied().find(|c| tu4.contains(c)) {
            Some(c) => (c, c),
            None => tv2
                .iter()
                .flat_map(|&a| tu4.iter().map(move |&b| (a, b)))
                .find(|(a, b)| !tu3.contains(a) || !tu3.contains(b))
                .unwrap_or_else(|| self.bug("four colors cannot all lie in three")),
        };
        self.fix(v2, a, fixed);
        self.fix(u4, b, fixed);
        self.extend(&chain.ears[0], lists, depth);
        let gamma = self.min_unique(v2);
        let p2 = self.choose(&Self::trimmed(lists, u2, 2), &[a, b, gamma], "u_2");
        self.fix(u2, p2, fixed);
        let p3 = self.choose(&tu3, &[a, p2, b], "u_3");
        self.fix(u3, p3, fixed);
    }
}
