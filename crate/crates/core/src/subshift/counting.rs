//! Exact pattern counting for subshifts of finite type.
//!
//! Counting walks the window's cells in canonical order, backtracking over
//! symbol choices and checking each forbidden-pattern occurrence at its last
//! cell. Partial assignments that can no longer influence a pending
//! constraint are merged: the memo key is the assignment restricted to the
//! *live* cells (those still referenced by a constraint reaching past the
//! frontier), which turns backtracking into a transfer-style dynamic program.
//! Counts are exact big integers throughout.
//!
//! Extendability is the same walk with the window's cells ordered first:
//! after the window is assigned, a memoized search decides whether any
//! completion of the margin avoids all forbidden occurrences, so the count
//! of extendable patterns never enumerates them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Pattern, Subshift, SubshiftError, Symbol};
use crate::group::FiniteSubset;
use crate::group::GroupElement;

/// One translated forbidden pattern inside the compiled window: pairs of
/// (cell position in walk order, required symbol), sorted by position.
type Occurrence = Vec<(usize, u8)>;

struct Window {
    cells: Vec<GroupElement>,
    occurrences: Vec<Occurrence>,
    /// Occurrence ids whose last cell is `k`.
    by_last: Vec<Vec<usize>>,
    /// `live[k]`: cells `< k` still referenced by an occurrence whose last
    /// cell is `>= k`, sorted; `live[cells.len()]` is the boundary frontier.
    live: Vec<Vec<usize>>,
}

fn compile(sft: &Subshift, order: Vec<GroupElement>) -> Window {
    let group = sft.group();
    let index: BTreeMap<&GroupElement, usize> =
        order.iter().enumerate().map(|(i, g)| (g, i)).collect();

    let mut seen: BTreeSet<Occurrence> = BTreeSet::new();
    for p in sft.forbidden() {
        let anchor = p.iter().next().expect("forbidden domains are nonempty").0.clone();
        let anchor_inv = group.inv_unchecked(&anchor);
        for f in &order {
            // The translate t placing the pattern's anchor cell on f.
            let t = group.mul_unchecked(&anchor_inv, f);
            let mut occ: Occurrence = Vec::with_capacity(p.len());
            let mut inside = true;
            for (d, s) in p.iter() {
                match index.get(&group.mul_unchecked(d, &t)) {
                    Some(&i) => occ.push((i, s.0)),
                    None => {
                        inside = false;
                        break;
                    }
                }
            }
            if inside {
                occ.sort_unstable();
                occ.dedup();
                seen.insert(occ);
            }
        }
    }
    let occurrences: Vec<Occurrence> = seen.into_iter().collect();

    let n = order.len();
    let mut by_last = vec![Vec::new(); n];
    let mut reach: Vec<usize> = (0..n).collect();
    for (id, occ) in occurrences.iter().enumerate() {
        let last = occ.last().expect("occurrences are nonempty").0;
        by_last[last].push(id);
        for (ci, _) in occ {
            reach[*ci] = reach[*ci].max(last);
        }
    }
    let live = (0..=n)
        .map(|k| (0..k.min(n)).filter(|&j| j < k && reach[j] >= k).collect())
        .collect();
    Window { cells: order, occurrences, by_last, live }
}

impl Window {
    /// Does assigning `sym` at cell `k` complete a forbidden occurrence,
    /// given the live-cell symbols in `state` (keyed by `live[k]`)?
    fn violates(&self, k: usize, state: &[u8], sym: u8) -> bool {
        'occ: for &id in &self.by_last[k] {
            for &(ci, req) in &self.occurrences[id] {
                let have = if ci == k {
                    sym
                } else {
                    let pos = self.live[k].binary_search(&ci).expect("cell is live");
                    state[pos]
                };
                if have != req {
                    continue 'occ;
                }
            }
            return true;
        }
        false
    }

    /// The state for step `k+1` after assigning `sym` at cell `k`.
    fn project(&self, k: usize, state: &[u8], sym: u8) -> Vec<u8> {
        self.live[k + 1]
            .iter()
            .map(|&j| {
                if j == k {
                    sym
                } else {
                    state[self.live[k].binary_search(&j).expect("cell stays live")]
                }
            })
            .collect()
    }

    /// Exact count of admissible assignments of cells `0..limit`, grouped by
    /// the live state at the `limit` frontier.
    fn count_prefixes(&self, alphabet: usize, limit: usize) -> BTreeMap<Vec<u8>, BigUint> {
        let mut states: BTreeMap<Vec<u8>, BigUint> = BTreeMap::new();
        states.insert(Vec::new(), BigUint::one());
        for k in 0..limit {
            let mut next: BTreeMap<Vec<u8>, BigUint> = BTreeMap::new();
            for (state, cnt) in &states {
                for sym in 0..alphabet {
                    let sym = sym as u8;
                    if self.violates(k, state, sym) {
                        continue;
                    }
                    let projected = self.project(k, state, sym);
                    *next.entry(projected).or_insert_with(BigUint::zero) += cnt;
                }
            }
            states = next;
        }
        states
    }

    /// Whether cells `k..` admit any admissible completion from `state`.
    fn completion_exists(
        &self,
        alphabet: usize,
        k: usize,
        state: &[u8],
        memo: &mut HashMap<(usize, Vec<u8>), bool>,
    ) -> bool {
        if k == self.cells.len() {
            return true;
        }
        let key = (k, state.to_vec());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut found = false;
        for sym in 0..alphabet {
            let sym = sym as u8;
            if self.violates(k, state, sym) {
                continue;
            }
            let projected = self.project(k, state, sym);
            if self.completion_exists(alphabet, k + 1, &projected, memo) {
                found = true;
                break;
            }
        }
        memo.insert(key, found);
        found
    }
}

fn validate_window(sft: &Subshift, window: &FiniteSubset) -> Result<(), SubshiftError> {
    if window.group() != sft.group() {
        return Err(crate::group::GroupError::MixedGroups.into());
    }
    if window.is_empty() {
        return Err(SubshiftError::EmptyWindow);
    }
    Ok(())
}

/// Walk order for extendability: window cells first, margin remainder after.
fn window_first_order(window: &FiniteSubset, margin: &FiniteSubset) -> Vec<GroupElement> {
    window
        .iter()
        .cloned()
        .chain(margin.iter().filter(|g| !window.contains(g)).cloned())
        .collect()
}

/// Exact number of assignments `window -> alphabet` containing no translated
/// forbidden pattern with domain inside the window.
pub fn count_locally_admissible(
    sft: &Subshift,
    window: &FiniteSubset,
) -> Result<BigUint, SubshiftError> {
    validate_window(sft, window)?;
    if sft.forbidden().is_empty() {
        return Ok(BigUint::from(sft.alphabet_len()).pow(window.len() as u32));
    }
    let win = compile(sft, window.iter().cloned().collect());
    Ok(win.count_prefixes(sft.alphabet_len(), win.cells.len()).values().sum())
}

/// Exact number of window patterns admitting at least one locally admissible
/// extension to the margin. Never exceeds [`count_locally_admissible`].
pub fn count_extendable(
    sft: &Subshift,
    window: &FiniteSubset,
    margin: &FiniteSubset,
) -> Result<BigUint, SubshiftError> {
    validate_window(sft, window)?;
    if !window.is_subset(margin) {
        return Err(SubshiftError::NotWithinMargin);
    }
    if sft.forbidden().is_empty() {
        return Ok(BigUint::from(sft.alphabet_len()).pow(window.len() as u32));
    }
    let win = compile(sft, window_first_order(window, margin));
    let boundary = win.count_prefixes(sft.alphabet_len(), window.len());
    let mut memo = HashMap::new();
    let mut total = BigUint::zero();
    for (state, cnt) in boundary {
        if win.completion_exists(sft.alphabet_len(), window.len(), &state, &mut memo) {
            total += cnt;
        }
    }
    Ok(total)
}

/// All extendable window patterns, in canonical (cell-order lexicographic)
/// order. Intended for desk-scale windows: the list has
/// [`count_extendable`]-many entries.
pub fn enumerate_extendable(
    sft: &Subshift,
    window: &FiniteSubset,
    margin: &FiniteSubset,
) -> Result<Vec<Pattern>, SubshiftError> {
    validate_window(sft, window)?;
    if !window.is_subset(margin) {
        return Err(SubshiftError::NotWithinMargin);
    }
    let win = compile(sft, window_first_order(window, margin));
    let alphabet = sft.alphabet_len();
    let w = window.len();
    let mut memo = HashMap::new();
    let mut out = Vec::new();
    let mut assignment: Vec<u8> = Vec::with_capacity(w);
    // Iterative DFS in symbol order yields lexicographic output.
    fn dfs(
        win: &Window,
        alphabet: usize,
        w: usize,
        k: usize,
        state: &[u8],
        assignment: &mut Vec<u8>,
        memo: &mut HashMap<(usize, Vec<u8>), bool>,
        out: &mut Vec<Vec<u8>>,
    ) {
        if k == w {
            if win.completion_exists(alphabet, k, state, memo) {
                out.push(assignment.clone());
            }
            return;
        }
        for sym in 0..alphabet {
            let sym = sym as u8;
            if win.violates(k, state, sym) {
                continue;
            }
            let projected = win.project(k, state, sym);
            assignment.push(sym);
            dfs(win, alphabet, w, k + 1, &projected, assignment, memo, out);
            assignment.pop();
        }
    }
    let mut raw: Vec<Vec<u8>> = Vec::new();
    dfs(&win, alphabet, w, 0, &[], &mut assignment, &mut memo, &mut raw);
    for a in raw {
        let cells = win.cells[..w].iter().cloned().zip(a.into_iter().map(Symbol));
        out.push(Pattern::new(sft.group(), cells)?);
    }
    Ok(out)
}

/// All locally admissible window patterns, in canonical order.
pub fn enumerate_locally_admissible(
    sft: &Subshift,
    window: &FiniteSubset,
) -> Result<Vec<Pattern>, SubshiftError> {
    enumerate_extendable(sft, window, window)
}

/// Draws one locally admissible pattern on the window uniformly at random
/// cell-by-cell (each cell choosing among symbols that still admit a
/// completion), or `None` when the window admits no pattern at all.
/// Deterministic per seed.
pub fn sample_locally_admissible(
    sft: &Subshift,
    window: &FiniteSubset,
    seed: u64,
) -> Result<Option<Pattern>, SubshiftError> {
    validate_window(sft, window)?;
    let win = compile(sft, window.iter().cloned().collect());
    let alphabet = sft.alphabet_len();
    let mut memo = HashMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state: Vec<u8> = Vec::new();
    let mut assignment: Vec<u8> = Vec::with_capacity(win.cells.len());
    for k in 0..win.cells.len() {
        let mut viable: Vec<(u8, Vec<u8>)> = Vec::new();
        for sym in 0..alphabet {
            let sym = sym as u8;
            if win.violates(k, &state, sym) {
                continue;
            }
            let projected = win.project(k, &state, sym);
            if win.completion_exists(alphabet, k + 1, &projected, &mut memo) {
                viable.push((sym, projected));
            }
        }
        if viable.is_empty() {
            return Ok(None);
        }
        let (sym, projected) = viable.swap_remove(rng.gen_range(0..viable.len()));
        assignment.push(sym);
        state = projected;
    }
    let cells = win.cells.iter().cloned().zip(assignment.into_iter().map(Symbol));
    Ok(Some(Pattern::new(sft.group(), cells)?))
}
