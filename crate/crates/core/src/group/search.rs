//! Backtracking search for simultaneous triple product collections, and
//! orbit representatives of `Sym_N` acting on characters of `H^N`.

use super::abelian::AbelianGroup;
use super::collection::TripleCollection;
use super::perm::SymPerm;
use super::tpp::Triple;

/// Result of [`stpp_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub collection: Option<TripleCollection>,
    pub nodes: u64,
    /// The node budget ran out before the search finished.
    pub budget_exhausted: bool,
}

struct Searcher<'a> {
    order: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
    targets: &'a [(usize, usize, usize)],
    sets: Vec<Vec<usize>>,
    budget: u64,
    nodes: u64,
    exhausted: bool,
}

impl Searcher<'_> {
    fn diff(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + self.neg[b]]
    }

    fn quotient(&self, s: &[usize], t: &[usize]) -> Vec<bool> {
        let mut q = vec![false; self.order];
        for &a in s {
            for &b in t {
                q[self.diff(a, b)] = true;
            }
        }
        q
    }

    /// Partial collections are checked as they stand: removing elements
    /// never creates a violation, so a violation now is a violation forever.
    fn consistent(&self) -> bool {
        let n = self.targets.len();
        let set = |i: usize, role: usize| &self.sets[3 * i + role];
        for i in 0..n {
            for j in 0..n {
                let qx = self.quotient(set(i, 0), set(j, 0));
                for k in 0..n {
                    let qy = self.quotient(set(j, 1), set(k, 1));
                    let qz = self.quotient(set(k, 2), set(i, 2));
                    let same = i == j && j == k;
                    for c in (0..self.order).filter(|&c| qz[c]) {
                        for a in (0..self.order).filter(|&a| qx[a]) {
                            let b = self.neg[self.add[a * self.order + c]];
                            if qy[b] && !(same && a == 0 && b == 0 && c == 0) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn target(&self, slot: usize) -> usize {
        let t = self.targets[slot / 3];
        [t.0, t.1, t.2][slot % 3]
    }

    fn fill(&mut self, slot: usize) -> bool {
        if slot == self.sets.len() {
            return true;
        }
        if self.sets[slot].len() == self.target(slot) {
            return self.fill(slot + 1);
        }
        let start = self.sets[slot].last().map_or(0, |&x| x + 1);
        // Translating X_i, Y_i, Z_i together, or every X (every Y, every Z)
        // together, preserves the property: X_i, Y_1 and Z_1 may contain 0.
        let pinned = self.sets[slot].is_empty() && (slot % 3 == 0 || slot < 3);
        let candidates = if pinned { 0..1 } else { start..self.order };
        for e in candidates {
            if self.nodes >= self.budget {
                self.exhausted = true;
                return false;
            }
            self.nodes += 1;
            self.sets[slot].push(e);
            if self.consistent() && self.fill(slot) {
                return true;
            }
            self.sets[slot].pop();
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

/// Finds `N = targets.len()` triples with `|X_i|, |Y_i|, |Z_i|` as given
/// that satisfy the simultaneous TPP in `group`.
///
/// Deterministic: slots are filled in the order `X_1, Y_1, Z_1, X_2, ...`,
/// each with increasing element indices, backtracking on the first
/// violation. `budget` caps the number of elements tried.
pub fn stpp_search(group: &AbelianGroup, targets: &[(usize, usize, usize)], budget: u64) -> SearchOutcome {
    let order = group.order();
    let impossible = targets.is_empty()
        || targets.iter().any(|&(a, b, c)| a == 0 || b == 0 || c == 0 || a > order || b > order || c > order);
    if impossible {
        return SearchOutcome { collection: None, nodes: 0, budget_exhausted: false };
    }
    let mut add = vec![0; order * order];
    for a in 0..order {
        for b in 0..order {
            add[a * order + b] = group.index_of(&group.add(&group.element(a), &group.element(b)));
        }
    }
    let neg = (0..order).map(|a| group.index_of(&group.neg(&group.element(a)))).collect();
    let mut s = Searcher {
        order,
        add,
        neg,
        targets,
        sets: vec![Vec::new(); 3 * targets.len()],
        budget,
        nodes: 0,
        exhausted: false,
    };
    let found = s.fill(0);
    let collection = found.then(|| {
        let tuples = |v: &[usize]| v.iter().map(|&i| group.element(i)).collect::<Vec<_>>();
        let triples = (0..targets.len())
            .map(|i| Triple { x: tuples(&s.sets[3 * i]), y: tuples(&s.sets[3 * i + 1]), z: tuples(&s.sets[3 * i + 2]) })
            .collect();
        TripleCollection::new(group.clone(), triples).expect("search only emits group elements")
    });
    SearchOutcome { collection, nodes: s.nodes, budget_exhausted: s.exhausted }
}

/// One representative per `Sym_N` orbit on characters of `H^N` (characters
/// named by `N`-tuples of `H` indices): the nondecreasing tuples, which are
/// the lexicographically least points of their orbits.
pub fn orbit_representatives(group: &AbelianGroup, n: usize) -> Vec<Vec<usize>> {
    fn extend(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, n: usize, m: usize) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for x in lo..m {
            cur.push(x);
            extend(out, cur, n, m);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut out, &mut Vec::with_capacity(n), n, group.order());
    out
}

/// The representative `chi0` of `chi`'s orbit and the lexicographically
/// least `tau` with `tau . chi0 = chi`.
pub fn orbit_transversal(chi: &[usize]) -> (Vec<usize>, SymPerm) {
    let mut rep = chi.to_vec();
    rep.sort_unstable();
    // (tau . chi0)(tau(u)) = chi0(u): send u to the first unused matching slot
    let mut used = vec![false; chi.len()];
    let images = rep
        .iter()
        .map(|v| {
            let s = (0..chi.len()).find(|&s| !used[s] && chi[s] == *v).expect("rep is a rearrangement of chi");
            used[s] = true;
            s
        })
        .collect();
    (rep, SymPerm::new(images).expect("bijection by construction"))
}

/// `C(|H| + N - 1, N)`
pub fn orbit_count(group: &AbelianGroup, n: usize) -> u128 {
    let m = group.order() as u128;
    (1..=n as u128).fold(1u128, |acc, i| acc * (m + i - 1) / i)
}
