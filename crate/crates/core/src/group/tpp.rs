//! Triple product property checks.
//!
//! With `Q(S, T) = { s t^-1 }`, subsets `X, Y, Z` have the TPP when
//! `q_x q_y q_z = 1` with `q_x in Q(X, X)`, `q_y in Q(Y, Y)`, `q_z in Q(Z, Z)`
//! forces `q_x = q_y = q_z = 1`. A collection of triples has the simultaneous
//! TPP when `q_x q_y q_z = 1` with `q_x in Q(X_i, X_j)`, `q_y in Q(Y_j, Y_k)`,
//! `q_z in Q(Z_k, Z_i)` forces all three to be `1` and `i = j = k`.

use std::collections::HashSet;
use std::fmt::Debug;

use super::wreath::FiniteGroup;
use crate::error::{Error, Result};

/// `{ s t^-1 : s in S, t in T }` in first-seen order.
pub fn quotient_set<G: FiniteGroup>(group: &G, s: &[G::Elem], t: &[G::Elem]) -> Vec<G::Elem> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in s {
        for b in t {
            let q = group.op(a, &group.inverse(b));
            if seen.insert(q.clone()) {
                out.push(q);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TppWitness<E> {
    pub qx: E,
    pub qy: E,
    pub qz: E,
}

/// Exhaustive TPP check; `Ok(None)` when the property holds.
///
/// Scans `q_z` then `q_x` in first-seen quotient order and reports the
/// first non-trivial solution of `q_x q_y q_z = 1`.
pub fn tpp_check<G: FiniteGroup>(
    group: &G,
    x: &[G::Elem],
    y: &[G::Elem],
    z: &[G::Elem],
) -> Result<Option<TppWitness<G::Elem>>> {
    if x.is_empty() || y.is_empty() || z.is_empty() {
        return Err(Error::EmptySubset);
    }
    check_members(group, [x, y, z].into_iter().flatten())?;
    Ok(first_solution(group, x, x, y, y, z, z, true).map(|(qx, qy, qz)| TppWitness { qx, qy, qz }))
}

fn check_members<'a, G: FiniteGroup>(group: &G, mut elems: impl Iterator<Item = &'a G::Elem>) -> Result<()>
where
    G::Elem: 'a,
{
    match elems.find(|e| !group.contains(e)) {
        Some(e) => Err(Error::GroupMismatch(format!("{e:?} is not a group element"))),
        None => Ok(()),
    }
}

/// First `(q_x, q_y, q_z)` with product `1` drawn from
/// `Q(x1, x2) x Q(y1, y2) x Q(z1, z2)`; the all-identity solution is skipped
/// when `skip_trivial`.
#[allow(clippy::too_many_arguments)]
fn first_solution<G: FiniteGroup>(
    group: &G,
    x1: &[G::Elem],
    x2: &[G::Elem],
    y1: &[G::Elem],
    y2: &[G::Elem],
    z1: &[G::Elem],
    z2: &[G::Elem],
    skip_trivial: bool,
) -> Option<(G::Elem, G::Elem, G::Elem)> {
    let qx = quotient_set(group, x1, x2);
    let qy: HashSet<G::Elem> = quotient_set(group, y1, y2).into_iter().collect();
    let qz = quotient_set(group, z1, z2);
    for c in &qz {
        let cinv = group.inverse(c);
        for a in &qx {
            // q_y = q_x^-1 q_z^-1
            let b = group.op(&group.inverse(a), &cinv);
            if qy.contains(&b) {
                let trivial = group.is_identity(a) && group.is_identity(&b) && group.is_identity(c);
                if !(skip_trivial && trivial) {
                    return Some((a.clone(), b, c.clone()));
                }
            }
        }
    }
    None
}

/// One `(X_i, Y_i, Z_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triple<E> {
    pub x: Vec<E>,
    pub y: Vec<E>,
    pub z: Vec<E>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StppWitness<E> {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub qx: E,
    pub qy: E,
    pub qz: E,
}

/// Exhaustive simultaneous-TPP check over all `(i, j, k)` in lexicographic order.
pub fn stpp_check<G: FiniteGroup>(group: &G, triples: &[Triple<G::Elem>]) -> Result<Option<StppWitness<G::Elem>>> {
    for t in triples {
        if t.x.is_empty() || t.y.is_empty() || t.z.is_empty() {
            return Err(Error::EmptySubset);
        }
        check_members(group, t.x.iter().chain(&t.y).chain(&t.z))?;
    }
    let n = triples.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let same = i == j && j == k;
                let (ti, tj, tk) = (&triples[i], &triples[j], &triples[k]);
                if let Some((qx, qy, qz)) = first_solution(group, &ti.x, &tj.x, &tj.y, &tk.y, &tk.z, &ti.z, same) {
                    return Ok(Some(StppWitness { i, j, k, qx, qy, qz }));
                }
            }
        }
    }
    Ok(None)
}
