use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{parse_collections, TripleCollection};
use crate::stability::least_squares;

/// Instantiated members `(H_N, Y_N)` of an Abelian STP family, keyed by `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct StppFamily {
    members: BTreeMap<usize, TripleCollection>,
    claimed: Option<(f64, f64)>,
}

impl StppFamily {
    /// Checks the shape of every member: no repeated `N`, and
    /// `prod |X_i| = prod |Y_i| = prod |Z_i|`. The STPP itself is checked by
    /// [`StppFamily::verify`].
    pub fn new(members: Vec<TripleCollection>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for c in members {
            if c.is_empty() {
                return Err(Error::InvalidArgument("family member with N = 0".into()));
            }
            let (x, y, z) = c.products();
            if x != y || y != z {
                return Err(Error::InvalidArgument(format!(
                    "member N = {} has unequal products: prod|X_i| = {x}, prod|Y_i| = {y}, prod|Z_i| = {z}",
                    c.len()
                )));
            }
            let n = c.len();
            if map.insert(n, c).is_some() {
                return Err(Error::InvalidArgument(format!("family lists N = {n} twice")));
            }
        }
        if map.is_empty() {
            return Err(Error::InvalidArgument("family has no members".into()));
        }
        Ok(Self { members: map, claimed: None })
    }

    /// Claimed growth parameters `(alpha, beta)`; recorded, never checked.
    pub fn with_claimed(mut self, alpha: f64, beta: f64) -> Self {
        self.claimed = Some((alpha, beta));
        self
    }

    pub fn claimed(&self) -> Option<(f64, f64)> {
        self.claimed
    }

    pub fn member(&self, n: usize) -> Option<&TripleCollection> {
        self.members.get(&n)
    }

    pub fn members(&self) -> impl Iterator<Item = (usize, &TripleCollection)> {
        self.members.iter().map(|(&n, c)| (n, c))
    }

    /// `k_N`
    pub fn k(&self, n: usize) -> Option<usize> {
        self.members.get(&n).map(|c| c.products().0)
    }

    /// Runs the exhaustive simultaneous-TPP check on every member.
    pub fn verify(&self) -> Result<()> {
        for (n, c) in &self.members {
            if let Some(w) = c.stpp_witness()? {
                return Err(Error::StppViolation(format!(
                    "member N = {n}: (i, j, k) = ({}, {}, {}), q_x = {:?}, q_y = {:?}, q_z = {:?}",
                    w.i + 1,
                    w.j + 1,
                    w.k + 1,
                    w.qx,
                    w.qy,
                    w.qz
                )));
            }
        }
        Ok(())
    }

    /// Parses members and optional `alpha:` / `beta:` lines; does not verify.
    pub fn parse(text: &str) -> Result<(Self, bool)> {
        let (blocks, extra) = parse_collections(text)?;
        let certified = !blocks.is_empty() && blocks.iter().all(|b| b.certified);
        let mut alpha = None;
        let mut beta = None;
        for (line, key, value) in extra {
            let v: f64 = value.parse().map_err(|_| Error::parse(line, format!("bad number {value:?}")))?;
            match key.as_str() {
                "alpha" => alpha = Some(v),
                "beta" => beta = Some(v),
                _ => return Err(Error::parse(line, format!("unknown key {key:?}"))),
            }
        }
        let mut family = Self::new(blocks.into_iter().map(|b| b.collection).collect())?;
        match (alpha, beta) {
            (Some(a), Some(b)) => family = family.with_claimed(a, b),
            (None, None) => {}
            _ => return Err(Error::parse(0, "alpha and beta must be given together")),
        }
        Ok((family, certified))
    }

    pub fn to_text(&self, certified: bool) -> String {
        let mut out = String::new();
        if let Some((a, b)) = self.claimed {
            out.push_str("# claimed growth parameters, measured only\n");
            out.push_str(&format!("alpha: {a}\nbeta: {b}\n"));
        }
        for c in self.members.values() {
            out.push_str(&c.to_text(certified));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthPoint {
    pub degree: usize,
    pub group_order: usize,
    pub k: usize,
}

/// Finite-sample fits of `log |H_N|` against `log N` (slope `alpha_hat`) and
/// of `log k_N` against `N log N` (slope `beta_hat`).
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub points: Vec<GrowthPoint>,
    pub alpha_hat: Option<f64>,
    pub beta_hat: Option<f64>,
    pub claimed: Option<(f64, f64)>,
    /// False when a fit is missing, `alpha_hat <= 0`, `beta_hat <= 0`, or
    /// `alpha_hat < 2 beta_hat + 1`.
    pub conforming: bool,
}

impl fmt::Display for GrowthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N,|H_N|,k_N")?;
        for p in &self.points {
            writeln!(f, "{},{},{}", p.degree, p.group_order, p.k)?;
        }
        let show = |v: Option<f64>| v.map_or("n/a".to_string(), |x| format!("{x:.6}"));
        writeln!(f, "alpha_hat = {}", show(self.alpha_hat))?;
        writeln!(f, "beta_hat = {}", show(self.beta_hat))?;
        if let Some((a, b)) = self.claimed {
            writeln!(f, "claimed (measured only): alpha = {a}, beta = {b}")?;
        }
        write!(f, "growth {}", if self.conforming { "conforming" } else { "non-conforming" })
    }
}

pub fn measure_growth(family: &StppFamily, degrees: impl IntoIterator<Item = usize>) -> Result<GrowthReport> {
    let mut points = Vec::new();
    for n in degrees {
        let c = family.member(n).ok_or(Error::FamilyExhausted(n))?;
        let (x, y, z) = c.products();
        if x != y || y != z {
            return Err(Error::InvalidArgument(format!("member N = {n} has unequal products {x}, {y}, {z}")));
        }
        points.push(GrowthPoint { degree: n, group_order: c.group.order(), k: x });
    }
    let alpha_hat = least_squares(
        &points.iter().map(|p| ((p.degree as f64).ln(), (p.group_order as f64).ln())).collect::<Vec<_>>(),
    )
    .map(|f| f.0);
    let beta_hat = least_squares(
        &points
            .iter()
            .map(|p| {
                let n = p.degree as f64;
                (n * n.ln(), (p.k as f64).ln())
            })
            .collect::<Vec<_>>(),
    )
    .map(|f| f.0);
    let conforming = match (alpha_hat, beta_hat) {
        (Some(a), Some(b)) => a > 0.0 && b > 0.0 && a >= 2.0 * b + 1.0,
        _ => false,
    };
    Ok(GrowthReport { points, alpha_hat, beta_hat, claimed: family.claimed, conforming })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{AbelianGroup, Triple};

    fn single(x: &[usize], y: &[usize], z: &[usize]) -> Triple<Vec<usize>> {
        let e = |v: &[usize]| v.iter().map(|&a| vec![a]).collect();
        Triple { x: e(x), y: e(y), z: e(z) }
    }

    #[test]
    fn unequal_products_rejected() {
        let g = AbelianGroup::cyclic(8);
        let c = TripleCollection::new(g, vec![single(&[0, 1], &[0], &[0])]).unwrap();
        assert!(StppFamily::new(vec![c]).unwrap_err().to_string().contains("unequal products"));
    }

    #[test]
    fn text_round_trip_with_claims() {
        let g = AbelianGroup::cyclic(8);
        let c = TripleCollection::new(g, vec![single(&[0, 1], &[0, 2], &[0, 4])]).unwrap();
        let fam = StppFamily::new(vec![c]).unwrap().with_claimed(3.0, 1.0);
        fam.verify().unwrap();
        let (back, certified) = StppFamily::parse(&fam.to_text(true)).unwrap();
        assert!(certified);
        assert_eq!(back, fam);
        let (_, certified) = StppFamily::parse(&fam.to_text(false)).unwrap();
        assert!(!certified);
    }

    #[test]
    fn degenerate_growth_is_flagged() {
        // the same group and singleton triples at every N
        let g = AbelianGroup::cyclic(4);
        let members = (1..=3)
            .map(|n| {
                let triples = (0..n).map(|_| single(&[0], &[0], &[0])).collect();
                TripleCollection::new(g.clone(), triples).unwrap()
            })
            .collect();
        let fam = StppFamily::new(members).unwrap();
        let r = measure_growth(&fam, 1..=3).unwrap();
        assert_eq!(r.alpha_hat, Some(0.0));
        assert!(!r.conforming);
        assert!(r.to_string().contains("non-conforming"));
        assert!(matches!(measure_growth(&fam, [4]), Err(Error::FamilyExhausted(4))));
    }
}
