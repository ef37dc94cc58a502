use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Monomial;

/// A term ordering on monomials in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// Total degree, ties broken lexicographically (`X_1 > X_2 > ...`).
    DegLex,
    /// Total degree, ties broken by reverse lexicographic order.
    DegRevLex,
    /// Block order: any monomial involving an eliminated variable is larger than
    /// every monomial free of them. Degree-revlex within each block.
    Elimination { eliminated: Vec<usize> },
}

/// Name of a degree-compatible order, for configuration surfaces.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeOrder {
    #[default]
    Deglex,
    Degrevlex,
}

impl From<DegreeOrder> for TermOrder {
    fn from(d: DegreeOrder) -> Self {
        match d {
            DegreeOrder::Deglex => TermOrder::DegLex,
            DegreeOrder::Degrevlex => TermOrder::DegRevLex,
        }
    }
}

fn revlex_tail(a: &[u16], b: &[u16], mask: impl Fn(usize) -> bool) -> Ordering {
    for i in (0..a.len()).rev() {
        if !mask(i) {
            continue;
        }
        if a[i] != b[i] {
            // smaller exponent in the last variable means larger monomial
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl TermOrder {
    pub fn elimination(eliminated: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = eliminated.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        TermOrder::Elimination { eliminated: v }
    }

    pub fn is_degree_compatible(&self) -> bool {
        match self {
            TermOrder::DegLex | TermOrder::DegRevLex => true,
            TermOrder::Elimination { eliminated } => eliminated.is_empty(),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (x, y) = (a.raw(), b.raw());
        match self {
            TermOrder::DegLex => a.degree().cmp(&b.degree()).then_with(|| x.cmp(y)),
            TermOrder::DegRevLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| revlex_tail(x, y, |_| true)),
            TermOrder::Elimination { eliminated } => {
                let in_block = |i: usize| eliminated.binary_search(&i).is_ok();
                let block_deg = |m: &[u16]| -> u32 {
                    eliminated.iter().map(|&i| m[i] as u32).sum()
                };
                let (bx, by) = (block_deg(x), block_deg(y));
                bx.cmp(&by)
                    .then_with(|| revlex_tail(x, y, in_block))
                    .then_with(|| (a.degree() - bx).cmp(&(b.degree() - by)))
                    .then_with(|| revlex_tail(x, y, |i| !in_block(i)))
            }
        }
    }

    /// `true` when the monomial avoids every eliminated variable.
    pub fn is_free_of_block(&self, m: &Monomial) -> bool {
        match self {
            TermOrder::Elimination { eliminated } => eliminated.iter().all(|&i| m.exp(i) == 0),
            _ => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn deglex_and_degrevlex_differ_on_classic_pair() {
        // X*Z^2 vs Y^3 ... and X Z vs Y^2
        let a = m(&[1, 0, 1]);
        let b = m(&[0, 2, 0]);
        assert_eq!(TermOrder::DegLex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(TermOrder::DegRevLex.cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn elimination_ranks_block_above_rest() {
        let ord = TermOrder::elimination([2]);
        assert_eq!(ord.cmp(&m(&[0, 0, 1]), &m(&[9, 9, 0])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[2, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert!(!ord.is_degree_compatible());
    }
}
