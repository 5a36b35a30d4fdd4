//! Largest-area inscribed m-gons and smallest-ear peeling.
//!
//! The inscribed polygon is always taken on a subset of the host polygon's
//! vertices. Two independent solvers are provided: an exhaustive enumeration
//! over vertex subsets (shoelace on each subset) and an anchored dynamic
//! program over fan triangles. The first is the oracle for the second.

use crate::error::{Error, Result};
use crate::geom::{wedge, ConvexPolygon};
use crate::scalar::Scalar;

/// Largest `n` accepted by [`max_inscribed_bruteforce`].
pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct InscribedResult<S> {
    /// Strictly increasing vertex indices of the host polygon.
    pub indices: Vec<usize>,
    pub area: S,
    /// `area / host area`, in `(0, 1]`.
    pub ratio: S,
}

fn check_m(n: usize, m: usize) -> Result<()> {
    if m < 3 || m > n {
        return Err(Error::OutOfRange { n, m, min: 3, max: n });
    }
    Ok(())
}

/// Exhaustive maximum over all `C(n, m)` vertex subsets. Ties go to the
/// lexicographically smallest index list.
pub fn max_inscribed_bruteforce<S: Scalar>(
    polygon: &ConvexPolygon<S>,
    m: usize,
) -> Result<InscribedResult<S>> {
    let n = polygon.len();
    check_m(n, m)?;
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge { n, limit: BRUTE_FORCE_LIMIT });
    }
    let pair = pair_wedges(polygon);

    let mut search = Exhaustive { pair: &pair, n, m, subset: Vec::with_capacity(m), best: None };
    for first in 0..=n - m {
        search.subset.push(first);
        search.extend(S::zero());
        search.subset.pop();
    }
    let (indices, area) = search.best.expect("at least one subset");
    let ratio = area.clone() / polygon.area();
    Ok(InscribedResult { indices, area, ratio })
}

/// Lexicographic depth-first walk over index subsets carrying the open
/// shoelace sum of the current prefix.
struct Exhaustive<'a, S> {
    pair: &'a [Vec<S>],
    n: usize,
    m: usize,
    subset: Vec<usize>,
    best: Option<(Vec<usize>, S)>,
}

impl<S: Scalar> Exhaustive<'_, S> {
    fn extend(&mut self, open: S) {
        let last = *self.subset.last().expect("nonempty prefix");
        if self.subset.len() == self.m {
            let area = S::add_ref(&open, &self.pair[last][self.subset[0]]);
            let better = match &self.best {
                None => true,
                Some((_, b)) => S::clearly_greater(&area, b),
            };
            if better {
                self.best = Some((self.subset.clone(), area));
            }
            return;
        }
        let remaining = self.m - self.subset.len();
        for next in last + 1..=self.n - remaining {
            self.subset.push(next);
            self.extend(S::add_ref(&open, &self.pair[last][next]));
            self.subset.pop();
        }
    }
}

/// Dynamic-programming maximum, `O(m·n³)`.
///
/// For each anchor `i` (the smallest chosen index) the table `best[k][j]`
/// holds the largest shoelace tail `Σ w(j_t, j_{t+1}) + w(j_last, i)` over
/// chains of `k` further vertices after `j`, where `w` is the wedge of
/// position vectors. Reconstruction takes the smallest index that attains
/// each optimum, so ties resolve exactly like the brute force.
pub fn max_inscribed_dp<S: Scalar>(
    polygon: &ConvexPolygon<S>,
    m: usize,
) -> Result<InscribedResult<S>> {
    let n = polygon.len();
    check_m(n, m)?;
    let pair = pair_wedges(polygon);

    let mut best: Option<(Vec<usize>, S)> = None;
    for anchor in 0..=n - m {
        let (indices, area) = best_for_anchor(&pair, anchor, m);
        let better = match &best {
            None => true,
            Some((_, b)) => S::clearly_greater(&area, b),
        };
        if better {
            best = Some((indices, area));
        }
    }
    let (indices, area) = best.expect("at least one anchor");
    let ratio = area.clone() / polygon.area();
    Ok(InscribedResult { indices, area, ratio })
}

/// `w[i][j] = v_i ∧ v_j` for position vectors; antisymmetric.
fn pair_wedges<S: Scalar>(polygon: &ConvexPolygon<S>) -> Vec<Vec<S>> {
    let vs = polygon.vertices();
    let n = vs.len();
    let mut w = vec![vec![S::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = wedge(&vs[i], &vs[j]);
            w[j][i] = -x.clone();
            w[i][j] = x;
        }
    }
    w
}

fn best_for_anchor<S: Scalar>(pair: &[Vec<S>], anchor: usize, m: usize) -> (Vec<usize>, S) {
    let n = pair.len();
    // table[k][j]: best tail choosing k more vertices strictly after j.
    // Only j with n - 1 - j >= k is meaningful.
    let mut table: Vec<Vec<Option<S>>> = vec![vec![None; n]; m - 1];
    for j in anchor + 1..n {
        table[0][j] = Some(pair[j][anchor].clone());
    }
    for k in 1..m - 1 {
        // j is preceded by the anchor and m - 2 - k other chosen vertices.
        let lo = anchor + m - 1 - k;
        for j in (lo..n).rev() {
            if n - 1 - j < k {
                continue;
            }
            let mut cur: Option<S> = None;
            for next in j + 1..n {
                let Some(rest) = &table[k - 1][next] else { continue };
                let cand = S::add_ref(&pair[j][next], rest);
                cur = match cur {
                    Some(c) if !S::clearly_greater(&cand, &c) => Some(c),
                    _ => Some(cand),
                };
            }
            table[k][j] = cur;
        }
    }

    let k_top = m - 2;
    let mut first: Option<(usize, S)> = None;
    for j in anchor + 1..n {
        if let Some(v) = &table[k_top][j] {
            let v = S::add_ref(&pair[anchor][j], v);
            match &first {
                Some((_, b)) if !S::clearly_greater(&v, b) => {}
                _ => first = Some((j, v)),
            }
        }
    }
    let (mut j, total) = first.expect("anchor leaves room for m vertices");

    let mut indices = Vec::with_capacity(m);
    indices.push(anchor);
    indices.push(j);
    let mut need = table[k_top][j].clone().expect("chosen above");
    for k in (1..=k_top).rev() {
        let next = (j + 1..n)
            .find(|&nx| match &table[k - 1][nx] {
                Some(rest) => S::ties(&S::add_ref(&pair[j][nx], rest), &need),
                None => false,
            })
            .expect("optimum is attained by some successor");
        need = table[k - 1][next].clone().expect("checked above");
        indices.push(next);
        j = next;
    }
    (indices, total)
}

/// Removes the vertex whose ear is smallest (smallest index on ties).
/// Returns the peeled polygon, the removed index and `Δ(peeled)/Δ(original)`.
pub fn peel_smallest_ear<S: Scalar>(
    polygon: &ConvexPolygon<S>,
) -> Result<(ConvexPolygon<S>, usize, S)> {
    if polygon.len() <= 3 {
        return Err(Error::NothingToPeel);
    }
    let (k, ratio) = polygon.min_ear_ratio();
    Ok((polygon.without_vertex(k), k, S::one() - ratio))
}

/// Sequence `P_n, P_{n−1}, …, P_m` produced by repeated smallest-ear peeling.
#[derive(Clone, Debug, PartialEq)]
pub struct PeelChain<S> {
    pub polygons: Vec<ConvexPolygon<S>>,
    /// Index (within the polygon of that step) of the deleted vertex.
    pub removed_indices: Vec<usize>,
    /// `Δ(P_k) / Δ(P_{k+1})` for each step.
    pub step_ratios: Vec<S>,
}

impl<S: Scalar> PeelChain<S> {
    /// `Δ(P_m) / Δ(P_n)`.
    pub fn product(&self) -> S {
        self.step_ratios
            .iter()
            .fold(S::one(), |acc, r| acc * r.clone())
    }

    pub fn last(&self) -> &ConvexPolygon<S> {
        self.polygons.last().expect("chain holds at least the input")
    }
}

pub fn peel_chain<S: Scalar>(polygon: &ConvexPolygon<S>, m: usize) -> Result<PeelChain<S>> {
    let n = polygon.len();
    if m < 3 || m >= n {
        return Err(Error::OutOfRange { n, m, min: 3, max: n - 1 });
    }
    let mut chain = PeelChain {
        polygons: vec![polygon.clone()],
        removed_indices: Vec::with_capacity(n - m),
        step_ratios: Vec::with_capacity(n - m),
    };
    while chain.last().len() > m {
        let (next, k, r) = peel_smallest_ear(chain.last())?;
        chain.polygons.push(next);
        chain.removed_indices.push(k);
        chain.step_ratios.push(r);
    }
    Ok(chain)
}
