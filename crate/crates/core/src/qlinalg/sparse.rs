//! Sparse vectors and incremental echelon bases.
//!
//! Chain spaces of triangulated spaces are large and very sparse, so all chain
//! level elimination goes through [`Echelon`], which keeps one stored vector
//! per pivot, where the pivot is the largest index with a nonzero entry.

use std::collections::HashMap;

use super::rational::Rational;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Rational::one())] }
    }

    /// Collects pairs in any order, summing duplicates and dropping zeros.
    pub fn from_pairs(mut pairs: Vec<(usize, Rational)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut entries: Vec<(usize, Rational)> = Vec::with_capacity(pairs.len());
        for (i, x) in pairs {
            match entries.last_mut() {
                Some((j, y)) if *j == i => *y += &x,
                _ => entries.push((i, x)),
            }
        }
        entries.retain(|(_, x)| !x.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        let entries = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        SparseVec { entries }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        for (i, x) in &self.entries {
            v[*i] = x.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Rational)> {
        self.entries.iter()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |p| p.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Largest index with a nonzero entry.
    pub fn low(&self) -> Option<usize> {
        self.entries.last().map(|p| p.0)
    }

    fn low_entry(&self) -> Option<&(usize, Rational)> {
        self.entries.last()
    }

    pub fn scaled(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect() }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Rational, other: &SparseVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut s = self.clone();
        s.axpy(&Rational::one(), other);
        s
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut s = self.clone();
        s.axpy(&Rational::from_int(-1), other);
        s
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let mut acc = Rational::zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if j < i {
                b.next();
            } else {
                acc += &(x * y);
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Keeps only the entries whose index satisfies `keep`.
    pub fn filtered(&self, keep: impl Fn(usize) -> bool) -> SparseVec {
        SparseVec { entries: self.entries.iter().filter(|(i, _)| keep(*i)).cloned().collect() }
    }

    /// Reindexes through `f`; entries mapped to `None` are dropped.
    pub fn remapped(&self, f: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().filter_map(|(i, x)| f(*i).map(|j| (j, x.clone()))).collect())
    }
}

impl FromIterator<(usize, Rational)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Rational)>>(iter: T) -> Self {
        SparseVec::from_pairs(iter.into_iter().collect())
    }
}

/// Outcome of reducing a vector against an [`Echelon`].
#[derive(Clone, Debug)]
pub struct Reduction {
    /// Zero, or a vector whose low is not a stored pivot.
    pub remainder: SparseVec,
    /// Tag combination subtracted: `input = remainder + Σ stored`, expressed
    /// in tags as `input_tag = remainder_tag + tag`.
    pub tag: SparseVec,
}

/// Incremental echelon basis keyed by low index, with optional tags.
///
/// Invariant: stored vectors have pairwise distinct lows, and each stored
/// vector equals the combination of original inputs recorded in its tag.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    by_low: HashMap<usize, usize>,
    vecs: Vec<SparseVec>,
    tags: Vec<SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.vecs.len()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vecs
    }

    pub fn tags(&self) -> &[SparseVec] {
        &self.tags
    }

    pub fn has_pivot(&self, i: usize) -> bool {
        self.by_low.contains_key(&i)
    }

    /// Reduces `v` until it is zero or its low is not a pivot.
    pub fn reduce(&self, v: &SparseVec) -> Reduction {
        let mut r = v.clone();
        let mut tag = SparseVec::new();
        while let Some((low, x)) = r.low_entry() {
            let Some(&k) = self.by_low.get(low) else { break };
            let b = &self.vecs[k];
            let c = x / &b.low_entry().expect("stored vectors are nonzero").1;
            r.axpy(&(-&c), b);
            tag.axpy(&c, &self.tags[k]);
        }
        Reduction { remainder: r, tag }
    }

    /// Like [`Echelon::reduce`] but keeps reducing below non-pivot entries, so
    /// the remainder has no entry at any pivot index.
    pub fn reduce_fully(&self, v: &SparseVec) -> Reduction {
        let mut r = v.clone();
        let mut tag = SparseVec::new();
        let mut bound = usize::MAX;
        loop {
            let next = r.entries.iter().rev().find(|(i, _)| *i < bound && self.by_low.contains_key(i));
            let Some((i, x)) = next.cloned() else { break };
            let k = self.by_low[&i];
            let b = &self.vecs[k];
            let c = &x / &b.low_entry().expect("stored vectors are nonzero").1;
            r.axpy(&(-&c), b);
            tag.axpy(&c, &self.tags[k]);
            bound = i;
        }
        Reduction { remainder: r, tag }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).remainder.is_zero()
    }

    /// Inserts `v` carrying `tag`. Returns `Ok(pivot)` when `v` was
    /// independent, otherwise `Err(relation)` where `relation` is a tag
    /// combination whose underlying vector is zero.
    pub fn insert(&mut self, v: &SparseVec, tag: SparseVec) -> Result<usize, SparseVec> {
        let red = self.reduce(v);
        let t = tag.sub(&red.tag);
        match red.remainder.low() {
            None => Err(t),
            Some(low) => {
                self.by_low.insert(low, self.vecs.len());
                self.vecs.push(red.remainder);
                self.tags.push(t);
                Ok(low)
            }
        }
    }

    /// Inserts without tracking.
    pub fn push(&mut self, v: &SparseVec) -> bool {
        self.insert(v, SparseVec::new()).is_ok()
    }
}

/// Echelon basis that logs reduction steps instead of carrying tags.
///
/// Stored vector `k` equals its input minus `Σ c · stored[k']` over its log,
/// with every `k' < k`. Relations are unrolled only when an input reduces to
/// zero, which avoids the dense tags that accumulate on pivots of long
/// reduction chains. Inputs pushed without a source (such as denominators)
/// drop out of the unrolled relations.
#[derive(Clone, Debug, Default)]
pub struct LoggedEchelon {
    by_low: HashMap<usize, usize>,
    vecs: Vec<SparseVec>,
    sources: Vec<Option<usize>>,
    logs: Vec<Vec<(usize, Rational)>>,
}

impl LoggedEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.vecs.len()
    }

    fn reduce(&self, v: &SparseVec) -> (SparseVec, Vec<(usize, Rational)>) {
        let mut r = v.clone();
        let mut log = Vec::new();
        while let Some((low, x)) = r.low_entry() {
            let Some(&k) = self.by_low.get(low) else { break };
            let b = &self.vecs[k];
            let c = x / &b.low_entry().expect("stored vectors are nonzero").1;
            r.axpy(&(-&c), b);
            log.push((k, c));
        }
        (r, log)
    }

    /// Inserts `v` coming from `source`, or from no tracked source. Returns
    /// `Err(relation)` when `v` depends on earlier inputs: a combination of
    /// sources, with coefficient 1 on `source`, whose inputs sum into the
    /// span of the untracked inputs.
    pub fn insert(&mut self, v: &SparseVec, source: Option<usize>) -> Result<usize, SparseVec> {
        let (r, log) = self.reduce(v);
        match r.low() {
            Some(low) => {
                self.by_low.insert(low, self.vecs.len());
                self.vecs.push(r);
                self.sources.push(source);
                self.logs.push(log);
                Ok(low)
            }
            None => Err(self.unroll(source, log)),
        }
    }

    fn unroll(&self, source: Option<usize>, seed: Vec<(usize, Rational)>) -> SparseVec {
        // input − Σ a_k stored[k] = 0; substitute stored vectors from the top
        let Some(top) = seed.iter().map(|p| p.0).max() else {
            return source.map_or_else(SparseVec::new, SparseVec::unit);
        };
        let mut pending = vec![Rational::zero(); top + 1];
        for (k, c) in seed {
            pending[k] += &c;
        }
        let mut out: Vec<(usize, Rational)> = source.map(|s| (s, Rational::one())).into_iter().collect();
        for k in (0..=top).rev() {
            if pending[k].is_zero() {
                continue;
            }
            let a = std::mem::take(&mut pending[k]);
            if let Some(s) = self.sources[k] {
                out.push((s, -&a));
            }
            for (k2, c) in &self.logs[k] {
                pending[*k2] -= &(&a * c);
            }
        }
        SparseVec::from_pairs(out)
    }
}

/// Solves `Σ u_j cols[j] = target`, returning `u` or `None` if inconsistent.
pub fn solve_combination(cols: &[SparseVec], target: &SparseVec) -> Option<SparseVec> {
    let mut e = Echelon::new();
    for (j, c) in cols.iter().enumerate() {
        let _ = e.insert(c, SparseVec::unit(j));
    }
    let red = e.reduce(target);
    red.remainder.is_zero().then_some(red.tag)
}

/// Rank of a family of sparse vectors.
pub fn sparse_rank(vecs: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for v in vecs {
        e.push(v);
    }
    e.rank()
}
