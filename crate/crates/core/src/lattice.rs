//! Integer lattice vectors, symmetric generating sets for Z^d and the
//! plain-text generating-set file format.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, SprawlError};
use crate::rational::{int, RatPoint};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn to_rational(&self) -> RatPoint {
        self.0.iter().map(|&x| int(x)).collect()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A symmetric finite set of lattice vectors generating Z^d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    dimension: usize,
    vectors: Vec<LatticeVector>,
}

impl GeneratorSet {
    /// Validates symmetry and generation. Zero vectors and duplicates are dropped.
    pub fn new(dimension: usize, vectors: Vec<LatticeVector>) -> Result<Self> {
        let set = canonical_set(dimension, vectors)?;
        if set.iter().any(|v| !set.contains(&v.neg())) {
            return Err(SprawlError::NotSymmetric);
        }
        Self::validated(dimension, set)
    }

    /// Adds `-v` for every `v` before validating.
    pub fn symmetric_closure(dimension: usize, vectors: Vec<LatticeVector>) -> Result<Self> {
        let mut set = canonical_set(dimension, vectors)?;
        let negs: Vec<_> = set.iter().map(LatticeVector::neg).collect();
        set.extend(negs);
        Self::validated(dimension, set)
    }

    /// `±e_1, …, ±e_d`.
    pub fn standard(dimension: usize) -> Self {
        let vectors = (0..dimension)
            .map(|i| {
                let mut v = vec![0; dimension];
                v[i] = 1;
                LatticeVector(v)
            })
            .collect();
        Self::symmetric_closure(dimension, vectors).expect("standard basis generates")
    }

    fn validated(dimension: usize, set: BTreeSet<LatticeVector>) -> Result<Self> {
        let vectors: Vec<LatticeVector> = set.into_iter().collect();
        let divisors = elementary_divisors(dimension, &vectors);
        let rank = divisors.iter().filter(|d| !d.is_zero()).count();
        if rank < dimension {
            return Err(SprawlError::NotFullDimensional);
        }
        if divisors.iter().any(|d| !d.is_one()) {
            return Err(SprawlError::NotGenerating {
                divisors: divisors.iter().map(|d| d.to_string()).collect(),
            });
        }
        Ok(GeneratorSet { dimension, vectors })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vectors(&self) -> &[LatticeVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

fn canonical_set(dimension: usize, vectors: Vec<LatticeVector>) -> Result<BTreeSet<LatticeVector>> {
    if dimension == 0 {
        return Err(SprawlError::InvalidInput("dimension must be at least 1".into()));
    }
    let mut set = BTreeSet::new();
    for v in vectors {
        if v.dim() != dimension {
            return Err(SprawlError::DimensionMismatch {
                expected: dimension,
                got: v.dim(),
            });
        }
        if !v.is_zero() {
            set.insert(v);
        }
    }
    if set.is_empty() {
        return Err(SprawlError::InvalidInput("empty generating set".into()));
    }
    Ok(set)
}

/// Diagonal of the Smith normal form of the matrix whose rows are `vectors`,
/// padded with zeros up to `dimension` entries.
pub fn elementary_divisors(dimension: usize, vectors: &[LatticeVector]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| v.0.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let rows = m.len();
    let cols = dimension;
    let mut diag = Vec::with_capacity(cols);
    for t in 0..cols.min(rows) {
        // pivot: smallest nonzero |entry| in the trailing block
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.resize(cols, BigInt::zero());
                return diag;
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_floor(&p);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &q * &m[t][j];
                        m[i][j] -= v;
                    }
                }
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = m[t][j].div_floor(&p);
                if !q.is_zero() {
                    for row in m.iter_mut().skip(t) {
                        let v = &q * &row[t];
                        row[j] -= v;
                    }
                }
                clean &= m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility condition on the remaining block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = m[i][j].clone();
                        m[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
    }
    diag.resize(cols, BigInt::zero());
    diag
}

/// Parses the generating-set text format: one vector per line, integers
/// separated by whitespace, `#` starting a comment. Returns the symmetric
/// closure and whether any vector had to be added to make the set symmetric.
pub fn parse_gens(text: &str) -> Result<(GeneratorSet, bool)> {
    let mut vectors = Vec::new();
    let mut dimension = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let coords: std::result::Result<Vec<i64>, _> =
            line.split_whitespace().map(str::parse::<i64>).collect();
        let coords = coords.map_err(|_| {
            SprawlError::InvalidInput(format!("line {}: expected integers, got {raw:?}", lineno + 1))
        })?;
        match dimension {
            None => dimension = Some(coords.len()),
            Some(d) if d != coords.len() => {
                return Err(SprawlError::DimensionMismatch {
                    expected: d,
                    got: coords.len(),
                })
            }
            _ => {}
        }
        vectors.push(LatticeVector(coords));
    }
    let dimension =
        dimension.ok_or_else(|| SprawlError::InvalidInput("no vectors in generating set".into()))?;
    let given: BTreeSet<LatticeVector> = vectors.iter().filter(|v| !v.is_zero()).cloned().collect();
    let was_symmetric = given.iter().all(|v| given.contains(&v.neg()));
    let set = GeneratorSet::symmetric_closure(dimension, vectors)?;
    Ok((set, !was_symmetric))
}

pub fn format_gens(set: &GeneratorSet) -> String {
    let mut out = String::new();
    for v in set.vectors() {
        let parts: Vec<String> = v.0.iter().map(|x| x.to_string()).collect();
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector(v.to_vec())
    }

    #[test]
    fn standard_generates() {
        let s = GeneratorSet::standard(3);
        assert_eq!(s.len(), 6);
        assert_eq!(s.dimension(), 3);
    }

    #[test]
    fn sublattice_rejected() {
        let err = GeneratorSet::symmetric_closure(2, vec![lv(&[2, 0]), lv(&[0, 1])]).unwrap_err();
        assert_eq!(
            err,
            SprawlError::NotGenerating {
                divisors: vec!["1".into(), "2".into()]
            }
        );
        // (1,1),(1,-1) span the even-sum sublattice of index 2
        assert!(matches!(
            GeneratorSet::symmetric_closure(2, vec![lv(&[1, 1]), lv(&[1, -1])]),
            Err(SprawlError::NotGenerating { .. })
        ));
        assert!(GeneratorSet::symmetric_closure(2, vec![lv(&[2, 1]), lv(&[1, 1])]).is_ok());
    }

    #[test]
    fn degenerate_rejected() {
        assert_eq!(
            GeneratorSet::symmetric_closure(2, vec![lv(&[1, 0])]).unwrap_err(),
            SprawlError::NotFullDimensional
        );
        assert_eq!(
            GeneratorSet::new(2, vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, 0])]).unwrap_err(),
            SprawlError::NotSymmetric
        );
    }

    #[test]
    fn smith_divisors() {
        let d = elementary_divisors(3, &[lv(&[2, 4, 4]), lv(&[-6, 6, 12]), lv(&[10, -4, -16])]);
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn gens_file_roundtrip() {
        let text = "# knight moves\n2 1\n1 2 # comment\n\n-1 2\n-2 1\n";
        let (set, symmetrized) = parse_gens(text).unwrap();
        assert!(symmetrized);
        assert_eq!(set.len(), 8);
        let (again, symmetrized) = parse_gens(&format_gens(&set)).unwrap();
        assert!(!symmetrized);
        assert_eq!(again, set);
        assert!(parse_gens("1 x\n").is_err());
        assert!(parse_gens("1 0\n0 1 0\n").is_err());
        assert!(parse_gens("# nothing\n").is_err());
    }
}
