//! Projective point configurations over F_p.
//!
//! Points are stored as canonical representatives (first nonzero coordinate
//! scaled to 1), the configuration keeps its input order, and distinctness is
//! enforced at construction so X is always a reduced set.

use std::collections::HashMap;

use rand::Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{rank_of_vectors, Matrix};

/// A point of P^n, held as the canonical representative of its class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<u64>,
}

impl ProjPoint {
    /// Normalizes a coordinate vector: entries reduced mod p, then scaled so
    /// the first nonzero coordinate is 1. Rejects the zero vector.
    pub fn new(field: PrimeField, coords: &[u64]) -> Result<Self> {
        let mut c: Vec<u64> = coords.iter().map(|&v| field.reduce(v)).collect();
        let Some(lead) = c.iter().position(|&v| v != 0) else {
            return Err(Error::ZeroVector { index: 0 });
        };
        let inv = field.inv(c[lead]);
        for v in &mut c {
            if *v != 0 {
                *v = field.mul(*v, inv);
            }
        }
        Ok(ProjPoint { coords: c })
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

/// An ordered, duplicate-free set of points of P^n over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    field: PrimeField,
    n: usize,
    points: Vec<ProjPoint>,
}

#[derive(Deserialize)]
struct JsonConfig {
    p: u64,
    n: usize,
    points: Vec<Vec<i128>>,
}

impl PointConfig {
    /// Builds a configuration from raw coordinate vectors, normalizing and
    /// checking pairwise distinctness.
    pub fn new(field: PrimeField, n: usize, raw: &[Vec<u64>]) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument(
                "projective dimension must be at least 1".into(),
            ));
        }
        let mut points = Vec::with_capacity(raw.len());
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
        for (i, coords) in raw.iter().enumerate() {
            if coords.len() != n + 1 {
                return Err(Error::DimensionMismatch(format!(
                    "point {} has {} coordinates, expected {}",
                    i,
                    coords.len(),
                    n + 1
                )));
            }
            let pt = ProjPoint::new(field, coords).map_err(|e| match e {
                Error::ZeroVector { .. } => Error::ZeroVector { index: i },
                other => other,
            })?;
            if let Some(&first) = seen.get(pt.coords()) {
                return Err(Error::DuplicatePoint { first, second: i });
            }
            seen.insert(pt.coords().to_vec(), i);
            points.push(pt);
        }
        Ok(PointConfig { field, n, points })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// The projective dimension n of the ambient P^n.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn coord_rows(&self) -> Vec<Vec<u64>> {
        self.points.iter().map(|p| p.coords().to_vec()).collect()
    }

    /// The configuration with point `index` removed.
    pub fn without_point(&self, index: usize) -> Result<PointConfig> {
        if index >= self.points.len() {
            return Err(Error::ElementOutOfRange {
                index,
                ground: self.points.len(),
            });
        }
        let rows: Vec<Vec<u64>> = self
            .points
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != index)
            .map(|(_, p)| p.coords().to_vec())
            .collect();
        PointConfig::new(self.field, self.n, &rows)
    }

    /// The sub-configuration on the given point indices (order preserved).
    pub fn subset(&self, indices: &[usize]) -> Result<PointConfig> {
        let mut rows = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= self.points.len() {
                return Err(Error::ElementOutOfRange {
                    index: i,
                    ground: self.points.len(),
                });
            }
            rows.push(self.points[i].coords().to_vec());
        }
        PointConfig::new(self.field, self.n, &rows)
    }

    /// True iff X spans P^n (does not lie on any hyperplane).
    pub fn is_nondegenerate(&self) -> bool {
        rank_of_vectors(&self.coord_rows(), self.field)
            .map(|r| r == self.n + 1)
            .unwrap_or(false)
    }

    /// True iff every subset of size min(|X|, n+1) is linearly independent.
    pub fn is_linearly_general(&self) -> bool {
        use itertools::Itertools;
        let k = self.points.len().min(self.n + 1);
        let rows = self.coord_rows();
        (0..self.points.len()).combinations(k).all(|subset| {
            let sub: Vec<Vec<u64>> = subset.iter().map(|&i| rows[i].clone()).collect();
            rank_of_vectors(&sub, self.field).map(|r| r == k).unwrap_or(false)
        })
    }

    /// Renders the text file format; `parse_config` inverts this exactly.
    pub fn render(&self) -> String {
        let mut out = format!("p={} n={}\n", self.field.modulus(), self.n);
        for p in &self.points {
            let row: Vec<String> = p.coords().iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Parses the point file format: `#` comment lines, a `p=<prime> n=<dim>`
/// header, then one point per line as n+1 integers (any representatives
/// mod p). A leading `{` switches to the JSON equivalent
/// `{"p":…, "n":…, "points":[[…],…]}`.
pub fn parse_config(text: &str) -> Result<PointConfig> {
    if text.trim_start().starts_with('{') {
        return parse_json(text);
    }
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing header line".into()))?;
    let (p, n) = parse_header(header)?;
    let field = PrimeField::new(p)?;
    let mut raw = Vec::new();
    for line in lines {
        let mut coords = Vec::new();
        for tok in line.split_whitespace() {
            let v: i128 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("invalid coordinate {tok:?}")))?;
            coords.push(field.from_i128(v));
        }
        raw.push(coords);
    }
    PointConfig::new(field, n, &raw)
}

fn parse_header(header: &str) -> Result<(u64, usize)> {
    let mut p = None;
    let mut n = None;
    for tok in header.split_whitespace() {
        if let Some(v) = tok.strip_prefix("p=") {
            p = Some(
                v.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("invalid modulus {v:?}")))?,
            );
        } else if let Some(v) = tok.strip_prefix("n=") {
            n = Some(
                v.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("invalid dimension {v:?}")))?,
            );
        } else {
            return Err(Error::Parse(format!("unexpected header token {tok:?}")));
        }
    }
    match (p, n) {
        (Some(p), Some(n)) => Ok((p, n)),
        _ => Err(Error::Parse(
            "header must be of the form `p=<prime> n=<dim>`".into(),
        )),
    }
}

fn parse_json(text: &str) -> Result<PointConfig> {
    let cfg: JsonConfig =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let field = PrimeField::new(cfg.p)?;
    let raw: Vec<Vec<u64>> = cfg
        .points
        .iter()
        .map(|row| row.iter().map(|&v| field.from_i128(v)).collect())
        .collect();
    PointConfig::new(field, cfg.n, &raw)
}

/// Points (1, t, t^2, ..., t^n) for the given parameters. Distinct
/// parameters give a linearly general set: every maximal minor is
/// Vandermonde and factors as a product of parameter differences.
pub fn moment_curve_config(field: PrimeField, n: usize, params: &[u64]) -> Result<PointConfig> {
    let mut seen = HashMap::new();
    for (i, &t) in params.iter().enumerate() {
        let c = field.reduce(t);
        if let Some(&first) = seen.get(&c) {
            return Err(Error::InvalidArgument(format!(
                "repeated moment-curve parameter {c} at positions {first} and {i}"
            )));
        }
        seen.insert(c, i);
    }
    let rows: Vec<Vec<u64>> = params
        .iter()
        .map(|&t| (0..=n as u64).map(|e| field.pow(t, e)).collect())
        .collect();
    PointConfig::new(field, n, &rows)
}

/// Number of points of P^d over F_p, saturating at u64::MAX.
fn projective_point_count(p: u64, d: usize) -> u64 {
    // (p^(d+1) - 1) / (p - 1) = 1 + p + ... + p^d
    let mut total: u64 = 0;
    let mut pw: u64 = 1;
    for _ in 0..=d {
        total = total.saturating_add(pw);
        pw = pw.saturating_mul(p);
    }
    total
}

/// `size` distinct uniform points of P^n, rejection-sampled; deterministic
/// for a fixed RNG stream.
pub fn random_config<R: Rng + ?Sized>(
    field: PrimeField,
    n: usize,
    size: usize,
    rng: &mut R,
) -> Result<PointConfig> {
    if size < 1 {
        return Err(Error::InvalidArgument("size must be at least 1".into()));
    }
    if size as u64 > projective_point_count(field.modulus(), n) {
        return Err(Error::FieldTooSmall(format!(
            "P^{n} over F_{} has fewer than {size} points",
            field.modulus()
        )));
    }
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(size);
    let mut seen = HashMap::new();
    while rows.len() < size {
        let coords: Vec<u64> = (0..=n).map(|_| rng.random_range(0..field.modulus())).collect();
        if coords.iter().all(|&v| v == 0) {
            continue;
        }
        let pt = ProjPoint::new(field, &coords)?;
        if seen.contains_key(pt.coords()) {
            continue;
        }
        seen.insert(pt.coords().to_vec(), rows.len());
        rows.push(pt.coords().to_vec());
    }
    PointConfig::new(field, n, &rows)
}

fn random_point_in_span<R: Rng + ?Sized>(
    field: PrimeField,
    basis: &Matrix,
    rng: &mut R,
) -> Result<ProjPoint> {
    loop {
        let coeffs: Vec<u64> = (0..basis.rows())
            .map(|_| rng.random_range(0..field.modulus()))
            .collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let mut v = vec![0u64; basis.cols()];
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, slot) in v.iter_mut().enumerate() {
                *slot = field.add(*slot, field.mul(c, basis.get(k, j)));
            }
        }
        if v.iter().any(|&x| x != 0) {
            return ProjPoint::new(field, &v);
        }
    }
}

/// X = X1 ∪ X2 with X1 spanning a random a-plane U (c1 points) and X2
/// spanning a random b-plane V disjoint from U (c2 points). Requires
/// a + b = n - 1, so U ⊕ V fills the ambient space and the result is
/// nondegenerate and covered by the two planes by construction.
pub fn two_plane_config<R: Rng + ?Sized>(
    field: PrimeField,
    n: usize,
    a: usize,
    b: usize,
    counts: (usize, usize),
    rng: &mut R,
) -> Result<PointConfig> {
    let (c1, c2) = counts;
    if a + b + 1 != n {
        return Err(Error::InvalidArgument(format!(
            "need a + b = n - 1, got a={a}, b={b}, n={n}"
        )));
    }
    if c1 < a + 1 || c2 < b + 1 {
        return Err(Error::InvalidArgument(format!(
            "need c1 >= a+1 and c2 >= b+1, got counts ({c1}, {c2}) for (a, b) = ({a}, {b})"
        )));
    }
    let p = field.modulus();
    if c1 as u64 > projective_point_count(p, a) || c2 as u64 > projective_point_count(p, b) {
        return Err(Error::FieldTooSmall(format!(
            "planes of dimensions ({a}, {b}) over F_{p} cannot host ({c1}, {c2}) distinct points"
        )));
    }

    // A uniformly random invertible change of coordinates; its first a+1
    // rows span U, the remaining b+1 rows span V, and U ∩ V = 0.
    let basis = loop {
        let rows: Vec<Vec<u64>> = (0..=n)
            .map(|_| (0..=n).map(|_| rng.random_range(0..p)).collect())
            .collect();
        let m = Matrix::from_rows(field, &rows)?;
        if m.rank() == n + 1 {
            break m;
        }
    };
    let u_basis = Matrix::from_rows(field, &basis.row_vecs()[..a + 1])?;
    let v_basis = Matrix::from_rows(field, &basis.row_vecs()[a + 1..])?;

    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(c1 + c2);
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    for (plane, count, dim) in [(&u_basis, c1, a), (&v_basis, c2, b)] {
        let start = rows.len();
        loop {
            // Fill this plane's quota, then check it spans the whole plane;
            // resample the batch if not.
            while rows.len() < start + count {
                let pt = random_point_in_span(field, plane, rng)?;
                if !seen.contains_key(pt.coords()) {
                    seen.insert(pt.coords().to_vec(), rows.len());
                    rows.push(pt.coords().to_vec());
                }
            }
            let batch: Vec<Vec<u64>> = rows[start..].to_vec();
            if rank_of_vectors(&batch, field)? == dim + 1 {
                break;
            }
            for row in rows.drain(start..) {
                seen.remove(&row);
            }
        }
    }
    PointConfig::new(field, n, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn parse_coordinate_points() {
        let x = parse_config("p=101 n=2\n1 0 0\n0 1 0\n0 0 1\n").unwrap();
        assert_eq!(x.len(), 3);
        assert_eq!(x.dim(), 2);
        assert_eq!(x.field().modulus(), 101);
    }

    #[test]
    fn parse_normalizes_representatives() {
        let x = parse_config("p=101 n=2\n2 0 0\n").unwrap();
        assert_eq!(x.points()[0].coords(), &[1, 0, 0]);
    }

    #[test]
    fn parse_rejects_duplicates() {
        let err = parse_config("p=101 n=2\n1 0 0\n50 0 0\n").unwrap_err();
        assert_eq!(err, Error::DuplicatePoint { first: 0, second: 1 });
    }

    #[test]
    fn parse_rejects_bad_inputs() {
        assert!(matches!(
            parse_config("p=100 n=2\n1 0 0\n"),
            Err(Error::NotPrime(100))
        ));
        assert!(matches!(
            parse_config("p=101 n=2\n0 0 0\n"),
            Err(Error::ZeroVector { index: 0 })
        ));
        assert!(matches!(
            parse_config("p=101 n=2\n1 0\n"),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(parse_config(""), Err(Error::Parse(_))));
    }

    #[test]
    fn parse_accepts_comments_and_negatives() {
        let x = parse_config("# three points\np=101 n=2\n1 0 0\n# middle comment\n0 1 0\n0 0 -1\n")
            .unwrap();
        assert_eq!(x.len(), 3);
        assert_eq!(x.points()[2].coords(), &[0, 0, 1]);
    }

    #[test]
    fn parse_json_equivalent() {
        let x = parse_config(r#"{"p": 101, "n": 2, "points": [[1,0,0],[0,1,0],[0,0,-1]]}"#)
            .unwrap();
        assert_eq!(x.len(), 3);
        assert_eq!(x.points()[2].coords(), &[0, 0, 1]);
    }

    #[test]
    fn render_parse_roundtrip() {
        let x = parse_config("p=101 n=2\n1 0 0\n0 1 0\n7 3 9\n").unwrap();
        let y = parse_config(&x.render()).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn scaling_rows_is_invisible() {
        let x = parse_config("p=101 n=2\n1 0 0\n0 1 0\n7 3 9\n").unwrap();
        let y = parse_config("p=101 n=2\n13 0 0\n0 44 0\n14 6 18\n").unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn nondegeneracy() {
        let x = parse_config("p=101 n=2\n1 0 0\n0 1 0\n0 0 1\n").unwrap();
        assert!(x.is_nondegenerate());
        let y = parse_config("p=101 n=2\n1 0 0\n0 1 0\n1 1 0\n").unwrap();
        assert!(!y.is_nondegenerate());
        let m = moment_curve_config(f101(), 3, &[0, 1, 2, 3, 4]).unwrap();
        assert!(m.is_nondegenerate());
    }

    #[test]
    fn linear_generality() {
        let m = moment_curve_config(f101(), 2, &[0, 1, 2, 3]).unwrap();
        assert!(m.is_linearly_general());
        let coll = parse_config("p=101 n=2\n1 0 0\n0 1 0\n1 1 0\n0 0 1\n").unwrap();
        assert!(!coll.is_linearly_general());
        let square = parse_config("p=101 n=2\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n").unwrap();
        assert!(square.is_linearly_general());
    }

    #[test]
    fn moment_curve_small_cases() {
        let x = moment_curve_config(PrimeField::new(5).unwrap(), 1, &[0, 1]).unwrap();
        assert_eq!(x.points()[0].coords(), &[1, 0]);
        assert_eq!(x.points()[1].coords(), &[1, 1]);
        assert!(moment_curve_config(f101(), 2, &[1, 1]).is_err());
        let big = moment_curve_config(f101(), 2, &[0, 1, 2, 3]).unwrap();
        assert_eq!(big.len(), 4);
        assert!(big.is_linearly_general());
    }

    #[test]
    fn two_plane_construction() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = two_plane_config(f101(), 3, 1, 1, (3, 3), &mut rng).unwrap();
        assert_eq!(x.len(), 6);
        assert!(x.is_nondegenerate());

        let y = two_plane_config(f101(), 2, 1, 0, (2, 1), &mut rng).unwrap();
        assert_eq!(y.len(), 3);
        assert!(y.is_nondegenerate());

        assert!(two_plane_config(f101(), 2, 1, 0, (1, 1), &mut rng).is_err());
        assert!(two_plane_config(f101(), 3, 1, 0, (2, 1), &mut rng).is_err());
    }

    #[test]
    fn random_config_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x = random_config(f101(), 2, 5, &mut rng).unwrap();
        assert_eq!(x.len(), 5);

        // Pigeonhole: P^2 over F_2 has 7 points.
        let f2 = PrimeField::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            random_config(f2, 2, 8, &mut rng),
            Err(Error::FieldTooSmall(_))
        ));
        let all = random_config(f2, 2, 7, &mut rng).unwrap();
        assert_eq!(all.len(), 7);

        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let single = random_config(f101(), 2, 1, &mut rng).unwrap();
        assert!(!single.is_nondegenerate());
    }

    #[test]
    fn random_config_is_deterministic() {
        let a = random_config(f101(), 2, 5, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let b = random_config(f101(), 2, 5, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(a, b);
    }
}
