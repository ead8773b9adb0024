//! Spherical edge lengths in the Coxeter complex of type `A_r` and the
//! length identities built from them.
//!
//! The float path is generic over [`Float`]; the exact path works over
//! [`Ratio`] of any primitive-like integer.

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{Float, FloatConst, One};
use thiserror::Error;

pub type Length = f64;
pub type Exact = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("ranks must satisfy 1 ≤ {i} < {j} ≤ {r}")]
    Rank { i: usize, j: usize, r: usize },
    #[error("{0} is not the square of a rational")]
    NotSquare(String),
}

fn check(i: usize, j: usize, r: usize) -> Result<(), MetricError> {
    if 1 <= i && i < j && j <= r {
        Ok(())
    } else {
        Err(MetricError::Rank { i, j, r })
    }
}

fn cast<T: Float>(k: usize) -> T {
    T::from(k).expect("small integers are representable")
}

/// `cos² l_ij = i(s-j) / (j(s-i))` with `s = r+1`, as an exact rational.
pub fn edge_cos_squared<I>(i: usize, j: usize, r: usize) -> Result<Ratio<I>, MetricError>
where
    I: Integer + Clone + From<u8> + TryFrom<usize>,
{
    check(i, j, r)?;
    let s = r + 1;
    let int = |k: usize| I::try_from(k).ok().expect("rank fits the integer type");
    Ok(Ratio::new(int(i * (s - j)), int(j * (s - i))))
}

/// Length of an edge joining a rank `i` and a rank `j` vertex.
pub fn edge_length<T: Float>(i: usize, j: usize, r: usize) -> Result<T, MetricError> {
    check(i, j, r)?;
    let s = r + 1;
    let q = cast::<T>(i * (s - j)) / cast::<T>(j * (s - i));
    Ok(q.sqrt().acos())
}

/// Unordered version of [`edge_length`] for vertex paths.
fn edge_between<T: Float>(a: usize, b: usize, r: usize) -> Result<T, MetricError> {
    edge_length(a.min(b), a.max(b), r)
}

/// Sum of edge lengths along a path given by its vertex ranks.
pub fn path_length<T: Float>(ranks: &[usize], r: usize) -> Result<T, MetricError> {
    ranks.windows(2).try_fold(T::zero(), |acc, w| Ok(acc + edge_between::<T>(w[0], w[1], r)?))
}

/// The three segments through a vertex pair of ranks `x < y` and their
/// opposite vertices in the two links.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkPath<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub total: T,
}

pub fn opposite_link_path_length<T: Float>(x: usize, y: usize, r: usize) -> Result<LinkPath<T>, MetricError> {
    check(x, y, r)?;
    let s = r + 1;
    let (u, v) = (s + x - y, y - x);
    let a = edge_length(x, u, r)?;
    let b = edge_length(x, y, r)?;
    let c = edge_length(v, y, r)?;
    Ok(LinkPath { a, b, c, total: a + b + c })
}

/// Squared cosines `(a, b, c)` of the three segments.
pub fn link_path_radicands<I>(x: usize, y: usize, r: usize) -> Result<[Ratio<I>; 3], MetricError>
where
    I: Integer + Clone + From<u8> + TryFrom<usize>,
{
    check(x, y, r)?;
    let s = r + 1;
    Ok([edge_cos_squared(x, s + x - y, r)?, edge_cos_squared(x, y, r)?, edge_cos_squared(y - x, y, r)?])
}

/// Exact square root of a non-negative rational, if it is a square.
pub fn rational_sqrt<I>(q: &Ratio<I>) -> Option<Ratio<I>>
where
    I: Integer + Roots + Clone,
{
    if *q.numer() < I::zero() {
        return None;
    }
    let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
    (n.clone() * n.clone() == *q.numer() && d.clone() * d.clone() == *q.denom()).then(|| Ratio::new(n, d))
}

/// `cos(A+B+C) = √(abc) − √(c(1−a)(1−b)) − √(b(1−a)(1−c)) − √(a(1−b)(1−c))`
/// evaluated in the rationals; fails if a radicand is not a square.
pub fn exact_cos_sum<I>(x: usize, y: usize, r: usize) -> Result<Ratio<I>, MetricError>
where
    I: Integer + Roots + Clone + From<u8> + TryFrom<usize> + std::fmt::Display,
{
    let [a, b, c] = link_path_radicands::<I>(x, y, r)?;
    let one = Ratio::<I>::one();
    let (na, nb, nc) = (one.clone() - a.clone(), one.clone() - b.clone(), one - c.clone());
    let root = |q: Ratio<I>| rational_sqrt(&q).ok_or_else(|| MetricError::NotSquare(q.to_string()));
    let abc = root(a.clone() * b.clone() * c.clone())?;
    let rest = [c * na.clone() * nb.clone(), b * na * nc.clone(), a * nb * nc];
    rest.into_iter().try_fold(abc, |acc, q| Ok(acc - root(q)?))
}

/// The pair of strands between the rank-1 vertices of the `NCP_5`
/// different-distance example: two rank 1–3 edges, and four rank 1–2
/// edges.
pub fn example_strands<T: Float>() -> (T, T) {
    let r = 3;
    let g2 = path_length(&[1, 3, 1], r).unwrap();
    let g3 = path_length(&[1, 2, 1, 2, 1], r).unwrap();
    (g2, g3)
}

/// Check `|A+B+C−π| < tol` for all `1 ≤ x < y ≤ r ≤ max_r`; returns the
/// violating triples.
pub fn scan_link_paths<T: Float + FloatConst>(max_r: usize, tol: T) -> Vec<(usize, usize, usize)> {
    let mut bad = Vec::new();
    for r in 2..=max_r {
        for x in 1..r {
            for y in x + 1..=r {
                let p = opposite_link_path_length::<T>(x, y, r).unwrap();
                if (p.total - T::PI()).abs() >= tol {
                    bad.push((x, y, r));
                }
            }
        }
    }
    bad
}
