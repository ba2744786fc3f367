//! Exact lattice geometry of the subtriangles `K_σ`.
//!
//! The contractions `x ↦ x/2 + a_i/2` are pure homotheties, so the affine map
//! sending the corners `a_1, a_2, a_3` of the regular triangle to `(0,0)`,
//! `(1,0)`, `(0,1)` commutes with them and preserves every incidence between
//! boundaries. At scale exponent `t` all corners of triangles coded by words
//! of length `<= t` are integer points, and incidence is decided with integer
//! orientation predicates.

use crate::error::{Error, Result};
use crate::word::Word;

/// Largest scale exponent whose lattice fits comfortably in `i64`.
pub const MAX_SCALE_EXPONENT: u32 = 60;

pub type Point = (i64, i64);

/// Corner images of the three contractions in sheared coordinates.
const CORNERS: [Point; 3] = [(0, 0), (1, 0), (0, 1)];

/// The subtriangle coded by a word, at a fixed lattice scale `2^t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GasketTriangle {
    pub word: Word,
    /// Right-angle corner, then the corners along the two axes.
    pub vertices: [Point; 3],
    pub scale_exponent: u32,
}

impl GasketTriangle {
    pub fn side_length(&self) -> i64 {
        self.vertices[1].0 - self.vertices[0].0
    }

    pub fn sides(&self) -> [(Point, Point); 3] {
        let [a, b, c] = self.vertices;
        [(a, b), (b, c), (c, a)]
    }

    /// Closed containment of a lattice point.
    pub fn contains_point(&self, p: Point) -> bool {
        let (cx, cy) = self.vertices[0];
        let (dx, dy) = (p.0 - cx, p.1 - cy);
        dx >= 0 && dy >= 0 && dx + dy <= self.side_length()
    }

    pub fn contains(&self, other: &GasketTriangle) -> bool {
        other.vertices.iter().all(|&p| self.contains_point(p))
    }
}

/// Lattice triangle of `K_σ` at scale `2^t`.
pub fn triangle_of(word: Word, t: u32) -> Result<GasketTriangle> {
    if t > MAX_SCALE_EXPONENT {
        return Err(Error::ScaleTooFine {
            t,
            max: MAX_SCALE_EXPONENT,
        });
    }
    if word.len() > t as usize {
        return Err(Error::ScaleTooCoarse { len: word.len(), t });
    }
    let (mut x, mut y) = (0i64, 0i64);
    for (depth, letter) in word.letters().enumerate() {
        let weight = 1i64 << (t as usize - depth - 1);
        let (ax, ay) = CORNERS[usize::from(letter - 1)];
        x += ax * weight;
        y += ay * weight;
    }
    let side = 1i64 << (t as usize - word.len());
    Ok(GasketTriangle {
        word,
        vertices: [(x, y), (x + side, y), (x, y + side)],
        scale_exponent: t,
    })
}

/// Whether the boundaries of two triangles share at least one point.
pub fn boundaries_touch(a: &GasketTriangle, b: &GasketTriangle) -> Result<bool> {
    if a.scale_exponent != b.scale_exponent {
        return Err(Error::ScaleMismatch(a.scale_exponent, b.scale_exponent));
    }
    Ok(a.sides().iter().any(|&(p, q)| {
        b.sides()
            .iter()
            .any(|&(r, s)| segments_intersect(p, q, r, s))
    }))
}

fn orientation(p: Point, q: Point, r: Point) -> i8 {
    let cross = i128::from(q.0 - p.0) * i128::from(r.1 - p.1)
        - i128::from(q.1 - p.1) * i128::from(r.0 - p.0);
    cross.signum() as i8
}

/// Given collinear `p`, `q`, `r`: whether `q` lies on segment `pr`.
fn on_segment(p: Point, q: Point, r: Point) -> bool {
    q.0 >= p.0.min(r.0) && q.0 <= p.0.max(r.0) && q.1 >= p.1.min(r.1) && q.1 <= p.1.max(r.1)
}

/// Closed segment intersection, touching endpoints and collinear overlap included.
pub fn segments_intersect(p1: Point, q1: Point, p2: Point, q2: Point) -> bool {
    let o1 = orientation(p1, q1, p2);
    let o2 = orientation(p1, q1, q2);
    let o3 = orientation(p2, q2, p1);
    let o4 = orientation(p2, q2, q1);

    if o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        return true;
    }
    (o1 == 0 && on_segment(p1, p2, q1))
        || (o2 == 0 && on_segment(p1, q2, q1))
        || (o3 == 0 && on_segment(p2, p1, q2))
        || (o4 == 0 && on_segment(p2, q1, q2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(s: &str, t: u32) -> GasketTriangle {
        triangle_of(Word::parse(s).unwrap(), t).unwrap()
    }

    #[test]
    fn lattice_corners() {
        assert_eq!(tri("-", 1).vertices, [(0, 0), (2, 0), (0, 2)]);
        assert_eq!(tri("1", 1).vertices, [(0, 0), (1, 0), (0, 1)]);
        assert_eq!(tri("22", 2).vertices, [(3, 0), (4, 0), (3, 1)]);
        assert_eq!(tri("3", 2).vertices, [(0, 2), (2, 2), (0, 4)]);
    }

    /// `22` in Cartesian form: T_2(T_2(x)) = x/4 + 3/4 a_2 maps the corners of
    /// the regular triangle to (3/4, 0), (1, 0), (7/8, √3/8). Undo the shear
    /// (x, y) ↦ (x − y/√3, 2y/√3) and scale by 4.
    #[test]
    fn shear_matches_cartesian_similitude() {
        let cart = [(0.75f64, 0.0f64), (1.0, 0.0), (0.875, 3f64.sqrt() / 8.0)];
        let sheared: Vec<(i64, i64)> = cart
            .iter()
            .map(|&(x, y)| {
                let u = 4.0 * (x - y / 3f64.sqrt());
                let v = 4.0 * (2.0 * y / 3f64.sqrt());
                (u.round() as i64, v.round() as i64)
            })
            .collect();
        assert_eq!(sheared, tri("22", 2).vertices.to_vec());
    }

    #[test]
    fn too_long_for_scale() {
        let err = triangle_of(Word::parse("123").unwrap(), 2).unwrap_err();
        assert!(matches!(err, Error::ScaleTooCoarse { len: 3, t: 2 }));
        assert!(triangle_of(Word::EMPTY, 61).is_err());
    }

    #[test]
    fn touching_examples() {
        assert!(boundaries_touch(&tri("1", 1), &tri("2", 1)).unwrap());
        assert!(!boundaries_touch(&tri("11", 2), &tri("22", 2)).unwrap());
        assert!(boundaries_touch(&tri("233", 3), &tri("32", 3)).unwrap());
        assert!(boundaries_touch(&tri("32", 3), &tri("312", 3)).unwrap());
        assert!(boundaries_touch(&tri("3", 3), &tri("312", 3)).unwrap());
        assert!(!boundaries_touch(&tri("132", 3), &tri("-", 3)).unwrap());
        assert!(boundaries_touch(&tri("21", 3), &tri("-", 3)).unwrap());
    }

    #[test]
    fn mismatched_scales() {
        assert_eq!(
            boundaries_touch(&tri("1", 1), &tri("1", 2)),
            Err(Error::ScaleMismatch(1, 2))
        );
    }

    #[test]
    fn segment_cases() {
        // proper crossing
        assert!(segments_intersect((0, 0), (2, 2), (0, 2), (2, 0)));
        // shared endpoint
        assert!(segments_intersect((0, 0), (1, 0), (1, 0), (1, 5)));
        // collinear overlap and collinear disjoint
        assert!(segments_intersect((0, 0), (4, 0), (2, 0), (6, 0)));
        assert!(!segments_intersect((0, 0), (1, 0), (2, 0), (3, 0)));
        // parallel
        assert!(!segments_intersect((0, 0), (4, 0), (0, 1), (4, 1)));
        // T-junction
        assert!(segments_intersect((0, 0), (4, 0), (2, 0), (2, 3)));
    }

    #[test]
    fn nesting() {
        assert!(tri("1", 4).contains(&tri("1322", 4)));
        assert!(!tri("2", 4).contains(&tri("1322", 4)));
    }
}
