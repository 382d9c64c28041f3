//! Exact geometric predicates over rational points. All decisions in the
//! crate go through these; nothing geometric is decided in floating point.

use num::rational::BigRational;
use num::{Signed, Zero};

use crate::rational::{Point, Rat};

/// Sign of the cross product (b - a) x (c - a): positive when a, b, c make a
/// counter-clockwise turn.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i8 {
    let v = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    sign(&v)
}

pub fn sign(v: &Rat) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

pub fn cross(u: &(Rat, Rat), w: &(Rat, Rat)) -> Rat {
    &u.0 * &w.1 - &u.1 * &w.0
}

/// p lies on the closed segment [a, b].
pub fn point_on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    // cheap interval rejection before any arithmetic
    within(&a.x, &p.x, &b.x) && within(&a.y, &p.y, &b.y) && orient(a, b, p) == 0
}

/// Closed bounding boxes of [a, b] and [c, d] overlap. Pure comparisons;
/// used to skip exact contact arithmetic for far-apart segments.
pub fn boxes_overlap(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    fn lo<'r>(u: &'r Rat, v: &'r Rat) -> &'r Rat { if u <= v { u } else { v } }
    fn hi<'r>(u: &'r Rat, v: &'r Rat) -> &'r Rat { if u >= v { u } else { v } }
    !(hi(&a.x, &b.x) < lo(&c.x, &d.x)
        || hi(&c.x, &d.x) < lo(&a.x, &b.x)
        || hi(&a.y, &b.y) < lo(&c.y, &d.y)
        || hi(&c.y, &d.y) < lo(&a.y, &b.y))
}

fn within(a: &Rat, p: &Rat, b: &Rat) -> bool {
    (a <= p && p <= b) || (b <= p && p <= a)
}

/// How two closed segments meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Contact {
    None,
    /// They meet in exactly one point.
    At(Point),
    /// They share infinitely many points (collinear overlap).
    Overlap,
}

/// Exact contact classification by solving the two parametric lines.
pub fn segment_contact(a: &Point, b: &Point, c: &Point, d: &Point) -> Contact {
    let r = (&b.x - &a.x, &b.y - &a.y);
    let s = (&d.x - &c.x, &d.y - &c.y);
    let denom = cross(&r, &s);
    let ac = (&c.x - &a.x, &c.y - &a.y);
    if denom.is_zero() {
        if !cross(&ac, &r).is_zero() {
            return Contact::None; // parallel, distinct lines
        }
        // collinear: project on the dominant axis
        let use_x = !r.0.is_zero() || (r.1.is_zero() && !(&d.x - &c.x).is_zero());
        let key = |p: &Point| if use_x { p.x.clone() } else { p.y.clone() };
        let (mut a0, mut a1) = (key(a), key(b));
        if a0 > a1 {
            std::mem::swap(&mut a0, &mut a1);
        }
        let (mut c0, mut c1) = (key(c), key(d));
        if c0 > c1 {
            std::mem::swap(&mut c0, &mut c1);
        }
        let lo = a0.max(c0);
        let hi = a1.min(c1);
        return match lo.cmp(&hi) {
            std::cmp::Ordering::Greater => Contact::None,
            std::cmp::Ordering::Equal => {
                // single shared point; recover it from whichever endpoint matches
                let pt = [a, b, c, d]
                    .into_iter()
                    .find(|p| key(p) == lo)
                    .expect("shared collinear point is an endpoint");
                Contact::At(pt.clone())
            }
            std::cmp::Ordering::Less => Contact::Overlap,
        };
    }
    let t = cross(&ac, &s) / denom.clone();
    let u = cross(&ac, &r) / denom;
    let zero = BigRational::zero();
    let one = BigRational::from_integer(1.into());
    if t < zero || t > one || u < zero || u > one {
        return Contact::None;
    }
    Contact::At(Point::new(&a.x + &t * &r.0, &a.y + t * r.1))
}

/// Whether the downward vertical ray from `p` crosses the closed segment
/// [a, b]. The ray is taken at x = p.x + delta for a symbolic infinitesimal
/// delta > 0, which removes every degenerate incidence: endpoints on the ray
/// and vertical segments are handled consistently without epsilons.
pub fn downward_ray_hits(p: &Point, a: &Point, b: &Point) -> bool {
    let (lo, hi) = if a.x <= b.x { (a, b) } else { (b, a) };
    if !(lo.x <= p.x && p.x < hi.x) {
        return false;
    }
    let dy = &hi.y - &lo.y;
    let y_at = &lo.y + &dy * (&p.x - &lo.x) / (&hi.x - &lo.x);
    match y_at.cmp(&p.y) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        // the segment passes through p exactly; the perturbed ray sees it
        // below iff the segment descends to the right
        std::cmp::Ordering::Equal => dy.is_negative(),
    }
}

/// Squared euclidean distance between points.
pub fn dist2(a: &Point, b: &Point) -> Rat {
    let dx = &a.x - &b.x;
    let dy = &a.y - &b.y;
    &dx * &dx + &dy * &dy
}

/// Squared distance from p to the closed segment [a, b].
pub fn dist2_point_segment(p: &Point, a: &Point, b: &Point) -> Rat {
    let ab = (&b.x - &a.x, &b.y - &a.y);
    let ap = (&p.x - &a.x, &p.y - &a.y);
    let len2 = &ab.0 * &ab.0 + &ab.1 * &ab.1;
    if len2.is_zero() {
        return dist2(p, a);
    }
    let t = (&ap.0 * &ab.0 + &ap.1 * &ab.1) / len2;
    let zero = BigRational::zero();
    let one = BigRational::from_integer(1.into());
    let t = t.max(zero).min(one);
    let proj = Point::new(&a.x + &t * &ab.0, &a.y + t * ab.1);
    dist2(p, &proj)
}
