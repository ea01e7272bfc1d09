//! Polyline arcs on the punctured disc and their lifted intersection pairing.
//!
//! The disc has radius `n + 1`, punctures `q_i = (i, 0)` and basepoint
//! `p0 = (0, -(n+1))`. Branch cuts are the vertical rays straight down from
//! each puncture; the exponent map of a path is its signed cut-crossing
//! count. All geometry is exact over the rationals.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::laurent::LaurentPoly;

pub type Rational = BigRational;

#[derive(Debug, Error)]
pub enum DiscError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("arc `{arc}`, segment {segment}: {reason}")]
    Invalid { arc: String, segment: usize, reason: String },
    #[error("degenerate position: {0}")]
    Degenerate(String),
    #[error("no arc named `{0}`")]
    UnknownArc(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Self::new(int(x), int(y))
    }

    /// Parses `"<x> <y>"` with integer or `p/q` coordinates.
    pub fn parse(text: &str) -> Option<Self> {
        let mut it = text.split_whitespace();
        let x = parse_rational(it.next()?)?;
        let y = parse_rational(it.next()?)?;
        it.next().is_none().then(|| Self::new(x, y))
    }

    fn sub(&self, o: &Point) -> (Rational, Rational) {
        (&self.x - &o.x, &self.y - &o.y)
    }

    fn lerp(&self, o: &Point, s: &Rational) -> Point {
        Point::new(&self.x + s * (&o.x - &self.x), &self.y + s * (&o.y - &self.y))
    }

    fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64().unwrap_or(f64::NAN), self.y.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.x, self.y)
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string()].serialize(serializer)
    }
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            (!q.is_zero()).then(|| Rational::new(p, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

fn cross(a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn dot(a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    &a.0 * &b.0 + &a.1 * &b.1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EndpointTag {
    Puncture(usize),
    Basepoint,
}

impl fmt::Display for EndpointTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndpointTag::Puncture(i) => write!(f, "q{i}"),
            EndpointTag::Basepoint => write!(f, "p0"),
        }
    }
}

impl EndpointTag {
    fn parse(s: &str) -> Option<Self> {
        if s == "p0" {
            return Some(EndpointTag::Basepoint);
        }
        let i: usize = s.strip_prefix('q')?.parse().ok()?;
        (i > 0).then_some(EndpointTag::Puncture(i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiscModel {
    pub n: usize,
}

impl DiscModel {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn radius(&self) -> i64 {
        self.n as i64 + 1
    }

    pub fn puncture(&self, i: usize) -> Point {
        Point::int(i as i64, 0)
    }

    pub fn basepoint(&self) -> Point {
        Point::int(0, -self.radius())
    }

    pub fn endpoint(&self, tag: EndpointTag) -> Point {
        match tag {
            EndpointTag::Puncture(i) => self.puncture(i),
            EndpointTag::Basepoint => self.basepoint(),
        }
    }

    fn puncture_at(&self, p: &Point) -> Option<usize> {
        if !p.y.is_zero() || !p.x.is_integer() {
            return None;
        }
        let i = p.x.to_integer().to_i64()?;
        (1..=self.n as i64).contains(&i).then_some(i as usize)
    }

    /// True when `p` lies on the open cut ray below some puncture.
    fn on_cut(&self, p: &Point) -> bool {
        p.y.is_negative()
            && p.x.is_integer()
            && p.x.to_integer().to_i64().is_some_and(|i| (1..=self.n as i64).contains(&i))
    }

    fn inside(&self, p: &Point) -> bool {
        let r = int(self.radius());
        &p.x * &p.x + &p.y * &p.y <= &r * &r
    }
}

/// A polyline arc; the tagged endpoints are implicit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolylineArc {
    pub name: String,
    pub start: EndpointTag,
    pub end: EndpointTag,
    pub vertices: Vec<Point>,
}

impl PolylineArc {
    pub fn new(name: impl Into<String>, start: EndpointTag, end: EndpointTag, vertices: Vec<Point>) -> Self {
        Self { name: name.into(), start, end, vertices }
    }

    pub fn straight(name: impl Into<String>, start: EndpointTag, end: EndpointTag) -> Self {
        Self::new(name, start, end, Vec::new())
    }

    /// Full point list including both endpoints.
    pub fn points(&self, model: &DiscModel) -> Vec<Point> {
        let mut pts = Vec::with_capacity(self.vertices.len() + 2);
        pts.push(model.endpoint(self.start));
        pts.extend(self.vertices.iter().cloned());
        pts.push(model.endpoint(self.end));
        pts
    }

    /// The same arc traversed backwards.
    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self { name: self.name.clone(), start: self.end, end: self.start, vertices }
    }

    /// Checks the arc invariants: endpoints exist, points inside the disc,
    /// no vertex on a puncture or cut ray, no segment through a puncture,
    /// and no self-intersection.
    pub fn validate(&self, model: &DiscModel) -> Result<(), DiscError> {
        let invalid = |segment: usize, reason: String| DiscError::Invalid { arc: self.name.clone(), segment, reason };
        for tag in [self.start, self.end] {
            if let EndpointTag::Puncture(i) = tag {
                if i > model.n {
                    return Err(invalid(0, format!("endpoint {tag} does not exist on a disc with {} punctures", model.n)));
                }
            }
        }
        if self.start == self.end {
            return Err(invalid(0, "arc starts and ends at the same point".into()));
        }
        let pts = self.points(model);
        for (k, v) in self.vertices.iter().enumerate() {
            if !model.inside(v) {
                return Err(invalid(k + 1, format!("vertex ({v}) lies outside the disc")));
            }
            if let Some(i) = model.puncture_at(v) {
                return Err(invalid(k + 1, format!("vertex ({v}) sits on puncture q{i}")));
            }
            if model.on_cut(v) {
                return Err(invalid(k + 1, format!("vertex ({v}) lies on a branch cut; move it off x = {}", v.x)));
            }
        }
        let segs = pts.len() - 1;
        for s in 0..segs {
            let (a, b) = (&pts[s], &pts[s + 1]);
            if a == b {
                return Err(invalid(s + 1, "zero-length segment".into()));
            }
            for i in 1..=model.n {
                let q = model.puncture(i);
                if &q != a && &q != b && on_segment(a, b, &q) {
                    return Err(invalid(s + 1, format!("segment passes through puncture q{i}")));
                }
            }
        }
        for s in 0..segs {
            for r in s + 1..segs {
                let hit = intersect(&pts[s], &pts[s + 1], &pts[r], &pts[r + 1]);
                let bad = if r == s + 1 {
                    matches!(hit, Intersection::Overlap)
                } else {
                    !matches!(hit, Intersection::None)
                };
                if bad {
                    return Err(invalid(s + 1, format!("segment meets segment {} of the same arc", r + 1)));
                }
            }
        }
        Ok(())
    }
}

fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    let (ab, ap) = (b.sub(a), p.sub(a));
    if !cross(&ab, &ap).is_zero() {
        return false;
    }
    let d = dot(&ab, &ap);
    !d.is_negative() && d <= dot(&ab, &ab)
}

enum Intersection {
    None,
    /// Interior crossing with parameters along each segment and the sign of
    /// `cross(b - a, d - c)`.
    Proper { s: Rational, u: Rational, point: Point, sign: i8 },
    Touch(Point),
    Overlap,
}

fn intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> Intersection {
    // Bounding boxes first; most pairs are far apart.
    let disjoint = |p: &Rational, q: &Rational, r: &Rational, s: &Rational| {
        let (lo1, hi1) = if p <= q { (p, q) } else { (q, p) };
        let (lo2, hi2) = if r <= s { (r, s) } else { (s, r) };
        hi1 < lo2 || hi2 < lo1
    };
    if disjoint(&a.x, &b.x, &c.x, &d.x) || disjoint(&a.y, &b.y, &c.y, &d.y) {
        return Intersection::None;
    }
    let r = b.sub(a);
    let q = d.sub(c);
    let ca = c.sub(a);
    let den = cross(&r, &q);
    if den.is_zero() {
        if !cross(&ca, &r).is_zero() {
            return Intersection::None;
        }
        let rr = dot(&r, &r);
        let t0 = dot(&ca, &r) / &rr;
        let t1 = dot(&d.sub(a), &r) / &rr;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let lo = lo.max(Rational::zero());
        let hi = hi.min(int(1));
        return match lo.cmp(&hi) {
            std::cmp::Ordering::Less => Intersection::Overlap,
            std::cmp::Ordering::Equal => Intersection::Touch(a.lerp(b, &lo)),
            std::cmp::Ordering::Greater => Intersection::None,
        };
    }
    let s = cross(&ca, &q) / &den;
    let u = cross(&ca, &r) / &den;
    let zero = Rational::zero();
    let one = int(1);
    if s < zero || s > one || u < zero || u > one {
        return Intersection::None;
    }
    let point = a.lerp(b, &s);
    if s == zero || s == one || u == zero || u == one {
        return Intersection::Touch(point);
    }
    Intersection::Proper { s, u, point, sign: if den.is_positive() { 1 } else { -1 } }
}

/// Signed count of cut rays crossed by the segment `a -> b`: `+1` per ray
/// crossed moving in `+x`, `-1` moving in `-x`.
pub fn winding_increment(model: &DiscModel, a: &Point, b: &Point) -> Result<i64, DiscError> {
    for p in [a, b] {
        if model.on_cut(p) {
            return Err(DiscError::Degenerate(format!("point ({p}) lies on a branch cut")));
        }
    }
    let mut total = 0;
    if a.x == b.x {
        return Ok(0);
    }
    let (lo, hi) = if a.x < b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let first = lo.floor().to_integer().to_i64().unwrap_or(0).max(0) + 1;
    let last = hi.ceil().to_integer().to_i64().unwrap_or(0).min(model.n as i64 + 1) - 1;
    for i in first.max(1)..=last.min(model.n as i64) {
        let xi = int(i);
        if &xi <= lo || &xi >= hi {
            continue;
        }
        let y = &a.y + (&b.y - &a.y) * (&xi - &a.x) / (&b.x - &a.x);
        if y.is_zero() {
            return Err(DiscError::Degenerate(format!("segment ({a}) -> ({b}) passes through q{i}")));
        }
        if y.is_negative() {
            total += if b.x > a.x { 1 } else { -1 };
        }
    }
    Ok(total)
}

/// Winding before each vertex: `prefix[k]` is the exponent of the path up
/// to point `k`.
fn prefix_winding(model: &DiscModel, pts: &[Point]) -> Result<Vec<i64>, DiscError> {
    let mut out = Vec::with_capacity(pts.len());
    let mut acc = 0;
    out.push(0);
    for w in pts.windows(2) {
        acc += winding_increment(model, &w[0], &w[1])?;
        out.push(acc);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub point: Point,
    pub sign: i8,
    pub exponent: i64,
    /// 0-based segment indices along each arc.
    pub beta_segment: usize,
    pub alpha_segment: usize,
    #[serde(skip)]
    beta_param: Rational,
    #[serde(skip)]
    alpha_param: Rational,
}

impl Crossing {
    pub fn monomial(&self) -> String {
        format!("{}t^{}", if self.sign > 0 { '+' } else { '-' }, self.exponent)
    }
}

/// Crossings ordered along β.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CrossingList {
    pub crossings: Vec<Crossing>,
}

impl CrossingList {
    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Crossing> {
        self.crossings.iter()
    }

    /// `Σ sign · t^exponent`.
    pub fn sum(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for c in &self.crossings {
            p += &LaurentPoly::monomial(c.exponent, c.sign as i64);
        }
        p
    }

    /// Sorted `(sign, exponent)` pairs.
    pub fn signed_exponents(&self) -> Vec<(i8, i64)> {
        let mut v: Vec<_> = self.crossings.iter().map(|c| (c.sign, c.exponent)).collect();
        v.sort_unstable();
        v
    }
}

/// Crossings of `beta` with `alpha`, ordered along `beta`. The first one is
/// normalized to `+t^0`: all signs are multiplied by its sign and all
/// exponents shifted by its exponent.
pub fn crossings(model: &DiscModel, alpha: &PolylineArc, beta: &PolylineArc) -> Result<CrossingList, DiscError> {
    let ap = alpha.points(model);
    let bp = beta.points(model);
    let a_prefix = prefix_winding(model, &ap)?;
    let b_prefix = prefix_winding(model, &bp)?;
    let shared: BTreeSet<Point> = [alpha.start, alpha.end]
        .into_iter()
        .filter(|t| *t == beta.start || *t == beta.end)
        .map(|t| model.endpoint(t))
        .collect();

    let per_segment: Vec<Result<Vec<Crossing>, DiscError>> = (0..bp.len() - 1)
        .into_par_iter()
        .map(|j| {
            let mut found = Vec::new();
            for i in 0..ap.len() - 1 {
                match intersect(&ap[i], &ap[i + 1], &bp[j], &bp[j + 1]) {
                    Intersection::None => {}
                    Intersection::Overlap => {
                        return Err(DiscError::Degenerate(format!(
                            "{} segment {} overlaps {} segment {}",
                            alpha.name, i + 1, beta.name, j + 1
                        )))
                    }
                    Intersection::Touch(p) => {
                        if !shared.contains(&p) {
                            return Err(DiscError::Degenerate(format!(
                                "{} and {} meet at a vertex ({p}); perturb the fixture",
                                alpha.name, beta.name
                            )));
                        }
                    }
                    Intersection::Proper { s, u, point, sign } => {
                        if model.on_cut(&point) {
                            return Err(DiscError::Degenerate(format!("crossing at ({point}) lies on a branch cut")));
                        }
                        let eb = b_prefix[j] + winding_increment(model, &bp[j], &point)?;
                        let ea = a_prefix[i] + winding_increment(model, &ap[i], &point)?;
                        found.push(Crossing {
                            point,
                            sign,
                            exponent: eb - ea,
                            beta_segment: j,
                            alpha_segment: i,
                            beta_param: u,
                            alpha_param: s,
                        });
                    }
                }
            }
            found.sort_by(|x, y| x.beta_param.cmp(&y.beta_param));
            Ok(found)
        })
        .collect();

    let mut all = Vec::new();
    for seg in per_segment {
        all.extend(seg?);
    }
    if let Some(first) = all.first() {
        let (s0, k0) = (first.sign, first.exponent);
        for c in &mut all {
            c.sign *= s0;
            c.exponent -= k0;
        }
    }
    Ok(CrossingList { crossings: all })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingPolynomial {
    pub value: LaurentPoly,
    pub crossing_count: usize,
    pub normalization: &'static str,
}

pub const NORMALIZATION: &str = "first crossing along beta is +t^0";

/// The lifted intersection pairing of `beta` with `alpha`.
pub fn pairing(model: &DiscModel, alpha: &PolylineArc, beta: &PolylineArc) -> Result<PairingPolynomial, DiscError> {
    let list = crossings(model, alpha, beta)?;
    Ok(PairingPolynomial { value: list.sum(), crossing_count: list.len(), normalization: NORMALIZATION })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemarkFailure {
    /// Index of the first crossing of the pair along β.
    pub index: usize,
    pub enclosed: usize,
    pub counterclockwise: bool,
    pub expected_gap: i64,
    pub actual_gap: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct RemarkReport {
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<RemarkFailure>,
}

impl RemarkReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Points of `pts` strictly between two positions `(segment, param)`,
/// walking from the first to the second.
fn subpath(pts: &[Point], from: (usize, &Rational, &Point), to: (usize, &Rational, &Point)) -> Vec<Point> {
    let forward = (from.0, from.1) <= (to.0, to.1);
    let mut out = vec![from.2.clone()];
    if forward {
        out.extend(pts[from.0 + 1..=to.0].iter().cloned());
    } else {
        out.extend(pts[to.0 + 1..=from.0].iter().rev().cloned());
    }
    out.push(to.2.clone());
    out
}

fn signed_area2(poly: &[Point]) -> Rational {
    let mut acc = Rational::zero();
    for k in 0..poly.len() {
        let (p, q) = (&poly[k], &poly[(k + 1) % poly.len()]);
        acc += &p.x * &q.y - &q.x * &p.y;
    }
    acc
}

/// Even-odd test with an upward ray; `p` must not lie on the polygon.
fn encloses(poly: &[Point], p: &Point) -> bool {
    let mut inside = false;
    for k in 0..poly.len() {
        let (a, b) = (&poly[k], &poly[(k + 1) % poly.len()]);
        let spans = (a.x <= p.x && p.x < b.x) || (b.x <= p.x && p.x < a.x);
        if spans {
            let y = &a.y + (&b.y - &a.y) * (&p.x - &a.x) / (&b.x - &a.x);
            if y > p.y {
                inside = !inside;
            }
        }
    }
    inside
}

/// Checks every pair of crossings consecutive along β against the rule
/// that the exponent changes by the number of punctures enclosed by the
/// two connecting subarcs, increasing when β runs counterclockwise.
///
/// Enclosure and orientation are computed directly from the polygon (ray
/// parity and signed area), independently of the cut-ray bookkeeping used
/// to assign exponents.
pub fn remark_check(model: &DiscModel, alpha: &PolylineArc, beta: &PolylineArc, list: &CrossingList) -> RemarkReport {
    let ap = alpha.points(model);
    let bp = beta.points(model);
    let mut report = RemarkReport::default();
    for (idx, pair) in list.crossings.windows(2).enumerate() {
        let (c1, c2) = (&pair[0], &pair[1]);
        let mut poly = subpath(&bp, (c1.beta_segment, &c1.beta_param, &c1.point), (c2.beta_segment, &c2.beta_param, &c2.point));
        let back = subpath(&ap, (c2.alpha_segment, &c2.alpha_param, &c2.point), (c1.alpha_segment, &c1.alpha_param, &c1.point));
        poly.extend(back[1..back.len() - 1].iter().cloned());
        let area = signed_area2(&poly);
        if area.is_zero() {
            report.skipped += 1;
            continue;
        }
        let ccw = area.is_positive();
        let enclosed = (1..=model.n).filter(|&i| encloses(&poly, &model.puncture(i))).count();
        let expected = if ccw { enclosed as i64 } else { -(enclosed as i64) };
        let actual = c2.exponent - c1.exponent;
        report.checked += 1;
        if expected != actual {
            report.failures.push(RemarkFailure {
                index: idx,
                enclosed,
                counterclockwise: ccw,
                expected_gap: expected,
                actual_gap: actual,
            });
        }
    }
    report
}

/// Arcs parsed from a fixture file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcSet {
    pub model: DiscModel,
    pub arcs: Vec<PolylineArc>,
}

impl ArcSet {
    pub fn get(&self, name: &str) -> Result<&PolylineArc, DiscError> {
        self.arcs.iter().find(|a| a.name == name).ok_or_else(|| DiscError::UnknownArc(name.to_string()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.arcs.iter().map(|a| a.name.as_str()).collect()
    }
}

/// Parses and validates the text fixture format:
///
/// ```text
/// disc n=5
/// arc alpha from q4 to q2
/// 321/80 0
/// ...
/// ```
pub fn parse_arcs(text: &str) -> Result<ArcSet, DiscError> {
    let mut model: Option<DiscModel> = None;
    let mut arcs: Vec<PolylineArc> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        let lineno = k + 1;
        let err = |reason: &str| DiscError::Parse { line: lineno, reason: reason.to_string() };
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("disc") {
            if model.is_some() {
                return Err(err("duplicate `disc` header"));
            }
            let n: usize = rest
                .trim()
                .strip_prefix("n=")
                .and_then(|v| v.trim().parse().ok())
                .ok_or_else(|| err("expected `disc n=<n>`"))?;
            if n < 1 {
                return Err(err("a disc needs at least one puncture"));
            }
            model = Some(DiscModel::new(n));
            continue;
        }
        if model.is_none() {
            return Err(err("file must start with `disc n=<n>`"));
        }
        if line.starts_with("arc") {
            let tok: Vec<&str> = line.split_whitespace().collect();
            if tok.len() != 6 || tok[0] != "arc" || tok[2] != "from" || tok[4] != "to" {
                return Err(err("expected `arc <name> from <q<i>|p0> to <q<j>|p0>`"));
            }
            let start = EndpointTag::parse(tok[3]).ok_or_else(|| err("bad start endpoint"))?;
            let end = EndpointTag::parse(tok[5]).ok_or_else(|| err("bad end endpoint"))?;
            if arcs.iter().any(|a| a.name == tok[1]) {
                return Err(err("duplicate arc name"));
            }
            arcs.push(PolylineArc::new(tok[1], start, end, Vec::new()));
            continue;
        }
        let p = Point::parse(line).ok_or_else(|| err("expected a vertex `<x> <y>` with integer or p/q coordinates"))?;
        arcs.last_mut().ok_or_else(|| err("vertex before any `arc` line"))?.vertices.push(p);
    }
    let model = model.ok_or(DiscError::Parse { line: 0, reason: "missing `disc n=<n>` header".into() })?;
    for arc in &arcs {
        arc.validate(&model)?;
    }
    Ok(ArcSet { model, arcs })
}

pub fn load_arcs(path: impl AsRef<Path>) -> Result<ArcSet, DiscError> {
    parse_arcs(&std::fs::read_to_string(path)?)
}

const ARC_COLOURS: [&str; 6] = ["#b03a2e", "#1f618d", "#117a65", "#7d3c98", "#b9770e", "#566573"];

/// Deterministic SVG drawing of the disc, the given arcs and optional
/// crossing labels.
pub fn render_svg(model: &DiscModel, arcs: &[&PolylineArc], crossings: Option<&CrossingList>) -> String {
    let scale = 100.0;
    let r = model.radius() as f64;
    let pad = 20.0;
    let size = 2.0 * r * scale + 2.0 * pad;
    let cx = pad + r * scale;
    let cy = pad + r * scale;
    let map = |p: (f64, f64)| (cx + p.0 * scale, cy - p.1 * scale);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0}" height="{size:.0}" viewBox="0 0 {size:.0} {size:.0}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r##"<circle cx="{cx:.2}" cy="{cy:.2}" r="{:.2}" fill="none" stroke="#000" stroke-width="1.5"/>"##, r * scale);
    for i in 1..=model.n {
        let (x, y) = map((i as f64, 0.0));
        let depth = (r * r - (i as f64).powi(2)).max(0.0).sqrt();
        let (_, yb) = map((i as f64, -depth));
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{y:.2}" x2="{x:.2}" y2="{yb:.2}" stroke="#bbb" stroke-dasharray="4 4"/>"##
        );
    }
    for (k, arc) in arcs.iter().enumerate() {
        let colour = ARC_COLOURS[k % ARC_COLOURS.len()];
        let pts: Vec<String> = arc
            .points(model)
            .iter()
            .map(|p| {
                let (x, y) = map(p.to_f64());
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#,
            pts.join(" ")
        );
        let pts = arc.points(model);
        let (lx, ly) = map(pts[pts.len() / 2].to_f64());
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="14" fill="{colour}">{}</text>"#,
            lx + 4.0,
            ly - 4.0,
            escape(&arc.name)
        );
    }
    for i in 1..=model.n {
        let (x, y) = map((i as f64, 0.0));
        let _ = writeln!(s, r##"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="#000"/>"##);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="13">q{i}</text>"#, x + 5.0, y + 16.0);
    }
    let (bx, by) = map(model.basepoint().to_f64());
    let _ = writeln!(s, r##"<circle cx="{bx:.2}" cy="{by:.2}" r="4" fill="#fff" stroke="#000"/>"##);
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="13">p0</text>"#, bx + 6.0, by - 6.0);
    if let Some(list) = crossings {
        for c in list.iter() {
            let (x, y) = map(c.point.to_f64());
            let colour = if c.sign > 0 { "#1e8449" } else { "#922b21" };
            let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="{colour}"/>"#);
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" font-size="9" fill="{colour}">{}</text>"#,
                x + 3.0,
                y - 3.0,
                c.monomial()
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn export_svg(
    model: &DiscModel,
    arcs: &[&PolylineArc],
    crossings: Option<&CrossingList>,
    path: impl AsRef<Path>,
) -> Result<(), DiscError> {
    std::fs::write(path, render_svg(model, arcs, crossings))?;
    Ok(())
}
