use crate::costmodel::Point;

type P = (i64, i64);

fn cross(o: P, a: P, b: P) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Counterclockwise convex hull without collinear vertices (monotone chain).
///
/// Degenerate inputs return one vertex for a single point and the two
/// endpoints for a collinear set.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<P> = points.iter().map(|p| (p.x as i64, p.y as i64)).collect();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return to_points(&pts);
    }
    let mut hull: Vec<P> = Vec::with_capacity(2 * pts.len());
    for pass in [&pts[..], &pts.iter().rev().copied().collect::<Vec<_>>()[..]] {
        let floor = hull.len();
        for &p in pass {
            while hull.len() >= floor + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    to_points(&hull)
}

fn to_points(pts: &[P]) -> Vec<Point> {
    pts.iter()
        .map(|&(x, y)| Point::new(x as usize, y as usize))
        .collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Lattice points inside or on the convex hull of `points`.
pub fn lattice_hull_count(points: &[Point]) -> usize {
    let hull: Vec<P> = convex_hull(points)
        .iter()
        .map(|p| (p.x as i64, p.y as i64))
        .collect();
    match hull.len() {
        0 => 0,
        1 => 1,
        2 => (gcd(hull[1].0 - hull[0].0, hull[1].1 - hull[0].1) + 1) as usize,
        _ => scan_rows(&hull),
    }
}

/// Counts each row's integer span between the polygon's edges.
fn scan_rows(hull: &[P]) -> usize {
    let y_min = hull.iter().map(|p| p.1).min().unwrap();
    let y_max = hull.iter().map(|p| p.1).max().unwrap();
    let mut total = 0usize;
    for y in y_min..=y_max {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for (i, &a) in hull.iter().enumerate() {
            let b = hull[(i + 1) % hull.len()];
            if y < a.1.min(b.1) || y > a.1.max(b.1) {
                continue;
            }
            if a.1 == b.1 {
                lo = lo.min(a.0.min(b.0));
                hi = hi.max(a.0.max(b.0));
                continue;
            }
            // x = a.x + (y - a.y)(b.x - a.x)/(b.y - a.y), as num/den with den > 0
            let (mut num, mut den) = ((y - a.1) * (b.0 - a.0), b.1 - a.1);
            if den < 0 {
                num = -num;
                den = -den;
            }
            let floor = a.0 + num.div_euclid(den);
            let ceil = a.0 - (-num).div_euclid(den);
            lo = lo.min(ceil);
            hi = hi.max(floor);
        }
        if hi >= lo {
            total += (hi - lo + 1) as usize;
        }
    }
    total
}
