//! Golden-section search for the maximum of a unimodal function on an interval.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes `f` on `[lo, hi]`, returning `(argmax, max)`.
///
/// The interval endpoints are always evaluated and compared against the
/// interior estimate, so a maximum sitting on the boundary is returned exactly.
pub fn maximize<F>(mut f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let fa = f(a);
    let fb = f(b);
    let mut best = if fb > fa { (b, fb) } else { (a, fa) };
    if b - a <= tol {
        return best;
    }

    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..max_iter {
        if b - a <= tol {
            break;
        }
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    for (x, fx) in [(x1, f1), (x2, f2)] {
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}
