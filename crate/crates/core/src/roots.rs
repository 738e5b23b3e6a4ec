//! Bracketing root finders shared by the fiber, spectrum and approx modules.

use alloc::vec::Vec;

/// Refines a sign change of `f` on `[a, b]` by bisection until the bracket
/// is shorter than `tol`. `fa` and `fb` are `f(a)` and `f(b)`; they must have
/// opposite signs (or one of them is zero).
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, mut fa: f64, fb: f64, tol: f64) -> f64 {
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    debug_assert!(fa.signum() != fb.signum());
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if (b - a).abs() <= tol || mid == a || mid == b {
            return mid;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// `n` equally spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => {
            let h = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + h * i as f64 })
                .collect()
        }
    }
}

/// All roots of `f` visible as sign changes on `grid` (sorted ascending),
/// each refined by bisection to `tol`. Non-finite samples break brackets.
pub fn scan_roots<F: FnMut(f64) -> f64>(mut f: F, grid: &[f64], tol: f64) -> Vec<f64> {
    let values: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    let mut roots = Vec::new();
    for i in 0..grid.len().saturating_sub(1) {
        let (fa, fb) = (values[i], values[i + 1]);
        if !fa.is_finite() || !fb.is_finite() {
            continue;
        }
        if fa == 0.0 {
            push_unique(&mut roots, grid[i], tol);
            continue;
        }
        if fb != 0.0 && fa.signum() != fb.signum() {
            let r = bisect(&mut f, grid[i], grid[i + 1], fa, fb, tol);
            push_unique(&mut roots, r, tol);
        }
    }
    if let (Some(&x), Some(&v)) = (grid.last(), values.last()) {
        if v == 0.0 {
            push_unique(&mut roots, x, tol);
        }
    }
    roots
}

fn push_unique(roots: &mut Vec<f64>, r: f64, tol: f64) {
    if roots.last().is_none_or(|&last| (r - last).abs() > 2.0 * tol) {
        roots.push(r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt_two() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, -2.0, 2.0, 1e-14);
        assert!((r - core::f64::consts::SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn scan_finds_all_roots_of_cubic() {
        let grid = linspace(-3.0, 3.0, 101);
        let roots = scan_roots(|x| (x + 2.0) * (x - 0.5) * (x - 1.7), &grid, 1e-13);
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip([-2.0, 0.5, 1.7]) {
            assert!((r - e).abs() < 1e-12, "{r} vs {e}");
        }
    }

    #[test]
    fn linspace_endpoints_exact() {
        let g = linspace(-1.0, 0.3, 7);
        assert_eq!(g[0], -1.0);
        assert_eq!(g[6], 0.3);
    }
}
