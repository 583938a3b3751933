use std::cmp::Ordering;

use num_complex::Complex64;

/// Eigenvalues with per-eigenvalue iteration counts and optional residuals.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    pub iterations_per_eigenvalue: Vec<usize>,
    pub residuals: Option<Vec<f64>>,
}

/// Ascending real part, ties broken by ascending imaginary part.
pub fn eigen_order(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

impl Spectrum {
    pub fn new(eigenvalues: Vec<Complex64>, iterations_per_eigenvalue: Vec<usize>) -> Self {
        let mut s = Self {
            eigenvalues,
            iterations_per_eigenvalue,
            residuals: None,
        };
        s.sort();
        s
    }

    pub fn from_eigenvalues(eigenvalues: Vec<Complex64>) -> Self {
        let k = eigenvalues.len();
        Self::new(eigenvalues, vec![0; k])
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Sorts eigenvalues (and the attached per-eigenvalue data) into
    /// [`eigen_order`].
    pub fn sort(&mut self) {
        let mut idx: Vec<usize> = (0..self.eigenvalues.len()).collect();
        idx.sort_by(|&a, &b| eigen_order(&self.eigenvalues[a], &self.eigenvalues[b]));
        let permute = |v: &[f64]| idx.iter().map(|&i| v[i]).collect::<Vec<_>>();
        self.eigenvalues = idx.iter().map(|&i| self.eigenvalues[i]).collect();
        if self.iterations_per_eigenvalue.len() == idx.len() {
            self.iterations_per_eigenvalue =
                idx.iter().map(|&i| self.iterations_per_eigenvalue[i]).collect();
        }
        if let Some(r) = &self.residuals {
            if r.len() == idx.len() {
                self.residuals = Some(permute(r));
            }
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// How far the multiset is from being closed under conjugation: the
    /// largest distance from some `conj(lambda)` to its nearest unused
    /// partner.
    pub fn conjugate_defect(&self) -> f64 {
        let conj: Vec<Complex64> = self.eigenvalues.iter().map(|z| z.conj()).collect();
        matched_distance(&self.eigenvalues, &conj)
    }
}

/// Largest pairwise distance after greedily matching each entry of `a` to
/// the nearest not-yet-used entry of `b`. The smallest available distance is
/// matched first. Returns infinity on a length mismatch.
pub fn matched_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let n = a.len();
    // For each a_i keep candidate list sorted by distance; a global greedy
    // over all pairs is O(n^2 log n), fine for the sizes compared here.
    let mut pairs: Vec<(f64, u32, u32)> = Vec::with_capacity(n * n);
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            pairs.push(((x - y).norm(), i as u32, j as u32));
        }
    }
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut used_a = vec![false; n];
    let mut used_b = vec![false; n];
    let mut worst: f64 = 0.0;
    let mut left = n;
    for (d, i, j) in pairs {
        if left == 0 {
            break;
        }
        let (i, j) = (i as usize, j as usize);
        if used_a[i] || used_b[j] {
            continue;
        }
        used_a[i] = true;
        used_b[j] = true;
        worst = worst.max(d);
        left -= 1;
    }
    worst
}
