//! Dense-matrix reference walk. Builds the full (lattice ⊗ coins) evolution
//! operator for every step from the defining formulas and multiplies it out.
//! Shares nothing with the crate's evolution path beyond the Complex64 type.

#![allow(dead_code)]

use num_complex::Complex64;

pub type Matrix = Vec<Vec<Complex64>>;

pub fn su2_degrees(alpha: f64, beta: f64, gamma: f64) -> Matrix {
    let (a, b, g) = (alpha.to_radians(), beta.to_radians(), gamma.to_radians());
    let e = |x: f64| Complex64::from_polar(1.0, x);
    vec![
        vec![e(a) * b.cos(), -e(-g) * b.sin()],
        vec![e(g) * b.sin(), e(-a) * b.cos()],
    ]
}

pub fn coin_for(label: char) -> Matrix {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    match label {
        'A' => su2_degrees(-51.0, 45.0, 0.0),
        'B' => su2_degrees(0.0, 88.0, -16.0),
        'I' => vec![vec![one, zero], vec![zero, one]],
        'X' => vec![vec![zero, one], vec![one, zero]],
        other => panic!("no coin {other}"),
    }
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, ca, rb, cb) = (a.len(), a[0].len(), b.len(), b[0].len());
    let mut out = vec![vec![Complex64::new(0.0, 0.0); ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect()
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); m]; n];
    for i in 0..n {
        for p in 0..k {
            let x = a[i][p];
            if x == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[p][j];
            }
        }
    }
    out
}

pub fn matvec(a: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Displacement tables written out from the shift-operator sums.
pub fn shift_table(name: &str) -> Vec<i64> {
    match name {
        "single" => vec![1, -1],
        "two_wait" => vec![1, 0, 0, -1],
        "one_wait" => vec![1, 1, 0, -2],
        "three_coin" => vec![2, 1, 0, 0, 0, 0, -1, -2],
        other => panic!("no shift {other}"),
    }
}

/// Σ_n Σ_b |n + d_b⟩⟨n| ⊗ |b⟩⟨b| on positions −radius..=radius.
pub fn shift_matrix(table: &[i64], radius: usize) -> Matrix {
    let sites = 2 * radius + 1;
    let dim = table.len();
    let mut s = vec![vec![Complex64::new(0.0, 0.0); sites * dim]; sites * dim];
    let r = radius as i64;
    for n in -r..=r {
        for (b, d) in table.iter().enumerate() {
            let target = n + d;
            if target.abs() <= r {
                let col = ((n + r) as usize) * dim + b;
                let row = ((target + r) as usize) * dim + b;
                s[row][col] = Complex64::new(1.0, 0.0);
            }
        }
    }
    s
}

/// Margins `P_R − P_L` after each step.
pub fn dense_margins(
    initial_coin: &[Complex64],
    labels_at: impl Fn(usize) -> String,
    shift: &str,
    steps: usize,
) -> Vec<f64> {
    let table = shift_table(shift);
    let dim = table.len();
    assert_eq!(initial_coin.len(), dim);
    let dmax = table.iter().map(|d| d.abs()).max().unwrap() as usize;
    let radius = dmax * steps + 1;
    let sites = 2 * radius + 1;
    let mut psi = vec![Complex64::new(0.0, 0.0); sites * dim];
    psi[radius * dim..(radius + 1) * dim].copy_from_slice(initial_coin);

    let s = shift_matrix(&table, radius);
    let mut out = Vec::with_capacity(steps);
    for t in 0..steps {
        let labels = labels_at(t);
        let coin = labels
            .chars()
            .map(coin_for)
            .reduce(|acc, m| kron(&acc, &m))
            .unwrap();
        let u = matmul(&s, &kron(&identity(sites), &coin));
        psi = matvec(&u, &psi);
        let prob = |n: usize| -> f64 { psi[n * dim..(n + 1) * dim].iter().map(|a| a.norm_sqr()).sum() };
        let right: f64 = (radius + 1..sites).map(prob).sum();
        let left: f64 = (0..radius).map(prob).sum();
        out.push(right - left);
    }
    out
}
