// Copyright 2026 The vqsvd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Acceptance suite: one PASS/FAIL line per criterion.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use vqsvd_core::applications::{
    polar_via_vqsvd_matrix, read_pgm_file, recommend_with_vectors, compress_image,
};
use vqsvd_core::circuit::{AnsatzKind, AnsatzSpec, RotationMode, StateVector};
use vqsvd_core::estimator::{
    exact_re_im, hadamard_test_im, hadamard_test_re, sampled_term_values,
};
use vqsvd_core::lcu::{
    circulant_decompose, lcu_reconstruct, parse_lcu, pauli_decompose, write_lcu, LcuDecomposition,
    LcuTerm, PauliString, Unitary,
};
use vqsvd_core::linalg::{
    classical_svd, frobenius_norm, inner, normalized, DenseMatrix,
};
use vqsvd_core::scalar::{c, creal};
use vqsvd_core::solver::{loss_of_unitaries, run, VqsvdConfig, VqsvdProblem, VqsvdResult};
use vqsvd_core::verification::{
    distance_equality_check, majorization_check, vqfne_run, BoundSource, QualityReport,
};
use vqsvd_core::{Complex, Matrix};

struct Outcome {
    pass: bool,
    detail: String,
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn complex_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    DenseMatrix::from_fn(rows, cols, |_, _| c(gaussian(rng), gaussian(rng)))
}

fn real_matrix(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    DenseMatrix::from_fn(n, n, |_, _| creal(gaussian(rng)))
}

fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    classical_svd(&complex_matrix(n, n, rng)).unwrap().left
}

fn unit_vector(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex> {
    normalized(&(0..n).map(|_| c(gaussian(rng), gaussian(rng))).collect::<Vec<_>>()).unwrap()
}

fn within(elapsed: Duration, limit_s: u64) -> bool {
    elapsed <= Duration::from_secs(limit_s)
}

fn diag_lcu() -> LcuDecomposition<f64> {
    pauli_decompose(&DenseMatrix::diag(&[3.0, 2.0, 1.0, 0.5])).unwrap()
}

fn he_config(rank: usize, depth: usize, max_iterations: usize, seed: u64) -> VqsvdConfig {
    let mut c = VqsvdConfig::new(rank, AnsatzSpec::hardware_efficient(depth, RotationMode::Real));
    c.max_iterations = max_iterations;
    c.seed = seed;
    c
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn weighted_optimum() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut eq_ok, mut bound_ok, mut worst_gap) = (0, 0, 0.0f64);
    for _ in 0..100 {
        let n = rng.gen_range(2..=16);
        let m = complex_matrix(n, n, &mut rng);
        let s = classical_svd(&m).unwrap();
        let q: Vec<f64> = (1..=n).rev().map(|x| x as f64).collect();
        let best: f64 = q.iter().zip(&s.singular_values).map(|(q, d)| q * d).sum();
        let gap = (loss_of_unitaries(&m, &s.left, &s.right, &q).unwrap() - best).abs();
        worst_gap = worst_gap.max(gap);
        eq_ok += (gap <= 1e-9) as usize;
        let (u, v) = (random_unitary(n, &mut rng), random_unitary(n, &mut rng));
        bound_ok += (loss_of_unitaries(&m, &u, &v, &q).unwrap() <= best + 1e-9) as usize;
    }
    let t = start.elapsed();
    Outcome {
        pass: eq_ok == 100 && bound_ok == 100 && within(t, 10),
        detail: format!(
            "{eq_ok}/100 equalities (max gap {worst_gap:.1e}), {bound_ok}/100 random pairs below the optimum, {:.2} s",
            t.as_secs_f64()
        ),
    }
}

fn gradient_fidelity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let combos: Vec<(AnsatzKind, RotationMode)> = AnsatzKind::ALL
        .iter()
        .flat_map(|&k| [(k, RotationMode::Real), (k, RotationMode::Complex)])
        .collect();
    let mut worst = 0.0f64;
    for trial in 0..50 {
        let (kind, mode) = combos[trial % combos.len()];
        let n_qubits = 2 + trial % 2;
        let dim = 1 << n_qubits;
        let lcu = pauli_decompose(&complex_matrix(dim, dim, &mut rng)).unwrap();
        let spec = AnsatzSpec { kind, blocks: 2, mode };
        let mut cfg = VqsvdConfig::new(rng.gen_range(1..=dim), spec);
        cfg.v_ansatz = spec;
        let p = VqsvdProblem::from_config(lcu, &cfg).unwrap();
        let (a, b) = p.initial_params(rng.gen());
        let (ga, gb) = p.gradient_by_shifted_losses(&a, &b, 0).unwrap();
        let (sa, sb) = p.gradient(&a, &b).unwrap();
        let h = 1e-5;
        for l in 0..a.len() {
            let (mut x, mut y) = (a.clone(), a.clone());
            x[l] += h;
            y[l] -= h;
            let fd = (p.loss(&x, &b).unwrap() - p.loss(&y, &b).unwrap()) / (2.0 * h);
            worst = worst.max((ga[l] - fd).abs()).max((sa[l] - fd).abs());
        }
        for k in 0..b.len() {
            let (mut x, mut y) = (b.clone(), b.clone());
            x[k] += h;
            y[k] -= h;
            let fd = (p.loss(&a, &x).unwrap() - p.loss(&a, &y).unwrap()) / (2.0 * h);
            worst = worst.max((gb[k] - fd).abs()).max((sb[k] - fd).abs());
        }
    }
    let t = start.elapsed();
    Outcome {
        pass: worst < 1e-6 && within(t, 60),
        detail: format!(
            "50 triples over 4 candidates x 2 rotation modes, max |shift - fd| = {worst:.1e}, {:.2} s",
            t.as_secs_f64()
        ),
    }
}

fn spectrum_recovery(runs: &mut Vec<(Matrix, VqsvdResult<f64>)>) -> Outcome {
    let start = Instant::now();
    let lcu = diag_lcu();
    let d = [3.0, 2.0, 1.0, 0.5];
    let mut good = 0;
    let mut errors = Vec::new();
    for seed in 0..10 {
        let mut cfg = he_config(4, 20, 500, seed);
        cfg.weights = Some(vec![4.0, 3.0, 2.0, 1.0]);
        let r = run(&lcu, &cfg).unwrap();
        let err: f64 = r.m_values.iter().zip(d).map(|(m, d)| (m - d).abs()).sum();
        good += (err < 0.1) as usize;
        errors.push(format!("{err:.1e}"));
        runs.push((DenseMatrix::diag(&d), r));
    }
    let t = start.elapsed();
    Outcome {
        pass: good >= 8 && within(t, 120),
        detail: format!(
            "{good}/10 seeds with sum|m - d| < 0.1 [{}], {:.2} s",
            errors.join(", "),
            t.as_secs_f64()
        ),
    }
}

fn eight_by_eight(runs: &mut Vec<(Matrix, VqsvdResult<f64>)>) -> Outcome {
    let start = Instant::now();
    let (mut monotone, mut close) = (0, 0);
    let mut ratios = Vec::new();
    for seed in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(400 + seed);
        let m = real_matrix(8, &mut rng);
        let r = run(&pauli_decompose(&m).unwrap(), &he_config(8, 20, 500, seed)).unwrap();
        let t = r.triplets();
        let curve = vqsvd_core::applications::distance_curve(&m, &t.values, &t.lefts, &t.rights)
            .unwrap();
        monotone += curve.windows(2).all(|w| w[1] <= w[0] + 1e-12) as usize;
        let ratio = curve[7] / frobenius_norm(&m);
        close += (ratio < 0.25) as usize;
        ratios.push(format!("{ratio:.3}"));
        runs.push((m, r));
    }
    let t = start.elapsed();
    Outcome {
        pass: monotone == 10 && close >= 7 && within(t, 300),
        detail: format!(
            "monotone on {monotone}/10, full-rank distance < 0.25 |M|_F on {close}/10 [{}], {:.2} s",
            ratios.join(", "),
            t.as_secs_f64()
        ),
    }
}

fn estimator_statistics() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let shots = 1000u64;
    let sigma = 1.0 / (shots as f64).sqrt();
    let (mut unbiased, mut cases) = (0, 0);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let psi = StateVector::new(unit_vector(4, &mut rng)).unwrap();
        let w = random_unitary(4, &mut rng);
        let wpsi = StateVector::new(w.matvec(psi.amplitudes())).unwrap();
        let (re, im) = exact_re_im(&psi, &wpsi).unwrap();
        let reps = 200;
        let base: u64 = rng.gen();
        let mean_re = (0..reps)
            .map(|k| hadamard_test_re(&psi, &w, shots, base + k).unwrap())
            .sum::<f64>()
            / reps as f64;
        let mean_im = (0..reps)
            .map(|k| hadamard_test_im(&psi, &w, shots, base + 1000 + k).unwrap())
            .sum::<f64>()
            / reps as f64;
        for dev in [(mean_re - re).abs(), (mean_im - im).abs()] {
            worst = worst.max(dev / sigma);
            unbiased += (dev <= 3.0 * sigma) as usize;
            cases += 1;
        }
    }
    let mut variance_ok = 0;
    for k in 0..20u64 {
        let n_terms = rng.gen_range(1..=6);
        let terms = (0..n_terms)
            .map(|_| {
                let label: String = (0..2).map(|_| ['I', 'X', 'Y', 'Z'][rng.gen_range(0..4)]).collect();
                LcuTerm {
                    coefficient: c(gaussian(&mut rng), gaussian(&mut rng)),
                    unitary: Unitary::Pauli(label.parse::<PauliString>().unwrap()),
                }
            })
            .collect();
        let lcu = LcuDecomposition::new(4, terms).unwrap();
        let (u, v) = (unit_vector(4, &mut rng), unit_vector(4, &mut rng));
        let xs = sampled_term_values(&lcu, &u, &v, 4000, 77, k).unwrap();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
        variance_ok += (var <= lcu.l1_norm().powi(2)) as usize;
    }
    let t = start.elapsed();
    Outcome {
        pass: unbiased == cases && variance_ok == 20 && within(t, 120),
        detail: format!(
            "{unbiased}/{cases} Hadamard means within 3 sigma (worst {worst:.2} sigma), variance <= |c|_1^2 on {variance_ok}/20 LCUs, {:.2} s",
            t.as_secs_f64()
        ),
    }
}

fn verification_suite(runs: &[(Matrix, VqsvdResult<f64>)]) -> Outcome {
    let start = Instant::now();
    let converged: Vec<_> = runs.iter().filter(|(_, r)| r.converged).collect();
    let bounds_ok = converged
        .iter()
        .filter(|(m, r)| {
            let q = QualityReport::assess(m, &r.triplets(), BoundSource::Oracle, None).unwrap();
            q.epsilon_d_ok() && q.epsilon_v_ok()
        })
        .count();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let major_ok = (0..100)
        .filter(|_| {
            let chk = majorization_check(&complex_matrix(8, 8, &mut rng)).unwrap();
            chk.margins.iter().all(|&g| g >= -1e-10)
        })
        .count();
    let mut worst_identity = 0.0f64;
    for _ in 0..100 {
        let fam = |rng: &mut ChaCha8Rng| -> Vec<Vec<Complex>> {
            (0..3).map(|_| unit_vector(8, rng)).collect()
        };
        let (u, v, uh, vh) = (fam(&mut rng), fam(&mut rng), fam(&mut rng), fam(&mut rng));
        let (l, r) = distance_equality_check(&u, &v, &uh, &vh).unwrap();
        worst_identity = worst_identity.max((l - r).abs());
    }
    let lcu = diag_lcu();
    let mut vqfne_ok = 0;
    for seed in 0..10 {
        let f = vqfne_run(&lcu, &he_config(2, 20, 500, seed)).unwrap();
        vqfne_ok += ((f.value - 13.0).abs() < 0.1) as usize;
    }
    let t = start.elapsed();
    Outcome {
        pass: bounds_ok == converged.len()
            && !converged.is_empty()
            && major_ok == 100
            && worst_identity < 1e-10
            && vqfne_ok >= 8,
        detail: format!(
            "error bounds on {bounds_ok}/{} converged runs, majorization {major_ok}/100, distance identity max gap {worst_identity:.1e}, VQFNE |F - 13| < 0.1 on {vqfne_ok}/10, {:.2} s",
            converged.len(),
            t.as_secs_f64()
        ),
    }
}

fn lcu_roundtrips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for k in 0..100 {
        let dim = 1 << (1 + k % 3);
        let m = complex_matrix(dim, dim, &mut rng);
        let lcu = pauli_decompose(&m).unwrap();
        let back = parse_lcu(&write_lcu(&lcu).unwrap()).unwrap();
        worst = worst
            .max(lcu_reconstruct(&lcu).max_abs_diff(&m))
            .max(lcu_reconstruct(&back).max_abs_diff(&m));
    }
    for _ in 0..100 {
        let d = rng.gen_range(1..=9);
        let row: Vec<Complex> = (0..d).map(|_| c(gaussian(&mut rng), gaussian(&mut rng))).collect();
        let rebuilt = lcu_reconstruct(&circulant_decompose(&row).unwrap());
        let want = DenseMatrix::from_fn(d, d, |i, j| row[(j + d - i) % d]);
        worst = worst.max(rebuilt.max_abs_diff(&want));
    }
    let c3 = lcu_reconstruct(&circulant_decompose(&[creal(1.0), creal(2.0), creal(3.0)]).unwrap());
    let pattern = DenseMatrix::from_real(3, 3, &[1.0, 2.0, 3.0, 3.0, 1.0, 2.0, 2.0, 3.0, 1.0]).unwrap();
    let pattern_ok = c3.max_abs_diff(&pattern) < 1e-15;
    Outcome {
        pass: worst < 1e-10 && pattern_ok,
        detail: format!(
            "100 Pauli + 100 circulant rebuilds, max error {worst:.1e}, 3x3 row pattern {}",
            if pattern_ok { "matches" } else { "differs" }
        ),
    }
}

fn applications() -> Outcome {
    let start = Instant::now();
    let image = read_pgm_file(fixture("digit7_32.pgm")).unwrap();
    let mut compress_ok = 0;
    let mut ratios = Vec::new();
    for seed in 0..10 {
        let (report, _) = compress_image(&image, &he_config(5, 20, 200, seed)).unwrap();
        compress_ok += (report.distance_ratio() <= 2.0) as usize;
        ratios.push(format!("{:.2}", report.distance_ratio()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst_projection = 0.0f64;
    for _ in 0..50 {
        let a = DenseMatrix::from_fn(8, 8, |_, _| creal(rng.gen_range(0..6) as f64));
        let row = rng.gen_range(0..8);
        if a.row(row).iter().all(|z| z.norm() == 0.0) {
            continue;
        }
        let s = classical_svd(&a).unwrap();
        let rights: Vec<_> = (0..3).map(|t| s.right_vector(t)).collect();
        let out = match recommend_with_vectors(&a, &rights, row, 0, 0) {
            Ok(o) => o,
            Err(_) => continue,
        };
        let b: Vec<Complex> = a.row(row).iter().map(|z| z.conj()).collect();
        let mut proj = vec![c(0.0, 0.0); 8];
        for v in &rights {
            let x = inner(v, &b);
            for (p, vi) in proj.iter_mut().zip(v) {
                *p += x * vi;
            }
        }
        let proj = normalized(&proj).unwrap();
        for (p, z) in out.probabilities.iter().zip(&proj) {
            worst_projection = worst_projection.max((p - z.norm_sqr()).abs());
        }
    }
    let mut polar_inputs = vec![DenseMatrix::from_real(2, 2, &[0.0, -2.0, 2.0, 0.0]).unwrap()];
    polar_inputs.extend((0..3).map(|_| real_matrix(4, &mut rng)));
    let mut polar_ok = 0;
    let mut polar_worst = (0.0f64, f64::INFINITY, 0.0f64);
    for (k, m) in polar_inputs.iter().enumerate() {
        let mut cfg = he_config(m.rows(), 20, 2000, k as u64);
        cfg.tolerance = 1e-12;
        let out = polar_via_vqsvd_matrix(m, &cfg).unwrap();
        polar_worst = (
            polar_worst.0.max(out.unitarity_residual),
            polar_worst.1.min(out.min_eigenvalue_p),
            polar_worst.2.max(out.relative_product_residual),
        );
        polar_ok += (out.unitarity_residual <= 1e-6
            && out.min_eigenvalue_p >= -1e-6
            && out.relative_product_residual <= 1e-4) as usize;
    }
    let t = start.elapsed();
    Outcome {
        pass: compress_ok >= 7 && worst_projection < 1e-8 && polar_ok == polar_inputs.len(),
        detail: format!(
            "compression within 2x on {compress_ok}/10 [{}], oracle projection max error {worst_projection:.1e}, polar {polar_ok}/{} (unitarity {:.1e}, min eig {:.2e}, product {:.1e}), {:.2} s",
            ratios.join(", "),
            polar_inputs.len(),
            polar_worst.0,
            polar_worst.1,
            polar_worst.2,
            t.as_secs_f64()
        ),
    }
}

fn run_cli(args: &[&str], out: &Path) -> bool {
    Command::new(env!("CARGO_BIN_EXE_vqsvd"))
        .args(args)
        .arg("--out-dir")
        .arg(out)
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false)
}

fn dir_contents(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
        })
        .collect();
    files.sort();
    files
}

fn reproducibility() -> Outcome {
    let root = std::env::temp_dir().join(format!("vqsvd-acceptance-{}", std::process::id()));
    let f = |n: &str| fixture(n).to_string_lossy().into_owned();
    let (diag, cfg, digit) = (f("diag4.txt"), f("diag4_config.json"), f("digit7_32.pgm"));
    let (prefs, gauss, rot, circ) = (
        f("preferences8.txt"),
        f("gaussian8.txt"),
        f("rotation2.txt"),
        f("circulant3.txt"),
    );
    let commands: Vec<(&str, Vec<String>)> = vec![
        ("decompose", vec!["decompose".into(), circ.clone(), "--mode".into(), "circulant".into()]),
        ("svd", vec!["svd".into(), diag.clone(), "--config".into(), cfg.clone()]),
        (
            "svd-shots",
            vec![
                "svd".into(), diag.clone(), "--seed".into(), "3".into(), "--estimator".into(),
                "shots".into(), "--shots".into(), "200".into(), "--max-iterations".into(), "30".into(),
                "--depth".into(), "4".into(),
            ],
        ),
        ("compress", vec!["compress".into(), digit, "--seed".into(), "1".into(), "--max-iterations".into(), "50".into()]),
        ("recommend", vec!["recommend".into(), prefs, "--row".into(), "2".into(), "--samples".into(), "20".into(), "--seed".into(), "2".into()]),
        ("polar", vec!["polar".into(), rot, "--seed".into(), "3".into()]),
        ("bench-ansatz", vec!["bench-ansatz".into(), gauss, "--seed".into(), "4".into(), "--max-iterations".into(), "40".into()]),
    ];
    let mut same = 0;
    let mut failures = Vec::new();
    for (name, args) in &commands {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (root.join(name).join("first"), root.join(name).join("second"));
        let ok = run_cli(&args, &a) && run_cli(&args, &b);
        if ok && name.starts_with("svd") {
            let verify = |d: &Path| {
                run_cli(&["verify", &diag, &d.join("result.json").to_string_lossy()], d)
            };
            if !(verify(&a) && verify(&b)) {
                failures.push(format!("{name}: verify failed"));
                continue;
            }
        }
        if ok && dir_contents(&a) == dir_contents(&b) && !dir_contents(&a).is_empty() {
            same += 1;
        } else {
            failures.push(name.to_string());
        }
    }
    let _ = std::fs::remove_dir_all(&root);
    Outcome {
        pass: same == commands.len(),
        detail: format!(
            "{same}/{} command runs byte-identical on rerun{}",
            commands.len(),
            if failures.is_empty() {
                String::new()
            } else {
                format!(" (differing: {})", failures.join(", "))
            }
        ),
    }
}

fn main() {
    let mut runs = Vec::new();
    let results = [
        ("weighted optimum", weighted_optimum()),
        ("gradient fidelity", gradient_fidelity()),
        ("spectrum recovery", spectrum_recovery(&mut runs)),
        ("8x8 protocol", eight_by_eight(&mut runs)),
        ("estimator statistics", estimator_statistics()),
        ("verification suite", verification_suite(&runs)),
        ("LCU roundtrips", lcu_roundtrips()),
        ("applications", applications()),
        ("reproducibility", reproducibility()),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        failed += (!o.pass) as usize;
        println!("criterion {} ({name}): {verdict}: {}", i + 1, o.detail);
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", results.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", results.len());
}
