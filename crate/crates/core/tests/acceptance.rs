//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use mincoupling_core::fixtures::{
    worked_matrix, worked_p, worked_q, WORKED_GLB, WORKED_INVERSION_POINTS,
};
use mincoupling_core::kway::k_min_entropy_coupling_traced;
use mincoupling_core::lattice::{glb, glb_all, half, half_pow};
use mincoupling_core::oracle::exact_min_entropy;
use mincoupling_core::pairwise::{
    inversion_points, min_entropy_coupling, CouplingMatrix, InversionPoints,
};
use mincoupling_core::prob::{prefix_dominates, ProbVec, Tolerances};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const MARGINAL_TOL: f64 = 1e-9;
const GLB_TOL: f64 = 1e-12;
const MAJ_SLACK: f64 = 1e-9;

type Outcome = Result<String, String>;

fn tol() -> Tolerances {
    Tolerances::default()
}

/// Uniform point on the simplex (normalized exponentials).
fn simplex(rng: &mut StdRng, n: usize) -> ProbVec {
    let w: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let s: f64 = w.iter().sum();
    ProbVec::new(&w.iter().map(|x| x / s).collect::<Vec<_>>(), &tol()).unwrap()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn max_marginal_deviation(m: &CouplingMatrix, p: &ProbVec, q: &ProbVec) -> f64 {
    let n = m.side();
    let (pp, qp) = (p.pad_to(n).unwrap(), q.pad_to(n).unwrap());
    let rows = m
        .row_sums()
        .into_iter()
        .zip(pp.values())
        .map(|(a, b)| (a - b).abs());
    let cols = m
        .col_sums()
        .into_iter()
        .zip(qp.values())
        .map(|(a, b)| (a - b).abs());
    rows.chain(cols).fold(0.0, f64::max)
}

/// Rows (p-segments) or columns (q-segments) of each segment block hold at
/// most two nonzeros summing to the matching glb component; the blocks cover
/// every nonzero cell.
fn segment_blocks_hold(m: &CouplingMatrix, ip: &InversionPoints, z: &[f64]) -> Result<(), String> {
    let n = m.side();
    let mut covered = vec![false; n * n];
    for s in 1..=ip.k() {
        let (lo, top) = (ip.indices[s], ip.indices[s - 1] - 1);
        let wide = lo.saturating_sub(1).max(1);
        let p_seg = s % 2 == 1;
        let (rows, cols) = if p_seg {
            (lo..=top, wide..=top)
        } else {
            (wide..=top, lo..=top)
        };
        for i in rows.clone() {
            for j in cols.clone() {
                covered[(i - 1) * n + (j - 1)] = true;
            }
        }
        for line in lo..=top {
            let cells: Vec<f64> = if p_seg {
                cols.clone().map(|j| m.get(line - 1, j - 1)).collect()
            } else {
                rows.clone().map(|i| m.get(i - 1, line - 1)).collect()
            };
            let nz = cells.iter().filter(|&&v| v > 0.0).count();
            let sum: f64 = cells.iter().sum();
            check(nz <= 2 && (sum - z[line - 1]).abs() <= MARGINAL_TOL, || {
                format!(
                    "segment {s} line {line}: {nz} nonzeros summing to {sum}, z = {}",
                    z[line - 1]
                )
            })?;
        }
    }
    for (idx, &v) in m.cells().iter().enumerate() {
        check(v == 0.0 || covered[idx], || {
            format!("cell {idx} outside every segment block")
        })?;
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (p, q) = (worked_p(), worked_q());
    let z = glb(&p, &q).z;
    let ip = inversion_points(&p, &q, &tol()).map_err(|e| e.to_string())?;
    let m = min_entropy_coupling(&p, &q, &tol()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    for (i, (&got, &want)) in z.values().iter().zip(WORKED_GLB.iter()).enumerate() {
        check((got - want).abs() <= GLB_TOL, || {
            format!("z[{i}] = {got}, expected {want}")
        })?;
    }
    check(ip.indices == WORKED_INVERSION_POINTS, || {
        format!("inversion points {:?}", ip.indices)
    })?;
    let expected = worked_matrix();
    for i in 0..13 {
        for j in 0..13 {
            check((m.get(i, j) - expected[i][j]).abs() <= MARGINAL_TOL, || {
                format!(
                    "m[{}][{}] = {}, expected {}",
                    i + 1,
                    j + 1,
                    m.get(i, j),
                    expected[i][j]
                )
            })?;
        }
    }
    segment_blocks_hold(&m, &ip, z.values())?;
    check(elapsed < Duration::from_millis(10), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "z, inversion points, 13x13 matrix and segment blocks match ({elapsed:?})"
    ))
}

fn random_pairs(seed: u64, count: usize) -> Vec<(ProbVec, ProbVec)> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(2..=64);
            (simplex(&mut rng, n), simplex(&mut rng, n))
        })
        .collect()
}

fn criteria_2_and_3() -> (Outcome, Outcome) {
    let pairs = random_pairs(2, 10_000);
    let start = Instant::now();
    let mut worst_dev = 0.0f64;
    let mut worst_gap = (f64::INFINITY, f64::NEG_INFINITY);
    let mut sandwich_err = None;
    for (idx, (p, q)) in pairs.iter().enumerate() {
        let m = match min_entropy_coupling(p, q, &tol()) {
            Ok(m) => m,
            Err(e) => {
                let msg = format!("instance {idx}: {e}");
                return (Err(msg.clone()), Err(msg));
            }
        };
        worst_dev = worst_dev.max(max_marginal_deviation(&m, p, q));
        let gap = m.entropy() - glb(p, q).z.entropy();
        worst_gap = (worst_gap.0.min(gap), worst_gap.1.max(gap));
        let n = m.side();
        if sandwich_err.is_none() && (gap < 0.0 || gap > 1.0 || m.nnz(tol().eps_zero) > 2 * n) {
            sandwich_err = Some(format!(
                "instance {idx}: gap {gap}, nnz {} for n {n}",
                m.nnz(tol().eps_zero)
            ));
        }
    }
    let elapsed = start.elapsed();
    let c2 = if worst_dev <= MARGINAL_TOL && elapsed < Duration::from_secs(30) {
        Ok(format!(
            "max marginal deviation {worst_dev:.2e} over 10000 pairs ({elapsed:?})"
        ))
    } else {
        Err(format!("max deviation {worst_dev:e}, runtime {elapsed:?}"))
    };
    let c3 = match sandwich_err {
        None => Ok(format!(
            "H(M) - H(p∧q) in [{:.4}, {:.4}] bits, nnz <= 2n everywhere",
            worst_gap.0, worst_gap.1
        )),
        Some(e) => Err(e),
    };
    (c2, c3)
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for idx in 0..500 {
        let (n, m) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let (p, q) = (simplex(&mut rng, n), simplex(&mut rng, m));
        let hz = glb(&p, &q).z.entropy();
        let (opt, _) = exact_min_entropy(&p, &q, &tol()).map_err(|e| e.to_string())?;
        let hm = min_entropy_coupling(&p, &q, &tol())
            .map_err(|e| e.to_string())?
            .entropy();
        check(
            hz <= opt + 1e-9 && opt <= hm + 1e-9 && hm <= hz + 1.0 + 1e-9,
            || format!("instance {idx}: H(z)={hz}, OPT={opt}, H(M)={hm}"),
        )?;
        worst = worst.max(hm - opt);
    }
    let p = ProbVec::new(&[0.5, 0.5], &tol()).unwrap();
    let q = ProbVec::new(&[0.6, 0.4], &tol()).unwrap();
    let (opt, _) = exact_min_entropy(&p, &q, &tol()).map_err(|e| e.to_string())?;
    let hm = min_entropy_coupling(&p, &q, &tol())
        .map_err(|e| e.to_string())?
        .entropy();
    // 1.36096404744368117... bits, evaluated to 40 digits
    let hand = 1.360_964_047_443_681_2;
    check(
        (hm - opt).abs() <= 1e-9 && (hm - hand).abs() <= 1e-9,
        || format!("hand-traced instance: H(M)={hm}, OPT={opt}"),
    )?;
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "500 pairs: max H(M) - OPT = {worst:.4} bits; 2x2 case H(M) = OPT = {hm:.6} ({elapsed:?})"
    ))
}

fn criteria_5_and_6() -> (Outcome, Outcome) {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(5);
    let mut c5: Result<(), String> = Ok(());
    let mut c6: Result<(), String> = Ok(());
    let mut chain_checks = 0usize;
    for k in [2usize, 3, 4, 8] {
        let levels = k.next_power_of_two().trailing_zeros() as f64;
        for idx in 0..200 {
            let ps: Vec<ProbVec> = (0..k)
                .map(|_| {
                    let n = rng.random_range(1..=8);
                    simplex(&mut rng, n)
                })
                .collect();
            let (joint, trace) = match k_min_entropy_coupling_traced(&ps, &tol()) {
                Ok(r) => r,
                Err(e) => {
                    let msg = format!("k={k} instance {idx}: {e}");
                    return (Err(msg.clone()), Err(msg));
                }
            };
            if c5.is_ok() {
                for (axis, p) in ps.iter().enumerate() {
                    let got = joint.marginal(axis).unwrap();
                    let dev = got
                        .iter()
                        .zip(p.to_original_order())
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max);
                    if dev > MARGINAL_TOL {
                        c5 = Err(format!(
                            "k={k} instance {idx} axis {axis}: deviation {dev:e}"
                        ));
                    }
                }
                let gap = joint.entropy() - glb_all(&ps).unwrap().entropy();
                if gap < 0.0 || gap > levels {
                    c5 = Err(format!(
                        "k={k} instance {idx}: gap {gap} outside [0, {levels}]"
                    ));
                }
            }
            if k == 8 && c6.is_ok() {
                for node in trace.nodes.iter().filter(|n| n.level > 0) {
                    let lower = half_pow(
                        &glb_all(&trace.padded[node.leaves.clone()]).unwrap(),
                        node.level,
                    );
                    chain_checks += 1;
                    if !prefix_dominates(&node.values, lower.values(), MAJ_SLACK) {
                        c6 = Err(format!(
                            "instance {idx}: chain fails at node {:?}",
                            node.leaves
                        ));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        c5 = Err(format!("took {elapsed:?}"));
    }
    (
        c5.map(|_| format!("k in {{2,3,4,8}} x 200: marginals within 1e-9, gap within ceil(log2 k) ({elapsed:?})")),
        c6.map(|_| format!("{chain_checks} internal nodes dominate half^l of their leaves' glb")),
    )
}

/// `q` averaged over random permutations: a doubly-stochastic image of `q`,
/// hence majorized by it.
fn averaged(rng: &mut StdRng, q: &ProbVec) -> ProbVec {
    let n = q.len();
    let terms = rng.random_range(1..=4);
    let weights: Vec<f64> = (0..terms).map(|_| rng.random::<f64>() + 0.05).collect();
    let wsum: f64 = weights.iter().sum();
    let mut out = vec![0.0; n];
    for w in weights {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        for (i, &pi) in perm.iter().enumerate() {
            out[i] += w / wsum * q.values()[pi];
        }
    }
    let s: f64 = out.iter().sum();
    ProbVec::new(&out.iter().map(|x| x / s).collect::<Vec<_>>(), &tol()).unwrap()
}

fn criterion_7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    for idx in 0..200 {
        let n = rng.random_range(1..=32);
        let p = simplex(&mut rng, n);
        for i in 0..=5 {
            let d = half_pow(&p, i).entropy() - p.entropy() - i as f64;
            check(d.abs() <= 1e-12, || {
                format!("instance {idx}: H(half^{i}) off by {d:e}")
            })?;
        }
    }
    for idx in 0..1000 {
        let n = rng.random_range(2..=16);
        let q = simplex(&mut rng, n);
        let p = averaged(&mut rng, &q);
        check(prefix_dominates(q.values(), p.values(), MAJ_SLACK), || {
            format!("pair {idx}: generator produced an incomparable pair")
        })?;
        check(
            prefix_dominates(half(&q).values(), half(&p).values(), MAJ_SLACK),
            || format!("pair {idx}: half(p) not below half(q)"),
        )?;
        for i in 1..=3 {
            let lhs = half_pow(&glb(&p, &q).z, i);
            let rhs = glb(&half_pow(&p, i), &half_pow(&q, i)).z;
            check(
                prefix_dominates(rhs.values(), lhs.values(), MAJ_SLACK),
                || format!("pair {idx}: half^{i}(p∧q) not below half^{i}(p) ∧ half^{i}(q)"),
            )?;
            // also on an unrelated pair
            let r = simplex(&mut rng, n);
            let lhs = half_pow(&glb(&p, &r).z, i);
            let rhs = glb(&half_pow(&p, i), &half_pow(&r, i)).z;
            check(
                prefix_dominates(rhs.values(), lhs.values(), MAJ_SLACK),
                || format!("pair {idx}: power inequality fails on an unrelated pair (i={i})"),
            )?;
        }
    }
    Ok("entropy shift exact for i <= 5; both half inequalities hold on 1000 pairs".into())
}

fn suffix(v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; v.len() + 1];
    for i in (0..v.len()).rev() {
        out[i] = out[i + 1] + v[i];
    }
    out
}

fn criterion_8() -> Outcome {
    let pairs = random_pairs(8, 1000);
    for (idx, (p, q)) in pairs.iter().enumerate() {
        let g = glb(p, q);
        let z = g.z.values();
        check(z.windows(2).all(|w| w[0] >= w[1] - 1e-15), || {
            format!("pair {idx}: z not sorted")
        })?;
        let mut acc = 0.0;
        for i in 0..z.len() {
            acc += z[i];
            let want = g.prefix_p[i].min(g.prefix_q[i]);
            check((acc - want).abs() <= GLB_TOL, || {
                format!("pair {idx}: prefix {i} off by {:e}", acc - want)
            })?;
        }
        let ip = inversion_points(p, q, &tol()).map_err(|e| e.to_string())?;
        let (a, b) = if ip.swapped {
            (q.values(), p.values())
        } else {
            (p.values(), q.values())
        };
        let (sa, sb, sz) = (suffix(a), suffix(b), suffix(z));
        for s in 1..=ip.k() {
            let (lo, top) = (ip.indices[s], ip.indices[s - 1] - 1);
            let (own, own_suffix, other, other_suffix) = if s % 2 == 1 {
                (a, &sa, b, &sb)
            } else {
                (b, &sb, a, &sa)
            };
            // suffix identities over the whole segment
            for i in lo..=top {
                check((sz[i - 1] - own_suffix[i - 1]).abs() <= GLB_TOL, || {
                    format!("pair {idx}: suffix identity fails at {i} (segment {s})")
                })?;
            }
            // componentwise identity away from the segment top
            for i in lo..top {
                check((z[i - 1] - own[i - 1]).abs() <= GLB_TOL, || {
                    format!("pair {idx}: z_{i} differs from the segment's marginal")
                })?;
            }
            // the position just below the segment
            if lo > 1 {
                let at = lo - 1;
                let want = other[at - 1] - (own_suffix[lo - 1] - other_suffix[lo - 1]);
                check(
                    (z[at - 1] - want).abs() <= GLB_TOL && z[at - 1] >= own[at - 1] - GLB_TOL,
                    || format!("pair {idx}: boundary identity fails at {at}"),
                )?;
            }
        }
    }
    Ok("glb sorted, prefix-min identity and segment identities on 1000 pairs".into())
}

fn best_of(runs: usize, f: impl Fn()) -> f64 {
    (0..runs)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed().as_secs_f64()
        })
        .fold(f64::INFINITY, f64::min)
}

fn criterion_9() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let sizes = [512usize, 1024, 2048, 4096];
    let mut points = Vec::new();
    for &n in &sizes {
        let (p, q) = (simplex(&mut rng, n), simplex(&mut rng, n));
        let secs = best_of(3, || {
            min_entropy_coupling(&p, &q, &tol()).unwrap();
        });
        points.push(((n as f64).ln(), secs.ln(), secs));
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let slope = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / points.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let largest = points.last().unwrap().2;
    check(slope <= 2.3 && largest < 5.0, || {
        format!("fitted exponent {slope:.2}, n=4096 took {largest:.3}s")
    })?;
    Ok(format!(
        "fitted exponent {slope:.2}, n=4096 in {largest:.3}s"
    ))
}

fn main() {
    let (c2, c3) = criteria_2_and_3();
    let (c5, c6) = criteria_5_and_6();
    let results = [
        ("1 golden worked example", criterion_1()),
        ("2 marginal correctness", c2),
        ("3 one-bit sandwich and nnz", c3),
        ("4 exact-oracle comparison", criterion_4()),
        ("5 k-way marginals and log k bound", c5),
        ("6 tree majorization chain", c6),
        ("7 half identities", criterion_7()),
        ("8 glb and inversion-point identities", criterion_8()),
        ("9 quadratic running time", criterion_9()),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
