//! Acceptance suite.
//!
//! Runs without the libtest harness so that every criterion prints exactly one
//! `[PASS]` / `[FAIL]` line, whether or not output capture is on. The process
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::RngCore;
use twomode::fock::{
    entropy_fock, purity_fock, thermal_dm, verify_corpus, VerificationRecord, VerifyTolerances,
    CORPUS_CUTOFF,
};
use twomode::gaussian::{
    apply, lemma1_factor, rotation2, spectrum_oracle, symplectic_eigenvalues,
    uncertainty_min_eigenvalue, validate, williamson, Covariance, SingleModeCov,
    SymplecticTransform, TwoModeCov,
};
use twomode::matkit::RealMatrix;
use twomode::measures::{
    eof_symmetric, f_entropy, linear_entropy, mutual_information, pt_spectrum, purity,
    von_neumann_single, von_neumann_two,
};
use twomode::states::{random_valid, seeded_rng, unit_f64, RandomBounds};
use twomode::Error;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn report(id: u32, title: &str, elapsed: Duration, limit: Option<Duration>, out: Outcome) -> bool {
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let pass = out.pass && in_time;
    let budget = match limit {
        Some(l) => format!(" (limit {:.0} s)", l.as_secs_f64()),
        None => String::new(),
    };
    println!(
        "[{}] criterion {id}: {title}: {}; {:.2} s{budget}",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64(),
    );
    pass
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn rel_gap(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(f64::MIN_POSITIVE)
}

// ---------------------------------------------------------------------------
// 1. closed-form symplectic spectrum against eig(iΩσ)
// ---------------------------------------------------------------------------

fn spectrum_concordance() -> Outcome {
    let mut rng = seeded_rng(0xacc_0001);
    let bounds = RandomBounds { max_thermal: 2.0, max_squeeze: 1.0, rotations: true };
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let sigma = match random_valid(&mut rng, &bounds) {
            Ok((s, _, _)) => s,
            Err(e) => return Outcome::new(false, format!("draw {i}: {e}")),
        };
        let (closed, oracle) = match (symplectic_eigenvalues(&sigma), spectrum_oracle(&sigma)) {
            (Ok(c), Ok(o)) => (c, o),
            (Err(e), _) | (_, Err(e)) => return Outcome::new(false, format!("draw {i}: {e}")),
        };
        worst = worst
            .max((closed.n_minus - oracle.n_minus).abs())
            .max((closed.n_plus - oracle.n_plus).abs());
    }
    Outcome::new(worst <= 1e-10, format!("1000 states, max gap {worst:.2e} (tol 1e-10)"))
}

// ---------------------------------------------------------------------------
// 2. Δ and Det σ under products of elementary symplectic factors
// ---------------------------------------------------------------------------

fn random_factor(rng: &mut impl RngCore) -> SymplecticTransform {
    fn sq(rng: &mut impl RngCore) -> f64 {
        0.6 * (2.0 * unit_f64(rng) - 1.0)
    }
    match rng.next_u64() % 4 {
        0 => SymplecticTransform::rotation(std::f64::consts::TAU * unit_f64(rng)),
        1 => SymplecticTransform::two_mode_squeeze(sq(rng)),
        2 => SymplecticTransform::local_squeeze(sq(rng), sq(rng)),
        _ => {
            let mut one = || {
                let s = sq(rng);
                let m = &rotation2(std::f64::consts::TAU * unit_f64(rng))
                    * &RealMatrix::from_diag(&[s.exp(), (-s).exp()]);
                &m * &rotation2(std::f64::consts::TAU * unit_f64(rng))
            };
            let (a, b) = (one(), one());
            SymplecticTransform::local(&a, &b).expect("products of rotations and squeezers")
        }
    }
}

fn invariance() -> Outcome {
    let mut rng = seeded_rng(0xacc_0002);
    let bounds = RandomBounds { max_thermal: 2.0, max_squeeze: 0.8, rotations: true };
    let (mut worst_delta, mut worst_det): (f64, f64) = (0.0, 0.0);
    for i in 0..500 {
        let sigma = match random_valid(&mut rng, &bounds) {
            Ok((s, _, _)) => s,
            Err(e) => return Outcome::new(false, format!("draw {i}: {e}")),
        };
        let factors = 2 + (rng.next_u64() % 4) as usize;
        let mut s = SymplecticTransform::identity();
        for _ in 0..factors {
            s = s.then(&random_factor(&mut rng));
        }
        let moved = match apply(&s, &sigma) {
            Ok(m) => m,
            Err(e) => return Outcome::new(false, format!("pair {i}: {e}")),
        };
        worst_delta = worst_delta.max(rel_gap(moved.delta(), sigma.delta()));
        worst_det = worst_det.max(rel_gap(moved.det(), sigma.det()));
    }
    Outcome::new(
        worst_delta <= 1e-9 && worst_det <= 1e-9,
        format!("500 pairs, max rel gap Δ {worst_delta:.2e}, Det {worst_det:.2e} (tol 1e-9)"),
    )
}

// ---------------------------------------------------------------------------
// 3. normal-mode reconstruction
// ---------------------------------------------------------------------------

fn reconstruction() -> Outcome {
    let mut rng = seeded_rng(0xacc_0003);
    let bounds = RandomBounds { max_thermal: 2.0, max_squeeze: 0.8, rotations: true };
    let (mut worst_w, mut worst_l): (f64, f64) = (0.0, 0.0);
    for i in 0..100 {
        let sigma = match random_valid(&mut rng, &bounds) {
            Ok((s, _, _)) => s,
            Err(e) => return Outcome::new(false, format!("draw {i}: {e}")),
        };
        let (s, nu) = match williamson(&sigma) {
            Ok(w) => w,
            Err(e) => return Outcome::new(false, format!("williamson on state {i}: {e}")),
        };
        worst_w = worst_w
            .max((&s.matrix().congruence(nu.matrix()) - sigma.matrix()).frobenius_norm());
        let factors = match lemma1_factor(&sigma) {
            Ok(f) => f,
            Err(e) => return Outcome::new(false, format!("lemma1 on state {i}: {e}")),
        };
        let a = factors.compose();
        worst_l =
            worst_l.max((&a.matrix().congruence(nu.matrix()) - sigma.matrix()).frobenius_norm());
    }
    Outcome::new(
        worst_w <= 1e-8 && worst_l <= 1e-7,
        format!(
            "100 states, williamson {worst_w:.2e} (tol 1e-8), factor recomposition {worst_l:.2e} (tol 1e-7)"
        ),
    )
}

// ---------------------------------------------------------------------------
// 4, 5. Fock-space oracle on the mixed corpus
// ---------------------------------------------------------------------------

fn corpus_entropy_purity(records: &[VerificationRecord]) -> Outcome {
    let worst_s = records.iter().map(|r| r.entropy_gap).fold(0.0, f64::max);
    let worst_mu = records.iter().map(|r| r.purity_gap).fold(0.0, f64::max);
    Outcome::new(
        records.len() == 10 && worst_s <= 1e-3 && worst_mu <= 1e-3,
        format!(
            "{} states at cutoff {CORPUS_CUTOFF}, max entropy gap {worst_s:.2e}, purity gap {worst_mu:.2e} (tol 1e-3)",
            records.len()
        ),
    )
}

fn corpus_mutual_information(records: &[VerificationRecord]) -> Outcome {
    let gaps: Vec<f64> = records.iter().filter_map(|r| r.mutual_information_gap).collect();
    let worst = gaps.iter().copied().fold(0.0, f64::max);
    Outcome::new(
        gaps.len() == records.len() && !gaps.is_empty() && worst <= 2e-3,
        format!("{} states, max gap {worst:.2e} (tol 2e-3)", gaps.len()),
    )
}

// ---------------------------------------------------------------------------
// 6. single-mode thermal states
// ---------------------------------------------------------------------------

/// Entropy of a thermal state summed directly from the geometric weights
/// `p_k = n̄ᵏ / (n̄ + 1)^(k+1)`, with no truncation.
fn thermal_entropy_series(nbar: f64) -> f64 {
    let q = nbar / (nbar + 1.0);
    let mut p = 1.0 / (nbar + 1.0);
    let mut s = 0.0;
    while p > 1e-300 {
        s -= p * p.ln();
        p *= q;
    }
    s
}

fn single_mode() -> Outcome {
    let mut worst: f64 = 0.0;
    for nbar in [0.5f64, 1.0, 2.0] {
        let closed = (nbar + 1.0) * (nbar + 1.0).ln() - nbar * nbar.ln();
        let series = thermal_entropy_series(nbar);
        let cov = match SingleModeCov::thermal(nbar) {
            Ok(c) => c,
            Err(e) => return Outcome::new(false, format!("n̄ = {nbar}: {e}")),
        };
        let rho = match thermal_dm(nbar, 60) {
            Ok(r) => r,
            Err(e) => return Outcome::new(false, format!("n̄ = {nbar}: {e}")),
        };
        let (s_cov, s_fock) = match (von_neumann_single(&cov), entropy_fock(&rho)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return Outcome::new(false, format!("n̄ = {nbar}: {e}")),
        };
        let mu = 1.0 / (2.0 * nbar + 1.0);
        for gap in [
            (s_cov - closed).abs(),
            (s_fock - closed).abs(),
            (series - closed).abs(),
            (purity(&cov) - mu).abs(),
            (purity_fock(&rho) - mu).abs(),
        ] {
            worst = worst.max(gap);
        }
    }
    Outcome::new(worst <= 1e-8, format!("n̄ ∈ {{0.5, 1, 2}} at cutoff 60, max gap {worst:.2e} (tol 1e-8)"))
}

// ---------------------------------------------------------------------------
// 7. entanglement consistency
// ---------------------------------------------------------------------------

fn tmsv(r: f64) -> Result<TwoModeCov, Error> {
    apply(&SymplecticTransform::tmsv_squeeze(r), &TwoModeCov::vacuum())
}

fn entanglement(records: &[VerificationRecord]) -> Outcome {
    let disagreements = records
        .iter()
        .filter(|r| r.separable_closed.is_none() || r.separable_closed != r.separable_fock)
        .count();
    let entangled = records.iter().filter(|r| r.separable_closed == Some(false)).count();

    let (mut worst_eof, mut worst_nt): (f64, f64) = (0.0, 0.0);
    for r in [0.25, 0.5, 1.0, 1.5] {
        let sigma = match tmsv(r) {
            Ok(s) => s,
            Err(e) => return Outcome::new(false, format!("r = {r}: {e}")),
        };
        let (eof, mi, pt) =
            match (eof_symmetric(&sigma), mutual_information(&sigma), pt_spectrum(&sigma)) {
                (Ok(a), Ok(b), Ok(c)) => (a, b, c),
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
                    return Outcome::new(false, format!("r = {r}: {e}"))
                }
            };
        worst_eof = worst_eof.max((eof - mi / 2.0).abs());
        worst_nt = worst_nt.max((pt.n_minus - (-2.0 * r).exp() / 2.0).abs());
    }
    Outcome::new(
        disagreements == 0 && worst_eof <= 1e-9 && worst_nt <= 1e-10,
        format!(
            "PPT vs Fock negativity {}/{} agree ({entangled} entangled), |E_F - I/2| {worst_eof:.2e} (tol 1e-9), ñ− gap {worst_nt:.2e} (tol 1e-10)",
            records.len() - disagreements,
            records.len()
        ),
    )
}

// ---------------------------------------------------------------------------
// 8. linear versus von Neumann entropy ordering
// ---------------------------------------------------------------------------

fn hierarchy() -> Outcome {
    // n− = n+ = 3/2 against n− = 1/2, n+ = 9/2: both have Det σ = 81/16.
    let build = || -> Result<(TwoModeCov, TwoModeCov), Error> {
        let a = TwoModeCov::new(RealMatrix::from_diag(&[1.5, 1.5, 1.5, 1.5]))?;
        let nu = TwoModeCov::new(RealMatrix::from_diag(&[0.5, 0.5, 4.5, 4.5]))?;
        let mix = SymplecticTransform::tmsv_squeeze(0.4)
            .then(&SymplecticTransform::rotation(0.7))
            .then(&SymplecticTransform::local_squeeze(0.3, -0.2));
        Ok((a, apply(&mix, &nu)?))
    };
    let (a, b) = match build() {
        Ok(p) => p,
        Err(e) => return Outcome::new(false, e.to_string()),
    };
    let (sa, sb) = match (von_neumann_two(&a), von_neumann_two(&b)) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(e), _) | (_, Err(e)) => return Outcome::new(false, e.to_string()),
    };
    let det_gap = (a.det() - b.det()).abs();
    let sl_gap = (linear_entropy(&a) - linear_entropy(&b)).abs();
    let sv_gap = (sa - sb).abs();
    Outcome::new(
        det_gap <= 1e-10 && sl_gap <= 1e-10 && sv_gap >= 0.1,
        format!(
            "Det gap {det_gap:.2e}, S_L gap {sl_gap:.2e} (tol 1e-10), S_V {sa:.4} vs {sb:.4} differ by {sv_gap:.4} (need ≥ 0.1)"
        ),
    )
}

// ---------------------------------------------------------------------------
// 9. uncertainty boundary
// ---------------------------------------------------------------------------

fn heisenberg() -> Outcome {
    let vac_min = match uncertainty_min_eigenvalue(TwoModeCov::vacuum().matrix()) {
        Ok(m) => m,
        Err(e) => return Outcome::new(false, e.to_string()),
    };
    let grid = [0.5 - 1e-9, 0.5 - 1e-6, 0.49, 0.4, 0.25, 0.1, 1e-3];
    let accepted: Vec<f64> = grid
        .iter()
        .copied()
        .filter(|&v| validate(&RealMatrix::from_diag(&[v, v, 0.5, 0.5])).is_ok())
        .collect();
    let f_half = f_entropy(0.5).unwrap_or(f64::NAN);
    Outcome::new(
        vac_min.abs() <= 1e-12 && accepted.is_empty() && f_half == 0.0,
        format!(
            "vacuum min eigenvalue {vac_min:.2e} (tol 1e-12), {}/{} of diag(v, v, ½, ½) with v < ½ rejected",
            grid.len() - accepted.len(),
            grid.len()
        ),
    )
}

fn main() -> ExitCode {
    let mut all = true;
    let secs = Duration::from_secs;

    let (out, t) = timed(spectrum_concordance);
    all &= report(1, "symplectic spectrum closed form vs eig(iΩσ)", t, Some(secs(5)), out);

    let (out, t) = timed(invariance);
    all &= report(2, "Δ and Det σ invariance", t, Some(secs(5)), out);

    let (out, t) = timed(reconstruction);
    all &= report(3, "normal-mode reconstruction", t, Some(secs(30)), out);

    let (records, t) = timed(|| verify_corpus(CORPUS_CUTOFF, &VerifyTolerances::default()));
    let limit = Some(secs(180));
    let seventh = match &records {
        Ok(records) => {
            all &= report(4, "entropy and purity vs Fock oracle", t, limit, corpus_entropy_purity(records));
            all &= report(5, "mutual information vs Fock partial traces", t, limit, corpus_mutual_information(records));
            timed(|| entanglement(records))
        }
        Err(e) => {
            let failed = || Outcome::new(false, format!("corpus run failed: {e}"));
            all &= report(4, "entropy and purity vs Fock oracle", t, limit, failed());
            all &= report(5, "mutual information vs Fock partial traces", t, limit, failed());
            (failed(), t)
        }
    };

    let (out, t) = timed(single_mode);
    all &= report(6, "single-mode thermal closed forms", t, None, out);

    let (out, t) = seventh;
    all &= report(7, "entanglement consistency", t, None, out);

    let (out, t) = timed(hierarchy);
    all &= report(8, "equal purity, different von Neumann entropy", t, None, out);

    let (out, t) = timed(heisenberg);
    all &= report(9, "uncertainty boundary", t, None, out);

    if all {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: at least one criterion failed");
        ExitCode::FAILURE
    }
}
