use crate::error::{BellError, Result};
use crate::model::Model;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seeded Monte Carlo estimate of `<ab>` in context `(i, j)`.
///
/// Returns `(mean, standard_error)` where the standard error is the sample
/// standard deviation over `sqrt(trials)`. Results are reproducible: the RNG
/// stream is derived from `seed` and the context indices, so estimating
/// several contexts in any order (or in parallel) gives identical numbers.
pub fn mc_estimate(
    model: &Model,
    i: usize,
    j: usize,
    trials: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(BellError::NoTrials);
    }
    model.validate()?;
    let (probs, values) = context_joint(model, i, j)?;
    let cdf = cumulative(&probs);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((i as u64) << 32) | j as u64);

    let mut sum = 0.0;
    let mut sumsq = 0.0;
    for _ in 0..trials {
        let u: f64 = rng.gen();
        let idx = draw(&cdf, u);
        let x = values[idx];
        sum += x;
        sumsq += x * x;
    }
    let n = trials as f64;
    let mean = sum / n;
    let se = if trials > 1 {
        let var = ((sumsq - n * mean * mean) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    Ok((mean, se))
}

/// Flattened joint over `(lambda, a, b)` for context `(i, j)`, normalized,
/// with the product value `v(a) v(b)` per entry.
fn context_joint(model: &Model, i: usize, j: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut probs = Vec::new();
    let mut values = Vec::new();
    match model {
        Model::Local(m) => {
            crate::model::check_context(&m.scenario, i, j)?;
            let coding = m.scenario.outcome_coding;
            let outs = coding.values();
            for k in 0..m.lambda.len() {
                let w = m.atom_weight(k);
                for a in 0..2 {
                    for b in 0..2 {
                        probs.push(w * m.alice.prob(k, i, a, coding) * m.bob.prob(k, j, b, coding));
                        values.push(outs[a] * outs[b]);
                    }
                }
            }
        }
        Model::Retro(m) => {
            crate::model::check_context(&m.scenario, i, j)?;
            let coding = m.scenario.outcome_coding;
            let outs = coding.values();
            let quad = m.lambda.quadrature();
            let mut z = 0.0;
            for k in 0..m.lambda.len() {
                for a in 0..2 {
                    for b in 0..2 {
                        let q = m.weight[k][a][b]
                            * quad
                            * m.alice.prob(k, i, a, coding)
                            * m.bob.prob(k, j, b, coding);
                        z += q;
                        probs.push(q);
                        values.push(outs[a] * outs[b]);
                    }
                }
            }
            if z <= 0.0 {
                return Err(BellError::DegenerateContext { i, j });
            }
            // Sampling always draws from the normalized per-context joint,
            // in strict mode as well (where z is already 1 within tolerance).
            for p in &mut probs {
                *p /= z;
            }
        }
    }
    Ok((probs, values))
}

fn cumulative(probs: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    let mut cdf = Vec::with_capacity(probs.len());
    for &p in probs {
        acc += p;
        cdf.push(acc);
    }
    cdf
}

fn draw(cdf: &[f64], u: f64) -> usize {
    let total = *cdf.last().expect("nonempty joint");
    let target = u * total;
    match cdf.binary_search_by(|c| c.partial_cmp(&target).expect("finite")) {
        Ok(idx) | Err(idx) => idx.min(cdf.len() - 1),
    }
}
