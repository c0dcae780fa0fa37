//! Seeded samplers for states, unitaries, channels and POVMs.
//!
//! All randomness derives from one 64-bit seed: sample `i` of a batch uses
//! ChaCha stream `i` under that seed, so batches can be split across threads
//! without changing any individual draw.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::channels::Channel;
use crate::linalg::{vector_norm, ComplexMatrix, HermitianOperator, C64, ZERO};

/// Generator for stream `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian(rng: &mut impl Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-random unit vector.
pub fn random_pure_vector(d: usize, rng: &mut impl Rng) -> Vec<C64> {
    let v: Vec<C64> = (0..d).map(|_| gaussian(rng)).collect();
    let n = vector_norm(&v);
    v.into_iter().map(|z| z / n).collect()
}

/// Haar-random pure state `|psi><psi|`.
pub fn random_pure_state(d: usize, rng: &mut impl Rng) -> HermitianOperator {
    HermitianOperator::projector(&random_pure_vector(d, rng))
}

/// Mixed state from the Hilbert-Schmidt measure: `G G^dagger / tr(G G^dagger)`
/// with `G` a `d x d` Ginibre matrix.
pub fn random_state(d: usize, rng: &mut impl Rng) -> HermitianOperator {
    let g = ComplexMatrix::from_fn(d, |_, _| gaussian(rng));
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    HermitianOperator::new(w.scale_real(1.0 / tr)).expect("G G^dagger is Hermitian")
}

/// Orthonormalizes the columns of a `rows x cols` row-major Ginibre block by
/// modified Gram-Schmidt. The implied `R` has positive diagonal, which makes
/// the result Haar distributed on isometries.
fn haar_isometry(rows: usize, cols: usize, rng: &mut impl Rng) -> Vec<Vec<C64>> {
    let mut columns: Vec<Vec<C64>> = (0..cols)
        .map(|_| (0..rows).map(|_| gaussian(rng)).collect())
        .collect();
    for c in 0..cols {
        for prev in 0..c {
            let (done, rest) = columns.split_at_mut(c);
            let q = &done[prev];
            let proj: C64 = q.iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
            for (x, qa) in rest[0].iter_mut().zip(q) {
                *x -= proj * qa;
            }
        }
        let n = vector_norm(&columns[c]);
        for x in columns[c].iter_mut() {
            *x /= n;
        }
    }
    columns
}

/// Haar-random `d x d` unitary.
pub fn random_unitary(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let cols = haar_isometry(d, d, rng);
    ComplexMatrix::from_fn(d, |i, j| cols[j][i])
}

/// Channel with `rank` Kraus operators cut from a Haar isometry
/// `C^d -> C^(d rank)`.
pub fn random_channel_with_rank(d: usize, rank: usize, rng: &mut impl Rng) -> Channel {
    let cols = haar_isometry(d * rank, d, rng);
    let kraus = (0..rank)
        .map(|block| ComplexMatrix::from_fn(d, |i, j| cols[j][block * d + i]))
        .collect();
    Channel::new(kraus, format!("random(rank={rank})"))
        .expect("isometry blocks are trace preserving")
}

/// Random channel with Kraus rank `d`.
pub fn random_channel(d: usize, rng: &mut impl Rng) -> Channel {
    random_channel_with_rank(d, d, rng)
}

/// POVM `{K_i^dagger K_i}` from the Kraus operators of a random channel.
pub fn random_povm(d: usize, outcomes: usize, rng: &mut impl Rng) -> Vec<HermitianOperator> {
    let ch = random_channel_with_rank(d, outcomes, rng);
    ch.kraus()
        .iter()
        .map(|k| HermitianOperator::new(&k.adjoint() * k).expect("K^dagger K is Hermitian"))
        .collect()
}

/// Computational-basis measurement.
pub fn basis_povm(d: usize) -> Vec<HermitianOperator> {
    (0..d)
        .map(|i| {
            let mut e = vec![ZERO; d];
            e[i] = C64::new(1.0, 0.0);
            HermitianOperator::projector(&e)
        })
        .collect()
}
