use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Family, Instance};

/// Seeded random instance.
///
/// * `arbitrary`: both numerators uniform on `1..=D`.
/// * `big`: one bar, chosen uniformly, has numerator uniform on
///   `D/2 + 1..=D`; the other is uniform on `1..=D`.
/// * `big_nonincreasing`: as `big`, then swapped so that `a >= b`.
pub fn gen_random(n: usize, seed: u64, family: Family, den: u64) -> Result<Instance> {
    if n == 0 {
        return Err(Error::EmptyInstance);
    }
    if den < 2 {
        return Err(Error::Config(format!(
            "denominator must be >= 2, got {den}"
        )));
    }
    if matches!(family, Family::Bpp | Family::File) {
        return Err(Error::Config(format!(
            "family `{family}` has no random generator"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let big_lo = den / 2 + 1;
    let pairs: Vec<(u64, u64)> = (0..n)
        .map(|_| match family {
            Family::Arbitrary => (rng.gen_range(1..=den), rng.gen_range(1..=den)),
            Family::Big | Family::BigNonincreasing => {
                let big = rng.gen_range(big_lo..=den);
                let other = rng.gen_range(1..=den);
                let (a, b) = if rng.gen_bool(0.5) {
                    (big, other)
                } else {
                    (other, big)
                };
                if family == Family::BigNonincreasing && a < b {
                    (b, a)
                } else {
                    (a, b)
                }
            }
            Family::Bpp | Family::File => unreachable!("rejected above"),
        })
        .collect();
    let mut instance = Instance::new(den, &pairs)?.with_label(format!("{family}_n{n}_s{seed}"));
    instance.family = family;
    instance.seed = Some(seed);
    Ok(instance)
}
