//! Random RPF generators for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::magnitude::Magnitude;
use crate::rpf::DenseRpf;
use crate::table::MagnitudeTable;

fn random_logs<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<f64> {
    (0..k).map(|_| rng.random_range(-3.0..3.0)).collect()
}

/// Every pair mutually possible.
pub fn totally_mutually_possible<R: Rng + ?Sized>(rng: &mut R, k: usize) -> DenseRpf {
    let logs = random_logs(rng, k);
    DenseRpf::from_table_unchecked(MagnitudeTable::from_fn(k, |i, j| {
        if i == j {
            Magnitude::ONE
        } else {
            Magnitude::Finite(logs[i] - logs[j])
        }
    }))
}

// Random assignment of `k` outcomes to between 1 and `k` non-empty classes.
fn random_classes<R: Rng + ?Sized>(rng: &mut R, k: usize) -> (usize, Vec<usize>) {
    if k == 0 {
        return (0, Vec::new());
    }
    let classes = rng.random_range(1..=k);
    let mut assignment: Vec<usize> = (0..k).map(|h| h.min(classes - 1)).collect();
    for slot in assignment.iter_mut().skip(classes) {
        *slot = rng.random_range(0..classes);
    }
    assignment.shuffle(rng);
    (classes, assignment)
}

fn from_class_order(assignment: &[usize], logs: &[f64], order: &[Vec<Magnitude>]) -> DenseRpf {
    DenseRpf::from_table_unchecked(MagnitudeTable::from_fn(assignment.len(), |i, j| {
        let (a, b) = (assignment[i], assignment[j]);
        if i == j {
            Magnitude::ONE
        } else if a == b {
            Magnitude::Finite(logs[i] - logs[j])
        } else {
            order[a][b]
        }
    }))
}

/// Random classes, totally ordered, with random weights inside each class.
pub fn totally_comparable<R: Rng + ?Sized>(rng: &mut R, k: usize) -> DenseRpf {
    let (classes, assignment) = random_classes(rng, k);
    let mut rank: Vec<usize> = (0..classes).collect();
    rank.shuffle(rng);
    let order: Vec<Vec<Magnitude>> = (0..classes)
        .map(|a| {
            (0..classes)
                .map(|b| match rank[a].cmp(&rank[b]) {
                    std::cmp::Ordering::Greater => Magnitude::Infinity,
                    std::cmp::Ordering::Less => Magnitude::Zero,
                    std::cmp::Ordering::Equal => Magnitude::ONE,
                })
                .collect()
        })
        .collect();
    let logs = random_logs(rng, k);
    from_class_order(&assignment, &logs, &order)
}

/// Random classes under a random strict partial order; unordered class pairs
/// are incomparable.
pub fn any_rpf<R: Rng + ?Sized>(rng: &mut R, k: usize) -> DenseRpf {
    let (classes, assignment) = random_classes(rng, k);
    let mut rank: Vec<usize> = (0..classes).collect();
    rank.shuffle(rng);
    // above[a][b]: class a dominates class b
    let mut above = vec![vec![false; classes]; classes];
    for a in 0..classes {
        for b in 0..classes {
            if rank[a] > rank[b] && rng.random_bool(0.6) {
                above[a][b] = true;
            }
        }
    }
    for m in 0..classes {
        for a in 0..classes {
            for b in 0..classes {
                if above[a][m] && above[m][b] {
                    above[a][b] = true;
                }
            }
        }
    }
    let order: Vec<Vec<Magnitude>> = (0..classes)
        .map(|a| {
            (0..classes)
                .map(|b| {
                    if a == b {
                        Magnitude::ONE
                    } else if above[a][b] {
                        Magnitude::Infinity
                    } else if above[b][a] {
                        Magnitude::Zero
                    } else {
                        Magnitude::Wildcard
                    }
                })
                .collect()
        })
        .collect();
    let logs = random_logs(rng, k);
    from_class_order(&assignment, &logs, &order)
}

/// A random point of the probability simplex with exactly `zeros` zero
/// coordinates (`zeros < k`).
pub fn simplex_point<R: Rng + ?Sized>(rng: &mut R, k: usize, zeros: usize) -> Vec<f64> {
    assert!(zeros < k, "need at least one nonzero coordinate");
    let mut weights: Vec<f64> = (0..k)
        .map(|h| {
            if h < zeros {
                0.0
            } else {
                -(1.0 - rng.random::<f64>()).ln() + 1e-3
            }
        })
        .collect();
    weights.shuffle(rng);
    let total: f64 = weights.iter().sum();
    weights.iter().map(|w| w / total).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::validate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_produce_valid_rpfs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let k = rng.random_range(0..8);
            assert!(validate(totally_mutually_possible(&mut rng, k).table()).is_valid());
            let tc = totally_comparable(&mut rng, k);
            assert!(validate(tc.table()).is_valid());
            assert!(tc.is_totally_comparable());
            assert!(validate(any_rpf(&mut rng, k).table()).is_valid());
        }
    }

    #[test]
    fn simplex_points_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let p = simplex_point(&mut rng, 5, 2);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(p.iter().filter(|&&x| x == 0.0).count(), 2);
    }
}
