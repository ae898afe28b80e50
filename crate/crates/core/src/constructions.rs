//! Generators for the named tensor and matrix families.

use crate::error::{Error, Result};
use crate::matrix::BooleanMatrix;
use crate::tensor::{BooleanTensor, MultiIndex};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// The `n x n` matrix with ones at `(1, n-1)`, `(1, n)` and on the subdiagonal.
///
/// Its exponent is `(n-1)^2 + 1`. For `n = 2` this is `[[1,1],[1,0]]`.
pub fn wielandt_matrix(n: usize) -> Result<BooleanMatrix> {
    if n < 2 {
        return Err(bad(format!("wielandt matrix needs n >= 2, got {n}")));
    }
    let mut m = BooleanMatrix::zeros(n);
    m.set(0, n - 2, true);
    m.set(0, n - 1, true);
    for i in 1..n {
        m.set(i, i - 1, true);
    }
    Ok(m)
}

/// Reading of the value-set condition in the off-diagonal rule of `A_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AkReading {
    /// The values of `α` are exactly the two residues.
    ExactSet,
    /// The values of `α` lie among the two residues.
    Subset,
}

/// Largest admissible `k` for `A_k`: `n^2 - 3n + 2`.
pub fn a_k_max(n: usize) -> usize {
    (n - 1) * (n - 2)
}

fn residue(x: i64, n: usize) -> usize {
    x.rem_euclid(n as i64) as usize
}

/// `A_k` with `M(A_k)` the Wielandt matrix, `γ(A_0) = (n-1)^2 + 1` and `γ(A_k) = k + n`.
pub fn a_k_tensor(m: usize, n: usize, k: usize) -> Result<BooleanTensor> {
    a_k_tensor_with(m, n, k, AkReading::ExactSet)
}

pub fn a_k_tensor_with(m: usize, n: usize, k: usize, reading: AkReading) -> Result<BooleanTensor> {
    if m < 3 || n < 3 {
        return Err(bad(format!("A_k needs m >= 3 and n >= 3, got m={m} n={n}")));
    }
    if k > a_k_max(n) {
        return Err(bad(format!(
            "A_k needs k <= {} for n={n}, got {k}",
            a_k_max(n)
        )));
    }
    let w = wielandt_matrix(n)?;
    // k = (n-1)q + r with 1 <= r <= n-1; residues are 0-based mod n here.
    let window = (k >= 1).then(|| {
        let q = ((k - 1) / (n - 1)) as i64;
        let r = (k - (n - 1) * q as usize) as i64;
        let mut excluded = vec![false; n];
        for x in (r - q)..=(r + 1) {
            excluded[residue(x - 1, n)] = true;
        }
        let pair = [residue(r - q - 2, n), residue(r - 1, n)];
        (excluded, pair)
    });
    BooleanTensor::from_fn(m, n, |idx| {
        let (i, alpha) = (idx[0], &idx[1..]);
        if alpha.iter().all(|&a| a == alpha[0]) {
            return w.get(i, alpha[0]);
        }
        let Some((excluded, pair)) = &window else {
            return false;
        };
        if excluded[i] || !alpha.iter().all(|a| pair.contains(a)) {
            return false;
        }
        match reading {
            AkReading::Subset => true,
            AkReading::ExactSet => pair.iter().all(|p| alpha.contains(p)),
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedExample {
    /// `m = n = 3`, zeros at `111, 222, 333, 233, 311`.
    Example2_3,
    /// Zeros exactly where `i_1 = 1` and `i_2 = ... = i_m != 1`; needs `n >= 3`.
    Example3_3 { m: usize, n: usize },
    /// `m = 5, n = 2`, zeros at `12122` and `21121`.
    Example3_5,
}

pub fn named_example(id: NamedExample) -> Result<BooleanTensor> {
    match id {
        NamedExample::Example2_3 => all_but(3, 3, &["111", "222", "333", "233", "311"]),
        NamedExample::Example3_3 { m, n } => {
            if m < 2 || n < 3 {
                return Err(bad(format!(
                    "example3.3 needs m >= 2 and n >= 3, got m={m} n={n}"
                )));
            }
            BooleanTensor::from_fn(m, n, |i| {
                !(i[0] == 0 && i[1] != 0 && i[1..].iter().all(|&x| x == i[1]))
            })
        }
        NamedExample::Example3_5 => all_but(5, 2, &["12122", "21121"]),
    }
}

fn all_but(order: usize, dim: usize, zeros: &[&str]) -> Result<BooleanTensor> {
    let zeros = zeros
        .iter()
        .map(|s| s.parse::<MultiIndex>())
        .collect::<Result<Vec<_>>>()?;
    let mut t = BooleanTensor::ones(order, dim)?;
    for z in &zeros {
        z.validate(dim, order)?;
        let p = t.linear_index(&z.to_zero_based());
        t.set_linear(p, false);
    }
    Ok(t)
}

/// `a_{iα} = 1` for every `α` and `a_{j i ... i} = 1` for `j != i`, plus the `extra` ones.
///
/// The result is strongly primitive with `η = 2` unless it is all ones, which is
/// rejected unless `allow_all_ones` is set.
pub fn prop_2_7_tensor(
    m: usize,
    n: usize,
    i: usize,
    extra: &[MultiIndex],
    allow_all_ones: bool,
) -> Result<BooleanTensor> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { value: i, dim: n });
    }
    let i0 = i - 1;
    let mut t = BooleanTensor::from_fn(m, n, |idx| {
        idx[0] == i0 || idx[1..].iter().all(|&x| x == i0)
    })?;
    for e in extra {
        e.validate(n, m)?;
        let p = t.linear_index(&e.to_zero_based());
        t.set_linear(p, true);
    }
    if t.is_all_ones() && !allow_all_ones {
        return Err(bad("the all-ones tensor is excluded unless requested"));
    }
    Ok(t)
}

/// Entries outside the constrained majorization columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Filler {
    /// All ones.
    Ones,
    /// All zeros.
    Zeros,
    /// Taken from a given tensor of the same shape.
    Custom(BooleanTensor),
}

/// A tensor whose majorization matrix has column `i` supported on `{j}` and
/// column `j` supported on `{i}` (both entries positive). Such a tensor is not primitive.
pub fn prop_4_3_tensor(
    m: usize,
    n: usize,
    i: usize,
    j: usize,
    filler: &Filler,
) -> Result<BooleanTensor> {
    for v in [i, j] {
        if v == 0 || v > n {
            return Err(Error::IndexOutOfRange { value: v, dim: n });
        }
    }
    if i == j {
        return Err(bad("i and j must differ"));
    }
    let (i0, j0) = (i - 1, j - 1);
    let mut t = match filler {
        Filler::Ones => BooleanTensor::ones(m, n)?,
        Filler::Zeros => BooleanTensor::zeros(m, n)?,
        Filler::Custom(c) => {
            if c.order() != m || c.dim() != n {
                return Err(bad("filler shape does not match"));
            }
            if !prop_4_3_holds(c, i0, j0) {
                return Err(Error::Precondition(format!(
                    "filler violates the column conditions for i={i}, j={j}"
                )));
            }
            return Ok(c.clone());
        }
    };
    for u in 0..n {
        let pi = t.linear_index(&diag_position(m, u, i0));
        t.set_linear(pi, u == j0);
        let pj = t.linear_index(&diag_position(m, u, j0));
        t.set_linear(pj, u == i0);
    }
    Ok(t)
}

fn diag_position(m: usize, row: usize, col: usize) -> Vec<usize> {
    let mut v = vec![col; m];
    v[0] = row;
    v
}

/// Column `i` of `M` is exactly `{j}` and column `j` is exactly `{i}` (0-based).
pub(crate) fn prop_4_3_holds(t: &BooleanTensor, i0: usize, j0: usize) -> bool {
    let n = t.dim();
    (0..n).all(|u| {
        t.get(&diag_position(t.order(), u, i0)) == (u == j0)
            && t.get(&diag_position(t.order(), u, j0)) == (u == i0)
    })
}

/// A parameterized member of one of the generator families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Wielandt {
        n: usize,
    },
    AK {
        m: usize,
        n: usize,
        k: usize,
    },
    Named(NamedExample),
    Prop27 {
        m: usize,
        n: usize,
        i: usize,
    },
    Prop43 {
        m: usize,
        n: usize,
        i: usize,
        j: usize,
    },
    Ones {
        m: usize,
        n: usize,
    },
    Zeros {
        m: usize,
        n: usize,
    },
}

/// Optional numeric parameters as given on a command line.
#[derive(Clone, Copy, Debug, Default)]
pub struct FamilyParams {
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub i: Option<usize>,
    pub j: Option<usize>,
}

impl FamilySpec {
    pub const NAMES: &'static [&'static str] = &[
        "wielandt",
        "a-k",
        "example2.3",
        "example3.3",
        "example3.5",
        "prop2.7",
        "prop4.3",
        "ones",
        "zeros",
    ];

    pub fn from_name(name: &str, p: FamilyParams) -> Result<Self> {
        let need =
            |v: Option<usize>, what: &str| v.ok_or_else(|| bad(format!("{name} needs --{what}")));
        Ok(match name {
            "wielandt" => FamilySpec::Wielandt { n: need(p.n, "n")? },
            "a-k" | "ak" => FamilySpec::AK {
                m: need(p.m, "m")?,
                n: need(p.n, "n")?,
                k: need(p.k, "k")?,
            },
            "example2.3" => FamilySpec::Named(NamedExample::Example2_3),
            "example3.3" => FamilySpec::Named(NamedExample::Example3_3 {
                m: need(p.m, "m")?,
                n: need(p.n, "n")?,
            }),
            "example3.5" => FamilySpec::Named(NamedExample::Example3_5),
            "prop2.7" => FamilySpec::Prop27 {
                m: need(p.m, "m")?,
                n: need(p.n, "n")?,
                i: need(p.i, "i")?,
            },
            "prop4.3" => FamilySpec::Prop43 {
                m: need(p.m, "m")?,
                n: need(p.n, "n")?,
                i: need(p.i, "i")?,
                j: need(p.j, "j")?,
            },
            "ones" => FamilySpec::Ones {
                m: need(p.m, "m")?,
                n: need(p.n, "n")?,
            },
            "zeros" => FamilySpec::Zeros {
                m: need(p.m, "m")?,
                n: need(p.n, "n")?,
            },
            other => {
                return Err(bad(format!(
                    "unknown family {other:?}; expected one of {}",
                    Self::NAMES.join(", ")
                )))
            }
        })
    }

    pub fn build(&self) -> Result<BooleanTensor> {
        match *self {
            FamilySpec::Wielandt { n } => Ok(wielandt_matrix(n)?.to_tensor()),
            FamilySpec::AK { m, n, k } => a_k_tensor(m, n, k),
            FamilySpec::Named(id) => named_example(id),
            FamilySpec::Prop27 { m, n, i } => prop_2_7_tensor(m, n, i, &[], false),
            FamilySpec::Prop43 { m, n, i, j } => prop_4_3_tensor(m, n, i, j, &Filler::Ones),
            FamilySpec::Ones { m, n } => BooleanTensor::ones(m, n),
            FamilySpec::Zeros { m, n } => BooleanTensor::zeros(m, n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{eta, gamma, Certificate, EtaResult, GammaResult};
    use crate::matrix::{is_primitive_matrix, mat_exponent, wielandt_bound, MatrixExpResult};

    #[test]
    fn wielandt_matrices() {
        assert_eq!(
            wielandt_matrix(3).unwrap().to_rows(),
            vec![vec![0, 1, 1], vec![1, 0, 0], vec![0, 1, 0]]
        );
        assert_eq!(
            wielandt_matrix(4).unwrap().to_rows(),
            vec![
                vec![0, 0, 1, 1],
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 1, 0]
            ]
        );
        assert_eq!(
            wielandt_matrix(2).unwrap().to_rows(),
            vec![vec![1, 1], vec![1, 0]]
        );
        for n in 2..=8 {
            assert_eq!(
                mat_exponent(&wielandt_matrix(n).unwrap()),
                MatrixExpResult::Exponent(wielandt_bound(n))
            );
        }
        assert!(wielandt_matrix(1).is_err());
    }

    #[test]
    fn a_k_majorization_is_wielandt() {
        for m in 3..=4 {
            for n in 3..=5 {
                for k in 0..=a_k_max(n) {
                    let t = a_k_tensor(m, n, k).unwrap();
                    assert_eq!(t.majorization(), wielandt_matrix(n).unwrap());
                }
            }
        }
    }

    #[test]
    fn a_k_degrees_for_n5() {
        assert_eq!(
            gamma(&a_k_tensor(3, 5, 0).unwrap()).unwrap(),
            GammaResult::Degree(17)
        );
        assert_eq!(
            gamma(&a_k_tensor(3, 5, 7).unwrap()).unwrap(),
            GammaResult::Degree(12)
        );
    }

    #[test]
    fn a_k_both_readings_give_stated_degrees() {
        for reading in [AkReading::ExactSet, AkReading::Subset] {
            for n in 3..=4 {
                for k in 1..=a_k_max(n) {
                    let t = a_k_tensor_with(3, n, k, reading).unwrap();
                    assert_eq!(
                        gamma(&t).unwrap().degree(),
                        Some(k + n),
                        "{reading:?} n={n} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn a_k_rejects_bad_parameters() {
        assert!(a_k_tensor(2, 4, 1).is_err());
        assert!(a_k_tensor(3, 2, 0).is_err());
        assert!(a_k_tensor(3, 4, 7).is_err());
    }

    #[test]
    fn example_2_3_zeros() {
        let t = named_example(NamedExample::Example2_3).unwrap();
        let zeros: Vec<String> = t.zero_positions().iter().map(|z| z.to_string()).collect();
        assert_eq!(
            zeros,
            ["(1,1,1)", "(2,2,2)", "(2,3,3)", "(3,1,1)", "(3,3,3)"]
        );
        assert_eq!(t.majorization(), wielandt_matrix(3).unwrap());
    }

    #[test]
    fn example_3_3_is_strongly_primitive_with_imprimitive_majorization() {
        let t = named_example(NamedExample::Example3_3 { m: 4, n: 3 }).unwrap();
        assert_eq!(eta(&t).unwrap(), EtaResult::Degree(2));
        assert_eq!(gamma(&t).unwrap(), GammaResult::Degree(2));
        let mm = t.majorization();
        assert!(!is_primitive_matrix(&mm));
        assert_eq!(mm.to_rows()[0], vec![1, 0, 0]);
        assert!(mm.to_rows()[1..].iter().all(|r| r.iter().all(|&x| x == 1)));
        assert!(named_example(NamedExample::Example3_3 { m: 3, n: 2 }).is_err());
    }

    #[test]
    fn example_3_5_zeros() {
        let t = named_example(NamedExample::Example3_5).unwrap();
        assert_eq!(t.count_ones(), 30);
        let s = t.slice(1).unwrap();
        let zeros: Vec<String> = s.zero_positions().iter().map(|z| z.to_string()).collect();
        assert_eq!(zeros, ["(2,1,2,2)"]);
    }

    #[test]
    fn prop_2_7_members() {
        let t = prop_2_7_tensor(3, 2, 2, &[], false).unwrap();
        assert_eq!(eta(&t).unwrap(), EtaResult::Degree(2));
        assert!(t.slice_is_full(1));
        assert!(t.get(&[0, 1, 1]));
        assert!(prop_2_7_tensor(3, 2, 3, &[], false).is_err());
        let all: Vec<MultiIndex> = BooleanTensor::ones(2, 2).unwrap().ones_positions();
        assert!(prop_2_7_tensor(2, 2, 1, &all, false).is_err());
        assert!(prop_2_7_tensor(2, 2, 1, &all, true).unwrap().is_all_ones());
    }

    #[test]
    fn prop_2_7_pattern_count_at_m3_n2() {
        let mut seen = std::collections::BTreeSet::new();
        for i in 1..=2 {
            let base = prop_2_7_tensor(3, 2, i, &[], false).unwrap();
            let free: Vec<usize> = (0..8).filter(|&p| !base.get_linear(p)).collect();
            for mask in 0u32..(1 << free.len()) {
                let extra: Vec<MultiIndex> = free
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &p)| MultiIndex::from_zero_based(&base.decode(p)))
                    .collect();
                if let Ok(t) = prop_2_7_tensor(3, 2, i, &extra, false) {
                    seen.insert(t.pattern().unwrap());
                }
            }
        }
        // n (2^((n-1)(n^(m-1)-1)) - 1) with n = 2, m = 3
        assert_eq!(seen.len(), 14);
    }

    #[test]
    fn prop_4_3_default_is_neither() {
        let t = prop_4_3_tensor(3, 3, 1, 2, &Filler::Ones).unwrap();
        let g = gamma(&t).unwrap();
        assert!(matches!(
            g,
            GammaResult::NotPrimitive(Certificate::MajorizationZero { .. })
        ));
        g.certificate().unwrap().verify(&t).unwrap();
        let e = eta(&t).unwrap();
        assert!(e.degree().is_none());
        e.certificate().unwrap().verify(&t).unwrap();
        assert!((1..=3).all(|r| !t.slice_is_zero(r - 1)));
    }

    #[test]
    fn prop_4_3_fillers() {
        let z = prop_4_3_tensor(3, 3, 2, 3, &Filler::Zeros).unwrap();
        assert_eq!(z.count_ones(), 2);
        assert!(prop_4_3_tensor(3, 3, 2, 3, &Filler::Custom(z.clone())).is_ok());
        let ones = BooleanTensor::ones(3, 3).unwrap();
        assert!(matches!(
            prop_4_3_tensor(3, 3, 2, 3, &Filler::Custom(ones)),
            Err(Error::Precondition(_))
        ));
        assert!(prop_4_3_tensor(3, 3, 2, 2, &Filler::Ones).is_err());
    }

    #[test]
    fn family_spec_round_trip() {
        let p = FamilyParams {
            m: Some(3),
            n: Some(4),
            k: Some(2),
            ..Default::default()
        };
        let spec = FamilySpec::from_name("a-k", p).unwrap();
        assert_eq!(spec.build().unwrap(), a_k_tensor(3, 4, 2).unwrap());
        assert!(FamilySpec::from_name("nope", p).is_err());
        assert!(FamilySpec::from_name("prop4.3", p).is_err());
    }
}
