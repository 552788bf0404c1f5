//! Input generation for one (identity, m, n, trial) cell and dispatch to the
//! matching checker.

use minorsum::identities::{self, IdentityReport, Rank1Data};
use minorsum::{IdentityError, IdentityId, IndexSet, Matrix, RingTag, Scalar};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::config::RingChoice;

/// Stream for one trial, derived from the run seed and the cell coordinates
/// only, so filtering identities or shapes never shifts other trials.
pub fn trial_rng(seed: u64, id: IdentityId, m: usize, n: usize, trial: u32) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(b"minorsum-trial\0");
    h.update(seed.to_le_bytes());
    h.update(id.as_str().as_bytes());
    h.update(b"\0");
    h.update((m as u64).to_le_bytes());
    h.update((n as u64).to_le_bytes());
    h.update(trial.to_le_bytes());
    let mut key = [0u8; 32];
    key.copy_from_slice(&h.finalize());
    ChaCha8Rng::from_seed(key)
}

/// Shapes each checker accepts; every identity needs `1 <= m <= n`.
pub fn applicable(id: IdentityId, m: usize, n: usize) -> bool {
    if m == 0 || n < m {
        return false;
    }
    match id {
        IdentityId::Main2
        | IdentityId::Iswa
        | IdentityId::LemmaIswa
        | IdentityId::Ab2
        | IdentityId::Cor7
        | IdentityId::CauchyBinetPf => m.is_multiple_of(2),
        IdentityId::LemmaAux => m % 2 == 1,
        IdentityId::ClosedForms => m == 1,
        _ => true,
    }
}

#[derive(Debug, Clone)]
pub enum CheckInput {
    A { a: Matrix },
    AB { a: Matrix, b: Matrix },
    ABX { a: Matrix, b: Matrix, x: Matrix },
    AX { a: Matrix, x: Matrix },
    AY { a: Matrix, y: Matrix },
    YSet { y: Matrix, set: IndexSet },
    YRank1 { y: Matrix, r1: Rank1Data },
    Y { y: Matrix },
    Diag { diag: Vec<Scalar> },
}

fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|s| Value::String(s.to_string())).collect())
}

impl CheckInput {
    /// Named inputs for replay, matrices in the matrix file format.
    pub fn to_json(&self) -> Value {
        let mat = |m: &Matrix| serde_json::to_value(m).expect("matrix serialises");
        let mut map = Map::new();
        let mut put = |k: &str, v: Value| {
            map.insert(k.to_string(), v);
        };
        match self {
            CheckInput::A { a } => put("A", mat(a)),
            CheckInput::AB { a, b } => {
                put("A", mat(a));
                put("B", mat(b));
            }
            CheckInput::ABX { a, b, x } => {
                put("A", mat(a));
                put("B", mat(b));
                put("X", mat(x));
            }
            CheckInput::AX { a, x } => {
                put("A", mat(a));
                put("X", mat(x));
            }
            CheckInput::AY { a, y } => {
                put("A", mat(a));
                put("Y", mat(y));
            }
            CheckInput::YSet { y, set } => {
                put("Y", mat(y));
                put("I", json!(set.indices()));
            }
            CheckInput::YRank1 { y, r1 } => {
                put("Y", mat(y));
                put("a", scalars(r1.a()));
                put("b", scalars(r1.b()));
            }
            CheckInput::Y { y } => put("Y", mat(y)),
            CheckInput::Diag { diag } => put("diag", scalars(diag)),
        }
        Value::Object(map)
    }

    pub fn run(&self, id: IdentityId) -> Result<IdentityReport, IdentityError> {
        use CheckInput::*;
        match (id, self) {
            (IdentityId::Okada, A { a }) => identities::check_okada(a),
            (IdentityId::Byun, A { a }) => identities::check_byun(a),
            (IdentityId::Main1, ABX { a, b, x }) => identities::check_main1(a, b, x),
            (IdentityId::Main2, ABX { a, b, x }) => identities::check_main2(a, b, x),
            (IdentityId::LemmaAux, ABX { a, b, x }) => identities::check_lemma_aux(a, b, x),
            (IdentityId::Rank1, YRank1 { y, r1 }) => identities::check_rank1(y, r1),
            (IdentityId::Iswa, AY { a, y }) => identities::check_iswa(a, y),
            (IdentityId::LemmaIswa, YSet { y, set }) => identities::check_lemma_iswa(y, set),
            (IdentityId::Ab, AB { a, b }) => identities::check_ab(a, b),
            (IdentityId::Ab2, AB { a, b }) => identities::check_ab2(a, b),
            (IdentityId::Cor7, AX { a, x }) => identities::check_cor7(a, x),
            (IdentityId::ClosedForms, Diag { diag }) => identities::check_closed_forms(diag.len(), diag),
            (IdentityId::DetPfSquare, Y { y }) => identities::check_det_pf_square(y),
            (IdentityId::CauchyBinetPf, AB { a, b }) => identities::check_cauchy_binet_pf(a, b),
            (id, input) => Err(IdentityError::Shape(format!(
                "{id} cannot take input of kind {:?}",
                std::mem::discriminant(input)
            ))),
        }
    }
}

/// Entry source for one trial.
enum Entries {
    Int {
        bound: i64,
    },
    /// Random `c0 + c1 t1 + c2 t2`.
    Linear {
        ring: RingTag,
        bound: i64,
    },
    /// One fresh indeterminate per entry.
    Generic,
}

impl Entries {
    fn ring(&self) -> RingTag {
        match self {
            Entries::Int { .. } => RingTag::Integer,
            Entries::Linear { ring, .. } => ring.clone(),
            Entries::Generic => unreachable!("generic inputs build their own ring"),
        }
    }

    fn scalar(&self, rng: &mut ChaCha8Rng) -> Scalar {
        match self {
            Entries::Int { bound } => Scalar::int(rng.gen_range(-bound..=*bound)),
            Entries::Linear { ring, bound } => {
                let mut s = Scalar::from_i64(ring, rng.gen_range(-bound..=*bound));
                for t in ["t1", "t2"] {
                    let c = Scalar::from_i64(ring, rng.gen_range(-bound..=*bound));
                    s += c * Scalar::var(ring, t).expect("declared");
                }
                s
            }
            Entries::Generic => unreachable!("generic inputs have no random entries"),
        }
    }

    fn matrix(&self, rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix {
        let ring = self.ring();
        Matrix::from_fn(&ring, r, c, |_, _| self.scalar(rng))
    }

    fn skew(&self, rng: &mut ChaCha8Rng, n: usize) -> Matrix {
        let ring = self.ring();
        let mut y = Matrix::zeros(&ring, n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = self.scalar(rng);
                y.set(j, i, -&v).expect("same ring");
                y.set(i, j, v).expect("same ring");
            }
        }
        y
    }

    fn vector(&self, rng: &mut ChaCha8Rng, len: usize) -> Vec<Scalar> {
        (0..len).map(|_| self.scalar(rng)).collect()
    }
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, k: usize) -> IndexSet {
    let mut picked: Vec<usize> = sample(rng, n, k).into_iter().map(|i| i + 1).collect();
    picked.sort_unstable();
    IndexSet::new(n, picked).expect("sampled subset is valid")
}

/// Inputs for one trial. Integer runs draw every entry from
/// `[-bound, bound]`. Polynomial runs use one indeterminate per entry on
/// trial 0 and random linear polynomials in `t1, t2` afterwards.
pub fn generate(
    id: IdentityId,
    m: usize,
    n: usize,
    trial: u32,
    ring: RingChoice,
    bound: i64,
    rng: &mut ChaCha8Rng,
) -> CheckInput {
    let entries = match ring {
        RingChoice::Int => Entries::Int { bound },
        RingChoice::Poly if trial == 0 => Entries::Generic,
        RingChoice::Poly => Entries::Linear {
            ring: RingTag::polynomial(["t1", "t2"]).expect("valid names"),
            bound,
        },
    };
    if let Entries::Generic = entries {
        return generic_input(id, m, n, rng);
    }
    match id {
        IdentityId::Okada | IdentityId::Byun => CheckInput::A {
            a: entries.matrix(rng, m, n),
        },
        IdentityId::Main1 | IdentityId::Main2 | IdentityId::LemmaAux => CheckInput::ABX {
            a: entries.matrix(rng, m, n),
            b: entries.matrix(rng, m, n),
            x: entries.matrix(rng, n, n),
        },
        IdentityId::Ab | IdentityId::Ab2 | IdentityId::CauchyBinetPf => CheckInput::AB {
            a: entries.matrix(rng, m, n),
            b: entries.matrix(rng, m, n),
        },
        IdentityId::Cor7 => CheckInput::AX {
            a: entries.matrix(rng, m, n),
            x: entries.matrix(rng, n, n),
        },
        IdentityId::Iswa => CheckInput::AY {
            a: entries.matrix(rng, m, n),
            y: entries.skew(rng, n),
        },
        IdentityId::LemmaIswa => CheckInput::YSet {
            y: entries.skew(rng, n),
            set: random_subset(rng, n, m),
        },
        IdentityId::Rank1 => {
            let y = entries.skew(rng, m);
            let a = entries.vector(rng, m);
            let b = entries.vector(rng, m);
            CheckInput::YRank1 {
                y,
                r1: Rank1Data::new(a, b).expect("equal lengths"),
            }
        }
        IdentityId::DetPfSquare => CheckInput::Y {
            y: entries.skew(rng, m),
        },
        IdentityId::ClosedForms => CheckInput::Diag {
            diag: entries.vector(rng, n),
        },
    }
}

fn generic_input(id: IdentityId, m: usize, n: usize, rng: &mut ChaCha8Rng) -> CheckInput {
    let ring_of = |blocks: &[Vec<String>]| RingTag::polynomial(blocks.concat()).expect("distinct generated names");
    let gen = |ring: &RingTag, p: &str, r: usize, c: usize| Matrix::generic(ring, p, r, c).expect("declared names");
    let skew = |ring: &RingTag, p: &str, k: usize| Matrix::generic_skew(ring, p, k).expect("declared names");
    let names = Matrix::generic_names;
    match id {
        IdentityId::Okada | IdentityId::Byun => {
            let ring = ring_of(&[names("a", m, n)]);
            CheckInput::A {
                a: gen(&ring, "a", m, n),
            }
        }
        IdentityId::Main1 | IdentityId::Main2 | IdentityId::LemmaAux => {
            let ring = ring_of(&[names("a", m, n), names("b", m, n), names("x", n, n)]);
            CheckInput::ABX {
                a: gen(&ring, "a", m, n),
                b: gen(&ring, "b", m, n),
                x: gen(&ring, "x", n, n),
            }
        }
        IdentityId::Ab | IdentityId::Ab2 | IdentityId::CauchyBinetPf => {
            let ring = ring_of(&[names("a", m, n), names("b", m, n)]);
            CheckInput::AB {
                a: gen(&ring, "a", m, n),
                b: gen(&ring, "b", m, n),
            }
        }
        IdentityId::Cor7 => {
            let ring = ring_of(&[names("a", m, n), names("x", n, n)]);
            CheckInput::AX {
                a: gen(&ring, "a", m, n),
                x: gen(&ring, "x", n, n),
            }
        }
        IdentityId::Iswa => {
            let ring = ring_of(&[names("a", m, n), Matrix::generic_skew_names("y", n)]);
            CheckInput::AY {
                a: gen(&ring, "a", m, n),
                y: skew(&ring, "y", n),
            }
        }
        IdentityId::LemmaIswa => {
            let ring = ring_of(&[Matrix::generic_skew_names("y", n)]);
            CheckInput::YSet {
                y: skew(&ring, "y", n),
                set: random_subset(rng, n, m),
            }
        }
        IdentityId::Rank1 => {
            let a_names: Vec<String> = (1..=m).map(|i| format!("a{i}")).collect();
            let b_names: Vec<String> = (1..=m).map(|i| format!("b{i}")).collect();
            let ring = ring_of(&[Matrix::generic_skew_names("y", m), a_names.clone(), b_names.clone()]);
            let vars = |v: &[String]| v.iter().map(|s| Scalar::var(&ring, s).expect("declared")).collect();
            CheckInput::YRank1 {
                y: skew(&ring, "y", m),
                r1: Rank1Data::new(vars(&a_names), vars(&b_names)).expect("equal lengths"),
            }
        }
        IdentityId::DetPfSquare => {
            let ring = ring_of(&[Matrix::generic_skew_names("y", m)]);
            CheckInput::Y { y: skew(&ring, "y", m) }
        }
        IdentityId::ClosedForms => {
            let d: Vec<String> = (1..=n).map(|i| format!("d{i}")).collect();
            let ring = ring_of(std::slice::from_ref(&d));
            CheckInput::Diag {
                diag: d.iter().map(|s| Scalar::var(&ring, s).expect("declared")).collect(),
            }
        }
    }
}
