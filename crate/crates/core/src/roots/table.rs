use serde::Serialize;

use super::{rep_dimension, weight_multiplicities, RootError, RootSystem};

/// Records how "generic e" is read by [`parity_check`].
pub const GENERIC_E_READING: &str =
    "generic e read as the principal nilpotent of the semisimple part of g(0); h = 2ρ^∨";

/// The nine columns in their usual order, each at a representative rank.
pub const TABLE1_TYPES: [(char, usize); 9] =
    [('A', 4), ('B', 3), ('C', 3), ('D', 4), ('E', 6), ('E', 7), ('E', 8), ('F', 4), ('G', 2)];

/// How the summands' modules combine into `𝔤(1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum G1Structure {
    /// `R(λ)` of the single summand.
    Irreducible,
    /// `R(λ) ⊕ R(λ)*` of the single summand.
    SumWithDual,
    /// `R(λ₁) ⊗ R(λ₂)` across two summands.
    Tensor,
}

/// A simple (or `D2`) summand of `[𝔤(0), 𝔤(0)]` with the highest weight of
/// its factor of `𝔤(1)`.
#[derive(Clone, Debug, Serialize)]
pub struct Summand {
    pub kind: char,
    pub rank: usize,
    pub weight: Vec<i64>,
    pub module_dim: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub g_type: char,
    pub g_rank: usize,
    pub g0_summands: Vec<Summand>,
    pub g0_central: bool,
    pub g1_structure: G1Structure,
    pub g1_label: String,
    pub dim_g: usize,
    pub dim_g0: usize,
    pub dim_g1: u64,
    /// Closed form of `dim 𝔤(1)` for the type, compared against the computed value.
    pub expected_dim_g1: u64,
    pub d: u64,
    /// `dim 𝔤 = dim 𝔤(0) + 2·dim 𝔤(1) + 3`.
    pub cross_check: bool,
    pub note: Option<String>,
}

impl Table1Row {
    pub fn label(&self) -> String {
        format!("{}{}", self.g_type, self.g_rank)
    }

    pub fn passed(&self) -> bool {
        self.cross_check && self.dim_g1 == self.expected_dim_g1 && self.d == self.dim_g1 + 1
    }

    pub fn g0_label(&self) -> String {
        let mut parts: Vec<String> = self.g0_summands.iter().map(|s| format!("{}{}", s.kind, s.rank)).collect();
        if self.g0_central {
            parts.push("F".into());
        }
        parts.join("+")
    }
}

fn fundamental(rank: usize, k: usize) -> Vec<i64> {
    let mut w = vec![0; rank];
    w[k - 1] = 1;
    w
}

/// Highest weight of the vector representation, including the degenerate
/// `B0`, `B1 = A1` (weight `2π1`) and `D2 = A1 × A1` (weight `π1 + π2`).
fn vector_weight(kind: char, rank: usize) -> Vec<i64> {
    match (kind, rank) {
        (_, 0) => Vec::new(),
        ('B', 1) => vec![2],
        ('D', 2) => vec![1, 1],
        (_, r) => fundamental(r, 1),
    }
}

pub fn table1_row(g_type: char, g_rank: usize) -> Result<Table1Row, RootError> {
    let n = g_rank;
    let unknown = || RootError::UnknownType { name: format!("{g_type}{g_rank}") };
    let a1 = ('A', 1, vec![1]);
    let (summands, central, structure, label, expected, note) = match (g_type, n) {
        ('A', n) if n >= 2 => (
            vec![('A', n - 2, fundamental_or_empty(n - 2, 1))],
            true,
            G1Structure::SumWithDual,
            "R(π1)⊕R(π1)*",
            2 * (n as u64 - 1),
            None,
        ),
        ('B', n) if n >= 2 => (
            vec![('B', n - 2, vector_weight('B', n - 2)), a1],
            false,
            G1Structure::Tensor,
            "R(π1)⊗R(π1)",
            2 * (2 * n as u64 - 3),
            (n == 2).then(|| "B2 = C2; accepted for n = 2 with g(0) = B0 + A1".to_string()),
        ),
        ('C', n) if n >= 2 => (
            vec![('C', n - 1, vector_weight('C', n - 1))],
            false,
            G1Structure::Irreducible,
            "R(π1)",
            2 * (n as u64 - 1),
            None,
        ),
        ('D', n) if n >= 4 => (
            vec![('D', n - 2, vector_weight('D', n - 2)), a1],
            false,
            G1Structure::Tensor,
            "R(π1)⊗R(π1)",
            4 * (n as u64 - 2),
            None,
        ),
        ('E', 6) => (vec![('A', 5, fundamental(5, 3))], false, G1Structure::Irreducible, "R(π3)", 20, None),
        ('E', 7) => (vec![('D', 6, fundamental(6, 5))], false, G1Structure::Irreducible, "R(π5)", 32, None),
        ('E', 8) => (vec![('E', 7, fundamental(7, 1))], false, G1Structure::Irreducible, "R(π1)", 56, None),
        ('F', 4) => (vec![('C', 3, fundamental(3, 3))], false, G1Structure::Irreducible, "R(π3)", 14, None),
        ('G', 2) => (vec![('A', 1, vec![3])], false, G1Structure::Irreducible, "R(3π1)", 4, None),
        _ => return Err(unknown()),
    };
    let g = RootSystem::new(g_type, n)?;
    let mut g0_summands = Vec::new();
    let mut dim_g0 = usize::from(central);
    for (kind, rank, weight) in summands {
        let rs = RootSystem::new(kind, rank)?;
        dim_g0 += rs.dimension();
        let module_dim = rep_dimension(&rs, &weight)?;
        g0_summands.push(Summand { kind, rank, weight, module_dim });
    }
    let dim_g1 = match structure {
        G1Structure::Irreducible => g0_summands[0].module_dim,
        G1Structure::SumWithDual => 2 * g0_summands[0].module_dim,
        G1Structure::Tensor => g0_summands.iter().map(|s| s.module_dim).product(),
    };
    let dim_g = g.dimension();
    Ok(Table1Row {
        g_type,
        g_rank,
        g0_summands,
        g0_central: central,
        g1_structure: structure,
        g1_label: label.to_string(),
        dim_g,
        dim_g0,
        dim_g1,
        expected_dim_g1: expected,
        d: dim_g1 + 1,
        cross_check: dim_g as u64 == dim_g0 as u64 + 2 * dim_g1 + 3,
        note,
    })
}

fn fundamental_or_empty(rank: usize, k: usize) -> Vec<i64> {
    if rank == 0 {
        Vec::new()
    } else {
        fundamental(rank, k)
    }
}

/// Rows for [`TABLE1_TYPES`].
pub fn table1_rows() -> Result<Vec<Table1Row>, RootError> {
    TABLE1_TYPES.iter().map(|&(t, n)| table1_row(t, n)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityVerdict {
    pub row: String,
    pub verdict: bool,
    /// Distinct principal `h`-eigenvalues on `𝔤(1)`, descending.
    pub g1_eigenvalues: Vec<i64>,
    /// Distinct principal `h`-eigenvalues on `𝔤(0)`, descending.
    pub g0_eigenvalues: Vec<i64>,
    pub interpretation: &'static str,
}

fn module_eigenvalues(s: &Summand) -> Result<Vec<i64>, RootError> {
    let rs = RootSystem::new(s.kind, s.rank)?;
    let mults = weight_multiplicities(&rs, &s.weight)?;
    Ok(mults
        .iter()
        .flat_map(|(mu, &m)| std::iter::repeat_n(rs.principal_eigenvalue(mu), m as usize))
        .collect())
}

fn distinct_desc(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v.dedup();
    v
}

/// True iff the principal `h` of `[𝔤(0), 𝔤(0)]` has only odd eigenvalues on
/// `𝔤(1)` and only even ones on `𝔤(0)`, i.e. `−1 ∈ SL2` acts as σ.
pub fn parity_check(g_type: char, g_rank: usize) -> Result<ParityVerdict, RootError> {
    let row = table1_row(g_type, g_rank)?;
    let per_summand: Vec<Vec<i64>> = row.g0_summands.iter().map(module_eigenvalues).collect::<Result<_, _>>()?;
    let g1: Vec<i64> = match row.g1_structure {
        G1Structure::Irreducible => per_summand[0].clone(),
        G1Structure::SumWithDual => per_summand[0].iter().flat_map(|&x| [x, -x]).collect(),
        G1Structure::Tensor => per_summand[0].iter().flat_map(|&a| per_summand[1].iter().map(move |&b| a + b)).collect(),
    };
    let mut g0 = vec![0i64];
    for s in &row.g0_summands {
        let rs = RootSystem::new(s.kind, s.rank)?;
        for beta in &rs.positive_roots {
            let v = rs.principal_eigenvalue(&rs.root_to_weight(beta));
            g0.extend([v, -v]);
        }
    }
    let verdict = g1.iter().all(|x| x % 2 != 0) && g0.iter().all(|x| x % 2 == 0);
    Ok(ParityVerdict {
        row: row.label(),
        verdict,
        g1_eigenvalues: distinct_desc(g1),
        g0_eigenvalues: distinct_desc(g0),
        interpretation: GENERIC_E_READING,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let e8 = table1_row('E', 8).unwrap();
        assert_eq!((e8.g0_label().as_str(), e8.dim_g1, e8.d), ("E7", 56, 57));
        let g2 = table1_row('G', 2).unwrap();
        assert_eq!((g2.dim_g, g2.dim_g0, g2.dim_g1, g2.d), (14, 3, 4, 5));
        let a4 = table1_row('A', 4).unwrap();
        assert_eq!((a4.g0_label().as_str(), a4.dim_g1, a4.d), ("A2+F", 6, 7));
        assert!(matches!(table1_row('H', 3), Err(RootError::UnknownType { .. })));
        assert!(matches!(table1_row('D', 3), Err(RootError::UnknownType { .. })));
    }

    #[test]
    fn all_rows_pass() {
        for r in table1_rows().unwrap() {
            assert!(r.passed(), "{r:?}");
            for s in r.g0_summands.iter().filter(|s| s.module_dim <= 64) {
                let rs = RootSystem::new(s.kind, s.rank).unwrap();
                let total: u64 = weight_multiplicities(&rs, &s.weight).unwrap().values().sum();
                assert_eq!(total, s.module_dim, "{}{} {:?}", s.kind, s.rank, s.weight);
            }
        }
        for n in 2..=9 {
            for t in ['A', 'B', 'C', 'D'] {
                if let Ok(r) = table1_row(t, n) {
                    assert!(r.passed(), "{t}{n}");
                }
            }
        }
    }

    #[test]
    fn parity_examples() {
        let g2 = parity_check('G', 2).unwrap();
        assert!(g2.verdict);
        assert_eq!(g2.g1_eigenvalues, vec![3, 1, -1, -3]);
        assert!(parity_check('F', 4).unwrap().verdict);
        let a4 = parity_check('A', 4).unwrap();
        assert!(!a4.verdict);
        assert!(a4.g1_eigenvalues.contains(&0));
        for n in 2..=7 {
            assert_eq!(parity_check('A', n).unwrap().verdict, n % 2 == 1, "A{n}");
        }
    }
}
