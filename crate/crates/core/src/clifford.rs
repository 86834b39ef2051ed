//! Real and complex Clifford algebras, their matrix structure, and
//! extensions `C^{p,q} → C^{p+1,q}` / `C^{p,q} → C^{p,q+1}` / `C^n → C^{n+1}`.

use std::fmt;

use crate::isotypic::DivisionAlgebra;
use crate::linalg::{eps2, kron, sigma_x, sigma_z, Mat};

/// `C^{p,q}` has `p` generators squaring to `−1` and `q` squaring to `+1`;
/// `C^n_C` has `n` generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clifford {
    Real { p: u32, q: u32 },
    Complex { n: u32 },
}

/// Matrix-algebra form `F(size)` or `F(size) ⊕ F(size)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Structure {
    pub field: DivisionAlgebra,
    pub size: usize,
    pub doubled: bool,
}

impl Clifford {
    pub fn structure(self) -> Structure {
        match self {
            Clifford::Real { p, q } => {
                let n = p + q;
                let r = (q as i64 - p as i64).rem_euclid(8);
                let pow = |e: u32| 1usize << e;
                let (field, size, doubled) = match r {
                    0 | 2 => (DivisionAlgebra::Real, pow(n / 2), false),
                    1 => (DivisionAlgebra::Real, pow((n - 1) / 2), true),
                    3 | 7 => (DivisionAlgebra::Complex, pow((n - 1) / 2), false),
                    4 | 6 => (DivisionAlgebra::Quaternion, pow((n - 2) / 2), false),
                    _ => (DivisionAlgebra::Quaternion, pow((n - 3) / 2), true),
                };
                Structure { field, size, doubled }
            }
            Clifford::Complex { n } => Structure {
                field: DivisionAlgebra::Complex,
                size: 1 << (n / 2),
                doubled: n % 2 == 1,
            },
        }
    }

    pub fn is_simple(self) -> bool {
        !self.structure().doubled
    }

    /// Real dimension of an irreducible module.
    pub fn irreducible_module_dim(self) -> usize {
        let s = self.structure();
        s.size * s.field.real_dim()
    }
}

impl fmt::Display for Clifford {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clifford::Real { p, q } => write!(f, "C^{{{p},{q}}}"),
            Clifford::Complex { n } => write!(f, "C^{{{n}}}_C"),
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = format!("{}({})", self.field.symbol(), self.size);
        if self.doubled {
            write!(f, "{one}+{one}")
        } else {
            f.write_str(&one)
        }
    }
}

/// Extension of a Clifford algebra by one more generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CliffordExtension {
    pub from: Clifford,
    pub to: Clifford,
}

impl CliffordExtension {
    /// `C^{p,q} → C^{p+1,q}` (a new generator squaring to `−1`).
    pub fn negative(p: u32, q: u32) -> Self {
        Self {
            from: Clifford::Real { p, q },
            to: Clifford::Real { p: p + 1, q },
        }
    }

    /// `C^{p,q} → C^{p,q+1}` (a new generator squaring to `+1`).
    pub fn positive(p: u32, q: u32) -> Self {
        Self {
            from: Clifford::Real { p, q },
            to: Clifford::Real { p, q: q + 1 },
        }
    }

    pub fn complex(n: u32) -> Self {
        Self {
            from: Clifford::Complex { n },
            to: Clifford::Complex { n: n + 1 },
        }
    }

    pub fn is_complex(&self) -> bool {
        matches!(self.from, Clifford::Complex { .. })
    }

    /// Index of the classifying space: `q − p` for positive and `p − q + 2`
    /// for negative real extensions (mod 8), `n` mod 2 for complex ones.
    pub fn ktheory_index(&self) -> u32 {
        match (self.from, self.to) {
            (Clifford::Real { p, q }, Clifford::Real { q: q2, .. }) => {
                let v = if q2 > q {
                    q as i64 - p as i64
                } else {
                    p as i64 - q as i64 + 2
                };
                v.rem_euclid(8) as u32
            }
            (Clifford::Complex { n }, _) => n % 2,
            _ => unreachable!("extension mixes real and complex algebras"),
        }
    }
}

impl fmt::Display for CliffordExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.from, self.to)
    }
}

/// Anticommuting generators of `C^{p,q}` as tensor products of
/// `{I, σx, σz, ε}` on `sites` two-dimensional factors, negative ones first.
///
/// Returns `None` when no such Pauli-string representation exists.
pub fn pauli_generators(p: usize, q: usize, sites: usize) -> Option<Vec<Mat>> {
    // Encode a string as a base-4 number: 0 = I, 1 = σx, 2 = σz, 3 = ε.
    let total = 4usize.pow(sites as u32);
    let digits = |mut s: usize| {
        let mut d = vec![0; sites];
        for slot in d.iter_mut().rev() {
            *slot = s % 4;
            s /= 4;
        }
        d
    };
    let strings: Vec<Vec<usize>> = (1..total).map(digits).collect();
    let negative = |s: &[usize]| s.iter().filter(|&&x| x == 3).count() % 2 == 1;
    let anticommute =
        |a: &[usize], b: &[usize]| a.iter().zip(b).filter(|(&x, &y)| x != 0 && y != 0 && x != y).count() % 2 == 1;
    fn search(
        chosen: &mut Vec<usize>,
        strings: &[Vec<usize>],
        wants: &[bool],
        negative: &dyn Fn(&[usize]) -> bool,
        anticommute: &dyn Fn(&[usize], &[usize]) -> bool,
    ) -> bool {
        let k = chosen.len();
        if k == wants.len() {
            return true;
        }
        let start = if k > 0 && wants[k] == wants[k - 1] {
            chosen[k - 1] + 1
        } else {
            0
        };
        for i in start..strings.len() {
            if negative(&strings[i]) != wants[k] {
                continue;
            }
            if chosen.iter().all(|&c| anticommute(&strings[c], &strings[i])) {
                chosen.push(i);
                if search(chosen, strings, wants, negative, anticommute) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let wants: Vec<bool> = std::iter::repeat_n(true, p)
        .chain(std::iter::repeat_n(false, q))
        .collect();
    let mut chosen = Vec::new();
    if !search(&mut chosen, &strings, &wants, &negative, &anticommute) {
        return None;
    }
    let factor = |x: usize| match x {
        0 => Mat::identity(2, 2),
        1 => sigma_x(),
        2 => sigma_z(),
        _ => eps2(),
    };
    Some(
        chosen
            .iter()
            .map(|&i| {
                strings[i]
                    .iter()
                    .fold(Mat::identity(1, 1), |acc, &x| kron(&acc, &factor(x)))
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    #[test]
    fn low_dimensional_structures() {
        let s = |p, q| Clifford::Real { p, q }.structure().to_string();
        assert_eq!(s(0, 0), "R(1)");
        assert_eq!(s(1, 0), "C(1)");
        assert_eq!(s(0, 1), "R(1)+R(1)");
        assert_eq!(s(2, 0), "H(1)");
        assert_eq!(s(0, 2), "R(2)");
        assert_eq!(s(1, 1), "R(2)");
        assert_eq!(s(3, 0), "H(1)+H(1)");
        assert_eq!(s(5, 1), "H(4)");
        assert_eq!(s(5, 2), "H(4)+H(4)");
        assert_eq!(Clifford::Complex { n: 1 }.structure().to_string(), "C(1)+C(1)");
        assert_eq!(Clifford::Complex { n: 2 }.structure().to_string(), "C(2)");
    }

    #[test]
    fn module_dimensions() {
        assert_eq!(Clifford::Real { p: 5, q: 1 }.irreducible_module_dim(), 16);
        assert_eq!(Clifford::Real { p: 1, q: 1 }.irreducible_module_dim(), 2);
        assert_eq!(Clifford::Complex { n: 0 }.irreducible_module_dim(), 2);
    }

    #[test]
    fn extension_indices() {
        assert_eq!(CliffordExtension::negative(0, 0).ktheory_index(), 2);
        assert_eq!(CliffordExtension::positive(1, 1).ktheory_index(), 0);
        assert_eq!(CliffordExtension::positive(2, 1).ktheory_index(), 7);
        assert_eq!(CliffordExtension::complex(1).ktheory_index(), 1);
        assert_eq!(CliffordExtension::positive(3, 0).to_string(), "C^{3,0} -> C^{3,1}");
    }

    #[test]
    fn pauli_search_builds_valid_generators() {
        for (p, q, sites) in [(0, 9, 4), (2, 3, 2), (1, 2, 1)] {
            let gens = pauli_generators(p, q, sites).unwrap();
            let n = 1 << sites;
            for (a, ga) in gens.iter().enumerate() {
                let sign = if a < p { -1.0 } else { 1.0 };
                assert!(max_abs(&(ga * ga - Mat::identity(n, n) * sign)) < 1e-14);
                for gb in &gens[a + 1..] {
                    assert!(max_abs(&(ga * gb + gb * ga)) < 1e-14);
                }
            }
        }
        assert!(pauli_generators(0, 4, 1).is_none());
    }
}
