//! Block structure `f = (g(a), p(a,b₁), …, p(a,b_k), p(a,c₁), …, p(a,c_ℓ),
//! p(a,d₁), …, p(a,d_ℓ))` of a square system.
//!
//! Variables are laid out as `a ∈ ℂᵐ` followed by `k + 2ℓ` blocks of `q`
//! variables (the b-, c- and d-blocks in that order). Polynomials are laid
//! out as the `u` polynomials of `g` followed by `k + 2ℓ` copies of the `w`
//! polynomials of `p`.

use std::fmt;

use super::polynomial::Polynomial;
use super::system::PolynomialSystem;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockStructure {
    /// Size of the shared `a` block.
    pub m: usize,
    /// Number of real `b` blocks.
    pub k: usize,
    /// Number of conjugate `(c, d)` block pairs.
    pub l: usize,
    /// Size of each `b`/`c`/`d` block.
    pub q: usize,
    /// Number of polynomials in `g(a)`.
    pub u: usize,
    /// Number of polynomials in each copy of `p`.
    pub w: usize,
}

impl BlockStructure {
    pub fn new(m: usize, k: usize, l: usize, q: usize, u: usize, w: usize) -> Self {
        BlockStructure { m, k, l, q, u, w }
    }

    /// Number of `p` copies, `k + 2ℓ`.
    pub fn blocks(&self) -> usize {
        self.k + 2 * self.l
    }

    pub fn nvars(&self) -> usize {
        self.m + self.blocks() * self.q
    }

    pub fn npolys(&self) -> usize {
        self.u + self.blocks() * self.w
    }

    /// `u ≤ m` and `m + (k+2ℓ)q = u + (k+2ℓ)w`.
    pub fn check_arithmetic(&self) -> Result<()> {
        if self.u > self.m {
            return Err(Error::StructureArithmetic(format!(
                "u = {} exceeds m = {}",
                self.u, self.m
            )));
        }
        if self.nvars() != self.npolys() {
            return Err(Error::StructureArithmetic(format!(
                "m + (k+2l)q = {} but u + (k+2l)w = {}",
                self.nvars(),
                self.npolys()
            )));
        }
        Ok(())
    }

    /// Variable indices of block `j` (0-based over b, c, d blocks).
    pub fn block_vars(&self, j: usize) -> std::ops::Range<usize> {
        let start = self.m + j * self.q;
        start..start + self.q
    }

    pub fn b_block(&self, i: usize) -> usize {
        assert!(i < self.k);
        i
    }

    pub fn c_block(&self, i: usize) -> usize {
        assert!(i < self.l);
        self.k + i
    }

    pub fn d_block(&self, i: usize) -> usize {
        assert!(i < self.l);
        self.k + self.l + i
    }

    /// Polynomial indices of the `p` copy for block `j`.
    pub fn block_polys(&self, j: usize) -> std::ops::Range<usize> {
        let start = self.u + j * self.w;
        start..start + self.w
    }

    /// The structure with the parameter order `(m, k, ℓ, q)` and the
    /// polynomial split implied by a square `n`-variable system with `u`
    /// leading `g` polynomials.
    pub fn from_vars(m: usize, k: usize, l: usize, q: usize, u: usize) -> Result<Self> {
        let blocks = k + 2 * l;
        let n = m + blocks * q;
        if blocks == 0 {
            return Ok(BlockStructure::new(m, k, l, q, u, 0));
        }
        if n < u || (n - u) % blocks != 0 {
            return Err(Error::StructureArithmetic(format!(
                "cannot split {} polynomials after u = {u} into {blocks} equal blocks",
                n.saturating_sub(u)
            )));
        }
        Ok(BlockStructure::new(m, k, l, q, u, (n - u) / blocks))
    }
}

impl fmt::Display for BlockStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(m={}, k={}, l={}, q={}, u={}, w={})",
            self.m, self.k, self.l, self.q, self.u, self.w
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationFailure {
    /// Equation counts fail `u ≤ m` or `m + (k+2ℓ)q = u + (k+2ℓ)w`.
    Arithmetic(String),
    /// The system's shape disagrees with the structure.
    Shape { polys: usize, vars: usize },
    /// A `g` polynomial involves a non-`a` variable.
    GInvolvesBlockVariable { poly: usize, var: usize },
    /// A `p` copy involves a variable outside `a` and its own block.
    ForeignVariable { poly: usize, var: usize },
    /// A `p` copy differs from the first copy after renaming variables.
    BlockMismatch { poly: usize },
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationFailure::Arithmetic(msg) => write!(f, "arithmetic: {msg}"),
            ValidationFailure::Shape { polys, vars } => {
                write!(
                    f,
                    "shape: structure expects {polys} polynomials in {vars} variables"
                )
            }
            ValidationFailure::GInvolvesBlockVariable { poly, var } => {
                write!(f, "polynomial {poly}: g involves block variable {var}")
            }
            ValidationFailure::ForeignVariable { poly, var } => {
                write!(
                    f,
                    "polynomial {poly}: involves variable {var} from another block"
                )
            }
            ValidationFailure::BlockMismatch { poly } => {
                write!(f, "polynomial {poly}: differs from the first copy of p")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub structure: BlockStructure,
    pub failure: Option<ValidationFailure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Index (0-based) of the first offending polynomial, when known.
    pub fn offending_polynomial(&self) -> Option<usize> {
        match self.failure.as_ref()? {
            ValidationFailure::GInvolvesBlockVariable { poly, .. }
            | ValidationFailure::ForeignVariable { poly, .. }
            | ValidationFailure::BlockMismatch { poly } => Some(*poly),
            _ => None,
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {}", self.structure),
            Some(failure) => write!(f, "FAIL {} {}", self.structure, failure),
        }
    }
}

/// Completes `(m, k, ℓ, q)` for the square system `f`: `u` is the number of
/// leading polynomials involving only the first `m` variables (at most `m`),
/// and `w` follows from the equation count.
pub fn infer_block_structure(
    f: &PolynomialSystem,
    m: usize,
    k: usize,
    l: usize,
    q: usize,
) -> Result<BlockStructure> {
    let n = m + (k + 2 * l) * q;
    if f.nvars() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.nvars(),
        });
    }
    let u = f
        .polys()
        .iter()
        .take(m)
        .take_while(|p| p.support().iter().all(|&j| j < m))
        .count();
    BlockStructure::from_vars(m, k, l, q, u)
}

/// Checks that `f` has the block structure `bs`.
pub fn validate_block_structure(f: &PolynomialSystem, bs: &BlockStructure) -> ValidationReport {
    let failure = find_failure(f, bs);
    ValidationReport {
        structure: *bs,
        failure,
    }
}

fn find_failure(f: &PolynomialSystem, bs: &BlockStructure) -> Option<ValidationFailure> {
    if let Err(Error::StructureArithmetic(msg)) = bs.check_arithmetic() {
        return Some(ValidationFailure::Arithmetic(msg));
    }
    if f.len() != bs.npolys() || f.nvars() != bs.nvars() {
        return Some(ValidationFailure::Shape {
            polys: bs.npolys(),
            vars: bs.nvars(),
        });
    }
    let polys = f.polys();
    for (i, g) in polys[..bs.u].iter().enumerate() {
        if let Some(&var) = g.support().iter().find(|&&v| v >= bs.m) {
            return Some(ValidationFailure::GInvolvesBlockVariable { poly: i, var });
        }
    }
    let n = bs.nvars();
    for j in 0..bs.blocks() {
        let own = bs.block_vars(j);
        // Renaming that sends block j onto block 0.
        let to_first: Vec<usize> = (0..n)
            .map(|v| {
                if own.contains(&v) {
                    v - own.start + bs.m
                } else {
                    v
                }
            })
            .collect();
        for (r, i) in bs.block_polys(j).enumerate() {
            let p = &polys[i];
            if let Some(&var) = p
                .support()
                .iter()
                .find(|&&v| v >= bs.m && !own.contains(&v))
            {
                return Some(ValidationFailure::ForeignVariable { poly: i, var });
            }
            if j > 0 && p.remap(n, &to_first) != polys[bs.u + r] {
                return Some(ValidationFailure::BlockMismatch { poly: i });
            }
        }
    }
    None
}

/// Builds `f = (g(a), p(a,b₁), …, p(a,d_ℓ))` from `g` in `m` variables and
/// `p` in `m + q` variables.
pub fn assemble_structured(
    g: &PolynomialSystem,
    p: &PolynomialSystem,
    k: usize,
    l: usize,
) -> Result<(PolynomialSystem, BlockStructure)> {
    let m = g.nvars();
    if p.nvars() < m {
        return Err(Error::StructureArithmetic(format!(
            "p has {} variables, fewer than m = {m}",
            p.nvars()
        )));
    }
    let q = p.nvars() - m;
    let bs = BlockStructure::new(m, k, l, q, g.len(), p.len());
    bs.check_arithmetic()?;
    let n = bs.nvars();

    let mut names: Vec<String> = g.var_names().to_vec();
    let block_label = |j: usize| -> String {
        if j < k {
            format!("b{}", j + 1)
        } else if j < k + l {
            format!("c{}", j - k + 1)
        } else {
            format!("d{}", j - k - l + 1)
        }
    };
    for j in 0..bs.blocks() {
        for name in &p.var_names()[m..] {
            names.push(format!("{name}_{}", block_label(j)));
        }
    }

    let g_map: Vec<usize> = (0..m).collect();
    let mut polys: Vec<Polynomial> = g.polys().iter().map(|gi| gi.remap(n, &g_map)).collect();
    for j in 0..bs.blocks() {
        let block = bs.block_vars(j);
        let map: Vec<usize> = (0..m).chain(block).collect();
        polys.extend(p.polys().iter().map(|pi| pi.remap(n, &map)));
    }
    Ok((PolynomialSystem::new(names, polys), bs))
}
