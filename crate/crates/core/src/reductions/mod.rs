//! The gadget compiler: reductions from boolean or number-theoretic
//! instances to (square) homogeneous polynomial systems, with witness-root
//! constructors that make the satisfiable direction checkable by direct
//! evaluation.

mod boolsys;
mod fixture;
mod h2n;
mod partition;
mod plaisted;
mod squarify;

pub use boolsys::{
    boolsys_to_h2n, parse_boolsys, parse_dimacs, sat_to_boolsys, witness_from_assignment,
    BoolEquation, BoolSys, CnfFormula, SatToBoolsys,
};
pub use fixture::naive_squaring_fixture;
pub use h2n::{h2n_to_hn, Prop1Reduction};
pub use partition::{partition_to_system, partition_witness, PartitionInstance};
pub use plaisted::{plaisted_encode, PlaistedEncoding, SparsePoly};
pub use squarify::{combine_with_matrix, squarify_det, squarify_homogeneous, squarify_random};

use crate::polysys::PolySystem;

/// Which construction produced an artifact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Homogeneous encoding of a BOOLSYS instance (possibly not square).
    Lemma1 { char: u64 },
    /// PARTITION encoding, plain or with coefficients bounded by 2.
    Thm1 { bounded: bool },
    /// Square system with a y-chain and a fixed lambda.
    Thm5,
    /// Square homogeneous system with lambda as a variable and the modulus
    /// polynomial appended.
    Thm6,
}

/// Role of one coordinate of an artifact's ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarRole {
    /// `x_i`; `X(0)` is the homogenization/reference variable.
    X(usize),
    /// Chain variable `y_j`, 1-based.
    Y(usize),
    /// Binary-expansion variable `W_{i,j}` of the bounded PARTITION system.
    W { item: usize, bit: u32 },
    /// The lambda coordinate of a `thm6` artifact.
    Lambda,
}

/// How lambda is realized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaSpec {
    /// No chain, no lambda.
    None,
    /// A fixed integer scalar (characteristic zero).
    Integer(i64),
    /// The class of `X` in `F_p[X]/(P)`; the system's context is the
    /// extension.
    ExtensionGenerator { p: u64, modulus: Vec<u64> },
    /// Lambda is a system variable; `P` is homogenized into the system and
    /// witnesses take lambda in `F_p[X]/(P)`.
    SystemVariable { p: u64, modulus: Vec<u64> },
}

/// A compiled system plus the provenance needed to build and check witness
/// roots.
#[derive(Clone, Debug)]
pub struct ReductionArtifact {
    pub system: PolySystem,
    pub var_roles: Vec<VarRole>,
    pub lambda: LambdaSpec,
    pub provenance: Provenance,
    /// Number of source variables (`x_1..x_n`).
    pub n: usize,
    /// Component count of the pre-squarification system (`n` + equations).
    pub s: usize,
}
