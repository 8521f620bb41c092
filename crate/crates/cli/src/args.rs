//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Seed of every randomized check unless `--seed` is given ("S0ERGEL" in hex-speak).
pub const DEFAULT_SEED: u64 = 0x50E_26E1;

#[derive(Debug, Parser)]
#[command(name = "sbim", version, about = "Hecke algebras, Schubert calculus and singular Soergel bimodules")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Built-in realization (A1-adjoint, A1-GL2, A2-GL3, A3-GL4, B2, G2, A1, A2).
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Realization document (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    pub realization: Option<PathBuf>,
    /// Coefficient field overriding the realization's (Q, F2, F3, ...).
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// First subset, as generator names ("st", "s,t"; "-" for the empty set).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s1: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s2: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s3: Option<String>,
    /// Degree bound for certified graded ranks.
    #[arg(long, global = true)]
    pub degree_bound: Option<i32>,
    /// Length bound for infinite Coxeter groups.
    #[arg(long, global = true)]
    pub length_bound: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,
    /// Include per-check timings in verification reports (not byte-stable).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Realization checks.
    Realize {
        #[command(subcommand)]
        cmd: RealizeCmd,
    },
    /// Group arithmetic and double cosets.
    Coxeter {
        #[command(subcommand)]
        cmd: CoxeterCmd,
    },
    /// Hecke algebra and singular Hecke modules.
    Hecke {
        #[command(subcommand)]
        cmd: HeckeCmd,
    },
    /// Demazure operators and Frobenius data.
    Schubert {
        #[command(subcommand)]
        cmd: SchubertCmd,
    },
    /// Bimodule constructions, characters, morphisms and decompositions.
    Bimod {
        #[command(subcommand)]
        cmd: BimodCmd,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

#[derive(Debug, Subcommand)]
pub enum RealizeCmd {
    /// Validate the realization and report the Assumption for every finitary subset.
    Check,
    /// Print the expanded realization document.
    Show,
}

#[derive(Debug, Subcommand)]
pub enum CoxeterCmd {
    /// The (S₁,S₂)-double cosets.
    Cosets,
    /// Whether A ≤ B in the Bruhat order.
    Bruhat { a: String, b: String },
    /// Product of elements given as words.
    Mul {
        #[arg(required = true)]
        words: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum HeckeCmd {
    /// Product of Hecke elements (write a leading minus as `(-1)H…`, or pass elements after `--`).
    Mul {
        #[arg(required = true)]
        elts: Vec<String>,
    },
    /// Bar involution.
    Bar {
        #[arg(allow_hyphen_values = true)]
        elt: String,
    },
    /// The anti-involution ω.
    Omega {
        #[arg(allow_hyphen_values = true)]
        elt: String,
    },
    /// Coordinates in the singular basis for (S₁,S₂).
    ToSingular {
        #[arg(allow_hyphen_values = true)]
        elt: String,
    },
    /// The product *_{S₂} of elements of (S₁,S₂) and (S₂,S₃) modules.
    Star {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Kazhdan–Lusztig element of W, or the bar-invariant basis for (S₁,S₂) without W.
    Klbasis { w: Option<String> },
    /// Predicted character of the push-forward to (S₁,S₂).
    PushChar {
        #[arg(allow_hyphen_values = true)]
        elt: String,
    },
    /// Predicted graded rank of the morphism space between objects with these characters.
    HomGrk {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum SchubertCmd {
    /// Apply the Demazure operators of a word (rightmost first) to a polynomial.
    Demazure {
        word: String,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// A polynomial p with ∂_{w_{S₁}}(p) = 1, or Absent.
    FindP,
    /// Demazure basis and dual basis over the invariants of S₁; with POLY, its coordinates.
    Basis {
        #[arg(allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// Frobenius trace ∂_{w_{S₁}} of POLY; without POLY, the trace pairing of the bases.
    Frobenius {
        #[arg(allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// φ-coordinates of the F-elements of S₁.
    FElements,
}

/// Objects are written `WORD` (Bott–Samelson; `1` for the unit) or `F{SUBSET}` (the
/// Frobenius object), optionally followed by a shift `(n)`.
#[derive(Debug, Subcommand)]
pub enum BimodCmd {
    /// Bott–Samelson object of a word.
    Bs { word: String },
    /// The Frobenius object of S₁.
    Frobenius,
    /// Tensor product of two regular objects.
    Tensor { a: String, b: String },
    /// Push-forward of an object to (S₁,S₂).
    Push { obj: String },
    /// Pull-back to (∅,∅) of the push-forward of an object to (S₁,S₂).
    Pull { obj: String },
    /// Convolution of the push-forwards of A to (S₁,S₂) and of B to (S₂,S₃).
    Convolve { a: String, b: String },
    /// Character of the push-forward of an object to (S₁,S₂).
    Ch { obj: String },
    /// Dual of the push-forward of an object to (S₁,S₂).
    Dual { obj: String },
    /// Graded rank of the morphism space between push-forwards to (S₁,S₂).
    Hom { a: String, b: String },
    /// Indecomposable summands of the push-forward of an object to (S₁,S₂).
    Decompose { obj: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Realization,
    Coxeter,
    Hecke,
    Schubert,
    Bimod,
    /// The acceptance criteria (fixed presets).
    Acceptance,
    /// Every module suite for the chosen realization.
    All,
}
