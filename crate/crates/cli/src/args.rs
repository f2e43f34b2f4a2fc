use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "level-lab", version, about = "Exact computations with level structures on elliptic curves")]
pub struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "subcommand")]
pub enum Command {
    /// Weierstrass invariants, and point count and trace over finite fields.
    Invariants {
        /// Registry name or "a1,a2,a3,a4,a6" / "A,B".
        #[arg(long)]
        curve: String,
        /// "Q", "Fp:p" or "Fq:p^k".
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Traces a_p of a curve over Q at the good primes up to --pmax.
    Ap {
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = 100)]
        pmax: u64,
    },
    /// a_p(E1) ≡ a_p(E2) mod N at every good prime up to --pmax.
    Congruence {
        #[arg(long)]
        e1: String,
        #[arg(long)]
        e2: String,
        #[arg(short = 'N')]
        level: u64,
        #[arg(long, default_value_t = 200)]
        pmax: u64,
    },
    /// Determinant classes of Frobenius-equivariant maps E1[N] → E2[N] at p.
    Detclasses {
        #[arg(long)]
        e1: String,
        #[arg(long)]
        e2: String,
        #[arg(short = 'N')]
        level: u64,
        /// Good prime to work at; defaults to the smallest admissible one.
        #[arg(short = 'p')]
        prime: Option<u64>,
        #[arg(long, default_value_t = 200)]
        search_limit: u64,
    },
    /// Seeded identity suite for degeneracy and Atkin–Lehner operators.
    ModuliProps {
        #[arg(short = 'N')]
        level: u64,
        #[arg(short = 'm')]
        m: u64,
        #[arg(short = 'q')]
        q: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        pool: usize,
    },
    /// Seeded Frobenius-matrix laws over F_p.
    FrobeniusProps {
        #[arg(short = 'N')]
        level: u64,
        #[arg(short = 'p')]
        prime: u64,
        #[arg(long, default_value_t = 20)]
        curves: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Fibres of the determinant over all level structures over F_q.
    Fibres {
        #[arg(short = 'N')]
        level: u64,
        #[arg(short = 'm', default_value_t = 1)]
        m: u64,
        #[arg(short = 'q')]
        q: u64,
        /// Include every enumerated point as moduli-point JSON.
        #[arg(long)]
        points: bool,
    },
    /// Reads a moduli-point JSON file and reports its determinant and Frobenius matrix.
    ModuliPoint {
        #[arg(long)]
        file: PathBuf,
    },
    /// Projective smoothness of a form over Q and modulo primes.
    QuarticCheck {
        /// Registry form name.
        #[arg(long, conflicts_with = "form")]
        name: Option<String>,
        /// Form text over Q in --vars.
        #[arg(long)]
        form: Option<String>,
        #[arg(long, value_delimiter = ',', default_value = "x,y,z")]
        vars: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        /// Primes asserted to give a smooth reduction.
        #[arg(long, value_delimiter = ',')]
        expect_smooth: Vec<u64>,
        /// Primes asserted to give a singular reduction.
        #[arg(long, value_delimiter = ',')]
        expect_singular: Vec<u64>,
    },
    /// Membership of each target in the radical of an ideal.
    RadicalCheck {
        /// JSON file {"vars": [...], "gens": [...]}, optionally with "field".
        #[arg(long, conflicts_with = "gens")]
        ideal: Option<PathBuf>,
        #[arg(long, value_delimiter = ';')]
        gens: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "x,y,z")]
        vars: Vec<String>,
        /// "Q", "Fp:p" or a bare prime.
        #[arg(long, default_value = "Q")]
        field: String,
        /// Defaults to the variables, i.e. the irrelevant ideal.
        #[arg(long, value_delimiter = ';')]
        targets: Vec<String>,
    },
    /// Smoothness census of all ternary forms of a degree over F_p.
    SmoothCensus {
        #[arg(short = 'p')]
        prime: u64,
        #[arg(short = 'd')]
        degree: u32,
        /// Include one entry per orbit.
        #[arg(long)]
        orbits: bool,
    },
    /// Characteristic-p structure.
    #[command(subcommand)]
    Charp(CharpCommand),
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "charp")]
pub enum CharpCommand {
    /// Exhaustive checks on End(μ_N × Z/N) over F_q.
    Endos {
        #[arg(short = 'N')]
        level: u64,
        #[arg(short = 'q')]
        q: u64,
    },
    /// The two pairings μ_N × μ_N^∨ → Z/N agree.
    PairingEq {
        #[arg(short = 'N')]
        level: u64,
        /// Defaults to the smallest prime power ≡ 1 mod N.
        #[arg(short = 'q')]
        q: Option<u64>,
    },
    /// Unit group of the quaternion order mod p^r modulo 1 + p^(r-1)𝔓.
    Quaternion {
        #[arg(short = 'p')]
        prime: u64,
        #[arg(short = 'r', default_value_t = 1)]
        r: u32,
        /// Recompute with the alternative Galois-ring modulus.
        #[arg(long)]
        alternative: bool,
    },
    /// Supersingular j-invariants in characteristic p.
    SsCount {
        #[arg(short = 'p')]
        prime: u64,
    },
    /// Component census of the supersingular fibre.
    Census {
        #[arg(short = 'p')]
        prime: u64,
        #[arg(short = 'r', default_value_t = 1)]
        r: u32,
        #[arg(long)]
        structure_size: u64,
    },
    /// Rank of the automorphism scheme of μ_N × Z/N for N = p^r.
    OrdinaryAut {
        #[arg(short = 'p')]
        prime: u64,
        #[arg(short = 'r', default_value_t = 1)]
        r: u32,
    },
}

impl Command {
    pub fn name(&self) -> String {
        let base = match self {
            Command::Invariants { .. } => "invariants",
            Command::Ap { .. } => "ap",
            Command::Congruence { .. } => "congruence",
            Command::Detclasses { .. } => "detclasses",
            Command::ModuliProps { .. } => "moduli-props",
            Command::FrobeniusProps { .. } => "frobenius-props",
            Command::Fibres { .. } => "fibres",
            Command::ModuliPoint { .. } => "moduli-point",
            Command::QuarticCheck { .. } => "quartic-check",
            Command::RadicalCheck { .. } => "radical-check",
            Command::SmoothCensus { .. } => "smooth-census",
            Command::Charp(c) => {
                return format!(
                    "charp {}",
                    match c {
                        CharpCommand::Endos { .. } => "endos",
                        CharpCommand::PairingEq { .. } => "pairing-eq",
                        CharpCommand::Quaternion { .. } => "quaternion",
                        CharpCommand::SsCount { .. } => "ss-count",
                        CharpCommand::Census { .. } => "census",
                        CharpCommand::OrdinaryAut { .. } => "ordinary-aut",
                    }
                )
            }
        };
        base.to_string()
    }
}
