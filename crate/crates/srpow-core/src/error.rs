use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: u32, n: u32 },
    #[error("empty facet list")]
    EmptyFacetList,
    #[error("vertex {0} is not contained in any facet")]
    UncoveredVertex(u32),
    #[error("face {0} is not a face of the complex")]
    NotAFace(String),
    #[error("complex is not pure")]
    NotPure,
    #[error("complex is not a matroid")]
    NotAMatroid,
    #[error("matroid has loops")]
    HasLoops,
    #[error("matroid has coloops")]
    HasColoops,
    #[error("{0} is not a circuit")]
    NotACircuit(String),
    #[error("complex has no nonfaces, circumference undefined")]
    NoCircuits,
    #[error("generator {0} is not squarefree")]
    NotSquarefree(String),
    #[error("zero ideal has no generator degrees")]
    ZeroIdeal,
    #[error("ideals live over different variable sets ({0} vs {1})")]
    VariableMismatch(u32, u32),
    #[error("exponent assignment missing facet {0}")]
    MissingFacetExponent(usize),
    #[error("linear quotients do not hold: colon of {generator} is not variable-generated")]
    NoLinearQuotients { generator: String },
    #[error("{0}")]
    Precondition(String),
    #[error("resource guard: {0} (re-run with --force to override)")]
    ResourceGuard(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is undetermined by the available certificates")]
    Undetermined(String),
}

pub type Result<T> = std::result::Result<T, Error>;
