use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid letter {0:?}: words use the letters 1, 2 and 3")]
    InvalidLetter(char),

    #[error("word longer than {max} letters")]
    WordTooLong { max: usize },

    #[error("f undefined on empty word")]
    EmptyWord,

    #[error("scale too coarse: word of length {len} does not fit at t = {t}")]
    ScaleTooCoarse { len: usize, t: u32 },

    #[error("scale exponent {t} exceeds the exact lattice range (max {max})")]
    ScaleTooFine { t: u32, max: u32 },

    #[error("triangles live at different scales ({0} vs {1})")]
    ScaleMismatch(u32, u32),

    #[error("word {word} is not a vertex of G_{t}")]
    NotInNetwork { word: String, t: u32 },

    #[error("vertex index {index} out of range for t = {t}")]
    IndexOutOfRange { index: u64, t: u32 },

    #[error("t = {t} exceeds the {what} cap of {cap}{hint}")]
    CapExceeded {
        t: u32,
        cap: u32,
        what: &'static str,
        hint: &'static str,
    },

    #[error(
        "unknown export format {0:?} (expected edge-list-tsv, adjacency-jsonl or metadata-json)"
    )]
    UnknownFormat(String),

    #[error("invalid block composition {0:?}: need k_1 >= 1 and k_i >= 2 for i >= 2")]
    InvalidComposition(Vec<usize>),

    #[error("{0}")]
    Degenerate(&'static str),
}
