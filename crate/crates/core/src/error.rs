use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("words or elements come from different alphabets")]
    AlphabetMismatch,
    #[error("the empty word is not allowed here")]
    EmptyWord,
    #[error("`{0}` is not a Lyndon-Shirshov word")]
    NotLsWord(String),
    #[error("element is not a Lie polynomial: leading word `{0}` is not a Lyndon-Shirshov word")]
    NotLie(String),
    #[error("zero element is not allowed here")]
    ZeroElement,
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degree {requested} exceeds the cap {cap} for {field} arithmetic; use the prime-field mode or raise the cap")]
    DegreeCap {
        requested: usize,
        cap: usize,
        field: &'static str,
    },
    #[error("generator of degree {degree} does not lie in the ambient subalgebra")]
    NotInAmbient { degree: usize },
    #[error("generating set is reducible: element {index} lies in the subalgebra generated by the others")]
    Reducible { index: usize },
    #[error("value {0} cannot be represented in the prime field")]
    NotRepresentable(String),
    #[error("power iteration did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("divergent parameter region: {0}")]
    Divergent(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
