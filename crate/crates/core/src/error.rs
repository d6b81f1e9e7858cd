use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field of size {0} exceeds the supported limit of 256")]
    FieldTooLarge(u64),
    #[error("incompatible shapes {0}x{1} and {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("element has a constant term")]
    ConstantTerm,
    #[error("scalar {0} out of range for a field of size {1}")]
    ScalarRange(u32, u32),
    #[error("enumeration bound of {0} elements exceeded")]
    OrderBound(usize),
    #[error("unknown preset label `{0}`")]
    UnknownPreset(String),
    #[error("preset `{0}` is not defined for p={1}, d={2}")]
    PresetUnavailable(String, u32, u32),
    #[error("subgroup classes must be listed with non-decreasing order")]
    UnorderedClasses,
    #[error("group of order {0} is not a {1}-group")]
    NotPGroup(usize, u32),
    #[error("element of order {0} is not {1}-regular")]
    NotPRegular(usize, u32),
    #[error("generators closed to a group of order {1}, expected {0}")]
    WrongGroupOrder(usize, usize),
    #[error("matrices do not define a module for the group: {0}")]
    NotAModule(String),
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
