use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("SchemaError at {pointer:?}: {message}")]
    Schema { pointer: String, message: String },
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] okounkov_core::error::Error),
    #[error("SvgError: {0}")]
    Svg(#[from] crate::svg::SvgError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
