use crate::model::ChartId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("chart {0} is not part of the instance")]
    UnknownChart(ChartId),
    #[error("chart {0} has no position in the placement")]
    MissingChart(ChartId),
    #[error("cell index must be >= 1 (chart {0})")]
    ZeroCell(ChartId),
    #[error("height {num}/{den} is outside (0, 1]")]
    InvalidHeight { num: u64, den: u64 },
    #[error("instance must contain at least one chart")]
    EmptyInstance,
    #[error("overlap t={t} out of range for charts of width {left} and {right}")]
    OverlapOutOfRange { t: usize, left: usize, right: usize },
    #[error("charts use different denominators ({0} vs {1})")]
    DenominatorMismatch(u64, u64),
    #[error("union infeasible: overlapped cell {cell} would hold {sum}/{den}")]
    InfeasibleUnion { cell: usize, sum: u64, den: u64 },
    #[error("horizon {0} is too small (need at least 2)")]
    Horizon(usize),
    #[error("oracle is limited to n <= {max} charts, got {n}")]
    OracleTooLarge { n: usize, max: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: bin {bin} holds {sum}, capacity is {capacity}")]
    Capacity {
        line: usize,
        bin: usize,
        sum: u64,
        capacity: u64,
    },
    #[error("solution is not a partition of the items: {0}")]
    Partition(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("audit failed for {label}/{algorithm}: {msg}")]
    Audit {
        label: String,
        algorithm: String,
        msg: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
