use thiserror::Error;

#[derive(Debug, Error)]
pub enum ArrowError {
    #[error("nonpositive temperature at {location}: {value} K")]
    NonpositiveTemperature { location: String, value: f64 },
    #[error("temperature ordering violated: t_hot = {t_hot} K < t_cold = {t_cold} K")]
    TemperatureOrdering { t_hot: f64, t_cold: f64 },
    #[error("negative heat transfer: q = {q} J")]
    NegativeHeat { q: f64 },
    #[error("negative power: w = {w} W")]
    NegativePower { w: f64 },
    #[error("count out of range: j = {j} with n = {n}")]
    CountRange { n: u64, j: u64 },
    #[error("bad geometry: {0}")]
    BadGeometry(String),
    #[error("{particles} particles exceed left-chamber capacity {capacity}")]
    OverCapacity { particles: usize, capacity: usize },
    #[error("wall cell ({x}, {y}) is occupied")]
    WallOccupied { x: usize, y: usize },
    #[error("run requires reverse_at to be set")]
    MissingReverseAt,
}

pub type Result<T> = std::result::Result<T, ArrowError>;
