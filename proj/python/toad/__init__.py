"""Streaming and offline time-series anomaly detection."""

from ._core import (
    AnomalyReport,
    BandSet,
    BandStats,
    Bucket,
    BucketPlan,
    ConfusionCounts,
    DetectorConfig,
    StreamAction,
    StreamDecision,
    StreamDetector,
    __version__,
    confusion,
    detect_offline,
    detect_periodicity,
    f1,
    gen_breakout,
    gen_hetero_sine,
    replay,
)

__all__ = [
    "AnomalyReport",
    "BandSet",
    "BandStats",
    "Bucket",
    "BucketPlan",
    "ConfusionCounts",
    "DetectorConfig",
    "StreamAction",
    "StreamDecision",
    "StreamDetector",
    "__version__",
    "confusion",
    "detect_offline",
    "detect_periodicity",
    "f1",
    "gen_breakout",
    "gen_hetero_sine",
    "replay",
]
