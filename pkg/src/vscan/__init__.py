"""Static video summarization by dual-feature (color + texture) density clustering."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .clustering import ClusterAssignment, ClusteringParams, Mode, NOISE, cluster, neighborhood
from .color import ColorHistogram, color_histogram, rgb_to_hsv
from .errors import *  # noqa: F401,F403
from .evaluator import EvalReport, batch_evaluate, evaluate, match_summaries
from .features import FeatureDatabase, extract_features
from .ingest import Frame, FrameSequence, decode_video, load_image_directory, presample
from .similarity import SimilarityThresholds, bhattacharyya, composite_score, score_matrix
from .summarizer import Summary, select_keyframes, write_summary
from .texture import TextureVector, haar2d_approx, resize_64, texture_vector
