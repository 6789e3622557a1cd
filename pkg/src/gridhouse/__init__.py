"""Grid-world household agent: explore, segment, navigate, execute commands."""

from .world import (
    GridMap,
    KnowledgeBase,
    Position,
    SectionLabel,
    WorldObject,
    line_blocked,
    parse_knowledge,
    parse_plan,
    perceive,
    sample_objects,
    serialize_knowledge,
    serialize_plan,
)
from .explore import ExplorationResult, ObjectMemory, coverage, explore, legal_moves
from .segment import (
    BoundaryPoint,
    SectionGraph,
    SegmentConfig,
    Segmentation,
    bin_contribution,
    boundary_points,
    build_section_graph,
    classify_cell,
    segment,
)
from .navigate import Trajectory, local_path, plan_trajectory, section_path, select_boundary
from .tasking import AgentSession, compile_query, execute, parse_command, run_command
from .harness import SweepConfig, SweepRecord, run_sweep

__version__ = "0.1.0"
