"""Enumerate, summarize, query, and curate Rashomon sets of sparse binary decision trees."""

from .colors import ColorMap, assign_colors, hcl_to_rgb, rgb_hex
from .curation import (
    CurationFile,
    CurationRecord,
    CurationStore,
    bookmark,
    export_curation,
    import_curation,
    list_bookmarks,
    load_and_predict,
    unbookmark,
)
from .dataset import (
    Dataset,
    DatasetSummary,
    SplitCondition,
    describe,
    from_arrays,
    load_dataset,
    save_dataset,
)
from .enumeration import (
    EnumerationConfig,
    RashomonSet,
    SetMember,
    enumerate_rashomon,
    exhaustive_oracle,
    load_set,
    optimal_objective,
    save_set,
    set_bytes,
    set_document,
)
from .errors import (
    BudgetExceeded,
    DimensionError,
    EmptySetError,
    EmptyStoreError,
    InvalidDepth,
    OracleScopeError,
    PrefixNotFound,
    RashomonTreesError,
    SchemaError,
    UnknownFeature,
    UnknownTreeId,
    UnsupportedVersion,
    ValidationError,
)
from .query import (
    FeatureConstraint,
    FeatureImportance,
    FilterSpec,
    apply_filter,
    feature_importance,
    filtered_hierarchy,
    spec_from_wire,
    spec_to_wire,
)
from .sunburst import Sector, layout, layout_document
from .trees import (
    Branch,
    DecisionPath,
    DecisionTree,
    Leaf,
    TreeMetrics,
    canonical_serialization,
    evaluate,
    extract_paths,
    predict,
)
from .trie import RuleTrie, TrieNode, build_trie, hierarchy_document, restrict, subtrie

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "Branch",
    "ColorMap",
    "CurationFile",
    "CurationRecord",
    "CurationStore",
    "Dataset",
    "DatasetSummary",
    "DecisionPath",
    "DecisionTree",
    "DimensionError",
    "EmptySetError",
    "EmptyStoreError",
    "EnumerationConfig",
    "FeatureConstraint",
    "FeatureImportance",
    "FilterSpec",
    "InvalidDepth",
    "Leaf",
    "OracleScopeError",
    "PrefixNotFound",
    "RashomonSet",
    "RashomonTreesError",
    "RuleTrie",
    "SchemaError",
    "Sector",
    "SetMember",
    "SplitCondition",
    "TreeMetrics",
    "TrieNode",
    "UnknownFeature",
    "UnknownTreeId",
    "UnsupportedVersion",
    "ValidationError",
    "apply_filter",
    "assign_colors",
    "bookmark",
    "build_trie",
    "canonical_serialization",
    "describe",
    "enumerate_rashomon",
    "evaluate",
    "exhaustive_oracle",
    "export_curation",
    "extract_paths",
    "feature_importance",
    "filtered_hierarchy",
    "from_arrays",
    "hcl_to_rgb",
    "hierarchy_document",
    "import_curation",
    "layout",
    "layout_document",
    "list_bookmarks",
    "load_and_predict",
    "load_dataset",
    "load_set",
    "optimal_objective",
    "predict",
    "restrict",
    "rgb_hex",
    "save_dataset",
    "save_set",
    "set_bytes",
    "set_document",
    "spec_from_wire",
    "spec_to_wire",
    "subtrie",
    "unbookmark",
]
