"""Chainrank module."""

from .__main__ import main
from .cache import ResultCache
from .catalog import CATALOG, catalog_entries, lookup
from .chainrank import ChainRank
from .chainrank_verify import ChainRankVerify
from .dsl import GroupExpr, RkBound, evaluate, parse, rk_bound, xi_bound
from .exceptions import (
    ChainRankError,
    DslSyntaxError,
    IllFoundedTree,
    InvalidGeneratorFile,
    InvalidPermutation,
    NotContained,
    NotNormal,
    ParentMismatch,
    ResourceLimit,
    SizeLimitExceeded,
    UnboundParameter,
    UnknownGroup,
    WordResolution,
)
from .groups import FinGroup, QuotientGroup, Subgroup, generate_group
from .invariants import (
    centralizer_rank,
    decomposition_degree,
    decomposition_rank,
    decomposition_tree_rank,
    maxn_length,
    rank_report,
    subgroup_rank,
)
from .marking import MarkedGroup, default_marking, remark
from .models import (
    CatalogEntry,
    ChainResult,
    InvariantId,
    Limits,
    RankReport,
    Suite,
    VerifyOutcome,
)
from .ordinal import OMEGA, Ordinal
from .oracle import (
    longest_centralizer_chain,
    longest_normal_chain,
    longest_subgroup_chain,
)
from .wftree import FiniteTree, TreeSpec, rank_finite_tree, rank_lazy

__all__ = [
    "CATALOG",
    "OMEGA",
    "CatalogEntry",
    "ChainRank",
    "ChainRankError",
    "ChainRankVerify",
    "ChainResult",
    "DslSyntaxError",
    "FinGroup",
    "FiniteTree",
    "GroupExpr",
    "IllFoundedTree",
    "InvalidGeneratorFile",
    "InvalidPermutation",
    "InvariantId",
    "Limits",
    "MarkedGroup",
    "NotContained",
    "NotNormal",
    "Ordinal",
    "ParentMismatch",
    "QuotientGroup",
    "RankReport",
    "ResourceLimit",
    "ResultCache",
    "RkBound",
    "SizeLimitExceeded",
    "Subgroup",
    "Suite",
    "TreeSpec",
    "UnboundParameter",
    "UnknownGroup",
    "VerifyOutcome",
    "WordResolution",
    "catalog_entries",
    "centralizer_rank",
    "decomposition_degree",
    "decomposition_rank",
    "decomposition_tree_rank",
    "default_marking",
    "evaluate",
    "generate_group",
    "longest_centralizer_chain",
    "longest_normal_chain",
    "longest_subgroup_chain",
    "lookup",
    "main",
    "maxn_length",
    "parse",
    "rank_finite_tree",
    "rank_lazy",
    "rank_report",
    "remark",
    "rk_bound",
    "subgroup_rank",
    "xi_bound",
]


def run() -> None:
    """Run the CLI and exit with its status."""
    raise SystemExit(main())
