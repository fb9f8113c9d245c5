"""Constants for the chainrank library."""

from __future__ import annotations

DEFAULT_GROUP_LIMIT = 5040
DEFAULT_SUBGROUP_LIMIT = 96
DEFAULT_ORACLE_LIMIT = 512
DEFAULT_NODE_BUDGET = 1_000_000
EXPLICIT_NODE_BUDGET = 200_000

CACHE_DIR_ENV = "CHAINRANK_CACHE_DIR"
CACHE_FORMAT_VERSION = "1"

CMD_RANK = "rank"
CMD_VERIFY = "verify"
CMD_TREE = "tree"
CMD_ORACLE = "oracle"
CMD_CATALOG = "catalog"

FORMAT_JSON = "json"
FORMAT_TABLE = "table"
FORMAT_DOT = "dot"
FORMAT_GRAPHML = "graphml"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_RESOURCE_LIMIT = 3

DEFAULT_VERIFY_MAX_ORDER = 64
MARKING_SEEDS_PER_GROUP = 20
LEMMA_SUBGROUP_MAX_ORDER = 48
LEMMA_PRODUCT_MAX_ORDER = 12
LEMMA_WREATH_MAX_ORDER = 256
LEMMA_MAXN_PRODUCT_MAX_ORDER = 256
LEMMA_SUBTREE_STATE_LIMIT = 64
EXPLICIT_CHECK_MAX_ORDER = 24

REPORT_INVARIANT_KEYS = {
    "cent": "centralizer_rank",
    "max": "subgroup_rank",
    "maxn": "maxn_length",
    "xi": "xi",
    "deg": "deg",
}

GRAPHML_NAMESPACE = "http://graphml.graphdrawing.org/xmlns"
