"""rangecoo: windowed consecutive-occurrence pattern index.

Builds a suffix-tree based index over a byte text that answers, for a
pattern P and text window [a, b]:

* the k closest consecutive occurrences of P, sorted by distance, and
* all consecutive occurrences whose distance lies in a gap range [g1, g2],

and enumerates the implicit representation of all closed substrings.
"""

from rangecoo.coo_index import GapQuery, RangeCooIndex, TopKQuery, build_index
from rangecoo.segments import ConsOcc, HSegment
from rangecoo.text_index import SuffixTree, build_suffix_tree

__version__ = "0.1.0"

__all__ = [
    "ConsOcc",
    "GapQuery",
    "HSegment",
    "RangeCooIndex",
    "SuffixTree",
    "TopKQuery",
    "build_index",
    "build_suffix_tree",
    "__version__",
]
