"""refspect: a bibliometric analysis workbench.

Parses bibliographic export files, evaluates boolean topic queries with
saved-set algebra, clusters and merges cited-reference variants, computes
reference-publication-year spectrograms with five-year-median deviations,
builds keyword/country co-occurrence networks, and reports publication
trends. Ships as a library, a CLI (``refspect``), and a local HTTP service
for the interactive explorer frontend.
"""

from .corpus import Corpus, RecordSet, tokenize
from .records import CitedRefFields, CitingRecord, IngestWarning
from .refparse import parse_cited_ref

__version__ = "0.1.0"

__all__ = [
    "CitedRefFields",
    "CitingRecord",
    "Corpus",
    "IngestWarning",
    "RecordSet",
    "__version__",
    "parse_cited_ref",
    "tokenize",
]
