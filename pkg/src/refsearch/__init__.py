"""RefSearch: a search engine for refactoring cases.

Ingests refactoring-detector exports into a unified document schema,
indexes them, and serves a small boolean query language over CLI and HTTP.
"""

__version__ = "0.1.0"
