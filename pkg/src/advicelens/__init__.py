"""Batch corpus analytics for advice-forum post dumps.

Turns a line-delimited JSON export of forum posts into a per-post feature
table (sentiment, length, gendered-word counts, demographic self-disclosures,
embedding-based uniqueness) plus subreddit comparison reports and figures.
"""

__version__ = "0.1.0"
