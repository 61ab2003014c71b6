"""POS-targeted contrastive query editing and retrieval impact measurement."""

__version__ = "0.1.0"
