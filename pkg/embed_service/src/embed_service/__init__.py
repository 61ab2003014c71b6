"""Embedding service implementing the posedit HTTP backend protocol."""

__version__ = "0.1.0"
