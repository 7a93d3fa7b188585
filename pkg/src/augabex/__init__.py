"""Toolkit for transforming abstractive gold case summaries into extractive
gold summaries and evaluating the pair along domain, semantic, lexical and
structural dimensions."""

__version__ = "0.1.0"
