"""Transformer embedding export for corpus texts."""

from .bridge import BridgeConfig, export_embeddings

__all__ = ["BridgeConfig", "export_embeddings"]
__version__ = "0.1.0"
