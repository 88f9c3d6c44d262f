"""Rank mixture utilities."""
from app.utils.messages import MSG

__all__ = ["MSG"]
