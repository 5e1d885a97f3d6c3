"""Mappers tests package."""
