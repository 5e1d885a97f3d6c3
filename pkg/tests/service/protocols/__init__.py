"""Protocols service tests package."""
