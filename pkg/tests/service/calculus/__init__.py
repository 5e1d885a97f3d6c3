"""Calculus service tests package."""
