"""Cryptanalysis service tests package."""
