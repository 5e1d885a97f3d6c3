"""Model tests package."""
